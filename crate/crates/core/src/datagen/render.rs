use super::label::Label;
use super::sample::InstanceSpec;
use super::DatagenError;
use crate::graph::{Graph, MAX_VERTICES};
use crate::instance::{Instance, Task};
use crate::verify::render_answer;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

const TOP2_NOTE: &str = "The input also provides, for each node, up to 2 neighbors with highest \
degree in the form Ni:[a,b,#c,#d], where a,b are neighbors and #c,#d are their degrees.";

/// One dataset line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub instruction: String,
    pub input: String,
    pub output: String,
    pub meta: RecordMeta,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecordMeta {
    pub task: Task,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub index: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spec: Option<InstanceSpec>,
    pub label: Label,
}

fn last(n: usize) -> usize {
    n.saturating_sub(1)
}

pub fn instruction(instance: &Instance) -> String {
    match instance {
        Instance::Embedding {
            problem,
            hardware,
            chain_limit,
        } => format!(
            "Given a problem graph P with {n} nodes labeled 0..{last} and a hardware graph G with \
             {m} nodes, both undirected and given by edge lists, determine whether P can be \
             minor-embedded into G. A valid embedding maps each problem node to a connected chain \
             of hardware nodes, chains for different problem nodes are disjoint, and every problem \
             edge (u,v) must be realized by at least one hardware edge between the two \
             corresponding chains. Limit the chain size up to {chain_limit} nodes. Among feasible \
             embeddings, minimize the total number of hardware nodes used. {TOP2_NOTE} Output \
             exactly one of the following formats: yes, embedding: {{problem_node: \
             [hardware_nodes], ...}}, total nodes used: {{n_nodes_used}} or no.",
            n = problem.n(),
            last = last(problem.n()),
            m = hardware.n(),
        ),
        Instance::Kcoloring { graph, k } => {
            let palette: Vec<String> = (0..*k).map(|c| c.to_string()).collect();
            format!(
                "Given an undirected graph with {n} nodes labeled 0..{last} and an edge list, \
                 decide whether the graph is {k}-colorable. A valid {k}-coloring assigns each node \
                 i a color c_i ∈ {{{palette}}} such that for every edge (u,v), c_u ≠ c_v. \
                 {TOP2_NOTE} Output exactly one of: No OR Yes, coloring: [c0,c1,...,c(n-1)].",
                n = graph.n(),
                last = last(graph.n()),
                palette = palette.join(","),
            )
        }
        Instance::Mincoloring { graph } => format!(
            "Given an undirected graph with {n} nodes labeled 0..{last} and an edge list, find a \
             coloring that uses the minimum possible number of colors. A valid coloring assigns \
             each node i a color c_i (a nonnegative integer) such that for every edge (u,v), \
             c_u ≠ c_v. {TOP2_NOTE} Output exactly: min_colors: K, coloring: [c0,c1,...,c(n-1)].",
            n = graph.n(),
            last = last(graph.n()),
        ),
    }
}

fn edge_list(g: &Graph, open: char, close: char) -> String {
    let mut s = String::from("[");
    for (i, (u, v)) in g.edges().iter().enumerate() {
        if i > 0 {
            s.push(',');
        }
        write!(s, "{open}{u},{v}{close}").unwrap();
    }
    s.push(']');
    s
}

/// Edge lists (sorted) with neighbor-degree annotations.
pub fn input_text(instance: &Instance) -> String {
    match instance {
        Instance::Embedding {
            problem, hardware, ..
        } => format!(
            "P edges: {}\nP top2 neighbor-degree info: {}\n\nG edges: {}\nG top2 neighbor-degree info: {}",
            edge_list(problem, '[', ']'),
            problem.top2_info(),
            edge_list(hardware, '[', ']'),
            hardware.top2_info(),
        ),
        Instance::Kcoloring { graph, .. } | Instance::Mincoloring { graph } => {
            format!("Edges: {}\n\n{}", edge_list(graph, '(', ')'), graph.top2_info())
        }
    }
}

/// Renders a labeled instance; `None` for dropped labels.
pub fn render_record(
    instance: &Instance,
    label: &Label,
    spec: Option<&InstanceSpec>,
    index: Option<u64>,
) -> Option<Record> {
    if label.is_dropped() {
        return None;
    }
    Some(Record {
        instruction: instruction(instance),
        input: input_text(instance),
        output: render_answer(instance.task(), label.solution()),
        meta: RecordMeta {
            task: instance.task(),
            index,
            spec: spec.cloned(),
            label: label.clone(),
        },
    })
}

fn number_after(text: &str, marker: &str) -> Result<usize, DatagenError> {
    let at = text
        .find(marker)
        .ok_or_else(|| DatagenError::Record(format!("missing {marker:?}")))?;
    let rest = &text[at + marker.len()..];
    let digits: String = rest.chars().take_while(char::is_ascii_digit).collect();
    digits
        .parse()
        .map_err(|_| DatagenError::Record(format!("no number after {marker:?}")))
}

/// Parses the edge list that starts right after `marker`: a bracketed
/// sequence of `[u,v]` or `(u,v)` pairs.
fn edges_after(text: &str, marker: &str) -> Result<Vec<(usize, usize)>, DatagenError> {
    let err = |m: &str| DatagenError::Record(format!("{marker:?}: {m}"));
    let at = text.find(marker).ok_or_else(|| err("missing"))?;
    let body = text[at + marker.len()..].trim_start();
    let body = body.strip_prefix('[').ok_or_else(|| err("expected '['"))?;
    let mut depth = 1;
    let mut end = None;
    for (i, ch) in body.char_indices() {
        match ch {
            '[' | '(' => depth += 1,
            ']' | ')' => {
                depth -= 1;
                if depth == 0 {
                    end = Some(i);
                    break;
                }
            }
            _ => {}
        }
    }
    let body = &body[..end.ok_or_else(|| err("unterminated list"))?];
    let mut nums = Vec::new();
    for tok in body.split(|c: char| !c.is_ascii_digit()).filter(|t| !t.is_empty()) {
        nums.push(tok.parse::<usize>().map_err(|_| err("number out of range"))?);
    }
    if nums.len() % 2 != 0 {
        return Err(err("odd number of endpoints"));
    }
    Ok(nums.chunks(2).map(|p| (p[0], p[1])).collect())
}

/// Rebuilds the instance from a record's instruction and input text.
pub fn parse_record_instance(task: Task, instruction: &str, input: &str) -> Result<Instance, DatagenError> {
    Ok(match task {
        Task::Embedding => {
            let n = number_after(instruction, "problem graph P with ")?;
            let m = number_after(instruction, "hardware graph G with ")?;
            let chain_limit = number_after(instruction, "Limit the chain size up to ")?;
            Instance::Embedding {
                problem: Graph::from_edges(n, edges_after(input, "P edges:")?)?,
                hardware: Graph::from_edges(m, edges_after(input, "G edges:")?)?,
                chain_limit,
            }
        }
        Task::Kcoloring => {
            let n = number_after(instruction, "undirected graph with ")?;
            let k = number_after(instruction, "decide whether the graph is ")?;
            if k > MAX_VERTICES {
                return Err(DatagenError::Record(format!("{k} colors exceeds the limit of {MAX_VERTICES}")));
            }
            Instance::Kcoloring {
                graph: Graph::from_edges(n, edges_after(input, "Edges:")?)?,
                k,
            }
        }
        Task::Mincoloring => {
            let n = number_after(instruction, "undirected graph with ")?;
            Instance::Mincoloring {
                graph: Graph::from_edges(n, edges_after(input, "Edges:")?)?,
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datagen::label::Provenance;
    use crate::solution::Solution;

    fn coloring_sample() -> Instance {
        let edges = [
            (0, 9), (0, 10), (0, 11), (0, 4), (1, 11), (1, 4), (1, 7), (2, 6), (2, 5), (3, 8),
            (3, 9), (4, 7), (4, 5), (4, 10), (5, 9), (5, 11), (7, 10), (8, 9), (9, 11),
        ];
        Instance::Kcoloring {
            graph: Graph::from_edges(12, edges).unwrap(),
            k: 3,
        }
    }

    #[test]
    fn coloring_sample_record() {
        let inst = coloring_sample();
        let label = Label::Sat {
            solution: Solution::Coloring(vec![0, 1, 1, 2, 2, 0, 0, 0, 0, 1, 1, 2]),
            objective: 3,
            optimal: false,
            provenance: Provenance::Exact,
        };
        let rec = render_record(&inst, &label, None, None).unwrap();
        assert_eq!(rec.output, "Yes, coloring: [0, 1, 1, 2, 2, 0, 0, 0, 0, 1, 1, 2]");
        assert!(rec.instruction.starts_with(
            "Given an undirected graph with 12 nodes labeled 0..11 and an edge list, decide \
             whether the graph is 3-colorable. A valid 3-coloring assigns each node i a color \
             c_i ∈ {0,1,2} such that"
        ));
        assert!(rec.input.starts_with("Edges: [(0,4),(0,9),(0,10),(0,11),(1,4),"));
        assert!(rec
            .input
            .ends_with("\n\nN0:[4,9,#5,#5]; N1:[4,11,#5,#4]; N2:[5,6,#4,#1]; N3:[9,8,#5,#2]; N4:[0,5,#4,#4]; N5:[4,9,#5,#5]; N6:[2,#2]; N7:[4,1,#5,#3]; N8:[9,3,#5,#2]; N9:[0,5,#4,#4]; N10:[4,0,#5,#4]; N11:[9,0,#5,#4]"));
        let back = parse_record_instance(Task::Kcoloring, &rec.instruction, &rec.input).unwrap();
        assert_eq!(back, inst);
    }

    #[test]
    fn unsat_embedding_is_no() {
        let inst = Instance::Embedding {
            problem: Graph::complete(4),
            hardware: Graph::star(4),
            chain_limit: 3,
        };
        let label = Label::Unsat {
            provenance: Provenance::ZeroPhase,
            violation: None,
        };
        let rec = render_record(&inst, &label, None, None).unwrap();
        assert_eq!(rec.output, "no");
        assert!(rec.input.starts_with("P edges: [[0,1],[0,2],[0,3],[1,2],[1,3],[2,3]]\nP top2"));
        assert!(rec.instruction.contains("P with 4 nodes labeled 0..3 and a hardware graph G with 5 nodes"));
        assert!(rec.instruction.contains("Limit the chain size up to 3 nodes."));
        assert_eq!(
            parse_record_instance(Task::Embedding, &rec.instruction, &rec.input).unwrap(),
            inst
        );
    }

    #[test]
    fn dropped_not_rendered() {
        let label = Label::Dropped { reason: "x".into() };
        assert!(render_record(&coloring_sample(), &label, None, None).is_none());
    }

    #[test]
    fn malformed_inputs_rejected() {
        assert!(parse_record_instance(Task::Kcoloring, "graph with 3 nodes", "Edges: [(0,1)]").is_err());
        let ins = "undirected graph with 3 nodes, decide whether the graph is 3-colorable";
        assert!(parse_record_instance(Task::Kcoloring, ins, "Edges: [(0,1),(1]").is_err());
        assert!(parse_record_instance(Task::Kcoloring, ins, "Edges: [(0,5)]").is_err());
        assert!(parse_record_instance(Task::Kcoloring, ins, "Edges: [(0,1)]").is_ok());
    }
}
