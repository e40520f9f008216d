//! Text answers in the dataset output grammar.
//!
//! ```text
//! embedding:   yes, embedding: {"0": [6,14], "1": [4]}, total nodes used: 3
//!              no
//! kcoloring:   Yes, coloring: [0, 1, 1, 2]
//!              No
//! mincoloring: min_colors: 3, coloring: [0, 1, 2]
//! ```
//!
//! Keywords are case-insensitive. For embeddings the closing brace may also
//! come after the node count (`{..., "8": [0], total nodes used: 19}`).

use crate::instance::Task;
use crate::solution::{colors_used, Coloring, Embedding, Solution};
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "claim", content = "error", rename_all = "snake_case")]
pub enum Claim {
    Yes,
    No,
    Malformed(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Candidate {
    pub claim: Claim,
    pub solution: Option<Solution>,
    /// Stated `total nodes used` or `min_colors`.
    pub objective_claim: Option<u64>,
}

impl Candidate {
    pub fn no() -> Self {
        Candidate {
            claim: Claim::No,
            solution: None,
            objective_claim: None,
        }
    }

    pub fn yes(solution: Solution, objective_claim: Option<u64>) -> Self {
        Candidate {
            claim: Claim::Yes,
            solution: Some(solution),
            objective_claim,
        }
    }

    pub fn malformed(error: impl Into<String>) -> Self {
        Candidate {
            claim: Claim::Malformed(error.into()),
            solution: None,
            objective_claim: None,
        }
    }
}

struct Cursor<'a> {
    s: &'a str,
    pos: usize,
}

type PResult<T> = Result<T, String>;

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Self {
        Cursor { s, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.s[self.pos..]
    }

    fn ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.s.len() - trimmed.len();
    }

    /// Case-insensitive keyword match, skipping leading whitespace.
    fn eat_kw(&mut self, kw: &str) -> bool {
        self.ws();
        let rest = self.rest();
        match rest.get(..kw.len()) {
            Some(head) if head.eq_ignore_ascii_case(kw) => {
                self.pos += kw.len();
                true
            }
            _ => false,
        }
    }

    fn expect(&mut self, kw: &str) -> PResult<()> {
        if self.eat_kw(kw) {
            Ok(())
        } else {
            Err(format!("expected {kw:?} at byte {}", self.pos))
        }
    }

    fn number(&mut self) -> PResult<u64> {
        self.ws();
        let digits = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return Err(format!("expected a number at byte {}", self.pos));
        }
        let text = &self.rest()[..digits];
        self.pos += digits;
        text.parse()
            .map_err(|_| format!("number {text:?} out of range"))
    }

    fn index(&mut self) -> PResult<usize> {
        let n = self.number()?;
        usize::try_from(n).map_err(|_| format!("number {n} out of range"))
    }

    /// `[a, b, ...]`, possibly empty.
    fn list(&mut self) -> PResult<Vec<usize>> {
        self.expect("[")?;
        let mut out = Vec::new();
        if self.eat_kw("]") {
            return Ok(out);
        }
        loop {
            out.push(self.index()?);
            if self.eat_kw("]") {
                return Ok(out);
            }
            self.expect(",")?;
        }
    }

    fn finish(&mut self) -> PResult<()> {
        self.ws();
        let rest = self.rest().trim_end_matches(|c: char| c == '.' || c.is_whitespace());
        if rest.is_empty() {
            Ok(())
        } else {
            Err(format!("unexpected trailing text at byte {}", self.pos))
        }
    }
}

fn is_bare_no(text: &str) -> bool {
    let t = text.trim().trim_end_matches('.').trim_end();
    t.eq_ignore_ascii_case("no")
}

/// Parses a model answer. Never fails: unparseable text becomes
/// [`Claim::Malformed`] carrying the reason.
pub fn parse_candidate(text: &str, task: Task) -> Candidate {
    if is_bare_no(text) && task != Task::Mincoloring {
        return Candidate::no();
    }
    let parsed = match task {
        Task::Embedding => parse_embedding(text),
        Task::Kcoloring => parse_kcoloring(text),
        Task::Mincoloring => parse_mincoloring(text),
    };
    parsed.unwrap_or_else(Candidate::malformed)
}

fn parse_embedding(text: &str) -> PResult<Candidate> {
    let mut c = Cursor::new(text);
    c.expect("yes")?;
    c.eat_kw(",");
    c.expect("embedding")?;
    c.expect(":")?;
    c.expect("{")?;
    let mut emb = Embedding::new();
    let mut total = None;
    let mut closed = false;
    c.ws();
    if c.eat_kw("}") {
        closed = true;
    } else {
        loop {
            if c.eat_kw("total nodes used") {
                // unbalanced form: the node count sits inside the braces
                c.expect(":")?;
                total = Some(c.number()?);
                c.expect("}")?;
                break;
            }
            let quoted = c.eat_kw("\"");
            let key = c.index()?;
            if quoted {
                c.expect("\"")?;
            }
            c.expect(":")?;
            let chain = c.list()?;
            if emb.chain(key).is_some() {
                return Err(format!("duplicate problem vertex {key}"));
            }
            emb.insert(key, chain);
            if c.eat_kw("}") {
                closed = true;
                break;
            }
            c.expect(",")?;
        }
    }
    if closed
        && c.eat_kw(",") {
            c.expect("total nodes used")?;
            c.expect(":")?;
            total = Some(c.number()?);
        }
    c.finish()?;
    Ok(Candidate::yes(Solution::Embedding(emb), total))
}

fn parse_coloring_list(c: &mut Cursor) -> PResult<Coloring> {
    c.expect("coloring")?;
    c.expect(":")?;
    let colors = c.list()?;
    c.finish()?;
    Ok(colors)
}

fn parse_kcoloring(text: &str) -> PResult<Candidate> {
    let mut c = Cursor::new(text);
    c.expect("yes")?;
    c.eat_kw(",");
    let colors = parse_coloring_list(&mut c)?;
    Ok(Candidate::yes(Solution::Coloring(colors), None))
}

fn parse_mincoloring(text: &str) -> PResult<Candidate> {
    let mut c = Cursor::new(text);
    c.expect("min_colors")?;
    c.expect(":")?;
    let k = c.number()?;
    c.expect(",")?;
    let colors = parse_coloring_list(&mut c)?;
    Ok(Candidate::yes(Solution::Coloring(colors), Some(k)))
}

fn join(values: &[usize], sep: &str) -> String {
    let mut s = String::new();
    for (i, v) in values.iter().enumerate() {
        if i > 0 {
            s.push_str(sep);
        }
        write!(s, "{v}").unwrap();
    }
    s
}

/// Renders the canonical answer text: `None` is the negative answer.
///
/// Embeddings use lowercase keywords and balanced braces; k-coloring uses
/// capitalized `Yes`/`No`.
pub fn render_answer(task: Task, solution: Option<&Solution>) -> String {
    match (task, solution) {
        (Task::Embedding, None) => "no".to_string(),
        (Task::Kcoloring, None) => "No".to_string(),
        (Task::Embedding, Some(Solution::Embedding(e))) => {
            let entries: Vec<String> = e
                .iter()
                .map(|(k, chain)| format!("\"{k}\": [{}]", join(chain, ",")))
                .collect();
            format!(
                "yes, embedding: {{{}}}, total nodes used: {}",
                entries.join(", "),
                e.total_vertices()
            )
        }
        (Task::Kcoloring, Some(Solution::Coloring(c))) => {
            format!("Yes, coloring: [{}]", join(c, ", "))
        }
        (Task::Mincoloring, Some(Solution::Coloring(c))) => {
            format!("min_colors: {}, coloring: [{}]", colors_used(c), join(c, ", "))
        }
        (task, other) => panic!("no answer format for {task:?} with {other:?}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE_EMBEDDING: &str = r#"yes, embedding: {"0": [6,14], "1": [1,7,15], "2": [4], "3": [16,23], "4": [3,5], "5": [18,22], "6": [8,13,21], "7": [10,12,20], "8": [0], total nodes used: 19}"#;

    #[test]
    fn bare_no() {
        assert_eq!(parse_candidate("no", Task::Embedding), Candidate::no());
        assert_eq!(parse_candidate(" No.\n", Task::Kcoloring), Candidate::no());
    }

    #[test]
    fn training_sample_embedding() {
        let c = parse_candidate(SAMPLE_EMBEDDING, Task::Embedding);
        assert_eq!(c.claim, Claim::Yes);
        assert_eq!(c.objective_claim, Some(19));
        match c.solution {
            Some(Solution::Embedding(e)) => {
                assert_eq!(e.len(), 9);
                assert_eq!(e.total_vertices(), 19);
                assert_eq!(e.chain(6), Some(&[8, 13, 21][..]));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn balanced_embedding_round_trip() {
        let c = parse_candidate(SAMPLE_EMBEDDING, Task::Embedding);
        let text = render_answer(Task::Embedding, c.solution.as_ref());
        assert!(text.starts_with(r#"yes, embedding: {"0": [6,14], "1": [1,7,15]"#));
        assert!(text.ends_with(r#""8": [0]}, total nodes used: 19"#));
        assert_eq!(parse_candidate(&text, Task::Embedding), c);
    }

    #[test]
    fn training_sample_coloring() {
        let c = parse_candidate("Yes, coloring: [0, 1, 1, 2, 2, 0, 0, 0, 0, 1, 1, 2]", Task::Kcoloring);
        assert_eq!(
            c,
            Candidate::yes(
                Solution::Coloring(vec![0, 1, 1, 2, 2, 0, 0, 0, 0, 1, 1, 2]),
                None
            )
        );
        assert_eq!(
            render_answer(Task::Kcoloring, c.solution.as_ref()),
            "Yes, coloring: [0, 1, 1, 2, 2, 0, 0, 0, 0, 1, 1, 2]"
        );
    }

    #[test]
    fn mincoloring_answer() {
        let c = parse_candidate("min_colors: 3, coloring: [0, 2, 1]", Task::Mincoloring);
        assert_eq!(c.objective_claim, Some(3));
        assert_eq!(c.claim, Claim::Yes);
        assert!(matches!(
            parse_candidate("no", Task::Mincoloring).claim,
            Claim::Malformed(_)
        ));
    }

    #[test]
    fn malformed_inputs() {
        for (text, task) in [
            ("maybe", Task::Embedding),
            ("yes", Task::Embedding),
            ("yes, embedding: {\"0\": [1,}", Task::Embedding),
            ("yes, embedding: {\"0\": [1], \"0\": [2]}", Task::Embedding),
            ("Yes, coloring: [0, 1", Task::Kcoloring),
            ("Yes, coloring: [0, 1] and more", Task::Kcoloring),
            ("Yes, coloring: [99999999999999999999999]", Task::Kcoloring),
            ("", Task::Kcoloring),
        ] {
            assert!(
                matches!(parse_candidate(text, task).claim, Claim::Malformed(_)),
                "{text:?}"
            );
        }
    }

    #[test]
    fn empty_embedding_and_case() {
        let c = parse_candidate("YES, Embedding: {}, Total Nodes Used: 0", Task::Embedding);
        assert_eq!(c.claim, Claim::Yes);
        assert_eq!(c.objective_claim, Some(0));
    }
}
