//! Checks shared by the fuzz targets and the corpus replay test.
//!
//! Each check takes raw bytes, feeds them to one parser and asserts that
//! whatever parses also survives a render/parse round trip.

use chainfeas::datagen::{input_text, instruction, parse_record_instance, Record};
use chainfeas::graph::Graph;
use chainfeas::instance::{Instance, Task};
use chainfeas::verify::{parse_candidate, render_answer, Claim};
use chainfeas_cli::warm::parse_warm_start;

pub const TASKS: [Task; 3] = [Task::Embedding, Task::Kcoloring, Task::Mincoloring];

fn text(data: &[u8]) -> Option<&str> {
    std::str::from_utf8(data).ok()
}

pub fn edge_list(data: &[u8]) {
    let Some(s) = text(data) else { return };
    if let Ok(g) = Graph::load_edge_list(s) {
        let back = Graph::load_edge_list(&g.dump_edge_list()).expect("dumped edge list reloads");
        assert_eq!(back, g);
    }
}

pub fn instance_file(data: &[u8]) {
    let Some(s) = text(data) else { return };
    if let Ok(inst) = Instance::from_json(s) {
        let back = Instance::from_json(&inst.to_json()).expect("dumped instance reloads");
        assert_eq!(back, inst);
    }
}

pub fn candidate(data: &[u8]) {
    let Some(s) = text(data) else { return };
    for task in TASKS {
        let cand = parse_candidate(s, task);
        if let (Claim::Yes, Some(sol)) = (&cand.claim, &cand.solution) {
            let again = parse_candidate(&render_answer(task, Some(sol)), task);
            assert_eq!(again.solution.as_ref(), Some(sol));
        }
    }
}

pub fn warm_start(data: &[u8]) {
    let Some(s) = text(data) else { return };
    for task in TASKS {
        let _ = parse_warm_start(s, task);
    }
}

pub fn record(data: &[u8]) {
    let Some(s) = text(data) else { return };
    let Ok(rec) = serde_json::from_str::<Record>(s) else { return };
    if let Ok(inst) = parse_record_instance(rec.meta.task, &rec.instruction, &rec.input) {
        let back = parse_record_instance(inst.task(), &instruction(&inst), &input_text(&inst))
            .expect("rendered record parses");
        assert_eq!(back, inst);
    }
}
