//! Chain-based minor-embedding and graph-coloring feasibility: screening,
//! chain enumeration, integer models with Feasibility Jump repair, exact
//! oracles, answer verification and dataset generation.

pub mod chains;
pub mod datagen;
pub mod encode;
pub mod exact;
pub mod fjump;
pub mod graph;
pub mod instance;
pub mod milp;
pub mod rng;
pub mod screening;
pub mod solution;
pub mod verify;
