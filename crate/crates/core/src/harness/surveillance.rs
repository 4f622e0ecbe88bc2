//! The bundled surveillance example: a robot moving along a corridor of six
//! rooms composed with a task process that starts, completes and idles.
//!
//! Atoms `p0`..`p5` hold in the matching room and `qs` holds while a
//! completed task is pending. The specification asks the robot to complete
//! tasks in room 3 and room 4, not to return to room 0 before either, to
//! complete the room 4 task before any task completion in room 3, and to
//! finally come back to room 0 with no task pending.

use std::fs;
use std::path::{Path, PathBuf};

use crate::des::{load_des_str, save_des_string, synchronous_product, Des};
use crate::dfa::{import_dfa_str, Dfa, ImportMode};
use crate::error::Result;
use crate::formula::{parse_formula, Formula};

pub const G_POS_JSON: &str = include_str!("../../fixtures/g_pos.json");
pub const G_TASK_JSON: &str = include_str!("../../fixtures/g_task.json");
pub const SPEC_TEXT: &str = include_str!("../../fixtures/spec.ltl");
pub const REFERENCE_DFA_JSON: &str = include_str!("../../fixtures/surveillance_dfa.json");

pub struct SurveillanceExample {
    pub g_pos: Des,
    pub g_task: Des,
    pub plant: Des,
    pub formula: Formula,
}

pub fn build_surveillance_example() -> SurveillanceExample {
    let g_pos = load_des_str(G_POS_JSON).expect("bundled G_pos fixture is valid");
    let g_task = load_des_str(G_TASK_JSON).expect("bundled G_task fixture is valid");
    let plant = synchronous_product(&g_pos, &g_task).expect("bundled fixtures compose");
    let formula = parse_formula(SPEC_TEXT.trim(), plant.ap()).expect("bundled specification parses");
    SurveillanceExample {
        g_pos,
        g_task,
        plant,
        formula,
    }
}

/// The hand-built minimal DFA of the specification, over the plant
/// vocabulary.
pub fn reference_dfa() -> Dfa {
    import_dfa_str(REFERENCE_DFA_JSON, ImportMode::Strict).expect("bundled reference DFA is valid")
}

/// Write `g_pos.json`, `g_task.json`, `plant.json`, `spec.ltl` and
/// `reference_dfa.json` into `dir`, creating it if needed.
pub fn write_fixtures(dir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let ex = build_surveillance_example();
    let files = [
        ("g_pos.json", G_POS_JSON.to_string()),
        ("g_task.json", G_TASK_JSON.to_string()),
        ("plant.json", save_des_string(&ex.plant) + "\n"),
        ("spec.ltl", SPEC_TEXT.to_string()),
        ("reference_dfa.json", REFERENCE_DFA_JSON.to_string()),
    ];
    let mut written = Vec::new();
    for (name, text) in files {
        let path = dir.join(name);
        fs::write(&path, text)?;
        written.push(path);
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn components_have_expected_shape() {
        let ex = build_surveillance_example();
        assert_eq!(ex.g_pos.num_states(), 6);
        assert_eq!(ex.g_task.num_states(), 3);
        assert!(ex.g_pos.events().iter().all(|e| e.controllable));
        let unc: Vec<&str> = ex
            .g_task
            .events()
            .iter()
            .filter(|e| !e.controllable)
            .map(|e| e.name.as_str())
            .collect();
        assert_eq!(unc, ["comp", "idle"]);
        assert_eq!(ex.plant.num_states(), 18);
        assert_eq!(ex.plant.num_transitions(), 40);
    }

    #[test]
    fn reference_dfa_is_minimal_with_one_accepting_state() {
        let d = reference_dfa();
        assert_eq!(d.num_states(), 6);
        assert_eq!(d.accepting_count(), 1);
        assert_eq!(d.minimize().num_states(), 6);
    }
}
