//! Runs every acceptance criterion and prints one line per criterion.
//! `cargo test -p coxalt-core --test acceptance -- --nocapture` shows the lines.

use coxalt_core::suite::{run_all, CRITERIA};

#[test]
fn acceptance_suite() {
    let outcomes = run_all();
    assert_eq!(outcomes.len(), CRITERIA.len());
    for o in &outcomes {
        println!("{o}");
    }
    let failed: Vec<usize> = outcomes.iter().filter(|o| !o.passed).map(|o| o.id).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
