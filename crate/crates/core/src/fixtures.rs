//! Small hand-checkable instances used across tests and docs.

use crate::model::Instance;
use crate::num::{q, Q};

fn build(alpha: &str, budget: &str, turns: &[(&str, &str)]) -> Instance {
    let pairs: Vec<(Q, Q)> = turns.iter().map(|(t, h)| (q(t), q(h))).collect();
    Instance::from_pairs(q(alpha), q(budget), &pairs)
}

/// One peak: `(0,0) (3,3) (6,0)`, budget 1.
pub fn tent() -> Instance {
    build("1", "1", &[("0", "0"), ("3", "3"), ("6", "0")])
}

/// The tent with budget 2: a horizontal line fits.
pub fn flat() -> Instance {
    build("1", "2", &[("0", "0"), ("3", "3"), ("6", "0")])
}

/// Two peaks of different heights.
pub fn w() -> Instance {
    build(
        "1",
        "1",
        &[("0", "0"), ("3", "3"), ("5", "1"), ("8", "4"), ("10", "2")],
    )
}

/// Starts and ends on lower-chain peaks.
pub fn cap() -> Instance {
    build("1", "1", &[("0", "3"), ("3", "0"), ("6", "3")])
}

/// Rising zig-zag, budget 3/2.
pub fn rise() -> Instance {
    build("1", "3/2", &[("0", "0"), ("4", "4"), ("6", "2"), ("9", "5")])
}

/// All named fixtures.
pub fn all() -> Vec<(&'static str, Instance)> {
    vec![
        ("INST-TENT", tent()),
        ("INST-FLAT", flat()),
        ("INST-W", w()),
        ("INST-CAP", cap()),
        ("INST-RISE", rise()),
    ]
}
