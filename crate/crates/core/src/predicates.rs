//! Exact predicates on reflex pairs and the slope feasibility funnel.
//!
//! The corridor is treated as a closed region throughout: touching either
//! chain, including at reflex vertices, is allowed.

use thiserror::Error;

use crate::model::{Chain, Corridor, Point, ReflexPoint};
use crate::num::Q;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PredicateError {
    #[error("expected a lower-chain point and an upper-chain point")]
    ChainMismatch,
    #[error("pair is vertical at t = {0}")]
    VerticalPair(Q),
    #[error("slope {beta} outside [0, {alpha}]")]
    SlopeOutOfRange { beta: Q, alpha: Q },
}

/// An overlapping reflex pair and the absolute slope of the segment joining it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairSlope {
    pub lower: ReflexPoint,
    pub upper: ReflexPoint,
    pub slope: Q,
}

impl PairSlope {
    pub fn new(lower: ReflexPoint, upper: ReflexPoint) -> Result<Self, PredicateError> {
        check_chains(&lower, &upper)?;
        let slope = pair_slope(&lower, &upper)?;
        Ok(Self {
            lower,
            upper,
            slope,
        })
    }

    /// The pair's two endpoints ordered by time.
    pub fn ordered(&self) -> (&ReflexPoint, &ReflexPoint) {
        if self.lower.t < self.upper.t {
            (&self.lower, &self.upper)
        } else {
            (&self.upper, &self.lower)
        }
    }
}

fn check_chains(l: &ReflexPoint, u: &ReflexPoint) -> Result<(), PredicateError> {
    if l.chain != Chain::Lower || u.chain != Chain::Upper {
        return Err(PredicateError::ChainMismatch);
    }
    Ok(())
}

/// `u` lies strictly below `l`.
pub fn pair_overlaps(l: &ReflexPoint, u: &ReflexPoint) -> Result<bool, PredicateError> {
    check_chains(l, u)?;
    Ok(u.y < l.y)
}

/// `|dy| / |dt|`, symmetric in its arguments.
pub fn pair_slope(a: &ReflexPoint, b: &ReflexPoint) -> Result<Q, PredicateError> {
    if a.t == b.t {
        return Err(PredicateError::VerticalPair(a.t.clone()));
    }
    Ok((&a.y - &b.y).abs() / (&a.t - &b.t).abs())
}

/// Whether the closed segment `a b` lies in the closed corridor.
pub fn segment_in_corridor(corridor: &Corridor, a: &Point, b: &Point) -> bool {
    let (a, b) = if a.t <= b.t { (a, b) } else { (b, a) };
    if !corridor.contains(a) || !corridor.contains(b) {
        return false;
    }
    if a.t == b.t {
        return true;
    }
    let slope = (&b.y - &a.y) / (&b.t - &a.t);
    // Both the segment and the chains are linear between vertex times.
    let first = corridor.lower.partition_point(|p| p.t <= a.t);
    let last = corridor.lower.partition_point(|p| p.t < b.t);
    (first..last).all(|k| {
        let t = &corridor.lower[k].t;
        let y = &a.y + &slope * (t - &a.t);
        corridor.lower[k].y <= y && y <= corridor.upper[k].y
    })
}

pub fn pair_visible(corridor: &Corridor, l: &ReflexPoint, u: &ReflexPoint) -> bool {
    segment_in_corridor(corridor, &l.point(), &u.point())
}

/// Whether a path with segment slopes `±beta` (any number of turns) can
/// cross the whole corridor.
///
/// Sweeps the reachable height interval left to right: the top grows at
/// rate `beta`, the bottom falls at rate `beta`, and both are clipped to the
/// corridor at every vertex time. Between vertex times everything is linear,
/// so the interval empties somewhere iff it empties at a vertex.
pub fn feasible_slope(corridor: &Corridor, beta: &Q) -> Result<bool, PredicateError> {
    if beta.is_negative() || *beta > corridor.alpha {
        return Err(PredicateError::SlopeOutOfRange {
            beta: beta.clone(),
            alpha: corridor.alpha.clone(),
        });
    }
    let mut lo = corridor.lower[0].y.clone();
    let mut hi = corridor.upper[0].y.clone();
    for k in 1..corridor.vertex_count() {
        let step = beta * (&corridor.lower[k].t - &corridor.lower[k - 1].t);
        hi = (&hi + &step).min(corridor.upper[k].y.clone());
        lo = (&lo - &step).max(corridor.lower[k].y.clone());
        if lo > hi {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::model::build_corridor;
    use crate::num::q;

    fn find<'a>(c: &'a Corridor, chain: Chain, t: &str) -> &'a ReflexPoint {
        let list = match chain {
            Chain::Lower => &c.lower_reflex,
            Chain::Upper => &c.upper_reflex,
        };
        list.iter().find(|r| r.t == q(t)).expect("reflex point")
    }

    #[test]
    fn overlap_examples() {
        let tent = build_corridor(&fixtures::tent()).unwrap();
        let l = find(&tent, Chain::Lower, "3");
        assert!(pair_overlaps(l, find(&tent, Chain::Upper, "0")).unwrap());

        let w = build_corridor(&fixtures::w()).unwrap();
        assert!(!pair_overlaps(find(&w, Chain::Lower, "3"), find(&w, Chain::Upper, "5")).unwrap());

        // (3,4) is a regular upper vertex, not a reflex point; build it by hand.
        let above = ReflexPoint {
            chain: Chain::Upper,
            vertex_index: 1,
            t: q("3"),
            y: q("4"),
        };
        assert!(!pair_overlaps(l, &above).unwrap());
        assert_eq!(pair_overlaps(&above, l), Err(PredicateError::ChainMismatch));
    }

    #[test]
    fn slope_examples() {
        let tent = build_corridor(&fixtures::tent()).unwrap();
        let l = find(&tent, Chain::Lower, "3");
        let u0 = find(&tent, Chain::Upper, "0");
        let u6 = find(&tent, Chain::Upper, "6");
        assert_eq!(pair_slope(l, u0).unwrap(), q("1/3"));
        assert_eq!(pair_slope(l, u6).unwrap(), q("1/3"));
        assert_eq!(pair_slope(u6, l).unwrap(), q("1/3"));

        let w = build_corridor(&fixtures::w()).unwrap();
        assert_eq!(
            pair_slope(find(&w, Chain::Lower, "8"), find(&w, Chain::Upper, "0")).unwrap(),
            q("1/4")
        );

        let same_t = ReflexPoint {
            chain: Chain::Upper,
            vertex_index: 1,
            t: q("3"),
            y: q("4"),
        };
        assert_eq!(pair_slope(l, &same_t), Err(PredicateError::VerticalPair(q("3"))));
    }

    #[test]
    fn visibility_examples() {
        let tent = build_corridor(&fixtures::tent()).unwrap();
        assert!(pair_visible(
            &tent,
            find(&tent, Chain::Lower, "3"),
            find(&tent, Chain::Upper, "0")
        ));
        let w = build_corridor(&fixtures::w()).unwrap();
        // The segment dips below the lower peak (3,2): y(3) = 7/4.
        assert!(!pair_visible(
            &w,
            find(&w, Chain::Lower, "8"),
            find(&w, Chain::Upper, "0")
        ));
        assert!(pair_visible(
            &w,
            find(&w, Chain::Lower, "8"),
            find(&w, Chain::Upper, "5")
        ));
    }

    #[test]
    fn funnel_examples() {
        let tent = build_corridor(&fixtures::tent()).unwrap();
        assert!(feasible_slope(&tent, &q("1/3")).unwrap());
        assert!(!feasible_slope(&tent, &q("1/4")).unwrap());
        let flat = build_corridor(&fixtures::flat()).unwrap();
        assert!(feasible_slope(&flat, &Q::ZERO).unwrap());
        assert!(matches!(
            feasible_slope(&tent, &q("2")),
            Err(PredicateError::SlopeOutOfRange { .. })
        ));
        assert!(matches!(
            feasible_slope(&tent, &q("-1/2")),
            Err(PredicateError::SlopeOutOfRange { .. })
        ));
    }
}
