//! Drone trajectories, the corridor they induce, and its reflex points.
//!
//! The drone's motion along its line is an α-path in the space-time plane:
//! a polyline through `(t_i, h_i)` whose segments alternate between slopes
//! `+alpha` and `-alpha`. The ground robot must stay within vertical
//! distance `L` of it, so the feasible region is the band between the path
//! shifted down by `L` (the lower chain) and up by `L` (the upper chain).

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::num::Q;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("tether length {tether} does not exceed line separation {separation}")]
    TetherTooShort { tether: Q, separation: Q },
    #[error("projected budget sqrt({squared}) is irrational; use a Pythagorean tether/separation pair")]
    IrrationalBudget { squared: Q },
    #[error("alpha must be positive, got {0}")]
    NonPositiveAlpha(Q),
    #[error("vertical budget must be positive, got {0}")]
    NonPositiveBudget(Q),
    #[error("an instance needs at least two turn points, got {0}")]
    TooFewTurns(usize),
    #[error("segment {segment}: times must be strictly increasing")]
    NonMonotoneTime { segment: usize },
    #[error("segment {segment}: |dh| = {rise} but alpha * dt = {expected}")]
    SpeedMismatch { segment: usize, rise: Q, expected: Q },
    #[error("segments {segment} and {next}: slopes do not alternate", next = segment + 1)]
    NonAlternating { segment: usize },
    #[error("malformed instance: {0}")]
    Format(String),
}

/// A vertex of the drone's space-time path.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TurnPoint {
    pub t: Q,
    pub h: Q,
}

impl TurnPoint {
    pub fn new(t: Q, h: Q) -> Self {
        Self { t, h }
    }
}

/// A point of the space-time plane.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Point {
    pub t: Q,
    pub y: Q,
}

impl Point {
    pub fn new(t: Q, y: Q) -> Self {
        Self { t, y }
    }
}

/// The tether length projected onto the ground robot's line.
///
/// Stored by its square; the root is kept when it is rational.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EffectiveBudget {
    squared: Q,
    root: Option<Q>,
}

impl EffectiveBudget {
    pub fn exact(value: Q) -> Self {
        Self {
            squared: &value * &value,
            root: Some(value),
        }
    }

    pub fn squared(&self) -> &Q {
        &self.squared
    }

    pub fn root(&self) -> Option<&Q> {
        self.root.as_ref()
    }

    /// `|x| <= budget`, decided on squares so it also works for irrational roots.
    pub fn admits(&self, x: &Q) -> bool {
        match &self.root {
            Some(r) => x.abs() <= *r,
            None => x * x <= self.squared,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match &self.root {
            Some(r) => r.to_f64(),
            None => self.squared.to_f64().sqrt(),
        }
    }
}

/// Vertical budget `sqrt(L^2 - d^2)` for a tether of length `L` between
/// parallel lines `d` apart.
pub fn effective_budget(tether_length: &Q, line_separation: &Q) -> Result<EffectiveBudget, ModelError> {
    if line_separation.is_negative() || line_separation >= tether_length {
        return Err(ModelError::TetherTooShort {
            tether: tether_length.clone(),
            separation: line_separation.clone(),
        });
    }
    let squared = tether_length * tether_length - line_separation * line_separation;
    let root = squared.sqrt_exact();
    Ok(EffectiveBudget { squared, root })
}

/// A drone trajectory plus the tether geometry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub alpha: Q,
    pub tether_length: Option<Q>,
    pub line_separation: Option<Q>,
    pub vertical_budget: EffectiveBudget,
    pub turns: Vec<TurnPoint>,
}

impl Instance {
    pub fn new(alpha: Q, vertical_budget: Q, turns: Vec<TurnPoint>) -> Self {
        Self {
            alpha,
            tether_length: None,
            line_separation: None,
            vertical_budget: EffectiveBudget::exact(vertical_budget),
            turns,
        }
    }

    pub fn with_tether(
        alpha: Q,
        tether_length: Q,
        line_separation: Q,
        turns: Vec<TurnPoint>,
    ) -> Result<Self, ModelError> {
        let vertical_budget = effective_budget(&tether_length, &line_separation)?;
        Ok(Self {
            alpha,
            tether_length: Some(tether_length),
            line_separation: Some(line_separation),
            vertical_budget,
            turns,
        })
    }

    /// Convenience constructor from `(t, h)` pairs.
    pub fn from_pairs(alpha: Q, vertical_budget: Q, pairs: &[(Q, Q)]) -> Self {
        let turns = pairs
            .iter()
            .map(|(t, h)| TurnPoint::new(t.clone(), h.clone()))
            .collect();
        Self::new(alpha, vertical_budget, turns)
    }

    /// Number of drone segments.
    pub fn segments(&self) -> usize {
        self.turns.len().saturating_sub(1)
    }

    pub fn start_time(&self) -> &Q {
        &self.turns[0].t
    }

    pub fn end_time(&self) -> &Q {
        &self.turns[self.turns.len() - 1].t
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        if !self.alpha.is_positive() {
            return Err(ModelError::NonPositiveAlpha(self.alpha.clone()));
        }
        if !self.vertical_budget.squared().is_positive() {
            return Err(ModelError::NonPositiveBudget(self.vertical_budget.squared().clone()));
        }
        if self.turns.len() < 2 {
            return Err(ModelError::TooFewTurns(self.turns.len()));
        }
        let mut prev_sign = 0;
        for (segment, w) in self.turns.windows(2).enumerate() {
            let dt = &w[1].t - &w[0].t;
            if !dt.is_positive() {
                return Err(ModelError::NonMonotoneTime { segment });
            }
            let dh = &w[1].h - &w[0].h;
            let expected = &self.alpha * &dt;
            if dh.abs() != expected {
                return Err(ModelError::SpeedMismatch {
                    segment,
                    rise: dh.abs(),
                    expected,
                });
            }
            let sign = dh.signum();
            if sign == prev_sign {
                return Err(ModelError::NonAlternating {
                    segment: segment - 1,
                });
            }
            prev_sign = sign;
        }
        Ok(())
    }

    /// Drone position at time `t` (clamped to the trajectory's span).
    pub fn drone_at(&self, t: &Q) -> Q {
        let pts: Vec<Point> = self
            .turns
            .iter()
            .map(|p| Point::new(p.t.clone(), p.h.clone()))
            .collect();
        eval_polyline(&pts, t)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Chain {
    Lower,
    Upper,
}

/// A peak of the lower chain or a valley of the upper chain.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ReflexPoint {
    pub chain: Chain,
    pub vertex_index: usize,
    pub t: Q,
    pub y: Q,
}

impl ReflexPoint {
    pub fn point(&self) -> Point {
        Point::new(self.t.clone(), self.y.clone())
    }

    /// Order by `(t, chain)`.
    pub fn time_order(&self, other: &ReflexPoint) -> Ordering {
        self.t.cmp(&other.t).then(self.chain.cmp(&other.chain))
    }
}

/// The feasible band around a drone trajectory.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Corridor {
    pub alpha: Q,
    pub budget: Q,
    pub lower: Vec<Point>,
    pub upper: Vec<Point>,
    pub lower_reflex: Vec<ReflexPoint>,
    pub upper_reflex: Vec<ReflexPoint>,
}

/// Which chain a drone vertex is reflex on. Every vertex is a peak or a
/// valley; endpoints count as one-sided extrema.
fn is_peak(turns: &[TurnPoint], i: usize) -> bool {
    let n = turns.len() - 1;
    if i < n {
        // Peak iff the outgoing segment descends.
        turns[i + 1].h < turns[i].h
    } else {
        turns[n].h > turns[n - 1].h
    }
}

pub fn build_corridor(instance: &Instance) -> Result<Corridor, ModelError> {
    instance.validate()?;
    let budget = instance
        .vertical_budget
        .root()
        .cloned()
        .ok_or_else(|| ModelError::IrrationalBudget {
            squared: instance.vertical_budget.squared().clone(),
        })?;
    let turns = &instance.turns;
    let mut lower = Vec::with_capacity(turns.len());
    let mut upper = Vec::with_capacity(turns.len());
    let mut lower_reflex = Vec::new();
    let mut upper_reflex = Vec::new();
    for (i, p) in turns.iter().enumerate() {
        let lo = &p.h - &budget;
        let hi = &p.h + &budget;
        if is_peak(turns, i) {
            lower_reflex.push(ReflexPoint {
                chain: Chain::Lower,
                vertex_index: i,
                t: p.t.clone(),
                y: lo.clone(),
            });
        } else {
            upper_reflex.push(ReflexPoint {
                chain: Chain::Upper,
                vertex_index: i,
                t: p.t.clone(),
                y: hi.clone(),
            });
        }
        lower.push(Point::new(p.t.clone(), lo));
        upper.push(Point::new(p.t.clone(), hi));
    }
    Ok(Corridor {
        alpha: instance.alpha.clone(),
        budget,
        lower,
        upper,
        lower_reflex,
        upper_reflex,
    })
}

/// Lower and upper reflex points, each ordered by time.
pub fn reflex_points(corridor: &Corridor) -> (Vec<ReflexPoint>, Vec<ReflexPoint>) {
    (corridor.lower_reflex.clone(), corridor.upper_reflex.clone())
}

/// Evaluate a polyline with strictly increasing `t` at `t`, clamping outside its span.
pub fn eval_polyline(points: &[Point], t: &Q) -> Q {
    debug_assert!(!points.is_empty());
    if *t <= points[0].t {
        return points[0].y.clone();
    }
    let last = points.len() - 1;
    if *t >= points[last].t {
        return points[last].y.clone();
    }
    // First index with points[i].t > t.
    let i = points.partition_point(|p| p.t <= *t);
    let a = &points[i - 1];
    let b = &points[i];
    if a.t == *t {
        return a.y.clone();
    }
    &a.y + (&b.y - &a.y) * (t - &a.t) / (&b.t - &a.t)
}

impl Corridor {
    pub fn start_time(&self) -> &Q {
        &self.lower[0].t
    }

    pub fn end_time(&self) -> &Q {
        &self.lower[self.lower.len() - 1].t
    }

    pub fn times(&self) -> impl Iterator<Item = &Q> {
        self.lower.iter().map(|p| &p.t)
    }

    pub fn vertex_count(&self) -> usize {
        self.lower.len()
    }

    pub fn lower_at(&self, t: &Q) -> Q {
        eval_polyline(&self.lower, t)
    }

    pub fn upper_at(&self, t: &Q) -> Q {
        eval_polyline(&self.upper, t)
    }

    /// Closed-band membership.
    pub fn contains(&self, p: &Point) -> bool {
        if p.t < *self.start_time() || p.t > *self.end_time() {
            return false;
        }
        self.lower_at(&p.t) <= p.y && p.y <= self.upper_at(&p.t)
    }

    /// All reflex points of both chains merged by time.
    pub fn reflex_in_time_order(&self) -> Vec<&ReflexPoint> {
        let mut all: Vec<&ReflexPoint> = self
            .lower_reflex
            .iter()
            .chain(self.upper_reflex.iter())
            .collect();
        all.sort_by(|a, b| a.time_order(b));
        all
    }

    /// The corridor under `t -> -t`, vertices re-ordered by time.
    pub fn mirrored(&self) -> Corridor {
        let n = self.lower.len();
        let flip = |pts: &[Point]| -> Vec<Point> {
            pts.iter().rev().map(|p| Point::new(-&p.t, p.y.clone())).collect()
        };
        let flip_reflex = |pts: &[ReflexPoint]| -> Vec<ReflexPoint> {
            pts.iter()
                .rev()
                .map(|r| ReflexPoint {
                    chain: r.chain,
                    vertex_index: n - 1 - r.vertex_index,
                    t: -&r.t,
                    y: r.y.clone(),
                })
                .collect()
        };
        Corridor {
            alpha: self.alpha.clone(),
            budget: self.budget.clone(),
            lower: flip(&self.lower),
            upper: flip(&self.upper),
            lower_reflex: flip_reflex(&self.lower_reflex),
            upper_reflex: flip_reflex(&self.upper_reflex),
        }
    }
}

/// Instance file layout. Numbers are exact decimal (or `p/q`) strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceFile {
    alpha: Q,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    vertical_budget: Option<Q>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    tether_length: Option<Q>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    line_separation: Option<Q>,
    turns: Vec<(Q, Q)>,
}

pub fn parse_instance(text: &str) -> Result<Instance, ModelError> {
    let file: InstanceFile =
        serde_json::from_str(text).map_err(|e| ModelError::Format(e.to_string()))?;
    let turns = file
        .turns
        .into_iter()
        .map(|(t, h)| TurnPoint::new(t, h))
        .collect();
    match (file.vertical_budget, file.tether_length, file.line_separation) {
        (Some(b), None, None) => Ok(Instance::new(file.alpha, b, turns)),
        (None, Some(l), Some(d)) => Instance::with_tether(file.alpha, l, d, turns),
        (None, Some(l), None) => Instance::with_tether(file.alpha, l, Q::ZERO, turns),
        _ => Err(ModelError::Format(
            "expected either vertical_budget or tether_length (+ line_separation)".into(),
        )),
    }
}

/// Canonical single-line JSON; `parse_instance` inverts it exactly.
pub fn serialize_instance(instance: &Instance) -> String {
    let file = InstanceFile {
        alpha: instance.alpha.clone(),
        vertical_budget: match instance.tether_length {
            Some(_) => None,
            None => instance.vertical_budget.root().cloned(),
        },
        tether_length: instance.tether_length.clone(),
        line_separation: instance.line_separation.clone(),
        turns: instance
            .turns
            .iter()
            .map(|p| (p.t.clone(), p.h.clone()))
            .collect(),
    };
    serde_json::to_string(&file).expect("instance serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::num::q;

    fn pts(c: &[Point]) -> Vec<(Q, Q)> {
        c.iter().map(|p| (p.t.clone(), p.y.clone())).collect()
    }

    fn refl(r: &[ReflexPoint]) -> Vec<(Q, Q)> {
        r.iter().map(|p| (p.t.clone(), p.y.clone())).collect()
    }

    fn qq(a: &str, b: &str) -> (Q, Q) {
        (q(a), q(b))
    }

    #[test]
    fn effective_budget_examples() {
        assert_eq!(effective_budget(&q("2"), &q("0")).unwrap().root(), Some(&q("2")));
        assert_eq!(effective_budget(&q("5"), &q("3")).unwrap().root(), Some(&q("4")));
        assert!(matches!(
            effective_budget(&q("1"), &q("2")),
            Err(ModelError::TetherTooShort { .. })
        ));
        assert!(matches!(
            effective_budget(&q("1"), &q("1")),
            Err(ModelError::TetherTooShort { .. })
        ));
        let irr = effective_budget(&q("2"), &q("1")).unwrap();
        assert_eq!(irr.root(), None);
        assert_eq!(irr.squared(), &q("3"));
        assert!(irr.admits(&q("1.732")));
        assert!(!irr.admits(&q("1.7321")));
    }

    #[test]
    fn tent_corridor() {
        let c = build_corridor(&fixtures::tent()).unwrap();
        assert_eq!(pts(&c.lower), vec![qq("0", "-1"), qq("3", "2"), qq("6", "-1")]);
        assert_eq!(pts(&c.upper), vec![qq("0", "1"), qq("3", "4"), qq("6", "1")]);
        for (l, u) in c.lower.iter().zip(&c.upper) {
            assert_eq!(&u.y - &l.y, q("2"));
        }
    }

    #[test]
    fn validation_errors() {
        let speed = Instance::from_pairs(q("1"), q("1"), &[qq("0", "0"), qq("3", "2")]);
        assert!(matches!(build_corridor(&speed), Err(ModelError::SpeedMismatch { .. })));
        let same = Instance::from_pairs(
            q("1"),
            q("1"),
            &[qq("0", "0"), qq("2", "2"), qq("4", "4")],
        );
        assert_eq!(build_corridor(&same), Err(ModelError::NonAlternating { segment: 0 }));
        let back = Instance::from_pairs(q("1"), q("1"), &[qq("0", "0"), qq("0", "0")]);
        assert_eq!(build_corridor(&back), Err(ModelError::NonMonotoneTime { segment: 0 }));
        let one = Instance::from_pairs(q("1"), q("1"), &[qq("0", "0")]);
        assert_eq!(build_corridor(&one), Err(ModelError::TooFewTurns(1)));
        let irr = Instance::with_tether(q("1"), q("2"), q("1"), fixtures::tent().turns).unwrap();
        assert!(matches!(build_corridor(&irr), Err(ModelError::IrrationalBudget { .. })));
    }

    #[test]
    fn reflex_examples() {
        let (lo, up) = reflex_points(&build_corridor(&fixtures::tent()).unwrap());
        assert_eq!(refl(&lo), vec![qq("3", "2")]);
        assert_eq!(refl(&up), vec![qq("0", "1"), qq("6", "1")]);

        let (lo, up) = reflex_points(&build_corridor(&fixtures::w()).unwrap());
        assert_eq!(refl(&lo), vec![qq("3", "2"), qq("8", "3")]);
        assert_eq!(refl(&up), vec![qq("0", "1"), qq("5", "2"), qq("10", "3")]);

        let (lo, up) = reflex_points(&build_corridor(&fixtures::cap()).unwrap());
        assert_eq!(refl(&lo), vec![qq("0", "2"), qq("6", "2")]);
        assert_eq!(refl(&up), vec![qq("3", "1")]);
    }

    #[test]
    fn every_vertex_is_reflex_on_exactly_one_chain() {
        let c = build_corridor(&fixtures::rise()).unwrap();
        let mut idx: Vec<usize> = c
            .lower_reflex
            .iter()
            .chain(&c.upper_reflex)
            .map(|r| r.vertex_index)
            .collect();
        idx.sort();
        assert_eq!(idx, (0..c.vertex_count()).collect::<Vec<_>>());
        for r in &c.lower_reflex {
            assert_eq!(c.lower[r.vertex_index], r.point());
        }
        for r in &c.upper_reflex {
            assert_eq!(c.upper[r.vertex_index], r.point());
        }
    }

    #[test]
    fn mirror_is_an_involution() {
        let c = build_corridor(&fixtures::w()).unwrap();
        assert_eq!(c.mirrored().mirrored(), c);
        let m = c.mirrored();
        assert_eq!(m.lower_at(&q("-4")), c.lower_at(&q("4")));
    }

    #[test]
    fn instance_json() {
        let text = r#"{"alpha":"1","vertical_budget":"1","turns":[["0","0"],["3","3"],["6","0"]]}"#;
        let inst = parse_instance(text).unwrap();
        assert_eq!(inst, fixtures::tent());
        assert_eq!(serialize_instance(&inst), text);

        let t = r#"{"alpha":"1","tether_length":"5","line_separation":"3","turns":[["0","0"],["1","1"]]}"#;
        let inst = parse_instance(t).unwrap();
        assert_eq!(inst.vertical_budget.root(), Some(&q("4")));
        assert_eq!(serialize_instance(&inst), t);

        assert!(parse_instance(r#"{"alpha":"1","turns":[]}"#).is_err());
        assert!(parse_instance(r#"{"alpha":"x","vertical_budget":"1","turns":[]}"#).is_err());
    }

    #[test]
    fn eval_polyline_interpolates() {
        let c = build_corridor(&fixtures::w()).unwrap();
        assert_eq!(c.lower_at(&q("4")), q("1"));
        assert_eq!(c.upper_at(&q("4.5")), q("2.5"));
        assert_eq!(c.upper_at(&q("10")), q("3"));
        assert!(c.contains(&Point::new(q("5"), q("2"))));
        assert!(!c.contains(&Point::new(q("5"), q("2.01"))));
    }
}
