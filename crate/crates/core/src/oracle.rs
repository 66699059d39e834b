//! Independent, slower reference checks.
//!
//! Nothing here shares code with the fast solvers beyond the corridor model.

use thiserror::Error;

use crate::minlink::BetaPath;
use crate::model::{Corridor, Instance, Point};
use crate::num::Q;
use crate::predicates::feasible_slope;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("path spans [{path_start}, {path_end}] but the corridor spans [{start}, {end}]")]
    SpanMismatch {
        path_start: Q,
        path_end: Q,
        start: Q,
        end: Q,
    },
    #[error("slope {0} admits no path")]
    InfeasibleSlope(Q),
    #[error("no path within {0} links")]
    CapExceeded(usize),
}

fn check_span(corridor: &Corridor, path: &BetaPath) -> Result<(), OracleError> {
    if path.start().t != *corridor.start_time() || path.end().t != *corridor.end_time() {
        return Err(OracleError::SpanMismatch {
            path_start: path.start().t.clone(),
            path_end: path.end().t.clone(),
            start: corridor.start_time().clone(),
            end: corridor.end_time().clone(),
        });
    }
    Ok(())
}

/// Checks the path against both chains at every path and corridor vertex time.
pub fn check_feasible(corridor: &Corridor, path: &BetaPath) -> Result<bool, OracleError> {
    check_span(corridor, path)?;
    let mut times: Vec<&Q> = corridor
        .times()
        .chain(path.vertices().iter().map(|p| &p.t))
        .collect();
    times.sort();
    times.dedup();
    Ok(times.into_iter().all(|t| {
        let y = path.height_at(t);
        corridor.contains(&Point::new(t.clone(), y))
    }))
}

/// Checks the tether constraint directly: `|h(t) - y(t)| <= L` against the
/// drone's turn points, without building the corridor.
pub fn check_distance(instance: &Instance, path: &BetaPath) -> Result<bool, OracleError> {
    let start = instance.start_time();
    let end = instance.end_time();
    if path.start().t != *start || path.end().t != *end {
        return Err(OracleError::SpanMismatch {
            path_start: path.start().t.clone(),
            path_end: path.end().t.clone(),
            start: start.clone(),
            end: end.clone(),
        });
    }
    let mut times: Vec<&Q> = instance
        .turns
        .iter()
        .map(|p| &p.t)
        .chain(path.vertices().iter().map(|p| &p.t))
        .collect();
    times.sort();
    times.dedup();
    Ok(times.into_iter().all(|t| {
        let gap = instance.drone_at(t) - path.height_at(t);
        instance.vertical_budget.admits(&gap.abs())
    }))
}

/// Sorted, disjoint closed intervals.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
struct Intervals(Vec<(Q, Q)>);

impl Intervals {
    fn single(lo: Q, hi: Q) -> Self {
        Intervals(vec![(lo, hi)])
    }

    fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn from_unsorted(mut parts: Vec<(Q, Q)>) -> Self {
        parts.sort();
        let mut out: Vec<(Q, Q)> = Vec::with_capacity(parts.len());
        for (lo, hi) in parts {
            match out.last_mut() {
                Some(last) if lo <= last.1 => {
                    if hi > last.1 {
                        last.1 = hi;
                    }
                }
                _ => out.push((lo, hi)),
            }
        }
        Intervals(out)
    }

    /// Sorted, pairwise disjoint and inside `[lo, hi]`.
    fn well_formed(&self, lo: &Q, hi: &Q) -> bool {
        self.0.iter().all(|(a, b)| lo <= a && a <= b && b <= hi)
            && self.0.windows(2).all(|w| w[0].1 < w[1].0)
    }
}

/// Fewest links of any `±beta` path crossing the corridor.
///
/// Dynamic programme over the corridor's strips. `reach[k][s]` holds the
/// heights reachable at the current vertex time with at most `k` links, the
/// last one of sign `s`. Inside a strip both chains have slopes `±alpha`
/// with `alpha >= beta`, so a path needs at most one turn per strip, or two
/// when entering and leaving with the same sign; the three transitions
/// below cover those cases exactly.
pub fn min_link_oracle(corridor: &Corridor, beta: &Q) -> Result<usize, OracleError> {
    if !feasible_slope(corridor, beta).unwrap_or(false) {
        return Err(OracleError::InfeasibleSlope(beta.clone()));
    }
    let n = corridor.vertex_count() - 1;
    let cap = 2 * n + 2;
    let start = Intervals::single(corridor.lower[0].y.clone(), corridor.upper[0].y.clone());
    // Rows for k-2 and k-1, each indexed [up, down] then by vertex.
    let mut prev2: Option<[Vec<Intervals>; 2]> = None;
    let mut prev1: Option<[Vec<Intervals>; 2]> = None;
    for k in 1..=cap {
        let mut cur: [Vec<Intervals>; 2] = [vec![start.clone()], vec![start.clone()]];
        for i in 1..=n {
            let d = &corridor.lower[i].t - &corridor.lower[i - 1].t;
            let step = beta * &d;
            let lo = &corridor.lower[i].y;
            let hi = &corridor.upper[i].y;
            for side in 0..2 {
                let shift = if side == 0 { step.clone() } else { -&step };
                let mut parts: Vec<(Q, Q)> = cur[side][i - 1]
                    .0
                    .iter()
                    .map(|(a, b)| (a + &shift, b + &shift))
                    .collect();
                let mut dilate = |src: &Intervals| {
                    parts.extend(src.0.iter().map(|(a, b)| (a - &step, b + &step)));
                };
                if let Some(p1) = &prev1 {
                    dilate(&p1[1 - side][i - 1]);
                }
                if let Some(p2) = &prev2 {
                    dilate(&p2[side][i - 1]);
                }
                let clipped = parts
                    .into_iter()
                    .filter_map(|(a, b)| {
                        let a = a.max(lo.clone());
                        let b = b.min(hi.clone());
                        (a <= b).then_some((a, b))
                    })
                    .collect();
                let merged = Intervals::from_unsorted(clipped);
                debug_assert!(merged.well_formed(lo, hi));
                cur[side].push(merged);
            }
        }
        if !cur[0][n].is_empty() || !cur[1][n].is_empty() {
            return Ok(k);
        }
        prev2 = prev1.take();
        prev1 = Some(cur);
    }
    Err(OracleError::CapExceeded(cap))
}

/// Smallest feasible slope by exhaustive candidate search.
///
/// The optimum is the slope of some overlapping reflex pair (or zero).
/// Candidates are those slopes up to `alpha`; feasibility is monotone in the slope, so
/// a binary search over the sorted candidates finds the smallest feasible one.
pub fn min_slope_oracle(corridor: &Corridor) -> Q {
    let mut candidates = vec![Q::ZERO];
    for l in &corridor.lower_reflex {
        for u in &corridor.upper_reflex {
            if u.y < l.y && l.t != u.t {
                let s = (&l.y - &u.y).abs() / (&l.t - &u.t).abs();
                if s <= corridor.alpha {
                    candidates.push(s);
                }
            }
        }
    }
    candidates.sort();
    candidates.dedup();
    let feasible = |b: &Q| feasible_slope(corridor, b).unwrap_or(false);
    let idx = candidates.partition_point(|b| !feasible(b));
    candidates
        .get(idx)
        .cloned()
        .unwrap_or_else(|| corridor.alpha.clone())
}
