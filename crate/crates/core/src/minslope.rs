//! Minimum feasible slope of a ground path.
//!
//! The answer is the largest slope over overlapping reflex pairs. Two
//! solvers compute it: a quadratic scan over all pairs, and a linear sweep
//! that keeps the upper convex chain of lower reflex points and queries it
//! with a pointer that only ever moves forward.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::model::{Corridor, Point, ReflexPoint};
use crate::num::Q;
use crate::predicates::{pair_visible, PairSlope};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    #[serde(rename = "bruteforce")]
    BruteForce,
    Linear,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::BruteForce => "bruteforce",
            Method::Linear => "linear",
        }
    }
}

impl std::str::FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "bruteforce" => Ok(Method::BruteForce),
            "linear" => Ok(Method::Linear),
            other => Err(format!("unknown method {other:?} (expected linear|bruteforce)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlopeSolution {
    pub beta_star: Q,
    /// Present iff `beta_star > 0`.
    pub witness: Option<PairSlope>,
    pub method: Method,
}

/// Quadratic scan over every (lower, upper) reflex pair.
///
/// Ties are broken by the smallest `(lower.t, upper.t)`.
pub fn min_slope_bruteforce(corridor: &Corridor) -> SlopeSolution {
    let mut best = Q::ZERO;
    let mut witness: Option<(&ReflexPoint, &ReflexPoint)> = None;
    for l in &corridor.lower_reflex {
        for u in &corridor.upper_reflex {
            if u.y >= l.y {
                continue;
            }
            let slope = (&l.y - &u.y) / (&l.t - &u.t).abs();
            if slope > best {
                best = slope;
                witness = Some((l, u));
            }
        }
    }
    SlopeSolution {
        witness: witness.map(|(l, u)| PairSlope {
            lower: l.clone(),
            upper: u.clone(),
            slope: best.clone(),
        }),
        beta_star: best,
        method: Method::BruteForce,
    }
}

/// Exact arithmetic the sweep runs on: rationals, or integers after
/// scaling every coordinate by a common denominator.
trait Exact: Clone + Ord {
    fn zero() -> Self;
    fn one() -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn add(&self, o: &Self) -> Self;
}

impl Exact for Q {
    fn zero() -> Self {
        Q::ZERO
    }
    fn one() -> Self {
        Q::ONE
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
}

/// Scaled coordinates stay below 2^60, so every product of two differences
/// and every sum of two such products fits.
impl Exact for i128 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
}

const SCALED_LIMIT: i128 = 1 << 60;

/// A reflex point seen by a sweep, with time possibly mirrored.
#[derive(Clone)]
struct SweepPoint<T> {
    t: T,
    y: T,
    lower: bool,
}

/// Largest `(l.y - u.y) / (u.t - l.t)` over lower points `l` strictly
/// before upper points `u`, or zero when every such value is non-positive.
///
/// `hull` is the upper convex chain of the lower points seen so far. For the
/// current best slope `b` the lower point maximizing `y + b t` is tracked by
/// `ptr`; because `b` only grows, that maximizer only moves right along the
/// chain, so the pointer's total travel is linear.
///
/// The running maximum is kept as a fraction `num / den` with `den > 0`.
fn descending_sweep<T: Exact>(points: &[SweepPoint<T>], mirrored: bool) -> (T, T) {
    let (mut num, mut den) = (T::zero(), T::one());
    let mut hull: Vec<(T, T)> = Vec::new();
    let mut ptr = 0usize;
    let at = |i: usize| &points[if mirrored { points.len() - 1 - i } else { i }];
    // Time differences are `later - earlier` in sweep order; a mirrored
    // sweep negates time.
    let dt = |later: &T, earlier: &T| if mirrored { earlier.sub(later) } else { later.sub(earlier) };

    // Moving from hull[k] to hull[k + 1] does not decrease y + b t.
    let advances = |hull: &[(T, T)], k: usize, num: &T, den: &T| -> bool {
        let (t0, y0) = &hull[k];
        let (t1, y1) = &hull[k + 1];
        y1.sub(y0).mul(den).add(&num.mul(&dt(t1, t0))) >= T::zero()
    };

    for i in 0..points.len() {
        let p = at(i);
        if p.lower {
            while hull.len() >= 2 {
                let (ta, ya) = &hull[hull.len() - 2];
                let (tb, yb) = &hull[hull.len() - 1];
                // Drop the top when it is on or below the segment to p.
                let left = dt(tb, ta).mul(&p.y.sub(ya));
                let right = yb.sub(ya).mul(&dt(&p.t, ta));
                if left < right {
                    break;
                }
                hull.pop();
            }
            // If the tracked vertex was popped, the top survivor is the best
            // remaining one: every edge left of it was non-decreasing.
            ptr = ptr.min(hull.len().saturating_sub(1));
            hull.push((p.t.clone(), p.y.clone()));
            while ptr + 1 < hull.len() && advances(&hull, ptr, &num, &den) {
                ptr += 1;
            }
        } else if !hull.is_empty() {
            let (lt, ly) = &hull[ptr];
            if ly.sub(&p.y).mul(&den) > num.mul(&dt(&p.t, lt)) {
                // Walk to the tangent point from p.
                loop {
                    let (lt, ly) = &hull[ptr];
                    num = ly.sub(&p.y);
                    den = dt(&p.t, lt);
                    let mut moved = false;
                    while ptr + 1 < hull.len() && advances(&hull, ptr, &num, &den) {
                        ptr += 1;
                        moved = true;
                    }
                    if !moved {
                        break;
                    }
                }
            }
        }
    }
    (num, den)
}

/// Reflex points merged in time order.
fn sweep_points(corridor: &Corridor) -> Vec<SweepPoint<Q>> {
    let n = corridor.vertex_count();
    let mut out = Vec::with_capacity(n);
    let mut li = 0;
    let mut ui = 0;
    // Reflex points partition the vertices; merge the two lists by index.
    for k in 0..n {
        let (r, lower) = if li < corridor.lower_reflex.len()
            && corridor.lower_reflex[li].vertex_index == k
        {
            li += 1;
            (&corridor.lower_reflex[li - 1], true)
        } else {
            ui += 1;
            (&corridor.upper_reflex[ui - 1], false)
        };
        out.push(SweepPoint {
            t: r.t.clone(),
            y: r.y.clone(),
            lower,
        });
    }
    out
}

/// The points scaled by the least common denominator, if all fit.
fn scaled(points: &[SweepPoint<Q>]) -> Option<Vec<SweepPoint<i128>>> {
    let mut lcm: i128 = 1;
    for p in points {
        for v in [&p.t, &p.y] {
            let (_, d) = v.as_small()?;
            let d = d as i128;
            if lcm % d != 0 {
                let g = num_integer::gcd(lcm, d);
                lcm = lcm.checked_mul(d / g)?;
                if lcm >= SCALED_LIMIT {
                    return None;
                }
            }
        }
    }
    let scale = |v: &Q| -> Option<i128> {
        let (n, d) = v.as_small()?;
        let x = (n as i128).checked_mul(lcm / d as i128)?;
        (x.abs() < SCALED_LIMIT).then_some(x)
    };
    points
        .iter()
        .map(|p| {
            Some(SweepPoint {
                t: scale(&p.t)?,
                y: scale(&p.y)?,
                lower: p.lower,
            })
        })
        .collect()
}

/// Largest descending-pair slope in both time directions.
fn sweep_both(corridor: &Corridor) -> Q {
    let points = sweep_points(corridor);
    if let Some(ints) = scaled(&points) {
        let ratio = |(n, d): (i128, i128)| -> Q {
            match (i64::try_from(n), i64::try_from(d)) {
                (Ok(n), Ok(d)) => Q::new(n, d),
                _ => Q::from(num_rational::BigRational::new(n.into(), d.into())),
            }
        };
        return ratio(descending_sweep(&ints, false)).max(ratio(descending_sweep(&ints, true)));
    }
    let (n, d) = descending_sweep(&points, false);
    let forward = n / d;
    let (n, d) = descending_sweep(&points, true);
    forward.max(n / d)
}

/// Smallest `(lower.t, upper.t)` pair whose slope equals `beta`, assuming
/// `beta > 0` is the maximum over overlapping pairs.
///
/// With `beta` maximal, every earlier upper point `u` satisfies
/// `u.y - beta u.t >= l.y - beta l.t` and every later one
/// `u.y + beta u.t >= l.y + beta l.t`; equality marks a witness. Prefix and
/// suffix minima find the first one in a single pass each.
pub fn select_witness(corridor: &Corridor, beta: &Q) -> Option<PairSlope> {
    let lowers = &corridor.lower_reflex;
    let uppers = &corridor.upper_reflex;
    // suffix[j]: index of the earliest upper point in uppers[j..] minimizing y + beta t.
    let mut suffix: Vec<Option<(usize, Q)>> = vec![None; uppers.len() + 1];
    for j in (0..uppers.len()).rev() {
        let v = &uppers[j].y + beta * &uppers[j].t;
        suffix[j] = match &suffix[j + 1] {
            Some((k, m)) if *m < v => Some((*k, m.clone())),
            _ => Some((j, v)),
        };
    }
    let mut prefix: Option<(usize, Q)> = None;
    let mut uj = 0;
    for l in lowers {
        while uj < uppers.len() && uppers[uj].t < l.t {
            let v = &uppers[uj].y - beta * &uppers[uj].t;
            if prefix.as_ref().is_none_or(|(_, m)| v < *m) {
                prefix = Some((uj, v));
            }
            uj += 1;
        }
        let before = &l.y - beta * &l.t;
        if let Some((k, m)) = &prefix {
            if *m == before {
                return Some(PairSlope {
                    lower: l.clone(),
                    upper: uppers[*k].clone(),
                    slope: beta.clone(),
                });
            }
        }
        let after = &l.y + beta * &l.t;
        if let Some((k, m)) = &suffix[uj] {
            if *m == after {
                return Some(PairSlope {
                    lower: l.clone(),
                    upper: uppers[*k].clone(),
                    slope: beta.clone(),
                });
            }
        }
    }
    None
}

/// Linear-time minimum slope.
///
/// Runs the descending-pair sweep on the corridor and on its time mirror
/// (which turns ascending pairs into descending ones), then recovers the
/// lexicographically first witness.
pub fn min_slope_linear(corridor: &Corridor) -> SlopeSolution {
    let beta_star = sweep_both(corridor);
    let witness = if beta_star.is_positive() {
        let w = select_witness(corridor, &beta_star);
        debug_assert!(w.is_some(), "maximal slope must be attained by a pair");
        w
    } else {
        None
    };
    SlopeSolution {
        beta_star,
        witness,
        method: Method::Linear,
    }
}

pub fn solve(corridor: &Corridor, method: Method) -> SlopeSolution {
    match method {
        Method::BruteForce => min_slope_bruteforce(corridor),
        Method::Linear => min_slope_linear(corridor),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Forward,
    Backward,
}

/// A maximum convex chain: the upper convex chain of consecutive lower
/// reflex points, grown from an anchor until an upper reflex point would
/// fall strictly below it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mcc {
    pub direction: Direction,
    /// Index into `corridor.lower_reflex` of the first covered point.
    pub anchor_index: usize,
    /// Index into `corridor.lower_reflex` of the last covered point.
    pub end_index: usize,
    /// Chain vertices, in sweep order (decreasing time for backward chains).
    pub vertices: Vec<ReflexPoint>,
    /// For each covered lower reflex index, the later upper reflex point (in
    /// sweep order) with the lowest signed slope seen from it.
    pub u_table: BTreeMap<usize, ReflexPoint>,
    /// Time span whose upper reflex points the chain is paired against:
    /// from the anchor to the next chain's anchor (or the corridor's end).
    pub span: (Q, Q),
}

fn slope(a: &Point, b: &Point) -> Q {
    (&b.y - &a.y) / (&b.t - &a.t)
}

fn unmirror_reflex(r: &ReflexPoint, n: usize) -> ReflexPoint {
    ReflexPoint {
        chain: r.chain,
        vertex_index: n - 1 - r.vertex_index,
        t: -&r.t,
        y: r.y.clone(),
    }
}

/// Splits the lower reflex points into maximum convex chains.
///
/// A Graham-style stack keeps the chain convex; each stack entry carries its
/// U-table blocker. A tentative hull edge `a -> p` is blocked when the
/// blocker of `a` has a smaller slope from `a` than `p` does, i.e. lies
/// strictly below the edge. Growth then stops and the next chain starts at `p`.
pub fn build_mccs(corridor: &Corridor, direction: Direction) -> Vec<Mcc> {
    let work;
    let c = match direction {
        Direction::Forward => corridor,
        Direction::Backward => {
            work = corridor.mirrored();
            &work
        }
    };
    let lowers = &c.lower_reflex;
    let uppers = &c.upper_reflex;
    let m = lowers.len();
    let mut chains: Vec<Mcc> = Vec::new();

    let mut i = 0;
    let mut uj = uppers.partition_point(|u| u.t < lowers.first().map_or(Q::ZERO, |l| l.t.clone()));
    while i < m {
        let mut stack: Vec<usize> = vec![i];
        let mut u_table: BTreeMap<usize, usize> = BTreeMap::new();
        let mut j = i + 1;
        // Upper points between consecutive lower points update every stack entry.
        let absorb_uppers = |stack: &[usize],
                             u_table: &mut BTreeMap<usize, usize>,
                             uj: &mut usize,
                             until: Option<&Q>| {
            while *uj < uppers.len() && until.is_none_or(|t| uppers[*uj].t < *t) {
                let u = uppers[*uj].point();
                for &s in stack {
                    let from = lowers[s].point();
                    let better = match u_table.get(&s) {
                        None => true,
                        Some(&k) => slope(&from, &u) < slope(&from, &uppers[k].point()),
                    };
                    if better {
                        u_table.insert(s, *uj);
                    }
                }
                *uj += 1;
            }
        };
        loop {
            let next_t = lowers.get(j).map(|l| &l.t);
            absorb_uppers(&stack, &mut u_table, &mut uj, next_t);
            if j >= m {
                break;
            }
            let p = lowers[j].point();
            let mut popped: Vec<usize> = Vec::new();
            while stack.len() >= 2 {
                let a = lowers[stack[stack.len() - 2]].point();
                let b = lowers[stack[stack.len() - 1]].point();
                let cross = (&b.t - &a.t) * (&p.y - &a.y) - (&b.y - &a.y) * (&p.t - &a.t);
                if cross.is_negative() {
                    break;
                }
                popped.push(stack.pop().expect("non-empty"));
            }
            let a = *stack.last().expect("anchor stays");
            let from = lowers[a].point();
            let blocked = u_table
                .get(&a)
                .is_some_and(|&k| slope(&from, &uppers[k].point()) < slope(&from, &p));
            if blocked {
                // Restore the chain as it was before p.
                while let Some(b) = popped.pop() {
                    stack.push(b);
                }
                break;
            }
            stack.push(j);
            j += 1;
        }
        let end_index = j - 1;
        let span_end = if j < m {
            lowers[j].t.clone()
        } else {
            c.end_time().clone()
        };
        let mut vertices: Vec<ReflexPoint> = stack.iter().map(|&s| lowers[s].clone()).collect();
        let mut table: BTreeMap<usize, ReflexPoint> = u_table
            .into_iter()
            .filter(|(s, _)| *s >= i && *s <= end_index)
            .map(|(s, k)| (s, uppers[k].clone()))
            .collect();
        let mut span = (lowers[i].t.clone(), span_end);
        let (mut anchor_index, mut end) = (i, end_index);
        if direction == Direction::Backward {
            let n = c.vertex_count();
            vertices = vertices.iter().map(|r| unmirror_reflex(r, n)).collect();
            table = table
                .into_iter()
                .map(|(s, u)| (m - 1 - s, unmirror_reflex(&u, n)))
                .collect();
            span = (-&span.1, -&span.0);
            anchor_index = m - 1 - i;
            end = m - 1 - end_index;
        }
        chains.push(Mcc {
            direction,
            anchor_index,
            end_index: end,
            vertices,
            u_table: table,
            span,
        });
        i = j;
    }
    chains
}

/// The first chain vertex (in sweep order) whose steepest overlapping
/// partner among the span's later upper reflex points is visible.
pub fn mcc_min_slope(corridor: &Corridor, mcc: &Mcc) -> Option<PairSlope> {
    let forward = mcc.direction == Direction::Forward;
    let (lo, hi) = &mcc.span;
    let partners: Vec<&ReflexPoint> = corridor
        .upper_reflex
        .iter()
        .filter(|u| &u.t >= lo && &u.t <= hi)
        .collect();
    for l in &mcc.vertices {
        let mut best: Option<(Q, &ReflexPoint)> = None;
        let ahead = partners
            .iter()
            .filter(|u| if forward { u.t > l.t } else { u.t < l.t });
        for u in ahead {
            if u.y >= l.y {
                continue;
            }
            let s = (&l.y - &u.y) / (&u.t - &l.t).abs();
            let replace = match &best {
                None => true,
                Some((b, prev)) => s > *b || (s == *b && u.t < prev.t),
            };
            if replace {
                best = Some((s, u));
            }
        }
        if let Some((s, u)) = best {
            if pair_visible(corridor, l, u) {
                return Some(PairSlope {
                    lower: l.clone(),
                    upper: (*u).clone(),
                    slope: s,
                });
            }
        }
    }
    None
}

/// Whether the chain vertices form a strictly convex (upper) chain.
pub fn mcc_is_convex(mcc: &Mcc) -> bool {
    let mut pts: Vec<Point> = mcc.vertices.iter().map(|r| r.point()).collect();
    pts.sort_by(|a, b| a.t.cmp(&b.t));
    pts.windows(3).all(|w| {
        let cross = (&w[1].t - &w[0].t) * (&w[2].y - &w[0].y) - (&w[1].y - &w[0].y) * (&w[2].t - &w[0].t);
        cross.is_negative()
    })
}

/// Whether no upper reflex point lies strictly below the chain's polyline.
pub fn mcc_clears_upper(corridor: &Corridor, mcc: &Mcc) -> bool {
    let mut pts: Vec<Point> = mcc.vertices.iter().map(|r| r.point()).collect();
    pts.sort_by(|a, b| a.t.cmp(&b.t));
    pts.windows(2).all(|w| {
        corridor
            .upper_reflex
            .iter()
            .filter(|u| u.t > w[0].t && u.t < w[1].t)
            .all(|u| {
                let y = &w[0].y + slope(&w[0], &w[1]) * (&u.t - &w[0].t);
                u.y >= y
            })
    })
}

/// Every candidate the chains produce, both directions.
pub fn mcc_candidates(corridor: &Corridor) -> Vec<PairSlope> {
    [Direction::Forward, Direction::Backward]
        .into_iter()
        .flat_map(|d| build_mccs(corridor, d))
        .filter_map(|m| mcc_min_slope(corridor, &m))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::model::build_corridor;
    use crate::num::q;
    use crate::predicates::pair_overlaps;

    fn coords(r: &ReflexPoint) -> (Q, Q) {
        (r.t.clone(), r.y.clone())
    }

    fn qq(a: &str, b: &str) -> (Q, Q) {
        (q(a), q(b))
    }

    #[test]
    fn bruteforce_examples() {
        let s = min_slope_bruteforce(&build_corridor(&fixtures::tent()).unwrap());
        assert_eq!(s.beta_star, q("1/3"));
        let w = s.witness.unwrap();
        assert_eq!((coords(&w.lower), coords(&w.upper)), (qq("3", "2"), qq("0", "1")));

        let s = min_slope_bruteforce(&build_corridor(&fixtures::flat()).unwrap());
        assert_eq!(s.beta_star, Q::ZERO);
        assert!(s.witness.is_none());

        let s = min_slope_bruteforce(&build_corridor(&fixtures::w()).unwrap());
        assert_eq!(s.beta_star, q("1/3"));
        let w = s.witness.unwrap();
        assert_eq!((coords(&w.lower), coords(&w.upper)), (qq("3", "2"), qq("0", "1")));
    }

    #[test]
    fn linear_examples() {
        for (name, inst) in fixtures::all() {
            let c = build_corridor(&inst).unwrap();
            let lin = min_slope_linear(&c);
            let bf = min_slope_bruteforce(&c);
            assert_eq!(lin.beta_star, bf.beta_star, "{name}");
            assert_eq!(lin.witness, bf.witness, "{name}");
        }
        let cap = min_slope_linear(&build_corridor(&fixtures::cap()).unwrap());
        assert_eq!(cap.beta_star, q("1/3"));
        let w = cap.witness.unwrap();
        assert_eq!((coords(&w.lower), coords(&w.upper)), (qq("0", "2"), qq("3", "1")));
        let rise = min_slope_linear(&build_corridor(&fixtures::rise()).unwrap());
        assert_eq!(rise.beta_star, q("1/4"));
    }

    #[test]
    fn mcc_examples() {
        let w = build_corridor(&fixtures::w()).unwrap();
        let chains = build_mccs(&w, Direction::Forward);
        let verts: Vec<Vec<(Q, Q)>> = chains
            .iter()
            .map(|m| m.vertices.iter().map(coords).collect())
            .collect();
        assert_eq!(verts, vec![vec![qq("3", "2")], vec![qq("8", "3")]]);
        assert_eq!(chains[0].u_table.get(&0).map(coords), Some(qq("5", "2")));

        let rise = build_corridor(&fixtures::rise()).unwrap();
        let chains = build_mccs(&rise, Direction::Forward);
        assert_eq!(chains.len(), 1);
        let verts: Vec<(Q, Q)> = chains[0].vertices.iter().map(coords).collect();
        assert_eq!(verts, vec![qq("4", "5/2"), qq("9", "7/2")]);

        let back = build_mccs(&rise, Direction::Backward);
        assert_eq!(back.len(), 1);
        let pair = mcc_min_slope(&rise, &back[0]).unwrap();
        assert_eq!((coords(&pair.lower), coords(&pair.upper)), (qq("4", "5/2"), qq("0", "3/2")));
        assert_eq!(pair.slope, q("1/4"));

        let tent = build_corridor(&fixtures::tent()).unwrap();
        let fwd = build_mccs(&tent, Direction::Forward);
        let pair = mcc_min_slope(&tent, &fwd[0]).unwrap();
        assert_eq!((coords(&pair.lower), coords(&pair.upper)), (qq("3", "2"), qq("6", "1")));
        assert_eq!(pair.slope, q("1/3"));

        let flat = build_corridor(&fixtures::flat()).unwrap();
        assert!(mcc_candidates(&flat).is_empty());
    }

    #[test]
    fn mcc_invariants_on_fixtures() {
        for (name, inst) in fixtures::all() {
            let c = build_corridor(&inst).unwrap();
            let beta = min_slope_bruteforce(&c).beta_star;
            for d in [Direction::Forward, Direction::Backward] {
                let chains = build_mccs(&c, d);
                let covered: usize = chains
                    .iter()
                    .map(|m| m.anchor_index.abs_diff(m.end_index) + 1)
                    .sum();
                assert_eq!(covered, c.lower_reflex.len(), "{name}");
                for m in &chains {
                    assert!(mcc_is_convex(m), "{name}");
                    assert!(mcc_clears_upper(&c, m), "{name}");
                    if let Some(p) = mcc_min_slope(&c, m) {
                        assert!(pair_overlaps(&p.lower, &p.upper).unwrap());
                        assert!(p.slope <= beta);
                    }
                }
            }
            let best = mcc_candidates(&c).into_iter().map(|p| p.slope).max().unwrap_or(Q::ZERO);
            assert_eq!(best, beta, "{name}");
        }
    }

    #[test]
    fn witness_selection_prefers_earliest_pair() {
        let c = build_corridor(&fixtures::tent()).unwrap();
        let w = select_witness(&c, &q("1/3")).unwrap();
        assert_eq!(coords(&w.upper), qq("0", "1"));
        assert!(select_witness(&c, &q("1/2")).is_none());
    }
}
