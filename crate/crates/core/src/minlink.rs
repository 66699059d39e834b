//! Minimum-link (and minimum-length) ground paths.
//!
//! A β-path alternates between slopes `+beta` and `-beta`. At the minimum
//! feasible slope the greedy construction below yields a path with the
//! fewest links; since every β-path over the same span has the same length,
//! it is also the shortest among constant-speed paths.

use thiserror::Error;

use crate::model::{Corridor, Point, ReflexPoint};
use crate::predicates::PairSlope;
use crate::num::Q;
use crate::minslope::SlopeSolution;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PathError {
    #[error("a path needs at least two vertices")]
    TooShort,
    #[error("vertex {0}: times must strictly increase")]
    NonMonotone(usize),
    #[error("segment {index}: slope {slope} is not +/-{beta}")]
    WrongSlope { index: usize, slope: Q, beta: Q },
    #[error("segments {0} and {next}: slope signs do not alternate", next = .0 + 1)]
    NotAlternating(usize),
    #[error("slope {beta} is infeasible for this corridor")]
    InfeasibleSlope { beta: Q },
    #[error("slope {beta} outside [{min}, {max}]")]
    SlopeOutOfRange { beta: Q, min: Q, max: Q },
}

/// A polygonal path whose segments have slopes `±beta`, alternating.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BetaPath {
    beta: Q,
    vertices: Vec<Point>,
}

impl BetaPath {
    /// Validates the slope and alternation invariants.
    pub fn new(beta: Q, vertices: Vec<Point>) -> Result<Self, PathError> {
        if vertices.len() < 2 {
            return Err(PathError::TooShort);
        }
        let mut prev = 0;
        for (i, w) in vertices.windows(2).enumerate() {
            let dt = &w[1].t - &w[0].t;
            if !dt.is_positive() {
                return Err(PathError::NonMonotone(i + 1));
            }
            let slope = (&w[1].y - &w[0].y) / dt;
            if slope.abs() != beta {
                return Err(PathError::WrongSlope {
                    index: i,
                    slope,
                    beta,
                });
            }
            let sign = slope.signum();
            if sign != 0 && sign == prev {
                return Err(PathError::NotAlternating(i - 1));
            }
            if sign == 0 && i > 0 {
                // A horizontal path is a single segment.
                return Err(PathError::NotAlternating(i - 1));
            }
            prev = sign;
        }
        Ok(Self { beta, vertices })
    }

    /// For paths built here; the invariants are only re-checked in debug builds.
    fn trusted(beta: Q, vertices: Vec<Point>) -> Self {
        debug_assert_eq!(BetaPath::new(beta.clone(), vertices.clone()).err(), None);
        Self { beta, vertices }
    }

    pub fn beta(&self) -> &Q {
        &self.beta
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn start(&self) -> &Point {
        &self.vertices[0]
    }

    pub fn end(&self) -> &Point {
        &self.vertices[self.vertices.len() - 1]
    }

    /// Interior vertices, where the direction changes.
    pub fn turns(&self) -> &[Point] {
        &self.vertices[1..self.vertices.len() - 1]
    }

    pub fn links(&self) -> usize {
        self.vertices.len() - 1
    }

    /// `+1`/`-1` per segment; empty when `beta == 0`.
    pub fn sign_sequence(&self) -> Vec<i32> {
        if self.beta.is_zero() {
            return Vec::new();
        }
        self.vertices
            .windows(2)
            .map(|w| (&w[1].y - &w[0].y).signum())
            .collect()
    }

    pub fn segments(&self) -> impl Iterator<Item = (&Point, &Point)> {
        self.vertices.windows(2).map(|w| (&w[0], &w[1]))
    }

    /// Height at `t`, clamped to the path's span.
    pub fn height_at(&self, t: &Q) -> Q {
        crate::model::eval_polyline(&self.vertices, t)
    }

    /// Whether `p` lies on the path.
    pub fn passes_through(&self, p: &Point) -> bool {
        p.t >= self.start().t && p.t <= self.end().t && self.height_at(&p.t) == p.y
    }

    /// The same path shifted vertically.
    pub fn shifted(&self, dy: &Q) -> BetaPath {
        BetaPath {
            beta: self.beta.clone(),
            vertices: self
                .vertices
                .iter()
                .map(|p| Point::new(p.t.clone(), &p.y + dy))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PathMetrics {
    pub links: usize,
    pub turns: usize,
    /// `(t_n - t_0)^2 (1 + beta^2)`, exact.
    pub length_squared: Q,
    pub length: f64,
}

impl PathMetrics {
    /// `length` with 12 decimals.
    pub fn length_decimal(&self) -> String {
        format!("{:.12}", self.length)
    }
}

pub fn path_metrics(path: &BetaPath) -> PathMetrics {
    let span = &path.end().t - &path.start().t;
    let length_squared = &span * &span * (Q::ONE + path.beta() * path.beta());
    PathMetrics {
        links: path.links(),
        turns: path.links() - 1,
        length: length_squared.to_f64().sqrt(),
        length_squared,
    }
}

/// Drops zero-length segments and merges consecutive segments of equal sign.
fn normalize(points: Vec<Point>) -> Vec<Point> {
    let mut dedup: Vec<Point> = Vec::with_capacity(points.len());
    for p in points {
        if dedup.last().is_some_and(|q| q.t == p.t) {
            continue;
        }
        dedup.push(p);
    }
    if dedup.len() <= 2 {
        return dedup;
    }
    let mut out = vec![dedup[0].clone()];
    for i in 1..dedup.len() - 1 {
        let last = out.last().expect("non-empty");
        let a = dedup[i].y.cmp(&last.y);
        let b = dedup[i + 1].y.cmp(&dedup[i].y);
        if a != b {
            out.push(dedup[i].clone());
        }
    }
    out.push(dedup[dedup.len() - 1].clone());
    out
}

/// The corridor as seen by the greedy construction: either as is, or the
/// prefix up to vertex `m` under `t -> -t` (view index `k` is vertex `m - k`).
///
/// Per vertex it carries `lower.y + beta t` and `lower.y - beta t`, so the
/// scans below only compare rationals. Since the corridor has constant
/// height `width`, the upper chain's keys are the lower ones plus `width`.
struct View<'a> {
    c: &'a Corridor,
    plus: &'a [Q],
    minus: &'a [Q],
    width: &'a Q,
    mirror: Option<usize>,
}

impl View<'_> {
    fn len(&self) -> usize {
        self.mirror.map_or(self.c.vertex_count(), |m| m + 1)
    }

    fn orig(&self, k: usize) -> usize {
        self.mirror.map_or(k, |m| m - k)
    }

    fn t(&self, k: usize) -> Q {
        let t = &self.c.lower[self.orig(k)].t;
        if self.mirror.is_some() {
            -t
        } else {
            t.clone()
        }
    }

    fn point(&self, k: usize, upper: bool) -> Point {
        let chain = if upper { &self.c.upper } else { &self.c.lower };
        Point::new(self.t(k), chain[self.orig(k)].y.clone())
    }

    /// `lower.y + sign * beta * t` in view coordinates.
    fn key(&self, k: usize, sign: i32) -> &Q {
        let flip = self.mirror.is_some();
        if (sign > 0) != flip {
            &self.plus[self.orig(k)]
        } else {
            &self.minus[self.orig(k)]
        }
    }

    /// Mirroring swaps incoming and outgoing segments, which leaves every
    /// vertex's peak/valley status unchanged.
    fn is_peak(&self, k: usize) -> bool {
        let j = self.orig(k);
        let lower = &self.c.lower;
        let n = lower.len() - 1;
        if j < n {
            lower[j + 1].y < lower[j].y
        } else {
            lower[n].y > lower[n - 1].y
        }
    }

    /// First view index with time strictly after `from`.
    fn first_after(&self, from: &Q) -> usize {
        let (mut lo, mut hi) = (0, self.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            if self.t(mid) <= *from {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        lo
    }
}

/// Line `y = offset + sign * beta * t`.
struct Line<'a> {
    offset: Q,
    sign: i32,
    beta: &'a Q,
}

impl Line<'_> {
    fn through<'b>(p: &Point, sign: i32, beta: &'b Q) -> Line<'b> {
        let offset = if sign > 0 {
            &p.y - beta * &p.t
        } else {
            &p.y + beta * &p.t
        };
        Line { offset, sign, beta }
    }

    fn at(&self, t: &Q) -> Q {
        if self.sign > 0 {
            &self.offset + self.beta * t
        } else {
            &self.offset - self.beta * t
        }
    }
}

/// How a line leaves the corridor going right.
enum Exit {
    End(Point),
    /// Above the upper chain (`true`) or below the lower one, first seen at
    /// this vertex; the crossing lies in the edge ending there.
    Out { upper: bool, vertex: usize },
}

/// Follows `line` from vertex `first` on until it leaves the corridor.
///
/// At vertex `k` the line is above the upper chain iff
/// `offset - width > lower.y - sign beta t`, below the lower chain iff
/// `offset < lower.y - sign beta t`.
fn line_exit(v: &View, line: &Line, first: usize) -> Exit {
    let raised = &line.offset - v.width;
    for k in first..v.len() {
        let key = v.key(k, -line.sign);
        if raised > *key {
            return Exit::Out { upper: true, vertex: k };
        }
        if line.offset < *key {
            return Exit::Out { upper: false, vertex: k };
        }
    }
    let end = v.t(v.len() - 1);
    let y = line.at(&end);
    Exit::End(Point::new(end, y))
}

/// Greedy extension to the right from `start` along slope `sign * beta`.
///
/// Each segment runs until it leaves the corridor. The next segment is the
/// opposite-slope line that reaches farthest: for an up-segment it passes
/// through the upper reflex point after the exit with the smallest
/// `y + beta t` among those met before the line drops under a lower reflex
/// point; down-segments are symmetric. Returns the vertices after `start`.
fn extend_right(v: &View, start: Point, sign: i32, beta: &Q) -> Result<Vec<Point>, PathError> {
    let infeasible = || PathError::InfeasibleSlope { beta: beta.clone() };
    let mut out = Vec::new();
    if start.t >= v.t(v.len() - 1) {
        return Ok(out);
    }
    let two_beta = beta + beta;
    let mut from = start.t.clone();
    let mut first = v.first_after(&from);
    let mut line = Line::through(&start, sign, beta);
    loop {
        let sign = line.sign;
        let exit = match line_exit(v, &line, first) {
            Exit::End(p) => {
                out.push(p);
                return Ok(out);
            }
            Exit::Out { upper, vertex } if upper == (sign > 0) => vertex,
            Exit::Out { .. } => return Err(infeasible()),
        };
        // Up-segments turn down onto a line through an upper reflex point;
        // down-segments the reverse. The new line's offset is
        // `y - next_sign beta t` at its support.
        let next_sign = -sign;
        // `best` is the chosen offset; `shifted` is it moved by the corridor
        // width onto the opposite chain, so both tests are plain comparisons.
        let mut best: Option<(Q, Q)> = None;
        for k in exit..v.len() {
            let key = v.key(k, -next_sign);
            let peak = v.is_peak(k);
            if next_sign < 0 {
                // Support on valleys, blocked by peaks.
                if !peak {
                    if best.as_ref().is_none_or(|(_, shifted)| key < shifted) {
                        best = Some((key + v.width, key.clone()));
                    }
                } else if best.as_ref().is_some_and(|(b, _)| b < key) {
                    break;
                }
            } else if peak {
                if best.as_ref().is_none_or(|(b, _)| key > b) {
                    best = Some((key.clone(), key - v.width));
                }
            } else if best.as_ref().is_some_and(|(_, shifted)| shifted > key) {
                break;
            }
        }
        let (next_offset, _) = best.ok_or_else(infeasible)?;
        // Intersection of the current line and the chosen one; it must lie
        // between the segment's start and its exit edge.
        let tau = if sign > 0 {
            (&next_offset - &line.offset) / &two_beta
        } else {
            (&line.offset - &next_offset) / &two_beta
        };
        let y = line.at(&tau);
        let prev = exit.saturating_sub(1);
        let past_exit = tau >= v.t(exit)
            || (tau > v.t(prev) && {
                // The exit edge has slope +-alpha; compare the turn with it.
                let upper = sign > 0;
                let (a, b) = (v.point(prev, upper), v.point(exit, upper));
                let rise = &v.c.alpha * (&tau - &a.t);
                let edge = if b.y > a.y { &a.y + rise } else { &a.y - rise };
                if upper { y > edge } else { y < edge }
            });
        if tau < from || past_exit {
            return Err(infeasible());
        }
        out.push(Point::new(tau.clone(), y));
        // The turn lies before the exit vertex, usually in the same edge.
        first = exit;
        while first > 0 && v.t(first - 1) > tau {
            first -= 1;
        }
        from = tau;
        line = Line {
            offset: next_offset,
            sign: next_sign,
            beta,
        };
    }
}

fn unmirror(points: Vec<Point>) -> Vec<Point> {
    points
        .into_iter()
        .rev()
        .map(|p| Point::new(-&p.t, p.y))
        .collect()
}

/// Greedy construction of a minimum-link β*-path.
///
/// With `beta_star == 0` the path is the horizontal line through the middle
/// of the band `[max lower reflex y, min upper reflex y]`. Otherwise it
/// starts with the witness segment and extends greedily both ways; the
/// left half runs the same procedure on the time-mirrored corridor.
pub fn build_min_link_path(corridor: &Corridor, solution: &SlopeSolution) -> Result<BetaPath, PathError> {
    let beta = &solution.beta_star;
    let witness = match &solution.witness {
        Some(w) if beta.is_positive() => w,
        _ => {
            if beta.is_positive() {
                return Err(PathError::InfeasibleSlope { beta: beta.clone() });
            }
            let floor = corridor
                .lower_reflex
                .iter()
                .map(|r| &r.y)
                .max()
                .unwrap_or(&corridor.lower[0].y);
            let ceiling = corridor
                .upper_reflex
                .iter()
                .map(|r| &r.y)
                .min()
                .unwrap_or(&corridor.upper[0].y);
            if floor > ceiling {
                return Err(PathError::InfeasibleSlope { beta: beta.clone() });
            }
            let y = (floor + ceiling) / Q::int(2);
            return BetaPath::new(
                Q::ZERO,
                vec![
                    Point::new(corridor.start_time().clone(), y.clone()),
                    Point::new(corridor.end_time().clone(), y),
                ],
            );
        }
    };
    let (a, b) = witness.ordered();
    let (a, b) = (a.point(), b.point());
    let sign = (&b.y - &a.y).signum();
    let bt: Vec<Q> = corridor.lower.iter().map(|p| beta * &p.t).collect();
    let plus: Vec<Q> = corridor.lower.iter().zip(&bt).map(|(p, x)| &p.y + x).collect();
    let minus: Vec<Q> = corridor.lower.iter().zip(&bt).map(|(p, x)| &p.y - x).collect();
    let width = &corridor.upper[0].y - &corridor.lower[0].y;
    let view = |mirror| View {
        c: corridor,
        plus: &plus,
        minus: &minus,
        width: &width,
        mirror,
    };
    let right = extend_right(&view(None), b.clone(), sign, beta)?;
    let a_index = corridor.lower.partition_point(|p| p.t <= a.t) - 1;
    let left = extend_right(
        &view(Some(a_index)),
        Point::new(-&a.t, a.y.clone()),
        -sign,
        beta,
    )?;

    let mut points = unmirror(left);
    points.push(a);
    points.push(b);
    points.extend(right);
    Ok(BetaPath::trusted(beta.clone(), normalize(points)))
}

/// Re-routes a feasible path with slope `delta` as a β-path, `delta <= beta <= alpha`.
///
/// Between consecutive breakpoints (the path's vertices and the corridor's
/// vertex times) the corridor is a parallelogram bounded by edges of slope
/// `±alpha`; any two-link `±beta` detour between two points of such a strip
/// stays inside it. The detours visit the path at every corridor vertex
/// time, i.e. at the projections of all reflex points.
pub fn steepen_path(corridor: &Corridor, path: &BetaPath, beta: &Q) -> Result<BetaPath, PathError> {
    if beta < path.beta() || *beta > corridor.alpha {
        return Err(PathError::SlopeOutOfRange {
            beta: beta.clone(),
            min: path.beta().clone(),
            max: corridor.alpha.clone(),
        });
    }
    if beta == path.beta() {
        return Ok(path.clone());
    }
    let mut times: Vec<Q> = corridor
        .times()
        .filter(|t| **t > path.start().t && **t < path.end().t)
        .cloned()
        .chain(path.vertices().iter().map(|p| p.t.clone()))
        .collect();
    times.sort();
    times.dedup();
    let anchors: Vec<Point> = times
        .iter()
        .map(|t| Point::new(t.clone(), path.height_at(t)))
        .collect();

    let two_beta = beta + beta;
    let mut points = vec![anchors[0].clone()];
    let mut sign = 1;
    for w in anchors.windows(2) {
        let (p, q) = (&w[0], &w[1]);
        let dt = &q.t - &p.t;
        let dy = &q.y - &p.y;
        // First leg with `sign`, then the opposite sign; its duration solves
        // sign*beta*d1 - sign*beta*(dt - d1) = dy.
        let d1 = if sign > 0 {
            (&dy + beta * &dt) / &two_beta
        } else {
            (beta * &dt - &dy) / &two_beta
        };
        if d1.is_positive() && d1 < dt {
            let t = &p.t + &d1;
            let y = if sign > 0 { &p.y + beta * &d1 } else { &p.y - beta * &d1 };
            points.push(Point::new(t, y));
            sign = -sign;
        } else if d1.is_zero() {
            sign = -sign;
        }
        points.push(q.clone());
    }
    BetaPath::new(beta.clone(), normalize(points))
}

/// Per segment: whether it touches a reflex point on its supporting chain.
///
/// Right of the witness pair, up-segments rest on lower reflex points and
/// down-segments on upper ones. The left half is built in mirrored time, so
/// there the chains swap. A segment straddling the earlier witness point
/// contains the witness itself and may use either chain. Without a witness
/// (horizontal path) every segment counts as supported.
pub fn segment_supports(corridor: &Corridor, path: &BetaPath, witness: Option<&PairSlope>) -> Vec<bool> {
    let Some(w) = witness.filter(|_| path.beta().is_positive()) else {
        return vec![true; path.links()];
    };
    let split = &w.ordered().0.t;
    let touches = |list: &[ReflexPoint], a: &Point, b: &Point| {
        let from = list.partition_point(|r| r.t < a.t);
        list[from..].iter().take_while(|r| r.t <= b.t).any(|r| {
            let y = &a.y + (&b.y - &a.y) * (&r.t - &a.t) / (&b.t - &a.t);
            y == r.y
        })
    };
    path.segments()
        .map(|(a, b)| {
            let up = b.y > a.y;
            let lower = touches(&corridor.lower_reflex, a, b);
            let upper = touches(&corridor.upper_reflex, a, b);
            if a.t >= *split {
                if up { lower } else { upper }
            } else if b.t <= *split {
                if up { upper } else { lower }
            } else {
                lower || upper
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::minslope::min_slope_linear;
    use crate::model::build_corridor;
    use crate::num::q;
    use crate::oracle::{check_feasible, min_link_oracle};

    fn p(t: &str, y: &str) -> Point {
        Point::new(q(t), q(y))
    }

    fn solve(inst: &crate::model::Instance) -> (Corridor, BetaPath) {
        let c = build_corridor(inst).unwrap();
        let s = min_slope_linear(&c);
        let path = build_min_link_path(&c, &s).unwrap();
        (c, path)
    }

    #[test]
    fn flat_is_horizontal_through_band_middle() {
        let (c, path) = solve(&fixtures::flat());
        assert_eq!(path.vertices(), &[p("0", "1.5"), p("6", "1.5")]);
        assert!(path.sign_sequence().is_empty());
        assert!(check_feasible(&c, &path).unwrap());
        let m = path_metrics(&path);
        assert_eq!((m.links, m.turns), (1, 0));
        assert_eq!(m.length_squared, q("36"));
    }

    #[test]
    fn tent_path() {
        let (c, path) = solve(&fixtures::tent());
        assert_eq!(path.vertices(), &[p("0", "1"), p("3", "2"), p("6", "1")]);
        assert_eq!(path.sign_sequence(), vec![1, -1]);
        assert!(check_feasible(&c, &path).unwrap());
        let m = path_metrics(&path);
        assert_eq!((m.links, m.turns), (2, 1));
        assert_eq!(m.length_squared, q("40"));
        assert!((m.length - 2.0 * 10f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn w_path_has_four_links() {
        let (c, path) = solve(&fixtures::w());
        assert_eq!(path.links(), 4);
        assert_eq!(
            path.vertices(),
            &[p("0", "1"), p("4", "7/3"), p("5", "2"), p("9", "10/3"), p("10", "3")]
        );
        assert!(check_feasible(&c, &path).unwrap());
        assert_eq!(min_link_oracle(&c, &q("1/3")).unwrap(), 4);
        let w = min_slope_linear(&c).witness;
        assert!(segment_supports(&c, &path, w.as_ref()).iter().all(|s| *s));
        let m = path_metrics(&path);
        assert!((m.length - 10.0 / 3.0 * 10f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn cap_and_rise() {
        let (c, path) = solve(&fixtures::cap());
        assert_eq!(path.links(), 2);
        assert!(check_feasible(&c, &path).unwrap());
        let (c, path) = solve(&fixtures::rise());
        assert!(check_feasible(&c, &path).unwrap());
        assert_eq!(path.links(), min_link_oracle(&c, &q("1/4")).unwrap());
    }

    #[test]
    fn steepen_examples() {
        let (c, flat) = solve(&fixtures::flat());
        let steep = steepen_path(&c, &flat, &q("1/3")).unwrap();
        assert_eq!(steep.beta(), &q("1/3"));
        assert!(check_feasible(&c, &steep).unwrap());
        assert!(steep.passes_through(&p("3", "1.5")));
        assert_eq!(steepen_path(&c, &flat, &Q::ZERO).unwrap(), flat);
        assert!(matches!(
            steepen_path(&c, &flat, &q("2")),
            Err(PathError::SlopeOutOfRange { .. })
        ));
        let (c, tent) = solve(&fixtures::tent());
        for b in ["1/2", "2/3", "1"] {
            let s = steepen_path(&c, &tent, &q(b)).unwrap();
            assert!(check_feasible(&c, &s).unwrap(), "beta {b}");
            assert!(path_metrics(&s).length_squared > path_metrics(&tent).length_squared);
        }
    }

    #[test]
    fn beta_path_validation() {
        assert_eq!(BetaPath::new(q("1"), vec![p("0", "0")]), Err(PathError::TooShort));
        assert!(matches!(
            BetaPath::new(q("1"), vec![p("0", "0"), p("1", "2")]),
            Err(PathError::WrongSlope { .. })
        ));
        assert_eq!(
            BetaPath::new(q("1"), vec![p("0", "0"), p("1", "1"), p("2", "2")]),
            Err(PathError::NotAlternating(0))
        );
        assert_eq!(
            BetaPath::new(q("1"), vec![p("0", "0"), p("0", "0")]),
            Err(PathError::NonMonotone(1))
        );
    }
}
