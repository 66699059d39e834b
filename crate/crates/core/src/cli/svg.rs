//! Static SVG drawing of a corridor, its reflex points and MCCs, and a path.

use std::fmt::Write;

use crate::minlink::BetaPath;
use crate::minslope::{build_mccs, Direction};
use crate::model::{Corridor, Point};
use crate::num::Q;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 400.0;
const MARGIN: f64 = 20.0;

struct Frame {
    t0: f64,
    sx: f64,
    y1: f64,
    sy: f64,
}

impl Frame {
    fn new(corridor: &Corridor) -> Self {
        let t0 = corridor.start_time().to_f64();
        let t1 = corridor.end_time().to_f64();
        let lo = corridor.lower.iter().map(|p| p.y.to_f64()).fold(f64::INFINITY, f64::min);
        let hi = corridor.upper.iter().map(|p| p.y.to_f64()).fold(f64::NEG_INFINITY, f64::max);
        Frame {
            t0,
            sx: (WIDTH - 2.0 * MARGIN) / (t1 - t0),
            y1: hi,
            sy: (HEIGHT - 2.0 * MARGIN) / (hi - lo),
        }
    }

    fn xy(&self, t: &Q, y: &Q) -> String {
        let x = MARGIN + (t.to_f64() - self.t0) * self.sx;
        let y = MARGIN + (self.y1 - y.to_f64()) * self.sy;
        format!("{},{}", num(x), num(y))
    }

    fn points<'a>(&self, pts: impl Iterator<Item = &'a Point>) -> String {
        pts.map(|p| self.xy(&p.t, &p.y)).collect::<Vec<_>>().join(" ")
    }
}

/// Three decimals, never `-0.000`.
fn num(v: f64) -> String {
    let s = format!("{v:.3}");
    if s == "-0.000" {
        "0.000".into()
    } else {
        s
    }
}

pub fn render_svg(corridor: &Corridor, path: Option<&BetaPath>) -> String {
    let f = Frame::new(corridor);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = WIDTH,
        h = HEIGHT
    );
    out.push_str(
        "<style>.corridor{fill:#e8eef7;stroke:none}.lower-chain,.upper-chain{fill:none;stroke:#335;stroke-width:1.5}\
.reflex-lower{fill:#c33}.reflex-upper{fill:#33c}.mcc{fill:none;stroke:#c80;stroke-width:1;stroke-dasharray:4 2}\
.path{fill:none;stroke:#070;stroke-width:2}</style>\n",
    );

    let band = f.points(corridor.lower.iter().chain(corridor.upper.iter().rev()));
    let _ = writeln!(out, r#"<polygon class="corridor" points="{band}"/>"#);
    let _ = writeln!(
        out,
        r#"<polyline class="lower-chain" points="{}"/>"#,
        f.points(corridor.lower.iter())
    );
    let _ = writeln!(
        out,
        r#"<polyline class="upper-chain" points="{}"/>"#,
        f.points(corridor.upper.iter())
    );

    for direction in [Direction::Forward, Direction::Backward] {
        for mcc in build_mccs(corridor, direction) {
            let pts: Vec<Point> = mcc.vertices.iter().map(|r| r.point()).collect();
            let _ = writeln!(out, r#"<polyline class="mcc" points="{}"/>"#, f.points(pts.iter()));
        }
    }

    for (class, list) in [
        ("reflex-lower", &corridor.lower_reflex),
        ("reflex-upper", &corridor.upper_reflex),
    ] {
        for r in list {
            let xy = f.xy(&r.t, &r.y);
            let (cx, cy) = xy.split_once(',').expect("x,y");
            let _ = writeln!(out, r#"<circle class="{class}" cx="{cx}" cy="{cy}" r="3"/>"#);
        }
    }

    if let Some(p) = path {
        let _ = writeln!(
            out,
            r#"<polyline class="path" points="{}"/>"#,
            f.points(p.vertices().iter())
        );
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::minlink::build_min_link_path;
    use crate::minslope::min_slope_linear;
    use crate::model::build_corridor;

    fn count(svg: &str, class: &str) -> usize {
        svg.matches(&format!("class=\"{class}\"")).count()
    }

    #[test]
    fn tent_with_path() {
        let c = build_corridor(&fixtures::tent()).unwrap();
        let p = build_min_link_path(&c, &min_slope_linear(&c)).unwrap();
        let svg = render_svg(&c, Some(&p));
        assert_eq!(count(&svg, "reflex-lower"), 1);
        assert_eq!(count(&svg, "reflex-upper"), 2);
        assert_eq!(count(&svg, "path"), 1);
        let line = svg.lines().find(|l| l.contains("class=\"path\"")).unwrap();
        let pts = line.split("points=\"").nth(1).unwrap().trim_end_matches("\"/>");
        assert_eq!(pts.split(' ').count(), 3);
        assert_eq!(svg, render_svg(&c, Some(&p)));
    }

    #[test]
    fn flat_without_path() {
        let c = build_corridor(&fixtures::flat()).unwrap();
        let svg = render_svg(&c, None);
        assert_eq!(count(&svg, "corridor"), 1);
        assert_eq!(count(&svg, "path"), 0);
        assert!(svg.starts_with("<svg") && svg.ends_with("</svg>\n"));
    }
}
