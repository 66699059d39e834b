//! The solve pipeline and its JSON record.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::CliError;
use crate::minlink::{build_min_link_path, path_metrics, BetaPath};
use crate::minslope::{solve, Method};
use crate::model::{build_corridor, parse_instance, Point};
use crate::num::Q;
use crate::oracle::{check_distance, check_feasible};

/// A coordinate pair, each an exact decimal or `p/q` string.
pub type Coord = [String; 2];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessRecord {
    pub lower: Coord,
    pub upper: Coord,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PathRecord {
    pub start: Coord,
    pub turns: Vec<Coord>,
    pub end: Coord,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolutionRecord {
    pub method: String,
    pub beta_star: String,
    pub beta_star_decimal: String,
    pub witness: Option<WitnessRecord>,
    pub path: PathRecord,
    pub links: usize,
    pub turns: usize,
    pub length_squared: String,
    pub length_decimal: String,
    pub instance_digest: String,
}

pub fn digest(bytes: &[u8]) -> String {
    let hash = Sha256::digest(bytes);
    let hex: String = hash.iter().map(|b| format!("{b:02x}")).collect();
    format!("sha256:{hex}")
}

fn coord(p: &Point) -> Coord {
    [p.t.to_exact_string(), p.y.to_exact_string()]
}

fn parse_q(field: &str, s: &str) -> Result<Q, CliError> {
    s.parse()
        .map_err(|e| CliError::input(format!("{field}: cannot parse {s:?}: {e}")))
}

fn parse_coord(field: &str, c: &Coord) -> Result<Point, CliError> {
    Ok(Point::new(parse_q(field, &c[0])?, parse_q(field, &c[1])?))
}

impl SolutionRecord {
    pub fn beta(&self) -> Result<Q, CliError> {
        parse_q("beta_star", &self.beta_star)
    }

    pub fn vertices(&self) -> Result<Vec<Point>, CliError> {
        let mut out = vec![parse_coord("path.start", &self.path.start)?];
        for c in &self.path.turns {
            out.push(parse_coord("path.turns", c)?);
        }
        out.push(parse_coord("path.end", &self.path.end)?);
        Ok(out)
    }

    pub fn witness_points(&self) -> Result<Option<(Point, Point)>, CliError> {
        self.witness
            .as_ref()
            .map(|w| {
                Ok((
                    parse_coord("witness.lower", &w.lower)?,
                    parse_coord("witness.upper", &w.upper)?,
                ))
            })
            .transpose()
    }

    /// The recorded path, checked for the ±beta shape.
    pub fn beta_path(&self) -> Result<BetaPath, CliError> {
        BetaPath::new(self.beta()?, self.vertices()?)
            .map_err(|e| CliError::input(format!("path: {e}")))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("record serializes");
        s.push('\n');
        s
    }
}

/// Solves the instance in `text` and self-checks the result.
pub fn run_solve(text: &str, method: Method) -> Result<SolutionRecord, CliError> {
    let instance = parse_instance(text).map_err(CliError::from_model)?;
    let corridor = build_corridor(&instance).map_err(CliError::from_model)?;
    let solution = solve(&corridor, method);
    let path = build_min_link_path(&corridor, &solution)
        .map_err(|e| CliError::Internal(format!("path construction failed: {e}")))?;

    let feasible = check_feasible(&corridor, &path).unwrap_or(false);
    let distance = check_distance(&instance, &path).unwrap_or(false);
    if !(feasible && distance) {
        return Err(CliError::Internal(format!(
            "self-check failed: corridor {feasible}, distance {distance}"
        )));
    }

    let metrics = path_metrics(&path);
    let beta = &solution.beta_star;
    Ok(SolutionRecord {
        method: method.as_str().to_string(),
        beta_star: beta.to_string(),
        beta_star_decimal: beta.to_decimal(12),
        witness: solution.witness.as_ref().map(|w| WitnessRecord {
            lower: coord(&w.lower.point()),
            upper: coord(&w.upper.point()),
        }),
        path: PathRecord {
            start: coord(path.start()),
            turns: path.turns().iter().map(coord).collect(),
            end: coord(path.end()),
        },
        links: metrics.links,
        turns: metrics.turns,
        length_squared: metrics.length_squared.to_string(),
        length_decimal: metrics.length_decimal(),
        instance_digest: digest(text.as_bytes()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::model::serialize_instance;

    fn solve_fixture(inst: crate::model::Instance) -> SolutionRecord {
        run_solve(&serialize_instance(&inst), Method::Linear).unwrap()
    }

    #[test]
    fn tent_record() {
        let r = solve_fixture(fixtures::tent());
        assert_eq!(r.beta_star, "1/3");
        assert_eq!(r.beta_star_decimal, "0.333333333333");
        assert_eq!(r.links, 2);
        assert_eq!(r.turns, 1);
        assert_eq!(r.length_squared, "40");
        assert_eq!(r.length_decimal, "6.324555320337");
        assert_eq!(r.path.start, ["0".to_string(), "1".to_string()]);
        assert!(r.instance_digest.starts_with("sha256:"));
        let json = r.to_json();
        let back: SolutionRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn flat_and_w_records() {
        let r = solve_fixture(fixtures::flat());
        assert_eq!((r.beta_star.as_str(), r.links), ("0", 1));
        assert_eq!(r.path.start[1], "1.5");
        assert_eq!(r.path.end[1], "1.5");
        assert!(r.witness.is_none());
        let r = solve_fixture(fixtures::w());
        assert_eq!(r.links, 4);
        assert_eq!(r.path.turns[0], ["4".to_string(), "7/3".to_string()]);
    }

    #[test]
    fn bad_input_is_an_input_error() {
        let err = run_solve("{\"alpha\":\"1\"}", Method::Linear).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        let err = run_solve(
            "{\"alpha\":\"1\",\"vertical_budget\":\"1\",\"turns\":[[\"0\",\"0\"],[\"1\",\"2\"]]}",
            Method::Linear,
        )
        .unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }
}
