//! Independent re-check of a solution record.

use serde::Serialize;

use super::solve::{digest, SolutionRecord};
use super::CliError;
use crate::minlink::{path_metrics, segment_supports};
use crate::model::{build_corridor, parse_instance, Corridor, Point};
use crate::predicates::PairSlope;
use crate::num::Q;
use crate::oracle::{check_distance, check_feasible, min_link_oracle, min_slope_oracle};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub pass: bool,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn failed(&self) -> Vec<&'static str> {
        self.checks.iter().filter(|c| !c.pass).map(|c| c.name).collect()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

struct Checks(Vec<Check>);

impl Checks {
    fn add(&mut self, name: &'static str, pass: bool, detail: impl Into<String>) {
        self.0.push(Check {
            name,
            pass,
            detail: detail.into(),
        });
    }
}

/// Parses both files and checks the record against the instance.
///
/// Parse failures are input errors; every other problem is a failed check.
pub fn run_verify(instance_text: &str, solution_text: &str, oracle: bool) -> Result<VerifyReport, CliError> {
    let instance = parse_instance(instance_text).map_err(CliError::from_model)?;
    let corridor = build_corridor(&instance).map_err(CliError::from_model)?;
    let record: SolutionRecord = serde_json::from_str(solution_text)
        .map_err(|e| CliError::input(format!("solution: {e}")))?;
    let beta = record.beta()?;
    // Unparsable coordinates are input errors, not failed checks.
    record.vertices()?;
    let witness = record.witness_points()?;
    let witness_pair = witness.as_ref().and_then(|(l, u)| find_pair(&corridor, l, u));

    let mut checks = Checks(Vec::new());
    let expected = digest(instance_text.as_bytes());
    checks.add(
        "digest",
        record.instance_digest == expected,
        format!("record {} vs file {expected}", record.instance_digest),
    );

    if witness.is_some() {
        checks.add(
            "witness",
            witness_pair.as_ref().is_some_and(|w| w.slope == beta),
            "witness is a reflex pair of slope beta_star",
        );
    }

    let path = match record.beta_path() {
        Ok(p) => {
            checks.add("shape", true, format!("{} links of slope +/-{beta}", p.links()));
            p
        }
        Err(e) => {
            checks.add("shape", false, e.to_string());
            return Ok(finish(checks));
        }
    };

    match check_feasible(&corridor, &path) {
        Ok(ok) => checks.add("feasible", ok, if ok { "inside corridor" } else { "infeasible path" }),
        Err(e) => checks.add("feasible", false, e.to_string()),
    }
    match check_distance(&instance, &path) {
        Ok(ok) => checks.add("distance", ok, if ok { "within budget" } else { "tether overstretched" }),
        Err(e) => checks.add("distance", false, e.to_string()),
    }

    let m = path_metrics(&path);
    let metrics_ok = record.links == m.links
        && record.turns == m.turns
        && record.length_squared.parse::<Q>().ok() == Some(m.length_squared.clone())
        && record.length_decimal == m.length_decimal()
        && record.beta_star_decimal == beta.to_decimal(12);
    checks.add(
        "metrics",
        metrics_ok,
        format!(
            "expected links {}, turns {}, length^2 {}; record has {}, {}, {}",
            m.links, m.turns, m.length_squared, record.links, record.turns, record.length_squared
        ),
    );

    let supports = segment_supports(&corridor, &path, witness_pair.as_ref());
    let unsupported: Vec<usize> = (0..supports.len()).filter(|&i| !supports[i]).collect();
    checks.add(
        "support",
        unsupported.is_empty(),
        format!("unsupported segments: {unsupported:?}"),
    );

    let anchors_ok = match (&witness, beta.is_positive()) {
        (Some((l, u)), true) => path.passes_through(l) && path.passes_through(u),
        (None, false) => true,
        _ => false,
    };
    checks.add("anchors", anchors_ok, "path passes through the witness pair");

    if oracle {
        let best = min_slope_oracle(&corridor);
        checks.add(
            "oracle_beta",
            best == beta,
            format!("oracle {best}, record {beta}"),
        );
        match min_link_oracle(&corridor, &beta) {
            Ok(k) => checks.add(
                "oracle_links",
                k == path.links(),
                format!("oracle {k}, path {}", path.links()),
            ),
            Err(e) => checks.add("oracle_links", false, e.to_string()),
        }
    }
    Ok(finish(checks))
}

fn find_pair(corridor: &Corridor, l: &Point, u: &Point) -> Option<PairSlope> {
    let lower = corridor.lower_reflex.iter().find(|r| r.point() == *l)?;
    let upper = corridor.upper_reflex.iter().find(|r| r.point() == *u)?;
    PairSlope::new(lower.clone(), upper.clone()).ok()
}

fn finish(checks: Checks) -> VerifyReport {
    VerifyReport {
        pass: checks.0.iter().all(|c| c.pass),
        checks: checks.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::solve::run_solve;
    use crate::fixtures;
    use crate::minslope::Method;
    use crate::model::serialize_instance;

    fn pair(inst: crate::model::Instance) -> (String, SolutionRecord) {
        let text = serialize_instance(&inst);
        let rec = run_solve(&text, Method::Linear).unwrap();
        (text, rec)
    }

    #[test]
    fn own_solution_passes() {
        for (name, inst) in fixtures::all() {
            let (text, rec) = pair(inst);
            let report = run_verify(&text, &rec.to_json(), true).unwrap();
            assert!(report.pass, "{name}: {:?}", report.failed());
        }
    }

    #[test]
    fn tampered_links_fail_metrics() {
        let (text, mut rec) = pair(fixtures::tent());
        rec.links = 1;
        let report = run_verify(&text, &rec.to_json(), false).unwrap();
        assert_eq!(report.failed(), vec!["metrics"]);
    }

    #[test]
    fn tampered_path_fails_feasibility() {
        let (text, mut rec) = pair(fixtures::w());
        // Lift the whole path by 1.
        let lift = |c: &mut [String; 2]| {
            let y: Q = c[1].parse().unwrap();
            c[1] = (y + Q::ONE).to_exact_string();
        };
        lift(&mut rec.path.start);
        rec.path.turns.iter_mut().for_each(lift);
        lift(&mut rec.path.end);
        let report = run_verify(&text, &rec.to_json(), false).unwrap();
        let failed = report.failed();
        assert!(failed.contains(&"feasible"));
        assert!(failed.contains(&"distance"));
    }

    #[test]
    fn other_instance_fails_digest() {
        let (_, rec) = pair(fixtures::tent());
        let other = serialize_instance(&fixtures::flat());
        let report = run_verify(&other, &rec.to_json(), false).unwrap();
        assert!(report.failed().contains(&"digest"));
    }

    #[test]
    fn garbage_is_an_input_error() {
        let (text, _) = pair(fixtures::tent());
        let err = run_verify(&text, "not json", false).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }
}
