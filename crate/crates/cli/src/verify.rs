//! The `verify-paper` battery: one command that reproduces the built-in
//! system's headline numbers end to end and reports a pass/fail table.

use tauberian_core::closure::{check_concat_closure, check_shift_closure, ClosureStatus};
use tauberian_core::systems::{sanity_process, system_by_name};
use tauberian_core::tauberian::{sweep, ScheduleKind, Verdict};
use tauberian_core::value::{value_discounted, value_time};
use tauberian_core::{ProcessDescriptor, State};

use crate::grid::preset;
use crate::logging;

#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

impl Check {
    fn number(name: impl Into<String>, expected: f64, actual: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            expected: format!("{expected} ± {tolerance:.0e}"),
            actual: format!("{actual:.12}"),
            pass: (actual - expected).abs() <= tolerance,
        }
    }

    fn exact(name: impl Into<String>, expected: f64, actual: f64) -> Self {
        Self {
            name: name.into(),
            expected: format!("{expected} exactly"),
            actual: format!("{actual}"),
            pass: actual == expected,
        }
    }

    fn status(name: impl Into<String>, expected: &str, actual: &str) -> Self {
        Self {
            name: name.into(),
            expected: expected.to_string(),
            actual: actual.to_string(),
            pass: expected == actual,
        }
    }
}

/// Runs the battery for `paper` or `sanity`. `tol` is the value-function
/// tolerance for value checks; sweep and closure settings come from the
/// system preset and the given seed/sample count.
pub fn run_battery(system_name: &str, tol: f64, seed: u64, n: usize) -> Option<Vec<Check>> {
    match system_name {
        "paper" => Some(paper_battery(tol, seed, n)),
        "sanity" => Some(sanity_battery(seed, n)),
        _ => None,
    }
}

fn paper_battery(tol: f64, seed: u64, n: usize) -> Vec<Check> {
    let system = system_by_name("paper").expect("built-in");
    let origin = State::xyz(0.0, 0.0, 0.0);
    let mut checks = Vec::new();

    logging::info("checking origin time values");
    for horizon in [0.5, 1.0, 10.0, 100.0, 1000.0] {
        let result = value_time(&system, &origin, horizon, tol).unwrap();
        checks.push(Check::number(
            format!("V[v_T](0,0,0), T={horizon}"),
            0.5,
            result.value,
            1e-6,
        ));
    }

    logging::info("checking origin discounted values");
    for lambda in [10.0, 1.0, 0.1, 0.01, 0.001] {
        let result = value_discounted(&system, &origin, lambda, tol).unwrap();
        checks.push(Check::number(
            format!("V[w_lambda](0,0,0), lambda={lambda}"),
            0.75,
            result.value,
            1e-6,
        ));
    }

    logging::info("checking minimizer locations");
    {
        let result = value_time(&system, &origin, 1.0, tol).unwrap();
        let s = result.minimizer.scalar();
        checks.push(Check {
            name: "time minimizer at T=1".into(),
            expected: "2 ± 0.1% (s* = 2/T)".into(),
            actual: format!("{s:.9}"),
            pass: (s - 2.0).abs() / 2.0 <= 1e-3,
        });
        let result = value_discounted(&system, &origin, 1.0, tol).unwrap();
        let s = result.minimizer.scalar();
        let expected = 1.0 / std::f64::consts::LN_2;
        checks.push(Check {
            name: "discount minimizer at lambda=1".into(),
            expected: "1.442695041 ± 0.1% (s* = lambda/ln 2)".into(),
            actual: format!("{s:.9}"),
            pass: (s - expected).abs() / expected <= 1e-3,
        });
    }

    logging::info("checking off-origin values");
    for state in [
        State::xyz(1.0, 1.0, 1.0),
        State::xyz(1.5, 0.0, 0.0),
        State::xyz(0.5, 3.0, 0.0),
    ] {
        let v = value_time(&system, &state, 1.0, tol).unwrap().value;
        let w = value_discounted(&system, &state, 1.0, tol).unwrap().value;
        checks.push(Check::exact(format!("V[v_1]({state})"), 1.0, v));
        checks.push(Check::exact(format!("V[w_1]({state})"), 1.0, w));
    }

    logging::info("running closure checks");
    let concat = check_concat_closure(&system, seed, n);
    checks.push(Check::status(
        format!("concatenation closure ({} samples)", concat.samples_checked),
        "pass",
        match concat.status {
            ClosureStatus::Pass => "pass",
            ClosureStatus::Fail => "fail",
        },
    ));
    let shift = check_shift_closure(&system, seed, n);
    let has_run_witness = shift
        .witnesses
        .iter()
        .any(|w| matches!(w.source, ProcessDescriptor::Run { .. }));
    checks.push(Check {
        name: format!("shift closure ({} samples)", shift.samples_checked),
        expected: "fail with a run witness".into(),
        actual: match (shift.status, has_run_witness) {
            (ClosureStatus::Fail, true) => "fail with a run witness".into(),
            (ClosureStatus::Fail, false) => "fail without a run witness".into(),
            (ClosureStatus::Pass, _) => "pass".into(),
        },
        pass: shift.status == ClosureStatus::Fail && has_run_witness,
    });

    logging::info("running the default sweep");
    let preset = preset("paper").expect("built-in preset");
    let report = sweep(
        &system,
        &preset.states,
        &preset
            .time_grid
            .schedule(ScheduleKind::Time)
            .expect("preset grid"),
        &preset
            .discount_grid
            .schedule(ScheduleKind::Discount)
            .expect("preset grid"),
        preset.tol,
    )
    .unwrap();
    checks.push(Check::status(
        "sweep verdict",
        "gap",
        crate::output::verdict_name(&report.verdict),
    ));
    checks.push(Check::number("sweep max gap", 0.25, report.max_gap(), 1e-6));
    checks.push(Check {
        name: "sweep uniformity".into(),
        expected: "residuals <= 1e-6".into(),
        actual: format!(
            "v={:.3e}, w={:.3e}",
            report.uniformity_v, report.uniformity_w
        ),
        pass: report.uniformity_v <= 1e-6 && report.uniformity_w <= 1e-6,
    });

    checks
}

fn sanity_battery(seed: u64, n: usize) -> Vec<Check> {
    let system = system_by_name("sanity").expect("built-in");
    let mut checks = Vec::new();

    logging::info("checking drift averages");
    let z0 = sanity_process(&State::scalar(0.0));
    let v = tauberian_core::averages::time_average(z0.trace(), 4.0)
        .unwrap()
        .value;
    checks.push(Check::exact("v_4(z_0)", 0.25, v));
    let w = tauberian_core::averages::discounted_average(z0.trace(), 1.0)
        .unwrap()
        .value;
    checks.push(Check::number(
        "w_1(z_0)",
        1.0 - (-1.0f64).exp(),
        w,
        1e-12,
    ));
    let v2 = value_time(&system, &State::scalar(2.0), 7.0, 1e-8)
        .unwrap()
        .value;
    checks.push(Check::exact("V[v_7](2)", 0.0, v2));

    logging::info("running closure checks");
    for (label, report) in [
        ("concatenation closure", check_concat_closure(&system, seed, n)),
        ("shift closure", check_shift_closure(&system, seed, n)),
    ] {
        checks.push(Check::status(
            format!("{label} ({} samples)", report.samples_checked),
            "pass",
            match report.status {
                ClosureStatus::Pass => "pass",
                ClosureStatus::Fail => "fail",
            },
        ));
    }

    logging::info("running the default sweep");
    let preset = preset("sanity").expect("built-in preset");
    let report = sweep(
        &system,
        &preset.states,
        &preset
            .time_grid
            .schedule(ScheduleKind::Time)
            .expect("preset grid"),
        &preset
            .discount_grid
            .schedule(ScheduleKind::Discount)
            .expect("preset grid"),
        preset.tol,
    )
    .unwrap();
    checks.push(Check::status(
        "sweep verdict",
        "coincide",
        crate::output::verdict_name(&report.verdict),
    ));
    let limit_bound = match &report.verdict {
        Verdict::Coincide { limits } => limits.iter().fold(0.0f64, |a, &b| a.max(b.abs())),
        _ => f64::INFINITY,
    };
    checks.push(Check {
        name: "shared limit".into(),
        expected: "0 ± 1e-3".into(),
        actual: format!("{limit_bound:.3e}"),
        pass: limit_bound <= 1e-3,
    });

    checks
}

/// Renders the table; returns true when every check passed.
pub fn render_table(checks: &[Check]) -> (String, bool) {
    let name_width = checks.iter().map(|c| c.name.len()).max().unwrap_or(0).max(5);
    let expected_width = checks
        .iter()
        .map(|c| c.expected.len())
        .max()
        .unwrap_or(0)
        .max(8);
    let actual_width = checks
        .iter()
        .map(|c| c.actual.len())
        .max()
        .unwrap_or(0)
        .max(6);
    let mut out = format!(
        "{:name_width$}  {:expected_width$}  {:actual_width$}  result\n",
        "check", "expected", "actual"
    );
    let mut all_pass = true;
    for check in checks {
        all_pass &= check.pass;
        out.push_str(&format!(
            "{:name_width$}  {:expected_width$}  {:actual_width$}  {}\n",
            check.name,
            check.expected,
            check.actual,
            if check.pass { "PASS" } else { "FAIL" }
        ));
    }
    let passed = checks.iter().filter(|c| c.pass).count();
    out.push_str(&format!(
        "\n{}: {passed}/{} checks passed\n",
        if all_pass { "PASS" } else { "FAIL" },
        checks.len()
    ));
    (out, all_pass)
}
