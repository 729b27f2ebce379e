//! Machine-readable output: CSV rows, JSON reports, and the number
//! formatting they share.

use serde::Serialize;
use tauberian_core::closure::{ClosureProperty, ClosureReport, ClosureStatus};
use tauberian_core::tauberian::{ScheduleKind, TauberianReport, Verdict};
use tauberian_core::value::ValueResult;
use tauberian_core::State;

/// 17 significant digits, enough for an exact `f64` round trip.
pub fn sig17(x: f64) -> String {
    format!("{x:.16e}")
}

/// Minimal RFC-4180 quoting: fields with commas, quotes, or newlines are
/// wrapped and embedded quotes doubled.
pub fn csv_field(text: &str) -> String {
    if text.contains(',') || text.contains('"') || text.contains('\n') {
        format!("\"{}\"", text.replace('"', "\"\""))
    } else {
        text.to_string()
    }
}

fn state_plain(state: &State) -> String {
    state
        .coords()
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// CSV of a sweep: one row per (state, schedule point), with the per-state
/// residual of that curve repeated on each row.
pub fn sweep_csv(report: &TauberianReport) -> String {
    let mut out = String::from("state,kind,horizon,value,residual\n");
    for (i, state) in report.states.iter().enumerate() {
        let state_field = csv_field(&state_plain(state));
        for (j, &point) in report.time_schedule.points().iter().enumerate() {
            out.push_str(&format!(
                "{state_field},time,{point},{},{}\n",
                sig17(report.v_values[i][j]),
                sig17(report.v_residuals[i]),
            ));
        }
        for (j, &point) in report.discount_schedule.points().iter().enumerate() {
            out.push_str(&format!(
                "{state_field},discount,{point},{},{}\n",
                sig17(report.w_values[i][j]),
                sig17(report.w_residuals[i]),
            ));
        }
    }
    out
}

#[derive(Debug, Serialize)]
pub struct SweepStateJson {
    pub state: Vec<f64>,
    pub v_limit: f64,
    pub w_limit: f64,
    pub gap: f64,
    pub v_residual: f64,
    pub w_residual: f64,
}

/// The sweep summary: scalar limits are reported at the state with the
/// largest disagreement, the full profiles in `per_state`.
#[derive(Debug, Serialize)]
pub struct SweepSummaryJson {
    pub system: String,
    pub verdict: String,
    pub max_gap: f64,
    pub v_limit: f64,
    pub w_limit: f64,
    pub uniformity_v: f64,
    pub uniformity_w: f64,
    pub tol: f64,
    pub per_state: Vec<SweepStateJson>,
}

#[derive(Debug, Serialize)]
pub struct SweepRowJson {
    pub state: Vec<f64>,
    pub kind: String,
    pub horizon: f64,
    pub value: f64,
    pub residual: f64,
}

#[derive(Debug, Serialize)]
pub struct SweepJson {
    pub summary: SweepSummaryJson,
    pub rows: Vec<SweepRowJson>,
}

pub fn verdict_name(verdict: &Verdict) -> &'static str {
    match verdict {
        Verdict::Coincide { .. } => "coincide",
        Verdict::Gap { .. } => "gap",
        Verdict::Inconclusive => "inconclusive",
    }
}

pub fn sweep_summary(system: &str, tol: f64, report: &TauberianReport) -> SweepSummaryJson {
    let mut argmax = 0usize;
    let mut max_gap = -1.0f64;
    for (i, (v, w)) in report.v_limits.iter().zip(&report.w_limits).enumerate() {
        let gap = (v - w).abs();
        if gap > max_gap {
            max_gap = gap;
            argmax = i;
        }
    }
    SweepSummaryJson {
        system: system.to_string(),
        verdict: verdict_name(&report.verdict).to_string(),
        max_gap: report.max_gap(),
        v_limit: report.v_limits[argmax],
        w_limit: report.w_limits[argmax],
        uniformity_v: report.uniformity_v,
        uniformity_w: report.uniformity_w,
        tol,
        per_state: report
            .states
            .iter()
            .enumerate()
            .map(|(i, state)| SweepStateJson {
                state: state.coords().to_vec(),
                v_limit: report.v_limits[i],
                w_limit: report.w_limits[i],
                gap: (report.v_limits[i] - report.w_limits[i]).abs(),
                v_residual: report.v_residuals[i],
                w_residual: report.w_residuals[i],
            })
            .collect(),
    }
}

pub fn sweep_rows(report: &TauberianReport) -> Vec<SweepRowJson> {
    let mut rows = Vec::new();
    for (i, state) in report.states.iter().enumerate() {
        for (j, &point) in report.time_schedule.points().iter().enumerate() {
            rows.push(SweepRowJson {
                state: state.coords().to_vec(),
                kind: schedule_kind_name(ScheduleKind::Time).to_string(),
                horizon: point,
                value: report.v_values[i][j],
                residual: report.v_residuals[i],
            });
        }
        for (j, &point) in report.discount_schedule.points().iter().enumerate() {
            rows.push(SweepRowJson {
                state: state.coords().to_vec(),
                kind: schedule_kind_name(ScheduleKind::Discount).to_string(),
                horizon: point,
                value: report.w_values[i][j],
                residual: report.w_residuals[i],
            });
        }
    }
    rows
}

fn schedule_kind_name(kind: ScheduleKind) -> &'static str {
    match kind {
        ScheduleKind::Time => "time",
        ScheduleKind::Discount => "discount",
    }
}

/// Human-readable verdict line printed at the end of a sweep.
pub fn verdict_line(report: &TauberianReport) -> String {
    match &report.verdict {
        Verdict::Coincide { .. } => format!(
            "verdict: coincide (uniformity_v={:.3e}, uniformity_w={:.3e})",
            report.uniformity_v, report.uniformity_w
        ),
        Verdict::Gap { max_gap, .. } => format!("verdict: gap (max_gap={max_gap})"),
        Verdict::Inconclusive => format!(
            "verdict: inconclusive (uniformity_v={:.3e}, uniformity_w={:.3e})",
            report.uniformity_v, report.uniformity_w
        ),
    }
}

#[derive(Debug, Serialize)]
pub struct ValueJson {
    pub system: String,
    pub state: Vec<f64>,
    pub kind: String,
    pub horizon: f64,
    pub value: f64,
    pub minimizer: Vec<f64>,
    pub family: String,
    pub evaluations: usize,
    pub achieved_tol: f64,
}

pub fn value_json(
    system: &str,
    state: &State,
    kind: ScheduleKind,
    horizon: f64,
    result: &ValueResult,
) -> ValueJson {
    ValueJson {
        system: system.to_string(),
        state: state.coords().to_vec(),
        kind: schedule_kind_name(kind).to_string(),
        horizon,
        value: result.value,
        minimizer: result.minimizer.components(),
        family: result.family_label.clone(),
        evaluations: result.evaluations,
        achieved_tol: result.achieved_tol,
    }
}

pub fn value_text(result: &ValueResult) -> String {
    format!(
        "value: {}\nminimizer: {}\nfamily: {}\nevaluations: {}\nachieved_tol: {:.3e}\n",
        sig17(result.value),
        result.minimizer,
        result.family_label,
        result.evaluations,
        result.achieved_tol,
    )
}

#[derive(Debug, Serialize)]
pub struct WitnessJson {
    pub source: String,
    pub partner: Option<String>,
    pub time: f64,
    pub outcome: Option<String>,
    pub explanation: String,
}

#[derive(Debug, Serialize)]
pub struct ClosureReportJson {
    pub property: String,
    pub status: String,
    pub samples_checked: usize,
    pub witnesses: Vec<WitnessJson>,
}

#[derive(Debug, Serialize)]
pub struct ClosureJson {
    pub system: String,
    pub seed: u64,
    pub n: usize,
    pub concatenation: ClosureReportJson,
    pub shift: ClosureReportJson,
}

pub fn closure_report_json(report: &ClosureReport) -> ClosureReportJson {
    ClosureReportJson {
        property: match report.property {
            ClosureProperty::Concatenation => "concatenation".to_string(),
            ClosureProperty::Shift => "shift".to_string(),
        },
        status: match report.status {
            ClosureStatus::Pass => "pass".to_string(),
            ClosureStatus::Fail => "fail".to_string(),
        },
        samples_checked: report.samples_checked,
        witnesses: report
            .witnesses
            .iter()
            .map(|w| WitnessJson {
                source: w.source.to_string(),
                partner: w.partner.as_ref().map(|d| d.to_string()),
                time: w.time,
                outcome: w.outcome.as_ref().map(|d| d.to_string()),
                explanation: w.explanation.clone(),
            })
            .collect(),
    }
}

pub fn closure_text(report: &ClosureReport) -> String {
    let property = match report.property {
        ClosureProperty::Concatenation => "concatenation",
        ClosureProperty::Shift => "shift",
    };
    let status = match report.status {
        ClosureStatus::Pass => "pass",
        ClosureStatus::Fail => "fail",
    };
    let mut out = format!(
        "{property}: {status} ({} samples checked)\n",
        report.samples_checked
    );
    for witness in &report.witnesses {
        out.push_str(&format!("  witness: {}\n", witness.explanation));
    }
    out
}
