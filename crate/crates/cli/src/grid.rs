//! Grid specifications and per-system sweep presets.

use tauberian_core::tauberian::{Schedule, ScheduleKind};
use tauberian_core::State;

/// A `start:ratio:count` geometric grid. Time grids multiply by `ratio`,
/// discount grids divide by it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub start: f64,
    pub ratio: f64,
    pub count: usize,
}

impl GridSpec {
    pub fn parse(text: &str) -> Result<Self, String> {
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("grid `{text}` is not of the form start:ratio:count"));
        }
        let start: f64 = parts[0]
            .parse()
            .map_err(|_| format!("grid start `{}` is not a number", parts[0]))?;
        let ratio: f64 = parts[1]
            .parse()
            .map_err(|_| format!("grid ratio `{}` is not a number", parts[1]))?;
        let count: usize = parts[2]
            .parse()
            .map_err(|_| format!("grid count `{}` is not an integer", parts[2]))?;
        Ok(Self {
            start,
            ratio,
            count,
        })
    }

    pub fn schedule(&self, kind: ScheduleKind) -> Result<Schedule, String> {
        Schedule::geometric(kind, self.start, self.ratio, self.count)
            .map_err(|err| err.to_string())
    }
}

/// Sweep defaults for one built-in system.
pub struct SweepPreset {
    pub states: Vec<State>,
    pub time_grid: GridSpec,
    pub discount_grid: GridSpec,
    pub tol: f64,
}

/// Defaults per system. The `paper` grids settle both (constant) limits
/// immediately and the states span all three cost regimes; the `sanity`
/// grids run to T = 10^4 and λ = 10^-4 with a looser tolerance because its
/// curves decay like 1/T and λ rather than stabilizing exactly.
pub fn preset(system: &str) -> Option<SweepPreset> {
    match system {
        "paper" => Some(SweepPreset {
            states: vec![
                State::xyz(0.0, 0.0, 0.0),
                State::xyz(1.0, 1.0, 1.0),
                State::xyz(1.5, 0.0, 0.0),
                State::xyz(0.5, 3.0, 0.0),
            ],
            time_grid: GridSpec {
                start: 1.0,
                ratio: 10.0,
                count: 4,
            },
            discount_grid: GridSpec {
                start: 1.0,
                ratio: 10.0,
                count: 4,
            },
            tol: 1e-8,
        }),
        "sanity" => Some(SweepPreset {
            states: vec![State::scalar(0.0), State::scalar(0.5), State::scalar(2.0)],
            time_grid: GridSpec {
                start: 1250.0,
                ratio: 2.0,
                count: 4,
            },
            discount_grid: GridSpec {
                start: 8e-4,
                ratio: 2.0,
                count: 4,
            },
            tol: 1e-4,
        }),
        _ => None,
    }
}

/// Parses a comma-separated state, `x,y,r` style.
pub fn parse_state(text: &str, expected_dim: usize) -> Result<State, String> {
    let mut coords = Vec::new();
    for part in text.split(',') {
        let c: f64 = part
            .trim()
            .parse()
            .map_err(|_| format!("state coordinate `{part}` is not a number"))?;
        coords.push(c);
    }
    if coords.len() != expected_dim {
        return Err(format!(
            "state `{text}` has {} coordinates, the system needs {expected_dim}",
            coords.len()
        ));
    }
    State::new(coords).map_err(|err| err.to_string())
}
