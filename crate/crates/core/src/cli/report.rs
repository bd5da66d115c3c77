//! Output records and their CSV/JSON rendering.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::moments::{self, MomentSet, PhaseSquare, UncertaintyReport};
use crate::states::{tau_from_alpha, AlphaState, ThermalSpec};

/// Formats with 17 significant digits.
pub fn sig17(x: f64) -> String {
    format!("{x:.16e}")
}

fn csv_line(values: &[f64]) -> String {
    let cells: Vec<String> = values.iter().map(|&v| sig17(v)).collect();
    cells.join(",")
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("reports serialize");
    text.push('\n');
    text
}

pub const SWEEP_HEADER: &str =
    "T,alpha,tau,var_q,var_p,cov_pq,correlator,sur_lhs,sur_rhs,planck_energy,effective_action,square_area";

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    #[serde(rename = "T")]
    pub temperature: f64,
    pub alpha: f64,
    pub tau: f64,
    pub var_q: f64,
    pub var_p: f64,
    pub cov_pq: f64,
    pub correlator: f64,
    pub sur_lhs: f64,
    pub sur_rhs: f64,
    pub planck_energy: f64,
    pub effective_action: f64,
    pub square_area: f64,
}

impl SweepRow {
    /// Row for `spec`; `T = 0` goes through the `alpha = 0` closed forms.
    pub fn at(spec: &ThermalSpec) -> Result<Self> {
        let state = if spec.is_cold() {
            AlphaState::cold_vacuum(spec.omega(), spec.constants())?
        } else {
            AlphaState::from_thermal(spec)?
        };
        let m = moments::moment_set(&state);
        let sur = moments::sur_report(&state);
        Ok(Self {
            temperature: spec.temperature(),
            alpha: state.alpha(),
            tau: tau_from_alpha(state.alpha())?,
            var_q: m.var_q,
            var_p: m.var_p,
            cov_pq: m.cov_pq,
            correlator: m.correlator_mag,
            sur_lhs: sur.sur_lhs,
            sur_rhs: sur.sur_rhs,
            planck_energy: moments::planck_energy(spec),
            effective_action: sur.effective_action,
            square_area: moments::phase_plane_square(spec).area,
        })
    }

    fn values(&self) -> [f64; 12] {
        [
            self.temperature,
            self.alpha,
            self.tau,
            self.var_q,
            self.var_p,
            self.cov_pq,
            self.correlator,
            self.sur_lhs,
            self.sur_rhs,
            self.planck_energy,
            self.effective_action,
            self.square_area,
        ]
    }
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from(SWEEP_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&csv_line(&row.values()));
        out.push('\n');
    }
    out
}

pub const PLOT_HEADER: &str = "T,side,area,q1,p1,q2,p2,q3,p3,q4,p4";

/// Centered uncertainty square; corners run counter-clockwise from `(+, +)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlotRow {
    #[serde(rename = "T")]
    pub temperature: f64,
    pub side: f64,
    pub area: f64,
    pub corners: [[f64; 2]; 4],
}

impl PlotRow {
    pub fn at(spec: &ThermalSpec) -> Self {
        let PhaseSquare { side_q, area, .. } = moments::phase_plane_square(spec);
        let h = 0.5 * side_q;
        Self {
            temperature: spec.temperature(),
            side: side_q,
            area,
            corners: [[h, h], [-h, h], [-h, -h], [h, -h]],
        }
    }
}

pub fn plot_csv(rows: &[PlotRow]) -> String {
    let mut out = String::from(PLOT_HEADER);
    out.push('\n');
    for row in rows {
        let mut values = vec![row.temperature, row.side, row.area];
        values.extend(row.corners.iter().flatten());
        out.push_str(&csv_line(&values));
        out.push('\n');
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Parameters {
    pub alpha: f64,
    pub tau: f64,
    pub temperature: f64,
    pub omega: f64,
    pub gamma: f64,
    pub hbar: f64,
    pub k_b: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThermalSummary {
    pub planck_energy: f64,
    pub mean_kinetic: f64,
    pub mean_potential: f64,
    pub square: PhaseSquare,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StateReport {
    pub parameters: Parameters,
    pub moments: MomentSet,
    pub uncertainty: UncertaintyReport,
    pub thermal: ThermalSummary,
}

impl StateReport {
    pub fn csv(&self) -> String {
        let p = &self.parameters;
        let m = &self.moments;
        let u = &self.uncertainty;
        let t = &self.thermal;
        let rows: [(&str, f64); 25] = [
            ("alpha", p.alpha),
            ("tau", p.tau),
            ("T", p.temperature),
            ("omega", p.omega),
            ("gamma", p.gamma),
            ("hbar", p.hbar),
            ("k_b", p.k_b),
            ("var_q", m.var_q),
            ("var_p", m.var_p),
            ("cov_pq", m.cov_pq),
            ("correlator", m.correlator_mag),
            ("uncertainty_product", m.uncertainty_product),
            ("sur_lhs", u.sur_lhs),
            ("sur_rhs", u.sur_rhs),
            ("saturation_defect", u.saturation_defect),
            ("heisenberg_bound", u.heisenberg_bound),
            ("effective_action", u.effective_action),
            ("planck_energy", t.planck_energy),
            ("mean_kinetic", t.mean_kinetic),
            ("mean_potential", t.mean_potential),
            ("square_side_q", t.square.side_q),
            ("square_side_p", t.square.side_p),
            ("square_area", t.square.area),
            ("mass", 1.0),
            ("phi", std::f64::consts::FRAC_PI_4),
        ];
        let mut out = String::from("quantity,value\n");
        for (name, value) in rows {
            out.push_str(name);
            out.push(',');
            out.push_str(&sig17(value));
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub check: String,
    pub worst_error: f64,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub checks: Vec<CheckResult>,
    pub passed: bool,
}

impl VerifyReport {
    pub fn csv(&self) -> String {
        let mut out = String::from("check,worst_error,tolerance,status\n");
        for c in &self.checks {
            out.push_str(&format!(
                "{},{},{},{}\n",
                c.check,
                sig17(c.worst_error),
                sig17(c.tolerance),
                if c.passed { "pass" } else { "FAIL" }
            ));
        }
        out
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }
}
