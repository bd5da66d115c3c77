//! Acceptance criteria. Runs as a plain binary and prints one line per
//! criterion; exits non-zero if any criterion fails.

use std::process::{Command, ExitCode};

use ccs::moments;
use ccs::oracle::{self, annihilation_residual, ode_residual, GridWavefunction, QuadratureConfig};
use ccs::states::{
    bogoliubov_uv, temperature_from_alpha, AlphaState, BogoliubovState,
    Constants, GaussianProfile, ThermalSpec, Wavefunction,
};

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect()
}

fn logspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    linspace(lo.log10(), hi.log10(), n).into_iter().map(|e| 10f64.powf(e)).collect()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

/// Tracks the worst observed value of a metric against its bound.
struct Worst {
    label: &'static str,
    value: f64,
    bound: f64,
    above: bool,
}

impl Worst {
    fn below(label: &'static str, bound: f64) -> Self {
        Self { label, value: 0.0, bound, above: false }
    }

    fn above(label: &'static str, bound: f64) -> Self {
        Self { label, value: f64::INFINITY, bound, above: true }
    }

    fn push(&mut self, x: f64) {
        self.value = if self.above { self.value.min(x) } else { self.value.max(x) };
    }

    fn ok(&self) -> bool {
        if self.above {
            self.value > self.bound
        } else {
            self.value < self.bound
        }
    }

    fn describe(&self) -> String {
        let rel = if self.above { ">" } else { "<" };
        format!("{} {:.3e} {rel} {:.0e}", self.label, self.value, self.bound)
    }
}

type Outcome = Result<Vec<Worst>, String>;

fn units() -> Constants {
    Constants::default()
}

fn sur_saturation() -> Outcome {
    let cfg = QuadratureConfig::default();
    let mut closed = Worst::below("closed-form defect", 1e-14);
    let mut quad = Worst::below("quadrature defect", 1e-6);
    for alpha in linspace(0.0, 1.45, 100) {
        let s = AlphaState::new(alpha, 1.0, units()).map_err(|e| e.to_string())?;
        let r = moments::sur_report(&s);
        closed.push(((r.sur_lhs - r.sur_rhs) / r.sur_rhs).abs());
        let vq = oracle::quad_variance_q(&s, &cfg).map_err(|e| e.to_string())?;
        let vp = oracle::quad_variance_p(&s, &cfg).map_err(|e| e.to_string())?;
        let c = oracle::quad_correlator(&s, &cfg).map_err(|e| e.to_string())?.norm();
        quad.push(rel((vq * vp).sqrt(), c));
    }
    Ok(vec![closed, quad])
}

fn heisenberg_limit() -> Outcome {
    let cfg = QuadratureConfig::default();
    let mut closed = Worst::below("closed-form |side - hbar/2|", 1e-12);
    let mut quad = Worst::below("quadrature |side - hbar/2|", 1e-12);
    for hbar in [0.5, 1.0, 2.0] {
        let c = Constants::new(hbar, 1.0).map_err(|e| e.to_string())?;
        let s = AlphaState::cold_vacuum(1.0, c).map_err(|e| e.to_string())?;
        let r = moments::sur_report(&s);
        closed.push((r.sur_lhs - 0.5 * hbar).abs().max((r.sur_rhs - 0.5 * hbar).abs()));
        let vq = oracle::quad_variance_q(&s, &cfg).map_err(|e| e.to_string())?;
        let vp = oracle::quad_variance_p(&s, &cfg).map_err(|e| e.to_string())?;
        let corr = oracle::quad_correlator(&s, &cfg).map_err(|e| e.to_string())?.norm();
        quad.push(((vq * vp).sqrt() - 0.5 * hbar).abs().max((corr - 0.5 * hbar).abs()));
    }
    Ok(vec![closed, quad])
}

fn oracle_agreement() -> Outcome {
    let cfg = QuadratureConfig::default();
    let mut worst = Worst::below("max relative error", 1e-8);
    for i in 0..=14 {
        let alpha = 0.1 * i as f64;
        for gamma in [0.5, 1.0, 2.0] {
            let s = AlphaState::new(alpha, gamma, units()).map_err(|e| e.to_string())?;
            let vq = oracle::quad_variance_q(&s, &cfg).map_err(|e| e.to_string())?;
            let vp = oracle::quad_variance_p(&s, &cfg).map_err(|e| e.to_string())?;
            let c = oracle::quad_correlator(&s, &cfg).map_err(|e| e.to_string())?.norm();
            worst.push(rel(vq, moments::variance_q(&s)));
            worst.push(rel(vp, moments::variance_p(&s)));
            worst.push(rel(c, moments::correlator_magnitude(&s)));
        }
    }
    Ok(vec![worst])
}

fn parametrization_equivalence() -> Outcome {
    let mut modulus = Worst::below("| |psi_a| - |psi_tau| |", 1e-10);
    let mut phase = Worst::below("| |Im exp_a| - |Im exp_tau| |", 1e-10);
    for alpha in linspace(0.0, 1.45, 20) {
        let s = AlphaState::new(alpha, 1.0, units()).map_err(|e| e.to_string())?;
        let b = s.to_bogoliubov(1.0).map_err(|e| e.to_string())?;
        let (pa, pb) = (s.profile(), b.profile());
        let sigma = moments::variance_q(&s).sqrt();
        for q in linspace(-8.0 * sigma, 8.0 * sigma, 1000) {
            modulus.push((pa.amplitude(q).norm() - pb.amplitude(q).norm()).abs());
            phase.push((pa.exponent(q).im.abs() - pb.exponent(q).im.abs()).abs());
        }
    }
    Ok(vec![modulus, phase])
}

fn temperature_map() -> Outcome {
    let mut roundtrip = Worst::below("T -> alpha -> T relative", 1e-12);
    let mut variances = Worst::below("thermal vs alpha-state variance", 1e-12);
    // omega <= 1 keeps x = omega / 2T <= 500 on this grid; alpha ~ 2 exp(-x)
    // underflows f64 beyond x ~ 745.
    for omega in [0.5, 1.0] {
        for t in logspace(1e-3, 1e3, 121) {
            let spec = ThermalSpec::new(t, omega, units()).map_err(|e| e.to_string())?;
            let s = AlphaState::from_thermal(&spec).map_err(|e| e.to_string())?;
            roundtrip.push(rel(temperature_from_alpha(&s, omega).map_err(|e| e.to_string())?, t));
            let (vq, vp) = moments::thermal_variances(&spec);
            variances.push(rel(vq, moments::variance_q(&s)).max(rel(vp, moments::variance_p(&s))));
        }
    }
    Ok(vec![roundtrip, variances])
}

fn planck_consistency() -> Outcome {
    let mut energy = Worst::below("kinetic + potential vs Planck", 1e-12);
    let mut split = Worst::below("|K - U|", f64::MIN_POSITIVE);
    for omega in [0.5, 1.0, 2.0] {
        for t in logspace(1e-3, 1e3, 121) {
            let spec = ThermalSpec::new(t, omega, units()).map_err(|e| e.to_string())?;
            let (vq, vp) = moments::thermal_variances(&spec);
            let e = 0.5 * vp + 0.5 * omega * omega * vq;
            let x = spec.thermal_argument();
            let reference = 0.5 * omega / x.tanh();
            energy.push(rel(e, reference).max(rel(moments::planck_energy(&spec), reference)));
            let (k, u) = moments::mean_kinetic_potential(&spec);
            split.push((k - u).abs());
        }
    }
    Ok(vec![energy, split])
}

fn monotonicity() -> Outcome {
    let mut violations = Worst::below("non-increasing steps", 1.0);
    for grid in [linspace(0.0, 5.0, 50), logspace(0.1, 1e3, 200)] {
        let mut prev: Option<[f64; 5]> = None;
        for t in grid {
            let spec = ThermalSpec::new(t, 1.0, units()).map_err(|e| e.to_string())?;
            let s = AlphaState::from_thermal(&spec).map_err(|e| e.to_string())?;
            let m = moments::moment_set(&s);
            let row = [
                m.var_q,
                m.var_p,
                m.uncertainty_product,
                moments::effective_action(&s),
                moments::phase_plane_square(&spec).area,
            ];
            if let Some(p) = prev {
                let bad = row.iter().zip(p).filter(|(now, before)| **now <= *before).count();
                violations.push(violations.value + bad as f64);
            }
            prev = Some(row);
        }
    }
    Ok(vec![violations])
}

fn annihilation_ode() -> Outcome {
    let cfg = QuadratureConfig::default();
    let mut good = Worst::below("residual (constructed)", 1e-6);
    let mut bad = Worst::above("residual (beta + 0.1)", 1e-3);
    for alpha in linspace(0.0, 1.4, 15) {
        let s = AlphaState::new(alpha, 1.0, units()).map_err(|e| e.to_string())?;
        let b = s.to_bogoliubov(1.0).map_err(|e| e.to_string())?;
        good.push(annihilation_residual(&b, &cfg));
        let (u, v) = bogoliubov_uv(&b);
        let wrong = GaussianProfile::from_variance(b.coordinate_variance(), b.beta() + 0.1, 1.0);
        bad.push(ode_residual(&wrong, (u - v) / (u + v), &cfg));
    }
    for phi in [0.0, 0.7, 2.0] {
        let b = BogoliubovState::new(0.0, phi, 1.0, units()).map_err(|e| e.to_string())?;
        good.push(annihilation_residual(&b, &cfg));
    }
    Ok(vec![good, bad])
}

fn fourier_duality() -> Outcome {
    let cfg = QuadratureConfig::default();
    let mut worst = Worst::below("DFT momentum variance relative", 1e-6);
    for alpha in linspace(0.0, 1.4, 10) {
        let s = AlphaState::new(alpha, 1.0, units()).map_err(|e| e.to_string())?;
        let grid = GridWavefunction::sample(&s, &cfg).map_err(|e| e.to_string())?;
        let p = oracle::momentum_distribution(&grid).map_err(|e| e.to_string())?;
        worst.push(rel(p.variance(), moments::variance_p(&s)));
        // The same variance from the thermal side.
        if alpha > 0.0 {
            let t = temperature_from_alpha(&s, 1.0).map_err(|e| e.to_string())?;
            let spec = ThermalSpec::new(t, 1.0, units()).map_err(|e| e.to_string())?;
            worst.push(rel(p.variance(), moments::thermal_variances(&spec).1));
        }
    }
    Ok(vec![worst])
}

fn ccs(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_ccs")).args(args).output().expect("ccs runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).expect("utf8"))
}

fn cli_contract() -> Outcome {
    let mut problems = Vec::new();

    let (code, out) = ccs(&["sweep", "--t-min", "0", "--t-max", "2", "--steps", "7"]);
    let lines: Vec<&str> = out.lines().collect();
    if code != 0 || lines.first() != Some(&ccs::cli::report::SWEEP_HEADER) || lines.len() != 8 {
        problems.push(format!("sweep: exit {code}, {} lines", lines.len()));
    }

    for (omega, hbar) in [("1", "1"), ("2", "0.5"), ("0.3", "3")] {
        let (_, out) = ccs(&["sweep", "--t-max", "1", "--steps", "3", "--omega", omega, "--hbar", hbar]);
        let row: Vec<f64> = out
            .lines()
            .nth(1)
            .unwrap_or("")
            .split(',')
            .filter_map(|c| c.parse().ok())
            .collect();
        let expected = hbar.parse::<f64>().unwrap() / (2.0 * omega.parse::<f64>().unwrap());
        if row.len() != 12 || row[3] != expected || row[11] != 0.25 {
            problems.push(format!("T=0 row at omega={omega}, hbar={hbar}: {row:?}"));
        }
    }

    let (code, _) = ccs(&["verify"]);
    if code != 0 {
        problems.push(format!("verify default exit {code}"));
    }
    let (code, _) = ccs(&["verify", "--tol", "1e-30"]);
    if code != 1 {
        problems.push(format!("verify --tol 1e-30 exit {code}"));
    }

    if problems.is_empty() {
        let mut w = Worst::below("contract violations", 1.0);
        w.push(0.0);
        Ok(vec![w])
    } else {
        Err(problems.join("; "))
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("1 SUR saturation", sur_saturation),
        ("2 Heisenberg limit", heisenberg_limit),
        ("3 oracle agreement", oracle_agreement),
        ("4 parametrization equivalence", parametrization_equivalence),
        ("5 temperature map", temperature_map),
        ("6 Planck consistency", planck_consistency),
        ("7 monotonicity", monotonicity),
        ("8 annihilation ODE", annihilation_ode),
        ("9 Fourier duality", fourier_duality),
        ("10 CLI contract", cli_contract),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let (ok, detail) = match check() {
            Ok(metrics) => (
                metrics.iter().all(Worst::ok),
                metrics.iter().map(Worst::describe).collect::<Vec<_>>().join("; "),
            ),
            Err(msg) => (false, msg),
        };
        if !ok {
            failed += 1;
        }
        println!("[{}] criterion {name}: {detail}", if ok { "PASS" } else { "FAIL" });
    }
    if failed == 0 {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} criteria failed");
        ExitCode::FAILURE
    }
}
