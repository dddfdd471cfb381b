//! The invariant suite: every numerical cross-check of the crate as a named
//! pass/fail record.
//!
//! A check passes only if its measured value meets the tolerance *and* every
//! quadrature it ran converged.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::fisher::{
    build_report, fisher_position, fisher_position_density_form, momentum_overlap_with,
    orthonormality_check, well_fisher_momentum_direct, well_fisher_momentum_via_position,
    FisherReport, Space,
};
use crate::quadrature::{fourier_transform_numeric, IntegrationDomain, QuadratureConfig};
use crate::specfun::{kummer_m, laguerre, laguerre_rodrigues_oracle, KummerParams, PolyIndex};
use crate::systems::{
    hydrogen_cutoff, hydrogen_energy, hydrogen_gamma, hydrogen_phi, hydrogen_psi,
    hydrogen_psi_derivative, hydrogen_rho, schrodinger_residual, BoundState,
};

/// Deliberate defects used to show that the suite catches them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fault {
    /// Replace the closed-form momentum waveform by its modulus, i.e. pretend
    /// it is real.
    RealPhi,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    /// Pass when `measured <= tolerance`.
    AtMost,
    /// Pass when `measured > tolerance`.
    Above,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub measured: f64,
    pub tolerance: f64,
    pub comparison: Comparison,
    pub converged: bool,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    fn new(
        name: &str,
        measured: f64,
        tolerance: f64,
        comparison: Comparison,
        converged: bool,
        detail: String,
    ) -> Self {
        let within = match comparison {
            Comparison::AtMost => measured <= tolerance,
            Comparison::Above => measured > tolerance,
        };
        Self {
            name: name.to_owned(),
            measured,
            tolerance,
            comparison,
            converged,
            passed: within && converged && measured.is_finite(),
            detail,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub n_max: u32,
    pub fault: Option<Fault>,
    pub config: QuadratureConfig,
    pub checks: Vec<CheckResult>,
    pub passed: bool,
}

impl VerifyReport {
    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VerifyOptions {
    pub n_max: u32,
    pub fault: Option<Fault>,
    pub config: QuadratureConfig,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            n_max: 8,
            fault: None,
            config: QuadratureConfig::default(),
        }
    }
}

/// Closed-form momentum waveform, possibly with a fault injected.
pub fn momentum_waveform(fault: Option<Fault>) -> impl Fn(u32, f64) -> Complex64 + Sync {
    move |n, p| {
        let phi = hydrogen_phi(n, p).expect("validated index");
        match fault {
            Some(Fault::RealPhi) => Complex64::new(phi.norm(), 0.0),
            None => phi,
        }
    }
}

/// 201 equally spaced momenta on `[-5, 5]`.
pub fn momentum_grid() -> Vec<f64> {
    (0..=200).map(|i| -5.0 + 0.05 * i as f64).collect()
}

fn states(n_max: u32) -> Vec<u32> {
    (1..=n_max).collect()
}

/// Fisher reports for hydrogen `n = 1..=n_max`, computed in parallel.
pub fn hydrogen_sweep(n_max: u32, config: &QuadratureConfig) -> Result<Vec<FisherReport>> {
    states(n_max)
        .into_par_iter()
        .map(|n| build_report(&BoundState::hydrogen(n)?, config))
        .collect()
}

fn max_of<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    values
        .into_iter()
        .fold(0.0, |acc, v| if v.is_nan() { f64::NAN } else { acc.max(v) })
}

pub fn check_closed_form_position(reports: &[FisherReport]) -> CheckResult {
    let worst = max_of(reports.iter().map(|r| {
        let closed = r.i_rho_closed.unwrap_or(f64::NAN);
        (r.i_rho_numeric - closed).abs() / closed
    }));
    CheckResult::new(
        "closed_form_position",
        worst,
        1e-8,
        Comparison::AtMost,
        reports.iter().all(|r| r.converged),
        format!("max relative |I_rho - 4/n^2| over n <= {}", reports.len()),
    )
}

pub fn check_closed_form_momentum(reports: &[FisherReport]) -> CheckResult {
    let worst = max_of(reports.iter().map(|r| {
        let closed = r.i_gamma_closed.unwrap_or(f64::NAN);
        (r.i_gamma_numeric - closed).abs() / closed
    }));
    CheckResult::new(
        "closed_form_momentum",
        worst,
        1e-8,
        Comparison::AtMost,
        reports.iter().all(|r| r.converged),
        format!("max relative |I_gamma - 2n^2| over n <= {}", reports.len()),
    )
}

pub fn check_product_constancy(reports: &[FisherReport]) -> CheckResult {
    let worst = max_of(reports.iter().map(|r| (r.product - 8.0).abs()));
    CheckResult::new(
        "product_constancy",
        worst,
        1e-6,
        Comparison::AtMost,
        reports.iter().all(|r| r.converged),
        format!("max |I_rho I_gamma - 8| over n <= {}", reports.len()),
    )
}

pub fn check_energy_relations(reports: &[FisherReport]) -> Result<CheckResult> {
    let mut worst: f64 = 0.0;
    for r in reports {
        let e = hydrogen_energy(r.state.n)?.value.abs();
        worst = worst
            .max((r.i_rho_numeric - 8.0 * e).abs() / (8.0 * e))
            .max((r.i_gamma_numeric - 1.0 / e).abs() * e);
    }
    Ok(CheckResult::new(
        "energy_relations",
        worst,
        1e-8,
        Comparison::AtMost,
        reports.iter().all(|r| r.converged),
        "max relative deviation of I_rho = 8|E_n| and I_gamma = 1/|E_n|".into(),
    ))
}

/// Numerical transform of `psi_n` over `[0, hydrogen_cutoff(n)]`.
pub fn hydrogen_phi_numeric(
    n: u32,
    p: f64,
    config: &QuadratureConfig,
) -> Result<crate::quadrature::FourierSample> {
    BoundState::hydrogen(n)?;
    fourier_transform_numeric(
        |x| hydrogen_psi(n, x).unwrap_or(0.0),
        p,
        IntegrationDomain::Finite(0.0, hydrogen_cutoff(n)),
        config,
    )
}

pub fn check_fourier_consistency(
    n_max: u32,
    fault: Option<Fault>,
    config: &QuadratureConfig,
) -> Result<CheckResult> {
    let phi = momentum_waveform(fault);
    let grid = momentum_grid();
    let pairs: Vec<(u32, f64)> = states(n_max)
        .into_iter()
        .flat_map(|n| grid.iter().map(move |&p| (n, p)))
        .collect();
    let diffs: Vec<(f64, bool)> = pairs
        .par_iter()
        .map(|&(n, p)| {
            let s = hydrogen_phi_numeric(n, p, config)?;
            Ok(((s.amplitude - phi(n, p)).norm(), s.converged))
        })
        .collect::<Result<_>>()?;
    Ok(CheckResult::new(
        "fourier_consistency",
        max_of(diffs.iter().map(|d| d.0)),
        1e-6,
        Comparison::AtMost,
        diffs.iter().all(|d| d.1),
        format!("max |Phi_numeric - Phi_closed| over n <= {n_max}, 201 momenta in [-5, 5]"),
    ))
}

pub fn check_momentum_complexity(n_max: u32, fault: Option<Fault>) -> CheckResult {
    let phi = momentum_waveform(fault);
    let grid = momentum_grid();
    let weakest = states(n_max)
        .into_iter()
        .map(|n| max_of(grid.iter().map(|&p| phi(n, p).im.abs())))
        .fold(f64::INFINITY, f64::min);
    CheckResult::new(
        "momentum_complexity",
        weakest,
        0.1,
        Comparison::Above,
        true,
        format!("min over n <= {n_max} of max_p |Im Phi_n(p)|"),
    )
}

pub fn check_phi_symmetry(n_max: u32, fault: Option<Fault>) -> CheckResult {
    let phi = momentum_waveform(fault);
    let grid = momentum_grid();
    let worst = max_of(states(n_max).into_iter().flat_map(|n| {
        let phi = &phi;
        grid.iter().map(move |&p| {
            let (a, b) = (phi(n, p), phi(n, -p));
            (a.re - b.re).abs().max((a.im + b.im).abs())
        })
    }));
    CheckResult::new(
        "phi_symmetry",
        worst,
        1e-12,
        Comparison::AtMost,
        true,
        "Re Phi even and Im Phi odd in p".into(),
    )
}

pub fn check_density_consistency(n_max: u32, fault: Option<Fault>) -> Result<CheckResult> {
    let phi = momentum_waveform(fault);
    let mut worst: f64 = 0.0;
    for n in states(n_max) {
        for i in 0..=400 {
            let x = hydrogen_cutoff(n) * i as f64 / 400.0;
            let rho = hydrogen_rho(n, x)?;
            let psi2 = hydrogen_psi(n, x)?.powi(2);
            if rho != psi2 {
                worst = worst.max((rho - psi2).abs() / rho.abs().max(psi2));
            }
        }
        for &p in &momentum_grid() {
            let gamma = hydrogen_gamma(n, p)?;
            worst = worst.max((gamma - phi(n, p).norm_sqr()).abs() / gamma);
        }
    }
    Ok(CheckResult::new(
        "density_consistency",
        worst,
        1e-12,
        Comparison::AtMost,
        true,
        "relative |rho - psi^2| and |gamma - |Phi|^2|".into(),
    ))
}

pub fn check_orthonormality(
    space: Space,
    n_max: u32,
    fault: Option<Fault>,
    config: &QuadratureConfig,
) -> Result<CheckResult> {
    let pairs: Vec<(u32, u32)> = states(n_max)
        .into_iter()
        .flat_map(|a| states(n_max).into_iter().map(move |b| (a, b)))
        .collect();
    let phi = momentum_waveform(fault);
    let results: Vec<(f64, bool)> = pairs
        .par_iter()
        .map(|&(n, m)| {
            let overlap = match space {
                Space::Position => {
                    orthonormality_check(&BoundState::hydrogen(n)?, m, space, config)?
                }
                Space::Momentum => momentum_overlap_with(&phi, n, m, config)?,
            };
            Ok((overlap.deviation(n == m), overlap.converged))
        })
        .collect::<Result<_>>()?;
    let name = match space {
        Space::Position => "position_orthonormality",
        Space::Momentum => "momentum_orthonormality",
    };
    Ok(CheckResult::new(
        name,
        max_of(results.iter().map(|r| r.0)),
        1e-8,
        Comparison::AtMost,
        results.iter().all(|r| r.1),
        format!("max |<n'|n> - delta| over n, n' <= {n_max}"),
    ))
}

/// 50 log-spaced points on `[0.05, 40n]`.
pub fn residual_points(n: u32) -> Vec<f64> {
    let (lo, hi) = (0.05_f64.ln(), (40.0 * n as f64).ln());
    (0..50)
        .map(|i| (lo + (hi - lo) * i as f64 / 49.0).exp())
        .collect()
}

pub fn check_schrodinger_residual(n_max: u32) -> Result<CheckResult> {
    let mut worst: f64 = 0.0;
    for n in states(n_max) {
        for x in residual_points(n) {
            worst = worst.max(schrodinger_residual(n, x, 1e-4)?);
        }
    }
    Ok(CheckResult::new(
        "schrodinger_residual",
        worst,
        1e-6,
        Comparison::AtMost,
        true,
        format!("max residual at 50 points per state, n <= {n_max}"),
    ))
}

/// Sign changes of `psi_n` on `points` equally spaced abscissae in `(0, 40n]`.
pub fn count_sign_changes(n: u32, points: usize) -> Result<usize> {
    let end = 40.0 * n as f64;
    let mut changes = 0;
    let mut last = 0.0_f64;
    for i in 1..=points {
        let v = hydrogen_psi(n, end * i as f64 / points as f64)?;
        if v != 0.0 {
            if last != 0.0 && v.signum() != last.signum() {
                changes += 1;
            }
            last = v;
        }
    }
    Ok(changes)
}

pub fn check_node_count(n_max: u32) -> Result<CheckResult> {
    let mut worst = 0_usize;
    for n in states(n_max) {
        worst = worst.max(count_sign_changes(n, 10_000)?.abs_diff(n as usize - 1));
    }
    Ok(CheckResult::new(
        "node_count",
        worst as f64,
        0.0,
        Comparison::AtMost,
        true,
        format!("max |sign changes - (n-1)| on 10^4 points, n <= {n_max}"),
    ))
}

pub fn check_laguerre_rodrigues() -> Result<CheckResult> {
    let mut worst: f64 = 0.0;
    for m in 0..=12 {
        for beta in [1.0, 2.0] {
            for x in [0.1, 0.5, 1.0, 2.0, 5.0, 10.0] {
                let idx = PolyIndex::new(m, beta)?;
                let rec = laguerre(idx, x)?;
                let oracle = laguerre_rodrigues_oracle(idx, x)?;
                worst = worst.max((rec - oracle).abs() / rec.abs().max(1.0));
            }
        }
    }
    Ok(CheckResult::new(
        "laguerre_rodrigues",
        worst,
        1e-10,
        Comparison::AtMost,
        true,
        "recurrence vs Rodrigues expansion, m <= 12, beta in {1, 2}".into(),
    ))
}

pub fn check_kummer_laguerre() -> Result<CheckResult> {
    let mut worst: f64 = 0.0;
    for n in 1..=10_u32 {
        for i in 1..=40 {
            let x = 0.5 * i as f64;
            let m = kummer_m(KummerParams::new(1.0 - n as f64, 2.0, x))?;
            let l = laguerre(PolyIndex::new(n as usize - 1, 1.0)?, x)?;
            worst = worst.max((n as f64 * m - l).abs() / l.abs().max(1.0));
        }
    }
    Ok(CheckResult::new(
        "kummer_laguerre",
        worst,
        1e-10,
        Comparison::AtMost,
        true,
        "n M(1-n, 2, x) vs L_{n-1}^(1)(x), n <= 10, x in (0, 20]".into(),
    ))
}

pub fn check_fisher_density_form(config: &QuadratureConfig) -> Result<CheckResult> {
    let state = BoundState::hydrogen(1)?;
    let a = fisher_position_density_form(&state, config)?;
    let b = fisher_position(&state, config)?;
    Ok(CheckResult::new(
        "fisher_density_form",
        (a.value - b.value).abs() / b.value,
        1e-8,
        Comparison::AtMost,
        a.converged && b.converged,
        "rho'^2/rho vs 4 psi'^2 for the hydrogen ground state".into(),
    ))
}

pub fn check_well_reciprocity(n_max: u32, config: &QuadratureConfig) -> Result<CheckResult> {
    let results: Vec<(f64, bool)> = states(n_max)
        .into_par_iter()
        .map(|n| {
            let via = well_fisher_momentum_via_position(n, 1.0, config)?;
            let direct = well_fisher_momentum_direct(n, 1.0, config)?;
            Ok((
                (via.value - direct.value).abs() / via.value,
                via.converged && direct.converged,
            ))
        })
        .collect::<Result<_>>()?;
    Ok(CheckResult::new(
        "well_reciprocity",
        max_of(results.iter().map(|r| r.0)),
        1e-4,
        Comparison::AtMost,
        results.iter().all(|r| r.1),
        format!("position-space 4<x^2> vs momentum-space 4 int |Phi'|^2, n <= {n_max}, a = 1"),
    ))
}

pub fn check_well_ground_state(config: &QuadratureConfig) -> Result<CheckResult> {
    let r = well_fisher_momentum_via_position(1, 1.0, config)?;
    Ok(CheckResult::new(
        "well_ground_state",
        (r.value - (1.0 / 3.0 - 2.0 / (PI * PI))).abs(),
        1e-8,
        Comparison::AtMost,
        r.converged,
        "4<x^2> for n = 1, a = 1 vs 1/3 - 2/pi^2".into(),
    ))
}

/// Momentum breakpoints in units of `1/n`, doubling from 0.5 up to `q_max`.
fn plancherel_breaks(q_max: f64) -> Vec<f64> {
    let mut breaks = vec![0.0, 0.5];
    while *breaks.last().unwrap() < q_max {
        let next = 2.0 * breaks.last().unwrap();
        breaks.push(next.min(q_max));
    }
    breaks
}

/// `int |Phi_n|^2 dp` from numerical transform samples.
///
/// `[0, 20]` is covered by a composite 15-point Gauss rule (the integrand is
/// even); the remaining tail uses the large-`p` asymptote
/// `|Phi|^2 ~ psi'(0)^2 / (2 pi p^4)`, which needs only position-space data.
pub fn plancherel_norm(n: u32, config: &QuadratureConfig) -> Result<(f64, bool)> {
    const CUTOFF: f64 = 20.0;
    let nf = n as f64;
    let rule = crate::quadrature::GaussRule::new(15);
    let breaks = plancherel_breaks(CUTOFF * nf);
    let mut nodes = Vec::new();
    for w in breaks.windows(2) {
        let (a, b) = (w[0] / nf, w[1] / nf);
        for (t, wt) in rule.nodes().iter().zip(rule.weights()) {
            nodes.push((0.5 * (a + b) + 0.5 * (b - a) * t, 0.5 * (b - a) * wt));
        }
    }
    let samples: Vec<(f64, bool)> = nodes
        .par_iter()
        .map(|&(p, w)| {
            let s = hydrogen_phi_numeric(n, p, config)?;
            Ok((w * s.amplitude.norm_sqr(), s.converged))
        })
        .collect::<Result<_>>()?;
    let body: f64 = samples.iter().map(|s| s.0).sum();
    let slope = hydrogen_psi_derivative(n, 0.0)?;
    let tail = slope * slope / (2.0 * PI) / (3.0 * CUTOFF.powi(3));
    Ok((2.0 * (body + tail), samples.iter().all(|s| s.1)))
}

pub fn check_plancherel(n_max: u32, config: &QuadratureConfig) -> Result<CheckResult> {
    let results: Vec<(f64, bool)> = states(n_max)
        .into_par_iter()
        .map(|n| plancherel_norm(n, config).map(|(v, c)| ((v - 1.0).abs(), c)))
        .collect::<Result<_>>()?;
    Ok(CheckResult::new(
        "plancherel",
        max_of(results.iter().map(|r| r.0)),
        1e-6,
        Comparison::AtMost,
        results.iter().all(|r| r.1),
        format!("|int |Phi_numeric|^2 dp - 1|, n <= {n_max}"),
    ))
}

/// Runs every check. States with `n <= opts.n_max` are used throughout, except
/// where a check has a fixed range (residual, node count and Plancherel stop
/// at 6, the well at 4).
pub fn run_suite(opts: &VerifyOptions) -> Result<VerifyReport> {
    opts.config.validate()?;
    BoundState::hydrogen(opts.n_max)?;
    let cfg = &opts.config;
    let n = opts.n_max;
    let small = n.min(6);
    let reports = hydrogen_sweep(n, cfg)?;

    let checks = vec![
        check_closed_form_position(&reports),
        check_closed_form_momentum(&reports),
        check_product_constancy(&reports),
        check_energy_relations(&reports)?,
        check_fisher_density_form(cfg)?,
        check_fourier_consistency(n, opts.fault, cfg)?,
        check_momentum_complexity(n, opts.fault),
        check_phi_symmetry(n, opts.fault),
        check_density_consistency(n, opts.fault)?,
        check_orthonormality(Space::Position, n, opts.fault, cfg)?,
        check_orthonormality(Space::Momentum, n, opts.fault, cfg)?,
        check_plancherel(small, cfg)?,
        check_schrodinger_residual(small)?,
        check_node_count(small)?,
        check_well_reciprocity(4, cfg)?,
        check_well_ground_state(cfg)?,
        check_laguerre_rodrigues()?,
        check_kummer_laguerre()?,
    ];
    let passed = checks.iter().all(|c| c.passed);
    Ok(VerifyReport {
        n_max: n,
        fault: opts.fault,
        config: *cfg,
        checks,
        passed,
    })
}
