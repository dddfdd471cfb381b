//! Position and momentum Fisher information, numerically and in closed form.
//!
//! For a real wavefunction `rho'^2/rho = 4 psi'^2`, so the position integral
//! is evaluated as `4 int psi'^2`, which has no `0/0` at density nodes. The
//! hydrogen momentum density has no nodes and is integrated in its defining
//! form over the whole line.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::{
    fourier_transform_numeric, integrate, IntegralResult, IntegrationDomain, QuadratureConfig,
};
use crate::systems::{
    hydrogen_cutoff, hydrogen_gamma_unchecked, hydrogen_phi, BoundState, SystemKind,
};

/// Which representation an overlap integral is taken in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Space {
    Position,
    Momentum,
}

/// `I_rho = int rho'^2 / rho dx`, computed as `4 int psi'^2 dx`.
pub fn fisher_position(state: &BoundState, config: &QuadratureConfig) -> Result<IntegralResult> {
    state.validate()?;
    integrate(
        |x| {
            let d = state.psi_derivative(x);
            4.0 * d * d
        },
        state.position_domain(),
        config,
    )
}

/// `I_rho` from the defining integrand `rho'^2 / rho`, with `rho'` from the
/// product rule on the closed-form density.
///
/// Only the hydrogen ground state is accepted: it is the only state whose
/// density has no interior node.
pub fn fisher_position_density_form(
    state: &BoundState,
    config: &QuadratureConfig,
) -> Result<IntegralResult> {
    state.validate()?;
    if state.system != SystemKind::HydrogenHalfLine || state.n != 1 {
        return Err(Error::InvalidArgument(
            "density form is only evaluated for the node-free hydrogen ground state".into(),
        ));
    }
    // rho_1 = 4 x^2 e^{-2x}, rho_1' = 8 x (1 - x) e^{-2x}
    integrate(
        |x| {
            let decay = (-2.0 * x).exp();
            let rho = 4.0 * x * x * decay;
            let drho = 8.0 * x * (1.0 - x) * decay;
            if rho == 0.0 {
                0.0
            } else {
                drho * drho / rho
            }
        },
        IntegrationDomain::Finite(0.0, hydrogen_cutoff(1)),
        config,
    )
}

/// `I_gamma = int gamma'^2 / gamma dp` over the whole line for hydrogen.
pub fn fisher_momentum(state: &BoundState, config: &QuadratureConfig) -> Result<IntegralResult> {
    state.validate()?;
    if state.system != SystemKind::HydrogenHalfLine {
        return Err(Error::InvalidArgument(
            "momentum Fisher information of the well goes through well_fisher_momentum_via_position"
                .into(),
        ));
    }
    let n = state.n;
    let nf = n as f64;
    integrate(
        |p| {
            let gamma = hydrogen_gamma_unchecked(n, p);
            let q = 1.0 + nf * nf * p * p;
            let dgamma = -8.0 * nf.powi(3) * p / (PI * q * q * q);
            if gamma == 0.0 {
                0.0
            } else {
                dgamma * dgamma / gamma
            }
        },
        IntegrationDomain::WholeLine,
        config,
    )
}

/// Closed forms `(4/n^2, 2n^2)` for hydrogen.
pub fn fisher_closed_hydrogen(n: u32) -> Result<(f64, f64)> {
    BoundState::hydrogen(n)?;
    let n = n as f64;
    Ok((4.0 / (n * n), 2.0 * n * n))
}

/// `I_gamma = 4 int x^2 psi^2 dx` over the well.
///
/// Valid because both the position and momentum waveforms of the centered
/// well are real (up to a constant phase).
pub fn well_fisher_momentum_via_position(
    n: u32,
    width: f64,
    config: &QuadratureConfig,
) -> Result<IntegralResult> {
    let state = BoundState::well(n, width)?;
    integrate(
        |x| {
            let psi = state.psi(x);
            4.0 * x * x * psi * psi
        },
        state.position_domain(),
        config,
    )
}

/// Well momentum Fisher information computed entirely in momentum space.
///
/// `Phi` is sampled with the numerical Fourier transform, differentiated by
/// central differences, and `4 |Phi'|^2` is integrated with Simpson's rule on
/// `[0, P]` (the integrand is even). The algebraic `P^-3` tail is removed by
/// extrapolating from cutoffs `P` and `2P`, both whole multiples of the
/// integrand's oscillation period.
pub fn well_fisher_momentum_direct(
    n: u32,
    width: f64,
    config: &QuadratureConfig,
) -> Result<IntegralResult> {
    let state = BoundState::well(n, width)?;
    let domain = state.position_domain();
    let cutoff = 40.0 * PI / width;
    let steps_short = 1280;
    let dp = cutoff / steps_short as f64;
    let h = 1e-3 / width;

    let samples: Vec<Result<(f64, bool)>> = (0..=2 * steps_short)
        .into_par_iter()
        .map(|i| {
            let p = i as f64 * dp;
            let hi = fourier_transform_numeric(|x| state.psi(x), p + h, domain, config)?;
            let lo = fourier_transform_numeric(|x| state.psi(x), p - h, domain, config)?;
            let d = (hi.amplitude - lo.amplitude) / (2.0 * h);
            Ok((4.0 * d.norm_sqr(), hi.converged && lo.converged))
        })
        .collect();
    let mut values = Vec::with_capacity(samples.len());
    let mut converged = true;
    for s in samples {
        let (v, c) = s?;
        values.push(v);
        converged &= c;
    }

    let simpson = |upto: usize| -> f64 {
        let inner: f64 = (1..upto)
            .map(|i| if i % 2 == 1 { 4.0 } else { 2.0 } * values[i])
            .sum();
        (values[0] + inner + values[upto]) * dp / 3.0
    };
    // even integrand: double the half-line value
    let short = 2.0 * simpson(steps_short);
    let long = 2.0 * simpson(2 * steps_short);
    let (c1, c2) = (cutoff.powi(3), (2.0 * cutoff).powi(3));
    let value = (c2 * long - c1 * short) / (c2 - c1);
    Ok(IntegralResult {
        value,
        error_estimate: (value - long).abs(),
        converged,
        panels_used: values.len(),
    })
}

/// Overlap `<n'|n>` of two states of the same system.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Overlap {
    /// Real part of the inner product.
    pub value: f64,
    /// Imaginary part (always zero in position space).
    pub imag: f64,
    pub error_estimate: f64,
    pub converged: bool,
}

impl Overlap {
    /// Largest of the real part's deviation from the Kronecker delta and the
    /// imaginary part's magnitude.
    pub fn deviation(&self, diagonal: bool) -> f64 {
        let delta = if diagonal { 1.0 } else { 0.0 };
        (self.value - delta).abs().max(self.imag.abs())
    }
}

/// Inner product of states `n` and `n_prime`; ideally the Kronecker delta.
///
/// Momentum-space overlaps use the closed-form hydrogen waveform with explicit
/// complex conjugation; the well has no closed-form momentum waveform here.
pub fn orthonormality_check(
    state: &BoundState,
    n_prime: u32,
    space: Space,
    config: &QuadratureConfig,
) -> Result<Overlap> {
    state.validate()?;
    let other = BoundState {
        n: n_prime,
        ..*state
    };
    other.validate()?;
    match space {
        Space::Position => {
            let domain = match state.system {
                SystemKind::HydrogenHalfLine => {
                    IntegrationDomain::Finite(0.0, hydrogen_cutoff(state.n.max(n_prime)))
                }
                SystemKind::InfiniteWell => state.position_domain(),
            };
            let r = integrate(|x| state.psi(x) * other.psi(x), domain, config)?;
            Ok(Overlap {
                value: r.value,
                imag: 0.0,
                error_estimate: r.error_estimate,
                converged: r.converged,
            })
        }
        Space::Momentum => match state.system {
            SystemKind::HydrogenHalfLine => momentum_overlap_with(
                |n, p| hydrogen_phi(n, p).expect("validated index"),
                state.n,
                n_prime,
                config,
            ),
            SystemKind::InfiniteWell => Err(Error::InvalidArgument(
                "momentum overlaps need a closed-form waveform; not available for the well".into(),
            )),
        },
    }
}

/// `int Phi*_{n'} Phi_n dp` for an arbitrary momentum waveform.
pub(crate) fn momentum_overlap_with<P>(
    phi: P,
    n: u32,
    n_prime: u32,
    config: &QuadratureConfig,
) -> Result<Overlap>
where
    P: Fn(u32, f64) -> Complex64,
{
    let product = |p: f64| phi(n_prime, p).conj() * phi(n, p);
    let re = integrate(|p| product(p).re, IntegrationDomain::WholeLine, config)?;
    let im = integrate(|p| product(p).im, IntegrationDomain::WholeLine, config)?;
    Ok(Overlap {
        value: re.value,
        imag: im.value,
        error_estimate: re.error_estimate.hypot(im.error_estimate),
        converged: re.converged && im.converged,
    })
}

/// Numeric and (for hydrogen) closed-form Fisher information of one state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FisherReport {
    pub state: BoundState,
    pub i_rho_numeric: f64,
    pub i_rho_closed: Option<f64>,
    pub i_rho_error: f64,
    pub i_gamma_numeric: f64,
    pub i_gamma_closed: Option<f64>,
    pub i_gamma_error: f64,
    pub product: f64,
    pub max_abs_discrepancy: f64,
    pub converged: bool,
}

pub fn build_report(state: &BoundState, config: &QuadratureConfig) -> Result<FisherReport> {
    state.validate()?;
    let rho = fisher_position(state, config)?;
    let (gamma, closed) = match state.system {
        SystemKind::HydrogenHalfLine => (
            fisher_momentum(state, config)?,
            Some(fisher_closed_hydrogen(state.n)?),
        ),
        SystemKind::InfiniteWell => (
            well_fisher_momentum_via_position(state.n, state.width, config)?,
            None,
        ),
    };
    let max_abs_discrepancy = closed.map_or(0.0, |(r, g)| {
        (rho.value - r).abs().max((gamma.value - g).abs())
    });
    Ok(FisherReport {
        state: *state,
        i_rho_numeric: rho.value,
        i_rho_closed: closed.map(|c| c.0),
        i_rho_error: rho.error_estimate,
        i_gamma_numeric: gamma.value,
        i_gamma_closed: closed.map(|c| c.1),
        i_gamma_error: gamma.error_estimate,
        product: rho.value * gamma.value,
        max_abs_discrepancy,
        converged: rho.converged && gamma.converged,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    fn hydrogen(n: u32) -> BoundState {
        BoundState::hydrogen(n).unwrap()
    }

    #[test]
    fn position_examples() {
        let r = fisher_position(&hydrogen(1), &cfg()).unwrap();
        assert!(r.converged);
        assert_abs_diff_eq!(r.value, 4.0, epsilon = 1e-8);
        let r = fisher_position(&hydrogen(3), &cfg()).unwrap();
        assert_abs_diff_eq!(r.value, 4.0 / 9.0, epsilon = 1e-8);
        let r = fisher_position(&BoundState::well(1, 1.0).unwrap(), &cfg()).unwrap();
        assert_abs_diff_eq!(r.value, 4.0 * PI * PI, epsilon = 1e-6);
    }

    #[test]
    fn density_form_agrees_with_derivative_form() {
        let a = fisher_position_density_form(&hydrogen(1), &cfg()).unwrap();
        let b = fisher_position(&hydrogen(1), &cfg()).unwrap();
        assert_abs_diff_eq!(a.value, b.value, epsilon = 1e-9);
        assert!(fisher_position_density_form(&hydrogen(2), &cfg()).is_err());
    }

    #[test]
    fn momentum_examples() {
        for (n, expected) in [(1, 2.0), (2, 8.0), (5, 50.0)] {
            let r = fisher_momentum(&hydrogen(n), &cfg()).unwrap();
            assert!(r.converged);
            assert_abs_diff_eq!(r.value, expected, epsilon = 1e-8);
        }
        assert!(fisher_momentum(&BoundState::well(1, 1.0).unwrap(), &cfg()).is_err());
    }

    #[test]
    fn closed_forms() {
        assert_eq!(fisher_closed_hydrogen(1).unwrap(), (4.0, 2.0));
        assert_eq!(fisher_closed_hydrogen(2).unwrap(), (1.0, 8.0));
        for n in 1..50 {
            let (r, g) = fisher_closed_hydrogen(n).unwrap();
            assert_abs_diff_eq!(r * g, 8.0, epsilon = 1e-12);
        }
        assert!(fisher_closed_hydrogen(0).is_err());
    }

    #[test]
    fn well_via_position_examples() {
        let r = well_fisher_momentum_via_position(1, 1.0, &cfg()).unwrap();
        assert_abs_diff_eq!(r.value, 1.0 / 3.0 - 2.0 / (PI * PI), epsilon = 1e-8);
        assert_abs_diff_eq!(r.value, 0.130690, epsilon = 1e-6);
        for n in 1..6 {
            let a1 = well_fisher_momentum_via_position(n, 1.0, &cfg())
                .unwrap()
                .value;
            let a2 = well_fisher_momentum_via_position(n, 2.0, &cfg())
                .unwrap()
                .value;
            assert_abs_diff_eq!(a2, 4.0 * a1, epsilon = 1e-10);
        }
    }

    #[test]
    fn well_via_position_increases_towards_uniform_limit() {
        // dense midpoint grid oracle for 4 <x^2>
        let oracle = |n: u32| {
            let s = BoundState::well(n, 1.0).unwrap();
            let m = 200_000;
            (0..m)
                .map(|i| {
                    let x = -0.5 + (i as f64 + 0.5) / m as f64;
                    4.0 * x * x * s.psi(x).powi(2)
                })
                .sum::<f64>()
                / m as f64
        };
        let mut prev = 0.0;
        for n in 1..=50 {
            let v = well_fisher_momentum_via_position(n, 1.0, &cfg())
                .unwrap()
                .value;
            assert!((v - oracle(n)).abs() < 1e-8, "n={n}");
            assert!(v > prev && v < 1.0 / 3.0);
            prev = v;
        }
        assert!(1.0 / 3.0 - prev < 1e-4);
    }

    #[test]
    fn orthonormality_examples() {
        let h1 = hydrogen(1);
        let o = orthonormality_check(&h1, 1, Space::Position, &cfg()).unwrap();
        assert_abs_diff_eq!(o.value, 1.0, epsilon = 1e-10);
        let o = orthonormality_check(&h1, 2, Space::Position, &cfg()).unwrap();
        assert_abs_diff_eq!(o.value, 0.0, epsilon = 1e-10);
        let o = orthonormality_check(&hydrogen(2), 3, Space::Momentum, &cfg()).unwrap();
        assert!(o.deviation(false) <= 1e-8);
        let w = BoundState::well(2, 1.5).unwrap();
        let o = orthonormality_check(&w, 3, Space::Position, &cfg()).unwrap();
        assert_abs_diff_eq!(o.value, 0.0, epsilon = 1e-10);
        assert!(orthonormality_check(&w, 3, Space::Momentum, &cfg()).is_err());
        assert!(orthonormality_check(&h1, 0, Space::Position, &cfg()).is_err());
    }

    #[test]
    fn real_waveform_breaks_momentum_orthogonality() {
        let modulus = |n, p| Complex64::new(hydrogen_phi(n, p).unwrap().norm(), 0.0);
        let o = momentum_overlap_with(modulus, 2, 3, &cfg()).unwrap();
        assert!(o.deviation(false) > 0.1);
    }

    #[test]
    fn reports() {
        let r = build_report(&hydrogen(4), &cfg()).unwrap();
        assert_eq!(r.i_rho_closed, Some(0.25));
        assert_eq!(r.i_gamma_closed, Some(32.0));
        assert_abs_diff_eq!(r.product, 8.0, epsilon = 1e-6);
        assert!(r.converged);

        let r = build_report(&hydrogen(1), &cfg()).unwrap();
        assert!(r.max_abs_discrepancy <= 1e-8);

        let r = build_report(&BoundState::well(2, 1.0).unwrap(), &cfg()).unwrap();
        assert!(r.i_rho_closed.is_none() && r.i_gamma_closed.is_none());
        assert!(r.product.is_finite() && r.product > 0.0);
        assert_eq!(r.product, r.i_rho_numeric * r.i_gamma_numeric);
    }
}
