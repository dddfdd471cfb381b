//! Bound states of the half-line hydrogen atom and the infinite well.
//!
//! Everything is in Coulomb units: lengths `hbar^2/(m alpha)`, energies
//! `m alpha^2/hbar^2`, momenta `m alpha/hbar`. The Fourier kernel uses `hbar = 1`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite, Error, Result};
use crate::quadrature::IntegrationDomain;
use crate::specfun::{laguerre_derivative_unchecked, laguerre_unchecked};

/// Momentum-space wavefunction value.
pub type ComplexAmplitude = Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SystemKind {
    /// `V = -1/x` for `x > 0`, infinite wall at `x <= 0`.
    HydrogenHalfLine,
    /// Infinite well occupying `[-a/2, a/2]`.
    InfiniteWell,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundState {
    pub system: SystemKind,
    pub n: u32,
    /// Well width `a`; ignored for hydrogen.
    pub width: f64,
}

impl BoundState {
    pub fn hydrogen(n: u32) -> Result<Self> {
        let s = Self {
            system: SystemKind::HydrogenHalfLine,
            n,
            width: 1.0,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn well(n: u32, width: f64) -> Result<Self> {
        let s = Self {
            system: SystemKind::InfiniteWell,
            n,
            width,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        check_index(self.n)?;
        if self.system == SystemKind::InfiniteWell && !(self.width > 0.0 && self.width.is_finite())
        {
            return Err(Error::OutOfDomain {
                name: "width",
                value: self.width,
                domain: "(0, inf)".into(),
            });
        }
        Ok(())
    }

    pub fn energy(&self) -> f64 {
        match self.system {
            SystemKind::HydrogenHalfLine => hydrogen_energy_unchecked(self.n),
            SystemKind::InfiniteWell => well_energy_unchecked(self.n, self.width),
        }
    }

    /// Position-space integration domain, truncated for hydrogen.
    pub fn position_domain(&self) -> IntegrationDomain {
        match self.system {
            SystemKind::HydrogenHalfLine => IntegrationDomain::Finite(0.0, hydrogen_cutoff(self.n)),
            SystemKind::InfiniteWell => {
                IntegrationDomain::Finite(-0.5 * self.width, 0.5 * self.width)
            }
        }
    }

    /// Real position wavefunction; zero outside the physical domain.
    pub fn psi(&self, x: f64) -> f64 {
        match self.system {
            SystemKind::HydrogenHalfLine if x >= 0.0 => hydrogen_psi_unchecked(self.n, x),
            SystemKind::InfiniteWell if x.abs() <= 0.5 * self.width => {
                well_psi_unchecked(self.n, self.width, x)
            }
            _ => 0.0,
        }
    }

    pub fn psi_derivative(&self, x: f64) -> f64 {
        match self.system {
            SystemKind::HydrogenHalfLine if x >= 0.0 => {
                hydrogen_psi_derivative_unchecked(self.n, x)
            }
            SystemKind::InfiniteWell if x.abs() <= 0.5 * self.width => {
                well_psi_derivative_unchecked(self.n, self.width, x)
            }
            _ => 0.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct EnergyValue {
    pub value: f64,
}

fn check_index(n: u32) -> Result<()> {
    if n == 0 {
        Err(Error::InvalidArgument(
            "quantum index n must be >= 1".into(),
        ))
    } else {
        Ok(())
    }
}

fn check_half_line(x: f64) -> Result<()> {
    if x >= 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::OutOfDomain {
            name: "x",
            value: x,
            domain: "[0, inf)".into(),
        })
    }
}

/// Upper limit for hydrogen position-space integrals.
///
/// The classical turning point sits at `2n^2`, so a cutoff linear in `n`
/// clips highly excited states; beyond `3n^2 + 40n` the density is below
/// `1e-30` for every `n` up to at least 20.
pub fn hydrogen_cutoff(n: u32) -> f64 {
    let n = n as f64;
    3.0 * n * n + 40.0 * n
}

/// `E_n = -1/(2 n^2)`.
pub fn hydrogen_energy(n: u32) -> Result<EnergyValue> {
    check_index(n)?;
    Ok(EnergyValue {
        value: hydrogen_energy_unchecked(n),
    })
}

fn hydrogen_energy_unchecked(n: u32) -> f64 {
    let n = n as f64;
    -0.5 / (n * n)
}

/// `psi_n(x) = (2x / n^(5/2)) e^(-x/n) L_{n-1}^(1)(2x/n)`.
pub fn hydrogen_psi(n: u32, x: f64) -> Result<f64> {
    check_index(n)?;
    check_half_line(x)?;
    Ok(hydrogen_psi_unchecked(n, x))
}

#[inline]
fn hydrogen_psi_unchecked(n: u32, x: f64) -> f64 {
    let nf = n as f64;
    let decay = (-x / nf).exp();
    if decay == 0.0 {
        return 0.0;
    }
    2.0 * x / nf.powf(2.5) * decay * laguerre_unchecked(n as usize - 1, 1.0, 2.0 * x / nf)
}

/// Analytic `d psi_n / dx`.
pub fn hydrogen_psi_derivative(n: u32, x: f64) -> Result<f64> {
    check_index(n)?;
    check_half_line(x)?;
    Ok(hydrogen_psi_derivative_unchecked(n, x))
}

#[inline]
fn hydrogen_psi_derivative_unchecked(n: u32, x: f64) -> f64 {
    let nf = n as f64;
    let decay = (-x / nf).exp();
    if decay == 0.0 {
        return 0.0;
    }
    let m = n as usize - 1;
    let s = 2.0 * x / nf;
    let lag = laguerre_unchecked(m, 1.0, s);
    let dlag = laguerre_derivative_unchecked(m, 1.0, s);
    2.0 / nf.powf(2.5) * decay * ((1.0 - x / nf) * lag + x * 2.0 / nf * dlag)
}

/// `Phi_n(p) = (-1)^(n+1) sqrt(2n/pi) (1 - i n p)^(n-1) / (1 + i n p)^(n+1)`.
pub fn hydrogen_phi(n: u32, p: f64) -> Result<ComplexAmplitude> {
    check_index(n)?;
    ensure_finite("p", p)?;
    let nf = n as f64;
    let minus = Complex64::new(1.0, -nf * p);
    let plus = Complex64::new(1.0, nf * p);
    let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
    Ok(minus.powu(n - 1) / plus.powu(n + 1) * (sign * (2.0 * nf / PI).sqrt()))
}

/// `rho_n(x) = (1/n^3) (2x/n)^2 e^(-2x/n) [L_{n-1}^(1)(2x/n)]^2`.
pub fn hydrogen_rho(n: u32, x: f64) -> Result<f64> {
    check_index(n)?;
    check_half_line(x)?;
    let nf = n as f64;
    let s = 2.0 * x / nf;
    let lag = laguerre_unchecked(n as usize - 1, 1.0, s);
    Ok(s * s * (-s).exp() * lag * lag / (nf * nf * nf))
}

/// `gamma_n(p) = (2n/pi) / (1 + n^2 p^2)^2`.
pub fn hydrogen_gamma(n: u32, p: f64) -> Result<f64> {
    check_index(n)?;
    ensure_finite("p", p)?;
    Ok(hydrogen_gamma_unchecked(n, p))
}

#[inline]
pub(crate) fn hydrogen_gamma_unchecked(n: u32, p: f64) -> f64 {
    let nf = n as f64;
    let q = 1.0 + nf * nf * p * p;
    2.0 * nf / PI / (q * q)
}

/// `|-psi''/2 - psi/x - E_n psi|` with `psi''` from a five-point stencil of
/// step `h`.
pub fn schrodinger_residual(n: u32, x: f64, h: f64) -> Result<f64> {
    check_index(n)?;
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::OutOfDomain {
            name: "h",
            value: h,
            domain: "(0, inf)".into(),
        });
    }
    ensure_finite("x", x)?;
    if x <= 2.0 * h {
        return Err(Error::OutOfDomain {
            name: "x",
            value: x,
            domain: format!("({}, inf) for step {h}", 2.0 * h),
        });
    }
    let psi = |x| hydrogen_psi_unchecked(n, x);
    let second = (-psi(x + 2.0 * h) + 16.0 * psi(x + h) - 30.0 * psi(x) + 16.0 * psi(x - h)
        - psi(x - 2.0 * h))
        / (12.0 * h * h);
    let value = psi(x);
    Ok((-0.5 * second - value / x - hydrogen_energy_unchecked(n) * value).abs())
}

/// `E_n = n^2 pi^2 / (2 a^2)` for the well.
pub fn well_energy(n: u32, width: f64) -> Result<EnergyValue> {
    BoundState::well(n, width)?;
    Ok(EnergyValue {
        value: well_energy_unchecked(n, width),
    })
}

fn well_energy_unchecked(n: u32, a: f64) -> f64 {
    let k = n as f64 * PI / a;
    0.5 * k * k
}

/// `sqrt(2/a) sin(n pi (x/a + 1/2))` on `[-a/2, a/2]`.
pub fn well_psi(state: &BoundState, x: f64) -> Result<f64> {
    check_well(state, x)?;
    Ok(well_psi_unchecked(state.n, state.width, x))
}

pub fn well_psi_derivative(state: &BoundState, x: f64) -> Result<f64> {
    check_well(state, x)?;
    Ok(well_psi_derivative_unchecked(state.n, state.width, x))
}

fn check_well(state: &BoundState, x: f64) -> Result<()> {
    if state.system != SystemKind::InfiniteWell {
        return Err(Error::InvalidArgument(
            "state is not an infinite-well state".into(),
        ));
    }
    state.validate()?;
    ensure_finite("x", x)?;
    let half = 0.5 * state.width;
    if x.abs() > half {
        return Err(Error::OutOfDomain {
            name: "x",
            value: x,
            domain: format!("[{}, {half}]", -half),
        });
    }
    Ok(())
}

#[inline]
fn well_psi_unchecked(n: u32, a: f64, x: f64) -> f64 {
    (2.0 / a).sqrt() * (n as f64 * PI * (x / a + 0.5)).sin()
}

#[inline]
fn well_psi_derivative_unchecked(n: u32, a: f64, x: f64) -> f64 {
    let k = n as f64 * PI / a;
    (2.0 / a).sqrt() * k * (n as f64 * PI * (x / a + 0.5)).cos()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::{integrate, QuadratureConfig};
    use approx::assert_abs_diff_eq;

    #[test]
    fn energies() {
        assert_eq!(hydrogen_energy(1).unwrap().value, -0.5);
        assert_eq!(hydrogen_energy(2).unwrap().value, -0.125);
        assert_abs_diff_eq!(hydrogen_energy(10).unwrap().value, -0.005, epsilon = 1e-18);
        assert!(hydrogen_energy(0).is_err());
    }

    #[test]
    fn psi_examples() {
        assert_abs_diff_eq!(
            hydrogen_psi(1, 1.0).unwrap(),
            2.0 * (-1.0_f64).exp(),
            epsilon = 1e-15
        );
        assert_eq!(hydrogen_psi(3, 0.0).unwrap(), 0.0);
        assert_abs_diff_eq!(hydrogen_psi(2, 2.0).unwrap(), 0.0, epsilon = 1e-15);
        assert!(hydrogen_psi(1, -0.1).is_err());
        assert!(hydrogen_psi(0, 1.0).is_err());
    }

    #[test]
    fn psi_derivative_examples() {
        assert_eq!(hydrogen_psi_derivative(1, 0.0).unwrap(), 2.0);
        assert_abs_diff_eq!(
            hydrogen_psi_derivative(1, 1.0).unwrap(),
            0.0,
            epsilon = 1e-15
        );
        let h = 1e-5;
        let fd =
            (hydrogen_psi(2, 1.0 + h).unwrap() - hydrogen_psi(2, 1.0 - h).unwrap()) / (2.0 * h);
        assert_abs_diff_eq!(hydrogen_psi_derivative(2, 1.0).unwrap(), fd, epsilon = 1e-8);
        assert!(hydrogen_psi_derivative(2, -1.0).is_err());
    }

    #[test]
    fn psi_derivative_matches_finite_differences() {
        let h = 1e-5;
        for n in 1..=10 {
            for &x in &[0.3, 1.7, 4.0, 9.5, 25.0] {
                let fd =
                    (hydrogen_psi(n, x + h).unwrap() - hydrogen_psi(n, x - h).unwrap()) / (2.0 * h);
                assert_abs_diff_eq!(hydrogen_psi_derivative(n, x).unwrap(), fd, epsilon = 1e-8);
            }
        }
    }

    #[test]
    fn phi_examples() {
        let phi = hydrogen_phi(1, 0.0).unwrap();
        assert_abs_diff_eq!(phi.re, (2.0 / PI).sqrt(), epsilon = 1e-15);
        assert_eq!(phi.im, 0.0);
        let phi = hydrogen_phi(1, 1.0).unwrap();
        assert_abs_diff_eq!(phi.re, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(phi.im, -(2.0 / PI).sqrt() / 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(phi.im, -0.398942, epsilon = 1e-6);
        let phi = hydrogen_phi(4, 0.5).unwrap();
        assert_abs_diff_eq!(
            phi.norm_sqr(),
            hydrogen_gamma(4, 0.5).unwrap(),
            epsilon = 1e-12
        );
    }

    #[test]
    fn rho_and_gamma_examples() {
        assert_abs_diff_eq!(
            hydrogen_rho(1, 1.0).unwrap(),
            4.0 * (-2.0_f64).exp(),
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(hydrogen_rho(2, 2.0).unwrap(), 0.0, epsilon = 1e-30);
        assert_abs_diff_eq!(hydrogen_gamma(1, 0.0).unwrap(), 2.0 / PI);
        assert_abs_diff_eq!(hydrogen_gamma(3, 0.0).unwrap(), 6.0 / PI, epsilon = 1e-15);
        assert_abs_diff_eq!(hydrogen_gamma(3, 0.0).unwrap(), 1.909859, epsilon = 1e-6);

        let cfg = QuadratureConfig::default();
        let norm = integrate(
            |x| hydrogen_rho(1, x).unwrap(),
            IntegrationDomain::SemiInfinite(0.0),
            &cfg,
        )
        .unwrap();
        assert_abs_diff_eq!(norm.value, 1.0, epsilon = 1e-10);
        let norm = integrate(
            |p| hydrogen_gamma(2, p).unwrap(),
            IntegrationDomain::WholeLine,
            &cfg,
        )
        .unwrap();
        assert_abs_diff_eq!(norm.value, 1.0, epsilon = 1e-10);
    }

    #[test]
    fn residual_examples() {
        assert!(schrodinger_residual(1, 1.0, 1e-4).unwrap() <= 1e-6);
        assert!(schrodinger_residual(3, 5.0, 1e-4).unwrap() <= 1e-6);
        assert!(schrodinger_residual(1, 0.5, 1e-4).unwrap() <= 1e-6);
        assert!(schrodinger_residual(1, 2e-4, 1e-4).is_err());
        assert!(schrodinger_residual(1, 1.0, 0.0).is_err());
    }

    #[test]
    fn residual_detects_wrong_energy() {
        // psi_2 does not solve the equation with E_1
        let h = 1e-4;
        let psi = |x| hydrogen_psi(2, x).unwrap();
        let x = 1.0;
        let second = (-psi(x + 2.0 * h) + 16.0 * psi(x + h) - 30.0 * psi(x) + 16.0 * psi(x - h)
            - psi(x - 2.0 * h))
            / (12.0 * h * h);
        let wrong = (-0.5 * second - psi(x) / x + 0.5 * psi(x)).abs();
        assert!(wrong > 1e-2);
    }

    #[test]
    fn well_examples() {
        let s = BoundState::well(1, 1.0).unwrap();
        assert_abs_diff_eq!(well_psi(&s, 0.0).unwrap(), 2.0_f64.sqrt(), epsilon = 1e-15);
        let s2 = BoundState::well(2, 1.0).unwrap();
        assert_abs_diff_eq!(well_psi(&s2, 0.0).unwrap(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(well_psi(&s2, 0.5).unwrap(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(well_psi(&s2, -0.5).unwrap(), 0.0, epsilon = 1e-15);
        assert!(well_psi(&s, 0.51).is_err());
        assert!(well_psi(&BoundState::hydrogen(1).unwrap(), 0.0).is_err());
        assert!(BoundState::well(1, 0.0).is_err());
        assert!(BoundState::well(1, -2.0).is_err());

        let s = BoundState::well(1, 2.0).unwrap();
        let norm = integrate(
            |x| well_psi(&s, x).unwrap().powi(2),
            s.position_domain(),
            &QuadratureConfig::default(),
        )
        .unwrap();
        assert_abs_diff_eq!(norm.value, 1.0, epsilon = 1e-12);
        // positive near the left wall
        assert!(well_psi(&BoundState::well(3, 1.0).unwrap(), -0.45).unwrap() > 0.0);
    }

    #[test]
    fn cutoff_tail_is_negligible() {
        for n in 1..=20 {
            let xc = hydrogen_cutoff(n);
            assert!(hydrogen_rho(n, xc).unwrap() < 1e-30, "n={n}");
            assert!(
                hydrogen_psi_derivative(n, xc).unwrap().abs() < 1e-15,
                "n={n}"
            );
        }
    }
}
