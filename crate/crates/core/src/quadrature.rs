//! Adaptive Gauss-Legendre quadrature on finite, semi-infinite and whole-line
//! domains, and a direct numerical Fourier transform built on it.
//!
//! Each panel is integrated twice: once with an `n`-point Gauss-Legendre rule
//! over the whole panel and once with the same rule on its two halves. The
//! halved value is kept and the difference is the error estimate. Panels are
//! bisected largest-error first until the global tolerance is met.
//!
//! Infinite domains are mapped onto bounded ones before refinement:
//! `x = a + t/(1-t)` for `[a, inf)` and `p = t/(1-t^2)` for the whole line.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Multiple of machine epsilon times `int |f|` below which a panel's error
/// estimate is considered round-off and further bisection is futile.
const ROUNDOFF_FLOOR: f64 = 50.0 * f64::EPSILON;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Gauss nodes per panel.
    pub panel_order: usize,
    /// Maximum bisection depth of any panel.
    pub max_depth: usize,
    /// Total number of bisections allowed for one integral.
    pub max_subdivisions: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            rel_tol: 1e-10,
            panel_order: 15,
            max_depth: 30,
            max_subdivisions: 2000,
        }
    }
}

impl QuadratureConfig {
    pub fn with_tolerances(abs_tol: f64, rel_tol: f64) -> Self {
        Self {
            abs_tol,
            rel_tol,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("abs_tol", self.abs_tol), ("rel_tol", self.rel_tol)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::OutOfDomain {
                    name,
                    value: v,
                    domain: "(0, inf)".into(),
                });
            }
        }
        if self.panel_order < 5 {
            return Err(Error::InvalidArgument(format!(
                "panel_order must be >= 5, got {}",
                self.panel_order
            )));
        }
        if self.max_depth == 0 {
            return Err(Error::InvalidArgument("max_depth must be >= 1".into()));
        }
        Ok(())
    }

    /// Tolerance the total error estimate must meet for a result of size `value`.
    pub fn target(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum IntegrationDomain {
    Finite(f64, f64),
    SemiInfinite(f64),
    WholeLine,
}

impl IntegrationDomain {
    pub fn validate(&self) -> Result<()> {
        match *self {
            IntegrationDomain::Finite(a, b) if !(a < b && a.is_finite() && b.is_finite()) => Err(
                Error::InvalidArgument(format!("finite domain needs a < b, got [{a}, {b}]")),
            ),
            IntegrationDomain::SemiInfinite(a) if !a.is_finite() => Err(Error::InvalidArgument(
                format!("semi-infinite domain needs a finite start, got {a}"),
            )),
            _ => Ok(()),
        }
    }

    /// Bounds of the integration variable after the rational substitution.
    fn mapped_bounds(&self) -> (f64, f64) {
        match *self {
            IntegrationDomain::Finite(a, b) => (a, b),
            IntegrationDomain::SemiInfinite(_) => (0.0, 1.0),
            IntegrationDomain::WholeLine => (-1.0, 1.0),
        }
    }

    /// Maps `t` to the original abscissa, returning it with the Jacobian.
    #[inline]
    fn map(&self, t: f64) -> (f64, f64) {
        match *self {
            IntegrationDomain::Finite(..) => (t, 1.0),
            IntegrationDomain::SemiInfinite(a) => {
                let s = 1.0 - t;
                (a + t / s, 1.0 / (s * s))
            }
            IntegrationDomain::WholeLine => {
                let s = 1.0 - t * t;
                (t / s, (1.0 + t * t) / (s * s))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntegralResult {
    pub value: f64,
    pub error_estimate: f64,
    pub converged: bool,
    pub panels_used: usize,
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussRule {
    /// Builds the `n`-point rule by Newton iteration on `P_n`.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() <= 1e-16 {
                    let (_, d) = legendre_with_derivative(n, x);
                    dp = d;
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        Self { nodes, weights }
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Applies the rule to `g` on `[a, b]`, returning `(int g, int |g|)`.
    fn apply<G: FnMut(f64) -> Result<f64>>(&self, g: &mut G, a: f64, b: f64) -> Result<(f64, f64)> {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut sum = 0.0;
        let mut abs_sum = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            let v = g(mid + half * x)?;
            sum += w * v;
            abs_sum += w * v.abs();
        }
        Ok((sum * half, abs_sum * half))
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let nf = n as f64;
    (p1, nf * (x * p1 - p0) / (x * x - 1.0))
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    depth: usize,
    value: f64,
    error: f64,
    splittable: bool,
}

fn evaluate_panel<G: FnMut(f64) -> Result<f64>>(
    rule: &GaussRule,
    g: &mut G,
    a: f64,
    b: f64,
    depth: usize,
    max_depth: usize,
) -> Result<Panel> {
    let m = 0.5 * (a + b);
    let (coarse, _) = rule.apply(g, a, b)?;
    let (left, left_abs) = rule.apply(g, a, m)?;
    let (right, right_abs) = rule.apply(g, m, b)?;
    let value = left + right;
    let raw = (value - coarse).abs();
    let floor = ROUNDOFF_FLOOR * (left_abs + right_abs);
    Ok(Panel {
        a,
        b,
        depth,
        value,
        error: raw.max(floor),
        splittable: raw > floor && depth < max_depth,
    })
}

/// Integrates `f` over `domain` to the tolerances in `config`.
///
/// Failing to reach the tolerance is reported through
/// [`IntegralResult::converged`]; a non-finite integrand sample is an error.
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    domain: IntegrationDomain,
    config: &QuadratureConfig,
) -> Result<IntegralResult> {
    let initial = match domain {
        IntegrationDomain::WholeLine => 2,
        _ => 1,
    };
    integrate_with_panels(f, domain, config, initial)
}

/// Like [`integrate`], but starts from `initial_panels` equal panels in the
/// (mapped) integration variable.
pub fn integrate_with_panels<F: Fn(f64) -> f64>(
    f: F,
    domain: IntegrationDomain,
    config: &QuadratureConfig,
    initial_panels: usize,
) -> Result<IntegralResult> {
    config.validate()?;
    domain.validate()?;
    let rule = GaussRule::new(config.panel_order);
    let mut g = |t: f64| -> Result<f64> {
        let (x, jac) = domain.map(t);
        let v = f(x);
        if !v.is_finite() {
            return Err(Error::NonFiniteIntegrand {
                abscissa: x,
                value: v,
            });
        }
        // Far tails of mapped domains: f underflows before the Jacobian overflows.
        Ok(if v == 0.0 { 0.0 } else { v * jac })
    };

    let (lo, hi) = domain.mapped_bounds();
    let count = initial_panels.max(1);
    let width = (hi - lo) / count as f64;
    let mut panels = Vec::with_capacity(count);
    for i in 0..count {
        let a = lo + width * i as f64;
        let b = if i + 1 == count {
            hi
        } else {
            lo + width * (i + 1) as f64
        };
        panels.push(evaluate_panel(&rule, &mut g, a, b, 0, config.max_depth)?);
    }

    let mut subdivisions = 0;
    loop {
        let value: f64 = panels.iter().map(|p| p.value).sum();
        let error: f64 = panels.iter().map(|p| p.error).sum();
        if error <= config.target(value) || subdivisions >= config.max_subdivisions {
            break;
        }
        let worst = panels
            .iter()
            .enumerate()
            .filter(|(_, p)| p.splittable)
            .max_by(|(_, x), (_, y)| x.error.total_cmp(&y.error))
            .map(|(i, _)| i);
        let Some(i) = worst else { break };
        let Panel { a, b, depth, .. } = panels[i];
        let m = 0.5 * (a + b);
        panels[i] = evaluate_panel(&rule, &mut g, a, m, depth + 1, config.max_depth)?;
        panels.push(evaluate_panel(
            &rule,
            &mut g,
            m,
            b,
            depth + 1,
            config.max_depth,
        )?);
        subdivisions += 1;
    }

    panels.sort_by(|x, y| x.a.total_cmp(&y.a));
    let value: f64 = panels.iter().map(|p| p.value).sum();
    let error_estimate: f64 = panels.iter().map(|p| p.error).sum();
    Ok(IntegralResult {
        value,
        error_estimate,
        converged: error_estimate <= config.target(value),
        panels_used: panels.len(),
    })
}

/// Result of one numerical Fourier-transform evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FourierSample {
    pub amplitude: Complex64,
    pub error_estimate: f64,
    pub converged: bool,
}

/// `(1/sqrt(2 pi)) int exp(-i p x) psi(x) dx`, as separate cosine and sine
/// integrals.
///
/// On finite domains the interval is pre-split so that no panel spans more
/// than half an oscillation period (`pi/|p|`).
pub fn fourier_transform_numeric<F: Fn(f64) -> f64>(
    psi: F,
    p: f64,
    domain: IntegrationDomain,
    config: &QuadratureConfig,
) -> Result<FourierSample> {
    if !p.is_finite() {
        return Err(Error::OutOfDomain {
            name: "p",
            value: p,
            domain: "finite reals".into(),
        });
    }
    domain.validate()?;
    let panels = match domain {
        IntegrationDomain::Finite(a, b) => ((b - a) * p.abs() / PI).ceil().max(1.0) as usize,
        IntegrationDomain::SemiInfinite(_) => (4.0 * p.abs()).ceil().max(1.0) as usize,
        IntegrationDomain::WholeLine => 2 * (4.0 * p.abs()).ceil().max(1.0) as usize,
    };
    let re = integrate_with_panels(|x| (p * x).cos() * psi(x), domain, config, panels)?;
    let im = integrate_with_panels(|x| -(p * x).sin() * psi(x), domain, config, panels)?;
    let norm = (2.0 * PI).sqrt().recip();
    Ok(FourierSample {
        amplitude: Complex64::new(re.value, im.value) * norm,
        error_estimate: re.error_estimate.hypot(im.error_estimate) * norm,
        converged: re.converged && im.converged,
    })
}
