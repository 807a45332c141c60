//! Plane waves of the three-term equation, solitary waves and the bell profile.

use std::f64::consts::SQRT_2;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{real_pow, CatalogError, PotentialField, Sampler};
use crate::elliptic::POLE_THRESHOLD;
use crate::equations::{plane_wave_equation, derived_constants, EquationSpec};

/// u = c₁^k/(1 + c₂e^{−c₁x − ((2k+1)c₁² − λ₂c₁)t})^k, solving the equation from `plane_wave_equation`.
pub fn plane_wave(n: f64, c1: f64, c2: f64, lambda2: f64) -> Result<Sampler, CatalogError> {
    if c1 == 0.0 {
        return Err(CatalogError::Usage("c1 must be nonzero".into()));
    }
    let eq = plane_wave_equation(n, c1, lambda2)?;
    let k = eq.k;
    let rate = (2.0 * k + 1.0) * c1 * c1 - lambda2 * c1;
    Ok(Sampler::new(
        "plane_wave",
        &[("n", n), ("c1", c1), ("c2", c2), ("lambda2", lambda2)],
        eq.spec,
        "for fractional k, masked where c1/(1 + c2·e^(...)) ≤ 0; singular where the denominator vanishes",
        move |x, t| {
            let base = if c2 == 0.0 {
                c1
            } else {
                let d = 1.0 + c2 * (-c1 * x - rate * t).exp();
                if d.abs() < POLE_THRESHOLD {
                    return None;
                }
                c1 / d
            };
            real_pow(base, k)
        },
    ))
}

/// z = e^{c₁x + kc₁²t} + c₂e^{(λ₂c₁ − (k+1)c₁²)t} with its x-derivative; u = (z_x/z)^k is the plane wave.
pub fn plane_wave_potential(n: f64, c1: f64, c2: f64, lambda2: f64) -> Result<PotentialField, CatalogError> {
    let k = derived_constants(n)?.k;
    Ok(PotentialField::new("plane_wave", move |x, t| {
        let e1 = (c1 * x + k * c1 * c1 * t).exp();
        let e2 = ((lambda2 * c1 - (k + 1.0) * c1 * c1) * t).exp();
        Some((e1 + c2 * e2, c1 * e1))
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolitaryBranch {
    Tanh,
    TanhInverse,
    Tan,
    Rational,
}

impl SolitaryBranch {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Tanh => "tanh",
            Self::TanhInverse => "tanh_inverse",
            Self::Tan => "tan",
            Self::Rational => "rational",
        }
    }
}

impl fmt::Display for SolitaryBranch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SolitaryBranch {
    type Err = CatalogError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "tanh" => Ok(Self::Tanh),
            "tanh_inverse" => Ok(Self::TanhInverse),
            "tan" => Ok(Self::Tan),
            "rational" => Ok(Self::Rational),
            other => Err(CatalogError::Usage(format!(
                "unknown branch `{other}` (tanh, tanh_inverse, tan, rational)"
            ))),
        }
    }
}

/// Traveling waves of u_τ − u_yy = (1 + νu^{1−n})(−(n+1)uⁿ + ν(n−3)u + σu^{(n+1)/2}).
///
/// The tan branch runs its argument as C − b(y − στ/√2); with +b it does not
/// solve the equation. The rational branch is u = (2/((n−1)²s²))^{1/(n−1)} with
/// s = y − sign(n−1)·στ/√2 + C, defined for s > 0.
pub fn solitary_wave(n: f64, nu: f64, sigma: f64, branch: SolitaryBranch, c: f64) -> Result<Sampler, CatalogError> {
    derived_constants(n)?;
    let ok = match branch {
        SolitaryBranch::Tanh | SolitaryBranch::TanhInverse => nu < 0.0,
        SolitaryBranch::Tan => nu > 0.0,
        SolitaryBranch::Rational => nu == 0.0,
    };
    if !ok {
        let need = match branch {
            SolitaryBranch::Tanh | SolitaryBranch::TanhInverse => "nu < 0",
            SolitaryBranch::Tan => "nu > 0",
            SolitaryBranch::Rational => "nu = 0",
        };
        return Err(CatalogError::Usage(format!("branch {branch} requires {need}, got nu = {nu}")));
    }
    let m = n - 1.0;
    let v = sigma / SQRT_2;
    let b = m * (nu.abs() / 2.0).sqrt();
    let amp = real_pow(nu.abs(), 1.0 / m).unwrap_or(0.0);
    let eval: Box<dyn Fn(f64, f64) -> Option<f64> + Send + Sync> = match branch {
        SolitaryBranch::Tanh | SolitaryBranch::TanhInverse => {
            let p = if branch == SolitaryBranch::Tanh { 2.0 / m } else { -2.0 / m };
            Box::new(move |y, tau| {
                let s = (b * (y - v * tau) + c).tanh();
                if s <= 0.0 {
                    return None;
                }
                Some(amp * s.powf(p))
            })
        }
        SolitaryBranch::Tan => Box::new(move |y, tau| {
            let arg = c - b * (y - v * tau);
            let (sin, cos) = arg.sin_cos();
            if cos.abs() < POLE_THRESHOLD {
                return None;
            }
            let s = sin / cos;
            if s <= 0.0 {
                return None;
            }
            Some(amp * s.powf(2.0 / m))
        }),
        SolitaryBranch::Rational => {
            let vr = m.signum() * v;
            Box::new(move |y, tau| {
                let s = y - vr * tau + c;
                if s <= 0.0 {
                    return None;
                }
                Some((2.0 / (m * m * s * s)).powf(1.0 / m))
            })
        }
    };
    Ok(Sampler::new(
        format!("solitary/{branch}"),
        &[("n", n), ("nu", nu), ("sigma", sigma), ("C", c)],
        EquationSpec::SigmaFamily { n, nu, sigma },
        "masked where the base of the fractional power is ≤ 0",
        eval,
    )
    .in_variables("y", "tau"))
}

/// ũ = 3/(2cosh²(½(x − εt/√6) + C)), paired with u_t − u_xx = u(1 − u + ε(3/2 − u)^{1/2}).
///
/// Only ε = 0 makes this an exact solution; see the acceptance notes.
pub fn bell(epsilon: f64, c: f64) -> Sampler {
    let v = epsilon / 6f64.sqrt();
    Sampler::new(
        "bell",
        &[("epsilon", epsilon), ("C", c)],
        EquationSpec::PerturbedFisher { epsilon },
        "everywhere defined; 0 < u ≤ 3/2",
        move |x, t| {
            let ch = (0.5 * (x - v * t) + c).cosh();
            Some(1.5 / (ch * ch))
        },
    )
}
