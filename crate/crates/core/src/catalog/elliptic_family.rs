//! Solutions u = w_x·φ(w) built on the chain, for w = x² + 6t and for the
//! cosh/cos profiles of the cubic equations with a linear term.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::chain::{hat, phi_chain, tilde, PhiState};
use super::{CatalogError, Sampler};
use crate::equations::EquationSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolutionKind {
    /// uₙ = 2x·φ⁽ⁿ⁾
    Plain,
    /// ũₙ = 2x·√Cₙ/φ⁽ⁿ⁾, odd n
    Tilde,
    /// ûₙ = 2x·√Bₙ/φ⁽ⁿ⁾, even n
    Hat,
}

impl SolutionKind {
    pub fn state(self, index: usize) -> Result<PhiState, CatalogError> {
        match self {
            Self::Plain => Ok(phi_chain(index)),
            Self::Tilde => tilde(index),
            Self::Hat => hat(index),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Plain => "plain",
            Self::Tilde => "tilde",
            Self::Hat => "hat",
        }
    }
}

impl fmt::Display for SolutionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SolutionKind {
    type Err = CatalogError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "plain" | "u" => Ok(Self::Plain),
            "tilde" => Ok(Self::Tilde),
            "hat" => Ok(Self::Hat),
            other => Err(CatalogError::Usage(format!("unknown solution kind `{other}` (plain, tilde, hat)"))),
        }
    }
}

/// u_t − u_xx = −2u³ for plain and tilde kinds, +2u³ for hat kinds.
fn cubic_equation(kind: SolutionKind, linear: f64) -> EquationSpec {
    let cubic = if kind == SolutionKind::Hat { 2.0 } else { -2.0 };
    EquationSpec::Polynomial { coeffs: vec![0.0, linear, 0.0, cubic] }
}

pub fn elliptic_solution(kind: SolutionKind, index: usize) -> Result<Sampler, CatalogError> {
    let state = kind.state(index)?;
    let equation = match kind {
        SolutionKind::Hat => cubic_equation(kind, 0.0),
        _ => EquationSpec::PowerLaw { n: 3.0 },
    };
    Ok(Sampler::new(
        format!("elliptic/{kind}"),
        &[("index", index as f64)],
        equation,
        "y = x² + 6t; undefined at the poles of the chain element",
        move |x, t| {
            let (phi, _) = state.eval(x * x + 6.0 * t)?;
            Some(2.0 * x * phi)
        },
    ))
}

/// u = w_x·φ(w) solving u_t − u_xx = −2(u³ + λ₁u) (plain, tilde) or
/// u_t − u_xx = 2(u³ + εu) (hat), where `sign` is λ₁ or ε respectively.
///
/// w = k₁cosh(x + k₂)e^{3t} when the linear coefficient of the right-hand side
/// is +2, and w = k₁cos(x + k₂)e^{−3t} when it is −2.
pub fn cosh_cos_solution(sign: f64, k1: f64, k2: f64, kind: SolutionKind, index: usize) -> Result<Sampler, CatalogError> {
    if sign != 1.0 && sign != -1.0 {
        return Err(CatalogError::Usage(format!("sign must be ±1, got {sign}")));
    }
    if k1 == 0.0 || !k1.is_finite() {
        return Err(CatalogError::Usage("k1 must be finite and nonzero".into()));
    }
    let state = kind.state(index)?;
    let linear = if kind == SolutionKind::Hat { 2.0 * sign } else { -2.0 * sign };
    let hyperbolic = linear > 0.0;
    let profile = if hyperbolic { "cosh" } else { "cos" };
    Ok(Sampler::new(
        format!("elliptic_{profile}/{kind}"),
        &[("sign", sign), ("k1", k1), ("k2", k2), ("index", index as f64)],
        cubic_equation(kind, linear),
        format!("w = k1·{profile}(x + k2)·e^{{{}3t}}; undefined at the poles of the chain element", if hyperbolic { "" } else { "-" }),
        move |x, t| {
            let s = x + k2;
            let (w, wx) = if hyperbolic {
                let e = (3.0 * t).exp();
                (k1 * s.cosh() * e, k1 * s.sinh() * e)
            } else {
                let e = (-3.0 * t).exp();
                (k1 * s.cos() * e, -k1 * s.sin() * e)
            };
            let (phi, _) = state.eval(w)?;
            Some(wx * phi)
        },
    ))
}
