//! Fisher-type solutions in the variables τ = 6t, y = √6·x.

use serde::{Deserialize, Serialize};

use super::{CatalogError, Sampler};
use crate::elliptic::{Weierstrass, WeierstrassInvariants, POLE_THRESHOLD};
use crate::equations::EquationSpec;

/// Prefactor A in u = A·z²·℘(z; 0, C). Of A ∈ {1/2, 1, 2} only A = 1 gives a
/// vanishing Fisher residual (checked in the catalog residual tests).
pub const WEIERSTRASS_AMPLITUDE: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "snake_case")]
pub enum FisherVariant {
    /// 1/(1 + c₂e^{y/√6 − 5τ/6})²
    Ablowitz { c2: f64 },
    /// ¼(1 − tanh(y/(2√6) − 5τ/12 − c))²
    U1 { c: f64 },
    /// ¼(1 − coth(y/(2√6) − 5τ/12 − c))²
    U2 { c: f64 },
    /// 1 − u₁, which solves u_τ − u_yy = −u(1 − u)
    U3 { c: f64 },
    /// 1 − u₂, same equation as u₃
    U4 { c: f64 },
    /// z²·℘(z; 0, C) with z = exp(−y/√6 + 5τ/6 + k)
    Weierstrass { big_c: f64, k_shift: f64 },
}

impl FisherVariant {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Ablowitz { .. } => "ablowitz",
            Self::U1 { .. } => "u1",
            Self::U2 { .. } => "u2",
            Self::U3 { .. } => "u3",
            Self::U4 { .. } => "u4",
            Self::Weierstrass { .. } => "weierstrass",
        }
    }
}

fn front_argument(y: f64, tau: f64, c: f64) -> f64 {
    y / (2.0 * 6f64.sqrt()) - 5.0 * tau / 12.0 - c
}

fn u1(y: f64, tau: f64, c: f64) -> Option<f64> {
    let s = 1.0 - front_argument(y, tau, c).tanh();
    Some(0.25 * s * s)
}

fn u2(y: f64, tau: f64, c: f64) -> Option<f64> {
    let th = front_argument(y, tau, c).tanh();
    if th.abs() < POLE_THRESHOLD {
        return None;
    }
    let s = 1.0 - 1.0 / th;
    Some(0.25 * s * s)
}

pub fn fisher_family(variant: FisherVariant, reflect_y: bool) -> Result<Sampler, CatalogError> {
    let sqrt6 = 6f64.sqrt();
    let (params, equation, note, eval): (Vec<(&str, f64)>, _, &str, Box<dyn Fn(f64, f64) -> Option<f64> + Send + Sync>) =
        match variant {
            FisherVariant::Ablowitz { c2 } => (
                vec![("c2", c2)],
                EquationSpec::Fisher,
                "singular where 1 + c2·e^(y/√6 − 5τ/6) = 0 (only for c2 < 0)",
                Box::new(move |y, tau| {
                    if c2 == 0.0 {
                        return Some(1.0);
                    }
                    let d = 1.0 + c2 * (y / sqrt6 - 5.0 * tau / 6.0).exp();
                    if d.abs() < POLE_THRESHOLD {
                        return None;
                    }
                    Some(1.0 / (d * d))
                }),
            ),
            FisherVariant::U1 { c } => {
                (vec![("c", c)], EquationSpec::Fisher, "everywhere defined", Box::new(move |y, tau| u1(y, tau, c)))
            }
            FisherVariant::U2 { c } => (
                vec![("c", c)],
                EquationSpec::Fisher,
                "singular on the line y/(2√6) − 5τ/12 = c",
                Box::new(move |y, tau| u2(y, tau, c)),
            ),
            FisherVariant::U3 { c } => (
                vec![("c", c)],
                EquationSpec::FisherReversed,
                "everywhere defined",
                Box::new(move |y, tau| u1(y, tau, c).map(|u| 1.0 - u)),
            ),
            FisherVariant::U4 { c } => (
                vec![("c", c)],
                EquationSpec::FisherReversed,
                "singular on the line y/(2√6) − 5τ/12 = c",
                Box::new(move |y, tau| u2(y, tau, c).map(|u| 1.0 - u)),
            ),
            FisherVariant::Weierstrass { big_c, k_shift } => {
                if big_c == 0.0 {
                    return Err(CatalogError::Usage("the Weierstrass family needs C ≠ 0".into()));
                }
                let wp = Weierstrass::new(WeierstrassInvariants::new(0.0, big_c))?;
                (
                    vec![("C", big_c), ("k", k_shift)],
                    EquationSpec::Fisher,
                    "undefined at the real poles z = 2mω of ℘; bounded for z below the first pole",
                    Box::new(move |y, tau| {
                        let z = (-y / sqrt6 + 5.0 * tau / 6.0 + k_shift).exp();
                        let (p, _) = wp.eval(z)?;
                        Some(WEIERSTRASS_AMPLITUDE * z * z * p)
                    }),
                )
            }
        };
    let mut params = params;
    params.push(("reflect_y", if reflect_y { 1.0 } else { 0.0 }));
    let s = Sampler::new(format!("fisher/{}", variant.name()), &params, equation, note, eval).in_variables("y", "tau");
    Ok(if reflect_y { s.reflected() } else { s })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneralizedVariant {
    Tanh,
    Coth,
}

/// u = (c₁²/4)(1 + tanh(c₁y/(2√6) + c₁(2c₁ − 3)τ/12 − c))², or with coth.
///
/// The root √u entering the equation is (c₁/2)(1 + tanh(…)), so c₁ < 0 pairs
/// with the negative root branch. The coth variant flips the sign of that root
/// across its singular line and is kept only on the side where the branch
/// matches, except at c₁ = −1 where the root term drops out.
pub fn generalized_fisher(c1: f64, variant: GeneralizedVariant, c: f64, reflect_y: bool) -> Result<Sampler, CatalogError> {
    if !c1.is_finite() || c1 == 0.0 {
        return Err(CatalogError::Usage("c1 must be finite and nonzero".into()));
    }
    let sqrt6 = 6f64.sqrt();
    let amp = 0.25 * c1 * c1;
    let arg = move |y: f64, tau: f64| c1 * y / (2.0 * sqrt6) + c1 * (2.0 * c1 - 3.0) * tau / 12.0 - c;
    let one_sided = c1 != -1.0;
    let eval: Box<dyn Fn(f64, f64) -> Option<f64> + Send + Sync> = match variant {
        GeneralizedVariant::Tanh => Box::new(move |y, tau| {
            let s = 1.0 + arg(y, tau).tanh();
            Some(amp * s * s)
        }),
        GeneralizedVariant::Coth => Box::new(move |y, tau| {
            let a = arg(y, tau);
            let th = a.tanh();
            if th.abs() < POLE_THRESHOLD || (one_sided && a < 0.0) {
                return None;
            }
            let s = 1.0 + 1.0 / th;
            Some(amp * s * s)
        }),
    };
    let name = match variant {
        GeneralizedVariant::Tanh => "tanh",
        GeneralizedVariant::Coth => "coth",
    };
    let s = Sampler::new(
        format!("generalized_fisher/{name}"),
        &[("c1", c1), ("c", c), ("reflect_y", if reflect_y { 1.0 } else { 0.0 })],
        EquationSpec::GeneralizedFisher { c1, root_sign: if c1 < 0.0 { -1.0 } else { 1.0 } },
        match variant {
            GeneralizedVariant::Tanh => "everywhere defined",
            GeneralizedVariant::Coth => "coth: masked on and (for c1 ≠ −1) behind its singular line",
        },
        eval,
    )
    .in_variables("y", "tau");
    Ok(if reflect_y { s.reflected() } else { s })
}

/// u = 12[(4 ± √6)x² + 10(12 ± 5√6)t]/(x² + 10(3 ± √6)t)², solving u_t − u_xx = −u².
pub fn quadratic_rational(sign: f64) -> Result<Sampler, CatalogError> {
    if sign != 1.0 && sign != -1.0 {
        return Err(CatalogError::Usage(format!("sign must be ±1, got {sign}")));
    }
    let r = sign * 6f64.sqrt();
    Ok(Sampler::new(
        "quadratic_rational",
        &[("sign", sign)],
        EquationSpec::QuadraticDecay,
        "singular where x² + 10(3 ± √6)t = 0, i.e. on x² = −10(3 ± √6)t for t ≤ 0",
        move |x, t| {
            let d = x * x + 10.0 * (3.0 + r) * t;
            if d.abs() < POLE_THRESHOLD {
                return None;
            }
            Some(12.0 * ((4.0 + r) * x * x + 10.0 * (12.0 + 5.0 * r) * t) / (d * d))
        },
    ))
}
