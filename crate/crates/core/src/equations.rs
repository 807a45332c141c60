//! Reaction terms f(u) for equations of the form u_t − u_xx = f(u).

use std::fmt;
use std::sync::Arc;

use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EquationError {
    #[error("term `{term}` needs a fractional power of the negative base u = {u}")]
    Domain { term: &'static str, u: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

/// A user supplied reaction term. Only its name survives serialization.
#[derive(Clone)]
pub struct Reaction {
    name: String,
    f: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl Reaction {
    pub fn new(name: impl Into<String>, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self { name: name.into(), f: Arc::new(f) }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn call(&self, u: f64) -> f64 {
        (self.f)(u)
    }
}

impl fmt::Debug for Reaction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Reaction").field("name", &self.name).finish()
    }
}

impl PartialEq for Reaction {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && Arc::ptr_eq(&self.f, &other.f)
    }
}

impl Serialize for Reaction {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.name)
    }
}

impl<'de> Deserialize<'de> for Reaction {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let name = String::deserialize(d)?;
        Err(de::Error::custom(format!(
            "custom reaction `{name}` cannot be rebuilt from JSON; use the `polynomial` variant"
        )))
    }
}

fn plus_one() -> f64 {
    1.0
}

/// The right-hand side f(u) of one equation family.
///
/// `root_sign` selects the branch of √u used by half-integer powers. The
/// potential substitution u = (z_x/z)^k makes √u a signed quantity, and
/// fronts built from a negative logarithmic derivative need the −1 branch.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "snake_case")]
pub enum EquationSpec {
    /// u(1 − u)
    Fisher,
    /// −u(1 − u), satisfied by 1 − v whenever v solves the Fisher equation
    FisherReversed,
    /// arbitrary f supplied by the caller
    KppGeneric { reaction: Reaction },
    /// α(u³ + b u² + c u), α = ±1
    CubicPolynomial { alpha: f64, b: f64, c: f64 },
    /// Σ coeffs[i]·uⁱ
    Polynomial { coeffs: Vec<f64> },
    /// −λ uⁿ with λ = 2(n+1)/(n−1)²
    PowerLaw { n: f64 },
    /// k(−(k+1)uⁿ + λ₁u + λ₂u^{(n+1)/2} + λ₃u^{(3−n)/2} + λ₄u^{2−n}), k = 2/(n−1)
    GeneralFamily {
        n: f64,
        lambda1: f64,
        lambda2: f64,
        lambda3: f64,
        lambda4: f64,
        #[serde(default = "plus_one")]
        root_sign: f64,
    },
    /// (1 + νu^{1−n})(−(n+1)uⁿ + ν(n−3)u + σu^{(n+1)/2})
    SigmaFamily { n: f64, nu: f64, sigma: f64 },
    /// u(1 − u + ε(3/2 − u)^{1/2})
    PerturbedFisher { epsilon: f64 },
    /// u(−c₁ + (c₁+1)u^{1/2} − u)
    GeneralizedFisher {
        c1: f64,
        #[serde(default = "plus_one")]
        root_sign: f64,
    },
    /// −u²
    QuadraticDecay,
}

/// k and λ of the power-law family for a given exponent n.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DerivedConstants {
    pub k: f64,
    pub lambda: f64,
}

pub fn derived_constants(n: f64) -> Result<DerivedConstants, EquationError> {
    if n == 1.0 || !n.is_finite() {
        return Err(EquationError::InvalidParameter(format!("exponent n = {n} must be finite and ≠ 1")));
    }
    let d = n - 1.0;
    Ok(DerivedConstants { k: 2.0 / d, lambda: 2.0 * (n + 1.0) / (d * d) })
}

fn is_integer(p: f64) -> bool {
    p.fract() == 0.0 && p.abs() < i32::MAX as f64
}

/// uᵖ on the real line. Half-integer powers use the root `root_sign·√u`;
/// other fractional powers only exist for u ≥ 0 on the principal branch.
fn power(u: f64, p: f64, root_sign: f64, term: &'static str) -> Result<f64, EquationError> {
    if is_integer(p) {
        return Ok(u.powi(p as i32));
    }
    if u < 0.0 {
        return Err(EquationError::Domain { term, u });
    }
    if u == 0.0 && p < 0.0 {
        return Ok(f64::INFINITY);
    }
    let twice = 2.0 * p;
    if is_integer(twice) {
        return Ok((root_sign * u.sqrt()).powi(twice as i32));
    }
    if root_sign < 0.0 {
        return Err(EquationError::InvalidParameter(format!(
            "negative root branch is only defined for half-integer powers (term `{term}`)"
        )));
    }
    Ok(u.powf(p))
}

fn check_n(n: f64) -> Result<(), EquationError> {
    derived_constants(n).map(|_| ())
}

fn check_sign(s: f64) -> Result<(), EquationError> {
    if s == 1.0 || s == -1.0 {
        Ok(())
    } else {
        Err(EquationError::InvalidParameter(format!("root_sign = {s} must be ±1")))
    }
}

impl EquationSpec {
    pub fn validate(&self) -> Result<(), EquationError> {
        match self {
            Self::CubicPolynomial { alpha, .. } if *alpha != 1.0 && *alpha != -1.0 => {
                Err(EquationError::InvalidParameter(format!("alpha = {alpha} must be ±1")))
            }
            Self::PowerLaw { n } | Self::SigmaFamily { n, .. } => check_n(*n),
            Self::GeneralFamily { n, root_sign, .. } => {
                check_n(*n)?;
                check_sign(*root_sign)
            }
            Self::GeneralizedFisher { root_sign, .. } => check_sign(*root_sign),
            _ => Ok(()),
        }
    }

    /// Short machine name of the variant.
    pub fn name(&self) -> &'static str {
        match self {
            Self::Fisher => "fisher",
            Self::FisherReversed => "fisher_reversed",
            Self::KppGeneric { .. } => "kpp_generic",
            Self::CubicPolynomial { .. } => "cubic_polynomial",
            Self::Polynomial { .. } => "polynomial",
            Self::PowerLaw { .. } => "power_law",
            Self::GeneralFamily { .. } => "general_family",
            Self::SigmaFamily { .. } => "sigma_family",
            Self::PerturbedFisher { .. } => "perturbed_fisher",
            Self::GeneralizedFisher { .. } => "generalized_fisher",
            Self::QuadraticDecay => "quadratic_decay",
        }
    }

    /// Human-readable form of the equation.
    pub fn formula(&self) -> String {
        match self {
            Self::Fisher => "u_t - u_xx = u(1 - u)".into(),
            Self::FisherReversed => "u_t - u_xx = -u(1 - u)".into(),
            Self::KppGeneric { reaction } => format!("u_t - u_xx = {}(u)", reaction.name()),
            Self::CubicPolynomial { alpha, b, c } => format!("u_t - u_xx = {alpha}(u^3 + {b}u^2 + {c}u)"),
            Self::Polynomial { coeffs } => {
                let terms: Vec<String> = coeffs
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| **c != 0.0)
                    .map(|(i, c)| match i {
                        0 => format!("{c}"),
                        1 => format!("{c}u"),
                        _ => format!("{c}u^{i}"),
                    })
                    .collect();
                let rhs = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
                format!("u_t - u_xx = {rhs}")
            }
            Self::PowerLaw { n } => match derived_constants(*n) {
                Ok(d) => format!("u_t - u_xx = -{}u^{n}", d.lambda),
                Err(_) => format!("u_t - u_xx = -lambda u^{n} (invalid n)"),
            },
            Self::GeneralFamily { n, lambda1, lambda2, lambda3, lambda4, root_sign } => format!(
                "u_t - u_xx = k(-(k+1)u^{n} + {lambda1}u + {lambda2}u^(({n}+1)/2) + {lambda3}u^((3-{n})/2) + {lambda4}u^(2-{n})), k = 2/({n}-1), root sign {root_sign}"
            ),
            Self::SigmaFamily { n, nu, sigma } => format!(
                "u_t - u_xx = (1 + {nu}u^(1-{n}))(-({n}+1)u^{n} + {nu}({n}-3)u + {sigma}u^(({n}+1)/2))"
            ),
            Self::PerturbedFisher { epsilon } => format!("u_t - u_xx = u(1 - u + {epsilon}(3/2 - u)^(1/2))"),
            Self::GeneralizedFisher { c1, root_sign } => {
                format!("u_t - u_xx = u(-{c1} + ({c1}+1)u^(1/2) - u), root sign {root_sign}")
            }
            Self::QuadraticDecay => "u_t - u_xx = -u^2".into(),
        }
    }

    /// f(u).
    pub fn rhs(&self, u: f64) -> Result<f64, EquationError> {
        rhs_eval(self, u)
    }
}

/// The reaction term f(u) of `spec` at `u`.
pub fn rhs_eval(spec: &EquationSpec, u: f64) -> Result<f64, EquationError> {
    use EquationSpec::*;
    Ok(match spec {
        Fisher => u * (1.0 - u),
        FisherReversed => -u * (1.0 - u),
        KppGeneric { reaction } => reaction.call(u),
        CubicPolynomial { alpha, b, c } => alpha * (u * u * u + b * u * u + c * u),
        Polynomial { coeffs } => coeffs.iter().rev().fold(0.0, |acc, c| acc * u + c),
        PowerLaw { n } => {
            let d = derived_constants(*n)?;
            -d.lambda * power(u, *n, 1.0, "u^n")?
        }
        GeneralFamily { n, lambda1, lambda2, lambda3, lambda4, root_sign } => {
            let k = derived_constants(*n)?.k;
            let mut acc = -(k + 1.0) * power(u, *n, *root_sign, "u^n")? + lambda1 * u;
            if *lambda2 != 0.0 {
                acc += lambda2 * power(u, 0.5 * (n + 1.0), *root_sign, "u^((n+1)/2)")?;
            }
            if *lambda3 != 0.0 {
                acc += lambda3 * power(u, 0.5 * (3.0 - n), *root_sign, "u^((3-n)/2)")?;
            }
            if *lambda4 != 0.0 {
                acc += lambda4 * power(u, 2.0 - n, *root_sign, "u^(2-n)")?;
            }
            k * acc
        }
        SigmaFamily { n, nu, sigma } => {
            check_n(*n)?;
            let factor = if *nu == 0.0 { 1.0 } else { 1.0 + nu * power(u, 1.0 - n, 1.0, "u^(1-n)")? };
            let mut inner = -(n + 1.0) * power(u, *n, 1.0, "u^n")? + nu * (n - 3.0) * u;
            if *sigma != 0.0 {
                inner += sigma * power(u, 0.5 * (n + 1.0), 1.0, "u^((n+1)/2)")?;
            }
            factor * inner
        }
        PerturbedFisher { epsilon } => {
            let root = power(1.5 - u, 0.5, 1.0, "(3/2 - u)^(1/2)")?;
            u * (1.0 - u + epsilon * root)
        }
        GeneralizedFisher { c1, root_sign } => {
            let root = power(u, 0.5, *root_sign, "u^(1/2)")?;
            u * (-c1 + (c1 + 1.0) * root - u)
        }
        QuadraticDecay => -u * u,
    })
}

/// Numerical check of f(0) = f(1) = 0, f′(0) = α > 0 and f′(u) < α on (0, 1).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KppReport {
    pub f0: f64,
    pub f1: f64,
    pub f0_zero: bool,
    pub f1_zero: bool,
    pub fprime0: f64,
    pub alpha_positive: bool,
    pub interior_bound_ok: bool,
}

impl KppReport {
    pub fn passes(&self) -> bool {
        self.f0_zero && self.f1_zero && self.alpha_positive && self.interior_bound_ok
    }
}

const KPP_STEP: f64 = 1e-6;
const KPP_ZERO_TOL: f64 = 1e-12;
const KPP_INTERIOR_SAMPLES: usize = 999;

fn derivative(spec: &EquationSpec, u: f64) -> Option<f64> {
    let h = KPP_STEP;
    match (spec.rhs(u - h), spec.rhs(u + h)) {
        (Ok(a), Ok(b)) => Some((b - a) / (2.0 * h)),
        _ => {
            // one-sided second order, for half-line reaction terms
            let f0 = spec.rhs(u).ok()?;
            let f1 = spec.rhs(u + h).ok()?;
            let f2 = spec.rhs(u + 2.0 * h).ok()?;
            Some((-3.0 * f0 + 4.0 * f1 - f2) / (2.0 * h))
        }
    }
}

pub fn kpp_check(spec: &EquationSpec) -> KppReport {
    let f0 = spec.rhs(0.0).unwrap_or(f64::NAN);
    let f1 = spec.rhs(1.0).unwrap_or(f64::NAN);
    let fprime0 = derivative(spec, 0.0).unwrap_or(f64::NAN);
    let interior_bound_ok = fprime0.is_finite()
        && (1..=KPP_INTERIOR_SAMPLES).all(|i| {
            let u = i as f64 / (KPP_INTERIOR_SAMPLES + 1) as f64;
            matches!(derivative(spec, u), Some(d) if d < fprime0)
        });
    KppReport {
        f0,
        f1,
        f0_zero: f0.abs() < KPP_ZERO_TOL,
        f1_zero: f1.abs() < KPP_ZERO_TOL,
        fprime0,
        alpha_positive: fprime0 > 0.0,
        interior_bound_ok,
    }
}

/// The plane-wave equation with a three-term reaction and its KPP data.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlaneWaveEquation {
    pub spec: EquationSpec,
    pub n: f64,
    pub c1: f64,
    pub lambda2: f64,
    pub k: f64,
    /// λ₂ = (k+1)(c₁+1)
    pub kpp_condition: bool,
    /// k + 1 − k c₁, reported when the KPP condition holds
    pub velocity: Option<f64>,
}

/// u_t − u_xx = −k(k+1)uⁿ + λ₂k u^{(n+1)/2} + ((k+1)c₁² − λ₂c₁)k u.
pub fn plane_wave_equation(n: f64, c1: f64, lambda2: f64) -> Result<PlaneWaveEquation, EquationError> {
    let k = derived_constants(n)?.k;
    let lambda1 = (k + 1.0) * c1 * c1 - lambda2 * c1;
    let spec = EquationSpec::GeneralFamily {
        n,
        lambda1,
        lambda2,
        lambda3: 0.0,
        lambda4: 0.0,
        root_sign: if c1 < 0.0 { -1.0 } else { 1.0 },
    };
    let target = (k + 1.0) * (c1 + 1.0);
    let kpp_condition = (lambda2 - target).abs() <= 1e-12 * (1.0 + target.abs());
    Ok(PlaneWaveEquation {
        spec,
        n,
        c1,
        lambda2,
        k,
        kpp_condition,
        velocity: kpp_condition.then_some(k + 1.0 - k * c1),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fisher_zeros() {
        assert_eq!(rhs_eval(&EquationSpec::Fisher, 0.0).unwrap(), 0.0);
        assert_eq!(rhs_eval(&EquationSpec::Fisher, 1.0).unwrap(), 0.0);
    }

    #[test]
    fn power_law_cubic() {
        assert_eq!(rhs_eval(&EquationSpec::PowerLaw { n: 3.0 }, 2.0).unwrap(), -16.0);
    }

    #[test]
    fn quadratic_decay_value() {
        assert_eq!(rhs_eval(&EquationSpec::QuadraticDecay, 3.0).unwrap(), -9.0);
    }

    #[test]
    fn derived_constants_values() {
        let d = derived_constants(3.0).unwrap();
        assert_eq!((d.k, d.lambda), (1.0, 2.0));
        let d = derived_constants(2.0).unwrap();
        assert_eq!((d.k, d.lambda), (2.0, 6.0));
        let d = derived_constants(-1.0).unwrap();
        assert_eq!((d.k, d.lambda), (-1.0, 0.0));
        assert!(derived_constants(1.0).is_err());
        for n in [-3.5, 0.25, 2.0, 7.0] {
            let d = derived_constants(n).unwrap();
            assert!((d.k * (n - 1.0) - 2.0).abs() < 1e-15);
        }
    }

    #[test]
    fn fractional_power_of_negative_base_names_term() {
        let spec = EquationSpec::GeneralFamily {
            n: 2.0,
            lambda1: 0.0,
            lambda2: 1.0,
            lambda3: 0.0,
            lambda4: 0.0,
            root_sign: 1.0,
        };
        match rhs_eval(&spec, -0.5) {
            Err(EquationError::Domain { term, .. }) => assert_eq!(term, "u^((n+1)/2)"),
            other => panic!("unexpected {other:?}"),
        }
        let pf = EquationSpec::PerturbedFisher { epsilon: 0.3 };
        assert!(matches!(rhs_eval(&pf, 2.0), Err(EquationError::Domain { .. })));
    }

    #[test]
    fn validation() {
        assert!(EquationSpec::CubicPolynomial { alpha: 2.0, b: 0.0, c: 0.0 }.validate().is_err());
        assert!(EquationSpec::CubicPolynomial { alpha: -1.0, b: 0.0, c: 0.0 }.validate().is_ok());
        assert!(EquationSpec::PowerLaw { n: 1.0 }.validate().is_err());
        assert!(EquationSpec::GeneralizedFisher { c1: 1.0, root_sign: 0.5 }.validate().is_err());
    }

    #[test]
    fn kpp_checks() {
        let r = kpp_check(&EquationSpec::Fisher);
        assert!(r.passes(), "{r:?}");
        assert!((r.fprime0 - 1.0).abs() < 1e-9);

        // Fitzhugh-Nagumo: alpha = -1, b = -c - 1
        let c = 0.3;
        let r = kpp_check(&EquationSpec::CubicPolynomial { alpha: -1.0, b: -c - 1.0, c });
        assert!(r.f0_zero && r.f1_zero);

        let r = kpp_check(&EquationSpec::PowerLaw { n: 3.0 });
        assert_eq!(r.f1, -2.0);
        assert!(!r.passes());
    }

    #[test]
    fn kpp_one_sided_derivative_for_half_line_terms() {
        let r = kpp_check(&EquationSpec::GeneralizedFisher { c1: -2.0, root_sign: 1.0 });
        // f = u(2 - sqrt(u) - u): f'(0) = 2, with an O(sqrt h) bias from the root
        assert!((r.fprime0 - 2.0).abs() < 1e-3, "{r:?}");
        assert!(r.passes());
    }

    #[test]
    fn generalized_fisher_reduces_to_fisher() {
        let g = EquationSpec::GeneralizedFisher { c1: -1.0, root_sign: 1.0 };
        for i in 0..=100 {
            let u = i as f64 / 100.0;
            let a = rhs_eval(&g, u).unwrap();
            let b = rhs_eval(&EquationSpec::Fisher, u).unwrap();
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn sigma_family_factored_form() {
        for (nu, sigma) in [(-1.5, 0.0), (0.7, 0.0), (-1.5, 0.9), (2.0, -0.4)] {
            let spec = EquationSpec::SigmaFamily { n: 2.0, nu, sigma };
            for i in 1..50 {
                let u = 0.1 * i as f64;
                let factored = (u + nu) * (-3.0 * u + sigma * u.sqrt() - nu);
                let got = rhs_eval(&spec, u).unwrap();
                assert!((got - factored).abs() < 1e-12 * (1.0 + factored.abs()));
            }
        }
    }

    #[test]
    fn plane_wave_equation_constant_root() {
        for n in [2.0, 3.0, 4.0, 5.0] {
            for c1 in [-2.0f64, -1.0, 0.5, 2.0] {
                let k = derived_constants(n).unwrap().k;
                let base = c1.powf(k);
                if !base.is_finite() {
                    // fractional k with a negative c1 has no real constant state
                    continue;
                }
                let eq = plane_wave_equation(n, c1, (k + 1.0) * (c1 + 1.0)).unwrap();
                let f = rhs_eval(&eq.spec, base).unwrap();
                assert!(f.abs() < 1e-10, "n={n} c1={c1} f={f}");
            }
        }
    }

    #[test]
    fn plane_wave_fisher_reduction() {
        let eq = plane_wave_equation(2.0, -1.0, 0.0).unwrap();
        assert!(eq.kpp_condition);
        assert_eq!(eq.velocity, Some(5.0));
        for i in 0..=20 {
            let u = i as f64 / 20.0;
            let scaled = rhs_eval(&eq.spec, u).unwrap() / 6.0;
            assert!((scaled - u * (1.0 - u)).abs() < 1e-14);
        }
        assert!(plane_wave_equation(1.0, 0.0, 0.0).is_err());
        assert!(!plane_wave_equation(2.0, -1.0, 0.3).unwrap().kpp_condition);
    }

    #[test]
    fn custom_reaction() {
        let spec = EquationSpec::KppGeneric { reaction: Reaction::new("logistic", |u| u * (1.0 - u)) };
        assert!(kpp_check(&spec).passes());
        let json = serde_json::to_string(&spec).unwrap();
        assert!(json.contains("logistic"));
        assert!(serde_json::from_str::<EquationSpec>(&json).is_err());
    }

    #[test]
    fn json_round_trip() {
        let spec = EquationSpec::GeneralFamily {
            n: 2.0,
            lambda1: 6.0,
            lambda2: -3.0,
            lambda3: 0.0,
            lambda4: 0.0,
            root_sign: -1.0,
        };
        let json = serde_json::to_string(&spec).unwrap();
        assert!(json.starts_with("{\"variant\":\"general_family\""));
        assert_eq!(serde_json::from_str::<EquationSpec>(&json).unwrap(), spec);
        let fisher: EquationSpec = serde_json::from_str("{\"variant\":\"fisher\"}").unwrap();
        assert_eq!(fisher, EquationSpec::Fisher);
        let gf: EquationSpec = serde_json::from_str("{\"variant\":\"generalized_fisher\",\"c1\":2}").unwrap();
        assert_eq!(gf, EquationSpec::GeneralizedFisher { c1: 2.0, root_sign: 1.0 });
    }
}
