//! Exact solutions as samplers (x, t) → value or undefined.
//!
//! Families written in the rescaled Fisher variables (y, τ) use the sampler's
//! first coordinate for y and the second for τ; `variables` records which.

mod chain;
mod elliptic_family;
mod fisher;
pub mod printed;
mod registry;
mod waves;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::elliptic::EllipticError;
use crate::equations::{EquationError, EquationSpec};

pub use chain::{hat, phi_chain, pole_inventory, tilde, ChainKind, PhiState};
pub use elliptic_family::{cosh_cos_solution, elliptic_solution, SolutionKind};
pub use fisher::{
    fisher_family, generalized_fisher, quadratic_rational, FisherVariant, GeneralizedVariant, WEIERSTRASS_AMPLITUDE,
};
pub use registry::{families, family, FamilyEntry, Params, Window};
pub use waves::{bell, plane_wave, plane_wave_potential, solitary_wave, SolitaryBranch};

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Equation(#[from] EquationError),
    #[error(transparent)]
    Elliptic(#[from] EllipticError),
}

pub type EvalFn = Arc<dyn Fn(f64, f64) -> Option<f64> + Send + Sync>;

/// An exact solution together with the equation it solves.
#[derive(Clone)]
pub struct Sampler {
    eval: EvalFn,
    pub family_id: String,
    pub params: BTreeMap<String, f64>,
    pub equation: EquationSpec,
    pub domain_note: String,
    pub variables: [&'static str; 2],
}

/// The serializable part of a sampler.
#[derive(Debug, Clone, Serialize)]
pub struct SamplerMeta<'a> {
    pub family_id: &'a str,
    pub params: &'a BTreeMap<String, f64>,
    pub equation: &'a EquationSpec,
    pub formula: String,
    pub domain_note: &'a str,
    pub variables: [&'static str; 2],
}

impl Sampler {
    pub fn new(
        family_id: impl Into<String>,
        params: &[(&str, f64)],
        equation: EquationSpec,
        domain_note: impl Into<String>,
        eval: impl Fn(f64, f64) -> Option<f64> + Send + Sync + 'static,
    ) -> Self {
        Self {
            eval: Arc::new(eval),
            family_id: family_id.into(),
            params: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            equation,
            domain_note: domain_note.into(),
            variables: ["x", "t"],
        }
    }

    pub fn in_variables(mut self, space: &'static str, time: &'static str) -> Self {
        self.variables = [space, time];
        self
    }

    /// u(x, t), or `None` where the solution is undefined (poles, fractional
    /// powers of non-positive bases, overflow).
    pub fn eval(&self, x: f64, t: f64) -> Option<f64> {
        (self.eval)(x, t).filter(|v| v.is_finite())
    }

    /// The same solution translated: u(x + dx, t + dt).
    pub fn shifted(&self, dx: f64, dt: f64) -> Self {
        let inner = self.eval.clone();
        let mut out = self.clone();
        out.eval = Arc::new(move |x, t| inner(x + dx, t + dt));
        out.params.insert("shift_x".into(), dx);
        out.params.insert("shift_t".into(), dt);
        out
    }

    /// u(−x, t).
    pub fn reflected(&self) -> Self {
        let inner = self.eval.clone();
        let mut out = self.clone();
        out.eval = Arc::new(move |x, t| inner(-x, t));
        out
    }

    /// Pointwise transform of the values, paired with the equation the result solves.
    pub fn map_values(
        &self,
        family_id: impl Into<String>,
        equation: EquationSpec,
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        let inner = self.eval.clone();
        let mut out = self.clone();
        out.family_id = family_id.into();
        out.equation = equation;
        out.eval = Arc::new(move |x, t| inner(x, t).map(&f));
        out
    }

    /// Same values, claimed to solve a different equation. Used for negative controls.
    pub fn with_equation(&self, equation: EquationSpec) -> Self {
        let mut out = self.clone();
        out.equation = equation;
        out
    }

    pub fn with_eval(&self, eval: impl Fn(f64, f64) -> Option<f64> + Send + Sync + 'static) -> Self {
        let mut out = self.clone();
        out.eval = Arc::new(eval);
        out
    }

    pub fn meta(&self) -> SamplerMeta<'_> {
        SamplerMeta {
            family_id: &self.family_id,
            params: &self.params,
            equation: &self.equation,
            formula: self.equation.formula(),
            domain_note: &self.domain_note,
            variables: self.variables,
        }
    }
}

impl fmt::Debug for Sampler {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Sampler")
            .field("family_id", &self.family_id)
            .field("params", &self.params)
            .field("equation", &self.equation)
            .finish()
    }
}

/// A potential z(x, t) given with its exact x-derivative.
#[derive(Clone)]
pub struct PotentialField {
    pub name: String,
    eval: Arc<dyn Fn(f64, f64) -> Option<(f64, f64)> + Send + Sync>,
}

impl PotentialField {
    pub fn new(name: impl Into<String>, eval: impl Fn(f64, f64) -> Option<(f64, f64)> + Send + Sync + 'static) -> Self {
        Self { name: name.into(), eval: Arc::new(eval) }
    }

    /// (z, z_x).
    pub fn eval(&self, x: f64, t: f64) -> Option<(f64, f64)> {
        (self.eval)(x, t).filter(|(z, zx)| z.is_finite() && zx.is_finite())
    }

    pub fn z(&self, x: f64, t: f64) -> Option<f64> {
        self.eval(x, t).map(|p| p.0)
    }
}

impl fmt::Debug for PotentialField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PotentialField").field("name", &self.name).finish()
    }
}

/// Real power with the sign conventions used throughout the catalog: integer
/// exponents accept any base, other exponents need a positive base.
pub(crate) fn real_pow(base: f64, p: f64) -> Option<f64> {
    if p.fract() == 0.0 && p.abs() < i32::MAX as f64 {
        Some(base.powi(p as i32))
    } else if base > 0.0 {
        Some(base.powf(p))
    } else {
        None
    }
}

/// u = (z_x/z)^k.
pub fn potential_transform(z: &PotentialField, k: f64, equation: EquationSpec) -> Sampler {
    let field = z.clone();
    let name = format!("potential/{}", z.name);
    Sampler::new(
        name,
        &[("k", k)],
        equation,
        "masked where z vanishes or, for fractional k, where z_x/z ≤ 0",
        move |x, t| {
            let (zv, zx) = field.eval(x, t)?;
            if zv.abs() < crate::elliptic::POLE_THRESHOLD {
                return None;
            }
            real_pow(zx / zv, k)
        },
    )
}
