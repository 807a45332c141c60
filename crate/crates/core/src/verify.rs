//! Numerical verification: PDE residuals with convergence-order estimates,
//! first-integral checks along the chain, and the trilinear potential form.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::catalog::{hat, phi_chain, tilde, PhiState, PotentialField, Sampler, Window};
use crate::elliptic::{complete_elliptic_k, EllipticModulus};
use crate::equations::EquationSpec;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("verification impossible: only {defined_fraction:.3} of the grid is usable ({cause})")]
    Impossible { defined_fraction: f64, cause: String },
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("stencil order must be 2 or 4, got {0}")]
    InvalidOrder(u8),
}

/// Uniform tensor grid of evaluation points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Grid2D {
    pub x_min: f64,
    pub x_max: f64,
    pub n_x: usize,
    pub t_min: f64,
    pub t_max: f64,
    pub n_t: usize,
}

impl Grid2D {
    pub fn new(x: [f64; 2], n_x: usize, t: [f64; 2], n_t: usize) -> Result<Self, VerifyError> {
        if n_x < 8 || n_t < 8 {
            return Err(VerifyError::InvalidGrid(format!("need at least 8 points per axis, got {n_x}×{n_t}")));
        }
        if !(x[1] > x[0]) || !(t[1] > t[0]) {
            return Err(VerifyError::InvalidGrid(format!("empty range x={x:?} t={t:?}")));
        }
        Ok(Self { x_min: x[0], x_max: x[1], n_x, t_min: t[0], t_max: t[1], n_t })
    }

    /// Grid with the window's extent; axes with fewer than 8 points are raised to 8.
    pub fn from_window(w: &Window) -> Result<Self, VerifyError> {
        Self::new(w.x, w.n_x.max(8), w.t, w.n_t.max(8))
    }

    pub fn h_x(&self) -> f64 {
        (self.x_max - self.x_min) / (self.n_x - 1) as f64
    }

    pub fn h_t(&self) -> f64 {
        (self.t_max - self.t_min) / (self.n_t - 1) as f64
    }

    pub fn x(&self, i: usize) -> f64 {
        self.x_min + self.h_x() * i as f64
    }

    pub fn t(&self, j: usize) -> f64 {
        self.t_min + self.h_t() * j as f64
    }

    pub fn len(&self) -> usize {
        self.n_x * self.n_t
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LevelStats {
    pub h_x: f64,
    pub h_t: f64,
    pub max_abs: f64,
    /// root mean square over the common points
    pub l2: f64,
    pub defined_fraction: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Offender {
    pub x: f64,
    pub t: f64,
    pub residual: f64,
}

/// Residual statistics at spacings h, h/2, h/4 over the points defined at all three.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualReport {
    pub label: String,
    pub stencil_order: u8,
    pub grid: Grid2D,
    pub levels: Vec<LevelStats>,
    /// finest-level maximum
    pub max_abs: f64,
    pub l2: f64,
    /// fraction of grid points whose stencils were usable at every level
    pub defined_fraction: f64,
    /// log₂ of the max-residual ratio per halving, averaged over the two halvings
    pub order_estimate: Option<f64>,
    /// largest finest-level residuals, at most ten
    pub worst: Vec<Offender>,
}

impl ResidualReport {
    /// Convergence gate used by the acceptance suite.
    pub fn converges(&self, min_order: f64, max_residual: f64) -> bool {
        self.order_estimate.is_some_and(|p| p >= min_order) && self.max_abs <= max_residual
    }
}

const LEVELS: usize = 3;
const STANDOFF_WIDTHS: usize = 5;
const MIN_DEFINED: f64 = 0.1;
const ORDER_DEFINED: f64 = 0.5;
const WORST: usize = 10;

/// Shared driver: `point(x, t, h_x, h_t)` returns the residual at one point
/// for one spacing, or `None` if any stencil value is undefined.
fn residual_driver<F>(
    label: String,
    g: &Grid2D,
    stencil_order: u8,
    half_width: usize,
    mask: impl Fn(f64, f64) -> bool + Sync,
    point: F,
) -> Result<ResidualReport, VerifyError>
where
    F: Fn(f64, f64, f64, f64) -> Option<f64> + Sync,
{
    let (nx, nt) = (g.n_x, g.n_t);
    let masked: Vec<bool> = (0..g.len()).into_par_iter().map(|p| !mask(g.x(p / nt), g.t(p % nt))).collect();
    let masked_count = masked.iter().filter(|m| **m).count();

    // summed-area table of masked points for the standoff test
    let mut sat = vec![0usize; (nx + 1) * (nt + 1)];
    for i in 0..nx {
        for j in 0..nt {
            sat[(i + 1) * (nt + 1) + j + 1] =
                masked[i * nt + j] as usize + sat[i * (nt + 1) + j + 1] + sat[(i + 1) * (nt + 1) + j] - sat[i * (nt + 1) + j];
        }
    }
    let r = STANDOFF_WIDTHS * half_width;
    let near_mask = |i: usize, j: usize| {
        let (i0, i1) = (i.saturating_sub(r), (i + r + 1).min(nx));
        let (j0, j1) = (j.saturating_sub(r), (j + r + 1).min(nt));
        sat[i1 * (nt + 1) + j1] + sat[i0 * (nt + 1) + j0] > sat[i0 * (nt + 1) + j1] + sat[i1 * (nt + 1) + j0]
    };

    let (hx, ht) = (g.h_x(), g.h_t());
    let results: Vec<[Option<f64>; LEVELS]> = (0..g.len())
        .into_par_iter()
        .map(|p| {
            let (i, j) = (p / nt, p % nt);
            let mut out = [None; LEVELS];
            if near_mask(i, j) {
                return out;
            }
            let (x, t) = (g.x(i), g.t(j));
            for (l, slot) in out.iter_mut().enumerate() {
                let s = (1u32 << l) as f64;
                *slot = point(x, t, hx / s, ht / s).filter(|v| v.is_finite());
            }
            out
        })
        .collect();

    let total = g.len() as f64;
    let common: Vec<usize> = (0..g.len()).filter(|&p| results[p].iter().all(Option::is_some)).collect();
    let defined_fraction = common.len() as f64 / total;
    if defined_fraction < MIN_DEFINED {
        let standoff = (0..g.len()).filter(|&p| near_mask(p / nt, p % nt)).count();
        let cause = format!(
            "{masked_count} of {} grid points are masked, {standoff} lie within {STANDOFF_WIDTHS} stencil widths of a masked point, {} more have an undefined stencil value or reaction term",
            g.len(),
            g.len() - standoff - common.len()
        );
        return Err(VerifyError::Impossible { defined_fraction, cause });
    }

    let mut levels = Vec::with_capacity(LEVELS);
    for l in 0..LEVELS {
        let s = (1u32 << l) as f64;
        let own = results.iter().filter(|r| r[l].is_some()).count() as f64 / total;
        let (mut max_abs, mut sq) = (0.0f64, 0.0f64);
        for &p in &common {
            let v = results[p][l].unwrap_or(0.0);
            max_abs = max_abs.max(v.abs());
            sq += v * v;
        }
        levels.push(LevelStats { h_x: hx / s, h_t: ht / s, max_abs, l2: (sq / common.len() as f64).sqrt(), defined_fraction: own });
    }
    let order_estimate = if levels.iter().all(|l| l.defined_fraction > ORDER_DEFINED)
        && levels[0].max_abs > 0.0
        && levels[LEVELS - 1].max_abs > 0.0
    {
        Some((levels[0].max_abs / levels[LEVELS - 1].max_abs).log2() / (LEVELS - 1) as f64)
    } else {
        None
    };

    let mut worst: Vec<Offender> = common
        .iter()
        .map(|&p| Offender { x: g.x(p / nt), t: g.t(p % nt), residual: results[p][LEVELS - 1].unwrap_or(0.0) })
        .collect();
    worst.sort_by(|a, b| b.residual.abs().total_cmp(&a.residual.abs()));
    worst.truncate(WORST);

    let finest = levels[LEVELS - 1];
    Ok(ResidualReport {
        label,
        stencil_order,
        grid: *g,
        levels,
        max_abs: finest.max_abs,
        l2: finest.l2,
        defined_fraction,
        order_estimate,
        worst,
    })
}

/// Finite-difference stencil: integer weights at integer offsets over a common denominator,
/// so that the weights of a constant field cancel exactly.
struct Stencil {
    taps: &'static [(i32, f64)],
    denom: f64,
}

fn d2(order: u8) -> Stencil {
    match order {
        2 => Stencil { taps: &[(-1, 1.0), (0, -2.0), (1, 1.0)], denom: 1.0 },
        _ => Stencil { taps: &[(-2, -1.0), (-1, 16.0), (0, -30.0), (1, 16.0), (2, -1.0)], denom: 12.0 },
    }
}

fn d1(order: u8) -> Stencil {
    match order {
        2 => Stencil { taps: &[(-1, -1.0), (1, 1.0)], denom: 2.0 },
        _ => Stencil { taps: &[(-2, 1.0), (-1, -8.0), (1, 8.0), (2, -1.0)], denom: 12.0 },
    }
}

/// Third derivative, fourth order, six points.
const D3: Stencil =
    Stencil { taps: &[(-3, 1.0), (-2, -8.0), (-1, 13.0), (1, -13.0), (2, 8.0), (3, -1.0)], denom: 8.0 };

fn apply(st: &Stencil, h: f64, power: i32, f: impl Fn(f64) -> Option<f64>) -> Option<f64> {
    let mut acc = 0.0;
    for &(o, w) in st.taps {
        acc += w * f(o as f64 * h)?;
    }
    Some(acc / (st.denom * h.powi(power)))
}

/// R = u_t − u_xx − f(u) by central differences of the sampled field.
pub fn pde_residual(s: &Sampler, eq: &EquationSpec, g: &Grid2D, stencil_order: u8) -> Result<ResidualReport, VerifyError> {
    if stencil_order != 2 && stencil_order != 4 {
        return Err(VerifyError::InvalidOrder(stencil_order));
    }
    let label = format!("{} vs {}", s.family_id, eq.formula());
    residual_driver(
        label,
        g,
        stencil_order,
        (stencil_order / 2) as usize,
        |x, t| s.eval(x, t).is_some(),
        |x, t, hx, ht| {
            let u = s.eval(x, t)?;
            let uxx = apply(&d2(stencil_order), hx, 2, |dx| s.eval(x + dx, t))?;
            let ut = apply(&d1(stencil_order), ht, 1, |dt| s.eval(x, t + dt))?;
            let f = eq.rhs(u).ok()?;
            Some(ut - uxx - f)
        },
    )
}

/// Coefficients of the trilinear potential form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PotentialParams {
    pub k: f64,
    pub lambda1: f64,
    pub lambda2: f64,
    pub lambda3: f64,
    pub lambda4: f64,
}

impl PotentialParams {
    pub fn power_law(k: f64) -> Self {
        Self { k, lambda1: 0.0, lambda2: 0.0, lambda3: 0.0, lambda4: 0.0 }
    }
}

/// z(z_x z_xt − z_x z_xxx − λ₃zz_x − λ₄z² − (k−1)z_xx²) − z_x²(z_t + λ₁z + λ₂z_x − (2k+1)z_xx)
/// with every derivative taken by fourth-order differences of z alone.
pub fn potential_residual(z: &PotentialField, p: PotentialParams, g: &Grid2D) -> Result<ResidualReport, VerifyError> {
    let zf = |x: f64, t: f64| z.z(x, t);
    residual_driver(
        format!("potential {}", z.name),
        g,
        4,
        3,
        |x, t| zf(x, t).is_some(),
        |x, t, hx, ht| {
            let zv = zf(x, t)?;
            let zx = apply(&d1(4), hx, 1, |dx| zf(x + dx, t))?;
            let zxx = apply(&d2(4), hx, 2, |dx| zf(x + dx, t))?;
            let zxxx = apply(&D3, hx, 3, |dx| zf(x + dx, t))?;
            let zt = apply(&d1(4), ht, 1, |dt| zf(x, t + dt))?;
            let zxt = apply(&d1(4), hx, 1, |dx| apply(&d1(4), ht, 1, |dt| zf(x + dx, t + dt)))?;
            let lhs = zv * (zx * zxt - zx * zxxx - p.lambda3 * zv * zx - p.lambda4 * zv * zv - (p.k - 1.0) * zxx * zxx);
            let rhs = zx * zx * (zt + p.lambda1 * zv + p.lambda2 * zx - (2.0 * p.k + 1.0) * zxx);
            Some(lhs - rhs)
        },
    )
}

/// Analytic derivatives (z, z_y, z_yy, z_yyy, z_τ) of a Fisher potential.
pub type FisherPotentialDerivs = (f64, f64, f64, f64, f64);

/// Largest violations of z_τ = 5z_yy and 4z_yz_yyy − z_yy² = ½z_y² over the samples.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReducedCheck {
    pub heat_max: f64,
    pub cubic_max: f64,
}

pub fn reduced_fisher_check(samples: &[FisherPotentialDerivs]) -> ReducedCheck {
    samples.iter().fold(ReducedCheck { heat_max: 0.0, cubic_max: 0.0 }, |acc, &(_, zy, zyy, zyyy, zt)| ReducedCheck {
        heat_max: acc.heat_max.max((zt - 5.0 * zyy).abs()),
        cubic_max: acc.cubic_max.max((4.0 * zy * zyyy - zyy * zyy - 0.5 * zy * zy).abs()),
    })
}

/// Result of checking one chain element against its ODE.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OdeReport {
    pub label: String,
    pub samples: usize,
    /// max |φ″ − c_sign·φ³|/(1 + |φ|³), φ″ by Richardson-extrapolated five-point differences
    pub second_order_max: f64,
    /// (φ′)² − (c_sign/2)φ⁴ from the analytic pair
    pub c_estimate: f64,
    pub first_integral_std: f64,
    /// max |I − expected|/max(1, |expected|) against the state's own constant
    pub first_integral_max_dev: f64,
}

/// Samples whose |φ| stays below this count as pole-free for the ODE checks.
pub const NON_POLE_BOUND: f64 = 10.0;

fn second_derivative(state: &PhiState, y: f64, phi: f64) -> Option<f64> {
    // the local length scale of φ″ = ±2φ³ with (φ′)² ∓ φ⁴ = I is 1/(|φ| + |I|^¼);
    // five-point differences with one Richardson step balance truncation
    // against the round-off of the deeper chain elements
    let h = 4e-2 / (1.0 + phi.abs() + state.first_integral.abs().powf(0.25));
    let f = |d: f64| state.phi(y + d);
    let d = |h: f64| -> Option<f64> {
        Some((-f(-2.0 * h)? + 16.0 * f(-h)? - 30.0 * phi + 16.0 * f(h)? - f(2.0 * h)?) / (12.0 * h * h))
    };
    let (a, b) = (d(h)?, d(0.5 * h)?);
    Some((16.0 * b - a) / 15.0)
}

pub fn ode_residual(state: &PhiState, ys: &[f64]) -> Result<OdeReport, VerifyError> {
    let mut ints = Vec::new();
    let mut second = 0.0f64;
    for &y in ys {
        let Some((phi, dphi)) = state.eval(y) else { continue };
        if phi.abs() > NON_POLE_BOUND {
            continue;
        }
        let Some(pyy) = second_derivative(state, y, phi) else { continue };
        second = second.max((pyy - state.c_sign * phi.powi(3)).abs() / (1.0 + phi.abs().powi(3)));
        ints.push(dphi * dphi - 0.5 * state.c_sign * phi.powi(4));
    }
    if ints.is_empty() {
        return Err(VerifyError::Impossible { defined_fraction: 0.0, cause: format!("every sample of {} is at or near a pole", state.label()) });
    }
    let n = ints.len() as f64;
    let mean = ints.iter().sum::<f64>() / n;
    let std = (ints.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n).sqrt();
    let scale = state.first_integral.abs().max(1.0);
    let dev = ints.iter().fold(0.0f64, |m, v| m.max((v - state.first_integral).abs() / scale));
    Ok(OdeReport {
        label: state.label(),
        samples: ints.len(),
        second_order_max: second,
        c_estimate: mean,
        first_integral_std: std,
        first_integral_max_dev: dev,
    })
}

/// `count` pole-free sample points on one real period of the chain, reproducible from `seed`.
pub fn chain_samples(state: &PhiState, count: usize, seed: u64) -> Vec<f64> {
    let period = 4.0 * complete_elliptic_k(EllipticModulus::lemniscatic()).expect("K(1/√2)");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0;
    while out.len() < count && attempts < 1000 * count {
        attempts += 1;
        let y: f64 = rng.gen_range(0.0..period);
        if let Some(phi) = state.phi(y) {
            if phi.abs() <= NON_POLE_BOUND {
                out.push(y);
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropositionRow {
    pub proposition: u8,
    pub check: &'static str,
    pub index: usize,
    pub applicable: bool,
    /// constant the check compares against (if any)
    pub expected: Option<f64>,
    /// measured first-integral constant (if any)
    pub measured: Option<f64>,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropositionTable {
    pub samples_per_index: usize,
    pub rows: Vec<PropositionRow>,
}

impl PropositionTable {
    pub fn all_passed(&self) -> bool {
        self.rows.iter().filter(|r| r.applicable).all(|r| r.passed)
    }
}

pub const PROPOSITION_TOL: f64 = 1e-7;
const SUITE_SAMPLES: usize = 200;
const SUITE_SEED: u64 = 0x5eed;

/// Propositions 1–3 at chain indices 0..=6.
///
/// Proposition 3 is checked twice: once against the relation
/// (φ̂′)² = −φ̂⁴ + Bₙ² as usually stated, and once against the constant the
/// analytic pair actually carries, (φ̂′)² = −φ̂⁴ + Bₙ.
pub fn proposition_suite() -> PropositionTable {
    let mut rows = Vec::new();
    let row = |proposition, check, index, expected: Option<f64>, report: &OdeReport, dev: f64| PropositionRow {
        proposition,
        check,
        index,
        applicable: true,
        expected,
        measured: Some(report.c_estimate),
        max_deviation: dev,
        tolerance: PROPOSITION_TOL,
        passed: dev <= PROPOSITION_TOL,
    };
    let skip = |proposition, check, index| PropositionRow {
        proposition,
        check,
        index,
        applicable: false,
        expected: None,
        measured: None,
        max_deviation: 0.0,
        tolerance: PROPOSITION_TOL,
        passed: false,
    };
    for n in 0..=6usize {
        // Proposition 1: φ⁽ⁿ⁺¹⁾ = φ⁽ⁿ⁾′/φ⁽ⁿ⁾ solves φ″ = 2φ³ with constant −4Cₙ
        let next = phi_chain(n + 1);
        let ys = chain_samples(&next, SUITE_SAMPLES, SUITE_SEED + n as u64);
        match ode_residual(&next, &ys) {
            Ok(r) => {
                rows.push(row(1, "phi'' = 2 phi^3", n, None, &r, r.second_order_max));
                rows.push(row(1, "(phi')^2 - phi^4 = -4 C_n", n, Some(next.first_integral), &r, r.first_integral_max_dev));
            }
            Err(_) => rows.push(skip(1, "phi'' = 2 phi^3", n)),
        }
        // Proposition 2: odd n
        match tilde(n) {
            Ok(s) => {
                let ys = chain_samples(&s, SUITE_SAMPLES, SUITE_SEED + 100 + n as u64);
                if let Ok(r) = ode_residual(&s, &ys) {
                    rows.push(row(2, "phi~'' = 2 phi~^3", n, None, &r, r.second_order_max));
                    rows.push(row(2, "(phi~')^2 = phi~^4 + C_n", n, Some(s.c_n), &r, r.first_integral_max_dev));
                }
            }
            Err(_) => rows.push(skip(2, "requires C_n > 0", n)),
        }
        // Proposition 3: even n
        match hat(n) {
            Ok(s) => {
                let ys = chain_samples(&s, SUITE_SAMPLES, SUITE_SEED + 200 + n as u64);
                if let Ok(r) = ode_residual(&s, &ys) {
                    let b = s.first_integral;
                    rows.push(row(3, "phi^'' = -2 phi^^3", n, None, &r, r.second_order_max));
                    let printed = b * b;
                    let dev = deviation_from(printed, &ys, &s);
                    rows.push(row(3, "(phi^')^2 = -phi^^4 + B_n^2", n, Some(printed), &r, dev));
                    rows.push(row(3, "(phi^')^2 = -phi^^4 + B_n", n, Some(b), &r, r.first_integral_max_dev));
                }
            }
            Err(_) => rows.push(skip(3, "requires C_n < 0", n)),
        }
    }
    PropositionTable { samples_per_index: SUITE_SAMPLES, rows }
}

/// max |I − expected|/max(1, |expected|) of the first integral over the samples.
fn deviation_from(expected: f64, ys: &[f64], s: &PhiState) -> f64 {
    let scale = expected.abs().max(1.0);
    ys.iter().filter_map(|&y| s.first_integral_at(y)).fold(0.0f64, |m, v| m.max((v - expected).abs() / scale))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrossCheckRow {
    pub name: &'static str,
    /// Which transcription was compared: "printed" or "corrected".
    pub form: &'static str,
    pub points: usize,
    /// max ||chain| − |closed form|| / max(1, |chain|)
    pub max_deviation: f64,
    /// Median of |chain|/|closed form|; a value away from 1 with a small
    /// spread is a constant-factor mismatch.
    pub ratio_median: f64,
    pub ratio_spread: f64,
    pub passed: bool,
}

pub const CROSS_CHECK_TOL: f64 = 1e-9;

/// Compares chain-generated solutions with their transcribed closed forms at
/// `count` common non-pole points (x ∈ [0.1, 1], y = x² + 6t on one period).
pub fn closed_form_cross_check(count: usize, seed: u64) -> Vec<CrossCheckRow> {
    use crate::catalog::{elliptic_solution, printed, SolutionKind};
    use printed::{U3_CHAIN_COEFF, U3_PRINTED_COEFF};
    type Form = Box<dyn Fn(f64, f64) -> Option<f64>>;
    let cases: Vec<(&'static str, &'static str, SolutionKind, usize, Form)> = vec![
        ("u1", "printed", SolutionKind::Plain, 1, Box::new(printed::u1)),
        ("u2", "printed", SolutionKind::Plain, 2, Box::new(printed::u2)),
        ("u3", "printed", SolutionKind::Plain, 3, Box::new(|x, y| printed::u3(x, y, U3_PRINTED_COEFF))),
        ("u3", "corrected", SolutionKind::Plain, 3, Box::new(|x, y| printed::u3(x, y, U3_CHAIN_COEFF))),
        ("u_tilde1", "printed", SolutionKind::Tilde, 1, Box::new(printed::u_tilde1)),
        ("u_tilde3", "printed", SolutionKind::Tilde, 3, Box::new(|x, y| printed::u_tilde3(x, y, U3_PRINTED_COEFF))),
        ("u_tilde3", "corrected", SolutionKind::Tilde, 3, Box::new(|x, y| printed::u_tilde3(x, y, U3_CHAIN_COEFF).map(|v| 2.0 * v))),
        ("u_hat0", "printed", SolutionKind::Hat, 0, Box::new(printed::u_hat0)),
        ("u_hat2", "printed", SolutionKind::Hat, 2, Box::new(|x, y| printed::u_hat2(x, y, true))),
        ("u_hat2", "corrected", SolutionKind::Hat, 2, Box::new(|x, y| printed::u_hat2(x, y, false))),
    ];
    let period = 4.0 * complete_elliptic_k(EllipticModulus::lemniscatic()).expect("K(1/√2)");
    cases
        .into_iter()
        .map(|(name, form, kind, index, closed)| {
            let chain = elliptic_solution(kind, index).expect("valid chain index");
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut devs = Vec::with_capacity(count);
            let mut ratios = Vec::with_capacity(count);
            let mut attempts = 0;
            while devs.len() < count && attempts < 1000 * count {
                attempts += 1;
                let x: f64 = rng.gen_range(0.1..1.0);
                let y: f64 = rng.gen_range(0.0..period);
                let t = (y - x * x) / 6.0;
                let (Some(a), Some(b)) = (chain.eval(x, t), closed(x, y)) else { continue };
                // stay away from poles and zeros of either form
                if a.abs() > 1e3 || b.abs() > 1e3 || a.abs() < 1e-3 || b.abs() < 1e-3 {
                    continue;
                }
                devs.push((a.abs() - b.abs()).abs() / a.abs().max(1.0));
                ratios.push(a.abs() / b.abs());
            }
            ratios.sort_by(f64::total_cmp);
            let median = ratios.get(ratios.len() / 2).copied().unwrap_or(f64::NAN);
            let spread = ratios.last().zip(ratios.first()).map_or(f64::NAN, |(hi, lo)| hi - lo);
            let max_deviation = devs.iter().copied().fold(0.0, f64::max);
            CrossCheckRow {
                name,
                form,
                points: devs.len(),
                max_deviation,
                ratio_median: median,
                ratio_spread: spread,
                passed: devs.len() == count && max_deviation <= CROSS_CHECK_TOL,
            }
        })
        .collect()
}
