//! The chain φ⁽ⁿ⁺¹⁾ = φ⁽ⁿ⁾′/φ⁽ⁿ⁾ seeded with ds(y, 1/√2), and its reciprocal companions.

use serde::Serialize;

use super::CatalogError;
use crate::elliptic::{jacobi, EllipticModulus, POLE_THRESHOLD};

/// Which member of the chain family a state describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ChainKind {
    /// φ⁽ⁿ⁾ itself, φ″ = 2φ³
    Base,
    /// √Cₙ/φ⁽ⁿ⁾ for odd n, φ″ = 2φ³
    Tilde,
    /// √Bₙ/φ⁽ⁿ⁾ for even n (Bₙ = −Cₙ), φ″ = −2φ³
    Hat,
}

/// One chain element with its analytic derivative.
///
/// `first_integral` is the constant value of (φ′)² − (c_sign/2)·φ⁴ along the
/// element: Cₙ for the base and tilde kinds, Bₙ for the hat kind.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhiState {
    pub index: usize,
    pub kind: ChainKind,
    /// Cₙ = (−4)ⁿ·(−1/4) of the underlying base element
    pub c_n: f64,
    pub c_sign: f64,
    pub first_integral: f64,
}

const SEED_CONSTANT: f64 = -0.25;

fn chain_constant(n: usize) -> f64 {
    SEED_CONSTANT * (-4.0f64).powi(n as i32)
}

/// (φ⁽ⁿ⁾, φ⁽ⁿ⁾′) at y, propagated through the first integral.
fn base_eval(n: usize, y: f64) -> Option<(f64, f64)> {
    let j = jacobi(y, EllipticModulus::lemniscatic());
    if j.sn.abs() < POLE_THRESHOLD {
        return None;
    }
    let mut phi = j.dn / j.sn;
    let mut dphi = -j.cn / (j.sn * j.sn);
    let mut c = SEED_CONSTANT;
    for _ in 0..n {
        if phi.abs() < POLE_THRESHOLD {
            return None;
        }
        let next = dphi / phi;
        dphi = (phi.powi(4) - c) / (phi * phi);
        phi = next;
        c *= -4.0;
    }
    (phi.is_finite() && dphi.is_finite()).then_some((phi, dphi))
}

impl PhiState {
    /// (φ, φ′) at y, or `None` at a pole of this or any earlier element.
    pub fn eval(&self, y: f64) -> Option<(f64, f64)> {
        let (phi, dphi) = base_eval(self.index, y)?;
        match self.kind {
            ChainKind::Base => Some((phi, dphi)),
            ChainKind::Tilde | ChainKind::Hat => {
                if phi.abs() < POLE_THRESHOLD {
                    return None;
                }
                let root = self.c_n.abs().sqrt();
                Some((root / phi, -root * dphi / (phi * phi)))
            }
        }
    }

    pub fn phi(&self, y: f64) -> Option<f64> {
        self.eval(y).map(|p| p.0)
    }

    /// (φ′)² − (c_sign/2)·φ⁴ from the analytic pair.
    pub fn first_integral_at(&self, y: f64) -> Option<f64> {
        let (p, dp) = self.eval(y)?;
        Some(dp * dp - 0.5 * self.c_sign * p.powi(4))
    }

    pub fn label(&self) -> String {
        match self.kind {
            ChainKind::Base => format!("phi_{}", self.index),
            ChainKind::Tilde => format!("phi_tilde_{}", self.index),
            ChainKind::Hat => format!("phi_hat_{}", self.index),
        }
    }
}

pub fn phi_chain(n: usize) -> PhiState {
    let c_n = chain_constant(n);
    PhiState { index: n, kind: ChainKind::Base, c_n, c_sign: 2.0, first_integral: c_n }
}

/// √Cₙ/φ⁽ⁿ⁾, defined for odd n where Cₙ > 0.
pub fn tilde(n: usize) -> Result<PhiState, CatalogError> {
    if n % 2 == 0 {
        return Err(CatalogError::Usage(format!("tilde elements need an odd chain index (C_n > 0), got {n}")));
    }
    let c_n = chain_constant(n);
    Ok(PhiState { index: n, kind: ChainKind::Tilde, c_n, c_sign: 2.0, first_integral: c_n })
}

/// √Bₙ/φ⁽ⁿ⁾ with Bₙ = −Cₙ, defined for even n.
pub fn hat(n: usize) -> Result<PhiState, CatalogError> {
    if n % 2 == 1 {
        return Err(CatalogError::Usage(format!("hat elements need an even chain index (C_n < 0), got {n}")));
    }
    let c_n = chain_constant(n);
    Ok(PhiState { index: n, kind: ChainKind::Hat, c_n, c_sign: -2.0, first_integral: -c_n })
}

const POLE_MAGNITUDE: f64 = 1e4;

/// Locations of the poles of `state` on [y_min, y_max], found by scanning for
/// sign changes and bisecting. Every pole of the chain is simple, so each one
/// shows up as a sign change; zeros are told apart by the magnitude at the limit.
pub fn pole_inventory(state: &PhiState, y_min: f64, y_max: f64, scan: usize) -> Vec<f64> {
    let scan = scan.max(2);
    let step = (y_max - y_min) / scan as f64;
    let mut poles: Vec<f64> = Vec::new();
    let push = |y: f64, poles: &mut Vec<f64>| {
        if poles.last().is_none_or(|&p| (y - p).abs() > 1e-6) {
            poles.push(y);
        }
    };
    let mut prev: Option<(f64, f64)> = None;
    for i in 0..=scan {
        let y = y_min + step * i as f64;
        match state.phi(y) {
            None => {
                push(y, &mut poles);
                prev = None;
            }
            Some(v) => {
                if let Some((ya, va)) = prev {
                    if va.signum() != v.signum() {
                        let (mut a, mut b) = (ya, y);
                        for _ in 0..80 {
                            let m = 0.5 * (a + b);
                            match state.phi(m) {
                                None => {
                                    a = m;
                                    b = m;
                                    break;
                                }
                                Some(vm) if vm.signum() == va.signum() => a = m,
                                Some(_) => b = m,
                            }
                        }
                        let m = 0.5 * (a + b);
                        let near = [m - 1e-9, m + 1e-9].iter().filter_map(|&s| state.phi(s)).fold(0.0f64, |acc, v| acc.max(v.abs()));
                        if state.phi(m).is_none() || near > POLE_MAGNITUDE {
                            push(m, &mut poles);
                        }
                    }
                }
                prev = Some((y, v));
            }
        }
    }
    poles
}
