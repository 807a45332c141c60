//! Jacobi elliptic functions and the Weierstrass ℘ function on the real line.
//!
//! The Jacobi triple is computed with the descending Landen (AGM) scheme after
//! reducing the argument by the real period 4K. The two degenerate moduli,
//! k = 0 and k = 1, are handled by their circular and hyperbolic closed forms.
//!
//! ℘ is evaluated by reducing the argument into the first half of the real
//! period, halving until the Laurent series at the origin converges fast,
//! and then applying the duplication formula back up.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A quotient is undefined when its denominator magnitude falls below this.
pub const POLE_THRESHOLD: f64 = 1e-8;

/// Halvings of the reduced argument r ≤ ω before the Laurent series is used.
const DUPLICATIONS: usize = 3;

const AGM_TOL: f64 = 1e-16;
const AGM_MAX_ITER: usize = 40;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EllipticError {
    #[error("modulus k = {0} outside [0, 1]")]
    Domain(f64),
    #[error("modulus k = 1 has an unbounded quarter-period")]
    UnboundedPeriod,
    #[error("unknown Jacobi function name `{0}` (expected one of sn cn dn ns nc nd sc cs sd ds cd dc)")]
    UnknownName(String),
    #[error("degenerate lattice: g2 = {g2}, g3 = {g3} has zero discriminant")]
    DegenerateLattice { g2: f64, g3: f64 },
}

/// Modulus of the Jacobi functions, 0 ≤ k ≤ 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct EllipticModulus {
    k: f64,
}

impl EllipticModulus {
    pub fn new(k: f64) -> Result<Self, EllipticError> {
        if !(0.0..=1.0).contains(&k) {
            return Err(EllipticError::Domain(k));
        }
        Ok(Self { k })
    }

    /// The modulus 1/√2 used by all the quartic-chain solutions.
    pub fn lemniscatic() -> Self {
        Self { k: std::f64::consts::FRAC_1_SQRT_2 }
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn k2(&self) -> f64 {
        self.k * self.k
    }

    /// Complementary modulus √(1 − k²).
    pub fn complementary(&self) -> f64 {
        // (1-k)(1+k) keeps precision for k close to 1
        ((1.0 - self.k) * (1.0 + self.k)).sqrt()
    }
}

impl TryFrom<f64> for EllipticModulus {
    type Error = EllipticError;
    fn try_from(k: f64) -> Result<Self, Self::Error> {
        Self::new(k)
    }
}

impl From<EllipticModulus> for f64 {
    fn from(m: EllipticModulus) -> f64 {
        m.k
    }
}

/// Values of sn, cn, dn at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiTriple {
    pub sn: f64,
    pub cn: f64,
    pub dn: f64,
    /// sn is within the pole threshold of zero, so ns, cs and ds are undefined.
    pub at_pole: bool,
}

fn arithmetic_geometric_mean(mut a: f64, mut b: f64) -> f64 {
    for _ in 0..AGM_MAX_ITER {
        if (a - b).abs() <= AGM_TOL * a {
            break;
        }
        let next = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = next;
    }
    0.5 * (a + b)
}

/// Complete elliptic integral of the first kind, K(k) = π / (2·AGM(1, k′)).
pub fn complete_elliptic_k(m: EllipticModulus) -> Result<f64, EllipticError> {
    if m.k >= 1.0 {
        return Err(EllipticError::UnboundedPeriod);
    }
    if m.k == 0.0 {
        return Ok(FRAC_PI_2);
    }
    Ok(PI / (2.0 * arithmetic_geometric_mean(1.0, m.complementary())))
}

/// sn, cn, dn at real argument `y`.
pub fn jacobi(y: f64, m: EllipticModulus) -> JacobiTriple {
    let (sn, cn, dn) = if m.k == 0.0 {
        (y.sin(), y.cos(), 1.0)
    } else if m.k == 1.0 {
        let sech = 1.0 / y.cosh();
        (y.tanh(), sech, sech)
    } else {
        landen(y, m)
    };
    JacobiTriple { sn, cn, dn, at_pole: sn.abs() < POLE_THRESHOLD }
}

fn landen(y: f64, m: EllipticModulus) -> (f64, f64, f64) {
    // quarter period is finite here: 0 < k < 1
    let quarter = PI / (2.0 * arithmetic_geometric_mean(1.0, m.complementary()));
    let period = 4.0 * quarter;
    let reduced = y - period * (y / period).round();

    let mut a = [0.0f64; AGM_MAX_ITER + 1];
    let mut c = [0.0f64; AGM_MAX_ITER + 1];
    a[0] = 1.0;
    c[0] = m.k;
    let mut b = m.complementary();
    let mut levels = 0;
    while levels < AGM_MAX_ITER && c[levels].abs() > AGM_TOL {
        let (an, bn) = (a[levels], b);
        a[levels + 1] = 0.5 * (an + bn);
        c[levels + 1] = 0.5 * (an - bn);
        b = (an * bn).sqrt();
        levels += 1;
    }

    let mut phi = (1u64 << levels) as f64 * a[levels] * reduced;
    let mut previous = phi;
    for n in (1..=levels).rev() {
        previous = phi;
        phi = 0.5 * (phi + (c[n] / a[n] * phi.sin()).asin());
    }
    let (sn, cn) = phi.sin_cos();
    // the ratio form is 0/0 near cn = 0; the square root is well conditioned there
    let dn = if levels == 0 {
        1.0
    } else if cn.abs() > 0.5 {
        cn / (previous - phi).cos()
    } else {
        (1.0 - m.k2() * sn * sn).sqrt()
    };
    (sn, cn, dn)
}

/// The twelve Jacobi functions, named by the Glaisher convention.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum JacobiName {
    Sn,
    Cn,
    Dn,
    Ns,
    Nc,
    Nd,
    Sc,
    Cs,
    Sd,
    Ds,
    Cd,
    Dc,
}

impl JacobiName {
    pub const ALL: [JacobiName; 12] = [
        Self::Sn,
        Self::Cn,
        Self::Dn,
        Self::Ns,
        Self::Nc,
        Self::Nd,
        Self::Sc,
        Self::Cs,
        Self::Sd,
        Self::Ds,
        Self::Cd,
        Self::Dc,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Sn => "sn",
            Self::Cn => "cn",
            Self::Dn => "dn",
            Self::Ns => "ns",
            Self::Nc => "nc",
            Self::Nd => "nd",
            Self::Sc => "sc",
            Self::Cs => "cs",
            Self::Sd => "sd",
            Self::Ds => "ds",
            Self::Cd => "cd",
            Self::Dc => "dc",
        }
    }

    /// (numerator, denominator) in terms of the triple.
    fn parts(&self, j: &JacobiTriple) -> (f64, f64) {
        let (s, c, d) = (j.sn, j.cn, j.dn);
        match self {
            Self::Sn => (s, 1.0),
            Self::Cn => (c, 1.0),
            Self::Dn => (d, 1.0),
            Self::Ns => (1.0, s),
            Self::Nc => (1.0, c),
            Self::Nd => (1.0, d),
            Self::Sc => (s, c),
            Self::Cs => (c, s),
            Self::Sd => (s, d),
            Self::Ds => (d, s),
            Self::Cd => (c, d),
            Self::Dc => (d, c),
        }
    }

    /// Evaluate on an already computed triple.
    pub fn on(&self, j: &JacobiTriple) -> Option<f64> {
        let (num, den) = self.parts(j);
        (den.abs() >= POLE_THRESHOLD).then(|| num / den)
    }
}

impl fmt::Display for JacobiName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for JacobiName {
    type Err = EllipticError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .iter()
            .copied()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| EllipticError::UnknownName(s.to_string()))
    }
}

/// A named Jacobi function; `None` at a pole.
pub fn jacobi_quotient(name: JacobiName, y: f64, m: EllipticModulus) -> Option<f64> {
    name.on(&jacobi(y, m))
}

/// Real invariants (g2, g3) of a Weierstrass lattice.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeierstrassInvariants {
    pub g2: f64,
    pub g3: f64,
}

impl WeierstrassInvariants {
    pub fn new(g2: f64, g3: f64) -> Self {
        Self { g2, g3 }
    }

    /// g2³ − 27 g3².
    pub fn discriminant(&self) -> f64 {
        self.g2.powi(3) - 27.0 * self.g3 * self.g3
    }
}

const LAURENT_TERMS: usize = 12;

/// Precomputed evaluator for ℘(z; g2, g3) along the real axis.
#[derive(Debug, Clone)]
pub struct Weierstrass {
    inv: WeierstrassInvariants,
    /// Real half-period ω (℘′(ω) = 0); `None` for the g2 = g3 = 0 lattice.
    half_period: Option<f64>,
    /// c_k for ℘ = 1/z² + Σ_{k≥2} c_k z^{2k−2}
    laurent: [f64; LAURENT_TERMS + 1],
}

impl Weierstrass {
    pub fn new(inv: WeierstrassInvariants) -> Result<Self, EllipticError> {
        let WeierstrassInvariants { g2, g3 } = inv;
        let mut laurent = [0.0; LAURENT_TERMS + 1];
        laurent[2] = g2 / 20.0;
        laurent[3] = g3 / 28.0;
        for k in 4..=LAURENT_TERMS {
            let s: f64 = (2..=k - 2).map(|m| laurent[m] * laurent[k - m]).sum();
            laurent[k] = 3.0 * s / ((2 * k + 1) as f64 * (k as f64 - 3.0));
        }
        if g2 == 0.0 && g3 == 0.0 {
            return Ok(Self { inv, half_period: None, laurent });
        }
        let disc = inv.discriminant();
        if disc == 0.0 {
            return Err(EllipticError::DegenerateLattice { g2, g3 });
        }
        let half_period = if disc > 0.0 {
            // three real roots e1 > e2 > e3
            let r = (g2 / 12.0).sqrt();
            let theta = ((g3 / 8.0) / r.powi(3)).clamp(-1.0, 1.0).acos();
            let roots = [0.0, 2.0, 4.0].map(|j| 2.0 * r * ((theta + j * PI) / 3.0).cos());
            let (e1, e2, e3) = (roots[0], roots[1].max(roots[2]), roots[1].min(roots[2]));
            let m = (e2 - e3) / (e1 - e3);
            let k = EllipticModulus::new(m.sqrt().min(1.0 - f64::EPSILON))?;
            complete_elliptic_k(k)? / (e1 - e3).sqrt()
        } else {
            // one real root e2
            let s = (g3 * g3 / 64.0 - g2.powi(3) / 1728.0).sqrt();
            let e2 = (g3 / 8.0 + s).cbrt() + (g3 / 8.0 - s).cbrt();
            let h = (3.0 * e2 * e2 - g2 / 4.0).sqrt();
            let m = 0.5 - 0.75 * e2 / h;
            let k = EllipticModulus::new(m.sqrt())?;
            complete_elliptic_k(k)? / h.sqrt()
        };
        Ok(Self { inv, half_period: Some(half_period), laurent })
    }

    pub fn invariants(&self) -> WeierstrassInvariants {
        self.inv
    }

    /// Real half-period ω: ℘ has poles at 2mω on the real axis.
    pub fn half_period(&self) -> Option<f64> {
        self.half_period
    }

    fn series(&self, z: f64) -> (f64, f64) {
        let z2 = z * z;
        let mut p = 1.0 / z2;
        let mut dp = -2.0 / (z2 * z);
        let mut pow = 1.0; // z^{2k-4}
        for k in 2..=LAURENT_TERMS {
            let c = self.laurent[k];
            // z^{2k-2} = pow * z^2, derivative (2k-2) z^{2k-3}
            dp += (2 * k - 2) as f64 * c * pow * z;
            pow *= z2;
            p += c * pow;
        }
        (p, dp)
    }

    /// (℘(z), ℘′(z)); `None` within the pole threshold of a real pole.
    pub fn eval(&self, z: f64) -> Option<(f64, f64)> {
        if !z.is_finite() {
            return None;
        }
        let Some(omega) = self.half_period else {
            if z.abs() < POLE_THRESHOLD {
                return None;
            }
            return Some((1.0 / (z * z), -2.0 / (z * z * z)));
        };
        let period = 2.0 * omega;
        // ℘ is even, so reduce |z| and restore the sign of ℘′ at the end
        let mut sign = z.signum();
        let mut r = z.abs() % period;
        if r > omega {
            r = period - r;
            sign = -sign;
        }
        if r < POLE_THRESHOLD {
            return None;
        }
        // a fixed number of halvings keeps the evaluation path identical on
        // (0, ω], so the result is smooth in z
        let mut w = r;
        for _ in 0..DUPLICATIONS {
            w *= 0.5;
        }
        let (mut p, mut dp) = self.series(w);
        let WeierstrassInvariants { g2, g3 } = self.inv;
        for _ in 0..DUPLICATIONS {
            let p2 = 6.0 * p * p - 0.5 * g2;
            // (℘′)² from the defining identity rather than from the tracked ℘′
            let q = 4.0 * p * p * p - g2 * p - g3;
            let next = -2.0 * p + p2 * p2 / (4.0 * q);
            let dnext = -dp + 3.0 * p * p2 / dp - p2.powi(3) / (4.0 * dp.powi(3));
            p = next;
            dp = dnext;
        }
        Some((p, sign * dp))
    }
}

/// Convenience wrapper: ℘ and ℘′ at `z`.
pub fn weierstrass_p(z: f64, inv: WeierstrassInvariants) -> Result<Option<(f64, f64)>, EllipticError> {
    Ok(Weierstrass::new(inv)?.eval(z))
}
