//! Named families with default parameters and smooth verification windows.
//! This is what the CLI and the acceptance suite enumerate.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{
    bell, cosh_cos_solution, elliptic_solution, fisher_family, generalized_fisher, plane_wave, pole_inventory,
    quadratic_rational, solitary_wave, CatalogError, FisherVariant, GeneralizedVariant, Sampler, SolitaryBranch,
    SolutionKind,
};
use crate::elliptic::{complete_elliptic_k, EllipticModulus, Weierstrass, WeierstrassInvariants};
use crate::equations::derived_constants;

pub type Params = BTreeMap<String, f64>;

/// A rectangle of (space, time) with a sampling resolution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Window {
    pub x: [f64; 2],
    pub t: [f64; 2],
    pub n_x: usize,
    pub n_t: usize,
}

impl Window {
    pub fn new(x: [f64; 2], t: [f64; 2], n_x: usize, n_t: usize) -> Self {
        Self { x, t, n_x, n_t }
    }
}

type Builder = fn(&Params) -> Result<Sampler, CatalogError>;
type WindowFn = fn(&Params) -> Window;

pub struct FamilyEntry {
    pub id: &'static str,
    pub formula: &'static str,
    pub equation: &'static str,
    /// Default parameters. NaN marks an optional parameter derived from the others.
    pub defaults: &'static [(&'static str, f64)],
    build: Builder,
    window: WindowFn,
}

#[derive(Debug, Clone, Serialize)]
pub struct FamilyInfo {
    pub id: &'static str,
    pub formula: &'static str,
    pub equation: &'static str,
    pub defaults: BTreeMap<&'static str, Option<f64>>,
    pub window: Window,
}

impl FamilyEntry {
    /// Defaults overlaid with `overrides`; unknown names are a usage error.
    pub fn params(&self, overrides: &Params) -> Result<Params, CatalogError> {
        let mut p: Params = self.defaults.iter().map(|(k, v)| (k.to_string(), *v)).collect();
        for (k, v) in overrides {
            if !p.contains_key(k) {
                let names: Vec<&str> = self.defaults.iter().map(|(k, _)| *k).collect();
                return Err(CatalogError::Usage(format!(
                    "family {} has no parameter `{k}`; valid: {}",
                    self.id,
                    names.join(", ")
                )));
            }
            p.insert(k.clone(), *v);
        }
        Ok(p)
    }

    pub fn build(&self, overrides: &Params) -> Result<Sampler, CatalogError> {
        (self.build)(&self.params(overrides)?)
    }

    pub fn sampler(&self) -> Sampler {
        self.build(&Params::new()).expect("defaults are valid")
    }

    /// A window where the family is smooth, for the given parameters.
    pub fn window(&self, overrides: &Params) -> Result<Window, CatalogError> {
        Ok((self.window)(&self.params(overrides)?))
    }

    pub fn info(&self) -> FamilyInfo {
        FamilyInfo {
            id: self.id,
            formula: self.formula,
            equation: self.equation,
            defaults: self.defaults.iter().map(|(k, v)| (*k, (!v.is_nan()).then_some(*v))).collect(),
            window: (self.window)(&self.params(&Params::new()).expect("defaults")),
        }
    }
}

fn get(p: &Params, key: &str) -> f64 {
    p[key]
}

fn flag(p: &Params, key: &str) -> bool {
    get(p, key) != 0.0
}

fn index(p: &Params) -> Result<usize, CatalogError> {
    let i = get(p, "index");
    if i < 0.0 || i.fract() != 0.0 || i > 64.0 {
        return Err(CatalogError::Usage(format!("index must be a small non-negative integer, got {i}")));
    }
    Ok(i as usize)
}

/// Central part of the widest pole-free interval of the chain element on (0, 4K).
fn pole_free_span(kind: SolutionKind, idx: usize) -> (f64, f64) {
    let k = complete_elliptic_k(EllipticModulus::lemniscatic()).expect("K(1/√2)");
    let state = match kind.state(idx) {
        Ok(s) => s,
        Err(_) => return (0.5, 1.0),
    };
    let mut edges = vec![0.0];
    edges.extend(pole_inventory(&state, 1e-3, 4.0 * k - 1e-3, 2000));
    edges.push(4.0 * k);
    let (a, b) = edges
        .windows(2)
        .map(|w| (w[0], w[1]))
        .fold((0.0, 0.0), |best, cur| if cur.1 - cur.0 > best.1 - best.0 { cur } else { best });
    let pad = 0.3 * (b - a);
    (a + pad, b - pad)
}

const CHAIN_X: [f64; 2] = [0.1, 0.4];

fn chain_window(p: &Params) -> Window {
    let kind = match get(p, "kind") as i64 {
        1 => SolutionKind::Tilde,
        2 => SolutionKind::Hat,
        _ => SolutionKind::Plain,
    };
    let (ya, yb) = pole_free_span(kind, index(p).unwrap_or(0));
    let [x0, x1] = CHAIN_X;
    let t0 = (ya - x0 * x0) / 6.0;
    let t1 = ((yb - x1 * x1) / 6.0).max(t0 + 1e-3);
    Window::new(CHAIN_X, [t0, t1], 61, 61)
}

fn chain_kind(code: f64) -> Result<SolutionKind, CatalogError> {
    match code as i64 {
        0 => Ok(SolutionKind::Plain),
        1 => Ok(SolutionKind::Tilde),
        2 => Ok(SolutionKind::Hat),
        _ => Err(CatalogError::Usage(format!("kind must be 0 (plain), 1 (tilde) or 2 (hat), got {code}"))),
    }
}

fn profile_window(p: &Params) -> Window {
    let kind = chain_kind(get(p, "kind")).unwrap_or(SolutionKind::Plain);
    let (ya, yb) = pole_free_span(kind, index(p).unwrap_or(0));
    let k1 = get(p, "k1").abs().max(1e-12);
    let (ya, yb) = (ya / k1, yb / k1);
    let linear = if kind == SolutionKind::Hat { 2.0 * get(p, "sign") } else { -2.0 * get(p, "sign") };
    let k2 = get(p, "k2");
    let x = [0.1 - k2, 0.4 - k2];
    let t = if linear > 0.0 {
        // w = cosh(x + k2)·e^{3t} ∈ [cosh 0.1·e^{3t0}, cosh 0.4·e^{3t1}]
        let t0 = (ya / 0.1f64.cosh()).ln() / 3.0;
        let t1 = (yb / 0.4f64.cosh()).ln() / 3.0;
        [t0, t1.max(t0 + 1e-3)]
    } else {
        // w = cos(x + k2)·e^{−3t} ∈ [cos 0.4·e^{−3t1}, cos 0.1·e^{−3t0}]
        let t0 = -(yb / 0.1f64.cos()).ln() / 3.0;
        let t1 = -(ya / 0.4f64.cos()).ln() / 3.0;
        [t0, t1.max(t0 + 1e-3)]
    };
    Window::new(x, t, 61, 61)
}

/// u(x, t) = c1^k·U(c1·x, c1²·t), so the window scales with 1/|c1|.
fn plane_window(p: &Params) -> Window {
    let s = get(p, "c1").abs().max(1e-3);
    Window::new([-4.0 / s, 4.0 / s], [0.0, 0.5 / (s * s)], 241, 21)
}

fn weierstrass_window(p: &Params) -> Window {
    let omega = Weierstrass::new(WeierstrassInvariants::new(0.0, get(p, "C")))
        .ok()
        .and_then(|w| w.half_period())
        .unwrap_or(1.0);
    // keep z = exp(−y/√6 + 5τ/6 + k) ≤ 1.2ω, well below the first pole at 2ω
    let tau1 = 1.2 * (1.2 * omega).ln() - 1.2 * get(p, "k");
    let y = [0.0, 4.0];
    let y = if flag(p, "reflect") { [-y[1], -y[0]] } else { y };
    Window::new(y, [tau1 - 1.0, tau1], 81, 41)
}

fn generalized_window(p: &Params) -> Window {
    let c1 = get(p, "c1");
    let y = if c1 > 0.0 { [6.0, 14.0] } else { [-14.0, -6.0] };
    let y = if flag(p, "reflect") { [-y[1], -y[0]] } else { y };
    let y = [y[0] + 2.0 * 6f64.sqrt() * get(p, "c") / c1, y[1] + 2.0 * 6f64.sqrt() * get(p, "c") / c1];
    Window::new(y, [0.0, 1.0], 81, 11)
}

fn fisher_coth_window(p: &Params) -> Window {
    let shift = 2.0 * 6f64.sqrt() * get(p, "c");
    let y = [4.0 + shift, 12.0 + shift];
    let y = if flag(p, "reflect") { [-y[1], -y[0]] } else { y };
    Window::new(y, [0.0, 1.0], 201, 31)
}

fn reflectable(y: [f64; 2], p: &Params) -> [f64; 2] {
    if flag(p, "reflect") {
        [-y[1], -y[0]]
    } else {
        y
    }
}

pub fn families() -> Vec<FamilyEntry> {
    vec![
        FamilyEntry {
            id: "elliptic/plain",
            formula: "u_n = 2x phi_n(x^2 + 6t), phi_0 = ds(y, 1/sqrt2), phi_{n+1} = phi_n'/phi_n",
            equation: "u_t - u_xx = -2u^3",
            defaults: &[("index", 0.0), ("kind", 0.0)],
            build: |p| elliptic_solution(SolutionKind::Plain, index(p)?),
            window: chain_window,
        },
        FamilyEntry {
            id: "elliptic/tilde",
            formula: "u~_n = 2x sqrt(C_n)/phi_n(x^2 + 6t), odd n",
            equation: "u_t - u_xx = -2u^3",
            defaults: &[("index", 1.0), ("kind", 1.0)],
            build: |p| elliptic_solution(SolutionKind::Tilde, index(p)?),
            window: chain_window,
        },
        FamilyEntry {
            id: "elliptic/hat",
            formula: "u^_n = 2x sqrt(B_n)/phi_n(x^2 + 6t), even n, B_n = -C_n",
            equation: "u_t - u_xx = 2u^3",
            defaults: &[("index", 0.0), ("kind", 2.0)],
            build: |p| elliptic_solution(SolutionKind::Hat, index(p)?),
            window: chain_window,
        },
        FamilyEntry {
            id: "elliptic/profile",
            formula: "u = w_x phi(w), w = k1 cosh(x+k2) e^{3t} or k1 cos(x+k2) e^{-3t}; kind 0 plain, 1 tilde, 2 hat",
            equation: "u_t - u_xx = -2(u^3 + sign u) (plain, tilde) or 2(u^3 + sign u) (hat)",
            defaults: &[("sign", -1.0), ("k1", 1.0), ("k2", 0.0), ("kind", 0.0), ("index", 0.0)],
            build: |p| cosh_cos_solution(get(p, "sign"), get(p, "k1"), get(p, "k2"), chain_kind(get(p, "kind"))?, index(p)?),
            window: profile_window,
        },
        FamilyEntry {
            id: "plane_wave",
            formula: "u = c1^k / (1 + c2 exp(-c1 x - ((2k+1)c1^2 - lambda2 c1) t))^k, k = 2/(n-1); lambda2 defaults to (k+1)(c1+1)",
            equation: "u_t - u_xx = -k(k+1)u^n + lambda2 k u^((n+1)/2) + ((k+1)c1^2 - lambda2 c1) k u",
            defaults: &[("n", 2.0), ("c1", -1.0), ("c2", 1.0), ("lambda2", f64::NAN)],
            build: |p| {
                let (n, c1) = (get(p, "n"), get(p, "c1"));
                let mut l2 = get(p, "lambda2");
                if l2.is_nan() {
                    l2 = (derived_constants(n)?.k + 1.0) * (c1 + 1.0);
                }
                plane_wave(n, c1, get(p, "c2"), l2)
            },
            window: plane_window,
        },
        FamilyEntry {
            id: "solitary/tanh",
            formula: "u = (-nu)^(1/(n-1)) tanh(b(y - sigma tau/sqrt2) + C)^(2/(n-1)), b = (n-1) sqrt(-nu/2)",
            equation: "u_tau - u_yy = (1 + nu u^(1-n))(-(n+1)u^n + nu(n-3)u + sigma u^((n+1)/2))",
            defaults: &[("n", 2.0), ("nu", -1.5), ("sigma", 0.9), ("C", 1.0)],
            build: |p| solitary_wave(get(p, "n"), get(p, "nu"), get(p, "sigma"), SolitaryBranch::Tanh, get(p, "C")),
            window: |_| Window::new([0.5, 4.0], [0.0, 0.5], 36, 11),
        },
        FamilyEntry {
            id: "solitary/tanh_inverse",
            formula: "u = (-nu)^(1/(n-1)) tanh(b(y - sigma tau/sqrt2) + C)^(2/(1-n)), b = (n-1) sqrt(-nu/2)",
            equation: "u_tau - u_yy = (1 + nu u^(1-n))(-(n+1)u^n + nu(n-3)u + sigma u^((n+1)/2))",
            defaults: &[("n", 2.0), ("nu", -1.5), ("sigma", 0.9), ("C", 1.0)],
            build: |p| solitary_wave(get(p, "n"), get(p, "nu"), get(p, "sigma"), SolitaryBranch::TanhInverse, get(p, "C")),
            window: |_| Window::new([0.5, 4.0], [0.0, 0.5], 71, 21),
        },
        FamilyEntry {
            id: "solitary/tan",
            formula: "u = nu^(1/(n-1)) tan(C - b(y - sigma tau/sqrt2))^(2/(n-1)), b = (n-1) sqrt(nu/2)",
            equation: "u_tau - u_yy = (1 + nu u^(1-n))(-(n+1)u^n + nu(n-3)u + sigma u^((n+1)/2))",
            defaults: &[("n", 2.0), ("nu", 1.5), ("sigma", 0.9), ("C", 1.0)],
            build: |p| solitary_wave(get(p, "n"), get(p, "nu"), get(p, "sigma"), SolitaryBranch::Tan, get(p, "C")),
            window: |_| Window::new([0.0, 0.6], [0.0, 0.4], 101, 61),
        },
        FamilyEntry {
            id: "solitary/rational",
            formula: "u = (2/((n-1)^2 s^2))^(1/(n-1)), s = y - sign(n-1) sigma tau/sqrt2 + C > 0",
            equation: "u_tau - u_yy = -(n+1)u^n + sigma u^((n+1)/2)",
            defaults: &[("n", 2.0), ("nu", 0.0), ("sigma", 0.9), ("C", 1.0)],
            build: |p| solitary_wave(get(p, "n"), get(p, "nu"), get(p, "sigma"), SolitaryBranch::Rational, get(p, "C")),
            window: |_| Window::new([0.0, 3.0], [0.0, 0.5], 181, 61),
        },
        FamilyEntry {
            id: "fisher/ablowitz",
            formula: "u = 1/(1 + c2 exp(y/sqrt6 - 5 tau/6))^2",
            equation: "u_tau - u_yy = u(1 - u)",
            defaults: &[("c2", 1.0), ("reflect", 0.0)],
            build: |p| fisher_family(FisherVariant::Ablowitz { c2: get(p, "c2") }, flag(p, "reflect")),
            window: |p| Window::new(reflectable([-10.0, 10.0], p), [0.0, 2.0], 81, 11),
        },
        FamilyEntry {
            id: "fisher/u1",
            formula: "u = (1 - tanh(y/(2 sqrt6) - 5 tau/12 - c))^2 / 4",
            equation: "u_tau - u_yy = u(1 - u)",
            defaults: &[("c", 0.0), ("reflect", 0.0)],
            build: |p| fisher_family(FisherVariant::U1 { c: get(p, "c") }, flag(p, "reflect")),
            window: |p| Window::new(reflectable([-10.0, 10.0], p), [0.0, 2.0], 81, 11),
        },
        FamilyEntry {
            id: "fisher/u2",
            formula: "u = (1 - coth(y/(2 sqrt6) - 5 tau/12 - c))^2 / 4",
            equation: "u_tau - u_yy = u(1 - u)",
            defaults: &[("c", 0.0), ("reflect", 0.0)],
            build: |p| fisher_family(FisherVariant::U2 { c: get(p, "c") }, flag(p, "reflect")),
            window: fisher_coth_window,
        },
        FamilyEntry {
            id: "fisher/u3",
            formula: "u = 1 - (1 - tanh(y/(2 sqrt6) - 5 tau/12 - c))^2 / 4",
            equation: "u_tau - u_yy = -u(1 - u)",
            defaults: &[("c", 0.0), ("reflect", 0.0)],
            build: |p| fisher_family(FisherVariant::U3 { c: get(p, "c") }, flag(p, "reflect")),
            window: |p| Window::new(reflectable([-10.0, 10.0], p), [0.0, 2.0], 81, 11),
        },
        FamilyEntry {
            id: "fisher/u4",
            formula: "u = 1 - (1 - coth(y/(2 sqrt6) - 5 tau/12 - c))^2 / 4",
            equation: "u_tau - u_yy = -u(1 - u)",
            defaults: &[("c", 0.0), ("reflect", 0.0)],
            build: |p| fisher_family(FisherVariant::U4 { c: get(p, "c") }, flag(p, "reflect")),
            window: fisher_coth_window,
        },
        FamilyEntry {
            id: "fisher/weierstrass",
            formula: "u = z^2 P(z; 0, C), z = exp(-y/sqrt6 + 5 tau/6 + k), P the Weierstrass function",
            equation: "u_tau - u_yy = u(1 - u)",
            defaults: &[("C", 100.0), ("k", 0.0), ("reflect", 0.0)],
            build: |p| {
                fisher_family(FisherVariant::Weierstrass { big_c: get(p, "C"), k_shift: get(p, "k") }, flag(p, "reflect"))
            },
            window: weierstrass_window,
        },
        FamilyEntry {
            id: "generalized_fisher/tanh",
            formula: "u = (c1^2/4)(1 + tanh(c1 y/(2 sqrt6) + c1(2c1 - 3) tau/12 - c))^2",
            equation: "u_tau - u_yy = u(-c1 + (c1 + 1) u^(1/2) - u)",
            defaults: &[("c1", 2.0), ("c", 0.0), ("reflect", 0.0)],
            build: |p| generalized_fisher(get(p, "c1"), GeneralizedVariant::Tanh, get(p, "c"), flag(p, "reflect")),
            window: |p| {
                // the profile steepens like |c1|, so refine with it
                let m = get(p, "c1").abs().max(1.0);
                Window::new(reflectable([-15.0, 15.0], p), [0.0, 1.0], (120.0 * m) as usize + 1, (10.0 * m) as usize + 1)
            },
        },
        FamilyEntry {
            id: "generalized_fisher/coth",
            formula: "u = (c1^2/4)(1 + coth(c1 y/(2 sqrt6) + c1(2c1 - 3) tau/12 - c))^2",
            equation: "u_tau - u_yy = u(-c1 + (c1 + 1) u^(1/2) - u)",
            defaults: &[("c1", 2.0), ("c", 0.0), ("reflect", 0.0)],
            build: |p| generalized_fisher(get(p, "c1"), GeneralizedVariant::Coth, get(p, "c"), flag(p, "reflect")),
            window: generalized_window,
        },
        FamilyEntry {
            id: "quadratic_rational",
            formula: "u = 12((4 +- sqrt6)x^2 + 10(12 +- 5 sqrt6)t) / (x^2 + 10(3 +- sqrt6)t)^2",
            equation: "u_t - u_xx = -u^2",
            defaults: &[("sign", 1.0)],
            build: |p| quadratic_rational(get(p, "sign")),
            window: |_| Window::new([-3.0, 3.0], [0.5, 2.0], 201, 51),
        },
        FamilyEntry {
            id: "bell",
            formula: "u = 3 / (2 cosh^2((x - epsilon t/sqrt6)/2 + C))",
            equation: "u_t - u_xx = u(1 - u + epsilon (3/2 - u)^(1/2))",
            defaults: &[("epsilon", 0.3), ("C", 0.0)],
            build: |p| Ok(bell(get(p, "epsilon"), get(p, "C"))),
            window: |_| Window::new([-10.0, 10.0], [0.0, 2.0], 81, 11),
        },
    ]
}

/// Look up a family by id.
pub fn family(id: &str) -> Result<FamilyEntry, CatalogError> {
    let all = families();
    let names: Vec<&str> = all.iter().map(|f| f.id).collect();
    let joined = names.join(", ");
    all.into_iter()
        .find(|f| f.id == id)
        .ok_or_else(|| CatalogError::Usage(format!("unknown family `{id}`; valid: {joined}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_family_builds_and_is_defined_on_its_window() {
        for f in families() {
            let s = f.sampler();
            let w = f.window(&Params::new()).unwrap();
            let mut defined = 0;
            let mut total = 0;
            for i in 0..w.n_x {
                for j in 0..w.n_t {
                    let x = w.x[0] + (w.x[1] - w.x[0]) * i as f64 / (w.n_x - 1) as f64;
                    let t = w.t[0] + (w.t[1] - w.t[0]) * j as f64 / (w.n_t - 1) as f64;
                    total += 1;
                    if s.eval(x, t).is_some() {
                        defined += 1;
                    }
                }
            }
            assert_eq!(defined, total, "{} window {:?}", f.id, w);
        }
    }

    #[test]
    fn unknown_names_list_alternatives() {
        let err = family("nope").err().unwrap().to_string();
        assert!(err.contains("fisher/u1"));
        let f = family("fisher/u1").unwrap();
        let mut p = Params::new();
        p.insert("zzz".into(), 1.0);
        assert!(f.build(&p).unwrap_err().to_string().contains("valid: c, reflect"));
    }

    #[test]
    fn plane_wave_lambda2_defaults_to_kpp() {
        let f = family("plane_wave").unwrap();
        let mut p = Params::new();
        p.insert("c1".into(), -2.0);
        let s = f.build(&p).unwrap();
        assert_eq!(s.params["lambda2"], -3.0);
    }
}
