//! Plot windows for the eight reference figures.

use rdexact::catalog::{family, Params, Window};

pub struct Figure {
    pub id: u8,
    pub family: &'static str,
    pub params: &'static [(&'static str, f64)],
    pub title: &'static str,
    pub window: Window,
}

impl Figure {
    pub fn params(&self) -> Params {
        self.params.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    }

    /// Smooth verification window of the same family and parameters.
    pub fn residual_window(&self) -> anyhow::Result<Window> {
        Ok(family(self.family)?.window(&self.params())?)
    }
}

pub const IDS: std::ops::RangeInclusive<u8> = 1..=8;

pub fn figure(id: u8) -> Option<Figure> {
    let weierstrass = |c: &'static [(&'static str, f64)], title| Figure {
        id,
        family: "fisher/weierstrass",
        params: c,
        title,
        window: Window::new([0.0, 10.0], [-10.0, 0.0], 101, 101),
    };
    Some(match id {
        1 => Figure {
            id,
            family: "elliptic/plain",
            params: &[("index", 0.0)],
            title: "u_0 = 2x ds(x^2 + 6t) for u_t - u_xx = -2u^3",
            window: Window::new([-2.0, 2.0], [0.0, 1.0], 101, 101),
        },
        2 => Figure {
            id,
            family: "elliptic/plain",
            params: &[("index", 1.0)],
            title: "u_1 for u_t - u_xx = -2u^3, 0 < t <= 200",
            // t = 0 is excluded, so the rows start one step in
            window: Window::new([-2.0, 2.0], [2.0, 200.0], 101, 100),
        },
        3 => Figure {
            id,
            family: "elliptic/tilde",
            params: &[("index", 1.0)],
            title: "u~_1 = 2x dn/cs for u_t - u_xx = -2u^3",
            window: Window::new([-2.0, 2.0], [0.0, 1.0], 101, 101),
        },
        4 => Figure {
            id,
            family: "elliptic/hat",
            params: &[("index", 0.0)],
            title: "u^_0 = x sd(x^2 + 6t) for u_t - u_xx = 2u^3",
            window: Window::new([-2.0, 2.0], [0.0, 1.0], 101, 101),
        },
        5 => Figure {
            id,
            family: "elliptic/hat",
            params: &[("index", 2.0)],
            title: "u^_2 for u_t - u_xx = 2u^3",
            window: Window::new([-2.0, 2.0], [0.0, 1.0], 101, 101),
        },
        6 => weierstrass(&[("C", 1e2), ("k", 0.0)], "z^2 wp(z; 0, 1e2), z = exp(-y/sqrt6 + 5tau/6), Fisher equation"),
        7 => weierstrass(&[("C", 1e4), ("k", 0.0)], "z^2 wp(z; 0, 1e4), z = exp(-y/sqrt6 + 5tau/6), Fisher equation"),
        8 => weierstrass(&[("C", 1e6), ("k", 0.0)], "z^2 wp(z; 0, 1e6), z = exp(-y/sqrt6 + 5tau/6), Fisher equation"),
        _ => return None,
    })
}
