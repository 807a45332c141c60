//! Exact solutions of nonlinear reaction–diffusion equations u_t − u_xx = f(u),
//! together with the numerical machinery that checks them: finite-difference
//! PDE residuals with convergence-order estimates, first-integral checks for
//! the elliptic solution chains, and a method-of-lines simulator that measures
//! front velocities.

pub mod elliptic;
pub mod catalog;
pub mod equations;
pub mod simulate;
pub mod verify;
