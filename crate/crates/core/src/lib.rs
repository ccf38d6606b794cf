//! Numerical bounds on the negative eigenvalues of self-adjoint operators in
//! terms of Schatten norms of semigroup differences.
//!
//! Given self-adjoint `A`, `B` with `σ(A) ⊂ [0,∞)` and the semigroup
//! difference `D_t = e^{-tB} - e^{-tA}`, the zeros of the determinant function
//! `h(z) = det(I - z(I - z e^{-tA})^{-1} D_t)` inside the unit disk sit at
//! `e^{tλ}` for the negative eigenvalues `λ` of `B`. Averaging `log|h|` over
//! circles (Jensen's identity) turns zero counting into moment identities and,
//! after norm estimates, into explicit bounds with computable constants. The
//! [`schrodinger`] module instantiates the machinery for discretized
//! Schrödinger operators `-Δ + V` and compares against Lieb-Thirring-type
//! baselines.
//!
//! Layout:
//! - [`matrix`]: dense symmetric/complex linear algebra (eigensolver, matrix
//!   exponential, Schatten norms, log-determinants, resolvents);
//! - [`specfun`]: Γ, ζ, Lambert W, modified Bessel K, adaptive quadrature;
//! - [`jensen`]: the determinant function, moment identities and the abstract
//!   trace / Hilbert-Schmidt bounds;
//! - [`constants`]: the γ-dependent constants entering the bounds;
//! - [`schrodinger`]: grids, potentials, Green-kernel convolutions and the
//!   explicit Schrödinger bounds;
//! - [`trials`]: seeded random operator pairs for verification runs.

pub mod constants;
pub mod jensen;
pub mod matrix;
pub mod schrodinger;
pub mod specfun;
pub mod trials;

mod util;

pub use util::pairwise_sum;
