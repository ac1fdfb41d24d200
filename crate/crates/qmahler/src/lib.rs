//! Exact computation of the Mahler measures m(Q_n) for the family
//!
//! ```text
//! Q_n(z_1, ..., z_n, y) = y + ((z_1 + w)/(z_1 + 1)) ... ((z_n + w)/(z_n + 1)),
//! ```
//!
//! where `w = exp(2*pi*i/3)`. Each m(Q_n) is an exact linear combination, with
//! coefficients in Q(sqrt3), of the basis values `zeta(2h+1)/pi^{2h}` and
//! `L(chi_-3, 2h+2)/pi^{2h+1}` (equivalently, of `zeta'(-2h)` and
//! `L'(chi_-3, -2h-1)` with rational coefficients).
//!
//! The crate is organised as a computation pipeline plus an independent
//! verification layer:
//!
//! - [`numbers`]: exact scalars — arbitrary-precision rationals, the quadratic
//!   field Q(sqrt3), parity-tagged polynomials, and a binary multiprecision
//!   float with an explicit precision contract.
//! - [`recpoly`]: the six recursively defined polynomial families
//!   R_k, S_k, P_k, Q_k, Y_k, Z_k.
//! - [`series`]: the alternate, generating-function route — truncated Laurent
//!   series over parity polynomials, Bernoulli numbers, and the families
//!   A..O extracted as series coefficients.
//! - [`closedforms`]: the four log-power integrals f1, f2, g1, g2 and their
//!   sign-independent sums, in exact `log/pi`-polynomial form.
//! - [`lvalues`]: numerical zeta, Hurwitz zeta, L(chi_-3, s) and depth-1
//!   polylogarithms, plus the exact sixth-root-of-unity identity layer.
//! - [`coeffs`]: the coefficient tables a, b, c, d built by the exact
//!   recursion from d_{0,0} = 1.
//! - [`measure`]: assembly of m(Q_n) in both bases and numeric evaluation.
//! - [`oracle`]: adaptive quadrature (including principal values) and direct
//!   torus quadrature, used to verify everything upstream.

pub mod closedforms;
pub mod coeffs;
pub mod error;
pub mod lvalues;
pub mod measure;
pub mod numbers;
pub mod oracle;
pub mod recpoly;
pub mod series;

pub use error::Error;
pub use numbers::{ParityPolynomial, Parity, PrecisionContext, Rational, Real, SqrtThree};
