//! Exact arithmetic: rationals, polynomials and rational functions in `x`,
//! the elliptic expression ring, and closed forms in `Γ(1/4)` and `π`.

mod closed_form;
mod expr;
pub mod numbers;
mod poly;
mod ratfun;
mod zjet;

pub use closed_form::{ClosedForm, ClosedFormTerm, Key};
pub use expr::{EllipticExpr, ExprTerm, Monomial};
pub use numbers::{bernoulli, euler_number};
pub use poly::Poly;
pub use ratfun::RatFun;
pub use rug::{Integer, Rational};
pub use zjet::zjet_at_half;

