//! Exact arithmetic in `SL_2(F_q)` for odd primes `q`.
//!
//! Elements are handled in Bruhat coordinates: the Borel part
//! `h(α)·X₁₂(ψ)` and the big cell `X₁₂(τ)·n(α)·X₁₂(ψ)`. Powers of cell
//! elements are expressed through the homogeneous Fibonacci polynomials
//! `f_r(X, Y)`, which turns n-th root extraction into solving a pair of
//! polynomial equations over the base field.
//!
//! - [`field`]: prime fields, quadratic extensions, field n-th roots
//! - [`fibpoly`]: the polynomials `u_r`, `f_r`, `S_n`
//! - [`sl2`]: elements, Bruhat normal form, powers, conjugacy classes
//! - [`roots`]: all solutions of `X^n = g`
//! - [`census`]: counts of n-th powers, by formula and by enumeration
//! - [`words`]: images of power words `X₁^{r₁}⋯X_l^{r_l}`
//! - [`verify`]: the oracle-equivalence suite driven by the CLI

pub mod census;
pub mod error;
pub mod fibpoly;
pub mod field;
pub mod roots;
pub mod sl2;
pub mod verify;
pub mod words;

pub use error::{Error, Result};
pub use field::{FieldElem, PrimeField, QuadElem, QuadExtField};
pub use fibpoly::BiPoly;
pub use sl2::{BruhatForm, ClassType, Sl2Elem};
