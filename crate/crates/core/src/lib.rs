//! Vanishing ideals of projective monomial curves and their invariants.
//!
//! The curve attached to `m1 < ... < mn` lives in `P^n` and is parametrized by
//! `x_i = s^{m_i} t^{m_n - m_i}`, `x_{n+1} = t^{m_n}`. The crate computes its toric ideal
//! with an independent binomial Buchberger engine and evaluates closed-form answers
//! for arithmetic and generalized arithmetic sequences, so the two can be compared.

pub mod arith_forms;
pub mod error;
pub mod gen_forms;
pub mod grobner;
pub mod koszul;
pub mod monideal;
pub mod poly;
pub mod report;
pub mod seq;
pub mod verify;

pub use error::{Error, Result};
pub use poly::{BiDegree, Binomial, Monomial, TermOrder};
pub use seq::CurveSequence;
