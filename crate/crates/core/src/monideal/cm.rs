//! Cohen-Macaulay tests on curve initial ideals: the generator criterion, the type oracle,
//! and the set `F` behind the last-step regularity check.

use std::collections::HashSet;

use super::MonomialIdeal;
use crate::error::{Error, Result};
use crate::poly::{bidegree, variable_bidegree, BiDegree, Monomial};
use crate::seq::CurveSequence;

const STANDARD_MONOMIAL_CAP: usize = 2_000_000;

/// Standard monomials of `I` in the first `nvars` variables (other coordinates zero).
/// Fails with `BoundExceeded` if there are more than the internal cap, e.g. for a non-Artinian input.
pub fn standard_monomials(ideal: &MonomialIdeal, nvars: usize) -> Result<Vec<Monomial>> {
    let total = ideal.nvars();
    let mut out = Vec::new();
    // Depth-first, multiplying only by variables at or after the last one used, so every
    // monomial is produced once; standard monomials are closed under division.
    let mut stack = vec![(Monomial::one(total), 0usize)];
    while let Some((m, from)) = stack.pop() {
        if ideal.contains(&m) {
            continue;
        }
        out.push(m.clone());
        if out.len() > STANDARD_MONOMIAL_CAP {
            return Err(Error::BoundExceeded {
                what: "standard monomial count",
                cap: STANDARD_MONOMIAL_CAP as u64,
            });
        }
        for v in from..nvars {
            let next = m.with_exp(v, m.exp(v) + 1);
            stack.push((next, v));
        }
    }
    Ok(out)
}

/// No minimal generator involves `x_n` or `x_{n+1}`.
pub fn cm_via_initial(ideal: &MonomialIdeal, n: usize) -> bool {
    ideal
        .min_gens()
        .iter()
        .all(|g| g.exps().iter().skip(n - 1).all(|&e| e == 0))
}

/// Number of bidegrees `b` among standard monomials of `I + <x_n, x_{n+1}>` such that no
/// `b + a_i` (`i < n`) is again such a bidegree.
pub fn cm_type_oracle(seq: &CurveSequence, ideal: &MonomialIdeal) -> Result<u64> {
    let n = seq.len();
    if ideal.nvars() != n + 1 {
        return Err(Error::DimensionMismatch {
            expected: n + 1,
            got: ideal.nvars(),
        });
    }
    if !cm_via_initial(ideal, n) {
        return Err(Error::NotCohenMacaulay);
    }
    let standard = standard_monomials(ideal, n - 1)?;
    let degrees: HashSet<BiDegree> = standard
        .iter()
        .map(|m| bidegree(seq, m))
        .collect::<Result<_>>()?;
    let steps: Vec<BiDegree> = (0..n - 1).map(|v| variable_bidegree(seq, v)).collect();
    Ok(degrees
        .iter()
        .filter(|&&b| steps.iter().all(|&a| !degrees.contains(&(b + a))))
        .count() as u64)
}

/// Monomials in `x_1..x_{n-1}` lying in `I|_{x_n = x_{n+1} = 1}` but not in `I|_{x_n = x_{n+1} = 0}`.
pub fn f_set(seq: &CurveSequence, ideal: &MonomialIdeal) -> Result<Vec<Monomial>> {
    let n = seq.len();
    let at_zero = ideal.restrict(|v| v < n - 1);
    let at_one = ideal.set_to_one(|v| v >= n - 1);
    Ok(standard_monomials(&at_zero, n - 1)?
        .into_iter()
        .filter(|m| at_one.contains(m))
        .collect())
}

/// The largest degree in `F` equals `reg`.
pub fn last_step_check(seq: &CurveSequence, ideal: &MonomialIdeal, reg: u64) -> Result<bool> {
    let f = f_set(seq, ideal)?;
    Ok(f.iter().map(|m| m.degree() as u64).max() == Some(reg))
}
