//! Counting standard monomials: Hilbert functions and series numerators of `R / I`.

use std::collections::HashMap;

use super::MonomialIdeal;
use crate::error::{Error, Result};
use crate::poly::Monomial;
use crate::seq::CurveSequence;

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Number of degree-`s` monomials in `k` variables.
fn monomial_count(k: usize, s: u32) -> u64 {
    if k == 0 {
        return u64::from(s == 0);
    }
    binomial(s as u64 + k as u64 - 1, k as u64 - 1)
}

type Gens = Vec<Vec<u32>>;

fn minimize_gens(mut gens: Gens) -> Gens {
    gens.sort_by_key(|g| (g.iter().sum::<u32>(), g.clone()));
    gens.dedup();
    let mut kept: Gens = Vec::new();
    for g in gens {
        if !kept.iter().any(|k| k.iter().zip(&g).all(|(a, b)| a <= b)) {
            kept.push(g);
        }
    }
    kept
}

/// Memoised divide-and-conquer counter of standard monomials, splitting on the last variable.
#[derive(Debug, Default)]
pub struct HilbertCounter {
    memo: HashMap<(Gens, u32), u64>,
}

impl HilbertCounter {
    pub fn new() -> Self {
        Self::default()
    }

    /// Degree-`s` monomials in `nvars` variables outside `ideal`.
    pub fn count(&mut self, ideal: &MonomialIdeal, nvars: usize, s: u32) -> u64 {
        let gens: Gens = ideal
            .min_gens()
            .iter()
            .filter(|g| g.exps()[nvars.min(g.nvars())..].iter().all(|&e| e == 0))
            .map(|g| g.exps()[..nvars].to_vec())
            .collect();
        self.count_gens(minimize_gens(gens), nvars, s)
    }

    fn count_gens(&mut self, gens: Gens, k: usize, s: u32) -> u64 {
        if gens.is_empty() {
            return monomial_count(k, s);
        }
        if gens.iter().any(|g| g.iter().all(|&e| e == 0)) {
            return 0;
        }
        if k == 0 {
            return u64::from(s == 0);
        }
        let key = (gens, s);
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let gens = &key.0;
        let last = k - 1;
        let max_last = gens.iter().map(|g| g[last]).max().unwrap_or(0);
        let mut total = 0;
        for e in 0..=s {
            let colon: Gens = gens
                .iter()
                .filter(|g| g[last] <= e.min(max_last))
                .map(|g| g[..last].to_vec())
                .collect();
            total += self.count_gens(minimize_gens(colon), last, s - e);
        }
        self.memo.insert(key, total);
        total
    }
}

/// `HF_{R/I}(s)` where `R` has the first `nvars` variables (generators using others are ignored).
pub fn hf_quotient(ideal: &MonomialIdeal, nvars: usize, s: u32) -> u64 {
    HilbertCounter::new().count(ideal, nvars, s)
}

fn for_each_monomial(
    nvars: usize,
    total: usize,
    s: u32,
    prefix: &mut Vec<u32>,
    f: &mut impl FnMut(&[u32]),
) {
    if prefix.len() + 1 == nvars {
        prefix.push(s);
        prefix.resize(total, 0);
        f(prefix);
        prefix.truncate(nvars - 1);
        return;
    }
    for e in 0..=s {
        prefix.push(e);
        for_each_monomial(nvars, total, s - e, prefix, f);
        prefix.pop();
    }
}

/// Enumerates every degree-`s` monomial; a slow second opinion for [`hf_quotient`].
pub fn hf_quotient_brute(ideal: &MonomialIdeal, nvars: usize, s: u32) -> u64 {
    if nvars == 0 {
        return u64::from(s == 0 && !ideal.is_unit());
    }
    let mut count = 0;
    let total = ideal.nvars();
    for_each_monomial(nvars, total, s, &mut Vec::new(), &mut |e| {
        let m = Monomial::new(e.to_vec()).expect("small exponents");
        if !ideal.contains(&m) {
            count += 1;
        }
    });
    count
}

/// `c_s = HF(s) - 2 HF(s-1) + HF(s-2)`, i.e. the coefficients of `(1-t)^2 * HS(t)`.
pub fn numerator_from_hf(hf: &[u64]) -> Vec<i64> {
    let at = |s: isize| if s < 0 { 0 } else { hf[s as usize] as i64 };
    let mut c: Vec<i64> = (0..hf.len() as isize)
        .map(|s| at(s) - 2 * at(s - 1) + at(s - 2))
        .collect();
    while c.last() == Some(&0) {
        c.pop();
    }
    c
}

const NUMERATOR_DEGREE_CAP: u32 = 4000;

/// Numerator of the Hilbert series of `R / I` over `(1-t)^2`.
///
/// The Taylor complex bounds the numerator degree by the degree of the lcm of the generators;
/// `nvars` further zero coefficients past that bound confirm the quotient has dimension two.
pub fn hs_numerator(ideal: &MonomialIdeal, nvars: usize) -> Result<Vec<i64>> {
    let bound = ideal.lcm_of_gens().degree();
    if bound > NUMERATOR_DEGREE_CAP {
        return Err(Error::NonTerminating(NUMERATOR_DEGREE_CAP));
    }
    let top = bound + nvars as u32 + 1;
    let mut counter = HilbertCounter::new();
    let hf: Vec<u64> = (0..=top).map(|s| counter.count(ideal, nvars, s)).collect();
    let full = {
        let at = |s: isize| if s < 0 { 0 } else { hf[s as usize] as i64 };
        (0..hf.len() as isize)
            .map(|s| at(s) - 2 * at(s - 1) + at(s - 2))
            .collect::<Vec<i64>>()
    };
    if full[bound as usize + 1..].iter().any(|&c| c != 0) {
        return Err(Error::NonTerminating(top));
    }
    Ok(numerator_from_hf(&hf))
}

fn trim(mut v: Vec<i64>) -> Vec<i64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// The two sums whose difference `first - t * correction` is the series numerator:
/// standard monomials modulo `I + <x_n, x_{n+1}>`, and monomials `x^g` avoiding `x_{n+1}`
/// that are standard while `x_n x^g` is not.
pub fn hs_general_split(
    ideal: &MonomialIdeal,
    seq: &CurveSequence,
) -> Result<(Vec<i64>, Vec<i64>)> {
    let n = seq.len();
    if ideal.nvars() != n + 1 {
        return Err(Error::DimensionMismatch {
            expected: n + 1,
            got: ideal.nvars(),
        });
    }
    let bound = ideal.lcm_of_gens().degree() + 1;
    if bound > NUMERATOR_DEGREE_CAP {
        return Err(Error::NonTerminating(NUMERATOR_DEGREE_CAP));
    }
    let xn = n - 1;
    let colon = ideal.colon_var_power(xn, 1);
    let mut counter = HilbertCounter::new();
    let mut colon_counter = HilbertCounter::new();
    let mut first = Vec::new();
    let mut correction = Vec::new();
    for s in 0..=bound {
        first.push(counter.count(ideal, n - 1, s) as i64);
        let outside = counter.count(ideal, n, s) as i64;
        let outside_colon = colon_counter.count(&colon, n, s) as i64;
        correction.push(outside - outside_colon);
    }
    Ok((trim(first), trim(correction)))
}
