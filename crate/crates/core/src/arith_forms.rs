//! Closed forms for arithmetic sequences `m_i = m1 + (i-1) d` with `gcd(m1, d) = 1`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monideal::{IrreducibleComponent, IrreducibleDecomposition};
use crate::poly::{is_member_binomial, Binomial, Monomial, TermOrder};
use crate::seq::{arithmetic_profile, ArithmeticProfile, CurveSequence};

pub(crate) fn choose(n: i64, k: i64) -> i64 {
    if k < 0 || n < k {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Product of `x_var^exp` over `(1-based var, exp)` pairs, exponents adding up on repeats.
pub(crate) fn monomial_of(nvars: usize, factors: &[(usize, u64)]) -> Result<Monomial> {
    let mut exps = vec![0u32; nvars];
    for &(v, e) in factors {
        let e = u32::try_from(e).map_err(|_| Error::Overflow("closed-form exponent"))?;
        exps[v - 1] = exps[v - 1]
            .checked_add(e)
            .ok_or(Error::Overflow("closed-form exponent"))?;
    }
    Monomial::new(exps)
}

pub(crate) fn binomial_of(
    nvars: usize,
    lead: &[(usize, u64)],
    trail: &[(usize, u64)],
) -> Result<Binomial> {
    let (a, b) = (monomial_of(nvars, lead)?, monomial_of(nvars, trail)?);
    Binomial::oriented(a, b, &TermOrder::DegRevLex).ok_or_else(|| {
        Error::Inconsistency(format!("closed-form binomial with equal terms {lead:?}"))
    })
}

pub(crate) fn assert_members(seq: &CurveSequence, gens: &[Binomial]) -> Result<()> {
    match gens.iter().find(|b| !is_member_binomial(seq, b)) {
        Some(b) => Err(Error::Inconsistency(format!(
            "closed-form element {b} is not in I(C) for {seq}"
        ))),
        None => Ok(()),
    }
}

/// The arithmetic basis for a curve with `n` terms placed on variables `offset+1 .. offset+n+1`
/// of a ring with `nvars` variables.
pub(crate) fn arithmetic_basis_shifted(
    p: &ArithmeticProfile,
    nvars: usize,
    offset: usize,
) -> Result<Vec<Binomial>> {
    let n = p.n;
    let x = |i: usize| i + offset;
    let mut out = Vec::new();
    for i in 2..n {
        for j in i..n {
            out.push(binomial_of(
                nvars,
                &[(x(i), 1), (x(j), 1)],
                &[(x(i - 1), 1), (x(j + 1), 1)],
            )?);
        }
    }
    let k = p.k as usize;
    for i in 1..=k {
        out.push(binomial_of(
            nvars,
            &[(x(1), p.alpha), (x(i), 1)],
            &[(x(n - k + i), 1), (x(n), p.q), (x(n + 1), p.d)],
        )?);
    }
    Ok(out)
}

/// Quadrics `x_i x_j - x_{i-1} x_{j+1}` (`2 <= i <= j <= n-1`) and
/// `x1^alpha x_i - x_{n-k+i} x_n^q x_{n+1}^d` (`1 <= i <= k`).
pub fn gb_arithmetic(seq: &CurveSequence) -> Result<Vec<Binomial>> {
    let p = arithmetic_profile(seq)?;
    let gens = arithmetic_basis_shifted(&p, seq.num_vars(), 0)?;
    assert_members(seq, &gens)?;
    Ok(gens)
}

/// Components `<x1^{alpha+e_i}, x2, .., x_i^2, .., x_{n-1}>` for `2 <= i <= n-1`, where the bump
/// `e_i` is 1 past `k`; when `k = n-1` the component `<x1^{alpha+1}, x2, .., x_{n-1}>` joins.
pub fn irred_dec_arithmetic(p: &ArithmeticProfile) -> IrreducibleDecomposition {
    let n = p.n;
    let k = p.k as usize;
    let mut comps = Vec::new();
    for i in 2..n {
        let bump = u32::from(k < n - 1 && i > k);
        let mut powers = vec![(0, p.alpha as u32 + bump)];
        powers.extend((2..n).map(|j| (j - 1, if j == i { 2 } else { 1 })));
        comps.push(IrreducibleComponent::new(powers));
    }
    if k == n - 1 {
        let mut powers = vec![(0, p.alpha as u32 + 1)];
        powers.extend((2..n).map(|j| (j - 1, 1)));
        comps.push(IrreducibleComponent::new(powers));
    }
    IrreducibleDecomposition::from_components(comps)
}

/// `ceil((m_n - 1) / (n - 1))`, cross-checked against `alpha` / `alpha + 1`.
pub fn reg_arithmetic(seq: &CurveSequence) -> Result<u64> {
    let p = arithmetic_profile(seq)?;
    let n = seq.len() as u64;
    let reg = (seq.last() - 1).div_ceil(n - 1);
    let by_profile = if p.k == n - 1 { p.alpha } else { p.alpha + 1 };
    if reg != by_profile {
        return Err(Error::Inconsistency(format!(
            "regularity {reg} disagrees with profile value {by_profile} for {seq}"
        )));
    }
    Ok(reg)
}

/// Hilbert data of an arithmetic curve.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArithHilbert {
    pub hs_numerator: Vec<i64>,
    pub hp_slope: i64,
    pub hp_constant: i64,
    /// First degree from which the Hilbert function equals the Hilbert polynomial.
    pub hf_reg: u64,
    n: usize,
    alpha: u64,
}

impl ArithHilbert {
    pub fn hf_at(&self, s: i64) -> i64 {
        if s < 0 {
            return 0;
        }
        let n = self.n as i64;
        if s < self.alpha as i64 {
            choose(s + 2, 2) + (n - 2) * choose(s + 1, 2)
        } else {
            self.hp_slope * s + self.hp_constant
        }
    }
}

pub fn hilbert_arithmetic(seq: &CurveSequence) -> Result<ArithHilbert> {
    let p = arithmetic_profile(seq)?;
    Ok(hilbert_from_profile(&p, seq.last()))
}

pub(crate) fn hilbert_from_profile(p: &ArithmeticProfile, mn: u64) -> ArithHilbert {
    let (n, a, k) = (p.n as i64, p.alpha as i64, p.k as i64);
    let mut hs_numerator = vec![1];
    hs_numerator.extend(std::iter::repeat_n(n - 1, p.alpha as usize));
    hs_numerator.push(n - 1 - k);
    while hs_numerator.last() == Some(&0) {
        hs_numerator.pop();
    }
    let hp_constant = a * (2 - n + k) - choose(a + 1, 2) - (n - 2) * choose(a, 2) + 1;
    ArithHilbert {
        hs_numerator,
        hp_slope: mn as i64,
        hp_constant,
        hf_reg: if p.k < p.n as u64 - 1 {
            p.alpha
        } else {
            p.alpha - 1
        },
        n: p.n,
        alpha: p.alpha,
    }
}

/// `tau` with `m1 - 1 = c (n-1) + tau`, cross-checked against `k`.
pub fn cm_type_arithmetic(seq: &CurveSequence) -> Result<u64> {
    let p = arithmetic_profile(seq)?;
    let n = p.n as u64;
    let by_k = if p.k == n - 1 { n - 1 } else { n - 1 - p.k };
    if by_k != p.tau {
        return Err(Error::Inconsistency(format!(
            "type {} vs {by_k} from k for {seq}",
            p.tau
        )));
    }
    Ok(p.tau)
}

/// `m1 ≡ 2 (mod n-1)`.
pub fn is_gorenstein(seq: &CurveSequence) -> Result<bool> {
    let p = arithmetic_profile(seq)?;
    let modulus = p.n as u64 - 1;
    Ok(seq.first() % modulus == 2 % modulus)
}

/// Number of minimal generators: `C(n-1, 2) + k`.
pub fn betti1_arithmetic(p: &ArithmeticProfile) -> u64 {
    choose(p.n as i64 - 1, 2) as u64 + p.k
}
