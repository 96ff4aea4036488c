//! Closed forms for generalized arithmetic sequences `m_i = h m1 + (i-1) d` (`i >= 2`).
//!
//! The Groebner basis, decomposition, regularity and Hilbert data below need `h >= 2`,
//! `h | d`, `gcd(m1, d) = 1` and `n >= 3`. The tail `(m2/h, ..., mn/h)` is arithmetic and
//! defines the same curve as `(m2, ..., mn)`; it is called the reduced tail here.

use serde::{Deserialize, Serialize};

use crate::arith_forms::{
    arithmetic_basis_shifted, assert_members, binomial_of, choose, hilbert_from_profile,
    irred_dec_arithmetic, ArithHilbert,
};
use crate::error::{Error, Result};
use crate::monideal::{IrreducibleComponent, IrreducibleDecomposition};
use crate::poly::Binomial;
use crate::seq::{
    arithmetic_profile, classify, generalized_profile, ArithmeticProfile, CurveSequence,
    GeneralizedProfile,
};

/// A subsequence `m_{i_1} < ... < m_{i_l}` (ending at `m_n`) of generalized arithmetic shape with
/// `h > 1` and `h m_{i_1}` outside the sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NotCmWitness {
    /// 1-based positions in the sequence.
    pub indices: Vec<usize>,
    pub h: u64,
    pub d: u64,
}

/// First witness by increasing length, then lexicographic `(i_1, i_2)`.
pub fn not_cm_witness(seq: &CurveSequence) -> Option<NotCmWitness> {
    let m = seq.terms();
    let n = m.len();
    let mn = seq.last();
    let position = |value: u64| m.binary_search(&value).ok();
    for l in 3..=n {
        for i1 in 0..n {
            for i2 in i1 + 1..n - 1 {
                let span = mn - m[i2];
                let steps = (l - 2) as u64;
                if !span.is_multiple_of(steps) {
                    continue;
                }
                let d = span / steps;
                let Some(rest) = m[i2].checked_sub(d) else {
                    continue;
                };
                if rest == 0 || rest % m[i1] != 0 {
                    continue;
                }
                let h = rest / m[i1];
                if h <= 1 || position(h * m[i1]).is_some() {
                    continue;
                }
                let tail: Option<Vec<usize>> =
                    (0..=steps).map(|j| position(m[i2] + j * d)).collect();
                if let Some(tail) = tail {
                    let mut indices = vec![i1 + 1];
                    indices.extend(tail.into_iter().map(|i| i + 1));
                    return Some(NotCmWitness { indices, h, d });
                }
            }
        }
    }
    None
}

/// `(h, d)` of a generalized arithmetic sequence (arithmetic counts as `h = 1`) with `gcd(m1, d) = 1`.
pub(crate) fn class_with_gcd(seq: &CurveSequence) -> Result<(u64, u64)> {
    let c = classify(seq);
    let (h, d) = c.h_d().ok_or(Error::NotGeneralizedArithmetic)?;
    if c.gcd_m1_d != Some(1) {
        return Err(Error::GcdViolation {
            left: seq.first(),
            right: d,
            gcd: c.gcd_m1_d.unwrap_or(0),
        });
    }
    Ok((h, d))
}

/// Cohen-Macaulay iff the sequence is arithmetic.
pub fn is_cm_generalized(seq: &CurveSequence) -> Result<bool> {
    let (h, _) = class_with_gcd(seq)?;
    if seq.len() < 3 {
        return Err(Error::WrongN {
            expected: 3,
            got: seq.len(),
        });
    }
    Ok(h == 1)
}

/// `n = 2`, or `n = 3` with `h = 1` and `m1` even.
pub fn is_complete_intersection(seq: &CurveSequence) -> Result<bool> {
    let (h, _) = class_with_gcd(seq)?;
    Ok(seq.len() == 2 || (seq.len() == 3 && h == 1 && seq.first().is_multiple_of(2)))
}

/// Profiles needed by every closed form of this module.
#[derive(Debug, Clone)]
struct Setting {
    profile: GeneralizedProfile,
    tail: ArithmeticProfile,
}

fn setting(seq: &CurveSequence) -> Result<Setting> {
    let profile = generalized_profile(seq)?;
    let tail_seq = seq.tail_scaled(profile.h)?;
    let tail = arithmetic_profile(&tail_seq)?;
    Ok(Setting { profile, tail })
}

/// The reduced tail `(m2/h, ..., mn/h)`.
pub fn reduced_tail(seq: &CurveSequence) -> Result<CurveSequence> {
    let p = generalized_profile(seq)?;
    seq.tail_scaled(p.h)
}

/// Reduced-tail basis on `x2..x_{n+1}`, the `h`-binomials `x1^h x_i - x2 x_{i-1} x_{n+1}^{h-1}`,
/// and `x1^{jh} x2^{b_j} - x_{s_j} x_n^{l_j} x_{n+1}^{j(h-1)+d/h}` for `1 <= j <= delta/h`.
pub fn gb_generalized(seq: &CurveSequence) -> Result<Vec<Binomial>> {
    let Setting { profile: p, tail } = setting(seq)?;
    let n = seq.len();
    let nv = seq.num_vars();
    let mut out = arithmetic_basis_shifted(&tail, nv, 1)?;
    for i in 3..=n {
        out.push(binomial_of(
            nv,
            &[(1, p.h), (i, 1)],
            &[(2, 1), (i - 1, 1), (n + 1, p.h - 1)],
        )?);
    }
    for j in 1..=p.delta_prime as usize {
        let ju = j as u64;
        out.push(binomial_of(
            nv,
            &[(1, ju * p.h), (2, p.beta[j])],
            &[
                (p.sigma[j] as usize, 1),
                (n, p.lambda[j]),
                (n + 1, ju * (p.h - 1) + p.d / p.h),
            ],
        )?);
    }
    assert_members(seq, &out)?;
    Ok(out)
}

/// `C(n-2, 2) + k' + (n-2) + delta/h`, with `k'` taken from the reduced tail.
pub fn gb_generalized_size(seq: &CurveSequence) -> Result<u64> {
    let Setting { profile: p, tail } = setting(seq)?;
    let n = seq.len() as i64;
    Ok(choose(n - 2, 2) as u64 + tail.k + (n as u64 - 2) + p.delta_prime)
}

/// `<x1^h> + q` for each component `q` of the reduced tail, plus
/// `<x1^{jh}, x2^{b_{j-1}}, x3, ..., x_n>` for `2 <= j <= delta/h`.
pub fn irred_dec_generalized(seq: &CurveSequence) -> Result<IrreducibleDecomposition> {
    let Setting { profile: p, tail } = setting(seq)?;
    let n = seq.len();
    let mut comps: Vec<IrreducibleComponent> = irred_dec_arithmetic(&tail)
        .components
        .into_iter()
        .map(|c| {
            let mut powers = vec![(0, p.h as u32)];
            powers.extend(c.powers.iter().map(|&(v, e)| (v + 1, e)));
            IrreducibleComponent::new(powers)
        })
        .collect();
    for j in 2..=p.delta_prime as usize {
        let mut powers = vec![(0, (j as u64 * p.h) as u32), (1, p.beta[j - 1] as u32)];
        powers.extend((2..n).map(|v| (v, 1)));
        comps.push(IrreducibleComponent::new(powers));
    }
    Ok(IrreducibleDecomposition::from_components(comps))
}

/// `delta - 1` unless `n - 1` divides `m1`, in which case `delta`.
pub fn reg_generalized(seq: &CurveSequence) -> Result<u64> {
    let p = generalized_profile(seq)?;
    let divides = seq.first().is_multiple_of(seq.len() as u64 - 1);
    Ok(if divides { p.delta } else { p.delta - 1 })
}

/// Hilbert data of a generalized arithmetic curve.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenHilbert {
    pub hs_numerator: Vec<i64>,
    pub hp_slope: i64,
    pub hp_constant: i64,
    /// Constant term of the Hilbert polynomial of the reduced tail.
    pub gamma: i64,
    h: u64,
    beta: Vec<u64>,
    tail: ArithHilbert,
}

impl GenHilbert {
    /// `#{(a, b) : a + b < s, j = floor(a/h) >= 1, b < beta_j}` with `beta_j = 0` past `delta/h`.
    pub fn delta_at(&self, s: i64) -> i64 {
        let h = self.h as i64;
        (0..s.max(0))
            .map(|a| {
                let j = (a / h) as usize;
                if j == 0 {
                    return 0;
                }
                let bj = self.beta.get(j).copied().unwrap_or(0) as i64;
                bj.min(s - a)
            })
            .sum()
    }

    /// `sum_{i<h} HF'(s-i) + Delta_{s+1}`, `HF'` being the reduced tail's Hilbert function.
    pub fn hf_at(&self, s: i64) -> i64 {
        if s < 0 {
            return 0;
        }
        (0..self.h as i64)
            .map(|i| self.tail.hf_at(s - i))
            .sum::<i64>()
            + self.delta_at(s + 1)
    }
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn add_at(v: &mut Vec<i64>, deg: usize, c: i64) {
    if v.len() <= deg {
        v.resize(deg + 1, 0);
    }
    v[deg] += c;
}

fn trimmed(mut v: Vec<i64>) -> Vec<i64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

pub fn hilbert_generalized(seq: &CurveSequence) -> Result<GenHilbert> {
    let Setting { profile: p, tail } = setting(seq)?;
    let tail_h = hilbert_from_profile(&tail, seq.last() / p.h);
    let h = p.h as usize;
    let dp = p.delta_prime as usize;
    let ones = vec![1i64; h];

    let mut num = poly_mul(&ones, &tail_h.hs_numerator);
    for j in h..p.delta as usize {
        add_at(&mut num, j, 1);
    }
    let mut jumps = vec![0i64];
    for i in 1..dp {
        add_at(&mut jumps, i * h + p.beta[i] as usize, 1);
    }
    for (deg, c) in poly_mul(&ones, &jumps).into_iter().enumerate() {
        add_at(&mut num, deg, -c);
    }

    let mn = seq.last() as i64;
    let gamma = tail_h.hp_constant;
    let hi = p.h as i64;
    let beta_sum: i64 = p.beta[1..dp].iter().map(|&b| b as i64).sum();
    let hp_constant = -(mn * (hi - 1)) / 2 + hi * gamma + hi * beta_sum;
    Ok(GenHilbert {
        hs_numerator: trimmed(num),
        hp_slope: mn,
        hp_constant,
        gamma,
        h: p.h,
        beta: p.beta,
        tail: tail_h,
    })
}

/// The `n = 3` series numerator, selected by `delta` against `2h`, the parity of `m1` and `h = 2`.
pub fn hs_n3(seq: &CurveSequence) -> Result<Vec<i64>> {
    if seq.len() != 3 {
        return Err(Error::CaseNotApplicable("n must be 3"));
    }
    let p = generalized_profile(seq).map_err(|e| match e {
        Error::GcdViolation { .. } | Error::HNotDividingD { .. } | Error::HTooSmall { .. } => {
            Error::CaseNotApplicable("needs h >= 2, h | d and gcd(m1, d) = 1")
        }
        other => other,
    })?;
    let (h, delta) = (p.h as usize, p.delta as usize);
    let odd = seq.first() % 2 == 1;
    let mut c = Vec::new();
    if delta == 2 * h {
        add_at(&mut c, 0, 1);
        add_at(&mut c, 1, 2);
        if odd {
            (2..=h).for_each(|j| add_at(&mut c, j, 3));
            add_at(&mut c, h + 1, 1);
            add_at(&mut c, 2 * h, -1);
        } else {
            add_at(&mut c, 2, 3);
            (3..=h).for_each(|j| add_at(&mut c, j, 4));
            add_at(&mut c, h + 1, 3);
            add_at(&mut c, h + 2, 1);
            add_at(&mut c, 2 * h, -1);
            add_at(&mut c, 2 * h + 1, -1);
        }
    } else if h == 2 {
        add_at(&mut c, 0, 1);
        add_at(&mut c, 1, 2);
        (2..=delta - 2).for_each(|j| add_at(&mut c, j, 3));
        add_at(&mut c, delta - 1, -((delta as i64 - 6) / 2));
        add_at(&mut c, delta, -((delta as i64 - 2) / 2));
    } else {
        let top = (seq.m(3) / p.h) as usize;
        if top < h {
            return Err(Error::CaseNotApplicable("m3/h < h"));
        }
        (0..h).for_each(|j| add_at(&mut c, j, j as i64 + 1));
        (h..top).for_each(|j| add_at(&mut c, j, h as i64 + 1));
        (0..h.saturating_sub(2)).for_each(|j| add_at(&mut c, top + j, (h - j) as i64));
        add_at(&mut c, top + h - 2, 1);
        let last_j = if odd {
            p.delta_prime as usize - 1
        } else {
            p.delta_prime as usize
        };
        for j in 2..=last_j {
            let e = j * h + p.beta[j] as usize;
            add_at(&mut c, e, -1);
            add_at(&mut c, e + 1, -1);
        }
        if odd {
            add_at(&mut c, delta, -1);
        }
    }
    Ok(trimmed(c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;

    fn seq(v: &[u64]) -> CurveSequence {
        CurveSequence::new(v.to_vec()).unwrap()
    }

    const EXAMPLE: [u64; 6] = [7, 30, 39, 48, 57, 66];

    #[test]
    fn witnesses() {
        let w = not_cm_witness(&seq(&EXAMPLE)).unwrap();
        assert_eq!((w.indices, w.h, w.d), (vec![1, 2, 3, 4, 5, 6], 3, 9));
        assert_eq!(not_cm_witness(&seq(&[10, 13, 16, 19, 22])), None);
        let w = not_cm_witness(&seq(&[2, 35, 46, 57, 68])).unwrap();
        assert_eq!((w.indices, w.h, w.d), (vec![1, 3, 5], 12, 22));
    }

    #[test]
    fn cm_and_complete_intersection() {
        assert!(!is_cm_generalized(&seq(&EXAMPLE)).unwrap());
        assert!(is_cm_generalized(&seq(&[10, 13, 16, 19, 22])).unwrap());
        assert!(is_cm_generalized(&seq(&[3, 5, 7])).unwrap());
        assert_eq!(
            is_cm_generalized(&seq(&[1, 2, 5])),
            Err(Error::NotGeneralizedArithmetic)
        );
        assert!(is_complete_intersection(&seq(&[1, 2])).unwrap());
        assert!(is_complete_intersection(&seq(&[4, 7, 10])).unwrap());
        assert!(!is_complete_intersection(&seq(&[3, 5, 7])).unwrap());
    }

    #[test]
    fn example_basis() {
        let g: Vec<String> = gb_generalized(&seq(&EXAMPLE))
            .unwrap()
            .iter()
            .map(|b| b.to_string())
            .collect();
        assert!(g.contains(&"x1^3*x6 - x2*x5*x7^2".to_string()));
        assert!(g.contains(&"x1^3*x2^5 - x3*x6^2*x7^5".to_string()));
        assert!(g.contains(&"x1^15 - x3*x6*x7^13".to_string()));
        assert_eq!(g.len() as u64, gb_generalized_size(&seq(&EXAMPLE)).unwrap());
    }

    #[test]
    fn example_decomposition_and_regularity() {
        let d = irred_dec_generalized(&seq(&EXAMPLE)).unwrap();
        assert_eq!(d.len(), 3 + 4);
        assert!(d.to_text().contains("[x1^15, x2, x3, x4, x5, x6]"));
        assert_eq!(reg_generalized(&seq(&EXAMPLE)).unwrap(), 14);
        assert_eq!(reg_generalized(&seq(&[5, 24, 28, 32, 36])).unwrap(), 11);
        // gcd(4, 6) = 2, outside the hypotheses.
        assert!(matches!(
            reg_generalized(&seq(&[4, 18, 24, 30])),
            Err(Error::GcdViolation { .. })
        ));
    }

    #[test]
    fn example_hilbert() {
        let h = hilbert_generalized(&seq(&EXAMPLE)).unwrap();
        assert_eq!(
            h.hs_numerator,
            vec![1, 5, 9, 13, 13, 13, 10, 6, 1, -1, -1, -1, 0, -1, 0, -1]
        );
        let from_num = |s: i64| -> i64 {
            h.hs_numerator
                .iter()
                .enumerate()
                .map(|(i, c)| c * (s - i as i64 + 1).max(0))
                .sum()
        };
        for s in 0..40 {
            assert_eq!(h.hf_at(s), from_num(s), "s = {s}");
        }
        assert_eq!(h.hf_at(200) - 200 * h.hp_slope, h.hp_constant);
    }

    #[test]
    fn n3_cases_agree_with_general_numerator() {
        let mut checked = 0;
        for h in 2..8u64 {
            for e in 1..6u64 {
                let d = h * e;
                for m1 in 1..60u64 {
                    if m1.gcd(&d) != 1 {
                        continue;
                    }
                    let s = CurveSequence::generalized(m1, h, d, 3).unwrap();
                    match hs_n3(&s) {
                        Ok(c) => {
                            assert_eq!(c, hilbert_generalized(&s).unwrap().hs_numerator, "{s}");
                            checked += 1;
                        }
                        Err(Error::CaseNotApplicable(_)) => assert!(s.m(3) / h < h, "{s}"),
                        Err(e) => panic!("{s}: {e}"),
                    }
                }
            }
        }
        assert!(checked > 300);
        assert_eq!(
            hs_n3(&seq(&[3, 10, 14])).unwrap(),
            hilbert_generalized(&seq(&[3, 10, 14]))
                .unwrap()
                .hs_numerator
        );
        assert!(hs_n3(&seq(&[5, 14, 18])).is_ok());
    }
}
