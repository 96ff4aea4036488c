//! Input sequences m1 < ... < mn, their classification and derived integer profiles.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A strictly increasing sequence of positive integers defining a projective monomial curve.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct CurveSequence {
    terms: Vec<u64>,
}

impl CurveSequence {
    pub fn new(terms: Vec<u64>) -> Result<Self> {
        if terms.len() < 2 {
            return Err(Error::TooShort(terms.len()));
        }
        if terms.contains(&0) {
            return Err(Error::NonPositive);
        }
        if let Some(i) = terms.windows(2).position(|w| w[0] >= w[1]) {
            return Err(Error::NonIncreasing {
                index: i + 1,
                prev: terms[i],
                next: terms[i + 1],
            });
        }
        // Bidegree arithmetic multiplies terms by exponents; keep plenty of headroom.
        if *terms.last().unwrap() > u32::MAX as u64 {
            return Err(Error::Overflow("sequence term"));
        }
        Ok(Self { terms })
    }

    /// Builds `m1, h*m1 + d, h*m1 + 2d, ...` with `n` terms.
    pub fn generalized(m1: u64, h: u64, d: u64, n: usize) -> Result<Self> {
        let mut terms = vec![m1];
        for i in 1..n as u64 {
            let t = h
                .checked_mul(m1)
                .and_then(|x| x.checked_add(i.checked_mul(d)?))
                .ok_or(Error::Overflow("sequence term"))?;
            terms.push(t);
        }
        Self::new(terms)
    }

    pub fn arithmetic(m1: u64, d: u64, n: usize) -> Result<Self> {
        Self::generalized(m1, 1, d, n)
    }

    pub fn terms(&self) -> &[u64] {
        &self.terms
    }

    /// Number of terms `n`; the curve ring has `n + 1` variables.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn num_vars(&self) -> usize {
        self.terms.len() + 1
    }

    /// 1-based access, matching the usual `m_i` indexing.
    pub fn m(&self, i: usize) -> u64 {
        self.terms[i - 1]
    }

    pub fn first(&self) -> u64 {
        self.terms[0]
    }

    pub fn last(&self) -> u64 {
        *self.terms.last().unwrap()
    }

    pub fn gcd_all(&self) -> u64 {
        self.terms.iter().fold(0, |g, &x| g.gcd(&x))
    }

    /// The sequence divided by the gcd of its terms.
    pub fn normalized(&self) -> CurveSequence {
        let g = self.gcd_all();
        CurveSequence {
            terms: self.terms.iter().map(|x| x / g).collect(),
        }
    }

    /// The tail `(m2, ..., mn)`, each divided by `divisor`.
    pub fn tail_scaled(&self, divisor: u64) -> Result<CurveSequence> {
        if self.terms[1..].iter().any(|x| x % divisor != 0) {
            return Err(Error::Inconsistency(format!(
                "{divisor} does not divide every term of the tail of {self}"
            )));
        }
        CurveSequence::new(self.terms[1..].iter().map(|x| x / divisor).collect())
    }
}

impl fmt::Display for CurveSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.terms.iter().map(u64::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl TryFrom<Vec<u64>> for CurveSequence {
    type Error = Error;
    fn try_from(v: Vec<u64>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<CurveSequence> for Vec<u64> {
    fn from(s: CurveSequence) -> Vec<u64> {
        s.terms
    }
}

impl FromStr for CurveSequence {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_sequence(s)
    }
}

/// Parses `"10,13,16"`. Order is checked, never repaired.
pub fn parse_sequence(text: &str) -> Result<CurveSequence> {
    let text = text.trim();
    if text.is_empty() {
        return Err(Error::TooShort(0));
    }
    let mut terms = Vec::new();
    for piece in text.split(',') {
        let piece = piece.trim();
        let value: i128 = piece.parse().map_err(|_| {
            if !piece.is_empty()
                && piece
                    .trim_start_matches('-')
                    .bytes()
                    .all(|b| b.is_ascii_digit())
            {
                Error::Overflow("sequence term")
            } else {
                Error::Parse {
                    what: "sequence term",
                    input: piece.to_string(),
                }
            }
        })?;
        if value <= 0 {
            return Err(Error::NonPositive);
        }
        terms.push(u64::try_from(value).map_err(|_| Error::Overflow("sequence term"))?);
    }
    CurveSequence::new(terms)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ClassKind {
    /// `m_i = m1 + (i-1) d`.
    Arithmetic {
        d: u64,
    },
    /// `m_i = h m1 + (i-1) d` for `i >= 2`, with `h >= 2`.
    GeneralizedArithmetic {
        h: u64,
        d: u64,
    },
    General,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceClass {
    pub kind: ClassKind,
    pub gcd_all: u64,
    pub gcd_m1_d: Option<u64>,
}

impl SequenceClass {
    /// `(h, d)` for both arithmetic (`h = 1`) and generalized sequences.
    pub fn h_d(&self) -> Option<(u64, u64)> {
        match self.kind {
            ClassKind::Arithmetic { d } => Some((1, d)),
            ClassKind::GeneralizedArithmetic { h, d } => Some((h, d)),
            ClassKind::General => None,
        }
    }
}

/// Finds the unique `(h, d)` fit, if any. For `n = 2` every sequence is read as arithmetic.
pub fn classify(seq: &CurveSequence) -> SequenceClass {
    let m = seq.terms();
    let m1 = m[0];
    let fit = if m.len() == 2 {
        Some((1, m[1] - m1))
    } else {
        let d = m[2] - m[1];
        let rest = m[1].checked_sub(d).filter(|&x| x > 0 && x % m1 == 0);
        rest.map(|x| (x / m1, d))
            .filter(|&(h, d)| (1..m.len() as u64).all(|i| h * m1 + i * d == m[i as usize]))
    };
    let kind = match fit {
        Some((1, d)) => ClassKind::Arithmetic { d },
        Some((h, d)) => ClassKind::GeneralizedArithmetic { h, d },
        None => ClassKind::General,
    };
    SequenceClass {
        kind,
        gcd_all: seq.gcd_all(),
        gcd_m1_d: fit.map(|(_, d)| m1.gcd(&d)),
    }
}

fn require_coprime(m1: u64, d: u64) -> Result<()> {
    let g = m1.gcd(&d);
    if g != 1 {
        return Err(Error::GcdViolation {
            left: m1,
            right: d,
            gcd: g,
        });
    }
    Ok(())
}

/// `x = quot * modulus + rem` with `rem` in `1..=modulus` (never zero).
fn div_positive_residue(x: i64, modulus: i64) -> (i64, i64) {
    let quot = (x - 1).div_euclid(modulus);
    (quot, x - quot * modulus)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArithmeticProfile {
    pub n: usize,
    pub d: u64,
    pub q: u64,
    pub r: u64,
    pub alpha: u64,
    pub k: u64,
    /// `m1 - 1 = c (n-1) + tau`; `c = -1` when `m1 = 1`.
    pub c: i64,
    pub tau: u64,
}

pub fn arithmetic_profile(seq: &CurveSequence) -> Result<ArithmeticProfile> {
    let d = match classify(seq).kind {
        ClassKind::Arithmetic { d } => d,
        _ => return Err(Error::NotArithmetic),
    };
    let m1 = seq.first();
    require_coprime(m1, d)?;
    let n = seq.len();
    let modulus = (n - 1) as i64;
    let (q, r) = div_positive_residue(m1 as i64, modulus);
    let (c, tau) = div_positive_residue(m1 as i64 - 1, modulus);
    let (q, r) = (q as u64, r as u64);
    let profile = ArithmeticProfile {
        n,
        d,
        q,
        r,
        alpha: q + d,
        k: n as u64 - r,
        c,
        tau: tau as u64,
    };
    for i in 1..=profile.k as usize {
        let lhs = profile.alpha * m1 + seq.m(i);
        let rhs = seq.m(n - profile.k as usize + i) + q * seq.last();
        if lhs != rhs {
            return Err(Error::Inconsistency(format!(
                "alpha*m1 + m{i} = {lhs} but m(n-k+i) + q*mn = {rhs} for {seq}"
            )));
        }
    }
    Ok(profile)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneralizedProfile {
    pub n: usize,
    pub h: u64,
    pub d: u64,
    pub p: u64,
    pub s: u64,
    pub delta: u64,
    pub delta_prime: u64,
    /// Indexed `j = 0..=delta_prime`.
    pub beta: Vec<u64>,
    pub sigma: Vec<u64>,
    pub lambda: Vec<u64>,
}

type Arrays = (Vec<u64>, Vec<u64>, Vec<u64>);

fn profile_by_recursion(n: u64, s: u64, p: u64, dp: usize) -> Arrays {
    let mut beta = vec![0; dp + 1];
    let mut sigma = vec![0; dp + 1];
    let mut lambda = vec![0; dp + 1];
    sigma[dp] = s + 1;
    lambda[dp] = p;
    for j in (1..=dp).rev() {
        if sigma[j] != n {
            sigma[j - 1] = sigma[j] + 1;
            lambda[j - 1] = lambda[j];
            beta[j - 1] = beta[j] + 1;
        } else {
            sigma[j - 1] = 3;
            lambda[j - 1] = lambda[j] + 1;
            beta[j - 1] = beta[j] + 2;
        }
    }
    (beta, sigma, lambda)
}

fn profile_by_closed_form(n: u64, s: u64, p: u64, dp: usize) -> Arrays {
    let mut beta = vec![0; dp + 1];
    let mut sigma = vec![0; dp + 1];
    let mut lambda = vec![0; dp + 1];
    sigma[dp] = s + 1;
    lambda[dp] = p;
    for j in 1..=dp as u64 {
        let idx = dp - j as usize;
        let wraps = (j + s - 2) / (n - 2);
        beta[idx] = j + wraps;
        lambda[idx] = p + wraps;
        sigma[idx] = 3 + (s + 1 + j - 3) % (n - 2);
    }
    (beta, sigma, lambda)
}

pub fn generalized_profile(seq: &CurveSequence) -> Result<GeneralizedProfile> {
    let n = seq.len();
    let (h, d) = match classify(seq).kind {
        ClassKind::GeneralizedArithmetic { h, d } => (h, d),
        ClassKind::Arithmetic { .. } => return Err(Error::HTooSmall { h: 1, n }),
        ClassKind::General => return Err(Error::NotGeneralizedArithmetic),
    };
    if n < 3 {
        return Err(Error::HTooSmall { h, n });
    }
    if d % h != 0 {
        return Err(Error::HNotDividingD { h, d });
    }
    let m1 = seq.first();
    require_coprime(m1, d)?;
    let (p, s) = div_positive_residue(m1 as i64, n as i64 - 1);
    let (p, s) = (p as u64, s as u64);
    let delta = p * h + d + h;
    let dp = (delta / h) as usize;

    let recursive = profile_by_recursion(n as u64, s, p, dp);
    let closed = profile_by_closed_form(n as u64, s, p, dp);
    if recursive != closed {
        return Err(Error::Inconsistency(format!(
            "beta/sigma/lambda recursion {recursive:?} disagrees with closed form {closed:?} for {seq}"
        )));
    }
    let (beta, sigma, lambda) = recursive;

    for j in 0..=dp {
        let lhs = j as u64 * h * m1 + beta[j] * seq.m(2);
        let rhs = seq.m(sigma[j] as usize) + lambda[j] * seq.last();
        if lhs != rhs {
            return Err(Error::Inconsistency(format!(
                "j*h*m1 + beta_j*m2 = {lhs} but m(sigma_j) + lambda_j*mn = {rhs} at j = {j} for {seq}"
            )));
        }
    }
    let beta0 = (seq.last() - h) / (n as u64 * h - 2 * h) + 1;
    if beta0 != beta[0] {
        return Err(Error::Inconsistency(format!(
            "beta_0 = {} but floor((mn-h)/(nh-2h)) + 1 = {beta0} for {seq}",
            beta[0]
        )));
    }
    Ok(GeneralizedProfile {
        n,
        h,
        d,
        p,
        s,
        delta,
        delta_prime: dp as u64,
        beta,
        sigma,
        lambda,
    })
}

/// Default search cap for [`min_multiple`].
pub fn default_min_multiple_cap(seq: &CurveSequence) -> u64 {
    10 * (2 * seq.last())
}

/// Smallest `b >= 1` with `b*m1` in the numerical semigroup generated by `m2, ..., mn`.
pub fn min_multiple(seq: &CurveSequence, cap: Option<u64>) -> Result<u64> {
    let cap = cap.unwrap_or_else(|| default_min_multiple_cap(seq));
    let m1 = seq.first() as usize;
    let gens: Vec<usize> = seq.terms()[1..].iter().map(|&x| x as usize).collect();
    let limit = (cap as usize)
        .checked_mul(m1)
        .ok_or(Error::Overflow("semigroup table size"))?;
    let mut reachable = vec![false; limit + 1];
    reachable[0] = true;
    let mut filled = 0;
    for b in 1..=cap as usize {
        let target = b * m1;
        for x in filled + 1..=target {
            reachable[x] = gens.iter().any(|&g| g <= x && reachable[x - g]);
        }
        filled = target;
        if reachable[target] {
            return Ok(b as u64);
        }
    }
    Err(Error::BoundExceeded {
        what: "min_multiple",
        cap,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(v: &[u64]) -> CurveSequence {
        CurveSequence::new(v.to_vec()).unwrap()
    }

    #[test]
    fn parses_and_rejects() {
        assert_eq!(parse_sequence("10,13,16,19,22").unwrap().len(), 5);
        assert_eq!(parse_sequence("1,2").unwrap().terms(), &[1, 2]);
        assert!(matches!(
            parse_sequence("5,3"),
            Err(Error::NonIncreasing { .. })
        ));
        assert!(matches!(
            parse_sequence("3,3"),
            Err(Error::NonIncreasing { .. })
        ));
        assert_eq!(parse_sequence("0,3"), Err(Error::NonPositive));
        assert_eq!(parse_sequence("-1,3"), Err(Error::NonPositive));
        assert_eq!(parse_sequence("4"), Err(Error::TooShort(1)));
        assert_eq!(parse_sequence(""), Err(Error::TooShort(0)));
        assert!(matches!(
            parse_sequence("1,99999999999999999999999"),
            Err(Error::Overflow(_))
        ));
        assert!(matches!(parse_sequence("1,x"), Err(Error::Parse { .. })));
    }

    #[test]
    fn classifies() {
        assert_eq!(
            classify(&seq(&[10, 13, 16, 19, 22])).kind,
            ClassKind::Arithmetic { d: 3 }
        );
        let c = classify(&seq(&[7, 30, 39, 48, 57, 66]));
        assert_eq!(c.kind, ClassKind::GeneralizedArithmetic { h: 3, d: 9 });
        assert_eq!(c.gcd_m1_d, Some(1));
        assert_eq!(classify(&seq(&[1, 2, 5])).kind, ClassKind::General);
        assert_eq!(classify(&seq(&[1, 2])).kind, ClassKind::Arithmetic { d: 1 });
        assert_eq!(classify(&seq(&[2, 4, 6])).gcd_all, 2);
    }

    #[test]
    fn arithmetic_profiles() {
        let p = arithmetic_profile(&seq(&[10, 13, 16, 19, 22])).unwrap();
        assert_eq!((p.q, p.r, p.alpha, p.k), (2, 2, 5, 3));
        assert_eq!((p.c, p.tau), (2, 1));
        let p = arithmetic_profile(&seq(&[4, 5, 6, 7, 8])).unwrap();
        assert_eq!((p.q, p.r, p.alpha, p.k, p.tau), (0, 4, 1, 1, 3));
        let p = arithmetic_profile(&seq(&[3, 5, 7])).unwrap();
        assert_eq!((p.q, p.r, p.alpha, p.k, p.tau), (1, 1, 3, 2, 2));
        // m1 = 1 puts m1 - 1 = 0 at the bottom boundary of the residue convention.
        let p = arithmetic_profile(&seq(&[1, 2, 3])).unwrap();
        assert_eq!((p.q, p.r, p.c, p.tau), (0, 1, -1, 2));
        assert!(matches!(
            arithmetic_profile(&seq(&[2, 4, 6])),
            Err(Error::GcdViolation { .. })
        ));
        assert_eq!(
            arithmetic_profile(&seq(&[1, 2, 5])),
            Err(Error::NotArithmetic)
        );
    }

    #[test]
    fn generalized_profile_example() {
        let p = generalized_profile(&seq(&[7, 30, 39, 48, 57, 66])).unwrap();
        assert_eq!(
            (p.h, p.d, p.p, p.s, p.delta, p.delta_prime),
            (3, 9, 1, 2, 15, 5)
        );
        assert_eq!(p.beta, vec![6, 5, 3, 2, 1, 0]);
        assert_eq!(p.sigma, vec![4, 3, 6, 5, 4, 3]);
        assert_eq!(p.lambda, vec![2, 2, 1, 1, 1, 1]);
        assert_eq!(
            generalized_profile(&seq(&[3, 11, 13])),
            Err(Error::HNotDividingD { h: 3, d: 2 })
        );
        assert!(matches!(
            generalized_profile(&seq(&[10, 13, 16])),
            Err(Error::HTooSmall { .. })
        ));
    }

    #[test]
    fn generalized_profile_sweep_agrees() {
        for h in 2..6u64 {
            for e in 1..5u64 {
                let d = h * e;
                for n in 3..8 {
                    for m1 in 1..40u64 {
                        if m1.gcd(&d) != 1 {
                            continue;
                        }
                        let s = CurveSequence::generalized(m1, h, d, n).unwrap();
                        let p = generalized_profile(&s).unwrap();
                        assert_eq!(min_multiple(&s, None).unwrap(), p.delta, "{s}");
                    }
                }
            }
        }
    }

    #[test]
    fn min_multiples() {
        assert_eq!(min_multiple(&seq(&[10, 13, 16, 19, 22]), None).unwrap(), 6);
        assert_eq!(
            min_multiple(&seq(&[7, 30, 39, 48, 57, 66]), None).unwrap(),
            15
        );
        assert_eq!(min_multiple(&seq(&[1, 2]), None).unwrap(), 2);
        assert!(matches!(
            min_multiple(&seq(&[10, 13, 16, 19, 22]), Some(3)),
            Err(Error::BoundExceeded { .. })
        ));
    }

    #[test]
    fn json_round_trip_validates() {
        let s = seq(&[3, 5, 7]);
        let text = serde_json::to_string(&s).unwrap();
        assert_eq!(text, "[3,5,7]");
        assert_eq!(serde_json::from_str::<CurveSequence>(&text).unwrap(), s);
        assert!(serde_json::from_str::<CurveSequence>("[5,3]").is_err());
    }
}
