//! Monomials as exponent vectors, pure-difference binomials, term orders and bidegrees.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::seq::CurveSequence;

type Exps = SmallVec<[u32; 8]>;

/// A monomial `x1^e1 * ... * xN^eN`. Variables are 0-based internally and 1-based in text.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Exps,
    degree: u32,
    /// Bit `i` set iff `x_{i+1}` occurs (variables past 63 share the top bit).
    support: u64,
}

fn support_mask(exps: &[u32]) -> u64 {
    exps.iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .fold(0, |m, (i, _)| m | 1u64 << i.min(63))
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Result<Self> {
        Self::from_exps(Exps::from_vec(exps))
    }

    fn from_exps(exps: Exps) -> Result<Self> {
        let degree = exps
            .iter()
            .try_fold(0u32, |acc, &e| acc.checked_add(e))
            .ok_or(Error::Overflow("monomial degree"))?;
        let support = support_mask(&exps);
        Ok(Self {
            exps,
            degree,
            support,
        })
    }

    fn from_exps_unchecked(exps: Exps) -> Self {
        let degree = exps.iter().sum();
        let support = support_mask(&exps);
        Self {
            exps,
            degree,
            support,
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_exps_unchecked(SmallVec::from_elem(0, nvars))
    }

    /// `x_{var+1}^exp` (0-based `var`).
    pub fn var_power(nvars: usize, var: usize, exp: u32) -> Self {
        let mut exps: Exps = SmallVec::from_elem(0, nvars);
        exps[var] = exp;
        Self::from_exps_unchecked(exps)
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn exp(&self, var: usize) -> u32 {
        self.exps[var]
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn support_mask(&self) -> u64 {
        self.support
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
    }

    pub fn support_size(&self) -> usize {
        self.exps.iter().filter(|&&e| e > 0).count()
    }

    /// True iff `self` divides `other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.support & !other.support == 0
            && self.degree <= other.degree
            && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.support & other.support == 0
            && self
                .exps
                .iter()
                .zip(&other.exps)
                .all(|(&a, &b)| a == 0 || b == 0)
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial> {
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a.checked_add(*b))
            .collect::<Option<Exps>>()
            .ok_or(Error::Overflow("monomial exponent"))?;
        Self::from_exps(exps)
    }

    /// `self / other`; the caller guarantees `other | self`.
    pub fn div(&self, other: &Monomial) -> Monomial {
        debug_assert!(other.divides(self));
        Self::from_exps_unchecked(
            self.exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Self::from_exps_unchecked(
            self.exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Self::from_exps_unchecked(
            self.exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.min(b))
                .collect(),
        )
    }

    /// Replaces the exponent of `var`.
    pub fn with_exp(&self, var: usize, exp: u32) -> Monomial {
        let mut exps = self.exps.clone();
        exps[var] = exp;
        Self::from_exps_unchecked(exps)
    }

    /// Reorders coordinates: entry `i` of the result is entry `perm[i]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Monomial {
        Self::from_exps_unchecked(perm.iter().map(|&p| self.exps[p]).collect())
    }

    pub fn parse(text: &str, nvars: usize) -> Result<Monomial> {
        let bad = || Error::Parse {
            what: "monomial",
            input: text.to_string(),
        };
        let mut exps = vec![0u32; nvars];
        let text = text.trim();
        if text == "1" {
            return Monomial::new(exps);
        }
        for factor in text.split('*') {
            let factor = factor.trim();
            let (var, exp) = match factor.split_once('^') {
                Some((v, e)) => (v, e.trim().parse::<u32>().map_err(|_| bad())?),
                None => (factor, 1),
            };
            let idx: usize = var
                .trim()
                .strip_prefix('x')
                .ok_or_else(bad)?
                .parse()
                .map_err(|_| bad())?;
            if idx == 0 || idx > nvars {
                return Err(Error::DimensionMismatch {
                    expected: nvars,
                    got: idx,
                });
            }
            exps[idx - 1] = exps[idx - 1]
                .checked_add(exp)
                .ok_or(Error::Overflow("monomial exponent"))?;
        }
        Monomial::new(exps)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, e)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A monomial order on exponent vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "order", rename_all = "snake_case")]
pub enum TermOrder {
    /// Degree reverse lexicographic with `x1 > x2 > ... > xN`.
    DegRevLex,
    /// Elimination order: degrevlex on the first `eliminated` variables, ties broken by
    /// degrevlex on the rest.
    Block { eliminated: usize },
    /// The exponent of variable `y` (0-based) dominates; ties broken by degrevlex.
    YWeighted { y: usize },
}

fn degrevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    da.cmp(&db).then_with(|| {
        for i in (0..a.len()).rev() {
            if a[i] != b[i] {
                return b[i].cmp(&a[i]);
            }
        }
        Ordering::Equal
    })
}

impl TermOrder {
    pub fn name(&self) -> String {
        match self {
            TermOrder::DegRevLex => "degrevlex".into(),
            TermOrder::Block { eliminated } => format!("block{eliminated}"),
            TermOrder::YWeighted { y } => format!("yweighted{}", y + 1),
        }
    }

    /// Comparison without the dimension check; both monomials must have the same length.
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.nvars(), b.nvars());
        match *self {
            TermOrder::DegRevLex => a.degree.cmp(&b.degree).then_with(|| {
                for i in (0..a.exps.len()).rev() {
                    if a.exps[i] != b.exps[i] {
                        return b.exps[i].cmp(&a.exps[i]);
                    }
                }
                Ordering::Equal
            }),
            TermOrder::Block { eliminated } => {
                let k = eliminated.min(a.nvars());
                degrevlex(&a.exps[..k], &b.exps[..k])
                    .then_with(|| degrevlex(&a.exps[k..], &b.exps[k..]))
            }
            TermOrder::YWeighted { y } => a.exps[y]
                .cmp(&b.exps[y])
                .then_with(|| TermOrder::DegRevLex.cmp(a, b)),
        }
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        if a.nvars() != b.nvars() {
            return Err(Error::DimensionMismatch {
                expected: a.nvars(),
                got: b.nvars(),
            });
        }
        if let TermOrder::YWeighted { y } = *self {
            if y >= a.nvars() {
                return Err(Error::DimensionMismatch {
                    expected: a.nvars(),
                    got: y + 1,
                });
            }
        }
        Ok(self.cmp(a, b))
    }
}

impl fmt::Display for TermOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// `lead - trail` with `lead > trail` in the order it was built for.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Binomial {
    pub lead: Monomial,
    pub trail: Monomial,
}

impl Binomial {
    /// Orients `a - b` so the larger term leads. `None` when `a == b` (the zero binomial).
    pub fn oriented(a: Monomial, b: Monomial, order: &TermOrder) -> Option<Binomial> {
        match order.cmp(&a, &b) {
            Ordering::Greater => Some(Binomial { lead: a, trail: b }),
            Ordering::Less => Some(Binomial { lead: b, trail: a }),
            Ordering::Equal => None,
        }
    }

    pub fn nvars(&self) -> usize {
        self.lead.nvars()
    }

    pub fn degree(&self) -> u32 {
        self.lead.degree().max(self.trail.degree())
    }

    pub fn is_homogeneous(&self) -> bool {
        self.lead.degree() == self.trail.degree()
    }

    /// Parses `"x1^2 - x2*x4"`.
    pub fn parse(text: &str, nvars: usize, order: &TermOrder) -> Result<Binomial> {
        let (a, b) = text.split_once(" - ").ok_or_else(|| Error::Parse {
            what: "binomial",
            input: text.to_string(),
        })?;
        let (a, b) = (Monomial::parse(a, nvars)?, Monomial::parse(b, nvars)?);
        Binomial::oriented(a, b, order).ok_or_else(|| Error::Parse {
            what: "binomial (terms are equal)",
            input: text.to_string(),
        })
    }
}

impl fmt::Display for Binomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} - {}", self.lead, self.trail)
    }
}

impl fmt::Debug for Binomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Degree of a monomial under `x_i -> s^{m_i} t^{m_n - m_i}`, `x_{n+1} -> t^{m_n}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BiDegree {
    pub s_deg: u64,
    pub t_deg: u64,
}

impl std::ops::Add for BiDegree {
    type Output = BiDegree;
    fn add(self, o: BiDegree) -> BiDegree {
        BiDegree {
            s_deg: self.s_deg + o.s_deg,
            t_deg: self.t_deg + o.t_deg,
        }
    }
}

/// Column `a_i` of the bidegree matrix (0-based `var`).
pub fn variable_bidegree(seq: &CurveSequence, var: usize) -> BiDegree {
    let mn = seq.last();
    if var < seq.len() {
        let mi = seq.terms()[var];
        BiDegree {
            s_deg: mi,
            t_deg: mn - mi,
        }
    } else {
        BiDegree {
            s_deg: 0,
            t_deg: mn,
        }
    }
}

pub fn bidegree(seq: &CurveSequence, m: &Monomial) -> Result<BiDegree> {
    if m.nvars() != seq.num_vars() {
        return Err(Error::DimensionMismatch {
            expected: seq.num_vars(),
            got: m.nvars(),
        });
    }
    let mut total = BiDegree { s_deg: 0, t_deg: 0 };
    for (var, &e) in m.exps().iter().enumerate() {
        let a = variable_bidegree(seq, var);
        let e = e as u64;
        total = BiDegree {
            s_deg: e
                .checked_mul(a.s_deg)
                .and_then(|x| x.checked_add(total.s_deg))
                .ok_or(Error::Overflow("bidegree"))?,
            t_deg: e
                .checked_mul(a.t_deg)
                .and_then(|x| x.checked_add(total.t_deg))
                .ok_or(Error::Overflow("bidegree"))?,
        };
    }
    Ok(total)
}

/// A binomial lies in the curve ideal iff both terms have the same bidegree.
pub fn is_member_binomial(seq: &CurveSequence, b: &Binomial) -> bool {
    match (bidegree(seq, &b.lead), bidegree(seq, &b.trail)) {
        (Ok(x), Ok(y)) => x == y,
        _ => false,
    }
}
