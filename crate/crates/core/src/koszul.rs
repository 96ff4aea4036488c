//! Koszul classification: listed families first, then oracle-backed sufficient and necessary tests.
//!
//! A quadratic Groebner basis implies Koszul, which implies generation by quadrics. The
//! cascade only answers `Koszul` with a sufficient witness and `NotKoszul` with a failed
//! necessary condition; everything else is `Unknown`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gen_forms;
use crate::grobner::{has_quadratic_gb_from, is_generated_by_quadrics_from, toric_ideal};
use crate::poly::TermOrder;
use crate::seq::CurveSequence;

pub const KOSZUL_N3: [[u64; 3]; 3] = [[1, 2, 3], [1, 2, 4], [2, 3, 4]];

pub const KOSZUL_N4: [[u64; 4]; 14] = [
    [1, 2, 3, 4],
    [1, 2, 3, 5],
    [1, 2, 3, 6],
    [1, 2, 4, 6],
    [1, 2, 4, 8],
    [2, 3, 4, 5],
    [2, 3, 4, 6],
    [2, 3, 4, 8],
    [2, 4, 5, 6],
    [2, 4, 5, 8],
    [3, 4, 5, 6],
    [3, 4, 6, 8],
    [4, 5, 6, 8],
    [4, 6, 7, 8],
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    Koszul,
    NotKoszul,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum Reason {
    ClassifiedGeneralized,
    ListedN3,
    ListedN4,
    QuadraticGb { order: TermOrder },
    FailsQuadricGeneration,
    FailsNecessaryQuadric,
    Geometric,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct KoszulStatus {
    pub verdict: Verdict,
    pub reason: Reason,
}

impl KoszulStatus {
    fn new(verdict: Verdict, reason: Reason) -> Self {
        Self { verdict, reason }
    }

    /// Koszul only with a sufficient reason, NotKoszul only with a necessary failure.
    pub fn is_consistent(&self) -> bool {
        match self.verdict {
            Verdict::Koszul => matches!(
                self.reason,
                Reason::ClassifiedGeneralized
                    | Reason::ListedN3
                    | Reason::ListedN4
                    | Reason::Geometric
                    | Reason::QuadraticGb { .. }
            ),
            Verdict::NotKoszul => {
                matches!(
                    self.reason,
                    Reason::FailsQuadricGeneration | Reason::FailsNecessaryQuadric
                )
            }
            Verdict::Unknown => self.reason == Reason::Inconclusive,
        }
    }
}

/// Consecutive integers (`h = d = 1`) with `n > m1`.
pub fn koszul_generalized(seq: &CurveSequence) -> Result<bool> {
    let (h, d) = gen_forms::class_with_gcd(seq)?;
    Ok(h == 1 && d == 1 && seq.len() as u64 > seq.first())
}

fn check_listed(seq: &CurveSequence, n: usize) -> Result<()> {
    if seq.len() != n {
        return Err(Error::WrongN {
            expected: n,
            got: seq.len(),
        });
    }
    let g = seq.gcd_all();
    if g != 1 {
        return Err(Error::GcdViolation {
            left: seq.first(),
            right: seq.last(),
            gcd: g,
        });
    }
    Ok(())
}

pub fn koszul_n3(seq: &CurveSequence) -> Result<bool> {
    check_listed(seq, 3)?;
    Ok(KOSZUL_N3.iter().any(|l| l[..] == *seq.terms()))
}

pub fn koszul_n4(seq: &CurveSequence) -> Result<bool> {
    check_listed(seq, 4)?;
    Ok(KOSZUL_N4.iter().any(|l| l[..] == *seq.terms()))
}

/// `m_i = 2^{i-1} d`.
pub fn is_geometric(seq: &CurveSequence) -> bool {
    let d = seq.first();
    seq.terms()
        .iter()
        .enumerate()
        .all(|(i, &m)| 1u64.checked_shl(i as u32).and_then(|p| p.checked_mul(d)) == Some(m))
}

/// For each `i < n`: `2 m_i = m_j` for some `j != i` (a quadric through `x_{n+1}`), or
/// `2 m_i = m_j + m_l` for some `j, l != i`.
pub fn necessary_quadric_conditions(seq: &CurveSequence) -> bool {
    let m = seq.terms();
    let n = m.len();
    (0..n.saturating_sub(1)).all(|i| {
        let target = 2 * m[i];
        let others = || (0..n).filter(move |&j| j != i).map(|j| m[j]);
        others().any(|x| x == target) || others().any(|x| others().any(|y| x + y == target))
    })
}

fn sufficient_orders(nvars: usize) -> impl Iterator<Item = TermOrder> {
    std::iter::once(TermOrder::DegRevLex).chain((0..nvars).map(|y| TermOrder::YWeighted { y }))
}

/// The first order among degrevlex and the y-weighted orders with an all-quadric reduced basis.
pub fn quadratic_gb_witness(seq: &CurveSequence) -> Result<Option<TermOrder>> {
    let toric = toric_ideal(seq)?;
    for order in sufficient_orders(seq.num_vars()) {
        if has_quadratic_gb_from(seq, &toric, order)? {
            return Ok(Some(order));
        }
    }
    Ok(None)
}

/// The decision cascade, applied to `seq / gcd`, which defines the same curve.
pub fn koszul_status(seq: &CurveSequence) -> KoszulStatus {
    let seq = seq.normalized();
    let n = seq.len();
    if koszul_generalized(&seq) == Ok(true) {
        return KoszulStatus::new(Verdict::Koszul, Reason::ClassifiedGeneralized);
    }
    if is_geometric(&seq) {
        return KoszulStatus::new(Verdict::Koszul, Reason::Geometric);
    }
    if n == 3 && koszul_n3(&seq) == Ok(true) {
        return KoszulStatus::new(Verdict::Koszul, Reason::ListedN3);
    }
    if n == 4 && koszul_n4(&seq) == Ok(true) {
        return KoszulStatus::new(Verdict::Koszul, Reason::ListedN4);
    }
    let toric = match toric_ideal(&seq) {
        Ok(t) => t,
        Err(_) if !necessary_quadric_conditions(&seq) => {
            return KoszulStatus::new(Verdict::NotKoszul, Reason::FailsNecessaryQuadric)
        }
        Err(_) => return KoszulStatus::new(Verdict::Unknown, Reason::Inconclusive),
    };
    match is_generated_by_quadrics_from(&seq, &toric) {
        Ok(false) => return KoszulStatus::new(Verdict::NotKoszul, Reason::FailsQuadricGeneration),
        Ok(true) => {}
        Err(_) if !necessary_quadric_conditions(&seq) => {
            return KoszulStatus::new(Verdict::NotKoszul, Reason::FailsNecessaryQuadric)
        }
        Err(_) => return KoszulStatus::new(Verdict::Unknown, Reason::Inconclusive),
    }
    for order in sufficient_orders(seq.num_vars()) {
        if let Ok(true) = has_quadratic_gb_from(&seq, &toric, order) {
            return KoszulStatus::new(Verdict::Koszul, Reason::QuadraticGb { order });
        }
    }
    KoszulStatus::new(Verdict::Unknown, Reason::Inconclusive)
}
