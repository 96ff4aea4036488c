//! Integer kernel of the bidegree matrix.

use crate::error::{Error, Result};
use crate::poly::{variable_bidegree, Binomial, Monomial, TermOrder};
use crate::seq::CurveSequence;

/// A basis of `{u in Z^{n+1} : sum_i u_i a_i = 0}` where `a_i` are the variable bidegrees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeBasis {
    pub vectors: Vec<Vec<i64>>,
}

impl LatticeBasis {
    pub fn rank(&self) -> usize {
        self.vectors.len()
    }

    /// `x^{v+} - x^{v-}` for every basis vector.
    pub fn binomials(&self, order: &TermOrder) -> Result<Vec<Binomial>> {
        self.vectors
            .iter()
            .filter_map(|v| {
                let part = |sign: i64| {
                    v.iter()
                        .map(|&x| {
                            u32::try_from((x * sign).max(0))
                                .map_err(|_| Error::Overflow("lattice vector"))
                        })
                        .collect::<Result<Vec<u32>>>()
                        .and_then(Monomial::new)
                };
                match (part(1), part(-1)) {
                    (Ok(a), Ok(b)) => Binomial::oriented(a, b, order).map(Ok),
                    (Err(e), _) | (_, Err(e)) => Some(Err(e)),
                }
            })
            .collect()
    }
}

fn dot(a: &[i128], b: &[i128]) -> i128 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Nearest integer to `num / den` for `den > 0`.
fn round_div(num: i128, den: i128) -> i128 {
    (2 * num + den).div_euclid(2 * den)
}

/// Pairwise size reduction until no vector can be shortened by another.
fn size_reduce(vectors: &mut [Vec<i128>]) {
    loop {
        let mut changed = false;
        for i in 0..vectors.len() {
            for j in 0..vectors.len() {
                if i == j {
                    continue;
                }
                let nj = dot(&vectors[j], &vectors[j]);
                if nj == 0 {
                    continue;
                }
                let c = round_div(dot(&vectors[i], &vectors[j]), nj);
                if c == 0 {
                    continue;
                }
                let candidate: Vec<i128> = vectors[i]
                    .iter()
                    .zip(&vectors[j])
                    .map(|(a, b)| a - c * b)
                    .collect();
                if dot(&candidate, &candidate) < dot(&vectors[i], &vectors[i]) {
                    vectors[i] = candidate;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
}

/// Kernel basis via unimodular column operations on the 2 x (n+1) bidegree matrix.
pub fn kernel_basis(seq: &CurveSequence) -> Result<LatticeBasis> {
    let nv = seq.num_vars();
    // Row 0: s-degrees; row 1: total degree indicator (t + s = m_n per variable).
    let mut rows: [Vec<i128>; 2] = [
        (0..nv)
            .map(|v| variable_bidegree(seq, v).s_deg as i128)
            .collect(),
        vec![1; nv],
    ];
    // Columns of `unimodular` track the operations applied to the matrix columns.
    let mut cols: Vec<Vec<i128>> = (0..nv)
        .map(|c| (0..nv).map(|r| i128::from(r == c)).collect())
        .collect();

    let mut pivot = 0;
    for row in 0..2 {
        // Euclid across columns pivot.. until only column `pivot` is nonzero in this row.
        loop {
            let nonzero: Vec<usize> = (pivot..nv).filter(|&c| rows[row][c] != 0).collect();
            if nonzero.len() <= 1 {
                if let Some(&c) = nonzero.first() {
                    swap_cols(&mut rows, &mut cols, pivot, c);
                }
                break;
            }
            let &smallest = nonzero.iter().min_by_key(|&&c| rows[row][c].abs()).unwrap();
            swap_cols(&mut rows, &mut cols, pivot, smallest);
            for c in pivot + 1..nv {
                let q = rows[row][c].div_euclid(rows[row][pivot]);
                if q != 0 {
                    for r in rows.iter_mut() {
                        r[c] -= q * r[pivot];
                    }
                    let (p, cc) = (cols[pivot].clone(), &mut cols[c]);
                    for (x, y) in cc.iter_mut().zip(&p) {
                        *x -= q * y;
                    }
                }
            }
        }
        if rows[row][pivot] != 0 {
            pivot += 1;
        }
    }
    let mut kernel: Vec<Vec<i128>> = cols[pivot..].to_vec();
    size_reduce(&mut kernel);
    let vectors = kernel
        .into_iter()
        .map(|v| {
            v.into_iter()
                .map(|x| i64::try_from(x).map_err(|_| Error::Overflow("lattice vector")))
                .collect::<Result<Vec<i64>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let basis = LatticeBasis { vectors };
    for v in &basis.vectors {
        let (s, t) = v
            .iter()
            .enumerate()
            .fold((0i128, 0i128), |(s, t), (i, &x)| {
                let a = variable_bidegree(seq, i);
                (
                    s + x as i128 * a.s_deg as i128,
                    t + x as i128 * a.t_deg as i128,
                )
            });
        if s != 0 || t != 0 {
            return Err(Error::Inconsistency(format!(
                "kernel vector {v:?} is not in the lattice of {seq}"
            )));
        }
    }
    Ok(basis)
}

fn swap_cols(rows: &mut [Vec<i128>; 2], cols: &mut [Vec<i128>], a: usize, b: usize) {
    if a != b {
        for r in rows.iter_mut() {
            r.swap(a, b);
        }
        cols.swap(a, b);
    }
}
