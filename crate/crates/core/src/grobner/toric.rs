//! The toric ideal I(C) by lattice saturation, plus elimination and quadric tests built on it.

use std::collections::BTreeMap;

use super::{buchberger, interreduce, kernel_basis, BuchbergerConfig, GroebnerBasis};
use crate::error::Result;
use crate::poly::{bidegree, BiDegree, Binomial, Monomial, TermOrder};
use crate::seq::CurveSequence;

/// Environment variable overriding the Buchberger degree cap.
pub const CAP_ENV_VAR: &str = "MCURVE_CAP_DEGREE";

/// `4 * (m_n + n)` unless overridden through [`CAP_ENV_VAR`].
pub fn default_degree_cap(seq: &CurveSequence) -> u32 {
    std::env::var(CAP_ENV_VAR)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or_else(|| 4 * (seq.last() as u32).saturating_add(seq.len() as u32))
}

fn default_config(seq: &CurveSequence) -> BuchbergerConfig {
    BuchbergerConfig::with_cap(default_degree_cap(seq))
}

fn swap_perm(nvars: usize, var: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..nvars).collect();
    perm.swap(var, nvars - 1);
    perm
}

fn permute(b: &Binomial, perm: &[usize]) -> Binomial {
    Binomial {
        lead: b.lead.permuted(perm),
        trail: b.trail.permuted(perm),
    }
}

/// `J : x_var^inf` for a homogeneous binomial ideal: a degrevlex basis with `x_var` cheapest,
/// with the largest common power of `x_var` stripped from each element.
fn saturate_var(gens: &[Binomial], var: usize, config: BuchbergerConfig) -> Result<Vec<Binomial>> {
    let nvars = gens.first().map_or(0, Binomial::nvars);
    if nvars == 0 {
        return Ok(Vec::new());
    }
    let perm = swap_perm(nvars, var);
    let moved: Vec<Binomial> = gens.iter().map(|b| permute(b, &perm)).collect();
    let gb = buchberger(&moved, TermOrder::DegRevLex, config)?;
    let last = nvars - 1;
    Ok(gb
        .elements
        .iter()
        .map(|b| {
            let common = b.lead.exp(last).min(b.trail.exp(last));
            let stripped = Binomial {
                lead: b.lead.with_exp(last, b.lead.exp(last) - common),
                trail: b.trail.with_exp(last, b.trail.exp(last) - common),
            };
            permute(&stripped, &perm)
        })
        .collect())
}

pub fn toric_ideal(seq: &CurveSequence) -> Result<GroebnerBasis> {
    toric_ideal_with(seq, default_config(seq))
}

/// Reduced degrevlex Groebner basis of the vanishing ideal of the curve.
pub fn toric_ideal_with(seq: &CurveSequence, config: BuchbergerConfig) -> Result<GroebnerBasis> {
    let nvars = seq.num_vars();
    let order = TermOrder::DegRevLex;
    let mut gens = kernel_basis(seq)?.binomials(&order)?;
    // Saturating variable by variable keeps earlier saturations intact, so one pass reaches
    // the full saturation. The last variable goes last so the final basis is already degrevlex.
    for var in 0..nvars {
        gens = saturate_var(&gens, var, config)?;
    }
    let gb = GroebnerBasis {
        nvars,
        order,
        elements: interreduce(&gens, &order),
        reduced: true,
    };
    check_no_monomials(&gb)?;
    Ok(gb)
}

/// A reduced basis of a prime toric ideal has coprime lead and trail in every element.
fn check_no_monomials(gb: &GroebnerBasis) -> Result<()> {
    match gb.elements.iter().find(|b| !b.lead.is_coprime(&b.trail)) {
        Some(b) => Err(crate::error::Error::MonomialInToricIdeal(
            b.lead.gcd(&b.trail).to_string(),
        )),
        None => Ok(()),
    }
}

pub fn eliminate(seq: &CurveSequence, eliminated: usize) -> Result<GroebnerBasis> {
    eliminate_with(seq, eliminated, default_config(seq))
}

/// Basis of `I(C) ∩ K[x_{eliminated+1}, ..., x_{n+1}]`, re-reduced under degrevlex.
/// Monomials keep all `n+1` coordinates; the eliminated ones are zero.
pub fn eliminate_with(
    seq: &CurveSequence,
    eliminated: usize,
    config: BuchbergerConfig,
) -> Result<GroebnerBasis> {
    let toric = toric_ideal_with(seq, config)?;
    if eliminated == 0 {
        return Ok(toric);
    }
    let block = buchberger(&toric.elements, TermOrder::Block { eliminated }, config)?;
    let kept: Vec<Binomial> = block
        .elements
        .into_iter()
        .filter(|b| (0..eliminated).all(|v| b.lead.exp(v) == 0 && b.trail.exp(v) == 0))
        .collect();
    let order = TermOrder::DegRevLex;
    Ok(GroebnerBasis {
        nvars: toric.nvars,
        order,
        elements: interreduce(&kept, &order),
        reduced: true,
    })
}

fn degree_two_monomials(nvars: usize) -> impl Iterator<Item = Monomial> {
    (0..nvars).flat_map(move |i| {
        (i..nvars).map(move |j| {
            let mut e = vec![0u32; nvars];
            e[i] += 1;
            e[j] += 1;
            Monomial::new(e).expect("degree two")
        })
    })
}

/// Every quadric binomial in I(C), oriented and sorted under degrevlex.
pub fn quadrics_in_ideal(seq: &CurveSequence) -> Vec<Binomial> {
    let order = TermOrder::DegRevLex;
    let mut fibers: BTreeMap<BiDegree, Vec<Monomial>> = BTreeMap::new();
    for m in degree_two_monomials(seq.num_vars()) {
        let bd = bidegree(seq, &m).expect("dimension matches");
        fibers.entry(bd).or_default().push(m);
    }
    let mut out: Vec<Binomial> = fibers
        .values()
        .flat_map(|f| {
            f.iter().enumerate().flat_map(move |(i, a)| {
                f[i + 1..]
                    .iter()
                    .filter_map(move |b| Binomial::oriented(a.clone(), b.clone(), &order))
            })
        })
        .collect();
    out.sort_by(|a, b| {
        order
            .cmp(&a.lead, &b.lead)
            .then_with(|| order.cmp(&a.trail, &b.trail))
    });
    out.dedup();
    out
}

pub fn is_generated_by_quadrics(seq: &CurveSequence) -> Result<bool> {
    is_generated_by_quadrics_from(seq, &toric_ideal(seq)?)
}

/// Compares the reduced basis of the quadric ideal with a precomputed toric basis.
pub fn is_generated_by_quadrics_from(seq: &CurveSequence, toric: &GroebnerBasis) -> Result<bool> {
    let quadrics = quadrics_in_ideal(seq);
    if quadrics.is_empty() {
        return Ok(toric.is_empty());
    }
    let gb = buchberger(&quadrics, TermOrder::DegRevLex, default_config(seq))?;
    Ok(gb.elements == toric.elements)
}

pub fn has_quadratic_gb(seq: &CurveSequence, order: TermOrder) -> Result<bool> {
    has_quadratic_gb_from(seq, &toric_ideal(seq)?, order)
}

pub fn has_quadratic_gb_from(
    seq: &CurveSequence,
    toric: &GroebnerBasis,
    order: TermOrder,
) -> Result<bool> {
    let gb = if order == toric.order {
        toric.clone()
    } else {
        buchberger(&toric.elements, order, default_config(seq))?
    };
    Ok(gb.elements.iter().all(|b| b.degree() == 2))
}

/// Monomials of the given bidegree, in lexicographic exponent order.
pub fn fiber(seq: &CurveSequence, target: BiDegree) -> Vec<Monomial> {
    fn walk(
        m: &[u64],
        mn: u64,
        var: usize,
        deg: u64,
        weight: u64,
        exps: &mut Vec<u32>,
        out: &mut Vec<Monomial>,
    ) {
        if var == m.len() {
            if weight == 0 {
                exps.push(deg as u32);
                out.push(Monomial::new(exps.clone()).expect("fits"));
                exps.pop();
            }
            return;
        }
        for e in 0..=deg {
            let Some(rest) = weight.checked_sub(e * m[var]) else {
                break;
            };
            if rest <= (deg - e) * mn {
                exps.push(e as u32);
                walk(m, mn, var + 1, deg - e, rest, exps, out);
                exps.pop();
            }
        }
    }
    let mn = seq.last();
    let total = target.s_deg + target.t_deg;
    let mut out = Vec::new();
    if total.is_multiple_of(mn) {
        walk(
            seq.terms(),
            mn,
            0,
            total / mn,
            target.s_deg,
            &mut Vec::new(),
            &mut out,
        );
    }
    out.sort_by(|a, b| b.exps().cmp(a.exps()));
    out
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

/// Number of minimal generators of I(C).
///
/// Minimal generators live in the bidegrees of any generating set, and in bidegree `b` their
/// number is one less than the number of connected components of the fiber of `b`, where two
/// monomials are joined when they share a variable.
pub fn minimal_generator_count(seq: &CurveSequence, toric: &GroebnerBasis) -> Result<u64> {
    let mut degrees: Vec<BiDegree> = toric
        .elements
        .iter()
        .map(|b| bidegree(seq, &b.lead))
        .collect::<Result<_>>()?;
    degrees.sort_unstable();
    degrees.dedup();
    let mut count = 0;
    for b in degrees {
        let monomials = fiber(seq, b);
        let mut parent: Vec<usize> = (0..monomials.len()).collect();
        for i in 0..monomials.len() {
            for j in i + 1..monomials.len() {
                if !monomials[i].is_coprime(&monomials[j]) {
                    let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                    parent[ri] = rj;
                }
            }
        }
        let roots = (0..monomials.len())
            .filter(|&i| find(&mut parent, i) == i)
            .count();
        count += roots.saturating_sub(1) as u64;
    }
    Ok(count)
}
