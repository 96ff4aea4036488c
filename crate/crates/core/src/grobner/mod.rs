//! Binomial Groebner bases: Buchberger's algorithm specialised to pure differences `u - v`.
//!
//! Coefficients never leave `{+1, -1}`, so the normal form of a monomial is again a monomial
//! and reducing `u - v` either cancels to zero or leaves another binomial.

mod lattice;
mod toric;

use std::cmp::{Ordering, Reverse};
use std::collections::{BinaryHeap, HashSet};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::monideal::MonomialIdeal;
use crate::poly::{Binomial, Monomial, TermOrder};
use crate::seq::CurveSequence;

pub use lattice::{kernel_basis, LatticeBasis};
pub use toric::{
    default_degree_cap, eliminate, eliminate_with, fiber, has_quadratic_gb, has_quadratic_gb_from,
    is_generated_by_quadrics, is_generated_by_quadrics_from, minimal_generator_count,
    quadrics_in_ideal, toric_ideal, toric_ideal_with, CAP_ENV_VAR,
};

/// Knobs for a Buchberger run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BuchbergerConfig {
    /// Largest total degree an element may reach before the run is aborted.
    pub degree_cap: u32,
    /// Skip pairs detected redundant by the chain criterion.
    pub chain_criterion: bool,
}

impl Default for BuchbergerConfig {
    fn default() -> Self {
        Self {
            degree_cap: u32::MAX,
            chain_criterion: true,
        }
    }
}

impl BuchbergerConfig {
    pub fn with_cap(degree_cap: u32) -> Self {
        Self {
            degree_cap,
            ..Self::default()
        }
    }
}

/// Outcome of reducing a binomial modulo a set of binomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Reduction {
    Zero,
    Binomial(Binomial),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    pub nvars: usize,
    pub order: TermOrder,
    /// Sorted by increasing lead term.
    pub elements: Vec<Binomial>,
    pub reduced: bool,
}

impl GroebnerBasis {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn leads(&self) -> impl Iterator<Item = &Monomial> {
        self.elements.iter().map(|b| &b.lead)
    }

    pub fn max_degree(&self) -> u32 {
        self.elements
            .iter()
            .map(Binomial::degree)
            .max()
            .unwrap_or(0)
    }

    pub fn normal_form(&self, m: &Monomial) -> Monomial {
        normal_form(m, &self.elements)
    }

    /// Text listing: a header line, then one binomial per line.
    pub fn to_text(&self, seq: Option<&CurveSequence>) -> String {
        let mut out = format!("# order={} vars={}", self.order, self.nvars);
        if let Some(s) = seq {
            let _ = write!(out, " seq={s}");
        }
        out.push('\n');
        for b in &self.elements {
            let _ = writeln!(out, "{b}");
        }
        out
    }

    /// Parses the output of [`GroebnerBasis::to_text`] (degrevlex only), re-sorting canonically.
    pub fn from_text(text: &str) -> Result<GroebnerBasis> {
        let bad = |input: &str| Error::Parse {
            what: "Groebner basis listing",
            input: input.to_string(),
        };
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| bad(text))?;
        let mut nvars = None;
        for field in header.trim_start_matches('#').split_whitespace() {
            match field.split_once('=') {
                Some(("order", "degrevlex")) => {}
                Some(("order", _)) => return Err(bad(header)),
                Some(("vars", v)) => nvars = Some(v.parse::<usize>().map_err(|_| bad(header))?),
                _ => {}
            }
        }
        let nvars = nvars.ok_or_else(|| bad(header))?;
        let order = TermOrder::DegRevLex;
        let mut elements = lines
            .filter(|l| !l.trim().is_empty())
            .map(|l| Binomial::parse(l, nvars, &order))
            .collect::<Result<Vec<_>>>()?;
        sort_canonical(&mut elements, &order);
        Ok(GroebnerBasis {
            nvars,
            order,
            elements,
            reduced: true,
        })
    }

    pub fn initial_ideal(&self) -> MonomialIdeal {
        initial_ideal(self)
    }
}

/// Lead terms, made inclusion-minimal.
pub fn initial_ideal(gb: &GroebnerBasis) -> MonomialIdeal {
    MonomialIdeal::new(gb.nvars, gb.leads().cloned().collect())
}

fn find_divisor<'a>(m: &Monomial, basis: &'a [Binomial]) -> Option<&'a Binomial> {
    basis.iter().find(|g| g.lead.divides(m))
}

/// Rewrites `m` with `lead -> trail` steps until no lead term divides it.
pub fn normal_form(m: &Monomial, basis: &[Binomial]) -> Monomial {
    let mut cur = m.clone();
    while let Some(g) = find_divisor(&cur, basis) {
        // lead | cur, so the product cannot exceed the exponents already present in cur + trail.
        cur = cur
            .div(&g.lead)
            .checked_mul(&g.trail)
            .expect("exponent overflow during reduction");
    }
    cur
}

pub fn reduce(b: &Binomial, basis: &[Binomial], order: &TermOrder) -> Reduction {
    let lead = normal_form(&b.lead, basis);
    let trail = normal_form(&b.trail, basis);
    match Binomial::oriented(lead, trail, order) {
        Some(r) => Reduction::Binomial(r),
        None => Reduction::Zero,
    }
}

fn s_binomial(f: &Binomial, g: &Binomial, order: &TermOrder) -> Option<Binomial> {
    let l = f.lead.lcm(&g.lead);
    let a = l.div(&f.lead).checked_mul(&f.trail).ok()?;
    let b = l.div(&g.lead).checked_mul(&g.trail).ok()?;
    Binomial::oriented(a, b, order)
}

fn sort_canonical(v: &mut [Binomial], order: &TermOrder) {
    v.sort_by(|a, b| {
        order
            .cmp(&a.lead, &b.lead)
            .then_with(|| order.cmp(&a.trail, &b.trail))
    });
}

/// Minimises lead terms, tail-reduces, and sorts. The input must already be a Groebner basis
/// for the result to be the reduced one; otherwise this is plain inter-reduction.
pub fn interreduce(gens: &[Binomial], order: &TermOrder) -> Vec<Binomial> {
    let mut cands: Vec<Binomial> = gens
        .iter()
        .filter_map(|b| Binomial::oriented(b.lead.clone(), b.trail.clone(), order))
        .collect();
    sort_canonical(&mut cands, order);
    let mut kept: Vec<Binomial> = Vec::new();
    for c in cands {
        if !kept.iter().any(|k| k.lead.divides(&c.lead)) {
            kept.push(c);
        }
    }
    let reduced: Vec<Binomial> = kept
        .iter()
        .map(|b| Binomial {
            lead: b.lead.clone(),
            trail: normal_form(&b.trail, &kept),
        })
        .collect();
    let mut reduced = reduced;
    sort_canonical(&mut reduced, order);
    reduced
}

struct PairKey {
    degree: u32,
    lcm: Monomial,
    i: usize,
    j: usize,
    order: TermOrder,
}

impl PartialEq for PairKey {
    fn eq(&self, o: &Self) -> bool {
        self.cmp(o) == Ordering::Equal
    }
}
impl Eq for PairKey {}
impl PartialOrd for PairKey {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for PairKey {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree
            .cmp(&o.degree)
            .then_with(|| self.order.cmp(&self.lcm, &o.lcm))
            .then_with(|| (self.j, self.i).cmp(&(o.j, o.i)))
    }
}

struct Engine {
    order: TermOrder,
    config: BuchbergerConfig,
    basis: Vec<Binomial>,
    queue: BinaryHeap<Reverse<PairKey>>,
    pending: HashSet<(usize, usize)>,
}

impl Engine {
    fn push_element(&mut self, b: Binomial) -> Result<()> {
        if b.degree() > self.config.degree_cap {
            return Err(Error::DegreeCapExceeded {
                cap: self.config.degree_cap,
            });
        }
        let j = self.basis.len();
        for (i, g) in self.basis.iter().enumerate() {
            let lcm = g.lead.lcm(&b.lead);
            self.queue.push(Reverse(PairKey {
                degree: lcm.degree(),
                lcm,
                i,
                j,
                order: self.order,
            }));
            self.pending.insert((i, j));
        }
        self.basis.push(b);
        Ok(())
    }

    fn chain_redundant(&self, i: usize, j: usize, lcm: &Monomial) -> bool {
        let key = |a: usize, b: usize| (a.min(b), a.max(b));
        self.basis.iter().enumerate().any(|(k, g)| {
            k != i
                && k != j
                && g.lead.divides(lcm)
                && !self.pending.contains(&key(i, k))
                && !self.pending.contains(&key(j, k))
                && self.basis[i].lead.lcm(&g.lead) != *lcm
                && self.basis[j].lead.lcm(&g.lead) != *lcm
        })
    }

    fn run(&mut self) -> Result<()> {
        while let Some(Reverse(pair)) = self.queue.pop() {
            let (i, j) = (pair.i, pair.j);
            self.pending.remove(&(i, j));
            let (f, g) = (&self.basis[i], &self.basis[j]);
            if f.lead.is_coprime(&g.lead) {
                continue;
            }
            if self.config.chain_criterion && self.chain_redundant(i, j, &pair.lcm) {
                continue;
            }
            let Some(s) = s_binomial(f, g, &self.order) else {
                continue;
            };
            if let Reduction::Binomial(r) = reduce(&s, &self.basis, &self.order) {
                self.push_element(r)?;
            }
        }
        Ok(())
    }
}

/// Reduced Groebner basis of the ideal generated by `gens` under `order`.
pub fn buchberger(
    gens: &[Binomial],
    order: TermOrder,
    config: BuchbergerConfig,
) -> Result<GroebnerBasis> {
    let nvars = gens.first().map_or(0, Binomial::nvars);
    if let Some(b) = gens
        .iter()
        .find(|b| b.nvars() != nvars || b.trail.nvars() != nvars)
    {
        return Err(Error::DimensionMismatch {
            expected: nvars,
            got: b.nvars().max(b.trail.nvars()),
        });
    }
    if let TermOrder::YWeighted { y } = order {
        if nvars > 0 && y >= nvars {
            return Err(Error::DimensionMismatch {
                expected: nvars,
                got: y + 1,
            });
        }
    }
    let mut engine = Engine {
        order,
        config,
        basis: Vec::new(),
        queue: BinaryHeap::new(),
        pending: HashSet::new(),
    };
    for g in gens {
        let oriented = Binomial::oriented(g.lead.clone(), g.trail.clone(), &order);
        if let Some(b) = oriented {
            if let Reduction::Binomial(r) = reduce(&b, &engine.basis, &order) {
                engine.push_element(r)?;
            }
        }
    }
    engine.run()?;
    Ok(GroebnerBasis {
        nvars,
        order,
        elements: interreduce(&engine.basis, &order),
        reduced: true,
    })
}

/// True iff every S-binomial of `gens` reduces to zero modulo `gens`.
pub fn is_groebner_basis(gens: &[Binomial], order: &TermOrder) -> bool {
    gens.iter().enumerate().all(|(j, g)| {
        gens[..j].iter().all(|f| {
            f.lead.is_coprime(&g.lead)
                || s_binomial(f, g, order)
                    .is_none_or(|s| reduce(&s, gens, order) == Reduction::Zero)
        })
    })
}
