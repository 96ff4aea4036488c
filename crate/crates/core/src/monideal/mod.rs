//! Monomial ideals: minimal generators, irreducible decomposition and nested-type regularity.

mod cm;
mod hilbert;

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{Monomial, TermOrder};

pub use cm::{cm_type_oracle, cm_via_initial, f_set, last_step_check, standard_monomials};
pub use hilbert::{
    hf_quotient, hf_quotient_brute, hs_general_split, hs_numerator, numerator_from_hf,
    HilbertCounter,
};

/// A monomial ideal stored by its inclusion-minimal generators, sorted by degrevlex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    nvars: usize,
    gens: Vec<Monomial>,
}

fn minimize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    let order = TermOrder::DegRevLex;
    gens.sort_by(|a, b| order.cmp(a, b));
    gens.dedup();
    let mut kept: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !kept.iter().any(|k| k.divides(&g)) {
            kept.push(g);
        }
    }
    kept
}

impl MonomialIdeal {
    pub fn new(nvars: usize, gens: Vec<Monomial>) -> Self {
        debug_assert!(gens.iter().all(|g| g.nvars() == nvars));
        Self {
            nvars,
            gens: minimize(gens),
        }
    }

    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            gens: Vec::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn min_gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(Monomial::is_one)
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    /// `I ∩ K[x_i : keep(i)]`: the generators using only kept variables.
    pub fn restrict(&self, keep: impl Fn(usize) -> bool) -> MonomialIdeal {
        let gens = self
            .gens
            .iter()
            .filter(|g| g.support().all(&keep))
            .cloned()
            .collect();
        MonomialIdeal::new(self.nvars, gens)
    }

    /// The image of `I` under `x_i -> 1` for every `i` with `drop(i)`.
    pub fn set_to_one(&self, drop: impl Fn(usize) -> bool) -> MonomialIdeal {
        let gens = self
            .gens
            .iter()
            .map(|g| {
                let exps = g
                    .exps()
                    .iter()
                    .enumerate()
                    .map(|(i, &e)| if drop(i) { 0 } else { e })
                    .collect();
                Monomial::new(exps).expect("exponents only shrink")
            })
            .collect();
        MonomialIdeal::new(self.nvars, gens)
    }

    /// `I : x_var^e`.
    pub fn colon_var_power(&self, var: usize, e: u32) -> MonomialIdeal {
        let gens = self
            .gens
            .iter()
            .map(|g| g.with_exp(var, g.exp(var).saturating_sub(e)))
            .collect();
        MonomialIdeal::new(self.nvars, gens)
    }

    pub fn lcm_of_gens(&self) -> Monomial {
        self.gens
            .iter()
            .fold(Monomial::one(self.nvars), |acc, g| acc.lcm(g))
    }

    pub fn with_gen(&self, m: Monomial) -> MonomialIdeal {
        let mut gens = self.gens.clone();
        gens.push(m);
        MonomialIdeal::new(self.nvars, gens)
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.gens.iter().map(Monomial::to_string).collect();
        write!(f, "<{}>", parts.join(", "))
    }
}

/// `<x_i^{e_i} : i in support>`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IrreducibleComponent {
    /// `(0-based variable, exponent)` pairs sorted by variable; exponents are positive.
    pub powers: Vec<(usize, u32)>,
}

impl IrreducibleComponent {
    pub fn new(mut powers: Vec<(usize, u32)>) -> Self {
        powers.retain(|&(_, e)| e > 0);
        powers.sort_unstable();
        Self { powers }
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.powers.iter().any(|&(v, e)| m.exp(v) >= e)
    }

    /// `self ⊆ other`.
    pub fn is_contained_in(&self, other: &IrreducibleComponent) -> bool {
        self.powers
            .iter()
            .all(|&(v, e)| other.powers.iter().any(|&(w, f)| w == v && f <= e))
    }

    pub fn exponent(&self, var: usize) -> Option<u32> {
        self.powers
            .iter()
            .find(|&&(v, _)| v == var)
            .map(|&(_, e)| e)
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.powers.iter().map(|&(v, _)| v)
    }

    /// True iff the support is `{x_1, ..., x_i}` for some `i`.
    pub fn has_prefix_support(&self) -> bool {
        self.powers.iter().enumerate().all(|(i, &(v, _))| i == v)
    }

    pub fn to_ideal(&self, nvars: usize) -> MonomialIdeal {
        MonomialIdeal::new(
            nvars,
            self.powers
                .iter()
                .map(|&(v, e)| Monomial::var_power(nvars, v, e))
                .collect(),
        )
    }
}

impl fmt::Display for IrreducibleComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .powers
            .iter()
            .map(|&(v, e)| {
                if e == 1 {
                    format!("x{}", v + 1)
                } else {
                    format!("x{}^{}", v + 1, e)
                }
            })
            .collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// `reg(R / q) = sum of exponents - number of variables` for an irreducible `q`.
pub fn reg_irreducible(c: &IrreducibleComponent) -> u64 {
    c.powers.iter().map(|&(_, e)| e as u64 - 1).sum()
}

/// Irredundant decomposition, components sorted lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IrreducibleDecomposition {
    pub components: Vec<IrreducibleComponent>,
}

impl IrreducibleDecomposition {
    /// Drops components containing another one and sorts the rest.
    pub fn from_components(mut comps: Vec<IrreducibleComponent>) -> Self {
        comps.sort();
        comps.dedup();
        let pruned: Vec<IrreducibleComponent> = comps
            .iter()
            .enumerate()
            .filter(|(i, a)| {
                !comps
                    .iter()
                    .enumerate()
                    .any(|(j, b)| j != *i && b.is_contained_in(a))
            })
            .map(|(_, a)| a.clone())
            .collect();
        Self { components: pruned }
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.components.iter().all(|c| c.contains(m))
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// One component per line, `[x1^5, x2, x3^2, x4]`.
    pub fn to_text(&self) -> String {
        self.components.iter().map(|c| format!("{c}\n")).collect()
    }
}

fn decompose_into(
    gens: Vec<Monomial>,
    seen: &mut HashSet<Vec<Monomial>>,
    out: &mut Vec<IrreducibleComponent>,
) {
    if !seen.insert(gens.clone()) {
        return;
    }
    let split = gens
        .iter()
        .filter(|g| g.support_size() > 1)
        .fold(None::<&Monomial>, |best, g| match best {
            Some(b) if b.support_size() >= g.support_size() => Some(b),
            _ => Some(g),
        });
    match split {
        None => out.push(IrreducibleComponent::new(
            gens.iter()
                .map(|g| {
                    let v = g.support().next().expect("non-unit generator");
                    (v, g.exp(v))
                })
                .collect(),
        )),
        Some(g) => {
            let v = g.support().next().unwrap();
            let power = Monomial::var_power(g.nvars(), v, g.exp(v));
            let rest = g.div(&power);
            for extra in [power, rest] {
                let mut next = gens.clone();
                next.push(extra);
                decompose_into(minimize(next), seen, out);
            }
        }
    }
}

/// Irredundant irreducible decomposition by recursive splitting of mixed generators.
pub fn irreducible_decomposition(ideal: &MonomialIdeal) -> IrreducibleDecomposition {
    if ideal.is_zero() || ideal.is_unit() {
        return IrreducibleDecomposition {
            components: Vec::new(),
        };
    }
    let mut out = Vec::new();
    decompose_into(ideal.gens.clone(), &mut HashSet::new(), &mut out);
    IrreducibleDecomposition::from_components(out)
}

pub fn is_nested_type(ideal: &MonomialIdeal) -> bool {
    irreducible_decomposition(ideal)
        .components
        .iter()
        .all(IrreducibleComponent::has_prefix_support)
}

/// Regularity of `R / I` for a nested-type `I`: the largest component regularity.
pub fn reg_nested_type(ideal: &MonomialIdeal) -> Result<u64> {
    let dec = irreducible_decomposition(ideal);
    if !dec
        .components
        .iter()
        .all(IrreducibleComponent::has_prefix_support)
    {
        return Err(Error::NotNestedType);
    }
    Ok(dec
        .components
        .iter()
        .map(reg_irreducible)
        .max()
        .unwrap_or(0))
}
