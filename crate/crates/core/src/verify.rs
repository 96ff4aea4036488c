//! Family sweeps comparing every closed form with the oracle, one record per instance.

use std::fmt::Debug;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith_forms::{
    betti1_arithmetic, cm_type_arithmetic, gb_arithmetic, hilbert_arithmetic, irred_dec_arithmetic,
    is_gorenstein, reg_arithmetic,
};
use crate::error::{Error, Result};
use crate::gen_forms::{
    gb_generalized, gb_generalized_size, hilbert_generalized, hs_n3, irred_dec_generalized,
    is_complete_intersection, not_cm_witness, reg_generalized,
};
use crate::grobner::{
    eliminate, interreduce, is_generated_by_quadrics_from, toric_ideal, GroebnerBasis,
};
use crate::koszul::{koszul_n3, koszul_n4, koszul_status, quadratic_gb_witness};
use crate::monideal::{
    cm_via_initial, hs_general_split, irreducible_decomposition, last_step_check, reg_nested_type,
    HilbertCounter, MonomialIdeal,
};
use crate::poly::{Binomial, TermOrder};
use crate::report::{build_report, oracle_values_from, Mode};
use crate::seq::{arithmetic_profile, CurveSequence};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Arithmetic,
    Generalized,
    N3,
    N4,
    Random,
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "arithmetic" => Ok(Family::Arithmetic),
            "generalized" => Ok(Family::Generalized),
            "n3" => Ok(Family::N3),
            "n4" => Ok(Family::N4),
            "random" => Ok(Family::Random),
            _ => Err(Error::Parse {
                what: "family",
                input: s.to_string(),
            }),
        }
    }
}

/// Bounds shared by all families; each family reads the ones it needs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepBounds {
    /// Largest `m_n` for the arithmetic, generalized and random families.
    pub max_mn: u64,
    /// Largest `m_3` for the `n = 3` family.
    pub max_m3: u64,
    /// Largest `m_4` for the `n = 4` family.
    pub max_m4: u64,
    /// Values of `h` for the generalized family.
    pub hs: Vec<u64>,
    /// Largest `e` in `d = h e` for the generalized family.
    pub max_e: u64,
    pub min_n: usize,
    pub max_n: usize,
    /// Largest `d` for the arithmetic family.
    pub max_d: u64,
    pub seed: u64,
    pub random_count: usize,
}

impl Default for SweepBounds {
    fn default() -> Self {
        Self {
            max_mn: 30,
            max_m3: 12,
            max_m4: 10,
            hs: vec![2, 3],
            max_e: 3,
            min_n: 2,
            max_n: 6,
            max_d: 5,
            seed: 0,
            random_count: 100,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceRecord {
    pub family: Family,
    pub sequence: CurveSequence,
    pub passed: bool,
    pub checks: Vec<Check>,
    pub millis: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub family: Family,
    pub instances: usize,
    pub failures: usize,
    pub seed: Option<u64>,
    pub failed: Vec<CurveSequence>,
}

struct Checks(Vec<Check>);

impl Checks {
    fn new() -> Self {
        Checks(Vec::new())
    }

    fn equal<T: PartialEq + Debug>(&mut self, name: &str, closed: T, oracle: T) {
        let passed = closed == oracle;
        let detail = (!passed).then(|| format!("closed {closed:?}, oracle {oracle:?}"));
        self.0.push(Check {
            name: name.to_string(),
            passed,
            detail,
        });
    }

    fn holds(&mut self, name: &str, passed: bool) {
        self.0.push(Check {
            name: name.to_string(),
            passed,
            detail: None,
        });
    }

    /// Records `Ok` through `then`, an error as a failed check.
    fn attempt<T>(&mut self, name: &str, value: Result<T>, then: impl FnOnce(&mut Self, T)) {
        match value {
            Ok(v) => then(self, v),
            Err(e) => self.0.push(Check {
                name: name.to_string(),
                passed: false,
                detail: Some(e.to_string()),
            }),
        }
    }
}

fn sorted_strings(gens: &[Binomial]) -> Vec<String> {
    let mut v: Vec<String> = gens.iter().map(Binomial::to_string).collect();
    v.sort();
    v
}

/// The closed-form basis is minimal, not reduced: its leads must be exactly the minimal
/// generators of the oracle's initial ideal, and tail reduction must give the reduced basis.
fn compare_bases(checks: &mut Checks, closed: &[Binomial], toric: &GroebnerBasis) {
    let mut leads: Vec<String> = closed.iter().map(|b| b.lead.to_string()).collect();
    leads.sort();
    let mut oracle_leads: Vec<String> = toric.leads().map(|m| m.to_string()).collect();
    oracle_leads.sort();
    checks.equal("gb_leads", leads, oracle_leads);
    checks.equal(
        "gb",
        sorted_strings(&interreduce(closed, &TermOrder::DegRevLex)),
        sorted_strings(&toric.elements),
    );
}

fn hf_counts(initial: &MonomialIdeal, nvars: usize, top: u32) -> Vec<i64> {
    let mut counter = HilbertCounter::new();
    (0..=top)
        .map(|s| counter.count(initial, nvars, s) as i64)
        .collect()
}

fn check_arithmetic(seq: &CurveSequence, checks: &mut Checks) -> Result<()> {
    let toric = toric_ideal(seq)?;
    let initial = toric.initial_ideal();
    let nvars = seq.num_vars();
    let profile = arithmetic_profile(seq)?;
    let oracle = oracle_values_from(seq, &toric)?;

    checks.attempt("gb", gb_arithmetic(seq), |c, gb| {
        compare_bases(c, &gb, &toric)
    });
    checks.attempt("regularity", reg_arithmetic(seq), |c, reg| {
        c.equal("regularity", Some(reg), reg_nested_type(&initial).ok());
        c.equal("regularity_vs_report", Some(reg), oracle.regularity);
    });
    let hilbert = hilbert_arithmetic(seq)?;
    let reg = reg_arithmetic(seq).unwrap_or(0);
    let counted = hf_counts(&initial, nvars, reg as u32 + 3);
    let closed: Vec<i64> = (0..counted.len() as i64)
        .map(|s| hilbert.hf_at(s))
        .collect();
    checks.equal("hilbert_function", closed, counted);
    checks.equal(
        "hs_numerator",
        Some(hilbert.hs_numerator.clone()),
        oracle.hs_numerator.clone(),
    );
    checks.equal("hf_regularity", Some(hilbert.hf_reg), oracle.hf_regularity);
    checks.attempt("cm_type", cm_type_arithmetic(seq), |c, t| {
        c.equal("cm_type", Some(t), oracle.cm_type)
    });
    checks.attempt("gorenstein", is_gorenstein(seq), |c, g| {
        c.equal("gorenstein", Some(g), oracle.gorenstein)
    });
    checks.equal("betti1", Some(betti1_arithmetic(&profile)), oracle.betti1);
    checks.equal(
        "irreducible_decomposition",
        irred_dec_arithmetic(&profile),
        irreducible_decomposition(&initial),
    );
    checks.holds("cohen_macaulay", oracle.cm == Some(true));
    checks.attempt(
        "complete_intersection",
        is_complete_intersection(seq),
        |c, ci| {
            c.equal(
                "complete_intersection",
                Some(ci),
                oracle.complete_intersection,
            )
        },
    );
    checks.equal(
        "regularity_is_numerator_degree",
        Some(reg as usize),
        oracle.hs_numerator.as_ref().map(|num| num.len() - 1),
    );
    Ok(())
}

/// The line through the counted values at `top` and `top + 1`.
fn fitted_line(initial: &MonomialIdeal, nvars: usize, top: u32) -> (i64, i64) {
    let counts = hf_counts(initial, nvars, top + 1);
    let (s, a, b) = (top as i64, counts[top as usize], counts[top as usize + 1]);
    (b - a, a - (b - a) * s)
}

fn check_generalized(seq: &CurveSequence, checks: &mut Checks) -> Result<()> {
    let toric = toric_ideal(seq)?;
    let initial = toric.initial_ideal();
    let nvars = seq.num_vars();
    let oracle = oracle_values_from(seq, &toric)?;

    checks.attempt("gb", gb_generalized(seq), |c, gb| {
        compare_bases(c, &gb, &toric)
    });
    checks.attempt("minimal_generators", gb_generalized_size(seq), |c, size| {
        c.equal("minimal_generators", Some(size), oracle.betti1)
    });
    checks.attempt("elimination", eliminate(seq, 1), |c, elim| {
        c.equal(
            "elimination",
            elim.initial_ideal(),
            initial.restrict(|v| v != 0),
        );
    });
    let reg = reg_generalized(seq)?;
    checks.equal("regularity", Some(reg), reg_nested_type(&initial).ok());
    checks.attempt("last_step", last_step_check(seq, &initial, reg), |c, ok| {
        c.holds("last_step", ok)
    });

    let hilbert = hilbert_generalized(seq)?;
    let counted = hf_counts(&initial, nvars, reg as u32 + 3);
    let closed: Vec<i64> = (0..counted.len() as i64)
        .map(|s| hilbert.hf_at(s))
        .collect();
    checks.equal("hilbert_function", closed, counted);
    checks.equal(
        "hs_numerator",
        Some(hilbert.hs_numerator.clone()),
        oracle.hs_numerator.clone(),
    );
    let top = hilbert.hs_numerator.len() as u32 + 2;
    checks.equal(
        "hilbert_polynomial",
        (hilbert.hp_slope, hilbert.hp_constant),
        fitted_line(&initial, nvars, top),
    );
    checks.attempt(
        "hs_general_split",
        hs_general_split(&initial, seq),
        |c, (first, correction)| {
            let mut combined = first.clone();
            for (i, x) in correction.iter().enumerate() {
                if combined.len() <= i + 1 {
                    combined.resize(i + 2, 0);
                }
                combined[i + 1] -= x;
            }
            while combined.last() == Some(&0) {
                combined.pop();
            }
            c.equal(
                "hs_general_split",
                Some(combined),
                oracle.hs_numerator.clone(),
            );
        },
    );
    checks.attempt(
        "irreducible_decomposition",
        irred_dec_generalized(seq),
        |c, dec| {
            c.equal(
                "irreducible_decomposition",
                dec,
                irreducible_decomposition(&initial),
            )
        },
    );
    checks.holds("not_cohen_macaulay", !cm_via_initial(&initial, seq.len()));
    checks.holds("not_cm_witness", not_cm_witness(seq).is_some());
    Ok(())
}

fn check_koszul_listed(seq: &CurveSequence, checks: &mut Checks) -> Result<()> {
    let toric = toric_ideal(seq)?;
    let quadrics = is_generated_by_quadrics_from(seq, &toric)?;
    let listed = if seq.len() == 3 {
        koszul_n3(seq)?
    } else {
        koszul_n4(seq)?
    };
    checks.equal("quadrics_iff_listed", quadrics, listed);
    if listed {
        checks.attempt("quadratic_gb", quadratic_gb_witness(seq), |c, w| {
            c.holds("quadratic_gb", w.is_some())
        });
    }
    checks.holds(
        "koszul_status_consistent",
        koszul_status(seq).is_consistent(),
    );
    if let Ok(num) = hs_n3(seq) {
        let oracle = crate::monideal::hs_numerator(&toric.initial_ideal(), seq.num_vars())?;
        checks.equal("hs_n3", num, oracle);
    }
    Ok(())
}

fn check_random(seq: &CurveSequence, checks: &mut Checks) -> Result<()> {
    let toric: GroebnerBasis = toric_ideal(seq)?;
    let initial = toric.initial_ideal();
    checks.holds(
        "no_monomial",
        toric.elements.iter().all(|b| b.lead.is_coprime(&b.trail)),
    );
    if not_cm_witness(seq).is_some() {
        checks.holds(
            "witness_implies_not_cm",
            !cm_via_initial(&initial, seq.len()),
        );
    }
    checks.attempt("report_verify", build_report(seq, Mode::Verify), |c, r| {
        c.holds("koszul_status_consistent", r.koszul.is_consistent())
    });
    Ok(())
}

pub fn check_instance(family: Family, seq: &CurveSequence) -> InstanceRecord {
    let start = Instant::now();
    let mut checks = Checks::new();
    let outcome = match family {
        Family::Arithmetic => check_arithmetic(seq, &mut checks),
        Family::Generalized => check_generalized(seq, &mut checks),
        Family::N3 | Family::N4 => check_koszul_listed(seq, &mut checks),
        Family::Random => check_random(seq, &mut checks),
    };
    if let Err(e) = outcome {
        checks.0.push(Check {
            name: "setup".into(),
            passed: false,
            detail: Some(e.to_string()),
        });
    }
    InstanceRecord {
        family,
        sequence: seq.clone(),
        passed: checks.0.iter().all(|c| c.passed),
        checks: checks.0,
        millis: start.elapsed().as_millis() as u64,
    }
}

fn increasing(len: usize, max: u64) -> Vec<Vec<u64>> {
    fn extend(prefix: &mut Vec<u64>, len: usize, max: u64, out: &mut Vec<Vec<u64>>) {
        if prefix.len() == len {
            out.push(prefix.clone());
            return;
        }
        let from = prefix.last().map_or(1, |&x| x + 1);
        for x in from..=max {
            prefix.push(x);
            extend(prefix, len, max, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), len, max, &mut out);
    out
}

fn gcd(a: u64, b: u64) -> u64 {
    num_integer::Integer::gcd(&a, &b)
}

/// Instances of a family in a deterministic order.
pub fn instances(family: Family, bounds: &SweepBounds) -> Vec<CurveSequence> {
    let mut out = Vec::new();
    match family {
        Family::Arithmetic => {
            for n in bounds.min_n.max(2)..=bounds.max_n {
                for d in 1..=bounds.max_d {
                    for m1 in 1.. {
                        let mn = m1 + (n as u64 - 1) * d;
                        if mn > bounds.max_mn {
                            break;
                        }
                        if gcd(m1, d) == 1 {
                            out.push(CurveSequence::arithmetic(m1, d, n).expect("valid"));
                        }
                    }
                }
            }
        }
        Family::Generalized => {
            for &h in &bounds.hs {
                for e in 1..=bounds.max_e {
                    let d = h * e;
                    for n in bounds.min_n.max(3)..=bounds.max_n {
                        for m1 in 1.. {
                            let mn = h * m1 + (n as u64 - 1) * d;
                            if mn > bounds.max_mn {
                                break;
                            }
                            if gcd(m1, d) == 1 {
                                out.push(CurveSequence::generalized(m1, h, d, n).expect("valid"));
                            }
                        }
                    }
                }
            }
        }
        Family::N3 | Family::N4 => {
            let (len, max) = if family == Family::N3 {
                (3, bounds.max_m3)
            } else {
                (4, bounds.max_m4)
            };
            for terms in increasing(len, max) {
                let seq = CurveSequence::new(terms).expect("increasing");
                if seq.gcd_all() == 1 {
                    out.push(seq);
                }
            }
        }
        Family::Random => {
            let mut rng = ChaCha8Rng::seed_from_u64(bounds.seed);
            let max_mn = bounds.max_mn.max(bounds.max_n as u64 + 1);
            while out.len() < bounds.random_count {
                let n = rng.gen_range(bounds.min_n.max(2)..=bounds.max_n.clamp(2, 5));
                let mut terms: Vec<u64> = (0..n).map(|_| rng.gen_range(1..=max_mn)).collect();
                terms.sort_unstable();
                terms.dedup();
                if let Ok(seq) = CurveSequence::new(terms) {
                    if seq.len() == n {
                        out.push(seq);
                    }
                }
            }
        }
    }
    out
}

/// Runs every instance on the rayon pool; records come back in instance order.
pub fn run_sweep(family: Family, bounds: &SweepBounds) -> (SweepSummary, Vec<InstanceRecord>) {
    let records: Vec<InstanceRecord> = instances(family, bounds)
        .par_iter()
        .map(|seq| check_instance(family, seq))
        .collect();
    let failed: Vec<CurveSequence> = records
        .iter()
        .filter(|r| !r.passed)
        .map(|r| r.sequence.clone())
        .collect();
    let summary = SweepSummary {
        family,
        instances: records.len(),
        failures: failed.len(),
        seed: (family == Family::Random).then_some(bounds.seed),
        failed,
    };
    (summary, records)
}
