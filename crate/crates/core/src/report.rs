//! One-shot invariant report combining closed forms with oracle computations.

use std::fmt::{self, Debug};

use serde::{Deserialize, Serialize};

use crate::arith_forms::{
    betti1_arithmetic, cm_type_arithmetic, hilbert_arithmetic, is_gorenstein, reg_arithmetic,
};
use crate::error::{Error, Result};
use crate::gen_forms::{
    hilbert_generalized, is_complete_intersection, not_cm_witness, reg_generalized,
};
use crate::grobner::{minimal_generator_count, toric_ideal, GroebnerBasis};
use crate::koszul::{koszul_status, KoszulStatus};
use crate::monideal::{
    cm_type_oracle, cm_via_initial, hs_numerator, reg_nested_type, HilbertCounter, MonomialIdeal,
};
use crate::seq::{arithmetic_profile, classify, CurveSequence, SequenceClass};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    ClosedForm,
    Oracle,
    BothAgree,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Field<T> {
    pub value: T,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertPolynomial {
    pub slope: i64,
    pub constant: i64,
}

impl fmt::Display for HilbertPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.constant < 0 {
            write!(f, "{} s - {}", self.slope, -self.constant)
        } else {
            write!(f, "{} s + {}", self.slope, self.constant)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub sequence: CurveSequence,
    pub class: SequenceClass,
    pub cm: Option<Field<bool>>,
    pub cm_type: Option<Field<u64>>,
    pub gorenstein: Option<Field<bool>>,
    pub complete_intersection: Option<Field<bool>>,
    pub regularity: Option<Field<u64>>,
    pub hf_regularity: Option<Field<u64>>,
    pub betti1: Option<Field<u64>>,
    pub hs_numerator: Option<Field<Vec<i64>>>,
    pub hilbert_polynomial: Option<Field<HilbertPolynomial>>,
    pub koszul: KoszulStatus,
}

/// Values a single computation path produced; `None` where it does not apply.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Values {
    pub cm: Option<bool>,
    pub cm_type: Option<u64>,
    pub gorenstein: Option<bool>,
    pub complete_intersection: Option<bool>,
    pub regularity: Option<u64>,
    pub hf_regularity: Option<u64>,
    pub betti1: Option<u64>,
    pub hs_numerator: Option<Vec<i64>>,
    pub hilbert_polynomial: Option<HilbertPolynomial>,
}

/// First `s >= 0` from which `hf(s)` equals the Hilbert polynomial; scanned up to `top`.
fn first_agreeing_degree(mut hf: impl FnMut(i64) -> i64, hp: HilbertPolynomial, top: i64) -> u64 {
    (0..=top)
        .rev()
        .find(|&s| hf(s) != hp.slope * s + hp.constant)
        .map_or(0, |s| s as u64 + 1)
}

/// `Q(t) / (1-t)^2` has Hilbert polynomial `Q(1) s + Q(1) - Q'(1)`.
fn polynomial_of_numerator(num: &[i64]) -> HilbertPolynomial {
    let at_one: i64 = num.iter().sum();
    let derivative: i64 = num.iter().enumerate().map(|(i, c)| i as i64 * c).sum();
    HilbertPolynomial {
        slope: at_one,
        constant: at_one - derivative,
    }
}

/// Closed-form values, computed on `seq / gcd`, which defines the same curve.
pub fn closed_values(seq: &CurveSequence) -> Values {
    let seq = seq.normalized();
    let mut v = Values::default();
    if not_cm_witness(&seq).is_some() {
        v.cm = Some(false);
        v.gorenstein = Some(false);
    }
    v.complete_intersection = is_complete_intersection(&seq).ok();
    if let Ok(p) = arithmetic_profile(&seq) {
        let hilbert = hilbert_arithmetic(&seq).expect("profile exists");
        v.cm = Some(true);
        v.cm_type = cm_type_arithmetic(&seq).ok();
        v.gorenstein = is_gorenstein(&seq).ok();
        v.regularity = reg_arithmetic(&seq).ok();
        v.hf_regularity = Some(hilbert.hf_reg);
        v.betti1 = Some(betti1_arithmetic(&p));
        v.hilbert_polynomial = Some(HilbertPolynomial {
            slope: hilbert.hp_slope,
            constant: hilbert.hp_constant,
        });
        v.hs_numerator = Some(hilbert.hs_numerator);
    } else if let Ok(hilbert) = hilbert_generalized(&seq) {
        let hp = HilbertPolynomial {
            slope: hilbert.hp_slope,
            constant: hilbert.hp_constant,
        };
        v.regularity = reg_generalized(&seq).ok();
        v.hf_regularity = Some(first_agreeing_degree(
            |s| hilbert.hf_at(s),
            hp,
            hilbert.hs_numerator.len() as i64 + 2,
        ));
        v.hilbert_polynomial = Some(hp);
        v.hs_numerator = Some(hilbert.hs_numerator);
    }
    v
}

/// Oracle values from the toric basis and its initial ideal.
pub fn oracle_values(seq: &CurveSequence) -> Result<Values> {
    let toric = toric_ideal(seq)?;
    oracle_values_from(seq, &toric)
}

pub fn oracle_values_from(seq: &CurveSequence, toric: &GroebnerBasis) -> Result<Values> {
    let n = seq.len();
    let nvars = seq.num_vars();
    let initial: MonomialIdeal = toric.initial_ideal();
    let cm = cm_via_initial(&initial, n);
    let cm_type = if cm {
        Some(cm_type_oracle(seq, &initial)?)
    } else {
        None
    };
    let betti1 = minimal_generator_count(seq, toric)?;
    let num = hs_numerator(&initial, nvars)?;
    let hp = polynomial_of_numerator(&num);
    let mut counter = HilbertCounter::new();
    let hf_reg = first_agreeing_degree(
        |s| counter.count(&initial, nvars, s as u32) as i64,
        hp,
        num.len() as i64 + 2,
    );
    Ok(Values {
        cm: Some(cm),
        cm_type,
        gorenstein: Some(cm_type == Some(1)),
        complete_intersection: Some(betti1 == n as u64 - 1),
        regularity: reg_nested_type(&initial).ok(),
        hf_regularity: Some(hf_reg),
        betti1: Some(betti1),
        hs_numerator: Some(num),
        hilbert_polynomial: Some(hp),
    })
}

/// How the report combines the two paths.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// Closed forms where they apply, the oracle for the remaining fields.
    Auto,
    /// Only closed forms.
    Closed,
    /// Only the oracle.
    Oracle,
    /// Both paths for every field; any disagreement is an error.
    Verify,
}

fn merge<T: PartialEq + Debug>(
    field: &'static str,
    closed: Option<T>,
    oracle: Option<T>,
    verify: bool,
) -> Result<Option<Field<T>>> {
    Ok(match (closed, oracle) {
        (Some(c), Some(o)) if verify => {
            if c != o {
                return Err(Error::Mismatch {
                    field,
                    closed: format!("{c:?}"),
                    oracle: format!("{o:?}"),
                });
            }
            Some(Field {
                value: c,
                provenance: Provenance::BothAgree,
            })
        }
        (Some(c), _) => Some(Field {
            value: c,
            provenance: Provenance::ClosedForm,
        }),
        (None, Some(o)) => Some(Field {
            value: o,
            provenance: Provenance::Oracle,
        }),
        (None, None) => None,
    })
}

fn all_closed(v: &Values) -> bool {
    v.cm.is_some()
        && v.regularity.is_some()
        && v.hs_numerator.is_some()
        && v.hilbert_polynomial.is_some()
        && v.hf_regularity.is_some()
        && v.betti1.is_some()
        && v.complete_intersection.is_some()
        && (v.cm == Some(false) || v.cm_type.is_some())
}

pub fn build_report(seq: &CurveSequence, mode: Mode) -> Result<InvariantReport> {
    let closed = if mode == Mode::Oracle {
        Values::default()
    } else {
        closed_values(seq)
    };
    let oracle = match mode {
        Mode::Closed => Values::default(),
        Mode::Auto if all_closed(&closed) => Values::default(),
        Mode::Auto => oracle_values(seq).unwrap_or_default(),
        Mode::Oracle | Mode::Verify => oracle_values(seq)?,
    };
    let verify = mode == Mode::Verify;
    Ok(InvariantReport {
        sequence: seq.clone(),
        class: classify(seq),
        cm: merge("cm", closed.cm, oracle.cm, verify)?,
        cm_type: merge("cm_type", closed.cm_type, oracle.cm_type, verify)?,
        gorenstein: merge("gorenstein", closed.gorenstein, oracle.gorenstein, verify)?,
        complete_intersection: merge(
            "complete_intersection",
            closed.complete_intersection,
            oracle.complete_intersection,
            verify,
        )?,
        regularity: merge("regularity", closed.regularity, oracle.regularity, verify)?,
        hf_regularity: merge(
            "hf_regularity",
            closed.hf_regularity,
            oracle.hf_regularity,
            verify,
        )?,
        betti1: merge("betti1", closed.betti1, oracle.betti1, verify)?,
        hs_numerator: merge(
            "hs_numerator",
            closed.hs_numerator,
            oracle.hs_numerator,
            verify,
        )?,
        hilbert_polynomial: merge(
            "hilbert_polynomial",
            closed.hilbert_polynomial,
            oracle.hilbert_polynomial,
            verify,
        )?,
        koszul: koszul_status(seq),
    })
}

fn line<T: fmt::Display>(
    f: &mut fmt::Formatter<'_>,
    name: &str,
    field: &Option<Field<T>>,
) -> fmt::Result {
    match field {
        Some(x) => writeln!(
            f,
            "{name:<22} {:<12} [{}]",
            x.value.to_string(),
            provenance_name(x.provenance)
        ),
        None => writeln!(f, "{name:<22} -"),
    }
}

fn provenance_name(p: Provenance) -> &'static str {
    match p {
        Provenance::ClosedForm => "closed_form",
        Provenance::Oracle => "oracle",
        Provenance::BothAgree => "both_agree",
    }
}

pub fn format_numerator(num: &[i64]) -> String {
    let parts: Vec<String> = num.iter().map(i64::to_string).collect();
    format!("({})", parts.join(","))
}

impl fmt::Display for InvariantReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:<22} {}", "sequence", self.sequence)?;
        let class = match self.class.h_d() {
            Some((h, d)) => format!("h={h} d={d}"),
            None => "general".to_string(),
        };
        writeln!(f, "{:<22} {class}", "class")?;
        line(f, "cohen_macaulay", &self.cm)?;
        line(f, "cm_type", &self.cm_type)?;
        line(f, "gorenstein", &self.gorenstein)?;
        line(f, "complete_intersection", &self.complete_intersection)?;
        line(f, "regularity", &self.regularity)?;
        line(f, "hf_regularity", &self.hf_regularity)?;
        line(f, "betti1", &self.betti1)?;
        let num = self.hs_numerator.as_ref().map(|x| Field {
            value: format_numerator(&x.value),
            provenance: x.provenance,
        });
        line(f, "hs_numerator", &num)?;
        line(f, "hilbert_polynomial", &self.hilbert_polynomial)?;
        writeln!(
            f,
            "{:<22} {:?} ({})",
            "koszul",
            self.koszul.verdict,
            reason_name(&self.koszul)
        )
    }
}

fn reason_name(status: &KoszulStatus) -> String {
    use crate::koszul::Reason;
    match status.reason {
        Reason::QuadraticGb { order } => format!("quadratic_gb {}", order.name()),
        other => format!("{other:?}"),
    }
}
