//! `mcurve`: invariants, Groebner bases, Hilbert tables and verification sweeps for
//! projective monomial curves.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use mcurve_core::arith_forms::{gb_arithmetic, hilbert_arithmetic};
use mcurve_core::gen_forms::{gb_generalized, hilbert_generalized};
use mcurve_core::grobner::{
    buchberger, default_degree_cap, interreduce, toric_ideal, BuchbergerConfig, GroebnerBasis,
};
use mcurve_core::monideal::{hs_numerator, HilbertCounter};
use mcurve_core::report::{build_report, format_numerator, Mode};
use mcurve_core::seq::{parse_sequence, CurveSequence};
use mcurve_core::verify::{run_sweep, Family, SweepBounds};
use mcurve_core::{Binomial, Error, TermOrder};

#[derive(Parser)]
#[command(
    name = "mcurve",
    version,
    about = "Vanishing ideals of projective monomial curves"
)]
struct Cli {
    /// Abort Buchberger runs past this degree (overrides MCURVE_CAP_DEGREE).
    #[arg(long, global = true)]
    cap_degree: Option<u32>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SequenceArg {
    /// Comma-separated increasing positive integers, e.g. 10,13,16,19,22.
    #[arg(short = 'm', long = "sequence")]
    sequence: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum Source {
    Closed,
    Oracle,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderName {
    Degrevlex,
    Yweighted,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyName {
    Arithmetic,
    Generalized,
    N3,
    N4,
    Random,
}

#[derive(Subcommand)]
enum Command {
    /// Report every applicable invariant with its provenance.
    Invariants {
        #[command(flatten)]
        seq: SequenceArg,
        /// Compute closed forms and oracle values and require them to agree.
        #[arg(long)]
        verify: bool,
        /// Restrict to a single computation path.
        #[arg(long, value_enum, conflicts_with = "verify")]
        source: Option<Source>,
        #[arg(long)]
        json: bool,
    },
    /// Print a Groebner basis of the vanishing ideal.
    Gb {
        #[command(flatten)]
        seq: SequenceArg,
        #[arg(long, value_enum, default_value = "oracle")]
        source: Source,
        #[arg(long, value_enum, default_value = "degrevlex")]
        order: OrderName,
        /// 1-based variable dominating the y-weighted order.
        #[arg(long, default_value_t = 1)]
        y: usize,
        /// Print the difference between the reduced closed-form basis and the oracle basis.
        #[arg(long)]
        diff: bool,
        #[arg(long)]
        json: bool,
    },
    /// Tabulate the Hilbert function from closed forms and by counting.
    Hilbert {
        #[command(flatten)]
        seq: SequenceArg,
        #[arg(long, default_value_t = 10)]
        max_degree: u32,
        #[arg(long)]
        json: bool,
    },
    /// Run a family of closed-form versus oracle checks.
    Sweep {
        #[arg(long, value_enum)]
        family: FamilyName,
        #[arg(long)]
        max_mn: Option<u64>,
        #[arg(long)]
        max_m3: Option<u64>,
        #[arg(long)]
        max_m4: Option<u64>,
        /// Values of h for the generalized family.
        #[arg(long = "h", value_delimiter = ',')]
        hs: Vec<u64>,
        #[arg(long)]
        seed: Option<u64>,
        /// Number of random instances.
        #[arg(long)]
        count: Option<usize>,
        /// JSONL output file, one record per instance.
        #[arg(long)]
        out: Option<String>,
    },
}

/// A failure with its exit code.
enum Failure {
    Usage(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Mismatch { .. } | Error::Inconsistency(_) | Error::MonomialInToricIdeal(_) => {
                Failure::Verification(e.to_string())
            }
            Error::DegreeCapExceeded { .. }
            | Error::NonTerminating(_)
            | Error::BoundExceeded { .. } => Failure::Verification(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn parse(arg: &SequenceArg) -> Result<CurveSequence, Failure> {
    Ok(parse_sequence(&arg.sequence)?)
}

fn closed_basis(seq: &CurveSequence) -> Result<Vec<Binomial>, Failure> {
    let normalized = seq.normalized();
    if normalized != *seq {
        return Err(Failure::Usage(format!(
            "closed forms need gcd 1; try -m {normalized}"
        )));
    }
    gb_arithmetic(seq)
        .or_else(|_| gb_generalized(seq))
        .map_err(|_| Failure::Usage(format!("no closed-form basis applies to {seq}")))
}

fn sorted(mut elements: Vec<Binomial>, order: &TermOrder) -> Vec<Binomial> {
    elements.sort_by(|a, b| {
        order
            .cmp(&a.lead, &b.lead)
            .then_with(|| order.cmp(&a.trail, &b.trail))
    });
    elements
}

fn cmd_invariants(
    arg: &SequenceArg,
    verify: bool,
    source: Option<Source>,
    as_json: bool,
) -> Outcome {
    let seq = parse(arg)?;
    let mode = match (verify, source) {
        (true, _) => Mode::Verify,
        (false, Some(Source::Closed)) => Mode::Closed,
        (false, Some(Source::Oracle)) => Mode::Oracle,
        (false, None) => Mode::Auto,
    };
    let report = build_report(&seq, mode)?;
    if as_json {
        println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("serializable")
        );
    } else {
        print!("{report}");
    }
    Ok(())
}

fn cmd_gb(
    arg: &SequenceArg,
    source: Source,
    order: OrderName,
    y: usize,
    diff: bool,
    as_json: bool,
) -> Outcome {
    let seq = parse(arg)?;
    let nvars = seq.num_vars();
    let order = match order {
        OrderName::Degrevlex => TermOrder::DegRevLex,
        OrderName::Yweighted if (1..=nvars).contains(&y) => TermOrder::YWeighted { y: y - 1 },
        OrderName::Yweighted => return Err(Failure::Usage(format!("--y must lie in 1..={nvars}"))),
    };
    if diff {
        if order != TermOrder::DegRevLex {
            return Err(Failure::Usage("--diff compares degrevlex bases".into()));
        }
        let closed = interreduce(&closed_basis(&seq)?, &order);
        let oracle = toric_ideal(&seq)?;
        let only_closed: Vec<String> = closed
            .iter()
            .filter(|b| !oracle.elements.contains(b))
            .map(|b| b.to_string())
            .collect();
        let only_oracle: Vec<String> = oracle
            .elements
            .iter()
            .filter(|b| !closed.contains(b))
            .map(|b| b.to_string())
            .collect();
        if as_json {
            println!(
                "{}",
                json!({ "only_closed": only_closed, "only_oracle": only_oracle })
            );
        } else {
            for b in &only_closed {
                println!("- {b}");
            }
            for b in &only_oracle {
                println!("+ {b}");
            }
        }
        return if only_closed.is_empty() && only_oracle.is_empty() {
            Ok(())
        } else {
            Err(Failure::Verification(format!(
                "{} closed-only and {} oracle-only elements",
                only_closed.len(),
                only_oracle.len()
            )))
        };
    }
    let basis = match source {
        Source::Closed => {
            if order != TermOrder::DegRevLex {
                return Err(Failure::Usage(
                    "closed-form bases are degrevlex bases".into(),
                ));
            }
            GroebnerBasis {
                nvars,
                order,
                elements: sorted(closed_basis(&seq)?, &order),
                reduced: false,
            }
        }
        Source::Oracle => {
            let toric = toric_ideal(&seq)?;
            if order == TermOrder::DegRevLex {
                toric
            } else {
                buchberger(
                    &toric.elements,
                    order,
                    BuchbergerConfig::with_cap(default_degree_cap(&seq)),
                )?
            }
        }
    };
    if as_json {
        let elements: Vec<String> = basis.elements.iter().map(Binomial::to_string).collect();
        println!(
            "{}",
            json!({ "sequence": seq.terms(), "order": order.name(), "vars": nvars, "elements": elements })
        );
    } else {
        print!("{}", basis.to_text(Some(&seq)));
    }
    Ok(())
}

/// Closed Hilbert function, series numerator and polynomial `(slope, constant)`.
type ClosedHilbert = (Box<dyn Fn(i64) -> i64>, Vec<i64>, (i64, i64));

fn cmd_hilbert(arg: &SequenceArg, max_degree: u32, as_json: bool) -> Outcome {
    let seq = parse(arg)?;
    let normalized = seq.normalized();
    let closed: Option<ClosedHilbert> = if let Ok(h) = hilbert_arithmetic(&normalized) {
        let poly = (h.hp_slope, h.hp_constant);
        let num = h.hs_numerator.clone();
        Some((Box::new(move |s| h.hf_at(s)), num, poly))
    } else if let Ok(h) = hilbert_generalized(&normalized) {
        let poly = (h.hp_slope, h.hp_constant);
        let num = h.hs_numerator.clone();
        Some((Box::new(move |s| h.hf_at(s)), num, poly))
    } else {
        None
    };
    let initial = toric_ideal(&seq)?.initial_ideal();
    let nvars = seq.num_vars();
    let mut counter = HilbertCounter::new();
    let counted: Vec<i64> = (0..=max_degree)
        .map(|s| counter.count(&initial, nvars, s) as i64)
        .collect();
    let oracle_num = hs_numerator(&initial, nvars)?;
    let formula: Option<Vec<i64>> = closed
        .as_ref()
        .map(|(hf, _, _)| (0..=max_degree as i64).map(hf).collect());
    let mut mismatches = 0;
    let mut rows = Vec::new();
    for (s, &count) in counted.iter().enumerate() {
        let value = formula.as_ref().map(|f| f[s]);
        let agrees = value.is_none_or(|v| v == count);
        if !agrees {
            mismatches += 1;
        }
        rows.push((s, value, count, agrees));
    }
    let numerator_agrees = closed.as_ref().is_none_or(|(_, num, _)| *num == oracle_num);
    if !numerator_agrees {
        mismatches += 1;
    }
    if as_json {
        let table: Vec<_> = rows
            .iter()
            .map(|&(s, value, count, agrees)| json!({ "s": s, "closed": value, "counted": count, "agrees": agrees }))
            .collect();
        println!(
            "{}",
            json!({
                "sequence": seq.terms(),
                "rows": table,
                "hs_numerator": oracle_num,
                "closed_hs_numerator": closed.as_ref().map(|c| c.1.clone()),
                "hilbert_polynomial": closed.as_ref().map(|c| json!({ "slope": c.2.0, "constant": c.2.1 })),
            })
        );
    } else {
        println!("{:>4} {:>10} {:>10}", "s", "closed", "counted");
        for (s, value, count, agrees) in rows {
            let closed_text = value.map_or("-".to_string(), |v| v.to_string());
            println!(
                "{s:>4} {closed_text:>10} {count:>10}{}",
                if agrees { "" } else { "  MISMATCH" }
            );
        }
        println!("hs_numerator {}", format_numerator(&oracle_num));
        if let Some((_, num, (slope, constant))) = &closed {
            if !numerator_agrees {
                println!("closed hs_numerator {}  MISMATCH", format_numerator(num));
            }
            println!(
                "hilbert_polynomial {slope} s {} {}",
                if *constant < 0 { '-' } else { '+' },
                constant.abs()
            );
        }
    }
    if mismatches > 0 {
        return Err(Failure::Verification(format!("{mismatches} mismatches")));
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_sweep(
    family: FamilyName,
    max_mn: Option<u64>,
    max_m3: Option<u64>,
    max_m4: Option<u64>,
    hs: Vec<u64>,
    seed: Option<u64>,
    count: Option<usize>,
    out: Option<String>,
) -> Outcome {
    let family = match family {
        FamilyName::Arithmetic => Family::Arithmetic,
        FamilyName::Generalized => Family::Generalized,
        FamilyName::N3 => Family::N3,
        FamilyName::N4 => Family::N4,
        FamilyName::Random => Family::Random,
    };
    let defaults = SweepBounds::default();
    if hs.iter().any(|&h| h < 2) {
        return Err(Failure::Usage("--h values must be at least 2".into()));
    }
    let bounds = SweepBounds {
        max_mn: max_mn.unwrap_or(if family == Family::Generalized {
            60
        } else {
            defaults.max_mn
        }),
        max_m3: max_m3.unwrap_or(defaults.max_m3),
        max_m4: max_m4.unwrap_or(defaults.max_m4),
        hs: if hs.is_empty() { defaults.hs } else { hs },
        seed: seed.unwrap_or(defaults.seed),
        random_count: count.unwrap_or(defaults.random_count),
        ..defaults
    };
    let (summary, records) = run_sweep(family, &bounds);
    if let Some(path) = out {
        let mut writer = BufWriter::new(File::create(&path)?);
        for r in &records {
            writeln!(
                writer,
                "{}",
                serde_json::to_string(r).expect("serializable")
            )?;
        }
        writer.flush()?;
    }
    for r in records.iter().filter(|r| !r.passed) {
        let failed: Vec<&str> = r
            .checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name.as_str())
            .collect();
        eprintln!("FAIL {} {}", r.sequence, failed.join(","));
    }
    println!("{}", serde_json::to_string(&summary).expect("serializable"));
    if summary.failures > 0 {
        return Err(Failure::Verification(format!(
            "{} failing instances",
            summary.failures
        )));
    }
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    if let Some(cap) = cli.cap_degree {
        std::env::set_var(mcurve_core::grobner::CAP_ENV_VAR, cap.to_string());
    }
    match cli.command {
        Command::Invariants {
            seq,
            verify,
            source,
            json,
        } => cmd_invariants(&seq, verify, source, json),
        Command::Gb {
            seq,
            source,
            order,
            y,
            diff,
            json,
        } => cmd_gb(&seq, source, order, y, diff, json),
        Command::Hilbert {
            seq,
            max_degree,
            json,
        } => cmd_hilbert(&seq, max_degree, json),
        Command::Sweep {
            family,
            max_mn,
            max_m3,
            max_m4,
            hs,
            seed,
            count,
            out,
        } => cmd_sweep(family, max_mn, max_m3, max_m4, hs, seed, count, out),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
