//! Random instances and ratio experiments.
//!
//! [`gen_instance`] draws distinct tuples uniformly per relation.
//! [`run_experiment`] solves every generated instance with every configured
//! mode, optionally against an exact optimum, and aggregates ratios per mode.
//! Rows are ordered by (instance id, mode position) and each solver run gets
//! its own seed derived from the mode seed and the instance id.

use std::io;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::index;

use crate::error::{Error, Result};
use crate::exact::brute_force_with_cap;
use crate::rational::{to_decimal, Rational};
use crate::report::Mode;
use crate::rng::{generator, trial_seed};
use crate::solve::{solve, SolverConfig};
use crate::structure::{evaluate, Assignment, Structure};
use crate::templates;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TemplateSource {
    Named(String),
    Inline(Structure),
}

impl TemplateSource {
    pub fn resolve(&self) -> Result<Structure> {
        match self {
            TemplateSource::Named(name) => templates::by_name(name),
            TemplateSource::Inline(s) => Ok(s.clone()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenSpec {
    pub template: TemplateSource,
    pub elements: usize,
    /// Distinct tuples drawn for every relation of the signature.
    pub tuples_per_relation: usize,
    pub seed: u64,
}

impl GenSpec {
    pub fn named(name: &str, elements: usize, tuples_per_relation: usize, seed: u64) -> Self {
        Self {
            template: TemplateSource::Named(name.to_string()),
            elements,
            tuples_per_relation,
            seed,
        }
    }

    pub fn inline(template: Structure, elements: usize, tuples_per_relation: usize, seed: u64) -> Self {
        Self {
            template: TemplateSource::Inline(template),
            elements,
            tuples_per_relation,
            seed,
        }
    }
}

/// Generates an instance over the template's signature. Tuples of each
/// relation are a uniform sample without replacement, stored in
/// lexicographic order.
pub fn gen_instance(spec: &GenSpec) -> Result<Structure> {
    let template = spec.template.resolve()?;
    gen_for(&template, spec)
}

fn gen_for(template: &Structure, spec: &GenSpec) -> Result<Structure> {
    let sig = template.signature();
    let n = spec.elements;
    let mut rng = generator(spec.seed);
    let mut tuples = Vec::with_capacity(sig.len());
    for rel in 0..sig.len() {
        let arity = sig.arity(rel);
        let available = (n as u128).checked_pow(arity as u32).unwrap_or(u128::MAX);
        if spec.tuples_per_relation as u128 > available {
            return Err(Error::InfeasibleSpec(format!(
                "{} distinct tuples requested for `{}` but only {n}^{arity} = {available} exist",
                spec.tuples_per_relation,
                sig.name(rel)
            )));
        }
        if spec.tuples_per_relation == 0 {
            tuples.push(Vec::new());
            continue;
        }
        let space = usize::try_from(available).map_err(|_| {
            Error::InfeasibleSpec(format!("{n}^{arity} tuples is too many to sample from"))
        })?;
        let mut codes = index::sample(&mut rng, space, spec.tuples_per_relation).into_vec();
        codes.sort_unstable();
        tuples.push(
            codes
                .into_iter()
                .map(|mut code| {
                    let mut t = vec![0; arity];
                    for slot in t.iter_mut().rev() {
                        *slot = code % n;
                        code /= n;
                    }
                    t
                })
                .collect(),
        );
    }
    Structure::new(sig.clone(), n, tuples)
}

/// Where the `opt` column comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Oracle {
    None,
    /// Exhaustive search on the instance itself, surjective for surjective
    /// modes.
    BruteForce,
    /// Exhaustive non-surjective search against another template whose
    /// optimum dominates the real one. The `opt` column is then an upper
    /// bound and ratios are lower bounds.
    Relaxation(Structure),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Experiment {
    pub specs: Vec<GenSpec>,
    pub modes: Vec<SolverConfig>,
    pub oracle: Oracle,
    /// Keep full assignments in the rows.
    pub keep_assignments: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialRow {
    pub instance_id: usize,
    /// Index into the experiment's mode list.
    pub config: usize,
    pub label: String,
    pub mode: Mode,
    pub value: Option<usize>,
    pub opt: Option<usize>,
    pub ratio: Option<Rational>,
    pub bound: Option<Rational>,
    pub seed: u64,
    pub wall_ms: f64,
    pub assignment: Option<Assignment>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModeSummary {
    pub label: String,
    pub rows: usize,
    pub errors: usize,
    pub min_ratio: Option<Rational>,
    pub mean_ratio: Option<BigRational>,
    /// Rows whose ratio falls below a positive worst-case bound.
    pub violations: usize,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ExperimentReport {
    pub rows: Vec<TrialRow>,
    pub summary: Vec<ModeSummary>,
}

/// Short column label for a configuration: the mode name plus flags.
pub fn config_label(config: &SolverConfig) -> String {
    let mut label = config.mode.name().to_string();
    if config.deterministic {
        label.push_str("+det");
    }
    if config.enumerate_all {
        label.push_str("+enum");
    }
    if config.constraint_anchors {
        label.push_str("+constraint-anchors");
    }
    label
}

/// Whether the configuration's recorded bound holds on every run rather than
/// in expectation.
pub fn bound_is_worst_case(config: &SolverConfig) -> bool {
    match config.mode {
        Mode::Exact | Mode::ExactSur | Mode::MinCut | Mode::Ptas => true,
        Mode::ApproxRandom | Mode::ApproxSeeded => config.deterministic,
        Mode::Approx2 => config.enumerate_all,
    }
}

fn oracle_value(
    oracle: &Oracle,
    instance: &Structure,
    template: &Structure,
    surjective: bool,
    cap: u64,
) -> Result<Option<usize>> {
    match oracle {
        Oracle::None => Ok(None),
        Oracle::BruteForce => brute_force_with_cap(instance, template, surjective, cap).map(|r| Some(r.value)),
        Oracle::Relaxation(relaxed) => {
            brute_force_with_cap(instance, relaxed, false, cap).map(|r| Some(r.value))
        }
    }
}

pub fn run_experiment(experiment: &Experiment) -> Result<ExperimentReport> {
    let mut rows = Vec::new();
    for (instance_id, spec) in experiment.specs.iter().enumerate() {
        let template = spec.template.resolve()?;
        let instance = gen_for(&template, spec)?;
        // Oracle values are shared between modes with the same surjectivity.
        let mut cached: [Option<std::result::Result<Option<usize>, String>>; 2] = [None, None];
        for (config_index, base) in experiment.modes.iter().enumerate() {
            let seed = trial_seed(base.seed, instance_id as u64);
            let config = base.clone().with_seed(seed);
            let mut row = TrialRow {
                instance_id,
                config: config_index,
                label: config_label(base),
                mode: config.mode,
                value: None,
                opt: None,
                ratio: None,
                bound: None,
                seed,
                wall_ms: 0.0,
                assignment: None,
                error: None,
            };
            let started = Instant::now();
            let outcome = solve(&instance, &template, &config);
            row.wall_ms = started.elapsed().as_secs_f64() * 1000.0;
            match outcome {
                Ok(report) => {
                    row.value = Some(report.value);
                    row.bound = report.guarantee.as_ref().and_then(|g| g.ratio);
                    if experiment.keep_assignments {
                        row.assignment = Some(report.assignment);
                    }
                }
                Err(e) => row.error = Some(e.to_string()),
            }
            if row.error.is_none() && experiment.oracle != Oracle::None {
                let slot = usize::from(config.mode.is_surjective());
                let opt = cached[slot]
                    .get_or_insert_with(|| {
                        oracle_value(
                            &experiment.oracle,
                            &instance,
                            &template,
                            config.mode.is_surjective(),
                            config.cap,
                        )
                        .map_err(|e| format!("oracle: {e}"))
                    })
                    .clone();
                match opt {
                    Ok(opt) => {
                        row.opt = opt;
                        if let (Some(value), Some(opt)) = (row.value, opt) {
                            row.ratio = Some(ratio_of(value, opt));
                        }
                    }
                    Err(e) => row.error = Some(e),
                }
            }
            rows.push(row);
        }
    }
    let summary = summarize(&experiment.modes, &rows);
    Ok(ExperimentReport { rows, summary })
}

fn summarize(modes: &[SolverConfig], rows: &[TrialRow]) -> Vec<ModeSummary> {
    modes
        .iter()
        .enumerate()
        .map(|(i, config)| {
            let mine: Vec<&TrialRow> = rows.iter().filter(|r| r.config == i).collect();
            let ratios: Vec<Rational> = mine.iter().filter_map(|r| r.ratio).collect();
            let mean_ratio = (!ratios.is_empty()).then(|| {
                let sum = ratios.iter().fold(BigRational::zero(), |acc, r| {
                    acc + BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
                });
                sum / BigRational::from_integer(BigInt::from(ratios.len()))
            });
            let violations = if bound_is_worst_case(config) {
                mine.iter()
                    .filter(|r| match (r.ratio, r.bound) {
                        (Some(ratio), Some(bound)) => bound > Rational::zero() && ratio < bound,
                        _ => false,
                    })
                    .count()
            } else {
                0
            };
            ModeSummary {
                label: config_label(config),
                rows: mine.len(),
                errors: mine.iter().filter(|r| r.error.is_some()).count(),
                min_ratio: ratios.iter().min().copied(),
                mean_ratio,
                violations,
            }
        })
        .collect()
}

/// Re-evaluates every stored assignment and compares it with the row value.
pub fn verify_rows(experiment: &Experiment, report: &ExperimentReport) -> Result<()> {
    for row in &report.rows {
        let (Some(h), Some(value)) = (&row.assignment, row.value) else {
            continue;
        };
        let spec = &experiment.specs[row.instance_id];
        let template = spec.template.resolve()?;
        let instance = gen_for(&template, spec)?;
        let eval = evaluate(&instance, &template, h)?;
        if eval.satisfied != value {
            return Err(Error::InvalidAssignment(format!(
                "instance {} mode {}: stored value {value}, assignment satisfies {}",
                row.instance_id, row.label, eval.satisfied
            )));
        }
    }
    Ok(())
}

fn opt_text<T: ToString>(v: Option<T>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

fn ratio_text(v: Option<Rational>) -> String {
    v.map(|v| to_decimal(&v, 6)).unwrap_or_default()
}

/// Writes the rows and the per-mode `summary-min` / `summary-mean` rows as CSV.
pub fn write_csv<W: io::Write>(report: &ExperimentReport, out: W) -> Result<()> {
    let csv_err = |e: csv::Error| Error::Io(e.to_string());
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["instance_id", "mode", "value", "opt", "ratio", "bound", "seed", "wall_ms"])
        .map_err(csv_err)?;
    for row in &report.rows {
        w.write_record([
            row.instance_id.to_string(),
            row.label.clone(),
            opt_text(row.value),
            opt_text(row.opt),
            ratio_text(row.ratio),
            ratio_text(row.bound),
            row.seed.to_string(),
            format!("{:.3}", row.wall_ms),
        ])
        .map_err(csv_err)?;
    }
    for s in &report.summary {
        let mean = s.mean_ratio.as_ref().map(|m| to_decimal(m, 6)).unwrap_or_default();
        for (id, ratio) in [("summary-min", ratio_text(s.min_ratio)), ("summary-mean", mean)] {
            w.write_record([id, &s.label, "", "", &ratio, "", "", ""])
                .map_err(csv_err)?;
        }
    }
    w.flush()?;
    Ok(())
}

/// `value / opt`, taken as 1 when the optimum is 0.
pub fn ratio_of(value: usize, opt: usize) -> Rational {
    if opt == 0 {
        Rational::one()
    } else {
        Rational::new(value as i128, opt as i128)
    }
}
