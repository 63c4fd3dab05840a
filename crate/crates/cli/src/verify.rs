//! The `verify` command: every algebraic check in one report bundle.

use desitter_core::algebra::{
    check_family, completion_deficit_with_margin, fock_structure_table, restricted_rank, AlgebraReport,
    CompletionDeficit, GeneratorSet, S0Form, StructureTable, CLOSURE_TOLERANCE, HERMITICITY_TOLERANCE,
    OUT_OF_SPAN_THRESHOLD,
};
use desitter_core::five::{
    check_poincare, differential_deviation, differential_operator, exponentiate, finite_difference_deviation,
    five_structure_table, generator_matrix, preserve_metric_check, translation_from_generators, translation_matrix,
    PoincareReport, PoincareSet, CandidateRelation,
};
use desitter_core::fock::canonical_residual;
use desitter_core::generator::{Family, Generator};
use serde::Serialize;

use crate::config::{Format, RunConfig};
use crate::output::{write_csv, write_json, SCHEMA};
use crate::Failure;

pub const DIFFERENTIAL_TOLERANCE: f64 = 1e-14;
pub const FINITE_DIFFERENCE_TOLERANCE: f64 = 1e-6;
pub const METRIC_TOLERANCE: f64 = 1e-10;
pub const REALITY_TOLERANCE: f64 = 1e-13;
pub const STRUCTURE_TOLERANCE: f64 = 1e-10;
pub const METRIC_ANGLES: [f64; 4] = [0.5, -0.5, 2.0, -2.0];
const SAMPLE_POINT: [f64; 5] = [0.37, -1.21, 0.88, 0.52, -0.64];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Bound {
    /// The value must stay below the tolerance.
    Below,
    /// The value must exceed the threshold.
    Above,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub status: Status,
    pub value: Option<f64>,
    pub bound: Bound,
    pub tolerance: f64,
    pub detail: String,
}

impl Check {
    fn below(name: &'static str, value: f64, tolerance: f64, detail: impl Into<String>) -> Self {
        Check {
            name,
            status: if value < tolerance { Status::Pass } else { Status::Fail },
            value: Some(value),
            bound: Bound::Below,
            tolerance,
            detail: detail.into(),
        }
    }

    fn above(name: &'static str, value: f64, threshold: f64, detail: impl Into<String>) -> Self {
        Check {
            name,
            status: if value > threshold { Status::Pass } else { Status::Fail },
            value: Some(value),
            bound: Bound::Above,
            tolerance: threshold,
            detail: detail.into(),
        }
    }

    fn skipped(name: &'static str, bound: Bound, tolerance: f64, detail: impl Into<String>) -> Self {
        Check {
            name,
            status: Status::Skipped,
            value: None,
            bound,
            tolerance,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Coverage {
    pub full: bool,
    /// Rank of the ten generators restricted to the validity subspace.
    pub restricted_rank: usize,
    pub note: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct StructureComparison {
    pub max_deviation: f64,
    pub fock: StructureTable,
    pub five: StructureTable,
}

#[derive(Debug, Clone, Serialize)]
pub struct PositiveSumS0 {
    pub form: &'static str,
    pub max_residual: f64,
    pub failing: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TranslationSign {
    pub relation: &'static str,
    /// `max |exp(-i(x'P1+y'P2+z'P3+t'P0)) - T(x',y',z',t')|` at unit offsets.
    pub residual: f64,
    /// The same with the time offset reversed.
    pub residual_reversed_time: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Discrepancies {
    pub s0_positive_sum: PositiveSumS0,
    pub candidate_translation_relations: Vec<CandidateRelation>,
    pub translation_exponential: TranslationSign,
}

#[derive(Debug, Clone, Serialize)]
pub struct Bundle {
    pub schema: u32,
    pub command: &'static str,
    pub n_max: usize,
    pub margin: usize,
    pub passed: bool,
    /// Largest residual over all commutation relations that are checked.
    pub max_residual: f64,
    pub coverage: Coverage,
    pub checks: Vec<Check>,
    pub algebra: Vec<AlgebraReport>,
    pub poincare: PoincareReport,
    pub completion_deficit: Option<CompletionDeficit>,
    pub structure: Option<StructureComparison>,
    pub discrepancies: Discrepancies,
}

fn core_error(e: desitter_core::Error) -> Failure {
    Failure::Config(e.to_string())
}

pub fn bundle(config: &RunConfig) -> Result<Bundle, Failure> {
    let space = config.space;
    let margin = config.margin;
    let gens = GeneratorSet::build(space);
    let mut checks = Vec::new();

    checks.push(Check::below(
        "canonical_commutators",
        canonical_residual(space).map_err(core_error)?,
        CLOSURE_TOLERANCE,
        "[a_i, a_j†] = δ_ij and [a_i, a_j] = 0 on n1, n2 <= n_max - 1",
    ));
    checks.push(Check::below(
        "hermiticity",
        gens.hermiticity_residual(),
        HERMITICITY_TOLERANCE,
        "max |G - G†| over the ten generators",
    ));

    let families = [Family::Lie11, Family::Lie22, Family::Lie33, Family::Su11, Family::Su2];
    let algebra: Vec<AlgebraReport> = families
        .iter()
        .map(|&f| check_family(&gens, f, margin))
        .collect::<Result<_, _>>()
        .map_err(core_error)?;
    for report in &algebra {
        let name = match report.family {
            Family::Lie11 => "lie11",
            Family::Lie22 => "lie22",
            Family::Lie33 => "lie33",
            Family::Su11 => "su11",
            Family::Su2 => "su2",
            Family::Poincare => "poincare",
        };
        let failing: Vec<&str> = report.failures(CLOSURE_TOLERANCE).iter().map(|e| e.lhs.as_str()).collect();
        let detail = if failing.is_empty() {
            format!("{} relations", report.entries.len())
        } else {
            format!("failing: {}", failing.join(" "))
        };
        checks.push(Check::below(name, report.max_residual, CLOSURE_TOLERANCE, detail));
    }

    let rank = restricted_rank(&gens, margin).map_err(core_error)?;
    let full = rank == Generator::ALL.len();
    let coverage = Coverage {
        full,
        restricted_rank: rank,
        note: (!full).then(|| {
            format!(
                "the ten generators span only {rank} dimensions on n1, n2 <= {}; \
                 span-closure and structure-constant comparisons are skipped",
                space.n_max() - margin
            )
        }),
    };

    let completion_deficit = if full {
        let deficit = completion_deficit_with_margin(&gens, margin).map_err(core_error)?;
        checks.push(Check::above(
            "six_set_leaves_span",
            deficit.six.max_residual,
            OUT_OF_SPAN_THRESHOLD,
            format!("leaving: {}", deficit.leaving.join(" ")),
        ));
        checks.push(Check::below(
            "ten_set_closes",
            deficit.ten.max_residual,
            CLOSURE_TOLERANCE,
            "out-of-span residual of all 45 commutators",
        ));
        Some(deficit)
    } else {
        let why = "reduced coverage";
        checks.push(Check::skipped("six_set_leaves_span", Bound::Above, OUT_OF_SPAN_THRESHOLD, why));
        checks.push(Check::skipped("ten_set_closes", Bound::Below, CLOSURE_TOLERANCE, why));
        None
    };

    let differential = Generator::ALL.iter().map(|&g| differential_deviation(g)).fold(0.0, f64::max);
    checks.push(Check::below(
        "matrix_differential",
        differential,
        DIFFERENTIAL_TOLERANCE,
        "induced linear map of each differential operator vs its matrix",
    ));
    let finite = Generator::ALL
        .iter()
        .map(|&g| finite_difference_deviation(&differential_operator(g), &generator_matrix(g), &SAMPLE_POINT))
        .fold(0.0, f64::max);
    checks.push(Check::below(
        "finite_difference",
        finite,
        FINITE_DIFFERENCE_TOLERANCE,
        "central differences of a smooth test function at a fixed point",
    ));
    let metric = Generator::ALL
        .iter()
        .map(|&g| preserve_metric_check(&generator_matrix(g), &METRIC_ANGLES))
        .fold(0.0, f64::max);
    checks.push(Check::below(
        "metric_preservation",
        metric,
        METRIC_TOLERANCE,
        "max |Mᵀ η M - η| for M = exp(iθG), θ in {±0.5, ±2}",
    ));
    let reality = Generator::ALL
        .iter()
        .flat_map(|&g| METRIC_ANGLES.iter().map(move |&th| exponentiate(&generator_matrix(g), th).max_imag()))
        .fold(0.0, f64::max);
    checks.push(Check::below(
        "real_group_elements",
        reality,
        REALITY_TOLERANCE,
        "max |Im exp(iθG)|",
    ));

    let structure = if full {
        let fock = fock_structure_table(&gens, margin).map_err(core_error)?;
        let five = five_structure_table();
        let max_deviation = fock.max_deviation(&five);
        checks.push(Check::below(
            "representation_independence",
            max_deviation,
            STRUCTURE_TOLERANCE,
            "structure constants of the Fock and 5×5 realizations",
        ));
        Some(StructureComparison { max_deviation, fock, five })
    } else {
        checks.push(Check::skipped(
            "representation_independence",
            Bound::Below,
            STRUCTURE_TOLERANCE,
            "reduced coverage",
        ));
        None
    };

    let poincare = check_poincare(&PoincareSet::standard());
    checks.push(Check::below(
        "poincare",
        poincare.report.max_residual,
        CLOSURE_TOLERANCE,
        "45 commutators of J, K, P, P0 against the matrix-computed table",
    ));

    let positive = GeneratorSet::with_s0_form(space, S0Form::PositiveSum);
    let positive_report = check_family(&positive, Family::Lie33, margin).map_err(core_error)?;
    let discrepancies = Discrepancies {
        s0_positive_sum: PositiveSumS0 {
            form: "S0 = (a1†a1 + a2a2†)/2",
            max_residual: positive_report.max_residual,
            failing: positive_report
                .failures(CLOSURE_TOLERANCE)
                .iter()
                .map(|e| e.lhs.clone())
                .collect(),
        },
        candidate_translation_relations: poincare.candidates.clone(),
        translation_exponential: TranslationSign {
            relation: "exp(-i(x'P1 + y'P2 + z'P3 + t'P0)) = T(x', y', z', t')",
            residual: translation_from_generators(1.0, 1.0, 1.0, 1.0)
                .max_abs_diff(&translation_matrix(1.0, 1.0, 1.0, 1.0)),
            residual_reversed_time: translation_from_generators(1.0, 1.0, 1.0, 1.0)
                .max_abs_diff(&translation_matrix(1.0, 1.0, 1.0, -1.0)),
        },
    };

    let max_residual = algebra
        .iter()
        .map(|r| r.max_residual)
        .chain([poincare.report.max_residual])
        .fold(0.0, f64::max);
    let passed = checks.iter().all(|c| c.status != Status::Fail);
    Ok(Bundle {
        schema: SCHEMA,
        command: config.command.name(),
        n_max: space.n_max(),
        margin,
        passed,
        max_residual,
        coverage,
        checks,
        algebra,
        poincare,
        completion_deficit,
        structure,
        discrepancies,
    })
}

#[derive(Serialize)]
struct CheckRow<'a> {
    name: &'a str,
    status: Status,
    value: Option<f64>,
    bound: Bound,
    tolerance: f64,
}

pub fn run(config: &RunConfig) -> Result<(), Failure> {
    let b = bundle(config)?;
    for c in &b.checks {
        let value = c.value.map_or_else(|| "-".to_string(), |v| format!("{v:.3e}"));
        let status = match c.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Skipped => "skipped",
        };
        eprintln!("{status:>7}  {:<28} {value}", c.name);
    }
    match config.format {
        Format::Json => write_json(config, &b)?,
        Format::Csv => {
            let rows: Vec<CheckRow> = b
                .checks
                .iter()
                .map(|c| CheckRow {
                    name: c.name,
                    status: c.status,
                    value: c.value,
                    bound: c.bound,
                    tolerance: c.tolerance,
                })
                .collect();
            write_csv(config, &rows)?
        }
    }
    if b.passed {
        Ok(())
    } else {
        let failed: Vec<&str> = b.checks.iter().filter(|c| c.status == Status::Fail).map(|c| c.name).collect();
        Err(Failure::Check(format!("checks failed: {}", failed.join(", "))))
    }
}
