//! Contraction of O(3,2) to the inhomogeneous Lorentz group.
//!
//! With `C(ε) = diag(1, 1, 1, 1, ε)` the scaled conjugate `ε C G C⁻¹` of
//! `Q_i` and `S0` tends to the translation generators `P_i` and `P0` as
//! `ε → 0`, while `J_i` and `K_i` commute with `C` and are left alone. The
//! deviation from the target is a single entry of size exactly `ε²`.

use std::fmt;
use std::io::Write;

use nalgebra::{Matrix5, Vector5};
use num_complex::Complex64 as C64;
use serde::Serialize;

use crate::algebra::{pair_label, AlgebraReport, RelationEntry};
use crate::five::{generator_matrix, poincare_matrix, poincare_rhs, FiveMatrix, PoincareGenerator, PoincareSet};
use crate::generator::{Family, Generator};
use crate::{Error, Result};

/// Scan used when no ε values are given.
pub const DEFAULT_EPSILONS: [f64; 3] = [1e-1, 1e-2, 1e-3];

/// Accepted distance of a fitted log-log slope from 2.
pub const SLOPE_TOLERANCE: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct ContractionParameter(f64);

impl ContractionParameter {
    pub fn new(epsilon: f64) -> Result<Self> {
        if epsilon > 0.0 && epsilon <= 1.0 {
            Ok(ContractionParameter(epsilon))
        } else {
            Err(Error::InvalidEpsilon(epsilon))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

fn diag_with_last(last: f64) -> Matrix5<C64> {
    Matrix5::from_diagonal(&Vector5::new(1.0, 1.0, 1.0, 1.0, last).map(|v| C64::new(v, 0.0)))
}

/// `C(ε) = diag(1, 1, 1, 1, ε)`.
pub fn c_matrix(eps: ContractionParameter) -> FiveMatrix {
    FiveMatrix::new(diag_with_last(eps.0), format!("C({})", eps.0))
}

/// `C(ε)⁻¹ = diag(1, 1, 1, 1, 1/ε)`.
pub fn c_inverse(eps: ContractionParameter) -> FiveMatrix {
    FiveMatrix::new(diag_with_last(1.0 / eps.0), format!("C({})^-1", eps.0))
}

/// Generator name after contraction: `cQ1`, …, `cS0`; rotations and boosts
/// keep their names.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Contracted(pub Generator);

impl fmt::Display for Contracted {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_lorentz() {
            write!(f, "{}", self.0)
        } else {
            write!(f, "c{}", self.0)
        }
    }
}

/// `ε C(ε) G C(ε)⁻¹`.
pub fn contract_generator(g: &FiveMatrix, eps: ContractionParameter) -> FiveMatrix {
    let m = c_matrix(eps).matrix * g.matrix * c_inverse(eps).matrix * C64::new(eps.0, 0.0);
    FiveMatrix::new(m, format!("c{}", g.label))
}

/// Contracted form of one of the ten generators. Rotations and boosts
/// commute with `C(ε)` and are returned as they are.
pub fn contract(g: Generator, eps: ContractionParameter) -> FiveMatrix {
    let m = generator_matrix(g);
    if g.is_lorentz() {
        m
    } else {
        let mut c = contract_generator(&m, eps);
        c.label = Contracted(g).to_string();
        c
    }
}

/// Matrix the contracted generator approaches: `P_i` for `Q_i`, `P0`
/// for `S0`, and the generator itself for rotations and boosts.
pub fn contraction_target(g: Generator) -> FiveMatrix {
    poincare_matrix(PoincareGenerator::target_of(g))
}

/// `‖contract(g, ε) - target‖_maxabs`.
pub fn deviation(g: Generator, eps: ContractionParameter) -> f64 {
    contract(g, eps).max_abs_diff(&contraction_target(g))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CommuteEntry {
    pub generator: Generator,
    /// `max |C G - G C|`.
    pub residual: f64,
    /// Whether the generator is expected to commute with `C(ε)`.
    pub expected_zero: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CommuteReport {
    pub epsilon: ContractionParameter,
    pub entries: Vec<CommuteEntry>,
    /// Largest residual among the generators expected to commute.
    pub max_residual: f64,
}

/// `[C(ε), G]` for all ten generators; rotations and boosts commute.
pub fn commute_with_c_check(eps: ContractionParameter) -> CommuteReport {
    let c = c_matrix(eps);
    let entries: Vec<CommuteEntry> = Generator::ALL
        .iter()
        .map(|&g| CommuteEntry {
            generator: g,
            residual: c.commutator(&generator_matrix(g)).max_abs(),
            expected_zero: g.is_lorentz(),
        })
        .collect();
    let max_residual = entries
        .iter()
        .filter(|e| e.expected_zero)
        .map(|e| e.residual)
        .fold(0.0, f64::max);
    CommuteReport {
        epsilon: eps,
        entries,
        max_residual,
    }
}

/// The ten contracted matrices in [`Generator::ALL`] order.
pub fn contracted_set(eps: ContractionParameter) -> Vec<FiveMatrix> {
    Generator::ALL.iter().map(|&g| contract(g, eps)).collect()
}

/// Checks the Poincaré relations, as realised by the generator matrices, on the
/// contracted set. Exact relations stay exact for every ε; relations that
/// only hold in the limit carry residuals of order ε².
pub fn contracted_algebra(eps: ContractionParameter) -> AlgebraReport {
    let set = contracted_set(eps);
    let reference = PoincareSet::standard();
    let mut entries = Vec::with_capacity(45);
    for (n, &a) in Generator::ALL.iter().enumerate() {
        for &b in &Generator::ALL[n + 1..] {
            let rhs = poincare_rhs(&reference, PoincareGenerator::target_of(a), PoincareGenerator::target_of(b))
                .map_basis(PoincareGenerator::source);
            let expected = rhs
                .terms()
                .iter()
                .fold(Matrix5::zeros(), |acc, &(g, c)| acc + set[g.index()].matrix * c);
            let lhs = set[a.index()].commutator(&set[b.index()]);
            entries.push(RelationEntry {
                lhs: pair_label(Contracted(a), Contracted(b)),
                rhs: rhs.map_basis(Contracted).to_string(),
                residual: lhs.max_abs_diff(&FiveMatrix::new(expected, "")),
            });
        }
    }
    AlgebraReport::new(Family::Poincare, None, None, entries)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ContractedGenerator {
    pub generator: String,
    pub matrix: FiveMatrix,
    pub deviation: f64,
}

/// Everything computed at one value of ε.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ContractionResult {
    pub epsilon: ContractionParameter,
    pub generators: Vec<ContractedGenerator>,
    pub algebra: AlgebraReport,
}

/// Contracts `Q1, Q2, Q3, S0` and checks the contracted algebra.
pub fn contract_all(eps: ContractionParameter) -> ContractionResult {
    use Generator::*;
    let generators = [Q1, Q2, Q3, S0]
        .iter()
        .map(|&g| ContractedGenerator {
            generator: Contracted(g).to_string(),
            matrix: contract(g, eps),
            deviation: deviation(g, eps),
        })
        .collect();
    ContractionResult {
        epsilon: eps,
        generators,
        algebra: contracted_algebra(eps),
    }
}

/// Label of the scan row holding the largest residual of the contracted
/// algebra.
pub const ALGEBRA_ROW: &str = "algebra";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanRow {
    pub epsilon: f64,
    pub generator: String,
    pub deviation: f64,
}

/// Deviations from the translation targets for each ε, one row per
/// contracted generator plus an [`ALGEBRA_ROW`] row.
pub fn convergence_scan(eps_list: &[f64]) -> Result<Vec<ScanRow>> {
    let mut rows = Vec::new();
    for &e in eps_list {
        let result = contract_all(ContractionParameter::new(e)?);
        for g in &result.generators {
            rows.push(ScanRow {
                epsilon: e,
                generator: g.generator.clone(),
                deviation: g.deviation,
            });
        }
        rows.push(ScanRow {
            epsilon: e,
            generator: ALGEBRA_ROW.to_string(),
            deviation: result.algebra.max_residual,
        });
    }
    Ok(rows)
}

/// Least-squares slope of `log y` against `log x`; `None` with fewer than
/// two usable points or when all `x` coincide.
pub fn loglog_slope(points: &[(f64, f64)]) -> Option<f64> {
    let logs: Vec<(f64, f64)> = points
        .iter()
        .filter(|(x, y)| *x > 0.0 && *y > 0.0)
        .map(|(x, y)| (x.ln(), y.ln()))
        .collect();
    if logs.len() < 2 {
        return None;
    }
    let n = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SlopeFit {
    pub generator: String,
    pub slope: Option<f64>,
}

/// Log-log slope per generator, in order of first appearance.
pub fn fit_slopes(rows: &[ScanRow]) -> Vec<SlopeFit> {
    let mut names: Vec<&str> = Vec::new();
    for r in rows {
        if !names.contains(&r.generator.as_str()) {
            names.push(&r.generator);
        }
    }
    names
        .into_iter()
        .map(|name| {
            let points: Vec<(f64, f64)> = rows
                .iter()
                .filter(|r| r.generator == name)
                .map(|r| (r.epsilon, r.deviation))
                .collect();
            SlopeFit {
                generator: name.to_string(),
                slope: loglog_slope(&points),
            }
        })
        .collect()
}

/// Writes `epsilon,generator,deviation` rows.
pub fn write_scan_csv<W: Write>(rows: &[ScanRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}
