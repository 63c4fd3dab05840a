//! Five-dimensional representation on `(x, y, z, t, s)`.
//!
//! Rows and columns are ordered `(x, y, z, t, s)` and documented 1-indexed.
//! The quadratic form `x² + y² + z² - t² - s²` is preserved by `exp(iθG)` for
//! each of the ten O(3,2) generators. For translations the fifth slot holds
//! the affine coordinate `1` instead of `s`.
//!
//! Each generator also has a first-order differential operator
//! `D = Σ c_md x_m ∂_d`. It acts on functions contragrediently,
//! `D f(v) = -(G v)·∇f(v)`, so the generator matrix is recovered exactly as
//! `G_dm = -c_md` by applying `D` to the coordinate functions.

use std::fmt;

use nalgebra::{DMatrix, Matrix5, Vector5};
use num_complex::Complex64 as C64;
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::algebra::{pair_label, AlgebraReport, RelationEntry, StructureTable};
use crate::combination::Combination;
use crate::generator::{commutator_rhs, Family, Generator};
use crate::linalg::{self, project};
use crate::{Result, I};

/// Metric signature `(+, +, +, -, -)`.
pub const METRIC: [f64; 5] = [1.0, 1.0, 1.0, -1.0, -1.0];

pub const COORDINATE_NAMES: [&str; 5] = ["x", "y", "z", "t", "s"];

/// A real point in `(x, y, z, t, s)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FiveVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub t: f64,
    pub s: f64,
}

impl FiveVector {
    pub fn new(x: f64, y: f64, z: f64, t: f64, s: f64) -> Self {
        FiveVector { x, y, z, t, s }
    }

    /// Affine point `(x, y, z, t, 1)` for use with translations.
    pub fn affine(x: f64, y: f64, z: f64, t: f64) -> Self {
        FiveVector::new(x, y, z, t, 1.0)
    }

    pub fn to_array(self) -> [f64; 5] {
        [self.x, self.y, self.z, self.t, self.s]
    }

    pub fn from_array(a: [f64; 5]) -> Self {
        FiveVector::new(a[0], a[1], a[2], a[3], a[4])
    }

    pub fn to_vector(self) -> Vector5<f64> {
        Vector5::from(self.to_array())
    }

    /// `x² + y² + z² - t² - s²`.
    pub fn quadratic_form(self) -> f64 {
        self.to_array()
            .iter()
            .zip(METRIC)
            .map(|(v, g)| g * v * v)
            .sum()
    }
}

/// Complex 5×5 generator or group element.
#[derive(Debug, Clone, PartialEq)]
pub struct FiveMatrix {
    pub matrix: Matrix5<C64>,
    pub label: String,
}

impl FiveMatrix {
    pub fn new(matrix: Matrix5<C64>, label: impl Into<String>) -> Self {
        FiveMatrix {
            matrix,
            label: label.into(),
        }
    }

    pub fn identity() -> Self {
        FiveMatrix::new(Matrix5::identity(), "1")
    }

    /// Matrix with the given `(row, col, value)` entries, 1-indexed.
    pub fn from_entries(entries: &[(usize, usize, C64)], label: impl Into<String>) -> Self {
        let mut m = Matrix5::zeros();
        for &(r, c, v) in entries {
            m[(r - 1, c - 1)] = v;
        }
        FiveMatrix::new(m, label)
    }

    /// Entry at 1-indexed `(row, col)`.
    pub fn at(&self, row: usize, col: usize) -> C64 {
        self.matrix[(row - 1, col - 1)]
    }

    pub fn commutator(&self, other: &FiveMatrix) -> FiveMatrix {
        FiveMatrix::new(
            self.matrix * other.matrix - other.matrix * self.matrix,
            format!("[{},{}]", self.label, other.label),
        )
    }

    pub fn max_abs(&self) -> f64 {
        self.matrix.iter().fold(0.0, |m, z| m.max(z.norm()))
    }

    pub fn max_abs_diff(&self, other: &FiveMatrix) -> f64 {
        (self.matrix - other.matrix).iter().fold(0.0, |m, z| m.max(z.norm()))
    }

    pub fn max_imag(&self) -> f64 {
        self.matrix.iter().fold(0.0, |m, z| m.max(z.im.abs()))
    }

    pub fn max_real(&self) -> f64 {
        self.matrix.iter().fold(0.0, |m, z| m.max(z.re.abs()))
    }

    pub fn real_part(&self) -> Matrix5<f64> {
        self.matrix.map(|z| z.re)
    }

    /// Applies the real part to a point; meaningful for group elements, whose
    /// imaginary parts vanish.
    pub fn apply(&self, v: &FiveVector) -> FiveVector {
        let out = self.real_part() * v.to_vector();
        FiveVector::new(out[0], out[1], out[2], out[3], out[4])
    }

    pub fn to_dmatrix(&self) -> DMatrix<C64> {
        DMatrix::from_iterator(5, 5, self.matrix.iter().cloned())
    }

    pub fn from_dmatrix(m: &DMatrix<C64>, label: impl Into<String>) -> Self {
        assert_eq!(m.shape(), (5, 5));
        FiveMatrix::new(Matrix5::from_iterator(m.iter().cloned()), label)
    }

    /// Row-major `[re, im]` pairs.
    pub fn rows(&self) -> Vec<Vec<[f64; 2]>> {
        (0..5)
            .map(|r| (0..5).map(|c| [self.matrix[(r, c)].re, self.matrix[(r, c)].im]).collect())
            .collect()
    }
}

impl Serialize for FiveMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("FiveMatrix", 2)?;
        st.serialize_field("label", &self.label)?;
        st.serialize_field("matrix", &self.rows())?;
        st.end()
    }
}

fn imag(v: f64) -> C64 {
    C64::new(0.0, v)
}

/// Matrix of an O(3,2) generator.
pub fn generator_matrix(g: Generator) -> FiveMatrix {
    use Generator::*;
    let e: &[(usize, usize, C64)] = match g {
        J1 => &[(2, 3, imag(-1.0)), (3, 2, imag(1.0))],
        J2 => &[(1, 3, imag(1.0)), (3, 1, imag(-1.0))],
        J3 => &[(1, 2, imag(-1.0)), (2, 1, imag(1.0))],
        K1 => &[(1, 4, imag(1.0)), (4, 1, imag(1.0))],
        K2 => &[(2, 4, imag(1.0)), (4, 2, imag(1.0))],
        K3 => &[(3, 4, imag(1.0)), (4, 3, imag(1.0))],
        Q1 => &[(1, 5, imag(1.0)), (5, 1, imag(1.0))],
        Q2 => &[(2, 5, imag(1.0)), (5, 2, imag(1.0))],
        Q3 => &[(3, 5, imag(1.0)), (5, 3, imag(1.0))],
        S0 => &[(4, 5, imag(-1.0)), (5, 4, imag(1.0))],
    };
    FiveMatrix::from_entries(e, g.name())
}

pub fn generator_matrix_by_name(name: &str) -> Result<FiveMatrix> {
    Ok(generator_matrix(name.parse()?))
}

/// Generators of the inhomogeneous Lorentz algebra in the affine 5×5 form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum PoincareGenerator {
    J1,
    J2,
    J3,
    K1,
    K2,
    K3,
    P1,
    P2,
    P3,
    P0,
}

impl PoincareGenerator {
    pub const ALL: [PoincareGenerator; 10] = {
        use PoincareGenerator::*;
        [J1, J2, J3, K1, K2, K3, P1, P2, P3, P0]
    };
    pub const TRANSLATIONS: [PoincareGenerator; 4] = {
        use PoincareGenerator::*;
        [P1, P2, P3, P0]
    };

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        use PoincareGenerator::*;
        match self {
            J1 => "J1",
            J2 => "J2",
            J3 => "J3",
            K1 => "K1",
            K2 => "K2",
            K3 => "K3",
            P1 => "P1",
            P2 => "P2",
            P3 => "P3",
            P0 => "P0",
        }
    }

    /// The O(3,2) generator this one comes from under contraction
    /// (`Q_i → P_i`, `S0 → P0`, rotations and boosts unchanged).
    pub fn source(self) -> Generator {
        use PoincareGenerator::*;
        match self {
            J1 => Generator::J1,
            J2 => Generator::J2,
            J3 => Generator::J3,
            K1 => Generator::K1,
            K2 => Generator::K2,
            K3 => Generator::K3,
            P1 => Generator::Q1,
            P2 => Generator::Q2,
            P3 => Generator::Q3,
            P0 => Generator::S0,
        }
    }

    /// Inverse of [`source`](Self::source).
    pub fn target_of(g: Generator) -> PoincareGenerator {
        PoincareGenerator::ALL[g.index()]
    }

    pub fn is_translation(self) -> bool {
        self.index() >= 6
    }
}

impl fmt::Display for PoincareGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Matrix of a Poincaré generator; translations have a single entry in
/// column 5.
pub fn poincare_matrix(p: PoincareGenerator) -> FiveMatrix {
    use PoincareGenerator::*;
    match p {
        P1 => FiveMatrix::from_entries(&[(1, 5, imag(1.0))], "P1"),
        P2 => FiveMatrix::from_entries(&[(2, 5, imag(1.0))], "P2"),
        P3 => FiveMatrix::from_entries(&[(3, 5, imag(1.0))], "P3"),
        P0 => FiveMatrix::from_entries(&[(4, 5, imag(-1.0))], "P0"),
        other => generator_matrix(other.source()),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PoincareSet {
    pub j: [FiveMatrix; 3],
    pub k: [FiveMatrix; 3],
    /// `P1, P2, P3, P0`.
    pub p: [FiveMatrix; 4],
}

impl PoincareSet {
    pub fn standard() -> Self {
        use PoincareGenerator::*;
        PoincareSet {
            j: [J1, J2, J3].map(poincare_matrix),
            k: [K1, K2, K3].map(poincare_matrix),
            p: [P1, P2, P3, P0].map(poincare_matrix),
        }
    }

    pub fn get(&self, g: PoincareGenerator) -> &FiveMatrix {
        let i = g.index();
        match i {
            0..=2 => &self.j[i],
            3..=5 => &self.k[i - 3],
            _ => &self.p[i - 6],
        }
    }
}

/// One term `coefficient · x_multiplier · ∂/∂x_derivative`; coordinate slots
/// are 0-based, slot 4 being `s` (or the affine `1` for translations).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiffTerm {
    pub coefficient: C64,
    pub multiplier: usize,
    pub derivative: usize,
}

/// First-order differential operator with linear coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct DifferentialOperator {
    pub label: String,
    pub terms: Vec<DiffTerm>,
}

// Coordinate slots.
const X: usize = 0;
const Y: usize = 1;
const Z: usize = 2;
const T: usize = 3;
const S: usize = 4;
const UNIT: usize = 4;

/// `-i (a ∂_b + sign · c ∂_d)` style operators.
fn op(label: &str, scale: C64, terms: &[(f64, usize, usize)]) -> DifferentialOperator {
    DifferentialOperator {
        label: label.to_string(),
        terms: terms
            .iter()
            .map(|&(c, m, d)| DiffTerm {
                coefficient: scale * c,
                multiplier: m,
                derivative: d,
            })
            .collect(),
    }
}

/// Differential operator of an O(3,2) generator, e.g. `J1 = -i(y ∂z - z ∂y)`.
pub fn differential_operator(g: Generator) -> DifferentialOperator {
    use Generator::*;
    let mi = -I;
    match g {
        J1 => op("J1", mi, &[(1.0, Y, Z), (-1.0, Z, Y)]),
        J2 => op("J2", mi, &[(1.0, Z, X), (-1.0, X, Z)]),
        J3 => op("J3", mi, &[(1.0, X, Y), (-1.0, Y, X)]),
        K1 => op("K1", mi, &[(1.0, X, T), (1.0, T, X)]),
        K2 => op("K2", mi, &[(1.0, Y, T), (1.0, T, Y)]),
        K3 => op("K3", mi, &[(1.0, Z, T), (1.0, T, Z)]),
        Q1 => op("Q1", mi, &[(1.0, X, S), (1.0, S, X)]),
        Q2 => op("Q2", mi, &[(1.0, Y, S), (1.0, S, Y)]),
        Q3 => op("Q3", mi, &[(1.0, Z, S), (1.0, S, Z)]),
        S0 => op("S0", mi, &[(1.0, T, S), (-1.0, S, T)]),
    }
}

/// Differential operator of a Poincaré generator: `P_i = -i ∂_i`, `P0 = i ∂_t`.
pub fn poincare_differential(p: PoincareGenerator) -> DifferentialOperator {
    use PoincareGenerator::*;
    match p {
        P1 => op("P1", -I, &[(1.0, UNIT, X)]),
        P2 => op("P2", -I, &[(1.0, UNIT, Y)]),
        P3 => op("P3", -I, &[(1.0, UNIT, Z)]),
        P0 => op("P0", I, &[(1.0, UNIT, T)]),
        other => differential_operator(other.source()),
    }
}

impl DifferentialOperator {
    /// `(D x_k)(p)` for each coordinate function `x_k`.
    pub fn on_coordinates(&self, point: &[f64; 5]) -> [C64; 5] {
        let mut out = [C64::new(0.0, 0.0); 5];
        for t in &self.terms {
            // ∂_d x_k = δ_dk
            out[t.derivative] += t.coefficient * point[t.multiplier];
        }
        out
    }

    /// The vector `-(D x_k)(p)`, which equals `G p` for the generator `G`.
    pub fn action(&self, point: &[f64; 5]) -> [C64; 5] {
        self.on_coordinates(point).map(|z| -z)
    }

    /// Linear map induced on coordinates, column `m` being the action at the
    /// unit point `e_m`.
    pub fn induced_matrix(&self) -> FiveMatrix {
        let mut m = Matrix5::zeros();
        for col in 0..5 {
            let mut e = [0.0; 5];
            e[col] = 1.0;
            for (row, v) in self.action(&e).into_iter().enumerate() {
                m[(row, col)] = v;
            }
        }
        FiveMatrix::new(m, self.label.clone())
    }

    /// `D f(p)` with central differences for the partial derivatives.
    pub fn apply_numerically(&self, f: impl Fn(&[f64; 5]) -> f64, point: &[f64; 5], step: f64) -> C64 {
        self.terms
            .iter()
            .map(|t| {
                let mut fwd = *point;
                let mut bwd = *point;
                fwd[t.derivative] += step;
                bwd[t.derivative] -= step;
                let partial = (f(&fwd) - f(&bwd)) / (2.0 * step);
                t.coefficient * point[t.multiplier] * partial
            })
            .sum()
    }
}

impl fmt::Display for DifferentialOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} =", self.label)?;
        for (n, t) in self.terms.iter().enumerate() {
            let factor = if t.multiplier == UNIT && self.terms.len() == 1 {
                format!("d/d{}", COORDINATE_NAMES[t.derivative])
            } else {
                format!("{} d/d{}", COORDINATE_NAMES[t.multiplier], COORDINATE_NAMES[t.derivative])
            };
            // reuse the coefficient formatting of linear combinations
            let term = Combination::term(Dummy, t.coefficient).to_string().replace('_', &factor);
            match (n, term.strip_prefix('-')) {
                (0, _) => write!(f, " {term}")?,
                (_, Some(rest)) => write!(f, " - {rest}")?,
                (_, None) => write!(f, " + {term}")?,
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, PartialEq)]
struct Dummy;

impl fmt::Display for Dummy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("_")
    }
}

/// Vector `G p` obtained from the differential operator of `g` at `point`.
pub fn differential_action(g: Generator, point: &FiveVector) -> [C64; 5] {
    differential_operator(g).action(&point.to_array())
}

/// `max |induced - matrix|` for one generator.
pub fn differential_deviation(g: Generator) -> f64 {
    differential_operator(g).induced_matrix().max_abs_diff(&generator_matrix(g))
}

/// Finite-difference sanity check of `D f(p) = -(G p)·∇f(p)` for the test
/// function `f(v) = sin(w·v) + |v|²/2`, returning the absolute deviation.
pub fn finite_difference_deviation(d: &DifferentialOperator, g: &FiveMatrix, point: &[f64; 5]) -> f64 {
    const W: [f64; 5] = [0.7, -0.3, 0.5, 0.2, -0.6];
    let f = |v: &[f64; 5]| {
        let wv: f64 = W.iter().zip(v).map(|(a, b)| a * b).sum();
        let vv: f64 = v.iter().map(|a| a * a).sum();
        wv.sin() + 0.5 * vv
    };
    let wv: f64 = W.iter().zip(point).map(|(a, b)| a * b).sum();
    let grad: Vec<f64> = (0..5).map(|k| W[k] * wv.cos() + point[k]).collect();
    let gp = g.matrix * Vector5::from(point.map(|v| C64::new(v, 0.0)));
    let exact: C64 = -(0..5).map(|k| gp[k] * grad[k]).sum::<C64>();
    (d.apply_numerically(f, point, 1e-5) - exact).norm()
}

/// Group element `exp(iθG)`.
pub fn exponentiate(g: &FiveMatrix, theta: f64) -> FiveMatrix {
    let e = linalg::expm(&(g.to_dmatrix() * (I * theta)));
    FiveMatrix::from_dmatrix(&e, format!("exp(i*{theta}*{})", g.label))
}

/// Affine translation by `(x', y', z', t')`: identity plus fifth column.
pub fn translation_matrix(dx: f64, dy: f64, dz: f64, dt: f64) -> FiveMatrix {
    let r = |v: f64| C64::new(v, 0.0);
    let mut m = Matrix5::identity();
    m[(0, 4)] = r(dx);
    m[(1, 4)] = r(dy);
    m[(2, 4)] = r(dz);
    m[(3, 4)] = r(dt);
    FiveMatrix::new(m, format!("T({dx},{dy},{dz},{dt})"))
}

/// `exp{-i(x'P1 + y'P2 + z'P3 + t'P0)}` evaluated by the matrix exponential.
///
/// With `P0 = i ∂/∂t` the time entry comes out as `-t'`, so this equals
/// `translation_matrix(x', y', z', -t')`; the spatial entries agree directly.
pub fn translation_from_generators(dx: f64, dy: f64, dz: f64, dt: f64) -> FiveMatrix {
    use PoincareGenerator::*;
    let sum = poincare_matrix(P1).matrix * C64::new(dx, 0.0)
        + poincare_matrix(P2).matrix * C64::new(dy, 0.0)
        + poincare_matrix(P3).matrix * C64::new(dz, 0.0)
        + poincare_matrix(P0).matrix * C64::new(dt, 0.0);
    let e = linalg::expm(&FiveMatrix::new(sum * (-I), "").to_dmatrix());
    FiveMatrix::from_dmatrix(&e, format!("exp(-i*P.({dx},{dy},{dz},{dt}))"))
}

/// `max_θ ‖Mᵀ η M - η‖_maxabs` with `M = exp(iθG)`.
pub fn preserve_metric_check(g: &FiveMatrix, thetas: &[f64]) -> f64 {
    let eta = Matrix5::from_diagonal(&Vector5::from(METRIC.map(|v| C64::new(v, 0.0))));
    thetas
        .iter()
        .map(|&th| {
            let m = exponentiate(g, th).matrix;
            (m.transpose() * eta * m - eta).iter().fold(0.0, |acc: f64, z| acc.max(z.norm()))
        })
        .fold(0.0, f64::max)
}

/// Structure constants of the ten generator matrices.
pub fn five_structure_table() -> StructureTable {
    let basis: Vec<DMatrix<C64>> = Generator::ALL.iter().map(|&g| generator_matrix(g).to_dmatrix()).collect();
    StructureTable::from_representation(&basis, |a, b| {
        generator_matrix(a).commutator(&generator_matrix(b)).to_dmatrix()
    })
}

/// Commutator of two Poincaré matrices expanded on the ten Poincaré
/// generators; returns the combination and the out-of-span residual.
pub fn poincare_commutator(pset: &PoincareSet, a: PoincareGenerator, b: PoincareGenerator) -> (Combination<PoincareGenerator>, f64) {
    let basis: Vec<DMatrix<C64>> = PoincareGenerator::ALL.iter().map(|&g| pset.get(g).to_dmatrix()).collect();
    let refs: Vec<&DMatrix<C64>> = basis.iter().collect();
    let p = project(&pset.get(a).commutator(pset.get(b)).to_dmatrix(), &refs);
    let combination = PoincareGenerator::ALL
        .iter()
        .zip(&p.coefficients)
        .fold(Combination::zero(), |acc, (&g, &c)| acc.plus(g, c))
        .pruned(1e-12);
    (combination, p.residual)
}

/// Expected right-hand side of a Poincaré commutator: the Lorentz block and
/// the vanishing translation relations are fixed; mixed Lorentz–translation
/// relations are read off the matrices themselves.
pub fn poincare_rhs(pset: &PoincareSet, a: PoincareGenerator, b: PoincareGenerator) -> Combination<PoincareGenerator> {
    use PoincareGenerator::*;
    let lorentz = |g: PoincareGenerator| !g.is_translation();
    if lorentz(a) && lorentz(b) {
        return commutator_rhs(a.source(), b.source()).map_basis(PoincareGenerator::target_of);
    }
    let p0_with_rotation = (a == P0 && matches!(b, J1 | J2 | J3)) || (b == P0 && matches!(a, J1 | J2 | J3));
    if (a.is_translation() && b.is_translation()) || p0_with_rotation {
        return Combination::zero();
    }
    poincare_commutator(pset, a, b).0
}

/// A candidate relation among translations, rotations and boosts, with whether
/// the matrices satisfy it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CandidateRelation {
    pub relation: String,
    pub holds: bool,
    pub residual: f64,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PoincareReport {
    #[serde(flatten)]
    pub report: AlgebraReport,
    pub candidates: Vec<CandidateRelation>,
}

/// Tolerance for exact 5×5 identities.
pub const FIVE_TOLERANCE: f64 = 1e-12;

/// Checks all 45 commutators of the Poincaré set against [`poincare_rhs`]
/// and evaluates the candidate translation relations.
pub fn check_poincare(pset: &PoincareSet) -> PoincareReport {
    use PoincareGenerator::*;
    let mut entries = Vec::with_capacity(45);
    for (n, &a) in PoincareGenerator::ALL.iter().enumerate() {
        for &b in &PoincareGenerator::ALL[n + 1..] {
            let rhs = poincare_rhs(pset, a, b);
            let expected = rhs.terms().iter().fold(Matrix5::zeros(), |acc, &(g, c)| acc + pset.get(g).matrix * c);
            let lhs = pset.get(a).commutator(pset.get(b));
            entries.push(RelationEntry {
                lhs: pair_label(a, b),
                rhs: rhs.to_string(),
                residual: lhs.max_abs_diff(&FiveMatrix::new(expected, "")),
            });
        }
    }
    let report = AlgebraReport::new(Family::Poincare, None, None, entries);

    let span_distance = |target: &FiveMatrix, span: &[PoincareGenerator]| {
        let basis: Vec<DMatrix<C64>> = span.iter().map(|&g| pset.get(g).to_dmatrix()).collect();
        project(&target.to_dmatrix(), &basis.iter().collect::<Vec<_>>()).residual
    };
    let comm = |a: PoincareGenerator, b: PoincareGenerator| pset.get(a).commutator(pset.get(b));
    let space_p = [P1, P2, P3];

    let mut pj: f64 = 0.0;
    let mut pk: f64 = 0.0;
    let mut pp: f64 = 0.0;
    let mut pp0: f64 = 0.0;
    let mut p0j: f64 = 0.0;
    let mut p0k: f64 = 0.0;
    for &p in &space_p {
        for (&j, &k) in [J1, J2, J3].iter().zip(&[K1, K2, K3]) {
            pj = pj.max(span_distance(&comm(p, j), &[J1, J2, J3]));
            pk = pk.max(span_distance(&comm(p, k), &[K1, K2, K3]));
        }
        for &q in &space_p {
            pp = pp.max(comm(p, q).max_abs());
        }
        pp0 = pp0.max(comm(p, P0).max_abs());
    }
    for (&j, &k) in [J1, J2, J3].iter().zip(&[K1, K2, K3]) {
        p0j = p0j.max(comm(P0, j).max_abs());
        p0k = p0k.max(comm(P0, k).max_abs());
    }
    let candidates = vec![
        candidate_relation(
            "[P_i, J_k] = -i eps_ijk J_k",
            pj,
            "distance of [P_i, J_k] from span(J); the matrices give [J_i, P_j] = i eps_ijk P_k",
        ),
        candidate_relation(
            "[P_i, K_k] = -i eps_ijk K_k",
            pk,
            "distance of [P_i, K_k] from span(K); the matrices give [K_i, P_j] = -i delta_ij P0",
        ),
        candidate_relation("[P_i, P_i] = 0", pp, "max |[P_i, P_j]| over all i, j"),
        candidate_relation("[P_i, P_0] = 0", pp0, "max |[P_i, P0]|"),
        candidate_relation("[P_0, J_i] = 0", p0j, "max |[P0, J_i]|"),
        candidate_relation(
            "[P_0, K_i] = 0",
            p0k,
            "max |[P0, K_i]|; the matrices give [K_i, P0] = -i P_i",
        ),
    ];
    PoincareReport { report, candidates }
}

fn candidate_relation(relation: &str, residual: f64, note: &str) -> CandidateRelation {
    CandidateRelation {
        relation: relation.to_string(),
        holds: residual < FIVE_TOLERANCE,
        residual,
        note: note.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Generator::*;

    #[test]
    fn matrix_entries() {
        let j3 = generator_matrix(J3);
        assert_eq!(j3.at(1, 2), imag(-1.0));
        assert_eq!(j3.at(2, 1), imag(1.0));
        let q1 = generator_matrix(Q1);
        assert_eq!((q1.at(1, 5), q1.at(5, 1)), (imag(1.0), imag(1.0)));
        let s0 = generator_matrix(S0);
        assert_eq!((s0.at(4, 5), s0.at(5, 4)), (imag(-1.0), imag(1.0)));
    }

    #[test]
    fn matrix_structure() {
        for g in Generator::ALL {
            let m = generator_matrix(g);
            assert_eq!(m.max_real(), 0.0, "{g} has real entries");
            let fifth_only = (1..=5).all(|r| (1..=5).all(|c| r == 5 || c == 5 || m.at(r, c).norm() == 0.0));
            let no_fifth = (1..=5).all(|i| m.at(5, i).norm() == 0.0 && m.at(i, 5).norm() == 0.0);
            if g.is_lorentz() {
                assert!(no_fifth, "{g}");
            } else if g != S0 {
                assert!(fifth_only, "{g}");
            } else {
                assert!(fifth_only);
            }
        }
        for p in PoincareGenerator::TRANSLATIONS {
            let m = poincare_matrix(p);
            let nonzero: Vec<_> = (1..=5)
                .flat_map(|r| (1..=5).map(move |c| (r, c)))
                .filter(|&(r, c)| m.at(r, c).norm() != 0.0)
                .collect();
            assert_eq!(nonzero.len(), 1);
            assert_eq!(nonzero[0].1, 5);
            assert!(nonzero[0].0 < nonzero[0].1);
        }
    }

    #[test]
    fn unknown_name() {
        assert_eq!(generator_matrix_by_name("X9"), Err(crate::Error::UnknownGenerator("X9".into())));
        assert_eq!(generator_matrix_by_name("K2").unwrap(), generator_matrix(K2));
    }

    #[test]
    fn differential_operators_reproduce_matrices() {
        for g in Generator::ALL {
            assert!(differential_deviation(g) < 1e-14, "{g}");
        }
        for p in PoincareGenerator::ALL {
            let d = poincare_differential(p).induced_matrix();
            assert!(d.max_abs_diff(&poincare_matrix(p)) < 1e-14, "{p}");
        }
    }

    #[test]
    fn differential_structure() {
        // rotation and boost operators never touch s, the other four always do
        for g in Generator::ALL {
            let d = differential_operator(g);
            let touches_s = d.terms.iter().any(|t| t.multiplier == S || t.derivative == S);
            assert_eq!(touches_s, !g.is_lorentz(), "{g}");
        }
        let s0 = differential_operator(S0);
        assert!(s0.terms.iter().all(|t| [T, S].contains(&t.multiplier) && [T, S].contains(&t.derivative)));
    }

    #[test]
    fn differential_action_at_point() {
        let p = FiveVector::new(0.3, -1.2, 0.8, 2.0, -0.4);
        let act = differential_action(J3, &p);
        // J3 p = (-i y, i x, 0, 0, 0)
        assert!((act[0] - imag(1.2)).norm() < 1e-15);
        assert!((act[1] - imag(0.3)).norm() < 1e-15);
        assert_eq!(act[2], C64::new(0.0, 0.0));
    }

    #[test]
    fn finite_differences_agree() {
        let point = [0.37, -1.21, 0.88, 0.52, -0.64];
        for g in Generator::ALL {
            let dev = finite_difference_deviation(&differential_operator(g), &generator_matrix(g), &point);
            assert!(dev < 1e-6, "{g}: {dev}");
        }
    }

    #[test]
    fn display_differential() {
        assert_eq!(differential_operator(J1).to_string(), "J1 = -i*y d/dz + i*z d/dy");
        assert_eq!(poincare_differential(PoincareGenerator::P0).to_string(), "P0 = i*d/dt");
    }

    #[test]
    fn translation() {
        let t = translation_matrix(1.0, 0.0, 0.0, 0.0);
        let v = t.apply(&FiveVector::affine(0.5, 2.0, -1.0, 3.0));
        assert_eq!(v, FiveVector::affine(1.5, 2.0, -1.0, 3.0));
        assert_eq!(v.s, 1.0);
        let e = translation_from_generators(0.3, -2.0, 1.5, 4.0);
        assert!(e.max_abs_diff(&translation_matrix(0.3, -2.0, 1.5, -4.0)) < 1e-15);
        let composed = translation_matrix(0.3, 1.0, 0.0, 2.0).matrix * translation_matrix(-1.0, 0.5, 2.0, 0.25).matrix;
        assert!(FiveMatrix::new(composed, "").max_abs_diff(&translation_matrix(-0.7, 1.5, 2.0, 2.25)) < 1e-15);
    }

    #[test]
    fn poincare_spot_values() {
        use PoincareGenerator as P;
        let set = PoincareSet::standard();
        let (c, r) = poincare_commutator(&set, P::J3, P::P1);
        assert_eq!(c, Combination::term(P::P2, I));
        assert_eq!(r, 0.0);
        let (c, _) = poincare_commutator(&set, P::K3, P::P0);
        assert_eq!(c.terms().len(), 1);
        assert_eq!(c.terms()[0].0, P::P3);
        assert!(set.get(P::P1).commutator(set.get(P::P2)).max_abs() == 0.0);
    }
}
