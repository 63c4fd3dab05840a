//! Truncated two-mode bosonic Fock space.
//!
//! Basis states `|n1, n2>` with `0 <= n1, n2 <= n_max` are ordered row-major,
//! `n2` fastest: `index = n1 * (n_max + 1) + n2`. Reports expose these flat
//! indices, so the ordering is part of the public contract.
//!
//! The raising operator annihilates the top state `|n_max>` of its mode
//! instead of leaving the space, which keeps `a†` the exact adjoint of `a`.
//! Canonical commutators therefore only hold away from the cutoff, on a
//! [`ValiditySubspace`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;

use crate::linalg;
use crate::{Error, Result, I};

/// Smallest admissible per-mode cutoff.
pub const MIN_CUTOFF: usize = 2;
/// Default per-mode cutoff.
pub const DEFAULT_CUTOFF: usize = 20;

/// Oscillator mode label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    One,
    Two,
}

impl TryFrom<u8> for Mode {
    type Error = Error;

    fn try_from(value: u8) -> Result<Self> {
        match value {
            1 => Ok(Mode::One),
            2 => Ok(Mode::Two),
            other => Err(Error::InvalidMode(other)),
        }
    }
}

impl Mode {
    pub fn number(self) -> u8 {
        match self {
            Mode::One => 1,
            Mode::Two => 2,
        }
    }
}

/// Two-mode occupation-number basis with a uniform per-mode cutoff.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FockSpace {
    n_max: usize,
}

impl FockSpace {
    /// Builds the space with cutoff `n_max` (inclusive); `n_max >= 2`.
    pub fn new(n_max: usize) -> Result<Self> {
        if n_max < MIN_CUTOFF {
            return Err(Error::CutoffTooSmall(n_max));
        }
        Ok(FockSpace { n_max })
    }

    // Restricted blocks are themselves square grids of occupations and may
    // fall below the public minimum cutoff.
    fn block(n_max: usize) -> Self {
        FockSpace { n_max }
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// Number of levels per mode.
    pub fn levels(&self) -> usize {
        self.n_max + 1
    }

    pub fn dim(&self) -> usize {
        self.levels() * self.levels()
    }

    /// Flat index of `|n1, n2>`.
    pub fn index(&self, n1: usize, n2: usize) -> usize {
        debug_assert!(n1 <= self.n_max && n2 <= self.n_max);
        n1 * self.levels() + n2
    }

    /// Occupations `(n1, n2)` of a flat index.
    pub fn occupation(&self, index: usize) -> (usize, usize) {
        debug_assert!(index < self.dim());
        (index / self.levels(), index % self.levels())
    }

    /// Basis states in index order.
    pub fn basis(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.dim()).map(move |i| self.occupation(i))
    }

    /// Unit vector `|n1, n2>`.
    pub fn basis_vector(&self, n1: usize, n2: usize) -> DVector<C64> {
        let mut v = DVector::zeros(self.dim());
        v[self.index(n1, n2)] = C64::new(1.0, 0.0);
        v
    }
}

/// Make a space, rejecting cutoffs below 2.
pub fn make_space(n_max: usize) -> Result<FockSpace> {
    FockSpace::new(n_max)
}

/// States with both occupations at most `n_max - margin`.
///
/// Operators that move a photon number by up to `margin` quanta reproduce the
/// untruncated algebra exactly on this block.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ValiditySubspace {
    space: FockSpace,
    margin: usize,
}

impl ValiditySubspace {
    pub fn new(space: FockSpace, margin: usize) -> Result<Self> {
        if margin > space.n_max {
            return Err(Error::EmptySubspace {
                n_max: space.n_max,
                margin,
            });
        }
        Ok(ValiditySubspace { space, margin })
    }

    pub fn space(&self) -> FockSpace {
        self.space
    }

    pub fn margin(&self) -> usize {
        self.margin
    }

    /// Largest occupation kept in each mode.
    pub fn top(&self) -> usize {
        self.space.n_max - self.margin
    }

    pub fn contains(&self, n1: usize, n2: usize) -> bool {
        n1 <= self.top() && n2 <= self.top()
    }

    pub fn dim(&self) -> usize {
        (self.top() + 1) * (self.top() + 1)
    }

    /// Flat indices (in the parent space) of the member states, ascending.
    pub fn indices(&self) -> Vec<usize> {
        self.space
            .basis()
            .enumerate()
            .filter(|&(_, (n1, n2))| self.contains(n1, n2))
            .map(|(i, _)| i)
            .collect()
    }

    /// The submatrix of `m` over member states.
    pub fn restrict_matrix(&self, m: &DMatrix<C64>) -> DMatrix<C64> {
        let idx = self.indices();
        m.select_rows(&idx).select_columns(&idx)
    }
}

/// Complex square matrix over a [`FockSpace`], labelled with its symbol.
#[derive(Debug, Clone, PartialEq)]
pub struct BosonicOperator {
    matrix: DMatrix<C64>,
    space: FockSpace,
    label: String,
}

impl BosonicOperator {
    pub fn new(space: FockSpace, matrix: DMatrix<C64>, label: impl Into<String>) -> Result<Self> {
        if matrix.nrows() != space.dim() || matrix.ncols() != space.dim() {
            return Err(Error::DimensionMismatch {
                left: space.dim(),
                right: matrix.nrows().max(matrix.ncols()),
            });
        }
        Ok(BosonicOperator {
            matrix,
            space,
            label: label.into(),
        })
    }

    pub fn identity(space: FockSpace) -> Self {
        BosonicOperator {
            matrix: DMatrix::identity(space.dim(), space.dim()),
            space,
            label: "1".into(),
        }
    }

    pub fn zeros(space: FockSpace) -> Self {
        BosonicOperator {
            matrix: DMatrix::zeros(space.dim(), space.dim()),
            space,
            label: "0".into(),
        }
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.matrix
    }

    pub fn into_matrix(self) -> DMatrix<C64> {
        self.matrix
    }

    pub fn space(&self) -> FockSpace {
        self.space
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        let label = match self.label.strip_suffix('†') {
            Some(base) => base.to_string(),
            None => format!("{}†", self.label),
        };
        BosonicOperator {
            matrix: self.matrix.adjoint(),
            space: self.space,
            label,
        }
    }

    /// `max |A - A†|`.
    pub fn hermiticity_residual(&self) -> f64 {
        linalg::max_abs(&(&self.matrix - self.matrix.adjoint()))
    }

    /// `AB - BA`, rejecting operators over different spaces.
    pub fn commutator(&self, other: &BosonicOperator) -> Result<BosonicOperator> {
        self.check_same_space(other)?;
        Ok(BosonicOperator {
            matrix: linalg::commutator(&self.matrix, &other.matrix),
            space: self.space,
            label: format!("[{},{}]", self.label, other.label),
        })
    }

    pub fn apply(&self, v: &DVector<C64>) -> DVector<C64> {
        &self.matrix * v
    }

    /// Expectation value `<v|A|v>` of a normalized vector.
    pub fn expectation(&self, v: &DVector<C64>) -> C64 {
        v.dotc(&(&self.matrix * v))
    }

    /// Submatrix over the valid states of `sub`; the result lives on the
    /// block of cutoff `n_max - margin` with the same basis ordering.
    pub fn restrict(&self, sub: &ValiditySubspace) -> Result<BosonicOperator> {
        if sub.space() != self.space {
            return Err(Error::DimensionMismatch {
                left: self.space.dim(),
                right: sub.space().dim(),
            });
        }
        Ok(BosonicOperator {
            matrix: sub.restrict_matrix(&self.matrix),
            space: FockSpace::block(sub.top()),
            label: self.label.clone(),
        })
    }

    fn check_same_space(&self, other: &BosonicOperator) -> Result<()> {
        if self.space != other.space {
            return Err(Error::DimensionMismatch {
                left: self.space.dim(),
                right: other.space.dim(),
            });
        }
        Ok(())
    }

    fn combine(&self, other: &BosonicOperator, op: &str, matrix: DMatrix<C64>) -> BosonicOperator {
        BosonicOperator {
            matrix,
            space: self.space,
            label: format!("{}{}{}", self.label, op, other.label),
        }
    }
}

impl fmt::Display for BosonicOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (dim {})", self.label, self.space.dim())
    }
}

// Arithmetic panics on mismatched spaces, as nalgebra does on mismatched
// shapes; use `commutator` for the checked path.
impl Add for &BosonicOperator {
    type Output = BosonicOperator;

    fn add(self, rhs: &BosonicOperator) -> BosonicOperator {
        assert_eq!(self.space, rhs.space, "operators act on different spaces");
        self.combine(rhs, "+", &self.matrix + &rhs.matrix)
    }
}

impl Sub for &BosonicOperator {
    type Output = BosonicOperator;

    fn sub(self, rhs: &BosonicOperator) -> BosonicOperator {
        assert_eq!(self.space, rhs.space, "operators act on different spaces");
        self.combine(rhs, "-", &self.matrix - &rhs.matrix)
    }
}

impl Mul for &BosonicOperator {
    type Output = BosonicOperator;

    fn mul(self, rhs: &BosonicOperator) -> BosonicOperator {
        assert_eq!(self.space, rhs.space, "operators act on different spaces");
        self.combine(rhs, "", linalg::matmul(&self.matrix, &rhs.matrix))
    }
}

impl Mul<C64> for &BosonicOperator {
    type Output = BosonicOperator;

    fn mul(self, rhs: C64) -> BosonicOperator {
        BosonicOperator {
            matrix: &self.matrix * rhs,
            space: self.space,
            label: format!("({rhs})*{}", self.label),
        }
    }
}

impl Mul<f64> for &BosonicOperator {
    type Output = BosonicOperator;

    fn mul(self, rhs: f64) -> BosonicOperator {
        self * C64::new(rhs, 0.0)
    }
}

impl Neg for &BosonicOperator {
    type Output = BosonicOperator;

    fn neg(self) -> BosonicOperator {
        BosonicOperator {
            matrix: -&self.matrix,
            space: self.space,
            label: format!("-{}", self.label),
        }
    }
}

/// Step-down operator: `<n-1| a |n> = sqrt(n)` in the chosen mode.
pub fn annihilation(mode: Mode, space: FockSpace) -> BosonicOperator {
    let mut m = DMatrix::zeros(space.dim(), space.dim());
    for (n1, n2) in space.basis() {
        let col = space.index(n1, n2);
        match mode {
            Mode::One if n1 > 0 => m[(space.index(n1 - 1, n2), col)] = C64::new((n1 as f64).sqrt(), 0.0),
            Mode::Two if n2 > 0 => m[(space.index(n1, n2 - 1), col)] = C64::new((n2 as f64).sqrt(), 0.0),
            _ => {}
        }
    }
    BosonicOperator {
        matrix: m,
        space,
        label: format!("a{}", mode.number()),
    }
}

/// Step-up operator, the exact conjugate transpose of [`annihilation`].
pub fn creation(mode: Mode, space: FockSpace) -> BosonicOperator {
    annihilation(mode, space).dagger()
}

/// `N_i = a_i† a_i`.
pub fn number(mode: Mode, space: FockSpace) -> BosonicOperator {
    let a = annihilation(mode, space);
    (&a.dagger() * &a).with_label(format!("N{}", mode.number()))
}

/// Position and momentum quadratures `x = (a + a†)/√2`, `P = i(a† - a)/√2`.
pub fn quadratures(mode: Mode, space: FockSpace) -> (BosonicOperator, BosonicOperator) {
    let a = annihilation(mode, space);
    let ad = a.dagger();
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let x = (&(&a + &ad) * s).with_label(format!("x{}", mode.number()));
    let p = (&(&ad - &a) * (I * s)).with_label(format!("P{}", mode.number()));
    (x, p)
}

/// `AB - BA`.
pub fn commutator(a: &BosonicOperator, b: &BosonicOperator) -> Result<BosonicOperator> {
    a.commutator(b)
}

/// Submatrix of `a` over the valid states of `sub`.
pub fn restrict(a: &BosonicOperator, sub: &ValiditySubspace) -> Result<BosonicOperator> {
    a.restrict(sub)
}

/// Largest deviation of `[a_i, a_j†] = δ_ij` and `[a_i, a_j] = 0` on the
/// states that keep one quantum of headroom in each mode.
pub fn canonical_residual(space: FockSpace) -> Result<f64> {
    let sub = ValiditySubspace::new(space, 1)?;
    let id = DMatrix::<C64>::identity(sub.dim(), sub.dim());
    let modes = [Mode::One, Mode::Two];
    let mut worst: f64 = 0.0;
    for mi in modes {
        for mj in modes {
            let a = annihilation(mi, space);
            let c = a.commutator(&creation(mj, space))?.restrict(&sub)?;
            let expected = if mi == mj { id.clone() } else { DMatrix::zeros(sub.dim(), sub.dim()) };
            worst = worst.max(linalg::max_abs(&(c.matrix() - expected)));
            worst = worst.max(linalg::max_abs(a.commutator(&annihilation(mj, space))?.matrix()));
        }
    }
    Ok(worst)
}
