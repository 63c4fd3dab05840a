//! Two-photon states and the boosted ground-state ellipse.
//!
//! The two-mode squeezed vacuum is `exp(-2irQ3)|0,0⟩`, which equals
//! `exp(r(a1†a2† - a1a2))|0,0⟩` and has real positive amplitudes
//! `tanhⁿ(r)/cosh(r)` on `|n,n⟩`. Truncation is controlled by the
//! probability carried beyond the cutoff, `tanh(r)^(2(n_max+1))`.
//!
//! In the wavefunction picture a boost of rapidity `η` along z squeezes the
//! ground state `ψ(z,t) = exp(-(z² + t²)/2)/√π` into
//! `exp(-(e^{-2η}u² + e^{2η}v²)/2)/√π` with light-cone coordinates
//! `u = (z+t)/√2`, `v = (z-t)/√2`. The level set at `ψ(0)/√e` is the unit
//! circle for `η = 0` and an ellipse with semi-axes `e^{η}` along `u` and
//! `e^{-η}` along `v` otherwise.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::io::Write;

use nalgebra::{DVector, Matrix4};
use num_complex::Complex64 as C64;
use serde::Serialize;

use crate::algebra::GeneratorSet;
use crate::five::{exponentiate, generator_matrix, FiveMatrix, FiveVector};
use crate::fock::{annihilation, number, quadratures, BosonicOperator, FockSpace, Mode};
use crate::generator::Generator;
use crate::{linalg, Error, Result, I};

/// Largest probability allowed beyond the cutoff.
pub const TAIL_TOLERANCE: f64 = 1e-8;

/// Amplitudes at or below this magnitude are left out of sparse exports.
pub const SPARSE_THRESHOLD: f64 = 1e-15;

/// Normalised two-mode state over a truncated Fock space.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoModeState {
    space: FockSpace,
    amplitudes: DVector<C64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AmplitudeEntry {
    pub index: usize,
    pub n1: usize,
    pub n2: usize,
    pub amplitude: [f64; 2],
}

impl TwoModeState {
    pub fn new(space: FockSpace, amplitudes: DVector<C64>) -> Result<Self> {
        if amplitudes.len() != space.dim() {
            return Err(Error::DimensionMismatch {
                left: space.dim(),
                right: amplitudes.len(),
            });
        }
        Ok(TwoModeState { space, amplitudes })
    }

    pub fn vacuum(space: FockSpace) -> Self {
        TwoModeState {
            space,
            amplitudes: space.basis_vector(0, 0),
        }
    }

    pub fn space(&self) -> FockSpace {
        self.space
    }

    pub fn amplitudes(&self) -> &DVector<C64> {
        &self.amplitudes
    }

    pub fn amplitude(&self, n1: usize, n2: usize) -> C64 {
        self.amplitudes[self.space.index(n1, n2)]
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.norm()
    }

    pub fn expectation(&self, op: &BosonicOperator) -> C64 {
        op.expectation(&self.amplitudes)
    }

    /// Largest `|amplitude|` with `n1 ≠ n2`.
    pub fn max_off_pair(&self) -> f64 {
        self.space
            .basis()
            .filter(|(n1, n2)| n1 != n2)
            .map(|(n1, n2)| self.amplitude(n1, n2).norm())
            .fold(0.0, f64::max)
    }

    /// Amplitudes above [`SPARSE_THRESHOLD`] in basis order.
    pub fn sparse(&self) -> Vec<AmplitudeEntry> {
        self.amplitudes
            .iter()
            .enumerate()
            .filter(|(_, a)| a.norm() > SPARSE_THRESHOLD)
            .map(|(index, a)| {
                let (n1, n2) = self.space.occupation(index);
                AmplitudeEntry {
                    index,
                    n1,
                    n2,
                    amplitude: [a.re, a.im],
                }
            })
            .collect()
    }
}

/// Squeeze magnitude `r` and boost rapidity `η`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SqueezeParameters {
    pub r: f64,
    pub eta: f64,
}

impl SqueezeParameters {
    pub const DEFAULT_R: f64 = 0.5;
    pub const DEFAULT_ETA: f64 = 1.0;

    pub fn new(r: f64, eta: f64) -> Result<Self> {
        validate_r(r)?;
        validate_eta(eta)?;
        Ok(SqueezeParameters { r, eta })
    }
}

impl Default for SqueezeParameters {
    fn default() -> Self {
        SqueezeParameters {
            r: Self::DEFAULT_R,
            eta: Self::DEFAULT_ETA,
        }
    }
}

fn validate_r(r: f64) -> Result<()> {
    if r.is_finite() && r >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidSqueeze(r))
    }
}

fn validate_eta(eta: f64) -> Result<()> {
    if eta.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidRapidity(eta))
    }
}

/// `a1†a2† - a1a2` built directly from the ladder operators.
pub fn pair_generator(space: FockSpace) -> BosonicOperator {
    let a1 = annihilation(Mode::One, space);
    let a2 = annihilation(Mode::Two, space);
    (&(&a1.dagger() * &a2.dagger()) - &(&a1 * &a2)).with_label("a1†a2† - a1a2")
}

/// `exp(-2irQ3)` with `Q3` taken from the generator set.
pub fn squeeze_unitary(r: f64, gens: &GeneratorSet) -> BosonicOperator {
    let q3 = gens.get(Generator::Q3).matrix() * (-2.0 * r * I);
    BosonicOperator::new(gens.space(), linalg::expm(&q3), format!("exp(-2i*{r}*Q3)"))
        .expect("exponential keeps the dimension")
}

/// `exp(r(a1†a2† - a1a2))` from the ladder operators.
pub fn squeeze_unitary_ladder(r: f64, space: FockSpace) -> BosonicOperator {
    let g = pair_generator(space).matrix() * C64::new(r, 0.0);
    BosonicOperator::new(space, linalg::expm(&g), format!("exp({r}*(a1†a2† - a1a2))"))
        .expect("exponential keeps the dimension")
}

/// Probability of the exact squeezed vacuum beyond `n_max`:
/// `Σ_{n>n_max} |tanhⁿr / cosh r|² = tanh(r)^(2(n_max+1))`.
pub fn tail_probability(r: f64, n_max: usize) -> f64 {
    r.tanh().powi(2 * (n_max as i32 + 1))
}

/// Rejects `r` when the truncated space misses more than
/// [`TAIL_TOLERANCE`] of the probability.
pub fn check_cutoff(r: f64, space: FockSpace) -> Result<()> {
    validate_r(r)?;
    let tail = tail_probability(r, space.n_max());
    if tail < TAIL_TOLERANCE {
        Ok(())
    } else {
        Err(Error::InsufficientCutoff {
            r,
            n_max: space.n_max(),
            tail,
            limit: TAIL_TOLERANCE,
        })
    }
}

/// `exp(-2irQ3)|0,0⟩`, after checking the cutoff.
pub fn squeezed_vacuum(r: f64, space: FockSpace) -> Result<TwoModeState> {
    check_cutoff(r, space)?;
    Ok(squeezed_vacuum_unchecked(r, space))
}

/// `exp(-2irQ3)|0,0⟩` without the cutoff check, for studying truncation
/// effects directly. Panics on negative or non-finite `r`.
pub fn squeezed_vacuum_unchecked(r: f64, space: FockSpace) -> TwoModeState {
    validate_r(r).expect("squeeze parameter must be finite and non-negative");
    let u = squeeze_unitary(r, &GeneratorSet::build(space));
    TwoModeState {
        space,
        amplitudes: u.apply(&space.basis_vector(0, 0)),
    }
}

/// Exact amplitude on `|n,n⟩`: `tanhⁿ(r) / cosh(r)`.
pub fn pair_amplitude(r: f64, n: usize) -> f64 {
    r.tanh().powi(n as i32) / r.cosh()
}

/// `⟨N1 + N2⟩`.
pub fn mean_photon_number(state: &TwoModeState) -> f64 {
    let space = state.space();
    (state.expectation(&number(Mode::One, space)) + state.expectation(&number(Mode::Two, space))).re
}

/// `2 sinh²r`.
pub fn analytic_mean_photon_number(r: f64) -> f64 {
    2.0 * r.sinh().powi(2)
}

/// Symmetrised covariance `Re⟨{R_i, R_j}⟩/2 - ⟨R_i⟩⟨R_j⟩` over
/// `R = (x1, P1, x2, P2)`.
pub fn quadrature_covariance(state: &TwoModeState) -> Matrix4<f64> {
    let space = state.space();
    let (x1, p1) = quadratures(Mode::One, space);
    let (x2, p2) = quadratures(Mode::Two, space);
    let ops = [x1, p1, x2, p2];
    let v = state.amplitudes();
    let applied: Vec<DVector<C64>> = ops.iter().map(|op| op.apply(v)).collect();
    let means: Vec<f64> = applied.iter().map(|rv| v.dotc(rv).re).collect();
    Matrix4::from_fn(|i, j| {
        // ⟨R_i R_j⟩ = (R_i v)† (R_j v) for Hermitian R_i
        let second = applied[i].dotc(&applied[j]).re;
        second - means[i] * means[j]
    })
}

/// Covariance of the exact squeezed vacuum in the same ordering.
pub fn analytic_covariance(r: f64) -> Matrix4<f64> {
    let c = 0.5 * (2.0 * r).cosh();
    let s = 0.5 * (2.0 * r).sinh();
    Matrix4::new(
        c, 0.0, s, 0.0, //
        0.0, c, 0.0, -s, //
        s, 0.0, c, 0.0, //
        0.0, -s, 0.0, c,
    )
}

/// `(1/2)⁴`, the determinant of any pure Gaussian state's covariance.
pub const UNCERTAINTY_BOUND: f64 = 1.0 / 16.0;

/// Boosted ground state `ψ_η(z, t)`.
pub fn wavefunction(eta: f64, z: f64, t: f64) -> f64 {
    let u = (z + t) * FRAC_1_SQRT_2;
    let v = (z - t) * FRAC_1_SQRT_2;
    (-((-2.0 * eta).exp() * u * u + (2.0 * eta).exp() * v * v) / 2.0).exp() / PI.sqrt()
}

/// Value defining the ellipse: `ψ(0)/√e`.
pub fn level_value() -> f64 {
    wavefunction(0.0, 0.0, 0.0) * (-0.5f64).exp()
}

const BISECTION_STEPS: usize = 200;

/// Distance from the origin to the level set along the unit direction
/// `(cos θ, sin θ)` in the (z, t) plane, found by bisection.
pub fn level_set_radius(eta: f64, theta: f64) -> f64 {
    let (dt, dz) = theta.sin_cos();
    let target = level_value();
    let inside = |r: f64| wavefunction(eta, r * dz, r * dt) > target;
    let mut lo = 0.0;
    let mut hi = 1.0;
    while inside(hi) {
        hi *= 2.0;
    }
    for _ in 0..BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if inside(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Semi-axes of the level-set ellipse along the light-cone directions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SemiAxes {
    /// Along `u = (z+t)/√2`.
    pub u: f64,
    /// Along `v = (z-t)/√2`.
    pub v: f64,
}

impl SemiAxes {
    pub fn major(&self) -> f64 {
        self.u.max(self.v)
    }

    pub fn minor(&self) -> f64 {
        self.u.min(self.v)
    }

    pub fn product(&self) -> f64 {
        self.u * self.v
    }
}

pub fn semi_axes(eta: f64) -> SemiAxes {
    SemiAxes {
        u: level_set_radius(eta, PI / 4.0),
        v: level_set_radius(eta, -PI / 4.0),
    }
}

/// Square sampling grid over `[-half_width, half_width]²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridSpec {
    pub points: usize,
    pub half_width: f64,
}

impl GridSpec {
    pub const DEFAULT_POINTS: usize = 201;

    /// 201 × 201 points over `[-4e^{|η|}, 4e^{|η|}]²`.
    pub fn default_for(eta: f64) -> Self {
        GridSpec {
            points: Self::DEFAULT_POINTS,
            half_width: 4.0 * eta.abs().exp(),
        }
    }

    /// Smallest half-width that contains the ellipse with margin.
    pub fn required_half_width(eta: f64) -> f64 {
        3.0 * eta.abs().exp()
    }

    pub fn validate(&self, eta: f64) -> Result<()> {
        validate_eta(eta)?;
        if self.points < 2 {
            return Err(Error::GridTooCoarse(self.points));
        }
        let required = Self::required_half_width(eta);
        if self.half_width.is_nan() || self.half_width < required {
            return Err(Error::GridTooSmall {
                eta,
                half_width: self.half_width,
                required,
            });
        }
        Ok(())
    }

    pub fn coordinate(&self, k: usize) -> f64 {
        -self.half_width + 2.0 * self.half_width * k as f64 / (self.points - 1) as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridPoint {
    pub z: f64,
    pub t: f64,
    pub psi_abs: f64,
}

/// Sampled boosted wavefunction with its level-set semi-axes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EllipseSample {
    pub eta: f64,
    pub grid: GridSpec,
    pub semi_axes: SemiAxes,
    pub samples: Vec<GridPoint>,
}

impl EllipseSample {
    /// Writes `z,t,psi_abs` rows.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        for p in &self.samples {
            w.serialize(p)?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Samples `|ψ_η|` on the grid, `z` varying slowest.
pub fn boosted_ground_state(eta: f64, grid: GridSpec) -> Result<EllipseSample> {
    grid.validate(eta)?;
    let mut samples = Vec::with_capacity(grid.points * grid.points);
    for i in 0..grid.points {
        let z = grid.coordinate(i);
        for j in 0..grid.points {
            let t = grid.coordinate(j);
            samples.push(GridPoint {
                z,
                t,
                psi_abs: wavefunction(eta, z, t).abs(),
            });
        }
    }
    Ok(EllipseSample {
        eta,
        grid,
        semi_axes: semi_axes(eta),
        samples,
    })
}

/// 5×5 boost taking the circle to the `η` ellipse: `exp(-iηK3)`, which
/// stretches `u` by `e^{η}` and shrinks `v` by `e^{-η}`.
pub fn boost_matrix(eta: f64) -> FiveMatrix {
    exponentiate(&generator_matrix(Generator::K3), -eta)
}

/// `count` points of the `η = 0` level set, equally spaced in angle.
pub fn circle_points(count: usize) -> Vec<(f64, f64)> {
    (0..count)
        .map(|k| {
            let theta = 2.0 * PI * k as f64 / count as f64;
            let r = level_set_radius(0.0, theta);
            (r * theta.cos(), r * theta.sin())
        })
        .collect()
}

/// Largest distance between a boosted circle point and the `η` level set
/// measured along the same ray from the origin.
pub fn boost_circle_deviation(eta: f64, count: usize) -> f64 {
    let boost = boost_matrix(eta);
    circle_points(count)
        .into_iter()
        .map(|(z, t)| {
            let q = boost.apply(&FiveVector::new(0.0, 0.0, z, t, 0.0));
            let radius = q.z.hypot(q.t);
            (radius - level_set_radius(eta, q.t.atan2(q.z))).abs()
        })
        .fold(0.0, f64::max)
}
