//! The `contract`, `squeeze` and `ellipse` commands.

use desitter_core::contraction::{
    contract_all, convergence_scan, fit_slopes, ContractionResult, ScanRow, SlopeFit, SLOPE_TOLERANCE,
};
use desitter_core::optics::{
    analytic_covariance, analytic_mean_photon_number, boost_circle_deviation, boosted_ground_state,
    mean_photon_number, quadrature_covariance, squeezed_vacuum, tail_probability, AmplitudeEntry, GridSpec,
};
use desitter_core::Error;
use nalgebra::Matrix4;
use serde::Serialize;

use crate::config::{Format, RunConfig};
use crate::output::{write_csv, write_json, SCHEMA};
use crate::Failure;

/// Points of the unit circle pushed through the boost.
const CIRCLE_POINTS: usize = 64;

/// Tolerance on the ellipse semi-axis product and on the boosted circle.
pub const ELLIPSE_TOLERANCE: f64 = 1e-9;

#[derive(Serialize)]
struct ContractReport {
    schema: u32,
    command: &'static str,
    epsilons: Vec<f64>,
    rows: Vec<ScanRow>,
    slopes: Vec<SlopeFit>,
    results: Vec<ContractionResult>,
}

pub fn contract(config: &RunConfig) -> Result<(), Failure> {
    let epsilons: Vec<f64> = config.epsilons.iter().map(|e| e.value()).collect();
    let rows = convergence_scan(&epsilons).map_err(|e| Failure::Config(e.to_string()))?;
    let slopes = fit_slopes(&rows);
    for fit in &slopes {
        match fit.slope {
            Some(s) => eprintln!("slope {}: {s:.4}", fit.generator),
            None => eprintln!("slope {}: n/a", fit.generator),
        }
    }
    match config.format {
        Format::Csv => write_csv(config, &rows)?,
        Format::Json => write_json(
            config,
            &ContractReport {
                schema: SCHEMA,
                command: config.command.name(),
                epsilons,
                rows: rows.clone(),
                slopes: slopes.clone(),
                results: config.epsilons.iter().map(|&e| contract_all(e)).collect(),
            },
        )?,
    }
    let off: Vec<String> = slopes
        .iter()
        .filter_map(|f| f.slope.filter(|s| (s - 2.0).abs() > SLOPE_TOLERANCE).map(|s| format!("{} ({s:.4})", f.generator)))
        .collect();
    if off.is_empty() {
        Ok(())
    } else {
        Err(Failure::Check(format!("convergence slope differs from 2 by more than {SLOPE_TOLERANCE}: {}", off.join(", "))))
    }
}

#[derive(Serialize)]
struct SqueezeReport {
    schema: u32,
    command: &'static str,
    n_max: usize,
    r: f64,
    tail_probability: f64,
    norm: f64,
    mean_photon_number: f64,
    analytic_mean_photon_number: f64,
    covariance: [[f64; 4]; 4],
    analytic_covariance: [[f64; 4]; 4],
    covariance_determinant: f64,
    max_off_pair_amplitude: f64,
    amplitudes: Vec<AmplitudeEntry>,
}

#[derive(Serialize)]
struct AmplitudeRow {
    index: usize,
    n1: usize,
    n2: usize,
    re: f64,
    im: f64,
}

fn rows4(m: &Matrix4<f64>) -> [[f64; 4]; 4] {
    std::array::from_fn(|i| std::array::from_fn(|j| m[(i, j)]))
}

pub fn squeeze(config: &RunConfig) -> Result<(), Failure> {
    let r = config.squeeze.r;
    let state = squeezed_vacuum(r, config.space).map_err(|e| match e {
        Error::InsufficientCutoff { .. } => Failure::Check(e.to_string()),
        other => Failure::Config(other.to_string()),
    })?;
    let covariance = quadrature_covariance(&state);
    let n = mean_photon_number(&state);
    eprintln!("mean photon number: {n:.12} (analytic {:.12})", analytic_mean_photon_number(r));
    match config.format {
        Format::Json => write_json(
            config,
            &SqueezeReport {
                schema: SCHEMA,
                command: config.command.name(),
                n_max: config.space.n_max(),
                r,
                tail_probability: tail_probability(r, config.space.n_max()),
                norm: state.norm(),
                mean_photon_number: n,
                analytic_mean_photon_number: analytic_mean_photon_number(r),
                covariance: rows4(&covariance),
                analytic_covariance: rows4(&analytic_covariance(r)),
                covariance_determinant: covariance.determinant(),
                max_off_pair_amplitude: state.max_off_pair(),
                amplitudes: state.sparse(),
            },
        ),
        Format::Csv => {
            let rows: Vec<AmplitudeRow> = state
                .sparse()
                .into_iter()
                .map(|a| AmplitudeRow {
                    index: a.index,
                    n1: a.n1,
                    n2: a.n2,
                    re: a.amplitude[0],
                    im: a.amplitude[1],
                })
                .collect();
            write_csv(config, &rows)
        }
    }
}

#[derive(Serialize)]
struct EllipseReport<'a> {
    schema: u32,
    command: &'static str,
    boost_deviation: f64,
    #[serde(flatten)]
    sample: &'a desitter_core::optics::EllipseSample,
}

pub fn ellipse(config: &RunConfig) -> Result<(), Failure> {
    let eta = config.squeeze.eta;
    let sample = boosted_ground_state(eta, GridSpec::default_for(eta)).map_err(|e| Failure::Config(e.to_string()))?;
    let axes = sample.semi_axes;
    let boost_deviation = boost_circle_deviation(eta, CIRCLE_POINTS);
    eprintln!(
        "semi-axes: u = {:.12}, v = {:.12}, product = {:.12}, boosted circle deviation = {boost_deviation:.3e}",
        axes.u,
        axes.v,
        axes.product()
    );
    match config.format {
        Format::Csv => write_csv(config, &sample.samples)?,
        Format::Json => write_json(
            config,
            &EllipseReport {
                schema: SCHEMA,
                command: config.command.name(),
                boost_deviation,
                sample: &sample,
            },
        )?,
    }
    if (axes.product() - 1.0).abs() > ELLIPSE_TOLERANCE || boost_deviation > ELLIPSE_TOLERANCE {
        return Err(Failure::Check(format!(
            "ellipse tolerance {ELLIPSE_TOLERANCE:e} violated: axis product {}, boost deviation {boost_deviation:e}",
            axes.product()
        )));
    }
    Ok(())
}
