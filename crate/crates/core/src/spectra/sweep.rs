use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;

use super::poles::{find_poles, Strip};
use super::SpectraError;
use crate::graph::ScatteringGraph;
use crate::solver::{coefficient, Scatterer};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Sample {
    pub kl: f64,
    pub t2: f64,
    /// Inserted by adaptive refinement rather than part of the base grid.
    pub refined: bool,
}

/// `|T|^2` sampled at strictly increasing kℓ.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Spectrum {
    pub samples: Vec<Sample>,
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn kls(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.kl).collect()
    }

    pub fn t2s(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.t2).collect()
    }

    /// Sample with the largest `t2`.
    pub fn max(&self) -> Option<Sample> {
        self.samples.iter().copied().max_by(|a, b| a.t2.total_cmp(&b.t2))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepOptions {
    pub adaptive: bool,
    /// Neighbouring samples differing by more than this get a midpoint.
    pub jump: f64,
    /// Intervals this short are never split.
    pub min_spacing: f64,
    pub max_points: usize,
    /// Abscissas (pole projections) around which refinement is forced.
    pub seeds: Vec<f64>,
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self {
            adaptive: false,
            jump: 0.05,
            min_spacing: 1e-6,
            max_points: 200_000,
            seeds: Vec::new(),
        }
    }
}

/// Uniform sweep of `n_base` points over `[lo, hi]`, optionally refined
/// around steep features and resonance poles.
pub fn sweep(
    g: &ScatteringGraph,
    lo: f64,
    hi: f64,
    n_base: usize,
    adaptive: bool,
) -> Result<Spectrum, SpectraError> {
    check_range(lo, hi)?;
    let scatterer = Scatterer::new(g)?;
    let seeds = if adaptive { pole_projections(g, lo, hi) } else { Vec::new() };
    let opts = SweepOptions {
        adaptive,
        seeds,
        ..SweepOptions::default()
    };
    sweep_with(&scatterer, lo, hi, n_base, &opts)
}

pub(crate) fn check_range(lo: f64, hi: f64) -> Result<(), SpectraError> {
    if lo.is_finite() && hi.is_finite() && lo < hi {
        Ok(())
    } else {
        Err(SpectraError::InvalidRange(lo, hi))
    }
}

/// Real parts of the resonance poles, repeated with period 2π across
/// `[lo, hi]`. Empty for graphs without an exact form.
pub(crate) fn pole_projections(g: &ScatteringGraph, lo: f64, hi: f64) -> Vec<f64> {
    let strip = Strip {
        re_lo: 0.0,
        re_hi: TAU,
        im_max: f64::INFINITY,
    };
    let Ok(poles) = find_poles(g, &strip) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for p in poles {
        let re = p.kl.re;
        let first = ((lo - re) / TAU).ceil() as i64;
        let mut m = first;
        while re + TAU * m as f64 <= hi {
            out.push(re + TAU * m as f64);
            m += 1;
        }
    }
    out.sort_by(f64::total_cmp);
    out
}

pub fn sweep_with(
    s: &Scatterer,
    lo: f64,
    hi: f64,
    n_base: usize,
    opts: &SweepOptions,
) -> Result<Spectrum, SpectraError> {
    check_range(lo, hi)?;
    if n_base < 2 {
        return Err(SpectraError::TooFewSamples(n_base));
    }
    let step = (hi - lo) / (n_base - 1) as f64;
    let grid: Vec<f64> = (0..n_base)
        .map(|i| if i + 1 == n_base { hi } else { lo + step * i as f64 })
        .collect();
    let mut samples: Vec<Sample> = evaluate(s, &grid)?
        .into_iter()
        .zip(grid)
        .map(|(t2, kl)| Sample { kl, t2, refined: false })
        .collect();
    if !opts.adaptive {
        return Ok(Spectrum { samples });
    }

    let mut seeds = opts.seeds.clone();
    seeds.sort_by(f64::total_cmp);
    let has_seed = |a: f64, b: f64| {
        let i = seeds.partition_point(|&x| x <= a);
        i < seeds.len() && seeds[i] < b
    };
    loop {
        let mut mids: Vec<f64> = samples
            .windows(2)
            .filter(|w| {
                let (a, b) = (w[0], w[1]);
                b.kl - a.kl > opts.min_spacing
                    && ((b.t2 - a.t2).abs() > opts.jump || has_seed(a.kl, b.kl))
            })
            .map(|w| 0.5 * (w[0].kl + w[1].kl))
            .collect();
        let room = opts.max_points.saturating_sub(samples.len());
        mids.truncate(room);
        if mids.is_empty() {
            break;
        }
        let values = evaluate(s, &mids)?;
        let added = mids
            .into_iter()
            .zip(values)
            .map(|(kl, t2)| Sample { kl, t2, refined: true });
        samples.extend(added);
        samples.sort_by(|a, b| a.kl.total_cmp(&b.kl));
    }
    Ok(Spectrum { samples })
}

pub(crate) fn evaluate(s: &Scatterer, kls: &[f64]) -> Result<Vec<f64>, SpectraError> {
    kls.par_iter()
        .map(|&kl| Ok(coefficient(s.scatter(Complex64::new(kl, 0.0))?.t)))
        .collect()
}
