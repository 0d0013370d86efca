use super::sweep::{check_range, pole_projections, sweep_with, Spectrum, SweepOptions};
use super::SpectraError;
use crate::graph::ScatteringGraph;
use crate::solver::{coefficient, Scatterer};
use num_complex::Complex64;

/// Maximal interval on which `t2` stays at or below `threshold`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Band {
    pub lo: f64,
    pub hi: f64,
    pub max_t2_inside: f64,
    pub threshold: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Peak {
    pub kl: f64,
    pub t2: f64,
    /// Full width at half maximum; `None` when a half-maximum crossing
    /// falls outside the search region.
    pub fwhm: Option<f64>,
}

const BISECT_WIDTH: f64 = 1e-12;
const MIN_BAND: f64 = 1e-3;
/// Samples closer than this in `t2` count as level.
const LEVEL: f64 = 1e-12;

/// Pointwise `a.t2 - b.t2` on a shared grid.
pub fn difference(a: &Spectrum, b: &Spectrum) -> Result<Vec<(f64, f64)>, SpectraError> {
    if a.len() != b.len() || a.samples.iter().zip(&b.samples).any(|(x, y)| x.kl != y.kl) {
        return Err(SpectraError::GridMismatch);
    }
    Ok(a.samples
        .iter()
        .zip(&b.samples)
        .map(|(x, y)| (x.kl, x.t2 - y.t2))
        .collect())
}

/// Sign-change brackets `(lo, hi)` of sampled data. Exact zeros are skipped
/// over, so `+, 0, -` yields one bracket and `+, 0, +` none.
fn brackets(d: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    let mut last: Option<(f64, f64)> = None;
    for &(x, y) in d {
        if y == 0.0 || y.is_nan() {
            continue;
        }
        if let Some((lx, ly)) = last {
            if (ly < 0.0) != (y < 0.0) {
                out.push((lx, x));
            }
        }
        last = Some((x, y));
    }
    out
}

/// Crossing abscissas by linear interpolation inside each sign-change bracket.
pub fn zero_crossings(d: &[(f64, f64)]) -> Vec<f64> {
    let value = |x: f64| {
        let i = d.partition_point(|p| p.0 < x);
        d[i].1
    };
    brackets(d)
        .into_iter()
        .map(|(a, b)| {
            let (ya, yb) = (value(a), value(b));
            a + (b - a) * ya / (ya - yb)
        })
        .collect()
}

/// Crossing abscissas refined by bisection on `f` within each bracket.
pub fn zero_crossings_refined<F>(d: &[(f64, f64)], f: F) -> Result<Vec<f64>, SpectraError>
where
    F: Fn(f64) -> Result<f64, SpectraError>,
{
    brackets(d)
        .into_iter()
        .map(|(a, b)| bisect(&f, a, b, |v| v < 0.0))
        .collect()
}

/// Finds the boundary in `[a, b]` where `pred(f(x))` flips, assuming it
/// differs at the two ends.
fn bisect<F, P>(f: &F, mut a: f64, mut b: f64, pred: P) -> Result<f64, SpectraError>
where
    F: Fn(f64) -> Result<f64, SpectraError>,
    P: Fn(f64) -> bool,
{
    let at_a = pred(f(a)?);
    for _ in 0..200 {
        if b - a <= BISECT_WIDTH {
            break;
        }
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        if pred(f(m)?) == at_a {
            a = m;
        } else {
            b = m;
        }
    }
    Ok(0.5 * (a + b))
}

/// Maximal runs of samples with `t2 <= tau`, with interior endpoints refined
/// by bisection on `t2(x) = tau`. Runs shorter than 1e-3 are dropped.
pub fn suppression_bands<F>(s: &Spectrum, tau: f64, t2: F) -> Result<Vec<Band>, SpectraError>
where
    F: Fn(f64) -> Result<f64, SpectraError>,
{
    let xs = &s.samples;
    let mut out = Vec::new();
    let mut i = 0;
    while i < xs.len() {
        if xs[i].t2 > tau {
            i += 1;
            continue;
        }
        let start = i;
        while i + 1 < xs.len() && xs[i + 1].t2 <= tau {
            i += 1;
        }
        let end = i;
        let lo = if start == 0 {
            xs[0].kl
        } else {
            bisect(&t2, xs[start - 1].kl, xs[start].kl, |v| v <= tau)?
        };
        let hi = if end + 1 == xs.len() {
            xs[end].kl
        } else {
            bisect(&t2, xs[end].kl, xs[end + 1].kl, |v| v <= tau)?
        };
        let max_t2_inside = xs[start..=end].iter().map(|x| x.t2).fold(f64::MIN, f64::max);
        if hi - lo >= MIN_BAND {
            out.push(Band {
                lo,
                hi,
                max_t2_inside,
                threshold: tau,
            });
        }
        i += 1;
    }
    Ok(out)
}

/// Isolated local maxima of `|T|^2` on `[lo, hi]` reaching `min_height`.
///
/// The region is swept adaptively with refinement forced around pole
/// projections, so resonances much narrower than the base grid are found.
pub fn find_peaks(
    g: &ScatteringGraph,
    region: (f64, f64),
    min_height: f64,
) -> Result<Vec<Peak>, SpectraError> {
    let (lo, hi) = region;
    check_range(lo, hi)?;
    let s = Scatterer::new(g)?;
    let opts = SweepOptions {
        adaptive: true,
        seeds: pole_projections(g, lo, hi),
        ..SweepOptions::default()
    };
    let spectrum = sweep_with(&s, lo, hi, 2001, &opts)?;
    let f = coefficient_fn(&s);
    let xs = &spectrum.samples;

    let mut peaks = Vec::new();
    let mut i = 1;
    while i + 1 < xs.len() {
        // Group a run of level samples and test its two flanks.
        let mut j = i;
        while j + 1 < xs.len() && (xs[j + 1].t2 - xs[i].t2).abs() <= LEVEL {
            j += 1;
        }
        let top = xs[i].t2;
        let isolated = j + 1 < xs.len()
            && top - xs[i - 1].t2 > LEVEL
            && top - xs[j + 1].t2 > LEVEL
            && xs[j].kl - xs[i].kl < MIN_BAND;
        if isolated && top >= min_height {
            let (kl, t2) = golden_max(&f, xs[i - 1].kl, xs[j + 1].kl)?;
            let (kl, t2) = if t2 >= top { (kl, t2) } else { (xs[i].kl, top) };
            let half = 0.5 * t2;
            let left = (0..i).rev().find(|&k| xs[k].t2 < half);
            let right = (j + 1..xs.len()).find(|&k| xs[k].t2 < half);
            let fwhm = match (left, right) {
                (Some(l), Some(r)) => {
                    let a = bisect(&f, xs[l].kl, kl, |v| v < half)?;
                    let b = bisect(&f, kl, xs[r].kl, |v| v < half)?;
                    Some(b - a)
                }
                _ => None,
            };
            peaks.push(Peak { kl, t2, fwhm });
        }
        i = j + 1;
    }
    Ok(peaks)
}

/// `kℓ -> |T|^2` for a prepared graph.
pub(crate) fn coefficient_fn(s: &Scatterer) -> impl Fn(f64) -> Result<f64, SpectraError> + '_ {
    move |kl| Ok(coefficient(s.scatter(Complex64::new(kl, 0.0))?.t))
}

/// Golden-section maximisation of a unimodal `f` on `[a, b]`.
fn golden_max<F>(f: &F, mut a: f64, mut b: f64) -> Result<(f64, f64), SpectraError>
where
    F: Fn(f64) -> Result<f64, SpectraError>,
{
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (f(c)?, f(d)?);
    while b - a > 1e-13 * (1.0 + a.abs()) {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d)?;
        }
    }
    let x = 0.5 * (a + b);
    Ok((x, f(x)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::sweep::Sample;

    fn spectrum(points: &[(f64, f64)]) -> Spectrum {
        Spectrum {
            samples: points
                .iter()
                .map(|&(kl, t2)| Sample { kl, t2, refined: false })
                .collect(),
        }
    }

    #[test]
    fn difference_requires_same_grid() {
        let a = spectrum(&[(0.0, 0.5), (1.0, 0.25)]);
        let b = spectrum(&[(0.0, 0.5), (2.0, 0.25)]);
        assert_eq!(difference(&a, &a).unwrap(), vec![(0.0, 0.0), (1.0, 0.0)]);
        assert_eq!(difference(&a, &b), Err(SpectraError::GridMismatch));
    }

    #[test]
    fn crossings_on_synthetic_data() {
        let d: Vec<(f64, f64)> = (0..=100).map(|i| {
            let x = i as f64 * 0.05;
            (x, (x - 1.234).sin())
        }).collect();
        let lin = zero_crossings(&d);
        let refined = zero_crossings_refined(&d, |x| Ok((x - 1.234).sin())).unwrap();
        assert_eq!(lin.len(), 2);
        assert!((refined[0] - 1.234).abs() < 1e-9);
        assert!((refined[1] - 1.234 - std::f64::consts::PI).abs() < 1e-9);
        assert!((lin[0] - 1.234).abs() < 1e-3);
        assert!(zero_crossings(&[(0.0, 1.0), (1.0, 0.0), (2.0, 3.0)]).is_empty());
        assert_eq!(zero_crossings(&[(0.0, 1.0), (1.0, 0.0), (2.0, -3.0)]).len(), 1);
    }

    #[test]
    fn bands_on_synthetic_data() {
        let f = |x: f64| (x - 2.0).powi(2);
        let s = spectrum(&(0..=40).map(|i| (i as f64 * 0.1, f(i as f64 * 0.1))).collect::<Vec<_>>());
        let bands = suppression_bands(&s, 0.25, |x| Ok(f(x))).unwrap();
        assert_eq!(bands.len(), 1);
        assert!((bands[0].lo - 1.5).abs() < 1e-9 && (bands[0].hi - 2.5).abs() < 1e-9);
        assert!(bands[0].max_t2_inside <= 0.25);
        assert!(suppression_bands(&s, -1.0, |x| Ok(f(x))).unwrap().is_empty());
    }
}
