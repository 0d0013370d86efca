use std::f64::consts::TAU;

use num_complex::Complex64;

use super::SpectraError;
use crate::algebra::{roots, DEFAULT_ROOT_TOL};
use crate::graph::ScatteringGraph;
use crate::solver::transmission_rational;

/// Region of the lower half kℓ-plane searched for poles.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Strip {
    pub re_lo: f64,
    pub re_hi: f64,
    /// Largest accepted `|Im kℓ|`.
    pub im_max: f64,
}

impl Default for Strip {
    fn default() -> Self {
        Self {
            re_lo: 0.0,
            re_hi: TAU,
            im_max: f64::INFINITY,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Resonance {
    /// Pole position; `Im < 0`.
    pub kl: Complex64,
    /// `2 |Im kℓ|`.
    pub width: f64,
    pub z_root: Complex64,
    /// Backward error of `z_root` as a root of the denominator.
    pub residual: f64,
}

/// Roots `z` of the GCD-reduced transmission denominator with `|z| > 1`,
/// mapped to `kℓ = -i log z` with the real part in `[0, 2π)`.
pub fn find_poles(g: &ScatteringGraph, strip: &Strip) -> Result<Vec<Resonance>, SpectraError> {
    let t = transmission_rational(g)?;
    if t.den().degree().unwrap_or(0) == 0 {
        return Ok(Vec::new());
    }
    let coeffs = crate::algebra::f64_coefficients(t.den())?;
    let mut out = Vec::new();
    for z in roots(t.den(), DEFAULT_ROOT_TOL)? {
        if z.norm() <= 1.0 + 1e-12 {
            continue;
        }
        let mut re = z.arg().rem_euclid(TAU);
        if re >= TAU {
            re -= TAU;
        }
        let kl = Complex64::new(re, -z.norm().ln());
        if kl.re < strip.re_lo || kl.re > strip.re_hi || kl.im.abs() > strip.im_max {
            continue;
        }
        out.push(Resonance {
            kl,
            width: 2.0 * kl.im.abs(),
            z_root: z,
            residual: crate::algebra::relative_residual(&coeffs, z),
        });
    }
    out.sort_by(|a, b| a.kl.re.total_cmp(&b.kl.re).then(a.kl.im.total_cmp(&b.kl.im)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::build_named;
    use std::f64::consts::PI;

    #[test]
    fn crossed_hexagon_pole() {
        let x = build_named("X").unwrap();
        let poles = find_poles(&x, &Strip::default()).unwrap();
        let at_pi: Vec<_> = poles.iter().filter(|p| (p.kl.re - PI).abs() < 1e-9).collect();
        assert_eq!(at_pi.len(), 1);
        // z^2 = u, the real root of 9u^3 + 17u^2 - 9u - 81 (bisection: 1.7230195)
        assert!((at_pi[0].width - 1.7230195f64.ln()).abs() < 1e-6);
        assert!(poles.iter().all(|p| p.kl.im < 0.0 && p.residual <= 1e-8));
    }

    #[test]
    fn strip_filters() {
        let x = build_named("X").unwrap();
        let narrow = Strip {
            re_lo: 3.0,
            re_hi: 3.3,
            im_max: 1.0,
        };
        let poles = find_poles(&x, &narrow).unwrap();
        assert!(!poles.is_empty());
        assert!(poles.iter().all(|p| (3.0..=3.3).contains(&p.kl.re)));
    }

    #[test]
    fn non_neumann_graph_rejected() {
        let mut g = build_named("D").unwrap();
        let v = g.add_vertex(1.0).unwrap();
        let l = g.find("L").unwrap();
        g.add_edge(l, v, 1).unwrap();
        assert!(matches!(find_poles(&g, &Strip::default()), Err(SpectraError::Solve(_))));
    }
}
