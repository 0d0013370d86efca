//! Scattering amplitudes from the path-family linear system.
//!
//! There is one unknown per directed half-edge `h = i -> j`: the summed
//! amplitude of all paths that enter the graph at the entrance vertex, leave
//! along `h`, and eventually exit at the target vertex `n`. Writing `z_h` for
//! `exp(i k len(h))`, each unknown satisfies
//!
//! ```text
//! x_h = z_h r_j x_rev(h) + z_h t_j * sum(x_h' for h' leaving j, h' != rev(h)) + z_h t_j [j == n]
//! ```
//!
//! and `T = t_entrance * sum(x_h for h leaving the entrance)`. Reflection uses
//! the same recursion with `n` set to the entrance and adds the direct term
//! `r_entrance`.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::algebra::modular::{bordered_determinants, SparsePolyMatrix};
use crate::algebra::{AlgebraError, IntPoly, RationalFunction};
use crate::amplitudes::{delta_amplitudes, nk_amplitudes, AmplitudeError, AmplitudePair};
use crate::graph::{GraphError, ScatteringGraph, VertexId};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolveError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("exact mode needs Neumann-Kirchhoff vertices; vertex {0} has alpha != 0")]
    NotNeumannKirchhoff(VertexId),
    #[error("vertex {vertex}: {source}")]
    SingularVertex {
        vertex: VertexId,
        source: AmplitudeError,
    },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("numeric solve failed its residual check (backward error {0:e})")]
    Residual(f64),
}

/// Directed copy of an edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HalfEdge {
    pub from: VertexId,
    pub to: VertexId,
    pub mult: u32,
}

/// Index of the opposite half-edge: half-edges `2e` and `2e + 1` come from edge `e`.
#[inline]
pub fn reverse(h: usize) -> usize {
    h ^ 1
}

/// The assembled system `matrix * x = rhs` together with the readout
/// `amplitude = direct + readout . x`.
#[derive(Clone, Debug, PartialEq)]
pub struct PathFamilySystem<S> {
    pub half_edges: Vec<HalfEdge>,
    pub matrix: Vec<Vec<S>>,
    pub rhs: Vec<S>,
    pub readout: Vec<S>,
    pub direct: S,
}

impl<S> PathFamilySystem<S> {
    pub fn size(&self) -> usize {
        self.half_edges.len()
    }
}

/// Transmission and reflection amplitudes at one wave number.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Scattering {
    pub t: Complex64,
    pub r: Complex64,
}

/// Which amplitude a system computes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Amplitude {
    Transmission,
    Reflection,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Coupling {
    Reverse,
    Forward,
}

/// Half-edge bookkeeping for one graph, reusable across wave numbers.
#[derive(Clone, Debug)]
pub struct Scatterer {
    half_edges: Vec<HalfEdge>,
    outgoing: Vec<Vec<usize>>,
    degrees: Vec<u32>,
    alphas: Vec<f64>,
    entrance: VertexId,
    exit: VertexId,
}

/// Pivot ratio below which a real-axis solve is treated as singular.
const PIVOT_RATIO: f64 = 1e-5;
const CONTOUR_RADIUS: f64 = 1e-3;
const CONTOUR_POINTS: usize = 16;
const RESIDUAL_TOL: f64 = 1e-10;

impl Scatterer {
    pub fn new(g: &ScatteringGraph) -> Result<Self, SolveError> {
        let (entrance, exit) = g.require_scattering()?;
        let mut half_edges = Vec::with_capacity(2 * g.edge_count());
        let mut outgoing = vec![Vec::new(); g.vertex_count()];
        for e in g.edges() {
            for (from, to) in [(e.u, e.v), (e.v, e.u)] {
                outgoing[from.0].push(half_edges.len());
                half_edges.push(HalfEdge { from, to, mult: e.mult });
            }
        }
        Ok(Self {
            half_edges,
            outgoing,
            degrees: g.degrees().into_iter().map(|d| d.0).collect(),
            alphas: g.vertices().iter().map(|v| v.alpha).collect(),
            entrance,
            exit,
        })
    }

    pub fn size(&self) -> usize {
        self.half_edges.len()
    }

    pub fn half_edges(&self) -> &[HalfEdge] {
        &self.half_edges
    }

    fn couplings(&self, h: usize) -> impl Iterator<Item = (usize, Coupling)> + '_ {
        let j = self.half_edges[h].to;
        self.outgoing[j.0].iter().map(move |&h2| {
            let kind = if h2 == reverse(h) { Coupling::Reverse } else { Coupling::Forward };
            (h2, kind)
        })
    }

    fn amplitudes(&self, v: VertexId, kl: Complex64) -> Result<AmplitudePair, SolveError> {
        let d = self.degrees[v.0];
        let alpha = self.alphas[v.0];
        let wrap = |source| SolveError::SingularVertex { vertex: v, source };
        if alpha == 0.0 {
            let e = nk_amplitudes(d).map_err(wrap)?;
            let f = |q: &num_rational::BigRational| Complex64::new(q.to_f64().unwrap_or(f64::NAN), 0.0);
            return Ok(AmplitudePair { r: f(&e.r), t: f(&e.t) });
        }
        delta_amplitudes(d, alpha, kl).map_err(wrap)
    }

    fn target(&self, which: Amplitude) -> VertexId {
        match which {
            Amplitude::Transmission => self.exit,
            Amplitude::Reflection => self.entrance,
        }
    }

    /// Lead-to-lead term: `r` for reflection, `t` when both leads share a vertex.
    fn direct<S: Clone>(&self, which: Amplitude, r: &S, t: &S, zero: S) -> S {
        match which {
            Amplitude::Reflection => r.clone(),
            Amplitude::Transmission if self.entrance == self.exit => t.clone(),
            Amplitude::Transmission => zero,
        }
    }

    fn check_exact(&self) -> Result<(), SolveError> {
        match self.alphas.iter().position(|&a| a != 0.0) {
            Some(i) => Err(SolveError::NotNeumannKirchhoff(VertexId(i))),
            None => Ok(()),
        }
    }

    /// Numeric system at `kl`.
    pub fn assemble_numeric(&self, kl: Complex64, which: Amplitude) -> Result<PathFamilySystem<Complex64>, SolveError> {
        let n = self.size();
        let target = self.target(which);
        let amps: Vec<AmplitudePair> = (0..self.degrees.len())
            .map(|v| self.amplitudes(VertexId(v), kl))
            .collect::<Result<_, _>>()?;
        let zero = Complex64::new(0.0, 0.0);
        let mut matrix = vec![vec![zero; n]; n];
        let mut rhs = vec![zero; n];
        for (h, he) in self.half_edges.iter().enumerate() {
            let z = (Complex64::i() * kl * he.mult as f64).exp();
            let a = amps[he.to.0];
            matrix[h][h] += 1.0;
            for (h2, kind) in self.couplings(h) {
                matrix[h][h2] -= z * if kind == Coupling::Reverse { a.r } else { a.t };
            }
            if he.to == target {
                rhs[h] = z * a.t;
            }
        }
        let a_in = amps[self.entrance.0];
        let readout = (0..n)
            .map(|h| if self.half_edges[h].from == self.entrance { a_in.t } else { zero })
            .collect();
        let direct = self.direct(which, &a_in.r, &a_in.t, zero);
        Ok(PathFamilySystem {
            half_edges: self.half_edges.clone(),
            matrix,
            rhs,
            readout,
            direct,
        })
    }

    /// Exact system in `z = exp(i kl)`; Neumann-Kirchhoff vertices only.
    pub fn assemble_exact(&self, which: Amplitude) -> Result<PathFamilySystem<RationalFunction>, SolveError> {
        self.check_exact()?;
        let n = self.size();
        let target = self.target(which);
        let amp = |v: VertexId| -> Result<(RationalFunction, RationalFunction), SolveError> {
            let e = nk_amplitudes(self.degrees[v.0]).map_err(|source| SolveError::SingularVertex { vertex: v, source })?;
            Ok((RationalFunction::constant(e.r), RationalFunction::constant(e.t)))
        };
        let mut matrix = vec![vec![RationalFunction::zero(); n]; n];
        let mut rhs = vec![RationalFunction::zero(); n];
        for (h, he) in self.half_edges.iter().enumerate() {
            let z = RationalFunction::from_poly(crate::algebra::Polynomial::monomial(
                num_rational::BigRational::from_integer(BigInt::from(1)),
                he.mult as usize,
            ));
            let (r, t) = amp(he.to)?;
            matrix[h][h] = &matrix[h][h] + &RationalFunction::one();
            for (h2, kind) in self.couplings(h) {
                let c = if kind == Coupling::Reverse { &r } else { &t };
                matrix[h][h2] = &matrix[h][h2] - &(&z * c);
            }
            if he.to == target {
                rhs[h] = &z * &t;
            }
        }
        let (r_in, t_in) = amp(self.entrance)?;
        let readout = (0..n)
            .map(|h| {
                if self.half_edges[h].from == self.entrance {
                    t_in.clone()
                } else {
                    RationalFunction::zero()
                }
            })
            .collect();
        let direct = self.direct(which, &r_in, &t_in, RationalFunction::zero());
        Ok(PathFamilySystem {
            half_edges: self.half_edges.clone(),
            matrix,
            rhs,
            readout,
            direct,
        })
    }

    /// Transmission and reflection at complex `kl`.
    ///
    /// On the real axis the system is singular wherever the graph carries a
    /// bound state in the continuum, although both amplitudes stay analytic
    /// there. When elimination detects this, the amplitudes are recovered as
    /// the mean over a small circle around `kl`.
    pub fn scatter(&self, kl: Complex64) -> Result<Scattering, SolveError> {
        match self.scatter_direct(kl) {
            Ok((s, pivot_ratio)) if pivot_ratio >= PIVOT_RATIO || kl.im.abs() > 1e-9 => Ok(s),
            Err(e @ SolveError::SingularVertex { .. }) => Err(e),
            Err(e) if kl.im.abs() > 1e-9 => Err(e),
            _ => self.scatter_contour(kl),
        }
    }

    fn scatter_contour(&self, kl: Complex64) -> Result<Scattering, SolveError> {
        let mut acc = Scattering {
            t: Complex64::new(0.0, 0.0),
            r: Complex64::new(0.0, 0.0),
        };
        for j in 0..CONTOUR_POINTS {
            let phase = 2.0 * PI * (j as f64 + 0.5) / CONTOUR_POINTS as f64;
            let (s, _) = self.scatter_direct(kl + Complex64::from_polar(CONTOUR_RADIUS, phase))?;
            acc.t += s.t;
            acc.r += s.r;
        }
        acc.t /= CONTOUR_POINTS as f64;
        acc.r /= CONTOUR_POINTS as f64;
        Ok(acc)
    }

    /// LU solve for both right-hand sides; returns the smallest-to-largest
    /// pivot magnitude ratio alongside the amplitudes.
    fn scatter_direct(&self, kl: Complex64) -> Result<(Scattering, f64), SolveError> {
        let to_t = self.assemble_numeric(kl, Amplitude::Transmission)?;
        let to_r = self.assemble_numeric(kl, Amplitude::Reflection)?;
        let n = to_t.size();
        if n == 0 {
            let s = Scattering {
                t: to_t.direct,
                r: to_r.direct,
            };
            return Ok((s, 1.0));
        }
        let a = DMatrix::from_fn(n, n, |i, j| to_t.matrix[i][j]);
        let b = DMatrix::from_fn(n, 2, |i, j| if j == 0 { to_t.rhs[i] } else { to_r.rhs[i] });
        let lu = a.clone().lu();
        let pivots = lu.u().diagonal().map(|p| p.norm());
        let pivot_ratio = pivots.min() / pivots.max();
        let x = lu.solve(&b).ok_or(SolveError::Algebra(AlgebraError::Singular))?;
        let backward = backward_error(&a, &x, &b);
        if backward.is_nan() || backward > RESIDUAL_TOL {
            return Err(SolveError::Residual(backward));
        }
        let dot = |col: usize| -> Complex64 { (0..n).map(|h| to_t.readout[h] * x[(h, col)]).sum() };
        let s = Scattering {
            t: to_t.direct + dot(0),
            r: to_r.direct + dot(1),
        };
        Ok((s, pivot_ratio))
    }

    /// Exact amplitude as a GCD-reduced function of `z`.
    ///
    /// Each row is scaled by the degree of its arrival vertex so all entries
    /// are integer polynomials; with `M = [[A, b], [c, 0]]` the readout is
    /// `c A^-1 b = -det(M) / det(A)`.
    pub fn exact_amplitude(&self, which: Amplitude) -> Result<RationalFunction, SolveError> {
        self.check_exact()?;
        let target = self.target(which);
        let n = self.size();
        let mut m = SparsePolyMatrix::new(n + 1);
        for (h, he) in self.half_edges.iter().enumerate() {
            let d = self.degrees[he.to.0] as i64;
            let p = he.mult as usize;
            m.add_term(h, h, d, 0);
            for (h2, kind) in self.couplings(h) {
                let c = if kind == Coupling::Reverse { d - 2 } else { -2 };
                m.add_term(h, h2, c, p);
            }
            if he.to == target {
                m.add_term(h, n, 2, p);
            }
            if he.from == self.entrance {
                m.add_term(n, h, 1, 0);
            }
        }
        let (det_a, det_m) = bordered_determinants(&m);
        if det_a.is_zero() {
            return Err(AlgebraError::Singular.into());
        }
        let d_in = BigInt::from(self.degrees[self.entrance.0]);
        // amplitude = direct + (2 / d_in) * (-det_m / det_a)
        let d = self.degrees[self.entrance.0] as i64;
        let direct_num = self.direct(which, &(2 - d), &2, 0);
        let num = &det_a.scale(&BigInt::from(direct_num)) - &det_m.scale(&BigInt::from(2));
        let den = det_a.scale(&d_in);
        Ok(RationalFunction::from_int_parts(num, den)?)
    }
}

/// `||A x - b|| / (||A|| ||x|| + ||b||)` in the infinity norm.
fn backward_error(a: &DMatrix<Complex64>, x: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    let inf = |m: &DMatrix<Complex64>| {
        m.row_iter()
            .map(|row| row.iter().map(|c| c.norm()).sum::<f64>())
            .fold(0.0, f64::max)
    };
    let r = a * x - b;
    let scale = inf(a) * inf(x) + inf(b);
    if scale == 0.0 {
        0.0
    } else {
        inf(&r) / scale
    }
}

/// Solves a numeric system and applies its readout.
pub fn solve_numeric(sys: &PathFamilySystem<Complex64>) -> Result<Complex64, SolveError> {
    let n = sys.size();
    if n == 0 {
        return Ok(sys.direct);
    }
    let a = DMatrix::from_fn(n, n, |i, j| sys.matrix[i][j]);
    let b = DVector::from_column_slice(&sys.rhs);
    let x = a.clone().lu().solve(&b).ok_or(SolveError::Algebra(AlgebraError::Singular))?;
    let backward = backward_error(&a, &DMatrix::from_column_slice(n, 1, x.as_slice()), &DMatrix::from_column_slice(n, 1, b.as_slice()));
    if backward.is_nan() || backward > RESIDUAL_TOL {
        return Err(SolveError::Residual(backward));
    }
    Ok(sys.direct + sys.readout.iter().zip(x.iter()).map(|(c, v)| c * v).sum::<Complex64>())
}

pub fn assemble_numeric(g: &ScatteringGraph, kl: Complex64) -> Result<PathFamilySystem<Complex64>, SolveError> {
    let s = Scatterer::new(g)?;
    s.assemble_numeric(kl, Amplitude::Transmission)
}

pub fn assemble_exact(g: &ScatteringGraph) -> Result<PathFamilySystem<RationalFunction>, SolveError> {
    let s = Scatterer::new(g)?;
    s.assemble_exact(Amplitude::Transmission)
}

pub fn scatter(g: &ScatteringGraph, kl: Complex64) -> Result<Scattering, SolveError> {
    Scatterer::new(g)?.scatter(kl)
}

pub fn transmission(g: &ScatteringGraph, kl: Complex64) -> Result<Complex64, SolveError> {
    Ok(scatter(g, kl)?.t)
}

pub fn reflection(g: &ScatteringGraph, kl: Complex64) -> Result<Complex64, SolveError> {
    Ok(scatter(g, kl)?.r)
}

/// `|t|^2`.
pub fn coefficient(t: Complex64) -> f64 {
    t.norm_sqr()
}

/// Closed-form `T(z)` with `z = exp(i kl)`.
pub fn transmission_rational(g: &ScatteringGraph) -> Result<RationalFunction, SolveError> {
    Scatterer::new(g)?.exact_amplitude(Amplitude::Transmission)
}

/// Closed-form `R(z)`.
pub fn reflection_rational(g: &ScatteringGraph) -> Result<RationalFunction, SolveError> {
    Scatterer::new(g)?.exact_amplitude(Amplitude::Reflection)
}

/// `det(A)` of the degree-scaled exact system; its roots contain every pole.
pub fn system_determinant(g: &ScatteringGraph) -> Result<IntPoly, SolveError> {
    let s = Scatterer::new(g)?;
    s.check_exact()?;
    let n = s.size();
    let mut m = SparsePolyMatrix::new(n + 1);
    for (h, he) in s.half_edges.iter().enumerate() {
        let d = s.degrees[he.to.0] as i64;
        m.add_term(h, h, d, 0);
        for (h2, kind) in s.couplings(h) {
            m.add_term(h, h2, if kind == Coupling::Reverse { d - 2 } else { -2 }, he.mult as usize);
        }
    }
    m.add_term(n, n, 1, 0);
    Ok(bordered_determinants(&m).0)
}
