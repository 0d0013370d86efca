//! Acceptance criteria, one line per criterion.
//!
//! Runs as a plain binary (`harness = false`). By default it reports and
//! exits successfully; set `QGRAPH_ACCEPTANCE_STRICT=1` to turn any failed
//! criterion into a nonzero exit status.

mod common;

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::time::Instant;

use num_complex::Complex64;
use qgraph::algebra::rf_equal;
use qgraph::spectra::{
    difference, find_peaks, find_poles, suppression_bands, sweep, zero_crossings_refined, Strip,
};
use qgraph::{build_source, transmission_rational, CatalogGraph, ScatteringGraph, Scatterer};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{closed_form, SUITE};

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn graph(src: &str) -> ScatteringGraph {
    build_source(src).unwrap_or_else(|e| panic!("{src}: {e}"))
}

fn t2(s: &Scatterer, kl: f64) -> f64 {
    s.scatter(Complex64::new(kl, 0.0)).expect("solve").t.norm_sqr()
}

fn closed_forms() -> Outcome {
    let mut bad = Vec::new();
    for g in CatalogGraph::ALL {
        let t = transmission_rational(&g.build()).expect("exact solve");
        if !rf_equal(&t, &closed_form(g.name())) {
            bad.push(g.name());
        }
    }
    outcome(bad.is_empty(), format!("5 catalog graphs, mismatches: {bad:?}"))
}

fn crossings() -> Outcome {
    let (q, x) = (graph("Q"), graph("X"));
    let sq = sweep(&q, 0.01, TAU - 0.01, 2001, false).unwrap();
    let sx = sweep(&x, 0.01, TAU - 0.01, 2001, false).unwrap();
    let d = difference(&sq, &sx).unwrap();
    let (a, b) = (Scatterer::new(&q).unwrap(), Scatterer::new(&x).unwrap());
    let found = zero_crossings_refined(&d, |k| Ok(t2(&a, k) - t2(&b, k))).unwrap();
    let pass = found.len() == 2
        && (found[0] - 1.15215).abs() <= 1e-4
        && (found[1] - 5.13103).abs() <= 1e-4;
    outcome(pass, format!("crossings {found:.6?}, expected [1.15215, 5.13103] +- 1e-4"))
}

fn width_near_pi(src: &str) -> Option<f64> {
    let poles = find_poles(&graph(src), &Strip::default()).ok()?;
    poles
        .iter()
        .min_by(|a, b| (a.kl.re - PI).abs().total_cmp(&(b.kl.re - PI).abs()))
        .filter(|p| (p.kl.re - PI).abs() < 1e-6)
        .map(|p| p.width)
}

fn pole_widths() -> Outcome {
    let wx = width_near_pi("X");
    let wxx = width_near_pi("S(X,X)");
    let ok = |w: Option<f64>, want: f64| w.is_some_and(|w| (w - want).abs() <= 1e-4);
    outcome(
        ok(wx, 0.54408) && ok(wxx, 0.25037),
        format!("w_X = {wx:.6?} (0.54408), w_S(XX) = {wxx:.6?} (0.25037), tol 1e-4"),
    )
}

fn narrow_peaks() -> Outcome {
    let g = graph("S(Q,X,Q)");
    let strip = Strip {
        re_lo: 2.0,
        re_hi: 4.3,
        im_max: 0.01,
    };
    let poles = find_poles(&g, &strip).unwrap();
    let near = |target: f64| {
        poles
            .iter()
            .min_by(|a, b| (a.kl.re - target).abs().total_cmp(&(b.kl.re - target).abs()))
            .copied()
    };
    let (lo, hi) = (near(PI - 0.33250), near(PI + 0.33250));
    let pos_ok = [(lo, PI - 0.33250), (hi, PI + 0.33250)]
        .iter()
        .all(|(p, t)| p.is_some_and(|p| (p.kl.re - t).abs() <= 1e-3));
    let widths: Vec<f64> = [lo, hi].iter().flatten().map(|p| p.width).collect();
    let width_ok = widths.len() == 2 && widths.iter().all(|&w| w < 0.00030);

    let peaks = find_peaks(&g, (2.0, 4.0), 0.5).unwrap();
    let narrow: Vec<_> = peaks
        .iter()
        .filter(|p| (p.kl - PI).abs() > 0.3 && (p.kl - PI).abs() < 0.36)
        .collect();
    let fwhm: Vec<Option<f64>> = narrow.iter().map(|p| p.fwhm).collect();
    let fwhm_ok = narrow.len() == 2 && fwhm.iter().all(|w| w.is_some_and(|w| w < 0.00030));
    let re: Vec<f64> = [lo, hi].iter().flatten().map(|p| p.kl.re - PI).collect();
    outcome(
        pos_ok && width_ok && fwhm_ok,
        format!(
            "poles at pi{re:+.6?} (pi -+ 0.33250, tol 1e-3): {}; widths {widths:.8?} < 0.00030: {}; \
             peak FWHM {fwhm:.8?} < 0.00030: {}",
            verdict(pos_ok),
            verdict(width_ok),
            verdict(fwhm_ok)
        ),
    )
}

fn unitarity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst = 0.0f64;
    for src in SUITE {
        let s = Scatterer::new(&graph(src)).unwrap();
        for _ in 0..100 {
            let kl = rng.gen_range(0.0..TAU);
            let a = s.scatter(Complex64::new(kl, 0.0)).unwrap();
            worst = worst.max((a.t.norm_sqr() + a.r.norm_sqr() - 1.0).abs());
        }
    }
    outcome(worst <= 1e-10, format!("max ||R|^2 + |T|^2 - 1| = {worst:.2e} over 9 graphs x 100 points"))
}

fn time_reversal() -> Outcome {
    let mut worst = 0.0f64;
    for src in SUITE {
        let s = Scatterer::new(&graph(src)).unwrap();
        for i in 0..500 {
            let x = PI * i as f64 / 499.0;
            worst = worst.max((t2(&s, PI + x) - t2(&s, PI - x)).abs());
        }
    }
    outcome(worst <= 1e-10, format!("max ||T(pi+x)|^2 - |T(pi-x)|^2| = {worst:.2e} over 9 graphs x 500 points"))
}

fn periodicity() -> Outcome {
    let mut worst: [f64; 2] = [0.0; 2];
    for (slot, (src, period)) in [("D", FRAC_PI_2), ("H", PI / 3.0)].into_iter().enumerate() {
        let s = Scatterer::new(&graph(src)).unwrap();
        for i in 0..500 {
            let kl = TAU * i as f64 / 500.0;
            worst[slot] = worst[slot].max((t2(&s, kl + period) - t2(&s, kl)).abs());
        }
    }
    outcome(
        worst.iter().all(|&w| w <= 1e-10),
        format!("D period pi/2: {:.2e}; H period pi/3: {:.2e}", worst[0], worst[1]),
    )
}

fn suppression() -> Outcome {
    let (q, x) = (graph("Q"), graph("X"));
    let bands = |g: &ScatteringGraph| {
        let s = Scatterer::new(g).unwrap();
        let spectrum = sweep(g, 0.0, TAU, 2001, false).unwrap();
        suppression_bands(&spectrum, 1e-2, |k| Ok(t2(&s, k))).unwrap()
    };
    let bq = bands(&q);
    let bx = bands(&x);
    let q_has = bq.iter().any(|b| b.lo < PI && PI < b.hi);
    let at_pi = t2(&Scatterer::new(&q).unwrap(), PI);
    let pass = q_has && bx.is_empty() && at_pi < 1e-20;
    let shown: Vec<(f64, f64)> = bq.iter().map(|b| (b.lo, b.hi)).collect();
    outcome(
        pass,
        format!("Q bands {shown:.5?}; X bands {}; |T_Q(pi)|^2 = {at_pi:.2e}", bx.len()),
    )
}

fn trivial_graphs() -> Outcome {
    let mut single = ScatteringGraph::new();
    let v = single.add_vertex(0.0).unwrap();
    single.set_leads(v, v).unwrap();
    let mut pair = ScatteringGraph::new();
    let a = pair.add_vertex(0.0).unwrap();
    let b = pair.add_vertex(0.0).unwrap();
    pair.add_edge(a, b, 1).unwrap();
    pair.set_leads(a, b).unwrap();
    let mut worst = 0.0f64;
    for g in [&single, &pair] {
        let s = Scatterer::new(g).unwrap();
        for i in 0..=400 {
            let kl = 2.0 * TAU * i as f64 / 400.0;
            worst = worst.max((t2(&s, kl) - 1.0).abs());
        }
    }
    outcome(worst <= 1e-12, format!("max ||T|^2 - 1| = {worst:.2e}"))
}

fn exact_numeric() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut worst = 0.0f64;
    for src in SUITE {
        let g = graph(src);
        let exact = transmission_rational(&g).unwrap();
        let s = Scatterer::new(&g).unwrap();
        for _ in 0..64 {
            let kl = rng.gen_range(0.0..TAU);
            let z = Complex64::from_polar(1.0, kl);
            let numeric = s.scatter(Complex64::new(kl, 0.0)).unwrap().t;
            worst = worst.max((exact.eval_precise(z) - numeric).norm());
        }
    }
    outcome(worst <= 1e-10, format!("max |T_exact - T_numeric| = {worst:.2e} over 9 graphs x 64 points"))
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "ok"
    } else {
        "FAILS"
    }
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("closed-form oracle", closed_forms),
        ("Q/X coefficient crossings", crossings),
        ("pole widths of X and S(XX)", pole_widths),
        ("narrow peaks of S(QXQ)", narrow_peaks),
        ("unitarity", unitarity),
        ("time-reversal symmetry", time_reversal),
        ("periodicity of D and H", periodicity),
        ("suppression band of Q", suppression),
        ("trivial linear graphs", trivial_graphs),
        ("exact/numeric consistency", exact_numeric),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("[{tag}] {:>2}. {name}: {} ({:.2?})", i + 1, o.detail, start.elapsed());
        if !o.pass {
            failed.push(i + 1);
        }
    }
    println!(
        "acceptance: {}/{} criteria pass{}",
        criteria.len() - failed.len(),
        criteria.len(),
        if failed.is_empty() { String::new() } else { format!("; failing: {failed:?}") }
    );
    let strict = std::env::var("QGRAPH_ACCEPTANCE_STRICT").is_ok_and(|v| v == "1");
    if strict && !failed.is_empty() {
        std::process::exit(1);
    }
}
