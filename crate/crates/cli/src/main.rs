//! `qgraph`: transmission spectra of equilateral quantum graphs from the
//! command line.

mod output;

use std::f64::consts::TAU;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use qgraph::solver::reflection_rational;
use qgraph::spectra::{
    bands_csv, difference, difference_csv, find_peaks, find_poles, format_sig, peaks_csv,
    resonances_csv, spectrum_csv, suppression_bands, sweep, zero_crossings_refined, SpectraError,
    Strip,
};
use qgraph::{build_source, transmission_rational, CatalogGraph, Circuit, ScatteringGraph, Scatterer};

use output::Report;

const MAX_KL: f64 = 2.0 * TAU;

#[derive(Parser)]
#[command(name = "qgraph", version, about = "Scattering on equilateral quantum graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Catalog graphs with vertex and edge counts
    List {
        #[command(flatten)]
        io: Io,
    },
    /// Exact transmission and reflection of a Neumann-Kirchhoff graph
    Show {
        source: String,
        #[command(flatten)]
        io: Io,
    },
    /// |T|^2 over a kl range
    Sweep {
        source: String,
        #[command(flatten)]
        grid: Grid,
        #[arg(long)]
        adaptive: bool,
        #[command(flatten)]
        io: Io,
    },
    /// Difference |T_a|^2 - |T_b|^2 and its zero crossings
    Compare {
        a: String,
        b: String,
        #[command(flatten)]
        grid: Grid,
        /// Also write the crossings as CSV to this path
        #[arg(long, value_name = "PATH")]
        crossings: Option<PathBuf>,
        #[command(flatten)]
        io: Io,
    },
    /// Intervals where |T|^2 stays at or below tau
    Bands {
        source: String,
        #[command(flatten)]
        grid: Grid,
        #[arg(long, default_value_t = 1e-2)]
        tau: f64,
        #[command(flatten)]
        io: Io,
    },
    /// Resonance poles of the exact transmission
    Poles {
        source: String,
        /// Real-part window for the poles
        #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_negative_numbers = true)]
        range: Option<Vec<f64>>,
        /// Largest accepted |Im kl|
        #[arg(long)]
        im_max: Option<f64>,
        #[command(flatten)]
        io: Io,
    },
    /// Local maxima of |T|^2 with their full width at half maximum
    Peaks {
        source: String,
        #[command(flatten)]
        grid: Grid,
        #[arg(long, default_value_t = 0.5)]
        min_height: f64,
        #[command(flatten)]
        io: Io,
    },
}

#[derive(Args)]
struct Grid {
    /// kl interval, inside [0, 4pi]
    #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_negative_numbers = true)]
    range: Option<Vec<f64>>,
    /// Base grid size
    #[arg(long, default_value_t = 2001)]
    samples: usize,
}

#[derive(Args)]
struct Io {
    /// Write here instead of stdout
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Worker threads for sweeps; 0 uses every core
    #[arg(long, default_value_t = 0)]
    jobs: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Text,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::List { io } => {
            let mut csv = String::from("name,vertices,edges\n");
            for g in CatalogGraph::ALL {
                let built = g.build();
                csv.push_str(&format!("{},{},{}\n", g.name(), built.vertex_count(), built.edge_count()));
            }
            Report::new("list", csv).emit(&io)
        }
        Command::Show { source, io } => show(&source, &io),
        Command::Sweep {
            source,
            grid,
            adaptive,
            io,
        } => {
            let (lo, hi) = kl_range(grid.range.as_deref())?;
            let g = load(&source)?;
            let s = pooled(&io, || sweep(&g, lo, hi, grid.samples, adaptive))?;
            Report::new("sweep", spectrum_csv(&s))
                .meta("source", &source)
                .meta("range", &range_text(lo, hi))
                .meta("adaptive", &adaptive.to_string())
                .meta("points", &s.len().to_string())
                .emit(&io)
        }
        Command::Compare {
            a,
            b,
            grid,
            crossings,
            io,
        } => compare(&a, &b, &grid, crossings, &io),
        Command::Bands {
            source,
            grid,
            tau,
            io,
        } => {
            let (lo, hi) = kl_range(grid.range.as_deref())?;
            if !tau.is_finite() {
                bail!("tau must be finite");
            }
            let g = load(&source)?;
            let scatterer = Scatterer::new(&g)?;
            let bands = pooled(&io, || {
                let s = sweep(&g, lo, hi, grid.samples, false)?;
                suppression_bands(&s, tau, |k| t2(&scatterer, k))
            })?;
            Report::new("bands", bands_csv(&bands))
                .meta("source", &source)
                .meta("range", &range_text(lo, hi))
                .meta("tau", &format_sig(tau, 12))
                .emit(&io)
        }
        Command::Poles {
            source,
            range,
            im_max,
            io,
        } => {
            let (lo, hi) = kl_range(range.as_deref())?;
            let strip = Strip {
                re_lo: lo,
                re_hi: hi,
                im_max: im_max.unwrap_or(f64::INFINITY),
            };
            let poles = find_poles(&load(&source)?, &strip)?;
            Report::new("poles", resonances_csv(&poles))
                .meta("source", &source)
                .meta("range", &range_text(lo, hi))
                .emit(&io)
        }
        Command::Peaks {
            source,
            grid,
            min_height,
            io,
        } => {
            let (lo, hi) = kl_range(grid.range.as_deref())?;
            let g = load(&source)?;
            let peaks = pooled(&io, || find_peaks(&g, (lo, hi), min_height))?;
            Report::new("peaks", peaks_csv(&peaks))
                .meta("source", &source)
                .meta("range", &range_text(lo, hi))
                .meta("min_height", &format_sig(min_height, 12))
                .emit(&io)
        }
    }
}

fn show(source: &str, io: &Io) -> Result<()> {
    let g = load(source)?;
    let t = transmission_rational(&g)?;
    let r = reflection_rational(&g)?;
    let name = Circuit::parse(source).map_or_else(|_| source.to_string(), |c| c.to_string());
    let csv = format!(
        "amplitude,numerator,denominator\nT,{},{}\nR,{},{}\n",
        t.num(),
        t.den(),
        r.num(),
        r.den()
    );
    let json = qgraph::document::write_graph(&g)?;
    match io.format {
        Format::Csv => output::write(io.out.as_deref(), &csv),
        Format::Text => {
            let text = format!(
                "source: {name}\nvertices: {}\nedges: {}\nT(z) = {t}\nR(z) = {r}\ngraph:\n{json}\n",
                g.vertex_count(),
                g.edge_count()
            );
            output::write(io.out.as_deref(), &text)
        }
    }
}

fn compare(a: &str, b: &str, grid: &Grid, crossings: Option<PathBuf>, io: &Io) -> Result<()> {
    let (lo, hi) = kl_range(grid.range.as_deref())?;
    let (ga, gb) = (load(a)?, load(b)?);
    let (sa, sb) = (Scatterer::new(&ga)?, Scatterer::new(&gb)?);
    let (delta, found) = pooled(io, || {
        let d = difference(
            &sweep(&ga, lo, hi, grid.samples, false)?,
            &sweep(&gb, lo, hi, grid.samples, false)?,
        )?;
        let found = zero_crossings_refined(&d, |k| Ok(t2(&sa, k)? - t2(&sb, k)?))?;
        Ok::<_, SpectraError>((d, found))
    })?;
    let listed: Vec<String> = found.iter().map(|x| format_sig(*x, 12)).collect();
    if let Some(path) = crossings {
        let mut csv = String::from("kl\n");
        for x in &listed {
            csv.push_str(x);
            csv.push('\n');
        }
        output::write(Some(&path), &csv)?;
    }
    Report::new("compare", difference_csv(&delta))
        .meta("a", a)
        .meta("b", b)
        .meta("range", &range_text(lo, hi))
        .meta("crossings", &listed.join(" "))
        .emit(io)?;
    if io.out.is_some() {
        println!("crossings: {}", listed.join(" "));
    }
    Ok(())
}

fn load(source: &str) -> Result<ScatteringGraph> {
    build_source(source).with_context(|| format!("cannot build graph from {source:?}"))
}

fn t2(s: &Scatterer, kl: f64) -> Result<f64, SpectraError> {
    Ok(s.scatter(Complex64::new(kl, 0.0))?.t.norm_sqr())
}

fn kl_range(range: Option<&[f64]>) -> Result<(f64, f64)> {
    let (lo, hi) = match range {
        None => (0.0, TAU),
        Some(&[lo, hi]) => (lo, hi),
        Some(_) => bail!("--range takes two values"),
    };
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        bail!("invalid range [{lo}, {hi}]: need lo < hi");
    }
    if lo < 0.0 || hi > MAX_KL {
        bail!("range [{lo}, {hi}] leaves [0, 4pi]");
    }
    Ok((lo, hi))
}

fn range_text(lo: f64, hi: f64) -> String {
    format!("{} {}", format_sig(lo, 12), format_sig(hi, 12))
}

/// Runs `f` on a pool of `--jobs` threads.
fn pooled<T, E, F>(io: &Io, f: F) -> Result<T>
where
    F: FnOnce() -> Result<T, E> + Send,
    T: Send,
    E: Into<anyhow::Error> + Send,
{
    let pool = rayon::ThreadPoolBuilder::new().num_threads(io.jobs).build()?;
    pool.install(f).map_err(Into::into)
}
