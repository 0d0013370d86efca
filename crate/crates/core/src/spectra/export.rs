//! CSV rendering with 12 significant digits.

use std::fmt::Write;

use super::analysis::{Band, Peak};
use super::poles::Resonance;
use super::sweep::Spectrum;

const DIGITS: usize = 12;

/// Shortest `%g`-style rendering of `x` with `digits` significant digits.
pub fn format_sig(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() { "nan".into() } else if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= digits as i32 {
        let mantissa = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn g(x: f64) -> String {
    format_sig(x, DIGITS)
}

fn table<T>(header: &str, rows: &[T], row: impl Fn(&T) -> Vec<f64>) -> String {
    let mut out = String::with_capacity(32 * (rows.len() + 1));
    out.push_str(header);
    out.push('\n');
    for r in rows {
        let cells: Vec<String> = row(r).into_iter().map(g).collect();
        writeln!(out, "{}", cells.join(",")).expect("write to string");
    }
    out
}

pub fn spectrum_csv(s: &Spectrum) -> String {
    table("kl,t2", &s.samples, |x| vec![x.kl, x.t2])
}

pub fn difference_csv(d: &[(f64, f64)]) -> String {
    table("kl,delta", d, |&(x, y)| vec![x, y])
}

pub fn resonances_csv(poles: &[Resonance]) -> String {
    table("re_kl,im_kl,width,residual", poles, |p| {
        vec![p.kl.re, p.kl.im, p.width, p.residual]
    })
}

pub fn bands_csv(bands: &[Band]) -> String {
    table("lo,hi,max_t2_inside,threshold", bands, |b| {
        vec![b.lo, b.hi, b.max_t2_inside, b.threshold]
    })
}

pub fn peaks_csv(peaks: &[Peak]) -> String {
    table("kl,t2,fwhm", peaks, |p| vec![p.kl, p.t2, p.fwhm.unwrap_or(f64::NAN)])
}
