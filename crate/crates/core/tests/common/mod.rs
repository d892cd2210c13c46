//! Seeded random corpus of piecewise polynomials shared by the integration
//! tests.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use semicont::model::CountableModification;
use semicont::{FunctionModel, PiecewiseFunction, Polynomial, Rational};

pub const MAX_PIECES: usize = 8;
pub const MAX_DEGREE: usize = 6;
pub const MAX_ENTRY: i64 = 100;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// `p/q` with `|p| <= 100` and `1 <= q <= 100`.
pub fn coefficient(rng: &mut impl Rng) -> Rational {
    q(rng.gen_range(-MAX_ENTRY..=MAX_ENTRY), rng.gen_range(1..=MAX_ENTRY))
}

pub fn polynomial(rng: &mut impl Rng, max_degree: usize) -> Polynomial {
    let degree = rng.gen_range(0..=max_degree);
    Polynomial::new((0..=degree).map(|_| coefficient(rng)).collect())
}

/// Uniform rational in `[lo, hi]` on a grid of `10^6` steps.
pub fn point_in(rng: &mut impl Rng, lo: &Rational, hi: &Rational) -> Rational {
    let k = rng.gen_range(0..=1_000_000i64);
    lo + (hi - lo) * q(k, 1_000_000)
}

/// Sorted distinct points strictly inside `]lo, hi[`.
pub fn interior_points(rng: &mut impl Rng, lo: &Rational, hi: &Rational, n: usize) -> Vec<Rational> {
    let mut pts = Vec::with_capacity(n);
    while pts.len() < n {
        let x = point_in(rng, lo, hi);
        if &x > lo && &x < hi {
            pts.push(x);
        }
        if pts.len() == n {
            pts.sort();
            pts.dedup();
        }
    }
    pts
}

/// Base function on `[-a, b]` with `a, b` in `]0, 1]`.
pub fn base(rng: &mut impl Rng) -> PiecewiseFunction {
    let lo = -q(rng.gen_range(1..=MAX_ENTRY), MAX_ENTRY);
    let hi = q(rng.gen_range(1..=MAX_ENTRY), MAX_ENTRY);
    let pieces = rng.gen_range(1..=MAX_PIECES);
    let mut breakpoints = vec![lo.clone()];
    breakpoints.extend(interior_points(rng, &lo, &hi, pieces - 1));
    breakpoints.push(hi);
    let polys = (0..pieces).map(|_| polynomial(rng, MAX_DEGREE)).collect();
    let values = breakpoints.iter().map(|_| coefficient(rng)).collect();
    PiecewiseFunction::new(breakpoints, polys, values).expect("valid random model")
}

pub fn unmodified(rng: &mut impl Rng) -> FunctionModel {
    FunctionModel::unmodified(base(rng))
}

/// Random base modified at `n` random rational points.
pub fn modified(rng: &mut impl Rng, n: usize) -> FunctionModel {
    let b = base(rng);
    let pts = interior_points(rng, b.domain_lo(), b.domain_hi(), n);
    let mods = pts.into_iter().map(|x| (x, coefficient(rng))).collect();
    FunctionModel::new(b, Some(CountableModification::Finite(mods))).expect("valid modification")
}

/// The corpus used by the acceptance suite: `count` instances with 1000
/// modification points each.
pub fn corpus(seed: u64, count: usize) -> Vec<FunctionModel> {
    let mut r = rng(seed);
    (0..count).map(|_| modified(&mut r, 1000)).collect()
}

/// Exact integral of the base function via piece antiderivatives.
pub fn antiderivative_integral(f: &PiecewiseFunction) -> Rational {
    let mut total = Rational::zero();
    for (i, p) in f.pieces().iter().enumerate() {
        let (a, b) = (&f.breakpoints()[i], &f.breakpoints()[i + 1]);
        for (k, c) in p.coeffs().iter().enumerate() {
            let e = (k + 1) as i32;
            let n = Rational::from_integer(BigInt::from(k + 1));
            total += c * (pow(b, e) - pow(a, e)) / n;
        }
    }
    total
}

pub fn pow(x: &Rational, e: i32) -> Rational {
    num_traits::Pow::pow(x, e)
}

pub const WINDOW_SAMPLES: i64 = 1000;

/// Shrinking-window estimate of `(f*(x), f_*(x))`: the extreme values of `f`
/// over [`WINDOW_SAMPLES`] evenly spaced points of `[x - eps, x + eps]`
/// clipped to the domain, plus every breakpoint and modification point
/// inside the window.
pub fn window_estimate(f: &FunctionModel, x: &Rational, eps: &Rational) -> (Rational, Rational) {
    let lo = std::cmp::max(x - eps, f.domain_lo().clone());
    let hi = std::cmp::min(x + eps, f.domain_hi().clone());
    let mut samples: Vec<Rational> =
        (0..WINDOW_SAMPLES).map(|i| &lo + (&hi - &lo) * q(i, WINDOW_SAMPLES - 1)).collect();
    let inside = |y: &Rational| &lo <= y && y <= &hi;
    samples.extend(f.base().breakpoints().iter().filter(|y| inside(y)).cloned());
    samples.extend(f.finite_points().iter().map(|(y, _)| y).filter(|y| inside(y)).cloned());
    samples.push(x.clone());
    let values: Vec<Rational> = samples.iter().map(|y| f.evaluate(y).expect("inside domain")).collect();
    let max = values.iter().max().expect("nonempty").clone();
    let min = values.iter().min().expect("nonempty").clone();
    (max, min)
}

const GARBAGE: [&str; 12] = ["1/0", "abc", "1.5", "1/", "/2", "--3", "1e3", "0x1", "+2", "\u{bd}", "1/-2", "NaN"];

/// A spec that must fail to parse: a printed random model with one
/// destructive edit applied.
pub fn malformed_spec(rng: &mut impl Rng) -> String {
    let mods = if rng.gen_bool(0.5) { 0 } else { rng.gen_range(1..5) };
    let f = if mods == 0 { unmodified(rng) } else { modified(rng, mods) };
    let text = semicont::cli::print_spec(&f);
    let mut lines: Vec<String> = text.lines().map(String::from).collect();
    let find = |lines: &[String], head: &str| lines.iter().position(|l| l.starts_with(head)).expect("directive");
    match rng.gen_range(0..12) {
        0 => {
            // Garbage in a numeric field.
            let candidates: Vec<(usize, usize)> = lines
                .iter()
                .enumerate()
                .filter(|(_, l)| !l.starts_with("modify"))
                .flat_map(|(i, l)| {
                    let piece = l.starts_with("piece");
                    (1..l.split_whitespace().count()).filter(move |&k| !(piece && k == 2)).map(move |k| (i, k))
                })
                .collect();
            let (i, k) = candidates[rng.gen_range(0..candidates.len())];
            let mut tokens: Vec<&str> = lines[i].split_whitespace().collect();
            tokens[k] = GARBAGE[rng.gen_range(0..GARBAGE.len())];
            lines[i] = tokens.join(" ");
        }
        1 => {
            let head = ["domain", "breakpoints", "values"][rng.gen_range(0..3)];
            lines.remove(find(&lines, head));
        }
        2 => {
            let i = find(&lines, "piece");
            let dup = lines[i].clone();
            lines.insert(i + 1, dup);
        }
        3 => {
            lines.remove(find(&lines, "piece"));
        }
        4 => {
            let i = find(&lines, "values");
            lines[i].push_str(" 7");
        }
        5 => {
            let i = find(&lines, "breakpoints");
            let mut tokens: Vec<String> = lines[i].split_whitespace().map(String::from).collect();
            let k = rng.gen_range(1..tokens.len() - 1);
            tokens.swap(k, k + 1);
            lines[i] = tokens.join(" ");
        }
        6 => {
            let at = rng.gen_range(0..=lines.len());
            lines.insert(at, "frobnicate 1 2".into());
        }
        7 => {
            let i = find(&lines, "piece");
            lines[i] = lines[i].replacen(" coeffs", "", 1);
        }
        8 => {
            let i = find(&lines, "piece");
            let index: String = lines[i].split_whitespace().nth(1).unwrap().into();
            let coeffs = vec!["1"; 14].join(" ");
            lines[i] = format!("piece {index} coeffs {coeffs}");
        }
        9 => {
            lines.retain(|l| !l.starts_with("modify"));
            lines.push("modify finite (5,1)".into());
        }
        10 => {
            lines.retain(|l| !l.starts_with("modify"));
            lines.push("modify dense integers 1".into());
        }
        _ => {
            let i = rng.gen_range(0..lines.len());
            lines[i] = lines[i].replacen(|c: char| c.is_ascii_lowercase(), "@", 1);
        }
    }
    let mut out = lines.join("\n");
    out.push('\n');
    out
}

/// Whether `err` is `path:line:col: message` for the given path.
pub fn is_positioned(err: &str, path: &str) -> bool {
    let Some(rest) = err.strip_prefix(path).and_then(|r| r.strip_prefix(':')) else {
        return false;
    };
    let mut parts = rest.splitn(3, ':');
    let line = parts.next().and_then(|s| s.parse::<usize>().ok());
    let col = parts.next().and_then(|s| s.parse::<usize>().ok());
    let msg = parts.next().unwrap_or("");
    matches!((line, col), (Some(l), Some(c)) if l >= 1 && c >= 1) && msg.starts_with(' ') && msg.trim().len() > 1
}
