//! Adaptive composite Simpson quadrature.

use num_complex::Complex64;

const MAX_DEPTH: u32 = 48;

/// Integrates `f` over `[a, b]` to absolute tolerance `tol`.
///
/// The interval is first cut into `panels` equal pieces so that oscillatory
/// integrands are resolved before the adaptive refinement starts.
pub fn simpson<F>(f: F, a: f64, b: f64, tol: f64, panels: usize) -> Complex64
where
    F: Fn(f64) -> Complex64,
{
    if !(b > a) {
        return Complex64::new(0.0, 0.0);
    }
    let panels = panels.max(1);
    let h = (b - a) / panels as f64;
    let per = tol / panels as f64;
    (0..panels)
        .map(|k| {
            let lo = a + h * k as f64;
            let hi = if k + 1 == panels { b } else { lo + h };
            let mid = 0.5 * (lo + hi);
            let (flo, fmid, fhi) = (f(lo), f(mid), f(hi));
            let whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
            refine(&f, lo, hi, flo, fmid, fhi, whole, per, MAX_DEPTH)
        })
        .sum()
}

pub fn simpson_real<F>(f: F, a: f64, b: f64, tol: f64, panels: usize) -> f64
where
    F: Fn(f64) -> f64,
{
    simpson(|t| Complex64::new(f(t), 0.0), a, b, tol, panels).re
}

#[allow(clippy::too_many_arguments)]
fn refine<F>(
    f: &F,
    a: f64,
    b: f64,
    fa: Complex64,
    fm: Complex64,
    fb: Complex64,
    whole: Complex64,
    tol: f64,
    depth: u32,
) -> Complex64
where
    F: Fn(f64) -> Complex64,
{
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.norm() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    refine(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) + refine(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
}
