//! Zeros of `Lambda(s, chi)` with `|Im s| <= T`, counted by the argument
//! principle and located on the critical line.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::handle::LSeriesHandle;
use super::theta::ThetaEngine;
use crate::error::{Error, Result};

const SCAN_STEP: f64 = 0.02;
const RESCANS: u32 = 3;
const REFINE_WIDTH: f64 = 1e-10;

/// Critical-line zeros of one L-function up to height `T`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZeroList {
    /// sorted ordinates `gamma` with `|gamma| <= T`
    pub ordinates: Vec<f64>,
    /// half-width of the final bracket of each ordinate
    pub errors: Vec<f64>,
    pub height: f64,
    /// zero count from the argument principle
    pub verified_count: usize,
}

/// `(1/pi) (arg Lambda(1/2 + iT) - arg Lambda(1/2 - iT))` with the argument
/// carried continuously through `Re s = 2`.
///
/// By the functional equation the left half of the contour contributes the
/// same as the right half, so this is the number of zeros with `|Im s| < T`.
pub fn argument_count(e: &ThetaEngine<'_>, t: f64) -> Result<f64> {
    Ok((phase_on_line(e, t)? - phase_on_line(e, -t)?) / std::f64::consts::PI)
}

/// Continuous `arg Lambda(1/2 + it)` anchored on `Re s = 2`.
fn phase_on_line(e: &ThetaEngine<'_>, t: f64) -> Result<f64> {
    let h = e.handle();
    let right = Complex64::new(2.0, t);
    let l = e.l_value(right)?;
    // |L(2 + it) - 1| < 1, so the principal argument is continuous in t
    let mut phase = h.log_gamma_factor(right)?.im + l.arg();
    let start = e.rotated(right)?;
    let theta = start.theta;
    let mut prev = start.g;
    let mut sigma = 2.0;
    let mut step: f64 = 0.1;
    while sigma > 0.5 {
        let next_sigma = (sigma - step).max(0.5);
        let g = e.rotated(Complex64::new(next_sigma, t))?.g;
        let d = (g / prev).arg();
        if d.abs() > 0.5 {
            step *= 0.5;
            if step < 1e-7 {
                return Err(Error::ZeroFinder(format!("argument jump near height {t}: zero off the line?")));
            }
            continue;
        }
        phase += d + theta * (next_sigma - sigma);
        prev = g;
        sigma = next_sigma;
        step = (step * 1.5).min(0.1);
    }
    Ok(phase)
}

/// Zeros of the handle's L-function with `|gamma| <= height`.
pub fn find_zeros(h: &LSeriesHandle, height: f64) -> Result<ZeroList> {
    find_zeros_with(&ThetaEngine::new(h), height)
}

/// As [`find_zeros`], reusing an engine.
pub fn find_zeros_with(e: &ThetaEngine<'_>, height: f64) -> Result<ZeroList> {
    if !(height > 0.0 && height <= 50.0) {
        return Err(Error::Precondition(format!("height {height} outside (0, 50]")));
    }
    let counted = argument_count(e, height)?;
    let verified = counted.round();
    if (counted - verified).abs() > 0.1 || verified < 0.0 {
        return Err(Error::ZeroFinder(format!("argument count {counted} is not an integer")));
    }
    let verified = verified as usize;
    let z = |t: f64| e.hardy(t).map(|v| v.0);
    let mut step = SCAN_STEP;
    let mut found = 0;
    for _ in 0..=RESCANS {
        let n = (2.0 * height / step).ceil() as usize;
        let grid: Vec<f64> = (0..=n).map(|k| -height + 2.0 * height * k as f64 / n as f64).collect();
        let values = grid.iter().map(|&t| z(t)).collect::<Result<Vec<_>>>()?;
        let brackets: Vec<(f64, f64, f64, f64)> = grid
            .windows(2)
            .zip(values.windows(2))
            .filter(|(_, v)| v[0] * v[1] < 0.0)
            .map(|(t, v)| (t[0], t[1], v[0], v[1]))
            .collect();
        found = brackets.len();
        if found == verified {
            let mut ordinates = Vec::with_capacity(found);
            let mut errors = Vec::with_capacity(found);
            for (a, b, fa, fb) in brackets {
                let (root, err) = illinois(&z, a, b, fa, fb)?;
                ordinates.push(root);
                errors.push(err);
            }
            return Ok(ZeroList { ordinates, errors, height, verified_count: verified });
        }
        step *= 0.5;
    }
    Err(Error::ZeroFinder(format!(
        "{found} sign changes on the critical line, argument principle gives {verified}"
    )))
}

/// Bracketed root by the Illinois variant of regula falsi.
fn illinois<F: Fn(f64) -> Result<f64>>(
    f: &F,
    mut a: f64,
    mut b: f64,
    mut fa: f64,
    mut fb: f64,
) -> Result<(f64, f64)> {
    let mut side = 0;
    for _ in 0..200 {
        if b - a <= REFINE_WIDTH {
            break;
        }
        let mut c = (a * fb - b * fa) / (fb - fa);
        if !(c > a && c < b) {
            c = 0.5 * (a + b);
        }
        let fc = f(c)?;
        if fc == 0.0 {
            return Ok((c, 0.0));
        }
        if fc * fb < 0.0 {
            a = b;
            fa = fb;
            side = 0;
        } else if side == 1 {
            fa *= 0.5;
        } else {
            side = 1;
        }
        b = c;
        fb = fc;
        if a > b {
            std::mem::swap(&mut a, &mut b);
            std::mem::swap(&mut fa, &mut fb);
        }
    }
    Ok((0.5 * (a + b), 0.5 * (b - a)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lfunctions::Side;
    use crate::primes::sieve_family;

    fn handle(pi: &crate::Eisenstein, t: f64) -> LSeriesHandle {
        let n = pi.norm().unwrap() as u64;
        LSeriesHandle::hecke(pi, LSeriesHandle::required_cutoff(Side::Hecke, n, t)).unwrap()
    }

    #[test]
    fn illinois_finds_a_simple_root() {
        let f = |x: f64| Ok(x.cos() - x);
        let (r, e) = illinois(&f, 0.0, 1.0, 1.0, 1f64.cos() - 1.0).unwrap();
        assert!((r - 0.739_085_133_215_160_6).abs() < 1e-9 && e < 1e-9);
    }

    #[test]
    fn hardy_function_is_real() {
        let pi = sieve_family(2000, false).unwrap()[3].pi;
        let h = handle(&pi, 20.0);
        let e = ThetaEngine::new(&h);
        for t in [-17.3, -2.0, 0.0, 4.4, 19.9] {
            let (re, im) = e.hardy(t).unwrap();
            assert!(
                im.abs() <= 1e-8 * re.abs().max(1e-6 * e.completed(Complex64::new(2.0, t)).unwrap().norm()),
                "t = {t}: {re} {im}"
            );
        }
    }

    #[test]
    fn counts_agree_and_conjugate_zeros_reflect() {
        let fam = sieve_family(5000, false).unwrap();
        for p in fam.iter().step_by(3).take(4) {
            let h = handle(&p.pi, 20.0);
            let zl = find_zeros(&h, 20.0).unwrap();
            assert_eq!(zl.ordinates.len(), zl.verified_count);
            assert!(zl.ordinates.windows(2).all(|w| w[0] < w[1]));
            let zb = find_zeros(&h.conj(), 20.0).unwrap();
            assert_eq!(zb.verified_count, zl.verified_count);
            for (a, b) in zl.ordinates.iter().zip(zb.ordinates.iter().rev()) {
                assert!((a + b).abs() < 1e-7, "{a} vs {b}");
            }
        }
    }

    #[test]
    fn empty_below_the_first_zero() {
        let pi = sieve_family(200, true).unwrap()[0].pi;
        let h = handle(&pi, 20.0);
        let zl = find_zeros(&h, 20.0).unwrap();
        let lowest = zl.ordinates.iter().map(|g| g.abs()).fold(f64::INFINITY, f64::min);
        let small = find_zeros(&h, 0.5 * lowest).unwrap();
        assert!(small.ordinates.is_empty() && small.verified_count == 0);
    }
}
