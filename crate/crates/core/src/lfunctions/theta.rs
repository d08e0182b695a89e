//! Completed L-values as a rotated Mellin integral of the theta series.
//!
//! With `f(y) = (1/kappa) sum c_n exp(-(n y / Q)^{1/kappa})` one has
//! `Lambda(s) = int_0^inf f(y) y^s dy/y`. Rotating the ray to `y = e^{i theta} e^u`
//! gives `e^{-i theta s} Lambda(s) = int f(e^{i theta} e^u) e^{us} du`, and the
//! functional equation supplies `f` for `u < 0` from conjugated samples.
//! The integrand is analytic in a strip, so the trapezoid rule converges
//! geometrically. Samples depend only on the rotation, so every `s` in a
//! band of heights reuses them.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex};

use num_complex::Complex64;

use super::handle::LSeriesHandle;
use crate::analytic::digamma;
use crate::error::{Error, Result};

/// Terms with `Re (n y / Q)^{1/kappa}` beyond this are dropped.
pub(crate) const EXP_CUT: f64 = 70.0;
/// Allowed growth `|Im s| * (strip half-width)` inside a band.
const ROTATION_BUDGET: f64 = 10.0;
/// Target trapezoid aliasing exponent.
const TRAPEZOID_DIGITS: f64 = 47.0;
/// Admissible real parts of `s`.
pub const SIGMA_RANGE: (f64, f64) = (-1.5, 2.5);
const BAND_RATIO: f64 = 1.5;
/// Most theta samples one band may hold.
const SAMPLE_CAP: usize = 1 << 20;

fn first_band_top(kappa: f64) -> f64 {
    2.0 * ROTATION_BUDGET / (PI * kappa)
}

/// Band index for height `t`: 0 for `|t| <= t1`, then `±k` on geometric rings.
fn band_index(kappa: f64, t: f64) -> i32 {
    let t1 = first_band_top(kappa);
    if t.abs() <= t1 {
        0
    } else {
        let k = ((t.abs() / t1).ln() / BAND_RATIO.ln()).ceil() as i32;
        k.max(1) * t.signum() as i32
    }
}

/// Rotation angle and strip half-width of a band.
fn band_geometry(kappa: f64, k: i32) -> (f64, f64) {
    if k == 0 {
        return (0.0, kappa * PI / 2.0);
    }
    let top = first_band_top(kappa) * BAND_RATIO.powi(k.abs());
    let d = ROTATION_BUDGET / top;
    ((kappa * PI / 2.0 - d) * k.signum() as f64, d)
}

/// `cos(theta / kappa)` for the band that contains height `t`.
pub(crate) fn worst_cos(kappa: f64, t: f64) -> f64 {
    let (theta, _) = band_geometry(kappa, band_index(kappa, t));
    (theta / kappa).cos()
}

struct Band {
    theta: f64,
    du: f64,
    /// samples at `u_k = (k - half) du`
    half: usize,
    samples: Vec<Complex64>,
}

impl Band {
    fn build(h: &LSeriesHandle, k: i32) -> Result<Self> {
        let kappa = h.kappa;
        let (theta, d) = band_geometry(kappa, k);
        let du = 2.0 * PI * 0.8 * d / (TRAPEZOID_DIGITS + ROTATION_BUDGET);
        let cos = (theta / kappa).cos();
        let growth = SIGMA_RANGE.1.max(1.0 - SIGMA_RANGE.0);
        let mut umax = h.q.ln().max(0.0);
        while (umax.exp() / h.q).powf(1.0 / kappa) * cos - growth * umax < TRAPEZOID_DIGITS {
            umax += 0.05;
        }
        let half = (umax / du).ceil() as usize;
        if half > SAMPLE_CAP / 2 {
            return Err(Error::ResourceLimit(format!(
                "rotation {theta:.6} needs {} theta samples, cap is {SAMPLE_CAP}",
                2 * half + 1
            )));
        }
        let need = h.q * (EXP_CUT / cos).powf(kappa);
        if need > h.cutoff() as f64 {
            return Err(Error::AccuracyBudget(format!(
                "coefficients up to {need:.0} needed at rotation {theta:.4}, handle has {}",
                h.cutoff()
            )));
        }
        let delta = Complex64::from_polar(1.0, theta);
        let mut samples = vec![Complex64::new(0.0, 0.0); 2 * half + 1];
        for j in 0..=half {
            let v = j as f64 * du;
            let g = theta_sum(h, delta * (v.exp() / h.q), cos);
            samples[half + j] = g;
            if j > 0 {
                samples[half - j] = h.root_number * delta.conj() * v.exp() * g.conj();
            }
        }
        Ok(Self { theta, du, half, samples })
    }

    /// `(G(s), G'(s))` with `G(s) = e^{-i theta s} Lambda(s)`.
    fn eval(&self, s: Complex64) -> (Complex64, Complex64) {
        let step = (s * self.du).exp();
        let u0 = -(self.half as f64) * self.du;
        let mut e = (s * u0).exp();
        let mut g = Complex64::new(0.0, 0.0);
        let mut dg = Complex64::new(0.0, 0.0);
        for (k, f) in self.samples.iter().enumerate() {
            if k % 64 == 0 {
                e = (s * (u0 + k as f64 * self.du)).exp();
            }
            let u = u0 + k as f64 * self.du;
            let t = f * e;
            g += t;
            dg += t * u;
            e *= step;
        }
        (g * self.du, dg * self.du)
    }
}

/// `(1/kappa) sum c_n exp(-(n z)^{1/kappa})` for `z = y / Q`.
fn theta_sum(h: &LSeriesHandle, z: Complex64, cos: f64) -> Complex64 {
    let kappa = h.kappa;
    let nmax = (EXP_CUT / cos).powf(kappa) / z.norm();
    let mut acc = Complex64::new(0.0, 0.0);
    if kappa == 1.0 {
        let r = (-z).exp();
        let mut table = [Complex64::new(1.0, 0.0); 65];
        for g in 1..table.len() {
            table[g] = table[g - 1] * r;
        }
        let mut cur = Complex64::new(1.0, 0.0);
        let mut prev = 0u64;
        for &(n, c) in h.coefficients() {
            if n as f64 > nmax {
                break;
            }
            let gap = n - prev;
            cur *= if gap < table.len() as u64 { table[gap as usize] } else { r.powu(gap as u32) };
            prev = n;
            acc += c * cur;
        }
        acc
    } else {
        let z2 = z.powf(1.0 / kappa);
        for &(n, c) in h.coefficients() {
            if n as f64 > nmax {
                break;
            }
            acc += c * (-z2 * (n as f64).powf(1.0 / kappa)).exp();
        }
        acc / kappa
    }
}

/// `kappa s` is a pole of Gamma, where `L` has a trivial zero.
pub(crate) fn trivial_zero(kappa: f64, s: Complex64) -> bool {
    let z = s * kappa;
    z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0
}

/// Rotated completed value at one point.
#[derive(Clone, Copy, Debug)]
pub struct Rotated {
    /// `e^{-i theta s} Lambda(s)`
    pub g: Complex64,
    pub dg: Complex64,
    pub theta: f64,
}

impl Rotated {
    pub fn lambda(&self, s: Complex64) -> Complex64 {
        (Complex64::new(0.0, self.theta) * s).exp() * self.g
    }

    /// `Lambda'(s) / Lambda(s)`.
    pub fn lambda_logderiv(&self) -> Complex64 {
        self.dg / self.g + Complex64::new(0.0, self.theta)
    }
}

/// Fast evaluator of `Lambda(s)` for one handle, caching samples per band.
pub struct ThetaEngine<'a> {
    handle: &'a LSeriesHandle,
    bands: Mutex<BTreeMap<i32, Arc<Band>>>,
}

impl<'a> ThetaEngine<'a> {
    pub fn new(handle: &'a LSeriesHandle) -> Self {
        Self { handle, bands: Mutex::new(BTreeMap::new()) }
    }

    pub fn handle(&self) -> &LSeriesHandle {
        self.handle
    }

    fn band(&self, t: f64) -> Result<Arc<Band>> {
        let k = band_index(self.handle.kappa, t);
        if let Some(b) = self.bands.lock().expect("band cache poisoned").get(&k) {
            return Ok(b.clone());
        }
        let b = Arc::new(Band::build(self.handle, k)?);
        self.bands.lock().expect("band cache poisoned").insert(k, b.clone());
        Ok(b)
    }

    pub fn rotated(&self, s: Complex64) -> Result<Rotated> {
        if s.re < SIGMA_RANGE.0 || s.re > SIGMA_RANGE.1 {
            return Err(Error::Precondition(format!(
                "Re(s) = {} outside the supported range {:?}",
                s.re, SIGMA_RANGE
            )));
        }
        let band = self.band(s.im)?;
        let (g, dg) = band.eval(s);
        Ok(Rotated { g, dg, theta: band.theta })
    }

    /// `Lambda(s)`.
    pub fn completed(&self, s: Complex64) -> Result<Complex64> {
        Ok(self.rotated(s)?.lambda(s))
    }

    /// `L(s)`.
    pub fn l_value(&self, s: Complex64) -> Result<Complex64> {
        let r = self.rotated(s)?;
        if trivial_zero(self.handle.kappa, s) {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let lg = self.handle.log_gamma_factor(s)?;
        Ok(r.g * (Complex64::new(0.0, r.theta) * s - lg).exp())
    }

    /// `L'(s) / L(s)`.
    pub fn l_logderiv(&self, s: Complex64) -> Result<Complex64> {
        let r = self.rotated(s)?;
        let h = self.handle;
        Ok(r.lambda_logderiv() - h.q.ln() - digamma(s * h.kappa)? * h.kappa)
    }

    /// `W^{-1/2} Lambda(1/2 + it)`, real on the critical line up to rounding;
    /// returned as `(re, im)`.
    pub fn hardy(&self, t: f64) -> Result<(f64, f64)> {
        let v = self.completed(Complex64::new(0.5, t))? / self.handle.root_number.sqrt();
        Ok((v.re, v.im))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::primes::sieve_family;

    #[test]
    fn bands_are_consistent() {
        for kappa in [1.0, 0.5] {
            assert_eq!(band_index(kappa, 0.0), 0);
            for t in [7.0, 13.0, -20.0, 49.0] {
                let k = band_index(kappa, t);
                let (theta, d) = band_geometry(kappa, k);
                assert!(theta.abs() + d <= kappa * PI / 2.0 + 1e-12);
                assert!(d * t.abs() <= ROTATION_BUDGET + 1e-9, "t = {t}");
                assert_eq!(theta.signum(), t.signum());
            }
        }
    }

    #[test]
    fn matches_dirichlet_series_at_two_and_a_half() {
        let pi = sieve_family(2000, true).unwrap()[3].pi;
        for side in [super::super::Side::Hecke, super::super::Side::Dirichlet] {
            let n = pi.norm().unwrap() as u64;
            let cut = LSeriesHandle::required_cutoff(side, n, 30.0);
            let h = match side {
                super::super::Side::Hecke => LSeriesHandle::hecke(&pi, cut.max(200_000)).unwrap(),
                super::super::Side::Dirichlet => LSeriesHandle::dirichlet(&pi, cut.max(200_000)).unwrap(),
            };
            let e = ThetaEngine::new(&h);
            for t in [0.0, 4.0, -9.0, 25.0] {
                let s = Complex64::new(2.5, t);
                let direct = h.partial_sum(s, h.cutoff()).0;
                let fast = e.l_value(s).unwrap();
                assert!((direct - fast).norm() < 1e-9, "{side:?} s = {s}: {direct} vs {fast}");
            }
        }
    }

    #[test]
    fn trivial_zeros() {
        let pi = sieve_family(2000, true).unwrap()[0].pi;
        let h = LSeriesHandle::hecke(&pi, 100_000).unwrap();
        let e = ThetaEngine::new(&h);
        assert_eq!(e.l_value(Complex64::new(-1.0, 0.0)).unwrap(), Complex64::new(0.0, 0.0));
        assert!(e.l_value(Complex64::new(-1.0 + 1e-4, 0.0)).unwrap().norm() < 1e-2);
        assert!(!trivial_zero(0.5, Complex64::new(-1.0, 0.0)));
        assert!(trivial_zero(0.5, Complex64::new(-2.0, 0.0)));
    }
}
