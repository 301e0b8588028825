//! Numeric side: bump kernels and their Mellin transforms, synthetic
//! Chebotarev streams, truncated Euler products, Laurent data at `s = 1`,
//! residues of `phi~(s) X^s L(s)`, and the analytic conductor.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::chars::{inner_product, ClassFunction};
use crate::error::{Error, Result};
use crate::groups::FiniteGroup;

/// `phi(x) = exp(-1/(1-u^2))`, `u = (x-c)/r`, supported on `(c-r, c+r)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BumpKernel {
    pub c: f64,
    pub r: f64,
}

impl Default for BumpKernel {
    fn default() -> Self {
        BumpKernel { c: 1.0, r: 0.5 }
    }
}

const MELLIN_RTOL: f64 = 1e-10;

impl BumpKernel {
    pub fn new(c: f64, r: f64) -> Result<Self> {
        if !(c > 0.0 && r > 0.0 && r < c && c.is_finite()) {
            return Err(Error::Config(format!("kernel needs 0 < r < c, got c={c}, r={r}")));
        }
        Ok(BumpKernel { c, r })
    }

    pub fn eval(&self, x: f64) -> f64 {
        let u = (x - self.c) / self.r;
        if u.abs() >= 1.0 {
            0.0
        } else {
            (-1.0 / (1.0 - u * u)).exp()
        }
    }

    pub fn support(&self) -> (f64, f64) {
        (self.c - self.r, self.c + self.r)
    }

    fn integrate_real<F: Fn(f64) -> f64>(&self, f: F) -> Result<f64> {
        let (a, b) = self.support();
        let rough = quadrature::integrate(|x| f(x).abs(), a, b, 1e-6).integral.max(1e-300);
        let out = quadrature::integrate(&f, a, b, 1e-3 * MELLIN_RTOL * rough);
        if !out.integral.is_finite() || out.error_estimate > MELLIN_RTOL * rough.max(out.integral.abs()) {
            return Err(Error::Analytic(format!(
                "quadrature did not converge (estimate {:e}, error {:e})",
                out.integral, out.error_estimate
            )));
        }
        Ok(out.integral)
    }

    /// `int phi(x) x^{s-1} (log x + shift)^i dx`.
    pub fn log_moment(&self, s: Complex64, i: u32, shift: f64) -> Result<Complex64> {
        let g = |x: f64| -> Complex64 {
            let l = x.ln();
            self.eval(x) * Complex64::new(0.0, s.im * l).exp() * x.powf(s.re - 1.0) * (l + shift).powi(i as i32)
        };
        let re = self.integrate_real(|x| g(x).re)?;
        let im = if s.im == 0.0 { 0.0 } else { self.integrate_real(|x| g(x).im)? };
        Ok(Complex64::new(re, im))
    }

    /// `phi~(s) = int phi(x) x^{s-1} dx`, the Mellin transform of `phi` as a
    /// function of `x`. A formula written with `phi(s)` under the integral is
    /// read this way.
    pub fn mellin(&self, s: Complex64) -> Result<Complex64> {
        self.log_moment(s, 0, 0.0)
    }

    /// `d^i/ds^i (phi~(s) X^s)` at `s = 1`, which is `X int phi(x) (log xX)^i dx`.
    pub fn mellin_x_derivative(&self, i: u32, x: f64) -> Result<f64> {
        Ok(x * self.log_moment(Complex64::new(1.0, 0.0), i, x.ln())?.re)
    }
}

/// Which way the kernel is applied to `m`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub enum Orientation {
    /// `phi(m / X)`
    #[default]
    MOverX,
    /// `phi(X / m)`
    XOverM,
}

/// `sum_m lambda(m) phi(m/X)` (or `phi(X/m)`), with `lambda[0]` ignored.
pub fn smoothed_sum(lambda: &[Complex64], phi: &BumpKernel, x: f64, orient: Orientation) -> Result<Complex64> {
    let (a, b) = phi.support();
    let (lo, hi) = match orient {
        Orientation::MOverX => (x * a, x * b),
        Orientation::XOverM => (x / b, x / a),
    };
    let m_max = lambda.len().saturating_sub(1) as f64;
    if m_max < hi.floor() {
        return Err(Error::Analytic(format!("coefficients stop at {m_max} but the kernel reaches {hi:.1}")));
    }
    let start = (lo.floor() as usize).max(1);
    let end = (hi.ceil() as usize).min(lambda.len() - 1);
    if start > end {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let chunk = 4096;
    let parts: Vec<Complex64> = (start..=end)
        .collect::<Vec<_>>()
        .par_chunks(chunk)
        .map(|ms| {
            ms.iter()
                .map(|&m| {
                    let t = match orient {
                        Orientation::MOverX => m as f64 / x,
                        Orientation::XOverM => x / m as f64,
                    };
                    lambda[m] * phi.eval(t)
                })
                .sum::<Complex64>()
        })
        .collect();
    Ok(parts.into_iter().sum())
}

// ------------------------------------------------------------------ streams

/// One base prime with its sampled Frobenius.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StreamPrime {
    pub p: u64,
    pub element: usize,
    pub class: usize,
}

pub fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    primal::Sieve::new(bound as usize).primes_from(0).map(|p| p as u64).take_while(|&p| p <= bound).collect()
}

/// Frobenius elements drawn uniformly from `g` (so classes with probability `|C|/|G|`),
/// after a fixed prefix of elements for the first primes.
pub fn chebotarev_stream_with_prefix(g: &FiniteGroup, seed: u64, bound: u64, prefix: &[usize]) -> Vec<StreamPrime> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    primes_up_to(bound)
        .into_iter()
        .enumerate()
        .map(|(i, p)| {
            let element = match prefix.get(i) {
                Some(&x) => x,
                None => rng.gen_range(0..g.order()),
            };
            StreamPrime { p, element, class: g.class_of(element) }
        })
        .collect()
}

pub fn chebotarev_stream(g: &FiniteGroup, seed: u64, bound: u64) -> Vec<StreamPrime> {
    chebotarev_stream_with_prefix(g, seed, bound, &[])
}

/// Observed class counts of a stream.
pub fn class_counts(g: &FiniteGroup, stream: &[StreamPrime]) -> Vec<u64> {
    let mut c = vec![0u64; g.num_classes()];
    for s in stream {
        c[s.class] += 1;
    }
    c
}

/// Pearson statistic of observed counts against `|C|/|G|`.
pub fn chi_square_statistic(g: &FiniteGroup, counts: &[u64]) -> f64 {
    let n: u64 = counts.iter().sum();
    counts
        .iter()
        .enumerate()
        .map(|(c, &o)| {
            let e = n as f64 * g.class_size(c) as f64 / g.order() as f64;
            (o as f64 - e).powi(2) / e
        })
        .sum()
}

// ------------------------------------------------------------------ Euler products

/// A local factor `det(1 - M q^{-s})^{-1}` with `M` of finite order.
#[derive(Clone, Debug, Serialize)]
pub struct EulerEntry {
    pub p: u64,
    /// Inertia degree; `q = p^f`.
    pub f: u32,
    pub class_label: String,
    /// `traces[i] = tr(M^i)` for `i` in one period (`traces[0]` is the degree).
    pub traces: Vec<Complex64>,
}

impl EulerEntry {
    pub fn trace(&self, m: usize) -> Complex64 {
        self.traces[m % self.traces.len()]
    }

    pub fn q(&self) -> Option<u64> {
        self.p.checked_pow(self.f)
    }
}

/// Truncated Euler product over all base primes up to `bound`.
#[derive(Clone, Debug, Serialize)]
pub struct EulerData {
    pub entries: Vec<EulerEntry>,
    pub bound: u64,
    pub num_primes: usize,
}

impl EulerData {
    pub fn new(mut entries: Vec<EulerEntry>, bound: u64) -> Result<Self> {
        for e in &entries {
            if e.traces.is_empty() || e.p > bound || e.f == 0 {
                return Err(Error::Analytic(format!("malformed local factor at p = {}", e.p)));
            }
        }
        entries.sort_by(|a, b| (a.p, a.f).cmp(&(b.p, b.f)));
        let num_primes = primes_up_to(bound).len();
        Ok(EulerData { entries, bound, num_primes })
    }

    /// Build from a stream, with `local(prime)` returning `(f, class label, traces)` per place.
    pub fn from_stream<F>(stream: &[StreamPrime], bound: u64, local: F) -> Result<Self>
    where
        F: Fn(&StreamPrime) -> Vec<(u32, String, Vec<Complex64>)> + Sync,
    {
        let entries: Vec<EulerEntry> = stream
            .par_iter()
            .filter(|s| s.p <= bound)
            .flat_map_iter(|s| {
                local(s).into_iter().map(move |(f, class_label, traces)| EulerEntry { p: s.p, f, class_label, traces })
            })
            .collect();
        Self::new(entries, bound)
    }

    /// Dirichlet coefficients `lambda(1..=m)` of the truncated product.
    pub fn dirichlet(&self, m: usize) -> Vec<Complex64> {
        let mut lam = vec![Complex64::new(0.0, 0.0); m + 1];
        if m == 0 {
            return lam;
        }
        lam[1] = Complex64::new(1.0, 0.0);
        for e in &self.entries {
            let Some(q) = e.q().filter(|&q| q as usize <= m) else { continue };
            let q = q as usize;
            let mut h = vec![Complex64::new(1.0, 0.0)];
            let mut qj = q;
            let mut j = 1;
            while qj <= m {
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 1..=j {
                    acc += e.trace(k) * h[j - k];
                }
                h.push(acc / j as f64);
                j += 1;
                qj = match qj.checked_mul(q) {
                    Some(x) => x,
                    None => break,
                };
            }
            for t in (1..=m).rev() {
                let mut d = t;
                let mut acc = lam[t];
                for hj in h.iter().skip(1) {
                    if d % q != 0 {
                        break;
                    }
                    d /= q;
                    acc += hj * lam[d];
                }
                lam[t] = acc;
            }
        }
        lam
    }

    /// Mean and standard error over base primes of `sum_{w | p, f = 1} tr M_w`;
    /// the mean tends to the pole order.
    pub fn empirical_pole_order(&self) -> (f64, f64) {
        let mut per_prime: std::collections::BTreeMap<u64, f64> = std::collections::BTreeMap::new();
        for e in self.entries.iter().filter(|e| e.f == 1) {
            *per_prime.entry(e.p).or_insert(0.0) += e.trace(1).re;
        }
        let n = self.num_primes.max(1) as f64;
        let mean = per_prime.values().sum::<f64>() / n;
        let sq = per_prime.values().map(|x| x * x).sum::<f64>() / n;
        (mean, ((sq - mean * mean).max(0.0) / n).sqrt())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PoleProfile {
    pub order: usize,
    /// `c_{-k}, ..., c_0`.
    pub coeffs: Vec<Complex64>,
    pub empirical_order: f64,
    pub empirical_stderr: f64,
}

impl PoleProfile {
    /// `c_j` for `-k <= j <= 0`.
    pub fn c(&self, j: i64) -> Complex64 {
        let k = self.order as i64;
        if j < -k || j > 0 {
            Complex64::new(0.0, 0.0)
        } else {
            self.coeffs[(j + k) as usize]
        }
    }

    pub fn zero() -> Self {
        PoleProfile { order: 0, coeffs: vec![Complex64::new(0.0, 0.0)], empirical_order: 0.0, empirical_stderr: 0.0 }
    }
}

const BERNOULLI: [f64; 10] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
];

/// Riemann zeta by Euler-Maclaurin with 20 terms and 10 correction terms.
pub fn zeta(s: Complex64) -> Complex64 {
    let n = 20.0f64;
    let mut acc: Complex64 = (1..20).map(|k| Complex64::new(k as f64, 0.0).powc(-s)).sum();
    let nps = Complex64::new(n, 0.0).powc(-s);
    acc += nps * n / (s - 1.0) + nps * 0.5;
    let mut rising = s;
    let mut fact = 2.0;
    let mut npow = nps / n;
    for (j, b) in BERNOULLI.iter().enumerate() {
        acc += rising * npow * (*b / fact);
        let j2 = 2.0 * (j as f64 + 1.0);
        rising = rising * (s + j2 - 1.0) * (s + j2);
        fact *= (j2 + 1.0) * (j2 + 2.0);
        npow /= n * n;
    }
    acc
}

/// Taylor coefficients of `(s-1) zeta(s)` at `s = 1`, from a Cauchy integral on `|s-1| = 1/2`.
pub fn zeta_residue_taylor(terms: usize) -> Vec<f64> {
    let pts = 64;
    let rad = 0.5;
    (0..terms)
        .map(|i| {
            let s: Complex64 = (0..pts)
                .map(|j| {
                    let th = 2.0 * PI * j as f64 / pts as f64;
                    let t = Complex64::from_polar(rad, th);
                    t * zeta(t + 1.0) * Complex64::from_polar(1.0, -th * i as f64)
                })
                .sum();
            (s / pts as f64).re / rad.powi(i as i32)
        })
        .collect()
}

fn series_mul(a: &[Complex64], b: &[Complex64], n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|i| (0..=i).filter(|&j| j < a.len() && i - j < b.len()).map(|j| a[j] * b[i - j]).sum())
        .collect()
}

fn series_exp(a: &[Complex64], n: usize) -> Vec<Complex64> {
    let mut b = vec![a[0].exp()];
    for i in 1..n {
        let s: Complex64 = (1..=i).filter(|&k| k < a.len()).map(|k| a[k] * b[i - k] * k as f64).sum();
        b.push(s / i as f64);
    }
    b
}

/// Laurent data at `s = 1`, writing `L = zeta^k exp(G)` with `G` summed from the local factors.
pub fn laurent_at_1(e: &EulerData, k_hint: Option<usize>) -> Result<PoleProfile> {
    let (emp, se) = e.empirical_pole_order();
    let k = match k_hint {
        Some(k) => k,
        None => {
            let r = emp.round();
            if r < 0.0 {
                return Err(Error::Analytic(format!("negative pole order estimate {emp}")));
            }
            r as usize
        }
    };
    if e.num_primes >= 1000 && (emp - k as f64).abs() > (5.0 * se).max(0.25) {
        return Err(Error::Analytic(format!(
            "pole order {k} does not match the stream average {emp:.3} +- {se:.3} over {} primes up to {}",
            e.num_primes, e.bound
        )));
    }
    let terms = k + 1;
    let mut g = vec![Complex64::new(0.0, 0.0); terms];
    let fact: Vec<f64> = (0..terms).scan(1.0, |f, i| {
        let out = *f;
        *f *= (i + 1) as f64;
        Some(out)
    }).collect();
    // sum_m c_m/m q^{-m} (-m log q)^i / i!
    let add_local = |g: &mut Vec<Complex64>, lq: f64, coeff: &dyn Fn(usize) -> Complex64| {
        let mut m = 1usize;
        loop {
            let w = (-(m as f64) * lq).exp();
            if w < 1e-18 {
                break;
            }
            let c = coeff(m) / m as f64 * w;
            let mut pw = 1.0;
            for (i, gi) in g.iter_mut().enumerate() {
                *gi += c * pw / fact[i];
                pw *= -(m as f64) * lq;
            }
            m += 1;
        }
    };
    for ent in &e.entries {
        let lq = ent.f as f64 * (ent.p as f64).ln();
        add_local(&mut g, lq, &|m| ent.trace(m));
    }
    let kk = Complex64::new(k as f64, 0.0);
    for p in primes_up_to(e.bound) {
        add_local(&mut g, (p as f64).ln(), &|_| -kk);
    }
    let z: Vec<Complex64> = zeta_residue_taylor(terms).into_iter().map(|x| Complex64::new(x, 0.0)).collect();
    let mut zk = vec![Complex64::new(1.0, 0.0)];
    for _ in 0..k {
        zk = series_mul(&zk, &z, terms);
    }
    let coeffs = series_mul(&zk, &series_exp(&g, terms), terms);
    if k > 0 && coeffs[0].norm() < 1e-12 {
        return Err(Error::Analytic("leading Laurent coefficient vanishes".into()));
    }
    Ok(PoleProfile { order: k, coeffs, empirical_order: emp, empirical_stderr: se })
}

/// `Res_{s=1} phi~(s) X^s L(s) = sum_{i<k} c_{-(i+1)} D_i / i!` with `D_i = d^i/ds^i (phi~(s) X^s)|_{s=1}`.
pub fn residue_term(phi: &BumpKernel, x: f64, p: &PoleProfile) -> Result<Complex64> {
    let mut acc = Complex64::new(0.0, 0.0);
    let mut fact = 1.0;
    for i in 0..p.order {
        if i > 0 {
            fact *= i as f64;
        }
        acc += p.c(-(i as i64 + 1)) * phi.mellin_x_derivative(i as u32, x)? / fact;
    }
    Ok(acc)
}

/// Number of pairs `(j1, j2)` with `list1[j1]` equal to the dual of `list2[j2]`.
pub fn hom_i_dim(list1: &[ClassFunction], list2: &[ClassFunction]) -> usize {
    list1.iter().map(|a| list2.iter().filter(|b| *a == b.dual()).count()).sum()
}

/// `<chi1 (x) conj(chi2), 1>`, the pole order of the Galois-type Rankin-Selberg product.
pub fn pole_order_galois(chi1: &ClassFunction, chi2: &ClassFunction) -> Result<usize> {
    let v = inner_product(chi1, chi2)?;
    v.as_i64()
        .filter(|x| *x >= 0)
        .map(|x| x as usize)
        .ok_or_else(|| Error::Analytic("pole order is not a nonnegative integer".into()))
}

/// An infinite place for the analytic conductor.
#[derive(Clone, Debug, Serialize)]
pub struct ArchPlace {
    pub complex: bool,
    pub mu: Vec<Complex64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConductorInput {
    pub conductor: u64,
    pub places: Vec<ArchPlace>,
    pub s: Complex64,
}

/// `N prod_w prod_mu |(1 + mu + s)/(2 pi)|_w`, with the square of the modulus at complex places.
pub fn analytic_conductor(ci: &ConductorInput) -> f64 {
    let mut out = ci.conductor as f64;
    for w in &ci.places {
        for mu in &w.mu {
            let a = ((1.0 + mu + ci.s) / (2.0 * PI)).norm();
            out *= if w.complex { a * a } else { a };
        }
    }
    out
}

/// `1/2 - 1/(n^2+1)`.
pub fn ramanujan_bound(n: u32) -> f64 {
    0.5 - 1.0 / ((n * n + 1) as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::named_group;

    #[test]
    fn mellin_values() {
        let phi = BumpKernel::default();
        let one = phi.mellin(Complex64::new(1.0, 0.0)).unwrap();
        assert!(one.re > 0.0 && one.im == 0.0);
        assert!(phi.mellin(Complex64::new(0.0, 0.0)).unwrap().re > 0.0);
        let two = phi.mellin(Complex64::new(2.0, 0.0)).unwrap().re;
        let n = 1_000_000;
        let h = 1.0 / n as f64;
        let mid: f64 = (0..n).map(|i| {
            let x = 0.5 + (i as f64 + 0.5) * h;
            phi.eval(x) * x
        }).sum::<f64>() * h;
        assert!((two - mid).abs() < 1e-8, "{two} vs {mid}");
        let z = phi.mellin(Complex64::new(1.0, 3.0)).unwrap();
        assert!(z.im.abs() > 0.0);
    }

    #[test]
    fn zeta_constants() {
        assert!((zeta(Complex64::new(2.0, 0.0)).re - PI * PI / 6.0).abs() < 1e-12);
        let t = zeta_residue_taylor(3);
        assert!((t[0] - 1.0).abs() < 1e-12);
        assert!((t[1] - 0.577_215_664_901_532_9).abs() < 1e-12);
        assert!((t[2] - 0.072_815_845_483_676_72).abs() < 1e-11);
    }

    #[test]
    fn residue_shapes() {
        let phi = BumpKernel::default();
        let x = 1000.0;
        let p1 = PoleProfile { order: 1, coeffs: vec![Complex64::new(2.0, 0.0), Complex64::new(5.0, 0.0)], empirical_order: 1.0, empirical_stderr: 0.0 };
        let want = 2.0 * phi.mellin(Complex64::new(1.0, 0.0)).unwrap().re * x;
        assert!((residue_term(&phi, x, &p1).unwrap().re - want).abs() < 1e-9 * want);
        let p2 = PoleProfile {
            order: 2,
            coeffs: vec![Complex64::new(2.0, 0.0), Complex64::new(3.0, 0.0), Complex64::new(0.0, 0.0)],
            empirical_order: 2.0,
            empirical_stderr: 0.0,
        };
        let m0 = phi.mellin(Complex64::new(1.0, 0.0)).unwrap().re;
        let m1 = phi.log_moment(Complex64::new(1.0, 0.0), 1, 0.0).unwrap().re;
        let want = 2.0 * (m1 + m0 * x.ln()) * x + 3.0 * m0 * x;
        assert!((residue_term(&phi, x, &p2).unwrap().re - want).abs() < 1e-9 * want);
        assert_eq!(residue_term(&phi, x, &PoleProfile::zero()).unwrap(), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn smoothed_sum_contract() {
        let phi = BumpKernel::default();
        let mut delta = vec![Complex64::new(0.0, 0.0); 2000];
        delta[1] = Complex64::new(1.0, 0.0);
        assert_eq!(smoothed_sum(&delta, &phi, 1000.0, Orientation::MOverX).unwrap(), Complex64::new(0.0, 0.0));
        assert!(smoothed_sum(&delta, &phi, 10_000.0, Orientation::MOverX).is_err());
        let ones = vec![Complex64::new(1.0, 0.0); 15_001];
        let s = smoothed_sum(&ones, &phi, 10_000.0, Orientation::MOverX).unwrap().re;
        let m = phi.mellin(Complex64::new(1.0, 0.0)).unwrap().re * 10_000.0;
        assert!((s / m - 1.0).abs() < 0.01);
    }

    #[test]
    fn conductor_and_bounds() {
        let ci = ConductorInput {
            conductor: 1,
            places: vec![ArchPlace { complex: true, mu: vec![Complex64::new(0.0, 0.0)] }],
            s: Complex64::new(0.0, 0.0),
        };
        assert!((analytic_conductor(&ci) - (1.0 / (2.0 * PI)).powi(2)).abs() < 1e-15);
        let plain = ConductorInput { conductor: 12, places: vec![], s: Complex64::new(0.5, 0.0) };
        assert_eq!(analytic_conductor(&plain), 12.0);
        assert_eq!(ramanujan_bound(1), 0.0);
        assert!((ramanujan_bound(2) - 0.3).abs() < 1e-15);
        assert!((ramanujan_bound(3) - 0.4).abs() < 1e-15);
    }

    #[test]
    fn streams_are_deterministic() {
        let g = named_group("sl2z5").unwrap();
        let a = chebotarev_stream(&g, 7, 10_000);
        assert_eq!(a, chebotarev_stream(&g, 7, 10_000));
        assert_ne!(a, chebotarev_stream(&g, 8, 10_000));
        let t = named_group("trivial").unwrap();
        assert!(chebotarev_stream(&t, 1, 1000).iter().all(|s| s.class == 0));
    }

    #[test]
    fn trivial_stream_is_zeta() {
        let t = named_group("trivial").unwrap();
        let s = chebotarev_stream(&t, 1, 20_000);
        let e = EulerData::from_stream(&s, 20_000, |_| vec![(1, "C1".into(), vec![Complex64::new(1.0, 0.0)])]).unwrap();
        let p = laurent_at_1(&e, None).unwrap();
        assert_eq!(p.order, 1);
        assert!((p.c(-1).re - 1.0).abs() < 1e-12);
        assert!((p.c(0).re - 0.577_215_664_901_532_9).abs() < 1e-10);
        let lam = e.dirichlet(100);
        assert!(lam[1..].iter().all(|z| (z.re - 1.0).abs() < 1e-12));
    }
}
