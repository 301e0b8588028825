//! Exact arithmetic in cyclotomic fields `Q(zeta_N)`.
//!
//! A [`Cyclotomic`] is stored over the power basis `1, z, ..., z^(phi(N)-1)`
//! reduced modulo the `N`-th cyclotomic polynomial.  Internally the
//! coefficient vector carries a single positive common denominator, which
//! keeps multiplication in integer arithmetic; the public accessors hand
//! out reduced [`Rational`] coefficients.
//!
//! Values with different moduli are promoted to the lcm of the two moduli
//! on demand.  Promotion is refused beyond [`MAX_MODULUS`].

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary precision rational number (always stored in lowest terms).
pub type Rational = BigRational;

/// Largest modulus a promotion may produce.
pub const MAX_MODULUS: u32 = 5040;

/// Working modulus for the icosahedral computations (lcm of element orders of SL2(Z/5)).
pub const DEFAULT_MODULUS: u32 = 60;

pub(crate) struct FieldData {
    pub phi: usize,
    /// Coefficients of the cyclotomic polynomial, low degree first (monic, length phi + 1).
    pub cyclo: Vec<i64>,
    /// `powers[e]` is `z^e` reduced, for `0 <= e < n`.
    pub powers: Vec<Vec<i64>>,
}

fn field_cache() -> &'static Mutex<HashMap<u32, Arc<FieldData>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<FieldData>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact division of integer polynomials by a monic divisor.
fn poly_div_monic(a: &[i64], b: &[i64]) -> Vec<i64> {
    let db = b.len() - 1;
    let mut rem = a.to_vec();
    let mut q = vec![0i64; a.len() - db];
    for k in (0..q.len()).rev() {
        let c = rem[k + db];
        q[k] = c;
        if c != 0 {
            for (i, bi) in b.iter().enumerate() {
                rem[k + i] -= c * bi;
            }
        }
    }
    debug_assert!(rem.iter().all(|x| *x == 0));
    q
}

/// The `n`-th cyclotomic polynomial with integer coefficients, low degree first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    assert!(n >= 1);
    // x^n - 1 divided by the product of Phi_d over proper divisors d.
    let mut xn1 = vec![0i64; n as usize + 1];
    xn1[0] = -1;
    xn1[n as usize] = 1;
    let mut denom = vec![1i64];
    for d in 1..n {
        if n % d == 0 {
            denom = poly_mul(&denom, &cyclotomic_polynomial(d));
        }
    }
    poly_div_monic(&xn1, &denom)
}

pub(crate) fn field(n: u32) -> Arc<FieldData> {
    if let Some(f) = field_cache().lock().expect("field cache").get(&n) {
        return f.clone();
    }
    let cyclo = cyclotomic_polynomial(n);
    let phi = cyclo.len() - 1;
    let mut powers = Vec::with_capacity(n as usize);
    let mut cur = vec![0i64; phi.max(1)];
    cur[0] = 1;
    for _ in 0..n {
        powers.push(cur.clone());
        // multiply by z and reduce by the monic cyclotomic polynomial
        let mut next = vec![0i64; phi.max(1)];
        if phi == 1 {
            // Q(zeta_1) = Q(zeta_2) = Q: z is the rational -cyclo[0]
            next[0] = cur[0] * -cyclo[0];
        } else {
            let top = cur[phi - 1];
            for i in (1..phi).rev() {
                next[i] = cur[i - 1];
            }
            next[0] = 0;
            for i in 0..phi {
                next[i] -= top * cyclo[i];
            }
        }
        cur = next;
    }
    let data = Arc::new(FieldData { phi, cyclo, powers });
    field_cache().lock().expect("field cache").insert(n, data.clone());
    data
}

/// Euler's totient.
pub fn euler_phi(n: u32) -> u32 {
    let mut m = n;
    let mut out = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if m > 1 {
        out -= out / m;
    }
    out
}

/// Exact element of `Q(zeta_N)`.
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    n: u32,
    num: Vec<BigInt>,
    den: BigInt,
}

impl Cyclotomic {
    fn raw(n: u32, num: Vec<BigInt>, den: BigInt) -> Self {
        let mut c = Cyclotomic { n, num, den };
        c.normalize();
        c
    }

    fn normalize(&mut self) {
        if self.num.iter().all(|x| x.is_zero()) {
            self.den = BigInt::one();
            return;
        }
        if self.den.is_negative() {
            self.den = -self.den.clone();
            for x in self.num.iter_mut() {
                *x = -x.clone();
            }
        }
        let mut g = self.den.clone();
        for x in &self.num {
            if g.is_one() {
                break;
            }
            g = g.gcd(x);
        }
        if !g.is_one() {
            self.den = &self.den / &g;
            for x in self.num.iter_mut() {
                *x = &*x / &g;
            }
        }
    }

    /// Reduce an integer coefficient vector of arbitrary length modulo Phi_n.
    fn reduce_vec(n: u32, mut v: Vec<BigInt>) -> Vec<BigInt> {
        let f = field(n);
        let phi = f.phi;
        if f.phi == 1 {
            // every power of z is a rational number here
            let mut acc = BigInt::zero();
            for (e, c) in v.iter().enumerate() {
                if !c.is_zero() {
                    acc += c * f.powers[e % n as usize][0];
                }
            }
            return vec![acc];
        }
        if v.len() > phi {
            for k in (phi..v.len()).rev() {
                if v[k].is_zero() {
                    continue;
                }
                let c = std::mem::take(&mut v[k]);
                for i in 0..phi {
                    let ci = f.cyclo[i];
                    if ci != 0 {
                        v[k - phi + i] -= &c * ci;
                    }
                }
            }
            v.truncate(phi);
        }
        while v.len() < phi {
            v.push(BigInt::zero());
        }
        v
    }

    pub fn zero(n: u32) -> Self {
        let phi = field(n).phi;
        Cyclotomic { n, num: vec![BigInt::zero(); phi], den: BigInt::one() }
    }

    pub fn one(n: u32) -> Self {
        Self::from_int(n, 1)
    }

    pub fn from_int(n: u32, k: i64) -> Self {
        Self::from_bigint(n, BigInt::from(k))
    }

    pub fn from_bigint(n: u32, k: BigInt) -> Self {
        let mut z = Self::zero(n);
        z.num[0] = k;
        z
    }

    pub fn from_rational(n: u32, q: &Rational) -> Self {
        let mut z = Self::zero(n);
        z.num[0] = q.numer().clone();
        z.den = q.denom().clone();
        z.normalize();
        z
    }

    /// `zeta_n^k` at modulus `n`.
    pub fn root_of_unity(n: u32, k: i64) -> Self {
        let f = field(n);
        let e = k.rem_euclid(n as i64) as usize;
        let num = f.powers[e].iter().map(|x| BigInt::from(*x)).collect();
        Cyclotomic { n, num, den: BigInt::one() }
    }

    /// `zeta_order^k` expressed at modulus `modulus` (requires `order | modulus`).
    pub fn root_at(modulus: u32, order: u32, k: i64) -> Result<Self> {
        if order == 0 || modulus % order != 0 {
            return Err(Error::Arithmetic(format!(
                "root of unity of order {order} does not live in Q(zeta_{modulus})"
            )));
        }
        Ok(Self::root_of_unity(modulus, k * (modulus / order) as i64))
    }

    /// The positive root `(1 + sqrt 5)/2 = -z5^2 - z5^3` of `x^2 - x - 1`, at modulus `n` (5 | n).
    pub fn golden_u(n: u32) -> Result<Self> {
        let a = Self::root_at(n, 5, 2)?;
        let b = Self::root_at(n, 5, 3)?;
        Ok(-(&a + &b))
    }

    /// The other root `v = 1 - u` of `x^2 - x - 1`.
    pub fn golden_v(n: u32) -> Result<Self> {
        Ok(&Self::one(n) - &Self::golden_u(n)?)
    }

    pub fn modulus(&self) -> u32 {
        self.n
    }

    pub fn coeffs(&self) -> Vec<Rational> {
        self.num
            .iter()
            .map(|x| Rational::new(x.clone(), self.den.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|x| x.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().map(|q| q.is_one()).unwrap_or(false)
    }

    pub fn is_rational(&self) -> bool {
        self.num.iter().skip(1).all(|x| x.is_zero())
    }

    pub fn as_rational(&self) -> Option<Rational> {
        if self.is_rational() {
            Some(Rational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        if self.is_rational() && self.den.is_one() {
            Some(self.num[0].clone())
        } else {
            None
        }
    }

    pub fn as_i64(&self) -> Option<i64> {
        self.as_integer().and_then(|x| x.to_i64())
    }

    /// Re-express at modulus `m`, a multiple of the current modulus.
    pub fn promote(&self, m: u32) -> Result<Self> {
        if m == self.n {
            return Ok(self.clone());
        }
        if m % self.n != 0 {
            return Err(Error::Arithmetic(format!("cannot promote modulus {} to {}", self.n, m)));
        }
        if m > MAX_MODULUS {
            return Err(Error::Arithmetic(format!(
                "modulus promotion to {m} exceeds the bound {MAX_MODULUS}"
            )));
        }
        let f = field(m);
        let step = (m / self.n) as usize;
        let mut num = vec![BigInt::zero(); f.phi];
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let row = &f.powers[(i * step) % m as usize];
            for (j, r) in row.iter().enumerate() {
                if *r != 0 {
                    num[j] += c * *r;
                }
            }
        }
        Ok(Cyclotomic::raw(m, num, self.den.clone()))
    }

    fn common(a: &Self, b: &Self) -> Result<(Self, Self)> {
        if a.n == b.n {
            return Ok((a.clone(), b.clone()));
        }
        let m = a.n.lcm(&b.n);
        Ok((a.promote(m)?, b.promote(m)?))
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            let (a, b) = Self::common(self, other)?;
            return a.try_add(&b);
        }
        let num = self
            .num
            .iter()
            .zip(&other.num)
            .map(|(x, y)| x * &other.den + y * &self.den)
            .collect();
        Ok(Cyclotomic::raw(self.n, num, &self.den * &other.den))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            let (a, b) = Self::common(self, other)?;
            return a.try_mul(&b);
        }
        if other.is_rational() {
            return Ok(self.scale_parts(&other.num[0], &other.den));
        }
        if self.is_rational() {
            return Ok(other.scale_parts(&self.num[0], &self.den));
        }
        let la = self.num.len();
        let lb = other.num.len();
        let mut prod = vec![BigInt::zero(); la + lb - 1];
        for (i, x) in self.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in other.num.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        let num = Self::reduce_vec(self.n, prod);
        Ok(Cyclotomic::raw(self.n, num, &self.den * &other.den))
    }

    fn scale_parts(&self, p: &BigInt, q: &BigInt) -> Self {
        let num = self.num.iter().map(|x| x * p).collect();
        Cyclotomic::raw(self.n, num, &self.den * q)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        self.scale_parts(q.numer(), q.denom())
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.scale_parts(&BigInt::from(k), &BigInt::one())
    }

    /// Ring automorphism `z_N -> z_N^k`.
    pub fn galois_map(&self, k: i64) -> Result<Self> {
        let n = self.n as i64;
        let kk = k.rem_euclid(n);
        if (kk as u64).gcd(&(self.n as u64)) != 1 && self.n > 1 {
            return Err(Error::Arithmetic(format!(
                "galois_map exponent {k} is not coprime to the modulus {}",
                self.n
            )));
        }
        let f = field(self.n);
        let mut num = vec![BigInt::zero(); f.phi];
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = ((i as i64 * kk) % n.max(1)) as usize;
            for (j, r) in f.powers[e].iter().enumerate() {
                if *r != 0 {
                    num[j] += c * *r;
                }
            }
        }
        Ok(Cyclotomic::raw(self.n, num, self.den.clone()))
    }

    /// Complex conjugation (`galois_map(N - 1)`).
    pub fn conj(&self) -> Self {
        self.galois_map(self.n as i64 - 1).expect("N-1 is a unit mod N")
    }

    /// Field norm down to Q, as the product of all Galois conjugates.
    pub fn norm(&self) -> Rational {
        let mut acc = Cyclotomic::one(self.n);
        for k in 1..self.n.max(2) {
            if (k as u64).gcd(&(self.n as u64)) == 1 {
                acc = &acc * &self.galois_map(k as i64).expect("unit");
            }
        }
        acc.as_rational().expect("norms are rational")
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Arithmetic("inversion of zero".into()));
        }
        if self.is_rational() {
            let q = Rational::new(self.num[0].clone(), self.den.clone());
            return Ok(Cyclotomic::from_rational(self.n, &q.recip()));
        }
        // a^{-1} = (product of the nontrivial conjugates) / norm(a)
        let mut others = Cyclotomic::one(self.n);
        for k in 2..self.n {
            if (k as u64).gcd(&(self.n as u64)) == 1 {
                others = &others * &self.galois_map(k as i64)?;
            }
        }
        let nrm = (&others * self).as_rational().expect("norm is rational");
        Ok(others.scale(&nrm.recip()))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.try_mul(&other.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let mut base = if e < 0 { self.inv()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = Cyclotomic::one(self.n);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        Ok(acc)
    }

    /// Numeric value under `z_N -> exp(2 pi i / N)`.
    pub fn to_complex(&self) -> Complex64 {
        let n = self.n as f64;
        let den = self.den.to_f64().unwrap_or(f64::NAN);
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let ang = 2.0 * std::f64::consts::PI * i as f64 / n;
            let cf = c.to_f64().unwrap_or(f64::NAN) / den;
            acc += Complex64::new(cf * ang.cos(), cf * ang.sin());
        }
        acc
    }

    /// Complex embedding as a (re, im) pair.  Values are produced in IEEE double
    /// precision, so requests above 53 bits are answered at 53 bits.
    pub fn complex_embed(&self, precision_bits: u32) -> Result<(f64, f64)> {
        if precision_bits < 53 {
            return Err(Error::Arithmetic(format!(
                "complex_embed needs at least 53 bits, got {precision_bits}"
            )));
        }
        let z = self.to_complex();
        Ok((z.re, z.im))
    }

    /// Polynomial in `zN` followed by a decimal approximation.
    pub fn render(&self) -> String {
        format!("{} ~ {}", self.render_exact(), render_complex(self.to_complex()))
    }

    pub fn render_exact(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts: Vec<String> = Vec::new();
        for (i, c) in self.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            let mag = if i == 0 {
                a.to_string()
            } else {
                let mono = if i == 1 { format!("z{}", self.n) } else { format!("z{}^{}", self.n, i) };
                if a.is_one() {
                    mono
                } else {
                    format!("{}*{}", a, mono)
                }
            };
            if parts.is_empty() {
                parts.push(if neg { format!("-{mag}") } else { mag });
            } else {
                parts.push(format!("{} {}", if neg { "-" } else { "+" }, mag));
            }
        }
        parts.join(" ")
    }
}

pub fn render_complex(z: Complex64) -> String {
    let clean = |x: f64| if x.abs() < 5e-13 { 0.0 } else { x };
    let (re, im) = (clean(z.re), clean(z.im));
    if im == 0.0 {
        format!("{re:.6}")
    } else if re == 0.0 {
        format!("{im:.6}i")
    } else {
        format!("{re:.6}{}{:.6}i", if im < 0.0 { "-" } else { "+" }, im.abs())
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.n == other.n {
            return self.den == other.den && self.num == other.num;
        }
        match Cyclotomic::common(self, other) {
            Ok((a, b)) => a.den == b.den && a.num == b.num,
            Err(_) => false,
        }
    }
}

impl Eq for Cyclotomic {}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_exact())
    }
}

impl<'a> Add<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.try_add(rhs).expect("cyclotomic addition")
    }
}

impl<'a> Sub<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.try_add(&-rhs).expect("cyclotomic subtraction")
    }
}

impl<'a> Mul<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.try_mul(rhs).expect("cyclotomic multiplication")
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic { n: self.n, num: self.num.iter().map(|x| -x).collect(), den: self.den.clone() }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl Add for Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: Cyclotomic) -> Cyclotomic {
        &self + &rhs
    }
}

impl Sub for Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: Cyclotomic) -> Cyclotomic {
        &self - &rhs
    }
}

impl Mul for Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: Cyclotomic) -> Cyclotomic {
        &self * &rhs
    }
}

/// Convenience: sum of an iterator of values at modulus `n`.
pub fn sum_at<'a, I: IntoIterator<Item = &'a Cyclotomic>>(n: u32, it: I) -> Cyclotomic {
    it.into_iter().fold(Cyclotomic::zero(n), |acc, x| &acc + x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(5), vec![1, 1, 1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(60).len() - 1, 16);
        for n in 1..100 {
            assert_eq!(cyclotomic_polynomial(n).len() - 1, euler_phi(n) as usize);
        }
    }

    #[test]
    fn root_identity() {
        let z = Cyclotomic::root_of_unity(5, 1);
        let z4 = Cyclotomic::root_of_unity(5, 4);
        assert!((&z * &z4).is_one());
        assert!(z.pow(5).unwrap().is_one());
    }

    #[test]
    fn golden_roots() {
        let u = Cyclotomic::golden_u(5).unwrap();
        let v = Cyclotomic::golden_v(5).unwrap();
        assert!((&u + &v).is_one());
        assert_eq!(&u * &v, Cyclotomic::from_int(5, -1));
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((u.to_complex().re - phi).abs() < 1e-14);
        assert!(u.to_complex().im.abs() < 1e-14);
        let um1 = &u - &Cyclotomic::one(5);
        assert!((um1.to_complex().re - (5f64.sqrt() - 1.0) / 2.0).abs() < 1e-14);
    }

    #[test]
    fn galois_maps() {
        let u = Cyclotomic::golden_u(5).unwrap();
        assert_eq!(u.galois_map(2).unwrap(), Cyclotomic::golden_v(5).unwrap());
        let seven = Cyclotomic::from_int(60, 7);
        assert_eq!(seven.galois_map(7).unwrap(), seven);
        let z = Cyclotomic::root_of_unity(5, 1);
        assert_eq!(z.galois_map(1).unwrap(), z);
        assert!(z.galois_map(5).is_err());
    }

    #[test]
    fn embeddings() {
        let one = Cyclotomic::one(60);
        assert_eq!(one.complex_embed(53).unwrap(), (1.0, 0.0));
        let i = Cyclotomic::root_of_unity(4, 1).to_complex();
        assert!(i.re.abs() < 1e-15 && (i.im - 1.0).abs() < 1e-15);
        assert!(one.complex_embed(32).is_err());
    }

    #[test]
    fn promotion_and_equality() {
        let a = Cyclotomic::golden_u(5).unwrap();
        let b = Cyclotomic::golden_u(60).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.promote(60).unwrap().modulus(), 60);
        let w = Cyclotomic::root_of_unity(3, 1);
        let s = &a + &w;
        assert_eq!(s.modulus(), 15);
        assert!(Cyclotomic::root_of_unity(4999, 1).promote(4999 * 2).is_err());
    }

    #[test]
    fn inverse() {
        let u = Cyclotomic::golden_u(60).unwrap();
        let ui = u.inv().unwrap();
        assert!((&u * &ui).is_one());
        let a = &Cyclotomic::root_of_unity(7, 1) + &Cyclotomic::from_int(7, 3);
        assert!((&a * &a.inv().unwrap()).is_one());
        assert!(Cyclotomic::zero(60).inv().is_err());
    }

    #[test]
    fn trivial_fields() {
        let m = Cyclotomic::root_of_unity(2, 1);
        assert_eq!(m, Cyclotomic::from_int(1, -1));
        assert!(Cyclotomic::root_of_unity(1, 3).is_one());
    }

    #[test]
    fn rendering() {
        let u = Cyclotomic::golden_u(5).unwrap();
        assert_eq!(u.render_exact(), "-z5^2 - z5^3");
        assert!(u.render().contains("1.618034"));
    }
}
