//! Exact arithmetic in `Z[ω, 1/√2]` with `ω = e^{iπ/4}`, plus the floating
//! fallback used for arbitrary angles.
//!
//! A [`CycloScalar`] stores a numerator `a + bω + cω² + dω³` with unbounded
//! integer coefficients and an exponent `k`; the represented value is the
//! numerator divided by `√2^k`. Values are always kept canonical: either
//! `k = 0` or the numerator is not divisible by `√2`. Zero is uniquely
//! `(0,0,0,0)/√2⁰`, so structural equality is value equality.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Complex floating-point scalar used in float mode.
pub type ApproxScalar = Complex64;

/// Minimal commutative ring interface shared by the exact and float scalars so
/// that tensor contraction can be written once.
pub trait Ring: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn is_zero(&self) -> bool;
    fn neg(&self) -> Self;
}

impl Ring for ApproxScalar {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn neg(&self) -> Self {
        -self
    }
}

/// Exact element of `Z[ω]/√2^k`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycloScalar {
    coeffs: [BigInt; 4],
    sqrt2_exp: u32,
}

fn mul_numerators(x: &[BigInt; 4], y: &[BigInt; 4]) -> [BigInt; 4] {
    let mut out: [BigInt; 4] = Default::default();
    for i in 0..4 {
        if x[i].is_zero() {
            continue;
        }
        for j in 0..4 {
            if y[j].is_zero() {
                continue;
            }
            let p = &x[i] * &y[j];
            let n = i + j;
            if n < 4 {
                out[n] += p;
            } else {
                out[n - 4] -= p;
            }
        }
    }
    out
}

/// Multiplies a numerator by `√2 = ω - ω³`.
fn times_sqrt2(y: &[BigInt; 4]) -> [BigInt; 4] {
    let [a, b, c, d] = y;
    [b - d, a + c, b + d, c - a]
}

fn scale_sqrt2_pow(y: &[BigInt; 4], e: u32) -> [BigInt; 4] {
    let two_pow = BigInt::one() << (e / 2) as usize;
    let mut out = [&y[0] * &two_pow, &y[1] * &two_pow, &y[2] * &two_pow, &y[3] * &two_pow];
    if e % 2 == 1 {
        out = times_sqrt2(&out);
    }
    out
}

/// Divisibility by `√2`: `y₀ ≡ y₂` and `y₁ ≡ y₃ (mod 2)`.
fn divisible_by_sqrt2(y: &[BigInt; 4]) -> bool {
    (&y[0] - &y[2]).is_even() && (&y[1] - &y[3]).is_even()
}

/// Inverse of [`times_sqrt2`]; caller checks divisibility first.
fn div_sqrt2(y: &[BigInt; 4]) -> [BigInt; 4] {
    let two = BigInt::from(2);
    let b = (&y[0] + &y[2]) / &two;
    let d = (&y[2] - &y[0]) / &two;
    let a = (&y[1] - &y[3]) / &two;
    let c = (&y[1] + &y[3]) / &two;
    [a, b, c, d]
}

impl CycloScalar {
    /// Builds a canonical scalar from a raw numerator and `√2` exponent.
    pub fn normalize(coeffs: [BigInt; 4], sqrt2_exp: u32) -> Self {
        let mut coeffs = coeffs;
        let mut k = sqrt2_exp;
        if coeffs.iter().all(Zero::is_zero) {
            return Self { coeffs, sqrt2_exp: 0 };
        }
        // Fast path: strip common powers of two in one go.
        while k >= 2 && coeffs.iter().all(|c| c.is_even()) {
            for c in coeffs.iter_mut() {
                *c >>= 1;
            }
            k -= 2;
        }
        while k > 0 && divisible_by_sqrt2(&coeffs) {
            coeffs = div_sqrt2(&coeffs);
            k -= 1;
        }
        Self { coeffs, sqrt2_exp: k }
    }

    pub fn from_i64s(coeffs: [i64; 4], sqrt2_exp: u32) -> Self {
        Self::normalize(coeffs.map(BigInt::from), sqrt2_exp)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_i64s([n, 0, 0, 0], 0)
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::normalize([n, BigInt::zero(), BigInt::zero(), BigInt::zero()], 0)
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn sqrt2() -> Self {
        Self::from_i64s([0, 1, 0, -1], 0)
    }

    pub fn inv_sqrt2() -> Self {
        Self::from_i64s([1, 0, 0, 0], 1)
    }

    /// `ω^n` for any integer `n`.
    pub fn omega_pow(n: i64) -> Self {
        let n = n.rem_euclid(8) as usize;
        let mut c = [0i64; 4];
        if n < 4 {
            c[n] = 1;
        } else {
            c[n - 4] = -1;
        }
        Self::from_i64s(c, 0)
    }

    /// `1/√2^k`.
    pub fn inv_sqrt2_pow(k: u32) -> Self {
        Self::from_i64s([1, 0, 0, 0], k)
    }

    pub fn coeffs(&self) -> &[BigInt; 4] {
        &self.coeffs
    }

    pub fn sqrt2_exp(&self) -> u32 {
        self.sqrt2_exp
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn conj(&self) -> Self {
        let [a, b, c, d] = &self.coeffs;
        Self::normalize([a.clone(), -d, -c, -b], self.sqrt2_exp)
    }

    pub fn to_complex(&self) -> ApproxScalar {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let w = [
            Complex64::new(1.0, 0.0),
            Complex64::new(h, h),
            Complex64::new(0.0, 1.0),
            Complex64::new(-h, h),
        ];
        let mut z = Complex64::new(0.0, 0.0);
        for (c, wi) in self.coeffs.iter().zip(w) {
            z += wi * c.to_f64().unwrap_or(f64::NAN);
        }
        z / std::f64::consts::SQRT_2.powi(self.sqrt2_exp as i32)
    }

    /// Writes the value as `n / √2^k` for the given `k`, if `n` is a rational
    /// integer. Used to recognise matrices in `(1/√2)^N · M(Z)`.
    pub fn as_int_over_sqrt2(&self, k: u32) -> Option<BigInt> {
        if self.sqrt2_exp > k {
            return None;
        }
        let num = scale_sqrt2_pow(&self.coeffs, k - self.sqrt2_exp);
        if num[1].is_zero() && num[2].is_zero() && num[3].is_zero() {
            Some(num[0].clone())
        } else {
            None
        }
    }

    /// Smallest `k` for which [`Self::as_int_over_sqrt2`] succeeds.
    pub fn real_int_exponent(&self) -> Option<u32> {
        let k = self.sqrt2_exp;
        if self.as_int_over_sqrt2(k).is_some() {
            Some(k)
        } else if self.as_int_over_sqrt2(k + 1).is_some() {
            Some(k + 1)
        } else {
            None
        }
    }

    pub fn abs_coeff_bits(&self) -> u64 {
        self.coeffs.iter().map(|c| c.abs().bits()).max().unwrap_or(0)
    }
}

impl Ring for CycloScalar {
    fn zero() -> Self {
        CycloScalar::zero()
    }
    fn one() -> Self {
        CycloScalar::one()
    }
    fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let k = self.sqrt2_exp.max(other.sqrt2_exp);
        let x = scale_sqrt2_pow(&self.coeffs, k - self.sqrt2_exp);
        let y = scale_sqrt2_pow(&other.coeffs, k - other.sqrt2_exp);
        let sum = [&x[0] + &y[0], &x[1] + &y[1], &x[2] + &y[2], &x[3] + &y[3]];
        CycloScalar::normalize(sum, k)
    }
    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return CycloScalar::zero();
        }
        CycloScalar::normalize(
            mul_numerators(&self.coeffs, &other.coeffs),
            self.sqrt2_exp + other.sqrt2_exp,
        )
    }
    fn is_zero(&self) -> bool {
        CycloScalar::is_zero(self)
    }
    fn neg(&self) -> Self {
        let [a, b, c, d] = &self.coeffs;
        CycloScalar { coeffs: [-a, -b, -c, -d], sqrt2_exp: self.sqrt2_exp }
    }
}

impl Add for &CycloScalar {
    type Output = CycloScalar;
    fn add(self, rhs: Self) -> CycloScalar {
        Ring::add(self, rhs)
    }
}

impl Sub for &CycloScalar {
    type Output = CycloScalar;
    fn sub(self, rhs: Self) -> CycloScalar {
        Ring::add(self, &Ring::neg(rhs))
    }
}

impl Mul for &CycloScalar {
    type Output = CycloScalar;
    fn mul(self, rhs: Self) -> CycloScalar {
        Ring::mul(self, rhs)
    }
}

impl Neg for &CycloScalar {
    type Output = CycloScalar;
    fn neg(self) -> CycloScalar {
        Ring::neg(self)
    }
}

impl Default for CycloScalar {
    fn default() -> Self {
        CycloScalar::zero()
    }
}

impl fmt::Debug for CycloScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = &self.coeffs;
        write!(f, "({a},{b},{c},{d})/√2^{}", self.sqrt2_exp)
    }
}

impl fmt::Display for CycloScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ["", "ω", "ω²", "ω³"];
        let mut terms = Vec::new();
        for (c, n) in self.coeffs.iter().zip(names) {
            if c.is_zero() {
                continue;
            }
            if n.is_empty() {
                terms.push(c.to_string());
            } else if c.is_one() {
                terms.push(n.to_string());
            } else if *c == -BigInt::one() {
                terms.push(format!("-{n}"));
            } else {
                terms.push(format!("{c}{n}"));
            }
        }
        let num = if terms.is_empty() { "0".to_string() } else { terms.join("+").replace("+-", "-") };
        let den = match self.sqrt2_exp {
            0 => return write!(f, "{num}"),
            1 => "√2".to_string(),
            k => format!("√2^{k}"),
        };
        if terms.len() > 1 {
            write!(f, "({num})/{den}")
        } else {
            write!(f, "{num}/{den}")
        }
    }
}
