//! Spider phases: exact rational multiples of π, raw floats, and integer-linear
//! expressions over named variables.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;

use crate::error::Error;
use crate::scalar::{ApproxScalar, CycloScalar};

/// Exact rational multiple of π, reduced and normalised into `[0, 2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PiFrac {
    num: i64,
    den: i64,
}

impl PiFrac {
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        let (mut num, mut den) = if den < 0 { (-num, -den) } else { (num, den) };
        let g = num.gcd(&den);
        if g > 1 {
            num /= g;
            den /= g;
        }
        num = num.rem_euclid(2 * den);
        Self { num, den }
    }

    pub fn zero() -> Self {
        Self::new(0, 1)
    }

    pub fn pi() -> Self {
        Self::new(1, 1)
    }

    /// `k·π/4`.
    pub fn quarter(k: i64) -> Self {
        Self::new(k, 4)
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    pub fn radians(&self) -> f64 {
        self.num as f64 / self.den as f64 * std::f64::consts::PI
    }

    /// The multiple of π/4, when the denominator divides 4.
    pub fn quarters(&self) -> Option<i64> {
        if 4 % self.den == 0 {
            Some(self.num * (4 / self.den))
        } else {
            None
        }
    }

    pub fn add(self, other: Self) -> Self {
        Self::new(self.num * other.den + other.num * self.den, self.den * other.den)
    }

    pub fn scale(self, k: i64) -> Self {
        Self::new(self.num * k, self.den)
    }

    pub fn neg(self) -> Self {
        Self::new(-self.num, self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }
}

impl fmt::Display for PiFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.num, self.den) {
            (0, _) => write!(f, "0"),
            (1, 1) => write!(f, "π"),
            (n, 1) => write!(f, "{n}π"),
            (1, d) => write!(f, "π/{d}"),
            (n, d) => write!(f, "{n}π/{d}"),
        }
    }
}

/// A spider phase.
#[derive(Clone, Debug, PartialEq)]
pub enum Angle {
    ExactPi(PiFrac),
    Float(f64),
    /// `Σ coeff·var + constant`; zero coefficients are never stored.
    Linear { coeffs: BTreeMap<String, i64>, constant: PiFrac },
}

impl Default for Angle {
    fn default() -> Self {
        Angle::zero()
    }
}

impl From<PiFrac> for Angle {
    fn from(p: PiFrac) -> Self {
        Angle::ExactPi(p)
    }
}

impl Angle {
    pub fn zero() -> Self {
        Angle::ExactPi(PiFrac::zero())
    }

    pub fn pi() -> Self {
        Angle::ExactPi(PiFrac::pi())
    }

    pub fn pi_frac(num: i64, den: i64) -> Self {
        Angle::ExactPi(PiFrac::new(num, den))
    }

    pub fn quarter(k: i64) -> Self {
        Angle::ExactPi(PiFrac::quarter(k))
    }

    /// Float angles are reduced into `[0, 2π)`.
    pub fn float(rad: f64) -> Self {
        Angle::Float(rad.rem_euclid(2.0 * std::f64::consts::PI))
    }

    pub fn var(name: &str) -> Self {
        Angle::linear([(name.to_string(), 1)], PiFrac::zero())
    }

    pub fn linear<I: IntoIterator<Item = (String, i64)>>(terms: I, constant: PiFrac) -> Self {
        let mut coeffs = BTreeMap::new();
        for (v, c) in terms {
            *coeffs.entry(v).or_insert(0) += c;
        }
        coeffs.retain(|_, c| *c != 0);
        if coeffs.is_empty() {
            Angle::ExactPi(constant)
        } else {
            Angle::Linear { coeffs, constant }
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Angle::ExactPi(_))
    }

    pub fn is_linear(&self) -> bool {
        matches!(self, Angle::Linear { .. })
    }

    pub fn as_exact(&self) -> Option<PiFrac> {
        match self {
            Angle::ExactPi(p) => Some(*p),
            _ => None,
        }
    }

    /// Radian value of a constant angle.
    pub fn radians(&self) -> Result<f64, Error> {
        match self {
            Angle::ExactPi(p) => Ok(p.radians()),
            Angle::Float(r) => Ok(*r),
            Angle::Linear { .. } => Err(Error::LinearAngle),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Angle::ExactPi(p) => p.is_zero(),
            Angle::Float(r) => *r == 0.0,
            Angle::Linear { .. } => false,
        }
    }

    /// Whether the angle is an exact multiple of π/4.
    pub fn is_quarter_multiple(&self) -> bool {
        self.as_exact().and_then(|p| p.quarters()).is_some()
    }

    /// Whether the angle is exactly 0 or π.
    pub fn is_pi_multiple(&self) -> bool {
        matches!(self.as_exact(), Some(p) if p.den() == 1)
    }

    /// Sum of two angles. Panics when mixing a float with a linear
    /// expression; use [`Angle::checked_add`] when that can happen.
    pub fn add(&self, other: &Angle) -> Angle {
        self.checked_add(other).expect("cannot add a float angle to a linear expression")
    }

    pub fn checked_add(&self, other: &Angle) -> Result<Angle, Error> {
        match (self, other) {
            (Angle::ExactPi(a), Angle::ExactPi(b)) => Ok(Angle::ExactPi(a.add(*b))),
            (Angle::Linear { .. }, _) | (_, Angle::Linear { .. }) => {
                let (ca, ka) = self.linear_parts();
                let (cb, kb) = other.linear_parts();
                match (ka, kb) {
                    (Some(ka), Some(kb)) => Ok(Angle::linear(ca.into_iter().chain(cb), ka.add(kb))),
                    _ => Err(Error::LinearAngle),
                }
            }
            _ => Ok(Angle::float(self.radians()? + other.radians()?)),
        }
    }

    pub fn neg(&self) -> Angle {
        self.scale(-1)
    }

    pub fn scale(&self, k: i64) -> Angle {
        match self {
            Angle::ExactPi(p) => Angle::ExactPi(p.scale(k)),
            Angle::Float(r) => Angle::float(r * k as f64),
            Angle::Linear { coeffs, constant } => Angle::linear(
                coeffs.iter().map(|(v, c)| (v.clone(), c * k)),
                constant.scale(k),
            ),
        }
    }

    fn linear_parts(&self) -> (Vec<(String, i64)>, Option<PiFrac>) {
        match self {
            Angle::ExactPi(p) => (vec![], Some(*p)),
            Angle::Float(_) => (vec![], None),
            Angle::Linear { coeffs, constant } => {
                (coeffs.iter().map(|(v, c)| (v.clone(), *c)).collect(), Some(*constant))
            }
        }
    }

    pub fn variables(&self) -> Vec<String> {
        match self {
            Angle::Linear { coeffs, .. } => coeffs.keys().cloned().collect(),
            _ => vec![],
        }
    }

    /// Substitutes every variable. Missing variables are an error.
    pub fn instantiate(&self, binding: &Binding) -> Result<Angle, Error> {
        match self {
            Angle::Linear { coeffs, constant } => {
                let mut acc = Angle::ExactPi(*constant);
                for (v, c) in coeffs {
                    let val = binding.get(v).ok_or_else(|| Error::UnboundParameter(v.clone()))?;
                    acc = acc.checked_add(&val.scale(*c))?;
                }
                Ok(acc)
            }
            other => Ok(other.clone()),
        }
    }

    /// Exact phase factor `e^{iα}` for multiples of π/4.
    pub fn phase_exact(&self) -> Result<CycloScalar, Error> {
        scalar_from_phase(self)
    }

    pub fn phase_float(&self) -> Result<ApproxScalar, Error> {
        let r = self.radians()?;
        Ok(ApproxScalar::from_polar(1.0, r))
    }

    /// Semantic equality of constant angles modulo 2π (floats to 1e-12).
    pub fn approx_eq(&self, other: &Angle) -> bool {
        match (self, other) {
            (Angle::ExactPi(a), Angle::ExactPi(b)) => a == b,
            (Angle::Linear { .. }, _) | (_, Angle::Linear { .. }) => self == other,
            _ => {
                let tau = 2.0 * std::f64::consts::PI;
                let d = (self.radians().unwrap() - other.radians().unwrap()).rem_euclid(tau);
                d < 1e-12 || tau - d < 1e-12
            }
        }
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Angle::ExactPi(p) => write!(f, "{p}"),
            Angle::Float(r) => write!(f, "{r}"),
            Angle::Linear { coeffs, constant } => {
                let mut first = true;
                for (v, c) in coeffs {
                    if !first || *c < 0 {
                        write!(f, "{}", if *c < 0 { "-" } else { "+" })?;
                    }
                    if c.abs() != 1 {
                        write!(f, "{}", c.abs())?;
                    }
                    write!(f, "{v}")?;
                    first = false;
                }
                if !constant.is_zero() {
                    write!(f, "+{constant}")?;
                }
                Ok(())
            }
        }
    }
}

/// Values for angle variables.
pub type Binding = BTreeMap<String, Angle>;

/// `e^{iα}` as an exact scalar; the angle must be a multiple of π/4.
pub fn scalar_from_phase(angle: &Angle) -> Result<CycloScalar, Error> {
    match angle {
        Angle::ExactPi(p) => p
            .quarters()
            .map(CycloScalar::omega_pow)
            .ok_or_else(|| Error::NotExactAngle(angle.to_string())),
        Angle::Float(_) => Err(Error::NotExactAngle(angle.to_string())),
        Angle::Linear { .. } => Err(Error::LinearAngle),
    }
}
