//! Exact arithmetic in the field Q(√2).
//!
//! Every coordinate and length in the crate is a [`QuadraticRational`]
//! `p + q√2` with `p`, `q` reduced big-integer fractions. The representation
//! is unique per value, so structural equality is value equality, and the
//! ordering is decided with integer comparisons only.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A number `p + q√2` with rational `p` and `q`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QuadraticRational {
    p: BigRational,
    q: BigRational,
}

/// Shorthand used throughout the crate.
pub type Qr = QuadraticRational;

impl QuadraticRational {
    pub fn new(p: BigRational, q: BigRational) -> Self {
        Self { p, q }
    }

    /// Builds `pn/pd + (qn/qd)√2`. Panics on a zero denominator.
    pub fn from_parts(pn: i64, pd: i64, qn: i64, qd: i64) -> Self {
        Self { p: BigRational::new(pn.into(), pd.into()), q: BigRational::new(qn.into(), qd.into()) }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_parts(n, 1, 0, 1)
    }

    /// `a + b√2` for integers `a`, `b`.
    pub fn from_ints(a: i64, b: i64) -> Self {
        Self::from_parts(a, 1, b, 1)
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn sqrt2() -> Self {
        Self::from_ints(0, 1)
    }

    /// `√2 / 2`, the coordinate of the unit vector at 45°.
    pub fn half_sqrt2() -> Self {
        Self::from_parts(0, 1, 1, 2)
    }

    /// Rational part.
    pub fn p(&self) -> &BigRational {
        &self.p
    }

    /// Coefficient of √2.
    pub fn q(&self) -> &BigRational {
        &self.q
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.q.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.q.is_zero() && self.p.is_integer()
    }

    /// The value as an `i64` when it is an integer that fits.
    pub fn to_i64(&self) -> Option<i64> {
        if self.is_integer() {
            self.p.to_integer().to_i64()
        } else {
            None
        }
    }

    /// Sign of the real value: -1, 0 or +1.
    pub fn signum(&self) -> i32 {
        let sp = sign_of(&self.p);
        let sq = sign_of(&self.q);
        if sp >= 0 && sq >= 0 {
            return (sp + sq).signum();
        }
        if sp <= 0 && sq <= 0 {
            return -1;
        }
        // Mixed signs: compare p² with 2q² using a²d² vs 2c²b² for p = a/b, q = c/d.
        let (a, b) = (self.p.numer(), self.p.denom());
        let (c, d) = (self.q.numer(), self.q.denom());
        let lhs: BigInt = a * a * d * d;
        let rhs: BigInt = BigInt::from(2) * c * c * b * b;
        let dominant = match lhs.cmp(&rhs) {
            Ordering::Greater => sp,
            Ordering::Less => sq,
            // p² = 2q² has no rational solution besides zero.
            Ordering::Equal => unreachable!("p^2 = 2 q^2 with p, q nonzero rationals"),
        };
        dominant
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Galois conjugate `p - q√2`.
    pub fn conjugate(&self) -> Self {
        Self { p: self.p.clone(), q: -self.q.clone() }
    }

    /// Field norm `p² - 2q²`.
    pub fn norm(&self) -> BigRational {
        &self.p * &self.p - BigRational::from_integer(2.into()) * &self.q * &self.q
    }

    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        let c = self.conjugate();
        Some(Self { p: c.p / &n, q: c.q / n })
    }

    /// Approximate value, for display and rendering only.
    pub fn to_f64(&self) -> f64 {
        let p = self.p.to_f64().unwrap_or(f64::NAN);
        let q = self.q.to_f64().unwrap_or(f64::NAN);
        if self.p.is_positive() == self.q.is_positive() || self.p.is_zero() || self.q.is_zero() {
            return p + q * std::f64::consts::SQRT_2;
        }
        // opposite signs: divide the exact norm by the conjugate to avoid cancellation
        let norm = self.norm().to_f64().unwrap_or(f64::NAN);
        norm / (p - q * std::f64::consts::SQRT_2)
    }

    /// Exact floor of the real value.
    pub fn floor(&self) -> BigInt {
        let guess = self.to_f64().floor();
        let mut n = if guess.is_finite() { BigInt::from(guess as i64) } else { self.p.floor().to_integer() };
        while *self < Self::from_bigint(n.clone()) {
            n -= 1;
        }
        while *self >= Self::from_bigint(&n + 1) {
            n += 1;
        }
        n
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self { p: BigRational::from_integer(n), q: BigRational::zero() }
    }

    pub fn from_rational(p: BigRational) -> Self {
        Self { p, q: BigRational::zero() }
    }

    pub fn square(&self) -> Self {
        self * self
    }

    /// Wire form `[p_num, p_den, q_num, q_den]`.
    pub fn to_wire(&self) -> Option<[i64; 4]> {
        Some([self.p.numer().to_i64()?, self.p.denom().to_i64()?, self.q.numer().to_i64()?, self.q.denom().to_i64()?])
    }

    /// Parses the wire form, requiring reduced fractions with positive denominators.
    pub fn from_wire(w: [i64; 4]) -> Result<Self, String> {
        let [pn, pd, qn, qd] = w;
        if pd <= 0 || qd <= 0 {
            return Err(format!("denominators must be positive, got {pd} and {qd}"));
        }
        let v = Self::from_parts(pn, pd, qn, qd);
        if v.to_wire() != Some(w) {
            return Err(format!("fractions must be reduced: {w:?}"));
        }
        Ok(v)
    }
}

fn sign_of(r: &BigRational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

impl Ord for QuadraticRational {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum().cmp(&0)
    }
}

impl PartialOrd for QuadraticRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<i64> for QuadraticRational {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl Neg for QuadraticRational {
    type Output = Self;
    fn neg(self) -> Self {
        Self { p: -self.p, q: -self.q }
    }
}

impl Neg for &QuadraticRational {
    type Output = QuadraticRational;
    fn neg(self) -> QuadraticRational {
        QuadraticRational { p: -self.p.clone(), q: -self.q.clone() }
    }
}

impl<'a> Add<&'a QuadraticRational> for &'a QuadraticRational {
    type Output = QuadraticRational;
    fn add(self, rhs: &QuadraticRational) -> QuadraticRational {
        QuadraticRational { p: &self.p + &rhs.p, q: &self.q + &rhs.q }
    }
}

impl<'a> Sub<&'a QuadraticRational> for &'a QuadraticRational {
    type Output = QuadraticRational;
    fn sub(self, rhs: &QuadraticRational) -> QuadraticRational {
        QuadraticRational { p: &self.p - &rhs.p, q: &self.q - &rhs.q }
    }
}

impl<'a> Mul<&'a QuadraticRational> for &'a QuadraticRational {
    type Output = QuadraticRational;
    fn mul(self, rhs: &QuadraticRational) -> QuadraticRational {
        let two = BigRational::from_integer(2.into());
        QuadraticRational { p: &self.p * &rhs.p + two * &self.q * &rhs.q, q: &self.p * &rhs.q + &self.q * &rhs.p }
    }
}

impl<'a> Div<&'a QuadraticRational> for &'a QuadraticRational {
    type Output = QuadraticRational;
    /// Panics on division by zero.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &QuadraticRational) -> QuadraticRational {
        let inv = rhs.recip().expect("division by zero in Q(sqrt 2)");
        self * &inv
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<QuadraticRational> for QuadraticRational {
            type Output = QuadraticRational;
            fn $method(self, rhs: QuadraticRational) -> QuadraticRational {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a QuadraticRational> for QuadraticRational {
            type Output = QuadraticRational;
            fn $method(self, rhs: &QuadraticRational) -> QuadraticRational {
                (&self).$method(rhs)
            }
        }
        impl<'a> $tr<QuadraticRational> for &'a QuadraticRational {
            type Output = QuadraticRational;
            fn $method(self, rhs: QuadraticRational) -> QuadraticRational {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&QuadraticRational> for QuadraticRational {
    fn add_assign(&mut self, rhs: &QuadraticRational) {
        self.p += &rhs.p;
        self.q += &rhs.q;
    }
}

impl SubAssign<&QuadraticRational> for QuadraticRational {
    fn sub_assign(&mut self, rhs: &QuadraticRational) {
        self.p -= &rhs.p;
        self.q -= &rhs.q;
    }
}

impl MulAssign<&QuadraticRational> for QuadraticRational {
    fn mul_assign(&mut self, rhs: &QuadraticRational) {
        *self = &*self * rhs;
    }
}

impl Zero for QuadraticRational {
    fn zero() -> Self {
        Self::default()
    }
    fn is_zero(&self) -> bool {
        QuadraticRational::is_zero(self)
    }
}

impl One for QuadraticRational {
    fn one() -> Self {
        Self::from_int(1)
    }
}

impl fmt::Display for QuadraticRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.p.is_zero(), self.q.is_zero()) {
            (_, true) => write!(f, "{}", self.p),
            (true, false) => write!(f, "{}√2", self.q),
            (false, false) => {
                if self.q.is_negative() {
                    write!(f, "{}-{}√2", self.p, -self.q.clone())
                } else {
                    write!(f, "{}+{}√2", self.p, self.q)
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse {0:?} as a number of the form a+b√2")]
pub struct ParseQrError(String);

/// Parses the `Display` form (`3`, `-1/2`, `2√2`, `4+1√2`, `1-3√2`);
/// `sqrt2` may stand for `√2` and a bare `√2` means `1√2`.
impl FromStr for QuadraticRational {
    type Err = ParseQrError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseQrError(s.to_string());
        let ratio = |t: &str| -> Result<BigRational, ParseQrError> {
            let r: BigRational = t.parse().map_err(|_| err())?;
            Ok(r)
        };
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let compact = compact.replace("sqrt2", "√2");
        if compact.is_empty() {
            return Err(err());
        }
        let Some(body) = compact.strip_suffix("√2") else {
            return Ok(Self::from_rational(ratio(compact.trim_start_matches('+'))?));
        };
        let split = body.char_indices().skip(1).filter(|(_, c)| *c == '+' || *c == '-').last().map(|(i, _)| i);
        let (p_str, q_str) = match split {
            Some(i) => (&body[..i], &body[i..]),
            None => ("0", body),
        };
        let q = match q_str {
            "" | "+" => BigRational::one(),
            "-" => -BigRational::one(),
            t => ratio(t.trim_start_matches('+'))?,
        };
        Ok(Self::new(ratio(p_str.trim_start_matches('+'))?, q))
    }
}

impl fmt::Debug for QuadraticRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Qr({self})")
    }
}

impl Serialize for QuadraticRational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::Error as _;
        self.to_wire().ok_or_else(|| S::Error::custom(format!("{self} does not fit the i64 wire form")))?.serialize(s)
    }
}

impl<'de> Deserialize<'de> for QuadraticRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let w = <[i64; 4]>::deserialize(d)?;
        Self::from_wire(w).map_err(D::Error::custom)
    }
}
