//! The golden field ℚ(τ), τ² = τ + 1.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Serialize, Serializer};

use super::rational::Rational;
use crate::error::Error;

/// Real value of τ = (1 + √5) / 2.
pub const TAU_F64: f64 = 1.618_033_988_749_895;

/// `a + b·τ` with rational `a`, `b`.
///
/// The pair `(a, b)` is the canonical form: τ is irrational, so equality of
/// values is componentwise equality and the derived `Hash` is sound.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GoldenNumber {
    a: Rational,
    b: Rational,
}

impl GoldenNumber {
    pub const fn new(a: Rational, b: Rational) -> Self {
        GoldenNumber { a, b }
    }

    pub const fn zero() -> Self {
        GoldenNumber::new(Rational::zero(), Rational::zero())
    }

    pub const fn one() -> Self {
        GoldenNumber::new(Rational::one(), Rational::zero())
    }

    pub const fn tau() -> Self {
        GoldenNumber::new(Rational::zero(), Rational::one())
    }

    pub const fn int(n: i64) -> Self {
        GoldenNumber::new(Rational::from_i64(n), Rational::zero())
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        GoldenNumber::new(Rational::new(num, den), Rational::zero())
    }

    /// `a + b·τ` from machine integers.
    pub fn from_ints(a: i64, b: i64) -> Self {
        GoldenNumber::new(Rational::from_i64(a), Rational::from_i64(b))
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn tau_part(&self) -> &Rational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Rational integer (τ-part zero and integral rational part).
    pub fn is_integer(&self) -> bool {
        self.b.is_zero() && self.a.is_integer()
    }

    /// Field automorphism τ ↦ 1 − τ.
    pub fn galois_conjugate(&self) -> Self {
        GoldenNumber::new(&self.a + &self.b, -&self.b)
    }

    /// Field norm x·conj(x) = a² + ab − b², a rational.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a + &self.a * &self.b - &self.b * &self.b
    }

    pub fn inverse(&self) -> Result<Self, Error> {
        if self.b.is_zero() {
            return Ok(GoldenNumber::new(self.a.checked_recip()?, Rational::zero()));
        }
        let n = self.norm();
        // n = 0 only for x = 0 since √5 is irrational.
        let inv_n = n.checked_recip()?;
        let c = self.galois_conjugate();
        Ok(GoldenNumber::new(&c.a * &inv_n, &c.b * &inv_n))
    }

    /// Exact sign of the real value.
    pub fn signum(&self) -> i32 {
        // 2(a + bτ) = p + q√5 with p = 2a + b, q = b.
        let p = &(&self.a + &self.a) + &self.b;
        let q = &self.b;
        let (sp, sq) = (p.signum(), q.signum());
        if sp >= 0 && sq >= 0 {
            return (sp + sq).signum();
        }
        if sp <= 0 && sq <= 0 {
            return -1;
        }
        // Opposite signs: compare p² with 5q².
        let lhs = &p * &p;
        let rhs = q * q * Rational::from_i64(5);
        match lhs.cmp(&rhs) {
            Ordering::Greater => sp,
            Ordering::Less => sq,
            Ordering::Equal => 0,
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    /// Real embedding with τ = (1+√5)/2.
    pub fn to_f64(&self) -> f64 {
        self.a.to_f64() + self.b.to_f64() * TAU_F64
    }

    /// Real embedding accurate to better than `10^-precision`.
    ///
    /// Plain `f64` arithmetic suffices up to about 15 digits for moderate
    /// magnitudes; beyond that the value is refined with a scaled integer
    /// square root of 5.
    pub fn embed_real(&self, precision: u32) -> f64 {
        let quick = self.to_f64();
        let scale = quick.abs().max(self.a.to_f64().abs()).max(self.b.to_f64().abs());
        if precision <= 12 && scale < 1e3 {
            return quick;
        }
        use num_bigint::BigInt;
        use num_traits::ToPrimitive;
        // √5 ≈ s / 10^k, s = floor(sqrt(5·10^{2k})).
        let k = precision as usize + 20;
        let ten_k = BigInt::from(10u32).pow(k as u32);
        let s = (BigInt::from(5u32) * &ten_k * &ten_k).sqrt();
        let sqrt5 = num_rational::BigRational::new(s, ten_k);
        let half = num_rational::BigRational::new(1.into(), 2.into());
        let tau = (num_rational::BigRational::from_integer(1.into()) + sqrt5) * &half;
        let v = self.a.to_big() + self.b.to_big() * tau;
        v.to_f64().unwrap_or(quick)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = GoldenNumber::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return GoldenNumber::zero();
        }
        if self.b.is_zero() && rhs.b.is_zero() {
            return GoldenNumber::new(&self.a * &rhs.a, Rational::zero());
        }
        // (a + bτ)(c + dτ) = ac + bd + (ad + bc + bd)τ
        let bd = &self.b * &rhs.b;
        let a = &self.a * &rhs.a + &bd;
        let b = &self.a * &rhs.b + &self.b * &rhs.a + bd;
        GoldenNumber::new(a, b)
    }
}

impl From<Rational> for GoldenNumber {
    fn from(r: Rational) -> Self {
        GoldenNumber::new(r, Rational::zero())
    }
}

impl From<i64> for GoldenNumber {
    fn from(n: i64) -> Self {
        GoldenNumber::int(n)
    }
}

impl Ord for GoldenNumber {
    /// The real order.
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum().cmp(&0)
    }
}

impl PartialOrd for GoldenNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Neg for &GoldenNumber {
    type Output = GoldenNumber;
    fn neg(self) -> GoldenNumber {
        GoldenNumber::new(-&self.a, -&self.b)
    }
}

impl Neg for GoldenNumber {
    type Output = GoldenNumber;
    fn neg(self) -> GoldenNumber {
        -&self
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&GoldenNumber> for &GoldenNumber {
            type Output = GoldenNumber;
            fn $method(self, rhs: &GoldenNumber) -> GoldenNumber {
                let f: fn(&GoldenNumber, &GoldenNumber) -> GoldenNumber = $body;
                f(self, rhs)
            }
        }
        impl $trait<GoldenNumber> for GoldenNumber {
            type Output = GoldenNumber;
            fn $method(self, rhs: GoldenNumber) -> GoldenNumber {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&GoldenNumber> for GoldenNumber {
            type Output = GoldenNumber;
            fn $method(self, rhs: &GoldenNumber) -> GoldenNumber {
                (&self).$method(rhs)
            }
        }
        impl $trait<GoldenNumber> for &GoldenNumber {
            type Output = GoldenNumber;
            fn $method(self, rhs: GoldenNumber) -> GoldenNumber {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |x, y| GoldenNumber::new(&x.a + &y.a, &x.b + &y.b));
forward_binop!(Sub, sub, |x, y| GoldenNumber::new(&x.a - &y.a, &x.b - &y.b));
forward_binop!(Mul, mul, |x, y| x.mul_ref(y));
// Panics on a zero divisor; use `inverse` for a checked division.
forward_binop!(Div, div, |x, y| x.mul_ref(
    &y.inverse().expect("golden division by zero")
));

impl fmt::Display for GoldenNumber {
    /// Canonical text form, e.g. `1/2+3/2*t`, `-t`, `5`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tau_term = |b: &Rational| -> String {
            if b.is_one() {
                "t".to_string()
            } else if *b == Rational::from_i64(-1) {
                "-t".to_string()
            } else {
                format!("{b}*t")
            }
        };
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}", tau_term(&self.b)),
            (false, false) => {
                let t = tau_term(&self.b);
                if t.starts_with('-') {
                    write!(f, "{}{}", self.a, t)
                } else {
                    write!(f, "{}+{}", self.a, t)
                }
            }
        }
    }
}

impl fmt::Debug for GoldenNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for GoldenNumber {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for GoldenNumber {
    type Err = Error;

    /// Parses sums of rational and τ terms: `a/b+c/d*t`, `t`, `-3*t+1`, ...
    fn from_str(s: &str) -> Result<Self, Error> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty golden number".into()));
        }
        // Split before every sign that is not the leading character.
        let mut terms = Vec::new();
        let mut start = 0;
        for (i, ch) in compact.char_indices() {
            if i > start && (ch == '+' || ch == '-') {
                terms.push(&compact[start..i]);
                start = i;
            }
        }
        terms.push(&compact[start..]);

        let mut value = GoldenNumber::zero();
        for term in terms {
            let (sign, body) = match term.as_bytes().first() {
                Some(b'+') => (1, &term[1..]),
                Some(b'-') => (-1, &term[1..]),
                _ => (1, term),
            };
            let bad = || Error::Parse(format!("invalid golden term `{term}` in `{s}`"));
            if body.is_empty() {
                return Err(bad());
            }
            let (coeff, is_tau) = if body == "t" {
                (Rational::one(), true)
            } else if let Some(c) = body.strip_suffix("*t") {
                (c.parse::<Rational>().map_err(|_| bad())?, true)
            } else {
                (body.parse::<Rational>().map_err(|_| bad())?, false)
            };
            let coeff = if sign < 0 { -coeff } else { coeff };
            value = if is_tau {
                value + GoldenNumber::new(Rational::zero(), coeff)
            } else {
                value + GoldenNumber::from(coeff)
            };
        }
        Ok(value)
    }
}
