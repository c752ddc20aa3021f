//! Exact arithmetic in the field `Q(√3)`.
//!
//! Every wall normal used by the shipped models has coordinates that are
//! multiples of `1/2` and `√3/2`, so sign tests, comparisons and line
//! intersections can all be carried out without rounding.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

pub type Rational = Ratio<i128>;

/// `rational + radical·√3`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Exact {
    rational: Rational,
    radical: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse exact number {input:?}: {reason}")]
pub struct ParseExactError {
    pub input: String,
    pub reason: &'static str,
}

impl Exact {
    pub const fn new(rational: Rational, radical: Rational) -> Self {
        Exact { rational, radical }
    }

    pub fn int(n: i64) -> Self {
        Exact::from(Rational::from_integer(n as i128))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Exact::from(Rational::new(num as i128, den as i128))
    }

    pub fn zero() -> Self {
        Exact::default()
    }

    pub fn one() -> Self {
        Exact::int(1)
    }

    /// `√3`.
    pub fn sqrt3() -> Self {
        Exact::new(Rational::zero(), Rational::from_integer(1))
    }

    pub fn rational_part(&self) -> Rational {
        self.rational
    }

    pub fn radical_part(&self) -> Rational {
        self.radical
    }

    pub fn is_rational(&self) -> bool {
        self.radical.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.radical.is_zero()
    }

    /// Exact sign: `a + b√3` is compared through `a²` against `3b²` when the
    /// two parts disagree in sign.
    pub fn signum(&self) -> Ordering {
        let a = self.rational.cmp(&Rational::zero());
        let b = self.radical.cmp(&Rational::zero());
        match (a, b) {
            (Ordering::Equal, s) | (s, Ordering::Equal) => s,
            (sa, sb) if sa == sb => sa,
            (sa, _) => {
                let a2 = self.rational * self.rational;
                let b2 = self.radical * self.radical * Rational::from_integer(3);
                match a2.cmp(&b2) {
                    Ordering::Greater => sa,
                    Ordering::Less => sa.reverse(),
                    Ordering::Equal => Ordering::Equal,
                }
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.signum() == Ordering::Less
    }

    /// Galois conjugate `a - b√3`.
    pub fn conjugate(&self) -> Self {
        Exact::new(self.rational, -self.radical)
    }

    /// Field norm `a² - 3b²`.
    pub fn norm(&self) -> Rational {
        self.rational * self.rational - self.radical * self.radical * Rational::from_integer(3)
    }

    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        let c = self.conjugate();
        Some(Exact::new(c.rational / n, c.radical / n))
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -*self
        } else {
            *self
        }
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.rational.to_f64().unwrap_or(f64::NAN);
        let b = self.radical.to_f64().unwrap_or(f64::NAN);
        a + b * 3f64.sqrt()
    }

    /// Largest integer `n` with `n <= self`.
    pub fn floor(&self) -> i64 {
        let mut guess = self.to_f64().floor() as i64;
        while Exact::int(guess) > *self {
            guess -= 1;
        }
        while Exact::int(guess + 1) <= *self {
            guess += 1;
        }
        guess
    }

    /// The integer value, if this number is one.
    pub fn as_integer(&self) -> Option<i64> {
        if self.is_rational() && self.rational.is_integer() {
            self.rational.to_integer().to_i64()
        } else {
            None
        }
    }
}

impl From<Rational> for Exact {
    fn from(r: Rational) -> Self {
        Exact::new(r, Rational::zero())
    }
}

impl From<i64> for Exact {
    fn from(n: i64) -> Self {
        Exact::int(n)
    }
}

impl Add for Exact {
    type Output = Exact;
    fn add(self, rhs: Exact) -> Exact {
        Exact::new(self.rational + rhs.rational, self.radical + rhs.radical)
    }
}

impl AddAssign for Exact {
    fn add_assign(&mut self, rhs: Exact) {
        *self = *self + rhs;
    }
}

impl Sub for Exact {
    type Output = Exact;
    fn sub(self, rhs: Exact) -> Exact {
        Exact::new(self.rational - rhs.rational, self.radical - rhs.radical)
    }
}

impl Neg for Exact {
    type Output = Exact;
    fn neg(self) -> Exact {
        Exact::new(-self.rational, -self.radical)
    }
}

impl Mul for Exact {
    type Output = Exact;
    fn mul(self, rhs: Exact) -> Exact {
        let three = Rational::from_integer(3);
        Exact::new(
            self.rational * rhs.rational + three * self.radical * rhs.radical,
            self.rational * rhs.radical + self.radical * rhs.rational,
        )
    }
}

impl Div for Exact {
    type Output = Exact;
    /// Panics on division by zero, like the integer types.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Exact) -> Exact {
        self * rhs.recip().expect("division by zero in Q(√3)")
    }
}

impl PartialOrd for Exact {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Exact {
    fn cmp(&self, other: &Self) -> Ordering {
        (*self - *other).signum()
    }
}

fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.rational.is_zero(), self.radical.is_zero()) {
            (_, true) => write!(f, "{}", fmt_rational(&self.rational)),
            (true, false) => write!(f, "{}", radical_term(&self.radical)),
            (false, false) => {
                let sign = if self.radical.is_negative() { "-" } else { "+" };
                write!(
                    f,
                    "{}{}{}",
                    fmt_rational(&self.rational),
                    sign,
                    radical_term(&self.radical.abs())
                )
            }
        }
    }
}

/// `r·√3` written as `√3`, `-√3/2`, `3√3/4`.
fn radical_term(r: &Rational) -> String {
    let numer = match *r.numer() {
        1 => String::new(),
        -1 => "-".to_string(),
        n => n.to_string(),
    };
    if *r.denom() == 1 {
        format!("{numer}√3")
    } else {
        format!("{numer}√3/{}", r.denom())
    }
}

impl fmt::Debug for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i128 = n.trim().parse().ok()?;
            let d: i128 = d.trim().parse().ok()?;
            (d != 0).then(|| Rational::new(n, d))
        }
        None => s.parse::<i128>().ok().map(Rational::from_integer),
    }
}

/// Accepts sums of terms such as `1/2`, `-√3/2`, `1/2√3`, `3+2√3`,
/// `sqrt3` or `r3`.
impl FromStr for Exact {
    type Err = ParseExactError;

    fn from_str(input: &str) -> Result<Self, Self::Err> {
        let err = |reason| ParseExactError {
            input: input.to_string(),
            reason,
        };
        let normalized = input
            .replace("sqrt3", "√3")
            .replace("r3", "√3")
            .replace(' ', "");
        if normalized.is_empty() {
            return Err(err("empty"));
        }
        // Split into signed terms, keeping signs that follow a '/' attached.
        let mut terms: Vec<String> = Vec::new();
        let mut current = String::new();
        for (i, ch) in normalized.chars().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 && !current.ends_with('/') && !current.is_empty()
            {
                terms.push(std::mem::take(&mut current));
            }
            current.push(ch);
        }
        terms.push(current);

        let mut total = Exact::zero();
        for term in terms {
            let (negative, body) = match term.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, term.trim_start_matches('+').to_string()),
            };
            let value = if let Some(pos) = body.find('√') {
                let before = &body[..pos];
                let after = &body[pos + '√'.len_utf8() + 1..];
                if !body[pos + '√'.len_utf8()..].starts_with('3') {
                    return Err(err("only √3 is supported"));
                }
                let coeff = if before.is_empty() {
                    Rational::from_integer(1)
                } else {
                    parse_rational(before.trim_end_matches('*'))
                        .ok_or_else(|| err("bad √3 coefficient"))?
                };
                let coeff = if after.is_empty() {
                    coeff
                } else {
                    let den = after
                        .strip_prefix('/')
                        .and_then(|d| d.parse::<i128>().ok())
                        .filter(|d| *d != 0)
                        .ok_or_else(|| err("bad denominator after √3"))?;
                    coeff / Rational::from_integer(den)
                };
                Exact::new(Rational::zero(), coeff)
            } else {
                Exact::from(parse_rational(&body).ok_or_else(|| err("bad rational term"))?)
            };
            total += if negative { -value } else { value };
        }
        Ok(total)
    }
}

impl serde::Serialize for Exact {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for Exact {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(serde::Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(n) => Ok(Exact::int(n)),
            Raw::Text(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// Dot product of two equal-length vectors.
pub fn dot(a: &[Exact], b: &[Exact]) -> Exact {
    a.iter().zip(b).fold(Exact::zero(), |acc, (x, y)| acc + *x * *y)
}
