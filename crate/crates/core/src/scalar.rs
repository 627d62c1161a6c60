//! Exact coefficients in the field `Q(i, √3)`.
//!
//! An element is stored as `(a + b√3) + i(c + d√3)` with rational `a, b, c, d`.
//! Equality is structural on the four rationals, which is exact because
//! `{1, √3, i, i√3}` is a basis over `Q`.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

/// Builds a rational `num/den`. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ScalarExact {
    /// rational part
    pub a: Rational,
    /// coefficient of √3
    pub b: Rational,
    /// coefficient of i
    pub c: Rational,
    /// coefficient of i√3
    pub d: Rational,
}

impl ScalarExact {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Self {
        ScalarExact { a, b, c, d }
    }

    pub fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn i() -> Self {
        ScalarExact::new(
            Rational::zero(),
            Rational::zero(),
            Rational::one(),
            Rational::zero(),
        )
    }

    pub fn sqrt3() -> Self {
        ScalarExact::new(
            Rational::zero(),
            Rational::one(),
            Rational::zero(),
            Rational::zero(),
        )
    }

    pub fn from_rational(r: Rational) -> Self {
        ScalarExact::new(r, Rational::zero(), Rational::zero(), Rational::zero())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_frac(num: i64, den: i64) -> Self {
        Self::from_rational(rat(num, den))
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    /// True when the value lies in `Q(√3)`, i.e. has no imaginary part.
    pub fn is_real(&self) -> bool {
        self.c.is_zero() && self.d.is_zero()
    }

    /// Complex conjugation: `i ↦ -i`, `√3 ↦ √3`.
    pub fn conj(&self) -> Self {
        ScalarExact::new(
            self.a.clone(),
            self.b.clone(),
            -self.c.clone(),
            -self.d.clone(),
        )
    }

    pub fn re(&self) -> Self {
        ScalarExact::new(
            self.a.clone(),
            self.b.clone(),
            Rational::zero(),
            Rational::zero(),
        )
    }

    pub fn im(&self) -> Self {
        ScalarExact::new(
            self.c.clone(),
            self.d.clone(),
            Rational::zero(),
            Rational::zero(),
        )
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        // x = p + i q with p, q in Q(√3); 1/x = (p - i q) / (p² + q²).
        let (p0, p1) = (&self.a, &self.b);
        let (q0, q1) = (&self.c, &self.d);
        let three = rat(3, 1);
        // n = p² + q² = n0 + n1 √3
        let n0 = p0 * p0 + &three * p1 * p1 + q0 * q0 + &three * q1 * q1;
        let n1 = rat(2, 1) * (p0 * p1 + q0 * q1);
        // 1/n = (n0 - n1 √3) / (n0² - 3 n1²)
        let norm = &n0 * &n0 - &three * &n1 * &n1;
        let m0 = &n0 / &norm;
        let m1 = -(&n1 / &norm);
        let conj = self.conj();
        Some(conj * ScalarExact::new(m0, m1, Rational::zero(), Rational::zero()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.clone() * r)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..n {
            out *= self.clone();
        }
        out
    }

    /// Nearest complex double, for numeric cross-checks only.
    pub fn to_f64_pair(&self) -> (f64, f64) {
        let s3 = 3f64.sqrt();
        let f = |r: &Rational| r.to_f64().unwrap_or(f64::NAN);
        (f(&self.a) + s3 * f(&self.b), f(&self.c) + s3 * f(&self.d))
    }

    /// Exactly one of the four basis coordinates is nonzero.
    fn single_component(&self) -> Option<(usize, &Rational)> {
        let parts = [&self.a, &self.b, &self.c, &self.d];
        let mut found = None;
        for (k, p) in parts.iter().enumerate() {
            if !p.is_zero() {
                if found.is_some() {
                    return None;
                }
                found = Some((k, *p));
            }
        }
        found
    }

    /// Whether printing this value needs a leading minus sign when it is a
    /// single basis monomial.
    pub(crate) fn is_negative_monomial(&self) -> bool {
        matches!(self.single_component(), Some((_, r)) if r.is_negative())
    }
}

fn fmt_rational(r: &Rational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.denom().is_one() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

const BASIS: [&str; 4] = ["", "s3", "i", "s3*i"];

/// Writes `|r| * basis` (no sign), omitting a unit rational.
fn fmt_monomial(r: &Rational, k: usize, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let mag = r.abs();
    if k == 0 {
        return fmt_rational(&mag, f);
    }
    if mag.is_one() {
        write!(f, "{}", BASIS[k])
    } else {
        fmt_rational(&mag, f)?;
        write!(f, "*{}", BASIS[k])
    }
}

impl fmt::Display for ScalarExact {
    /// Parseable text: `3/4`, `-s3`, `2/3*i`, or a parenthesised sum
    /// `(1/2 + 1/2*s3*i)` when more than one coordinate is nonzero.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if let Some((k, r)) = self.single_component() {
            if r.is_negative() {
                write!(f, "-")?;
            }
            return fmt_monomial(r, k, f);
        }
        write!(f, "(")?;
        let parts = [&self.a, &self.b, &self.c, &self.d];
        let mut first = true;
        for (k, r) in parts.iter().enumerate() {
            if r.is_zero() {
                continue;
            }
            if first {
                if r.is_negative() {
                    write!(f, "-")?;
                }
            } else if r.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            fmt_monomial(r, k, f)?;
            first = false;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for ScalarExact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl Add for ScalarExact {
    type Output = ScalarExact;
    fn add(self, rhs: ScalarExact) -> ScalarExact {
        ScalarExact::new(
            self.a + rhs.a,
            self.b + rhs.b,
            self.c + rhs.c,
            self.d + rhs.d,
        )
    }
}

impl<'a> Add<&'a ScalarExact> for &'a ScalarExact {
    type Output = ScalarExact;
    fn add(self, rhs: &ScalarExact) -> ScalarExact {
        ScalarExact::new(
            &self.a + &rhs.a,
            &self.b + &rhs.b,
            &self.c + &rhs.c,
            &self.d + &rhs.d,
        )
    }
}

impl AddAssign for ScalarExact {
    fn add_assign(&mut self, rhs: ScalarExact) {
        self.a += rhs.a;
        self.b += rhs.b;
        self.c += rhs.c;
        self.d += rhs.d;
    }
}

impl AddAssign<&ScalarExact> for ScalarExact {
    fn add_assign(&mut self, rhs: &ScalarExact) {
        self.a += &rhs.a;
        self.b += &rhs.b;
        self.c += &rhs.c;
        self.d += &rhs.d;
    }
}

impl Neg for ScalarExact {
    type Output = ScalarExact;
    fn neg(self) -> ScalarExact {
        ScalarExact::new(-self.a, -self.b, -self.c, -self.d)
    }
}

impl Sub for ScalarExact {
    type Output = ScalarExact;
    fn sub(self, rhs: ScalarExact) -> ScalarExact {
        self + (-rhs)
    }
}

impl SubAssign for ScalarExact {
    fn sub_assign(&mut self, rhs: ScalarExact) {
        *self += -rhs;
    }
}

impl<'a> Mul<&'a ScalarExact> for &'a ScalarExact {
    type Output = ScalarExact;
    fn mul(self, rhs: &ScalarExact) -> ScalarExact {
        // (p + i q)(r + i s) over Q(√3), with (x0 + x1√3)(y0 + y1√3) = (x0y0 + 3x1y1) + (x0y1 + x1y0)√3
        let three = rat(3, 1);
        let mul3 = |x0: &Rational, x1: &Rational, y0: &Rational, y1: &Rational| {
            (x0 * y0 + &three * x1 * y1, x0 * y1 + x1 * y0)
        };
        let (pr0, pr1) = mul3(&self.a, &self.b, &rhs.a, &rhs.b);
        let (qs0, qs1) = mul3(&self.c, &self.d, &rhs.c, &rhs.d);
        let (ps0, ps1) = mul3(&self.a, &self.b, &rhs.c, &rhs.d);
        let (qr0, qr1) = mul3(&self.c, &self.d, &rhs.a, &rhs.b);
        ScalarExact::new(pr0 - qs0, pr1 - qs1, ps0 + qr0, ps1 + qr1)
    }
}

impl Mul for ScalarExact {
    type Output = ScalarExact;
    fn mul(self, rhs: ScalarExact) -> ScalarExact {
        &self * &rhs
    }
}

impl MulAssign for ScalarExact {
    fn mul_assign(&mut self, rhs: ScalarExact) {
        *self = &*self * &rhs;
    }
}

impl Div for ScalarExact {
    type Output = ScalarExact;
    /// Panics on division by zero; use [`ScalarExact::checked_div`] otherwise.
    fn div(self, rhs: ScalarExact) -> ScalarExact {
        self.checked_div(&rhs)
            .expect("division by zero in Q(i, sqrt3)")
    }
}

impl From<i64> for ScalarExact {
    fn from(n: i64) -> Self {
        ScalarExact::from_int(n)
    }
}

impl From<Rational> for ScalarExact {
    fn from(r: Rational) -> Self {
        ScalarExact::from_rational(r)
    }
}
