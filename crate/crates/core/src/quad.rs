//! Exact arithmetic in an imaginary quadratic field `K = Q(sqrt d)` and its
//! ring of integers `O_d = Z[w]`.
//!
//! Elements are written in the `{1, w}` basis where `w = (1 + sqrt d)/2` when
//! `d = 1 mod 4` and `w = sqrt d` otherwise. With `t = tr(w)` and `n = N(w)`
//! the multiplication rule is `w^2 = t*w - n`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The field `Q(sqrt d)` for a squarefree `d < 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "i64", into = "i64")]
pub struct QuadField {
    d: i64,
}

impl QuadField {
    pub fn new(d: i64) -> Result<Self> {
        if d >= 0 {
            return Err(Error::InvalidDiscriminant { d, reason: "must be negative" });
        }
        if !is_squarefree(d.unsigned_abs()) {
            return Err(Error::InvalidDiscriminant { d, reason: "must be squarefree" });
        }
        Ok(QuadField { d })
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    /// True when `w = (1 + sqrt d)/2`.
    pub fn half_integral_omega(&self) -> bool {
        self.d.rem_euclid(4) == 1
    }

    /// `tr(w)`: 1 for the half-integral basis, 0 otherwise.
    pub fn omega_trace(&self) -> i64 {
        if self.half_integral_omega() {
            1
        } else {
            0
        }
    }

    /// `N(w) = w * conj(w)`.
    pub fn norm_coeff(&self) -> i64 {
        if self.half_integral_omega() {
            (1 - self.d) / 4
        } else {
            -self.d
        }
    }

    pub fn zero(&self) -> QuadInt {
        QuadInt::new(*self, 0, 0)
    }

    pub fn one(&self) -> QuadInt {
        QuadInt::new(*self, 1, 0)
    }

    pub fn omega(&self) -> QuadInt {
        QuadInt::new(*self, 0, 1)
    }

    /// The unit group of `O_d`.
    pub fn units(&self) -> Vec<QuadInt> {
        match self.d {
            // i = w
            -1 => vec![
                self.one(),
                -self.one(),
                self.omega(),
                -self.omega(),
            ],
            // w = (1 + sqrt -3)/2 is a primitive sixth root of unity
            -3 => {
                let w = self.omega();
                let w2 = &w * &w;
                vec![self.one(), w.clone(), w2.clone(), -self.one(), -w, -w2]
            }
            _ => vec![self.one(), -self.one()],
        }
    }
}

impl TryFrom<i64> for QuadField {
    type Error = Error;
    fn try_from(d: i64) -> Result<Self> {
        QuadField::new(d)
    }
}

impl From<QuadField> for i64 {
    fn from(f: QuadField) -> i64 {
        f.d
    }
}

fn is_squarefree(mut m: u64) -> bool {
    let mut p = 2u64;
    while p * p <= m {
        if m.is_multiple_of(p) {
            m /= p;
            if m.is_multiple_of(p) {
                return false;
            }
        }
        p += 1;
    }
    true
}

/// An element `a + b*w` of `O_d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadInt {
    field: QuadField,
    a: BigInt,
    b: BigInt,
}

impl QuadInt {
    pub fn new(field: QuadField, a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        QuadInt { field, a: a.into(), b: b.into() }
    }

    pub fn field(&self) -> QuadField {
        self.field
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_unit(&self) -> bool {
        self.norm().is_one()
    }

    fn same_field(&self, other: &QuadInt) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch { left: self.field.d, right: other.field.d })
        }
    }

    pub fn try_add(&self, other: &QuadInt) -> Result<QuadInt> {
        self.same_field(other)?;
        Ok(QuadInt::new(self.field, &self.a + &other.a, &self.b + &other.b))
    }

    pub fn try_sub(&self, other: &QuadInt) -> Result<QuadInt> {
        self.same_field(other)?;
        Ok(QuadInt::new(self.field, &self.a - &other.a, &self.b - &other.b))
    }

    pub fn try_mul(&self, other: &QuadInt) -> Result<QuadInt> {
        self.same_field(other)?;
        // (a + bw)(c + ew) = ac + (ae + bc)w + be(t w - n)
        let t = self.field.omega_trace();
        let n = self.field.norm_coeff();
        let be = &self.b * &other.b;
        let a = &self.a * &other.a - &be * n;
        let b = &self.a * &other.b + &self.b * &other.a + &be * t;
        Ok(QuadInt::new(self.field, a, b))
    }

    /// Complex conjugate: `conj(w) = t - w`.
    pub fn conj(&self) -> QuadInt {
        let t = self.field.omega_trace();
        QuadInt::new(self.field, &self.a + &self.b * t, -&self.b)
    }

    /// Field norm `a^2 + t*a*b + n*b^2`.
    pub fn norm(&self) -> BigInt {
        let t = self.field.omega_trace();
        let n = self.field.norm_coeff();
        &self.a * &self.a + &self.a * &self.b * t + &self.b * &self.b * n
    }

    /// Trace `2a + t*b`.
    pub fn trace(&self) -> BigInt {
        &self.a * 2 + &self.b * self.field.omega_trace()
    }

    /// Exact quotient `self / other` if it lies in `O_d`.
    pub fn div_exact(&self, other: &QuadInt) -> Option<QuadInt> {
        let n = other.norm();
        if n.is_zero() {
            return None;
        }
        let p = self * &other.conj();
        let (qa, ra) = p.a.div_rem(&n);
        let (qb, rb) = p.b.div_rem(&n);
        if ra.is_zero() && rb.is_zero() {
            Some(QuadInt::new(self.field, qa, qb))
        } else {
            None
        }
    }

    /// Coordinates `(a, b)` as a lexicographic key.
    pub(crate) fn key(&self) -> (&BigInt, &BigInt) {
        (&self.a, &self.b)
    }
}

impl PartialOrd for QuadInt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on `(a, b)`; only meaningful within one field.
impl Ord for QuadInt {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

// The operator impls panic on mixed fields; use the `try_*` methods where
// operands come from untrusted input.
macro_rules! forward_binop {
    ($tr:ident, $method:ident, $try:ident) => {
        impl<'a> $tr<&'a QuadInt> for &'a QuadInt {
            type Output = QuadInt;
            fn $method(self, rhs: &'a QuadInt) -> QuadInt {
                self.$try(rhs).expect("operands from different quadratic fields")
            }
        }
        impl $tr<QuadInt> for QuadInt {
            type Output = QuadInt;
            fn $method(self, rhs: QuadInt) -> QuadInt {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for QuadInt {
    type Output = QuadInt;
    fn neg(self) -> QuadInt {
        QuadInt::new(self.field, -self.a, -self.b)
    }
}

impl Neg for &QuadInt {
    type Output = QuadInt;
    fn neg(self) -> QuadInt {
        QuadInt::new(self.field, -&self.a, -&self.b)
    }
}

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write_omega(f, &self.b),
            (false, false) => {
                write!(f, "{}", self.a)?;
                if self.b.is_negative() {
                    write!(f, "-")?;
                    write_omega(f, &-&self.b)
                } else {
                    write!(f, "+")?;
                    write_omega(f, &self.b)
                }
            }
        }
    }
}

fn write_omega(f: &mut fmt::Formatter<'_>, b: &BigInt) -> fmt::Result {
    if b.is_one() {
        write!(f, "w")
    } else if *b == -BigInt::one() {
        write!(f, "-w")
    } else {
        write!(f, "{}w", b)
    }
}

/// An element of `K`, stored as `num / den` with `num` in `O_d` and
/// `den > 0` reduced so that `gcd(num.a, num.b, den) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadRat {
    num: QuadInt,
    den: BigInt,
}

impl QuadRat {
    pub fn new(num: QuadInt, den: BigInt) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: QuadInt, den: BigInt) -> Self {
        let g = num.a.gcd(&num.b).gcd(&den);
        let g = if den.is_negative() { -g } else { g };
        QuadRat {
            num: QuadInt::new(num.field, &num.a / &g, &num.b / &g),
            den: &den / &g,
        }
    }

    pub fn from_int(x: QuadInt) -> Self {
        QuadRat { num: x, den: BigInt::one() }
    }

    /// `x + y*w` for rational `x`, `y`.
    pub fn from_rationals(field: QuadField, x: &BigRational, y: &BigRational) -> Self {
        let den = x.denom().lcm(y.denom());
        let a = x.numer() * (&den / x.denom());
        let b = y.numer() * (&den / y.denom());
        Self::normalized(QuadInt::new(field, a, b), den)
    }

    pub fn field(&self) -> QuadField {
        self.num.field
    }

    pub fn numer(&self) -> &QuadInt {
        &self.num
    }

    pub fn denom(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Rational coordinates `(x, y)` with `self = x + y*w`.
    pub fn coords(&self) -> (BigRational, BigRational) {
        (
            BigRational::new(self.num.a.clone(), self.den.clone()),
            BigRational::new(self.num.b.clone(), self.den.clone()),
        )
    }

    pub fn as_integer(&self) -> Option<QuadInt> {
        self.den.is_one().then(|| self.num.clone())
    }

    pub fn conj(&self) -> QuadRat {
        QuadRat { num: self.num.conj(), den: self.den.clone() }
    }

    pub fn norm(&self) -> BigRational {
        BigRational::new(self.num.norm(), &self.den * &self.den)
    }

    pub fn trace(&self) -> BigRational {
        BigRational::new(self.num.trace(), self.den.clone())
    }

    pub fn try_add(&self, o: &QuadRat) -> Result<QuadRat> {
        let num = (&self.num * &QuadInt::new(self.field(), o.den.clone(), 0))
            .try_add(&(&o.num * &QuadInt::new(o.field(), self.den.clone(), 0)))?;
        Ok(Self::normalized(num, &self.den * &o.den))
    }

    pub fn try_mul(&self, o: &QuadRat) -> Result<QuadRat> {
        Ok(Self::normalized(self.num.try_mul(&o.num)?, &self.den * &o.den))
    }

    pub fn neg(&self) -> QuadRat {
        QuadRat { num: -&self.num, den: self.den.clone() }
    }

    pub fn try_sub(&self, o: &QuadRat) -> Result<QuadRat> {
        self.try_add(&o.neg())
    }

    pub fn inv(&self) -> Result<QuadRat> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // 1 / (x/d) = d * conj(x) / N(x)
        let n = self.num.norm();
        let num = &self.num.conj() * &QuadInt::new(self.field(), self.den.clone(), 0);
        Ok(Self::normalized(num, n))
    }
}

impl fmt::Display for QuadRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/{}", self.num, self.den)
        }
    }
}

/// A column vector in `O_d^2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadVec2(pub QuadInt, pub QuadInt);

impl QuadVec2 {
    pub fn from_coords(field: QuadField, z: [i64; 4]) -> Self {
        QuadVec2(QuadInt::new(field, z[0], z[1]), QuadInt::new(field, z[2], z[3]))
    }

    pub fn from_big(field: QuadField, z: &[BigInt]) -> Self {
        QuadVec2(
            QuadInt::new(field, z[0].clone(), z[1].clone()),
            QuadInt::new(field, z[2].clone(), z[3].clone()),
        )
    }

    pub fn field(&self) -> QuadField {
        self.0.field
    }

    /// Integer coordinates `(a, b, c, e)` of `(a + bw, c + ew)`.
    pub fn coords(&self) -> [BigInt; 4] {
        [self.0.a.clone(), self.0.b.clone(), self.1.a.clone(), self.1.b.clone()]
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero() && self.1.is_zero()
    }

    pub fn scale(&self, u: &QuadInt) -> QuadVec2 {
        QuadVec2(u * &self.0, u * &self.1)
    }

    /// `det [self | other]`.
    pub fn det(&self, other: &QuadVec2) -> QuadInt {
        &self.0 * &other.1 - &self.1 * &other.0
    }

    /// The lexicographically largest unit multiple of `self`.
    pub fn canonical(&self) -> QuadVec2 {
        self.field()
            .units()
            .iter()
            .map(|u| self.scale(u))
            .max_by(|x, y| x.coord_cmp(y))
            .expect("unit group is nonempty")
    }

    pub(crate) fn coord_cmp(&self, other: &QuadVec2) -> Ordering {
        (self.0.key(), self.1.key()).cmp(&(other.0.key(), other.1.key()))
    }
}

impl fmt::Display for QuadVec2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.0, self.1)
    }
}

/// A 2x2 matrix over `O_d`, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadMat2(pub [QuadInt; 4]);

impl QuadMat2 {
    pub fn identity(field: QuadField) -> Self {
        QuadMat2([field.one(), field.zero(), field.zero(), field.one()])
    }

    pub fn from_columns(c0: &QuadVec2, c1: &QuadVec2) -> Self {
        QuadMat2([c0.0.clone(), c1.0.clone(), c0.1.clone(), c1.1.clone()])
    }

    pub fn det(&self) -> QuadInt {
        let [a, b, c, d] = &self.0;
        a * d - b * c
    }

    pub fn apply(&self, v: &QuadVec2) -> QuadVec2 {
        let [a, b, c, d] = &self.0;
        QuadVec2(a * &v.0 + b * &v.1, c * &v.0 + d * &v.1)
    }

    pub fn mul(&self, o: &QuadMat2) -> QuadMat2 {
        let [a, b, c, d] = &self.0;
        let [e, f, g, h] = &o.0;
        QuadMat2([a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h])
    }

    pub fn is_invertible(&self) -> bool {
        self.det().is_unit()
    }

    /// Inverse in `GL_2(O_d)`, if the determinant is a unit.
    pub fn inverse(&self) -> Option<QuadMat2> {
        let det = self.det();
        if !det.is_unit() {
            return None;
        }
        let [a, b, c, d] = &self.0;
        // det^{-1} = conj(det) since N(det) = 1
        let di = det.conj();
        Some(QuadMat2([d * &di, -(b * &di), -(c * &di), a * &di]))
    }

    pub fn entries(&self) -> &[QuadInt; 4] {
        &self.0
    }
}

impl fmt::Display for QuadMat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = &self.0;
        write!(f, "[[{}, {}], [{}, {}]]", a, b, c, d)
    }
}
