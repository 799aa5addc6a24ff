//! Exact scalar fields.
//!
//! Matrices are generic over a [`Field`] *context*: a small value that knows
//! how to combine elements. Fields whose elements carry all their own
//! information (GF(2), rationals) are wrapped by [`ScalarField`], which lifts
//! any [`ExactScalar`] (a `num-traits` number with an exact inverse) into a
//! zero-sized context. GF(p) with a modulus chosen at runtime is
//! [`PrimeField`].
//!
//! [`Scalar`] and [`FieldSpec`] are the dynamically-typed counterparts used by
//! the text formats and the command line.

use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::marker::PhantomData;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Descriptor of one of the supported fields.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Gf2,
    /// GF(p) for a prime `p < 2^63`.
    Gfp(u64),
    Rational,
}

impl FieldSpec {
    /// Builds `GF(p)`, checking primality. `p = 2` yields [`FieldSpec::Gf2`].
    pub fn gfp(modulus: u64) -> Result<Self> {
        if !is_prime(modulus) || modulus >= 1 << 63 {
            return Err(Error::NotPrime(modulus));
        }
        Ok(if modulus == 2 {
            FieldSpec::Gf2
        } else {
            FieldSpec::Gfp(modulus)
        })
    }

    pub fn is_finite(&self) -> bool {
        !matches!(self, FieldSpec::Rational)
    }
}

impl Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Gf2 => write!(f, "gf2"),
            FieldSpec::Gfp(p) => write!(f, "gfp {p}"),
            FieldSpec::Rational => write!(f, "rational"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut words = text.split_whitespace();
        let spec = match (words.next(), words.next()) {
            (Some("gf2"), None) => FieldSpec::Gf2,
            (Some("rational"), None) => FieldSpec::Rational,
            (Some("gfp"), Some(p)) => {
                let p: u64 = p
                    .parse()
                    .map_err(|_| Error::InvalidField(format!("bad modulus {p:?}")))?;
                FieldSpec::gfp(p)?
            }
            (Some("gfp"), None) => {
                return Err(Error::InvalidField("gfp requires a prime modulus".into()))
            }
            _ => return Err(Error::InvalidField(text.trim().to_string())),
        };
        if words.next().is_some() {
            return Err(Error::InvalidField(text.trim().to_string()));
        }
        Ok(spec)
    }
}

/// Deterministic Miller-Rabin, exact for every `u64`.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Arithmetic context for a field. Elements are plain values; the context
/// supplies the operations.
pub trait Field: Clone + Debug + PartialEq {
    type Elem: Clone + Debug + PartialEq + Eq + Hash;

    /// Rebuilds the context from a descriptor, failing if this field type
    /// cannot represent it.
    fn from_spec(spec: FieldSpec) -> Result<Self>;
    fn spec(&self) -> FieldSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn parse_elem(&self, text: &str) -> Option<Self::Elem>;
    fn format_elem(&self, a: &Self::Elem) -> String;
    /// Number of elements, `None` for an infinite field.
    fn cardinality(&self) -> Option<u64>;
    /// The element with residue `index` (`0, 1, ..., p-1` enumerate a finite
    /// field in ascending order).
    fn element(&self, index: u64) -> Self::Elem;

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, value: i64) -> Self::Elem {
        self.parse_elem(&value.to_string())
            .expect("every field accepts integer literals")
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// `a + c * b`, the row-operation kernel.
    fn mul_add(&self, a: &Self::Elem, c: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.mul(c, b))
    }
}

/// A number type with exact field arithmetic.
pub trait ExactScalar:
    Zero
    + One
    + Clone
    + Debug
    + Display
    + Eq
    + Hash
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn spec() -> FieldSpec;
    fn checked_inv(&self) -> Option<Self>;
    fn parse_literal(text: &str) -> Option<Self>;
    fn cardinality() -> Option<u64>;
    fn element(index: u64) -> Self;
}

/// Zero-sized field context over an [`ExactScalar`].
pub struct ScalarField<T>(PhantomData<T>);

impl<T> ScalarField<T> {
    pub const fn new() -> Self {
        ScalarField(PhantomData)
    }
}

impl<T> Default for ScalarField<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T> Clone for ScalarField<T> {
    fn clone(&self) -> Self {
        *self
    }
}

impl<T> Copy for ScalarField<T> {}

impl<T> PartialEq for ScalarField<T> {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

impl<T> Eq for ScalarField<T> {}

impl<T: ExactScalar> Debug for ScalarField<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ScalarField({})", T::spec())
    }
}

impl<T: ExactScalar> Field for ScalarField<T> {
    type Elem = T;

    fn from_spec(spec: FieldSpec) -> Result<Self> {
        if spec != T::spec() {
            return Err(Error::FieldMismatch {
                left: T::spec(),
                right: spec,
            });
        }
        Ok(Self::new())
    }
    fn spec(&self) -> FieldSpec {
        T::spec()
    }
    fn zero(&self) -> T {
        T::zero()
    }
    fn one(&self) -> T {
        T::one()
    }
    fn add(&self, a: &T, b: &T) -> T {
        a.clone() + b.clone()
    }
    fn sub(&self, a: &T, b: &T) -> T {
        a.clone() - b.clone()
    }
    fn mul(&self, a: &T, b: &T) -> T {
        a.clone() * b.clone()
    }
    fn neg(&self, a: &T) -> T {
        -a.clone()
    }
    fn inv(&self, a: &T) -> Option<T> {
        a.checked_inv()
    }
    fn parse_elem(&self, text: &str) -> Option<T> {
        T::parse_literal(text)
    }
    fn format_elem(&self, a: &T) -> String {
        a.to_string()
    }
    fn cardinality(&self) -> Option<u64> {
        T::cardinality()
    }
    fn element(&self, index: u64) -> T {
        T::element(index)
    }
    fn is_zero(&self, a: &T) -> bool {
        a.is_zero()
    }
}

/// An element of GF(2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Gf2(pub bool);

impl Gf2 {
    pub const ZERO: Gf2 = Gf2(false);
    pub const ONE: Gf2 = Gf2(true);
}

impl From<bool> for Gf2 {
    fn from(b: bool) -> Self {
        Gf2(b)
    }
}

impl Display for Gf2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.0 { "1" } else { "0" })
    }
}

impl Add for Gf2 {
    type Output = Gf2;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: Gf2) -> Gf2 {
        Gf2(self.0 ^ rhs.0)
    }
}

impl Sub for Gf2 {
    type Output = Gf2;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn sub(self, rhs: Gf2) -> Gf2 {
        Gf2(self.0 ^ rhs.0)
    }
}

impl Mul for Gf2 {
    type Output = Gf2;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: Gf2) -> Gf2 {
        Gf2(self.0 & rhs.0)
    }
}

impl Neg for Gf2 {
    type Output = Gf2;
    fn neg(self) -> Gf2 {
        self
    }
}

impl Zero for Gf2 {
    fn zero() -> Self {
        Gf2::ZERO
    }
    fn is_zero(&self) -> bool {
        !self.0
    }
}

impl One for Gf2 {
    fn one() -> Self {
        Gf2::ONE
    }
}

impl ExactScalar for Gf2 {
    fn spec() -> FieldSpec {
        FieldSpec::Gf2
    }
    fn checked_inv(&self) -> Option<Self> {
        self.0.then_some(Gf2::ONE)
    }
    fn parse_literal(text: &str) -> Option<Self> {
        let v: BigInt = text.parse().ok()?;
        Some(Gf2(v.is_odd()))
    }
    fn cardinality() -> Option<u64> {
        Some(2)
    }
    fn element(index: u64) -> Self {
        Gf2(index % 2 == 1)
    }
}

impl<T> ExactScalar for Ratio<T>
where
    T: Integer + Signed + Clone + Debug + Display + Hash + FromStr,
{
    fn spec() -> FieldSpec {
        FieldSpec::Rational
    }
    fn checked_inv(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }
    fn parse_literal(text: &str) -> Option<Self> {
        let (num, den) = match text.split_once('/') {
            Some((n, d)) => (n.parse::<T>().ok()?, d.parse::<T>().ok()?),
            None => (text.parse::<T>().ok()?, T::one()),
        };
        if den.is_zero() {
            return None;
        }
        Some(Ratio::new(num, den))
    }
    fn cardinality() -> Option<u64> {
        None
    }
    fn element(index: u64) -> Self {
        let mut acc = Self::zero();
        for _ in 0..index {
            acc = acc + Self::one();
        }
        acc
    }
}

/// GF(p) with the modulus chosen at runtime. Elements are canonical residues
/// in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    modulus: u64,
}

impl PrimeField {
    pub fn new(modulus: u64) -> Result<Self> {
        if !is_prime(modulus) || modulus >= 1 << 63 {
            return Err(Error::NotPrime(modulus));
        }
        Ok(PrimeField { modulus })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn reduce(&self, value: i128) -> u64 {
        value.rem_euclid(self.modulus as i128) as u64
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn from_spec(spec: FieldSpec) -> Result<Self> {
        match spec {
            FieldSpec::Gf2 => PrimeField::new(2),
            FieldSpec::Gfp(p) => PrimeField::new(p),
            FieldSpec::Rational => Err(Error::UnsupportedField {
                required: "a prime field",
                found: spec,
            }),
        }
    }
    fn spec(&self) -> FieldSpec {
        if self.modulus == 2 {
            FieldSpec::Gf2
        } else {
            FieldSpec::Gfp(self.modulus)
        }
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.modulus {
            s - self.modulus
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + (self.modulus - b)
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.modulus)
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.modulus - a
        }
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        // extended Euclid on (a, p)
        let (mut r0, mut r1) = (self.modulus as i128, *a as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Some(self.reduce(t0))
    }
    fn parse_elem(&self, text: &str) -> Option<u64> {
        let v: BigInt = text.parse().ok()?;
        let r = v.mod_floor(&BigInt::from(self.modulus));
        u64::try_from(r).ok()
    }
    fn format_elem(&self, a: &u64) -> String {
        a.to_string()
    }
    fn cardinality(&self) -> Option<u64> {
        Some(self.modulus)
    }
    fn element(&self, index: u64) -> u64 {
        index % self.modulus
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Repr {
    Gf2(Gf2),
    Gfp { value: u64, modulus: u64 },
    Rational(BigRational),
}

/// A dynamically-typed field element in canonical form.
///
/// Structural equality is field equality: residues are reduced and fractions
/// are in lowest terms with a positive denominator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Scalar(Repr);

impl Scalar {
    pub fn gf2(bit: bool) -> Self {
        Scalar(Repr::Gf2(Gf2(bit)))
    }

    pub fn gfp(value: i128, modulus: u64) -> Result<Self> {
        let field = PrimeField::new(modulus)?;
        if modulus == 2 {
            return Ok(Scalar::gf2(field.reduce(value) == 1));
        }
        Ok(Scalar(Repr::Gfp {
            value: field.reduce(value),
            modulus,
        }))
    }

    pub fn rational(value: BigRational) -> Self {
        // Ratio keeps itself reduced with a positive denominator.
        Scalar(Repr::Rational(value))
    }

    pub fn parse(spec: FieldSpec, text: &str) -> Result<Self> {
        let bad = || Error::parse(0, format!("invalid {spec} literal {text:?}"));
        match spec {
            FieldSpec::Gf2 => Gf2::parse_literal(text)
                .map(|b| Scalar(Repr::Gf2(b)))
                .ok_or_else(bad),
            FieldSpec::Gfp(p) => {
                let field = PrimeField::new(p)?;
                let value = field.parse_elem(text).ok_or_else(bad)?;
                Scalar::gfp(value as i128, p)
            }
            FieldSpec::Rational => BigRational::parse_literal(text)
                .map(|r| Scalar(Repr::Rational(r)))
                .ok_or_else(bad),
        }
    }

    pub fn field(&self) -> FieldSpec {
        match &self.0 {
            Repr::Gf2(_) => FieldSpec::Gf2,
            Repr::Gfp { modulus, .. } => FieldSpec::Gfp(*modulus),
            Repr::Rational(_) => FieldSpec::Rational,
        }
    }

    pub fn zero(spec: FieldSpec) -> Self {
        match spec {
            FieldSpec::Gf2 => Scalar::gf2(false),
            FieldSpec::Gfp(p) => Scalar(Repr::Gfp {
                value: 0,
                modulus: p,
            }),
            FieldSpec::Rational => Scalar::rational(BigRational::zero()),
        }
    }

    pub fn one(spec: FieldSpec) -> Self {
        match spec {
            FieldSpec::Gf2 => Scalar::gf2(true),
            FieldSpec::Gfp(p) => Scalar(Repr::Gfp {
                value: 1,
                modulus: p,
            }),
            FieldSpec::Rational => Scalar::rational(BigRational::one()),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Gf2(b) => b.is_zero(),
            Repr::Gfp { value, .. } => *value == 0,
            Repr::Rational(r) => r.is_zero(),
        }
    }

    /// Re-derives the canonical representative. Always returns an equal value.
    pub fn canonicalize(&self) -> Self {
        match &self.0 {
            Repr::Gf2(_) => self.clone(),
            Repr::Gfp { value, modulus } => Scalar(Repr::Gfp {
                value: value % modulus,
                modulus: *modulus,
            }),
            Repr::Rational(r) => Scalar::rational(Ratio::new(r.numer().clone(), r.denom().clone())),
        }
    }

    fn binary(
        &self,
        other: &Self,
        gf2: impl Fn(Gf2, Gf2) -> Gf2,
        gfp: impl Fn(&PrimeField, u64, u64) -> u64,
        rat: impl Fn(&BigRational, &BigRational) -> BigRational,
    ) -> Result<Self> {
        match (&self.0, &other.0) {
            (Repr::Gf2(a), Repr::Gf2(b)) => Ok(Scalar(Repr::Gf2(gf2(*a, *b)))),
            (
                Repr::Gfp {
                    value: a,
                    modulus: p,
                },
                Repr::Gfp {
                    value: b,
                    modulus: q,
                },
            ) if p == q => {
                let field = PrimeField { modulus: *p };
                Ok(Scalar(Repr::Gfp {
                    value: gfp(&field, *a, *b),
                    modulus: *p,
                }))
            }
            (Repr::Rational(a), Repr::Rational(b)) => Ok(Scalar(Repr::Rational(rat(a, b)))),
            _ => Err(Error::FieldMismatch {
                left: self.field(),
                right: other.field(),
            }),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.binary(other, |a, b| a + b, |f, a, b| f.add(&a, &b), |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.binary(other, |a, b| a - b, |f, a, b| f.sub(&a, &b), |a, b| a - b)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.binary(other, |a, b| a * b, |f, a, b| f.mul(&a, &b), |a, b| a * b)
    }

    pub fn neg(&self) -> Self {
        match &self.0 {
            Repr::Gf2(_) => self.clone(),
            Repr::Gfp { value, modulus } => Scalar(Repr::Gfp {
                value: PrimeField { modulus: *modulus }.neg(value),
                modulus: *modulus,
            }),
            Repr::Rational(r) => Scalar(Repr::Rational(-r)),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        let inv = match &self.0 {
            Repr::Gf2(b) => b.checked_inv().map(Repr::Gf2),
            Repr::Gfp { value, modulus } => {
                PrimeField { modulus: *modulus }
                    .inv(value)
                    .map(|value| Repr::Gfp {
                        value,
                        modulus: *modulus,
                    })
            }
            Repr::Rational(r) => r.checked_inv().map(Repr::Rational),
        };
        inv.map(Scalar).ok_or(Error::NotInvertible)
    }
}

impl Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Gf2(b) => write!(f, "{b}"),
            Repr::Gfp { value, .. } => write!(f, "{value}"),
            Repr::Rational(r) => write!(f, "{r}"),
        }
    }
}
