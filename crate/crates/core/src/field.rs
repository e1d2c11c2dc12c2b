//! Prime fields `F_p` (p odd) and their quadratic extensions `F_{p^2}`.
//!
//! Elements carry their modulus so they can be combined with the usual
//! operators. Mixing elements of different fields is a logic error and is
//! caught by debug assertions.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_integer::Integer;

use crate::error::{Error, Result};

/// Largest prime accepted for field construction. Root finding scans the
/// whole field, so this keeps every operation at desk scale.
pub const FIELD_CAP: u32 = 10_000;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// All odd primes in `lo..=hi`.
pub fn odd_primes(lo: u32, hi: u32) -> Vec<u32> {
    (lo.max(3)..=hi).filter(|&p| is_prime(p as u64)).collect()
}

/// The prime field `F_p` for an odd prime `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if p > FIELD_CAP {
            return Err(Error::CapExceeded { what: "field size", value: p as u64, cap: FIELD_CAP as u64 });
        }
        if p == 2 || !is_prime(p as u64) {
            return Err(Error::NotOddPrime(p as u64));
        }
        Ok(PrimeField { p })
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    /// Number of elements.
    #[inline]
    pub fn order(&self) -> u64 {
        self.p as u64
    }

    #[inline]
    pub fn elem(&self, v: i64) -> FieldElem {
        FieldElem { value: v.rem_euclid(self.p as i64) as u32, p: self.p }
    }

    #[inline]
    pub fn zero(&self) -> FieldElem {
        FieldElem { value: 0, p: self.p }
    }

    #[inline]
    pub fn one(&self) -> FieldElem {
        FieldElem { value: 1, p: self.p }
    }

    /// All elements in ascending residue order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> {
        let p = self.p;
        (0..p).map(move |v| FieldElem { value: v, p })
    }

    /// All nonzero elements in ascending residue order.
    pub fn units(&self) -> impl Iterator<Item = FieldElem> {
        let p = self.p;
        (1..p).map(move |v| FieldElem { value: v, p })
    }

    /// Smallest positive quadratic non-residue. This is the fixed `ϵ` used by
    /// the non-semisimple class representatives.
    pub fn nonsquare_witness(&self) -> FieldElem {
        self.units()
            .find(|x| !x.is_square())
            .expect("odd prime fields always contain a non-square")
    }

    /// `N_{n,p}`: the number of n-th powers in the field, zero included.
    pub fn nth_power_count(&self, n: u64) -> u64 {
        let d = n.gcd(&(self.order() - 1));
        (self.order() - 1) / d + 1
    }

    /// Whether the nonzero element `a` is an n-th power, by the criterion
    /// `a^((p-1)/d) = 1` with `d = gcd(n, p-1)`.
    pub fn is_nth_power(&self, a: FieldElem, n: u64) -> bool {
        if a.is_zero() {
            return true;
        }
        let d = n.gcd(&(self.order() - 1));
        a.pow((self.order() - 1) / d).is_one()
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

/// A residue modulo an odd prime, always kept in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElem {
    value: u32,
    p: u32,
}

impl FieldElem {
    #[inline]
    pub fn value(self) -> u32 {
        self.value
    }

    #[inline]
    pub fn field(self) -> PrimeField {
        PrimeField { p: self.p }
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    #[inline]
    pub fn is_one(self) -> bool {
        self.value == 1
    }

    /// `self == -1`.
    #[inline]
    pub fn is_minus_one(self) -> bool {
        self.value == self.p - 1
    }

    /// `self == ±1`.
    #[inline]
    pub fn is_pm_one(self) -> bool {
        self.is_one() || self.is_minus_one()
    }

    pub fn pow(self, mut e: u64) -> FieldElem {
        let p = self.p as u64;
        let mut base = self.value as u64;
        let mut acc = 1u64 % p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        FieldElem { value: acc as u32, p: self.p }
    }

    /// Integer power allowing negative exponents. Panics on `0^e`, `e < 0`.
    pub fn powi(self, e: i64) -> FieldElem {
        if e >= 0 {
            self.pow(e as u64)
        } else {
            self.inv().pow(e.unsigned_abs())
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(self) -> FieldElem {
        assert!(!self.is_zero(), "inverse of zero in F_{}", self.p);
        self.pow(self.p as u64 - 2)
    }

    pub fn checked_inv(self) -> Option<FieldElem> {
        (!self.is_zero()).then(|| self.inv())
    }

    /// Euler's criterion; zero counts as a square.
    pub fn is_square(self) -> bool {
        self.is_zero() || self.pow((self.p as u64 - 1) / 2).is_one()
    }

    /// Smallest square root, or `None` for non-residues.
    pub fn sqrt(self) -> Option<FieldElem> {
        nth_roots_in_field(self, 2).into_iter().next()
    }

    /// The representative of `self` in `(-p/2, p/2]`, handy for display.
    pub fn signed(self) -> i64 {
        let v = self.value as i64;
        if v > self.p as i64 / 2 {
            v - self.p as i64
        } else {
            v
        }
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for FieldElem {
    type Output = FieldElem;
    #[inline]
    fn add(self, rhs: FieldElem) -> FieldElem {
        debug_assert_eq!(self.p, rhs.p);
        let s = self.value as u64 + rhs.value as u64;
        let p = self.p as u64;
        FieldElem { value: if s >= p { s - p } else { s } as u32, p: self.p }
    }
}

impl Sub for FieldElem {
    type Output = FieldElem;
    #[inline]
    fn sub(self, rhs: FieldElem) -> FieldElem {
        debug_assert_eq!(self.p, rhs.p);
        let v = if self.value >= rhs.value { self.value - rhs.value } else { self.p - rhs.value + self.value };
        FieldElem { value: v, p: self.p }
    }
}

impl Neg for FieldElem {
    type Output = FieldElem;
    #[inline]
    fn neg(self) -> FieldElem {
        FieldElem { value: if self.value == 0 { 0 } else { self.p - self.value }, p: self.p }
    }
}

impl Mul for FieldElem {
    type Output = FieldElem;
    #[inline]
    fn mul(self, rhs: FieldElem) -> FieldElem {
        debug_assert_eq!(self.p, rhs.p);
        FieldElem { value: (self.value as u64 * rhs.value as u64 % self.p as u64) as u32, p: self.p }
    }
}

impl Div for FieldElem {
    type Output = FieldElem;
    #[inline]
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: FieldElem) -> FieldElem {
        self * rhs.inv()
    }
}

/// Every `x` in the field with `x^n = a`, ascending.
///
/// For nonzero `a` the set is nonempty exactly when `a^((p-1)/d) = 1`,
/// `d = gcd(n, p-1)`, and then it has `d` members. The scan is exhaustive.
pub fn nth_roots_in_field(a: FieldElem, n: u64) -> Vec<FieldElem> {
    assert!(n >= 1, "root index must be positive");
    let field = a.field();
    if a.is_zero() {
        return vec![field.zero()];
    }
    field.units().filter(|x| x.pow(n) == a).collect()
}

/// `F_{p^2} = F_p(δ)` with `δ^2 = ϵ`, `ϵ` the smallest non-residue.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QuadExtField {
    base: PrimeField,
    eps: FieldElem,
}

/// `x + y·δ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadElem {
    pub x: FieldElem,
    pub y: FieldElem,
}

impl QuadExtField {
    pub fn new(base: PrimeField) -> Self {
        QuadExtField { base, eps: base.nonsquare_witness() }
    }

    pub fn base(&self) -> PrimeField {
        self.base
    }

    pub fn eps(&self) -> FieldElem {
        self.eps
    }

    pub fn order(&self) -> u64 {
        self.base.order() * self.base.order()
    }

    pub fn from_base(&self, a: FieldElem) -> QuadElem {
        QuadElem { x: a, y: self.base.zero() }
    }

    pub fn one(&self) -> QuadElem {
        self.from_base(self.base.one())
    }

    pub fn elements(&self) -> impl Iterator<Item = QuadElem> + '_ {
        self.base.elements().flat_map(move |x| self.base.elements().map(move |y| QuadElem { x, y }))
    }

    pub fn add(&self, a: QuadElem, b: QuadElem) -> QuadElem {
        QuadElem { x: a.x + b.x, y: a.y + b.y }
    }

    pub fn neg(&self, a: QuadElem) -> QuadElem {
        QuadElem { x: -a.x, y: -a.y }
    }

    pub fn mul(&self, a: QuadElem, b: QuadElem) -> QuadElem {
        QuadElem { x: a.x * b.x + self.eps * a.y * b.y, y: a.x * b.y + a.y * b.x }
    }

    pub fn pow(&self, a: QuadElem, mut e: u64) -> QuadElem {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `N(a) = a^(1+p)`, which lands in the base field.
    pub fn norm(&self, a: QuadElem) -> QuadElem {
        self.pow(a, 1 + self.base.order())
    }

    /// The kernel of the norm, listed in ascending `(x, y)` order. It has
    /// `p + 1` members and contains `±1`.
    pub fn norm_one_elements(&self) -> Vec<QuadElem> {
        // x^2 - ϵ y^2 is the norm of x + yδ
        let one = self.base.one();
        self.elements().filter(|e| e.x * e.x - self.eps * e.y * e.y == one).collect()
    }

    /// For `x ↦ x^n` on the norm-one subgroup: the kernel size and whether
    /// `-1` lies in the image.
    pub fn norm_one_nth_power_data(&self, n: u64) -> NormOnePowerData {
        let group = self.norm_one_elements();
        let one = self.one();
        let minus_one = self.neg(one);
        let kernel = group.iter().filter(|&&g| self.pow(g, n) == one).count() as u64;
        let contains_minus_one = group.iter().any(|&g| self.pow(g, n) == minus_one);
        NormOnePowerData { kernel, contains_minus_one }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NormOnePowerData {
    pub kernel: u64,
    pub contains_minus_one: bool,
}
