//! Bivariate integer polynomials and the Fibonacci families built on them.
//!
//! `u_r` satisfies `u_r = X·u_{r-1} + Y·u_{r-2}` with `u_0 = 0`, `u_1 = 1`.
//! Its homogeneous companion `f_r = X·f_{r-1} - Y²·f_{r-2}` (with
//! `f_{-1} = 0`, `f_0 = 1`) equals `u_{r+1}(X, -Y²)` and is homogeneous of
//! degree `r`. Both are memoized per process.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::FieldElem;

/// A polynomial in `Z[X, Y]`, stored sparsely as `(deg_X, deg_Y) -> coeff`.
/// Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }

    pub fn one() -> Self {
        BiPoly::monomial(1, 0, 0)
    }

    pub fn x() -> Self {
        BiPoly::monomial(1, 1, 0)
    }

    pub fn y() -> Self {
        BiPoly::monomial(1, 0, 1)
    }

    pub fn monomial(coeff: impl Into<BigInt>, dx: u32, dy: u32) -> Self {
        let mut p = BiPoly::zero();
        p.add_term(dx, dy, coeff.into());
        p
    }

    /// Build from `(coeff, deg_X, deg_Y)` triples; repeated monomials add up.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (C, u32, u32)>,
        C: Into<BigInt>,
    {
        let mut p = BiPoly::zero();
        for (c, dx, dy) in terms {
            p.add_term(dx, dy, c.into());
        }
        p
    }

    fn add_term(&mut self, dx: u32, dy: u32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((dx, dy)).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(dx, dy));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, dx: u32, dy: u32) -> BigInt {
        self.terms.get(&(dx, dy)).cloned().unwrap_or_default()
    }

    /// Terms as `((deg_X, deg_Y), coeff)`, ascending in `(deg_X, deg_Y)`.
    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// `Some(d)` when every term has total degree `d`. The zero polynomial is
    /// not considered homogeneous.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|&(i, j)| i + j);
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    /// Substitute `Y ↦ -Y²`.
    pub fn substitute_neg_y_squared(&self) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(i, j), c) in &self.terms {
            let c = if j % 2 == 1 { -c.clone() } else { c.clone() };
            out.add_term(i, 2 * j, c);
        }
        out
    }

    /// Exact division. Returns `None` if `divisor` does not divide `self`
    /// in `Z[X, Y]` or if the divisor is zero.
    ///
    /// Uses lexicographic order with `X` major; with a single divisor the
    /// remainder is zero exactly when the division is exact.
    pub fn div_exact(&self, divisor: &BiPoly) -> Option<BiPoly> {
        let (&(li, lj), lc) = divisor.terms.iter().next_back()?;
        let mut rest = self.clone();
        let mut quotient = BiPoly::zero();
        while let Some((&(i, j), c)) = rest.terms.iter().next_back() {
            if i < li || j < lj {
                return None;
            }
            if !(c % lc).is_zero() {
                return None;
            }
            let step = BiPoly::monomial(c / lc, i - li, j - lj);
            rest = &rest - &(&step * divisor);
            quotient = &quotient + &step;
        }
        Some(quotient)
    }

    /// Evaluate at a point of a prime field.
    pub fn eval(&self, x: FieldElem, y: FieldElem) -> FieldElem {
        let field = x.field();
        let p = BigInt::from(field.p());
        self.terms.iter().fold(field.zero(), |acc, (&(i, j), c)| {
            let c = ((c % &p) + &p) % &p;
            let c: i64 = c.try_into().expect("reduced coefficient fits in i64");
            acc + field.elem(c) * x.pow(i as u64) * y.pow(j as u64)
        })
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, -c.clone());
        }
        out
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly { terms: self.terms.iter().map(|(&k, c)| (k, -c.clone())).collect() }
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &rhs.terms {
                out.add_term(i1 + i2, j1 + j2, c1 * c2);
            }
        }
        out
    }
}

/// Sparse form, highest power of `X` first, e.g. `X^3 - 2*X*Y^2`.
impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (&(i, j), c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (n, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors = Vec::new();
            if !mag.is_one() || (i == 0 && j == 0) {
                factors.push(mag.to_string());
            }
            for (var, e) in [("X", i), ("Y", j)] {
                match e {
                    0 => {}
                    1 => factors.push(var.to_string()),
                    _ => factors.push(format!("{var}^{e}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

static U_CACHE: RwLock<Vec<Arc<BiPoly>>> = RwLock::new(Vec::new());
// f_{r} is stored at index r + 1
static F_CACHE: RwLock<Vec<Arc<BiPoly>>> = RwLock::new(Vec::new());

fn cached<F>(cache: &RwLock<Vec<Arc<BiPoly>>>, index: usize, seeds: [BiPoly; 2], step: F) -> Arc<BiPoly>
where
    F: Fn(&BiPoly, &BiPoly) -> BiPoly,
{
    if let Some(p) = cache.read().expect("cache lock").get(index) {
        return Arc::clone(p);
    }
    let mut table = cache.write().expect("cache lock");
    if table.is_empty() {
        table.extend(seeds.into_iter().map(Arc::new));
    }
    while table.len() <= index {
        let n = table.len();
        let next = step(&table[n - 1], &table[n - 2]);
        table.push(Arc::new(next));
    }
    Arc::clone(&table[index])
}

/// `u_r(X, Y)` for `r ≥ 0`.
pub fn u_poly(r: i64) -> Result<Arc<BiPoly>> {
    if r < 0 {
        return Err(Error::BadIndex(r));
    }
    let y = BiPoly::y();
    Ok(cached(&U_CACHE, r as usize, [BiPoly::zero(), BiPoly::one()], |prev, prev2| {
        &(&BiPoly::x() * prev) + &(&y * prev2)
    }))
}

/// `f_r(X, Y)` for `r ≥ -1`.
pub fn f_poly(r: i64) -> Result<Arc<BiPoly>> {
    if r < -1 {
        return Err(Error::BadIndex(r));
    }
    let y2 = BiPoly::monomial(1, 0, 2);
    Ok(cached(&F_CACHE, (r + 1) as usize, [BiPoly::zero(), BiPoly::one()], |prev, prev2| {
        &(&BiPoly::x() * prev) - &(&y2 * prev2)
    }))
}

/// `S_n(α, X)` for `α = ±1`, as a polynomial in `X` alone.
///
/// `S_{2m} = (1+α)(1 + X² + ⋯ + X^{2(m-1)})` and
/// `S_{2m+1} = 1 + αX + X² + αX³ + ⋯ + αX^{2m-1} + X^{2m}`.
pub fn s_poly(n: u64, alpha: i64) -> Result<BiPoly> {
    if n == 0 {
        return Err(Error::ZeroExponent);
    }
    if alpha != 1 && alpha != -1 {
        return Err(Error::BadAlpha(alpha));
    }
    let m = (n / 2) as u32;
    let poly = if n.is_multiple_of(2) {
        BiPoly::from_terms((0..m).map(|k| (1 + alpha, 2 * k, 0)))
    } else {
        BiPoly::from_terms((0..=2 * m).map(|k| (if k % 2 == 0 { 1 } else { alpha }, k, 0)))
    };
    Ok(poly)
}

/// Evaluate `S_n(α, a)` directly in the field; `alpha` must be `±1`.
pub fn eval_s(n: u64, alpha: FieldElem, a: FieldElem) -> FieldElem {
    debug_assert!(alpha.is_pm_one());
    let field = a.field();
    let m = n / 2;
    if n.is_multiple_of(2) {
        let sum = (0..m).fold(field.zero(), |acc, k| acc + a.pow(2 * k));
        (field.one() + alpha) * sum
    } else {
        (0..=2 * m).fold(field.zero(), |acc, k| acc + if k % 2 == 0 { a.pow(k) } else { alpha * a.pow(k) })
    }
}

/// `f_r(x, y)` by running the recurrence in the field. Requires `r ≥ -1`.
pub fn eval_f(r: i64, x: FieldElem, y: FieldElem) -> FieldElem {
    assert!(r >= -1, "f_r is defined for r >= -1");
    f_values(x, y).nth((r + 1) as usize).expect("unbounded sequence")
}

/// The sequence `f_{-1}(x,y), f_0(x,y), f_1(x,y), …` over the field.
pub fn f_values(x: FieldElem, y: FieldElem) -> impl Iterator<Item = FieldElem> {
    let field = x.field();
    let y2 = y * y;
    let mut state = (field.zero(), field.one());
    std::iter::repeat(()).map(move |_| {
        let out = state.0;
        state = (state.1, x * state.1 - y2 * state.0);
        out
    })
}

/// `u_r(x, y)` by the recurrence in the field.
pub fn eval_u(r: u64, x: FieldElem, y: FieldElem) -> FieldElem {
    let field = x.field();
    let (mut prev, mut cur) = (field.zero(), field.one());
    if r == 0 {
        return prev;
    }
    for _ in 1..r {
        (prev, cur) = (cur, x * cur + y * prev);
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn parse(terms: &[(i64, u32, u32)]) -> BiPoly {
        BiPoly::from_terms(terms.iter().copied())
    }

    #[test]
    fn u_examples() {
        assert_eq!(*u_poly(0).unwrap(), BiPoly::zero());
        assert_eq!(*u_poly(1).unwrap(), BiPoly::one());
        assert_eq!(*u_poly(3).unwrap(), parse(&[(1, 2, 0), (1, 0, 1)]));
        assert_eq!(*u_poly(4).unwrap(), parse(&[(1, 3, 0), (2, 1, 1)]));
        assert_eq!(u_poly(-1), Err(Error::BadIndex(-1)));
    }

    #[test]
    fn f_examples() {
        assert_eq!(*f_poly(-1).unwrap(), BiPoly::zero());
        assert_eq!(*f_poly(0).unwrap(), BiPoly::one());
        assert_eq!(*f_poly(2).unwrap(), parse(&[(1, 2, 0), (-1, 0, 2)]));
        assert_eq!(*f_poly(5).unwrap(), parse(&[(1, 5, 0), (-4, 3, 2), (3, 1, 4)]));
        assert_eq!(*f_poly(6).unwrap(), parse(&[(1, 6, 0), (-5, 4, 2), (6, 2, 4), (-1, 0, 6)]));
        assert_eq!(f_poly(-2), Err(Error::BadIndex(-2)));
    }

    #[test]
    fn display_is_exponent_descending() {
        assert_eq!(f_poly(3).unwrap().to_string(), "X^3 - 2*X*Y^2");
        assert_eq!(f_poly(6).unwrap().to_string(), "X^6 - 5*X^4*Y^2 + 6*X^2*Y^4 - Y^6");
        assert_eq!(u_poly(4).unwrap().to_string(), "X^3 + 2*X*Y");
        assert_eq!(u_poly(1).unwrap().to_string(), "1");
        assert_eq!(BiPoly::zero().to_string(), "0");
        assert_eq!(parse(&[(-3, 0, 0)]).to_string(), "-3");
    }

    #[test]
    fn s_examples() {
        for m in 1..6 {
            assert!(s_poly(2 * m, -1).unwrap().is_zero());
        }
        assert_eq!(s_poly(3, 1).unwrap(), parse(&[(1, 0, 0), (1, 1, 0), (1, 2, 0)]));
        assert_eq!(s_poly(4, 1).unwrap(), parse(&[(2, 0, 0), (2, 2, 0)]));
        assert_eq!(s_poly(1, 1).unwrap(), BiPoly::one());
        assert_eq!(s_poly(3, 2), Err(Error::BadAlpha(2)));
        assert_eq!(s_poly(0, 1), Err(Error::ZeroExponent));
    }

    #[test]
    fn eval_s_matches_polynomial() {
        let field = PrimeField::new(11).unwrap();
        for n in 1..=12 {
            for alpha in [1i64, -1] {
                let poly = s_poly(n, alpha).unwrap();
                for a in field.elements() {
                    assert_eq!(eval_s(n, field.elem(alpha), a), poly.eval(a, field.zero()));
                }
            }
        }
    }

    #[test]
    fn eval_f_examples() {
        let f7 = PrimeField::new(7).unwrap();
        let f5 = PrimeField::new(5).unwrap();
        assert_eq!(eval_f(-1, f7.elem(3), f7.elem(2)), f7.zero());
        assert_eq!(eval_f(3, f7.elem(2), f7.elem(1)).value(), 4);
        assert_eq!(eval_f(6, f5.elem(1), f5.elem(1)).value(), 1);
    }

    #[test]
    fn eval_f_matches_symbolic() {
        let field = PrimeField::new(13).unwrap();
        for r in -1..=15 {
            let poly = f_poly(r).unwrap();
            for x in field.elements() {
                for y in field.elements() {
                    assert_eq!(eval_f(r, x, y), poly.eval(x, y));
                }
            }
        }
    }

    #[test]
    fn eval_u_matches_symbolic() {
        let field = PrimeField::new(7).unwrap();
        for r in 0..=15 {
            let poly = u_poly(r as i64).unwrap();
            for x in field.elements() {
                for y in field.elements() {
                    assert_eq!(eval_u(r, x, y), poly.eval(x, y));
                }
            }
        }
    }

    #[test]
    fn div_exact_basics() {
        let a = parse(&[(1, 1, 0), (1, 0, 1)]);
        let b = parse(&[(1, 1, 0), (-1, 0, 1)]);
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&a), Some(b.clone()));
        assert_eq!(prod.div_exact(&b), Some(a.clone()));
        assert_eq!(a.div_exact(&b), None);
        assert_eq!(a.div_exact(&BiPoly::zero()), None);
        assert_eq!(BiPoly::zero().div_exact(&a), Some(BiPoly::zero()));
        assert_eq!(parse(&[(3, 1, 0)]).div_exact(&parse(&[(2, 0, 0)])), None);
    }

    #[test]
    fn concurrent_cache_fill() {
        let handles: Vec<_> = (0..8)
            .map(|k| std::thread::spawn(move || (0..40).map(|r| f_poly(r + k).unwrap().to_string()).collect::<Vec<_>>()))
            .collect();
        let outs: Vec<_> = handles.into_iter().map(|h| h.join().unwrap()).collect();
        for (k, out) in outs.iter().enumerate() {
            for (r, text) in out.iter().enumerate() {
                assert_eq!(*text, f_poly((r + k) as i64).unwrap().to_string());
            }
        }
    }
}
