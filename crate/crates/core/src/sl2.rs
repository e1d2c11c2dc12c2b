//! `SL_2(F_q)`: matrices, Bruhat normal form, powers and conjugacy classes.
//!
//! Generators: `h(a) = diag(a, a⁻¹)`, `X₁₂(t)` upper unitriangular,
//! `X₂₁(t)` lower unitriangular and `n(α) = [[0, α], [-α⁻¹, 0]]`. Every
//! element is uniquely `h(α)X₁₂(ψ)` (Borel) or `X₁₂(τ)n(α)X₁₂(ψ)` (cell).

use std::collections::HashMap;
use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};
use crate::fibpoly::f_values;
use crate::field::{FieldElem, PrimeField};

/// A 2×2 matrix of determinant one, row-major `[[a, b], [c, d]]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sl2Elem {
    a: FieldElem,
    b: FieldElem,
    c: FieldElem,
    d: FieldElem,
}

impl Sl2Elem {
    pub fn new(a: FieldElem, b: FieldElem, c: FieldElem, d: FieldElem) -> Result<Self> {
        let det = a * d - b * c;
        if !det.is_one() {
            return Err(Error::NotUnimodular(det.value()));
        }
        Ok(Sl2Elem { a, b, c, d })
    }

    pub fn from_residues(field: PrimeField, [a, b, c, d]: [i64; 4]) -> Result<Self> {
        Sl2Elem::new(field.elem(a), field.elem(b), field.elem(c), field.elem(d))
    }

    /// Parse the wire format `a,b,c,d`. Entries are reduced modulo `p`.
    pub fn parse(field: PrimeField, s: &str) -> Result<Self> {
        let bad = || Error::BadElement(s.to_string());
        let entries: Vec<i64> = s
            .split(',')
            .map(|t| t.trim().parse::<i64>().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        let entries: [i64; 4] = entries.try_into().map_err(|_| bad())?;
        Sl2Elem::from_residues(field, entries)
    }

    /// The wire format `a,b,c,d`.
    pub fn wire(&self) -> String {
        format!("{},{},{},{}", self.a, self.b, self.c, self.d)
    }

    pub fn entries(&self) -> [FieldElem; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn field(&self) -> PrimeField {
        self.a.field()
    }

    pub fn identity(field: PrimeField) -> Self {
        Sl2Elem { a: field.one(), b: field.zero(), c: field.zero(), d: field.one() }
    }

    pub fn minus_identity(field: PrimeField) -> Self {
        Sl2Elem { a: -field.one(), b: field.zero(), c: field.zero(), d: -field.one() }
    }

    /// `h(a) = diag(a, a⁻¹)`.
    pub fn h(a: FieldElem) -> Self {
        let z = a.field().zero();
        Sl2Elem { a, b: z, c: z, d: a.inv() }
    }

    /// `X₁₂(t)`.
    pub fn x12(t: FieldElem) -> Self {
        let f = t.field();
        Sl2Elem { a: f.one(), b: t, c: f.zero(), d: f.one() }
    }

    /// `X₂₁(t)`.
    pub fn x21(t: FieldElem) -> Self {
        let f = t.field();
        Sl2Elem { a: f.one(), b: f.zero(), c: t, d: f.one() }
    }

    /// `n(α) = [[0, α], [-α⁻¹, 0]]`.
    pub fn weyl(alpha: FieldElem) -> Self {
        let z = alpha.field().zero();
        Sl2Elem { a: z, b: alpha, c: -alpha.inv(), d: z }
    }

    pub fn trace(&self) -> FieldElem {
        self.a + self.d
    }

    pub fn is_upper_triangular(&self) -> bool {
        self.c.is_zero()
    }

    pub fn inverse(&self) -> Self {
        Sl2Elem { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    pub fn neg(&self) -> Self {
        Sl2Elem { a: -self.a, b: -self.b, c: -self.c, d: -self.d }
    }

    /// Matrix power by repeated squaring.
    pub fn pow(&self, mut n: u64) -> Self {
        let mut acc = Sl2Elem::identity(self.field());
        let mut base = *self;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            n >>= 1;
        }
        acc
    }

    pub fn conjugate_by(&self, x: &Sl2Elem) -> Self {
        *x * *self * x.inverse()
    }

    pub fn to_bruhat(&self) -> BruhatForm {
        if self.c.is_zero() {
            BruhatForm::Borel { alpha: self.a, psi: self.b / self.a }
        } else {
            let ci = self.c.inv();
            BruhatForm::Cell { tau: self.a * ci, alpha: -ci, psi: self.d * ci }
        }
    }

    /// Conjugacy type. Scans the field for the split-regular parameter, so
    /// bulk callers should use [`ClassIndex`] instead.
    pub fn classify(&self) -> ClassType {
        let field = self.field();
        let t = self.trace();
        match classify_by_trace(*self) {
            Some(ct) => ct,
            None => {
                let disc = t * t - field.elem(4);
                if disc.is_square() {
                    let root = disc.sqrt().expect("square has a root");
                    let half = field.elem(2).inv();
                    ClassType::SplitRegular(canonical_split(half * (t + root)))
                } else {
                    ClassType::Anisotropic(t)
                }
            }
        }
    }
}

impl Mul for Sl2Elem {
    type Output = Sl2Elem;
    #[inline]
    fn mul(self, o: Sl2Elem) -> Sl2Elem {
        Sl2Elem {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }
}

impl fmt::Display for Sl2Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.wire())
    }
}

/// Enumerate `SL_2(F_p)` in lexicographic `(a, b, c, d)` order.
pub fn elements(field: PrimeField) -> Vec<Sl2Elem> {
    let mut out = Vec::with_capacity(group_order(field) as usize);
    for a in field.elements() {
        for b in field.elements() {
            for c in field.elements() {
                if a.is_zero() {
                    if (b * c).is_minus_one() {
                        out.extend(field.elements().map(|d| Sl2Elem { a, b, c, d }));
                    }
                } else {
                    let d = (field.one() + b * c) / a;
                    out.push(Sl2Elem { a, b, c, d });
                }
            }
        }
    }
    out
}

/// `|SL_2(F_p)| = p³ - p`.
pub fn group_order(field: PrimeField) -> u64 {
    let q = field.order();
    q * q * q - q
}

/// Bruhat coordinates of an element.
///
/// Variant order (`Borel` before `Cell`) and field order give the canonical
/// sort used for root listings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BruhatForm {
    /// `h(α)·X₁₂(ψ)`
    Borel { alpha: FieldElem, psi: FieldElem },
    /// `X₁₂(τ)·n(α)·X₁₂(ψ)`
    Cell { tau: FieldElem, alpha: FieldElem, psi: FieldElem },
}

impl BruhatForm {
    pub fn borel(alpha: FieldElem, psi: FieldElem) -> Self {
        debug_assert!(!alpha.is_zero());
        BruhatForm::Borel { alpha, psi }
    }

    pub fn cell(tau: FieldElem, alpha: FieldElem, psi: FieldElem) -> Self {
        debug_assert!(!alpha.is_zero());
        BruhatForm::Cell { tau, alpha, psi }
    }

    pub fn identity(field: PrimeField) -> Self {
        BruhatForm::Borel { alpha: field.one(), psi: field.zero() }
    }

    pub fn field(&self) -> PrimeField {
        match *self {
            BruhatForm::Borel { alpha, .. } | BruhatForm::Cell { alpha, .. } => alpha.field(),
        }
    }

    pub fn is_borel(&self) -> bool {
        matches!(self, BruhatForm::Borel { .. })
    }

    pub fn to_matrix(&self) -> Sl2Elem {
        match *self {
            BruhatForm::Borel { alpha, psi } => {
                Sl2Elem { a: alpha, b: alpha * psi, c: alpha.field().zero(), d: alpha.inv() }
            }
            BruhatForm::Cell { tau, alpha, psi } => {
                let ai = alpha.inv();
                Sl2Elem { a: -tau * ai, b: alpha - tau * psi * ai, c: -ai, d: -psi * ai }
            }
        }
    }

    /// Product computed with the Bruhat multiplication rules.
    pub fn mul(&self, other: &BruhatForm) -> BruhatForm {
        use BruhatForm::*;
        match (*self, *other) {
            (Borel { alpha: a1, psi: p1 }, Borel { alpha: a2, psi: p2 }) => {
                Borel { alpha: a1 * a2, psi: (a2 * a2).inv() * p1 + p2 }
            }
            (Borel { alpha: a1, psi: p1 }, Cell { tau: t2, alpha: a2, psi: p2 }) => {
                Cell { tau: a1 * a1 * (p1 + t2), alpha: a1 * a2, psi: p2 }
            }
            (Cell { tau: t1, alpha: a1, psi: p1 }, Borel { alpha: a2, psi: p2 }) => {
                // n(α)h(a) = n(α/a)
                Cell { tau: t1, alpha: a1 / a2, psi: (a2 * a2).inv() * p1 + p2 }
            }
            (Cell { tau: t1, alpha: a1, psi: p1 }, Cell { tau: t2, alpha: a2, psi: p2 }) => {
                let mid = p1 + t2;
                if mid.is_zero() {
                    let ratio = a2 / a1;
                    Borel { alpha: -a1 / a2, psi: ratio * ratio * t1 + p2 }
                } else {
                    let mi = mid.inv();
                    Cell { tau: t1 - a1 * a1 * mi, alpha: -a1 * a2 * mi, psi: p2 - a2 * a2 * mi }
                }
            }
        }
    }

    /// Least `r ≥ 1` with `x^r ∈ B`. For a cell element this is the least
    /// `r` with `f_{r-1}(τ+ψ, α) = 0`; Borel elements give `Some(1)`.
    pub fn smallest_borel_power(&self) -> Option<u64> {
        match *self {
            BruhatForm::Borel { .. } => Some(1),
            BruhatForm::Cell { tau, alpha, psi } => {
                // element orders divide 2p, p - 1 or p + 1
                let bound = 2 * alpha.field().order() + 2;
                f_values(tau + psi, alpha)
                    .skip(2) // f_{-1}, f_0
                    .take(bound as usize)
                    .position(|v| v.is_zero())
                    .map(|k| k as u64 + 2)
            }
        }
    }

    /// `x^n` via the closed forms: the geometric-sum rule on the Borel and
    /// the Fibonacci formulas on the cell, collapsing into the Borel at the
    /// smallest power that lands there.
    pub fn pow(&self, n: u64) -> BruhatForm {
        let field = self.field();
        if n == 0 {
            return BruhatForm::identity(field);
        }
        match *self {
            BruhatForm::Borel { alpha, psi } => borel_pow(alpha, psi, n),
            BruhatForm::Cell { tau, alpha, psi } => {
                let r = self.smallest_borel_power().expect("every element of a finite group has finite order");
                let (laps, rem) = (n / r, n % r);
                let head = if laps == 0 {
                    None
                } else {
                    let BruhatForm::Borel { alpha: ba, psi: bp } = cell_collapse(tau, alpha, psi, r) else {
                        unreachable!("collapse lands in B")
                    };
                    Some(borel_pow(ba, bp, laps))
                };
                let tail = (rem > 0).then(|| cell_pow_generic(tau, alpha, psi, rem));
                match (head, tail) {
                    (Some(h), Some(t)) => h.mul(&t),
                    (Some(h), None) => h,
                    (None, Some(t)) => t,
                    (None, None) => unreachable!("n > 0"),
                }
            }
        }
    }
}

/// `(h(a)X₁₂(t))^n = h(aⁿ)·X₁₂((1 + a⁻² + ⋯ + a^{-2(n-1)})·t)`.
fn borel_pow(a: FieldElem, t: FieldElem, n: u64) -> BruhatForm {
    let field = a.field();
    let w = (a * a).inv();
    let sum = if w.is_one() {
        field.elem((n % field.order()) as i64)
    } else {
        (field.one() - w.pow(n)) / (field.one() - w)
    };
    BruhatForm::Borel { alpha: a.pow(n), psi: sum * t }
}

/// `x^m` for a cell element when `x, …, x^m` all stay in the cell, i.e.
/// `f_1, …, f_{m-1}` are nonzero at `(t+s, a)`.
fn cell_pow_generic(t: FieldElem, a: FieldElem, s: FieldElem, m: u64) -> BruhatForm {
    let mut vals = f_values(t + s, a).skip(m as usize - 1);
    let f_prev = vals.next().expect("unbounded"); // f_{m-2}
    let f_last = vals.next().expect("unbounded"); // f_{m-1}
    let shift = a * a * f_prev / f_last;
    let sign = if m % 2 == 1 { a.field().one() } else { -a.field().one() };
    BruhatForm::Cell { tau: t - shift, alpha: sign * a.pow(m) / f_last, psi: s - shift }
}

/// `x^r = h(-a/a_{r-1})·X₁₂((a_{r-1}²/a² - 1)·t)` where `r` is the smallest
/// power of `x = X₁₂(t)n(a)X₁₂(s)` in the Borel.
fn cell_collapse(t: FieldElem, a: FieldElem, s: FieldElem, r: u64) -> BruhatForm {
    let BruhatForm::Cell { alpha: a_prev, .. } = cell_pow_generic(t, a, s, r - 1) else { unreachable!() };
    let ratio = a_prev / a;
    BruhatForm::Borel { alpha: -a / a_prev, psi: (ratio * ratio - a.field().one()) * t }
}

impl fmt::Display for BruhatForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BruhatForm::Borel { alpha, psi } => write!(f, "Borel(alpha={alpha}, psi={psi})"),
            BruhatForm::Cell { tau, alpha, psi } => write!(f, "Cell(tau={tau}, alpha={alpha}, psi={psi})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_elem(self, field: PrimeField) -> FieldElem {
        match self {
            Sign::Plus => field.one(),
            Sign::Minus => -field.one(),
        }
    }
}

/// The `q + 4` conjugacy classes of `SL_2(F_q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassType {
    /// `±1`.
    Central(Sign),
    /// Class of `h(a)`, `a ≠ ±1`; `a` is the smaller residue of `{a, a⁻¹}`.
    SplitRegular(FieldElem),
    /// `X₁₂(1)`, `h(-1)X₁₂(-1)`, `X₁₂(ϵ)`, `h(-1)X₁₂(-ϵ)`; `square` picks
    /// `1` or the non-square `ϵ`.
    NonSemisimple { sign: Sign, square: bool },
    /// Companion matrix `n(-1)X₁₂(δ)` of `X² - δX + 1` with `δ² - 4` a
    /// non-square; holds `δ`.
    Anisotropic(FieldElem),
}

impl ClassType {
    pub fn representative(&self, field: PrimeField) -> Sl2Elem {
        match *self {
            ClassType::Central(s) => Sl2Elem::h(s.as_elem(field)),
            ClassType::SplitRegular(a) => Sl2Elem::h(a),
            ClassType::NonSemisimple { sign, square } => {
                let mu = if square { field.one() } else { field.nonsquare_witness() };
                let s = sign.as_elem(field);
                Sl2Elem::h(s) * Sl2Elem::x12(s * mu)
            }
            ClassType::Anisotropic(delta) => Sl2Elem::weyl(-field.one()) * Sl2Elem::x12(delta),
        }
    }

    pub fn size(&self, field: PrimeField) -> u64 {
        let q = field.order();
        match self {
            ClassType::Central(_) => 1,
            ClassType::SplitRegular(_) => q * (q + 1),
            ClassType::NonSemisimple { .. } => (q * q - 1) / 2,
            ClassType::Anisotropic(_) => q * (q - 1),
        }
    }

    pub fn kind(&self) -> ClassKind {
        match self {
            ClassType::Central(_) => ClassKind::Central,
            ClassType::SplitRegular(_) => ClassKind::Split,
            ClassType::NonSemisimple { .. } => ClassKind::NonSemisimple,
            ClassType::Anisotropic(_) => ClassKind::Anisotropic,
        }
    }
}

impl fmt::Display for ClassType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = |s: &Sign| if *s == Sign::Plus { "+" } else { "-" };
        match self {
            ClassType::Central(s) => write!(f, "central({}1)", sign(s)),
            ClassType::SplitRegular(a) => write!(f, "split_regular(a={a})"),
            ClassType::NonSemisimple { sign: s, square } => {
                write!(f, "non_semisimple({}, {})", sign(s), if *square { "square" } else { "non-square" })
            }
            ClassType::Anisotropic(d) => write!(f, "anisotropic(delta={d})"),
        }
    }
}

/// Coarse class type, used for per-type tallies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassKind {
    Central,
    Split,
    NonSemisimple,
    Anisotropic,
}

fn canonical_split(a: FieldElem) -> FieldElem {
    let b = a.inv();
    if b.value() < a.value() {
        b
    } else {
        a
    }
}

/// Central and non-semisimple classes, which are determined without
/// looking at `t² - 4`.
fn classify_by_trace(g: Sl2Elem) -> Option<ClassType> {
    let field = g.field();
    let t = g.trace();
    let sign = if t == field.elem(2) {
        Sign::Plus
    } else if t == field.elem(-2) {
        Sign::Minus
    } else {
        return None;
    };
    let s = sign.as_elem(field);
    let u = Sl2Elem { a: s * g.a, b: s * g.b, c: s * g.c, d: s * g.d };
    if u == Sl2Elem::identity(field) {
        return Some(ClassType::Central(sign));
    }
    // u - 1 is nilpotent of rank one; its class is fixed by the square
    // class of the upper-right entry (or of minus the lower-left one).
    let param = if !u.b.is_zero() { u.b } else { -u.c };
    Some(ClassType::NonSemisimple { sign, square: (s * param).is_square() })
}

/// One row of the class table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassInfo {
    pub class: ClassType,
    pub representative: Sl2Elem,
    pub size: u64,
}

/// The class table of `SL_2(F_q)`: central, split by increasing `a`,
/// non-semisimple in the order `X₁₂(1)`, `h(-1)X₁₂(-1)`, `X₁₂(ϵ)`,
/// `h(-1)X₁₂(-ϵ)`, then anisotropic by increasing `δ`.
pub fn class_table(field: PrimeField) -> Vec<ClassInfo> {
    let mut classes = vec![ClassType::Central(Sign::Plus), ClassType::Central(Sign::Minus)];
    let four = field.elem(4);
    classes.extend(
        field
            .units()
            .filter(|a| !a.is_pm_one() && canonical_split(*a) == *a)
            .map(ClassType::SplitRegular),
    );
    for square in [true, false] {
        for sign in [Sign::Plus, Sign::Minus] {
            classes.push(ClassType::NonSemisimple { sign, square });
        }
    }
    classes.extend(field.elements().filter(|d| !(*d * *d - four).is_square()).map(ClassType::Anisotropic));
    classes
        .into_iter()
        .map(|class| ClassInfo { class, representative: class.representative(field), size: class.size(field) })
        .collect()
}

/// Fast classification for bulk work: a per-field lookup from trace to
/// class plus the class table itself.
#[derive(Clone, Debug)]
pub struct ClassIndex {
    field: PrimeField,
    table: Vec<ClassInfo>,
    by_class: HashMap<ClassType, usize>,
    // class index for traces other than ±2
    by_trace: Vec<usize>,
}

impl ClassIndex {
    pub fn new(field: PrimeField) -> Self {
        let table = class_table(field);
        let by_class: HashMap<_, _> = table.iter().enumerate().map(|(i, c)| (c.class, i)).collect();
        let mut by_trace = vec![usize::MAX; field.p() as usize];
        for (i, info) in table.iter().enumerate() {
            if matches!(info.class, ClassType::SplitRegular(_) | ClassType::Anisotropic(_)) {
                by_trace[info.representative.trace().value() as usize] = i;
            }
        }
        ClassIndex { field, table, by_class, by_trace }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn table(&self) -> &[ClassInfo] {
        &self.table
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn position(&self, class: &ClassType) -> usize {
        self.by_class[class]
    }

    /// Row index of the class containing `g`.
    pub fn class_of(&self, g: &Sl2Elem) -> usize {
        match classify_by_trace(*g) {
            Some(ct) => self.by_class[&ct],
            None => self.by_trace[g.trace().value() as usize],
        }
    }

    pub fn classify(&self, g: &Sl2Elem) -> ClassType {
        self.table[self.class_of(g)].class
    }
}
