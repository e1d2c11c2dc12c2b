//! All solutions of `X^n = g` in `SL_2(F_q)`.
//!
//! Roots inside the Borel come from field n-th roots and the `S_n`
//! polynomials. A cell element can only have an n-th power in `B` when that
//! power is `±1`, so Borel targets pick up cell roots only at `g = ±1`. Cell
//! targets are solved through the bivariate Fibonacci system in `(X, Y)`,
//! with `X = t + s` and `Y = a`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::fibpoly::{eval_s, f_values};
use crate::field::{nth_roots_in_field, FieldElem, PrimeField};
use crate::sl2::{elements, BruhatForm, Sl2Elem};

/// Largest field the root solvers accept; the cell solver is quadratic in `q`.
pub const ROOT_FIELD_CAP: u32 = 1_000;

/// Which part of the case analysis produced a root.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    BorelCase,
    CellSmallN,
    CellGeneral,
    BivariateSystem,
    Exhaustive,
}

impl Method {
    pub fn tag(self) -> &'static str {
        match self {
            Method::BorelCase => "borel-case",
            Method::CellSmallN => "cell-small-n",
            Method::CellGeneral => "cell-general",
            Method::BivariateSystem => "bivariate-system",
            Method::Exhaustive => "exhaustive",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RootQuery {
    pub g: BruhatForm,
    pub n: u64,
}

impl RootQuery {
    pub fn new(g: BruhatForm, n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroExponent);
        }
        Ok(RootQuery { g, n })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Root {
    pub form: BruhatForm,
    pub method: Method,
}

/// Every root of a query, sorted Borel first, then by coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSolution {
    pub query: RootQuery,
    pub roots: Vec<Root>,
}

impl RootSolution {
    pub fn forms(&self) -> Vec<BruhatForm> {
        self.roots.iter().map(|r| r.form).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }
}

fn sign_pow(field: PrimeField, n: u64) -> FieldElem {
    if n.is_multiple_of(2) {
        field.one()
    } else {
        -field.one()
    }
}

fn sorted(mut v: Vec<BruhatForm>) -> Vec<BruhatForm> {
    v.sort();
    v.dedup();
    v
}

/// Roots of `h(α)X₁₂(ψ)` inside the Borel.
pub fn roots_in_borel(alpha: FieldElem, psi: FieldElem, n: u64) -> Vec<BruhatForm> {
    assert!(n >= 1);
    let field = alpha.field();
    let mut out = Vec::new();
    for a in nth_roots_in_field(alpha, n) {
        if alpha.is_pm_one() {
            let lhs = eval_s(n, alpha, a);
            let rhs = psi * a.pow(2 * (n - 1));
            if lhs.is_zero() {
                if rhs.is_zero() {
                    out.extend(field.elements().map(|t| BruhatForm::borel(a, t)));
                }
            } else {
                out.push(BruhatForm::borel(a, rhs / lhs));
            }
        } else {
            let w = (a * a).inv();
            let t = (field.one() - w) / (field.one() - w.pow(n)) * psi;
            out.push(BruhatForm::borel(a, t));
        }
    }
    sorted(out)
}

/// Every `Cell(t, a, s)` with `t + s = x` and `a = y`.
fn cell_fiber(x: FieldElem, y: FieldElem) -> impl Iterator<Item = BruhatForm> {
    x.field().elements().map(move |t| BruhatForm::cell(t, y, x - t))
}

/// Roots of `h(α)X₁₂(ψ)` inside the big cell.
pub fn borel_roots_in_cell(alpha: FieldElem, psi: FieldElem, n: u64) -> Vec<BruhatForm> {
    assert!(n >= 1);
    let field = alpha.field();
    // the centralizer of a non-central element of B lies in B
    if !(alpha.is_pm_one() && psi.is_zero()) {
        return Vec::new();
    }
    let plus = alpha.is_one();
    let mut out = Vec::new();
    match n {
        1 => {}
        2 => {
            if !plus {
                for a in field.units() {
                    out.extend(cell_fiber(field.zero(), a));
                }
            }
        }
        3 => {
            for a in field.units() {
                out.extend(cell_fiber(if plus { a } else { -a }, a));
            }
        }
        4 => {
            if plus {
                for a in field.units() {
                    out.extend(cell_fiber(field.zero(), a));
                }
            } else {
                let gammas = nth_roots_in_field(field.elem(2), 2);
                for a in field.units() {
                    for &g in &gammas {
                        out.extend(cell_fiber(g * a, a));
                    }
                }
            }
        }
        _ => out = borel_roots_in_cell_general(alpha, n),
    }
    sorted(out)
}

/// Cell roots of `±1` through the divisor systems: for `n = d·r`, the
/// `r`-th power lands in `B` iff `f_{r-1}(X, Y) = 0`, and then its diagonal
/// entry forces `f_{r-3}^d = (-1)^{d(r-1)} α X^d Y^{d(r-4)}` when `X ≠ 0`.
/// Candidates are kept only if their n-th power is the target.
fn borel_roots_in_cell_general(alpha: FieldElem, n: u64) -> Vec<BruhatForm> {
    let field = alpha.field();
    let target = BruhatForm::borel(alpha, field.zero());
    let mut out = Vec::new();
    for r in (2..=n).filter(|r| n.is_multiple_of(*r)) {
        let d = n / r;
        for x in field.elements() {
            for y in field.units() {
                let mut vals = f_values(x, y).skip(r as usize - 2);
                let f_rm3 = vals.next().expect("unbounded");
                let f_rm1 = vals.nth(1).expect("unbounded");
                if !f_rm1.is_zero() {
                    continue;
                }
                if r >= 3 && !x.is_zero() {
                    let sign = sign_pow(field, d * (r - 1));
                    let rhs = sign * alpha * x.pow(d) * y.powi(d as i64 * (r as i64 - 4));
                    if f_rm3.pow(d) != rhs {
                        continue;
                    }
                }
                out.extend(cell_fiber(x, y).filter(|c| c.pow(n) == target));
            }
        }
    }
    out
}

/// Roots of the cell element `X₁₂(τ)n(α)X₁₂(ψ)`. All of them lie in the
/// cell; they are the `(X, Y)`, `Y ≠ 0`, with
/// `2α f_{n-2} + (-1)^n X Y^{n-2} + (-1)^{n-1}(τ+ψ) Y^{n-2} = 0` and
/// `α f_{n-1} + (-1)^n Y^n = 0`, lifted by `a = Y`,
/// `t = τ + a² f_{n-2}/f_{n-1}`, `s = X - t`.
pub fn roots_of_cell(tau: FieldElem, alpha: FieldElem, psi: FieldElem, n: u64) -> Vec<BruhatForm> {
    assert!(n >= 1);
    let field = alpha.field();
    let target = BruhatForm::cell(tau, alpha, psi);
    let sign = sign_pow(field, n);
    let trace_sum = tau + psi;
    let mut out = Vec::new();
    for y in field.units() {
        let y_n2 = y.powi(n as i64 - 2);
        let y_n = y.pow(n);
        for x in field.elements() {
            let mut vals = f_values(x, y).skip(n as usize - 1);
            let f_n2 = vals.next().expect("unbounded");
            let f_n1 = vals.next().expect("unbounded");
            if !(alpha * f_n1 + sign * y_n).is_zero() {
                continue;
            }
            if !(field.elem(2) * alpha * f_n2 + sign * x * y_n2 - sign * trace_sum * y_n2).is_zero() {
                continue;
            }
            let t = tau + y * y * f_n2 / f_n1;
            let cand = BruhatForm::cell(t, y, x - t);
            if cand.pow(n) == target {
                out.push(cand);
            }
        }
    }
    sorted(out)
}

/// Lift `(X, Y)` to the cell element with `t = τ + Y² f_{n-2}/f_{n-1}`.
fn lift(tau: FieldElem, x: FieldElem, y: FieldElem, n: u64) -> Option<BruhatForm> {
    if y.is_zero() {
        return None;
    }
    let mut vals = f_values(x, y).skip(n as usize - 1);
    let f_n2 = vals.next().expect("unbounded");
    let f_n1 = vals.next().expect("unbounded").checked_inv()?;
    let t = tau + y * y * f_n2 * f_n1;
    Some(BruhatForm::cell(t, y, x - t))
}

/// Borel roots of Borel targets from the closed forms for small exponents.
/// `t = ψ / (1 + a⁻² + ⋯ + a^{-2(n-1)})`, with every `t` allowed when the
/// sum and `ψ` both vanish.
fn small_borel_in_borel(alpha: FieldElem, psi: FieldElem, n: u64) -> Vec<BruhatForm> {
    let field = alpha.field();
    let mut out = Vec::new();
    for a in nth_roots_in_field(alpha, n) {
        let w = (a * a).inv();
        let denom = match n {
            2 => field.one() + alpha.inv(),
            3 => field.one() + alpha.inv() * a.inv() + w,
            4 => (field.one() + alpha.inv()) * (field.one() + w),
            _ => unreachable!("closed forms cover n = 2, 3, 4"),
        };
        if denom.is_zero() {
            if psi.is_zero() {
                out.extend(field.elements().map(|t| BruhatForm::borel(a, t)));
            }
        } else {
            out.push(BruhatForm::borel(a, psi / denom));
        }
    }
    out
}

/// Square roots via the closed forms.
pub fn sqrt_sl2(g: &BruhatForm) -> Vec<BruhatForm> {
    let field = g.field();
    let mut out = Vec::new();
    match *g {
        BruhatForm::Borel { alpha, psi } => {
            out.extend(small_borel_in_borel(alpha, psi, 2));
            if alpha.is_minus_one() && psi.is_zero() {
                for a in field.units() {
                    out.extend(cell_fiber(field.zero(), a));
                }
            }
        }
        BruhatForm::Cell { tau, alpha, psi } => {
            // Y² = α(2α - τ - ψ), X = τ + ψ - 2α
            let x = tau + psi - field.elem(2) * alpha;
            for y in nth_roots_in_field(-alpha * x, 2) {
                out.extend(lift(tau, x, y, 2));
            }
        }
    }
    sorted(out)
}

/// Cube roots via the closed forms; characteristic 3 uses the general solver.
pub fn cbrt_sl2(g: &BruhatForm) -> Vec<BruhatForm> {
    let field = g.field();
    if field.p() == 3 {
        return general_roots(g, 3).into_iter().map(|r| r.form).collect();
    }
    let mut out = Vec::new();
    match *g {
        BruhatForm::Borel { alpha, psi } => {
            out.extend(small_borel_in_borel(alpha, psi, 3));
            if alpha.is_pm_one() && psi.is_zero() {
                for a in field.units() {
                    out.extend(cell_fiber(alpha * a, a));
                }
            }
        }
        BruhatForm::Cell { tau, alpha, psi } => {
            let sum = tau + psi;
            let k = sum / alpha;
            let (two, three, four) = (field.elem(2), field.elem(3), field.elem(4));
            for yp in field.units() {
                if !(yp * yp * yp - three * yp * yp + four - k * k).is_zero() {
                    continue;
                }
                let y = alpha * yp;
                if yp == two {
                    for x in nth_roots_in_field(field.elem(12) * alpha * alpha, 2) {
                        out.extend(lift(tau, x, y, 3));
                    }
                } else {
                    out.extend(lift(tau, sum * yp / (yp - two), y, 3));
                }
            }
        }
    }
    sorted(out)
}

/// Fourth roots via the closed forms.
pub fn fourth_root_sl2(g: &BruhatForm) -> Vec<BruhatForm> {
    let field = g.field();
    let mut out = Vec::new();
    match *g {
        BruhatForm::Borel { alpha, psi } => {
            out.extend(small_borel_in_borel(alpha, psi, 4));
            if alpha.is_pm_one() && psi.is_zero() {
                let xs = if alpha.is_one() {
                    vec![field.zero()]
                } else {
                    nth_roots_in_field(field.elem(2), 2)
                };
                for a in field.units() {
                    for &gamma in &xs {
                        out.extend(cell_fiber(gamma * a, a));
                    }
                }
            }
        }
        BruhatForm::Cell { tau, alpha, psi } => {
            // X = (S - 2α) ± 2√(α(2α - S)), 2Y² = X² - (S - 2α)X
            let two = field.elem(2);
            let shift = tau + psi - two * alpha;
            for root in nth_roots_in_field(-alpha * shift, 2) {
                let x = shift + two * root;
                for y in nth_roots_in_field((x * x - shift * x) / two, 2) {
                    out.extend(lift(tau, x, y, 4));
                }
            }
        }
    }
    sorted(out)
}

/// All roots by enumerating the group.
pub fn exhaustive_roots(g: &BruhatForm, n: u64) -> Vec<BruhatForm> {
    let target = g.to_matrix();
    sorted(
        elements(g.field())
            .into_iter()
            .filter(|x| x.pow(n) == target)
            .map(|x| x.to_bruhat())
            .collect(),
    )
}

fn general_roots(g: &BruhatForm, n: u64) -> Vec<Root> {
    let tagged = |forms: Vec<BruhatForm>, method| forms.into_iter().map(move |form| Root { form, method });
    match *g {
        BruhatForm::Borel { alpha, psi } => {
            let cell_method = if n <= 4 { Method::CellSmallN } else { Method::CellGeneral };
            tagged(roots_in_borel(alpha, psi, n), Method::BorelCase)
                .chain(tagged(borel_roots_in_cell(alpha, psi, n), cell_method))
                .collect()
        }
        BruhatForm::Cell { tau, alpha, psi } => {
            tagged(roots_of_cell(tau, alpha, psi, n), Method::BivariateSystem).collect()
        }
    }
}

/// Every `x` with `x^n = g`.
///
/// For `n ∈ {2, 3, 4}` the closed-form solver runs as well and must agree;
/// every root is re-checked against `g` before returning.
pub fn nth_roots(g: &BruhatForm, n: u64) -> Result<RootSolution> {
    let query = RootQuery::new(*g, n)?;
    let p = g.field().p();
    if p > ROOT_FIELD_CAP {
        return Err(Error::CapExceeded { what: "field size", value: p as u64, cap: ROOT_FIELD_CAP as u64 });
    }
    let mut roots = general_roots(g, n);
    roots.sort_by_key(|r| r.form);
    if let Some(bad) = roots.iter().find(|r| r.form.pow(n) != *g) {
        return Err(Error::SolverDisagreement { n, detail: format!("{} is not a root of {}", bad.form, g) });
    }
    let special = match n {
        2 => Some(sqrt_sl2(g)),
        3 => Some(cbrt_sl2(g)),
        4 => Some(fourth_root_sl2(g)),
        _ => None,
    };
    if let Some(special) = special {
        let general: Vec<BruhatForm> = roots.iter().map(|r| r.form).collect();
        if special != general {
            return Err(Error::SolverDisagreement {
                n,
                detail: format!(
                    "{} closed-form roots against {} from the general solver for {}",
                    special.len(),
                    general.len(),
                    g
                ),
            });
        }
    }
    Ok(RootSolution { query, roots })
}

/// Roots of a matrix, keyed by the power map, for every element of the
/// group at once. Used as an oracle at small `q`.
pub fn preimage_table(field: PrimeField, n: u64) -> BTreeMap<Sl2Elem, Vec<Sl2Elem>> {
    let mut table: BTreeMap<Sl2Elem, Vec<Sl2Elem>> = BTreeMap::new();
    for x in elements(field) {
        table.entry(x.pow(n)).or_default().push(x);
    }
    table
}
