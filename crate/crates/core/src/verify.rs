//! Oracle-equivalence suite: closed forms and solvers against enumeration.

use crate::census::{
    borel_power_census, borel_power_count_brute, power_census_brute, power_census_formula, BRUTE_CAP,
};
use crate::error::{Error, Result};
use crate::field::{odd_primes, PrimeField};
use crate::roots::{nth_roots, preimage_table};
use crate::sl2::elements;
use crate::words::verify_surjectivity_suite;

/// Largest exponent the suite accepts.
pub const MAX_N_CAP: u64 = 24;

/// Census exponents with a closed form.
pub const CENSUS_EXPONENTS: [u64; 6] = [2, 3, 4, 5, 7, 11];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckRow {
    pub suite: &'static str,
    pub q: u64,
    pub case: String,
    pub expected: String,
    pub observed: String,
}

impl CheckRow {
    pub fn pass(&self) -> bool {
        self.expected == self.observed
    }
}

/// Every root set for `q`, `n` against inversion of the power map.
pub fn roots_rows(field: PrimeField, max_n: u64) -> Vec<CheckRow> {
    let mut rows = Vec::new();
    let group = elements(field);
    for n in 1..=max_n {
        let table = preimage_table(field, n);
        let mut wrong = 0usize;
        for g in &group {
            let mut want: Vec<_> = table.get(g).map(|v| v.iter().map(|x| x.to_bruhat()).collect()).unwrap_or_default();
            want.sort();
            match nth_roots(&g.to_bruhat(), n) {
                Ok(sol) if sol.forms() == want => {}
                _ => wrong += 1,
            }
        }
        rows.push(CheckRow {
            suite: "roots",
            q: field.order(),
            case: format!("n={n}, all {} targets", group.len()),
            expected: "0 mismatches".to_string(),
            observed: format!("{wrong} mismatches"),
        });
    }
    rows
}

/// Closed-form census against enumeration, element and Borel counts.
pub fn census_rows(field: PrimeField, max_n: u64) -> Result<Vec<CheckRow>> {
    let q = field.order();
    let mut rows = Vec::new();
    for n in CENSUS_EXPONENTS.into_iter().filter(|n| *n <= max_n) {
        let formula = power_census_formula(field, n)?;
        let brute = power_census_brute(field, n)?;
        rows.push(CheckRow {
            suite: "census",
            q,
            case: format!("n={n}"),
            expected: format!("c={} s={}", formula.c, formula.s),
            observed: format!("c={} s={}", brute.c, brute.s),
        });
    }
    for n in 1..=max_n {
        let formula = borel_power_census(field, n)?;
        rows.push(CheckRow {
            suite: "borel-census",
            q,
            case: format!("n={n}"),
            expected: formula.total.to_string(),
            observed: borel_power_count_brute(field, n).to_string(),
        });
    }
    Ok(rows)
}

/// The whole suite over odd primes `q ≤ max_q` and exponents `n ≤ max_n`.
pub fn run_suite(max_q: u32, max_n: u64) -> Result<Vec<CheckRow>> {
    if max_q > BRUTE_CAP {
        return Err(Error::CapExceeded { what: "max-q", value: max_q as u64, cap: BRUTE_CAP as u64 });
    }
    if max_n > MAX_N_CAP {
        return Err(Error::CapExceeded { what: "max-n", value: max_n, cap: MAX_N_CAP });
    }
    let mut rows = Vec::new();
    for p in odd_primes(3, max_q) {
        let field = PrimeField::new(p)?;
        rows.extend(roots_rows(field, max_n));
        rows.extend(census_rows(field, max_n)?);
    }
    for claim in verify_surjectivity_suite(max_q)? {
        rows.push(CheckRow {
            suite: "surjectivity",
            q: claim.q,
            case: claim.claim,
            expected: claim.expected,
            observed: claim.observed,
        });
    }
    Ok(rows)
}
