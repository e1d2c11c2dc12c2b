//! Counting n-th powers: classes `c(n, q)`, elements `s(n, q)`, Borel-only
//! counts and anisotropic classes, by closed form and by enumeration.

use std::collections::HashSet;
use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::field::{is_prime, PrimeField, QuadExtField};
use crate::sl2::{elements, group_order, ClassIndex, ClassKind, Sl2Elem};

/// Default largest `q` for full-group enumeration.
pub const BRUTE_CAP: u32 = 31;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Formula,
    BruteForce,
}

impl Mode {
    pub fn tag(self) -> &'static str {
        match self {
            Mode::Formula => "formula",
            Mode::BruteForce => "brute-force",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Number of power classes of each type.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct PerType {
    pub central: u64,
    pub split: u64,
    pub nonsemisimple: u64,
    pub anisotropic: u64,
}

impl PerType {
    pub fn total(&self) -> u64 {
        self.central + self.split + self.nonsemisimple + self.anisotropic
    }

    fn bump(&mut self, kind: ClassKind) {
        match kind {
            ClassKind::Central => self.central += 1,
            ClassKind::Split => self.split += 1,
            ClassKind::NonSemisimple => self.nonsemisimple += 1,
            ClassKind::Anisotropic => self.anisotropic += 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerCensus {
    pub q: u64,
    pub n: u64,
    pub mode: Mode,
    /// Conjugacy classes made of n-th powers.
    pub c: u64,
    /// Elements that are n-th powers.
    pub s: u64,
    pub per_type: PerType,
}

impl PowerCensus {
    /// `c / (q + 4)`.
    pub fn ratio_c(&self) -> Ratio<u64> {
        Ratio::new(self.c, self.q + 4)
    }

    /// `s / (q³ - q)`.
    pub fn ratio_s(&self) -> Ratio<u64> {
        Ratio::new(self.s, self.q * self.q * self.q - self.q)
    }

    /// Same counts regardless of how they were obtained.
    pub fn same_counts(&self, other: &PowerCensus) -> bool {
        (self.q, self.n, self.c, self.s, self.per_type) == (other.q, other.n, other.c, other.s, other.per_type)
    }
}

/// n-th powers inside the Borel, split by diagonal entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BorelCensus {
    pub q: u64,
    pub n: u64,
    /// Unipotents `X₁₂(s)` that are n-th powers in `B`.
    pub m_n: u64,
    /// Elements `-X₁₂(s)` that are n-th powers in `B`.
    pub m_n_minus: u64,
    /// n-th powers in `F_q`, counting zero.
    pub n_nq: u64,
    /// `(N_{n,q} - 3)q + M_n + M_n⁻`.
    pub total: i64,
}

/// Closed-form Borel census.
pub fn borel_power_census(field: PrimeField, n: u64) -> Result<BorelCensus> {
    if n == 0 {
        return Err(Error::ZeroExponent);
    }
    let q = field.order();
    let coprime = n.gcd(&q) == 1;
    let m_n = if coprime { q } else { 1 };
    let m_n_minus = if n % 2 == 1 {
        m_n
    } else {
        u64::from((-field.one()).is_square())
    };
    let n_nq = field.nth_power_count(n);
    let total = (n_nq as i64 - 3) * q as i64 + m_n as i64 + m_n_minus as i64;
    Ok(BorelCensus { q, n, m_n, m_n_minus, n_nq, total })
}

/// Exhaustive count of `{xⁿ : x ∈ B}`.
pub fn borel_power_count_brute(field: PrimeField, n: u64) -> u64 {
    let mut seen = HashSet::new();
    for a in field.units() {
        for t in field.elements() {
            let x = Sl2Elem::h(a) * Sl2Elem::x12(t);
            seen.insert(x.pow(n));
        }
    }
    seen.len() as u64
}

/// Anisotropic classes that are n-th powers, from the n-th power map on the
/// norm-one subgroup of `F_{q²}`: its image has `(q+1)/d` elements and the
/// classes are the pairs `{x, x⁻¹}` other than `±1`.
pub fn anisotropic_power_classes(field: PrimeField, n: u64) -> u64 {
    let q = field.order();
    if n.gcd(&(q + 1)) == 1 {
        return (q - 1) / 2;
    }
    let data = QuadExtField::new(field).norm_one_nth_power_data(n);
    let image = (q + 1) / data.kernel;
    if data.contains_minus_one {
        (image - 2) / 2
    } else {
        (image - 1) / 2
    }
}

/// The same count from the corollaries for prime `n ≥ 3` and `n = 4`.
pub fn anisotropic_power_classes_closed(field: PrimeField, n: u64) -> Result<u64> {
    let q = field.order();
    if n == 4 {
        return Ok(match q % 8 {
            1 | 5 => (q - 1) / 4,
            3 => (q - 3) / 8,
            _ => (q - 7) / 8,
        });
    }
    if n >= 3 && is_prime(n) {
        return Ok(if !(q + 1).is_multiple_of(n) { (q - 1) / 2 } else { (q + 1) / (2 * n) - 1 });
    }
    Err(Error::UnsupportedExponent(n))
}

/// `(c₃q³ + c₂q² + c₁q + c₀) / den`, which must be integral.
fn cubic(q: u64, coeffs: [i64; 4], den: i64) -> u64 {
    let q = q as i64;
    let num = coeffs[0] * q * q * q + coeffs[1] * q * q + coeffs[2] * q + coeffs[3];
    debug_assert_eq!(num % den, 0);
    (num / den) as u64
}

/// Closed-form census for `n ∈ {2, 3, 4}` and primes `n`.
pub fn power_census_formula(field: PrimeField, n: u64) -> Result<PowerCensus> {
    let q = field.order();
    let order = group_order(field);
    let (c, s, per_type) = match n {
        2 => {
            let c = (q + 5) / 2;
            let base = q * q * (q - 1) / 2;
            let s = if (-field.one()).is_square() { base - q + 1 } else { base + 1 };
            let per = PerType { central: 2, split: (q - 3) / 4, nonsemisimple: 2, anisotropic: (q - 1) / 4 };
            (c, s, per)
        }
        3 if q != 3 => {
            let s = 2 * q * (q * q - 1) / 3;
            if (q - 1).is_multiple_of(3) {
                let per = PerType { central: 2, split: (q - 7) / 6, nonsemisimple: 4, anisotropic: (q - 1) / 2 };
                ((2 * q + 13) / 3, s, per)
            } else {
                let per = PerType { central: 2, split: (q - 3) / 2, nonsemisimple: 4, anisotropic: (q + 1) / 6 - 1 };
                ((2 * q + 11) / 3, s, per)
            }
        }
        4 => {
            let r = q % 8;
            let c = match r {
                1 => (3 * q + 21) / 8,
                3 => (3 * q + 15) / 8,
                5 => (3 * q + 17) / 8,
                _ => (3 * q + 11) / 8,
            };
            let s = match r {
                1 => cubic(q, [3, -4, -7, 8], 8),
                3 | 5 => 3 * (q * q * q - q) / 8,
                _ => cubic(q, [3, -4, 1, 8], 8),
            };
            let (central, split, anisotropic) = match r {
                1 => (2, (q - 9) / 8, (q - 1) / 4),
                3 => (1, (q - 3) / 4, (q - 3) / 8),
                5 => (1, (q - 5) / 8, (q - 1) / 4),
                _ => (2, (q - 3) / 4, (q - 7) / 8),
            };
            (c, s, PerType { central, split, nonsemisimple: 2, anisotropic })
        }
        _ if n >= 3 && is_prime(n) => {
            if !order.is_multiple_of(n) {
                let per = PerType { central: 2, split: (q - 3) / 2, nonsemisimple: 4, anisotropic: (q - 1) / 2 };
                (q + 4, order, per)
            } else if q.is_multiple_of(n) {
                let per = PerType { central: 2, split: (q - 3) / 2, nonsemisimple: 0, anisotropic: (q - 1) / 2 };
                (q, (q - 2) * (q * q - 1), per)
            } else if (q - 1).is_multiple_of(n) {
                let c = (n + 1) * (q - 1) / (2 * n) + 5;
                let per = PerType {
                    central: 2,
                    split: ((q - 1) / n - 2) / 2,
                    nonsemisimple: 4,
                    anisotropic: (q - 1) / 2,
                };
                (c, (n + 1) * order / (2 * n), per)
            } else {
                let c = ((n + 1) * (q - 3) + 4) / (2 * n) + 5;
                let per = PerType {
                    central: 2,
                    split: (q - 3) / 2,
                    nonsemisimple: 4,
                    anisotropic: (q + 1) / (2 * n) - 1,
                };
                (c, (n + 1) * order / (2 * n), per)
            }
        }
        _ => return Err(Error::UnsupportedExponent(n)),
    };
    Ok(PowerCensus { q, n, mode: Mode::Formula, c, s, per_type })
}

/// Census by enumerating the group, with the default cap.
pub fn power_census_brute(field: PrimeField, n: u64) -> Result<PowerCensus> {
    power_census_brute_capped(field, n, BRUTE_CAP)
}

/// Census by enumerating the group: collect `{gⁿ}` and the classes it meets.
pub fn power_census_brute_capped(field: PrimeField, n: u64, cap: u32) -> Result<PowerCensus> {
    if n == 0 {
        return Err(Error::ZeroExponent);
    }
    check_cap(field, cap)?;
    let index = ClassIndex::new(field);
    let image: HashSet<Sl2Elem> = elements(field).into_iter().map(|g| g.pow(n)).collect();
    let mut hit = vec![false; index.len()];
    for g in &image {
        hit[index.class_of(g)] = true;
    }
    let mut per_type = PerType::default();
    for (info, _) in index.table().iter().zip(&hit).filter(|(_, h)| **h) {
        per_type.bump(info.class.kind());
    }
    Ok(PowerCensus {
        q: field.order(),
        n,
        mode: Mode::BruteForce,
        c: per_type.total(),
        s: image.len() as u64,
        per_type,
    })
}

pub(crate) fn check_cap(field: PrimeField, cap: u32) -> Result<()> {
    if field.p() > cap {
        return Err(Error::CapExceeded { what: "q", value: field.p() as u64, cap: cap as u64 });
    }
    Ok(())
}

/// Limit of `s(n, q) / |SL_2(F_q)|` as `q → ∞`.
pub fn asymptotic_ratio(n: u64) -> Result<Ratio<u64>> {
    match n {
        2 => Ok(Ratio::new(1, 2)),
        4 => Ok(Ratio::new(3, 8)),
        _ if n >= 3 && is_prime(n) => Ok(Ratio::new(n + 1, 2 * n)),
        _ => Err(Error::UnsupportedExponent(n)),
    }
}
