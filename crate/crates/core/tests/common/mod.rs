//! Independent oracle: matrices as plain integer tuples mod q.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use sl2_core::{PrimeField, Sl2Elem};

pub type Mat = [u64; 4];

pub fn mul(q: u64, x: Mat, y: Mat) -> Mat {
    [
        (x[0] * y[0] + x[1] * y[2]) % q,
        (x[0] * y[1] + x[1] * y[3]) % q,
        (x[2] * y[0] + x[3] * y[2]) % q,
        (x[2] * y[1] + x[3] * y[3]) % q,
    ]
}

pub fn identity() -> Mat {
    [1, 0, 0, 1]
}

/// `x^n` by n-fold multiplication.
pub fn pow(q: u64, x: Mat, n: u64) -> Mat {
    (0..n).fold(identity(), |acc, _| mul(q, acc, x))
}

pub fn inverse(q: u64, x: Mat) -> Mat {
    [x[3], (q - x[1]) % q, (q - x[2]) % q, x[0]]
}

/// Every matrix of determinant one, by scanning all quadruples.
pub fn group(q: u64) -> Vec<Mat> {
    let mut out = Vec::new();
    for a in 0..q {
        for b in 0..q {
            for c in 0..q {
                for d in 0..q {
                    if (a * d + q * q - b * c % q) % q == 1 {
                        out.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    out
}

pub fn to_elem(field: PrimeField, m: Mat) -> Sl2Elem {
    Sl2Elem::from_residues(field, m.map(|v| v as i64)).expect("oracle matrices are unimodular")
}

pub fn from_elem(g: &Sl2Elem) -> Mat {
    g.entries().map(|e| e.value() as u64)
}

/// Conjugacy classes by orbit enumeration.
pub fn classes(q: u64) -> Vec<BTreeSet<Mat>> {
    let g = group(q);
    let mut seen: HashMap<Mat, usize> = HashMap::new();
    let mut out: Vec<BTreeSet<Mat>> = Vec::new();
    for &x in &g {
        if seen.contains_key(&x) {
            continue;
        }
        let orbit: BTreeSet<Mat> = g.iter().map(|&y| mul(q, mul(q, y, x), inverse(q, y))).collect();
        for m in &orbit {
            seen.insert(*m, out.len());
        }
        out.push(orbit);
    }
    out
}

/// `{gⁿ}` over the whole group.
pub fn power_image(q: u64, n: u64) -> BTreeSet<Mat> {
    group(q).into_iter().map(|x| pow(q, x, n)).collect()
}

/// Number of classes meeting a conjugation-closed set.
pub fn classes_hit(q: u64, set: &BTreeSet<Mat>) -> usize {
    classes(q).iter().filter(|c| c.iter().any(|m| set.contains(m))).count()
}

/// Number of n-th powers of upper-triangular elements.
pub fn borel_power_count(q: u64, n: u64) -> usize {
    let mut out = BTreeSet::new();
    for a in 1..q {
        let ai = (1..q).find(|b| a * b % q == 1).unwrap();
        for t in 0..q {
            out.insert(pow(q, [a, a * t % q, 0, ai], n));
        }
    }
    out.len()
}
