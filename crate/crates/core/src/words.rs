//! Images of power words `X₁^{r₁}⋯X_l^{r_l}` on `SL_2(F_q)` and on the Borel.
//!
//! Each `G^r = {gʳ}` is a union of conjugacy classes, and so is any product
//! of such sets. Products are therefore tracked as sets of classes: for
//! `S·T` it is enough to multiply one representative of each class of `S`
//! by every element of `T`.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use crate::census::{check_cap, BRUTE_CAP};
use crate::error::{Error, Result};
use crate::field::{is_prime, PrimeField};
use crate::sl2::{elements, group_order, ClassIndex, ClassInfo, Sl2Elem};

/// Exponents `(r₁, …, r_l)` of a power word.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WordSpec {
    exponents: Vec<u64>,
}

impl WordSpec {
    pub fn new(exponents: Vec<u64>) -> Result<Self> {
        if exponents.is_empty() {
            return Err(Error::EmptyWord);
        }
        if exponents.contains(&0) {
            return Err(Error::ZeroExponent);
        }
        Ok(WordSpec { exponents })
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }
}

impl FromStr for WordSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let exps = s
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(|t| t.trim().parse::<u64>().map_err(|_| Error::ZeroExponent))
            .collect::<Result<Vec<_>>>()?;
        WordSpec::new(exps)
    }
}

impl fmt::Display for WordSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.exponents.iter().map(|r| r.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImageReport {
    pub q: u64,
    pub word: WordSpec,
    pub image_size: u64,
    pub group_size: u64,
    pub surjective: bool,
    /// Classes outside the image.
    pub missing: Vec<ClassInfo>,
    /// Whether `|G^{r₁}| + |G^{r₂}| > |G|` already forces surjectivity
    /// (two-letter words only).
    pub shortcut: bool,
}

/// `{gʳ : g ∈ SL_2(F_q)}`.
pub fn power_set(field: PrimeField, r: u64) -> Result<BTreeSet<Sl2Elem>> {
    check_cap(field, BRUTE_CAP)?;
    Ok(elements(field).into_iter().map(|g| g.pow(r)).collect())
}

/// `{xy : x ∈ a, y ∈ b}`, element by element.
pub fn set_product(a: &HashSet<Sl2Elem>, b: &HashSet<Sl2Elem>) -> HashSet<Sl2Elem> {
    a.iter().flat_map(|x| b.iter().map(move |y| *x * *y)).collect()
}

/// Precomputed class data for repeated word evaluations over one field.
pub struct WordContext {
    field: PrimeField,
    index: ClassIndex,
    members: Vec<Vec<Sl2Elem>>,
    powers: HashMap<u64, Vec<bool>>,
}

impl WordContext {
    pub fn new(field: PrimeField) -> Result<Self> {
        Self::with_cap(field, BRUTE_CAP)
    }

    pub fn with_cap(field: PrimeField, cap: u32) -> Result<Self> {
        check_cap(field, cap)?;
        let index = ClassIndex::new(field);
        let mut members = vec![Vec::new(); index.len()];
        for g in elements(field) {
            members[index.class_of(&g)].push(g);
        }
        Ok(WordContext { field, index, members, powers: HashMap::new() })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn index(&self) -> &ClassIndex {
        &self.index
    }

    /// Classes of `G^r`; the power of a class is the class of the power of
    /// any of its elements.
    pub fn power_classes(&mut self, r: u64) -> Vec<bool> {
        let index = &self.index;
        self.powers
            .entry(r)
            .or_insert_with(|| {
                let mut hit = vec![false; index.len()];
                for info in index.table() {
                    hit[index.class_of(&info.representative.pow(r))] = true;
                }
                hit
            })
            .clone()
    }

    pub fn size_of(&self, classes: &[bool]) -> u64 {
        self.index.table().iter().zip(classes).filter(|(_, h)| **h).map(|(c, _)| c.size).sum()
    }

    /// Classes of `S·T` for conjugation-closed `S`, `T`.
    pub fn product_classes(&self, left: &[bool], right: &[bool]) -> Vec<bool> {
        let mut hit = vec![false; self.index.len()];
        let right_elems: Vec<&Sl2Elem> =
            right.iter().zip(&self.members).filter(|(h, _)| **h).flat_map(|(_, m)| m.iter()).collect();
        for (info, _) in self.index.table().iter().zip(left).filter(|(_, h)| **h) {
            let x = info.representative;
            for y in &right_elems {
                hit[self.index.class_of(&(x * **y))] = true;
            }
        }
        hit
    }

    pub fn word_image(&mut self, word: &WordSpec) -> ImageReport {
        let exps = word.exponents();
        let mut acc = self.power_classes(exps[0]);
        for &r in &exps[1..] {
            let next = self.power_classes(r);
            acc = self.product_classes(&acc, &next);
        }
        let group_size = group_order(self.field);
        let shortcut = exps.len() == 2 && {
            let a = self.power_classes(exps[0]);
            let b = self.power_classes(exps[1]);
            self.size_of(&a) + self.size_of(&b) > group_size
        };
        let image_size = self.size_of(&acc);
        let missing: Vec<ClassInfo> =
            self.index.table().iter().zip(&acc).filter(|(_, h)| !**h).map(|(c, _)| c.clone()).collect();
        ImageReport {
            q: self.field.order(),
            word: word.clone(),
            image_size,
            group_size,
            surjective: missing.is_empty(),
            missing,
            shortcut,
        }
    }

    /// Every element of the given classes.
    pub fn expand(&self, classes: &[ClassInfo]) -> Vec<Sl2Elem> {
        let mut out: Vec<Sl2Elem> =
            classes.iter().flat_map(|c| self.members[self.index.position(&c.class)].iter().copied()).collect();
        out.sort();
        out
    }
}

/// Image of a power word on `SL_2(F_q)`.
pub fn word_image(field: PrimeField, word: &WordSpec) -> Result<ImageReport> {
    Ok(WordContext::new(field)?.word_image(word))
}

/// Image of a power word restricted to the Borel, as a set of elements.
pub fn borel_word_image(field: PrimeField, word: &WordSpec) -> Result<HashSet<Sl2Elem>> {
    check_cap(field, BRUTE_CAP)?;
    let borel: Vec<Sl2Elem> = field
        .units()
        .flat_map(|a| field.elements().map(move |t| Sl2Elem::h(a) * Sl2Elem::x12(t)))
        .collect();
    let power = |r: u64| -> HashSet<Sl2Elem> { borel.iter().map(|x| x.pow(r)).collect() };
    let exps = word.exponents();
    let mut acc = power(exps[0]);
    for &r in &exps[1..] {
        acc = set_product(&acc, &power(r));
    }
    Ok(acc)
}

/// `|B| = q(q - 1)`.
pub fn borel_order(field: PrimeField) -> u64 {
    field.order() * (field.order() - 1)
}

/// One checked claim of the surjectivity suite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClaimResult {
    pub q: u64,
    pub claim: String,
    pub expected: String,
    pub observed: String,
}

impl ClaimResult {
    pub fn pass(&self) -> bool {
        self.expected == self.observed
    }
}

fn describe(report: &ImageReport, minus_one: Sl2Elem) -> String {
    if report.surjective {
        "surjective".to_string()
    } else if report.missing.len() == 1 && report.missing[0].representative == minus_one {
        "all but -1".to_string()
    } else {
        format!("missing {} classes", report.missing.len())
    }
}

fn claim(ctx: &mut WordContext, minus_one: Sl2Elem, exps: Vec<u64>, expected: &str) -> ClaimResult {
    let word = WordSpec::new(exps).expect("positive exponents");
    let report = ctx.word_image(&word);
    ClaimResult {
        q: ctx.field().order(),
        claim: format!("word {word}"),
        expected: expected.to_string(),
        observed: describe(&report, minus_one),
    }
}

/// Check the surjectivity statements for every odd prime `q ≤ qmax`.
pub fn verify_surjectivity_suite(qmax: u32) -> Result<Vec<ClaimResult>> {
    if qmax > BRUTE_CAP {
        return Err(Error::CapExceeded { what: "q", value: qmax as u64, cap: BRUTE_CAP as u64 });
    }
    let odd_primes: Vec<u64> = (3..=7).filter(|n| is_prime(*n)).collect();
    let mut out = Vec::new();
    for p in crate::field::odd_primes(3, qmax) {
        let field = PrimeField::new(p)?;
        let q = field.order();
        let minus_one = Sl2Elem::minus_identity(field);
        let mut ctx = WordContext::new(field)?;
        out.push(claim(&mut ctx, minus_one, vec![2, 2], "surjective"));
        if q == 3 {
            for len in 1..=4 {
                let obs = ctx.word_image(&WordSpec::new(vec![3; len])?);
                out.push(ClaimResult {
                    q,
                    claim: format!("word {} never surjective", WordSpec::new(vec![3; len])?),
                    expected: "image of size 8".to_string(),
                    observed: format!("image of size {}", obs.image_size),
                });
            }
        } else {
            out.push(claim(&mut ctx, minus_one, vec![3, 3], "surjective"));
        }
        out.push(claim(&mut ctx, minus_one, vec![4, 4], if matches!(q % 8, 3 | 5) { "all but -1" } else { "surjective" }));
        out.push(claim(&mut ctx, minus_one, vec![4, 4, 4], "surjective"));
        for (i, &m) in odd_primes.iter().enumerate() {
            for &n in &odd_primes[i..] {
                if m == 3 && n == 3 && q == 3 {
                    continue;
                }
                out.push(claim(&mut ctx, minus_one, vec![m, n], "surjective"));
            }
        }
        for &n in odd_primes.iter().filter(|&&n| q % n != 0 && n + 1 < q) {
            out.push(claim(&mut ctx, minus_one, vec![2, n], "surjective"));
        }
        let half = (borel_order(field) / 2).to_string();
        for len in 2..=4 {
            let image = borel_word_image(field, &WordSpec::new(vec![2; len])?)?;
            out.push(ClaimResult {
                q,
                claim: format!("word {} on B has size |B|/2", WordSpec::new(vec![2; len])?),
                expected: half.clone(),
                observed: image.len().to_string(),
            });
        }
        if q != 3 {
            let cubes = borel_word_image(field, &WordSpec::new(vec![3])?)?;
            let onto = cubes.len() as u64 == borel_order(field);
            out.push(ClaimResult {
                q,
                claim: "X^3 onto B iff 3 does not divide q-1".to_string(),
                expected: ((q - 1) % 3 != 0).to_string(),
                observed: onto.to_string(),
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn parse_words() {
        assert_eq!("2,3".parse::<WordSpec>().unwrap().exponents(), &[2, 3]);
        assert_eq!("".parse::<WordSpec>(), Err(Error::EmptyWord));
        assert_eq!("2,0".parse::<WordSpec>(), Err(Error::ZeroExponent));
    }

    #[test]
    fn power_set_examples() {
        assert_eq!(power_set(f(5), 1).unwrap().len() as u64, group_order(f(5)));
        assert_eq!(power_set(f(5), 2).unwrap().len(), 46);
        assert_eq!(power_set(f(3), 3).unwrap().len(), 8);
    }

    #[test]
    fn squares_times_squares() {
        for p in [5u32, 7, 11, 13] {
            assert!(word_image(f(p), &WordSpec::new(vec![2, 2]).unwrap()).unwrap().surjective);
        }
    }

    #[test]
    fn cubes_over_f3_stay_cubes() {
        let r = word_image(f(3), &WordSpec::new(vec![3, 3]).unwrap()).unwrap();
        assert!(!r.surjective);
        assert_eq!(r.image_size, 8);
    }

    #[test]
    fn fourth_powers_miss_minus_one() {
        for p in [5u32, 11, 13] {
            let r = word_image(f(p), &WordSpec::new(vec![4, 4]).unwrap()).unwrap();
            assert_eq!(r.missing.len(), 1);
            assert_eq!(r.missing[0].representative, Sl2Elem::minus_identity(f(p)));
        }
    }

    #[test]
    fn class_product_matches_set_product() {
        for p in [3u32, 5, 7] {
            let field = f(p);
            let mut ctx = WordContext::new(field).unwrap();
            for r1 in 1..=4 {
                for r2 in 1..=4 {
                    let a: HashSet<_> = power_set(field, r1).unwrap().into_iter().collect();
                    let b: HashSet<_> = power_set(field, r2).unwrap().into_iter().collect();
                    let plain = set_product(&a, &b);
                    let report = ctx.word_image(&WordSpec::new(vec![r1, r2]).unwrap());
                    assert_eq!(plain.len() as u64, report.image_size, "p={p} r=({r1},{r2})");
                }
            }
        }
    }

    #[test]
    fn surjectivity_suite_small() {
        let rows = verify_surjectivity_suite(7).unwrap();
        for row in &rows {
            assert!(row.pass(), "{row:?}");
        }
        assert!(matches!(verify_surjectivity_suite(37), Err(Error::CapExceeded { .. })));
    }
}
