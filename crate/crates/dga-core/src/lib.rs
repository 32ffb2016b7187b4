//! Free unital noncommutative differential graded algebras over Z/2.
//!
//! A `FreeDGA` is generated by labeled generators with grades taken mod `m`
//! (`m = 0` means Z-graded); the differential is given on generators as a
//! mod-2 sum of words and extended to the algebra by linearity and the
//! Leibniz rule (whose signs vanish over Z/2).  On top of that sit
//! augmentation enumeration and linearized complexes, which hand off to
//! `chain-core` for homology.
//!
//! DGAs are immutable after construction; augmentation enumeration
//! parallelizes over the assignment space behind the `parallel` feature with
//! order-preserving collection, so results are identical with and without it.

pub mod serial;

use chain_core::{GradedComplex, Ring};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum DgaError {
    #[error("duplicate generator label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("differential given for unknown generator `{0}`")]
    DifferentialForUnknown(String),
    #[error("augmentation does not annihilate the differential")]
    InvalidAugmentation,
    #[error("augmentation must vanish on generators of nonzero grade")]
    AugmentationGrading,
    #[error("linearized complex would wrap grades mod {0}; only non-wrapping gradings embed into an integer-graded complex")]
    GradeWrap(u64),
    #[error(transparent)]
    Complex(#[from] chain_core::ComplexError),
}

/// A mod-2 set of words in generator indices; the empty word is the unit 1.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct AlgebraElement {
    words: BTreeSet<Vec<usize>>,
}

impl AlgebraElement {
    pub fn zero() -> AlgebraElement {
        AlgebraElement::default()
    }

    pub fn one() -> AlgebraElement {
        AlgebraElement {
            words: BTreeSet::from([Vec::new()]),
        }
    }

    pub fn generator(i: usize) -> AlgebraElement {
        AlgebraElement {
            words: BTreeSet::from([vec![i]]),
        }
    }

    pub fn from_words<I: IntoIterator<Item = Vec<usize>>>(words: I) -> AlgebraElement {
        let mut e = AlgebraElement::zero();
        for w in words {
            e.toggle(w);
        }
        e
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.words.iter()
    }

    /// Mod-2 insertion: adding a word twice cancels it.
    fn toggle(&mut self, word: Vec<usize>) {
        if !self.words.remove(&word) {
            self.words.insert(word);
        }
    }

    /// Sum over Z/2 (symmetric difference of word sets).
    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        for w in &other.words {
            out.toggle(w.clone());
        }
        out
    }

    /// Noncommutative product (concatenation, distributed).
    pub fn mul(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for a in &self.words {
            for b in &other.words {
                let mut w = a.clone();
                w.extend_from_slice(b);
                out.toggle(w);
            }
        }
        out
    }
}

/// What went wrong for one generator in `verify`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DgaViolation {
    /// A word of ∂x does not have grade |x| − 1 (mod m).
    GradeDrop {
        generator: String,
        word: String,
        word_grade: i64,
        expected: i64,
    },
    /// ∂²x ≠ 0; carries the printed residue.
    NotSquareZero { generator: String, residue: String },
}

/// A unital graded algebra map ε : A → Z/2 (one bit per generator;
/// necessarily 0 on generators of nonzero grade).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Augmentation {
    values: Vec<bool>,
}

impl Augmentation {
    pub fn values(&self) -> &[bool] {
        &self.values
    }

    pub fn value(&self, generator: usize) -> bool {
        self.values[generator]
    }

    /// Multiplicative extension to an element: ε(word) = Π ε(letter),
    /// ε(1) = 1, summed mod 2 over the words.
    pub fn eval(&self, e: &AlgebraElement) -> bool {
        let mut total = false;
        for w in e.words() {
            if w.iter().all(|&i| self.values[i]) {
                total = !total;
            }
        }
        total
    }
}

/// Free unital noncommutative DGA over Z/2.
#[derive(Clone, Debug)]
pub struct FreeDGA {
    labels: Vec<String>,
    grades: Vec<i64>,
    /// Grading modulus; 0 means Z-graded.
    modulus: u64,
    /// ∂ on each generator.
    diffs: Vec<AlgebraElement>,
}

impl FreeDGA {
    /// Build from labeled graded generators and per-generator differentials
    /// (missing differentials default to 0).  ∂² = 0 is *not* assumed here;
    /// call `verify`.
    pub fn build(
        generators: &[(String, i64)],
        modulus: u64,
        differentials: &[(String, AlgebraElement)],
    ) -> Result<FreeDGA, DgaError> {
        let mut index: BTreeMap<&str, usize> = BTreeMap::new();
        for (i, (label, _)) in generators.iter().enumerate() {
            if index.insert(label.as_str(), i).is_some() {
                return Err(DgaError::DuplicateLabel(label.clone()));
            }
        }
        let mut diffs = vec![AlgebraElement::zero(); generators.len()];
        for (label, d) in differentials {
            let &i = index
                .get(label.as_str())
                .ok_or_else(|| DgaError::DifferentialForUnknown(label.clone()))?;
            for w in d.words() {
                for &letter in w {
                    if letter >= generators.len() {
                        return Err(DgaError::UnknownGenerator(format!("#{letter}")));
                    }
                }
            }
            diffs[i] = d.clone();
        }
        let mut dga = FreeDGA {
            labels: generators.iter().map(|(l, _)| l.clone()).collect(),
            grades: generators.iter().map(|(_, g)| *g).collect(),
            modulus,
            diffs,
        };
        dga.grades = dga.grades.iter().map(|&g| dga.reduce_grade(g)).collect();
        Ok(dga)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn generator_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn grade(&self, generator: usize) -> i64 {
        self.grades[generator]
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn generator_differential(&self, generator: usize) -> &AlgebraElement {
        &self.diffs[generator]
    }

    pub fn reduce_grade(&self, g: i64) -> i64 {
        if self.modulus == 0 {
            g
        } else {
            g.rem_euclid(self.modulus as i64)
        }
    }

    /// Grade of a word (sum of letter grades, grade(1) = 0), reduced mod m.
    pub fn word_grade(&self, word: &[usize]) -> i64 {
        self.reduce_grade(word.iter().map(|&i| self.grades[i]).sum())
    }

    /// Leibniz extension of ∂ to an arbitrary element:
    /// ∂(x₁⋯x_k) = Σᵢ x₁⋯x_{i−1}·(∂x_i)·x_{i+1}⋯x_k (signs vanish mod 2).
    pub fn differential(&self, e: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for word in e.words() {
            for i in 0..word.len() {
                for dw in self.diffs[word[i]].words() {
                    let mut w = Vec::with_capacity(word.len() - 1 + dw.len());
                    w.extend_from_slice(&word[..i]);
                    w.extend_from_slice(dw);
                    w.extend_from_slice(&word[i + 1..]);
                    out.toggle(w);
                }
            }
        }
        out
    }

    /// Printable form of an element with generator labels.
    pub fn format_element(&self, e: &AlgebraElement) -> String {
        if e.is_zero() {
            return "0".to_string();
        }
        // Shortlex: shorter words first, then letter order.
        let mut words: Vec<&Vec<usize>> = e.words().collect();
        words.sort_by_key(|w| (w.len(), w.as_slice()));
        let parts: Vec<String> = words
            .iter()
            .map(|w| {
                if w.is_empty() {
                    "1".to_string()
                } else {
                    w.iter()
                        .map(|&i| self.labels[i].as_str())
                        .collect::<Vec<_>>()
                        .join(".")
                }
            })
            .collect();
        parts.join(" + ")
    }

    /// Check the grade-drop invariant and ∂² = 0 on every generator.
    pub fn verify(&self) -> Vec<DgaViolation> {
        let mut report = Vec::new();
        for i in 0..self.labels.len() {
            let expected = self.reduce_grade(self.grades[i] - 1);
            for w in self.diffs[i].words() {
                let wg = self.word_grade(w);
                if wg != expected {
                    report.push(DgaViolation::GradeDrop {
                        generator: self.labels[i].clone(),
                        word: self.format_element(&AlgebraElement::from_words([w.clone()])),
                        word_grade: wg,
                        expected,
                    });
                }
            }
            let dd = self.differential(&self.diffs[i]);
            if !dd.is_zero() {
                report.push(DgaViolation::NotSquareZero {
                    generator: self.labels[i].clone(),
                    residue: self.format_element(&dd),
                });
            }
        }
        report
    }

    /// Exhaustively enumerate augmentations: all 2^(#grade-0 generators)
    /// assignments, filtered by ε(∂x) = 0 for every generator.  Output order
    /// is the ascending binary order of assignments and is identical with
    /// and without the `parallel` feature.
    pub fn augmentations(&self) -> Vec<Augmentation> {
        let grade_zero: Vec<usize> = (0..self.labels.len())
            .filter(|&i| self.grades[i] == 0)
            .collect();
        let n = grade_zero.len();
        assert!(n < 64, "augmentation space too large to enumerate");
        let build = |mask: u64| -> Option<Augmentation> {
            let mut values = vec![false; self.labels.len()];
            for (bit, &g) in grade_zero.iter().enumerate() {
                values[g] = mask >> bit & 1 == 1;
            }
            let aug = Augmentation { values };
            let ok = (0..self.labels.len()).all(|i| !aug.eval(&self.diffs[i]));
            ok.then_some(aug)
        };
        #[cfg(feature = "parallel")]
        {
            use rayon::prelude::*;
            (0u64..1 << n).into_par_iter().filter_map(build).collect()
        }
        #[cfg(not(feature = "parallel"))]
        {
            (0u64..1 << n).filter_map(build).collect()
        }
    }

    /// Is ε a valid augmentation of this dga?
    pub fn check_augmentation(&self, aug: &Augmentation) -> Result<(), DgaError> {
        for i in 0..self.labels.len() {
            if aug.value(i) && self.grades[i] != 0 {
                return Err(DgaError::AugmentationGrading);
            }
        }
        for i in 0..self.labels.len() {
            if aug.eval(&self.diffs[i]) {
                return Err(DgaError::InvalidAugmentation);
            }
        }
        Ok(())
    }

    /// Word-length-1 part of the differential conjugated by the automorphism
    /// x ↦ x + ε(x): the letter x_i of each word of ∂x survives with
    /// coefficient Π_{j≠i} ε(x_j).
    fn linearized_entries(&self, aug: &Augmentation) -> Vec<(String, String, i64)> {
        let mut counts: BTreeMap<(usize, usize), u64> = BTreeMap::new();
        for x in 0..self.labels.len() {
            for word in self.diffs[x].words() {
                for i in 0..word.len() {
                    let others = word
                        .iter()
                        .enumerate()
                        .all(|(j, &letter)| j == i || aug.value(letter));
                    if others {
                        *counts.entry((x, word[i])).or_default() += 1;
                    }
                }
            }
        }
        counts
            .into_iter()
            .filter(|(_, c)| c % 2 == 1)
            .map(|((x, y), _)| (self.labels[x].clone(), self.labels[y].clone(), 1))
            .collect()
    }

    /// The linearized chain complex of ε over Z/2, handed to chain-core.
    /// With a nonzero grading modulus the integer lift uses representatives
    /// 0..m−1 and rejects differentials that wrap from grade 0 to m−1.
    pub fn linearized_complex(&self, aug: &Augmentation) -> Result<GradedComplex, DgaError> {
        self.check_augmentation(aug)?;
        let entries = self.linearized_entries(aug);
        if self.modulus > 0 {
            let idx: BTreeMap<&str, usize> = self
                .labels
                .iter()
                .enumerate()
                .map(|(i, l)| (l.as_str(), i))
                .collect();
            for (src, tgt, _) in &entries {
                let sg = self.grades[idx[src.as_str()]];
                let tg = self.grades[idx[tgt.as_str()]];
                if tg != sg - 1 {
                    return Err(DgaError::GradeWrap(self.modulus));
                }
            }
        }
        let generators: Vec<(String, i64)> = self
            .labels
            .iter()
            .cloned()
            .zip(self.grades.iter().copied())
            .collect();
        Ok(GradedComplex::build(&generators, &entries, Ring::Z2)?)
    }
}

/// Z/2 homology dimensions of a complex per grade, as the coefficient list
/// of a Poincaré polynomial in ascending grade order.
pub fn poincare_polynomial(complex: &GradedComplex) -> Result<Vec<(i64, usize)>, DgaError> {
    let ranks = complex.homology_ranks()?;
    Ok(ranks
        .into_iter()
        .filter(|(_, r)| r.betti > 0)
        .map(|(g, r)| (g, r.betti))
        .collect())
}

/// Homotopy-cardinality normalization of the augmentation count: the number
/// of augmentations times 2^(−k) with k = g₋₁ − g₋₂ + g₋₃ − …, where gᵢ
/// counts generators of grade −i.  An algebraic stabilization in any grade
/// leaves this quantity unchanged, so it matches between stably isomorphic
/// Z-graded algebras; with a finite grading modulus k is zero.
/// Returns (count, k).
pub fn normalized_augmentation_count(dga: &FreeDGA) -> (usize, i64) {
    let count = dga.augmentations().len();
    if dga.modulus() != 0 {
        return (count, 0);
    }
    let mut k = 0i64;
    for i in 0..dga.labels().len() {
        let g = dga.grade(i);
        if g < 0 {
            k += if (-g) % 2 == 1 { 1 } else { -1 };
        }
    }
    (count, k)
}

/// Human-readable polynomial, e.g. `t^-1 + 2 + t` — used for report output
/// and multiset comparisons in fixtures.
pub fn format_polynomial(poly: &[(i64, usize)]) -> String {
    if poly.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (g, c)) in poly.iter().enumerate() {
        if k > 0 {
            out.push_str(" + ");
        }
        match (g, c) {
            (0, c) => {
                let _ = write!(out, "{c}");
            }
            (1, 1) => out.push('t'),
            (1, c) => {
                let _ = write!(out, "{c}t");
            }
            (g, 1) => {
                let _ = write!(out, "t^{g}");
            }
            (g, c) => {
                let _ = write!(out, "{c}t^{g}");
            }
        }
    }
    out
}
