//! Graded chain complexes and their homology.

use crate::matrix::IntMatrix;
use crate::snf::smith_normal_form;
use crate::z2::Z2Matrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use thiserror::Error;

/// Coefficient ring for a complex.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Ring {
    Z2,
    Z,
}

impl Ring {
    pub fn name(self) -> &'static str {
        match self {
            Ring::Z2 => "z2",
            Ring::Z => "z",
        }
    }

    pub fn parse(s: &str) -> Option<Ring> {
        match s {
            "z2" | "Z2" => Some(Ring::Z2),
            "z" | "Z" => Some(Ring::Z),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub label: String,
    pub grade: i64,
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("duplicate generator label `{0}`")]
    DuplicateLabel(String),
    #[error("boundary entry references unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("boundary entry {from} -> {to} drops grade {from_grade} -> {to_grade}, expected a drop of exactly 1")]
    GradeMismatch {
        from: String,
        to: String,
        from_grade: i64,
        to_grade: i64,
    },
    #[error("d² ≠ 0: {0} composite entries do not vanish")]
    DSquaredFails(usize),
    #[error("chain condition Φ·d = d·Φ fails")]
    ChainConditionFails,
    #[error("chain map shape mismatch in grade {grade}: got {got_rows}x{got_cols}, expected {want_rows}x{want_cols}")]
    ShapeMismatch {
        grade: i64,
        got_rows: usize,
        got_cols: usize,
        want_rows: usize,
        want_cols: usize,
    },
    #[error("chain maps must share the coefficient ring of their complexes")]
    RingMismatch,
}

/// One nonzero entry of a composite d∘d, reported by `verify_d_squared`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DSquaredViolation {
    pub grade: i64,
    /// Label of the grade-`grade` source generator.
    pub source: String,
    /// Label of the grade-`grade`−2 target generator with nonzero composite.
    pub target: String,
    pub value: BigInt,
}

/// Homology of one grade: free rank plus torsion divisors (empty over Z/2).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyRank {
    pub betti: usize,
    pub torsion: Vec<BigInt>,
}

/// A finitely generated graded complex with one boundary matrix per grade.
///
/// `boundary(g)` maps grade-`g` generators to grade-`g−1` generators;
/// columns index sources, rows index targets, in generator insertion order.
#[derive(Clone, Debug)]
pub struct GradedComplex {
    generators: Vec<Generator>,
    ring: Ring,
    /// Generator indices per grade, in insertion order.
    by_grade: BTreeMap<i64, Vec<usize>>,
    /// D_g for every grade g that has generators.
    boundaries: BTreeMap<i64, IntMatrix>,
}

impl GradedComplex {
    /// Assemble a complex from labeled generators and sparse boundary
    /// entries `(source, target, coefficient)`.  Does not check d² = 0.
    pub fn build(
        generators: &[(String, i64)],
        entries: &[(String, String, i64)],
        ring: Ring,
    ) -> Result<GradedComplex, ComplexError> {
        let mut index: BTreeMap<&str, usize> = BTreeMap::new();
        for (i, (label, _)) in generators.iter().enumerate() {
            if index.insert(label.as_str(), i).is_some() {
                return Err(ComplexError::DuplicateLabel(label.clone()));
            }
        }
        let gens: Vec<Generator> = generators
            .iter()
            .map(|(label, grade)| Generator {
                label: label.clone(),
                grade: *grade,
            })
            .collect();
        let mut by_grade: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for (i, g) in gens.iter().enumerate() {
            by_grade.entry(g.grade).or_default().push(i);
        }
        // position of generator i within its grade block
        let mut pos = vec![0usize; gens.len()];
        for block in by_grade.values() {
            for (p, &i) in block.iter().enumerate() {
                pos[i] = p;
            }
        }
        let mut boundaries: BTreeMap<i64, IntMatrix> = BTreeMap::new();
        for (&g, block) in &by_grade {
            let below = by_grade.get(&(g - 1)).map_or(0, |b| b.len());
            boundaries.insert(g, IntMatrix::zeros(below, block.len()));
        }
        for (src, tgt, coeff) in entries {
            let &si = index
                .get(src.as_str())
                .ok_or_else(|| ComplexError::UnknownGenerator(src.clone()))?;
            let &ti = index
                .get(tgt.as_str())
                .ok_or_else(|| ComplexError::UnknownGenerator(tgt.clone()))?;
            let (sg, tg) = (gens[si].grade, gens[ti].grade);
            if tg != sg - 1 {
                return Err(ComplexError::GradeMismatch {
                    from: src.clone(),
                    to: tgt.clone(),
                    from_grade: sg,
                    to_grade: tg,
                });
            }
            let m = boundaries.get_mut(&sg).expect("grade present");
            let c = match ring {
                Ring::Z => BigInt::from(*coeff),
                Ring::Z2 => BigInt::from(coeff.rem_euclid(2)),
            };
            m[(pos[ti], pos[si])] += c;
        }
        if ring == Ring::Z2 {
            for m in boundaries.values_mut() {
                for i in 0..m.nrows() {
                    for j in 0..m.ncols() {
                        let v = m[(i, j)].mod_floor(&BigInt::from(2));
                        m[(i, j)] = v;
                    }
                }
            }
        }
        Ok(GradedComplex {
            generators: gens,
            ring,
            by_grade,
            boundaries,
        })
    }

    pub fn empty(ring: Ring) -> GradedComplex {
        GradedComplex {
            generators: Vec::new(),
            ring,
            by_grade: BTreeMap::new(),
            boundaries: BTreeMap::new(),
        }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn grades(&self) -> impl Iterator<Item = i64> + '_ {
        self.by_grade.keys().copied()
    }

    /// Generator indices of grade `g`, in insertion order.
    pub fn generators_of_grade(&self, g: i64) -> &[usize] {
        self.by_grade.get(&g).map_or(&[], |v| v.as_slice())
    }

    pub fn labels_of_grade(&self, g: i64) -> Vec<&str> {
        self.generators_of_grade(g)
            .iter()
            .map(|&i| self.generators[i].label.as_str())
            .collect()
    }

    /// Boundary matrix D_g (grade g → g−1); zero-size matrix if no
    /// generators in grade g.
    pub fn boundary(&self, g: i64) -> IntMatrix {
        match self.boundaries.get(&g) {
            Some(m) => m.clone(),
            None => IntMatrix::zeros(
                self.generators_of_grade(g - 1).len(),
                self.generators_of_grade(g).len(),
            ),
        }
    }

    /// Boundary matrix reduced mod 2.
    pub fn boundary_z2(&self, g: i64) -> Z2Matrix {
        Z2Matrix::from_int(&self.boundary(g))
    }

    /// Check D_{g−1}·D_g = 0 over the ring for every grade; empty report
    /// means the complex is honest.
    pub fn verify_d_squared(&self) -> Vec<DSquaredViolation> {
        let mut report = Vec::new();
        for &g in self.by_grade.keys() {
            let dd = self.boundary(g - 1).mul(&self.boundary(g));
            for i in 0..dd.nrows() {
                for j in 0..dd.ncols() {
                    let v = match self.ring {
                        Ring::Z => dd[(i, j)].clone(),
                        Ring::Z2 => dd[(i, j)].mod_floor(&BigInt::from(2)),
                    };
                    if !v.is_zero() {
                        report.push(DSquaredViolation {
                            grade: g,
                            source: self.generators[self.generators_of_grade(g)[j]]
                                .label
                                .clone(),
                            target: self.generators
                                [self.generators_of_grade(g - 2)[i]]
                            .label
                            .clone(),
                            value: v,
                        });
                    }
                }
            }
        }
        report
    }

    /// Per-grade homology: Z/2 dimensions, or betti numbers plus torsion
    /// divisors over Z (via Smith normal form).  Requires d² = 0.
    pub fn homology_ranks(&self) -> Result<BTreeMap<i64, HomologyRank>, ComplexError> {
        let violations = self.verify_d_squared();
        if !violations.is_empty() {
            return Err(ComplexError::DSquaredFails(violations.len()));
        }
        let mut out = BTreeMap::new();
        for &g in self.by_grade.keys() {
            let n = self.generators_of_grade(g).len();
            match self.ring {
                Ring::Z2 => {
                    let rank_in = self.boundary_z2(g).rank();
                    let rank_above = self.boundary_z2(g + 1).rank();
                    out.insert(
                        g,
                        HomologyRank {
                            betti: n - rank_in - rank_above,
                            torsion: Vec::new(),
                        },
                    );
                }
                Ring::Z => {
                    let snf_in = smith_normal_form(&self.boundary(g));
                    let snf_above = smith_normal_form(&self.boundary(g + 1));
                    let torsion: Vec<BigInt> = snf_above
                        .diagonal()
                        .into_iter()
                        .filter(|d| !d.is_zero() && *d != BigInt::one())
                        .collect();
                    out.insert(
                        g,
                        HomologyRank {
                            betti: n - snf_in.rank() - snf_above.rank(),
                            torsion,
                        },
                    );
                }
            }
        }
        Ok(out)
    }

    /// Σ (−1)^g · #generators of grade g.  Equals the alternating sum of
    /// betti numbers whenever d² = 0.
    pub fn euler_characteristic(&self) -> i64 {
        self.by_grade
            .iter()
            .map(|(&g, block)| {
                let sign = if g.rem_euclid(2) == 0 { 1 } else { -1 };
                sign * block.len() as i64
            })
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gens(list: &[(&str, i64)]) -> Vec<(String, i64)> {
        list.iter().map(|(l, g)| (l.to_string(), *g)).collect()
    }

    fn entries(list: &[(&str, &str, i64)]) -> Vec<(String, String, i64)> {
        list.iter()
            .map(|(s, t, c)| (s.to_string(), t.to_string(), *c))
            .collect()
    }

    #[test]
    fn two_point_complex_has_sphere_homology() {
        let c = GradedComplex::build(&gens(&[("N", 2), ("S", 0)]), &[], Ring::Z2).unwrap();
        assert!(c.verify_d_squared().is_empty());
        let h = c.homology_ranks().unwrap();
        assert_eq!(h[&0].betti, 1);
        assert_eq!(h[&2].betti, 1);
        assert_eq!(c.euler_characteristic(), 2);
    }

    #[test]
    fn empty_complex() {
        let c = GradedComplex::build(&[], &[], Ring::Z).unwrap();
        assert!(c.verify_d_squared().is_empty());
        assert!(c.homology_ranks().unwrap().is_empty());
        assert_eq!(c.euler_characteristic(), 0);
    }

    #[test]
    fn doubled_boundary_gives_torsion() {
        let c = GradedComplex::build(
            &gens(&[("a", 1), ("b", 0)]),
            &entries(&[("a", "b", 2)]),
            Ring::Z,
        )
        .unwrap();
        let h = c.homology_ranks().unwrap();
        assert_eq!(h[&0].betti, 0);
        assert_eq!(h[&0].torsion, vec![BigInt::from(2)]);
        assert_eq!(h[&1].betti, 0);
    }

    #[test]
    fn d_squared_violation_is_reported() {
        let c = GradedComplex::build(
            &gens(&[("a", 2), ("b", 1), ("c", 0)]),
            &entries(&[("a", "b", 1), ("b", "c", 1)]),
            Ring::Z,
        )
        .unwrap();
        let report = c.verify_d_squared();
        assert_eq!(report.len(), 1);
        assert_eq!(report[0].source, "a");
        assert_eq!(report[0].target, "c");
        assert!(c.homology_ranks().is_err());
    }

    #[test]
    fn grade_mismatch_rejected() {
        let err = GradedComplex::build(
            &gens(&[("a", 2), ("b", 0)]),
            &entries(&[("a", "b", 1)]),
            Ring::Z,
        )
        .unwrap_err();
        assert!(matches!(err, ComplexError::GradeMismatch { .. }));
    }

    #[test]
    fn duplicate_label_rejected() {
        let err = GradedComplex::build(&gens(&[("a", 0), ("a", 1)]), &[], Ring::Z).unwrap_err();
        assert_eq!(err, ComplexError::DuplicateLabel("a".to_string()));
    }
}
