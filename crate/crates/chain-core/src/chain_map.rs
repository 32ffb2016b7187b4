//! Chain maps between graded complexes and their induced maps on homology.

use crate::complex::{ComplexError, GradedComplex, Ring};
use crate::matrix::IntMatrix;
use crate::snf::smith_normal_form;
use crate::z2::Z2Matrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use std::collections::BTreeMap;

/// A grade-preserving map of complexes, one matrix per grade
/// (rows: target generators, columns: source generators).
#[derive(Clone, Debug)]
pub struct ChainMap {
    pub source: GradedComplex,
    pub target: GradedComplex,
    maps: BTreeMap<i64, IntMatrix>,
}

/// One nonzero entry of Φ·D − D·Φ, reported by `verify_chain_map`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMapViolation {
    pub grade: i64,
    pub row: usize,
    pub col: usize,
    pub value: BigInt,
}

impl ChainMap {
    /// Build a chain map from per-grade matrices; shapes are checked against
    /// the two complexes (missing grades default to zero matrices).
    pub fn new(
        source: GradedComplex,
        target: GradedComplex,
        maps: BTreeMap<i64, IntMatrix>,
    ) -> Result<ChainMap, ComplexError> {
        if source.ring() != target.ring() {
            return Err(ComplexError::RingMismatch);
        }
        for (&g, m) in &maps {
            let want_rows = target.generators_of_grade(g).len();
            let want_cols = source.generators_of_grade(g).len();
            if m.nrows() != want_rows || m.ncols() != want_cols {
                return Err(ComplexError::ShapeMismatch {
                    grade: g,
                    got_rows: m.nrows(),
                    got_cols: m.ncols(),
                    want_rows,
                    want_cols,
                });
            }
        }
        Ok(ChainMap {
            source,
            target,
            maps,
        })
    }

    pub fn identity(complex: &GradedComplex) -> ChainMap {
        let maps = complex
            .grades()
            .map(|g| {
                let n = complex.generators_of_grade(g).len();
                (g, IntMatrix::identity(n))
            })
            .collect();
        ChainMap::new(complex.clone(), complex.clone(), maps).expect("identity shapes")
    }

    /// Φ_g, materialized as a zero matrix when absent.
    pub fn matrix(&self, g: i64) -> IntMatrix {
        match self.maps.get(&g) {
            Some(m) => m.clone(),
            None => IntMatrix::zeros(
                self.target.generators_of_grade(g).len(),
                self.source.generators_of_grade(g).len(),
            ),
        }
    }

    pub fn grades(&self) -> impl Iterator<Item = i64> + '_ {
        self.maps.keys().copied()
    }

    /// Check Φ_{g−1}·D^src_g = D^tgt_g·Φ_g over the ring in every grade.
    pub fn verify(&self) -> Vec<ChainMapViolation> {
        let ring = self.source.ring();
        let mut report = Vec::new();
        let grades: Vec<i64> = self.source.grades().chain(self.target.grades()).collect();
        for g in grades {
            let lhs = self.matrix(g - 1).mul(&self.source.boundary(g));
            let rhs = self.target.boundary(g).mul(&self.matrix(g));
            let diff = lhs.sub(&rhs);
            for i in 0..diff.nrows() {
                for j in 0..diff.ncols() {
                    let v = match ring {
                        Ring::Z => diff[(i, j)].clone(),
                        Ring::Z2 => diff[(i, j)].mod_floor(&BigInt::from(2)),
                    };
                    if !v.is_zero() {
                        report.push(ChainMapViolation {
                            grade: g,
                            row: i,
                            col: j,
                            value: v,
                        });
                    }
                }
            }
        }
        report
    }

    /// Composition `self ∘ inner` (inner applied first).
    pub fn compose(&self, inner: &ChainMap) -> Result<ChainMap, ComplexError> {
        let grades: std::collections::BTreeSet<i64> =
            self.grades().chain(inner.grades()).collect();
        let maps = grades
            .into_iter()
            .map(|g| (g, self.matrix(g).mul(&inner.matrix(g))))
            .collect();
        ChainMap::new(inner.source.clone(), self.target.clone(), maps)
    }

    /// Matrices of the induced map on homology, one per grade, in the
    /// deterministic homology bases of source and target.  Over Z the free
    /// part is used (torsion coordinates are dropped).  Requires the chain
    /// condition; call `verify` first.
    pub fn induced_map_on_homology(&self) -> Result<BTreeMap<i64, IntMatrix>, ComplexError> {
        if !self.verify().is_empty() {
            return Err(ComplexError::ChainConditionFails);
        }
        let grades: std::collections::BTreeSet<i64> =
            self.source.grades().chain(self.target.grades()).collect();
        let mut out = BTreeMap::new();
        match self.source.ring() {
            Ring::Z2 => {
                for g in grades {
                    let bs = HomologyBasisZ2::new(&self.source, g);
                    let bt = HomologyBasisZ2::new(&self.target, g);
                    let phi = Z2Matrix::from_int(&self.matrix(g));
                    let mut m = IntMatrix::zeros(bt.dim(), bs.dim());
                    for j in 0..bs.dim() {
                        let image = phi.mul(&bs.reps.column(j));
                        let coords = bt.coordinates(&image);
                        for i in 0..bt.dim() {
                            if coords.get(i, 0) {
                                m[(i, j)] = BigInt::from(1);
                            }
                        }
                    }
                    out.insert(g, m);
                }
            }
            Ring::Z => {
                for g in grades {
                    let bs = HomologyBasisZ::new(&self.source, g);
                    let bt = HomologyBasisZ::new(&self.target, g);
                    let phi = self.matrix(g);
                    let mut m = IntMatrix::zeros(bt.dim(), bs.dim());
                    for j in 0..bs.dim() {
                        let image = phi.mul_vec(&bs.reps.column(j));
                        let coords = bt.coordinates(&image);
                        for i in 0..bt.dim() {
                            m[(i, j)] = coords[i].clone();
                        }
                    }
                    out.insert(g, m);
                }
            }
        }
        Ok(out)
    }

    /// Rank of the induced map per grade (over Z/2, or the free part over Z).
    pub fn induced_ranks(&self) -> Result<BTreeMap<i64, usize>, ComplexError> {
        let induced = self.induced_map_on_homology()?;
        Ok(induced
            .into_iter()
            .map(|(g, m)| match self.source.ring() {
                Ring::Z2 => (g, Z2Matrix::from_int(&m).rank()),
                Ring::Z => (g, smith_normal_form(&m).rank()),
            })
            .collect())
    }
}

/// Deterministic Z/2 homology basis of one grade: representative cycles
/// chosen by lexicographic pivot order after the boundary columns.
struct HomologyBasisZ2 {
    /// Basis of im D_{g+1} (independent columns in order).
    image: Z2Matrix,
    /// Representative cycles, one column per homology class.
    reps: Z2Matrix,
}

impl HomologyBasisZ2 {
    fn new(complex: &GradedComplex, g: i64) -> HomologyBasisZ2 {
        let d_in = complex.boundary_z2(g);
        let d_above = complex.boundary_z2(g + 1);
        let image = {
            let idx = d_above.independent_columns();
            let mut m = Z2Matrix::zeros(d_above.nrows(), idx.len());
            for (jj, &j) in idx.iter().enumerate() {
                for i in 0..d_above.nrows() {
                    m.set(i, jj, d_above.get(i, j));
                }
            }
            m
        };
        let kernel = d_in.kernel_basis();
        // Keep the kernel columns that enlarge the span past the image.
        let combined = image.hcat(&kernel);
        let picked = combined.independent_columns();
        let extra: Vec<usize> = picked
            .iter()
            .filter(|&&c| c >= image.ncols())
            .map(|&c| c - image.ncols())
            .collect();
        let mut reps = Z2Matrix::zeros(kernel.nrows(), extra.len());
        for (jj, &j) in extra.iter().enumerate() {
            for i in 0..kernel.nrows() {
                reps.set(i, jj, kernel.get(i, j));
            }
        }
        HomologyBasisZ2 { image, reps }
    }

    fn dim(&self) -> usize {
        self.reps.ncols()
    }

    /// Coordinates of a cycle in the homology basis (image part discarded).
    fn coordinates(&self, cycle: &Z2Matrix) -> Z2Matrix {
        let span = self.image.hcat(&self.reps);
        let x = span
            .solve(cycle)
            .expect("cycle must lie in image + representatives");
        let mut coords = Z2Matrix::zeros(self.dim(), 1);
        for i in 0..self.dim() {
            coords.set(i, 0, x.get(self.image.ncols() + i, 0));
        }
        coords
    }
}

/// Free part of integral homology in one grade, with exact integer
/// coordinate extraction through the two Smith decompositions.
struct HomologyBasisZ {
    /// V from SNF of D_g: cycle coordinates are (V·x) at `zero_idx`.
    v: IntMatrix,
    zero_idx: Vec<usize>,
    /// U'⁻¹ from SNF of the image-in-kernel-coordinates matrix.
    u2_inv: IntMatrix,
    free_idx: Vec<usize>,
    /// Chain-level representatives of the free homology basis.
    reps: IntMatrix,
}

impl HomologyBasisZ {
    fn new(complex: &GradedComplex, g: i64) -> HomologyBasisZ {
        let d_in = complex.boundary(g);
        let d_above = complex.boundary(g + 1);
        let n = d_in.ncols();
        let s1 = smith_normal_form(&d_in);
        let min1 = d_in.nrows().min(n);
        let zero_idx: Vec<usize> = (0..n)
            .filter(|&j| j >= min1 || s1.d[(j, j)].is_zero())
            .collect();
        // Kernel basis: columns of V⁻¹ at the zero-diagonal indices.
        let kernel = s1.v_inv.select_columns(&zero_idx);
        // Image of D_{g+1} in kernel coordinates.
        let coords_of = |m: &IntMatrix| s1.v.mul(m).select_rows(&zero_idx);
        let c = coords_of(&d_above);
        let s2 = smith_normal_form(&c);
        let k = zero_idx.len();
        let min2 = c.nrows().min(c.ncols());
        let free_idx: Vec<usize> = (0..k)
            .filter(|&j| j >= min2 || s2.d[(j, j)].is_zero())
            .collect();
        let reps = kernel.mul(&s2.u.select_columns(&free_idx));
        HomologyBasisZ {
            v: s1.v,
            zero_idx,
            u2_inv: s2.u_inv,
            free_idx,
            reps,
        }
    }

    fn dim(&self) -> usize {
        self.free_idx.len()
    }

    /// Coordinates of a cycle (given as a chain vector) in the free basis.
    fn coordinates(&self, cycle: &[BigInt]) -> Vec<BigInt> {
        let full = self.v.mul_vec(cycle);
        let in_kernel: Vec<BigInt> = self.zero_idx.iter().map(|&j| full[j].clone()).collect();
        let h = self.u2_inv.mul_vec(&in_kernel);
        self.free_idx.iter().map(|&j| h[j].clone()).collect()
    }
}
