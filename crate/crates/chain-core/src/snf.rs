//! Smith normal form over the integers.
//!
//! Decomposes `A = U·D·V` with `U`, `V` unimodular and `D` diagonal with a
//! divisibility chain d1 | d2 | ….  The reduction keeps the inverses of `U`
//! and `V` up to date as well, because homology-basis extraction needs them
//! and recomputing an exact integer inverse afterwards would be wasteful.

use crate::matrix::{abs, IntMatrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// The decomposition `A = U·D·V` with unimodular `U`, `V`.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    /// `U⁻¹`, maintained during the reduction.
    pub u_inv: IntMatrix,
    /// `V⁻¹`, maintained during the reduction.
    pub v_inv: IntMatrix,
}

impl SmithDecomposition {
    /// Diagonal entries of `D` (length = min(rows, cols)).
    pub fn diagonal(&self) -> Vec<BigInt> {
        let n = self.d.nrows().min(self.d.ncols());
        (0..n).map(|i| self.d[(i, i)].clone()).collect()
    }

    /// Number of nonzero diagonal entries (= rank of `A`).
    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|v| !v.is_zero()).count()
    }
}

/// Working state: `a = u · b · v` is an invariant of every elementary step.
struct Reduction {
    b: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Reduction {
    fn new(a: &IntMatrix) -> Self {
        Reduction {
            b: a.clone(),
            u: IntMatrix::identity(a.nrows()),
            u_inv: IntMatrix::identity(a.nrows()),
            v: IntMatrix::identity(a.ncols()),
            v_inv: IntMatrix::identity(a.ncols()),
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.b.swap_rows(i, j);
        self.u.swap_cols(i, j);
        self.u_inv.swap_rows(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.b.swap_cols(i, j);
        self.v.swap_rows(i, j);
        self.v_inv.swap_cols(i, j);
    }

    /// row[i] += c·row[j] on `b`; compensate in `u`, `u_inv`.
    fn add_row(&mut self, i: usize, j: usize, c: &BigInt) {
        self.b.add_row_multiple(i, j, c);
        let neg = -c.clone();
        self.u.add_col_multiple(j, i, &neg);
        self.u_inv.add_row_multiple(i, j, c);
    }

    /// col[i] += c·col[j] on `b`; compensate in `v`, `v_inv`.
    fn add_col(&mut self, i: usize, j: usize, c: &BigInt) {
        self.b.add_col_multiple(i, j, c);
        let neg = -c.clone();
        self.v.add_row_multiple(j, i, &neg);
        self.v_inv.add_col_multiple(i, j, c);
    }

    fn negate_row(&mut self, i: usize) {
        self.b.negate_row(i);
        self.u.negate_col(i);
        self.u_inv.negate_row(i);
    }

    /// Smallest-|entry| nonzero position in the trailing submatrix at `k`.
    fn min_pivot(&self, k: usize) -> Option<(usize, usize)> {
        let mut best: Option<((usize, usize), BigInt)> = None;
        for i in k..self.b.nrows() {
            for j in k..self.b.ncols() {
                let v = &self.b[(i, j)];
                if v.is_zero() {
                    continue;
                }
                let a = abs(v);
                match &best {
                    Some((_, cur)) if *cur <= a => {}
                    _ => best = Some(((i, j), a)),
                }
            }
        }
        best.map(|(p, _)| p)
    }
}

/// Compute the Smith normal form of `a`.
pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let mut r = Reduction::new(a);
    let (nr, nc) = (a.nrows(), a.ncols());
    let steps = nr.min(nc);
    for k in 0..steps {
        'pivot: loop {
            let Some((pi, pj)) = r.min_pivot(k) else {
                break 'pivot; // trailing block is zero
            };
            r.swap_rows(k, pi);
            r.swap_cols(k, pj);
            if r.b[(k, k)].is_negative() {
                r.negate_row(k);
            }
            // One elimination pass; remainders force another round with a
            // strictly smaller pivot, so this terminates (Euclid).
            let mut clean = true;
            for i in k + 1..nr {
                if r.b[(i, k)].is_zero() {
                    continue;
                }
                let q = -r.b[(i, k)].div_floor(&r.b[(k, k)]);
                r.add_row(i, k, &q);
                if !r.b[(i, k)].is_zero() {
                    clean = false;
                }
            }
            for j in k + 1..nc {
                if r.b[(k, j)].is_zero() {
                    continue;
                }
                let q = -r.b[(k, j)].div_floor(&r.b[(k, k)]);
                r.add_col(j, k, &q);
                if !r.b[(k, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue 'pivot;
            }
            // Divisibility: fold any non-multiple into row k and re-reduce.
            let d = r.b[(k, k)].clone();
            let mut fixed = true;
            'scan: for i in k + 1..nr {
                for j in k + 1..nc {
                    if !r.b[(i, j)].mod_floor(&d).is_zero() {
                        let one = BigInt::from(1);
                        r.add_row(k, i, &one);
                        fixed = false;
                        break 'scan;
                    }
                }
            }
            if fixed {
                break 'pivot;
            }
        }
    }
    SmithDecomposition {
        u: r.u,
        d: r.b,
        v: r.v,
        u_inv: r.u_inv,
        v_inv: r.v_inv,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn check(a: &IntMatrix) {
        let s = smith_normal_form(a);
        assert_eq!(&s.u.mul(&s.d).mul(&s.v), a, "A = UDV failed");
        assert_eq!(abs(&s.u.determinant()), BigInt::one());
        assert_eq!(abs(&s.v.determinant()), BigInt::one());
        assert_eq!(s.u.mul(&s.u_inv), IntMatrix::identity(a.nrows()));
        assert_eq!(s.v.mul(&s.v_inv), IntMatrix::identity(a.ncols()));
        let diag = s.diagonal();
        for w in diag.windows(2) {
            if !w[1].is_zero() {
                assert!(!w[0].is_zero(), "zero before nonzero on diagonal");
                assert!(w[1].mod_floor(&w[0]).is_zero(), "divisibility chain broken");
            }
        }
        for v in &diag {
            assert!(!v.is_negative(), "negative diagonal entry");
        }
    }

    #[test]
    fn identity_is_fixed() {
        let a = IntMatrix::identity(3);
        let s = smith_normal_form(&a);
        assert_eq!(s.d, a);
        check(&a);
    }

    #[test]
    fn zero_matrix() {
        let a = IntMatrix::zeros(2, 3);
        let s = smith_normal_form(&a);
        assert!(s.d.is_zero());
        check(&a);
    }

    #[test]
    fn two_by_two() {
        // Row/column reduction oracle: [[2,4],[6,8]] has invariant factors 2, 4
        // (gcd of entries is 2, |det| = 16, so d1·d2 = 16 ⇒ (2,4)).
        let a = IntMatrix::from_rows(&[&[2, 4], &[6, 8]]);
        let s = smith_normal_form(&a);
        assert_eq!(s.diagonal(), vec![BigInt::from(2), BigInt::from(4)]);
        check(&a);
    }

    #[test]
    fn known_four_by_four() {
        let a = IntMatrix::from_rows(&[
            &[-6, 111, -36, 6],
            &[5, -672, 210, 74],
            &[0, -255, 81, 24],
            &[-7, 255, -81, -10],
        ]);
        let s = smith_normal_form(&a);
        assert_eq!(
            s.diagonal(),
            vec![
                BigInt::from(1),
                BigInt::from(3),
                BigInt::from(21),
                BigInt::from(0)
            ]
        );
        check(&a);
    }
}
