//! Second-order truncated forward-mode jets.
//!
//! A `Jet2` carries a value, the three first partials, and the six
//! independent second partials with respect to (x, y, z).  Propagating jets
//! through the expression tree yields gradients and Hessians exact to
//! machine precision — no finite differencing, no expression swell.

/// Packed symmetric index order for the Hessian: xx, xy, xz, yy, yz, zz.
const PAIRS: [(usize, usize); 6] = [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet2 {
    pub val: f64,
    pub grad: [f64; 3],
    /// Second partials in the packed order xx, xy, xz, yy, yz, zz.
    pub hess: [f64; 6],
}

impl Jet2 {
    pub fn constant(v: f64) -> Jet2 {
        Jet2 {
            val: v,
            grad: [0.0; 3],
            hess: [0.0; 6],
        }
    }

    /// The coordinate variable `axis` (0 = x, 1 = y, 2 = z) seeded at `v`.
    pub fn variable(axis: usize, v: f64) -> Jet2 {
        let mut grad = [0.0; 3];
        grad[axis] = 1.0;
        Jet2 {
            val: v,
            grad,
            hess: [0.0; 6],
        }
    }

    /// Unpack the Hessian into a full symmetric 3×3 array.
    pub fn hessian_matrix(&self) -> [[f64; 3]; 3] {
        let mut m = [[0.0; 3]; 3];
        for (k, &(i, j)) in PAIRS.iter().enumerate() {
            m[i][j] = self.hess[k];
            m[j][i] = self.hess[k];
        }
        m
    }

    pub fn add(&self, o: &Jet2) -> Jet2 {
        Jet2 {
            val: self.val + o.val,
            grad: std::array::from_fn(|i| self.grad[i] + o.grad[i]),
            hess: std::array::from_fn(|k| self.hess[k] + o.hess[k]),
        }
    }

    pub fn sub(&self, o: &Jet2) -> Jet2 {
        Jet2 {
            val: self.val - o.val,
            grad: std::array::from_fn(|i| self.grad[i] - o.grad[i]),
            hess: std::array::from_fn(|k| self.hess[k] - o.hess[k]),
        }
    }

    pub fn neg(&self) -> Jet2 {
        Jet2 {
            val: -self.val,
            grad: std::array::from_fn(|i| -self.grad[i]),
            hess: std::array::from_fn(|k| -self.hess[k]),
        }
    }

    pub fn mul(&self, o: &Jet2) -> Jet2 {
        Jet2 {
            val: self.val * o.val,
            grad: std::array::from_fn(|i| self.grad[i] * o.val + self.val * o.grad[i]),
            hess: std::array::from_fn(|k| {
                let (i, j) = PAIRS[k];
                self.hess[k] * o.val
                    + self.grad[i] * o.grad[j]
                    + self.grad[j] * o.grad[i]
                    + self.val * o.hess[k]
            }),
        }
    }

    pub fn div(&self, o: &Jet2) -> Jet2 {
        // u/v = u · v⁻¹ with the reciprocal chain rule.
        let inv = o.chain(1.0 / o.val, -1.0 / (o.val * o.val), 2.0 / (o.val * o.val * o.val));
        self.mul(&inv)
    }

    /// Chain rule for a scalar function with value `f`, derivative `df`, and
    /// second derivative `ddf` at `self.val`.
    pub fn chain(&self, f: f64, df: f64, ddf: f64) -> Jet2 {
        Jet2 {
            val: f,
            grad: std::array::from_fn(|i| df * self.grad[i]),
            hess: std::array::from_fn(|k| {
                let (i, j) = PAIRS[k];
                ddf * self.grad[i] * self.grad[j] + df * self.hess[k]
            }),
        }
    }

    /// `self` raised to a constant exponent.
    pub fn powf(&self, c: f64) -> Jet2 {
        let u = self.val;
        self.chain(u.powf(c), c * u.powf(c - 1.0), c * (c - 1.0) * u.powf(c - 2.0))
    }

    pub fn is_finite(&self) -> bool {
        self.val.is_finite()
            && self.grad.iter().all(|v| v.is_finite())
            && self.hess.iter().all(|v| v.is_finite())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_rule() {
        // d²(xy)/dxdy = 1 at any point
        let x = Jet2::variable(0, 3.0);
        let y = Jet2::variable(1, 5.0);
        let p = x.mul(&y);
        assert_eq!(p.val, 15.0);
        assert_eq!(p.grad, [5.0, 3.0, 0.0]);
        assert_eq!(p.hess, [0.0, 1.0, 0.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn square_has_constant_second_derivative() {
        let x = Jet2::variable(0, 4.0);
        let s = x.powf(2.0);
        assert_eq!(s.val, 16.0);
        assert_eq!(s.grad[0], 8.0);
        assert_eq!(s.hess[0], 2.0);
    }

    #[test]
    fn reciprocal() {
        let x = Jet2::variable(0, 2.0);
        let one = Jet2::constant(1.0);
        let r = one.div(&x);
        assert!((r.val - 0.5).abs() < 1e-15);
        assert!((r.grad[0] + 0.25).abs() < 1e-15);
        assert!((r.hess[0] - 0.25).abs() < 1e-15);
    }
}
