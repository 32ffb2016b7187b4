//! Derivative oracle: gradients and Hessians from the jet evaluator must
//! agree with central finite differences (step 1e−5) to relative error
//! ≤ 1e−6 at 100 random non-singular points per bundled expression.

use fieldexpr::ScalarField;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const STEP: f64 = 1e-5;
const REL_TOL: f64 = 1e-6;

/// The expressions bundled as fixtures across the workspace.
const FIXTURES: &[&str] = &[
    "x^2 + y^2 + z^2 - 1",
    "z",
    "(sqrt(x^2+y^2)-2)^2 + z^2 - 1",
    "z + 0.05*y",
    "z + 0.05*x",
    "(((x-1)^2+y^2)*((x+1)^2+y^2) - 1)^2 + z^2 - 0.16",
    "z + 0.05*x + 0.03*y",
    "z + 0.04*x + 0.03*y",
    "z + 0.1*x",
    "sin(x)*y",
    "-x^2+y^2",
    "sin(x)*cos(y)*exp(z/4)",
    "tanh(x) + cosh(y/2) - sinh(z/3)",
    "log(2 + x^2) / (1 + y^2) + sqrt(1 + z^2)",
];

fn fd_gradient(f: &ScalarField, p: [f64; 3]) -> Option<[f64; 3]> {
    let mut g = [0.0; 3];
    for a in 0..3 {
        let mut hi = p;
        let mut lo = p;
        hi[a] += STEP;
        lo[a] -= STEP;
        g[a] = (f.eval(hi).ok()? - f.eval(lo).ok()?) / (2.0 * STEP);
    }
    Some(g)
}

fn fd_hessian(f: &ScalarField, p: [f64; 3]) -> Option<[[f64; 3]; 3]> {
    // Central differences of the exact gradient keeps the oracle at O(h²)
    // without a second layer of subtractive cancellation.
    let mut h = [[0.0; 3]; 3];
    for a in 0..3 {
        let mut hi = p;
        let mut lo = p;
        hi[a] += STEP;
        lo[a] -= STEP;
        let ghi = f.gradient(hi).ok()?;
        let glo = f.gradient(lo).ok()?;
        for b in 0..3 {
            h[b][a] = (ghi[b] - glo[b]) / (2.0 * STEP);
        }
    }
    Some(h)
}

fn close(exact: f64, approx: f64, scale: f64) -> bool {
    // Relative to the magnitude of the quantity, with an absolute floor so
    // exact zeros don't demand impossible finite-difference accuracy.
    let denom = exact.abs().max(scale).max(1.0);
    (exact - approx).abs() / denom <= REL_TOL
}

#[test]
fn jets_match_central_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xfd_0001);
    for src in FIXTURES {
        let f = ScalarField::parse(src).expect("fixture parses");
        let mut tested = 0;
        while tested < 100 {
            let p = [
                rng.gen_range(-2.0..2.0),
                rng.gen_range(-2.0..2.0),
                rng.gen_range(-2.0..2.0),
            ];
            // Skip points too close to the sqrt(x²+y²) axis singularity.
            if p[0] * p[0] + p[1] * p[1] < 0.1 {
                continue;
            }
            let Some(fg) = fd_gradient(&f, p) else {
                continue;
            };
            let Some(fh) = fd_hessian(&f, p) else {
                continue;
            };
            let g = f.gradient(p).unwrap();
            let h = f.hessian(p).unwrap();
            let gscale = g.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            let hscale = h
                .iter()
                .flatten()
                .fold(0.0f64, |m, v| m.max(v.abs()));
            for a in 0..3 {
                assert!(
                    close(g[a], fg[a], gscale),
                    "{src}: grad[{a}] exact {} vs fd {} at {p:?}",
                    g[a],
                    fg[a]
                );
                for b in 0..3 {
                    assert!(
                        close(h[a][b], fh[a][b], hscale),
                        "{src}: hess[{a}][{b}] exact {} vs fd {} at {p:?}",
                        h[a][b],
                        fh[a][b]
                    );
                }
            }
            // Hessian symmetric by construction.
            for a in 0..3 {
                for b in 0..3 {
                    assert_eq!(h[a][b], h[b][a]);
                }
            }
            tested += 1;
        }
    }
}
