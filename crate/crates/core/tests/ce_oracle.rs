//! Exact vertex enumeration of the correlated-equilibrium polytope, used to
//! freeze the LP fixtures in `acceptance.rs`.
//!
//! Payoffs are rebuilt from the utility table in rationals, the cone
//! `{p ≥ 0, obedience ≥ 0}` is enumerated by double description over
//! primitive integer rays, and each ray is scaled onto `Σp = 1`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

type Q = BigRational;
/// `(numerator, denominator)`.
type Frac = (i64, i64);

fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// `(u_A, u_B)` for joint type bits and joint action bits.
fn utility(eps: &Q, xa: bool, xb: bool, ya: bool, yb: bool) -> (Q, Q) {
    let zero = || (Q::zero(), Q::zero());
    if !(xa && xb) {
        match (ya, yb) {
            (false, false) => (Q::one() - eps, q(1, 2) + eps),
            (true, true) => (q(1, 2), Q::one()),
            _ => zero(),
        }
    } else {
        match (ya, yb) {
            (false, true) => (q(3, 4), q(3, 4)),
            (true, false) => (q(3, 4) - eps, q(3, 4) + eps),
            _ => zero(),
        }
    }
}

fn act(strategy: usize, x: bool) -> bool {
    match strategy {
        0 => false,
        1 => true,
        2 => x,
        _ => !x,
    }
}

/// Pure-profile payoffs `[i][j] = (⟨u_A⟩, ⟨u_B⟩)`.
fn payoffs(eps: &Q) -> Vec<Vec<(Q, Q)>> {
    (0..4)
        .map(|i| {
            (0..4)
                .map(|j| {
                    let mut acc = (Q::zero(), Q::zero());
                    for xa in [false, true] {
                        for xb in [false, true] {
                            let (a, b) = utility(eps, xa, xb, act(i, xa), act(j, xb));
                            acc.0 += a * q(1, 4);
                            acc.1 += b * q(1, 4);
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// Rows `a` with `a·p ≥ 0`, scaled to integers: nonnegativity first, then
/// obedience.
fn constraint_rows(m: &[Vec<(Q, Q)>]) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for k in 0..16 {
        let mut r = vec![Q::zero(); 16];
        r[k] = Q::one();
        rows.push(r);
    }
    for i in 0..4 {
        for k in (0..4).filter(|&k| k != i) {
            let mut r = vec![Q::zero(); 16];
            for j in 0..4 {
                r[4 * i + j] = &m[i][j].0 - &m[k][j].0;
            }
            rows.push(r);
        }
    }
    for j in 0..4 {
        for k in (0..4).filter(|&k| k != j) {
            let mut r = vec![Q::zero(); 16];
            for i in 0..4 {
                r[4 * i + j] = &m[i][j].1 - &m[i][k].1;
            }
            rows.push(r);
        }
    }
    rows.into_iter()
        .map(|r| {
            let lcm = r.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
            r.iter()
                .map(|v| (v * Q::from_integer(lcm.clone())).to_integer())
                .collect()
        })
        .collect()
}

#[derive(Clone)]
struct Ray {
    v: Vec<BigInt>,
    tight: u64,
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        v.iter_mut().for_each(|x| *x /= &g);
    }
    v
}

/// Extreme rays of `{p : row·p ≥ 0 for all rows}`, where the first 16 rows
/// are the coordinate axes.
fn extreme_rays(rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let d = 16;
    let tight_of = |v: &[BigInt], upto: usize| -> u64 {
        (0..upto)
            .filter(|&c| dot(&rows[c], v).is_zero())
            .fold(0, |m, c| m | 1 << c)
    };
    let mut rays: Vec<Ray> = (0..d)
        .map(|k| {
            let mut v = vec![BigInt::zero(); d];
            v[k] = BigInt::one();
            let tight = tight_of(&v, d);
            Ray { v, tight }
        })
        .collect();

    for (c, row) in rows.iter().enumerate().skip(d) {
        let values: Vec<BigInt> = rays.iter().map(|r| dot(row, &r.v)).collect();
        let mut next: Vec<Ray> = Vec::new();
        let (mut pos, mut neg) = (Vec::new(), Vec::new());
        for (r, val) in rays.iter().zip(&values) {
            if val.is_positive() {
                pos.push((r, val));
                next.push(r.clone());
            } else if val.is_negative() {
                neg.push((r, val));
            } else {
                next.push(Ray {
                    v: r.v.clone(),
                    tight: r.tight | 1 << c,
                });
            }
        }
        for (rp, vp) in &pos {
            for (rn, vn) in &neg {
                let common = rp.tight & rn.tight;
                if (common.count_ones() as usize) < d - 2 {
                    continue;
                }
                let adjacent = rays.iter().all(|o| {
                    std::ptr::eq(o, *rp) || std::ptr::eq(o, *rn) || o.tight & common != common
                });
                if !adjacent {
                    continue;
                }
                let v: Vec<BigInt> =
                    rp.v.iter()
                        .zip(&rn.v)
                        .map(|(a, b)| -(*vn) * a + *vp * b)
                        .collect();
                let v = primitive(v);
                next.push(Ray {
                    tight: common | 1 << c,
                    v,
                });
            }
        }
        rays = next;
    }
    rays.into_iter().map(|r| r.v).collect()
}

/// Vertices of the CE polytope, each normalized to `Σp = 1`.
fn ce_vertices(eps: &Q) -> Vec<Vec<Q>> {
    let rows = constraint_rows(&payoffs(eps));
    extreme_rays(&rows)
        .into_iter()
        .map(|v| {
            let s: BigInt = v.iter().sum();
            v.into_iter().map(|x| Q::new(x, s.clone())).collect()
        })
        .collect()
}

fn max_over(vertices: &[Vec<Q>], weights: &[Q]) -> Q {
    vertices
        .iter()
        .map(|p| p.iter().zip(weights).map(|(a, b)| a * b).sum::<Q>())
        .max()
        .expect("nonempty polytope")
}

/// Frozen `(ε, max ⟨u_A⟩, max ⟨u_B⟩)` over correlated equilibria; the same
/// constants appear in `acceptance.rs`.
const FIXTURES: [(Frac, Frac, Frac); 5] = [
    ((0, 1), (91, 124), (91, 124)),
    ((1, 4), (9, 16), (3, 4)),
    ((2, 5), (2973, 6128), (4863, 6208)),
    ((1, 2), (7, 16), (13, 16)),
    ((3, 4), (8, 19), (39, 40)),
];

#[test]
fn vertex_enumeration_reproduces_frozen_maxima() {
    let start = std::time::Instant::now();
    for ((en, ed), (an, ad), (bn, bd)) in FIXTURES {
        let eps = q(en, ed);
        let m = payoffs(&eps);
        let vertices = ce_vertices(&eps);
        for p in &vertices {
            assert!(p.iter().all(|v| !v.is_negative()));
        }
        let alice: Vec<Q> = (0..16).map(|k| m[k / 4][k % 4].0.clone()).collect();
        let bob: Vec<Q> = (0..16).map(|k| m[k / 4][k % 4].1.clone()).collect();
        assert_eq!(max_over(&vertices, &alice), q(an, ad), "Alice at ε = {eps}");
        assert_eq!(max_over(&vertices, &bob), q(bn, bd), "Bob at ε = {eps}");
    }
    assert!(
        start.elapsed().as_secs() < 120,
        "oracle took {:?}",
        start.elapsed()
    );
}

#[test]
fn vertex_enumeration_finds_s3_recommendation() {
    let vertices = ce_vertices(&q(2, 5));
    let s3: Vec<Q> = (0..16)
        .map(|k| if k % 4 == 2 { Q::one() } else { Q::zero() })
        .collect();
    assert_eq!(max_over(&vertices, &s3), q(380, 383));
}

#[test]
fn payoffs_match_hand_entries() {
    let m = payoffs(&q(0, 1));
    assert_eq!(m[0][2], (q(11, 16), q(7, 16)));
    assert_eq!(m[3][1], (q(7, 16), q(11, 16)));
    // Alice always 1, Bob always 0
    let e = q(1, 5);
    let m = payoffs(&e);
    assert_eq!(m[1][0], (q(3, 16) - &e / q(4, 1), q(3, 16) + &e / q(4, 1)));
}
