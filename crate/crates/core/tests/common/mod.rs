//! Randomized suites shared by the property tests and the acceptance run.
#![allow(dead_code)]

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

use zariski_core::afield::{ratio, Field, Quad, Rational};
use zariski_core::fpgroup::{smith_normal_form, IntegerMatrix};
use zariski_core::ideal::{groebner_basis, MonomialOrder, ProjectivePoint};
use zariski_core::plane::line_intersection_multiplicity;
use zariski_core::poly::{gcd_poly, squarefree_part, vars_of, Monomial, MultiPoly};
use zariski_core::rng::Seeded;
use zariski_core::IntersectionMultiplicity;

pub const CASES: u32 = 200;

/// Deterministic runner with `CASES` cases and no failure persistence.
pub fn runner() -> TestRunner {
    let config = Config { cases: CASES, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

pub fn run<S>(strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String>
where
    S: Strategy,
    S::Value: std::fmt::Debug,
{
    runner().run(&strategy, test).map_err(|e| e.to_string())
}

pub fn fields() -> [Field; 3] {
    [Field::rationals(), Field::eisenstein(), Field::gaussian()]
}

pub fn rational() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=6).prop_map(|(a, b)| ratio(a, b))
}

pub fn quad() -> impl Strategy<Value = Quad> {
    (rational(), rational()).prop_map(|(a, b)| Quad::new(a, b))
}

/// Field element in `field`: the theta coordinate is dropped over Q.
pub fn in_field(x: Quad, field: &Field) -> Quad {
    if field.is_rational() {
        Quad::from_rational(x.a0)
    } else {
        x
    }
}

/// Exponent vector of total degree `d` in `n` variables.
pub fn random_exponents(rng: &mut Seeded, n: usize, d: u32) -> Vec<u32> {
    let mut e = vec![0u32; n];
    let start = rng.int(0, n as i64 - 1) as usize;
    let mut left = d;
    for k in 0..n - 1 {
        let take = rng.int(0, left as i64) as u32;
        e[(start + k) % n] = take;
        left -= take;
    }
    e[(start + n - 1) % n] = left;
    e
}

/// Polynomial with up to `terms` integer terms; homogeneous of degree `d` when given.
pub fn random_poly(rng: &mut Seeded, like: &MultiPoly, max_deg: u32, terms: usize, homogeneous: Option<u32>) -> MultiPoly {
    let n = like.nvars();
    loop {
        let mut p = like.zero_like();
        for _ in 0..terms {
            let d = homogeneous.unwrap_or_else(|| rng.int(0, max_deg as i64) as u32);
            let e = random_exponents(rng, n, d);
            p.add_term(Monomial(e), Quad::from_int(rng.nonzero_int(5)));
        }
        if !p.is_zero() {
            return p;
        }
    }
}

pub fn ring(n: usize, field: &Field) -> MultiPoly {
    let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let vars: Arc<[String]> = names.into();
    MultiPoly::zero(vars, field.clone())
}

fn companion_product(x: &Quad, y: &Quad, field: &Field) -> Quad {
    // a0*I + a1*C with C the companion matrix of theta^2 + b*theta + c;
    // the first column of the product is the coordinate vector.
    let (b, c) = (&field.b, &field.c);
    let mat = |q: &Quad| [[q.a0.clone(), -(&q.a1 * c)], [q.a1.clone(), &q.a0 - &q.a1 * b]];
    let (mx, my) = (mat(x), mat(y));
    let a0 = &mx[0][0] * &my[0][0] + &mx[0][1] * &my[1][0];
    let a1 = &mx[1][0] * &my[0][0] + &mx[1][1] * &my[1][0];
    Quad::new(a0, a1)
}

fn canonical(r: &Rational) -> bool {
    r.numer().gcd(r.denom()).is_one() && r.denom().is_positive()
}

pub fn field_axioms() -> Result<(), String> {
    run((0usize..3, quad(), quad(), quad()), |(k, x, y, z)| {
        let field = &fields()[k];
        let (x, y, z) = (in_field(x, field), in_field(y, field), in_field(z, field));
        let m = |a: &Quad, b: &Quad| a.mul(b, field);
        prop_assert_eq!(x.add(&y), y.add(&x));
        prop_assert_eq!(x.add(&y).add(&z), x.add(&y.add(&z)));
        prop_assert_eq!(m(&x, &y), m(&y, &x));
        prop_assert_eq!(m(&m(&x, &y), &z), m(&x, &m(&y, &z)));
        prop_assert_eq!(m(&x, &y.add(&z)), m(&x, &y).add(&m(&x, &z)));
        prop_assert!(x.add(&x.neg()).is_zero());
        prop_assert_eq!(m(&x, &Quad::one()), x.clone());
        prop_assert_eq!(m(&x, &y), companion_product(&x, &y, field));
        if !x.is_zero() {
            let inv = x.inv(field).map_err(|e| TestCaseError::fail(e.to_string()))?;
            prop_assert!(m(&x, &inv).is_one());
        } else {
            prop_assert!(x.inv(field).is_err());
        }
        let norm = |q: &Quad| &q.a0 * &q.a0 - &q.a0 * &q.a1 * &field.b + &q.a1 * &q.a1 * &field.c;
        prop_assert_eq!(m(&x, &y).norm(field), norm(&x) * norm(&y));
        let p = m(&x, &y.add(&z));
        prop_assert!(canonical(&p.a0) && canonical(&p.a1));
        Ok(())
    })
}

pub fn euler_relation() -> Result<(), String> {
    run((any::<u64>(), 0usize..3), |(seed, k)| {
        let mut rng = Seeded::new(seed);
        let field = &fields()[k];
        let n = rng.int(2, 4) as usize;
        let d = rng.int(1, 5) as u32;
        let terms = rng.int(1, 6) as usize;
        let like = ring(n, field);
        let mut f = random_poly(&mut rng, &like, d, terms, Some(d));
        if !field.is_rational() {
            f = f.scale(&Quad::new(ratio(1, 1), ratio(rng.int(-3, 3), 1)));
        }
        let lhs = (0..n).fold(like.zero_like(), |acc, i| &acc + &(&like.var_like(i) * &f.partial_derivative(i)));
        prop_assert_eq!(lhs, f.scale(&Quad::from_int(d as i64)));
        Ok(())
    })
}

/// Distinct irreducible factors: affine linear forms with pairwise independent
/// coefficient vectors, plus a nondegenerate conic (x0^2 - 2 in one variable).
fn factor_pool(rng: &mut Seeded, like: &MultiPoly) -> Vec<MultiPoly> {
    let n = like.nvars();
    let mut vecs: Vec<Vec<i64>> = Vec::new();
    while vecs.len() < 3 {
        let mut v: Vec<i64> = (0..=n).map(|_| rng.int(-3, 3)).collect();
        if v[1..].iter().all(|&c| c == 0) {
            v[1 + rng.int(0, n as i64 - 1) as usize] = 1;
        }
        let proportional = vecs.iter().any(|w| {
            (0..=n).all(|i| (0..=n).all(|j| v[i] * w[j] == v[j] * w[i]))
        });
        if !proportional {
            vecs.push(v);
        }
    }
    let mut pool: Vec<MultiPoly> = vecs
        .iter()
        .map(|v| {
            let mut p = like.constant_like(Quad::from_int(v[0]));
            for i in 0..n {
                p = &p + &like.var_like(i).scale(&Quad::from_int(v[i + 1]));
            }
            p
        })
        .collect();
    let x0 = like.var_like(0);
    let conic = if n == 1 {
        &x0.pow(2) - &like.constant_like(Quad::from_int(2))
    } else {
        &(&x0.pow(2) - &like.var_like(n - 1).pow(2).scale(&Quad::from_int(2))) + &like.one_like()
    };
    pool.push(conic);
    pool
}

fn product(pool: &[MultiPoly], exps: &[u32], like: &MultiPoly) -> MultiPoly {
    pool.iter().zip(exps).fold(like.one_like(), |acc, (f, &e)| &acc * &f.pow(e))
}

fn degree_of(pool: &[MultiPoly], exps: &[u32]) -> u32 {
    pool.iter().zip(exps).map(|(f, &e)| f.total_degree().unwrap() * e).sum()
}

fn random_exps_bounded(rng: &mut Seeded, pool: &[MultiPoly], bound: u32) -> Vec<u32> {
    loop {
        let e: Vec<u32> = pool.iter().map(|_| rng.int(0, 2) as u32).collect();
        if degree_of(pool, &e) <= bound {
            return e;
        }
    }
}

/// gcd(a, squarefree_part(a) * h) against the gcd read off known factorizations.
pub fn gcd_squarefree_oracle() -> Result<(), String> {
    run(any::<u64>(), |seed| {
        let mut rng = Seeded::new(seed);
        let n = rng.int(1, 3) as usize;
        let like = ring(n, &Field::rationals());
        let pool = factor_pool(&mut rng, &like);
        let ea = loop {
            let e = random_exps_bounded(&mut rng, &pool, 4);
            if e.iter().any(|&x| x > 0) {
                break e;
            }
        };
        let es: Vec<u32> = ea.iter().map(|&x| x.min(1)).collect();
        let eh = loop {
            let e = random_exps_bounded(&mut rng, &pool, 4);
            let total: Vec<u32> = es.iter().zip(&e).map(|(a, b)| a + b).collect();
            if degree_of(&pool, &total) <= 4 {
                break e;
            }
        };
        let unit = Quad::from_int(rng.nonzero_int(4));
        let a = product(&pool, &ea, &like).scale(&unit);
        let h = product(&pool, &eh, &like);
        let s = squarefree_part(&a).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert_eq!(&s, &product(&pool, &es, &like).monic());
        prop_assert_eq!(squarefree_part(&s).unwrap(), s.clone());
        let sh = &s * &h;
        let g = gcd_poly(&a, &sh);
        let eg: Vec<u32> = ea.iter().zip(es.iter().zip(&eh)).map(|(a, (s, h))| (*a).min(s + h)).collect();
        prop_assert_eq!(&g, &product(&pool, &eg, &like).monic());
        prop_assert!(a.exact_div(&g).is_some());
        prop_assert!(sh.exact_div(&g).is_some());
        Ok(())
    })
}

fn laplace_det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut total = BigInt::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<BigInt>> =
            m[1..].iter().map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| x.clone()).collect()).collect();
        let term = &m[0][j] * laplace_det(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-9i64..=9, c), r))
}

/// U M V = D with unimodular U, V, a divisibility chain, and |det| = product of divisors.
pub fn smith_form() -> Result<(), String> {
    run(matrix(), |rows| {
        let m = IntegerMatrix::from_i64(&rows);
        let (d, u, v) = smith_normal_form(&m);
        prop_assert_eq!(u.mul(&m).mul(&v), d.clone());
        prop_assert_eq!(laplace_det(&u.data).abs(), BigInt::one());
        prop_assert_eq!(laplace_det(&v.data).abs(), BigInt::one());
        let r = m.rows.min(m.cols);
        for i in 0..m.rows {
            for j in 0..m.cols {
                if i != j {
                    prop_assert!(d.data[i][j].is_zero());
                }
            }
        }
        let diag: Vec<BigInt> = (0..r).map(|i| d.data[i][i].clone()).collect();
        for w in diag.windows(2) {
            prop_assert!(!w[0].is_negative());
            if w[0].is_zero() {
                prop_assert!(w[1].is_zero());
            } else {
                prop_assert!(w[1].is_multiple_of(&w[0]));
            }
        }
        if m.rows == m.cols {
            let prod = diag.iter().fold(BigInt::one(), |acc, x| acc * x);
            prop_assert_eq!(prod, laplace_det(&m.data).abs());
        }
        Ok(())
    })
}

fn cross(a: &[i64], b: &[i64]) -> [i64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn linear(like: &MultiPoly, c: &[i64]) -> MultiPoly {
    (0..3).fold(like.zero_like(), |acc, i| &acc + &like.var_like(i).scale(&Quad::from_int(c[i])))
}

/// For F = prod M_j + L*G with lines M_j through points R_j of L, the
/// multiplicities along L are the repetition counts of the R_j and sum to deg F.
pub fn bezout_lines() -> Result<(), String> {
    run(any::<u64>(), |seed| {
        let mut rng = Seeded::new(seed);
        let q = Field::rationals();
        let like = MultiPoly::zero(vars_of(&["X", "Y", "Z"]), q.clone());
        let l: Vec<i64> = loop {
            let v: Vec<i64> = (0..3).map(|_| rng.int(-3, 3)).collect();
            if v.iter().any(|&c| c != 0) {
                break v;
            }
        };
        // two independent points on L
        let basis = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
        let mut on_line: Vec<[i64; 3]> = basis.iter().map(|e| cross(&l, e)).filter(|p| p.iter().any(|&c| c != 0)).collect();
        on_line.dedup_by(|a, b| cross(a, b).iter().all(|&c| c == 0));
        let (p0, p1) = (on_line[0], on_line[1]);
        let d = rng.int(1, 5) as usize;
        let params: Vec<i64> = (0..d).map(|_| rng.int(-2, 2)).collect();
        let point = |s: i64| -> [i64; 3] { [p0[0] + s * p1[0], p0[1] + s * p1[1], p0[2] + s * p1[2]] };
        let mut f = like.one_like();
        for &s in &params {
            let r = point(s);
            let m = loop {
                let off: Vec<i64> = (0..3).map(|_| rng.int(-4, 4)).collect();
                let dot: i64 = off.iter().zip(&l).map(|(a, b)| a * b).sum();
                if dot != 0 {
                    break cross(&r, &off);
                }
            };
            f = &f * &linear(&like, &m);
        }
        let g = random_poly(&mut rng, &like, 0, 3, Some(d as u32 - 1));
        let f = &f + &(&linear(&like, &l) * &g);
        let lp = linear(&like, &l);
        let mut distinct = params.clone();
        distinct.sort();
        distinct.dedup();
        let mut total = 0;
        for &s in &distinct {
            let pt = ProjectivePoint::from_ints(&point(s), &q);
            let m = line_intersection_multiplicity(&f, &lp, &pt).map_err(|e| TestCaseError::fail(e.to_string()))?;
            let expected = params.iter().filter(|&&x| x == s).count() as u32;
            prop_assert_eq!(m, IntersectionMultiplicity::Finite(expected));
            total += expected;
        }
        prop_assert_eq!(total as usize, d);
        let spare = (-6..=6).find(|s| !params.contains(s)).unwrap();
        let pt = ProjectivePoint::from_ints(&point(spare), &q);
        prop_assert_eq!(line_intersection_multiplicity(&f, &lp, &pt).unwrap(), IntersectionMultiplicity::Finite(0));
        Ok(())
    })
}

/// The reduced basis does not depend on generator order, scaling or redundant generators.
pub fn groebner_uniqueness() -> Result<(), String> {
    run((any::<u64>(), any::<bool>()), |(seed, lex)| {
        let mut rng = Seeded::new(seed);
        let n = rng.int(2, 3) as usize;
        let like = ring(n, &Field::rationals());
        let count = rng.int(2, 3) as usize;
        let gens: Vec<MultiPoly> = (0..count).map(|_| random_poly(&mut rng, &like, 2, 3, None)).collect();
        let order = if lex { MonomialOrder::Lex } else { MonomialOrder::Grevlex };
        let mut other: Vec<MultiPoly> = gens.iter().map(|g| g.scale(&Quad::from_int(rng.nonzero_int(3)))).collect();
        for i in (1..other.len()).rev() {
            let j = rng.int(0, i as i64) as usize;
            other.swap(i, j);
        }
        other.push(&gens[0] + &gens[1]);
        let a = groebner_basis(&gens, order).map_err(|e| TestCaseError::fail(e.to_string()))?;
        let b = groebner_basis(&other, order).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert!(a.reduced && b.reduced);
        prop_assert_eq!(a.generators, b.generators);
        Ok(())
    })
}

pub const SUITES: [(&str, fn() -> Result<(), String>); 6] = [
    ("field axioms", field_axioms),
    ("Euler relation", euler_relation),
    ("gcd/squarefree oracle", gcd_squarefree_oracle),
    ("Smith normal form", smith_form),
    ("Bezout for lines", bezout_lines),
    ("reduced Groebner basis uniqueness", groebner_uniqueness),
];
