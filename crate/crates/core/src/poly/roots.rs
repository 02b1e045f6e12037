//! Linear and quadratic factors of univariate polynomials over Q, and roots in
//! Q or a quadratic field.
//!
//! Factors of degree at most two are found p-adically: roots of the reduction
//! modulo a prime p = 3 (mod 4) are located in F_p and F_p[i] = F_{p^2}, lifted
//! by Newton iteration, and each candidate factor is confirmed by exact division.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::upoly::{self, UPoly};
use crate::afield::{rat, rational_sqrt, Field, Quad, Rational};

/// Factors of degree <= 2 of a squarefree rational polynomial.
#[derive(Debug, Clone, Default)]
pub struct SmallFactors {
    pub roots: Vec<Rational>,
    /// Irreducible monic quadratics x^2 + b*x + c as (b, c).
    pub quadratics: Vec<(Rational, Rational)>,
    /// Monic remaining factor (constant 1 when everything split off).
    pub cofactor: Vec<Rational>,
}

fn primitive_integer(f: &[Rational]) -> Vec<BigInt> {
    let mut l = BigInt::one();
    for c in f {
        l = l.lcm(c.denom());
    }
    let ints: Vec<BigInt> = f.iter().map(|c| (c * Rational::from_integer(l.clone())).to_integer()).collect();
    let mut g = BigInt::zero();
    for c in &ints {
        g = g.gcd(c);
    }
    let mut out: Vec<BigInt> = ints.into_iter().map(|c| c / &g).collect();
    if out.last().is_some_and(|c| c.is_negative()) {
        for c in out.iter_mut() {
            *c = -&*c;
        }
    }
    out
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn powmod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn reduce(f: &[BigInt], p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    f.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect()
}

fn fp_trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn fp_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    fp_trim(&mut r);
    let db = b.len() - 1;
    let inv = powmod(b[db], p - 2, p);
    while r.len() > db {
        let dr = r.len() - 1;
        let c = r[dr] * inv % p;
        for j in 0..=db {
            r[dr - db + j] = (r[dr - db + j] + p - c * b[j] % p) % p;
        }
        fp_trim(&mut r);
    }
    r
}

fn fp_gcd_degree(a: &[u64], b: &[u64], p: u64) -> usize {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    fp_trim(&mut x);
    fp_trim(&mut y);
    while !y.is_empty() {
        let r = fp_rem(&x, &y, p);
        x = y;
        y = r;
    }
    x.len().saturating_sub(1)
}

fn fp_eval(a: &[u64], x: u64, p: u64) -> u64 {
    a.iter().rev().fold(0, |acc, c| (acc * x + c) % p)
}

/// Evaluation in F_p[i], elements as (re, im).
fn fp2_eval(a: &[u64], x: (u64, u64), p: u64) -> (u64, u64) {
    let mut acc = (0u64, 0u64);
    for c in a.iter().rev() {
        let re = (acc.0 * x.0 % p + p * p - acc.1 * x.1 % p) % p;
        let im = (acc.0 * x.1 + acc.1 * x.0) % p;
        acc = ((re + c) % p, im);
    }
    acc
}

/// Arithmetic in (Z/M)[i].
#[derive(Clone, Debug, PartialEq)]
struct Gi {
    re: BigInt,
    im: BigInt,
}

impl Gi {
    fn md(&self, m: &BigInt) -> Gi {
        Gi { re: self.re.mod_floor(m), im: self.im.mod_floor(m) }
    }
    fn mul(&self, o: &Gi, m: &BigInt) -> Gi {
        Gi { re: &self.re * &o.re - &self.im * &o.im, im: &self.re * &o.im + &self.im * &o.re }.md(m)
    }
    fn add_int(&self, c: &BigInt, m: &BigInt) -> Gi {
        Gi { re: &self.re + c, im: self.im.clone() }.md(m)
    }
    fn sub(&self, o: &Gi, m: &BigInt) -> Gi {
        Gi { re: &self.re - &o.re, im: &self.im - &o.im }.md(m)
    }
    fn inv(&self, m: &BigInt) -> Gi {
        let n = (&self.re * &self.re + &self.im * &self.im).mod_floor(m);
        let ni = mod_inverse(&n, m);
        Gi { re: &self.re * &ni, im: -&self.im * &ni }.md(m)
    }
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

fn gi_eval(f: &[BigInt], x: &Gi, m: &BigInt) -> Gi {
    let mut acc = Gi { re: BigInt::zero(), im: BigInt::zero() };
    for c in f.iter().rev() {
        acc = acc.mul(x, m).add_int(c, m);
    }
    acc
}

fn derivative(f: &[BigInt]) -> Vec<BigInt> {
    f.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect()
}

/// Newton lifting of a simple root from modulus p to modulus >= target.
fn lift(f: &[BigInt], df: &[BigInt], root: Gi, p: u64, target: &BigInt) -> (Gi, BigInt) {
    let mut m = BigInt::from(p);
    let mut r = root;
    while &m <= target {
        m = &m * &m;
        let fv = gi_eval(f, &r, &m);
        let dv = gi_eval(df, &r, &m);
        r = r.sub(&fv.mul(&dv.inv(&m), &m), &m);
    }
    (r, m)
}

fn symmetric(x: &BigInt, m: &BigInt) -> BigInt {
    let r = x.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

fn to_rationals(v: &[BigInt]) -> Vec<Rational> {
    v.iter().map(|c| Rational::from_integer(c.clone())).collect()
}

fn divides(g: &[BigInt], f: &[Rational]) -> bool {
    let q = Field::rationals();
    let gq: UPoly = to_rationals(g).into_iter().map(Quad::from_rational).collect();
    let fq: UPoly = f.iter().cloned().map(Quad::from_rational).collect();
    upoly::is_zero(&upoly::rem(&fq, &gq, &q))
}

fn monic_rationals(g: &[BigInt]) -> Vec<Rational> {
    let lc = Rational::from_integer(g[g.len() - 1].clone());
    to_rationals(g).into_iter().map(|c| c / &lc).collect()
}

/// Finds all factors of degree 1 and 2 of `f` over Q (taking its squarefree part).
pub fn small_factors(f: &[Rational]) -> SmallFactors {
    let q = Field::rationals();
    let fq: UPoly = f.iter().cloned().map(Quad::from_rational).collect();
    let sq = upoly::squarefree(&fq, &q);
    let mut rest: Vec<Rational> = sq.iter().map(|c| c.a0.clone()).collect();
    let mut out = SmallFactors::default();
    if rest.len() <= 1 {
        out.cofactor = vec![rat(1)];
        return out;
    }
    let zf = primitive_integer(&rest);
    let deg = zf.len() - 1;
    let lc = zf[deg].abs();
    let norm2: BigInt = zf.iter().map(|c| c * c).sum();
    let bound = BigInt::from(8) * &lc * (norm2.sqrt() + BigInt::one());
    let df = derivative(&zf);
    let mut p = 103u64;
    let (fp, p) = loop {
        if p % 4 == 3 && is_prime(p) {
            let fp = reduce(&zf, p);
            if fp[deg] != 0 {
                let dfp = reduce(&df, p);
                if fp_gcd_degree(&fp, &dfp, p) == 0 {
                    break (fp, p);
                }
            }
        }
        p += 1;
    };
    let lcz = zf[deg].clone();
    let base_roots: Vec<u64> = (0..p).filter(|&x| fp_eval(&fp, x, p) == 0).collect();
    let mut lifted_base: Vec<(u64, BigInt)> = Vec::new();
    let mut modulus = BigInt::one();
    for &r0 in &base_roots {
        let (r, m) = lift(&zf, &df, Gi { re: BigInt::from(r0), im: BigInt::zero() }, p, &bound);
        modulus = m;
        let u = symmetric(&(&lcz * &r.re), &modulus);
        let cand = primitive_integer(&to_rationals(&[-u, lcz.clone()]));
        if divides(&cand, &rest) {
            let mc = monic_rationals(&cand);
            out.roots.push(-mc[0].clone());
            rest = divide_out(&rest, &mc);
        } else {
            lifted_base.push((r0, r.re));
        }
    }
    // pairs of F_p roots may still belong to a quadratic factor over Q
    let mut used = vec![false; lifted_base.len()];
    for i in 0..lifted_base.len() {
        for j in i + 1..lifted_base.len() {
            if used[i] || used[j] {
                continue;
            }
            let (a, b) = (&lifted_base[i].1, &lifted_base[j].1);
            let s = symmetric(&(-(a + b) * &lcz), &modulus);
            let r = symmetric(&(a * b * &lcz), &modulus);
            let cand = primitive_integer(&to_rationals(&[r, s, lcz.clone()]));
            if cand.len() == 3 && divides(&cand, &rest) {
                let mc = monic_rationals(&cand);
                out.quadratics.push((mc[1].clone(), mc[0].clone()));
                rest = divide_out(&rest, &mc);
                used[i] = true;
                used[j] = true;
            }
        }
    }
    // conjugate pairs in F_{p^2} \ F_p
    if rest.len() > 2 {
        let mut seen: Vec<(u64, u64)> = Vec::new();
        for a in 0..p {
            for b in 1..p {
                if seen.contains(&(a, p - b)) {
                    continue;
                }
                if fp2_eval(&fp, (a, b), p) != (0, 0) {
                    continue;
                }
                seen.push((a, b));
                let (r, m) = lift(&zf, &df, Gi { re: BigInt::from(a), im: BigInt::from(b) }, p, &bound);
                // (x - r)(x - conj r) = x^2 - 2 re x + (re^2 + im^2)
                let s = symmetric(&(-BigInt::from(2) * &r.re * &lcz), &m);
                let n = symmetric(&((&r.re * &r.re + &r.im * &r.im) * &lcz), &m);
                let cand = primitive_integer(&to_rationals(&[n, s, lcz.clone()]));
                if cand.len() == 3 && divides(&cand, &rest) {
                    let mc = monic_rationals(&cand);
                    out.quadratics.push((mc[1].clone(), mc[0].clone()));
                    rest = divide_out(&rest, &mc);
                    if rest.len() <= 2 {
                        break;
                    }
                }
            }
            if rest.len() <= 2 {
                break;
            }
        }
    }
    // a leftover linear or quadratic cofactor is itself a factor
    if rest.len() == 2 {
        out.roots.push(-rest[0].clone() / &rest[1]);
        rest = vec![rat(1)];
    } else if rest.len() == 3 && rational_sqrt(&(&rest[1] * &rest[1] - rat(4) * &rest[0] * &rest[2])).is_none() {
        out.quadratics.push((rest[1].clone() / &rest[2], rest[0].clone() / &rest[2]));
        rest = vec![rat(1)];
    }
    let lc = rest[rest.len() - 1].clone();
    out.cofactor = rest.into_iter().map(|c| c / &lc).collect();
    out.roots.sort();
    out.quadratics.sort();
    out
}

fn divide_out(f: &[Rational], g: &[Rational]) -> Vec<Rational> {
    let q = Field::rationals();
    let fq: UPoly = f.iter().cloned().map(Quad::from_rational).collect();
    let gq: UPoly = g.iter().cloned().map(Quad::from_rational).collect();
    upoly::divrem(&fq, &gq, &q).0.into_iter().map(|c| c.a0).collect()
}

/// Roots of x^2 + b*x + c lying in `field`.
pub fn quadratic_roots(b: &Rational, c: &Rational, field: &Field) -> Option<[Quad; 2]> {
    let d = b * b - rat(4) * c;
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    if let Some(s) = rational_sqrt(&d) {
        let r1 = (-b + &s) * &half;
        let r2 = (-b - &s) * &half;
        return Some([Quad::from_rational(r1), Quad::from_rational(r2)]);
    }
    if field.is_rational() {
        return None;
    }
    // sqrt(disc_K) = 2*theta + b_K
    let m = rational_sqrt(&(&d / field.discriminant()))?;
    let sq = Quad::new(&m * &field.b, &m * rat(2));
    let base = Quad::from_rational(-b * &half);
    let h = sq.scale(&half);
    Some([base.add(&h), base.sub(&h)])
}

/// Distinct roots of `f` in `field`, and the monic squarefree cofactor free of them.
pub fn roots_in_field(f: &[Quad], field: &Field) -> (Vec<Quad>, UPoly) {
    let sq = upoly::squarefree(f, field);
    if upoly::degree(&sq).unwrap_or(0) == 0 {
        return (Vec::new(), vec![Quad::one()]);
    }
    let norm: Vec<Rational> = if sq.iter().all(|c| c.is_rational()) {
        sq.iter().map(|c| c.a0.clone()).collect()
    } else {
        let conj: UPoly = sq.iter().map(|c| c.conj(field)).collect();
        upoly::mul(&sq, &conj, field).into_iter().map(|c| c.a0).collect()
    };
    let sf = small_factors(&norm);
    let mut cands: Vec<Quad> = sf.roots.iter().cloned().map(Quad::from_rational).collect();
    for (b, c) in &sf.quadratics {
        if let Some(rs) = quadratic_roots(b, c, field) {
            cands.extend(rs);
        }
    }
    let mut roots = Vec::new();
    let mut rest = sq.clone();
    for r in cands {
        if upoly::eval(&sq, &r, field).is_zero() && !roots.contains(&r) {
            rest = upoly::divrem(&rest, &[r.neg(), Quad::one()], field).0;
            roots.push(r);
        }
    }
    roots.sort();
    (roots, upoly::monic(&rest, field))
}
