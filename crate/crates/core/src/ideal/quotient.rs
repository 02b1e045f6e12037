//! Finite-dimensional quotient algebras K[x]/I from a grevlex basis.

use std::collections::HashMap;

use super::groebner::{groebner_basis, reduce_with, IdealBasis, MonomialOrder, Poly, Ring};
use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::modular;
use crate::afield::{Quad, Rational};
use crate::error::{Error, Result};
use crate::poly::{Monomial, MultiPoly};

/// Krull dimension from the leading-term ideal; -1 for the unit ideal.
pub fn affine_dimension(basis: &IdealBasis, nvars: usize) -> i64 {
    if basis.is_unit() {
        return -1;
    }
    let lms = basis.leading_monomials();
    let mut best = 0;
    for s in 0u32..(1 << nvars) {
        let size = s.count_ones() as i64;
        if size <= best {
            continue;
        }
        // S is independent if no leading monomial is supported inside S
        let independent = lms.iter().all(|m| m.0.iter().enumerate().any(|(i, &e)| e > 0 && s & (1 << i) == 0));
        if independent {
            best = size;
        }
    }
    best
}

/// Dimension of the zero set; `projective` treats the variables as homogeneous
/// coordinates, giving -1 for an empty projective locus.
pub fn ideal_dimension(basis: &IdealBasis, nvars: usize, projective: bool) -> i64 {
    let d = affine_dimension(basis, nvars);
    if projective {
        (d - 1).max(-1)
    } else {
        d
    }
}

fn is_zero_dimensional(lms: &[Monomial], n: usize) -> bool {
    (0..n).all(|i| lms.iter().any(|m| m.0[i] > 0 && m.0.iter().enumerate().all(|(j, &e)| j == i || e == 0)))
}

/// Monomials outside the leading-term ideal, in increasing grevlex order.
pub fn standard_monomials(basis: &IdealBasis, n: usize) -> Result<Vec<Monomial>> {
    if basis.is_unit() {
        return Ok(Vec::new());
    }
    let lms = basis.leading_monomials();
    if !is_zero_dimensional(&lms, n) {
        return Err(Error::NotZeroDimensional);
    }
    let mut out = vec![Monomial::one(n)];
    let mut frontier = vec![Monomial::one(n)];
    let mut seen: std::collections::HashSet<Monomial> = frontier.iter().cloned().collect();
    while let Some(m) = frontier.pop() {
        for i in 0..n {
            let mut next = m.clone();
            next.0[i] += 1;
            if seen.contains(&next) || lms.iter().any(|l| l.divides(&next)) {
                continue;
            }
            seen.insert(next.clone());
            out.push(next.clone());
            frontier.push(next);
        }
    }
    out.sort();
    Ok(out)
}

pub fn quotient_dimension(basis: &IdealBasis, n: usize) -> Result<usize> {
    Ok(standard_monomials(basis, n)?.len())
}

/// K[x]/I with a monomial basis and normal-form coordinates.
pub struct QuotientAlgebra {
    pub basis: IdealBasis,
    pub monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    ring: Ring,
    gens: Vec<Poly>,
    like: MultiPoly,
}

impl QuotientAlgebra {
    /// `basis` must be a reduced grevlex basis of a zero-dimensional ideal.
    pub fn new(basis: IdealBasis, like: &MultiPoly) -> Result<QuotientAlgebra> {
        assert_eq!(basis.order, MonomialOrder::Grevlex);
        let n = like.nvars();
        let monomials = standard_monomials(&basis, n)?;
        let index = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let ring = Ring::new(like.field(), n, MonomialOrder::Grevlex)?;
        let gens = basis.generators.iter().map(|g| ring.from_multi(g).0).collect();
        Ok(QuotientAlgebra { basis, monomials, index, ring, gens, like: like.zero_like() })
    }

    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn normal_form(&self, f: &MultiPoly) -> MultiPoly {
        if f.is_zero() {
            return f.clone();
        }
        reduce_with(&self.ring, f, &self.gens)
    }

    pub fn coords(&self, f: &MultiPoly) -> Vec<Quad> {
        let nf = self.normal_form(f);
        let mut v = vec![Quad::zero(); self.dim()];
        for (m, c) in nf.terms() {
            v[self.index[m]] = c.clone();
        }
        v
    }

    fn from_coords(&self, v: &[Quad]) -> MultiPoly {
        let mut p = self.like.zero_like();
        for (m, c) in self.monomials.iter().zip(v) {
            p.add_term(m.clone(), c.clone());
        }
        p
    }

    /// Minimal polynomial (monic, low to high) of the class of `f`, by Krylov iteration.
    pub fn minimal_polynomial(&self, f: &MultiPoly) -> Vec<Quad> {
        let field = self.like.field().clone();
        let dim = self.dim();
        if dim == 0 {
            return vec![Quad::one()];
        }
        let fnf = self.normal_form(f);
        // echelon rows: (pivot, vector, combination of powers)
        let mut rows: Vec<(usize, Vec<Quad>, Vec<Quad>)> = Vec::new();
        let mut cur = self.coords(&self.like.one_like());
        for k in 0..=dim {
            let mut v = cur.clone();
            let mut comb = vec![Quad::zero(); k + 1];
            comb[k] = Quad::one();
            for (piv, rv, rc) in &rows {
                if !v[*piv].is_zero() {
                    let c = v[*piv].clone();
                    for (x, y) in v.iter_mut().zip(rv) {
                        *x = x.sub(&c.mul(y, &field));
                    }
                    for (x, y) in comb.iter_mut().zip(rc) {
                        *x = x.sub(&c.mul(y, &field));
                    }
                }
            }
            match v.iter().position(|x| !x.is_zero()) {
                None => return crate::poly::upoly::monic(&comb, &field),
                Some(piv) => {
                    let inv = v[piv].inv(&field).expect("nonzero");
                    let v: Vec<Quad> = v.iter().map(|x| x.mul(&inv, &field)).collect();
                    let mut comb: Vec<Quad> = comb.iter().map(|x| x.mul(&inv, &field)).collect();
                    comb.resize(dim + 2, Quad::zero());
                    for (_, _, rc) in rows.iter_mut() {
                        rc.resize(dim + 2, Quad::zero());
                    }
                    rows.push((piv, v, comb));
                }
            }
            let p = self.from_coords(&cur);
            cur = self.coords(&(&p * &fnf));
        }
        unreachable!("Krylov sequence must become dependent within dim + 1 steps")
    }
}


fn fp_trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn fp_divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let mut r = a.to_vec();
    fp_trim(&mut r);
    let db = b.len() - 1;
    let il = modular::inv(b[db], p);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![0u64; r.len() - db];
    while r.len() > db && !r.is_empty() {
        let k = r.len() - 1 - db;
        let c = r[r.len() - 1] * il % p;
        q[k] = c;
        for (i, &bi) in b.iter().enumerate() {
            r[k + i] = (r[k + i] + p - c * bi % p) % p;
        }
        fp_trim(&mut r);
    }
    (q, r)
}

fn fp_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    fp_trim(&mut a);
    fp_trim(&mut b);
    while !b.is_empty() {
        let (_, r) = fp_divrem(&a, &b, p);
        a = std::mem::replace(&mut b, r);
    }
    a
}

fn fp_monic(a: &mut [u64], p: u64) {
    if let Some(&l) = a.last() {
        let il = modular::inv(l, p);
        for x in a.iter_mut() {
            *x = *x * il % p;
        }
    }
}

/// Minimal polynomial of `m` acting on e_start, modulo p, monic, low to high.
fn fp_krylov(m: &[Vec<u64>], start: usize, p: u64) -> Vec<u64> {
    let dim = m.len();
    let mut rows: Vec<(usize, Vec<u64>, Vec<u64>)> = Vec::new();
    let mut cur = vec![0u64; dim];
    cur[start] = 1;
    for k in 0..=dim {
        let mut v = cur.clone();
        let mut comb = vec![0u64; dim + 1];
        comb[k] = 1;
        for (piv, rv, rc) in &rows {
            let c = v[*piv];
            if c != 0 {
                for (x, y) in v.iter_mut().zip(rv) {
                    *x = (*x + p - c * y % p) % p;
                }
                for (x, y) in comb.iter_mut().zip(rc) {
                    *x = (*x + p - c * y % p) % p;
                }
            }
        }
        match v.iter().position(|&x| x != 0) {
            None => {
                fp_trim(&mut comb);
                fp_monic(&mut comb, p);
                return comb;
            }
            Some(piv) => {
                let il = modular::inv(v[piv], p);
                let v = v.iter().map(|x| x * il % p).collect();
                let comb = comb.iter().map(|x| x * il % p).collect();
                rows.push((piv, v, comb));
            }
        }
        let mut next = vec![0u64; dim];
        for (i, row) in m.iter().enumerate() {
            let mut acc = 0u64;
            for (a, b) in row.iter().zip(&cur) {
                acc = (acc + a * b) % p;
            }
            next[i] = acc;
        }
        cur = next;
    }
    unreachable!("Krylov sequence must become dependent within dim + 1 steps")
}

fn fp_squarefree(a: &[u64], p: u64) -> Vec<u64> {
    let d: Vec<u64> = a.iter().enumerate().skip(1).map(|(i, &c)| (i as u64 % p) * c % p).collect();
    let g = fp_gcd(a, &d, p);
    let (mut q, _) = fp_divrem(a, &g, p);
    fp_trim(&mut q);
    fp_monic(&mut q, p);
    q
}

const GUESS_PRIMES: usize = 200;

impl QuotientAlgebra {
    /// Matrix of multiplication by `f`: column j holds the coordinates of f times basis monomial j.
    pub fn multiplication_matrix(&self, f: &MultiPoly) -> Vec<Vec<Quad>> {
        let dim = self.dim();
        let mut m = vec![vec![Quad::zero(); dim]; dim];
        for (j, b) in self.monomials.iter().enumerate() {
            let col = self.coords(&f.mul_monomial(b, &Quad::one()));
            for (i, c) in col.into_iter().enumerate() {
                m[i][j] = c;
            }
        }
        m
    }

    /// Squarefree part of the minimal polynomial of a rational class, reconstructed from
    /// images modulo primes. Unverified: callers must certify what they derive from it.
    pub fn squarefree_eliminant_guess(&self, f: &MultiPoly) -> Option<Vec<Rational>> {
        let mat = self.multiplication_matrix(f);
        if mat.iter().flatten().any(|c| !c.a1.is_zero()) {
            return None;
        }
        let start = self.index[&Monomial::one(self.like.nvars())];
        let mut modulus = BigInt::one();
        let mut acc: Vec<BigInt> = Vec::new();
        let mut previous: Option<Vec<Rational>> = None;
        let mut p = (1u64 << 31) - 1;
        let mut used = 0;
        while used < GUESS_PRIMES && p > 1 << 20 {
            p -= 2;
            if !modular::is_prime(p) {
                continue;
            }
            let Some(mp) = mat
                .iter()
                .map(|row| row.iter().map(|c| modular::rational_residue(&c.a0, p)).collect::<Option<Vec<u64>>>())
                .collect::<Option<Vec<Vec<u64>>>>()
            else {
                continue;
            };
            used += 1;
            let s = fp_squarefree(&fp_krylov(&mp, start, p), p);
            if s.len() < acc.len() {
                continue;
            }
            let pb = BigInt::from(p);
            if s.len() > acc.len() {
                acc = s.iter().map(|&c| BigInt::from(c)).collect();
                modulus = pb;
                previous = None;
                continue;
            }
            let mi = modular::inv(modular::residue(&modulus, p), p);
            for (a, &c) in acc.iter_mut().zip(&s) {
                let diff = (c + p - modular::residue(a, p)) % p * mi % p;
                *a += &modulus * BigInt::from(diff);
            }
            modulus *= &pb;
            let rec: Option<Vec<Rational>> = acc.iter().map(|a| modular::rational_reconstruction(a, &modulus)).collect();
            if let Some(rec) = rec {
                if previous.as_ref() == Some(&rec) {
                    return Some(rec);
                }
                previous = Some(rec);
            }
        }
        None
    }
}

fn max_ideal_power(like: &MultiPoly, d: u32) -> Vec<MultiPoly> {
    let n = like.nvars();
    let mut out = Vec::new();
    let mut e = vec![0u32; n];
    fn rec(i: usize, left: u32, e: &mut Vec<u32>, like: &MultiPoly, out: &mut Vec<MultiPoly>) {
        if i + 1 == e.len() {
            e[i] = left;
            let mut m = like.zero_like();
            m.add_term(Monomial(e.clone()), Quad::one());
            out.push(m);
            return;
        }
        for k in 0..=left {
            e[i] = k;
            rec(i + 1, left - k, e, like, out);
        }
    }
    if n == 0 {
        return vec![like.one_like()];
    }
    rec(0, d, &mut e, like, &mut out);
    out
}

/// Colength of `gens` at the origin, computed as dim K[x]/(gens + m^d) for the
/// first d where two consecutive values agree; `NotIsolated` past `cap`.
pub fn local_colength(gens: &[MultiPoly], like: &MultiPoly, cap: u32) -> Result<usize> {
    let n = like.nvars();
    let mut prev: Option<usize> = None;
    for d in 1..=cap + 1 {
        let mut sys: Vec<MultiPoly> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
        sys.extend(max_ideal_power(like, d));
        let b = groebner_basis(&sys, MonomialOrder::Grevlex)?;
        let dim = quotient_dimension(&b, n)?;
        if prev == Some(dim) {
            return Ok(dim);
        }
        prev = Some(dim);
    }
    Err(Error::NotIsolated(cap as usize))
}
