//! Buchberger's algorithm with Gebauer-Moeller pair criteria and sugar selection.
//!
//! Arithmetic is fraction-free: coefficients live in Z[theta'] with
//! theta' = d*theta integral, and every stored polynomial is kept primitive
//! with a positive integer leading coefficient.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::modular::modular_buchberger;
use crate::afield::{Field, Quad, Rational};
use crate::error::{Error, Result};
use crate::poly::{Monomial, MultiPoly};

pub const MAX_VARS: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MonomialOrder {
    Grevlex,
    Lex,
    /// Grevlex on the first `k` variables, ties broken by grevlex on the rest.
    Block(usize),
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub(crate) struct Exp {
    pub e: [u16; MAX_VARS],
    pub deg: u32,
    mask: u32,
}

impl Exp {
    pub fn from_slice(v: &[u32]) -> Exp {
        let mut e = [0u16; MAX_VARS];
        let mut deg = 0;
        let mut mask = 0;
        for (i, &x) in v.iter().enumerate() {
            e[i] = x as u16;
            deg += x;
            if x > 0 {
                mask |= 1 << i;
            }
        }
        Exp { e, deg, mask }
    }

    pub fn to_vec(self, n: usize) -> Vec<u32> {
        self.e[..n].iter().map(|&x| x as u32).collect()
    }

    pub fn mul(&self, o: &Exp) -> Exp {
        let mut e = [0u16; MAX_VARS];
        for (i, slot) in e.iter_mut().enumerate() {
            *slot = self.e[i] + o.e[i];
        }
        Exp { e, deg: self.deg + o.deg, mask: self.mask | o.mask }
    }

    pub fn divides(&self, o: &Exp) -> bool {
        self.mask & !o.mask == 0 && self.e.iter().zip(&o.e).all(|(a, b)| a <= b)
    }

    pub fn div(&self, o: &Exp) -> Exp {
        let mut e = [0u16; MAX_VARS];
        let mut mask = 0;
        for (i, slot) in e.iter_mut().enumerate() {
            *slot = self.e[i] - o.e[i];
            if *slot > 0 {
                mask |= 1 << i;
            }
        }
        Exp { e, deg: self.deg - o.deg, mask }
    }

    pub fn lcm(&self, o: &Exp) -> Exp {
        let mut e = [0u16; MAX_VARS];
        let mut deg = 0;
        for (i, slot) in e.iter_mut().enumerate() {
            *slot = self.e[i].max(o.e[i]);
            deg += *slot as u32;
        }
        Exp { e, deg, mask: self.mask | o.mask }
    }

    pub fn coprime(&self, o: &Exp) -> bool {
        self.mask & o.mask == 0
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }
}

fn grevlex_range(a: &Exp, b: &Exp, lo: usize, hi: usize) -> Ordering {
    let da: u32 = a.e[lo..hi].iter().map(|&x| x as u32).sum();
    let db: u32 = b.e[lo..hi].iter().map(|&x| x as u32).sum();
    if da != db {
        return da.cmp(&db);
    }
    for i in (lo..hi).rev() {
        if a.e[i] != b.e[i] {
            return b.e[i].cmp(&a.e[i]);
        }
    }
    Ordering::Equal
}

pub(crate) fn cmp_exp(order: MonomialOrder, n: usize, a: &Exp, b: &Exp) -> Ordering {
    match order {
        MonomialOrder::Grevlex => {
            if a.deg != b.deg {
                return a.deg.cmp(&b.deg);
            }
            grevlex_range(a, b, 0, n)
        }
        MonomialOrder::Lex => a.e[..n].cmp(&b.e[..n]),
        MonomialOrder::Block(k) => grevlex_range(a, b, 0, k).then_with(|| grevlex_range(a, b, k, n)),
    }
}

/// a + b*theta' in Z[theta'].
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Zc {
    pub a: BigInt,
    pub b: BigInt,
}

impl Zc {
    pub fn int(a: BigInt) -> Zc {
        Zc { a, b: BigInt::zero() }
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    fn content(&self) -> BigInt {
        self.a.gcd(&self.b)
    }
    fn scale(&self, s: &BigInt) -> Zc {
        if self.b.is_zero() {
            return Zc::int(&self.a * s);
        }
        Zc { a: &self.a * s, b: &self.b * s }
    }
    fn div_int(&self, s: &BigInt) -> Zc {
        if self.b.is_zero() {
            return Zc::int(&self.a / s);
        }
        Zc { a: &self.a / s, b: &self.b / s }
    }
    fn neg(&self) -> Zc {
        Zc { a: -&self.a, b: -&self.b }
    }
}

/// Integral model of the coefficient field.
#[derive(Clone, Debug)]
pub(crate) struct Ring {
    pub order: MonomialOrder,
    pub n: usize,
    pub field: Field,
    pub quadratic: bool,
    /// theta'^2 = -qb*theta' - qc
    pub qb: BigInt,
    pub qc: BigInt,
    pub d: BigInt,
}

pub(crate) type Poly = Vec<(Exp, Zc)>;

impl Ring {
    pub fn new(field: &Field, n: usize, order: MonomialOrder) -> Result<Ring> {
        if n > MAX_VARS {
            return Err(Error::TooManyVariables(n));
        }
        let d = field.b.denom().lcm(field.c.denom());
        let dr = Rational::from_integer(d.clone());
        let qb = (&field.b * &dr).to_integer();
        let qc = (&field.c * &dr * &dr).to_integer();
        Ok(Ring { order, n, field: field.clone(), quadratic: !field.is_rational(), qb, qc, d })
    }

    fn mul(&self, x: &Zc, y: &Zc) -> Zc {
        if x.b.is_zero() {
            return y.scale(&x.a);
        }
        if y.b.is_zero() {
            return x.scale(&y.a);
        }
        let bb = &x.b * &y.b;
        Zc {
            a: &x.a * &y.a - &bb * &self.qc,
            b: &x.a * &y.b + &x.b * &y.a - &bb * &self.qb,
        }
    }

    fn conj(&self, x: &Zc) -> Zc {
        Zc { a: &x.a - &x.b * &self.qb, b: -&x.b }
    }

    pub fn cmp(&self, a: &Exp, b: &Exp) -> Ordering {
        cmp_exp(self.order, self.n, a, b)
    }

    /// Converts to the integral model; returns the polynomial and the factor it was scaled by.
    pub fn from_multi(&self, f: &MultiPoly) -> (Poly, BigInt) {
        let dr = Rational::from_integer(self.d.clone());
        let mut l = BigInt::one();
        for c in f.terms().values() {
            l = l.lcm(c.a0.denom());
            l = l.lcm((&c.a1 / &dr).denom());
        }
        let lr = Rational::from_integer(l.clone());
        let mut p: Poly = f
            .terms()
            .iter()
            .map(|(m, c)| {
                let a = (&c.a0 * &lr).to_integer();
                let b = (&c.a1 / &dr * &lr).to_integer();
                (Exp::from_slice(&m.0), Zc { a, b })
            })
            .collect();
        p.sort_by(|x, y| self.cmp(&y.0, &x.0));
        (p, l)
    }

    pub fn to_quad(&self, c: &Zc) -> Quad {
        Quad::new(Rational::from_integer(c.a.clone()), Rational::from_integer(&c.b * &self.d))
    }

    pub fn to_multi(&self, p: &Poly, like: &MultiPoly, scale: &Quad) -> MultiPoly {
        let n = self.n;
        MultiPoly::from_terms(
            like.vars().clone(),
            like.field().clone(),
            p.iter().map(|(e, c)| (e.to_vec(n), self.to_quad(c).mul(scale, &self.field))),
        )
    }

    /// Makes the polynomial primitive with a positive integer leading coefficient.
    pub fn normalize(&self, p: &mut Poly) {
        if p.is_empty() {
            return;
        }
        if self.quadratic && !p[0].1.b.is_zero() {
            let cj = self.conj(&p[0].1);
            for t in p.iter_mut() {
                t.1 = self.mul(&t.1, &cj);
            }
        }
        let mut g = BigInt::zero();
        for t in p.iter() {
            g = g.gcd(&t.1.content());
            if g.is_one() {
                break;
            }
        }
        if p[0].1.a.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for t in p.iter_mut() {
                t.1 = t.1.div_int(&g);
            }
        }
    }

    /// Removes the integer content; returns it.
    fn remove_content(&self, p: &mut Poly, r: &mut Poly) -> BigInt {
        let mut g = BigInt::zero();
        for t in p.iter().chain(r.iter()) {
            g = g.gcd(&t.1.content());
            if g.is_one() {
                return g;
            }
        }
        if g.is_zero() {
            return BigInt::one();
        }
        for t in p.iter_mut().chain(r.iter_mut()) {
            t.1 = t.1.div_int(&g);
        }
        g
    }

    /// s*f - c*m*g, where the caller guarantees the leading terms cancel when `skip` is set.
    fn combine(&self, f: &[(Exp, Zc)], s: &BigInt, g: &[(Exp, Zc)], c: &Zc, m: &Exp, skip: bool) -> Poly {
        let (f, g) = if skip { (&f[1..], &g[1..]) } else { (f, g) };
        let mut out = Vec::with_capacity(f.len() + g.len());
        let mut i = 0;
        let mut j = 0;
        let sone = s.is_one();
        let nc = c.neg();
        let mut gm: Option<(Exp, Zc)> = None;
        loop {
            if gm.is_none() && j < g.len() {
                gm = Some((g[j].0.mul(m), self.mul(&g[j].1, &nc)));
                j += 1;
            }
            match (i < f.len(), &gm) {
                (false, None) => break,
                (true, None) => {
                    let t = &f[i];
                    out.push((t.0, if sone { t.1.clone() } else { t.1.scale(s) }));
                    i += 1;
                }
                (false, Some(_)) => {
                    out.push(gm.take().unwrap());
                }
                (true, Some((ge, _))) => match self.cmp(&f[i].0, ge) {
                    Ordering::Greater => {
                        let t = &f[i];
                        out.push((t.0, if sone { t.1.clone() } else { t.1.scale(s) }));
                        i += 1;
                    }
                    Ordering::Less => out.push(gm.take().unwrap()),
                    Ordering::Equal => {
                        let (ge, gc) = gm.take().unwrap();
                        let fc = if sone { f[i].1.clone() } else { f[i].1.scale(s) };
                        let sum = Zc { a: fc.a + gc.a, b: fc.b + gc.b };
                        if !sum.is_zero() {
                            out.push((ge, sum));
                        }
                        i += 1;
                    }
                },
            }
        }
        out
    }

    /// Reduction step of the term (m, c) of `f` by `g`: returns scale applied to `f`.
    fn reduction_factors(&self, c: &Zc, g: &Poly) -> (BigInt, Zc) {
        let l = &g[0].1.a;
        let h = l.gcd(&c.content());
        (l / &h, c.div_int(&h))
    }

    /// Reduces `f` modulo `basis`; with `full` also tail terms. Returns (r, mult)
    /// where r = mult * (normal form).
    pub fn reduce(&self, f: Poly, basis: &[&Poly], full: bool) -> (Poly, BigRational) {
        let mut f = f;
        let mut r: Poly = Vec::new();
        let mut mult = BigRational::one();
        let mut steps = 0usize;
        while !f.is_empty() {
            let lead = f[0].0;
            let reducer = basis.iter().find(|g| g[0].0.divides(&lead));
            match reducer {
                Some(g) => {
                    let (s, c) = self.reduction_factors(&f[0].1, g);
                    let m = lead.div(&g[0].0);
                    f = self.combine(&f, &s, g, &c, &m, true);
                    if !s.is_one() {
                        for t in r.iter_mut() {
                            t.1 = t.1.scale(&s);
                        }
                        mult *= BigRational::from_integer(s);
                    }
                    steps += 1;
                    if steps.is_multiple_of(8) {
                        let g = self.remove_content(&mut f, &mut r);
                        if !g.is_one() {
                            mult /= BigRational::from_integer(g);
                        }
                    }
                }
                None => {
                    if !full {
                        break;
                    }
                    r.push(f.remove(0));
                }
            }
        }
        if full {
            let g = self.remove_content(&mut r, &mut f);
            if !g.is_one() {
                mult /= BigRational::from_integer(g);
            }
            (r, mult)
        } else {
            let g = self.remove_content(&mut f, &mut r);
            if !g.is_one() {
                mult /= BigRational::from_integer(g);
            }
            (f, mult)
        }
    }

    pub fn spoly(&self, f: &Poly, g: &Poly) -> Poly {
        let lcm = f[0].0.lcm(&g[0].0);
        let lf = &f[0].1.a;
        let lg = &g[0].1.a;
        let h = lf.gcd(lg);
        let sf = lg / &h;
        let sg = lf / &h;
        let mf = lcm.div(&f[0].0);
        let mg = lcm.div(&g[0].0);
        let fm: Poly = f.iter().map(|(e, c)| (e.mul(&mf), c.clone())).collect();
        self.combine(&fm, &sf, g, &Zc::int(sg), &mg, true)
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Pair {
    pub i: usize,
    pub j: usize,
    pub lcm: Exp,
    pub sugar: u32,
}

/// Removes and returns the pair of least sugar, ties broken by lcm.
pub(crate) fn next_pair(ring: &Ring, pairs: &mut Vec<Pair>) -> Pair {
    let k = (0..pairs.len())
        .min_by(|&a, &b| {
            pairs[a]
                .sugar
                .cmp(&pairs[b].sugar)
                .then_with(|| ring.cmp(&pairs[a].lcm, &pairs[b].lcm))
                .then_with(|| (pairs[a].i, pairs[a].j).cmp(&(pairs[b].i, pairs[b].j)))
        })
        .expect("nonempty pair list");
    pairs.swap_remove(k)
}

/// Reduced Groebner basis in the integral model, each element primitive.
pub(crate) fn buchberger(ring: &Ring, input: Vec<Poly>) -> Vec<Poly> {
    let mut polys: Vec<Poly> = Vec::new();
    let mut sugar: Vec<u32> = Vec::new();
    let mut active: Vec<usize> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut inputs: Vec<Poly> = input.into_iter().filter(|p| !p.is_empty()).collect();
    inputs.sort_by(|a, b| ring.cmp(&a[0].0, &b[0].0));
    for p in inputs {
        let reducers: Vec<&Poly> = active.iter().map(|&i| &polys[i]).collect();
        let (mut p, _) = ring.reduce(p, &reducers, false);
        if p.is_empty() {
            continue;
        }
        ring.normalize(&mut p);
        if p[0].0.is_one() {
            return vec![vec![(p[0].0, Zc::int(BigInt::one()))]];
        }
        let s = p.iter().map(|t| t.0.deg).max().unwrap();
        update(&mut polys, &mut sugar, &mut active, &mut pairs, p, s);
    }
    while !pairs.is_empty() {
        let pr = next_pair(ring, &mut pairs);
        let (f, g) = (&polys[pr.i], &polys[pr.j]);
        let s = ring.spoly(f, g);
        if s.is_empty() {
            continue;
        }
        let reducers: Vec<&Poly> = active.iter().map(|&i| &polys[i]).collect();
        let (mut h, _) = ring.reduce(s, &reducers, false);
        if h.is_empty() {
            continue;
        }
        ring.normalize(&mut h);
        if h[0].0.is_one() {
            return vec![vec![(h[0].0, Zc::int(BigInt::one()))]];
        }
        update(&mut polys, &mut sugar, &mut active, &mut pairs, h, pr.sugar);
    }
    // interreduce
    let mut basis: Vec<Poly> = active.iter().map(|&i| polys[i].clone()).collect();
    basis.sort_by(|a, b| ring.cmp(&a[0].0, &b[0].0));
    let mut out: Vec<Poly> = Vec::with_capacity(basis.len());
    for k in 0..basis.len() {
        let others: Vec<&Poly> = basis.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, p)| p).collect();
        let head = basis[k][0].clone();
        let tail: Poly = basis[k][1..].to_vec();
        let (mut r, mult) = ring.reduce(tail, &others, true);
        // r = mult * NF(tail); rescale head accordingly
        let hm = &head.1.scale(mult.numer());
        let mut full = vec![(head.0, hm.clone())];
        let den = mult.denom().clone();
        for t in r.iter_mut() {
            t.1 = t.1.scale(&den);
        }
        full.extend(r);
        ring.normalize(&mut full);
        out.push(full);
    }
    out
}

pub(crate) fn update<C>(
    polys: &mut Vec<Vec<(Exp, C)>>,
    sugar: &mut Vec<u32>,
    active: &mut Vec<usize>,
    pairs: &mut Vec<Pair>,
    h: Vec<(Exp, C)>,
    s: u32,
) {
    let hi = polys.len();
    let hl = h[0].0;
    polys.push(h);
    sugar.push(s);
    let mk = |g: usize| -> Pair {
        let gl = polys[g][0].0;
        let lcm = hl.lcm(&gl);
        let sg = sugar[g] + (lcm.deg - gl.deg);
        let sh = s + (lcm.deg - hl.deg);
        Pair { i: g, j: hi, lcm, sugar: sg.max(sh) }
    };
    let mut c: Vec<(Pair, bool)> = active.iter().map(|&g| (mk(g), polys[g][0].0.coprime(&hl))).collect();
    let mut d: Vec<(Pair, bool)> = Vec::new();
    while let Some((p, coprime)) = c.pop() {
        let dominated = c.iter().chain(d.iter()).any(|(o, _)| o.lcm.divides(&p.lcm));
        if coprime || !dominated {
            d.push((p, coprime));
        }
    }
    pairs.retain(|p| {
        !(hl.divides(&p.lcm) && hl.lcm(&polys[p.i][0].0) != p.lcm && hl.lcm(&polys[p.j][0].0) != p.lcm)
    });
    pairs.extend(d.into_iter().filter(|(_, cp)| !cp).map(|(p, _)| p));
    active.retain(|&g| !hl.divides(&polys[g][0].0));
    active.push(hi);
}

/// A Groebner basis together with the order it is reduced for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealBasis {
    pub generators: Vec<MultiPoly>,
    pub order: MonomialOrder,
    pub reduced: bool,
}

impl IdealBasis {
    pub fn is_unit(&self) -> bool {
        self.generators.len() == 1 && self.generators[0].is_constant()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.generators.iter().map(|g| leading_monomial(g, self.order)).collect()
    }
}

/// Leading monomial of a nonzero polynomial under `order`.
pub fn leading_monomial(f: &MultiPoly, order: MonomialOrder) -> Monomial {
    let n = f.nvars();
    let m = f
        .terms()
        .keys()
        .max_by(|a, b| cmp_exp(order, n, &Exp::from_slice(&a.0), &Exp::from_slice(&b.0)))
        .expect("nonzero polynomial");
    m.clone()
}

/// Reduced Groebner basis; generators are monic and sorted by increasing leading monomial.
pub fn groebner_basis(gens: &[MultiPoly], order: MonomialOrder) -> Result<IdealBasis> {
    let first = gens.first().ok_or(Error::InvalidParameters("empty generator list".into()))?;
    for g in gens {
        if !g.same_ring(first) {
            return Err(Error::RingMismatch);
        }
    }
    let ring = Ring::new(first.field(), first.nvars(), order)?;
    let input: Vec<Poly> = gens.iter().map(|g| ring.from_multi(g).0).collect();
    let basis = match modular_buchberger(&ring, &input) {
        Some(b) => b,
        None => buchberger(&ring, input),
    };
    Ok(IdealBasis { generators: basis_to_multi(&ring, &basis, first), order, reduced: true })
}

pub(crate) fn basis_to_multi(ring: &Ring, basis: &[Poly], like: &MultiPoly) -> Vec<MultiPoly> {
    if basis.is_empty() {
        return Vec::new();
    }
    basis
        .iter()
        .map(|p| {
            let lc = ring.to_quad(&p[0].1);
            let inv = lc.inv(&ring.field).expect("nonzero");
            ring.to_multi(p, like, &inv)
        })
        .collect()
}

/// Remainder of `f` on division by a reduced basis.
pub fn normal_form(f: &MultiPoly, basis: &IdealBasis) -> Result<MultiPoly> {
    if let Some(g) = basis.generators.first() {
        if !g.same_ring(f) {
            return Err(Error::RingMismatch);
        }
    }
    if f.is_zero() || basis.generators.is_empty() {
        return Ok(f.clone());
    }
    let ring = Ring::new(f.field(), f.nvars(), basis.order)?;
    let gs: Vec<Poly> = basis.generators.iter().map(|g| ring.from_multi(g).0).collect();
    Ok(reduce_with(&ring, f, &gs))
}

pub(crate) fn reduce_with(ring: &Ring, f: &MultiPoly, gs: &[Poly]) -> MultiPoly {
    let (p, l) = ring.from_multi(f);
    let refs: Vec<&Poly> = gs.iter().collect();
    let (r, mult) = ring.reduce(p, &refs, true);
    let total = mult * BigRational::from_integer(l);
    ring.to_multi(&r, f, &Quad::from_rational(total.recip()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::vars_of;

    fn gens(names: &[&str]) -> Vec<MultiPoly> {
        MultiPoly::gens(&vars_of(names), &Field::rationals())
    }

    #[test]
    fn already_reduced() {
        let g = gens(&["x", "y"]);
        let b = groebner_basis(&[g[0].clone(), g[1].clone()], MonomialOrder::Grevlex).unwrap();
        assert_eq!(b.generators, vec![g[1].clone(), g[0].clone()]);
    }

    #[test]
    fn lex_eliminant() {
        let g = gens(&["x", "y"]);
        let f1 = &g[0].pow(2) - &g[1];
        let f2 = &g[1].pow(2) - &g[0];
        let b = groebner_basis(&[f1, f2], MonomialOrder::Lex).unwrap();
        let elim = &g[1].pow(4) - &g[1];
        assert!(b.generators.contains(&elim));
    }

    #[test]
    fn normal_form_keeps_scale() {
        let g = gens(&["x", "y"]);
        let b = groebner_basis(&[g[0].pow(2), g[1].pow(3)], MonomialOrder::Grevlex).unwrap();
        let xy = (&g[0] * &g[1]).scale(&Quad::from_int(3));
        assert_eq!(normal_form(&xy, &b).unwrap(), xy);
        let s = &(&g[0].pow(2) + &g[1].pow(3)) + &xy;
        assert_eq!(normal_form(&s, &b).unwrap(), xy);
    }

    #[test]
    fn unit_ideal() {
        let g = gens(&["x", "y"]);
        let one = g[0].one_like();
        let b = groebner_basis(&[&g[0] - &one, g[0].clone()], MonomialOrder::Grevlex).unwrap();
        assert!(b.is_unit());
    }

    #[test]
    fn eisenstein_coefficients() {
        let f = Field::eisenstein();
        let g = MultiPoly::gens(&vars_of(&["x", "y"]), &f);
        let w = g[0].constant_like(Quad::theta());
        // x - w*y, x^2 + y^2: y^2 (w^2 + 1) = -w y^2
        let b = groebner_basis(&[&g[0] - &(&w * &g[1]), &g[0].pow(2) + &g[1].pow(2)], MonomialOrder::Lex).unwrap();
        assert_eq!(b.generators.len(), 2);
        assert!(b.generators.contains(&g[1].pow(2)));
    }
}
