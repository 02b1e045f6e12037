//! Multi-modular Groebner bases.
//!
//! The reduced basis is computed modulo word-size primes, lifted by Chinese
//! remaindering and rational reconstruction, and accepted only after an exact
//! check: every input reduces to zero and every critical pair of the candidate
//! reduces to zero over the field itself.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::groebner::{next_pair, update, Exp, Pair, Poly, Ring, Zc};

type Fp = Vec<(Exp, u64)>;

const PRIME_CEILING: u64 = 1 << 31;
const MAX_PRIMES: usize = 4000;

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
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

pub(crate) fn inv(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

/// Tonelli-Shanks square root modulo an odd prime.
fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    if powmod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    let (mut q, mut s) = (p - 1, 0);
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let z = (2..p).find(|&z| powmod(z, (p - 1) / 2, p) == p - 1)?;
    let mut c = powmod(z, q, p);
    let mut x = powmod(a, q.div_ceil(2), p);
    let mut t = powmod(a, q, p);
    let mut m = s;
    while t != 1 {
        let mut i = 1;
        let mut t2 = t * t % p;
        while t2 != 1 {
            t2 = t2 * t2 % p;
            i += 1;
        }
        let b = powmod(c, 1 << (m - i - 1), p);
        x = x * b % p;
        c = b * b % p;
        t = t * c % p;
        m = i;
    }
    Some(x)
}

pub(crate) fn residue(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits")
}

fn image(c: &Zc, p: u64, r: u64) -> u64 {
    let a = residue(&c.a, p);
    if c.b.is_zero() {
        return a;
    }
    (a + residue(&c.b, p) * r) % p
}

/// f - c*m*g over F_p with both operands sorted descending; heads assumed to cancel when `skip`.
fn fp_combine(ring: &Ring, f: &[(Exp, u64)], g: &[(Exp, u64)], c: u64, m: &Exp, p: u64, skip: bool) -> Fp {
    let (f, g) = if skip { (&f[1..], &g[1..]) } else { (f, g) };
    let nc = (p - c) % p;
    let mut out = Vec::with_capacity(f.len() + g.len());
    let (mut i, mut j) = (0, 0);
    while i < f.len() || j < g.len() {
        if j == g.len() {
            out.extend_from_slice(&f[i..]);
            break;
        }
        let ge = g[j].0.mul(m);
        if i == f.len() {
            out.push((ge, g[j].1 * nc % p));
            j += 1;
            continue;
        }
        match ring.cmp(&f[i].0, &ge) {
            std::cmp::Ordering::Greater => {
                out.push(f[i]);
                i += 1;
            }
            std::cmp::Ordering::Less => {
                out.push((ge, g[j].1 * nc % p));
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let v = (f[i].1 + g[j].1 * nc) % p;
                if v != 0 {
                    out.push((ge, v));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn fp_monic(f: &mut Fp, p: u64) {
    if let Some(&(_, lc)) = f.first() {
        if lc != 1 {
            let li = inv(lc, p);
            for t in f.iter_mut() {
                t.1 = t.1 * li % p;
            }
        }
    }
}

/// Reduction by monic polynomials.
fn fp_reduce(ring: &Ring, mut f: Fp, basis: &[&Fp], p: u64, full: bool) -> Fp {
    let mut r: Fp = Vec::new();
    while !f.is_empty() {
        let lead = f[0].0;
        match basis.iter().find(|g| g[0].0.divides(&lead)) {
            Some(g) => {
                let m = lead.div(&g[0].0);
                f = fp_combine(ring, &f, g, f[0].1, &m, p, true);
            }
            None => {
                if !full {
                    return f;
                }
                r.push(f.remove(0));
            }
        }
    }
    r
}

fn fp_spoly(ring: &Ring, f: &Fp, g: &Fp, p: u64) -> Fp {
    let lcm = f[0].0.lcm(&g[0].0);
    let mf = lcm.div(&f[0].0);
    let mg = lcm.div(&g[0].0);
    let fm: Fp = f.iter().map(|(e, c)| (e.mul(&mf), *c)).collect();
    fp_combine(ring, &fm, g, 1, &mg, p, true)
}

/// Reduced monic basis modulo `p`, sorted by increasing leading monomial.
fn fp_buchberger(ring: &Ring, input: Vec<Fp>, p: u64) -> Vec<Fp> {
    let mut polys: Vec<Fp> = Vec::new();
    let mut sugar: Vec<u32> = Vec::new();
    let mut active: Vec<usize> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut inputs = input;
    inputs.sort_by(|a, b| ring.cmp(&a[0].0, &b[0].0));
    let unit = |e: Exp| vec![vec![(e, 1)]];
    for f in inputs {
        let reducers: Vec<&Fp> = active.iter().map(|&i| &polys[i]).collect();
        let mut h = fp_reduce(ring, f, &reducers, p, false);
        if h.is_empty() {
            continue;
        }
        fp_monic(&mut h, p);
        if h[0].0.is_one() {
            return unit(h[0].0);
        }
        let s = h.iter().map(|t| t.0.deg).max().unwrap_or(0);
        update(&mut polys, &mut sugar, &mut active, &mut pairs, h, s);
    }
    while !pairs.is_empty() {
        let pr = next_pair(ring, &mut pairs);
        let s = fp_spoly(ring, &polys[pr.i], &polys[pr.j], p);
        if s.is_empty() {
            continue;
        }
        let reducers: Vec<&Fp> = active.iter().map(|&i| &polys[i]).collect();
        let mut h = fp_reduce(ring, s, &reducers, p, false);
        if h.is_empty() {
            continue;
        }
        fp_monic(&mut h, p);
        if h[0].0.is_one() {
            return unit(h[0].0);
        }
        update(&mut polys, &mut sugar, &mut active, &mut pairs, h, pr.sugar);
    }
    let mut basis: Vec<Fp> = active.iter().map(|&i| polys[i].clone()).collect();
    basis.sort_by(|a, b| ring.cmp(&a[0].0, &b[0].0));
    (0..basis.len())
        .map(|k| {
            let others: Vec<&Fp> = basis.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, g)| g).collect();
            let mut out = vec![basis[k][0]];
            out.extend(fp_reduce(ring, basis[k][1..].to_vec(), &others, p, true));
            out
        })
        .collect()
}

/// Images of theta' modulo `p`: the root(s) of its minimal polynomial, or 0 over Q.
fn theta_images(ring: &Ring, p: u64) -> Option<Vec<u64>> {
    if !ring.quadratic {
        return Some(vec![0]);
    }
    let b = residue(&ring.qb, p);
    let c = residue(&ring.qc, p);
    let disc = (b * b % p + 4 * (p - c)) % p;
    if disc == 0 {
        return None;
    }
    let s = sqrt_mod(disc, p)?;
    let half = inv(2, p);
    let nb = (p - b) % p;
    Some(vec![(nb + s) % p * half % p, (nb + p - s) % p * half % p])
}

type Shape = Vec<Vec<Exp>>;

fn shape_of(basis: &[Fp]) -> Shape {
    basis.iter().map(|g| g.iter().map(|t| t.0).collect()).collect()
}

/// Coefficients (a, b) of a + b*theta' modulo p, one image per theta root.
fn combine_images(images: &[Vec<Fp>], roots: &[u64], p: u64) -> Vec<Vec<(u64, u64)>> {
    if images.len() == 1 {
        return images[0].iter().map(|g| g.iter().map(|t| (t.1, 0)).collect()).collect();
    }
    let dr = inv((roots[0] + p - roots[1]) % p, p);
    images[0]
        .iter()
        .zip(&images[1])
        .map(|(g1, g2)| {
            g1.iter()
                .zip(g2)
                .map(|(t1, t2)| {
                    let b = (t1.1 + p - t2.1) % p * dr % p;
                    let a = (t1.1 + p - b * roots[0] % p) % p;
                    (a, b)
                })
                .collect()
        })
        .collect()
}

pub(crate) fn rational_reconstruction(u: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), u.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let (q, r) = r0.div_rem(&r1);
        r0 = std::mem::replace(&mut r1, r);
        let t = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t);
    }
    if t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(BigRational::new(r1, t1))
}

struct Accumulator {
    shape: Shape,
    modulus: BigInt,
    residues: Vec<Vec<(BigInt, BigInt)>>,
    primes: usize,
    next_attempt: usize,
}

impl Accumulator {
    fn new(shape: Shape) -> Accumulator {
        let residues = shape.iter().map(|g| vec![(BigInt::zero(), BigInt::zero()); g.len()]).collect();
        Accumulator { shape, modulus: BigInt::one(), residues, primes: 0, next_attempt: 1 }
    }

    fn absorb(&mut self, vals: &[Vec<(u64, u64)>], p: u64) {
        let pb = BigInt::from(p);
        let minv = inv(residue(&self.modulus, p), p);
        let lift = |old: &BigInt, v: u64, m: &BigInt| -> BigInt {
            let t = (v + p - residue(old, p)) % p * minv % p;
            old + m * BigInt::from(t)
        };
        for (row, vrow) in self.residues.iter_mut().zip(vals) {
            for (slot, v) in row.iter_mut().zip(vrow) {
                *slot = (lift(&slot.0, v.0, &self.modulus), lift(&slot.1, v.1, &self.modulus));
            }
        }
        self.modulus *= pb;
        self.primes += 1;
    }

    fn reconstruct_one(&self, x: &(BigInt, BigInt)) -> Option<(BigRational, BigRational)> {
        Some((rational_reconstruction(&x.0, &self.modulus)?, rational_reconstruction(&x.1, &self.modulus)?))
    }

    /// Cheap probe on the last coefficient of each element before a full attempt.
    fn reconstruct(&self) -> Option<Vec<Vec<(BigRational, BigRational)>>> {
        for row in &self.residues {
            self.reconstruct_one(row.last()?)?;
        }
        self.residues.iter().map(|row| row.iter().map(|x| self.reconstruct_one(x)).collect()).collect()
    }
}

pub(crate) fn rational_residue(x: &BigRational, p: u64) -> Option<u64> {
    let d = residue(x.denom(), p);
    if d == 0 {
        return None;
    }
    Some(residue(x.numer(), p) * inv(d, p) % p)
}

fn matches(cand: &[Vec<(BigRational, BigRational)>], vals: &[Vec<(u64, u64)>], p: u64) -> bool {
    cand.iter().zip(vals).all(|(cr, vr)| {
        cr.iter().zip(vr).all(|(c, v)| rational_residue(&c.0, p) == Some(v.0) && rational_residue(&c.1, p) == Some(v.1))
    })
}

/// Clears denominators of a candidate element; the result is primitive with positive lead.
fn to_integral(ring: &Ring, exps: &[Exp], coeffs: &[(BigRational, BigRational)]) -> Poly {
    let mut l = BigInt::one();
    for (a, b) in coeffs {
        l = l.lcm(a.denom()).lcm(b.denom());
    }
    let lr = BigRational::from_integer(l);
    let mut p: Poly = exps
        .iter()
        .zip(coeffs)
        .map(|(e, (a, b))| (*e, Zc { a: (a * &lr).to_integer(), b: (b * &lr).to_integer() }))
        .collect();
    ring.normalize(&mut p);
    p
}

/// Exact check that `basis` is a Groebner basis whose ideal contains every input.
fn verify(ring: &Ring, input: &[Poly], basis: &[Poly]) -> bool {
    let refs: Vec<&Poly> = basis.iter().collect();
    for f in input {
        if !ring.reduce(f.clone(), &refs, false).0.is_empty() {
            return false;
        }
    }
    let mut polys: Vec<Poly> = Vec::new();
    let mut sugar = Vec::new();
    let mut active = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    for g in basis {
        update(&mut polys, &mut sugar, &mut active, &mut pairs, g.clone(), 0);
    }
    pairs.into_iter().all(|pr| {
        let s = ring.spoly(&polys[pr.i], &polys[pr.j]);
        s.is_empty() || ring.reduce(s, &refs, false).0.is_empty()
    })
}

/// Reduced basis in the integral model (primitive elements, increasing leading
/// monomials), or `None` when no consistent lift was found within the prime budget.
pub(crate) fn modular_buchberger(ring: &Ring, input: &[Poly]) -> Option<Vec<Poly>> {
    let input: Vec<Poly> = input.iter().filter(|f| !f.is_empty()).cloned().collect();
    if input.is_empty() {
        return Some(Vec::new());
    }
    let mut accs: Vec<Accumulator> = Vec::new();
    let mut pending: Option<(usize, Vec<Vec<(BigRational, BigRational)>>)> = None;
    let mut p = PRIME_CEILING;
    let mut used = 0;
    let mut tried = 0;
    while used < MAX_PRIMES && tried < 4 * MAX_PRIMES {
        p -= 1;
        while !is_prime(p) {
            p -= 1;
        }
        tried += 1;
        let Some(roots) = theta_images(ring, p) else { continue };
        let mut images = Vec::new();
        let mut bad = false;
        for &r in &roots {
            let mut fs = Vec::with_capacity(input.len());
            for f in &input {
                let mut g: Fp = f.iter().map(|(e, c)| (*e, image(c, p, r))).filter(|t| t.1 != 0).collect();
                if g.first().map(|t| t.0) != Some(f[0].0) {
                    bad = true;
                    break;
                }
                fp_monic(&mut g, p);
                fs.push(g);
            }
            if bad {
                break;
            }
            images.push(fp_buchberger(ring, fs, p));
        }
        if bad || (images.len() == 2 && shape_of(&images[0]) != shape_of(&images[1])) {
            continue;
        }
        used += 1;
        let shape = shape_of(&images[0]);
        let vals = combine_images(&images, &roots, p);
        let k = match accs.iter().position(|a| a.shape == shape) {
            Some(k) => k,
            None => {
                accs.push(Accumulator::new(shape));
                accs.len() - 1
            }
        };
        if let Some((pk, cand)) = pending.take() {
            if pk == k && matches(&cand, &vals, p) {
                let exps = &accs[k].shape;
                let basis: Vec<Poly> = exps.iter().zip(&cand).map(|(e, c)| to_integral(ring, e, c)).collect();
                if verify(ring, &input, &basis) {
                    return Some(basis);
                }
            }
        }
        let acc = &mut accs[k];
        acc.absorb(&vals, p);
        if acc.primes >= acc.next_attempt {
            acc.next_attempt = acc.primes + acc.primes.div_ceil(4).max(1);
            if let Some(cand) = acc.reconstruct() {
                pending = Some((k, cand));
            }
        }
    }
    None
}
