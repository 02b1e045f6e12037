//! Multivariate gcd and resultants by subresultant remainder sequences.
//!
//! A polynomial is viewed as univariate in one main variable with coefficients
//! in the same ring that do not involve that variable.

use std::collections::BTreeMap;

use super::upoly;
use super::MultiPoly;
use crate::error::{Error, Result};

type Coeffs = Vec<MultiPoly>;

fn cdeg(a: &Coeffs) -> Option<usize> {
    a.iter().rposition(|c| !c.is_zero())
}

fn ctrim(a: &mut Coeffs) {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
}

/// lc(b)^(deg a - deg b + 1) * a  mod  b.
fn prem(a: &Coeffs, b: &Coeffs) -> Coeffs {
    let db = cdeg(b).expect("nonzero divisor");
    let lb = &b[db];
    let mut r = a.clone();
    ctrim(&mut r);
    let mut e = (r.len() as i64) - (db as i64);
    while let Some(dr) = cdeg(&r) {
        if dr < db {
            break;
        }
        let lr = r[dr].clone();
        let s = dr - db;
        for c in r.iter_mut() {
            *c = &*c * lb;
        }
        for (j, bj) in b[..=db].iter().enumerate() {
            r[s + j] = &r[s + j] - &(&lr * bj);
        }
        ctrim(&mut r);
        e -= 1;
    }
    if e > 0 {
        let m = lb.pow(e as u32);
        for c in r.iter_mut() {
            *c = &*c * &m;
        }
    }
    r
}

fn cdiv(a: &Coeffs, d: &MultiPoly) -> Coeffs {
    a.iter().map(|c| c.exact_div(d).expect("exact division in remainder sequence")).collect()
}

/// gcd of a list, short-circuiting at constants.
fn gcd_list<'a>(items: impl IntoIterator<Item = &'a MultiPoly>, like: &MultiPoly) -> MultiPoly {
    let mut g = like.zero_like();
    for c in items {
        if c.is_zero() {
            continue;
        }
        g = if g.is_zero() { c.monic() } else { gcd_poly(&g, c) };
        if g.is_constant() {
            return like.one_like();
        }
    }
    g
}

fn univariate_gcd(a: &MultiPoly, b: &MultiPoly, v: usize) -> Option<MultiPoly> {
    let ua = a.as_univariate(v)?;
    let ub = b.as_univariate(v)?;
    let g = upoly::gcd(&ua, &ub, &a.field);
    Some(MultiPoly::from_univariate(a, v, &g))
}

/// Greatest common divisor, monic under grevlex; gcd(0, 0) = 0.
pub fn gcd_poly(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    assert!(a.same_ring(b), "ring mismatch");
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return a.one_like();
    }
    let n = a.nvars();
    // a variable present in only one argument cannot occur in the gcd
    for v in 0..n {
        let (ina, inb) = (a.occurs(v), b.occurs(v));
        if ina && !inb {
            let c = gcd_list(a.univariate_coeffs(v).iter(), a);
            return gcd_poly(&c, b);
        }
        if inb && !ina {
            let c = gcd_list(b.univariate_coeffs(v).iter(), b);
            return gcd_poly(a, &c);
        }
    }
    let v = (0..n)
        .filter(|&v| a.occurs(v))
        .min_by_key(|&v| (a.degree_in(v).max(b.degree_in(v)), std::cmp::Reverse(v)))
        .expect("non-constant");
    if let Some(g) = univariate_gcd(a, b, v) {
        return g;
    }
    let ac = a.univariate_coeffs(v);
    let bc = b.univariate_coeffs(v);
    let ca = gcd_list(ac.iter(), a);
    let cb = gcd_list(bc.iter(), b);
    let d = gcd_poly(&ca, &cb);
    let pa = cdiv(&ac, &ca);
    let pb = cdiv(&bc, &cb);
    let g = subresultant_gcd(pa, pb);
    let cg = gcd_list(g.iter(), a);
    let g = cdiv(&g, &cg);
    let g = MultiPoly::from_univariate_coeffs(&g, v, a);
    (&d * &g).monic()
}

fn subresultant_gcd(mut a: Coeffs, mut b: Coeffs) -> Coeffs {
    if cdeg(&b) > cdeg(&a) {
        std::mem::swap(&mut a, &mut b);
    }
    let one = a[0].one_like();
    let mut g = one.clone();
    let mut h = one.clone();
    loop {
        let da = cdeg(&a).unwrap();
        let db = match cdeg(&b) {
            None => return a,
            Some(d) => d,
        };
        let delta = (da - db) as u32;
        let r = prem(&a, &b);
        match cdeg(&r) {
            None => return b,
            Some(0) => return vec![one],
            Some(_) => {}
        }
        a = b;
        let denom = &g * &h.pow(delta);
        b = cdiv(&r, &denom);
        g = a[cdeg(&a).unwrap()].clone();
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => g.pow(delta).exact_div(&h.pow(delta - 1)).expect("exact"),
        };
    }
}

/// Pseudo-remainder lc(b)^(deg a - deg b + 1) * a mod b in variable `v`.
pub fn pseudo_remainder(a: &MultiPoly, b: &MultiPoly, v: usize) -> MultiPoly {
    let mut ac = a.univariate_coeffs(v);
    ctrim(&mut ac);
    let mut bc = b.univariate_coeffs(v);
    ctrim(&mut bc);
    let r = prem(&ac, &bc);
    MultiPoly::from_univariate_coeffs(&r, v, a)
}

/// Resultant with respect to variable `v`; the result does not involve `v`.
pub fn resultant(a: &MultiPoly, b: &MultiPoly, v: usize) -> MultiPoly {
    assert!(a.same_ring(b), "ring mismatch");
    if a.is_zero() || b.is_zero() {
        return a.zero_like();
    }
    let mut ac = a.univariate_coeffs(v);
    let mut bc = b.univariate_coeffs(v);
    ctrim(&mut ac);
    ctrim(&mut bc);
    let mut s = false;
    let (da0, db0) = (ac.len() - 1, bc.len() - 1);
    if da0 < db0 {
        std::mem::swap(&mut ac, &mut bc);
        if da0 % 2 == 1 && db0 % 2 == 1 {
            s = !s;
        }
    }
    let one = a.one_like();
    if cdeg(&bc) == Some(0) {
        let r = bc[0].pow(cdeg(&ac).unwrap() as u32);
        return if s { r.neg() } else { r };
    }
    let mut g = one.clone();
    let mut h = one.clone();
    loop {
        let da = cdeg(&ac).unwrap();
        let db = cdeg(&bc).unwrap();
        let delta = (da - db) as u32;
        if da % 2 == 1 && db % 2 == 1 {
            s = !s;
        }
        let r = prem(&ac, &bc);
        ac = bc;
        bc = if r.is_empty() { Vec::new() } else { cdiv(&r, &(&g * &h.pow(delta))) };
        g = ac[cdeg(&ac).unwrap()].clone();
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => g.pow(delta).exact_div(&h.pow(delta - 1)).expect("exact"),
        };
        match cdeg(&bc) {
            None => return a.zero_like(),
            Some(0) => {
                let da = cdeg(&ac).unwrap() as u32;
                let lb = &bc[0];
                let hres = if da == 0 {
                    h
                } else {
                    lb.pow(da).exact_div(&h.pow(da - 1)).expect("exact")
                };
                return if s { hres.neg() } else { hres };
            }
            Some(_) => {}
        }
    }
}

/// gcd of the coefficients of `p` viewed as a polynomial in the variables `vars`.
pub fn content_wrt(p: &MultiPoly, vars: &[usize]) -> MultiPoly {
    let mut groups: BTreeMap<Vec<u32>, MultiPoly> = BTreeMap::new();
    for (m, c) in p.terms() {
        let key: Vec<u32> = vars.iter().map(|&i| m.0[i]).collect();
        let mut rest = m.clone();
        for &i in vars {
            rest.0[i] = 0;
        }
        groups.entry(key).or_insert_with(|| p.zero_like()).add_term(rest, c.clone());
    }
    gcd_list(groups.values(), p)
}

/// Product of the distinct irreducible factors, monic.
pub fn squarefree_part(f: &MultiPoly) -> Result<MultiPoly> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.is_constant() {
        return Ok(f.one_like());
    }
    let mut g = f.clone();
    for i in 0..f.nvars() {
        if g.is_constant() {
            break;
        }
        let d = f.partial_derivative(i);
        if !d.is_zero() {
            g = gcd_poly(&g, &d);
        }
    }
    Ok(f.exact_div(&g).expect("gcd divides").monic())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::afield::Field;
    use crate::poly::vars_of;

    fn gens(names: &[&str]) -> Vec<MultiPoly> {
        MultiPoly::gens(&vars_of(names), &Field::rationals())
    }

    #[test]
    fn monomial_gcd_example() {
        let g = gens(&["X", "Y"]);
        let a = &(&g[0] * &g[0]) * &g[1];
        let b = &(&g[1] * &g[1]) * &g[0];
        assert_eq!(gcd_poly(&a, &b), &g[0] * &g[1]);
    }

    #[test]
    fn shared_linear_factor() {
        let g = gens(&["X", "Y", "Z", "W"]);
        let s = &g[0] + &g[1];
        let a = &s.pow(2) * &g[2];
        let b = &s * &g[3];
        assert_eq!(gcd_poly(&a, &b), s);
    }

    #[test]
    fn resultant_of_linear_forms() {
        // Res_x(x - y, x + y) = 2y up to sign
        let g = gens(&["x", "y"]);
        let r = resultant(&(&g[0] - &g[1]), &(&g[0] + &g[1]), 0);
        assert_eq!(r.monic(), g[1]);
        // Res_x(x^2 - y, x - 1) = 1 - y
        let r = resultant(&(&g[0].pow(2) - &g[1]), &(&g[0] - &g[0].one_like()), 0);
        assert_eq!(r, &g[0].one_like() - &g[1]);
    }

    #[test]
    fn squarefree_examples() {
        let g = gens(&["X", "Y", "Z"]);
        let s = &g[0] + &g[1];
        let f = &s.pow(2) * &g[2];
        assert_eq!(squarefree_part(&f).unwrap(), (&s * &g[2]).monic());
        let xyz = &(&g[0] * &g[1]) * &g[2];
        assert_eq!(squarefree_part(&xyz).unwrap(), xyz);
    }

    #[test]
    fn content_in_subset() {
        let g = gens(&["x", "t"]);
        // (t^2 - 1) * x + (t - 1)  has x-content t - 1
        let one = g[0].one_like();
        let p = &(&(&g[1].pow(2) - &one) * &g[0]) + &(&g[1] - &one);
        assert_eq!(content_wrt(&p, &[0]), &g[1] - &one);
    }
}
