//! Sparse multivariate polynomials over Q or a quadratic field.

mod gcd;
mod power;
pub mod roots;
pub mod upoly;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::afield::{rat, Field, FieldElement, Quad, Rational};
use crate::error::{Error, Result};

pub use gcd::{content_wrt, gcd_poly, pseudo_remainder, resultant, squarefree_part};
pub use power::perfect_power_test;

/// Exponent vector, ordered by graded reverse lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Monomial {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize, e: u32) -> Monomial {
        let mut v = vec![0; n];
        v[i] = e;
        Monomial(v)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, o: &Monomial) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a <= b)
    }

    pub fn div(&self, o: &Monomial) -> Option<Monomial> {
        if o.divides(self) {
            Some(Monomial(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect()))
        } else {
            None
        }
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

pub fn grevlex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    if da != db {
        return da.cmp(&db);
    }
    for i in (0..a.len()).rev() {
        if a[i] != b[i] {
            // smaller exponent in the last differing variable wins
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        grevlex_cmp(&self.0, &other.0)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DegreeInfo {
    pub total_degree: u32,
    pub homogeneous: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

/// Polynomial with coefficients in `field`, in the named variables.
#[derive(Clone, Debug)]
pub struct MultiPoly {
    vars: Arc<[String]>,
    field: Field,
    terms: BTreeMap<Monomial, Quad>,
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        self.same_ring(other) && self.terms == other.terms
    }
}

impl Eq for MultiPoly {}

pub fn vars_of(names: &[&str]) -> Arc<[String]> {
    names.iter().map(|s| s.to_string()).collect::<Vec<_>>().into()
}

impl MultiPoly {
    pub fn zero(vars: Arc<[String]>, field: Field) -> MultiPoly {
        MultiPoly { vars, field, terms: BTreeMap::new() }
    }

    pub fn constant(vars: Arc<[String]>, field: Field, c: Quad) -> MultiPoly {
        let n = vars.len();
        let mut p = MultiPoly::zero(vars, field);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(n), c);
        }
        p
    }

    pub fn var(vars: Arc<[String]>, field: Field, i: usize) -> MultiPoly {
        let n = vars.len();
        let mut p = MultiPoly::zero(vars, field);
        p.terms.insert(Monomial::var(n, i, 1), Quad::one());
        p
    }

    /// All coordinate variables of a ring at once.
    pub fn gens(vars: &Arc<[String]>, field: &Field) -> Vec<MultiPoly> {
        (0..vars.len()).map(|i| MultiPoly::var(vars.clone(), field.clone(), i)).collect()
    }

    pub fn from_terms(
        vars: Arc<[String]>,
        field: Field,
        terms: impl IntoIterator<Item = (Vec<u32>, Quad)>,
    ) -> MultiPoly {
        let mut p = MultiPoly::zero(vars, field);
        for (e, c) in terms {
            assert_eq!(e.len(), p.vars.len(), "exponent vector length");
            p.add_term(Monomial(e), c);
        }
        p
    }

    pub fn vars(&self) -> &Arc<[String]> {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Quad> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn same_ring(&self, o: &MultiPoly) -> bool {
        (Arc::ptr_eq(&self.vars, &o.vars) || self.vars == o.vars) && self.field == o.field
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn zero_like(&self) -> MultiPoly {
        MultiPoly::zero(self.vars.clone(), self.field.clone())
    }

    pub fn constant_like(&self, c: Quad) -> MultiPoly {
        MultiPoly::constant(self.vars.clone(), self.field.clone(), c)
    }

    pub fn one_like(&self) -> MultiPoly {
        self.constant_like(Quad::one())
    }

    pub fn var_like(&self, i: usize) -> MultiPoly {
        MultiPoly::var(self.vars.clone(), self.field.clone(), i)
    }

    pub fn add_term(&mut self, m: Monomial, c: Quad) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn constant_term(&self) -> Quad {
        self.terms.get(&Monomial::one(self.nvars())).cloned().unwrap_or_else(Quad::zero)
    }

    /// Leading term under grevlex.
    pub fn leading(&self) -> Option<(&Monomial, &Quad)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Quad {
        self.leading().map(|(_, c)| c.clone()).unwrap_or_else(Quad::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).min()
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0)
    }

    pub fn occurs(&self, i: usize) -> bool {
        self.terms.keys().any(|m| m.0[i] > 0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(|m| m.degree());
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn degree_info(&self) -> Result<DegreeInfo> {
        let total_degree = self.total_degree().ok_or(Error::ZeroPolynomial)?;
        Ok(DegreeInfo { total_degree, homogeneous: self.is_homogeneous() })
    }

    fn check_ring(&self, o: &MultiPoly) -> Result<()> {
        if self.same_ring(o) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn poly_arith(&self, o: &MultiPoly, op: PolyOp) -> Result<MultiPoly> {
        self.check_ring(o)?;
        Ok(match op {
            PolyOp::Add => self.add_unchecked(o),
            PolyOp::Sub => self.sub_unchecked(o),
            PolyOp::Mul => self.mul_unchecked(o),
        })
    }

    fn add_unchecked(&self, o: &MultiPoly) -> MultiPoly {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    fn sub_unchecked(&self, o: &MultiPoly) -> MultiPoly {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.neg());
        }
        r
    }

    fn mul_unchecked(&self, o: &MultiPoly) -> MultiPoly {
        let mut r = self.zero_like();
        if self.is_zero() || o.is_zero() {
            return r;
        }
        let (small, big) = if self.len() <= o.len() { (self, o) } else { (o, self) };
        for (m1, c1) in &small.terms {
            for (m2, c2) in &big.terms {
                r.add_term(m1.mul(m2), c1.mul(c2, &self.field));
            }
        }
        r
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            field: self.field.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &Quad) -> MultiPoly {
        if c.is_zero() {
            return self.zero_like();
        }
        MultiPoly {
            vars: self.vars.clone(),
            field: self.field.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a.mul(c, &self.field))).collect(),
        }
    }

    pub fn scale_rational(&self, r: &Rational) -> MultiPoly {
        self.scale(&Quad::from_rational(r.clone()))
    }

    pub fn mul_monomial(&self, mono: &Monomial, c: &Quad) -> MultiPoly {
        let mut r = self.zero_like();
        for (m, a) in &self.terms {
            r.terms.insert(m.mul(mono), a.mul(c, &self.field));
        }
        r.terms.retain(|_, c| !c.is_zero());
        r
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = self.one_like();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Divides by the grevlex leading coefficient.
    pub fn monic(&self) -> MultiPoly {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = c.inv(&self.field).expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    pub fn partial_derivative(&self, i: usize) -> MultiPoly {
        let mut r = self.zero_like();
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut nm = m.clone();
            nm.0[i] -= 1;
            r.add_term(nm, c.scale(&rat(e as i64)));
        }
        r
    }

    pub fn gradient(&self) -> Vec<MultiPoly> {
        (0..self.nvars()).map(|i| self.partial_derivative(i)).collect()
    }

    /// Replaces every variable by a polynomial of a common target ring.
    /// `images[i]` is the image of variable `i`.
    pub fn substitute(&self, images: &[MultiPoly]) -> Result<MultiPoly> {
        assert_eq!(images.len(), self.nvars(), "one image per variable");
        let target = &images[0];
        for im in images {
            if !im.same_ring(target) {
                return Err(Error::RingMismatch);
            }
        }
        if !target.field.contains(&self.field) {
            return Err(Error::RingMismatch);
        }
        // cache powers of each image
        let mut powers: Vec<Vec<MultiPoly>> = images.iter().map(|im| vec![im.one_like(), im.clone()]).collect();
        let mut r = target.zero_like();
        for (m, c) in &self.terms {
            let mut t = target.constant_like(c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e as usize];
            }
            r = &r + &t;
        }
        Ok(r)
    }

    /// Substitutes a constant for variable `i`, keeping the ring.
    pub fn eval_var(&self, i: usize, value: &Quad) -> MultiPoly {
        let mut r = self.zero_like();
        let mut pw: Vec<Quad> = vec![Quad::one()];
        for (m, c) in &self.terms {
            let e = m.0[i] as usize;
            while pw.len() <= e {
                let next = pw[pw.len() - 1].mul(value, &self.field);
                pw.push(next);
            }
            let mut nm = m.clone();
            nm.0[i] = 0;
            r.add_term(nm, c.mul(&pw[e], &self.field));
        }
        r
    }

    /// Evaluates at a full point.
    pub fn evaluate(&self, point: &[Quad]) -> Quad {
        assert_eq!(point.len(), self.nvars());
        let f = &self.field;
        let mut acc = Quad::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t = t.mul(&x.pow(e, f), f);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Same polynomial regarded over a field containing the current one.
    pub fn lift_to(&self, field: &Field) -> Result<MultiPoly> {
        if &self.field == field {
            return Ok(self.clone());
        }
        if !self.field.is_rational() {
            return Err(Error::FieldMismatch);
        }
        Ok(MultiPoly { vars: self.vars.clone(), field: field.clone(), terms: self.terms.clone() })
    }

    /// Moves the polynomial into a ring with other variable names; `map[i]` is
    /// the new index of old variable `i`.
    pub fn remap(&self, vars: Arc<[String]>, map: &[usize]) -> MultiPoly {
        let n = vars.len();
        let mut r = MultiPoly::zero(vars, self.field.clone());
        for (m, c) in &self.terms {
            let mut e = vec![0; n];
            for (i, &x) in m.0.iter().enumerate() {
                if x > 0 {
                    e[map[i]] += x;
                }
            }
            r.add_term(Monomial(e), c.clone());
        }
        r
    }

    /// Renames the variables keeping positions.
    pub fn rename(&self, vars: Arc<[String]>) -> MultiPoly {
        assert_eq!(vars.len(), self.nvars());
        MultiPoly { vars, field: self.field.clone(), terms: self.terms.clone() }
    }

    /// Drops variable `i`, which must not occur.
    pub fn drop_var(&self, i: usize) -> MultiPoly {
        debug_assert!(!self.occurs(i));
        let vars: Vec<String> = self.vars.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, v)| v.clone()).collect();
        let vars: Arc<[String]> = vars.into();
        let mut r = MultiPoly::zero(vars, self.field.clone());
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            e.remove(i);
            r.terms.insert(Monomial(e), c.clone());
        }
        r
    }

    /// Appends fresh variables at the end of the variable list.
    pub fn extend_vars(&self, extra: &[&str]) -> MultiPoly {
        let mut names: Vec<String> = self.vars.to_vec();
        names.extend(extra.iter().map(|s| s.to_string()));
        let n = names.len();
        let map: Vec<usize> = (0..self.nvars()).collect();
        let _ = n;
        self.remap(names.into(), &map)
    }

    /// Exact division; `None` if `d` does not divide `self`.
    pub fn exact_div(&self, d: &MultiPoly) -> Option<MultiPoly> {
        assert!(self.same_ring(d));
        let (lm, lc) = d.leading()?;
        let lc_inv = lc.inv(&self.field).ok()?;
        let mut rem = self.clone();
        let mut q = self.zero_like();
        while let Some((m, c)) = rem.leading() {
            let qm = m.div(lm)?;
            let qc = c.mul(&lc_inv, &self.field);
            rem = &rem - &d.mul_monomial(&qm, &qc);
            q.add_term(qm, qc);
        }
        Some(q)
    }

    /// Homogeneous component of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> MultiPoly {
        let mut r = self.zero_like();
        for (m, c) in &self.terms {
            if m.degree() == d {
                r.terms.insert(m.clone(), c.clone());
            }
        }
        r
    }

    /// Drops all terms of total degree >= `d`.
    pub fn truncate_below(&self, d: u32) -> MultiPoly {
        let mut r = self.zero_like();
        for (m, c) in &self.terms {
            if m.degree() < d {
                r.terms.insert(m.clone(), c.clone());
            }
        }
        r
    }

    /// Coefficients as a univariate polynomial in variable `i` (low to high);
    /// every coefficient lives in the same ring and is free of variable `i`.
    pub fn univariate_coeffs(&self, i: usize) -> Vec<MultiPoly> {
        let d = self.degree_in(i) as usize;
        let mut out = vec![self.zero_like(); d + 1];
        for (m, c) in &self.terms {
            let e = m.0[i] as usize;
            let mut nm = m.clone();
            nm.0[i] = 0;
            out[e].terms.insert(nm, c.clone());
        }
        out
    }

    /// Rebuilds a polynomial from univariate coefficients in variable `i`.
    pub fn from_univariate_coeffs(coeffs: &[MultiPoly], i: usize, like: &MultiPoly) -> MultiPoly {
        let mut r = like.zero_like();
        for (e, c) in coeffs.iter().enumerate() {
            for (m, a) in &c.terms {
                let mut nm = m.clone();
                nm.0[i] += e as u32;
                r.add_term(nm, a.clone());
            }
        }
        r
    }

    /// Coefficient list of a polynomial in which only variable `i` occurs.
    pub fn as_univariate(&self, i: usize) -> Option<Vec<Quad>> {
        let d = self.degree_in(i) as usize;
        let mut out = vec![Quad::zero(); d + 1];
        for (m, c) in &self.terms {
            if m.0.iter().enumerate().any(|(j, &e)| j != i && e > 0) {
                return None;
            }
            out[m.0[i] as usize] = c.clone();
        }
        Some(out)
    }

    /// Polynomial in variable `i` from coefficients (low to high).
    pub fn from_univariate(like: &MultiPoly, i: usize, coeffs: &[Quad]) -> MultiPoly {
        let n = like.nvars();
        let mut r = like.zero_like();
        for (e, c) in coeffs.iter().enumerate() {
            r.add_term(Monomial::var(n, i, e as u32), c.clone());
        }
        r
    }

    pub fn coefficient(&self, exps: &[u32]) -> Quad {
        self.terms.get(&Monomial(exps.to_vec())).cloned().unwrap_or_else(Quad::zero)
    }

    pub fn field_element(&self, q: Quad) -> FieldElement {
        self.field.element(q)
    }

    /// Canonical text: grevlex-descending terms, `^` powers, `*` between factors.
    pub fn to_canonical_string(&self) -> String {
        let sym = theta_symbol(&self.field);
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let mono = render_monomial(&self.vars, m);
            let (neg, body) = render_coeff(c, &sym);
            let term = match (mono.is_empty(), body.as_str()) {
                (true, _) => body,
                (false, "1") => mono,
                (false, b) => format!("{b}*{mono}"),
            };
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&term);
        }
        out
    }
}

/// Name used for theta in polynomial text.
pub fn theta_symbol(f: &Field) -> String {
    if f.is_eisenstein() {
        "w".into()
    } else if f.is_gaussian() {
        "i".into()
    } else {
        "theta".into()
    }
}

fn render_monomial(vars: &[String], m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (v, &e) in vars.iter().zip(&m.0) {
        match e {
            0 => {}
            1 => parts.push(v.clone()),
            _ => parts.push(format!("{v}^{e}")),
        }
    }
    parts.join("*")
}

/// Returns (is_negative, magnitude text); mixed values are parenthesised.
fn render_coeff(c: &Quad, sym: &str) -> (bool, String) {
    use num_traits::Signed;
    if c.a1.is_zero() {
        let neg = c.a0.is_negative();
        return (neg, c.a0.abs().to_string());
    }
    if c.a0.is_zero() {
        let neg = c.a1.is_negative();
        let a = c.a1.abs();
        return (neg, if a.is_one() { sym.to_string() } else { format!("{a}*{sym}") });
    }
    (false, format!("({})", c.render(sym)))
}

impl Serialize for MultiPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_canonical_string())
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical_string())
    }
}

impl<'a> std::ops::Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, o: &MultiPoly) -> MultiPoly {
        assert!(self.same_ring(o), "ring mismatch");
        self.add_unchecked(o)
    }
}

impl<'a> std::ops::Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, o: &MultiPoly) -> MultiPoly {
        assert!(self.same_ring(o), "ring mismatch");
        self.sub_unchecked(o)
    }
}

impl<'a> std::ops::Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, o: &MultiPoly) -> MultiPoly {
        assert!(self.same_ring(o), "ring mismatch");
        self.mul_unchecked(o)
    }
}

impl std::ops::Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly::neg(self)
    }
}

/// Small helper for building polynomials with integer coefficients in tests and
/// constructions: `c * x^e`.
pub fn int_term(like: &MultiPoly, c: i64, exps: &[u32]) -> MultiPoly {
    MultiPoly::from_terms(like.vars.clone(), like.field.clone(), [(exps.to_vec(), Quad::from_int(c))])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(names: &[&str]) -> (Arc<[String]>, Field) {
        (vars_of(names), Field::rationals())
    }

    #[test]
    fn cube_of_linear_sum() {
        let (v, f) = ring(&["X", "Y", "Z"]);
        let g = MultiPoly::gens(&v, &f);
        let s = &(&g[0] + &g[1]) + &g[2];
        let c = s.pow(3);
        assert_eq!(c.len(), 10);
        let mut coeffs: Vec<i64> = c.terms().values().map(|q| q.a0.to_integer().try_into().unwrap()).collect();
        coeffs.sort();
        assert_eq!(coeffs, vec![1, 1, 1, 3, 3, 3, 3, 3, 3, 6]);
        let xyz = &(&g[0] * &g[1]) * &g[2];
        assert!((&xyz * &xyz.zero_like()).is_zero());
    }

    #[test]
    fn grevlex_order() {
        // x > y > z; x*z vs y^2: grevlex gives y^2 > x*z
        assert_eq!(grevlex_cmp(&[0, 2, 0], &[1, 0, 1]), Ordering::Greater);
        assert_eq!(grevlex_cmp(&[2, 0, 0], &[0, 2, 0]), Ordering::Greater);
        assert_eq!(grevlex_cmp(&[0, 0, 3], &[1, 0, 0]), Ordering::Greater);
    }

    #[test]
    fn derivative_monomial_rule() {
        let (v, f) = ring(&["x1", "x2", "x3", "x4"]);
        let p = int_term(&MultiPoly::zero(v.clone(), f.clone()), 1, &[0, 0, 2, 2]);
        assert_eq!(p.partial_derivative(2), int_term(&p, 2, &[0, 0, 1, 2]));
        assert!(p.partial_derivative(0).is_zero());
    }

    #[test]
    fn degree_info_examples() {
        let (v, f) = ring(&["X", "Y", "Z"]);
        let g = MultiPoly::gens(&v, &f);
        let xyz = &(&g[0] * &g[1]) * &g[2];
        assert_eq!(xyz.degree_info().unwrap(), DegreeInfo { total_degree: 3, homogeneous: true });
        let q = &(&g[0] * &g[0]) + &g[1];
        assert_eq!(q.degree_info().unwrap(), DegreeInfo { total_degree: 2, homogeneous: false });
        assert_eq!(xyz.zero_like().degree_info(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn ring_mismatch() {
        let (v, f) = ring(&["X", "Y"]);
        let a = MultiPoly::var(v, f.clone(), 0);
        let b = MultiPoly::var(vars_of(&["U", "V"]), f, 0);
        assert_eq!(a.poly_arith(&b, PolyOp::Add), Err(Error::RingMismatch));
    }

    #[test]
    fn substitution_of_powers() {
        let (v, f) = ring(&["X1", "X2", "X3"]);
        let x = MultiPoly::gens(&v, &f);
        let p = &(&x[0] * &x[1]) * &x[2];
        let w = vars_of(&["Y1", "Y2", "Y3"]);
        let y = MultiPoly::gens(&w, &f);
        let q = 4;
        let images: Vec<MultiPoly> = y.iter().map(|yi| yi.pow(q)).collect();
        let r = p.substitute(&images).unwrap();
        let expected = (&(&y[0] * &y[1]) * &y[2]).pow(q);
        assert_eq!(r, expected);
    }

    #[test]
    fn exact_division() {
        let (v, f) = ring(&["X", "Y"]);
        let g = MultiPoly::gens(&v, &f);
        let a = &(&g[0] + &g[1]) * &(&g[0] - &g[1]);
        assert_eq!(a.exact_div(&(&g[0] - &g[1])).unwrap(), &g[0] + &g[1]);
        assert!(a.exact_div(&g[0]).is_none());
    }

    #[test]
    fn canonical_text() {
        let f = Field::eisenstein();
        let v = vars_of(&["X", "Y"]);
        let g = MultiPoly::gens(&v, &f);
        let w = MultiPoly::constant(v.clone(), f.clone(), Quad::theta());
        let p = &(&g[0] * &w) - &g[1].pow(2).scale(&Quad::new(rat(1), rat(2)));
        assert_eq!(p.to_canonical_string(), "(-1 - 2*w)*Y^2 + w*X");
        let q = &g[0].pow(2) - &g[1];
        assert_eq!(q.to_canonical_string(), "X^2 - Y");
    }
}
