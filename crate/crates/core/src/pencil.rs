//! Pencils S_t = {F0 + t X_1...X_n = 0}, their Kummer pullbacks and plane sections,
//! and checkers for the four conditions on a pencil.

use std::sync::Arc;

use num_traits::Zero;
use serde::Serialize;

use crate::afield::{make_field, Field, Quad, Rational};
use crate::error::{Error, Result};
use crate::ideal::{groebner_basis, ideal_dimension, MonomialOrder};
use crate::poly::roots::{roots_in_field, small_factors};
use crate::poly::{
    content_wrt, gcd_poly, perfect_power_test, pseudo_remainder, resultant, squarefree_part, theta_symbol, Monomial,
    MultiPoly,
};
use crate::rng::Seeded;

#[derive(Clone, Debug)]
pub struct Pencil {
    pub f0: MultiPoly,
    pub n: usize,
    pub field: Field,
}

/// Validates F0: homogeneous of degree equal to its number of variables, at least 3.
pub fn make_pencil(f0: &MultiPoly) -> Result<Pencil> {
    if f0.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f0.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let n = f0.nvars();
    let d = f0.total_degree().unwrap_or(0) as usize;
    if n < 3 || d != n {
        return Err(Error::DegreeMismatch { expected: n, found: d });
    }
    Ok(Pencil { f0: f0.clone(), n, field: f0.field().clone() })
}

impl Pencil {
    /// X_1 * ... * X_n.
    pub fn product(&self) -> MultiPoly {
        let mut m = self.f0.zero_like();
        m.add_term(Monomial(vec![1; self.n]), Quad::one());
        m
    }

    pub fn member(&self, t: &Quad) -> MultiPoly {
        &self.f0 + &self.product().scale(t)
    }

    /// The member at a value of a field containing the pencil's field.
    pub fn member_over(&self, t: &Quad, field: &Field) -> Result<MultiPoly> {
        let f0 = self.f0.lift_to(field)?;
        let prod = self.product().lift_to(field)?;
        Ok(&f0 + &prod.scale(t))
    }

    /// F_t in the ring extended by a last variable `t`.
    pub fn symbolic(&self) -> MultiPoly {
        let f0 = self.f0.extend_vars(&["t"]);
        let mut tp = f0.zero_like();
        let mut e = vec![1; self.n];
        e.push(1);
        tp.add_term(Monomial(e), Quad::one());
        &f0 + &tp
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ConditionId {
    #[serde(rename = "1")]
    One,
    #[serde(rename = "2")]
    Two,
    #[serde(rename = "3")]
    Three,
    #[serde(rename = "4")]
    Four,
    #[serde(rename = "a")]
    A,
    #[serde(rename = "b")]
    B,
    #[serde(rename = "c")]
    C,
}

/// D with F0|_{X_i = 0} = unit * D^p; `i` counts hyperplanes from 1.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DivisorOnHyperplane {
    pub i: usize,
    pub d: MultiPoly,
    pub p: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExceptionalValue {
    /// Value of the pencil parameter, in the notation of `field`.
    pub value: String,
    pub field: String,
    pub reduced: bool,
    /// Squarefree part of the member when it is not reduced.
    pub reduced_part: Option<MultiPoly>,
    /// m with member = c * (reduced part)^m, when it is a pure power.
    pub power: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Hyperplanes { indices: Vec<usize> },
    Divisors { divisors: Vec<DivisorOnHyperplane> },
    GenericGcd { gcd: MultiPoly },
    CommonComponent { pair: (usize, usize), component: Option<MultiPoly> },
    Exceptional { values: Vec<ExceptionalValue> },
    Structural { claim: String, holds: bool },
    SingularLocus { t_sample: String, dimension: i64, bound: i64 },
    Tangency { line: String, point: String, multiplicity: String },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConditionReport {
    pub condition_id: ConditionId,
    pub passed: bool,
    pub witnesses: Vec<Witness>,
    pub caveats: Vec<String>,
}

impl ConditionReport {
    fn new(condition_id: ConditionId, passed: bool, witnesses: Vec<Witness>, caveats: Vec<String>) -> ConditionReport {
        let passed = passed && caveats.is_empty();
        ConditionReport { condition_id, passed, witnesses, caveats }
    }
}

/// Hyperplanes contained in S_0.
pub fn check_condition_2(p: &Pencil) -> ConditionReport {
    let offending: Vec<usize> =
        (0..p.n).filter(|&i| p.f0.eval_var(i, &Quad::zero()).is_zero()).map(|i| i + 1).collect();
    ConditionReport::new(
        ConditionId::Two,
        offending.is_empty(),
        vec![Witness::Hyperplanes { indices: offending }],
        Vec::new(),
    )
}

/// S_0 restricted to each H_i is p times a reduced divisor meeting no other H_j in a component.
pub fn check_condition_3(pencil: &Pencil, p: u32) -> Result<(ConditionReport, Vec<DivisorOnHyperplane>)> {
    if p < 2 || !pencil.n.is_multiple_of(p as usize) {
        return Err(Error::InvalidParameters(format!("p = {p} must be at least 2 and divide n = {}", pencil.n)));
    }
    let mut divisors = Vec::new();
    let mut caveats = Vec::new();
    let mut passed = true;
    for i in 0..pencil.n {
        let r = pencil.f0.eval_var(i, &Quad::zero()).drop_var(i);
        let Some((_, d)) = perfect_power_test(&r, p) else {
            passed = false;
            caveats.clear();
            continue;
        };
        let reduced = squarefree_part(&d)?.total_degree() == d.total_degree();
        let clean = (0..d.nvars()).all(|j| !d.eval_var(j, &Quad::zero()).is_zero());
        if !reduced || !clean {
            passed = false;
        }
        divisors.push(DivisorOnHyperplane { i: i + 1, d, p });
    }
    let report = ConditionReport::new(
        ConditionId::Three,
        passed && divisors.len() == pencil.n,
        vec![Witness::Divisors { divisors: divisors.clone() }],
        caveats,
    );
    Ok((report, divisors))
}

/// Singular locus of the member at `t_sample` has codimension at least 2 in it;
/// for plane curves (n = 3) this means finitely many singular points.
pub fn check_condition_4(pencil: &Pencil, t_sample: &Quad) -> Result<ConditionReport> {
    let f = pencil.member(t_sample);
    let mut sys = vec![f.clone()];
    sys.extend(f.gradient().into_iter().filter(|g| !g.is_zero()));
    let basis = groebner_basis(&sys, MonomialOrder::Grevlex)?;
    let dimension = ideal_dimension(&basis, pencil.n, true);
    let bound = if pencil.n == 3 { 0 } else { pencil.n as i64 - 4 };
    let sym = theta_symbol(&pencil.field);
    Ok(ConditionReport::new(
        ConditionId::Four,
        dimension <= bound,
        vec![Witness::SingularLocus { t_sample: t_sample.render(&sym), dimension, bound }],
        Vec::new(),
    ))
}

fn x_degree(p: &MultiPoly, n: usize) -> u32 {
    p.terms().keys().map(|m| m.0[..n].iter().sum::<u32>()).max().unwrap_or(0)
}

/// A pencil value with the field it lives in.
#[derive(Clone, Debug)]
struct Candidate {
    field: Field,
    value: Quad,
}

/// Values of t in the pencil field or a quadratic extension of Q where `u(t)` vanishes;
/// factors beyond that reach are returned as caveats.
fn candidate_values(u: &MultiPoly, tv: usize, base: &Field, out: &mut Vec<Candidate>, caveats: &mut Vec<String>) {
    let Some(coeffs) = u.as_univariate(tv) else {
        caveats.push(format!("exceptional polynomial {u} is not univariate"));
        return;
    };
    if coeffs.len() <= 1 {
        return;
    }
    if base.is_rational() {
        let rats: Vec<Rational> = coeffs.iter().map(|c| c.a0.clone()).collect();
        let sf = small_factors(&rats);
        for r in sf.roots {
            out.push(Candidate { field: base.clone(), value: Quad::from_rational(r) });
        }
        for (b, c) in sf.quadratics {
            match make_field(b, c) {
                Ok(k) => out.push(Candidate { field: k, value: Quad::theta() }),
                Err(_) => caveats.push("quadratic factor with rational roots".into()),
            }
        }
        if sf.cofactor.len() > 1 {
            let like = u.zero_like();
            let cof: Vec<Quad> = sf.cofactor.iter().cloned().map(Quad::from_rational).collect();
            caveats.push(format!("values of t beyond quadratic fields: roots of {}", MultiPoly::from_univariate(&like, tv, &cof)));
        }
    } else {
        let (roots, rest) = roots_in_field(&coeffs, base);
        for r in roots {
            out.push(Candidate { field: base.clone(), value: r });
        }
        if rest.len() > 1 {
            caveats.push(format!(
                "values of t outside {}: roots of {}",
                base.name(),
                MultiPoly::from_univariate(u, tv, &rest)
            ));
        }
    }
}

/// Squarefreeness of the member at one exceptional value.
fn test_value(pencil: &Pencil, c: &Candidate) -> Result<ExceptionalValue> {
    let f = pencil.member_over(&c.value, &c.field)?;
    let sq = squarefree_part(&f)?;
    let reduced = sq.total_degree() == f.total_degree();
    let power = if reduced {
        None
    } else {
        let (ds, df) = (sq.total_degree().unwrap_or(0), f.total_degree().unwrap_or(0));
        (ds > 0 && df % ds == 0 && perfect_power_test(&f, df / ds).is_some()).then(|| df / ds)
    };
    Ok(ExceptionalValue {
        value: c.value.render(&theta_symbol(&c.field)),
        field: c.field.name(),
        reduced,
        reduced_part: (!reduced).then_some(sq),
        power,
    })
}

struct PairOutcome {
    pair: (usize, usize),
    component: Option<MultiPoly>,
    candidates: Vec<Candidate>,
    caveats: Vec<String>,
    structural: Vec<(String, bool)>,
}

/// Gram matrix entries of a quadratic form in the first n variables.
pub(crate) fn gram(q: &MultiPoly, n: usize) -> Vec<Vec<MultiPoly>> {
    let half = Quad::from_rational(Rational::new(1.into(), 2.into()));
    let mut m = vec![vec![q.zero_like(); n]; n];
    for (mono, c) in q.terms() {
        let idx: Vec<usize> = (0..n).flat_map(|i| std::iter::repeat_n(i, mono.0[i] as usize)).collect();
        let mut rest = mono.clone();
        for r in rest.0[..n].iter_mut() {
            *r = 0;
        }
        let mut term = q.zero_like();
        term.add_term(rest, c.clone());
        if idx[0] == idx[1] {
            m[idx[0]][idx[0]] = &m[idx[0]][idx[0]] + &term;
        } else {
            let h = term.scale(&half);
            m[idx[0]][idx[1]] = &m[idx[0]][idx[1]] + &h;
            m[idx[1]][idx[0]] = &m[idx[1]][idx[0]] + &h;
        }
    }
    m
}

pub(crate) fn det3(m: &[Vec<MultiPoly>], r: [usize; 3], c: [usize; 3]) -> MultiPoly {
    let e = |i: usize, j: usize| &m[r[i]][c[j]];
    let t1 = e(0, 0) * &(&(e(1, 1) * e(2, 2)) - &(e(1, 2) * e(2, 1)));
    let t2 = e(0, 1) * &(&(e(1, 0) * e(2, 2)) - &(e(1, 2) * e(2, 0)));
    let t3 = e(0, 2) * &(&(e(1, 0) * e(2, 1)) - &(e(1, 1) * e(2, 0)));
    &(&t1 - &t2) + &t3
}

pub(crate) fn triples(n: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                out.push([a, b, c]);
            }
        }
    }
    out
}

/// Candidates for non-reduced members through the common factor of one pair of partials.
fn probe_pair(pencil: &Pencil, ft: &MultiPoly, grads: &[MultiPoly], i: usize, j: usize) -> PairOutcome {
    let n = pencil.n;
    let tv = n;
    let xs: Vec<usize> = (0..n).collect();
    let (p, q) = (&grads[i], &grads[j]);
    let g = gcd_poly(p, q);
    let cont = content_wrt(&g, &xs);
    let gx = g.exact_div(&cont).expect("content divides");
    let a = p.exact_div(&g).expect("gcd divides");
    let b = q.exact_div(&g).expect("gcd divides");
    let mut polys: Vec<MultiPoly> = vec![cont, content_wrt(&a, &xs), content_wrt(&b, &xs)];
    for k in 0..n {
        if a.occurs(k) && b.occurs(k) {
            polys.push(content_wrt(&resultant(&a, &b, k), &xs));
        }
    }
    let mut caveats = Vec::new();
    let mut structural = Vec::new();
    let dg = x_degree(&gx, n);
    let component = (dg > 0).then(|| gx.monic());
    if dg > 0 {
        match dg {
            1 => {}
            2 => {
                let m = gram(&gx, n);
                let mut minors = ft.zero_like();
                for r in triples(n) {
                    for c in triples(n) {
                        let d = det3(&m, r, c);
                        minors = if minors.is_zero() { d } else { gcd_poly(&minors, &d) };
                    }
                }
                if minors.is_zero() {
                    caveats.push(format!("common component {gx} has rank at most 2 for every t"));
                } else {
                    structural.push(("common quadric has rank at least 3 away from the listed values".into(), true));
                    polys.push(minors);
                }
            }
            _ => caveats.push(format!("irreducibility of the degree-{dg} common component {gx} is not certified")),
        }
        let k = (0..n).max_by_key(|&k| gx.degree_in(k)).expect("variables");
        let sq = gx.pow(2);
        let r = pseudo_remainder(ft, &sq, k);
        let lc = sq.univariate_coeffs(k).pop().expect("nonzero");
        polys.push(content_wrt(&lc, &xs));
        if r.is_zero() {
            caveats.push(format!("the square of {gx} divides every member"));
        } else {
            polys.push(content_wrt(&r, &xs));
        }
        structural.push((format!("member = unit * ({})^2 * rest only at the listed values", gx.monic()), true));
    }
    let mut candidates: Vec<Candidate> = Vec::new();
    for u in polys.iter().filter(|u| !u.is_constant()) {
        candidate_values(u, tv, &pencil.field, &mut candidates, &mut caveats);
    }
    let mut unique: Vec<Candidate> = Vec::new();
    for c in candidates {
        if !unique.iter().any(|u| u.field == c.field && u.value == c.value) {
            unique.push(c);
        }
    }
    PairOutcome { pair: (i + 1, j + 1), component, candidates: unique, caveats, structural }
}

/// Every member of the pencil is reduced.
///
/// Stage A: the partials and F_t have no common factor over K(t). Stage B: a
/// multiple component of a special member divides two chosen partials, so it
/// either divides their generic common factor (tested by pseudo-division of
/// F_t by its square) or appears only where the cofactors acquire a common
/// factor (roots of resultant contents). All resulting values of t are tested
/// exactly; the pair with fewest caveats, then fewest values, is reported.
pub fn check_condition_1(pencil: &Pencil) -> Result<ConditionReport> {
    let n = pencil.n;
    let ft = pencil.symbolic();
    let xs: Vec<usize> = (0..n).collect();
    let grads: Vec<MultiPoly> = xs.iter().map(|&i| ft.partial_derivative(i)).collect();
    let mut g = ft.clone();
    for d in grads.iter().filter(|d| !d.is_zero()) {
        g = gcd_poly(&g, d);
    }
    let gx = g.exact_div(&content_wrt(&g, &xs)).expect("content divides");
    if x_degree(&gx, n) > 0 {
        return Ok(ConditionReport::new(
            ConditionId::One,
            false,
            vec![Witness::GenericGcd { gcd: gx.monic() }],
            Vec::new(),
        ));
    }
    let mut best: Option<PairOutcome> = None;
    for i in 0..n {
        for j in i + 1..n {
            if grads[i].is_zero() || grads[j].is_zero() {
                continue;
            }
            let o = probe_pair(pencil, &ft, &grads, i, j);
            let better = match &best {
                None => true,
                Some(b) => (o.caveats.len(), o.candidates.len()) < (b.caveats.len(), b.candidates.len()),
            };
            if better {
                best = Some(o);
            }
        }
    }
    let best = best.ok_or(Error::InvalidParameters("no pair of nonzero partial derivatives".into()))?;
    let values: Vec<ExceptionalValue> =
        best.candidates.iter().map(|c| test_value(pencil, c)).collect::<Result<_>>()?;
    let all_reduced = values.iter().all(|v| v.reduced);
    let mut witnesses = vec![
        Witness::GenericGcd { gcd: gx.monic() },
        Witness::CommonComponent { pair: best.pair, component: best.component.clone() },
    ];
    witnesses.extend(best.structural.iter().map(|(claim, holds)| Witness::Structural { claim: claim.clone(), holds: *holds }));
    witnesses.push(Witness::Exceptional { values });
    // a non-reduced member decides the question regardless of caveats
    let caveats = if all_reduced { best.caveats } else { Vec::new() };
    Ok(ConditionReport::new(ConditionId::One, all_reduced, witnesses, caveats))
}

/// Substitutes X_i -> X_i^q.
pub fn kummer_pullback(f: &MultiPoly, q: u32) -> Result<MultiPoly> {
    kummer_pullback_in(f, q, &(0..f.nvars()).collect::<Vec<_>>())
}

/// Substitutes X_i -> X_i^q for the listed variables only.
pub fn kummer_pullback_in(f: &MultiPoly, q: u32, vars: &[usize]) -> Result<MultiPoly> {
    if q < 2 {
        return Err(Error::InvalidParameters(format!("Kummer exponent {q} must be at least 2")));
    }
    Ok(MultiPoly::from_terms(
        f.vars().clone(),
        f.field().clone(),
        f.terms().iter().map(|(m, c)| {
            let e = m.0.iter().enumerate().map(|(i, &e)| if vars.contains(&i) { e * q } else { e }).collect();
            (e, c.clone())
        }),
    ))
}

/// Seeded n x 3 parametrization: X_i = U_i for i < 3, and each further X_i a
/// combination of U_1, U_2, U_3 with nonzero small integer coefficients.
pub fn plane_section_matrix(n: usize, seed: u64) -> Vec<Vec<Rational>> {
    let mut rng = Seeded::new(seed);
    (0..n)
        .map(|i| {
            if i < 3 {
                (0..3).map(|j| Rational::from_integer(((i == j) as i64).into())).collect()
            } else {
                (0..3).map(|_| Rational::from_integer(rng.nonzero_int(3).into())).collect()
            }
        })
        .collect()
}

/// The curve cut out on a seeded plane, in variables U, V, W.
pub fn plane_section(f: &MultiPoly, seed: u64) -> Result<MultiPoly> {
    plane_section_with(f, &plane_section_matrix(f.nvars(), seed))
}

pub fn plane_section_with(f: &MultiPoly, c: &[Vec<Rational>]) -> Result<MultiPoly> {
    if f.nvars() < 4 {
        return Err(Error::InvalidParameters("plane sections need at least four variables".into()));
    }
    if !f.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    if c.len() != f.nvars() || c.iter().any(|r| r.len() != 3) || rank(c) < 3 {
        return Err(Error::DegenerateParametrization);
    }
    let names: Arc<[String]> = crate::poly::vars_of(&["U", "V", "W"]);
    let u = MultiPoly::gens(&names, f.field());
    let images: Vec<MultiPoly> = c
        .iter()
        .map(|row| {
            row.iter().zip(&u).fold(u[0].zero_like(), |acc, (a, x)| &acc + &x.scale_rational(a))
        })
        .collect();
    f.substitute(&images)
}

fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = &m[i][c] / &m[r][c];
                for k in 0..cols {
                    let v = &f * &m[r][k];
                    m[i][k] -= v;
                }
            }
        }
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::vars_of;

    fn prop5_f0() -> MultiPoly {
        let x = MultiPoly::gens(&vars_of(&["x1", "x2", "x3", "x4"]), &Field::rationals());
        let s = &x[0].pow(2) + &x[1].pow(2);
        let d = &x[0].pow(2) - &x[1].pow(2);
        let p34 = &x[2] * &x[3];
        let two = Quad::from_int(2);
        &(&s.pow(2) + &(&p34 * &d).scale(&two)) + &p34.pow(2)
    }

    #[test]
    fn degree_must_match_variables() {
        let g = MultiPoly::gens(&vars_of(&["X", "Y", "Z"]), &Field::rationals());
        let f = &g[0].pow(2) + &g[1].pow(2);
        assert!(matches!(make_pencil(&f), Err(Error::DegreeMismatch { expected: 3, found: 2 })));
    }

    #[test]
    fn symbolic_member_term_count() {
        let p = make_pencil(&prop5_f0()).unwrap();
        assert_eq!(p.symbolic().len(), 7);
        assert_eq!(p.member(&Quad::zero()), p.f0);
    }

    #[test]
    fn hyperplane_inside_s0() {
        let g = MultiPoly::gens(&vars_of(&["X", "Y", "Z"]), &Field::rationals());
        let f = &g[0] * &(&g[1].pow(2) + &g[2].pow(2));
        let r = check_condition_2(&make_pencil(&f).unwrap());
        assert!(!r.passed);
        assert_eq!(r.witnesses, vec![Witness::Hyperplanes { indices: vec![1] }]);
    }

    #[test]
    fn prop5_divisors() {
        let p = make_pencil(&prop5_f0()).unwrap();
        let (r, ds) = check_condition_3(&p, 2).unwrap();
        assert!(r.passed);
        assert_eq!(ds[2].d.to_canonical_string(), "x1^2 + x2^2");
        assert_eq!(ds[0].d.to_canonical_string(), "x2^2 - x3*x4");
    }

    #[test]
    fn fourth_power_fails_condition_3() {
        let x = MultiPoly::gens(&vars_of(&["x1", "x2", "x3", "x4"]), &Field::rationals());
        let f = (&x[0] + &x[1]).pow(4);
        let (r, _) = check_condition_3(&make_pencil(&f).unwrap(), 2).unwrap();
        assert!(!r.passed);
    }

    #[test]
    fn pullback_of_product() {
        let g = MultiPoly::gens(&vars_of(&["X", "Y", "Z"]), &Field::rationals());
        let xyz = &(&g[0] * &g[1]) * &g[2];
        assert_eq!(kummer_pullback(&xyz, 2).unwrap(), xyz.pow(2));
    }

    #[test]
    fn linear_plane_section() {
        let x = MultiPoly::gens(&vars_of(&["x1", "x2", "x3", "x4"]), &Field::rationals());
        let s = plane_section(&x[3], 7).unwrap();
        assert_eq!(s.total_degree(), Some(1));
        let flat = vec![vec![Rational::zero(); 3]; 4];
        assert_eq!(plane_section_with(&x[0], &flat), Err(Error::DegenerateParametrization));
    }

    #[test]
    fn prop5_members_are_reduced() {
        let p = make_pencil(&prop5_f0()).unwrap();
        let r = check_condition_1(&p).unwrap();
        assert!(r.passed, "{r:?}");
        assert!(check_condition_4(&p, &Quad::from_int(2)).unwrap().passed);
    }

    #[test]
    fn triple_line_member_detected() {
        let g = MultiPoly::gens(&vars_of(&["X", "Y", "Z"]), &Field::rationals());
        let f = (&(&g[0] + &g[1]) + &g[2]).pow(3);
        let r = check_condition_1(&make_pencil(&f).unwrap()).unwrap();
        assert!(!r.passed);
        let Some(Witness::Exceptional { values }) = r.witnesses.last() else { panic!("{r:?}") };
        let bad: Vec<_> = values.iter().filter(|v| !v.reduced).collect();
        assert_eq!(bad.len(), 1);
        assert_eq!(bad[0].value, "0");
        assert_eq!(bad[0].power, Some(3));
    }
}
