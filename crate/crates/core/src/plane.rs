//! Local invariants of plane projective curves.

use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::afield::{Field, Quad, Rational};
use crate::error::{Error, Result};
use crate::ideal::{groebner_basis, local_colength, quotient_dimension, solve_zero_dim, MonomialOrder, ProjectivePoint, QuotientAlgebra};
use crate::poly::{upoly, Monomial, MultiPoly};
use crate::rng::Seeded;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IntersectionMultiplicity {
    Finite(u32),
    Infinite,
}

impl Serialize for IntersectionMultiplicity {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            IntersectionMultiplicity::Finite(m) => s.serialize_u32(*m),
            IntersectionMultiplicity::Infinite => s.serialize_str("INFINITE"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SingularPointRecord {
    pub point: ProjectivePoint,
    pub multiplicity: u32,
    pub milnor: usize,
    pub local_type_checked: Option<(u32, u32)>,
}

/// Singular points with coordinates in the working field, plus unsolved eliminant factors.
#[derive(Clone, Debug)]
pub struct SingularPoints {
    pub field: Field,
    pub records: Vec<SingularPointRecord>,
    pub residual: Vec<MultiPoly>,
    pub complete: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalTypeEvidence {
    pub p: u32,
    pub q: u32,
    pub multiplicity: u32,
    pub milnor: usize,
    pub passed: bool,
}

fn require_point_field(f: &MultiPoly, pt: &ProjectivePoint) -> Result<MultiPoly> {
    if pt.coords.len() != f.nvars() {
        return Err(Error::RingMismatch);
    }
    f.lift_to(&pt.field)
}

/// The affine germ of `f` at `pt`: the chart of the first nonzero coordinate,
/// translated so that `pt` is the origin. Variables are the remaining names.
pub fn local_germ(f: &MultiPoly, pt: &ProjectivePoint) -> Result<MultiPoly> {
    let f = require_point_field(f, pt)?;
    let c = pt.chart();
    let names: Vec<String> = f.vars().iter().enumerate().filter(|(i, _)| *i != c).map(|(_, v)| v.clone()).collect();
    let names: Arc<[String]> = names.into();
    let gens = MultiPoly::gens(&names, &pt.field);
    let like = MultiPoly::zero(names.clone(), pt.field.clone());
    let mut images = Vec::with_capacity(f.nvars());
    let mut k = 0;
    for (i, x) in pt.coords.iter().enumerate() {
        if i == c {
            images.push(like.one_like());
        } else {
            images.push(&gens[k] + &like.constant_like(x.clone()));
            k += 1;
        }
    }
    f.substitute(&images)
}

fn on_curve(f: &MultiPoly, pt: &ProjectivePoint) -> Result<()> {
    let f = require_point_field(f, pt)?;
    if !f.evaluate(&pt.coords).is_zero() {
        return Err(Error::PointNotOnCurve);
    }
    Ok(())
}

/// Lowest total degree of the germ at `pt`.
pub fn multiplicity_at(f: &MultiPoly, pt: &ProjectivePoint) -> Result<u32> {
    on_curve(f, pt)?;
    let g = local_germ(f, pt)?;
    Ok(g.min_degree().unwrap_or(0))
}

/// Milnor number with an explicit bound on the maximal-ideal power.
pub fn milnor_number_bounded(f: &MultiPoly, pt: &ProjectivePoint, cap: u32) -> Result<usize> {
    let g = local_germ(f, pt)?;
    local_colength(&g.gradient(), &g, cap)
}

/// Milnor number at `pt`; the default bound is (deg - 1)^2 + 2.
pub fn milnor_number(f: &MultiPoly, pt: &ProjectivePoint) -> Result<usize> {
    let d = f.total_degree().unwrap_or(0).max(1);
    milnor_number_bounded(f, pt, (d - 1) * (d - 1) + 2)
}

/// Type (p, q) certified by multiplicity min(p, q) and Milnor number (p-1)(q-1).
pub fn check_local_type(f: &MultiPoly, pt: &ProjectivePoint, p: u32, q: u32) -> Result<LocalTypeEvidence> {
    if p < 2 || q < 2 || num_integer::gcd(p, q) != 1 {
        return Err(Error::InvalidParameters(format!("type ({p}, {q}) needs coprime p, q >= 2")));
    }
    on_curve(f, pt)?;
    germ_local_type(&local_germ(f, pt)?, p, q)
}

/// Type (p, q) of an affine germ through the origin, by multiplicity and Milnor number.
pub fn germ_local_type(g: &MultiPoly, p: u32, q: u32) -> Result<LocalTypeEvidence> {
    if p < 2 || q < 2 || num_integer::gcd(p, q) != 1 {
        return Err(Error::InvalidParameters(format!("type ({p}, {q}) needs coprime p, q >= 2")));
    }
    if !g.constant_term().is_zero() {
        return Err(Error::PointNotOnCurve);
    }
    let multiplicity = g.min_degree().unwrap_or(0);
    let target = ((p - 1) * (q - 1)) as usize;
    let milnor = local_colength(&g.gradient(), g, 2 * (p - 1) * (q - 1) + 4)?;
    let passed = multiplicity == p.min(q) && milnor == target;
    Ok(LocalTypeEvidence { p, q, multiplicity, milnor, passed })
}

fn linear_coeffs(l: &MultiPoly) -> Result<Vec<Quad>> {
    if l.is_zero() || !l.is_homogeneous() || l.total_degree() != Some(1) {
        return Err(Error::DegenerateLine);
    }
    Ok((0..l.nvars())
        .map(|i| {
            let mut e = vec![0; l.nvars()];
            e[i] = 1;
            l.coefficient(&e)
        })
        .collect())
}

/// Intersection multiplicity at `pt` of the curve with a line through it.
pub fn line_intersection_multiplicity(
    f: &MultiPoly,
    l: &MultiPoly,
    pt: &ProjectivePoint,
) -> Result<IntersectionMultiplicity> {
    let coeffs = linear_coeffs(l)?;
    let field = &pt.field;
    let f = require_point_field(f, pt)?;
    if !f.evaluate(&pt.coords).is_zero() {
        return Ok(IntersectionMultiplicity::Finite(0));
    }
    let on_line = coeffs.iter().zip(&pt.coords).fold(Quad::zero(), |acc, (a, x)| acc.add(&a.mul(x, field)));
    if !on_line.is_zero() {
        return Err(Error::PointNotOnCurve);
    }
    // a second point of the line, not proportional to pt
    let n = coeffs.len();
    let mut other = None;
    'search: for i in 0..n {
        for j in i + 1..n {
            let mut v = vec![Quad::zero(); n];
            v[i] = coeffs[j].clone();
            v[j] = coeffs[i].neg();
            if v.iter().all(|x| x.is_zero()) {
                continue;
            }
            let independent = (0..n).any(|a| {
                (a + 1..n).any(|b| !v[a].mul(&pt.coords[b], field).sub(&v[b].mul(&pt.coords[a], field)).is_zero())
            });
            if independent {
                other = Some(v);
                break 'search;
            }
        }
    }
    let other = other.ok_or(Error::DegenerateLine)?;
    let s = MultiPoly::var(crate::poly::vars_of(&["s"]), field.clone(), 0);
    let images: Vec<MultiPoly> = pt
        .coords
        .iter()
        .zip(&other)
        .map(|(p, o)| &s.constant_like(p.clone()) + &s.scale(o))
        .collect();
    let r = f.substitute(&images)?;
    Ok(match r.min_degree() {
        None => IntersectionMultiplicity::Infinite,
        Some(d) => IntersectionMultiplicity::Finite(d),
    })
}

fn require_homogeneous(f: &MultiPoly) -> Result<()> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    Ok(())
}

/// Solves F = grad F = 0 projectively and attaches multiplicity and Milnor number.
pub fn singular_points(f: &MultiPoly, field: &Field) -> Result<SingularPoints> {
    require_homogeneous(f)?;
    let mut sys = vec![f.clone()];
    sys.extend(f.gradient());
    let sol = solve_zero_dim(&sys, field, true)?;
    let mut records = Vec::new();
    for pt in sol.projective_points() {
        let multiplicity = multiplicity_at(f, &pt)?;
        let milnor = milnor_number(f, &pt)?;
        records.push(SingularPointRecord { point: pt, multiplicity, milnor, local_type_checked: None });
    }
    Ok(SingularPoints { field: field.clone(), records, residual: sol.residual, complete: sol.complete })
}

/// Global count of the singular scheme of a plane curve over Q without solving.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JacobianCertificate {
    /// Tjurina numbers summed over all singular points.
    pub tjurina_total: usize,
    /// Contribution of each chart {X_0 = .. = X_(c-1) = 0, X_c = 1}.
    pub chart_totals: Vec<usize>,
    /// Degree of the minimal polynomial of a seeded linear form on the Tjurina
    /// algebra, summed over charts.
    pub eliminant_degree: usize,
    pub squarefree_degree: usize,
    /// e with eliminant = (squarefree part)^e in every chart, when it is a pure power.
    pub eliminant_power: Option<usize>,
    /// No point of multiplicity three or more.
    pub double_points_only: bool,
}

impl JacobianCertificate {
    /// Exactly `count` singular points, each a double point with Tjurina number
    /// `tau`, hence each of type A_tau.
    pub fn certifies(&self, count: usize, tau: usize) -> bool {
        self.double_points_only
            && self.tjurina_total == count * tau
            && self.eliminant_degree == self.tjurina_total
            && self.squarefree_degree == count
            && self.eliminant_power == Some(tau)
    }
}

struct Chart {
    /// Tjurina ideal of the dehomogenized curve.
    tjurina: Vec<MultiPoly>,
    /// Second partials, for the multiplicity test.
    hessian: Vec<MultiPoly>,
    /// Affine variables of the coordinates forced to vanish in this chart.
    forced: Vec<usize>,
}

fn chart(f: &MultiPoly, c: usize) -> Chart {
    let g = f.eval_var(c, &Quad::one()).drop_var(c);
    let mut tjurina = vec![g.clone()];
    tjurina.extend(g.gradient());
    let mut hessian = Vec::new();
    for i in 0..g.nvars() {
        for j in i..g.nvars() {
            hessian.push(g.partial_derivative(i).partial_derivative(j));
        }
    }
    Chart { tjurina, hessian, forced: (0..c).collect() }
}

fn forced_power(like: &MultiPoly, forced: &[usize], n: u32) -> Vec<MultiPoly> {
    forced
        .iter()
        .map(|&i| {
            let mut m = like.zero_like();
            m.add_term(Monomial::var(like.nvars(), i, n), Quad::one());
            m
        })
        .collect()
}

/// Tjurina algebra of the points of a chart, localized along the forced coordinates.
fn chart_algebra(ch: &Chart, cap: u32) -> Result<Option<QuotientAlgebra>> {
    let like = &ch.tjurina[0];
    let n = like.nvars();
    let mut prev: Option<usize> = None;
    for e in 1..=cap + 1 {
        let mut sys = ch.tjurina.clone();
        sys.extend(forced_power(like, &ch.forced, e));
        let b = groebner_basis(&sys, MonomialOrder::Grevlex)?;
        if b.is_unit() {
            return Ok(None);
        }
        let dim = quotient_dimension(&b, n)?;
        if ch.forced.is_empty() || prev == Some(dim) {
            return Ok(Some(QuotientAlgebra::new(b, like)?));
        }
        prev = Some(dim);
    }
    Err(Error::NotIsolated(cap as usize))
}

/// e with mp = sq^e, for monic mp and squarefree monic sq.
fn pure_power(mp: &[Quad], sq: &[Quad], field: &Field) -> Option<usize> {
    let (dm, ds) = (mp.len() - 1, sq.len() - 1);
    if ds == 0 || dm % ds != 0 {
        return None;
    }
    let mut pw = vec![Quad::one()];
    for _ in 0..dm / ds {
        pw = upoly::mul(&pw, sq, field);
    }
    (upoly::monic(&pw, field) == upoly::monic(mp, field)).then_some(dm / ds)
}

/// Tjurina total, seeded eliminant and multiplicity test over all three charts.
pub fn jacobian_certificate(f: &MultiPoly, seed: u64) -> Result<JacobianCertificate> {
    require_homogeneous(f)?;
    if f.nvars() != 3 {
        return Err(Error::InvalidParameters("plane curves have three coordinates".into()));
    }
    let field = f.field().clone();
    let d = f.total_degree().unwrap_or(1);
    let cap = d * d + 2;
    let lambda = Rational::from_integer(Seeded::new(seed).nonzero_int(9).into());
    let mut chart_totals = Vec::new();
    let mut eliminant_degree = 0;
    let mut squarefree_degree = 0;
    let mut powers = Vec::new();
    let mut double_points_only = true;
    for c in 0..3 {
        let ch = chart(f, c);
        let mut with_hessian = ch.tjurina.clone();
        with_hessian.extend(ch.hessian.iter().cloned());
        if !groebner_basis(&with_hessian, MonomialOrder::Grevlex)?.is_unit() {
            double_points_only = false;
        }
        match chart_algebra(&ch, cap)? {
            None => chart_totals.push(0),
            Some(qa) => {
                chart_totals.push(qa.dim());
                let like = &ch.tjurina[0];
                let ell = &like.var_like(0) + &like.var_like(1).scale_rational(&lambda);
                let mp = qa.minimal_polynomial(&ell);
                let sq = upoly::squarefree(&mp, &field);
                let (dm, ds) = (mp.len() - 1, sq.len() - 1);
                eliminant_degree += dm;
                squarefree_degree += ds;
                powers.push(pure_power(&mp, &sq, &field));
            }
        }
    }
    let eliminant_power = match powers.first() {
        Some(&Some(e)) if powers.iter().all(|p| *p == Some(e)) => Some(e),
        _ => None,
    };
    Ok(JacobianCertificate {
        tjurina_total: chart_totals.iter().sum(),
        chart_totals,
        eliminant_degree,
        squarefree_degree,
        eliminant_power,
        double_points_only,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::vars_of;

    fn xyz() -> Vec<MultiPoly> {
        MultiPoly::gens(&vars_of(&["X", "Y", "Z"]), &Field::rationals())
    }

    #[test]
    fn cusp_invariants() {
        let g = xyz();
        let f = &(&g[1].pow(2) * &g[2]) - &g[0].pow(3);
        let s = singular_points(&f, &Field::rationals()).unwrap();
        assert!(s.complete);
        assert_eq!(s.records.len(), 1);
        let r = &s.records[0];
        assert_eq!(r.point, ProjectivePoint::from_ints(&[0, 0, 1], &Field::rationals()));
        assert_eq!((r.multiplicity, r.milnor), (2, 2));
        assert!(check_local_type(&f, &r.point, 3, 2).unwrap().passed);
    }

    #[test]
    fn smooth_conic_has_no_singular_points() {
        let g = xyz();
        let f = &g[0].pow(2) + &(&g[1] * &g[2]);
        let s = singular_points(&f, &Field::rationals()).unwrap();
        assert!(s.records.is_empty() && s.complete);
        let pt = ProjectivePoint::from_ints(&[0, 0, 1], &Field::rationals());
        assert_eq!(multiplicity_at(&f, &pt).unwrap(), 1);
        assert_eq!(
            line_intersection_multiplicity(&f, &g[1], &pt).unwrap(),
            IntersectionMultiplicity::Finite(2)
        );
    }

    #[test]
    fn line_inside_curve() {
        let g = xyz();
        let f = &(&g[0] * &g[1]) * &g[2];
        let pt = ProjectivePoint::from_ints(&[1, 5, 0], &Field::rationals());
        assert_eq!(line_intersection_multiplicity(&f, &g[2], &pt).unwrap(), IntersectionMultiplicity::Infinite);
        let off = ProjectivePoint::from_ints(&[1, 1, 1], &Field::rationals());
        assert_eq!(multiplicity_at(&f, &off), Err(Error::PointNotOnCurve));
    }

    #[test]
    fn node_is_not_a_cusp() {
        let g = xyz();
        // x y z + x^3 + y^3: node at (0:0:1)
        let f = &(&(&g[0] * &g[1]) * &g[2]) + &(&g[0].pow(3) + &g[1].pow(3));
        let pt = ProjectivePoint::from_ints(&[0, 0, 1], &Field::rationals());
        let ev = check_local_type(&f, &pt, 3, 2).unwrap();
        assert_eq!((ev.multiplicity, ev.milnor, ev.passed), (2, 1, false));
    }

    #[test]
    fn quartic_with_e6_point() {
        let g = xyz();
        // x^3 z + y^4: germ x^3 + y^4 at (0:0:1)
        let f = &(&g[0].pow(3) * &g[2]) + &g[1].pow(4);
        let pt = ProjectivePoint::from_ints(&[0, 0, 1], &Field::rationals());
        let ev = check_local_type(&f, &pt, 3, 4).unwrap();
        assert_eq!((ev.multiplicity, ev.milnor, ev.passed), (3, 6, true));
    }

    #[test]
    fn non_isolated_is_reported() {
        let g = xyz();
        let f = &g[0].pow(2) * &g[2];
        let pt = ProjectivePoint::from_ints(&[0, 0, 1], &Field::rationals());
        assert_eq!(milnor_number_bounded(&f, &pt, 4), Err(Error::NotIsolated(4)));
    }

    #[test]
    fn cusp_certificate() {
        let g = xyz();
        // two cusps: (0:0:1) and (0:1:0)
        let f = &(&g[1].pow(2) * &g[2].pow(2)) - &(&g[0].pow(3) * &(&g[1] + &g[2]));
        let cert = jacobian_certificate(&f, 1).unwrap();
        let pts = singular_points(&f, &Field::rationals()).unwrap();
        let tau: usize = pts.records.iter().map(|r| r.milnor).sum();
        assert_eq!(cert.tjurina_total, tau);
        assert_eq!(cert.squarefree_degree, pts.records.len());
    }
}
