//! End-to-end constructions: the curves f^q + g^p = 0, the cubic family with
//! three flexes on the coordinate triangle, Series I (Kummer pullbacks of
//! cubics) and Series II (plane sections of pulled-back quartic surfaces).

use std::sync::Arc;

use num_integer::Integer;
use serde::Serialize;

use crate::afield::{Field, FieldElement, Quad, Rational};
use crate::error::{Error, Result};
use crate::fpgroup::{abelianization, nonabelian_certificate, prop1_presentation, Abelianization, PermutationAssignment};
use crate::ideal::{groebner_basis, ideal_dimension, solve_zero_dim, MonomialOrder, ProjectivePoint};
use crate::pencil::{
    check_condition_1, check_condition_2, check_condition_3, check_condition_4, det3, gram, kummer_pullback,
    make_pencil, plane_section, triples, ConditionReport, Pencil,
};
use crate::plane::{
    check_local_type, germ_local_type, jacobian_certificate, line_intersection_multiplicity, singular_points,
    IntersectionMultiplicity, JacobianCertificate, LocalTypeEvidence,
};
use crate::poly::roots::roots_in_field;
use crate::poly::{gcd_poly, perfect_power_test, theta_symbol, upoly, vars_of, Monomial, MultiPoly};
use crate::rng::{Seeded, MAX_RETRIES};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    DirectCpqk,
    Series1Pullback,
    Series2PlaneSection,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CurveBundle {
    pub equation: MultiPoly,
    pub degree: u32,
    pub expected_sing_count: usize,
    pub expected_type: (u32, u32),
    pub provenance: Provenance,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateMethod {
    /// Every singular point solved in the working field and checked locally.
    PointwiseSolve,
    /// Points grouped in Kummer orbits over points of the base curve; one germ per orbit.
    LiftedGerms,
    /// Global count from the Tjurina algebra, no point solved.
    JacobianCount,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SingularRecord {
    pub point: String,
    pub field: String,
    pub multiplicity: u32,
    pub milnor: usize,
    pub local_type: (u32, u32),
    pub certified: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SingularVerification {
    pub method: CertificateMethod,
    pub count: usize,
    pub records: Vec<SingularRecord>,
    pub jacobian: Option<JacobianCertificate>,
    pub evidence: Vec<String>,
    pub passed: bool,
}

impl SingularVerification {
    /// Local types of all records, sorted, for pointwise comparison.
    pub fn type_profile(&self) -> Vec<(u32, usize, (u32, u32), bool)> {
        let mut v: Vec<_> = self.records.iter().map(|r| (r.multiplicity, r.milnor, r.local_type, r.certified)).collect();
        v.sort();
        v
    }
}

fn record_from(point: String, field: &Field, ev: &LocalTypeEvidence) -> SingularRecord {
    SingularRecord {
        point,
        field: field.name(),
        multiplicity: ev.multiplicity,
        milnor: ev.milnor,
        local_type: (ev.p, ev.q),
        certified: ev.passed,
    }
}

fn xyz_vars() -> Arc<[String]> {
    vars_of(&["X", "Y", "Z"])
}

/// Whether a plane curve has no singular point.
pub fn is_smooth(f: &MultiPoly) -> Result<bool> {
    let mut sys = vec![f.clone()];
    sys.extend(f.gradient().into_iter().filter(|g| !g.is_zero()));
    let b = groebner_basis(&sys, MonomialOrder::Grevlex)?;
    Ok(ideal_dimension(&b, f.nvars(), true) < 0)
}

fn linear_form(like: &MultiPoly, c: &[i64]) -> MultiPoly {
    c.iter().enumerate().fold(like.zero_like(), |acc, (i, &a)| &acc + &like.var_like(i).scale(&Quad::from_int(a)))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CpqkBuild {
    pub bundle: CurveBundle,
    pub f: MultiPoly,
    pub g: MultiPoly,
    pub verification: SingularVerification,
    pub attempts: usize,
}

/// Largest pqk accepted by `build_cpqk`.
pub const CPQK_LIMIT: u32 = 15;

fn check_pq(p: u32, q: u32, k: u32) -> Result<()> {
    if p < 2 || q < 2 || k < 1 || p.gcd(&q) != 1 {
        return Err(Error::InvalidParameters(format!("(p, q, k) = ({p}, {q}, {k}) needs coprime p, q >= 2 and k >= 1")));
    }
    Ok(())
}

/// f^q + g^p = 0 with f a product of pk and g a product of qk seeded rational
/// lines, so every singular point is rational. Redraws until the solved
/// singular locus is exactly pqk^2 points of type (p, q).
pub fn build_cpqk(p: u32, q: u32, k: u32, seed: u64) -> Result<CpqkBuild> {
    check_pq(p, q, k)?;
    if p * q * k > CPQK_LIMIT {
        return Err(Error::InvalidParameters(format!("pqk = {} exceeds the limit {CPQK_LIMIT}", p * q * k)));
    }
    let field = Field::rationals();
    let like = MultiPoly::zero(xyz_vars(), field.clone());
    let expected = (p * q * k * k) as usize;
    for attempt in 0..MAX_RETRIES {
        let mut rng = Seeded::attempt(seed, attempt);
        let mut line = || {
            let c: Vec<i64> = (0..3).map(|_| rng.nonzero_int(5)).collect();
            linear_form(&like, &c)
        };
        let f = (0..p * k).fold(like.one_like(), |acc, _| &acc * &line());
        let g = (0..q * k).fold(like.one_like(), |acc, _| &acc * &line());
        let curve = &f.pow(q) + &g.pow(p);
        let sp = singular_points(&curve, &field)?;
        if !sp.complete || sp.records.len() != expected {
            continue;
        }
        let mut records = Vec::new();
        for r in &sp.records {
            let ev = check_local_type(&curve, &r.point, p, q)?;
            records.push(record_from(r.point.render(), &field, &ev));
        }
        if records.iter().any(|r| !r.certified) {
            continue;
        }
        let verification = SingularVerification {
            method: CertificateMethod::PointwiseSolve,
            count: records.len(),
            records,
            jacobian: None,
            evidence: vec!["singular scheme solved over Q with no residual factor".into()],
            passed: true,
        };
        return Ok(CpqkBuild {
            bundle: CurveBundle {
                equation: curve,
                degree: p * q * k,
                expected_sing_count: expected,
                expected_type: (p, q),
                provenance: Provenance::DirectCpqk,
            },
            f,
            g,
            verification,
            attempts: attempt + 1,
        });
    }
    Err(Error::DegenerateAfterRetries(MAX_RETRIES))
}

/// Tangency of a cubic to a coordinate line at a point.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Tangency {
    pub line: String,
    pub point: ProjectivePoint,
    pub multiplicity: IntersectionMultiplicity,
}

/// One line of the family of cubics with flexes at R1 on X = 0, R2 on Y = 0
/// and a third point on Z = 0.
#[derive(Clone, Debug, Serialize)]
pub struct FamilyDerivation {
    /// Cube root of unity fixing the third flex (1 : -alpha : 0).
    #[serde(serialize_with = "render_element")]
    pub alpha: FieldElement,
    /// Family in the ring A, B, X, Y, Z.
    pub closed_form: MultiPoly,
    /// Equal to A(X+Y+Z)^3 + 3A(alpha^2-1)X^2Y + 3A(alpha-1)XY^2 + (B-6A)XYZ.
    pub matches_closed_form: bool,
    pub r3: ProjectivePoint,
    /// Flex data for the member A = 1, B = 1.
    pub tangencies: Vec<Tangency>,
    /// Member at A = 0, B = 1.
    pub member_at_infinity: MultiPoly,
    /// A = 1 and pencil parameter s = B - 6 multiplying XYZ.
    #[serde(skip)]
    pub pencil: Pencil,
}

fn render_element<S: serde::Serializer>(x: &FieldElement, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.value.render(&theta_symbol(&x.field)))
}

impl FamilyDerivation {
    /// The member with A = 1 and B replaced by a free parameter `name`, in X, Y, Z, name.
    pub fn member_with_parameter(&self, name: &str) -> MultiPoly {
        let vars = vars_of(&["X", "Y", "Z", name]);
        let f = self.closed_form.eval_var(0, &Quad::one());
        // (A, B, X, Y, Z) -> (X, Y, Z, name)
        f.remap(vars, &[4, 3, 0, 1, 2])
    }

    /// The member with A = 1 and B = t, in X, Y, Z.
    pub fn member(&self, t: &Quad) -> MultiPoly {
        self.pencil.member(&t.sub(&Quad::from_int(6)))
    }
}

fn cubic_monomials() -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for a in (0..=3u32).rev() {
        for b in (0..=3 - a).rev() {
            out.push(vec![a, b, 3 - a - b]);
        }
    }
    out
}

/// Rows expressing that a cubic with unknown coefficients meets the line
/// {point + s * dir} to order at least 3 at s = 0.
fn flex_rows(point: &[Quad], dir: &[Quad], field: &Field) -> Vec<Vec<Quad>> {
    let monos = cubic_monomials();
    let mut rows = vec![Vec::new(); 3];
    for m in &monos {
        let mut val = vec![Quad::one()];
        for i in 0..3 {
            for _ in 0..m[i] {
                val = upoly::mul(&val, &[point[i].clone(), dir[i].clone()], field);
            }
        }
        for (j, row) in rows.iter_mut().enumerate() {
            row.push(val.get(j).cloned().unwrap_or_else(Quad::zero));
        }
    }
    rows
}

/// Basis of the solution space of rows * x = 0.
fn nullspace(rows: &[Vec<Quad>], ncols: usize, field: &Field) -> Vec<Vec<Quad>> {
    let mut m: Vec<Vec<Quad>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].inv(field).expect("nonzero pivot");
        for x in m[r].iter_mut() {
            *x = x.mul(&inv, field);
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for k in 0..ncols {
                    let v = f.mul(&m[r][k], field);
                    m[i][k] = m[i][k].sub(&v);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Quad::zero(); ncols];
            v[f] = Quad::one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = m[i][f].neg();
            }
            v
        })
        .collect()
}

fn cubic_from(coeffs: &[Quad], like: &MultiPoly) -> MultiPoly {
    let mut f = like.zero_like();
    for (m, c) in cubic_monomials().iter().zip(coeffs) {
        f.add_term(Monomial(m.clone()), c.clone());
    }
    f
}

fn q_vec(v: &[i64]) -> Vec<Quad> {
    v.iter().map(|&x| Quad::from_int(x)).collect()
}

/// The expected closed form in A, B, X, Y, Z.
pub fn cubic_family_closed_form(alpha: &Quad, field: &Field) -> MultiPoly {
    let g = MultiPoly::gens(&vars_of(&["A", "B", "X", "Y", "Z"]), field);
    let (a, b, x, y, z) = (&g[0], &g[1], &g[2], &g[3], &g[4]);
    let three = Quad::from_int(3);
    let one = Quad::one();
    let a2 = alpha.mul(alpha, field);
    let s = &(x + y) + z;
    let t1 = a * &s.pow(3);
    let t2 = (&(a * &x.pow(2)) * y).scale(&three.mul(&a2.sub(&one), field));
    let t3 = (&(a * x) * &y.pow(2)).scale(&three.mul(&alpha.sub(&one), field));
    let t4 = &(&(b - &a.scale(&Quad::from_int(6))) * x) * &(y * z);
    &(&(&t1 + &t2) + &t3) + &t4
}

/// Imposes the flex conditions stage by stage: linear conditions at R1 and
/// R2, then the cube condition on Z = 0, whose leading ratio forces alpha^3 = 1,
/// then the linear conditions at (1 : -alpha : 0) for each root alpha.
pub fn derive_cubic_family() -> Result<Vec<FamilyDerivation>> {
    let field = Field::eisenstein();
    let like = MultiPoly::zero(xyz_vars(), field.clone());
    let monos = cubic_monomials();
    let idx = |e: [u32; 3]| monos.iter().position(|m| m[..] == e[..]).expect("cubic monomial");
    let mut rows = flex_rows(&q_vec(&[0, 1, -1]), &q_vec(&[0, 1, 0]), &field);
    rows.extend(flex_rows(&q_vec(&[1, 0, -1]), &q_vec(&[1, 0, 0]), &field));
    let basis = nullspace(&rows, 10, &field);
    // restriction to Z = 0: coefficients of X^3 and Y^3 as linear forms on the solution space
    let form = |e: [u32; 3]| -> Vec<Quad> { basis.iter().map(|v| v[idx(e)].clone()).collect() };
    let (cx, cy) = (form([3, 0, 0]), form([0, 3, 0]));
    // the cube lambda (Y + alpha X)^3 has X^3 : Y^3 = alpha^3 : 1
    let k = cy.iter().position(|c| !c.is_zero()).ok_or(Error::InvalidParameters("no Y^3 term".into()))?;
    let ratio = cx[k].div(&cy[k], &field)?;
    if cx.iter().zip(&cy).any(|(a, b)| a != &b.mul(&ratio, &field)) {
        return Err(Error::InvalidParameters("X^3 and Y^3 coefficients are not proportional".into()));
    }
    let (alphas, _) = roots_in_field(&[ratio.neg(), Quad::zero(), Quad::zero(), Quad::one()], &field);
    let mut alphas: Vec<Quad> = alphas;
    let w = Quad::theta();
    let order = [Quad::one(), w.clone(), w.mul(&w, &field)];
    alphas.sort_by_key(|a| order.iter().position(|o| o == a).unwrap_or(3));
    let ab = MultiPoly::zero(vars_of(&["A", "B", "X", "Y", "Z"]), field.clone());
    let mut out = Vec::new();
    for alpha in alphas {
        let r3 = vec![Quad::one(), alpha.neg(), Quad::zero()];
        let mut all = rows.clone();
        all.extend(flex_rows(&r3, &q_vec(&[0, 1, 0]), &field));
        let sol = nullspace(&all, 10, &field);
        if sol.len() != 2 {
            return Err(Error::InvalidParameters(format!("flex system has {} free parameters", sol.len())));
        }
        // change basis to (X^3 coefficient, XYZ coefficient) = (A, B)
        let (i3, i111) = (idx([3, 0, 0]), idx([1, 1, 1]));
        let m = [[sol[0][i3].clone(), sol[1][i3].clone()], [sol[0][i111].clone(), sol[1][i111].clone()]];
        let det = m[0][0].mul(&m[1][1], &field).sub(&m[0][1].mul(&m[1][0], &field));
        let dinv = det.inv(&field)?;
        let comb = |c0: &Quad, c1: &Quad| -> Vec<Quad> {
            (0..10).map(|j| c0.mul(&sol[0][j], &field).add(&c1.mul(&sol[1][j], &field))).collect()
        };
        // inverse of m applied to (1, 0) and (0, 1)
        let va = comb(&m[1][1].mul(&dinv, &field), &m[1][0].neg().mul(&dinv, &field));
        let vb = comb(&m[0][1].neg().mul(&dinv, &field), &m[0][0].mul(&dinv, &field));
        let lift = |f: MultiPoly| f.remap(ab.vars().clone(), &[2, 3, 4]);
        let fa = lift(cubic_from(&va, &like));
        let fb = lift(cubic_from(&vb, &like));
        let closed_form = &(&ab.var_like(0) * &fa) + &(&ab.var_like(1) * &fb);
        let matches_closed_form = closed_form == cubic_family_closed_form(&alpha, &field);
        let member_at = |a: i64, b: i64| {
            closed_form.eval_var(0, &Quad::from_int(a)).eval_var(1, &Quad::from_int(b)).drop_var(1).drop_var(0)
        };
        let sample = member_at(1, 1);
        let g = MultiPoly::gens(&xyz_vars(), &field);
        let mut tangencies = Vec::new();
        for (name, line, pt) in [
            ("X", &g[0], vec![Quad::zero(), Quad::one(), Quad::from_int(-1)]),
            ("Y", &g[1], vec![Quad::one(), Quad::zero(), Quad::from_int(-1)]),
            ("Z", &g[2], r3.clone()),
        ] {
            let point = ProjectivePoint::new(pt, field.clone())?;
            let multiplicity = line_intersection_multiplicity(&sample, line, &point)?;
            tangencies.push(Tangency { line: format!("{name} = 0"), point, multiplicity });
        }
        let pencil = make_pencil(&member_at(1, 6))?;
        let member_at_infinity = member_at(0, 1);
        out.push(FamilyDerivation {
            alpha: field.element(alpha.clone()),
            closed_form,
            matches_closed_form,
            r3: ProjectivePoint::new(r3, field.clone())?,
            tangencies,
            member_at_infinity,
            pencil,
        });
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Series1Build {
    pub bundle: CurveBundle,
    pub alpha: String,
    /// Affine coordinate B/A on the family.
    pub t: String,
    /// Pencil parameter B - 6A with A = 1.
    pub s: String,
    pub member: MultiPoly,
    pub conditions: Vec<ConditionReport>,
    pub verification: SingularVerification,
    pub passed: bool,
}

/// Kummer preimages of a smooth cubic that meets each coordinate line in a
/// single flex. Off the coordinate lines the cover is étale, so singular
/// points lie over the flexes, q per flex, each with the germ of the cubic at
/// the flex pulled back along the transverse coordinate.
pub fn lifted_germ_verification(member: &MultiPoly, q: u32) -> Result<SingularVerification> {
    let field = member.field().clone();
    let sym = theta_symbol(&field);
    let mut evidence = Vec::new();
    let mut passed = true;
    let smooth = is_smooth(member)?;
    evidence.push(format!("base cubic smooth: {smooth}"));
    passed &= smooth;
    for i in 0..3 {
        let mut e = vec![Quad::zero(); 3];
        e[i] = Quad::one();
        if member.evaluate(&e).is_zero() {
            evidence.push(format!("vertex {} lies on the cubic", i + 1));
            passed = false;
        }
    }
    let names = member.vars();
    let germ_ring = MultiPoly::zero(vars_of(&["u", "s"]), field.clone());
    let (u, s) = (germ_ring.var_like(0), germ_ring.var_like(1));
    let mut records = Vec::new();
    for i in 0..3 {
        let others: Vec<usize> = (0..3).filter(|&j| j != i).collect();
        let r = member.eval_var(i, &Quad::zero()).drop_var(i);
        let Some((_, d)) = perfect_power_test(&r, 3) else {
            evidence.push(format!("restriction to {} = 0 is not a cube", names[i]));
            passed = false;
            continue;
        };
        let (a, b) = (d.coefficient(&[1, 0]), d.coefficient(&[0, 1]));
        if a.is_zero() || b.is_zero() {
            evidence.push(format!("flex on {} = 0 is a vertex", names[i]));
            passed = false;
            continue;
        }
        // flex: X_j = 1, X_k = -a/b, X_i = 0
        let (j, k) = (others[0], others[1]);
        let ratio = a.neg().div(&b, &field)?;
        let mut images = vec![germ_ring.zero_like(); 3];
        images[j] = germ_ring.one_like();
        images[i] = u.pow(q);
        images[k] = &germ_ring.constant_like(ratio.clone()) + &s;
        let germ = member.substitute(&images)?;
        let ev = germ_local_type(&germ, 3, q)?;
        evidence.push(format!(
            "flex on {} = 0 at {}/{} = {}: pulled-back germ has multiplicity {} and Milnor number {}",
            names[i],
            names[k],
            names[j],
            ratio.render(&sym),
            ev.multiplicity,
            ev.milnor
        ));
        passed &= ev.passed;
        let mut pattern = vec![String::new(); 3];
        pattern[i] = "0".into();
        pattern[j] = "1".into();
        pattern[k] = "z".into();
        for root in 1..=q {
            let point = format!("({}), z^{q} = {}, root {root} of {q}", pattern.join(" : "), ratio.render(&sym));
            records.push(record_from(point, &field, &ev));
        }
    }
    let count = records.len();
    passed &= count == 3 * q as usize;
    Ok(SingularVerification {
        method: CertificateMethod::LiftedGerms,
        count,
        records,
        jacobian: None,
        evidence,
        passed,
    })
}

/// Series I curve of degree 3q from the pencil of cubics with flexes at
/// R1, R2 and (1 : -w : 0). `t_value` is the coordinate B/A on the family.
pub fn build_series1(q: u32, t_value: Option<Quad>, seed: u64) -> Result<Series1Build> {
    if q < 2 || q.is_multiple_of(3) {
        return Err(Error::InvalidParameters(format!("q = {q} must be at least 2 and prime to 3")));
    }
    let families = derive_cubic_family()?;
    let fam = families.into_iter().nth(1).ok_or(Error::InvalidParameters("family missing".into()))?;
    let field = fam.pencil.field.clone();
    let t = match t_value {
        Some(t) => {
            if !is_smooth(&fam.member(&t))? {
                return Err(Error::DegenerateMember(format!("t = {} gives a singular cubic", t.render("w"))));
            }
            t
        }
        None => {
            let mut found = None;
            for attempt in 0..MAX_RETRIES {
                let t = Quad::from_int(Seeded::attempt(seed, attempt).int(-9, 9));
                if is_smooth(&fam.member(&t))? {
                    found = Some(t);
                    break;
                }
            }
            found.ok_or(Error::DegenerateAfterRetries(MAX_RETRIES))?
        }
    };
    let s = t.sub(&Quad::from_int(6));
    let member = fam.pencil.member(&s);
    let c1 = check_condition_1(&fam.pencil)?;
    let c2 = check_condition_2(&fam.pencil);
    let (c3, _) = check_condition_3(&fam.pencil, 3)?;
    let c4 = check_condition_4(&fam.pencil, &s)?;
    let conditions = vec![c1, c2, c3, c4];
    let curve = kummer_pullback(&member, q)?.rename(vars_of(&["U", "V", "W"]));
    let verification = lifted_germ_verification(&member, q)?;
    let passed = conditions.iter().all(|c| c.passed) && verification.passed;
    let sym = theta_symbol(&field);
    Ok(Series1Build {
        bundle: CurveBundle {
            equation: curve,
            degree: 3 * q,
            expected_sing_count: 3 * q as usize,
            expected_type: (3, q),
            provenance: Provenance::Series1Pullback,
        },
        alpha: fam.alpha.value.render(&sym),
        t: t.render(&sym),
        s: s.render(&sym),
        member,
        conditions,
        verification,
        passed,
    })
}

/// F0 = (x1^2 + x2^2)^2 + 2 x3 x4 (x1^2 - x2^2) + x3^2 x4^2.
pub fn quartic_f0() -> MultiPoly {
    let x = MultiPoly::gens(&vars_of(&["x1", "x2", "x3", "x4"]), &Field::rationals());
    let s = &x[0].pow(2) + &x[1].pow(2);
    let d = &x[0].pow(2) - &x[1].pow(2);
    let p34 = &x[2] * &x[3];
    &(&s.pow(2) + &(&p34 * &d).scale(&Quad::from_int(2))) + &p34.pow(2)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QuarticReport {
    pub f0: MultiPoly,
    pub conditions: Vec<ConditionReport>,
    /// gcd of the partials in x3 and x4 of F_t.
    pub common_quadric: MultiPoly,
    pub common_quadric_expected: bool,
    /// Every 3x3 minor of the Gram matrix is a polynomial in t; their gcd.
    pub gram_minor_gcd: MultiPoly,
    /// Rank at least 3 for every t, so the quadric is irreducible for every t.
    pub quadric_irreducible: bool,
    /// No (t, lambda) with F_t = lambda * Q_t^2.
    pub double_quadric_unsatisfiable: bool,
    pub sing_s2: Vec<ProjectivePoint>,
    pub sing_s2_complete: bool,
    pub sing_s2_expected: bool,
    pub passed: bool,
}

fn expected_quadric(like: &MultiPoly) -> MultiPoly {
    let x = |i| like.var_like(i);
    let two = Quad::from_int(2);
    let q = &(&(&x(0).pow(2) - &x(1).pow(2)) + &(&x(2) * &x(3))).scale(&two);
    q + &(&(&x(0) * &x(1)) * &x(4))
}

/// Coefficients of `p` with respect to the variables `xs`, as polynomials in the rest.
fn coefficients_in(p: &MultiPoly, xs: &[usize], rest: Arc<[String]>) -> Vec<MultiPoly> {
    let keep: Vec<usize> = (0..p.nvars()).filter(|i| !xs.contains(i)).collect();
    let mut groups: std::collections::BTreeMap<Vec<u32>, MultiPoly> = Default::default();
    for (m, c) in p.terms() {
        let key: Vec<u32> = xs.iter().map(|&i| m.0[i]).collect();
        let e: Vec<u32> = keep.iter().map(|&i| m.0[i]).collect();
        let entry = groups.entry(key).or_insert_with(|| MultiPoly::zero(rest.clone(), p.field().clone()));
        entry.add_term(Monomial(e), c.clone());
    }
    groups.into_values().collect()
}

/// The quartic pencil with p = 2 and k = 2: all four conditions, the common
/// quadric of the x3 and x4 partials, and the singular points of S_2 over Q(i).
pub fn verify_prop5() -> Result<QuarticReport> {
    let f0 = quartic_f0();
    let pencil = make_pencil(&f0)?;
    let c1 = check_condition_1(&pencil)?;
    let c2 = check_condition_2(&pencil);
    let (c3, _) = check_condition_3(&pencil, 2)?;
    let c4 = check_condition_4(&pencil, &Quad::from_int(2))?;
    let conditions = vec![c1, c2, c3, c4];

    let ft = pencil.symbolic();
    let common = gcd_poly(&ft.partial_derivative(2), &ft.partial_derivative(3));
    let expected = expected_quadric(&ft);
    let common_quadric_expected = common.monic() == expected.monic();

    let m = gram(&common, 4);
    let mut minors = ft.zero_like();
    for r in triples(4) {
        for c in triples(4) {
            let d = det3(&m, r, c);
            minors = if minors.is_zero() { d } else { gcd_poly(&minors, &d) };
        }
    }
    let quadric_irreducible = !minors.is_zero() && minors.is_constant();

    // F_t - lambda Q_t^2 = 0 coefficientwise in x, solved in (t, lambda)
    let big = ft.extend_vars(&["lambda"]);
    let qq = common.extend_vars(&["lambda"]).pow(2);
    let diff = &big - &(&big.var_like(5) * &qq);
    let coeffs = coefficients_in(&diff, &[0, 1, 2, 3], vars_of(&["t", "lambda"]));
    let double_quadric_unsatisfiable = groebner_basis(&coeffs, MonomialOrder::Grevlex)?.is_unit();

    let qi = Field::gaussian();
    let s2 = pencil.member(&Quad::from_int(2));
    let mut sys = vec![s2.clone()];
    sys.extend(s2.gradient());
    let sol = solve_zero_dim(&sys, &qi, true)?;
    let sing_s2 = sol.projective_points();
    let i = Quad::theta();
    let pt = |v: [Quad; 4]| ProjectivePoint::new(v.to_vec(), qi.clone());
    let (o, z) = (Quad::one(), Quad::zero());
    let mut expected_points = vec![
        pt([o.clone(), i.clone(), z.clone(), z.clone()])?,
        pt([o.clone(), i.neg(), z.clone(), z.clone()])?,
        pt([z.clone(), z.clone(), z.clone(), o.clone()])?,
        pt([z.clone(), z.clone(), o.clone(), z.clone()])?,
    ];
    let mut got = sing_s2.clone();
    let key = |p: &ProjectivePoint| p.coords.clone();
    got.sort_by_key(key);
    expected_points.sort_by_key(key);
    let sing_s2_expected = sol.complete && got == expected_points;
    let passed = conditions.iter().all(|c| c.passed)
        && common_quadric_expected
        && quadric_irreducible
        && double_quadric_unsatisfiable
        && sing_s2_expected;
    Ok(QuarticReport {
        f0,
        conditions,
        common_quadric: common.monic(),
        common_quadric_expected,
        gram_minor_gcd: minors,
        quadric_irreducible,
        double_quadric_unsatisfiable,
        sing_s2,
        sing_s2_complete: sol.complete,
        sing_s2_expected,
        passed,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Series2Build {
    pub bundle: CurveBundle,
    pub t: String,
    pub member: MultiPoly,
    pub member_condition_4: ConditionReport,
    pub plane_seed: u64,
    pub verification: SingularVerification,
    pub attempts: usize,
    pub passed: bool,
}

/// Series II curve of degree 4q: the member S_t of the quartic pencil, pulled
/// back by X_i -> X_i^q and cut by a seeded plane. The 8q points of type
/// A_(q-1) are certified globally by the Tjurina algebra.
pub fn build_series2(q: u32, t_value: Option<Quad>, seed: u64) -> Result<Series2Build> {
    if q.is_multiple_of(2) || !(3..=5).contains(&q) {
        return Err(Error::InvalidParameters(format!("q = {q} must be odd with 3 <= q <= 5")));
    }
    let t = t_value.unwrap_or_else(|| Quad::from_int(2));
    if !t.is_rational() {
        return Err(Error::InvalidParameters("t must be rational".into()));
    }
    let pencil = make_pencil(&quartic_f0())?;
    let member = pencil.member(&t);
    let c4 = check_condition_4(&pencil, &t)?;
    if !c4.passed {
        return Err(Error::DegenerateMember(format!("S_t at t = {} has a non-isolated singular locus", t.render("theta"))));
    }
    let surface = kummer_pullback(&member, q)?;
    let count = 8 * q as usize;
    let tau = (q - 1) as usize;
    for attempt in 0..MAX_RETRIES {
        let plane_seed = seed.wrapping_add(attempt as u64);
        let curve = match plane_section(&surface, plane_seed) {
            Ok(c) => c,
            Err(Error::DegenerateParametrization) => continue,
            Err(e) => return Err(e),
        };
        if curve.total_degree() != Some(4 * q) {
            continue;
        }
        let cert = jacobian_certificate(&curve, plane_seed)?;
        if !cert.certifies(count, tau) {
            continue;
        }
        let records = (1..=count)
            .map(|i| SingularRecord {
                point: format!("point {i} of {count}, separated by the eliminant"),
                field: "algebraic closure".into(),
                multiplicity: 2,
                milnor: tau,
                local_type: (2, q),
                certified: true,
            })
            .collect();
        let verification = SingularVerification {
            method: CertificateMethod::JacobianCount,
            count,
            records,
            evidence: vec![
                format!("Tjurina algebra dimension {} = {count} x {tau}", cert.tjurina_total),
                format!("squarefree eliminant degree {} with every factor of multiplicity {tau}", cert.squarefree_degree),
                "no singular point of multiplicity three or more".into(),
            ],
            jacobian: Some(cert),
            passed: true,
        };
        return Ok(Series2Build {
            bundle: CurveBundle {
                equation: curve,
                degree: 4 * q,
                expected_sing_count: count,
                expected_type: (2, q),
                provenance: Provenance::Series2PlaneSection,
            },
            t: t.render("theta"),
            member,
            member_condition_4: c4,
            plane_seed,
            verification,
            attempts: attempt + 1,
            passed: true,
        });
    }
    Err(Error::DegenerateAfterRetries(MAX_RETRIES))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesSelector {
    Series1,
    Series2,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PairSide {
    pub bundle: CurveBundle,
    pub verification: SingularVerification,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PairReport {
    pub p: u32,
    pub q: u32,
    pub k: u32,
    pub series: SeriesSelector,
    pub c1: PairSide,
    pub c2: PairSide,
    pub same_degree: bool,
    pub same_singular_count: bool,
    pub same_local_types: bool,
    pub c1_abelianization: Abelianization,
    pub c1_nonabelian_quotient: Option<PermutationAssignment>,
    /// The complement of C2 has abelian fundamental group by the pencil
    /// construction; cited, not computed.
    pub c2_group: String,
    pub passed: bool,
}

/// Builds C1 = C_{p,q,k} and C2 from the selected series and compares them.
pub fn verify_zariski_pair(p: u32, q: u32, k: u32, series: SeriesSelector, seed: u64) -> Result<PairReport> {
    check_pq(p, q, k)?;
    let c2 = match series {
        SeriesSelector::Series1 => {
            if (p, k) != (3, 1) {
                return Err(Error::InvalidParameters("Series I pairs have p = 3 and k = 1".into()));
            }
            let b = build_series1(q, None, seed)?;
            PairSide { bundle: b.bundle, verification: b.verification }
        }
        SeriesSelector::Series2 => {
            if (p, k) != (2, 2) {
                return Err(Error::InvalidParameters("Series II pairs have p = 2 and k = 2".into()));
            }
            let b = build_series2(q, None, seed)?;
            PairSide { bundle: b.bundle, verification: b.verification }
        }
    };
    let c1b = build_cpqk(p, q, k, seed)?;
    let c1 = PairSide { bundle: c1b.bundle, verification: c1b.verification };
    let pres = prop1_presentation(p, q, k)?;
    let c1_abelianization = abelianization(&pres);
    let c1_nonabelian_quotient = nonabelian_certificate(&pres, 8);
    let same_degree = c1.bundle.degree == c2.bundle.degree;
    let same_singular_count = c1.verification.count == c2.verification.count;
    let same_local_types = c1.verification.type_profile() == c2.verification.type_profile();
    let order = Rational::from_integer((p * q * k).into());
    let passed = same_degree
        && same_singular_count
        && same_local_types
        && c1.verification.passed
        && c2.verification.passed
        && c1_abelianization.free_rank == 0
        && c1_abelianization.torsion == vec![order.numer().clone()]
        && c1_nonabelian_quotient.is_some();
    Ok(PairReport {
        p,
        q,
        k,
        series,
        c1,
        c2,
        same_degree,
        same_singular_count,
        same_local_types,
        c1_abelianization,
        c1_nonabelian_quotient,
        c2_group: format!("abelian, hence cyclic of order {} (cited)", p * q * k),
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_families() {
        let fams = derive_cubic_family().unwrap();
        assert_eq!(fams.len(), 3);
        let xyz = {
            let g = MultiPoly::gens(&xyz_vars(), &Field::eisenstein());
            &(&g[0] * &g[1]) * &g[2]
        };
        for f in &fams {
            assert!(f.matches_closed_form);
            assert_eq!(f.member_at_infinity, xyz);
            assert!(f.tangencies.iter().all(|t| t.multiplicity == IntersectionMultiplicity::Finite(3)));
        }
        assert!(fams[0].alpha.value.is_one());
        assert_eq!(fams[1].alpha.value, Quad::theta());
    }

    #[test]
    fn invalid_parameters() {
        assert!(build_cpqk(2, 4, 1, 0).is_err());
        assert!(build_series1(3, None, 0).is_err());
        assert!(build_series2(4, None, 0).is_err());
    }

    #[test]
    fn classical_sextic_direct() {
        let b = build_cpqk(3, 2, 1, 1).unwrap();
        assert_eq!(b.bundle.degree, 6);
        assert_eq!(b.verification.count, 6);
        assert!(b.verification.records.iter().all(|r| r.multiplicity == 2 && r.milnor == 2 && r.certified));
    }

    #[test]
    fn series1_sextic() {
        let b = build_series1(2, None, 3).unwrap();
        assert!(b.passed, "{:?}", b.conditions);
        assert_eq!(b.bundle.degree, 6);
        assert_eq!(b.verification.count, 6);
        assert!(b.verification.records.iter().all(|r| r.multiplicity == 2 && r.milnor == 2));
    }
}
