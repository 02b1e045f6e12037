//! Zero-dimensional solving into the working field.

use std::fmt;

use serde::{Serialize, Serializer};

use super::groebner::{groebner_basis, MonomialOrder};
use super::quotient::{local_colength, QuotientAlgebra};
use crate::afield::{Field, Quad};
use crate::error::{Error, Result};
use crate::poly::roots::roots_in_field;
use crate::poly::{theta_symbol, MultiPoly};

/// Homogeneous coordinates normalized so the first nonzero entry is 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectivePoint {
    pub coords: Vec<Quad>,
    pub field: Field,
}

impl ProjectivePoint {
    pub fn new(coords: Vec<Quad>, field: Field) -> Result<ProjectivePoint> {
        let k = coords.iter().position(|c| !c.is_zero()).ok_or(Error::DivisionByZero)?;
        let inv = coords[k].inv(&field)?;
        let coords = coords.iter().map(|c| c.mul(&inv, &field)).collect();
        Ok(ProjectivePoint { coords, field })
    }

    pub fn from_ints(v: &[i64], field: &Field) -> ProjectivePoint {
        ProjectivePoint::new(v.iter().map(|&x| Quad::from_int(x)).collect(), field.clone()).expect("nonzero point")
    }

    /// Index of the first nonzero coordinate (which equals 1).
    pub fn chart(&self) -> usize {
        self.coords.iter().position(|c| !c.is_zero()).expect("normalized")
    }

    pub fn render(&self) -> String {
        let sym = theta_symbol(&self.field);
        let parts: Vec<String> = self.coords.iter().map(|c| c.render(&sym)).collect();
        format!("({})", parts.join(" : "))
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Serialize for ProjectivePoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.render())
    }
}

/// Solutions with coordinates in the working field plus unsolved eliminant factors.
#[derive(Clone, Debug)]
pub struct SolutionSet {
    pub field: Field,
    pub points: Vec<Vec<Quad>>,
    /// Eliminant factors with no root in the working field.
    pub residual: Vec<MultiPoly>,
    pub complete: bool,
}

impl SolutionSet {
    pub fn projective_points(&self) -> Vec<ProjectivePoint> {
        self.points
            .iter()
            .map(|p| ProjectivePoint::new(p.clone(), self.field.clone()).expect("nonzero"))
            .collect()
    }
}

fn lift_all(gens: &[MultiPoly], field: &Field) -> Result<Vec<MultiPoly>> {
    gens.iter().map(|g| g.lift_to(field)).collect()
}

/// Quotient dimension above which the eliminant is first guessed modulo primes.
const GUESS_THRESHOLD: usize = 24;

fn extend_roots(qa: &QuotientAlgebra, v: usize, roots: Vec<Quad>, field: &Field) -> Result<(Vec<Vec<Quad>>, Vec<MultiPoly>)> {
    let mut points = Vec::new();
    let mut residual = Vec::new();
    for r in roots {
        let sub: Vec<MultiPoly> = qa.basis.generators.iter().map(|g| g.eval_var(v, &r).drop_var(v)).collect();
        let (pts, res) = solve_affine(&sub, field)?;
        for mut p in pts {
            p.push(r.clone());
            points.push(p);
        }
        residual.extend(res);
    }
    Ok((points, residual))
}

/// Solves through a modular guess of the squarefree eliminant. The guess is accepted
/// only when the local colengths at the points found add up to the quotient dimension,
/// which leaves no room for further solutions.
fn solve_by_guess(qa: &QuotientAlgebra, v: usize, field: &Field, gens: &[MultiPoly]) -> Result<Option<Vec<Vec<Quad>>>> {
    let like = &gens[0];
    let Some(s) = qa.squarefree_eliminant_guess(&like.var_like(v)) else {
        return Ok(None);
    };
    let s: Vec<Quad> = s.into_iter().map(Quad::from_rational).collect();
    let (roots, rest) = roots_in_field(&s, field);
    if rest.len() > 1 {
        return Ok(None);
    }
    let (points, residual) = extend_roots(qa, v, roots, field)?;
    if !residual.is_empty() {
        return Ok(None);
    }
    let dim = qa.dim();
    let xs = MultiPoly::gens(like.vars(), field);
    let mut total = 0;
    for p in &points {
        let images: Vec<MultiPoly> = xs.iter().zip(p).map(|(x, c)| x + &like.constant_like(c.clone())).collect();
        let shifted = gens.iter().map(|g| g.substitute(&images)).collect::<Result<Vec<_>>>()?;
        total += local_colength(&shifted, like, dim as u32)?;
        if total > dim {
            return Ok(None);
        }
    }
    Ok((total == dim).then_some(points))
}

fn solve_affine(gens: &[MultiPoly], field: &Field) -> Result<(Vec<Vec<Quad>>, Vec<MultiPoly>)> {
    let nonzero: Vec<MultiPoly> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    let n = gens[0].nvars();
    if nonzero.is_empty() {
        if n == 0 {
            return Ok((vec![Vec::new()], Vec::new()));
        }
        return Err(Error::NotZeroDimensional);
    }
    if n == 0 {
        return Ok((Vec::new(), Vec::new()));
    }
    let basis = groebner_basis(&nonzero, MonomialOrder::Grevlex)?;
    if basis.is_unit() {
        return Ok((Vec::new(), Vec::new()));
    }
    let qa = QuotientAlgebra::new(basis, &nonzero[0])?;
    let v = n - 1;
    if qa.dim() > GUESS_THRESHOLD {
        if let Some(points) = solve_by_guess(&qa, v, field, &nonzero)? {
            return Ok((points, Vec::new()));
        }
    }
    let mp = qa.minimal_polynomial(&nonzero[0].var_like(v));
    let (roots, rest) = roots_in_field(&mp, field);
    let (points, mut residual) = extend_roots(&qa, v, roots, field)?;
    if rest.len() > 1 {
        residual.insert(0, MultiPoly::from_univariate(&nonzero[0], v, &rest));
    }
    Ok((points, residual))
}

/// Solves a zero-dimensional system over `field`; with `projective` the variables are
/// homogeneous coordinates and each chart "first nonzero coordinate = 1" is solved.
pub fn solve_zero_dim(gens: &[MultiPoly], field: &Field, projective: bool) -> Result<SolutionSet> {
    let first = gens.first().ok_or(Error::InvalidParameters("empty system".into()))?;
    let gens = lift_all(gens, field)?;
    let n = first.nvars();
    let mut points = Vec::new();
    let mut residual = Vec::new();
    if !projective {
        let (p, r) = solve_affine(&gens, field)?;
        points = p;
        residual = r;
    } else {
        for chart in 0..n {
            let mut sub: Vec<MultiPoly> = gens.clone();
            for j in 0..chart {
                sub = sub.iter().map(|g| g.eval_var(j, &Quad::zero())).collect();
            }
            sub = sub.iter().map(|g| g.eval_var(chart, &Quad::one())).collect();
            // drop the fixed coordinates, highest index first
            for j in (0..=chart).rev() {
                sub = sub.iter().map(|g| g.drop_var(j)).collect();
            }
            let (pts, res) = solve_affine(&sub, field)?;
            for p in pts {
                let mut full = vec![Quad::zero(); chart];
                full.push(Quad::one());
                full.extend(p);
                points.push(full);
            }
            residual.extend(res);
        }
    }
    points.sort();
    let complete = residual.is_empty();
    Ok(SolutionSet { field: field.clone(), points, residual, complete })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::vars_of;

    #[test]
    fn gaussian_pair() {
        let k = Field::gaussian();
        let g = MultiPoly::gens(&vars_of(&["x", "y"]), &Field::rationals());
        let sys = [&g[0].pow(2) + &g[0].one_like(), g[1].clone()];
        let s = solve_zero_dim(&sys, &k, false).unwrap();
        assert!(s.complete);
        let i = Quad::theta();
        assert_eq!(s.points, vec![vec![i.neg(), Quad::zero()], vec![i, Quad::zero()]]);
    }

    #[test]
    fn cubic_root_is_residual() {
        let g = MultiPoly::gens(&vars_of(&["x", "y"]), &Field::rationals());
        let two = g[0].constant_like(Quad::from_int(2));
        let sys = [&g[0].pow(3) - &two, g[1].clone()];
        let s = solve_zero_dim(&sys, &Field::rationals(), false).unwrap();
        assert!(s.points.is_empty());
        assert!(!s.complete);
        assert_eq!(s.residual.len(), 1);
        assert_eq!(s.residual[0].to_canonical_string(), "x^3 - 2");
    }

    #[test]
    fn projective_cusp() {
        let q = Field::rationals();
        let g = MultiPoly::gens(&vars_of(&["X", "Y", "Z"]), &q);
        let f = &(&g[1].pow(2) * &g[2]) - &g[0].pow(3);
        let mut sys = vec![f.clone()];
        sys.extend(f.gradient());
        let s = solve_zero_dim(&sys, &q, true).unwrap();
        assert_eq!(s.projective_points(), vec![ProjectivePoint::from_ints(&[0, 0, 1], &q)]);
    }

    #[test]
    fn fat_points_use_the_guessed_eliminant() {
        let q = Field::rationals();
        let g = MultiPoly::gens(&vars_of(&["x", "y"]), &q);
        let c = |n: i64| g[0].constant_like(Quad::from_int(n));
        let fx = (&(&g[0] - &c(1)) * &(&g[0] + &c(1))).pow(4);
        let fy = (&(&g[1] - &c(2)) * &(&g[1] + &c(3))).pow(4);
        let s = solve_zero_dim(&[fx.clone(), &fy + &fx], &q, false).unwrap();
        assert!(s.complete);
        let expected: Vec<Vec<Quad>> = [(-1, -3), (-1, 2), (1, -3), (1, 2)]
            .iter()
            .map(|&(a, b)| vec![Quad::from_int(a), Quad::from_int(b)])
            .collect();
        assert_eq!(s.points, expected);
    }

    #[test]
    fn fat_points_outside_the_field_fall_back() {
        let q = Field::rationals();
        let g = MultiPoly::gens(&vars_of(&["x", "y"]), &q);
        let c = |n: i64| g[0].constant_like(Quad::from_int(n));
        let fx = (&(&g[0].pow(2) - &c(2)) * &(&g[0] - &c(1))).pow(3);
        let fy = (&g[1] - &c(1)).pow(9);
        let s = solve_zero_dim(&[fx, fy], &q, false).unwrap();
        assert_eq!(s.points, vec![vec![Quad::one(), Quad::one()]]);
        assert!(!s.complete);
    }
}
