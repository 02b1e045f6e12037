//! Groebner bases, normal forms, dimension, elimination and zero-dimensional solving.

mod groebner;
mod modular;
mod quotient;
mod solve;

pub use groebner::{groebner_basis, leading_monomial, normal_form, IdealBasis, MonomialOrder, MAX_VARS};
pub use quotient::{affine_dimension, ideal_dimension, local_colength, quotient_dimension, standard_monomials, QuotientAlgebra};
pub use solve::{solve_zero_dim, ProjectivePoint, SolutionSet};

use std::sync::Arc;

use crate::error::Result;
use crate::poly::MultiPoly;

/// Generators of the elimination ideal, in the ring of the remaining variables.
pub fn eliminate(gens: &[MultiPoly], drop_vars: &[usize]) -> Result<Vec<MultiPoly>> {
    let first = &gens[0];
    let n = first.nvars();
    let keep: Vec<usize> = (0..n).filter(|i| !drop_vars.contains(i)).collect();
    // dropped variables first, so a block order eliminates them
    let mut perm: Vec<usize> = drop_vars.to_vec();
    perm.extend(&keep);
    let names: Vec<String> = perm.iter().map(|&i| first.vars()[i].clone()).collect();
    let names: Arc<[String]> = names.into();
    let mut map = vec![0; n];
    for (new, &old) in perm.iter().enumerate() {
        map[old] = new;
    }
    let moved: Vec<MultiPoly> = gens.iter().map(|g| g.remap(names.clone(), &map)).collect();
    let basis = groebner_basis(&moved, MonomialOrder::Block(drop_vars.len()))?;
    let k = drop_vars.len();
    let rest_names: Arc<[String]> = keep.iter().map(|&i| first.vars()[i].clone()).collect::<Vec<_>>().into();
    let back: Vec<usize> = (0..n).map(|j| j.saturating_sub(k)).collect();
    Ok(basis
        .generators
        .into_iter()
        .filter(|g| (0..k).all(|i| !g.occurs(i)))
        .map(|g| g.remap(rest_names.clone(), &back))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::afield::Field;
    use crate::poly::vars_of;

    #[test]
    fn eliminate_parameter() {
        let g = MultiPoly::gens(&vars_of(&["t", "x", "y"]), &Field::rationals());
        let e = eliminate(&[&g[1] - &g[0], &g[2] - &g[0].pow(2)], &[0]).unwrap();
        assert_eq!(e.len(), 1);
        assert_eq!(e[0].to_canonical_string(), "x^2 - y");
    }

    #[test]
    fn eliminate_first_of_pair() {
        let g = MultiPoly::gens(&vars_of(&["x", "y"]), &Field::rationals());
        let e = eliminate(&[&g[0].pow(2) - &g[1], &g[1].pow(2) - &g[0]], &[0]).unwrap();
        assert_eq!(e.len(), 1);
        assert_eq!(e[0].to_canonical_string(), "y^4 - y");
    }
}
