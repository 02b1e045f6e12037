use super::{Monomial, MultiPoly};
use crate::afield::{rat, FieldElement, Quad};

/// Writes `f = c * g^p` with `g` monic, if possible.
///
/// Terms of `g` are recovered from the top: if `g_k` holds the first `k` terms,
/// the leading term of `f/c - g_k^p` is `p * lt(g)^(p-1)` times the next term.
pub fn perfect_power_test(f: &MultiPoly, p: u32) -> Option<(FieldElement, MultiPoly)> {
    assert!(p >= 2, "exponent must be at least 2");
    let (lm, lc) = f.leading()?;
    if lm.0.iter().any(|e| e % p != 0) {
        return None;
    }
    let field = f.field().clone();
    let c = lc.clone();
    let target = f.scale(&c.inv(&field).ok()?);
    let g_lm = Monomial(lm.0.iter().map(|e| e / p).collect());
    let min_deg = f.min_degree()?;
    let mut g = f.zero_like();
    g.add_term(g_lm.clone(), Quad::one());
    let lead_pow = Monomial(g_lm.0.iter().map(|e| e * (p - 1)).collect());
    let inv_p = Quad::from_rational(rat(p as i64).recip());
    loop {
        let e = &target - &g.pow(p);
        let (em, ec) = match e.leading() {
            None => return Some((field.element(c), g)),
            Some(t) => t,
        };
        let m = em.div(&lead_pow)?;
        if m.degree() * p < min_deg || m >= g_lm {
            return None;
        }
        if let Some((last, _)) = g.terms().iter().next() {
            if &m >= last {
                return None;
            }
        }
        g.add_term(m, ec.mul(&inv_p, &field));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::afield::Field;
    use crate::poly::vars_of;

    #[test]
    fn square_of_sum_of_squares() {
        let g = MultiPoly::gens(&vars_of(&["x1", "x2"]), &Field::rationals());
        let q = &g[0].pow(2) + &g[1].pow(2);
        let (c, r) = perfect_power_test(&q.pow(2), 2).unwrap();
        assert!(c.value.is_one());
        assert_eq!(r, q);
    }

    #[test]
    fn cube_over_eisenstein() {
        let f = Field::eisenstein();
        let g = MultiPoly::gens(&vars_of(&["X", "Y"]), &f);
        let w = g[0].constant_like(Quad::theta());
        let l = &g[1] + &(&w * &g[0]);
        let a = Quad::from_int(5);
        let (c, r) = perfect_power_test(&l.pow(3).scale(&a), 3).unwrap();
        // monic under grevlex: X has the larger coefficient position
        assert_eq!(&r.pow(3).scale(&c.value), &l.pow(3).scale(&a));
    }

    #[test]
    fn rejects_squarefree() {
        let g = MultiPoly::gens(&vars_of(&["X", "Y"]), &Field::rationals());
        assert!(perfect_power_test(&(&g[0] * &g[1]), 2).is_none());
        let n = &g[0].pow(2) + &g[1].pow(2);
        assert!(perfect_power_test(&n, 2).is_none());
    }
}
