//! Dense univariate polynomials over Q or Q(theta), coefficients low to high.

use crate::afield::{FieldDescriptor, Quad};

pub type UPoly = Vec<Quad>;

pub fn trim(p: &mut UPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub fn trimmed(mut p: UPoly) -> UPoly {
    trim(&mut p);
    p
}

/// Degree, or `None` for the zero polynomial.
pub fn degree(p: &[Quad]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn is_zero(p: &[Quad]) -> bool {
    degree(p).is_none()
}

pub fn add(a: &[Quad], b: &[Quad]) -> UPoly {
    let n = a.len().max(b.len());
    let z = Quad::zero();
    trimmed((0..n).map(|i| a.get(i).unwrap_or(&z).add(b.get(i).unwrap_or(&z))).collect())
}

pub fn sub(a: &[Quad], b: &[Quad]) -> UPoly {
    let n = a.len().max(b.len());
    let z = Quad::zero();
    trimmed((0..n).map(|i| a.get(i).unwrap_or(&z).sub(b.get(i).unwrap_or(&z))).collect())
}

pub fn mul(a: &[Quad], b: &[Quad], f: &FieldDescriptor) -> UPoly {
    if is_zero(a) || is_zero(b) {
        return Vec::new();
    }
    let mut r = vec![Quad::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                r[i + j] = r[i + j].add(&x.mul(y, f));
            }
        }
    }
    trimmed(r)
}

pub fn scale(a: &[Quad], c: &Quad, f: &FieldDescriptor) -> UPoly {
    trimmed(a.iter().map(|x| x.mul(c, f)).collect())
}

pub fn monic(a: &[Quad], f: &FieldDescriptor) -> UPoly {
    match degree(a) {
        None => Vec::new(),
        Some(d) => {
            let inv = a[d].inv(f).expect("nonzero");
            scale(&a[..=d], &inv, f)
        }
    }
}

/// Quotient and remainder; panics on division by zero.
pub fn divrem(a: &[Quad], b: &[Quad], f: &FieldDescriptor) -> (UPoly, UPoly) {
    let db = degree(b).expect("division by zero polynomial");
    let inv = b[db].inv(f).expect("nonzero");
    let mut r: UPoly = trimmed(a.to_vec());
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![Quad::zero(); r.len() - db];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = r[dr].mul(&inv, f);
        let s = dr - db;
        for (j, bj) in b[..=db].iter().enumerate() {
            r[s + j] = r[s + j].sub(&c.mul(bj, f));
        }
        q[s] = c;
        trim(&mut r);
    }
    (trimmed(q), r)
}

pub fn rem(a: &[Quad], b: &[Quad], f: &FieldDescriptor) -> UPoly {
    divrem(a, b, f).1
}

/// Monic gcd; gcd(0, 0) = 0.
pub fn gcd(a: &[Quad], b: &[Quad], f: &FieldDescriptor) -> UPoly {
    let mut x = trimmed(a.to_vec());
    let mut y = trimmed(b.to_vec());
    while !y.is_empty() {
        let r = rem(&x, &y, f);
        x = y;
        y = r;
    }
    monic(&x, f)
}

pub fn derivative(a: &[Quad]) -> UPoly {
    trimmed(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.scale(&crate::afield::rat(i as i64)))
            .collect(),
    )
}

/// Monic squarefree part.
pub fn squarefree(a: &[Quad], f: &FieldDescriptor) -> UPoly {
    let a = trimmed(a.to_vec());
    if degree(&a).unwrap_or(0) == 0 {
        return monic(&a, f);
    }
    let g = gcd(&a, &derivative(&a), f);
    monic(&divrem(&a, &g, f).0, f)
}

pub fn eval(a: &[Quad], x: &Quad, f: &FieldDescriptor) -> Quad {
    let mut acc = Quad::zero();
    for c in a.iter().rev() {
        acc = acc.mul(x, f).add(c);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::afield::Field;

    fn ints(v: &[i64]) -> UPoly {
        v.iter().map(|&x| Quad::from_int(x)).collect()
    }

    #[test]
    fn gcd_of_shared_root() {
        let f = Field::rationals();
        // (x-1)(x-2) and (x-1)(x+3)
        let a = ints(&[2, -3, 1]);
        let b = ints(&[-3, 2, 1]);
        assert_eq!(gcd(&a, &b, &f), ints(&[-1, 1]));
    }

    #[test]
    fn squarefree_of_square() {
        let f = Field::rationals();
        let a = mul(&ints(&[-1, 1]), &ints(&[-1, 1]), &f);
        let a = mul(&a, &ints(&[2, 1]), &f);
        assert_eq!(squarefree(&a, &f), mul(&ints(&[-1, 1]), &ints(&[2, 1]), &f));
    }
}
