//! Exact arithmetic over Q and quadratic fields Q(theta), theta^2 + b*theta + c = 0.
//!
//! Polynomials store raw [`Quad`] values and carry one [`Field`] handle; the
//! self-describing [`FieldElement`] is used at API boundaries and in reports.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Exact square root of a rational, if it is a perfect square.
pub fn rational_sqrt(x: &Rational) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer();
    let d = x.denom();
    let sn = n.sqrt();
    let sd = d.sqrt();
    if &(&sn * &sn) == n && &(&sd * &sd) == d {
        Some(Rational::new(sn, sd))
    } else {
        None
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldKind {
    Rationals,
    Quadratic,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldDescriptor {
    pub kind: FieldKind,
    /// Minimal polynomial theta^2 + b*theta + c (both zero for Q).
    pub b: Rational,
    pub c: Rational,
}

/// Shared handle to a field descriptor.
#[derive(Clone, Debug)]
pub struct Field(Arc<FieldDescriptor>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}

impl Eq for Field {}

impl std::ops::Deref for Field {
    type Target = FieldDescriptor;
    fn deref(&self) -> &FieldDescriptor {
        &self.0
    }
}

/// Builds Q(theta) for theta^2 + b*theta + c, refusing reducible minimal polynomials.
pub fn make_field(b: Rational, c: Rational) -> Result<Field> {
    let disc = &b * &b - rat(4) * &c;
    if rational_sqrt(&disc).is_some() {
        return Err(Error::ReducibleMinimalPolynomial { b: b.to_string(), c: c.to_string() });
    }
    Ok(Field(Arc::new(FieldDescriptor { kind: FieldKind::Quadratic, b, c })))
}

impl Field {
    pub fn rationals() -> Field {
        Field(Arc::new(FieldDescriptor { kind: FieldKind::Rationals, b: rat(0), c: rat(0) }))
    }

    /// Q(w) with w^2 + w + 1 = 0.
    pub fn eisenstein() -> Field {
        make_field(rat(1), rat(1)).expect("x^2+x+1 is irreducible")
    }

    /// Q(i) with i^2 + 1 = 0.
    pub fn gaussian() -> Field {
        make_field(rat(0), rat(1)).expect("x^2+1 is irreducible")
    }

    pub fn is_rational(&self) -> bool {
        self.kind == FieldKind::Rationals
    }

    pub fn is_eisenstein(&self) -> bool {
        !self.is_rational() && self.b == rat(1) && self.c == rat(1)
    }

    pub fn is_gaussian(&self) -> bool {
        !self.is_rational() && self.b.is_zero() && self.c == rat(1)
    }

    /// Discriminant b^2 - 4c of the minimal polynomial.
    pub fn discriminant(&self) -> Rational {
        &self.b * &self.b - rat(4) * &self.c
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { value: Quad::zero(), field: self.clone() }
    }

    pub fn one(&self) -> FieldElement {
        FieldElement { value: Quad::one(), field: self.clone() }
    }

    pub fn from_rational(&self, r: Rational) -> FieldElement {
        FieldElement { value: Quad::from_rational(r), field: self.clone() }
    }

    pub fn theta(&self) -> Result<FieldElement> {
        if self.is_rational() {
            return Err(Error::FieldMismatch);
        }
        Ok(FieldElement { value: Quad::theta(), field: self.clone() })
    }

    pub fn element(&self, value: Quad) -> FieldElement {
        FieldElement { value, field: self.clone() }
    }

    /// Short name used in reports.
    pub fn name(&self) -> String {
        if self.is_rational() {
            "Q".into()
        } else if self.is_eisenstein() {
            "Q(w)".into()
        } else if self.is_gaussian() {
            "Q(i)".into()
        } else {
            format!("Q[theta]/(theta^2 + ({})*theta + ({}))", self.b, self.c)
        }
    }

    /// Whether `other` embeds into `self` as a subfield in the obvious way.
    pub fn contains(&self, other: &Field) -> bool {
        other.is_rational() || self == other
    }
}

/// Raw value a0 + a1*theta; arithmetic that needs the minimal polynomial takes the field.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Quad {
    pub a0: Rational,
    pub a1: Rational,
}

impl Quad {
    pub fn zero() -> Quad {
        Quad { a0: rat(0), a1: rat(0) }
    }

    pub fn one() -> Quad {
        Quad { a0: rat(1), a1: rat(0) }
    }

    pub fn theta() -> Quad {
        Quad { a0: rat(0), a1: rat(1) }
    }

    pub fn from_rational(r: Rational) -> Quad {
        Quad { a0: r, a1: rat(0) }
    }

    pub fn from_int(n: i64) -> Quad {
        Quad::from_rational(rat(n))
    }

    pub fn new(a0: Rational, a1: Rational) -> Quad {
        Quad { a0, a1 }
    }

    pub fn is_zero(&self) -> bool {
        self.a0.is_zero() && self.a1.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a0.is_one() && self.a1.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.a1.is_zero()
    }

    pub fn add(&self, o: &Quad) -> Quad {
        Quad { a0: &self.a0 + &o.a0, a1: &self.a1 + &o.a1 }
    }

    pub fn sub(&self, o: &Quad) -> Quad {
        Quad { a0: &self.a0 - &o.a0, a1: &self.a1 - &o.a1 }
    }

    pub fn neg(&self) -> Quad {
        Quad { a0: -&self.a0, a1: -&self.a1 }
    }

    pub fn scale(&self, r: &Rational) -> Quad {
        Quad { a0: &self.a0 * r, a1: &self.a1 * r }
    }

    pub fn mul(&self, o: &Quad, f: &FieldDescriptor) -> Quad {
        if self.a1.is_zero() {
            return o.scale(&self.a0);
        }
        if o.a1.is_zero() {
            return self.scale(&o.a0);
        }
        // theta^2 = -b*theta - c
        let t2 = &self.a1 * &o.a1;
        Quad {
            a0: &self.a0 * &o.a0 - &t2 * &f.c,
            a1: &self.a0 * &o.a1 + &self.a1 * &o.a0 - &t2 * &f.b,
        }
    }

    /// Image under theta -> -b - theta.
    pub fn conj(&self, f: &FieldDescriptor) -> Quad {
        Quad { a0: &self.a0 - &self.a1 * &f.b, a1: -&self.a1 }
    }

    pub fn norm(&self, f: &FieldDescriptor) -> Rational {
        &self.a0 * &self.a0 - &self.a0 * &self.a1 * &f.b + &self.a1 * &self.a1 * &f.c
    }

    pub fn inv(&self, f: &FieldDescriptor) -> Result<Quad> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.a1.is_zero() {
            return Ok(Quad::from_rational(self.a0.recip()));
        }
        let n = self.norm(f);
        Ok(self.conj(f).scale(&n.recip()))
    }

    pub fn div(&self, o: &Quad, f: &FieldDescriptor) -> Result<Quad> {
        Ok(self.mul(&o.inv(f)?, f))
    }

    pub fn pow(&self, e: u32, f: &FieldDescriptor) -> Quad {
        let mut acc = Quad::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, f);
            }
            base = base.mul(&base, f);
            e >>= 1;
        }
        acc
    }

    /// Text form `a0 + a1*theta` with `theta` replaced by `sym`.
    pub fn render(&self, sym: &str) -> String {
        if self.a1.is_zero() {
            return self.a0.to_string();
        }
        let t = if self.a1.is_one() {
            sym.to_string()
        } else if (-&self.a1).is_one() {
            format!("-{sym}")
        } else {
            format!("{}*{sym}", self.a1)
        };
        if self.a0.is_zero() {
            t
        } else if self.a1.is_negative() {
            format!("{} - {}", self.a0, t.trim_start_matches('-'))
        } else {
            format!("{} + {}", self.a0, t)
        }
    }
}

impl fmt::Display for Quad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("theta"))
    }
}

/// An element a0 + a1*theta tagged with its field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldElement {
    pub value: Quad,
    pub field: Field,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

pub fn ext_arith(x: &FieldElement, y: &FieldElement, op: ArithOp) -> Result<FieldElement> {
    if x.field != y.field {
        return Err(Error::FieldMismatch);
    }
    let value = match op {
        ArithOp::Add => x.value.add(&y.value),
        ArithOp::Sub => x.value.sub(&y.value),
        ArithOp::Mul => x.value.mul(&y.value, &x.field),
    };
    Ok(FieldElement { value, field: x.field.clone() })
}

pub fn ext_inverse(x: &FieldElement) -> Result<FieldElement> {
    Ok(FieldElement { value: x.value.inv(&x.field)?, field: x.field.clone() })
}

impl FieldElement {
    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn norm(&self) -> Rational {
        self.value.norm(&self.field)
    }

    pub fn pow(&self, e: u32) -> FieldElement {
        FieldElement { value: self.value.pow(e, &self.field), field: self.field.clone() }
    }

    pub fn neg(&self) -> FieldElement {
        FieldElement { value: self.value.neg(), field: self.field.clone() }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Least common multiple of the denominators of both coordinates.
pub fn denominator_lcm<'a>(values: impl IntoIterator<Item = &'a Quad>) -> BigInt {
    let mut l = BigInt::one();
    for q in values {
        l = l.lcm(q.a0.denom());
        l = l.lcm(q.a1.denom());
    }
    l
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w() -> Field {
        Field::eisenstein()
    }

    #[test]
    fn make_field_examples() {
        assert!(make_field(rat(1), rat(1)).is_ok());
        assert!(make_field(rat(0), rat(1)).is_ok());
        assert!(matches!(
            make_field(rat(0), rat(-1)),
            Err(Error::ReducibleMinimalPolynomial { .. })
        ));
        // x^2 + 3x + 2 = (x+1)(x+2)
        assert!(make_field(rat(3), rat(2)).is_err());
        // x^2 - 1/4
        assert!(make_field(rat(0), ratio(-1, 4)).is_err());
    }

    #[test]
    fn omega_products() {
        let f = w();
        let om = f.theta().unwrap();
        let om2 = ext_arith(&om, &om, ArithOp::Mul).unwrap();
        assert_eq!(om2.value, Quad::new(rat(-1), rat(-1)));
        let one = ext_arith(&om, &om2, ArithOp::Mul).unwrap();
        assert_eq!(one.value, Quad::one());
    }

    #[test]
    fn gaussian_norm_product() {
        let f = Field::gaussian();
        let a = f.element(Quad::new(rat(1), rat(1)));
        let b = f.element(Quad::new(rat(1), rat(-1)));
        assert_eq!(ext_arith(&a, &b, ArithOp::Mul).unwrap().value, Quad::from_int(2));
    }

    #[test]
    fn inverses() {
        let f = w();
        let om = f.theta().unwrap();
        assert_eq!(ext_inverse(&om).unwrap().value, Quad::new(rat(-1), rat(-1)));
        let two = f.from_rational(rat(2));
        assert_eq!(ext_inverse(&two).unwrap().value, Quad::from_rational(ratio(1, 2)));
        let g = Field::gaussian();
        let i = g.theta().unwrap();
        assert_eq!(ext_inverse(&i).unwrap().value, Quad::new(rat(0), rat(-1)));
        assert_eq!(ext_inverse(&g.zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn inverse_of_omega_solves_linear_system() {
        // (0 + 1w)(c + dw) = 1  =>  -d + (c - d)w = 1 => d = -1, c = -1
        let f = w();
        let (c, d) = (rat(-1), rat(-1));
        let candidate = Quad::new(c, d);
        assert_eq!(Quad::theta().mul(&candidate, &f), Quad::one());
        assert_eq!(Quad::theta().inv(&f).unwrap(), candidate);
    }

    #[test]
    fn mismatch() {
        let a = w().one();
        let b = Field::gaussian().one();
        assert_eq!(ext_arith(&a, &b, ArithOp::Add), Err(Error::FieldMismatch));
    }

    #[test]
    fn rendering() {
        assert_eq!(Quad::new(ratio(1, 2), rat(-3)).to_string(), "1/2 - 3*theta");
        assert_eq!(Quad::new(rat(0), rat(1)).render("w"), "w");
        assert_eq!(Quad::new(rat(2), rat(0)).to_string(), "2");
        assert_eq!(Quad::new(rat(-1), rat(-1)).render("w"), "-1 - w");
    }
}
