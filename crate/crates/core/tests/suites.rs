mod common;

#[test]
fn field_axioms() {
    common::field_axioms().unwrap();
}

#[test]
fn euler_relation() {
    common::euler_relation().unwrap();
}

#[test]
fn gcd_squarefree_oracle() {
    common::gcd_squarefree_oracle().unwrap();
}

#[test]
fn smith_form() {
    common::smith_form().unwrap();
}

#[test]
fn bezout_lines() {
    common::bezout_lines().unwrap();
}

#[test]
fn groebner_uniqueness() {
    common::groebner_uniqueness().unwrap();
}
