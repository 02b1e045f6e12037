//! Finitely presented groups: abelianization by Smith normal form and
//! non-abelian finite permutation quotients.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Generators are numbered from 1; a letter `-g` is the inverse of generator `g`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FinitePresentation {
    pub generator_count: usize,
    pub names: Vec<String>,
    pub relators: Vec<Vec<i32>>,
}

fn free_reduce(w: &[i32]) -> Vec<i32> {
    let mut out: Vec<i32> = Vec::with_capacity(w.len());
    for &x in w {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

impl FinitePresentation {
    pub fn new(names: Vec<String>, relators: Vec<Vec<i32>>) -> Result<FinitePresentation> {
        let n = names.len() as i32;
        if relators.iter().flatten().any(|&x| x == 0 || x.abs() > n) {
            return Err(Error::InvalidParameters("relator letter out of range".into()));
        }
        Ok(FinitePresentation {
            generator_count: names.len(),
            names,
            relators: relators.iter().map(|r| free_reduce(r)).collect(),
        })
    }

    pub fn render_relator(&self, r: &[i32]) -> String {
        if r.is_empty() {
            return "1".into();
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < r.len() {
            let mut j = i;
            while j < r.len() && r[j] == r[i] {
                j += 1;
            }
            let name = &self.names[r[i].unsigned_abs() as usize - 1];
            let e = (j - i) as i64 * r[i].signum() as i64;
            parts.push(if e == 1 { name.clone() } else { format!("{name}^{e}") });
            i = j;
        }
        parts.join(" ")
    }
}

/// <a, b, c | a^p c^-1, b^q c^-1, c^k>.
pub fn prop1_presentation(p: u32, q: u32, k: u32) -> Result<FinitePresentation> {
    if p < 2 || q < 2 || k < 1 || p.gcd(&q) != 1 {
        return Err(Error::InvalidParameters(format!("(p, q, k) = ({p}, {q}, {k}) needs coprime p, q >= 2 and k >= 1")));
    }
    let pow = |g: i32, e: u32| std::iter::repeat_n(g, e as usize);
    let r1: Vec<i32> = pow(1, p).chain([-3]).collect();
    let r2: Vec<i32> = pow(2, q).chain([-3]).collect();
    let r3: Vec<i32> = pow(3, k).collect();
    FinitePresentation::new(vec!["a".into(), "b".into(), "c".into()], vec![r1, r2, r3])
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntegerMatrix {
    pub rows: usize,
    pub cols: usize,
    #[serde(serialize_with = "big_rows")]
    pub data: Vec<Vec<BigInt>>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> IntegerMatrix {
        IntegerMatrix { rows, cols, data: vec![vec![BigInt::zero(); cols]; rows] }
    }

    pub fn identity(n: usize) -> IntegerMatrix {
        let mut m = IntegerMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = BigInt::one();
        }
        m
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> IntegerMatrix {
        let cols = rows.first().map_or(0, |r| r.len());
        IntegerMatrix { rows: rows.len(), cols, data: rows.iter().map(|r| r.iter().map(|&x| x.into()).collect()).collect() }
    }

    pub fn mul(&self, o: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, o.rows, "shape mismatch");
        let mut m = IntegerMatrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.data[i][k].is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    m.data[i][j] += &self.data[i][k] * &o.data[k][j];
                }
            }
        }
        m
    }

    /// Determinant by fraction-free elimination; square matrices only.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "square matrix");
        let n = self.rows;
        let mut a = self.data.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else { return BigInt::zero() };
            if p != k {
                a.swap(p, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        if n == 0 {
            BigInt::one()
        } else {
            sign * &a[n - 1][n - 1]
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.data.swap(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for r in &mut self.data {
            r.swap(a, b);
        }
    }

    /// row[dst] += f * row[src]
    fn add_row(&mut self, dst: usize, src: usize, f: &BigInt) {
        for j in 0..self.cols {
            let v = f * &self.data[src][j];
            self.data[dst][j] += v;
        }
    }

    fn add_col(&mut self, dst: usize, src: usize, f: &BigInt) {
        for r in &mut self.data {
            let v = f * &r[src];
            r[dst] += v;
        }
    }

    fn neg_row(&mut self, i: usize) {
        for x in &mut self.data[i] {
            *x = -&*x;
        }
    }
}

/// (D, U, V) with U * M * V = D, U and V unimodular, D diagonal with
/// nonnegative entries each dividing the next.
pub fn smith_normal_form(m: &IntegerMatrix) -> (IntegerMatrix, IntegerMatrix, IntegerMatrix) {
    let mut d = m.clone();
    let mut u = IntegerMatrix::identity(m.rows);
    let mut v = IntegerMatrix::identity(m.cols);
    let r = m.rows.min(m.cols);
    let mut t = 0;
    while t < r {
        // pivot: smallest nonzero absolute value in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..m.rows {
            for j in t..m.cols {
                if !d.data[i][j].is_zero()
                    && best.is_none_or(|(bi, bj)| d.data[i][j].abs() < d.data[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);
        let mut dirty = false;
        for i in t + 1..m.rows {
            let f = -(d.data[i][t].div_floor(&d.data[t][t]));
            if !f.is_zero() {
                d.add_row(i, t, &f);
                u.add_row(i, t, &f);
            }
            dirty |= !d.data[i][t].is_zero();
        }
        for j in t + 1..m.cols {
            let f = -(d.data[t][j].div_floor(&d.data[t][t]));
            if !f.is_zero() {
                d.add_col(j, t, &f);
                v.add_col(j, t, &f);
            }
            dirty |= !d.data[t][j].is_zero();
        }
        if dirty {
            continue;
        }
        // the pivot must divide the rest of the block
        let bad = (t + 1..m.rows).find(|&i| (t + 1..m.cols).any(|j| !(&d.data[i][j] % &d.data[t][t]).is_zero()));
        if let Some(i) = bad {
            let one = BigInt::one();
            d.add_row(t, i, &one);
            u.add_row(t, i, &one);
            continue;
        }
        if d.data[t][t].is_negative() {
            d.neg_row(t);
            u.neg_row(t);
        }
        t += 1;
    }
    (d, u, v)
}

/// Relation matrix: one row per relator, one column per generator (exponent sums).
pub fn relation_matrix(pres: &FinitePresentation) -> IntegerMatrix {
    let mut m = IntegerMatrix::zeros(pres.relators.len(), pres.generator_count);
    for (i, r) in pres.relators.iter().enumerate() {
        for &x in r {
            m.data[i][x.unsigned_abs() as usize - 1] += x.signum();
        }
    }
    m
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Abelianization {
    pub free_rank: usize,
    /// Elementary divisors greater than one.
    #[serde(serialize_with = "big_list")]
    pub torsion: Vec<BigInt>,
}

impl fmt::Display for Abelianization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("Z/{d}")).collect();
        parts.extend(std::iter::repeat_n("Z".to_string(), self.free_rank));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

pub fn abelianization(pres: &FinitePresentation) -> Abelianization {
    let m = relation_matrix(pres);
    let (d, _, _) = smith_normal_form(&m);
    let diag: Vec<BigInt> = (0..m.rows.min(m.cols)).map(|i| d.data[i][i].clone()).collect();
    let nonzero = diag.iter().filter(|x| !x.is_zero()).count();
    Abelianization {
        free_rank: pres.generator_count - nonzero,
        torsion: diag.into_iter().filter(|x| !x.is_zero() && !x.is_one()).collect(),
    }
}

/// Images of the generators; permutations act on {0, .., degree-1} and are
/// printed in 1-based cycle notation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermutationAssignment {
    pub degree: usize,
    pub images: Vec<Vec<usize>>,
    /// 0-based indices of two generators whose images do not commute.
    pub noncommuting: (usize, usize),
}

pub fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for s in 0..p.len() {
        if seen[s] || p[s] == s {
            continue;
        }
        let mut cyc = vec![s + 1];
        seen[s] = true;
        let mut x = p[s];
        while x != s {
            seen[x] = true;
            cyc.push(x + 1);
            x = p[x];
        }
        let body: Vec<String> = cyc.iter().map(|c| c.to_string()).collect();
        out.push_str(&format!("({})", body.join(" ")));
    }
    if out.is_empty() {
        "()".into()
    } else {
        out
    }
}

impl Serialize for PermutationAssignment {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct View {
            degree: usize,
            images: Vec<String>,
            noncommuting: (usize, usize),
        }
        View {
            degree: self.degree,
            images: self.images.iter().map(|p| cycle_notation(p)).collect(),
            noncommuting: (self.noncommuting.0 + 1, self.noncommuting.1 + 1),
        }
        .serialize(s)
    }
}

fn big_list<S: Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

fn big_rows<S: Serializer>(v: &[Vec<BigInt>], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()))
}

type Perm = Vec<usize>;

fn compose(a: &[usize], b: &[usize]) -> Perm {
    // apply a first, then b
    a.iter().map(|&x| b[x]).collect()
}

fn inverse(a: &[usize]) -> Perm {
    let mut r = vec![0; a.len()];
    for (i, &x) in a.iter().enumerate() {
        r[x] = i;
    }
    r
}

fn is_identity(p: &[usize]) -> bool {
    p.iter().enumerate().all(|(i, &x)| i == x)
}

fn evaluate(word: &[i32], imgs: &[Option<Perm>], invs: &[Option<Perm>], m: usize) -> Option<Perm> {
    let mut acc: Perm = (0..m).collect();
    for &x in word {
        let g = x.unsigned_abs() as usize - 1;
        let p = if x > 0 { imgs[g].as_ref()? } else { invs[g].as_ref()? };
        acc = compose(&acc, p);
    }
    Some(acc)
}

fn perm_order(p: &[usize]) -> usize {
    let mut seen = vec![false; p.len()];
    let mut ord = 1usize;
    for s in 0..p.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = p[x];
            len += 1;
        }
        ord = ord.lcm(&len);
    }
    ord
}

fn all_perms(m: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut cur: Perm = (0..m).collect();
    fn rec(k: usize, cur: &mut Perm, out: &mut Vec<Perm>) {
        if k == cur.len() {
            out.push(cur.clone());
            return;
        }
        for i in k..cur.len() {
            cur.swap(k, i);
            rec(k + 1, cur, out);
            cur.swap(k, i);
        }
    }
    rec(0, &mut cur, &mut out);
    out
}

/// Sorted lists of cycles, the key for a deterministic search order.
fn cycle_key(p: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; p.len()];
    let mut out = Vec::new();
    for s in 0..p.len() {
        if seen[s] || p[s] == s {
            continue;
        }
        let mut cyc = vec![s];
        seen[s] = true;
        let mut x = p[s];
        while x != s {
            seen[x] = true;
            cyc.push(x);
            x = p[x];
        }
        out.push(cyc);
    }
    out
}

fn cycle_type(p: &[usize]) -> Vec<usize> {
    let mut t: Vec<usize> = cycle_key(p).iter().map(|c| c.len()).collect();
    t.sort_unstable();
    t
}

/// Exponent e when the relator, with `trivial` generators deleted, is a power of `g`.
fn single_power(word: &[i32], trivial: &[bool]) -> Option<(usize, i64)> {
    let w: Vec<i32> = free_reduce(&word.iter().copied().filter(|x| !trivial[x.unsigned_abs() as usize - 1]).collect::<Vec<_>>());
    let g = w.first()?.unsigned_abs() as usize - 1;
    w.iter().all(|x| x.unsigned_abs() as usize - 1 == g).then(|| (g, w.iter().map(|&x| x.signum() as i64).sum()))
}

const SEARCH_BUDGET: u64 = 20_000_000;

/// Finite quotient in which two generators do not commute, searching permutation
/// degrees 2..=max_degree. Generators later in the list are sent to the identity
/// first; order constraints read off the relators restrict each image, and the
/// first constrained image is taken up to conjugacy.
pub fn nonabelian_certificate(pres: &FinitePresentation, max_degree: usize) -> Option<PermutationAssignment> {
    let n = pres.generator_count;
    if !(2..=16).contains(&n) {
        return None;
    }
    let mut subsets: Vec<Vec<bool>> = (0..1u32 << n)
        .map(|mask| (0..n).map(|g| mask >> g & 1 == 1).collect::<Vec<bool>>())
        .filter(|s| s.iter().filter(|&&x| !x).count() >= 2)
        .collect();
    // most generators trivial first, then trivial sets weighted to later generators
    subsets.sort_by_key(|s| {
        let size = s.iter().filter(|&&x| x).count();
        let weight: u32 = s.iter().enumerate().filter(|(_, &x)| x).map(|(g, _)| 1u32 << g).sum();
        (std::cmp::Reverse(size), std::cmp::Reverse(weight))
    });
    for m in 2..=max_degree {
        let perms = {
            let mut v = all_perms(m);
            v.retain(|p| !is_identity(p));
            v.sort_by_key(|p| cycle_key(p));
            v
        };
        for trivial in &subsets {
            if let Some(a) = search_subset(pres, trivial, m, &perms) {
                return Some(a);
            }
        }
    }
    None
}

fn search_subset(pres: &FinitePresentation, trivial: &[bool], m: usize, perms: &[Perm]) -> Option<PermutationAssignment> {
    let n = pres.generator_count;
    let mut order: Vec<Option<i64>> = vec![None; n];
    for r in &pres.relators {
        if let Some((g, e)) = single_power(r, trivial) {
            let e = e.abs();
            order[g] = Some(match order[g] {
                Some(o) => o.gcd(&e),
                None => e,
            });
        }
    }
    let free: Vec<usize> = (0..n).filter(|&g| !trivial[g]).collect();
    let candidates: Vec<Vec<&Perm>> = free
        .iter()
        .map(|&g| match order[g] {
            Some(0) | None => perms.iter().collect(),
            Some(o) => perms.iter().filter(|p| o % perm_order(p) as i64 == 0).collect(),
        })
        .collect();
    if candidates.iter().any(|c| c.is_empty()) {
        return None;
    }
    let work: u64 = candidates.iter().fold(1u64, |acc, c| acc.saturating_mul(c.len() as u64));
    if work > SEARCH_BUDGET * 64 {
        return None;
    }
    let mut imgs: Vec<Option<Perm>> = (0..n).map(|g| trivial[g].then(|| (0..m).collect())).collect();
    let mut invs = imgs.clone();
    let mut budget = SEARCH_BUDGET;
    let mut state = Dfs { pres, free: &free, candidates: &candidates, m, budget: &mut budget };
    state.run(0, &mut imgs, &mut invs)
}

struct Dfs<'a> {
    pres: &'a FinitePresentation,
    free: &'a [usize],
    candidates: &'a [Vec<&'a Perm>],
    m: usize,
    budget: &'a mut u64,
}

impl Dfs<'_> {
    fn run(&mut self, k: usize, imgs: &mut Vec<Option<Perm>>, invs: &mut Vec<Option<Perm>>) -> Option<PermutationAssignment> {
        if k == self.free.len() {
            for (i, &a) in self.free.iter().enumerate() {
                for &b in &self.free[i + 1..] {
                    let (pa, pb) = (imgs[a].as_ref()?, imgs[b].as_ref()?);
                    if compose(pa, pb) != compose(pb, pa) {
                        return Some(PermutationAssignment {
                            degree: self.m,
                            images: imgs.iter().map(|p| p.clone().expect("assigned")).collect(),
                            noncommuting: (a, b),
                        });
                    }
                }
            }
            return None;
        }
        let g = self.free[k];
        let mut seen_types: Vec<Vec<usize>> = Vec::new();
        for &p in &self.candidates[k] {
            if *self.budget == 0 {
                return None;
            }
            *self.budget -= 1;
            if k == 0 {
                // conjugating the whole assignment fixes the first image up to cycle type
                let t = cycle_type(p);
                if seen_types.contains(&t) {
                    continue;
                }
                seen_types.push(t);
            }
            imgs[g] = Some(p.clone());
            invs[g] = Some(inverse(p));
            let ok = self.pres.relators.iter().all(|r| match evaluate(r, imgs, invs, self.m) {
                Some(v) => is_identity(&v),
                None => true,
            });
            if ok {
                if let Some(found) = self.run(k + 1, imgs, invs) {
                    return Some(found);
                }
            }
        }
        imgs[g] = None;
        invs[g] = None;
        None
    }
}

/// Every relator maps to the identity and the recorded pair does not commute.
pub fn check_assignment(pres: &FinitePresentation, a: &PermutationAssignment) -> bool {
    let imgs: Vec<Option<Perm>> = a.images.iter().cloned().map(Some).collect();
    let invs: Vec<Option<Perm>> = a.images.iter().map(|p| Some(inverse(p))).collect();
    let relators_hold = pres.relators.iter().all(|r| evaluate(r, &imgs, &invs, a.degree).is_some_and(|v| is_identity(&v)));
    let (x, y) = a.noncommuting;
    relators_hold
        && a.images.len() == pres.generator_count
        && compose(&a.images[x], &a.images[y]) != compose(&a.images[y], &a.images[x])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(m: &IntegerMatrix) -> Vec<i64> {
        (0..m.rows.min(m.cols)).map(|i| i64::try_from(&m.data[i][i]).unwrap()).collect()
    }

    #[test]
    fn snf_two_three() {
        let m = IntegerMatrix::from_i64(&[vec![2, 0], vec![0, 3]]);
        let (d, u, v) = smith_normal_form(&m);
        assert_eq!(diag(&d), vec![1, 6]);
        assert_eq!(u.mul(&m).mul(&v), d);
    }

    #[test]
    fn snf_identity() {
        let m = IntegerMatrix::identity(3);
        assert_eq!(smith_normal_form(&m).0, m);
    }

    #[test]
    fn presentation_relators() {
        let p = prop1_presentation(3, 2, 1).unwrap();
        let r: Vec<String> = p.relators.iter().map(|r| p.render_relator(r)).collect();
        assert_eq!(r, vec!["a^3 c^-1", "b^2 c^-1", "c"]);
        assert!(prop1_presentation(2, 4, 1).is_err());
    }

    #[test]
    fn abelianizations() {
        let ab = abelianization(&prop1_presentation(3, 2, 1).unwrap());
        assert_eq!(ab, Abelianization { free_rank: 0, torsion: vec![6.into()] });
        let ab = abelianization(&prop1_presentation(2, 3, 2).unwrap());
        assert_eq!(ab.torsion, vec![BigInt::from(12)]);
        let free = FinitePresentation::new(vec!["x".into(), "y".into()], vec![]).unwrap();
        assert_eq!(abelianization(&free), Abelianization { free_rank: 2, torsion: vec![] });
    }

    #[test]
    fn s3_quotient_of_classical_group() {
        let p = prop1_presentation(3, 2, 1).unwrap();
        let a = nonabelian_certificate(&p, 3).unwrap();
        assert_eq!(a.degree, 3);
        assert_eq!(cycle_notation(&a.images[0]), "(1 2 3)");
        assert_eq!(cycle_notation(&a.images[1]), "(1 2)");
        assert_eq!(cycle_notation(&a.images[2]), "()");
        assert!(check_assignment(&p, &a));
    }

    #[test]
    fn cyclic_group_has_no_witness() {
        let p = FinitePresentation::new(vec!["a".into()], vec![vec![1, 1]]).unwrap();
        assert!(nonabelian_certificate(&p, 6).is_none());
    }
}
