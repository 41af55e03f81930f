//! Invariant forms `Λ = ⊕ Λ^k` of the 4-dimensional calculus.
//!
//! Letters `0..4` stand for `e_a, e_b, e_c, e_d`. `Λ^k` is represented in the
//! basis of strictly increasing words (`{e_ab, e_ac, e_ad, e_bc, e_bd, e_cd}`
//! in degree 2 and so on), and products of arbitrary words are brought to
//! that basis by the quadratic rewriting rules
//!
//! ```text
//! e_x e_x = 0 (x = b, c, d)        e_y e_x = -e_x e_y (b <= x < y)
//! e_a e_a = μ e_bc                 e_d e_a = -e_a e_d - μ e_bc
//! e_b e_a = q^{-2}(μ e_bd - e_ab)  e_c e_a = -q² e_a e_c - μ e_cd
//! ```
//!
//! each of which moves `e_a` to the left or removes one.

use std::collections::HashMap;

use crate::algebra::AlgElem;
use crate::cyclotomic::{CycField, CycScalar};
use crate::linalg::{LinOp, SVec, Subspace};

pub const LETTERS: [char; 4] = ['a', 'b', 'c', 'd'];
pub const A: u8 = 0;
pub const B: u8 = 1;
pub const C: u8 = 2;
pub const D: u8 = 3;

/// `dim Λ^k`.
pub fn lambda_dim(k: usize) -> usize {
    [1, 4, 6, 4, 1].get(k).copied().unwrap_or(0)
}

/// Ordered basis words of `Λ^k`.
pub fn basis_words(k: usize) -> Vec<Vec<u8>> {
    fn rec(start: u8, left: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for x in start..4 {
            cur.push(x);
            rec(x + 1, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= 4 {
        rec(0, k, &mut Vec::new(), &mut out);
    }
    out
}

pub fn basis_index(word: &[u8]) -> Option<usize> {
    basis_words(word.len()).iter().position(|w| w == word)
}

/// `e_ab`-style name of a basis word (`1` in degree 0).
pub fn basis_name(word: &[u8]) -> String {
    if word.is_empty() {
        return "1".into();
    }
    let s: String = word.iter().map(|&x| LETTERS[x as usize]).collect();
    format!("e_{s}")
}

/// Parse `e_abd`-style names (letters in any order are rejected).
pub fn parse_basis_name(s: &str) -> Option<Vec<u8>> {
    let letters = s.strip_prefix("e_")?;
    let word: Vec<u8> = letters
        .chars()
        .map(|ch| LETTERS.iter().position(|&l| l == ch).map(|p| p as u8))
        .collect::<Option<_>>()?;
    basis_index(&word).map(|_| word)
}

/// An element of `Λ^k` in the ordered basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvForm {
    pub degree: usize,
    pub coeffs: Vec<CycScalar>,
}

impl InvForm {
    pub fn zero(field: &'static CycField, degree: usize) -> Self {
        InvForm {
            degree,
            coeffs: vec![field.zero(); lambda_dim(degree)],
        }
    }

    pub fn basis(field: &'static CycField, degree: usize, i: usize) -> Self {
        let mut f = Self::zero(field, degree);
        f.coeffs[i] = field.one();
        f
    }

    /// The generator `e_x` of `Λ¹`.
    pub fn e(field: &'static CycField, letter: u8) -> Self {
        Self::basis(field, 1, letter as usize)
    }

    pub fn one(field: &'static CycField) -> Self {
        Self::basis(field, 0, 0)
    }

    pub fn from_word(field: &'static CycField, word: &[u8]) -> Self {
        Self::basis(field, word.len(), basis_index(word).expect("ordered basis word"))
    }

    /// `θ = e_a + e_d`.
    pub fn theta(field: &'static CycField) -> Self {
        Self::e(field, A).add(&Self::e(field, D))
    }

    /// `e_z = q e_a - q^{-1} e_d`.
    pub fn e_z(field: &'static CycField) -> Self {
        Self::e(field, A)
            .scale(&field.q())
            .sub(&Self::e(field, D).scale(&field.q_power(-1)))
    }

    /// `Top = e_abcd`.
    pub fn top(field: &'static CycField) -> Self {
        Self::basis(field, 4, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(CycScalar::is_zero)
    }

    pub fn add(&self, other: &InvForm) -> InvForm {
        assert_eq!(self.degree, other.degree, "adding forms of different degree");
        InvForm {
            degree: self.degree,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &InvForm) -> InvForm {
        assert_eq!(self.degree, other.degree, "subtracting forms of different degree");
        InvForm {
            degree: self.degree,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, s: &CycScalar) -> InvForm {
        InvForm {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|a| a * s).collect(),
        }
    }

    pub fn to_svec(&self) -> SVec {
        SVec::from_dense(&self.coeffs)
    }

    pub fn from_svec(field: &'static CycField, degree: usize, v: &SVec) -> Self {
        InvForm {
            degree,
            coeffs: v.to_dense(lambda_dim(degree), field),
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &CycScalar)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }
}

impl std::fmt::Display for InvForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let words = basis_words(self.degree);
        let parts: Vec<String> = self
            .terms()
            .map(|(i, c)| format!("({c}){}", basis_name(&words[i])))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Structure tables of `Λ` for one root of unity, built once.
pub struct Exterior {
    field: &'static CycField,
    /// Normal form of every word of length <= 4.
    normal: HashMap<Vec<u8>, InvForm>,
    words: [Vec<Vec<u8>>; 5],
    d_table: [Vec<InvForm>; 5],
}

impl Exterior {
    pub fn new(field: &'static CycField) -> Self {
        let mut normal = HashMap::new();
        let mut all_words: Vec<Vec<u8>> = vec![Vec::new()];
        for len in 1..=4 {
            let mut next = Vec::new();
            for w in all_words.iter().filter(|w| w.len() == len - 1) {
                for x in 0..4u8 {
                    let mut nw = w.clone();
                    nw.push(x);
                    next.push(nw);
                }
            }
            all_words.extend(next);
        }
        for w in &all_words {
            normalize_word(field, w, &mut normal);
        }
        let words = [
            basis_words(0),
            basis_words(1),
            basis_words(2),
            basis_words(3),
            basis_words(4),
        ];
        let mut ext = Exterior {
            field,
            normal,
            words,
            d_table: Default::default(),
        };
        for k in 0..=4 {
            ext.d_table[k] = (0..lambda_dim(k))
                .map(|i| {
                    let x = InvForm::basis(field, k, i);
                    ext.graded_commutator_with_theta(&x)
                })
                .collect();
        }
        ext
    }

    pub fn field(&self) -> &'static CycField {
        self.field
    }

    pub fn words(&self, k: usize) -> &[Vec<u8>] {
        &self.words[k]
    }

    /// Normal form of an arbitrary word of length <= 4.
    pub fn normal_form(&self, word: &[u8]) -> &InvForm {
        &self.normal[word]
    }

    /// Wedge of two basis elements.
    pub fn wedge_basis(&self, p: usize, i: usize, q: usize, j: usize) -> InvForm {
        if p + q > 4 {
            return InvForm::zero(self.field, p + q);
        }
        let mut w = self.words[p][i].clone();
        w.extend_from_slice(&self.words[q][j]);
        self.normal[&w].clone()
    }

    pub fn wedge(&self, x: &InvForm, y: &InvForm) -> InvForm {
        let deg = x.degree + y.degree;
        let mut out = InvForm::zero(self.field, deg);
        if deg > 4 {
            return out;
        }
        for (i, cx) in x.terms() {
            for (j, cy) in y.terms() {
                let prod = self.wedge_basis(x.degree, i, y.degree, j);
                out = out.add(&prod.scale(&(cx * cy)));
            }
        }
        out
    }

    /// `-[θ, x}`: `-(θ∧x - (-1)^k x∧θ)` for `x ∈ Λ^k`.
    fn graded_commutator_with_theta(&self, x: &InvForm) -> InvForm {
        let theta = InvForm::theta(self.field);
        let left = self.wedge(&theta, x);
        let right = self.wedge(x, &theta);
        if x.degree.is_multiple_of(2) {
            right.sub(&left)
        } else {
            left.add(&right).scale(&-self.field.one())
        }
    }

    /// Exterior derivative on invariant forms.
    pub fn d_inv(&self, x: &InvForm) -> InvForm {
        let mut out = InvForm::zero(self.field, x.degree + 1);
        if x.degree >= 4 {
            return out;
        }
        for (i, c) in x.terms() {
            out = out.add(&self.d_table[x.degree][i].scale(c));
        }
        out
    }

    pub fn d_basis(&self, k: usize, i: usize) -> &InvForm {
        &self.d_table[k][i]
    }

    /// Matrix `(Λ¹)^{⊗n} → Λ^n` sending a word to its normal form.
    pub fn projection(&self, n: usize) -> LinOp {
        let cols: Vec<SVec> = tensor_words(n)
            .iter()
            .map(|w| self.normal[w].to_svec())
            .collect();
        LinOp::from_columns(self.field, lambda_dim(n), &cols)
    }
}

fn normalize_word(
    field: &'static CycField,
    word: &[u8],
    memo: &mut HashMap<Vec<u8>, InvForm>,
) -> InvForm {
    if let Some(f) = memo.get(word) {
        return f.clone();
    }
    let pos = word.windows(2).position(|p| p[0] >= p[1]);
    let out = match pos {
        None => InvForm::from_word(field, word),
        Some(i) => {
            let mut acc = InvForm::zero(field, word.len());
            for (pair, coeff) in rewrite_pair(field, word[i], word[i + 1]) {
                let mut w = word.to_vec();
                w[i] = pair[0];
                w[i + 1] = pair[1];
                let sub = normalize_word(field, &w, memo);
                acc = acc.add(&sub.scale(&coeff));
            }
            acc
        }
    };
    memo.insert(word.to_vec(), out.clone());
    out
}

/// Degree-2 relation for an out-of-order pair `x >= y`.
fn rewrite_pair(field: &'static CycField, x: u8, y: u8) -> Vec<([u8; 2], CycScalar)> {
    let mu = field.mu();
    let one = field.one();
    match (x, y) {
        (A, A) => vec![([B, C], mu)],
        (B, B) | (C, C) | (D, D) => vec![],
        (B, A) => vec![
            ([A, B], -field.q_power(-2)),
            ([B, D], field.q_power(-2) * &mu),
        ],
        (C, A) => vec![([A, C], -field.q_power(2)), ([C, D], -mu)],
        (D, A) => vec![([A, D], -one), ([B, C], -mu)],
        (C, B) => vec![([B, C], -one)],
        (D, B) => vec![([B, D], -one)],
        (D, C) => vec![([C, D], -one)],
        _ => unreachable!("pair ({x}, {y}) is already ordered"),
    }
}

/// All words of length `n`, in the tensor basis order (first letter most
/// significant).
pub fn tensor_words(n: usize) -> Vec<Vec<u8>> {
    (0..4usize.pow(n as u32))
        .map(|mut idx| {
            let mut w = vec![0u8; n];
            for p in (0..n).rev() {
                w[p] = (idx % 4) as u8;
                idx /= 4;
            }
            w
        })
        .collect()
}

fn tensor_index(w: &[u8]) -> usize {
    w.iter().fold(0, |acc, &x| acc * 4 + x as usize)
}

/// The braiding `Ψ` on `Λ¹ ⊗ Λ¹` as a 16×16 matrix on the basis
/// `e_i ⊗ e_j ↦ 4i + j`.
pub fn braiding(field: &'static CycField) -> LinOp {
    let q = |e| field.q_power(e);
    let mu = field.mu();
    let mu2 = &mu * &mu;
    let one = field.one();
    let t = |x: u8, y: u8| (x as usize) * 4 + y as usize;
    let mut cols: Vec<Vec<(usize, CycScalar)>> = vec![Vec::new(); 16];
    let mut set = |x: u8, y: u8, terms: Vec<((u8, u8), CycScalar)>| {
        cols[t(x, y)] = terms.into_iter().map(|((u, v), c)| (t(u, v), c)).collect();
    };
    // d ⊗ (q e_a - q^{-1} e_d) expands to q·(d,a) - q^{-1}·(d,d)
    set(
        A,
        A,
        vec![
            ((A, A), one.clone()),
            ((B, C), -mu.clone()),
            ((C, B), mu.clone()),
            ((D, A), &mu2 * &q(2)),
            ((D, D), -mu2.clone()),
        ],
    );
    set(B, B, vec![((B, B), one.clone())]);
    set(C, C, vec![((C, C), one.clone())]);
    set(D, D, vec![((D, D), one.clone())]);
    set(A, D, vec![((D, A), one.clone())]);
    set(
        D,
        A,
        vec![
            ((A, D), one.clone()),
            ((B, C), mu.clone()),
            ((C, B), -mu.clone()),
            ((D, A), -(&mu2 * &q(2))),
            ((D, D), mu2.clone()),
        ],
    );
    set(
        B,
        C,
        vec![
            ((C, B), one.clone()),
            ((D, A), &mu * &q(2)),
            ((D, D), -mu.clone()),
        ],
    );
    set(
        C,
        B,
        vec![
            ((B, C), one.clone()),
            ((D, A), -(&mu * &q(2))),
            ((D, D), mu.clone()),
        ],
    );
    set(A, B, vec![((B, A), one.clone()), ((D, B), &mu * &q(2))]);
    set(
        B,
        A,
        vec![
            ((A, B), q(-2)),
            ((B, A), mu.clone()),
            ((B, D), -(&mu * &q(-2))),
        ],
    );
    set(A, C, vec![((C, A), one.clone()), ((D, C), -mu.clone())]);
    set(
        C,
        A,
        vec![
            ((A, C), q(2)),
            ((C, A), -(&mu * &q(2))),
            ((C, D), mu.clone()),
            ((D, C), field.q2_int(2) * &mu2),
        ],
    );
    set(B, D, vec![((D, B), q(2))]);
    set(D, B, vec![((B, D), one.clone()), ((D, B), -(&mu * &q(2)))]);
    set(C, D, vec![((D, C), q(-2))]);
    set(D, C, vec![((C, D), one.clone()), ((D, C), mu.clone())]);
    let cols: Vec<SVec> = cols.into_iter().map(SVec::from_pairs).collect();
    LinOp::from_columns(field, 16, &cols)
}

/// `Ψ` acting on tensor positions `(pos, pos+1)` of `(Λ¹)^{⊗n}`.
pub fn braiding_at(psi: &LinOp, n: usize, pos: usize) -> LinOp {
    let field = psi.field();
    let cols: Vec<SVec> = tensor_words(n)
        .iter()
        .map(|w| {
            let src = w[pos] as usize * 4 + w[pos + 1] as usize;
            let img = psi.column(src);
            SVec::from_pairs(img.iter().map(|(t, c)| {
                let mut nw = w.clone();
                nw[pos] = (t / 4) as u8;
                nw[pos + 1] = (t % 4) as u8;
                (tensor_index(&nw), c.clone())
            }))
        })
        .collect();
    LinOp::from_columns(field, 4usize.pow(n as u32), &cols)
}

/// Embed an operator on `(Λ¹)^{⊗(n-1)}` as `id ⊗ op` on `(Λ¹)^{⊗n}`.
fn id_tensor(op: &LinOp, n: usize) -> LinOp {
    let field = op.field();
    let inner = 4usize.pow((n - 1) as u32);
    let cols: Vec<SVec> = (0..4 * inner)
        .map(|idx| {
            let (head, tail) = (idx / inner, idx % inner);
            op.column(tail).shifted(head * inner)
        })
        .collect();
    LinOp::from_columns(field, 4 * inner, &cols)
}

/// Braided integer `[n, -Ψ] = id - Ψ_12 + Ψ_12Ψ_23 - … ± Ψ_12⋯Ψ_{n-1,n}`.
pub fn braided_integer(psi: &LinOp, n: usize) -> LinOp {
    let field = psi.field();
    let dim = 4usize.pow(n as u32);
    let mut acc = LinOp::identity(field, dim);
    let mut chain = LinOp::identity(field, dim);
    let mut sign = field.one();
    for pos in 0..n.saturating_sub(1) {
        chain = chain
            .compose(&braiding_at(psi, n, pos))
            .expect("matching dims");
        sign = -sign;
        acc = acc.lin_comb(&chain, &sign).expect("matching dims");
    }
    acc
}

/// Braided factorial `A_n = (id ⊗ A_{n-1}) [n, -Ψ]`, with `A_1 = id`.
pub fn braided_factorial(psi: &LinOp, n: usize) -> LinOp {
    if n <= 1 {
        return LinOp::identity(psi.field(), 4usize.pow(n as u32));
    }
    let lower = braided_factorial(psi, n - 1);
    id_tensor(&lower, n)
        .compose(&braided_integer(psi, n))
        .expect("matching dims")
}

/// Kernel of `A_n` and of the rewriting projection `(Λ¹)^{⊗n} → Λ^n`.
pub fn factorial_vs_rewriting(ext: &Exterior, psi: &LinOp, n: usize) -> (Subspace, Subspace) {
    (braided_factorial(psi, n).kernel(), ext.projection(n).kernel())
}

/// Left multiplication of a generator on the invariant 1-forms:
/// `g · e_j = Σ_i e_i · table[j][i]` for `g ∈ {a, b, c}` (index 0, 1, 2).
pub fn generator_push_table(field: &'static CycField, g: u8) -> [[AlgElem; 4]; 4] {
    let mu = field.mu();
    let q = |e| field.q_power(e);
    let z = || AlgElem::zero(field);
    let qmu = &q(1) * &mu;
    let qmu2 = &qmu * &mu;
    // u = (a, b) and v = (c, d) are the columns of the generator matrix
    match g {
        0 | 1 => {
            let (u, v) = if g == 0 {
                (AlgElem::a(field), AlgElem::c(field))
            } else {
                (AlgElem::b(field), AlgElem::d(field))
            };
            [
                [u.scale(&q(1)), z(), v.scale(&mu), u.scale(&qmu2)],
                [z(), u.clone(), z(), v.scale(&qmu)],
                [z(), z(), u.clone(), z()],
                [z(), z(), z(), u.scale(&q(-1))],
            ]
        }
        2 => {
            let (v, u) = (AlgElem::c(field), AlgElem::a(field));
            [
                [v.scale(&q(-1)), u.scale(&mu), z(), z()],
                [z(), v.clone(), z(), z()],
                [z(), z(), v.clone(), u.scale(&qmu)],
                [z(), z(), z(), v.scale(&q(1))],
            ]
        }
        _ => panic!("generator index {g} out of range"),
    }
}

/// The same rule for `d`, used only to cross-check the derived action.
pub fn d_push_table(field: &'static CycField) -> [[AlgElem; 4]; 4] {
    let mu = field.mu();
    let q = |e| field.q_power(e);
    let z = || AlgElem::zero(field);
    let b = AlgElem::b(field);
    let d = AlgElem::d(field);
    let qmu = &q(1) * &mu;
    [
        [d.scale(&q(-1)), b.scale(&mu), z(), z()],
        [z(), d.clone(), z(), z()],
        [z(), z(), d.clone(), b.scale(&qmu)],
        [z(), z(), z(), d.scale(&q(1))],
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(r: u32) -> &'static CycField {
        CycField::get(r).unwrap()
    }

    fn e2(k: &'static CycField, name: &str) -> InvForm {
        InvForm::from_word(k, &parse_basis_name(name).unwrap())
    }

    #[test]
    fn degree_two_relations() {
        let k = f(5);
        let ext = Exterior::new(k);
        let (ea, ed) = (InvForm::e(k, A), InvForm::e(k, D));
        assert_eq!(ext.wedge(&ea, &ea), e2(k, "e_bc").scale(&k.mu()));
        let expect = e2(k, "e_ad").scale(&-k.one()).sub(&e2(k, "e_bc").scale(&k.mu()));
        assert_eq!(ext.wedge(&ed, &ea), expect);
        let th = InvForm::theta(k);
        assert!(ext.wedge(&th, &th).is_zero());
    }

    #[test]
    fn d_on_generators() {
        for r in [3, 5, 7] {
            let k = f(r);
            let ext = Exterior::new(k);
            let mu = k.mu();
            let d = |x: u8| ext.d_inv(&InvForm::e(k, x));
            assert_eq!(d(A), e2(k, "e_bc").scale(&-mu.clone()));
            assert_eq!(d(D), e2(k, "e_bc").scale(&mu));
            let eb = e2(k, "e_ab").add(&e2(k, "e_bd").scale(&k.q_power(-2)));
            assert_eq!(d(B), eb.scale(&-mu.clone()));
            let ec = e2(k, "e_ac").scale(&k.q_power(2)).add(&e2(k, "e_cd"));
            assert_eq!(d(C), ec.scale(&mu));
            assert!(ext.d_inv(&InvForm::theta(k)).is_zero());
        }
    }

    #[test]
    fn d_squared_and_leibniz_on_lambda() {
        for r in [3, 5] {
            let k = f(r);
            let ext = Exterior::new(k);
            for p in 0..=4 {
                for i in 0..lambda_dim(p) {
                    let x = InvForm::basis(k, p, i);
                    assert!(ext.d_inv(&ext.d_inv(&x)).is_zero());
                    for q in 0..=(4 - p) {
                        for j in 0..lambda_dim(q) {
                            let y = InvForm::basis(k, q, j);
                            let lhs = ext.d_inv(&ext.wedge(&x, &y));
                            let mut rhs = ext.wedge(&x, &ext.d_inv(&y));
                            if p % 2 == 1 {
                                rhs = rhs.scale(&-k.one());
                            }
                            if p + q < 4 {
                                rhs = rhs.add(&ext.wedge(&ext.d_inv(&x), &y));
                                assert_eq!(lhs, rhs, "Leibniz fails on ({p},{i})x({q},{j})");
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn braiding_entries() {
        let k = f(3);
        let psi = braiding(k);
        let col = |x: u8, y: u8| psi.column(x as usize * 4 + y as usize);
        assert_eq!(col(B, B), SVec::unit(5, k));
        assert_eq!(col(A, D), SVec::unit(12, k));
        assert_eq!(col(B, D), SVec::from_pairs([(13, k.q_power(2))]));
    }

    #[test]
    fn braid_relation() {
        for r in [3, 5] {
            let psi = braiding(f(r));
            let p12 = braiding_at(&psi, 3, 0);
            let p23 = braiding_at(&psi, 3, 1);
            let lhs = p12.compose(&p23).unwrap().compose(&p12).unwrap();
            let rhs = p23.compose(&p12).unwrap().compose(&p23).unwrap();
            assert_eq!(lhs, rhs);
            assert_eq!(psi.rank(), 16);
        }
    }

    #[test]
    fn factorial_kernels_match_rewriting() {
        let k = f(3);
        let ext = Exterior::new(k);
        let psi = braiding(k);
        for (n, expect) in [(2, 10), (3, 60)] {
            let (fact, rewrite) = factorial_vs_rewriting(&ext, &psi, n);
            assert_eq!(fact.dim(), expect);
            assert_eq!(fact, rewrite);
        }
    }
}
