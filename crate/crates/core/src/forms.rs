//! Differential forms `Ω^k = Λ^k ⊗ A`, written with invariant forms on the
//! left and algebra coefficients on the right.
//!
//! A form of degree `k` is a sparse vector of length `dim(Λ^k)·r³`, indexed
//! by `basis_index * r³ + monomial_index`.

use std::fmt;

use crate::algebra::{d_monomial, AlgElem, Monomial};
use crate::cyclotomic::{CycField, CycScalar};
use crate::exterior::{
    basis_name, basis_words, generator_push_table, lambda_dim, Exterior, InvForm, A, B, C,
};
use crate::linalg::SVec;

/// An element of `Ω^degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Form {
    pub degree: usize,
    pub vec: SVec,
}

impl Form {
    pub fn zero(degree: usize) -> Self {
        Form {
            degree,
            vec: SVec::new(),
        }
    }

    pub fn new(degree: usize, vec: SVec) -> Self {
        Form { degree, vec }
    }

    pub fn is_zero(&self) -> bool {
        self.vec.is_zero()
    }

    pub fn add(&self, other: &Form) -> Form {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        assert_eq!(self.degree, other.degree, "adding forms of different degree");
        Form::new(self.degree, self.vec.add(&other.vec))
    }

    pub fn sub(&self, other: &Form) -> Form {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return Form::new(other.degree, other.vec.neg());
        }
        assert_eq!(self.degree, other.degree, "subtracting forms of different degree");
        Form::new(self.degree, self.vec.sub(&other.vec))
    }

    pub fn scale(&self, s: &CycScalar) -> Form {
        Form::new(self.degree, self.vec.scale(s))
    }

    pub fn neg(&self) -> Form {
        Form::new(self.degree, self.vec.neg())
    }
}

/// Per-root context: the field, the invariant exterior algebra and the
/// bimodule tables. Built once per `r` and shared read-only.
pub struct Calculus {
    field: &'static CycField,
    r: u32,
    n: usize,
    ext: Exterior,
    /// `push1[X][j]`: right coefficients of `X · e_j` for each monomial `X`.
    push1: Vec<[[AlgElem; 4]; 4]>,
    d0: Vec<[AlgElem; 4]>,
}

impl Calculus {
    pub fn new(field: &'static CycField) -> Self {
        let r = field.r();
        let n = (r * r * r) as usize;
        let ext = Exterior::new(field);
        let gens = [
            generator_push_table(field, 0),
            generator_push_table(field, 1),
            generator_push_table(field, 2),
        ];
        let mut push1: Vec<[[AlgElem; 4]; 4]> = Vec::with_capacity(n);
        for idx in 0..n {
            let mono = Monomial::from_index(idx, r);
            let entry = if mono == Monomial::ONE {
                std::array::from_fn(|j| {
                    std::array::from_fn(|i| {
                        if i == j {
                            AlgElem::one(field)
                        } else {
                            AlgElem::zero(field)
                        }
                    })
                })
            } else {
                // X = g · X'
                let (g, rest) = if mono.m > 0 {
                    (0, Monomial::new(mono.m - 1, mono.n, mono.k))
                } else if mono.n > 0 {
                    (1, Monomial::new(0, mono.n - 1, mono.k))
                } else {
                    (2, Monomial::new(0, 0, mono.k - 1))
                };
                let prev = &push1[rest.index(r)];
                let table = &gens[g];
                std::array::from_fn(|j| {
                    std::array::from_fn(|l| {
                        let mut acc = AlgElem::zero(field);
                        for i in 0..4 {
                            if !prev[j][i].is_zero() && !table[i][l].is_zero() {
                                acc = acc.add(&table[i][l].mul(&prev[j][i]));
                            }
                        }
                        acc
                    })
                })
            };
            push1.push(entry);
        }
        let d0 = Monomial::all(r).map(|w| d_monomial(field, w)).collect();
        Calculus {
            field,
            r,
            n,
            ext,
            push1,
            d0,
        }
    }

    pub fn field(&self) -> &'static CycField {
        self.field
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// `dim A = r³`.
    pub fn alg_dim(&self) -> usize {
        self.n
    }

    pub fn exterior(&self) -> &Exterior {
        &self.ext
    }

    /// `dim Ω^k`.
    pub fn form_dim(&self, k: usize) -> usize {
        lambda_dim(k) * self.n
    }

    pub fn index(&self, basis: usize, mono: Monomial) -> usize {
        basis * self.n + mono.index(self.r)
    }

    pub fn split_index(&self, idx: usize) -> (usize, Monomial) {
        (idx / self.n, Monomial::from_index(idx % self.n, self.r))
    }

    /// `e_I · f`.
    pub fn form_from(&self, e: &InvForm, f: &AlgElem) -> Form {
        let mut pairs = Vec::new();
        for (i, c) in e.terms() {
            for (m, v) in f.terms() {
                pairs.push((self.index(i, m), c * v));
            }
        }
        Form::new(e.degree, SVec::from_pairs(pairs))
    }

    /// Degree-0 form of an algebra element.
    pub fn function(&self, f: &AlgElem) -> Form {
        Form::new(0, f.coeffs().clone())
    }

    pub fn scalar_form(&self, s: CycScalar) -> Form {
        self.function(&AlgElem::scalar(s))
    }

    /// Right coefficient of the `basis`-th invariant form.
    pub fn component(&self, w: &Form, basis: usize) -> AlgElem {
        AlgElem::from_svec(
            self.field,
            w.vec.slice(basis * self.n..(basis + 1) * self.n),
        )
    }

    pub fn components(&self, w: &Form) -> Vec<AlgElem> {
        (0..lambda_dim(w.degree)).map(|i| self.component(w, i)).collect()
    }

    /// `Σ e_I f_I` from the list of right coefficients.
    pub fn from_components(&self, degree: usize, comps: &[AlgElem]) -> Form {
        let mut entries = Vec::new();
        for (i, f) in comps.iter().enumerate() {
            entries.extend(f.coeffs().iter().map(|(j, v)| (i * self.n + j, v.clone())));
        }
        Form::new(degree, SVec::from_pairs(entries))
    }

    /// `ω · x`.
    pub fn mul_right(&self, w: &Form, x: &AlgElem) -> Form {
        let comps: Vec<AlgElem> = self.components(w).iter().map(|f| f.mul(x)).collect();
        self.from_components(w.degree, &comps)
    }

    /// `e ∧ ω` for an invariant form `e`; no commutation is needed.
    pub fn wedge_inv_left(&self, e: &InvForm, w: &Form) -> Form {
        let deg = e.degree + w.degree;
        if deg > 4 {
            return Form::zero(deg);
        }
        let mut comps = vec![AlgElem::zero(self.field); lambda_dim(deg)];
        for (j, f) in self.components(w).iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            for (i, c) in e.terms() {
                let prod = self.ext.wedge_basis(e.degree, i, w.degree, j);
                for (l, p) in prod.terms() {
                    comps[l] = comps[l].add(&f.scale(&(c * p)));
                }
            }
        }
        self.from_components(deg, &comps)
    }

    /// `x · e_j` with the coefficients moved to the right.
    pub fn push_left(&self, x: &AlgElem, j: usize) -> [AlgElem; 4] {
        let mut out: [AlgElem; 4] = std::array::from_fn(|_| AlgElem::zero(self.field));
        for (mono, c) in x.terms() {
            let row = &self.push1[mono.index(self.r)][j];
            for l in 0..4 {
                if !row[l].is_zero() {
                    out[l] = out[l].add(&row[l].scale(c));
                }
            }
        }
        out
    }

    /// `x · e_W` for an ordered basis word `W`, as a form with right coefficients.
    pub fn push_word(&self, x: &AlgElem, word: &[u8]) -> Form {
        if word.is_empty() {
            return self.function(x);
        }
        let first = self.push_left(x, word[0] as usize);
        let mut acc = Form::zero(word.len());
        for (l, p) in first.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let tail = self.push_word(p, &word[1..]);
            acc = acc.add(&self.wedge_inv_left(&InvForm::e(self.field, l as u8), &tail));
        }
        acc
    }

    /// `x · ω`.
    pub fn left_mul(&self, x: &AlgElem, w: &Form) -> Form {
        let words = basis_words(w.degree);
        let mut acc = Form::zero(w.degree);
        for (i, f) in self.components(w).iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            let pushed = self.push_word(x, &words[i]);
            acc = acc.add(&self.mul_right(&pushed, f));
        }
        acc
    }

    /// General product `ω ∧ η` on `Ω`.
    pub fn wedge(&self, w: &Form, eta: &Form) -> Form {
        let deg = w.degree + eta.degree;
        if deg > 4 {
            return Form::zero(deg);
        }
        let words = basis_words(w.degree);
        let mut acc = Form::zero(deg);
        for (i, f) in self.components(w).iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            let moved = self.left_mul(f, eta);
            let e = InvForm::from_word(self.field, &words[i]);
            acc = acc.add(&self.wedge_inv_left(&e, &moved));
        }
        acc
    }

    /// `d` of an algebra element by the closed monomial formula.
    pub fn d_function(&self, x: &AlgElem) -> Form {
        let mut comps: [AlgElem; 4] = std::array::from_fn(|_| AlgElem::zero(self.field));
        for (mono, c) in x.terms() {
            let dm = &self.d0[mono.index(self.r)];
            for l in 0..4 {
                if !dm[l].is_zero() {
                    comps[l] = comps[l].add(&dm[l].scale(c));
                }
            }
        }
        self.from_components(1, &comps)
    }

    /// `d` by the graded Leibniz rule:
    /// `d(e_I f) = d(e_I) f + (-1)^k e_I ∧ df`.
    pub fn d(&self, w: &Form) -> Form {
        let k = w.degree;
        if k >= 4 {
            return Form::zero(k + 1);
        }
        let words = basis_words(k);
        let mut acc = Form::zero(k + 1);
        for (i, f) in self.components(w).iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            let e = InvForm::from_word(self.field, &words[i]);
            let de = self.ext.d_inv(&e);
            acc = acc.add(&self.form_from(&de, f));
            let mut tail = self.wedge_inv_left(&e, &self.d_function(f));
            if k % 2 == 1 {
                tail = tail.neg();
            }
            acc = acc.add(&tail);
        }
        acc
    }

    /// `d = -[θ, ·}` computed with the bimodule commutation; an independent
    /// route used to check [`Self::d`].
    pub fn d_by_commutator(&self, w: &Form) -> Form {
        let theta = self.form_from(&InvForm::theta(self.field), &AlgElem::one(self.field));
        let left = self.wedge(&theta, w);
        let right = self.wedge(w, &theta);
        if w.degree.is_multiple_of(2) {
            right.sub(&left)
        } else {
            left.add(&right).neg()
        }
    }

    /// Basis vector `e_I · X` of `Ω^k`.
    pub fn basis_form(&self, k: usize, basis: usize, mono: Monomial) -> Form {
        Form::new(k, SVec::unit(self.index(basis, mono), self.field))
    }

    pub fn theta(&self) -> Form {
        self.form_from(&InvForm::theta(self.field), &AlgElem::one(self.field))
    }

    pub fn display<'a>(&'a self, w: &'a Form) -> FormDisplay<'a> {
        FormDisplay { calc: self, form: w }
    }

    /// JSON rendering: list of `[invariant basis name, monomial, coeff strings]`.
    pub fn form_to_json(&self, w: &Form) -> serde_json::Value {
        let words = basis_words(w.degree);
        let terms: Vec<serde_json::Value> = w
            .vec
            .iter()
            .map(|(idx, c)| {
                let (b, m) = self.split_index(idx);
                serde_json::json!([basis_name(&words[b]), m.to_string(), c.to_strings()])
            })
            .collect();
        serde_json::json!({"degree": w.degree, "terms": terms})
    }

    pub fn form_from_json(&self, v: &serde_json::Value) -> crate::error::Result<Form> {
        use crate::error::Error;
        let bad = |m: &str| Error::Parse(format!("form json: {m}"));
        let degree = v["degree"].as_u64().ok_or_else(|| bad("degree"))? as usize;
        if degree > 4 {
            return Err(bad("degree above 4"));
        }
        let words = basis_words(degree);
        let mut pairs = Vec::new();
        for t in v["terms"].as_array().ok_or_else(|| bad("terms"))? {
            let name = t[0].as_str().ok_or_else(|| bad("basis name"))?;
            let b = words
                .iter()
                .position(|w| basis_name(w) == name)
                .ok_or_else(|| bad("unknown basis name"))?;
            let mono: Monomial = t[1].as_str().ok_or_else(|| bad("monomial"))?.parse()?;
            let mono = crate::algebra::monomial_checked(self.r, mono.m, mono.n, mono.k)?;
            let c = CycScalar::from_json(self.field, &t[2])?;
            pairs.push((self.index(b, mono), c));
        }
        Ok(Form::new(degree, SVec::from_pairs(pairs)))
    }
}

pub struct FormDisplay<'a> {
    calc: &'a Calculus,
    form: &'a Form,
}

impl fmt::Display for FormDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.form.is_zero() {
            return write!(f, "0");
        }
        let words = basis_words(self.form.degree);
        let parts: Vec<String> = self
            .form
            .vec
            .iter()
            .map(|(idx, c)| {
                let (b, m) = self.calc.split_index(idx);
                format!("({c}) {} {m}", basis_name(&words[b]))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Letters usable as invariant 1-form generators.
pub const GENERATORS: [u8; 3] = [A, B, C];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::{d_push_table, D};

    fn calc(r: u32) -> Calculus {
        Calculus::new(CycField::get(r).unwrap())
    }

    #[test]
    fn push_examples() {
        let cx = calc(3);
        let k = cx.field();
        let (a, c) = (AlgElem::a(k), AlgElem::c(k));
        // c·e_b = e_b·c
        let p = cx.push_left(&c, B as usize);
        assert_eq!(p[1], c);
        assert!(p[0].is_zero() && p[2].is_zero() && p[3].is_zero());
        // a·e_d = q^{-1} e_d·a
        let p = cx.push_left(&a, D as usize);
        assert_eq!(p[3], a.scale(&k.q_power(-1)));
        // a·e_a = q e_a·a + μ e_c·c + qμ² e_d·a
        let p = cx.push_left(&a, A as usize);
        let mu = k.mu();
        assert_eq!(p[0], a.scale(&k.q()));
        assert!(p[1].is_zero());
        assert_eq!(p[2], c.scale(&mu));
        assert_eq!(p[3], a.scale(&(k.q() * &mu * &mu)));
    }

    #[test]
    fn derived_d_action_matches_stated_rules() {
        for r in [3, 5] {
            let cx = calc(r);
            let k = cx.field();
            let d = AlgElem::d(k);
            let table = d_push_table(k);
            for j in 0..4 {
                let p = cx.push_left(&d, j);
                for l in 0..4 {
                    assert_eq!(p[l], table[j][l], "d·e_{j} component {l}");
                }
            }
        }
    }

    #[test]
    fn left_action_respects_relations() {
        for r in [3, 5] {
            let cx = calc(r);
            let k = cx.field();
            let gens = [AlgElem::a(k), AlgElem::b(k), AlgElem::c(k), AlgElem::d(k)];
            for x in &gens {
                for y in &gens {
                    let xy = x.mul(y);
                    for j in 0..4 {
                        let e = cx.form_from(&InvForm::e(k, j as u8), &AlgElem::one(k));
                        let lhs = cx.left_mul(&xy, &e);
                        let rhs = cx.left_mul(x, &cx.left_mul(y, &e));
                        assert_eq!(lhs, rhs);
                    }
                }
            }
            // a^r = 1 and b^r = c^r = 0 act consistently
            let e = cx.form_from(&InvForm::e(k, A), &AlgElem::one(k));
            let mut acc = e.clone();
            let mut accb = e.clone();
            for _ in 0..r {
                acc = cx.left_mul(&gens[0], &acc);
                accb = cx.left_mul(&gens[1], &accb);
            }
            assert_eq!(acc, e);
            assert!(accb.is_zero());
        }
    }

    #[test]
    fn d_of_a_matches_generator_formula() {
        for r in [3, 5, 7] {
            let cx = calc(r);
            let k = cx.field();
            let mu = k.mu();
            let a = AlgElem::a(k);
            let inner = InvForm::e(k, A).sub(
                &InvForm::e(k, D).scale(&(k.q_power(-1) * (k.one() - &mu * &k.q_int(2)))),
            );
            let expect = cx
                .form_from(&inner.scale(&(k.q() - k.one())), &a)
                .add(&cx.form_from(&InvForm::e(k, C).scale(&mu), &AlgElem::c(k)));
            assert_eq!(cx.d_function(&a), expect);
        }
    }

    #[test]
    fn closed_formula_matches_commutator_on_all_monomials() {
        for r in [3, 5] {
            let cx = calc(r);
            for mono in Monomial::all(r) {
                let f = cx.function(&AlgElem::monomial(cx.field(), mono));
                assert_eq!(cx.d(&f), cx.d_by_commutator(&f), "mismatch at {mono}");
            }
        }
    }
}
