//! The reduced coordinate algebra `A = C_q[SL_2] / (a^r - 1, b^r, c^r)`.
//!
//! Normal-ordered monomials `a^m b^n c^k` (`0 <= m, n, k < r`) form a basis
//! of dimension `r³`. The relations `ba = qab`, `ca = qac`, `cb = bc` act
//! diagonally on normal-ordered words, so a product of two monomials is a
//! single monomial times a power of `q`. The generator `d` is not carried:
//! it is the element `a^{r-1}(1 + q^{-1} bc)`.

use std::fmt;

use crate::cyclotomic::{CycField, CycScalar};
use crate::error::{Error, Result};
use crate::linalg::{LinOp, SVec};

/// Exponents of `a^m b^n c^k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub m: u32,
    pub n: u32,
    pub k: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { m: 0, n: 0, k: 0 };

    pub fn new(m: u32, n: u32, k: u32) -> Self {
        Monomial { m, n, k }
    }

    pub fn index(&self, r: u32) -> usize {
        ((self.m * r + self.n) * r + self.k) as usize
    }

    pub fn from_index(i: usize, r: u32) -> Self {
        let i = i as u32;
        Monomial {
            m: i / (r * r),
            n: (i / r) % r,
            k: i % r,
        }
    }

    /// Normal-order `a^m b^n c^k` with arbitrary integer exponents: the `a`
    /// exponent is taken mod `r`, anything outside `[0, r)` in `b` or `c`
    /// annihilates the word.
    pub fn reduced(m: i64, n: i64, k: i64, r: u32) -> Option<Monomial> {
        let r64 = r as i64;
        if !(0..r64).contains(&n) || !(0..r64).contains(&k) {
            return None;
        }
        Some(Monomial::new(m.rem_euclid(r64) as u32, n as u32, k as u32))
    }

    /// `self · other = q^e · mono`, or `None` when the product vanishes.
    pub fn mul(&self, other: &Monomial, r: u32) -> Option<(i64, Monomial)> {
        let n = self.n + other.n;
        let k = self.k + other.k;
        if n >= r || k >= r {
            return None;
        }
        let e = ((self.n + self.k) * other.m) as i64;
        Some((e, Monomial::new((self.m + other.m) % r, n, k)))
    }

    pub fn all(r: u32) -> impl Iterator<Item = Monomial> {
        (0..(r * r * r) as usize).map(move |i| Monomial::from_index(i, r))
    }
}

impl fmt::Display for Monomial {
    /// `a^m b^n c^k` with zero exponents omitted; `1` for the unit.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (sym, e) in [("a", self.m), ("b", self.n), ("c", self.k)] {
            match e {
                0 => {}
                1 => parts.push(sym.to_string()),
                _ => parts.push(format!("{sym}^{e}")),
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

impl std::str::FromStr for Monomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut mono = Monomial::ONE;
        if s == "1" {
            return Ok(mono);
        }
        for tok in s.split_whitespace() {
            let (sym, e) = match tok.split_once('^') {
                Some((sym, e)) => (
                    sym,
                    e.parse::<u32>()
                        .map_err(|_| Error::Parse(format!("bad exponent in {tok:?}")))?,
                ),
                None => (tok, 1),
            };
            match sym {
                "a" => mono.m += e,
                "b" => mono.n += e,
                "c" => mono.k += e,
                _ => return Err(Error::Parse(format!("bad monomial factor {tok:?}"))),
            }
        }
        Ok(mono)
    }
}

/// An element of `A`, a sparse combination of normal-ordered monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgElem {
    field: &'static CycField,
    coeffs: SVec,
}

impl AlgElem {
    pub fn zero(field: &'static CycField) -> Self {
        AlgElem {
            field,
            coeffs: SVec::new(),
        }
    }

    pub fn one(field: &'static CycField) -> Self {
        Self::monomial(field, Monomial::ONE)
    }

    pub fn scalar(s: CycScalar) -> Self {
        let field = s.field();
        AlgElem {
            field,
            coeffs: SVec::from_pairs([(0, s)]),
        }
    }

    pub fn monomial(field: &'static CycField, mono: Monomial) -> Self {
        Self::term(mono, field.one())
    }

    pub fn term(mono: Monomial, c: CycScalar) -> Self {
        let field = c.field();
        AlgElem {
            field,
            coeffs: SVec::from_pairs([(mono.index(field.r()), c)]),
        }
    }

    pub fn from_svec(field: &'static CycField, coeffs: SVec) -> Self {
        AlgElem { field, coeffs }
    }

    pub fn a(field: &'static CycField) -> Self {
        Self::monomial(field, Monomial::new(1, 0, 0))
    }

    pub fn b(field: &'static CycField) -> Self {
        Self::monomial(field, Monomial::new(0, 1, 0))
    }

    pub fn c(field: &'static CycField) -> Self {
        Self::monomial(field, Monomial::new(0, 0, 1))
    }

    /// `d = a^{r-1}(1 + q^{-1} bc)`.
    pub fn d(field: &'static CycField) -> Self {
        let r = field.r();
        let mut out = Self::monomial(field, Monomial::new(r - 1, 0, 0));
        if r > 1 {
            out = out.add(&Self::term(Monomial::new(r - 1, 1, 1), field.q_power(-1)));
        }
        out
    }

    pub fn field(&self) -> &'static CycField {
        self.field
    }

    pub fn r(&self) -> u32 {
        self.field.r()
    }

    pub fn coeffs(&self) -> &SVec {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &CycScalar)> + '_ {
        let r = self.r();
        self.coeffs.iter().map(move |(i, c)| (Monomial::from_index(i, r), c))
    }

    pub fn add(&self, other: &AlgElem) -> AlgElem {
        AlgElem {
            field: self.field,
            coeffs: self.coeffs.add(&other.coeffs),
        }
    }

    pub fn sub(&self, other: &AlgElem) -> AlgElem {
        AlgElem {
            field: self.field,
            coeffs: self.coeffs.sub(&other.coeffs),
        }
    }

    pub fn scale(&self, s: &CycScalar) -> AlgElem {
        AlgElem {
            field: self.field,
            coeffs: self.coeffs.scale(s),
        }
    }

    pub fn mul(&self, other: &AlgElem) -> AlgElem {
        let r = self.r();
        let mut pairs = Vec::with_capacity(self.coeffs.nnz() * other.coeffs.nnz());
        for (x, cx) in self.terms() {
            for (y, cy) in other.terms() {
                if let Some((e, z)) = x.mul(&y, r) {
                    pairs.push((z.index(r), cx * cy * self.field.q_power(e)));
                }
            }
        }
        AlgElem {
            field: self.field,
            coeffs: SVec::from_pairs(pairs),
        }
    }

    pub fn pow(&self, e: u32) -> AlgElem {
        let mut acc = AlgElem::one(self.field);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// JSON list of `[monomial string, coeff strings]`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms()
                .map(|(m, c)| serde_json::json!([m.to_string(), c.to_strings()]))
                .collect(),
        )
    }
}

impl fmt::Display for AlgElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms().map(|(m, c)| format!("({c})·{m}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Matrix of `y ↦ y·x` in the monomial basis.
pub fn right_mult_matrix(x: &AlgElem) -> LinOp {
    let f = x.field();
    let r = f.r();
    let cols: Vec<SVec> = Monomial::all(r)
        .map(|y| AlgElem::monomial(f, y).mul(x).coeffs)
        .collect();
    LinOp::from_columns(f, (r * r * r) as usize, &cols)
}

/// Matrix of `y ↦ x·y` in the monomial basis.
pub fn left_mult_matrix(x: &AlgElem) -> LinOp {
    let f = x.field();
    let r = f.r();
    let cols: Vec<SVec> = Monomial::all(r)
        .map(|y| x.mul(&AlgElem::monomial(f, y)).coeffs)
        .collect();
    LinOp::from_columns(f, (r * r * r) as usize, &cols)
}

/// Exterior derivative of `a^m b^n c^k` by the closed formula, as the four
/// right coefficients of `e_a, e_b, e_c, e_d`.
///
/// Shifted monomials are normal-ordered with `a^{-1} = a^{r-1}`; a `b` or
/// `c` exponent leaving `[0, r)` kills the term. Negative `b`/`c` exponents
/// only arise with a vanishing q-integer prefactor.
pub fn d_monomial(field: &'static CycField, w: Monomial) -> [AlgElem; 4] {
    let r = field.r();
    let (m, n, k) = (w.m as i64, w.n as i64, w.k as i64);
    let mu = field.mu();
    let q = |e: i64| field.q_power(e);
    let q2 = |e: i64| field.q2_int(e);
    let term = |mm: i64, nn: i64, kk: i64, c: CycScalar| -> AlgElem {
        if c.is_zero() {
            return AlgElem::zero(field);
        }
        if nn < 0 || kk < 0 {
            panic!("negative exponent with nonzero prefactor at {w}");
        }
        match Monomial::reduced(mm, nn, kk, r) {
            Some(mono) => AlgElem::term(mono, c),
            None => AlgElem::zero(field),
        }
    };

    let ea = term(m, n, k, q(m + n - k) - field.one());
    let eb = term(m + 1, n, k - 1, &mu * &q(n - k + 1) * q2(k));
    let ec = term(m - 1, n, k + 1, &mu * &q(-k - n) * q2(m + n)).add(&term(
        m - 1,
        n - 1,
        k,
        &mu * &q(-k - n) * q(1) * q2(n),
    ));
    let mu2 = &mu * &mu;
    let pre = &mu2 * &q(-k - m - n + 2);
    let ed = term(m, n, k, &pre * &(q2(k + 1) * q2(m + n)))
        .add(&term(m, n - 1, k - 1, &pre * &(q(1) * q2(n) * q2(k))))
        .add(&term(m, n, k, q(-m - n + k) - field.one()));
    [ea, eb, ec, ed]
}

/// `dim A = r³`.
pub fn dim(r: u32) -> usize {
    (r * r * r) as usize
}

/// Checked constructor from user-supplied exponents.
pub fn monomial_checked(r: u32, m: u32, n: u32, k: u32) -> Result<Monomial> {
    if m >= r || n >= r || k >= r {
        return Err(Error::Precondition(format!(
            "exponents of a^{m} b^{n} c^{k} must be below r = {r}"
        )));
    }
    Ok(Monomial::new(m, n, k))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(r: u32) -> &'static CycField {
        CycField::get(r).unwrap()
    }

    #[test]
    fn commutation_relations() {
        for r in [3, 5] {
            let k = f(r);
            let (a, b, c, d) = (AlgElem::a(k), AlgElem::b(k), AlgElem::c(k), AlgElem::d(k));
            let q = k.q();
            assert_eq!(b.mul(&a), a.mul(&b).scale(&q));
            assert_eq!(c.mul(&a), a.mul(&c).scale(&q));
            assert_eq!(d.mul(&b), b.mul(&d).scale(&q));
            assert_eq!(d.mul(&c), c.mul(&d).scale(&q));
            assert_eq!(c.mul(&b), b.mul(&c));
            let qmu = &q * &k.mu();
            assert_eq!(d.mul(&a).sub(&a.mul(&d)), b.mul(&c).scale(&qmu));
            // ad - q^{-1} bc = 1
            let det = a.mul(&d).sub(&b.mul(&c).scale(&k.q_power(-1)));
            assert_eq!(det, AlgElem::one(k));
            assert_eq!(a.pow(r), AlgElem::one(k));
            assert_eq!(d.pow(r), AlgElem::one(k));
            assert!(b.pow(r).is_zero() && c.pow(r).is_zero());
        }
    }

    #[test]
    fn a_times_a_inverse() {
        for r in [3, 5, 7] {
            let k = f(r);
            let ainv = AlgElem::monomial(k, Monomial::new(r - 1, 0, 0));
            assert_eq!(AlgElem::a(k).mul(&ainv), AlgElem::one(k));
        }
    }

    #[test]
    fn listed_identities_at_r3() {
        let k = f(3);
        let (a, b, c, d) = (AlgElem::a(k), AlgElem::b(k), AlgElem::c(k), AlgElem::d(k));
        let q = |e| k.q_power(e);
        let one = AlgElem::one(k);
        let bc = b.mul(&c);
        // d^2 = a(q^2 b^2c^2 - q bc + 1); the b^2c^2 coefficient is q^2, not 1
        let rhs = a.mul(&bc.mul(&bc).scale(&q(2)).sub(&bc.scale(&q(1))).add(&one));
        assert_eq!(d.mul(&d), rhs);
        // d^2 b = -q(ab^2c - q^2 ab)
        let ab = a.mul(&b);
        let rhs = ab.mul(&b).mul(&c).sub(&ab.scale(&q(2))).scale(&-q(1));
        assert_eq!(d.pow(2).mul(&b), rhs);
        // d^2 c = -q(abc^2 - q^2 ac)
        let ac = a.mul(&c);
        let rhs = ac.mul(&b).mul(&c).sub(&ac.scale(&q(2))).scale(&-q(1));
        assert_eq!(d.pow(2).mul(&c), rhs);
        // d b^2 = a^2 b^2,  d c^2 = a^2 c^2
        assert_eq!(d.mul(&b.pow(2)), a.pow(2).mul(&b.pow(2)));
        assert_eq!(d.mul(&c.pow(2)), a.pow(2).mul(&c.pow(2)));
        // d(bc - q) = q^2(a^2 b^2 c^2 - q^2 a^2)
        let lhs = d.mul(&bc.sub(&AlgElem::scalar(q(1))));
        let a2 = a.pow(2);
        let rhs = a2.mul(&bc).mul(&bc).sub(&a2.scale(&q(2))).scale(&q(2));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn right_mult_by_a_is_scaled_permutation() {
        let k = f(3);
        let m = right_mult_matrix(&AlgElem::a(k));
        for j in 0..27 {
            let col = m.column(j);
            assert_eq!(col.nnz(), 1);
            // oracle: direct product
            let y = AlgElem::monomial(k, Monomial::from_index(j, 3));
            assert_eq!(&col, y.mul(&AlgElem::a(k)).coeffs());
        }
        assert_eq!(right_mult_matrix(&AlgElem::one(k)), LinOp::identity(k, 27));
        // b^{r-1}·b kills everything
        let b = AlgElem::b(k);
        assert!(right_mult_matrix(&b.pow(2).mul(&b)).is_zero());
    }

    #[test]
    fn monomial_text_round_trip() {
        for mono in Monomial::all(3) {
            let s = mono.to_string();
            assert_eq!(s.parse::<Monomial>().unwrap(), mono);
        }
        assert_eq!(Monomial::new(1, 0, 2).to_string(), "a c^2");
        assert!("x^2".parse::<Monomial>().is_err());
    }

    #[test]
    fn d_of_unit_vanishes() {
        let k = f(5);
        assert!(d_monomial(k, Monomial::ONE).iter().all(AlgElem::is_zero));
    }
}
