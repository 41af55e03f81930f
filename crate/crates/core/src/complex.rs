//! The de Rham complex `Ω^0 → … → Ω^4` as exact matrices, its cohomology
//! and the catalog of named cocycle representatives.

use std::sync::{Arc, OnceLock};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::expr::parse_form;
use crate::forms::{Calculus, Form};
use crate::exterior::{lambda_dim, InvForm};
use crate::linalg::{LinOp, SVec, Subspace};

/// Named representatives. Exponents are written in terms of `r`.
pub const NAMED: &[(&str, usize, &str)] = &[
    ("1", 0, "1"),
    ("theta", 1, "theta"),
    ("h1", 1, "e_b a c^{r-1}"),
    ("h2", 1, "e_c a^{r-1} b^{r-1}"),
    ("n", 1, "e_a + e_c a^{r-1} c"),
    ("m1", 2, "e_bd a c^{r-1}"),
    ("m2", 2, "e_ab a c^{r-1}"),
    ("m3", 2, "e_ac a^{r-1} b^{r-1}"),
    ("m4", 2, "e_cd a^{r-1} b^{r-1}"),
    ("m5", 2, "(e_ac - e_cd) a^{r-1} c - e_ad"),
    ("m6", 2, "e_bd a b^{r-1} c^{r-2} + q^4 e_cd a^{r-1} b^{r-2} c^{r-1}"),
    ("Theta", 3, "e_bcd b^{r-1} c^{r-1}"),
    ("h1*", 3, "e_abd a c^{r-1}"),
    ("h2*", 3, "e_acd a^{r-1} b^{r-1}"),
    ("s", 3, "e_abd a b^{r-1} c^{r-2} + q^4 e_acd a^{r-1} b^{r-2} c^{r-1}"),
    ("top", 4, "e_abcd b^{r-1} c^{r-1}"),
];

/// The named basis of `H^k`, in catalog order.
pub fn named_basis(k: usize) -> Vec<&'static str> {
    NAMED.iter().filter(|(_, deg, _)| *deg == k).map(|(n, _, _)| *n).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimsReport {
    pub r: u32,
    pub all: Vec<usize>,
    pub closed: Vec<usize>,
    pub exact: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NamedCertificate {
    pub name: String,
    pub degree: usize,
    pub closed: bool,
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SetCertificate {
    pub members: Vec<NamedCertificate>,
    /// classes independent modulo exact forms
    pub independent: bool,
    /// classes span the whole cohomology group
    pub spanning: bool,
}

impl SetCertificate {
    pub fn passes(&self) -> bool {
        self.independent && self.spanning && self.members.iter().all(|m| m.closed && !m.exact)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThetaCertificate {
    pub h_dims: Vec<usize>,
    /// rank of `θ∧ : H^k → H^{k+1}` for k = 0..3
    pub ranks: Vec<usize>,
    pub theta_squared_zero: bool,
    /// θ∧ maps closed to closed and exact to exact in every degree
    pub well_defined: bool,
    pub exact_sequence: bool,
    /// images of the named classes, each checked modulo exact forms
    pub named_images: Vec<(String, bool)>,
}

impl ThetaCertificate {
    pub fn passes(&self) -> bool {
        self.theta_squared_zero
            && self.well_defined
            && self.exact_sequence
            && self.named_images.iter().all(|(_, ok)| *ok)
    }
}

pub struct DeRham {
    calc: Arc<Calculus>,
    d: Vec<LinOp>,
    closed: [OnceLock<Subspace>; 5],
    exact: [OnceLock<Subspace>; 5],
}

impl DeRham {
    pub fn new(calc: Arc<Calculus>) -> Self {
        let d = (0..4).into_par_iter().map(|k| build_d(&calc, k)).collect();
        DeRham {
            calc,
            d,
            closed: Default::default(),
            exact: Default::default(),
        }
    }

    /// Reuse matrices loaded from elsewhere (e.g. a cache); shapes are checked.
    pub fn from_parts(calc: Arc<Calculus>, d: Vec<LinOp>) -> Result<Self> {
        if d.len() != 4
            || d.iter().enumerate().any(|(k, m)| {
                m.cols() != calc.form_dim(k) || m.rows() != calc.form_dim(k + 1)
            })
        {
            return Err(Error::Dimension("d matrices have the wrong shape".into()));
        }
        Ok(DeRham {
            calc,
            d,
            closed: Default::default(),
            exact: Default::default(),
        })
    }

    pub fn calculus(&self) -> &Arc<Calculus> {
        &self.calc
    }

    /// `d_k : Ω^k → Ω^{k+1}` for k = 0..3.
    pub fn d(&self, k: usize) -> &LinOp {
        &self.d[k]
    }

    pub fn d_ops(&self) -> &[LinOp] {
        &self.d
    }

    /// `ker d_k` (all of `Ω^4` for k = 4).
    pub fn closed(&self, k: usize) -> &Subspace {
        self.closed[k].get_or_init(|| {
            if k == 4 {
                Subspace::full(self.calc.field(), self.calc.form_dim(4))
            } else {
                self.d[k].kernel()
            }
        })
    }

    /// `im d_{k-1}` (zero for k = 0).
    pub fn exact(&self, k: usize) -> &Subspace {
        self.exact[k].get_or_init(|| {
            if k == 0 {
                Subspace::zero(self.calc.field(), self.calc.form_dim(0))
            } else {
                self.d[k - 1].image()
            }
        })
    }

    pub fn is_closed(&self, w: &Form) -> bool {
        w.degree == 4 || self.d[w.degree].apply(&w.vec).is_zero()
    }

    pub fn is_exact(&self, w: &Form) -> bool {
        self.exact(w.degree).contains(&w.vec)
    }

    pub fn h_dim(&self, k: usize) -> usize {
        self.closed(k).dim() - self.exact(k).dim()
    }

    /// Canonical representatives of `H^k`: residues of the closed basis
    /// modulo exact forms.
    pub fn cohomology_basis(&self, k: usize) -> Result<Vec<Form>> {
        Ok(self
            .closed(k)
            .complement_of(self.exact(k))?
            .into_iter()
            .map(|v| Form::new(k, v))
            .collect())
    }

    pub fn report(&self) -> DimsReport {
        DimsReport {
            r: self.calc.r(),
            all: (0..5).map(|k| self.calc.form_dim(k)).collect(),
            closed: (0..5).map(|k| self.closed(k).dim()).collect(),
            exact: (0..5).map(|k| self.exact(k).dim()).collect(),
        }
    }

    pub fn named_form(&self, name: &str) -> Result<Form> {
        named_form(&self.calc, name)
    }

    /// Rank of the given forms modulo exact forms.
    pub fn rank_mod_exact(&self, k: usize, forms: &[SVec]) -> usize {
        let span = Subspace::from_vectors(self.calc.field(), self.calc.form_dim(k), forms.to_vec());
        span.dim_modulo(self.exact(k)).expect("same ambient")
    }

    /// `x ≡ λ y` modulo exact forms for some nonzero λ.
    pub fn proportional_mod_exact(&self, x: &Form, y: &Form) -> bool {
        let k = x.degree;
        x.degree == y.degree
            && !self.is_exact(x)
            && !self.is_exact(y)
            && self.rank_mod_exact(k, &[x.vec.clone(), y.vec.clone()]) == 1
    }

    pub fn verify_named(&self, name: &str) -> Result<NamedCertificate> {
        let w = self.named_form(name)?;
        Ok(NamedCertificate {
            name: name.to_string(),
            degree: w.degree,
            closed: self.is_closed(&w),
            exact: self.is_exact(&w),
        })
    }

    pub fn verify_named_set(&self, names: &[&str]) -> Result<SetCertificate> {
        let forms: Vec<Form> = names.iter().map(|n| self.named_form(n)).collect::<Result<_>>()?;
        let k = forms.first().map(|f| f.degree).unwrap_or(0);
        if forms.iter().any(|f| f.degree != k) {
            return Err(Error::Dimension("named set mixes degrees".into()));
        }
        let members = names.iter().map(|n| self.verify_named(n)).collect::<Result<Vec<_>>>()?;
        let rank = self.rank_mod_exact(k, &forms.iter().map(|f| f.vec.clone()).collect::<Vec<_>>());
        Ok(SetCertificate {
            members,
            independent: rank == forms.len(),
            spanning: rank == self.h_dim(k),
        })
    }

    fn theta_wedge(&self, w: &Form) -> Form {
        self.calc.wedge_inv_left(&InvForm::theta(self.calc.field()), w)
    }

    pub fn theta_complex_check(&self) -> Result<ThetaCertificate> {
        let theta = self.calc.theta();
        let theta_squared_zero = self.theta_wedge(&theta).is_zero();
        let mut well_defined = true;
        for k in 0..4 {
            for v in self.exact(k).basis() {
                if !self.is_exact(&self.theta_wedge(&Form::new(k, v.clone()))) {
                    well_defined = false;
                }
            }
        }
        let h_dims: Vec<usize> = (0..5).map(|k| self.h_dim(k)).collect();
        let mut ranks = Vec::new();
        for k in 0..4 {
            let images: Vec<Form> = self
                .cohomology_basis(k)?
                .iter()
                .map(|w| self.theta_wedge(w))
                .collect();
            if !images.iter().all(|w| self.is_closed(w)) {
                well_defined = false;
            }
            let vecs: Vec<SVec> = images.into_iter().map(|w| w.vec).collect();
            ranks.push(self.rank_mod_exact(k + 1, &vecs));
        }
        // exact at H^k: dim ker θ_k = rank θ_{k-1}; θ∧θ = 0 gives im ⊆ ker
        let exact_sequence = theta_squared_zero
            && (0..5).all(|k| {
                let out_rank = if k < 4 { ranks[k] } else { 0 };
                let in_rank = if k > 0 { ranks[k - 1] } else { 0 };
                h_dims[k] - out_rank == in_rank
            });

        let mut named = Vec::new();
        let f = |s: &str| self.named_form(s);
        let check_eq = |lhs: Form, rhs: Form| self.is_exact(&lhs.sub(&rhs));
        named.push((
            "theta^h1 = m2 - m1".to_string(),
            check_eq(self.theta_wedge(&f("h1")?), f("m2")?.sub(&f("m1")?)),
        ));
        named.push((
            "theta^h2 = m3 - m4".to_string(),
            check_eq(self.theta_wedge(&f("h2")?), f("m3")?.sub(&f("m4")?)),
        ));
        named.push((
            "theta^n = m5".to_string(),
            check_eq(self.theta_wedge(&f("n")?), f("m5")?),
        ));
        for (src, dst) in [("m1+m2", "h1*"), ("m3+m4", "h2*"), ("m6", "s"), ("Theta", "top")] {
            let x = match src {
                "m1+m2" => f("m1")?.add(&f("m2")?),
                "m3+m4" => f("m3")?.add(&f("m4")?),
                other => f(other)?,
            };
            named.push((
                format!("theta^({src}) ~ {dst}"),
                self.proportional_mod_exact(&self.theta_wedge(&x), &f(dst)?),
            ));
        }
        Ok(ThetaCertificate {
            h_dims,
            ranks,
            theta_squared_zero,
            well_defined,
            exact_sequence,
            named_images: named,
        })
    }
}

/// Matrix of `d_k` assembled column by column with the Leibniz rule.
pub fn build_d(calc: &Calculus, k: usize) -> LinOp {
    let cols: Vec<SVec> = (0..calc.form_dim(k))
        .into_par_iter()
        .map(|idx| {
            let (b, m) = calc.split_index(idx);
            calc.d(&calc.basis_form(k, b, m)).vec
        })
        .collect();
    LinOp::from_columns(calc.field(), calc.form_dim(k + 1), &cols)
}

pub fn named_form(calc: &Calculus, name: &str) -> Result<Form> {
    let (_, deg, src) = NAMED
        .iter()
        .find(|(n, _, _)| *n == name)
        .ok_or_else(|| Error::UnknownName(name.to_string()))?;
    let w = parse_form(calc, src)?;
    if w.degree != *deg && !w.is_zero() {
        return Err(Error::Dimension(format!("{name} parsed with degree {}", w.degree)));
    }
    Ok(Form::new(*deg, w.vec))
}

/// `Σ (-1)^k dim Ω^k`, always zero.
pub fn euler_all(calc: &Calculus) -> i64 {
    (0..5)
        .map(|k| {
            let s = if k % 2 == 0 { 1 } else { -1 };
            s * (lambda_dim(k) * calc.alg_dim()) as i64
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::CycField;

    #[test]
    fn derham_dims_r3() {
        let calc = Arc::new(Calculus::new(CycField::get(3).unwrap()));
        let cx = DeRham::new(calc);
        let rep = cx.report();
        assert_eq!(rep.all, vec![27, 108, 162, 108, 27]);
        assert_eq!(rep.closed, vec![1, 30, 84, 82, 27]);
        assert_eq!(rep.exact, vec![0, 26, 78, 78, 26]);
        for k in 0..3 {
            assert!(cx.d(k + 1).compose(cx.d(k)).unwrap().is_zero());
        }
    }
}
