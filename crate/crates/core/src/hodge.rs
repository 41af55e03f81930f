//! Metric, antisymmetrization tensor, Hodge star, codifferential, Laplacian
//! and harmonic forms.

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::algebra::AlgElem;
use crate::complex::DeRham;
use crate::cyclotomic::{CycField, CycScalar};
use crate::error::{Error, Result};
use crate::expr::{parse_form, parse_inv};
use crate::exterior::{basis_name, basis_words, Exterior, InvForm};
use crate::forms::{Calculus, Form};
use crate::linalg::{LinOp, SVec, Subspace};

/// `η = η^{ij} e_i ⊗ e_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Metric {
    pub lambda: CycScalar,
    pub eta: [[CycScalar; 4]; 4],
}

impl Metric {
    /// The one-parameter family
    /// `e_b⊗e_c + q² e_c⊗e_b + (q e_a - e_d)⊗(q e_a - e_d)/[2]_q + q(q-1) e_a⊗e_a + λ θ⊗θ`.
    pub fn with_lambda(field: &'static CycField, lambda: CycScalar) -> Self {
        let q = field.q();
        let inv2 = field.q_int(2).inv().expect("[2]_q is invertible at odd r");
        let zero = field.zero();
        let mut eta: [[CycScalar; 4]; 4] = std::array::from_fn(|_| std::array::from_fn(|_| zero.clone()));
        eta[0][0] = &(&q * &q) * &inv2 + &q * &(&q - &field.one()) + lambda.clone();
        eta[0][3] = &lambda - &(&q * &inv2);
        eta[3][0] = eta[0][3].clone();
        eta[3][3] = &inv2 + &lambda;
        eta[1][2] = field.one();
        eta[2][1] = field.q_power(2);
        Metric { lambda, eta }
    }

    /// `λ = q(1 - q - q²)/[2]_q`, the value making `★²` proportional to the identity.
    pub fn standard(field: &'static CycField) -> Self {
        let q = field.q();
        let lambda = &(&q * &(field.one() - q.clone() - field.q_power(2)))
            * &field.q_int(2).inv().expect("[2]_q is invertible at odd r");
        Self::with_lambda(field, lambda)
    }

    /// `λ = q(1 - q)/[4]_q`, where the family degenerates.
    pub fn degenerate_lambda(field: &'static CycField) -> Option<CycScalar> {
        let q = field.q();
        Some(&(&q * &(field.one() - q.clone())) * &field.q_int(4).inv()?)
    }

    pub fn matrix(&self) -> LinOp {
        let field = self.lambda.field();
        LinOp::from_triplets(
            field,
            4,
            4,
            (0..4).flat_map(|i| (0..4).map(move |j| (i, j))).map(|(i, j)| (i, j, self.eta[i][j].clone())),
        )
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.matrix().rank() == 4
    }

    /// `∧(η) = Σ η^{ij} e_i ∧ e_j`.
    pub fn wedge(&self, ext: &Exterior) -> InvForm {
        let field = ext.field();
        let mut acc = InvForm::zero(field, 2);
        for i in 0..4 {
            for j in 0..4 {
                if !self.eta[i][j].is_zero() {
                    let w = ext.wedge(&InvForm::e(field, i as u8), &InvForm::e(field, j as u8));
                    acc = acc.add(&w.scale(&self.eta[i][j]));
                }
            }
        }
        acc
    }
}

/// Nonzero values of `ε_{ijkl}` with `e_i∧e_j∧e_k∧e_l = ε_{ijkl} Top`, keyed
/// by letter indices `0..4`.
pub fn build_eps(ext: &Exterior) -> BTreeMap<[u8; 4], CycScalar> {
    let mut out = BTreeMap::new();
    for w in 0..256u32 {
        let word = [(w >> 6) as u8 & 3, (w >> 4) as u8 & 3, (w >> 2) as u8 & 3, w as u8 & 3];
        let nf = ext.normal_form(&word);
        let v = nf.coeffs[0].clone();
        if !v.is_zero() {
            out.insert(word, v);
        }
    }
    out
}

/// The expected nonzero `ε` values, indices `1..4` for `a..d`.
pub const EPS_VALUES: &[(&str, &str)] = &[
    ("1141", "mu"),
    ("1114", "-mu"),
    ("1312", "-mu"),
    ("1411", "mu"),
    ("1414", "-mu"),
    ("3121", "mu"),
    ("4111", "-mu"),
    ("4141", "mu"),
    ("1213", "-q^{-2} mu"),
    ("2131", "q^{-2} mu"),
    ("1234", "1"),
    ("1243", "-1"),
    ("1324", "-1"),
    ("1342", "1"),
    ("1423", "1"),
    ("1432", "-1"),
    ("2134", "-q^{-2}"),
    ("2143", "q^{-2}"),
    ("2314", "1"),
    ("2341", "-1"),
    ("2413", "-q^{-2}"),
    ("2431", "1"),
    ("3124", "q^2"),
    ("3142", "-q^2"),
    ("3214", "-1"),
    ("3241", "1"),
    ("3412", "q^2"),
    ("3421", "-1"),
    ("4123", "-1"),
    ("4132", "1"),
    ("4213", "q^{-2}"),
    ("4231", "-1"),
    ("4312", "-q^2"),
    ("4321", "1"),
];

/// Hodge star on `Λ^1, Λ^2, Λ^3`.
pub const STAR_TABLE: &[(&str, &str)] = &[
    ("e_a", "-e_abc - mu e_bcd"),
    ("e_b", "-e_abd"),
    ("e_c", "q^2 e_acd"),
    ("e_d", "e_bcd"),
    ("e_ab", "-e_ab + 2 mu e_bd"),
    ("e_ac", "e_ac"),
    ("e_ad", "1/[2]_{q^2} (2 e_bc - q^2 mu e_ad)"),
    ("e_bc", "q^2/[2]_{q^2} (2 e_ad + mu e_bc)"),
    ("e_bd", "e_bd"),
    ("e_cd", "-e_cd"),
    ("e_abc", "-e_a - mu e_d"),
    ("e_abd", "-e_b"),
    ("e_acd", "q^{-2} e_c"),
    ("e_bcd", "e_d"),
];

/// Self-dual and antiself-dual invariant 2-forms.
pub const SELF_DUAL: &[&str] = &["e_bd", "e_ac", "e_ad + e_bc"];
pub const ANTI_SELF_DUAL: &[&str] = &["e_cd", "e_ab - mu e_bd", "e_ad - q^{-2} e_bc"];

/// `★` on invariant forms of degree 1..3 from [`STAR_TABLE`]; `out[k][i]` is
/// the image of the `i`-th basis element of `Λ^k`.
pub fn star_table(calc: &Calculus) -> Result<Vec<Vec<InvForm>>> {
    let mut out = vec![Vec::new(); 5];
    for k in 1..4 {
        for w in basis_words(k) {
            let name = basis_name(&w);
            let (_, src) = STAR_TABLE
                .iter()
                .find(|(n, _)| *n == name)
                .ok_or_else(|| Error::UnknownName(name.clone()))?;
            let img = parse_inv(calc, src)?;
            if img.degree != 4 - k {
                return Err(Error::Dimension(format!("star of {name} has degree {}", img.degree)));
            }
            out[k].push(img);
        }
    }
    Ok(out)
}

/// `★` on `Λ^1..Λ^3` from `ε` and `η` with normalisations
/// `d_1 = 2q²(1-q+q²)[3]_q`, `d_2 = q²[2]_{q²}`, `d_3 = q²`. Undefined when
/// `[3]_q = 0`.
pub fn star_from_eps(ext: &Exterior, metric: &Metric) -> Option<Vec<Vec<InvForm>>> {
    let field = ext.field();
    let q2 = field.q_power(2);
    let d1 = &(&q2.scale_int(2) * &(field.one() - field.q() + q2.clone())) * &field.q_int(3);
    let d2 = &q2 * &field.q2_int(2);
    let norms = [d1.inv()?, d2.inv()?, q2.inv()?];
    let eps = build_eps(ext);
    let eta = &metric.eta;
    let e = |i: usize| InvForm::e(field, i as u8);
    let mut out = vec![Vec::new(); 5];
    for k in 1..4 {
        for word in basis_words(k) {
            let mut acc = InvForm::zero(field, 4 - k);
            for (idx, v) in &eps {
                if idx[..k] != word[..] {
                    continue;
                }
                // raise the remaining 4-k indices with η and wedge in reverse order
                let rest: Vec<usize> = idx[k..].iter().map(|&x| x as usize).collect();
                let mut terms: Vec<(CycScalar, InvForm)> = vec![(v.clone(), InvForm::one(field))];
                for &j in &rest {
                    let mut next = Vec::new();
                    for (c, f) in &terms {
                        for m in 0..4 {
                            if !eta[j][m].is_zero() {
                                // prepend e_m: later indices end up on the left
                                next.push((c * &eta[j][m], ext.wedge(&e(m), f)));
                            }
                        }
                    }
                    terms = next;
                }
                for (c, f) in terms {
                    acc = acc.add(&f.scale(&c));
                }
            }
            out[k].push(acc.scale(&norms[k - 1]));
        }
    }
    Some(out)
}

/// Lift an invariant-level map to `Ω` acting on the invariant factor only.
fn lift(calc: &Calculus, table: &[InvForm], from: usize, to: usize) -> LinOp {
    let n = calc.alg_dim();
    let mut trips = Vec::new();
    for (i, img) in table.iter().enumerate() {
        for (j, c) in img.terms() {
            for m in 0..n {
                trips.push((j * n + m, i * n + m, c.clone()));
            }
        }
    }
    LinOp::from_triplets(calc.field(), calc.form_dim(to), calc.form_dim(from), trips)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HodgeDims {
    pub r: u32,
    pub harmonic: Vec<usize>,
    pub ker_box: Vec<usize>,
}

pub struct Hodge {
    cx: Arc<DeRham>,
    metric: Metric,
    c0: CycScalar,
    inv: Vec<Vec<InvForm>>,
    star: Vec<LinOp>,
    delta: [OnceLock<LinOp>; 5],
    lap: [OnceLock<LinOp>; 5],
    harmonic: [OnceLock<Subspace>; 5],
    ker_box: [OnceLock<Subspace>; 5],
}

impl Hodge {
    /// Build with the degree-0/4 normalisation fixed by calibration: at
    /// `r = 3` the scalar is solved from `□(a²) = 6(q+1) a²`; the result is
    /// the rational number 1, which is then used at every `r`.
    pub fn new(cx: Arc<DeRham>) -> Result<Self> {
        let field = cx.calculus().field();
        let h = Self::with_c0(cx.clone(), field.one())?;
        if field.r() != 3 {
            return Ok(h);
        }
        let c0 = h.calibration_ratio()?;
        if c0.is_one() {
            Ok(h)
        } else {
            Self::with_c0(cx, c0)
        }
    }

    /// `κ / (6(q+1))` where `□(a²) = κ a²` under the current normalisation,
    /// times the current `c0`. Only meaningful at `r = 3`.
    pub fn calibration_ratio(&self) -> Result<CycScalar> {
        let calc = self.calculus();
        let field = calc.field();
        let a2 = calc.function(&AlgElem::a(field).pow(2));
        let img = self.delta_form(&calc.d(&a2));
        let kappa = img
            .vec
            .ratio_to(&a2.vec)
            .ok_or_else(|| Error::Precondition("a² is not an eigenvector of □".into()))?;
        let target = field.int(6) * (field.q() + field.one());
        Ok(&(&kappa * &target.inv().expect("nonzero")) * &self.c0)
    }

    /// `★1 = c0·Top`, `★Top = 1/c0`.
    pub fn with_c0(cx: Arc<DeRham>, c0: CycScalar) -> Result<Self> {
        let calc = cx.calculus().clone();
        let field = calc.field();
        let c0_inv = c0.inv().ok_or_else(|| Error::Precondition("c0 must be nonzero".into()))?;
        let mut inv = star_table(&calc)?;
        inv[0] = vec![InvForm::top(field).scale(&c0)];
        inv[4] = vec![InvForm::one(field).scale(&c0_inv)];
        let star = (0..5).map(|k| lift(&calc, &inv[k], k, 4 - k)).collect();
        Ok(Hodge {
            cx,
            metric: Metric::standard(field),
            c0,
            inv,
            star,
            delta: Default::default(),
            lap: Default::default(),
            harmonic: Default::default(),
            ker_box: Default::default(),
        })
    }

    pub fn complex(&self) -> &Arc<DeRham> {
        &self.cx
    }

    pub fn calculus(&self) -> &Arc<Calculus> {
        self.cx.calculus()
    }

    pub fn metric(&self) -> &Metric {
        &self.metric
    }

    pub fn c0(&self) -> &CycScalar {
        &self.c0
    }

    /// Images of the `Λ^k` basis under `★`.
    pub fn star_inv(&self, k: usize) -> &[InvForm] {
        &self.inv[k]
    }

    /// `★ : Ω^k → Ω^{4-k}`.
    pub fn star(&self, k: usize) -> &LinOp {
        &self.star[k]
    }

    pub fn star_form(&self, w: &Form) -> Form {
        Form::new(4 - w.degree, self.star[w.degree].apply(&w.vec))
    }

    /// `δ = ★ d ★ : Ω^k → Ω^{k-1}` for k = 1..4.
    pub fn delta(&self, k: usize) -> &LinOp {
        assert!((1..5).contains(&k), "δ is defined on degrees 1..4");
        self.delta[k].get_or_init(|| {
            let inner = self.cx.d(4 - k).compose(&self.star[k]).expect("shapes");
            self.star[5 - k].compose(&inner).expect("shapes")
        })
    }

    pub fn delta_form(&self, w: &Form) -> Form {
        if w.degree == 0 {
            return Form::zero(0);
        }
        Form::new(w.degree - 1, self.delta(w.degree).apply(&w.vec))
    }

    /// `□ = δd + dδ` on `Ω^k`.
    pub fn laplacian(&self, k: usize) -> &LinOp {
        self.lap[k].get_or_init(|| {
            let calc = self.calculus();
            let mut acc = LinOp::zero(calc.field(), calc.form_dim(k), calc.form_dim(k));
            if k < 4 {
                acc = acc.add(&self.delta(k + 1).compose(self.cx.d(k)).expect("shapes")).expect("shapes");
            }
            if k > 0 {
                acc = acc.add(&self.cx.d(k - 1).compose(self.delta(k)).expect("shapes")).expect("shapes");
            }
            acc
        })
    }

    pub fn is_coclosed(&self, w: &Form) -> bool {
        w.degree == 0 || self.delta(w.degree).apply(&w.vec).is_zero()
    }

    /// `★ω` exact.
    pub fn is_coexact(&self, w: &Form) -> bool {
        self.cx.is_exact(&self.star_form(w))
    }

    pub fn is_harmonic(&self, w: &Form) -> bool {
        self.cx.is_closed(w) && self.is_coclosed(w)
    }

    /// Coclosed forms `ker δ_k` (all of `Ω^0`).
    pub fn coclosed(&self, k: usize) -> Subspace {
        if k == 0 {
            let calc = self.calculus();
            return Subspace::full(calc.field(), calc.form_dim(0));
        }
        self.delta(k).kernel()
    }

    /// `ker d_k ∩ ker δ_k`.
    pub fn harmonic(&self, k: usize) -> &Subspace {
        self.harmonic[k].get_or_init(|| {
            let calc = self.calculus();
            let n = calc.form_dim(k);
            let mut op = LinOp::zero(calc.field(), 0, n);
            if k < 4 {
                op = op.vstack(self.cx.d(k)).expect("shapes");
            }
            if k > 0 {
                op = op.vstack(self.delta(k)).expect("shapes");
            }
            op.kernel()
        })
    }

    pub fn ker_laplacian(&self, k: usize) -> &Subspace {
        self.ker_box[k].get_or_init(|| self.laplacian(k).kernel())
    }

    pub fn dims(&self) -> HodgeDims {
        HodgeDims {
            r: self.calculus().r(),
            harmonic: (0..5).map(|k| self.harmonic(k).dim()).collect(),
            ker_box: (0..5).map(|k| self.ker_laplacian(k).dim()).collect(),
        }
    }

    /// `(Λ²_+, Λ²_-)`: the ±1 eigenspaces of `★` on `Λ²`.
    pub fn selfdual_split(&self) -> (Subspace, Subspace) {
        let field = self.calculus().field();
        let m = LinOp::from_columns(field, 6, &self.inv[2].iter().map(|f| f.to_svec()).collect::<Vec<_>>());
        let id = LinOp::identity(field, 6);
        (m.sub(&id).expect("6x6").kernel(), m.add(&id).expect("6x6").kernel())
    }

    pub fn parse(&self, src: &str) -> Result<Form> {
        parse_form(self.calculus(), src)
    }
}

/// Rank-nullity style helper: is `span(vs)` of dimension `vs.len()`?
pub fn independent(field: &'static CycField, ambient: usize, vs: &[SVec]) -> bool {
    Subspace::from_vectors(field, ambient, vs.to_vec()).dim() == vs.len()
}

/// Harmonic representatives at `r = 3`, with their expected `★` sign
/// (0 for none).
pub const HARMONIC_NAMED: &[(&str, usize, &str, i8)] = &[
    ("theta", 1, "theta", 0),
    ("h1", 1, "e_b a c^{r-1}", 0),
    ("h2", 1, "e_c a^{r-1} b^{r-1}", 0),
    ("h3", 1, "q e_z - q^2 e_b d^2 b + e_c a^2 c", 0),
    ("h1+", 2, "e_bd a c^{r-1}", 1),
    ("h1-", 2, "(e_ab - mu e_bd) a c^{r-1}", -1),
    ("h2+", 2, "e_ac a^{r-1} b^{r-1}", 1),
    ("h2-", 2, "e_cd a^{r-1} b^{r-1}", -1),
    ("h3+", 2, "e_bd d^2 b + e_ac a^2 c - (e_ad + e_bc)", 1),
    ("h3-", 2, "q e_cd a^2 c + (e_ab - mu e_bd) d^2 b + (e_ad - q^{-2} e_bc)", -1),
    ("h3*", 3, "e_abd d^2 b + e_acd a^2 c - (e_abc + e_bcd)", 0),
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HarmonicCertificate {
    pub checks: Vec<(String, bool)>,
    /// harmonic 3-forms modulo exact ones
    pub harmonic_h3_dim: usize,
}

impl HarmonicCertificate {
    pub fn passes(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }
}

impl Hodge {
    pub fn harmonic_named(&self, name: &str) -> Result<Form> {
        let (_, deg, src, _) = HARMONIC_NAMED
            .iter()
            .find(|(n, ..)| *n == name)
            .ok_or_else(|| Error::UnknownName(name.to_string()))?;
        let w = self.parse(src)?;
        Ok(Form::new(*deg, w.vec))
    }

    /// The harmonic-representative statements at `r = 3`.
    pub fn harmonic_certificate(&self) -> Result<HarmonicCertificate> {
        let calc = self.calculus();
        if calc.r() != 3 {
            return Err(Error::Precondition("harmonic representatives are stated for r = 3".into()));
        }
        let cx = &self.cx;
        let mut checks = Vec::new();
        let f = |n: &str| self.harmonic_named(n);
        let theta = f("theta")?;

        checks.push(("theta coexact".into(), self.is_coexact(&theta)));
        checks.push(("theta harmonic and nonzero".into(), self.is_harmonic(&theta) && !theta.is_zero()));
        let big_theta = cx.named_form("Theta")?;
        checks.push(("star Theta not closed".into(), !cx.is_closed(&self.star_form(&big_theta))));

        for (name, _, _, sign) in HARMONIC_NAMED {
            let w = f(name)?;
            let mut ok = self.is_harmonic(&w);
            if *sign != 0 {
                let s = self.star_form(&w);
                ok &= if *sign > 0 { s == w } else { s == w.neg() };
            }
            checks.push((format!("{name} harmonic with stated duality"), ok));
        }

        let basis = |names: &[&str]| -> Result<Vec<SVec>> { names.iter().map(|n| f(n).map(|w| w.vec)).collect() };
        let h1 = basis(&["theta", "h1", "h2", "h3"])?;
        checks.push(("harmonic basis of H1".into(), cx.rank_mod_exact(1, &h1) == 4 && cx.h_dim(1) == 4));
        let h2 = basis(&["h1+", "h1-", "h2+", "h2-", "h3+", "h3-"])?;
        checks.push(("harmonic basis of H2".into(), cx.rank_mod_exact(2, &h2) == 6 && cx.h_dim(2) == 6));

        // harmonic 3-forms modulo exact = ker(θ∧) on H³
        let harm3 = self.harmonic(3);
        let harmonic_h3_dim = harm3.dim_modulo(cx.exact(3))?;
        let theta_inv = InvForm::theta(calc.field());
        let killed = harm3
            .basis()
            .iter()
            .all(|v| cx.is_exact(&calc.wedge_inv_left(&theta_inv, &Form::new(3, v.clone()))));
        let theta_cert = cx.theta_complex_check()?;
        let ker_theta_dim = cx.h_dim(3) - theta_cert.ranks[3];
        checks.push((
            "harmonic H3 equals ker theta^ on H3, dim 3".into(),
            killed && harmonic_h3_dim == 3 && ker_theta_dim == 3,
        ));

        // ★ of the harmonic H¹ representatives give the harmonic H³ classes
        let stars: Vec<Form> = ["h1", "h2", "h3"].iter().map(|n| f(n).map(|w| self.star_form(&w))).collect::<Result<_>>()?;
        let star_vecs: Vec<SVec> = stars.iter().map(|w| w.vec.clone()).collect();
        checks.push((
            "star h1, h2, h3 harmonic and independent in H3".into(),
            stars.iter().all(|w| self.is_harmonic(w)) && cx.rank_mod_exact(3, &star_vecs) == 3,
        ));
        for (i, target) in [(0, "h1*"), (1, "h2*")] {
            let t = cx.named_form(target)?;
            checks.push((format!("star h{} ~ {target}", i + 1), cx.proportional_mod_exact(&stars[i], &t)));
        }
        checks.push(("star h3 ~ h3*".into(), cx.proportional_mod_exact(&stars[2], &f("h3*")?)));

        let tw = |n: &str| f(n).map(|w| calc.wedge_inv_left(&theta_inv, &w));
        let q = calc.field().q();
        let lincomb = |a: &str, s: CycScalar, b: &str| -> Result<Form> { Ok(f(a)?.add(&f(b)?.scale(&s))) };
        let k = calc.field();
        for (src, rhs) in [
            ("h1", lincomb("h1-", -k.q_power(-2), "h1+")?),
            ("h2", lincomb("h2+", -k.one(), "h2-")?),
            ("h3", lincomb("h3+", -(&q * &q), "h3-")?),
        ] {
            let lhs = tw(src)?;
            checks.push((format!("theta^{src} in harmonic basis"), cx.is_exact(&lhs.sub(&rhs))));
        }
        Ok(HarmonicCertificate { checks, harmonic_h3_dim })
    }
}
