//! Named verification suites. Each suite checks one group of published
//! statements against the computed objects and reports pass/fail per line.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::complex::named_basis;
use crate::cyclotomic::{CycField, CycScalar};
use crate::error::{Error, Result};
use crate::exterior::{braided_factorial, braiding, braiding_at, lambda_dim, Exterior};
use crate::forms::Form;
use crate::linalg::{LinOp, SVec, Solution};
use crate::maxwell::{GaugeReport, ModeRows, SourceRows};
use crate::model::Model;
use crate::spectrum::spin0_spectrum;

/// Ordered list of named pass/fail checks.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Checklist {
    pub checks: Vec<(String, bool)>,
}

impl Checklist {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn passes(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }

    pub fn push(&mut self, name: impl Into<String>, ok: bool) {
        self.checks.push((name.into(), ok));
    }

    /// Append `other` with every line prefixed by `tag`.
    pub fn extend_tagged(&mut self, tag: &str, other: Checklist) {
        for (n, ok) in other.checks {
            self.checks.push((format!("{tag}: {n}"), ok));
        }
    }

    pub fn failures(&self) -> Vec<&str> {
        self.checks.iter().filter(|(_, ok)| !ok).map(|(n, _)| n.as_str()).collect()
    }
}

/// Every suite, in a fixed order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Suite {
    /// `dim Λ^k` from kernels of the braided factorials
    Lambda,
    /// full de Rham and Hodge dimension table at `r = 3`
    DimsR3,
    /// closed, exact and harmonic dimensions at `r = 5`
    DimsR5,
    /// kernel and image dimensions of `d_0..d_2` at `r = 7`
    Spot7,
    /// cohomology dimensions and named representatives
    Cohomology,
    /// exactness of `θ∧` on cohomology
    ThetaSequence,
    /// `d² = 0`, `★² = id`, `δ² = 0`, braid relation, exterior algebra presentations
    Structure,
    /// harmonic representatives at `r = 3`
    Harmonic,
    /// spin-0 spectrum of `□` at `r = 3`
    Spectrum,
    /// Maxwell zero-mode and source dimensions at `r = 3, 5`
    MaxwellDims,
    /// explicit sourced solutions at `r = 3`
    Sources,
    /// gauge and duality patching at `r = 3`
    Patching,
    /// randomized algebraic invariants
    Properties,
}

pub const ALL_SUITES: [Suite; 13] = [
    Suite::Lambda,
    Suite::DimsR3,
    Suite::DimsR5,
    Suite::Spot7,
    Suite::Cohomology,
    Suite::ThetaSequence,
    Suite::Structure,
    Suite::Harmonic,
    Suite::Spectrum,
    Suite::MaxwellDims,
    Suite::Sources,
    Suite::Patching,
    Suite::Properties,
];

impl Suite {
    pub fn name(&self) -> &'static str {
        match self {
            Suite::Lambda => "lambda",
            Suite::DimsR3 => "dims-r3",
            Suite::DimsR5 => "dims-r5",
            Suite::Spot7 => "spot7",
            Suite::Cohomology => "cohomology",
            Suite::ThetaSequence => "theta-sequence",
            Suite::Structure => "structure",
            Suite::Harmonic => "harmonic",
            Suite::Spectrum => "spectrum",
            Suite::MaxwellDims => "maxwell-dims",
            Suite::Sources => "sources",
            Suite::Patching => "patching",
            Suite::Properties => "properties",
        }
    }

    pub fn from_name(s: &str) -> Option<Suite> {
        ALL_SUITES.iter().copied().find(|x| x.name() == s)
    }

    /// Does the suite make a claim at this `r`?
    pub fn applies_to(&self, r: u32) -> bool {
        match self {
            Suite::DimsR3 | Suite::Harmonic | Suite::Spectrum | Suite::Sources | Suite::Patching => r == 3,
            Suite::DimsR5 => r == 5,
            Suite::Spot7 => r == 7,
            Suite::MaxwellDims => r == 3 || r == 5,
            _ => true,
        }
    }

    pub fn applicable(r: u32) -> Vec<Suite> {
        ALL_SUITES.iter().copied().filter(|s| s.applies_to(r)).collect()
    }
}

/// Seed and size for [`Suite::Properties`].
#[derive(Clone, Copy, Debug)]
pub struct PropertyConfig {
    pub seed: u64,
    pub cases: usize,
}

impl Default for PropertyConfig {
    fn default() -> Self {
        PropertyConfig { seed: 0x5eed, cases: 1200 }
    }
}

pub fn run(model: &Model, suite: Suite) -> Result<Checklist> {
    run_with(model, suite, PropertyConfig::default())
}

pub fn run_with(model: &Model, suite: Suite, props: PropertyConfig) -> Result<Checklist> {
    let r = model.r();
    if !suite.applies_to(r) {
        return Err(Error::Precondition(format!("suite {} makes no claim at r = {r}", suite.name())));
    }
    match suite {
        Suite::Lambda => Ok(lambda(model.field())),
        Suite::DimsR3 => Ok(dims_r3(model)),
        Suite::DimsR5 => Ok(dims_r5(model)),
        Suite::Spot7 => Ok(spot7(model)),
        Suite::Cohomology => cohomology(model),
        Suite::ThetaSequence => theta_sequence(model),
        Suite::Structure => Ok(structure(model)),
        Suite::Harmonic => harmonic(model),
        Suite::Spectrum => spectrum(model),
        Suite::MaxwellDims => Ok(maxwell_dims(model)),
        Suite::Sources => model.maxwell().source_certificate(),
        Suite::Patching => patching(model),
        Suite::Properties => Ok(properties(model, props)),
    }
}

fn eq_line<T: PartialEq + std::fmt::Debug>(c: &mut Checklist, what: &str, got: T, want: T) {
    let ok = got == want;
    c.push(format!("{what} = {want:?}{}", if ok { String::new() } else { format!(" (got {got:?})") }), ok);
}

const LAMBDA: [usize; 5] = [1, 4, 6, 4, 1];

pub fn lambda(field: &'static CycField) -> Checklist {
    let mut c = Checklist::new();
    let psi = braiding(field);
    let dims: Vec<usize> = (0..5)
        .map(|n| 4usize.pow(n as u32) - braided_factorial(&psi, n).kernel().dim())
        .collect();
    eq_line(&mut c, "4^n - dim ker A_n", dims, LAMBDA.to_vec());
    c
}

fn dims_r3(m: &Model) -> Checklist {
    let mut c = Checklist::new();
    let rep = m.complex().report();
    let hd = m.hodge().dims();
    eq_line(&mut c, "all", rep.all, vec![27, 108, 162, 108, 27]);
    eq_line(&mut c, "closed", rep.closed, vec![1, 30, 84, 82, 27]);
    eq_line(&mut c, "exact", rep.exact, vec![0, 26, 78, 78, 26]);
    eq_line(&mut c, "harmonic", hd.harmonic, vec![1, 16, 30, 16, 1]);
    eq_line(&mut c, "ker box", hd.ker_box, vec![13, 33, 40, 33, 13]);
    c
}

fn dims_r5(m: &Model) -> Checklist {
    let mut c = Checklist::new();
    let rep = m.complex().report();
    eq_line(&mut c, "closed", rep.closed, vec![1, 128, 378, 376, 125]);
    eq_line(&mut c, "exact", rep.exact, vec![0, 124, 372, 372, 124]);
    let harmonic: Vec<usize> = (0..5).map(|k| m.hodge().harmonic(k).dim()).collect();
    eq_line(&mut c, "harmonic", harmonic, vec![1, 36, 70, 36, 1]);
    c
}

fn spot7(m: &Model) -> Checklist {
    let mut c = Checklist::new();
    let cx = m.complex();
    for (k, closed, exact) in [(1, 346, 342), (2, 1032, 1026), (3, 1030, 1026)] {
        eq_line(&mut c, &format!("dim ker d_{k}"), cx.closed(k).dim(), closed);
        eq_line(&mut c, &format!("dim im d_{}", k - 1), cx.exact(k).dim(), exact);
    }
    c
}

fn cohomology(m: &Model) -> Result<Checklist> {
    let mut c = Checklist::new();
    let cx = m.complex();
    let h: Vec<usize> = (0..5).map(|k| cx.h_dim(k)).collect();
    eq_line(&mut c, "dim H^k", h, LAMBDA.to_vec());
    for k in 0..5 {
        let names = named_basis(k);
        let cert = cx.verify_named_set(&names)?;
        c.push(format!("H^{k} basis {{{}}}: closed, non-exact, independent, spanning", names.join(", ")), cert.passes());
    }
    Ok(c)
}

fn theta_sequence(m: &Model) -> Result<Checklist> {
    let mut c = Checklist::new();
    let cert = m.complex().theta_complex_check()?;
    c.push("theta ^ theta = 0", cert.theta_squared_zero);
    c.push("theta^ preserves closed and exact forms", cert.well_defined);
    c.push(format!("exact sequence on cohomology (ranks {:?})", cert.ranks), cert.exact_sequence);
    for (n, ok) in cert.named_images {
        c.push(n, ok);
    }
    Ok(c)
}

fn structure(m: &Model) -> Checklist {
    let mut c = Checklist::new();
    let cx = m.complex();
    let h = m.hodge();
    let field = m.field();
    for k in 0..3 {
        c.push(format!("d_{} d_{k} = 0", k + 1), cx.d(k + 1).compose(cx.d(k)).expect("shapes").is_zero());
    }
    for k in 0..5 {
        let sq = h.star(4 - k).compose(h.star(k)).expect("shapes");
        c.push(format!("star^2 = id on degree {k}"), sq == LinOp::identity(field, m.calculus().form_dim(k)));
    }
    for k in 2..5 {
        c.push(format!("delta_{} delta_{k} = 0", k - 1), h.delta(k - 1).compose(h.delta(k)).expect("shapes").is_zero());
    }
    let psi = braiding(field);
    let p12 = braiding_at(&psi, 3, 0);
    let p23 = braiding_at(&psi, 3, 1);
    let lhs = p12.compose(&p23).and_then(|x| x.compose(&p12)).expect("shapes");
    let rhs = p23.compose(&p12).and_then(|x| x.compose(&p23)).expect("shapes");
    c.push("braid relation for Psi", lhs == rhs);
    let ext = Exterior::new(field);
    for n in 2..5 {
        let fact = braided_factorial(&psi, n).kernel();
        let rewrite = ext.projection(n).kernel();
        c.push(format!("ker A_{n} = relations of the rewriting system"), fact == rewrite);
    }
    c.push("d = -[theta, .} on all basis 1-forms", {
        let calc = m.calculus();
        (0..calc.form_dim(1)).all(|i| {
            let w = Form::new(1, SVec::unit(i, field));
            calc.d(&w) == calc.d_by_commutator(&w)
        })
    });
    c
}

fn harmonic(m: &Model) -> Result<Checklist> {
    let cert = m.hodge().harmonic_certificate()?;
    let mut c = Checklist { checks: cert.checks.clone() };
    eq_line(&mut c, "dim harmonic H^3", cert.harmonic_h3_dim, 3);
    Ok(c)
}

fn spectrum(m: &Model) -> Result<Checklist> {
    let s = spin0_spectrum(m.hodge())?;
    let mut c = Checklist::new();
    eq_line(&mut c, "dim ker box on functions", s.kernel_dim, 13);
    c.push("the 13 listed monomials span ker box", s.zero_modes_span_kernel);
    c.push(format!("the 9 listed elements have eigenvalue {}", s.massive_value), s.massive_modes_ok);
    c.push(
        format!("non-diagonalizable: {}", s.witness.as_deref().unwrap_or("no witness")),
        s.witness.is_some(),
    );
    Ok(c)
}

/// Expected zero-mode and source dimensions.
pub fn maxwell_dims_expected(r: u32) -> Option<GaugeReport> {
    let rows = |v: [usize; 9]| ModeRows {
        all_zero_modes: v[0],
        coclosed: v[1],
        temporal: v[2],
        coclosed_temporal: v[3],
        self_dual: v[4],
        zero_curvature: v[5],
        coclosed_self_dual: v[6],
        temporal_self_dual: v[7],
        theta_f_modes: v[8],
    };
    match r {
        3 => Some(GaugeReport {
            r,
            modes: rows([28, 20, 20, 7, 16, 4, 8, 8, 13]),
            raw: rows([54, 32, 32, 19, 42, 30, 20, 20, 13]),
            sources: SourceRows { all: 54, spatial: 40, theta_f: 5 },
        }),
        5 => Some(GaugeReport {
            r,
            modes: rows([68, 52, 52, 19, 36, 4, 20, 20, 33]),
            raw: rows([192, 84, 84, 51, 160, 128, 52, 52, 33]),
            sources: SourceRows { all: 308, spatial: 216, theta_f: 17 },
        }),
        _ => None,
    }
}

fn maxwell_dims(m: &Model) -> Checklist {
    let mut c = Checklist::new();
    let got = m.maxwell().gauge_analysis();
    let want = maxwell_dims_expected(m.r()).expect("r = 3 or 5");
    eq_line(&mut c, "modes mod exact", &got.modes, &want.modes);
    eq_line(&mut c, "raw dims", &got.raw, &want.raw);
    eq_line(&mut c, "sources", &got.sources, &want.sources);
    c
}

fn patching(m: &Model) -> Result<Checklist> {
    let mx = m.maxwell();
    let mut c = mx.patching_certificate();
    c.extend_tagged("named modes", mx.named_modes_certificate()?);
    Ok(c)
}

fn random_scalar(rng: &mut impl Rng, field: &'static CycField) -> CycScalar {
    let coords: Vec<String> = (0..field.degree())
        .map(|_| {
            let n: i64 = rng.gen_range(-6..=6);
            let d: i64 = rng.gen_range(1..=4);
            format!("{n}/{d}")
        })
        .collect();
    CycScalar::parse_strings(field, &coords).expect("well-formed coordinates")
}

fn random_svec(rng: &mut impl Rng, field: &'static CycField, len: usize, nnz: usize) -> SVec {
    SVec::from_pairs((0..nnz).map(|_| (rng.gen_range(0..len), random_scalar(rng, field))))
}

/// Field axioms, rank-nullity, graded Leibniz on `Ω` and solve residuals,
/// each on `cases / 4` random instances (at least 250).
pub fn properties(m: &Model, cfg: PropertyConfig) -> Checklist {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let field = m.field();
    let per = (cfg.cases / 4).max(250);
    let mut c = Checklist::new();

    let mut ok = true;
    for _ in 0..per {
        let (x, y, z) = (random_scalar(&mut rng, field), random_scalar(&mut rng, field), random_scalar(&mut rng, field));
        ok &= &(&x + &y) + &z == &x + &(&y + &z);
        ok &= &(&x * &y) * &z == &x * &(&y * &z);
        ok &= &x * &y == &y * &x;
        ok &= &x * &(&y + &z) == &(&x * &y) + &(&x * &z);
        ok &= (&x + &(-&x)).is_zero();
        if let Some(xi) = x.inv() {
            ok &= (&x * &xi).is_one();
        } else {
            ok &= x.is_zero();
        }
    }
    c.push(format!("field axioms on {per} random triples"), ok);

    let mut ok = true;
    for _ in 0..per {
        let rows = rng.gen_range(1..12);
        let cols = rng.gen_range(1..12);
        let data = (0..rows)
            .map(|_| {
                let nnz = rng.gen_range(0..=cols);
                random_svec(&mut rng, field, cols, nnz)
            })
            .collect();
        let a = LinOp::from_rows(field, cols, data);
        let rank = a.rank();
        ok &= rank + a.kernel().dim() == cols;
        ok &= a.image().dim() == rank && a.transpose().rank() == rank;
        ok &= a.kernel().basis().iter().all(|v| a.apply(v).is_zero());
    }
    c.push(format!("rank-nullity on {per} random matrices"), ok);

    let calc = m.calculus();
    let mut ok = true;
    for i in 0..per {
        let p = i % 3;
        let q = rng.gen_range(0..=(4 - p).min(2));
        let w = Form::new(p, random_svec(&mut rng, field, calc.form_dim(p), 2));
        let eta = Form::new(q, random_svec(&mut rng, field, calc.form_dim(q), 2));
        let lhs = calc.d(&calc.wedge(&w, &eta));
        let mut tail = calc.wedge(&w, &calc.d(&eta));
        if p % 2 == 1 {
            tail = tail.neg();
        }
        ok &= lhs == calc.wedge(&calc.d(&w), &eta).add(&tail);
    }
    c.push(format!("graded Leibniz on {per} random pairs of forms"), ok);

    let mut ok = true;
    for _ in 0..per {
        let rows = rng.gen_range(1..10);
        let cols = rng.gen_range(1..10);
        let data = (0..rows)
            .map(|_| {
                let nnz = rng.gen_range(0..=cols.min(4));
                random_svec(&mut rng, field, cols, nnz)
            })
            .collect();
        let a = LinOp::from_rows(field, cols, data);
        let b = if rng.gen_bool(0.5) {
            a.apply(&random_svec(&mut rng, field, cols, 3))
        } else {
            random_svec(&mut rng, field, rows, 2)
        };
        ok &= match a.solve(&b) {
            Ok(Solution::Found(x)) => a.apply(&x) == b,
            Ok(Solution::NoSolution) => !a.image().contains(&b),
            Err(_) => false,
        };
    }
    c.push(format!("solve residual on {per} random systems"), ok);
    c
}

/// Dimensions of `Λ^k` (for reports).
pub fn lambda_dims() -> Vec<usize> {
    (0..5).map(lambda_dim).collect()
}
