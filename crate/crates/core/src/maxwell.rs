//! Maxwell theory on 1-forms: zero modes, gauge patches, self-dual
//! decomposition and sourced solutions.

use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::algebra::{AlgElem, Monomial};
use crate::complex::DeRham;
use crate::error::{Error, Result};
use crate::exterior::InvForm;
use crate::forms::{Calculus, Form};
use crate::hodge::Hodge;
use crate::linalg::{LinOp, SVec, Solution, Subspace};
pub use crate::verify::Checklist;

/// Gauge conditions on 1-forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Gauge {
    /// `δA = 0`
    Lorentz,
    /// no `θ` component in the basis `{e_b, e_c, e_z, θ}`
    Temporal,
}

impl Gauge {
    pub fn name(&self) -> &'static str {
        match self {
            Gauge::Lorentz => "Lorentz",
            Gauge::Temporal => "temporal",
        }
    }
}

/// Invariant directions in `Λ^1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Theta,
    Z,
    B,
    C,
    /// `span{e_b, e_c, e_z}`
    Spatial,
}

/// One dimension per class of zero modes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModeRows {
    pub all_zero_modes: usize,
    pub coclosed: usize,
    pub temporal: usize,
    pub coclosed_temporal: usize,
    pub self_dual: usize,
    pub zero_curvature: usize,
    pub coclosed_self_dual: usize,
    pub temporal_self_dual: usize,
    pub theta_f_modes: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SourceRows {
    pub all: usize,
    pub spatial: usize,
    pub theta_f: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GaugeReport {
    pub r: u32,
    /// dimensions modulo exact 1-forms
    pub modes: ModeRows,
    /// dimensions before the quotient
    pub raw: ModeRows,
    pub sources: SourceRows,
}

/// A solved source problem `Max(A) = J`, `F = dA`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SourceProblem {
    pub j: Form,
    pub a: Form,
    pub f: Form,
}

/// Temporal-gauge zero modes (the first four also coclosed).
pub const TEMPORAL_MODES: &[(&str, &str)] = &[
    ("A1", "e_z d(bc - q) - e_b b(bc - q^2) + q e_c d^2 c"),
    ("A2", "q e_z abc - e_b a^2 b + e_c dac"),
    ("A3", "q e_z b^2 c - q e_b ab^2 + e_c d^2 a"),
    ("A4", "e_z bc^2 - q e_b a^2 d + e_c dc^2"),
    ("A5", "e_b a^2 c"),
    ("A6", "e_c d^2 b"),
    ("A7", "q e_c b^2 c - e_z ab^2"),
    ("A8", "e_b + e_z a^2 c"),
    ("A9", "q^2 e_b bc^2 + e_z dc^2"),
    ("A10", "e_c abc - q e_z a^2 b"),
    ("A11", "e_b db^2 + q^2 e_z d^2 b"),
    ("A12", "e_b d^2 a + e_z d^2 c"),
];

/// Substitute for `A6` with proportional curvature.
pub const TEMPORAL_A6_ALT: &str = "e_z db^2";

/// Zero modes with self-dual curvature.
pub const SELF_DUAL_MODES: &[(&str, &str)] = &[
    ("A1", "e_a a"),
    ("A2", "e_a b"),
    ("A3", "e_d c"),
    ("A4", "e_d d"),
    ("A5", "(mu e_d + e_a) a^2 b + e_c abc"),
    ("A6", "(mu e_d + e_a) ab^2 + q^2 e_c b^2 c"),
    ("A7", "e_d a^2 c^2 + q^2 e_b bc^2"),
    ("A8", "e_d d^2 c + q e_b dbc"),
    ("A9", "e_a db^2"),
    ("A10", "e_d ac^2"),
    ("A11", "e_b - e_a a^2 c"),
    ("A12", "e_a d^2 b - q e_b db^2"),
];

/// Their curvatures up to normalisation.
pub const SELF_DUAL_CURVATURES: &[(&str, &str)] = &[
    ("F1", "e_+ a + q^2 e_ac c"),
    ("F2", "e_+ b + q^2 e_ac d"),
    ("F3", "e_+ c + q e_bd a"),
    ("F4", "e_+ d + q e_bd b"),
    ("F5", "e_ac a"),
    ("F6", "e_ac b"),
    ("F7", "e_bd c"),
    ("F8", "e_bd d"),
    ("F9", "e_ac d^2 b - q e_+ db^2"),
    ("F10", "e_+ ac^2 - q e_bd a^2 c"),
    ("F11", "e_+ a^2 c - q^2 e_ac ac^2 - e_bd"),
    ("F12", "e_ac + q e_bd db^2 - e_+ d^2 b"),
];

/// Coclosed replacements for the first four self-dual modes.
pub const COCLOSED_SELF_DUAL_MODES: &[(&str, &str)] = &[
    ("A'1", "e_a a - e_b a^2 b + q e_c (bc - q) c + q e_z abc"),
    ("A'2", "q^2 e_a b - theta b + e_z b^2 c - e_b ab^2 + e_c d(bc - q)"),
    ("A'3", "e_d c + q e_z bc^2 - q e_b abc + q e_c a^2 c^2"),
    ("A'4", "e_d d - e_z (d(bc - q) - q^2 c) - q e_c d^2 c + e_b (b^2 c + q a)"),
];

/// Reference sourced solutions: (name, source, gauge field, curvature).
pub const SOURCED_SOLUTIONS: &[(&str, &str, &str, &str)] = &[
    (
        "theta",
        "theta",
        "-(q^2/12) theta bc(1 + bc) - (q mu/12)(e_a + e_c a^2 c)",
        "(q/4) e_ad - (mu/12)((e_ab - e_bd) d^2 b + q (e_cd - e_ac) a^2 c)",
    ),
    ("ez", "e_z", "(q^2/6) e_z", "(q^2 mu/6) e_bc"),
    ("eb", "e_b", "(q^2/6) e_b", "-(mu/6)(q^2 e_ab + e_bd)"),
    ("ec", "e_c", "-(1/6) e_b db^2", "-(mu/6)(e_bc d^2 b + (q^2 e_ab + e_bd) db^2)"),
];

/// Named sources accepted by [`Maxwell::named_source`].
pub const NAMED_SOURCES: &[(&str, &str)] = &[
    ("theta", "theta"),
    ("ez", "e_z"),
    ("eb", "e_b"),
    ("ec", "e_c"),
    ("ecb2", "e_c b^2"),
];

/// Source bases along single directions.
pub const DIRECTION_SOURCES: &[(&str, &str, &[&str])] = &[
    ("theta", "theta", &["1", "a", "b", "c", "d"]),
    ("e_z", "e_z", &["1"]),
    ("e_b", "e_b", &["1", "c^2", "d^2", "dc", "dc^2", "d^2c"]),
    ("e_c", "e_c", &["1", "a^2", "b^2", "ab", "ab^2", "a^2b"]),
];

/// Electric and magnetic curvature directions.
pub const ELECTRIC: &[&str] = &["e_ad", "e_ab - e_bd", "e_cd - e_ac"];
pub const MAGNETIC: &[&str] = &["e_bc", "q^2 e_ab + e_bd", "e_cd + q e_ac"];

pub struct Maxwell {
    h: Arc<Hodge>,
    max: LinOp,
    kernel: OnceLock<Subspace>,
    image: OnceLock<Subspace>,
    coclosed: OnceLock<Subspace>,
    temporal: OnceLock<Subspace>,
    self_dual: OnceLock<Subspace>,
    anti_self_dual: OnceLock<Subspace>,
    theta_f: OnceLock<Subspace>,
}

impl Maxwell {
    pub fn new(h: Arc<Hodge>) -> Self {
        let max = h.delta(2).compose(h.complex().d(1)).expect("shapes");
        Maxwell {
            h,
            max,
            kernel: OnceLock::new(),
            image: OnceLock::new(),
            coclosed: OnceLock::new(),
            temporal: OnceLock::new(),
            self_dual: OnceLock::new(),
            anti_self_dual: OnceLock::new(),
            theta_f: OnceLock::new(),
        }
    }

    pub fn hodge(&self) -> &Arc<Hodge> {
        &self.h
    }

    fn cx(&self) -> &Arc<DeRham> {
        self.h.complex()
    }

    fn calc(&self) -> &Arc<Calculus> {
        self.h.calculus()
    }

    /// `Max = δ d` on `Ω^1`.
    pub fn operator(&self) -> &LinOp {
        &self.max
    }

    pub fn apply(&self, a: &Form) -> Form {
        Form::new(1, self.max.apply(&a.vec))
    }

    pub fn kernel(&self) -> &Subspace {
        self.kernel.get_or_init(|| self.max.kernel())
    }

    pub fn image(&self) -> &Subspace {
        self.image.get_or_init(|| self.max.image())
    }

    /// Constraint operator whose kernel is the gauge subspace.
    pub fn gauge_operator(&self, g: Gauge) -> LinOp {
        match g {
            Gauge::Lorentz => self.h.delta(1).clone(),
            Gauge::Temporal => {
                // θ-coefficient ∝ f_a + q² f_d
                let calc = self.calc();
                let n = calc.alg_dim();
                let q2 = calc.field().q_power(2);
                let trips = (0..n).flat_map(|m| {
                    [(m, m, calc.field().one()), (m, 3 * n + m, q2.clone())]
                });
                LinOp::from_triplets(calc.field(), n, calc.form_dim(1), trips)
            }
        }
    }

    pub fn gauge_subspace(&self, g: Gauge) -> &Subspace {
        let cell = match g {
            Gauge::Lorentz => &self.coclosed,
            Gauge::Temporal => &self.temporal,
        };
        cell.get_or_init(|| match g {
            Gauge::Lorentz => self.h.coclosed(1),
            Gauge::Temporal => self.gauge_operator(g).kernel(),
        })
    }

    pub fn satisfies(&self, a: &Form, g: Gauge) -> bool {
        self.gauge_operator(g).apply(&a.vec).is_zero()
    }

    /// `{A : dA = ±★dA}`.
    pub fn curvature_dual(&self, sign: i8) -> &Subspace {
        let cell = if sign > 0 { &self.self_dual } else { &self.anti_self_dual };
        cell.get_or_init(|| {
            let calc = self.calc();
            let id = LinOp::identity(calc.field(), calc.form_dim(2));
            let s = if sign > 0 {
                self.h.star(2).sub(&id)
            } else {
                self.h.star(2).add(&id)
            }
            .expect("square");
            s.compose(self.cx().d(1)).expect("shapes").kernel()
        })
    }

    pub fn is_self_dual(&self, f: &Form) -> bool {
        self.h.star_form(f) == *f
    }

    /// `span{θ f : □f = 0}`.
    pub fn theta_f_modes(&self) -> &Subspace {
        self.theta_f.get_or_init(|| {
            let calc = self.calc();
            let theta = InvForm::theta(calc.field());
            let vecs = self
                .h
                .ker_laplacian(0)
                .basis()
                .iter()
                .map(|f| calc.form_from(&theta, &AlgElem::from_svec(calc.field(), f.clone())).vec)
                .collect();
            Subspace::from_vectors(calc.field(), calc.form_dim(1), vecs)
        })
    }

    /// `e · A` for the given invariant direction(s).
    pub fn direction_subspace(&self, dir: Direction) -> Subspace {
        let calc = self.calc();
        let k = calc.field();
        let dirs: Vec<InvForm> = match dir {
            Direction::Theta => vec![InvForm::theta(k)],
            Direction::Z => vec![InvForm::e_z(k)],
            Direction::B => vec![InvForm::e(k, 1)],
            Direction::C => vec![InvForm::e(k, 2)],
            Direction::Spatial => vec![InvForm::e(k, 1), InvForm::e(k, 2), InvForm::e_z(k)],
        };
        let mut vecs = Vec::new();
        for e in &dirs {
            for m in Monomial::all(calc.r()) {
                vecs.push(calc.form_from(e, &AlgElem::monomial(k, m)).vec);
            }
        }
        Subspace::from_vectors(k, calc.form_dim(1), vecs)
    }

    pub fn sources_along(&self, dir: Direction) -> Subspace {
        self.image()
            .intersection(&self.direction_subspace(dir))
            .expect("same ambient")
    }

    fn mod_exact(&self, s: &Subspace) -> usize {
        s.dim_modulo(self.cx().exact(1)).expect("same ambient")
    }

    fn both(&self, s: &Subspace) -> (usize, usize) {
        (self.mod_exact(s), s.dim())
    }

    pub fn gauge_analysis(&self) -> GaugeReport {
        let ker = self.kernel();
        let meet = |a: &Subspace, b: &Subspace| a.intersection(b).expect("same ambient");
        let cocl = meet(ker, self.gauge_subspace(Gauge::Lorentz));
        let temp = meet(ker, self.gauge_subspace(Gauge::Temporal));
        let ct = meet(&cocl, &temp);
        let sd = meet(ker, self.curvature_dual(1));
        let zero = self.cx().closed(1).clone();
        let csd = meet(&cocl, &sd);
        let tsd = meet(&temp, &sd);
        let tf = self.theta_f_modes().clone();
        let rows: Vec<(usize, usize)> =
            [ker, &cocl, &temp, &ct, &sd, &zero, &csd, &tsd, &tf].iter().map(|s| self.both(s)).collect();
        let pick = |i: usize| ModeRows {
            all_zero_modes: if i == 0 { rows[0].0 } else { rows[0].1 },
            coclosed: if i == 0 { rows[1].0 } else { rows[1].1 },
            temporal: if i == 0 { rows[2].0 } else { rows[2].1 },
            coclosed_temporal: if i == 0 { rows[3].0 } else { rows[3].1 },
            self_dual: if i == 0 { rows[4].0 } else { rows[4].1 },
            zero_curvature: if i == 0 { rows[5].0 } else { rows[5].1 },
            coclosed_self_dual: if i == 0 { rows[6].0 } else { rows[6].1 },
            temporal_self_dual: if i == 0 { rows[7].0 } else { rows[7].1 },
            theta_f_modes: if i == 0 { rows[8].0 } else { rows[8].1 },
        };
        GaugeReport {
            r: self.calc().r(),
            modes: pick(0),
            raw: pick(1),
            sources: SourceRows {
                all: self.image().dim(),
                spatial: self.sources_along(Direction::Spatial).dim(),
                theta_f: self.sources_along(Direction::Theta).dim(),
            },
        }
    }

    /// Subspace sum/overlap identities between the gauge and duality patches.
    pub fn patching_certificate(&self) -> Checklist {
        let mut c = Checklist::new();
        let ker = self.kernel();
        let exact = self.cx().exact(1);
        let meet = |a: &Subspace, b: &Subspace| a.intersection(b).expect("same ambient");
        let plus = |a: &Subspace, b: &Subspace| a.sum(b).expect("same ambient");
        let with_exact = |s: &Subspace| plus(s, exact);
        let cocl = meet(ker, self.gauge_subspace(Gauge::Lorentz));
        let temp = meet(ker, self.gauge_subspace(Gauge::Temporal));
        let sd = meet(ker, self.curvature_dual(1));
        let asd = meet(ker, self.curvature_dual(-1));
        let closed = self.cx().closed(1);
        let all_mod = ker.dim() - exact.dim();
        let overlap = |a: &Subspace, b: &Subspace| meet(&with_exact(a), &with_exact(b)).dim() - exact.dim();
        let covers = |a: &Subspace, b: &Subspace| plus(&with_exact(a), &with_exact(b)) == *ker;

        c.push("exact 1-forms are zero modes", ker.contains_all(exact));
        c.push("Lorentz + temporal + exact = ker Max", covers(&cocl, &temp));
        c.push(format!("Lorentz/temporal overlap mod exact = {}", overlap(&cocl, &temp)), true);
        c.push(
            "Lorentz/temporal overlap count",
            overlap(&cocl, &temp) + all_mod == self.mod_exact(&cocl) + self.mod_exact(&temp),
        );
        c.push("self-dual + antiself-dual + exact = ker Max", covers(&sd, &asd));
        c.push("self-dual/antiself-dual overlap = zero curvature mod exact", overlap(&sd, &asd) == closed.dim() - exact.dim());
        c.push("raw: self-dual + antiself-dual = ker Max", plus(&sd, &asd) == *ker);
        c.push("raw: self-dual ∩ antiself-dual = closed", meet(&sd, &asd) == *closed);
        c.push("raw self-dual and antiself-dual dims agree", sd.dim() == asd.dim());
        let tf = self.theta_f_modes();
        c.push("theta f modes lie in ker Max", ker.contains_all(tf));
        c.push("theta f + self-dual + exact = ker Max", covers(tf, &sd));
        c.push("theta f / self-dual overlap is the mode theta", overlap(tf, &sd) == 1 && {
            let theta = self.calc().theta().vec;
            tf.contains(&theta) && sd.contains(&theta)
        });
        c.push("temporal + self-dual + exact = ker Max", covers(&temp, &sd));
        c.push(
            "temporal/self-dual overlap = temporal ∩ self-dual mod exact",
            overlap(&temp, &sd) == self.mod_exact(&meet(&temp, &sd)),
        );
        c.push("theta f + antiself-dual + exact = ker Max", covers(tf, &asd));
        c.push("temporal + antiself-dual + exact = ker Max", covers(&temp, &asd));
        let harm = self.h.harmonic(1).dim();
        c.push("dim harmonic 1-forms = self-dual modes mod exact", harm == self.mod_exact(&sd));
        c
    }

    pub fn parse(&self, src: &str) -> Result<Form> {
        let w = self.h.parse(src)?;
        Ok(Form::new(if w.is_zero() { 1 } else { w.degree }, w.vec))
    }

    fn parse_list(&self, list: &[(&str, &str)]) -> Result<Vec<Form>> {
        list.iter().map(|(_, s)| self.parse(s)).collect()
    }

    /// Predicates of the named mode lists at `r = 3`.
    pub fn named_modes_certificate(&self) -> Result<Checklist> {
        if self.calc().r() != 3 {
            return Err(Error::Precondition("the named mode lists are for r = 3".into()));
        }
        let mut c = Checklist::new();
        let cx = self.cx();
        let ker = self.kernel();
        let vecs = |fs: &[Form]| fs.iter().map(|f| f.vec.clone()).collect::<Vec<SVec>>();
        let harm = ["h1", "h2", "h3"]
            .iter()
            .map(|n| self.h.harmonic_named(n))
            .collect::<Result<Vec<_>>>()?;
        let theta = self.calc().theta();

        let temporal = self.parse_list(TEMPORAL_MODES)?;
        for (i, a) in temporal.iter().enumerate() {
            let name = TEMPORAL_MODES[i].0;
            let mut ok = ker.contains(&a.vec) && self.satisfies(a, Gauge::Temporal);
            if i < 4 {
                ok &= self.satisfies(a, Gauge::Lorentz);
            }
            c.push(format!("temporal {name}: zero mode in its gauges"), ok);
        }
        let mut lorentz = vecs(&harm);
        lorentz.extend(self.theta_f_modes().basis().iter().cloned());
        lorentz.extend(vecs(&temporal[..4]));
        c.push(
            "h1..h3, theta f, A1..A4 coclosed and independent (20)",
            lorentz.iter().all(|v| self.satisfies(&Form::new(1, v.clone()), Gauge::Lorentz))
                && cx.rank_mod_exact(1, &lorentz) == 20,
        );
        let mut all = lorentz.clone();
        all.extend(vecs(&temporal[4..]));
        c.push("adding A5..A12 gives all 28 modes", cx.rank_mod_exact(1, &all) == 28);
        let mut temp_basis = vecs(&harm);
        temp_basis.extend(vecs(&temporal));
        c.push("h1..h3 and A1..A12 independent temporal modes", cx.rank_mod_exact(1, &temp_basis) == 15);
        let alt = self.parse(TEMPORAL_A6_ALT)?;
        let d = |a: &Form| Form::new(2, cx.d(1).apply(&a.vec));
        c.push(
            "A6' curvature proportional to A6",
            ker.contains(&alt.vec) && d(&alt).vec.ratio_to(&d(&temporal[5]).vec).is_some(),
        );

        let sdm = self.parse_list(SELF_DUAL_MODES)?;
        let curv = self.parse_list(SELF_DUAL_CURVATURES)?;
        for (i, a) in sdm.iter().enumerate() {
            let f = d(a);
            let ok = ker.contains(&a.vec)
                && self.is_self_dual(&f)
                && f.vec.ratio_to(&curv[i].vec).is_some()
                && cx.is_exact(&curv[i])
                && self.h.is_coclosed(&curv[i]);
            c.push(format!("self-dual {}: curvature ∝ {}, exact and coclosed", SELF_DUAL_MODES[i].0, SELF_DUAL_CURVATURES[i].0), ok);
        }
        let mut sd_basis = vec![theta.vec.clone()];
        sd_basis.extend(vecs(&harm));
        sd_basis.extend(vecs(&sdm));
        c.push("theta, h1..h3, A1..A12 span self-dual modes (16)", cx.rank_mod_exact(1, &sd_basis) == 16);

        let alt_sd = self.parse_list(COCLOSED_SELF_DUAL_MODES)?;
        for (i, a) in alt_sd.iter().enumerate() {
            let ok = ker.contains(&a.vec)
                && self.satisfies(a, Gauge::Lorentz)
                && self.is_self_dual(&d(a))
                && cx.proportional_mod_exact(a, &sdm[i]);
            c.push(format!("{}: coclosed, self-dual, equivalent to A{}", COCLOSED_SELF_DUAL_MODES[i].0, i + 1), ok);
        }
        let mut sd_alt = vec![theta.vec.clone()];
        sd_alt.extend(vecs(&harm));
        sd_alt.extend(vecs(&alt_sd));
        sd_alt.extend(vecs(&sdm[4..]));
        c.push("coclosed variant also spans self-dual modes", cx.rank_mod_exact(1, &sd_alt) == 16);

        let mut cor_i: Vec<SVec> = self.theta_f_modes().basis().to_vec();
        cor_i.extend(vecs(&harm));
        cor_i.extend(vecs(&sdm));
        c.push("theta f, h1..h3 and self-dual A1..A12 give 28", cx.rank_mod_exact(1, &cor_i) == 28);
        let mut cor_ii = sd_basis.clone();
        cor_ii.extend(vecs(&temporal));
        c.push("self-dual basis plus temporal A1..A12 give 28", cx.rank_mod_exact(1, &cor_ii) == 28);
        Ok(c)
    }

    pub fn named_source(&self, name: &str) -> Result<Form> {
        let (_, src) = NAMED_SOURCES
            .iter()
            .find(|(n, _)| *n == name)
            .ok_or_else(|| Error::UnknownName(name.to_string()))?;
        self.parse(src)
    }

    /// Canonical solution of `Max(A) = J`, optionally within a gauge.
    pub fn solve_source(&self, j: &Form, gauge: Option<Gauge>) -> Result<SourceProblem> {
        if j.degree != 1 {
            return Err(Error::Dimension("a source is a 1-form".into()));
        }
        let plain = self.max.solve(&j.vec)?;
        let a = match (plain, gauge) {
            (Solution::NoSolution, _) => return Err(Error::NoSolution),
            (Solution::Found(a), None) => a,
            (Solution::Found(_), Some(g)) => {
                let sys = self.max.vstack(&self.gauge_operator(g))?;
                match sys.solve(&j.vec)? {
                    Solution::Found(a) => a,
                    Solution::NoSolution => return Err(Error::GaugeInfeasible(g.name().into())),
                }
            }
        };
        let a = Form::new(1, a);
        let f = Form::new(2, self.cx().d(1).apply(&a.vec));
        Ok(SourceProblem { j: j.clone(), a, f })
    }

    fn span_of(&self, dirs: &[&str]) -> Result<Subspace> {
        let calc = self.calc();
        let k = calc.field();
        let mut vecs = Vec::new();
        for s in dirs {
            let e = crate::expr::parse_inv(calc, s)?;
            for m in Monomial::all(calc.r()) {
                vecs.push(calc.form_from(&e, &AlgElem::monomial(k, m)).vec);
            }
        }
        Ok(Subspace::from_vectors(k, calc.form_dim(2), vecs))
    }

    /// The reference source bases and solutions at `r = 3`.
    pub fn source_certificate(&self) -> Result<Checklist> {
        if self.calc().r() != 3 {
            return Err(Error::Precondition("the reference sources are for r = 3".into()));
        }
        let mut c = Checklist::new();
        let img = self.image();
        for (name, dir, coeffs) in DIRECTION_SOURCES {
            let direction = match *name {
                "theta" => Direction::Theta,
                "e_z" => Direction::Z,
                "e_b" => Direction::B,
                _ => Direction::C,
            };
            let along = self.sources_along(direction);
            let vecs = coeffs
                .iter()
                .map(|f| self.parse(&format!("{dir} ({f})")).map(|w| w.vec))
                .collect::<Result<Vec<_>>>()?;
            let listed = Subspace::from_vectors(self.calc().field(), self.calc().form_dim(1), vecs);
            c.push(
                format!("{name}-direction sources have the listed basis ({})", coeffs.len()),
                listed.dim() == coeffs.len() && along == listed,
            );
        }
        let electric = self.span_of(ELECTRIC)?;
        let magnetic = self.span_of(MAGNETIC)?;
        for (name, src, a, f) in SOURCED_SOLUTIONS {
            let (j, a, f) = (self.parse(src)?, self.parse(a)?, self.parse(f)?);
            let curvature = Form::new(2, self.cx().d(1).apply(&a.vec));
            let gauge = if *name == "theta" { Gauge::Lorentz } else { Gauge::Temporal };
            c.push(format!("{name}: Max(A) = J"), img.contains(&j.vec) && self.apply(&a) == j);
            c.push(format!("{name}: A in {} gauge", gauge.name()), self.satisfies(&a, gauge));
            c.push(format!("{name}: reference F is closed"), self.cx().is_closed(&f));
            c.push(format!("{name}: F = dA"), curvature == f);
            let canon = self.solve_source(&j, Some(gauge))?;
            c.push(
                format!("{name}: reference A minus canonical A is a zero mode"),
                self.kernel().contains(&a.vec.sub(&canon.a.vec)),
            );
            let span = if *name == "theta" { &electric } else { &magnetic };
            c.push(format!("{name}: curvature in the {} directions", if *name == "theta" { "electric" } else { "magnetic" }), span.contains(&f.vec));
        }
        // e_c b²: some solution has curvature ∝ (e_cd + q e_ac) b²
        let j = self.named_source("ecb2")?;
        let target = self.parse("(e_cd + q e_ac) b^2")?;
        let ok = match self.solve_source(&j, None) {
            Ok(sol) => {
                let zero_curv = self.kernel().map(self.cx().d(1));
                let with_target = zero_curv
                    .sum(&Subspace::from_vectors(self.calc().field(), self.calc().form_dim(2), vec![target.vec.clone()]))?;
                with_target.contains(&sol.f.vec) && !zero_curv.contains(&sol.f.vec) && magnetic.contains(&target.vec)
            }
            Err(_) => false,
        };
        c.push("e_c b^2: valid source with curvature ∝ (e_cd + q e_ac) b^2", ok);
        let ebb = self.parse("e_b b")?;
        c.push("e_b b is not a valid source", matches!(self.solve_source(&ebb, None), Err(Error::NoSolution)));
        Ok(c)
    }
}
