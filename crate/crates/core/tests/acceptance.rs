//! Acceptance criteria 1-13. Prints one PASS/FAIL line per criterion (plus the
//! failing sub-checks) and exits non-zero if any criterion fails.
//!
//! The r = 7 parts run by default; set `QCALC_TIER=fast` to skip them.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;

use qcalc_core::complex::named_basis;
use qcalc_core::exterior::{braided_factorial, braiding};
use qcalc_core::spectrum::spin0_spectrum;
use qcalc_core::verify::{self, PropertyConfig, Suite};
use qcalc_core::{CycField, Form, Model, Subspace};

type Lines = Vec<(String, bool)>;

fn line(out: &mut Lines, name: impl Into<String>, ok: bool) {
    out.push((name.into(), ok));
}

fn eq<T: PartialEq + std::fmt::Debug>(out: &mut Lines, name: &str, got: T, want: T) {
    let ok = got == want;
    let msg = if ok { name.to_string() } else { format!("{name}: got {got:?}, want {want:?}") };
    out.push((msg, ok));
}

struct Ctx {
    slow: bool,
    m3: Model,
    m5: Model,
    m7: Option<Model>,
}

fn c1(cx: &Ctx) -> Lines {
    let mut out = Lines::new();
    let mut rs = vec![3, 5];
    if cx.slow {
        rs.push(7);
    }
    for r in rs {
        let psi = braiding(CycField::get(r).unwrap());
        let dims: Vec<usize> = (0..5)
            .map(|n| 4usize.pow(n as u32) - braided_factorial(&psi, n).kernel().dim())
            .collect();
        eq(&mut out, &format!("r={r} dim Lambda^k"), dims, vec![1, 4, 6, 4, 1]);
    }
    out
}

fn c2(cx: &Ctx) -> Lines {
    let mut out = Lines::new();
    let rep = cx.m3.complex().report();
    let hd = cx.m3.hodge().dims();
    eq(&mut out, "all", rep.all, vec![27, 108, 162, 108, 27]);
    eq(&mut out, "closed", rep.closed, vec![1, 30, 84, 82, 27]);
    eq(&mut out, "exact", rep.exact, vec![0, 26, 78, 78, 26]);
    eq(&mut out, "harmonic", hd.harmonic, vec![1, 16, 30, 16, 1]);
    eq(&mut out, "ker box", hd.ker_box, vec![13, 33, 40, 33, 13]);
    out
}

fn c3(cx: &Ctx) -> Lines {
    let mut out = Lines::new();
    let rep = cx.m5.complex().report();
    eq(&mut out, "closed", rep.closed, vec![1, 128, 378, 376, 125]);
    eq(&mut out, "exact", rep.exact, vec![0, 124, 372, 372, 124]);
    let harmonic: Vec<usize> = (0..5).map(|k| cx.m5.hodge().harmonic(k).dim()).collect();
    eq(&mut out, "harmonic", harmonic, vec![1, 36, 70, 36, 1]);
    out
}

fn c4(cx: &Ctx) -> Lines {
    let mut out = Lines::new();
    let m = cx.m7.as_ref().expect("slow tier");
    let d = m.complex();
    let got = [
        d.closed(1).dim(),
        d.exact(1).dim(),
        d.closed(2).dim(),
        d.exact(2).dim(),
        d.closed(3).dim(),
        d.exact(3).dim(),
    ];
    eq(&mut out, "ker d1, im d0, ker d2, im d1, ker d3, im d2", got, [346, 342, 1032, 1026, 1030, 1026]);
    out
}

fn c5(cx: &Ctx) -> Lines {
    let mut out = Lines::new();
    for m in [&cx.m3, &cx.m5] {
        let r = m.r();
        let d = m.complex();
        eq(&mut out, &format!("r={r} dim H^k"), (0..5).map(|k| d.h_dim(k)).collect::<Vec<_>>(), vec![1, 4, 6, 4, 1]);
        for k in 0..5 {
            let names = named_basis(k);
            let cert = d.verify_named_set(&names).unwrap();
            line(&mut out, format!("r={r} H^{k} representatives {names:?}"), cert.passes());
        }
    }
    out
}

fn c6(cx: &Ctx) -> Lines {
    let mut out = Lines::new();
    for m in [&cx.m3, &cx.m5] {
        let cert = m.complex().theta_complex_check().unwrap();
        line(&mut out, format!("r={} theta sequence exact", m.r()), cert.exact_sequence && cert.well_defined);
        if m.r() == 3 {
            for (n, ok) in cert.named_images {
                line(&mut out, format!("r=3 {n}"), ok);
            }
        }
    }
    out
}

fn c7(cx: &Ctx) -> Lines {
    let mut out = Lines::new();
    for m in [&cx.m3, &cx.m5] {
        for (n, ok) in verify::run(m, Suite::Structure).unwrap().checks {
            line(&mut out, format!("r={} {n}", m.r()), ok);
        }
    }
    out
}

fn c8(cx: &Ctx) -> Lines {
    let mut out = Lines::new();
    let cert = cx.m3.hodge().harmonic_certificate().unwrap();
    for (n, ok) in &cert.checks {
        line(&mut out, n.clone(), *ok);
    }
    eq(&mut out, "harmonic part of H^3", cert.harmonic_h3_dim, 3);
    out
}

fn c9(cx: &Ctx) -> Lines {
    let mut out = Lines::new();
    let s = spin0_spectrum(cx.m3.hodge()).unwrap();
    eq(&mut out, "dim ker box on functions", s.kernel_dim, 13);
    line(&mut out, "13 monomials span ker box", s.zero_modes_span_kernel);
    line(&mut out, "9 elements with eigenvalue 6(q+1)", s.massive_modes_ok);
    line(&mut out, format!("non-diagonalizable witness {:?}", s.witness), s.witness.is_some());
    // independent check of the eigenvalue on one listed element
    let h = cx.m3.hodge();
    let f = h.parse("a^2").unwrap();
    let lhs = Form::new(0, h.laplacian(0).apply(&f.vec));
    line(&mut out, "box a^2 = 6(q+1) a^2", lhs == h.parse("6(q + 1) a^2").unwrap());
    out
}

fn c10(cx: &Ctx) -> Lines {
    let mut out = Lines::new();
    let want: [(u32, [usize; 9], [usize; 9], [usize; 3]); 2] = [
        (3, [28, 20, 20, 7, 16, 4, 8, 8, 13], [54, 32, 32, 19, 42, 30, 20, 20, 13], [54, 40, 5]),
        (5, [68, 52, 52, 19, 36, 4, 20, 20, 33], [192, 84, 84, 51, 160, 128, 52, 52, 33], [308, 216, 17]),
    ];
    for (m, (r, modes, raw, src)) in [&cx.m3, &cx.m5].into_iter().zip(want) {
        let g = m.maxwell().gauge_analysis();
        let row = |x: &qcalc_core::maxwell::ModeRows| {
            [
                x.all_zero_modes,
                x.coclosed,
                x.temporal,
                x.coclosed_temporal,
                x.self_dual,
                x.zero_curvature,
                x.coclosed_self_dual,
                x.temporal_self_dual,
                x.theta_f_modes,
            ]
        };
        eq(&mut out, &format!("r={r} modes mod exact"), row(&g.modes), modes);
        eq(&mut out, &format!("r={r} raw"), row(&g.raw), raw);
        eq(&mut out, &format!("r={r} sources"), [g.sources.all, g.sources.spatial, g.sources.theta_f], src);
    }
    out
}

fn c11(cx: &Ctx) -> Lines {
    let mut out = Lines::new();
    let mx = cx.m3.maxwell();
    let d1 = cx.m3.complex().d(1);
    let p = |s: &str| mx.parse(s).unwrap();
    let stated = [
        (
            "theta",
            "theta",
            "-(q^2/12) theta bc(1 + bc) - (q mu/12)(e_a + e_c a^2 c)",
            "(q/4) e_ad - (mu/12)((e_ab - e_bd) d^2 b + q (e_cd - e_ac) a^2 c)",
        ),
        ("e_z", "e_z", "(q^2/6) e_z", "(q^2 mu/6) e_bc"),
        ("e_b", "e_b", "(q^2/6) e_b", "-(mu/6)(q^2 e_ab + e_bd)"),
        ("e_c", "e_c", "-(1/6) e_b db^2", "-(mu/6)(e_bc d^2 b + (q^2 e_ab + e_bd) db^2)"),
    ];
    for (name, j, a, f) in stated {
        let (j, a, f) = (p(j), p(a), p(f));
        line(&mut out, format!("J = {name}: Max(A) = J"), mx.apply(&a) == j);
        line(&mut out, format!("J = {name}: stated F = dA"), d1.apply(&a.vec) == f.vec);
        line(&mut out, format!("J = {name}: stated F is closed"), cx.m3.complex().is_closed(&f));
    }
    // e_c b^2: some solution has curvature along (e_cd + q e_ac) b^2
    let sol = mx.solve_source(&p("e_c b^2"), None).unwrap();
    line(&mut out, "J = e_c b^2: residual", mx.apply(&sol.a) == sol.j);
    let field = cx.m3.field();
    let zero_curv = mx.kernel().map(d1);
    let target = p("(e_cd + q e_ac) b^2");
    let with_target = zero_curv
        .sum(&Subspace::from_vectors(field, cx.m3.calculus().form_dim(2), vec![target.vec]))
        .unwrap();
    line(
        &mut out,
        "J = e_c b^2: curvature proportional to (e_cd + q e_ac) b^2 for some solution",
        with_target.contains(&sol.f.vec) && !zero_curv.contains(&sol.f.vec),
    );
    out
}

fn c12(cx: &Ctx) -> Lines {
    verify::run(&cx.m3, Suite::Patching).unwrap().checks
}

fn c13(cx: &Ctx) -> Lines {
    let cfg = PropertyConfig { seed: 13, cases: 1200 };
    let mut out = verify::run_with(&cx.m3, Suite::Properties, cfg).unwrap().checks;
    out.extend(
        verify::run_with(&cx.m5, Suite::Properties, PropertyConfig { seed: 5, cases: 1000 })
            .unwrap()
            .checks
            .into_iter()
            .map(|(n, ok)| (format!("r=5 {n}"), ok)),
    );
    out
}

fn main() -> ExitCode {
    let slow = std::env::var("QCALC_TIER").map(|t| t != "fast").unwrap_or(true);
    let cx = Ctx {
        slow,
        m3: Model::new(3).unwrap(),
        m5: Model::new(5).unwrap(),
        m7: slow.then(|| Model::new(7).unwrap()),
    };
    let criteria: [(&str, fn(&Ctx) -> Lines, bool); 13] = [
        ("exterior algebra dimensions (1,4,6,4,1) from ker A_n", c1, false),
        ("de Rham and Hodge dimensions at r=3", c2, false),
        ("closed, exact and harmonic dimensions at r=5", c3, false),
        ("r=7 spot dimensions", c4, true),
        ("cohomology dimensions and named representatives", c5, false),
        ("theta-wedge sequence on cohomology", c6, false),
        ("structural identities", c7, false),
        ("harmonic representatives at r=3", c8, false),
        ("spin-0 spectrum at r=3", c9, false),
        ("Maxwell mode and source dimensions at r=3 and r=5", c10, false),
        ("explicit sourced solutions", c11, false),
        ("patching certificates at r=3", c12, false),
        ("randomized property suite", c13, false),
    ];
    let mut failed = 0;
    for (i, (title, f, needs_slow)) in criteria.iter().enumerate() {
        let n = i + 1;
        if *needs_slow && !slow {
            println!("criterion {n:>2} SKIP {title} (QCALC_TIER=fast)");
            continue;
        }
        match catch_unwind(AssertUnwindSafe(|| f(&cx))) {
            Ok(lines) => {
                let bad: Vec<&String> = lines.iter().filter(|(_, ok)| !ok).map(|(n, _)| n).collect();
                let ok = !lines.is_empty() && bad.is_empty();
                println!("criterion {n:>2} {} {title} ({} checks)", if ok { "PASS" } else { "FAIL" }, lines.len());
                for b in bad {
                    println!("    failed: {b}");
                }
                if !ok {
                    failed += 1;
                }
            }
            Err(_) => {
                println!("criterion {n:>2} FAIL {title} (panicked)");
                failed += 1;
            }
        }
    }
    println!("acceptance: {} of 13 criteria failed", failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
