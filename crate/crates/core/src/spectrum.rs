//! Spin-0 spectrum of the Laplacian at `r = 3`: kernel, the massive modes
//! and a witness that `□` is not diagonalisable.

use serde::Serialize;

use crate::cyclotomic::CycScalar;
use crate::error::{Error, Result};
use crate::expr::parse_function;
use crate::hodge::Hodge;
use crate::linalg::{LinOp, SVec, Subspace};

pub const ZERO_MODES: [&str; 13] = [
    "1", "a", "b", "c", "d", "ab^2", "a^2b", "db^2", "d^2b", "ac^2", "a^2c", "dc^2", "d^2c",
];

pub const MASSIVE_MODES: [&str; 9] = ["a^2", "b^2", "c^2", "d^2", "ab", "ac", "db", "dc", "bc - 1"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Eigenvalue {
    pub value: Vec<String>,
    pub display: String,
    pub algebraic: usize,
    pub geometric: usize,
    /// `dim ker (□ - λ)²`
    pub generalized: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectrumCertificate {
    pub kernel_dim: usize,
    pub zero_modes_span_kernel: bool,
    pub massive_value: String,
    pub massive_modes_ok: bool,
    pub char_poly: Vec<Vec<String>>,
    pub eigenvalues: Vec<Eigenvalue>,
    pub eigenvector_dim: usize,
    /// an eigenvalue whose generalized eigenspace exceeds its eigenspace
    pub witness: Option<String>,
}

impl SpectrumCertificate {
    pub fn passes(&self) -> bool {
        self.zero_modes_span_kernel && self.massive_modes_ok && self.witness.is_some()
    }
}

/// Divide `p` (coefficients low to high) by `x - z`; `None` if not exact.
fn deflate(p: &[CycScalar], z: &CycScalar) -> Option<Vec<CycScalar>> {
    let n = p.len() - 1;
    let mut out = vec![z.field().zero(); n];
    let mut carry = z.field().zero();
    for i in (0..=n).rev() {
        let v = &p[i] + &(&carry * z);
        if i == 0 {
            return v.is_zero().then_some(out);
        }
        out[i - 1] = v.clone();
        carry = v;
    }
    unreachable!()
}

/// Roots in `Q(ζ_3)` of a monic polynomial with coefficients in `Z[ζ_3]`,
/// with multiplicities. Candidates are lattice points within `bound` in the
/// first complex embedding.
pub fn eisenstein_roots(p: &[CycScalar], bound: f64) -> Result<Vec<(CycScalar, usize)>> {
    let field = p[0].field();
    if field.r() != 3 {
        return Err(Error::Precondition("Eisenstein search needs r = 3".into()));
    }
    if !p.iter().all(|c| c.denominator() == &1.into()) || !p.last().is_some_and(|c| c.is_one()) {
        return Err(Error::Precondition("polynomial must be monic and integral".into()));
    }
    let cs: Vec<(f64, f64)> = p.iter().map(|c| c.to_complex(1)).collect();
    let ymax = (2.0 * bound / 3f64.sqrt()).ceil() as i64 + 1;
    let mut out = Vec::new();
    let mut poly = p.to_vec();
    for y in -ymax..=ymax {
        let xmax = bound.ceil() as i64 + ymax;
        for x in -xmax..=xmax {
            let (zr, zi) = (x as f64 - 0.5 * y as f64, 0.5 * 3f64.sqrt() * y as f64);
            if zr * zr + zi * zi > (bound + 1.0) * (bound + 1.0) {
                continue;
            }
            let (mut vr, mut vi, mut scale, mut zpow) = (0.0, 0.0, 0.0, 1.0);
            for &(cr, ci) in cs.iter().rev() {
                let (nr, ni) = (vr * zr - vi * zi + cr, vr * zi + vi * zr + ci);
                vr = nr;
                vi = ni;
            }
            for &(cr, ci) in cs.iter() {
                scale += (cr * cr + ci * ci).sqrt() * zpow;
                zpow *= (zr * zr + zi * zi).sqrt();
            }
            if (vr * vr + vi * vi).sqrt() > 1e-8 * scale.max(1.0) {
                continue;
            }
            let z = field.int(x) + field.int(y) * field.q();
            let mut mult = 0;
            while poly.len() > 1 {
                match deflate(&poly, &z) {
                    Some(q) => {
                        poly = q;
                        mult += 1;
                    }
                    None => break,
                }
            }
            if mult > 0 {
                out.push((z, mult));
            }
        }
    }
    Ok(out)
}

fn shifted(m: &LinOp, lambda: &CycScalar) -> LinOp {
    let id = LinOp::identity(m.field(), m.rows());
    m.lin_comb(&id, &-lambda.clone()).expect("square")
}

pub fn spin0_spectrum(h: &Hodge) -> Result<SpectrumCertificate> {
    let calc = h.calculus();
    let field = calc.field();
    if field.r() != 3 {
        return Err(Error::Precondition("the spin-0 certificate is stated for r = 3".into()));
    }
    let n = calc.alg_dim();
    let lap = h.laplacian(0).clone();
    let kernel = h.ker_laplacian(0);
    let zero: Vec<SVec> = ZERO_MODES
        .iter()
        .map(|s| parse_function(calc, s).map(|f| f.coeffs().clone()))
        .collect::<Result<_>>()?;
    let zero_span = Subspace::from_vectors(field, n, zero.clone());
    let zero_modes_span_kernel =
        zero_span.dim() == ZERO_MODES.len() && kernel.contains_all(&zero_span) && kernel.dim() == zero_span.dim();

    let mass = field.int(6) * (field.q() + field.one());
    let massive: Vec<SVec> = MASSIVE_MODES
        .iter()
        .map(|s| parse_function(calc, s).map(|f| f.coeffs().clone()))
        .collect::<Result<_>>()?;
    let massive_modes_ok = Subspace::from_vectors(field, n, massive.clone()).dim() == massive.len()
        && massive.iter().all(|v| lap.apply(v) == v.scale(&mass));

    // scale to integral entries so roots are algebraic integers
    let mut den = num_bigint::BigInt::from(1);
    for (_, _, v) in lap.entries() {
        den = num_integer::Integer::lcm(&den, v.denominator());
    }
    let mut coords = vec![(0.into(), 1.into()); field.degree()];
    coords[0] = (den, 1.into());
    let den_s = CycScalar::from_coords(field, &coords)?;
    let scaled = lap.scale(&den_s);
    let poly = scaled.char_poly()?;
    let mut bound: f64 = 0.0;
    for i in 0..n {
        let row: f64 = scaled
            .row(i)
            .iter()
            .map(|(_, v)| {
                let (re, im) = v.to_complex(1);
                (re * re + im * im).sqrt()
            })
            .sum();
        bound = bound.max(row);
    }
    let den_inv = den_s.inv().expect("nonzero");
    let mut eigenvalues = Vec::new();
    let mut witness = None;
    for (root, mult) in eisenstein_roots(&poly, bound)? {
        let lambda = &root * &den_inv;
        let s = shifted(&lap, &lambda);
        let geometric = n - s.rank();
        let generalized = n - s.compose(&s)?.rank();
        if generalized > geometric && witness.is_none() {
            witness = Some(lambda.to_string());
        }
        eigenvalues.push(Eigenvalue {
            value: lambda.to_strings(),
            display: lambda.to_string(),
            algebraic: mult,
            geometric,
            generalized,
        });
    }
    Ok(SpectrumCertificate {
        kernel_dim: kernel.dim(),
        zero_modes_span_kernel,
        massive_value: mass.to_string(),
        massive_modes_ok,
        char_poly: poly.iter().map(|c| c.to_strings()).collect(),
        eigenvector_dim: eigenvalues.iter().map(|e| e.geometric).sum(),
        eigenvalues,
        witness,
    })
}
