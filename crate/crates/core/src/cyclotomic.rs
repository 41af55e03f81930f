//! Exact arithmetic in the cyclotomic field `Q(ζ_r)`.
//!
//! Elements are stored in the power basis `1, ζ, …, ζ^{φ(r)-1}` of
//! `Q[ζ]/(Φ_r(ζ))` as integer numerators over one positive common
//! denominator. Every value is kept in lowest terms, so structural equality
//! is field equality. The deformation parameter `q` is the class of `ζ`.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Static data for `Q(ζ_r)`: the cyclotomic polynomial and the tables used to
/// reduce products and apply Galois automorphisms.
pub struct CycField {
    r: u32,
    phi: usize,
    /// Coefficients of `Φ_r`, constant term first (monic, length `phi + 1`).
    cyclotomic: Vec<i64>,
    /// `reduce[j]` is `ζ^j mod Φ_r` for `0 <= j < r`.
    reduce: Vec<Vec<i64>>,
    /// Units of `Z/r` other than 1; the non-trivial Galois automorphisms.
    conjugators: Vec<u32>,
}

static FIELDS: OnceLock<Mutex<HashMap<u32, &'static CycField>>> = OnceLock::new();

impl CycField {
    /// The interned field for the given `r`. Fields live for the whole
    /// process, so scalars can hold a `'static` reference.
    pub fn get(r: u32) -> Result<&'static CycField> {
        if r < 3 || r.is_multiple_of(2) {
            return Err(Error::InvalidRoot(r));
        }
        let map = FIELDS.get_or_init(|| Mutex::new(HashMap::new()));
        let mut map = map.lock().expect("field table poisoned");
        if let Some(f) = map.get(&r) {
            return Ok(f);
        }
        let field: &'static CycField = Box::leak(Box::new(CycField::build(r)));
        map.insert(r, field);
        Ok(field)
    }

    fn build(r: u32) -> CycField {
        let cyclotomic = cyclotomic_poly(r);
        let phi = cyclotomic.len() - 1;
        let mut reduce = Vec::with_capacity(r as usize);
        let mut cur = vec![0i64; phi];
        cur[0] = 1;
        for _ in 0..r {
            reduce.push(cur.clone());
            // multiply by ζ
            let top = cur[phi - 1];
            for i in (1..phi).rev() {
                cur[i] = cur[i - 1] - top * cyclotomic[i];
            }
            cur[0] = -top * cyclotomic[0];
        }
        let conjugators = (2..r).filter(|j| j.gcd(&r) == 1).collect();
        CycField {
            r,
            phi,
            cyclotomic,
            reduce,
            conjugators,
        }
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// Degree `φ(r)` of the field over `Q`.
    pub fn degree(&self) -> usize {
        self.phi
    }

    /// Coefficients of `Φ_r`, constant term first.
    pub fn cyclotomic_poly(&self) -> &[i64] {
        &self.cyclotomic
    }

    pub fn zero(&'static self) -> CycScalar {
        CycScalar::zero_in(self)
    }

    pub fn one(&'static self) -> CycScalar {
        CycScalar::from_int(self, 1)
    }

    pub fn int(&'static self, n: i64) -> CycScalar {
        CycScalar::from_int(self, n)
    }

    pub fn rational(&'static self, num: i64, den: i64) -> CycScalar {
        CycScalar::from_int(self, num) / CycScalar::from_int(self, den)
    }

    /// `q^k` for any integer `k`.
    pub fn q_power(&'static self, k: i64) -> CycScalar {
        let j = k.rem_euclid(self.r as i64) as usize;
        CycScalar {
            field: self,
            num: self.reduce[j].iter().map(|&c| BigInt::from(c)).collect(),
            den: BigInt::one(),
        }
    }

    pub fn q(&'static self) -> CycScalar {
        self.q_power(1)
    }

    /// `[n]_base = (1 - base^n) / (1 - base)` with `base = q^base_exp`.
    /// For `n >= 0` this is the geometric sum `1 + base + … + base^{n-1}`.
    pub fn q_int_base(&'static self, n: i64, base_exp: i64) -> CycScalar {
        if n >= 0 {
            let mut acc = self.zero();
            for i in 0..n {
                acc += &self.q_power(base_exp * i);
            }
            acc
        } else {
            // [−n]_x = −x^{−n}[n]_x
            -(self.q_power(base_exp * n) * self.q_int_base(-n, base_exp))
        }
    }

    /// `[n]_q`.
    pub fn q_int(&'static self, n: i64) -> CycScalar {
        self.q_int_base(n, 1)
    }

    /// `[n]_{q^2}`.
    pub fn q2_int(&'static self, n: i64) -> CycScalar {
        self.q_int_base(n, 2)
    }

    /// Balanced q-integer `(q^n - q^{-n}) / (q - q^{-1})`.
    pub fn q_bracket_sym(&'static self, n: i64) -> CycScalar {
        // equals q^{1-n} [n]_{q^2}
        self.q_power(1 - n) * self.q2_int(n)
    }

    /// `μ = 1 - q^{-2}`.
    pub fn mu(&'static self) -> CycScalar {
        self.one() - self.q_power(-2)
    }
}

impl fmt::Debug for CycField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(ζ_{})", self.r)
    }
}

impl Eq for CycField {}

impl PartialEq for CycField {
    fn eq(&self, other: &Self) -> bool {
        self.r == other.r
    }
}

/// `Φ_r` by exact division of `x^r - 1` by `Φ_d` for the proper divisors `d`.
fn cyclotomic_poly(r: u32) -> Vec<i64> {
    let mut poly = vec![0i64; r as usize + 1];
    poly[0] = -1;
    poly[r as usize] = 1;
    for d in 1..r {
        if r.is_multiple_of(d) {
            poly = poly_div_exact(&poly, &cyclotomic_poly(d));
        }
    }
    poly
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let lead = den[dn];
    let mut quot = vec![0i64; num.len() - dn];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dn] / lead;
        quot[i] = c;
        for (j, &dj) in den.iter().enumerate() {
            rem[i + j] -= c * dj;
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    quot
}

/// An element of `Q(ζ_r)`.
#[derive(Clone)]
pub struct CycScalar {
    field: &'static CycField,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CycScalar {
    fn zero_in(field: &'static CycField) -> Self {
        CycScalar {
            field,
            num: vec![BigInt::zero(); field.phi],
            den: BigInt::one(),
        }
    }

    pub fn from_int(field: &'static CycField, n: i64) -> Self {
        let mut s = Self::zero_in(field);
        s.num[0] = BigInt::from(n);
        s
    }

    /// Build from rational coordinates `(numerator, denominator)` in the power basis.
    pub fn from_coords(field: &'static CycField, coords: &[(BigInt, BigInt)]) -> Result<Self> {
        if coords.len() != field.phi {
            return Err(Error::Parse(format!(
                "expected {} coordinates, got {}",
                field.phi,
                coords.len()
            )));
        }
        let mut den = BigInt::one();
        for (_, d) in coords {
            if d.is_zero() {
                return Err(Error::Parse("zero denominator".into()));
            }
            den = den.lcm(d);
        }
        let num = coords.iter().map(|(n, d)| n * (&den / d)).collect();
        let mut s = CycScalar { field, num, den };
        s.normalize();
        Ok(s)
    }

    pub fn field(&self) -> &'static CycField {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    /// True when the element lies in `Q`.
    pub fn is_rational(&self) -> bool {
        self.num[1..].iter().all(Zero::is_zero)
    }

    /// Rational coordinates in the power basis, each in lowest terms.
    pub fn coords(&self) -> Vec<(BigInt, BigInt)> {
        self.num
            .iter()
            .map(|n| {
                let g = n.gcd(&self.den);
                if g.is_zero() {
                    (BigInt::zero(), BigInt::one())
                } else {
                    (n / &g, &self.den / &g)
                }
            })
            .collect()
    }

    /// Common denominator of the coordinates.
    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    /// Numerators over [`Self::denominator`].
    pub fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    fn normalize(&mut self) {
        if self.is_zero() {
            self.den = BigInt::one();
            return;
        }
        let mut g = self.den.clone();
        for n in &self.num {
            if g.is_one() {
                break;
            }
            g = g.gcd(n);
        }
        if !g.is_one() {
            for n in &mut self.num {
                *n /= &g;
            }
            self.den /= &g;
        }
        if self.den.is_negative() {
            for n in &mut self.num {
                *n = -&*n;
            }
            self.den = -&self.den;
        }
    }

    fn check_field(&self, other: &CycScalar) {
        assert!(
            std::ptr::eq(self.field, other.field),
            "mixing scalars from Q(ζ_{}) and Q(ζ_{})",
            self.field.r,
            other.field.r
        );
    }

    /// Complex value under the embedding `ζ ↦ exp(2πi j/r)`.
    pub fn to_complex(&self, j: u32) -> (f64, f64) {
        let r = self.field.r as f64;
        let den = self.den.to_f64().unwrap_or(f64::NAN);
        let (mut re, mut im) = (0.0, 0.0);
        for (i, c) in self.num.iter().enumerate() {
            let c = c.to_f64().unwrap_or(f64::NAN) / den;
            let ang = 2.0 * std::f64::consts::PI * (i as f64) * (j as f64) / r;
            re += c * ang.cos();
            im += c * ang.sin();
        }
        (re, im)
    }

    /// Apply the automorphism `ζ ↦ ζ^j` (`gcd(j, r) = 1`).
    pub fn conjugate(&self, j: u32) -> CycScalar {
        let f = self.field;
        let mut acc = vec![BigInt::zero(); f.phi];
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = (i as u64 * j as u64 % f.r as u64) as usize;
            for (k, &t) in f.reduce[e].iter().enumerate() {
                if t != 0 {
                    acc[k] += c * t;
                }
            }
        }
        CycScalar {
            field: f,
            num: acc,
            den: self.den.clone(),
        }
    }

    /// Field norm down to `Q`, returned as `(numerator, denominator)`.
    pub fn norm(&self) -> (BigInt, BigInt) {
        let mut prod = self.clone();
        for &j in &self.field.conjugators {
            prod = &prod * &self.conjugate(j);
        }
        debug_assert!(prod.is_rational());
        (prod.num[0].clone(), prod.den.clone())
    }

    /// Multiplicative inverse, or `None` for zero.
    pub fn inv(&self) -> Option<CycScalar> {
        if self.is_zero() {
            return None;
        }
        if self.is_rational() {
            let mut s = CycScalar::zero_in(self.field);
            s.num[0] = self.den.clone();
            s.den = self.num[0].clone();
            s.normalize();
            return Some(s);
        }
        // x^{-1} = (∏_{σ≠1} σ(x)) / N(x)
        let mut others = self.field.one();
        for &j in &self.field.conjugators {
            others = &others * &self.conjugate(j);
        }
        let n = self * &others;
        debug_assert!(n.is_rational());
        let mut out = others;
        out.num.iter_mut().for_each(|c| *c *= &n.den);
        out.den *= &n.num[0];
        out.normalize();
        Some(out)
    }

    pub fn pow(&self, mut e: u32) -> CycScalar {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Multiply by an integer.
    pub fn scale_int(&self, k: i64) -> CycScalar {
        let mut s = self.clone();
        s.num.iter_mut().for_each(|c| *c *= k);
        s.normalize();
        s
    }

    /// Coordinates as `"p/q"` strings in power-basis order.
    pub fn to_strings(&self) -> Vec<String> {
        self.coords()
            .into_iter()
            .map(|(n, d)| format!("{n}/{d}"))
            .collect()
    }

    /// Inverse of [`Self::to_strings`]; bare integers `"p"` are accepted.
    pub fn parse_strings<S: AsRef<str>>(field: &'static CycField, items: &[S]) -> Result<Self> {
        let coords = items
            .iter()
            .map(|s| parse_rational(s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        CycScalar::from_coords(field, &coords)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::from(self.to_strings())
    }

    pub fn from_json(field: &'static CycField, v: &serde_json::Value) -> Result<Self> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::Parse("scalar must be a JSON array".into()))?;
        let items = arr
            .iter()
            .map(|x| {
                x.as_str()
                    .map(str::to_owned)
                    .ok_or_else(|| Error::Parse("scalar coordinate must be a string".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        CycScalar::parse_strings(field, &items)
    }
}

fn parse_rational(s: &str) -> Result<(BigInt, BigInt)> {
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok((n, d))
}

impl PartialEq for CycScalar {
    fn eq(&self, other: &Self) -> bool {
        self.field.r == other.field.r && self.den == other.den && self.num == other.num
    }
}

impl Eq for CycScalar {}

impl std::hash::Hash for CycScalar {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.field.r.hash(state);
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl fmt::Debug for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, (n, d)) in self.coords().into_iter().enumerate() {
            if n.is_zero() {
                continue;
            }
            let neg = n.is_negative();
            let a = n.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let coeff = if d.is_one() {
                format!("{a}")
            } else {
                format!("{a}/{d}")
            };
            match i {
                0 => write!(f, "{coeff}")?,
                _ => {
                    let var = if i == 1 { "q".to_string() } else { format!("q^{i}") };
                    if a.is_one() && d.is_one() {
                        write!(f, "{var}")?
                    } else {
                        write!(f, "{coeff}*{var}")?
                    }
                }
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a CycScalar> for &'a CycScalar {
    type Output = CycScalar;
    fn add(self, rhs: &CycScalar) -> CycScalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&CycScalar> for CycScalar {
    fn add_assign(&mut self, rhs: &CycScalar) {
        self.check_field(rhs);
        if rhs.is_zero() {
            return;
        }
        if self.den == rhs.den {
            for (a, b) in self.num.iter_mut().zip(&rhs.num) {
                *a += b;
            }
        } else {
            for (a, b) in self.num.iter_mut().zip(&rhs.num) {
                *a *= &rhs.den;
                *a += b * &self.den;
            }
            self.den *= &rhs.den;
        }
        self.normalize();
    }
}

impl SubAssign<&CycScalar> for CycScalar {
    fn sub_assign(&mut self, rhs: &CycScalar) {
        *self += &(-rhs);
    }
}

impl<'a> Sub<&'a CycScalar> for &'a CycScalar {
    type Output = CycScalar;
    fn sub(self, rhs: &CycScalar) -> CycScalar {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        CycScalar {
            field: self.field,
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for CycScalar {
    type Output = CycScalar;
    fn neg(mut self) -> CycScalar {
        self.num.iter_mut().for_each(|c| *c = -&*c);
        self
    }
}

impl<'a> Mul<&'a CycScalar> for &'a CycScalar {
    type Output = CycScalar;
    fn mul(self, rhs: &CycScalar) -> CycScalar {
        self.check_field(rhs);
        let f = self.field;
        let phi = f.phi;
        if self.is_zero() || rhs.is_zero() {
            return CycScalar::zero_in(f);
        }
        let mut conv = vec![BigInt::zero(); 2 * phi - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.num.iter().enumerate() {
                if !b.is_zero() {
                    conv[i + j] += a * b;
                }
            }
        }
        // fold degrees >= phi back using x^phi = -Σ c_i x^i
        for deg in (phi..conv.len()).rev() {
            let top = std::mem::take(&mut conv[deg]);
            if top.is_zero() {
                continue;
            }
            for (i, &c) in f.cyclotomic[..phi].iter().enumerate() {
                if c != 0 {
                    conv[deg - phi + i] -= &top * c;
                }
            }
        }
        conv.truncate(phi);
        let mut out = CycScalar {
            field: f,
            num: conv,
            den: &self.den * &rhs.den,
        };
        out.normalize();
        out
    }
}

impl MulAssign<&CycScalar> for CycScalar {
    fn mul_assign(&mut self, rhs: &CycScalar) {
        *self = &*self * rhs;
    }
}

impl<'a> Div<&'a CycScalar> for &'a CycScalar {
    type Output = CycScalar;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &CycScalar) -> CycScalar {
        self * &rhs.inv().expect("division by zero in Q(ζ)")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<CycScalar> for CycScalar {
            type Output = CycScalar;
            fn $m(self, rhs: CycScalar) -> CycScalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&CycScalar> for CycScalar {
            type Output = CycScalar;
            fn $m(self, rhs: &CycScalar) -> CycScalar {
                (&self).$m(rhs)
            }
        }
        impl $tr<CycScalar> for &CycScalar {
            type Output = CycScalar;
            fn $m(self, rhs: CycScalar) -> CycScalar {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<CycScalar> for CycScalar {
    fn add_assign(&mut self, rhs: CycScalar) {
        *self += &rhs;
    }
}

impl SubAssign<CycScalar> for CycScalar {
    fn sub_assign(&mut self, rhs: CycScalar) {
        *self -= &rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(r: u32) -> &'static CycField {
        CycField::get(r).unwrap()
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(f(3).cyclotomic_poly(), &[1, 1, 1]);
        assert_eq!(f(5).cyclotomic_poly(), &[1, 1, 1, 1, 1]);
        assert_eq!(f(9).cyclotomic_poly(), &[1, 0, 0, 1, 0, 0, 1]);
        assert_eq!(f(15).degree(), 8);
    }

    #[test]
    fn rejects_even_and_small() {
        assert!(CycField::get(4).is_err());
        assert!(CycField::get(1).is_err());
        assert!(CycField::get(6).is_err());
    }

    #[test]
    fn q_power_examples() {
        let k = f(3);
        assert!(k.q_power(0).is_one());
        assert!(k.q_power(3).is_one());
        // ζ^2 = -1 - ζ
        let expect = CycScalar::parse_strings(k, &["-1/1", "-1/1"]).unwrap();
        assert_eq!(k.q_power(2), expect);
        for r in [3, 5, 7, 9] {
            let k = f(r);
            for e in -10..10 {
                assert!((k.q_power(e) * k.q_power(-e)).is_one());
            }
        }
    }

    #[test]
    fn phi_vanishes_at_q() {
        for r in [3, 5, 7, 9, 11] {
            let k = f(r);
            let mut acc = k.zero();
            for (i, &c) in k.cyclotomic_poly().iter().enumerate() {
                acc += &k.q_power(i as i64).scale_int(c);
            }
            assert!(acc.is_zero(), "Φ_{r}(q) != 0");
        }
    }

    #[test]
    fn q_integers() {
        let k = f(3);
        assert_eq!(k.q_int(2), k.one() + k.q());
        assert!(k.q_int(3).is_zero());
        assert!(k.q_int(0).is_zero());
        for r in [3, 5, 7] {
            let k = f(r);
            assert!(k.q_int(r as i64).is_zero());
            assert!(!k.q2_int(2).is_zero());
            // defining fraction
            for n in -4..8 {
                let lhs = k.q_int(n) * (k.one() - k.q());
                assert_eq!(lhs, k.one() - k.q_power(n));
            }
        }
    }

    #[test]
    fn balanced_bracket() {
        for r in [3, 5, 7] {
            let k = f(r);
            assert!(k.q_bracket_sym(1).is_one());
            assert!(k.q_bracket_sym(0).is_zero());
            assert_eq!(k.q_bracket_sym(2), k.q() + k.q_power(-1));
            for n in -3..7 {
                let lhs = k.q_bracket_sym(n) * (k.q() - k.q_power(-1));
                assert_eq!(lhs, k.q_power(n) - k.q_power(-n));
            }
        }
    }

    #[test]
    fn mu_values() {
        let k = f(3);
        assert_eq!(k.mu(), k.one() - k.q());
        for r in [3, 5, 7, 9] {
            let k = f(r);
            assert!(!k.mu().is_zero());
            assert_eq!(k.mu(), (k.q_power(2) - k.one()) * k.q_power(-2));
        }
    }

    #[test]
    fn inverse_and_norm() {
        let k = f(7);
        let x = k.q() + k.int(3) * k.q_power(4) - k.rational(1, 2);
        let y = x.inv().unwrap();
        assert!((&x * &y).is_one());
        let (n, d) = k.q_int(2).norm();
        // 1 + ζ is a unit in Z[ζ_7]
        assert_eq!(n.abs(), d);
        assert!(k.zero().inv().is_none());
    }

    #[test]
    fn string_round_trip() {
        let k = f(3);
        let x = k.rational(1, 3) - k.int(2) * k.q();
        assert_eq!(x.to_strings(), vec!["1/3", "-2/1"]);
        assert_eq!(CycScalar::parse_strings(k, &x.to_strings()).unwrap(), x);
        assert!(CycScalar::parse_strings(k, &["1/0", "1"]).is_err());
        assert!(CycScalar::parse_strings(k, &["1"]).is_err());
    }
}
