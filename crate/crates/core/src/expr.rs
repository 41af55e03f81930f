//! A small parser for forms in conventional notation, e.g.
//! `-(q^2/12) theta b c (1 + b c) - q mu/12 (e_a + e_c a^2 c)`.
//!
//! Juxtaposition and `*` are the wedge product on `Ω`. Runs of the letters
//! `a b c d` are split into generators, so `ac^{r-1}` reads as `a · c^{r-1}`.
//! Exponents may use `r`. Named invariant forms: `e_<letters>`, `e_z`, `e_+`,
//! `theta`, `Top`. Scalars: integers, `q`, `mu`, `[n]_q`, `[n]_{q^2}`.

use crate::algebra::AlgElem;
use crate::cyclotomic::CycScalar;
use crate::error::{Error, Result};
use crate::exterior::{lambda_dim, InvForm, LETTERS};
use crate::forms::{Calculus, Form};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(i64),
    Ident(String),
    Op(char),
    /// `[n]_q` or `[n]_{q^2}`: (expression source, base exponent)
    Bracket(String, i64),
}

fn err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn lex(src: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Tok::Num(s.parse().map_err(|_| err(format!("bad number {s}")))?));
        } else if c == '[' {
            let close = chars[i..]
                .iter()
                .position(|&x| x == ']')
                .ok_or_else(|| err("unclosed ["))?
                + i;
            let inner: String = chars[i + 1..close].iter().collect();
            i = close + 1;
            let rest: String = chars[i..].iter().collect();
            let (base, used) = if rest.starts_with("_{q^2}") {
                (2, 6)
            } else if rest.starts_with("_q^2") {
                (2, 4)
            } else if rest.starts_with("_{q}") {
                (1, 4)
            } else if rest.starts_with("_q") {
                (1, 2)
            } else {
                return Err(err("expected _q or _{q^2} after ]"));
            };
            i += used;
            out.push(Tok::Bracket(inner, base));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            if c == 'e' && chars.get(i + 1) == Some(&'_') {
                i += 2;
                match chars.get(i) {
                    Some('+') => {
                        i += 1;
                        out.push(Tok::Ident("e_+".into()));
                    }
                    Some('{') => {
                        let close = chars[i..]
                            .iter()
                            .position(|&x| x == '}')
                            .ok_or_else(|| err("unclosed {"))?
                            + i;
                        let inner: String = chars[i + 1..close].iter().collect();
                        i = close + 1;
                        out.push(Tok::Ident(format!("e_{inner}")));
                    }
                    _ => {
                        while i < chars.len() && chars[i].is_ascii_alphabetic() {
                            i += 1;
                        }
                        out.push(Tok::Ident(chars[start..i].iter().collect()));
                    }
                }
                continue;
            }
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            if word.chars().all(|x| matches!(x, 'a' | 'b' | 'c' | 'd')) {
                out.extend(word.chars().map(|x| Tok::Ident(x.to_string())));
            } else {
                out.push(Tok::Ident(word));
            }
        } else if "+-*/^(){}".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(err(format!("unexpected character {c:?}")));
        }
    }
    Ok(out)
}

/// Integer arithmetic with `r`, for exponents and bracket arguments.
fn int_expr(src: &str, r: i64) -> Result<i64> {
    let toks = lex(src)?;
    let mut p = IntParser { toks, pos: 0, r };
    let v = p.sum()?;
    if p.pos != p.toks.len() {
        return Err(err(format!("trailing input in integer expression {src:?}")));
    }
    Ok(v)
}

struct IntParser {
    toks: Vec<Tok>,
    pos: usize,
    r: i64,
}

impl IntParser {
    fn sum(&mut self) -> Result<i64> {
        let mut v = self.prod()?;
        while let Some(Tok::Op(op @ ('+' | '-'))) = self.toks.get(self.pos).cloned() {
            self.pos += 1;
            let rhs = self.prod()?;
            v = if op == '+' { v + rhs } else { v - rhs };
        }
        Ok(v)
    }

    fn prod(&mut self) -> Result<i64> {
        let mut v = self.atom()?;
        while let Some(Tok::Op('*')) = self.toks.get(self.pos) {
            self.pos += 1;
            v *= self.atom()?;
        }
        Ok(v)
    }

    fn atom(&mut self) -> Result<i64> {
        let t = self.toks.get(self.pos).cloned().ok_or_else(|| err("empty integer expression"))?;
        self.pos += 1;
        match t {
            Tok::Num(n) => Ok(n),
            Tok::Ident(s) if s == "r" => Ok(self.r),
            Tok::Op('-') => Ok(-self.atom()?),
            Tok::Op('(') => {
                let v = self.sum()?;
                match self.toks.get(self.pos) {
                    Some(Tok::Op(')')) => {
                        self.pos += 1;
                        Ok(v)
                    }
                    _ => Err(err("expected )")),
                }
            }
            other => Err(err(format!("unexpected {other:?} in integer expression"))),
        }
    }
}

struct Parser<'a> {
    calc: &'a Calculus,
    toks: Vec<Tok>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn expect(&mut self, c: char) -> Result<()> {
        match self.peek() {
            Some(Tok::Op(x)) if *x == c => {
                self.pos += 1;
                Ok(())
            }
            other => Err(err(format!("expected {c:?}, found {other:?}"))),
        }
    }

    fn sum(&mut self) -> Result<Form> {
        let mut v = self.term()?;
        while let Some(Tok::Op(op @ ('+' | '-'))) = self.peek().cloned() {
            self.pos += 1;
            let rhs = self.term()?;
            v = if op == '+' { v.add(&rhs) } else { v.sub(&rhs) };
        }
        Ok(v)
    }

    fn starts_primary(&self) -> bool {
        matches!(
            self.peek(),
            Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::Bracket(..)) | Some(Tok::Op('('))
        )
    }

    fn term(&mut self) -> Result<Form> {
        let mut v = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Op('*')) => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    v = self.mul(&v, &rhs);
                }
                Some(Tok::Op('/')) => {
                    self.pos += 1;
                    let rhs = self.power()?;
                    let s = self.as_scalar(&rhs).ok_or_else(|| err("division by a non-scalar"))?;
                    let inv = s.inv().ok_or_else(|| err("division by zero"))?;
                    v = v.scale(&inv);
                }
                _ if self.starts_primary() => {
                    let rhs = self.power()?;
                    v = self.mul(&v, &rhs);
                }
                _ => return Ok(v),
            }
        }
    }

    fn unary(&mut self) -> Result<Form> {
        match self.peek() {
            Some(Tok::Op('-')) => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some(Tok::Op('+')) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn exponent(&mut self) -> Result<i64> {
        let r = self.calc.r() as i64;
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(n)
            }
            Some(Tok::Ident(s)) if s == "r" => {
                self.pos += 1;
                Ok(r)
            }
            Some(Tok::Op('-')) => {
                self.pos += 1;
                Ok(-self.exponent()?)
            }
            Some(Tok::Op(open @ ('{' | '('))) => {
                let close = if open == '{' { '}' } else { ')' };
                self.pos += 1;
                let start = self.pos;
                let mut depth = 0;
                while let Some(t) = self.peek() {
                    match t {
                        Tok::Op(x) if *x == open => depth += 1,
                        Tok::Op(x) if *x == close && depth == 0 => break,
                        Tok::Op(x) if *x == close => depth -= 1,
                        _ => {}
                    }
                    self.pos += 1;
                }
                let inner = self.toks[start..self.pos].to_vec();
                self.expect(close)?;
                let mut p = IntParser { toks: inner, pos: 0, r };
                let v = p.sum()?;
                if p.pos != p.toks.len() {
                    return Err(err("bad exponent"));
                }
                Ok(v)
            }
            other => Err(err(format!("bad exponent {other:?}"))),
        }
    }

    fn power(&mut self) -> Result<Form> {
        let base = self.primary()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.pos += 1;
            let e = self.exponent()?;
            return self.pow(&base, e);
        }
        Ok(base)
    }

    fn pow(&self, base: &Form, e: i64) -> Result<Form> {
        let field = self.calc.field();
        if let Some(s) = self.as_scalar(base) {
            let s = if e < 0 {
                s.inv().ok_or_else(|| err("zero to a negative power"))?
            } else {
                s
            };
            return Ok(self.calc.scalar_form(s.pow(e.unsigned_abs() as u32)));
        }
        if base.degree != 0 {
            if e == 1 {
                return Ok(base.clone());
            }
            return Err(err("powers of forms of positive degree"));
        }
        let x = AlgElem::from_svec(field, base.vec.clone());
        let e = if e < 0 {
            // only group-like a and d have inverses; a^{-1} = a^{r-1}
            let r = self.calc.r() as i64;
            if x == AlgElem::a(field) || x == AlgElem::d(field) {
                e.rem_euclid(r)
            } else {
                return Err(err("negative power of a non-invertible element"));
            }
        } else {
            e
        };
        Ok(self.calc.function(&x.pow(e as u32)))
    }

    fn as_scalar(&self, f: &Form) -> Option<CycScalar> {
        if f.degree != 0 {
            return None;
        }
        match f.vec.entries() {
            [] => Some(self.calc.field().zero()),
            [(0, c)] => Some(c.clone()),
            _ => None,
        }
    }

    fn mul(&self, x: &Form, y: &Form) -> Form {
        if let Some(s) = self.as_scalar(x) {
            return y.scale(&s);
        }
        if let Some(s) = self.as_scalar(y) {
            return x.scale(&s);
        }
        self.calc.wedge(x, y)
    }

    fn primary(&mut self) -> Result<Form> {
        let field = self.calc.field();
        let t = self.peek().cloned().ok_or_else(|| err("unexpected end of input"))?;
        self.pos += 1;
        let calc = self.calc;
        let inv = |e: InvForm| calc.form_from(&e, &AlgElem::one(field));
        Ok(match t {
            Tok::Num(n) => calc.scalar_form(field.int(n)),
            Tok::Bracket(inner, base) => {
                let n = int_expr(&inner, calc.r() as i64)?;
                calc.scalar_form(field.q_int_base(n, base))
            }
            Tok::Op('(') => {
                let v = self.sum()?;
                self.expect(')')?;
                v
            }
            Tok::Ident(name) => match name.as_str() {
                "a" => calc.function(&AlgElem::a(field)),
                "b" => calc.function(&AlgElem::b(field)),
                "c" => calc.function(&AlgElem::c(field)),
                "d" => calc.function(&AlgElem::d(field)),
                "q" => calc.scalar_form(field.q()),
                "mu" | "μ" => calc.scalar_form(field.mu()),
                "theta" | "θ" => inv(InvForm::theta(field)),
                "Top" => inv(InvForm::top(field)),
                "e_z" => inv(InvForm::e_z(field)),
                "e_+" => inv(InvForm::from_word(field, &[0, 3]).add(&InvForm::from_word(field, &[1, 2]))),
                other => {
                    let letters: Vec<u8> = other
                        .strip_prefix("e_")
                        .filter(|s| !s.is_empty())
                        .and_then(|s| s.chars().map(|ch| LETTERS.iter().position(|&l| l == ch).map(|p| p as u8)).collect())
                        .ok_or_else(|| Error::UnknownName(other.to_string()))?;
                    // arbitrary letter order: multiply out in Λ
                    let mut acc = InvForm::one(field);
                    for l in letters {
                        acc = calc.exterior().wedge(&acc, &InvForm::e(field, l));
                    }
                    inv(acc)
                }
            },
            other => return Err(err(format!("unexpected token {other:?}"))),
        })
    }
}

/// Parse a form expression in the given calculus.
pub fn parse_form(calc: &Calculus, src: &str) -> Result<Form> {
    let toks = lex(src)?;
    if toks.is_empty() {
        return Err(err("empty expression"));
    }
    let mut p = Parser { calc, toks, pos: 0 };
    let v = p.sum()?;
    if p.pos != p.toks.len() {
        return Err(err(format!("trailing input at token {}", p.pos)));
    }
    Ok(v)
}

/// Parse an expression that must be a degree-0 element.
pub fn parse_function(calc: &Calculus, src: &str) -> Result<AlgElem> {
    let f = parse_form(calc, src)?;
    if f.degree != 0 && !f.is_zero() {
        return Err(Error::Dimension(format!("expected a function, got degree {}", f.degree)));
    }
    Ok(AlgElem::from_svec(calc.field(), f.vec))
}

/// Parse an expression with constant coefficients as an invariant form.
pub fn parse_inv(calc: &Calculus, src: &str) -> Result<InvForm> {
    let f = parse_form(calc, src)?;
    let n = calc.alg_dim();
    let mut coeffs = vec![calc.field().zero(); lambda_dim(f.degree)];
    for (idx, c) in f.vec.iter() {
        if idx % n != 0 {
            return Err(err(format!("{src:?} has non-constant coefficients")));
        }
        coeffs[idx / n] = c.clone();
    }
    Ok(InvForm { degree: f.degree, coeffs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::CycField;
    use crate::exterior::{A, B, C, D};

    fn calc() -> Calculus {
        Calculus::new(CycField::get(3).unwrap())
    }

    #[test]
    fn generators_and_scalars() {
        let cx = calc();
        let k = cx.field();
        let x = parse_function(&cx, "2 q^{-1} ac^{r-1} - 1/3").unwrap();
        let ac2 = AlgElem::a(k).mul(&AlgElem::c(k).pow(2));
        let expect = ac2.scale(&(k.int(2) * k.q_power(-1))).sub(&AlgElem::scalar(k.rational(1, 3)));
        assert_eq!(x, expect);
        assert_eq!(parse_function(&cx, "a^{-1}").unwrap(), AlgElem::a(k).pow(2));
        assert_eq!(parse_function(&cx, "[3]_q").unwrap(), AlgElem::zero(k));
        assert_eq!(
            parse_function(&cx, "[2]_{q^2}").unwrap(),
            AlgElem::scalar(k.one() + k.q_power(2))
        );
        assert!(parse_function(&cx, "b^r").unwrap().is_zero());
    }

    #[test]
    fn invariant_forms() {
        let cx = calc();
        let k = cx.field();
        let one = AlgElem::one(k);
        let th = parse_form(&cx, "theta").unwrap();
        assert_eq!(th, cx.form_from(&InvForm::e(k, A).add(&InvForm::e(k, D)), &one));
        let eba = parse_form(&cx, "e_ba").unwrap();
        let via = cx.exterior().wedge(&InvForm::e(k, B), &InvForm::e(k, A));
        assert_eq!(eba, cx.form_from(&via, &one));
        let x = parse_form(&cx, "e_b ac^2 + e_c d").unwrap();
        let expect = cx
            .form_from(&InvForm::e(k, B), &AlgElem::a(k).mul(&AlgElem::c(k).pow(2)))
            .add(&cx.form_from(&InvForm::e(k, C), &AlgElem::d(k)));
        assert_eq!(x, expect);
    }

    #[test]
    fn left_coefficients_are_pushed() {
        let cx = calc();
        let k = cx.field();
        // a e_d = q^{-1} e_d a
        let lhs = parse_form(&cx, "a e_d").unwrap();
        let rhs = parse_form(&cx, "q^{-1} e_d a").unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(lhs, cx.form_from(&InvForm::e(k, D).scale(&k.q_power(-1)), &AlgElem::a(k)));
    }

    #[test]
    fn errors() {
        let cx = calc();
        assert!(parse_form(&cx, "foo").is_err());
        assert!(parse_form(&cx, "e_a / e_b").is_err());
        assert!(parse_form(&cx, "(a").is_err());
        assert!(parse_form(&cx, "").is_err());
        assert!(parse_form(&cx, "b^{-1}").is_err());
    }
}
