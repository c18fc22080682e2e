//! Printing and parsing of the literal grammars: field constants,
//! polynomials, rational functions, curve functions, places, divisors.
//!
//! Structured CLI output uses exactly these printers, and the parsers accept
//! exactly what the printers emit, so print-then-parse is the identity.

use std::sync::Arc;

use crate::curve::{CurveModel, FuncElem, ModelKind, Place};
use crate::error::{Error, Result};
use crate::field::{FieldElem, FieldSpec};
use crate::poly::Poly;
use crate::ratfunc::RatFunc;

pub fn poly_to_string(p: &Poly, var: &str) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut parts = Vec::new();
    for i in (0..=p.degree().unwrap()).rev() {
        let c = p.coeff(i);
        if c.is_zero() {
            continue;
        }
        let coeff_str = c.to_string();
        let needs_parens = coeff_str.contains('+');
        let part = match i {
            0 => coeff_str,
            _ => {
                let var_part = if i == 1 {
                    var.to_string()
                } else {
                    format!("{var}^{i}")
                };
                if c.is_one() {
                    var_part
                } else if needs_parens {
                    format!("({coeff_str})*{var_part}")
                } else {
                    format!("{coeff_str}*{var_part}")
                }
            }
        };
        parts.push(part);
    }
    parts.join("+")
}

pub fn ratfunc_to_string(r: &RatFunc, var: &str) -> String {
    if r.den().is_one() {
        return poly_to_string(r.num(), var);
    }
    let num = poly_to_string(r.num(), var);
    let den = poly_to_string(r.den(), var);
    format!("({num})/({den})")
}

/// Prints an element u + v*y of the function field in the expression
/// grammar: `(p + (r)*y)/(s)` with polynomial parts in x.
pub fn func_to_string(f: &FuncElem) -> String {
    if f.v().is_zero() {
        return ratfunc_to_string(f.u(), "x");
    }
    let (p, r, s) = f.clear_denominators();
    let p_str = poly_to_string(&p, "x");
    let r_str = poly_to_string(&r, "x");
    let num = if p.is_zero() {
        format!("({r_str})*y")
    } else {
        format!("{p_str}+({r_str})*y")
    };
    if s.is_one() {
        if p.is_zero() {
            num
        } else {
            format!("({num})")
        }
    } else {
        format!("({num})/({})", poly_to_string(&s, "x"))
    }
}

/// Prints the parameters of a curve model in the curve literal grammar.
pub fn curve_to_string(curve: &CurveModel) -> String {
    match curve.kind() {
        ModelKind::P1 => "P1".to_string(),
        ModelKind::EllipticOrdinary { a, b } => format!("EO(a={a}, b={b})"),
        ModelKind::EllipticSupersingular { a, b } => format!("ES(a={a}, b={b})"),
        ModelKind::EllipticShortW { a, b } => format!("W(A={a}, B={b})"),
    }
}

/// Prints a field literal `GF(p^m; mod=...; gen=...)`.
pub fn field_to_string(spec: &FieldSpec) -> String {
    let p = spec.characteristic();
    let m = spec.extension_degree();
    let modulus: Vec<String> = (0..=m)
        .rev()
        .filter(|&i| spec.modulus_coeffs()[i] != 0)
        .map(|i| {
            let c = spec.modulus_coeffs()[i];
            let sym = spec.gen_symbol();
            match (i, c) {
                (0, c) => format!("{c}"),
                (1, 1) => sym.to_string(),
                (1, c) => format!("{c}*{sym}"),
                (i, 1) => format!("{sym}^{i}"),
                (i, c) => format!("{c}*{sym}^{i}"),
            }
        })
        .collect();
    format!(
        "GF({p}^{m}; mod={}; gen={})",
        modulus.join("+"),
        spec.gen_symbol()
    )
}

/// Prints a place: `inf`, `(minpoly)` on P^1, `(minpoly; x0, y0)` on curves.
pub fn place_to_string(place: &Place) -> String {
    let Some(fp) = place.finite() else {
        return "inf".to_string();
    };
    let pi = poly_to_string(&fp.minpoly, "x");
    match &fp.y0 {
        None => format!("({pi})"),
        Some(y0) => format!("({pi}; {}, {})", fp.x0, y0),
    }
}

/// Parses a field literal: `GF(q)`, `GF(p^m)`, with optional
/// `; mod=<poly in gen>` and `; gen=<symbol>` clauses.
pub fn parse_field(s: &str) -> Result<Arc<FieldSpec>> {
    let s = s.trim();
    let body = s
        .strip_prefix("GF(")
        .and_then(|rest| rest.strip_suffix(')'))
        .ok_or_else(|| Error::Parse(format!("field literal must look like GF(p^m; mod=...; gen=...), got '{s}'")))?;
    let mut parts = body.split(';').map(str::trim);
    let size = parts
        .next()
        .ok_or_else(|| Error::Parse("empty field literal".into()))?;
    let (p, m) = if let Some((ps, ms)) = size.split_once('^') {
        let p: u64 = ps.trim().parse().map_err(|_| Error::Parse(format!("bad characteristic '{ps}'")))?;
        let m: usize = ms.trim().parse().map_err(|_| Error::Parse(format!("bad extension degree '{ms}'")))?;
        (p, m)
    } else {
        let q: u64 = size
            .parse()
            .map_err(|_| Error::Parse(format!("bad field size '{size}'")))?;
        factor_prime_power(q)
            .ok_or_else(|| Error::Parse(format!("{q} is not a prime power")))?
    };
    let mut modulus_str: Option<String> = None;
    let mut gen = "w".to_string();
    for part in parts {
        if let Some(rest) = part.strip_prefix("mod=") {
            modulus_str = Some(rest.trim().to_string());
        } else if let Some(rest) = part.strip_prefix("gen=") {
            gen = rest.trim().to_string();
        } else if !part.is_empty() {
            return Err(Error::Parse(format!("unknown field clause '{part}'")));
        }
    }
    match modulus_str {
        None => FieldSpec::with_default_modulus(p, m, &gen),
        Some(ms) => {
            // parse the modulus as a polynomial in the generator symbol over GF(p)
            let prime = FieldSpec::prime_field(p)?;
            let toks = expr::lex(&ms)?;
            let mut ev = expr::Evaluator::<Poly> {
                toks: &toks,
                pos: 0,
                constant: Box::new({
                    let prime = prime.clone();
                    move |n| Poly::constant(FieldElem::from_prime(&prime, n))
                }),
                ident: Box::new({
                    let prime = prime.clone();
                    let gen = gen.clone();
                    move |name| {
                        if name == gen {
                            Ok(Poly::x(&prime))
                        } else {
                            Err(Error::Parse(format!("unknown symbol '{name}' in modulus")))
                        }
                    }
                }),
                add: |a, b| a.add(b),
                sub: |a, b| a.sub(b),
                mul: |a, b| a.mul(b),
                div: |_, _| Err(Error::Parse("division not allowed in modulus".into())),
                powi: |a, e| {
                    if e < 0 {
                        Err(Error::Parse("negative power in modulus".into()))
                    } else {
                        Ok(a.pow(e as u64))
                    }
                },
                neg: |a| a.neg(),
            };
            let poly = ev.parse_expr()?;
            if ev.pos != toks.len() {
                return Err(Error::Parse(format!("trailing input in modulus '{ms}'")));
            }
            let coeffs: Vec<u64> = (0..poly.coeffs().len())
                .map(|i| poly.coeff(i).coeffs()[0])
                .collect();
            FieldSpec::new(p, m, coeffs, &gen)
        }
    }
}

fn factor_prime_power(q: u64) -> Option<(u64, usize)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q {
        if q % p == 0 {
            let mut m = 0;
            let mut rest = q;
            while rest % p == 0 {
                rest /= p;
                m += 1;
            }
            return if rest == 1 { Some((p, m)) } else { None };
        }
        p += 1;
    }
    Some((q, 1))
}

/// Parses a curve literal: `P1`, `EO(a=..., b=...)`, `ES(a=..., b=...)`,
/// `W(A=..., B=...)` with field-constant arguments.
pub fn parse_curve(base: &Arc<FieldSpec>, s: &str) -> Result<Arc<CurveModel>> {
    let s = s.trim();
    if s == "P1" {
        return Ok(CurveModel::p1(base));
    }
    let (name, lo_keys): (&str, [&str; 2]) = if s.starts_with("EO") {
        ("EO", ["a", "b"])
    } else if s.starts_with("ES") {
        ("ES", ["a", "b"])
    } else if s.starts_with('W') {
        ("W", ["A", "B"])
    } else {
        return Err(Error::Parse(format!(
            "curve literal must be one of P1, EO(a=,b=), ES(a=,b=), W(A=,B=): got '{s}'"
        )));
    };
    let body = s[name.len()..]
        .trim()
        .strip_prefix('(')
        .and_then(|rest| rest.strip_suffix(')'))
        .ok_or_else(|| Error::Parse(format!("malformed curve literal '{s}'")))?;
    let mut a = None;
    let mut b = None;
    for part in split_top_level(body) {
        let part = part.trim();
        let (key, val) = part
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("expected key=value in curve literal, got '{part}'")))?;
        let parsed = parse_field_elem(base, val.trim())?;
        if key.trim() == lo_keys[0] {
            a = Some(parsed);
        } else if key.trim() == lo_keys[1] {
            b = Some(parsed);
        } else {
            return Err(Error::Parse(format!("unknown curve parameter '{}'", key.trim())));
        }
    }
    let a = a.ok_or_else(|| Error::Parse(format!("curve literal missing {}=", lo_keys[0])))?;
    let b = b.ok_or_else(|| Error::Parse(format!("curve literal missing {}=", lo_keys[1])))?;
    match name {
        "EO" => CurveModel::elliptic_ordinary(a, b),
        "ES" => CurveModel::elliptic_supersingular(a, b),
        _ => CurveModel::elliptic_short_w(a, b),
    }
}

/// Splits on commas that are not nested inside parentheses.
fn split_top_level(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                depth = depth.saturating_sub(1);
                cur.push(ch);
            }
            ',' if depth == 0 => {
                out.push(std::mem::take(&mut cur));
            }
            _ => cur.push(ch),
        }
    }
    if !cur.trim().is_empty() {
        out.push(cur);
    }
    out
}

/// Parses a function-field expression in x, y and field constants.
pub fn parse_func(curve: &Arc<CurveModel>, s: &str) -> Result<FuncElem> {
    let toks = expr::lex(s)?;
    let base = curve.base().clone();
    let sym = base.gen_symbol().to_string();
    let mut ev = expr::Evaluator::<FuncElem> {
        toks: &toks,
        pos: 0,
        constant: Box::new({
            let curve = curve.clone();
            let base = base.clone();
            move |n| FuncElem::constant(&curve, FieldElem::from_prime(&base, n))
        }),
        ident: Box::new({
            let curve = curve.clone();
            move |name| match name {
                "x" => Ok(FuncElem::x(&curve)),
                "y" => {
                    if curve.is_p1() {
                        Err(Error::Parse("P1 functions involve x only".into()))
                    } else {
                        Ok(FuncElem::y(&curve))
                    }
                }
                other if other == sym => {
                    Ok(FuncElem::constant(&curve, FieldElem::generator(curve.base())))
                }
                other => Err(Error::Parse(format!("unknown symbol '{other}'"))),
            }
        }),
        add: |a, b| a.add(b),
        sub: |a, b| a.sub(b),
        mul: |a, b| a.mul(b),
        div: |a, b| {
            if b.is_zero() {
                Err(Error::Parse("division by zero".into()))
            } else {
                Ok(a.div(b))
            }
        },
        powi: |a, e| {
            if e < 0 && a.is_zero() {
                return Err(Error::Parse("zero to a negative power".into()));
            }
            Ok(a.pow(e))
        },
        neg: |a| a.neg(),
    };
    let v = ev.parse_expr()?;
    if ev.pos != toks.len() {
        return Err(Error::Parse(format!("trailing input in '{s}'")));
    }
    Ok(v)
}

/// Parses a place literal: `inf`, `(minpoly)`, or `(minpoly; x0, y0)`.
/// The representative pair, when present, selects among the places over the
/// minimal polynomial by printed form.
pub fn parse_place(curve: &Arc<CurveModel>, s: &str) -> Result<Place> {
    let s = s.trim();
    if s == "inf" {
        return Ok(curve.infinity());
    }
    let body = s
        .strip_prefix('(')
        .and_then(|rest| rest.strip_suffix(')'))
        .ok_or_else(|| Error::Parse(format!("place literal must be 'inf' or '(...)': got '{s}'")))?;
    let mut halves = body.splitn(2, ';');
    let pi_str = halves.next().unwrap().trim();
    let pi = parse_poly_in_x(curve.base(), pi_str)?;
    let pi = pi.monic();
    if !pi.is_irreducible() {
        return Err(Error::Parse(format!("'{pi_str}' is not irreducible")));
    }
    let places = curve.places_over(&pi);
    match halves.next() {
        None => {
            if places.len() == 1 {
                Ok(places.into_iter().next().unwrap())
            } else {
                Err(Error::Parse(format!(
                    "ambiguous place over {pi_str}: specify (minpoly; x0, y0)"
                )))
            }
        }
        Some(rest) => {
            let want = format!("({}; {})", poly_to_string(&pi, "x"), rest.trim());
            places
                .into_iter()
                .find(|p| place_to_string(p) == want)
                .ok_or_else(|| Error::Parse(format!("no place printed as '{want}'")))
        }
    }
}

/// Parses a polynomial in x over the base field (a function literal that
/// must come out polynomial).
pub fn parse_poly_in_x(spec: &Arc<FieldSpec>, s: &str) -> Result<Poly> {
    let p1 = CurveModel::p1(spec);
    let f = parse_func(&p1, s)?;
    f.u()
        .as_poly()
        .cloned()
        .ok_or_else(|| Error::Parse(format!("'{s}' is not polynomial in x")))
}

/// Parses a divisor literal: terms `n*<place>` or `<place>` joined by `+`,
/// e.g. `2*inf + (x+1)`.
pub fn parse_divisor(curve: &Arc<CurveModel>, s: &str) -> Result<crate::curve::Divisor> {
    let mut out = crate::curve::Divisor::zero(curve);
    for term in split_top_level_plus(s) {
        let term = term.trim();
        if term.is_empty() {
            continue;
        }
        let (count, place_str) = match term.split_once('*') {
            Some((n, rest)) => (
                n.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad multiplicity '{n}'")))?,
                rest.trim(),
            ),
            None => (1, term),
        };
        let place = parse_place(curve, place_str)?;
        out.add_place(&place, count);
    }
    Ok(out)
}

fn split_top_level_plus(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                depth = depth.saturating_sub(1);
                cur.push(ch);
            }
            '+' if depth == 0 => out.push(std::mem::take(&mut cur)),
            _ => cur.push(ch),
        }
    }
    if !cur.trim().is_empty() {
        out.push(cur);
    }
    out
}

/// Lexer/parser for arithmetic expressions over a finite field in up to two
/// curve variables. Accepts `+ - * / ^`, parentheses, integer literals, the
/// field generator symbol, and the variables `x`, `y`.
pub mod expr {
    use std::sync::Arc;

    use crate::error::{Error, Result};
    use crate::field::{FieldElem, FieldSpec};

    #[derive(Debug, Clone, PartialEq)]
    pub enum Tok {
        Plus,
        Minus,
        Star,
        Slash,
        Caret,
        LParen,
        RParen,
        Int(u64),
        Ident(String),
    }

    pub fn lex(s: &str) -> Result<Vec<Tok>> {
        let mut toks = Vec::new();
        let mut chars = s.chars().peekable();
        while let Some(&c) = chars.peek() {
            match c {
                ' ' | '\t' => {
                    chars.next();
                }
                '+' => {
                    chars.next();
                    toks.push(Tok::Plus);
                }
                '-' => {
                    chars.next();
                    toks.push(Tok::Minus);
                }
                '*' => {
                    chars.next();
                    toks.push(Tok::Star);
                }
                '/' => {
                    chars.next();
                    toks.push(Tok::Slash);
                }
                '^' => {
                    chars.next();
                    toks.push(Tok::Caret);
                }
                '(' => {
                    chars.next();
                    toks.push(Tok::LParen);
                }
                ')' => {
                    chars.next();
                    toks.push(Tok::RParen);
                }
                '0'..='9' => {
                    let mut n = 0u64;
                    while let Some(&d) = chars.peek() {
                        if let Some(v) = d.to_digit(10) {
                            n = n
                                .checked_mul(10)
                                .and_then(|n| n.checked_add(v as u64))
                                .ok_or_else(|| Error::Parse("integer overflow".into()))?;
                            chars.next();
                        } else {
                            break;
                        }
                    }
                    toks.push(Tok::Int(n));
                }
                c if c.is_ascii_alphabetic() || c == '_' => {
                    let mut name = String::new();
                    while let Some(&d) = chars.peek() {
                        if d.is_ascii_alphanumeric() || d == '_' {
                            name.push(d);
                            chars.next();
                        } else {
                            break;
                        }
                    }
                    toks.push(Tok::Ident(name));
                }
                other => {
                    return Err(Error::Parse(format!(
                        "unexpected character '{other}' in expression"
                    )))
                }
            }
        }
        Ok(toks)
    }

    /// Generic evaluator over any field-algebra with the five operations.
    /// The callback resolves identifiers (generator symbol, `x`, `y`).
    pub struct Evaluator<'a, T> {
        pub toks: &'a [Tok],
        pub pos: usize,
        pub constant: Box<dyn Fn(u64) -> T + 'a>,
        pub ident: Box<dyn Fn(&str) -> Result<T> + 'a>,
        pub add: fn(&T, &T) -> T,
        pub sub: fn(&T, &T) -> T,
        pub mul: fn(&T, &T) -> T,
        pub div: fn(&T, &T) -> Result<T>,
        pub powi: fn(&T, i64) -> Result<T>,
        pub neg: fn(&T) -> T,
    }

    impl<'a, T: Clone> Evaluator<'a, T> {
        fn peek(&self) -> Option<&Tok> {
            self.toks.get(self.pos)
        }

        fn bump(&mut self) -> Option<Tok> {
            let t = self.toks.get(self.pos).cloned();
            if t.is_some() {
                self.pos += 1;
            }
            t
        }

        pub fn parse_expr(&mut self) -> Result<T> {
            let mut acc = self.parse_term()?;
            while let Some(tok) = self.peek() {
                match tok {
                    Tok::Plus => {
                        self.bump();
                        let rhs = self.parse_term()?;
                        acc = (self.add)(&acc, &rhs);
                    }
                    Tok::Minus => {
                        self.bump();
                        let rhs = self.parse_term()?;
                        acc = (self.sub)(&acc, &rhs);
                    }
                    _ => break,
                }
            }
            Ok(acc)
        }

        fn parse_term(&mut self) -> Result<T> {
            let mut acc = self.parse_factor()?;
            while let Some(tok) = self.peek() {
                match tok {
                    Tok::Star => {
                        self.bump();
                        let rhs = self.parse_factor()?;
                        acc = (self.mul)(&acc, &rhs);
                    }
                    Tok::Slash => {
                        self.bump();
                        let rhs = self.parse_factor()?;
                        acc = (self.div)(&acc, &rhs)?;
                    }
                    _ => break,
                }
            }
            Ok(acc)
        }

        fn parse_factor(&mut self) -> Result<T> {
            match self.bump() {
                Some(Tok::Minus) => {
                    let inner = self.parse_factor()?;
                    Ok((self.neg)(&inner))
                }
                Some(Tok::LParen) => {
                    let inner = self.parse_expr()?;
                    match self.bump() {
                        Some(Tok::RParen) => self.maybe_pow(inner),
                        _ => Err(Error::Parse("expected ')'".into())),
                    }
                }
                Some(Tok::Int(n)) => {
                    let v = (self.constant)(n);
                    self.maybe_pow(v)
                }
                Some(Tok::Ident(name)) => {
                    let v = (self.ident)(&name)?;
                    self.maybe_pow(v)
                }
                other => Err(Error::Parse(format!(
                    "unexpected token {other:?} in expression"
                ))),
            }
        }

        fn maybe_pow(&mut self, base: T) -> Result<T> {
            if self.peek() == Some(&Tok::Caret) {
                self.bump();
                let neg = if self.peek() == Some(&Tok::Minus) {
                    self.bump();
                    true
                } else {
                    false
                };
                match self.bump() {
                    Some(Tok::Int(e)) => {
                        let e = e as i64;
                        (self.powi)(&base, if neg { -e } else { e })
                    }
                    _ => Err(Error::Parse("expected integer exponent after '^'".into())),
                }
            } else {
                Ok(base)
            }
        }
    }

    /// Parses a field-constant expression (polynomials in the generator
    /// symbol, e.g. `w^2+w+1`).
    pub fn parse_field_elem(spec: &Arc<FieldSpec>, s: &str) -> Result<FieldElem> {
        let toks = lex(s)?;
        let sym = spec.gen_symbol().to_string();
        let mut ev = Evaluator::<FieldElem> {
            toks: &toks,
            pos: 0,
            constant: Box::new({
                let spec = spec.clone();
                move |n| FieldElem::from_prime(&spec, n)
            }),
            ident: Box::new({
                let spec = spec.clone();
                move |name| {
                    if name == sym {
                        Ok(FieldElem::generator(&spec))
                    } else {
                        Err(Error::Parse(format!(
                            "unknown symbol '{name}' in field constant (generator is '{}')",
                            spec.gen_symbol()
                        )))
                    }
                }
            }),
            add: |a, b| a.add(b),
            sub: |a, b| a.sub(b),
            mul: |a, b| a.mul(b),
            div: |a, b| {
                if b.is_zero() {
                    Err(Error::Parse("division by zero constant".into()))
                } else {
                    Ok(a.div(b))
                }
            },
            powi: |a, e| {
                if e < 0 {
                    if a.is_zero() {
                        return Err(Error::Parse("zero to a negative power".into()));
                    }
                    Ok(a.inv().pow(e.unsigned_abs()))
                } else {
                    Ok(a.pow(e as u64))
                }
            },
            neg: |a| a.neg(),
        };
        let v = ev.parse_expr()?;
        if ev.pos != toks.len() {
            return Err(Error::Parse(format!("trailing input in '{s}'")));
        }
        Ok(v)
    }
}

pub use expr::parse_field_elem;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn func_literal_roundtrip() {
        let f2 = FieldSpec::with_default_modulus(2, 1, "w").unwrap();
        let es = parse_curve(&f2, "ES(a=0, b=1)").unwrap();
        for src in ["y/x^2", "x^4+x^5", "(x+1)/(x^2+x+1)", "(x+(x+1)*y)/(x^3)"] {
            let f = parse_func(&es, src).unwrap();
            let printed = func_to_string(&f);
            let back = parse_func(&es, &printed).unwrap();
            assert_eq!(back, f, "roundtrip of {src} via {printed}");
        }
    }

    #[test]
    fn field_literal_roundtrip() {
        for lit in ["GF(2^1)", "GF(4)", "GF(2^3; mod=w^3+w+1; gen=w)", "GF(9)", "GF(5^1)"] {
            let spec = parse_field(lit).unwrap();
            let printed = field_to_string(&spec);
            let back = parse_field(&printed).unwrap();
            assert_eq!(back, spec, "roundtrip of {lit} via {printed}");
        }
        assert!(parse_field("GF(6)").is_err());
        assert!(parse_field("bogus").is_err());
    }

    #[test]
    fn place_literal_roundtrip() {
        let f2 = FieldSpec::with_default_modulus(2, 1, "w").unwrap();
        let eo = parse_curve(&f2, "EO(a=0, b=1)").unwrap();
        for d in 1..=2usize {
            for place in eo.places_of_degree(d) {
                let printed = place_to_string(&place);
                let back = parse_place(&eo, &printed).unwrap();
                assert_eq!(back, place, "roundtrip of {printed}");
            }
        }
        let div = parse_divisor(&eo, "2*inf + (x+1; 1, 0)").unwrap();
        assert_eq!(div.degree(), 3);
    }

    #[test]
    fn field_elem_roundtrip() {
        let f8 = FieldSpec::with_default_modulus(2, 3, "w").unwrap();
        for c in crate::field::all_elements(&f8) {
            let s = c.to_string();
            let back = parse_field_elem(&f8, &s).unwrap();
            assert_eq!(back, c, "roundtrip of {s}");
        }
        let f9 = FieldSpec::with_default_modulus(3, 2, "w").unwrap();
        for c in crate::field::all_elements(&f9) {
            let back = parse_field_elem(&f9, &c.to_string()).unwrap();
            assert_eq!(back, c);
        }
    }

    #[test]
    fn poly_printing() {
        let f4 = FieldSpec::with_default_modulus(2, 2, "w").unwrap();
        let w = FieldElem::generator(&f4);
        let p = Poly::new(
            &f4,
            vec![
                FieldElem::one(&f4),
                w.add(&FieldElem::one(&f4)),
                FieldElem::zero(&f4),
                FieldElem::one(&f4),
            ],
        );
        assert_eq!(poly_to_string(&p, "x"), "x^3+(w+1)*x+1");
    }
}
