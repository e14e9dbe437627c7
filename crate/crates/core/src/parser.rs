//! Text grammar for mixed polynomials.
//!
//! ```text
//! expr   := term (("+"|"-") term)*
//! term   := ("-")? factor ("*" factor)*
//! factor := base ("^" UINT)?
//! base   := VAR | CONJ | LIT | "(" expr ")"
//! VAR    := "z" UINT          CONJ := "zb" UINT
//! LIT    := UINT | UINT "/" UINT | "i" | "(" signed ("+"|"-") signed? "i" ")"
//! signed := ("-")? UINT ("/" UINT)?
//! ```
//!
//! Exponentiation binds tighter than `*`, which binds tighter than `+`/`-`.
//! ASCII whitespace is skipped between tokens. Powers of sums are expanded,
//! so `(z2+z3)^2` parses to the same canonical polynomial as
//! `z2^2+2*z2*z3+z3^2`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::coeff::{format_rational, ComplexRational};
use crate::poly::{MixedMap, MixedPolynomial};

/// Maximum accepted exponent; keeps expansion of powered sums bounded.
pub const MAX_EXPONENT: u32 = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SourceText {
    pub text: String,
    pub nvars: usize,
}

impl SourceText {
    pub fn new(text: impl Into<String>, nvars: usize) -> Self {
        Self {
            text: text.into(),
            nvars,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DiagnosticKind {
    Syntax,
    Arity,
    Exponent,
    Coefficient,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParseDiagnostic {
    /// Byte offset into the source text, `0..=len`.
    pub position: usize,
    pub message: String,
    pub kind: DiagnosticKind,
}

impl fmt::Display for ParseDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} at byte {}: {}", self.kind, self.position, self.message)
    }
}

impl std::error::Error for ParseDiagnostic {}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    nvars: usize,
}

type PResult<T> = Result<T, ParseDiagnostic>;

impl<'a> Parser<'a> {
    fn new(src: &'a SourceText) -> Self {
        Self {
            bytes: src.text.as_bytes(),
            pos: 0,
            nvars: src.nvars,
        }
    }

    fn err(&self, kind: DiagnosticKind, pos: usize, message: impl Into<String>) -> ParseDiagnostic {
        ParseDiagnostic {
            position: pos.min(self.bytes.len()),
            message: message.into(),
            kind,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    /// Unsigned decimal integer of arbitrary size.
    fn parse_uint_big(&mut self) -> PResult<BigInt> {
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err(DiagnosticKind::Syntax, start, "expected a decimal integer"));
        }
        let s = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        Ok(BigInt::from_str(s).unwrap())
    }

    /// Unsigned decimal integer constrained to `usize` (variable indices,
    /// exponents).
    fn parse_uint_small(&mut self, kind: DiagnosticKind, what: &str) -> PResult<usize> {
        let start = self.pos;
        let big = self.parse_uint_big().map_err(|mut d| {
            d.kind = kind;
            d.message = format!("expected {what}");
            d
        })?;
        let digits = big.to_string();
        digits
            .parse::<usize>()
            .map_err(|_| self.err(kind, start, format!("{what} too large")))
    }

    fn parse_signed_rational(&mut self) -> PResult<BigRational> {
        self.skip_ws();
        let neg = self.eat(b'-');
        self.skip_ws();
        let num = self.parse_uint_big()?;
        let num = if neg { -num } else { num };
        self.skip_ws();
        if self.eat(b'/') {
            self.skip_ws();
            let dstart = self.pos;
            let den = self.parse_uint_big()?;
            if den.is_zero() {
                return Err(self.err(DiagnosticKind::Coefficient, dstart, "zero denominator"));
            }
            Ok(BigRational::new(num, den))
        } else {
            Ok(BigRational::from_integer(num))
        }
    }

    /// `(a+bi)`-style complex literal; caller backtracks on error.
    fn try_complex_literal(&mut self) -> PResult<ComplexRational> {
        let re = self.parse_signed_rational()?;
        self.skip_ws();
        let sign_pos = self.pos;
        let sign = match self.peek() {
            Some(b'+') => 1,
            Some(b'-') => -1,
            _ => {
                return Err(self.err(
                    DiagnosticKind::Syntax,
                    sign_pos,
                    "expected '+' or '-' in complex literal",
                ))
            }
        };
        self.pos += 1;
        self.skip_ws();
        let im_mag = if self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.parse_signed_rational()?
        } else {
            BigRational::one()
        };
        self.skip_ws();
        if !self.eat(b'i') {
            return Err(self.err(DiagnosticKind::Syntax, self.pos, "expected 'i'"));
        }
        self.skip_ws();
        if !self.eat(b')') {
            return Err(self.err(DiagnosticKind::Syntax, self.pos, "expected ')'"));
        }
        let im = if sign < 0 { -im_mag } else { im_mag };
        Ok(ComplexRational::new(re, im))
    }

    fn parse_base(&mut self) -> PResult<MixedPolynomial> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            Some(b'z') => {
                self.pos += 1;
                let conj = self.eat(b'b');
                let idx = self
                    .parse_uint_small(DiagnosticKind::Syntax, "a variable index")
                    .map_err(|mut d| {
                        d.position = start;
                        d
                    })?;
                if idx == 0 || idx > self.nvars {
                    return Err(self.err(
                        DiagnosticKind::Arity,
                        start,
                        format!("variable index {idx} out of range 1..={}", self.nvars),
                    ));
                }
                Ok(if conj {
                    MixedPolynomial::var_conj(self.nvars, idx)
                } else {
                    MixedPolynomial::var(self.nvars, idx)
                })
            }
            Some(b'i') => {
                self.pos += 1;
                Ok(MixedPolynomial::constant(self.nvars, ComplexRational::i()))
            }
            Some(b) if b.is_ascii_digit() => {
                let num = self.parse_uint_big()?;
                let q = if self.eat(b'/') {
                    let dstart = self.pos;
                    let den = self.parse_uint_big()?;
                    if den.is_zero() {
                        return Err(self.err(
                            DiagnosticKind::Coefficient,
                            dstart,
                            "zero denominator",
                        ));
                    }
                    BigRational::new(num, den)
                } else {
                    BigRational::from_integer(num)
                };
                Ok(MixedPolynomial::constant(
                    self.nvars,
                    ComplexRational::new(q, BigRational::zero()),
                ))
            }
            Some(b'(') => {
                let save = self.pos;
                self.pos += 1;
                match self.try_complex_literal() {
                    Ok(c) => Ok(MixedPolynomial::constant(self.nvars, c)),
                    Err(_) => {
                        self.pos = save + 1;
                        let inner = self.parse_expr()?;
                        self.skip_ws();
                        if !self.eat(b')') {
                            return Err(self.err(
                                DiagnosticKind::Syntax,
                                self.pos,
                                "expected ')'",
                            ));
                        }
                        Ok(inner)
                    }
                }
            }
            _ => Err(self.err(
                DiagnosticKind::Syntax,
                start,
                "expected a variable, literal, or '('",
            )),
        }
    }

    fn parse_factor(&mut self) -> PResult<MixedPolynomial> {
        let base = self.parse_base()?;
        self.skip_ws();
        if self.eat(b'^') {
            self.skip_ws();
            let estart = self.pos;
            if self.peek() == Some(b'-') {
                return Err(self.err(
                    DiagnosticKind::Exponent,
                    estart,
                    "negative exponents are not allowed",
                ));
            }
            let e = self.parse_uint_small(DiagnosticKind::Exponent, "an exponent")?;
            if e as u64 > MAX_EXPONENT as u64 {
                return Err(self.err(
                    DiagnosticKind::Exponent,
                    estart,
                    format!("exponent exceeds the limit {MAX_EXPONENT}"),
                ));
            }
            Ok(base.pow(e as u32))
        } else {
            Ok(base)
        }
    }

    fn parse_term(&mut self) -> PResult<MixedPolynomial> {
        self.skip_ws();
        let neg = self.eat(b'-');
        let mut acc = self.parse_factor()?;
        loop {
            self.skip_ws();
            if self.eat(b'*') {
                let rhs = self.parse_factor()?;
                acc = acc.mul(&rhs).expect("same nvars");
            } else {
                break;
            }
        }
        Ok(if neg { acc.negate() } else { acc })
    }

    fn parse_expr(&mut self) -> PResult<MixedPolynomial> {
        let mut acc = self.parse_term()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let t = self.parse_term()?;
                    acc = acc.add(&t).expect("same nvars");
                }
                Some(b'-') => {
                    self.pos += 1;
                    let t = self.parse_term()?;
                    acc = acc.sub(&t).expect("same nvars");
                }
                _ => break,
            }
        }
        Ok(acc)
    }
}

/// Parse one mixed polynomial; the result is canonical.
pub fn parse_polynomial(src: &SourceText) -> Result<MixedPolynomial, ParseDiagnostic> {
    if src.nvars == 0 {
        return Err(ParseDiagnostic {
            position: 0,
            message: "nvars must be at least 1".into(),
            kind: DiagnosticKind::Arity,
        });
    }
    let mut p = Parser::new(src);
    p.skip_ws();
    if p.pos == p.bytes.len() {
        return Err(p.err(DiagnosticKind::Syntax, p.pos, "empty input"));
    }
    let poly = p.parse_expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.err(DiagnosticKind::Syntax, p.pos, "unexpected trailing input"));
    }
    Ok(poly)
}

/// Parse a mixed map from per-component sources sharing `nvars`.
pub fn parse_map(srcs: &[SourceText]) -> Result<MixedMap, ParseDiagnostic> {
    let first = srcs.first().ok_or(ParseDiagnostic {
        position: 0,
        message: "a map needs at least one component".into(),
        kind: DiagnosticKind::Arity,
    })?;
    let nvars = first.nvars;
    let mut components = Vec::with_capacity(srcs.len());
    for (idx, s) in srcs.iter().enumerate() {
        if s.nvars != nvars {
            return Err(ParseDiagnostic {
                position: 0,
                message: format!(
                    "component {} declares {} variables, expected {nvars}",
                    idx + 1,
                    s.nvars
                ),
                kind: DiagnosticKind::Arity,
            });
        }
        components.push(parse_polynomial(s)?);
    }
    Ok(MixedMap::new(components).expect("validated above"))
}

fn variables_string(mu: &[u32], nu: &[u32]) -> String {
    let mut parts = Vec::new();
    for (j, &e) in mu.iter().enumerate() {
        if e == 1 {
            parts.push(format!("z{}", j + 1));
        } else if e > 1 {
            parts.push(format!("z{}^{}", j + 1, e));
        }
    }
    for (j, &e) in nu.iter().enumerate() {
        if e == 1 {
            parts.push(format!("zb{}", j + 1));
        } else if e > 1 {
            parts.push(format!("zb{}^{}", j + 1, e));
        }
    }
    parts.join("*")
}

/// Render one term as (is_negative, body-without-sign).
fn term_string(c: &ComplexRational, vars: &str) -> (bool, String) {
    if c.im.is_zero() {
        let neg = c.re.is_negative();
        let mag = format_rational(&c.re.abs());
        let body = if vars.is_empty() {
            mag
        } else if mag == "1" {
            vars.to_string()
        } else {
            format!("{mag}*{vars}")
        };
        (neg, body)
    } else if c.re.is_zero() {
        let neg = c.im.is_negative();
        let mag = format_rational(&c.im.abs());
        let imag = if mag == "1" {
            "i".to_string()
        } else {
            format!("{mag}*i")
        };
        let body = if vars.is_empty() {
            imag
        } else {
            format!("{imag}*{vars}")
        };
        (neg, body)
    } else {
        let sign = if c.im.is_negative() { "-" } else { "+" };
        let lit = format!(
            "({}{}{}i)",
            format_rational(&c.re),
            sign,
            format_rational(&c.im.abs())
        );
        let body = if vars.is_empty() {
            lit
        } else {
            format!("{lit}*{vars}")
        };
        (false, body)
    }
}

/// Print a canonical polynomial; `parse_polynomial(format_polynomial(f))`
/// returns `f` exactly.
pub fn format_polynomial(f: &MixedPolynomial) -> SourceText {
    if f.terms.is_empty() {
        return SourceText::new("0", f.nvars);
    }
    let mut out = String::new();
    for (idx, t) in f.terms.iter().enumerate() {
        let vars = variables_string(&t.mu, &t.nu);
        let (neg, body) = term_string(&t.coeff, &vars);
        if idx == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push(if neg { '-' } else { '+' });
        }
        out.push_str(&body);
    }
    SourceText::new(out, f.nvars)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::MixedPolynomial as P;
    use proptest::prelude::*;

    fn parse(text: &str, n: usize) -> MixedPolynomial {
        parse_polynomial(&SourceText::new(text, n)).unwrap()
    }

    #[test]
    fn transcription_examples() {
        let f = parse("z1^2 + zb2^2", 2);
        let expected = P::var(2, 1).pow(2).add(&P::var_conj(2, 2).pow(2)).unwrap();
        assert_eq!(f, expected);

        let g = parse("z1*zb1", 1);
        let expected = P::var(1, 1).mul(&P::var_conj(1, 1)).unwrap();
        assert_eq!(g, expected);
    }

    #[test]
    fn expansion_matches_expanded_form() {
        let a = parse("z1 + (z2+z3)^2", 3);
        let b = parse("z1 + z2^2 + 2*z2*z3 + z3^2", 3);
        assert_eq!(a, b);
    }

    #[test]
    fn complex_literals() {
        let f = parse("(1/2+3i)*z2*zb2^2", 2);
        assert_eq!(f.terms.len(), 1);
        let t = &f.terms[0];
        assert_eq!(t.coeff, {
            let mut c = ComplexRational::from_ratio(1, 2);
            c.im = num_rational::BigRational::from_integer(3.into());
            c
        });
        assert_eq!(t.mu, vec![0, 1]);
        assert_eq!(t.nu, vec![0, 2]);

        // parenthesized arithmetic still works
        assert_eq!(parse("(3+4)", 1), P::constant(1, ComplexRational::from_int(7)));
        assert_eq!(parse("(1-i)", 1), P::constant(1, ComplexRational::from_ints(1, -1)));
        assert_eq!(parse("i*i", 1), P::constant(1, ComplexRational::from_int(-1)));
    }

    #[test]
    fn diagnostics_carry_kind_and_position() {
        let d = parse_polynomial(&SourceText::new("z1 + z9", 3)).unwrap_err();
        assert_eq!(d.kind, DiagnosticKind::Arity);
        assert_eq!(d.position, 5);

        let d = parse_polynomial(&SourceText::new("z1^", 3)).unwrap_err();
        assert_eq!(d.kind, DiagnosticKind::Exponent);

        let d = parse_polynomial(&SourceText::new("1/0", 3)).unwrap_err();
        assert_eq!(d.kind, DiagnosticKind::Coefficient);

        let d = parse_polynomial(&SourceText::new("z1 +", 3)).unwrap_err();
        assert_eq!(d.kind, DiagnosticKind::Syntax);
        assert!(d.position <= 4);

        let d = parse_polynomial(&SourceText::new("z1^100", 3)).unwrap_err();
        assert_eq!(d.kind, DiagnosticKind::Exponent);
    }

    #[test]
    fn map_parsing() {
        let map = parse_map(&[
            SourceText::new("z1+(z2+z3)^2", 3),
            SourceText::new("z1^2+z2^2+z3^2", 3),
        ])
        .unwrap();
        assert_eq!(map.k(), 2);
        assert_eq!(map.nvars, 3);

        assert_eq!(parse_map(&[]).unwrap_err().kind, DiagnosticKind::Arity);
        let d = parse_map(&[SourceText::new("z1", 1), SourceText::new("z1", 2)]).unwrap_err();
        assert_eq!(d.kind, DiagnosticKind::Arity);

        // duplicate components are semantically fine here
        assert!(parse_map(&[SourceText::new("z1", 1), SourceText::new("z1", 1)]).is_ok());
    }

    #[test]
    fn format_examples() {
        assert_eq!(format_polynomial(&P::zero(2)).text, "0");
        let mut c = ComplexRational::from_ratio(1, 2);
        c.im = num_rational::BigRational::from_integer(3.into());
        let f = P::monomial(2, c, vec![0, 1], vec![0, 2]);
        assert_eq!(format_polynomial(&f).text, "(1/2+3i)*z2*zb2^2");

        let g = parse("z1^3*zb1", 1);
        let round = parse(&format_polynomial(&g).text, 1);
        assert_eq!(round, g);
    }

    prop_compose! {
        fn arb_coeff()(re_n in -6i64..=6, re_d in 1i64..=4, im_n in -6i64..=6, im_d in 1i64..=4) -> ComplexRational {
            let mut c = ComplexRational::from_ratio(re_n, re_d);
            c.im = num_rational::BigRational::new(im_n.into(), im_d.into());
            c
        }
    }

    prop_compose! {
        fn arb_poly()(nvars in 1usize..=4)
            (nvars in Just(nvars),
             terms in proptest::collection::vec(
                (arb_coeff(),
                 proptest::collection::vec(0u32..=3, nvars),
                 proptest::collection::vec(0u32..=3, nvars)), 0..6)) -> MixedPolynomial {
            MixedPolynomial::from_terms(
                nvars,
                terms.into_iter().map(|(coeff, mu, nu)| crate::poly::MixedMonomial { coeff, mu, nu }).collect(),
            )
        }
    }

    proptest! {
        #[test]
        fn round_trip_exact(f in arb_poly()) {
            let text = format_polynomial(&f);
            let back = parse_polynomial(&text).unwrap();
            prop_assert_eq!(back, f);
        }
    }
}
