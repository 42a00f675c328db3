//! Expression front-end: `d1(d2(u)) - x1`, `d1^2*d2(u)`, rational arithmetic
//! with `+ - * / ^` and parentheses.

use dalg::poly::q;
use dalg::{DerivativeOperator, DiffPolynomial, DiffRationalFunction, Symbol};

#[derive(Debug)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "parse error at byte {}: {}", self.position, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Ident(String),
    Int(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(Token, usize)>, ParseError> {
    let mut out = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0usize;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' => i += 1,
            '+' => {
                out.push((Token::Plus, i));
                i += 1;
            }
            '-' => {
                out.push((Token::Minus, i));
                i += 1;
            }
            '*' => {
                out.push((Token::Star, i));
                i += 1;
            }
            '/' => {
                out.push((Token::Slash, i));
                i += 1;
            }
            '^' => {
                out.push((Token::Caret, i));
                i += 1;
            }
            '(' => {
                out.push((Token::LParen, i));
                i += 1;
            }
            ')' => {
                out.push((Token::RParen, i));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((Token::Int(text[start..i].to_string()), start));
            }
            'a'..='z' | 'A'..='Z' | '_' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                out.push((Token::Ident(text[start..i].to_string()), start));
            }
            other => {
                return Err(ParseError {
                    position: i,
                    message: format!("unexpected character `{other}`"),
                })
            }
        }
    }
    Ok(out)
}

/// True for derivation tokens d1, d2, ...
fn derivation_index(name: &str) -> Option<usize> {
    let rest = name.strip_prefix('d')?;
    if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    rest.parse().ok()
}

pub struct Parser<'a> {
    tokens: Vec<(Token, usize)>,
    pos: usize,
    m: usize,
    /// declared symbols, or None to infer freely
    declared: Option<&'a [Symbol]>,
    pub seen_symbols: Vec<Symbol>,
}

impl<'a> Parser<'a> {
    pub fn new(text: &str, m: usize, declared: Option<&'a [Symbol]>) -> Result<Self, ParseError> {
        Ok(Parser {
            tokens: tokenize(text)?,
            pos: 0,
            m,
            declared,
            seen_symbols: Vec::new(),
        })
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn here(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map(|(_, p)| *p)
            .unwrap_or_else(|| self.tokens.last().map(|(_, p)| p + 1).unwrap_or(0))
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, t: Token) -> Result<(), ParseError> {
        if self.peek() == Some(&t) {
            self.pos += 1;
            Ok(())
        } else {
            Err(ParseError {
                position: self.here(),
                message: format!("expected {t:?}"),
            })
        }
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            position: self.here(),
            message: message.into(),
        })
    }

    pub fn parse_expression(&mut self) -> Result<DiffRationalFunction, ParseError> {
        let e = self.expr()?;
        if self.pos != self.tokens.len() {
            return self.fail("trailing input");
        }
        Ok(e)
    }

    fn expr(&mut self) -> Result<DiffRationalFunction, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = &acc + &rhs;
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = &acc - &rhs;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<DiffRationalFunction, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    acc = &acc * &rhs;
                }
                Some(Token::Slash) => {
                    let at = self.here();
                    self.pos += 1;
                    let rhs = self.unary()?;
                    if rhs.is_zero() {
                        return Err(ParseError {
                            position: at,
                            message: "division by zero".into(),
                        });
                    }
                    acc = &acc / &rhs;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<DiffRationalFunction, ParseError> {
        if self.peek() == Some(&Token::Minus) {
            self.pos += 1;
            let v = self.unary()?;
            return Ok(-&v);
        }
        self.power()
    }

    fn power(&mut self) -> Result<DiffRationalFunction, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some(&Token::Caret) {
            self.pos += 1;
            let at = self.here();
            let Some(Token::Int(n)) = self.bump() else {
                return Err(ParseError {
                    position: at,
                    message: "expected an integer exponent".into(),
                });
            };
            let e: u32 = n.parse().map_err(|_| ParseError {
                position: at,
                message: "exponent out of range".into(),
            })?;
            let mut acc = DiffRationalFunction::one(self.m);
            for _ in 0..e {
                acc = &acc * &base;
            }
            return Ok(acc);
        }
        Ok(base)
    }

    /// A chain `d1^2*d2*...` must be followed by `(expr)`; collect it as a
    /// single derivative operator application.
    fn deriv_chain(&mut self, first: usize) -> Result<DiffRationalFunction, ParseError> {
        let mut exps = vec![0u32; self.m];
        let mut index = first;
        loop {
            if index == 0 || index > self.m {
                return self.fail(format!(
                    "derivation index d{index} out of range 1..={}",
                    self.m
                ));
            }
            let mut e = 1u32;
            if self.peek() == Some(&Token::Caret) {
                self.pos += 1;
                let at = self.here();
                let Some(Token::Int(n)) = self.bump() else {
                    return Err(ParseError {
                        position: at,
                        message: "expected an integer exponent".into(),
                    });
                };
                e = n.parse().map_err(|_| ParseError {
                    position: at,
                    message: "exponent out of range".into(),
                })?;
            }
            exps[index - 1] += e;
            match self.peek() {
                Some(Token::LParen) => break,
                Some(Token::Star) => {
                    // continue the chain only when a derivation token follows
                    let next = self.tokens.get(self.pos + 1).map(|(t, _)| t.clone());
                    match next {
                        Some(Token::Ident(name)) if derivation_index(&name).is_some() => {
                            self.pos += 2;
                            index = derivation_index(&name).unwrap();
                        }
                        _ => {
                            return self.fail(
                                "a derivative operator must be applied to an argument: d1(...)",
                            )
                        }
                    }
                }
                _ => {
                    return self
                        .fail("a derivative operator must be applied to an argument: d1(...)")
                }
            }
        }
        self.expect(Token::LParen)?;
        let inner = self.expr()?;
        self.expect(Token::RParen)?;
        let op = DerivativeOperator::new(exps);
        Ok(inner.apply_operator(&op))
    }

    fn atom(&mut self) -> Result<DiffRationalFunction, ParseError> {
        let at = self.here();
        match self.bump() {
            Some(Token::Int(n)) => {
                let value: i64 = n.parse().map_err(|_| ParseError {
                    position: at,
                    message: "integer literal out of range".into(),
                })?;
                Ok(DiffRationalFunction::constant(self.m, q(value)))
            }
            Some(Token::Ident(name)) => {
                if let Some(idx) = derivation_index(&name) {
                    return self.deriv_chain(idx);
                }
                let sym = Symbol::new(&name);
                if let Some(declared) = self.declared {
                    if !declared.contains(&sym) {
                        return Err(ParseError {
                            position: at,
                            message: format!("undeclared symbol `{name}`"),
                        });
                    }
                }
                if !self.seen_symbols.contains(&sym) {
                    self.seen_symbols.push(sym);
                }
                Ok(DiffRationalFunction::from_poly(DiffPolynomial::symbol(
                    self.m, sym,
                )))
            }
            Some(Token::LParen) => {
                let inner = self.expr()?;
                self.expect(Token::RParen)?;
                Ok(inner)
            }
            _ => Err(ParseError {
                position: at,
                message: "expected an expression".into(),
            }),
        }
    }
}

/// Parse one expression; returns the value and the symbols it mentions in
/// first-occurrence order.
pub fn parse_expression(
    text: &str,
    m: usize,
    declared: Option<&[Symbol]>,
) -> Result<(DiffRationalFunction, Vec<Symbol>), ParseError> {
    let mut p = Parser::new(text, m, declared)?;
    let v = p.parse_expression()?;
    Ok((v, p.seen_symbols))
}

#[cfg(test)]
mod tests {
    use super::*;
    use dalg::operator::DerivativeVariable;
    use proptest::prelude::*;

    fn pv(s: &str, exps: &[u32]) -> DiffPolynomial {
        DiffPolynomial::var(
            exps.len(),
            DerivativeVariable::new(Symbol::new(s), DerivativeOperator::new(exps.to_vec())),
        )
    }

    fn rf(p: DiffPolynomial) -> DiffRationalFunction {
        DiffRationalFunction::from_poly(p)
    }

    #[test]
    fn basic_expressions() {
        let (v, syms) = parse_expression("d1(d2(u)) - x1", 2, None).unwrap();
        assert_eq!(v, rf(&pv("u", &[1, 1]) - &pv("x1", &[0, 0])));
        assert_eq!(syms.len(), 2);

        let (v, _) = parse_expression("u*x1 - d1(u)", 2, None).unwrap();
        let expect = rf(
            &(&pv("u", &[0, 0]) * &pv("x1", &[0, 0])) - &pv("u", &[1, 0]),
        );
        assert_eq!(v, expect);

        let (v, _) = parse_expression("d1^2*d2(u)", 2, None).unwrap();
        assert_eq!(v, rf(pv("u", &[2, 1])));
    }

    #[test]
    fn rational_and_power() {
        let (v, _) = parse_expression("d1(u)/u", 2, None).unwrap();
        assert_eq!(
            v,
            DiffRationalFunction::new(pv("u", &[1, 0]), pv("u", &[0, 0])).unwrap()
        );
        let (v, _) = parse_expression("(u+1)^2", 2, None).unwrap();
        let u1 = &pv("u", &[0, 0]) + &DiffPolynomial::one(2);
        assert_eq!(v, rf(&u1 * &u1));
        let (v, _) = parse_expression("3/4", 2, None).unwrap();
        assert_eq!(v, DiffRationalFunction::constant(2, dalg::poly::qr(3, 4)));
    }

    #[test]
    fn nested_operator_application() {
        // d2(d1(u)) == d1d2(u); operators distribute over sums
        let (a, _) = parse_expression("d2(d1(u))", 2, None).unwrap();
        assert_eq!(a, rf(pv("u", &[1, 1])));
        let (b, _) = parse_expression("d1(u*u)", 2, None).unwrap();
        let expect = rf((&pv("u", &[0, 0]) * &pv("u", &[1, 0])).scale(&q(2)));
        assert_eq!(b, expect);
    }

    #[test]
    fn error_positions() {
        let err = parse_expression("u + ", 2, None).unwrap_err();
        assert!(err.message.contains("expected an expression"));
        let err = parse_expression("d3(u)", 2, None).unwrap_err();
        assert!(err.message.contains("out of range"));
        let err = parse_expression("d1 + u", 2, None).unwrap_err();
        assert!(err.message.contains("must be applied"));
        let err = parse_expression("1/0", 2, None).unwrap_err();
        assert!(err.message.contains("division by zero"));
        let err = parse_expression("y + u", 2, Some(&[Symbol::new("u")])).unwrap_err();
        assert!(err.message.contains("undeclared"));
    }

    fn arb_ratfunc() -> impl Strategy<Value = DiffRationalFunction> {
        let term = (
            prop::collection::vec(
                ((0u32..3, 0u32..3, prop::sample::select(vec!["u", "x1"])), 1u32..3),
                0..3,
            ),
            -5i64..6,
        );
        let poly = prop::collection::vec(term, 1..4).prop_map(|terms| {
            let mut p = DiffPolynomial::zero(2);
            for (powers, c) in terms {
                let mono = dalg::Monomial::from_powers(
                    powers
                        .into_iter()
                        .map(|((e1, e2, s), pw)| {
                            (
                                DerivativeVariable::new(
                                    Symbol::new(s),
                                    DerivativeOperator::new(vec![e1, e2]),
                                ),
                                pw,
                            )
                        })
                        .collect(),
                );
                p.add_term(mono, q(c));
            }
            p
        });
        (poly.clone(), poly).prop_filter_map("nonzero denominator", |(n, d)| {
            if d.is_zero() {
                None
            } else {
                Some(DiffRationalFunction::new(n, d).unwrap())
            }
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        // parse ∘ print is the identity on canonical forms
        #[test]
        fn print_parse_round_trip(f in arb_ratfunc()) {
            let printed = f.to_string();
            let (reparsed, _) = parse_expression(&printed, 2, None)
                .unwrap_or_else(|e| panic!("could not reparse `{printed}`: {e}"));
            prop_assert_eq!(reparsed, f);
        }
    }
}
