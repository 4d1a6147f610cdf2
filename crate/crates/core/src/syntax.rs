//! Text forms: sum specs (`T[1^2,3;4]`, `z[3b,1]`, `hz[3;a=1/3]`), symbolic values,
//! relations and kernels. The grammar is LL(1); render/parse round-trips on canonical forms.

use std::collections::{BTreeMap, BTreeSet};

use rug::Rational;
use thiserror::Error;

use crate::algebra::{Atom, Monomial, SymbolicValue};
use crate::residue::{KernelSpec, PsiArg, PsiFactor, Relation, Trig};
use crate::series::{
    make_series_spec, Family, HarmonicKind, MultipleFamily, MultipleSpec, Offset, SeqFactor, SeriesError, SeriesSpec,
    SumRef,
};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at column {column}: {message}")]
    Syntax { column: usize, message: String },
    #[error("{0}")]
    Divergent(String),
    #[error("invalid: {0}")]
    Invalid(String),
}

impl From<SeriesError> for ParseError {
    fn from(e: SeriesError) -> Self {
        match e {
            SeriesError::Divergent(m) => ParseError::Divergent(m),
            other => ParseError::Invalid(other.to_string()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(String),
    Ident(String),
    Punct(char),
    End,
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Lexer {
    fn new(text: &str) -> Result<Self, ParseError> {
        let mut toks = Vec::new();
        let chars: Vec<char> = text.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let col = i + 1;
            if c.is_whitespace() {
                i += 1;
            } else if c.is_ascii_digit() {
                let s = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                toks.push((Tok::Num(chars[s..i].iter().collect()), col));
            } else if c.is_ascii_alphabetic() {
                let s = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                toks.push((Tok::Ident(chars[s..i].iter().collect()), col));
            } else if "[](),;^*/+-=:".contains(c) {
                toks.push((Tok::Punct(c), col));
                i += 1;
            } else {
                return Err(ParseError::Syntax { column: col, message: format!("unexpected character '{c}'") });
            }
        }
        toks.push((Tok::End, chars.len() + 1));
        Ok(Lexer { toks, pos: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn col(&self) -> usize {
        self.toks[self.pos].1
    }

    fn next(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax { column: self.col(), message: message.into() })
    }

    fn describe(t: &Tok) -> String {
        match t {
            Tok::Num(n) => format!("number {n}"),
            Tok::Ident(s) => format!("'{s}'"),
            Tok::Punct(c) => format!("'{c}'"),
            Tok::End => "end of input".into(),
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if *self.peek() == Tok::Punct(c) {
            self.next();
            Ok(())
        } else {
            let found = Self::describe(self.peek());
            self.err(format!("expected '{c}', found {found}"))
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Punct(c) {
            self.next();
            true
        } else {
            false
        }
    }

    fn uint(&mut self) -> Result<u32, ParseError> {
        match self.peek().clone() {
            Tok::Num(n) => {
                let col = self.col();
                self.next();
                n.parse().map_err(|_| ParseError::Syntax { column: col, message: format!("integer {n} too large") })
            }
            t => self.err(format!("expected integer, found {}", Self::describe(&t))),
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.next();
                Ok(s)
            }
            t => self.err(format!("expected name, found {}", Self::describe(&t))),
        }
    }

    /// ['-'] int ['/' int]
    fn rational(&mut self) -> Result<Rational, ParseError> {
        let neg = self.eat('-');
        let n = self.uint()?;
        let mut r = Rational::from(n);
        if self.eat('/') {
            let col = self.col();
            let d = self.uint()?;
            if d == 0 {
                return Err(ParseError::Syntax { column: col, message: "zero denominator".into() });
            }
            r /= d;
        }
        Ok(if neg { -r } else { r })
    }

    /// int ['b']
    fn barred(&mut self) -> Result<(u32, bool), ParseError> {
        let n = self.uint()?;
        if *self.peek() == Tok::Ident("b".into()) {
            self.next();
            return Ok((n, true));
        }
        Ok((n, false))
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        match self.peek() {
            Tok::End => Ok(()),
            t => {
                let d = Self::describe(t);
                self.err(format!("unexpected {d}"))
            }
        }
    }
}

fn sum_family(name: &str) -> Option<Family> {
    Some(match name {
        "T" => Family::T,
        "Tbar" => Family::Tbar,
        "S" => Family::S,
        "Sbar" => Family::Sbar,
        "M" => Family::M,
        "ES" => Family::EulerS,
        "ESbar" => Family::EulerSbar,
        _ => return None,
    })
}

fn multiple_family(name: &str) -> Option<MultipleFamily> {
    Some(match name {
        "t" => MultipleFamily::TValue,
        "z" => MultipleFamily::ZetaValue,
        "KT" => MultipleFamily::KanekoTsumura,
        _ => return None,
    })
}

fn is_sumspec_head(name: &str) -> bool {
    sum_family(name).is_some() || multiple_family(name).is_some() || name == "hz" || name == "Sum"
}

/// `a=<rational>`
fn shift_arg(lx: &mut Lexer) -> Result<Rational, ParseError> {
    let col = lx.col();
    let key = lx.ident()?;
    if key != "a" {
        return Err(ParseError::Syntax { column: col, message: format!("expected 'a=', found '{key}'") });
    }
    lx.expect('=')?;
    lx.rational()
}

/// Sum spec body after the head name.
fn sumspec_after_head(lx: &mut Lexer, head: &str) -> Result<SumRef, ParseError> {
    lx.expect('[')?;
    if let Some(fam) = multiple_family(head) {
        let mut ex = Vec::new();
        let mut bars = Vec::new();
        loop {
            let (e, b) = lx.barred()?;
            ex.push(e);
            bars.push(b);
            if !lx.eat(',') {
                break;
            }
        }
        lx.expect(']')?;
        return Ok(SumRef::Multiple(MultipleSpec::new(fam, ex, bars)?));
    }
    if head == "hz" {
        let q = lx.uint()?;
        lx.expect(';')?;
        let a = shift_arg(lx)?;
        lx.expect(']')?;
        return Ok(SumRef::Series(SeriesSpec::new(Vec::new(), a, q, false)?));
    }
    if head == "Sum" {
        let mut factors = Vec::new();
        if *lx.peek() != Tok::Punct(';') {
            loop {
                let col = lx.col();
                let kind = match lx.ident()?.as_str() {
                    "H" => HarmonicKind::Integer,
                    "h" => HarmonicKind::Odd,
                    k => return Err(ParseError::Syntax { column: col, message: format!("unknown harmonic kind '{k}'") }),
                };
                lx.expect(':')?;
                let col = lx.col();
                let offset = match lx.uint()? {
                    0 => Offset::AtN,
                    1 => Offset::AtNMinus1,
                    l => return Err(ParseError::Syntax { column: col, message: format!("lag {l} not in {{0,1}}") }),
                };
                lx.expect(':')?;
                let col = lx.col();
                let order = lx.uint()?;
                if order == 0 {
                    return Err(ParseError::Syntax { column: col, message: "harmonic order must be positive".into() });
                }
                factors.push(SeqFactor::new(kind, offset, order));
                if !lx.eat(',') {
                    break;
                }
            }
        }
        lx.expect(';')?;
        let q = lx.uint()?;
        lx.expect(';')?;
        let a = shift_arg(lx)?;
        let alt = if lx.eat(';') {
            let col = lx.col();
            let w = lx.ident()?;
            if w != "alt" {
                return Err(ParseError::Syntax { column: col, message: format!("expected 'alt', found '{w}'") });
            }
            true
        } else {
            false
        };
        lx.expect(']')?;
        return Ok(SumRef::Series(SeriesSpec::new(factors, a, q, alt)?));
    }
    let fam = sum_family(head).expect("checked head");
    let mut p = Vec::new();
    loop {
        let col = lx.col();
        let v = lx.uint()?;
        if v == 0 {
            return Err(ParseError::Syntax { column: col, message: "harmonic order must be positive".into() });
        }
        let rep = if lx.eat('^') { lx.uint()? } else { 1 };
        for _ in 0..rep {
            p.push(v);
        }
        if !lx.eat(',') {
            break;
        }
    }
    lx.expect(';')?;
    let q = lx.uint()?;
    let a = if lx.eat(';') { Some(shift_arg(lx)?) } else { None };
    lx.expect(']')?;
    let fam = match (fam, &a) {
        (Family::M, Some(_)) => Family::HurwitzMixed,
        _ => fam,
    };
    Ok(SumRef::Series(make_series_spec(fam, &p, q, a)?))
}

pub fn parse_sumspec(text: &str) -> Result<SumRef, ParseError> {
    let mut lx = Lexer::new(text)?;
    let col = lx.col();
    let head = lx.ident()?;
    if !is_sumspec_head(&head) {
        return Err(ParseError::Syntax { column: col, message: format!("unknown family '{head}'") });
    }
    let r = sumspec_after_head(&mut lx, &head)?;
    lx.finish()?;
    Ok(r)
}

pub fn parse_series(text: &str) -> Result<SeriesSpec, ParseError> {
    match parse_sumspec(text)? {
        SumRef::Series(s) => Ok(s),
        SumRef::Multiple(m) => Err(ParseError::Invalid(format!("{m} is a multiple value, not a single series"))),
    }
}

fn atom_call(lx: &mut Lexer, name: &str, col: usize) -> Result<Atom, ParseError> {
    lx.expect('(')?;
    if name == "hz" {
        let s = lx.uint()?;
        lx.expect(';')?;
        let a = lx.rational()?;
        lx.expect(')')?;
        let at = Atom::Hurwitz(s, a);
        at.validate().map_err(|e| ParseError::Invalid(e.to_string()))?;
        return Ok(at);
    }
    let mut args = Vec::new();
    loop {
        args.push(lx.barred()?);
        if !lx.eat(',') {
            break;
        }
    }
    lx.expect(')')?;
    let plain: Vec<u32> = args.iter().map(|a| a.0).collect();
    let bars: Vec<bool> = args.iter().map(|a| a.1).collect();
    let bad = || ParseError::Syntax { column: col, message: format!("bad arguments to '{name}'") };
    let at = match (name, plain.as_slice(), bars.as_slice()) {
        ("zeta", [k], [false]) => Atom::Zeta(*k),
        ("zeta", [k], [true]) => Atom::ZetaBar(*k),
        ("zeta", [a, b], [false, false]) => Atom::DoubleZeta(*a, *b),
        ("zeta", [a, b], [true, false]) => Atom::DoubleZetaBar(*a, *b),
        ("beta", [k], [false]) => Atom::Beta(*k),
        ("tt", [k], [false]) => Atom::TildeT(*k),
        ("tt", [a, b], [false, false]) => Atom::DoubleTildeT(*a, *b),
        ("tt", [a, b], [true, false]) => Atom::DoubleTildeTBar(*a, *b),
        ("tt", v, b) if v.len() >= 3 && b.iter().all(|x| !x) => Atom::MultiTildeT(v.to_vec()),
        ("tbar", [k], [false]) => Atom::BarT(*k),
        ("eulerS", [a, b], [false, false]) => Atom::EulerS(*a, *b),
        ("mixedM", [k, m], [false, false]) => Atom::MixedM(*k, *m),
        ("KT", v, b) if b.iter().all(|x| !x) => Atom::KTT(v.to_vec()),
        _ => return Err(bad()),
    };
    let diverges = match &at {
        Atom::Zeta(1) | Atom::TildeT(1) | Atom::DoubleZeta(1, _) | Atom::DoubleTildeT(1, _) => true,
        Atom::KTT(v) | Atom::MultiTildeT(v) => v.first() == Some(&1),
        _ => false,
    };
    if diverges {
        return Err(ParseError::Divergent(format!("divergent family: {at}")));
    }
    at.validate().map_err(|e| ParseError::Invalid(e.to_string()))?;
    Ok(at)
}

fn primary(lx: &mut Lexer) -> Result<SymbolicValue, ParseError> {
    let col = lx.col();
    match lx.peek().clone() {
        Tok::Num(_) => Ok(SymbolicValue::rational(Rational::from(lx.uint()?))),
        Tok::Punct('(') => {
            lx.next();
            let v = expr(lx)?;
            lx.expect(')')?;
            Ok(v)
        }
        Tok::Ident(name) => {
            lx.next();
            match lx.peek() {
                Tok::Punct('[') => {
                    if !is_sumspec_head(&name) {
                        return Err(ParseError::Syntax { column: col, message: format!("unknown family '{name}'") });
                    }
                    match sumspec_after_head(lx, &name)? {
                        SumRef::Series(s) => Ok(SymbolicValue::atom(Atom::Series(s))),
                        SumRef::Multiple(_) => Err(ParseError::Syntax {
                            column: col,
                            message: "multiple-value specs are not allowed inside expressions; use atom syntax".into(),
                        }),
                    }
                }
                Tok::Punct('(') => Ok(SymbolicValue::atom(atom_call(lx, &name, col)?)),
                _ => match name.as_str() {
                    "pi" => Ok(SymbolicValue::atom(Atom::Pi)),
                    "log2" => Ok(SymbolicValue::atom(Atom::Log2)),
                    "G" => Ok(SymbolicValue::atom(Atom::Catalan)),
                    "Li4half" => Ok(SymbolicValue::atom(Atom::Li4Half)),
                    _ => Err(ParseError::Syntax { column: col, message: format!("unknown constant '{name}'") }),
                },
            }
        }
        t => lx.err(format!("expected a value, found {}", Lexer::describe(&t))),
    }
}

fn power(lx: &mut Lexer) -> Result<SymbolicValue, ParseError> {
    let b = primary(lx)?;
    if lx.eat('^') {
        let e = lx.uint()?;
        return Ok(b.pow(e));
    }
    Ok(b)
}

fn product(lx: &mut Lexer) -> Result<SymbolicValue, ParseError> {
    let mut acc = power(lx)?;
    loop {
        if lx.eat('*') {
            acc = &acc * &power(lx)?;
        } else if *lx.peek() == Tok::Punct('/') {
            lx.next();
            let col = lx.col();
            let d = power(lx)?;
            match d.as_rational() {
                Some(r) if r != 0 => acc = acc.scale(&r.recip()),
                _ => return Err(ParseError::Syntax { column: col, message: "division by a non-constant or zero".into() }),
            }
        } else {
            return Ok(acc);
        }
    }
}

fn expr(lx: &mut Lexer) -> Result<SymbolicValue, ParseError> {
    let mut acc = if lx.eat('-') { -&product(lx)? } else { product(lx)? };
    loop {
        if lx.eat('+') {
            acc = &acc + &product(lx)?;
        } else if lx.eat('-') {
            acc = &acc - &product(lx)?;
        } else {
            return Ok(acc);
        }
    }
}

pub fn parse_value(text: &str) -> Result<SymbolicValue, ParseError> {
    let mut lx = Lexer::new(text)?;
    let v = expr(&mut lx)?;
    lx.finish()?;
    Ok(v)
}

/// `lhs = rhs`, moved to `lhs - rhs = 0` and split into series terms and a constant.
pub fn parse_relation(text: &str) -> Result<Relation, ParseError> {
    let mut lx = Lexer::new(text)?;
    let lhs = expr(&mut lx)?;
    lx.expect('=')?;
    let rhs = expr(&mut lx)?;
    lx.finish()?;
    let all = &lhs - &rhs;
    let mut terms: BTreeMap<SeriesSpec, SymbolicValue> = BTreeMap::new();
    let mut constant = SymbolicValue::zero();
    for (m, c) in all.terms() {
        let series: Vec<(&Atom, u32)> = m.factors().filter(|(a, _)| matches!(a, Atom::Series(_))).collect();
        match series.as_slice() {
            [] => constant.add_term(m.clone(), c.clone()),
            [(Atom::Series(s), 1)] => {
                let mut rest = Monomial::one();
                for (a, k) in m.factors().filter(|(a, _)| !matches!(a, Atom::Series(_))) {
                    rest = rest.mul(&Monomial::power(a.clone(), k));
                }
                let slot = terms.entry(s.clone()).or_default();
                *slot = &*slot + &SymbolicValue::monomial(rest, c.clone());
            }
            _ => return Err(ParseError::Invalid(format!("relation term {m} is not linear in the series"))),
        }
    }
    Ok(Relation::from_parts(terms, constant, BTreeSet::new()))
}

/// `[tan|sec *] psi(p[,-s])[^k] * ... / (s^q | (s+c)^q)`
pub fn parse_kernel(text: &str) -> Result<KernelSpec, ParseError> {
    let mut lx = Lexer::new(text)?;
    let mut trig = None;
    let mut psi = Vec::new();
    loop {
        let col = lx.col();
        let name = lx.ident()?;
        match name.as_str() {
            "tan" | "sec" if trig.is_none() && psi.is_empty() => {
                trig = Some(if name == "tan" { Trig::Tan } else { Trig::Sec });
            }
            "psi" => {
                lx.expect('(')?;
                let col = lx.col();
                let order = lx.uint()?;
                if order == 0 {
                    return Err(ParseError::Syntax { column: col, message: "psi order must be positive".into() });
                }
                let arg = if lx.eat(',') {
                    lx.expect('-')?;
                    let col = lx.col();
                    if lx.ident()? != "s" {
                        return Err(ParseError::Syntax { column: col, message: "expected '-s'".into() });
                    }
                    PsiArg::MinusS
                } else {
                    PsiArg::HalfMinusS
                };
                lx.expect(')')?;
                let rep = if lx.eat('^') { lx.uint()? } else { 1 };
                for _ in 0..rep {
                    psi.push(PsiFactor { arg, order });
                }
            }
            _ => return Err(ParseError::Syntax { column: col, message: format!("unexpected kernel factor '{name}'") }),
        }
        if !lx.eat('*') {
            break;
        }
    }
    lx.expect('/')?;
    let shift = if lx.eat('(') {
        let col = lx.col();
        if lx.ident()? != "s" {
            return Err(ParseError::Syntax { column: col, message: "expected 's'".into() });
        }
        lx.expect('+')?;
        let c = lx.rational()?;
        lx.expect(')')?;
        c
    } else {
        let col = lx.col();
        if lx.ident()? != "s" {
            return Err(ParseError::Syntax { column: col, message: "expected 's'".into() });
        }
        Rational::new()
    };
    let q = if lx.eat('^') { lx.uint()? } else { 1 };
    lx.finish()?;
    KernelSpec::new(trig, psi, shift, q).map_err(|e| ParseError::Invalid(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn t_sum_with_powers() {
        let s = parse_series("T[1^2;2]").unwrap();
        assert_eq!(s.factors(), &[SeqFactor::new(HarmonicKind::Odd, Offset::AtNMinus1, 1); 2]);
        assert_eq!(s.exponent(), 2);
        assert_eq!(s.to_string(), "T[1^2;2]");
    }

    #[test]
    fn barred_double_zeta() {
        let SumRef::Multiple(m) = parse_sumspec("z[3b,1]").unwrap() else { panic!() };
        assert_eq!(m.exponents(), &[3, 1]);
        assert_eq!(m.bars(), &[true, false]);
        assert_eq!(m.to_string(), "z[3b,1]");
    }

    #[test]
    fn divergence_has_distinct_message() {
        let e = parse_sumspec("T[1;1]").unwrap_err();
        assert!(matches!(e, ParseError::Divergent(_)));
        assert!(e.to_string().contains("divergent family"));
        assert!(matches!(parse_sumspec("z[1,2]"), Err(ParseError::Divergent(_))));
    }

    #[test]
    fn syntax_errors_carry_columns() {
        match parse_sumspec("T[1,;2]") {
            Err(ParseError::Syntax { column, .. }) => assert_eq!(column, 5),
            other => panic!("{other:?}"),
        }
        match parse_sumspec("Q[1;2]") {
            Err(ParseError::Syntax { column, .. }) => assert_eq!(column, 1),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_sumspec("T[1;2] x"), Err(ParseError::Syntax { column: 8, .. })));
    }

    #[test]
    fn other_heads() {
        for t in ["Tbar[1;1]", "S[1^3;2]", "Sbar[2;3]", "M[2;4]", "M[1;3;a=1/3]", "ES[1;2]", "ESbar[1;3]",
                  "hz[3;a=1/3]", "KT[2,2]", "t[3,2,1]", "Sum[H:0:1,h:1:2;3;a=-1/2;alt]"] {
            let r = parse_sumspec(t).unwrap();
            assert_eq!(r.to_string(), t);
        }
    }

    #[test]
    fn values_round_trip() {
        for t in ["2*G - 1/2*pi*log2", "-7/2*zeta(3) + pi^2*log2", "tt(4) - tt(2b,1) + 1/12*pi^3",
                  "3*T[2;4] + 2*zeta(3)^2 - 1", "hz(3;1/3) + tt(3,2,1) + KT(2,1)"] {
            let v = parse_value(t).unwrap();
            let again = parse_value(&v.to_string()).unwrap();
            assert_eq!(v, again, "{t}");
        }
        let v = parse_value("(pi + 1)^2 / 4").unwrap();
        assert_eq!(v.to_string(), "1/2*pi + 1/4*pi^2 + 1/4");
    }

    #[test]
    fn relation_parse() {
        let r = parse_relation("2*T[1;4] = -pi^2*zeta(3) + 2/3*pi^4*log2 - 31*zeta(5)").unwrap();
        let t = parse_series("T[1;4]").unwrap();
        assert_eq!(r.coefficient(&t), SymbolicValue::int(2));
        let again = parse_relation(&r.to_string()).unwrap();
        assert_eq!(r, again);
        assert!(parse_relation("T[1;2]^2 = 0").is_err());
    }

    #[test]
    fn kernels() {
        let k = parse_kernel("tan*psi(2)/s^3").unwrap();
        assert_eq!(k.to_string(), "tan*psi(2)/s^3");
        assert_eq!(k.weight(), 5);
        let k = parse_kernel("psi(2)*psi(1,-s)/(s+1)^2").unwrap();
        assert_eq!(k.to_string(), "psi(2)*psi(1,-s)/(s+1)^2");
        assert_eq!(k.trig(), None);
        assert!(parse_kernel("tan*psi(1)/s").is_err());
        assert!(matches!(parse_kernel("tan*phi(1)/s^2"), Err(ParseError::Syntax { column: 5, .. })));
    }
}
