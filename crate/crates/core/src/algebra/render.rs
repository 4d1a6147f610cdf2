use std::fmt;

use rug::Rational;

use super::{Atom, Monomial, SymbolicValue};

fn list(f: &mut fmt::Formatter<'_>, v: &[u32]) -> fmt::Result {
    for (i, x) in v.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Pi => write!(f, "pi"),
            Atom::Log2 => write!(f, "log2"),
            Atom::Catalan => write!(f, "G"),
            Atom::Li4Half => write!(f, "Li4half"),
            Atom::Zeta(k) => write!(f, "zeta({k})"),
            Atom::Beta(k) => write!(f, "beta({k})"),
            Atom::ZetaBar(k) => write!(f, "zeta({k}b)"),
            Atom::TildeT(k) => write!(f, "tt({k})"),
            Atom::BarT(k) => write!(f, "tbar({k})"),
            Atom::DoubleZeta(a, b) => write!(f, "zeta({a},{b})"),
            Atom::DoubleZetaBar(a, b) => write!(f, "zeta({a}b,{b})"),
            Atom::DoubleTildeT(a, b) => write!(f, "tt({a},{b})"),
            Atom::DoubleTildeTBar(a, b) => write!(f, "tt({a}b,{b})"),
            Atom::EulerS(a, b) => write!(f, "eulerS({a},{b})"),
            Atom::KTT(v) => {
                write!(f, "KT(")?;
                list(f, v)?;
                write!(f, ")")
            }
            Atom::MixedM(k, m) => write!(f, "mixedM({k},{m})"),
            Atom::MultiTildeT(v) => {
                write!(f, "tt(")?;
                list(f, v)?;
                write!(f, ")")
            }
            Atom::Hurwitz(s, a) => write!(f, "hz({s};{a})"),
            Atom::Series(s) => write!(f, "{s}"),
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        for (i, (a, k)) in self.factors().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if k == 1 {
                write!(f, "{a}")?;
            } else {
                write!(f, "{a}^{k}")?;
            }
        }
        Ok(())
    }
}

/// Writes `c*m` with the sign pulled out; `first` suppresses the leading " + ".
pub(crate) fn write_term(f: &mut fmt::Formatter<'_>, c: &Rational, m: &dyn fmt::Display, is_one: bool, first: bool) -> fmt::Result {
    let neg = *c < 0;
    let abs = Rational::from(c.abs_ref());
    match (first, neg) {
        (true, true) => write!(f, "-")?,
        (true, false) => {}
        (false, true) => write!(f, " - ")?,
        (false, false) => write!(f, " + ")?,
    }
    if is_one {
        write!(f, "{abs}")
    } else if abs == 1 {
        write!(f, "{m}")
    } else {
        write!(f, "{abs}*{m}")
    }
}

impl fmt::Display for SymbolicValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // constant last, the rest in canonical order
        let mut first = true;
        for (m, c) in self.terms().filter(|(m, _)| !m.is_one()) {
            write_term(f, c, m, false, first)?;
            first = false;
        }
        if let Some((m, c)) = self.terms().find(|(m, _)| m.is_one()) {
            write_term(f, c, m, true, first)?;
        }
        Ok(())
    }
}
