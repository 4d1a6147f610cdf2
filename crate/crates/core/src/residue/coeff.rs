use std::collections::BTreeMap;
use std::fmt;

use rug::Rational;

use crate::algebra::SymbolicValue;
use crate::series::HarmonicKind;

/// X_{n+offset}^{(order)} with X ∈ {H, h}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SeqSym {
    pub kind: HarmonicKind,
    pub offset: i64,
    pub order: u32,
}

/// Product of sequence symbols, an optional (-1)^n and inverse-linear factors (n+a)^{-k}.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenKey {
    pub seq: BTreeMap<SeqSym, u32>,
    pub sign: bool,
    pub inv: BTreeMap<Rational, u32>,
}

impl GenKey {
    pub fn one() -> Self {
        GenKey::default()
    }

    pub fn is_one(&self) -> bool {
        self.seq.is_empty() && !self.sign && self.inv.is_empty()
    }

    pub fn seq(s: SeqSym) -> Self {
        let mut k = GenKey::one();
        k.seq.insert(s, 1);
        k
    }

    pub fn sign() -> Self {
        GenKey { sign: true, ..GenKey::one() }
    }

    pub fn inv(a: Rational, k: u32) -> Self {
        let mut key = GenKey::one();
        if k > 0 {
            key.inv.insert(a, k);
        }
        key
    }

    pub fn mul(&self, o: &GenKey) -> GenKey {
        let mut out = self.clone();
        for (s, e) in &o.seq {
            *out.seq.entry(*s).or_insert(0) += e;
        }
        for (a, e) in &o.inv {
            *out.inv.entry(a.clone()).or_insert(0) += e;
        }
        // (-1)^n (-1)^n = 1
        out.sign ^= o.sign;
        out
    }
}

/// Polynomial in generic-n symbols with symbolic constant coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CoeffPoly(BTreeMap<GenKey, SymbolicValue>);

impl CoeffPoly {
    pub fn zero() -> Self {
        CoeffPoly(BTreeMap::new())
    }

    pub fn constant(v: SymbolicValue) -> Self {
        Self::term(GenKey::one(), v)
    }

    pub fn rational(r: Rational) -> Self {
        Self::constant(SymbolicValue::rational(r))
    }

    pub fn term(k: GenKey, v: SymbolicValue) -> Self {
        let mut p = Self::zero();
        p.add_term(k, v);
        p
    }

    pub fn add_term(&mut self, k: GenKey, v: SymbolicValue) {
        if v.is_zero() {
            return;
        }
        let slot = self.0.entry(k.clone()).or_default();
        *slot = &*slot + &v;
        if slot.is_zero() {
            self.0.remove(&k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GenKey, &SymbolicValue)> {
        self.0.iter()
    }

    pub fn add(&self, o: &CoeffPoly) -> CoeffPoly {
        let mut out = self.clone();
        for (k, v) in &o.0 {
            out.add_term(k.clone(), v.clone());
        }
        out
    }

    pub fn scale(&self, v: &SymbolicValue) -> CoeffPoly {
        let mut out = Self::zero();
        for (k, c) in &self.0 {
            out.add_term(k.clone(), c * v);
        }
        out
    }

    pub fn mul(&self, o: &CoeffPoly) -> CoeffPoly {
        let mut out = Self::zero();
        for (k1, c1) in &self.0 {
            for (k2, c2) in &o.0 {
                out.add_term(k1.mul(k2), c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> CoeffPoly {
        let mut acc = CoeffPoly::rational(Rational::from(1));
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// The constant part when no symbol is present.
    pub fn as_constant(&self) -> Option<SymbolicValue> {
        match self.0.len() {
            0 => Some(SymbolicValue::zero()),
            1 => self.0.get(&GenKey::one()).cloned(),
            _ => None,
        }
    }
}

impl fmt::Display for GenKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.sign {
            parts.push("(-1)^n".to_string());
        }
        for (s, e) in &self.seq {
            let k = match s.kind {
                HarmonicKind::Integer => "H",
                HarmonicKind::Odd => "h",
            };
            let idx = match s.offset {
                0 => "n".to_string(),
                o if o > 0 => format!("n+{o}"),
                o => format!("n{o}"),
            };
            let pw = if *e > 1 { format!("^{e}") } else { String::new() };
            parts.push(format!("{k}[{idx}]^({}){pw}", s.order));
        }
        for (a, e) in &self.inv {
            let d = if *a == 0 { "n".to_string() } else if *a > 0 { format!("(n+{a})") } else { format!("(n{a})") };
            parts.push(format!("/{d}^{e}"));
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

impl fmt::Display for CoeffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, v)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({v})*{k}")?;
        }
        Ok(())
    }
}
