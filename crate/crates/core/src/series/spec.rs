use std::fmt;

use rug::Rational;

use super::SeriesError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HarmonicKind {
    /// H_n^{(p)} = Σ_{k≤n} k^{-p}
    Integer,
    /// h_n^{(p)} = Σ_{k≤n} (k-1/2)^{-p}
    Odd,
}

impl HarmonicKind {
    /// c in (k + c)^{-p}.
    pub fn shift(self) -> Rational {
        match self {
            HarmonicKind::Integer => Rational::new(),
            HarmonicKind::Odd => Rational::from((-1, 2)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Offset {
    AtN,
    AtNMinus1,
}

impl Offset {
    pub fn lag(self) -> u32 {
        match self {
            Offset::AtN => 0,
            Offset::AtNMinus1 => 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SeqFactor {
    pub kind: HarmonicKind,
    pub offset: Offset,
    pub order: u32,
}

impl SeqFactor {
    pub fn new(kind: HarmonicKind, offset: Offset, order: u32) -> Self {
        assert!(order >= 1, "harmonic order must be positive");
        SeqFactor { kind, offset, order }
    }
}

/// Σ_{n≥1} ε(n) Π factors / (n + a)^q.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SeriesSpec {
    factors: Vec<SeqFactor>,
    denom_shift: Rational,
    exponent: u32,
    alternating: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// h at n-1 over (n-1/2)^q
    T,
    Tbar,
    /// h at n over n^q
    S,
    Sbar,
    /// H at n-1 over (n-1/2)^q
    M,
    /// H at n-1 over (n+a)^q
    HurwitzMixed,
    /// H at n over n^q
    EulerS,
    EulerSbar,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::T => "T",
            Family::Tbar => "Tbar",
            Family::S => "S",
            Family::Sbar => "Sbar",
            Family::M | Family::HurwitzMixed => "M",
            Family::EulerS => "ES",
            Family::EulerSbar => "ESbar",
        }
    }

    fn layout(self) -> (HarmonicKind, Offset, Rational, bool) {
        let half = Rational::from((-1, 2));
        match self {
            Family::T => (HarmonicKind::Odd, Offset::AtNMinus1, half, false),
            Family::Tbar => (HarmonicKind::Odd, Offset::AtNMinus1, half, true),
            Family::S => (HarmonicKind::Odd, Offset::AtN, Rational::new(), false),
            Family::Sbar => (HarmonicKind::Odd, Offset::AtN, Rational::new(), true),
            Family::M | Family::HurwitzMixed => (HarmonicKind::Integer, Offset::AtNMinus1, half, false),
            Family::EulerS => (HarmonicKind::Integer, Offset::AtN, Rational::new(), false),
            Family::EulerSbar => (HarmonicKind::Integer, Offset::AtN, Rational::new(), true),
        }
    }
}

impl SeriesSpec {
    pub fn new(
        mut factors: Vec<SeqFactor>,
        denom_shift: Rational,
        exponent: u32,
        alternating: bool,
    ) -> Result<Self, SeriesError> {
        if denom_shift <= -1 {
            return Err(SeriesError::Invalid(format!("denominator shift {denom_shift} ≤ -1")));
        }
        if factors.iter().any(|f| f.order == 0) {
            return Err(SeriesError::Invalid("harmonic order must be positive".into()));
        }
        if exponent == 0 || (exponent == 1 && !alternating) {
            return Err(SeriesError::Divergent(format!(
                "divergent family: exponent {exponent} without alternating sign"
            )));
        }
        factors.sort();
        Ok(SeriesSpec { factors, denom_shift, exponent, alternating })
    }

    pub fn factors(&self) -> &[SeqFactor] {
        &self.factors
    }

    pub fn denom_shift(&self) -> &Rational {
        &self.denom_shift
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn alternating(&self) -> bool {
        self.alternating
    }

    pub fn weight(&self) -> u32 {
        self.exponent + self.factors.iter().map(|f| f.order).sum::<u32>()
    }

    pub fn degree(&self) -> usize {
        self.factors.len()
    }

    /// The named family this spec belongs to, with its sorted p-list.
    pub fn family(&self) -> Option<(Family, Vec<u32>)> {
        if self.factors.is_empty() {
            return None;
        }
        let f0 = self.factors[0];
        if self.factors.iter().any(|f| f.kind != f0.kind || f.offset != f0.offset) {
            return None;
        }
        let p: Vec<u32> = self.factors.iter().map(|f| f.order).collect();
        let half = Rational::from((-1, 2));
        let fam = match (f0.kind, f0.offset, self.alternating) {
            (HarmonicKind::Odd, Offset::AtNMinus1, false) if self.denom_shift == half => Family::T,
            (HarmonicKind::Odd, Offset::AtNMinus1, true) if self.denom_shift == half => Family::Tbar,
            (HarmonicKind::Odd, Offset::AtN, false) if self.denom_shift == 0 => Family::S,
            (HarmonicKind::Odd, Offset::AtN, true) if self.denom_shift == 0 => Family::Sbar,
            (HarmonicKind::Integer, Offset::AtNMinus1, false) if self.denom_shift == half => Family::M,
            (HarmonicKind::Integer, Offset::AtNMinus1, false) if p.len() == 1 => Family::HurwitzMixed,
            (HarmonicKind::Integer, Offset::AtN, false) if self.denom_shift == 0 => Family::EulerS,
            (HarmonicKind::Integer, Offset::AtN, true) if self.denom_shift == 0 => Family::EulerSbar,
            _ => return None,
        };
        Some((fam, p))
    }
}

pub fn make_series_spec(
    family: Family,
    p_list: &[u32],
    q: u32,
    a: Option<Rational>,
) -> Result<SeriesSpec, SeriesError> {
    if p_list.is_empty() {
        return Err(SeriesError::Invalid("empty p-list".into()));
    }
    let (kind, offset, shift, alt) = family.layout();
    let shift = match (family, a) {
        (Family::HurwitzMixed, Some(a)) => a,
        (Family::HurwitzMixed, None) => return Err(SeriesError::Invalid("Hurwitz-mixed family needs a shift".into())),
        (_, Some(a)) if a != shift => {
            return Err(SeriesError::Invalid(format!("family {} has fixed shift {shift}", family.name())))
        }
        _ => shift,
    };
    if family == Family::HurwitzMixed && p_list.len() != 1 {
        return Err(SeriesError::Invalid("Hurwitz-mixed family is linear".into()));
    }
    if p_list.contains(&0) {
        return Err(SeriesError::Invalid("harmonic order must be positive".into()));
    }
    let factors = p_list.iter().map(|&p| SeqFactor::new(kind, offset, p)).collect();
    SeriesSpec::new(factors, shift, q, alt)
}

pub fn harmonic_prefix(factor: SeqFactor, n: u64) -> Rational {
    let top = n.saturating_sub(factor.offset.lag() as u64);
    let c = factor.kind.shift();
    let mut acc = Rational::new();
    for k in 1..=top {
        let x = Rational::from(k) + &c;
        let mut d = Rational::from(1);
        for _ in 0..factor.order {
            d *= &x;
        }
        acc += d.recip();
    }
    acc
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MultipleFamily {
    /// t̃(s₁,…) = Σ_{n₁>…>n_r≥1} Π (n_j - 1/2)^{-s_j}
    TValue,
    ZetaValue,
    KanekoTsumura,
}

impl MultipleFamily {
    pub fn name(self) -> &'static str {
        match self {
            MultipleFamily::TValue => "t",
            MultipleFamily::ZetaValue => "z",
            MultipleFamily::KanekoTsumura => "KT",
        }
    }
}

pub const MAX_DEPTH: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultipleSpec {
    family: MultipleFamily,
    exponents: Vec<u32>,
    bars: Vec<bool>,
}

impl MultipleSpec {
    pub fn new(family: MultipleFamily, exponents: Vec<u32>, bars: Vec<bool>) -> Result<Self, SeriesError> {
        Self::with_depth_limit(family, exponents, bars, MAX_DEPTH)
    }

    pub(crate) fn with_depth_limit(
        family: MultipleFamily,
        exponents: Vec<u32>,
        bars: Vec<bool>,
        max_depth: usize,
    ) -> Result<Self, SeriesError> {
        if exponents.is_empty() || exponents.len() > max_depth {
            return Err(SeriesError::Invalid(format!("depth {} outside 1..={max_depth}", exponents.len())));
        }
        if bars.len() != exponents.len() {
            return Err(SeriesError::Invalid("bar pattern length differs from depth".into()));
        }
        if exponents.contains(&0) {
            return Err(SeriesError::Invalid("zero exponent".into()));
        }
        if family == MultipleFamily::KanekoTsumura && bars.iter().any(|&b| b) {
            return Err(SeriesError::Invalid("barred Kaneko–Tsumura values are not supported".into()));
        }
        if exponents[0] == 1 && !bars[0] {
            return Err(SeriesError::Divergent("divergent family: leading index 1 without bar".into()));
        }
        Ok(MultipleSpec { family, exponents, bars })
    }

    pub fn plain(family: MultipleFamily, exponents: Vec<u32>) -> Result<Self, SeriesError> {
        let bars = vec![false; exponents.len()];
        Self::new(family, exponents, bars)
    }

    pub fn family(&self) -> MultipleFamily {
        self.family
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn bars(&self) -> &[bool] {
        &self.bars
    }

    pub fn weight(&self) -> u32 {
        self.exponents.iter().sum()
    }

    pub fn depth(&self) -> usize {
        self.exponents.len()
    }
}

/// Either kind of infinite sum the registry and the relations refer to.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SumRef {
    Series(SeriesSpec),
    Multiple(MultipleSpec),
}

impl SumRef {
    pub fn weight(&self) -> u32 {
        match self {
            SumRef::Series(s) => s.weight(),
            SumRef::Multiple(m) => m.weight(),
        }
    }
}

impl From<SeriesSpec> for SumRef {
    fn from(s: SeriesSpec) -> Self {
        SumRef::Series(s)
    }
}

impl From<MultipleSpec> for SumRef {
    fn from(m: MultipleSpec) -> Self {
        SumRef::Multiple(m)
    }
}

fn write_powers(f: &mut fmt::Formatter<'_>, items: &[u32]) -> fmt::Result {
    let mut i = 0;
    let mut first = true;
    while i < items.len() {
        let mut j = i;
        while j < items.len() && items[j] == items[i] {
            j += 1;
        }
        if !first {
            write!(f, ",")?;
        }
        first = false;
        if j - i > 1 {
            write!(f, "{}^{}", items[i], j - i)?;
        } else {
            write!(f, "{}", items[i])?;
        }
        i = j;
    }
    Ok(())
}

impl fmt::Display for SeriesSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() && !self.alternating {
            return write!(f, "hz[{};a={}]", self.exponent, self.denom_shift);
        }
        match self.family() {
            Some((fam, p)) => {
                write!(f, "{}[", fam.name())?;
                write_powers(f, &p)?;
                write!(f, ";{}", self.exponent)?;
                if fam == Family::HurwitzMixed {
                    write!(f, ";a={}", self.denom_shift)?;
                }
                write!(f, "]")
            }
            None => {
                write!(f, "Sum[")?;
                for (i, fac) in self.factors.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    let k = match fac.kind {
                        HarmonicKind::Integer => "H",
                        HarmonicKind::Odd => "h",
                    };
                    write!(f, "{k}:{}:{}", fac.offset.lag(), fac.order)?;
                }
                write!(f, ";{};a={}", self.exponent, self.denom_shift)?;
                if self.alternating {
                    write!(f, ";alt")?;
                }
                write!(f, "]")
            }
        }
    }
}

impl fmt::Display for MultipleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[", self.family.name())?;
        for (i, (e, b)) in self.exponents.iter().zip(&self.bars).enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}{}", if *b { "b" } else { "" })?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for SumRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SumRef::Series(s) => s.fmt(f),
            SumRef::Multiple(m) => m.fmt(f),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_constructors() {
        let t = make_series_spec(Family::T, &[1], 2, None).unwrap();
        assert_eq!(t.to_string(), "T[1;2]");
        assert_eq!(t.factors()[0], SeqFactor::new(HarmonicKind::Odd, Offset::AtNMinus1, 1));
        let s = make_series_spec(Family::S, &[1, 1], 2, None).unwrap();
        assert_eq!(s.to_string(), "S[1^2;2]");
        let e = make_series_spec(Family::T, &[1], 1, None).unwrap_err();
        assert!(e.to_string().contains("divergent"));
        assert!(make_series_spec(Family::Tbar, &[1], 1, None).is_ok());
    }

    #[test]
    fn p_list_sorted() {
        let a = make_series_spec(Family::T, &[3, 1, 2, 1], 4, None).unwrap();
        let b = make_series_spec(Family::T, &[1, 1, 2, 3], 4, None).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "T[1^2,2,3;4]");
    }

    #[test]
    fn hurwitz_mixed_at_half_is_m() {
        let h = make_series_spec(Family::HurwitzMixed, &[2], 4, Some(Rational::from((-1, 2)))).unwrap();
        let m = make_series_spec(Family::M, &[2], 4, None).unwrap();
        assert_eq!(h, m);
        assert_eq!(h.to_string(), "M[2;4]");
        let g = make_series_spec(Family::HurwitzMixed, &[2], 4, Some(Rational::from((1, 3)))).unwrap();
        assert_eq!(g.to_string(), "M[2;4;a=1/3]");
    }

    #[test]
    fn prefixes() {
        let h1 = SeqFactor::new(HarmonicKind::Odd, Offset::AtN, 1);
        assert_eq!(harmonic_prefix(h1, 0), 0);
        assert_eq!(harmonic_prefix(h1, 1), 2);
        assert_eq!(harmonic_prefix(h1, 2), Rational::from((8, 3)));
        let big_h2 = SeqFactor::new(HarmonicKind::Integer, Offset::AtN, 2);
        assert_eq!(harmonic_prefix(big_h2, 3), Rational::from((49, 36)));
        let lagged = SeqFactor::new(HarmonicKind::Odd, Offset::AtNMinus1, 1);
        assert_eq!(harmonic_prefix(lagged, 2), 2);
    }

    #[test]
    fn multiple_guards() {
        assert!(MultipleSpec::plain(MultipleFamily::ZetaValue, vec![1, 2]).is_err());
        assert!(MultipleSpec::new(MultipleFamily::ZetaValue, vec![1, 2], vec![true, false]).is_ok());
        assert!(MultipleSpec::plain(MultipleFamily::TValue, vec![2, 1, 1, 1]).is_err());
        let z = MultipleSpec::new(MultipleFamily::ZetaValue, vec![3, 1], vec![true, false]).unwrap();
        assert_eq!(z.to_string(), "z[3b,1]");
    }
}
