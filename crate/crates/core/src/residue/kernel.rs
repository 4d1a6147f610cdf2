use std::fmt;

use rug::Rational;

use super::ResidueError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Trig {
    /// π tan(πs)
    Tan,
    /// π / cos(πs)
    Sec,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PsiArg {
    /// Ψ(1/2 - s), poles at s ∈ N0
    HalfMinusS,
    /// Ψ(-s) = Ψ(1/2 - (s + 1/2)), poles at s ∈ -1/2 + N0
    MinusS,
}

impl PsiArg {
    /// w with Ψ(arg) = Ψ(1/2 - w).
    pub fn center_shift(self) -> Rational {
        match self {
            PsiArg::HalfMinusS => Rational::new(),
            PsiArg::MinusS => Rational::from((1, 2)),
        }
    }
}

/// Ψ^{(p-1)}(arg) / (p-1)!
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PsiFactor {
    pub arg: PsiArg,
    pub order: u32,
}

/// trig(s) · Π psi factors / (s + c)^q
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KernelSpec {
    trig: Option<Trig>,
    psi: Vec<PsiFactor>,
    base_shift: Rational,
    exponent: u32,
}

impl KernelSpec {
    pub fn new(
        trig: Option<Trig>,
        mut psi: Vec<PsiFactor>,
        base_shift: Rational,
        exponent: u32,
    ) -> Result<Self, ResidueError> {
        if exponent < 2 {
            return Err(ResidueError::Kernel(format!(
                "base exponent {exponent} < 2: kernel is not O(s^-2)"
            )));
        }
        if !(base_shift == 0 || base_shift == (1, 2) || base_shift == 1) {
            return Err(ResidueError::Kernel(format!("base shift {base_shift} not in {{0, 1/2, 1}}")));
        }
        if psi.iter().any(|f| f.order == 0) {
            return Err(ResidueError::Kernel("psi order must be positive".into()));
        }
        if trig.is_none() && psi.is_empty() {
            return Err(ResidueError::Kernel("kernel has no pole families".into()));
        }
        psi.sort();
        Ok(KernelSpec { trig, psi, base_shift, exponent })
    }

    pub fn trig(&self) -> Option<Trig> {
        self.trig
    }

    pub fn psi(&self) -> &[PsiFactor] {
        &self.psi
    }

    pub fn base_shift(&self) -> &Rational {
        &self.base_shift
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn weight(&self) -> u32 {
        self.psi.iter().map(|f| f.order).sum::<u32>() + self.exponent
    }

    /// Generic families followed by isolated points, in a fixed order.
    pub fn pole_families(&self) -> Vec<PoleFamily> {
        let c = &self.base_shift;
        let minus_c = Rational::from(-c);
        let has = |a: PsiArg| self.psi.iter().any(|f| f.arg == a);
        let mut generic = Vec::new();
        let mut fixed = vec![minus_c.clone()];

        // lattice offset, lower bound (None = unbounded below)
        let mut classes: Vec<(Rational, Option<Rational>)> = Vec::new();
        if has(PsiArg::HalfMinusS) {
            classes.push((Rational::new(), Some(Rational::new())));
        }
        let half = Rational::from((1, 2));
        if self.trig.is_some() {
            classes.push((half.clone(), None));
        } else if has(PsiArg::MinusS) {
            classes.push((half.clone(), Some(Rational::from((-1, 2)))));
        }
        for (delta, lower) in classes {
            // smallest lattice point > -c, at least the lower bound
            let mut start = lattice_above(&delta, &minus_c);
            if let Some(l) = &lower {
                if *l > start {
                    start = l.clone();
                }
            }
            generic.push(PoleFamily::Generic { sigma: 1, tau: start - 1u32 });
            let below = lattice_below(&delta, &minus_c);
            match &lower {
                None => generic.push(PoleFamily::Generic { sigma: -1, tau: below + 1u32 }),
                Some(l) => {
                    let mut x = l.clone();
                    while x <= below {
                        if !fixed.contains(&x) {
                            fixed.push(x.clone());
                        }
                        x += 1u32;
                    }
                }
            }
        }
        fixed.sort();
        generic.extend(fixed.into_iter().map(PoleFamily::Fixed));
        generic
    }
}

fn lattice_above(delta: &Rational, x: &Rational) -> Rational {
    // smallest y ≡ delta (mod 1) with y > x
    let t = Rational::from(x - delta);
    let f = t.floor();
    f + 1u32 + delta
}

fn lattice_below(delta: &Rational, x: &Rational) -> Rational {
    // largest y ≡ delta (mod 1) with y < x
    let t = Rational::from(x - delta);
    let c = t.ceil();
    c - 1u32 + delta
}

/// A set of poles: s = σ n + τ for all n ≥ 1, or an isolated point.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PoleFamily {
    Generic { sigma: i8, tau: Rational },
    Fixed(Rational),
}

impl PoleFamily {
    /// s = n
    pub fn generic_integer() -> Self {
        PoleFamily::Generic { sigma: 1, tau: Rational::new() }
    }

    /// s = n - 1/2
    pub fn generic_half() -> Self {
        PoleFamily::Generic { sigma: 1, tau: Rational::from((-1, 2)) }
    }

    /// s = -(n - 1/2)
    pub fn generic_neg_half() -> Self {
        PoleFamily::Generic { sigma: -1, tau: Rational::from((1, 2)) }
    }

    pub fn is_generic(&self) -> bool {
        matches!(self, PoleFamily::Generic { .. })
    }

    pub fn shifted(&self, d: &Rational) -> PoleFamily {
        match self {
            PoleFamily::Generic { sigma, tau } => PoleFamily::Generic { sigma: *sigma, tau: Rational::from(tau + d) },
            PoleFamily::Fixed(x) => PoleFamily::Fixed(Rational::from(x + d)),
        }
    }

    /// Constant part τ (or the point itself).
    pub fn constant(&self) -> &Rational {
        match self {
            PoleFamily::Generic { tau, .. } => tau,
            PoleFamily::Fixed(x) => x,
        }
    }

    /// Instantiate at a concrete n.
    pub fn at(&self, n: u64) -> Rational {
        match self {
            PoleFamily::Generic { sigma, tau } => Rational::from(n) * i32::from(*sigma) + tau,
            PoleFamily::Fixed(x) => x.clone(),
        }
    }
}

impl fmt::Display for PoleFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PoleFamily::Generic { sigma, tau } => {
                let n = if *sigma < 0 { "-n" } else { "n" };
                if *tau == 0 {
                    write!(f, "s={n}")
                } else if *tau > 0 {
                    write!(f, "s={n}+{tau}")
                } else {
                    write!(f, "s={n}{tau}")
                }
            }
            PoleFamily::Fixed(x) => write!(f, "s={x}"),
        }
    }
}

impl fmt::Display for KernelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.trig {
            Some(Trig::Tan) => parts.push("tan".into()),
            Some(Trig::Sec) => parts.push("sec".into()),
            None => {}
        }
        let mut i = 0;
        while i < self.psi.len() {
            let p = self.psi[i];
            let mut e = 1;
            while i + e < self.psi.len() && self.psi[i + e] == p {
                e += 1;
            }
            let arg = match p.arg {
                PsiArg::HalfMinusS => String::new(),
                PsiArg::MinusS => ",-s".into(),
            };
            let pw = if e > 1 { format!("^{e}") } else { String::new() };
            parts.push(format!("psi({}{arg}){pw}", p.order));
            i += e;
        }
        let head = if parts.is_empty() { "1".to_string() } else { parts.join("*") };
        let c = &self.base_shift;
        if *c == 0 {
            write!(f, "{head}/s^{}", self.exponent)
        } else {
            write!(f, "{head}/(s+{c})^{}", self.exponent)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn psi(order: u32) -> PsiFactor {
        PsiFactor { arg: PsiArg::HalfMinusS, order }
    }

    #[test]
    fn tan_kernel_families() {
        let k = KernelSpec::new(Some(Trig::Tan), vec![psi(1)], Rational::new(), 2).unwrap();
        let fams = k.pole_families();
        assert_eq!(
            fams,
            vec![
                PoleFamily::generic_integer(),
                PoleFamily::generic_half(),
                PoleFamily::generic_neg_half(),
                PoleFamily::Fixed(Rational::new()),
            ]
        );
    }

    #[test]
    fn half_shift_families() {
        let k = KernelSpec::new(Some(Trig::Tan), vec![psi(1)], Rational::from((1, 2)), 3).unwrap();
        let fams = k.pole_families();
        assert_eq!(fams[0], PoleFamily::Generic { sigma: 1, tau: Rational::from(-1) });
        assert_eq!(fams[1], PoleFamily::Generic { sigma: 1, tau: Rational::from((-1, 2)) });
        assert_eq!(fams[2], PoleFamily::Generic { sigma: -1, tau: Rational::from((-1, 2)) });
        assert_eq!(fams[3], PoleFamily::Fixed(Rational::from((-1, 2))));
    }

    #[test]
    fn trigless_families() {
        let k = KernelSpec::new(
            None,
            vec![psi(2), PsiFactor { arg: PsiArg::MinusS, order: 1 }],
            Rational::from(1),
            2,
        )
        .unwrap();
        let fams = k.pole_families();
        assert_eq!(fams[0], PoleFamily::Generic { sigma: 1, tau: Rational::from(-1) });
        assert_eq!(fams[1], PoleFamily::Generic { sigma: 1, tau: Rational::from((-3, 2)) });
        assert_eq!(fams[2], PoleFamily::Fixed(Rational::from(-1)));
        assert_eq!(fams.len(), 3);
    }

    #[test]
    fn rejects_slow_decay() {
        assert!(KernelSpec::new(Some(Trig::Tan), vec![psi(1)], Rational::new(), 1).is_err());
    }

    #[test]
    fn display() {
        let k = KernelSpec::new(Some(Trig::Tan), vec![psi(1), psi(1), psi(2)], Rational::new(), 3).unwrap();
        assert_eq!(k.to_string(), "tan*psi(1)^2*psi(2)/s^3");
    }
}
