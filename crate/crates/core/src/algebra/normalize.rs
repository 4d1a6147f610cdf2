use rug::{Integer, Rational};

use super::{Atom, SymbolicValue};
use crate::numerics::{euler_number, factorial, zeta_even_exact};
use crate::series::{Family, SeriesSpec};

fn pow2(k: u32) -> Rational {
    Rational::from(Integer::from(1) << k)
}

fn scaled(a: Atom, r: Rational) -> SymbolicValue {
    SymbolicValue::atom(a).scale(&r)
}

fn pi_power(k: u32, c: Rational) -> SymbolicValue {
    SymbolicValue::atom_pow(Atom::Pi, k).scale(&c)
}

/// t̄(2m+1) = (-1)^m E_{2m} π^{2m+1} / (2 (2m)!)
fn bar_t_odd(k: u32) -> Rational {
    let m = (k - 1) / 2;
    let e = euler_number(2 * m).expect("even index");
    let sign = if m.is_multiple_of(2) { 1 } else { -1 };
    Rational::from((e * sign, factorial(2 * m) * 2u32))
}

fn series_rewrite(s: &SeriesSpec) -> Option<SymbolicValue> {
    if s.factors().is_empty() && !s.alternating() {
        return Some(SymbolicValue::atom(Atom::Hurwitz(s.exponent(), s.denom_shift().clone())));
    }
    let (fam, p) = s.family()?;
    if p.len() != 1 {
        return None;
    }
    let (k, q) = (p[0], s.exponent());
    Some(match fam {
        Family::T => SymbolicValue::atom(Atom::DoubleTildeT(q, k)),
        Family::Tbar => SymbolicValue::atom(Atom::DoubleTildeTBar(q, k)),
        Family::M => SymbolicValue::atom(Atom::MixedM(k, q)),
        Family::EulerS => SymbolicValue::atom(Atom::EulerS(k, q)),
        // Σ (-1)^n H_n^{(k)} n^{-q} = ζ(q̄,k) + ζ(\overline{q+k})
        Family::EulerSbar => {
            &SymbolicValue::atom(Atom::DoubleZetaBar(q, k)) + &SymbolicValue::atom(Atom::ZetaBar(q + k))
        }
        Family::HurwitzMixed if *s.denom_shift() == 0 => SymbolicValue::atom(Atom::DoubleZeta(q, k)),
        _ => return None,
    })
}

/// One rewrite step for an atom, None when it is already irreducible.
pub fn rewrite_atom(a: &Atom) -> Option<SymbolicValue> {
    match a {
        Atom::TildeT(k) => Some(scaled(Atom::Zeta(*k), pow2(*k) - 1u32)),
        Atom::Zeta(k) if k % 2 == 0 => Some(pi_power(*k, zeta_even_exact(*k).ok()?)),
        Atom::BarT(k) if k % 2 == 1 => Some(pi_power(*k, bar_t_odd(*k))),
        Atom::BarT(2) => Some(scaled(Atom::Catalan, Rational::from(4))),
        Atom::BarT(k) => Some(scaled(Atom::Beta(*k), pow2(*k))),
        Atom::Beta(2) => Some(SymbolicValue::atom(Atom::Catalan)),
        Atom::ZetaBar(1) => Some(scaled(Atom::Log2, Rational::from(-1))),
        Atom::ZetaBar(k) => Some(scaled(Atom::Zeta(*k), Rational::from(2) / pow2(*k) - 1u32)),
        Atom::Hurwitz(s, a) if *a == 0 => Some(SymbolicValue::atom(Atom::Zeta(*s))),
        Atom::Hurwitz(s, a) if *a == Rational::from((-1, 2)) => Some(SymbolicValue::atom(Atom::TildeT(*s))),
        Atom::KTT(v) if v.len() == 1 => Some(scaled(Atom::TildeT(v[0]), pow2(v[0]).recip() * 2u32)),
        Atom::MultiTildeT(v) if v.len() == 2 => Some(SymbolicValue::atom(Atom::DoubleTildeT(v[0], v[1]))),
        Atom::MultiTildeT(v) if v.len() == 1 => Some(SymbolicValue::atom(Atom::TildeT(v[0]))),
        Atom::Series(s) => series_rewrite(s),
        _ => None,
    }
}

/// Applies the rewrite set until no atom changes. Idempotent.
pub fn normalize(v: &SymbolicValue) -> SymbolicValue {
    let mut cur = v.clone();
    loop {
        if !cur.atoms().iter().any(|a| rewrite_atom(a).is_some()) {
            return cur;
        }
        cur = cur.substitute(&rewrite_atom);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rewrite_examples() {
        let t2 = normalize(&SymbolicValue::atom(Atom::TildeT(2)));
        assert_eq!(t2, pi_power(2, Rational::from((1, 2))));
        let tb2 = normalize(&SymbolicValue::atom(Atom::BarT(2)));
        assert_eq!(tb2, scaled(Atom::Catalan, Rational::from(4)));
        let z3 = SymbolicValue::atom(Atom::Zeta(3));
        assert_eq!(normalize(&z3), z3);
        assert_eq!(normalize(&SymbolicValue::atom(Atom::BarT(1))), pi_power(1, Rational::from((1, 2))));
        assert_eq!(normalize(&SymbolicValue::atom(Atom::BarT(3))), pi_power(3, Rational::from((1, 4))));
        assert_eq!(
            normalize(&SymbolicValue::atom(Atom::ZetaBar(3))),
            scaled(Atom::Zeta(3), Rational::from((-3, 4)))
        );
        assert_eq!(normalize(&SymbolicValue::atom(Atom::ZetaBar(2))), pi_power(2, Rational::from((-1, 12))));
    }
}
