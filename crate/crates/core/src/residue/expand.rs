use rug::Rational;

use super::coeff::{CoeffPoly, GenKey, SeqSym};
use super::kernel::{PoleFamily, PsiArg, Trig};
use super::laurent::LaurentSeries;
use super::ResidueError;
use crate::algebra::{Atom, SymbolicValue};
use crate::numerics::binomial_signed;
use crate::series::{harmonic_prefix, HarmonicKind, Offset, SeqFactor};

/// Harmonic index: n + o symbolically, or a concrete m.
#[derive(Clone, Debug)]
enum Index {
    Sym(i64),
    Num(u64),
}

impl Index {
    fn minus_one(&self) -> Index {
        match self {
            Index::Sym(o) => Index::Sym(o - 1),
            Index::Num(m) => Index::Num(m - 1),
        }
    }

    fn harmonic(&self, kind: HarmonicKind, order: u32) -> CoeffPoly {
        match self {
            Index::Sym(o) => CoeffPoly::term(GenKey::seq(SeqSym { kind, offset: *o, order }), SymbolicValue::one()),
            Index::Num(m) => CoeffPoly::rational(harmonic_prefix(SeqFactor::new(kind, Offset::AtN, order), *m)),
        }
    }
}

/// Position of w relative to the lattice N0 of Ψ(1/2 - w).
#[derive(Clone, Debug)]
enum Lattice {
    /// w = m ≥ 0 (pole)
    NonNeg(Index),
    /// w = m - 1/2, m ≥ 0
    HalfPos(Index),
    /// w = 1/2 - m, m ≥ 1
    HalfNeg(Index),
    /// w = -m, m ≥ 1
    Neg(Index),
}

fn to_i64(r: &Rational) -> i64 {
    r.numer().to_i64().expect("offset fits in i64")
}

fn classify(w: &PoleFamily) -> Result<Lattice, ResidueError> {
    let half = Rational::from((1, 2));
    let unsupported = || ResidueError::Unsupported(format!("psi expansion at {w}: not uniform in n"));
    match w {
        PoleFamily::Generic { sigma, tau } => {
            let is_int = tau.denom() == &1u32;
            let is_half = Rational::from(tau + &half).denom() == &1u32;
            match (*sigma > 0, is_int, is_half) {
                (true, true, _) if *tau >= -1 => Ok(Lattice::NonNeg(Index::Sym(to_i64(tau)))),
                (true, _, true) if *tau >= Rational::from((-3, 2)) => {
                    Ok(Lattice::HalfPos(Index::Sym(to_i64(&Rational::from(tau + &half)))))
                }
                (false, true, _) if *tau <= 0 => Ok(Lattice::Neg(Index::Sym(-to_i64(tau)))),
                (false, _, true) if *tau <= half => {
                    Ok(Lattice::HalfNeg(Index::Sym(to_i64(&Rational::from(&half - tau)))))
                }
                _ => Err(unsupported()),
            }
        }
        PoleFamily::Fixed(x) => {
            let num = |r: Rational| Index::Num(r.numer().to_u64().expect("small index"));
            if x.denom() == &1u32 {
                if *x >= 0 {
                    Ok(Lattice::NonNeg(num(x.clone())))
                } else {
                    Ok(Lattice::Neg(num(Rational::from(-x))))
                }
            } else if Rational::from(x + &half).denom() == &1u32 {
                if *x >= -half.clone() {
                    Ok(Lattice::HalfPos(num(Rational::from(x + &half))))
                } else {
                    Ok(Lattice::HalfNeg(num(Rational::from(&half - x))))
                }
            } else {
                Err(ResidueError::Unsupported(format!("psi expansion at off-lattice point {x}")))
            }
        }
    }
}

fn sign_pow(r: u32) -> Rational {
    if r.is_multiple_of(2) {
        Rational::from(1)
    } else {
        Rational::from(-1)
    }
}

fn atom(a: Atom) -> CoeffPoly {
    CoeffPoly::constant(SymbolicValue::atom(a))
}

/// Σ_{k≥0, k≠w} (k - w)^{-r}, r ≥ 2.
fn lattice_sum(r: u32, l: &Lattice) -> CoeffPoly {
    use HarmonicKind::{Integer, Odd};
    let one = SymbolicValue::one();
    match l {
        Lattice::NonNeg(m) => atom(Atom::Zeta(r)).add(&m.harmonic(Integer, r).scale(&one.scale(&sign_pow(r)))),
        Lattice::HalfPos(m) => atom(Atom::TildeT(r)).add(&m.harmonic(Odd, r).scale(&one.scale(&sign_pow(r)))),
        Lattice::HalfNeg(m) => atom(Atom::TildeT(r)).add(&m.minus_one().harmonic(Odd, r).scale(&-&one)),
        Lattice::Neg(m) => atom(Atom::Zeta(r)).add(&m.minus_one().harmonic(Integer, r).scale(&-&one)),
    }
}

/// Regular part of Ψ(1/2 - w) at the lattice point.
fn psi_value(l: &Lattice) -> CoeffPoly {
    use HarmonicKind::{Integer, Odd};
    let two_log2 = CoeffPoly::constant(SymbolicValue::atom(Atom::Log2).scale(&Rational::from(2)));
    match l {
        Lattice::NonNeg(m) => m.harmonic(Integer, 1).add(&two_log2),
        Lattice::HalfPos(m) => m.harmonic(Odd, 1),
        Lattice::HalfNeg(m) => m.minus_one().harmonic(Odd, 1),
        Lattice::Neg(m) => m.minus_one().harmonic(Integer, 1).add(&two_log2),
    }
}

/// Ψ^{(d)}(arg)/d! around `center`, carried up to order `trunc`.
pub fn expand_psi(
    arg: PsiArg,
    deriv_order: u32,
    center: &PoleFamily,
    trunc: i32,
) -> Result<LaurentSeries, ResidueError> {
    let p = deriv_order + 1;
    let w = center.shifted(&arg.center_shift());
    let l = classify(&w)?;
    let pole = matches!(l, Lattice::NonNeg(_));
    let min = if pole { -(p as i32) } else { 0 };
    let mut coeffs = Vec::new();
    for ord in min..=trunc.max(min - 1) {
        let c = if ord < 0 {
            if ord == min {
                CoeffPoly::rational(Rational::from(1))
            } else {
                CoeffPoly::zero()
            }
        } else {
            let j = ord as u32;
            if p == 1 {
                if j == 0 {
                    psi_value(&l)
                } else {
                    lattice_sum(j + 1, &l).scale(&SymbolicValue::int(-1))
                }
            } else {
                let b = Rational::from(binomial_signed(i64::from(p + j - 1), j));
                lattice_sum(p + j, &l).scale(&SymbolicValue::rational(b * sign_pow(p)))
            }
        };
        coeffs.push(c);
    }
    Ok(LaurentSeries::new(center.clone(), min, coeffs))
}

/// (-1)^N for N = σ n + τ (generic) or concrete.
fn parity_sign(n: &PoleFamily) -> Result<CoeffPoly, ResidueError> {
    let c = n.constant();
    if c.denom() != &1u32 {
        return Err(ResidueError::Unsupported(format!("parity of non-integer {n}")));
    }
    let odd = c.numer().is_odd();
    let s = if odd { Rational::from(-1) } else { Rational::from(1) };
    Ok(match n {
        PoleFamily::Generic { .. } => CoeffPoly::term(GenKey::sign(), SymbolicValue::rational(s)),
        PoleFamily::Fixed(_) => CoeffPoly::rational(s),
    })
}

/// π tan(πs) or π/cos(πs) around `center`, carried up to order `trunc`.
pub fn expand_trig(kind: Trig, center: &PoleFamily, trunc: i32) -> Result<LaurentSeries, ResidueError> {
    let half = Rational::from((1, 2));
    let at_int = center.constant().denom() == &1u32;
    let at_half = Rational::from(center.constant() + &half).denom() == &1u32;
    if !at_int && !at_half {
        return Err(ResidueError::Unsupported(format!("trig expansion at {center}")));
    }
    let (min, sign) = match (kind, at_int) {
        (Trig::Tan, true) => (1, CoeffPoly::rational(Rational::from(1))),
        (Trig::Tan, false) => (-1, CoeffPoly::rational(Rational::from(1))),
        (Trig::Sec, true) => (0, parity_sign(center)?),
        (Trig::Sec, false) => (-1, parity_sign(&center.shifted(&half))?),
    };
    let mut coeffs = Vec::new();
    for ord in min..=trunc.max(min - 1) {
        let two = |a: Atom| SymbolicValue::atom(a).scale(&Rational::from(2));
        let c = match (kind, at_int) {
            (Trig::Tan, true) if ord % 2 != 0 => two(Atom::TildeT((ord + 1) as u32)),
            (Trig::Tan, false) if ord == -1 => SymbolicValue::int(-1),
            (Trig::Tan, false) if ord % 2 != 0 => two(Atom::Zeta((ord + 1) as u32)),
            (Trig::Sec, true) if ord % 2 == 0 => two(Atom::BarT((ord + 1) as u32)),
            (Trig::Sec, false) if ord == -1 => SymbolicValue::one(),
            (Trig::Sec, false) if ord % 2 != 0 => -&two(Atom::ZetaBar((ord + 1) as u32)),
            _ => SymbolicValue::zero(),
        };
        coeffs.push(sign.scale(&c));
    }
    Ok(LaurentSeries::new(center.clone(), min, coeffs))
}

/// 1/(s + c)^q around `center`, carried up to order `trunc`.
pub fn expand_base(c: &Rational, q: u32, center: &PoleFamily, trunc: i32) -> Result<LaurentSeries, ResidueError> {
    let d = center.shifted(c);
    let qi = i64::from(q);
    match &d {
        PoleFamily::Fixed(x) if *x == 0 => {
            let min = -(q as i32);
            let mut coeffs = vec![CoeffPoly::zero(); (trunc.max(min - 1) - min + 1) as usize];
            if !coeffs.is_empty() {
                coeffs[0] = CoeffPoly::rational(Rational::from(1));
            }
            Ok(LaurentSeries::new(center.clone(), min, coeffs))
        }
        PoleFamily::Fixed(x) => {
            let mut coeffs = Vec::new();
            for j in 0..=trunc.max(-1) {
                let b = Rational::from(binomial_signed(-qi, j as u32));
                let pw = pow_rat(&x.clone().recip(), q + j as u32);
                coeffs.push(CoeffPoly::rational(b * pw));
            }
            Ok(LaurentSeries::new(center.clone(), 0, coeffs))
        }
        PoleFamily::Generic { sigma, tau } => {
            // D = σ(n + a)
            let a = Rational::from(tau * i32::from(*sigma));
            if a <= -1 {
                return Err(ResidueError::Unsupported(format!("base denominator {d} vanishes for small n")));
            }
            let mut coeffs = Vec::new();
            for j in 0..=trunc.max(-1) {
                let k = q + j as u32;
                let mut b = Rational::from(binomial_signed(-qi, j as u32));
                if *sigma < 0 && k % 2 == 1 {
                    b = -b;
                }
                coeffs.push(CoeffPoly::term(GenKey::inv(a.clone(), k), SymbolicValue::rational(b)));
            }
            Ok(LaurentSeries::new(center.clone(), 0, coeffs))
        }
    }
}

fn pow_rat(x: &Rational, k: u32) -> Rational {
    let mut acc = Rational::from(1);
    for _ in 0..k {
        acc *= x;
    }
    acc
}
