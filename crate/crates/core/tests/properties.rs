use proptest::prelude::*;
use rug::{Float, Rational};
use tsum_core::algebra::{normalize, Atom, Monomial, SymbolicValue};
use tsum_core::numerics::NumericContext;
use tsum_core::series::{harmonic_prefix, Evaluator, HarmonicKind, Offset, SeqFactor};
use tsum_core::syntax::parse_sumspec;

fn ctx(d: u32) -> NumericContext {
    NumericContext::new(d, 1_000_000, 12).unwrap()
}

fn atom_strategy() -> impl Strategy<Value = Atom> {
    prop_oneof![
        Just(Atom::Pi),
        Just(Atom::Log2),
        Just(Atom::Catalan),
        (2u32..8).prop_map(Atom::Zeta),
        (1u32..7).prop_map(Atom::ZetaBar),
        (2u32..8).prop_map(Atom::TildeT),
        (1u32..7).prop_map(Atom::BarT),
        (2u32..5, 1u32..3).prop_map(|(a, b)| Atom::DoubleZeta(a, b)),
    ]
}

fn rational_strategy() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| Rational::from((n, d)))
}

fn value_strategy() -> impl Strategy<Value = SymbolicValue> {
    let mono = (prop::collection::vec((atom_strategy(), 1u32..3), 0..3), rational_strategy());
    prop::collection::vec(mono, 0..4).prop_map(|terms| {
        let mut v = SymbolicValue::zero();
        for (factors, c) in terms {
            let mut m = Monomial::one();
            for (a, k) in factors {
                m = m.mul(&Monomial::power(a, k));
            }
            v.add_term(m, c);
        }
        v
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ring_laws(a in value_strategy(), b in value_strategy(), c in value_strategy()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &SymbolicValue::one(), a.clone());
        prop_assert_eq!(&a + &SymbolicValue::zero(), a.clone());
        prop_assert_eq!(-&(-&a), a.clone());
    }

    #[test]
    fn normalize_is_idempotent(v in value_strategy()) {
        let n = normalize(&v);
        prop_assert_eq!(normalize(&n), n);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn normalize_preserves_value(v in value_strategy()) {
        let ev = Evaluator::new(ctx(30));
        let a = ev.value(&v).unwrap();
        let b = ev.value(&normalize(&v)).unwrap();
        let scale = a.value().to_f64().abs().max(1.0);
        prop_assert!(a.abs_diff(&b).to_f64() <= 1e-25 * scale, "{} vs {}", a, b);
    }

    #[test]
    fn harmonic_step(n in 1u64..2000, order in 1u32..4, odd in any::<bool>(), lagged in any::<bool>()) {
        let kind = if odd { HarmonicKind::Odd } else { HarmonicKind::Integer };
        let off = if lagged { Offset::AtNMinus1 } else { Offset::AtN };
        let f = SeqFactor::new(kind, off, order);
        let diff = harmonic_prefix(f, n) - harmonic_prefix(f, n - 1);
        let top = n as i64 - off.lag() as i64;
        let expect = if top >= 1 {
            let x = Rational::from(top) + kind.shift();
            x.pow(order).recip()
        } else {
            Rational::new()
        };
        prop_assert_eq!(diff, expect);
    }
}

fn rpow(x: &Rational, k: u32) -> Rational {
    let mut out = Rational::from(1);
    for _ in 0..k {
        out *= x;
    }
    out
}

trait RationalPow {
    fn pow(self, k: u32) -> Rational;
}

impl RationalPow for Rational {
    fn pow(self, k: u32) -> Rational {
        rpow(&self, k)
    }
}

#[test]
fn harmonic_recurrence_to_ten_thousand() {
    let checkpoints = [1u64, 2, 3, 17, 100, 999, 4096, 10_000];
    for kind in [HarmonicKind::Integer, HarmonicKind::Odd] {
        for order in 1..=2 {
            let f = SeqFactor::new(kind, Offset::AtN, order);
            let mut acc = Rational::new();
            for n in 1..=10_000u64 {
                acc += rpow(&(Rational::from(n) + kind.shift()), order).recip();
                if checkpoints.contains(&n) {
                    assert_eq!(harmonic_prefix(f, n), acc, "{kind:?} order {order} n {n}");
                    let lag = SeqFactor::new(kind, Offset::AtNMinus1, order);
                    assert_eq!(harmonic_prefix(lag, n + 1), acc);
                }
            }
        }
    }
}

fn val(ev: &Evaluator, a: Atom) -> Float {
    ev.atom(&a).unwrap().value().clone()
}

#[test]
fn stuffle_depth_two() {
    let ev = Evaluator::new(ctx(40));
    for a in 2..=5u32 {
        for b in 2..=(8 - a) {
            let lhs = val(&ev, Atom::TildeT(a)) * val(&ev, Atom::TildeT(b));
            let rhs = val(&ev, Atom::DoubleTildeT(a, b)) + val(&ev, Atom::DoubleTildeT(b, a)) + val(&ev, Atom::TildeT(a + b));
            assert!(Float::with_val(200, lhs - rhs).abs() < 1e-30, "t~ stuffle {a},{b}");
            let lhs = val(&ev, Atom::Zeta(a)) * val(&ev, Atom::Zeta(b));
            let rhs = val(&ev, Atom::DoubleZeta(a, b)) + val(&ev, Atom::DoubleZeta(b, a)) + val(&ev, Atom::Zeta(a + b));
            assert!(Float::with_val(200, lhs - rhs).abs() < 1e-30, "zeta stuffle {a},{b}");
        }
    }
}

#[test]
fn stuffle_depth_three() {
    let ev = Evaluator::new(ctx(40));
    let t3 = |v: &[u32]| val(&ev, Atom::MultiTildeT(v.to_vec()));
    let t2 = |a, b| val(&ev, Atom::DoubleTildeT(a, b));
    for (a, b, c) in [(2, 2, 1), (2, 3, 1), (3, 2, 1), (2, 2, 2), (3, 2, 2)] {
        let lhs = val(&ev, Atom::TildeT(a)) * t2(b, c);
        let rhs = t3(&[a, b, c]) + t3(&[b, a, c]) + t3(&[b, c, a]) + t2(a + b, c) + t2(b, a + c);
        assert!(Float::with_val(200, lhs - rhs).abs() < 1e-30, "({a},{b},{c})");
    }
}

#[test]
fn zeta_two_one_is_zeta_three() {
    let ev = Evaluator::new(ctx(40));
    let d = Float::with_val(200, val(&ev, Atom::DoubleZeta(2, 1)) - val(&ev, Atom::Zeta(3)));
    assert!(d.abs() < 1e-35);
}

#[test]
fn doubling_digits_is_stable() {
    for text in ["T[1;2]", "T[1^2,2;3]", "Tbar[1;1]", "S[1^3;2]", "Sbar[1;2]", "M[2;3]", "KT[2,4]", "z[3b,1]", "t[3,2,1]", "hz[3;a=1/3]"] {
        let spec = parse_sumspec(text).unwrap();
        let lo = Evaluator::new(ctx(30)).sum(&spec).unwrap().value;
        let hi = Evaluator::new(ctx(60)).sum(&spec).unwrap().value;
        let diff = lo.abs_diff(&hi).to_f64();
        assert!(diff <= 1e-30, "{text}: {diff:e}");
        assert!(diff <= lo.error_bound() + hi.error_bound() + 1e-60, "{text}: bound not honest");
    }
}

fn group_powers(p: &[u32]) -> String {
    let mut out: Vec<String> = Vec::new();
    let mut i = 0;
    while i < p.len() {
        let j = (i..p.len()).find(|&j| p[j] != p[i]).unwrap_or(p.len());
        out.push(if j - i > 1 { format!("{}^{}", p[i], j - i) } else { p[i].to_string() });
        i = j;
    }
    out.join(",")
}

/// (input text, expected canonical rendering)
fn spec_text() -> impl Strategy<Value = (String, String)> {
    let series = (
        prop::sample::select(vec!["T", "Tbar", "S", "Sbar", "M"]),
        prop::collection::vec(1u32..5, 1..5),
        2u32..7,
        any::<bool>(),
    )
        .prop_filter("M is linear", |(h, p, _, _)| *h != "M" || p.len() == 1)
        .prop_map(|(head, mut p, q, spaced)| {
            let input_args: Vec<String> = p.iter().map(|x| x.to_string()).collect();
            let sep = if spaced { " , " } else { "," };
            let input = format!("{head}[{};{q}]", input_args.join(sep));
            p.sort();
            (input, format!("{head}[{};{q}]", group_powers(&p)))
        });
    let multiple = (
        prop::sample::select(vec!["z", "t", "KT"]),
        prop::collection::vec((1u32..5, any::<bool>()), 1..4),
    )
        .prop_map(|(head, mut args)| {
            if head == "KT" {
                args.iter_mut().for_each(|a| a.1 = false);
            }
            if !args[0].1 && args[0].0 == 1 {
                args[0].0 = 2;
            }
            let s: Vec<String> = args.iter().map(|(e, b)| format!("{e}{}", if *b { "b" } else { "" })).collect();
            let t = format!("{head}[{}]", s.join(","));
            (t.clone(), t)
        });
    let hurwitz = (2u32..6, -3i64..6, 1i64..5).prop_filter("a > -1", |(_, n, d)| n + d > 0).prop_map(|(q, n, d)| {
        let a = Rational::from((n, d));
        (format!("hz[{q};a={n}/{d}]"), format!("hz[{q};a={a}]"))
    });
    prop_oneof![4 => series, 3 => multiple, 1 => hurwitz]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn parse_render_round_trip((input, canonical) in spec_text()) {
        let spec = parse_sumspec(&input).unwrap();
        prop_assert_eq!(spec.to_string(), canonical.clone());
        let again = parse_sumspec(&canonical).unwrap();
        prop_assert_eq!(again, spec);
    }
}
