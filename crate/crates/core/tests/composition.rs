use tsum_core::numerics::NumericContext;
use tsum_core::series::{make_series_spec, tsum_as_tvalues, Evaluator, Family, SumRef};

/// Every p-list with m <= 2 factors and p + q <= 6.
fn instances() -> Vec<(Vec<u32>, u32)> {
    let mut out = Vec::new();
    for q in 2..=5u32 {
        for p in 1..=(6 - q) {
            out.push((vec![p], q));
            for p2 in p..=(6 - q - p) {
                if p2 >= 1 {
                    out.push((vec![p, p2], q));
                }
            }
        }
    }
    out.retain(|(p, q)| p.iter().sum::<u32>() + q <= 6);
    out
}

#[test]
fn composition_matches_direct_summation() {
    let ev = Evaluator::new(NumericContext::new(40, 1_000_000, 12).unwrap());
    let cases = instances();
    assert!(cases.len() >= 12, "only {} instances", cases.len());
    for (p, q) in cases {
        let spec = make_series_spec(Family::T, &p, q, None).unwrap();
        let direct = ev.sum(&SumRef::Series(spec.clone())).unwrap().value;
        let via = ev.value(&tsum_as_tvalues(&p, q).unwrap()).unwrap();
        let d = direct.abs_diff(&via).to_f64();
        assert!(d < 1e-25, "{spec}: |direct - composition| = {d:e}");
    }
}

#[test]
fn composition_rejects_divergent_and_deep() {
    assert!(tsum_as_tvalues(&[1], 1).is_err());
    assert!(tsum_as_tvalues(&[1, 1, 1, 1], 2).is_err());
}
