use std::collections::BTreeSet;

use tsum_core::identities::{build_identity, concordance, lookup, sweep, Instance, Params};
use tsum_core::numerics::NumericContext;
use tsum_core::residue::derive_relation;
use tsum_core::series::Evaluator;
use tsum_core::syntax::parse_kernel;

/// Entries whose anchor kernels are zero-checked.
const KERNEL_ENTRIES: &[&str] = &[
    "linear-T-even-q",
    "linear-T-odd",
    "quad-T-even",
    "quad-T-12",
    "quad-T-1p",
    "quad-T-p1p2",
    "cubic-T",
    "kt-duality-general",
    "S-T-duality",
];

#[test]
fn residues_sum_to_zero() {
    let ev = Evaluator::new(NumericContext::new(40, 1_000_000, 12).unwrap());
    for id in KERNEL_ENTRIES {
        let d = lookup(id).unwrap();
        let kernels: BTreeSet<String> = sweep(d, 8).iter().filter_map(|p| d.anchor_for(p)).collect();
        assert!(!kernels.is_empty(), "{id}: no kernels");
        let mut checked = 0;
        for text in kernels {
            let k = parse_kernel(&text).unwrap();
            if k.weight() > 8 {
                continue;
            }
            checked += 1;
            let rel = derive_relation(&k).unwrap_or_else(|e| panic!("{text}: {e}"));
            let z = ev.value(&rel.to_symbolic()).unwrap();
            let r = z.value().to_f64().abs();
            assert!(r < 1e-25 && z.error_bound() < 1e-25, "{text}: |sum of residues| = {r:e}");
        }
        assert!(checked > 0, "{id}: nothing at weight <= 8");
    }
}

fn ready(id: &str, p: &[(&str, i64)]) -> tsum_core::identities::Identity {
    match build_identity(id, &Params::from_ints(p)).unwrap() {
        Instance::Ready(i) => i,
        Instance::Skipped { reason, .. } => panic!("{id}: {reason}"),
    }
}

#[test]
fn exact_concordance_with_registry() {
    assert_eq!(concordance(&ready("linear-T-even-q", &[("q", 4)])).unwrap(), Some(true));
    assert_eq!(concordance(&ready("linear-T-odd", &[("p", 2), ("q", 3)])).unwrap(), Some(true));
}

#[test]
fn derived_linear_t_relation() {
    let rel = derive_relation(&parse_kernel("tan*psi(2)/s^3").unwrap()).unwrap();
    assert_eq!(rel.to_string(), "-2*T[2;3] + (3*pi^2*zeta(3) - 31*zeta(5)) = 0");
}
