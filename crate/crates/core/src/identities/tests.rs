use super::*;

fn ctx() -> NumericContext {
    NumericContext::new(30, 1_000_000, 12).unwrap()
}

fn inst(id: &str, p: &[(&str, i64)]) -> Identity {
    match build_identity(id, &Params::from_ints(p)).unwrap() {
        Instance::Ready(i) => i,
        Instance::Skipped { reason, .. } => panic!("{id} skipped: {reason}"),
    }
}

#[test]
fn registry_is_large_and_unique() {
    let reg = registry_list();
    assert!(reg.len() >= 24);
    let mut ids: Vec<_> = reg.iter().map(|d| d.id).collect();
    ids.sort();
    ids.dedup();
    assert_eq!(ids.len(), reg.len());
    assert!(lookup("nonexistent").is_err());
}

#[test]
fn parity_reasons() {
    let (ok, why) = applicable("linear-T-odd", &Params::from_ints(&[("p", 2), ("q", 2)])).unwrap();
    assert!(!ok);
    assert_eq!(why, "p+q even: prefactor 1−(−1)^{p+q}=0");
    assert!(applicable("linear-T-odd", &Params::from_ints(&[("p", 2), ("q", 3)])).unwrap().0);
    let (ok, why) = applicable("cubic-T", &Params::from_ints(&[("q", 3)])).unwrap();
    assert!(!ok && why.starts_with("q odd"));
}

#[test]
fn even_q_linear_instance() {
    let id = inst("linear-T-even-q", &[("q", 2)]);
    assert_eq!(id.lhs_text(), "2*T[1;2]");
    let rep = verify(&id, &ctx(), 1e-20).unwrap();
    assert_eq!(rep.status, Status::Confirmed, "{:?}", rep.residual);
}

#[test]
fn out_of_domain_is_skipped() {
    let r = build_identity("linear-T-odd", &Params::from_ints(&[("p", 2), ("q", 2)])).unwrap();
    assert!(matches!(r, Instance::Skipped { .. }));
}

#[test]
fn conventions_do_not_leak() {
    let a = inst("kt-double-zeta", &[("p", 1), ("q", 2)]);
    let b = inst("kt-duality-general", &[("p", 1), ("q", 2), ("m", 1)]);
    assert!(a.trace.iter().any(|t| t == "zeta(1) -> 0"));
    assert!(!a.trace.iter().any(|t| t.contains("log2")));
    assert!(b.trace.iter().any(|t| t == "zeta(1) -> -2*log2"));
    assert!(!b.trace.iter().any(|t| t.contains("zeta(0")));
}

#[test]
fn catalog_round_trip() {
    let recs = catalog_records();
    let text = catalog_to_jsonl(&recs);
    let back = catalog_from_jsonl(&text).unwrap();
    assert_eq!(back, recs);
    assert_eq!(catalog_to_jsonl(&back), text);
}

#[test]
fn rederived_linear_forms_agree_exactly() {
    assert_eq!(concordance(&inst("linear-T-even-q", &[("q", 4)])).unwrap(), Some(true));
    assert_eq!(concordance(&inst("linear-T-odd", &[("p", 2), ("q", 3)])).unwrap(), Some(true));
}
