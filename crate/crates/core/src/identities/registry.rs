use std::sync::OnceLock;

use super::formulas as fm;
use super::{examples, Convention, Descriptor, EntryKind, Gate, IdentityError, ParamSpec, Params};

fn ps(list: &[(&'static str, i64)]) -> Vec<ParamSpec> {
    list.iter().map(|&(name, min)| ParamSpec { name, min, optional: false, choices: None }).collect()
}

fn even(v: i64) -> bool {
    v.rem_euclid(2) == 0
}

/// Parity gate: `want_even` says which parity of `v` keeps the prefactor at 2.
fn parity(v: i64, want_even: bool, label: &str, prefactor: &str) -> Result<(), String> {
    if even(v) == want_even {
        Ok(())
    } else {
        Err(format!("{label} {}: prefactor {prefactor}=0", if want_even { "odd" } else { "even" }))
    }
}

fn always(_: &Params) -> Result<(), String> {
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn general(
    id: &'static str,
    summary: &'static str,
    params: Vec<ParamSpec>,
    domain: &'static str,
    convention: Convention,
    anchor: &'static str,
    gate: Gate,
    build: super::Builder,
) -> Descriptor {
    Descriptor {
        id,
        kind: EntryKind::General,
        summary,
        params,
        domain,
        convention,
        zeta0: false,
        anchor,
        bound: Vec::new(),
        gate,
        build,
    }
}

const HURWITZ_SHIFTS: &[(i64, i64)] = &[(-1, 2), (0, 1), (1, 3)];

fn build_registry() -> Vec<Descriptor> {
    use Convention::{Zeta1IsMinus2Log2, Zeta1IsZero};
    let mut v = vec![
        general(
            "linear-T-even-q",
            "T_{1,q} for even q",
            ps(&[("q", 2)]),
            "q >= 2, q even",
            Convention::None,
            "tan*psi(1)/s^{q}",
            |p| parity(p.i("q"), true, "q", "1+(−1)^q"),
            fm::linear_t_even_q,
        ),
        general(
            "linear-T-odd",
            "T_{p,q} for odd weight",
            ps(&[("p", 2), ("q", 2)]),
            "p+q odd, q >= 2, p >= 2",
            Convention::None,
            "tan*psi({p})/s^{q}",
            |p| parity(p.i("p") + p.i("q"), false, "p+q", "1−(−1)^{p+q}"),
            fm::linear_t_odd,
        ),
        general(
            "quad-T-even",
            "T_{1^2,q} for even q",
            ps(&[("q", 2)]),
            "q >= 2, q even",
            Convention::None,
            "tan*psi(1)^2/s^{q}",
            |p| parity(p.i("q"), true, "q", "1+(−1)^q"),
            fm::quad_t_even,
        ),
        general(
            "quad-T-12",
            "T_{12,q} for odd q",
            ps(&[("q", 2)]),
            "q >= 2, q odd",
            Convention::None,
            "tan*psi(1)*psi(2)/s^{q}",
            |p| parity(p.i("q"), false, "q", "1−(−1)^q"),
            fm::quad_t_12,
        ),
        general(
            "quad-T-1p",
            "T_{1p,q} for odd weight",
            ps(&[("p", 2), ("q", 2)]),
            "p, q >= 2, p+q odd",
            Convention::None,
            "tan*psi(1)*psi({p})/s^{q}",
            |p| parity(p.i("p") + p.i("q"), false, "p+q", "1−(−1)^{p+q}"),
            fm::quad_t_1p,
        ),
        general(
            "quad-T-p1p2",
            "T_{p1p2,q} for even weight",
            ps(&[("p1", 2), ("p2", 2), ("q", 2)]),
            "p1, p2, q >= 2, p1+p2+q even",
            Convention::None,
            "tan*psi({p1})*psi({p2})/s^{q}",
            |p| parity(p.i("p1") + p.i("p2") + p.i("q"), true, "p1+p2+q", "1+(−1)^{p1+p2+q}"),
            fm::quad_t_p1p2,
        ),
        general(
            "cubic-T",
            "T_{1^3,q} for even q",
            ps(&[("q", 2)]),
            "q >= 2, q even",
            Convention::None,
            "tan*psi(1)^3/s^{q}",
            |p| parity(p.i("q"), true, "q", "1+(−1)^q"),
            fm::cubic_t,
        ),
        general(
            "alt-T-linear-1",
            "alternating Tbar_{1,q} for odd q",
            ps(&[("q", 1)]),
            "q >= 1, q odd",
            Convention::None,
            "sec*psi(1)/s^{q}",
            |p| parity(p.i("q"), false, "q", "1+(−1)^{q+1}"),
            fm::alt_t_linear_1,
        ),
        general(
            "alt-T-linear",
            "alternating Tbar_{p,q} for even weight",
            ps(&[("p", 2), ("q", 1)]),
            "p >= 2, q >= 1, p+q even",
            Convention::None,
            "sec*psi({p})/s^{q}",
            |p| parity(p.i("p") + p.i("q"), true, "p+q", "1+(−1)^{p+q}"),
            fm::alt_t_linear,
        ),
        general(
            "alt-T-quad",
            "alternating Tbar_{1^2,q} for odd q",
            ps(&[("q", 2)]),
            "q >= 2, q odd",
            Convention::None,
            "sec*psi(1)^2/s^{q}",
            |p| parity(p.i("q"), false, "q", "1+(−1)^{q+1}"),
            fm::alt_t_quad,
        ),
        general(
            "S-1p",
            "S_{1^p,q} for even q via the C_n(j) expansion",
            ps(&[("p", 1), ("q", 2)]),
            "p >= 1, q >= 2, q even",
            Zeta1IsZero,
            "tan*psi(1)^{p}/(s+1/2)^{q}",
            |p| parity(p.i("q"), true, "q", "1+(−1)^q"),
            fm::s_1p,
        ),
        general(
            "S-1sq",
            "S_{1^2,q} for even q",
            ps(&[("q", 2)]),
            "q >= 2, q even",
            Convention::None,
            "tan*psi(1)^2/(s+1/2)^{q}",
            |p| parity(p.i("q"), true, "q", "1+(−1)^q"),
            fm::s_1sq,
        ),
        general(
            "S-1cube",
            "S_{1^3,q} for even q",
            ps(&[("q", 2)]),
            "q >= 2, q even",
            Convention::None,
            "tan*psi(1)^3/(s+1/2)^{q}",
            |p| parity(p.i("q"), true, "q", "1+(−1)^q"),
            fm::s_1cube,
        ),
        general(
            "S-1p-mixed",
            "S_{1p,q} for odd weight",
            ps(&[("p", 2), ("q", 2)]),
            "p, q >= 2, p+q odd",
            Convention::None,
            "tan*psi(1)*psi({p})/(s+1/2)^{q}",
            |p| parity(p.i("p") + p.i("q"), false, "p+q", "1−(−1)^{p+q}"),
            fm::s_1p_mixed,
        ),
        general(
            "S-p1p2",
            "S_{p1p2,q} for even weight",
            ps(&[("p1", 2), ("p2", 2), ("q", 2)]),
            "p1, p2, q >= 2, p1+p2+q even",
            Convention::None,
            "tan*psi({p1})*psi({p2})/(s+1/2)^{q}",
            |p| parity(p.i("p1") + p.i("p2") + p.i("q"), true, "p1+p2+q", "1+(−1)^{p1+p2+q}"),
            fm::s_p1p2,
        ),
        Descriptor {
            zeta0: true,
            ..general(
                "kt-double-zeta",
                "double Kaneko-Tsumura value T(q,p) of odd weight in zeta values",
                ps(&[("p", 1), ("q", 2)]),
                "p >= 1, q >= 2, p+q odd",
                Zeta1IsZero,
                "tan*psi({p})/(s+1/2)^{q}",
                |p| {
                    if even(p.i("p") + p.i("q")) {
                        Err("p+q even: stated for odd weight only".into())
                    } else {
                        Ok(())
                    }
                },
                fm::kt_double_zeta,
            )
        },
        general(
            "kt-double-bridge",
            "T(k1,k2) as a scaled S-sum",
            ps(&[("k1", 2), ("k2", 1)]),
            "k1 >= 2, k2 >= 1",
            Convention::None,
            "",
            always,
            fm::kt_double_bridge,
        ),
        general(
            "kt-triple-bridge",
            "T(k1,k2,k3) through S-sums",
            ps(&[("k1", 2), ("k2", 2), ("k3", 1)]),
            "k1, k2 >= 2, k3 >= 1",
            Convention::None,
            "",
            always,
            fm::kt_triple_bridge,
        ),
        general(
            "mixed-H-kt",
            "sum of H_{n-1}^{(k1)}/(n-1/2)^{k2} through T(k1,k2)",
            ps(&[("k1", 2), ("k2", 2)]),
            "k1, k2 >= 2",
            Convention::None,
            "",
            always,
            fm::mixed_h_kt,
        ),
        general(
            "mixed-H1",
            "sum of H_{n-1}/(n-1/2)^p",
            ps(&[("p", 2)]),
            "p >= 2",
            Convention::None,
            "",
            always,
            fm::mixed_h1,
        ),
        general(
            "kt-duality-general",
            "binomial duality of H_{n-1}-sums over (n-1/2)^k",
            ps(&[("p", 1), ("q", 2), ("m", 1)]),
            "p, m >= 1, q >= 2",
            Zeta1IsMinus2Log2,
            "psi({m})*psi({p})/(s+1/2)^{q}",
            always,
            fm::kt_duality_general,
        ),
        general(
            "kt-duality-hurwitz",
            "binomial duality of H_{n-1}-sums over (n+a)^k",
            vec![
                ParamSpec { name: "p", min: 1, optional: false, choices: None },
                ParamSpec { name: "q", min: 2, optional: false, choices: None },
                ParamSpec { name: "m", min: 1, optional: false, choices: None },
                ParamSpec { name: "a", min: 0, optional: false, choices: Some(HURWITZ_SHIFTS) },
            ],
            "p, m >= 1, q >= 2, a > -1",
            Zeta1IsMinus2Log2,
            "",
            always,
            fm::kt_duality_hurwitz,
        ),
        general(
            "kt-duality",
            "binomial duality of double Kaneko-Tsumura values",
            ps(&[("p", 2), ("q", 2), ("m", 2)]),
            "p, q, m >= 2",
            Convention::None,
            "psi({m})*psi({p})/(s+1/2)^{q}",
            always,
            fm::kt_duality,
        ),
        general(
            "kt-duality-cor",
            "diagonal case m = p of the Kaneko-Tsumura duality",
            ps(&[("p", 2), ("q", 2)]),
            "p, q >= 2",
            Convention::None,
            "psi({p})^2/(s+1/2)^{q}",
            always,
            fm::kt_duality_cor,
        ),
        general(
            "S-T-duality",
            "binomial duality between S-sums and T-sums",
            ps(&[("p", 1), ("q", 2), ("m", 1)]),
            "p, m >= 1, q >= 2",
            Zeta1IsMinus2Log2,
            "psi({m})*psi({p},-s)/(s+1)^{q}",
            always,
            fm::s_t_duality,
        ),
        general(
            "T-composition",
            "T-sum of depth <= 3 as multiple t-values",
            vec![
                ParamSpec { name: "p1", min: 1, optional: false, choices: None },
                ParamSpec { name: "p2", min: 1, optional: true, choices: None },
                ParamSpec { name: "p3", min: 1, optional: true, choices: None },
                ParamSpec { name: "q", min: 2, optional: false, choices: None },
            ],
            "p_i >= 1, q >= 2",
            Convention::None,
            "",
            |p| {
                if p.get("p3").is_some() && p.get("p2").is_none() {
                    Err("p3 given without p2".into())
                } else {
                    Ok(())
                }
            },
            fm::t_composition,
        ),
    ];
    v.extend(examples::entries());
    v
}

pub fn registry_list() -> &'static [Descriptor] {
    static REG: OnceLock<Vec<Descriptor>> = OnceLock::new();
    REG.get_or_init(build_registry)
}

pub fn lookup(id: &str) -> Result<&'static Descriptor, IdentityError> {
    registry_list().iter().find(|d| d.id == id).ok_or_else(|| IdentityError::UnknownId(id.to_string()))
}
