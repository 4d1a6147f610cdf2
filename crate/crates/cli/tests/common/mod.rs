#![allow(dead_code)]

use serde_json::Value;
use tsum_core::identities::Params;
use tsum_core::Rational;

/// Instances whose closed form, as written, is known to be wrong; they must keep
/// mismatching with a stable residual.
pub fn known_mismatch(id: &str, p: &Params) -> bool {
    let i = |n: &str| p.get_i(n).unwrap_or(0);
    match id {
        "ex-Tbar22" => true,
        "alt-T-linear-1" => i("q") >= 3 && i("q") % 2 == 1,
        "kt-double-zeta" => i("p") % 2 == 1,
        "kt-duality-cor" => i("p") % 2 == 1,
        "kt-duality-hurwitz" => p.get("a") != Some(&Rational::from((-1, 2))) && (i("m") == 1 || i("p") == 1),
        _ => false,
    }
}

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Run {
    pub fn records(&self) -> Vec<Value> {
        self.stdout.lines().map(|l| serde_json::from_str(l).expect("json line")).collect()
    }

    pub fn items(&self) -> Vec<Value> {
        self.records().into_iter().filter(|r| r["record"] != "command" && r["record"] != "summary").collect()
    }
}

pub fn tsum(args: &[&str]) -> Run {
    let argv: Vec<String> = std::iter::once("tsum").chain(args.iter().copied()).map(String::from).collect();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = tsum_cli::run_with(&argv, &mut out, &mut err);
    Run { code, stdout: String::from_utf8(out).unwrap(), stderr: String::from_utf8(err).unwrap() }
}
