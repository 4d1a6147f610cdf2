//! Registry of closed-form evaluations and relations, with numeric
//! verification against the series engine.

mod catalog;
mod examples;
pub(crate) mod expr;
mod formulas;
mod registry;

use std::collections::BTreeMap;
use std::fmt;

use rug::{Float, Rational};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{normalize, AlgebraError, SymbolicValue};
use crate::numerics::{NumericContext, NumericValue, TailMethod};
use crate::series::{Evaluator, SeriesError, SumRef};

pub use catalog::{catalog_from_jsonl, catalog_records, catalog_to_jsonl, CatalogRecord, ParamRecord, CATALOG_VERSION};
pub use registry::{lookup, registry_list};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum IdentityError {
    #[error("unknown identity '{0}'")]
    UnknownId(String),
    #[error("{0}")]
    BadParams(String),
    #[error("instantiation of {id} left invalid atom(s): {atoms}")]
    Convention { id: String, atoms: String },
    #[error("evaluating {term} failed: {message}")]
    Evaluation { term: String, message: String },
    #[error("catalog: {0}")]
    Catalog(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Convention {
    None,
    /// ζ(1) → 0, t̃(1) → 0
    Zeta1IsZero,
    /// ζ(1) → -2 log 2, t̃(1) → 0, Hurwitz ζ(1; a+1) → 0
    Zeta1IsMinus2Log2,
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Convention::None => "none",
            Convention::Zeta1IsZero => "zeta1_is_zero",
            Convention::Zeta1IsMinus2Log2 => "zeta1_is_minus_2log2",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EntryKind {
    General,
    Example,
}

/// Named parameter values. Integers except the Hurwitz shift `a`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Params(BTreeMap<String, Rational>);

impl Params {
    pub fn new() -> Self {
        Params(BTreeMap::new())
    }

    pub fn from_ints(pairs: &[(&str, i64)]) -> Self {
        Params(pairs.iter().map(|(k, v)| (k.to_string(), Rational::from(*v))).collect())
    }

    pub fn with(mut self, name: &str, v: impl Into<Rational>) -> Self {
        self.0.insert(name.to_string(), v.into());
        self
    }

    pub fn insert(&mut self, name: &str, v: Rational) {
        self.0.insert(name.to_string(), v);
    }

    pub fn get(&self, name: &str) -> Option<&Rational> {
        self.0.get(name)
    }

    pub fn get_i(&self, name: &str) -> Option<i64> {
        self.0.get(name).and_then(|r| if r.denom() == &1 { r.numer().to_i64() } else { None })
    }

    /// Integer parameter; the domain check guarantees presence.
    pub(crate) fn i(&self, name: &str) -> i64 {
        self.get_i(name).unwrap_or_else(|| panic!("parameter {name} missing after domain check"))
    }

    pub(crate) fn r(&self, name: &str) -> Rational {
        self.0[name].clone()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Rational)> {
        self.0.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(k, v)| format!("{k}={v}")).collect();
        f.write_str(&parts.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamSpec {
    pub name: &'static str,
    pub min: i64,
    pub optional: bool,
    /// Finite value set for rational parameters, as (num, den).
    pub choices: Option<&'static [(i64, i64)]>,
}

type Gate = fn(&Params) -> Result<(), String>;
type Builder = fn(&expr::F, &Params) -> formulas::Built;

/// One registry entry: metadata, parameter schema, domain gate and builder.
pub struct Descriptor {
    pub id: &'static str,
    pub kind: EntryKind,
    pub summary: &'static str,
    pub params: Vec<ParamSpec>,
    pub domain: &'static str,
    pub convention: Convention,
    /// ζ(0) = ζ(0̄) = -1/2 inside finite sums.
    pub zeta0: bool,
    /// Contour kernel template, `{name}` placeholders for parameters.
    pub anchor: &'static str,
    /// Parameter values an example is bound to.
    pub bound: Vec<(&'static str, i64)>,
    gate: Gate,
    build: Builder,
}

impl fmt::Debug for Descriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Descriptor").field("id", &self.id).field("domain", &self.domain).finish()
    }
}

impl Descriptor {
    /// Domain predicate with a reason when it fails.
    pub fn applicable(&self, params: &Params) -> Result<(), String> {
        for (name, v) in params.iter() {
            let Some(spec) = self.params.iter().find(|s| s.name == name) else {
                return Err(format!("unknown parameter {name}"));
            };
            match spec.choices {
                Some(_) => {
                    if *v <= -1 {
                        return Err(format!("{name} must exceed -1"));
                    }
                }
                None => {
                    if v.denom() != &1 {
                        return Err(format!("{name} must be an integer"));
                    }
                    if *v < spec.min {
                        return Err(format!("{name} < {}", spec.min));
                    }
                }
            }
        }
        for spec in &self.params {
            if !spec.optional && params.get(spec.name).is_none() {
                return Err(format!("missing parameter {}", spec.name));
            }
        }
        for (name, v) in &self.bound {
            if params.get_i(name) != Some(*v) {
                return Err(format!("example bound to {name}={v}"));
            }
        }
        (self.gate)(params)
    }

    /// Parameters with the bound values of an example filled in.
    pub fn complete(&self, params: &Params) -> Params {
        let mut p = params.clone();
        for (name, v) in &self.bound {
            if p.get(name).is_none() {
                p.insert(name, Rational::from(*v));
            }
        }
        p
    }

    /// The anchor kernel text for concrete parameters.
    pub fn anchor_for(&self, params: &Params) -> Option<String> {
        if self.anchor.is_empty() {
            return None;
        }
        let mut s = self.anchor.to_string();
        for (name, v) in params.iter() {
            s = s.replace(&format!("{{{name}}}"), &v.to_string());
        }
        (!s.contains('{')).then_some(s)
    }
}

/// A fully instantiated relation Σ c_i·LHS_i = RHS.
#[derive(Clone, Debug, PartialEq)]
pub struct Identity {
    pub id: String,
    pub params: Params,
    pub lhs: Vec<(Rational, SumRef)>,
    pub rhs: SymbolicValue,
    pub domain: String,
    pub convention: Convention,
    /// Substitutions the convention performed while expanding the RHS.
    pub trace: Vec<String>,
}

impl Identity {
    pub fn weight(&self) -> u32 {
        self.lhs.first().map(|(_, s)| s.weight()).unwrap_or(0)
    }

    pub fn lhs_text(&self) -> String {
        let mut out = String::new();
        for (i, (c, s)) in self.lhs.iter().enumerate() {
            let neg = *c < 0;
            let mag = Rational::from(c.abs_ref());
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if mag != 1 {
                out.push_str(&format!("{mag}*"));
            }
            out.push_str(&s.to_string());
        }
        out
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs_text(), self.rhs)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Instance {
    Ready(Identity),
    Skipped { id: String, params: Params, reason: String },
}

pub fn applicable(id: &str, params: &Params) -> Result<(bool, String), IdentityError> {
    let d = lookup(id)?;
    let p = d.complete(params);
    Ok(match d.applicable(&p) {
        Ok(()) => (true, String::new()),
        Err(why) => (false, why),
    })
}

pub fn build_identity(id: &str, params: &Params) -> Result<Instance, IdentityError> {
    let d = lookup(id)?;
    let params = d.complete(params);
    if let Err(reason) = d.applicable(&params) {
        return Ok(Instance::Skipped { id: id.to_string(), params, reason });
    }
    let f = expr::F::new(d.convention, d.zeta0);
    let (lhs, rhs) = (d.build)(&f, &params);
    let bad: Vec<String> = rhs.0.atoms().iter().filter(|a| a.validate().is_err()).map(|a| a.to_string()).collect();
    if !bad.is_empty() {
        return Err(IdentityError::Convention { id: id.to_string(), atoms: bad.join(", ") });
    }
    Ok(Instance::Ready(Identity {
        id: id.to_string(),
        params,
        lhs,
        rhs: normalize(&rhs.0),
        domain: d.domain.to_string(),
        convention: d.convention,
        trace: f.trace(),
    }))
}

/// Every LHS term and RHS monomial must carry one weight.
pub fn weight_lint(identity: &Identity) -> Result<u32, String> {
    let w = identity.weight();
    for (_, s) in &identity.lhs {
        if s.weight() != w {
            return Err(format!("LHS term {s} has weight {}, expected {w}", s.weight()));
        }
    }
    for (m, _) in identity.rhs.terms() {
        if m.weight() != w {
            return Err(format!("RHS monomial {m} has weight {}, expected {w}", m.weight()));
        }
    }
    Ok(w)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Confirmed,
    Mismatch,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Confirmed => "CONFIRMED",
            Status::Mismatch => "MISMATCH",
            Status::Skipped => "SKIPPED",
        })
    }
}

/// How one LHS sum was obtained.
#[derive(Clone, Debug, PartialEq)]
pub struct TermProvenance {
    pub term: String,
    pub terms: u64,
    pub tail_order: u32,
    pub method: TailMethod,
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub id: String,
    pub params: Params,
    pub status: Status,
    pub lhs_value: Option<NumericValue>,
    pub rhs_value: Option<NumericValue>,
    pub residual: Option<f64>,
    pub tolerance: f64,
    pub digits: u32,
    pub reason: Option<String>,
    pub provenance: Vec<TermProvenance>,
}

impl VerificationReport {
    pub fn skipped(id: &str, params: &Params, reason: &str, ctx: &NumericContext, tol: f64) -> Self {
        VerificationReport {
            id: id.to_string(),
            params: params.clone(),
            status: Status::Skipped,
            lhs_value: None,
            rhs_value: None,
            residual: None,
            tolerance: tol,
            digits: ctx.digits(),
            reason: Some(reason.to_string()),
            provenance: Vec::new(),
        }
    }

    /// Larger of the two error bounds.
    pub fn error_bound(&self) -> Option<f64> {
        Some(self.lhs_value.as_ref()?.error_bound().max(self.rhs_value.as_ref()?.error_bound()))
    }
}

pub fn verify(identity: &Identity, ctx: &NumericContext, tol: f64) -> Result<VerificationReport, IdentityError> {
    verify_with(identity, &Evaluator::new(*ctx), tol)
}

/// Same as [`verify`], sharing an evaluator cache across calls.
pub fn verify_with(identity: &Identity, ev: &Evaluator, tol: f64) -> Result<VerificationReport, IdentityError> {
    let ctx = ev.ctx();
    let prec = ctx.precision();
    let mut lhs = NumericValue::zero(prec);
    let mut provenance = Vec::new();
    for (c, s) in &identity.lhs {
        let r = ev
            .sum(s)
            .map_err(|e: SeriesError| IdentityError::Evaluation { term: s.to_string(), message: e.to_string() })?;
        provenance.push(TermProvenance { term: s.to_string(), terms: r.terms, tail_order: r.tail_order, method: r.method });
        lhs = &lhs + &r.value.scale(c);
    }
    let rhs = ev.value(&identity.rhs).map_err(|e: AlgebraError| IdentityError::Evaluation {
        term: identity.rhs.to_string(),
        message: e.to_string(),
    })?;
    let residual = Float::with_val(prec, lhs.value() - rhs.value()).abs().to_f64();
    let confirmed = residual <= tol && lhs.error_bound() <= tol / 4.0 && rhs.error_bound() <= tol / 4.0;
    Ok(VerificationReport {
        id: identity.id.clone(),
        params: identity.params.clone(),
        status: if confirmed { Status::Confirmed } else { Status::Mismatch },
        lhs_value: Some(lhs),
        rhs_value: Some(rhs),
        residual: Some(residual),
        tolerance: tol,
        digits: ctx.digits(),
        reason: None,
        provenance,
    })
}

/// Re-verification of a suspected erratum at several precisions.
#[derive(Clone, Debug)]
pub struct Reproduction {
    pub residuals: Vec<(u32, f64)>,
    /// Every run mismatched and the residuals agree to 1e-8 relative.
    pub stable: bool,
}

pub fn reproduce(identity: &Identity, ctx: &NumericContext, digits: &[u32], tol: f64) -> Result<Reproduction, IdentityError> {
    let mut residuals = Vec::new();
    let mut all_mismatch = true;
    for &d in digits {
        let c = ctx.with_digits(d).map_err(|e| IdentityError::BadParams(e.to_string()))?;
        let rep = verify(identity, &c, tol)?;
        all_mismatch &= rep.status == Status::Mismatch;
        residuals.push((d, rep.residual.unwrap_or(f64::NAN)));
    }
    let r0 = residuals.first().map(|x| x.1).unwrap_or(0.0);
    let spread = residuals.iter().all(|(_, r)| (r - r0).abs() <= 1e-8 * r0.abs().max(tol));
    Ok(Reproduction { residuals, stable: all_mismatch && spread && r0 > tol })
}

/// In-domain and skipped instances of a general entry up to a weight.
pub fn sweep(d: &Descriptor, max_weight: u32) -> Vec<Params> {
    if d.kind == EntryKind::Example {
        return vec![d.complete(&Params::new())];
    }
    let mut out = vec![Params::new()];
    for spec in &d.params {
        let mut next = Vec::new();
        for base in &out {
            if spec.optional {
                next.push(base.clone());
            }
            match spec.choices {
                Some(ch) => {
                    for &(n, den) in ch {
                        next.push(base.clone().with(spec.name, Rational::from((n, den))));
                    }
                }
                None => {
                    for v in spec.min..=max_weight as i64 {
                        next.push(base.clone().with(spec.name, v));
                    }
                }
            }
        }
        out = next;
    }
    out.retain(|p| {
        // optional parameters are filled left to right
        let mut gap = false;
        for s in d.params.iter().filter(|s| s.optional) {
            match p.get(s.name) {
                Some(_) if gap => return false,
                None => gap = true,
                _ => {}
            }
        }
        nominal_weight(d, p).is_some_and(|w| w <= max_weight)
    });
    out
}

/// Weight of the LHS, ignoring the parity gate.
fn nominal_weight(d: &Descriptor, p: &Params) -> Option<u32> {
    for s in &d.params {
        if !s.optional && p.get(s.name).is_none() {
            return None;
        }
    }
    let f = expr::F::new(d.convention, d.zeta0);
    let (lhs, _) = (d.build)(&f, p);
    lhs.first().map(|(_, s)| s.weight())
}

/// Rederives a single-sum identity from its anchor kernel and compares the
/// two closed forms exactly. `Ok(None)` when the entry has no usable anchor.
pub fn concordance(identity: &Identity) -> Result<Option<bool>, IdentityError> {
    let d = lookup(&identity.id)?;
    let Some(text) = d.anchor_for(&identity.params) else { return Ok(None) };
    let [(c, SumRef::Series(target))] = identity.lhs.as_slice() else { return Ok(None) };
    let kernel = crate::syntax::parse_kernel(&text).map_err(|e| IdentityError::BadParams(e.to_string()))?;
    let derr = |e: crate::residue::ResidueError| IdentityError::Evaluation { term: text.clone(), message: e.to_string() };
    let rel = crate::residue::derive_relation(&kernel).map_err(derr)?;
    let (k, rest) = crate::residue::solve_for(&rel, target).map_err(derr)?;
    if k == 0 {
        return Ok(Some(false));
    }
    let derived = normalize(&rest.to_symbolic().scale(&(c.clone() / k)));
    Ok(Some(crate::algebra::canonical_eq(&derived, &identity.rhs)))
}

#[cfg(test)]
mod tests;
