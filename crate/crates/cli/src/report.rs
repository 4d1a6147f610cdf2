//! Report records. JSON lines stream one object per record; CSV keeps
//! only `id,params,status,residual,value` for item records.

use std::io::Write;

use serde_json::{json, Map, Value};
use tsum_core::algebra::SymbolicValue;
use tsum_core::identities::{weight_lint, Descriptor, Identity, Status, VerificationReport};
use tsum_core::numerics::{NumericContext, NumericValue, SumResult};
use tsum_core::residue::Relation;
use tsum_core::series::SumRef;

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Format {
    Jsonl,
    Csv,
}

/// One output record.
#[derive(Clone, Debug)]
pub struct Record {
    json: Value,
    status: Option<Status>,
    item: bool,
    failed: bool,
    csv: [String; 5],
}

fn sci(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        Value::Null
    }
}

fn decimal(v: &NumericValue, digits: u32) -> String {
    v.to_decimal(digits as usize)
}

impl Record {
    fn new(kind: &str, body: Value) -> Self {
        let mut m = Map::new();
        m.insert("record".into(), json!(kind));
        if let Value::Object(b) = body {
            m.extend(b);
        }
        Record { json: Value::Object(m), status: None, item: false, failed: false, csv: Default::default() }
    }

    pub fn json(&self) -> &Value {
        &self.json
    }

    pub fn status(&self) -> Option<Status> {
        self.status
    }

    /// True for a MISMATCH, a failed zero-check or an error.
    pub fn failed(&self) -> bool {
        self.failed
    }

    pub fn command(argv: &[String], ctx: &NumericContext, tol: f64, jobs: usize) -> Self {
        Record::new(
            "command",
            json!({
                "argv": argv.iter().skip(1).collect::<Vec<_>>(),
                "context": {
                    "digits": ctx.digits(),
                    "max_terms": ctx.max_terms(),
                    "tail_order": ctx.tail_order(),
                    "working_digits": ctx.working_digits(),
                    "tolerance": tol,
                },
                "jobs": jobs,
            }),
        )
    }

    pub fn summary(items: usize, confirmed: usize, mismatch: usize, skipped: usize, errors: usize, elapsed_ms: Option<f64>) -> Self {
        let mut r = Record::new(
            "summary",
            json!({
                "items": items,
                "confirmed": confirmed,
                "mismatch": mismatch,
                "skipped": skipped,
                "errors": errors,
            }),
        );
        if let (Some(ms), Value::Object(m)) = (elapsed_ms, &mut r.json) {
            m.insert("elapsed_ms".into(), json!((ms * 1000.0).round() / 1000.0));
        }
        r
    }

    pub fn error(subject: &str, message: &str) -> Self {
        let mut r = Record::new("error", json!({ "subject": subject, "message": message }));
        r.item = true;
        r.failed = true;
        r.csv = [subject.into(), String::new(), "ERROR".into(), String::new(), String::new()];
        r
    }

    pub fn eval_sum(text: &str, spec: &SumRef, res: &SumResult, ctx: &NumericContext) -> Self {
        let value = decimal(&res.value, ctx.digits());
        let mut r = Record::new(
            "eval",
            json!({
                "input": text,
                "canonical": spec.to_string(),
                "weight": spec.weight(),
                "value": value,
                "error_bound": sci(res.value.error_bound()),
                "provenance": [{
                    "term": spec.to_string(),
                    "terms": res.terms,
                    "tail_order": res.tail_order,
                    "method": res.method,
                }],
            }),
        );
        r.item = true;
        r.csv = [spec.to_string(), String::new(), "VALUE".into(), String::new(), value];
        r
    }

    pub fn eval_value(text: &str, v: &SymbolicValue, n: &NumericValue, ctx: &NumericContext) -> Self {
        let value = decimal(n, ctx.digits());
        let mut r = Record::new(
            "eval",
            json!({
                "input": text,
                "canonical": v.to_string(),
                "value": value,
                "error_bound": sci(n.error_bound()),
                "provenance": [],
            }),
        );
        r.item = true;
        r.csv = [v.to_string(), String::new(), "VALUE".into(), String::new(), value];
        r
    }

    /// `stable` is the outcome of the two-precision recheck, present only on mismatches.
    pub fn verification(rep: &VerificationReport, identity: Option<&Identity>, stable: Option<bool>) -> Self {
        let params = rep.params.to_string();
        let lhs = rep.lhs_value.as_ref().map(|v| decimal(v, rep.digits));
        let rhs = rep.rhs_value.as_ref().map(|v| decimal(v, rep.digits));
        let provenance: Vec<Value> = rep
            .provenance
            .iter()
            .map(|p| json!({ "term": p.term, "terms": p.terms, "tail_order": p.tail_order, "method": p.method }))
            .collect();
        let mut body = json!({
            "id": rep.id,
            "params": params,
            "status": rep.status,
            "lhs_value": lhs,
            "rhs_value": rhs,
            "residual": rep.residual.map(sci),
            "error_bound": rep.error_bound().map(sci),
            "tolerance": rep.tolerance,
            "digits": rep.digits,
            "provenance": provenance,
        });
        let m = body.as_object_mut().expect("object");
        if let Some(reason) = &rep.reason {
            m.insert("reason".into(), json!(reason));
        }
        if let Some(i) = identity {
            m.insert("identity".into(), json!(i.to_string()));
            m.insert("convention".into(), json!(i.convention));
            m.insert("trace".into(), json!(i.trace));
            match weight_lint(i) {
                Ok(w) => m.insert("weight".into(), json!(w)),
                Err(e) => m.insert("weight_lint".into(), json!(e)),
            };
        }
        if let Some(s) = stable {
            m.insert("stable".into(), json!(s));
        }
        let mut r = Record::new("verify", body);
        r.item = true;
        r.status = Some(rep.status);
        r.failed = rep.status == Status::Mismatch;
        r.csv = [
            rep.id.clone(),
            params,
            rep.status.to_string(),
            rep.residual.map(|x| format!("{x:.3e}")).unwrap_or_default(),
            lhs.unwrap_or_default(),
        ];
        r
    }

    pub fn derivation(kernel: &str, rel: &Relation, zero: &NumericValue, tol: f64, agrees: Option<bool>) -> Self {
        let residual = zero.to_f64().abs();
        let passed = residual <= tol && zero.error_bound() <= tol / 4.0 && agrees != Some(false);
        let status = if passed { Status::Confirmed } else { Status::Mismatch };
        let mut r = Record::new(
            "derive",
            json!({
                "kernel": kernel,
                "relation": rel.to_string(),
                "status": status,
                "residual": sci(residual),
                "error_bound": sci(zero.error_bound()),
                "tolerance": tol,
                "registry_concordance": agrees,
            }),
        );
        r.item = true;
        r.status = Some(status);
        r.failed = !passed;
        r.csv = [kernel.into(), String::new(), status.to_string(), format!("{residual:.3e}"), String::new()];
        r
    }

    pub fn entry(d: &Descriptor) -> Self {
        let params: Vec<Value> = d
            .params
            .iter()
            .map(|p| json!({ "name": p.name, "min": p.min, "optional": p.optional }))
            .collect();
        let mut r = Record::new(
            "entry",
            json!({
                "id": d.id,
                "kind": d.kind,
                "summary": d.summary,
                "params": params,
                "domain": d.domain,
                "convention": d.convention,
                "anchor": if d.anchor.is_empty() { Value::Null } else { json!(d.anchor) },
            }),
        );
        r.item = true;
        r.csv = [d.id.into(), String::new(), String::new(), String::new(), String::new()];
        r
    }
}

pub(crate) struct Writer<'a> {
    fmt: Format,
    out: &'a mut dyn Write,
    header: bool,
}

impl<'a> Writer<'a> {
    pub fn new(fmt: Format, out: &'a mut dyn Write) -> Self {
        Writer { fmt, out, header: false }
    }

    pub fn emit(&mut self, r: &Record) -> std::io::Result<()> {
        match self.fmt {
            Format::Jsonl => writeln!(self.out, "{}", r.json),
            Format::Csv => {
                if !r.item {
                    return Ok(());
                }
                if !self.header {
                    writeln!(self.out, "id,params,status,residual,value")?;
                    self.header = true;
                }
                let row: Vec<String> = r.csv.iter().map(|c| csv_field(c)).collect();
                writeln!(self.out, "{}", row.join(","))
            }
        }
    }

    pub fn flush(&mut self) -> std::io::Result<()> {
        self.out.flush()
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
