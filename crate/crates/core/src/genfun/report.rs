use std::fmt;

use rug::Rational;
use serde_json::{json, Map, Value};

use crate::numeric::{EvalParams, NumValue};

/// Outcome of comparing the two sides of one identity instance.
#[derive(Debug, Clone)]
pub struct RelationReport {
    pub relation: String,
    pub inputs: Vec<(String, String)>,
    pub lambda: Option<Rational>,
    pub lhs: NumValue,
    pub rhs: NumValue,
    pub abs_diff: f64,
    pub tol: f64,
    pub pass: bool,
    /// Parameters of the final evaluation; `cutoff` is the largest one used.
    pub params: EvalParams,
}

impl RelationReport {
    /// `pass` iff `|lhs - rhs| <= tol + err_lhs + err_rhs`.
    pub fn new(
        relation: impl Into<String>,
        inputs: Vec<(String, String)>,
        lambda: Option<Rational>,
        lhs: NumValue,
        rhs: NumValue,
        params: EvalParams,
        tol: f64,
    ) -> RelationReport {
        let abs_diff = lhs.abs_diff(&rhs);
        let pass = abs_diff <= tol + lhs.err + rhs.err;
        RelationReport {
            relation: relation.into(),
            inputs,
            lambda,
            lhs,
            rhs,
            abs_diff,
            tol,
            pass,
            params,
        }
    }

    pub fn to_json(&self) -> Value {
        let side = |v: &NumValue| json!({ "value": v.value_string(), "err": v.err_string() });
        let inputs: Map<String, Value> = self
            .inputs
            .iter()
            .map(|(k, v)| (k.clone(), Value::String(v.clone())))
            .collect();
        json!({
            "relation": self.relation,
            "inputs": inputs,
            "lambda": self.lambda.as_ref().map(|l| l.to_string()),
            "lhs": side(&self.lhs),
            "rhs": side(&self.rhs),
            "abs_diff": format!("{:.3e}", self.abs_diff),
            "pass": self.pass,
            "params": {
                "prec_bits": self.params.prec_bits,
                "cutoff": self.params.cutoff,
                "tail_mode": self.params.tail_mode.as_str(),
                "tol": self.tol,
            },
        })
    }

    /// Compact single-line JSON.
    pub fn to_json_line(&self) -> String {
        self.to_json().to_string()
    }
}

impl fmt::Display for RelationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inputs: Vec<String> = self
            .inputs
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        write!(
            f,
            "{} {} {}",
            if self.pass { "PASS" } else { "FAIL" },
            self.relation,
            inputs.join(" ")
        )?;
        if let Some(l) = &self.lambda {
            write!(f, " lambda={l}")?;
        }
        write!(
            f,
            " |diff|={:.3e} lhs={} rhs={} N={}",
            self.abs_diff, self.lhs, self.rhs, self.params.cutoff
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::Float;

    #[test]
    fn json_shape() {
        let v = |x: f64, e: f64| NumValue::new(Float::with_val(64, x), e);
        let r = RelationReport::new(
            "fg",
            vec![("biseq".into(), "{2,1}".into())],
            Some(Rational::from((1, 3))),
            v(1.0, 1e-12),
            v(1.0, 1e-12),
            EvalParams::default(),
            1e-8,
        );
        assert!(r.pass);
        let j = r.to_json();
        assert_eq!(j["relation"], "fg");
        assert_eq!(j["lambda"], "1/3");
        assert_eq!(j["inputs"]["biseq"], "{2,1}");
        assert_eq!(j["params"]["prec_bits"], 256);
        assert!(j["lhs"]["value"].is_string());
        let back: Value = serde_json::from_str(&r.to_json_line()).unwrap();
        assert_eq!(back, j);
    }

    #[test]
    fn fails_beyond_tolerance() {
        let v = |x: f64| NumValue::new(Float::with_val(64, x), 0.0);
        let r = RelationReport::new(
            "x",
            vec![],
            None,
            v(1.0),
            v(1.1),
            EvalParams::default(),
            1e-8,
        );
        assert!(!r.pass);
        assert!(r.to_string().starts_with("FAIL x"));
    }
}
