use rug::Rational;

use super::suite::{Relation, Selection};
use crate::error::{Error, Result};
use crate::genfun::check_lambda;
use crate::numeric::{EvalParams, TailMode};

/// Settings of a batch sweep, read from `key=value` lines.
#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub max_weight: u32,
    pub lambdas: Vec<Rational>,
    pub tolerance: f64,
    pub eval: EvalParams,
    pub relations: Vec<Relation>,
    pub ohno_max_shift: u32,
    pub taylor_order: u32,
    pub taylor_lambda: Rational,
    pub residue_n_max: u64,
    pub residue_lambda: Rational,
}

fn parse_num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    value
        .parse()
        .map_err(|e| Error::Parse(format!("{key}: {e}")))
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    s.trim()
        .parse::<Rational>()
        .map_err(|e| Error::Parse(format!("rational {s:?}: {e}")))
}

impl SweepConfig {
    /// Parses the config text. `#` starts a comment; blank lines are ignored.
    pub fn parse(text: &str) -> Result<SweepConfig> {
        let defaults = Selection::default();
        let mut max_weight = None;
        let mut lambdas = defaults.lambdas;
        let mut tolerance: f64 = 1e-8;
        let mut eval = EvalParams::default();
        let mut relations = None;
        let mut ohno_max_shift = 3;
        let mut taylor_order = defaults.taylor_order;
        let mut taylor_lambda = defaults.taylor_lambda;
        let mut residue_n_max = defaults.residue_n_max;
        let mut residue_lambda = defaults.residue_lambda;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("line {}: expected key=value", lineno + 1)))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "max_weight" => max_weight = Some(parse_num(key, value)?),
                "lambdas" => {
                    lambdas = value
                        .split(',')
                        .filter(|s| !s.trim().is_empty())
                        .map(parse_rational)
                        .collect::<Result<_>>()?
                }
                "tolerance" => tolerance = parse_num(key, value)?,
                "prec_bits" => eval.prec_bits = parse_num(key, value)?,
                "cutoff" => eval.cutoff = parse_num(key, value)?,
                "tail_mode" => eval.tail_mode = TailMode::parse(value)?,
                "relations" => {
                    relations = Some(
                        value
                            .split(',')
                            .filter(|s| !s.trim().is_empty())
                            .map(str::parse)
                            .collect::<Result<Vec<Relation>>>()?,
                    )
                }
                "ohno_max_shift" => ohno_max_shift = parse_num(key, value)?,
                "taylor_order" => taylor_order = parse_num(key, value)?,
                "taylor_lambda" => taylor_lambda = parse_rational(value)?,
                "residue_n_max" => residue_n_max = parse_num(key, value)?,
                "residue_lambda" => residue_lambda = parse_rational(value)?,
                other => {
                    return Err(Error::Parse(format!(
                        "line {}: unknown key {other:?}",
                        lineno + 1
                    )))
                }
            }
        }
        let max_weight = max_weight.ok_or_else(|| Error::Parse("max_weight is required".into()))?;
        if max_weight < 2 {
            return Err(Error::InvalidParams(format!("max_weight {max_weight} < 2")));
        }
        let mut relations = relations.unwrap_or_default();
        if relations.is_empty() {
            return Err(Error::InvalidParams("relations list is empty".into()));
        }
        relations.sort();
        relations.dedup();
        if tolerance.is_nan() || tolerance <= 0.0 {
            return Err(Error::InvalidParams(format!(
                "tolerance {tolerance} must be positive"
            )));
        }
        for lam in lambdas.iter().chain([&taylor_lambda, &residue_lambda]) {
            check_lambda(lam)?;
        }
        eval.validate()?;
        Ok(SweepConfig {
            max_weight,
            lambdas,
            tolerance,
            eval,
            relations,
            ohno_max_shift,
            taylor_order,
            taylor_lambda,
            residue_n_max,
            residue_lambda,
        })
    }

    pub fn selection(&self) -> Selection {
        Selection {
            max_weight: Some(self.max_weight),
            shifts: (0..=self.ohno_max_shift).collect(),
            lambdas: self.lambdas.clone(),
            taylor_order: self.taylor_order,
            taylor_lambda: self.taylor_lambda.clone(),
            residue_n_max: self.residue_n_max,
            residue_lambda: self.residue_lambda.clone(),
            ..Selection::default()
        }
    }
}
