//! Parameter sweeps over the closed-form reports, with CSV and JSON-lines
//! output.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::analysis::double::frequency_condition;
use crate::analysis::{m_ln_infinite_s, DoubleObserverReport, Extended, SingleObserverReport};
use crate::error::{Error, Result};
use crate::info_measures::contangle_from_m;
use crate::rindler::accel_to_squeezing;

/// A sweepable parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Param {
    S,
    R,
    L,
    N,
    A,
    Lambda,
    Nu,
    Aleph,
}

impl Param {
    pub fn name(self) -> &'static str {
        match self {
            Param::S => "s",
            Param::R => "r",
            Param::L => "l",
            Param::N => "n",
            Param::A => "a",
            Param::Lambda => "lambda",
            Param::Nu => "nu",
            Param::Aleph => "aleph",
        }
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Param {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim() {
            "s" => Param::S,
            "r" => Param::R,
            "l" => Param::L,
            "n" => Param::N,
            "a" => Param::A,
            "lambda" | "λ" => Param::Lambda,
            "nu" | "ν" => Param::Nu,
            "aleph" | "ℵ" => Param::Aleph,
            other => {
                return Err(Error::InvalidArgument(format!(
                    "unknown parameter `{other}`"
                )))
            }
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepScenario {
    Single,
    Double,
    Frequency,
}

impl SweepScenario {
    pub fn quantities(self) -> &'static [&'static str] {
        match self {
            SweepScenario::Single => SINGLE_QUANTITIES,
            SweepScenario::Double => DOUBLE_QUANTITIES,
            SweepScenario::Frequency => FREQUENCY_QUANTITIES,
        }
    }
}

impl FromStr for SweepScenario {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "single" => Ok(SweepScenario::Single),
            "double" => Ok(SweepScenario::Double),
            "frequency" => Ok(SweepScenario::Frequency),
            other => Err(Error::InvalidArgument(format!(
                "unknown scenario `{other}`"
            ))),
        }
    }
}

pub const SINGLE_QUANTITIES: &[&str] = &[
    "m_A_RRbar",
    "m_R_ARbar",
    "m_Rbar_AR",
    "m_AR",
    "m_RRbar",
    "tau_AR",
    "tau_AR_normalized",
    "sqrt_tau_AR",
    "tau_RRbar",
    "sqrt_tau_RRbar",
    "tau_max",
    "r_star",
    "residual_tripartite",
    "mutual_info_AR",
    "mutual_info_AR_normalized",
    "entropy_of_entanglement",
    "monogamy_A",
    "monogamy_R",
    "monogamy_Rbar",
];

pub const DOUBLE_QUANTITIES: &[&str] = &[
    "m_L_N",
    "tau_L_N",
    "tau_L_N_normalized",
    "m_L_Lbar",
    "m_N_Nbar",
    "m_L_Nbar",
    "m_N_Lbar",
    "m_Lbar_Nbar",
    "m_Lbar_LNNbar",
    "m_L_LbarNNbar",
    "m_N_NbarLLbar",
    "m_Nbar_NLLbar",
    "r_eff",
    "a_star",
    "residual_multipartite",
    "tripartite_upper_bound",
    "mutual_info_LN",
    "mutual_info_LN_normalized",
    "deficit",
    "monogamy_Lbar",
    "monogamy_L",
    "monogamy_N",
    "monogamy_Nbar",
];

pub const FREQUENCY_QUANTITIES: &[&str] =
    &["l", "n", "condition", "separable", "m_LN_inf", "tau_LN_inf"];

/// One swept axis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub param: Param,
    pub values: Vec<f64>,
}

impl Axis {
    /// `steps` evenly spaced values from `min` to `max` inclusive.
    pub fn linspace(param: Param, min: f64, max: f64, steps: usize) -> Result<Self> {
        if steps < 2 {
            return Err(Error::InvalidArgument(format!(
                "axis {param} needs at least 2 steps"
            )));
        }
        if !(min.is_finite() && max.is_finite() && min < max) {
            return Err(Error::InvalidArgument(format!(
                "axis {param} needs finite min < max"
            )));
        }
        let h = (max - min) / (steps - 1) as f64;
        let mut values: Vec<f64> = (0..steps).map(|k| min + h * k as f64).collect();
        values[steps - 1] = max;
        Ok(Self { param, values })
    }

    pub fn explicit(param: Param, values: Vec<f64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::InvalidArgument(format!(
                "axis {param} needs at least 2 values"
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "axis {param} has a non-finite value"
            )));
        }
        Ok(Self { param, values })
    }
}

/// Parses `name=min:max:steps` or `name=v1,v2,...`.
impl FromStr for Axis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("cannot parse axis `{s}`"));
        let (name, rest) = s.split_once('=').ok_or_else(bad)?;
        let param: Param = name.parse()?;
        if rest.contains(':') {
            let parts: Vec<&str> = rest.split(':').collect();
            if parts.len() != 3 {
                return Err(bad());
            }
            let min: f64 = parts[0].trim().parse().map_err(|_| bad())?;
            let max: f64 = parts[1].trim().parse().map_err(|_| bad())?;
            let steps: usize = parts[2].trim().parse().map_err(|_| bad())?;
            Axis::linspace(param, min, max, steps)
        } else {
            let values = rest
                .split(',')
                .map(|v| v.trim().parse::<f64>().map_err(|_| bad()))
                .collect::<Result<Vec<_>>>()?;
            Axis::explicit(param, values)
        }
    }
}

/// Parses `name=value`.
pub fn parse_fixed(s: &str) -> Result<(Param, f64)> {
    let bad = || Error::InvalidArgument(format!("cannot parse fixed value `{s}`"));
    let (name, v) = s.split_once('=').ok_or_else(bad)?;
    let v: f64 = v.trim().parse().map_err(|_| bad())?;
    Ok((name.parse()?, v))
}

/// A grid of at most two swept axes over one scenario.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub scenario: SweepScenario,
    pub axes: Vec<Axis>,
    pub fixed: Vec<(Param, f64)>,
    /// Empty selects every quantity of the scenario.
    pub quantities: Vec<String>,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.axes.is_empty() || self.axes.len() > 2 {
            return Err(Error::InvalidArgument(
                "a sweep needs one or two axes".to_owned(),
            ));
        }
        let mut given: Vec<Param> = self.axes.iter().map(|a| a.param).collect();
        given.extend(self.fixed.iter().map(|f| f.0));
        let mut sorted = given.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != given.len() {
            return Err(Error::InvalidArgument(
                "a parameter is given more than once".to_owned(),
            ));
        }
        let allowed: &[Param] = match self.scenario {
            SweepScenario::Single => &[Param::S, Param::R],
            SweepScenario::Double => &[Param::S, Param::L, Param::N, Param::A],
            SweepScenario::Frequency => &[Param::Lambda, Param::Nu, Param::Aleph],
        };
        if let Some(p) = given.iter().find(|p| !allowed.contains(p)) {
            return Err(Error::InvalidArgument(format!(
                "parameter {p} does not apply to this scenario"
            )));
        }
        let required: &[Param] = match self.scenario {
            SweepScenario::Single => &[Param::S, Param::R],
            SweepScenario::Double if given.contains(&Param::A) => {
                if given.contains(&Param::L) || given.contains(&Param::N) {
                    return Err(Error::InvalidArgument(
                        "give either a or both l and n".to_owned(),
                    ));
                }
                &[Param::S, Param::A]
            }
            SweepScenario::Double => &[Param::S, Param::L, Param::N],
            SweepScenario::Frequency => &[Param::Lambda, Param::Nu, Param::Aleph],
        };
        if let Some(p) = required.iter().find(|p| !given.contains(p)) {
            return Err(Error::InvalidArgument(format!("missing parameter {p}")));
        }
        let known = self.scenario.quantities();
        if let Some(q) = self
            .quantities
            .iter()
            .find(|q| !known.contains(&q.as_str()))
        {
            return Err(Error::InvalidArgument(format!(
                "unknown quantity `{q}` for this scenario"
            )));
        }
        Ok(())
    }

    pub fn columns(&self) -> Vec<String> {
        let mut cols: Vec<String> = self.axes.iter().map(|a| a.param.to_string()).collect();
        cols.extend(self.fixed.iter().map(|f| f.0.to_string()));
        cols.extend(self.selected_quantities().iter().map(|q| q.to_string()));
        cols
    }

    fn selected_quantities(&self) -> Vec<&str> {
        if self.quantities.is_empty() {
            self.scenario.quantities().to_vec()
        } else {
            self.quantities.iter().map(String::as_str).collect()
        }
    }

    /// Grid points in row order: the first axis is the outer loop.
    pub fn points(&self) -> Vec<Vec<(Param, f64)>> {
        let mut out = vec![Vec::new()];
        for axis in &self.axes {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    axis.values.iter().map(move |&v| {
                        let mut p = prefix.clone();
                        p.push((axis.param, v));
                        p
                    })
                })
                .collect();
        }
        for p in &mut out {
            p.extend(self.fixed.iter().copied());
        }
        out
    }

    /// Number of rows the sweep produces.
    pub fn len(&self) -> usize {
        self.axes.iter().map(|a| a.values.len()).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn describe(&self) -> String {
        let axes: Vec<String> = self
            .axes
            .iter()
            .map(|a| {
                let (lo, hi) = (a.values[0], a.values[a.values.len() - 1]);
                format!("{}=[{lo},{hi}]x{}", a.param, a.values.len())
            })
            .collect();
        let fixed: Vec<String> = self.fixed.iter().map(|(p, v)| format!("{p}={v}")).collect();
        format!(
            "scenario={} axes={} fixed={}",
            serde_json::to_value(self.scenario)
                .ok()
                .and_then(|v| v.as_str().map(str::to_owned))
                .unwrap_or_default(),
            axes.join(";"),
            if fixed.is_empty() {
                "-".to_owned()
            } else {
                fixed.join(";")
            }
        )
    }
}

/// One output cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Num(f64),
    Inf,
    Missing,
    Flag(bool),
}

impl Cell {
    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Cell::Num(v) => Some(*v),
            Cell::Inf => Some(f64::INFINITY),
            Cell::Flag(b) => Some(if *b { 1.0 } else { 0.0 }),
            Cell::Missing => None,
        }
    }

    fn csv(&self) -> String {
        match self {
            Cell::Num(v) if v.is_nan() => "NaN".to_owned(),
            Cell::Num(v) if v.is_infinite() => if *v > 0.0 { "inf" } else { "-inf" }.to_owned(),
            Cell::Num(v) => format!("{v:.16e}"),
            Cell::Inf => "inf".to_owned(),
            Cell::Missing => String::new(),
            Cell::Flag(b) => b.to_string(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(v) if v.is_finite() => Value::from(*v),
            Cell::Num(v) if v.is_infinite() && *v > 0.0 => Value::from("inf"),
            Cell::Num(_) | Cell::Missing => Value::Null,
            Cell::Inf => Value::from("inf"),
            Cell::Flag(b) => Value::from(*b),
        }
    }
}

impl From<Extended> for Cell {
    fn from(e: Extended) -> Self {
        match e {
            Extended::Finite(v) => Cell::Num(v),
            Extended::Infinite => Cell::Inf,
        }
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Missing, Cell::Num)
    }
}

/// Result of a sweep: metadata lines, a header and the rows.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub meta: Vec<String>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn column(&self, name: &str) -> Option<Vec<Cell>> {
        let k = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[k]).collect())
    }

    pub fn write_csv<W: Write>(&self, out: W) -> std::io::Result<()> {
        let mut out = out;
        for m in &self.meta {
            writeln!(out, "# {m}")?;
        }
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv))?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn write_jsonl<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        for m in &self.meta {
            writeln!(out, "# {m}")?;
        }
        for row in &self.rows {
            let obj: Map<String, Value> = self
                .columns
                .iter()
                .cloned()
                .zip(row.iter().map(Cell::json))
                .collect();
            serde_json::to_writer(&mut out, &Value::Object(obj))?;
            writeln!(out)?;
        }
        Ok(())
    }
}

/// Evaluates every grid point, in parallel, keeping row order.
pub fn run_sweep(spec: &SweepSpec) -> Result<Table> {
    spec.validate()?;
    let quantities = spec.selected_quantities();
    let rows = spec
        .points()
        .par_iter()
        .map(|point| {
            let mut row: Vec<Cell> = point.iter().map(|&(_, v)| Cell::Num(v)).collect();
            row.extend(evaluate(spec.scenario, point, &quantities)?);
            Ok(row)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Table {
        meta: vec![format!(
            "unruh-cv {} sweep {}",
            env!("CARGO_PKG_VERSION"),
            spec.describe()
        )],
        columns: spec.columns(),
        rows,
    })
}

fn get(point: &[(Param, f64)], p: Param) -> Option<f64> {
    point.iter().find(|(q, _)| *q == p).map(|&(_, v)| v)
}

fn ratio(num: f64, den: f64) -> Cell {
    if den == 0.0 {
        Cell::Num(f64::NAN)
    } else {
        Cell::Num(num / den)
    }
}

/// Evaluates the requested quantities at one point.
pub fn evaluate(
    scenario: SweepScenario,
    point: &[(Param, f64)],
    quantities: &[&str],
) -> Result<Vec<Cell>> {
    let need = |p: Param| {
        get(point, p).ok_or_else(|| Error::InvalidArgument(format!("missing parameter {p}")))
    };
    match scenario {
        SweepScenario::Single => {
            let rep = SingleObserverReport::compute(need(Param::S)?, need(Param::R)?)?;
            Ok(quantities.iter().map(|q| single_cell(&rep, q)).collect())
        }
        SweepScenario::Double => {
            let s = need(Param::S)?;
            let (l, n) = match get(point, Param::A) {
                Some(a) => (a, a),
                None => (need(Param::L)?, need(Param::N)?),
            };
            let rep = DoubleObserverReport::compute(s, l, n)?;
            Ok(quantities.iter().map(|q| double_cell(&rep, q)).collect())
        }
        SweepScenario::Frequency => {
            let (lambda, nu, aleph) = (need(Param::Lambda)?, need(Param::Nu)?, need(Param::Aleph)?);
            let l = accel_to_squeezing(aleph, lambda)?;
            let n = accel_to_squeezing(aleph, nu)?;
            let cond = frequency_condition(lambda, nu, aleph)?;
            let m_inf = m_ln_infinite_s(l, n)?;
            let tau_inf = contangle_from_m(m_inf)?;
            Ok(quantities
                .iter()
                .map(|q| match *q {
                    "l" => Cell::Num(l),
                    "n" => Cell::Num(n),
                    "condition" => Cell::Num(cond),
                    "separable" => Cell::Flag(cond >= 0.0),
                    "m_LN_inf" => Cell::Num(m_inf),
                    "tau_LN_inf" => Cell::Num(tau_inf),
                    _ => Cell::Missing,
                })
                .collect())
        }
    }
}

fn single_cell(rep: &SingleObserverReport, q: &str) -> Cell {
    match q {
        "m_A_RRbar" => Cell::Num(rep.m_A_RRbar),
        "m_R_ARbar" => Cell::Num(rep.m_R_ARbar),
        "m_Rbar_AR" => Cell::Num(rep.m_Rbar_AR),
        "m_AR" => Cell::Num(rep.m_AR),
        "m_RRbar" => Cell::Num(rep.m_RRbar),
        "tau_AR" => Cell::Num(rep.tau_AR),
        "tau_AR_normalized" => ratio(rep.tau_AR, rep.tau_inertial),
        "sqrt_tau_AR" => Cell::Num(rep.tau_AR.sqrt()),
        "tau_RRbar" => Cell::Num(rep.tau_RRbar),
        "sqrt_tau_RRbar" => Cell::Num(rep.tau_RRbar.sqrt()),
        "tau_max" => rep.tau_max.into(),
        "r_star" => Cell::Num(rep.r_star),
        "residual_tripartite" => Cell::Num(rep.residual_tripartite),
        "mutual_info_AR" => Cell::Num(rep.mutual_info_AR),
        "mutual_info_AR_normalized" => ratio(rep.mutual_info_AR, rep.entropy_of_entanglement),
        "entropy_of_entanglement" => Cell::Num(rep.entropy_of_entanglement),
        "monogamy_A" => Cell::Num(rep.monogamy[0]),
        "monogamy_R" => Cell::Num(rep.monogamy[1]),
        "monogamy_Rbar" => Cell::Num(rep.monogamy[2]),
        _ => Cell::Missing,
    }
}

fn double_cell(rep: &DoubleObserverReport, q: &str) -> Cell {
    let ev = crate::info_measures::entropy_of_entanglement(rep.s).unwrap_or(f64::NAN);
    match q {
        "m_L_N" => Cell::Num(rep.pairwise.m_L_N),
        "tau_L_N" => Cell::Num(rep.tau_L_N),
        "tau_L_N_normalized" => ratio(rep.tau_L_N, rep.tau_inertial),
        "m_L_Lbar" => Cell::Num(rep.pairwise.m_L_Lbar),
        "m_N_Nbar" => Cell::Num(rep.pairwise.m_N_Nbar),
        "m_L_Nbar" => Cell::Num(rep.pairwise.m_L_Nbar),
        "m_N_Lbar" => Cell::Num(rep.pairwise.m_N_Lbar),
        "m_Lbar_Nbar" => Cell::Num(rep.pairwise.m_Lbar_Nbar),
        "m_Lbar_LNNbar" => Cell::Num(rep.one_vs_rest.lbar),
        "m_L_LbarNNbar" => Cell::Num(rep.one_vs_rest.l),
        "m_N_NbarLLbar" => Cell::Num(rep.one_vs_rest.n),
        "m_Nbar_NLLbar" => Cell::Num(rep.one_vs_rest.nbar),
        "r_eff" => rep.r_eff.map_or(Cell::Missing, Cell::from),
        "a_star" => Cell::Num(rep.a_star),
        "residual_multipartite" => rep.residual_multipartite.into(),
        "tripartite_upper_bound" => rep.tripartite_upper_bound.into(),
        "mutual_info_LN" => rep.mutual_info_LN.into(),
        "mutual_info_LN_normalized" => rep.mutual_info_LN.map_or(Cell::Missing, |i| ratio(i, ev)),
        "deficit" => rep.deficit.into(),
        "monogamy_Lbar" => Cell::Num(rep.monogamy[0]),
        "monogamy_L" => Cell::Num(rep.monogamy[1]),
        "monogamy_N" => Cell::Num(rep.monogamy[2]),
        "monogamy_Nbar" => Cell::Num(rep.monogamy[3]),
        _ => Cell::Missing,
    }
}
