//! JSON, CSV and text renderings. Every rendering is a pure function of its input.

use serde_json::{json, Map, Value};
use sumrule_core::exactalg::rational::to_fraction_string;
use sumrule_core::sumrules::{StateLabel, SumRuleValue};

use crate::cli::Format;

pub const CSV_HEADER: &str = "J,channel,discrete,continuum,total,constructive,closed_form,pass";

/// Named pass/fail outcome of one verification step.
#[derive(Clone, Debug)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    pub fn new(suite: &'static str, name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Check {
        Check { suite, name: name.into(), pass, detail: detail.into() }
    }
}

fn num(x: Option<f64>) -> Value {
    x.and_then(|v| serde_json::Number::from_f64(v).map(Value::Number)).unwrap_or(Value::Null)
}

fn state_json(label: &StateLabel) -> Value {
    match label {
        StateLabel::Hydrogen { n, l } => json!({ "n": n, "l": l }),
        StateLabel::Potential { potential, nodes, l } => json!({ "potential": potential, "nodes": nodes, "l": l }),
    }
}

pub fn row_json(v: &SumRuleValue) -> Value {
    let mut m = Map::new();
    m.insert("state".into(), state_json(&v.state));
    m.insert("J".into(), json!(v.order));
    m.insert("channel".into(), json!(v.channel.to_string()));
    m.insert("discrete".into(), num(v.discrete));
    m.insert("continuum".into(), num(v.continuum));
    m.insert("total".into(), num(v.total()));
    m.insert("constructive".into(), v.constructive.as_ref().map(to_fraction_string).into());
    m.insert("closed_form".into(), v.closed_form.as_ref().map(to_fraction_string).into());
    m.insert("pass".into(), json!(v.pass));
    // Solved potentials have no exact arithmetic; their references are floats.
    if matches!(v.state, StateLabel::Potential { .. }) {
        m.insert("constructive_numeric".into(), num(v.constructive_numeric));
        m.insert("closed_form_numeric".into(), num(v.closed_form_numeric));
    }
    Value::Object(m)
}

fn cell(x: Option<f64>, divergent: bool) -> String {
    match x {
        Some(v) => format!("{v}"),
        None if divergent => "div".into(),
        None => String::new(),
    }
}

fn exact_cell(v: &SumRuleValue, exact: Option<&sumrule_core::exactalg::Rational>, numeric: Option<f64>) -> String {
    match (exact, numeric) {
        (Some(r), _) => to_fraction_string(r),
        (None, Some(x)) => format!("{x}"),
        (None, None) if v.divergent => "div".into(),
        _ => String::new(),
    }
}

pub fn row_csv(v: &SumRuleValue) -> String {
    [
        v.order.to_string(),
        v.channel.to_string(),
        cell(v.discrete, false),
        cell(v.continuum, v.divergent),
        cell(v.total(), v.divergent),
        exact_cell(v, v.constructive.as_ref(), v.constructive_numeric),
        exact_cell(v, v.closed_form.as_ref(), v.closed_form_numeric),
        v.pass.to_string(),
    ]
    .join(",")
}

fn text_num(x: Option<f64>, divergent: bool) -> String {
    match x {
        Some(v) => format!("{v:.6}"),
        None if divergent => "div".into(),
        None => "-".into(),
    }
}

fn text_exact(v: &SumRuleValue, exact: Option<&sumrule_core::exactalg::Rational>, numeric: Option<f64>) -> String {
    match (exact, numeric) {
        (Some(r), _) => r.to_string(),
        (None, Some(x)) => format!("{x:.6}"),
        (None, None) if v.divergent => "div".into(),
        _ => "-".into(),
    }
}

pub fn rows(values: &[SumRuleValue], format: Format) -> String {
    match format {
        Format::Json => {
            let arr: Vec<Value> = values.iter().map(row_json).collect();
            serde_json::to_string_pretty(&arr).expect("rows serialize") + "\n"
        }
        Format::Csv => {
            let mut out = String::from(CSV_HEADER);
            out.push('\n');
            for v in values {
                out.push_str(&row_csv(v));
                out.push('\n');
            }
            out
        }
        Format::Text => {
            let mut out = format!(
                "{:>4} {:>6} {:>14} {:>14} {:>14} {:>14} {:>14} {}\n",
                "J", "chan", "discrete", "continuum", "total", "constructive", "closed_form", "pass"
            );
            for v in values {
                out.push_str(&format!(
                    "{:>4} {:>6} {:>14} {:>14} {:>14} {:>14} {:>14} {}\n",
                    v.order,
                    v.channel.to_string(),
                    text_num(v.discrete, false),
                    text_num(v.continuum, v.divergent),
                    text_num(v.total(), v.divergent),
                    text_exact(v, v.constructive.as_ref(), v.constructive_numeric),
                    text_exact(v, v.closed_form.as_ref(), v.closed_form_numeric),
                    if v.pass { "PASS" } else { "FAIL" }
                ));
            }
            out
        }
    }
}

fn csv_quote(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn checks(list: &[Check], format: Format) -> String {
    let all = list.iter().all(|c| c.pass);
    match format {
        Format::Json => {
            let arr: Vec<Value> = list
                .iter()
                .map(|c| json!({ "suite": c.suite, "name": c.name, "pass": c.pass, "detail": c.detail }))
                .collect();
            serde_json::to_string_pretty(&json!({ "checks": arr, "pass": all })).expect("checks serialize") + "\n"
        }
        Format::Csv => {
            let mut out = String::from("suite,name,pass,detail\n");
            for c in list {
                out.push_str(&format!("{},{},{},{}\n", c.suite, csv_quote(&c.name), c.pass, csv_quote(&c.detail)));
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            for c in list {
                out.push_str(&format!("{} {:<13} {:<40} {}\n", if c.pass { "PASS" } else { "FAIL" }, c.suite, c.name, c.detail));
            }
            let failed = list.iter().filter(|c| !c.pass).count();
            out.push_str(&format!("{} checks, {failed} failed\n", list.len()));
            out
        }
    }
}
