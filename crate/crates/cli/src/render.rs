//! Output formats, registered by name.

use nfold::diffring::{format as ring_format, Fraction};
use serde::Serialize;

use crate::golden::{Expression, Outcome, Value};

/// A label in plain and LaTeX spelling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Label {
    pub plain: String,
    pub latex: String,
}

impl Label {
    pub fn new(plain: impl Into<String>, latex: impl Into<String>) -> Self {
        Label {
            plain: plain.into(),
            latex: latex.into(),
        }
    }
}

#[derive(Clone, Debug)]
pub enum Item {
    Expr { label: Label, value: Value },
    Text { label: String, text: String },
    Check(Outcome),
}

/// What a command prints, before formatting.
#[derive(Clone, Debug)]
pub struct Document {
    pub title: String,
    /// Set for verification reports.
    pub passed: Option<bool>,
    pub items: Vec<Item>,
}

impl Document {
    pub fn new(title: impl Into<String>) -> Self {
        Document {
            title: title.into(),
            passed: None,
            items: Vec::new(),
        }
    }

    pub fn expr(&mut self, label: Label, value: Value) {
        self.items.push(Item::Expr { label, value });
    }

    pub fn text(&mut self, label: impl Into<String>, text: impl Into<String>) {
        self.items.push(Item::Text {
            label: label.into(),
            text: text.into(),
        });
    }
}

pub trait Format: Send + Sync {
    fn name(&self) -> &'static str;

    fn render(&self, doc: &Document) -> String;
}

fn status(passed: bool) -> &'static str {
    if passed {
        "PASS"
    } else {
        "FAIL"
    }
}

pub struct Plain;

impl Format for Plain {
    fn name(&self) -> &'static str {
        "plain"
    }

    fn render(&self, doc: &Document) -> String {
        let mut s = format!("# {}\n", doc.title);
        for item in &doc.items {
            match item {
                Item::Expr { label, value } => {
                    for (part, text) in value.plain_lines() {
                        if part.is_empty() {
                            s.push_str(&format!("{} = {text}\n", label.plain));
                        } else {
                            s.push_str(&format!("{} [{part}] = {text}\n", label.plain));
                        }
                    }
                }
                Item::Text { label, text } => s.push_str(&format!("{label}: {text}\n")),
                Item::Check(o) => {
                    s.push_str(&format!("[{}] {}: {}\n", status(o.passed), o.id, o.detail));
                    if let Some(r) = &o.residual {
                        s.push_str(&format!("    residual: {r}\n"));
                    }
                }
            }
        }
        if let Some(p) = doc.passed {
            s.push_str(&format!("result: {}\n", status(p)));
        }
        s
    }
}

pub struct Latex;

fn fraction_latex(f: &Fraction) -> String {
    let num = ring_format::latex(f.numerator());
    if f.denominator().is_one() {
        num
    } else {
        format!("\\frac{{{num}}}{{{}}}", f.denominator().latex())
    }
}

fn d_power(i: u32) -> String {
    match i {
        0 => String::new(),
        1 => "\\partial".into(),
        _ => format!("\\partial^{{{i}}}"),
    }
}

fn value_latex(v: &Value) -> String {
    match v {
        Value::Poly(p) => ring_format::latex(p),
        Value::Operator(o) => o.latex(),
        Value::Fraction(f) => fraction_latex(f),
        Value::Combination(c) => {
            let orders: Vec<String> = c
                .iter()
                .rev()
                .map(|(i, ks)| {
                    let inner: Vec<String> = ks
                        .iter()
                        .map(|(j, k)| format!("\\left({}\\right)I_{{{j}}}", k.latex()))
                        .collect();
                    format!("\\left[{}\\right]{}", inner.join("+"), d_power(*i))
                })
                .collect();
            orders.join("+")
        }
        Value::FractionOperator(c) => {
            let parts: Vec<String> = c
                .iter()
                .rev()
                .map(|(i, f)| format!("\\left({}\\right){}", fraction_latex(f), d_power(*i)))
                .collect();
            parts.join("+")
        }
    }
}

impl Format for Latex {
    fn name(&self) -> &'static str {
        "latex"
    }

    fn render(&self, doc: &Document) -> String {
        let mut s = format!("% {}\n", doc.title);
        let exprs: Vec<String> = doc
            .items
            .iter()
            .filter_map(|item| match item {
                Item::Expr { label, value } => {
                    Some(format!("{} &= {}", label.latex, value_latex(value)))
                }
                _ => None,
            })
            .collect();
        for item in &doc.items {
            match item {
                Item::Text { label, text } => s.push_str(&format!("% {label}: {text}\n")),
                Item::Check(o) => {
                    s.push_str(&format!("% [{}] {}: {}\n", status(o.passed), o.id, o.detail))
                }
                Item::Expr { .. } => {}
            }
        }
        if !exprs.is_empty() {
            s.push_str("\\begin{align*}\n");
            s.push_str(&exprs.join(",\\\\\n"));
            s.push_str("\n\\end{align*}\n");
        }
        if let Some(p) = doc.passed {
            s.push_str(&format!("% result: {}\n", status(p)));
        }
        s
    }
}

pub struct Json;

#[derive(Serialize)]
#[serde(tag = "type", rename_all = "camelCase")]
enum JsonItem<'a> {
    Expr {
        label: &'a str,
        expression: Expression,
    },
    Text {
        label: &'a str,
        text: &'a str,
    },
    Check {
        id: &'a str,
        status: &'static str,
        detail: &'a str,
        #[serde(skip_serializing_if = "Option::is_none")]
        residual: Option<&'a str>,
    },
}

#[derive(Serialize)]
struct JsonDocument<'a> {
    title: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    passed: Option<bool>,
    items: Vec<JsonItem<'a>>,
}

impl Format for Json {
    fn name(&self) -> &'static str {
        "json"
    }

    fn render(&self, doc: &Document) -> String {
        let items = doc
            .items
            .iter()
            .map(|item| match item {
                Item::Expr { label, value } => JsonItem::Expr {
                    label: &label.plain,
                    expression: Expression::encode(value),
                },
                Item::Text { label, text } => JsonItem::Text { label, text },
                Item::Check(o) => JsonItem::Check {
                    id: &o.id,
                    status: if o.passed { "pass" } else { "fail" },
                    detail: &o.detail,
                    residual: o.residual.as_deref(),
                },
            })
            .collect();
        let out = JsonDocument {
            title: &doc.title,
            passed: doc.passed,
            items,
        };
        let mut s = serde_json::to_string_pretty(&out).expect("serializable");
        s.push('\n');
        s
    }
}

static FORMATS: &[&dyn Format] = &[&Plain, &Latex, &Json];

pub fn formats() -> &'static [&'static dyn Format] {
    FORMATS
}

pub fn lookup_format(name: &str) -> Option<&'static dyn Format> {
    FORMATS.iter().copied().find(|f| f.name() == name)
}
