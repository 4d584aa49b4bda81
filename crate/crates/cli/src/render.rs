//! JSON, CSV and LaTeX output. Every renderer is deterministic for a fixed input.

use std::collections::BTreeSet;

use num_traits::Signed;
use serde_json::{json, Value};

use qcb::canonical::{APath, CanonicalMatrix, MarshPath};
use qcb::check::Report;
use qcb::crystal::Word;
use qcb::lincomb::LinComb;
use qcb::modvec::ModuleVector;
use qcb::shapes::{Column, Shape, Tabloid};
use qcb::wedge::{wedge_vector_json, WedgeVector};
use qcb::{AlgebraKind, LaurentPoly, Letter};

use crate::Format;

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn csv_text(header: &[&str], records: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in records {
        w.write_record(&r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("UTF-8 input")
}

fn path_json(steps: &[(usize, u32)]) -> Value {
    json!(steps.iter().map(|&(i, p)| json!([i, p])).collect::<Vec<_>>())
}

fn path_text(steps: &[(usize, u32)]) -> String {
    steps
        .iter()
        .map(|&(i, p)| if p == 1 { format!("f_{i}") } else { format!("f_{i}^({p})") })
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn tex_poly(p: &LaurentPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (idx, (e, c)) in p.terms().iter().enumerate() {
        let abs = c.abs();
        if c.is_negative() {
            out.push('-');
        } else if idx > 0 {
            out.push('+');
        }
        let unit = abs == 1.into();
        match *e {
            0 => out.push_str(&abs.to_string()),
            _ => {
                if !unit {
                    out.push_str(&abs.to_string());
                }
                out.push('q');
                if *e != 1 {
                    out.push_str(&format!("^{{{e}}}"));
                }
            }
        }
    }
    out
}

fn tex_letter(x: Letter) -> String {
    if x.is_barred() {
        format!("\\bar{{{}}}", x.index())
    } else {
        x.value().to_string()
    }
}

/// Rows top to bottom separated by `/`, the spin column first when present.
pub fn tex_tabloid(t: &Tabloid) -> String {
    let mut parts = Vec::new();
    if let Some(s) = &t.spin {
        parts.push(format!("\\mathfrak{{s}}({})", s.letters().into_iter().map(tex_letter).collect::<String>()));
    }
    for row in t.rows() {
        parts.push(row.into_iter().map(tex_letter).collect());
    }
    format!("${}$", parts.join("/"))
}

fn tex_column(c: &Column) -> String {
    format!("$[{}]$", c.letters().iter().map(|&x| tex_letter(x)).collect::<Vec<_>>().join(","))
}

pub fn columns(fmt: Format, kind: AlgebraKind, height: usize, rows: &[(Column, bool)]) -> String {
    match fmt {
        Format::Json => json_text(&json!({
            "kind": kind.to_string(),
            "height": height,
            "count": rows.len(),
            "admissible": rows.iter().filter(|r| r.1).count(),
            "columns": rows.iter().map(|(c, a)| json!({"column": c.to_string(), "admissible": a})).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            csv_text(&["column", "admissible"], rows.iter().map(|(c, a)| vec![c.to_string(), a.to_string()]))
        }
        Format::Tex => {
            let mut s = String::from("\\begin{tabular}{ll}\ncolumn & admissible \\\\\n\\hline\n");
            for (c, a) in rows {
                s.push_str(&format!("{} & {} \\\\\n", tex_column(c), if *a { "yes" } else { "no" }));
            }
            s.push_str("\\end{tabular}\n");
            s
        }
    }
}

pub fn crystal(fmt: Format, shape: &Shape, vertices: &BTreeSet<Word>, edges: &[(Word, usize, Word)]) -> String {
    match fmt {
        Format::Json => json_text(&json!({
            "kind": shape.kind.to_string(),
            "lambda": shape.lambda.0,
            "vertices": vertices.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
            "edges": edges.iter().map(|(a, i, b)| json!([a.to_string(), i, b.to_string()])).collect::<Vec<_>>(),
        })),
        Format::Csv => csv_text(
            &["source", "i", "target"],
            edges.iter().map(|(a, i, b)| vec![a.to_string(), i.to_string(), b.to_string()]),
        ),
        Format::Tex => {
            let mut s = String::from("\\begin{tabular}{lcl}\nsource & $i$ & target \\\\\n\\hline\n");
            for (a, i, b) in edges {
                s.push_str(&format!("${a}$ & {i} & ${b}$ \\\\\n"));
            }
            s.push_str("\\end{tabular}\n");
            s
        }
    }
}

fn tex_sum<K: Ord + Clone>(v: &LinComb<K>, label: impl Fn(&K) -> String) -> String {
    let terms: Vec<String> =
        v.iter().map(|(k, p)| if p.is_one() { label(k) } else { format!("({}) {}", tex_poly(p), label(k)) }).collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

pub fn marsh(fmt: Format, kind: AlgebraKind, c: &Column, path: &MarshPath, g: &WedgeVector) -> String {
    match fmt {
        Format::Json => json_text(&json!({
            "kind": kind.to_string(),
            "column": c.to_string(),
            "start": path.start.to_string(),
            "path": path_json(&path.steps),
            "monomial": path_text(&path.steps),
            "global": wedge_vector_json(kind, c.height(), g),
        })),
        Format::Csv => csv_text(&["column", "coeff"], g.iter().map(|(x, p)| vec![x.to_string(), p.to_string()])),
        Format::Tex => format!("G({}) = {}\n", tex_column(c), tex_sum(g, tex_column)),
    }
}

pub fn apath(fmt: Format, shape: &Shape, t: &Tabloid, path: &APath, a: &ModuleVector) -> String {
    match fmt {
        Format::Json => json_text(&json!({
            "kind": shape.kind.to_string(),
            "lambda": shape.lambda.0,
            "tableau": t.to_string(),
            "path": path_json(&path.steps),
            "monomial": path_text(&path.steps),
            "chain": path.chain.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            "base": path.base.to_string(),
            "direct": path.direct,
            "expansion": a.to_json(),
        })),
        Format::Csv => csv_text(&["tabloid", "coeff"], a.terms.iter().map(|(x, p)| vec![x.to_string(), p.to_string()])),
        Format::Tex => format!("A({}) = {}\n", tex_tabloid(t), tex_sum(&a.terms, tex_tabloid)),
    }
}

fn tex_matrix(m: &CanonicalMatrix) -> String {
    let mut s = format!("% weight {}\n\\begin{{tabular}}{{l|{}}}\n", m.weight, "c".repeat(m.dimension()));
    let head: Vec<String> = m.cols.iter().map(tex_tabloid).collect();
    s.push_str(&format!(" & {} \\\\\n\\hline\n", head.join(" & ")));
    for r in &m.rows {
        let cells: Vec<String> = m
            .cols
            .iter()
            .map(|c| {
                let p = m.entry(r, c);
                if p.is_zero() {
                    ".".into()
                } else {
                    format!("${}$", tex_poly(&p))
                }
            })
            .collect();
        s.push_str(&format!("{} & {} \\\\\n", tex_tabloid(r), cells.join(" & ")));
    }
    s.push_str("\\end{tabular}\n");
    s
}

pub fn canonical(fmt: Format, matrices: &[CanonicalMatrix], single: bool) -> String {
    match fmt {
        Format::Json => {
            if single {
                json_text(&matrices[0].to_json())
            } else {
                json_text(&Value::Array(matrices.iter().map(|m| m.to_json()).collect()))
            }
        }
        Format::Csv => csv_text(
            &["weight", "row", "col", "entry"],
            matrices.iter().flat_map(|m| {
                m.sparse_entries().into_iter().map(move |(r, c, p)| {
                    vec![m.weight.to_string(), m.rows[r].to_string(), m.cols[c].to_string(), p.to_string()]
                })
            }),
        ),
        Format::Tex => matrices.iter().map(tex_matrix).collect::<Vec<_>>().join("\n"),
    }
}

pub fn check(fmt: Format, report: &Report) -> String {
    let outcomes = report.outcomes();
    match fmt {
        Format::Json => json_text(&json!({
            "passed": report.all_passed(),
            "properties": outcomes
                .iter()
                .map(|o| json!({
                    "name": o.name,
                    "passed": o.passed(),
                    "cases": o.cases,
                    "failures": o.failed,
                    "examples": o.examples,
                }))
                .collect::<Vec<_>>(),
        })),
        Format::Csv => csv_text(
            &["property", "passed", "cases", "failures"],
            outcomes
                .iter()
                .map(|o| vec![o.name.clone(), o.passed().to_string(), o.cases.to_string(), o.failed.to_string()]),
        ),
        Format::Tex => {
            let mut s = String::from("\\begin{tabular}{lrrl}\nproperty & cases & failures & status \\\\\n\\hline\n");
            for o in &outcomes {
                let name = o.name.replace('_', "\\_");
                let status = if o.passed() { "pass" } else { "fail" };
                s.push_str(&format!("{name} & {} & {} & {status} \\\\\n", o.cases, o.failed));
            }
            s.push_str("\\end{tabular}\n");
            s
        }
    }
}
