//! Text, CSV and JSON rendering. Reals go through `format_real`, so every
//! format carries the same 12 significant digits.

use std::io::{self, Write};

use serde_json::{json, Map, Value};

use cgsbound::report::Analysis;
use cgsbound::{format_real, BenchRow, BoundsReport, Graph, Strategy, Table1Row};

use crate::Format;

fn real(x: f64) -> String {
    format_real(x)
}

fn opt_real(x: Option<f64>) -> String {
    x.map(real).unwrap_or_default()
}

fn json_real(x: f64) -> Value {
    if x.is_finite() {
        serde_json::from_str(&format_real(x)).expect("formatted real is valid JSON")
    } else {
        Value::Null
    }
}

fn json_opt(x: Option<f64>) -> Value {
    x.map_or(Value::Null, json_real)
}

pub fn bounds_table<W: Write>(out: &mut W, name: &str, g: &Graph, a: &Analysis) -> io::Result<()> {
    let r = &a.report;
    let (eu, ev) = g.edge(r.argmax_edge);
    let mut lines: Vec<(String, String)> = vec![
        ("graph".into(), name.to_string()),
        ("n".into(), r.n.to_string()),
        ("edges".into(), r.edge_count.to_string()),
        ("diameter".into(), r.diameter.to_string()),
        ("lambda2".into(), real(r.lambda2)),
        ("mohar".into(), real(r.mohar_bound)),
        ("lu".into(), real(r.lu_bound)),
    ];
    for (s, b) in r.cgs_bounds() {
        lines.push((format!("cgs_{s}"), real(b)));
    }
    lines.push((
        "argmax_edge".into(),
        format!("{} ({}, {})", r.argmax_edge, g.label(eu), g.label(ev)),
    ));
    if let Some(conv) = r.optimizer_converged {
        lines.push(("optimizer_converged".into(), conv.to_string()));
    }
    if g.duplicate_edges() > 0 {
        lines.push(("duplicate_edges".into(), g.duplicate_edges().to_string()));
    }
    let width = lines.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    for (k, v) in lines {
        writeln!(out, "{k:<width$}  {v}")?;
    }
    Ok(())
}

const BOUNDS_HEADER: &str = "n,edge_count,diameter,lambda2,mohar_bound,lu_bound,\
cgs_single_path_bound,cgs_uniform_bound,cgs_optimized_bound,argmax_edge,optimizer_converged";

pub fn bounds_csv<W: Write>(out: &mut W, r: &BoundsReport) -> io::Result<()> {
    writeln!(out, "{BOUNDS_HEADER}")?;
    writeln!(
        out,
        "{},{},{},{},{},{},{},{},{},{},{}",
        r.n,
        r.edge_count,
        r.diameter,
        real(r.lambda2),
        real(r.mohar_bound),
        real(r.lu_bound),
        opt_real(r.cgs_single_path_bound),
        opt_real(r.cgs_uniform_bound),
        opt_real(r.cgs_optimized_bound),
        r.argmax_edge,
        r.optimizer_converged.map(|c| c.to_string()).unwrap_or_default()
    )
}

fn report_object(r: &BoundsReport) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("n".into(), json!(r.n));
    m.insert("edge_count".into(), json!(r.edge_count));
    m.insert("diameter".into(), json!(r.diameter));
    m.insert("lambda2".into(), json_real(r.lambda2));
    m.insert("mohar_bound".into(), json_real(r.mohar_bound));
    m.insert("lu_bound".into(), json_real(r.lu_bound));
    m.insert("cgs_single_path_bound".into(), json_opt(r.cgs_single_path_bound));
    m.insert("cgs_uniform_bound".into(), json_opt(r.cgs_uniform_bound));
    m.insert("cgs_optimized_bound".into(), json_opt(r.cgs_optimized_bound));
    m.insert("argmax_edge".into(), json!(r.argmax_edge));
    m.insert("optimizer_converged".into(), json!(r.optimizer_converged));
    m
}

pub fn bounds_json<W: Write>(
    out: &mut W,
    a: &Analysis,
    strategies: &[Strategy],
    with_scores: bool,
) -> io::Result<()> {
    let mut m = report_object(&a.report);
    if with_scores {
        let mut scores = Map::new();
        for &s in strategies {
            if let Some(es) = a.scores(s) {
                let list = es.scores.iter().map(|&x| json_real(x)).collect();
                scores.insert(s.name().into(), Value::Array(list));
            }
        }
        m.insert("scores".into(), Value::Object(scores));
    }
    serde_json::to_writer_pretty(&mut *out, &Value::Object(m))?;
    writeln!(out)
}

pub fn table1_table<W: Write>(out: &mut W, rows: &[Table1Row]) -> io::Result<()> {
    let header = [
        "graph", "n", "lambda2", "mohar", "lu", "cgs", "exp_lambda2", "exp_mohar", "exp_lu",
        "exp_cgs", "status",
    ];
    let body: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.graph.clone(),
                r.n.to_string(),
                real(r.computed.lambda2),
                real(r.computed.mohar),
                real(r.computed.lu),
                real(r.computed.cgs),
                real(r.expected.lambda2),
                real(r.expected.mohar),
                real(r.expected.lu),
                real(r.expected.cgs),
                if r.matches { "ok" } else { "MISMATCH" }.to_string(),
            ]
        })
        .collect();
    let widths: Vec<usize> = (0..header.len())
        .map(|c| body.iter().map(|r| r[c].len()).chain([header[c].len()]).max().unwrap())
        .collect();
    let line = |cells: Vec<&str>| {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    writeln!(out, "{}", line(header.to_vec()))?;
    for r in &body {
        writeln!(out, "{}", line(r.iter().map(String::as_str).collect()))?;
    }
    for r in rows {
        if let Some(note) = &r.note {
            writeln!(out, "note ({}): {note}", r.graph)?;
        }
    }
    Ok(())
}

pub fn table1_csv<W: Write>(out: &mut W, rows: &[Table1Row]) -> io::Result<()> {
    writeln!(
        out,
        "graph,n,lambda2,mohar,lu,cgs,expected_lambda2,expected_mohar,expected_lu,expected_cgs,tabulated_cgs,matches"
    )?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            r.graph,
            r.n,
            real(r.computed.lambda2),
            real(r.computed.mohar),
            real(r.computed.lu),
            real(r.computed.cgs),
            real(r.expected.lambda2),
            real(r.expected.mohar),
            real(r.expected.lu),
            real(r.expected.cgs),
            opt_real(r.tabulated_cgs),
            r.matches
        )?;
    }
    Ok(())
}

pub fn table1_json<W: Write>(out: &mut W, rows: &[Table1Row]) -> io::Result<()> {
    let form = |f: &cgsbound::report::ClosedForm| {
        json!({
            "lambda2": json_real(f.lambda2),
            "mohar": json_real(f.mohar),
            "lu": json_real(f.lu),
            "cgs": json_real(f.cgs),
        })
    };
    let list: Vec<Value> = rows
        .iter()
        .map(|r| {
            json!({
                "graph": r.graph,
                "n": r.n,
                "computed": form(&r.computed),
                "expected": form(&r.expected),
                "tabulated_cgs": json_opt(r.tabulated_cgs),
                "matches": r.matches,
                "note": r.note,
            })
        })
        .collect();
    serde_json::to_writer_pretty(&mut *out, &Value::Array(list))?;
    writeln!(out)
}

const BENCH_WIDTH: usize = 16;

pub fn bench_header<W: Write>(out: &mut W, format: Format) -> io::Result<()> {
    match format {
        Format::Csv => writeln!(out, "{}", BenchRow::HEADER),
        Format::Table => {
            let cols: Vec<String> = BenchRow::HEADER
                .split(',')
                .map(|c| format!("{c:>BENCH_WIDTH$}"))
                .collect();
            writeln!(out, "{}", cols.join(""))
        }
        Format::Json => Ok(()),
    }
}

pub fn bench_row<W: Write>(out: &mut W, format: Format, r: &BenchRow) -> io::Result<()> {
    let cells = [
        r.n.to_string(),
        real(r.p),
        r.seed.to_string(),
        real(r.lambda2),
        real(r.mohar),
        real(r.lu),
        real(r.cgs_single),
        real(r.cgs_uniform),
        real(r.cgs_opt),
    ];
    match format {
        Format::Csv => writeln!(out, "{}", cells.join(",")),
        Format::Table => {
            let cols: Vec<String> = cells.iter().map(|c| format!("{c:>BENCH_WIDTH$}")).collect();
            writeln!(out, "{}", cols.join(""))
        }
        Format::Json => {
            let v = json!({
                "n": r.n,
                "p": json_real(r.p),
                "seed": r.seed,
                "lambda2": json_real(r.lambda2),
                "mohar": json_real(r.mohar),
                "lu": json_real(r.lu),
                "cgs_single": json_real(r.cgs_single),
                "cgs_uniform": json_real(r.cgs_uniform),
                "cgs_opt": json_real(r.cgs_opt),
            });
            serde_json::to_writer(&mut *out, &v)?;
            writeln!(out)
        }
    }
}
