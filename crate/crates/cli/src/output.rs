//! Rendering of command results as JSON lines, CSV or Markdown tables.

use std::io::Write;

use clap::ValueEnum;
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Md,
}

/// A named table of flat-ish JSON objects. Every row of a section has the
/// same keys in the same order.
#[derive(Clone, Debug)]
pub struct Section {
    pub name: &'static str,
    pub rows: Vec<Map<String, Value>>,
}

impl Section {
    pub fn new(name: &'static str) -> Self {
        Section { name, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Value) {
        match row {
            Value::Object(map) => self.rows.push(map),
            other => panic!("section rows must be objects, got {other}"),
        }
    }
}

/// Cells are strings as-is, anything nested as compact JSON.
fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn columns(section: &Section) -> Vec<&str> {
    section.rows.first().map(|r| r.keys().map(String::as_str).collect()).unwrap_or_default()
}

pub fn render(sections: &[Section], format: Format, out: &mut dyn Write) -> std::io::Result<()> {
    match format {
        Format::Json => {
            for row in sections.iter().flat_map(|s| &s.rows) {
                serde_json::to_writer(&mut *out, row)?;
                writeln!(out)?;
            }
        }
        Format::Csv => {
            for (i, section) in sections.iter().enumerate() {
                if i > 0 {
                    writeln!(out)?;
                }
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(columns(section))?;
                for row in &section.rows {
                    w.write_record(row.values().map(cell))?;
                }
                out.write_all(&w.into_inner().map_err(|e| e.into_error())?)?;
            }
        }
        Format::Md => {
            for (i, section) in sections.iter().enumerate() {
                if i > 0 {
                    writeln!(out)?;
                }
                let cols = columns(section);
                writeln!(out, "### {}\n", section.name)?;
                writeln!(out, "| {} |", cols.join(" | "))?;
                writeln!(out, "|{}", " --- |".repeat(cols.len()))?;
                for row in &section.rows {
                    let cells: Vec<String> = row.values().map(|v| cell(v).replace('|', "\\|")).collect();
                    writeln!(out, "| {} |", cells.join(" | "))?;
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn sample() -> Vec<Section> {
        let mut s = Section::new("rows");
        s.push(json!({"t": 1, "value": "1/2", "ok": true}));
        s.push(json!({"t": 2, "value": "a|b", "ok": false}));
        vec![s]
    }

    fn text(format: Format) -> String {
        let mut buf = Vec::new();
        render(&sample(), format, &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn json_lines_keep_key_order() {
        assert_eq!(
            text(Format::Json),
            "{\"t\":1,\"value\":\"1/2\",\"ok\":true}\n{\"t\":2,\"value\":\"a|b\",\"ok\":false}\n"
        );
    }

    #[test]
    fn csv_has_header() {
        assert_eq!(text(Format::Csv), "t,value,ok\n1,1/2,true\n2,a|b,false\n");
    }

    #[test]
    fn markdown_escapes_pipes() {
        let md = text(Format::Md);
        assert!(md.starts_with("### rows\n\n| t | value | ok |\n| --- | --- | --- |\n"));
        assert!(md.contains("| 2 | a\\|b | false |"));
    }
}
