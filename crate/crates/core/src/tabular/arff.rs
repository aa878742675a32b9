use std::io::Write;

use super::{format_number, AttributeKind, Dataset, TabularError, Value, MISSING};

/// Single-quote `s`, escaping backslash, quote and control characters.
fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('\'');
    for c in s.chars() {
        match c {
            '\\' => out.push_str("\\\\"),
            '\'' => out.push_str("\\'"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c => out.push(c),
        }
    }
    out.push('\'');
    out
}

/// Names and nominal labels are written bare unless they would confuse the
/// ARFF tokenizer.
fn token(s: &str) -> String {
    let plain = !s.is_empty()
        && s != MISSING
        && !s.starts_with(['%', '@'])
        && !s
            .chars()
            .any(|c| c.is_whitespace() || matches!(c, ',' | '{' | '}' | '\'' | '"' | '\\' | '%'));
    if plain {
        s.to_string()
    } else {
        quote(s)
    }
}

/// Write `ds` in ARFF. Date attributes are declared numeric (epoch seconds)
/// with a comment line saying so.
pub fn write_arff<W: Write>(ds: &Dataset, mut sink: W) -> Result<(), TabularError> {
    writeln!(sink, "@relation {}", token(ds.relation()))?;
    writeln!(sink)?;
    for attr in ds.schema() {
        let name = token(&attr.name);
        match &attr.kind {
            AttributeKind::Numeric => writeln!(sink, "@attribute {name} numeric")?,
            AttributeKind::Date => {
                writeln!(
                    sink,
                    "% {}: seconds since 1970-01-01T00:00:00Z",
                    attr.name.replace('\n', " ")
                )?;
                writeln!(sink, "@attribute {name} numeric")?;
            }
            AttributeKind::Text => writeln!(sink, "@attribute {name} string")?,
            AttributeKind::Nominal(domain) => {
                let labels: Vec<String> = domain.iter().map(|l| token(l)).collect();
                writeln!(sink, "@attribute {name} {{{}}}", labels.join(","))?;
            }
        }
    }
    writeln!(sink)?;
    writeln!(sink, "@data")?;
    for row in ds.rows() {
        let cells: Vec<String> = ds
            .schema()
            .iter()
            .zip(row)
            .map(|(attr, cell)| match (cell, &attr.kind) {
                (Value::Missing, _) => MISSING.to_string(),
                (Value::Number(x), _) => format_number(*x),
                (Value::Text(s), AttributeKind::Nominal(_)) => token(s),
                (Value::Text(s), _) => quote(s),
            })
            .collect();
        writeln!(sink, "{}", cells.join(","))?;
    }
    sink.flush()?;
    Ok(())
}
