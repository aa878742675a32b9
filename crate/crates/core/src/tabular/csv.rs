//! Comma-separated values with RFC 4180 quoting.
//!
//! A bare `?` field is the missing marker. A text cell whose value is
//! literally `?` is written quoted (`"?"`) so the two stay distinguishable.

use std::borrow::Cow;
use std::collections::BTreeMap;
use std::io::{Read, Write};

use super::{
    format_number, infer_domain, parse_number, AttributeKind, AttributeSpec, Dataset, TabularError,
    Value, MISSING,
};

/// Column typing for [`read_csv`]. Columns without a hint are read as text.
/// A nominal hint with an empty domain infers the domain from the data in
/// first-occurrence order.
#[derive(Debug, Clone)]
pub struct CsvHints {
    pub relation: String,
    pub kinds: BTreeMap<String, AttributeKind>,
}

impl Default for CsvHints {
    fn default() -> Self {
        Self {
            relation: "emails".to_string(),
            kinds: BTreeMap::new(),
        }
    }
}

impl CsvHints {
    pub fn with_kind(mut self, name: impl Into<String>, kind: AttributeKind) -> Self {
        self.kinds.insert(name.into(), kind);
        self
    }

    /// Hints that reproduce the schema of `ds` exactly.
    pub fn from_dataset(ds: &Dataset) -> Self {
        Self {
            relation: ds.relation().to_string(),
            kinds: ds
                .schema()
                .iter()
                .map(|a| (a.name.clone(), a.kind.clone()))
                .collect(),
        }
    }
}

fn needs_quotes(s: &str) -> bool {
    s == MISSING || s.contains([',', '"', '\r', '\n'])
}

/// Quote a field when it contains a comma, double quote, CR or LF (or is
/// the bare missing marker), doubling any inner quotes.
pub fn escape_csv_field(s: &str) -> Cow<'_, str> {
    if needs_quotes(s) {
        Cow::Owned(format!("\"{}\"", s.replace('"', "\"\"")))
    } else {
        Cow::Borrowed(s)
    }
}

fn write_record<W: Write>(sink: &mut W, fields: &[Cow<'_, str>]) -> std::io::Result<()> {
    // a lone empty field would otherwise be indistinguishable from a blank line
    if fields.len() == 1 && fields[0].is_empty() {
        return sink.write_all(b"\"\"\n");
    }
    sink.write_all(fields.join(",").as_bytes())?;
    sink.write_all(b"\n")
}

/// Write `ds` as CSV with a header row and LF line endings.
pub fn write_csv<W: Write>(ds: &Dataset, mut sink: W) -> Result<(), TabularError> {
    let header: Vec<Cow<str>> = ds
        .schema()
        .iter()
        .map(|a| escape_csv_field(&a.name))
        .collect();
    write_record(&mut sink, &header)?;
    for row in ds.rows() {
        let fields: Vec<Cow<str>> = row
            .iter()
            .map(|cell| match cell {
                Value::Missing => Cow::Borrowed(MISSING),
                Value::Number(x) => Cow::Owned(format_number(*x)),
                Value::Text(s) => escape_csv_field(s),
            })
            .collect();
        write_record(&mut sink, &fields)?;
    }
    sink.flush()?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Field {
    text: String,
    quoted: bool,
}

impl Field {
    fn is_missing(&self) -> bool {
        !self.quoted && self.text == MISSING
    }
}

/// A parsed record and the 1-based line it starts on.
type Record = (usize, Vec<Field>);

fn parse_records(input: &str) -> Result<Vec<Record>, TabularError> {
    let mut records = Vec::new();
    let mut chars = input.chars().peekable();
    let mut line = 1;

    while chars.peek().is_some() {
        let start_line = line;
        let mut fields = Vec::new();
        loop {
            let mut field = Field {
                text: String::new(),
                quoted: false,
            };
            if chars.peek() == Some(&'"') {
                chars.next();
                field.quoted = true;
                loop {
                    match chars.next() {
                        None => return Err(TabularError::BadQuote { line: start_line }),
                        Some('"') => {
                            if chars.peek() == Some(&'"') {
                                chars.next();
                                field.text.push('"');
                            } else {
                                break;
                            }
                        }
                        Some(c) => {
                            if c == '\n' {
                                line += 1;
                            }
                            field.text.push(c);
                        }
                    }
                }
                match chars.peek() {
                    None | Some(',') | Some('\n') | Some('\r') => {}
                    Some(_) => return Err(TabularError::BadQuote { line }),
                }
            } else {
                while let Some(&c) = chars.peek() {
                    if c == ',' || c == '\n' || c == '\r' {
                        break;
                    }
                    if c == '"' {
                        return Err(TabularError::BadQuote { line });
                    }
                    field.text.push(c);
                    chars.next();
                }
            }
            fields.push(field);

            match chars.next() {
                Some(',') => continue,
                Some('\r') => {
                    if chars.peek() == Some(&'\n') {
                        chars.next();
                    }
                    line += 1;
                    break;
                }
                Some('\n') => {
                    line += 1;
                    break;
                }
                None => break,
                Some(_) => unreachable!("field loops stop only at delimiters"),
            }
        }
        records.push((start_line, fields));
    }
    Ok(records)
}

/// Read a CSV document whose first record is the header row.
pub fn read_csv<R: Read>(mut source: R, hints: &CsvHints) -> Result<Dataset, TabularError> {
    let mut input = String::new();
    source.read_to_string(&mut input)?;
    let input = input.strip_prefix('\u{feff}').unwrap_or(&input);

    let mut records = parse_records(input)?.into_iter();
    let (_, header) = records.next().ok_or(TabularError::MissingHeader)?;
    let body: Vec<Record> = records.collect();

    for (line, fields) in &body {
        if fields.len() != header.len() {
            return Err(TabularError::RaggedRow {
                line: *line,
                expected: header.len(),
                found: fields.len(),
            });
        }
    }

    let mut schema = Vec::with_capacity(header.len());
    for (col, name) in header.iter().enumerate() {
        let kind = match hints.kinds.get(&name.text) {
            None => AttributeKind::Text,
            Some(AttributeKind::Nominal(d)) if d.is_empty() => {
                AttributeKind::Nominal(infer_domain(
                    body.iter()
                        .map(|(_, f)| &f[col])
                        .filter(|f| !f.is_missing())
                        .map(|f| f.text.clone()),
                ))
            }
            Some(kind) => kind.clone(),
        };
        schema.push(AttributeSpec::new(name.text.clone(), kind));
    }

    let mut rows = Vec::with_capacity(body.len());
    for (line, fields) in body {
        let mut row = Vec::with_capacity(fields.len());
        for (spec, field) in schema.iter().zip(fields) {
            let cell = if field.is_missing() {
                Value::Missing
            } else if spec.kind.is_numeric() {
                let x = if field.quoted {
                    None
                } else {
                    parse_number(&field.text)
                };
                Value::Number(x.ok_or_else(|| TabularError::BadNumber {
                    line,
                    attribute: spec.name.clone(),
                    value: field.text.clone(),
                })?)
            } else {
                Value::Text(field.text)
            };
            row.push(cell);
        }
        rows.push(row);
    }

    Dataset::new(hints.relation.clone(), schema, rows)
}
