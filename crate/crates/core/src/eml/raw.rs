use std::path::{Path, PathBuf};

use super::EmlError;

const DEFAULT_CONTENT_TYPE: &str = "text/plain";
const MAX_MULTIPART_DEPTH: usize = 8;

/// A single leaf body part: its media type (lowercase `type/subtype`, no
/// parameters) and its undecoded payload bytes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BodyPart {
    pub content_type: String,
    pub payload: Vec<u8>,
}

/// A message split into unfolded headers and leaf body parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawEmail {
    pub source_path: Option<PathBuf>,
    /// Headers in file order; names keep their original case.
    pub headers: Vec<(String, String)>,
    pub body_parts: Vec<BodyPart>,
}

impl RawEmail {
    /// Value of the first header called `name` (case-insensitive).
    pub fn header(&self, name: &str) -> Option<&str> {
        self.headers
            .iter()
            .find(|(n, _)| n.eq_ignore_ascii_case(name))
            .map(|(_, v)| v.as_str())
    }

    pub fn headers_named<'a>(&'a self, name: &'a str) -> impl Iterator<Item = &'a str> + 'a {
        self.headers
            .iter()
            .filter(move |(n, _)| n.eq_ignore_ascii_case(name))
            .map(|(_, v)| v.as_str())
    }

    /// Top-level media type, `text/plain` when no Content-Type is present.
    pub fn content_type(&self) -> String {
        self.header("Content-Type")
            .map(|v| ContentType::parse(v).mime)
            .filter(|m| !m.is_empty())
            .unwrap_or_else(|| DEFAULT_CONTENT_TYPE.to_string())
    }
}

/// Parse raw message bytes.
///
/// Line endings may be CRLF or LF. Fails only when the input has neither a
/// header/body separator nor a single parseable header line.
pub fn parse_eml(bytes: &[u8]) -> Result<RawEmail, EmlError> {
    let block = split_header_block(bytes);
    let headers = unfold_headers(&block.header_lines);
    if !block.has_separator && headers.is_empty() {
        return Err(EmlError::MalformedInput(
            "no header/body separator and no parseable header line".into(),
        ));
    }

    let content_type = headers
        .iter()
        .find(|(n, _)| n.eq_ignore_ascii_case("Content-Type"))
        .map(|(_, v)| ContentType::parse(v))
        .filter(|ct| !ct.mime.is_empty())
        .unwrap_or_else(ContentType::default_plain);

    let mut body_parts = Vec::new();
    collect_parts(&content_type, block.body, 0, &mut body_parts);

    Ok(RawEmail {
        source_path: None,
        headers,
        body_parts,
    })
}

/// Read and parse a file, recording its path on the result.
pub fn read_eml(path: &Path) -> Result<RawEmail, EmlError> {
    let bytes = std::fs::read(path).map_err(|source| EmlError::FileUnreadable {
        path: path.to_path_buf(),
        source,
    })?;
    let mut raw = parse_eml(&bytes)?;
    raw.source_path = Some(path.to_path_buf());
    Ok(raw)
}

struct HeaderBlock<'a> {
    header_lines: Vec<&'a [u8]>,
    body: &'a [u8],
    has_separator: bool,
}

/// Lines of `bytes` with their terminators removed, paired with the offset
/// just past each line's terminator.
fn lines_with_offsets(bytes: &[u8]) -> impl Iterator<Item = (&[u8], usize)> {
    let mut pos = 0;
    std::iter::from_fn(move || {
        if pos >= bytes.len() {
            return None;
        }
        let (line_end, next) = match bytes[pos..].iter().position(|&b| b == b'\n') {
            Some(i) => (pos + i, pos + i + 1),
            None => (bytes.len(), bytes.len()),
        };
        let mut line = &bytes[pos..line_end];
        if let Some(stripped) = line.strip_suffix(b"\r") {
            line = stripped;
        }
        pos = next;
        Some((line, next))
    })
}

fn split_header_block(bytes: &[u8]) -> HeaderBlock<'_> {
    let mut header_lines = Vec::new();
    for (line, next) in lines_with_offsets(bytes) {
        if line.is_empty() {
            return HeaderBlock {
                header_lines,
                body: &bytes[next..],
                has_separator: true,
            };
        }
        header_lines.push(line);
    }
    HeaderBlock {
        header_lines,
        body: &[],
        has_separator: false,
    }
}

fn is_wsp(b: u8) -> bool {
    b == b' ' || b == b'\t'
}

fn split_field(line: &[u8]) -> Option<(&[u8], &[u8])> {
    let colon = line.iter().position(|&b| b == b':')?;
    let mut name = &line[..colon];
    // obsolete syntax allows whitespace between the field name and the colon
    while let Some((&last, rest)) = name.split_last() {
        if is_wsp(last) {
            name = rest;
        } else {
            break;
        }
    }
    if name.is_empty() || !name.iter().all(|&b| (33..=126).contains(&b)) {
        return None;
    }
    Some((name, &line[colon + 1..]))
}

pub(crate) fn bytes_to_text(bytes: &[u8]) -> String {
    match std::str::from_utf8(bytes) {
        Ok(s) => s.to_string(),
        // legacy exports are usually Latin-1 when they are not UTF-8
        Err(_) => bytes.iter().map(|&b| b as char).collect(),
    }
}

/// Header text with any stray CR (one not part of a CRLF) turned into a space.
fn header_text(bytes: &[u8]) -> String {
    bytes_to_text(bytes).replace('\r', " ")
}

fn unfold_headers(lines: &[&[u8]]) -> Vec<(String, String)> {
    let mut headers: Vec<(String, String)> = Vec::new();
    for line in lines {
        if line.first().copied().is_some_and(is_wsp) {
            if let Some((_, value)) = headers.last_mut() {
                let cont = header_text(line);
                let cont = cont.trim();
                if !cont.is_empty() {
                    if !value.is_empty() {
                        value.push(' ');
                    }
                    value.push_str(cont);
                }
            }
            continue;
        }
        if let Some((name, value)) = split_field(line) {
            headers.push((header_text(name), header_text(value).trim().to_string()));
        }
    }
    headers
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct ContentType {
    mime: String,
    params: Vec<(String, String)>,
}

impl ContentType {
    fn default_plain() -> Self {
        Self {
            mime: DEFAULT_CONTENT_TYPE.to_string(),
            params: Vec::new(),
        }
    }

    fn parse(value: &str) -> Self {
        let mut segments = split_unquoted(value, ';').into_iter();
        let mime = segments
            .next()
            .map(|s| strip_comments(&s).trim().to_ascii_lowercase())
            .unwrap_or_default();
        let params = segments
            .filter_map(|seg| {
                let (name, val) = seg.split_once('=')?;
                let val = val.trim();
                let val = match val.strip_prefix('"') {
                    Some(inner) => unquote(inner),
                    None => strip_comments(val).trim().to_string(),
                };
                Some((name.trim().to_ascii_lowercase(), val))
            })
            .collect();
        Self { mime, params }
    }

    fn param(&self, name: &str) -> Option<&str> {
        self.params
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| v.as_str())
    }

    fn boundary(&self) -> Option<&str> {
        if !self.mime.starts_with("multipart/") {
            return None;
        }
        self.param("boundary").filter(|b| !b.is_empty())
    }
}

fn split_unquoted(value: &str, sep: char) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut in_quotes = false;
    let mut escaped = false;
    for c in value.chars() {
        if escaped {
            cur.push(c);
            escaped = false;
            continue;
        }
        match c {
            '\\' if in_quotes => {
                cur.push(c);
                escaped = true;
            }
            '"' => {
                in_quotes = !in_quotes;
                cur.push(c);
            }
            c if c == sep && !in_quotes => out.push(std::mem::take(&mut cur)),
            c => cur.push(c),
        }
    }
    out.push(cur);
    out
}

/// Content of a quoted string after its opening quote.
fn unquote(inner: &str) -> String {
    let mut out = String::new();
    let mut chars = inner.chars();
    while let Some(c) = chars.next() {
        match c {
            '\\' => {
                if let Some(next) = chars.next() {
                    out.push(next);
                }
            }
            '"' => break,
            c => out.push(c),
        }
    }
    out
}

fn strip_comments(value: &str) -> String {
    let mut out = String::new();
    let mut depth = 0usize;
    for c in value.chars() {
        match c {
            '(' => depth += 1,
            ')' if depth > 0 => depth -= 1,
            c if depth == 0 => out.push(c),
            _ => {}
        }
    }
    out
}

fn collect_parts(ct: &ContentType, body: &[u8], depth: usize, out: &mut Vec<BodyPart>) {
    if depth < MAX_MULTIPART_DEPTH {
        if let Some(boundary) = ct.boundary() {
            if let Some(parts) = split_multipart(body, boundary) {
                let child_default = if ct.mime == "multipart/digest" {
                    "message/rfc822"
                } else {
                    DEFAULT_CONTENT_TYPE
                };
                for part in parts {
                    let block = split_header_block(part);
                    let headers = unfold_headers(&block.header_lines);
                    let part_ct = headers
                        .iter()
                        .find(|(n, _)| n.eq_ignore_ascii_case("Content-Type"))
                        .map(|(_, v)| ContentType::parse(v))
                        .filter(|c| !c.mime.is_empty())
                        .unwrap_or_else(|| ContentType {
                            mime: child_default.to_string(),
                            params: Vec::new(),
                        });
                    collect_parts(&part_ct, block.body, depth + 1, out);
                }
                return;
            }
        }
    }
    out.push(BodyPart {
        content_type: ct.mime.clone(),
        payload: body.to_vec(),
    });
}

/// Split a multipart body on its boundary delimiter lines. Returns `None`
/// when no delimiter line is present at all.
fn split_multipart<'a>(body: &'a [u8], boundary: &str) -> Option<Vec<&'a [u8]>> {
    let delimiter = format!("--{boundary}");
    let delimiter = delimiter.as_bytes();

    let mut parts = Vec::new();
    // start offset of the current part's content
    let mut part_start: Option<usize> = None;
    let mut line_start = 0;
    let mut seen_delimiter = false;

    for (line, next) in lines_with_offsets(body) {
        if let Some(rest) = line.strip_prefix(delimiter) {
            let closing = rest.starts_with(b"--");
            let tail = if closing { &rest[2..] } else { rest };
            if tail.iter().all(|&b| is_wsp(b)) {
                seen_delimiter = true;
                if let Some(start) = part_start.take() {
                    // the line break before a delimiter belongs to the delimiter
                    let mut end = line_start;
                    if end > start && body[end - 1] == b'\n' {
                        end -= 1;
                        if end > start && body[end - 1] == b'\r' {
                            end -= 1;
                        }
                    }
                    parts.push(&body[start..end.max(start)]);
                }
                if closing {
                    return Some(parts);
                }
                part_start = Some(next);
                line_start = next;
                continue;
            }
        }
        line_start = next;
    }

    if !seen_delimiter {
        return None;
    }
    // missing close delimiter: keep whatever the last part holds
    if let Some(start) = part_start {
        parts.push(&body[start.min(body.len())..]);
    }
    Some(parts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_message() {
        let raw = parse_eml(b"From: a@x.com\r\nSubject: hi\r\n\r\nbody").unwrap();
        assert_eq!(raw.headers.len(), 2);
        assert_eq!(raw.headers[0], ("From".into(), "a@x.com".into()));
        assert_eq!(raw.body_parts.len(), 1);
        assert_eq!(raw.body_parts[0].content_type, "text/plain");
        assert_eq!(raw.body_parts[0].payload, b"body");
    }

    #[test]
    fn unfolds_continuation_lines() {
        let raw = parse_eml(b"Subject: line1\r\n line2\r\n\r\n.").unwrap();
        assert_eq!(raw.header("subject"), Some("line1 line2"));

        let raw = parse_eml(b"Subject: a\n\t\tb\n   c\nX: y\n\n").unwrap();
        assert_eq!(raw.header("Subject"), Some("a b c"));
        assert_eq!(raw.header("X"), Some("y"));
    }

    #[test]
    fn header_values_have_no_line_breaks() {
        let raw = parse_eml(b"A: 1\r\n 2\r\n\t3\r\nB:\r\n x\r\nC: a\rb\r\n\r\n").unwrap();
        for (_, v) in &raw.headers {
            assert!(!v.contains('\r') && !v.contains('\n'));
        }
        assert_eq!(raw.header("B"), Some("x"));
    }

    #[test]
    fn keeps_header_order_and_case() {
        let raw = parse_eml(b"X-B: 2\nx-a: 1\nSUBJECT: s\n\n").unwrap();
        let names: Vec<_> = raw.headers.iter().map(|(n, _)| n.as_str()).collect();
        assert_eq!(names, ["X-B", "x-a", "SUBJECT"]);
    }

    #[test]
    fn headers_without_separator_are_accepted() {
        let raw = parse_eml(b"From: a@b.c\nSubject: x").unwrap();
        assert_eq!(raw.headers.len(), 2);
        assert_eq!(raw.body_parts[0].payload, b"");
    }

    #[test]
    fn garbage_without_separator_is_malformed() {
        assert!(matches!(parse_eml(b""), Err(EmlError::MalformedInput(_))));
        assert!(matches!(
            parse_eml(b"X-Mailer Outlook Expr"),
            Err(EmlError::MalformedInput(_))
        ));
        assert!(parse_eml(b"no header here\n\nbody").is_ok());
    }

    #[test]
    fn top_level_content_type_is_used_for_single_part() {
        let raw = parse_eml(b"Content-Type: TEXT/HTML; charset=utf-8\n\n<p>x</p>").unwrap();
        assert_eq!(raw.content_type(), "text/html");
        assert_eq!(raw.body_parts[0].content_type, "text/html");
    }

    #[test]
    fn splits_multipart_alternative() {
        let msg = b"Content-Type: multipart/alternative; boundary=\"b1\"\r\n\r\n\
preamble\r\n--b1\r\nContent-Type: text/plain\r\n\r\nplain\r\n--b1\r\n\
Content-Type: text/html\r\n\r\n<b>html</b>\r\n--b1--\r\nepilogue";
        let raw = parse_eml(msg).unwrap();
        assert_eq!(raw.body_parts.len(), 2);
        assert_eq!(raw.body_parts[0].content_type, "text/plain");
        assert_eq!(raw.body_parts[0].payload, b"plain");
        assert_eq!(raw.body_parts[1].content_type, "text/html");
        assert_eq!(raw.body_parts[1].payload, b"<b>html</b>");
    }

    #[test]
    fn flattens_nested_multipart() {
        let msg = b"Content-Type: multipart/mixed; boundary=outer\n\n\
--outer\nContent-Type: multipart/alternative; boundary=inner\n\n\
--inner\n\nplain default\n--inner\nContent-Type: text/html\n\n<i>x</i>\n--inner--\n\
--outer\nContent-Type: application/pdf\n\n%PDF\n--outer--\n";
        let raw = parse_eml(msg).unwrap();
        let types: Vec<_> = raw
            .body_parts
            .iter()
            .map(|p| p.content_type.as_str())
            .collect();
        assert_eq!(types, ["text/plain", "text/html", "application/pdf"]);
    }

    #[test]
    fn multipart_without_delimiters_is_one_part() {
        let raw = parse_eml(b"Content-Type: multipart/mixed; boundary=zz\n\nno parts").unwrap();
        assert_eq!(raw.body_parts.len(), 1);
        assert_eq!(raw.body_parts[0].content_type, "multipart/mixed");
    }

    #[test]
    fn content_type_parameters() {
        let ct = ContentType::parse("multipart/mixed (c); charset=\"a;b\"; boundary=\"x\\\"y\"");
        assert_eq!(ct.mime, "multipart/mixed");
        assert_eq!(ct.param("charset"), Some("a;b"));
        assert_eq!(ct.param("boundary"), Some("x\"y"));
    }

    #[test]
    fn latin1_header_bytes_survive() {
        let raw = parse_eml(b"Subject: caf\xe9\n\n").unwrap();
        assert_eq!(raw.header("Subject"), Some("café"));
    }
}
