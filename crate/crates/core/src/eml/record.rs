use super::{decode_encoded_words, parse_address_list, parse_rfc5322_date, RawEmail};

/// A message reduced to the six canonical attributes. `None` is the missing
/// marker; absent values are never stored as empty strings.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EmailRecord {
    /// UTC seconds since the Unix epoch.
    pub date: Option<i64>,
    pub message_id: Option<String>,
    /// Lowercase addr-specs in header order.
    pub cc: Vec<String>,
    pub from_addr: Option<String>,
    pub subject: Option<String>,
    pub has_html: bool,
}

fn normalize_addr(addr: &str) -> Option<String> {
    let lower = addr.trim().to_lowercase();
    (lower.matches('@').count() == 1).then_some(lower)
}

fn strip_message_id(value: &str) -> Option<String> {
    let value = value.trim();
    let id = match (value.find('<'), value.find('>')) {
        (Some(open), Some(close)) if open < close => &value[open + 1..close],
        _ => value,
    };
    let id = id.trim();
    (!id.is_empty()).then(|| id.to_string())
}

/// Reduce a parsed message to an [`EmailRecord`]. Every field that cannot be
/// interpreted degrades to the missing marker.
pub fn extract_record(raw: &RawEmail) -> EmailRecord {
    let date = raw.header("Date").and_then(parse_rfc5322_date);
    let message_id = raw.header("Message-ID").and_then(strip_message_id);
    let from_addr = raw
        .header("From")
        .and_then(|v| parse_address_list(v).into_iter().next())
        .and_then(|mb| normalize_addr(&mb.address));
    let cc = raw
        .headers_named("Cc")
        .flat_map(parse_address_list)
        .filter_map(|mb| normalize_addr(&mb.address))
        .collect();
    let subject = raw.header("Subject").map(decode_encoded_words);
    let has_html = raw.content_type() == "text/html"
        || raw.body_parts.iter().any(|p| p.content_type == "text/html");

    EmailRecord {
        date,
        message_id,
        cc,
        from_addr,
        subject,
        has_html,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eml::parse_eml;

    fn record(msg: &str) -> EmailRecord {
        extract_record(&parse_eml(msg.as_bytes()).unwrap())
    }

    #[test]
    fn from_is_lowercased_addr_spec() {
        assert_eq!(
            record("From: Bob <BOB@X.COM>\n\n").from_addr.as_deref(),
            Some("bob@x.com")
        );
    }

    #[test]
    fn message_id_brackets_stripped() {
        assert_eq!(
            record("Message-ID: <abc@host>\n\n").message_id.as_deref(),
            Some("abc@host")
        );
        assert_eq!(record("Message-Id:   <>\n\n").message_id, None);
    }

    #[test]
    fn subject_is_decoded() {
        assert_eq!(
            record("Subject: =?UTF-8?B?aGVsbG8=?=\n\n")
                .subject
                .as_deref(),
            Some("hello")
        );
    }

    #[test]
    fn missing_everything() {
        let r = record("X-Other: 1\n\nbody");
        assert_eq!(r, EmailRecord::default());
    }

    #[test]
    fn bad_fields_degrade_to_missing() {
        let r = record("Date: someday\nFrom: not-an-address\nCc: a@@b, ok@X.org\n\n");
        assert_eq!(r.date, None);
        assert_eq!(r.from_addr, None);
        assert_eq!(r.cc, ["ok@x.org"]);
    }

    #[test]
    fn cc_across_multiple_headers() {
        let r = record("Cc: A@x.org, \"B, b\" <b@Y.org>\nCC: c@z.org\n\n");
        assert_eq!(r.cc, ["a@x.org", "b@y.org", "c@z.org"]);
    }

    #[test]
    fn html_detection() {
        assert!(record("Content-Type: text/html\n\n<p>").has_html);
        assert!(!record("Content-Type: text/plain\n\nx").has_html);
        let multi = "Content-Type: multipart/alternative; boundary=q\n\n--q\n\nplain\n--q\nContent-Type: Text/HTML; charset=us-ascii\n\n<p>\n--q--\n";
        assert!(record(multi).has_html);
    }
}
