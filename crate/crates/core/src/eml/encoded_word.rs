//! RFC 2047 encoded-word decoding (`=?charset?B|Q?text?=`).
//!
//! Only the B and Q encodings over UTF-8 and ISO-8859-1 are decoded; any
//! other encoded-word, or one whose payload does not decode, is kept verbatim.

use base64::alphabet;
use base64::engine::{DecodePaddingMode, GeneralPurpose, GeneralPurposeConfig};
use base64::Engine;

const B64: GeneralPurpose = GeneralPurpose::new(
    &alphabet::STANDARD,
    GeneralPurposeConfig::new().with_decode_padding_mode(DecodePaddingMode::Indifferent),
);

#[derive(Clone, Copy)]
enum Charset {
    Utf8,
    Latin1,
}

impl Charset {
    fn lookup(name: &str) -> Option<Self> {
        // RFC 2231 language suffix: charset*lang
        let name = name.split('*').next().unwrap_or(name);
        match name.to_ascii_lowercase().as_str() {
            "utf-8" | "utf8" => Some(Charset::Utf8),
            "iso-8859-1" | "iso8859-1" | "latin1" => Some(Charset::Latin1),
            _ => None,
        }
    }

    fn decode(self, bytes: Vec<u8>) -> Option<String> {
        match self {
            Charset::Utf8 => String::from_utf8(bytes).ok(),
            Charset::Latin1 => Some(bytes.into_iter().map(char::from).collect()),
        }
    }
}

struct EncodedWord<'a> {
    /// the whole `=?...?=` token
    token: &'a str,
    decoded: Option<String>,
}

/// Parse an encoded word starting at the beginning of `s` (which starts
/// with `=?`).
fn parse_word(s: &str) -> Option<EncodedWord<'_>> {
    let body = s.strip_prefix("=?")?;
    let q1 = body.find('?')?;
    let charset = &body[..q1];
    let after_charset = &body[q1 + 1..];
    let mut enc_chars = after_charset.chars();
    let encoding = enc_chars.next()?;
    if enc_chars.next() != Some('?') {
        return None;
    }
    let payload_and_rest = &after_charset[encoding.len_utf8() + 1..];
    let end = payload_and_rest.find("?=")?;
    let payload = &payload_and_rest[..end];
    if charset.is_empty()
        || charset.contains(char::is_whitespace)
        || payload.contains(char::is_whitespace)
    {
        return None;
    }
    let token_len = 2 + q1 + 1 + encoding.len_utf8() + 1 + end + 2;
    let token = &s[..token_len];

    let decoded = Charset::lookup(charset).and_then(|cs| {
        let bytes = match encoding.to_ascii_uppercase() {
            'B' => B64.decode(payload).ok()?,
            'Q' => decode_q(payload)?,
            _ => return None,
        };
        cs.decode(bytes)
    });
    Some(EncodedWord { token, decoded })
}

fn hex_val(b: u8) -> Option<u8> {
    match b {
        b'0'..=b'9' => Some(b - b'0'),
        b'a'..=b'f' => Some(b - b'a' + 10),
        b'A'..=b'F' => Some(b - b'A' + 10),
        _ => None,
    }
}

fn decode_q(payload: &str) -> Option<Vec<u8>> {
    let bytes = payload.as_bytes();
    let mut out = Vec::with_capacity(bytes.len());
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b'_' => out.push(b' '),
            b'=' => {
                let hi = hex_val(*bytes.get(i + 1)?)?;
                let lo = hex_val(*bytes.get(i + 2)?)?;
                out.push(hi << 4 | lo);
                i += 2;
            }
            b => out.push(b),
        }
        i += 1;
    }
    Some(out)
}

/// Decode every encoded-word in a header value. Linear whitespace between
/// two adjacent decoded words is dropped.
pub fn decode_encoded_words(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    let mut rest = text;
    let mut last_was_word = false;

    while let Some(idx) = rest.find("=?") {
        let (prefix, candidate) = rest.split_at(idx);
        match parse_word(candidate) {
            Some(word) => {
                let joins_previous = last_was_word && prefix.chars().all(char::is_whitespace);
                match word.decoded {
                    Some(decoded) => {
                        if !joins_previous {
                            out.push_str(prefix);
                        }
                        out.push_str(&decoded);
                        last_was_word = true;
                    }
                    None => {
                        out.push_str(prefix);
                        out.push_str(word.token);
                        last_was_word = false;
                    }
                }
                rest = &candidate[word.token.len()..];
            }
            None => {
                out.push_str(prefix);
                out.push_str("=?");
                rest = &candidate[2..];
                last_was_word = false;
            }
        }
    }
    out.push_str(rest);
    out
}
