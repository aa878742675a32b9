use super::decode_encoded_words;

/// One mailbox from an address list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mailbox {
    pub display_name: Option<String>,
    /// The addr-spec exactly as written (case preserved).
    pub address: String,
}

#[derive(Default)]
struct Token {
    /// text outside angle brackets, comments removed
    phrase: String,
    /// text inside the first angle-bracket pair
    angle: Option<String>,
}

impl Token {
    fn finish(self) -> Option<Mailbox> {
        let phrase = self.phrase.trim();
        let (address, display) = match self.angle {
            Some(angle) => {
                // obs-route "@a,@b:addr" keeps only the part after the colon
                let addr = angle.rsplit(':').next().unwrap_or("").trim().to_string();
                (addr, (!phrase.is_empty()).then(|| phrase.to_string()))
            }
            None => (phrase.split_whitespace().collect::<String>(), None),
        };
        if address.is_empty() {
            return None;
        }
        let display_name = display
            .map(|d| decode_encoded_words(d.trim_matches('"').trim()))
            .filter(|d| !d.is_empty());
        Some(Mailbox {
            display_name,
            address,
        })
    }
}

/// Split an RFC 5322 address-list into mailboxes. Group syntax
/// (`name: a@b, c@d;`) is flattened and the group name dropped.
pub fn parse_address_list(value: &str) -> Vec<Mailbox> {
    let mut out = Vec::new();
    let mut token = Token::default();
    let mut in_quotes = false;
    let mut comment_depth = 0usize;
    let mut in_angle = false;
    let mut chars = value.chars();

    while let Some(c) = chars.next() {
        if comment_depth > 0 {
            match c {
                '(' => comment_depth += 1,
                ')' => comment_depth -= 1,
                '\\' => {
                    chars.next();
                }
                _ => {}
            }
            continue;
        }
        if in_quotes {
            match c {
                '"' => in_quotes = false,
                '\\' => {
                    if let Some(escaped) = chars.next() {
                        push(&mut token, in_angle, escaped);
                    }
                    continue;
                }
                _ => {}
            }
            push(&mut token, in_angle, c);
            continue;
        }
        match c {
            '"' => {
                in_quotes = true;
                push(&mut token, in_angle, c);
            }
            '(' => comment_depth = 1,
            '<' if !in_angle => {
                in_angle = true;
                token.angle.get_or_insert_with(String::new);
            }
            '>' if in_angle => in_angle = false,
            ',' | ';' if !in_angle => {
                out.extend(std::mem::take(&mut token).finish());
            }
            // group display name: discard what was collected so far
            ':' if !in_angle && token.angle.is_none() => token = Token::default(),
            c => push(&mut token, in_angle, c),
        }
    }
    out.extend(token.finish());
    out
}

fn push(token: &mut Token, in_angle: bool, c: char) {
    if in_angle {
        token.angle.get_or_insert_with(String::new).push(c);
    } else {
        token.phrase.push(c);
    }
}
