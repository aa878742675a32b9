use chrono::NaiveDate;

const MONTHS: [&str; 12] = [
    "jan", "feb", "mar", "apr", "may", "jun", "jul", "aug", "sep", "oct", "nov", "dec",
];
const WEEKDAYS: [&str; 7] = ["mon", "tue", "wed", "thu", "fri", "sat", "sun"];

fn strip_comments(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    let mut depth = 0usize;
    for c in s.chars() {
        match c {
            '(' => depth += 1,
            ')' if depth > 0 => {
                depth -= 1;
                out.push(' ');
            }
            c if depth == 0 => out.push(c),
            _ => {}
        }
    }
    out
}

fn zone_offset_seconds(token: &str) -> Option<i64> {
    let bytes = token.as_bytes();
    if let Some(sign) = match bytes.first() {
        Some(b'+') => Some(1),
        Some(b'-') => Some(-1),
        _ => None,
    } {
        let digits = &token[1..];
        if digits.len() != 4 || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let hours: i64 = digits[..2].parse().ok()?;
        let minutes: i64 = digits[2..].parse().ok()?;
        if minutes > 59 {
            return None;
        }
        return Some(sign * (hours * 3600 + minutes * 60));
    }
    if !token.bytes().all(|b| b.is_ascii_alphabetic()) {
        return None;
    }
    let hours = match token.to_ascii_uppercase().as_str() {
        "UT" | "GMT" | "Z" => 0,
        "EDT" => -4,
        "EST" | "CDT" => -5,
        "CST" | "MDT" => -6,
        "MST" | "PDT" => -7,
        "PST" => -8,
        // military and unrecognised zones carry no reliable offset
        _ => 0,
    };
    Some(hours * 3600)
}

fn parse_time(token: &str) -> Option<(u32, u32, u32)> {
    let mut fields = token.split(':');
    let hour: u32 = fields.next()?.parse().ok()?;
    let minute: u32 = fields.next()?.parse().ok()?;
    let second: u32 = match fields.next() {
        Some(s) => s.parse().ok()?,
        None => 0,
    };
    if fields.next().is_some() || hour > 23 || minute > 59 || second > 60 {
        return None;
    }
    Some((hour, minute, second))
}

fn parse_year(token: &str) -> Option<i32> {
    if token.is_empty() || !token.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let value: i32 = token.parse().ok()?;
    Some(match token.len() {
        // obsolete two-digit years: 00-49 are 2000-2049, 50-99 are 1950-1999
        2 if value < 50 => 2000 + value,
        2 => 1900 + value,
        3 => 1900 + value,
        1 => return None,
        _ => value,
    })
}

/// Parse an RFC 5322 `date-time` (including the obsolete forms) into UTC
/// seconds since the Unix epoch. Returns `None` when the text is not a
/// recognisable date.
pub fn parse_rfc5322_date(value: &str) -> Option<i64> {
    let cleaned = strip_comments(value).replace(',', " ");
    let mut tokens = cleaned.split_whitespace().peekable();

    if let Some(first) = tokens.peek() {
        let lower = first.to_ascii_lowercase();
        if lower.len() >= 3 && WEEKDAYS.iter().any(|d| lower.starts_with(d)) {
            tokens.next();
        }
    }

    let day: u32 = tokens.next()?.parse().ok()?;
    let month_token = tokens.next()?.to_ascii_lowercase();
    let month = MONTHS
        .iter()
        .position(|m| month_token.len() >= 3 && month_token.starts_with(m))? as u32
        + 1;
    let year = parse_year(tokens.next()?)?;
    let (hour, minute, second) = parse_time(tokens.next()?)?;
    let offset = match tokens.next() {
        Some(zone) => zone_offset_seconds(zone)?,
        None => 0,
    };

    let date = NaiveDate::from_ymd_opt(year, month, day)?;
    // a leap second is folded into the following second
    let (second, leap) = if second == 60 { (59, 1) } else { (second, 0) };
    let local = date
        .and_hms_opt(hour, minute, second)?
        .and_utc()
        .timestamp()
        + leap;
    Some(local - offset)
}
