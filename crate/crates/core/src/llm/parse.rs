//! Structured-field extraction from free-form model replies.
//!
//! All parsers are total: any input yields a value or a typed error, never a panic.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum YesNo {
    Yes,
    No,
}

impl YesNo {
    pub fn is_yes(self) -> bool {
        self == YesNo::Yes
    }
}

/// Byte offsets just past the `:` of every `<field>:` label (case-insensitive,
/// word-bounded, tolerating markdown emphasis between the name and the colon).
fn label_ends(reply: &str, field: &str) -> Vec<usize> {
    let field = field.trim();
    if field.is_empty() {
        return Vec::new();
    }
    let hay = reply.as_bytes();
    let needle = field.as_bytes();
    let mut ends = Vec::new();
    let mut i = 0;
    while i + needle.len() <= hay.len() {
        if hay[i..i + needle.len()].eq_ignore_ascii_case(needle) {
            let boundary_before = i == 0 || !is_word(hay[i - 1]);
            let mut j = i + needle.len();
            while j < hay.len() && matches!(hay[j], b'*' | b'_' | b' ' | b'\t' | b'`') {
                j += 1;
            }
            let word_ends = i + needle.len() == hay.len() || !is_word(hay[i + needle.len()]);
            if boundary_before && word_ends && j < hay.len() && hay[j] == b':' {
                ends.push(j + 1);
                i = j + 1;
                continue;
            }
        }
        i += 1;
    }
    ends
}

fn is_word(b: u8) -> bool {
    b.is_ascii_alphanumeric() || b == b'_'
}

/// Reads the YES/NO token after the last `<field>:` label.
pub fn parse_yes_no(reply: &str, field: &str) -> Result<YesNo> {
    let Some(&end) = label_ends(reply, field).last() else {
        return Err(Error::MalformedReply(format!("field `{field}` not found")));
    };
    let rest = reply[end..].trim_start_matches(|c: char| {
        c.is_whitespace() || matches!(c, '*' | '_' | '\'' | '"' | '`' | '{' | '[' | '(')
    });
    let token: String = rest
        .chars()
        .take_while(|c| c.is_ascii_alphabetic())
        .collect();
    match token.to_ascii_lowercase().as_str() {
        "yes" => Ok(YesNo::Yes),
        "no" => Ok(YesNo::No),
        _ => Err(Error::MalformedReply(format!(
            "field `{field}` holds `{}` instead of YES/NO",
            rest.chars().take(20).collect::<String>()
        ))),
    }
}

fn looks_like_label(line: &str) -> bool {
    let line = line.trim().trim_start_matches(['*', '_']);
    match line.find(':') {
        Some(pos) if pos > 0 => line[..pos]
            .trim_end_matches(['*', '_', ' '])
            .chars()
            .all(|c| c.is_ascii_uppercase() || c == '_' || c.is_ascii_digit()),
        _ => false,
    }
}

fn clean_item(item: &str) -> Option<String> {
    let item = item.trim();
    let item = item
        .strip_prefix("- ")
        .or_else(|| item.strip_prefix("* "))
        .or_else(|| item.strip_prefix("• "))
        .unwrap_or(item);
    let item = strip_ordinal(item);
    let item = item.trim_matches(|c: char| c.is_whitespace() || matches!(c, '"' | '\'' | '`' | '<' | '>'));
    (!item.is_empty()).then(|| item.to_string())
}

fn strip_ordinal(item: &str) -> &str {
    let digits = item.chars().take_while(char::is_ascii_digit).count();
    if digits > 0 {
        if let Some(rest) = item[digits..].strip_prefix(". ") {
            return rest;
        }
    }
    item
}

/// Extracts the list after the last `<field>:` label. Accepts `[a, b]`, a comma
/// list on the same line, or bullet lines beneath the label.
pub fn parse_path_list(reply: &str, field: &str) -> Result<Vec<String>> {
    let Some(&end) = label_ends(reply, field).last() else {
        return Err(Error::MalformedReply(format!("field `{field}` not found")));
    };
    let rest = &reply[end..];
    let (same_line, below) = match rest.find('\n') {
        Some(pos) => (&rest[..pos], &rest[pos + 1..]),
        None => (rest, ""),
    };
    let same_line = same_line.trim().trim_matches(['*', '_']).trim();

    if let Some(open) = same_line.strip_prefix('[') {
        // a bracketed list may span lines
        let joined = format!("{open}\n{below}");
        let body = match joined.find(']') {
            Some(close) => &joined[..close],
            None => joined.as_str(),
        };
        return Ok(body.split([',', '\n']).filter_map(clean_item).collect());
    }
    if !same_line.is_empty() {
        if matches!(same_line.to_ascii_lowercase().as_str(), "none" | "n/a" | "null") {
            return Ok(Vec::new());
        }
        return Ok(same_line.split(',').filter_map(clean_item).collect());
    }
    let mut items = Vec::new();
    for line in below.lines() {
        if line.trim().is_empty() || looks_like_label(line) {
            break;
        }
        items.extend(clean_item(line));
    }
    Ok(items)
}

const SCRIPT_TAGS: [&str; 3] = ["python", "py", "python3"];

/// Returns the contents of the last closed fenced block tagged as Python. Untagged
/// blocks are used only when no tagged block exists.
pub fn extract_code_block(reply: &str) -> Result<String> {
    let mut tagged: Option<String> = None;
    let mut untagged: Option<String> = None;
    let mut open: Option<(String, Vec<&str>)> = None;
    for line in reply.lines() {
        let trimmed = line.trim_start();
        let indent = line.len() - trimmed.len();
        let is_fence = indent <= 3 && trimmed.starts_with("```");
        match (&mut open, is_fence) {
            (None, true) => {
                let info = trimmed.trim_start_matches('`').trim().to_ascii_lowercase();
                open = Some((info, Vec::new()));
            }
            (Some(_), true) if trimmed.trim_end().chars().all(|c| c == '`') => {
                let (info, lines) = open.take().unwrap_or_default();
                let mut body = lines.join("\n");
                body.push('\n');
                let lang = info.split_whitespace().next().unwrap_or_default();
                if SCRIPT_TAGS.contains(&lang) {
                    tagged = Some(body);
                } else if lang.is_empty() {
                    untagged = Some(body);
                }
            }
            (Some((_, lines)), _) => lines.push(line),
            (None, false) => {}
        }
    }
    tagged.or(untagged).ok_or(Error::NoCodeBlock)
}
