use super::{Component, CrossingId, Diagram, DiagramError, Pass, Role, Sign};

#[derive(Debug)]
enum Token {
    Pass(Pass),
    Empty,
    Separator,
}

fn syntax(position: usize, message: impl Into<String>) -> DiagramError {
    DiagramError::Syntax { position, message: message.into() }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, DiagramError> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;

    while i < bytes.len() {
        let start = i;
        match bytes[i] {
            b if b.is_ascii_whitespace() => {
                i += 1;
                continue;
            }
            b';' => {
                tokens.push((start, Token::Separator));
                i += 1;
            }
            b'(' => {
                if bytes.get(i + 1) != Some(&b')') {
                    return Err(syntax(start, "expected \"()\""));
                }
                tokens.push((start, Token::Empty));
                i += 2;
            }
            b'O' | b'U' => {
                let role = if bytes[i] == b'O' { Role::Over } else { Role::Under };
                i += 1;
                let digits = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if digits == i {
                    return Err(syntax(digits, "expected crossing number"));
                }
                let crossing = text[digits..i]
                    .parse::<u32>()
                    .ok()
                    .and_then(CrossingId::new)
                    .ok_or_else(|| syntax(digits, "crossing number must be an integer >= 1"))?;
                let sign = match bytes.get(i) {
                    Some(b'+') => Sign::Positive,
                    Some(b'-') => Sign::Negative,
                    _ => return Err(syntax(i, "expected '+' or '-'")),
                };
                i += 1;
                tokens.push((start, Token::Pass(Pass::new(crossing, role, sign))));
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(syntax(start, format!("unexpected character {ch:?}")));
            }
        }
        // tokens must be separated by whitespace, except around ';'
        if let Some(&next) = bytes.get(i) {
            let last_was_sep = matches!(tokens.last(), Some((_, Token::Separator)));
            if !(next.is_ascii_whitespace() || next == b';' || last_was_sep) {
                return Err(syntax(i, "expected whitespace between tokens"));
            }
        }
    }

    Ok(tokens)
}

/// Parses a signed Gauss code such as `"O1+ O2+ ; U1+ U2+"`.
pub fn parse(text: &str) -> Result<Diagram, DiagramError> {
    let tokens = tokenize(text)?;
    if tokens.is_empty() {
        return Err(syntax(0, "empty input"));
    }

    let mut components = Vec::new();
    // None: nothing read yet for the current component
    let mut current: Option<Vec<Pass>> = None;
    let mut saw_empty = false;
    let mut last_pos = 0;

    for (pos, token) in tokens {
        last_pos = pos;
        match token {
            Token::Separator => {
                let passes = current.take().ok_or_else(|| syntax(pos, "empty component (use \"()\")"))?;
                components.push(Component::new(passes));
                saw_empty = false;
            }
            Token::Empty => {
                if current.is_some() {
                    return Err(syntax(pos, "\"()\" must stand alone as a component"));
                }
                current = Some(Vec::new());
                saw_empty = true;
            }
            Token::Pass(pass) => {
                if saw_empty {
                    return Err(syntax(pos, "\"()\" must stand alone as a component"));
                }
                current.get_or_insert_with(Vec::new).push(pass);
            }
        }
    }

    let passes = current.ok_or_else(|| syntax(last_pos, "trailing ';' without a component"))?;
    components.push(Component::new(passes));

    Diagram::new(components)
}
