use crate::parser::SourceSpan;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TokenKind {
    Ident(String),
    /// `12`, `0.25` or `1/3`, kept as text until a bound or level is built.
    Number(String),
    LBracket,
    RBracket,
    LParen,
    RParen,
    Comma,
    Bang,
    Amp,
    Pipe,
    Arrow,
    Invalid(String),
    Eof,
}

impl TokenKind {
    pub fn describe(&self) -> String {
        match self {
            TokenKind::Ident(s) | TokenKind::Number(s) | TokenKind::Invalid(s) => format!("`{s}`"),
            TokenKind::LBracket => "`[`".into(),
            TokenKind::RBracket => "`]`".into(),
            TokenKind::LParen => "`(`".into(),
            TokenKind::RParen => "`)`".into(),
            TokenKind::Comma => "`,`".into(),
            TokenKind::Bang => "`!`".into(),
            TokenKind::Amp => "`&`".into(),
            TokenKind::Pipe => "`|`".into(),
            TokenKind::Arrow => "`->`".into(),
            TokenKind::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Token {
    pub kind: TokenKind,
    pub span: SourceSpan,
}

fn is_punct(c: char) -> bool {
    matches!(c, '[' | ']' | '(' | ')' | ',' | '!' | '&' | '|' | '-' | '>' | '#')
}

fn is_ident(word: &str) -> bool {
    let mut chars = word.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn is_number(word: &str) -> bool {
    fn decimal(s: &str) -> bool {
        let (whole, frac) = match s.split_once('.') {
            Some((w, f)) => (w, Some(f)),
            None => (s, None),
        };
        !whole.is_empty()
            && whole.bytes().all(|b| b.is_ascii_digit())
            && frac.is_none_or(|f| !f.is_empty() && f.bytes().all(|b| b.is_ascii_digit()))
    }
    let nat = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    match word.split_once('/') {
        Some((n, d)) => nat(n) && nat(d),
        None => decimal(word),
    }
}

/// Splits `text` into tokens. A maximal run of non-space, non-punctuation
/// characters is one word; a word that is neither an identifier nor a number
/// becomes a single `Invalid` token so errors point at the whole word.
pub fn tokenize(text: &str) -> Vec<Token> {
    let mut tokens = Vec::new();
    let mut chars = text.char_indices().peekable();
    let mut line = 1;
    let mut line_start = 0;

    while let Some(&(start, c)) = chars.peek() {
        let span_at = |end: usize| SourceSpan {
            start,
            end,
            line,
            column: text[line_start..start].chars().count() + 1,
        };
        if c == '\n' {
            chars.next();
            line += 1;
            line_start = start + 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        if c == '#' {
            while chars.peek().is_some_and(|&(_, c)| c != '\n') {
                chars.next();
            }
            continue;
        }
        let single = match c {
            '[' => Some(TokenKind::LBracket),
            ']' => Some(TokenKind::RBracket),
            '(' => Some(TokenKind::LParen),
            ')' => Some(TokenKind::RParen),
            ',' => Some(TokenKind::Comma),
            '!' => Some(TokenKind::Bang),
            '&' => Some(TokenKind::Amp),
            '|' => Some(TokenKind::Pipe),
            _ => None,
        };
        if let Some(kind) = single {
            chars.next();
            tokens.push(Token { kind, span: span_at(start + 1) });
            continue;
        }
        if c == '-' || c == '>' {
            chars.next();
            if c == '-' && chars.peek().is_some_and(|&(_, n)| n == '>') {
                chars.next();
                tokens.push(Token { kind: TokenKind::Arrow, span: span_at(start + 2) });
            } else {
                // A broken arrow swallows the junk wedged into it.
                let mut end = start + 1;
                if c == '-' {
                    while let Some(&(idx, ch)) = chars.peek() {
                        if ch.is_whitespace() || (is_punct(ch) && ch != '>') {
                            break;
                        }
                        end = idx + ch.len_utf8();
                        chars.next();
                        if ch == '>' {
                            break;
                        }
                    }
                }
                tokens.push(Token { kind: TokenKind::Invalid(text[start..end].to_string()), span: span_at(end) });
            }
            continue;
        }
        let mut end = start;
        while let Some(&(idx, ch)) = chars.peek() {
            if ch.is_whitespace() || is_punct(ch) {
                break;
            }
            end = idx + ch.len_utf8();
            chars.next();
        }
        let word = &text[start..end];
        let kind = if is_ident(word) {
            TokenKind::Ident(word.to_string())
        } else if is_number(word) {
            TokenKind::Number(word.to_string())
        } else {
            TokenKind::Invalid(word.to_string())
        };
        tokens.push(Token { kind, span: span_at(end) });
    }

    let end = text.len();
    tokens.push(Token {
        kind: TokenKind::Eof,
        span: SourceSpan { start: end, end, line, column: text[line_start..].chars().count() + 1 },
    });
    tokens
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(text: &str) -> Vec<TokenKind> {
        tokenize(text).into_iter().map(|t| t.kind).collect()
    }

    #[test]
    fn splits_operators_and_words() {
        use TokenKind::*;
        assert_eq!(
            kinds("p U[0,1/3) q->r # trailing"),
            vec![
                Ident("p".into()),
                Ident("U".into()),
                LBracket,
                Number("0".into()),
                Comma,
                Number("1/3".into()),
                RParen,
                Ident("q".into()),
                Arrow,
                Ident("r".into()),
                Eof
            ]
        );
    }

    #[test]
    fn corrupted_word_is_one_invalid_token() {
        let toks = tokenize("a & i$f");
        assert_eq!(toks[2].kind, TokenKind::Invalid("i$f".into()));
        assert_eq!((toks[2].span.start, toks[2].span.end), (4, 7));
        assert_eq!(kinds("0.")[0], TokenKind::Invalid("0.".into()));
    }

    #[test]
    fn tracks_lines_and_columns() {
        let toks = tokenize("p\n  & q");
        assert_eq!((toks[1].span.line, toks[1].span.column), (2, 3));
    }
}
