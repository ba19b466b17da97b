//! Tokenizer for Java source text.
//!
//! `>` is always emitted as a single token so nested type arguments
//! (`List<List<String>>`) need no splitting; the expression parser rebuilds
//! shift and comparison operators from adjacent tokens.

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LitKind {
    Int,
    Float,
    Char,
    Str,
    TextBlock,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tok {
    Ident,
    Keyword,
    Literal(LitKind),
    Punct,
    Eof,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Token<'a> {
    pub kind: Tok,
    pub text: &'a str,
    /// Byte offsets into the source.
    pub start: usize,
    pub end: usize,
    pub line: usize,
    pub column: usize,
}

impl<'a> Token<'a> {
    pub fn is(&self, text: &str) -> bool {
        matches!(self.kind, Tok::Punct | Tok::Keyword) && self.text == text
    }

    pub fn is_ident(&self) -> bool {
        self.kind == Tok::Ident
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {message}")]
pub struct LexError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

const KEYWORDS: &[&str] = &[
    "abstract",
    "assert",
    "boolean",
    "break",
    "byte",
    "case",
    "catch",
    "char",
    "class",
    "const",
    "continue",
    "default",
    "do",
    "double",
    "else",
    "enum",
    "extends",
    "final",
    "finally",
    "float",
    "for",
    "goto",
    "if",
    "implements",
    "import",
    "instanceof",
    "int",
    "interface",
    "long",
    "native",
    "new",
    "package",
    "private",
    "protected",
    "public",
    "return",
    "short",
    "static",
    "strictfp",
    "super",
    "switch",
    "synchronized",
    "this",
    "throw",
    "throws",
    "transient",
    "try",
    "void",
    "volatile",
    "while",
    "true",
    "false",
    "null",
];

pub fn is_keyword(word: &str) -> bool {
    KEYWORDS.contains(&word)
}

const PUNCT: &[&str] = &[
    "<<=", "...", "->", "::", "++", "--", "&&", "||", "==", "!=", "<=", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=",
    "<<", "(", ")", "{", "}", "[", "]", ";", ",", ".", "@", "=", ">", "<", "!", "~", "?", ":", "+", "-", "*", "/", "&",
    "|", "^", "%",
];

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
    line: usize,
    line_start: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn peek_at(&self, n: usize) -> Option<char> {
        self.src[self.pos..].chars().nth(n)
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        // a lone \r ends a line; \r\n is counted at the \n
        if c == '\n' || (c == '\r' && self.peek() != Some('\n')) {
            self.line += 1;
            self.line_start = self.pos;
        }
        Some(c)
    }

    fn column(&self) -> usize {
        self.src[self.line_start..self.pos].chars().count() + 1
    }

    fn error(&self, message: impl Into<String>) -> LexError {
        LexError {
            line: self.line,
            column: self.column(),
            message: message.into(),
        }
    }
}

fn is_ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_' || c == '$'
}

fn is_ident_part(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '$'
}

/// Splits `src` into tokens, dropping whitespace and comments. The last token
/// is always [`Tok::Eof`].
pub fn lex(src: &str) -> Result<Vec<Token<'_>>, LexError> {
    let mut lexer = Lexer::new(src);
    let mut out = Vec::new();
    loop {
        let tok = lexer.next_token()?;
        out.push(tok);
        if tok.kind == Tok::Eof {
            return Ok(out);
        }
    }
}

/// Incremental tokenizer, for callers that only need a prefix of the file.
pub struct Lexer<'a> {
    cur: Cursor<'a>,
}

impl<'a> Lexer<'a> {
    pub fn new(src: &'a str) -> Self {
        let mut cur = Cursor {
            src,
            pos: 0,
            line: 1,
            line_start: 0,
        };
        // A byte-order mark is not part of the program text.
        if cur.peek() == Some('\u{feff}') {
            cur.bump();
            cur.line_start = cur.pos;
        }
        Lexer { cur }
    }

    pub fn next_token(&mut self) -> Result<Token<'a>, LexError> {
        let cur = &mut self.cur;
        let src = cur.src;
        // Whitespace and comments.
        loop {
            match cur.peek() {
                Some(c) if c.is_whitespace() || c == '\u{1a}' => {
                    cur.bump();
                }
                Some('/') if cur.peek_at(1) == Some('/') => {
                    while let Some(c) = cur.peek() {
                        if c == '\n' || c == '\r' {
                            break;
                        }
                        cur.bump();
                    }
                }
                Some('/') if cur.peek_at(1) == Some('*') => {
                    let err = cur.error("unterminated block comment");
                    cur.bump();
                    cur.bump();
                    loop {
                        match cur.peek() {
                            None => return Err(err),
                            Some('*') if cur.peek_at(1) == Some('/') => {
                                cur.bump();
                                cur.bump();
                                break;
                            }
                            Some(_) => {
                                cur.bump();
                            }
                        }
                    }
                }
                _ => break,
            }
        }

        let start = cur.pos;
        let line = cur.line;
        let column = cur.column();
        let Some(c) = cur.peek() else {
            return Ok(Token {
                kind: Tok::Eof,
                text: "",
                start,
                end: start,
                line,
                column,
            });
        };

        let kind = if is_ident_start(c) {
            while cur.peek().is_some_and(is_ident_part) {
                cur.bump();
            }
            // `non-sealed` is the one hyphenated keyword.
            if &src[start..cur.pos] == "non" && cur.rest().starts_with("-sealed") {
                let after = cur.rest()["-sealed".len()..].chars().next();
                if !after.is_some_and(is_ident_part) {
                    for _ in 0.."-sealed".len() {
                        cur.bump();
                    }
                }
            }
            let word = &src[start..cur.pos];
            if is_keyword(word) {
                Tok::Keyword
            } else {
                Tok::Ident
            }
        } else if c.is_ascii_digit() || (c == '.' && cur.peek_at(1).is_some_and(|d| d.is_ascii_digit())) {
            lex_number(cur)
        } else if c == '"' {
            if cur.rest().starts_with("\"\"\"") {
                let err = cur.error("unterminated text block");
                for _ in 0..3 {
                    cur.bump();
                }
                loop {
                    match cur.peek() {
                        None => return Err(err),
                        Some('\\') => {
                            cur.bump();
                            cur.bump();
                        }
                        Some('"') if cur.rest().starts_with("\"\"\"") => {
                            for _ in 0..3 {
                                cur.bump();
                            }
                            break;
                        }
                        Some(_) => {
                            cur.bump();
                        }
                    }
                }
                Tok::Literal(LitKind::TextBlock)
            } else {
                lex_quoted(cur, '"')?;
                Tok::Literal(LitKind::Str)
            }
        } else if c == '\'' {
            lex_quoted(cur, '\'')?;
            Tok::Literal(LitKind::Char)
        } else if let Some(p) = PUNCT.iter().find(|p| cur.rest().starts_with(**p)) {
            for _ in 0..p.len() {
                cur.bump();
            }
            Tok::Punct
        } else if c == '\\' && cur.peek_at(1) == Some('u') {
            // Unicode escapes outside literals are rare; treat as identifier text.
            cur.bump();
            while cur.peek().is_some_and(|c| c == 'u') {
                cur.bump();
            }
            for _ in 0..4 {
                cur.bump();
            }
            while cur.peek().is_some_and(is_ident_part) {
                cur.bump();
            }
            Tok::Ident
        } else {
            return Err(cur.error(format!("unexpected character {c:?}")));
        };
        Ok(Token {
            kind,
            text: &src[start..cur.pos],
            start,
            end: cur.pos,
            line,
            column,
        })
    }
}

fn lex_number(cur: &mut Cursor<'_>) -> Tok {
    let hex = cur.rest().starts_with("0x") || cur.rest().starts_with("0X");
    let mut float = false;
    if hex {
        cur.bump();
        cur.bump();
    }
    while let Some(c) = cur.peek() {
        if c.is_ascii_alphanumeric() || c == '_' {
            let exp = if hex {
                matches!(c, 'p' | 'P')
            } else {
                matches!(c, 'e' | 'E')
            };
            if !hex && matches!(c, 'f' | 'F' | 'd' | 'D') {
                float = true;
            }
            cur.bump();
            if exp {
                float = true;
                if matches!(cur.peek(), Some('+') | Some('-')) {
                    cur.bump();
                }
            }
        } else if c == '.' && cur.peek_at(1) != Some('.') && !cur.peek_at(1).is_some_and(is_ident_start_not_exp) {
            float = true;
            cur.bump();
        } else {
            break;
        }
    }
    if float {
        Tok::Literal(LitKind::Float)
    } else {
        Tok::Literal(LitKind::Int)
    }
}

// `1.e5` and `1.f` are literals, `1.foo` is not valid Java anyway.
fn is_ident_start_not_exp(c: char) -> bool {
    is_ident_start(c) && !matches!(c, 'e' | 'E' | 'f' | 'F' | 'd' | 'D')
}

fn lex_quoted(cur: &mut Cursor<'_>, quote: char) -> Result<(), LexError> {
    let err = cur.error(if quote == '"' {
        "unterminated string literal"
    } else {
        "unterminated character literal"
    });
    cur.bump();
    loop {
        match cur.peek() {
            None | Some('\n') | Some('\r') => return Err(err),
            Some('\\') => {
                cur.bump();
                if matches!(cur.peek(), None | Some('\n') | Some('\r')) {
                    return Err(err);
                }
                cur.bump();
            }
            Some(c) if c == quote => {
                cur.bump();
                return Ok(());
            }
            Some(_) => {
                cur.bump();
            }
        }
    }
}
