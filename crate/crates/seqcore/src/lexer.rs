//! Tokens shared by the surface parser and the core reader.

use seqcore_core::{Diagnostic, Rule, Span};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    /// Identifier or keyword, with the tag of a `name#tag` spelling.
    Name(String, u32),
    Sym(&'static str),
    /// Start of a new top-level line (the next token is in column 1).
    Newline,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub span: Span,
}

const SYMBOLS: &[&str] = &[
    "::", "->", "/\\", "[]", "]_", ".1", ".2", "(", ")", "{", "}", "[", "]", "<", ">", ",", ";", ":", "=", "\\", ".", "@", "|",
    "*", "+", "_",
];

/// Unicode spellings and the ASCII symbol or keyword they stand for.
const SYNONYMS: &[(char, &str)] = &[
    ('→', "->"),
    ('⇒', "->"),
    ('×', "*"),
    ('⊎', "+"),
    ('∧', "/\\"),
    ('λ', "\\"),
];

const WORD_SYNONYMS: &[(char, &str)] = &[('Π', "Pi"), ('Σ', "Sigma"), ('↑', "up"), ('↓', "down")];

pub const KEYWORDS: &[&str] = &[
    "atom", "postulate", "def", "inl", "inr", "Pi", "Sigma", "done", "thunk", "split", "let", "in", "kappa", "up", "down",
];

fn is_name_start(c: char) -> bool {
    (c.is_alphabetic() || c == '_' || is_symbolic_letter(c))
        && !SYNONYMS.iter().any(|(s, _)| *s == c)
        && !WORD_SYNONYMS.iter().any(|(s, _)| *s == c)
}

fn is_name_char(c: char) -> bool {
    is_name_start(c) || c.is_numeric() || c == '\''
}

/// Letter-like mathematical symbols such as `ℕ` or `𝔹`.
fn is_symbolic_letter(c: char) -> bool {
    matches!(c, '\u{2100}'..='\u{214F}' | '\u{1D400}'..='\u{1D7FF}')
}

pub fn lex(src: &str) -> Result<Vec<Token>, Diagnostic> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1u32, 1u32);
    let mut line_start = true;
    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            line_start = true;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '-' && chars.get(i + 1) == Some(&'-') {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let span = Span::new(line, col);
        if line_start {
            if col == 1 && !out.is_empty() {
                out.push(Token { tok: Tok::Newline, span });
            }
            line_start = false;
        }
        let push = |out: &mut Vec<Token>, tok: Tok| out.push(Token { tok, span });
        if let Some((_, s)) = SYNONYMS.iter().find(|(u, _)| *u == c) {
            push(&mut out, Tok::Sym(s));
            i += 1;
            col += 1;
            continue;
        }
        if let Some((_, w)) = WORD_SYNONYMS.iter().find(|(u, _)| *u == c) {
            push(&mut out, Tok::Name((*w).to_string(), 0));
            i += 1;
            col += 1;
            continue;
        }
        if is_name_start(c) && !(c == '_' && !chars.get(i + 1).is_some_and(|&n| is_name_char(n))) {
            let start = i;
            while i < chars.len() && is_name_char(chars[i]) {
                i += 1;
            }
            let name: String = chars[start..i].iter().collect();
            col += (i - start) as u32;
            let mut tag = 0;
            if chars.get(i) == Some(&'#') && chars.get(i + 1).is_some_and(char::is_ascii_digit) {
                let ds = i + 1;
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[ds..i].iter().collect();
                col += (i - ds + 1) as u32;
                tag = digits.parse().map_err(|_| Diagnostic::new(Rule::Parse, "a tag", digits).at(span))?;
            }
            push(&mut out, Tok::Name(name, tag));
            continue;
        }
        let rest = &chars[i..];
        let sym = SYMBOLS.iter().find(|s| {
            let sc: Vec<char> = s.chars().collect();
            rest.starts_with(&sc)
                && !(matches!(**s, ".1" | ".2") && rest.get(2).is_some_and(|&n| is_name_char(n)))
        });
        match sym {
            Some(s) => {
                push(&mut out, Tok::Sym(s));
                let n = s.chars().count();
                i += n;
                col += n as u32;
            }
            None => return Err(Diagnostic::new(Rule::Parse, "a token", format!("`{c}`")).at(span)),
        }
    }
    Ok(out)
}

/// Cursor over a token list with the lookahead helpers both parsers use.
pub struct Cursor {
    toks: Vec<Token>,
    pos: usize,
    end: Span,
}

impl Cursor {
    pub fn new(toks: Vec<Token>) -> Cursor {
        let end = toks.last().map_or(Span::default(), |t| Span::new(t.span.line, t.span.col + 1));
        Cursor { toks, pos: 0, end }
    }

    pub fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    pub fn peek_at(&self, n: usize) -> Option<&Tok> {
        self.toks.get(self.pos + n).map(|t| &t.tok)
    }

    pub fn span(&self) -> Span {
        self.toks.get(self.pos).map_or(self.end, |t| t.span)
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    pub fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.tok.clone());
        self.pos += 1;
        t
    }

    pub fn is_sym(&self, s: &str) -> bool {
        matches!(self.peek(), Some(Tok::Sym(x)) if *x == s)
    }

    pub fn is_kw(&self, k: &str) -> bool {
        matches!(self.peek(), Some(Tok::Name(x, 0)) if x == k)
    }

    pub fn is_name(&self) -> bool {
        matches!(self.peek(), Some(Tok::Name(x, _)) if !KEYWORDS.contains(&x.as_str()))
    }

    pub fn eat_sym(&mut self, s: &str) -> bool {
        let hit = self.is_sym(s);
        if hit {
            self.pos += 1;
        }
        hit
    }

    pub fn eat_kw(&mut self, k: &str) -> bool {
        let hit = self.is_kw(k);
        if hit {
            self.pos += 1;
        }
        hit
    }

    pub fn expect_sym(&mut self, s: &str) -> Result<(), Diagnostic> {
        if self.eat_sym(s) {
            Ok(())
        } else {
            Err(self.error(format!("`{s}`")))
        }
    }

    pub fn expect_kw(&mut self, k: &str) -> Result<(), Diagnostic> {
        if self.eat_kw(k) {
            Ok(())
        } else {
            Err(self.error(format!("`{k}`")))
        }
    }

    pub fn name(&mut self) -> Result<(String, u32), Diagnostic> {
        if self.is_name() {
            match self.bump() {
                Some(Tok::Name(n, t)) => return Ok((n, t)),
                _ => unreachable!(),
            }
        }
        Err(self.error("a name"))
    }

    pub fn found(&self) -> String {
        match self.peek() {
            None => "end of input".into(),
            Some(Tok::Newline) => "end of line".into(),
            Some(Tok::Sym(s)) => format!("`{s}`"),
            Some(Tok::Name(n, 0)) => format!("`{n}`"),
            Some(Tok::Name(n, t)) => format!("`{n}#{t}`"),
        }
    }

    pub fn error(&self, expected: impl ToString) -> Diagnostic {
        Diagnostic::new(Rule::Parse, expected, self.found()).at(self.span())
    }
}
