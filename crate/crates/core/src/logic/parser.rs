use super::{AtomPartition, Formula, LogicError};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    True,
    False,
    Last,
    Not,
    Next,
    WeakNext,
    Eventually,
    Globally,
    Until,
    Release,
    And,
    Or,
    Implies,
    Iff,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::End => "end of input".to_string(),
            other => format!("`{}`", other.text()),
        }
    }

    fn text(&self) -> &'static str {
        match self {
            Tok::True => "true",
            Tok::False => "false",
            Tok::Last => "last",
            Tok::Not => "!",
            Tok::Next => "X",
            Tok::WeakNext => "N",
            Tok::Eventually => "F",
            Tok::Globally => "G",
            Tok::Until => "U",
            Tok::Release => "R",
            Tok::And => "&",
            Tok::Or => "|",
            Tok::Implies => "->",
            Tok::Iff => "<->",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::Ident(_) | Tok::End => "",
        }
    }
}

fn syntax(position: usize, message: impl Into<String>) -> LogicError {
    LogicError::Syntax {
        position,
        message: message.into(),
    }
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, LogicError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = if c.is_ascii_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            out.push((keyword(word), start));
            continue;
        } else {
            match c {
                '!' => Tok::Not,
                '&' => Tok::And,
                '|' => Tok::Or,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '-' if chars.get(i + 1) == Some(&'>') => {
                    i += 1;
                    Tok::Implies
                }
                '<' if chars.get(i + 1) == Some(&'-') && chars.get(i + 2) == Some(&'>') => {
                    i += 2;
                    Tok::Iff
                }
                _ => return Err(syntax(start, format!("unexpected character `{c}`"))),
            }
        };
        i += 1;
        out.push((tok, start));
    }
    out.push((Tok::End, chars.len()));
    Ok(out)
}

fn keyword(word: String) -> Tok {
    match word.as_str() {
        "true" => Tok::True,
        "false" => Tok::False,
        "last" => Tok::Last,
        "X" => Tok::Next,
        "N" => Tok::WeakNext,
        "F" => Tok::Eventually,
        "G" => Tok::Globally,
        "U" => Tok::Until,
        "R" => Tok::Release,
        _ => Tok::Ident(word),
    }
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    fn iff(&mut self) -> Result<Formula, LogicError> {
        let mut lhs = self.implies()?;
        while self.eat(&Tok::Iff) {
            let rhs = self.implies()?;
            lhs = Formula::iff(lhs, rhs);
        }
        Ok(lhs)
    }

    fn implies(&mut self) -> Result<Formula, LogicError> {
        let lhs = self.or()?;
        if self.eat(&Tok::Implies) {
            let rhs = self.implies()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula, LogicError> {
        let mut lhs = self.and()?;
        while self.eat(&Tok::Or) {
            let rhs = self.and()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula, LogicError> {
        let mut lhs = self.temporal()?;
        while self.eat(&Tok::And) {
            let rhs = self.temporal()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn temporal(&mut self) -> Result<Formula, LogicError> {
        let lhs = self.unary()?;
        if self.eat(&Tok::Until) {
            let rhs = self.temporal()?;
            return Ok(Formula::until(lhs, rhs));
        }
        if self.eat(&Tok::Release) {
            let rhs = self.temporal()?;
            return Ok(Formula::release(lhs, rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, LogicError> {
        let ctor: fn(Formula) -> Formula = match self.peek() {
            Tok::Not => Formula::not,
            Tok::Next => Formula::next,
            Tok::WeakNext => Formula::weak_next,
            Tok::Eventually => Formula::eventually,
            Tok::Globally => Formula::globally,
            _ => return self.primary(),
        };
        self.bump();
        Ok(ctor(self.unary()?))
    }

    fn primary(&mut self) -> Result<Formula, LogicError> {
        let at = self.offset();
        match self.bump() {
            Tok::True => Ok(Formula::True),
            Tok::False => Ok(Formula::False),
            Tok::Last => Ok(Formula::Last),
            Tok::Ident(name) => Ok(Formula::Atom(name)),
            Tok::LParen => {
                let inner = self.iff()?;
                if !self.eat(&Tok::RParen) {
                    return Err(syntax(
                        self.offset(),
                        format!("expected `)`, found {}", self.peek().describe()),
                    ));
                }
                Ok(inner)
            }
            other => Err(syntax(at, format!("unexpected {}", other.describe()))),
        }
    }
}

/// Parses a formula without checking atoms against a declaration.
pub fn parse_unchecked(text: &str) -> Result<Formula, LogicError> {
    let mut parser = Parser {
        toks: tokenize(text)?,
        pos: 0,
    };
    let f = parser.iff()?;
    if *parser.peek() != Tok::End {
        return Err(syntax(
            parser.offset(),
            format!("unexpected {}", parser.peek().describe()),
        ));
    }
    Ok(f)
}

/// Parses a formula; every identifier must be declared in `atoms`.
/// Syntax error positions are 0-based character offsets.
pub fn parse(text: &str, atoms: &AtomPartition) -> Result<Formula, LogicError> {
    let f = parse_unchecked(text)?;
    if let Some(name) = f.atoms().into_iter().find(|a| !atoms.contains(a)) {
        return Err(LogicError::UndeclaredAtom(name.to_string()));
    }
    Ok(f)
}

/// Atom identifiers of `text` in order of first appearance.
pub fn collect_identifiers(text: &str) -> Result<Vec<String>, LogicError> {
    let mut out: Vec<String> = Vec::new();
    for (tok, _) in tokenize(text)? {
        if let Tok::Ident(name) = tok {
            if !out.contains(&name) {
                out.push(name);
            }
        }
    }
    Ok(out)
}
