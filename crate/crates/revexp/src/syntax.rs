//! Concrete syntax: parser and pretty-printer.
//!
//! ```text
//! P   ::= "0" | ACT "." P | ACT "!" "." P | P "+" P | P PAR P | "(" P ")"
//! PAR ::= "|[" (ACT ("," ACT)*)? "]|"
//! ACT ::= [a-z][a-z0-9_]*
//! ```
//! Prefix binds tighter than `+`, which binds tighter than `PAR`; both binary
//! operators associate to the left.

use crate::encoding::BrsProcess;
use crate::error::{Error, Result};
use crate::terms::{ensure_wellformed, Action, ActionSet, Process, ProofTerm, SyncSet};

/// Parses and checks well-formedness.
pub fn parse(src: &str) -> Result<Process> {
    let p = parse_unchecked(src)?;
    ensure_wellformed(&p)?;
    Ok(p)
}

/// Parses without the well-formedness check.
pub fn parse_unchecked(src: &str) -> Result<Process> {
    let mut parser = Parser::new(src);
    let p = parser.par_expr()?;
    parser.skip_ws();
    if let Some(c) = parser.peek() {
        return Err(parser.error(format!("unexpected '{c}'")));
    }
    Ok(p)
}

/// Parses a comma separated action list such as `a,b`.
pub fn parse_sync_list(src: &str) -> Result<SyncSet> {
    let mut names = Vec::new();
    for part in src.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let mut parser = Parser::new(part);
        let a = parser.action()?;
        if parser.peek().is_some() {
            return Err(parser.error(format!("bad action name '{part}'")));
        }
        names.push(a);
    }
    SyncSet::new(names)
}

/// Parses a proof term in the format produced by its `Display`.
pub fn parse_proof(src: &str) -> Result<ProofTerm> {
    let mut parser = Parser::new(src);
    let t = parser.proof()?;
    parser.skip_ws();
    if let Some(c) = parser.peek() {
        return Err(parser.error(format!("unexpected '{c}'")));
    }
    Ok(t)
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    _src: &'a str,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            chars: src.chars().collect(),
            pos: 0,
            _src: src,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn error(&self, message: String) -> Error {
        let (mut line, mut column) = (1, 1);
        for &c in &self.chars[..self.pos.min(self.chars.len())] {
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
        }
        Error::Syntax { line, column, message }
    }

    fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        let n = s.chars().count();
        if self.pos + n <= self.chars.len() && self.chars[self.pos..self.pos + n].iter().copied().eq(s.chars()) {
            self.pos += n;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<()> {
        if self.eat(s) {
            Ok(())
        } else {
            let found = self.peek().map_or("end of input".to_string(), |c| format!("'{c}'"));
            Err(self.error(format!("expected '{s}', found {found}")))
        }
    }

    fn action(&mut self) -> Result<Action> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            Some(c) if c.is_ascii_lowercase() => self.pos += 1,
            _ => return Err(self.error("expected an action name".into())),
        }
        while self
            .peek()
            .is_some_and(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_')
        {
            self.pos += 1;
        }
        let name: String = self.chars[start..self.pos].iter().collect();
        Ok(Action::new(&name))
    }

    fn par_expr(&mut self) -> Result<Process> {
        let mut left = self.choice_expr()?;
        while self.eat("|[") {
            let mut names = Vec::new();
            self.skip_ws();
            if !self.eat("]|") {
                loop {
                    let at = self.pos;
                    let a = self.action()?;
                    if a.is_tau() {
                        self.pos = at;
                        return Err(self.error("tau cannot appear in a synchronization set".into()));
                    }
                    names.push(a);
                    if self.eat(",") {
                        continue;
                    }
                    self.expect("]|")?;
                    break;
                }
            }
            let sync = SyncSet::new(names)?;
            let right = self.choice_expr()?;
            left = Process::par(sync, left, right);
        }
        Ok(left)
    }

    fn choice_expr(&mut self) -> Result<Process> {
        let mut left = self.prefix_expr()?;
        while self.eat("+") {
            let right = self.prefix_expr()?;
            left = Process::choice(left, right);
        }
        Ok(left)
    }

    fn prefix_expr(&mut self) -> Result<Process> {
        self.skip_ws();
        match self.peek() {
            Some('0') => {
                self.pos += 1;
                Ok(Process::Nil)
            }
            Some('(') => {
                self.pos += 1;
                let p = self.par_expr()?;
                self.expect(")")?;
                Ok(p)
            }
            Some(c) if c.is_ascii_lowercase() => {
                let action = self.action()?;
                let executed = self.eat("!") || self.eat("†");
                self.expect(".")?;
                let cont = self.prefix_expr()?;
                Ok(Process::Prefix {
                    action,
                    executed,
                    cont: Box::new(cont),
                })
            }
            Some(c) => Err(self.error(format!("unexpected '{c}'"))),
            None => Err(self.error("unexpected end of input".into())),
        }
    }

    fn proof(&mut self) -> Result<ProofTerm> {
        self.skip_ws();
        let wrap =
            |p: &mut Self, f: fn(Box<ProofTerm>) -> ProofTerm| -> Result<ProofTerm> { Ok(f(Box::new(p.proof()?))) };
        if self.eat(".") {
            wrap(self, ProofTerm::Dot)
        } else if self.eat("+l") {
            wrap(self, ProofTerm::PlusL)
        } else if self.eat("+r") {
            wrap(self, ProofTerm::PlusR)
        } else if self.eat("|l") {
            wrap(self, ProofTerm::ParL)
        } else if self.eat("|r") {
            wrap(self, ProofTerm::ParR)
        } else if self.eat("<") {
            let l = self.proof()?;
            self.expect(",")?;
            let r = self.proof()?;
            self.expect(">")?;
            Ok(ProofTerm::Syn(Box::new(l), Box::new(r)))
        } else {
            Ok(ProofTerm::Act(self.action()?))
        }
    }
}

/// Printing options.
#[derive(Clone, Copy, Debug, Default)]
pub struct Style {
    /// Print executed actions with a dagger instead of `!`.
    pub unicode: bool,
}

/// Canonical text of a process with minimal parentheses.
pub fn render(p: &Process) -> String {
    render_with(p, Style::default())
}

pub fn render_with(p: &Process, style: Style) -> String {
    let mut out = String::new();
    write_process(p, style, &mut out);
    out
}

/// Canonical text of a brs-annotated process.
pub fn render_brs(u: &BrsProcess) -> String {
    render_brs_with(u, Style::default())
}

pub fn render_brs_with(u: &BrsProcess, style: Style) -> String {
    let mut out = String::new();
    write_brs(u, style, &mut out);
    out
}

fn mark(executed: bool, style: Style) -> &'static str {
    match (executed, style.unicode) {
        (false, _) => "",
        (true, false) => "!",
        (true, true) => "†",
    }
}

fn write_process(p: &Process, style: Style, out: &mut String) {
    match p {
        Process::Nil => out.push('0'),
        Process::Prefix { action, executed, cont } => {
            out.push_str(action.name());
            out.push_str(mark(*executed, style));
            out.push('.');
            let wrap = matches!(**cont, Process::Choice(..) | Process::Par { .. });
            paren(wrap, out, |o| write_process(cont, style, o));
        }
        Process::Choice(l, r) => {
            paren(matches!(**l, Process::Par { .. }), out, |o| write_process(l, style, o));
            out.push_str(" + ");
            let wrap = matches!(**r, Process::Choice(..) | Process::Par { .. });
            paren(wrap, out, |o| write_process(r, style, o));
        }
        Process::Par { sync, left, right } => {
            write_process(left, style, out);
            out.push_str(" |[");
            for (i, a) in sync.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push_str(a.name());
            }
            out.push_str("]| ");
            paren(matches!(**right, Process::Par { .. }), out, |o| {
                write_process(right, style, o)
            });
        }
    }
}

fn write_brs(u: &BrsProcess, style: Style, out: &mut String) {
    match u {
        BrsProcess::Nil => out.push('0'),
        BrsProcess::Prefix {
            action,
            executed,
            ready,
            cont,
        } => {
            out.push('<');
            out.push_str(action.name());
            out.push_str(mark(*executed, style));
            out.push(',');
            write_set(ready, out);
            out.push_str(">.");
            paren(matches!(**cont, BrsProcess::Choice(..)), out, |o| {
                write_brs(cont, style, o)
            });
        }
        BrsProcess::Choice(l, r) => {
            write_brs(l, style, out);
            out.push_str(" + ");
            paren(matches!(**r, BrsProcess::Choice(..)), out, |o| write_brs(r, style, o));
        }
    }
}

fn write_set(s: &ActionSet, out: &mut String) {
    out.push_str(&s.to_string());
}

fn paren(wrap: bool, out: &mut String, f: impl FnOnce(&mut String)) {
    if wrap {
        out.push('(');
    }
    f(out);
    if wrap {
        out.push(')');
    }
}

/// Parses the textual form of a brs-annotated process.
pub fn parse_brs(src: &str) -> Result<BrsProcess> {
    let mut parser = Parser::new(src);
    let u = brs_choice(&mut parser)?;
    parser.skip_ws();
    if let Some(c) = parser.peek() {
        return Err(parser.error(format!("unexpected '{c}'")));
    }
    Ok(u)
}

fn brs_choice(p: &mut Parser) -> Result<BrsProcess> {
    let mut left = brs_prefix(p)?;
    while p.eat("+") {
        let right = brs_prefix(p)?;
        left = BrsProcess::Choice(Box::new(left), Box::new(right));
    }
    Ok(left)
}

fn brs_prefix(p: &mut Parser) -> Result<BrsProcess> {
    p.skip_ws();
    if p.eat("0") {
        return Ok(BrsProcess::Nil);
    }
    if p.eat("(") {
        let u = brs_choice(p)?;
        p.expect(")")?;
        return Ok(u);
    }
    p.expect("<")?;
    let action = p.action()?;
    let executed = p.eat("!") || p.eat("†");
    p.expect(",")?;
    p.expect("{")?;
    let mut ready = ActionSet::new();
    if !p.eat("}") {
        loop {
            ready.insert(p.action()?);
            if p.eat(",") {
                continue;
            }
            p.expect("}")?;
            break;
        }
    }
    p.expect(">")?;
    p.expect(".")?;
    let cont = brs_prefix(p)?;
    Ok(BrsProcess::Prefix {
        action,
        executed,
        ready,
        cont: Box::new(cont),
    })
}
