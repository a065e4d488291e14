//! The declarative script language: tokenizer, parser, and printer.
//!
//! Scripts are line-oriented; `#` starts a comment. Each line declares a
//! ring, set, module, or submodule, or issues a command. Names must be
//! declared before use and bound exactly once; references are resolved
//! (with their kinds) during parsing. Pretty-printing a parsed script and
//! re-parsing it yields an identical syntax tree.

use std::collections::HashMap;
use std::fmt;

use finalg::decide::SecondaryForm;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Loc {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Loc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

/// An element literal: an integer, a product pair, or an idealization pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Lit {
    Int(u64),
    Pair(Box<Lit>, Box<Lit>),
    Bar(Box<Lit>, Box<Lit>),
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Lit::Int(k) => write!(f, "{k}"),
            Lit::Pair(a, b) => write!(f, "({a},{b})"),
            Lit::Bar(a, b) => write!(f, "({a}|{b})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdealExpr {
    /// span{e,...}: the ideal generated by the elements.
    Span(Vec<Lit>),
    /// {e,...}: literal members, validated as an ideal.
    Literal(Vec<Lit>),
}

impl fmt::Display for IdealExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdealExpr::Span(elems) => write!(f, "span{}", braces(elems)),
            IdealExpr::Literal(elems) => write!(f, "{}", braces(elems)),
        }
    }
}

fn braces(elems: &[Lit]) -> String {
    let inner: Vec<String> = elems.iter().map(Lit::to_string).collect();
    format!("{{{}}}", inner.join(","))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingExpr {
    Cyclic(u64),
    Product(String, String),
    Quotient(String, IdealExpr),
    Idealization(String, String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SetExpr {
    Literal(Vec<Lit>),
    Closure(Vec<Lit>),
    ComplementOfPrime(IdealExpr),
    Saturation(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleExpr {
    Regular,
    Product(String, String),
    Tables {
        add: Vec<Vec<u64>>,
        act: Vec<Vec<u64>>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubExpr {
    Span(Vec<Lit>),
    Zero,
    Full,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Prop {
    Secondary,
    Second,
    SSecond,
    SSecondary(Option<SecondaryForm>),
    SPrime,
    SPrimary,
    QuasiCotorsionFree,
    Multiplication,
    Comultiplication,
}

impl Prop {
    pub fn needs_set(self) -> bool {
        matches!(
            self,
            Prop::SSecond
                | Prop::SSecondary(_)
                | Prop::SPrime
                | Prop::SPrimary
                | Prop::QuasiCotorsionFree
        )
    }

    pub fn needs_module_target(self) -> bool {
        matches!(
            self,
            Prop::QuasiCotorsionFree | Prop::Multiplication | Prop::Comultiplication
        )
    }
}

impl fmt::Display for Prop {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Prop::Secondary => write!(f, "secondary"),
            Prop::Second => write!(f, "second"),
            Prop::SSecond => write!(f, "s_second"),
            Prop::SSecondary(None) => write!(f, "s_secondary"),
            Prop::SSecondary(Some(form)) => write!(f, "s_secondary:{form}"),
            Prop::SPrime => write!(f, "s_prime"),
            Prop::SPrimary => write!(f, "s_primary"),
            Prop::QuasiCotorsionFree => write!(f, "quasi_cotorsion_free"),
            Prop::Multiplication => write!(f, "multiplication"),
            Prop::Comultiplication => write!(f, "comultiplication"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnumerateWhat {
    Submodules,
    Ideals,
    Ci,
}

impl fmt::Display for EnumerateWhat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EnumerateWhat::Submodules => write!(f, "submodules"),
            EnumerateWhat::Ideals => write!(f, "ideals"),
            EnumerateWhat::Ci => write!(f, "ci"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Decide {
        prop: Prop,
        target: String,
        set: Option<String>,
    },
    Enumerate {
        what: EnumerateWhat,
        target: String,
    },
    VerifyAll {
        ring: String,
        module: String,
        set: String,
    },
    VerifyLaw {
        law: String,
        ring: String,
        module: String,
        set: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StatementKind {
    Ring {
        name: String,
        expr: RingExpr,
    },
    Set {
        name: String,
        ring: String,
        expr: SetExpr,
    },
    Module {
        name: String,
        ring: String,
        expr: ModuleExpr,
    },
    Submodule {
        name: String,
        module: String,
        expr: SubExpr,
    },
    Command(Command),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Statement {
    pub kind: StatementKind,
    pub loc: Loc,
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            StatementKind::Ring { name, expr } => {
                write!(f, "ring {name} = ")?;
                match expr {
                    RingExpr::Cyclic(n) => write!(f, "Z({n})"),
                    RingExpr::Product(a, b) => write!(f, "product({a}, {b})"),
                    RingExpr::Quotient(a, i) => write!(f, "quotient({a}, {i})"),
                    RingExpr::Idealization(a, m) => write!(f, "idealization({a}, {m})"),
                }
            }
            StatementKind::Set { name, ring, expr } => {
                write!(f, "set {name} in {ring} = ")?;
                match expr {
                    SetExpr::Literal(elems) => write!(f, "{}", braces(elems)),
                    SetExpr::Closure(elems) => write!(f, "closure{}", braces(elems)),
                    SetExpr::ComplementOfPrime(i) => write!(f, "complement_of_prime({i})"),
                    SetExpr::Saturation(s) => write!(f, "saturation({s})"),
                }
            }
            StatementKind::Module { name, ring, expr } => {
                write!(f, "module {name} over {ring} = ")?;
                match expr {
                    ModuleExpr::Regular => write!(f, "regular"),
                    ModuleExpr::Product(a, b) => write!(f, "product({a}, {b})"),
                    ModuleExpr::Tables { add, act } => {
                        write!(f, "tables(add = {}, act = {})", rows(add), rows(act))
                    }
                }
            }
            StatementKind::Submodule { name, module, expr } => {
                write!(f, "submodule {name} of {module} = ")?;
                match expr {
                    SubExpr::Span(elems) => write!(f, "span{}", braces(elems)),
                    SubExpr::Zero => write!(f, "zero"),
                    SubExpr::Full => write!(f, "full"),
                }
            }
            StatementKind::Command(cmd) => match cmd {
                Command::Decide { prop, target, set } => {
                    write!(f, "decide {prop} {target}")?;
                    if let Some(set) = set {
                        write!(f, " {set}")?;
                    }
                    Ok(())
                }
                Command::Enumerate { what, target } => write!(f, "enumerate {what} {target}"),
                Command::VerifyAll { ring, module, set } => {
                    write!(f, "verify all {ring} {module} {set}")
                }
                Command::VerifyLaw {
                    law,
                    ring,
                    module,
                    set,
                } => {
                    write!(f, "verify {law} {ring} {module} {set}")
                }
            },
        }
    }
}

fn rows(table: &[Vec<u64>]) -> String {
    let inner: Vec<String> = table
        .iter()
        .map(|row| {
            let cells: Vec<String> = row.iter().map(u64::to_string).collect();
            format!("[{}]", cells.join(","))
        })
        .collect();
    format!("[{}]", inner.join(","))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Script {
    pub statements: Vec<Statement>,
}

impl fmt::Display for Script {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for stmt in &self.statements {
            writeln!(f, "{stmt}")?;
        }
        Ok(())
    }
}

/// What kind of object a name is bound to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NameKind {
    Ring,
    Set,
    Module,
    Submodule,
}

impl fmt::Display for NameKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NameKind::Ring => write!(f, "ring"),
            NameKind::Set => write!(f, "set"),
            NameKind::Module => write!(f, "module"),
            NameKind::Submodule => write!(f, "submodule"),
        }
    }
}

/// Parse-time errors, with location and (for syntax errors) the set of
/// tokens that would have been accepted.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at {loc}: found {found}, expected {}", expected.join(" | "))]
    Syntax {
        loc: Loc,
        found: String,
        expected: Vec<String>,
    },
    #[error("name error at {loc}: {message}")]
    Name { loc: Loc, message: String },
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(u64),
    Sym(char),
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Int(k) => write!(f, "`{k}`"),
            Tok::Sym(c) => write!(f, "`{c}`"),
        }
    }
}

struct Spanned {
    tok: Tok,
    col: usize,
}

fn tokenize(line: &str, line_no: usize) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let mut chars = line.char_indices().peekable();
    while let Some(&(i, c)) = chars.peek() {
        let col = i + 1;
        match c {
            '#' => break,
            c if c.is_whitespace() => {
                chars.next();
            }
            c if c.is_ascii_digit() => {
                let mut value: u64 = 0;
                while let Some(&(_, d)) = chars.peek() {
                    if let Some(dig) = d.to_digit(10) {
                        value = value.saturating_mul(10).saturating_add(dig as u64);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(Spanned {
                    tok: Tok::Int(value),
                    col,
                });
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut ident = String::new();
                while let Some(&(_, d)) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        ident.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(Spanned {
                    tok: Tok::Ident(ident),
                    col,
                });
            }
            '=' | '(' | ')' | '{' | '}' | '[' | ']' | ',' | '|' | ':' => {
                chars.next();
                out.push(Spanned {
                    tok: Tok::Sym(c),
                    col,
                });
            }
            other => {
                return Err(ParseError::Syntax {
                    loc: Loc { line: line_no, col },
                    found: format!("`{other}`"),
                    expected: vec!["a statement token".into()],
                })
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Spanned>,
    pos: usize,
    line: usize,
    names: &'a mut HashMap<String, NameKind>,
}

impl<'a> Parser<'a> {
    fn loc(&self) -> Loc {
        let col = self
            .toks
            .get(self.pos)
            .map_or_else(|| self.toks.last().map_or(1, |t| t.col + 1), |t| t.col);
        Loc {
            line: self.line,
            col,
        }
    }

    fn found(&self) -> String {
        self.toks
            .get(self.pos)
            .map_or("end of line".into(), |t| t.tok.to_string())
    }

    fn err<T>(&self, expected: &[&str]) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            loc: self.loc(),
            found: self.found(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat_sym(c) {
            Ok(())
        } else {
            self.err(&[&format!("`{c}`")])
        }
    }

    fn eat_keyword(&mut self, kw: &str) -> bool {
        if matches!(self.peek(), Some(Tok::Ident(s)) if s == kw) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        if self.eat_keyword(kw) {
            Ok(())
        } else {
            self.err(&[&format!("`{kw}`")])
        }
    }

    fn expect_ident(&mut self, what: &str) -> Result<String, ParseError> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => self.err(&[what]),
        }
    }

    fn expect_int(&mut self) -> Result<u64, ParseError> {
        match self.peek() {
            Some(Tok::Int(k)) => {
                let k = *k;
                self.pos += 1;
                Ok(k)
            }
            _ => self.err(&["an integer"]),
        }
    }

    fn end(&mut self) -> Result<(), ParseError> {
        if self.pos == self.toks.len() {
            Ok(())
        } else {
            self.err(&["end of line"])
        }
    }

    fn declare(&mut self, name: &str, kind: NameKind) -> Result<(), ParseError> {
        if self.names.contains_key(name) {
            return Err(ParseError::Name {
                loc: self.loc(),
                message: format!("`{name}` is already bound"),
            });
        }
        self.names.insert(name.to_string(), kind);
        Ok(())
    }

    fn reference(&mut self, name: &str, kinds: &[NameKind]) -> Result<NameKind, ParseError> {
        match self.names.get(name) {
            None => Err(ParseError::Name {
                loc: self.loc(),
                message: format!("`{name}` is not declared"),
            }),
            Some(&k) if kinds.contains(&k) => Ok(k),
            Some(&k) => Err(ParseError::Name {
                loc: self.loc(),
                message: format!(
                    "`{name}` is a {k}, expected {}",
                    kinds
                        .iter()
                        .map(|k| k.to_string())
                        .collect::<Vec<_>>()
                        .join(" or ")
                ),
            }),
        }
    }

    fn ref_ident(&mut self, kinds: &[NameKind], what: &str) -> Result<String, ParseError> {
        let save = self.pos;
        let name = self.expect_ident(what)?;
        self.pos = save; // report name errors at the identifier position
        self.reference(&name, kinds)?;
        self.pos = save + 1;
        Ok(name)
    }

    fn lit(&mut self) -> Result<Lit, ParseError> {
        match self.peek() {
            Some(Tok::Int(_)) => Ok(Lit::Int(self.expect_int()?)),
            Some(Tok::Sym('(')) => {
                self.expect_sym('(')?;
                let a = self.lit()?;
                let bar = if self.eat_sym(',') {
                    false
                } else if self.eat_sym('|') {
                    true
                } else {
                    return self.err(&["`,`", "`|`"]);
                };
                let b = self.lit()?;
                self.expect_sym(')')?;
                Ok(if bar {
                    Lit::Bar(Box::new(a), Box::new(b))
                } else {
                    Lit::Pair(Box::new(a), Box::new(b))
                })
            }
            _ => self.err(&["an element literal"]),
        }
    }

    fn elem_set(&mut self) -> Result<Vec<Lit>, ParseError> {
        self.expect_sym('{')?;
        let mut elems = Vec::new();
        if self.eat_sym('}') {
            return Ok(elems);
        }
        loop {
            elems.push(self.lit()?);
            if self.eat_sym('}') {
                return Ok(elems);
            }
            self.expect_sym(',')?;
        }
    }

    fn ideal_expr(&mut self) -> Result<IdealExpr, ParseError> {
        if self.eat_keyword("span") {
            Ok(IdealExpr::Span(self.elem_set()?))
        } else if matches!(self.peek(), Some(Tok::Sym('{'))) {
            Ok(IdealExpr::Literal(self.elem_set()?))
        } else {
            self.err(&["`span`", "`{`"])
        }
    }

    fn int_rows(&mut self) -> Result<Vec<Vec<u64>>, ParseError> {
        self.expect_sym('[')?;
        let mut rows = Vec::new();
        if self.eat_sym(']') {
            return Ok(rows);
        }
        loop {
            self.expect_sym('[')?;
            let mut row = Vec::new();
            if !self.eat_sym(']') {
                loop {
                    row.push(self.expect_int()?);
                    if self.eat_sym(']') {
                        break;
                    }
                    self.expect_sym(',')?;
                }
            }
            rows.push(row);
            if self.eat_sym(']') {
                return Ok(rows);
            }
            self.expect_sym(',')?;
        }
    }

    fn ring_stmt(&mut self) -> Result<StatementKind, ParseError> {
        let name = self.expect_ident("a ring name")?;
        self.expect_sym('=')?;
        let expr = if self.eat_keyword("Z") {
            self.expect_sym('(')?;
            let n = self.expect_int()?;
            self.expect_sym(')')?;
            RingExpr::Cyclic(n)
        } else if self.eat_keyword("product") {
            self.expect_sym('(')?;
            let a = self.ref_ident(&[NameKind::Ring], "a ring name")?;
            self.expect_sym(',')?;
            let b = self.ref_ident(&[NameKind::Ring], "a ring name")?;
            self.expect_sym(')')?;
            RingExpr::Product(a, b)
        } else if self.eat_keyword("quotient") {
            self.expect_sym('(')?;
            let a = self.ref_ident(&[NameKind::Ring], "a ring name")?;
            self.expect_sym(',')?;
            let ideal = self.ideal_expr()?;
            self.expect_sym(')')?;
            RingExpr::Quotient(a, ideal)
        } else if self.eat_keyword("idealization") {
            self.expect_sym('(')?;
            let a = self.ref_ident(&[NameKind::Ring], "a ring name")?;
            self.expect_sym(',')?;
            let m = self.ref_ident(&[NameKind::Module], "a module name")?;
            self.expect_sym(')')?;
            RingExpr::Idealization(a, m)
        } else {
            return self.err(&["`Z`", "`product`", "`quotient`", "`idealization`"]);
        };
        self.declare(&name, NameKind::Ring)?;
        Ok(StatementKind::Ring { name, expr })
    }

    fn set_stmt(&mut self) -> Result<StatementKind, ParseError> {
        let name = self.expect_ident("a set name")?;
        self.expect_keyword("in")?;
        let ring = self.ref_ident(&[NameKind::Ring], "a ring name")?;
        self.expect_sym('=')?;
        let expr = if self.eat_keyword("closure") {
            SetExpr::Closure(self.elem_set()?)
        } else if self.eat_keyword("complement_of_prime") {
            self.expect_sym('(')?;
            let ideal = self.ideal_expr()?;
            self.expect_sym(')')?;
            SetExpr::ComplementOfPrime(ideal)
        } else if self.eat_keyword("saturation") {
            self.expect_sym('(')?;
            let base = self.ref_ident(&[NameKind::Set], "a set name")?;
            self.expect_sym(')')?;
            SetExpr::Saturation(base)
        } else if matches!(self.peek(), Some(Tok::Sym('{'))) {
            SetExpr::Literal(self.elem_set()?)
        } else {
            return self.err(&["`{`", "`closure`", "`complement_of_prime`", "`saturation`"]);
        };
        self.declare(&name, NameKind::Set)?;
        Ok(StatementKind::Set { name, ring, expr })
    }

    fn module_stmt(&mut self) -> Result<StatementKind, ParseError> {
        let name = self.expect_ident("a module name")?;
        self.expect_keyword("over")?;
        let ring = self.ref_ident(&[NameKind::Ring], "a ring name")?;
        self.expect_sym('=')?;
        let expr = if self.eat_keyword("regular") {
            ModuleExpr::Regular
        } else if self.eat_keyword("product") {
            self.expect_sym('(')?;
            let a = self.ref_ident(&[NameKind::Module], "a module name")?;
            self.expect_sym(',')?;
            let b = self.ref_ident(&[NameKind::Module], "a module name")?;
            self.expect_sym(')')?;
            ModuleExpr::Product(a, b)
        } else if self.eat_keyword("tables") {
            self.expect_sym('(')?;
            self.expect_keyword("add")?;
            self.expect_sym('=')?;
            let add = self.int_rows()?;
            self.expect_sym(',')?;
            self.expect_keyword("act")?;
            self.expect_sym('=')?;
            let act = self.int_rows()?;
            self.expect_sym(')')?;
            ModuleExpr::Tables { add, act }
        } else {
            return self.err(&["`regular`", "`product`", "`tables`"]);
        };
        self.declare(&name, NameKind::Module)?;
        Ok(StatementKind::Module { name, ring, expr })
    }

    fn submodule_stmt(&mut self) -> Result<StatementKind, ParseError> {
        let name = self.expect_ident("a submodule name")?;
        self.expect_keyword("of")?;
        let module = self.ref_ident(&[NameKind::Module], "a module name")?;
        self.expect_sym('=')?;
        let expr = if self.eat_keyword("span") {
            SubExpr::Span(self.elem_set()?)
        } else if self.eat_keyword("zero") {
            SubExpr::Zero
        } else if self.eat_keyword("full") {
            SubExpr::Full
        } else {
            return self.err(&["`span`", "`zero`", "`full`"]);
        };
        self.declare(&name, NameKind::Submodule)?;
        Ok(StatementKind::Submodule { name, module, expr })
    }

    fn prop(&mut self) -> Result<Prop, ParseError> {
        const PROPS: &[&str] = &[
            "secondary",
            "second",
            "s_second",
            "s_secondary",
            "s_prime",
            "s_primary",
            "quasi_cotorsion_free",
            "multiplication",
            "comultiplication",
        ];
        let word = match self.peek() {
            Some(Tok::Ident(s)) if PROPS.contains(&s.as_str()) => s.clone(),
            _ => return self.err(PROPS),
        };
        self.pos += 1;
        Ok(match word.as_str() {
            "secondary" => Prop::Secondary,
            "second" => Prop::Second,
            "s_second" => Prop::SSecond,
            "s_secondary" => {
                if self.eat_sym(':') {
                    let form = match self.peek() {
                        Some(Tok::Ident(f)) if f == "a" => SecondaryForm::A,
                        Some(Tok::Ident(f)) if f == "b" => SecondaryForm::B,
                        Some(Tok::Ident(f)) if f == "c" => SecondaryForm::C,
                        Some(Tok::Ident(f)) if f == "d" => SecondaryForm::D,
                        _ => return self.err(&["`a`", "`b`", "`c`", "`d`"]),
                    };
                    self.pos += 1;
                    Prop::SSecondary(Some(form))
                } else {
                    Prop::SSecondary(None)
                }
            }
            "s_prime" => Prop::SPrime,
            "s_primary" => Prop::SPrimary,
            "quasi_cotorsion_free" => Prop::QuasiCotorsionFree,
            "multiplication" => Prop::Multiplication,
            "comultiplication" => Prop::Comultiplication,
            _ => unreachable!(),
        })
    }

    fn decide_stmt(&mut self) -> Result<StatementKind, ParseError> {
        let prop = self.prop()?;
        let target_kinds: &[NameKind] = if prop.needs_module_target() {
            &[NameKind::Module]
        } else {
            &[NameKind::Module, NameKind::Submodule]
        };
        let target = self.ref_ident(target_kinds, "a module or submodule name")?;
        let set = if prop.needs_set() {
            Some(self.ref_ident(&[NameKind::Set], "a set name")?)
        } else {
            None
        };
        Ok(StatementKind::Command(Command::Decide {
            prop,
            target,
            set,
        }))
    }

    fn enumerate_stmt(&mut self) -> Result<StatementKind, ParseError> {
        let what = if self.eat_keyword("submodules") {
            EnumerateWhat::Submodules
        } else if self.eat_keyword("ideals") {
            EnumerateWhat::Ideals
        } else if self.eat_keyword("ci") {
            EnumerateWhat::Ci
        } else {
            return self.err(&["`submodules`", "`ideals`", "`ci`"]);
        };
        let target = match what {
            EnumerateWhat::Ideals => self.ref_ident(&[NameKind::Ring], "a ring name")?,
            _ => self.ref_ident(&[NameKind::Module], "a module name")?,
        };
        Ok(StatementKind::Command(Command::Enumerate { what, target }))
    }

    fn verify_stmt(&mut self) -> Result<StatementKind, ParseError> {
        if self.eat_keyword("all") {
            let ring = self.ref_ident(&[NameKind::Ring], "a ring name")?;
            let module = self.ref_ident(&[NameKind::Module], "a module name")?;
            let set = self.ref_ident(&[NameKind::Set], "a set name")?;
            Ok(StatementKind::Command(Command::VerifyAll {
                ring,
                module,
                set,
            }))
        } else {
            let law = self.expect_ident("a law identifier or `all`")?;
            let ring = self.ref_ident(&[NameKind::Ring], "a ring name")?;
            let module = self.ref_ident(&[NameKind::Module], "a module name")?;
            let set = self.ref_ident(&[NameKind::Set], "a set name")?;
            Ok(StatementKind::Command(Command::VerifyLaw {
                law,
                ring,
                module,
                set,
            }))
        }
    }

    fn statement(&mut self) -> Result<StatementKind, ParseError> {
        if self.eat_keyword("ring") {
            self.ring_stmt()
        } else if self.eat_keyword("set") {
            self.set_stmt()
        } else if self.eat_keyword("module") {
            self.module_stmt()
        } else if self.eat_keyword("submodule") {
            self.submodule_stmt()
        } else if self.eat_keyword("decide") {
            self.decide_stmt()
        } else if self.eat_keyword("enumerate") {
            self.enumerate_stmt()
        } else if self.eat_keyword("verify") {
            self.verify_stmt()
        } else {
            self.err(&[
                "`ring`",
                "`set`",
                "`module`",
                "`submodule`",
                "`decide`",
                "`enumerate`",
                "`verify`",
            ])
        }
    }
}

/// Parses a script, resolving every name reference.
pub fn parse_script(text: &str) -> Result<Script, ParseError> {
    let mut names: HashMap<String, NameKind> = HashMap::new();
    let mut statements = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let toks = tokenize(raw, line_no)?;
        if toks.is_empty() {
            continue;
        }
        let mut parser = Parser {
            toks,
            pos: 0,
            line: line_no,
            names: &mut names,
        };
        let kind = parser.statement()?;
        parser.end()?;
        statements.push(Statement {
            kind,
            loc: Loc {
                line: line_no,
                col: 1,
            },
        });
    }
    Ok(Script { statements })
}
