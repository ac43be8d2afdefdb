//! Text format for algebra presentations.
//!
//! ```text
//! # comments run to end of line
//! algebra L5_7 dim 5
//! [x1,x2] = x3
//! [x1,x3] = x4
//! [x1,x4] = x5
//! ```
//!
//! Right-hand sides are `0` or `c*xk` terms joined by `+`/`-`, where `c` is an
//! integer or fraction (the first term may carry a leading `-`). Unlisted
//! brackets are zero and `[xj,xi]` lines are normalized by antisymmetry. The
//! inline form `<x1,x2,x3 | [x1,x2]=x3>` is accepted as well.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::exec::Execution;
use crate::lie::{format_vector, LieAlgebra, LieError};
use crate::linalg::{Scalar, SparseVec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DslError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}: unknown generator {generator} (algebra has dimension {dim})")]
    UnknownGenerator {
        line: usize,
        generator: String,
        dim: usize,
    },
    #[error("line {line}: bracket [x{i},x{j}] was already defined differently")]
    DuplicateInconsistentBracket { line: usize, i: usize, j: usize },
    #[error("Jacobi identity fails on {} triple(s): {}", .violations.len(), jacobi_list(.violations))]
    Jacobi { violations: Vec<LieError> },
    #[error(transparent)]
    Lie(#[from] LieError),
}

fn jacobi_list(violations: &[LieError]) -> String {
    violations
        .iter()
        .map(|v| match v {
            LieError::JacobiViolation { i, j, k, residual } => {
                format!("(x{i},x{j},x{k}) residual {}", format_vector(residual))
            }
            other => other.to_string(),
        })
        .collect::<Vec<_>>()
        .join("; ")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BracketStatement {
    pub line: usize,
    /// 0-based generator indices with `i < j` after normalization.
    pub i: usize,
    pub j: usize,
    pub rhs: SparseVec,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresentationAst {
    pub name: String,
    pub dim: usize,
    pub brackets: Vec<BracketStatement>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    LBracket,
    RBracket,
    LAngle,
    RAngle,
    Pipe,
    Comma,
    Eq,
    Plus,
    Minus,
    Star,
    Slash,
    Int(String),
    Ident(String),
}

fn normalize(text: &str) -> String {
    text.chars()
        .map(|ch| match ch {
            '⟨' => '<',
            '⟩' => '>',
            '−' => '-',
            '₀'..='₉' => char::from_digit(ch as u32 - '₀' as u32, 10).unwrap(),
            other => other,
        })
        .collect()
}

/// Tokens of one line with their 1-based columns.
fn tokenize(line: &str, line_no: usize) -> Result<Vec<(Tok, usize)>, DslError> {
    let chars: Vec<char> = line.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let ch = chars[i];
        let col = i + 1;
        let simple = match ch {
            '[' => Some(Tok::LBracket),
            ']' => Some(Tok::RBracket),
            '<' => Some(Tok::LAngle),
            '>' => Some(Tok::RAngle),
            '|' => Some(Tok::Pipe),
            ',' => Some(Tok::Comma),
            '=' => Some(Tok::Eq),
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            _ => None,
        };
        if let Some(tok) = simple {
            out.push((tok, col));
            i += 1;
        } else if ch.is_whitespace() {
            i += 1;
        } else if ch.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            out.push((Tok::Int(chars[start..i].iter().collect()), col));
        } else if ch.is_alphabetic() || ch == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), col));
        } else {
            return Err(DslError::Syntax {
                line: line_no,
                column: col,
                message: format!("unexpected character '{ch}'"),
            });
        }
    }
    Ok(out)
}

struct Cursor<'a> {
    toks: &'a [(Tok, usize)],
    pos: usize,
    line: usize,
    end_col: usize,
}

impl<'a> Cursor<'a> {
    fn new(toks: &'a [(Tok, usize)], line: usize, end_col: usize) -> Self {
        Self {
            toks,
            pos: 0,
            line,
            end_col,
        }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn column(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |(_, c)| *c)
    }

    fn error(&self, message: impl Into<String>) -> DslError {
        DslError::Syntax {
            line: self.line,
            column: self.column(),
            message: message.into(),
        }
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), DslError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected {what}")))
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn int(&mut self) -> Result<BigInt, DslError> {
        match self.peek() {
            Some(Tok::Int(s)) => {
                let v = s.parse().expect("digits");
                self.pos += 1;
                Ok(v)
            }
            _ => Err(self.error("expected integer")),
        }
    }

    /// Generator `xK`, returned 0-based.
    fn generator(&mut self, dim: usize) -> Result<usize, DslError> {
        match self.peek() {
            Some(Tok::Ident(name)) => {
                let name = name.clone();
                let index = name
                    .strip_prefix('x')
                    .and_then(|digits| digits.parse::<usize>().ok())
                    .ok_or_else(|| self.error(format!("expected generator, found '{name}'")))?;
                self.pos += 1;
                if index == 0 || index > dim {
                    return Err(DslError::UnknownGenerator {
                        line: self.line,
                        generator: name,
                        dim,
                    });
                }
                Ok(index - 1)
            }
            _ => Err(self.error("expected generator")),
        }
    }

    fn coefficient(
        &mut self,
        params: &BTreeMap<String, Scalar>,
    ) -> Result<Option<Scalar>, DslError> {
        let value = match self.peek() {
            Some(Tok::Int(_)) => {
                let numer = self.int()?;
                let denom = if self.peek() == Some(&Tok::Slash) {
                    self.pos += 1;
                    let d = self.int()?;
                    if d.is_zero() {
                        return Err(self.error("zero denominator"));
                    }
                    d
                } else {
                    BigInt::one()
                };
                Scalar::new(numer, denom)
            }
            Some(Tok::Ident(name)) if params.contains_key(name) => {
                let v = params[name].clone();
                self.pos += 1;
                v
            }
            _ => return Ok(None),
        };
        Ok(Some(value))
    }

    fn term(
        &mut self,
        dim: usize,
        params: &BTreeMap<String, Scalar>,
    ) -> Result<SparseVec, DslError> {
        let coeff = match self.coefficient(params)? {
            Some(c) => {
                self.expect(Tok::Star, "'*' after coefficient")?;
                c
            }
            None => Scalar::one(),
        };
        let g = self.generator(dim)?;
        Ok(SparseVec::from_pairs(vec![(g, coeff)]))
    }

    fn combo(
        &mut self,
        dim: usize,
        params: &BTreeMap<String, Scalar>,
    ) -> Result<SparseVec, DslError> {
        if let Some(Tok::Int(s)) = self.peek() {
            if s.chars().all(|c| c == '0')
                && matches!(
                    self.toks.get(self.pos + 1).map(|(t, _)| t),
                    None | Some(Tok::Comma | Tok::RAngle)
                )
            {
                self.pos += 1;
                return Ok(SparseVec::new());
            }
        }
        let mut sign = Scalar::one();
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            sign = -sign;
        }
        let mut total = SparseVec::new();
        total.add_scaled(&sign, &self.term(dim, params)?);
        loop {
            let sign = match self.peek() {
                Some(Tok::Plus) => Scalar::one(),
                Some(Tok::Minus) => -Scalar::one(),
                _ => break,
            };
            self.pos += 1;
            total.add_scaled(&sign, &self.term(dim, params)?);
        }
        Ok(total)
    }

    /// `[xi,xj] = combo`, normalized to `i < j`.
    fn statement(
        &mut self,
        dim: usize,
        params: &BTreeMap<String, Scalar>,
    ) -> Result<BracketStatement, DslError> {
        self.expect(Tok::LBracket, "'['")?;
        let start_col = self.column();
        let i = self.generator(dim)?;
        self.expect(Tok::Comma, "','")?;
        let j = self.generator(dim)?;
        self.expect(Tok::RBracket, "']'")?;
        self.expect(Tok::Eq, "'='")?;
        let rhs = self.combo(dim, params)?;
        if i == j {
            return Err(DslError::Syntax {
                line: self.line,
                column: start_col,
                message: format!(
                    "[x{0},x{0}] is zero by antisymmetry and cannot be assigned",
                    i + 1
                ),
            });
        }
        Ok(if i < j {
            BracketStatement {
                line: self.line,
                i,
                j,
                rhs,
            }
        } else {
            BracketStatement {
                line: self.line,
                i: j,
                j: i,
                rhs: rhs.negated(),
            }
        })
    }
}

/// Parses a single right-hand side such as `2*x3 - eps*x5`.
pub(crate) fn parse_combo(
    text: &str,
    dim: usize,
    params: &BTreeMap<String, Scalar>,
) -> Result<SparseVec, DslError> {
    let text = normalize(text);
    let toks = tokenize(&text, 1)?;
    let mut cursor = Cursor::new(&toks, 1, text.chars().count() + 1);
    let v = cursor.combo(dim, params)?;
    if !cursor.at_end() {
        return Err(cursor.error("trailing input"));
    }
    Ok(v)
}

fn strip_comment(line: &str) -> &str {
    line.split_once('#').map_or(line, |(head, _)| head)
}

fn push_statement(
    ast: &mut PresentationAst,
    seen: &mut BTreeMap<(usize, usize), SparseVec>,
    stmt: BracketStatement,
) -> Result<(), DslError> {
    if let Some(prev) = seen.get(&(stmt.i, stmt.j)) {
        if prev != &stmt.rhs {
            return Err(DslError::DuplicateInconsistentBracket {
                line: stmt.line,
                i: stmt.i + 1,
                j: stmt.j + 1,
            });
        }
        return Ok(());
    }
    seen.insert((stmt.i, stmt.j), stmt.rhs.clone());
    ast.brackets.push(stmt);
    Ok(())
}

fn parse_inline(text: &str) -> Result<PresentationAst, DslError> {
    let flat: String = text
        .lines()
        .map(strip_comment)
        .collect::<Vec<_>>()
        .join(" ");
    let toks = tokenize(&flat, 1)?;
    let mut cursor = Cursor::new(&toks, 1, flat.chars().count() + 1);
    cursor.expect(Tok::LAngle, "'<'")?;
    let mut dim = 0;
    loop {
        match cursor.peek() {
            Some(Tok::Ident(name)) if name == &format!("x{}", dim + 1) => {
                cursor.pos += 1;
                dim += 1;
            }
            _ => return Err(cursor.error(format!("expected generator x{}", dim + 1))),
        }
        match cursor.next() {
            Some(Tok::Comma) => continue,
            Some(Tok::Pipe) => break,
            Some(Tok::RAngle) => {
                cursor.pos -= 1;
                break;
            }
            _ => {
                cursor.pos -= 1;
                return Err(cursor.error("expected ',' or '|'"));
            }
        }
    }
    let mut ast = PresentationAst {
        name: "presentation".to_string(),
        dim,
        brackets: Vec::new(),
    };
    let mut seen = BTreeMap::new();
    let params = BTreeMap::new();
    if cursor.peek() != Some(&Tok::RAngle) {
        loop {
            let stmt = cursor.statement(dim, &params)?;
            push_statement(&mut ast, &mut seen, stmt)?;
            match cursor.next() {
                Some(Tok::Comma) => continue,
                Some(Tok::RAngle) => {
                    cursor.pos -= 1;
                    break;
                }
                _ => {
                    cursor.pos -= 1;
                    return Err(cursor.error("expected ',' or '>'"));
                }
            }
        }
    }
    cursor.expect(Tok::RAngle, "'>'")?;
    if !cursor.at_end() {
        return Err(cursor.error("trailing input after '>'"));
    }
    Ok(ast)
}

pub fn parse_ast(text: &str) -> Result<PresentationAst, DslError> {
    let text = normalize(text);
    if text
        .lines()
        .map(strip_comment)
        .find(|l| !l.trim().is_empty())
        .is_some_and(|l| l.trim_start().starts_with('<'))
    {
        return parse_inline(&text);
    }
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, strip_comment(l)))
        .filter(|(_, l)| !l.trim().is_empty());
    let Some((header_no, header)) = lines.next() else {
        return Err(DslError::Syntax {
            line: 1,
            column: 1,
            message: "empty input, expected 'algebra NAME dim N'".to_string(),
        });
    };
    let toks = tokenize(header, header_no)?;
    let mut cursor = Cursor::new(&toks, header_no, header.chars().count() + 1);
    match cursor.next() {
        Some(Tok::Ident(k)) if k == "algebra" => {}
        _ => {
            cursor.pos = 0;
            return Err(cursor.error("expected 'algebra'"));
        }
    }
    let name = match cursor.next() {
        Some(Tok::Ident(n)) => n,
        _ => {
            cursor.pos -= 1;
            return Err(cursor.error("expected algebra name"));
        }
    };
    match cursor.next() {
        Some(Tok::Ident(k)) if k == "dim" => {}
        _ => {
            cursor.pos -= 1;
            return Err(cursor.error("expected 'dim'"));
        }
    }
    let dim: usize = cursor
        .int()?
        .try_into()
        .map_err(|_| cursor.error("dimension too large"))?;
    if !cursor.at_end() {
        return Err(cursor.error("trailing input after dimension"));
    }
    let mut ast = PresentationAst {
        name,
        dim,
        brackets: Vec::new(),
    };
    let mut seen = BTreeMap::new();
    let params = BTreeMap::new();
    for (line_no, line) in lines {
        let toks = tokenize(line, line_no)?;
        let mut cursor = Cursor::new(&toks, line_no, line.chars().count() + 1);
        let stmt = cursor.statement(dim, &params)?;
        if !cursor.at_end() {
            return Err(cursor.error("trailing input"));
        }
        push_statement(&mut ast, &mut seen, stmt)?;
    }
    Ok(ast)
}

impl PresentationAst {
    /// Builds the algebra and checks the Jacobi identity.
    pub fn build(&self) -> Result<LieAlgebra, DslError> {
        let mut l = LieAlgebra::new(self.dim).with_name(self.name.clone());
        for stmt in &self.brackets {
            l.set_bracket(stmt.i, stmt.j, stmt.rhs.clone())?;
        }
        let violations = l.jacobi_violations(Execution::Sequential);
        if !violations.is_empty() {
            return Err(DslError::Jacobi { violations });
        }
        Ok(l)
    }
}

/// Parses, validates and requires nilpotency.
pub fn parse_presentation(text: &str) -> Result<LieAlgebra, DslError> {
    let l = parse_ast(text)?.build()?;
    l.series()?;
    Ok(l)
}

fn combo_string(v: &SparseVec) -> String {
    if v.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (pos, (k, c)) in v.iter().enumerate() {
        let negative = c < &Scalar::zero();
        let magnitude = if negative { -c.clone() } else { c.clone() };
        match (pos, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        if !magnitude.is_one() {
            out.push_str(&format!("{magnitude}*"));
        }
        out.push_str(&format!("x{}", k + 1));
    }
    out
}

/// Serializes in the line format; parsing the result gives back the same algebra.
pub fn to_dsl(l: &LieAlgebra) -> String {
    let name: String = l
        .name()
        .unwrap_or("L")
        .chars()
        .map(|c| {
            if c.is_alphanumeric() || c == '_' {
                c
            } else {
                '_'
            }
        })
        .collect();
    let name = if name.starts_with(|c: char| c.is_alphabetic() || c == '_') {
        name
    } else {
        format!("L{name}")
    };
    let mut out = format!("algebra {name} dim {}\n", l.dim());
    for (&(i, j), v) in l.structure_constants() {
        out.push_str(&format!("[x{},x{}] = {}\n", i + 1, j + 1, combo_string(v)));
    }
    out
}
