//! Oriented link diagrams as signed Gauss codes.
//!
//! A diagram is an ordered list of components; each component is a cyclic
//! word of *passages*, one per visit to a crossing. A passage records the
//! crossing label, whether the strand passes over or under, and the crossing
//! sign. Every crossing label must occur exactly twice in the whole diagram —
//! once over, once under, with equal signs — but no planarity check is made:
//! the structure is purely combinatorial.
//!
//! Text form:
//!
//! ```text
//! diagram   := component (";" component)*
//! component := "(" passage* ")"
//! passage   := ("O" | "U") integer ("+" | "-")
//! ```
//!
//! A diagram consisting of a single component may also be written without
//! the surrounding parentheses. [`LinkDiagram::to_gauss`] always emits the
//! parenthesized form with single spaces, e.g. `(O1+ U2+);(U1+ O2+)`, and
//! renders a crossing-free circle as `( )`.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

/// Whether a strand passes over or under at a crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Role {
    Over,
    Under,
}

impl Role {
    pub fn flipped(self) -> Role {
        match self {
            Role::Over => Role::Under,
            Role::Under => Role::Over,
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Role::Over => "O",
            Role::Under => "U",
        })
    }
}

/// The sign of a crossing under the diagram's orientations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flipped(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// One visit of a component to a crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Passage {
    pub id: u32,
    pub role: Role,
    pub sign: Sign,
}

impl fmt::Display for Passage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}", self.role, self.id, self.sign)
    }
}

/// Where a crossing's two passages sit: `(component index, position)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CrossingRecord {
    pub id: u32,
    pub sign: Sign,
    /// Location of the over-passage.
    pub over: (usize, usize),
    /// Location of the under-passage.
    pub under: (usize, usize),
}

/// Errors from building or parsing a diagram.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    /// The text does not match the Gauss-code grammar.
    #[error("syntax error at line {line}, column {col}: {message}")]
    Syntax {
        line: usize,
        col: usize,
        message: String,
    },
    /// The passages are grammatical but do not describe a diagram
    /// (a label not visited exactly once over and once under, or with
    /// mismatched signs).
    #[error("inconsistent diagram: {message}")]
    Consistency { message: String },
    /// A rewrite location does not match the requested move's pattern.
    #[error("invalid move location: {message}")]
    InvalidLocation { message: String },
}

fn consistency(message: impl Into<String>) -> DiagramError {
    DiagramError::Consistency {
        message: message.into(),
    }
}

/// An oriented link diagram. Immutable once built; Reidemeister moves
/// produce new diagrams.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkDiagram {
    components: Vec<Vec<Passage>>,
    crossings: BTreeMap<u32, CrossingRecord>,
}

impl LinkDiagram {
    /// Builds a diagram from raw components, checking that every crossing
    /// label occurs exactly once over and once under with matching signs.
    pub fn from_components(components: Vec<Vec<Passage>>) -> Result<Self, DiagramError> {
        if components.is_empty() {
            return Err(consistency("a diagram needs at least one component"));
        }
        let mut over: BTreeMap<u32, (usize, usize, Sign)> = BTreeMap::new();
        let mut under: BTreeMap<u32, (usize, usize, Sign)> = BTreeMap::new();
        for (ci, comp) in components.iter().enumerate() {
            for (pi, p) in comp.iter().enumerate() {
                let table = match p.role {
                    Role::Over => &mut over,
                    Role::Under => &mut under,
                };
                if table.insert(p.id, (ci, pi, p.sign)).is_some() {
                    return Err(consistency(format!(
                        "crossing {} has more than one {} passage",
                        p.id,
                        match p.role {
                            Role::Over => "over",
                            Role::Under => "under",
                        }
                    )));
                }
            }
        }
        let mut crossings = BTreeMap::new();
        for (&id, &(oc, op, osign)) in &over {
            let &(uc, up, usign) = under
                .get(&id)
                .ok_or_else(|| consistency(format!("crossing {id} has no under passage")))?;
            if osign != usign {
                return Err(consistency(format!(
                    "crossing {id} has sign {osign} over but {usign} under"
                )));
            }
            crossings.insert(
                id,
                CrossingRecord {
                    id,
                    sign: osign,
                    over: (oc, op),
                    under: (uc, up),
                },
            );
        }
        for &id in under.keys() {
            if !over.contains_key(&id) {
                return Err(consistency(format!("crossing {id} has no over passage")));
            }
        }
        Ok(LinkDiagram {
            components,
            crossings,
        })
    }

    pub fn components(&self) -> &[Vec<Passage>] {
        &self.components
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn crossing(&self, id: u32) -> Option<&CrossingRecord> {
        self.crossings.get(&id)
    }

    /// All crossings in ascending label order.
    pub fn crossings(&self) -> impl Iterator<Item = &CrossingRecord> {
        self.crossings.values()
    }

    /// The smallest label strictly greater than every existing one.
    pub fn fresh_id(&self) -> u32 {
        self.crossings.keys().next_back().map_or(1, |max| max + 1)
    }

    /// Parses the textual Gauss-code form. A single component may omit its
    /// parentheses.
    pub fn parse_gauss(input: &str) -> Result<Self, DiagramError> {
        Parser::new(input).parse()
    }

    /// Canonical text form: parenthesized components joined by `;`, passages
    /// separated by single spaces, a crossing-free circle as `( )`.
    pub fn to_gauss(&self) -> String {
        self.components
            .iter()
            .map(|comp| {
                if comp.is_empty() {
                    "( )".to_string()
                } else {
                    let inner = comp
                        .iter()
                        .map(Passage::to_string)
                        .collect::<Vec<_>>()
                        .join(" ");
                    format!("({inner})")
                }
            })
            .collect::<Vec<_>>()
            .join(";")
    }
}

impl fmt::Display for LinkDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_gauss())
    }
}

impl std::str::FromStr for LinkDiagram {
    type Err = DiagramError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        LinkDiagram::parse_gauss(s)
    }
}

struct Parser<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    col: usize,
}

impl<'a> Parser<'a> {
    fn new(input: &'a str) -> Self {
        Parser {
            chars: input.chars().peekable(),
            line: 1,
            col: 1,
        }
    }

    fn error(&self, message: impl Into<String>) -> DiagramError {
        DiagramError::Syntax {
            line: self.line,
            col: self.col,
            message: message.into(),
        }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next();
        match c {
            Some('\n') => {
                self.line += 1;
                self.col = 1;
            }
            Some(_) => self.col += 1,
            None => {}
        }
        c
    }

    fn skip_ws(&mut self) {
        while matches!(self.chars.peek(), Some(c) if c.is_whitespace()) {
            self.bump();
        }
    }

    fn parse(&mut self) -> Result<LinkDiagram, DiagramError> {
        self.skip_ws();
        let components = match self.chars.peek() {
            None => return Err(self.error("empty diagram")),
            Some('(') => {
                let mut comps = vec![self.parse_component()?];
                loop {
                    self.skip_ws();
                    match self.chars.peek() {
                        Some(';') => {
                            self.bump();
                            self.skip_ws();
                            comps.push(self.parse_component()?);
                        }
                        Some(c) => {
                            let c = *c;
                            return Err(
                                self.error(format!("expected ';' or end of input, found {c:?}"))
                            );
                        }
                        None => break,
                    }
                }
                comps
            }
            // Bare shorthand: one unparenthesized component.
            Some('O') | Some('U') => vec![self.parse_passages(None)?],
            Some(c) => {
                let c = *c;
                return Err(self.error(format!("expected '(' or a passage, found {c:?}")));
            }
        };
        LinkDiagram::from_components(components)
    }

    fn parse_component(&mut self) -> Result<Vec<Passage>, DiagramError> {
        match self.chars.peek() {
            Some('(') => {
                self.bump();
                let passages = self.parse_passages(Some(')'))?;
                self.bump(); // the ')'
                Ok(passages)
            }
            Some(c) => {
                let c = *c;
                Err(self.error(format!("expected '(', found {c:?}")))
            }
            None => Err(self.error("expected '(', found end of input")),
        }
    }

    /// Reads passages until `stop` (which is left unconsumed) or, with
    /// `stop = None`, until end of input.
    fn parse_passages(&mut self, stop: Option<char>) -> Result<Vec<Passage>, DiagramError> {
        let mut passages = Vec::new();
        loop {
            self.skip_ws();
            match self.chars.peek() {
                Some(&c) if Some(c) == stop => return Ok(passages),
                None if stop.is_none() => return Ok(passages),
                None => {
                    return Err(self.error(format!(
                        "expected {:?} before end of input",
                        stop.unwrap()
                    )))
                }
                Some(_) => passages.push(self.parse_passage()?),
            }
        }
    }

    fn parse_passage(&mut self) -> Result<Passage, DiagramError> {
        let role = match self.chars.peek() {
            Some('O') => Role::Over,
            Some('U') => Role::Under,
            Some(c) => {
                let c = *c;
                return Err(self.error(format!("expected 'O' or 'U', found {c:?}")));
            }
            None => return Err(self.error("expected 'O' or 'U', found end of input")),
        };
        self.bump();
        let mut digits = String::new();
        while matches!(self.chars.peek(), Some(c) if c.is_ascii_digit()) {
            digits.push(self.bump().unwrap());
        }
        if digits.is_empty() {
            return Err(self.error("expected a crossing label"));
        }
        let id: u32 = digits
            .parse()
            .map_err(|_| self.error(format!("crossing label {digits} out of range")))?;
        if id == 0 {
            return Err(self.error("crossing labels start at 1"));
        }
        let sign = match self.chars.peek() {
            Some('+') => Sign::Plus,
            Some('-') => Sign::Minus,
            Some(c) => {
                let c = *c;
                return Err(self.error(format!("expected '+' or '-', found {c:?}")));
            }
            None => return Err(self.error("expected '+' or '-', found end of input")),
        };
        self.bump();
        Ok(Passage { id, role, sign })
    }
}
