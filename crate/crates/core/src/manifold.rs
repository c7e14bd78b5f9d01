//! A small algebra of manifold descriptions.
//!
//! [`ManifoldExpr`] denotes a smooth orientable manifold built from a few
//! closed atoms (spheres, tori, lens spaces, oriented surfaces), products,
//! connected sums, and an opaque `custom(...)` escape hatch carrying the data
//! the classification rules actually consume: dimension, Z₂-Betti numbers,
//! compactness, connectedness and a caller-asserted parallelizability.
//!
//! The operations here are the homological bookkeeping the classification
//! engine needs: Z₂-Betti vectors (products convolve, by the field
//! Künneth formula), the Kervaire semicharacteristic of odd-dimensional
//! compact manifolds, an Euler characteristic, and a parallelizability
//! decision cascade that only answers `True`/`False` when a theorem applies
//! and stays `Unknown` otherwise.
//!
//! Expressions can be parsed from a compact text grammar:
//!
//! ```text
//! expr := prod ("#" prod)*              connected sum (binds loosest)
//! prod := atom ("x" atom)*              cartesian product
//! atom := "S" k | "T" k | "L(" p "," q ")" | "Sigma(" g ")"
//!       | "custom(" k ";" b0 "," ... "," bk ";" compact ";" connected ";" par ")"
//!       | "(" expr ")"
//! ```

use std::fmt;

use thiserror::Error;

/// Largest manifold dimension the algebra accepts.
///
/// Keeps every Betti computation (binomials for tori, convolutions for
/// products) comfortably inside `u64`; nothing in the classification tables
/// comes near it.
pub const MAX_DIM: u32 = 48;

/// Three-valued logic for classification answers.
///
/// `Unknown` is not an error: it is the honest result whenever no rule in
/// the engine's rule base decides a property.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TriState {
    True,
    False,
    Unknown,
}

impl TriState {
    pub fn is_true(self) -> bool {
        self == TriState::True
    }

    pub fn is_false(self) -> bool {
        self == TriState::False
    }

    /// Three-valued conjunction: `False` dominates, then `Unknown`.
    pub fn and(self, other: TriState) -> TriState {
        use TriState::*;
        match (self, other) {
            (False, _) | (_, False) => False,
            (True, True) => True,
            _ => Unknown,
        }
    }
}

impl From<bool> for TriState {
    fn from(b: bool) -> Self {
        if b {
            TriState::True
        } else {
            TriState::False
        }
    }
}

impl fmt::Display for TriState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TriState::True => "true",
            TriState::False => "false",
            TriState::Unknown => "unknown",
        })
    }
}

impl std::str::FromStr for TriState {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "true" | "yes" => Ok(TriState::True),
            "false" | "no" => Ok(TriState::False),
            "unknown" => Ok(TriState::Unknown),
            other => Err(format!("expected true/false/unknown, got {other:?}")),
        }
    }
}

/// Semantic errors raised by manifold operations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ManifoldError {
    /// The operation needs a compact manifold (Betti vectors,
    /// semicharacteristic, Euler characteristic).
    #[error("operation requires a compact manifold: {0}")]
    NonCompact(String),
    /// The semicharacteristic is only defined in odd dimensions.
    #[error("semicharacteristic undefined in even dimension {0}")]
    EvenDimension(u32),
    /// Pieces of a connected sum (or a custom Betti vector) disagree on
    /// dimension.
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: u32, found: u32 },
    /// `milnor_sum` of no summands.
    #[error("empty list of complete-intersection values")]
    EmptyList,
    /// Any other structurally invalid expression (bad genus bound, lens
    /// parameters not coprime, too few factors, ...).
    #[error("invalid manifold expression: {0}")]
    InvalidExpr(String),
}

/// A manifold description.
///
/// Every constructor except `Custom` denotes a compact connected orientable
/// manifold; `Custom` carries explicit compactness/connectedness flags.
/// Non-orientable manifolds are out of scope throughout the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ManifoldExpr {
    /// The k-sphere, k ≥ 1.
    Sphere { dim: u32 },
    /// The k-torus (S¹)^k, k ≥ 1.
    Torus { dim: u32 },
    /// The lens space L(p, q), a closed orientable 3-manifold; p ≥ 1 and
    /// gcd(p, q) = 1. L(1, 0) is S³.
    LensSpace { p: u64, q: u64 },
    /// The closed oriented surface of genus g ≥ 0.
    OrientedSurface { genus: u32 },
    /// A cartesian product of two or more factors.
    Product(Vec<ManifoldExpr>),
    /// A connected sum of one or more closed connected pieces of one common
    /// dimension ≥ 2. A singleton sum is the piece itself.
    ConnectedSum(Vec<ManifoldExpr>),
    /// An opaque manifold given by the invariants the engine consumes.
    Custom {
        dim: u32,
        /// Z₂-Betti numbers b₀ … b_k (length dim + 1).
        z2_betti: Vec<u64>,
        compact: bool,
        connected: bool,
        /// Caller-asserted parallelizability; theorems may still override it.
        parallelizable: TriState,
    },
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn binomial(n: u32, k: u32) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * u64::from(n - i) / u64::from(i + 1);
    }
    acc
}

/// Discrete convolution of Betti vectors, i.e. the Z₂ Künneth formula.
fn convolve(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

impl ManifoldExpr {
    /// Intrinsic dimension of the manifold.
    pub fn dim(&self) -> u32 {
        match self {
            ManifoldExpr::Sphere { dim } | ManifoldExpr::Torus { dim } => *dim,
            ManifoldExpr::LensSpace { .. } => 3,
            ManifoldExpr::OrientedSurface { .. } => 2,
            ManifoldExpr::Product(factors) => factors.iter().map(ManifoldExpr::dim).sum(),
            ManifoldExpr::ConnectedSum(pieces) => pieces.first().map_or(0, ManifoldExpr::dim),
            ManifoldExpr::Custom { dim, .. } => *dim,
        }
    }

    /// Whether the manifold is compact (all atoms are; `Custom` decides for
    /// itself and poisons any product containing it).
    pub fn is_compact(&self) -> bool {
        match self {
            ManifoldExpr::Custom { compact, .. } => *compact,
            ManifoldExpr::Product(parts) | ManifoldExpr::ConnectedSum(parts) => {
                parts.iter().all(ManifoldExpr::is_compact)
            }
            _ => true,
        }
    }

    /// Whether the manifold is connected.
    pub fn is_connected(&self) -> bool {
        match self {
            ManifoldExpr::Custom { connected, .. } => *connected,
            ManifoldExpr::Product(parts) | ManifoldExpr::ConnectedSum(parts) => {
                parts.iter().all(ManifoldExpr::is_connected)
            }
            _ => true,
        }
    }

    /// Structural validation; every public operation assumes it has passed.
    pub fn validate(&self) -> Result<(), ManifoldError> {
        if self.dim() > MAX_DIM {
            return Err(ManifoldError::InvalidExpr(format!(
                "dimension {} exceeds the supported maximum {MAX_DIM}",
                self.dim()
            )));
        }
        match self {
            ManifoldExpr::Sphere { dim } | ManifoldExpr::Torus { dim } => {
                if *dim == 0 {
                    return Err(ManifoldError::InvalidExpr(
                        "sphere/torus dimension must be at least 1".into(),
                    ));
                }
            }
            ManifoldExpr::LensSpace { p, q } => {
                if *p == 0 {
                    return Err(ManifoldError::InvalidExpr("lens space needs p >= 1".into()));
                }
                if gcd(*p, *q) != 1 {
                    return Err(ManifoldError::InvalidExpr(format!(
                        "lens space parameters must be coprime: gcd({p}, {q}) != 1"
                    )));
                }
            }
            ManifoldExpr::OrientedSurface { .. } => {}
            ManifoldExpr::Product(factors) => {
                if factors.len() < 2 {
                    return Err(ManifoldError::InvalidExpr(
                        "a product needs at least two factors".into(),
                    ));
                }
                for f in factors {
                    f.validate()?;
                }
            }
            ManifoldExpr::ConnectedSum(pieces) => {
                if pieces.is_empty() {
                    return Err(ManifoldError::InvalidExpr(
                        "a connected sum needs at least one piece".into(),
                    ));
                }
                let dim = pieces[0].dim();
                for p in pieces {
                    p.validate()?;
                    if p.dim() != dim {
                        return Err(ManifoldError::DimensionMismatch {
                            expected: dim,
                            found: p.dim(),
                        });
                    }
                    if !p.is_compact() || !p.is_connected() {
                        return Err(ManifoldError::InvalidExpr(
                            "connected-sum pieces must be closed and connected".into(),
                        ));
                    }
                }
                if dim < 2 {
                    return Err(ManifoldError::InvalidExpr(
                        "connected sums are only formed in dimension >= 2".into(),
                    ));
                }
            }
            ManifoldExpr::Custom {
                dim,
                z2_betti,
                compact,
                connected,
                ..
            } => {
                if *dim == 0 {
                    return Err(ManifoldError::InvalidExpr(
                        "custom manifolds must have dimension >= 1".into(),
                    ));
                }
                if z2_betti.len() != *dim as usize + 1 {
                    return Err(ManifoldError::DimensionMismatch {
                        expected: *dim + 1,
                        found: z2_betti.len() as u32,
                    });
                }
                let b0 = z2_betti[0];
                if *connected && b0 != 1 {
                    return Err(ManifoldError::InvalidExpr(format!(
                        "a connected manifold has b0 = 1, got {b0}"
                    )));
                }
                if !*connected && b0 < 2 {
                    return Err(ManifoldError::InvalidExpr(format!(
                        "a disconnected manifold has b0 >= 2, got {b0}"
                    )));
                }
                if *compact {
                    // Closed oriented manifolds satisfy Poincaré duality over Z₂.
                    let n = z2_betti.len();
                    for i in 0..n {
                        if z2_betti[i] != z2_betti[n - 1 - i] {
                            return Err(ManifoldError::InvalidExpr(
                                "closed-manifold Betti numbers must be palindromic".into(),
                            ));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Z₂-Betti vector b₀ … b_k. Requires compactness.
    pub fn z2_betti(&self) -> Result<Vec<u64>, ManifoldError> {
        if !self.is_compact() {
            return Err(ManifoldError::NonCompact(
                "Z2-Betti vectors are only computed for closed manifolds".into(),
            ));
        }
        Ok(match self {
            ManifoldExpr::Sphere { dim } => {
                let mut v = vec![0; *dim as usize + 1];
                v[0] = 1;
                v[*dim as usize] += 1;
                v
            }
            ManifoldExpr::Torus { dim } => (0..=*dim).map(|i| binomial(*dim, i)).collect(),
            ManifoldExpr::LensSpace { p, .. } => {
                if p % 2 == 0 {
                    vec![1, 1, 1, 1]
                } else {
                    vec![1, 0, 0, 1]
                }
            }
            ManifoldExpr::OrientedSurface { genus } => vec![1, 2 * u64::from(*genus), 1],
            ManifoldExpr::Product(factors) => {
                let mut acc = vec![1u64];
                for f in factors {
                    acc = convolve(&acc, &f.z2_betti()?);
                }
                acc
            }
            ManifoldExpr::ConnectedSum(pieces) => {
                if pieces.len() == 1 {
                    return pieces[0].z2_betti();
                }
                let k = self.dim() as usize;
                let mut v = vec![0u64; k + 1];
                v[0] = 1;
                v[k] = 1;
                for p in pieces {
                    let b = p.z2_betti()?;
                    for i in 1..k {
                        v[i] += b[i];
                    }
                }
                v
            }
            ManifoldExpr::Custom { z2_betti, .. } => z2_betti.clone(),
        })
    }

    /// Kervaire semicharacteristic χ*(L) = Σ_{i=0}^{(k-1)/2} rank H_i(L; Z₂)
    /// of a compact manifold of odd dimension k.
    pub fn semicharacteristic(&self) -> Result<u64, ManifoldError> {
        let k = self.dim();
        if k.is_multiple_of(2) {
            return Err(ManifoldError::EvenDimension(k));
        }
        if !self.is_compact() {
            return Err(ManifoldError::NonCompact(
                "the semicharacteristic is only defined for compact manifolds".into(),
            ));
        }
        let betti = self.z2_betti()?;
        Ok(betti[..=(k as usize - 1) / 2].iter().sum())
    }

    /// Euler characteristic of a compact manifold (alternating Betti sum;
    /// independent of the coefficient field).
    pub fn euler_characteristic(&self) -> Result<i64, ManifoldError> {
        let betti = self.z2_betti()?;
        Ok(betti
            .iter()
            .enumerate()
            .map(|(i, &b)| if i % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum())
    }

    /// Stable parallelizability, as far as the rule base can certify it.
    /// Only ever `True` or `Unknown`; used as a sufficient hypothesis.
    pub(crate) fn stably_parallelizable(&self) -> TriState {
        match self {
            ManifoldExpr::Sphere { .. }
            | ManifoldExpr::Torus { .. }
            | ManifoldExpr::LensSpace { .. }
            | ManifoldExpr::OrientedSurface { .. } => TriState::True,
            ManifoldExpr::Product(parts) | ManifoldExpr::ConnectedSum(parts) => {
                if parts
                    .iter()
                    .all(|p| p.stably_parallelizable() == TriState::True)
                {
                    TriState::True
                } else {
                    TriState::Unknown
                }
            }
            ManifoldExpr::Custom { parallelizable, .. } => {
                if *parallelizable == TriState::True {
                    TriState::True
                } else {
                    TriState::Unknown
                }
            }
        }
    }

    /// Parallelizability of the tangent bundle, decided by a fixed cascade of
    /// theorems; `Unknown` whenever none applies.
    ///
    /// The cascade (first match wins):
    /// 1. S^k is parallelizable iff k ∈ {1, 3, 7}.
    /// 2. Tori and lens spaces are parallelizable.
    /// 3. A closed oriented surface is parallelizable iff its genus is 1.
    /// 4. Every orientable manifold of dimension 1 or 3 is parallelizable.
    /// 5. A closed oriented surface described by Betti data is the torus
    ///    (hence parallelizable) iff b₁ = 2.
    /// 6. A compact manifold with χ ≠ 0 is not parallelizable.
    /// 7. A product of parallelizable manifolds is parallelizable.
    /// 8. A closed product of positive-dimensional stably parallelizable
    ///    factors is parallelizable iff χ = 0.
    /// 9. Closed orientable 3-dimensional products are parallelizable.
    /// 10. A connected sum of two or more pieces is not decided here.
    /// 11. Otherwise the caller-asserted value (for `Custom`) or `Unknown`.
    pub fn parallelizable(&self) -> TriState {
        match self {
            ManifoldExpr::Sphere { dim } => TriState::from(matches!(dim, 1 | 3 | 7)),
            ManifoldExpr::Torus { .. } | ManifoldExpr::LensSpace { .. } => TriState::True,
            ManifoldExpr::OrientedSurface { genus } => TriState::from(*genus == 1),
            ManifoldExpr::Product(factors) => {
                if factors
                    .iter()
                    .all(|f| f.parallelizable() == TriState::True)
                {
                    return TriState::True;
                }
                if self.is_compact() {
                    if factors
                        .iter()
                        .all(|f| f.stably_parallelizable() == TriState::True)
                    {
                        // Closed, all factors stably parallelizable and of
                        // positive dimension: parallelizable iff χ = 0.
                        return TriState::from(self.euler_characteristic() == Ok(0));
                    }
                    if self.euler_characteristic().is_ok_and(|chi| chi != 0) {
                        return TriState::False;
                    }
                    if self.dim() == 3 {
                        return TriState::True;
                    }
                }
                TriState::Unknown
            }
            ManifoldExpr::ConnectedSum(pieces) => {
                if pieces.len() == 1 {
                    pieces[0].parallelizable()
                } else {
                    // Deliberately undecided: the integrability rules handle
                    // connected sums through the semicharacteristic parity
                    // instead of a parallelizability claim.
                    TriState::Unknown
                }
            }
            ManifoldExpr::Custom {
                dim,
                z2_betti,
                compact,
                connected,
                parallelizable,
            } => {
                if matches!(dim, 1 | 3) {
                    return TriState::True;
                }
                if *dim == 2 && *compact && *connected {
                    return TriState::from(z2_betti[1] == 2);
                }
                if *compact {
                    let chi: i64 = z2_betti
                        .iter()
                        .enumerate()
                        .map(|(i, &b)| if i % 2 == 0 { b as i64 } else { -(b as i64) })
                        .sum();
                    if chi != 0 {
                        return TriState::False;
                    }
                }
                *parallelizable
            }
        }
    }
}

/// The complete-intersection degree-sum value of a connected sum: with each
/// piece contributing `values[i]`, the sum contributes `Σ values − (r − 1)`.
pub fn milnor_sum(values: &[i64]) -> Result<i64, ManifoldError> {
    if values.is_empty() {
        return Err(ManifoldError::EmptyList);
    }
    Ok(values.iter().sum::<i64>() - (values.len() as i64 - 1))
}

/// What the complete-intersection value of a compact k-manifold can be.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CiConstraint {
    /// k even: the value is exactly 0.
    Zero,
    /// k odd, k ∉ {1, 3, 7}: the value is an even integer.
    Even,
    /// k ∈ {1, 3, 7}: unconstrained in general; for a compression of an
    /// embedding it equals the semicharacteristic mod 2.
    Unconstrained,
}

impl fmt::Display for CiConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CiConstraint::Zero => "0",
            CiConstraint::Even => "0 mod 2",
            CiConstraint::Unconstrained => {
                "unconstrained (semicharacteristic mod 2 for embeddings)"
            }
        })
    }
}

/// Constraint on the complete-intersection value in dimension k ≥ 1.
pub fn bredon_kosinski_ci(k: u32) -> CiConstraint {
    debug_assert!(k >= 1, "dimension must be positive");
    if k.is_multiple_of(2) {
        CiConstraint::Zero
    } else if matches!(k, 1 | 3 | 7) {
        CiConstraint::Unconstrained
    } else {
        CiConstraint::Even
    }
}

// ---------------------------------------------------------------------------
// Text grammar
// ---------------------------------------------------------------------------

/// Syntax error in a manifold expression, with a byte offset into the input.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("manifold expression syntax error at byte {offset}: {message}")]
pub struct ExprParseError {
    pub offset: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Word(String),
    Int(u64),
    Times,
    Hash,
    LParen,
    RParen,
    Comma,
    Semi,
}

fn lex(input: &str) -> Result<Vec<(usize, Token)>, ExprParseError> {
    let mut out = Vec::new();
    let bytes = input.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '(' => {
                out.push((i, Token::LParen));
                i += 1;
            }
            ')' => {
                out.push((i, Token::RParen));
                i += 1;
            }
            ',' => {
                out.push((i, Token::Comma));
                i += 1;
            }
            ';' => {
                out.push((i, Token::Semi));
                i += 1;
            }
            '#' => {
                out.push((i, Token::Hash));
                i += 1;
            }
            'x' => {
                out.push((i, Token::Times));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let text = &input[start..i];
                let value = text.parse::<u64>().map_err(|_| ExprParseError {
                    offset: start,
                    message: format!("integer {text} out of range"),
                })?;
                out.push((start, Token::Int(value)));
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < bytes.len() && (bytes[i] as char).is_ascii_alphabetic() && bytes[i] != b'x'
                {
                    i += 1;
                }
                out.push((start, Token::Word(input[start..i].to_string())));
            }
            other => {
                return Err(ExprParseError {
                    offset: i,
                    message: format!("unexpected character {other:?}"),
                })
            }
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    input_len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map_or(self.input_len, |(o, _)| *o)
    }

    fn error(&self, message: impl Into<String>) -> ExprParseError {
        ExprParseError {
            offset: self.offset(),
            message: message.into(),
        }
    }

    fn expect(&mut self, want: &Token, what: &str) -> Result<(), ExprParseError> {
        if self.peek() == Some(want) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected {what}")))
        }
    }

    fn expect_int(&mut self, what: &str) -> Result<u64, ExprParseError> {
        match self.peek() {
            Some(Token::Int(v)) => {
                let v = *v;
                self.pos += 1;
                Ok(v)
            }
            _ => Err(self.error(format!("expected {what}"))),
        }
    }

    fn expect_word(&mut self, what: &str) -> Result<String, ExprParseError> {
        match self.peek() {
            Some(Token::Word(w)) => {
                let w = w.clone();
                self.pos += 1;
                Ok(w)
            }
            _ => Err(self.error(format!("expected {what}"))),
        }
    }

    /// expr := prod ("#" prod)*
    fn parse_sum(&mut self) -> Result<ManifoldExpr, ExprParseError> {
        let first = self.parse_prod()?;
        let mut pieces = vec![first];
        while self.peek() == Some(&Token::Hash) {
            self.pos += 1;
            pieces.push(self.parse_prod()?);
        }
        Ok(if pieces.len() == 1 {
            pieces.pop().unwrap()
        } else {
            ManifoldExpr::ConnectedSum(pieces)
        })
    }

    /// prod := atom ("x" atom)*
    fn parse_prod(&mut self) -> Result<ManifoldExpr, ExprParseError> {
        let first = self.parse_atom()?;
        let mut factors = vec![first];
        while self.peek() == Some(&Token::Times) {
            self.pos += 1;
            factors.push(self.parse_atom()?);
        }
        Ok(if factors.len() == 1 {
            factors.pop().unwrap()
        } else {
            ManifoldExpr::Product(factors)
        })
    }

    fn parse_atom(&mut self) -> Result<ManifoldExpr, ExprParseError> {
        match self.peek() {
            Some(Token::LParen) => {
                self.pos += 1;
                let inner = self.parse_sum()?;
                self.expect(&Token::RParen, "closing parenthesis")?;
                Ok(inner)
            }
            Some(Token::Word(w)) => match w.as_str() {
                "S" => {
                    self.pos += 1;
                    let k = self.expect_int("sphere dimension after S")?;
                    Ok(ManifoldExpr::Sphere {
                        dim: dim_u32(k, self)?,
                    })
                }
                "T" => {
                    self.pos += 1;
                    let k = self.expect_int("torus dimension after T")?;
                    Ok(ManifoldExpr::Torus {
                        dim: dim_u32(k, self)?,
                    })
                }
                "L" => {
                    self.pos += 1;
                    self.expect(&Token::LParen, "'(' after L")?;
                    let p = self.expect_int("lens parameter p")?;
                    self.expect(&Token::Comma, "',' between lens parameters")?;
                    let q = self.expect_int("lens parameter q")?;
                    self.expect(&Token::RParen, "')' after lens parameters")?;
                    Ok(ManifoldExpr::LensSpace { p, q })
                }
                "Sigma" => {
                    self.pos += 1;
                    self.expect(&Token::LParen, "'(' after Sigma")?;
                    let g = self.expect_int("surface genus")?;
                    self.expect(&Token::RParen, "')' after genus")?;
                    Ok(ManifoldExpr::OrientedSurface {
                        genus: dim_u32(g, self)?,
                    })
                }
                "custom" => self.parse_custom(),
                other => Err(self.error(format!("unknown constructor {other:?}"))),
            },
            _ => Err(self.error("expected a manifold expression")),
        }
    }

    /// custom( k ; b0, ..., bk ; compact ; connected ; par )
    fn parse_custom(&mut self) -> Result<ManifoldExpr, ExprParseError> {
        self.pos += 1; // the word `custom`
        self.expect(&Token::LParen, "'(' after custom")?;
        let dim = dim_u32(self.expect_int("custom dimension")?, self)?;
        self.expect(&Token::Semi, "';' after dimension")?;
        let mut betti = vec![self.expect_int("Betti number")?];
        while self.peek() == Some(&Token::Comma) {
            self.pos += 1;
            betti.push(self.expect_int("Betti number")?);
        }
        self.expect(&Token::Semi, "';' after Betti numbers")?;
        let compact = self.parse_bool("compact flag")?;
        self.expect(&Token::Semi, "';' after compact flag")?;
        let connected = self.parse_bool("connected flag")?;
        self.expect(&Token::Semi, "';' after connected flag")?;
        let par_word = self.expect_word("parallelizable tristate")?;
        let parallelizable = par_word.parse::<TriState>().map_err(|e| ExprParseError {
            offset: self.offset(),
            message: e,
        })?;
        self.expect(&Token::RParen, "')' closing custom")?;
        Ok(ManifoldExpr::Custom {
            dim,
            z2_betti: betti,
            compact,
            connected,
            parallelizable,
        })
    }

    fn parse_bool(&mut self, what: &str) -> Result<bool, ExprParseError> {
        let w = self.expect_word(what)?;
        match w.as_str() {
            "true" | "yes" => Ok(true),
            "false" | "no" => Ok(false),
            _ => Err(self.error(format!("expected true/false for {what}, got {w:?}"))),
        }
    }
}

fn dim_u32(v: u64, p: &Parser) -> Result<u32, ExprParseError> {
    u32::try_from(v).map_err(|_| p.error("dimension out of range"))
}

/// Parses and validates an expression from the text grammar.
pub fn parse_expr(input: &str) -> Result<ManifoldExpr, ExprParseError> {
    let tokens = lex(input)?;
    if tokens.is_empty() {
        return Err(ExprParseError {
            offset: 0,
            message: "empty manifold expression".into(),
        });
    }
    let mut parser = Parser {
        tokens,
        pos: 0,
        input_len: input.len(),
    };
    let expr = parser.parse_sum()?;
    if parser.pos != parser.tokens.len() {
        return Err(parser.error("trailing input after expression"));
    }
    expr.validate().map_err(|e| ExprParseError {
        offset: 0,
        message: e.to_string(),
    })?;
    Ok(expr)
}

impl std::str::FromStr for ManifoldExpr {
    type Err = ExprParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_expr(s)
    }
}

// `Display` writes the canonical grammar text back out. Products parenthesize
// connected-sum factors because `#` binds looser than `x`.
impl fmt::Display for ManifoldExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ManifoldExpr::Sphere { dim } => write!(f, "S{dim}"),
            ManifoldExpr::Torus { dim } => write!(f, "T{dim}"),
            ManifoldExpr::LensSpace { p, q } => write!(f, "L({p},{q})"),
            ManifoldExpr::OrientedSurface { genus } => write!(f, "Sigma({genus})"),
            ManifoldExpr::Product(factors) => {
                for (i, factor) in factors.iter().enumerate() {
                    if i > 0 {
                        write!(f, " x ")?;
                    }
                    if matches!(factor, ManifoldExpr::ConnectedSum(p) if p.len() > 1) {
                        write!(f, "({factor})")?;
                    } else {
                        write!(f, "{factor}")?;
                    }
                }
                Ok(())
            }
            ManifoldExpr::ConnectedSum(pieces) => {
                for (i, piece) in pieces.iter().enumerate() {
                    if i > 0 {
                        write!(f, " # ")?;
                    }
                    write!(f, "{piece}")?;
                }
                Ok(())
            }
            ManifoldExpr::Custom {
                dim,
                z2_betti,
                compact,
                connected,
                parallelizable,
            } => {
                let betti = z2_betti
                    .iter()
                    .map(u64::to_string)
                    .collect::<Vec<_>>()
                    .join(",");
                write!(
                    f,
                    "custom({dim}; {betti}; {compact}; {connected}; {parallelizable})"
                )
            }
        }
    }
}
