//! Propositional formulas over `x1..xN`, with exhaustive TAUTOLOGY and
//! ∃∀-SAT deciders used as ground truth for the reduction gadgets.
//!
//! Text grammar, loosest binding first:
//!
//! ```text
//! implies := or ( "->" implies )?        right associative
//! or      := and ( "|" and )*
//! and     := unary ( "&" unary )*
//! unary   := "~" unary | atom
//! atom    := "x" DIGITS | "true" | "false" | "(" implies ")"
//! ```
//!
//! Variables are 1-based in text and 0-based in the AST.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Expr {
    Const(bool),
    Var(usize),
    Not(Box<Expr>),
    And(Box<Expr>, Box<Expr>),
    Or(Box<Expr>, Box<Expr>),
    Implies(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn var(i: usize) -> Expr {
        Expr::Var(i)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(e: Expr) -> Expr {
        Expr::Not(Box::new(e))
    }

    pub fn and(a: Expr, b: Expr) -> Expr {
        Expr::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Expr, b: Expr) -> Expr {
        Expr::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Expr, b: Expr) -> Expr {
        Expr::Implies(Box::new(a), Box::new(b))
    }

    /// One more than the largest variable index, or 0 if none occurs.
    pub fn min_var_count(&self) -> usize {
        match self {
            Expr::Const(_) => 0,
            Expr::Var(i) => i + 1,
            Expr::Not(e) => e.min_var_count(),
            Expr::And(a, b) | Expr::Or(a, b) | Expr::Implies(a, b) => {
                a.min_var_count().max(b.min_var_count())
            }
        }
    }

    /// Number of node levels; a leaf has depth 1.
    pub fn depth(&self) -> usize {
        match self {
            Expr::Const(_) | Expr::Var(_) => 1,
            Expr::Not(e) => 1 + e.depth(),
            Expr::And(a, b) | Expr::Or(a, b) | Expr::Implies(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    /// Evaluates under `bits[i]` = value of variable `i`. Panics if a
    /// variable is out of range; [`Formula::eval`] checks lengths first.
    pub fn eval(&self, bits: &[bool]) -> bool {
        match self {
            Expr::Const(b) => *b,
            Expr::Var(i) => bits[*i],
            Expr::Not(e) => !e.eval(bits),
            Expr::And(a, b) => a.eval(bits) && b.eval(bits),
            Expr::Or(a, b) => a.eval(bits) || b.eval(bits),
            Expr::Implies(a, b) => !a.eval(bits) || b.eval(bits),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Implies(..) => 1,
            Expr::Or(..) => 2,
            Expr::And(..) => 3,
            Expr::Not(_) => 4,
            Expr::Const(_) | Expr::Var(_) => 5,
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn child(f: &mut fmt::Formatter<'_>, e: &Expr, parens: bool) -> fmt::Result {
            if parens {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        }
        let p = self.precedence();
        match self {
            Expr::Const(b) => write!(f, "{b}"),
            Expr::Var(i) => write!(f, "x{}", i + 1),
            Expr::Not(e) => {
                write!(f, "~")?;
                child(f, e, e.precedence() < p)
            }
            Expr::And(a, b) | Expr::Or(a, b) => {
                let op = if matches!(self, Expr::And(..)) {
                    "&"
                } else {
                    "|"
                };
                child(f, a, a.precedence() < p)?;
                write!(f, " {op} ")?;
                child(f, b, b.precedence() <= p)
            }
            Expr::Implies(a, b) => {
                child(f, a, a.precedence() <= p)?;
                write!(f, " -> ")?;
                child(f, b, b.precedence() < p)
            }
        }
    }
}

/// A formula together with its declared variable count.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Formula {
    pub var_count: usize,
    pub ast: Expr,
}

impl Formula {
    pub fn new(ast: Expr, var_count: usize) -> Result<Self> {
        let needed = ast.min_var_count();
        if needed > var_count {
            return Err(Error::LengthMismatch {
                expected: needed,
                got: var_count,
            });
        }
        Ok(Formula { var_count, ast })
    }

    /// Parses text; the variable count is the highest index referenced.
    pub fn parse(text: &str) -> Result<Self> {
        let ast = Parser::new(text).parse()?;
        let var_count = ast.min_var_count();
        Ok(Formula { var_count, ast })
    }

    /// Parses text with an explicit variable count, which must cover every
    /// referenced variable.
    pub fn parse_with_vars(text: &str, var_count: usize) -> Result<Self> {
        Formula::new(Parser::new(text).parse()?, var_count)
    }

    pub fn eval(&self, a: &Assignment) -> Result<bool> {
        if a.len() != self.var_count {
            return Err(Error::LengthMismatch {
                expected: self.var_count,
                got: a.len(),
            });
        }
        Ok(self.ast.eval(a.bits()))
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.ast.fmt(f)
    }
}

/// Truth values for `x1..xN`, in order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Assignment(pub Vec<bool>);

impl Assignment {
    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The `rank`-th assignment of `len` variables in lexicographic order,
    /// false before true and `x1` most significant.
    pub fn from_rank(rank: u64, len: usize) -> Self {
        Assignment((0..len).map(|i| rank >> (len - 1 - i) & 1 == 1).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase", tag = "result", content = "counterexample")]
pub enum TautologyResult {
    Tautology,
    Counterexample(Assignment),
}

impl TautologyResult {
    pub fn is_tautology(&self) -> bool {
        matches!(self, TautologyResult::Tautology)
    }
}

fn check_vars(vars: usize, cap: usize) -> Result<()> {
    if vars > cap || vars >= 64 {
        return Err(Error::TooManyVariables { vars, cap });
    }
    Ok(())
}

/// Checks all `2^n` assignments; the counterexample is the first falsifying
/// assignment in lexicographic order.
pub fn is_tautology_brute(phi: &Formula, max_vars: usize) -> Result<TautologyResult> {
    check_vars(phi.var_count, max_vars)?;
    let n = phi.var_count;
    Ok((0..1u64 << n)
        .map(|r| Assignment::from_rank(r, n))
        .find(|a| !phi.ast.eval(a.bits()))
        .map_or(TautologyResult::Tautology, TautologyResult::Counterexample))
}

/// Decides `∃x ∀y φ(x, y)` where the first `k` variables are `x` and the
/// remaining `m` are `y`. Returns the lexicographically first `x` for which
/// every `y` satisfies `φ`.
pub fn exists_forall_brute(
    phi: &Formula,
    k: usize,
    m: usize,
    max_vars: usize,
) -> Result<Option<Assignment>> {
    if k + m != phi.var_count {
        return Err(Error::SplitMismatch {
            exists: k,
            forall: m,
            vars: phi.var_count,
        });
    }
    check_vars(k + m, max_vars)?;
    let mut bits = vec![false; k + m];
    for xr in 0..1u64 << k {
        let x = Assignment::from_rank(xr, k);
        bits[..k].copy_from_slice(x.bits());
        let holds = (0..1u64 << m).all(|yr| {
            for j in 0..m {
                bits[k + j] = yr >> (m - 1 - j) & 1 == 1;
            }
            phi.ast.eval(&bits)
        });
        if holds {
            return Ok(Some(x));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Token {
    Var(usize),
    Const(bool),
    Not,
    And,
    Or,
    Implies,
    LParen,
    RParen,
    End,
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
    peeked: Option<(usize, Token)>,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser {
            text,
            pos: 0,
            peeked: None,
        }
    }

    fn parse(mut self) -> Result<Expr> {
        let e = self.implies()?;
        match self.next()? {
            (_, Token::End) => Ok(e),
            (at, tok) => Err(self.error(at, format!("unexpected {tok:?} after formula"))),
        }
    }

    fn error(&self, position: usize, message: String) -> Error {
        Error::Parse { position, message }
    }

    fn peek(&mut self) -> Result<Token> {
        if self.peeked.is_none() {
            self.peeked = Some(self.lex()?);
        }
        Ok(self.peeked.unwrap().1)
    }

    fn next(&mut self) -> Result<(usize, Token)> {
        match self.peeked.take() {
            Some(t) => Ok(t),
            None => self.lex(),
        }
    }

    fn lex(&mut self) -> Result<(usize, Token)> {
        let bytes = self.text.as_bytes();
        while self.pos < bytes.len() && bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        let start = self.pos;
        let Some(&c) = bytes.get(start) else {
            return Ok((start, Token::End));
        };
        let single = |tok| (start + 1, tok);
        let (end, tok) = match c {
            b'~' | b'!' => single(Token::Not),
            b'&' => single(Token::And),
            b'|' => single(Token::Or),
            b'(' => single(Token::LParen),
            b')' => single(Token::RParen),
            b'-' if bytes.get(start + 1) == Some(&b'>') => (start + 2, Token::Implies),
            b'x' if bytes.get(start + 1).is_some_and(u8::is_ascii_digit) => {
                let end = bytes[start + 1..]
                    .iter()
                    .position(|b| !b.is_ascii_digit())
                    .map_or(bytes.len(), |p| start + 1 + p);
                let n: usize = self.text[start + 1..end]
                    .parse()
                    .map_err(|_| self.error(start, "variable index too large".into()))?;
                if n == 0 {
                    return Err(Error::VarIndexZero { position: start });
                }
                (end, Token::Var(n - 1))
            }
            c if c.is_ascii_alphabetic() => {
                let end = bytes[start..]
                    .iter()
                    .position(|b| !b.is_ascii_alphanumeric())
                    .map_or(bytes.len(), |p| start + p);
                match &self.text[start..end] {
                    "true" => (end, Token::Const(true)),
                    "false" => (end, Token::Const(false)),
                    word => return Err(self.error(start, format!("unknown identifier {word:?}"))),
                }
            }
            _ => {
                let ch = self.text[start..].chars().next().unwrap();
                return Err(self.error(start, format!("unexpected character {ch:?}")));
            }
        };
        self.pos = end;
        Ok((start, tok))
    }

    fn implies(&mut self) -> Result<Expr> {
        let lhs = self.or()?;
        if self.peek()? == Token::Implies {
            self.next()?;
            let rhs = self.implies()?;
            return Ok(Expr::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Expr> {
        let mut lhs = self.and()?;
        while self.peek()? == Token::Or {
            self.next()?;
            lhs = Expr::or(lhs, self.and()?);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while self.peek()? == Token::And {
            self.next()?;
            lhs = Expr::and(lhs, self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        match self.next()? {
            (_, Token::Not) => Ok(Expr::not(self.unary()?)),
            (_, Token::Var(i)) => Ok(Expr::Var(i)),
            (_, Token::Const(b)) => Ok(Expr::Const(b)),
            (_, Token::LParen) => {
                let e = self.implies()?;
                match self.next()? {
                    (_, Token::RParen) => Ok(e),
                    (at, tok) => Err(self.error(at, format!("expected ')', found {tok:?}"))),
                }
            }
            (at, Token::End) => Err(self.error(at, "unexpected end of input".into())),
            (at, tok) => Err(self.error(at, format!("expected operand, found {tok:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn a(bits: &[bool]) -> Assignment {
        Assignment(bits.to_vec())
    }

    #[test]
    fn parse_examples() {
        let f = Formula::parse("x1 | ~x1").unwrap();
        assert_eq!(f.ast, Expr::or(Expr::var(0), Expr::not(Expr::var(0))));
        assert_eq!(f.var_count, 1);
        let g = Formula::parse("x1 & x2 -> x1").unwrap();
        assert_eq!(
            g.ast,
            Expr::implies(Expr::and(Expr::var(0), Expr::var(1)), Expr::var(0))
        );
        assert!(matches!(Formula::parse("x1 & ~"), Err(Error::Parse { .. })));
    }

    #[test]
    fn implies_is_right_associative() {
        let f = Formula::parse("x1 -> x2 -> x3").unwrap();
        assert_eq!(
            f.ast,
            Expr::implies(Expr::var(0), Expr::implies(Expr::var(1), Expr::var(2)))
        );
    }

    #[test]
    fn precedence_not_and_or() {
        let f = Formula::parse("~x1 & x2 | x3").unwrap();
        assert_eq!(
            f.ast,
            Expr::or(
                Expr::and(Expr::not(Expr::var(0)), Expr::var(1)),
                Expr::var(2)
            )
        );
    }

    #[test]
    fn parse_errors_carry_position() {
        assert_eq!(
            Formula::parse("x1 & x0"),
            Err(Error::VarIndexZero { position: 5 })
        );
        match Formula::parse("x1 $ x2") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 3),
            other => panic!("{other:?}"),
        }
        assert!(Formula::parse("(x1 | x2").is_err());
        assert!(Formula::parse("x1 x2").is_err());
        assert!(Formula::parse("").is_err());
        assert!(Formula::parse("y1").is_err());
    }

    #[test]
    fn explicit_var_count() {
        let f = Formula::parse_with_vars("x1", 3).unwrap();
        assert_eq!(f.var_count, 3);
        assert!(Formula::parse_with_vars("x4", 3).is_err());
    }

    #[test]
    fn eval_examples() {
        let t = Formula::parse("x1 | ~x1").unwrap();
        assert!(t.eval(&a(&[false])).unwrap());
        let g = Formula::parse("x1 & x2").unwrap();
        assert!(!g.eval(&a(&[true, false])).unwrap());
        let h = Formula::parse("x1 -> x2").unwrap();
        assert!(!h.eval(&a(&[true, false])).unwrap());
        assert_eq!(
            h.eval(&a(&[true])),
            Err(Error::LengthMismatch {
                expected: 2,
                got: 1
            })
        );
    }

    #[test]
    fn tautology_examples() {
        let cap = 24;
        assert!(
            is_tautology_brute(&Formula::parse("x1 | ~x1").unwrap(), cap)
                .unwrap()
                .is_tautology()
        );
        assert_eq!(
            is_tautology_brute(&Formula::parse("x1").unwrap(), cap).unwrap(),
            TautologyResult::Counterexample(a(&[false]))
        );
        assert!(
            is_tautology_brute(&Formula::parse("(x1 & x2) -> x1").unwrap(), cap)
                .unwrap()
                .is_tautology()
        );
        // ~x1 | x3 is first falsified at (true, false, false)
        assert_eq!(
            is_tautology_brute(&Formula::parse("~x1 | x3").unwrap(), cap).unwrap(),
            TautologyResult::Counterexample(a(&[true, false, false]))
        );
        assert!(matches!(
            is_tautology_brute(&Formula::parse("x30").unwrap(), cap),
            Err(Error::TooManyVariables { vars: 30, cap: 24 })
        ));
    }

    #[test]
    fn exists_forall_examples() {
        let cap = 24;
        let f = Formula::parse("x1 | x2").unwrap();
        assert_eq!(
            exists_forall_brute(&f, 1, 1, cap).unwrap(),
            Some(a(&[true]))
        );
        let g = Formula::parse("x1 & x2").unwrap();
        assert_eq!(exists_forall_brute(&g, 1, 1, cap).unwrap(), None);
        let h = Formula::parse("x1").unwrap();
        assert_eq!(
            exists_forall_brute(&h, 1, 0, cap).unwrap(),
            Some(a(&[true]))
        );
        assert!(matches!(
            exists_forall_brute(&f, 2, 1, cap),
            Err(Error::SplitMismatch { .. })
        ));
    }

    #[test]
    fn json_ast_form() {
        let f = Formula::parse("~x1 -> x2").unwrap();
        let json = serde_json::to_value(&f).unwrap();
        assert_eq!(
            json,
            serde_json::json!({
                "varCount": 2,
                "ast": {"implies": [{"not": {"var": 0}}, {"var": 1}]}
            })
        );
        let back: Formula = serde_json::from_value(json).unwrap();
        assert_eq!(back, f);
    }

    pub(crate) fn arb_expr(vars: usize) -> impl Strategy<Value = Expr> {
        let leaf = prop_oneof![
            any::<bool>().prop_map(Expr::Const),
            (0..vars).prop_map(Expr::Var),
        ];
        leaf.prop_recursive(4, 24, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(Expr::not),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::and(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::or(a, b)),
                (inner.clone(), inner).prop_map(|(a, b)| Expr::implies(a, b)),
            ]
        })
    }

    proptest! {
        #[test]
        fn display_parse_round_trip(e in arb_expr(4)) {
            let text = e.to_string();
            let back = Formula::parse_with_vars(&text, 4).unwrap();
            prop_assert_eq!(back.ast, e);
        }

        #[test]
        fn negation_and_de_morgan(x in arb_expr(3), y in arb_expr(3), r in 0u64..8) {
            let bits = Assignment::from_rank(r, 3);
            let b = bits.bits();
            prop_assert_eq!(Expr::not(x.clone()).eval(b), !x.eval(b));
            prop_assert_eq!(
                Expr::not(Expr::and(x.clone(), y.clone())).eval(b),
                Expr::or(Expr::not(x.clone()), Expr::not(y.clone())).eval(b)
            );
            prop_assert_eq!(
                Expr::not(Expr::or(x.clone(), y.clone())).eval(b),
                Expr::and(Expr::not(x), Expr::not(y)).eval(b)
            );
        }

        #[test]
        fn forall_free_split_is_plain_sat(e in arb_expr(3)) {
            let f = Formula::new(e, 3).unwrap();
            let sat = (0..8).map(|r| Assignment::from_rank(r, 3)).find(|a| f.eval(a).unwrap());
            prop_assert_eq!(exists_forall_brute(&f, 3, 0, 24).unwrap(), sat);
        }
    }
}
