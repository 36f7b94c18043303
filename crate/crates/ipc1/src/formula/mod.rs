//! Formula trees over the single variable `a`, plus a shared-subterm DAG form.
//!
//! The abstract syntax has five node kinds: the variable `a`, the constant
//! `bot`, and the connectives `&`, `|`, `->`. Negation and `top` are sugar
//! and are desugared at parse time: `~x` becomes `x -> bot` and `top` becomes
//! `bot -> bot`. They never appear as nodes.
//!
//! Concrete grammar (ASCII, whitespace insignificant):
//!
//! ```text
//! formula := impl
//! impl    := or ("->" impl)?          // right-associative
//! or      := and ("|" and)*           // left-associative
//! and     := neg ("&" neg)*           // left-associative
//! neg     := "~" neg | atom
//! atom    := "a" | "bot" | "top" | "(" formula ")"
//! ```
//!
//! Trees are immutable values behind [`Arc`] handles, so subtrees can be
//! shared freely: [`rn_formula`] of rank `k` allocates O(k) nodes even though
//! the formula it denotes has length exponential in `k`. All traversals in
//! this module (equality, drop, parse, render, length) use explicit work
//! stacks, so arbitrarily deep inputs cannot overflow the call stack.

use std::fmt;
use std::mem;
use std::sync::{Arc, OnceLock};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::lattice::RNIndex;

mod dag;

pub use dag::{parse_dag, render_dag, rn_formula_dag, DagError, DagNode, FormulaDag};

/// Default cap on the rank accepted by [`rn_formula`].
///
/// The unfolded length of a rank-`k` family member grows like `2^k`, so
/// callers that print or brute-force-check the result should keep ranks small;
/// the cap guards against accidentally unfolding astronomically long formulas.
pub const DEFAULT_RANK_CAP: u32 = 32;

/// A formula over the single variable `a`.
///
/// Children are shared [`Arc`] handles; structural equality is [`PartialEq`]
/// and ignores sharing. Build values with [`Formula::var`], [`Formula::bot`],
/// [`Formula::and`], [`Formula::or`] and [`Formula::implies`], or by parsing.
#[derive(Clone)]
pub enum Formula {
    /// The variable `a`.
    Var,
    /// The constant `bot` (falsum).
    Bot,
    /// Conjunction.
    And(Arc<Formula>, Arc<Formula>),
    /// Disjunction.
    Or(Arc<Formula>, Arc<Formula>),
    /// Implication.
    Impl(Arc<Formula>, Arc<Formula>),
}

impl Formula {
    /// The variable `a`.
    pub fn var() -> Arc<Formula> {
        Arc::new(Formula::Var)
    }

    /// The constant `bot`.
    pub fn bot() -> Arc<Formula> {
        Arc::new(Formula::Bot)
    }

    /// Conjunction of two formulas.
    pub fn and(l: Arc<Formula>, r: Arc<Formula>) -> Arc<Formula> {
        Arc::new(Formula::And(l, r))
    }

    /// Disjunction of two formulas.
    pub fn or(l: Arc<Formula>, r: Arc<Formula>) -> Arc<Formula> {
        Arc::new(Formula::Or(l, r))
    }

    /// Implication between two formulas.
    pub fn implies(l: Arc<Formula>, r: Arc<Formula>) -> Arc<Formula> {
        Arc::new(Formula::Impl(l, r))
    }

    /// Negation, as its desugared form `f -> bot`.
    ///
    /// This is a constructor taking an owned handle, not a `Not` impl;
    /// `std::ops::Not` cannot be implemented for `Arc<Formula>` here.
    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Arc<Formula>) -> Arc<Formula> {
        Formula::implies(f, Formula::bot())
    }

    /// `top`, as its desugared form `bot -> bot`.
    pub fn top() -> Arc<Formula> {
        Formula::implies(Formula::bot(), Formula::bot())
    }

    /// Moves the children of `self` onto `stack`, replacing them with a
    /// shared leaf so that dropping `self` afterwards cannot recurse.
    fn detach_children(&mut self, stack: &mut Vec<Arc<Formula>>) {
        match self {
            Formula::Var | Formula::Bot => {}
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Impl(l, r) => {
                stack.push(mem::replace(l, shared_leaf()));
                stack.push(mem::replace(r, shared_leaf()));
            }
        }
    }
}

/// A leaf that lives for the whole program; used as a placeholder when
/// detaching children during iterative drop. Its reference count never
/// reaches one, so it is never torn down through the drop worklist itself.
fn shared_leaf() -> Arc<Formula> {
    static LEAF: OnceLock<Arc<Formula>> = OnceLock::new();
    LEAF.get_or_init(|| Arc::new(Formula::Bot)).clone()
}

impl Drop for Formula {
    /// Iterative drop: deep trees from the parser would otherwise overflow
    /// the stack through the derived recursive drop glue.
    fn drop(&mut self) {
        let mut stack = Vec::new();
        self.detach_children(&mut stack);
        while let Some(node) = stack.pop() {
            if let Some(mut inner) = Arc::into_inner(node) {
                inner.detach_children(&mut stack);
            }
        }
    }
}

impl PartialEq for Formula {
    /// Structural equality, iteratively, with a pointer fast path for shared
    /// subtrees.
    fn eq(&self, other: &Self) -> bool {
        let mut stack: Vec<(&Formula, &Formula)> = vec![(self, other)];
        while let Some((x, y)) = stack.pop() {
            if std::ptr::eq(x, y) {
                continue;
            }
            match (x, y) {
                (Formula::Var, Formula::Var) | (Formula::Bot, Formula::Bot) => {}
                (Formula::And(a, b), Formula::And(c, d))
                | (Formula::Or(a, b), Formula::Or(c, d))
                | (Formula::Impl(a, b), Formula::Impl(c, d)) => {
                    stack.push((a.as_ref(), c.as_ref()));
                    stack.push((b.as_ref(), d.as_ref()));
                }
                _ => return false,
            }
        }
        true
    }
}

impl Eq for Formula {}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Formula({})", render(self))
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self))
    }
}

/// Errors from formula parsing and construction.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    /// Malformed input; `position` is a byte offset into the source text.
    #[error("syntax error at offset {position}: {message}")]
    Syntax {
        /// Byte offset of the offending token.
        position: usize,
        /// What was wrong.
        message: String,
    },
    /// An identifier other than `a` (or the keywords `bot`/`top`).
    #[error("unknown variable `{name}` at offset {position}; the only variable is `a`")]
    UnknownVariable {
        /// Byte offset of the identifier.
        position: usize,
        /// The offending identifier.
        name: String,
    },
    /// A requested rank exceeds the configured cap.
    #[error("rank {rank} exceeds the configured cap {cap}")]
    SizeLimitExceeded {
        /// The requested rank.
        rank: u32,
        /// The cap in force.
        cap: u32,
    },
}

fn syntax(position: usize, message: impl Into<String>) -> FormulaError {
    FormulaError::Syntax {
        position,
        message: message.into(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tok {
    Var,
    Bot,
    Top,
    Tilde,
    Amp,
    Pipe,
    Arrow,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, FormulaError> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b if b.is_ascii_whitespace() => i += 1,
            b'~' => {
                toks.push((Tok::Tilde, i));
                i += 1;
            }
            b'&' => {
                toks.push((Tok::Amp, i));
                i += 1;
            }
            b'|' => {
                toks.push((Tok::Pipe, i));
                i += 1;
            }
            b'(' => {
                toks.push((Tok::LParen, i));
                i += 1;
            }
            b')' => {
                toks.push((Tok::RParen, i));
                i += 1;
            }
            b'-' => {
                if bytes.get(i + 1) == Some(&b'>') {
                    toks.push((Tok::Arrow, i));
                    i += 2;
                } else {
                    return Err(syntax(i, "expected `->`"));
                }
            }
            b if b.is_ascii_alphabetic() || b == b'_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                let word = &text[start..i];
                match word {
                    "a" => toks.push((Tok::Var, start)),
                    "bot" => toks.push((Tok::Bot, start)),
                    "top" => toks.push((Tok::Top, start)),
                    _ => {
                        return Err(FormulaError::UnknownVariable {
                            position: start,
                            name: word.to_string(),
                        })
                    }
                }
            }
            _ => {
                // Report the whole character, not a stray continuation byte.
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(syntax(i, format!("unexpected character `{ch}`")));
            }
        }
    }
    Ok(toks)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Op {
    Not,
    And,
    Or,
    Impl,
    LParen,
}

impl Op {
    fn prec(self) -> u8 {
        match self {
            Op::Not => 4,
            Op::And => 3,
            Op::Or => 2,
            Op::Impl => 1,
            Op::LParen => 0,
        }
    }

    fn left_assoc(self) -> bool {
        matches!(self, Op::And | Op::Or)
    }
}

fn apply(op: Op, pos: usize, out: &mut Vec<Arc<Formula>>) -> Result<(), FormulaError> {
    // The expect-operand discipline in `parse` guarantees the operands exist;
    // fail softly rather than panic if that invariant is ever broken.
    let underflow = || syntax(pos, "internal: operand stack underflow");
    match op {
        Op::Not => {
            let x = out.pop().ok_or_else(underflow)?;
            out.push(Formula::not(x));
        }
        Op::And | Op::Or | Op::Impl => {
            let r = out.pop().ok_or_else(underflow)?;
            let l = out.pop().ok_or_else(underflow)?;
            out.push(match op {
                Op::And => Formula::and(l, r),
                Op::Or => Formula::or(l, r),
                _ => Formula::implies(l, r),
            });
        }
        Op::LParen => return Err(underflow()),
    }
    Ok(())
}

/// Parses a formula from its concrete syntax.
///
/// `~x` and `top` are desugared to `x -> bot` and `bot -> bot`. The parser is
/// a shunting-yard loop, so input depth is limited only by memory.
///
/// # Examples
///
/// ```
/// use ipc1::formula::{parse, Formula};
///
/// assert_eq!(parse("a").unwrap(), Formula::var());
/// assert_eq!(parse("~a").unwrap(), Formula::not(Formula::var()));
/// assert_eq!(parse("top").unwrap(), Formula::top());
/// ```
///
/// # Errors
///
/// [`FormulaError::Syntax`] with a byte offset on malformed input, or
/// [`FormulaError::UnknownVariable`] for identifiers other than `a`.
pub fn parse(text: &str) -> Result<Arc<Formula>, FormulaError> {
    let toks = lex(text)?;
    let mut ops: Vec<(Op, usize)> = Vec::new();
    let mut out: Vec<Arc<Formula>> = Vec::new();
    let mut expect_operand = true;
    for (tok, pos) in toks {
        match tok {
            Tok::Var | Tok::Bot | Tok::Top => {
                if !expect_operand {
                    return Err(syntax(pos, "expected an operator or end of input"));
                }
                out.push(match tok {
                    Tok::Var => Formula::var(),
                    Tok::Bot => Formula::bot(),
                    _ => Formula::top(),
                });
                expect_operand = false;
            }
            Tok::Tilde => {
                if !expect_operand {
                    return Err(syntax(pos, "`~` must precede its operand"));
                }
                ops.push((Op::Not, pos));
            }
            Tok::Amp | Tok::Pipe | Tok::Arrow => {
                if expect_operand {
                    return Err(syntax(pos, "expected an operand"));
                }
                let op = match tok {
                    Tok::Amp => Op::And,
                    Tok::Pipe => Op::Or,
                    _ => Op::Impl,
                };
                while let Some(&(top, top_pos)) = ops.last() {
                    let pops = top != Op::LParen
                        && (top.prec() > op.prec() || (top.prec() == op.prec() && op.left_assoc()));
                    if !pops {
                        break;
                    }
                    ops.pop();
                    apply(top, top_pos, &mut out)?;
                }
                ops.push((op, pos));
                expect_operand = true;
            }
            Tok::LParen => {
                if !expect_operand {
                    return Err(syntax(pos, "expected an operator before `(`"));
                }
                ops.push((Op::LParen, pos));
            }
            Tok::RParen => {
                if expect_operand {
                    return Err(syntax(pos, "expected an operand before `)`"));
                }
                loop {
                    match ops.pop() {
                        Some((Op::LParen, _)) => break,
                        Some((op, op_pos)) => apply(op, op_pos, &mut out)?,
                        None => return Err(syntax(pos, "unmatched `)`")),
                    }
                }
            }
        }
    }
    if expect_operand {
        return Err(syntax(text.len(), "unexpected end of input"));
    }
    while let Some((op, op_pos)) = ops.pop() {
        if op == Op::LParen {
            return Err(syntax(op_pos, "unclosed `(`"));
        }
        apply(op, op_pos, &mut out)?;
    }
    match (out.pop(), out.is_empty()) {
        (Some(f), true) => Ok(f),
        _ => Err(syntax(text.len(), "internal: unbalanced parse")),
    }
}

fn node_prec(f: &Formula) -> u8 {
    match f {
        Formula::Var | Formula::Bot => 9,
        Formula::And(..) => 3,
        Formula::Or(..) => 2,
        Formula::Impl(..) => 1,
    }
}

/// Renders a formula to its concrete syntax with minimal parentheses.
///
/// The output contains no sugar (`~`/`top` were already desugared), and
/// `parse(render(f))` is structurally equal to `f`.
///
/// Beware that rendering unfolds sharing: the text for a deeply shared tree
/// (such as high-rank [`rn_formula`] output) is exponentially long.
///
/// # Examples
///
/// ```
/// use ipc1::formula::{parse, render};
///
/// let f = parse("(a -> bot) | a").unwrap();
/// assert_eq!(render(&f), "(a -> bot) | a");
/// ```
pub fn render(f: &Formula) -> String {
    enum Item<'a> {
        Node(&'a Formula, u8),
        Text(&'static str),
    }
    let mut buf = String::new();
    let mut stack = vec![Item::Node(f, 0)];
    while let Some(item) = stack.pop() {
        match item {
            Item::Text(s) => buf.push_str(s),
            Item::Node(n, min) => {
                let wrap = node_prec(n) < min;
                if wrap {
                    buf.push('(');
                    stack.push(Item::Text(")"));
                }
                match n {
                    Formula::Var => buf.push('a'),
                    Formula::Bot => buf.push_str("bot"),
                    Formula::And(l, r) => {
                        stack.push(Item::Node(r, 4));
                        stack.push(Item::Text(" & "));
                        stack.push(Item::Node(l, 3));
                    }
                    Formula::Or(l, r) => {
                        stack.push(Item::Node(r, 3));
                        stack.push(Item::Text(" | "));
                        stack.push(Item::Node(l, 2));
                    }
                    Formula::Impl(l, r) => {
                        stack.push(Item::Node(r, 1));
                        stack.push(Item::Text(" -> "));
                        stack.push(Item::Node(l, 2));
                    }
                }
            }
        }
    }
    buf
}

/// The length of a formula: the number of variable, constant, and connective
/// appearances in its unfolding.
///
/// Shared subtrees count once per appearance, not once per allocation, so the
/// result can be astronomically larger than the in-memory size; it saturates
/// at `u64::MAX`.
///
/// # Examples
///
/// ```
/// use ipc1::formula::{length, parse};
///
/// assert_eq!(length(&parse("a").unwrap()), 1);
/// assert_eq!(length(&parse("a -> bot").unwrap()), 3);
/// assert_eq!(length(&parse("a | a").unwrap()), 3);
/// ```
pub fn length(f: &Formula) -> u64 {
    use std::collections::HashMap;
    let mut memo: HashMap<*const Formula, u64> = HashMap::new();
    enum Phase<'a> {
        Enter(&'a Formula),
        Exit(&'a Formula),
    }
    let mut stack = vec![Phase::Enter(f)];
    while let Some(phase) = stack.pop() {
        match phase {
            Phase::Enter(n) => {
                if memo.contains_key(&(n as *const Formula)) {
                    continue;
                }
                match n {
                    Formula::Var | Formula::Bot => {
                        memo.insert(n, 1);
                    }
                    Formula::And(l, r) | Formula::Or(l, r) | Formula::Impl(l, r) => {
                        stack.push(Phase::Exit(n));
                        stack.push(Phase::Enter(l));
                        stack.push(Phase::Enter(r));
                    }
                }
            }
            Phase::Exit(n) => {
                let (l, r) = match n {
                    Formula::And(l, r) | Formula::Or(l, r) | Formula::Impl(l, r) => {
                        (l.as_ref() as *const Formula, r.as_ref() as *const Formula)
                    }
                    _ => unreachable!("leaves never get an exit phase"),
                };
                let total = 1u64.saturating_add(memo[&l]).saturating_add(memo[&r]);
                memo.insert(n, total);
            }
        }
    }
    memo[&(f as *const Formula)]
}

/// Builds the canonical family member named by `idx`, with the default rank
/// cap [`DEFAULT_RANK_CAP`].
///
/// The family is `phi_1 = ~a`, `psi_1 = a`, `phi_{n+1} = phi_n -> psi_n`,
/// `psi_{n+1} = phi_n | psi_n`; `top` yields `bot -> bot` and `bot` yields
/// `bot`. Subtrees are shared, so the result occupies O(rank) memory.
///
/// # Errors
///
/// [`FormulaError::SizeLimitExceeded`] if `idx.rank()` exceeds the cap.
pub fn rn_formula(idx: RNIndex) -> Result<Arc<Formula>, FormulaError> {
    rn_formula_capped(idx, DEFAULT_RANK_CAP)
}

/// [`rn_formula`] with an explicit rank cap.
pub fn rn_formula_capped(idx: RNIndex, cap: u32) -> Result<Arc<Formula>, FormulaError> {
    let rank = idx.rank();
    if rank > cap {
        return Err(FormulaError::SizeLimitExceeded { rank, cap });
    }
    Ok(match idx {
        RNIndex::Bot => Formula::bot(),
        RNIndex::Top => Formula::top(),
        RNIndex::Phi(n) | RNIndex::Psi(n) => {
            let mut phi = Formula::not(Formula::var());
            let mut psi = Formula::var();
            for _ in 1..n {
                let next_phi = Formula::implies(phi.clone(), psi.clone());
                let next_psi = Formula::or(phi, psi);
                phi = next_phi;
                psi = next_psi;
            }
            match idx {
                RNIndex::Phi(_) => phi,
                _ => psi,
            }
        }
    })
}

/// Generates a pseudorandom formula of length at most `size`, deterministic
/// in `(size, seed)`.
///
/// A `size` of zero is treated as one. The distribution is uniform over
/// connectives with a mild bias towards `a` over `bot` at the leaves; it is a
/// test-instance generator, not a uniform sampler over trees.
pub fn random_formula(size: u64, seed: u64) -> Arc<Formula> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_formula_with(size.max(1), &mut rng)
}

/// Like [`random_formula`], drawing from a caller-supplied generator; used to
/// produce many formulas from one seeded stream.
pub fn random_formula_with<R: Rng>(size: u64, rng: &mut R) -> Arc<Formula> {
    enum Task {
        Gen(u64),
        Combine(u8),
    }
    let mut tasks = vec![Task::Gen(size.max(1))];
    let mut out: Vec<Arc<Formula>> = Vec::new();
    while let Some(task) = tasks.pop() {
        match task {
            Task::Gen(budget) => {
                if budget < 3 || rng.gen_bool(0.25) {
                    out.push(if rng.gen_bool(0.75) {
                        Formula::var()
                    } else {
                        Formula::bot()
                    });
                } else {
                    let op = rng.gen_range(0..3u8);
                    let left = rng.gen_range(1..=budget - 2);
                    let right = budget - 1 - left;
                    tasks.push(Task::Combine(op));
                    tasks.push(Task::Gen(right));
                    tasks.push(Task::Gen(left));
                }
            }
            Task::Combine(op) => {
                let r = out.pop().expect("generator pushed both operands");
                let l = out.pop().expect("generator pushed both operands");
                out.push(match op {
                    0 => Formula::and(l, r),
                    1 => Formula::or(l, r),
                    _ => Formula::implies(l, r),
                });
            }
        }
    }
    out.pop().expect("generator produced a formula")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> Arc<Formula> {
        parse(s).unwrap()
    }

    #[test]
    fn parse_atoms_and_sugar() {
        assert_eq!(p("a"), Formula::var());
        assert_eq!(p("bot"), Formula::bot());
        assert_eq!(p("~a"), Formula::implies(Formula::var(), Formula::bot()));
        assert_eq!(p("top"), Formula::implies(Formula::bot(), Formula::bot()));
    }

    #[test]
    fn parse_precedence_and_associativity() {
        // ~ > & > | > ->
        assert_eq!(p("~a & bot"), Formula::and(p("~a"), Formula::bot()));
        assert_eq!(p("a & bot | a"), Formula::or(p("a & bot"), Formula::var()));
        assert_eq!(
            p("a | bot -> a"),
            Formula::implies(p("a | bot"), Formula::var())
        );
        // -> is right-associative, & and | fold left.
        assert_eq!(
            p("a -> bot -> a"),
            Formula::implies(Formula::var(), p("bot -> a"))
        );
        assert_eq!(p("a & a & bot"), Formula::and(p("a & a"), Formula::bot()));
        assert_eq!(p("a | a | bot"), Formula::or(p("a | a"), Formula::bot()));
        assert_eq!(
            p("(a -> bot) -> a"),
            Formula::implies(p("a -> bot"), Formula::var())
        );
    }

    #[test]
    fn parse_nested_negation() {
        assert_eq!(p("~~a"), Formula::not(Formula::not(Formula::var())));
        assert_eq!(p("~(a | bot)"), Formula::not(p("a | bot")));
    }

    #[test]
    fn parse_errors_carry_positions() {
        match parse("a -> ") {
            Err(FormulaError::Syntax { position, .. }) => assert_eq!(position, 5),
            other => panic!("expected syntax error, got {other:?}"),
        }
        match parse("b") {
            Err(FormulaError::UnknownVariable { position, name }) => {
                assert_eq!(position, 0);
                assert_eq!(name, "b");
            }
            other => panic!("expected unknown variable, got {other:?}"),
        }
        assert!(parse("").is_err());
        assert!(parse("(a").is_err());
        assert!(parse("a)").is_err());
        assert!(parse("()").is_err());
        assert!(parse("a a").is_err());
        assert!(parse("a ~ a").is_err());
        assert!(parse("a -").is_err());
        assert!(parse("a # a").is_err());
    }

    #[test]
    fn render_examples() {
        assert_eq!(render(&Formula::var()), "a");
        assert_eq!(render(&p("a -> bot")), "a -> bot");
        assert_eq!(render(&p("(a -> bot) | a")), "(a -> bot) | a");
        assert_eq!(render(&p("a | bot & a")), "a | bot & a");
        assert_eq!(render(&p("(a | bot) & a")), "(a | bot) & a");
        assert_eq!(render(&p("a -> bot -> a")), "a -> bot -> a");
        assert_eq!(render(&p("(a -> bot) -> a")), "(a -> bot) -> a");
        assert_eq!(render(&p("a & (bot & a)")), "a & (bot & a)");
    }

    #[test]
    fn length_counts_appearances() {
        assert_eq!(length(&Formula::var()), 1);
        assert_eq!(length(&p("a -> bot")), 3);
        assert_eq!(length(&p("a | a")), 3);
        // Sharing does not change the count: `x & x` with a shared x.
        let x = p("a -> bot");
        let both = Formula::and(x.clone(), x);
        assert_eq!(length(&both), 7);
    }

    #[test]
    fn rn_formula_base_cases() {
        assert_eq!(rn_formula(RNIndex::Psi(1)).unwrap(), Formula::var());
        assert_eq!(rn_formula(RNIndex::Phi(1)).unwrap(), p("~a"));
        assert_eq!(rn_formula(RNIndex::Phi(2)).unwrap(), p("(a -> bot) -> a"));
        assert_eq!(
            rn_formula(RNIndex::Psi(3)).unwrap(),
            Formula::or(p("(a -> bot) -> a"), p("(a -> bot) | a"))
        );
        assert_eq!(rn_formula(RNIndex::Bot).unwrap(), Formula::bot());
        assert_eq!(rn_formula(RNIndex::Top).unwrap(), p("bot -> bot"));
    }

    #[test]
    fn rn_formula_respects_recursion() {
        for k in 1..12 {
            let phi = rn_formula(RNIndex::Phi(k)).unwrap();
            let psi = rn_formula(RNIndex::Psi(k)).unwrap();
            assert_eq!(
                rn_formula(RNIndex::Phi(k + 1)).unwrap(),
                Formula::implies(phi.clone(), psi.clone())
            );
            assert_eq!(
                rn_formula(RNIndex::Psi(k + 1)).unwrap(),
                Formula::or(phi, psi)
            );
        }
    }

    #[test]
    fn rn_formula_lengths_strictly_increase() {
        let mut prev_phi = 0;
        let mut prev_psi = 0;
        for k in 1..=20 {
            let lp = length(&rn_formula(RNIndex::Phi(k)).unwrap());
            let ls = length(&rn_formula(RNIndex::Psi(k)).unwrap());
            assert!(
                lp > prev_phi && ls > prev_psi,
                "lengths must grow at rank {k}"
            );
            prev_phi = lp;
            prev_psi = ls;
        }
    }

    #[test]
    fn rn_formula_enforces_cap() {
        assert!(rn_formula(RNIndex::Psi(DEFAULT_RANK_CAP)).is_ok());
        assert_eq!(
            rn_formula(RNIndex::Psi(DEFAULT_RANK_CAP + 1)),
            Err(FormulaError::SizeLimitExceeded {
                rank: DEFAULT_RANK_CAP + 1,
                cap: DEFAULT_RANK_CAP
            })
        );
        assert!(rn_formula_capped(RNIndex::Psi(40), 40).is_ok());
    }

    #[test]
    fn random_formula_is_deterministic() {
        let a = random_formula(5, 7);
        let b = random_formula(5, 7);
        assert_eq!(a, b);
        assert_ne!(
            render(&random_formula(40, 1)),
            render(&random_formula(40, 2))
        );
    }

    #[test]
    fn random_formula_respects_size() {
        for seed in 0..200 {
            let size = 1 + seed % 60;
            let f = random_formula(size, seed);
            assert!(length(&f) <= size, "length {} > size {size}", length(&f));
        }
        assert!(length(&random_formula(0, 3)) == 1);
    }

    #[test]
    fn deep_input_does_not_overflow() {
        // One hundred thousand nested negations: parse, drop, compare.
        let text = format!("{}a", "~".repeat(100_000));
        let f = parse(&text).unwrap();
        let g = parse(&text).unwrap();
        assert_eq!(f, g);
        assert_eq!(length(&f), 200_001);
        drop(f);
        drop(g);

        let text = format!("{}a{}", "(".repeat(100_000), ")".repeat(100_000));
        let f = parse(&text).unwrap();
        assert_eq!(f, Formula::var());
    }

    proptest! {
        #[test]
        fn roundtrip_parse_render(size in 1u64..120, seed in 0u64..5000) {
            let f = random_formula(size, seed);
            let text = render(&f);
            let back = parse(&text).unwrap();
            prop_assert_eq!(back, f);
        }

        #[test]
        fn desugaring_matches_expansion(size in 1u64..40, seed in 0u64..2000) {
            let f = random_formula(size, seed);
            let x = render(&f);
            let neg = parse(&format!("~({x})")).unwrap();
            let expanded = parse(&format!("({x}) -> bot")).unwrap();
            prop_assert_eq!(neg, expanded);
        }
    }
}
