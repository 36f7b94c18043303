//! The Rieger–Nishimura lattice: the free Heyting algebra on one generator.
//!
//! Every formula over the single variable `a` is intuitionistically
//! equivalent to exactly one member of the canonical family
//!
//! ```text
//! phi_1 = ~a      psi_1 = a
//! phi_{n+1} = phi_n -> psi_n      psi_{n+1} = phi_n | psi_n
//! ```
//!
//! together with `bot` and `top`. An [`RNIndex`] names one of these
//! equivalence classes, and [`rn_index`] computes the class of a formula by
//! folding [`meet`], [`join`] and [`rpc`] (relative pseudo-complement) over
//! its structure — normalization without proof search.
//!
//! The operation tables are driven by a concrete semantics: class `x` is
//! determined by its *truth set* `T(x) ⊆ {1, 2, 3, …}`, its satisfaction
//! pattern over the base states of the canonical linear-like frames (see
//! [`holds_at`] and `kripke::canonical`):
//!
//! ```text
//! T(bot) = ∅            T(psi_k) = {1, …, k}
//! T(top) = {1, 2, …}    T(phi_k) = {1, …, k−1} ∪ {k+1}
//! ```
//!
//! Meet and join are intersection and union of truth sets; `rpc` is the
//! Heyting implication of the underlying frame order. The unit tests verify
//! the tables against this semantics exhaustively for all ranks up to 24.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::formula::{DagNode, Formula, FormulaDag};

/// The index of an equivalence class of one-variable formulas: a point of
/// the Rieger–Nishimura lattice.
///
/// `Phi` and `Psi` carry a rank `n ≥ 1`. Rank-zero `Phi`/`Psi` values are
/// outside the documented invariant; operations treat them as the index with
/// the same truth pattern (`psi0` as `bot`, `phi0` as `psi1`) rather than
/// panic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RNIndex {
    /// The class of `bot`: the bottom of the lattice.
    Bot,
    /// The class of `top` (all tautologies): the top of the lattice.
    Top,
    /// The class of `phi_n`; `phi_1` is `~a`.
    Phi(u32),
    /// The class of `psi_n`; `psi_1` is `a` itself.
    Psi(u32),
}

impl RNIndex {
    /// The rank: `n` for `Phi(n)`/`Psi(n)`, zero for `Bot`/`Top`.
    pub fn rank(self) -> u32 {
        match self {
            RNIndex::Bot | RNIndex::Top => 0,
            RNIndex::Phi(n) | RNIndex::Psi(n) => n,
        }
    }

    /// Canonicalizes the out-of-invariant rank-zero values onto the lattice.
    pub(crate) fn norm(self) -> RNIndex {
        match self {
            RNIndex::Psi(0) => RNIndex::Bot,
            RNIndex::Phi(0) => RNIndex::Psi(1),
            x => x,
        }
    }
}

impl fmt::Display for RNIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RNIndex::Bot => f.write_str("bot"),
            RNIndex::Top => f.write_str("top"),
            RNIndex::Phi(n) => write!(f, "phi{n}"),
            RNIndex::Psi(n) => write!(f, "psi{n}"),
        }
    }
}

/// Error for unparsable [`RNIndex`] text.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("expected `bot`, `top`, `phi<k>`, or `psi<k>` with k >= 1, got `{0}`")]
pub struct RNIndexParseError(String);

impl FromStr for RNIndex {
    type Err = RNIndexParseError;

    /// Parses the text form `bot`, `top`, `phi<k>`, `psi<k>` (e.g. `phi3`).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || RNIndexParseError(s.to_string());
        let t = s.trim();
        match t {
            "bot" => return Ok(RNIndex::Bot),
            "top" => return Ok(RNIndex::Top),
            _ => {}
        }
        for (prefix, build) in [
            ("phi", RNIndex::Phi as fn(u32) -> RNIndex),
            ("psi", RNIndex::Psi as fn(u32) -> RNIndex),
        ] {
            if let Some(digits) = t.strip_prefix(prefix) {
                if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(bad());
                }
                let k: u32 = digits.parse().map_err(|_| bad())?;
                if k == 0 {
                    return Err(bad());
                }
                return Ok(build(k));
            }
        }
        Err(bad())
    }
}

/// Whether base state `state` belongs to the truth set of `idx`.
///
/// States are numbered from one; the value is membership in the truth set
/// `T(idx)` from the module docs, so any `state` outside `{1, 2, …}` (i.e.
/// zero) is in no truth set. This single function determines the whole
/// lattice: all three operations agree with it pointwise.
///
/// # Examples
///
/// ```
/// use ipc1::lattice::{holds_at, RNIndex};
///
/// assert!(holds_at(RNIndex::Psi(3), 2));
/// assert!(!holds_at(RNIndex::Psi(3), 4));
/// assert!(holds_at(RNIndex::Phi(3), 4)); // T(phi_3) = {1, 2, 4}
/// assert!(!holds_at(RNIndex::Phi(3), 3));
/// ```
pub fn holds_at(idx: RNIndex, state: u64) -> bool {
    if state == 0 {
        return false;
    }
    match idx.norm() {
        RNIndex::Bot => false,
        RNIndex::Top => true,
        RNIndex::Psi(k) => state <= u64::from(k),
        RNIndex::Phi(k) => state < u64::from(k) || state == u64::from(k) + 1,
    }
}

/// Greatest lower bound (conjunction of classes). Total and commutative.
///
/// # Examples
///
/// ```
/// use ipc1::lattice::{meet, RNIndex};
///
/// assert_eq!(meet(RNIndex::Phi(1), RNIndex::Phi(2)), RNIndex::Bot);
/// assert_eq!(meet(RNIndex::Psi(3), RNIndex::Psi(5)), RNIndex::Psi(3));
/// assert_eq!(meet(RNIndex::Phi(4), RNIndex::Top), RNIndex::Phi(4));
/// ```
pub fn meet(x: RNIndex, y: RNIndex) -> RNIndex {
    use RNIndex::{Bot, Phi, Psi, Top};
    match (x.norm(), y.norm()) {
        (Bot, _) | (_, Bot) => Bot,
        (Top, z) | (z, Top) => z,
        (Psi(n), Psi(m)) => Psi(n.min(m)),
        (Psi(n), Phi(m)) | (Phi(m), Psi(n)) => {
            if n < m {
                Psi(n)
            } else if n > m {
                Phi(m)
            } else if n == 1 {
                Bot
            } else {
                Psi(n - 1)
            }
        }
        (Phi(n), Phi(m)) => {
            let (lo, hi) = (n.min(m), n.max(m));
            if lo == hi {
                Phi(lo)
            } else if hi == lo + 1 {
                if lo == 1 {
                    Bot
                } else {
                    Psi(lo - 1)
                }
            } else {
                Phi(lo)
            }
        }
    }
}

/// Least upper bound (disjunction of classes). Total and commutative.
///
/// # Examples
///
/// ```
/// use ipc1::lattice::{join, RNIndex};
///
/// assert_eq!(join(RNIndex::Phi(2), RNIndex::Phi(3)), RNIndex::Psi(4));
/// assert_eq!(join(RNIndex::Phi(2), RNIndex::Psi(2)), RNIndex::Psi(3));
/// assert_eq!(join(RNIndex::Bot, RNIndex::Bot), RNIndex::Bot);
/// ```
pub fn join(x: RNIndex, y: RNIndex) -> RNIndex {
    use RNIndex::{Bot, Phi, Psi, Top};
    match (x.norm(), y.norm()) {
        (Bot, z) | (z, Bot) => z,
        (Top, _) | (_, Top) => Top,
        (Psi(n), Psi(m)) => Psi(n.max(m)),
        (Psi(n), Phi(m)) | (Phi(m), Psi(n)) => {
            if n > m {
                Psi(n)
            } else if n == m {
                Psi(n + 1)
            } else {
                Phi(m)
            }
        }
        (Phi(n), Phi(m)) => {
            let (lo, hi) = (n.min(m), n.max(m));
            if lo == hi {
                Phi(lo)
            } else if hi == lo + 1 {
                Psi(lo + 2)
            } else {
                Phi(hi)
            }
        }
    }
}

/// Relative pseudo-complement (implication of classes): the largest `d` with
/// `meet(x, d) ⊑ y`. Total.
///
/// # Examples
///
/// ```
/// use ipc1::lattice::{rpc, RNIndex};
///
/// assert_eq!(rpc(RNIndex::Phi(2), RNIndex::Psi(1)), RNIndex::Phi(3));
/// assert_eq!(rpc(RNIndex::Psi(1), RNIndex::Bot), RNIndex::Phi(1));
/// assert_eq!(rpc(RNIndex::Phi(4), RNIndex::Phi(4)), RNIndex::Top);
/// ```
pub fn rpc(x: RNIndex, y: RNIndex) -> RNIndex {
    use RNIndex::{Bot, Phi, Psi, Top};
    match (x.norm(), y.norm()) {
        (Bot, _) | (_, Top) => Top,
        (Top, z) => z,
        (Psi(n), Bot) => {
            if n == 1 {
                Phi(1)
            } else {
                Bot
            }
        }
        (Phi(n), Bot) => match n {
            1 => Phi(2),
            2 => Phi(1),
            _ => Bot,
        },
        (Psi(n), Psi(m)) => {
            if m >= n {
                Top
            } else if m == n - 1 {
                Phi(n)
            } else {
                Psi(m)
            }
        }
        (Psi(n), Phi(m)) => {
            if n < m {
                Top
            } else {
                Phi(m)
            }
        }
        (Phi(n), Psi(m)) => {
            if m > n {
                Top
            } else if m + 1 >= n {
                // m is n−1 or n.
                Phi(n + 1)
            } else if m + 2 == n {
                Phi(n - 1)
            } else {
                Psi(m)
            }
        }
        (Phi(n), Phi(m)) => {
            if m == n || m >= n + 2 {
                Top
            } else {
                Phi(m)
            }
        }
    }
}

/// The lattice order: `x ⊑ y` iff `meet(x, y) = x`, equivalently iff the
/// truth set of `x` is contained in that of `y`.
///
/// # Examples
///
/// ```
/// use ipc1::lattice::{leq, RNIndex};
///
/// assert!(leq(RNIndex::Bot, RNIndex::Phi(7)));
/// assert!(leq(RNIndex::Psi(2), RNIndex::Phi(3)));
/// assert!(!leq(RNIndex::Phi(1), RNIndex::Psi(1)));
/// ```
pub fn leq(x: RNIndex, y: RNIndex) -> bool {
    meet(x, y) == x.norm()
}

/// The class of a formula: a bottom-up fold sending `a` to `psi1`, `bot` to
/// `bot`, and the connectives to [`meet`], [`join`], [`rpc`].
///
/// Shared subtrees (equal handles) are evaluated once, so the canonical
/// family members produced by `formula::rn_formula` normalize in time linear
/// in their rank despite exponential unfolded length. Uses an explicit work
/// stack; input depth is limited only by memory.
///
/// # Examples
///
/// ```
/// use ipc1::formula::parse;
/// use ipc1::lattice::{rn_index, RNIndex};
///
/// assert_eq!(rn_index(&parse("a").unwrap()), RNIndex::Psi(1));
/// assert_eq!(rn_index(&parse("~a | ~~a").unwrap()), RNIndex::Psi(3));
/// assert_eq!(rn_index(&parse("bot -> bot").unwrap()), RNIndex::Top);
/// ```
pub fn rn_index(f: &Formula) -> RNIndex {
    let mut memo: HashMap<*const Formula, RNIndex> = HashMap::new();
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
                    Formula::Var => {
                        memo.insert(n, RNIndex::Psi(1));
                    }
                    Formula::Bot => {
                        memo.insert(n, RNIndex::Bot);
                    }
                    Formula::And(l, r) | Formula::Or(l, r) | Formula::Impl(l, r) => {
                        stack.push(Phase::Exit(n));
                        stack.push(Phase::Enter(l));
                        stack.push(Phase::Enter(r));
                    }
                }
            }
            Phase::Exit(n) => {
                let value = match n {
                    Formula::And(l, r) => meet(
                        memo[&(l.as_ref() as *const Formula)],
                        memo[&(r.as_ref() as *const Formula)],
                    ),
                    Formula::Or(l, r) => join(
                        memo[&(l.as_ref() as *const Formula)],
                        memo[&(r.as_ref() as *const Formula)],
                    ),
                    Formula::Impl(l, r) => rpc(
                        memo[&(l.as_ref() as *const Formula)],
                        memo[&(r.as_ref() as *const Formula)],
                    ),
                    _ => unreachable!("leaves are handled on entry"),
                };
                memo.insert(n, value);
            }
        }
    }
    memo[&(f as *const Formula)]
}

/// The class of a DAG-represented formula: one table pass, each node
/// evaluated exactly once, so the index of an exponentially long unfolding
/// is computed in linear time.
///
/// Equals `rn_index` of [`FormulaDag::unfold`].
pub fn rn_index_dag(g: &FormulaDag) -> RNIndex {
    let mut values: Vec<RNIndex> = Vec::with_capacity(g.len());
    for node in g.nodes() {
        let value = match *node {
            DagNode::Var => RNIndex::Psi(1),
            DagNode::Bot => RNIndex::Bot,
            DagNode::And(l, r) => meet(values[l], values[r]),
            DagNode::Or(l, r) => join(values[l], values[r]),
            DagNode::Impl(l, r) => rpc(values[l], values[r]),
        };
        values.push(value);
    }
    values[g.root()]
}

/// Whether `f` is an intuitionistic tautology: `rn_index(f) = Top`.
///
/// # Examples
///
/// ```
/// use ipc1::formula::parse;
/// use ipc1::lattice::is_valid;
///
/// assert!(is_valid(&parse("a -> a").unwrap()));
/// assert!(!is_valid(&parse("a | ~a").unwrap()));   // excluded middle
/// assert!(!is_valid(&parse("~a | ~~a").unwrap())); // weak excluded middle
/// ```
pub fn is_valid(f: &Formula) -> bool {
    rn_index(f) == RNIndex::Top
}

/// All indices of rank at most `max_rank`, in the deterministic order
/// `bot, top, phi1, psi1, phi2, psi2, …`.
pub fn all_indices(max_rank: u32) -> Vec<RNIndex> {
    let mut out = vec![RNIndex::Bot, RNIndex::Top];
    for k in 1..=max_rank {
        out.push(RNIndex::Phi(k));
        out.push(RNIndex::Psi(k));
    }
    out
}
