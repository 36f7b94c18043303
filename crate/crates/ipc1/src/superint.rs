//! Superintuitionistic one-variable logics: extensions of the base logic by
//! one axiom, such as KC (the weak law of the excluded middle `~a | ~~a`).
//!
//! Adding a non-valid one-variable formula as an axiom restricts attention
//! to the Kripke models where the axiom holds everywhere. Because
//! satisfaction at a state depends only on the state's model index, a logic
//! is completely described by its *allowed index set* `A`: the set of model
//! indices at which the axiom holds. For an axiom of class `psi_k` that is
//! `{1, …, k}`; for `phi_k` it is `{1, …, k−1} ∪ {k+1}`; for the base logic
//! (no axiom) every index is allowed.
//!
//! Everything else follows from `A`: a model is [`admissible`] when all its
//! model indices lie in `A`, a formula [`is_valid_in`] the logic when its
//! class holds at every allowed index, and the finitely many equivalence
//! [`classes`] of the logic are the distinct truth patterns over `A`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::formula::Formula;
use crate::kripke::{check_fast, KripkeError, KripkeModel};
use crate::lattice::{holds_at, rn_index, RNIndex};

/// Errors from logic construction and logic-relative operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SuperintError {
    /// The axiom is `bot`, which defines the inconsistent logic.
    #[error("the axiom `bot` has an empty allowed-index set (inconsistent logic)")]
    AxiomIsBot,
    /// The logic allows every index, so its class table is infinite.
    #[error("the logic allows every model index; its class table is infinite")]
    InfiniteAxiomSet,
    /// The model has a state whose index the logic does not allow.
    #[error("model is not admissible for this logic")]
    InadmissibleModel,
    /// Unrecognized logic selector text.
    #[error("unknown logic `{0}`; use `ipc`, `kc`, `psi:<k>`, or `phi:<k>`")]
    BadLogic(String),
    /// An underlying model error.
    #[error(transparent)]
    Kripke(#[from] KripkeError),
}

/// A one-variable superintuitionistic logic: the base logic plus at most one
/// axiom, named by its lattice index.
///
/// Construct with [`Logic::ipc`], [`Logic::kc`], or [`Logic::with_axiom`];
/// the textual forms `ipc`, `kc`, `psi:<k>`, `phi:<k>` parse via
/// [`FromStr`]. `kc` is shorthand for `psi:3`, the class of `~a | ~~a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Logic {
    axiom: Option<RNIndex>,
}

impl Logic {
    /// The base intuitionistic logic: no axiom, every index allowed.
    pub fn ipc() -> Logic {
        Logic { axiom: None }
    }

    /// KC, the logic of the weak excluded middle: axiom `psi3`.
    pub fn kc() -> Logic {
        Logic {
            axiom: Some(RNIndex::Psi(3)),
        }
    }

    /// The extension of the base logic by the formula class `axiom`.
    ///
    /// A `top` axiom is accepted and yields the base logic again.
    ///
    /// # Errors
    ///
    /// [`SuperintError::AxiomIsBot`] for a `bot` axiom: its allowed-index
    /// set is empty, which would make every model inadmissible.
    pub fn with_axiom(axiom: RNIndex) -> Result<Logic, SuperintError> {
        match axiom.norm() {
            RNIndex::Bot => Err(SuperintError::AxiomIsBot),
            a => Ok(Logic { axiom: Some(a) }),
        }
    }

    /// The axiom, if any.
    pub fn axiom(self) -> Option<RNIndex> {
        self.axiom
    }
}

impl fmt::Display for Logic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.axiom {
            None => f.write_str("ipc"),
            Some(RNIndex::Psi(k)) => write!(f, "psi:{k}"),
            Some(RNIndex::Phi(k)) => write!(f, "phi:{k}"),
            Some(RNIndex::Top) => f.write_str("ipc"),
            Some(RNIndex::Bot) => f.write_str("inconsistent"),
        }
    }
}

impl FromStr for Logic {
    type Err = SuperintError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        match t {
            "ipc" => return Ok(Logic::ipc()),
            "kc" => return Ok(Logic::kc()),
            _ => {}
        }
        for (prefix, build) in [
            ("psi:", RNIndex::Psi as fn(u32) -> RNIndex),
            ("phi:", RNIndex::Phi as fn(u32) -> RNIndex),
        ] {
            if let Some(digits) = t.strip_prefix(prefix) {
                if !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()) {
                    if let Ok(k) = digits.parse::<u32>() {
                        if k >= 1 {
                            return Logic::with_axiom(build(k));
                        }
                    }
                }
                return Err(SuperintError::BadLogic(s.to_string()));
            }
        }
        Err(SuperintError::BadLogic(s.to_string()))
    }
}

/// A set of allowed model indices, in the three shapes that arise from
/// one-variable axioms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndexSet {
    /// Every index `≥ 1` (base logic, or a `top` axiom).
    All,
    /// `{1, …, k}` (a `psi_k` axiom).
    UpTo(u32),
    /// `{1, …, k−1} ∪ {k+1}` (a `phi_k` axiom).
    PhiSet(u32),
}

impl IndexSet {
    /// Whether `n` is an allowed index.
    pub fn contains(self, n: u64) -> bool {
        if n == 0 {
            return false;
        }
        match self {
            IndexSet::All => true,
            IndexSet::UpTo(k) => n <= u64::from(k),
            IndexSet::PhiSet(k) => n < u64::from(k) || n == u64::from(k) + 1,
        }
    }

    /// The member list in ascending order, or `None` for [`IndexSet::All`].
    pub fn members(self) -> Option<Vec<u64>> {
        match self {
            IndexSet::All => None,
            IndexSet::UpTo(k) => Some((1..=u64::from(k)).collect()),
            IndexSet::PhiSet(k) => {
                let mut v: Vec<u64> = (1..u64::from(k)).collect();
                v.push(u64::from(k) + 1);
                Some(v)
            }
        }
    }

    /// The largest member, or `None` for [`IndexSet::All`].
    pub fn max_index(self) -> Option<u64> {
        match self {
            IndexSet::All => None,
            IndexSet::UpTo(k) => Some(u64::from(k)),
            IndexSet::PhiSet(k) => Some(u64::from(k) + 1),
        }
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            IndexSet::All => f.write_str("all"),
            _ => {
                let members = self.members().expect("finite set has members");
                let text: Vec<String> = members.iter().map(u64::to_string).collect();
                write!(f, "{{{}}}", text.join(","))
            }
        }
    }
}

/// The allowed-index set of a logic: the model indices at which its axiom
/// holds (all of them for the base logic).
///
/// # Examples
///
/// ```
/// use ipc1::superint::{allowed_indices, IndexSet, Logic};
///
/// assert_eq!(allowed_indices(&Logic::kc()), IndexSet::UpTo(3));
/// assert_eq!(allowed_indices(&Logic::ipc()), IndexSet::All);
/// ```
pub fn allowed_indices(logic: &Logic) -> IndexSet {
    match logic.axiom {
        None | Some(RNIndex::Top) => IndexSet::All,
        // `bot` axioms cannot be constructed; treat one defensively as the
        // empty-ish set `UpTo(0)` rather than panic.
        Some(RNIndex::Bot) => IndexSet::UpTo(0),
        Some(RNIndex::Psi(k)) => IndexSet::UpTo(k),
        Some(RNIndex::Phi(k)) => IndexSet::PhiSet(k),
    }
}

/// Whether every state of `m` has an allowed model index — that is, whether
/// the logic's axiom holds everywhere in the model.
///
/// For KC this is implied by directedness of the relation, but it is the
/// weaker, valuation-aware notion: a model can satisfy `~a | ~~a`
/// everywhere without being directed (two incomparable endpoints, `a` at
/// just one, has indices {1, 2} ⊆ {1, 2, 3}).
///
/// # Errors
///
/// [`KripkeError::InvalidModel`] if `m` fails validation.
pub fn admissible(logic: &Logic, m: &KripkeModel) -> Result<bool, KripkeError> {
    let allowed = allowed_indices(logic);
    Ok(m.model_indices()?.into_iter().all(|h| allowed.contains(h)))
}

/// Whether `f` holds in every admissible model of the logic: its class must
/// hold at every allowed index.
///
/// # Examples
///
/// ```
/// use ipc1::formula::parse;
/// use ipc1::superint::{is_valid_in, Logic};
///
/// let wem = parse("~a | ~~a").unwrap();
/// let em = parse("a | ~a").unwrap();
/// assert!(is_valid_in(&Logic::kc(), &wem));
/// assert!(!is_valid_in(&Logic::kc(), &em));
/// assert!(is_valid_in(&"psi:2".parse().unwrap(), &em));
/// ```
pub fn is_valid_in(logic: &Logic, f: &Formula) -> bool {
    let idx = rn_index(f);
    match allowed_indices(logic).members() {
        None => idx == RNIndex::Top,
        Some(members) => members.into_iter().all(|n| holds_at(idx, n)),
    }
}

/// One equivalence class of a finite logic: a truth pattern over the
/// allowed indices and the formula classes realizing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassInfo {
    /// Truth values over the allowed indices, in ascending index order.
    pub pattern: Vec<bool>,
    /// All indices of rank at most `max(A) + 2` with this pattern, in
    /// enumeration order (`bot`, `top`, `phi1`, `psi1`, …).
    pub members: Vec<RNIndex>,
    /// The least-rank member, preferring `psi` over `phi` on rank ties.
    pub representative: RNIndex,
}

/// The equivalence classes of a logic with finitely many allowed indices.
///
/// Two formula classes are logic-equivalent when they hold at the same
/// allowed indices; beyond rank `max(A) + 2` every class collapses into the
/// `top` pattern, so that rank bound exhausts the distinct patterns. Output
/// is ordered by first appearance in the index enumeration.
///
/// # Errors
///
/// [`SuperintError::InfiniteAxiomSet`] for the base logic (or a `top`
/// axiom), whose class lattice is infinite.
pub fn classes(logic: &Logic) -> Result<Vec<ClassInfo>, SuperintError> {
    let allowed = allowed_indices(logic);
    let members = allowed.members().ok_or(SuperintError::InfiniteAxiomSet)?;
    if members.is_empty() {
        return Err(SuperintError::AxiomIsBot);
    }
    let cap = u32::try_from(allowed.max_index().expect("finite set"))
        .unwrap_or(u32::MAX - 2)
        .saturating_add(2);
    let mut out: Vec<ClassInfo> = Vec::new();
    for idx in crate::lattice::all_indices(cap) {
        let pattern: Vec<bool> = members.iter().map(|&n| holds_at(idx, n)).collect();
        match out.iter_mut().find(|c| c.pattern == pattern) {
            Some(class) => class.members.push(idx),
            None => out.push(ClassInfo {
                pattern,
                members: vec![idx],
                representative: idx,
            }),
        }
    }
    for class in &mut out {
        let best = class
            .members
            .iter()
            .copied()
            .min_by_key(|&m| (m.rank(), matches!(m, RNIndex::Phi(_)) as u8))
            .expect("every class has a member");
        class.representative = best;
    }
    Ok(out)
}

/// Model checking within a logic: requires the model to be admissible, then
/// agrees with plain intuitionistic satisfaction ([`check_fast`]).
///
/// # Errors
///
/// [`SuperintError::InadmissibleModel`] when the logic's axiom fails
/// somewhere in the model, plus the underlying Kripke errors.
pub fn check_in(
    logic: &Logic,
    m: &KripkeModel,
    s: &str,
    f: &Formula,
) -> Result<bool, SuperintError> {
    if !admissible(logic, m)? {
        return Err(SuperintError::InadmissibleModel);
    }
    Ok(check_fast(m, s, f)?)
}
