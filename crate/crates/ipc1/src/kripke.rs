//! Finite intuitionistic Kripke models: validation, canonical models, the
//! model index `h`, and two model checkers.
//!
//! A model is a finite set of named states, a preorder `R` (reflexive and
//! transitive), and a monotone valuation `ξ(a)` (once `a` holds it stays
//! true along `R`). [`validate`](KripkeModel::validate) reports violations
//! of these invariants; the checking operations refuse invalid models.
//!
//! Two checkers are provided. [`check_brute`] evaluates the satisfaction
//! clauses directly over all states and shared subformulas — slow, simple,
//! and the oracle for everything else. [`check_fast`] computes the state's
//! *model index* `h` and the formula's lattice index and answers from the
//! pair in constant time; the two agree on all valid inputs.
//!
//! The canonical ladder models built by [`canonical`] are the yardstick for
//! `h`: state `k` of `canonical(n)` has model index exactly `k`, and a state
//! of any model has index `n` precisely when it satisfies the same
//! one-variable formulas as the base state of `canonical(n)`.

use std::collections::HashMap;
use std::fmt::Write as _;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::{DagNode, Formula, FormulaDag};
use crate::lattice::{holds_at, rn_index};

/// How an edge list should be interpreted when building a model.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Closure {
    /// Take the edges exactly as written.
    #[default]
    Explicit,
    /// Add loops everywhere and close under transitivity.
    ReflexiveTransitive,
}

/// A violation of the Kripke model invariants, reported by
/// [`KripkeModel::validate`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    /// The state set is empty.
    #[error("the state set is empty")]
    EmptyStateSet,
    /// A state without a self-loop.
    #[error("relation is not reflexive at `{state}`")]
    NotReflexive {
        /// The loop-less state.
        state: String,
    },
    /// A missing composition: `from` reaches a state that reaches `to`, but
    /// `(from, to)` is absent.
    #[error("relation is not transitive: `{from}` indirectly reaches `{to}` without an edge")]
    NotTransitive {
        /// Start of the broken composition.
        from: String,
        /// Unreached endpoint.
        to: String,
    },
    /// The valuation forgets `a` along an edge.
    #[error("valuation is not monotone: `{from}` satisfies `a` but its successor `{to}` does not")]
    NonMonotoneValuation {
        /// State where `a` holds.
        from: String,
        /// Related state where `a` fails.
        to: String,
    },
}

fn fmt_violations(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(Violation::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

/// Errors from model construction, loading, and checking.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KripkeError {
    /// The model breaks the preorder/monotonicity/nonemptiness invariants.
    #[error("invalid model: {}", fmt_violations(.violations))]
    InvalidModel {
        /// Everything that is wrong with the model.
        violations: Vec<Violation>,
    },
    /// A state name that the model does not contain.
    #[error("unknown state `{name}`")]
    UnknownState {
        /// The unresolved name.
        name: String,
    },
    /// The same state name given twice.
    #[error("duplicate state `{name}`")]
    DuplicateState {
        /// The repeated name.
        name: String,
    },
    /// Malformed model file text.
    #[error("model file: {message}")]
    Format {
        /// Parser's description of the problem.
        message: String,
    },
    /// The model-index computation found no consistent value; this is a
    /// defensive guard and is unreachable for models that pass validation.
    #[error("model index of `{state}` is not well defined")]
    IndexUndefined {
        /// The state whose index could not be assigned.
        state: String,
    },
}

/// A finite Kripke model: named states, a relation, and the set of states
/// where `a` holds.
///
/// The constructor resolves names but does not force the invariants, so
/// ill-formed inputs can still be loaded and inspected;
/// [`validate`](Self::validate) lists what is wrong, and the checking
/// operations return [`KripkeError::InvalidModel`] rather than answer on
/// such a model.
#[derive(Debug, Clone)]
pub struct KripkeModel {
    states: Vec<String>,
    lookup: HashMap<String, usize>,
    /// Row-major adjacency: `rel[i * n + j]` iff `(i, j) ∈ R`.
    rel: Vec<bool>,
    val: Vec<bool>,
}

/// Serialized form of a model file.
#[derive(Serialize, Deserialize)]
struct ModelFile {
    states: Vec<String>,
    edges: Vec<(String, String)>,
    #[serde(default)]
    valuation: Vec<String>,
    #[serde(default)]
    closure: Closure,
}

impl KripkeModel {
    /// Builds a model from named parts.
    ///
    /// With [`Closure::ReflexiveTransitive`] the given edges are completed
    /// to a preorder; with [`Closure::Explicit`] they are taken literally
    /// (and [`validate`](Self::validate) will report what is missing).
    ///
    /// # Errors
    ///
    /// [`KripkeError::DuplicateState`] for repeated names,
    /// [`KripkeError::UnknownState`] for edge endpoints or valuation members
    /// that are not states.
    pub fn new(
        states: Vec<String>,
        edges: &[(String, String)],
        valuation: &[String],
        closure: Closure,
    ) -> Result<KripkeModel, KripkeError> {
        let n = states.len();
        let mut lookup = HashMap::with_capacity(n);
        for (i, name) in states.iter().enumerate() {
            if lookup.insert(name.clone(), i).is_some() {
                return Err(KripkeError::DuplicateState { name: name.clone() });
            }
        }
        let mut rel = vec![false; n * n];
        let resolve = |name: &str| -> Result<usize, KripkeError> {
            lookup
                .get(name)
                .copied()
                .ok_or_else(|| KripkeError::UnknownState {
                    name: name.to_string(),
                })
        };
        for (u, v) in edges {
            rel[resolve(u)? * n + resolve(v)?] = true;
        }
        let mut val = vec![false; n];
        for w in valuation {
            val[resolve(w)?] = true;
        }
        if closure == Closure::ReflexiveTransitive {
            close_reflexive_transitive(&mut rel, n);
        }
        Ok(KripkeModel {
            states,
            lookup,
            rel,
            val,
        })
    }

    /// The state names, in declaration order.
    pub fn states(&self) -> &[String] {
        &self.states
    }

    /// Number of states.
    pub fn len(&self) -> usize {
        self.states.len()
    }

    /// Whether the model has no states (an invalid model).
    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    fn index_of(&self, name: &str) -> Result<usize, KripkeError> {
        self.lookup
            .get(name)
            .copied()
            .ok_or_else(|| KripkeError::UnknownState {
                name: name.to_string(),
            })
    }

    pub(crate) fn edge(&self, i: usize, j: usize) -> bool {
        self.rel[i * self.states.len() + j]
    }

    /// Whether `(u, v)` is in the relation.
    ///
    /// # Errors
    ///
    /// [`KripkeError::UnknownState`] if either name is not a state.
    pub fn related(&self, u: &str, v: &str) -> Result<bool, KripkeError> {
        Ok(self.edge(self.index_of(u)?, self.index_of(v)?))
    }

    /// Whether `a` holds at `w`.
    ///
    /// # Errors
    ///
    /// [`KripkeError::UnknownState`] if `w` is not a state.
    pub fn in_valuation(&self, w: &str) -> Result<bool, KripkeError> {
        Ok(self.val[self.index_of(w)?])
    }

    /// Checks the three invariants — reflexivity, transitivity, monotone
    /// valuation — plus nonemptiness, and returns every violation found.
    ///
    /// An empty result means the model is a genuine intuitionistic Kripke
    /// model and all checking operations will accept it.
    pub fn validate(&self) -> Vec<Violation> {
        let n = self.states.len();
        let mut out = Vec::new();
        if n == 0 {
            out.push(Violation::EmptyStateSet);
            return out;
        }
        for i in 0..n {
            if !self.edge(i, i) {
                out.push(Violation::NotReflexive {
                    state: self.states[i].clone(),
                });
            }
        }
        for i in 0..n {
            for k in 0..n {
                if self.edge(i, k) {
                    continue;
                }
                // Report each missing composition once, whatever the midpoint.
                if (0..n).any(|j| self.edge(i, j) && self.edge(j, k)) {
                    out.push(Violation::NotTransitive {
                        from: self.states[i].clone(),
                        to: self.states[k].clone(),
                    });
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if self.edge(i, j) && self.val[i] && !self.val[j] {
                    out.push(Violation::NonMonotoneValuation {
                        from: self.states[i].clone(),
                        to: self.states[j].clone(),
                    });
                }
            }
        }
        out
    }

    fn ensure_valid(&self) -> Result<(), KripkeError> {
        let violations = self.validate();
        if violations.is_empty() {
            Ok(())
        } else {
            Err(KripkeError::InvalidModel { violations })
        }
    }

    /// The model index of every state, in [`states`](Self::states) order.
    ///
    /// This is the batch form of [`model_index`]: the condensation and all
    /// `h` values are computed in one pass, which matters when a caller
    /// needs the whole table.
    ///
    /// # Errors
    ///
    /// [`KripkeError::InvalidModel`] if validation fails;
    /// [`KripkeError::IndexUndefined`] as a defensive guard (see the `h`
    /// computation notes below).
    pub fn model_indices(&self) -> Result<Vec<u64>, KripkeError> {
        self.ensure_valid()?;
        self.h_values()
    }

    /// Model indices without re-validating; caller guarantees validity.
    pub(crate) fn h_values(&self) -> Result<Vec<u64>, KripkeError> {
        let n = self.states.len();
        // Cluster representative: the least state mutually related to i.
        // Mutual reachability is directly readable off a closed preorder.
        let mut rep = vec![0usize; n];
        for i in 0..n {
            rep[i] = rep[..i]
                .iter()
                .enumerate()
                .find(|&(j, _)| self.edge(i, j) && self.edge(j, i))
                .map_or(i, |(_, &r)| r);
        }
        let mut reps: Vec<usize> = (0..n).filter(|&i| rep[i] == i).collect();
        // Strictly-above representatives; in a transitive relation the
        // strictly-above set of anything above r is properly smaller, so
        // sorting by size is a topological order (maximal clusters first).
        let above = |r: usize| -> Vec<usize> {
            (0..n)
                .filter(|&j| rep[j] == j && j != r && self.edge(r, j))
                .collect()
        };
        reps.sort_by_key(|&r| above(r).len());

        let mut h: Vec<u64> = vec![0; n];
        for &r in &reps {
            if self.val[r] {
                h[r] = 1;
                continue;
            }
            // Membership bitmap of h values strictly above; h ≤ n + 1.
            let mut seen = vec![false; n + 3];
            for j in above(r) {
                seen[h[j] as usize] = true;
            }
            if !seen[1] {
                h[r] = 2;
                continue;
            }
            let mut candidates =
                (1..=n).filter(|&k| seen[k] && (k == 1 || seen[k - 1]) && !seen[k + 1]);
            match (candidates.next(), candidates.next()) {
                (Some(k), None) => h[r] = k as u64 + 2,
                _ => {
                    return Err(KripkeError::IndexUndefined {
                        state: self.states[r].clone(),
                    })
                }
            }
        }
        Ok((0..n).map(|i| h[rep[i]]).collect())
    }

    /// Serializes the model as a JSON model file with explicit closure.
    ///
    /// The output reloads through [`from_json`](Self::from_json) to an
    /// identical model.
    pub fn to_json(&self) -> String {
        let n = self.states.len();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if self.edge(i, j) {
                    edges.push((self.states[i].clone(), self.states[j].clone()));
                }
            }
        }
        let file = ModelFile {
            states: self.states.clone(),
            edges,
            valuation: (0..n)
                .filter(|&i| self.val[i])
                .map(|i| self.states[i].clone())
                .collect(),
            closure: Closure::Explicit,
        };
        serde_json::to_string_pretty(&file).expect("model serialization cannot fail")
    }

    /// Loads a model from JSON text:
    ///
    /// ```json
    /// {"states": ["u", "v"],
    ///  "edges": [["u", "v"]],
    ///  "valuation": ["v"],
    ///  "closure": "reflexive-transitive"}
    /// ```
    ///
    /// `valuation` defaults to empty and `closure` to `"explicit"`.
    ///
    /// # Errors
    ///
    /// [`KripkeError::Format`] for malformed JSON, plus the
    /// [`new`](Self::new) name-resolution errors.
    pub fn from_json(text: &str) -> Result<KripkeModel, KripkeError> {
        let file: ModelFile = serde_json::from_str(text).map_err(|e| KripkeError::Format {
            message: e.to_string(),
        })?;
        KripkeModel::new(file.states, &file.edges, &file.valuation, file.closure)
    }

    /// Renders the model in DOT format, drawing states where `a` holds with
    /// a double circle.
    ///
    /// With `suppress_implied` the picture is reduced to the information
    /// that determines the preorder: self-loops are dropped, each
    /// nontrivial cluster is drawn as a cycle through its members, and
    /// between clusters only the covering (Hasse) edges appear.
    pub fn to_dot(&self, suppress_implied: bool) -> String {
        let n = self.states.len();
        let quoted = |i: usize| {
            format!(
                "\"{}\"",
                self.states[i].replace('\\', "\\\\").replace('"', "\\\"")
            )
        };
        let mut out = String::from("digraph model {\n  rankdir=BT;\n  node [shape=circle];\n");
        for i in 0..n {
            let _ = writeln!(
                out,
                "  {}{};",
                quoted(i),
                if self.val[i] {
                    " [shape=doublecircle]"
                } else {
                    ""
                }
            );
        }
        if !suppress_implied {
            for i in 0..n {
                for j in 0..n {
                    if self.edge(i, j) {
                        let _ = writeln!(out, "  {} -> {};", quoted(i), quoted(j));
                    }
                }
            }
            out.push_str("}\n");
            return out;
        }

        // Clusters, then Hasse edges between their representatives.
        let mut rep = vec![0usize; n];
        for i in 0..n {
            rep[i] = rep[..i]
                .iter()
                .enumerate()
                .find(|&(j, _)| self.edge(i, j) && self.edge(j, i))
                .map_or(i, |(_, &r)| r);
        }
        for r in 0..n {
            if rep[r] != r {
                continue;
            }
            let members: Vec<usize> = (0..n).filter(|&i| rep[i] == r).collect();
            if members.len() > 1 {
                for w in 0..members.len() {
                    let _ = writeln!(
                        out,
                        "  {} -> {};",
                        quoted(members[w]),
                        quoted(members[(w + 1) % members.len()])
                    );
                }
            }
        }
        let strictly = |x: usize, y: usize| self.edge(x, y) && !self.edge(y, x);
        for i in 0..n {
            if rep[i] != i {
                continue;
            }
            for j in 0..n {
                if rep[j] != j || !strictly(i, j) {
                    continue;
                }
                let covered = (0..n).any(|k| rep[k] == k && strictly(i, k) && strictly(k, j));
                if !covered {
                    let _ = writeln!(out, "  {} -> {};", quoted(i), quoted(j));
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

fn close_reflexive_transitive(rel: &mut [bool], n: usize) {
    for i in 0..n {
        rel[i * n + i] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if rel[i * n + k] {
                for j in 0..n {
                    if rel[k * n + j] {
                        rel[i * n + j] = true;
                    }
                }
            }
        }
    }
}

/// Applies a closure mode to a bare edge list over the universe of names
/// appearing in it.
///
/// [`Closure::Explicit`] returns the list unchanged;
/// [`Closure::ReflexiveTransitive`] returns the reflexive-transitive
/// closure, sorted and deduplicated. Models built by
/// [`KripkeModel::new`] close over *all* states instead, which matters for
/// isolated states.
pub fn saturate(edges: &[(String, String)], mode: Closure) -> Vec<(String, String)> {
    match mode {
        Closure::Explicit => edges.to_vec(),
        Closure::ReflexiveTransitive => {
            let mut names: Vec<&str> = Vec::new();
            for (u, v) in edges {
                for x in [u.as_str(), v.as_str()] {
                    if !names.contains(&x) {
                        names.push(x);
                    }
                }
            }
            let n = names.len();
            let idx = |x: &str| names.iter().position(|&y| y == x).unwrap();
            let mut rel = vec![false; n * n];
            for (u, v) in edges {
                rel[idx(u) * n + idx(v)] = true;
            }
            close_reflexive_transitive(&mut rel, n);
            let mut out = Vec::new();
            for i in 0..n {
                for j in 0..n {
                    if rel[i * n + j] {
                        out.push((names[i].to_string(), names[j].to_string()));
                    }
                }
            }
            out.sort();
            out
        }
    }
}

/// The canonical ladder model on states `{1, …, n−2} ∪ {n}`, related by
/// `a ⊴ b` iff `a = b` or `a ≥ b + 2`, with `a` true exactly at state `1`
/// (so the valuation is empty for `n = 2`).
///
/// These models realize every model index: the index of state `k` here is
/// `k` itself, and in particular the base state `n` has index `n`.
///
/// # Panics
///
/// If `n` is zero; indices start at one.
pub fn canonical(n: u64) -> KripkeModel {
    assert!(n >= 1, "canonical models are numbered from 1");
    let nums: Vec<u64> = (1..=n.saturating_sub(2)).chain([n]).collect();
    let states: Vec<String> = nums.iter().map(u64::to_string).collect();
    let count = nums.len();
    let mut rel = vec![false; count * count];
    for (i, &a) in nums.iter().enumerate() {
        for (j, &b) in nums.iter().enumerate() {
            if a == b || a >= b + 2 {
                rel[i * count + j] = true;
            }
        }
    }
    let mut val = vec![false; count];
    if n != 2 {
        val[0] = true; // state "1"
    }
    let lookup = states
        .iter()
        .enumerate()
        .map(|(i, s)| (s.clone(), i))
        .collect();
    KripkeModel {
        states,
        lookup,
        rel,
        val,
    }
}

/// The model index `h` of state `w`: the number of the canonical model
/// whose base state satisfies exactly the same one-variable formulas as `w`.
///
/// Computed on the cluster condensation, bottom-up: states in `ξ(a)` get 1;
/// states with no `a` strictly above get 2; otherwise the value is `k + 2`
/// where `k` ends the initial run of model indices strictly above. Mutually
/// related states always receive the same value.
///
/// # Errors
///
/// [`KripkeError::InvalidModel`] or [`KripkeError::UnknownState`] for bad
/// inputs; [`KripkeError::IndexUndefined`] only if the closed form above
/// has no unique solution, which cannot happen for validated models.
///
/// # Examples
///
/// ```
/// use ipc1::kripke::{canonical, model_index};
///
/// let m = canonical(9);
/// assert_eq!(model_index(&m, "9").unwrap(), 9);
/// assert_eq!(model_index(&m, "1").unwrap(), 1);
/// ```
pub fn model_index(m: &KripkeModel, w: &str) -> Result<u64, KripkeError> {
    let i = m.index_of(w)?;
    Ok(m.model_indices()?[i])
}

/// Brute-force model checking: evaluates the satisfaction clauses over
/// every (shared subformula, state) pair.
///
/// `a` holds where the valuation says; `bot` nowhere; `f & g`/`f | g`
/// pointwise; `f -> g` at `w` iff at every `v` with `(w, v) ∈ R`, `g` holds
/// wherever `f` does. Shared subterms are identified by structural hashing
/// first, so formulas with exponential unfoldings stay polynomial.
///
/// This is the semantic oracle: simple enough to trust, and everything
/// faster is tested against it.
///
/// # Errors
///
/// [`KripkeError::InvalidModel`] or [`KripkeError::UnknownState`].
pub fn check_brute(m: &KripkeModel, s: &str, f: &Formula) -> Result<bool, KripkeError> {
    m.ensure_valid()?;
    let start = m.index_of(s)?;
    let dag = FormulaDag::from_tree(f);
    let n = m.states.len();
    let mut sat: Vec<Vec<bool>> = Vec::with_capacity(dag.len());
    for node in dag.nodes() {
        let row = match *node {
            DagNode::Var => m.val.clone(),
            DagNode::Bot => vec![false; n],
            DagNode::And(l, r) => (0..n).map(|w| sat[l][w] && sat[r][w]).collect(),
            DagNode::Or(l, r) => (0..n).map(|w| sat[l][w] || sat[r][w]).collect(),
            DagNode::Impl(l, r) => (0..n)
                .map(|w| (0..n).all(|v| !m.edge(w, v) || !sat[l][v] || sat[r][v]))
                .collect(),
        };
        sat.push(row);
    }
    Ok(sat[dag.root()][start])
}

/// Fast model checking: the lattice index of the formula against the model
/// index of the state.
///
/// Satisfaction of any one-variable formula at a state depends only on the
/// pair (formula class, state index): `bot` never holds, `top` always,
/// `psi_k` holds iff `h ≤ k`, and `phi_k` holds iff `h < k` or `h = k + 1`.
/// Agrees with [`check_brute`] on every valid input.
///
/// # Errors
///
/// [`KripkeError::InvalidModel`] or [`KripkeError::UnknownState`].
pub fn check_fast(m: &KripkeModel, s: &str, f: &Formula) -> Result<bool, KripkeError> {
    let h = model_index(m, s)?;
    Ok(holds_at(rn_index(f), h))
}

/// Whether every pair of states has a common `R`-successor.
///
/// # Errors
///
/// [`KripkeError::InvalidModel`] if validation fails.
///
/// # Examples
///
/// ```
/// use ipc1::kripke::{canonical, is_directed};
///
/// assert!(is_directed(&canonical(3)).unwrap());
/// assert!(!is_directed(&canonical(4)).unwrap());
/// ```
pub fn is_directed(m: &KripkeModel) -> Result<bool, KripkeError> {
    m.ensure_valid()?;
    let n = m.states.len();
    Ok((0..n).all(|i| (0..n).all(|j| (0..n).any(|k| m.edge(i, k) && m.edge(j, k)))))
}

/// Generates a pseudorandom valid model with `states` states, deterministic
/// in `(states, seed)`.
///
/// The generator deliberately produces nontrivial clusters (mutually
/// related groups), a layered order between them, and a monotone valuation,
/// then closes everything reflexively and transitively, so the result
/// always validates.
///
/// # Panics
///
/// If `states` is zero.
pub fn random_model(states: usize, seed: u64) -> KripkeModel {
    assert!(states >= 1, "a model needs at least one state");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = states;
    let names: Vec<String> = (0..n).map(|i| format!("s{i}")).collect();

    // Partition into clusters: runs of 1–3 consecutive states.
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    let mut i = 0;
    while i < n {
        let size = (1 + rng.gen_range(0..3usize)).min(n - i);
        clusters.push((i..i + size).collect());
        i += size;
    }

    let mut rel = vec![false; n * n];
    // Clusters are internally complete.
    for members in &clusters {
        for &x in members {
            for &y in members {
                rel[x * n + y] = true;
            }
        }
    }
    // A random order between clusters: earlier clusters may reach later
    // ones, which keeps the sprinkled edges acyclic across clusters.
    for a in 0..clusters.len() {
        for b in (a + 1)..clusters.len() {
            if rng.gen_bool(0.45) {
                rel[clusters[a][0] * n + clusters[b][0]] = true;
            }
        }
    }
    close_reflexive_transitive(&mut rel, n);

    // Seed the valuation and close it upward.
    let mut val = vec![false; n];
    for v in &mut val {
        *v = rng.gen_bool(0.3);
    }
    for w in 0..n {
        if val[w] {
            for v in 0..n {
                if rel[w * n + v] {
                    val[v] = true;
                }
            }
        }
    }

    let lookup = names
        .iter()
        .enumerate()
        .map(|(i, s)| (s.clone(), i))
        .collect();
    KripkeModel {
        states: names,
        lookup,
        rel,
        val,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{parse, random_formula, rn_formula};
    use crate::lattice::RNIndex;
    use proptest::prelude::*;

    fn model(
        states: &[&str],
        edges: &[(&str, &str)],
        valuation: &[&str],
        closure: Closure,
    ) -> KripkeModel {
        KripkeModel::new(
            states.iter().map(|s| s.to_string()).collect(),
            &edges
                .iter()
                .map(|(u, v)| (u.to_string(), v.to_string()))
                .collect::<Vec<_>>(),
            &valuation.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
            closure,
        )
        .unwrap()
    }

    #[test]
    fn canonical_shapes() {
        let m1 = canonical(1);
        assert_eq!(m1.states(), ["1"]);
        assert!(m1.in_valuation("1").unwrap());

        let m2 = canonical(2);
        assert_eq!(m2.states(), ["2"]);
        assert!(!m2.in_valuation("2").unwrap());

        let m9 = canonical(9);
        assert_eq!(m9.states(), ["1", "2", "3", "4", "5", "6", "7", "9"]);
        assert!(m9.related("9", "7").unwrap());
        assert!(!m9.related("3", "2").unwrap());
        assert!(m9.related("3", "1").unwrap());
        assert!(matches!(
            m9.related("9", "8"),
            Err(KripkeError::UnknownState { .. })
        ));

        assert_eq!(canonical(1).len(), 1);
        for n in 2..=20 {
            assert_eq!(canonical(n).len() as u64, n - 1);
        }
        for n in 1..=30 {
            assert!(canonical(n).validate().is_empty(), "canonical({n}) invalid");
        }
    }

    #[test]
    fn canonical_model_indices_are_their_names() {
        for n in 1..=30u64 {
            let m = canonical(n);
            let hs = m.model_indices().unwrap();
            for (name, h) in m.states().iter().zip(hs) {
                assert_eq!(name.parse::<u64>().unwrap(), h, "H_{n} state {name}");
            }
        }
    }

    #[test]
    fn validate_reports_each_kind() {
        let ok = model(&["w"], &[("w", "w")], &[], Closure::Explicit);
        assert!(ok.validate().is_empty());

        let bad_val = model(
            &["w", "v"],
            &[("w", "w"), ("v", "v"), ("w", "v")],
            &["w"],
            Closure::Explicit,
        );
        assert_eq!(
            bad_val.validate(),
            vec![Violation::NonMonotoneValuation {
                from: "w".into(),
                to: "v".into()
            }]
        );

        let bad_trans = model(
            &["x", "y", "z"],
            &[("x", "x"), ("y", "y"), ("z", "z"), ("x", "y"), ("y", "z")],
            &[],
            Closure::Explicit,
        );
        assert_eq!(
            bad_trans.validate(),
            vec![Violation::NotTransitive {
                from: "x".into(),
                to: "z".into()
            }]
        );

        let bad_refl = model(
            &["u", "v"],
            &[("u", "u"), ("u", "v")],
            &[],
            Closure::Explicit,
        );
        assert_eq!(
            bad_refl.validate(),
            vec![Violation::NotReflexive { state: "v".into() }]
        );

        let empty = KripkeModel::new(Vec::new(), &[], &[], Closure::Explicit).unwrap();
        assert_eq!(empty.validate(), vec![Violation::EmptyStateSet]);

        // Construction-time name errors.
        assert!(matches!(
            KripkeModel::new(vec!["a".into(), "a".into()], &[], &[], Closure::Explicit),
            Err(KripkeError::DuplicateState { .. })
        ));
        assert!(matches!(
            KripkeModel::new(
                vec!["a".into()],
                &[("a".into(), "b".into())],
                &[],
                Closure::Explicit
            ),
            Err(KripkeError::UnknownState { .. })
        ));
    }

    #[test]
    fn saturate_modes() {
        let e = vec![("x".to_string(), "y".to_string())];
        assert_eq!(saturate(&e, Closure::Explicit), e);
        let closed = saturate(&e, Closure::ReflexiveTransitive);
        assert_eq!(
            closed,
            vec![
                ("x".to_string(), "x".to_string()),
                ("x".to_string(), "y".to_string()),
                ("y".to_string(), "y".to_string()),
            ]
        );

        let chain = vec![
            ("x".to_string(), "y".to_string()),
            ("y".to_string(), "z".to_string()),
        ];
        let closed = saturate(&chain, Closure::ReflexiveTransitive);
        assert!(closed.contains(&("x".to_string(), "z".to_string())));
        assert_eq!(closed.len(), 6);
    }

    #[test]
    fn model_index_cases() {
        // Any state in the valuation has index 1.
        let m = model(&["w"], &[("w", "w")], &["w"], Closure::Explicit);
        assert_eq!(model_index(&m, "w").unwrap(), 1);
        // Single state, empty valuation: index 2.
        let m = model(&["w"], &[("w", "w")], &[], Closure::Explicit);
        assert_eq!(model_index(&m, "w").unwrap(), 2);
        // Two incomparable states with h = 1 and h = 2 below a third: the
        // initial run {1, 2} ends at 2, so the bottom gets 4.
        let m = model(
            &["top_a", "top_n", "w"],
            &[("w", "top_a"), ("w", "top_n")],
            &["top_a"],
            Closure::ReflexiveTransitive,
        );
        assert_eq!(model_index(&m, "top_a").unwrap(), 1);
        assert_eq!(model_index(&m, "top_n").unwrap(), 2);
        assert_eq!(model_index(&m, "w").unwrap(), 4);
        // A chain w — v(a): S = {1} gives h = 3.
        let m = model(
            &["v", "w"],
            &[("w", "v")],
            &["v"],
            Closure::ReflexiveTransitive,
        );
        assert_eq!(model_index(&m, "w").unwrap(), 3);

        assert!(matches!(
            model_index(&m, "nope"),
            Err(KripkeError::UnknownState { .. })
        ));
        let invalid = model(&["u", "v"], &[("u", "v")], &[], Closure::Explicit);
        assert!(matches!(
            model_index(&invalid, "u"),
            Err(KripkeError::InvalidModel { .. })
        ));
    }

    #[test]
    fn clusters_share_their_index() {
        // A two-state cluster above, one state below.
        let m = model(
            &["c1", "c2", "w"],
            &[("c1", "c2"), ("c2", "c1"), ("w", "c1")],
            &[],
            Closure::ReflexiveTransitive,
        );
        let hs = m.model_indices().unwrap();
        assert_eq!(hs[0], hs[1]);
        assert_eq!(hs, vec![2, 2, 2]);
        // With `a` on the cluster the whole cluster is 1 and w sees it.
        let m = model(
            &["c1", "c2", "w"],
            &[("c1", "c2"), ("c2", "c1"), ("w", "c1")],
            &["c1", "c2"],
            Closure::ReflexiveTransitive,
        );
        assert_eq!(m.model_indices().unwrap(), vec![1, 1, 3]);
    }

    /// The defining property of h: {h(v) : v reachable from w} is always
    /// {1, …, h(w)−2} ∪ {h(w)}.
    #[test]
    fn h_welldefinedness_identity() {
        for seed in 0..120u64 {
            let m = random_model(1 + (seed as usize % 12), seed);
            let hs = m.model_indices().unwrap();
            let n = m.len();
            for w in 0..n {
                let mut up: Vec<u64> = (0..n).filter(|&v| m.edge(w, v)).map(|v| hs[v]).collect();
                up.sort_unstable();
                up.dedup();
                let h = hs[w];
                let mut expect: Vec<u64> = (1..=h.saturating_sub(2)).collect();
                expect.push(h);
                assert_eq!(up, expect, "state {w} of seed {seed} (h = {h})");
            }
        }
    }

    #[test]
    fn check_brute_basics() {
        let m = canonical(5);
        assert!(!check_brute(&m, "5", &parse("bot").unwrap()).unwrap());
        assert!(check_brute(&m, "5", &parse("top").unwrap()).unwrap());
        assert!(check_brute(&m, "5", &rn_formula(RNIndex::Psi(6)).unwrap()).unwrap());
        assert!(check_brute(&m, "5", &rn_formula(RNIndex::Phi(4)).unwrap()).unwrap());
        assert!(!check_brute(&m, "5", &rn_formula(RNIndex::Phi(5)).unwrap()).unwrap());
        assert!(matches!(
            check_brute(&m, "8", &parse("a").unwrap()),
            Err(KripkeError::UnknownState { .. })
        ));
    }

    /// The satisfaction table of the canonical family on canonical models:
    /// psi_k at the base of H_n iff n ≤ k; phi_k iff n < k or n = k + 1.
    #[test]
    fn canonical_satisfaction_table() {
        for n in 1..=8u64 {
            let m = canonical(n);
            let base = n.to_string();
            for k in 1..=8u32 {
                let psi = check_brute(&m, &base, &rn_formula(RNIndex::Psi(k)).unwrap()).unwrap();
                assert_eq!(psi, n <= u64::from(k), "psi_{k} at H_{n}");
                let phi = check_brute(&m, &base, &rn_formula(RNIndex::Phi(k)).unwrap()).unwrap();
                assert_eq!(
                    phi,
                    n < u64::from(k) || n == u64::from(k) + 1,
                    "phi_{k} at H_{n}"
                );
            }
        }
    }

    #[test]
    fn check_fast_examples() {
        let m = canonical(7);
        assert!(check_fast(&m, "7", &rn_formula(RNIndex::Psi(7)).unwrap()).unwrap());
        assert!(check_fast(&m, "7", &rn_formula(RNIndex::Phi(6)).unwrap()).unwrap());
        assert!(!check_fast(&m, "7", &rn_formula(RNIndex::Psi(6)).unwrap()).unwrap());
        assert!(check_fast(&m, "7", &parse("top").unwrap()).unwrap());
        assert!(!check_fast(&m, "7", &parse("bot").unwrap()).unwrap());
    }

    #[test]
    fn directedness() {
        assert!(is_directed(&model(&["w"], &[("w", "w")], &[], Closure::Explicit)).unwrap());
        for n in 1..=12u64 {
            assert_eq!(is_directed(&canonical(n)).unwrap(), n <= 3, "H_{n}");
        }
    }

    #[test]
    fn json_roundtrip() {
        let m = canonical(6);
        let text = m.to_json();
        let back = KripkeModel::from_json(&text).unwrap();
        assert_eq!(back.states(), m.states());
        for u in m.states() {
            assert_eq!(back.in_valuation(u).unwrap(), m.in_valuation(u).unwrap());
            for v in m.states() {
                assert_eq!(back.related(u, v).unwrap(), m.related(u, v).unwrap());
            }
        }

        let closed = KripkeModel::from_json(
            r#"{"states":["x","y"],"edges":[["x","y"]],"closure":"reflexive-transitive"}"#,
        )
        .unwrap();
        assert!(closed.validate().is_empty());
        let literal =
            KripkeModel::from_json(r#"{"states":["x","y"],"edges":[["x","y"]]}"#).unwrap();
        assert!(!literal.validate().is_empty());
        assert!(matches!(
            KripkeModel::from_json("not json"),
            Err(KripkeError::Format { .. })
        ));
    }

    #[test]
    fn dot_output() {
        let m = canonical(5);
        let full = m.to_dot(false);
        assert!(full.contains("\"1\" [shape=doublecircle];"));
        assert!(full.contains("\"3\" -> \"1\";"));
        assert!(full.contains("\"3\" -> \"3\";"));
        let reduced = m.to_dot(true);
        assert!(!reduced.contains("\"3\" -> \"3\";"));
        // Hasse: 5 covers 3 covers 1, but 5 -> 1 is implied.
        assert!(reduced.contains("\"5\" -> \"3\";"));
        assert!(reduced.contains("\"3\" -> \"1\";"));
        assert!(!reduced.contains("\"5\" -> \"1\";"));
        // Cluster members come out as a cycle.
        let c = model(
            &["p", "q"],
            &[("p", "q"), ("q", "p")],
            &[],
            Closure::ReflexiveTransitive,
        );
        let reduced = c.to_dot(true);
        assert!(reduced.contains("\"p\" -> \"q\";"));
        assert!(reduced.contains("\"q\" -> \"p\";"));
    }

    #[test]
    fn random_models_are_valid_and_deterministic() {
        for seed in 0..200u64 {
            let m = random_model(1 + (seed as usize % 12), seed);
            assert!(m.validate().is_empty(), "seed {seed}");
        }
        let a = random_model(9, 42).to_json();
        let b = random_model(9, 42).to_json();
        assert_eq!(a, b);
        assert_ne!(random_model(9, 1).to_json(), random_model(9, 2).to_json());
    }

    proptest! {
        /// The engines are interchangeable: fast agrees with brute force.
        #[test]
        fn fast_agrees_with_brute(states in 1usize..10, mseed in 0u64..400,
                                   size in 1u64..60, fseed in 0u64..1000) {
            let m = random_model(states, mseed);
            let f = random_formula(size, fseed);
            let s = m.states()[(fseed as usize) % m.len()].clone();
            prop_assert_eq!(
                check_fast(&m, &s, &f).unwrap(),
                check_brute(&m, &s, &f).unwrap()
            );
        }

        /// Monotonicity: truth persists along the relation.
        #[test]
        fn satisfaction_is_monotone(states in 1usize..8, mseed in 400u64..700,
                                     size in 1u64..40, fseed in 1000u64..1600) {
            let m = random_model(states, mseed);
            let f = random_formula(size, fseed);
            let names = m.states();
            for u in names {
                if check_brute(&m, u, &f).unwrap() {
                    for v in names {
                        if m.related(u, v).unwrap() {
                            prop_assert!(check_brute(&m, v, &f).unwrap());
                        }
                    }
                }
            }
        }
    }
}
