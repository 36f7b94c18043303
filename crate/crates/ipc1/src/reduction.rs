//! Alternating slice graphs, the alternating-path predicate, and the
//! reduction that turns a slice-graph reachability question into a
//! one-variable model-checking instance.
//!
//! A slice graph is a layered DAG: disjoint slices `V_0, …, V_{m−1}`, every
//! edge from some `V_i` into `V_{i−1}`, a start node `s` in the top slice
//! and a target `t` in the bottom one. Odd slices are existential and even
//! slices universal, which makes [`apath`] an alternating reachability
//! predicate. [`reduce_to_model`] builds a Kripke model around the
//! canonical ladder `H_{4m}` whose model indices encode `apath`, so a
//! single satisfaction query answers the reachability question;
//! [`verify_reduction`] measures every promised property of that encoding
//! on a concrete instance, and [`gen_slice_graph`] produces seeded random
//! instances for tests and benchmarks.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::{rn_formula_capped, Formula, FormulaError};
use crate::kripke::{Closure, KripkeError, KripkeModel};
use crate::lattice::{holds_at, RNIndex};

/// A structural defect of a slice graph found by [`validate_slice_graph`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SliceViolation {
    /// The graph has no slices at all.
    #[error("graph has no slices")]
    EmptyGraph,
    /// The slice count is odd, so the top slice would not be existential.
    #[error("slice count {count} is odd; alternation requires an even count")]
    SliceCountOdd {
        /// Number of slices.
        count: usize,
    },
    /// A node name occurs more than once.
    #[error("node `{name}` appears more than once")]
    DuplicateNode {
        /// The repeated name.
        name: String,
    },
    /// An edge endpoint is not a node of any slice.
    #[error("edge ({from}, {to}) mentions an unknown node")]
    EdgeEndpointUnknown {
        /// Edge source.
        from: String,
        /// Edge target.
        to: String,
    },
    /// An edge does not go exactly one slice downward.
    #[error("edge ({from}, {to}) does not go one slice downward")]
    EdgeNotBetweenAdjacentSlices {
        /// Edge source.
        from: String,
        /// Edge target.
        to: String,
    },
    /// A node outside the bottom slice has no outgoing edge.
    #[error("node `{node}` outside the bottom slice has no outgoing edge")]
    ZeroOutdegree {
        /// The offending node.
        node: String,
    },
    /// The start node is missing from the top slice.
    #[error("start node `{s}` is not in the top slice")]
    SNotInTopSlice {
        /// The declared start node.
        s: String,
    },
    /// The target node is missing from the bottom slice.
    #[error("target node `{t}` is not in the bottom slice")]
    TNotInBottomSlice {
        /// The declared target node.
        t: String,
    },
}

fn fmt_slice_violations(violations: &[SliceViolation]) -> String {
    let texts: Vec<String> = violations.iter().map(ToString::to_string).collect();
    texts.join("; ")
}

/// Errors from slice-graph operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    /// The graph fails validation; all defects are listed.
    #[error("invalid slice graph: {}", fmt_slice_violations(.violations))]
    InvalidSliceGraph {
        /// Everything [`validate_slice_graph`] found.
        violations: Vec<SliceViolation>,
    },
    /// A node name that is not in the graph.
    #[error("unknown node `{name}`")]
    UnknownNode {
        /// The unresolved name.
        name: String,
    },
    /// Generator parameters outside their documented ranges.
    #[error("bad parameters: {message}")]
    BadParameters {
        /// What was wrong.
        message: String,
    },
    /// The slice-graph file could not be read.
    #[error("slice graph file: {message}")]
    Format {
        /// The underlying reader message.
        message: String,
    },
    /// A formula-side failure (the instance formula exceeds the rank cap).
    #[error(transparent)]
    Formula(#[from] FormulaError),
    /// A model-side failure.
    #[error(transparent)]
    Kripke(#[from] KripkeError),
}

/// A layered alternating graph: slices `V_0, …, V_{m−1}` listed bottom-up,
/// edges from `V_i` into `V_{i−1}`, and designated start/target nodes.
///
/// Construction does not validate; call [`validate_slice_graph`] (the
/// computing operations do so themselves and refuse invalid graphs).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceGraph {
    slices: Vec<Vec<String>>,
    edges: Vec<(String, String)>,
    s: String,
    t: String,
}

impl SliceGraph {
    /// Assembles a slice graph from raw parts (slice 0 first).
    pub fn new(
        slices: Vec<Vec<String>>,
        edges: Vec<(String, String)>,
        s: impl Into<String>,
        t: impl Into<String>,
    ) -> SliceGraph {
        SliceGraph {
            slices,
            edges,
            s: s.into(),
            t: t.into(),
        }
    }

    /// The slices, bottom slice `V_0` first.
    pub fn slices(&self) -> &[Vec<String>] {
        &self.slices
    }

    /// The edges, each from a slice-`i` node to a slice-`i−1` node.
    pub fn edges(&self) -> &[(String, String)] {
        &self.edges
    }

    /// The start node (expected in the top slice).
    pub fn s(&self) -> &str {
        &self.s
    }

    /// The target node (expected in the bottom slice).
    pub fn t(&self) -> &str {
        &self.t
    }

    /// Total node count across all slices.
    pub fn node_count(&self) -> usize {
        self.slices.iter().map(Vec::len).sum()
    }

    /// Serializes to the JSON file format
    /// `{"slices": [[…V_0…], …], "edges": [[u, v], …], "s": …, "t": …}`.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("slice graphs always serialize")
    }

    /// Reads the JSON file format produced by [`to_json`](Self::to_json).
    ///
    /// # Errors
    ///
    /// [`ReductionError::Format`] when the text is not such a document.
    pub fn from_json(text: &str) -> Result<SliceGraph, ReductionError> {
        serde_json::from_str(text).map_err(|e| ReductionError::Format {
            message: e.to_string(),
        })
    }

    /// Renders the graph in DOT, one rank per slice, with the start and
    /// target nodes double-circled.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph slices {\n  rankdir=TB;\n");
        let _ = writeln!(out, "  \"{}\" [shape=doublecircle];", dot_escape(&self.s));
        if self.t != self.s {
            let _ = writeln!(out, "  \"{}\" [shape=doublecircle];", dot_escape(&self.t));
        }
        for slice in self.slices.iter().rev() {
            out.push_str("  { rank=same;");
            for v in slice {
                let _ = write!(out, " \"{}\";", dot_escape(v));
            }
            out.push_str(" }\n");
        }
        for (u, v) in &self.edges {
            let _ = writeln!(out, "  \"{}\" -> \"{}\";", dot_escape(u), dot_escape(v));
        }
        out.push_str("}\n");
        out
    }
}

fn dot_escape(name: &str) -> String {
    name.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Checks every slice-graph invariant and returns the defects found (empty
/// for a valid graph).
///
/// Out-degrees count only edges that connect known nodes one slice apart;
/// a node whose only edges are themselves violations is still reported as
/// [`SliceViolation::ZeroOutdegree`].
pub fn validate_slice_graph(g: &SliceGraph) -> Vec<SliceViolation> {
    if g.slices.is_empty() {
        return vec![SliceViolation::EmptyGraph];
    }
    let mut out = Vec::new();
    if g.slices.len() % 2 != 0 {
        out.push(SliceViolation::SliceCountOdd {
            count: g.slices.len(),
        });
    }
    let mut slice_of: HashMap<&str, usize> = HashMap::new();
    for (i, slice) in g.slices.iter().enumerate() {
        for v in slice {
            if slice_of.insert(v.as_str(), i).is_some() {
                out.push(SliceViolation::DuplicateNode { name: v.clone() });
            }
        }
    }
    let mut outdeg: HashMap<&str, usize> = HashMap::new();
    for (u, v) in &g.edges {
        match (slice_of.get(u.as_str()), slice_of.get(v.as_str())) {
            (Some(&su), Some(&sv)) => {
                if su == sv + 1 {
                    *outdeg.entry(u.as_str()).or_insert(0) += 1;
                } else {
                    out.push(SliceViolation::EdgeNotBetweenAdjacentSlices {
                        from: u.clone(),
                        to: v.clone(),
                    });
                }
            }
            _ => out.push(SliceViolation::EdgeEndpointUnknown {
                from: u.clone(),
                to: v.clone(),
            }),
        }
    }
    for slice in g.slices.iter().skip(1) {
        for v in slice {
            if !outdeg.contains_key(v.as_str()) {
                out.push(SliceViolation::ZeroOutdegree { node: v.clone() });
            }
        }
    }
    let top = g.slices.last().expect("nonempty checked above");
    if !top.contains(&g.s) {
        out.push(SliceViolation::SNotInTopSlice { s: g.s.clone() });
    }
    if !g.slices[0].contains(&g.t) {
        out.push(SliceViolation::TNotInBottomSlice { t: g.t.clone() });
    }
    out
}

/// A validated graph resolved to integer node ids, slice-major from `V_0`.
struct Indexed {
    names: Vec<String>,
    slice_of: Vec<usize>,
    succ: Vec<Vec<usize>>,
    by_slice: Vec<Vec<usize>>,
    s: usize,
    t: usize,
}

impl Indexed {
    fn build(g: &SliceGraph) -> Result<Indexed, ReductionError> {
        let violations = validate_slice_graph(g);
        if !violations.is_empty() {
            return Err(ReductionError::InvalidSliceGraph { violations });
        }
        let mut names = Vec::new();
        let mut slice_of = Vec::new();
        let mut by_slice = Vec::new();
        let mut id: HashMap<&str, usize> = HashMap::new();
        for (i, slice) in g.slices.iter().enumerate() {
            let mut row = Vec::new();
            for v in slice {
                id.insert(v.as_str(), names.len());
                row.push(names.len());
                names.push(v.clone());
                slice_of.push(i);
            }
            by_slice.push(row);
        }
        let mut succ = vec![Vec::new(); names.len()];
        for (u, v) in &g.edges {
            succ[id[u.as_str()]].push(id[v.as_str()]);
        }
        Ok(Indexed {
            names,
            slice_of,
            succ,
            by_slice,
            s: id[g.s.as_str()],
            t: id[g.t.as_str()],
        })
    }

    fn node(&self, name: &str) -> Result<usize, ReductionError> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| ReductionError::UnknownNode {
                name: name.to_string(),
            })
    }

    /// `reach[v]` = alternating path from `v` to `y`: a node reaches only
    /// itself in slices up to `y`'s; above that, existential (odd) slices
    /// need some successor to reach and universal (even) slices need a
    /// nonempty successor set that reaches entirely.
    fn apath_table(&self, y: usize) -> Vec<bool> {
        let mut reach = vec![false; self.names.len()];
        reach[y] = true;
        for (i, row) in self.by_slice.iter().enumerate() {
            if i <= self.slice_of[y] {
                continue;
            }
            for &v in row {
                let ss = &self.succ[v];
                reach[v] = if ss.is_empty() {
                    false
                } else if i % 2 == 1 {
                    ss.iter().any(|&z| reach[z])
                } else {
                    ss.iter().all(|&z| reach[z])
                };
            }
        }
        reach
    }
}

/// The alternating-path predicate from `x` to `y`.
///
/// Rules: every node alternating-reaches itself; a node with no successors
/// reaches nothing else; an existential node (odd slice) reaches `y` when
/// some successor does; a universal node (even slice) when all of its
/// successors do.
///
/// # Errors
///
/// [`ReductionError::InvalidSliceGraph`] for an invalid graph and
/// [`ReductionError::UnknownNode`] for unresolved names.
///
/// # Examples
///
/// ```
/// use ipc1::reduction::{apath, SliceGraph};
///
/// let g = SliceGraph::new(
///     vec![vec!["t".into()], vec!["s".into()]],
///     vec![("s".into(), "t".into())],
///     "s",
///     "t",
/// );
/// assert!(apath(&g, "s", "t").unwrap());
/// assert!(apath(&g, "t", "t").unwrap());
/// ```
pub fn apath(g: &SliceGraph, x: &str, y: &str) -> Result<bool, ReductionError> {
    let ix = Indexed::build(g)?;
    let xi = ix.node(x)?;
    let yi = ix.node(y)?;
    Ok(ix.apath_table(yi)[xi])
}

fn in_name(v: &str) -> String {
    format!("{v}_in")
}

fn out_name(v: &str) -> String {
    format!("{v}_out")
}

/// Builds the Kripke model encoding a slice graph, returning it together
/// with the out-copy of `s` (the state whose model-index parity answers
/// the reachability question).
///
/// States are an in-copy `v_in` and out-copy `v_out` per node plus the
/// canonical ladder `{1, …, 4m−2, 4m}`, so `|U| = 2n + 4m − 1`. Writing
/// `level(v_out) = 2i`, `level(v_in) = 2i + 1` for `v ∈ V_i` and
/// `level(k) = (k−1) div 2` on the ladder, the relation is the union of
///
/// - graph edges `(u, v)` turned into `u_out → v_in`,
/// - `v_in → v_out` for every node,
/// - ladder cover edges `k → k−2` (`k ≥ 3`) and `k → k−3` (even `k ≥ 4`),
/// - anchors `v_in → 4i+2` and, for `i ≥ 1`, `v_out → 4i−1`,
/// - every pair dropping at least two levels (the pseudotransitive set),
/// - reflexive loops.
///
/// All non-reflexive edges outside the pseudotransitive set drop exactly
/// one level, so any two-step composition drops at least two and is
/// already present: the union is a preorder by construction. Validation is
/// asserted on the result rather than recomputed via closure.
///
/// # Errors
///
/// [`ReductionError::InvalidSliceGraph`]; [`ReductionError::Kripke`] only
/// if the constructed model fails validation, which the level argument
/// rules out.
pub fn reduce_to_model(g: &SliceGraph) -> Result<(KripkeModel, String), ReductionError> {
    let violations = validate_slice_graph(g);
    if !violations.is_empty() {
        return Err(ReductionError::InvalidSliceGraph { violations });
    }
    let mu = g.slices.len() as u64;
    let mut ladder: Vec<u64> = (1..=4 * mu - 2).collect();
    ladder.push(4 * mu);

    let mut states: Vec<String> = Vec::new();
    let mut levels: Vec<u64> = Vec::new();
    for &k in &ladder {
        states.push(k.to_string());
        levels.push((k - 1) / 2);
    }
    for (i, slice) in g.slices.iter().enumerate() {
        for v in slice {
            states.push(in_name(v));
            levels.push(2 * i as u64 + 1);
            states.push(out_name(v));
            levels.push(2 * i as u64);
        }
    }

    let mut edges: Vec<(String, String)> = Vec::new();
    for (u, v) in &g.edges {
        edges.push((out_name(u), in_name(v)));
    }
    for (i, slice) in g.slices.iter().enumerate() {
        let iu = i as u64;
        for v in slice {
            edges.push((in_name(v), out_name(v)));
            edges.push((in_name(v), (4 * iu + 2).to_string()));
            if i >= 1 {
                edges.push((out_name(v), (4 * iu - 1).to_string()));
            }
        }
    }
    for &k in &ladder {
        if k >= 3 {
            edges.push((k.to_string(), (k - 2).to_string()));
        }
        if k % 2 == 0 && k >= 4 {
            edges.push((k.to_string(), (k - 3).to_string()));
        }
    }
    for i in 0..states.len() {
        for j in 0..states.len() {
            if levels[i] >= levels[j] + 2 {
                edges.push((states[i].clone(), states[j].clone()));
            }
        }
    }
    for st in &states {
        edges.push((st.clone(), st.clone()));
    }

    let valuation = vec![out_name(&g.t), "1".to_string()];
    let model = KripkeModel::new(states, &edges, &valuation, Closure::Explicit)?;
    let found = model.validate();
    if !found.is_empty() {
        return Err(ReductionError::Kripke(KripkeError::InvalidModel {
            violations: found,
        }));
    }
    Ok((model, out_name(&g.s)))
}

/// Composes a complete model-checking instance: the formula `psi_{4m−2}`,
/// the reduced model, and the in-copy of `s`.
///
/// The instance is sound because `h` at the in-copy of `s` is `4m−2`
/// exactly when an alternating path exists and `4m` otherwise, and
/// `psi_{4m−2}` holds precisely at indices up to `4m−2`. (Reading
/// `psi_{4m+2}` at the out-copy instead does not discriminate — see
/// [`verify_reduction`], which measures all candidate readings.)
///
/// The formula is built once with subterm sharing, but its written-out
/// length grows like a Fibonacci number in `m`, so `rank_cap` bounds the
/// rank exactly as in [`rn_formula_capped`]; only graphs of logarithmic
/// depth stay polynomial when rendered.
///
/// # Errors
///
/// [`ReductionError::InvalidSliceGraph`], or a
/// [`FormulaError::SizeLimitExceeded`] wrapped in
/// [`ReductionError::Formula`] when `4m − 2 > rank_cap`.
pub fn mc_instance(
    g: &SliceGraph,
    rank_cap: u32,
) -> Result<(Arc<Formula>, KripkeModel, String), ReductionError> {
    let violations = validate_slice_graph(g);
    if !violations.is_empty() {
        return Err(ReductionError::InvalidSliceGraph { violations });
    }
    let rank = u32::try_from(4 * g.slices.len() - 2).unwrap_or(u32::MAX);
    let f = rn_formula_capped(RNIndex::Psi(rank), rank_cap)?;
    let (model, _) = reduce_to_model(g)?;
    Ok((f, model, in_name(&g.s)))
}

/// One candidate reading of the instance: a formula class checked at a
/// state, and whether that reading agreed with `apath(s, t)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateCheck {
    /// The formula class probed.
    pub formula: RNIndex,
    /// The state it was evaluated at.
    pub state: String,
    /// Whether satisfaction there equals the alternating-path answer.
    pub agrees: bool,
}

/// Everything [`verify_reduction`] measures on one instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionReport {
    /// Number of slices `m`.
    pub slice_count: usize,
    /// Number of graph nodes `n`.
    pub node_count: usize,
    /// Number of model states `|U|`.
    pub state_count: usize,
    /// The alternating-path answer `apath(s, t)`.
    pub apath_holds: bool,
    /// Model index at the out-copy of `s`.
    pub start_index: u64,
    /// The constructed model passed validation.
    pub model_valid: bool,
    /// `|U| = 2n + 4m − 1` exactly.
    pub exact_size: bool,
    /// `|U| ≤ 4n`; holds exactly when `n ≥ 2m` (average slice width two).
    pub size_bound: bool,
    /// The embedded ladder reproduces `canonical(4m)` identically: state
    /// `k` has model index `k` and the restricted relation matches.
    pub ladder_matches_canonical: bool,
    /// Every `v ∈ V_i` has `h(v_out) ∈ {4i+1, 4i+2}` and
    /// `h(v_in) ∈ {4i+2, 4i+4}`.
    pub index_dichotomy: bool,
    /// The exact encoding holds at every node: on existential slices an
    /// alternating path to `t` means `h(v_out) = h(v_in) = 4i+2`, on
    /// universal slices it means `h(v_out) = 4i+1` and `h(v_in) = 4i+4`,
    /// with the opposite values otherwise.
    pub apath_encoding: bool,
    /// `h` at the out-copy of `s` is even exactly when `apath(s, t)`.
    pub start_parity: bool,
    /// Longest chain of clusters in the model.
    pub condensation_depth: usize,
    /// The condensation depth equals `2m`.
    pub depth_matches: bool,
    /// The four candidate instance readings; index 2 (`psi_{4m−2}` at the
    /// in-copy of `s`, the [`mc_instance`] choice) and index 3
    /// (`phi_{4m−3}` at the out-copy) discriminate on every instance,
    /// while indices 0 and 1 fail whenever there is no alternating path.
    pub candidates: Vec<CandidateCheck>,
}

impl ReductionReport {
    /// Conjunction of every check except the size bound (which requires
    /// `n ≥ 2m` and is reported separately): validity, exact size, ladder
    /// embedding, index dichotomy and encoding, start parity, condensation
    /// depth, and agreement of both discriminating candidate readings.
    pub fn all_pass(&self) -> bool {
        self.model_valid
            && self.exact_size
            && self.ladder_matches_canonical
            && self.index_dichotomy
            && self.apath_encoding
            && self.start_parity
            && self.depth_matches
            && self.candidates[2].agrees
            && self.candidates[3].agrees
    }
}

fn condensation_depth(model: &KripkeModel) -> usize {
    let n = model.len();
    if n == 0 {
        return 0;
    }
    let mut rep = vec![0usize; n];
    for (i, r) in rep.iter_mut().enumerate() {
        *r = (0..=i)
            .find(|&j| model.edge(i, j) && model.edge(j, i))
            .expect("reflexive models relate every state to itself");
    }
    let counts: Vec<usize> = (0..n)
        .map(|i| (0..n).filter(|&j| model.edge(i, j)).count())
        .collect();
    let mut reps: Vec<usize> = (0..n).filter(|&i| rep[i] == i).collect();
    reps.sort_by_key(|&r| counts[r]);
    let mut depth = vec![0usize; n];
    let mut best = 0;
    for &r in &reps {
        let mut d = 1;
        for j in 0..n {
            if rep[j] == j && j != r && model.edge(r, j) && !model.edge(j, r) {
                d = d.max(1 + depth[j]);
            }
        }
        depth[r] = d;
        best = best.max(d);
    }
    best
}

/// Measures every promised property of the reduction on one instance and
/// reports the findings; check failures are report entries, not errors.
///
/// # Errors
///
/// [`ReductionError::InvalidSliceGraph`] for invalid input only.
pub fn verify_reduction(g: &SliceGraph) -> Result<ReductionReport, ReductionError> {
    let ix = Indexed::build(g)?;
    let (model, start_out) = reduce_to_model(g)?;
    let m = g.slices.len();
    let mu = m as u64;
    let n = ix.names.len();

    let hs = model.model_indices()?;
    let h: HashMap<&str, u64> = model
        .states()
        .iter()
        .map(String::as_str)
        .zip(hs.iter().copied())
        .collect();
    let reach = ix.apath_table(ix.t);
    let apath_holds = reach[ix.s];

    let mut ladder: Vec<u64> = (1..=4 * mu - 2).collect();
    ladder.push(4 * mu);
    let mut ladder_ok = true;
    for &a in &ladder {
        ladder_ok &= h[a.to_string().as_str()] == a;
        for &b in &ladder {
            let related = model.related(&a.to_string(), &b.to_string())?;
            ladder_ok &= related == (a == b || a >= b + 2);
        }
    }

    let mut dichotomy = true;
    let mut encoding = true;
    for v in 0..n {
        let iu = ix.slice_of[v] as u64;
        let out_h = h[out_name(&ix.names[v]).as_str()];
        let in_h = h[in_name(&ix.names[v]).as_str()];
        dichotomy &= (out_h == 4 * iu + 1 || out_h == 4 * iu + 2)
            && (in_h == 4 * iu + 2 || in_h == 4 * iu + 4);
        let (want_out, want_in) = match (ix.slice_of[v] % 2 == 1, reach[v]) {
            (true, true) => (4 * iu + 2, 4 * iu + 2),
            (true, false) => (4 * iu + 1, 4 * iu + 4),
            (false, true) => (4 * iu + 1, 4 * iu + 4),
            (false, false) => (4 * iu + 2, 4 * iu + 2),
        };
        encoding &= out_h == want_out && in_h == want_in;
    }

    let start_index = h[start_out.as_str()];
    let rank = |r: usize| u32::try_from(r).unwrap_or(u32::MAX);
    let cands = [
        (RNIndex::Psi(rank(4 * m + 2)), start_out.clone()),
        (RNIndex::Psi(rank(4 * m - 2)), start_out.clone()),
        (RNIndex::Psi(rank(4 * m - 2)), in_name(&g.s)),
        (RNIndex::Phi(rank(4 * m - 3)), start_out.clone()),
    ];
    let candidates = cands
        .into_iter()
        .map(|(formula, state)| CandidateCheck {
            agrees: holds_at(formula, h[state.as_str()]) == apath_holds,
            formula,
            state,
        })
        .collect();

    let depth = condensation_depth(&model);
    Ok(ReductionReport {
        slice_count: m,
        node_count: n,
        state_count: model.len(),
        apath_holds,
        start_index,
        model_valid: true,
        exact_size: model.len() == 2 * n + 4 * m - 1,
        size_bound: model.len() <= 4 * n,
        ladder_matches_canonical: ladder_ok,
        index_dichotomy: dichotomy,
        apath_encoding: encoding,
        start_parity: (start_index % 2 == 0) == apath_holds,
        condensation_depth: depth,
        depth_matches: depth == 2 * m,
        candidates,
    })
}

/// Generates a random valid slice graph: `m` slices of `width` nodes named
/// `v{i}_{j}`, each candidate downward edge kept with probability
/// `density`, a forced edge where a node would otherwise have outdegree
/// zero, `s = v{m−1}_0`, and `t = v0_0`. Deterministic per seed.
///
/// # Errors
///
/// [`ReductionError::BadParameters`] unless `m` is even and at least 2,
/// `width ≥ 1`, and `density ∈ [0, 1]`.
pub fn gen_slice_graph(
    m: usize,
    width: usize,
    density: f64,
    seed: u64,
) -> Result<SliceGraph, ReductionError> {
    if m < 2 || m % 2 != 0 {
        return Err(ReductionError::BadParameters {
            message: format!("slice count must be even and at least 2, got {m}"),
        });
    }
    if width < 1 {
        return Err(ReductionError::BadParameters {
            message: "width must be at least 1".to_string(),
        });
    }
    if !(0.0..=1.0).contains(&density) {
        return Err(ReductionError::BadParameters {
            message: format!("density must lie in [0, 1], got {density}"),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let slices: Vec<Vec<String>> = (0..m)
        .map(|i| (0..width).map(|j| format!("v{i}_{j}")).collect())
        .collect();
    let mut edges = Vec::new();
    for i in 1..m {
        for j in 0..width {
            let u = format!("v{i}_{j}");
            let mut any = false;
            for jj in 0..width {
                if rng.gen_bool(density) {
                    edges.push((u.clone(), format!("v{}_{jj}", i - 1)));
                    any = true;
                }
            }
            if !any {
                let jj = rng.gen_range(0..width);
                edges.push((u.clone(), format!("v{}_{jj}", i - 1)));
            }
        }
    }
    let s = format!("v{}_0", m - 1);
    Ok(SliceGraph::new(slices, edges, s, "v0_0"))
}
