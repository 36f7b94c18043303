//! Shared-subterm (DAG) representation of formulas.
//!
//! A [`FormulaDag`] is a table of nodes in topological order — every child
//! reference points at an earlier entry — plus a designated root. The table
//! form makes sharing explicit, so a formula whose tree unfolding is
//! exponentially long can be stored, exchanged, and evaluated in linear
//! space.
//!
//! Text format, one node per line, identifiers defined before use:
//!
//! ```text
//! <id> := a
//! <id> := bot
//! <id> := and <id> <id>
//! <id> := or <id> <id>
//! <id> := impl <id> <id>
//! root <id>
//! ```
//!
//! Identifiers match `[A-Za-z0-9_]+` and must not be one of the keywords
//! `a`, `bot`, `and`, `or`, `impl`, `root`. The `root` line is last.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use super::Formula;
use crate::lattice::RNIndex;

/// One entry in a [`FormulaDag`] table; children are indices of earlier
/// entries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DagNode {
    /// The variable `a`.
    Var,
    /// The constant `bot`.
    Bot,
    /// Conjunction of two earlier nodes.
    And(usize, usize),
    /// Disjunction of two earlier nodes.
    Or(usize, usize),
    /// Implication between two earlier nodes.
    Impl(usize, usize),
}

impl DagNode {
    /// The children of this node, if any.
    pub fn children(self) -> Option<(usize, usize)> {
        match self {
            DagNode::Var | DagNode::Bot => None,
            DagNode::And(l, r) | DagNode::Or(l, r) | DagNode::Impl(l, r) => Some((l, r)),
        }
    }
}

/// A formula as a table of shared nodes with a designated root.
///
/// The constructor enforces that children precede their parents, which makes
/// cycles unrepresentable and lets evaluators run in one forward pass.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormulaDag {
    nodes: Vec<DagNode>,
    root: usize,
}

/// Errors from DAG construction and the DAG text format.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DagError {
    /// A malformed line; `line` counts from one.
    #[error("line {line}: {message}")]
    Syntax {
        /// One-based line number.
        line: usize,
        /// What was wrong.
        message: String,
    },
    /// A reference to an identifier that has not been defined yet.
    #[error("line {line}: unknown id `{id}` (ids must be defined before use)")]
    UnknownId {
        /// One-based line number.
        line: usize,
        /// The unresolved identifier.
        id: String,
    },
    /// The same identifier defined twice.
    #[error("line {line}: duplicate id `{id}`")]
    DuplicateId {
        /// One-based line number.
        line: usize,
        /// The repeated identifier.
        id: String,
    },
    /// Input ended without a `root <id>` line.
    #[error("missing final `root <id>` line")]
    MissingRoot,
    /// A node refers to an entry at or after its own position.
    #[error("node {node} refers to child {child}, which does not precede it")]
    BadReference {
        /// Index of the offending node.
        node: usize,
        /// The out-of-order child index.
        child: usize,
    },
    /// The root index is outside the node table.
    #[error("root {root} out of range for {len} nodes")]
    BadRoot {
        /// The offending root index.
        root: usize,
        /// Number of nodes in the table.
        len: usize,
    },
}

impl FormulaDag {
    /// Builds a DAG from a node table and root index, checking that every
    /// child reference points at an earlier entry and the root is in range.
    ///
    /// # Errors
    ///
    /// [`DagError::BadReference`] or [`DagError::BadRoot`] when the table
    /// violates those conditions.
    pub fn new(nodes: Vec<DagNode>, root: usize) -> Result<FormulaDag, DagError> {
        for (i, node) in nodes.iter().enumerate() {
            if let Some((l, r)) = node.children() {
                for child in [l, r] {
                    if child >= i {
                        return Err(DagError::BadReference { node: i, child });
                    }
                }
            }
        }
        if root >= nodes.len() {
            return Err(DagError::BadRoot {
                root,
                len: nodes.len(),
            });
        }
        Ok(FormulaDag { nodes, root })
    }

    /// Converts a tree into its minimal shared form: structurally equal
    /// subterms (and already-shared handles) become a single node.
    pub fn from_tree(f: &Formula) -> FormulaDag {
        #[derive(PartialEq, Eq, Hash)]
        struct Key(u8, usize, usize);

        fn key_of(node: &Formula, id: impl Fn(&Formula) -> usize) -> Key {
            match node {
                Formula::Var => Key(0, 0, 0),
                Formula::Bot => Key(1, 0, 0),
                Formula::And(l, r) => Key(2, id(l), id(r)),
                Formula::Or(l, r) => Key(3, id(l), id(r)),
                Formula::Impl(l, r) => Key(4, id(l), id(r)),
            }
        }

        let mut nodes: Vec<DagNode> = Vec::new();
        let mut interned: HashMap<Key, usize> = HashMap::new();
        let mut by_ptr: HashMap<*const Formula, usize> = HashMap::new();

        enum Phase<'a> {
            Enter(&'a Formula),
            Exit(&'a Formula),
        }
        let mut stack = vec![Phase::Enter(f)];
        while let Some(phase) = stack.pop() {
            match phase {
                Phase::Enter(n) => {
                    if by_ptr.contains_key(&(n as *const Formula)) {
                        continue;
                    }
                    match n {
                        Formula::Var | Formula::Bot => {
                            let key = key_of(n, |_| 0);
                            let id = *interned.entry(key).or_insert_with(|| {
                                nodes.push(match n {
                                    Formula::Var => DagNode::Var,
                                    _ => DagNode::Bot,
                                });
                                nodes.len() - 1
                            });
                            by_ptr.insert(n, id);
                        }
                        Formula::And(l, r) | Formula::Or(l, r) | Formula::Impl(l, r) => {
                            stack.push(Phase::Exit(n));
                            stack.push(Phase::Enter(l));
                            stack.push(Phase::Enter(r));
                        }
                    }
                }
                Phase::Exit(n) => {
                    let key = key_of(n, |child| by_ptr[&(child as *const Formula)]);
                    let id = *interned.entry(key).or_insert_with(|| {
                        let node = match n {
                            Formula::And(l, r) => DagNode::And(
                                by_ptr[&(l.as_ref() as *const Formula)],
                                by_ptr[&(r.as_ref() as *const Formula)],
                            ),
                            Formula::Or(l, r) => DagNode::Or(
                                by_ptr[&(l.as_ref() as *const Formula)],
                                by_ptr[&(r.as_ref() as *const Formula)],
                            ),
                            Formula::Impl(l, r) => DagNode::Impl(
                                by_ptr[&(l.as_ref() as *const Formula)],
                                by_ptr[&(r.as_ref() as *const Formula)],
                            ),
                            _ => unreachable!("leaves are handled on entry"),
                        };
                        nodes.push(node);
                        nodes.len() - 1
                    });
                    by_ptr.insert(n, id);
                }
            }
        }

        let root = by_ptr[&(f as *const Formula)];
        FormulaDag { nodes, root }
    }

    /// The node table, in topological order.
    pub fn nodes(&self) -> &[DagNode] {
        &self.nodes
    }

    /// The root node's index.
    pub fn root(&self) -> usize {
        self.root
    }

    /// Number of nodes in the table.
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    /// Whether the table is empty (never true for a constructed value, since
    /// the root must be in range).
    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Expands the DAG to a tree, sharing subtrees by handle: the result
    /// occupies memory linear in the table even when its unfolded length is
    /// exponential.
    pub fn unfold(&self) -> Arc<Formula> {
        let mut built: Vec<Arc<Formula>> = Vec::with_capacity(self.nodes.len());
        for node in &self.nodes {
            let f = match *node {
                DagNode::Var => Formula::var(),
                DagNode::Bot => Formula::bot(),
                DagNode::And(l, r) => Formula::and(built[l].clone(), built[r].clone()),
                DagNode::Or(l, r) => Formula::or(built[l].clone(), built[r].clone()),
                DagNode::Impl(l, r) => Formula::implies(built[l].clone(), built[r].clone()),
            };
            built.push(f);
        }
        built[self.root].clone()
    }
}

impl fmt::Display for FormulaDag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_dag(self))
    }
}

const KEYWORDS: [&str; 6] = ["a", "bot", "and", "or", "impl", "root"];

fn valid_id(id: &str) -> bool {
    !id.is_empty()
        && id.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_')
        && !KEYWORDS.contains(&id)
}

/// Parses the DAG text format described in the module docs.
///
/// # Errors
///
/// [`DagError::Syntax`], [`DagError::UnknownId`], [`DagError::DuplicateId`],
/// or [`DagError::MissingRoot`], each carrying a one-based line number where
/// applicable.
pub fn parse_dag(text: &str) -> Result<FormulaDag, DagError> {
    fn syntax(line: usize, message: &str) -> DagError {
        DagError::Syntax {
            line,
            message: message.to_string(),
        }
    }
    fn resolve(ids: &HashMap<String, usize>, tok: &str, line: usize) -> Result<usize, DagError> {
        ids.get(tok).copied().ok_or_else(|| DagError::UnknownId {
            line,
            id: tok.to_string(),
        })
    }

    let mut ids: HashMap<String, usize> = HashMap::new();
    let mut nodes: Vec<DagNode> = Vec::new();
    let mut root: Option<usize> = None;

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        // Allow `x:=a` as well as `x := a`; ids never contain `:`.
        let spaced = raw.replace(":=", " := ");
        let toks: Vec<&str> = spaced.split_whitespace().collect();
        if toks.is_empty() {
            continue;
        }
        if root.is_some() {
            return Err(syntax(line, "content after the `root` line"));
        }
        match toks.as_slice() {
            ["root", id] => {
                root = Some(resolve(&ids, id, line)?);
            }
            [id, ":=", rest @ ..] => {
                if !valid_id(id) {
                    return Err(syntax(
                        line,
                        "ids match [A-Za-z0-9_]+ and must not be a keyword",
                    ));
                }
                let node = match *rest {
                    ["a"] => DagNode::Var,
                    ["bot"] => DagNode::Bot,
                    [op @ ("and" | "or" | "impl"), l, r] => {
                        let l = resolve(&ids, l, line)?;
                        let r = resolve(&ids, r, line)?;
                        match op {
                            "and" => DagNode::And(l, r),
                            "or" => DagNode::Or(l, r),
                            _ => DagNode::Impl(l, r),
                        }
                    }
                    _ => {
                        return Err(syntax(
                            line,
                            "expected `a`, `bot`, `and <id> <id>`, `or <id> <id>`, \
                             or `impl <id> <id>`",
                        ))
                    }
                };
                if ids.insert(id.to_string(), nodes.len()).is_some() {
                    return Err(DagError::DuplicateId {
                        line,
                        id: id.to_string(),
                    });
                }
                nodes.push(node);
            }
            _ => return Err(syntax(line, "expected `<id> := <node>` or `root <id>`")),
        }
    }

    match root {
        Some(root) => FormulaDag::new(nodes, root),
        None => Err(DagError::MissingRoot),
    }
}

/// Renders a DAG in the text format, naming node `i` as `n{i}`.
///
/// `parse_dag(render_dag(g))` reproduces `g` exactly.
pub fn render_dag(g: &FormulaDag) -> String {
    let mut out = String::new();
    for (i, node) in g.nodes().iter().enumerate() {
        match *node {
            DagNode::Var => out.push_str(&format!("n{i} := a\n")),
            DagNode::Bot => out.push_str(&format!("n{i} := bot\n")),
            DagNode::And(l, r) => out.push_str(&format!("n{i} := and n{l} n{r}\n")),
            DagNode::Or(l, r) => out.push_str(&format!("n{i} := or n{l} n{r}\n")),
            DagNode::Impl(l, r) => out.push_str(&format!("n{i} := impl n{l} n{r}\n")),
        }
    }
    out.push_str(&format!("root n{}\n", g.root()));
    out
}

/// Builds the canonical family member named by `idx` in shared form, where
/// each intermediate family formula appears as one node.
///
/// The table has at most `2·rank + 2` entries, so every index is cheap here,
/// in contrast to the exponential tree unfolding.
pub fn rn_formula_dag(idx: RNIndex) -> FormulaDag {
    let mut nodes = Vec::new();
    let root = match idx {
        RNIndex::Bot => {
            nodes.push(DagNode::Bot);
            0
        }
        RNIndex::Top => {
            nodes.push(DagNode::Bot);
            nodes.push(DagNode::Impl(0, 0));
            1
        }
        RNIndex::Psi(1) => {
            nodes.push(DagNode::Var);
            0
        }
        RNIndex::Phi(n) | RNIndex::Psi(n) => {
            nodes.push(DagNode::Var);
            nodes.push(DagNode::Bot);
            nodes.push(DagNode::Impl(0, 1));
            let mut psi = 0;
            let mut phi = 2;
            for level in 2..=n {
                if level == n {
                    // Only the requested member of the final level is kept.
                    nodes.push(match idx {
                        RNIndex::Phi(_) => DagNode::Impl(phi, psi),
                        _ => DagNode::Or(phi, psi),
                    });
                    phi = nodes.len() - 1;
                    psi = phi;
                } else {
                    nodes.push(DagNode::Impl(phi, psi));
                    nodes.push(DagNode::Or(phi, psi));
                    phi = nodes.len() - 2;
                    psi = nodes.len() - 1;
                }
            }
            match idx {
                RNIndex::Phi(_) => phi,
                _ => psi,
            }
        }
    };
    FormulaDag { nodes, root }
}
