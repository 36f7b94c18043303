//! One-variable intuitionistic propositional logic: parsing and printing,
//! normalization to Rieger-Nishimura normal form, Kripke-model checking, and
//! a reduction from alternating slice-graph reachability that doubles as a
//! hard-instance generator.
//!
//! The crate is organized around one mathematical fact: every formula over the
//! single variable `a` is intuitionistically equivalent to exactly one member
//! of the Rieger-Nishimura family (`bot`, `top`, `phi_k`, `psi_k`), and every
//! state of every finite Kripke model behaves like the base state of exactly
//! one canonical ladder model `H_n`. Once a formula is reduced to its class
//! index and a state to its model index `h`, satisfaction is a two-integer
//! comparison.
//!
//! Module map:
//!
//! * [`formula`] — formula trees and shared-subterm DAGs: parse, render,
//!   length, canonical-family builders, seeded random generation.
//! * [`lattice`] — the Rieger-Nishimura lattice over class indices: meet,
//!   join, relative pseudo-complement, the normalizing fold `rn_index`, and
//!   validity.
//! * [`kripke`] — Kripke models: validation, canonical models, the model
//!   index `h`, a brute-force checker (the oracle), and the fast index-based
//!   checker.
//! * [`superint`] — superintuitionistic extensions picked by an axiom:
//!   admissible models, validity, and equivalence-class enumeration.
//! * [`reduction`] — alternating slice graphs, the `apath` predicate, and the
//!   graph-to-model construction with its verification report.
//!
//! # Example
//!
//! ```
//! use ipc1::formula::parse;
//! use ipc1::lattice::{rn_index, RNIndex};
//! use ipc1::kripke::{canonical, check_brute, check_fast};
//!
//! let f = parse("~a | ~~a").unwrap();
//! assert_eq!(rn_index(&f), RNIndex::Psi(3));
//!
//! // The weak excluded middle first fails at the base of the fourth ladder.
//! let m = canonical(4);
//! assert!(!check_fast(&m, "4", &f).unwrap());
//! assert_eq!(check_brute(&m, "4", &f).unwrap(), false);
//! ```

#![deny(missing_docs)]
#![forbid(unsafe_code)]

pub mod formula;
pub mod kripke;
pub mod lattice;
pub mod reduction;
pub mod superint;

pub use formula::{parse, render, Formula, FormulaDag, FormulaError};
pub use kripke::{canonical, check_brute, check_fast, KripkeError, KripkeModel};
pub use lattice::{is_valid, rn_index, RNIndex};
pub use reduction::SliceGraph;
pub use superint::Logic;
