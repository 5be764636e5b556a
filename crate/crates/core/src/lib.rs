//! Permutation ensembles, matching ensembles and 33-cyclic patterns.
//!
//! An `S_n`-ensemble is an `n × n` table of marked permutations. Cell
//! `(i, j)` holds a word with value `i` at the marked position `j`; every
//! cell has a linked partner (one transposition away) in its row and in its
//! column; and across the table any position set and value set carry at most
//! one induced submatching.

#![no_std]

extern crate alloc;

pub mod boundary;
pub mod cyclic;
pub mod ensemble;
pub mod enumerate;
pub mod error;
pub mod matching;
pub mod perm;
pub mod verify;

pub use boundary::{
    candidate_table, complete_boundary, cyclic_witnesses, derive_orientations, system_acyclic, AcyclicityMethod,
    CandidateTable, Completion, CompletionResult, CompletionStatus, CyclicWitness, OrientationRegistry,
    PermutationSystem, RejectedSelection,
};
pub use cyclic::{detect_33, generate_33, pattern_members, CyclicPatternCatalog, CyclicPatternIndex, PatternTriple};
pub use ensemble::{
    canonicalize, detect_structures, repeated_full, validate_table, Axis, Cell, CompatibilityConflict, EnsembleTable,
    HalfSquare, LinkageFailure, PartialTable, Quad, StructureFindings, ValidationReport,
};
pub use enumerate::{enumerate_ensembles, Delivery, EnumerationStats, Enumerator};
pub use error::{Error, Result};
pub use matching::{
    compatible, compatible_at_size, induced_submatching, marked_to_matching, matching_to_marked, matchings_from_trees,
    validate_matching_collection, Matching, MatchingCollection, MeReport, MeViolation, SpanningTree,
};
pub use perm::{format_marked, linked, parse_marked, IndexSet, MarkedPermutation, Permutation, RowColAction, MAX_N};
pub use verify::{
    verify_main_theorem, verify_structure_lemmas, LemmaAccumulator, LemmaClass, LemmaReport, TheoremAccumulator,
    TheoremReport,
};
