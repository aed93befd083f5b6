//! Exact combinatorics on imsets over the subset lattice of a finite ground set.
//!
//! An imset is an integer-valued function on the power set of a finite set `N`.
//! The semi-elementary imset `u<A,B|C>` encodes the conditional-independence
//! statement "A independent of B given C"; elementary imsets are the special
//! case where `A` and `B` are singletons. Every semi-elementary imset can be
//! written as a sum of `|A|*|B|` elementary imsets, and the set of all such
//! sums (the fiber) carries a rich combinatorial structure:
//!
//! * every fiber member arranges uniquely into an `|A| x |B|` grid
//!   ([`RepGrid`]) with one cell per level pair,
//! * grids are connected by two-by-two basic relations ([`Move`]),
//! * each grid has a rift pattern ([`RiftPattern`]) recording where the
//!   conditioning sets break continuity, and rifts can be eliminated by
//!   explicit move sequences down to the nested standard representation,
//! * fibers can be enumerated exactly and counted through recurrences on
//!   rift patterns.
//!
//! The crate provides the exact arithmetic ([`Imset`]), the grid and move
//! system ([`representation`]), rift analysis and normalization ([`rift`]),
//! and ground-truth enumeration plus the counting pipeline ([`enumeration`]).

pub mod checks;
pub mod config;
pub mod enumeration;
pub mod family;
pub mod imset;
pub mod representation;
pub mod rift;
pub mod serial;
pub mod triplet;
pub mod varset;

pub use config::ConfigMatrix;
pub use enumeration::{
    brute_force_fiber, count_representations, count_sigma_indecomposable, count_two_row,
    degree_of_freedom, enumerate_rift_patterns, fiber_graph, fiber_of, pattern_sigma_decomposable,
    table_report, CountReport, CountRow, FiberGraph, Limits,
};
pub use family::{ElementaryFamily, ElementaryImset};
pub use imset::{elementary, semi_elementary, split_identity_check, Imset};
pub use representation::{
    grid_from_vector, CoeffVector, Move, MoveKind, RepGrid,
};
pub use rift::{
    boundary_maps, classify_points, detect_rifts, eliminate_rift, is_separable,
    is_sigma_decomposable, normalize_to_standard, select_eliminable_rift, sigma_decompose, Axis,
    BoundaryMaps, DecompTree, PointClass, PointKind, Rift, RiftPattern, Split, Trit,
};
pub use triplet::Triplet;
pub use varset::VarSet;

/// Errors reported by fallible operations in this crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// The three sets of a triplet overlap.
    #[error("invalid triplet: sets are not pairwise disjoint")]
    InvalidTriplet,
    /// An elementary imset with `a = b` or an endpoint inside its conditioning set.
    #[error("invalid elementary imset: endpoints must be distinct and outside gamma")]
    InvalidElementary,
    /// Binary imset operation over different ground sets.
    #[error("ground-set mismatch: {0} vs {1}")]
    GroundMismatch(usize, usize),
    /// A permutation argument is not a permutation of the expected index range.
    #[error("invalid permutation of {0} elements")]
    InvalidPermutation(usize),
    /// A fiber operation received a triplet with an empty side.
    #[error("fiber operations require non-empty A and B")]
    EmptySide,
    /// A coefficient vector is not a member of the fiber.
    #[error("not in fiber: {0}")]
    NotInFiber(String),
    /// A grid failed validation.
    #[error("invalid representation grid: {0}")]
    InvalidGrid(String),
    /// A move does not apply to the grid at its anchor.
    #[error("move not applicable at anchor ({0}, {1})")]
    InapplicableMove(usize, usize),
    /// A rift passed to `eliminate_rift` is not eliminable on this grid.
    #[error("rift is not eliminable here: {0}")]
    IneligibleRift(String),
    /// An enumeration exceeded its configured work limit.
    #[error("work limit exceeded: {0}")]
    WorkLimitExceeded(String),
    /// Malformed input file or serialized value.
    #[error("parse error: {0}")]
    Parse(String),
    /// An index argument is out of its documented range.
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
