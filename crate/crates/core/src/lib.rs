//! Cellular chain complexes for one-point compactified unordered configuration
//! spaces of orientable surfaces with boundary, with mod-2 homology.
//!
//! The surface of genus `g` with `n` boundary curves is modelled as a square
//! with `r = 2g + n - 1` pairs of identified side intervals ("arcs"). A cell of
//! `C_m(Σ)^∞` is a [`CellTuple`]: points stacked on `l` vertical lines inside
//! the square, plus points resting on each arc. Its dimension is `m + l`.
//!
//! The crate builds the reduced cellular chain complex over GF(2), computes
//! Betti numbers on both sides of Poincaré–Lefschetz duality, and provides the
//! structural checks (symmetric-chain bases, the norm filtration and its
//! strata, the splitting pushforward, and the monomial dimension count).
//!
//! ```
//! use confspace::{betti, boundary_tuple, count_monomials, CellTuple, Surface};
//!
//! let torus = Surface::new(1, 1)?;
//! let table = betti(&torus, 2)?;
//! assert_eq!(table.betti_open, [1, 3, 3]);
//! assert_eq!(count_monomials(&torus, 1, 2), 3);
//!
//! let d = boundary_tuple(&torus, &CellTuple::new(vec![1, 2], vec![0, 0]));
//! assert_eq!(d.len(), 6);
//! # Ok::<(), confspace::Error>(())
//! ```

pub mod boundary;
pub mod cells;
pub mod combinat;
pub mod filtration;
pub mod gf2;
pub mod homology;
pub mod predict;
pub mod report;
pub mod surface;
pub mod symchains;

mod par;

pub use boundary::{binom_mod2, boundary_chain, boundary_tuple, Chain};
pub use cells::{cell_count, enumerate_cells, enumerate_cells_capped, CellIndex, CellTuple, DEFAULT_CELL_CAP};
pub use filtration::{
    mu_infinity_pushforward, stratum_complex, verify_e1_collapse, verify_pushforward, verify_stratum_isomorphism,
    StratumComplex, TensorChain,
};
pub use gf2::{rank_of_span_in_quotient, solve_membership, BitMatrix, BitVector};
pub use homology::{betti, betti_table_sweep, build_complex, BettiTable, ChainComplex};
pub use predict::{compare, count_monomials, enumerate_monomials, predicted_table, Monomial};
pub use report::{Check, Instance, Report};
pub use surface::Surface;
pub use symchains::{
    enumerate_basis_chains, enumerate_basis_strings, generalized_symmetric_chain, is_cycle, symmetric_chain,
    verify_basis, AlphaVector, BasisChain, BasisString,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("closed surfaces are not supported: boundary count must be at least 1")]
    NoBoundary,

    #[error("instance too large: g={genus} n={boundaries} m={points} has {cells} cells, cap is {cap}")]
    TooManyCells {
        genus: u32,
        boundaries: u32,
        points: u32,
        cells: u64,
        cap: u64,
    },

    #[error("binomial coefficient C({top}, {bottom}) requested with bottom > top")]
    BinomialRange { top: u64, bottom: u64 },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("arc occupancy has length {actual}, surface has {expected} arcs")]
    ArcCount { expected: usize, actual: usize },

    #[error("chain contains a cell of norm {norm}, above the split norm {split}")]
    NormAboveSplit { norm: u32, split: u32 },

    #[error("split norm {split} exceeds the weight {weight}")]
    SplitAboveWeight { split: u32, weight: u32 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
