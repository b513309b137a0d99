//! The mod-2 cellular boundary operator.
//!
//! For a cell with lines `x_1, …, x_l` and arc occupancies `s`, the boundary
//! is the GF(2) sum of
//!
//! * inner faces: adjacent lines `i, i+1` merge into one line of
//!   `x_i + x_{i+1}` points, with coefficient `C(x_i + x_{i+1}, x_i)`;
//! * the left outer face: the first line is discharged onto the arcs along a
//!   splitting `x_1 = Σ t_k`, giving `s'_k = s_k + t_k` with coefficient
//!   `Π C(s_k + t_k, s_k)`;
//! * the right outer face: the same for the last line `x_l`.
//!
//! Terms are accumulated by symmetric difference, so coinciding left and right
//! outer faces cancel without special handling.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::cells::CellTuple;
use crate::combinat::WeakCompositions;
use crate::surface::Surface;
use crate::{Error, Result};

/// Parity of `C(a, b)`.
pub fn binom_mod2(a: u64, b: u64) -> Result<bool> {
    if b > a {
        return Err(Error::BinomialRange { top: a, bottom: b });
    }
    Ok(binom_odd(a, b))
}

// Lucas: C(a, b) is odd iff the binary digits of b and a - b never overlap.
#[inline]
fn binom_odd(a: u64, b: u64) -> bool {
    (a - b) & b == 0
}

/// Which faces to emit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Faces {
    All,
    /// Only the norm-preserving merges of adjacent lines.
    Inner,
}

/// Calls `emit` once per face with odd coefficient. The same cell may be
/// emitted more than once; callers accumulate by XOR.
pub fn for_each_face(cell: &CellTuple, faces: Faces, mut emit: impl FnMut(CellTuple)) {
    let x = &cell.x;
    let l = x.len();
    for i in 0..l.saturating_sub(1) {
        if x[i] & x[i + 1] == 0 {
            let mut merged = Vec::with_capacity(l - 1);
            merged.extend_from_slice(&x[..i]);
            merged.push(x[i] + x[i + 1]);
            merged.extend_from_slice(&x[i + 2..]);
            emit(CellTuple::new(merged, cell.s.clone()));
        }
    }
    if faces == Faces::Inner || l == 0 {
        return;
    }
    let mut discharge = |points: u32, rest: &[u32]| {
        for split in WeakCompositions::new(points, cell.s.len()) {
            if split.iter().zip(&cell.s).any(|(t, s)| t & s != 0) {
                continue;
            }
            let s = cell.s.iter().zip(&split).map(|(s, t)| s + t).collect();
            emit(CellTuple::new(rest.to_vec(), s));
        }
    };
    discharge(x[0], &x[1..]);
    discharge(x[l - 1], &x[..l - 1]);
}

/// A GF(2) chain: a set of cells of one weight and dimension.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Chain {
    surface: Surface,
    weight: u32,
    dimension: u32,
    support: BTreeSet<CellTuple>,
}

impl Chain {
    pub fn zero(surface: Surface, weight: u32, dimension: u32) -> Self {
        Self {
            surface,
            weight,
            dimension,
            support: BTreeSet::new(),
        }
    }

    pub fn from_cell(surface: Surface, cell: CellTuple) -> Self {
        let mut c = Self::zero(surface, cell.weight(), cell.dimension());
        c.support.insert(cell);
        c
    }

    pub fn surface(&self) -> &Surface {
        &self.surface
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn dimension(&self) -> u32 {
        self.dimension
    }

    pub fn support(&self) -> &BTreeSet<CellTuple> {
        &self.support
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    pub fn contains(&self, cell: &CellTuple) -> bool {
        self.support.contains(cell)
    }

    /// Adds one cell with coefficient 1.
    pub fn toggle(&mut self, cell: CellTuple) {
        debug_assert_eq!(cell.weight(), self.weight);
        debug_assert_eq!(cell.dimension(), self.dimension);
        if !self.support.remove(&cell) {
            self.support.insert(cell);
        }
    }

    /// Largest norm in the support, if any.
    pub fn max_norm(&self) -> Option<u32> {
        self.support.iter().map(CellTuple::norm).max()
    }
}

impl std::ops::AddAssign<&Chain> for Chain {
    fn add_assign(&mut self, rhs: &Chain) {
        for c in &rhs.support {
            self.toggle(c.clone());
        }
    }
}

impl std::ops::Add for &Chain {
    type Output = Chain;

    fn add(self, rhs: &Chain) -> Chain {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

/// Boundary of a single cell.
pub fn boundary_tuple(surface: &Surface, cell: &CellTuple) -> Chain {
    debug_assert!(cell.is_valid_for(surface));
    let mut out = Chain::zero(*surface, cell.weight(), cell.dimension().saturating_sub(1));
    for_each_face(cell, Faces::All, |face| out.toggle(face));
    out
}

/// Linear extension of [`boundary_tuple`].
pub fn boundary_chain(chain: &Chain) -> Chain {
    let mut out = Chain::zero(chain.surface, chain.weight, chain.dimension.saturating_sub(1));
    for cell in &chain.support {
        for_each_face(cell, Faces::All, |face| out.toggle(face));
    }
    out
}
