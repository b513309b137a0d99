//! Cells of `C_m(Σ)^∞` and their deterministic indexing.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::combinat::{composition_count, weak_composition_count, Compositions, WeakCompositions};
use crate::surface::Surface;
use crate::{Error, Result};

/// Default resource cap on the number of cells of one instance.
pub const DEFAULT_CELL_CAP: u64 = 1 << 24;

/// A cell descriptor: `x[i]` points on the `i`-th occupied vertical line (left
/// to right, each `≥ 1`) and `s[k]` points on the `k`-th arc.
///
/// The number of lines `l` is `x.len()`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CellTuple {
    pub x: Vec<u32>,
    pub s: Vec<u32>,
}

impl CellTuple {
    pub fn new(x: Vec<u32>, s: Vec<u32>) -> Self {
        debug_assert!(x.iter().all(|&v| v >= 1), "vertical lines must be occupied");
        Self { x, s }
    }

    /// A cell with no vertical lines: every point sits on an arc.
    pub fn arcs_only(s: Vec<u32>) -> Self {
        Self { x: Vec::new(), s }
    }

    pub fn lines(&self) -> usize {
        self.x.len()
    }

    /// Number of configuration points `m`.
    pub fn weight(&self) -> u32 {
        self.norm() + self.s.iter().sum::<u32>()
    }

    pub fn dimension(&self) -> u32 {
        self.weight() + self.x.len() as u32
    }

    /// Points on vertical lines; the filtration degree.
    pub fn norm(&self) -> u32 {
        self.x.iter().sum()
    }

    pub fn is_valid_for(&self, surface: &Surface) -> bool {
        self.s.len() == surface.arc_count() && self.x.iter().all(|&v| v >= 1)
    }
}

impl Ord for CellTuple {
    fn cmp(&self, other: &Self) -> Ordering {
        self.x
            .len()
            .cmp(&other.x.len())
            .then_with(|| self.x.cmp(&other.x))
            .then_with(|| self.s.cmp(&other.s))
    }
}

impl PartialOrd for CellTuple {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn write_list(f: &mut fmt::Formatter<'_>, v: &[u32]) -> fmt::Result {
    f.write_str("[")?;
    for (i, a) in v.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{a}")?;
    }
    f.write_str("]")
}

impl fmt::Display for CellTuple {
    /// `l=2 x=[1,2] s=[0,3,2,0]`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "l={} x=", self.lines())?;
        write_list(f, &self.x)?;
        f.write_str(" s=")?;
        write_list(f, &self.s)
    }
}

/// Number of cells of weight `m` and dimension `d`.
pub fn cell_count(surface: &Surface, m: u32, d: u32) -> u64 {
    if d < m || d - m > m {
        return 0;
    }
    let l = d - m;
    let r = surface.arc_count() as u32;
    (l..=m)
        .map(|p| composition_count(p, l) * weak_composition_count(m - p, r))
        .sum()
}

/// Total number of cells of weight `m`, basepoint excluded.
pub fn total_cell_count(surface: &Surface, m: u32) -> u64 {
    (m..=2 * m).map(|d| cell_count(surface, m, d)).sum()
}

/// All cells of one weight, grouped by dimension, with a tuple ↔ position
/// lookup. Within a dimension cells are ordered by `(x, s)` lexicographically.
#[derive(Debug, Clone)]
pub struct CellIndex {
    surface: Surface,
    weight: u32,
    // by_lines[l] holds the cells of dimension weight + l.
    by_lines: Vec<Vec<CellTuple>>,
    lookup: Vec<HashMap<CellTuple, usize>>,
}

impl CellIndex {
    pub fn surface(&self) -> &Surface {
        &self.surface
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn min_dim(&self) -> u32 {
        self.weight
    }

    pub fn max_dim(&self) -> u32 {
        2 * self.weight
    }

    /// Cells of dimension `d`; empty outside `[m, 2m]`.
    pub fn cells(&self, d: u32) -> &[CellTuple] {
        d.checked_sub(self.weight)
            .and_then(|l| self.by_lines.get(l as usize))
            .map_or(&[], Vec::as_slice)
    }

    pub fn count(&self, d: u32) -> usize {
        self.cells(d).len()
    }

    pub fn total(&self) -> usize {
        self.by_lines.iter().map(Vec::len).sum()
    }

    /// Position of `cell` within its dimension.
    pub fn index_of(&self, cell: &CellTuple) -> Option<usize> {
        if cell.weight() != self.weight || cell.s.len() != self.surface.arc_count() {
            return None;
        }
        self.lookup.get(cell.lines())?.get(cell).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = &CellTuple> {
        self.by_lines.iter().flatten()
    }

    /// Indexes an arbitrary set of cells of one weight, e.g. a filtration
    /// stratum.
    pub(crate) fn from_cells(surface: Surface, weight: u32, cells: impl IntoIterator<Item = CellTuple>) -> Self {
        let mut by_lines: Vec<Vec<CellTuple>> = vec![Vec::new(); weight as usize + 1];
        for c in cells {
            debug_assert_eq!(c.weight(), weight);
            by_lines[c.lines()].push(c);
        }
        for cells in &mut by_lines {
            cells.sort_unstable();
            cells.dedup();
        }
        Self::with_lookup(surface, weight, by_lines)
    }

    fn with_lookup(surface: Surface, weight: u32, by_lines: Vec<Vec<CellTuple>>) -> Self {
        let lookup = by_lines
            .iter()
            .map(|cells| cells.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect())
            .collect();
        Self {
            surface,
            weight,
            by_lines,
            lookup,
        }
    }
}

/// Enumerates the cells of `C_m(Σ)^∞` under the default cap.
pub fn enumerate_cells(surface: &Surface, m: u32) -> Result<CellIndex> {
    enumerate_cells_capped(surface, m, DEFAULT_CELL_CAP)
}

pub fn enumerate_cells_capped(surface: &Surface, m: u32, cap: u64) -> Result<CellIndex> {
    let total = total_cell_count(surface, m);
    if total > cap {
        return Err(Error::TooManyCells {
            genus: surface.genus(),
            boundaries: surface.boundaries(),
            points: m,
            cells: total,
            cap,
        });
    }

    let r = surface.arc_count();
    let mut by_lines = Vec::with_capacity(m as usize + 1);
    for l in 0..=m as usize {
        let mut cells = Vec::with_capacity(cell_count(surface, m, m + l as u32) as usize);
        for p in l as u32..=m {
            let arc_fills: Vec<Vec<u32>> = WeakCompositions::new(m - p, r).collect();
            if arc_fills.is_empty() {
                continue;
            }
            for x in Compositions::new(p, l) {
                for s in &arc_fills {
                    cells.push(CellTuple::new(x.clone(), s.clone()));
                }
            }
        }
        cells.sort_unstable();
        by_lines.push(cells);
    }
    Ok(CellIndex::with_lookup(*surface, m, by_lines))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn surf(g: u32, n: u32) -> Surface {
        Surface::new(g, n).unwrap()
    }

    #[test]
    fn torus_two_points() {
        let idx = enumerate_cells(&surf(1, 1), 2).unwrap();
        assert_eq!(idx.total(), 7);
        assert_eq!((idx.count(2), idx.count(3), idx.count(4)), (3, 3, 1));
        let d3: Vec<String> = idx.cells(3).iter().map(ToString::to_string).collect();
        assert_eq!(d3, ["l=1 x=[1] s=[0,1]", "l=1 x=[1] s=[1,0]", "l=1 x=[2] s=[0,0]"]);
        assert_eq!(idx.cells(4)[0], CellTuple::new(vec![1, 1], vec![0, 0]));
    }

    #[test]
    fn disc_three_points() {
        let idx = enumerate_cells(&Surface::disc(), 3).unwrap();
        assert_eq!(idx.total(), 4);
        assert_eq!(idx.cells(4), &[CellTuple::new(vec![3], vec![])]);
        assert_eq!(
            idx.cells(5),
            &[CellTuple::new(vec![1, 2], vec![]), CellTuple::new(vec![2, 1], vec![])]
        );
        assert_eq!(idx.cells(6), &[CellTuple::new(vec![1, 1, 1], vec![])]);
        assert_eq!(idx.count(3), 0);
    }

    #[test]
    fn empty_configuration() {
        let idx = enumerate_cells(&Surface::disc(), 0).unwrap();
        assert_eq!(idx.total(), 1);
        assert_eq!(idx.cells(0), &[CellTuple::new(vec![], vec![])]);
    }

    #[test]
    fn counts() {
        assert_eq!(cell_count(&surf(1, 1), 2, 3), 3);
        assert_eq!(cell_count(&Surface::disc(), 4, 8), 1);
        assert_eq!(cell_count(&surf(2, 1), 6, 6), 84);
        assert_eq!(cell_count(&surf(2, 1), 6, 5), 0);
        assert_eq!(cell_count(&surf(2, 1), 6, 13), 0);
    }

    #[test]
    fn disc_total_is_power_of_two() {
        for m in 1..=16 {
            assert_eq!(total_cell_count(&Surface::disc(), m), 1 << (m - 1));
        }
        let idx = enumerate_cells(&Surface::disc(), 10).unwrap();
        assert_eq!(idx.total(), 512);
    }

    #[test]
    fn index_round_trip_and_invariants() {
        for (g, n, m) in [(0, 1, 6), (1, 1, 4), (2, 1, 3), (1, 3, 3)] {
            let s = surf(g, n);
            let idx = enumerate_cells(&s, m).unwrap();
            assert_eq!(idx.total() as u64, total_cell_count(&s, m));
            for d in idx.min_dim()..=idx.max_dim() {
                assert_eq!(idx.count(d) as u64, cell_count(&s, m, d));
                let cells = idx.cells(d);
                assert!(cells.windows(2).all(|w| w[0] < w[1]));
                for (i, c) in cells.iter().enumerate() {
                    assert_eq!(idx.index_of(c), Some(i));
                    assert!(c.is_valid_for(&s));
                    assert_eq!(c.weight(), m);
                    assert_eq!(c.dimension(), d);
                    assert_eq!(c.dimension() - c.weight(), c.lines() as u32);
                    assert!(c.norm() <= c.weight());
                }
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        let err = enumerate_cells_capped(&surf(2, 1), 9, 1000).unwrap_err();
        assert!(matches!(
            err,
            Error::TooManyCells {
                genus: 2,
                points: 9,
                ..
            }
        ));
        assert!(err.to_string().contains("g=2 n=1 m=9"));
    }

    #[test]
    fn foreign_tuples_not_indexed() {
        let idx = enumerate_cells(&surf(1, 1), 2).unwrap();
        assert_eq!(idx.index_of(&CellTuple::new(vec![1], vec![0, 0])), None);
        assert_eq!(idx.index_of(&CellTuple::new(vec![1], vec![1])), None);
    }
}
