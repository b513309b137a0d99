//! The reduced cellular chain complex of `C_m(Σ)^∞` and its Betti numbers.
//!
//! Poincaré–Lefschetz duality identifies `H̃_d(C_m(Σ)^∞; Z/2)` with
//! `H^{2m-d}(C_m(Σ); Z/2)`, and over a field the latter has the same dimension
//! as `H_{2m-d}(C_m(Σ); Z/2)`. Tables carry both sides.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::boundary::{for_each_face, Faces};
use crate::cells::{enumerate_cells_capped, CellIndex, CellTuple, DEFAULT_CELL_CAP};
use crate::gf2::{BitMatrix, BitVector};
use crate::report::{Check, Instance, Report};
use crate::surface::Surface;
use crate::{par, Result};

/// Cells plus packed differentials.
///
/// The differential leaving dimension `d` has one row per `d`-cell and one
/// column per `(d-1)`-cell. Cells of the lowest dimension `m` only bound into
/// the basepoint, which the reduced complex drops.
#[derive(Debug, Clone)]
pub struct ChainComplex {
    index: CellIndex,
    // differentials[l - 1] leaves dimension m + l, for l in 1..=m.
    differentials: Vec<BitMatrix>,
}

impl ChainComplex {
    pub fn surface(&self) -> &Surface {
        self.index.surface()
    }

    pub fn weight(&self) -> u32 {
        self.index.weight()
    }

    pub fn index(&self) -> &CellIndex {
        &self.index
    }

    pub fn instance(&self) -> Instance {
        Instance::new(self.surface(), self.weight())
    }

    /// The differential leaving dimension `d`, for `d ∈ [m+1, 2m]`.
    pub fn differential(&self, d: u32) -> Option<&BitMatrix> {
        let l = d.checked_sub(self.weight())?;
        self.differentials.get((l as usize).checked_sub(1)?)
    }

    /// Rank of the differential leaving dimension `d` (zero where none).
    pub fn rank(&self, d: u32) -> usize {
        self.differential(d).map_or(0, BitMatrix::rank)
    }

    /// Cells of dimension `d` as a packed row vector.
    pub fn vector_of<'a>(&self, d: u32, cells: impl IntoIterator<Item = &'a CellTuple>) -> Option<BitVector> {
        let mut v = BitVector::zeros(self.index.count(d));
        for c in cells {
            v.toggle(self.index.index_of(c)?);
        }
        Some(v)
    }

    pub fn betti(&self) -> BettiTable {
        let m = self.weight();
        let dims: Vec<u32> = (m..=2 * m + 1).collect();
        let ranks = par::map(&dims, |&d| self.rank(d));
        let rank_of = |d: u32| ranks[(d - m) as usize] as u64;

        let mut compactified = BTreeMap::new();
        let mut cells_by_dim = BTreeMap::new();
        for d in m..=2 * m {
            let cells = self.index.count(d) as u64;
            cells_by_dim.insert(d, cells);
            compactified.insert(d, cells - rank_of(d) - rank_of(d + 1));
        }
        BettiTable::from_compactified(self.surface(), m, compactified, cells_by_dim, None)
    }

    /// Checks `∂∂ = 0` cell by cell: one check per dimension counting the
    /// cells whose boundary has a nonzero boundary.
    pub fn verify_d_squared(&self) -> Report {
        let m = self.weight();
        let mut report = Report::new();
        for d in m + 2..=2 * m {
            let (Some(outer), Some(inner)) = (self.differential(d), self.differential(d - 1)) else {
                continue;
            };
            let product = outer.mul(inner).expect("consecutive differentials compose");
            let bad = (0..product.rows())
                .filter(|&r| product.row_words(r).iter().any(|&w| w != 0))
                .count();
            report.push(Check::equal(
                self.instance(),
                "d-squared",
                format!("dim={d} cells={}", outer.rows()),
                ("nonzero", bad),
                ("expected", 0),
            ));
        }
        report
    }
}

/// Builds the reduced complex under the default resource cap.
pub fn build_complex(surface: &Surface, m: u32) -> Result<ChainComplex> {
    build_complex_capped(surface, m, DEFAULT_CELL_CAP)
}

pub fn build_complex_capped(surface: &Surface, m: u32, cap: u64) -> Result<ChainComplex> {
    let index = enumerate_cells_capped(surface, m, cap)?;
    let differentials = (m + 1..=2 * m)
        .map(|d| differential_matrix(&index, d, Faces::All, |_| true))
        .collect();
    Ok(ChainComplex { index, differentials })
}

/// Packs the faces of every `d`-cell accepted by `keep_row`. Rejected rows
/// stay zero.
pub(crate) fn differential_matrix(
    index: &CellIndex,
    d: u32,
    faces: Faces,
    keep_row: impl Fn(&CellTuple) -> bool + Sync + Send,
) -> BitMatrix {
    let rows = index.cells(d);
    let cols = index.count(d - 1);
    let row_faces: Vec<Vec<usize>> = par::map(rows, |cell| {
        let mut hits = Vec::new();
        if keep_row(cell) {
            for_each_face(cell, faces, |face| {
                hits.push(index.index_of(&face).expect("face is a cell of the same weight"));
            });
        }
        hits
    });
    let mut matrix = BitMatrix::zeros(rows.len(), cols);
    for (r, hits) in row_faces.iter().enumerate() {
        for &c in hits {
            matrix.toggle(r, c);
        }
    }
    matrix
}

/// Betti numbers of one instance on both sides of duality.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiTable {
    pub genus: u32,
    pub boundaries: u32,
    pub points: u32,
    /// `dim H_q(C_m(Σ); Z/2)` for `q = 0..=m`.
    pub betti_open: Vec<u64>,
    /// `dim H̃_d(C_m(Σ)^∞; Z/2)` for `d = m..=2m`.
    pub betti_compactified: BTreeMap<u32, u64>,
    pub cells_by_dim: BTreeMap<u32, u64>,
    pub euler: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
}

impl BettiTable {
    pub(crate) fn from_compactified(
        surface: &Surface,
        m: u32,
        compactified: BTreeMap<u32, u64>,
        cells_by_dim: BTreeMap<u32, u64>,
        source: Option<String>,
    ) -> Self {
        let betti_open = (0..=m)
            .map(|q| compactified.get(&(2 * m - q)).copied().unwrap_or(0))
            .collect();
        let euler = alternating_sum(&compactified);
        Self {
            genus: surface.genus(),
            boundaries: surface.boundaries(),
            points: m,
            betti_open,
            betti_compactified: compactified,
            cells_by_dim,
            euler,
            source,
        }
    }

    pub fn surface(&self) -> Surface {
        Surface::new(self.genus, self.boundaries).expect("tables are built from valid surfaces")
    }

    pub fn instance(&self) -> Instance {
        Instance {
            genus: self.genus,
            boundaries: self.boundaries,
            points: self.points,
        }
    }

    /// `Σ_d (-1)^d · #cells_d`.
    pub fn cell_euler(&self) -> i64 {
        alternating_sum(&self.cells_by_dim)
    }
}

fn alternating_sum(map: &BTreeMap<u32, u64>) -> i64 {
    map.iter()
        .map(|(&d, &v)| if d % 2 == 0 { v as i64 } else { -(v as i64) })
        .sum()
}

/// Betti table of `C_m(Σ)`.
pub fn betti(surface: &Surface, m: u32) -> Result<BettiTable> {
    betti_capped(surface, m, DEFAULT_CELL_CAP)
}

pub fn betti_capped(surface: &Surface, m: u32, cap: u64) -> Result<BettiTable> {
    if m == 0 {
        let one: BTreeMap<u32, u64> = [(0, 1)].into();
        return Ok(BettiTable::from_compactified(surface, 0, one.clone(), one, None));
    }
    Ok(build_complex_capped(surface, m, cap)?.betti())
}

/// Betti tables for `m = 0..=m_max`.
pub fn betti_table_sweep(surface: &Surface, m_max: u32) -> Result<Vec<BettiTable>> {
    (0..=m_max).map(|m| betti(surface, m)).collect()
}
