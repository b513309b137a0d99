//! The square model of an orientable surface with boundary.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Orientable surface `Σ_{g,n}` of genus `g` with `n ≥ 1` boundary curves.
///
/// The surface is a square whose vertical sides carry `r = 2g + n - 1` pairs
/// of identified intervals. Configuration points may rest on the interior of
/// each identified interval; we call these the arcs. The arcs are kept as one
/// flat ordered list: `U_1, V_1, …, U_g, V_g, W_1, …, W_{n-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Surface {
    genus: u32,
    boundaries: u32,
}

impl Surface {
    pub fn new(genus: u32, boundaries: u32) -> Result<Self> {
        if boundaries == 0 {
            return Err(Error::NoBoundary);
        }
        Ok(Self { genus, boundaries })
    }

    /// The open disc `Σ_{0,1}`.
    pub fn disc() -> Self {
        Self {
            genus: 0,
            boundaries: 1,
        }
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn boundaries(&self) -> u32 {
        self.boundaries
    }

    pub fn arc_count(&self) -> usize {
        (2 * self.genus + self.boundaries - 1) as usize
    }

    /// Rank of `H_1(Σ; Z/2)`, which equals the number of arcs.
    pub fn first_homology_rank(&self) -> usize {
        self.arc_count()
    }

    pub fn arc_labels(&self) -> Vec<String> {
        let mut labels = Vec::with_capacity(self.arc_count());
        for i in 1..=self.genus {
            labels.push(format!("U{i}"));
            labels.push(format!("V{i}"));
        }
        for k in 1..self.boundaries {
            labels.push(format!("W{k}"));
        }
        labels
    }
}

impl fmt::Display for Surface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Σ_{{{},{}}}", self.genus, self.boundaries)
    }
}
