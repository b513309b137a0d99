//! Symmetric chains and generalized symmetric chains.
//!
//! For a partition `p = Σ α_j 2^j` into powers of two, the symmetric chain
//! `κ(α)` in the disc complex is the sum of every cell whose line
//! multiplicities arrange the multiset `{2^j with multiplicity α_j}`. A
//! generalized symmetric chain `κ(p, α, s)` appends a fixed arc occupancy `s`
//! to every such cell. These chains are cycles, and the generalized ones over
//! all strings `(p, α, s)` of weight `m` give a basis of `H̃_*(C_m(Σ)^∞)`.
//!
//! The number of lines is `l = Σ_{j≥0} α_j` (parts equal to 1 count), so
//! `κ(p, α, s)` lives in dimension `m + l`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::boundary::{boundary_chain, Chain};
use crate::cells::CellTuple;
use crate::combinat::{binary_partitions, distinct_permutations, WeakCompositions};
use crate::gf2::BitMatrix;
use crate::homology::{build_complex, ChainComplex};
use crate::report::{Check, Report};
use crate::surface::Surface;
use crate::{Error, Result};

/// Multiplicities `α_j` of the parts `2^j`, trailing zeros trimmed.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AlphaVector(Vec<u32>);

impl AlphaVector {
    pub fn new(mut alpha: Vec<u32>) -> Self {
        while alpha.last() == Some(&0) {
            alpha.pop();
        }
        Self(alpha)
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    /// `Σ α_j`: the number of parts, i.e. of vertical lines.
    pub fn lines(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `Σ α_j 2^j`.
    pub fn weight(&self) -> u32 {
        self.0.iter().enumerate().map(|(j, &a)| a << j).sum()
    }

    /// `Σ α_j (2^j − 1)`: homological degree of `Π (Q^j ε)^{α_j}`.
    pub fn degree(&self) -> u32 {
        self.weight() - self.lines()
    }

    /// The parts in ascending order.
    pub fn parts(&self) -> Vec<u32> {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(j, &a)| std::iter::repeat_n(1u32 << j, a as usize))
            .collect()
    }

    /// All partitions of `p` into powers of two.
    pub fn partitions_of(p: u32) -> Vec<Self> {
        binary_partitions(p).into_iter().map(Self).collect()
    }
}

impl From<Vec<u32>> for AlphaVector {
    fn from(v: Vec<u32>) -> Self {
        Self::new(v)
    }
}

impl fmt::Display for AlphaVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "]")
    }
}

fn arrangements(alpha: &AlphaVector) -> Vec<Vec<u32>> {
    distinct_permutations(&alpha.parts())
}

/// `κ(α)` in the disc complex of `Σ α_j 2^j` points.
pub fn symmetric_chain(alpha: &AlphaVector) -> Chain {
    let mut chain = Chain::zero(Surface::disc(), alpha.weight(), alpha.weight() + alpha.lines());
    for x in arrangements(alpha) {
        chain.toggle(CellTuple::new(x, Vec::new()));
    }
    chain
}

/// `κ(p, α, s)` with `p = Σ α_j 2^j`.
pub fn generalized_symmetric_chain(surface: &Surface, alpha: &AlphaVector, s: &[u32]) -> Result<Chain> {
    if s.len() != surface.arc_count() {
        return Err(Error::ArcCount {
            expected: surface.arc_count(),
            actual: s.len(),
        });
    }
    let m = alpha.weight() + s.iter().sum::<u32>();
    let mut chain = Chain::zero(*surface, m, m + alpha.lines());
    for x in arrangements(alpha) {
        chain.toggle(CellTuple::new(x, s.to_vec()));
    }
    Ok(chain)
}

pub fn is_cycle(chain: &Chain) -> bool {
    boundary_chain(chain).is_empty()
}

/// The data `(p, α, s)` of one generalized symmetric chain.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BasisString {
    pub p: u32,
    pub alpha: AlphaVector,
    pub s: Vec<u32>,
}

impl BasisString {
    pub fn weight(&self) -> u32 {
        self.p + self.s.iter().sum::<u32>()
    }

    pub fn dimension(&self) -> u32 {
        self.weight() + self.alpha.lines()
    }

    /// Degree of the dual class in `H_*(C_m(Σ))`.
    pub fn open_degree(&self) -> u32 {
        self.weight() - self.alpha.lines()
    }
}

impl fmt::Display for BasisString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p={} alpha={} s=[", self.p, self.alpha)?;
        for (i, v) in self.s.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

/// Every string `(p, α, s)` with `Σ α_j 2^j = p` and `Σ s_k = m − p`, ordered
/// by `p`, then `α`, then `s`.
pub fn enumerate_basis_strings(surface: &Surface, m: u32) -> Vec<BasisString> {
    let r = surface.arc_count();
    let mut out = Vec::new();
    for p in 0..=m {
        let fills: Vec<Vec<u32>> = WeakCompositions::new(m - p, r).collect();
        for alpha in AlphaVector::partitions_of(p) {
            for s in &fills {
                out.push(BasisString {
                    p,
                    alpha: alpha.clone(),
                    s: s.clone(),
                });
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BasisChain {
    pub string: BasisString,
    pub chain: Chain,
}

pub fn enumerate_basis_chains(surface: &Surface, m: u32) -> Vec<BasisChain> {
    enumerate_basis_strings(surface, m)
        .into_iter()
        .map(|string| {
            let chain = generalized_symmetric_chain(surface, &string.alpha, &string.s)
                .expect("strings are built for this surface");
            BasisChain { string, chain }
        })
        .collect()
}

/// Checks that every generalized symmetric chain is a cycle and that, in each
/// dimension, they are as many as the Betti number and independent modulo
/// boundaries.
pub fn verify_basis(surface: &Surface, m: u32) -> Result<Report> {
    let complex = build_complex(surface, m)?;
    Ok(verify_basis_in(&complex, &enumerate_basis_chains(surface, m)))
}

pub fn verify_basis_in(complex: &ChainComplex, chains: &[BasisChain]) -> Report {
    let instance = complex.instance();
    let betti = complex.betti();
    let mut report = Report::new();

    for bc in chains {
        let boundary = boundary_chain(&bc.chain);
        report.push(Check::holds(
            instance,
            "cycle",
            bc.string.to_string(),
            boundary.is_empty(),
            || format!("boundary_terms={} expected=0", boundary.len()),
        ));
    }

    let m = complex.weight();
    for d in m..=2 * m {
        let in_dim: Vec<_> = chains.iter().filter(|bc| bc.chain.dimension() == d).collect();
        let expected = betti.betti_compactified[&d];
        report.push(Check::equal(
            instance,
            "basis-count",
            format!("dim={d}"),
            ("chains", in_dim.len() as u64),
            ("betti", expected),
        ));

        let cols = complex.index().count(d);
        let rows: Vec<_> = in_dim
            .iter()
            .map(|bc| {
                complex
                    .vector_of(d, bc.chain.support())
                    .expect("chain cells belong to the complex")
            })
            .collect();
        let span = BitMatrix::from_rows(cols, &rows).expect("row length matches cell count");
        let boundaries = complex
            .differential(d + 1)
            .cloned()
            .unwrap_or_else(|| BitMatrix::zeros(0, cols));
        let rank = crate::gf2::rank_of_span_in_quotient(&span, &boundaries).expect("same column space");
        report.push(Check::equal(
            instance,
            "basis",
            format!("dim={d}"),
            ("rank", rank as u64),
            ("betti", expected),
        ));
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn t(x: &[u32], s: &[u32]) -> CellTuple {
        CellTuple::new(x.to_vec(), s.to_vec())
    }

    fn cells(c: &Chain) -> Vec<CellTuple> {
        c.support().iter().cloned().collect()
    }

    #[test]
    fn alpha_bookkeeping() {
        let a = AlphaVector::new(vec![1, 2, 0, 1, 0, 0]);
        assert_eq!(a.as_slice(), &[1, 2, 0, 1]);
        assert_eq!(a.lines(), 4);
        assert_eq!(a.weight(), 1 + 4 + 8);
        assert_eq!(a.degree(), 9);
        assert_eq!(a.parts(), vec![1, 2, 2, 8]);
        assert_eq!(a.to_string(), "[1,2,0,1]");
    }

    #[test]
    fn symmetric_chain_examples() {
        assert_eq!(cells(&symmetric_chain(&vec![2].into())), vec![t(&[1, 1], &[])]);
        assert_eq!(
            cells(&symmetric_chain(&vec![1, 1].into())),
            vec![t(&[1, 2], &[]), t(&[2, 1], &[])]
        );
        let c = symmetric_chain(&vec![0, 0, 1].into());
        assert_eq!(cells(&c), vec![t(&[4], &[])]);
        assert_eq!((c.weight(), c.dimension()), (4, 5));
    }

    #[test]
    fn generalized_chain_examples() {
        let torus = Surface::new(1, 1).unwrap();
        let c = generalized_symmetric_chain(&torus, &vec![0, 1].into(), &[1, 0]).unwrap();
        assert_eq!(cells(&c), vec![t(&[2], &[1, 0])]);
        assert_eq!((c.weight(), c.dimension()), (3, 4));

        let c = generalized_symmetric_chain(&torus, &AlphaVector::default(), &[1, 1]).unwrap();
        assert_eq!(cells(&c), vec![t(&[], &[1, 1])]);

        let g2 = Surface::new(2, 1).unwrap();
        let c = generalized_symmetric_chain(&g2, &vec![2].into(), &[0, 1, 1, 0]).unwrap();
        assert_eq!(cells(&c), vec![t(&[1, 1], &[0, 1, 1, 0])]);

        assert!(generalized_symmetric_chain(&g2, &vec![2].into(), &[0, 1]).is_err());
    }

    #[test]
    fn cycle_examples() {
        assert!(is_cycle(&symmetric_chain(&vec![1, 1].into())));
        let torus = Surface::new(1, 1).unwrap();
        assert!(is_cycle(
            &generalized_symmetric_chain(&torus, &vec![0, 1].into(), &[1, 0]).unwrap()
        ));
        assert!(!is_cycle(&Chain::from_cell(Surface::disc(), t(&[1, 2], &[]))));
    }

    #[test]
    fn basis_string_counts() {
        let disc = enumerate_basis_strings(&Surface::disc(), 2);
        let alphas: Vec<_> = disc.iter().map(|b| b.alpha.as_slice().to_vec()).collect();
        assert_eq!(alphas, vec![vec![0, 1], vec![2]]);

        let torus = Surface::new(1, 1).unwrap();
        let one: Vec<String> = enumerate_basis_strings(&torus, 1)
            .iter()
            .map(ToString::to_string)
            .collect();
        assert_eq!(
            one,
            ["p=0 alpha=[] s=[0,1]", "p=0 alpha=[] s=[1,0]", "p=1 alpha=[1] s=[0,0]"]
        );
        assert_eq!(enumerate_basis_chains(&torus, 2).len(), 7);
    }

    #[test]
    fn verify_torus_two_points() {
        let r = verify_basis(&Surface::new(1, 1).unwrap(), 2).unwrap();
        assert!(r.passed(), "{r}");
        let ranks: Vec<String> = r
            .checks
            .iter()
            .filter(|c| c.kind == "basis")
            .map(|c| c.detail.clone())
            .collect();
        assert_eq!(
            ranks,
            ["dim=2 rank=3 betti=3", "dim=3 rank=3 betti=3", "dim=4 rank=1 betti=1"]
        );
    }

    #[test]
    fn verify_disc_four_points() {
        let r = verify_basis(&Surface::disc(), 4).unwrap();
        assert!(r.passed(), "{r}");
        for c in r.checks.iter().filter(|c| c.kind == "basis") {
            let dim: u32 = c.detail[4..5].parse().unwrap();
            let expected = if dim >= 5 { "rank=1 betti=1" } else { "rank=0 betti=0" };
            assert!(c.detail.ends_with(expected), "{}", c.detail);
        }
        assert!(verify_basis(&Surface::disc(), 0).unwrap().passed());
    }

    #[test]
    fn supports_are_disjoint() {
        for s in [Surface::new(1, 1).unwrap(), Surface::new(0, 3).unwrap()] {
            let chains = enumerate_basis_chains(&s, 5);
            let mut seen = BTreeSet::new();
            for bc in &chains {
                for cell in bc.chain.support() {
                    assert!(seen.insert(cell.clone()), "{cell} in two chains");
                    assert_eq!(cell.norm(), bc.string.p);
                }
            }
        }
    }

    #[test]
    fn basis_chains_are_cycles_small_range() {
        for g in 0..=2 {
            for m in 0..=5 {
                let s = Surface::new(g, 1).unwrap();
                for bc in enumerate_basis_chains(&s, m) {
                    assert!(is_cycle(&bc.chain), "{} g={g} m={m}", bc.string);
                }
            }
        }
    }
}
