//! The norm filtration, its strata, and the splitting pushforward.
//!
//! `F_p` is spanned by cells of norm `≤ p`. Outer faces strictly lower the
//! norm, so the stratum `F_p / F_{p-1}` only keeps the inner faces: it splits
//! as one copy of the `p`-point disc complex for every arc occupancy `s` with
//! `Σ s_k = m − p`, with degrees raised by `m − p`.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::boundary::{boundary_tuple, for_each_face, Chain, Faces};
use crate::cells::{CellIndex, CellTuple};
use crate::combinat::{Compositions, WeakCompositions};
use crate::gf2::BitMatrix;
use crate::homology::{build_complex, differential_matrix, ChainComplex};
use crate::report::{Check, Instance, Report};
use crate::surface::Surface;
use crate::symchains::{enumerate_basis_strings, generalized_symmetric_chain, symmetric_chain, BasisString};
use crate::{par, Error, Result};

/// `F_p / F_{p-1}`: cells of norm exactly `p` with inner differentials.
#[derive(Debug, Clone)]
pub struct StratumComplex {
    norm: u32,
    index: CellIndex,
    // differentials[l - 1] leaves dimension m + l.
    differentials: Vec<BitMatrix>,
}

impl StratumComplex {
    pub fn norm(&self) -> u32 {
        self.norm
    }

    pub fn weight(&self) -> u32 {
        self.index.weight()
    }

    pub fn surface(&self) -> &Surface {
        self.index.surface()
    }

    pub fn index(&self) -> &CellIndex {
        &self.index
    }

    pub fn differential(&self, d: u32) -> Option<&BitMatrix> {
        let l = d.checked_sub(self.weight())?;
        self.differentials.get((l as usize).checked_sub(1)?)
    }

    /// Arc occupancies labelling the disc-complex summands.
    pub fn copies(&self) -> Vec<Vec<u32>> {
        WeakCompositions::new(self.weight() - self.norm, self.surface().arc_count()).collect()
    }

    /// Degree shift from the `p`-point disc complex to this stratum.
    pub fn shift(&self) -> u32 {
        self.weight() - self.norm
    }

    /// `dim H_d(F_p / F_{p-1})` for `d ∈ [m, 2m]`.
    pub fn homology(&self) -> BTreeMap<u32, u64> {
        let m = self.weight();
        let rank = |d: u32| self.differential(d).map_or(0, |x| x.rank() as u64);
        (m..=2 * m)
            .map(|d| (d, self.index.count(d) as u64 - rank(d) - rank(d + 1)))
            .collect()
    }
}

pub fn stratum_complex(surface: &Surface, m: u32, p: u32) -> Result<StratumComplex> {
    if p > m {
        return Err(Error::SplitAboveWeight { split: p, weight: m });
    }
    let r = surface.arc_count();
    let fills: Vec<Vec<u32>> = WeakCompositions::new(m - p, r).collect();
    let mut cells = Vec::new();
    for l in 0..=p as usize {
        for x in Compositions::new(p, l) {
            for s in &fills {
                cells.push(CellTuple::new(x.clone(), s.clone()));
            }
        }
    }
    let index = CellIndex::from_cells(*surface, m, cells);
    let differentials = (m + 1..=2 * m)
        .map(|d| differential_matrix(&index, d, Faces::Inner, |_| true))
        .collect();
    Ok(StratumComplex {
        norm: p,
        index,
        differentials,
    })
}

/// Compares `F_p / F_{p-1}` with shifted copies of the disc complex through
/// the cell bijection `(x, s) ↔ (s, x)`.
///
/// The stratum differential used here is the full boundary with every face
/// of norm below `p` discarded, so the check also confirms that no outer face
/// survives in the quotient.
pub fn verify_stratum_isomorphism(surface: &Surface, m: u32, p: u32) -> Result<Report> {
    let stratum = stratum_complex(surface, m, p)?;
    let disc = build_complex(&Surface::disc(), p)?;
    let instance = Instance::new(surface, m);
    let copies = stratum.copies();
    let shift = stratum.shift();
    let mut report = Report::new();

    let mapped = copies.len() * disc.index().total();
    report.push(Check::equal(
        instance,
        "stratum-cells",
        format!("p={p} copies={} shift={shift}", copies.len()),
        ("mapped", mapped),
        ("stratum", stratum.index().total()),
    ));

    for e in p..=2 * p {
        let d = e + shift;
        let mut mismatched = 0usize;
        let mut missing = 0usize;
        for s in &copies {
            for (i, h) in disc.index().cells(e).iter().enumerate() {
                let image = CellTuple::new(h.x.clone(), s.clone());
                if stratum.index().index_of(&image).is_none() {
                    missing += 1;
                    continue;
                }
                // Disc side: faces of h, carried over to the copy labelled s.
                let mut via_disc = BTreeSet::new();
                if let Some(dd) = disc.differential(e) {
                    for c in dd.row(i).ones() {
                        let face = &disc.index().cells(e - 1)[c];
                        via_disc.insert(CellTuple::new(face.x.clone(), s.clone()));
                    }
                }
                // Stratum side: full boundary modulo lower norm.
                let via_quotient: BTreeSet<CellTuple> = boundary_tuple(surface, &image)
                    .support()
                    .iter()
                    .filter(|f| f.norm() == p)
                    .cloned()
                    .collect();
                if via_disc != via_quotient {
                    mismatched += 1;
                }
            }
        }
        report.push(Check::equal(
            instance,
            "stratum",
            format!("p={p} dim={d} disc_dim={e} missing={missing}"),
            ("mismatched", mismatched + missing),
            ("expected", 0),
        ));
    }
    Ok(report)
}

/// Checks that `Σ_p dim H_d(F_p / F_{p-1}) = dim H̃_d(C_m(Σ)^∞)` for every
/// `d`, i.e. that the filtration spectral sequence collapses at `E¹`.
pub fn verify_e1_collapse(surface: &Surface, m: u32) -> Result<Report> {
    let complex = build_complex(surface, m)?;
    verify_e1_collapse_in(&complex)
}

pub fn verify_e1_collapse_in(complex: &ChainComplex) -> Result<Report> {
    let surface = *complex.surface();
    let m = complex.weight();
    let betti = complex.betti();
    let norms: Vec<u32> = (0..=m).collect();
    let strata = par::map(&norms, |&p| stratum_complex(&surface, m, p).map(|s| s.homology()));

    let mut e1: BTreeMap<u32, u64> = (m..=2 * m).map(|d| (d, 0)).collect();
    for h in strata {
        for (d, v) in h? {
            *e1.entry(d).or_default() += v;
        }
    }
    let mut report = Report::new();
    for d in m..=2 * m {
        report.push(Check::equal(
            complex.instance(),
            "collapse",
            format!("dim={d}"),
            ("e1", e1[&d]),
            ("betti", betti.betti_compactified[&d]),
        ));
    }
    Ok(report)
}

/// A GF(2) sum of cells of the smash product: pairs (disc cell of weight `p`,
/// arc-only cell of weight `m − p`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TensorChain {
    disc_weight: u32,
    arc_weight: u32,
    support: BTreeSet<(CellTuple, CellTuple)>,
}

impl TensorChain {
    pub fn zero(disc_weight: u32, arc_weight: u32) -> Self {
        Self {
            disc_weight,
            arc_weight,
            support: BTreeSet::new(),
        }
    }

    /// `disc ⊗ arcs`.
    pub fn tensor(disc: &Chain, arcs: &CellTuple) -> Self {
        debug_assert_eq!(arcs.lines(), 0);
        let mut out = Self::zero(disc.weight(), arcs.weight());
        for h in disc.support() {
            out.toggle(h.clone(), arcs.clone());
        }
        out
    }

    pub fn toggle(&mut self, disc: CellTuple, arcs: CellTuple) {
        let key = (disc, arcs);
        if !self.support.remove(&key) {
            self.support.insert(key);
        }
    }

    pub fn support(&self) -> &BTreeSet<(CellTuple, CellTuple)> {
        &self.support
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn weights(&self) -> (u32, u32) {
        (self.disc_weight, self.arc_weight)
    }
}

/// Chain-level pushforward along the cellular splitting map at norm `split`:
/// cells of norm below `split` go to zero, and `(x, s)` of norm `split` goes
/// to `(x, ()) ⊗ ((), s)`.
pub fn mu_infinity_pushforward(chain: &Chain, split: u32) -> Result<TensorChain> {
    if split > chain.weight() {
        return Err(Error::SplitAboveWeight {
            split,
            weight: chain.weight(),
        });
    }
    if let Some(norm) = chain.max_norm().filter(|&n| n > split) {
        return Err(Error::NormAboveSplit { norm, split });
    }
    let mut out = TensorChain::zero(split, chain.weight() - split);
    for cell in chain.support().iter().filter(|c| c.norm() == split) {
        out.toggle(
            CellTuple::new(cell.x.clone(), Vec::new()),
            CellTuple::arcs_only(cell.s.clone()),
        );
    }
    Ok(out)
}

/// Pushforward identities over all basis strings of weight `m`.
///
/// Ordering strings by `p`, the entry `(i, j)` for `p_i ≤ p_j` is the
/// coefficient of `κ(α_j) ⊗ ((), s_j)` in the pushforward of `κ_i` at split
/// `p_j`. It must be `δ_ij`: the matrix is upper unitriangular with identity
/// diagonal blocks. Entries with `p_i > p_j` are outside the map's domain.
pub fn verify_pushforward(surface: &Surface, m: u32) -> Result<Report> {
    let instance = Instance::new(surface, m);
    let strings = enumerate_basis_strings(surface, m);
    let chains: Vec<Chain> = strings
        .iter()
        .map(|b| generalized_symmetric_chain(surface, &b.alpha, &b.s))
        .collect::<Result<_>>()?;
    let targets: Vec<TensorChain> = strings
        .iter()
        .map(|b| TensorChain::tensor(&symmetric_chain(&b.alpha), &CellTuple::arcs_only(b.s.clone())))
        .collect();

    let mut report = Report::new();
    for (i, b) in strings.iter().enumerate() {
        let image = mu_infinity_pushforward(&chains[i], b.p)?;
        report.push(Check::holds(
            instance,
            "pushforward",
            b.to_string(),
            image == targets[i],
            || format!("image_terms={} expected_terms={}", image.len(), targets[i].len()),
        ));
    }

    let mut by_split: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for (j, b) in strings.iter().enumerate() {
        by_split.entry(b.p).or_default().push(j);
    }
    let mut bad_entries = 0usize;
    let mut entries = 0usize;
    let mut outside_span = 0usize;
    for (&split, columns) in &by_split {
        for (i, _) in strings.iter().enumerate().filter(|(_, b)| b.p <= split) {
            let image = mu_infinity_pushforward(&chains[i], split)?;
            let mut rebuilt = TensorChain::zero(split, m - split);
            for &j in columns {
                let coefficient = coefficient_in(&image, &targets[j]);
                entries += 1;
                if coefficient != (i == j) {
                    bad_entries += 1;
                }
                if coefficient {
                    for (h, a) in targets[j].support() {
                        rebuilt.toggle(h.clone(), a.clone());
                    }
                }
            }
            if rebuilt != image {
                outside_span += 1;
            }
        }
    }
    report.push(Check::equal(
        instance,
        "triangular",
        format!(
            "strings={} entries={entries} outside_span={outside_span}",
            strings.len()
        ),
        ("wrong_entries", bad_entries + outside_span),
        ("expected", 0),
    ));
    Ok(report)
}

// Target tensors have pairwise disjoint supports, so one witness cell decides
// the coefficient; `verify_pushforward` rebuilds the image to confirm.
fn coefficient_in(image: &TensorChain, target: &TensorChain) -> bool {
    target
        .support()
        .iter()
        .next()
        .is_some_and(|cell| image.support().contains(cell))
}

/// Sorted strings with their pushforward images at their own norm, for
/// display.
pub fn pushforward_table(surface: &Surface, m: u32) -> Result<Vec<(BasisString, TensorChain)>> {
    enumerate_basis_strings(surface, m)
        .into_iter()
        .map(|b| {
            let chain = generalized_symmetric_chain(surface, &b.alpha, &b.s)?;
            let image = mu_infinity_pushforward(&chain, b.p)?;
            Ok((b, image))
        })
        .collect()
}

/// Checks that `F_p` is a subcomplex for every `p`: no face has larger norm
/// than its cell.
pub fn verify_filtration(surface: &Surface, m: u32) -> Result<Report> {
    let index = crate::cells::enumerate_cells(surface, m)?;
    let mut raised = 0usize;
    for cell in index.iter() {
        for_each_face(cell, Faces::All, |f| {
            if f.norm() > cell.norm() {
                raised += 1;
            }
        });
    }
    let mut report = Report::new();
    report.push(Check::equal(
        Instance::new(surface, m),
        "filtration",
        format!("cells={}", index.total()),
        ("norm_raising_faces", raised),
        ("expected", 0),
    ));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn surf(g: u32, n: u32) -> Surface {
        Surface::new(g, n).unwrap()
    }

    fn t(x: &[u32], s: &[u32]) -> CellTuple {
        CellTuple::new(x.to_vec(), s.to_vec())
    }

    #[test]
    fn stratum_examples() {
        let st = stratum_complex(&surf(1, 1), 2, 0).unwrap();
        assert_eq!(st.index().total(), 3);
        assert!(st.differential(3).unwrap().rows() == 0);

        let st = stratum_complex(&Surface::disc(), 3, 3).unwrap();
        assert_eq!(st.index().total(), 4);

        let st = stratum_complex(&surf(1, 1), 3, 2).unwrap();
        assert_eq!(st.copies(), vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(st.shift(), 1);
        // Two copies of the 2-point disc complex: cells (2) and (1,1).
        assert_eq!(st.index().cells(4), &[t(&[2], &[0, 1]), t(&[2], &[1, 0])]);
        assert_eq!(st.index().cells(5), &[t(&[1, 1], &[0, 1]), t(&[1, 1], &[1, 0])]);

        assert!(stratum_complex(&surf(1, 1), 2, 3).is_err());
    }

    #[test]
    fn stratum_isomorphism_examples() {
        for (g, m, p) in [(1, 3, 2), (0, 4, 4), (2, 2, 1)] {
            let r = verify_stratum_isomorphism(&surf(g, 1), m, p).unwrap();
            assert!(r.passed(), "{r}");
        }
        let r = verify_stratum_isomorphism(&surf(2, 1), 2, 1).unwrap();
        assert_eq!(r.checks[0].detail, "p=1 copies=4 shift=1 mapped=4 stratum=4");
    }

    #[test]
    fn collapse_examples() {
        let r = verify_e1_collapse(&surf(1, 1), 2).unwrap();
        let lines: Vec<_> = r.checks.iter().map(|c| c.detail.clone()).collect();
        assert_eq!(
            lines,
            ["dim=2 e1=3 betti=3", "dim=3 e1=3 betti=3", "dim=4 e1=1 betti=1"]
        );
        assert!(verify_e1_collapse(&Surface::disc(), 3).unwrap().passed());
        assert!(verify_e1_collapse(&surf(2, 1), 4).unwrap().passed());
    }

    #[test]
    fn pushforward_examples() {
        let torus = surf(1, 1);
        let k = generalized_symmetric_chain(&torus, &vec![0, 1].into(), &[1, 0]).unwrap();
        let image = mu_infinity_pushforward(&k, 2).unwrap();
        let expected = TensorChain::tensor(&symmetric_chain(&vec![0, 1].into()), &CellTuple::arcs_only(vec![1, 0]));
        assert_eq!(image, expected);
        assert_eq!(image.support().iter().next().unwrap(), &(t(&[2], &[]), t(&[], &[1, 0])));

        let k = generalized_symmetric_chain(&torus, &vec![1].into(), &[0, 1]).unwrap();
        assert!(mu_infinity_pushforward(&k, 2).unwrap().is_empty());

        let k = generalized_symmetric_chain(&torus, &vec![2].into(), &[1, 1]).unwrap();
        let image = mu_infinity_pushforward(&k, 2).unwrap();
        let expected = TensorChain::tensor(&symmetric_chain(&vec![2].into()), &CellTuple::arcs_only(vec![1, 1]));
        assert_eq!(image, expected);
    }

    #[test]
    fn pushforward_rejects_high_norm() {
        let k = generalized_symmetric_chain(&surf(1, 1), &vec![0, 1].into(), &[1, 0]).unwrap();
        assert_eq!(
            mu_infinity_pushforward(&k, 1),
            Err(Error::NormAboveSplit { norm: 2, split: 1 })
        );
        assert!(mu_infinity_pushforward(&k, 4).is_err());
    }

    #[test]
    fn pushforward_suite_small() {
        for (g, n, m) in [(1, 1, 3), (0, 1, 4), (2, 1, 2), (0, 2, 3)] {
            let r = verify_pushforward(&surf(g, n), m).unwrap();
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn filtration_is_respected() {
        assert!(verify_filtration(&surf(2, 1), 5).unwrap().passed());
        assert!(verify_filtration(&surf(1, 3), 4).unwrap().passed());
    }

    #[test]
    fn inner_matrices_match_quotient_of_full_boundary() {
        let s = surf(1, 1);
        let full = build_complex(&s, 4).unwrap();
        for p in 0..=4 {
            let st = stratum_complex(&s, 4, p).unwrap();
            for d in 5..=8 {
                let dm = st.differential(d).unwrap();
                for (r, cell) in st.index().cells(d).iter().enumerate() {
                    let row = full.index().index_of(cell).unwrap();
                    let full_faces: BTreeSet<_> = full
                        .differential(d)
                        .unwrap()
                        .row(row)
                        .ones()
                        .map(|c| full.index().cells(d - 1)[c].clone())
                        .filter(|f| f.norm() == p)
                        .collect();
                    let inner: BTreeSet<_> = dm.row(r).ones().map(|c| st.index().cells(d - 1)[c].clone()).collect();
                    assert_eq!(full_faces, inner);
                }
            }
        }
    }
}
