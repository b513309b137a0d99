//! Monomial counts in `Z/2[Q^j ε | j ≥ 0] ⊗ Sym_•(H)`.
//!
//! `Q^j ε` has bidegree (degree, weight) = `(2^j − 1, 2^j)` and each of the
//! `r` generators of `H = H_1(Σ; Z/2)` has bidegree `(1, 1)`. The number of
//! monomials of bidegree `(q, m)` predicts `dim H_q(C_m(Σ); Z/2)`.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::cells::cell_count;
use crate::combinat::{weak_composition_count, WeakCompositions};
use crate::homology::BettiTable;
use crate::report::{Check, Report};
use crate::surface::Surface;
use crate::symchains::AlphaVector;

/// `Π (Q^j ε)^{α_j} ⊗ Π h_k^{e_k}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Monomial {
    pub alpha: AlphaVector,
    pub e: Vec<u32>,
}

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.alpha.degree() + self.e.iter().sum::<u32>()
    }

    pub fn weight(&self) -> u32 {
        self.alpha.weight() + self.e.iter().sum::<u32>()
    }

    /// Renders with the surface's arc labels, e.g. `ε^2·Qε·U1^2·V1`.
    pub fn render(&self, surface: &Surface) -> String {
        let mut factors = Vec::new();
        for (j, &a) in self.alpha.as_slice().iter().enumerate() {
            if a == 0 {
                continue;
            }
            let base = match j {
                0 => "ε".to_string(),
                1 => "Qε".to_string(),
                _ => format!("Q^{j}ε"),
            };
            factors.push(power(&base, a, j > 0));
        }
        for (label, &e) in surface.arc_labels().iter().zip(&self.e) {
            if e > 0 {
                factors.push(power(label, e, false));
            }
        }
        if factors.is_empty() {
            "1".to_string()
        } else {
            factors.join("·")
        }
    }
}

fn power(base: &str, exp: u32, parenthesize: bool) -> String {
    match (exp, parenthesize) {
        (1, _) => base.to_string(),
        (_, true) => format!("({base})^{exp}"),
        (_, false) => format!("{base}^{exp}"),
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "alpha={} e={:?}", self.alpha, self.e)
    }
}

/// `table[p][l]`: multisets of `l` powers of two summing to `p`, for
/// `p, l ≤ max`.
fn binary_partition_table(max: u32) -> Vec<Vec<u64>> {
    let n = max as usize;
    let mut table = vec![vec![0u64; n + 1]; n + 1];
    table[0][0] = 1;
    let mut part = 1usize;
    while part <= n {
        for p in part..=n {
            for l in 1..=n {
                table[p][l] += table[p - part][l - 1];
            }
        }
        part <<= 1;
    }
    table
}

/// Number of monomials of degree `q` and weight `m`.
pub fn count_monomials(surface: &Surface, q: u32, m: u32) -> u64 {
    if q > m {
        return 0;
    }
    let table = binary_partition_table(m);
    count_with(&table, surface.arc_count() as u32, q, m)
}

fn count_with(table: &[Vec<u64>], r: u32, q: u32, m: u32) -> u64 {
    let lines = m - q;
    (lines..=m)
        .map(|p| table[p as usize][lines as usize] * weak_composition_count(m - p, r))
        .sum()
}

/// Monomials of degree `q` and weight `m`, ordered by `p = weight of the
/// Dyer–Lashof part`, then `α`, then `e`.
pub fn enumerate_monomials(surface: &Surface, q: u32, m: u32) -> Vec<Monomial> {
    if q > m {
        return Vec::new();
    }
    let lines = m - q;
    let r = surface.arc_count();
    let mut out = Vec::new();
    for p in lines..=m {
        let fills: Vec<Vec<u32>> = WeakCompositions::new(m - p, r).collect();
        for alpha in AlphaVector::partitions_of(p).into_iter().filter(|a| a.lines() == lines) {
            for e in &fills {
                out.push(Monomial {
                    alpha: alpha.clone(),
                    e: e.clone(),
                });
            }
        }
    }
    out
}

/// Predicted Betti table, same schema as the computed one with
/// `source = "predicted"`.
pub fn predicted_table(surface: &Surface, m: u32) -> BettiTable {
    let table = binary_partition_table(m);
    let r = surface.arc_count() as u32;
    let compactified: BTreeMap<u32, u64> = (m..=2 * m).map(|d| (d, count_with(&table, r, 2 * m - d, m))).collect();
    let cells = (m..=2 * m).map(|d| (d, cell_count(surface, m, d))).collect();
    BettiTable::from_compactified(surface, m, compactified, cells, Some("predicted".into()))
}

/// Per-degree comparison of a computed table with the monomial count.
pub fn compare_table(computed: &BettiTable) -> Report {
    let surface = computed.surface();
    let m = computed.points;
    let table = binary_partition_table(m);
    let r = surface.arc_count() as u32;
    let mut report = Report::new();
    for (q, &b) in computed.betti_open.iter().enumerate() {
        let q = q as u32;
        report.push(Check::equal(
            computed.instance(),
            "compare",
            format!("degree={q} weight={m}"),
            ("betti", b),
            ("predicted", count_with(&table, r, q, m)),
        ));
    }
    report
}

pub fn compare(surface: &Surface, m: u32) -> crate::Result<Report> {
    Ok(compare_table(&crate::homology::betti(surface, m)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::binomial;

    fn surf(g: u32, n: u32) -> Surface {
        Surface::new(g, n).unwrap()
    }

    #[test]
    fn count_examples() {
        assert_eq!(count_monomials(&Surface::disc(), 3, 4), 1);
        assert_eq!(count_monomials(&surf(1, 1), 1, 2), 3);
        for g in 0..4 {
            for m in 0..8 {
                assert_eq!(count_monomials(&surf(g, 1), 0, m), 1);
            }
        }
        assert_eq!(count_monomials(&Surface::disc(), 5, 2), 0);
    }

    #[test]
    fn enumerate_examples() {
        let torus = surf(1, 1);
        let sym2: Vec<String> = enumerate_monomials(&torus, 2, 2)
            .iter()
            .map(|m| m.render(&torus))
            .collect();
        assert_eq!(sym2, ["V1^2", "U1·V1", "U1^2"]);
        let disc: Vec<String> = enumerate_monomials(&Surface::disc(), 1, 2)
            .iter()
            .map(|m| m.render(&Surface::disc()))
            .collect();
        assert_eq!(disc, ["Qε"]);
        assert!(enumerate_monomials(&Surface::disc(), 5, 2).is_empty());

        let deg1: Vec<String> = enumerate_monomials(&torus, 1, 2)
            .iter()
            .map(|m| m.render(&torus))
            .collect();
        assert_eq!(deg1, ["ε·V1", "ε·U1", "Qε"]);
        let m = &enumerate_monomials(&Surface::disc(), 5, 9)[0];
        assert_eq!((m.degree(), m.weight()), (5, 9));
    }

    #[test]
    fn enumeration_matches_count() {
        for (g, n) in [(0, 1), (1, 1), (2, 1), (0, 3), (1, 2)] {
            let s = surf(g, n);
            for m in 0..=9 {
                for q in 0..=m + 1 {
                    let list = enumerate_monomials(&s, q, m);
                    assert_eq!(list.len() as u64, count_monomials(&s, q, m));
                    assert!(list.iter().all(|x| x.degree() == q && x.weight() == m));
                    assert!(list.iter().all(|x| x.weight() >= x.degree()));
                }
            }
        }
    }

    #[test]
    fn top_degree_is_symmetric_power() {
        for (g, n) in [(0, 2), (1, 1), (2, 1), (1, 3)] {
            let s = surf(g, n);
            let r = s.arc_count() as u64;
            for m in 0..=10u32 {
                assert_eq!(count_monomials(&s, m, m), binomial(u64::from(m) + r - 1, r - 1));
            }
        }
    }

    #[test]
    fn monotone_in_genus() {
        for n in 1..=3 {
            for m in 0..=8 {
                for q in 0..=m {
                    for g in 0..4 {
                        assert!(count_monomials(&surf(g, n), q, m) <= count_monomials(&surf(g + 1, n), q, m));
                    }
                }
            }
        }
    }

    /// Power series in (degree s, weight t) truncated at weight `max`, stored
    /// as coeffs[weight][degree].
    fn series_product(a: &[Vec<u64>], b: &[Vec<u64>], max: usize) -> Vec<Vec<u64>> {
        let mut out = vec![vec![0u64; max + 1]; max + 1];
        for wa in 0..=max {
            for da in 0..=max {
                if a[wa][da] == 0 {
                    continue;
                }
                for wb in 0..=max - wa {
                    for db in 0..=max - da {
                        out[wa + wb][da + db] += a[wa][da] * b[wb][db];
                    }
                }
            }
        }
        out
    }

    /// `1 / (1 − s^deg t^weight)` truncated.
    fn geometric(deg: usize, weight: usize, max: usize) -> Vec<Vec<u64>> {
        let mut out = vec![vec![0u64; max + 1]; max + 1];
        let mut k = 0;
        while k * weight <= max && k * deg <= max {
            out[k * weight][k * deg] = 1;
            k += 1;
        }
        out
    }

    #[test]
    fn generating_function_identity() {
        const MAX: usize = 10;
        for r in 0..=4usize {
            let mut series = vec![vec![0; MAX + 1]; MAX + 1];
            series[0][0] = 1;
            let mut j = 0;
            while (1usize << j) <= MAX {
                series = series_product(&series, &geometric((1 << j) - 1, 1 << j, MAX), MAX);
                j += 1;
            }
            for _ in 0..r {
                series = series_product(&series, &geometric(1, 1, MAX), MAX);
            }
            let s = if r == 0 { Surface::disc() } else { surf(0, r as u32 + 1) };
            for (m, row) in series.iter().enumerate() {
                for (q, &coeff) in row.iter().enumerate() {
                    assert_eq!(count_monomials(&s, q as u32, m as u32), coeff, "r={r} q={q} m={m}");
                }
            }
        }
    }

    #[test]
    fn predicted_table_schema() {
        let t = predicted_table(&surf(1, 1), 2);
        assert_eq!(t.betti_open, vec![1, 3, 3]);
        assert_eq!(t.source.as_deref(), Some("predicted"));
        assert_eq!(t.euler, t.cell_euler());
    }

    #[test]
    fn compare_examples() {
        let r = compare(&surf(1, 1), 2).unwrap();
        assert!(r.passed());
        assert_eq!(
            r.checks[1].to_string(),
            "PASS compare degree=1 weight=2 betti=3 predicted=3"
        );
        for m in 0..=8 {
            assert!(compare(&Surface::disc(), m).unwrap().passed());
        }
        let annulus = compare(&surf(0, 2), 1).unwrap();
        assert!(annulus.passed());
        assert_eq!(annulus.len(), 2);
    }
}
