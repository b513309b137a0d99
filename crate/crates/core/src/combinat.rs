//! Integer compositions, multiset permutations and binary partitions.
//!
//! All generators are iterative and emit in lexicographic order.

/// Binomial coefficient `C(n, k)`, zero when `k > n`.
///
/// Saturates at `u64::MAX`; desk-scale instances never get close.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
        if acc > u128::from(u64::MAX) {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Number of compositions of `n` into exactly `k` positive parts.
pub fn composition_count(n: u32, k: u32) -> u64 {
    match (n, k) {
        (0, 0) => 1,
        (_, 0) | (0, _) => 0,
        _ if k > n => 0,
        _ => binomial(u64::from(n - 1), u64::from(k - 1)),
    }
}

/// Number of compositions of `n` into exactly `k` nonnegative parts.
pub fn weak_composition_count(n: u32, k: u32) -> u64 {
    if k == 0 {
        return u64::from(n == 0);
    }
    binomial(u64::from(n) + u64::from(k) - 1, u64::from(k) - 1)
}

/// Lexicographic iterator over compositions of `total` into `parts`
/// nonnegative integers.
#[derive(Debug, Clone)]
pub struct WeakCompositions {
    current: Vec<u32>,
    done: bool,
}

impl WeakCompositions {
    pub fn new(total: u32, parts: usize) -> Self {
        if parts == 0 {
            return Self {
                current: Vec::new(),
                done: total != 0,
            };
        }
        let mut current = vec![0; parts];
        current[parts - 1] = total;
        Self { current, done: false }
    }

    fn advance(&mut self) {
        let k = self.current.len();
        if k < 2 {
            self.done = true;
            return;
        }
        // Largest i < k-1 whose tail carries some mass.
        let i = if self.current[k - 1] > 0 {
            k - 2
        } else {
            match self.current[..k - 1].iter().rposition(|&v| v > 0) {
                Some(0) | None => {
                    self.done = true;
                    return;
                }
                Some(j) => j - 1,
            }
        };
        let tail: u32 = self.current[i + 1..].iter().sum();
        self.current[i] += 1;
        for v in &mut self.current[i + 1..] {
            *v = 0;
        }
        self.current[k - 1] = tail - 1;
    }
}

impl Iterator for WeakCompositions {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        self.advance();
        Some(out)
    }
}

/// Lexicographic iterator over compositions of `total` into `parts` positive
/// integers.
#[derive(Debug, Clone)]
pub struct Compositions {
    inner: Option<WeakCompositions>,
}

impl Compositions {
    pub fn new(total: u32, parts: usize) -> Self {
        let inner = (parts as u64 <= u64::from(total)).then(|| WeakCompositions::new(total - parts as u32, parts));
        Self { inner }
    }
}

impl Iterator for Compositions {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        let mut c = self.inner.as_mut()?.next()?;
        for v in &mut c {
            *v += 1;
        }
        Some(c)
    }
}

/// Rearranges `v` into the next lexicographic permutation, returning `false`
/// (and leaving `v` sorted ascending) after the last one.
pub fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let Some(i) = (0..v.len() - 1).rev().find(|&i| v[i] < v[i + 1]) else {
        v.reverse();
        return false;
    };
    let j = (i + 1..v.len()).rev().find(|&j| v[i] < v[j]).unwrap();
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

/// All distinct arrangements of a multiset, in lexicographic order.
pub fn distinct_permutations<T: Ord + Clone>(items: &[T]) -> Vec<Vec<T>> {
    let mut v = items.to_vec();
    v.sort();
    let mut out = vec![v.clone()];
    while next_permutation(&mut v) {
        out.push(v.clone());
    }
    out
}

/// Partitions of `p` into powers of two, as multiplicity vectors `α` with
/// `p = Σ α_j 2^j`. Trailing zeros are trimmed; the empty vector stands for
/// the partition of zero.
///
/// Output order: part sequences written nonincreasingly, in descending
/// lexicographic order (`{4}` before `{2,2}` before `{2,1,1}`).
pub fn binary_partitions(p: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    if p == 0 {
        out.push(Vec::new());
        return out;
    }
    let top = 31 - p.leading_zeros();
    // Stack of (remaining, largest allowed exponent, multiplicities so far).
    let mut stack = vec![(p, top, vec![0u32; top as usize + 1])];
    while let Some((rest, max_exp, alpha)) = stack.pop() {
        if rest == 0 {
            let mut alpha = alpha;
            while alpha.last() == Some(&0) {
                alpha.pop();
            }
            out.push(alpha);
            continue;
        }
        // Push smaller exponents first so larger parts pop first.
        for e in 0..=max_exp {
            let part = 1u32 << e;
            if part <= rest {
                let mut next = alpha.clone();
                next[e as usize] += 1;
                stack.push((rest - part, e, next));
            }
        }
    }
    out
}
