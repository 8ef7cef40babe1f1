//! Index bookkeeping for exterior powers: `n`-subsets of basis indices stored
//! as bit masks and ordered lexicographically as sorted tuples.

use std::sync::OnceLock;

/// Largest supported algebra dimension (subsets are `u64` masks).
pub const MAX_DIM: usize = 64;

fn table() -> &'static Vec<Vec<u64>> {
    static TABLE: OnceLock<Vec<Vec<u64>>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = vec![vec![0u64; MAX_DIM + 1]; MAX_DIM + 1];
        for n in 0..=MAX_DIM {
            t[n][0] = 1;
            for k in 1..=n {
                t[n][k] = t[n - 1][k - 1].saturating_add(if k < n { t[n - 1][k] } else { 0 });
            }
        }
        t
    })
}

/// Binomial coefficient `C(n, k)` for `n ≤ 64` (zero when `k > n`).
pub fn binom(n: usize, k: usize) -> u64 {
    if k > n {
        0
    } else {
        table()[n][k]
    }
}

/// Elements of a mask in increasing order.
pub fn elements(mask: u64) -> impl Iterator<Item = usize> {
    let mut m = mask;
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

pub fn mask_of(indices: &[usize]) -> u64 {
    indices.iter().fold(0u64, |m, &i| m | (1u64 << i))
}

/// `(-1)^{#elements of mask below i}`: the sign picked up when moving `x_i`
/// from the front into its sorted position.
pub fn insertion_sign(mask: u64, i: usize) -> i64 {
    let below = (mask & ((1u64 << i) - 1)).count_ones();
    if below.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Sign of the permutation sorting `seq`, or `0` if `seq` has a repeat.
pub fn sort_sign(seq: &[usize]) -> i64 {
    let mut sign = 1;
    for a in 0..seq.len() {
        for b in a + 1..seq.len() {
            if seq[a] == seq[b] {
                return 0;
            }
            if seq[a] > seq[b] {
                sign = -sign;
            }
        }
    }
    sign
}

/// Sign of the shuffle putting the elements of `left` before those of
/// `right` (both subsets, disjoint).
pub fn shuffle_sign(left: u64, right: u64) -> i64 {
    let mut inversions = 0u32;
    for i in elements(left) {
        inversions += (right & ((1u64 << i) - 1)).count_ones();
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Lexicographic rank of a `degree`-subset of `{0..dim}`.
pub fn lex_rank(mask: u64, dim: usize) -> usize {
    let n = mask.count_ones() as usize;
    let mut rank = 0u64;
    let mut next = 0usize;
    for (pos, a) in elements(mask).enumerate() {
        for j in next..a {
            rank += binom(dim - 1 - j, n - 1 - pos);
        }
        next = a + 1;
    }
    rank as usize
}

/// All `degree`-subsets of `{0..dim}` in lexicographic order.
#[derive(Clone, Debug)]
pub struct ExteriorBasis {
    dim: usize,
    degree: usize,
    subsets: Vec<u64>,
}

impl ExteriorBasis {
    pub fn new(dim: usize, degree: usize) -> Self {
        assert!(dim <= MAX_DIM, "dimension {dim} exceeds {MAX_DIM}");
        let mut subsets = Vec::with_capacity(binom(dim, degree) as usize);
        if degree <= dim {
            let mut idx: Vec<usize> = (0..degree).collect();
            loop {
                subsets.push(mask_of(&idx));
                // advance to the next combination
                let mut i = degree;
                loop {
                    if i == 0 {
                        return Self { dim, degree, subsets };
                    }
                    i -= 1;
                    if idx[i] < dim - degree + i {
                        break;
                    }
                    if i == 0 {
                        return Self { dim, degree, subsets };
                    }
                }
                idx[i] += 1;
                for j in i + 1..degree {
                    idx[j] = idx[j - 1] + 1;
                }
            }
        }
        Self { dim, degree, subsets }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.subsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subsets.is_empty()
    }

    pub fn subsets(&self) -> &[u64] {
        &self.subsets
    }

    pub fn subset(&self, index: usize) -> u64 {
        self.subsets[index]
    }

    pub fn index_of(&self, mask: u64) -> usize {
        debug_assert_eq!(mask.count_ones() as usize, self.degree);
        lex_rank(mask, self.dim)
    }
}
