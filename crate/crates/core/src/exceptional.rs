//! Bounded search for classes `v` with `v² = −1` and `K·v = −1` on a lattice
//! of the form `head ⊕ ⟨−1⟩ⁿ` with `K = (K_head, 1, …, 1)`.
//!
//! Writing `v = (h, x)`, the tail must satisfy `Σxᵢ² = h² + 1` and
//! `Σxᵢ = K_head·h + 1`. For each head vector in the box the tail is found by
//! a recursion that prunes on the remaining sum `S` and sum of squares `Q`:
//! with `r` coordinates left, `S² ≤ r·Q` (Cauchy–Schwarz) and `S ≡ Q (mod 2)`.
//! Both constraints are symmetric in the tail, so only non-increasing tails
//! are searched and each is expanded into its distinct permutations.

use alloc::vec;
use alloc::vec::Vec;

pub(crate) struct SplitLattice<'a> {
    pub head_form: &'a [Vec<i64>],
    pub head_canonical: &'a [i64],
    pub tail: usize,
}

impl SplitLattice<'_> {
    fn head_pair(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut s = 0;
        for (i, ai) in a.iter().enumerate() {
            for (j, bj) in b.iter().enumerate() {
                s += ai * self.head_form[i][j] * bj;
            }
        }
        s
    }

    /// All solutions with every coordinate in `[−bound, bound]`, sorted by
    /// the ℓ¹ norm of the head part, then with earlier tail coordinates
    /// first among equals.
    pub fn minus_one_classes(&self, bound: i64) -> Vec<Vec<i64>> {
        let r = self.head_form.len();
        let mut out = Vec::new();
        let mut head = vec![-bound; r];
        let mut tail = vec![0i64; self.tail];
        loop {
            let q = self.head_pair(&head, &head) + 1;
            let s = self.head_pair(self.head_canonical, &head) + 1;
            if q >= 0 {
                let mut found = Vec::new();
                solve_tail(&mut tail, 0, s, q, bound, bound, &mut found);
                for mut t in found {
                    t.reverse();
                    loop {
                        let mut v = head.clone();
                        v.extend_from_slice(&t);
                        out.push(v);
                        if !next_permutation(&mut t) {
                            break;
                        }
                    }
                }
            }
            // odometer over the head box
            let mut i = 0;
            loop {
                if i == r {
                    let l1 = |v: &[i64]| v[..r].iter().map(|c| c.abs()).sum::<i64>();
                    out.sort_unstable_by(|a, b| l1(a).cmp(&l1(b)).then_with(|| b.cmp(a)));
                    return out;
                }
                if head[i] < bound {
                    head[i] += 1;
                    break;
                }
                head[i] = -bound;
                i += 1;
            }
        }
    }
}

/// Non-increasing tails from `pos` on, each coordinate at most `top`.
fn solve_tail(buf: &mut [i64], pos: usize, sum: i64, sq: i64, top: i64, bound: i64, out: &mut Vec<Vec<i64>>) {
    let left = (buf.len() - pos) as i64;
    if left == 0 {
        if sum == 0 && sq == 0 {
            out.push(buf.to_vec());
        }
        return;
    }
    if sq < 0 || sum * sum > left * sq || (sum - sq).rem_euclid(2) != 0 {
        return;
    }
    let reach = isqrt(sq).min(bound);
    for x in -reach..=reach.min(top) {
        buf[pos] = x;
        solve_tail(buf, pos + 1, sum - x, sq - x * x, x, bound, out);
    }
    buf[pos] = 0;
}

/// Advances to the next lexicographic arrangement; false after the last.
fn next_permutation(v: &mut [i64]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("v[i] exceeds v[i - 1]");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

fn isqrt(n: i64) -> i64 {
    if n <= 0 {
        return 0;
    }
    num_integer::Roots::sqrt(&n)
}
