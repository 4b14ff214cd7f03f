//! Subspace lattice of F_p^k (p prime, p^k ≤ 128) built from vector sets
//! alone: each subspace is a bitmask over the p^k vectors, grown one
//! vector at a time. Shares no code with the RREF enumeration.

use std::collections::BTreeSet;

pub struct Lattice {
    pub p: usize,
    pub k: usize,
    /// `levels[d]` holds every `d`-dimensional subspace, sorted.
    pub levels: Vec<Vec<u128>>,
}

fn digits(p: usize, k: usize, mut v: usize) -> Vec<usize> {
    (0..k)
        .map(|_| {
            let d = v % p;
            v /= p;
            d
        })
        .collect()
}

fn number(p: usize, ds: &[usize]) -> usize {
    ds.iter().rev().fold(0, |acc, &d| acc * p + d)
}

impl Lattice {
    pub fn new(p: usize, k: usize) -> Self {
        let n = p.pow(k as u32);
        assert!(n <= 128, "vector set must fit a u128 mask");
        // a·u + v for every scalar a
        let combine = |u: usize, v: usize, a: usize| {
            let (du, dv) = (digits(p, k, u), digits(p, k, v));
            number(p, &du.iter().zip(&dv).map(|(x, y)| (a * x + y) % p).collect::<Vec<_>>())
        };
        let span_with = |mask: u128, v: usize| {
            let mut out = 0u128;
            for s in (0..n).filter(|&s| mask >> s & 1 == 1) {
                for a in 0..p {
                    out |= 1 << combine(v, s, a);
                }
            }
            out
        };
        let mut levels = vec![vec![1u128]];
        for _ in 0..k {
            let next: BTreeSet<u128> = levels
                .last()
                .unwrap()
                .iter()
                .flat_map(|&m| (0..n).filter(move |&v| m >> v & 1 == 0).map(move |v| (m, v)))
                .map(|(m, v)| span_with(m, v))
                .collect();
            levels.push(next.into_iter().collect());
        }
        Self { p, k, levels }
    }

    pub fn count(&self, d: usize) -> usize {
        self.levels[d].len()
    }
}
