use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use super::Design;
use crate::combin::{binomial, format_set, subsets, subsets_of};

/// First condition a design failed, with a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DesignViolation {
    InvalidParameters(String),
    PointCount { expected: usize, actual: usize },
    BlockCount { expected: usize, actual: usize },
    BlockSize { block: usize, expected: usize, actual: usize },
    /// Configuration condition (ii).
    Replication { point: usize, expected: usize, actual: usize },
    /// Configuration condition (iii): a pair lies in more than one block.
    PairRepeated { pair: (usize, usize), blocks: usize },
    /// A t-subset lies in the wrong number of blocks.
    SubsetCount { subset: Vec<usize>, expected: usize, actual: usize },
    Identity(String),
}

impl fmt::Display for DesignViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::InvalidParameters(msg) => write!(f, "invalid parameters: {msg}"),
            Self::PointCount { expected, actual } => {
                write!(f, "expected {expected} points, found {actual}")
            }
            Self::BlockCount { expected, actual } => {
                write!(f, "expected {expected} blocks, found {actual}")
            }
            Self::BlockSize { block, expected, actual } => {
                write!(f, "(i) block {block} has {actual} points, expected {expected}")
            }
            Self::Replication { point, expected, actual } => {
                write!(f, "(ii) point {point} lies in {actual} blocks, expected {expected}")
            }
            Self::PairRepeated { pair, blocks } => write!(
                f,
                "(iii) pair {{{},{}}} lies in {blocks} blocks, at most 1 allowed",
                pair.0, pair.1
            ),
            Self::SubsetCount { subset, expected, actual } => write!(
                f,
                "(iii) subset {} lies in {actual} blocks, expected {expected}",
                format_set(subset)
            ),
            Self::Identity(msg) => write!(f, "counting identity fails: {msg}"),
        }
    }
}

impl std::error::Error for DesignViolation {}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ConfigurationCertificate {
    pub v: usize,
    pub r: usize,
    pub b: usize,
    pub k: usize,
    /// `k = (v-1)/r + 1`, i.e. the pair bound is tight.
    pub bound_tight: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TDesignCertificate {
    pub t: usize,
    pub v: usize,
    pub k: usize,
    pub lambda: usize,
    pub b: usize,
}

impl Design {
    fn check_block_sizes(&self, k: usize) -> Result<(), DesignViolation> {
        match self.blocks.iter().position(|b| b.len() != k) {
            Some(i) => Err(DesignViolation::BlockSize {
                block: i,
                expected: k,
                actual: self.blocks[i].len(),
            }),
            None => Ok(()),
        }
    }

    /// Number of blocks through every `t`-subset that lies in some block.
    fn subset_counts(&self, t: usize) -> HashMap<Vec<usize>, usize> {
        let mut counts = HashMap::new();
        for block in &self.blocks {
            for sub in subsets_of(block, t) {
                *counts.entry(sub).or_insert(0) += 1;
            }
        }
        counts
    }

    /// Checks the configuration axioms for `(v_r, b_k)`: blocks of size
    /// `k`, `r` blocks through each point, no pair in two blocks.
    pub fn certify_configuration(
        &self,
        v: usize,
        r: usize,
        b: usize,
        k: usize,
    ) -> Result<ConfigurationCertificate, DesignViolation> {
        if k == 0 || r == 0 {
            return Err(DesignViolation::InvalidParameters(format!(
                "configuration needs r, k ≥ 1, got r = {r}, k = {k}"
            )));
        }
        if self.v != v {
            return Err(DesignViolation::PointCount { expected: v, actual: self.v });
        }
        self.check_block_sizes(k)?;
        let mut pairs = self.subset_counts(2).into_iter().collect::<Vec<_>>();
        pairs.sort();
        if let Some((pair, n)) = pairs.into_iter().find(|(_, n)| *n > 1) {
            return Err(DesignViolation::PairRepeated { pair: (pair[0], pair[1]), blocks: n });
        }
        if let Some((point, &actual)) = self.replication().iter().enumerate().find(|(_, &n)| n != r) {
            return Err(DesignViolation::Replication { point, expected: r, actual });
        }
        if self.b() != b {
            return Err(DesignViolation::BlockCount { expected: b, actual: self.b() });
        }
        if b * k != v * r {
            return Err(DesignViolation::Identity(format!("bk = {} but vr = {}", b * k, v * r)));
        }
        // k ≤ (v-1)/r + 1, i.e. r(k-1) ≤ v-1
        if r * (k - 1) > v - 1 {
            return Err(DesignViolation::Identity(format!(
                "k = {k} exceeds (v-1)/r + 1 = {}/{r} + 1",
                v - 1
            )));
        }
        Ok(ConfigurationCertificate { v, r, b, k, bound_tight: r * (k - 1) == v - 1 })
    }

    /// Checks that every `t`-subset of the points lies in exactly `λ` blocks
    /// of size `k`, and that the block count is `λ·C(v,t)/C(k,t)`.
    pub fn certify_t_design(
        &self,
        t: usize,
        v: usize,
        k: usize,
        lambda: usize,
    ) -> Result<TDesignCertificate, DesignViolation> {
        if !(v > k && k >= t && t >= 1) || lambda == 0 {
            return Err(DesignViolation::InvalidParameters(format!(
                "t-(v,k,λ) design needs v > k ≥ t ≥ 1 and λ ≥ 1, got {t}-({v},{k},{lambda})"
            )));
        }
        if self.v != v {
            return Err(DesignViolation::PointCount { expected: v, actual: self.v });
        }
        self.check_block_sizes(k)?;
        let counts = self.subset_counts(t);
        for subset in subsets(v, t) {
            let actual = counts.get(&subset).copied().unwrap_or(0);
            if actual != lambda {
                return Err(DesignViolation::SubsetCount { subset, expected: lambda, actual });
            }
        }
        let num = lambda as u128 * binomial(v as u64, t as u64);
        let den = binomial(k as u64, t as u64);
        if !num.is_multiple_of(den) || num / den != self.b() as u128 {
            return Err(DesignViolation::Identity(format!(
                "b = {} but λ·C(v,t)/C(k,t) = {num}/{den}",
                self.b()
            )));
        }
        Ok(TDesignCertificate { t, v, k, lambda, b: self.b() })
    }
}
