//! Block designs: configurations, Steiner systems and t-designs.
//!
//! A [`Design`] is a point set `0..v` plus a multiset of blocks, kept in
//! canonical order (points sorted inside each block, blocks sorted
//! lexicographically). Certification is exhaustive.

mod builders;
mod catalog;
mod certify;

use serde::{Deserialize, Serialize};

use crate::combin::{binomial, is_subset};

pub use builders::{build_complete_design, build_steiner_triple, build_transversal};
pub use catalog::{catalog_lookup, resolve_design, CATALOG};
pub use certify::{ConfigurationCertificate, DesignViolation, TDesignCertificate};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DesignError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("parameters are inadmissible: {0}")]
    Inadmissible(String),
    #[error("unknown design {0:?}")]
    Unknown(String),
    #[error("design fails certification: {0}")]
    Violation(#[from] DesignViolation),
    #[error("malformed design JSON: {0}")]
    Json(String),
}

/// Declared parameters carried alongside a design.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum DesignTag {
    TDesign { t: usize, k: usize, lambda: usize },
    Configuration { r: usize, b: usize, k: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Design {
    v: usize,
    blocks: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tag: Option<DesignTag>,
}

impl Design {
    /// Builds a design on points `0..v`. Blocks must be nonempty subsets
    /// of the point set; they are canonicalized.
    pub fn new(v: usize, blocks: Vec<Vec<usize>>, tag: Option<DesignTag>) -> Result<Self, DesignError> {
        let mut blocks = blocks;
        for (i, block) in blocks.iter_mut().enumerate() {
            if block.is_empty() {
                return Err(DesignError::Domain(format!("block {i} is empty")));
            }
            block.sort_unstable();
            if block.windows(2).any(|w| w[0] == w[1]) {
                return Err(DesignError::Domain(format!("block {i} repeats a point")));
            }
            if let Some(&p) = block.last().filter(|&&p| p >= v) {
                return Err(DesignError::Domain(format!(
                    "block {i} contains point {p} outside 0..{v}"
                )));
            }
        }
        blocks.sort();
        Ok(Self { v, blocks, tag })
    }

    pub fn from_json(text: &str) -> Result<Self, DesignError> {
        let raw: Design = serde_json::from_str(text).map_err(|e| DesignError::Json(e.to_string()))?;
        Design::new(raw.v, raw.blocks, raw.tag)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("design serializes")
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn b(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn tag(&self) -> Option<DesignTag> {
        self.tag
    }

    pub fn with_tag(mut self, tag: DesignTag) -> Self {
        self.tag = Some(tag);
        self
    }

    /// Common block size, if all blocks have the same size.
    pub fn uniform_block_size(&self) -> Option<usize> {
        let k = self.blocks.first()?.len();
        self.blocks.iter().all(|b| b.len() == k).then_some(k)
    }

    /// Number of blocks through each point.
    pub fn replication(&self) -> Vec<usize> {
        let mut r = vec![0; self.v];
        for block in &self.blocks {
            for &p in block {
                r[p] += 1;
            }
        }
        r
    }

    /// Indices of blocks containing every point of `subset`, ascending.
    pub fn blocks_containing(&self, subset: &[usize]) -> Vec<usize> {
        let mut sorted = subset.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        self.blocks
            .iter()
            .enumerate()
            .filter(|(_, b)| is_subset(&sorted, b))
            .map(|(i, _)| i)
            .collect()
    }

    /// Reads `(v, r, b, k)` off the incidence structure and certifies it as
    /// a configuration.
    pub fn as_configuration(&self) -> Result<ConfigurationCertificate, DesignError> {
        let k = self
            .uniform_block_size()
            .ok_or_else(|| DesignError::Domain("blocks do not share one size".into()))?;
        let r = self.replication().first().copied().unwrap_or(0);
        Ok(self.certify_configuration(self.v, r, self.b(), k)?)
    }

    /// The declared `(t, k, λ)` from the tag, certified against the blocks.
    pub fn as_t_design(&self) -> Result<TDesignCertificate, DesignError> {
        match self.tag {
            Some(DesignTag::TDesign { t, k, lambda }) => {
                Ok(self.certify_t_design(t, self.v, k, lambda)?)
            }
            _ => Err(DesignError::Domain(
                "design carries no t-design tag (t, k, λ)".into(),
            )),
        }
    }
}

/// `λ_s = λ·C(v−s, t−s) / C(k−s, t−s)`: the number of blocks through any
/// fixed `s`-subset of a `t-(v, k, λ)` design.
pub fn lambda_s(t: usize, v: usize, k: usize, lambda: usize, s: usize) -> Result<u64, DesignError> {
    if s > t || t > k || k > v {
        return Err(DesignError::Domain(format!(
            "requires s ≤ t ≤ k ≤ v, got s = {s}, t = {t}, k = {k}, v = {v}"
        )));
    }
    let num = lambda as u128 * binomial((v - s) as u64, (t - s) as u64);
    let den = binomial((k - s) as u64, (t - s) as u64);
    if !num.is_multiple_of(den) {
        return Err(DesignError::Inadmissible(format!(
            "λ_{s} = {num}/{den} is not an integer for {t}-({v},{k},{lambda})"
        )));
    }
    u64::try_from(num / den).map_err(|_| DesignError::Domain("λ_s overflows".into()))
}
