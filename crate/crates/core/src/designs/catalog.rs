use std::path::Path;

use super::{build_complete_design, build_steiner_triple, build_transversal, Design, DesignError, DesignTag};
use crate::combin::subsets;

/// Names accepted by [`catalog_lookup`], with a one-line description.
pub const CATALOG: &[(&str, &str)] = &[
    ("fano", "2-(7,3,1): lines {i, i+1, i+3} mod 7"),
    ("sqs8", "3-(8,4,1): 4-subsets of F_2^3 summing to zero"),
    ("affine-9", "2-(9,3,1): lines of the affine plane over F_3"),
    ("pg2-3", "2-(13,4,1): translates of {0,1,3,9} mod 13"),
];

/// A certified design from the built-in catalog.
pub fn catalog_lookup(name: &str) -> Result<Design, DesignError> {
    let (v, blocks, tag) = match name {
        "fano" => (7, cyclic(7, &[0, 1, 3]), (2, 3)),
        "sqs8" => {
            let blocks = subsets(8, 4)
                .into_iter()
                .filter(|b| b.iter().fold(0, |acc, &p| acc ^ p) == 0)
                .collect();
            (8, blocks, (3, 4))
        }
        "affine-9" => {
            let pt = |x: usize, y: usize| 3 * x + y;
            let mut blocks = Vec::new();
            for c in 0..3 {
                blocks.push((0..3).map(|y| pt(c, y)).collect());
                for slope in 0..3 {
                    blocks.push((0..3).map(|x| pt(x, (slope * x + c) % 3)).collect());
                }
            }
            (9, blocks, (2, 3))
        }
        "pg2-3" => (13, cyclic(13, &[0, 1, 3, 9]), (2, 4)),
        _ => return Err(DesignError::Unknown(name.to_string())),
    };
    let (t, k) = tag;
    let design = Design::new(v, blocks, Some(DesignTag::TDesign { t, k, lambda: 1 }))?;
    design.as_t_design()?;
    Ok(design)
}

fn cyclic(v: usize, base: &[usize]) -> Vec<Vec<usize>> {
    (0..v).map(|i| base.iter().map(|&p| (p + i) % v).collect()).collect()
}

/// Resolves a design reference: a catalog name, `complete:v:k`, `sts:v`,
/// `td:k:n`, or a path to a design JSON file.
pub fn resolve_design(spec: &str) -> Result<Design, DesignError> {
    let parts: Vec<&str> = spec.split(':').collect();
    let nums = |n: usize| -> Result<Vec<usize>, DesignError> {
        if parts.len() != n + 1 {
            return Err(DesignError::Unknown(spec.to_string()));
        }
        parts[1..]
            .iter()
            .map(|p| p.parse().map_err(|_| DesignError::Unknown(spec.to_string())))
            .collect()
    };
    match parts[0] {
        "complete" => {
            let a = nums(2)?;
            build_complete_design(a[0], a[1])
        }
        "sts" => build_steiner_triple(nums(1)?[0]),
        "td" => {
            let a = nums(2)?;
            build_transversal(a[0], a[1])
        }
        _ if CATALOG.iter().any(|(n, _)| *n == spec) => catalog_lookup(spec),
        _ if Path::new(spec).is_file() => {
            let text = std::fs::read_to_string(spec).map_err(|e| DesignError::Json(e.to_string()))?;
            Design::from_json(&text)
        }
        _ => Err(DesignError::Unknown(spec.to_string())),
    }
}
