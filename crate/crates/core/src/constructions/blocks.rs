use std::collections::HashMap;

use crate::combin::{format_set, is_disjoint, is_subset, subsets, subsets_of};
use crate::designs::Design;
use crate::pda::{BinaryMatrix, TripleSystem};

use super::{hypothesis, incidence, ConstructionError};

pub(super) fn check_a(t: usize, k: usize, lambda: usize, t0: usize) -> Result<(), ConstructionError> {
    hypothesis(lambda == 1, "requires λ = 1")?;
    hypothesis(2 * t <= k + 2, "requires t ≤ k/2+1")?;
    hypothesis(t <= 2 * t0 && t0 < t, "requires t/2 ≤ t_0 ≤ t−1")
}

pub(super) fn check_b(t: usize, k: usize, lambda: usize, t1: usize, t2: usize) -> Result<(), ConstructionError> {
    hypothesis(lambda == 1, "requires λ = 1")?;
    hypothesis(k + 2 <= 2 * t && t <= k, "requires k/2+1 ≤ t ≤ k")?;
    hypothesis(t1 >= 1 && t2 >= 1, "requires t_1 ≥ 1 and t_2 ≥ 1")?;
    hypothesis(t1.max(t2) < t, "requires max{t_1,t_2} < t")?;
    hypothesis(t1 + t2 == k, "requires t_1+t_2 = k")
}

pub(super) fn check_lambda(t: usize, t0: usize, t1: usize, t2: usize) -> Result<(), ConstructionError> {
    hypothesis(t1 >= 1 && t2 >= 1, "requires t_1 ≥ 1 and t_2 ≥ 1")?;
    hypothesis(t0 == t1 + t2 && t0 <= t, "requires t_0 = t_1+t_2 ≤ t")
}

fn index_of(sets: &[Vec<usize>]) -> HashMap<&[usize], usize> {
    sets.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect()
}

fn set_labels(sets: &[Vec<usize>]) -> Vec<String> {
    sets.iter().map(|s| format_set(s)).collect()
}

/// `C_XZ` for `X` a family of subsets and `Z` the blocks: containment.
fn containment(sets: &[Vec<usize>], d: &Design) -> BinaryMatrix {
    incidence(sets.len(), d.b(), |i, j| is_subset(&sets[i], &d.blocks()[j]))
}

/// `X = Y` = points, `Z` = blocks; `x ~ y` when `x ≠ y` share a block.
pub fn build_config_triple(d: &Design) -> Result<TripleSystem, ConstructionError> {
    d.as_configuration()?;
    let v = d.v();
    let mut xy = BinaryMatrix::zeros(v, v);
    for block in d.blocks() {
        for &x in block {
            for &y in block {
                if x != y {
                    xy.set(x, y, true);
                }
            }
        }
    }
    let xz = incidence(v, d.b(), |p, j| d.blocks()[j].binary_search(&p).is_ok());
    let points: Vec<String> = (0..v).map(|p| p.to_string()).collect();
    let labels = [points.clone(), points, set_labels(d.blocks())];
    Ok(TripleSystem::new(labels, xy, xz.clone(), xz)?)
}

/// `X = Y` = the `t_0`-subsets, `Z` = blocks of a `t-(v,k,1)` design;
/// `x ~ y` when they are disjoint and their union lies in a block.
pub fn build_t1_triple(d: &Design, t0: usize) -> Result<TripleSystem, ConstructionError> {
    let cert = d.as_t_design()?;
    check_a(cert.t, cert.k, cert.lambda, t0)?;
    let sets = subsets(d.v(), t0);
    let index = index_of(&sets);
    let mut xy = BinaryMatrix::zeros(sets.len(), sets.len());
    for block in d.blocks() {
        let inside = subsets_of(block, t0);
        for a in &inside {
            for b in &inside {
                if is_disjoint(a, b) {
                    xy.set(index[a.as_slice()], index[b.as_slice()], true);
                }
            }
        }
    }
    let xz = containment(&sets, d);
    let labels = set_labels(&sets);
    Ok(TripleSystem::new([labels.clone(), labels, set_labels(d.blocks())], xy, xz.clone(), xz)?)
}

/// `X` = `t_1`-subsets, `Y` = `t_2`-subsets, `Z` = blocks of a
/// `t-(v,k,1)` design; `x ~ y` when `x ∪ y` is a block.
pub fn build_t2_triple(d: &Design, t1: usize, t2: usize) -> Result<TripleSystem, ConstructionError> {
    let cert = d.as_t_design()?;
    check_b(cert.t, cert.k, cert.lambda, t1, t2)?;
    let xs = subsets(d.v(), t1);
    let ys = subsets(d.v(), t2);
    let (ix, iy) = (index_of(&xs), index_of(&ys));
    let mut xy = BinaryMatrix::zeros(xs.len(), ys.len());
    for block in d.blocks() {
        for a in subsets_of(block, t1) {
            let rest: Vec<usize> = block.iter().copied().filter(|p| a.binary_search(p).is_err()).collect();
            xy.set(ix[a.as_slice()], iy[rest.as_slice()], true);
        }
    }
    let labels = [set_labels(&xs), set_labels(&ys), set_labels(d.blocks())];
    Ok(TripleSystem::new(labels, xy, containment(&xs, d), containment(&ys, d))?)
}

/// `(subset, block)` flags with the subset inside the block, ordered by
/// subset then block index.
fn flags(d: &Design, s: usize) -> Vec<(Vec<usize>, usize)> {
    subsets(d.v(), s)
        .into_iter()
        .flat_map(|a| d.blocks_containing(&a).into_iter().map(move |b| (a.clone(), b)))
        .collect()
}

fn flag_labels(f: &[(Vec<usize>, usize)]) -> Vec<String> {
    f.iter().map(|(a, b)| format!("({},B{b})", format_set(a))).collect()
}

/// Flags `(α, B)` of a `t-(v,k,λ)` design with `|α| = t_1, t_2, t_0` for
/// `X`, `Y`, `Z`. Two flags are incident when they share the block and the
/// subsets are disjoint (`C_XY`) or nested (`C_XZ`, `C_YZ`).
pub fn build_tlambda_triple(d: &Design, t0: usize, t1: usize, t2: usize) -> Result<TripleSystem, ConstructionError> {
    let cert = d.as_t_design()?;
    check_lambda(cert.t, t0, t1, t2)?;
    let (xs, ys, zs) = (flags(d, t1), flags(d, t2), flags(d, t0));
    let mut by_block = vec![(Vec::new(), Vec::new()); d.b()];
    for (i, (_, b)) in xs.iter().enumerate() {
        by_block[*b].0.push(i);
    }
    for (j, (_, b)) in ys.iter().enumerate() {
        by_block[*b].1.push(j);
    }
    let mut xy = BinaryMatrix::zeros(xs.len(), ys.len());
    for (in_x, in_y) in &by_block {
        for &i in in_x {
            for &j in in_y {
                if is_disjoint(&xs[i].0, &ys[j].0) {
                    xy.set(i, j, true);
                }
            }
        }
    }
    let nested = |small: &[(Vec<usize>, usize)]| {
        incidence(small.len(), zs.len(), |i, j| small[i].1 == zs[j].1 && is_subset(&small[i].0, &zs[j].0))
    };
    let labels = [flag_labels(&xs), flag_labels(&ys), flag_labels(&zs)];
    Ok(TripleSystem::new(labels, xy, nested(&xs), nested(&ys))?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designs::{build_complete_design, build_transversal, catalog_lookup};
    use crate::pda::Condition;

    fn degrees(t: &TripleSystem) -> (usize, usize, usize, usize) {
        let r = t.check_conditions();
        assert!(r.passes_all(&Condition::SUFFICIENT), "{:?}", r.summary());
        (r.d_x.unwrap(), r.d_y.unwrap(), r.d_z.unwrap(), r.e6_degree.unwrap())
    }

    #[test]
    fn configuration_triples() {
        let t = build_config_triple(&catalog_lookup("fano").unwrap()).unwrap();
        assert_eq!(degrees(&t), (3, 3, 3, 2));
        let td = build_config_triple(&build_transversal(3, 3).unwrap()).unwrap();
        assert_eq!(td.sizes().2, 9);
        assert_eq!(degrees(&td), (3, 3, 3, 2));
        // blocks of size 2 partitioning the points
        let matching = Design::new(4, vec![vec![0, 1], vec![2, 3]], None).unwrap();
        assert_eq!(degrees(&build_config_triple(&matching).unwrap()).3, 1);
    }

    #[test]
    fn tdesign_a_triples() {
        let t = build_t1_triple(&catalog_lookup("fano").unwrap(), 1).unwrap();
        assert_eq!(degrees(&t), (3, 3, 3, 2));
        let t = build_t1_triple(&catalog_lookup("sqs8").unwrap(), 2).unwrap();
        assert_eq!(degrees(&t), (3, 3, 6, 1));
        let err = build_t1_triple(&catalog_lookup("fano").unwrap(), 2).unwrap_err();
        assert_eq!(err.to_string(), "requires t/2 ≤ t_0 ≤ t−1");
    }

    #[test]
    fn tdesign_b_triples() {
        let t = build_t2_triple(&build_complete_design(4, 2).unwrap(), 1, 1).unwrap();
        assert_eq!(t.sizes(), (4, 4, 6));
        assert_eq!(degrees(&t).3, 1);
        let t = build_t2_triple(&build_complete_design(5, 3).unwrap(), 1, 2).unwrap();
        assert_eq!(t.sizes(), (5, 10, 10));
        assert_eq!(degrees(&t).3, 1);
        let err = build_t2_triple(&catalog_lookup("fano").unwrap(), 1, 2).unwrap_err();
        assert_eq!(err.to_string(), "requires k/2+1 ≤ t ≤ k");
    }

    #[test]
    fn tdesign_lambda_triples() {
        let t = build_tlambda_triple(&catalog_lookup("fano").unwrap(), 2, 1, 1).unwrap();
        assert_eq!(t.sizes(), (21, 21, 21));
        assert_eq!(degrees(&t), (2, 2, 2, 1));
        let t = build_tlambda_triple(&build_complete_design(4, 2).unwrap(), 2, 1, 1).unwrap();
        assert_eq!(t.sizes(), (12, 12, 6));
        let err = build_tlambda_triple(&catalog_lookup("fano").unwrap(), 3, 1, 2).unwrap_err();
        assert_eq!(err.to_string(), "requires t_0 = t_1+t_2 ≤ t");
    }

    #[test]
    fn untagged_design_rejected() {
        let d = Design::new(4, vec![vec![0, 1], vec![2, 3]], None).unwrap();
        assert!(matches!(build_t1_triple(&d, 1), Err(ConstructionError::Design(_))));
    }
}
