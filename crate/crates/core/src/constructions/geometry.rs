use crate::geometry::{enumerate_subspaces, FieldSpec};
use crate::pda::TripleSystem;

use super::{hypothesis, incidence, ConstructionError};

pub(super) fn check_pg(k: usize, m: usize, t: usize) -> Result<(), ConstructionError> {
    hypothesis(m >= 1 && t >= 1, "requires m ≥ 1 and t ≥ 1")?;
    hypothesis(m + t <= k, "requires m+t ≤ k")
}

/// `X`, `Y`, `Z` are the `t`-, `m`- and `(m+t)`-dimensional subspaces of
/// `F_q^k`. `C_XY` marks trivial intersection; `C_XZ`, `C_YZ` containment.
pub fn build_pg_triple(q: u32, k: usize, m: usize, t: usize) -> Result<TripleSystem, ConstructionError> {
    check_pg(k, m, t)?;
    let field = FieldSpec::new(q)?;
    let xs = enumerate_subspaces(&field, k, t)?;
    let ys = enumerate_subspaces(&field, k, m)?;
    let zs = enumerate_subspaces(&field, k, m + t)?;
    let same_field = "subspaces share one field";
    let xy = incidence(xs.len(), ys.len(), |i, j| xs[i].meets_trivially(&ys[j]).expect(same_field));
    let xz = incidence(xs.len(), zs.len(), |i, j| zs[j].contains(&xs[i]).expect(same_field));
    let yz = incidence(ys.len(), zs.len(), |i, j| zs[j].contains(&ys[i]).expect(same_field));
    let labels = |v: &[crate::geometry::Subspace]| v.iter().map(ToString::to_string).collect();
    Ok(TripleSystem::new([labels(&xs), labels(&ys), labels(&zs)], xy, xz, yz)?)
}
