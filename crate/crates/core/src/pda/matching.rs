use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::triple::{check_e3, check_e6, first_failure};
use super::{BinaryMatrix, Condition, PdaError, TripleSystem};

/// Perfect matching of a `d`-regular bipartite graph (`d ≥ 1`) with sides
/// `0..left` and `0..right`. Returns the partner of each left vertex.
///
/// Augmenting paths are searched with neighbours scanned in ascending
/// order, so the output depends only on the edge set.
pub fn perfect_matching(left: usize, right: usize, edges: &[(usize, usize)]) -> Result<Vec<usize>, PdaError> {
    if left != right {
        return Err(PdaError::Matching(format!(
            "sides have {left} and {right} vertices; a regular bipartite graph needs equal sides"
        )));
    }
    let mut adj = vec![Vec::new(); left];
    for &(a, b) in edges {
        if a >= left || b >= right {
            return Err(PdaError::Matching(format!("edge ({a},{b}) leaves the vertex sets")));
        }
        adj[a].push(b);
    }
    for list in &mut adj {
        list.sort_unstable();
        list.dedup();
    }
    let right_deg: Vec<usize> = {
        let mut deg = vec![0; right];
        for list in &adj {
            for &b in list {
                deg[b] += 1;
            }
        }
        deg
    };
    let d = adj.first().map_or(0, Vec::len);
    if d == 0 && left > 0 {
        return Err(PdaError::Matching("graph has a vertex of degree 0".into()));
    }
    if let Some(a) = adj.iter().position(|l| l.len() != d) {
        return Err(PdaError::Matching(format!(
            "left vertex {a} has degree {}, expected {d}; the graph is not regular",
            adj[a].len()
        )));
    }
    if let Some(b) = right_deg.iter().position(|&n| n != d) {
        return Err(PdaError::Matching(format!(
            "right vertex {b} has degree {}, expected {d}; the graph is not regular",
            right_deg[b]
        )));
    }
    let mut match_right: Vec<Option<usize>> = vec![None; right];
    for a in 0..left {
        let mut seen = vec![false; right];
        if !augment(a, &adj, &mut match_right, &mut seen) {
            // unreachable for regular graphs
            return Err(PdaError::Matching(format!("no augmenting path from left vertex {a}")));
        }
    }
    let mut match_left = vec![0; left];
    for (b, a) in match_right.iter().enumerate() {
        match_left[a.expect("every right vertex matched")] = b;
    }
    Ok(match_left)
}

fn augment(a: usize, adj: &[Vec<usize>], match_right: &mut [Option<usize>], seen: &mut [bool]) -> bool {
    for &b in &adj[a] {
        if seen[b] {
            continue;
        }
        seen[b] = true;
        if match_right[b].is_none_or(|other| augment(other, adj, match_right, seen)) {
            match_right[b] = Some(a);
            return true;
        }
    }
    false
}

/// Replaces `C_XY` by the union over `z` of a perfect matching of `G_z`.
pub fn complete_matching(t: &TripleSystem) -> Result<TripleSystem, PdaError> {
    if let Some(witness) = check_e3(t) {
        return Err(PdaError::Condition { condition: Condition::E3, witness });
    }
    if let Some(witness) = check_e6(t) {
        return Err(PdaError::Condition { condition: Condition::E6, witness });
    }
    let xz_t = t.xz().transpose();
    let yz_t = t.yz().transpose();
    let (nx, ny, nz) = t.sizes();
    let per_z: Vec<Vec<(usize, usize)>> = (0..nz)
        .into_par_iter()
        .map(|z| {
            let u1: Vec<usize> = xz_t.row_ones(z).collect();
            let u2: Vec<usize> = yz_t.row_ones(z).collect();
            let mut pos = vec![usize::MAX; ny];
            for (i, &y) in u2.iter().enumerate() {
                pos[y] = i;
            }
            let edges: Vec<(usize, usize)> = u1
                .iter()
                .enumerate()
                .flat_map(|(i, &x)| t.xy().and_ones(x, &yz_t, z).map(move |y| (i, y)).collect::<Vec<_>>())
                .map(|(i, y)| (i, pos[y]))
                .collect();
            let m = perfect_matching(u1.len(), u2.len(), &edges)?;
            Ok(m.iter().enumerate().map(|(i, &j)| (u1[i], u2[j])).collect())
        })
        .collect::<Result<_, PdaError>>()?;
    let mut xy = BinaryMatrix::zeros(nx, ny);
    for (x, y) in per_z.into_iter().flatten() {
        xy.set(x, y, true);
    }
    Ok(t.with_xy(xy))
}

/// Role assignment used to read a PDA off a matched triple. Set 3 keeps
/// the roles; sets 1 and 2 permute them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Orientation {
    Set1,
    Set2,
    Set3,
}

impl Orientation {
    pub const ALL: [Orientation; 3] = [Orientation::Set1, Orientation::Set2, Orientation::Set3];

    pub fn from_index(i: u8) -> Option<Self> {
        match i {
            1 => Some(Orientation::Set1),
            2 => Some(Orientation::Set2),
            3 => Some(Orientation::Set3),
            _ => None,
        }
    }

    pub fn index(self) -> u8 {
        match self {
            Orientation::Set1 => 1,
            Orientation::Set2 => 2,
            Orientation::Set3 => 3,
        }
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index())
    }
}

/// Relabels a matched triple so that its PDA has the chosen parameter set:
///
/// * set 1: rows `Y`, columns `X`, symbols `Z`; `Q = |Y| − D_X`
/// * set 2: rows `Z`, columns `X`, symbols `Y`; `Q = |Z| − D_X`
/// * set 3: rows `X`, columns `Z`, symbols `Y`; `Q = |X| − D_Z`
pub fn orient(t: &TripleSystem, orientation: Orientation) -> TripleSystem {
    let ([lx, ly, lz], [xy, xz, yz]) = t.clone().into_parts();
    let (labels, mats) = match orientation {
        Orientation::Set3 => ([lx, ly, lz], [xy, xz, yz]),
        Orientation::Set1 => ([ly, lz, lx], [yz, xy.transpose(), xz.transpose()]),
        Orientation::Set2 => ([lz, ly, lx], [yz.transpose(), xz.transpose(), xy.transpose()]),
    };
    let [a, b, c] = mats;
    TripleSystem::new(labels, a, b, c).expect("role permutation preserves shapes")
}

/// Checks E1′, E2′ and E7, then returns the triples for sets 1, 2, 3.
pub fn all_orientations(t: &TripleSystem) -> Result<[TripleSystem; 3], PdaError> {
    let degrees = [Condition::E1Prime, Condition::E2Prime, Condition::E7];
    if let Some((condition, witness)) = first_failure(t, &degrees) {
        return Err(PdaError::Condition { condition, witness });
    }
    Ok(Orientation::ALL.map(|o| orient(t, o)))
}
