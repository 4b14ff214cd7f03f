use super::triple::first_failure;
use super::{BinaryMatrix, Condition, Entry, Pda, PdaError, PdaParams, TripleSystem};

/// Triple system of a valid PDA: `X` = rows, `Y` = symbols, `Z` = columns.
/// `C_XZ` marks non-star cells, `C_XY(x,y)` marks rows where `y` occurs and
/// `C_YZ(y,z)` marks columns where `y` occurs.
pub fn pda_to_triple(p: &Pda) -> Result<TripleSystem, PdaError> {
    p.validate()?;
    let PdaParams { k, f, s, .. } = p.params();
    let mut xy = BinaryMatrix::zeros(f, s);
    let mut xz = BinaryMatrix::zeros(f, k);
    let mut yz = BinaryMatrix::zeros(s, k);
    for j in 0..f {
        for (c, e) in p.row(j).iter().enumerate() {
            if let Entry::Symbol(sym) = *e {
                let y = sym as usize - 1;
                xz.set(j, c, true);
                xy.set(j, y, true);
                yz.set(y, c, true);
            }
        }
    }
    let labels = [
        (1..=f).map(|j| format!("row{j}")).collect(),
        (1..=s).map(|y| format!("s{y}")).collect(),
        (1..=k).map(|c| format!("col{c}")).collect(),
    ];
    TripleSystem::new(labels, xy, xz, yz)
}

/// PDA of a triple system satisfying E1–E5: cell `(x,z)` is a star when
/// `C_XZ(x,z) = 0`, otherwise the unique `y` with `C_XY(x,y) = C_YZ(y,z) = 1`.
/// Symbols are numbered by first occurrence in row-major order.
pub fn triple_to_pda(t: &TripleSystem) -> Result<Pda, PdaError> {
    if let Some((condition, witness)) = first_failure(t, &Condition::EQUIVALENCE) {
        if let (Condition::E4, super::Witness::Pair { first, second, count }) = (condition, &witness) {
            if *count > 1 {
                return Err(PdaError::Structural { x: *first, z: *second, count: *count });
            }
        }
        return Err(PdaError::Condition { condition, witness });
    }
    let (nx, _, nz) = t.sizes();
    let d_z = (0..nz).map(|z| (0..nx).filter(|&x| t.xz().get(x, z)).count()).next().unwrap_or(0);
    let q = nx - d_z;
    if q == 0 || q >= nx {
        return Err(PdaError::Inadmissible(format!(
            "Q = |X| - D_Z = {nx} - {d_z} = {q} must satisfy 0 < Q < F = {nx}"
        )));
    }
    let yz_t = t.yz().transpose();
    let mut labels = vec![0u32; t.sizes().1];
    let mut next = 0u32;
    let mut grid = Vec::with_capacity(nx * nz);
    for x in 0..nx {
        for z in 0..nz {
            if !t.xz().get(x, z) {
                grid.push(Entry::Star);
                continue;
            }
            let mut ys = t.xy().and_ones(x, &yz_t, z);
            let (Some(y), None) = (ys.next(), ys.next()) else {
                let count = t.xy().and_count(x, &yz_t, z);
                return Err(PdaError::Structural { x, z, count });
            };
            if labels[y] == 0 {
                next += 1;
                labels[y] = next;
            }
            grid.push(Entry::Symbol(labels[y]));
        }
    }
    let params = PdaParams::new(nz, nx, q, next as usize);
    let pda = Pda::from_grid(params, grid)?;
    debug_assert!(pda.is_valid());
    Ok(pda)
}
