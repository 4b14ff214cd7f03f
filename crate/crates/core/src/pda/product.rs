use super::{pda_to_triple, triple_to_pda, Pda, PdaError, TripleSystem};

/// Direct product of two valid PDAs, built as the Kronecker product of
/// their triple systems. Row `(j1, j2)` sits at `j1·F2 + j2` and column
/// `(k1, k2)` at `k1·K2 + k2`; a cell is a star when either factor cell is,
/// otherwise it carries the symbol pair. The result has `K = K1·K2`,
/// `F = F1·F2`, `Q = F1·Q2 + F2·Q1 − Q1·Q2` and `S = S1·S2`.
pub fn direct_product(a: &Pda, b: &Pda) -> Result<Pda, PdaError> {
    let ta = pda_to_triple(a)?;
    let tb = pda_to_triple(b)?;
    triple_to_pda(&triple_product(&ta, &tb))
}

/// Kronecker product of two triple systems; labels are `(a,b)` pairs.
pub fn triple_product(a: &TripleSystem, b: &TripleSystem) -> TripleSystem {
    let pairs = |la: &[String], lb: &[String]| -> Vec<String> {
        la.iter().flat_map(|x| lb.iter().map(move |y| format!("({x},{y})"))).collect()
    };
    let labels = [
        pairs(a.labels_x(), b.labels_x()),
        pairs(a.labels_y(), b.labels_y()),
        pairs(a.labels_z(), b.labels_z()),
    ];
    TripleSystem::new(
        labels,
        a.xy().kron(b.xy()),
        a.xz().kron(b.xz()),
        a.yz().kron(b.yz()),
    )
    .expect("Kronecker products have matching shapes")
}
