use super::{Design, DesignError, DesignTag};
use crate::combin::subsets;
use crate::geometry::{prime_power, FieldSpec};

/// All `k`-subsets of `0..v`: a `k-(v,k,1)` design.
pub fn build_complete_design(v: usize, k: usize) -> Result<Design, DesignError> {
    if !(v > k && k >= 1) {
        return Err(DesignError::Domain(format!(
            "complete design requires v > k ≥ 1, got v = {v}, k = {k}"
        )));
    }
    Design::new(v, subsets(v, k), Some(DesignTag::TDesign { t: k, k, lambda: 1 }))
}

/// Steiner triple system `2-(v,3,1)`: Bose construction for `v ≡ 3 (mod 6)`,
/// Skolem construction for `v ≡ 1 (mod 6)`.
pub fn build_steiner_triple(v: usize) -> Result<Design, DesignError> {
    let blocks = match v % 6 {
        3 if v >= 9 => bose(v / 6),
        1 if v >= 7 => skolem(v / 6),
        _ => {
            return Err(DesignError::Domain(format!(
                "Steiner triple system requires v ≡ 1 or 3 (mod 6) and v ≥ 7, got v = {v}"
            )))
        }
    };
    Design::new(v, blocks, Some(DesignTag::TDesign { t: 2, k: 3, lambda: 1 }))
}

fn bose(n: usize) -> Vec<Vec<usize>> {
    let m = 2 * n + 1;
    let pt = |x: usize, i: usize| x + (i % 3) * m;
    let op = |x: usize, y: usize| ((x + y) * (n + 1)) % m;
    let mut blocks: Vec<Vec<usize>> = (0..m).map(|x| vec![pt(x, 0), pt(x, 1), pt(x, 2)]).collect();
    for x in 0..m {
        for y in x + 1..m {
            for i in 0..3 {
                blocks.push(vec![pt(x, i), pt(y, i), pt(op(x, y), i + 1)]);
            }
        }
    }
    blocks
}

fn skolem(n: usize) -> Vec<Vec<usize>> {
    let m = 2 * n;
    let inf = 3 * m;
    let pt = |x: usize, i: usize| x + (i % 3) * m;
    // half-idempotent commutative quasigroup of order 2n
    let op = |x: usize, y: usize| {
        let s = (x + y) % m;
        if s.is_multiple_of(2) {
            s / 2
        } else {
            (s - 1) / 2 + n
        }
    };
    let mut blocks = Vec::new();
    for x in 0..n {
        blocks.push(vec![pt(x, 0), pt(x, 1), pt(x, 2)]);
        for i in 0..3 {
            blocks.push(vec![inf, pt(x + n, i), pt(x, i + 1)]);
        }
    }
    for x in 0..m {
        for y in x + 1..m {
            for i in 0..3 {
                blocks.push(vec![pt(x, i), pt(y, i), pt(op(x, y), i + 1)]);
            }
        }
    }
    blocks
}

/// Transversal design `TD(k,n)` for prime-power `n`, as a configuration
/// `((kn)_n, (n²)_k)`. Point `i·n + x` is element `x` of group `i`; block
/// `(a,b)` meets group `i < n` in `a·i + b` and group `n` (if present) in `a`.
pub fn build_transversal(k: usize, n: usize) -> Result<Design, DesignError> {
    if prime_power(n as u32).is_none() {
        return Err(DesignError::Domain(format!("TD(k,n) requires n to be a prime power, got n = {n}")));
    }
    if !(2..=n + 1).contains(&k) {
        return Err(DesignError::Domain(format!(
            "TD(k,n) requires 2 ≤ k ≤ n+1, got k = {k}, n = {n}"
        )));
    }
    let field = FieldSpec::new(n as u32).map_err(|e| DesignError::Domain(e.to_string()))?;
    let mut blocks = Vec::with_capacity(n * n);
    for a in field.elements() {
        for b in field.elements() {
            let block = (0..k)
                .map(|i| {
                    let x = if i < n { field.add(field.mul(a, i as u32), b) } else { a };
                    i * n + x as usize
                })
                .collect();
            blocks.push(block);
        }
    }
    Design::new(k * n, blocks, Some(DesignTag::Configuration { r: n, b: n * n, k }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_designs() {
        let d = build_complete_design(4, 2).unwrap();
        assert_eq!(d.b(), 6);
        assert_eq!(d.as_t_design().unwrap().b, 6);
        assert_eq!(build_complete_design(5, 3).unwrap().b(), 10);
        assert!(build_complete_design(3, 3).is_err());
        assert!(build_complete_design(3, 0).is_err());
    }

    #[test]
    fn steiner_triple_systems_certify() {
        for v in (7..=31).filter(|v| v % 6 == 1 || v % 6 == 3) {
            let d = build_steiner_triple(v).unwrap();
            assert_eq!(d.b(), v * (v - 1) / 6, "v = {v}");
            d.certify_t_design(2, v, 3, 1).unwrap();
        }
    }

    #[test]
    fn steiner_triple_rejects_bad_orders() {
        for v in [0, 1, 3, 4, 5, 6, 8, 10, 11, 12] {
            match build_steiner_triple(v) {
                Err(DesignError::Domain(msg)) => assert!(msg.contains("(mod 6)")),
                other => panic!("v = {v}: {other:?}"),
            }
        }
    }

    #[test]
    fn transversal_designs_certify() {
        for n in [2usize, 3, 4, 5, 7, 8, 9] {
            for k in 2..=n + 1 {
                let d = build_transversal(k, n).unwrap();
                let cert = d.certify_configuration(k * n, n, n * n, k).unwrap();
                assert_eq!(cert.b, n * n);
            }
        }
        let c4 = build_transversal(2, 2).unwrap();
        assert_eq!(c4.blocks(), &[vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3]]);
        assert!(build_transversal(5, 3).is_err());
        assert!(build_transversal(3, 6).is_err());
        assert!(build_transversal(1, 3).is_err());
    }

    #[test]
    fn transversal_pair_bound_is_not_tight() {
        // points in the same group never share a block
        let d = build_transversal(4, 3).unwrap();
        let cert = d.as_configuration().unwrap();
        assert!(!cert.bound_tight);
    }

    #[test]
    fn builders_are_deterministic() {
        assert_eq!(build_steiner_triple(13).unwrap(), build_steiner_triple(13).unwrap());
        assert_eq!(build_transversal(3, 4).unwrap(), build_transversal(3, 4).unwrap());
    }
}
