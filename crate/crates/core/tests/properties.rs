mod common;

use std::sync::OnceLock;

use common::oracle::{grid_of, is_pda};
use pdakit::constructions::construct;
use pdakit::pda::{direct_product, pda_to_triple, triple_to_pda, Entry, Pda, PdaParams};
use pdakit::sim::{verify_default, VerifyMode};
use proptest::prelude::*;

/// Constructed PDAs with at most 400 cells.
fn pool() -> &'static [Pda] {
    static POOL: OnceLock<Vec<Pda>> = OnceLock::new();
    POOL.get_or_init(|| {
        common::desk_specs()
            .iter()
            .filter_map(|s| construct(s).ok())
            .map(|c| c.pda)
            .filter(|p| p.k() * p.f() <= 400)
            .collect()
    })
}

fn permuted(p: &Pda, rows: &[usize], cols: &[usize], syms: &[u32]) -> Pda {
    let grid = rows
        .iter()
        .map(|&j| {
            cols.iter()
                .map(|&c| match p.get(j, c) {
                    Entry::Star => Entry::Star,
                    Entry::Symbol(s) => Entry::Symbol(syms[s as usize - 1]),
                })
                .collect()
        })
        .collect();
    Pda::new(p.params(), grid).unwrap()
}

fn arb_relabeled() -> impl Strategy<Value = (Pda, Pda)> {
    (0..pool().len()).prop_flat_map(|i| {
        let p = &pool()[i];
        let rows = Just((0..p.f()).collect::<Vec<_>>()).prop_shuffle();
        let cols = Just((0..p.k()).collect::<Vec<_>>()).prop_shuffle();
        let syms = Just((1..=p.s() as u32).collect::<Vec<_>>()).prop_shuffle();
        (Just(p.clone()), rows, cols, syms).prop_map(|(p, r, c, s)| {
            let q = permuted(&p, &r, &c, &s);
            (p, q)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn relabeling_preserves_validity((p, q) in arb_relabeled()) {
        prop_assert!(q.is_valid());
        prop_assert_eq!(q.scheme_parameters(), p.scheme_parameters());
        prop_assert!(q.canonical().equivalent(&q));
        prop_assert!(is_pda(&grid_of(&q), q.k(), q.f(), q.q(), q.s()));
    }

    #[test]
    fn triple_round_trip((_, q) in arb_relabeled()) {
        let back = triple_to_pda(&pda_to_triple(&q).unwrap()).unwrap();
        prop_assert_eq!(back, q.canonical());
    }

    #[test]
    fn text_and_json_round_trip((_, q) in arb_relabeled()) {
        prop_assert_eq!(Pda::parse_text(&q.to_text()).unwrap(), q.clone());
        prop_assert_eq!(Pda::from_json(&q.to_json()).unwrap(), q);
    }

    #[test]
    fn single_cell_mutations_match_the_definition(
        (_, q) in arb_relabeled(),
        cell in any::<prop::sample::Index>(),
        value in any::<prop::sample::Index>(),
    ) {
        let (k, f, s) = (q.k(), q.f(), q.s());
        let at = cell.index(k * f);
        let (j, c) = (at / k, at % k);
        // star, any existing symbol, or a fresh one
        let choices: Vec<Entry> = std::iter::once(Entry::Star).chain((1..=s as u32 + 1).map(Entry::Symbol)).collect();
        let new = choices[value.index(choices.len())];
        prop_assume!(new != q.get(j, c));
        let m = q.with_cell(j, c, new);
        let declared = m.params();
        prop_assert_eq!(m.is_valid(), is_pda(&grid_of(&m), declared.k, declared.f, declared.q, declared.s));
        if new.is_star() != q.get(j, c).is_star() {
            prop_assert!(!m.is_valid(), "star count of column {} changed but the mutant validated", c);
        }
    }

    #[test]
    fn product_parameter_law(i in 0..pool().len(), j in 0..pool().len()) {
        let (a, b) = (&pool()[i], &pool()[j]);
        prop_assume!(a.k() * b.k() * a.f() * b.f() <= 3000);
        let p = direct_product(a, b).unwrap();
        let PdaParams { k, f, q, .. } = p.params();
        prop_assert_eq!((k, f), (a.k() * b.k(), a.f() * b.f()));
        prop_assert_eq!(q, a.f() * b.q() + b.f() * a.q() - a.q() * b.q());
        prop_assert!(p.is_valid());
        let report = verify_default(&p, VerifyMode::Auto { samples: 20, seed: 5 }).unwrap();
        prop_assert!(report.passed(), "{:?}", report.failures.first());
    }
}

#[test]
fn pool_is_large_enough() {
    assert!(pool().len() >= 40, "pool has {}", pool().len());
}
