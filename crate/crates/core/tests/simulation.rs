use pdakit::constructions::{construct, ConstructionSpec, Family};
use pdakit::pda::{direct_product, Orientation, Pda};
use pdakit::sim::{deliver, place, verify_scheme, FileLibrary, VerifyMode};

fn pg_7747() -> Pda {
    let family = Family::ProjectiveGeometry { q: 2, k: 3, m: 1, t: 1 };
    construct(&ConstructionSpec::new(family, Orientation::Set1)).unwrap().pda
}

#[test]
fn placement_holds_q_times_n_packets() {
    let p = pg_7747();
    let lib = FileLibrary::random(7, 7, 16, 11).unwrap();
    for cache in place(&p, &lib).unwrap() {
        assert_eq!(cache.len(), 28);
    }
}

#[test]
fn all_same_demand_xors_one_file() {
    let p = pg_7747();
    let lib = FileLibrary::random(3, 7, 8, 4).unwrap();
    let log = deliver(&p, &lib, &[2; 7]).unwrap();
    for (s, cells) in p.cells_by_symbol().iter().enumerate() {
        let mut want = vec![0u8; 8];
        for &(j, _) in cells {
            for (w, b) in want.iter_mut().zip(lib.packet(2, j)) {
                *w ^= b;
            }
        }
        assert_eq!(log.transmissions[s], want);
    }
}

#[test]
fn distinct_demands_decode() {
    let lib = FileLibrary::random(7, 7, 16, 5).unwrap();
    let r = verify_scheme(&pg_7747(), &lib, VerifyMode::Adversarial).unwrap();
    assert!(r.passed());
    assert_eq!(r.rate, "1");
}

#[test]
fn product_sampled_and_adversarial() {
    let p = pg_7747();
    let prod = direct_product(&p, &p).unwrap();
    assert_eq!((prod.k(), prod.f(), prod.q()), (49, 49, 40));
    let lib = FileLibrary::random(2, 49, 16, 1).unwrap();
    for mode in [VerifyMode::Sampled { samples: 200, seed: 1 }, VerifyMode::Adversarial] {
        let r = verify_scheme(&prod, &lib, mode).unwrap();
        assert!(r.passed(), "{:?}", r.failures.first());
        assert_eq!(r.bytes, prod.s() * 16);
    }
}
