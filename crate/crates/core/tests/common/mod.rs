#![allow(dead_code)]

pub mod lattice;
pub mod oracle;

use pdakit::constructions::{ConstructionSpec, Family, NamedDesign};
use pdakit::designs::{build_complete_design, build_steiner_triple, build_transversal, catalog_lookup, Design, DesignTag};
use pdakit::pda::Orientation;

pub fn named(name: &str, design: Design) -> NamedDesign {
    NamedDesign::new(name, design)
}

pub fn catalog(name: &str) -> NamedDesign {
    named(name, catalog_lookup(name).unwrap())
}

pub fn complete(v: usize, k: usize) -> NamedDesign {
    named(&format!("complete:{v}:{k}"), build_complete_design(v, k).unwrap())
}

/// All 3-subsets of a 5-set read as a 2-(5,3,3) design.
pub fn complete_5_3_as_2_design() -> NamedDesign {
    let d = build_complete_design(5, 3).unwrap().with_tag(DesignTag::TDesign { t: 2, k: 3, lambda: 3 });
    named("complete:5:3 as 2-(5,3,3)", d)
}

/// Every family instance exercised at desk scale, orientation left to the
/// caller: projective geometry for q ∈ {2,3}, k ≤ 4 and designs on at most
/// 13 points.
pub fn desk_families() -> Vec<Family> {
    let mut out = Vec::new();
    for q in [2, 3] {
        for k in 2..=4 {
            for m in 1..k {
                for t in 1..=k - m {
                    out.push(Family::ProjectiveGeometry { q, k, m, t });
                }
            }
        }
    }
    let configs = [
        catalog("fano"),
        catalog("affine-9"),
        catalog("pg2-3"),
        named("sts:13", build_steiner_triple(13).unwrap()),
        named("td:3:3", build_transversal(3, 3).unwrap()),
        named("td:3:4", build_transversal(3, 4).unwrap()),
        named("td:4:3", build_transversal(4, 3).unwrap()),
    ];
    out.extend(configs.into_iter().map(|design| Family::Configuration { design }));
    for (design, t0) in [(catalog("fano"), 1), (catalog("affine-9"), 1), (catalog("pg2-3"), 1), (catalog("sqs8"), 2)] {
        out.push(Family::TDesignA { design, t0 });
    }
    for (design, t1, t2) in [
        (complete(4, 2), 1, 1),
        (complete(5, 3), 1, 2),
        (complete(5, 3), 2, 1),
        (complete(6, 3), 1, 2),
        (complete(5, 4), 1, 3),
        (complete(5, 4), 2, 2),
        (catalog("sqs8"), 2, 2),
    ] {
        out.push(Family::TDesignB { design, t1, t2 });
    }
    for (design, t0, t1, t2) in [
        (catalog("fano"), 2, 1, 1),
        (catalog("sqs8"), 2, 1, 1),
        (catalog("sqs8"), 3, 1, 2),
        (catalog("sqs8"), 3, 2, 1),
        (complete(4, 2), 2, 1, 1),
        (complete_5_3_as_2_design(), 2, 1, 1),
        (catalog("affine-9"), 2, 1, 1),
    ] {
        out.push(Family::TDesignLambda { design, t0, t1, t2 });
    }
    out
}

pub fn desk_specs() -> Vec<ConstructionSpec> {
    desk_families()
        .into_iter()
        .flat_map(|f| Orientation::ALL.map(|o| ConstructionSpec::new(f.clone(), o)))
        .collect()
}
