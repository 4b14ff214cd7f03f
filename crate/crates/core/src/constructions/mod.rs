//! Triple systems built from projective geometry and block designs, their
//! closed-form parameter rows, and the pipeline that turns a
//! [`ConstructionSpec`] into a validated [`Pda`].

mod blocks;
mod geometry;
mod params;
mod table;

use rayon::prelude::*;
use serde_json::json;

use crate::designs::{Design, DesignError};
use crate::geometry::GeometryError;
use crate::pda::{complete_matching, orient, triple_to_pda, BinaryMatrix, Orientation, Pda, PdaError, TripleSystem};

pub use blocks::{build_config_triple, build_t1_triple, build_t2_triple, build_tlambda_triple};
pub use geometry::build_pg_triple;
pub use params::{
    bibd_rate_identity, closed_form, configuration_parameters, configuration_rate_bound, mn_baseline,
    pg_parameters, tdesign_a_parameters, tdesign_b_parameters, tdesign_lambda_parameters, ParameterTableRow,
};
pub use table::{tabulate_design, tabulate_pg, to_csv, to_text};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConstructionError {
    /// A family hypothesis fails; the message names the inequality.
    #[error("{0}")]
    Hypothesis(String),
    #[error(transparent)]
    Design(#[from] DesignError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Pda(#[from] PdaError),
    #[error("closed form is not integral: {0}")]
    NonIntegral(String),
}

/// A design together with the name it was resolved from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedDesign {
    pub name: String,
    pub design: Design,
}

impl NamedDesign {
    pub fn new(name: impl Into<String>, design: Design) -> Self {
        Self { name: name.into(), design }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    ProjectiveGeometry { q: u32, k: usize, m: usize, t: usize },
    Configuration { design: NamedDesign },
    TDesignA { design: NamedDesign, t0: usize },
    TDesignB { design: NamedDesign, t1: usize, t2: usize },
    TDesignLambda { design: NamedDesign, t0: usize, t1: usize, t2: usize },
}

impl Family {
    /// Short identifier used on the command line and in tables.
    pub fn id(&self) -> &'static str {
        match self {
            Family::ProjectiveGeometry { .. } => "pg",
            Family::Configuration { .. } => "config",
            Family::TDesignA { .. } => "tdesign-a",
            Family::TDesignB { .. } => "tdesign-b",
            Family::TDesignLambda { .. } => "tdesign-lambda",
        }
    }

    /// Parameters as `key=value` pairs joined by commas.
    pub fn describe(&self) -> String {
        match self {
            Family::ProjectiveGeometry { q, k, m, t } => format!("q={q},k={k},m={m},t={t}"),
            Family::Configuration { design } => format!("design={}", design.name),
            Family::TDesignA { design, t0 } => format!("design={},t0={t0}", design.name),
            Family::TDesignB { design, t1, t2 } => format!("design={},t1={t1},t2={t2}", design.name),
            Family::TDesignLambda { design, t0, t1, t2 } => {
                format!("design={},t0={t0},t1={t1},t2={t2}", design.name)
            }
        }
    }

    /// The unmatched triple system of this family.
    pub fn build_triple(&self) -> Result<TripleSystem, ConstructionError> {
        match self {
            Family::ProjectiveGeometry { q, k, m, t } => build_pg_triple(*q, *k, *m, *t),
            Family::Configuration { design } => build_config_triple(&design.design),
            Family::TDesignA { design, t0 } => build_t1_triple(&design.design, *t0),
            Family::TDesignB { design, t1, t2 } => build_t2_triple(&design.design, *t1, *t2),
            Family::TDesignLambda { design, t0, t1, t2 } => build_tlambda_triple(&design.design, *t0, *t1, *t2),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionSpec {
    pub family: Family,
    pub orientation: Orientation,
}

impl ConstructionSpec {
    pub fn new(family: Family, orientation: Orientation) -> Self {
        Self { family, orientation }
    }

    fn provenance(&self) -> serde_json::Value {
        json!({
            "family": self.family.id(),
            "params": self.family.describe(),
            "orientation": self.orientation.index(),
        })
    }
}

/// Every stage of one construction run.
#[derive(Debug, Clone)]
pub struct Construction {
    pub triple: TripleSystem,
    pub matched: TripleSystem,
    pub oriented: TripleSystem,
    pub pda: Pda,
    pub row: ParameterTableRow,
}

/// Builds the family's triple, completes it by matchings, orients it and
/// reads off the PDA. The closed-form row is evaluated independently.
pub fn construct(spec: &ConstructionSpec) -> Result<Construction, ConstructionError> {
    let row = closed_form(spec)?;
    let triple = spec.family.build_triple()?;
    let matched = complete_matching(&triple)?;
    let oriented = orient(&matched, spec.orientation);
    let pda = triple_to_pda(&oriented)?.with_provenance(spec.provenance());
    Ok(Construction { triple, matched, oriented, pda, row })
}

/// Incidence matrix with rows filled in parallel.
pub(crate) fn incidence(rows: usize, cols: usize, f: impl Fn(usize, usize) -> bool + Sync) -> BinaryMatrix {
    let ones: Vec<Vec<usize>> = (0..rows)
        .into_par_iter()
        .map(|r| (0..cols).filter(|&c| f(r, c)).collect())
        .collect();
    let mut m = BinaryMatrix::zeros(rows, cols);
    for (r, cs) in ones.into_iter().enumerate() {
        for c in cs {
            m.set(r, c, true);
        }
    }
    m
}

pub(crate) fn hypothesis(ok: bool, message: &str) -> Result<(), ConstructionError> {
    if ok {
        Ok(())
    } else {
        Err(ConstructionError::Hypothesis(message.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designs::{build_complete_design, catalog_lookup};

    fn fano() -> NamedDesign {
        NamedDesign::new("fano", catalog_lookup("fano").unwrap())
    }

    #[test]
    fn pg_and_fano_give_7747() {
        let families = [
            Family::ProjectiveGeometry { q: 2, k: 3, m: 1, t: 1 },
            Family::Configuration { design: fano() },
        ];
        for family in families {
            for o in Orientation::ALL {
                let c = construct(&ConstructionSpec::new(family.clone(), o)).unwrap();
                assert_eq!(c.pda.params().to_string(), "7 7 4 7", "{} set {o}", family.id());
                assert!(c.row.matches(&c.pda.scheme_parameters()));
            }
        }
    }

    #[test]
    fn tdesign_b_complete_header() {
        let d = NamedDesign::new("complete:4:2", build_complete_design(4, 2).unwrap());
        let spec = ConstructionSpec::new(Family::TDesignB { design: d, t1: 1, t2: 1 }, Orientation::Set1);
        let c = construct(&spec).unwrap();
        assert_eq!(c.pda.params().to_string(), "4 4 1 6");
        assert!(c.pda.is_valid());
        let prov = c.pda.provenance().unwrap();
        assert_eq!(prov["family"], "tdesign-b");
        assert_eq!(prov["orientation"], 1);
    }

    #[test]
    fn inadmissible_orientation_errors() {
        // |Z| = 1: the whole plane contains every line
        let spec = ConstructionSpec::new(Family::ProjectiveGeometry { q: 2, k: 2, m: 1, t: 1 }, Orientation::Set3);
        let row = closed_form(&spec).unwrap();
        assert!(!row.admissible);
        assert!(matches!(construct(&spec), Err(ConstructionError::Pda(PdaError::Inadmissible(_)))));
    }

    #[test]
    fn hypothesis_message_is_verbatim() {
        let spec = ConstructionSpec::new(Family::ProjectiveGeometry { q: 2, k: 2, m: 2, t: 1 }, Orientation::Set1);
        let err = construct(&spec).unwrap_err();
        assert_eq!(err.to_string(), "requires m+t ≤ k");
    }
}
