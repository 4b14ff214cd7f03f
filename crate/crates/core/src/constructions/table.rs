use std::ops::RangeInclusive;

use crate::pda::Orientation;

use super::{closed_form, pg_parameters, ConstructionError, ConstructionSpec, Family, NamedDesign, ParameterTableRow};

pub const COLUMNS: [&str; 11] = ["family", "params", "orientation", "K", "F", "M/N", "R", "R*", "R/R*", "F*(MN)", "admissible"];

/// Every `(m, t, set)` with `m+t ≤ k` for each `k` in the range.
pub fn tabulate_pg(q: u32, ks: RangeInclusive<usize>) -> Result<Vec<ParameterTableRow>, ConstructionError> {
    let mut rows = Vec::new();
    for k in ks {
        for m in 1..k {
            for t in 1..=k - m {
                for o in Orientation::ALL {
                    rows.push(pg_parameters(q, k, m, t, o)?);
                }
            }
        }
    }
    Ok(rows)
}

/// All three sets for every admissible choice of `t_0`, `t_1`, `t_2` the
/// family allows on this design. `family` is one of `config`,
/// `tdesign-a`, `tdesign-b`, `tdesign-lambda`.
pub fn tabulate_design(family: &str, design: &NamedDesign) -> Result<Vec<ParameterTableRow>, ConstructionError> {
    let d = design.clone();
    let families: Vec<Family> = match family {
        "config" => vec![Family::Configuration { design: d }],
        "tdesign-a" => {
            let c = design.design.as_t_design()?;
            (1..c.t).map(|t0| Family::TDesignA { design: d.clone(), t0 }).collect()
        }
        "tdesign-b" => {
            let c = design.design.as_t_design()?;
            (1..c.k).map(|t1| Family::TDesignB { design: d.clone(), t1, t2: c.k - t1 }).collect()
        }
        "tdesign-lambda" => {
            let c = design.design.as_t_design()?;
            (2..=c.t)
                .flat_map(|t0| (1..t0).map(move |t1| (t0, t1)))
                .map(|(t0, t1)| Family::TDesignLambda { design: d.clone(), t0, t1, t2: t0 - t1 })
                .collect()
        }
        other => return Err(ConstructionError::Hypothesis(format!("unknown design family {other:?}"))),
    };
    let mut rows = Vec::new();
    let mut last_err = None;
    for f in families {
        for o in Orientation::ALL {
            match closed_form(&ConstructionSpec::new(f.clone(), o)) {
                Ok(row) => rows.push(row),
                Err(e @ ConstructionError::Hypothesis(_)) => last_err = Some(e),
                Err(e) => return Err(e),
            }
        }
    }
    match (rows.is_empty(), last_err) {
        (true, Some(e)) => Err(e),
        _ => Ok(rows),
    }
}

fn cells(row: &ParameterTableRow) -> [String; 11] {
    let opt = |v: Option<String>| v.unwrap_or_else(|| "-".into());
    [
        row.family.clone(),
        row.params.clone(),
        row.orientation.to_string(),
        row.k.to_string(),
        row.f.to_string(),
        row.memory_ratio.to_string(),
        row.rate.to_string(),
        row.baseline_rate.to_string(),
        opt(row.rate_ratio.as_ref().map(ToString::to_string)),
        opt(row.mn_subpacketization.as_ref().map(ToString::to_string)),
        if row.admissible { "yes" } else { "no" }.into(),
    ]
}

pub fn to_csv(rows: &[ParameterTableRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(COLUMNS).expect("in-memory write");
    for row in rows {
        w.write_record(cells(row)).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 cells")
}

/// Space-aligned columns with a header line.
pub fn to_text(rows: &[ParameterTableRow]) -> String {
    let body: Vec<[String; 11]> = rows.iter().map(cells).collect();
    let mut widths = COLUMNS.map(|c| c.chars().count());
    for r in &body {
        for (w, cell) in widths.iter_mut().zip(r) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(widths)
            .map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(COLUMNS.to_vec());
    for r in &body {
        out.push_str(&line(r.iter().map(String::as_str).collect()));
    }
    out
}
