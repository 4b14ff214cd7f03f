use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use super::{BinaryMatrix, PdaError};

/// Three incidence matrices `C_XY`, `C_XZ`, `C_YZ` over labeled index sets.
#[derive(Clone, PartialEq, Eq)]
pub struct TripleSystem {
    labels_x: Vec<String>,
    labels_y: Vec<String>,
    labels_z: Vec<String>,
    xy: BinaryMatrix,
    xz: BinaryMatrix,
    yz: BinaryMatrix,
}

impl TripleSystem {
    pub fn new(
        labels: [Vec<String>; 3],
        xy: BinaryMatrix,
        xz: BinaryMatrix,
        yz: BinaryMatrix,
    ) -> Result<Self, PdaError> {
        let [labels_x, labels_y, labels_z] = labels;
        let (nx, ny, nz) = (labels_x.len(), labels_y.len(), labels_z.len());
        for (name, m, r, c) in [("C_XY", &xy, nx, ny), ("C_XZ", &xz, nx, nz), ("C_YZ", &yz, ny, nz)] {
            if m.rows() != r || m.cols() != c {
                return Err(PdaError::Shape(format!(
                    "{name} is {}x{}, expected {r}x{c} from the label sets",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(Self { labels_x, labels_y, labels_z, xy, xz, yz })
    }

    /// Labels `x0, x1, ...`, `y0, ...`, `z0, ...` taken from the matrix shapes.
    pub fn from_matrices(xy: BinaryMatrix, xz: BinaryMatrix, yz: BinaryMatrix) -> Result<Self, PdaError> {
        let labels = |p: &str, n: usize| (0..n).map(|i| format!("{p}{i}")).collect();
        let l = [labels("x", xz.rows()), labels("y", yz.rows()), labels("z", xz.cols())];
        TripleSystem::new(l, xy, xz, yz)
    }

    pub fn labels_x(&self) -> &[String] {
        &self.labels_x
    }

    pub fn labels_y(&self) -> &[String] {
        &self.labels_y
    }

    pub fn labels_z(&self) -> &[String] {
        &self.labels_z
    }

    pub fn xy(&self) -> &BinaryMatrix {
        &self.xy
    }

    pub fn xz(&self) -> &BinaryMatrix {
        &self.xz
    }

    pub fn yz(&self) -> &BinaryMatrix {
        &self.yz
    }

    /// `(|X|, |Y|, |Z|)`.
    pub fn sizes(&self) -> (usize, usize, usize) {
        (self.labels_x.len(), self.labels_y.len(), self.labels_z.len())
    }

    pub(crate) fn with_xy(&self, xy: BinaryMatrix) -> Self {
        Self { xy, ..self.clone() }
    }

    pub(crate) fn into_parts(self) -> ([Vec<String>; 3], [BinaryMatrix; 3]) {
        (
            [self.labels_x, self.labels_y, self.labels_z],
            [self.xy, self.xz, self.yz],
        )
    }

    pub fn check_conditions(&self) -> ConditionReport {
        ConditionReport::compute(self)
    }
}

impl fmt::Debug for TripleSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (x, y, z) = self.sizes();
        write!(f, "TripleSystem {{ |X| = {x}, |Y| = {y}, |Z| = {z} }}")
    }
}

/// The conditions a triple system can be checked against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Condition {
    E1,
    E1Prime,
    E2,
    E2Prime,
    E3,
    E4,
    E5,
    E6,
    E7,
}

impl Condition {
    pub const ALL: [Condition; 9] = [
        Condition::E1,
        Condition::E1Prime,
        Condition::E2,
        Condition::E2Prime,
        Condition::E3,
        Condition::E4,
        Condition::E5,
        Condition::E6,
        Condition::E7,
    ];

    /// The necessary-and-sufficient set.
    pub const EQUIVALENCE: [Condition; 5] =
        [Condition::E1, Condition::E2, Condition::E3, Condition::E4, Condition::E5];

    /// Sufficient conditions for the three orientations.
    pub const SUFFICIENT: [Condition; 5] =
        [Condition::E1Prime, Condition::E2Prime, Condition::E3, Condition::E6, Condition::E7];
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Condition::E1 => "E1",
            Condition::E1Prime => "E1′",
            Condition::E2 => "E2",
            Condition::E2Prime => "E2′",
            Condition::E3 => "E3",
            Condition::E4 => "E4",
            Condition::E5 => "E5",
            Condition::E6 => "E6",
            Condition::E7 => "E7",
        };
        f.write_str(s)
    }
}

/// Which side of the bipartite graph `G_z` a vertex lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Side {
    X,
    Y,
}

/// Counterexample to one condition. Indices are zero-based positions in
/// the label sets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Witness {
    /// The incidence count at `index` differs from `expected` (the count at
    /// index 0), or is zero where a positive constant is required.
    Degree { index: usize, count: usize, expected: usize },
    /// `y` lies in no `z`.
    Uncovered { y: usize },
    /// A pair with `count` completions instead of exactly one.
    Pair { first: usize, second: usize, count: usize },
    /// A vertex of `G_z` whose degree differs from `expected`, or a side of
    /// `G_z` that is empty while the other is not.
    Irregular { z: usize, side: Side, vertex: usize, degree: usize, expected: usize },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Witness::Degree { index, count, expected } => {
                write!(f, "index {index} has count {count}, expected {expected}")
            }
            Witness::Uncovered { y } => write!(f, "y{y} lies in no z"),
            Witness::Pair { first, second, count } => {
                write!(f, "pair ({first},{second}) has {count} completions, expected 1")
            }
            Witness::Irregular { z, side, vertex, degree, expected } => write!(
                f,
                "in G_z{z}, {side:?}-vertex {vertex} has degree {degree}, expected {expected}"
            ),
        }
    }
}

/// Result of an exhaustive scan of every condition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    results: Vec<(Condition, Option<Witness>)>,
    /// Common number of `z` per `x` (E7), when constant.
    pub d_x: Option<usize>,
    /// Common number of `z` per `y` (E2′), when constant.
    pub d_y: Option<usize>,
    /// Common number of `x` per `z` (E1′), when constant.
    pub d_z: Option<usize>,
    /// Regularity degree of each `G_z`; `None` where irregular or empty.
    pub e6_degrees: Vec<Option<usize>>,
    /// The common E6 degree when all `G_z` share one.
    pub e6_degree: Option<usize>,
}

/// First index whose count differs from the count at index 0.
fn constant_count(counts: &[usize], positive: bool) -> (Option<usize>, Option<Witness>) {
    let Some(&first) = counts.first() else {
        return (None, None);
    };
    if let Some(index) = counts.iter().position(|&c| c != first) {
        return (None, Some(Witness::Degree { index, count: counts[index], expected: first }));
    }
    if positive && first == 0 {
        return (Some(0), Some(Witness::Degree { index: 0, count: 0, expected: 1 }));
    }
    (Some(first), None)
}

struct Transposes {
    xy_t: BinaryMatrix,
    xz_t: BinaryMatrix,
    yz_t: BinaryMatrix,
}

impl Transposes {
    fn of(t: &TripleSystem) -> Self {
        Self {
            xy_t: t.xy.transpose(),
            xz_t: t.xz.transpose(),
            yz_t: t.yz.transpose(),
        }
    }
}

/// Scans pairs `(a, b)` with `outer[a][b] = 1` and checks that
/// `left.row(a) ∧ right.row(b)` has exactly one 1.
fn unique_completion(outer: &BinaryMatrix, left: &BinaryMatrix, right: &BinaryMatrix) -> Option<Witness> {
    (0..outer.rows()).into_par_iter().find_map_first(|a| {
        outer.row_ones(a).find_map(|b| {
            let count = left.and_count(a, right, b);
            (count != 1).then_some(Witness::Pair { first: a, second: b, count })
        })
    })
}

pub(crate) fn check_e3(t: &TripleSystem) -> Option<Witness> {
    unique_completion(&t.xy, &t.xz, &t.yz)
}

fn check_e4(t: &TripleSystem, tr: &Transposes) -> Option<Witness> {
    unique_completion(&t.xz, &t.xy, &tr.yz_t)
}

fn check_e5(t: &TripleSystem, tr: &Transposes) -> Option<Witness> {
    unique_completion(&t.yz, &tr.xy_t, &tr.xz_t)
}

fn check_e2(t: &TripleSystem) -> Option<Witness> {
    (0..t.yz.rows()).find(|&y| t.yz.row_count(y) == 0).map(|y| Witness::Uncovered { y })
}

/// Degree of `G_z` for every `z`. A graph is regular when every vertex on
/// both sides has the same degree `d ≥ 1`; a graph with both sides empty has
/// no degree and passes.
fn e6_scan(t: &TripleSystem, tr: &Transposes) -> Vec<Result<Option<usize>, Witness>> {
    (0..t.xz.cols())
        .into_par_iter()
        .map(|z| {
            let u1: Vec<usize> = tr.xz_t.row_ones(z).collect();
            let u2: Vec<usize> = tr.yz_t.row_ones(z).collect();
            match (u1.is_empty(), u2.is_empty()) {
                (true, true) => return Ok(None),
                (false, true) => {
                    return Err(Witness::Irregular { z, side: Side::X, vertex: u1[0], degree: 0, expected: 1 })
                }
                (true, false) => {
                    return Err(Witness::Irregular { z, side: Side::Y, vertex: u2[0], degree: 0, expected: 1 })
                }
                _ => {}
            }
            let degrees = u1
                .iter()
                .map(|&x| (Side::X, x, t.xy.and_count(x, &tr.yz_t, z)))
                .chain(u2.iter().map(|&y| (Side::Y, y, tr.xy_t.and_count(y, &tr.xz_t, z))));
            let expected = t.xy.and_count(u1[0], &tr.yz_t, z).max(1);
            for (side, vertex, degree) in degrees {
                if degree != expected {
                    return Err(Witness::Irregular { z, side, vertex, degree, expected });
                }
            }
            Ok(Some(expected))
        })
        .collect()
}

pub(crate) fn check_e6(t: &TripleSystem) -> Option<Witness> {
    e6_scan(t, &Transposes::of(t)).into_iter().find_map(Result::err)
}

impl ConditionReport {
    fn compute(t: &TripleSystem) -> Self {
        let tr = Transposes::of(t);
        let z_counts: Vec<usize> = (0..tr.xz_t.rows()).map(|z| tr.xz_t.row_count(z)).collect();
        let y_counts: Vec<usize> = (0..t.yz.rows()).map(|y| t.yz.row_count(y)).collect();
        let x_counts: Vec<usize> = (0..t.xz.rows()).map(|x| t.xz.row_count(x)).collect();
        let (d_z, e1) = constant_count(&z_counts, false);
        let (_, e1p) = constant_count(&z_counts, true);
        let (d_y, e2p) = constant_count(&y_counts, true);
        let (d_x, e7) = constant_count(&x_counts, true);
        let e6 = e6_scan(t, &tr);
        let e6_degrees: Vec<Option<usize>> = e6.iter().map(|r| r.clone().ok().flatten()).collect();
        let e6_witness = e6.iter().find_map(|r| r.clone().err());
        let e6_degree = match e6_degrees.first() {
            Some(&Some(d)) if e6_witness.is_none() && e6_degrees.iter().all(|&x| x == Some(d)) => Some(d),
            _ => None,
        };
        let results = vec![
            (Condition::E1, e1),
            (Condition::E1Prime, e1p),
            (Condition::E2, check_e2(t)),
            (Condition::E2Prime, e2p),
            (Condition::E3, check_e3(t)),
            (Condition::E4, check_e4(t, &tr)),
            (Condition::E5, check_e5(t, &tr)),
            (Condition::E6, e6_witness),
            (Condition::E7, e7),
        ];
        ConditionReport {
            results,
            d_x: d_x.filter(|_| x_counts.iter().all(|&c| c > 0)),
            d_y: d_y.filter(|&d| d > 0),
            d_z,
            e6_degrees,
            e6_degree,
        }
    }

    pub fn witness(&self, c: Condition) -> Option<&Witness> {
        self.results.iter().find(|(k, _)| *k == c).and_then(|(_, w)| w.as_ref())
    }

    pub fn passes(&self, c: Condition) -> bool {
        self.witness(c).is_none()
    }

    pub fn passes_all(&self, conditions: &[Condition]) -> bool {
        conditions.iter().all(|&c| self.passes(c))
    }

    /// First failed condition among `conditions`, in the given order.
    pub fn first_failure(&self, conditions: &[Condition]) -> Option<(Condition, Witness)> {
        conditions
            .iter()
            .find_map(|&c| self.witness(c).map(|w| (c, w.clone())))
    }

    /// `(condition, passed)` for every condition.
    pub fn summary(&self) -> Vec<(Condition, bool)> {
        self.results.iter().map(|(c, w)| (*c, w.is_none())).collect()
    }
}

/// Checks only the named conditions, stopping at the first failure.
pub(crate) fn first_failure(t: &TripleSystem, conditions: &[Condition]) -> Option<(Condition, Witness)> {
    let tr = Transposes::of(t);
    for &c in conditions {
        let witness = match c {
            Condition::E1 | Condition::E1Prime => {
                let counts: Vec<usize> = (0..tr.xz_t.rows()).map(|z| tr.xz_t.row_count(z)).collect();
                constant_count(&counts, c == Condition::E1Prime).1
            }
            Condition::E2 => check_e2(t),
            Condition::E2Prime => {
                let counts: Vec<usize> = (0..t.yz.rows()).map(|y| t.yz.row_count(y)).collect();
                constant_count(&counts, true).1
            }
            Condition::E7 => {
                let counts: Vec<usize> = (0..t.xz.rows()).map(|x| t.xz.row_count(x)).collect();
                constant_count(&counts, true).1
            }
            Condition::E3 => check_e3(t),
            Condition::E4 => check_e4(t, &tr),
            Condition::E5 => check_e5(t, &tr),
            Condition::E6 => e6_scan(t, &tr).into_iter().find_map(Result::err),
        };
        if let Some(w) = witness {
            return Some((c, w));
        }
    }
    None
}
