use std::fmt;

use super::{FieldSpec, GeometryError};

/// A linear subspace of `F_q^k`, stored by its reduced row-echelon basis.
///
/// The RREF basis is unique per subspace, so derived equality and hashing
/// coincide with equality of the underlying vector sets.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: FieldSpec,
    ambient: usize,
    basis: Vec<Vec<u32>>,
}

impl Subspace {
    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    /// The zero subspace of `F_q^k`.
    pub fn zero(field: &FieldSpec, ambient: usize) -> Self {
        Self {
            field: field.clone(),
            ambient,
            basis: Vec::new(),
        }
    }

    /// Span of `rows`, in canonical form.
    pub fn span(field: &FieldSpec, ambient: usize, rows: &[Vec<u32>]) -> Result<Self, GeometryError> {
        for row in rows {
            if row.len() != ambient {
                return Err(GeometryError::Domain(format!(
                    "vector of length {} in ambient dimension {ambient}",
                    row.len()
                )));
            }
            if let Some(&bad) = row.iter().find(|&&c| c >= field.order()) {
                return Err(GeometryError::Domain(format!(
                    "{bad} is not an element of {field:?}"
                )));
            }
        }
        let mut basis = rows.to_vec();
        row_reduce(field, &mut basis);
        Ok(Self {
            field: field.clone(),
            ambient,
            basis,
        })
    }

    /// Pivot column of each basis row.
    pub fn pivots(&self) -> Vec<usize> {
        self.basis
            .iter()
            .map(|row| row.iter().position(|&c| c != 0).unwrap())
            .collect()
    }

    fn compatible(&self, other: &Self) -> Result<(), GeometryError> {
        if self.field != other.field || self.ambient != other.ambient {
            return Err(GeometryError::Domain(format!(
                "subspaces of {:?}^{} and {:?}^{} are not comparable",
                self.field, self.ambient, other.field, other.ambient
            )));
        }
        Ok(())
    }

    fn joint_rank(&self, other: &Self) -> usize {
        let mut rows: Vec<Vec<u32>> = self.basis.iter().chain(&other.basis).cloned().collect();
        row_reduce(&self.field, &mut rows);
        rows.len()
    }

    /// `true` iff `other ⊆ self`.
    pub fn contains(&self, other: &Self) -> Result<bool, GeometryError> {
        self.compatible(other)?;
        if other.dim() > self.dim() {
            return Ok(false);
        }
        Ok(self.joint_rank(other) == self.dim())
    }

    /// `true` iff `self ∩ other = {0}`.
    pub fn meets_trivially(&self, other: &Self) -> Result<bool, GeometryError> {
        self.compatible(other)?;
        if self.dim() + other.dim() > self.ambient {
            return Ok(false);
        }
        Ok(self.joint_rank(other) == self.dim() + other.dim())
    }

    /// `dim(self ∩ other)`, via `dim a + dim b - dim(a + b)`.
    pub fn intersection_dim(&self, other: &Self) -> Result<usize, GeometryError> {
        self.compatible(other)?;
        Ok(self.dim() + other.dim() - self.joint_rank(other))
    }

    /// The sum `self + other`.
    pub fn join(&self, other: &Self) -> Result<Self, GeometryError> {
        self.compatible(other)?;
        let rows: Vec<Vec<u32>> = self.basis.iter().chain(&other.basis).cloned().collect();
        Subspace::span(&self.field, self.ambient, &rows)
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.basis.is_empty() {
            return write!(f, "<0>");
        }
        write!(f, "<")?;
        for (i, row) in self.basis.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            for c in row {
                write!(f, "{c}")?;
            }
        }
        write!(f, ">")
    }
}

/// Gauss-Jordan elimination in place; zero rows are dropped and the
/// result is in reduced row-echelon form. Returns the rank.
pub fn row_reduce(field: &FieldSpec, rows: &mut Vec<Vec<u32>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let scale = field.inv(rows[rank][col]).unwrap();
        for c in rows[rank].iter_mut() {
            *c = field.mul(*c, scale);
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[col] == 0 {
                continue;
            }
            let factor = row[col];
            for (c, &p) in row.iter_mut().zip(&pivot_row) {
                *c = field.sub(*c, field.mul(factor, p));
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.truncate(rank);
    rank
}

/// `m`-subsets of `0..n` in colexicographic order.
pub(crate) fn colex_subsets(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut all = crate::combin::subsets(n, m);
    all.sort_by(|a, b| a.iter().rev().cmp(b.iter().rev()));
    all
}

/// Every `m`-dimensional subspace of `F_q^k`, each exactly once.
///
/// Pivot sets are visited in colexicographic order; within a pivot set
/// the free entries count lexicographically, first free entry most
/// significant.
pub fn enumerate_subspaces(field: &FieldSpec, k: usize, m: usize) -> Result<Vec<Subspace>, GeometryError> {
    if m > k {
        return Err(GeometryError::Domain(format!(
            "requires m ≤ k, got m = {m}, k = {k}"
        )));
    }
    let q = field.order();
    let mut out = Vec::new();
    for pivots in colex_subsets(k, m) {
        let free: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| {
                let pivots = &pivots;
                (p + 1..k)
                    .filter(move |c| !pivots.contains(c))
                    .map(move |c| (i, c))
            })
            .collect();
        let mut counter = vec![0u32; free.len()];
        loop {
            let mut basis = vec![vec![0u32; k]; m];
            for (i, &p) in pivots.iter().enumerate() {
                basis[i][p] = 1;
            }
            for (&(i, c), &val) in free.iter().zip(&counter) {
                basis[i][c] = val;
            }
            out.push(Subspace {
                field: field.clone(),
                ambient: k,
                basis,
            });
            if !advance(&mut counter, q) {
                break;
            }
        }
    }
    Ok(out)
}

/// Odometer step over `q`-ary digits; `false` once it wraps to all zeros.
fn advance(counter: &mut [u32], q: u32) -> bool {
    for c in counter.iter_mut().rev() {
        *c += 1;
        if *c < q {
            return true;
        }
        *c = 0;
    }
    false
}
