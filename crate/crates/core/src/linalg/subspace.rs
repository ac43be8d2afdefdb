use num_traits::{One, Zero};

use super::{LinalgError, Matrix, Scalar, SparseVec};

/// Incrementally maintained reduced row-echelon basis.
///
/// Every stored row has leading coefficient 1, and no row has a nonzero entry in
/// another row's pivot column. Rows are kept sorted by pivot.
#[derive(Debug, Clone)]
pub struct EchelonBuilder {
    ambient: usize,
    rows: Vec<SparseVec>,
}

impl EchelonBuilder {
    pub fn new(ambient: usize) -> Self {
        Self {
            ambient,
            rows: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn pivot_of(row: &SparseVec) -> usize {
        row.leading().expect("echelon rows are nonzero").0
    }

    fn find_pivot(&self, col: usize) -> Option<usize> {
        self.rows.binary_search_by_key(&col, Self::pivot_of).ok()
    }

    /// Canonical representative of `v` modulo the current span: the result is
    /// zero in every pivot column.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut out = v.clone();
        let hits: Vec<(usize, Scalar)> = v
            .iter()
            .filter_map(|(i, c)| self.find_pivot(i).map(|r| (r, c.clone())))
            .collect();
        for (r, c) in hits {
            out.add_scaled(&-c, &self.rows[r]);
        }
        out
    }

    /// Adds `v` to the span. Returns `true` if the dimension grew.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let mut reduced = self.reduce(v);
        let Some((pivot, lead)) = reduced.leading() else {
            return false;
        };
        let inv = lead.recip();
        reduced.scale(&inv);
        for row in &mut self.rows {
            if let Some(c) = row.get(pivot).cloned() {
                row.add_scaled(&-c, &reduced);
            }
        }
        let pos = self.rows.partition_point(|row| Self::pivot_of(row) < pivot);
        self.rows.insert(pos, reduced);
        true
    }

    pub fn finish(self) -> Subspace {
        Subspace {
            ambient: self.ambient,
            rows: self.rows,
        }
    }
}

/// Subspace of `Q^ambient` stored as its reduced row-echelon basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    rows: Vec<SparseVec>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Self {
            ambient,
            rows: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Self::coordinate(ambient, 0..ambient)
    }

    /// Span of the given standard basis vectors.
    pub fn coordinate(ambient: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut idx: Vec<usize> = indices.into_iter().collect();
        idx.sort_unstable();
        idx.dedup();
        Self {
            ambient,
            rows: idx.into_iter().map(SparseVec::unit).collect(),
        }
    }

    pub fn from_spanning(ambient: usize, vectors: impl IntoIterator<Item = SparseVec>) -> Self {
        let mut builder = EchelonBuilder::new(ambient);
        for v in vectors {
            debug_assert!(v.max_index().is_none_or(|i| i < ambient));
            builder.insert(&v);
        }
        builder.finish()
    }

    pub fn from_dense_rows(ambient: usize, rows: &[Vec<Scalar>]) -> Result<Self, LinalgError> {
        if let Some(bad) = rows.iter().find(|r| r.len() != ambient) {
            return Err(LinalgError::DimensionMismatch {
                expected: ambient,
                found: bad.len(),
            });
        }
        Ok(Self::from_spanning(
            ambient,
            rows.iter().map(|r| SparseVec::from_dense(r)),
        ))
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows
            .iter()
            .map(|r| r.leading().expect("nonzero row").0)
            .collect()
    }

    /// Standard basis indices that are not pivots, in increasing order. These
    /// index a complement of the subspace.
    pub fn non_pivots(&self) -> Vec<usize> {
        let pivots = self.pivots();
        let mut out = Vec::with_capacity(self.ambient - pivots.len());
        let mut it = pivots.iter().peekable();
        for i in 0..self.ambient {
            if it.peek() == Some(&&i) {
                it.next();
            } else {
                out.push(i);
            }
        }
        out
    }

    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_rows(
            self.ambient,
            self.rows.iter().map(|r| r.to_dense(self.ambient)).collect(),
        )
        .expect("rows have ambient width")
    }

    fn builder(&self) -> EchelonBuilder {
        EchelonBuilder {
            ambient: self.ambient,
            rows: self.rows.clone(),
        }
    }

    /// Canonical representative of `v` modulo this subspace (zero on all pivots).
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut out = v.clone();
        for (i, c) in v.iter() {
            if let Ok(r) = self
                .rows
                .binary_search_by_key(&i, |row| row.leading().unwrap().0)
            {
                out.add_scaled(&-c.clone(), &self.rows[r]);
            }
        }
        out
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    pub fn contains_dense(&self, v: &[Scalar]) -> bool {
        v.len() == self.ambient && self.contains(&SparseVec::from_dense(v))
    }

    fn check_ambient(&self, other: &Subspace) -> Result<(), LinalgError> {
        if self.ambient != other.ambient {
            return Err(LinalgError::DimensionMismatch {
                expected: self.ambient,
                found: other.ambient,
            });
        }
        Ok(())
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool, LinalgError> {
        self.check_ambient(other)?;
        Ok(self.rows.iter().all(|r| other.contains(r)))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_ambient(other)?;
        let (big, small) = if self.dim() >= other.dim() {
            (self, other)
        } else {
            (other, self)
        };
        let mut builder = big.builder();
        for r in &small.rows {
            builder.insert(r);
        }
        Ok(builder.finish())
    }

    /// Intersection, computed as the combinations of `self`'s basis whose
    /// reductions modulo `other` cancel.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_ambient(other)?;
        let reduced: Vec<SparseVec> = self.rows.iter().map(|r| other.reduce(r)).collect();
        let coefficients = kernel_vectors(&transpose_rows(&reduced), self.dim());
        Ok(Subspace::from_spanning(
            self.ambient,
            coefficients.into_iter().map(|coeffs| {
                let mut v = SparseVec::new();
                for (pos, c) in coeffs.iter() {
                    v.add_scaled(c, &self.rows[pos]);
                }
                v
            }),
        ))
    }

    /// Image of the subspace under `f`, applied to each basis vector.
    pub fn map(&self, target_ambient: usize, f: impl Fn(&SparseVec) -> SparseVec) -> Subspace {
        Subspace::from_spanning(target_ambient, self.rows.iter().map(f))
    }
}

/// Columns of the matrix with the given rows, as sparse rows indexed by row position.
fn transpose_rows(rows: &[SparseVec]) -> Vec<SparseVec> {
    let mut columns: std::collections::BTreeMap<usize, Vec<(usize, Scalar)>> = Default::default();
    for (pos, v) in rows.iter().enumerate() {
        for (i, c) in v.iter() {
            columns.entry(i).or_default().push((pos, c.clone()));
        }
    }
    columns.into_values().map(SparseVec::from_pairs).collect()
}

/// `{c : Σ c_i rows[i] = 0}` as a subspace of `Q^rows.len()`.
pub fn left_kernel(rows: &[SparseVec]) -> Subspace {
    kernel_of_rows(&transpose_rows(rows), rows.len())
}

/// Kernel vectors of the matrix whose rows are `rows` (each of width `cols`),
/// one per free column of its reduced form. Not canonicalized.
fn kernel_vectors(rows: &[SparseVec], cols: usize) -> Vec<SparseVec> {
    let mut builder = EchelonBuilder::new(cols);
    for r in rows {
        builder.insert(r);
    }
    let reduced = builder.finish();
    let pivots = reduced.pivots();
    reduced
        .non_pivots()
        .into_iter()
        .map(|free| {
            let mut pairs = vec![(free, Scalar::one())];
            for (row, &p) in reduced.rows.iter().zip(&pivots) {
                if let Some(c) = row.get(free) {
                    if !c.is_zero() {
                        pairs.push((p, -c.clone()));
                    }
                }
            }
            SparseVec::from_pairs(pairs)
        })
        .collect()
}

/// Null space of the matrix with the given sparse rows, as a canonical subspace.
pub fn kernel_of_rows(rows: &[SparseVec], cols: usize) -> Subspace {
    Subspace::from_spanning(cols, kernel_vectors(rows, cols))
}

/// Coordinates on `upper / lower` for a pair of nested subspaces.
///
/// The quotient basis is the reduced form of `upper`'s basis modulo `lower`, so
/// its pivots are non-pivots of `lower` and coordinates are read off directly.
#[derive(Debug, Clone)]
pub struct QuotientCoords {
    lower: Subspace,
    basis: Subspace,
}

impl QuotientCoords {
    pub fn new(upper: &Subspace, lower: &Subspace) -> Result<Self, LinalgError> {
        upper.check_ambient(lower)?;
        let basis =
            Subspace::from_spanning(upper.ambient, upper.rows.iter().map(|r| lower.reduce(r)));
        Ok(Self {
            lower: lower.clone(),
            basis,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    /// Coordinates of `v + lower` in the quotient basis. `v` must lie in `upper`.
    pub fn coords(&self, v: &SparseVec) -> Vec<Scalar> {
        let r = self.lower.reduce(v);
        debug_assert!(self.basis.contains(&r), "vector outside the upper space");
        self.basis
            .rows
            .iter()
            .map(|row| {
                let p = row.leading().unwrap().0;
                r.get(p).cloned().unwrap_or_else(Scalar::zero)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::scalar;

    fn span(ambient: usize, rows: &[&[i64]]) -> Subspace {
        Subspace::from_dense_rows(
            ambient,
            &rows
                .iter()
                .map(|r| r.iter().map(|&v| scalar(v)).collect())
                .collect::<Vec<_>>(),
        )
        .unwrap()
    }

    #[test]
    fn coordinate_planes_meet_in_a_line() {
        let a = span(3, &[&[1, 0, 0], &[0, 1, 0]]);
        let b = span(3, &[&[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(a.intersect(&b).unwrap(), span(3, &[&[0, 1, 0]]));
    }

    #[test]
    fn intersection_is_idempotent() {
        let a = span(4, &[&[1, 2, 0, 3], &[0, 1, 1, 1]]);
        assert_eq!(a.intersect(&a).unwrap(), a);
    }

    #[test]
    fn sum_of_diagonals_is_plane() {
        let a = span(3, &[&[1, 1, 0]]);
        let b = span(3, &[&[1, -1, 0]]);
        assert_eq!(a.sum(&b).unwrap(), span(3, &[&[1, 0, 0], &[0, 1, 0]]));
    }

    #[test]
    fn mismatched_ambient_is_an_error() {
        let a = Subspace::full(2);
        let b = Subspace::full(3);
        assert!(matches!(
            a.intersect(&b),
            Err(LinalgError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn different_spanning_sets_give_identical_forms() {
        let a = span(3, &[&[1, 2, 3], &[4, 5, 6]]);
        let b = span(3, &[&[5, 7, 9], &[3, 3, 3], &[1, 2, 3]]);
        assert_eq!(a, b);
    }

    #[test]
    fn quotient_coordinates() {
        let upper = Subspace::full(3);
        let lower = span(3, &[&[0, 0, 1]]);
        let q = QuotientCoords::new(&upper, &lower).unwrap();
        assert_eq!(q.dim(), 2);
        let v = SparseVec::from_dense(&[scalar(2), scalar(-1), scalar(7)]);
        assert_eq!(q.coords(&v), vec![scalar(2), scalar(-1)]);
    }
}
