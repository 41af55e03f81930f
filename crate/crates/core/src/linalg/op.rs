use rayon::prelude::*;
use serde_json::{json, Value};

use super::{rref_rows, Echelon, SVec, Solution, Subspace};
use crate::cyclotomic::{CycField, CycScalar};
use crate::error::{Error, Result};

/// An exact sparse matrix, stored by rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinOp {
    field: &'static CycField,
    rows: usize,
    cols: usize,
    data: Vec<SVec>,
}

impl LinOp {
    pub fn zero(field: &'static CycField, rows: usize, cols: usize) -> Self {
        LinOp {
            field,
            rows,
            cols,
            data: vec![SVec::new(); rows],
        }
    }

    pub fn identity(field: &'static CycField, n: usize) -> Self {
        LinOp {
            field,
            rows: n,
            cols: n,
            data: (0..n).map(|i| SVec::unit(i, field)).collect(),
        }
    }

    pub fn from_rows(field: &'static CycField, cols: usize, data: Vec<SVec>) -> Self {
        debug_assert!(data.iter().all(|r| r.support_end() <= cols));
        LinOp {
            field,
            rows: data.len(),
            cols,
            data,
        }
    }

    /// Build from the images of the basis vectors, i.e. from columns.
    pub fn from_columns(field: &'static CycField, rows: usize, columns: &[SVec]) -> Self {
        let mut buckets: Vec<Vec<(usize, CycScalar)>> = vec![Vec::new(); rows];
        for (j, col) in columns.iter().enumerate() {
            for (i, v) in col.iter() {
                assert!(i < rows, "column entry out of range");
                buckets[i].push((j, v.clone()));
            }
        }
        LinOp {
            field,
            rows,
            cols: columns.len(),
            data: buckets.into_iter().map(SVec::from_sorted).collect(),
        }
    }

    pub fn from_triplets(
        field: &'static CycField,
        rows: usize,
        cols: usize,
        entries: impl IntoIterator<Item = (usize, usize, CycScalar)>,
    ) -> Self {
        let mut buckets: Vec<Vec<(usize, CycScalar)>> = vec![Vec::new(); rows];
        for (i, j, v) in entries {
            assert!(i < rows && j < cols, "triplet out of range");
            buckets[i].push((j, v));
        }
        LinOp {
            field,
            rows,
            cols,
            data: buckets.into_iter().map(SVec::from_pairs).collect(),
        }
    }

    pub fn field(&self) -> &'static CycField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &SVec {
        &self.data[i]
    }

    pub fn row_vecs(&self) -> &[SVec] {
        &self.data
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(SVec::nnz).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(SVec::is_zero)
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&CycScalar> {
        self.data[i].get(j)
    }

    /// Nonzero entries in `(row, col)` order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &CycScalar)> {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().map(move |(j, v)| (i, j, v)))
    }

    pub fn transpose(&self) -> LinOp {
        let mut buckets: Vec<Vec<(usize, CycScalar)>> = vec![Vec::new(); self.cols];
        for (i, j, v) in self.entries() {
            buckets[j].push((i, v.clone()));
        }
        LinOp {
            field: self.field,
            rows: self.cols,
            cols: self.rows,
            data: buckets.into_iter().map(SVec::from_sorted).collect(),
        }
    }

    /// Column `j` as a sparse vector.
    pub fn column(&self, j: usize) -> SVec {
        SVec::from_sorted(
            self.data
                .iter()
                .enumerate()
                .filter_map(|(i, r)| r.get(j).map(|v| (i, v.clone())))
                .collect(),
        )
    }

    pub fn apply(&self, x: &SVec) -> SVec {
        assert!(x.support_end() <= self.cols, "vector longer than domain");
        let entries: Vec<(usize, CycScalar)> = self
            .data
            .par_iter()
            .enumerate()
            .filter_map(|(i, r)| r.dot(x).map(|v| (i, v)))
            .collect();
        SVec::from_sorted(entries)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinOp) -> Result<LinOp> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot compose {}x{} with {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self
            .data
            .par_iter()
            .map(|row| {
                let mut acc = SVec::new();
                for (k, v) in row.iter() {
                    acc = acc.add_scaled(&other.data[k], v);
                }
                acc
            })
            .collect();
        Ok(LinOp {
            field: self.field,
            rows: self.rows,
            cols: other.cols,
            data,
        })
    }

    pub fn add(&self, other: &LinOp) -> Result<LinOp> {
        self.lin_comb(other, &self.field.one())
    }

    pub fn sub(&self, other: &LinOp) -> Result<LinOp> {
        self.lin_comb(other, &-self.field.one())
    }

    /// `self + s * other`.
    pub fn lin_comb(&self, other: &LinOp, s: &CycScalar) -> Result<LinOp> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension(format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(LinOp {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.add_scaled(b, s))
                .collect(),
        })
    }

    pub fn scale(&self, s: &CycScalar) -> LinOp {
        LinOp {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|r| r.scale(s)).collect(),
        }
    }

    pub fn trace(&self) -> CycScalar {
        let mut acc = self.field.zero();
        for (i, row) in self.data.iter().enumerate().take(self.cols) {
            if let Some(v) = row.get(i) {
                acc += v;
            }
        }
        acc
    }

    /// Characteristic polynomial `det(x - self)`, coefficients from the
    /// constant term up (Faddeev–LeVerrier).
    pub fn char_poly(&self) -> Result<Vec<CycScalar>> {
        if self.rows != self.cols {
            return Err(Error::Dimension("characteristic polynomial of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut coeffs = vec![self.field.zero(); n + 1];
        coeffs[n] = self.field.one();
        let id = LinOp::identity(self.field, n);
        let mut m = LinOp::zero(self.field, n, n);
        for k in 1..=n {
            m = self.compose(&m)?.lin_comb(&id, &coeffs[n - k + 1])?;
            let t = self.compose(&m)?.trace();
            coeffs[n - k] = -(&t * &self.field.rational(1, k as i64));
        }
        Ok(coeffs)
    }

    /// Stack `self` on top of `other` (same column count).
    pub fn vstack(&self, other: &LinOp) -> Result<LinOp> {
        if self.cols != other.cols {
            return Err(Error::Dimension("vstack column mismatch".into()));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(LinOp::from_rows(self.field, self.cols, data))
    }

    /// Restrict the domain to `sub`: the matrix of `x ↦ self(x)` in the
    /// coordinates of `sub`'s basis.
    pub fn restrict(&self, sub: &Subspace) -> LinOp {
        let cols: Vec<SVec> = sub.basis().par_iter().map(|b| self.apply(b)).collect();
        LinOp::from_columns(self.field, self.rows, &cols)
    }

    pub fn rref(&self) -> Echelon {
        rref_rows(self.data.clone())
    }

    pub fn rank(&self) -> usize {
        self.rref().rank()
    }

    pub fn kernel(&self) -> Subspace {
        let e = self.rref();
        kernel_from_echelon(self.field, self.cols, &e)
    }

    /// Column space.
    pub fn image(&self) -> Subspace {
        Subspace::from_vectors(self.field, self.rows, self.transpose().data)
    }

    /// Some `x` with `self·x = b`: the echelon solution with all free
    /// variables set to zero.
    pub fn solve(&self, b: &SVec) -> Result<Solution> {
        if b.support_end() > self.rows {
            return Err(Error::Dimension("right-hand side longer than codomain".into()));
        }
        let aug = self.cols;
        let rows: Vec<SVec> = self
            .data
            .iter()
            .enumerate()
            .map(|(i, r)| match b.get(i) {
                Some(v) => r.add(&SVec::from_sorted(vec![(aug, v.clone())])),
                None => r.clone(),
            })
            .collect();
        let e = rref_rows(rows);
        if e.pivots.last() == Some(&aug) {
            return Ok(Solution::NoSolution);
        }
        let x = SVec::from_sorted(
            e.rows
                .iter()
                .zip(&e.pivots)
                .filter_map(|(r, &p)| r.get(aug).map(|v| (p, v.clone())))
                .collect(),
        );
        Ok(Solution::Found(x))
    }

    /// Matrix export: `{"rows","cols","field":{"r"},"entries":[[i,j,[coeffs]]…]}`.
    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = self
            .entries()
            .map(|(i, j, v)| json!([i, j, v.to_strings()]))
            .collect();
        json!({
            "rows": self.rows,
            "cols": self.cols,
            "field": {"r": self.field.r()},
            "entries": entries,
        })
    }

    pub fn from_json(v: &Value) -> Result<LinOp> {
        let bad = |m: &str| Error::Parse(format!("matrix json: {m}"));
        let rows = v["rows"].as_u64().ok_or_else(|| bad("rows"))? as usize;
        let cols = v["cols"].as_u64().ok_or_else(|| bad("cols"))? as usize;
        let r = v["field"]["r"].as_u64().ok_or_else(|| bad("field.r"))? as u32;
        let field = CycField::get(r)?;
        let entries = v["entries"].as_array().ok_or_else(|| bad("entries"))?;
        let mut trip = Vec::with_capacity(entries.len());
        for e in entries {
            let i = e[0].as_u64().ok_or_else(|| bad("row index"))? as usize;
            let j = e[1].as_u64().ok_or_else(|| bad("col index"))? as usize;
            if i >= rows || j >= cols {
                return Err(bad("index out of range"));
            }
            trip.push((i, j, CycScalar::from_json(field, &e[2])?));
        }
        Ok(LinOp::from_triplets(field, rows, cols, trip))
    }
}

pub(crate) fn kernel_from_echelon(field: &'static CycField, cols: usize, e: &Echelon) -> Subspace {
    let pivot_set: std::collections::HashSet<usize> = e.pivots.iter().copied().collect();
    // column -> [(pivot, value)] over the echelon rows
    let mut by_col: std::collections::HashMap<usize, Vec<(usize, CycScalar)>> =
        std::collections::HashMap::new();
    for (row, &p) in e.rows.iter().zip(&e.pivots) {
        for (j, v) in row.iter() {
            if j != p {
                by_col.entry(j).or_default().push((p, v.clone()));
            }
        }
    }
    let vecs: Vec<SVec> = (0..cols)
        .filter(|j| !pivot_set.contains(j))
        .map(|f| {
            let mut pairs = vec![(f, field.one())];
            if let Some(list) = by_col.get(&f) {
                pairs.extend(list.iter().map(|(p, v)| (*p, -v)));
            }
            SVec::from_pairs(pairs)
        })
        .collect();
    Subspace::from_vectors(field, cols, vecs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k() -> &'static CycField {
        CycField::get(3).unwrap()
    }

    #[test]
    fn identity_and_zero() {
        let id = LinOp::identity(k(), 4);
        let e = id.rref();
        assert_eq!(e.rank(), 4);
        assert_eq!(e.pivots, vec![0, 1, 2, 3]);
        assert_eq!(id.kernel().dim(), 0);
        let z = LinOp::zero(k(), 3, 5);
        assert_eq!(z.rank(), 0);
        assert_eq!(z.image().dim(), 0);
        assert_eq!(z.kernel().dim(), 5);
    }

    #[test]
    fn solve_identity_and_inconsistent() {
        let f = k();
        let id = LinOp::identity(f, 3);
        let b = SVec::from_pairs([(0, f.q()), (2, f.int(7))]);
        assert_eq!(id.solve(&b).unwrap(), Solution::Found(b.clone()));
        // rank-1 matrix [[1,1],[1,1]] with b = (1, 0)
        let m = LinOp::from_triplets(
            f,
            2,
            2,
            [(0, 0, f.one()), (0, 1, f.one()), (1, 0, f.one()), (1, 1, f.one())],
        );
        let b = SVec::unit(0, f);
        assert_eq!(m.solve(&b).unwrap(), Solution::NoSolution);
    }

    #[test]
    fn json_round_trip() {
        let f = k();
        let m = LinOp::from_triplets(f, 2, 3, [(0, 2, f.q()), (1, 0, f.rational(-1, 3))]);
        let v = m.to_json();
        assert_eq!(v["entries"][0][2], json!(["0/1", "1/1"]));
        assert_eq!(LinOp::from_json(&v).unwrap(), m);
    }
}
