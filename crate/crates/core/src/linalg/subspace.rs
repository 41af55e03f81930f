use super::{rref_rows, Echelon, SVec};
use crate::cyclotomic::CycField;
use crate::error::{Error, Result};

/// A subspace of `K^n` held as a reduced row echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    field: &'static CycField,
    ambient: usize,
    ech: Echelon,
}

impl Subspace {
    pub fn from_vectors(field: &'static CycField, ambient: usize, vecs: Vec<SVec>) -> Self {
        debug_assert!(vecs.iter().all(|v| v.support_end() <= ambient));
        Subspace {
            field,
            ambient,
            ech: rref_rows(vecs),
        }
    }

    pub fn zero(field: &'static CycField, ambient: usize) -> Self {
        Self::from_vectors(field, ambient, Vec::new())
    }

    pub fn full(field: &'static CycField, ambient: usize) -> Self {
        Self::from_vectors(field, ambient, (0..ambient).map(|i| SVec::unit(i, field)).collect())
    }

    pub fn field(&self) -> &'static CycField {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.ech.rank()
    }

    pub fn basis(&self) -> &[SVec] {
        &self.ech.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.ech.pivots
    }

    pub fn echelon(&self) -> &Echelon {
        &self.ech
    }

    /// Canonical representative of `v` modulo this subspace.
    pub fn residue(&self, v: &SVec) -> SVec {
        self.ech.reduce(v)
    }

    pub fn contains(&self, v: &SVec) -> bool {
        self.residue(v).is_zero()
    }

    pub fn contains_all(&self, other: &Subspace) -> bool {
        other.basis().iter().all(|v| self.contains(v))
    }

    fn check(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::Dimension(format!(
                "ambient dimensions differ: {} vs {}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        let mut vecs = self.basis().to_vec();
        vecs.extend(other.basis().iter().cloned());
        Ok(Subspace::from_vectors(self.field, self.ambient, vecs))
    }

    /// Zassenhaus: echelonize `[u | u]` and `[v | 0]`; rows whose left half
    /// vanishes carry a basis of the intersection in their right half.
    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        let n = self.ambient;
        let mut rows: Vec<SVec> = self
            .basis()
            .iter()
            .map(|u| u.add(&u.shifted(n)))
            .collect();
        rows.extend(other.basis().iter().cloned());
        let e = rref_rows(rows);
        let vecs = e
            .rows
            .iter()
            .zip(&e.pivots)
            .filter(|(_, &p)| p >= n)
            .map(|(r, _)| r.slice(n..2 * n))
            .collect();
        Ok(Subspace::from_vectors(self.field, n, vecs))
    }

    /// `dim(self) - dim(sub)` for `sub ⊆ self`.
    pub fn quotient_dim(&self, sub: &Subspace) -> Result<usize> {
        self.check(sub)?;
        if !self.contains_all(sub) {
            return Err(Error::Precondition("quotient by a non-subspace".into()));
        }
        Ok(self.dim() - sub.dim())
    }

    /// Dimension of the image of `self` in the quotient `K^n / modulo`.
    pub fn dim_modulo(&self, modulo: &Subspace) -> Result<usize> {
        Ok(self.sum(modulo)?.dim() - modulo.dim())
    }

    /// Vectors `C` with `sub ⊕ span(C) = self`, taken as canonical residues of
    /// this space's basis vectors modulo `sub`.
    pub fn complement_of(&self, sub: &Subspace) -> Result<Vec<SVec>> {
        self.check(sub)?;
        if !self.contains_all(sub) {
            return Err(Error::Precondition(
                "complement requires the first space to lie in the second".into(),
            ));
        }
        let mut acc = sub.clone();
        let mut out = Vec::new();
        for v in self.basis() {
            let res = acc.residue(v);
            if !res.is_zero() {
                out.push(res.clone());
                acc = acc.sum(&Subspace::from_vectors(self.field, self.ambient, vec![res]))?;
            }
        }
        Ok(out)
    }

    /// Are the given vectors linearly independent modulo this subspace?
    pub fn independent_modulo(&self, vecs: &[SVec]) -> bool {
        let extra = Subspace::from_vectors(self.field, self.ambient, vecs.to_vec());
        extra.dim() == vecs.len()
            && self.sum(&extra).map(|s| s.dim()).unwrap_or(0) == self.dim() + vecs.len()
    }

    /// Image of the subspace under `op`.
    pub fn map(&self, op: &super::LinOp) -> Subspace {
        Subspace::from_vectors(
            self.field,
            op.rows(),
            self.basis().iter().map(|b| op.apply(b)).collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k() -> &'static CycField {
        CycField::get(5).unwrap()
    }

    fn sp(vs: &[&[(usize, i64)]]) -> Subspace {
        let f = k();
        Subspace::from_vectors(
            f,
            4,
            vs.iter()
                .map(|v| SVec::from_pairs(v.iter().map(|&(i, c)| (i, f.int(c)))))
                .collect(),
        )
    }

    #[test]
    fn self_intersection() {
        let u = sp(&[&[(0, 1), (1, 2)], &[(2, 1), (3, 1)]]);
        assert_eq!(u.intersection(&u).unwrap(), u);
        assert_eq!(u.quotient_dim(&u).unwrap(), 0);
    }

    #[test]
    fn dimension_formula() {
        let u = sp(&[&[(0, 1)], &[(1, 1), (2, 1)]]);
        let v = sp(&[&[(1, 1)], &[(2, 1)], &[(3, 3)]]);
        let s = u.sum(&v).unwrap();
        let i = u.intersection(&v).unwrap();
        assert_eq!(s.dim() + i.dim(), u.dim() + v.dim());
        assert_eq!(i.dim(), 1);
        assert!(i.contains(&SVec::from_pairs([(1, k().one()), (2, k().one())])));
    }

    #[test]
    fn complement_requires_containment() {
        let u = sp(&[&[(0, 1)]]);
        let v = sp(&[&[(1, 1)], &[(2, 1)]]);
        assert!(v.complement_of(&u).is_err());
        let w = u.sum(&v).unwrap();
        let c = w.complement_of(&u).unwrap();
        assert_eq!(c.len(), 2);
        let rebuilt = u
            .sum(&Subspace::from_vectors(k(), 4, c))
            .unwrap();
        assert_eq!(rebuilt, w);
    }
}
