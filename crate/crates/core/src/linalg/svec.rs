use std::collections::BTreeMap;

use crate::cyclotomic::{CycField, CycScalar};

/// A sparse vector: entries sorted by index, no stored zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SVec {
    entries: Vec<(usize, CycScalar)>,
}

impl SVec {
    pub fn new() -> Self {
        SVec { entries: Vec::new() }
    }

    pub fn unit(i: usize, field: &'static CycField) -> Self {
        SVec {
            entries: vec![(i, field.one())],
        }
    }

    /// Build from arbitrary `(index, value)` pairs; duplicates are summed and
    /// zeros dropped.
    pub fn from_pairs<I: IntoIterator<Item = (usize, CycScalar)>>(pairs: I) -> Self {
        let mut map: BTreeMap<usize, CycScalar> = BTreeMap::new();
        for (i, v) in pairs {
            match map.get_mut(&i) {
                Some(cur) => *cur += &v,
                None => {
                    map.insert(i, v);
                }
            }
        }
        SVec {
            entries: map.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
        }
    }

    /// Build from entries already sorted by index with no duplicates.
    pub(crate) fn from_sorted(entries: Vec<(usize, CycScalar)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        SVec {
            entries: entries.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
        }
    }

    pub fn from_dense(values: &[CycScalar]) -> Self {
        SVec {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, v)| (i, v.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, len: usize, field: &'static CycField) -> Vec<CycScalar> {
        let mut out = vec![field.zero(); len];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }

    pub fn entries(&self) -> &[(usize, CycScalar)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(usize, CycScalar)> {
        self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &CycScalar)> {
        self.entries.iter().map(|(i, v)| (*i, v))
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Largest stored index plus one (0 for the zero vector).
    pub fn support_end(&self) -> usize {
        self.entries.last().map_or(0, |(i, _)| i + 1)
    }

    pub fn get(&self, i: usize) -> Option<&CycScalar> {
        self.entries
            .binary_search_by_key(&i, |(j, _)| *j)
            .ok()
            .map(|p| &self.entries[p].1)
    }

    pub fn leading(&self) -> Option<(usize, &CycScalar)> {
        self.entries.first().map(|(i, v)| (*i, v))
    }

    pub fn scale(&self, s: &CycScalar) -> SVec {
        if s.is_zero() {
            return SVec::new();
        }
        SVec {
            entries: self.entries.iter().map(|(i, v)| (*i, v * s)).collect(),
        }
    }

    pub fn neg(&self) -> SVec {
        SVec {
            entries: self.entries.iter().map(|(i, v)| (*i, -v)).collect(),
        }
    }

    /// `self + s * other`.
    pub fn add_scaled(&self, other: &SVec, s: &CycScalar) -> SVec {
        if s.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) => {
                    if i < j {
                        out.push((*i, x.clone()));
                        a.next();
                    } else if j < i {
                        out.push((*j, y * s));
                        b.next();
                    } else {
                        let v = x + &(y * s);
                        if !v.is_zero() {
                            out.push((*i, v));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, Some((j, y))) => {
                    out.push((*j, y * s));
                    b.next();
                }
                (None, None) => break,
            }
        }
        SVec { entries: out }
    }

    pub fn add(&self, other: &SVec) -> SVec {
        if other.is_zero() {
            return self.clone();
        }
        let one = other.entries[0].1.field().one();
        self.add_scaled(other, &one)
    }

    pub fn sub(&self, other: &SVec) -> SVec {
        if other.is_zero() {
            return self.clone();
        }
        let m1 = -other.entries[0].1.field().one();
        self.add_scaled(other, &m1)
    }

    pub fn dot(&self, other: &SVec) -> Option<CycScalar> {
        let mut acc: Option<CycScalar> = None;
        let (mut i, mut j) = (0, 0);
        while i < self.entries.len() && j < other.entries.len() {
            let (a, x) = &self.entries[i];
            let (b, y) = &other.entries[j];
            if a < b {
                i += 1;
            } else if b < a {
                j += 1;
            } else {
                let p = x * y;
                match &mut acc {
                    Some(s) => *s += &p,
                    None => acc = Some(p),
                }
                i += 1;
                j += 1;
            }
        }
        acc
    }

    /// Shift every index by `offset`.
    pub fn shifted(&self, offset: usize) -> SVec {
        SVec {
            entries: self.entries.iter().map(|(i, v)| (i + offset, v.clone())).collect(),
        }
    }

    /// Keep entries whose index lies in `range`, re-based to start at 0.
    pub fn slice(&self, range: std::ops::Range<usize>) -> SVec {
        SVec {
            entries: self
                .entries
                .iter()
                .filter(|(i, _)| range.contains(i))
                .map(|(i, v)| (i - range.start, v.clone()))
                .collect(),
        }
    }

    pub fn map_indices<F: Fn(usize) -> usize>(&self, f: F) -> SVec {
        SVec::from_pairs(self.entries.iter().map(|(i, v)| (f(*i), v.clone())))
    }

    /// Is `self` a scalar multiple of `other`? Returns the factor `c` with
    /// `self = c * other` when it exists.
    pub fn ratio_to(&self, other: &SVec) -> Option<CycScalar> {
        if self.entries.len() != other.entries.len() {
            return None;
        }
        if self.is_zero() {
            return None;
        }
        let (i0, x0) = &self.entries[0];
        let (j0, y0) = &other.entries[0];
        if i0 != j0 {
            return None;
        }
        let c = x0 / y0;
        if &other.scale(&c) == self {
            Some(c)
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn add_scaled_cancels() {
        let k = CycField::get(3).unwrap();
        let a = SVec::from_pairs([(0, k.one()), (3, k.q())]);
        let b = SVec::from_pairs([(3, k.one()), (5, k.int(2))]);
        let c = a.add_scaled(&b, &-k.q());
        assert_eq!(c, SVec::from_pairs([(0, k.one()), (5, -k.q().scale_int(2))]));
        assert!(a.sub(&a).is_zero());
        assert_eq!(a.dot(&b), Some(k.q()));
    }

    #[test]
    fn ratio() {
        let k = CycField::get(5).unwrap();
        let a = SVec::from_pairs([(1, k.one()), (4, k.q())]);
        let b = a.scale(&k.mu());
        assert_eq!(b.ratio_to(&a), Some(k.mu()));
        assert_eq!(a.ratio_to(&SVec::unit(1, k)), None);
    }
}
