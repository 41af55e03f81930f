use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use super::SVec;

/// A reduced row echelon form: rows sorted by pivot column, each with a unit
/// pivot, and every pivot column zero in all other rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon {
    pub rows: Vec<SVec>,
    pub pivots: Vec<usize>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v` against the rows. The residue has zero entries on every
    /// pivot column and is the canonical representative of `v` modulo the
    /// row space.
    pub fn reduce(&self, v: &SVec) -> SVec {
        let mut out = v.clone();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            // rows are zero on the other pivots, so the original coefficient
            // at p is the one to clear
            if let Some(c) = v.get(p) {
                out = out.add_scaled(row, &-c);
            }
        }
        out
    }
}

struct UnionFind {
    parent: HashMap<usize, usize>,
}

impl UnionFind {
    fn new() -> Self {
        UnionFind {
            parent: HashMap::new(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while let Some(&p) = self.parent.get(&root) {
            if p == root {
                break;
            }
            root = p;
        }
        let mut cur = x;
        while cur != root {
            let next = *self.parent.get(&cur).unwrap_or(&root);
            self.parent.insert(cur, root);
            cur = next;
        }
        self.parent.entry(root).or_insert(root);
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent.insert(hi, lo);
        }
    }
}

/// Split rows into groups whose column supports are pairwise disjoint.
fn blocks(rows: Vec<SVec>) -> Vec<Vec<SVec>> {
    let mut uf = UnionFind::new();
    for row in &rows {
        let mut it = row.iter().map(|(i, _)| i);
        if let Some(first) = it.next() {
            uf.find(first);
            for j in it {
                uf.union(first, j);
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<SVec>> = BTreeMap::new();
    for row in rows {
        if let Some((first, _)) = row.leading() {
            let root = uf.find(first);
            groups.entry(root).or_default().push(row);
        }
    }
    groups.into_values().collect()
}

/// Gauss-Jordan elimination on one block, keeping the basis fully reduced
/// after every insertion.
fn rref_block(rows: Vec<SVec>) -> Vec<(usize, SVec)> {
    let mut basis: BTreeMap<usize, SVec> = BTreeMap::new();
    for row in rows {
        let mut v = row;
        let hits: Vec<usize> = v
            .iter()
            .map(|(i, _)| i)
            .filter(|i| basis.contains_key(i))
            .collect();
        let orig = v.clone();
        for p in hits {
            let c = orig.get(p).expect("hit column present").clone();
            v = v.add_scaled(&basis[&p], &-c);
        }
        let Some((p, lead)) = v.leading() else {
            continue;
        };
        let inv = lead.inv().expect("nonzero pivot");
        let v = v.scale(&inv);
        for other in basis.values_mut() {
            if let Some(c) = other.get(p).cloned() {
                *other = other.add_scaled(&v, &-c);
            }
        }
        basis.insert(p, v);
    }
    basis.into_iter().collect()
}

/// RREF of the row space spanned by `rows`.
pub fn rref_rows(rows: Vec<SVec>) -> Echelon {
    let groups = blocks(rows);
    let mut parts: Vec<(usize, SVec)> = groups
        .into_par_iter()
        .map(rref_block)
        .flatten()
        .collect();
    parts.sort_by_key(|(p, _)| *p);
    let (pivots, rows) = parts.into_iter().unzip();
    Echelon { rows, pivots }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::CycField;

    #[test]
    fn splits_disjoint_blocks() {
        let k = CycField::get(3).unwrap();
        let rows = vec![
            SVec::from_pairs([(0, k.one()), (2, k.q())]),
            SVec::from_pairs([(1, k.one())]),
            SVec::from_pairs([(2, k.one()), (4, k.one())]),
            SVec::from_pairs([(3, k.int(5))]),
        ];
        assert_eq!(blocks(rows.clone()).len(), 3);
        let e = rref_rows(rows);
        assert_eq!(e.pivots, vec![0, 1, 2, 3]);
        // row 0 reduced against the pivot at column 2
        assert_eq!(e.rows[0], SVec::from_pairs([(0, k.one()), (4, -k.q())]));
        assert_eq!(e.rows[3], SVec::unit(3, k));
    }

    #[test]
    fn dependent_rows_drop() {
        let k = CycField::get(5).unwrap();
        let a = SVec::from_pairs([(0, k.one()), (1, k.q())]);
        let b = a.scale(&k.mu());
        let e = rref_rows(vec![a, b]);
        assert_eq!(e.rank(), 1);
        let residue = e.reduce(&SVec::from_pairs([(0, k.int(2)), (1, k.one())]));
        assert_eq!(residue, SVec::from_pairs([(1, k.one() - k.q().scale_int(2))]));
    }
}
