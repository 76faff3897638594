//! Sparse exact linear algebra over 𝕂: operators on tensor powers of V and
//! row reduction.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::scalar::Scalar;

pub type SparseVec = BTreeMap<usize, Scalar>;

pub fn vec_add_scaled(acc: &mut SparseVec, c: &Scalar, v: &SparseVec) {
    if c.is_zero() {
        return;
    }
    for (k, x) in v {
        let t = c * x;
        match acc.get_mut(k) {
            Some(y) => {
                *y += &t;
                if y.is_zero() {
                    acc.remove(k);
                }
            }
            None => {
                acc.insert(*k, t);
            }
        }
    }
}

pub fn vec_scale(v: &SparseVec, c: &Scalar) -> SparseVec {
    if c.is_zero() {
        return SparseVec::new();
    }
    v.iter().map(|(k, x)| (*k, x * c)).collect()
}

/// Index ↔ label-tuple encoding for V^{⊗k}, labels 1..=dim.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TensorShape {
    pub dim: usize,
    pub arity: usize,
}

impl TensorShape {
    pub fn new(dim: usize, arity: usize) -> Self {
        TensorShape { dim, arity }
    }

    pub fn size(&self) -> usize {
        self.dim.pow(self.arity as u32)
    }

    pub fn encode(&self, labels: &[usize]) -> usize {
        debug_assert_eq!(labels.len(), self.arity);
        labels.iter().fold(0, |acc, &a| acc * self.dim + (a - 1))
    }

    pub fn decode(&self, mut idx: usize) -> Vec<usize> {
        let mut out = vec![0; self.arity];
        for slot in out.iter_mut().rev() {
            *slot = idx % self.dim + 1;
            idx /= self.dim;
        }
        out
    }
}

/// Sparse operator V^{⊗k} → V^{⊗k'}, stored by columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearOperator {
    pub domain: TensorShape,
    pub codomain: TensorShape,
    cols: BTreeMap<usize, SparseVec>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Triplet {
    pub row: Vec<usize>,
    pub col: Vec<usize>,
    pub value: String,
}

impl LinearOperator {
    pub fn zero(domain: TensorShape, codomain: TensorShape) -> Self {
        LinearOperator {
            domain,
            codomain,
            cols: BTreeMap::new(),
        }
    }

    pub fn identity(shape: TensorShape) -> Self {
        let mut op = Self::zero(shape, shape);
        for c in 0..shape.size() {
            op.cols.insert(c, SparseVec::from([(c, Scalar::one())]));
        }
        op
    }

    pub fn scalar(shape: TensorShape, c: &Scalar) -> Self {
        Self::identity(shape).scale(c)
    }

    /// Builds an operator from a column function on basis indices.
    pub fn from_columns(
        domain: TensorShape,
        codomain: TensorShape,
        mut f: impl FnMut(usize) -> SparseVec,
    ) -> Self {
        let mut op = Self::zero(domain, codomain);
        for c in 0..domain.size() {
            let col: SparseVec = f(c).into_iter().filter(|(_, x)| !x.is_zero()).collect();
            if !col.is_empty() {
                op.cols.insert(c, col);
            }
        }
        op
    }

    /// Builds an operator on V from (row, col, value) with 1-based labels.
    pub fn from_entries(dim: usize, entries: &[(usize, usize, Scalar)]) -> Self {
        let shape = TensorShape::new(dim, 1);
        let mut op = Self::zero(shape, shape);
        for (r, c, x) in entries {
            op.add_entry(r - 1, c - 1, x);
        }
        op
    }

    pub fn add_entry(&mut self, row: usize, col: usize, x: &Scalar) {
        let column = self.cols.entry(col).or_default();
        vec_add_scaled(column, &Scalar::one(), &SparseVec::from([(row, x.clone())]));
        if column.is_empty() {
            self.cols.remove(&col);
        }
    }

    pub fn entry(&self, row: usize, col: usize) -> Scalar {
        self.cols
            .get(&col)
            .and_then(|c| c.get(&row))
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    pub fn column(&self, col: usize) -> Option<&SparseVec> {
        self.cols.get(&col)
    }

    pub fn columns(&self) -> impl Iterator<Item = (&usize, &SparseVec)> {
        self.cols.iter()
    }

    pub fn nnz(&self) -> usize {
        self.cols.values().map(|c| c.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.is_empty()
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (k, x) in v {
            if let Some(col) = self.cols.get(k) {
                vec_add_scaled(&mut out, x, col);
            }
        }
        out
    }

    /// self ∘ other
    pub fn compose(&self, other: &LinearOperator) -> LinearOperator {
        assert_eq!(other.codomain, self.domain, "shape mismatch in compose");
        let mut op = Self::zero(other.domain, self.codomain);
        for (c, col) in &other.cols {
            let img = self.apply(col);
            if !img.is_empty() {
                op.cols.insert(*c, img);
            }
        }
        op
    }

    pub fn add(&self, other: &LinearOperator) -> LinearOperator {
        assert_eq!(self.domain, other.domain);
        assert_eq!(self.codomain, other.codomain);
        let mut op = self.clone();
        for (c, col) in &other.cols {
            let e = op.cols.entry(*c).or_default();
            vec_add_scaled(e, &Scalar::one(), col);
            if e.is_empty() {
                op.cols.remove(c);
            }
        }
        op
    }

    pub fn scale(&self, c: &Scalar) -> LinearOperator {
        if c.is_zero() {
            return Self::zero(self.domain, self.codomain);
        }
        let mut op = self.clone();
        for col in op.cols.values_mut() {
            *col = vec_scale(col, c);
        }
        op
    }

    pub fn sub(&self, other: &LinearOperator) -> LinearOperator {
        self.add(&other.scale(&-Scalar::one()))
    }

    /// Tensor product self ⊗ other.
    pub fn kron(&self, other: &LinearOperator) -> LinearOperator {
        assert_eq!(self.domain.dim, other.domain.dim);
        let dim = self.domain.dim;
        let dom = TensorShape::new(dim, self.domain.arity + other.domain.arity);
        let cod = TensorShape::new(dim, self.codomain.arity + other.codomain.arity);
        let ob = other.domain.size();
        let orow = other.codomain.size();
        let mut op = Self::zero(dom, cod);
        for (c1, col1) in &self.cols {
            for (c2, col2) in &other.cols {
                let mut col = SparseVec::new();
                for (r1, x) in col1 {
                    for (r2, y) in col2 {
                        col.insert(r1 * orow + r2, x * y);
                    }
                }
                op.cols.insert(c1 * ob + c2, col);
            }
        }
        op
    }

    pub fn to_triplets(&self) -> Vec<Triplet> {
        let mut out = Vec::new();
        for (c, col) in &self.cols {
            for (r, x) in col {
                out.push(Triplet {
                    row: self.codomain.decode(*r),
                    col: self.domain.decode(*c),
                    value: x.to_string(),
                });
            }
        }
        out
    }
}

/// Incremental reduced row echelon form. Pivot = smallest nonzero column.
#[derive(Debug, Clone, Default)]
pub struct Rref {
    rows: BTreeMap<usize, SparseVec>,
}

impl Rref {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = (&usize, &SparseVec)> {
        self.rows.iter()
    }

    /// Reduces v modulo the current row space.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut v = v.clone();
        let hits: Vec<usize> = v
            .keys()
            .filter(|k| self.rows.contains_key(k))
            .copied()
            .collect();
        for p in hits {
            if let Some(c) = v.get(&p).cloned() {
                vec_add_scaled(&mut v, &-c, &self.rows[&p]);
            }
        }
        v
    }

    /// Inserts a row; returns true if the rank grew.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let r = self.reduce(v);
        let Some((&p, lead)) = r.iter().next() else {
            return false;
        };
        let r = vec_scale(&r, &lead.inv().expect("nonzero pivot"));
        for row in self.rows.values_mut() {
            if let Some(c) = row.get(&p).cloned() {
                vec_add_scaled(row, &-c, &r);
            }
        }
        self.rows.insert(p, r);
        true
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Basis of {x : A x = 0} for the rows inserted so far, over `ncols` columns.
    pub fn nullspace(&self, ncols: usize) -> Vec<SparseVec> {
        let mut out = Vec::new();
        for f in (0..ncols).filter(|c| !self.rows.contains_key(c)) {
            let mut x = SparseVec::from([(f, Scalar::one())]);
            for (p, row) in &self.rows {
                if let Some(c) = row.get(&f) {
                    x.insert(*p, -c);
                }
            }
            out.push(x);
        }
        out
    }
}

pub fn rank(vectors: &[SparseVec]) -> usize {
    let mut r = Rref::new();
    for v in vectors {
        r.insert(v);
    }
    r.rank()
}

/// Inverse of a square operator given by its columns; None if singular.
pub fn inverse(op: &LinearOperator) -> Option<LinearOperator> {
    let n = op.domain.size();
    assert_eq!(n, op.codomain.size());
    // rows of [A | I]
    let mut rows: Vec<SparseVec> = vec![SparseVec::new(); n];
    for (c, col) in op.columns() {
        for (r, x) in col {
            rows[*r].insert(*c, x.clone());
        }
    }
    let mut rref = Rref::new();
    for (r, mut row) in rows.into_iter().enumerate() {
        row.insert(n + r, Scalar::one());
        rref.insert(&row);
    }
    if rref.rank() != n || rref.pivots().any(|(p, _)| *p >= n) {
        return None;
    }
    let mut inv = LinearOperator::zero(op.codomain, op.domain);
    for (p, row) in rref.pivots() {
        for (k, x) in row.range(n..) {
            inv.add_entry(*p, k - n, x);
        }
    }
    Some(inv)
}
