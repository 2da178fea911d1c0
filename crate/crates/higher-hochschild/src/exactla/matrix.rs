use std::collections::HashMap;

use super::Rational;

/// A sparse vector: strictly increasing indices, no stored zeros.
pub type SparseVec = Vec<(usize, Rational)>;

/// `a + c·b` for sparse vectors.
pub fn axpy(a: &[(usize, Rational)], c: &Rational, b: &[(usize, Rational)]) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, c * &b[j].1));
            j += 1;
        } else {
            let v = &a[i].1 + &(c * &b[j].1);
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Sort a list of `(index, value)` pairs and combine duplicates.
pub fn normalize(mut v: Vec<(usize, Rational)>) -> SparseVec {
    v.sort_by_key(|e| e.0);
    let mut out: SparseVec = Vec::with_capacity(v.len());
    for (i, x) in v {
        match out.last_mut() {
            Some((j, y)) if *j == i => *y += &x,
            _ => out.push((i, x)),
        }
    }
    out.retain(|e| !e.1.is_zero());
    out
}

pub fn scale(v: &[(usize, Rational)], c: &Rational) -> SparseVec {
    if c.is_zero() {
        return Vec::new();
    }
    v.iter().map(|(i, x)| (*i, x * c)).collect()
}

/// Exact sparse matrix over ℚ, stored by columns. Immutable once built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseRationalMatrix {
    rows: usize,
    cols: usize,
    columns: Vec<SparseVec>,
}

impl SparseRationalMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self { rows, cols, columns: vec![Vec::new(); cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self { rows: n, cols: n, columns: (0..n).map(|i| vec![(i, Rational::one())]).collect() }
    }

    /// Build from columns; entries are sorted, merged and bounds-checked.
    pub fn from_columns(rows: usize, columns: Vec<Vec<(usize, Rational)>>) -> Self {
        let columns: Vec<SparseVec> = columns.into_iter().map(normalize).collect();
        for c in &columns {
            if let Some((i, _)) = c.last() {
                assert!(*i < rows, "row index {i} out of bounds {rows}");
            }
        }
        Self { rows, cols: columns.len(), columns }
    }

    pub fn from_triplets(rows: usize, cols: usize, entries: impl IntoIterator<Item = (usize, usize, Rational)>) -> Self {
        let mut columns = vec![Vec::new(); cols];
        for (r, c, x) in entries {
            assert!(c < cols, "column index {c} out of bounds {cols}");
            columns[c].push((r, x));
        }
        Self::from_columns(rows, columns)
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let nr = rows.len();
        let nc = rows.first().map_or(0, |r| r.len());
        let entries = rows.iter().enumerate().flat_map(|(i, r)| {
            r.iter().enumerate().map(move |(j, &x)| (i, j, Rational::from_int(x)))
        });
        Self::from_triplets(nr, nc, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> &[(usize, Rational)] {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.columns
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        let col = &self.columns[c];
        match col.binary_search_by_key(&r, |e| e.0) {
            Ok(k) => col[k].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    /// All nonzero entries as `(row, col, value)` in column-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.columns.iter().enumerate().flat_map(|(c, col)| col.iter().map(move |(r, x)| (*r, c, x)))
    }

    pub fn transpose(&self) -> Self {
        let mut t = vec![Vec::new(); self.rows];
        for (r, c, x) in self.entries() {
            t[r].push((c, x.clone()));
        }
        Self { rows: self.cols, cols: self.rows, columns: t }
    }

    pub fn apply(&self, v: &[(usize, Rational)]) -> SparseVec {
        let mut acc = Vec::new();
        for (j, x) in v {
            for (i, y) in &self.columns[*j] {
                acc.push((*i, x * y));
            }
        }
        normalize(acc)
    }

    /// `self · other`.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        Self { rows: self.rows, cols: other.cols, columns: other.columns.iter().map(|c| self.apply(c)).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let columns =
            self.columns.iter().zip(&other.columns).map(|(a, b)| axpy(a, &Rational::one(), b)).collect();
        Self { rows: self.rows, cols: self.cols, columns }
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        Self { rows: self.rows, cols: self.cols, columns: self.columns.iter().map(|v| scale(v, c)).collect() }
    }

    /// Restrict to the given rows and columns, renumbered in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut pos = HashMap::with_capacity(rows.len());
        for (k, r) in rows.iter().enumerate() {
            pos.insert(*r, k);
        }
        let columns = cols
            .iter()
            .map(|&c| {
                let mut v: SparseVec =
                    self.columns[c].iter().filter_map(|(r, x)| pos.get(r).map(|&k| (k, x.clone()))).collect();
                v.sort_by_key(|e| e.0);
                v
            })
            .collect();
        Self { rows: rows.len(), cols: cols.len(), columns }
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut columns = self.columns.clone();
        for c in &other.columns {
            columns.push(c.iter().map(|(r, x)| (r + self.rows, x.clone())).collect());
        }
        Self { rows: self.rows + other.rows, cols: self.cols + other.cols, columns }
    }

    /// Dense rows, for display and small tests.
    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        let mut d = vec![vec![Rational::zero(); self.cols]; self.rows];
        for (r, c, x) in self.entries() {
            d[r][c] = x.clone();
        }
        d
    }
}

/// Incrementally built row-echelon basis of a subspace of ℚⁿ.
///
/// Each stored vector has a distinct leading index (its smallest index) with
/// coefficient 1. Reduction eliminates every pivot index from a vector, so the
/// reduced remainder is zero exactly when the vector lies in the span.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    pivots: HashMap<usize, usize>,
    vectors: Vec<SparseVec>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.vectors.len()
    }

    pub fn reduce(&self, v: &[(usize, Rational)]) -> SparseVec {
        let mut v: SparseVec = v.to_vec();
        let mut p = 0;
        while p < v.len() {
            let idx = v[p].0;
            match self.pivots.get(&idx) {
                Some(&r) => {
                    let c = -&v[p].1;
                    let row = &self.vectors[r];
                    let mut merged = v[..p].to_vec();
                    merged.extend(axpy(&v[p..], &c, row));
                    v = merged;
                }
                None => p += 1,
            }
        }
        v
    }

    /// Insert `v`; returns whether it enlarged the span.
    pub fn insert(&mut self, v: &[(usize, Rational)]) -> bool {
        let r = self.reduce(v);
        self.push_reduced(r)
    }

    fn push_reduced(&mut self, r: SparseVec) -> bool {
        match r.first() {
            None => false,
            Some((lead, c)) => {
                let lead = *lead;
                let inv = c.recip();
                self.pivots.insert(lead, self.vectors.len());
                self.vectors.push(scale(&r, &inv));
                true
            }
        }
    }

    pub fn contains(&self, v: &[(usize, Rational)]) -> bool {
        self.reduce(v).is_empty()
    }

    pub fn pivot_indices(&self) -> Vec<usize> {
        let mut p: Vec<usize> = self.pivots.keys().copied().collect();
        p.sort_unstable();
        p
    }

    /// Fully reduced form: sorted by pivot, each pivot index absent from the
    /// other vectors.
    pub fn reduced_rows(&self) -> Vec<SparseVec> {
        let mut order: Vec<usize> = (0..self.vectors.len()).collect();
        order.sort_by_key(|&r| self.vectors[r][0].0);
        let mut rows: Vec<SparseVec> = order.iter().map(|&r| self.vectors[r].clone()).collect();
        let pos: HashMap<usize, usize> = rows.iter().enumerate().map(|(k, r)| (r[0].0, k)).collect();
        // Back substitution from the last pivot upwards.
        for k in (0..rows.len()).rev() {
            let mut v = std::mem::take(&mut rows[k]);
            let mut p = 1;
            while p < v.len() {
                let idx = v[p].0;
                match pos.get(&idx) {
                    Some(&other) if other > k => {
                        let c = -&v[p].1;
                        let mut merged = v[..p].to_vec();
                        merged.extend(axpy(&v[p..], &c, &rows[other]));
                        v = merged;
                    }
                    _ => p += 1,
                }
            }
            rows[k] = v;
        }
        rows
    }

    pub fn vectors(&self) -> &[SparseVec] {
        &self.vectors
    }
}

pub fn rank(m: &SparseRationalMatrix) -> usize {
    // Eliminating along the shorter side keeps the pivot table small.
    let mut e = Echelon::new();
    if m.rows() < m.cols() {
        for c in m.columns() {
            e.insert(c);
            if e.rank() == m.rows() {
                break;
            }
        }
    } else {
        let t = m.transpose();
        for c in t.columns() {
            e.insert(c);
            if e.rank() == m.cols() {
                break;
            }
        }
    }
    e.rank()
}

/// A subspace of ℚⁿ given by a linearly independent list of sparse vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<SparseVec>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SubspaceError {
    #[error("vectors are linearly dependent")]
    Dependent,
    #[error("index {index} outside ambient dimension {ambient}")]
    OutOfBounds { index: usize, ambient: usize },
    #[error("ambient dimensions differ: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("subspace is not contained in the enclosing space ({missing} vectors outside)")]
    NotContained { missing: usize },
}

impl Subspace {
    pub fn new(ambient_dim: usize, basis: Vec<Vec<(usize, Rational)>>) -> Result<Self, SubspaceError> {
        let basis: Vec<SparseVec> = basis.into_iter().map(normalize).collect();
        let mut e = Echelon::new();
        for v in &basis {
            if let Some((i, _)) = v.last() {
                if *i >= ambient_dim {
                    return Err(SubspaceError::OutOfBounds { index: *i, ambient: ambient_dim });
                }
            }
            if !e.insert(v) {
                return Err(SubspaceError::Dependent);
            }
        }
        Ok(Self { ambient_dim, basis })
    }

    /// Span of arbitrary vectors, keeping an independent subset in order.
    pub fn span(ambient_dim: usize, vectors: impl IntoIterator<Item = SparseVec>) -> Self {
        let mut e = Echelon::new();
        let basis = vectors.into_iter().filter(|v| e.insert(v)).collect();
        Self { ambient_dim, basis }
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Self { ambient_dim, basis: Vec::new() }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self { ambient_dim, basis: (0..ambient_dim).map(|i| vec![(i, Rational::one())]).collect() }
    }

    pub fn image(m: &SparseRationalMatrix) -> Self {
        Self::span(m.rows(), m.columns().iter().cloned())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.basis
    }

    pub fn echelon(&self) -> Echelon {
        let mut e = Echelon::new();
        for v in &self.basis {
            e.insert(v);
        }
        e
    }

    pub fn contains(&self, v: &[(usize, Rational)]) -> bool {
        self.echelon().contains(v)
    }
}

pub fn kernel_basis(m: &SparseRationalMatrix) -> Subspace {
    let t = m.transpose();
    let mut e = Echelon::new();
    for row in t.columns() {
        e.insert(row);
    }
    let rows = e.reduced_rows();
    let pivots: HashMap<usize, usize> = rows.iter().enumerate().map(|(k, r)| (r[0].0, k)).collect();
    // Column f of the reduced rows, restricted to non-pivot f.
    let mut by_free: HashMap<usize, Vec<(usize, Rational)>> = HashMap::new();
    for r in &rows {
        let p = r[0].0;
        for (j, x) in &r[1..] {
            by_free.entry(*j).or_default().push((p, -x));
        }
    }
    let mut basis = Vec::new();
    for f in 0..m.cols() {
        if pivots.contains_key(&f) {
            continue;
        }
        let mut v = by_free.remove(&f).unwrap_or_default();
        v.push((f, Rational::one()));
        v.sort_by_key(|e| e.0);
        basis.push(v);
    }
    Subspace { ambient_dim: m.cols(), basis }
}

fn check_inside(sub: &Subspace, inside: &Subspace) -> Result<Echelon, SubspaceError> {
    if sub.ambient_dim != inside.ambient_dim {
        return Err(SubspaceError::AmbientMismatch(sub.ambient_dim, inside.ambient_dim));
    }
    let e = inside.echelon();
    let missing = sub.basis.iter().filter(|v| !e.contains(v)).count();
    if missing > 0 {
        return Err(SubspaceError::NotContained { missing });
    }
    Ok(e)
}

/// `dim(inside) − dim(sub)`, after checking `sub ⊆ inside`.
pub fn quotient_dim(sub: &Subspace, inside: &Subspace) -> Result<usize, SubspaceError> {
    check_inside(sub, inside)?;
    Ok(inside.dim() - sub.dim())
}

/// Cycle vectors whose classes form a basis of `cycles / boundaries`.
/// Chosen by pivot completion in the order of the cycle basis.
pub fn representatives(cycles: &Subspace, boundaries: &Subspace) -> Result<Vec<SparseVec>, SubspaceError> {
    check_inside(boundaries, cycles)?;
    let mut e = boundaries.echelon();
    Ok(cycles.basis.iter().filter(|v| e.insert(v)).cloned().collect())
}
