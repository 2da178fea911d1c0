//! Homology of block-graded cochain complexes: exact dimensions,
//! representatives, the ring structure induced by the shuffle product, and
//! quasi-isomorphism tests for chain maps.
//!
//! Complexes are presented through [`BlockComplex`]: finitely many blocks
//! indexed by `(degree, weight)` and differentials `D_n: (n, w) → (n+1, w)`.
//! The lowest materialized degree may additionally receive a streamed
//! differential from one degree below; when it does, homology is exact in
//! that degree too.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactla::{kernel_basis, normalize, rank, Echelon, Rational, SparseRationalMatrix, SparseVec, Subspace};
use crate::hochschild::{shuffle_product, ChainMap, HochschildComplex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("not a chain map: {0}")]
    NotChainMap(String),
    #[error("representatives were not computed")]
    NoRepresentatives,
    #[error("{0}")]
    Other(String),
}

/// A cochain complex split into `(degree, weight)` blocks, with degrees
/// `n_min..=top` materialized.
pub trait BlockComplex {
    fn n_min(&self) -> i32;

    fn top(&self) -> i32 {
        0
    }

    /// Lowest degree whose homology is exact.
    fn trusted_min(&self) -> i32;

    fn weights(&self, n: i32) -> Vec<u32>;

    fn block_len(&self, n: i32, w: u32) -> usize;

    /// `D_n` on block `(n, w)`, or `None` when it is zero.
    fn differential_block(&self, n: i32, w: u32) -> Option<&SparseRationalMatrix>;

    /// Streams the columns of `D_{n_min − 1}` into block `(n_min, w)`;
    /// `f` returns `false` to stop.
    fn for_each_incoming(&self, _w: u32, _f: &mut dyn FnMut(SparseVec) -> bool) {}
}

impl BlockComplex for HochschildComplex {
    fn n_min(&self) -> i32 {
        HochschildComplex::n_min(self)
    }

    fn trusted_min(&self) -> i32 {
        HochschildComplex::n_min(self)
    }

    fn weights(&self, n: i32) -> Vec<u32> {
        HochschildComplex::weights(self, n)
    }

    fn block_len(&self, n: i32, w: u32) -> usize {
        HochschildComplex::block_len(self, n, w)
    }

    fn differential_block(&self, n: i32, w: u32) -> Option<&SparseRationalMatrix> {
        self.differential_ref(n, w)
    }

    fn for_each_incoming(&self, w: u32, f: &mut dyn FnMut(SparseVec) -> bool) {
        HochschildComplex::for_each_incoming(self, w, f)
    }
}

/// A complex with every block and differential stored explicitly. The
/// incoming differential `D_{n_min−1}` may be stored under `(n_min − 1, w)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MaterializedComplex {
    pub n_min: i32,
    pub top: i32,
    pub trusted_min: i32,
    pub lens: BTreeMap<(i32, u32), usize>,
    /// `D_n` on block `(n, w)`.
    pub diffs: BTreeMap<(i32, u32), SparseRationalMatrix>,
}

impl MaterializedComplex {
    /// Checks `D_{n+1} D_n = 0` on every block.
    pub fn check_d_squared(&self) -> Result<(), String> {
        for (&(n, w), m) in &self.diffs {
            if let Some(next) = self.diffs.get(&(n + 1, w)) {
                if !next.mul(m).is_zero() {
                    return Err(format!("D_{} ∘ D_{} ≠ 0 in weight {w}", n + 1, n));
                }
            }
        }
        Ok(())
    }
}

impl BlockComplex for MaterializedComplex {
    fn n_min(&self) -> i32 {
        self.n_min
    }

    fn top(&self) -> i32 {
        self.top
    }

    fn trusted_min(&self) -> i32 {
        self.trusted_min
    }

    fn weights(&self, n: i32) -> Vec<u32> {
        self.lens.range((n, 0)..=(n, u32::MAX)).filter(|(_, l)| **l > 0).map(|((_, w), _)| *w).collect()
    }

    fn block_len(&self, n: i32, w: u32) -> usize {
        self.lens.get(&(n, w)).copied().unwrap_or(0)
    }

    fn differential_block(&self, n: i32, w: u32) -> Option<&SparseRationalMatrix> {
        self.diffs.get(&(n, w))
    }

    fn for_each_incoming(&self, w: u32, f: &mut dyn FnMut(SparseVec) -> bool) {
        if let Some(m) = self.diffs.get(&(self.n_min - 1, w)) {
            for col in m.columns() {
                if !f(col.clone()) {
                    break;
                }
            }
        }
    }
}

fn rank_of(m: Option<&SparseRationalMatrix>) -> usize {
    m.map_or(0, rank)
}

/// Echelon basis of the image of `D_{n−1}` in block `(n, w)`. In the lowest
/// degree the streamed columns are used, stopping once the image fills
/// `limit` dimensions.
fn boundaries<C: BlockComplex + ?Sized>(c: &C, n: i32, w: u32, limit: usize) -> Echelon {
    let mut e = Echelon::new();
    if limit == 0 {
        return e;
    }
    if n > c.n_min() {
        if let Some(m) = c.differential_block(n - 1, w) {
            for col in m.columns() {
                e.insert(col);
                if e.rank() == limit {
                    break;
                }
            }
        }
    } else {
        c.for_each_incoming(w, &mut |col| {
            e.insert(&col);
            e.rank() < limit
        });
    }
    e
}

fn cycles<C: BlockComplex + ?Sized>(c: &C, n: i32, w: u32) -> Subspace {
    match c.differential_block(n, w) {
        Some(m) => kernel_basis(m),
        None => Subspace::full(c.block_len(n, w)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Representative {
    pub weight: u32,
    /// Coordinates in block `(degree, weight)`.
    pub vector: SparseVec,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeHomology {
    pub dim: usize,
    pub by_weight: BTreeMap<u32, usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub representatives: Option<Vec<Representative>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyReport {
    pub degrees: BTreeMap<i32, DegreeHomology>,
    pub trusted_min: i32,
}

impl HomologyReport {
    /// Dimensions from degree 0 downwards.
    pub fn dims(&self) -> Vec<usize> {
        self.degrees.iter().rev().map(|(_, h)| h.dim).collect()
    }

    pub fn dim(&self, n: i32) -> Option<usize> {
        self.degrees.get(&n).map(|h| h.dim)
    }

    /// Dimensions of trusted degrees only, from 0 downwards.
    pub fn trusted_dims(&self) -> Vec<usize> {
        self.degrees.iter().rev().filter(|(n, _)| **n >= self.trusted_min).map(|(_, h)| h.dim).collect()
    }
}

/// Homology dimension of one block.
pub fn block_homology<C: BlockComplex + ?Sized>(c: &C, n: i32, w: u32) -> usize {
    let len = c.block_len(n, w);
    let z = len - rank_of(c.differential_block(n, w));
    z - boundaries(c, n, w, z).rank()
}

/// Homology in every degree `n_min..=top`; degrees below `trusted_min` are
/// reported but may be too large.
pub fn homology<C: BlockComplex + ?Sized>(c: &C, with_representatives: bool) -> HomologyReport {
    let mut degrees = BTreeMap::new();
    for n in c.n_min()..=c.top() {
        let mut by_weight = BTreeMap::new();
        let mut reps = Vec::new();
        for w in c.weights(n) {
            let h = if with_representatives {
                let z = cycles(c, n, w);
                let b = boundaries(c, n, w, z.dim());
                let mut e = b;
                let before = e.rank();
                for v in z.basis() {
                    if e.insert(v) {
                        reps.push(Representative { weight: w, vector: v.clone() });
                    }
                }
                e.rank() - before
            } else {
                block_homology(c, n, w)
            };
            if h > 0 {
                by_weight.insert(w, h);
            }
        }
        let dim = by_weight.values().sum();
        degrees.insert(
            n,
            DegreeHomology { dim, by_weight, representatives: with_representatives.then_some(reps) },
        );
    }
    HomologyReport { degrees, trusted_min: c.trusted_min() }
}

/// [`homology`] without representatives, with the blocks spread over
/// `jobs` threads.
pub fn homology_parallel<C: BlockComplex + Sync + ?Sized>(c: &C, jobs: usize) -> HomologyReport {
    use rayon::prelude::*;
    let blocks: Vec<(i32, u32)> =
        (c.n_min()..=c.top()).flat_map(|n| c.weights(n).into_iter().map(move |w| (n, w))).collect();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build().expect("thread pool");
    let dims: Vec<usize> = pool.install(|| blocks.par_iter().map(|&(n, w)| block_homology(c, n, w)).collect());
    let mut degrees: BTreeMap<i32, DegreeHomology> = (c.n_min()..=c.top())
        .map(|n| (n, DegreeHomology { dim: 0, by_weight: BTreeMap::new(), representatives: None }))
        .collect();
    for ((n, w), h) in blocks.into_iter().zip(dims) {
        if h > 0 {
            let d = degrees.get_mut(&n).expect("degree in range");
            d.by_weight.insert(w, h);
            d.dim += h;
        }
    }
    HomologyReport { degrees, trusted_min: c.trusted_min() }
}

/// Solves `v ≡ Σ c_i r_i` modulo the span of `e`, with `r_i` independent
/// modulo `e`. Returns `None` if `v` is not in the span.
fn express(e: &Echelon, reps: &[SparseVec], v: &[(usize, Rational)]) -> Option<Vec<(usize, Rational)>> {
    let reduced: Vec<SparseVec> = reps.iter().map(|r| e.reduce(r)).collect();
    let target = e.reduce(v);
    if target.is_empty() {
        return Some(Vec::new());
    }
    let rows = reduced.iter().chain(std::iter::once(&target)).flat_map(|r| r.iter().map(|(i, _)| *i)).max()? + 1;
    let mut cols = reduced.clone();
    cols.push(target.iter().map(|(i, x)| (*i, -x)).collect());
    let k = kernel_basis(&SparseRationalMatrix::from_columns(rows, cols));
    let last = reduced.len();
    for v in k.basis() {
        if let Some((_, c)) = v.iter().find(|(i, _)| *i == last) {
            let inv = c.recip();
            return Some(v.iter().filter(|(i, _)| *i != last).map(|(i, x)| (*i, x * &inv)).collect());
        }
    }
    None
}

/// Product of two homology classes, expressed in the representative basis of
/// the product's degree; `None` where the product leaves the trusted range.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingTable {
    /// `(degree, index within degree)` of every representative.
    pub classes: Vec<(i32, usize)>,
    /// `products[(a, b)]` = coordinates of `[r_a]·[r_b]` over `classes`.
    pub products: BTreeMap<(usize, usize), Option<Vec<(usize, Rational)>>>,
}

/// The ring structure on `HH_X(A)` induced by the shuffle product.
pub fn ring_on_homology(c: &HochschildComplex, report: &HomologyReport) -> Result<RingTable, HomologyError> {
    let mut classes = Vec::new();
    let mut chains = Vec::new();
    for (n, h) in &report.degrees {
        let reps = h.representatives.as_ref().ok_or(HomologyError::NoRepresentatives)?;
        for (i, r) in reps.iter().enumerate() {
            classes.push((*n, i));
            chains.push((*n, c.chain_of(&r.vector, *n, r.weight)));
        }
    }
    let mut products = BTreeMap::new();
    for a in 0..chains.len() {
        for b in 0..chains.len() {
            let n = chains[a].0 + chains[b].0;
            let entry = if n < report.trusted_min {
                None
            } else {
                let p = shuffle_product(c, &chains[a].1, &chains[b].1).map_err(|e| HomologyError::Other(e.to_string()))?;
                Some(express_chain(c, report, &classes, n, &p)?)
            };
            products.insert((a, b), entry);
        }
    }
    Ok(RingTable { classes, products })
}

/// Coordinates of the class of a cycle over the representatives of degree `n`.
fn express_chain(
    c: &HochschildComplex,
    report: &HomologyReport,
    classes: &[(i32, usize)],
    n: i32,
    chain: &crate::hochschild::Chain,
) -> Result<Vec<(usize, Rational)>, HomologyError> {
    let h = &report.degrees[&n];
    let reps = h.representatives.as_ref().ok_or(HomologyError::NoRepresentatives)?;
    let offset = classes.iter().position(|&(m, _)| m == n).unwrap_or(0);
    let mut by_weight: BTreeMap<u32, crate::hochschild::Chain> = BTreeMap::new();
    for (t, x) in chain {
        by_weight.entry(c.weight_of(t)).or_default().insert(t.clone(), x.clone());
    }
    let mut out = Vec::new();
    for (w, part) in by_weight {
        let v = c.coordinates(&part, n, w).map_err(|e| HomologyError::Other(e.to_string()))?;
        let z = cycles(c, n, w);
        let e = boundaries(c, n, w, z.dim());
        let idx: Vec<usize> = (0..reps.len()).filter(|&i| reps[i].weight == w).collect();
        let rs: Vec<SparseVec> = idx.iter().map(|&i| reps[i].vector.clone()).collect();
        let coeffs = express(&e, &rs, &v)
            .ok_or_else(|| HomologyError::Other(format!("product in degree {n} is not a cycle")))?;
        out.extend(coeffs.into_iter().map(|(j, x)| (offset + idx[j], x)));
    }
    out.sort_by_key(|e| e.0);
    Ok(out)
}

/// Checks `f D = D f` on every block both complexes materialize.
pub fn check_chain_map<C: BlockComplex + ?Sized, D: BlockComplex + ?Sized>(
    f: &ChainMap,
    c: &C,
    d: &D,
) -> Result<(), HomologyError> {
    for (&(n, w), m) in &f.blocks {
        if n >= c.top() {
            continue;
        }
        let lhs = match (f.block(n + 1, w), c.differential_block(n, w)) {
            (Some(g), Some(dc)) => g.mul(dc),
            _ => SparseRationalMatrix::zero(d.block_len(n + 1, w), c.block_len(n, w)),
        };
        let rhs = match d.differential_block(n, w) {
            Some(dd) => dd.mul(m),
            None => SparseRationalMatrix::zero(d.block_len(n + 1, w), c.block_len(n, w)),
        };
        if lhs != rhs {
            return Err(HomologyError::NotChainMap(format!("f D ≠ D f from degree {n}, weight {w}")));
        }
    }
    Ok(())
}

/// Whether `f` induces an isomorphism on homology, per degree, over the
/// degrees trusted on both sides.
pub fn is_quasi_iso<C: BlockComplex + ?Sized, D: BlockComplex + ?Sized>(
    f: &ChainMap,
    c: &C,
    d: &D,
) -> Result<BTreeMap<i32, bool>, HomologyError> {
    check_chain_map(f, c, d)?;
    let lo = c.trusted_min().max(d.trusted_min()).max(f.n_min);
    let mut out = BTreeMap::new();
    for n in lo..=c.top().min(d.top()) {
        let mut ok = true;
        let mut ws: Vec<u32> = c.weights(n);
        ws.extend(d.weights(n));
        ws.sort_unstable();
        ws.dedup();
        for w in ws {
            let hc = block_homology(c, n, w);
            let hd = block_homology(d, n, w);
            if hc != hd {
                ok = false;
                break;
            }
            if hc == 0 {
                continue;
            }
            let zd = d.block_len(n, w) - rank_of(d.differential_block(n, w));
            let mut e = boundaries(d, n, w, zd);
            let before = e.rank();
            let m = f.block(n, w);
            for z in cycles(c, n, w).basis() {
                let image = m.map(|m| m.apply(z)).unwrap_or_default();
                e.insert(&normalize(image));
            }
            if e.rank() - before != hc {
                ok = false;
                break;
            }
        }
        out.insert(n, ok);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cdga::{dual_numbers, exterior, koszul};
    use crate::hochschild::{build_complex, BuildOptions};
    use crate::simplicial::standard_model;

    fn dims(space: &str, a: &crate::cdga::GradedAlgebra, n_min: i32, normalized: bool) -> Vec<usize> {
        let x = standard_model(space).unwrap();
        let c = build_complex(&x, a, None, n_min, &BuildOptions { normalized, max_basis: None }).unwrap();
        homology(&c, false).dims()
    }

    #[test]
    fn small_values() {
        assert_eq!(dims("point", &dual_numbers(), -4, false), vec![2, 0, 0, 0, 0]);
        assert_eq!(dims("point", &exterior(-1), -3, false), vec![1, 1, 0, 0]);
        assert_eq!(dims("circle_minimal", &dual_numbers(), -5, true), vec![2, 1, 1, 1, 1, 1]);
        assert_eq!(dims("circle_minimal", &dual_numbers(), -4, false), vec![2, 1, 1, 1, 1]);
        assert_eq!(dims("sphere(0)", &dual_numbers(), -2, false), vec![4, 0, 0]);
        assert_eq!(dims("circle_minimal", &koszul(), -3, false), vec![1, 0, 0, 0]);
    }
}
