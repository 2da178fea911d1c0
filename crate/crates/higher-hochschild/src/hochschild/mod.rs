//! The higher Hochschild complex `CH_X(A)` and its pointed variant
//! `CH_X(A, M)` over a finite simplicial set.
//!
//! At level `k` the complex is `A^{⊗X_k}` (unpointed) or `M ⊗ A^{⊗(X_k∖*)}`
//! (pointed), spanned by monomial tensors of basis elements. A tensor of
//! internal degree `d` at level `k` sits in total degree `n = d − k`, and
//!
//! ```text
//! D = (−1)^k δ + Σ_{i=0}^{k} (−1)^i (d_i)_*
//! ```
//!
//! where `δ` is the internal differential with the usual Koszul signs and
//! `(d_i)_*` multiplies factors that land on the same simplex. Because `D`
//! preserves the weight grading of the algebra, every total degree is split
//! into weight blocks and all matrices are block diagonal.
//!
//! A build over the window `[n_min, 0]` materializes bases and differentials
//! for degrees `n_min..=0` and can stream the columns of the differential
//! arriving from degree `n_min − 1`, so homology is exact in every degree
//! of the window, the lowest included.

mod layout;
mod maps;
mod pushout;
mod shuffle;
mod sign;

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::cdga::{GradedAlgebra, GradedModule};
use crate::exactla::{normalize, Rational, SparseRationalMatrix, SparseVec};
use crate::simplicial::FiniteSimplicialSet;

pub use layout::Tensor;
pub(crate) use layout::Layout;
pub use maps::{induced_chain, induced_map, ChainMap};
pub use pushout::{degree_table, pushout_comparison, DegreeDims, LevelComparison, PushoutComparison};
pub use shuffle::{check_shuffle_laws, shuffle_product};
pub use sign::{koszul_sign, permutation_sign};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HochschildError {
    #[error("window lower bound must be ≤ 0, got {0}")]
    Window(i32),
    #[error("module coefficients need a pointed space")]
    Unpointed,
    #[error("module is over {module}, complex is over {algebra}")]
    ModuleMismatch { module: String, algebra: String },
    #[error("tensor basis of {size} elements exceeds the cap of {cap}")]
    BasisCap { size: usize, cap: usize },
    #[error("incompatible complexes: {0}")]
    Incompatible(String),
    #[error("chain outside the window: {0}")]
    OutOfWindow(String),
    #[error("{0}")]
    Map(String),
}

/// A sparse chain: monomial tensors with nonzero rational coefficients.
pub type Chain = BTreeMap<Tensor, Rational>;

/// Adds `c · t` to a chain, dropping cancelled terms.
pub fn chain_add(chain: &mut Chain, t: Tensor, c: Rational) {
    if c.is_zero() {
        return;
    }
    match chain.entry(t) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let s = e.get() + &c;
            if s.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BuildOptions {
    pub normalized: bool,
    /// Abort when the materialized basis would exceed this many tensors.
    pub max_basis: Option<usize>,
}

impl BuildOptions {
    pub fn normalized() -> Self {
        Self { normalized: true, max_basis: None }
    }

    /// Options with the cap read from `HH_MAX_BASIS`, if set.
    pub fn from_env(normalized: bool) -> Self {
        let max_basis = std::env::var("HH_MAX_BASIS").ok().and_then(|v| v.trim().parse().ok());
        Self { normalized, max_basis }
    }
}

/// Basis of one `(degree, weight)` block.
#[derive(Clone, Debug, Default)]
pub struct Block {
    tensors: Vec<Tensor>,
    index: HashMap<Tensor, usize>,
}

impl Block {
    fn push(&mut self, t: Tensor) {
        self.index.insert(t.clone(), self.tensors.len());
        self.tensors.push(t);
    }

    pub fn len(&self) -> usize {
        self.tensors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tensors.is_empty()
    }

    pub fn tensors(&self) -> &[Tensor] {
        &self.tensors
    }

    pub fn position(&self, t: &Tensor) -> Option<usize> {
        self.index.get(t).copied()
    }
}

#[derive(Clone, Debug)]
pub struct HochschildComplex {
    algebra: GradedAlgebra,
    module: Option<GradedModule>,
    n_min: i32,
    normalized: bool,
    pub(crate) layout: Layout,
    blocks: BTreeMap<(i32, u32), Block>,
    /// `D_n` on block `(n, w)`, for `n_min ≤ n < 0`.
    diffs: BTreeMap<(i32, u32), SparseRationalMatrix>,
}

/// Builds the complex over the window `[n_min, 0]`.
pub fn build_complex(
    space: &FiniteSimplicialSet,
    algebra: &GradedAlgebra,
    module: Option<&GradedModule>,
    n_min: i32,
    options: &BuildOptions,
) -> Result<HochschildComplex, HochschildError> {
    HochschildComplex::build(space, algebra, module, n_min, options)
}

impl HochschildComplex {
    pub fn build(
        space: &FiniteSimplicialSet,
        algebra: &GradedAlgebra,
        module: Option<&GradedModule>,
        n_min: i32,
        options: &BuildOptions,
    ) -> Result<Self, HochschildError> {
        if n_min > 0 {
            return Err(HochschildError::Window(n_min));
        }
        if let Some(m) = module {
            if space.basepoint().is_none() {
                return Err(HochschildError::Unpointed);
            }
            if m.algebra().name() != algebra.name() {
                return Err(HochschildError::ModuleMismatch {
                    module: m.algebra().name().to_string(),
                    algebra: algebra.name().to_string(),
                });
            }
        }
        let max_level = (1 - n_min) as usize;
        let layout = Layout::new(space, algebra, module, max_level, n_min - 1);
        let mut blocks: BTreeMap<(i32, u32), Block> = BTreeMap::new();
        let mut total = 0usize;
        for n in (n_min..=0).rev() {
            for k in 0..=(-n) as usize {
                let d = n + k as i32;
                let mut over = None;
                layout.for_each_tensor(k, d, &mut |slots| {
                    if options.normalized && layout.is_degenerate(k, slots) {
                        return true;
                    }
                    total += 1;
                    if let Some(cap) = options.max_basis {
                        if total > cap {
                            over = Some(cap);
                            return false;
                        }
                    }
                    let w = layout.weight(slots);
                    blocks.entry((n, w)).or_default().push(Tensor::new(k, slots.to_vec()));
                    true
                });
                if let Some(cap) = over {
                    return Err(HochschildError::BasisCap { size: total, cap });
                }
            }
        }
        // the streamed incoming degree counts too: it is enumerated in full
        if let Some(cap) = options.max_basis {
            let n = n_min - 1;
            for k in 0..=(-n) as usize {
                layout.for_each_tensor(k, n + k as i32, &mut |slots| {
                    if !(options.normalized && layout.is_degenerate(k, slots)) {
                        total += 1;
                    }
                    total <= cap
                });
                if total > cap {
                    return Err(HochschildError::BasisCap { size: total, cap });
                }
            }
        }
        let mut c = Self {
            algebra: algebra.clone(),
            module: module.cloned(),
            n_min,
            normalized: options.normalized,
            layout,
            blocks,
            diffs: BTreeMap::new(),
        };
        let keys: Vec<(i32, u32)> = c.blocks.keys().copied().filter(|(n, _)| *n < 0).collect();
        for (n, w) in keys {
            let cols: Vec<SparseVec> = c.blocks[&(n, w)].tensors.iter().map(|t| c.column(t, n + 1, w)).collect();
            let rows = c.block_len(n + 1, w);
            c.diffs.insert((n, w), SparseRationalMatrix::from_columns(rows, cols));
        }
        Ok(c)
    }

    /// Coordinates of `D t` in block `(n, w)`.
    fn column(&self, t: &Tensor, n: i32, w: u32) -> SparseVec {
        let mut terms = Vec::new();
        self.layout.total_differential(t, &Rational::one(), &mut terms);
        let block = self.blocks.get(&(n, w));
        let mut col = Vec::with_capacity(terms.len());
        for (u, c) in terms {
            match block.and_then(|b| b.position(&u)) {
                Some(i) => col.push((i, c)),
                None => debug_assert!(
                    self.normalized && self.layout.is_degenerate(u.level, &u.slots),
                    "differential left the basis: {}",
                    self.layout.display(&u)
                ),
            }
        }
        normalize(col)
    }

    pub fn space(&self) -> &FiniteSimplicialSet {
        &self.layout.space
    }

    pub fn algebra(&self) -> &GradedAlgebra {
        &self.algebra
    }

    pub fn module(&self) -> Option<&GradedModule> {
        self.module.as_ref()
    }

    pub fn n_min(&self) -> i32 {
        self.n_min
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn is_pointed(&self) -> bool {
        self.module.is_some()
    }

    /// Weights occurring in degree `n`, ascending.
    pub fn weights(&self, n: i32) -> Vec<u32> {
        self.blocks.range((n, 0)..=(n, u32::MAX)).map(|((_, w), _)| *w).collect()
    }

    pub fn block(&self, n: i32, w: u32) -> Option<&Block> {
        self.blocks.get(&(n, w))
    }

    pub fn block_len(&self, n: i32, w: u32) -> usize {
        self.blocks.get(&(n, w)).map_or(0, Block::len)
    }

    /// Dimension of the chains in degree `n`.
    pub fn dim(&self, n: i32) -> usize {
        self.weights(n).iter().map(|&w| self.block_len(n, w)).sum()
    }

    pub fn total_basis(&self) -> usize {
        self.blocks.values().map(Block::len).sum()
    }

    /// `D_n` restricted to weight `w`, as a map from block `(n, w)` to
    /// block `(n+1, w)`; `None` outside `n_min ≤ n < 0`.
    pub fn differential(&self, n: i32, w: u32) -> Option<SparseRationalMatrix> {
        if n < self.n_min || n >= 0 {
            return None;
        }
        Some(
            self.diffs
                .get(&(n, w))
                .cloned()
                .unwrap_or_else(|| SparseRationalMatrix::zero(self.block_len(n + 1, w), 0)),
        )
    }

    pub(crate) fn differential_ref(&self, n: i32, w: u32) -> Option<&SparseRationalMatrix> {
        self.diffs.get(&(n, w))
    }

    /// Streams the columns of `D_{n_min − 1}` of weight `w` (coordinates in
    /// block `(n_min, w)`). `f` returns `false` to stop early.
    pub fn for_each_incoming(&self, w: u32, f: &mut dyn FnMut(SparseVec) -> bool) {
        let n = self.n_min - 1;
        let l = &self.layout;
        for k in 0..=(-n) as usize {
            let d = n + k as i32;
            let go = l.for_each_tensor(k, d, &mut |slots| {
                if self.normalized && l.is_degenerate(k, slots) {
                    return true;
                }
                if l.weight(slots) != w {
                    return true;
                }
                let col = self.column(&Tensor::new(k, slots.to_vec()), self.n_min, w);
                if col.is_empty() {
                    return true;
                }
                f(col)
            });
            if !go {
                return;
            }
        }
    }

    /// Number of basis tensors in degree `n_min − 1` (enumerated, not stored).
    pub fn incoming_len(&self) -> usize {
        let n = self.n_min - 1;
        let l = &self.layout;
        let mut count = 0;
        for k in 0..=(-n) as usize {
            l.for_each_tensor(k, n + k as i32, &mut |slots| {
                if !(self.normalized && l.is_degenerate(k, slots)) {
                    count += 1;
                }
                true
            });
        }
        count
    }

    /// Total degree of a tensor.
    pub fn degree_of(&self, t: &Tensor) -> i32 {
        self.layout.internal_degree(&t.slots) - t.level as i32
    }

    pub fn weight_of(&self, t: &Tensor) -> u32 {
        self.layout.weight(&t.slots)
    }

    pub fn display(&self, t: &Tensor) -> String {
        self.layout.display(t)
    }

    /// `D` of a chain. Degenerate terms are dropped in a normalized build.
    pub fn apply_d(&self, chain: &Chain) -> Chain {
        let mut out = Chain::new();
        let mut terms = Vec::new();
        for (t, c) in chain {
            self.layout.total_differential(t, c, &mut terms);
        }
        for (t, c) in terms {
            if !(self.normalized && self.layout.is_degenerate(t.level, &t.slots)) {
                chain_add(&mut out, t, c);
            }
        }
        out
    }

    /// Coordinates of a homogeneous chain in block `(n, w)`.
    pub fn coordinates(&self, chain: &Chain, n: i32, w: u32) -> Result<SparseVec, HochschildError> {
        let block = self.blocks.get(&(n, w));
        let mut v = Vec::new();
        for (t, c) in chain {
            match block.and_then(|b| b.position(t)) {
                Some(i) => v.push((i, c.clone())),
                None => {
                    return Err(HochschildError::OutOfWindow(format!(
                        "{} is not in block ({n}, {w})",
                        self.display(t)
                    )))
                }
            }
        }
        Ok(normalize(v))
    }

    /// The chain with coordinates `v` in block `(n, w)`.
    pub fn chain_of(&self, v: &[(usize, Rational)], n: i32, w: u32) -> Chain {
        let block = &self.blocks[&(n, w)];
        v.iter().map(|(i, c)| (block.tensors[*i].clone(), c.clone())).collect()
    }

    /// Checks `D∘D = 0` as matrix identities on every materialized degree,
    /// and on every streamed column from degree `n_min − 1`.
    pub fn check_d_squared(&self) -> Result<(), String> {
        for (&(n, w), m) in &self.diffs {
            if let Some(next) = self.diffs.get(&(n + 1, w)) {
                let p = next.mul(m);
                if !p.is_zero() {
                    return Err(format!("D_{} ∘ D_{} ≠ 0 in weight {w}", n + 1, n));
                }
            }
        }
        let weights: Vec<u32> = self.weights(self.n_min);
        for w in weights {
            let Some(next) = self.diffs.get(&(self.n_min, w)) else { continue };
            let mut bad = false;
            self.for_each_incoming(w, &mut |col| {
                bad = !next.apply(&col).is_empty();
                !bad
            });
            if bad {
                return Err(format!("D_{} ∘ D_{} ≠ 0 in weight {w}", self.n_min, self.n_min - 1));
            }
        }
        Ok(())
    }

    /// The basis of level `k` in internal degree `d`, all weights, in
    /// enumeration order (normalized builds drop degenerate tensors).
    pub fn level_basis(&self, k: usize, d: i32) -> Vec<Tensor> {
        let mut out = Vec::new();
        if k > self.layout.max_level() {
            return out;
        }
        self.layout.for_each_tensor(k, d, &mut |slots| {
            if !(self.normalized && self.layout.is_degenerate(k, slots)) {
                out.push(Tensor::new(k, slots.to_vec()));
            }
            true
        });
        out
    }

    /// Matrix of `(d_i)_*` from level `k`, internal degree `d`, to level `k−1`,
    /// in the bases of [`level_basis`](Self::level_basis).
    pub fn face_matrix(&self, k: usize, i: usize, d: i32) -> SparseRationalMatrix {
        assert!(k >= 1 && i <= k, "face index out of range");
        let src = self.level_basis(k, d);
        let tgt = self.level_basis(k - 1, d);
        let index: HashMap<&Tensor, usize> = tgt.iter().enumerate().map(|(p, t)| (t, p)).collect();
        let l = &self.layout;
        let cols = src
            .iter()
            .map(|t| {
                let mut terms = Vec::new();
                l.push_forward(&t.slots, &l.face_slots[k][i], l.nslots[k - 1], &Rational::one(), &mut terms);
                normalize(
                    terms
                        .into_iter()
                        .filter_map(|(s, c)| index.get(&Tensor::new(k - 1, s)).map(|&p| (p, c)))
                        .collect(),
                )
            })
            .collect();
        SparseRationalMatrix::from_columns(tgt.len(), cols)
    }

    /// Matrix of the internal differential `δ` (without the `(−1)^k`) from
    /// level `k`, internal degree `d`, to internal degree `d+1`.
    pub fn internal_matrix(&self, k: usize, d: i32) -> SparseRationalMatrix {
        let src = self.level_basis(k, d);
        let tgt = self.level_basis(k, d + 1);
        let index: HashMap<&Tensor, usize> = tgt.iter().enumerate().map(|(p, t)| (t, p)).collect();
        let cols = src
            .iter()
            .map(|t| {
                let mut terms = Vec::new();
                self.layout.internal(&t.slots, &Rational::one(), &mut terms);
                normalize(
                    terms.into_iter().filter_map(|(s, c)| index.get(&Tensor::new(k, s)).map(|&p| (p, c))).collect(),
                )
            })
            .collect();
        SparseRationalMatrix::from_columns(tgt.len(), cols)
    }

    /// The unit tensor at level 0 (all slots the unit, module slot given).
    pub fn unit_tensor(&self, module_index: Option<u16>) -> Tensor {
        let n = self.layout.nslots[0];
        let mut slots = vec![self.layout.table.unit as u16; n];
        if self.is_pointed() {
            slots[0] = module_index.unwrap_or(0);
        }
        Tensor::new(0, slots)
    }

    /// Names of the algebra basis elements available as slot values.
    pub fn algebra_basis_names(&self) -> &[String] {
        &self.layout.table.names
    }

    pub fn slot_count(&self, level: usize) -> usize {
        self.layout.nslots[level]
    }

    pub fn max_level(&self) -> usize {
        self.layout.max_level()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cdga::{dual_numbers, exterior, koszul, polynomial};
    use crate::simplicial::standard_model;

    fn build(space: &str, a: &GradedAlgebra, n_min: i32, normalized: bool) -> HochschildComplex {
        let x = standard_model(space).unwrap();
        build_complex(&x, a, None, n_min, &BuildOptions { normalized, max_basis: None }).unwrap()
    }

    #[test]
    fn point_is_the_algebra() {
        let c = build("point", &dual_numbers(), -4, false);
        for n in -4..=0 {
            assert_eq!(c.dim(n), 2);
        }
        // faces are all the identity, so D alternates 0, id, 0, …
        for n in -4..0 {
            for w in c.weights(n) {
                let m = c.differential(n, w).unwrap();
                let expect = if n % 2 == 0 { SparseRationalMatrix::identity(1) } else { SparseRationalMatrix::zero(1, 1) };
                assert_eq!(m, expect, "degree {n}");
            }
        }
        c.check_d_squared().unwrap();
        let c = build("point", &dual_numbers(), -4, true);
        assert_eq!((-4..=0).map(|n| c.dim(n)).collect::<Vec<_>>(), vec![0, 0, 0, 0, 2]);
    }

    #[test]
    fn d_squared_small_models() {
        for space in ["point", "circle_minimal", "interval", "circle_two_cell", "sphere(2)"] {
            for a in [dual_numbers(), exterior(-1), polynomial(-2), koszul()] {
                for normalized in [false, true] {
                    let c = build(space, &a, -3, normalized);
                    c.check_d_squared().unwrap_or_else(|e| panic!("{space} {}: {e}", a.name()));
                }
            }
        }
    }
}
