use std::collections::BTreeMap;

use super::{chain_add, Chain, HochschildComplex, HochschildError, Tensor};
use crate::exactla::{normalize, Rational, SparseRationalMatrix};
use crate::simplicial::SimplicialMap;

/// A degree-0, weight-preserving map between block-graded complexes:
/// one matrix per `(degree, weight)` of the source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    pub n_min: i32,
    pub blocks: BTreeMap<(i32, u32), SparseRationalMatrix>,
}

impl ChainMap {
    pub fn block(&self, n: i32, w: u32) -> Option<&SparseRationalMatrix> {
        self.blocks.get(&(n, w))
    }

    /// `other ∘ self`, block by block.
    pub fn then(&self, other: &ChainMap) -> ChainMap {
        let mut blocks = BTreeMap::new();
        for (key, m) in &self.blocks {
            if let Some(o) = other.blocks.get(key) {
                blocks.insert(*key, o.mul(m));
            }
        }
        ChainMap { n_min: self.n_min.max(other.n_min), blocks }
    }
}

/// Slot maps `source slot → target slot` of `f` on levels `0..=max_level`.
fn slot_maps(f: &SimplicialMap, c: &HochschildComplex, d: &HochschildComplex, max_level: usize) -> Vec<Vec<usize>> {
    let (ls, lt) = (&c.layout, &d.layout);
    (0..=max_level)
        .map(|k| {
            let mut map = vec![0; ls.nslots[k]];
            for (p, s) in ls.levels.simplices[k].iter().enumerate() {
                let q = lt.levels.index[k][&f.apply(s)];
                map[ls.slot_of[k][p]] = lt.slot_of[k][q];
            }
            map
        })
        .collect()
}

fn check_compatible(f: &SimplicialMap, c: &HochschildComplex, d: &HochschildComplex) -> Result<(), HochschildError> {
    let bad = |m: &str| Err(HochschildError::Incompatible(m.into()));
    if f.source() != c.space() || f.target() != d.space() {
        return bad("map does not go between the complexes' spaces");
    }
    if c.algebra().name() != d.algebra().name() {
        return bad("different algebras");
    }
    if c.is_pointed() != d.is_pointed() {
        return bad("pointed and unpointed complexes");
    }
    if c.is_normalized() != d.is_normalized() {
        return bad("normalized and unnormalized complexes");
    }
    if c.is_pointed() {
        let (a, b) = (c.space().basepoint(), d.space().basepoint());
        if let (Some(a), Some(b)) = (a, b) {
            if f.images()[a] != crate::simplicial::SimplexRef::generator(b) {
                return bad("map does not preserve basepoints");
            }
        }
    }
    Ok(())
}

/// `f_*` applied to a chain: each factor is carried to the image simplex,
/// factors with a common image are multiplied, units fill the rest.
pub(crate) fn push_chain(
    f_slots: &[Vec<usize>],
    c: &HochschildComplex,
    d: &HochschildComplex,
    chain: &Chain,
) -> Chain {
    let mut out = Chain::new();
    let mut terms = Vec::new();
    for (t, x) in chain {
        c.layout.push_forward(&t.slots, &f_slots[t.level], d.layout.nslots[t.level], x, &mut terms);
        for (s, y) in terms.drain(..) {
            if !(d.is_normalized() && d.layout.is_degenerate(t.level, &s)) {
                chain_add(&mut out, Tensor::new(t.level, s), y);
            }
        }
    }
    out
}

/// The chain map `f_*: CH_X → CH_Y` on the common window of both complexes.
pub fn induced_map(f: &SimplicialMap, c: &HochschildComplex, d: &HochschildComplex) -> Result<ChainMap, HochschildError> {
    check_compatible(f, c, d)?;
    let n_min = c.n_min().max(d.n_min());
    let maps = slot_maps(f, c, d, (-n_min) as usize);
    let mut blocks = BTreeMap::new();
    for n in n_min..=0 {
        for w in c.weights(n) {
            let src = c.block(n, w).expect("block");
            let rows = d.block_len(n, w);
            let tgt = d.block(n, w);
            let cols = src
                .tensors()
                .iter()
                .map(|t| {
                    let mut terms = Vec::new();
                    c.layout.push_forward(&t.slots, &maps[t.level], d.layout.nslots[t.level], &Rational::one(), &mut terms);
                    normalize(
                        terms
                            .into_iter()
                            .filter_map(|(s, x)| tgt.and_then(|b| b.position(&Tensor::new(t.level, s))).map(|p| (p, x)))
                            .collect(),
                    )
                })
                .collect();
            blocks.insert((n, w), SparseRationalMatrix::from_columns(rows, cols));
        }
    }
    Ok(ChainMap { n_min, blocks })
}

/// Chain-level `f_*` on arbitrary chains of `c` (levels up to the window).
pub fn induced_chain(
    f: &SimplicialMap,
    c: &HochschildComplex,
    d: &HochschildComplex,
    chain: &Chain,
) -> Result<Chain, HochschildError> {
    check_compatible(f, c, d)?;
    let top = chain.keys().map(|t| t.level).max().unwrap_or(0);
    if top > c.max_level().min(d.max_level()) {
        return Err(HochschildError::OutOfWindow(format!("level {top}")));
    }
    let maps = slot_maps(f, c, d, top);
    Ok(push_chain(&maps, c, d, chain))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cdga::{dual_numbers, exterior};
    use crate::hochschild::{build_complex, BuildOptions};
    use crate::simplicial::{standard_model, SimplicialMap};

    #[test]
    fn identity_and_collapse() {
        let x = standard_model("circle_minimal").unwrap();
        let pt = standard_model("point").unwrap();
        for a in [dual_numbers(), exterior(-1)] {
            let c = build_complex(&x, &a, None, -3, &BuildOptions::default()).unwrap();
            let p = build_complex(&pt, &a, None, -3, &BuildOptions::default()).unwrap();
            let id = induced_map(&SimplicialMap::identity(&x), &c, &c).unwrap();
            for ((n, w), m) in &id.blocks {
                assert_eq!(*m, SparseRationalMatrix::identity(c.block_len(*n, *w)));
            }
            let col = induced_map(&SimplicialMap::collapse(&x, &pt).unwrap(), &c, &p).unwrap();
            // chain map: D f = f D
            for n in -3..0 {
                for w in c.weights(n) {
                    let lhs = col.block(n + 1, w).map(|f| f.mul(&c.differential(n, w).unwrap()));
                    let rhs = p.differential(n, w).map(|dp| dp.mul(col.block(n, w).unwrap()));
                    if let (Some(l), Some(r)) = (lhs, rhs) {
                        assert_eq!(l, r);
                    }
                }
            }
        }
    }
}
