use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

use crate::cdga::GradedAlgebra;
use crate::exactla::{Rational, SparseRationalMatrix, SparseVec};
use crate::hochschild::{build_complex, induced_map, BuildOptions, ChainMap, HochschildComplex};
use crate::homology::{homology, is_quasi_iso, MaterializedComplex};

use super::{intersect, CombinatorialCover, FactorizationError, Pieces};

/// One summand `F(α_1, …, α_k)`: the tuple of families, the non-empty
/// intersections indexed by their choice of one open per family, and
/// `CH` of their disjoint union.
struct Summand {
    tuple: Vec<usize>,
    choices: Vec<Vec<usize>>,
    pieces: Pieces,
    complex: Rc<HochschildComplex>,
}

/// The Čech complex `⊕_{k>0} ⊕_{α_1,…,α_k ∈ PU} F(α_1,…,α_k)[k−1]` truncated
/// to tuples of length at most `cap`, with its augmentation to `CH_X(A)`.
///
/// The summand `F(α_1, …, α_k)` is `CH` of the disjoint union of the
/// non-empty intersections `U_{j_1} ∩ … ∩ U_{j_k}`, `U_{j_i} ∈ α_i`, which is
/// the tensor product of their Hochschild complexes. An element of degree
/// `m` there has total degree `m − (k − 1)`. The total differential is
/// `(−1)^{k−1} D + Σ_i (−1)^i ∂_i` where `∂_i` forgets `α_i`.
#[derive(Clone, Debug)]
pub struct CechComplex {
    pub cap: usize,
    /// Number of tuples of each length `1, 2, …`.
    pub layer_sizes: Vec<usize>,
    pub complex: MaterializedComplex,
    pub augmentation: ChainMap,
    pub target: Rc<HochschildComplex>,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct CechComparison {
    /// Quasi-isomorphism verdict per trusted degree.
    pub verdicts: BTreeMap<i32, bool>,
    pub cech_dims: BTreeMap<i32, usize>,
    pub target_dims: BTreeMap<i32, usize>,
    pub trusted_min: i32,
}

impl CechComparison {
    pub fn all_true(&self) -> bool {
        self.verdicts.values().all(|v| *v)
    }
}

fn tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out.into_iter().flat_map(|t| (0..n).map(move |i| [t.clone(), vec![i]].concat())).collect();
    }
    out
}

/// Places `m` with its rows shifted by `row_offset` into `cols[col_offset..]`.
fn place(cols: &mut [SparseVec], m: &SparseRationalMatrix, row_offset: usize, col_offset: usize, sign: &Rational) {
    for (j, col) in m.columns().iter().enumerate() {
        cols[col_offset + j].extend(col.iter().map(|(r, x)| (r + row_offset, sign * x)));
    }
}

pub fn cech_complex(
    cover: &CombinatorialCover,
    algebra: &GradedAlgebra,
    n_min: i32,
    cap: usize,
) -> Result<CechComplex, FactorizationError> {
    if cap < 2 {
        return Err(FactorizationError::Cap(cap));
    }
    if n_min > 0 {
        return Err(FactorizationError::Hochschild(format!("window lower bound {n_min} is positive")));
    }
    let hh = |e: crate::hochschild::HochschildError| FactorizationError::Hochschild(e.to_string());
    let x = &cover.space;
    let families = cover.families();
    let top_layer = cap.min((2 - n_min) as usize);
    let opts = BuildOptions::default();
    let mut cache: HashMap<(Vec<Vec<usize>>, i32), Rc<HochschildComplex>> = HashMap::new();
    // layers[k − 1] holds the summands of tuple length k
    let mut layers: Vec<Vec<Summand>> = Vec::new();
    for k in 1..=top_layer {
        let window = n_min + k as i32 - 2;
        let mut layer = Vec::new();
        for tuple in tuples(families.len(), k) {
            let mut choices = Vec::new();
            let mut pieces = Vec::new();
            for choice in tuples_of(&tuple.iter().map(|&f| families[f].clone()).collect::<Vec<_>>()) {
                let mut set: Vec<usize> = (0..x.len()).collect();
                for &o in &choice {
                    set = intersect(&set, &cover.opens[o]);
                }
                if !set.is_empty() {
                    choices.push(choice);
                    pieces.push(set);
                }
            }
            let pieces = Pieces::new(x, pieces);
            let key = (pieces.pieces.clone(), window);
            let complex = match cache.get(&key) {
                Some(c) => c.clone(),
                None => {
                    let c = Rc::new(build_complex(&pieces.space, algebra, None, window, &opts).map_err(hh)?);
                    cache.insert(key, c.clone());
                    c
                }
            };
            layer.push(Summand { tuple, choices, pieces, complex });
        }
        layers.push(layer);
    }
    let whole = Pieces::new(x, vec![(0..x.len()).collect()]);
    let target = Rc::new(build_complex(&whole.space, algebra, None, n_min, &opts).map_err(hh)?);

    // the faces ∂_i between consecutive layers
    let mut faces: HashMap<(usize, usize, usize), ChainMap> = HashMap::new();
    for k in 2..=top_layer {
        let lower: HashMap<&[usize], usize> =
            layers[k - 2].iter().enumerate().map(|(p, s)| (s.tuple.as_slice(), p)).collect();
        for (p, s) in layers[k - 1].iter().enumerate() {
            for i in 0..k {
                let mut t = s.tuple.clone();
                t.remove(i);
                let q = lower[t.as_slice()];
                let dst = &layers[k - 2][q];
                let home: Vec<usize> = s
                    .choices
                    .iter()
                    .map(|c| {
                        let mut c = c.clone();
                        c.remove(i);
                        dst.choices.iter().position(|d| *d == c).expect("coarser intersection is non-empty")
                    })
                    .collect();
                let f = s.pieces.map_into(&dst.pieces, &home);
                faces.insert((k, p, i), induced_map(&f, &s.complex, &dst.complex).map_err(hh)?);
            }
        }
    }
    let mut augment: Vec<ChainMap> = Vec::new();
    for s in &layers[0] {
        let f = s.pieces.map_into(&whole, &vec![0; s.pieces.pieces.len()]);
        augment.push(induced_map(&f, &s.complex, &target).map_err(hh)?);
    }

    // block layout: (n, w) ↦ list of (layer, summand, offset, len)
    let mut layout: BTreeMap<(i32, u32), Vec<(usize, usize, usize, usize)>> = BTreeMap::new();
    let mut offsets: HashMap<(i32, u32, usize, usize), usize> = HashMap::new();
    for n in (n_min - 1)..=0 {
        for (ki, layer) in layers.iter().enumerate() {
            let k = ki + 1;
            let m = n + k as i32 - 1;
            if m > 0 || m < n_min + k as i32 - 2 {
                continue;
            }
            for (p, s) in layer.iter().enumerate() {
                for w in s.complex.weights(m) {
                    let len = s.complex.block_len(m, w);
                    let entry = layout.entry((n, w)).or_default();
                    let offset = entry.last().map_or(0, |e| e.2 + e.3);
                    entry.push((k, p, offset, len));
                    offsets.insert((n, w, k, p), offset);
                }
            }
        }
    }
    let total = |n: i32, w: u32| layout.get(&(n, w)).and_then(|e| e.last()).map_or(0, |e| e.2 + e.3);

    let mut complex = MaterializedComplex { n_min, top: 0, trusted_min: n_min.max(2 - cap as i32), ..Default::default() };
    let mut aug_blocks = BTreeMap::new();
    for (&(n, w), entries) in &layout {
        let len = total(n, w);
        if n >= n_min {
            complex.lens.insert((n, w), len);
        }
        let rows = total(n + 1, w);
        let mut cols: Vec<SparseVec> = vec![Vec::new(); len];
        for &(k, p, offset, _) in entries {
            let s = &layers[k - 1][p];
            let m = n + k as i32 - 1;
            if let Some(d) = s.complex.differential_ref(m, w).filter(|d| d.rows() > 0) {
                let row = offsets[&(n + 1, w, k, p)];
                place(&mut cols, d, row, offset, &Rational::sign(k as i64 - 1));
            }
            if k >= 2 {
                let lower: HashMap<&[usize], usize> =
                    layers[k - 2].iter().enumerate().map(|(q, s)| (s.tuple.as_slice(), q)).collect();
                for i in 0..k {
                    let mut t = s.tuple.clone();
                    t.remove(i);
                    let q = lower[t.as_slice()];
                    if let Some(f) = faces[&(k, p, i)].block(m, w) {
                        if f.rows() > 0 {
                            let row = offsets[&(n + 1, w, k - 1, q)];
                            place(&mut cols, f, row, offset, &Rational::sign(i as i64));
                        }
                    }
                }
            }
        }
        let cols: Vec<SparseVec> = cols.into_iter().map(crate::exactla::normalize).collect();
        if cols.iter().any(|c| !c.is_empty()) {
            complex.diffs.insert((n, w), SparseRationalMatrix::from_columns(rows, cols));
        }
        if n >= n_min {
            let mut acols: Vec<SparseVec> = vec![Vec::new(); len];
            for &(k, p, offset, _) in entries {
                if k == 1 {
                    if let Some(f) = augment[p].block(n, w) {
                        place(&mut acols, f, 0, offset, &Rational::one());
                    }
                }
            }
            let acols = acols.into_iter().map(crate::exactla::normalize).collect();
            aug_blocks.insert((n, w), SparseRationalMatrix::from_columns(target.block_len(n, w), acols));
        }
    }
    Ok(CechComplex {
        cap,
        layer_sizes: layers.iter().map(Vec::len).collect(),
        complex,
        augmentation: ChainMap { n_min, blocks: aug_blocks },
        target,
    })
}

/// All ways of choosing one element from each list.
fn tuples_of(lists: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for l in lists {
        out = out.into_iter().flat_map(|t| l.iter().map(move |&x| [t.clone(), vec![x]].concat())).collect();
    }
    out
}

/// Compares `Č(U, CH)` with `CH_X(A)` through the augmentation, in the
/// degrees trusted on both sides.
pub fn cech_compare(c: &CechComplex) -> Result<CechComparison, FactorizationError> {
    let verdicts = is_quasi_iso(&c.augmentation, &c.complex, c.target.as_ref())
        .map_err(|e| FactorizationError::Hochschild(e.to_string()))?;
    let dims = |r: crate::homology::HomologyReport| r.degrees.into_iter().map(|(n, h)| (n, h.dim)).collect();
    Ok(CechComparison {
        verdicts,
        cech_dims: dims(homology(&c.complex, false)),
        target_dims: dims(homology(c.target.as_ref(), false)),
        trusted_min: c.complex.trusted_min,
    })
}
