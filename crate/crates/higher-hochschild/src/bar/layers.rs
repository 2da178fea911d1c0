//! Complexes whose level `l` is a tensor product of finite graded factors,
//! with `D = (−1)^l δ + Σ_i (−1)^i d_i` and the faces supplied by the caller.

use std::collections::{BTreeMap, HashMap};

use crate::cdga::{AlgebraTable, GradedModule};
use crate::exactla::{normalize, Rational, SparseRationalMatrix, SparseVec};
use crate::homology::MaterializedComplex;

/// A finite graded vector space with a differential.
#[derive(Clone, Debug)]
pub(crate) struct Factor {
    pub degrees: Vec<i32>,
    pub weights: Vec<u32>,
    pub diff: Vec<SparseVec>,
}

impl Factor {
    pub fn of_table(t: &AlgebraTable) -> Self {
        Self { degrees: t.degrees.clone(), weights: t.weights.clone(), diff: (0..t.len()).map(|i| t.diff(i).to_vec()).collect() }
    }

    pub fn of_module(m: &GradedModule) -> Self {
        Self {
            degrees: (0..m.len()).map(|i| m.degree(i)).collect(),
            weights: (0..m.len()).map(|i| m.weight(i)).collect(),
            diff: (0..m.len()).map(|i| m.diff(i).to_vec()).collect(),
        }
    }
}

/// `act[a][m]`: an algebra table acting on a module basis.
pub(crate) fn action_table(t: &AlgebraTable, m: &GradedModule) -> Vec<Vec<SparseVec>> {
    t.keys.iter().map(|k| (0..m.len()).map(|i| m.act(k, i)).collect()).collect()
}

/// Tuples with one entry per factor and total degree `d`, lexicographic in
/// the factor indices.
pub(crate) fn tuples(factors: &[&Factor], d: i32) -> Vec<Vec<u16>> {
    // lowest degree reachable by the factors from position s on
    let mut floor = vec![0i32; factors.len() + 1];
    for s in (0..factors.len()).rev() {
        floor[s] = floor[s + 1] + factors[s].degrees.iter().copied().min().unwrap_or(0);
    }
    let mut ceil = vec![0i32; factors.len() + 1];
    for s in (0..factors.len()).rev() {
        ceil[s] = ceil[s + 1] + factors[s].degrees.iter().copied().max().unwrap_or(0);
    }
    fn go(f: &[&Factor], floor: &[i32], ceil: &[i32], s: usize, rest: i32, cur: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
        if s == f.len() {
            if rest == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for (v, &dv) in f[s].degrees.iter().enumerate() {
            let r = rest - dv;
            if r >= floor[s + 1] && r <= ceil[s + 1] {
                cur.push(v as u16);
                go(f, floor, ceil, s + 1, r, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    if factors.iter().all(|f| !f.degrees.is_empty()) {
        go(factors, &floor, &ceil, 0, d, &mut Vec::new(), &mut out);
    }
    out
}

pub(crate) type Terms = Vec<(Vec<u16>, Rational)>;

/// `δ` on a tuple: `Σ_s (−1)^{|t_0|+…+|t_{s−1}|} t_0 ⊗ … ⊗ dt_s ⊗ …`.
pub(crate) fn internal(factors: &[&Factor], t: &[u16]) -> Terms {
    let mut out = Vec::new();
    let mut before = 0i64;
    for (s, f) in factors.iter().enumerate() {
        let sign = Rational::sign(before);
        for (v, c) in &f.diff[t[s] as usize] {
            let mut r = t.to_vec();
            r[s] = *v as u16;
            out.push((r, &sign * c));
        }
        before += f.degrees[t[s] as usize] as i64;
    }
    out
}

/// The layered complex on levels `0..=max_level`, materialized in degrees
/// `n_min..=0` together with the incoming differential from `n_min − 1`.
pub(crate) trait Layered {
    fn max_level(&self) -> usize;

    fn factors(&self, l: usize) -> Vec<&Factor>;

    /// `d_i` on a level-`l` tuple.
    fn face(&self, l: usize, i: usize, t: &[u16]) -> Terms;

    fn basis(&self, l: usize, d: i32) -> Vec<Vec<u16>> {
        if l > self.max_level() {
            return Vec::new();
        }
        tuples(&self.factors(l), d)
    }

    fn weight(&self, l: usize, t: &[u16]) -> u32 {
        self.factors(l).iter().zip(t).map(|(f, &v)| f.weights[v as usize]).sum()
    }

    fn matrix(&self, src: &[Vec<u16>], tgt: &[Vec<u16>], map: impl Fn(&[u16]) -> Terms) -> SparseRationalMatrix {
        let index: HashMap<&[u16], usize> = tgt.iter().enumerate().map(|(p, t)| (t.as_slice(), p)).collect();
        let cols = src
            .iter()
            .map(|t| {
                normalize(
                    map(t)
                        .into_iter()
                        .map(|(s, c)| (*index.get(s.as_slice()).expect("face lands in the basis"), c))
                        .collect(),
                )
            })
            .collect();
        SparseRationalMatrix::from_columns(tgt.len(), cols)
    }

    fn face_matrix(&self, l: usize, i: usize, d: i32) -> SparseRationalMatrix {
        self.matrix(&self.basis(l, d), &self.basis(l - 1, d), |t| self.face(l, i, t))
    }

    fn internal_matrix(&self, l: usize, d: i32) -> SparseRationalMatrix {
        let f = self.factors(l);
        self.matrix(&self.basis(l, d), &self.basis(l, d + 1), |t| internal(&f, t))
    }

    fn total_terms(&self, l: usize, t: &[u16]) -> Vec<((usize, Vec<u16>), Rational)> {
        let sign = Rational::sign(l as i64);
        let mut out: Vec<_> = internal(&self.factors(l), t).into_iter().map(|(s, c)| ((l, s), &sign * &c)).collect();
        if l > 0 {
            for i in 0..=l {
                let sign = Rational::sign(i as i64);
                out.extend(self.face(l, i, t).into_iter().map(|(s, c)| ((l - 1, s), &sign * &c)));
            }
        }
        out
    }

    /// Blocks `(n, w)` of degree `n`: level `l` with internal degree `n + l`.
    fn blocks(&self, n: i32) -> BTreeMap<u32, Vec<(usize, Vec<u16>)>> {
        let mut out: BTreeMap<u32, Vec<(usize, Vec<u16>)>> = BTreeMap::new();
        let top = ((-n).max(0) as usize).min(self.max_level());
        for l in 0..=top {
            for t in self.basis(l, n + l as i32) {
                out.entry(self.weight(l, &t)).or_default().push((l, t));
            }
        }
        out
    }

    fn materialize(&self, n_min: i32, trusted_min: i32) -> MaterializedComplex {
        let mut c = MaterializedComplex { n_min, top: 0, trusted_min, ..Default::default() };
        let mut upper = self.blocks(n_min - 1);
        for n in n_min - 1..=0 {
            let lower = upper;
            upper = if n < 0 { self.blocks(n + 1) } else { BTreeMap::new() };
            for (&w, entries) in &lower {
                if n >= n_min {
                    c.lens.insert((n, w), entries.len());
                }
                let tgt = upper.get(&w).map(Vec::as_slice).unwrap_or(&[]);
                let index: HashMap<(usize, &[u16]), usize> =
                    tgt.iter().enumerate().map(|(p, (l, t))| ((*l, t.as_slice()), p)).collect();
                let cols: Vec<SparseVec> = entries
                    .iter()
                    .map(|(l, t)| {
                        normalize(
                            self.total_terms(*l, t)
                                .into_iter()
                                .map(|((l2, s), x)| (*index.get(&(l2, s.as_slice())).expect("D preserves weight"), x))
                                .collect(),
                        )
                    })
                    .collect();
                if cols.iter().any(|v| !v.is_empty()) {
                    c.diffs.insert((n, w), SparseRationalMatrix::from_columns(tgt.len(), cols));
                }
            }
        }
        c
    }
}
