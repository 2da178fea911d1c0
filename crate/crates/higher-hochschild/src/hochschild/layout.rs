use std::fmt;

use crate::cdga::{AlgebraTable, GradedAlgebra, GradedModule};
use crate::exactla::{normalize, Rational, SparseVec};
use crate::simplicial::{FiniteSimplicialSet, Levels};

/// A monomial tensor at simplicial level `level`. Slot `s` holds a basis
/// index; in the pointed case slot 0 holds a module basis index and the
/// remaining slots follow the pointed level order, otherwise slot `p` is the
/// `p`-th simplex of the level.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tensor {
    pub level: usize,
    pub slots: Box<[u16]>,
}

impl Tensor {
    pub fn new(level: usize, slots: Vec<u16>) -> Self {
        Self { level, slots: slots.into_boxed_slice() }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct ModuleTable {
    pub names: Vec<String>,
    pub degrees: Vec<i32>,
    pub weights: Vec<u32>,
    /// `act[a][m]` = `e_a · m_m`.
    pub act: Vec<Vec<SparseVec>>,
    pub diff: Vec<SparseVec>,
}

impl ModuleTable {
    fn new(m: &GradedModule, table: &AlgebraTable) -> Self {
        let n = m.len();
        Self {
            names: (0..n).map(|i| m.name(i).to_string()).collect(),
            degrees: (0..n).map(|i| m.degree(i)).collect(),
            weights: (0..n).map(|i| m.weight(i)).collect(),
            act: table.keys.iter().map(|k| (0..n).map(|i| m.act(k, i)).collect()).collect(),
            diff: (0..n).map(|i| m.diff(i).to_vec()).collect(),
        }
    }
}

/// Slot structure of every level together with the multiplication tables;
/// everything the tensor-level operations need.
#[derive(Clone, Debug)]
pub(crate) struct Layout {
    pub space: FiniteSimplicialSet,
    pub levels: Levels,
    pub table: AlgebraTable,
    pub module: Option<ModuleTable>,
    pub nslots: Vec<usize>,
    /// `slot_of[k][p]`: slot of the `p`-th simplex of level `k`.
    pub slot_of: Vec<Vec<usize>>,
    /// `face_slots[k][i][s]`: slot at level `k−1` receiving slot `s` under `d_i`.
    pub face_slots: Vec<Vec<Vec<usize>>>,
    /// `degen_slots[k][j][s]`: slot at level `k+1` receiving slot `s` under `s_j`.
    pub degen_slots: Vec<Vec<Vec<usize>>>,
    /// `in_degen_image[k][j][s]`: whether slot `s` of level `k` lies in the image of `s_j`.
    pub in_degen_image: Vec<Vec<Vec<bool>>>,
    /// Table indices grouped by degree, `by_degree[−d]`.
    by_degree: Vec<Vec<u16>>,
    module_by_degree: Vec<Vec<u16>>,
}

fn group_by_degree(degrees: &[i32], lowest: i32) -> Vec<Vec<u16>> {
    let mut out = vec![Vec::new(); (-lowest.min(0)) as usize + 1];
    for (i, &d) in degrees.iter().enumerate() {
        if d >= lowest {
            out[(-d) as usize].push(i as u16);
        }
    }
    out
}

impl Layout {
    pub fn new(
        space: &FiniteSimplicialSet,
        algebra: &GradedAlgebra,
        module: Option<&GradedModule>,
        max_level: usize,
        min_internal: i32,
    ) -> Self {
        let levels = Levels::new(space, max_level);
        let table = AlgebraTable::new(algebra, min_internal);
        assert!(table.len() <= u16::MAX as usize, "algebra truncation too large");
        let module_table = module.map(|m| ModuleTable::new(m, &table));
        let pointed = module.is_some();
        let base = space.basepoint();
        let mut slot_of = Vec::new();
        let mut nslots = Vec::new();
        for k in 0..=max_level {
            if pointed {
                let b = base.expect("pointed layout needs a basepoint");
                let mut next = 1;
                let slots: Vec<usize> = levels.simplices[k]
                    .iter()
                    .map(|s| {
                        if s.generator == b {
                            0
                        } else {
                            next += 1;
                            next - 1
                        }
                    })
                    .collect();
                nslots.push(next);
                slot_of.push(slots);
            } else {
                nslots.push(levels.simplices[k].len());
                slot_of.push((0..levels.simplices[k].len()).collect());
            }
        }
        let simplex_of: Vec<Vec<usize>> = (0..=max_level)
            .map(|k| {
                let mut inv = vec![0; nslots[k]];
                for (p, &s) in slot_of[k].iter().enumerate() {
                    inv[s] = p;
                }
                inv
            })
            .collect();
        let mut face_slots = vec![Vec::new()];
        for k in 1..=max_level {
            face_slots.push(
                (0..=k)
                    .map(|i| (0..nslots[k]).map(|s| slot_of[k - 1][levels.faces[k][i][simplex_of[k][s]]]).collect())
                    .collect(),
            );
        }
        let mut degen_slots: Vec<Vec<Vec<usize>>> = Vec::new();
        for k in 0..max_level {
            degen_slots.push(
                (0..=k)
                    .map(|j| {
                        (0..nslots[k]).map(|s| slot_of[k + 1][levels.degeneracies[k][j][simplex_of[k][s]]]).collect()
                    })
                    .collect(),
            );
        }
        let mut in_degen_image = vec![Vec::new()];
        for k in 1..=max_level {
            let mut per_j = Vec::new();
            for j in 0..k {
                let mut mask = vec![false; nslots[k]];
                for &t in &degen_slots[k - 1][j] {
                    mask[t] = true;
                }
                per_j.push(mask);
            }
            in_degen_image.push(per_j);
        }
        let by_degree = group_by_degree(&table.degrees, table.min_degree);
        let module_by_degree = module_table
            .as_ref()
            .map(|m| group_by_degree(&m.degrees, m.degrees.iter().copied().min().unwrap_or(0)))
            .unwrap_or_default();
        Self {
            space: space.clone(),
            levels,
            table,
            module: module_table,
            nslots,
            slot_of,
            face_slots,
            degen_slots,
            in_degen_image,
            by_degree,
            module_by_degree,
        }
    }

    pub fn pointed(&self) -> bool {
        self.module.is_some()
    }

    pub fn max_level(&self) -> usize {
        self.nslots.len() - 1
    }

    fn is_module_slot(&self, s: usize) -> bool {
        s == 0 && self.module.is_some()
    }

    #[inline]
    pub fn degree(&self, s: usize, v: u16) -> i32 {
        match &self.module {
            Some(m) if s == 0 => m.degrees[v as usize],
            _ => self.table.degrees[v as usize],
        }
    }

    pub fn internal_degree(&self, slots: &[u16]) -> i32 {
        slots.iter().enumerate().map(|(s, &v)| self.degree(s, v)).sum()
    }

    pub fn weight(&self, slots: &[u16]) -> u32 {
        slots
            .iter()
            .enumerate()
            .map(|(s, &v)| match &self.module {
                Some(m) if s == 0 => m.weights[v as usize],
                _ => self.table.weights[v as usize],
            })
            .sum()
    }

    pub fn factor_name(&self, s: usize, v: u16) -> &str {
        match &self.module {
            Some(m) if s == 0 => &m.names[v as usize],
            _ => &self.table.names[v as usize],
        }
    }

    /// Whether the non-unit support (the module slot excluded) lies inside
    /// the image of a single degeneracy.
    pub fn is_degenerate(&self, level: usize, slots: &[u16]) -> bool {
        let unit = self.table.unit as u16;
        let start = usize::from(self.pointed());
        (0..level).any(|j| {
            let mask = &self.in_degen_image[level][j];
            (start..slots.len()).all(|s| slots[s] == unit || mask[s])
        })
    }

    /// Calls `f` on every tensor of level `k` and internal degree `d`, in
    /// lexicographic slot order.
    pub fn for_each_tensor(&self, k: usize, d: i32, f: &mut dyn FnMut(&[u16]) -> bool) -> bool {
        let n = self.nslots[k];
        if n == 0 {
            return if d == 0 { f(&[]) } else { true };
        }
        let amin = self.table.min_degree;
        let mmin = self.module.as_ref().map_or(0, |m| m.degrees.iter().copied().min().unwrap_or(0));
        // lowest degree reachable by slots s.. (inclusive)
        let mut reach = vec![0i32; n + 1];
        for s in (0..n).rev() {
            reach[s] = reach[s + 1] + if self.is_module_slot(s) { mmin } else { amin };
        }
        let mut cur = vec![0u16; n];
        self.enumerate_rec(0, d, &reach, &mut cur, f)
    }

    fn enumerate_rec(
        &self,
        s: usize,
        remaining: i32,
        reach: &[i32],
        cur: &mut Vec<u16>,
        f: &mut dyn FnMut(&[u16]) -> bool,
    ) -> bool {
        if s == cur.len() {
            return if remaining == 0 { f(cur) } else { true };
        }
        let groups = if self.is_module_slot(s) { &self.module_by_degree } else { &self.by_degree };
        // every value index, in increasing order, whose degree keeps the rest feasible
        let mut candidates: Vec<u16> = Vec::new();
        for (neg, g) in groups.iter().enumerate() {
            let deg = -(neg as i32);
            let rest = remaining - deg;
            if rest <= 0 && rest >= reach[s + 1] {
                candidates.extend_from_slice(g);
            }
        }
        candidates.sort_unstable();
        for v in candidates {
            cur[s] = v;
            let deg = self.degree(s, v);
            if !self.enumerate_rec(s + 1, remaining - deg, reach, cur, f) {
                return false;
            }
        }
        true
    }

    /// `f_*` along a slot map `map: source slot → target slot` (basepoint to
    /// basepoint in the pointed case): factors sharing a target are multiplied
    /// left to right in source order, empty targets receive the unit, and the
    /// Koszul sign of sorting the factors into target order is applied.
    /// Terms are appended to `out` scaled by `coeff`.
    pub fn push_forward(
        &self,
        slots: &[u16],
        map: &[usize],
        target_slots: usize,
        coeff: &Rational,
        out: &mut Vec<(Vec<u16>, Rational)>,
    ) {
        let unit = self.table.unit as u16;
        let pointed = self.pointed();
        // Koszul sign over inversions among odd factors
        let mut parity = 0u32;
        let mut odd: Vec<usize> = Vec::new();
        for (s, &v) in slots.iter().enumerate() {
            if self.degree(s, v) & 1 != 0 {
                odd.push(map[s]);
            }
        }
        for a in 0..odd.len() {
            for b in a + 1..odd.len() {
                if odd[a] > odd[b] {
                    parity ^= 1;
                }
            }
        }
        let mut res = vec![unit; target_slots];
        // targets that needed a genuine product; value held as a sparse vector
        let mut product_of: Vec<Option<usize>> = vec![None; target_slots];
        let mut products: Vec<(usize, SparseVec)> = Vec::new();
        for (s, &v) in slots.iter().enumerate() {
            let t = map[s];
            if pointed && s == 0 {
                debug_assert_eq!(t, 0);
                res[0] = v;
                continue;
            }
            if v == unit {
                continue;
            }
            if pointed && t == 0 {
                let m = self.module.as_ref().expect("module");
                let idx = *product_of[0].get_or_insert_with(|| {
                    products.push((0, vec![(res[0] as usize, Rational::one())]));
                    products.len() - 1
                });
                let cur = std::mem::take(&mut products[idx].1);
                let a_deg = self.table.degrees[v as usize] as i64;
                let mut next = Vec::new();
                for (mi, c) in &cur {
                    let sgn = Rational::sign(a_deg * m.degrees[*mi] as i64);
                    let c = c * &sgn;
                    for (mj, x) in &m.act[v as usize][*mi] {
                        next.push((*mj, &c * x));
                    }
                }
                let next = normalize(next);
                if next.is_empty() {
                    return;
                }
                products[idx].1 = next;
                continue;
            }
            match product_of[t] {
                None if res[t] == unit => res[t] = v,
                None => {
                    let p = self.table.mul(res[t] as usize, v as usize).to_vec();
                    if p.is_empty() {
                        return;
                    }
                    products.push((t, p));
                    product_of[t] = Some(products.len() - 1);
                }
                Some(idx) => {
                    let cur = std::mem::take(&mut products[idx].1);
                    let p = self.table.mul_vec(&cur, &[(v as usize, Rational::one())]);
                    if p.is_empty() {
                        return;
                    }
                    products[idx].1 = p;
                }
            }
        }
        let sign = if parity == 1 { -coeff } else { coeff.clone() };
        if products.iter().all(|(_, p)| p.len() == 1) {
            let mut c = sign;
            for (t, p) in &products {
                res[*t] = p[0].0 as u16;
                c = &c * &p[0].1;
            }
            out.push((res, c));
            return;
        }
        let mut partial: Vec<(Vec<u16>, Rational)> = vec![(res, sign)];
        for (t, p) in &products {
            let mut next = Vec::with_capacity(partial.len() * p.len());
            for (r, c) in &partial {
                for (v, x) in p {
                    let mut r2 = r.clone();
                    r2[*t] = *v as u16;
                    next.push((r2, c * x));
                }
            }
            partial = next;
        }
        out.extend(partial);
    }

    /// Internal differential `Σ (−1)^{ε_s} x_0 ⊗ … ⊗ d x_s ⊗ …`, scaled by `coeff`.
    pub fn internal(&self, slots: &[u16], coeff: &Rational, out: &mut Vec<(Vec<u16>, Rational)>) {
        let mut eps = 0i32;
        for (s, &v) in slots.iter().enumerate() {
            let dv: &[(usize, Rational)] = match &self.module {
                Some(m) if s == 0 => &m.diff[v as usize],
                _ => self.table.diff(v as usize),
            };
            if !dv.is_empty() {
                let c = if eps & 1 != 0 { -coeff } else { coeff.clone() };
                for (w, x) in dv {
                    let mut r = slots.to_vec();
                    r[s] = *w as u16;
                    out.push((r, &c * x));
                }
            }
            eps += self.degree(s, v);
        }
    }

    /// Total differential `D = (−1)^k δ + Σ_i (−1)^i (d_i)_*` of a basis tensor.
    pub fn total_differential(&self, t: &Tensor, coeff: &Rational, out: &mut Vec<(Tensor, Rational)>) {
        let k = t.level;
        let mut buf = Vec::new();
        let c = if k % 2 == 1 { -coeff } else { coeff.clone() };
        self.internal(&t.slots, &c, &mut buf);
        out.extend(buf.drain(..).map(|(s, x)| (Tensor::new(k, s), x)));
        if k > 0 {
            for i in 0..=k {
                let c = if i % 2 == 1 { -coeff } else { coeff.clone() };
                self.push_forward(&t.slots, &self.face_slots[k][i], self.nslots[k - 1], &c, &mut buf);
                out.extend(buf.drain(..).map(|(s, x)| (Tensor::new(k - 1, s), x)));
            }
        }
    }

    pub fn display(&self, t: &Tensor) -> String {
        DisplayTensor(self, t).to_string()
    }
}

struct DisplayTensor<'a>(&'a Layout, &'a Tensor);

impl fmt::Display for DisplayTensor<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (l, t) = (self.0, self.1);
        if t.slots.is_empty() {
            return write!(f, "[] @{}", t.level);
        }
        for (s, &v) in t.slots.iter().enumerate() {
            if s > 0 {
                write!(f, " ⊗ ")?;
            }
            write!(f, "{}", l.factor_name(s, v))?;
        }
        write!(f, " @{}", t.level)
    }
}
