//! The textbook Hochschild complex `M ⊗ A^{⊗k}`, written directly on index
//! tuples `(m, a_1, …, a_k)` without any simplicial bookkeeping.

use crate::cdga::{AlgebraTable, GradedAlgebra, GradedModule};
use crate::exactla::{Rational, SparseRationalMatrix, SparseVec};
use crate::homology::MaterializedComplex;

use super::layers::{action_table, Factor, Layered, Terms};
use super::BarError;

/// The classical complex on levels `0..=1 − n_min`.
#[derive(Clone, Debug)]
pub struct ClassicalComplex {
    n_min: i32,
    table: AlgebraTable,
    module: Factor,
    algebra: Factor,
    act: Vec<Vec<SparseVec>>,
    complex: MaterializedComplex,
}

/// Builds `M ⊗ A^{⊗k}` with faces
/// `d_0 = m·a_1`, `d_i = a_i a_{i+1}` and
/// `d_k = (−1)^{|a_k|(|m| + |a_1| + … + |a_{k−1}|)} (a_k·m) ⊗ a_1 ⊗ … ⊗ a_{k−1}`,
/// where `m·a = (−1)^{|m||a|} a·m`. Without `M` the regular module is used.
pub fn classical_hochschild_oracle(
    algebra: &GradedAlgebra,
    module: Option<&GradedModule>,
    n_min: i32,
) -> Result<ClassicalComplex, BarError> {
    if n_min > 0 {
        return Err(BarError::Invalid(format!("window lower bound {n_min} is positive")));
    }
    let regular;
    let module = match module {
        Some(m) => {
            if m.algebra().name() != algebra.name() {
                return Err(BarError::Invalid("module over a different algebra".into()));
            }
            m
        }
        None => {
            regular = GradedModule::regular(algebra, n_min - 1);
            &regular
        }
    };
    let table = AlgebraTable::new(algebra, n_min - 1);
    let mut c = ClassicalComplex {
        n_min,
        act: action_table(&table, module),
        module: Factor::of_module(module),
        algebra: Factor::of_table(&table),
        table,
        complex: MaterializedComplex::default(),
    };
    c.complex = c.materialize(n_min, n_min);
    Ok(c)
}

impl Layered for ClassicalComplex {
    fn max_level(&self) -> usize {
        (1 - self.n_min) as usize
    }

    fn factors(&self, k: usize) -> Vec<&Factor> {
        let mut f = vec![&self.module];
        f.extend(std::iter::repeat(&self.algebra).take(k));
        f
    }

    fn face(&self, k: usize, i: usize, t: &[u16]) -> Terms {
        let deg_a = |v: u16| self.table.degrees[v as usize] as i64;
        let deg_m = |v: u16| self.module.degrees[v as usize] as i64;
        let mut out = Vec::new();
        if i == 0 {
            let sign = Rational::sign(deg_m(t[0]) * deg_a(t[1]));
            for (m, c) in &self.act[t[1] as usize][t[0] as usize] {
                let mut r = vec![*m as u16];
                r.extend_from_slice(&t[2..]);
                out.push((r, &sign * c));
            }
        } else if i < k {
            for (v, c) in self.table.mul(t[i] as usize, t[i + 1] as usize) {
                let mut r = t[..i].to_vec();
                r.push(*v as u16);
                r.extend_from_slice(&t[i + 2..]);
                out.push((r, c.clone()));
            }
        } else {
            let rest: i64 = deg_m(t[0]) + t[1..k].iter().map(|&v| deg_a(v)).sum::<i64>();
            let sign = Rational::sign(deg_a(t[k]) * rest);
            for (m, c) in &self.act[t[k] as usize][t[0] as usize] {
                let mut r = vec![*m as u16];
                r.extend_from_slice(&t[1..k]);
                out.push((r, &sign * c));
            }
        }
        out
    }


}

impl ClassicalComplex {
    pub fn n_min(&self) -> i32 {
        self.n_min
    }

    pub fn table(&self) -> &AlgebraTable {
        &self.table
    }

    /// Tuples `(m, a_1, …, a_k)` of internal degree `d`, lexicographic.
    pub fn level_basis(&self, k: usize, d: i32) -> Vec<Vec<u16>> {
        Layered::basis(self, k, d)
    }

    pub fn face_matrix(&self, k: usize, i: usize, d: i32) -> SparseRationalMatrix {
        assert!(k >= 1 && i <= k, "face index out of range");
        Layered::face_matrix(self, k, i, d)
    }

    /// The internal differential, without the `(−1)^k`.
    pub fn internal_matrix(&self, k: usize, d: i32) -> SparseRationalMatrix {
        Layered::internal_matrix(self, k, d)
    }

    pub fn complex(&self) -> &MaterializedComplex {
        &self.complex
    }
}
