use std::collections::HashMap;

use super::{AlgebraError, BasisKey, GradedAlgebra};
use crate::exactla::{normalize, Rational, SparseVec};

/// Multiplication and differential of an algebra restricted to degrees
/// `min_degree..=0`, with basis elements numbered from 0.
///
/// Ordering is by degree (0 first, then −1, …) and within a degree by the
/// algebra's canonical order. Products landing below `min_degree` are not
/// tabulated.
#[derive(Clone, Debug)]
pub struct AlgebraTable {
    pub keys: Vec<BasisKey>,
    pub names: Vec<String>,
    pub degrees: Vec<i32>,
    pub weights: Vec<u32>,
    pub unit: usize,
    pub min_degree: i32,
    mul: Vec<Vec<SparseVec>>,
    diff: Vec<SparseVec>,
}

impl AlgebraTable {
    pub fn new(a: &GradedAlgebra, min_degree: i32) -> Self {
        let min_degree = min_degree.min(0);
        let mut keys = Vec::new();
        for d in (min_degree..=0).rev() {
            keys.extend(a.basis_of_degree(d));
        }
        let index: HashMap<BasisKey, usize> = keys.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        let to_vec = |c: super::Combination| -> SparseVec {
            normalize(c.into_iter().map(|(k, x)| (index[&k], x)).collect())
        };
        let degrees: Vec<i32> = keys.iter().map(|k| a.key_degree(k)).collect();
        let n = keys.len();
        let mut mul = vec![vec![Vec::new(); n]; n];
        for i in 0..n {
            for j in 0..n {
                if degrees[i] + degrees[j] >= min_degree {
                    mul[i][j] = to_vec(a.mul_keys(&keys[i], &keys[j]));
                }
            }
        }
        let diff = keys.iter().map(|k| to_vec(a.diff_key(k))).collect();
        Self {
            names: keys.iter().map(|k| a.key_name(k)).collect(),
            weights: keys.iter().map(|k| a.key_weight(k)).collect(),
            unit: index[&a.unit_key()],
            keys,
            degrees,
            min_degree,
            mul,
            diff,
        }
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    /// `e_i · e_j`; panics if the product's degree is below the truncation.
    pub fn mul(&self, i: usize, j: usize) -> &[(usize, Rational)] {
        assert!(self.degrees[i] + self.degrees[j] >= self.min_degree, "product below truncation degree");
        &self.mul[i][j]
    }

    pub fn diff(&self, i: usize) -> &[(usize, Rational)] {
        &self.diff[i]
    }

    pub fn has_differential(&self) -> bool {
        self.diff.iter().any(|d| !d.is_empty())
    }

    /// Indices of basis elements in degree `d`.
    pub fn of_degree(&self, d: i32) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&i| self.degrees[i] == d)
    }

    pub fn mul_vec(&self, a: &[(usize, Rational)], b: &[(usize, Rational)]) -> SparseVec {
        let mut out = Vec::new();
        for (i, x) in a {
            for (j, y) in b {
                for (k, z) in self.mul(*i, *j) {
                    out.push((*k, &(x * y) * z));
                }
            }
        }
        normalize(out)
    }

    pub fn diff_vec(&self, a: &[(usize, Rational)]) -> SparseVec {
        normalize(a.iter().flat_map(|(i, x)| self.diff[*i].iter().map(move |(j, y)| (*j, x * y))).collect())
    }

    pub fn check_axioms(&self) -> Result<(), AlgebraError> {
        let n = self.len();
        let e = |i: usize| vec![(i, Rational::one())];
        let fail = |m: String| Err(AlgebraError::Axiom(m));
        for i in 0..n {
            if self.mul(self.unit, i) != e(i).as_slice() || self.mul(i, self.unit) != e(i).as_slice() {
                return fail(format!("unit law on {}", self.names[i]));
            }
            if !self.diff_vec(&self.diff[i]).is_empty() {
                return fail(format!("d² ≠ 0 on {}", self.names[i]));
            }
        }
        for i in 0..n {
            for j in 0..n {
                let (di, dj) = (self.degrees[i], self.degrees[j]);
                if di + dj < self.min_degree {
                    continue;
                }
                let s = Rational::sign((di * dj) as i64);
                let swapped: SparseVec = self.mul[j][i].iter().map(|(k, x)| (*k, x * &s)).collect();
                if self.mul[i][j] != swapped {
                    return fail(format!("graded commutativity on {}, {}", self.names[i], self.names[j]));
                }
                let lhs = self.diff_vec(&self.mul[i][j]);
                let mut rhs = self.mul_vec(&self.diff[i], &e(j));
                let t = self.mul_vec(&e(i), &self.diff[j]);
                rhs = crate::exactla::axpy(&rhs, &Rational::sign(di as i64), &t);
                if lhs != rhs {
                    return fail(format!("Leibniz rule on {}, {}", self.names[i], self.names[j]));
                }
                for k in 0..n {
                    if di + dj + self.degrees[k] < self.min_degree {
                        continue;
                    }
                    let l = self.mul_vec(&self.mul[i][j], &e(k));
                    let r = self.mul_vec(&e(i), &self.mul[j][k]);
                    if l != r {
                        return fail(format!(
                            "associativity on {}, {}, {}",
                            self.names[i], self.names[j], self.names[k]
                        ));
                    }
                }
            }
        }
        Ok(())
    }
}
