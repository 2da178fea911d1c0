use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{AlgebraError, AlgebraTable, BasisKey, GradedAlgebra};
use crate::exactla::{axpy, normalize, Rational, SparseVec};

/// A finite-dimensional DG module over a CDGA, viewed as a symmetric
/// bimodule: `m·a = (−1)^{|m||a|} a·m`.
#[derive(Clone, Debug)]
pub struct GradedModule {
    algebra: GradedAlgebra,
    names: Vec<String>,
    degrees: Vec<i32>,
    weights: Vec<u32>,
    /// `a · e_j` for non-unit basis keys `a`; missing entries act by zero.
    action: BTreeMap<(BasisKey, usize), SparseVec>,
    differential: Vec<SparseVec>,
}

impl GradedModule {
    pub fn new(
        algebra: &GradedAlgebra,
        basis: Vec<(String, i32)>,
        weights: Option<Vec<u32>>,
        action: Vec<(BasisKey, usize, usize, Rational)>,
        differential: Vec<(usize, usize, Rational)>,
    ) -> Result<Self, AlgebraError> {
        let n = basis.len();
        let inv = |m: String| Err(AlgebraError::Invalid(m));
        let (names, degrees): (Vec<String>, Vec<i32>) = basis.into_iter().unzip();
        if let Some(d) = degrees.iter().find(|d| **d > 0) {
            return Err(AlgebraError::PositiveDegree(*d));
        }
        let weights = weights.unwrap_or_else(|| vec![0; n]);
        if weights.len() != n {
            return inv("weight list length differs from basis".into());
        }
        let unit = algebra.unit_key();
        let mut act: BTreeMap<(BasisKey, usize), SparseVec> = BTreeMap::new();
        for (a, i, j, c) in action {
            if i >= n || j >= n {
                return inv(format!("action index out of range ({i}, {j})"));
            }
            if degrees[j] != degrees[i] + algebra.key_degree(&a) {
                return inv(format!("action of {} on {} breaks degrees", algebra.key_name(&a), names[i]));
            }
            if !c.is_zero() && weights[j] != weights[i] + algebra.key_weight(&a) {
                return inv(format!("action of {} on {} breaks weights", algebra.key_name(&a), names[i]));
            }
            if a == unit {
                if i != j || !c.is_one() {
                    return Err(AlgebraError::Axiom("unit must act as the identity".into()));
                }
                continue;
            }
            act.entry((a, i)).or_default().push((j, c));
        }
        let action = act.into_iter().map(|(k, v)| (k, normalize(v))).filter(|(_, v)| !v.is_empty()).collect();
        let mut diff = vec![Vec::new(); n];
        for (i, j, c) in differential {
            if i >= n || j >= n || degrees[j] != degrees[i] + 1 {
                return inv(format!("bad module differential entry ({i}, {j})"));
            }
            diff[i].push((j, c));
        }
        let m = Self {
            algebra: algebra.clone(),
            names,
            degrees,
            weights,
            action,
            differential: diff.into_iter().map(normalize).collect(),
        };
        m.check_axioms()?;
        Ok(m)
    }

    /// `A` acting on itself, truncated to degrees `≥ min_degree` (the
    /// quotient by the ideal of lower degrees).
    pub fn regular(algebra: &GradedAlgebra, min_degree: i32) -> Self {
        let t = AlgebraTable::new(algebra, min_degree);
        let basis = t.names.iter().cloned().zip(t.degrees.iter().copied()).collect();
        let mut action = Vec::new();
        for (a, key) in t.keys.iter().enumerate() {
            for i in 0..t.len() {
                if t.degrees[a] + t.degrees[i] >= min_degree {
                    for (j, c) in t.mul(a, i) {
                        action.push((key.clone(), i, *j, c.clone()));
                    }
                }
            }
        }
        let differential = (0..t.len()).flat_map(|i| t.diff(i).iter().map(move |(j, c)| (i, *j, c.clone()))).collect();
        Self::new(algebra, basis, Some(t.weights.clone()), action, differential).expect("regular module is valid")
    }

    /// ℚ in degree 0, with every non-unit basis element acting by zero.
    pub fn augmentation(algebra: &GradedAlgebra) -> Result<Self, AlgebraError> {
        Self::new(algebra, vec![("1".into(), 0)], None, vec![], vec![])
    }

    pub fn algebra(&self) -> &GradedAlgebra {
        &self.algebra
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn degree(&self, i: usize) -> i32 {
        self.degrees[i]
    }

    pub fn weight(&self, i: usize) -> u32 {
        self.weights[i]
    }

    pub fn min_degree(&self) -> i32 {
        self.degrees.iter().copied().min().unwrap_or(0)
    }

    /// `a · e_i` for an algebra basis key.
    pub fn act(&self, a: &BasisKey, i: usize) -> SparseVec {
        if *a == self.algebra.unit_key() {
            return vec![(i, Rational::one())];
        }
        self.action.get(&(a.clone(), i)).cloned().unwrap_or_default()
    }

    pub fn diff(&self, i: usize) -> &[(usize, Rational)] {
        &self.differential[i]
    }

    fn act_vec(&self, a: &BasisKey, v: &[(usize, Rational)]) -> SparseVec {
        normalize(v.iter().flat_map(|(i, x)| self.act(a, *i).into_iter().map(move |(j, y)| (j, x * &y))).collect())
    }

    fn diff_vec(&self, v: &[(usize, Rational)]) -> SparseVec {
        normalize(v.iter().flat_map(|(i, x)| self.differential[*i].iter().map(move |(j, y)| (*j, x * y))).collect())
    }

    pub fn check_axioms(&self) -> Result<(), AlgebraError> {
        let fail = |m: String| Err(AlgebraError::Axiom(m));
        let lo = self.min_degree() - self.degrees.iter().copied().max().unwrap_or(0);
        let t = AlgebraTable::new(&self.algebra, lo);
        for i in 0..self.len() {
            if !self.diff_vec(&self.differential[i]).is_empty() {
                return fail(format!("module d² ≠ 0 on {}", self.names[i]));
            }
            let e = vec![(i, Rational::one())];
            for a in 0..t.len() {
                if self.degrees[i] + t.degrees[a] < self.min_degree() {
                    continue;
                }
                // Leibniz: d(a·m) = d(a)·m + (−1)^{|a|} a·d(m).
                let lhs = self.diff_vec(&self.act_vec(&t.keys[a], &e));
                let mut rhs = Vec::new();
                for (b, c) in t.diff(a) {
                    rhs = axpy(&rhs, c, &self.act_vec(&t.keys[*b], &e));
                }
                rhs = axpy(&rhs, &Rational::sign(t.degrees[a] as i64), &self.act_vec(&t.keys[a], &self.differential[i]));
                if lhs != rhs {
                    return fail(format!("module Leibniz rule on {}, {}", t.names[a], self.names[i]));
                }
                for b in 0..t.len() {
                    if self.degrees[i] + t.degrees[a] + t.degrees[b] < self.min_degree() {
                        continue;
                    }
                    let l = self.act_vec(&t.keys[a], &self.act_vec(&t.keys[b], &e));
                    let mut r = Vec::new();
                    for (k, c) in t.mul(a, b) {
                        r = axpy(&r, c, &self.act_vec(&t.keys[*k], &e));
                    }
                    if l != r {
                        return fail(format!("module associativity on {}, {}, {}", t.names[a], t.names[b], self.names[i]));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Serialized module: algebra basis elements are referred to by name.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleJson {
    pub basis: Vec<super::json::BasisJson>,
    #[serde(default)]
    pub action: Vec<(String, usize, usize, Rational)>,
    #[serde(default)]
    pub differential: Vec<(usize, usize, Rational)>,
}

impl ModuleJson {
    pub fn to_module(&self, algebra: &GradedAlgebra) -> Result<GradedModule, AlgebraError> {
        let lo = self.basis.iter().map(|b| b.degree).min().unwrap_or(0)
            - self.basis.iter().map(|b| b.degree).max().unwrap_or(0);
        let t = AlgebraTable::new(algebra, lo);
        let mut action = Vec::new();
        for (a, i, j, c) in &self.action {
            let k = t.names.iter().position(|n| n == a).ok_or_else(|| AlgebraError::Invalid(format!("unknown algebra element {a:?}")))?;
            action.push((t.keys[k].clone(), *i, *j, c.clone()));
        }
        let weights = if self.basis.iter().any(|b| b.weight.is_some()) {
            Some(self.basis.iter().map(|b| b.weight.unwrap_or(0)).collect())
        } else {
            None
        };
        GradedModule::new(
            algebra,
            self.basis.iter().map(|b| (b.name.clone(), b.degree)).collect(),
            weights,
            action,
            self.differential.clone(),
        )
    }

    pub fn parse(text: &str, algebra: &GradedAlgebra) -> Result<GradedModule, AlgebraError> {
        let j: ModuleJson = serde_json::from_str(text).map_err(|e| AlgebraError::Json(e.to_string()))?;
        j.to_module(algebra)
    }
}
