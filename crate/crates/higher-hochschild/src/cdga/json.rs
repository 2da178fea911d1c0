use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{AlgebraError, GradedAlgebra, Monomial};
use crate::exactla::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisJson {
    pub name: String,
    pub degree: i32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorJson {
    pub name: String,
    pub degree: i32,
}

/// Serialized algebra. Table form: structure constants `[i, j, k, c]` for
/// `e_i e_j ∋ c e_k` and `[i, j, c]` for `d e_i ∋ c e_j`. Free form: each
/// differential is a list of `[c, [generator names…]]` monomial terms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraJson {
    Table {
        basis: Vec<BasisJson>,
        unit: String,
        #[serde(default)]
        product: Vec<(usize, usize, usize, Rational)>,
        #[serde(default)]
        differential: Vec<(usize, usize, Rational)>,
    },
    Free {
        free_generators: Vec<GeneratorJson>,
        #[serde(default)]
        d: BTreeMap<String, Vec<(Rational, Vec<String>)>>,
    },
}

impl AlgebraJson {
    pub fn to_algebra(&self, name: &str) -> Result<GradedAlgebra, AlgebraError> {
        match self {
            AlgebraJson::Table { basis, unit, product, differential } => {
                let u = basis
                    .iter()
                    .position(|b| &b.name == unit)
                    .ok_or_else(|| AlgebraError::Invalid(format!("unit {unit:?} is not a basis element")))?;
                let weights = if basis.iter().any(|b| b.weight.is_some()) {
                    Some(basis.iter().map(|b| b.weight.unwrap_or(0)).collect())
                } else {
                    None
                };
                GradedAlgebra::table(
                    name,
                    basis.iter().map(|b| (b.name.clone(), b.degree)).collect(),
                    u,
                    product.clone(),
                    differential.clone(),
                    weights,
                )
            }
            AlgebraJson::Free { free_generators, d } => {
                let names: Vec<&str> = free_generators.iter().map(|g| g.name.as_str()).collect();
                for k in d.keys() {
                    if !names.contains(&k.as_str()) {
                        return Err(AlgebraError::Invalid(format!("differential of unknown generator {k:?}")));
                    }
                }
                let mut diffs = Vec::new();
                for g in free_generators {
                    let mut terms = Vec::new();
                    for (c, factors) in d.get(&g.name).map(Vec::as_slice).unwrap_or(&[]) {
                        let mut e = vec![0u32; names.len()];
                        for f in factors {
                            let i = names
                                .iter()
                                .position(|n| n == f)
                                .ok_or_else(|| AlgebraError::Invalid(format!("unknown generator {f:?}")))?;
                            e[i] += 1;
                        }
                        terms.push((c.clone(), Monomial(e)));
                    }
                    diffs.push(terms);
                }
                GradedAlgebra::free(name, free_generators.iter().map(|g| (g.name.clone(), g.degree)).collect(), diffs)
            }
        }
    }

    pub fn parse(text: &str, name: &str) -> Result<GradedAlgebra, AlgebraError> {
        let j: AlgebraJson = serde_json::from_str(text).map_err(|e| AlgebraError::Json(e.to_string()))?;
        j.to_algebra(name)
    }
}
