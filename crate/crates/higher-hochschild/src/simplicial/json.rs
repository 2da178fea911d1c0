use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{FiniteSimplicialSet, SimplexRef, SimplicialError};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorJson {
    pub id: String,
    pub dim: usize,
}

/// Serialized form of a finite simplicial set. Each face is
/// `[generator id, degeneracy word]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceJson {
    pub generators: Vec<GeneratorJson>,
    #[serde(default)]
    pub faces: BTreeMap<String, Vec<(String, Vec<usize>)>>,
    #[serde(default)]
    pub basepoint: Option<String>,
}

impl SpaceJson {
    pub fn from_space(x: &FiniteSimplicialSet) -> Self {
        let generators = (0..x.len()).map(|g| GeneratorJson { id: x.name(g).into(), dim: x.generator_dim(g) }).collect();
        let faces = (0..x.len())
            .filter(|&g| x.generator_dim(g) > 0)
            .map(|g| {
                let fs = x.face_table(g).iter().map(|s| (x.name(s.generator).to_string(), s.word.clone())).collect();
                (x.name(g).to_string(), fs)
            })
            .collect();
        Self { generators, faces, basepoint: x.basepoint().map(|b| x.name(b).to_string()) }
    }

    pub fn to_space(&self) -> Result<FiniteSimplicialSet, SimplicialError> {
        let ids: Vec<&str> = self.generators.iter().map(|g| g.id.as_str()).collect();
        let lookup = |n: &str| {
            ids.iter().position(|i| *i == n).ok_or_else(|| SimplicialError::UnknownGenerator(n.to_string()))
        };
        for k in self.faces.keys() {
            lookup(k)?;
        }
        let mut faces = Vec::new();
        for g in &self.generators {
            let fs = match self.faces.get(&g.id) {
                Some(list) => list
                    .iter()
                    .map(|(n, w)| Ok(SimplexRef { generator: lookup(n)?, word: w.clone() }))
                    .collect::<Result<Vec<_>, SimplicialError>>()?,
                None => Vec::new(),
            };
            faces.push(fs);
        }
        let basepoint = self.basepoint.as_deref().map(lookup).transpose()?;
        FiniteSimplicialSet::new(self.generators.iter().map(|g| (g.id.clone(), g.dim)).collect(), faces, basepoint)
    }

    pub fn parse(text: &str) -> Result<FiniteSimplicialSet, SimplicialError> {
        let j: SpaceJson = serde_json::from_str(text).map_err(|e| SimplicialError::Json(e.to_string()))?;
        j.to_space()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::standard_model;

    #[test]
    fn roundtrip_models() {
        for name in ["point", "circle_minimal", "torus_glued", "sphere(3)", "boundary_delta(2)"] {
            let x = standard_model(name).unwrap();
            let text = serde_json::to_string(&SpaceJson::from_space(&x)).unwrap();
            assert_eq!(SpaceJson::parse(&text).unwrap(), x);
        }
    }

    #[test]
    fn rejects_bad_face() {
        let text = r#"{"generators":[{"id":"v","dim":0},{"id":"e","dim":1}],
            "faces":{"e":[["v",[]],["w",[]]]},"basepoint":"v"}"#;
        assert!(matches!(SpaceJson::parse(text), Err(SimplicialError::UnknownGenerator(_))));
        let text = r#"{"generators":[{"id":"v","dim":0},{"id":"e","dim":1}],
            "faces":{"e":[["v",[0]],["v",[]]]}}"#;
        assert!(SpaceJson::parse(text).is_err());
    }
}
