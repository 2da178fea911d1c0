use crate::cdga::GradedAlgebra;
use crate::hochschild::{build_complex, induced_chain, shuffle_product, BuildOptions, Chain, HochschildComplex};
use crate::simplicial::{FiniteSimplicialSet, SimplicialMap};

use super::{face_closure, intersect, FactorizationError, Pieces};

/// `μ_{U_1,…,U_n,V}: CH_{U_1}(A) ⊗ ⋯ ⊗ CH_{U_n}(A) → CH_V(A)` for pairwise
/// disjoint `U_i ⊆ V`: push each factor forward along its inclusion and
/// multiply with the shuffle product.
#[derive(Clone, Debug)]
pub struct StructureMap {
    pub sources: Vec<HochschildComplex>,
    pub target: HochschildComplex,
    inclusions: Vec<SimplicialMap>,
}

/// Builds the structure map for opens of `x` given by generator sets (closed
/// under faces here). All complexes use the window `[n_min, 0]`.
pub fn structure_map(
    x: &FiniteSimplicialSet,
    opens: &[Vec<usize>],
    target: &[usize],
    algebra: &GradedAlgebra,
    n_min: i32,
) -> Result<StructureMap, FactorizationError> {
    let opens: Vec<Vec<usize>> = opens.iter().map(|u| face_closure(x, u)).collect();
    let target = face_closure(x, target);
    for (i, u) in opens.iter().enumerate() {
        if intersect(u, &target).len() != u.len() {
            return Err(FactorizationError::NotContained);
        }
        if opens[..i].iter().any(|v| !intersect(u, v).is_empty()) {
            return Err(FactorizationError::NotDisjoint);
        }
    }
    let hh = |e: crate::hochschild::HochschildError| FactorizationError::Hochschild(e.to_string());
    let opts = BuildOptions::default();
    let v = Pieces::new(x, vec![target]);
    let tgt = build_complex(&v.space, algebra, None, n_min, &opts).map_err(hh)?;
    let mut sources = Vec::new();
    let mut inclusions = Vec::new();
    for u in opens {
        let p = Pieces::new(x, vec![u]);
        sources.push(build_complex(&p.space, algebra, None, n_min, &opts).map_err(hh)?);
        inclusions.push(p.map_into(&v, &[0]));
    }
    Ok(StructureMap { sources, target: tgt, inclusions })
}

impl StructureMap {
    /// `μ(c_1 ⊗ ⋯ ⊗ c_n)`, one chain per source.
    pub fn apply(&self, chains: &[Chain]) -> Result<Chain, FactorizationError> {
        if chains.len() != self.sources.len() {
            return Err(FactorizationError::Hochschild(format!(
                "{} chains for {} opens",
                chains.len(),
                self.sources.len()
            )));
        }
        let hh = |e: crate::hochschild::HochschildError| FactorizationError::Hochschild(e.to_string());
        let mut out = Chain::from([(self.target.unit_tensor(None), crate::exactla::Rational::one())]);
        for ((c, f), s) in chains.iter().zip(&self.inclusions).zip(&self.sources) {
            let pushed = induced_chain(f, s, &self.target, c).map_err(hh)?;
            out = shuffle_product(&self.target, &out, &pushed).map_err(hh)?;
        }
        Ok(out)
    }
}
