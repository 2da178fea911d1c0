//! Finite simplicial sets presented by non-degenerate generators.
//!
//! Every simplex is stored in Eilenberg–Zilber normal form
//! `s_{j_l} ⋯ s_{j_1} x` with `x` a generator and `j_1 < ⋯ < j_l`. Internally
//! the word is the set of "flat steps" `{t : η(t) = η(t+1)}` of the monotone
//! surjection `η: [k] → [q]` with `s_{j_l} ⋯ s_{j_1} x = X(η) x`. Faces and
//! degeneracies act by precomposition with coface and codegeneracy maps, and a
//! face that stops being surjective is pushed into the generator's face table.
//!
//! Levels are enumerated in a fixed order (generator id, then lexicographic
//! word), which makes every tensor basis built on top of them reproducible.

mod constructions;
mod json;
mod maps;
mod models;

use std::collections::HashMap;
use std::fmt;

pub use constructions::{disjoint_union, product, product_simplex, pushout, subcomplex, Pushout};
pub use json::SpaceJson;
pub use maps::SimplicialMap;

pub use models::{circle_gluing, cylinder, cylinder_gluing, standard_model, torus_gluing, STANDARD_MODEL_NAMES};

/// A simplex in normal form: a generator and a strictly increasing degeneracy word.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub struct SimplexRef {
    pub generator: usize,
    pub word: Vec<usize>,
}

impl SimplexRef {
    pub fn generator(g: usize) -> Self {
        Self { generator: g, word: Vec::new() }
    }

    pub fn is_degenerate(&self) -> bool {
        !self.word.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SimplicialError {
    #[error("face index {index} out of range for a simplex of dimension {dim}")]
    FaceIndex { index: usize, dim: usize },
    #[error("degeneracy index {index} out of range for a simplex of dimension {dim}")]
    DegeneracyIndex { index: usize, dim: usize },
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("duplicate generator name {0:?}")]
    DuplicateGenerator(String),
    #[error("generator {gen:?}: {msg}")]
    BadFaceTable { gen: String, msg: String },
    #[error("simplicial identity d_{i} d_{j} = d_{} d_{i} fails on {gen:?}", j - 1)]
    Identity { gen: String, i: usize, j: usize },
    #[error("basepoint {0:?} is not a 0-simplex")]
    BadBasepoint(String),
    #[error("invalid simplicial map: {0}")]
    BadMap(String),
    #[error("unknown model {0:?}")]
    UnknownModel(String),
    #[error("{0}")]
    Json(String),
}

/// `η(t) = t − #{j ∈ word : j < t}` on `[k]`.
pub(crate) fn surjection(k: usize, word: &[usize]) -> Vec<usize> {
    let mut eta = Vec::with_capacity(k + 1);
    let mut w = 0;
    for t in 0..=k {
        while w < word.len() && word[w] < t {
            w += 1;
        }
        eta.push(t - w);
    }
    eta
}

/// The flat steps of a monotone surjection.
pub(crate) fn word_of(eta: &[usize]) -> Vec<usize> {
    (0..eta.len().saturating_sub(1)).filter(|&t| eta[t] == eta[t + 1]).collect()
}

/// A finite simplicial set given by generators and face tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSimplicialSet {
    names: Vec<String>,
    dims: Vec<usize>,
    faces: Vec<Vec<SimplexRef>>,
    basepoint: Option<usize>,
}

impl FiniteSimplicialSet {
    /// Validate and build. `faces[g]` lists `d_0 g, …, d_q g`.
    pub fn new(
        generators: Vec<(String, usize)>,
        faces: Vec<Vec<SimplexRef>>,
        basepoint: Option<usize>,
    ) -> Result<Self, SimplicialError> {
        let (names, dims): (Vec<String>, Vec<usize>) = generators.into_iter().unzip();
        let mut seen = HashMap::new();
        for (g, n) in names.iter().enumerate() {
            if seen.insert(n.clone(), g).is_some() {
                return Err(SimplicialError::DuplicateGenerator(n.clone()));
            }
        }
        let x = Self { names, dims, faces, basepoint };
        x.validate()?;
        Ok(x)
    }

    fn validate(&self) -> Result<(), SimplicialError> {
        if self.faces.len() != self.dims.len() {
            return Err(SimplicialError::BadFaceTable {
                gen: String::new(),
                msg: "face table length differs from generator count".into(),
            });
        }
        for g in 0..self.len() {
            let q = self.dims[g];
            let bad = |msg: String| SimplicialError::BadFaceTable { gen: self.names[g].clone(), msg };
            let expected = if q == 0 { 0 } else { q + 1 };
            if self.faces[g].len() != expected {
                return Err(bad(format!("expected {expected} faces, found {}", self.faces[g].len())));
            }
            for (i, f) in self.faces[g].iter().enumerate() {
                if !self.is_valid(f) {
                    return Err(bad(format!("face {i} is not a valid simplex")));
                }
                if self.dim(f) != q - 1 {
                    return Err(bad(format!("face {i} has dimension {} instead of {}", self.dim(f), q - 1)));
                }
            }
        }
        if let Some(b) = self.basepoint {
            if b >= self.len() || self.dims[b] != 0 {
                return Err(SimplicialError::BadBasepoint(self.names.get(b).cloned().unwrap_or_default()));
            }
        }
        for g in 0..self.len() {
            let q = self.dims[g];
            let s = SimplexRef::generator(g);
            for j in 1..=q {
                for i in 0..j {
                    if q < 2 {
                        continue;
                    }
                    let a = self.face(&self.face(&s, j)?, i)?;
                    let b = self.face(&self.face(&s, i)?, j - 1)?;
                    if a != b {
                        return Err(SimplicialError::Identity { gen: self.names[g].clone(), i, j });
                    }
                }
            }
        }
        Ok(())
    }

    /// Number of generators.
    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn name(&self, g: usize) -> &str {
        &self.names[g]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn generator_dim(&self, g: usize) -> usize {
        self.dims[g]
    }

    pub fn find(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn face_table(&self, g: usize) -> &[SimplexRef] {
        &self.faces[g]
    }

    pub fn basepoint(&self) -> Option<usize> {
        self.basepoint
    }

    pub fn with_basepoint(&self, b: Option<usize>) -> Result<Self, SimplicialError> {
        let mut x = self.clone();
        x.basepoint = b;
        x.validate()?;
        Ok(x)
    }

    pub fn max_dim(&self) -> usize {
        self.dims.iter().copied().max().unwrap_or(0)
    }

    pub fn dim(&self, s: &SimplexRef) -> usize {
        self.dims[s.generator] + s.word.len()
    }

    pub fn is_valid(&self, s: &SimplexRef) -> bool {
        if s.generator >= self.len() {
            return false;
        }
        let k = self.dim(s);
        s.word.windows(2).all(|w| w[0] < w[1]) && s.word.iter().all(|&j| j < k)
    }

    /// `d_i s` in normal form.
    pub fn face(&self, s: &SimplexRef, i: usize) -> Result<SimplexRef, SimplicialError> {
        let k = self.dim(s);
        if k == 0 || i > k {
            return Err(SimplicialError::FaceIndex { index: i, dim: k });
        }
        let eta = surjection(k, &s.word);
        let lone = (i == 0 || eta[i - 1] != eta[i]) && (i == k || eta[i + 1] != eta[i]);
        let composed: Vec<usize> = (0..=k).filter(|&t| t != i).map(|t| eta[t]).collect();
        if !lone {
            return Ok(SimplexRef { generator: s.generator, word: word_of(&composed) });
        }
        // η∘δ_i = δ_m ∘ η'' with m the missed value.
        let m = eta[i];
        let inner: Vec<usize> = composed.iter().map(|&v| if v > m { v - 1 } else { v }).collect();
        let f = &self.faces[s.generator][m];
        let outer = surjection(self.dim(f), &f.word);
        let total: Vec<usize> = inner.iter().map(|&v| outer[v]).collect();
        Ok(SimplexRef { generator: f.generator, word: word_of(&total) })
    }

    /// `s_j s` in normal form.
    pub fn degeneracy(&self, s: &SimplexRef, j: usize) -> Result<SimplexRef, SimplicialError> {
        let k = self.dim(s);
        if j > k {
            return Err(SimplicialError::DegeneracyIndex { index: j, dim: k });
        }
        let eta = surjection(k, &s.word);
        let composed: Vec<usize> = (0..=k + 1).map(|t| eta[if t <= j { t } else { t - 1 }]).collect();
        Ok(SimplexRef { generator: s.generator, word: word_of(&composed) })
    }

    /// All simplices of dimension `k`, by generator id then lexicographic word.
    pub fn level(&self, k: usize) -> Vec<SimplexRef> {
        let mut out = Vec::new();
        for g in 0..self.len() {
            let q = self.dims[g];
            if q > k {
                continue;
            }
            for word in increasing_words(k - q, k) {
                out.push(SimplexRef { generator: g, word });
            }
        }
        out
    }

    /// Level `k` without the basepoint's degeneracy.
    pub fn pointed_level(&self, k: usize) -> Vec<SimplexRef> {
        let mut l = self.level(k);
        if let Some(b) = self.basepoint {
            l.retain(|s| s.generator != b);
        }
        l
    }

    pub fn level_size(&self, k: usize) -> usize {
        (0..self.len()).filter(|&g| self.dims[g] <= k).map(|g| binomial(k, k - self.dims[g])).sum()
    }

    pub fn display(&self, s: &SimplexRef) -> String {
        let mut out = String::new();
        for j in s.word.iter().rev() {
            out.push_str(&format!("s{j} "));
        }
        out.push_str(&self.names[s.generator]);
        out
    }
}

impl fmt::Display for FiniteSimplicialSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in 0..self.len() {
            write!(f, "{} (dim {})", self.names[g], self.dims[g])?;
            if !self.faces[g].is_empty() {
                let faces: Vec<String> = self.faces[g].iter().map(|s| self.display(s)).collect();
                write!(f, ": {}", faces.join(", "))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

pub fn binomial(n: usize, r: usize) -> usize {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    (0..r).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Strictly increasing sequences of length `len` in `0..n`, lexicographically.
pub fn increasing_words(len: usize, n: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, len: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        let remaining = len - cur.len();
        for j in start..=n.saturating_sub(remaining) {
            if j + remaining > n {
                break;
            }
            cur.push(j);
            go(j + 1, len, n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, len, n, &mut Vec::new(), &mut out);
    out
}

/// Levels `0..=max_level` with index maps and face/degeneracy tables.
#[derive(Clone, Debug)]
pub struct Levels {
    pub simplices: Vec<Vec<SimplexRef>>,
    pub index: Vec<HashMap<SimplexRef, usize>>,
    /// `faces[k][i][p]` = position of `d_i` of simplex `p` at level `k` (`k ≥ 1`).
    pub faces: Vec<Vec<Vec<usize>>>,
    /// `degeneracies[k][j][p]` = position of `s_j` of simplex `p` at level `k`, for `k < max_level`.
    pub degeneracies: Vec<Vec<Vec<usize>>>,
}

impl Levels {
    pub fn new(x: &FiniteSimplicialSet, max_level: usize) -> Self {
        let simplices: Vec<Vec<SimplexRef>> = (0..=max_level).map(|k| x.level(k)).collect();
        let index: Vec<HashMap<SimplexRef, usize>> =
            simplices.iter().map(|l| l.iter().cloned().enumerate().map(|(p, s)| (s, p)).collect()).collect();
        let mut faces = vec![Vec::new()];
        for k in 1..=max_level {
            faces.push(
                (0..=k)
                    .map(|i| simplices[k].iter().map(|s| index[k - 1][&x.face(s, i).expect("face")]).collect())
                    .collect(),
            );
        }
        let mut degeneracies = Vec::new();
        for k in 0..max_level {
            degeneracies.push(
                (0..=k)
                    .map(|j| simplices[k].iter().map(|s| index[k + 1][&x.degeneracy(s, j).expect("deg")]).collect())
                    .collect(),
            );
        }
        Self { simplices, index, faces, degeneracies }
    }

    pub fn max_level(&self) -> usize {
        self.simplices.len() - 1
    }
}

/// Checks every simplicial identity between faces and degeneracies on
/// levels `0..=max_level`, naming the first failure.
pub fn check_simplicial_identities(x: &FiniteSimplicialSet, max_level: usize) -> Result<(), String> {
    let l = Levels::new(x, max_level + 1);
    let (d, s) = (&l.faces, &l.degeneracies);
    let fail = |what: String, k: usize, p: usize| Err(format!("{what} fails on {} at level {k}", x.display(&l.simplices[k][p])));
    for k in 0..=max_level {
        for p in 0..l.simplices[k].len() {
            if k >= 2 {
                for j in 1..=k {
                    for i in 0..j {
                        if d[k - 1][i][d[k][j][p]] != d[k - 1][j - 1][d[k][i][p]] {
                            return fail(format!("d_{i} d_{j} = d_{} d_{i}", j - 1), k, p);
                        }
                    }
                }
            }
            for j in 0..=k {
                let q = s[k][j][p];
                for i in 0..=k + 1 {
                    let lhs = d[k + 1][i][q];
                    let ok = if i == j || i == j + 1 {
                        lhs == p
                    } else if i < j {
                        lhs == s[k - 1][j - 1][d[k][i][p]]
                    } else {
                        lhs == s[k - 1][j][d[k][i - 1][p]]
                    };
                    if !ok {
                        return fail(format!("d_{i} s_{j}"), k, p);
                    }
                }
                if k + 1 < s.len() {
                    for i in 0..=j {
                        if s[k + 1][i][s[k][j][p]] != s[k + 1][j + 1][s[k][i][p]] {
                            return fail(format!("s_{i} s_{j} = s_{} s_{i}", j + 1), k, p);
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn surjection_roundtrip() {
        for k in 0..6 {
            for len in 0..=k {
                for w in increasing_words(len, k) {
                    let eta = surjection(k, &w);
                    assert_eq!(*eta.last().unwrap(), k - len);
                    assert_eq!(word_of(&eta), w);
                }
            }
        }
    }

    #[test]
    fn word_counts() {
        assert_eq!(increasing_words(2, 4).len(), 6);
        assert_eq!(increasing_words(0, 3), vec![Vec::<usize>::new()]);
        assert_eq!(binomial(6, 2), 15);
    }
}
