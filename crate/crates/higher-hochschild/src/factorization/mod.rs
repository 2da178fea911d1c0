//! The Hochschild prefactorization algebra `U ↦ CH_U(A)` on combinatorial
//! covers, its structure maps, and its Čech complex.
//!
//! Opens are simplicial subsets given by generator sets closed under faces;
//! two opens are disjoint when they share no simplex, which for subsets is
//! the same as sharing no generator.

mod cech;
mod structure;

use std::collections::{BTreeMap, BTreeSet};

use crate::simplicial::{circle_gluing, disjoint_union, pushout, subcomplex, FiniteSimplicialSet, SimplexRef, SimplicialMap};

pub use cech::{cech_compare, cech_complex, CechComplex, CechComparison};
pub use structure::{structure_map, StructureMap};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FactorizationError {
    #[error("invalid cover: {0}")]
    Cover(String),
    #[error("opens are not pairwise disjoint")]
    NotDisjoint,
    #[error("open is not contained in the target")]
    NotContained,
    #[error("tuple cap must be at least 2 (got {0})")]
    Cap(usize),
    #[error("{0}")]
    Hochschild(String),
}

/// A finite cover of a simplicial set by simplicial subsets.
#[derive(Clone, Debug)]
pub struct CombinatorialCover {
    space: FiniteSimplicialSet,
    names: Vec<String>,
    /// The given opens, as sorted generator sets.
    opens: Vec<Vec<usize>>,
    /// Every non-empty intersection of given opens.
    intersections: Vec<Vec<usize>>,
}

/// Closure of a generator set under faces, sorted.
pub fn face_closure(x: &FiniteSimplicialSet, gens: &[usize]) -> Vec<usize> {
    let mut keep = BTreeSet::new();
    let mut stack = gens.to_vec();
    while let Some(g) = stack.pop() {
        if keep.insert(g) {
            stack.extend(x.face_table(g).iter().map(|s| s.generator));
        }
    }
    keep.into_iter().collect()
}

fn intersect(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().filter(|g| b.binary_search(g).is_ok()).copied().collect()
}

impl CombinatorialCover {
    /// Closes each open under faces, checks that the opens cover the space
    /// and computes the intersection closure.
    pub fn new(space: &FiniteSimplicialSet, opens: Vec<(String, Vec<usize>)>) -> Result<Self, FactorizationError> {
        let mut names = Vec::new();
        let mut sets = Vec::new();
        for (name, gens) in opens {
            if let Some(g) = gens.iter().find(|&&g| g >= space.len()) {
                return Err(FactorizationError::Cover(format!("open {name} names generator #{g}")));
            }
            let set = face_closure(space, &gens);
            if set.is_empty() {
                return Err(FactorizationError::Cover(format!("open {name} is empty")));
            }
            names.push(name);
            sets.push(set);
        }
        let covered: BTreeSet<usize> = sets.iter().flatten().copied().collect();
        if covered.len() != space.len() {
            let missing = (0..space.len()).find(|g| !covered.contains(g)).unwrap_or(0);
            return Err(FactorizationError::Cover(format!("generator {} is not covered", space.name(missing))));
        }
        let mut closure: BTreeSet<Vec<usize>> = sets.iter().cloned().collect();
        loop {
            let current: Vec<Vec<usize>> = closure.iter().cloned().collect();
            let mut grew = false;
            for a in &current {
                for b in &current {
                    let c = intersect(a, b);
                    if !c.is_empty() && closure.insert(c) {
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        Ok(Self { space: space.clone(), names, opens: sets, intersections: closure.into_iter().collect() })
    }

    /// The cover by the whole space.
    pub fn single(space: &FiniteSimplicialSet) -> Self {
        Self::new(space, vec![("X".into(), (0..space.len()).collect())]).expect("the whole space covers itself")
    }

    /// `circle_two_cell` covered by the closures of its two edges; they meet
    /// in the two vertices.
    pub fn two_arc_circle() -> Self {
        let (f, g) = circle_gluing();
        let w = pushout(&f, &g).expect("circle gluing").space;
        let edges: Vec<usize> = (0..w.len()).filter(|&e| w.generator_dim(e) == 1).collect();
        let opens = edges.iter().enumerate().map(|(i, &e)| (format!("U{}", i + 1), vec![e])).collect();
        Self::new(&w, opens).expect("two arcs cover the circle")
    }

    /// Parses `{"opens": {"name": ["generator", …]}}`; generators are named as
    /// in the space.
    pub fn from_json(space: &FiniteSimplicialSet, text: &str) -> Result<Self, FactorizationError> {
        #[derive(serde::Deserialize)]
        struct CoverJson {
            opens: BTreeMap<String, Vec<String>>,
        }
        let parsed: CoverJson = serde_json::from_str(text).map_err(|e| FactorizationError::Cover(e.to_string()))?;
        let mut opens = Vec::new();
        for (name, gens) in parsed.opens {
            let ids = gens
                .iter()
                .map(|g| space.find(g).ok_or_else(|| FactorizationError::Cover(format!("unknown generator {g:?}"))))
                .collect::<Result<Vec<_>, _>>()?;
            opens.push((name, ids));
        }
        Self::new(space, opens)
    }

    pub fn space(&self) -> &FiniteSimplicialSet {
        &self.space
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn opens(&self) -> &[Vec<usize>] {
        &self.opens
    }

    pub fn intersections(&self) -> &[Vec<usize>] {
        &self.intersections
    }

    /// `PU`: non-empty families of pairwise disjoint given opens, as sorted
    /// index lists, ordered by size and then lexicographically.
    pub fn families(&self) -> Vec<Vec<usize>> {
        let n = self.opens.len();
        let mut out = Vec::new();
        fn go(c: &CombinatorialCover, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            for i in start..c.opens.len() {
                if cur.iter().all(|&j| intersect(&c.opens[i], &c.opens[j]).is_empty()) {
                    cur.push(i);
                    out.push(cur.clone());
                    go(c, i + 1, cur, out);
                    cur.pop();
                }
            }
        }
        if n > 0 {
            go(self, 0, &mut Vec::new(), &mut out);
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }
}

/// A disjoint union of subcomplexes of one space, without basepoint.
#[derive(Clone, Debug)]
pub(crate) struct Pieces {
    pub space: FiniteSimplicialSet,
    pub pieces: Vec<Vec<usize>>,
    /// For each generator of the union: the piece and the generator of the
    /// ambient space it came from.
    pub piece_of: Vec<usize>,
    pub origin: Vec<usize>,
}

impl Pieces {
    pub fn new(x: &FiniteSimplicialSet, pieces: Vec<Vec<usize>>) -> Self {
        let mut space = FiniteSimplicialSet::new(vec![], vec![], None).expect("the empty simplicial set");
        let (mut piece_of, mut origin) = (Vec::new(), Vec::new());
        for (i, p) in pieces.iter().enumerate() {
            let (sub, inc) = subcomplex(x, p).expect("pieces are generator sets of the space");
            let sub = sub.with_basepoint(None).expect("dropping a basepoint");
            origin.extend(inc.images().iter().map(|s| s.generator));
            piece_of.extend(std::iter::repeat(i).take(sub.len()));
            space = disjoint_union(&space, &sub);
        }
        Self { space, pieces, piece_of, origin }
    }

    /// The map into `target` sending piece `p` into piece `home[p]`, which
    /// must contain it.
    pub fn map_into(&self, target: &Pieces, home: &[usize]) -> SimplicialMap {
        let images = (0..self.space.len())
            .map(|g| {
                let t = home[self.piece_of[g]];
                let h = (0..target.space.len())
                    .find(|&h| target.piece_of[h] == t && target.origin[h] == self.origin[g])
                    .expect("source piece lies inside its target piece");
                SimplexRef::generator(h)
            })
            .collect();
        SimplicialMap::new(self.space.clone(), target.space.clone(), images).expect("inclusion of pieces is simplicial")
    }
}
