use super::{surjection, word_of, FiniteSimplicialSet, SimplexRef, SimplicialError};

/// A simplicial map, determined by where it sends each generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialMap {
    source: FiniteSimplicialSet,
    target: FiniteSimplicialSet,
    images: Vec<SimplexRef>,
}

impl SimplicialMap {
    /// Checks dimensions, compatibility with every face, and basepoints.
    pub fn new(
        source: FiniteSimplicialSet,
        target: FiniteSimplicialSet,
        images: Vec<SimplexRef>,
    ) -> Result<Self, SimplicialError> {
        let bad = |m: String| Err(SimplicialError::BadMap(m));
        if images.len() != source.len() {
            return bad(format!("{} images for {} generators", images.len(), source.len()));
        }
        for (g, im) in images.iter().enumerate() {
            if !target.is_valid(im) || target.dim(im) != source.generator_dim(g) {
                return bad(format!("image of {} has the wrong dimension", source.name(g)));
            }
        }
        let f = Self { source, target, images };
        for g in 0..f.source.len() {
            let x = SimplexRef::generator(g);
            for i in 0..=f.source.generator_dim(g) {
                if f.source.generator_dim(g) == 0 {
                    break;
                }
                let lhs = f.target.face(&f.images[g], i)?;
                let rhs = f.apply(&f.source.face(&x, i)?);
                if lhs != rhs {
                    return bad(format!("does not commute with d_{i} on {}", f.source.name(g)));
                }
            }
        }
        if let (Some(a), Some(b)) = (f.source.basepoint(), f.target.basepoint()) {
            if f.images[a] != SimplexRef::generator(b) {
                return bad("basepoint not preserved".into());
            }
        }
        Ok(f)
    }

    pub fn identity(x: &FiniteSimplicialSet) -> Self {
        Self { source: x.clone(), target: x.clone(), images: (0..x.len()).map(SimplexRef::generator).collect() }
    }

    /// The map to a one-vertex target sending everything to the vertex.
    pub fn collapse(x: &FiniteSimplicialSet, point: &FiniteSimplicialSet) -> Result<Self, SimplicialError> {
        assert_eq!(point.len(), 1, "collapse target must be a single vertex");
        let images = (0..x.len())
            .map(|g| SimplexRef { generator: 0, word: (0..x.generator_dim(g)).collect() })
            .collect();
        Self::new(x.clone(), point.clone(), images)
    }

    pub fn source(&self) -> &FiniteSimplicialSet {
        &self.source
    }

    pub fn target(&self) -> &FiniteSimplicialSet {
        &self.target
    }

    pub fn images(&self) -> &[SimplexRef] {
        &self.images
    }

    /// Image of an arbitrary simplex: `f(X(η) x) = Y(θ∘η) y` when `f(x) = Y(θ) y`.
    pub fn apply(&self, s: &SimplexRef) -> SimplexRef {
        let k = self.source.dim(s);
        let eta = surjection(k, &s.word);
        let im = &self.images[s.generator];
        let theta = surjection(self.target.dim(im), &im.word);
        let total: Vec<usize> = eta.iter().map(|&v| theta[v]).collect();
        SimplexRef { generator: im.generator, word: word_of(&total) }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &SimplicialMap) -> Result<SimplicialMap, SimplicialError> {
        if self.target != other.source {
            return Err(SimplicialError::BadMap("composition of non-composable maps".into()));
        }
        let images = self.images.iter().map(|s| other.apply(s)).collect();
        Ok(SimplicialMap { source: self.source.clone(), target: other.target.clone(), images })
    }

    /// Whether the map is injective on every level up to `max_level`.
    pub fn is_injective_through(&self, max_level: usize) -> bool {
        (0..=max_level).all(|k| {
            let mut seen = std::collections::HashSet::new();
            self.source.level(k).iter().all(|s| seen.insert(self.apply(s)))
        })
    }

    /// Injectivity on all levels. Checking up to the top generator dimension
    /// suffices: higher simplices are degeneracies, and their images are
    /// determined by distinct lower simplices through the same words.
    pub fn is_injective(&self) -> bool {
        self.is_injective_through(self.source.max_dim().max(self.target.max_dim()) + 1)
    }
}
