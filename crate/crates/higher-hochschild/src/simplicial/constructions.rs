use std::collections::{BTreeMap, HashMap};

use super::{surjection, word_of, FiniteSimplicialSet, SimplexRef, SimplicialError, SimplicialMap};

/// Coproduct; generators of `y` follow those of `x`. Names from `y` that
/// collide with names in `x` get a `'` suffix.
pub fn disjoint_union(x: &FiniteSimplicialSet, y: &FiniteSimplicialSet) -> FiniteSimplicialSet {
    let mut gens: Vec<(String, usize)> = (0..x.len()).map(|g| (x.name(g).to_string(), x.generator_dim(g))).collect();
    let mut faces: Vec<Vec<SimplexRef>> = (0..x.len()).map(|g| x.face_table(g).to_vec()).collect();
    let mut taken: std::collections::HashSet<String> = x.names().iter().cloned().collect();
    for g in 0..y.len() {
        let mut n = y.name(g).to_string();
        while taken.contains(&n) {
            n.push('\'');
        }
        taken.insert(n.clone());
        gens.push((n, y.generator_dim(g)));
        faces.push(
            y.face_table(g)
                .iter()
                .map(|s| SimplexRef { generator: s.generator + x.len(), word: s.word.clone() })
                .collect(),
        );
    }
    FiniteSimplicialSet::new(gens, faces, x.basepoint()).expect("coproduct of valid sets is valid")
}

/// The simplicial subset generated by `gens` (closed under faces automatically)
/// together with its inclusion.
pub fn subcomplex(
    x: &FiniteSimplicialSet,
    gens: &[usize],
) -> Result<(FiniteSimplicialSet, SimplicialMap), SimplicialError> {
    let mut keep = vec![false; x.len()];
    let mut stack: Vec<usize> = gens.to_vec();
    while let Some(g) = stack.pop() {
        if g >= x.len() {
            return Err(SimplicialError::UnknownGenerator(format!("#{g}")));
        }
        if keep[g] {
            continue;
        }
        keep[g] = true;
        stack.extend(x.face_table(g).iter().map(|s| s.generator));
    }
    let kept: Vec<usize> = (0..x.len()).filter(|&g| keep[g]).collect();
    let renum: HashMap<usize, usize> = kept.iter().enumerate().map(|(i, &g)| (g, i)).collect();
    let sub = FiniteSimplicialSet::new(
        kept.iter().map(|&g| (x.name(g).to_string(), x.generator_dim(g))).collect(),
        kept.iter()
            .map(|&g| {
                x.face_table(g)
                    .iter()
                    .map(|s| SimplexRef { generator: renum[&s.generator], word: s.word.clone() })
                    .collect()
            })
            .collect(),
        x.basepoint().and_then(|b| renum.get(&b).copied()),
    )?;
    let inc = SimplicialMap::new(sub.clone(), x.clone(), kept.iter().map(|&g| SimplexRef::generator(g)).collect())?;
    Ok((sub, inc))
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, a: usize) -> usize {
        let mut r = a;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut a = a;
        while self.0[a] != r {
            let n = self.0[a];
            self.0[a] = r;
            a = n;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        // Keep the smaller index as root so X-elements represent their class.
        if ra < rb {
            self.0[rb] = ra;
        } else if rb < ra {
            self.0[ra] = rb;
        }
    }
}

/// `W = X ∪_Z Y` with its two canonical maps.
#[derive(Clone, Debug)]
pub struct Pushout {
    pub space: FiniteSimplicialSet,
    pub left: SimplicialMap,
    pub right: SimplicialMap,
}

/// Levelwise quotient `(X_k ⊔ Y_k)/(f(z) ∼ g(z))`, computed on every level up
/// to the top generator dimension; a class is a generator of `W` exactly when
/// it contains no degenerate simplex.
pub fn pushout(f: &SimplicialMap, g: &SimplicialMap) -> Result<Pushout, SimplicialError> {
    if f.source() != g.source() {
        return Err(SimplicialError::BadMap("pushout legs have different sources".into()));
    }
    let (x, y, z) = (f.target(), g.target(), f.source());
    let top = x.max_dim().max(y.max_dim());

    // Per level: elements (X first, then Y) and their class roots.
    let mut elems: Vec<Vec<(bool, SimplexRef)>> = Vec::new();
    let mut roots: Vec<Vec<usize>> = Vec::new();
    let mut pos: Vec<HashMap<(bool, SimplexRef), usize>> = Vec::new();
    for k in 0..=top {
        let mut e: Vec<(bool, SimplexRef)> = x.level(k).into_iter().map(|s| (false, s)).collect();
        e.extend(y.level(k).into_iter().map(|s| (true, s)));
        let p: HashMap<(bool, SimplexRef), usize> = e.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        let mut uf = UnionFind((0..e.len()).collect());
        for s in z.level(k) {
            uf.union(p[&(false, f.apply(&s))], p[&(true, g.apply(&s))]);
        }
        roots.push((0..e.len()).map(|i| uf.find(i)).collect());
        elems.push(e);
        pos.push(p);
    }

    // Non-degenerate classes become generators, ordered by level then root.
    let mut gen_of_root: Vec<BTreeMap<usize, usize>> = vec![BTreeMap::new(); top + 1];
    let mut gens: Vec<(String, usize)> = Vec::new();
    let mut reps: Vec<(usize, usize)> = Vec::new();
    let mut taken = std::collections::HashSet::new();
    for k in 0..=top {
        let mut degenerate: std::collections::HashSet<usize> = std::collections::HashSet::new();
        for (i, (_, s)) in elems[k].iter().enumerate() {
            if s.is_degenerate() {
                degenerate.insert(roots[k][i]);
            }
        }
        let mut classes: Vec<usize> = roots[k].clone();
        classes.sort_unstable();
        classes.dedup();
        for r in classes {
            if degenerate.contains(&r) {
                continue;
            }
            let (from_y, s) = &elems[k][r];
            let base = if *from_y { y.name(s.generator) } else { x.name(s.generator) };
            let mut name = base.to_string();
            while taken.contains(&name) {
                name.push('\'');
            }
            taken.insert(name.clone());
            gen_of_root[k].insert(r, gens.len());
            gens.push((name, k));
            reps.push((k, r));
        }
    }

    // Normal form in W of the class of element `i` at level `k`.
    fn normal_form(
        k: usize,
        i: usize,
        x: &FiniteSimplicialSet,
        y: &FiniteSimplicialSet,
        elems: &[Vec<(bool, SimplexRef)>],
        roots: &[Vec<usize>],
        pos: &[HashMap<(bool, SimplexRef), usize>],
        gen_of_root: &[BTreeMap<usize, usize>],
    ) -> SimplexRef {
        let r = roots[k][i];
        if let Some(&gw) = gen_of_root[k].get(&r) {
            return SimplexRef::generator(gw);
        }
        // Some member is s_j b; the class is s_j of the class of b = d_j(member).
        let m = (0..elems[k].len()).find(|&m| roots[k][m] == r && elems[k][m].1.is_degenerate()).expect("degenerate");
        let (from_y, s) = &elems[k][m];
        let j = s.word[0];
        let sp = if *from_y { y } else { x };
        let b = sp.face(s, j).expect("face");
        let bi = pos[k - 1][&(*from_y, b)];
        let inner = normal_form(k - 1, bi, x, y, elems, roots, pos, gen_of_root);
        // Apply s_j to the inner normal form via surjections.
        let eta = surjection(k - 1, &inner.word);
        let composed: Vec<usize> = (0..=k).map(|t| eta[if t <= j { t } else { t - 1 }]).collect();
        SimplexRef { generator: inner.generator, word: word_of(&composed) }
    }

    let mut faces = Vec::with_capacity(gens.len());
    for &(k, r) in &reps {
        let (from_y, s) = &elems[k][r];
        let sp = if *from_y { y } else { x };
        let mut fs = Vec::new();
        if k > 0 {
            for i in 0..=k {
                let d = sp.face(s, i)?;
                let di = pos[k - 1][&(*from_y, d)];
                fs.push(normal_form(k - 1, di, x, y, &elems, &roots, &pos, &gen_of_root));
            }
        }
        faces.push(fs);
    }
    let nf = |from_y: bool, gsrc: usize, sp: &FiniteSimplicialSet| {
        let k = sp.generator_dim(gsrc);
        let i = pos[k][&(from_y, SimplexRef::generator(gsrc))];
        normal_form(k, i, x, y, &elems, &roots, &pos, &gen_of_root)
    };
    let left_images: Vec<SimplexRef> = (0..x.len()).map(|gx| nf(false, gx, x)).collect();
    let right_images: Vec<SimplexRef> = (0..y.len()).map(|gy| nf(true, gy, y)).collect();
    let basepoint = x.basepoint().map(|b| left_images[b].generator);
    let w = FiniteSimplicialSet::new(gens, faces, basepoint)?;
    let left = SimplicialMap::new(x.clone(), w.clone(), left_images)?;
    let right = SimplicialMap::new(y.clone(), w.clone(), right_images)?;
    Ok(Pushout { space: w, left, right })
}

type ProductKey = (usize, usize, Vec<usize>, Vec<usize>);

fn product_keys(x: &FiniteSimplicialSet, y: &FiniteSimplicialSet) -> Vec<ProductKey> {
    let mut keys = Vec::new();
    for k in 0..=x.max_dim() + y.max_dim() {
        let mut at_k: Vec<ProductKey> = Vec::new();
        for a in x.level(k) {
            for b in y.level(k) {
                if a.word.iter().all(|j| !b.word.contains(j)) {
                    at_k.push((a.generator, b.generator, a.word.clone(), b.word.clone()));
                }
            }
        }
        at_k.sort();
        keys.extend(at_k);
    }
    keys
}

/// Levelwise product. Generators are pairs `(X(η)x, Y(θ)y)` whose joint map
/// `(η, θ)` is injective, i.e. whose words are disjoint.
pub fn product(x: &FiniteSimplicialSet, y: &FiniteSimplicialSet) -> FiniteSimplicialSet {
    let keys = product_keys(x, y);
    let index: HashMap<ProductKey, usize> = keys.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
    let name_of = |key: &ProductKey| {
        let a = x.display(&SimplexRef { generator: key.0, word: key.2.clone() });
        let b = y.display(&SimplexRef { generator: key.1, word: key.3.clone() });
        format!("({a},{b})")
    };
    let mut gens = Vec::new();
    let mut faces = Vec::new();
    for key in &keys {
        let k = x.generator_dim(key.0) + key.2.len();
        gens.push((name_of(key), k));
        let a = SimplexRef { generator: key.0, word: key.2.clone() };
        let b = SimplexRef { generator: key.1, word: key.3.clone() };
        let mut fs = Vec::new();
        if k > 0 {
            for i in 0..=k {
                fs.push(split_common(&x.face(&a, i).unwrap(), &y.face(&b, i).unwrap(), x, y, &index));
            }
        }
        faces.push(fs);
    }
    let basepoint = match (x.basepoint(), y.basepoint()) {
        (Some(bx), Some(by)) => Some(index[&(bx, by, vec![], vec![])]),
        _ => None,
    };
    FiniteSimplicialSet::new(gens, faces, basepoint).expect("product of valid sets is valid")
}

/// The simplex `(a, b)` of `product(x, y)`, for `a`, `b` of equal dimension.
pub fn product_simplex(x: &FiniteSimplicialSet, y: &FiniteSimplicialSet, a: &SimplexRef, b: &SimplexRef) -> SimplexRef {
    assert_eq!(x.dim(a), y.dim(b), "product simplex needs equal dimensions");
    let index: HashMap<ProductKey, usize> =
        product_keys(x, y).into_iter().enumerate().map(|(i, k)| (k, i)).collect();
    split_common(a, b, x, y, &index)
}

/// Factor a pair of simplices as a common degeneracy of a non-degenerate pair.
fn split_common(
    a: &SimplexRef,
    b: &SimplexRef,
    x: &FiniteSimplicialSet,
    y: &FiniteSimplicialSet,
    index: &HashMap<ProductKey, usize>,
) -> SimplexRef {
    let k = x.dim(a);
    let common: Vec<usize> = a.word.iter().copied().filter(|j| b.word.contains(j)).collect();
    let rho = surjection(k, &common);
    let reduce = |w: &[usize], kk: usize| -> Vec<usize> {
        let eta = surjection(kk, w);
        let mut out = vec![0; k - common.len() + 1];
        for t in 0..=k {
            out[rho[t]] = eta[t];
        }
        word_of(&out)
    };
    let key = (a.generator, b.generator, reduce(&a.word, k), reduce(&b.word, y.dim(b)));
    SimplexRef { generator: index[&key], word: common }
}

#[cfg(test)]
mod tests {
    use super::super::standard_model;
    use super::*;

    #[test]
    fn product_with_point_is_isomorphic() {
        let pt = standard_model("point").unwrap();
        let s = standard_model("sphere(2)").unwrap();
        let p = product(&pt, &s);
        for k in 0..6 {
            assert_eq!(p.level_size(k), s.level_size(k));
        }
    }
}
