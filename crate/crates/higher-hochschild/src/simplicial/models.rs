use super::{
    disjoint_union, product, product_simplex, pushout, FiniteSimplicialSet, SimplexRef, SimplicialError,
    SimplicialMap,
};

pub const STANDARD_MODEL_NAMES: &[&str] = &[
    "point",
    "delta(n)",
    "boundary_delta(n)",
    "sphere(n)",
    "interval",
    "square",
    "circle_minimal",
    "circle_two_cell",
    "cylinder",
    "torus_glued",
];

fn parse_param(name: &str, prefix: &str) -> Option<usize> {
    name.strip_prefix(prefix)?.strip_prefix('(')?.strip_suffix(')')?.trim().parse().ok()
}

/// Look up a built-in model by name, e.g. `"sphere(2)"` or `"cylinder"`.
pub fn standard_model(name: &str) -> Result<FiniteSimplicialSet, SimplicialError> {
    let name = name.trim();
    if let Some(n) = parse_param(name, "delta") {
        return Ok(delta(n, false));
    }
    if let Some(n) = parse_param(name, "boundary_delta") {
        if n == 0 {
            return Err(SimplicialError::UnknownModel(name.into()));
        }
        return Ok(delta(n, true));
    }
    if let Some(n) = parse_param(name, "sphere") {
        return Ok(sphere(n));
    }
    match name {
        "point" => Ok(point()),
        "interval" => Ok(delta(1, false)),
        "square" => Ok(square()),
        "circle_minimal" => Ok(sphere(1)),
        "circle_two_cell" => Ok(circle_two_cell()),
        "cylinder" => Ok(cylinder().0),
        "torus_glued" => Ok(torus_glued()),
        _ => Err(SimplicialError::UnknownModel(name.into())),
    }
}

fn point() -> FiniteSimplicialSet {
    FiniteSimplicialSet::new(vec![("*".into(), 0)], vec![vec![]], Some(0)).unwrap()
}

/// `Δⁿ` (or its boundary): generators are the non-empty vertex subsets.
fn delta(n: usize, boundary: bool) -> FiniteSimplicialSet {
    let mut subsets: Vec<Vec<usize>> = (1u32..(1 << (n + 1)))
        .map(|m| (0..=n).filter(|&i| m & (1 << i) != 0).collect())
        .filter(|s: &Vec<usize>| !(boundary && s.len() == n + 1))
        .collect();
    subsets.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    let index = |s: &[usize]| subsets.iter().position(|t| t == s).unwrap();
    let gens = subsets
        .iter()
        .map(|s| {
            let v: Vec<String> = s.iter().map(|i| i.to_string()).collect();
            (format!("[{}]", v.join(",")), s.len() - 1)
        })
        .collect();
    let faces = subsets
        .iter()
        .map(|s| {
            if s.len() == 1 {
                return vec![];
            }
            (0..s.len())
                .map(|i| {
                    let mut t = s.clone();
                    t.remove(i);
                    SimplexRef::generator(index(&t))
                })
                .collect()
        })
        .collect();
    FiniteSimplicialSet::new(gens, faces, Some(0)).unwrap()
}

/// `Δⁿ/∂Δⁿ`; `sphere(0)` is two points.
fn sphere(n: usize) -> FiniteSimplicialSet {
    if n == 0 {
        return FiniteSimplicialSet::new(vec![("v".into(), 0), ("w".into(), 0)], vec![vec![], vec![]], Some(0))
            .unwrap();
    }
    let collapsed = SimplexRef { generator: 0, word: (0..n - 1).collect() };
    let cell = if n == 1 { "e" } else { "c" };
    FiniteSimplicialSet::new(vec![("v".into(), 0), (cell.into(), n)], vec![vec![], vec![collapsed; n + 1]], Some(0))
        .unwrap()
}

fn square() -> FiniteSimplicialSet {
    let i = delta(1, false);
    product(&i, &i)
}

/// The endpoint inclusion `S⁰ → I`, twice: its pushout is the two-cell circle.
pub fn circle_gluing() -> (SimplicialMap, SimplicialMap) {
    let i = delta(1, false);
    let s0 = sphere(0);
    let ends = SimplicialMap::new(s0, i, vec![SimplexRef::generator(0), SimplexRef::generator(1)]).unwrap();
    (ends.clone(), ends)
}

/// Two copies of Δ¹ glued along both endpoint pairs.
fn circle_two_cell() -> FiniteSimplicialSet {
    let (f, g) = circle_gluing();
    pushout(&f, &g).unwrap().space
}

/// `I ⊔ I → I²` onto the sides `{0}×I` and `{1}×I`, and the fold `I ⊔ I → I`.
pub fn cylinder_gluing() -> (SimplicialMap, SimplicialMap) {
    let i = delta(1, false);
    let sq = square();
    let two = disjoint_union(&i, &i);
    let vert = |v: usize| SimplexRef { generator: v, word: vec![0] };
    let edge = SimplexRef::generator(2);
    let side = |v: usize| {
        [
            product_simplex(&i, &i, &SimplexRef::generator(v), &SimplexRef::generator(0)),
            product_simplex(&i, &i, &SimplexRef::generator(v), &SimplexRef::generator(1)),
            product_simplex(&i, &i, &vert(v), &edge),
        ]
    };
    let images: Vec<SimplexRef> = side(0).into_iter().chain(side(1)).collect();
    let f = SimplicialMap::new(two.clone(), sq, images).unwrap();
    let fold = (0..6).map(|g| SimplexRef::generator(g % 3)).collect();
    let g = SimplicialMap::new(two, i, fold).unwrap();
    (f, g)
}

/// `I² ∪_{I⊔I} I` along opposite sides, plus the quotient map from the square.
pub fn cylinder() -> (FiniteSimplicialSet, SimplicialMap) {
    let (f, g) = cylinder_gluing();
    let p = pushout(&f, &g).unwrap();
    (p.space, p.left)
}

/// `I ⊔ I → C` onto the images of the remaining sides `I×{0}`, `I×{1}`, and the fold.
pub fn torus_gluing() -> (SimplicialMap, SimplicialMap) {
    let i = delta(1, false);
    let (c, q) = cylinder();
    let two = disjoint_union(&i, &i);
    let vert = |v: usize| SimplexRef { generator: v, word: vec![0] };
    let edge = SimplexRef::generator(2);
    let side = |v: usize| {
        [
            q.apply(&product_simplex(&i, &i, &SimplexRef::generator(0), &SimplexRef::generator(v))),
            q.apply(&product_simplex(&i, &i, &SimplexRef::generator(1), &SimplexRef::generator(v))),
            q.apply(&product_simplex(&i, &i, &edge, &vert(v))),
        ]
    };
    let images: Vec<SimplexRef> = side(0).into_iter().chain(side(1)).collect();
    let f = SimplicialMap::new(two.clone(), c, images).unwrap();
    let fold = (0..6).map(|g| SimplexRef::generator(g % 3)).collect();
    let g = SimplicialMap::new(two, i, fold).unwrap();
    (f, g)
}

fn torus_glued() -> FiniteSimplicialSet {
    let (f, g) = torus_gluing();
    pushout(&f, &g).unwrap().space
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counts(name: &str, upto: usize) -> Vec<usize> {
        let x = standard_model(name).unwrap();
        (0..=upto).map(|k| x.level(k).len()).collect()
    }

    #[test]
    fn closed_form_level_counts() {
        for k in 0..6 {
            assert_eq!(counts("point", 5)[k], 1);
            assert_eq!(counts("interval", 5)[k], k + 2);
            assert_eq!(counts("square", 5)[k], (k + 2) * (k + 2));
            assert_eq!(counts("circle_minimal", 5)[k], k + 1);
            assert_eq!(counts("circle_two_cell", 5)[k], 2 * (k + 1));
            assert_eq!(counts("cylinder", 5)[k], (k + 2) * (k + 1));
            assert_eq!(counts("torus_glued", 5)[k], (k + 1) * (k + 1));
            assert_eq!(counts("sphere(2)", 5)[k], 1 + crate::simplicial::binomial(k, 2));
        }
    }

    #[test]
    fn unknown_name() {
        assert!(standard_model("klein_bottle").is_err());
        assert!(standard_model("boundary_delta(0)").is_err());
    }
}
