//! Graded-commutative DG algebras over ℚ in cohomological degrees ≤ 0.
//!
//! Three presentations share one interface:
//!
//! * **table**: a finite basis with structure constants and a differential
//!   matrix (dual numbers live here, since their degree-0 nilpotent cannot be
//!   a free generator);
//! * **free**: the free graded-commutative algebra on generators of strictly
//!   negative degree with a differential given on generators;
//! * **tensor**: `A ⊗ B` with the Koszul sign `(a⊗b)(a'⊗b') = (−1)^{|b||a'|} aa'⊗bb'`.
//!
//! Each degree is finite-dimensional, so the Hochschild builder works with a
//! truncated multiplication table ([`AlgebraTable`]) covering degrees
//! `min..=0`.
//!
//! An optional *weight* grading (word length for free algebras, declared
//! weights for tables) is preserved by product and differential; the
//! Hochschild complex splits along it.

mod free;
mod json;
mod module;
mod table;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::exactla::Rational;

pub use free::Monomial;
pub use json::{AlgebraJson, BasisJson, GeneratorJson};
pub use module::{GradedModule, ModuleJson};
pub use table::AlgebraTable;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("elements belong to different algebras ({0} and {1})")]
    Mismatch(String, String),
    #[error("positive degree {0} is not allowed")]
    PositiveDegree(i32),
    #[error("free generators must have strictly negative degree ({0} has degree {1})")]
    FreeDegree(String, i32),
    #[error("invalid structure data: {0}")]
    Invalid(String),
    #[error("axiom fails: {0}")]
    Axiom(String),
    #[error("unknown algebra {0:?}")]
    Unknown(String),
    #[error("{0}")]
    Json(String),
}

/// A basis element in the presentation of its algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisKey {
    Index(usize),
    Mono(Monomial),
    Pair(Box<BasisKey>, Box<BasisKey>),
}

pub type Combination = Vec<(BasisKey, Rational)>;

fn collect(terms: impl IntoIterator<Item = (BasisKey, Rational)>) -> Combination {
    let mut m: BTreeMap<BasisKey, Rational> = BTreeMap::new();
    for (k, c) in terms {
        *m.entry(k).or_default() += &c;
    }
    m.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct TableData {
    pub basis: Vec<(String, i32)>,
    pub weights: Vec<u32>,
    pub unit: usize,
    pub product: BTreeMap<(usize, usize), Vec<(usize, Rational)>>,
    pub differential: Vec<Vec<(usize, Rational)>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Backend {
    Table(TableData),
    Free(free::FreeData),
    Tensor(Box<GradedAlgebra>, Box<GradedAlgebra>),
}

/// A graded-commutative DGA, validated at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedAlgebra {
    name: Arc<str>,
    backend: Backend,
}

/// A homogeneous element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraElement {
    algebra: Arc<str>,
    degree: i32,
    coefficients: Combination,
}

impl AlgebraElement {
    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn coefficients(&self) -> &[(BasisKey, Rational)] {
        &self.coefficients
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn algebra_name(&self) -> &str {
        &self.algebra
    }
}

impl GradedAlgebra {
    /// A table algebra. `product` holds `(i, j, k, c)` meaning `e_i e_j ∋ c e_k`;
    /// `differential` holds `(i, j, c)` meaning `d e_i ∋ c e_j`.
    pub fn table(
        name: &str,
        basis: Vec<(String, i32)>,
        unit: usize,
        product: Vec<(usize, usize, usize, Rational)>,
        differential: Vec<(usize, usize, Rational)>,
        weights: Option<Vec<u32>>,
    ) -> Result<Self, AlgebraError> {
        let n = basis.len();
        let inv = |m: String| Err(AlgebraError::Invalid(m));
        if unit >= n || basis[unit].1 != 0 {
            return inv("unit must be a degree-0 basis element".into());
        }
        for (b, d) in &basis {
            if *d > 0 {
                return inv(format!("{b} has positive degree {d}"));
            }
        }
        let weights = weights.unwrap_or_else(|| vec![0; n]);
        if weights.len() != n {
            return inv("weight list length differs from basis".into());
        }
        let mut prod: BTreeMap<(usize, usize), Vec<(usize, Rational)>> = BTreeMap::new();
        for (i, j, k, c) in product {
            if i >= n || j >= n || k >= n {
                return inv(format!("product index out of range: ({i},{j},{k})"));
            }
            if basis[k].1 != basis[i].1 + basis[j].1 {
                return inv(format!("product {}·{} ∋ {} breaks degrees", basis[i].0, basis[j].0, basis[k].0));
            }
            if !c.is_zero() && weights[k] != weights[i] + weights[j] {
                return inv(format!("product {}·{} ∋ {} breaks weights", basis[i].0, basis[j].0, basis[k].0));
            }
            prod.entry((i, j)).or_default().push((k, c));
        }
        // The unit's products are implied; explicit entries must agree.
        for i in 0..n {
            for key in [(unit, i), (i, unit)] {
                let v = prod.entry(key).or_default();
                let v2 = crate::exactla::normalize(std::mem::take(v));
                if !v2.is_empty() && v2 != vec![(i, Rational::one())] {
                    return Err(AlgebraError::Axiom(format!("unit does not act as identity on {}", basis[i].0)));
                }
                *v = vec![(i, Rational::one())];
            }
        }
        let product: BTreeMap<_, _> = prod
            .into_iter()
            .map(|(k, v)| (k, crate::exactla::normalize(v)))
            .filter(|(_, v)| !v.is_empty())
            .collect();
        let mut diff = vec![Vec::new(); n];
        for (i, j, c) in differential {
            if i >= n || j >= n {
                return inv(format!("differential index out of range: ({i},{j})"));
            }
            if basis[j].1 != basis[i].1 + 1 {
                return inv(format!("d {} ∋ {} does not raise degree by one", basis[i].0, basis[j].0));
            }
            if !c.is_zero() && weights[j] != weights[i] {
                return inv(format!("d {} ∋ {} breaks weights", basis[i].0, basis[j].0));
            }
            diff[i].push((j, c));
        }
        let differential = diff.into_iter().map(crate::exactla::normalize).collect();
        let a = Self {
            name: name.into(),
            backend: Backend::Table(TableData { basis, weights, unit, product, differential }),
        };
        let min = a.table_min_degree();
        a.check_axioms(min)?;
        Ok(a)
    }

    /// The free graded-commutative algebra on `generators` (all of negative
    /// degree) with `d(g)` given as a combination of monomials.
    pub fn free(
        name: &str,
        generators: Vec<(String, i32)>,
        differential: Vec<Vec<(Rational, Monomial)>>,
    ) -> Result<Self, AlgebraError> {
        let data = free::FreeData::new(generators, differential)?;
        let a = Self { name: name.into(), backend: Backend::Free(data) };
        if let Backend::Free(f) = &a.backend {
            f.check_differential()?;
        }
        Ok(a)
    }

    /// `A ⊗ B`. Two free algebras merge into one free algebra on the union of
    /// generators; every other pairing keeps both factors.
    pub fn tensor(a: &GradedAlgebra, b: &GradedAlgebra) -> GradedAlgebra {
        let name = format!("{}⊗{}", a.name, b.name);
        if let (Backend::Free(fa), Backend::Free(fb)) = (&a.backend, &b.backend) {
            return Self { name: name.into(), backend: Backend::Free(fa.merge(fb)) };
        }
        Self { name: name.into(), backend: Backend::Tensor(Box::new(a.clone()), Box::new(b.clone())) }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn is_table(&self) -> bool {
        matches!(self.backend, Backend::Table(_))
    }

    fn table_min_degree(&self) -> i32 {
        match &self.backend {
            Backend::Table(t) => t.basis.iter().map(|b| b.1).min().unwrap_or(0),
            _ => 0,
        }
    }

    pub fn unit_key(&self) -> BasisKey {
        match &self.backend {
            Backend::Table(t) => BasisKey::Index(t.unit),
            Backend::Free(f) => BasisKey::Mono(f.unit()),
            Backend::Tensor(a, b) => BasisKey::Pair(Box::new(a.unit_key()), Box::new(b.unit_key())),
        }
    }

    pub fn key_degree(&self, k: &BasisKey) -> i32 {
        match (&self.backend, k) {
            (Backend::Table(t), BasisKey::Index(i)) => t.basis[*i].1,
            (Backend::Free(f), BasisKey::Mono(m)) => f.degree(m),
            (Backend::Tensor(a, b), BasisKey::Pair(x, y)) => a.key_degree(x) + b.key_degree(y),
            _ => panic!("basis key does not belong to {}", self.name),
        }
    }

    pub fn key_weight(&self, k: &BasisKey) -> u32 {
        match (&self.backend, k) {
            (Backend::Table(t), BasisKey::Index(i)) => t.weights[*i],
            (Backend::Free(f), BasisKey::Mono(m)) => f.weight(m),
            (Backend::Tensor(a, b), BasisKey::Pair(x, y)) => a.key_weight(x) + b.key_weight(y),
            _ => panic!("basis key does not belong to {}", self.name),
        }
    }

    pub fn key_name(&self, k: &BasisKey) -> String {
        match (&self.backend, k) {
            (Backend::Table(t), BasisKey::Index(i)) => t.basis[*i].0.clone(),
            (Backend::Free(f), BasisKey::Mono(m)) => f.name(m),
            (Backend::Tensor(a, b), BasisKey::Pair(x, y)) => format!("{}⊗{}", a.key_name(x), b.key_name(y)),
            _ => panic!("basis key does not belong to {}", self.name),
        }
    }

    /// Basis of the degree-`d` piece in canonical order.
    pub fn basis_of_degree(&self, d: i32) -> Vec<BasisKey> {
        if d > 0 {
            return Vec::new();
        }
        match &self.backend {
            Backend::Table(t) => {
                (0..t.basis.len()).filter(|&i| t.basis[i].1 == d).map(BasisKey::Index).collect()
            }
            Backend::Free(f) => f.monomials_of_degree(d).into_iter().map(BasisKey::Mono).collect(),
            Backend::Tensor(a, b) => {
                let mut out = Vec::new();
                for da in (d..=0).rev() {
                    let bs = b.basis_of_degree(d - da);
                    for x in a.basis_of_degree(da) {
                        for y in &bs {
                            out.push(BasisKey::Pair(Box::new(x.clone()), Box::new(y.clone())));
                        }
                    }
                }
                out
            }
        }
    }

    pub fn dims(&self, min_degree: i32) -> Vec<usize> {
        (min_degree..=0).rev().map(|d| self.basis_of_degree(d).len()).collect()
    }

    pub(crate) fn mul_keys(&self, x: &BasisKey, y: &BasisKey) -> Combination {
        match (&self.backend, x, y) {
            (Backend::Table(t), BasisKey::Index(i), BasisKey::Index(j)) => t
                .product
                .get(&(*i, *j))
                .map(|v| v.iter().map(|(k, c)| (BasisKey::Index(*k), c.clone())).collect())
                .unwrap_or_default(),
            (Backend::Free(f), BasisKey::Mono(a), BasisKey::Mono(b)) => match f.mul(a, b) {
                Some((s, m)) => vec![(BasisKey::Mono(m), Rational::sign(s as i64))],
                None => Vec::new(),
            },
            (Backend::Tensor(a, b), BasisKey::Pair(x1, y1), BasisKey::Pair(x2, y2)) => {
                let sign = Rational::sign((b.key_degree(y1) * a.key_degree(x2)) as i64);
                let mut out = Vec::new();
                for (p, c) in a.mul_keys(x1, x2) {
                    for (q, e) in b.mul_keys(y1, y2) {
                        out.push((BasisKey::Pair(Box::new(p.clone()), Box::new(q)), &(&c * &e) * &sign));
                    }
                }
                out
            }
            _ => panic!("basis key does not belong to {}", self.name),
        }
    }

    pub(crate) fn diff_key(&self, x: &BasisKey) -> Combination {
        match (&self.backend, x) {
            (Backend::Table(t), BasisKey::Index(i)) => {
                t.differential[*i].iter().map(|(j, c)| (BasisKey::Index(*j), c.clone())).collect()
            }
            (Backend::Free(f), BasisKey::Mono(m)) => {
                f.diff(m).into_iter().map(|(c, m)| (BasisKey::Mono(m), c)).collect()
            }
            (Backend::Tensor(a, b), BasisKey::Pair(x, y)) => {
                let mut out = Vec::new();
                for (p, c) in a.diff_key(x) {
                    out.push((BasisKey::Pair(Box::new(p), y.clone()), c));
                }
                let s = Rational::sign(a.key_degree(x) as i64);
                for (q, c) in b.diff_key(y) {
                    out.push((BasisKey::Pair(x.clone(), Box::new(q)), &c * &s));
                }
                out
            }
            _ => panic!("basis key does not belong to {}", self.name),
        }
    }

    pub fn element(&self, degree: i32, terms: Vec<(BasisKey, Rational)>) -> Result<AlgebraElement, AlgebraError> {
        if degree > 0 {
            return Err(AlgebraError::PositiveDegree(degree));
        }
        for (k, _) in &terms {
            if self.key_degree(k) != degree {
                return Err(AlgebraError::Invalid(format!("{} is not of degree {degree}", self.key_name(k))));
            }
        }
        Ok(AlgebraElement { algebra: self.name.clone(), degree, coefficients: collect(terms) })
    }

    /// The basis element with the given display name.
    pub fn basis_element(&self, name: &str, min_degree: i32) -> Option<AlgebraElement> {
        for d in (min_degree..=0).rev() {
            for k in self.basis_of_degree(d) {
                if self.key_name(&k) == name {
                    return Some(AlgebraElement {
                        algebra: self.name.clone(),
                        degree: d,
                        coefficients: vec![(k, Rational::one())],
                    });
                }
            }
        }
        None
    }

    pub fn one(&self) -> AlgebraElement {
        AlgebraElement { algebra: self.name.clone(), degree: 0, coefficients: vec![(self.unit_key(), Rational::one())] }
    }

    fn check_same(&self, a: &AlgebraElement) -> Result<(), AlgebraError> {
        if a.algebra != self.name {
            return Err(AlgebraError::Mismatch(self.name.to_string(), a.algebra.to_string()));
        }
        Ok(())
    }

    pub fn multiply(&self, a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        self.check_same(a)?;
        self.check_same(b)?;
        let mut terms = Vec::new();
        for (x, c) in &a.coefficients {
            for (y, e) in &b.coefficients {
                for (z, f) in self.mul_keys(x, y) {
                    terms.push((z, &(c * e) * &f));
                }
            }
        }
        Ok(AlgebraElement { algebra: self.name.clone(), degree: a.degree + b.degree, coefficients: collect(terms) })
    }

    pub fn differential(&self, a: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        self.check_same(a)?;
        let mut terms = Vec::new();
        for (x, c) in &a.coefficients {
            for (z, f) in self.diff_key(x) {
                terms.push((z, c * &f));
            }
        }
        Ok(AlgebraElement { algebra: self.name.clone(), degree: a.degree + 1, coefficients: collect(terms) })
    }

    /// Exhaustively check the CDGA axioms on all basis elements of degree ≥ `min_degree`.
    pub fn check_axioms(&self, min_degree: i32) -> Result<(), AlgebraError> {
        AlgebraTable::new(self, min_degree).check_axioms()
    }

    /// Whether product and differential preserve the weight grading.
    pub fn has_weights(&self) -> bool {
        match &self.backend {
            Backend::Table(t) => t.weights.iter().any(|&w| w > 0),
            Backend::Free(f) => f.weighted(),
            Backend::Tensor(a, b) => a.has_weights() || b.has_weights(),
        }
    }

    pub fn rename(&self, name: &str) -> Self {
        Self { name: name.into(), backend: self.backend.clone() }
    }
}

impl fmt::Display for GradedAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)
    }
}

/// `ℚ[ε]/(ε²)` with `ε` in degree 0 and weight 1.
pub fn dual_numbers() -> GradedAlgebra {
    GradedAlgebra::table(
        "dual_numbers",
        vec![("1".into(), 0), ("ε".into(), 0)],
        0,
        vec![],
        vec![],
        Some(vec![0, 1]),
    )
    .expect("dual numbers are a valid table")
}

/// `Λ(x)` on one generator of odd negative degree.
pub fn exterior(degree: i32) -> GradedAlgebra {
    assert!(degree < 0 && degree % 2 != 0, "exterior generator needs odd negative degree");
    GradedAlgebra::free(&format!("exterior({degree})"), vec![("x".into(), degree)], vec![vec![]]).unwrap()
}

/// `ℚ[y]` on one generator of even negative degree.
pub fn polynomial(degree: i32) -> GradedAlgebra {
    assert!(degree < 0 && degree % 2 == 0, "polynomial generator needs even negative degree");
    GradedAlgebra::free(&format!("poly({degree})"), vec![("y".into(), degree)], vec![vec![]]).unwrap()
}

/// `Λ(x₋₁) ⊗ ℚ[y₋₂]` with `dy = x`; quasi-isomorphic to ℚ.
pub fn koszul() -> GradedAlgebra {
    GradedAlgebra::free(
        "koszul",
        vec![("x".into(), -1), ("y".into(), -2)],
        vec![vec![], vec![(Rational::one(), Monomial(vec![1, 0]))]],
    )
    .unwrap()
}

/// The ground field as a table algebra.
pub fn ground_field() -> GradedAlgebra {
    GradedAlgebra::table("Q", vec![("1".into(), 0)], 0, vec![], vec![], None).unwrap()
}

/// Resolve a builtin algebra name: `dual_numbers`, `exterior1`,
/// `exterior(d)`, `poly(d)`, `koszul`, `Q`. The parameter of `exterior` and
/// `poly` is the generator degree, read as negative whatever its sign.
pub fn builtin(name: &str) -> Result<GradedAlgebra, AlgebraError> {
    let name = name.trim();
    let param = |prefix: &str| -> Option<i32> {
        let inner = name.strip_prefix(prefix)?.strip_prefix('(')?.strip_suffix(')')?;
        inner.trim().parse::<i32>().ok().map(|d| -d.abs())
    };
    let unknown = || AlgebraError::Unknown(name.to_string());
    if let Some(d) = param("exterior") {
        if d == 0 || d % 2 == 0 {
            return Err(unknown());
        }
        return Ok(exterior(d).rename(name));
    }
    if let Some(d) = param("poly") {
        if d == 0 || d % 2 != 0 {
            return Err(unknown());
        }
        return Ok(polynomial(d).rename(name));
    }
    match name {
        "dual_numbers" => Ok(dual_numbers()),
        "exterior1" => Ok(exterior(-1).rename("exterior1")),
        "koszul" => Ok(koszul()),
        "Q" | "ground_field" => Ok(ground_field()),
        _ => Err(unknown()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(a: &GradedAlgebra, name: &str) -> AlgebraElement {
        a.basis_element(name, -8).unwrap()
    }

    #[test]
    fn defining_relations() {
        let d = dual_numbers();
        let e = el(&d, "ε");
        assert!(d.multiply(&e, &e).unwrap().is_zero());
        assert_eq!(d.multiply(&d.one(), &e).unwrap(), e);
        let x = exterior(-1);
        let xe = el(&x, "x");
        assert!(x.multiply(&xe, &xe).unwrap().is_zero());
        assert!(d.multiply(&e, &xe).is_err());
    }

    #[test]
    fn koszul_differential() {
        let k = koszul();
        let y = el(&k, "y");
        let y2 = k.multiply(&y, &y).unwrap();
        let dy2 = k.differential(&y2).unwrap();
        let xy = el(&k, "x·y");
        assert_eq!(dy2.coefficients(), &[(xy.coefficients()[0].0.clone(), Rational::from_int(2))]);
        let dxy = k.differential(&xy).unwrap();
        assert!(dxy.is_zero());
    }

    #[test]
    fn bases_by_degree() {
        assert_eq!(exterior(-1).basis_of_degree(0).len(), 1);
        let p = polynomial(-2);
        let b = p.basis_of_degree(-6);
        assert_eq!(b.len(), 1);
        assert_eq!(p.key_name(&b[0]), "y^3");
        let k = koszul();
        assert_eq!(k.basis_of_degree(-2).iter().map(|b| k.key_name(b)).collect::<Vec<_>>(), vec!["y"]);
        assert_eq!(k.basis_of_degree(-3).iter().map(|b| k.key_name(b)).collect::<Vec<_>>(), vec!["x·y"]);
    }

    #[test]
    fn tensor_dims() {
        let dd = GradedAlgebra::tensor(&dual_numbers(), &dual_numbers());
        assert_eq!(dd.dims(0), vec![4]);
        let xx = GradedAlgebra::tensor(&exterior(-1), &exterior(-1));
        assert_eq!(xx.dims(-2), vec![1, 2, 1]);
        let aq = GradedAlgebra::tensor(&koszul(), &ground_field());
        assert_eq!(aq.dims(-6), koszul().dims(-6));
        for a in [dd, xx, aq, GradedAlgebra::tensor(&dual_numbers(), &exterior(-1))] {
            a.check_axioms(-5).unwrap();
        }
    }

    #[test]
    fn rejects_bad_tables() {
        // ε·ε = 1 is commutative and associative, but breaks the declared weights.
        let bad = GradedAlgebra::table(
            "bad",
            vec![("1".into(), 0), ("e".into(), 0)],
            0,
            vec![(1, 1, 0, Rational::one())],
            vec![],
            Some(vec![0, 1]),
        );
        assert!(bad.is_err());
        // Odd element with nonzero square violates graded commutativity.
        let bad = GradedAlgebra::table(
            "bad",
            vec![("1".into(), 0), ("x".into(), -1), ("z".into(), -2)],
            0,
            vec![(1, 1, 2, Rational::one())],
            vec![],
            None,
        );
        assert!(matches!(bad, Err(AlgebraError::Axiom(_))));
    }

    #[test]
    fn builtin_names() {
        assert_eq!(builtin("exterior(1)").unwrap().dims(-2), vec![1, 1, 0]);
        assert_eq!(builtin("poly(-2)").unwrap().dims(-4), vec![1, 0, 1, 0, 1]);
        assert!(builtin("poly(3)").is_err());
        assert!(builtin("nope").is_err());
    }
}
