use std::collections::BTreeMap;

use super::AlgebraError;
use crate::exactla::Rational;

/// Exponent vector over the generators of a free algebra. Odd generators
/// have exponent at most 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct FreeData {
    gens: Vec<(String, i32)>,
    d: Vec<Vec<(Rational, Monomial)>>,
    weighted: bool,
}

impl FreeData {
    pub fn new(gens: Vec<(String, i32)>, d: Vec<Vec<(Rational, Monomial)>>) -> Result<Self, AlgebraError> {
        if d.len() != gens.len() {
            return Err(AlgebraError::Invalid("one differential entry per generator required".into()));
        }
        for (n, deg) in &gens {
            if *deg >= 0 {
                return Err(AlgebraError::FreeDegree(n.clone(), *deg));
            }
        }
        for terms in &d {
            for (_, m) in terms {
                if m.0.len() != gens.len() {
                    return Err(AlgebraError::Invalid("monomial length differs from generator count".into()));
                }
                if m.0.iter().zip(&gens).any(|(&e, g)| g.1 % 2 != 0 && e > 1) {
                    return Err(AlgebraError::Invalid("odd generator squared in a differential".into()));
                }
            }
        }
        let weighted = d.iter().all(|t| t.iter().all(|(_, m)| m.0.iter().sum::<u32>() == 1));
        Ok(Self { gens, d, weighted })
    }

    pub fn weighted(&self) -> bool {
        self.weighted
    }

    pub fn unit(&self) -> Monomial {
        Monomial(vec![0; self.gens.len()])
    }

    pub fn degree(&self, m: &Monomial) -> i32 {
        m.0.iter().zip(&self.gens).map(|(&e, g)| e as i32 * g.1).sum()
    }

    pub fn weight(&self, m: &Monomial) -> u32 {
        if self.weighted {
            m.0.iter().sum()
        } else {
            0
        }
    }

    pub fn name(&self, m: &Monomial) -> String {
        let parts: Vec<String> = m
            .0
            .iter()
            .zip(&self.gens)
            .filter(|(&e, _)| e > 0)
            .map(|(&e, g)| if e == 1 { g.0.clone() } else { format!("{}^{e}", g.0) })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("·")
        }
    }

    fn odd(&self, i: usize) -> bool {
        self.gens[i].1 % 2 != 0
    }

    /// Monomials of degree `d`, in decreasing lexicographic order of exponents.
    pub fn monomials_of_degree(&self, d: i32) -> Vec<Monomial> {
        fn go(f: &FreeData, i: usize, rest: i32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if i == f.gens.len() {
                if rest == 0 {
                    out.push(Monomial(cur.clone()));
                }
                return;
            }
            let g = f.gens[i].1;
            let max = if f.odd(i) { 1 } else { (rest / g) as u32 };
            for e in (0..=max).rev() {
                let r = rest - e as i32 * g;
                if r > 0 {
                    continue;
                }
                cur.push(e);
                go(f, i + 1, r, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if d <= 0 {
            go(self, 0, d, &mut Vec::new(), &mut out);
        }
        out
    }

    /// `a · b = (−1)^s m`, or `None` when an odd generator repeats.
    pub fn mul(&self, a: &Monomial, b: &Monomial) -> Option<(u32, Monomial)> {
        let mut s = 0u32;
        let mut later_odd_in_a = 0u32;
        // Walk from the last generator down so each odd factor of b knows how
        // many odd factors of a it must pass.
        for i in (0..self.gens.len()).rev() {
            if self.odd(i) {
                if a.0[i] + b.0[i] > 1 {
                    return None;
                }
                s += b.0[i] * later_odd_in_a;
                later_odd_in_a += a.0[i];
            }
        }
        Some((s % 2, Monomial(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect())))
    }

    fn mul_terms(&self, a: &[(Rational, Monomial)], b: &[(Rational, Monomial)]) -> Vec<(Rational, Monomial)> {
        let mut out = Vec::new();
        for (c, x) in a {
            for (e, y) in b {
                if let Some((s, m)) = self.mul(x, y) {
                    out.push((&(c * e) * &Rational::sign(s as i64), m));
                }
            }
        }
        out
    }

    pub fn diff(&self, m: &Monomial) -> Vec<(Rational, Monomial)> {
        let n = self.gens.len();
        let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for i in 0..n {
            let e = m.0[i];
            if e == 0 || self.d[i].is_empty() {
                continue;
            }
            let mut prefix = vec![0; n];
            prefix[..i].copy_from_slice(&m.0[..i]);
            let mut suffix = vec![0; n];
            suffix[i + 1..].copy_from_slice(&m.0[i + 1..]);
            let mut power = vec![0; n];
            power[i] = e - 1;
            let prefix = Monomial(prefix);
            let sign = Rational::sign(self.degree(&prefix) as i64);
            let mut terms = vec![(&sign * &Rational::from_int(e as i64), prefix)];
            terms = self.mul_terms(&terms, &[(Rational::one(), Monomial(power))]);
            terms = self.mul_terms(&terms, &self.d[i]);
            terms = self.mul_terms(&terms, &[(Rational::one(), Monomial(suffix))]);
            for (c, mm) in terms {
                *acc.entry(mm).or_default() += &c;
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|(m, c)| (c, m)).collect()
    }

    pub fn check_differential(&self) -> Result<(), AlgebraError> {
        for (i, terms) in self.d.iter().enumerate() {
            for (_, m) in terms {
                if self.degree(m) != self.gens[i].1 + 1 {
                    return Err(AlgebraError::Invalid(format!("d {} has the wrong degree", self.gens[i].0)));
                }
            }
            let mut dd: BTreeMap<Monomial, Rational> = BTreeMap::new();
            for (c, m) in terms {
                for (e, mm) in self.diff(m) {
                    *dd.entry(mm).or_default() += &(c * &e);
                }
            }
            if dd.values().any(|c| !c.is_zero()) {
                return Err(AlgebraError::Axiom(format!("d² {} ≠ 0", self.gens[i].0)));
            }
        }
        Ok(())
    }

    pub fn merge(&self, other: &FreeData) -> FreeData {
        let n = self.gens.len();
        let m = other.gens.len();
        let mut gens = self.gens.clone();
        for (name, deg) in &other.gens {
            let mut name = name.clone();
            while gens.iter().any(|g| g.0 == name) {
                name.push('\'');
            }
            gens.push((name, *deg));
        }
        let pad_right = |t: &Vec<(Rational, Monomial)>| {
            t.iter().map(|(c, mm)| (c.clone(), Monomial(mm.0.iter().copied().chain(std::iter::repeat(0).take(m)).collect()))).collect()
        };
        let pad_left = |t: &Vec<(Rational, Monomial)>| {
            t.iter().map(|(c, mm)| (c.clone(), Monomial(std::iter::repeat(0).take(n).chain(mm.0.iter().copied()).collect()))).collect()
        };
        let d: Vec<Vec<(Rational, Monomial)>> = self.d.iter().map(pad_right).chain(other.d.iter().map(pad_left)).collect();
        FreeData::new(gens, d).expect("merge of valid free algebras")
    }
}
