//! Two-sided bar complexes `B(P, R, Q)` and two independent oracles for the
//! circle: the textbook Hochschild complex and the periodic Tor computation
//! for the dual numbers.
//!
//! Layer `l` of the bar complex is `P ⊗ R^{⊗l} ⊗ Q` with faces
//! `d_0 = p·r_1`, `d_i = r_i r_{i+1}`, `d_l = r_l·q` and
//! `D = (−1)^l δ + Σ (−1)^i d_i`, the same shape as the Hochschild
//! differential. Layers above the cap are dropped, which leaves homology
//! exact in degrees `≥ 1 − cap`.

mod classical;
mod layers;
mod tor;

use crate::cdga::{AlgebraError, AlgebraTable, BasisKey, GradedAlgebra, GradedModule, Monomial};
use crate::exactla::{Rational, SparseVec};
use crate::homology::MaterializedComplex;

use layers::{action_table, Factor, Layered, Terms};

pub use classical::{classical_hochschild_oracle, ClassicalComplex};
pub use tor::{periodic_resolution_is_exact, periodic_tor_oracle};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BarError {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A truncated two-sided bar complex.
#[derive(Clone, Debug)]
pub struct BarComplex {
    pub cap: usize,
    pub complex: MaterializedComplex,
}

struct Bar {
    max_level: usize,
    table: AlgebraTable,
    ring: Factor,
    left: Factor,
    right: Factor,
    left_act: Vec<Vec<SparseVec>>,
    right_act: Vec<Vec<SparseVec>>,
}

impl Layered for Bar {
    fn max_level(&self) -> usize {
        self.max_level
    }

    fn factors(&self, l: usize) -> Vec<&Factor> {
        let mut f = vec![&self.left];
        f.extend(std::iter::repeat(&self.ring).take(l));
        f.push(&self.right);
        f
    }

    fn face(&self, l: usize, i: usize, t: &[u16]) -> Terms {
        let mut out = Vec::new();
        if i == 0 {
            // p·r = (−1)^{|p||r|} r·p
            let sign = Rational::sign(self.left.degrees[t[0] as usize] as i64 * self.table.degrees[t[1] as usize] as i64);
            for (p, c) in &self.left_act[t[1] as usize][t[0] as usize] {
                let mut r = vec![*p as u16];
                r.extend_from_slice(&t[2..]);
                out.push((r, &sign * c));
            }
        } else if i < l {
            for (v, c) in self.table.mul(t[i] as usize, t[i + 1] as usize) {
                let mut r = t[..i].to_vec();
                r.push(*v as u16);
                r.extend_from_slice(&t[i + 2..]);
                out.push((r, c.clone()));
            }
        } else {
            for (q, c) in &self.right_act[t[l] as usize][t[l + 1] as usize] {
                let mut r = t[..l].to_vec();
                r.push(*q as u16);
                out.push((r, c.clone()));
            }
        }
        out
    }
}

/// `B(P, R, Q)` in degrees `n_min..=0`, layers `0..=cap`. Both modules are
/// over the graded-commutative `R`, so `P` is a right module through the
/// sign rule. Degrees below `1 − cap` are reported as untrusted.
pub fn two_sided_bar(
    left: &GradedModule,
    ring: &GradedAlgebra,
    right: &GradedModule,
    n_min: i32,
    cap: usize,
) -> Result<BarComplex, BarError> {
    if n_min > 0 {
        return Err(BarError::Invalid(format!("window lower bound {n_min} is positive")));
    }
    for m in [left, right] {
        if m.algebra().name() != ring.name() {
            return Err(BarError::Invalid(format!("module over {} used with ring {}", m.algebra().name(), ring.name())));
        }
    }
    let table = AlgebraTable::new(ring, n_min - 1);
    let bar = Bar {
        max_level: cap.min((1 - n_min) as usize),
        ring: Factor::of_table(&table),
        left: Factor::of_module(left),
        right: Factor::of_module(right),
        left_act: action_table(&table, left),
        right_act: action_table(&table, right),
        table,
    };
    let trusted_min = n_min.max(1 - cap as i32);
    Ok(BarComplex { cap, complex: bar.materialize(n_min, trusted_min) })
}

/// `A ⊗ A` and `A` as a module over it through multiplication, truncated to
/// degrees `≥ min_degree`.
pub fn multiplication_module(algebra: &GradedAlgebra, min_degree: i32) -> Result<(GradedAlgebra, GradedModule), BarError> {
    let env = GradedAlgebra::tensor(algebra, algebra);
    let t = AlgebraTable::new(algebra, min_degree);
    let rt = AlgebraTable::new(&env, min_degree);
    let index = |k: &BasisKey| t.keys.iter().position(|x| x == k);
    let basis = t.names.iter().cloned().zip(t.degrees.iter().copied()).collect();
    let mut action = Vec::new();
    for key in &rt.keys {
        // free algebras merge their generators, other tensors keep pairs
        let (x, y) = match key {
            BasisKey::Pair(x, y) => ((**x).clone(), (**y).clone()),
            BasisKey::Mono(m) => {
                let (a, b) = m.0.split_at(m.0.len() / 2);
                (BasisKey::Mono(Monomial(a.to_vec())), BasisKey::Mono(Monomial(b.to_vec())))
            }
            BasisKey::Index(_) => return Err(BarError::Invalid("unexpected key in A ⊗ A".into())),
        };
        let (Some(x), Some(y)) = (index(&x), index(&y)) else { continue };
        for m in 0..t.len() {
            if t.degrees[x] + t.degrees[y] + t.degrees[m] < min_degree {
                continue;
            }
            // (x⊗y)·m = (xy)m
            for (xy, c) in t.mul(x, y) {
                for (v, e) in t.mul(*xy, m) {
                    action.push((key.clone(), m, *v, c * e));
                }
            }
        }
    }
    let differential = (0..t.len()).flat_map(|i| t.diff(i).iter().map(move |(j, c)| (i, *j, c.clone()))).collect();
    let module = GradedModule::new(&env, basis, Some(t.weights.clone()), action, differential)?;
    Ok((env, module))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cdga::{dual_numbers, exterior, ground_field, koszul};
    use crate::homology::homology;

    #[test]
    fn tor_oracle() {
        assert!(periodic_resolution_is_exact(8));
        assert_eq!(periodic_tor_oracle(-5), vec![2, 1, 1, 1, 1, 1]);
    }

    #[test]
    fn classical_values() {
        let q = classical_hochschild_oracle(&ground_field(), None, -3).unwrap();
        assert_eq!(homology(q.complex(), false).dims(), vec![1, 0, 0, 0]);
        let c = classical_hochschild_oracle(&dual_numbers(), None, -5).unwrap();
        c.complex().check_d_squared().unwrap();
        assert_eq!(homology(c.complex(), false).dims(), vec![2, 1, 1, 1, 1, 1]);
        for a in [exterior(-1), koszul()] {
            let c = classical_hochschild_oracle(&a, None, -4).unwrap();
            c.complex().check_d_squared().unwrap();
            let m = GradedModule::augmentation(&a).unwrap();
            let c = classical_hochschild_oracle(&a, Some(&m), -4).unwrap();
            c.complex().check_d_squared().unwrap();
        }
    }

    #[test]
    fn bar_over_the_ground_field_is_kunneth() {
        let q = ground_field();
        let a = GradedModule::regular(&exterior(-1), -4);
        // ℚ-modules with the same bases
        let as_q = |m: &GradedModule| {
            let basis = (0..m.len()).map(|i| (m.name(i).to_string(), m.degree(i))).collect();
            GradedModule::new(&q, basis, None, vec![], vec![]).unwrap()
        };
        let (p, r) = (as_q(&a), as_q(&a));
        let b = two_sided_bar(&p, &q, &r, -3, 5).unwrap();
        b.complex.check_d_squared().unwrap();
        // Λ(x) ⊗ Λ(x) in degrees 0, −1, −2
        assert_eq!(homology(&b.complex, false).trusted_dims(), vec![1, 2, 1, 0]);
    }

    #[test]
    fn bar_of_regular_modules_is_the_ring() {
        for a in [exterior(-1), koszul(), dual_numbers()] {
            let m = GradedModule::regular(&a, -5);
            let b = two_sided_bar(&m, &a, &m, -3, 5).unwrap();
            b.complex.check_d_squared().unwrap();
            let h = homology(&b.complex, false).trusted_dims();
            let expected: Vec<usize> = match a.name() {
                "dual_numbers" => vec![2, 0, 0, 0],
                "koszul" => vec![1, 0, 0, 0],
                _ => vec![1, 1, 0, 0],
            };
            assert_eq!(h, expected, "{}", a.name());
        }
    }

    #[test]
    fn bar_computes_hochschild_of_dual_numbers() {
        let a = dual_numbers();
        let (env, m) = multiplication_module(&a, -5).unwrap();
        let b = two_sided_bar(&m, &env, &m, -4, 8).unwrap();
        b.complex.check_d_squared().unwrap();
        assert_eq!(homology(&b.complex, false).trusted_dims(), vec![2, 1, 1, 1, 1]);
        let (env, m) = multiplication_module(&exterior(-1), -5).unwrap();
        let b = two_sided_bar(&m, &env, &m, -3, 8).unwrap();
        b.complex.check_d_squared().unwrap();
    }
}
