#![allow(dead_code)]

use higher_hochschild::bar::{classical_hochschild_oracle, ClassicalComplex};
use higher_hochschild::cdga::{GradedAlgebra, GradedModule};
use higher_hochschild::exactla::{Rational, SparseRationalMatrix};
use higher_hochschild::hochschild::{build_complex, koszul_sign, BuildOptions, HochschildComplex, Tensor};
use higher_hochschild::simplicial::standard_model;

/// Module coefficients for the circle comparison.
#[derive(Clone, Copy, Debug)]
pub enum Coefficients {
    /// Unpointed complex, compared with the oracle on the regular module.
    None,
    Regular,
    Augmentation,
}

/// The classical tuple `(m, a_1, …, a_k)` sits in the simplicial complex as
/// `m ⊗ a_k ⊗ … ⊗ a_1`, with the Koszul sign of the reversal.
fn identification(o: &ClassicalComplex, c: &HochschildComplex, k: usize, d: i32) -> Result<SparseRationalMatrix, String> {
    let src = o.level_basis(k, d);
    let tgt = c.level_basis(k, d);
    if src.len() != tgt.len() {
        return Err(format!("level {k}, degree {d}: {} classical vs {} simplicial", src.len(), tgt.len()));
    }
    let degrees = &o.table().degrees;
    let perm: Vec<usize> = (0..k).rev().collect();
    let mut entries = Vec::new();
    for (p, t) in src.iter().enumerate() {
        let mut slots = vec![t[0]];
        slots.extend(t[1..].iter().rev());
        let q = tgt
            .iter()
            .position(|x| *x == Tensor::new(k, slots.clone()))
            .ok_or_else(|| format!("tuple {t:?} has no simplicial counterpart"))?;
        let degs: Vec<i32> = t[1..].iter().map(|&v| degrees[v as usize]).collect();
        entries.push((q, p, Rational::from_int(koszul_sign(&degs, &perm) as i64)));
    }
    Ok(SparseRationalMatrix::from_triplets(tgt.len(), src.len(), entries))
}

/// Checks that every face and internal differential of the simplicial build
/// on `circle_minimal` equals the classical one, levels `1..=max_level`.
pub fn compare_with_classical(a: &GradedAlgebra, coeff: Coefficients, max_level: usize) -> Result<usize, String> {
    let n_min = -(max_level as i32);
    let x = standard_model("circle_minimal").map_err(|e| e.to_string())?;
    let module = match coeff {
        Coefficients::None => None,
        Coefficients::Regular => Some(GradedModule::regular(a, n_min - 1)),
        Coefficients::Augmentation => Some(GradedModule::augmentation(a).map_err(|e| e.to_string())?),
    };
    let c = build_complex(&x, a, module.as_ref(), n_min, &BuildOptions::default()).map_err(|e| e.to_string())?;
    let o = classical_hochschild_oracle(a, module.as_ref(), n_min).map_err(|e| e.to_string())?;
    let mut compared = 0;
    for k in 0..=max_level {
        for d in (n_min - 1)..=0 {
            let phi = identification(&o, &c, k, d)?;
            if d < 0 {
                let phi_up = identification(&o, &c, k, d + 1)?;
                if c.internal_matrix(k, d).mul(&phi) != phi_up.mul(&o.internal_matrix(k, d)) {
                    return Err(format!("internal differential differs at level {k}, degree {d}"));
                }
                compared += 1;
            }
            if k == 0 {
                continue;
            }
            let phi_down = identification(&o, &c, k - 1, d)?;
            for i in 0..=k {
                if c.face_matrix(k, i, d).mul(&phi) != phi_down.mul(&o.face_matrix(k, i, d)) {
                    return Err(format!("face d_{i} differs at level {k}, degree {d}"));
                }
                compared += 1;
            }
        }
    }
    Ok(compared)
}

/// A random homogeneous chain: up to three basis tensors of one level
/// `≤ max_level` and one internal degree `≥ min_internal`, with small
/// rational coefficients. Returns the chain, its level, internal and total degree.
pub fn random_chain(
    c: &HochschildComplex,
    rng: &mut impl rand::Rng,
    max_level: usize,
    min_internal: i32,
) -> (higher_hochschild::hochschild::Chain, usize, i32, i32) {
    loop {
        let k = rng.gen_range(0..=max_level);
        let d = rng.gen_range(min_internal..=0);
        let basis = c.level_basis(k, d);
        if basis.is_empty() {
            continue;
        }
        let mut chain = higher_hochschild::hochschild::Chain::new();
        for _ in 0..rng.gen_range(1..=3) {
            let t = basis[rng.gen_range(0..basis.len())].clone();
            let x = Rational::new(rng.gen_range(-3..=3), rng.gen_range(1..=2));
            higher_hochschild::hochschild::chain_add(&mut chain, t, x);
        }
        if !chain.is_empty() {
            return (chain, k, d, d - k as i32);
        }
    }
}

fn signed(a: &higher_hochschild::hochschild::Chain, negate: bool) -> higher_hochschild::hochschild::Chain {
    a.iter().map(|(t, x)| (t.clone(), if negate { -x } else { x.clone() })).collect()
}

fn plus(a: &higher_hochschild::hochschild::Chain, b: &higher_hochschild::hochschild::Chain) -> higher_hochschild::hochschild::Chain {
    let mut out = a.clone();
    for (t, x) in b {
        higher_hochschild::hochschild::chain_add(&mut out, t.clone(), x.clone());
    }
    out
}

/// Checks unitality, graded commutativity and Leibniz on `pairs` random
/// pairs and associativity on `triples` random triples, every factor of
/// level `≤ 3`. Products are kept inside the window of `c`.
pub fn shuffle_trials(c: &HochschildComplex, pairs: usize, triples: usize, seed: u64) -> Result<(), String> {
    use higher_hochschild::hochschild::shuffle_product;
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let sh = |u: &higher_hochschild::hochschild::Chain, v: &higher_hochschild::hochschild::Chain| shuffle_product(c, u, v).map_err(|e| e.to_string());
    let top = c.max_level();
    let unit = higher_hochschild::hochschild::Chain::from([(c.unit_tensor(None), Rational::one())]);
    let min_internal = -2;
    for _ in 0..pairs {
        let (u, ku, _, nu) = random_chain(c, &mut rng, 3.min(top / 2), min_internal);
        let (v, kv, _, nv) = random_chain(c, &mut rng, 3.min(top - ku), min_internal);
        debug_assert!(ku + kv <= top);
        if sh(&unit, &u)? != u || sh(&u, &unit)? != u {
            return Err(format!("unit law fails on {u:?}"));
        }
        let uv = sh(&u, &v)?;
        if uv != signed(&sh(&v, &u)?, (nu * nv) % 2 != 0) {
            return Err(format!("graded commutativity fails on {u:?}, {v:?}"));
        }
        let rhs = plus(&sh(&c.apply_d(&u), &v)?, &signed(&sh(&u, &c.apply_d(&v))?, nu % 2 != 0));
        if c.apply_d(&uv) != rhs {
            return Err(format!("Leibniz fails on {u:?} (level {ku}), {v:?} (level {kv})"));
        }
    }
    for _ in 0..triples {
        let (u, ku, ..) = random_chain(c, &mut rng, 3.min(top / 3), min_internal);
        let (v, kv, ..) = random_chain(c, &mut rng, 3.min((top - ku) / 2), min_internal);
        let (w, ..) = random_chain(c, &mut rng, 3.min(top - ku - kv), min_internal);
        if sh(&sh(&u, &v)?, &w)? != sh(&u, &sh(&v, &w)?)? {
            return Err(format!("associativity fails on {u:?}, {v:?}, {w:?}"));
        }
    }
    Ok(())
}
