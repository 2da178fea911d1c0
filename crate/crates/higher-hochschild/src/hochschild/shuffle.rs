use super::sign::permutation_sign;
use super::{chain_add, Chain, HochschildComplex, HochschildError, Layout, Tensor};
use crate::exactla::Rational;
use crate::simplicial::increasing_words;

/// Applies `s_{j_r} ⋯ s_{j_1}` (so `s_{j_1}` first) to a tensor. Degeneracies
/// are injective on simplices, so the result is a single signed tensor.
fn degenerate(l: &Layout, t: &Tensor, word: &[usize]) -> (Tensor, Rational) {
    let mut slots = t.slots.to_vec();
    let mut level = t.level;
    let mut c = Rational::one();
    let mut buf = Vec::new();
    for &j in word {
        l.push_forward(&slots, &l.degen_slots[level][j], l.nslots[level + 1], &c, &mut buf);
        let (s, x) = buf.pop().expect("degeneracy of a basis tensor is a basis tensor");
        debug_assert!(buf.is_empty());
        slots = s;
        c = x;
        level += 1;
    }
    (Tensor::new(level, slots), c)
}

/// Slotwise product `(a_s)·(b_s)` with the Koszul sign of moving every `b_s`
/// past the later `a_t`.
fn pointwise(l: &Layout, a: &[u16], b: &[u16], coeff: &Rational) -> Vec<(Vec<u16>, Rational)> {
    let n = a.len();
    let mut parity = 0i64;
    let mut suffix = 0i64;
    for s in (0..n).rev() {
        parity += l.degree(s, b[s]) as i64 * suffix;
        suffix += l.degree(s, a[s]) as i64;
    }
    let c = if parity.rem_euclid(2) == 1 { -coeff } else { coeff.clone() };
    let mut partial: Vec<(Vec<u16>, Rational)> = vec![(Vec::with_capacity(n), c)];
    for s in 0..n {
        let p = l.table.mul(a[s] as usize, b[s] as usize);
        if p.is_empty() {
            return Vec::new();
        }
        let mut next = Vec::with_capacity(partial.len() * p.len());
        for (r, c) in &partial {
            for (v, x) in p {
                let mut r2 = r.clone();
                r2.push(*v as u16);
                next.push((r2, c * x));
            }
        }
        partial = next;
    }
    partial
}

/// The shuffle product
/// `sh(u, v) = Σ sgn(μ,ν) (−1)^{q·|u|_int} (s_ν u)·(s_μ v)`
/// over `(p,q)`-shuffles, for `u` at level `p` and `v` at level `q`. The sign
/// `(−1)^{q·|u|_int}` moves the `q` simplicial shifts of `v` past the internal
/// degree of `u`; with it `D` is a graded derivation of `sh`.
pub fn shuffle_product(c: &HochschildComplex, u: &Chain, v: &Chain) -> Result<Chain, HochschildError> {
    if c.is_pointed() {
        return Err(HochschildError::Incompatible("shuffle product needs an unpointed complex".into()));
    }
    let l = &c.layout;
    let mut out = Chain::new();
    for (tu, x) in u {
        for (tv, y) in v {
            let (p, q) = (tu.level, tv.level);
            if p + q > l.max_level() {
                return Err(HochschildError::OutOfWindow(format!("shuffle into level {}", p + q)));
            }
            let du = l.internal_degree(&tu.slots);
            let dv = l.internal_degree(&tv.slots);
            if du + dv < l.table.min_degree {
                return Err(HochschildError::OutOfWindow(format!("internal degree {}", du + dv)));
            }
            let base = &(x * y) * &Rational::sign(q as i64 * du as i64);
            for mu in increasing_words(p, p + q) {
                let nu: Vec<usize> = (0..p + q).filter(|i| !mu.contains(i)).collect();
                let perm: Vec<usize> = mu.iter().chain(nu.iter()).copied().collect();
                let sgn = Rational::from_int(permutation_sign(&perm) as i64);
                let (a, ca) = degenerate(l, tu, &nu);
                let (b, cb) = degenerate(l, tv, &mu);
                let coeff = &(&base * &sgn) * &(&ca * &cb);
                for (s, z) in pointwise(l, &a.slots, &b.slots, &coeff) {
                    if !(c.is_normalized() && l.is_degenerate(p + q, &s)) {
                        chain_add(&mut out, Tensor::new(p + q, s), z);
                    }
                }
            }
        }
    }
    Ok(out)
}

fn sum(a: &Chain, b: &Chain, sign_b: bool) -> Chain {
    let mut out = a.clone();
    for (t, x) in b {
        chain_add(&mut out, t.clone(), if sign_b { -x } else { x.clone() });
    }
    out
}

/// Checks unitality, graded commutativity and Leibniz on every sample pair
/// and associativity on every sample triple whose product fits the window.
/// Samples are homogeneous chains with their total degree. Returns the
/// number of identities checked.
pub fn check_shuffle_laws(c: &HochschildComplex, samples: &[(Chain, i32)]) -> Result<usize, String> {
    let level = |u: &Chain| u.keys().map(|t| t.level).max().unwrap_or(0);
    let fits = |us: &[&Chain]| {
        us.iter().map(|u| level(u)).sum::<usize>() <= c.max_level()
            && us.iter().map(|u| u.keys().map(|t| c.layout.internal_degree(&t.slots)).min().unwrap_or(0)).sum::<i32>()
                >= c.layout.table.min_degree
    };
    let sh = |u: &Chain, v: &Chain| shuffle_product(c, u, v).map_err(|e| e.to_string());
    let unit = Chain::from([(c.unit_tensor(None), Rational::one())]);
    let mut checked = 0;
    for (u, nu) in samples {
        if sh(&unit, u)? != *u || sh(u, &unit)? != *u {
            return Err("1 · u = u = u · 1".into());
        }
        checked += 1;
        for (v, nv) in samples {
            if !fits(&[u, v]) {
                continue;
            }
            let uv = sh(u, v)?;
            let vu = sh(v, u)?;
            if uv != sum(&Chain::new(), &vu, (nu * nv) % 2 != 0) {
                return Err(format!("u · v = (−1)^{{{nu}·{nv}}} v · u"));
            }
            let rhs = sum(&sh(&c.apply_d(u), v)?, &sh(u, &c.apply_d(v))?, nu % 2 != 0);
            if c.apply_d(&uv) != rhs {
                return Err("D(u · v) = Du · v + (−1)^{|u|} u · Dv".into());
            }
            checked += 2;
        }
    }
    for (u, _) in samples {
        for (v, _) in samples {
            for (w, _) in samples {
                if !fits(&[u, v, w]) {
                    continue;
                }
                if sh(&sh(u, v)?, w)? != sh(u, &sh(v, w)?)? {
                    return Err("(u · v) · w = u · (v · w)".into());
                }
                checked += 1;
            }
        }
    }
    Ok(checked)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cdga::{dual_numbers, exterior, koszul, polynomial};
    use crate::hochschild::{build_complex, BuildOptions};
    use crate::simplicial::standard_model;

    fn neg(c: &Chain) -> Chain {
        c.iter().map(|(t, x)| (t.clone(), -x)).collect()
    }

    fn add(a: &Chain, b: &Chain) -> Chain {
        let mut out = a.clone();
        for (t, x) in b {
            chain_add(&mut out, t.clone(), x.clone());
        }
        out
    }

    fn samples(c: &HochschildComplex) -> Vec<(Chain, i32)> {
        let mut out = Vec::new();
        for k in 0..=2 {
            for d in -2..=0 {
                for (i, t) in c.level_basis(k, d).into_iter().enumerate() {
                    if i % 3 == 0 {
                        let n = d - k as i32;
                        out.push((Chain::from([(t, Rational::from_int(i as i64 % 5 + 1))]), n));
                    }
                }
            }
        }
        out
    }

    #[test]
    fn leibniz_and_commutativity() {
        for space in ["circle_minimal", "interval", "point"] {
            for a in [dual_numbers(), exterior(-1), koszul(), polynomial(-2)] {
                let x = standard_model(space).unwrap();
                let c = build_complex(&x, &a, None, -6, &BuildOptions::default()).unwrap();
                let s = samples(&c);
                for (u, nu) in s.iter().take(12) {
                    for (v, nv) in s.iter().take(12) {
                        let uv = shuffle_product(&c, u, v).unwrap();
                        let vu = shuffle_product(&c, v, u).unwrap();
                        let sign = if (nu * nv) % 2 != 0 { neg(&vu) } else { vu };
                        assert_eq!(uv, sign, "commutativity on {space}, {}", a.name());
                        let lhs = c.apply_d(&uv);
                        let mut rhs = shuffle_product(&c, &c.apply_d(u), v).unwrap();
                        let t = shuffle_product(&c, u, &c.apply_d(v)).unwrap();
                        rhs = add(&rhs, &if nu % 2 != 0 { neg(&t) } else { t });
                        assert_eq!(lhs, rhs, "Leibniz on {space}, {}", a.name());
                    }
                }
            }
        }
    }
}
