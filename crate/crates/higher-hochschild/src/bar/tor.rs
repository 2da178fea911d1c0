//! `Tor^{A^e}(A, A)` for `A = ℚ[ε]/(ε²)` from the 2-periodic resolution
//!
//! `⋯ → A^e --(ε₁+ε₂)--> A^e --(ε₁−ε₂)--> A^e → A`,
//!
//! where `A^e = ℚ[ε₁, ε₂]/(ε₁², ε₂²)`. Tensoring with `A` over `A^e` sends
//! both `ε₁` and `ε₂` to `ε`, so the maps become `0` and `2ε` on `A`.

use crate::exactla::{kernel_basis, rank, Rational, SparseRationalMatrix};

/// Multiplication by `x₀ + x₁ε₁ + x₂ε₂ + x₃ε₁ε₂` on the basis `1, ε₁, ε₂, ε₁ε₂`.
fn enveloping_mul(x: [i64; 4]) -> SparseRationalMatrix {
    // product of basis elements i·j, None when zero
    let prod = |i: usize, j: usize| -> Option<usize> { if i & j != 0 { None } else { Some(i | j) } };
    let mut entries = Vec::new();
    for j in 0..4 {
        for (i, &c) in x.iter().enumerate() {
            if c != 0 {
                if let Some(k) = prod(i, j) {
                    entries.push((k, j, Rational::from_int(c)));
                }
            }
        }
    }
    SparseRationalMatrix::from_triplets(4, 4, entries)
}

/// The resolution map `P_n → P_{n−1}` for `n ≥ 1`.
fn resolution_map(n: usize) -> SparseRationalMatrix {
    if n % 2 == 1 {
        enveloping_mul([0, 1, -1, 0])
    } else {
        enveloping_mul([0, 1, 1, 0])
    }
}

/// Checks exactness of the resolution at `P_0, …, P_len`, including
/// `ker(P_0 → A) = im(P_1 → P_0)`.
pub fn periodic_resolution_is_exact(len: usize) -> bool {
    // augmentation A^e → A: 1 ↦ 1, ε₁, ε₂ ↦ ε, ε₁ε₂ ↦ 0
    let aug = SparseRationalMatrix::from_triplets(
        2,
        4,
        [(0, 0, Rational::one()), (1, 1, Rational::one()), (1, 2, Rational::one())],
    );
    if rank(&aug) != 2 || kernel_basis(&aug).dim() != rank(&resolution_map(1)) {
        return false;
    }
    (1..=len).all(|n| {
        let d = resolution_map(n);
        d.mul(&resolution_map(n + 1)).is_zero() && kernel_basis(&d).dim() == rank(&resolution_map(n + 1))
    })
}

/// Homology dimensions of `A ⊗_{A^e} P_•` in degrees `0, −1, …, n_min`.
pub fn periodic_tor_oracle(n_min: i32) -> Vec<usize> {
    // on the basis 1, ε of A
    let reduced = |n: usize| -> SparseRationalMatrix {
        if n % 2 == 1 {
            SparseRationalMatrix::zero(2, 2)
        } else {
            SparseRationalMatrix::from_triplets(2, 2, [(1, 0, Rational::from_int(2))])
        }
    };
    (0..=(-n_min).max(0) as usize)
        .map(|n| {
            let cycles = if n == 0 { 2 } else { kernel_basis(&reduced(n)).dim() };
            cycles - rank(&reduced(n + 1))
        })
        .collect()
}
