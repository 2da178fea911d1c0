/// Koszul sign of rearranging graded factors: `perm[new_position] = old_position`,
/// and the sign is the product of `(−1)^{|x||y|}` over every pair `x`, `y`
/// whose relative order is reversed.
pub fn koszul_sign(degrees: &[i32], perm: &[usize]) -> i32 {
    assert_eq!(degrees.len(), perm.len(), "permutation length differs from degree list");
    let mut parity = 0i64;
    for a in 0..perm.len() {
        for b in a + 1..perm.len() {
            if perm[a] > perm[b] {
                parity += (degrees[perm[a]] as i64) * (degrees[perm[b]] as i64);
            }
        }
    }
    if parity.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Sign of a permutation (ignoring degrees).
pub fn permutation_sign(perm: &[usize]) -> i32 {
    let mut inv = 0usize;
    for a in 0..perm.len() {
        for b in a + 1..perm.len() {
            if perm[a] > perm[b] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        assert_eq!(koszul_sign(&[-1, -1], &[0, 1]), 1);
        assert_eq!(koszul_sign(&[-1, -1], &[1, 0]), -1);
        assert_eq!(koszul_sign(&[-1, -2], &[1, 0]), 1);
        assert_eq!(koszul_sign(&[-1, -2, -1], &[2, 1, 0]), -1);
        assert_eq!(permutation_sign(&[1, 0, 2]), -1);
    }
}
