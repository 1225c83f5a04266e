//! Multi-index bookkeeping and the sparse tensor-product kernel shared by the
//! cochain and chain operators.
//!
//! Multi-indices are lexicographic with the first slot most significant, so
//! `(i0, i1, ..., ik)` over a basis of size `n` sits at
//! `((i0 * n + i1) * n + ...) + ik`.

use crate::linalg::Vector;
use crate::scalar::Scalar;

/// Sparse vector over an algebra basis.
pub type Sparse = Vec<(usize, Scalar)>;

pub fn pow(n: usize, k: usize) -> usize {
    n.checked_pow(k as u32).expect("tensor power overflows usize")
}

pub fn decode(mut idx: usize, n: usize, slots: usize) -> Vec<usize> {
    let mut out = vec![0; slots];
    for s in (0..slots).rev() {
        out[s] = idx % n;
        idx /= n;
    }
    out
}

pub fn encode(digits: &[usize], n: usize) -> usize {
    digits.iter().fold(0, |acc, &d| acc * n + d)
}

pub fn to_sparse(v: &Vector) -> Sparse {
    v.support().map(|(i, x)| (i, x.clone())).collect()
}

pub fn from_sparse(s: &Sparse, n: usize) -> Vector {
    let mut v = Vector::zeros(n);
    for (i, x) in s {
        v.0[*i] += x;
    }
    v
}

pub fn basis_sparse(i: usize) -> Sparse {
    vec![(i, Scalar::one())]
}

pub fn scale_sparse(s: &Sparse, c: &Scalar) -> Sparse {
    if c.is_zero() {
        return Vec::new();
    }
    s.iter().map(|(i, x)| (*i, x * c)).collect()
}

/// `out += coeff * (slots[0] ⊗ slots[1] ⊗ ...)`.
pub fn accumulate(out: &mut [Scalar], n: usize, coeff: &Scalar, slots: &[Sparse]) {
    fn go(out: &mut [Scalar], n: usize, coeff: &Scalar, slots: &[Sparse], idx: usize) {
        match slots.split_first() {
            None => out[idx] += coeff,
            Some((first, rest)) => {
                for (i, x) in first {
                    let c = coeff * x;
                    go(out, n, &c, rest, idx * n + i);
                }
            }
        }
    }
    if coeff.is_zero() || slots.iter().any(Vec::is_empty) {
        return;
    }
    go(out, n, coeff, slots, 0);
}

/// Lazily iterates all multi-indices with `slots` digits in `0..n`.
pub fn multi_indices(n: usize, slots: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..pow(n, slots)).map(move |i| decode(i, n, slots))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn encode_decode() {
        for idx in 0..27 {
            assert_eq!(encode(&decode(idx, 3, 3), 3), idx);
        }
        assert_eq!(decode(5, 2, 3), vec![1, 0, 1]);
    }

    #[test]
    fn accumulate_product() {
        let mut out = vec![Scalar::zero(); 4];
        let a = vec![(0, Scalar::from_int(2)), (1, Scalar::one())];
        let b = vec![(1, Scalar::from_int(3))];
        accumulate(&mut out, 2, &Scalar::one(), &[a, b]);
        assert_eq!(Vector(out), Vector::from_ints(&[0, 6, 0, 3]));
    }
}
