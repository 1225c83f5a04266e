//! Hochschild chains `M(n) = A (x) A^{(x)n}` as a cyclic comp module over the
//! cochain operad, with `b`, cap product, Lie derivative, Connes' `B` and
//! the homotopy `S_f`.
//!
//! Every operator has an operadic implementation built from the insertions
//! `f .i x` and the rotation `t`; `d_alpha`, `cap_explicit` and
//! `lie_explicit` are written directly from their closed formulas so the two
//! routes can be cross-checked.

use serde::{Deserialize, Serialize};

use crate::algebra::HomAlgebra;
use crate::cochain::{comp, Cochain};
use crate::error::{Error, Result};
use crate::linalg::{Subspace, Vector};
use crate::scalar::Scalar;
use crate::tensor::{accumulate, decode, encode, multi_indices, pow, to_sparse, Sparse};

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Chain {
    degree: usize,
    dim: usize,
    coeffs: Vector,
}

impl Chain {
    pub fn zero(dim: usize, degree: usize) -> Self {
        Chain {
            degree,
            dim,
            coeffs: Vector::zeros(pow(dim, degree + 1)),
        }
    }

    pub fn from_coeffs(dim: usize, degree: usize, coeffs: Vector) -> Result<Self> {
        if coeffs.len() != pow(dim, degree + 1) {
            return Err(Error::Dimension(format!(
                "degree-{degree} chain over dim {dim} needs {} coefficients, got {}",
                pow(dim, degree + 1),
                coeffs.len()
            )));
        }
        Ok(Chain { degree, dim, coeffs })
    }

    /// `e_{i0} (x) e_{i1} ... e_{in}`.
    pub fn basis(dim: usize, indices: &[usize]) -> Self {
        let mut c = Self::zero(dim, indices.len() - 1);
        c.coeffs.0[encode(indices, dim)] = Scalar::one();
        c
    }

    /// `v0 (x) v1 ... vn` for arbitrary vectors.
    pub fn elementary(dim: usize, slots: &[Vector]) -> Self {
        let mut c = Self::zero(dim, slots.len() - 1);
        let sparse: Vec<Sparse> = slots.iter().map(to_sparse).collect();
        accumulate(&mut c.coeffs.0, dim, &Scalar::one(), &sparse);
        c
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeffs(&self) -> &Vector {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vector {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }

    fn check_compatible(&self, other: &Chain) -> Result<()> {
        if self.degree != other.degree || self.dim != other.dim {
            return Err(Error::Dimension(format!(
                "chains of degree {} and {}",
                self.degree, other.degree
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Chain) -> Result<Chain> {
        self.check_compatible(other)?;
        Ok(self.with_coeffs(self.coeffs.add(&other.coeffs)))
    }

    pub fn sub(&self, other: &Chain) -> Result<Chain> {
        self.check_compatible(other)?;
        Ok(self.with_coeffs(self.coeffs.sub(&other.coeffs)))
    }

    pub fn scale(&self, c: &Scalar) -> Chain {
        self.with_coeffs(self.coeffs.scale(c))
    }

    pub fn neg(&self) -> Chain {
        self.with_coeffs(self.coeffs.neg())
    }

    pub fn axpy(&mut self, c: &Scalar, other: &Chain) -> Result<()> {
        self.check_compatible(other)?;
        self.coeffs.axpy(c, &other.coeffs);
        Ok(())
    }

    fn with_coeffs(&self, coeffs: Vector) -> Chain {
        Chain {
            degree: self.degree,
            dim: self.dim,
            coeffs,
        }
    }

    /// Nonzero terms as `(indices, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (Vec<usize>, &Scalar)> + '_ {
        self.coeffs
            .support()
            .map(|(i, c)| (decode(i, self.dim, self.degree + 1), c))
    }
}

/// `f .i x` for `0 <= i <= n - p + 1`: `f` eats `a_i, ..., a_{i+p-1}` and
/// every other slot is hit by `alpha^{p-1}`; `i = 0` is the cyclic insertion.
pub fn bullet(alg: &HomAlgebra, f: &Cochain, i: usize, x: &Chain) -> Result<Chain> {
    let mut out = bullet_target(alg, f, i, x)?;
    bullet_into(alg, f, i, x, &Scalar::one(), &mut out)?;
    Ok(out)
}

/// `f .0 x = f(a_0, ..., a_{p-1}) (x) alpha^{p-1}(a_p) ...`.
pub fn bullet0(alg: &HomAlgebra, f: &Cochain, x: &Chain) -> Result<Chain> {
    bullet(alg, f, 0, x)
}

fn bullet_target(alg: &HomAlgebra, f: &Cochain, i: usize, x: &Chain) -> Result<Chain> {
    if f.target() != crate::algebra::Coefficients::Algebra {
        return Err(Error::Dimension("insertions need A-valued cochains".into()));
    }
    if f.dim() != alg.dim() || x.dim != alg.dim() {
        return Err(Error::Dimension("operands over different algebras".into()));
    }
    let (p, n) = (f.degree(), x.degree);
    if p > n + 1 || i > n + 1 - p || (i >= 1 && p > n) {
        return Err(Error::IndexOutOfRange(format!(
            "f .{i} x with deg f = {p}, deg x = {n}"
        )));
    }
    if p == 0 {
        alg.require_regular("inserting a degree-0 cochain")?;
    }
    Ok(Chain::zero(alg.dim(), n + 1 - p))
}

fn bullet_into(
    alg: &HomAlgebra,
    f: &Cochain,
    i: usize,
    x: &Chain,
    coeff: &Scalar,
    out: &mut Chain,
) -> Result<()> {
    let n = alg.dim();
    let p = f.degree();
    let w = p as i32 - 1;
    let mut slots: Vec<Sparse> = Vec::with_capacity(x.degree + 2 - p);
    for (a, c) in x.terms() {
        slots.clear();
        for &d in &a[..i] {
            slots.push(alg.alpha_pow_col(w, d)?.clone());
        }
        slots.push(f.value_sparse(&a[i..i + p]));
        for &d in &a[i + p..] {
            slots.push(alg.alpha_pow_col(w, d)?.clone());
        }
        accumulate(&mut out.coeffs.0, n, &(coeff * c), &slots);
    }
    Ok(())
}

/// `t(a_0 (x) a_1 ... a_n) = a_n (x) a_0 ... a_{n-1}`; the identity in degree 0.
pub fn cyclic_t(x: &Chain) -> Chain {
    cyclic_t_pow(x, 1)
}

pub fn cyclic_t_pow(x: &Chain, k: usize) -> Chain {
    let slots = x.degree + 1;
    let k = k % slots;
    if k == 0 {
        return x.clone();
    }
    let mut out = Chain::zero(x.dim, x.degree);
    for (a, c) in x.terms() {
        let mut r = Vec::with_capacity(slots);
        r.extend_from_slice(&a[slots - k..]);
        r.extend_from_slice(&a[..slots - k]);
        out.coeffs.0[encode(&r, x.dim)] = c.clone();
    }
    out
}

fn require_positive(x: &Chain, what: &str) -> Result<()> {
    if x.degree == 0 {
        return Err(Error::IndexOutOfRange(format!("{what} on a degree-0 chain")));
    }
    Ok(())
}

/// `b(x) = sum_{i<n} (-1)^i pi .i x + (-1)^n pi .0 t(x)`.
pub fn boundary_b(alg: &HomAlgebra, x: &Chain) -> Result<Chain> {
    require_positive(x, "b")?;
    let pi = Cochain::multiplication(alg);
    let n = x.degree;
    let mut out = Chain::zero(alg.dim(), n - 1);
    for i in 0..n {
        bullet_into(alg, &pi, i, x, &Scalar::sign(i as i64), &mut out)?;
    }
    bullet_into(alg, &pi, 0, &cyclic_t(x), &Scalar::sign(n as i64), &mut out)?;
    Ok(out)
}

/// The Hochschild boundary written out term by term.
pub fn d_alpha(alg: &HomAlgebra, x: &Chain) -> Result<Chain> {
    require_positive(x, "d")?;
    let (dim, n) = (alg.dim(), x.degree);
    let mut out = Chain::zero(dim, n - 1);
    let mut slots: Vec<Sparse> = Vec::with_capacity(n);
    for (a, c) in x.terms() {
        slots.clear();
        slots.push(alg.product(a[0], a[1]).clone());
        for &d in &a[2..] {
            slots.push(alg.alpha_pow_col(1, d)?.clone());
        }
        accumulate(&mut out.coeffs.0, dim, c, &slots);

        slots.clear();
        slots.push(alg.product(a[n], a[0]).clone());
        for &d in &a[1..n] {
            slots.push(alg.alpha_pow_col(1, d)?.clone());
        }
        accumulate(&mut out.coeffs.0, dim, &(c * Scalar::sign(n as i64)), &slots);

        for i in 1..n {
            slots.clear();
            for (s, &d) in a.iter().enumerate() {
                if s == i {
                    slots.push(alg.product(d, a[i + 1]).clone());
                } else if s != i + 1 {
                    slots.push(alg.alpha_pow_col(1, d)?.clone());
                }
            }
            accumulate(&mut out.coeffs.0, dim, &(c * Scalar::sign(i as i64)), &slots);
        }
    }
    Ok(out)
}

/// `i_f x = (pi o_2 f) .0 x`.
pub fn cap(alg: &HomAlgebra, f: &Cochain, x: &Chain) -> Result<Chain> {
    if f.degree() > x.degree {
        return Err(Error::IndexOutOfRange(format!(
            "i_f with deg f = {} on a degree-{} chain",
            f.degree(),
            x.degree
        )));
    }
    let g = comp(alg, &Cochain::multiplication(alg), 2, f)?;
    bullet0(alg, &g, x)
}

/// `i_f(a_0 (x) ...) = alpha^{p-1}(a_0) f(a_1, ..., a_p) (x) alpha^p(a_{p+1}) ...`.
pub fn cap_explicit(alg: &HomAlgebra, f: &Cochain, x: &Chain) -> Result<Chain> {
    let (p, n) = (f.degree(), x.degree);
    if p > n {
        return Err(Error::IndexOutOfRange(format!("i_f with deg f = {p} on a degree-{n} chain")));
    }
    if p == 0 {
        alg.require_regular("i_f for a degree-0 cochain")?;
    }
    let dim = alg.dim();
    let mut out = Chain::zero(dim, n - p);
    let mut slots: Vec<Sparse> = Vec::with_capacity(n - p + 1);
    for (a, c) in x.terms() {
        slots.clear();
        let head = alg.alpha_pow_col(p as i32 - 1, a[0])?;
        slots.push(alg.mul_sparse(head, &f.value_sparse(&a[1..=p])));
        for &d in &a[p + 1..] {
            slots.push(alg.alpha_pow_col(p as i32, d)?.clone());
        }
        accumulate(&mut out.coeffs.0, dim, c, &slots);
    }
    Ok(out)
}

/// Lie derivative from insertions and rotations, both branches.
pub fn lie(alg: &HomAlgebra, f: &Cochain, x: &Chain) -> Result<Chain> {
    let (p, n) = (f.degree(), x.degree);
    if p > n + 1 {
        return Err(Error::IndexOutOfRange(format!("L_f with deg f = {p} on a degree-{n} chain")));
    }
    let (pi, ni) = (p as i64, n as i64);
    let mut out = bullet_target(alg, f, 0, x)?;
    if p < n + 1 {
        for i in 1..=(n + 1 - p) {
            let s = Scalar::sign((pi - 1) * (i as i64 - 1));
            bullet_into(alg, f, i, x, &s, &mut out)?;
        }
        for i in 1..=p {
            let s = Scalar::sign(ni * (i as i64 - 1) + pi - 1);
            bullet_into(alg, f, 0, &cyclic_t_pow(x, i - 1), &s, &mut out)?;
        }
    } else {
        for i in 0..=n {
            let s = Scalar::sign(pi - 1 + i as i64 * ni);
            bullet_into(alg, f, 0, &cyclic_t_pow(x, i), &s, &mut out)?;
        }
    }
    Ok(out)
}

/// Lie derivative by direct index arithmetic: `f` applied to each window of
/// consecutive slots, cyclic windows through `a_n, a_0` included.
pub fn lie_explicit(alg: &HomAlgebra, f: &Cochain, x: &Chain) -> Result<Chain> {
    let (p, n) = (f.degree(), x.degree);
    if p > n + 1 {
        return Err(Error::IndexOutOfRange(format!("L_f with deg f = {p} on a degree-{n} chain")));
    }
    if p == 0 {
        alg.require_regular("L_f for a degree-0 cochain")?;
    }
    let dim = alg.dim();
    let w = p as i32 - 1;
    let len = n + 1;
    let (pi, ni) = (p as i64, n as i64);
    let mut out = Chain::zero(dim, n + 1 - p);
    let mut slots: Vec<Sparse> = Vec::with_capacity(n + 2 - p);
    for (a, c) in x.terms() {
        if p < len {
            // windows inside a_1 .. a_n, a_0 stays in front
            for i in 1..=(n + 1 - p) {
                slots.clear();
                for &d in &a[..i] {
                    slots.push(alg.alpha_pow_col(w, d)?.clone());
                }
                slots.push(f.value_sparse(&a[i..i + p]));
                for &d in &a[i + p..] {
                    slots.push(alg.alpha_pow_col(w, d)?.clone());
                }
                let sign = Scalar::sign((pi - 1) * (i as i64 - 1));
                accumulate(&mut out.coeffs.0, dim, &(c * sign), &slots);
            }
        }
        // windows starting at a_{(n+1-k) mod (n+1)}, moved to the front
        let count = if p < len { p } else { len };
        for k in 0..count {
            let start = (len - k) % len;
            let window: Vec<usize> = (0..p).map(|s| a[(start + s) % len]).collect();
            slots.clear();
            slots.push(f.value_sparse(&window));
            for s in p..len {
                slots.push(alg.alpha_pow_col(w, a[(start + s) % len])?.clone());
            }
            let sign = Scalar::sign(ni * k as i64 + pi - 1);
            accumulate(&mut out.coeffs.0, dim, &(c * sign), &slots);
        }
    }
    Ok(out)
}

/// Connes' operator `B = sum_i (-1)^{in} (id - t) t (e .{n+1} t^i(x))`.
pub fn connes_b(alg: &HomAlgebra, x: &Chain) -> Result<Chain> {
    let e = Cochain::unit(alg)?;
    let n = x.degree;
    let mut acc = Chain::zero(alg.dim(), n + 1);
    for i in 0..=n {
        let y = bullet(alg, &e, n + 1, &cyclic_t_pow(x, i))?;
        let ty = cyclic_t(&y);
        let s = Scalar::sign((i * n) as i64);
        acc.axpy(&s, &ty)?;
        acc.axpy(&-s, &cyclic_t(&ty))?;
    }
    Ok(acc)
}

/// `S_f = sum_{j=1}^{n-p+1} sum_{i=j}^{n-p+1} (-1)^{n(j-1)+(p-1)(i-1)} e .0 (f .i t^{j-1}(x))`,
/// zero when `p > n`.
pub fn homotopy_s(alg: &HomAlgebra, f: &Cochain, x: &Chain) -> Result<Chain> {
    let e = Cochain::unit(alg)?;
    let (p, n) = (f.degree(), x.degree);
    if p > n + 2 {
        return Err(Error::IndexOutOfRange(format!(
            "S_f with deg f = {p} on a degree-{n} chain has negative degree"
        )));
    }
    let mut acc = Chain::zero(alg.dim(), n + 2 - p);
    if p > n {
        return Ok(acc);
    }
    let (pi, ni) = (p as i64, n as i64);
    let top = n + 1 - p;
    for j in 1..=top {
        let tx = cyclic_t_pow(x, j - 1);
        for i in j..=top {
            let y = bullet(alg, f, i, &tx)?;
            let s = Scalar::sign(ni * (j as i64 - 1) + (pi - 1) * (i as i64 - 1));
            bullet_into(alg, &e, 0, &y, &s, &mut acc)?;
        }
    }
    Ok(acc)
}

/// The span `D(n)` of tensors carrying the unit in some slot `1..=n`.
pub fn degenerate_subspace(alg: &HomAlgebra, n: usize) -> Result<Subspace> {
    Ok(Subspace::spanned_by(pow(alg.dim(), n + 1), &degenerate_spanning_set(alg, n)?))
}

fn degenerate_spanning_set(alg: &HomAlgebra, n: usize) -> Result<Vec<Vector>> {
    let unit = alg.require_unit("the normalized chain complex")?;
    let dim = alg.dim();
    let mut out = Vec::new();
    for slot in 1..=n {
        for rest in multi_indices(dim, n) {
            let slots: Vec<Vector> = (0..=n)
                .map(|s| match s.cmp(&slot) {
                    std::cmp::Ordering::Less => Vector::unit(dim, rest[s]),
                    std::cmp::Ordering::Equal => unit.clone(),
                    std::cmp::Ordering::Greater => Vector::unit(dim, rest[s - 1]),
                })
                .collect();
            out.push(Chain::elementary(dim, &slots).coeffs);
        }
    }
    Ok(out)
}

/// `M(n) / D(n)` together with the closure checks that make it a complex.
#[derive(Clone, Debug)]
pub struct NormalizedQuotient {
    pub degree: usize,
    pub degenerate: Subspace,
    /// Standard basis tensors completing `D(n)`, in index order.
    pub representatives: Vec<Vector>,
}

impl NormalizedQuotient {
    /// Fails with an internal consistency error, carrying the offending
    /// tensor, if `b` or `B` does not preserve the degenerate subspaces.
    pub fn new(alg: &HomAlgebra, n: usize) -> Result<Self> {
        let dim = alg.dim();
        let spanning = degenerate_spanning_set(alg, n)?;
        let degenerate = Subspace::spanned_by(pow(dim, n + 1), &spanning);
        if n >= 1 {
            let below = degenerate_subspace(alg, n - 1)?;
            for v in &spanning {
                let x = Chain::from_coeffs(dim, n, v.clone())?;
                if !below.contains(boundary_b(alg, &x)?.coeffs()) {
                    return Err(Error::consistency(
                        format!("b does not preserve degenerate chains in degree {n}"),
                        format!("{v:?}"),
                    ));
                }
            }
        }
        if alg.is_regular() {
            let above = degenerate_subspace(alg, n + 1)?;
            for v in &spanning {
                let x = Chain::from_coeffs(dim, n, v.clone())?;
                if !above.contains(connes_b(alg, &x)?.coeffs()) {
                    return Err(Error::consistency(
                        format!("B does not preserve degenerate chains in degree {n}"),
                        format!("{v:?}"),
                    ));
                }
            }
        }
        let standard: Vec<Vector> = (0..pow(dim, n + 1)).map(|i| Vector::unit(pow(dim, n + 1), i)).collect();
        let mut acc = degenerate.clone();
        let representatives = standard.into_iter().filter(|v| acc.insert(v)).collect();
        Ok(NormalizedQuotient {
            degree: n,
            degenerate,
            representatives,
        })
    }

    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    /// Canonical representative of `x` modulo `D(n)`.
    pub fn reduce(&self, x: &Chain) -> Chain {
        Chain {
            degree: x.degree,
            dim: x.dim,
            coeffs: self.degenerate.reduce(&x.coeffs),
        }
    }

    pub fn is_degenerate(&self, x: &Chain) -> bool {
        self.degenerate.contains(&x.coeffs)
    }
}

pub fn normalized_quotient(alg: &HomAlgebra, n: usize) -> Result<NormalizedQuotient> {
    NormalizedQuotient::new(alg, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Coefficients;
    use crate::cochain::cochain_space_basis;
    use crate::fixtures;

    fn all_basis(dim: usize, n: usize) -> impl Iterator<Item = Chain> {
        multi_indices(dim, n + 1).map(move |a| Chain::basis(dim, &a))
    }

    fn e(dim: usize, i: usize) -> Vector {
        Vector::unit(dim, i)
    }

    #[test]
    fn identity_insertions() {
        for alg in fixtures::regular_unital() {
            let id = Cochain::identity(&alg);
            for n in 1..=3 {
                for x in all_basis(alg.dim(), n) {
                    for i in 0..=n {
                        assert_eq!(bullet(&alg, &id, i, &x).unwrap(), x);
                    }
                }
            }
        }
    }

    #[test]
    fn bullet_hand_values() {
        let alg = fixtures::dual_numbers();
        let mu = Cochain::multiplication(&alg);
        assert!(bullet(&alg, &mu, 1, &Chain::basis(2, &[1, 1, 1])).unwrap().is_zero());
        // mu .0 (a0 (x) a1) = a0 a1
        assert_eq!(bullet0(&alg, &mu, &Chain::basis(2, &[0, 1])).unwrap(), Chain::basis(2, &[1]));
        assert_eq!(bullet0(&alg, &mu, &Chain::basis(2, &[1, 0])).unwrap(), Chain::basis(2, &[1]));
        let tw = fixtures::dual_numbers_twist(Scalar::from_int(2));
        let mu = Cochain::multiplication(&tw);
        assert!(bullet(&tw, &mu, 1, &Chain::basis(2, &[0, 1, 1])).unwrap().is_zero());
        // alpha(e0) (x) e0 e1 = e0 (x) 2 e1
        let v = bullet(&tw, &mu, 1, &Chain::basis(2, &[0, 0, 1])).unwrap();
        assert_eq!(v, Chain::basis(2, &[0, 1]).scale(&Scalar::from_int(2)));
    }

    #[test]
    fn bullet_ranges() {
        let alg = fixtures::dual_numbers();
        let mu = Cochain::multiplication(&alg);
        let x2 = Chain::basis(2, &[0, 1, 1]);
        assert!(bullet(&alg, &mu, 1, &x2).is_ok());
        assert!(matches!(bullet(&alg, &mu, 2, &x2), Err(Error::IndexOutOfRange(_))));
        let x = Chain::basis(2, &[0, 1]);
        assert!(matches!(bullet(&alg, &mu, 1, &x), Err(Error::IndexOutOfRange(_))));
        // p = n + 1 through .0 only
        let g = cochain_space_basis(&alg, 2, Coefficients::Algebra).unwrap()[0].clone();
        assert_eq!(bullet0(&alg, &g, &x).unwrap().degree(), 0);
        let nil = fixtures::nilpotent_twist();
        let z = Cochain::zero(2, 0, Coefficients::Algebra);
        assert!(matches!(bullet(&nil, &z, 1, &x), Err(Error::Regularity(_))));
    }

    #[test]
    fn rotation() {
        assert_eq!(cyclic_t(&Chain::basis(2, &[0, 1])), Chain::basis(2, &[1, 0]));
        assert_eq!(cyclic_t(&Chain::basis(2, &[0, 1, 0])), Chain::basis(2, &[0, 0, 1]));
        for n in 0..=3 {
            for x in all_basis(3, n) {
                assert_eq!(cyclic_t_pow(&x, n + 1), x);
                let mut y = x.clone();
                for _ in 0..=n {
                    y = cyclic_t(&y);
                }
                assert_eq!(y, x);
            }
        }
    }

    #[test]
    fn boundary_degree_one() {
        // b(a0 (x) a1) = a0 a1 - a1 a0
        for alg in fixtures::regular_unital() {
            let n = alg.dim();
            for a in multi_indices(n, 2) {
                let b = boundary_b(&alg, &Chain::basis(n, &a)).unwrap();
                let expected = alg.mul(&e(n, a[0]), &e(n, a[1])).sub(&alg.mul(&e(n, a[1]), &e(n, a[0])));
                assert_eq!(b.coeffs(), &expected);
            }
        }
    }

    #[test]
    fn boundary_matches_explicit_and_squares_to_zero() {
        for f in fixtures::valid() {
            let alg = f.algebra;
            let top = if alg.dim() > 2 { 3 } else { 4 };
            for n in 1..=top {
                for x in all_basis(alg.dim(), n) {
                    let b = boundary_b(&alg, &x).unwrap();
                    assert_eq!(b, d_alpha(&alg, &x).unwrap(), "{} {x:?}", alg.name());
                    if n >= 2 {
                        assert!(boundary_b(&alg, &b).unwrap().is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn cap_identity_and_explicit() {
        for alg in fixtures::regular_unital() {
            let dim = alg.dim();
            let id = Cochain::identity(&alg);
            for x in all_basis(dim, 3) {
                let a: Vec<usize> = x.terms().next().unwrap().0;
                let expected = Chain::elementary(
                    dim,
                    &[
                        alg.mul(&e(dim, a[0]), &e(dim, a[1])),
                        alg.alpha_pow(1, &e(dim, a[2])).unwrap(),
                        alg.alpha_pow(1, &e(dim, a[3])).unwrap(),
                    ],
                );
                assert_eq!(cap(&alg, &id, &x).unwrap(), expected);
            }
            for p in 0..=2 {
                for f in cochain_space_basis(&alg, p, Coefficients::Algebra).unwrap() {
                    for n in p..=3 {
                        for x in all_basis(dim, n) {
                            assert_eq!(cap(&alg, &f, &x).unwrap(), cap_explicit(&alg, &f, &x).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn lie_operadic_matches_explicit() {
        for alg in fixtures::regular_unital() {
            let dim = alg.dim();
            for p in 0..=3 {
                for f in cochain_space_basis(&alg, p, Coefficients::Algebra).unwrap() {
                    for n in p.saturating_sub(1)..=3 {
                        for x in all_basis(dim, n) {
                            assert_eq!(
                                lie(&alg, &f, &x).unwrap(),
                                lie_explicit(&alg, &f, &x).unwrap(),
                                "{} p={p} n={n}",
                                alg.name()
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn lie_of_identity_degree_one() {
        // L_1(a0 (x) a1) = 1 .1 x + 1 .0 x = 2 x
        let alg = fixtures::dual_numbers();
        let id = Cochain::identity(&alg);
        for x in all_basis(2, 1) {
            assert_eq!(lie(&alg, &id, &x).unwrap(), x.scale(&Scalar::from_int(2)));
        }
    }

    #[test]
    fn connes_b_degree_zero() {
        for alg in fixtures::regular_unital() {
            let dim = alg.dim();
            let one = alg.unit().unwrap().clone();
            for i in 0..dim {
                let a = alg.alpha_pow(-1, &e(dim, i)).unwrap();
                let expected = Chain::elementary(dim, &[one.clone(), a.clone()])
                    .sub(&Chain::elementary(dim, &[a, one.clone()]))
                    .unwrap();
                assert_eq!(connes_b(&alg, &Chain::basis(dim, &[i])).unwrap(), expected);
            }
        }
    }

    #[test]
    fn connes_b_needs_regular_unit() {
        let alg = fixtures::nilpotent_twist();
        assert!(matches!(connes_b(&alg, &Chain::basis(2, &[0])), Err(Error::Regularity(_))));
    }

    #[test]
    fn homotopy_s_hand_values() {
        let alg = fixtures::dual_numbers_twist(Scalar::from_int(2));
        let id = Cochain::identity(&alg);
        let one = alg.unit().unwrap().clone();
        for a in multi_indices(2, 2) {
            let x = Chain::basis(2, &a);
            // single term j = i = 1: e .0 (a0 (x) a1)
            let expected = Chain::elementary(
                2,
                &[
                    one.clone(),
                    alg.alpha_pow(-1, &e(2, a[0])).unwrap(),
                    alg.alpha_pow(-1, &e(2, a[1])).unwrap(),
                ],
            );
            assert_eq!(homotopy_s(&alg, &id, &x).unwrap(), expected);
        }
        let mu = Cochain::multiplication(&alg);
        let s = homotopy_s(&alg, &mu, &Chain::basis(2, &[1, 1])).unwrap();
        assert!(s.is_zero() && s.degree() == 1);
    }

    #[test]
    fn normalized_quotient_dimensions() {
        let alg = fixtures::dual_numbers();
        let q1 = normalized_quotient(&alg, 1).unwrap();
        assert_eq!(q1.degenerate.dim(), 2);
        let q2 = normalized_quotient(&alg, 2).unwrap();
        assert_eq!(q2.degenerate.dim(), 6);
        assert_eq!(q2.dim(), 2);
        // d (d - 1)^n
        let kk = fixtures::upper_triangular_twist();
        for n in 0..=3 {
            let q = normalized_quotient(&kk, n).unwrap();
            assert_eq!(q.dim(), 3 * 2usize.pow(n as u32));
        }
    }
}
