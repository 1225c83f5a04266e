//! Hochschild cochains as an operad with multiplication: partial
//! compositions, bracket, cup product and the two coboundaries.
//!
//! A degree-`p` cochain stores `f(e_{i1}, ..., e_{ip})` at
//! `coeffs[encode(i1..ip) * n + k]`, output index last.

use serde::{Deserialize, Serialize};

use crate::algebra::{Bimodule, Coefficients, HomAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, Matrix, Vector};
use crate::scalar::Scalar;
use crate::tensor::{encode, multi_indices, pow, to_sparse, Sparse};

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Cochain {
    degree: usize,
    dim: usize,
    target: Coefficients,
    coeffs: Vector,
}

/// Cochains valued in `A*`; same storage, `target == Coefficients::Dual`.
pub type DualCochain = Cochain;

impl Cochain {
    pub fn zero(dim: usize, degree: usize, target: Coefficients) -> Self {
        Cochain {
            degree,
            dim,
            target,
            coeffs: Vector::zeros(pow(dim, degree + 1)),
        }
    }

    pub fn from_coeffs(dim: usize, degree: usize, target: Coefficients, coeffs: Vector) -> Result<Self> {
        if coeffs.len() != pow(dim, degree + 1) {
            return Err(Error::Dimension(format!(
                "degree-{degree} cochain over dim {dim} needs {} coefficients, got {}",
                pow(dim, degree + 1),
                coeffs.len()
            )));
        }
        Ok(Cochain {
            degree,
            dim,
            target,
            coeffs,
        })
    }

    /// Builds a cochain from its values on basis tuples.
    pub fn from_fn(
        dim: usize,
        degree: usize,
        target: Coefficients,
        mut value: impl FnMut(&[usize]) -> Vector,
    ) -> Self {
        let mut c = Self::zero(dim, degree, target);
        for (idx, args) in multi_indices(dim, degree).enumerate() {
            let v = value(&args);
            c.coeffs.0[idx * dim..(idx + 1) * dim].clone_from_slice(&v.0);
        }
        c
    }

    /// The operadic identity `id_A`.
    pub fn identity(alg: &HomAlgebra) -> Self {
        let n = alg.dim();
        Self::from_fn(n, 1, Coefficients::Algebra, |a| Vector::unit(n, a[0]))
    }

    /// The multiplication `pi = mu` as a degree-2 cochain.
    pub fn multiplication(alg: &HomAlgebra) -> Self {
        let n = alg.dim();
        Cochain {
            degree: 2,
            dim: n,
            target: Coefficients::Algebra,
            coeffs: Vector(alg.mu().to_vec()),
        }
    }

    /// The unit `e` in degree 0; exists only for regular unital algebras.
    pub fn unit(alg: &HomAlgebra) -> Result<Self> {
        alg.require_regular("the degree-0 unit cochain")?;
        let u = alg.require_unit("the degree-0 unit cochain")?;
        Self::from_coeffs(alg.dim(), 0, Coefficients::Algebra, u.clone())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn target(&self) -> Coefficients {
        self.target
    }

    pub fn coeffs(&self) -> &Vector {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vector {
        self.coeffs
    }

    /// `f(e_{args[0]}, ...)` as a coordinate slice.
    pub fn value(&self, args: &[usize]) -> &[Scalar] {
        let at = encode(args, self.dim) * self.dim;
        &self.coeffs.0[at..at + self.dim]
    }

    pub fn value_sparse(&self, args: &[usize]) -> Sparse {
        self.value(args)
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, x)| (i, x.clone()))
            .collect()
    }

    /// `out += coeff * f(args)` for arbitrary (sparse) arguments.
    pub fn eval_into(&self, args: &[Sparse], coeff: &Scalar, out: &mut [Scalar]) {
        fn go(c: &Cochain, args: &[Sparse], idx: usize, coeff: &Scalar, out: &mut [Scalar]) {
            match args.split_first() {
                None => {
                    let at = idx * c.dim;
                    for (o, x) in out.iter_mut().zip(&c.coeffs.0[at..at + c.dim]) {
                        if !x.is_zero() {
                            o.add_mul(coeff, x);
                        }
                    }
                }
                Some((first, rest)) => {
                    for (i, x) in first {
                        go(c, rest, idx * c.dim + i, &(coeff * x), out);
                    }
                }
            }
        }
        debug_assert_eq!(args.len(), self.degree);
        if coeff.is_zero() || args.iter().any(Vec::is_empty) {
            return;
        }
        go(self, args, 0, coeff, out);
    }

    pub fn eval(&self, args: &[Sparse]) -> Sparse {
        let mut out = vec![Scalar::zero(); self.dim];
        self.eval_into(args, &Scalar::one(), &mut out);
        to_sparse(&Vector(out))
    }

    fn check_compatible(&self, other: &Cochain) -> Result<()> {
        if self.degree != other.degree || self.dim != other.dim || self.target != other.target {
            return Err(Error::Dimension(format!(
                "cochains of degree {} ({}) and {} ({})",
                self.degree, self.target, other.degree, other.target
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Cochain) -> Result<Cochain> {
        self.check_compatible(other)?;
        Ok(self.with_coeffs(self.coeffs.add(&other.coeffs)))
    }

    pub fn sub(&self, other: &Cochain) -> Result<Cochain> {
        self.check_compatible(other)?;
        Ok(self.with_coeffs(self.coeffs.sub(&other.coeffs)))
    }

    pub fn scale(&self, c: &Scalar) -> Cochain {
        self.with_coeffs(self.coeffs.scale(c))
    }

    pub fn neg(&self) -> Cochain {
        self.with_coeffs(self.coeffs.neg())
    }

    pub fn axpy(&mut self, c: &Scalar, other: &Cochain) -> Result<()> {
        self.check_compatible(other)?;
        self.coeffs.axpy(c, &other.coeffs);
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }

    fn with_coeffs(&self, coeffs: Vector) -> Cochain {
        Cochain {
            degree: self.degree,
            dim: self.dim,
            target: self.target,
            coeffs,
        }
    }

    /// `beta o f = f o alpha^{(x)p}`; for degree 0 this is `beta(a) = a`.
    pub fn is_equivariant(&self, alg: &HomAlgebra) -> Result<bool> {
        let module = alg.module(self.target)?;
        for args in multi_indices(self.dim, self.degree) {
            let lhs = module.apply_beta(&self.value_sparse(&args));
            let twisted: Vec<Sparse> = args
                .iter()
                .map(|&a| alg.alpha_pow_col(1, a).cloned())
                .collect::<Result<_>>()?;
            if !crate::algebra::sparse_eq(&lhs, &self.eval(&twisted), self.dim) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Vanishes whenever some argument is the unit.
    pub fn is_normalized(&self, alg: &HomAlgebra) -> Result<bool> {
        let unit = to_sparse(alg.require_unit("normalized cochains")?);
        for slot in 0..self.degree {
            for rest in multi_indices(self.dim, self.degree.saturating_sub(1)) {
                let mut args: Vec<Sparse> = rest.iter().map(|&a| vec![(a, Scalar::one())]).collect();
                args.insert(slot, unit.clone());
                if !self.eval(&args).is_empty() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

fn require_algebra_valued(f: &Cochain, what: &str) -> Result<()> {
    if f.target != Coefficients::Algebra {
        return Err(Error::Dimension(format!("{what} needs A-valued cochains")));
    }
    Ok(())
}

/// `(f o_i g)(a_1, ...) = f(alpha^{q-1} a_1, ..., g(a_i, ..., a_{i+q-1}), ..., alpha^{q-1} a_{p+q-1})`.
pub fn comp(alg: &HomAlgebra, f: &Cochain, i: usize, g: &Cochain) -> Result<Cochain> {
    require_algebra_valued(f, "partial composition")?;
    require_algebra_valued(g, "partial composition")?;
    let n = alg.dim();
    if f.dim != n || g.dim != n {
        return Err(Error::Dimension("cochain over a different algebra".into()));
    }
    let (p, q) = (f.degree, g.degree);
    if i < 1 || i > p {
        return Err(Error::IndexOutOfRange(format!("o_{i} on a degree-{p} cochain")));
    }
    if q == 0 {
        alg.require_regular("composition with a degree-0 cochain")?;
    }
    let r = p + q - 1;
    let k = q as i32 - 1;
    let mut out = Cochain::zero(n, r, Coefficients::Algebra);
    let one = Scalar::one();
    for (idx, a) in multi_indices(n, r).enumerate() {
        let mut args = Vec::with_capacity(p);
        for s in 0..p {
            if s + 1 < i {
                args.push(alg.alpha_pow_col(k, a[s])?.clone());
            } else if s + 1 == i {
                args.push(g.value_sparse(&a[s..s + q]));
            } else {
                args.push(alg.alpha_pow_col(k, a[s + q - 1])?.clone());
            }
        }
        f.eval_into(&args, &one, &mut out.coeffs.0[idx * n..(idx + 1) * n]);
    }
    Ok(out)
}

/// Degree -1 bracket
/// `[f,g] = sum (-1)^{(q-1)(i-1)} f o_i g - (-1)^{(p-1)(q-1)} sum (-1)^{(p-1)(i-1)} g o_i f`.
pub fn bracket(alg: &HomAlgebra, f: &Cochain, g: &Cochain) -> Result<Cochain> {
    let (p, q) = (f.degree as i64, g.degree as i64);
    if p + q == 0 {
        return Err(Error::IndexOutOfRange("bracket of two degree-0 cochains".into()));
    }
    let mut out = Cochain::zero(alg.dim(), (p + q - 1) as usize, Coefficients::Algebra);
    for i in 1..=p {
        let s = Scalar::sign((q - 1) * (i - 1));
        out.axpy(&s, &comp(alg, f, i as usize, g)?)?;
    }
    let outer = Scalar::sign((p - 1) * (q - 1));
    for i in 1..=q {
        let s = -(&outer * Scalar::sign((p - 1) * (i - 1)));
        out.axpy(&s, &comp(alg, g, i as usize, f)?)?;
    }
    Ok(out)
}

/// `f cup g = (pi o_2 f) o_1 g`, i.e. `pi(alpha^{p-1} g(...), alpha^{q-1} f(...))`
/// with `g` eating the first `q` arguments.
pub fn cup(alg: &HomAlgebra, f: &Cochain, g: &Cochain) -> Result<Cochain> {
    let pi = Cochain::multiplication(alg);
    comp(alg, &comp(alg, &pi, 2, f)?, 1, g)
}

/// `delta_pi(f) = [pi, f]`.
pub fn delta_pi(alg: &HomAlgebra, f: &Cochain) -> Result<Cochain> {
    bracket(alg, &Cochain::multiplication(alg), f)
}

/// `delta_pi = delta_sign(p) * delta_alpha` on degree-`p` cochains.
pub fn delta_sign(p: usize) -> Scalar {
    Scalar::sign(p as i64 - 1)
}

/// Hochschild coboundary with coefficients in `A` or `A*` (chosen by the
/// cochain's target).
pub fn delta_alpha(alg: &HomAlgebra, f: &Cochain) -> Result<Cochain> {
    let n = alg.dim();
    let p = f.degree;
    if p == 0 {
        alg.require_regular("the degree-0 coboundary")?;
    }
    let module: &Bimodule = alg.module(f.target)?;
    let w = p as i32 - 1;
    let mut out = Cochain::zero(n, p + 1, f.target);
    let last_sign = Scalar::sign(p as i64 + 1);
    let one = Scalar::one();
    for (idx, a) in multi_indices(n, p + 1).enumerate() {
        let slot = &mut out.coeffs.0[idx * n..(idx + 1) * n];
        let head = module.left_act(alg.alpha_pow_col(w, a[0])?, &f.value_sparse(&a[1..]));
        for (k, x) in head {
            slot[k] += x;
        }
        let tail = module.right_act(&f.value_sparse(&a[..p]), alg.alpha_pow_col(w, a[p])?);
        for (k, x) in tail {
            slot[k].add_mul(&last_sign, &x);
        }
        for i in 1..=p {
            let mut args = Vec::with_capacity(p);
            for s in 0..p {
                if s + 1 < i {
                    args.push(alg.alpha_pow_col(1, a[s])?.clone());
                } else if s + 1 == i {
                    args.push(alg.product(a[s], a[s + 1]).clone());
                } else {
                    args.push(alg.alpha_pow_col(1, a[s + 1])?.clone());
                }
            }
            let s = if i % 2 == 0 { one.clone() } else { -&one };
            f.eval_into(&args, &s, slot);
        }
    }
    Ok(out)
}

/// `(f . m)(a_1, ..., a_{p+k}) = f(a_1, ..., a_p) m(a_{p+1}, ..., a_{p+k})`
/// using the left action of `A` on `A*`.
pub fn dot_product(alg: &HomAlgebra, f: &Cochain, m: &DualCochain) -> Result<DualCochain> {
    require_algebra_valued(f, "the product f . m")?;
    if m.target != Coefficients::Dual {
        return Err(Error::Dimension("f . m needs an A*-valued right factor".into()));
    }
    let dual = alg.module(Coefficients::Dual)?;
    let n = alg.dim();
    let (p, k) = (f.degree, m.degree);
    let mut out = Cochain::zero(n, p + k, Coefficients::Dual);
    for (idx, a) in multi_indices(n, p + k).enumerate() {
        let v = dual.left_act(&f.value_sparse(&a[..p]), &m.value_sparse(&a[p..]));
        for (j, x) in v {
            out.coeffs.0[idx * n + j] = x;
        }
    }
    Ok(out)
}

/// Basis of the equivariant cochains `C^p_alpha(A, M)`, in kernel order.
pub fn cochain_space_basis(alg: &HomAlgebra, p: usize, coeffs: Coefficients) -> Result<Vec<Cochain>> {
    constrained_basis(alg, p, coeffs, false)
}

/// Basis of the equivariant cochains that vanish whenever an argument is 1.
pub fn normalized_cochain_basis(alg: &HomAlgebra, p: usize, coeffs: Coefficients) -> Result<Vec<Cochain>> {
    alg.require_unit("normalized cochains")?;
    constrained_basis(alg, p, coeffs, true)
}

fn constrained_basis(alg: &HomAlgebra, p: usize, coeffs: Coefficients, normalized: bool) -> Result<Vec<Cochain>> {
    if p == 0 {
        alg.require_regular("degree-0 cochains")?;
    }
    let n = alg.dim();
    let module = alg.module(coeffs)?;
    let beta = module.beta();
    let size = pow(n, p + 1);
    let tuples = pow(n, p);
    let norm_rows = if normalized { p * pow(n, p.saturating_sub(1)) * n } else { 0 };
    let mut columns = Vec::with_capacity(size);
    for u in 0..size {
        let (tuple, k) = (u / n, u % n);
        let digits = crate::tensor::decode(tuple, n, p);
        let mut col = Vector::zeros(size + norm_rows);
        // beta(f(e_I)) against f(alpha e_J)
        for kk in 0..n {
            let b = &beta[(kk, k)];
            if !b.is_zero() {
                col.0[tuple * n + kk] += b;
            }
        }
        for j in 0..tuples {
            let jd = crate::tensor::decode(j, n, p);
            let mut c = Scalar::one();
            for s in 0..p {
                c *= &alg.alpha()[(digits[s], jd[s])];
                if c.is_zero() {
                    break;
                }
            }
            if !c.is_zero() {
                col.0[j * n + k] -= &c;
            }
        }
        if normalized {
            let unit = alg.unit().expect("checked by caller");
            let block = pow(n, p - 1) * n;
            for s in 0..p {
                let u_s = &unit[digits[s]];
                if !u_s.is_zero() {
                    let mut rest = digits.clone();
                    rest.remove(s);
                    col.0[size + s * block + encode(&rest, n) * n + k] += u_s;
                }
            }
        }
        columns.push(col);
    }
    let system = Matrix::from_columns(&columns, size + norm_rows);
    Ok(kernel_basis(&system)
        .into_iter()
        .map(|v| Cochain::from_coeffs(n, p, coeffs, v).expect("shape"))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    /// f(1) = 0, f(x) = 1 on the dual numbers.
    fn f_x_to_1() -> Cochain {
        Cochain::from_fn(2, 1, Coefficients::Algebra, |a| {
            if a[0] == 1 {
                Vector::unit(2, 0)
            } else {
                Vector::zeros(2)
            }
        })
    }

    #[test]
    fn identity_is_operadic_unit() {
        for alg in fixtures::regular_unital() {
            let id = Cochain::identity(&alg);
            for p in 1..=3 {
                for f in cochain_space_basis(&alg, p, Coefficients::Algebra).unwrap() {
                    assert_eq!(comp(&alg, &id, 1, &f).unwrap(), f);
                    for i in 1..=p {
                        assert_eq!(comp(&alg, &f, i, &id).unwrap(), f);
                    }
                }
            }
        }
    }

    #[test]
    fn unit_cochain_is_unit_of_pi() {
        for alg in fixtures::regular_unital() {
            let pi = Cochain::multiplication(&alg);
            let e = Cochain::unit(&alg).unwrap();
            let id = Cochain::identity(&alg);
            assert_eq!(comp(&alg, &pi, 1, &e).unwrap(), id, "{}", alg.name());
            assert_eq!(comp(&alg, &pi, 2, &e).unwrap(), id, "{}", alg.name());
        }
    }

    #[test]
    fn degree_zero_needs_regularity() {
        let alg = fixtures::nilpotent_twist();
        let pi = Cochain::multiplication(&alg);
        let a = Cochain::zero(2, 0, Coefficients::Algebra);
        assert!(matches!(comp(&alg, &pi, 1, &a), Err(Error::Regularity(_))));
        assert!(matches!(Cochain::unit(&alg), Err(Error::Regularity(_))));
        assert!(matches!(
            cochain_space_basis(&alg, 0, Coefficients::Algebra),
            Err(Error::Regularity(_))
        ));
    }

    #[test]
    fn comp_index_range() {
        let alg = fixtures::dual_numbers();
        let pi = Cochain::multiplication(&alg);
        assert!(matches!(comp(&alg, &pi, 0, &pi), Err(Error::IndexOutOfRange(_))));
        assert!(matches!(comp(&alg, &pi, 3, &pi), Err(Error::IndexOutOfRange(_))));
    }

    /// Direct evaluation of (ab)alpha(c) and alpha(a)(bc) on all triples.
    #[test]
    fn multiplication_axiom_twist() {
        let alg = fixtures::dual_numbers_twist(s(2));
        let pi = Cochain::multiplication(&alg);
        let l = comp(&alg, &pi, 1, &pi).unwrap();
        let r = comp(&alg, &pi, 2, &pi).unwrap();
        assert_eq!(l, r);
        for a in multi_indices(2, 3) {
            let e = |i: usize| Vector::unit(2, i);
            let direct = alg.mul(&alg.mul(&e(a[0]), &e(a[1])), &alg.alpha_pow(1, &e(a[2])).unwrap());
            assert_eq!(Vector(l.value(&a).to_vec()), direct);
        }
        // (mu o_1 mu)(x, 1, x) = (x 1) alpha(x) = 2x * 2x = 0
        assert!(l.value(&[1, 0, 1]).iter().all(Scalar::is_zero));
    }

    #[test]
    fn bracket_examples() {
        for alg in fixtures::regular_unital() {
            let pi = Cochain::multiplication(&alg);
            assert!(bracket(&alg, &pi, &pi).unwrap().is_zero());
            let id = Cochain::identity(&alg);
            for p in 1..=3 {
                for f in cochain_space_basis(&alg, p, Coefficients::Algebra).unwrap() {
                    // p copies of f o_i 1 against one 1 o_1 f
                    let expected = f.scale(&Scalar::from_int(p as i64 - 1));
                    assert_eq!(bracket(&alg, &f, &id).unwrap(), expected);
                }
            }
            assert_eq!(delta_pi(&alg, &id).unwrap(), pi);
        }
    }

    #[test]
    fn cup_examples() {
        let alg = fixtures::dual_numbers();
        let id = Cochain::identity(&alg);
        assert_eq!(cup(&alg, &id, &id).unwrap(), Cochain::multiplication(&alg));
        let f = f_x_to_1();
        let c = cup(&alg, &f, &f).unwrap();
        assert_eq!(c.value(&[1, 1]), &[s(1), s(0)]);
    }

    #[test]
    fn delta_alpha_hand_value() {
        let alg = fixtures::dual_numbers();
        let f = f_x_to_1();
        let d = delta_alpha(&alg, &f).unwrap();
        assert_eq!(d.value(&[1, 1]), &[s(0), s(2)]);
    }

    #[test]
    fn delta_alpha_degree_zero_unit_is_closed() {
        let alg = fixtures::dual_numbers_twist(s(2));
        let e = Cochain::unit(&alg).unwrap();
        assert!(delta_alpha(&alg, &e).unwrap().is_zero());
    }

    #[test]
    fn delta_squares_vanish() {
        for alg in fixtures::regular_unital() {
            for p in 0..=2 {
                for f in cochain_space_basis(&alg, p, Coefficients::Algebra).unwrap() {
                    let d = delta_alpha(&alg, &f).unwrap();
                    assert!(d.is_equivariant(&alg).unwrap());
                    assert!(delta_alpha(&alg, &d).unwrap().is_zero());
                    let dp = delta_pi(&alg, &f).unwrap();
                    assert!(delta_pi(&alg, &dp).unwrap().is_zero());
                    assert_eq!(dp, d.scale(&delta_sign(p)), "{} p={p}", alg.name());
                }
            }
        }
    }

    #[test]
    fn cochain_space_dimensions() {
        let alg = fixtures::dual_numbers();
        for p in 1..=3 {
            assert_eq!(cochain_space_basis(&alg, p, Coefficients::Algebra).unwrap().len(), 1 << (p + 1));
        }
        let tw = fixtures::dual_numbers_twist(s(2));
        let b = cochain_space_basis(&tw, 1, Coefficients::Algebra).unwrap();
        assert_eq!(b.len(), 2);
        for f in &b {
            assert!(f.value(&[0])[1].is_zero() && f.value(&[1])[0].is_zero());
        }
        let swap = fixtures::k_times_k_swap();
        let b0 = cochain_space_basis(&swap, 0, Coefficients::Algebra).unwrap();
        assert_eq!(b0.len(), 1);
        assert_eq!(b0[0].value(&[])[0], b0[0].value(&[])[1]);
    }

    #[test]
    fn normalized_basis_vanishes_on_unit() {
        for alg in fixtures::regular_unital() {
            for p in 1..=3 {
                for f in normalized_cochain_basis(&alg, p, Coefficients::Algebra).unwrap() {
                    assert!(f.is_normalized(&alg).unwrap());
                    assert!(f.is_equivariant(&alg).unwrap());
                    assert!(delta_alpha(&alg, &f).unwrap().is_normalized(&alg).unwrap());
                }
            }
        }
        // dual numbers, alpha = id: normalized p-cochains are maps (kx)^p -> A
        let alg = fixtures::dual_numbers();
        assert_eq!(normalized_cochain_basis(&alg, 2, Coefficients::Algebra).unwrap().len(), 2);
    }

    #[test]
    fn dual_cochains_are_equivariant() {
        let alg = fixtures::dual_numbers_twist(Scalar::ratio(1, 2));
        for p in 0..=2 {
            for m in cochain_space_basis(&alg, p, Coefficients::Dual).unwrap() {
                assert!(m.is_equivariant(&alg).unwrap());
                let d = delta_alpha(&alg, &m).unwrap();
                assert!(d.is_equivariant(&alg).unwrap());
                assert!(delta_alpha(&alg, &d).unwrap().is_zero());
            }
        }
    }
}
