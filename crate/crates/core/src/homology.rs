//! Exact (co)homology as cycles modulo boundaries, and the operations the
//! calculus induces on classes.
//!
//! Every induced operation is evaluated on a representative and then
//! re-evaluated on randomly perturbed representatives; a class mismatch is
//! an internal consistency error, never a silent answer.

use std::sync::OnceLock;

use rand::Rng;
use serde::Serialize;

use crate::algebra::{Coefficients, HomAlgebra};
use crate::chain::{boundary_b, cap, connes_b, degenerate_subspace, lie, Chain, NormalizedQuotient};
use crate::cochain::{
    bracket, cochain_space_basis, cup, delta_alpha, dot_product, normalized_cochain_basis, Cochain, DualCochain,
};
use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, quotient_representatives, solve, Matrix, Subspace, Vector};
use crate::rng::{small_scalar, stream};
use crate::scalar::Scalar;
use crate::tensor::pow;

/// `cycles / boundaries` inside a coordinate space, with one fixed
/// representative per basis class.
#[derive(Clone, Debug)]
pub struct SubquotientSpace {
    degree: usize,
    ambient: usize,
    cycles: Subspace,
    boundaries: Subspace,
    representatives: Vec<Vector>,
    /// Columns: representatives reduced modulo the boundaries.
    reduced: Matrix,
}

impl SubquotientSpace {
    /// Representatives are taken from `cycle_candidates` in order, so earlier
    /// candidates are preferred.
    pub fn new(degree: usize, ambient: usize, cycle_candidates: &[Vector], boundary_gens: &[Vector]) -> Result<Self> {
        let cycles = Subspace::spanned_by(ambient, cycle_candidates);
        let boundaries = Subspace::spanned_by(ambient, boundary_gens);
        if let Some(bad) = boundaries.basis().iter().find(|v| !cycles.contains(v)) {
            return Err(Error::consistency(
                format!("boundaries are not cycles in degree {degree}"),
                format!("{bad:?}"),
            ));
        }
        let representatives = quotient_representatives(boundaries.basis(), cycle_candidates)?;
        let cols: Vec<Vector> = representatives.iter().map(|r| boundaries.reduce(r)).collect();
        Ok(SubquotientSpace {
            degree,
            ambient,
            reduced: Matrix::from_columns(&cols, ambient),
            cycles,
            boundaries,
            representatives,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn cycles(&self) -> &Subspace {
        &self.cycles
    }

    pub fn boundaries(&self) -> &Subspace {
        &self.boundaries
    }

    pub fn representatives(&self) -> &[Vector] {
        &self.representatives
    }

    pub fn is_cycle(&self, v: &Vector) -> bool {
        self.cycles.contains(v)
    }

    pub fn is_boundary(&self, v: &Vector) -> bool {
        self.boundaries.contains(v)
    }

    /// Coordinates of the class of `v` in the representative basis.
    pub fn coordinates(&self, v: &Vector) -> Result<Vector> {
        if v.len() != self.ambient {
            return Err(Error::Dimension(format!(
                "vector of length {} in a degree-{} space of dimension {}",
                v.len(),
                self.degree,
                self.ambient
            )));
        }
        if !self.is_cycle(v) {
            return Err(Error::NotACycle(format!("degree-{} element is not a cycle", self.degree)));
        }
        if self.dim() == 0 {
            return Ok(Vector::zeros(0));
        }
        solve(&self.reduced, &self.boundaries.reduce(v))?.ok_or_else(|| {
            Error::consistency(
                format!("cycle outside the span of the degree-{} representatives", self.degree),
                format!("{v:?}"),
            )
        })
    }

    /// The canonical representative with the given class coordinates.
    pub fn combine(&self, coords: &Vector) -> Result<Vector> {
        if coords.len() != self.dim() {
            return Err(Error::Dimension(format!(
                "{} class coordinates for a space of dimension {}",
                coords.len(),
                self.dim()
            )));
        }
        let mut out = Vector::zeros(self.ambient);
        for (c, r) in coords.iter().zip(&self.representatives) {
            if !c.is_zero() {
                out.axpy(c, r);
            }
        }
        Ok(out)
    }

    pub fn same_class(&self, a: &Vector, b: &Vector) -> Result<bool> {
        Ok(self.coordinates(a)? == self.coordinates(b)?)
    }

    pub fn summary(&self) -> SpaceSummary {
        SpaceSummary {
            degree: self.degree,
            ambient_dim: self.ambient,
            cycles_dim: self.cycles.dim(),
            boundaries_dim: self.boundaries.dim(),
            dim: self.dim(),
            representatives: self.representatives.iter().map(Vector::to_strings).collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SpaceSummary {
    pub degree: usize,
    pub ambient_dim: usize,
    pub cycles_dim: usize,
    pub boundaries_dim: usize,
    pub dim: usize,
    pub representatives: Vec<Vec<String>>,
}

fn cocycles(alg: &HomAlgebra, basis: &[Cochain], p: usize) -> Result<Vec<Vector>> {
    let images = basis.iter().map(|f| delta_alpha(alg, f).map(Cochain::into_coeffs)).collect::<Result<Vec<_>>>()?;
    let m = Matrix::from_columns(&images, pow(alg.dim(), p + 2));
    let mut out = Vec::new();
    for k in kernel_basis(&m) {
        let mut v = Vector::zeros(pow(alg.dim(), p + 1));
        for (c, f) in k.iter().zip(basis) {
            if !c.is_zero() {
                v.axpy(c, f.coeffs());
            }
        }
        out.push(v);
    }
    Ok(out)
}

/// `H^p_alpha(A, M)` for `M = A` or `A*`. Normalized cocycles are preferred
/// as representatives when the algebra is unital.
pub fn cohomology(alg: &HomAlgebra, p: usize, coeffs: Coefficients) -> Result<SubquotientSpace> {
    alg.module(coeffs)?;
    let basis = cochain_space_basis(alg, p, coeffs)?;
    let mut candidates = Vec::new();
    if alg.is_unital() && p > 0 {
        let nb = normalized_cochain_basis(alg, p, coeffs)?;
        candidates.extend(cocycles(alg, &nb, p)?);
    }
    candidates.extend(cocycles(alg, &basis, p)?);
    let boundaries = if p == 0 || (p == 1 && !alg.is_regular()) {
        Vec::new()
    } else {
        cochain_space_basis(alg, p - 1, coeffs)?
            .iter()
            .map(|h| delta_alpha(alg, h).map(Cochain::into_coeffs))
            .collect::<Result<Vec<_>>>()?
    };
    SubquotientSpace::new(p, pow(alg.dim(), p + 1), &candidates, &boundaries)
}

fn boundary_matrix(alg: &HomAlgebra, n: usize) -> Result<Matrix> {
    let size = pow(alg.dim(), n + 1);
    let cols = (0..size)
        .map(|i| {
            let x = Chain::from_coeffs(alg.dim(), n, Vector::unit(size, i))?;
            Ok(boundary_b(alg, &x)?.into_coeffs())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_columns(&cols, pow(alg.dim(), n)))
}

fn honest_cycles(alg: &HomAlgebra, n: usize) -> Result<Vec<Vector>> {
    let size = pow(alg.dim(), n + 1);
    if n == 0 {
        return Ok((0..size).map(|i| Vector::unit(size, i)).collect());
    }
    Ok(kernel_basis(&boundary_matrix(alg, n)?))
}

fn boundary_images(alg: &HomAlgebra, n: usize) -> Result<Vec<Vector>> {
    let m = boundary_matrix(alg, n + 1)?;
    Ok((0..m.cols()).map(|j| m.column(j)).collect())
}

/// Hochschild homology `H_n(A)` of the un-normalized complex.
pub fn homology(alg: &HomAlgebra, n: usize) -> Result<SubquotientSpace> {
    SubquotientSpace::new(n, pow(alg.dim(), n + 1), &honest_cycles(alg, n)?, &boundary_images(alg, n)?)
}

/// Homology of `M(n) / D(n)`, computed inside `M(n)` as
/// `{x : b x in D(n-1)} / (im b + D(n))`. Genuine cycles come first among
/// the representative candidates.
pub fn normalized_homology(alg: &HomAlgebra, n: usize) -> Result<SubquotientSpace> {
    let quotient = NormalizedQuotient::new(alg, n)?;
    let size = pow(alg.dim(), n + 1);
    let mut candidates = honest_cycles(alg, n)?;
    if n > 0 {
        let below = degenerate_subspace(alg, n - 1)?;
        let m = boundary_matrix(alg, n)?;
        let cols: Vec<Vector> = (0..m.cols()).map(|j| below.reduce(&m.column(j))).collect();
        let rel = Matrix::from_columns(&cols, pow(alg.dim(), n));
        candidates.extend(kernel_basis(&rel));
    }
    let mut boundaries = boundary_images(alg, n)?;
    boundaries.extend(quotient.degenerate.basis().iter().cloned());
    SubquotientSpace::new(n, size, &candidates, &boundaries)
}

/// Degree caps and the perturbation budget for well-definedness checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EngineConfig {
    pub cochain_cap: usize,
    pub chain_cap: usize,
    pub perturbations: usize,
    pub seed: u64,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            cochain_cap: 3,
            chain_cap: 4,
            perturbations: 20,
            seed: 0,
        }
    }
}

/// A representative passed to or returned from an induced operation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Element {
    Cochain(Cochain),
    Chain(Chain),
}

impl Element {
    fn describe(&self) -> String {
        match self {
            Element::Cochain(f) => format!("{}-cochain of degree {}: {:?}", f.target(), f.degree(), f.coeffs()),
            Element::Chain(x) => format!("chain of degree {}: {:?}", x.degree(), x.coeffs()),
        }
    }

    fn coeffs(&self) -> &Vector {
        match self {
            Element::Cochain(f) => f.coeffs(),
            Element::Chain(x) => x.coeffs(),
        }
    }
}

type Slot<T> = OnceLock<Result<T>>;

fn slots<T>(n: usize) -> Vec<Slot<T>> {
    (0..n).map(|_| OnceLock::new()).collect()
}

/// Lazily assembled (co)homology of one algebra up to the degree caps.
///
/// Chains use the normalized complex when the algebra is unital and the
/// plain one otherwise.
pub struct Engine<'a> {
    alg: &'a HomAlgebra,
    config: EngineConfig,
    cohomology_a: Vec<Slot<SubquotientSpace>>,
    cohomology_dual: Vec<Slot<SubquotientSpace>>,
    homology: Vec<Slot<SubquotientSpace>>,
    /// Bases used for coboundary perturbations, indexed like `cohomology_*`.
    perturb_a: Vec<Slot<Vec<Cochain>>>,
    perturb_dual: Vec<Slot<Vec<Cochain>>>,
}

impl<'a> Engine<'a> {
    pub fn new(alg: &'a HomAlgebra, config: EngineConfig) -> Self {
        let c = config.cochain_cap + 1;
        Engine {
            alg,
            config,
            cohomology_a: slots(c),
            cohomology_dual: slots(c),
            homology: slots(config.chain_cap + 1),
            perturb_a: slots(c),
            perturb_dual: slots(c),
        }
    }

    pub fn algebra(&self) -> &'a HomAlgebra {
        self.alg
    }

    pub fn config(&self) -> &EngineConfig {
        &self.config
    }

    pub fn normalized_chains(&self) -> bool {
        self.alg.is_unital()
    }

    fn check_cochain_degree(&self, p: usize) -> Result<()> {
        if p > self.config.cochain_cap {
            return Err(Error::IndexOutOfRange(format!(
                "cochain degree {p} exceeds the cap {}",
                self.config.cochain_cap
            )));
        }
        Ok(())
    }

    pub fn cohomology(&self, p: usize, coeffs: Coefficients) -> Result<&SubquotientSpace> {
        self.check_cochain_degree(p)?;
        let slot = match coeffs {
            Coefficients::Algebra => &self.cohomology_a[p],
            Coefficients::Dual => &self.cohomology_dual[p],
        };
        slot.get_or_init(|| cohomology(self.alg, p, coeffs)).as_ref().map_err(Clone::clone)
    }

    pub fn homology(&self, n: usize) -> Result<&SubquotientSpace> {
        if n > self.config.chain_cap {
            return Err(Error::IndexOutOfRange(format!(
                "chain degree {n} exceeds the cap {}",
                self.config.chain_cap
            )));
        }
        self.homology[n]
            .get_or_init(|| {
                if self.normalized_chains() {
                    normalized_homology(self.alg, n)
                } else {
                    homology(self.alg, n)
                }
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    fn space_of(&self, e: &Element) -> Result<&SubquotientSpace> {
        match e {
            Element::Cochain(f) => self.cohomology(f.degree(), f.target()),
            Element::Chain(x) => self.homology(x.degree()),
        }
    }

    pub fn coordinates(&self, e: &Element) -> Result<Vector> {
        self.space_of(e)?.coordinates(e.coeffs())
    }

    pub fn cochain_coordinates(&self, f: &Cochain) -> Result<Vector> {
        self.cohomology(f.degree(), f.target())?.coordinates(f.coeffs())
    }

    pub fn chain_coordinates(&self, x: &Chain) -> Result<Vector> {
        self.homology(x.degree())?.coordinates(x.coeffs())
    }

    pub fn cochain_from_coordinates(&self, p: usize, coeffs: Coefficients, c: &Vector) -> Result<Cochain> {
        let v = self.cohomology(p, coeffs)?.combine(c)?;
        Cochain::from_coeffs(self.alg.dim(), p, coeffs, v)
    }

    pub fn chain_from_coordinates(&self, n: usize, c: &Vector) -> Result<Chain> {
        let v = self.homology(n)?.combine(c)?;
        Chain::from_coeffs(self.alg.dim(), n, v)
    }

    /// Canonical representatives of the basis classes of `H^p`.
    pub fn cochain_classes(&self, p: usize, coeffs: Coefficients) -> Result<Vec<Cochain>> {
        self.cohomology(p, coeffs)?
            .representatives()
            .iter()
            .map(|v| Cochain::from_coeffs(self.alg.dim(), p, coeffs, v.clone()))
            .collect()
    }

    pub fn chain_classes(&self, n: usize) -> Result<Vec<Chain>> {
        self.homology(n)?
            .representatives()
            .iter()
            .map(|v| Chain::from_coeffs(self.alg.dim(), n, v.clone()))
            .collect()
    }

    fn canonical(&self, e: &Element) -> Result<Element> {
        let c = self.coordinates(e)?;
        Ok(match e {
            Element::Cochain(f) => Element::Cochain(self.cochain_from_coordinates(f.degree(), f.target(), &c)?),
            Element::Chain(x) => Element::Chain(self.chain_from_coordinates(x.degree(), &c)?),
        })
    }

    /// Normalized cochains when the algebra is unital, so that perturbed
    /// representatives stay inside the complex the dual operations see.
    fn perturbation_basis(&self, p: usize, coeffs: Coefficients) -> Result<&[Cochain]> {
        let slot = match coeffs {
            Coefficients::Algebra => &self.perturb_a[p],
            Coefficients::Dual => &self.perturb_dual[p],
        };
        slot.get_or_init(|| {
            if p == 0 && !self.alg.is_regular() {
                Ok(Vec::new())
            } else if self.alg.is_unital() && p > 0 {
                normalized_cochain_basis(self.alg, p, coeffs)
            } else {
                cochain_space_basis(self.alg, p, coeffs)
            }
        })
        .as_ref()
        .map(Vec::as_slice)
        .map_err(Clone::clone)
    }

    fn perturb(&self, e: &Element, rng: &mut impl Rng) -> Result<Element> {
        match e {
            Element::Cochain(f) => {
                let p = f.degree();
                if p == 0 {
                    return Ok(e.clone());
                }
                let basis = self.perturbation_basis(p - 1, f.target())?;
                let mut h = Cochain::zero(self.alg.dim(), p - 1, f.target());
                for b in basis {
                    h.axpy(&small_scalar(rng, 3), b)?;
                }
                if h.is_zero() {
                    return Ok(e.clone());
                }
                Ok(Element::Cochain(f.add(&delta_alpha(self.alg, &h)?)?))
            }
            Element::Chain(x) => {
                let n = x.degree();
                let dim = self.alg.dim();
                let size = pow(dim, n + 2);
                let mut y = Vector::zeros(size);
                for _ in 0..6 {
                    let i = rng.gen_range(0..size);
                    y.0[i] += small_scalar(rng, 3);
                }
                let by = boundary_b(self.alg, &Chain::from_coeffs(dim, n + 1, y)?)?;
                Ok(Element::Chain(x.add(&by)?))
            }
        }
    }

    /// Evaluates `op` on representatives, checks the result is a cycle,
    /// re-evaluates on perturbed representatives and returns the canonical
    /// representative of the common class.
    pub fn induced(
        &self,
        label: &str,
        operands: &[Element],
        op: impl Fn(&[Element]) -> Result<Element>,
    ) -> Result<Element> {
        for e in operands {
            self.require_cycle(e)?;
        }
        let out = op(operands)?;
        let coords = self.coordinates(&out).map_err(|err| match err {
            Error::NotACycle(_) => Error::consistency(
                format!("{label} of cycles is not a cycle"),
                operands.iter().map(Element::describe).collect::<Vec<_>>().join("; "),
            ),
            other => other,
        })?;
        let key = operands.iter().map(|e| format!("{:?}", e.coeffs())).collect::<Vec<_>>().join("|");
        for k in 0..self.config.perturbations {
            let mut rng = stream(self.config.seed, &format!("{label}:{key}"), k as u64);
            let moved = operands.iter().map(|e| self.perturb(e, &mut rng)).collect::<Result<Vec<_>>>()?;
            let again = op(&moved)?;
            let c2 = self.coordinates(&again).map_err(|err| match err {
                Error::NotACycle(_) => Error::consistency(
                    format!("{label} of perturbed cycles is not a cycle"),
                    moved.iter().map(Element::describe).collect::<Vec<_>>().join("; "),
                ),
                other => other,
            })?;
            if c2 != coords {
                return Err(Error::consistency(
                    format!("{label} is not well defined on classes"),
                    format!(
                        "operands [{}] give class {:?}, perturbed operands [{}] give {:?}",
                        operands.iter().map(Element::describe).collect::<Vec<_>>().join("; "),
                        coords,
                        moved.iter().map(Element::describe).collect::<Vec<_>>().join("; "),
                        c2
                    ),
                ));
            }
        }
        self.canonical(&out)
    }

    /// Cochains must be cocycles; chains must be genuine cycles, since the
    /// cap product by a non-normalized cochain does not see the quotient.
    fn require_cycle(&self, e: &Element) -> Result<()> {
        match e {
            Element::Cochain(f) => {
                if !self.cohomology(f.degree(), f.target())?.is_cycle(f.coeffs()) {
                    return Err(Error::NotACycle(format!("degree-{} cochain is not a cocycle", f.degree())));
                }
            }
            Element::Chain(x) => {
                self.homology(x.degree())?;
                if x.degree() > 0 && !boundary_b(self.alg, x)?.is_zero() {
                    return Err(Error::NotACycle(format!("degree-{} chain is not a cycle", x.degree())));
                }
            }
        }
        Ok(())
    }

    pub fn induced_cup(&self, f: &Cochain, g: &Cochain) -> Result<Cochain> {
        let alg = self.alg;
        cochain_of(self.induced("cup", &[Element::Cochain(f.clone()), Element::Cochain(g.clone())], |o| {
            Ok(Element::Cochain(cup(alg, as_cochain(&o[0]), as_cochain(&o[1]))?))
        })?)
    }

    pub fn induced_bracket(&self, f: &Cochain, g: &Cochain) -> Result<Cochain> {
        let alg = self.alg;
        cochain_of(self.induced("bracket", &[Element::Cochain(f.clone()), Element::Cochain(g.clone())], |o| {
            Ok(Element::Cochain(bracket(alg, as_cochain(&o[0]), as_cochain(&o[1]))?))
        })?)
    }

    /// `[f] . [m]` in `H(A, A*)`.
    pub fn induced_dot(&self, f: &Cochain, m: &DualCochain) -> Result<DualCochain> {
        let alg = self.alg;
        cochain_of(self.induced("dot", &[Element::Cochain(f.clone()), Element::Cochain(m.clone())], |o| {
            Ok(Element::Cochain(dot_product(alg, as_cochain(&o[0]), as_cochain(&o[1]))?))
        })?)
    }

    pub fn induced_cap(&self, f: &Cochain, x: &Chain) -> Result<Chain> {
        let alg = self.alg;
        chain_of(self.induced("cap", &[Element::Cochain(f.clone()), Element::Chain(x.clone())], |o| {
            Ok(Element::Chain(cap(alg, as_cochain(&o[0]), as_chain(&o[1]))?))
        })?)
    }

    pub fn induced_lie(&self, f: &Cochain, x: &Chain) -> Result<Chain> {
        let alg = self.alg;
        chain_of(self.induced("lie", &[Element::Cochain(f.clone()), Element::Chain(x.clone())], |o| {
            Ok(Element::Chain(lie(alg, as_cochain(&o[0]), as_chain(&o[1]))?))
        })?)
    }

    /// Connes' `B` on normalized homology.
    pub fn induced_connes_b(&self, x: &Chain) -> Result<Chain> {
        if !self.normalized_chains() {
            return Err(Error::NotUnital("B acts on the normalized complex".into()));
        }
        let alg = self.alg;
        chain_of(self.induced("B", &[Element::Chain(x.clone())], |o| {
            Ok(Element::Chain(connes_b(alg, as_chain(&o[0]))?))
        })?)
    }

    pub fn induced_b_star(&self, m: &DualCochain) -> Result<DualCochain> {
        let alg = self.alg;
        cochain_of(self.induced("B*", &[Element::Cochain(m.clone())], |o| {
            Ok(Element::Cochain(b_star(alg, as_cochain(&o[0]))?))
        })?)
    }
}

fn as_cochain(e: &Element) -> &Cochain {
    match e {
        Element::Cochain(f) => f,
        Element::Chain(_) => unreachable!("operand kinds are fixed by the caller"),
    }
}

fn as_chain(e: &Element) -> &Chain {
    match e {
        Element::Chain(x) => x,
        Element::Cochain(_) => unreachable!("operand kinds are fixed by the caller"),
    }
}

fn cochain_of(e: Element) -> Result<Cochain> {
    match e {
        Element::Cochain(f) => Ok(f),
        Element::Chain(_) => Err(Error::consistency("expected a cochain result", "")),
    }
}

fn chain_of(e: Element) -> Result<Chain> {
    match e {
        Element::Chain(x) => Ok(x),
        Element::Cochain(_) => Err(Error::consistency("expected a chain result", "")),
    }
}

/// `<m, a_0 (x) a_1 ... a_n> = m(a_1, ..., a_n)(alpha^{n-1}(a_0))` for an
/// `A*`-valued cochain of degree `n`.
pub fn pairing(alg: &HomAlgebra, m: &DualCochain, x: &Chain) -> Result<Scalar> {
    if m.target() != Coefficients::Dual {
        return Err(Error::Dimension("the pairing needs an A*-valued cochain".into()));
    }
    if m.degree() != x.degree() {
        return Err(Error::Dimension(format!(
            "pairing a degree-{} cochain with a degree-{} chain",
            m.degree(),
            x.degree()
        )));
    }
    let w = m.degree() as i32 - 1;
    let mut acc = Scalar::zero();
    for (a, c) in x.terms() {
        let head = alg.alpha_pow_col(w, a[0])?;
        let val = m.value(&a[1..]);
        for (k, h) in head {
            acc += c * h * &val[*k];
        }
    }
    Ok(acc)
}

/// `B*(m) = (-1)^{|m|} m o B`, transported through [`pairing`]; lowers the
/// degree by one.
pub fn b_star(alg: &HomAlgebra, m: &DualCochain) -> Result<DualCochain> {
    if m.target() != Coefficients::Dual {
        return Err(Error::Dimension("B* acts on A*-valued cochains".into()));
    }
    let k = m.degree();
    if k == 0 {
        return Err(Error::IndexOutOfRange("B* on a degree-0 cochain".into()));
    }
    let n = k - 1;
    let dim = alg.dim();
    let sign = Scalar::sign(k as i64);
    let shift = 1 - n as i32;
    let mut coeffs = Vector::zeros(pow(dim, n + 1));
    for (idx, a) in crate::tensor::multi_indices(dim, n).enumerate() {
        for c in 0..dim {
            let head = alg.alpha_pow_col(shift, c)?;
            let mut slots: Vec<Vector> = vec![crate::tensor::from_sparse(head, dim)];
            slots.extend(a.iter().map(|&i| Vector::unit(dim, i)));
            let y = connes_b(alg, &Chain::elementary(dim, &slots))?;
            coeffs.0[idx * dim + c] = &sign * pairing(alg, m, &y)?;
        }
    }
    Cochain::from_coeffs(dim, n, Coefficients::Dual, coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn random_chain(dim: usize, n: usize, seed: u64) -> Chain {
        let mut rng = stream(seed, "test chain", n as u64);
        let v = (0..pow(dim, n + 1)).map(|_| small_scalar(&mut rng, 3)).collect();
        Chain::from_coeffs(dim, n, v).unwrap()
    }

    fn random_dual(alg: &HomAlgebra, p: usize, seed: u64) -> Cochain {
        let mut rng = stream(seed, "test dual", p as u64);
        let mut m = Cochain::zero(alg.dim(), p, Coefficients::Dual);
        for b in cochain_space_basis(alg, p, Coefficients::Dual).unwrap() {
            m.axpy(&small_scalar(&mut rng, 3), &b).unwrap();
        }
        m
    }

    #[test]
    fn coboundary_on_dual_is_adjoint_to_b() {
        for alg in fixtures::regular_unital() {
            for n in 0..3 {
                for seed in 0..3 {
                    let m = random_dual(&alg, n, seed);
                    let x = random_chain(alg.dim(), n + 1, seed);
                    let lhs = pairing(&alg, &delta_alpha(&alg, &m).unwrap(), &x).unwrap();
                    let rhs = pairing(&alg, &m, &boundary_b(&alg, &x).unwrap()).unwrap();
                    assert_eq!(lhs, rhs, "{} n={n}", alg.name());
                }
            }
        }
    }

    #[test]
    fn normalized_homology_matches_plain_with_genuine_cycle_representatives() {
        for alg in fixtures::regular_unital() {
            for n in 0..4 {
                let nh = normalized_homology(&alg, n).unwrap();
                assert_eq!(nh.dim(), homology(&alg, n).unwrap().dim(), "{} n={n}", alg.name());
                for r in nh.representatives() {
                    let x = Chain::from_coeffs(alg.dim(), n, r.clone()).unwrap();
                    assert!(n == 0 || boundary_b(&alg, &x).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn coordinates_round_trip_and_reject_non_cycles() {
        let alg = fixtures::dual_numbers();
        let e = Engine::new(&alg, EngineConfig::default());
        let h = e.cohomology(1, Coefficients::Algebra).unwrap();
        for (i, r) in h.representatives().iter().enumerate() {
            assert_eq!(h.coordinates(r).unwrap(), Vector::unit(h.dim(), i));
        }
        let id = Cochain::identity(&alg);
        // the identity of k[x]/(x^2) is a derivation only if mu = 0
        assert!(matches!(e.induced_cup(&id, &id), Err(Error::NotACycle(_))));
    }

    #[test]
    fn perturbation_detects_operations_that_ignore_classes() {
        let alg = fixtures::dual_numbers();
        let e = Engine::new(&alg, EngineConfig::default());
        // B^1 = 0 for a commutative algebra, so use degree 2
        let f = e.cochain_classes(2, Coefficients::Algebra).unwrap().remove(0);
        // scaling by a representative-dependent factor cannot descend
        let res = e.induced("rescale", &[Element::Cochain(f)], |o| {
            let f = as_cochain(&o[0]);
            let norm: Scalar = f.coeffs().iter().map(|x| x * x).sum();
            Ok(Element::Cochain(f.scale(&norm)))
        });
        assert!(matches!(res, Err(Error::InternalConsistency { .. })), "{res:?}");
    }

    #[test]
    fn b_and_b_star_descend_on_regular_unital_fixtures() {
        for alg in fixtures::regular_unital() {
            let e = Engine::new(&alg, EngineConfig::default());
            for n in 0..3 {
                for x in e.chain_classes(n).unwrap() {
                    e.induced_connes_b(&x).unwrap();
                }
            }
            for p in 1..4 {
                for m in e.cochain_classes(p, Coefficients::Dual).unwrap() {
                    e.induced_b_star(&m).unwrap();
                }
            }
        }
    }

    #[test]
    fn delta_from_theta_on_dual_numbers() {
        use crate::bv::{bv_defect, bv_from_symmetric};
        let alg = fixtures::dual_numbers();
        let e = Engine::new(&alg, EngineConfig::default());
        let theta = crate::algebra::find_symmetric_structure(&alg).unwrap().unwrap();
        let delta = bv_from_symmetric(&e, &theta).unwrap();
        assert!(delta.squares_to_zero().unwrap());
        assert!(delta.matrices[1..].iter().any(|m| m.data().iter().any(|x| !x.is_zero())));
        for p in 0..4 {
            for q in 0..4 {
                if p + q == 0 || p + q > 3 {
                    continue;
                }
                for f in e.cochain_classes(p, Coefficients::Algebra).unwrap() {
                    for g in e.cochain_classes(q, Coefficients::Algebra).unwrap() {
                        assert!(bv_defect(&e, &delta, &f, &g).unwrap().is_zero(), "p={p} q={q}");
                    }
                }
            }
        }
    }

    #[test]
    fn homology_class_route() {
        use crate::bv::find_bv_homology_class;
        let alg = fixtures::k_times_k();
        let e = Engine::new(&alg, EngineConfig::default());
        let (c, delta) = find_bv_homology_class(&e).unwrap().unwrap();
        assert_eq!(c.degree(), 0);
        assert!(delta.squares_to_zero().unwrap());
        // H^n(k[x]/(x^2)) never vanishes, so no class can work
        let alg = fixtures::dual_numbers();
        assert!(find_bv_homology_class(&Engine::new(&alg, EngineConfig::default())).unwrap().is_none());
    }
}
