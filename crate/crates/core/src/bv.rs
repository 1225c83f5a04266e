//! Batalin-Vilkovisky operators on `H^*(A, A)`, obtained either by
//! transporting `B*` through a symmetric structure or from a homology class
//! that turns the cap product into an isomorphism.

use serde::Serialize;

use crate::algebra::{Coefficients, SymmetricStructure};
use crate::chain::Chain;
use crate::cochain::{Cochain, DualCochain};
use crate::error::{Error, Result};
use crate::homology::Engine;
use crate::linalg::{solve, Matrix, Vector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum BvSource {
    SymmetricStructure,
    HomologyClass { degree: usize },
}

/// `Delta` in class coordinates: `matrices[p]` maps `H^p` to `H^{p-1}`
/// (`matrices[0]` is empty).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BvOperator {
    pub source: BvSource,
    pub matrices: Vec<Matrix>,
}

impl BvOperator {
    pub fn max_degree(&self) -> usize {
        self.matrices.len() - 1
    }

    /// `Delta[f]` as a canonical representative; zero in degree 0.
    pub fn apply(&self, engine: &Engine<'_>, f: &Cochain) -> Result<Cochain> {
        let p = f.degree();
        if p > self.max_degree() {
            return Err(Error::IndexOutOfRange(format!("Delta is assembled up to degree {}", self.max_degree())));
        }
        if p == 0 {
            return Ok(Cochain::zero(f.dim(), 0, Coefficients::Algebra));
        }
        let c = engine.cochain_coordinates(f)?;
        engine.cochain_from_coordinates(p - 1, Coefficients::Algebra, &self.matrices[p].mul_vec(&c)?)
    }

    /// `Delta o Delta` vanishes in every assembled degree.
    pub fn squares_to_zero(&self) -> Result<bool> {
        for p in 2..self.matrices.len() {
            let sq = self.matrices[p - 1].mul(&self.matrices[p])?;
            if sq.data().iter().any(|x| !x.is_zero()) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `Theta(1)` as a degree-0 `A*`-valued cochain.
pub fn theta_unit(engine: &Engine<'_>, theta: &SymmetricStructure) -> Result<DualCochain> {
    let alg = engine.algebra();
    let unit = alg.require_unit("Theta(1)")?;
    let v = theta.theta.mul_vec(unit)?;
    Cochain::from_coeffs(alg.dim(), 0, Coefficients::Dual, v)
}

/// Matrix of `[f] -> [f . m]` from `H^p(A, A)` to `H^{p+k}(A, A*)`.
pub fn transport_matrix(engine: &Engine<'_>, m: &DualCochain, p: usize) -> Result<Matrix> {
    let target = engine.cohomology(p + m.degree(), Coefficients::Dual)?;
    let cols = engine
        .cochain_classes(p, Coefficients::Algebra)?
        .iter()
        .map(|f| engine.cochain_coordinates(&engine.induced_dot(f, m)?))
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_columns(&cols, target.dim()))
}

/// Checks that `[f] -> [f . Theta(1)]` is an isomorphism in every degree up to
/// the cap; returns the per-degree matrices.
pub fn transported_isomorphism(engine: &Engine<'_>, theta: &SymmetricStructure) -> Result<Vec<Matrix>> {
    let m = theta_unit(engine, theta)?;
    (0..=engine.config().cochain_cap)
        .map(|p| {
            let t = transport_matrix(engine, &m, p)?;
            if !t.is_square() || (t.rows() > 0 && t.inverse().is_none()) {
                return Err(Error::HypothesisNotSatisfied(format!(
                    "f -> f . Theta(1) is not an isomorphism in degree {p} ({}x{})",
                    t.rows(),
                    t.cols()
                )));
            }
            Ok(t)
        })
        .collect()
}

fn solve_columns(iso: &Matrix, rhs: &[Vector], what: &str) -> Result<Matrix> {
    let cols = rhs
        .iter()
        .map(|y| {
            solve(iso, y)?.ok_or_else(|| Error::consistency(format!("{what}: target class outside the image"), format!("{y:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_columns(&cols, iso.cols()))
}

/// `Delta` defined by `[Delta f] . m = B*([f] . m)` with `m = Theta(1)`.
pub fn bv_from_symmetric(engine: &Engine<'_>, theta: &SymmetricStructure) -> Result<BvOperator> {
    let alg = engine.algebra();
    let report = theta.validate(alg)?;
    if let Some(bad) = report.first_failure() {
        return Err(Error::HypothesisNotSatisfied(format!(
            "Theta is not a symmetric structure: {} fails at {}",
            bad.name,
            bad.witness.clone().unwrap_or_default()
        )));
    }
    let m = theta_unit(engine, theta)?;
    let isos = transported_isomorphism(engine, theta)?;
    let mut matrices = vec![Matrix::zeros(0, isos[0].cols())];
    for p in 1..isos.len() {
        let rhs = engine
            .cochain_classes(p, Coefficients::Algebra)?
            .iter()
            .map(|f| engine.cochain_coordinates(&engine.induced_b_star(&engine.induced_dot(f, &m)?)?))
            .collect::<Result<Vec<_>>>()?;
        matrices.push(solve_columns(&isos[p - 1], &rhs, "Delta via Theta")?);
    }
    Ok(BvOperator {
        source: BvSource::SymmetricStructure,
        matrices,
    })
}

/// Matrix of `[f] -> [i_f c]` from `H^n(A, A)` to `H_{d-n}(A)`.
fn cap_matrix(engine: &Engine<'_>, c: &Chain, n: usize) -> Result<Matrix> {
    let target = engine.homology(c.degree() - n)?;
    let cols = engine
        .cochain_classes(n, Coefficients::Algebra)?
        .iter()
        .map(|f| engine.chain_coordinates(&engine.induced_cap(f, c)?))
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_columns(&cols, target.dim()))
}

/// `Delta` defined by `i_{Delta f} c = B(i_f c)`, for a class `c` of degree
/// `d` with `B c = 0` such that `f -> i_f c` is an isomorphism
/// `H^n -> H_{d-n}` for every `n` up to the cochain cap (with `H^n = 0` for `n > d`).
pub fn bv_from_homology_class(engine: &Engine<'_>, c: &Chain) -> Result<BvOperator> {
    let d = c.degree();
    let cap = engine.config().cochain_cap;
    if d + 1 > engine.config().chain_cap {
        return Err(Error::IndexOutOfRange(format!(
            "checking B c = 0 for a degree-{d} class needs chains of degree {}",
            d + 1
        )));
    }
    let bc = engine.induced_connes_b(c)?;
    if !bc.is_zero() {
        return Err(Error::HypothesisNotSatisfied("B c is not zero in homology".into()));
    }
    let top = d.min(cap);
    for n in top + 1..=cap {
        if engine.cohomology(n, Coefficients::Algebra)?.dim() != 0 {
            return Err(Error::HypothesisNotSatisfied(format!(
                "H^{n} is nonzero but the cap product lands in negative degree"
            )));
        }
    }
    let isos = (0..=top)
        .map(|n| {
            let m = cap_matrix(engine, c, n)?;
            if !m.is_square() || (m.rows() > 0 && m.inverse().is_none()) {
                return Err(Error::HypothesisNotSatisfied(format!(
                    "f -> i_f c is not an isomorphism H^{n} -> H_{} ({}x{})",
                    d - n,
                    m.rows(),
                    m.cols()
                )));
            }
            Ok(m)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut matrices = vec![Matrix::zeros(0, isos[0].cols())];
    for n in 1..=top {
        let rhs = engine
            .cochain_classes(n, Coefficients::Algebra)?
            .iter()
            .map(|f| engine.chain_coordinates(&engine.induced_connes_b(&engine.induced_cap(f, c)?)?))
            .collect::<Result<Vec<_>>>()?;
        matrices.push(solve_columns(&isos[n - 1], &rhs, "Delta via a homology class")?);
    }
    Ok(BvOperator {
        source: BvSource::HomologyClass { degree: d },
        matrices,
    })
}

/// Scans the basis classes of `H_d` for `d` below the chain cap and returns
/// the first class satisfying the hypotheses of [`bv_from_homology_class`].
pub fn find_bv_homology_class(engine: &Engine<'_>) -> Result<Option<(Chain, BvOperator)>> {
    for d in 0..engine.config().chain_cap {
        let classes = engine.chain_classes(d)?;
        let mut candidates = classes.clone();
        if classes.len() > 1 {
            let mut sum = classes[0].clone();
            for c in &classes[1..] {
                sum = sum.add(c)?;
            }
            candidates.push(sum);
        }
        for c in candidates {
            match bv_from_homology_class(engine, &c) {
                Ok(op) => return Ok(Some((c, op))),
                Err(Error::HypothesisNotSatisfied(_)) => continue,
                Err(e) => return Err(e),
            }
        }
    }
    Ok(None)
}

/// `[f, g] + (-1)^p (Delta(f u g) - Delta f u g - (-1)^p f u Delta g)` in class
/// coordinates of `H^{p+q-1}`; zero exactly when the BV identity holds.
pub fn bv_defect(engine: &Engine<'_>, delta: &BvOperator, f: &Cochain, g: &Cochain) -> Result<Vector> {
    let p = f.degree();
    let fg = engine.induced_cup(f, g)?;
    let mut rhs = delta.apply(engine, &fg)?;
    let df = delta.apply(engine, f)?;
    let dg = delta.apply(engine, g)?;
    if p > 0 {
        rhs = rhs.sub(&engine.induced_cup(&df, g)?)?;
    }
    if g.degree() > 0 {
        rhs.axpy(&-crate::scalar::Scalar::sign(p as i64), &engine.induced_cup(f, &dg)?)?;
    }
    let br = engine.induced_bracket(f, g)?;
    let mut total = br;
    total.axpy(&crate::scalar::Scalar::sign(p as i64), &rhs)?;
    engine.cochain_coordinates(&total)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ThetaSource {
    Given,
    Found,
    None,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThetaReport {
    pub source: ThetaSource,
    pub valid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<String>>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorStatus {
    Holds,
    IdentityFailed,
    HypothesisFailed,
}

/// The BV identity on one pair of basis classes `(H^p)_i`, `(H^q)_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairCheck {
    pub p: usize,
    pub i: usize,
    pub q: usize,
    pub j: usize,
    pub holds: bool,
    pub defect: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratorReport {
    pub status: GeneratorStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub source: Option<BvSource>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    /// `delta[p]` is the matrix of `H^p -> H^{p-1}` in class coordinates.
    pub delta: Vec<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub squares_to_zero: Option<bool>,
    pub pairs: Vec<PairCheck>,
}

impl GeneratorReport {
    fn hypothesis_failed(reason: String) -> Self {
        GeneratorReport {
            status: GeneratorStatus::HypothesisFailed,
            source: None,
            reason: Some(reason),
            delta: Vec::new(),
            squares_to_zero: None,
            pairs: Vec::new(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BvStatus {
    /// Some generator was constructed and every check on it holds.
    Bv,
    IdentityFailed,
    HypothesisFailed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BvReport {
    pub algebra: String,
    pub max_degree: usize,
    pub cohomology_dims: Vec<usize>,
    pub theta: ThetaReport,
    pub via_theta: GeneratorReport,
    pub via_homology_class: GeneratorReport,
    pub status: BvStatus,
}

/// Checks `Delta^2 = 0` and the BV identity on every pair of basis classes
/// with `1 <= p + q <= cap`.
pub fn check_generator(engine: &Engine<'_>, delta: &BvOperator) -> Result<GeneratorReport> {
    let cap = delta.max_degree();
    let classes = (0..=cap)
        .map(|p| engine.cochain_classes(p, Coefficients::Algebra))
        .collect::<Result<Vec<_>>>()?;
    let mut pairs = Vec::new();
    for p in 0..=cap {
        for q in 0..=cap - p {
            if p + q == 0 {
                continue;
            }
            for (i, f) in classes[p].iter().enumerate() {
                for (j, g) in classes[q].iter().enumerate() {
                    let d = bv_defect(engine, delta, f, g)?;
                    pairs.push(PairCheck {
                        p,
                        i,
                        q,
                        j,
                        holds: d.is_zero(),
                        defect: d.to_strings(),
                    });
                }
            }
        }
    }
    let squares_to_zero = delta.squares_to_zero()?;
    let ok = squares_to_zero && pairs.iter().all(|c| c.holds);
    Ok(GeneratorReport {
        status: if ok {
            GeneratorStatus::Holds
        } else {
            GeneratorStatus::IdentityFailed
        },
        source: Some(delta.source),
        reason: None,
        delta: delta.matrices.iter().map(Matrix::to_string_rows).collect(),
        squares_to_zero: Some(squares_to_zero),
        pairs,
    })
}

fn generator_report(engine: &Engine<'_>, delta: Result<BvOperator>) -> Result<GeneratorReport> {
    match delta {
        Ok(d) => check_generator(engine, &d),
        Err(Error::HypothesisNotSatisfied(m)) => Ok(GeneratorReport::hypothesis_failed(m)),
        Err(e) => Err(e),
    }
}

/// Both routes to a BV generator: through `theta` (searched for when not
/// given) and through a homology class.
pub fn bv_report(engine: &Engine<'_>, theta: Option<&SymmetricStructure>) -> Result<BvReport> {
    let alg = engine.algebra();
    alg.require_regular("a BV generator")?;
    alg.require_unit("a BV generator")?;
    let cap = engine.config().cochain_cap;
    let cohomology_dims = (0..=cap)
        .map(|p| Ok(engine.cohomology(p, Coefficients::Algebra)?.dim()))
        .collect::<Result<Vec<_>>>()?;

    let (source, theta) = match theta {
        Some(t) => (ThetaSource::Given, Some(t.clone())),
        None => match crate::algebra::find_symmetric_structure(alg)? {
            Some(t) => (ThetaSource::Found, Some(t)),
            None => (ThetaSource::None, None),
        },
    };
    let (theta_report, via_theta) = match &theta {
        Some(t) => {
            let report = t.validate(alg)?;
            let failure = report
                .first_failure()
                .map(|c| format!("{} fails at {}", c.name, c.witness.clone().unwrap_or_default()));
            (
                ThetaReport {
                    source,
                    valid: failure.is_none(),
                    failure,
                    matrix: Some(t.theta.to_string_rows()),
                },
                generator_report(engine, bv_from_symmetric(engine, t))?,
            )
        }
        None => (
            ThetaReport {
                source,
                valid: false,
                failure: None,
                matrix: None,
            },
            GeneratorReport::hypothesis_failed("no symmetric structure".into()),
        ),
    };
    let via_homology_class = match find_bv_homology_class(engine)? {
        Some((_, d)) => check_generator(engine, &d)?,
        None => GeneratorReport::hypothesis_failed(
            "no homology class turns the cap product into an isomorphism".into(),
        ),
    };
    let generators = [&via_theta, &via_homology_class];
    let status = if generators.iter().any(|g| g.status == GeneratorStatus::IdentityFailed) {
        BvStatus::IdentityFailed
    } else if generators.iter().any(|g| g.status == GeneratorStatus::Holds) {
        BvStatus::Bv
    } else {
        BvStatus::HypothesisFailed
    };
    Ok(BvReport {
        algebra: alg.name().to_string(),
        max_degree: cap,
        cohomology_dims,
        theta: theta_report,
        via_theta,
        via_homology_class,
        status,
    })
}
