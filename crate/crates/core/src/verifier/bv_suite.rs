use crate::algebra::{find_symmetric_structure, SymmetricStructure};
use crate::bv::{bv_defect, bv_from_symmetric, find_bv_homology_class, transported_isomorphism, BvOperator};
use crate::chain::Chain;
use crate::cochain::{Cochain, DualCochain};
use crate::error::{Error, Result};
use crate::homology::Engine;
use crate::scalar::Scalar;
use crate::Coefficients;

use super::{Runner, Trial, Witness};

pub(crate) const IDENTITIES: &[(&str, bool)] = &[
    ("i_[f,g] expands through B and the cup product on homology", true),
    ("[f,g] . m expands through B* and the cup product on cohomology", true),
    ("Theta is a symmetric structure", true),
    ("f -> f . Theta(1) is an isomorphism on cohomology", true),
    ("Delta from Theta squares to zero", true),
    ("BV identity with Delta from Theta", true),
    ("Delta from a homology class squares to zero", true),
    ("BV identity with Delta from a homology class", true),
];

fn sign(e: usize) -> Scalar {
    Scalar::sign(e as i64)
}

/// `(-1)^(q+1) i_(f u g) B x + (-1)^(p+1) B i_(f u g) x + i_f B i_g x +
/// (-1)^(pq+p+q) i_g B i_f x - i_[f,g] x` on classes; terms outside the
/// nonnegative degrees vanish.
fn cap_expansion(e: &Engine<'_>, f: &Cochain, g: &Cochain, x: &Chain) -> Result<Chain> {
    let (p, q, n) = (f.degree(), g.degree(), x.degree());
    let cap_or_none = |f: &Cochain, x: &Chain| -> Result<Option<Chain>> {
        if f.degree() > x.degree() {
            Ok(None)
        } else {
            e.induced_cap(f, x).map(Some)
        }
    };
    let fg = e.induced_cup(f, g)?;
    let mut acc = Chain::zero(e.algebra().dim(), n + 1 - p - q);
    let mut add = |c: Scalar, t: Option<Chain>| -> Result<()> {
        if let Some(t) = t {
            acc.axpy(&c, &t)?;
        }
        Ok(())
    };
    add(sign(q + 1), cap_or_none(&fg, &e.induced_connes_b(x)?)?)?;
    if let Some(y) = cap_or_none(&fg, x)? {
        add(sign(p + 1), Some(e.induced_connes_b(&y)?))?;
    }
    if let Some(y) = cap_or_none(g, x)? {
        add(Scalar::one(), cap_or_none(f, &e.induced_connes_b(&y)?)?)?;
    }
    if let Some(y) = cap_or_none(f, x)? {
        add(sign(p * q + p + q), cap_or_none(g, &e.induced_connes_b(&y)?)?)?;
    }
    add(-Scalar::one(), cap_or_none(&e.induced_bracket(f, g)?, x)?)?;
    Ok(acc)
}

/// `(-1)^(p+1) B*((f u g) . m) + f . B*(g . m) + (-1)^(pq+p+q) g . B*(f . m)
/// + (-1)^(q+1) (f u g) . B*(m) - [f,g] . m` on classes.
fn dot_expansion(e: &Engine<'_>, f: &Cochain, g: &Cochain, m: &DualCochain) -> Result<DualCochain> {
    let (p, q, k) = (f.degree(), g.degree(), m.degree());
    let bs = |m: &DualCochain| -> Result<Option<DualCochain>> {
        if m.degree() == 0 {
            Ok(None)
        } else {
            e.induced_b_star(m).map(Some)
        }
    };
    let fg = e.induced_cup(f, g)?;
    let mut acc = Cochain::zero(e.algebra().dim(), p + q + k - 1, Coefficients::Dual);
    if let Some(y) = bs(&e.induced_dot(&fg, m)?)? {
        acc.axpy(&sign(p + 1), &y)?;
    }
    if let Some(y) = bs(&e.induced_dot(g, m)?)? {
        acc.axpy(&Scalar::one(), &e.induced_dot(f, &y)?)?;
    }
    if let Some(y) = bs(&e.induced_dot(f, m)?)? {
        acc.axpy(&sign(p * q + p + q), &e.induced_dot(g, &y)?)?;
    }
    if let Some(y) = bs(m)? {
        acc.axpy(&sign(q + 1), &e.induced_dot(&fg, &y)?)?;
    }
    acc.axpy(&-Scalar::one(), &e.induced_dot(&e.induced_bracket(f, g)?, m)?)?;
    Ok(acc)
}

fn bv_checks(r: &Runner, delta: &Result<BvOperator>, names: (&str, &str), pairs: &[(&Cochain, &Cochain)]) {
    let delta = match delta {
        Ok(d) => d,
        Err(err) => {
            for name in [names.0, names.1] {
                r.single(name, true, || Err(err.clone()));
            }
            return;
        }
    };
    r.single(names.0, true, || {
        Ok(Trial::check(delta.squares_to_zero()?, || Witness::new("Delta o Delta has a nonzero entry")))
    });
    r.exhaustive(names.1, true, pairs, |(f, g)| {
        let d = bv_defect(&r.engine, delta, f, g)?;
        Ok(Trial::check(d.is_zero(), || {
            Witness::new(format!("p={} q={} defect={:?}", f.degree(), g.degree(), d))
                .cochain("f", f)
                .cochain("g", g)
        }))
    });
}

pub(crate) fn run(r: &Runner, theta: Option<&SymmetricStructure>) {
    let alg = r.alg;
    let reason = if !alg.is_regular() {
        Some("RegularityError")
    } else if !alg.is_unital() {
        Some("NotUnital")
    } else {
        None
    };
    if let Some(reason) = reason {
        for (name, required) in IDENTITIES {
            r.skip(name, *required, reason);
        }
        return;
    }
    let e = &r.engine;
    let cap_p = r.config.cochain_cap;
    let cap_n = r.config.chain_cap;
    let classes = (|| -> Result<_> {
        let cochains: Vec<Vec<Cochain>> =
            (0..=cap_p).map(|p| e.cochain_classes(p, Coefficients::Algebra)).collect::<Result<_>>()?;
        let duals: Vec<Vec<DualCochain>> =
            (0..=cap_p).map(|p| e.cochain_classes(p, Coefficients::Dual)).collect::<Result<_>>()?;
        let chains: Vec<Vec<Chain>> = (0..=cap_n).map(|n| e.chain_classes(n)).collect::<Result<_>>()?;
        Ok((cochains, duals, chains))
    })();
    let (cochains, duals, chains) = match classes {
        Ok(c) => c,
        Err(err) => {
            for (name, required) in IDENTITIES {
                r.single(name, *required, || Err(err.clone()));
            }
            return;
        }
    };
    let all: Vec<&Cochain> = cochains.iter().flatten().collect();
    let pairs: Vec<(&Cochain, &Cochain)> = all.iter().flat_map(|&f| all.iter().map(move |&g| (f, g))).collect();

    // B x has to stay within the chain cap
    let cap_cases: Vec<(&Cochain, &Cochain, &Chain)> = pairs
        .iter()
        .filter(|(f, g)| f.degree() + g.degree() >= 1)
        .flat_map(|&(f, g)| chains[..cap_n].iter().flatten().map(move |x| (f, g, x)))
        .filter(|(f, g, x)| f.degree() + g.degree() <= x.degree() + 1 && f.degree() + g.degree() <= cap_p)
        .collect();
    r.exhaustive(IDENTITIES[0].0, true, &cap_cases, |(f, g, x)| {
        let d = cap_expansion(e, f, g, x)?;
        Ok(Trial::check(e.chain_coordinates(&d)?.is_zero(), || {
            Witness::new(format!("p={} q={} n={}", f.degree(), g.degree(), x.degree()))
                .cochain("f", f)
                .cochain("g", g)
                .chain("x", x)
        }))
    });

    let dot_cases: Vec<(&Cochain, &Cochain, &DualCochain)> = pairs
        .iter()
        .filter(|(f, g)| f.degree() + g.degree() >= 1)
        .flat_map(|&(f, g)| duals.iter().flatten().map(move |m| (f, g, m)))
        .filter(|(f, g, m)| f.degree() + g.degree() + m.degree() <= cap_p)
        .collect();
    r.exhaustive(IDENTITIES[1].0, true, &dot_cases, |(f, g, m)| {
        let d = dot_expansion(e, f, g, m)?;
        Ok(Trial::check(e.cochain_coordinates(&d)?.is_zero(), || {
            Witness::new(format!("p={} q={} k={}", f.degree(), g.degree(), m.degree()))
                .cochain("f", f)
                .cochain("g", g)
                .cochain("m", m)
        }))
    });

    let bv_pairs: Vec<(&Cochain, &Cochain)> = pairs
        .iter()
        .copied()
        .filter(|(f, g)| (1..=cap_p).contains(&(f.degree() + g.degree())))
        .collect();

    let theta = match theta {
        Some(t) => Ok(Some(t.clone())),
        None => find_symmetric_structure(alg),
    };
    match theta {
        Ok(Some(theta)) => {
            r.single(IDENTITIES[2].0, true, || {
                let report = theta.validate(alg)?;
                Ok(Trial::check(report.passed(), || {
                    let bad = report.first_failure().expect("report failed");
                    Witness::new(format!("{}: {}", bad.name, bad.witness.clone().unwrap_or_default()))
                }))
            });
            r.single(IDENTITIES[3].0, true, || match transported_isomorphism(e, &theta) {
                Ok(_) => Ok(Trial::Pass),
                Err(Error::HypothesisNotSatisfied(msg)) => Ok(Trial::Fail(Witness::new(msg))),
                Err(err) => Err(err),
            });
            let delta = bv_from_symmetric(e, &theta);
            bv_checks(r, &delta, (IDENTITIES[4].0, IDENTITIES[5].0), &bv_pairs);
        }
        Ok(None) => {
            for (name, required) in &IDENTITIES[2..6] {
                r.skip(name, *required, "NoSymmetricStructure");
            }
        }
        Err(err) => {
            for (name, required) in &IDENTITIES[2..6] {
                r.single(name, *required, || Err(err.clone()));
            }
        }
    }

    match find_bv_homology_class(e) {
        Ok(Some((_, delta))) => bv_checks(r, &Ok(delta), (IDENTITIES[6].0, IDENTITIES[7].0), &bv_pairs),
        Ok(None) => {
            for (name, required) in &IDENTITIES[6..] {
                r.skip(name, *required, "HypothesisNotSatisfied");
            }
        }
        Err(err) => {
            for (name, required) in &IDENTITIES[6..] {
                r.single(name, *required, || Err(err.clone()));
            }
        }
    }
}
