use crate::chain::{boundary_b, cap, connes_b, degenerate_subspace, homotopy_s, lie, Chain};
use crate::cochain::{comp, delta_pi, Cochain};
use crate::error::Result;
use crate::linalg::Subspace;
use crate::scalar::Scalar;
use crate::Coefficients;

use super::{pick, Runner, Trial, Witness};

pub(crate) const IDENTITIES: &[(&str, bool)] = &[
    ("mu o_1 e = mu o_2 e = 1", true),
    ("B^2 = 0 modulo degenerate chains", true),
    ("b B + B b = 0 modulo degenerate chains", true),
    ("L_f = [B, i_f] + [b, S_f] - S_(delta f) modulo degenerate chains", true),
    ("B^2 = 0 on all chains", false),
    ("L_f = [B, i_f] + [b, S_f] - S_(delta f) on all chains", false),
    ("i_[f,g] = i_f L_g - (-1)^(p(q+1)) L_g i_f on homology", true),
    ("L_f = B i_f - (-1)^p i_f B on homology", true),
];

fn add(acc: &mut Chain, c: &Scalar, term: Option<Chain>) -> Result<()> {
    if let Some(t) = term {
        acc.axpy(c, &t)?;
    }
    Ok(())
}

/// `[B, i_f] x + [b, S_f] x - S_(delta f) x`, with operators that would leave
/// the nonnegative degrees read as zero.
fn cartan_rhs(r: &Runner, f: &Cochain, x: &Chain) -> Result<Chain> {
    let alg = r.alg;
    let (p, n) = (f.degree(), x.degree());
    let sign = Scalar::sign(p as i64);
    let one = Scalar::one();
    let mut acc = Chain::zero(alg.dim(), n + 1 - p);
    let ifx = if p <= n { Some(cap(alg, f, x)?) } else { None };
    add(&mut acc, &one, ifx.map(|y| connes_b(alg, &y)).transpose()?)?;
    add(&mut acc, &-&sign, Some(cap(alg, f, &connes_b(alg, x)?)?))?;
    add(&mut acc, &one, Some(boundary_b(alg, &homotopy_s(alg, f, x)?)?))?;
    if n >= 1 {
        add(&mut acc, &-&sign, Some(homotopy_s(alg, f, &boundary_b(alg, x)?)?))?;
    }
    add(&mut acc, &-&one, Some(homotopy_s(alg, &delta_pi(alg, f)?, x)?))?;
    Ok(acc)
}

pub(crate) fn run(r: &Runner) {
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

    r.single(IDENTITIES[0].0, true, || {
        let pi = Cochain::multiplication(alg);
        let e = Cochain::unit(alg)?;
        let one = Cochain::identity(alg);
        let (a, b) = (comp(alg, &pi, 1, &e)?, comp(alg, &pi, 2, &e)?);
        Ok(Trial::check(a == one && b == one, || {
            Witness::new(format!("mu o_1 e = {:?}, mu o_2 e = {:?}", a.coeffs(), b.coeffs())).cochain("mu", &pi)
        }))
    });

    let cap_n = r.config.chain_cap;
    let degenerate: Vec<Result<Subspace>> = (0..=cap_n + 1).map(|d| degenerate_subspace(alg, d)).collect();
    let in_d = |d: usize, x: &Chain| -> Result<bool> {
        Ok(degenerate[d].as_ref().map_err(Clone::clone)?.contains(x.coeffs()))
    };

    let bb_degrees: Vec<usize> = (0..=cap_n.saturating_sub(2)).collect();
    r.random(IDENTITIES[1].0, true, |rng| {
        let Some(n) = pick(rng, &bb_degrees) else {
            return Ok(Trial::NotApplicable);
        };
        let x = r.random_chain(n, rng);
        let bb = connes_b(alg, &connes_b(alg, &x)?)?;
        Ok(Trial::check(in_d(n + 2, &bb)?, || Witness::new(format!("n={n}")).chain("x", &x)))
    });

    let mixed: Vec<usize> = (1..cap_n).collect();
    r.random(IDENTITIES[2].0, true, |rng| {
        let Some(n) = pick(rng, &mixed) else {
            return Ok(Trial::NotApplicable);
        };
        let x = r.random_chain(n, rng);
        let s = boundary_b(alg, &connes_b(alg, &x)?)?.add(&connes_b(alg, &boundary_b(alg, &x)?)?)?;
        Ok(Trial::check(in_d(n, &s)?, || Witness::new(format!("n={n}")).chain("x", &x)))
    });

    // B x must stay within the chain cap
    let cartan_cases: Vec<(usize, usize)> = r
        .cochain_degrees()
        .into_iter()
        .flat_map(|p| (0..cap_n).map(move |n| (p, n)))
        .filter(|&(p, n)| p <= n + 1)
        .collect();
    r.random(IDENTITIES[3].0, true, |rng| {
        let Some((p, n)) = pick(rng, &cartan_cases) else {
            return Ok(Trial::NotApplicable);
        };
        let f = r.random_normalized_cochain(p, rng)?;
        let x = r.random_chain(n, rng);
        let diff = lie(alg, &f, &x)?.sub(&cartan_rhs(r, &f, &x)?)?;
        Ok(Trial::check(in_d(n + 1 - p, &diff)?, || {
            Witness::new(format!("p={p} n={n}")).cochain("f", &f).chain("x", &x)
        }))
    });

    r.random(IDENTITIES[4].0, false, |rng| {
        let Some(n) = pick(rng, &bb_degrees) else {
            return Ok(Trial::NotApplicable);
        };
        let x = r.random_chain(n, rng);
        let bb = connes_b(alg, &connes_b(alg, &x)?)?;
        Ok(Trial::check(bb.is_zero(), || Witness::new(format!("n={n}")).chain("x", &x)))
    });

    r.random(IDENTITIES[5].0, false, |rng| {
        let Some((p, n)) = pick(rng, &cartan_cases) else {
            return Ok(Trial::NotApplicable);
        };
        let f = r.random_cochain(p, rng)?;
        let x = r.random_chain(n, rng);
        let diff = lie(alg, &f, &x)?.sub(&cartan_rhs(r, &f, &x)?)?;
        Ok(Trial::check(diff.is_zero(), || {
            Witness::new(format!("p={p} n={n}")).cochain("f", &f).chain("x", &x)
        }))
    });

    homology_level(r);
}

struct Classes {
    cochains: Vec<Vec<Cochain>>,
    chains: Vec<Vec<Chain>>,
}

fn classes(r: &Runner) -> Result<Classes> {
    Ok(Classes {
        cochains: (0..=r.config.cochain_cap)
            .map(|p| r.engine.cochain_classes(p, Coefficients::Algebra))
            .collect::<Result<_>>()?,
        chains: (0..=r.config.chain_cap).map(|n| r.engine.chain_classes(n)).collect::<Result<_>>()?,
    })
}

fn homology_level(r: &Runner) {
    let e = &r.engine;
    let cl = match classes(r) {
        Ok(c) => c,
        Err(err) => {
            for (name, required) in &IDENTITIES[6..] {
                r.single(name, *required, || Err(err.clone()));
            }
            return;
        }
    };
    let cap_p = r.config.cochain_cap;
    let cap_n = r.config.chain_cap;
    let cap_class = |f: &Cochain, x: &Chain| -> Result<Option<Chain>> {
        if f.degree() > x.degree() {
            return Ok(None);
        }
        e.induced_cap(f, x).map(Some)
    };

    let mut triples = Vec::new();
    for p in 0..=cap_p {
        for q in 0..=cap_p {
            if p + q == 0 || p + q - 1 > cap_p {
                continue;
            }
            for n in 0..=cap_n {
                if p + q > n + 1 || n + 1 - q > cap_n {
                    continue;
                }
                for f in &cl.cochains[p] {
                    for g in &cl.cochains[q] {
                        for x in &cl.chains[n] {
                            triples.push((f, g, x));
                        }
                    }
                }
            }
        }
    }
    r.exhaustive(IDENTITIES[6].0, true, &triples, |(f, g, x)| {
        let (p, q) = (f.degree(), g.degree());
        let fg = e.induced_bracket(f, g)?;
        let mut acc = cap_class(&fg, x)?.unwrap_or_else(|| Chain::zero(r.alg.dim(), x.degree() + 1 - p - q));
        let lgx = e.induced_lie(g, x)?;
        acc.axpy(&-Scalar::one(), &cap_class(f, &lgx)?.expect("degrees checked"))?;
        if let Some(ifx) = cap_class(f, x)? {
            let s = Scalar::sign((p * (q + 1)) as i64);
            acc.axpy(&s, &e.induced_lie(g, &ifx)?)?;
        }
        Ok(Trial::check(e.chain_coordinates(&acc)?.is_zero(), || {
            Witness::new(format!("p={p} q={q} n={}", x.degree()))
                .cochain("f", f)
                .cochain("g", g)
                .chain("x", x)
        }))
    });

    let mut pairs = Vec::new();
    for p in 0..=cap_p {
        for n in 0..cap_n {
            if p > n + 1 {
                continue;
            }
            for f in &cl.cochains[p] {
                for x in &cl.chains[n] {
                    pairs.push((f, x));
                }
            }
        }
    }
    r.exhaustive(IDENTITIES[7].0, true, &pairs, |(f, x)| {
        let p = f.degree();
        let mut acc = e.induced_lie(f, x)?;
        if let Some(ifx) = cap_class(f, x)? {
            acc.axpy(&-Scalar::one(), &e.induced_connes_b(&ifx)?)?;
        }
        let bx = e.induced_connes_b(x)?;
        acc.axpy(&Scalar::sign(p as i64), &cap_class(f, &bx)?.expect("p <= n + 1"))?;
        Ok(Trial::check(e.chain_coordinates(&acc)?.is_zero(), || {
            Witness::new(format!("p={p} n={}", x.degree())).cochain("f", f).chain("x", x)
        }))
    });
}
