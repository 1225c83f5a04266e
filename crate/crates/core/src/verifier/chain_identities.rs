use crate::chain::{boundary_b, cap, cap_explicit, d_alpha, lie, lie_explicit};
use crate::cochain::{bracket, cup, delta_pi};
use crate::scalar::Scalar;

use super::{pick, Runner, Trial, Witness};

pub(crate) const IDENTITIES: &[(&str, bool)] = &[
    ("i_(f u g) = i_f i_g", true),
    ("i_(delta f) = b i_f - (-1)^p i_f b", true),
    ("L_[f,g] = L_f L_g - (-1)^((p-1)(q-1)) L_g L_f", true),
    ("L_(delta f) = -b L_f + (-1)^(p-1) L_f b", true),
    ("b^2 = 0", true),
    ("operadic b = d_alpha", true),
    ("operadic i_f = explicit i_f", true),
    ("operadic L_f = explicit L_f", true),
];

pub(crate) fn run(r: &Runner) {
    let alg = r.alg;
    let degrees = r.cochain_degrees();
    let chain_degrees: Vec<usize> = (0..=r.config.chain_cap).collect();
    let pairs = |ok: &dyn Fn(usize, usize, usize) -> bool| -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for &p in &degrees {
            for &q in &degrees {
                for &n in &chain_degrees {
                    if ok(p, q, n) {
                        out.push((p, q, n));
                    }
                }
            }
        }
        out
    };
    let singles = |ok: &dyn Fn(usize, usize) -> bool| -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for &p in &degrees {
            for &n in &chain_degrees {
                if ok(p, n) {
                    out.push((p, n));
                }
            }
        }
        out
    };

    let cup_cases = pairs(&|p, q, n| p + q <= n);
    r.random(IDENTITIES[0].0, true, |rng| {
        let Some((p, q, n)) = pick(rng, &cup_cases) else {
            return Ok(Trial::NotApplicable);
        };
        let f = r.random_cochain(p, rng)?;
        let g = r.random_cochain(q, rng)?;
        let x = r.random_chain(n, rng);
        let lhs = cap(alg, &cup(alg, &f, &g)?, &x)?;
        let rhs = cap(alg, &f, &cap(alg, &g, &x)?)?;
        Ok(Trial::check(lhs == rhs, || {
            Witness::new(format!("p={p} q={q} n={n}")).cochain("f", &f).cochain("g", &g).chain("x", &x)
        }))
    });

    let delta_cases = singles(&|p, n| n >= 1 && p < n);
    r.random(IDENTITIES[1].0, true, |rng| {
        let Some((p, n)) = pick(rng, &delta_cases) else {
            return Ok(Trial::NotApplicable);
        };
        let f = r.random_cochain(p, rng)?;
        let x = r.random_chain(n, rng);
        let lhs = cap(alg, &delta_pi(alg, &f)?, &x)?;
        let mut rhs = boundary_b(alg, &cap(alg, &f, &x)?)?;
        rhs.axpy(&-Scalar::sign(p as i64), &cap(alg, &f, &boundary_b(alg, &x)?)?)?;
        Ok(Trial::check(lhs == rhs, || {
            Witness::new(format!("p={p} n={n}")).cochain("f", &f).chain("x", &x)
        }))
    });

    let lie_cases = pairs(&|p, q, n| p + q >= 1 && p + q <= n + 2 && p <= n + 1 && q <= n + 1);
    r.random(IDENTITIES[2].0, true, |rng| {
        let Some((p, q, n)) = pick(rng, &lie_cases) else {
            return Ok(Trial::NotApplicable);
        };
        let f = r.random_cochain(p, rng)?;
        let g = r.random_cochain(q, rng)?;
        let x = r.random_chain(n, rng);
        let lhs = lie(alg, &bracket(alg, &f, &g)?, &x)?;
        let mut rhs = lie(alg, &f, &lie(alg, &g, &x)?)?;
        let s = Scalar::sign((p as i64 - 1) * (q as i64 - 1));
        rhs.axpy(&-s, &lie(alg, &g, &lie(alg, &f, &x)?)?)?;
        Ok(Trial::check(lhs == rhs, || {
            Witness::new(format!("p={p} q={q} n={n}")).cochain("f", &f).cochain("g", &g).chain("x", &x)
        }))
    });

    let lie_delta_cases = singles(&|p, n| n >= 1 && p <= n);
    r.random(IDENTITIES[3].0, true, |rng| {
        let Some((p, n)) = pick(rng, &lie_delta_cases) else {
            return Ok(Trial::NotApplicable);
        };
        let f = r.random_cochain(p, rng)?;
        let x = r.random_chain(n, rng);
        let lhs = lie(alg, &delta_pi(alg, &f)?, &x)?;
        let mut rhs = boundary_b(alg, &lie(alg, &f, &x)?)?.neg();
        rhs.axpy(&Scalar::sign(p as i64 - 1), &lie(alg, &f, &boundary_b(alg, &x)?)?)?;
        Ok(Trial::check(lhs == rhs, || {
            Witness::new(format!("p={p} n={n}")).cochain("f", &f).chain("x", &x)
        }))
    });

    let deep: Vec<usize> = chain_degrees.iter().copied().filter(|&n| n >= 2).collect();
    r.random(IDENTITIES[4].0, true, |rng| {
        let Some(n) = pick(rng, &deep) else {
            return Ok(Trial::NotApplicable);
        };
        let x = r.random_chain(n, rng);
        let bb = boundary_b(alg, &boundary_b(alg, &x)?)?;
        Ok(Trial::check(bb.is_zero(), || Witness::new(format!("n={n}")).chain("x", &x)))
    });

    let positive: Vec<usize> = chain_degrees.iter().copied().filter(|&n| n >= 1).collect();
    r.random(IDENTITIES[5].0, true, |rng| {
        let Some(n) = pick(rng, &positive) else {
            return Ok(Trial::NotApplicable);
        };
        let x = r.random_chain(n, rng);
        Ok(Trial::check(boundary_b(alg, &x)? == d_alpha(alg, &x)?, || {
            Witness::new(format!("n={n}")).chain("x", &x)
        }))
    });

    let cap_cases = singles(&|p, n| p <= n);
    r.random(IDENTITIES[6].0, true, |rng| {
        let Some((p, n)) = pick(rng, &cap_cases) else {
            return Ok(Trial::NotApplicable);
        };
        let f = r.random_cochain(p, rng)?;
        let x = r.random_chain(n, rng);
        Ok(Trial::check(cap(alg, &f, &x)? == cap_explicit(alg, &f, &x)?, || {
            Witness::new(format!("p={p} n={n}")).cochain("f", &f).chain("x", &x)
        }))
    });

    let lie_single = singles(&|p, n| p <= n + 1);
    r.random(IDENTITIES[7].0, true, |rng| {
        let Some((p, n)) = pick(rng, &lie_single) else {
            return Ok(Trial::NotApplicable);
        };
        let f = r.random_cochain(p, rng)?;
        let x = r.random_chain(n, rng);
        Ok(Trial::check(lie(alg, &f, &x)? == lie_explicit(alg, &f, &x)?, || {
            Witness::new(format!("p={p} n={n}")).cochain("f", &f).chain("x", &x)
        }))
    });
}
