use crate::cochain::{bracket, comp, delta_alpha, delta_pi, delta_sign, Cochain};
use crate::scalar::Scalar;

use super::{pick, Runner, Trial, Witness};

pub(crate) const IDENTITIES: &[(&str, bool)] = &[
    ("mu is alpha-equivariant", true),
    ("mu o_1 mu = mu o_2 mu", true),
    ("composition: j < i", true),
    ("composition: i <= j < q + i", true),
    ("composition: j >= q + i", true),
    ("unit: 1 o_1 f = f = f o_i 1", true),
    ("compositions stay equivariant", true),
    ("bracket is graded antisymmetric", true),
    ("bracket satisfies graded Jacobi", true),
    ("delta_pi squares to zero", true),
    ("delta_alpha squares to zero", true),
    ("delta_pi = (-1)^(p-1) delta_alpha", true),
];

/// Largest degree produced by random compositions.
fn total_cap(r: &Runner) -> usize {
    r.config.cochain_cap + 2
}

pub(crate) fn run(r: &Runner) {
    let alg = r.alg;
    let pi = Cochain::multiplication(alg);
    r.single(IDENTITIES[0].0, true, || {
        Ok(Trial::check(pi.is_equivariant(alg)?, || {
            Witness::new("alpha(mu(a, b)) != mu(alpha(a), alpha(b))").cochain("mu", &pi)
        }))
    });
    r.single(IDENTITIES[1].0, true, || {
        let (l, rr) = (comp(alg, &pi, 1, &pi)?, comp(alg, &pi, 2, &pi)?);
        Ok(Trial::check(l == rr, || {
            Witness::new(format!(
                "mu o_1 mu - mu o_2 mu = {:?}",
                l.sub(&rr).map(|d| d.coeffs().clone()).unwrap_or_default()
            ))
            .cochain("mu", &pi)
        }))
    });

    let degrees = r.cochain_degrees();
    let d = &degrees;
    let triples: Vec<(usize, usize, usize)> = d
        .iter()
        .flat_map(|&p| d.iter().flat_map(move |&q| d.iter().map(move |&s| (p, q, s))))
        .filter(|&(p, q, s)| p >= 1 && p + q >= 2 && p + q + s - 2 <= total_cap(r))
        .collect();
    for (case, name) in IDENTITIES[2..5].iter().enumerate() {
        r.random(name.0, true, |rng| {
            let Some((p, q, s)) = pick(rng, &triples) else {
                return Ok(Trial::NotApplicable);
            };
            let pairs: Vec<(usize, usize)> = (1..=p)
                .flat_map(|i| (1..=p + q - 1).map(move |j| (i, j)))
                .filter(|&(i, j)| match case {
                    0 => j < i,
                    1 => i <= j && j < q + i,
                    _ => j >= q + i,
                })
                .collect();
            let Some((i, j)) = pick(rng, &pairs) else {
                return Ok(Trial::NotApplicable);
            };
            let f = r.random_cochain(p, rng)?;
            let g = r.random_cochain(q, rng)?;
            let h = r.random_cochain(s, rng)?;
            let lhs = comp(alg, &comp(alg, &f, i, &g)?, j, &h)?;
            let rhs = match case {
                0 => comp(alg, &comp(alg, &f, j, &h)?, i + s - 1, &g)?,
                1 => comp(alg, &f, i, &comp(alg, &g, j - i + 1, &h)?)?,
                _ => comp(alg, &comp(alg, &f, j - q + 1, &h)?, i, &g)?,
            };
            Ok(Trial::check(lhs == rhs, || {
                Witness::new(format!("p={p} q={q} r={s} i={i} j={j}"))
                    .cochain("f", &f)
                    .cochain("g", &g)
                    .cochain("h", &h)
            }))
        });
    }

    let one = Cochain::identity(alg);
    r.random(IDENTITIES[5].0, true, |rng| {
        let Some(p) = pick(rng, &degrees) else {
            return Ok(Trial::NotApplicable);
        };
        let f = r.random_cochain(p, rng)?;
        let mut ok = comp(alg, &one, 1, &f)? == f;
        for i in 1..=p {
            ok &= comp(alg, &f, i, &one)? == f;
        }
        Ok(Trial::check(ok, || Witness::new(format!("p={p}")).cochain("f", &f)))
    });

    r.random(IDENTITIES[6].0, true, |rng| {
        let (Some(p), Some(q)) = (pick(rng, &degrees), pick(rng, &degrees)) else {
            return Ok(Trial::NotApplicable);
        };
        if p == 0 || p + q > total_cap(r) + 1 {
            return Ok(Trial::NotApplicable);
        }
        let f = r.random_cochain(p, rng)?;
        let g = r.random_cochain(q, rng)?;
        let mut ok = true;
        for i in 1..=p {
            ok &= comp(alg, &f, i, &g)?.is_equivariant(alg)?;
        }
        Ok(Trial::check(ok, || {
            Witness::new(format!("p={p} q={q}")).cochain("f", &f).cochain("g", &g)
        }))
    });

    r.random(IDENTITIES[7].0, true, |rng| {
        let (Some(p), Some(q)) = (pick(rng, &degrees), pick(rng, &degrees)) else {
            return Ok(Trial::NotApplicable);
        };
        if p + q == 0 {
            return Ok(Trial::NotApplicable);
        }
        let f = r.random_cochain(p, rng)?;
        let g = r.random_cochain(q, rng)?;
        let fg = bracket(alg, &f, &g)?;
        let gf = bracket(alg, &g, &f)?;
        let s = Scalar::sign(((p as i64) - 1) * ((q as i64) - 1));
        Ok(Trial::check(fg.add(&gf.scale(&s))?.is_zero(), || {
            Witness::new(format!("p={p} q={q}")).cochain("f", &f).cochain("g", &g)
        }))
    });

    r.random(IDENTITIES[8].0, true, |rng| {
        let (Some(p), Some(q), Some(s)) = (pick(rng, &degrees), pick(rng, &degrees), pick(rng, &degrees)) else {
            return Ok(Trial::NotApplicable);
        };
        if p + q + s < 2 || p + q + s - 2 > r.config.cochain_cap || p + q == 0 || q + s == 0 || p + s == 0 {
            return Ok(Trial::NotApplicable);
        }
        let f = r.random_cochain(p, rng)?;
        let g = r.random_cochain(q, rng)?;
        let h = r.random_cochain(s, rng)?;
        let e = |a: usize, b: usize| Scalar::sign((a as i64 - 1) * (b as i64 - 1));
        let mut acc = bracket(alg, &f, &bracket(alg, &g, &h)?)?.scale(&e(p, s));
        acc.axpy(&e(q, p), &bracket(alg, &g, &bracket(alg, &h, &f)?)?)?;
        acc.axpy(&e(s, q), &bracket(alg, &h, &bracket(alg, &f, &g)?)?)?;
        Ok(Trial::check(acc.is_zero(), || {
            Witness::new(format!("p={p} q={q} r={s}"))
                .cochain("f", &f)
                .cochain("g", &g)
                .cochain("h", &h)
        }))
    });

    let low: Vec<usize> = degrees.iter().copied().filter(|&p| p + 2 <= total_cap(r)).collect();
    r.random(IDENTITIES[9].0, true, |rng| {
        let Some(p) = pick(rng, &low) else {
            return Ok(Trial::NotApplicable);
        };
        let f = r.random_cochain(p, rng)?;
        let dd = delta_pi(alg, &delta_pi(alg, &f)?)?;
        Ok(Trial::check(dd.is_zero(), || Witness::new(format!("p={p}")).cochain("f", &f)))
    });
    r.random(IDENTITIES[10].0, true, |rng| {
        let Some(p) = pick(rng, &low) else {
            return Ok(Trial::NotApplicable);
        };
        let f = r.random_cochain(p, rng)?;
        let dd = delta_alpha(alg, &delta_alpha(alg, &f)?)?;
        Ok(Trial::check(dd.is_zero(), || Witness::new(format!("p={p}")).cochain("f", &f)))
    });
    r.random(IDENTITIES[11].0, true, |rng| {
        let Some(p) = pick(rng, &low) else {
            return Ok(Trial::NotApplicable);
        };
        let f = r.random_cochain(p, rng)?;
        let a = delta_pi(alg, &f)?;
        let b = delta_alpha(alg, &f)?.scale(&delta_sign(p));
        Ok(Trial::check(a == b, || Witness::new(format!("p={p}")).cochain("f", &f)))
    });
}
