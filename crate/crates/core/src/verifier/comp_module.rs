use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::chain::{bullet, cyclic_t};
use crate::cochain::{comp, Cochain};
use crate::error::Result;

use super::{pick, Runner, Trial, Witness};

pub(crate) const IDENTITIES: &[(&str, bool)] = &[
    ("f .i (g .j x) for j < i", true),
    ("f .i (g .j x) for j - p < i <= j", true),
    ("f .i (g .j x) for i <= j - p", true),
    ("1 .i x = x", true),
    ("t(f .i x) = f .(i+1) t(x)", true),
    ("t^(n+1) = id", true),
];

/// Whether `f .i x` is defined for `deg f = p`, `deg x = n`.
fn defined(p: usize, i: usize, n: usize) -> bool {
    if i == 0 {
        p <= n + 1
    } else {
        p <= n && i <= n + 1 - p
    }
}

/// A random operand, sometimes `mu` or the identity so that properties of
/// the structure maps themselves are exercised.
fn operand(r: &Runner, p: usize, rng: &mut ChaCha8Rng) -> Result<Cochain> {
    match p {
        2 if rng.gen_bool(0.3) => Ok(Cochain::multiplication(r.alg)),
        1 if rng.gen_bool(0.25) => Ok(Cochain::identity(r.alg)),
        _ => r.random_cochain(p, rng),
    }
}

pub(crate) fn run(r: &Runner) {
    let alg = r.alg;
    let degrees = r.cochain_degrees();
    let chain_degrees: Vec<usize> = (0..=r.config.chain_cap).collect();
    let mut cases: [Vec<(usize, usize, usize, usize, usize)>; 3] = Default::default();
    for &p in &degrees {
        for &q in &degrees {
            for &n in &chain_degrees {
                for j in 0..=n + 1 {
                    if !defined(q, j, n) {
                        continue;
                    }
                    let m = n + 1 - q;
                    for i in 0..=m + 1 {
                        if !defined(p, i, m) {
                            continue;
                        }
                        let k = if j < i {
                            0
                        } else if i + p > j {
                            1
                        } else {
                            2
                        };
                        cases[k].push((p, q, n, i, j));
                    }
                }
            }
        }
    }
    for (k, name) in IDENTITIES[..3].iter().enumerate() {
        let list = &cases[k];
        r.random(name.0, true, |rng| {
            let Some((p, q, n, i, j)) = pick(rng, list) else {
                return Ok(Trial::NotApplicable);
            };
            let f = operand(r, p, rng)?;
            let g = operand(r, q, rng)?;
            let x = r.random_chain(n, rng);
            let lhs = bullet(alg, &f, i, &bullet(alg, &g, j, &x)?)?;
            let rhs = match k {
                0 => bullet(alg, &g, j, &bullet(alg, &f, i + q - 1, &x)?)?,
                1 => bullet(alg, &comp(alg, &f, j - i + 1, &g)?, i, &x)?,
                _ => bullet(alg, &g, j + 1 - p, &bullet(alg, &f, i, &x)?)?,
            };
            Ok(Trial::check(lhs == rhs, || {
                Witness::new(format!("p={p} q={q} n={n} i={i} j={j}"))
                    .cochain("f", &f)
                    .cochain("g", &g)
                    .chain("x", &x)
            }))
        });
    }

    let one = Cochain::identity(alg);
    r.random(IDENTITIES[3].0, true, |rng| {
        let Some(n) = pick(rng, &chain_degrees) else {
            return Ok(Trial::NotApplicable);
        };
        let x = r.random_chain(n, rng);
        let mut ok = true;
        for i in 0..=n {
            ok &= bullet(alg, &one, i, &x)? == x;
        }
        Ok(Trial::check(ok, || Witness::new(format!("n={n}")).chain("x", &x)))
    });

    let rot: Vec<(usize, usize, usize)> = degrees
        .iter()
        .flat_map(|&p| chain_degrees.iter().map(move |&n| (p, n)))
        .filter(|&(p, n)| p <= n)
        .flat_map(|(p, n)| (0..=n - p).map(move |i| (p, n, i)))
        .collect();
    r.random(IDENTITIES[4].0, true, |rng| {
        let Some((p, n, i)) = pick(rng, &rot) else {
            return Ok(Trial::NotApplicable);
        };
        let f = operand(r, p, rng)?;
        let x = r.random_chain(n, rng);
        let lhs = cyclic_t(&bullet(alg, &f, i, &x)?);
        let rhs = bullet(alg, &f, i + 1, &cyclic_t(&x))?;
        Ok(Trial::check(lhs == rhs, || {
            Witness::new(format!("p={p} n={n} i={i}")).cochain("f", &f).chain("x", &x)
        }))
    });

    r.random(IDENTITIES[5].0, true, |rng| {
        let Some(n) = pick(rng, &chain_degrees) else {
            return Ok(Trial::NotApplicable);
        };
        let x = r.random_chain(n, rng);
        let mut y = cyclic_t(&x);
        for _ in 0..n {
            y = cyclic_t(&y);
        }
        Ok(Trial::check(y == x, || {
            Witness::new(format!("n={n}")).chain("x", &x)
        }))
    });
}
