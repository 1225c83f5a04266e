use crate::cochain::Cochain;
use crate::error::Result;
use crate::scalar::Scalar;
use crate::Coefficients;

use super::{Runner, Trial, Witness};

pub(crate) const IDENTITIES: &[(&str, bool)] = &[
    ("cup and bracket are well defined on classes", true),
    ("f u g = (-1)^(pq) g u f on cohomology", true),
    ("cup is associative on cohomology", true),
    ("[f,g] = -(-1)^((p-1)(q-1)) [g,f] on cohomology", true),
    ("graded Jacobi on cohomology", true),
    ("[f, g u h] = [f,g] u h + (-1)^((p-1)q) g u [f,h] on cohomology", true),
];

fn witness(detail: String, fs: &[&Cochain]) -> Witness {
    let names = ["f", "g", "h"];
    fs.iter().zip(names).fold(Witness::new(detail), |w, (f, n)| w.cochain(n, f))
}

pub(crate) fn run(r: &Runner) {
    let e = &r.engine;
    let cap = r.config.cochain_cap;
    let degrees = r.cochain_degrees();
    let classes: Result<Vec<(usize, Vec<Cochain>)>> = degrees
        .iter()
        .map(|&p| Ok((p, e.cochain_classes(p, Coefficients::Algebra)?)))
        .collect();
    let classes = match classes {
        Ok(c) => c,
        Err(err) => {
            for (name, required) in IDENTITIES {
                r.single(name, *required, || Err(err.clone()));
            }
            return;
        }
    };
    let all: Vec<&Cochain> = classes.iter().flat_map(|(_, v)| v.iter()).collect();
    let pairs: Vec<(&Cochain, &Cochain)> = all.iter().flat_map(|&f| all.iter().map(move |&g| (f, g))).collect();
    let triples: Vec<(&Cochain, &Cochain, &Cochain)> = pairs
        .iter()
        .flat_map(|&(f, g)| all.iter().map(move |&h| (f, g, h)))
        .collect();
    let zero_class = |f: &Cochain| -> Result<bool> { Ok(e.cochain_coordinates(f)?.is_zero()) };

    let wd: Vec<_> = pairs.iter().filter(|(f, g)| f.degree() + g.degree() <= cap).collect();
    r.exhaustive(IDENTITIES[0].0, true, &wd, |(f, g)| {
        e.induced_cup(f, g)?;
        if f.degree() + g.degree() >= 1 {
            e.induced_bracket(f, g)?;
        }
        Ok(Trial::Pass)
    });

    let comm: Vec<_> = pairs.iter().filter(|(f, g)| f.degree() + g.degree() <= cap).collect();
    r.exhaustive(IDENTITIES[1].0, true, &comm, |(f, g)| {
        let (p, q) = (f.degree(), g.degree());
        let mut d = e.induced_cup(f, g)?;
        d.axpy(&-Scalar::sign((p * q) as i64), &e.induced_cup(g, f)?)?;
        Ok(Trial::check(zero_class(&d)?, || witness(format!("p={p} q={q}"), &[f, g])))
    });

    let assoc: Vec<_> = triples
        .iter()
        .filter(|(f, g, h)| f.degree() + g.degree() + h.degree() <= cap)
        .collect();
    r.exhaustive(IDENTITIES[2].0, true, &assoc, |(f, g, h)| {
        let l = e.induced_cup(&e.induced_cup(f, g)?, h)?;
        let rr = e.induced_cup(f, &e.induced_cup(g, h)?)?;
        Ok(Trial::check(zero_class(&l.sub(&rr)?)?, || {
            witness(format!("p={} q={} r={}", f.degree(), g.degree(), h.degree()), &[f, g, h])
        }))
    });

    let anti: Vec<_> = pairs
        .iter()
        .filter(|(f, g)| (1..=cap + 1).contains(&(f.degree() + g.degree())))
        .collect();
    r.exhaustive(IDENTITIES[3].0, true, &anti, |(f, g)| {
        let (p, q) = (f.degree() as i64, g.degree() as i64);
        let mut d = e.induced_bracket(f, g)?;
        d.axpy(&Scalar::sign((p - 1) * (q - 1)), &e.induced_bracket(g, f)?)?;
        Ok(Trial::check(zero_class(&d)?, || witness(format!("p={p} q={q}"), &[f, g])))
    });

    let jac: Vec<_> = triples
        .iter()
        .filter(|(f, g, h)| {
            let (p, q, s) = (f.degree(), g.degree(), h.degree());
            p + q >= 1
                && q + s >= 1
                && p + s >= 1
                && p + q + s >= 2
                && p + q + s - 2 <= cap
                && [p + q, q + s, s + p].iter().all(|&d| d <= cap + 1)
        })
        .collect();
    r.exhaustive(IDENTITIES[4].0, true, &jac, |(f, g, h)| {
        let (p, q, s) = (f.degree() as i64, g.degree() as i64, h.degree() as i64);
        let sg = |a: i64, b: i64| Scalar::sign((a - 1) * (b - 1));
        let mut acc = e.induced_bracket(f, &e.induced_bracket(g, h)?)?.scale(&sg(p, s));
        acc.axpy(&sg(q, p), &e.induced_bracket(g, &e.induced_bracket(h, f)?)?)?;
        acc.axpy(&sg(s, q), &e.induced_bracket(h, &e.induced_bracket(f, g)?)?)?;
        Ok(Trial::check(zero_class(&acc)?, || {
            witness(format!("p={p} q={q} r={s}"), &[f, g, h])
        }))
    });

    let leib: Vec<_> = triples
        .iter()
        .filter(|(f, g, h)| {
            let (p, q, s) = (f.degree(), g.degree(), h.degree());
            p + q >= 1 && p + s >= 1 && q + s <= cap && p + q + s >= 1 && p + q + s - 1 <= cap
        })
        .collect();
    r.exhaustive(IDENTITIES[5].0, true, &leib, |(f, g, h)| {
        let (p, q) = (f.degree(), g.degree());
        let mut acc = e.induced_bracket(f, &e.induced_cup(g, h)?)?;
        acc.axpy(&-Scalar::one(), &e.induced_cup(&e.induced_bracket(f, g)?, h)?)?;
        let s = Scalar::sign((p as i64 - 1) * q as i64);
        acc.axpy(&-s, &e.induced_cup(g, &e.induced_bracket(f, h)?)?)?;
        Ok(Trial::check(zero_class(&acc)?, || {
            witness(format!("p={p} q={q} r={}", h.degree()), &[f, g, h])
        }))
    });
}
