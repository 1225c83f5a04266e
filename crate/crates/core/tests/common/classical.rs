//! Classical Hochschild/Connes operators for associative algebras, written
//! from the textbook formulas on plain integer arrays. Shares nothing with the
//! library except the storage layout: multi-indices are lexicographic with
//! the first slot most significant, and a cochain stores its output index
//! last.

pub struct Classical {
    pub dim: usize,
    /// `mu[i][j]` is the product `e_i e_j` as a coefficient vector.
    pub mu: Vec<Vec<Vec<i64>>>,
    pub unit: Vec<i64>,
}

fn pow(n: usize, k: usize) -> usize {
    n.pow(k as u32)
}

fn digits(mut idx: usize, n: usize, slots: usize) -> Vec<usize> {
    let mut d = vec![0; slots];
    for s in (0..slots).rev() {
        d[s] = idx % n;
        idx /= n;
    }
    d
}

fn sign(e: usize) -> i64 {
    if e.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn basis(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

impl Classical {
    pub fn dual_numbers() -> Self {
        let mut mu = vec![vec![vec![0; 2]; 2]; 2];
        mu[0][0][0] = 1;
        mu[0][1][1] = 1;
        mu[1][0][1] = 1;
        Classical { dim: 2, mu, unit: vec![1, 0] }
    }

    pub fn k_times_k() -> Self {
        let mut mu = vec![vec![vec![0; 2]; 2]; 2];
        mu[0][0][0] = 1;
        mu[1][1][1] = 1;
        Classical { dim: 2, mu, unit: vec![1, 1] }
    }

    /// Structure constants in the library's `mu[(i * n + j) * n + k]` order.
    pub fn flat_mu(&self) -> Vec<i64> {
        self.mu.iter().flatten().flatten().copied().collect()
    }

    pub fn mul(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        let n = self.dim;
        let mut out = vec![0; n];
        for i in 0..n {
            for j in 0..n {
                let c = a[i] * b[j];
                if c != 0 {
                    for k in 0..n {
                        out[k] += c * self.mu[i][j][k];
                    }
                }
            }
        }
        out
    }

    /// `f(v_1, ..., v_p)` for arbitrary vectors, by multilinearity.
    pub fn eval(&self, f: &[i64], args: &[Vec<i64>]) -> Vec<i64> {
        let n = self.dim;
        let p = args.len();
        let mut out = vec![0; n];
        for idx in 0..pow(n, p) {
            let d = digits(idx, n, p);
            let c: i64 = d.iter().zip(args).map(|(&i, a)| a[i]).product();
            if c != 0 {
                for k in 0..n {
                    out[k] += c * f[idx * n + k];
                }
            }
        }
        out
    }

    /// Tabulates a degree-`p` cochain from its values on basis tuples.
    fn cochain_from(&self, p: usize, value: impl Fn(&[Vec<i64>]) -> Vec<i64>) -> Vec<i64> {
        let n = self.dim;
        let mut out = vec![0; pow(n, p + 1)];
        for idx in 0..pow(n, p) {
            let args: Vec<Vec<i64>> = digits(idx, n, p).into_iter().map(|i| basis(n, i)).collect();
            let v = value(&args);
            out[idx * n..(idx + 1) * n].copy_from_slice(&v);
        }
        out
    }

    /// Adds `c * (v_0 (x) ... (x) v_k)` to a chain.
    fn add_tensor(&self, out: &mut [i64], c: i64, slots: &[Vec<i64>]) {
        let n = self.dim;
        for idx in 0..pow(n, slots.len()) {
            let d = digits(idx, n, slots.len());
            let w: i64 = d.iter().zip(slots).map(|(&i, v)| v[i]).product();
            out[idx] += c * w;
        }
    }

    /// Applies an operator defined on elementary tensors `a_0 (x) ... (x) a_n`
    /// (given as basis vectors) to the chain `x` of degree `n`.
    fn chain_map(
        &self,
        x: &[i64],
        n: usize,
        target: usize,
        op: impl Fn(&[Vec<i64>], &mut Vec<i64>),
    ) -> Vec<i64> {
        let d = self.dim;
        let mut out = vec![0; pow(d, target + 1)];
        for (idx, &c) in x.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let a: Vec<Vec<i64>> = digits(idx, d, n + 1).into_iter().map(|i| basis(d, i)).collect();
            let mut img = vec![0; out.len()];
            op(&a, &mut img);
            for (o, v) in out.iter_mut().zip(img) {
                *o += c * v;
            }
        }
        out
    }

    /// `(delta f)(a_1..a_{p+1}) = a_1 f(a_2..) + sum (-1)^i f(.., a_i a_{i+1}, ..)
    /// + (-1)^{p+1} f(a_1..a_p) a_{p+1}`.
    pub fn coboundary(&self, f: &[i64], p: usize) -> Vec<i64> {
        self.cochain_from(p + 1, |a| {
            let mut out = self.mul(&a[0], &self.eval(f, &a[1..]));
            for i in 1..=p {
                let mut args: Vec<Vec<i64>> = a[..i - 1].to_vec();
                args.push(self.mul(&a[i - 1], &a[i]));
                args.extend_from_slice(&a[i + 1..]);
                for (o, v) in out.iter_mut().zip(self.eval(f, &args)) {
                    *o += sign(i) * v;
                }
            }
            let last = self.mul(&self.eval(f, &a[..p]), &a[p]);
            for (o, v) in out.iter_mut().zip(last) {
                *o += sign(p + 1) * v;
            }
            out
        })
    }

    /// `b(a_0..a_n) = sum_{i<n} (-1)^i (.., a_i a_{i+1}, ..) + (-1)^n a_n a_0 (x) a_1..a_{n-1}`.
    pub fn boundary(&self, x: &[i64], n: usize) -> Vec<i64> {
        self.chain_map(x, n, n - 1, |a, out| {
            for i in 0..n {
                let mut slots = a[..i].to_vec();
                slots.push(self.mul(&a[i], &a[i + 1]));
                slots.extend_from_slice(&a[i + 2..]);
                self.add_tensor(out, sign(i), &slots);
            }
            let mut slots = vec![self.mul(&a[n], &a[0])];
            slots.extend_from_slice(&a[1..n]);
            self.add_tensor(out, sign(n), &slots);
        })
    }

    /// `(f cup g)(a_1..a_{p+q}) = g(a_1..a_q) f(a_{q+1}..a_{p+q})`.
    pub fn cup(&self, f: &[i64], p: usize, g: &[i64], q: usize) -> Vec<i64> {
        self.cochain_from(p + q, |a| self.mul(&self.eval(g, &a[..q]), &self.eval(f, &a[q..])))
    }

    /// `f o g = sum_i (-1)^{(q-1)(i-1)} f(a_1, .., g(a_i..), ..)`.
    fn circ(&self, f: &[i64], p: usize, g: &[i64], q: usize) -> Vec<i64> {
        self.cochain_from(p + q - 1, |a| {
            let mut out = vec![0; self.dim];
            for i in 1..=p {
                let mut args = a[..i - 1].to_vec();
                args.push(self.eval(g, &a[i - 1..i - 1 + q]));
                args.extend_from_slice(&a[i - 1 + q..]);
                let s = sign((q + 1) * (i + 1));
                for (o, v) in out.iter_mut().zip(self.eval(f, &args)) {
                    *o += s * v;
                }
            }
            out
        })
    }

    /// Gerstenhaber bracket `f o g - (-1)^{(p-1)(q-1)} g o f`.
    pub fn bracket(&self, f: &[i64], p: usize, g: &[i64], q: usize) -> Vec<i64> {
        let fg = self.circ(f, p, g, q);
        let gf = self.circ(g, q, f, p);
        let s = sign((p + 1) * (q + 1));
        fg.iter().zip(gf).map(|(a, b)| a - s * b).collect()
    }

    /// `i_f(a_0..a_n) = a_0 f(a_1..a_p) (x) a_{p+1}..a_n`.
    pub fn cap(&self, f: &[i64], p: usize, x: &[i64], n: usize) -> Vec<i64> {
        self.chain_map(x, n, n - p, |a, out| {
            let mut slots = vec![self.mul(&a[0], &self.eval(f, &a[1..=p]))];
            slots.extend_from_slice(&a[p + 1..]);
            self.add_tensor(out, 1, &slots);
        })
    }

    /// `L_f(a_0..a_n)`: `f` on each window `a_i..a_{i+p-1}` (`i >= 1`) with sign
    /// `(-1)^{(p-1)(i-1)}`, plus `f` on the `j`-th cyclic window starting at
    /// `a_{n+2-j}` (`j = 1..p`, indices mod `n+1`) placed in front with the
    /// remaining factors in cyclic order and sign `(-1)^{n(j-1)+p-1}`.
    pub fn lie(&self, f: &[i64], p: usize, x: &[i64], n: usize) -> Vec<i64> {
        self.chain_map(x, n, n + 1 - p, |a, out| {
            for i in 1..=(n + 1).saturating_sub(p) {
                let mut slots = a[..i].to_vec();
                slots.push(self.eval(f, &a[i..i + p]));
                slots.extend_from_slice(&a[i + p..]);
                self.add_tensor(out, sign((p + 1) * (i + 1)), &slots);
            }
            for j in 1..=p {
                let start = (n + 2 - j) % (n + 1);
                let rot: Vec<Vec<i64>> = (0..=n).map(|k| a[(start + k) % (n + 1)].clone()).collect();
                let mut slots = vec![self.eval(f, &rot[..p])];
                slots.extend_from_slice(&rot[p..]);
                self.add_tensor(out, sign(n * (j - 1) + p - 1), &slots);
            }
        })
    }

    /// `B x = sum_i (-1)^{in} (1 (x) r^i x - r(1 (x) r^i x))` with the unsigned
    /// rotation `r(a_0..a_n) = a_n (x) a_0..a_{n-1}`.
    pub fn connes_b(&self, x: &[i64], n: usize) -> Vec<i64> {
        self.chain_map(x, n, n + 1, |a, out| {
            for i in 0..=n {
                let rotated: Vec<Vec<i64>> = (0..=n).map(|k| a[(k + n + 1 - i) % (n + 1)].clone()).collect();
                let mut s = vec![self.unit.clone()];
                s.extend(rotated);
                self.add_tensor(out, sign(i * n), &s);
                let mut t = vec![s[n + 1].clone()];
                t.extend_from_slice(&s[..=n]);
                self.add_tensor(out, -sign(i * n), &t);
            }
        })
    }
}
