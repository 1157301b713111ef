use std::collections::BTreeSet;

use serde::Serialize;

use super::ThermoError;

/// Indicator potential of a union of cylinders: `phi(x) = 1` when `x` starts with a forbidden word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PotentialSpec {
    alphabet: usize,
    forbidden: BTreeSet<Vec<u8>>,
    range: usize,
}

impl PotentialSpec {
    /// Letters are `0..alphabet`. The range is the longest forbidden word, at least 2.
    pub fn new(
        alphabet: usize,
        forbidden: impl IntoIterator<Item = Vec<u8>>,
    ) -> Result<Self, ThermoError> {
        let forbidden: BTreeSet<Vec<u8>> = forbidden.into_iter().collect();
        if alphabet == 0 {
            return Err(ThermoError::Spec("empty alphabet".into()));
        }
        if let Some(w) = forbidden
            .iter()
            .find(|w| w.is_empty() || w.iter().any(|&c| c as usize >= alphabet))
        {
            return Err(ThermoError::Spec(format!("bad forbidden word {w:?}")));
        }
        let range = forbidden.iter().map(Vec::len).max().unwrap_or(0).max(2);
        Ok(PotentialSpec {
            alphabet,
            forbidden,
            range,
        })
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    pub fn range(&self) -> usize {
        self.range
    }

    pub fn forbidden(&self) -> &BTreeSet<Vec<u8>> {
        &self.forbidden
    }

    /// `phi` evaluated on a window of length at least the range.
    pub fn phi(&self, window: &[u8]) -> bool {
        (1..=self.range.min(window.len())).any(|l| self.forbidden.contains(&window[..l]))
    }

    pub fn states(&self) -> usize {
        self.alphabet.pow(self.range as u32 - 1)
    }

    fn window(&self, state: usize, letter: usize) -> Vec<u8> {
        let mut w = vec![0u8; self.range];
        let mut s = state;
        for i in (0..self.range - 1).rev() {
            w[i] = (s % self.alphabet) as u8;
            s /= self.alphabet;
        }
        w[self.range - 1] = letter as u8;
        w
    }
}

#[derive(Debug, Clone, Copy)]
pub struct TransferOptions {
    pub tol: f64,
    pub max_iter: usize,
    pub max_states: usize,
}

impl Default for TransferOptions {
    fn default() -> Self {
        TransferOptions {
            tol: 1e-12,
            max_iter: 100_000,
            max_states: 1 << 16,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TransferResult {
    pub beta: f64,
    /// `ln` of the spectral radius, in nats.
    pub pressure: f64,
    /// Equilibrium probability of each one-letter cylinder.
    pub marginals: Vec<f64>,
    pub mu_f: f64,
    pub iterations: usize,
    /// Max-norm of `pi P - pi` for the equilibrium Markov chain.
    pub stationarity: f64,
}

impl TransferResult {
    /// `ln|A| / beta`, infinite at `beta = 0`.
    pub fn mu_f_bound(&self) -> f64 {
        (self.marginals.len() as f64).ln() / self.beta
    }
}

/// Sparse de Bruijn matrix on words of length `range - 1`: state `s` steps
/// to `(s * q + a) mod q^(range-1)` with weight `exp(-beta phi(s a))`.
struct DeBruijn {
    q: usize,
    n: usize,
    weight: Vec<f64>,
}

impl DeBruijn {
    fn target(&self, s: usize, a: usize) -> usize {
        (s * self.q + a) % self.n
    }

    /// Row-major dense copy; parallel edges add up.
    fn dense(&self) -> Vec<f64> {
        let mut d = vec![0.0; self.n * self.n];
        for s in 0..self.n {
            for a in 0..self.q {
                d[s * self.n + self.target(s, a)] += self.weight[s * self.q + a];
            }
        }
        d
    }

    fn apply(&self, x: &[f64], out: &mut [f64]) {
        for (s, o) in out.iter_mut().enumerate() {
            *o = (0..self.q)
                .map(|a| self.weight[s * self.q + a] * x[self.target(s, a)])
                .sum();
        }
    }

    fn apply_left(&self, x: &[f64], out: &mut [f64]) {
        out.iter_mut().for_each(|o| *o = 0.0);
        for s in 0..self.n {
            for a in 0..self.q {
                out[self.target(s, a)] += x[s] * self.weight[s * self.q + a];
            }
        }
    }

    /// Period of the positive-weight graph, or `None` when it is not strongly connected.
    fn period(&self) -> Option<usize> {
        let reach = |forward: bool| {
            let mut level = vec![usize::MAX; self.n];
            level[0] = 0;
            let mut stack = vec![0];
            let mut adj_rev: Vec<Vec<usize>> = Vec::new();
            if !forward {
                adj_rev = vec![Vec::new(); self.n];
                for s in 0..self.n {
                    for a in 0..self.q {
                        if self.weight[s * self.q + a] > 0.0 {
                            adj_rev[self.target(s, a)].push(s);
                        }
                    }
                }
            }
            while let Some(s) = stack.pop() {
                let next: Vec<usize> = if forward {
                    (0..self.q)
                        .filter(|&a| self.weight[s * self.q + a] > 0.0)
                        .map(|a| self.target(s, a))
                        .collect()
                } else {
                    adj_rev[s].clone()
                };
                for t in next {
                    if level[t] == usize::MAX {
                        level[t] = level[s] + 1;
                        stack.push(t);
                    }
                }
            }
            level
        };
        let fwd = reach(true);
        if fwd.contains(&usize::MAX) || reach(false).contains(&usize::MAX) {
            return None;
        }
        // DFS depths are lengths of actual paths from the root, which is all
        // the gcd-of-level-differences formula needs.
        let mut g = 0usize;
        for s in 0..self.n {
            for a in 0..self.q {
                if self.weight[s * self.q + a] > 0.0 {
                    let t = self.target(s, a);
                    let d = (fwd[s] + 1).abs_diff(fwd[t]);
                    g = gcd(g, d);
                }
            }
        }
        Some(g)
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn normalize(x: &mut [f64]) {
    let s: f64 = x.iter().sum();
    x.iter_mut().for_each(|v| *v /= s);
}

/// Up to this many states the Perron vector comes from shifted inverse
/// iteration on a dense copy; beyond it, from power iteration.
const DENSE_STATES: usize = 256;

/// Collatz-Wielandt bracket `[min, max]` of `(Mx)_i / x_i` for positive `x`:
/// the spectral radius always lies inside it.
fn bracket(x: &[f64], mx: &[f64]) -> (f64, f64) {
    x.iter()
        .zip(mx)
        .fold((f64::INFINITY, 0.0f64), |(lo, hi), (a, b)| {
            let r = b / a;
            (lo.min(r), hi.max(r))
        })
}

fn converged(lo: f64, hi: f64, tol: f64) -> bool {
    hi - lo <= tol * hi
}

/// `|Mx - lambda x|_1 / lambda` for `x` summing to one, with `lambda = sum(Mx)`.
/// Unlike the bracket it ignores the relative error of tiny entries.
fn residual(x: &[f64], mx: &[f64]) -> f64 {
    let lambda: f64 = mx.iter().sum();
    x.iter()
        .zip(mx)
        .map(|(a, b)| (b - lambda * a).abs())
        .sum::<f64>()
        / lambda
}

/// Power iteration on `M + I`, which has the same Perron vector as `M` and a
/// larger spectral gap ratio. Stops once the bracket is `tol`-tight.
fn perron_power(
    n: usize,
    apply: impl Fn(&[f64], &mut [f64]),
    opts: TransferOptions,
) -> Result<(Vec<f64>, usize), ThermoError> {
    let mut x = vec![1.0 / n as f64; n];
    let mut y = vec![0.0; n];
    for it in 1..=opts.max_iter {
        apply(&x, &mut y);
        let (lo, hi) = bracket(&x, &y);
        if converged(lo, hi, opts.tol) {
            return Ok((x, it));
        }
        y.iter_mut().zip(&x).for_each(|(a, b)| *a += b);
        normalize(&mut y);
        std::mem::swap(&mut x, &mut y);
    }
    Err(ThermoError::NoConvergence {
        iterations: opts.max_iter,
    })
}

/// Noda iteration: solve `(mu - M) y = x` with `mu` the upper end of the
/// bracket. `mu - M` is then a nonsingular M-matrix, so `y` stays positive,
/// and convergence is superlinear however small the spectral gap.
fn perron_dense(
    matrix: &[f64],
    n: usize,
    opts: TransferOptions,
) -> Result<(Vec<f64>, usize), ThermoError> {
    let apply = |x: &[f64], out: &mut [f64]| {
        for (i, o) in out.iter_mut().enumerate() {
            *o = matrix[i * n..(i + 1) * n]
                .iter()
                .zip(x)
                .map(|(a, b)| a * b)
                .sum();
        }
    };
    let mut x = vec![1.0 / n as f64; n];
    let mut mx = vec![0.0; n];
    let mut last = f64::INFINITY;
    let budget = opts.max_iter.min(200);
    for it in 1..=budget {
        apply(&x, &mut mx);
        let (lo, hi) = bracket(&x, &mx);
        let r = residual(&x, &mx);
        // tiny entries can keep the bracket loose at working precision; stop
        // once the residual is small and has stopped improving
        if converged(lo, hi, opts.tol) || (r <= opts.tol && r > 0.5 * last) {
            return Ok((x, it));
        }
        last = r;
        let mut shifted: Vec<f64> = matrix.iter().map(|a| -a).collect();
        for i in 0..n {
            shifted[i * n + i] += hi;
        }
        let mut y = x.clone();
        if !solve(&mut shifted, &mut y, n) {
            break;
        }
        // a shift rounded just below the eigenvalue flips every sign at once
        if y.iter().all(|v| *v < 0.0) {
            y.iter_mut().for_each(|v| *v = -*v);
        }
        if y.iter().any(|v| !v.is_finite() || *v <= 0.0) {
            break;
        }
        normalize(&mut y);
        x = y;
    }
    apply(&x, &mut mx);
    if residual(&x, &mx) <= opts.tol {
        Ok((x, budget))
    } else {
        Err(ThermoError::NoConvergence { iterations: budget })
    }
}

/// Stationary law of an irreducible stochastic matrix by state reduction
/// (Grassmann, Taksar and Heyman). Only sums and products of nonnegative
/// numbers appear, so small entries keep their relative accuracy.
fn stationary_gth(mut p: Vec<f64>, n: usize) -> Vec<f64> {
    for k in (1..n).rev() {
        let out: f64 = p[k * n..k * n + k].iter().sum();
        for i in 0..k {
            p[i * n + k] /= out;
        }
        for i in 0..k {
            let pik = p[i * n + k];
            if pik != 0.0 {
                for j in 0..k {
                    p[i * n + j] += pik * p[k * n + j];
                }
            }
        }
    }
    let mut pi = vec![0.0; n];
    pi[0] = 1.0;
    for k in 1..n {
        pi[k] = (0..k).map(|i| pi[i] * p[i * n + k]).sum();
    }
    normalize(&mut pi);
    pi
}

/// Gaussian elimination with partial pivoting, in place. False if singular.
fn solve(a: &mut [f64], b: &mut [f64], n: usize) -> bool {
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i * n + col].abs().total_cmp(&a[j * n + col].abs()))
            .expect("non-empty range");
        let p = a[pivot * n + col];
        if p == 0.0 || !p.is_finite() {
            return false;
        }
        if pivot != col {
            for k in 0..n {
                a.swap(pivot * n + k, col * n + k);
            }
            b.swap(pivot, col);
        }
        for row in col + 1..n {
            let f = a[row * n + col] / p;
            if f != 0.0 {
                for k in col..n {
                    a[row * n + k] -= f * a[col * n + k];
                }
                b[row] -= f * b[col];
            }
        }
    }
    for row in (0..n).rev() {
        let tail: f64 = (row + 1..n).map(|k| a[row * n + k] * b[k]).sum();
        b[row] = (b[row] - tail) / a[row * n + row];
    }
    true
}

/// Pressure of `beta * phi` and the equilibrium marginals from the Perron vectors.
pub fn transfer_pressure(
    spec: &PotentialSpec,
    beta: f64,
    opts: TransferOptions,
) -> Result<TransferResult, ThermoError> {
    if beta.is_nan() || beta < 0.0 {
        return Err(ThermoError::Spec(format!(
            "beta must be non-negative, got {beta}"
        )));
    }
    let n = spec.states();
    if n > opts.max_states {
        return Err(ThermoError::TooManyStates {
            states: n,
            limit: opts.max_states,
        });
    }
    let q = spec.alphabet;
    let mut phi = vec![false; n * q];
    let mut weight = vec![0.0; n * q];
    for s in 0..n {
        for a in 0..q {
            let hit = spec.phi(&spec.window(s, a));
            phi[s * q + a] = hit;
            weight[s * q + a] = if !hit {
                1.0
            } else if beta.is_infinite() {
                0.0
            } else {
                (-beta).exp()
            };
        }
    }
    let m = DeBruijn { q, n, weight };
    match m.period() {
        Some(1) => {}
        period => return Err(ThermoError::NotPrimitive { period }),
    }
    let dense = n <= DENSE_STATES;
    let (v, it_r) = if dense {
        perron_dense(&m.dense(), n, opts)?
    } else {
        perron_power(n, |x, out| m.apply(x, out), opts)?
    };
    let mut mv = vec![0.0; n];
    m.apply(&v, &mut mv);
    let lambda = mv.iter().sum::<f64>() / v.iter().sum::<f64>();

    // equilibrium chain: s -> s a with probability w v_t / (M v)_s
    let prob: Vec<f64> = (0..n * q)
        .map(|e| m.weight[e] * v[m.target(e / q, e % q)] / mv[e / q])
        .collect();
    let (pi, it_l) = if dense {
        let mut chain = vec![0.0; n * n];
        for (e, p) in prob.iter().enumerate() {
            chain[(e / q) * n + m.target(e / q, e % q)] += p;
        }
        (stationary_gth(chain, n), 0)
    } else {
        let (u, it) = perron_power(n, |x, out| m.apply_left(x, out), opts)?;
        let z: f64 = u.iter().zip(&v).map(|(a, b)| a * b).sum();
        (u.iter().zip(&v).map(|(a, b)| a * b / z).collect(), it)
    };
    let mut marginals = vec![0.0; q];
    let mut mu_f = 0.0;
    let mut next = vec![0.0; n];
    let lead = n / q;
    for s in 0..n {
        marginals[s / lead] += pi[s];
        for a in 0..q {
            let t = m.target(s, a);
            let p = prob[s * q + a];
            next[t] += pi[s] * p;
            if phi[s * q + a] {
                mu_f += pi[s] * p;
            }
        }
    }
    let stationarity = next
        .iter()
        .zip(&pi)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    Ok(TransferResult {
        beta,
        pressure: lambda.ln(),
        marginals,
        mu_f,
        iterations: it_r.max(it_l),
        stationarity,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_shift() {
        let spec = PotentialSpec::new(2, vec![]).unwrap();
        let r = transfer_pressure(&spec, 3.0, TransferOptions::default()).unwrap();
        assert!((r.pressure - 2f64.ln()).abs() < 1e-12);
        assert!((r.marginals[0] - 0.5).abs() < 1e-12);
        assert_eq!(r.mu_f, 0.0);
    }

    #[test]
    fn golden_mean_limit() {
        let spec = PotentialSpec::new(2, vec![vec![1, 1]]).unwrap();
        let golden = ((1.0 + 5f64.sqrt()) / 2.0).ln();
        let r = transfer_pressure(&spec, 50.0, TransferOptions::default()).unwrap();
        assert!((r.pressure - golden).abs() < 1e-6);
        assert!(r.stationarity < 1e-10);
        let r0 = transfer_pressure(&spec, 0.0, TransferOptions::default()).unwrap();
        assert!((r0.pressure - 2f64.ln()).abs() < 1e-12);
        let inf = transfer_pressure(&spec, f64::INFINITY, TransferOptions::default()).unwrap();
        assert!((inf.pressure - golden).abs() < 1e-12);
    }

    #[test]
    fn periodic_and_reducible_are_flagged() {
        let alt = PotentialSpec::new(2, vec![vec![0, 0], vec![1, 1]]).unwrap();
        assert_eq!(
            transfer_pressure(&alt, f64::INFINITY, TransferOptions::default()).unwrap_err(),
            ThermoError::NotPrimitive { period: Some(2) }
        );
        let split = PotentialSpec::new(2, vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(
            transfer_pressure(&split, f64::INFINITY, TransferOptions::default()).unwrap_err(),
            ThermoError::NotPrimitive { period: None }
        );
    }
}
