use serde::Serialize;

use super::ThermoError;
use crate::symbolic::{ForbiddenSet, Pattern};

pub const TORUS_LIMIT: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TorusResult {
    pub beta: f64,
    pub n: usize,
    /// `ln Z`; at infinite `beta` the log of the ground-state count.
    pub log_z: f64,
    /// Probability of each letter at a site (the same at every site by symmetry).
    pub marginals: Vec<f64>,
    pub expected_energy: f64,
    pub ground_energy: u64,
    pub ground_states: u64,
    pub configurations: u64,
}

/// Forbidden patterns as offset lists relative to their lower-left corner.
fn offsets(forbidden: &ForbiddenSet<u8>) -> Vec<Vec<(i64, i64, u8)>> {
    forbidden
        .patterns()
        .iter()
        .map(|p| {
            let (lo, _) = p.bounds().expect("non-empty pattern");
            p.cells()
                .map(|(q, &s)| (q.x - lo.x, q.y - lo.y, s))
                .collect()
        })
        .collect()
}

/// Number of placements of forbidden patterns on the `n x n` torus, `cells[y * n + x]`.
pub fn torus_energy(cells: &[u8], n: usize, forbidden: &ForbiddenSet<u8>) -> u64 {
    count_hits(cells, n, &offsets(forbidden))
}

fn count_hits(cells: &[u8], n: usize, pats: &[Vec<(i64, i64, u8)>]) -> u64 {
    let n_i = n as i64;
    let mut e = 0;
    for pat in pats {
        for y in 0..n_i {
            for x in 0..n_i {
                if pat.iter().all(|&(dx, dy, s)| {
                    let (cx, cy) = ((x + dx).rem_euclid(n_i), (y + dy).rem_euclid(n_i));
                    cells[(cy * n_i + cx) as usize] == s
                }) {
                    e += 1;
                }
            }
        }
    }
    e
}

/// Exact Gibbs state on the `n x n` torus over letters `0..q`, energy being
/// the number of forbidden-pattern occurrences.
pub fn exact_gibbs_torus_2d(
    q: usize,
    forbidden: &ForbiddenSet<u8>,
    beta: f64,
    n: usize,
) -> Result<TorusResult, ThermoError> {
    let configurations = (q as u64)
        .checked_pow((n * n) as u32)
        .filter(|&c| c <= TORUS_LIMIT);
    let Some(configurations) = configurations else {
        return Err(ThermoError::TorusTooLarge {
            q,
            n,
            limit: TORUS_LIMIT,
        });
    };
    if q == 0 || n == 0 || beta.is_nan() || beta < 0.0 {
        return Err(ThermoError::Spec("need q >= 1, n >= 1, beta >= 0".into()));
    }
    let pats = offsets(forbidden);
    let sites = n * n;
    let mut cells = vec![0u8; sites];
    let mut energies = Vec::with_capacity(configurations as usize);
    let mut counts = Vec::with_capacity(configurations as usize);
    for _ in 0..configurations {
        energies.push(count_hits(&cells, n, &pats));
        let mut c = vec![0u32; q];
        cells.iter().for_each(|&s| c[s as usize] += 1);
        counts.push(c);
        for cell in cells.iter_mut() {
            *cell += 1;
            if (*cell as usize) < q {
                break;
            }
            *cell = 0;
        }
    }
    let ground_energy = *energies.iter().min().expect("at least one configuration");
    let ground_states = energies.iter().filter(|&&e| e == ground_energy).count() as u64;
    // weights relative to the ground energy keep exp() in range
    let weight = |e: u64| {
        if e == ground_energy {
            1.0
        } else if beta.is_infinite() {
            0.0
        } else {
            (-beta * (e - ground_energy) as f64).exp()
        }
    };
    let mut z = 0.0;
    let mut energy = 0.0;
    let mut marg = vec![0.0; q];
    for (e, c) in energies.iter().zip(&counts) {
        let w = weight(*e);
        z += w;
        energy += w * *e as f64;
        for (m, &k) in marg.iter_mut().zip(c) {
            *m += w * k as f64;
        }
    }
    let shift = if beta.is_infinite() {
        0.0
    } else {
        -beta * ground_energy as f64
    };
    Ok(TorusResult {
        beta,
        n,
        log_z: z.ln() + shift,
        marginals: marg.iter().map(|m| m / (z * sites as f64)).collect(),
        expected_energy: energy / z,
        ground_energy,
        ground_states,
        configurations,
    })
}

/// Lay a torus configuration out as a grid pattern.
pub fn torus_pattern(cells: &[u8], n: usize) -> Pattern<u8> {
    let rows: Vec<Vec<u8>> = cells.chunks(n).map(<[u8]>::to_vec).collect();
    Pattern::grid(&rows).expect("square")
}
