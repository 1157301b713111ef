use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::transfer::{transfer_pressure, PotentialSpec, TransferOptions, TransferResult};
use super::ThermoError;
use crate::planar::lift_count;
use crate::planar::ln_big;
use crate::symbolic::Pattern;
use crate::tower::{forbidden_up_to, frequency, Side, Word, WordTower, ALPHABET};

/// The indicator of `F~(<= m)` over `{0, 1, 2}`, as a range-`m` potential.
pub fn tower_potential(
    tower: &WordTower,
    m: usize,
    opts: TransferOptions,
) -> Result<PotentialSpec, ThermoError> {
    let states = ALPHABET.len().checked_pow(m.saturating_sub(1) as u32);
    if m < 2 || states.is_none_or(|s| s > opts.max_states) {
        return Err(ThermoError::Truncation {
            m,
            limit: opts.max_states,
        });
    }
    let words = forbidden_up_to(tower, m)?.into_iter().flat_map(|l| l.words);
    PotentialSpec::new(ALPHABET.len(), words)
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub result: TransferResult,
    /// `ln|A| / beta`.
    pub mu_f_bound: f64,
    /// `ln|L_k| / l_k - 2 m beta / l_k`.
    pub pressure_floor: f64,
}

impl SweepRow {
    pub fn mu_f_ok(&self) -> bool {
        self.result.beta == 0.0 || self.result.mu_f <= self.mu_f_bound
    }

    pub fn pressure_ok(&self) -> bool {
        self.result.pressure >= self.pressure_floor
    }

    pub fn bound_ok(&self) -> bool {
        self.mu_f_ok() && self.pressure_ok()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Sweep {
    pub m: usize,
    /// Level whose concatenations supply the entropy floor, for tower potentials.
    pub k: Option<u32>,
    pub forbidden_words: usize,
    pub rows: Vec<SweepRow>,
}

impl Sweep {
    pub fn all_ok(&self) -> bool {
        self.rows.iter().all(SweepRow::bound_ok)
    }

    /// Largest increase between consecutive rows and the most negative
    /// second difference, the latter built from slopes so that uneven
    /// steps are handled (it is the plain second difference for even steps).
    pub fn shape_defects(&self) -> (f64, f64) {
        let pts: Vec<(f64, f64)> = self
            .rows
            .iter()
            .map(|r| (r.result.beta, r.result.pressure))
            .collect();
        let rise = pts.windows(2).map(|w| w[1].1 - w[0].1).fold(0.0, f64::max);
        let bend = pts
            .windows(3)
            .filter(|w| w[2].0.is_finite())
            .map(|w| {
                let s1 = (w[1].1 - w[0].1) / (w[1].0 - w[0].0);
                let s2 = (w[2].1 - w[1].1) / (w[2].0 - w[1].0);
                (s2 - s1) * (w[2].0 - w[0].0) / 2.0
            })
            .fold(0.0, f64::min);
        (rise, bend)
    }

    /// Pressure non-increasing and convex in `beta`, up to `tol`.
    pub fn shape_ok(&self, tol: f64) -> bool {
        let (rise, bend) = self.shape_defects();
        rise <= tol && bend >= -tol
    }
}

/// Sweep an arbitrary potential; only the `mu(F)` bound is checked.
pub fn potential_sweep(
    spec: &PotentialSpec,
    betas: &[f64],
    opts: TransferOptions,
) -> Result<Sweep, ThermoError> {
    sweep_rows(spec, betas, opts, |_| f64::NEG_INFINITY).map(|rows| Sweep {
        m: spec.range(),
        k: None,
        forbidden_words: spec.forbidden().len(),
        rows,
    })
}

fn sweep_rows(
    spec: &PotentialSpec,
    betas: &[f64],
    opts: TransferOptions,
    floor: impl Fn(f64) -> f64,
) -> Result<Vec<SweepRow>, ThermoError> {
    if betas.windows(2).any(|w| w[0].partial_cmp(&w[1]) != Some(std::cmp::Ordering::Less)) {
        return Err(ThermoError::Spec(
            "betas must be strictly increasing".into(),
        ));
    }
    betas
        .iter()
        .map(|&beta| {
            let result = transfer_pressure(spec, beta, opts)?;
            Ok(SweepRow {
                mu_f_bound: result.mu_f_bound(),
                pressure_floor: floor(beta),
                result,
            })
        })
        .collect()
}

/// Pressure and marginals of `beta * phi` along `betas`, with `phi` the
/// indicator of the tower's forbidden words up to length `m`.
pub fn beta_sweep(
    tower: &WordTower,
    m: usize,
    betas: &[f64],
    opts: TransferOptions,
) -> Result<Sweep, ThermoError> {
    let spec = tower_potential(tower, m, opts)?;
    let k = tower
        .level_for_length(m)
        .expect("tower_potential checked the depth");
    let level = tower.level(k)?;
    let len = level.len() as f64;
    let entropy = (level.language().len() as f64).ln() / len;
    let rows = sweep_rows(&spec, betas, opts, |beta| {
        entropy - 2.0 * m as f64 * beta / len
    })?;
    Ok(Sweep {
        m,
        k: Some(k),
        forbidden_words: spec.forbidden().len(),
        rows,
    })
}

/// `start:stop:step`, inclusive of `stop` up to rounding.
pub fn parse_betas(s: &str) -> Result<Vec<f64>, ThermoError> {
    let bad = || {
        ThermoError::Spec(format!(
            "expected start:stop:step or a comma list, got `{s}`"
        ))
    };
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() == 1 {
        return s
            .split(',')
            .map(|x| x.trim().parse().map_err(|_| bad()))
            .collect();
    }
    let [a, b, c] = parts[..] else {
        return Err(bad());
    };
    let (a, b, c): (f64, f64, f64) = (
        a.parse().map_err(|_| bad())?,
        b.parse().map_err(|_| bad())?,
        c.parse().map_err(|_| bad())?,
    );
    if c.is_nan() || c <= 0.0 || b < a {
        return Err(bad());
    }
    let steps = ((b - a) / c + 1e-9).floor() as usize;
    Ok((0..=steps).map(|i| a + i as f64 * c).collect())
}

/// Fixed notation with `digits` significant digits, scientific outside `[1e-5, 1e12)`.
pub fn sig(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let mag = x.abs().log10().floor() as i32;
    if (-5..12).contains(&mag) {
        let decimals = (digits as i32 - 1 - mag).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{x:.*e}", digits - 1)
    }
}

pub const SWEEP_HEADER: &str = "beta,pressure,mu0,mu1,mu2,muF,bound_ok";

/// Header for an alphabet of `q` letters; [`SWEEP_HEADER`] when `q = 3`.
pub fn sweep_header(q: usize) -> String {
    let mus: Vec<String> = (0..q).map(|a| format!("mu{a}")).collect();
    format!("beta,pressure,{},muF,bound_ok", mus.join(","))
}

pub fn sweep_csv(sweep: &Sweep) -> String {
    let q = sweep
        .rows
        .first()
        .map_or(ALPHABET.len(), |r| r.result.marginals.len());
    let mut out = sweep_header(q);
    out.push('\n');
    for row in &sweep.rows {
        let r = &row.result;
        let mut fields = vec![sig(r.beta, 12), sig(r.pressure, 12)];
        fields.extend(r.marginals.iter().map(|&m| sig(m, 12)));
        fields.push(sig(r.mu_f, 12));
        fields.push(row.bound_ok().to_string());
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FreezingCheck {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

impl FreezingCheck {
    fn le(name: String, lhs: f64, rhs: f64) -> Self {
        FreezingCheck {
            holds: lhs <= rhs,
            name,
            lhs,
            rhs,
        }
    }

    pub fn margin(&self) -> f64 {
        self.rhs - self.lhs
    }
}

/// `mu(F) <= ln|A| / beta`; trivially true at `beta = 0`.
pub fn mu_f_check(r: &TransferResult) -> FreezingCheck {
    FreezingCheck::le("mu(F) <= ln|A| / beta".into(), r.mu_f, r.mu_f_bound())
}

/// Frequency of windows hitting `phi` under the uniform i.i.d. block
/// measure on concatenations of `words` (uniform phase), computed exactly.
pub fn concat_phi_frequency(words: &[Word], spec: &PotentialSpec) -> BigRational {
    let len = words[0].len();
    let m = spec.range();
    let span = (len - 1 + m).div_ceil(len);
    let mut hits: u64 = 0;
    let mut total: u64 = 0;
    let mut idx = vec![0usize; span];
    loop {
        let text: Vec<u8> = idx.iter().flat_map(|&i| words[i].iter().copied()).collect();
        for phase in 0..len {
            total += 1;
            if spec.phi(&text[phase..phase + m]) {
                hits += 1;
            }
        }
        let mut i = span;
        loop {
            if i == 0 {
                return BigRational::new(BigInt::from(hits), BigInt::from(total));
            }
            i -= 1;
            idx[i] += 1;
            if idx[i] < words.len() {
                break;
            }
            idx[i] = 0;
        }
    }
}

/// `nu(F) <= 2 D / l` for the concatenation measure of `words`, with `D` the potential's range.
pub fn boundary_check(words: &[Word], spec: &PotentialSpec) -> FreezingCheck {
    let nu = concat_phi_frequency(words, spec)
        .to_f64()
        .unwrap_or(f64::NAN);
    let rhs = 2.0 * spec.range() as f64 / words[0].len() as f64;
    FreezingCheck::le("nu(F) <= 2D / l".into(), nu, rhs)
}

/// `ln 2 * f^B_k <= (1/l_k) ln(number of lifted B~_k words)`.
pub fn lift_entropy_check(tower: &WordTower, k: u32) -> Result<FreezingCheck, ThermoError> {
    let level = tower.level(k)?;
    let lifted = level
        .tilde_b()
        .iter()
        .map(|w| lift_count(&Pattern::word(w.iter().copied())))
        .sum();
    let entropy = ln_big(&lifted) / level.len() as f64;
    let f = frequency(tower, k, Side::B, false)?
        .to_f64()
        .unwrap_or(f64::NAN);
    Ok(FreezingCheck::le(
        format!("ln2 f^B_{k} <= lifted entropy"),
        std::f64::consts::LN_2 * f,
        entropy,
    ))
}
