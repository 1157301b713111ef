use std::path::PathBuf;

use clap::Subcommand;
use zerotemp_core::planar::vertical_alignment_forbidden;
use zerotemp_core::symbolic::format::parse_char_patterns;
use zerotemp_core::symbolic::{ForbiddenSet, Pattern};
use zerotemp_core::thermo::{
    beta_sweep, boundary_check, conditional_entropy, entropy_identities, exact_gibbs_torus_2d,
    joint_entropy, lift_entropy_check, parse_betas, partition_entropy, potential_sweep, sweep_csv,
    JointPartition, PotentialSpec, TransferOptions,
};

use crate::report::{json, usage, Failure, Report};
use crate::tower_cmd::{TowerArgs, TOY};

#[derive(Subcommand, Debug)]
pub enum ThermoCmd {
    /// Transfer-matrix pressure and marginals over a range of beta, as CSV
    Sweep {
        #[command(flatten)]
        tower: TowerArgs,
        /// Use the tower's forbidden words up to this length as the potential
        #[arg(long, value_name = "M", conflicts_with = "forbidden")]
        forbidden_from_tower: Option<usize>,
        /// Forbidden 1D words (digits) instead of a tower
        #[arg(long)]
        forbidden: Option<PathBuf>,
        /// Alphabet size for --forbidden
        #[arg(long, default_value_t = 2)]
        q: usize,
        /// START:STOP:STEP or a comma list; `inf` is allowed in a list
        #[arg(long, default_value = "0:50:1")]
        betas: String,
        #[arg(long, default_value_t = 1 << 16)]
        max_states: usize,
    },
    /// Exact Gibbs state on a small torus by full enumeration
    Torus {
        #[arg(long, default_value_t = 2)]
        q: usize,
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// A number or `inf`
        #[arg(long, default_value = "inf")]
        beta: f64,
        /// Forbidden patterns (digits); default forbids unequal vertical neighbours
        #[arg(long)]
        forbidden: Option<PathBuf>,
    },
    /// Entropies of a joint partition law and the standard identities
    Entropy {
        /// Rows of mu(P_i ∩ Q_j), `;` between rows and `,` within
        #[arg(long)]
        joint: String,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
}

pub fn run(cmd: &ThermoCmd) -> Result<Report, Failure> {
    match cmd {
        ThermoCmd::Sweep {
            tower,
            forbidden_from_tower,
            forbidden,
            q,
            betas,
            max_states,
        } => {
            let betas = parse_betas(betas)?;
            let opts = TransferOptions {
                max_states: *max_states,
                ..TransferOptions::default()
            };
            let (sweep, extra) = match (forbidden_from_tower, forbidden) {
                (Some(m), _) => {
                    let t = tower.build(&TOY, &TOY)?;
                    let s = beta_sweep(&t, *m, &betas, opts)?;
                    let k = s.k.expect("tower sweep");
                    let spec = zerotemp_core::thermo::tower_potential(&t, *m, opts)?;
                    let blocks = t.level(k)?.language().to_vec();
                    let mut extra = vec![boundary_check(&blocks, &spec)];
                    if k > 0 {
                        extra.push(lift_entropy_check(&t, k)?);
                    }
                    (s, extra)
                }
                (None, Some(path)) => {
                    let spec =
                        PotentialSpec::new(*q, digit_words(&std::fs::read_to_string(path)?)?)?;
                    (potential_sweep(&spec, &betas, opts)?, Vec::new())
                }
                (None, None) => {
                    return Err(usage(
                        "one of --forbidden-from-tower or --forbidden is required",
                    ))
                }
            };
            let mut r = Report::new(sweep_csv(&sweep));
            r.note(format!(
                "range {} level {} forbidden words {}",
                sweep.m,
                sweep.k.map_or("-".into(), |k| k.to_string()),
                sweep.forbidden_words
            ));
            r.check("bound_ok on every row", sweep.all_ok());
            let (rise, bend) = sweep.shape_defects();
            r.check(
                format!("pressure non-increasing and convex (max rise {rise:.3e}, min second difference {bend:.3e})"),
                sweep.shape_ok(1e-8),
            );
            let worst = sweep
                .rows
                .iter()
                .map(|s| s.result.stationarity)
                .fold(0.0, f64::max);
            r.check(format!("stationarity {worst:.3e}"), worst <= 1e-10);
            for c in extra {
                r.check(
                    format!("{} ({:.6} vs {:.6})", c.name, c.lhs, c.rhs),
                    c.holds,
                );
            }
            Ok(r)
        }
        ThermoCmd::Torus {
            q,
            n,
            beta,
            forbidden,
        } => {
            let f = match forbidden {
                Some(path) => {
                    let ps = parse_char_patterns(&std::fs::read_to_string(path)?)?;
                    let ps: Result<Vec<Pattern<u8>>, Failure> =
                        ps.iter().map(|p| digits(p, *q)).collect();
                    ForbiddenSet::new(ps?)
                }
                None => vertical_alignment_forbidden(&(0..*q as u8).collect::<Vec<_>>()),
            };
            let t = exact_gibbs_torus_2d(*q, &f, *beta, *n)?;
            let mut r = Report::new(json(&t)?);
            r.note(format!(
                "{} configurations, {} ground states of energy {}",
                t.configurations, t.ground_states, t.ground_energy
            ));
            Ok(r)
        }
        ThermoCmd::Entropy { joint, tol } => {
            let cells: Result<Vec<Vec<f64>>, _> = joint
                .split(';')
                .map(|row| row.split(',').map(|x| x.trim().parse::<f64>()).collect())
                .collect();
            let cells = cells.map_err(|e| usage(format!("--joint: {e}")))?;
            let j = JointPartition::new(cells)?;
            let mut r = Report::new(format!(
                "H(P) = {:.12}\nH(Q) = {:.12}\nH(P v Q) = {:.12}\nH(P|Q) = {:.12}\nH(Q|P) = {:.12}\n",
                partition_entropy(&j.p())?,
                partition_entropy(&j.q())?,
                joint_entropy(&j),
                conditional_entropy(&j),
                conditional_entropy(&j.transposed()),
            ));
            for c in entropy_identities(&j, *tol) {
                r.check(c.name, c.holds);
            }
            Ok(r)
        }
    }
}

fn digit_words(text: &str) -> Result<Vec<Vec<u8>>, Failure> {
    parse_char_patterns(text)?
        .iter()
        .map(|p| {
            if p.dim() != zerotemp_core::symbolic::Dim::One {
                return Err(usage("sweep potentials take 1D words only"));
            }
            Ok(digits(p, 10)?.symbols())
        })
        .collect()
}

fn digits(p: &Pattern<char>, q: usize) -> Result<Pattern<u8>, Failure> {
    if let Some((_, c)) = p
        .cells()
        .find(|(_, c)| c.to_digit(10).is_none_or(|d| d as usize >= q))
    {
        return Err(usage(format!("symbol `{c}` is not a letter below {q}")));
    }
    Ok(p.map(|c| c.to_digit(10).expect("checked") as u8))
}
