use super::ThermoError;

const NORM_TOL: f64 = 1e-12;

/// `-x ln x`, continuous at 0.
pub fn psi(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        -x * x.ln()
    }
}

fn check_probs<'a>(p: impl IntoIterator<Item = &'a f64>) -> Result<(), ThermoError> {
    let mut sum = 0.0;
    for &x in p {
        if x.is_nan() || x < 0.0 {
            return Err(ThermoError::Negative(x));
        }
        sum += x;
    }
    if (sum - 1.0).abs() > NORM_TOL {
        return Err(ThermoError::NotNormalized(sum));
    }
    Ok(())
}

pub fn partition_entropy(p: &[f64]) -> Result<f64, ThermoError> {
    check_probs(p)?;
    Ok(p.iter().map(|&x| psi(x)).sum())
}

/// Joint law of two partitions: `cell[i][j] = mu(P_i ∩ Q_j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct JointPartition {
    cells: Vec<Vec<f64>>,
}

impl JointPartition {
    pub fn new(cells: Vec<Vec<f64>>) -> Result<Self, ThermoError> {
        let width = cells.first().map_or(0, Vec::len);
        if cells.is_empty() || width == 0 || cells.iter().any(|r| r.len() != width) {
            return Err(ThermoError::Shape);
        }
        check_probs(cells.iter().flatten())?;
        Ok(JointPartition { cells })
    }

    pub fn p(&self) -> Vec<f64> {
        self.cells.iter().map(|r| r.iter().sum()).collect()
    }

    pub fn q(&self) -> Vec<f64> {
        (0..self.cells[0].len())
            .map(|j| self.cells.iter().map(|r| r[j]).sum())
            .collect()
    }

    pub fn transposed(&self) -> JointPartition {
        let cells = (0..self.cells[0].len())
            .map(|j| self.cells.iter().map(|r| r[j]).collect())
            .collect();
        JointPartition { cells }
    }

    /// True when every atom of Q sits inside one atom of P (up to null sets).
    pub fn q_refines_p(&self) -> bool {
        (0..self.cells[0].len()).all(|j| self.cells.iter().filter(|r| r[j] > 0.0).count() <= 1)
    }
}

pub fn joint_entropy(j: &JointPartition) -> f64 {
    j.cells.iter().flatten().map(|&x| psi(x)).sum()
}

/// `H(P | Q) = -sum mu(P_i ∩ Q_j) ln(mu(P_i ∩ Q_j) / mu(Q_j))`.
pub fn conditional_entropy(j: &JointPartition) -> f64 {
    let q = j.q();
    let mut h = 0.0;
    for row in &j.cells {
        for (x, qj) in row.iter().zip(&q) {
            if *x > 0.0 {
                h -= x * (x / qj).ln();
            }
        }
    }
    h.max(0.0)
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub holds: bool,
}

/// The standard partition-entropy facts, evaluated to `tol`. The refinement
/// items are only reported when Q refines P.
pub fn entropy_identities(j: &JointPartition, tol: f64) -> Vec<IdentityCheck> {
    let hp = partition_entropy(&j.p()).expect("marginal of a valid joint");
    let hq = partition_entropy(&j.q()).expect("marginal of a valid joint");
    let hpq = joint_entropy(j);
    let h_p_given_q = conditional_entropy(j);
    let h_q_given_p = conditional_entropy(&j.transposed());
    let atoms = j.p().len() as f64;
    let mut out = vec![
        IdentityCheck {
            name: "0 <= H(P|Q) <= H(P) <= ln|P|",
            holds: -tol <= h_p_given_q && h_p_given_q <= hp + tol && hp <= atoms.ln() + tol,
        },
        IdentityCheck {
            name: "H(P v Q) = H(P) + H(Q|P)",
            holds: (hpq - hp - h_q_given_p).abs() <= tol,
        },
        IdentityCheck {
            name: "H(P) <= H(Q) + H(P|Q)",
            holds: hp <= hq + h_p_given_q + tol,
        },
    ];
    if j.q_refines_p() {
        out.push(IdentityCheck {
            name: "Q refines P => H(P|Q) = 0",
            holds: h_p_given_q.abs() <= tol,
        });
        out.push(IdentityCheck {
            name: "Q refines P => H(P v Q) = H(Q) >= H(P)",
            holds: (hpq - hq).abs() <= tol && hq + tol >= hp,
        });
    }
    out
}
