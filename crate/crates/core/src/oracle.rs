//! Ground truth independent of the closed forms: a cyclic Jacobi eigensolver
//! fed with the BFS-built matrix, and sweeps comparing it against
//! [`crate::spectrum`] and [`crate::charpoly`].

use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::charpoly::det_delta_exact;
use crate::error::{Error, Result};
use crate::matrices::{
    multipartite_graph, sqdist_from_graph, sqdist_from_partition, DenseSymMatrix,
};
use crate::partitions::{enumerate_partitions, Partition};
use crate::spectrum::{energy, full_spectrum, inertia};

/// Relative off-diagonal tolerance used when none is given.
pub const DEFAULT_JACOBI_TOL: f64 = 1e-12;
pub const MAX_SWEEPS: usize = 100;

/// Eigenvalue agreement, closed form vs oracle.
pub const EIGENVALUE_TOL: f64 = 1e-9;
/// Energy agreement, closed form vs `Σ|λ|` from the oracle.
pub const ENERGY_TOL: f64 = 1e-7;
/// Oracle eigenvalues below this magnitude count as zero.
pub const ZERO_THRESHOLD: f64 = 1e-7;
/// Relative agreement of the determinant with the oracle eigenvalue product.
pub const DET_REL_TOL: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EigenResult {
    /// Descending.
    pub eigenvalues: Vec<f64>,
    /// Completed sweeps.
    pub iterations: usize,
    /// Final off-diagonal Frobenius norm.
    pub off_norm: f64,
}

fn off_diagonal_norm(a: &[Vec<f64>]) -> f64 {
    a.iter()
        .enumerate()
        .flat_map(|(i, row)| row.iter().enumerate().filter(move |&(j, _)| j != i))
        .map(|(_, v)| v * v)
        .sum::<f64>()
        .sqrt()
}

/// All eigenvalues of a symmetric matrix by cyclic Jacobi rotations, iterated
/// until the off-diagonal norm is at most `tol · ‖M‖_F`.
pub fn symmetric_eigenvalues(m: &DenseSymMatrix, tol: f64) -> Result<EigenResult> {
    assert!(tol > 0.0, "tolerance must be positive");
    let n = m.order();
    let mut a: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| m.get(i, j)).collect())
        .collect();
    let threshold = tol * m.frobenius_norm();
    let mut sweeps = 0;
    let mut off = off_diagonal_norm(&a);
    while off > threshold {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps,
                off_norm: off,
            });
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p][q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for row in a.iter_mut() {
                    let (akp, akq) = (row[p], row[q]);
                    row[p] = c * akp - s * akq;
                    row[q] = s * akp + c * akq;
                }
                let (head, tail) = a.split_at_mut(q);
                for (apk, aqk) in head[p].iter_mut().zip(tail[0].iter_mut()) {
                    let (x, y) = (*apk, *aqk);
                    *apk = c * x - s * y;
                    *aqk = s * x + c * y;
                }
                a[p][q] = 0.0;
                a[q][p] = 0.0;
            }
        }
        sweeps += 1;
        off = off_diagonal_norm(&a);
    }
    let mut eigenvalues: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    eigenvalues.sort_by(|x, y| y.total_cmp(x));
    Ok(EigenResult {
        eigenvalues,
        iterations: sweeps,
        off_norm: off,
    })
}

/// Outcome of checking one partition against the oracle.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationRecord {
    pub partition: Partition,
    /// Closed-form block matrix equals the BFS-built matrix.
    pub matrix_match: bool,
    pub max_eigenvalue_deviation: f64,
    pub inertia_exact: (usize, usize, usize),
    pub inertia_oracle: (usize, usize, usize),
    pub energy_deviation: f64,
    pub det_exact: String,
    pub det_oracle: f64,
    /// `None` when the exact determinant is zero.
    pub det_relative_deviation: Option<f64>,
    pub det_match: bool,
    pub passed: bool,
}

impl VerificationRecord {
    pub fn inertia_match(&self) -> bool {
        self.inertia_exact == self.inertia_oracle
    }
}

/// Oracle sign counts `(n_+, n_0, n_-)` with the zero threshold applied.
pub fn oracle_inertia(eigenvalues: &[f64]) -> (usize, usize, usize) {
    eigenvalues.iter().fold((0, 0, 0), |(p, z, m), &v| {
        if v.abs() < ZERO_THRESHOLD {
            (p, z + 1, m)
        } else if v > 0.0 {
            (p + 1, z, m)
        } else {
            (p, z, m + 1)
        }
    })
}

/// Compares every closed-form quantity for `p` with the Jacobi oracle run on
/// the BFS squared distance matrix. `tol` bounds the eigenvalue deviation.
pub fn verify_partition(p: &Partition, tol: f64) -> Result<VerificationRecord> {
    let from_graph = sqdist_from_graph(&multipartite_graph(p))?;
    let matrix_match = from_graph == sqdist_from_partition(p);
    let oracle = symmetric_eigenvalues(&from_graph, DEFAULT_JACOBI_TOL)?;

    let closed = full_spectrum(p)?.eigenvalues_desc();
    let max_eigenvalue_deviation = closed
        .iter()
        .zip(&oracle.eigenvalues)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);

    let inertia_exact = inertia(p).counts();
    let inertia_oracle = oracle_inertia(&oracle.eigenvalues);

    let oracle_energy: f64 = oracle.eigenvalues.iter().map(|v| v.abs()).sum();
    let energy_deviation = (energy(p)?.value - oracle_energy).abs();

    let det = det_delta_exact(p);
    let det_oracle: f64 = oracle.eigenvalues.iter().product();
    let (det_relative_deviation, det_match) = if det.is_zero() {
        (None, inertia_oracle.1 == 1)
    } else {
        let exact = det.to_f64().unwrap_or(f64::INFINITY);
        let rel = ((det_oracle - exact) / exact).abs();
        (Some(rel), rel <= DET_REL_TOL)
    };

    let passed = matrix_match
        && closed.len() == oracle.eigenvalues.len()
        && max_eigenvalue_deviation <= tol
        && inertia_exact == inertia_oracle
        && energy_deviation <= ENERGY_TOL
        && det_match;
    Ok(VerificationRecord {
        partition: p.clone(),
        matrix_match,
        max_eigenvalue_deviation,
        inertia_exact,
        inertia_oracle,
        energy_deviation,
        det_exact: det.to_string(),
        det_oracle,
        det_relative_deviation,
        det_match,
        passed,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepSummary {
    pub n_max: usize,
    pub partitions: usize,
    pub failures: usize,
    pub worst_eigenvalue_deviation: f64,
    pub worst_energy_deviation: f64,
    pub worst_det_relative_deviation: f64,
    #[serde(skip)]
    pub records: Vec<VerificationRecord>,
}

impl SweepSummary {
    pub fn failed(&self) -> impl Iterator<Item = &VerificationRecord> {
        self.records.iter().filter(|r| !r.passed)
    }

    /// One JSON object per partition.
    pub fn to_json_lines(&self) -> String {
        self.records
            .iter()
            .map(|r| serde_json::to_string(r).expect("record serializes") + "\n")
            .collect()
    }
}

/// Every partition with `2 <= t <= n <= n_max`, in order of `n`, then `t`.
pub fn all_partitions_up_to(n_max: usize) -> Vec<Partition> {
    (2..=n_max)
        .flat_map(|n| (2..=n).flat_map(move |t| enumerate_partitions(n, t).expect("t <= n")))
        .collect()
}

pub fn sweep(n_max: usize) -> Result<SweepSummary> {
    sweep_with_tol(n_max, EIGENVALUE_TOL)
}

/// Runs [`verify_partition`] over every partition up to `n_max` in parallel.
pub fn sweep_with_tol(n_max: usize, tol: f64) -> Result<SweepSummary> {
    if n_max < 2 {
        return Err(Error::InfeasibleParameters(format!("n_max = {n_max} < 2")));
    }
    let records = all_partitions_up_to(n_max)
        .par_iter()
        .map(|p| verify_partition(p, tol))
        .collect::<Result<Vec<_>>>()?;
    let worst = |f: fn(&VerificationRecord) -> f64| records.iter().map(f).fold(0.0, f64::max);
    Ok(SweepSummary {
        n_max,
        partitions: records.len(),
        failures: records.iter().filter(|r| !r.passed).count(),
        worst_eigenvalue_deviation: worst(|r| r.max_eigenvalue_deviation),
        worst_energy_deviation: worst(|r| r.energy_deviation),
        worst_det_relative_deviation: worst(|r| r.det_relative_deviation.unwrap_or(0.0)),
        records,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn assert_eigs(got: &[f64], want: &[f64]) {
        assert_eq!(got.len(), want.len());
        for (g, w) in got.iter().zip(want) {
            assert!((g - w).abs() < 1e-12, "{got:?} vs {want:?}");
        }
    }

    #[test]
    fn jacobi_examples() {
        let m = DenseSymMatrix::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let r = symmetric_eigenvalues(&m, DEFAULT_JACOBI_TOL).unwrap();
        assert_eigs(&r.eigenvalues, &[1.0, -1.0]);
        assert!(r.off_norm <= DEFAULT_JACOBI_TOL * m.frobenius_norm());

        let r = symmetric_eigenvalues(&sqdist_from_partition(&p("2,2")), 1e-12).unwrap();
        assert_eigs(&r.eigenvalues, &[6.0, 2.0, -4.0, -4.0]);

        let k5 = DenseSymMatrix::from_fn(5, |i, j| if i == j { 0.0 } else { 1.0 });
        let r = symmetric_eigenvalues(&k5, 1e-12).unwrap();
        assert_eigs(&r.eigenvalues, &[4.0, -1.0, -1.0, -1.0, -1.0]);
    }

    #[test]
    fn jacobi_preserves_trace() {
        let m = DenseSymMatrix::from_fn(6, |i, j| {
            ((i * 7 + j * 3) % 5) as f64 - 2.0 + (i == j) as u8 as f64
        });
        let r = symmetric_eigenvalues(&m, 1e-13).unwrap();
        let sum: f64 = r.eigenvalues.iter().sum();
        assert!((sum - m.trace()).abs() <= 1e-9 * 6.0 * m.frobenius_norm());
    }

    #[test]
    fn verify_examples() {
        for s in ["2,1,1", "3,2,2", "1,1"] {
            let rec = verify_partition(&p(s), EIGENVALUE_TOL).unwrap();
            assert!(rec.passed, "{rec:?}");
        }
        let rec = verify_partition(&p("2,1,1"), EIGENVALUE_TOL).unwrap();
        assert_eq!(rec.inertia_oracle, (1, 1, 2));
        assert_eq!(rec.det_relative_deviation, None);
    }

    #[test]
    fn sweep_small() {
        let s = sweep(8).unwrap();
        assert_eq!(s.failures, 0);
        assert_eq!(s.partitions, all_partitions_up_to(8).len());
        assert_eq!(s.to_json_lines().lines().count(), s.partitions);
        assert!(matches!(sweep(1), Err(Error::InfeasibleParameters(_))));
    }
}
