//! The sign function on non-vanishing vectors and the reconstruction
//! identity `x = ½(A_πᵀ sgn(A_π x) + (n+1)·1)` that every solution obeys.

use serde::{Deserialize, Serialize};

use crate::difference::{ConstraintMatrix, SignVector};
use crate::error::{Error, Result};
use crate::problem::ProblemSpec;

/// A candidate `x ∈ Z^{n²}` laid out row-major over the tableau.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Assignment {
    pub n: usize,
    pub cells: Vec<i64>,
}

impl Assignment {
    pub fn new(n: usize, cells: Vec<i64>) -> Result<Self> {
        if cells.len() != n * n {
            return Err(Error::Dimension {
                expected: n * n,
                actual: cells.len(),
            });
        }
        Ok(Assignment { n, cells })
    }

    /// Every cell lies in `1..=n`.
    pub fn is_ranged(&self) -> bool {
        let n = self.n as i64;
        self.cells.iter().all(|&v| (1..=n).contains(&v))
    }

    /// Value at 1-based cell `i`.
    pub fn get(&self, i: usize) -> i64 {
        self.cells[i - 1]
    }
}

/// Componentwise sign. Fails on the first zero component, whose 1-based
/// index is reported.
pub fn gsgn(y: &[i64]) -> Result<SignVector> {
    if let Some(i) = y.iter().position(|&v| v == 0) {
        return Err(Error::NotApplicable { index: i + 1 });
    }
    SignVector::new(y.iter().map(|v| v.signum()).collect())
}

/// `−Σ_{j<i} sgn(x_j − x_i) + Σ_{j>i} sgn(x_i − x_j)` for 1-based `i`,
/// evaluated straight from the double sum.
///
/// Requires pairwise distinct components.
pub fn pairwise_sign_sum(x: &[i64], i: usize) -> Result<i64> {
    if i == 0 || i > x.len() {
        return Err(Error::InvalidArgument(format!(
            "index {i} outside 1..={}",
            x.len()
        )));
    }
    for a in 0..x.len() {
        for b in a + 1..x.len() {
            if x[a] == x[b] {
                return Err(Error::NotApplicable { index: b + 1 });
            }
        }
    }
    let xi = x[i - 1];
    let before: i64 = x[..i - 1].iter().map(|&xj| (xj - xi).signum()).sum();
    let after: i64 = x[i..].iter().map(|&xj| (xi - xj).signum()).sum();
    Ok(-before + after)
}

/// `2·x_i − (n+1)`, the value of [`pairwise_sign_sum`] when the
/// components are a permutation of `1..=n`.
pub fn sign_sum_closed_form(value: i64, n: i64) -> i64 {
    2 * value - (n + 1)
}

/// `½(A_πᵀ sgn(A_π x) + (n+1)·1)` in exact integers.
///
/// Fails with [`Error::NotApplicable`] (1-based constraint row) when
/// `A_π x` has a zero entry and with [`Error::ParityViolation`] if any
/// component before halving is odd. For `x` with cells in `1..=n` and
/// `A_π x` non-vanishing the result equals `x`.
pub fn reconstruct(c: &ConstraintMatrix, x: &Assignment) -> Result<Vec<i64>> {
    if x.n != c.n() {
        return Err(Error::InvalidArgument(format!(
            "assignment has n = {}, constraint matrix has n = {}",
            x.n,
            c.n()
        )));
    }
    let lam = gsgn(&c.apply(&x.cells)?)?;
    let shift = c.n() as i64 + 1;
    c.apply_transpose(&lam)?
        .into_iter()
        .enumerate()
        .map(|(i, v)| {
            let t = v + shift;
            if t % 2 != 0 {
                Err(Error::ParityViolation {
                    cell: i + 1,
                    value: t,
                })
            } else {
                Ok(t / 2)
            }
        })
        .collect()
}

/// A cell where the reconstruction disagrees with the assignment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentMismatch {
    /// 1-based cell index.
    pub index: usize,
    /// The assignment's value.
    pub expected: i64,
    /// The reconstructed value.
    pub actual: i64,
}

/// Outcome of the reconstruction check for one constraint permutation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NecessityReport {
    /// 1-based position of the permutation in the problem's constraint list.
    pub constraint_id: usize,
    pub holds: bool,
    pub reconstructed: Option<Vec<i64>>,
    pub first_violation: Option<ComponentMismatch>,
    /// 1-based rows of `A_π` where `A_π x` vanishes.
    pub zero_rows: Vec<usize>,
    /// Set only if the pre-halving vector had an odd component.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub parity_cell: Option<usize>,
}

/// Evaluates the reconstruction identity for one constraint matrix.
pub fn necessity_report(
    constraint_id: usize,
    c: &ConstraintMatrix,
    x: &Assignment,
) -> Result<NecessityReport> {
    let diffs = c.apply(&x.cells)?;
    let zero_rows: Vec<usize> = diffs
        .iter()
        .enumerate()
        .filter(|(_, &v)| v == 0)
        .map(|(r, _)| r + 1)
        .collect();
    let mut report = NecessityReport {
        constraint_id,
        holds: false,
        reconstructed: None,
        first_violation: None,
        zero_rows,
        parity_cell: None,
    };
    if !report.zero_rows.is_empty() {
        return Ok(report);
    }
    match reconstruct(c, x) {
        Ok(rec) => {
            report.first_violation =
                rec.iter()
                    .zip(&x.cells)
                    .position(|(r, v)| r != v)
                    .map(|i| ComponentMismatch {
                        index: i + 1,
                        expected: x.cells[i],
                        actual: rec[i],
                    });
            report.holds = report.first_violation.is_none();
            report.reconstructed = Some(rec);
        }
        Err(Error::ParityViolation { cell, .. }) => report.parity_cell = Some(cell),
        Err(e) => return Err(e),
    }
    Ok(report)
}

/// One report per constraint permutation of `problem`; violations are
/// returned as data, never as errors.
pub fn check_necessary(problem: &ProblemSpec, x: &Assignment) -> Result<Vec<NecessityReport>> {
    if x.n != problem.n() || x.cells.len() != problem.n() * problem.n() {
        return Err(Error::Dimension {
            expected: problem.n() * problem.n(),
            actual: x.cells.len(),
        });
    }
    problem
        .constraint_matrices()
        .iter()
        .enumerate()
        .map(|(r, c)| necessity_report(r + 1, c, x))
        .collect()
}

/// A given that the reconstruction does not reproduce.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GivenMismatch {
    pub constraint_id: usize,
    /// 1-based cell index of the given.
    pub index: usize,
    pub given: i64,
    pub reconstructed: i64,
}

/// Checks that every given equals the reconstructed value at its cell,
/// for every constraint permutation. Returns the first mismatch, if any.
pub fn check_givens(problem: &ProblemSpec, x: &Assignment) -> Result<Option<GivenMismatch>> {
    for (r, c) in problem.constraint_matrices().iter().enumerate() {
        let rec = reconstruct(c, x)?;
        for g in problem.givens() {
            let got = rec[g.index - 1];
            if got != g.value {
                return Ok(Some(GivenMismatch {
                    constraint_id: r + 1,
                    index: g.index,
                    given: g.value,
                    reconstructed: got,
                }));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::difference::DifferenceMatrix;
    use crate::permutation::{Partition, Permutation};
    use crate::problem::Given;

    #[test]
    fn gsgn_basics() {
        assert_eq!(gsgn(&[3, -1, 7]).unwrap().entries(), &[1, -1, 1]);
        assert_eq!(gsgn(&[1, 0, -2]), Err(Error::NotApplicable { index: 2 }));
    }

    #[test]
    fn pairwise_sign_sum_cases() {
        let x = [2, 8, 1, 5, 9, 4, 6, 3, 7];
        assert_eq!(pairwise_sign_sum(&x, 1).unwrap(), -6);
        assert_eq!(pairwise_sign_sum(&[4, 1], 1).unwrap(), 1);
        // −(sgn(5−4) + sgn(3−4)) + (sgn(4−1) + sgn(4−2)) = 0 + 2
        assert_eq!(pairwise_sign_sum(&[5, 3, 4, 1, 2], 3).unwrap(), 2);
        assert_eq!(sign_sum_closed_form(4, 5), 2);
        assert!(matches!(
            pairwise_sign_sum(&[1, 2, 1], 1),
            Err(Error::NotApplicable { index: 3 })
        ));
        assert!(pairwise_sign_sum(&[1, 2], 3).is_err());
    }

    #[test]
    fn closed_form_values() {
        assert_eq!(sign_sum_closed_form(5, 9), 0);
        for n in 1..=10 {
            assert_eq!(sign_sum_closed_form(n, n), n - 1);
        }
        assert_eq!(sign_sum_closed_form(1, 2), -1);
    }

    #[test]
    fn single_block_matches_double_sum() {
        let x = [2, 8, 1, 5, 9, 4, 6, 3, 7];
        let a = DifferenceMatrix::new(9).unwrap();
        let lam = gsgn(&a.apply(&x).unwrap()).unwrap();
        let t = a.apply_transpose(lam.entries()).unwrap();
        let oracle: Vec<i64> = (1..=9).map(|i| pairwise_sign_sum(&x, i).unwrap()).collect();
        assert_eq!(t, oracle);
    }

    #[test]
    fn reconstruct_small_latin() {
        let c = ConstraintMatrix::block_diagonal(2).unwrap();
        let x = Assignment::new(2, vec![1, 2, 2, 1]).unwrap();
        assert_eq!(reconstruct(&c, &x).unwrap(), vec![1, 2, 2, 1]);
    }

    #[test]
    fn reconstruct_region_example() {
        let part = Partition::new(3, vec![vec![1, 2, 4], vec![5, 7, 8], vec![3, 6, 9]]).unwrap();
        let c = ConstraintMatrix::new(3, part.to_permutation()).unwrap();
        let x = Assignment::new(3, vec![2, 1, 3, 3, 2, 1, 1, 3, 2]).unwrap();
        assert_eq!(reconstruct(&c, &x).unwrap(), x.cells);
    }

    #[test]
    fn reconstruct_reports_zero_row() {
        let c = ConstraintMatrix::block_diagonal(3).unwrap();
        let x = Assignment::new(3, vec![1, 2, 3, 2, 2, 1, 3, 1, 2]).unwrap();
        // Block 2 is (2,2,1); its first row x4 − x5 is global row 4.
        assert_eq!(reconstruct(&c, &x), Err(Error::NotApplicable { index: 4 }));
    }

    #[test]
    fn out_of_range_distinct_values_reconstruct_without_equality() {
        // Distinct but not 1..=n: the algebra is defined, equality is not claimed.
        let c = ConstraintMatrix::block_diagonal(2).unwrap();
        let x = Assignment::new(2, vec![10, -4, 0, 7]).unwrap();
        let rec = reconstruct(&c, &x).unwrap();
        assert_eq!(rec, vec![2, 1, 1, 2]);
        assert!(!x.is_ranged());
    }

    #[test]
    fn reports_for_all_ones() {
        let spec = ProblemSpec::latin(3, vec![]).unwrap();
        let x = Assignment::new(3, vec![1; 9]).unwrap();
        let reports = check_necessary(&spec, &x).unwrap();
        assert_eq!(reports.len(), 3);
        for r in &reports {
            assert!(!r.holds);
            assert_eq!(r.zero_rows.len(), 9);
            assert!(r.reconstructed.is_none());
        }
    }

    #[test]
    fn reports_hold_for_small_latin_square() {
        let spec = ProblemSpec::latin(2, vec![]).unwrap();
        let x = Assignment::new(2, vec![1, 2, 2, 1]).unwrap();
        let reports = check_necessary(&spec, &x).unwrap();
        assert!(reports.iter().all(|r| r.holds));
        assert_eq!(reports[0].reconstructed.as_deref(), Some(&x.cells[..]));
    }

    #[test]
    fn givens_check() {
        let x = Assignment::new(3, vec![2, 1, 3, 3, 2, 1, 1, 3, 2]).unwrap();
        let none = ProblemSpec::latin(3, vec![]).unwrap();
        assert_eq!(check_givens(&none, &x).unwrap(), None);
        let ok = ProblemSpec::latin(3, vec![Given::new(1, 2), Given::new(9, 2)]).unwrap();
        assert_eq!(check_givens(&ok, &x).unwrap(), None);
        let bad = ProblemSpec::latin(3, vec![Given::new(1, 2), Given::new(5, 3)]).unwrap();
        let m = check_givens(&bad, &x).unwrap().unwrap();
        assert_eq!(
            (m.constraint_id, m.index, m.given, m.reconstructed),
            (1, 5, 3, 2)
        );
        let zeros = Assignment::new(3, vec![1; 9]).unwrap();
        assert!(matches!(
            check_givens(&ok, &zeros),
            Err(Error::NotApplicable { .. })
        ));
    }

    #[test]
    fn check_rejects_wrong_length() {
        let spec = ProblemSpec::latin(2, vec![]).unwrap();
        let x = Assignment {
            n: 2,
            cells: vec![1, 2],
        };
        assert!(check_necessary(&spec, &x).is_err());
        assert!(Assignment::new(2, vec![1, 2]).is_err());
    }

    #[test]
    fn mismatch_reported_with_expected_and_actual() {
        // Row-distinct but not a permutation of 1..=3 in the first row.
        let c = ConstraintMatrix::new(3, Permutation::identity(3)).unwrap();
        let x = Assignment::new(3, vec![1, 2, 5, 1, 2, 3, 1, 2, 3]).unwrap();
        let rep = necessity_report(1, &c, &x).unwrap();
        assert!(!rep.holds);
        let v = rep.first_violation.unwrap();
        assert_eq!((v.index, v.expected, v.actual), (3, 5, 3));
    }
}
