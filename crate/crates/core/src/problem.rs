//! The generalized Sudoku problem: find `x` with cells in `1..=n`,
//! `A_{π_r} x` non-vanishing for every constraint permutation, and the
//! givens in place.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::difference::ConstraintMatrix;
use crate::error::{Error, Result};
use crate::permutation::{Partition, Permutation};
use crate::sign::Assignment;

/// A pre-populated cell (1-based index).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Given {
    pub index: usize,
    pub value: i64,
}

impl Given {
    pub fn new(index: usize, value: i64) -> Self {
        Given { index, value }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemSpec {
    n: usize,
    constraints: Vec<Permutation>,
    matrices: Vec<ConstraintMatrix>,
    givens: Vec<Given>,
}

impl ProblemSpec {
    pub fn new(n: usize, constraints: Vec<Permutation>, mut givens: Vec<Given>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArgument(format!(
                "problem needs n >= 2, got {n}"
            )));
        }
        if constraints.is_empty() {
            return Err(Error::InvalidArgument(
                "problem needs at least one constraint".into(),
            ));
        }
        let matrices = constraints
            .iter()
            .map(|p| ConstraintMatrix::new(n, p.clone()))
            .collect::<Result<Vec<_>>>()?;
        let size = n * n;
        givens.sort_by_key(|g| g.index);
        for (i, g) in givens.iter().enumerate() {
            if g.index == 0 || g.index > size {
                return Err(Error::InvalidArgument(format!(
                    "given index {} outside 1..={size}",
                    g.index
                )));
            }
            if g.value < 1 || g.value > n as i64 {
                return Err(Error::InvalidArgument(format!(
                    "given value {} at cell {} outside 1..={n}",
                    g.value, g.index
                )));
            }
            if i > 0 && givens[i - 1].index == g.index {
                return Err(Error::InvalidArgument(format!(
                    "cell {} given twice",
                    g.index
                )));
            }
        }
        Ok(ProblemSpec {
            n,
            constraints,
            matrices,
            givens,
        })
    }

    /// Rows, columns and `√n × √n` subsquares.
    pub fn classic(n: usize, givens: Vec<Given>) -> Result<Self> {
        if n < 4 {
            return Err(Error::InvalidArgument(format!(
                "classic Sudoku needs a perfect square n >= 4, got {n}"
            )));
        }
        let blocks = Permutation::block(n)?;
        Self::new(
            n,
            vec![Permutation::identity(n), Permutation::transpose(n), blocks],
            givens,
        )
    }

    /// Rows, columns and the regions of `part`.
    pub fn gerechte(part: &Partition, givens: Vec<Given>) -> Result<Self> {
        let n = part.n();
        Self::new(
            n,
            vec![
                Permutation::identity(n),
                Permutation::transpose(n),
                part.to_permutation(),
            ],
            givens,
        )
    }

    /// Latin squares: the third constraint repeats the column permutation.
    pub fn latin(n: usize, givens: Vec<Given>) -> Result<Self> {
        let t = Permutation::transpose(n);
        Self::new(n, vec![Permutation::identity(n), t.clone(), t], givens)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn constraints(&self) -> &[Permutation] {
        &self.constraints
    }

    pub fn constraint_matrices(&self) -> &[ConstraintMatrix] {
        &self.matrices
    }

    /// Givens sorted by cell index.
    pub fn givens(&self) -> &[Given] {
        &self.givens
    }

    pub fn with_givens(&self, givens: Vec<Given>) -> Result<Self> {
        Self::new(self.n, self.constraints.clone(), givens)
    }
}

/// The first clause of the defining system that `x` breaks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "clause", rename_all = "snake_case")]
pub enum Violation {
    Dimension {
        expected: usize,
        actual: usize,
    },
    /// Clause (a): a cell outside `1..=n`.
    OutOfRange {
        cell: usize,
        value: i64,
    },
    /// Clause (b): `A_{π_r} x` vanishes at a row (both 1-based).
    ZeroDifference {
        constraint: usize,
        row: usize,
    },
    /// Clause (c): a given is not respected.
    GivenMismatch {
        cell: usize,
        given: i64,
        actual: i64,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::Dimension { expected, actual } => {
                write!(f, "expected {expected} cells, got {actual}")
            }
            Violation::OutOfRange { cell, value } => {
                write!(f, "cell {cell} has value {value} outside the allowed range")
            }
            Violation::ZeroDifference { constraint, row } => {
                write!(
                    f,
                    "constraint {constraint} has a zero difference at row {row}"
                )
            }
            Violation::GivenMismatch {
                cell,
                given,
                actual,
            } => {
                write!(f, "cell {cell} is {actual} but the given is {given}")
            }
        }
    }
}

/// Checks the range clause, the non-vanishing clause for every constraint
/// and the givens, in that order.
pub fn verify_solution(p: &ProblemSpec, x: &Assignment) -> std::result::Result<(), Violation> {
    let n = p.n();
    if x.cells.len() != n * n || x.n != n {
        return Err(Violation::Dimension {
            expected: n * n,
            actual: x.cells.len(),
        });
    }
    if let Some(i) = x.cells.iter().position(|&v| v < 1 || v > n as i64) {
        return Err(Violation::OutOfRange {
            cell: i + 1,
            value: x.cells[i],
        });
    }
    for (r, c) in p.constraint_matrices().iter().enumerate() {
        let diffs = c.apply(&x.cells).expect("length checked");
        let zero = diffs.iter().position(|&v| v == 0);
        debug_assert_eq!(zero.is_some(), first_duplicate_group(c, &x.cells).is_some());
        if let Some(row) = zero {
            return Err(Violation::ZeroDifference {
                constraint: r + 1,
                row: row + 1,
            });
        }
    }
    if let Some(g) = p.givens().iter().find(|g| x.get(g.index) != g.value) {
        return Err(Violation::GivenMismatch {
            cell: g.index,
            given: g.value,
            actual: x.get(g.index),
        });
    }
    Ok(())
}

/// First group (1-based) of `c` whose cells hold a repeated value, found by
/// direct value comparison.
pub fn first_duplicate_group(c: &ConstraintMatrix, cells: &[i64]) -> Option<usize> {
    (0..c.n())
        .find(|&b| {
            let vals: Vec<i64> = c.group_cells(b).map(|i| cells[i]).collect();
            (0..vals.len()).any(|i| vals[i + 1..].contains(&vals[i]))
        })
        .map(|b| b + 1)
}

/// True iff every group of every constraint holds exactly `{1, ..., n}`.
pub fn groups_are_permutations(p: &ProblemSpec, cells: &[i64]) -> bool {
    let n = p.n();
    let target: Vec<i64> = (1..=n as i64).collect();
    p.constraint_matrices().iter().all(|c| {
        (0..n).all(|b| {
            let mut vals: Vec<i64> = c.group_cells(b).map(|i| cells[i]).collect();
            vals.sort_unstable();
            vals == target
        })
    })
}
