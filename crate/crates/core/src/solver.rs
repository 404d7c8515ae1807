//! Depth-first search and exhaustive enumeration over generalized Sudoku
//! instances.
//!
//! [`solve`] picks the empty cell with the fewest remaining values (ties
//! to the lowest index) and tries values in ascending order. Givens are
//! placed up front and never revisited. The two enumerators share nothing
//! with it beyond [`verify_solution`].

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::problem::{verify_solution, ProblemSpec};
use crate::sign::{check_givens, check_necessary, Assignment};

/// Largest candidate count the enumerators accept.
pub const BRUTE_FORCE_LIMIT: u128 = 100_000_000;

/// Largest `n` the search supports; candidate sets are 64-bit masks.
pub const MAX_SEARCH_N: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveOptions {
    /// Stop after this many solutions. `None` searches the whole tree.
    pub cap: Option<usize>,
    /// Re-verify every emitted solution, including the reconstruction
    /// identity for every constraint and the givens.
    pub selfcheck: bool,
    /// Explore the subtrees below the first branching cell on the rayon
    /// pool. Solutions come back in the same order as the sequential run;
    /// `nodes_explored` may differ.
    pub parallel: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            cap: None,
            selfcheck: true,
            parallel: false,
        }
    }
}

impl SolveOptions {
    pub fn with_cap(cap: usize) -> Self {
        SolveOptions {
            cap: Some(cap),
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveOutcome {
    pub solutions: Vec<Assignment>,
    pub nodes_explored: u64,
    /// The search space was covered completely.
    pub exhausted: bool,
    /// Why the search ended early, e.g. clashing givens.
    #[serde(skip)]
    pub diagnostic: Option<String>,
}

impl SolveOutcome {
    fn empty(diagnostic: String) -> Self {
        SolveOutcome {
            solutions: Vec::new(),
            nodes_explored: 0,
            exhausted: true,
            diagnostic: Some(diagnostic),
        }
    }
}

#[derive(Clone)]
struct Search<'a> {
    n: usize,
    full: u64,
    groups: &'a [Vec<usize>],
    cell_groups: &'a [Vec<usize>],
    used: Vec<u64>,
    cells: Vec<i64>,
}

enum Step {
    Done,
    Branch(usize, u64),
    DeadEnd,
}

impl Search<'_> {
    fn candidates(&self, cell: usize) -> u64 {
        let taken = self.cell_groups[cell]
            .iter()
            .fold(0u64, |acc, &g| acc | self.used[g]);
        self.full & !taken
    }

    fn place(&mut self, cell: usize, value: i64) {
        let bit = 1u64 << (value - 1);
        for &g in &self.cell_groups[cell] {
            self.used[g] |= bit;
        }
        self.cells[cell] = value;
    }

    fn clear(&mut self, cell: usize) {
        let bit = 1u64 << (self.cells[cell] - 1);
        for &g in &self.cell_groups[cell] {
            self.used[g] &= !bit;
        }
        self.cells[cell] = 0;
    }

    fn next_step(&self) -> Step {
        let mut best: Option<(usize, u64, u32)> = None;
        for cell in 0..self.cells.len() {
            if self.cells[cell] != 0 {
                continue;
            }
            let cand = self.candidates(cell);
            let count = cand.count_ones();
            if count == 0 {
                return Step::DeadEnd;
            }
            if best.is_none_or(|(_, _, c)| count < c) {
                best = Some((cell, cand, count));
                if count == 1 {
                    break;
                }
            }
        }
        match best {
            Some((cell, cand, _)) => Step::Branch(cell, cand),
            None => Step::Done,
        }
    }

    /// Returns false once `cap` solutions have been collected.
    fn run(&mut self, out: &mut Vec<Vec<i64>>, cap: usize, nodes: &mut u64) -> bool {
        *nodes += 1;
        match self.next_step() {
            Step::DeadEnd => true,
            Step::Done => {
                out.push(self.cells.clone());
                out.len() < cap
            }
            Step::Branch(cell, cand) => {
                for value in values(cand) {
                    self.place(cell, value);
                    let go_on = self.run(out, cap, nodes);
                    self.clear(cell);
                    if !go_on {
                        return false;
                    }
                }
                true
            }
        }
    }
}

fn values(mask: u64) -> impl Iterator<Item = i64> {
    (0..64)
        .filter(move |b| mask >> b & 1 == 1)
        .map(|b| b as i64 + 1)
}

/// Finds solutions of `p` by backtracking.
pub fn solve(p: &ProblemSpec, opts: SolveOptions) -> Result<SolveOutcome> {
    let n = p.n();
    if n > MAX_SEARCH_N {
        return Err(Error::InvalidArgument(format!(
            "search supports n <= {MAX_SEARCH_N}, got {n}"
        )));
    }
    let cap = opts.cap.unwrap_or(usize::MAX);
    if cap == 0 {
        return Ok(SolveOutcome {
            solutions: Vec::new(),
            nodes_explored: 0,
            exhausted: false,
            diagnostic: None,
        });
    }

    let groups: Vec<Vec<usize>> = p
        .constraint_matrices()
        .iter()
        .flat_map(|c| (0..n).map(move |b| c.group_cells(b).collect()))
        .collect();
    let mut cell_groups = vec![Vec::new(); n * n];
    for (g, cells) in groups.iter().enumerate() {
        for &c in cells {
            cell_groups[c].push(g);
        }
    }
    let mut search = Search {
        n,
        full: if n == 64 { u64::MAX } else { (1u64 << n) - 1 },
        groups: &groups,
        cell_groups: &cell_groups,
        used: vec![0; groups.len()],
        cells: vec![0; n * n],
    };

    for g in p.givens() {
        let cell = g.index - 1;
        let bit = 1u64 << (g.value - 1);
        if let Some(&clash) = cell_groups[cell]
            .iter()
            .find(|&&gr| search.used[gr] & bit != 0)
        {
            let other = search.groups[clash]
                .iter()
                .find(|&&c| search.cells[c] == g.value)
                .map_or(0, |c| c + 1);
            let constraint = clash / search.n + 1;
            return Ok(SolveOutcome::empty(format!(
                "given {} at cell {} repeats the value at cell {} in a group of constraint {}",
                g.value, g.index, other, constraint
            )));
        }
        search.place(cell, g.value);
    }

    let mut raw = Vec::new();
    let mut nodes = 0u64;
    let exhausted = match (opts.parallel, search.next_step()) {
        (true, Step::Branch(cell, cand)) => {
            let parts: Vec<(Vec<Vec<i64>>, u64)> = values(cand)
                .collect::<Vec<_>>()
                .into_par_iter()
                .map(|value| {
                    let mut local = search.clone();
                    local.place(cell, value);
                    let (mut out, mut nodes) = (Vec::new(), 0);
                    local.run(&mut out, cap, &mut nodes);
                    (out, nodes)
                })
                .collect();
            nodes = 1;
            for (out, k) in parts {
                raw.extend(out);
                nodes += k;
            }
            raw.truncate(cap);
            raw.len() < cap
        }
        _ => search.run(&mut raw, cap, &mut nodes),
    };

    let solutions: Vec<Assignment> = raw
        .into_iter()
        .map(|cells| Assignment { n, cells })
        .collect();
    if opts.selfcheck {
        for x in &solutions {
            self_check(p, x)?;
        }
    }
    Ok(SolveOutcome {
        solutions,
        nodes_explored: nodes,
        exhausted,
        diagnostic: None,
    })
}

/// Verifies `x` against the defining system, the reconstruction identity
/// for every constraint and the givens.
pub fn self_check(p: &ProblemSpec, x: &Assignment) -> Result<()> {
    if let Err(v) = verify_solution(p, x) {
        return Err(Error::SelfCheck(format!(
            "emitted assignment is not a solution: {v}"
        )));
    }
    if let Some(r) = check_necessary(p, x)?.into_iter().find(|r| !r.holds) {
        return Err(Error::SelfCheck(format!(
            "reconstruction fails for constraint {}",
            r.constraint_id
        )));
    }
    if let Some(m) = check_givens(p, x)? {
        return Err(Error::SelfCheck(format!(
            "reconstruction misses the given at cell {}",
            m.index
        )));
    }
    Ok(())
}

fn guard(size: Option<u128>) -> Result<u128> {
    match size {
        Some(s) if s <= BRUTE_FORCE_LIMIT => Ok(s),
        Some(s) => Err(Error::TooLarge {
            size: s,
            bound: BRUTE_FORCE_LIMIT,
        }),
        None => Err(Error::TooLarge {
            size: u128::MAX,
            bound: BRUTE_FORCE_LIMIT,
        }),
    }
}

/// Tries every fill-in of the non-given cells over `1..=n` and keeps the
/// ones [`verify_solution`] accepts. Refuses instances with more than
/// [`BRUTE_FORCE_LIMIT`] candidates.
///
/// Solutions come out in lexicographic order of the free cells.
pub fn brute_force(p: &ProblemSpec) -> Result<SolveOutcome> {
    let n = p.n();
    let mut cells = vec![1i64; n * n];
    for g in p.givens() {
        cells[g.index - 1] = g.value;
    }
    let free: Vec<usize> = (0..n * n)
        .filter(|&i| !p.givens().iter().any(|g| g.index - 1 == i))
        .collect();
    guard((0..free.len()).try_fold(1u128, |acc, _| acc.checked_mul(n as u128)))?;

    let mut x = Assignment { n, cells };
    let mut solutions = Vec::new();
    let mut nodes = 0u64;
    loop {
        nodes += 1;
        if verify_solution(p, &x).is_ok() {
            solutions.push(x.clone());
        }
        // Odometer over the free cells, last cell fastest.
        let mut k = free.len();
        loop {
            if k == 0 {
                return Ok(SolveOutcome {
                    solutions,
                    nodes_explored: nodes,
                    exhausted: true,
                    diagnostic: None,
                });
            }
            k -= 1;
            let c = free[k];
            if x.cells[c] < n as i64 {
                x.cells[c] += 1;
                break;
            }
            x.cells[c] = 1;
        }
    }
}

/// Exhaustive enumeration that fills every group of the first constraint
/// with a permutation of `1..=n` consistent with the givens, and keeps the
/// fill-ins [`verify_solution`] accepts.
///
/// Any solution has each such group equal to `{1, ..., n}`, so nothing is
/// lost; this reaches instances such as the empty 4×4 Sudoku where the
/// plain cell-by-cell enumeration is far beyond the limit.
pub fn brute_force_group_permutations(p: &ProblemSpec) -> Result<SolveOutcome> {
    let n = p.n();
    let mut fixed = vec![0i64; n * n];
    for g in p.givens() {
        fixed[g.index - 1] = g.value;
    }
    let first = &p.constraint_matrices()[0];
    let group_cells: Vec<Vec<usize>> = (0..n).map(|b| first.group_cells(b).collect()).collect();
    let all = permutations_of(n);
    let options: Vec<Vec<&Vec<i64>>> = group_cells
        .iter()
        .map(|cells| {
            all.iter()
                .filter(|perm| {
                    cells
                        .iter()
                        .zip(perm.iter())
                        .all(|(&c, &v)| fixed[c] == 0 || fixed[c] == v)
                })
                .collect()
        })
        .collect();
    guard(
        options
            .iter()
            .try_fold(1u128, |acc, o| acc.checked_mul(o.len() as u128)),
    )?;

    let mut solutions = Vec::new();
    let mut nodes = 0u64;
    if options.iter().any(Vec::is_empty) {
        return Ok(SolveOutcome {
            solutions,
            nodes_explored: 0,
            exhausted: true,
            diagnostic: None,
        });
    }
    let mut choice = vec![0usize; n];
    let mut x = Assignment {
        n,
        cells: vec![0; n * n],
    };
    loop {
        for (b, cells) in group_cells.iter().enumerate() {
            for (&c, &v) in cells.iter().zip(options[b][choice[b]].iter()) {
                x.cells[c] = v;
            }
        }
        nodes += 1;
        if verify_solution(p, &x).is_ok() {
            solutions.push(x.clone());
        }
        let mut k = n;
        loop {
            if k == 0 {
                return Ok(SolveOutcome {
                    solutions,
                    nodes_explored: nodes,
                    exhausted: true,
                    diagnostic: None,
                });
            }
            k -= 1;
            choice[k] += 1;
            if choice[k] < options[k].len() {
                break;
            }
            choice[k] = 0;
        }
    }
}

/// All permutations of `1..=n` in lexicographic order.
fn permutations_of(n: usize) -> Vec<Vec<i64>> {
    fn extend(prefix: &mut Vec<i64>, n: i64, out: &mut Vec<Vec<i64>>) {
        if prefix.len() == n as usize {
            out.push(prefix.clone());
            return;
        }
        for v in 1..=n {
            if !prefix.contains(&v) {
                prefix.push(v);
                extend(prefix, n, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), n as i64, &mut out);
    out
}
