//! Permutations of the cell set `{1, ..., n²}` and region partitions.
//!
//! A permutation acts on vectors by moving component `j` to slot `π(j)`,
//! so `π(x)_i = x_{π⁻¹(i)}`. Applied to the block-diagonal difference
//! matrix it relocates columns the same way, which is how tableau rows are
//! redirected onto columns, subsquares or arbitrary regions.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A bijection on `{1, ..., size}`.
///
/// Images are kept 0-based internally; every accessor speaks 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// Builds a permutation from its 1-based image list, `images[i-1] = π(i)`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let size = images.len();
        let mut seen = vec![false; size];
        for (pos, &img) in images.iter().enumerate() {
            if img == 0 || img > size {
                return Err(Error::InvalidPermutation(format!(
                    "image {img} of {} is outside 1..={size}",
                    pos + 1
                )));
            }
            if std::mem::replace(&mut seen[img - 1], true) {
                return Err(Error::InvalidPermutation(format!(
                    "value {img} appears more than once"
                )));
            }
        }
        Ok(Permutation {
            images: images.iter().map(|&i| i - 1).collect(),
        })
    }

    // Caller guarantees a bijection on 0..len.
    fn from_zero_based(images: Vec<usize>) -> Self {
        debug_assert!({
            let mut s = images.clone();
            s.sort_unstable();
            s.iter().enumerate().all(|(i, &v)| i == v)
        });
        Permutation { images }
    }

    /// `π(i) = i` on `{1, ..., n²}`.
    pub fn identity(n: usize) -> Self {
        Self::from_zero_based((0..n * n).collect())
    }

    /// The permutation sending tableau rows to tableau columns:
    /// `π((r−1)n + c) = (c−1)n + r`.
    pub fn transpose(n: usize) -> Self {
        let images = (0..n * n).map(|k| (k % n) * n + k / n).collect();
        Self::from_zero_based(images)
    }

    /// The permutation sending tableau row `i` onto the `i`-th `√n × √n`
    /// subsquare, subsquares numbered row-wise from the top left and each
    /// subsquare filled row by row.
    pub fn block(n: usize) -> Result<Self> {
        let m = exact_sqrt(n).ok_or_else(|| {
            Error::InvalidArgument(format!(
                "block permutation needs a perfect square, got n = {n}"
            ))
        })?;
        let images = (0..n * n)
            .map(|k| {
                let (square, pos) = (k / n, k % n);
                let (top, left) = ((square / m) * m, (square % m) * m);
                (top + pos / m) * n + left + pos % m
            })
            .collect();
        Ok(Self::from_zero_based(images))
    }

    /// Sends tableau row `i` onto the cells of group `i`, in stored order.
    pub fn from_partition(part: &Partition) -> Self {
        Self::from_zero_based(part.groups.iter().flatten().map(|&c| c - 1).collect())
    }

    pub fn size(&self) -> usize {
        self.images.len()
    }

    /// `π(i)` for 1-based `i`.
    ///
    /// Panics if `i` is outside `1..=size`.
    pub fn image(&self, i: usize) -> usize {
        self.images[i - 1] + 1
    }

    /// The 1-based image list.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&i| i + 1).collect()
    }

    pub(crate) fn image0(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (i, &img) in self.images.iter().enumerate() {
            inv[img] = i;
        }
        Permutation { images: inv }
    }

    /// `self ∘ other`, i.e. `i ↦ self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Self> {
        if self.size() != other.size() {
            return Err(Error::Dimension {
                expected: self.size(),
                actual: other.size(),
            });
        }
        Ok(Permutation {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        })
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// Returns `π(x)`, the vector whose component `π(j)` is `x_j`.
    pub fn apply_to_vector<T: Clone>(&self, x: &[T]) -> Result<Vec<T>> {
        if x.len() != self.size() {
            return Err(Error::Dimension {
                expected: self.size(),
                actual: x.len(),
            });
        }
        let mut slots: Vec<Option<T>> = vec![None; x.len()];
        for (j, v) in x.iter().enumerate() {
            slots[self.images[j]] = Some(v.clone());
        }
        Ok(slots.into_iter().map(|v| v.expect("bijection")).collect())
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(images: Vec<usize>) -> Result<Self> {
        Permutation::from_images(&images)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.images()
    }
}

/// A split of `{1, ..., n²}` into `n` groups of `n` cells each.
///
/// Group order and the order of cells inside a group are kept exactly as
/// given; both decide the row layout of the induced constraint matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition {
    n: usize,
    groups: Vec<Vec<usize>>,
}

impl Partition {
    pub fn new(n: usize, groups: Vec<Vec<usize>>) -> Result<Self> {
        let size = n * n;
        if n == 0 {
            return Err(Error::InvalidArgument("partition needs n >= 1".into()));
        }
        if groups.len() != n {
            return Err(Error::InvalidArgument(format!(
                "expected {n} groups, got {}",
                groups.len()
            )));
        }
        let mut seen = vec![false; size];
        for (g, group) in groups.iter().enumerate() {
            for &cell in group {
                if cell == 0 || cell > size {
                    return Err(Error::InvalidPartition {
                        cell,
                        reason: format!("cell outside 1..={size} in group {}", g + 1),
                    });
                }
                if std::mem::replace(&mut seen[cell - 1], true) {
                    return Err(Error::InvalidPartition {
                        cell,
                        reason: format!("duplicate cell in group {}", g + 1),
                    });
                }
            }
            if group.len() != n {
                return Err(Error::InvalidPartition {
                    cell: group.first().copied().unwrap_or(0),
                    reason: format!("group {} has {} cells, expected {n}", g + 1, group.len()),
                });
            }
        }
        if let Some(missing) = seen.iter().position(|&s| !s) {
            return Err(Error::InvalidPartition {
                cell: missing + 1,
                reason: "cell not covered by any group".into(),
            });
        }
        Ok(Partition { n, groups })
    }

    /// Groups from one label per cell in row-major order. Groups are ordered
    /// by first appearance of their label, cells ascending.
    pub fn from_labels<L: PartialEq>(n: usize, labels: &[L]) -> Result<Self> {
        if labels.len() != n * n {
            return Err(Error::Dimension {
                expected: n * n,
                actual: labels.len(),
            });
        }
        let mut keys: Vec<&L> = Vec::new();
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for (i, label) in labels.iter().enumerate() {
            match keys.iter().position(|k| *k == label) {
                Some(g) => groups[g].push(i + 1),
                None => {
                    keys.push(label);
                    groups.push(vec![i + 1]);
                }
            }
        }
        Self::new(n, groups)
    }

    /// The tableau rows, in order.
    pub fn rows(n: usize) -> Self {
        let groups = (0..n)
            .map(|r| (1..=n).map(|c| r * n + c).collect())
            .collect();
        Partition { n, groups }
    }

    /// The `√n × √n` subsquares, numbered row-wise, cells ascending.
    pub fn subsquares(n: usize) -> Result<Self> {
        let p = Permutation::block(n)?;
        let groups = (0..n)
            .map(|g| {
                let mut cells: Vec<usize> = (0..n).map(|k| p.image0(g * n + k) + 1).collect();
                cells.sort_unstable();
                cells
            })
            .collect();
        Ok(Partition { n, groups })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn groups(&self) -> &[Vec<usize>] {
        &self.groups
    }

    pub fn to_permutation(&self) -> Permutation {
        Permutation::from_partition(self)
    }
}

pub(crate) fn exact_sqrt(n: usize) -> Option<usize> {
    let r = n.isqrt();
    (r * r == n).then_some(r)
}
