//! Plane partitions and r-colored plane partitions.
//!
//! A plane partition is stored as its sorted list of boxes `[i, j, k]`; the
//! sorted list is also the canonical serialization.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::characters::{Monomial, VirtualCharacter};
use crate::error::{Error, Result};

/// Default cap on the size accepted by [`enumerate_plane_partitions`].
pub const DEFAULT_CAP: usize = 12;

/// A finite downward-closed set of boxes in the positive octant.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<[u32; 3]>", into = "Vec<[u32; 3]>")]
pub struct PlanePartition {
    boxes: Vec<[u32; 3]>,
}

impl PlanePartition {
    pub fn empty() -> Self {
        PlanePartition::default()
    }

    /// Validate and canonicalize a box list. Duplicates are rejected.
    pub fn new(mut boxes: Vec<[u32; 3]>) -> Result<Self> {
        boxes.sort_unstable();
        if boxes.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidPartition("repeated box".into()));
        }
        let set: HashSet<[u32; 3]> = boxes.iter().copied().collect();
        for b in &boxes {
            for axis in 0..3 {
                if b[axis] > 0 {
                    let mut pred = *b;
                    pred[axis] -= 1;
                    if !set.contains(&pred) {
                        return Err(Error::InvalidPartition(format!(
                            "box {b:?} present but {pred:?} missing"
                        )));
                    }
                }
            }
        }
        Ok(PlanePartition { boxes })
    }

    pub fn size(&self) -> usize {
        self.boxes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boxes.is_empty()
    }

    pub fn boxes(&self) -> &[[u32; 3]] {
        &self.boxes
    }

    pub fn contains(&self, b: &[u32; 3]) -> bool {
        self.boxes.binary_search(b).is_ok()
    }
}

impl TryFrom<Vec<[u32; 3]>> for PlanePartition {
    type Error = Error;
    fn try_from(boxes: Vec<[u32; 3]>) -> Result<Self> {
        PlanePartition::new(boxes)
    }
}

impl From<PlanePartition> for Vec<[u32; 3]> {
    fn from(p: PlanePartition) -> Self {
        p.boxes
    }
}

impl fmt::Debug for PlanePartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(&self.boxes).finish()
    }
}

/// An ordered tuple `(pi_1, ..., pi_r)` of plane partitions.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ColoredPartition {
    pub parts: Vec<PlanePartition>,
}

impl ColoredPartition {
    pub fn new(parts: Vec<PlanePartition>) -> Self {
        ColoredPartition { parts }
    }

    pub fn empty(r: usize) -> Self {
        ColoredPartition { parts: vec![PlanePartition::empty(); r] }
    }

    pub fn rank(&self) -> usize {
        self.parts.len()
    }

    pub fn size(&self) -> usize {
        self.parts.iter().map(PlanePartition::size).sum()
    }
}

/// All plane partitions of size `n`, sorted by their box lists.
pub fn enumerate_plane_partitions(n: usize) -> Result<Vec<PlanePartition>> {
    enumerate_plane_partitions_with_cap(n, DEFAULT_CAP)
}

pub fn enumerate_plane_partitions_with_cap(n: usize, cap: usize) -> Result<Vec<PlanePartition>> {
    if n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    let mut out = Vec::new();
    let mut current: Vec<[u32; 3]> = Vec::with_capacity(n);
    let mut set = HashSet::new();
    grow(n, &mut current, &mut set, &mut out);
    out.sort_unstable();
    Ok(out)
}

// Boxes are added in strictly increasing lexicographic order. Every
// predecessor of a box is lexicographically smaller, so each partition has
// exactly one such growth sequence: its sorted box list.
fn grow(
    n: usize,
    current: &mut Vec<[u32; 3]>,
    set: &mut HashSet<[u32; 3]>,
    out: &mut Vec<PlanePartition>,
) {
    if current.len() == n {
        let mut boxes = current.clone();
        boxes.sort_unstable();
        out.push(PlanePartition { boxes });
        return;
    }
    for c in addable_corners(current, set) {
        if current.last().is_some_and(|last| c <= *last) {
            continue;
        }
        current.push(c);
        set.insert(c);
        grow(n, current, set, out);
        set.remove(&c);
        current.pop();
    }
}

fn addable_corners(current: &[[u32; 3]], set: &HashSet<[u32; 3]>) -> Vec<[u32; 3]> {
    if current.is_empty() {
        return vec![[0, 0, 0]];
    }
    let mut out = Vec::new();
    for b in current {
        for axis in 0..3 {
            let mut c = *b;
            c[axis] += 1;
            if set.contains(&c) {
                continue;
            }
            let supported = (0..3).all(|a| {
                if c[a] == 0 {
                    return true;
                }
                let mut pred = c;
                pred[a] -= 1;
                set.contains(&pred)
            });
            if supported {
                out.push(c);
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Stream of all r-colored plane partitions of total size `n`.
///
/// Size compositions `n_1 + ... + n_r = n` are visited in decreasing
/// lexicographic order, starting from `(n, 0, ..., 0)`; for each composition
/// the product of the per-size lists is traversed with the last color
/// varying fastest.
pub struct ColoredPartitions {
    lists: Vec<Vec<PlanePartition>>,
    composition: Option<Vec<usize>>,
    indices: Vec<usize>,
}

pub fn enumerate_colored(r: usize, n: usize) -> Result<ColoredPartitions> {
    if r == 0 {
        return Err(Error::OutOfRange("the rank r must be positive".into()));
    }
    let lists = (0..=n).map(enumerate_plane_partitions).collect::<Result<Vec<_>>>()?;
    let mut composition = vec![0; r];
    composition[0] = n;
    Ok(ColoredPartitions { lists, composition: Some(composition), indices: vec![0; r] })
}

fn next_composition(c: &mut [usize]) -> bool {
    let r = c.len();
    if r < 2 {
        return false;
    }
    let Some(i) = (0..r - 1).rev().find(|&i| c[i] > 0) else {
        return false;
    };
    let tail: usize = c[i + 1..].iter().sum();
    c[i] -= 1;
    c[i + 1] = tail + 1;
    for x in &mut c[i + 2..] {
        *x = 0;
    }
    true
}

impl Iterator for ColoredPartitions {
    type Item = ColoredPartition;

    fn next(&mut self) -> Option<ColoredPartition> {
        let comp = self.composition.as_mut()?;
        let parts = comp
            .iter()
            .zip(&self.indices)
            .map(|(&size, &i)| self.lists[size][i].clone())
            .collect();
        let mut advanced = false;
        for pos in (0..comp.len()).rev() {
            self.indices[pos] += 1;
            if self.indices[pos] < self.lists[comp[pos]].len() {
                advanced = true;
                break;
            }
            self.indices[pos] = 0;
        }
        if !advanced && !next_composition(comp) {
            self.composition = None;
        }
        Some(ColoredPartition { parts })
    }
}

/// The character `Q_pi = sum_{(i,j,k) in pi} t1^i t2^j t3^k` of `O/I_pi`.
pub fn ideal_character(p: &PlanePartition) -> VirtualCharacter {
    let mut v = VirtualCharacter::zero();
    for b in p.boxes() {
        let texp = [2 * b[0] as i32, 2 * b[1] as i32, 2 * b[2] as i32];
        v.add_term(Monomial::new(texp, Vec::new()), 1);
    }
    v
}
