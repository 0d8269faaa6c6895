//! Partitions, GL-weights, the Weyl dimension formula and
//! Littlewood–Richardson coefficients.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::Signed;

use crate::error::{Error, Result};

/// A weakly decreasing sequence of non-negative integers with trailing zeros
/// removed. Equality is structural on the trimmed form.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotDominant(format!("{:?}", parts)));
        }
        Ok(Self::from_sorted(parts))
    }

    /// Callers guarantee the input is weakly decreasing.
    pub(crate) fn from_sorted(mut parts: Vec<u32>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// The column `(1^k)`.
    pub fn column(k: usize) -> Self {
        Partition { parts: vec![1; k] }
    }

    /// The rectangle `(width^rows)`.
    pub fn rectangle(width: u32, rows: usize) -> Self {
        Self::from_sorted(vec![width; rows])
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Number of nonzero rows.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `|λ|`.
    pub fn weight(&self) -> u64 {
        self.parts.iter().map(|&p| p as u64).sum()
    }

    /// Part `i` (0-based), zero past the end.
    pub fn get(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.get(0) as usize;
        let parts = (0..width)
            .map(|c| self.parts.iter().filter(|&&p| p as usize > c).count() as u32)
            .collect();
        Partition { parts }
    }

    /// Whether the diagram of `other` fits inside the diagram of `self`.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && (0..other.len()).all(|i| self.parts[i] >= other.parts[i])
    }

    /// Content `j - i` of every cell, row by row.
    pub fn contents(&self) -> Vec<i64> {
        let mut out = Vec::with_capacity(self.weight() as usize);
        for (i, &p) in self.parts.iter().enumerate() {
            for j in 0..p as usize {
                out.push(j as i64 - i as i64);
            }
        }
        out
    }

    /// Hook length of every cell, row by row.
    pub fn hook_lengths(&self) -> Vec<u64> {
        let conj = self.conjugate();
        let mut out = Vec::with_capacity(self.weight() as usize);
        for (i, &p) in self.parts.iter().enumerate() {
            for j in 0..p as usize {
                let arm = p as usize - j - 1;
                let leg = conj.get(j) as usize - i - 1;
                out.push((arm + leg + 1) as u64);
            }
        }
        out
    }

    /// Parts padded with zeros to `rank` entries; `None` if there are too many rows.
    pub fn padded(&self, rank: usize) -> Option<Vec<i64>> {
        if self.len() > rank {
            return None;
        }
        let mut v: Vec<i64> = self.parts.iter().map(|&p| p as i64).collect();
        v.resize(rank, 0);
        Some(v)
    }

    /// Size first, then larger parts first: `(2) < (1,1) < (3) < (2,1) < (1,1,1)`.
    pub fn graded_lex_cmp(&self, other: &Partition) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| other.parts.cmp(&self.parts))
    }

    /// Partitions of `d` with at most `max_rows` rows and parts at most
    /// `max_part`, in lexicographically decreasing order.
    pub fn all_of(d: u64, max_rows: Option<usize>, max_part: Option<u32>) -> Vec<Partition> {
        fn rec(
            remaining: u64,
            cap: u32,
            rows_left: usize,
            prefix: &mut Vec<u32>,
            out: &mut Vec<Partition>,
        ) {
            if remaining == 0 {
                out.push(Partition {
                    parts: prefix.clone(),
                });
                return;
            }
            if rows_left == 0 {
                return;
            }
            let top = (cap as u64).min(remaining) as u32;
            for p in (1..=top).rev() {
                // the remaining rows must be able to absorb what is left
                if (p as u128) * (rows_left as u128) < remaining as u128 {
                    break;
                }
                prefix.push(p);
                rec(remaining - p as u64, p, rows_left - 1, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        let cap = max_part.unwrap_or(u32::MAX);
        let rows = max_rows.unwrap_or(usize::MAX);
        rec(d, cap, rows, &mut Vec::new(), &mut out);
        out
    }

    /// Partitions whose diagram fits in a `rows × max_part` box, any size.
    pub fn all_in_box(rows: usize, max_part: u32) -> Vec<Partition> {
        fn rec(i: usize, rows: usize, cap: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if i == rows {
                out.push(Partition::from_sorted(prefix.clone()));
                return;
            }
            for v in (0..=cap).rev() {
                prefix.push(v);
                rec(i + 1, rows, v, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(0, rows, max_part, &mut Vec::new(), &mut out);
        out
    }

    /// Every `ν ⊆ self` such that `self / ν` is a horizontal strip of `size` cells.
    pub fn remove_horizontal_strips(&self, size: u64) -> Vec<Partition> {
        let mut out = Vec::new();
        let rows = self.len();
        let mut buf = Vec::with_capacity(rows);
        fn rec(mu: &[u32], i: usize, remaining: u64, buf: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if i == mu.len() {
                if remaining == 0 {
                    out.push(Partition::from_sorted(buf.clone()));
                }
                return;
            }
            let floor = mu.get(i + 1).copied().unwrap_or(0);
            let most = ((mu[i] - floor) as u64).min(remaining);
            for take in 0..=most {
                buf.push(mu[i] - take as u32);
                rec(mu, i + 1, remaining - take, buf, out);
                buf.pop();
            }
        }
        rec(&self.parts, 0, size, &mut buf, &mut out);
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", p)?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Partition{}", self)
    }
}

/// A GL(rank)-weight in ε-coordinates; entries may be negative.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct GeneralizedWeight {
    entries: Vec<i64>,
}

impl GeneralizedWeight {
    pub fn new(entries: Vec<i64>) -> Self {
        GeneralizedWeight { entries }
    }

    pub fn zero(rank: usize) -> Self {
        GeneralizedWeight {
            entries: vec![0; rank],
        }
    }

    /// A partition padded to `rank` entries.
    pub fn from_partition(p: &Partition, rank: usize) -> Result<Self> {
        p.padded(rank)
            .map(Self::new)
            .ok_or_else(|| Error::TooManyRows {
                parts: format!("{}", p),
                rows: p.len(),
                max: rank,
            })
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn is_dominant(&self) -> bool {
        self.entries.windows(2).all(|w| w[0] >= w[1])
    }

    /// Adds `c` to every entry (tensoring with `det^c`).
    pub fn shifted(&self, c: i64) -> Self {
        GeneralizedWeight {
            entries: self.entries.iter().map(|e| e + c).collect(),
        }
    }
}

impl fmt::Display for GeneralizedWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.entries)
    }
}

/// Dimension of the irreducible GL(rank)-module of highest weight `w`:
/// `∏_{i<j} (w_i − w_j + j − i) / (j − i)`, reduced once at the end.
pub fn weyl_dimension(w: &GeneralizedWeight) -> Result<BigUint> {
    if !w.is_dominant() {
        return Err(Error::NotDominant(format!("{}", w)));
    }
    let e = w.entries();
    let mut num = BigInt::from(1u8);
    let mut den = BigInt::from(1u8);
    for i in 0..e.len() {
        for j in i + 1..e.len() {
            let gap = (j - i) as i64;
            num *= BigInt::from(e[i] - e[j] + gap);
            den *= BigInt::from(gap);
        }
    }
    let q = num / den;
    debug_assert!(q.is_positive());
    Ok(q.magnitude().clone())
}

/// Weyl dimension of a partition at a given rank; zero when it has too many rows.
pub fn schur_dimension(p: &Partition, rank: usize) -> BigUint {
    match GeneralizedWeight::from_partition(p, rank) {
        Ok(w) => weyl_dimension(&w).expect("partitions are dominant"),
        Err(_) => BigUint::default(),
    }
}

/// `𝕊^a ⊗ 𝕊^b = ⊕ c^μ_{ab} 𝕊^μ`, restricted to `μ` with at most `rank` rows.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct LrDecomposition {
    pub terms: BTreeMap<Partition, u64>,
}

impl LrDecomposition {
    pub fn coefficient(&self, mu: &Partition) -> u64 {
        self.terms.get(mu).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Littlewood–Richardson coefficients by enumerating LR skew tableaux.
///
/// The cells labelled `i` (one per part `b_i`) are added to `a` as a horizontal
/// strip, labels in increasing order. The reverse reading word is a lattice
/// word iff for every row `r` the number of `i+1`s in rows `≤ r` is at most the
/// number of `i`s in rows `< r`; that is enforced strip by strip.
pub fn littlewood_richardson(a: &Partition, b: &Partition, rank: usize) -> LrDecomposition {
    let mut out = LrDecomposition::default();
    if a.len() > rank || b.len() > rank {
        return out;
    }
    let max_rows = (a.len() + b.len()).min(rank);
    let mut shape: Vec<u32> = a.parts().to_vec();
    shape.resize(max_rows, 0);
    let labels = b.parts();
    let mut prev_counts = vec![0u32; max_rows];
    let mut search = LrSearch {
        labels,
        max_rows,
        out: &mut out.terms,
    };
    search.place_label(0, &mut shape, &mut prev_counts);
    out
}

struct LrSearch<'a> {
    labels: &'a [u32],
    max_rows: usize,
    out: &'a mut BTreeMap<Partition, u64>,
}

impl LrSearch<'_> {
    fn place_label(&mut self, label: usize, shape: &mut Vec<u32>, prev_counts: &mut Vec<u32>) {
        if label == self.labels.len() {
            let mu = Partition::from_sorted(shape.clone());
            *self.out.entry(mu).or_insert(0) += 1;
            return;
        }
        let old = shape.clone();
        let mut counts = vec![0u32; self.max_rows];
        self.place_row(
            label,
            0,
            self.labels[label],
            0,
            0,
            &old,
            shape,
            prev_counts,
            &mut counts,
        );
    }

    #[allow(clippy::too_many_arguments)]
    fn place_row(
        &mut self,
        label: usize,
        row: usize,
        remaining: u32,
        placed_through: u32,
        prev_through: u32,
        old: &[u32],
        shape: &mut Vec<u32>,
        prev_counts: &mut Vec<u32>,
        counts: &mut Vec<u32>,
    ) {
        if remaining == 0 {
            let mut next_prev = counts.clone();
            core::mem::swap(prev_counts, &mut next_prev);
            self.place_label(label + 1, shape, prev_counts);
            core::mem::swap(prev_counts, &mut next_prev);
            return;
        }
        if row == self.max_rows {
            return;
        }
        // horizontal strip: new length of this row may not pass the old row above
        let room = if row == 0 {
            remaining
        } else {
            (old[row - 1] - old[row]).min(remaining)
        };
        let lattice_cap = if label == 0 {
            remaining
        } else {
            // cumulative count through this row ≤ previous label's count through row-1
            prev_through.saturating_sub(placed_through).min(remaining)
        };
        let most = room.min(lattice_cap);
        let prev_here = prev_counts[row];
        for take in (0..=most).rev() {
            shape[row] = old[row] + take;
            counts[row] = take;
            self.place_row(
                label,
                row + 1,
                remaining - take,
                placed_through + take,
                prev_through + prev_here,
                old,
                shape,
                prev_counts,
                counts,
            );
        }
        shape[row] = old[row];
        counts[row] = 0;
    }
}

/// Human-readable name for messages.
pub fn describe(p: &Partition) -> String {
    format!("{}", p)
}
