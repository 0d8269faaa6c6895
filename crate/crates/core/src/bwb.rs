//! Borel–Weil–Bott on `Gr = G(n, V)`, `dim V = 2n + 1`.
//!
//! An irreducible homogeneous bundle is `𝕊^λ U^∨ ⊗ 𝕊^ν Q ⊗ O(t)` with `U` the
//! rank-`n` tautological subbundle and `Q` the rank-`(n+1)` quotient.
//!
//! # Weight convention
//!
//! [`to_weight`] writes the GL(2n+1)-weight in ε-coordinates as
//!
//! ```text
//! (λ_1 + t, …, λ_n + t | −ν_{n+1}, …, −ν_1)
//! ```
//!
//! i.e. the `U^∨` block first carrying the twist, then the `Q` block as the
//! weight of `𝕊^ν Q = 𝕊^{−rev ν} Q^∨`. With this choice `H^0(O(1)) = ∧^n V^∨`,
//! `H^0(U^∨ ⊗ Q)` is the adjoint representation and `O(−2n−1)` has its single
//! class in degree `n² + n`; the anchor tests in this module pin all three.
//! Weights are meaningful up to adding a constant to every entry, which does
//! not change degrees or dimensions.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::partitions::{schur_dimension, weyl_dimension, GeneralizedWeight, Partition};

/// `𝕊^{u_part} U^∨ ⊗ 𝕊^{q_part} Q ⊗ O(twist)` on `G(n, 2n+1)`, canonical form:
/// `q_part` has at most `n` rows and `u_part` at most `n − 1` rows, full
/// columns having been absorbed into the twist (`∧^{n+1} Q = ∧^n U^∨ = O(1)`).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct BundleFactor {
    n: usize,
    u_part: Partition,
    q_part: Partition,
    twist: i64,
}

impl BundleFactor {
    /// Builds and canonicalizes a factor. `u_part` may have up to `n` rows and
    /// `q_part` up to `n + 1`.
    pub fn new(n: usize, u_part: Partition, q_part: Partition, twist: i64) -> Result<Self> {
        if n == 0 {
            return Err(Error::OutOfRange(String::from(
                "grassmannian parameter n must be ≥ 1",
            )));
        }
        if u_part.len() > n {
            return Err(Error::TooManyRows {
                parts: format!("{}", u_part),
                rows: u_part.len(),
                max: n,
            });
        }
        if q_part.len() > n + 1 {
            return Err(Error::TooManyRows {
                parts: format!("{}", q_part),
                rows: q_part.len(),
                max: n + 1,
            });
        }
        let mut twist = twist;
        let q_full = q_part.get(n);
        let q_part = Partition::from_sorted(q_part.parts().iter().map(|&p| p - q_full).collect());
        twist += q_full as i64;
        let u_full = u_part.get(n - 1);
        let u_part = Partition::from_sorted(u_part.parts().iter().map(|&p| p - u_full).collect());
        twist += u_full as i64;
        Ok(BundleFactor {
            n,
            u_part,
            q_part,
            twist,
        })
    }

    /// `O(t)`.
    pub fn line(n: usize, twist: i64) -> Result<Self> {
        Self::new(n, Partition::empty(), Partition::empty(), twist)
    }

    /// `𝕊^ν Q ⊗ O(t)`.
    pub fn schur_q(n: usize, q_part: Partition, twist: i64) -> Result<Self> {
        Self::new(n, Partition::empty(), q_part, twist)
    }

    /// Recovers the canonical factor from a weight laid out as in [`to_weight`].
    /// Both blocks must be weakly decreasing.
    pub fn from_weight(n: usize, w: &GeneralizedWeight) -> Result<Self> {
        let e = w.entries();
        if e.len() != 2 * n + 1 {
            return Err(Error::DimensionMismatch(format!(
                "weight of rank {} on G({}, {})",
                e.len(),
                n,
                2 * n + 1
            )));
        }
        let (u, q) = e.split_at(n);
        let dominant = |b: &[i64]| b.windows(2).all(|p| p[0] >= p[1]);
        if !dominant(u) || !dominant(q) {
            return Err(Error::NotDominant(format!("{} (per block)", w)));
        }
        // Q block is −rev(ν) + s with ν_{n+1} = 0, so s = q[0]
        let shift = q[0];
        let q_parts: Vec<u32> = q.iter().rev().map(|&x| (shift - x) as u32).collect();
        let u_shifted: Vec<i64> = u.iter().map(|&x| x - shift).collect();
        let twist = u_shifted[n - 1];
        let u_parts: Vec<u32> = u_shifted.iter().map(|&x| (x - twist) as u32).collect();
        Self::new(
            n,
            Partition::from_sorted(u_parts),
            Partition::from_sorted(q_parts),
            twist,
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn u_part(&self) -> &Partition {
        &self.u_part
    }

    pub fn q_part(&self) -> &Partition {
        &self.q_part
    }

    pub fn twist(&self) -> i64 {
        self.twist
    }

    /// Rank of the bundle: `dim 𝕊^λ ℂ^n · dim 𝕊^ν ℂ^{n+1}`.
    pub fn rank(&self) -> BigUint {
        schur_dimension(&self.u_part, self.n) * schur_dimension(&self.q_part, self.n + 1)
    }

    /// `dim Gr = n² + n`.
    pub fn grassmannian_dim(&self) -> usize {
        self.n * self.n + self.n
    }
}

impl fmt::Display for BundleFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        if !self.u_part.is_empty() {
            write!(f, "S{}Udual", self.u_part)?;
            wrote = true;
        }
        if !self.q_part.is_empty() {
            if wrote {
                f.write_str(" ⊗ ")?;
            }
            write!(f, "S{}Q", self.q_part)?;
            wrote = true;
        }
        if wrote {
            if self.twist != 0 {
                write!(f, "({})", self.twist)?;
            }
            Ok(())
        } else {
            write!(f, "O({})", self.twist)
        }
    }
}

/// Result of Borel–Weil–Bott: no cohomology, or one degree carrying the
/// irreducible module of the given dominant weight.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CohomologyResult {
    Zero,
    Nonzero {
        degree: usize,
        dominant: GeneralizedWeight,
        dimension: BigUint,
    },
}

impl CohomologyResult {
    pub fn is_zero(&self) -> bool {
        matches!(self, CohomologyResult::Zero)
    }

    pub fn degree(&self) -> Option<usize> {
        match self {
            CohomologyResult::Zero => None,
            CohomologyResult::Nonzero { degree, .. } => Some(*degree),
        }
    }

    pub fn dimension(&self) -> BigUint {
        match self {
            CohomologyResult::Zero => BigUint::default(),
            CohomologyResult::Nonzero { dimension, .. } => dimension.clone(),
        }
    }
}

/// GL(2n+1)-weight of a factor; see the module docs for the layout.
pub fn to_weight(b: &BundleFactor) -> GeneralizedWeight {
    let n = b.n;
    let mut e = Vec::with_capacity(2 * n + 1);
    for i in 0..n {
        e.push(b.u_part.get(i) as i64 + b.twist);
    }
    for j in (0..=n).rev() {
        e.push(-(b.q_part.get(j) as i64));
    }
    GeneralizedWeight::new(e)
}

/// Sort-based Bott algorithm: add `δ = (N, …, 1)`, reject repeated entries,
/// sort strictly decreasing counting inversions, subtract `δ`.
pub fn bott(w: &GeneralizedWeight) -> CohomologyResult {
    let rank = w.rank();
    let mut shifted: Vec<i64> = w
        .entries()
        .iter()
        .enumerate()
        .map(|(i, &x)| x + (rank - i) as i64)
        .collect();
    let inversions = sort_desc_counting_inversions(&mut shifted);
    if shifted.windows(2).any(|p| p[0] == p[1]) {
        return CohomologyResult::Zero;
    }
    let dominant = GeneralizedWeight::new(
        shifted
            .iter()
            .enumerate()
            .map(|(i, &x)| x - (rank - i) as i64)
            .collect(),
    );
    let dimension = weyl_dimension(&dominant).expect("sorted weight is dominant");
    CohomologyResult::Nonzero {
        degree: inversions,
        dominant,
        dimension,
    }
}

/// Stable merge sort into decreasing order; returns the number of pairs
/// `i < j` with `v_i < v_j` in the input.
fn sort_desc_counting_inversions(v: &mut [i64]) -> usize {
    if v.len() < 2 {
        return 0;
    }
    let mid = v.len() / 2;
    let mut count = sort_desc_counting_inversions(&mut v[..mid]);
    count += sort_desc_counting_inversions(&mut v[mid..]);
    let mut merged = Vec::with_capacity(v.len());
    let (mut i, mut j) = (0, mid);
    while i < mid && j < v.len() {
        if v[j] > v[i] {
            // v[j] jumps over everything left in the first half
            count += mid - i;
            merged.push(v[j]);
            j += 1;
        } else {
            merged.push(v[i]);
            i += 1;
        }
    }
    merged.extend_from_slice(&v[i..mid]);
    merged.extend_from_slice(&v[j..]);
    v.copy_from_slice(&merged);
    count
}

/// Cohomology of a single factor.
pub fn cohomology(b: &BundleFactor) -> CohomologyResult {
    bott(&to_weight(b))
}

/// `b^∨ ⊗ ω_Gr` with `ω_Gr = O(−2n−1)`; pairs `H^p(b)` with `H^{n²+n−p}`.
pub fn serre_dual(b: &BundleFactor) -> BundleFactor {
    let n = b.n;
    let w = to_weight(b);
    let (u, q) = w.entries().split_at(n);
    let big_n = (2 * n + 1) as i64;
    let mut e: Vec<i64> = u.iter().rev().map(|&x| -x - big_n).collect();
    e.extend(q.iter().rev().map(|&x| -x));
    BundleFactor::from_weight(n, &GeneralizedWeight::new(e)).expect("dual of a canonical factor")
}

/// A weight in fundamental-weight coordinates of `sl(N)`: `N − 1` integers.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FundamentalWeight {
    coords: Vec<i64>,
}

impl FundamentalWeight {
    pub fn new(coords: Vec<i64>) -> Self {
        FundamentalWeight { coords }
    }

    /// `ω_j = w_j − w_{j+1}`.
    pub fn from_gl(w: &GeneralizedWeight) -> Self {
        let e = w.entries();
        FundamentalWeight {
            coords: e.windows(2).map(|p| p[0] - p[1]).collect(),
        }
    }

    /// The GL-weight with these coordinates whose entries sum to `total`;
    /// `None` when no integral lift exists.
    pub fn to_gl(&self, total: i64) -> Option<GeneralizedWeight> {
        let rank = self.coords.len() + 1;
        // entries e_j = c + Σ_{k≥j} ω_k with e_rank = c
        let mut tails = vec![0i64; rank];
        for j in (0..rank - 1).rev() {
            tails[j] = tails[j + 1] + self.coords[j];
        }
        let rest: i64 = tails.iter().sum();
        let diff = total - rest;
        if diff % rank as i64 != 0 {
            return None;
        }
        let c = diff / rank as i64;
        Some(GeneralizedWeight::new(
            tails.iter().map(|t| t + c).collect(),
        ))
    }

    /// `ρ`, all ones.
    pub fn rho(rank: usize) -> Self {
        FundamentalWeight {
            coords: vec![1; rank - 1],
        }
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }
}

/// Simple reflection `s_{α_i}` (1-based `i`) in fundamental coordinates:
/// position `i` is negated and each neighbour `j = i ± 1` becomes `ω_j + ω_i`.
pub fn simple_reflection(omega: &FundamentalWeight, i: usize) -> Result<FundamentalWeight> {
    let len = omega.coords.len();
    if i == 0 || i > len {
        return Err(Error::OutOfRange(format!(
            "simple reflection index {} not in 1..={}",
            i, len
        )));
    }
    let mut c = omega.coords.clone();
    let wi = c[i - 1];
    c[i - 1] = -wi;
    if i >= 2 {
        c[i - 2] += wi;
    }
    if i < len {
        c[i] += wi;
    }
    Ok(FundamentalWeight { coords: c })
}

/// Steps of the leftmost-negative-entry walk on `ω + ρ`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ReflectionWalk {
    /// 1-based indices of the reflections applied, in order.
    pub reflections: Vec<usize>,
    /// `ω + ρ` after each step (the first entry is the start).
    pub trail: Vec<FundamentalWeight>,
}

/// Repeatedly reflects at the leftmost negative coordinate of `start` until
/// none is negative or a zero appears. At most `max_steps` reflections.
pub fn leftmost_negative_walk(start: &FundamentalWeight, max_steps: usize) -> ReflectionWalk {
    let mut current = start.clone();
    let mut walk = ReflectionWalk {
        reflections: Vec::new(),
        trail: vec![current.clone()],
    };
    while walk.reflections.len() < max_steps {
        if current.coords.contains(&0) {
            break;
        }
        let Some(pos) = current.coords.iter().position(|&x| x < 0) else {
            break;
        };
        current = simple_reflection(&current, pos + 1).expect("index in range");
        walk.reflections.push(pos + 1);
        walk.trail.push(current.clone());
    }
    walk
}

/// Borel–Weil–Bott through the reflection walk instead of sorting. Returns the
/// same [`CohomologyResult`] as [`bott`]; used as an independent cross-check.
pub fn bott_by_reflections(w: &GeneralizedWeight) -> CohomologyResult {
    let rank = w.rank();
    if rank < 2 {
        return bott(w);
    }
    let omega = FundamentalWeight::from_gl(w);
    let start = FundamentalWeight {
        coords: omega.coords.iter().map(|x| x + 1).collect(),
    };
    // the Weyl group of sl(N) has longest element of length N(N-1)/2
    let walk = leftmost_negative_walk(&start, rank * (rank - 1) / 2 + 1);
    let end = walk.trail.last().expect("trail starts non-empty");
    if end.coords.iter().any(|&x| x <= 0) {
        return CohomologyResult::Zero;
    }
    let result = FundamentalWeight {
        coords: end.coords.iter().map(|x| x - 1).collect(),
    };
    let total: i64 = w.entries().iter().sum();
    let dominant = result
        .to_gl(total)
        .expect("W permutes w + δ, so the sum is preserved");
    let dimension = weyl_dimension(&dominant).expect("dominant by construction");
    CohomologyResult::Nonzero {
        degree: walk.reflections.len(),
        dominant,
        dimension,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subsets::binomial;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn dim(r: &CohomologyResult) -> u64 {
        r.dimension().try_into().unwrap()
    }

    #[test]
    fn canonical_absorbs_full_columns() {
        let b = BundleFactor::new(2, Partition::empty(), Partition::column(3), -2).unwrap();
        assert_eq!(b, BundleFactor::line(2, -1).unwrap());
        let b = BundleFactor::new(3, p(&[2, 1, 1]), p(&[1]), 0).unwrap();
        assert_eq!(b.u_part(), &p(&[1]));
        assert_eq!(b.twist(), 1);
        assert!(BundleFactor::new(2, p(&[1, 1, 1]), Partition::empty(), 0).is_err());
    }

    #[test]
    fn anchor_h0_of_o1() {
        for n in 1..6usize {
            let r = cohomology(&BundleFactor::line(n, 1).unwrap());
            assert_eq!(r.degree(), Some(0));
            assert_eq!(
                dim(&r) as u128,
                binomial(2 * n as u64 + 1, n as u64).unwrap()
            );
        }
        assert_eq!(
            to_weight(&BundleFactor::line(2, 0).unwrap()),
            GeneralizedWeight::zero(5)
        );
    }

    #[test]
    fn anchor_adjoint() {
        for n in 1..6usize {
            let b = BundleFactor::new(n, p(&[1]), p(&[1]), 0).unwrap();
            let r = cohomology(&b);
            let big = 2 * n as u64 + 1;
            assert_eq!(r.degree(), Some(0));
            assert_eq!(dim(&r), big * big - 1);
        }
    }

    #[test]
    fn anchor_canonical_bundle() {
        for n in 1..6usize {
            let r = cohomology(&BundleFactor::line(n, -(2 * n as i64) - 1).unwrap());
            assert_eq!(r.degree(), Some(n * n + n));
            assert_eq!(dim(&r), 1);
        }
    }

    #[test]
    fn negative_twists_vanish() {
        for n in 1..6usize {
            for i in 1..(2 * n as i64 + 1) {
                assert!(cohomology(&BundleFactor::line(n, -i).unwrap()).is_zero());
            }
        }
    }

    #[test]
    fn stated_vanishings() {
        for n in 2..6usize {
            let mut hook = vec![2u32];
            hook.extend(core::iter::repeat_n(1, n - 1));
            let b = BundleFactor::schur_q(n, p(&hook), -2 * n as i64 - 2).unwrap();
            assert!(cohomology(&b).is_zero());
            let b = BundleFactor::schur_q(n, p(&[1]), -2 * n as i64 - 1).unwrap();
            assert!(cohomology(&b).is_zero());
        }
    }

    #[test]
    fn serre_dual_examples() {
        let n = 3;
        let o = BundleFactor::line(n, 0).unwrap();
        assert_eq!(serre_dual(&o), BundleFactor::line(n, -7).unwrap());
        let mut a = vec![3u32];
        a.extend(core::iter::repeat_n(2, n - 1));
        let b = BundleFactor::schur_q(n, p(&a), -7).unwrap();
        let mut c = vec![3u32];
        c.extend(core::iter::repeat_n(1, n - 1));
        // S^(3,2,2,0)Q^∨ = S^(3,1,1,0)Q(−3)
        assert_eq!(serre_dual(&b), BundleFactor::schur_q(n, p(&c), -3).unwrap());
        assert_eq!(serre_dual(&serre_dual(&b)), b);
    }

    #[test]
    fn reflection_formula() {
        let rho = FundamentalWeight::rho(5);
        let s2 = simple_reflection(&rho, 2).unwrap();
        assert_eq!(s2.coords(), &[2, -1, 2, 1]);
        let s1 = simple_reflection(&rho, 1).unwrap();
        assert_eq!(s1.coords(), &[-1, 2, 1, 1]);
        for i in 1..=4 {
            let w = FundamentalWeight::new(vec![3, -2, 0, 5]);
            let twice = simple_reflection(&simple_reflection(&w, i).unwrap(), i).unwrap();
            assert_eq!(twice, w);
        }
        assert!(simple_reflection(&rho, 0).is_err());
        assert!(simple_reflection(&rho, 5).is_err());
    }

    #[test]
    fn walk_reproduces_first_n_steps() {
        // S^νQ(−i) with i > n: after n reflections ω+ρ becomes
        // (i−n, 1^{n−1}, 2+j_1−i, 1+j_2, …, 1+j_n)
        for n in 3..6usize {
            for i in (n as i64 + 1)..(2 * n as i64 + 1) {
                let nu = p(&[2, 1]);
                let b = BundleFactor::schur_q(n, nu.clone(), -i).unwrap();
                let omega = FundamentalWeight::from_gl(&to_weight(&b));
                let start = FundamentalWeight::new(omega.coords().iter().map(|x| x + 1).collect());
                let j: Vec<i64> = (0..n)
                    .map(|k| nu.get(n - k - 1) as i64 - nu.get(n - k) as i64)
                    .collect();
                let mut expect_start = vec![1i64; n - 1];
                expect_start.push(1 - i);
                expect_start.extend(j.iter().map(|x| x + 1));
                assert_eq!(start.coords(), expect_start.as_slice());
                let walk = leftmost_negative_walk(&start, n);
                assert_eq!(walk.reflections, (1..=n).rev().collect::<Vec<_>>());
                let mut expect = vec![i - n as i64];
                expect.extend(core::iter::repeat_n(1, n - 1));
                expect.push(2 + j[0] - i);
                expect.extend(j[1..].iter().map(|x| x + 1));
                assert_eq!(walk.trail[n].coords(), expect.as_slice());
            }
        }
    }

    #[test]
    fn sort_counts_inversions() {
        let mut v = vec![1, 3, 2, 5];
        assert_eq!(sort_desc_counting_inversions(&mut v), 5);
        assert_eq!(v, vec![5, 3, 2, 1]);
    }
}
