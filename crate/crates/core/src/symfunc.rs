//! Plethysms `s_λ[e_n]` in `N` variables and the search for a determinant
//! power `(k^N)` occurring in them with multiplicity at least two.
//!
//! The monomials of `e_n` are used as letters, ordered lexicographically as
//! `n`-subsets. A term of `s_λ[e_n]` is a semistandard tableau of shape `λ` in
//! these letters; its weight is the sum of the letters' exponent vectors.
//! Tableaux are built letter by letter, each letter adding a horizontal strip.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use hashbrown::HashMap;
use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::partitions::Partition;
use crate::subsets::{binomial, k_subsets};

/// Degree budget used when none is given.
pub const DEFAULT_MAX_DEGREE: u64 = 30;

/// Upper bound on `n · |λ|`, the degree of `s_λ[e_n]`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PlethysmBudget {
    pub max_degree: u64,
}

impl Default for PlethysmBudget {
    fn default() -> Self {
        PlethysmBudget {
            max_degree: DEFAULT_MAX_DEGREE,
        }
    }
}

impl PlethysmBudget {
    pub fn new(max_degree: u64) -> Self {
        PlethysmBudget { max_degree }
    }

    fn check(&self, lambda: &Partition, n: usize) -> Result<()> {
        let degree = lambda.weight() * n as u64;
        if degree > self.max_degree {
            return Err(Error::Budget(format!(
                "s{}[e_{}] has degree {} > {}",
                lambda, n, degree, self.max_degree
            )));
        }
        Ok(())
    }
}

/// Schur expansion `Σ c_μ s_μ` in `nvars` variables.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SchurExpansion {
    pub nvars: usize,
    pub terms: BTreeMap<Partition, BigUint>,
}

impl SchurExpansion {
    pub fn coefficient(&self, mu: &Partition) -> BigUint {
        self.terms.get(mu).cloned().unwrap_or_default()
    }

    /// Terms by increasing size, larger parts first within a size.
    pub fn sorted_terms(&self) -> Vec<(&Partition, &BigUint)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.graded_lex_cmp(b.0));
        v
    }
}

/// Symmetric polynomial stored by dominant exponent (one per orbit).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MonomialTable {
    pub nvars: usize,
    pub terms: BTreeMap<Partition, BigInt>,
}

impl MonomialTable {
    pub fn coefficient(&self, e: &Partition) -> BigInt {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    /// Number of distinct permutations of the padded exponent vector.
    pub fn orbit_size(&self, e: &Partition) -> BigUint {
        let padded = e.padded(self.nvars).unwrap_or_default();
        let mut runs: BTreeMap<i64, u64> = BTreeMap::new();
        for x in padded {
            *runs.entry(x).or_default() += 1;
        }
        let mut out = factorial(self.nvars as u64);
        for r in runs.values() {
            out /= factorial(*r);
        }
        out
    }
}

fn factorial(m: u64) -> BigUint {
    (1..=m).fold(BigUint::from(1u8), |acc, i| acc * i)
}

/// Sub-diagrams of `λ` and the horizontal strips between them.
struct StripGraph {
    shapes: Vec<Vec<u32>>,
    sizes: Vec<u32>,
    /// `(target, cells added)`, including the empty strip.
    edges: Vec<Vec<(usize, u32)>>,
    full: usize,
}

impl StripGraph {
    fn new(lambda: &Partition) -> Self {
        let rows = lambda.len();
        let mut shapes: Vec<Vec<u32>> = Vec::new();
        fn rec(i: usize, lambda: &Partition, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if i == lambda.len() {
                out.push(cur.clone());
                return;
            }
            let cap = if i == 0 {
                lambda.get(0)
            } else {
                lambda.get(i).min(cur[i - 1])
            };
            for v in 0..=cap {
                cur.push(v);
                rec(i + 1, lambda, cur, out);
                cur.pop();
            }
        }
        rec(0, lambda, &mut Vec::with_capacity(rows), &mut shapes);
        let index: HashMap<Vec<u32>, usize> = shapes
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, s)| (s, i))
            .collect();
        let sizes = shapes.iter().map(|s| s.iter().sum()).collect();
        let mut edges = Vec::with_capacity(shapes.len());
        for s in &shapes {
            let mut out = Vec::new();
            let mut cur = Vec::with_capacity(rows);
            fn grow(
                i: usize,
                s: &[u32],
                lambda: &Partition,
                cur: &mut Vec<u32>,
                added: u32,
                index: &HashMap<Vec<u32>, usize>,
                out: &mut Vec<(usize, u32)>,
            ) {
                if i == s.len() {
                    out.push((index[cur.as_slice()], added));
                    return;
                }
                // a horizontal strip never passes the old row above
                let hi = if i == 0 {
                    lambda.get(0)
                } else {
                    lambda.get(i).min(s[i - 1])
                };
                for v in s[i]..=hi {
                    cur.push(v);
                    grow(i + 1, s, lambda, cur, added + v - s[i], index, out);
                    cur.pop();
                }
            }
            grow(0, s, lambda, &mut cur, 0, &index, &mut out);
            edges.push(out);
        }
        let full = index[&lambda.parts().to_vec()];
        StripGraph {
            shapes,
            sizes,
            edges,
            full,
        }
    }
}

const LANE_BITS: u32 = 8;
const MAX_LANES: usize = 16;

fn lane(packed: u128, i: usize) -> u32 {
    ((packed >> (LANE_BITS as usize * i)) & 0xff) as u32
}

fn unpack(packed: u128, nvars: usize) -> Vec<u32> {
    (0..nvars).map(|i| lane(packed, i)).collect()
}

/// Exponent-vector counts of tableaux of shape `λ` over the letters, keeping
/// only states that `keep(exponents, frozen, remaining)` accepts. `frozen` is
/// the number of leading variables no later letter touches.
fn tableau_weights(
    lambda: &Partition,
    n: usize,
    nvars: usize,
    keep: impl Fn(&[u32], usize, u32) -> bool,
) -> Result<HashMap<u128, u128>> {
    if nvars > MAX_LANES || lambda.weight() > 255 {
        return Err(Error::Budget(format!(
            "tableau weights need at most {} variables and |λ| ≤ 255",
            MAX_LANES
        )));
    }
    let letters = k_subsets(nvars, n);
    let masks: Vec<u128> = letters
        .iter()
        .map(|l| {
            l.iter()
                .fold(0u128, |m, &i| m | (1u128 << (LANE_BITS as usize * i)))
        })
        .collect();
    let graph = StripGraph::new(lambda);
    let total = lambda.weight() as u32;
    let mut states: HashMap<(usize, u128), u128> = HashMap::new();
    states.insert((0, 0), 1);
    let mut scratch = vec![0u32; nvars];
    for (j, mask) in masks.iter().enumerate() {
        let frozen = letters.get(j + 1).map_or(nvars, |l| l[0]);
        let mut next: HashMap<(usize, u128), u128> = HashMap::with_capacity(states.len());
        for (&(shape, packed), &count) in &states {
            for &(target, added) in &graph.edges[shape] {
                let e = packed + (added as u128) * mask;
                for (i, slot) in scratch.iter_mut().enumerate() {
                    *slot = lane(e, i);
                }
                let remaining = total - graph.sizes[target];
                if !keep(&scratch, frozen, remaining) {
                    continue;
                }
                let slot = next.entry((target, e)).or_insert(0);
                *slot = slot
                    .checked_add(count)
                    .ok_or(Error::Overflow("tableau count"))?;
            }
        }
        states = next;
    }
    debug_assert_eq!(
        graph.shapes[graph.full]
            .iter()
            .map(|&x| x as u64)
            .sum::<u64>(),
        lambda.weight()
    );
    Ok(states
        .into_iter()
        .filter(|((s, _), _)| *s == graph.full)
        .map(|((_, e), c)| (e, c))
        .collect())
}

/// States that can still end dominant: a frozen variable may not be beaten
/// by its right neighbour, a live one may not trail by more than what is left.
fn can_end_dominant(e: &[u32], frozen: usize, remaining: u32) -> bool {
    e.windows(2).enumerate().all(|(i, w)| {
        if i < frozen {
            w[0] >= w[1]
        } else {
            w[0] + remaining >= w[1]
        }
    })
}

/// Monomial expansion of `s_λ[e_n]` in `nvars` variables, dominant exponents only.
pub fn plethysm_monomials(lambda: &Partition, n: usize, nvars: usize) -> Result<MonomialTable> {
    check_shape(n, nvars)?;
    let weights = tableau_weights(lambda, n, nvars, can_end_dominant)?;
    let mut terms = BTreeMap::new();
    for (e, c) in weights {
        let v = unpack(e, nvars);
        if v.windows(2).all(|w| w[0] >= w[1]) {
            terms.insert(Partition::from_sorted(v), BigInt::from(c));
        }
    }
    Ok(MonomialTable { nvars, terms })
}

fn check_shape(n: usize, nvars: usize) -> Result<()> {
    if n == 0 || n > nvars {
        return Err(Error::OutOfRange(format!("e_{} in {} variables", n, nvars)));
    }
    Ok(())
}

/// Kostka numbers `K_{a,b}` (tableaux of shape `a`, content `b`) with a memo
/// keyed on shape and content prefix.
#[derive(Default)]
pub struct Kostka {
    memo: HashMap<(Partition, Vec<u32>), BigUint>,
}

impl Kostka {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&mut self, a: &Partition, b: &[u32]) -> BigUint {
        let b: Vec<u32> = b.iter().copied().filter(|&x| x > 0).collect();
        if a.weight() != b.iter().map(|&x| x as u64).sum::<u64>() {
            return BigUint::zero();
        }
        self.rec(a, &b)
    }

    fn rec(&mut self, a: &Partition, b: &[u32]) -> BigUint {
        let Some((&last, rest)) = b.split_last() else {
            return if a.is_empty() {
                BigUint::from(1u8)
            } else {
                BigUint::zero()
            };
        };
        // the largest letter fills a horizontal strip, so a has ≤ |b| rows
        if a.len() > b.len() {
            return BigUint::zero();
        }
        let key = (a.clone(), b.to_vec());
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let mut total = BigUint::zero();
        for nu in a.remove_horizontal_strips(last as u64) {
            total += self.rec(&nu, rest);
        }
        self.memo.insert(key, total.clone());
        total
    }
}

/// `a ⊵ b` in dominance order (equal sizes assumed).
fn dominates(a: &Partition, b: &Partition) -> bool {
    let rows = a.len().max(b.len());
    let (mut sa, mut sb) = (0u64, 0u64);
    for i in 0..rows {
        sa += a.get(i) as u64;
        sb += b.get(i) as u64;
        if sa < sb {
            return false;
        }
    }
    true
}

/// Converts a symmetric polynomial to the Schur basis by peeling off the
/// lexicographically largest dominant exponent.
pub fn straighten(mono: &MonomialTable) -> Result<SchurExpansion> {
    let nvars = mono.nvars;
    let mut out = BTreeMap::new();
    let Some(first) = mono.terms.keys().next() else {
        return Ok(SchurExpansion { nvars, terms: out });
    };
    let degree = first.weight();
    let order = Partition::all_of(degree, Some(nvars), None);
    let mut rest: BTreeMap<Partition, BigInt> = mono.terms.clone();
    let mut kostka = Kostka::new();
    for (i, a) in order.iter().enumerate() {
        let Some(c) = rest.get(a).cloned() else {
            continue;
        };
        if c.is_zero() {
            continue;
        }
        if c.is_negative() {
            return Err(Error::NotSchurPositive(format!("{}", a)));
        }
        for b in &order[i..] {
            if !dominates(a, b) {
                continue;
            }
            let k = kostka.get(a, b.parts());
            if k.is_zero() {
                continue;
            }
            let e = rest.entry(b.clone()).or_default();
            *e -= &c * BigInt::from(k);
        }
        out.insert(a.clone(), c.magnitude().clone());
    }
    Ok(SchurExpansion { nvars, terms: out })
}

/// Schur expansion of `s_λ[e_n]` in `nvars` variables.
pub fn plethysm_wedge(
    lambda: &Partition,
    n: usize,
    nvars: usize,
    budget: &PlethysmBudget,
) -> Result<SchurExpansion> {
    budget.check(lambda, n)?;
    straighten(&plethysm_monomials(lambda, n, nvars)?)
}

/// Multiplicity of `(k^N)`, `N = 2n + 1`, in `s_λ[e_n]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DeterminantMultiplicity {
    /// `None` when `N` does not divide `n · |λ|`.
    pub k: Option<u64>,
    pub multiplicity: BigUint,
}

fn permutations_with_sign(m: usize) -> Vec<(Vec<usize>, bool)> {
    // Heap's algorithm; each step is a transposition
    let mut a: Vec<usize> = (0..m).collect();
    let mut c = vec![0usize; m];
    let mut even = true;
    let mut out = vec![(a.clone(), even)];
    let mut i = 0;
    while i < m {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            even = !even;
            out.push((a.clone(), even));
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// Coefficient of `s_{(k^N)}` in `s_λ[e_n]` via the bialternant formula
/// `c = Σ_σ sgn(σ) [x^{κ + δ − σδ}] s_λ[e_n]`, counting tableaux only at the
/// exponents that formula reads.
pub fn determinant_multiplicity(
    lambda: &Partition,
    n: usize,
    budget: &PlethysmBudget,
) -> Result<DeterminantMultiplicity> {
    let nvars = 2 * n + 1;
    check_shape(n, nvars)?;
    budget.check(lambda, n)?;
    let degree = lambda.weight() * n as u64;
    if !degree.is_multiple_of(nvars as u64) {
        return Ok(DeterminantMultiplicity {
            k: None,
            multiplicity: BigUint::zero(),
        });
    }
    let k = degree / nvars as u64;
    let rows = binomial(nvars as u64, n as u64).ok_or(Error::Overflow("binomial"))?;
    if lambda.len() as u128 > rows {
        return Ok(DeterminantMultiplicity {
            k: Some(k),
            multiplicity: BigUint::zero(),
        });
    }
    let spread = nvars as i64 - 1;
    let upper = (k as i64 + spread) as u32;
    let lower = (k as i64 - spread).max(0) as u32;
    let keep = |e: &[u32], frozen: usize, remaining: u32| {
        can_end_dominant(e, frozen, remaining)
            && e.iter().all(|&x| x <= upper)
            && e[..frozen].iter().all(|&x| x >= lower)
    };
    let weights = tableau_weights(lambda, n, nvars, keep)?;
    let mut total = BigInt::zero();
    for (sigma, even) in permutations_with_sign(nvars) {
        let mut e: Vec<i64> = (0..nvars)
            .map(|i| k as i64 - i as i64 + sigma[i] as i64)
            .collect();
        if e.iter().any(|&x| x < 0) {
            continue;
        }
        e.sort_by(|a, b| b.cmp(a));
        let packed = e.iter().enumerate().fold(0u128, |acc, (i, &x)| {
            acc | ((x as u128) << (LANE_BITS as usize * i))
        });
        let c = weights.get(&packed).copied().unwrap_or(0);
        if even {
            total += c;
        } else {
            total -= c;
        }
    }
    if total.is_negative() {
        return Err(Error::NotSchurPositive(format!("({}^{})", k, nvars)));
    }
    Ok(DeterminantMultiplicity {
        k: Some(k),
        multiplicity: total.magnitude().clone(),
    })
}

/// A partition whose plethysm contains a determinant power more than once.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Witness {
    pub lambda: Partition,
    pub k: u64,
    pub multiplicity: BigUint,
}

/// Candidates of size `d` in scan order: larger parts first, at most
/// `binomial(2n+1, n)` rows, and only sizes for which a determinant power is
/// possible.
pub fn witness_candidates(n: usize, d: u64) -> Vec<Partition> {
    let nvars = 2 * n as u64 + 1;
    if !(d * n as u64).is_multiple_of(nvars) {
        return Vec::new();
    }
    let rows = binomial(nvars, n as u64)
        .unwrap_or(u128::MAX)
        .min(usize::MAX as u128) as usize;
    Partition::all_of(d, Some(rows), None)
}

/// First `λ` in graded-lex order with `|λ| ≤ degree_bound` whose determinant
/// multiplicity is at least two.
pub fn find_witness(
    n: usize,
    degree_bound: u64,
    budget: &PlethysmBudget,
) -> Result<Option<Witness>> {
    if n < 1 {
        return Err(Error::OutOfRange(String::from("n must be ≥ 1")));
    }
    for d in 1..=degree_bound {
        for lambda in witness_candidates(n, d) {
            let m = determinant_multiplicity(&lambda, n, budget)?;
            if m.multiplicity >= BigUint::from(2u8) {
                return Ok(Some(Witness {
                    lambda,
                    k: m.k.expect("divisible"),
                    multiplicity: m.multiplicity,
                }));
            }
        }
    }
    Ok(None)
}

/// `dim F(1, …, N−1; ∧^n V)` against `dim GL(V)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DimensionGap {
    pub flag_dim: BigUint,
    pub group_dim: BigUint,
    pub gap_holds: bool,
}

pub fn dimension_gap(n: usize) -> Result<DimensionGap> {
    let big =
        BigUint::from(binomial(2 * n as u64 + 1, n as u64).ok_or(Error::Overflow("binomial"))?);
    let flag_dim = &big * (&big - 1u8) / 2u8;
    let v = BigUint::from(2 * n as u64 + 1);
    let group_dim = &v * &v;
    let gap_holds = group_dim.cmp(&flag_dim) == Ordering::Less;
    Ok(DimensionGap {
        flag_dim,
        group_dim,
        gap_holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn expansion(e: &SchurExpansion) -> Vec<(Vec<u32>, u64)> {
        e.sorted_terms()
            .into_iter()
            .map(|(m, c)| (m.parts().to_vec(), c.try_into().unwrap()))
            .collect()
    }

    #[test]
    fn small_plethysms() {
        let b = PlethysmBudget::default();
        assert_eq!(
            expansion(&plethysm_wedge(&p(&[1]), 2, 5, &b).unwrap()),
            vec![(vec![1, 1], 1)]
        );
        assert_eq!(
            expansion(&plethysm_wedge(&p(&[2]), 2, 5, &b).unwrap()),
            vec![(vec![2, 2], 1), (vec![1, 1, 1, 1], 1)]
        );
        assert_eq!(
            expansion(&plethysm_wedge(&p(&[1, 1]), 2, 5, &b).unwrap()),
            vec![(vec![2, 1, 1], 1)]
        );
    }

    #[test]
    fn kostka_values() {
        let mut k = Kostka::new();
        assert_eq!(k.get(&p(&[2, 1]), &[1, 1, 1]), BigUint::from(2u8));
        assert_eq!(k.get(&p(&[3, 2]), &[2, 2, 1]), BigUint::from(2u8));
        assert_eq!(k.get(&p(&[2, 2]), &[3, 1]), BigUint::zero());
    }

    #[test]
    fn degree_obstruction() {
        let m = determinant_multiplicity(&p(&[2]), 2, &PlethysmBudget::default()).unwrap();
        assert_eq!(m.k, None);
        assert!(m.multiplicity.is_zero());
    }

    #[test]
    fn bialternant_matches_straightening() {
        let b = PlethysmBudget::new(20);
        for lambda in [p(&[5]), p(&[1, 1, 1, 1, 1]), p(&[3, 1, 1]), p(&[2, 2, 1])] {
            let full = plethysm_wedge(&lambda, 2, 5, &b).unwrap();
            let m = determinant_multiplicity(&lambda, 2, &b).unwrap();
            assert_eq!(m.k, Some(2));
            assert_eq!(
                full.coefficient(&Partition::rectangle(2, 5)),
                m.multiplicity,
                "{}",
                lambda
            );
        }
    }

    #[test]
    fn budget_is_enforced() {
        let b = PlethysmBudget::new(6);
        assert!(matches!(
            plethysm_wedge(&p(&[4]), 2, 5, &b),
            Err(Error::Budget(_))
        ));
    }

    #[test]
    fn permutation_signs() {
        let perms = permutations_with_sign(3);
        assert_eq!(perms.len(), 6);
        for (s, even) in perms {
            let inv = (0..3)
                .flat_map(|i| (i + 1..3).map(move |j| (i, j)))
                .filter(|&(i, j)| s[i] > s[j])
                .count();
            assert_eq!(inv % 2 == 0, even);
        }
    }

    #[test]
    fn dimension_gaps() {
        let g = dimension_gap(2).unwrap();
        assert_eq!(
            (g.flag_dim, g.group_dim, g.gap_holds),
            (BigUint::from(45u8), BigUint::from(25u8), true)
        );
        let g = dimension_gap(1).unwrap();
        assert_eq!(
            (g.flag_dim, g.group_dim, g.gap_holds),
            (BigUint::from(3u8), BigUint::from(9u8), false)
        );
        assert_eq!(dimension_gap(3).unwrap().flag_dim, BigUint::from(595u16));
    }
}
