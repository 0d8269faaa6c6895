//! Sums of irreducible homogeneous bundles on `G(n, 2n+1)`, their tensor
//! products and cohomology, and the vanishing sweeps built on top.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::bwb::{cohomology, BundleFactor, CohomologyResult};
use crate::error::{Error, Result};
use crate::partitions::{littlewood_richardson, Partition};
use crate::report::{CaseRecord, CaseStatus};

/// Formal direct sum `⊕ m_i · F_i` of canonical factors.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BundleExpr {
    n: usize,
    summands: BTreeMap<BundleFactor, BigUint>,
}

impl BundleExpr {
    /// The zero bundle.
    pub fn zero(n: usize) -> Self {
        BundleExpr {
            n,
            summands: BTreeMap::new(),
        }
    }

    pub fn from_factor(f: BundleFactor) -> Self {
        let mut summands = BTreeMap::new();
        let n = f.n();
        summands.insert(f, BigUint::one());
        BundleExpr { n, summands }
    }

    /// `O(t)`.
    pub fn o(n: usize, twist: i64) -> Result<Self> {
        Ok(Self::from_factor(BundleFactor::line(n, twist)?))
    }

    /// The tautological quotient `Q`.
    pub fn q(n: usize) -> Result<Self> {
        wedge_q(1, 0, n)
    }

    /// `U^∨`.
    pub fn u_dual(n: usize) -> Result<Self> {
        Ok(Self::from_factor(BundleFactor::new(
            n,
            Partition::column(1),
            Partition::empty(),
            0,
        )?))
    }

    /// `Q^∨ = ∧^n Q(−1)`.
    pub fn q_dual(n: usize) -> Result<Self> {
        wedge_q(n, -1, n)
    }

    /// `Sym^k Q`, taken as the `(k)`-isotypic part of `Q^{⊗k}`.
    pub fn sym_q(k: usize, n: usize) -> Result<Self> {
        let q = Self::q(n)?;
        let mut acc = Self::o(n, 0)?;
        for _ in 0..k {
            acc = tensor(&acc, &q)?;
        }
        let target = BundleFactor::schur_q(n, Partition::new(alloc::vec![k as u32])?, 0)?;
        let mut out = Self::zero(n);
        if acc.summands.contains_key(&target) {
            out.add_factor(target, BigUint::one());
        }
        Ok(out)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn summands(&self) -> &BTreeMap<BundleFactor, BigUint> {
        &self.summands
    }

    pub fn is_zero(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn multiplicity(&self, f: &BundleFactor) -> BigUint {
        self.summands.get(f).cloned().unwrap_or_default()
    }

    fn add_factor(&mut self, f: BundleFactor, mult: BigUint) {
        if mult.is_zero() {
            return;
        }
        *self.summands.entry(f).or_default() += mult;
    }

    /// Direct sum.
    pub fn plus(&self, other: &BundleExpr) -> Result<Self> {
        same_n(self.n, other.n)?;
        let mut out = self.clone();
        for (f, m) in &other.summands {
            out.add_factor(f.clone(), m.clone());
        }
        Ok(out)
    }

    /// Tensor with `O(t)`.
    pub fn twisted(&self, t: i64) -> Self {
        let mut out = Self::zero(self.n);
        for (f, m) in &self.summands {
            let g = BundleFactor::new(
                self.n,
                f.u_part().clone(),
                f.q_part().clone(),
                f.twist() + t,
            )
            .expect("twisting keeps a factor canonical");
            out.add_factor(g, m.clone());
        }
        out
    }

    /// `Σ mult · rank`.
    pub fn rank(&self) -> BigUint {
        self.summands.iter().map(|(f, m)| f.rank() * m).sum()
    }
}

impl fmt::Display for BundleExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.summands.is_empty() {
            return f.write_str("0");
        }
        for (i, (b, m)) in self.summands.iter().enumerate() {
            if i > 0 {
                f.write_str(" ⊕ ")?;
            }
            if !m.is_one() {
                write!(f, "{}·", m)?;
            }
            write!(f, "{}", b)?;
        }
        Ok(())
    }
}

fn same_n(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::MixedGrassmannians(a, b));
    }
    Ok(())
}

/// `∧^k Q(t)`; `k = n + 1` collapses to `O(t + 1)`.
pub fn wedge_q(k: usize, twist: i64, n: usize) -> Result<BundleExpr> {
    if k > n + 1 {
        return Err(Error::OutOfRange(format!(
            "∧^{}Q on G({}, {}) needs k ≤ {}",
            k,
            n,
            2 * n + 1,
            n + 1
        )));
    }
    Ok(BundleExpr::from_factor(BundleFactor::schur_q(
        n,
        Partition::column(k),
        twist,
    )?))
}

/// Tensor product of two factors, decomposed by LR on each side.
pub fn tensor_factors(a: &BundleFactor, b: &BundleFactor) -> Result<BundleExpr> {
    same_n(a.n(), b.n())?;
    let n = a.n();
    let u_side = littlewood_richardson(a.u_part(), b.u_part(), n);
    let q_side = littlewood_richardson(a.q_part(), b.q_part(), n + 1);
    let twist = a.twist() + b.twist();
    let mut out = BundleExpr::zero(n);
    for (lu, cu) in &u_side.terms {
        for (lq, cq) in &q_side.terms {
            let f = BundleFactor::new(n, lu.clone(), lq.clone(), twist)?;
            out.add_factor(f, BigUint::from(*cu) * BigUint::from(*cq));
        }
    }
    Ok(out)
}

/// Tensor product, distributed over summands.
pub fn tensor(a: &BundleExpr, b: &BundleExpr) -> Result<BundleExpr> {
    same_n(a.n, b.n)?;
    let mut out = BundleExpr::zero(a.n);
    for (fa, ma) in &a.summands {
        for (fb, mb) in &b.summands {
            let prod = tensor_factors(fa, fb)?;
            let m = ma * mb;
            for (f, c) in prod.summands {
                out.add_factor(f, c * &m);
            }
        }
    }
    Ok(out)
}

/// Dimensions `h^p` of a bundle, nonzero entries only.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct CohomologyTable {
    entries: BTreeMap<usize, BigUint>,
}

impl CohomologyTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, degree: usize, dim: BigUint) {
        if dim.is_zero() {
            return;
        }
        *self.entries.entry(degree).or_default() += dim;
    }

    pub fn add_result(&mut self, r: &CohomologyResult, mult: &BigUint) {
        if let CohomologyResult::Nonzero {
            degree, dimension, ..
        } = r
        {
            self.add(*degree, dimension * mult);
        }
    }

    pub fn get(&self, degree: usize) -> BigUint {
        self.entries.get(&degree).cloned().unwrap_or_default()
    }

    pub fn entries(&self) -> &BTreeMap<usize, BigUint> {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `Σ (−1)^p h^p`.
    pub fn euler_characteristic(&self) -> BigInt {
        let mut chi = BigInt::zero();
        for (p, d) in &self.entries {
            let d = BigInt::from(d.clone());
            if p % 2 == 0 {
                chi += d;
            } else {
                chi -= d;
            }
        }
        chi
    }

    /// Entries in degrees `< bound`.
    pub fn below(&self, bound: usize) -> CohomologyTable {
        CohomologyTable {
            entries: self
                .entries
                .range(..bound)
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
        }
    }
}

impl fmt::Display for CohomologyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (p, d)) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}: {}", p, d)?;
        }
        f.write_str("}")
    }
}

/// Summed cohomology over all summands.
pub fn cohomology_table(e: &BundleExpr) -> CohomologyTable {
    let mut t = CohomologyTable::new();
    for (f, m) in &e.summands {
        t.add_result(&cohomology(f), m);
    }
    t
}

/// `χ` computed summand by summand.
pub fn euler_characteristic(e: &BundleExpr) -> BigInt {
    e.summands
        .iter()
        .map(|(f, m)| match cohomology(f) {
            CohomologyResult::Zero => BigInt::zero(),
            CohomologyResult::Nonzero {
                degree, dimension, ..
            } => {
                let v = BigInt::from(dimension * m);
                if degree % 2 == 0 {
                    v
                } else {
                    -v
                }
            }
        })
        .sum()
}

pub const LEMMA_MAIN_VANISHING: &str = "main_vanishing";
pub const LEMMA_Q_STABLE: &str = "q_is_stable_vanishings";
pub const LEMMA_HOM_SURJECTIVE: &str = "vanishings_hom_is_surjective";

/// `S^ν Q(−i)` has no cohomology for `0 ≤ ν_j ≤ n − 1` over `n + 1` rows and
/// `0 < i < 2n + 1`. Shapes with `ν_{n+1} > 0` are reported as deviations when
/// they do have cohomology: such a shape carries a full column and is really
/// `S^{ν − ν_{n+1}} Q(ν_{n+1} − i)`, outside the intended family.
pub fn sweep_main_vanishing(n: usize) -> Result<Vec<CaseRecord>> {
    let mut out = Vec::new();
    let max_part = n.saturating_sub(1) as u32;
    for nu in Partition::all_in_box(n + 1, max_part) {
        for i in 1..(2 * n as i64 + 1) {
            let b = BundleFactor::schur_q(n, nu.clone(), -i)?;
            let r = cohomology(&b);
            let case = format!("S{}Q({})", nu, -i);
            let (status, note) = match &r {
                CohomologyResult::Zero => (CaseStatus::Pass, String::new()),
                CohomologyResult::Nonzero {
                    degree, dimension, ..
                } => {
                    let note = format!("H^{} has dimension {} ({})", degree, dimension, b);
                    if nu.get(n) > 0 {
                        (
                            CaseStatus::Deviation,
                            format!("{}; full column absorbed", note),
                        )
                    } else {
                        (CaseStatus::Fail, note)
                    }
                }
            };
            out.push(CaseRecord::new(LEMMA_MAIN_VANISHING, n, case, status, note));
        }
    }
    Ok(out)
}

fn low_degree_case(
    lemma: &str,
    n: usize,
    case: String,
    table: &CohomologyTable,
    excused: Option<&str>,
) -> CaseRecord {
    let low = table.below(n + 1);
    if low.is_empty() {
        return CaseRecord::new(lemma, n, case, CaseStatus::Pass, String::new());
    }
    let note = format!("degrees < {} not zero: {}", n + 1, low);
    match excused {
        Some(why) => CaseRecord::new(
            lemma,
            n,
            case,
            CaseStatus::Deviation,
            format!("{}; {}", note, why),
        ),
        None => CaseRecord::new(lemma, n, case, CaseStatus::Fail, note),
    }
}

/// `∧^k Q ⊗ ∧^l Q(−1−2l)` has no cohomology below degree `n + 1`, for
/// `0 ≤ l ≤ n + 1` and `0 ≤ k ≤ n + 1`. Stability only needs `1 ≤ k ≤ n`, so
/// nonvanishing at `k = n + 1` (where `∧^{n+1}Q = O(1)`) is a deviation.
pub fn sweep_q_stable(n: usize) -> Result<Vec<CaseRecord>> {
    let mut out = Vec::new();
    for k in 0..=n + 1 {
        for l in 0..=n + 1 {
            let e = tensor(&wedge_q(k, 0, n)?, &wedge_q(l, -1 - 2 * l as i64, n)?)?;
            let t = cohomology_table(&e);
            let case = format!("k={} l={}", k, l);
            let excused = if k == n + 1 {
                Some("∧^kQ is a line bundle for k = n+1")
            } else {
                None
            };
            out.push(low_degree_case(LEMMA_Q_STABLE, n, case, &t, excused));
        }
    }
    Ok(out)
}

/// `Q^∨(2) ⊗ ∧^k Q(−2k)` has no cohomology below degree `n + 1` for
/// `0 ≤ k ≤ n + 1`. For `k = 0, 1` the bundle contains `Q^∨(2)` resp. `O` and
/// has sections; the surjectivity argument only reads `H^{k−1}` off the
/// `k`-th term, so those two are deviations. At `n = 2` the statement is
/// outside its range (`n > 2`) and any failure is a deviation too.
pub fn sweep_hom_surjective(n: usize) -> Result<Vec<CaseRecord>> {
    let mut out = Vec::new();
    let n_dual_2 = wedge_q(n, 1, n)?;
    for k in 0..=n + 1 {
        let e = tensor(&n_dual_2, &wedge_q(k, -2 * k as i64, n)?)?;
        let t = cohomology_table(&e);
        let excused = if k <= 1 {
            Some("contains a bundle with sections for k ≤ 1")
        } else if n <= 2 {
            Some("the statement assumes n > 2")
        } else {
            None
        };
        out.push(low_degree_case(
            LEMMA_HOM_SURJECTIVE,
            n,
            format!("k={}", k),
            &t,
            excused,
        ));
    }
    Ok(out)
}

/// Every appendix sweep at one `n`, in a fixed order.
pub fn verify_appendix(n: usize) -> Result<Vec<CaseRecord>> {
    let mut out = sweep_main_vanishing(n)?;
    out.extend(sweep_q_stable(n)?);
    out.extend(sweep_hom_surjective(n)?);
    out.extend(crate::koszul::sweep_spaces_of_sections(n)?);
    out.extend(crate::koszul::lemma_a5_sweep(n)?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn hook(n: usize, first: u32, rest: u32) -> Partition {
        let mut v = alloc::vec![first];
        v.extend(core::iter::repeat_n(rest, n - 1));
        p(&v)
    }

    #[test]
    fn wedge_examples() {
        let n = 3;
        assert_eq!(wedge_q(0, 4, n).unwrap(), BundleExpr::o(n, 4).unwrap());
        assert_eq!(
            wedge_q(n + 1, -2 * n as i64 - 2, n).unwrap(),
            BundleExpr::o(n, -2 * n as i64 - 1).unwrap()
        );
        assert_eq!(wedge_q(1, 0, n).unwrap(), BundleExpr::q(n).unwrap());
        assert!(wedge_q(n + 2, 0, n).is_err());
    }

    #[test]
    fn lr_split_of_wedges() {
        for n in 2..6usize {
            for k in 1..=n {
                let e = tensor(
                    &wedge_q(n, 0, n).unwrap(),
                    &wedge_q(k, 1 - 2 * k as i64, n).unwrap(),
                )
                .unwrap();
                let mut shape = alloc::vec![2u32; k];
                shape.extend(core::iter::repeat_n(1, n - k));
                let a = BundleFactor::schur_q(n, p(&shape), 1 - 2 * k as i64).unwrap();
                let b =
                    BundleFactor::schur_q(n, Partition::column(k - 1), 2 - 2 * k as i64).unwrap();
                assert_eq!(e.summands().len(), 2, "n={} k={}", n, k);
                assert!(e.multiplicity(&a).is_one());
                assert!(e.multiplicity(&b).is_one());
            }
        }
    }

    #[test]
    fn q_times_wedge_n() {
        for n in 2..6usize {
            let e = tensor(&BundleExpr::q(n).unwrap(), &wedge_q(n, -1, n).unwrap()).unwrap();
            let a = BundleFactor::schur_q(n, hook(n, 2, 1), -1).unwrap();
            assert!(e.multiplicity(&a).is_one());
            assert!(e.multiplicity(&BundleFactor::line(n, 0).unwrap()).is_one());
            assert_eq!(e.summands().len(), 2);
        }
    }

    #[test]
    fn unit_and_rank() {
        let n = 3;
        let e = tensor(&BundleExpr::u_dual(n).unwrap(), &BundleExpr::q(n).unwrap()).unwrap();
        assert_eq!(tensor(&e, &BundleExpr::o(n, 0).unwrap()).unwrap(), e);
        assert_eq!(e.rank(), BigUint::from(12u8));
        assert_eq!(cohomology_table(&e).get(0), BigUint::from(48u8));
    }

    #[test]
    fn o1_sections() {
        let t = cohomology_table(&BundleExpr::o(2, 1).unwrap());
        assert_eq!(t.entries().len(), 1);
        assert_eq!(t.get(0), BigUint::from(10u8));
    }

    #[test]
    fn sym_extraction() {
        let s = BundleExpr::sym_q(2, 2).unwrap();
        assert_eq!(s.rank(), BigUint::from(6u8));
        assert!(BundleExpr::sym_q(0, 2).unwrap() == BundleExpr::o(2, 0).unwrap());
    }

    #[test]
    fn mixed_n_rejected() {
        let a = BundleExpr::o(2, 0).unwrap();
        let b = BundleExpr::o(3, 0).unwrap();
        assert!(tensor(&a, &b).is_err());
        assert!(a.plus(&b).is_err());
    }

    #[test]
    fn sweeps_for_n3() {
        let mv = sweep_main_vanishing(3).unwrap();
        assert!(mv.iter().all(|c| c.status != CaseStatus::Fail));
        let qs = sweep_q_stable(3).unwrap();
        assert!(qs.iter().all(|c| c.status != CaseStatus::Fail));
        let hs = sweep_hom_surjective(3).unwrap();
        let dev: Vec<_> = hs
            .iter()
            .filter(|c| c.status == CaseStatus::Deviation)
            .map(|c| c.case.as_str())
            .collect();
        assert_eq!(dev, ["k=0", "k=1"]);
    }
}
