//! Exact rational matrices, compound matrices and Plücker coordinates, and
//! the action of a Grassmannian isomorphism on `(1,1)`-sections.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::{Error, Result};
use crate::subsets::k_subsets;

/// Dense row-major matrix over `Q`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl ExactMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigRational>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {}×{} matrix",
                data.len(),
                rows,
                cols
            )));
        }
        Ok(ExactMatrix { rows, cols, data })
    }

    /// From nested rows; rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch(format!(
                "ragged rows in a {}-row matrix",
                r
            )));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_i64(rows: usize, cols: usize, v: &[i64]) -> Result<Self> {
        Self::new(
            rows,
            cols,
            v.iter()
                .map(|&x| BigRational::from_integer(BigInt::from(x)))
                .collect(),
        )
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigRational::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigRational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, o: &ExactMatrix) -> Result<Self> {
        if self.cols != o.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}×{} times {}×{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let mut out = Self::zero(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        out.data[i * o.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> Result<Vec<BigRational>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}×{} times vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows).map(|i| dot(self.row(i), v)).collect())
    }

    fn require_square(&self) -> Result<()> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "{}×{} is not square",
                self.rows, self.cols
            )));
        }
        Ok(())
    }

    /// Determinant by fraction-exact Gaussian elimination.
    pub fn det(&self) -> Result<BigRational> {
        self.require_square()?;
        let n = self.rows;
        let mut a = self.data.clone();
        let mut det = BigRational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a[r * n + c].is_zero()) else {
                return Ok(BigRational::zero());
            };
            if p != c {
                for j in 0..n {
                    a.swap(p * n + j, c * n + j);
                }
                det = -det;
            }
            let pivot = a[c * n + c].clone();
            det *= &pivot;
            for r in c + 1..n {
                if a[r * n + c].is_zero() {
                    continue;
                }
                let factor = &a[r * n + c] / &pivot;
                for j in c..n {
                    let sub = &factor * &a[c * n + j];
                    a[r * n + j] -= sub;
                }
            }
        }
        Ok(det)
    }

    /// Gauss–Jordan inverse.
    pub fn inverse(&self) -> Result<Self> {
        self.require_square()?;
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for c in 0..n {
            let p = (c..n)
                .find(|&r| !a.get(r, c).is_zero())
                .ok_or(Error::Singular)?;
            if p != c {
                for j in 0..n {
                    a.data.swap(p * n + j, c * n + j);
                    inv.data.swap(p * n + j, c * n + j);
                }
            }
            let pivot = a.get(c, c).clone();
            for j in 0..n {
                a.data[c * n + j] /= &pivot;
                inv.data[c * n + j] /= &pivot;
            }
            for r in 0..n {
                if r == c || a.get(r, c).is_zero() {
                    continue;
                }
                let factor = a.get(r, c).clone();
                for j in 0..n {
                    let (x, y) = (&factor * a.get(c, j), &factor * inv.get(c, j));
                    a.data[r * n + j] -= x;
                    inv.data[r * n + j] -= y;
                }
            }
        }
        Ok(inv)
    }

    /// Submatrix on the given rows and columns.
    pub fn minor_matrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut m = Self::zero(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m.set(a, b, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<_> = self.row(i).iter().map(|x| format!("{}", x)).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter()
        .zip(b)
        .fold(BigRational::zero(), |acc, (x, y)| acc + x * y)
}

/// Matrix of `k × k` minors, rows and columns indexed by `k`-subsets in
/// lexicographic order.
pub fn compound(m: &ExactMatrix, k: usize) -> Result<ExactMatrix> {
    m.require_square()?;
    let n = m.rows;
    if k == 0 || k > n {
        return Err(Error::OutOfRange(format!(
            "compound order {} of a {}×{} matrix",
            k, n, n
        )));
    }
    let subsets = k_subsets(n, k);
    let size = subsets.len();
    let mut out = ExactMatrix::zero(size, size);
    for (a, rows) in subsets.iter().enumerate() {
        for (b, cols) in subsets.iter().enumerate() {
            out.set(a, b, m.minor_matrix(rows, cols).det()?);
        }
    }
    Ok(out)
}

/// Span of `n` vectors in `Q^{2n+1}`, given by generators.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DecomposablePoint {
    generators: Vec<Vec<BigRational>>,
}

impl DecomposablePoint {
    /// Checks shapes and linear independence.
    pub fn new(generators: Vec<Vec<BigRational>>) -> Result<Self> {
        let n = generators.len();
        if n == 0 {
            return Err(Error::DimensionMismatch(alloc::string::String::from(
                "a point needs at least one generator",
            )));
        }
        if generators.iter().any(|g| g.len() != 2 * n + 1) {
            return Err(Error::DimensionMismatch(format!(
                "{} generators must have length {}",
                n,
                2 * n + 1
            )));
        }
        let p = DecomposablePoint { generators };
        if pluecker_coordinates(&p).iter().all(Zero::is_zero) {
            return Err(Error::DependentGenerators);
        }
        Ok(p)
    }

    /// `⟨e_1, …, e_n⟩`.
    pub fn standard(n: usize) -> Self {
        let gens = (0..n)
            .map(|i| {
                (0..2 * n + 1)
                    .map(|j| {
                        if i == j {
                            BigRational::one()
                        } else {
                            BigRational::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        DecomposablePoint { generators: gens }
    }

    pub fn n(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[Vec<BigRational>] {
        &self.generators
    }

    /// Applies `M` to every generator.
    pub fn transformed(&self, m: &ExactMatrix) -> Result<Self> {
        let gens = self
            .generators
            .iter()
            .map(|g| m.mul_vec(g))
            .collect::<Result<Vec<_>>>()?;
        Self::new(gens)
    }

    /// Replaces generator `i` by `c · g_i`.
    pub fn rescaled(&self, i: usize, c: &BigRational) -> Result<Self> {
        let mut gens = self.generators.clone();
        for x in gens[i].iter_mut() {
            *x *= c;
        }
        Self::new(gens)
    }

    fn generator_matrix(&self) -> ExactMatrix {
        ExactMatrix::from_rows(self.generators.clone()).expect("generators share a length")
    }
}

fn pluecker_coordinates(p: &DecomposablePoint) -> Vec<BigRational> {
    let g = p.generator_matrix();
    let n = g.rows();
    let all_rows: Vec<usize> = (0..n).collect();
    k_subsets(g.cols(), n)
        .iter()
        .map(|cols| g.minor_matrix(&all_rows, cols).det().expect("square"))
        .collect()
}

/// `n`-minors of the generator matrix, lexicographic column subsets.
pub fn pluecker_embed(p: &DecomposablePoint) -> Result<Vec<BigRational>> {
    let v = pluecker_coordinates(p);
    if v.iter().all(Zero::is_zero) {
        return Err(Error::DependentGenerators);
    }
    Ok(v)
}

/// `y^T S x` on Plücker vectors.
pub fn section_eval_vectors(
    s: &ExactMatrix,
    x: &[BigRational],
    y: &[BigRational],
) -> Result<BigRational> {
    if s.rows() != y.len() || s.cols() != x.len() {
        return Err(Error::DimensionMismatch(format!(
            "{}×{} section against vectors of length {} and {}",
            s.rows(),
            s.cols(),
            x.len(),
            y.len()
        )));
    }
    Ok(dot(y, &s.mul_vec(x)?))
}

/// `y^T S x` with `x, y` replaced by their Plücker images.
pub fn section_eval(
    s: &ExactMatrix,
    x: &DecomposablePoint,
    y: &DecomposablePoint,
) -> Result<BigRational> {
    section_eval_vectors(s, &pluecker_embed(x)?, &pluecker_embed(y)?)
}

/// `M_f^{-1} S^T M_f`.
pub fn transposition_action(s: &ExactMatrix, m_f: &ExactMatrix) -> Result<ExactMatrix> {
    if !s.is_square() || !m_f.is_square() || s.rows() != m_f.rows() {
        return Err(Error::DimensionMismatch(format!(
            "section {}×{} with transformation {}×{}",
            s.rows(),
            s.cols(),
            m_f.rows(),
            m_f.cols()
        )));
    }
    m_f.inverse()?.mul(&s.transpose())?.mul(m_f)
}

/// Evaluates `s ∘ ι_f` at `(x, y)` straight from the definition,
/// `s(M_f^{-T} y, M_f x) = (M_f x)^T S M_f^{-T} y`.
pub fn pulled_back_section_eval(
    s: &ExactMatrix,
    m_f: &ExactMatrix,
    x: &DecomposablePoint,
    y: &DecomposablePoint,
) -> Result<BigRational> {
    let (px, py) = (pluecker_embed(x)?, pluecker_embed(y)?);
    let fx = m_f.mul_vec(&px)?;
    let dual_y = m_f.inverse()?.transpose().mul_vec(&py)?;
    section_eval_vectors(s, &dual_y, &fx)
}

/// Whether `S M = M S^T`.
pub fn is_incidence(s: &ExactMatrix, m: &ExactMatrix) -> Result<bool> {
    Ok(s.mul(m)? == m.mul(&s.transpose())?)
}

/// Rational with numerator in `−9..=9` and denominator in `1..=5`.
pub fn random_rational(rng: &mut impl RngCore) -> BigRational {
    let num = (rng.next_u32() % 19) as i64 - 9;
    let den = (rng.next_u32() % 5) as i64 + 1;
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn random_matrix(rows: usize, cols: usize, rng: &mut impl RngCore) -> ExactMatrix {
    let data = (0..rows * cols).map(|_| random_rational(rng)).collect();
    ExactMatrix { rows, cols, data }
}

/// Random matrix, redrawn until the determinant is nonzero.
pub fn random_invertible(n: usize, rng: &mut impl RngCore) -> ExactMatrix {
    loop {
        let m = random_matrix(n, n, rng);
        if !m.det().expect("square").is_zero() {
            return m;
        }
    }
}

/// Random point with independent generators.
pub fn random_point(n: usize, rng: &mut impl RngCore) -> DecomposablePoint {
    loop {
        let gens = (0..n)
            .map(|_| (0..2 * n + 1).map(|_| random_rational(rng)).collect())
            .collect();
        if let Ok(p) = DecomposablePoint::new(gens) {
            return p;
        }
    }
}

/// Generator for trial `trial` of a run seeded with `seed`; trials are
/// independent streams so their order does not matter.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// One probe trial: a random section `S` and a random `M = ψ(A)`,
/// `A ∈ GL(2n+1)`. Returns whether `S ψ(A) = ψ(A) S^T`.
pub fn probe_trial(n: usize, seed: u64, trial: u64) -> Result<bool> {
    let mut rng = trial_rng(seed, trial);
    let big = 2 * n + 1;
    let size = k_subsets(big, n).len();
    let s = random_matrix(size, size, &mut rng);
    let a = random_invertible(big, &mut rng);
    is_incidence(&s, &compound(&a, n)?)
}

/// Result of [`symmetry_obstruction_probe`]. An empty incidence list is
/// evidence that no solution exists, not a proof.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ProbeReport {
    pub n: usize,
    pub trials: u64,
    pub seed: u64,
    /// Trials where `S ψ(A) = ψ(A) S^T` held.
    pub incidences: Vec<u64>,
}

/// Runs [`probe_trial`] for `0..trials` sequentially.
pub fn symmetry_obstruction_probe(n: usize, trials: u64, seed: u64) -> Result<ProbeReport> {
    let mut incidences = Vec::new();
    for t in 0..trials {
        if probe_trial(n, seed, t)? {
            incidences.push(t);
        }
    }
    Ok(ProbeReport {
        n,
        trials,
        seed,
        incidences,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(BigInt::from(a), BigInt::from(b))
    }

    #[test]
    fn det_and_inverse() {
        let m = ExactMatrix::from_i64(3, 3, &[2, 0, 1, 1, 3, 2, 1, 1, 2]).unwrap();
        assert_eq!(m.det().unwrap(), q(6, 1));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), ExactMatrix::identity(3));
        let s = ExactMatrix::from_i64(2, 2, &[1, 2, 2, 4]).unwrap();
        assert_eq!(s.det().unwrap(), q(0, 1));
        assert_eq!(s.inverse(), Err(Error::Singular));
    }

    #[test]
    fn compound_of_identity_and_2x2() {
        for k in 1..=4 {
            assert_eq!(
                compound(&ExactMatrix::identity(4), k).unwrap(),
                ExactMatrix::identity(k_subsets(4, k).len())
            );
        }
        let m = ExactMatrix::from_i64(3, 3, &[1, 2, 3, 4, 5, 6, 7, 8, 10]).unwrap();
        let c = compound(&m, 2).unwrap();
        // rows {0,1}, cols {0,1}: 1*5 - 2*4
        assert_eq!(c.get(0, 0), &q(-3, 1));
        assert_eq!(compound(&m, 3).unwrap().get(0, 0), &m.det().unwrap());
        assert!(compound(&m, 0).is_err());
    }

    #[test]
    fn standard_point() {
        for n in 1..4 {
            let v = pluecker_embed(&DecomposablePoint::standard(n)).unwrap();
            assert_eq!(v[0], q(1, 1));
            assert!(v[1..].iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn dependent_generators_rejected() {
        let g = vec![vec![q(1, 1); 5], vec![q(2, 1); 5]];
        assert_eq!(DecomposablePoint::new(g), Err(Error::DependentGenerators));
    }

    #[test]
    fn section_basics() {
        let x = DecomposablePoint::standard(2);
        assert_eq!(
            section_eval(&ExactMatrix::identity(10), &x, &x).unwrap(),
            q(1, 1)
        );
        assert!(section_eval(&ExactMatrix::zero(10, 10), &x, &x)
            .unwrap()
            .is_zero());
        assert!(section_eval(&ExactMatrix::identity(9), &x, &x).is_err());
    }

    #[test]
    fn transposition_with_identity() {
        let mut rng = trial_rng(5, 0);
        let s = random_matrix(10, 10, &mut rng);
        assert_eq!(
            transposition_action(&s, &ExactMatrix::identity(10)).unwrap(),
            s.transpose()
        );
    }

    #[test]
    fn probe_controls() {
        let mut rng = trial_rng(11, 0);
        let a = random_matrix(10, 10, &mut rng);
        let sym = a.mul(&a.transpose()).unwrap();
        assert!(is_incidence(&sym, &ExactMatrix::identity(10)).unwrap());
        let generic = random_matrix(10, 10, &mut rng);
        assert!(!generic.is_symmetric());
        assert!(!is_incidence(&generic, &ExactMatrix::identity(10)).unwrap());
    }
}
