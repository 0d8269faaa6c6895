//! Polynomials in the Lefschetz class `L` and the `L`-equivalence of the two
//! zero loci `Y_±` cut out on the roof.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Sparse polynomial in `L` with integer coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct LPoly {
    coeffs: BTreeMap<u32, BigInt>,
}

impl LPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, BigInt::one())
    }

    /// `c · L^d`.
    pub fn monomial(d: u32, c: BigInt) -> Self {
        let mut p = Self::zero();
        p.add_term(d, c);
        p
    }

    /// `L^d`.
    pub fn l_power(d: u32) -> Self {
        Self::monomial(d, BigInt::one())
    }

    /// `1 + L + … + L^m`, the class of `P^m`.
    pub fn geometric(m: u32) -> Self {
        let mut p = Self::zero();
        for d in 0..=m {
            p.add_term(d, BigInt::one());
        }
        p
    }

    pub fn from_coeffs(c: &[i64]) -> Self {
        let mut p = Self::zero();
        for (d, &x) in c.iter().enumerate() {
            p.add_term(d as u32, BigInt::from(x));
        }
        p
    }

    fn add_term(&mut self, d: u32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(d).or_default();
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&d);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficient(&self, d: u32) -> BigInt {
        self.coeffs.get(&d).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &BTreeMap<u32, BigInt> {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    /// Value at `L = 1`.
    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.values().sum()
    }

    /// Dense coefficient list from degree 0.
    pub fn dense(&self) -> Vec<BigInt> {
        let Some(top) = self.degree() else {
            return Vec::new();
        };
        (0..=top).map(|d| self.coefficient(d)).collect()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.values().all(|c| !c.is_negative())
    }

    pub fn is_palindromic(&self) -> bool {
        let Some(top) = self.degree() else {
            return true;
        };
        let low = *self.coeffs.keys().next().expect("nonzero");
        (0..=top).all(|d| d + low > top || self.coefficient(d + low) == self.coefficient(top - d))
    }
}

impl Add for &LPoly {
    type Output = LPoly;
    fn add(self, o: &LPoly) -> LPoly {
        let mut p = self.clone();
        for (d, c) in &o.coeffs {
            p.add_term(*d, c.clone());
        }
        p
    }
}

impl Neg for &LPoly {
    type Output = LPoly;
    fn neg(self) -> LPoly {
        LPoly {
            coeffs: self.coeffs.iter().map(|(d, c)| (*d, -c)).collect(),
        }
    }
}

impl Sub for &LPoly {
    type Output = LPoly;
    fn sub(self, o: &LPoly) -> LPoly {
        self + &(-o)
    }
}

impl Mul for &LPoly {
    type Output = LPoly;
    fn mul(self, o: &LPoly) -> LPoly {
        let mut p = LPoly::zero();
        for (da, ca) in &self.coeffs {
            for (db, cb) in &o.coeffs {
                p.add_term(da + db, ca * cb);
            }
        }
        p
    }
}

impl fmt::Display for LPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (d, c)) in self.coeffs.iter().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let show_coeff = !mag.is_one() || *d == 0;
            if show_coeff {
                write!(f, "{}", mag)?;
            }
            match d {
                0 => {}
                1 => f.write_str("L")?,
                _ => write!(f, "L^{}", d)?,
            }
        }
        Ok(())
    }
}

/// `L`-binomial `[N choose k]`, the class of `G(k, N)`.
pub fn gaussian_binomial(big_n: u32, k: u32) -> Result<LPoly> {
    if k > big_n {
        return Err(Error::OutOfRange(format!(
            "gaussian binomial needs k ≤ N, got N={} k={}",
            big_n, k
        )));
    }
    // row-by-row Pascal recursion [N,k] = [N−1,k−1] + L^k [N−1,k]
    let mut row: Vec<LPoly> = vec![LPoly::one()];
    for m in 1..=big_n {
        let mut next = Vec::with_capacity(m as usize + 1);
        for j in 0..=m {
            let left = if j >= 1 {
                row[(j - 1) as usize].clone()
            } else {
                LPoly::zero()
            };
            let right = if j < m {
                &LPoly::l_power(j) * &row[j as usize]
            } else {
                LPoly::zero()
            };
            next.push(&left + &right);
        }
        row = next;
    }
    Ok(row[k as usize].clone())
}

/// Which contraction of the roof a class is taken from.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Side {
    /// `X_- = G(n, 2n+1)`.
    Minus,
    /// `X_+ = G(n+1, 2n+1)`.
    Plus,
}

impl Side {
    pub fn as_str(self) -> &'static str {
        match self {
            Side::Minus => "-",
            Side::Plus => "+",
        }
    }
}

/// `[X_±]`.
pub fn class_base(n: usize, side: Side) -> LPoly {
    let big = 2 * n as u32 + 1;
    let k = match side {
        Side::Minus => n as u32,
        Side::Plus => n as u32 + 1,
    };
    gaussian_binomial(big, k).expect("k ≤ 2n+1")
}

/// `[F(n, n+1, 2n+1)]` as a `P^n`-bundle over `X_±`.
pub fn class_flag_from(n: usize, side: Side) -> LPoly {
    &class_base(n, side) * &LPoly::geometric(n as u32)
}

/// `[F(n, n+1, 2n+1)] = [n choose 2n+1] (1 + L + … + L^n)`.
pub fn class_flag(n: usize) -> LPoly {
    class_flag_from(n, Side::Minus)
}

/// Formal unknowns of the certificate.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Symbol {
    /// The hyperplane section `M` of the roof.
    M,
    YMinus,
    YPlus,
}

impl Symbol {
    pub fn as_str(self) -> &'static str {
        match self {
            Symbol::M => "M",
            Symbol::YMinus => "Y-",
            Symbol::YPlus => "Y+",
        }
    }
}

/// `Σ c_s [s] + constant = 0` with `c_s, constant ∈ Z[L]`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct FormalRelation {
    pub terms: BTreeMap<Symbol, LPoly>,
    pub constant: LPoly,
}

impl FormalRelation {
    fn set(&mut self, s: Symbol, c: LPoly) {
        if c.is_zero() {
            self.terms.remove(&s);
        } else {
            self.terms.insert(s, c);
        }
    }

    pub fn coefficient(&self, s: Symbol) -> LPoly {
        self.terms.get(&s).cloned().unwrap_or_default()
    }

    pub fn minus(&self, o: &FormalRelation) -> FormalRelation {
        let mut r = self.clone();
        for (s, c) in &o.terms {
            let now = &r.coefficient(*s) - c;
            r.set(*s, now);
        }
        r.constant = &r.constant - &o.constant;
        r
    }

    pub fn negated(&self) -> FormalRelation {
        FormalRelation {
            terms: self.terms.iter().map(|(s, c)| (*s, -c)).collect(),
            constant: -&self.constant,
        }
    }
}

impl fmt::Display for FormalRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (s, c) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            write!(f, "({})[{}]", c, s.as_str())?;
            first = false;
        }
        if !self.constant.is_zero() || first {
            if !first {
                f.write_str(" + ")?;
            }
            write!(f, "{}", self.constant)?;
        }
        f.write_str(" = 0")
    }
}

/// `[M] = [X_±](1 + … + L^{n−1}) + [Y_±] L^n`, as a relation.
pub fn hyperplane_relation(n: usize, side: Side) -> FormalRelation {
    let mut r = FormalRelation::default();
    r.set(Symbol::M, LPoly::one());
    let y = match side {
        Side::Minus => Symbol::YMinus,
        Side::Plus => Symbol::YPlus,
    };
    r.set(y, -&LPoly::l_power(n as u32));
    let tail = if n >= 1 {
        LPoly::geometric(n as u32 - 1)
    } else {
        LPoly::zero()
    };
    r.constant = -&(&class_base(n, side) * &tail);
    r
}

/// The elimination behind `([Y_-] − [Y_+]) L^n = 0`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LEquivalenceCertificate {
    pub n: usize,
    pub class_minus: LPoly,
    pub class_plus: LPoly,
    /// `[X_-] − [X_+]`; zero.
    pub base_difference: LPoly,
    pub flag_minus: LPoly,
    pub flag_plus: LPoly,
    pub hyperplane_minus: FormalRelation,
    pub hyperplane_plus: FormalRelation,
    pub conclusion: FormalRelation,
    pub verified: bool,
}

/// Subtracts the two hyperplane relations, eliminating `[M]`, and checks that
/// what is left is exactly `L^n [Y_-] − L^n [Y_+] = 0`.
pub fn l_equivalence_certificate(n: usize) -> LEquivalenceCertificate {
    let class_minus = class_base(n, Side::Minus);
    let class_plus = class_base(n, Side::Plus);
    let base_difference = &class_minus - &class_plus;
    let flag_minus = class_flag_from(n, Side::Minus);
    let flag_plus = class_flag_from(n, Side::Plus);
    let hyperplane_minus = hyperplane_relation(n, Side::Minus);
    let hyperplane_plus = hyperplane_relation(n, Side::Plus);
    let conclusion = hyperplane_minus.minus(&hyperplane_plus).negated();
    let ln = LPoly::l_power(n as u32);
    let verified = base_difference.is_zero()
        && flag_minus == flag_plus
        && conclusion.constant.is_zero()
        && conclusion.coefficient(Symbol::M).is_zero()
        && conclusion.coefficient(Symbol::YMinus) == ln
        && conclusion.coefficient(Symbol::YPlus) == -&ln;
    LEquivalenceCertificate {
        n,
        class_minus,
        class_plus,
        base_difference,
        flag_minus,
        flag_plus,
        hyperplane_minus,
        hyperplane_plus,
        conclusion,
        verified,
    }
}

/// Human-readable conclusion line.
pub fn conclusion_text(c: &LEquivalenceCertificate) -> String {
    format!("([Y-] - [Y+])L^{} = 0", c.n)
}
