//! Betti numbers of Grassmannians and the parity argument for the middle
//! cohomology of `Y_±`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::Result;
use crate::motivic::gaussian_binomial;

/// Betti numbers `b_i`, zero entries omitted.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct PoincarePoly {
    coeffs: BTreeMap<u32, BigUint>,
}

impl PoincarePoly {
    pub fn betti(&self, i: u32) -> BigUint {
        self.coeffs.get(&i).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &BTreeMap<u32, BigUint> {
        &self.coeffs
    }

    /// `b_0, …, b_top` with zeros filled in.
    pub fn dense(&self) -> Vec<BigUint> {
        let top = self.coeffs.keys().next_back().copied().unwrap_or(0);
        (0..=top).map(|i| self.betti(i)).collect()
    }

    pub fn total(&self) -> BigUint {
        self.coeffs.values().sum()
    }
}

/// `b_{2j}(G(k, N))` is the coefficient of `L^j` in `[N choose k]`.
pub fn poincare_grassmannian(k: u32, big_n: u32) -> Result<PoincarePoly> {
    let g = gaussian_binomial(big_n, k)?;
    let coeffs = g
        .coeffs()
        .iter()
        .map(|(d, c)| (2 * d, c.to_biguint().expect("cell counts are non-negative")))
        .collect();
    Ok(PoincarePoly { coeffs })
}

/// One summand `H^{deg}(G(n, 2n+1))` of the middle cohomology of `M`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Summand {
    pub degree: u32,
    pub rank: BigUint,
}

/// The decomposition `H^{d+r−2}(M) = H^{d−r}(Y) ⊕ ⊕_j H^{d−r+2j}(G/P)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MiddleDecomposition {
    pub n: usize,
    pub d: u32,
    pub r: u32,
    pub dim_y: u32,
    pub dim_m: u32,
    pub summands: Vec<Summand>,
    pub all_vanish: bool,
    /// Present iff every Grassmannian summand vanishes.
    pub conclusion: Option<String>,
    /// Remarks on how the statement being checked is worded.
    pub flags: Vec<String>,
}

/// Lists the Grassmannian summands in degrees `d−r+2, …, d+r−2` with
/// `d = n(n+1)`, `r = n+1`, and concludes when all of them are zero.
pub fn middle_decomposition(n: usize) -> Result<MiddleDecomposition> {
    let nn = n as u32;
    let d = nn * (nn + 1);
    let r = nn + 1;
    let p = poincare_grassmannian(nn, 2 * nn + 1)?;
    let summands: Vec<Summand> = (1..r)
        .map(|j| d - r + 2 * j)
        .map(|degree| Summand {
            degree,
            rank: p.betti(degree),
        })
        .collect();
    let all_vanish = summands.iter().all(|s| s.rank.is_zero());
    let dim_y = d - r;
    let conclusion = all_vanish.then(|| {
        alloc::format!(
            "rank H^{}(Y-) = rank H^{}(M) = rank H^{}(Y+)",
            dim_y,
            d + r - 2,
            dim_y
        )
    });
    let flags = alloc::vec![String::from(
        "the isometry statement is worded for n odd; the parity argument needs n even"
    )];
    Ok(MiddleDecomposition {
        n,
        d,
        r,
        dim_y,
        dim_m: d + r - 2,
        summands,
        all_vanish,
        conclusion,
        flags,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dense(p: &PoincarePoly) -> Vec<u64> {
        p.dense().iter().map(|x| x.try_into().unwrap()).collect()
    }

    #[test]
    fn grassmannian_betti() {
        assert_eq!(
            dense(&poincare_grassmannian(2, 5).unwrap()),
            [1, 0, 1, 0, 2, 0, 2, 0, 2, 0, 1, 0, 1]
        );
        assert_eq!(dense(&poincare_grassmannian(1, 2).unwrap()), [1, 0, 1]);
        assert_eq!(
            poincare_grassmannian(3, 7).unwrap().total(),
            BigUint::from(35u8)
        );
    }

    #[test]
    fn middle_examples() {
        let m = middle_decomposition(2).unwrap();
        assert_eq!(
            m.summands.iter().map(|s| s.degree).collect::<Vec<_>>(),
            [5, 7]
        );
        assert!(m.conclusion.is_some());
        let m = middle_decomposition(3).unwrap();
        assert_eq!(
            m.summands.iter().map(|s| s.degree).collect::<Vec<_>>(),
            [10, 12, 14]
        );
        assert!(m.conclusion.is_none());
        assert!(middle_decomposition(4).unwrap().conclusion.is_some());
    }
}
