//! Orbit sizes as products r^e · ∏ (r^k - 1)^{m_k}, evaluated exactly at a given r.
//! Keeping the factored form gives the degree in r (the orbit dimension) for free.

use crate::error::{Error, Result};
use num_bigint::BigUint;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::ops::{Div, Mul};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SizeFormula {
    r_exp: i64,
    cyclo: BTreeMap<u32, i64>,
}

impl SizeFormula {
    pub fn one() -> Self {
        SizeFormula::default()
    }

    pub fn r_pow(e: i64) -> Self {
        SizeFormula {
            r_exp: e,
            cyclo: BTreeMap::new(),
        }
    }

    /// r^k - 1
    pub fn rk_minus_1(k: u32) -> Self {
        assert!(k >= 1);
        let mut cyclo = BTreeMap::new();
        cyclo.insert(k, 1);
        SizeFormula { r_exp: 0, cyclo }
    }

    /// r^k + 1 = (r^{2k} - 1)/(r^k - 1)
    pub fn rk_plus_1(k: u32) -> Self {
        SizeFormula::rk_minus_1(2 * k) / SizeFormula::rk_minus_1(k)
    }

    /// [r]_m = ∏_{k=1}^m (r^k - 1)/(r - 1)
    pub fn q_factorial(m: usize) -> Self {
        let mut s = SizeFormula::one();
        for k in 1..=m as u32 {
            s = s * SizeFormula::rk_minus_1(k) / SizeFormula::rk_minus_1(1);
        }
        s
    }

    pub fn pow(&self, e: i64) -> Self {
        SizeFormula {
            r_exp: self.r_exp * e,
            cyclo: self
                .cyclo
                .iter()
                .map(|(&k, &m)| (k, m * e))
                .filter(|&(_, m)| m != 0)
                .collect(),
        }
    }

    pub fn r_exponent(&self) -> i64 {
        self.r_exp
    }

    /// Degree in r.
    pub fn degree(&self) -> i64 {
        self.r_exp + self.cyclo.iter().map(|(&k, &m)| k as i64 * m).sum::<i64>()
    }

    /// Exact value at r; panics if the quotient is not integral.
    pub fn eval(&self, r: u64) -> BigUint {
        assert!(r >= 2);
        let rb = BigUint::from(r);
        let mut num = BigUint::one();
        let mut den = BigUint::one();
        if self.r_exp >= 0 {
            num *= rb.pow(self.r_exp as u32);
        } else {
            den *= rb.pow((-self.r_exp) as u32);
        }
        for (&k, &m) in &self.cyclo {
            let f = rb.pow(k) - 1u32;
            if m >= 0 {
                num *= f.pow(m as u32);
            } else {
                den *= f.pow((-m) as u32);
            }
        }
        assert!(
            (&num % &den).is_zero(),
            "size formula not integral at r = {r}"
        );
        num / den
    }
}

impl Mul for SizeFormula {
    type Output = SizeFormula;
    fn mul(mut self, rhs: SizeFormula) -> SizeFormula {
        self.r_exp += rhs.r_exp;
        for (k, m) in rhs.cyclo {
            *self.cyclo.entry(k).or_insert(0) += m;
        }
        self.cyclo.retain(|_, m| *m != 0);
        self
    }
}

impl Div for SizeFormula {
    type Output = SizeFormula;
    fn div(self, rhs: SizeFormula) -> SizeFormula {
        self * rhs.pow(-1)
    }
}

pub fn q_factorial(m: usize, r: u64) -> BigUint {
    SizeFormula::q_factorial(m).eval(r)
}

/// ψ^ε_{c0}: the index of Sp, a vector stabilizer in Sp, or 1×Sp in GL_{c0}.
pub fn psi_formula(c0: usize, eps: u8) -> Result<SizeFormula> {
    match (c0 % 2, eps) {
        (_, e) if e > 1 => Err(Error::Validation(format!("eps = {e}"))),
        (0, 1) if c0 == 0 => Err(Error::Validation("eps = 1 needs c0 > 0".into())),
        (1, 0) => Err(Error::Validation("odd c0 forces eps = 1".into())),
        _ => {
            let k = c0.div_ceil(2) as i64;
            let mut s = SizeFormula::r_pow(k * (k - 1));
            for j in 1..=k as u32 {
                s = s * SizeFormula::rk_minus_1(2 * j - 1);
            }
            if c0 % 2 == 0 && eps == 1 {
                s = s * SizeFormula::rk_minus_1(c0 as u32);
            }
            Ok(s)
        }
    }
}

pub fn psi(c0: usize, eps: u8, r: u64) -> Result<BigUint> {
    Ok(psi_formula(c0, eps)?.eval(r))
}

/// |M| = ∏_{i=1}^n (r^i + 1), the number of maximal isotropic subspaces of F_r^{2n+1}.
pub fn m_formula(n: usize) -> SizeFormula {
    (1..=n as u32).fold(SizeFormula::one(), |s, i| s * SizeFormula::rk_plus_1(i))
}

/// |GL_m(F_r)|
pub fn gl_order(m: usize) -> SizeFormula {
    let mut s = SizeFormula::r_pow((m * (m.saturating_sub(1)) / 2) as i64);
    for k in 1..=m as u32 {
        s = s * SizeFormula::rk_minus_1(k);
    }
    s
}

/// |Sp_{2n}(F_r)|
pub fn sp_order(n: usize) -> SizeFormula {
    let mut s = SizeFormula::r_pow((n * n) as i64);
    for k in 1..=n as u32 {
        s = s * SizeFormula::rk_minus_1(2 * k);
    }
    s
}

/// |SO_{2n+1}(F_r)|
pub fn so_odd_order(n: usize) -> SizeFormula {
    sp_order(n)
}

/// |SO^+_{2n}(F_r)|
pub fn so_even_order(n: usize) -> SizeFormula {
    let mut s = SizeFormula::r_pow((n * (n - 1)) as i64) * SizeFormula::rk_minus_1(n as u32);
    for k in 1..n as u32 {
        s = s * SizeFormula::rk_minus_1(2 * k);
    }
    s
}

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

pub fn factorial(n: u64) -> u128 {
    (1..=n as u128).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_factorials() {
        assert_eq!(q_factorial(0, 3), BigUint::from(1u32));
        assert_eq!(q_factorial(1, 3), BigUint::from(1u32));
        assert_eq!(q_factorial(2, 3), BigUint::from(4u32));
        assert_eq!(q_factorial(4, 2), BigUint::from(315u32));
    }

    #[test]
    fn psi_values_at_three() {
        assert_eq!(psi(1, 1, 3).unwrap(), BigUint::from(2u32));
        assert_eq!(psi(2, 0, 3).unwrap(), BigUint::from(2u32));
        assert_eq!(psi(2, 1, 3).unwrap(), BigUint::from(16u32));
        assert_eq!(psi(0, 0, 3).unwrap(), BigUint::from(1u32));
        assert!(psi(0, 1, 3).is_err());
        assert!(psi(3, 0, 3).is_err());
    }

    #[test]
    fn psi_is_an_index_in_gl() {
        // GL_2 / Sp_2, GL_2 / (vector stabilizer in Sp_2), GL_1 / 1, GL_3 / (1 x Sp_2)
        for r in [3u64, 5] {
            let gl2 = gl_order(2).eval(r);
            assert_eq!(psi(2, 0, r).unwrap(), &gl2 / sp_order(1).eval(r));
            assert_eq!(psi(2, 1, r).unwrap(), &gl2 / BigUint::from(r));
            assert_eq!(psi(1, 1, r).unwrap(), gl_order(1).eval(r));
            assert_eq!(
                psi(3, 1, r).unwrap(),
                gl_order(3).eval(r) / sp_order(1).eval(r)
            );
        }
    }

    #[test]
    fn degree_counts_leading_power() {
        let s = SizeFormula::q_factorial(3) * SizeFormula::r_pow(2);
        assert_eq!(s.degree(), 5);
        assert_eq!(m_formula(2).eval(3), BigUint::from(40u32));
    }

    #[test]
    fn group_orders() {
        assert_eq!(sp_order(2).eval(2), BigUint::from(720u32));
        assert_eq!(so_odd_order(1).eval(3), BigUint::from(24u32));
        assert_eq!(so_even_order(2).eval(3), BigUint::from(576u32));
    }
}
