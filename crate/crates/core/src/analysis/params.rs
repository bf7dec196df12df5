//! Exact theoretical constants.

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Size of the set of colored disc types used by the constants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HqSize {
    /// A known or assumed count.
    Override(BigUint),
    /// The crude bound `2^(c_q^2) * (palette + 1)^(c_q)`; `palette` defaults
    /// to `c_q`.
    CrudeBound { palette: Option<BigUint> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Params {
    pub q: u32,
    /// `sum_{i=0}^{q} q^i`
    pub c_q: BigUint,
    /// `q^(2q)`
    pub q_2q: BigUint,
    /// `sum_{i=0}^{q+1} q^(2qi)`
    pub c_prime_q: BigUint,
    pub hq_size: BigUint,
    /// `hq_size` is an upper bound rather than a count.
    pub hq_is_bound: bool,
    /// `1 / (200 |H_q|)`
    pub delta: BigRational,
    /// `delta^6 / (6400 |H_q|^2 q^(2q) c'_q)`
    pub alpha: BigRational,
    pub cst: BigRational,
    /// `max{1 / (20 sqrt(alpha q^(2q) c'_q)), 5000 |H_q| / (cst delta^3)}`,
    /// rounded up.
    pub s_min: BigUint,
    /// `q c_q / alpha^2`
    pub n0: BigRational,
}

fn pow(base: u64, exp: u64) -> BigUint {
    let mut acc = BigUint::one();
    let b = BigUint::from(base);
    for _ in 0..exp {
        acc *= &b;
    }
    acc
}

/// `sum_{i=0}^{q} q^i`
pub fn c_q(q: u32) -> BigUint {
    (0..=q as u64).map(|i| pow(q as u64, i)).sum()
}

/// `sum_{i=0}^{q+1} q^(2qi)`
pub fn c_prime_q(q: u32) -> BigUint {
    (0..=q as u64 + 1).map(|i| pow(q as u64, 2 * q as u64 * i)).sum()
}

fn ceil(r: &BigRational) -> BigUint {
    let c = r.ceil().to_integer();
    c.to_biguint().unwrap_or_default()
}

/// Smallest integer `k` with `k >= sqrt(x)`.
fn ceil_sqrt(x: &BigRational) -> BigUint {
    let upper = ceil(x);
    let mut k = upper.sqrt();
    while BigRational::from_integer((&k * &k).into()) < *x {
        k += 1u32;
    }
    k
}

/// Exact constants for bound `q`. `cst` defaults to 1.
pub fn theoretical_params(q: u32, hq: HqSize, cst: Option<BigRational>) -> Result<Params> {
    if q == 0 {
        return Err(Error::InvalidParameter("q must be at least 1"));
    }
    let c_q = c_q(q);
    let q_2q = pow(q as u64, 2 * q as u64);
    let c_prime_q = c_prime_q(q);
    let (hq_size, hq_is_bound) = match hq {
        HqSize::Override(h) => (h, false),
        HqSize::CrudeBound { palette } => {
            let palette = palette.unwrap_or_else(|| c_q.clone());
            let cq = u64::try_from(&c_q).map_err(|_| Error::InvalidParameter("q too large"))?;
            let bound = pow(2, cq * cq) * num_traits::pow(palette + 1u32, cq as usize);
            (bound, true)
        }
    };
    if hq_size.is_zero() {
        return Err(Error::InvalidParameter("|H_q| must be positive"));
    }
    let cst = cst.unwrap_or_else(BigRational::one);
    if cst <= BigRational::zero() {
        return Err(Error::InvalidParameter("cst must be positive"));
    }
    let int = |x: &BigUint| BigRational::from_integer(x.clone().into());
    let h = int(&hq_size);
    let delta = (int(&BigUint::from(200u32)) * &h).recip();
    let delta3 = &delta * &delta * &delta;
    let alpha = &delta3 * &delta3
        / (int(&BigUint::from(6400u32)) * &h * &h * int(&q_2q) * int(&c_prime_q));
    let denom = &alpha * int(&q_2q) * int(&c_prime_q) * int(&BigUint::from(400u32));
    let first = ceil_sqrt(&denom.recip());
    let second = ceil(&(int(&BigUint::from(5000u32)) * &h / (&cst * &delta3)));
    let s_min = first.max(second);
    let n0 = int(&(BigUint::from(q) * &c_q)) / (&alpha * &alpha);
    Ok(Params {
        q,
        c_q,
        q_2q,
        c_prime_q,
        hq_size,
        hq_is_bound,
        delta,
        alpha,
        cst,
        s_min,
        n0,
    })
}

/// Renders a rational as `p/q` (or `p` for integers).
pub fn rational_string(r: &BigRational) -> alloc::string::String {
    use alloc::string::ToString;
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        alloc::format!("{}/{}", r.numer(), r.denom())
    }
}

/// Closed form `(q^(q+1) - 1) / (q - 1)` for `q >= 2`.
pub fn c_q_closed_form(q: u32) -> Option<BigUint> {
    if q < 2 {
        return None;
    }
    let (quot, rem) = (pow(q as u64, q as u64 + 1) - 1u32).div_rem(&BigUint::from(q - 1));
    rem.is_zero().then_some(quot)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(x: u64) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn small_constants() {
        assert_eq!(c_q(1), big(2));
        assert_eq!(c_prime_q(1), big(3));
        assert_eq!(c_q(2), big(7));
        assert_eq!(c_prime_q(2), big(4369));
        for q in 2..8 {
            assert_eq!(c_q_closed_form(q), Some(c_q(q)));
        }
    }

    #[test]
    fn q2_with_override() {
        let p = theoretical_params(2, HqSize::Override(big(10)), None).unwrap();
        assert_eq!(p.q_2q, big(16));
        let r = |n: u64, d: u64| BigRational::new(big(n).into(), big(d).into());
        assert_eq!(p.delta, r(1, 2000));
        let d6 = num_traits::pow(p.delta.clone(), 6);
        assert_eq!(p.alpha, d6 / r(6400 * 100 * 16 * 4369, 1));
        // Both lower bounds on s are exact integers for this family.
        assert_eq!(p.s_min, big(400_000_000_000_000));
        assert_eq!(rational_string(&p.delta), "1/2000");
    }

    #[test]
    fn crude_bound_flagged() {
        let p = theoretical_params(1, HqSize::CrudeBound { palette: None }, None).unwrap();
        assert!(p.hq_is_bound);
        assert_eq!(p.hq_size, big(16 * 9));
        assert!(theoretical_params(0, HqSize::Override(big(1)), None).is_err());
    }
}
