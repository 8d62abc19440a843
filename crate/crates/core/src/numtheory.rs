// SPDX-License-Identifier: Apache-2.0

//! Exact integer number theory: factorization, Euler phi, Möbius, units mod n
//! and Ramanujan sums.
//!
//! Everything here works in `u64`/`i64` with trial division, which is plenty
//! for the graph sizes this crate targets.

use crate::error::{Error, Result};

/// Prime factorization of a positive integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    value: u64,
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    /// Factor `value` by trial division.
    pub fn of(value: u64) -> Result<Self> {
        nonzero("value", value)?;
        let mut rest = value;
        let mut factors = Vec::new();
        let mut p = 2u64;
        while p * p <= rest {
            if rest % p == 0 {
                let mut e = 0;
                while rest % p == 0 {
                    rest /= p;
                    e += 1;
                }
                factors.push((p, e));
            }
            p += if p == 2 { 1 } else { 2 };
        }
        if rest > 1 {
            factors.push((rest, 1));
        }
        Ok(Self { value, factors })
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    /// `(prime, exponent)` pairs with strictly increasing primes.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    pub fn is_prime_power(&self) -> bool {
        self.factors.len() == 1
    }

    pub fn euler_phi(&self) -> u64 {
        self.factors
            .iter()
            .map(|&(p, e)| (p - 1) * p.pow(e - 1))
            .product()
    }

    pub fn mobius(&self) -> i64 {
        if !self.is_squarefree() {
            0
        } else if self.factors.len() % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

fn nonzero(what: &'static str, n: u64) -> Result<()> {
    if n == 0 {
        Err(Error::NonPositive { what })
    } else {
        Ok(())
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn euler_phi(n: u64) -> Result<u64> {
    Ok(Factorization::of(n)?.euler_phi())
}

/// Möbius function; `mobius(1) == 1`.
pub fn mobius(m: u64) -> Result<i64> {
    Ok(Factorization::of(m)?.mobius())
}

pub fn is_squarefree(n: u64) -> Result<bool> {
    Ok(Factorization::of(n)?.is_squarefree())
}

/// Units of `Z_n` in ascending order. For `n == 1` the result is empty.
pub fn units_mod(n: u64) -> Result<Vec<u64>> {
    nonzero("n", n)?;
    Ok((1..n).filter(|&u| gcd(u, n) == 1).collect())
}

/// Ramanujan sum `c_n(d) = mu(t) * phi(n) / phi(t)` with `t = n / gcd(d, n)`.
///
/// Computed in integers only; the division is exact.
pub fn ramanujan_sum(d: u64, n: u64) -> Result<i64> {
    nonzero("n", n)?;
    if d >= n {
        return Err(Error::IndexOutOfRange { index: d, bound: n });
    }
    // gcd(0, n) = n, so d = 0 gives t = 1 and the result phi(n).
    let t = n / gcd(d, n);
    let ft = Factorization::of(t)?;
    let mu = ft.mobius();
    if mu == 0 {
        return Ok(0);
    }
    let phi_n = euler_phi(n)?;
    let phi_t = ft.euler_phi();
    debug_assert_eq!(phi_n % phi_t, 0);
    Ok(mu * (phi_n / phi_t) as i64)
}
