//! Exact arithmetic kernels: Newton's identities over the rationals, and
//! trial-division factorization of small integers with p-adic valuations.
//!
//! Values that can exceed 64 bits (total degrees, Euler characteristics,
//! power sums) are carried as [`BigInt`]; rationals are [`BigRational`],
//! which stays normalized with a positive denominator.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Largest integer accepted by [`factorize`].
pub const FACTOR_BOUND: u64 = 1_000_000;

/// Elementary symmetric functions `e_0..=e_m` expressed through the power
/// sums `args[0..m]` via `j·e_j = Σ_{i=1..j} (-1)^{i-1} e_{j-i} args_i`.
pub fn elementary_from_power_sums(args: &[BigInt]) -> Vec<BigRational> {
    let mut e = Vec::with_capacity(args.len() + 1);
    e.push(BigRational::one());
    for j in 1..=args.len() {
        let mut acc = BigRational::zero();
        for i in 1..=j {
            let term = &e[j - i] * BigRational::from_integer(args[i - 1].clone());
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        e.push(acc / BigRational::from_integer(BigInt::from(j)));
    }
    e
}

/// Converts an exact rational to an integer, failing if the denominator is
/// not one.
pub(crate) fn integral(value: BigRational, what: impl FnOnce() -> String) -> Result<BigInt> {
    if value.is_integer() {
        Ok(value.to_integer())
    } else {
        Err(Error::NonIntegral {
            what: what(),
            value: value.to_string(),
        })
    }
}

pub fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Evaluates the integer polynomial `g_k` at `args = [a_1, …, a_k]`.
///
/// `g_k / k!` is the k-th elementary symmetric function written in terms of
/// power sums, so `g_1 = a_1`, `g_2 = a_1² − a_2`, and so on.
pub fn newton_g(k: usize, args: &[BigInt]) -> Result<BigInt> {
    if k == 0 || args.len() != k {
        return Err(Error::ArgumentCount { k, got: args.len() });
    }
    let e = elementary_from_power_sums(args);
    integral(&e[k] * BigRational::from_integer(factorial(k)), || {
        format!("g_{k}")
    })
}

/// Prime factorization as a map from prime to (positive) exponent.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Factorization(BTreeMap<u64, u32>);

impl Factorization {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a factorization from `(prime, exponent)` pairs, checking that
    /// every key is prime. Zero exponents are dropped.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (u64, u32)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (p, exp) in pairs {
            if !is_prime(p) {
                return Err(Error::NotPrime(p));
            }
            if exp > 0 {
                *map.entry(p).or_insert(0) += exp;
            }
        }
        Ok(Self(map))
    }

    pub fn exponent(&self, p: u64) -> u32 {
        self.0.get(&p).copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, u32)> + '_ {
        self.0.iter().map(|(&p, &e)| (p, e))
    }

    /// The factored integer, `Π p^exp`.
    pub fn value(&self) -> BigInt {
        self.iter().fold(BigInt::one(), |acc, (p, e)| {
            acc * num_traits::pow(BigInt::from(p), e as usize)
        })
    }
}

impl fmt::Display for Factorization {
    /// `2^13*3^3*5^3*11*13`; the empty product renders as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("1");
        }
        for (i, (p, e)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            if e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

pub fn is_prime(v: u64) -> bool {
    if v < 2 {
        return false;
    }
    let mut q = 2u64;
    while q * q <= v {
        if v.is_multiple_of(q) {
            return false;
        }
        q += 1;
    }
    true
}

/// Factors `1 <= v <= 10^6` by trial division.
pub fn factorize(v: u64) -> Result<Factorization> {
    if v == 0 || v > FACTOR_BOUND {
        return Err(Error::FactorOutOfRange(v));
    }
    let mut map = BTreeMap::new();
    let mut rest = v;
    let mut q = 2u64;
    while q * q <= rest {
        while rest.is_multiple_of(q) {
            *map.entry(q).or_insert(0) += 1;
            rest /= q;
        }
        q += if q == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        *map.entry(rest).or_insert(0) += 1;
    }
    Ok(Factorization(map))
}

/// Exponent-wise sum; the value of the result is the product of the inputs.
pub fn merge_factorizations<'a>(fs: impl IntoIterator<Item = &'a Factorization>) -> Factorization {
    let mut map = BTreeMap::new();
    for f in fs {
        for (p, e) in f.iter() {
            *map.entry(p).or_insert(0) += e;
        }
    }
    Factorization(map)
}

/// `ν_p` of the factored value.
pub fn padic_valuation(f: &Factorization, p: u64) -> Result<u32> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(f.exponent(p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn fact(pairs: &[(u64, u32)]) -> Factorization {
        Factorization::from_pairs(pairs.iter().copied()).unwrap()
    }

    #[test]
    fn newton_g_examples() {
        assert_eq!(newton_g(1, &ints(&[7])).unwrap(), BigInt::from(7));
        assert_eq!(newton_g(2, &ints(&[14, 70])).unwrap(), BigInt::from(126));
        assert_eq!(newton_g(7, &ints(&[1; 7])).unwrap(), BigInt::zero());
        assert_eq!(newton_g(4, &ints(&[0; 4])).unwrap(), BigInt::zero());
    }

    #[test]
    fn newton_g_argument_count() {
        assert_eq!(
            newton_g(3, &ints(&[1, 2])),
            Err(Error::ArgumentCount { k: 3, got: 2 })
        );
        assert!(newton_g(0, &[]).is_err());
    }

    #[test]
    fn newton_g_handles_large_orders() {
        // Power sums of eleven unit roots: g_11 = 11!·C(11, 11).
        let args = vec![BigInt::from(11); 11];
        assert_eq!(newton_g(11, &args).unwrap(), factorial(11));
    }

    #[test]
    fn factorize_examples() {
        assert!(factorize(1).unwrap().is_empty());
        assert_eq!(factorize(596).unwrap(), fact(&[(2, 2), (149, 1)]));
        assert_eq!(factorize(274).unwrap(), fact(&[(2, 1), (137, 1)]));
        assert_eq!(factorize(999_983).unwrap(), fact(&[(999_983, 1)]));
    }

    #[test]
    fn factorize_rejects_out_of_range() {
        assert_eq!(factorize(0), Err(Error::FactorOutOfRange(0)));
        assert_eq!(
            factorize(FACTOR_BOUND + 1),
            Err(Error::FactorOutOfRange(FACTOR_BOUND + 1))
        );
    }

    #[test]
    fn merge_examples() {
        assert!(merge_factorizations(&[Factorization::new(), Factorization::new()]).is_empty());
        assert_eq!(
            merge_factorizations(&[fact(&[(2, 1)]), fact(&[(2, 2), (3, 1)])]),
            fact(&[(2, 3), (3, 1)])
        );
        let parts: Vec<_> = [36, 33, 30, 20, 14, 7, 7]
            .iter()
            .map(|&v| factorize(v).unwrap())
            .collect();
        let merged = merge_factorizations(&parts);
        assert_eq!(merged, fact(&[(2, 6), (3, 4), (5, 2), (7, 3), (11, 1)]));
        assert_eq!(merged.value(), BigInt::from(488_980_800u64));
        assert_eq!(merged.to_string(), "2^6*3^4*5^2*7^3*11");
    }

    #[test]
    fn valuation_examples() {
        let f = fact(&[(2, 6), (3, 4), (5, 2), (7, 3), (11, 1)]);
        assert_eq!(padic_valuation(&f, 2).unwrap(), 6);
        let g = fact(&[(2, 13), (3, 3), (5, 3), (11, 1), (13, 1)]);
        assert_eq!(padic_valuation(&g, 2).unwrap(), 13);
        assert_eq!(padic_valuation(&Factorization::new(), 7).unwrap(), 0);
        assert_eq!(padic_valuation(&g, 4), Err(Error::NotPrime(4)));
        assert_eq!(Factorization::from_pairs([(9, 1)]), Err(Error::NotPrime(9)));
    }

    #[test]
    fn factorize_round_trips_below_1e5() {
        for v in 1..=100_000u64 {
            let f = factorize(v).unwrap();
            assert!(f.iter().all(|(p, e)| is_prime(p) && e >= 1));
            assert_eq!(f.value(), BigInt::from(v), "v = {v}");
        }
    }

    proptest! {
        #[test]
        fn merged_value_is_product(vs in proptest::collection::vec(1u64..=FACTOR_BOUND, 0..8)) {
            let fs: Vec<_> = vs.iter().map(|&v| factorize(v).unwrap()).collect();
            let expected = vs.iter().fold(BigInt::one(), |acc, &v| acc * BigInt::from(v));
            prop_assert_eq!(merge_factorizations(&fs).value(), expected);
        }

        #[test]
        fn valuation_recovers_prime_power(
            p in prop::sample::select(vec![2u64, 3, 5, 7, 11, 13, 149, 997]),
            a in 0u32..6,
            m in 1u64..2000,
        ) {
            prop_assume!(m % p != 0);
            let v = p.pow(a) * m;
            prop_assume!(v <= FACTOR_BOUND);
            prop_assert_eq!(padic_valuation(&factorize(v).unwrap(), p).unwrap(), a);
        }
    }
}
