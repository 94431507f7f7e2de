use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::{Error, Result};

/// Trial divisors tried by [`signed_divisors`] before falling back to a
/// primality certificate for the cofactor.
pub const DEFAULT_TRIAL_LIMIT: u64 = 1_000_000;

/// Miller-Rabin with the first 13 prime bases is deterministic below this
/// value (Sorenson & Webster).
const MR_DETERMINISTIC_LIMIT: u128 = 3_317_044_064_679_887_385_961_981;
const MR_BASES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

/// Floor of the square root of a non-negative integer.
pub fn isqrt(n: &BigInt) -> Result<BigInt> {
    if n.sign() == Sign::Minus {
        return Err(Error::NegativeSqrt(n.clone()));
    }
    Ok(n.sqrt())
}

/// `Some(r)` with `r >= 0` and `r * r == n`, or `None` if `n` is negative or
/// not a square.
pub fn perfect_square_root(n: &BigInt) -> Option<BigInt> {
    if n.sign() == Sign::Minus {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Signed prime factorization. `factors` is sorted by prime, strictly
/// increasing, with every exponent at least one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub sign: Sign,
    pub factors: Vec<(BigUint, u32)>,
}

impl Factorization {
    /// Multiplies the factorization back out.
    pub fn product(&self) -> BigInt {
        let magnitude = self
            .factors
            .iter()
            .fold(BigUint::one(), |acc, (p, e)| acc * p.pow(*e));
        BigInt::from_biguint(self.sign, magnitude)
    }

    /// Number of positive divisors of the magnitude.
    pub fn divisor_count(&self) -> usize {
        self.factors.iter().map(|(_, e)| *e as usize + 1).product()
    }

    /// Positive divisors of the magnitude, ascending.
    pub fn positive_divisors(&self) -> Vec<BigUint> {
        let mut divisors = alloc::vec![BigUint::one()];
        for (p, e) in &self.factors {
            let mut next = Vec::with_capacity(divisors.len() * (*e as usize + 1));
            for d in &divisors {
                let mut power = d.clone();
                next.push(power.clone());
                for _ in 0..*e {
                    power *= p;
                    next.push(power.clone());
                }
            }
            divisors = next;
        }
        divisors.sort_unstable();
        divisors
    }
}

/// Factors `n` by trial division up to `min(isqrt(|n|), trial_limit)`; a
/// cofactor left above the limit must pass a deterministic primality check.
pub fn factorize(n: &BigInt, trial_limit: u64) -> Result<Factorization> {
    if n.is_zero() {
        return Err(Error::Zero);
    }
    let sign = if n.sign() == Sign::Minus {
        Sign::Minus
    } else {
        Sign::Plus
    };
    let mut factors = Vec::new();
    let mut rest = n.magnitude().clone();

    let mut p: u64 = 2;
    while p <= trial_limit {
        // Small cofactors finish in machine words.
        if let Some(small) = rest.to_u64() {
            let (small, last) = trial_divide_u64(small, p, trial_limit, &mut factors);
            rest = BigUint::from(small);
            p = last;
            break;
        }
        if BigUint::from(p) * p > rest {
            break;
        }
        let exponent = remove_factor(&mut rest, p);
        if exponent > 0 {
            factors.push((BigUint::from(p), exponent));
        }
        p = next_trial(p);
    }

    if !rest.is_one() {
        let exhausted = BigUint::from(p) * p > rest;
        if exhausted || is_certified_prime(&rest)? {
            factors.push((rest, 1));
        } else {
            return Err(Error::IncompleteFactorization {
                cofactor: BigInt::from(rest),
            });
        }
    }
    Ok(Factorization { sign, factors })
}

/// Continues trial division from `p` on a word-sized cofactor. Returns the
/// cofactor and the first divisor that was not tried.
fn trial_divide_u64(
    mut rest: u64,
    mut p: u64,
    limit: u64,
    factors: &mut Vec<(BigUint, u32)>,
) -> (u64, u64) {
    while p <= limit && (p as u128) * (p as u128) <= rest as u128 {
        if rest.is_multiple_of(p) {
            let mut exponent = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                exponent += 1;
            }
            factors.push((BigUint::from(p), exponent));
        }
        p = next_trial(p);
    }
    (rest, p)
}

fn remove_factor(rest: &mut BigUint, p: u64) -> u32 {
    let mut exponent = 0;
    loop {
        let (q, r) = rest.div_rem(&BigUint::from(p));
        if !r.is_zero() {
            return exponent;
        }
        *rest = q;
        exponent += 1;
    }
}

fn next_trial(p: u64) -> u64 {
    if p == 2 {
        3
    } else {
        p + 2
    }
}

/// Deterministic Miller-Rabin. Fails with `IncompleteFactorization` when `m`
/// is too large for the fixed base set to be a proof.
fn is_certified_prime(m: &BigUint) -> Result<bool> {
    match m.to_u128() {
        Some(v) if v < MR_DETERMINISTIC_LIMIT => Ok(miller_rabin(m)),
        _ => Err(Error::IncompleteFactorization {
            cofactor: BigInt::from(m.clone()),
        }),
    }
}

fn miller_rabin(m: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if *m < two {
        return false;
    }
    for base in MR_BASES {
        if *m == BigUint::from(base) {
            return true;
        }
        if (m % base).is_zero() {
            return false;
        }
    }
    let m_minus_one = m - 1u32;
    let shift = m_minus_one.trailing_zeros().unwrap_or(0);
    let odd = &m_minus_one >> shift;
    'bases: for base in MR_BASES {
        let mut x = BigUint::from(base).modpow(&odd, m);
        if x.is_one() || x == m_minus_one {
            continue;
        }
        for _ in 1..shift {
            x = x.modpow(&two, m);
            if x == m_minus_one {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Every divisor of `n`, both signs, ascending. Length is twice the number of
/// positive divisors of `|n|`.
pub fn signed_divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let positive = factorize(n, DEFAULT_TRIAL_LIMIT)?.positive_divisors();
    let mut out = Vec::with_capacity(positive.len() * 2);
    out.extend(
        positive
            .iter()
            .rev()
            .map(|d| BigInt::from_biguint(Sign::Minus, d.clone())),
    );
    out.extend(positive.into_iter().map(BigInt::from));
    Ok(out)
}
