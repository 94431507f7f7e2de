use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::intmath::{perfect_square_root, signed_divisors};
use crate::{Error, Result};

/// One instance `X + Y + Z = s`, `X^3 + Y^3 + Z^3 = c`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TripleSystem {
    pub s: BigInt,
    pub c: BigInt,
}

impl TripleSystem {
    pub fn new(s: impl Into<BigInt>, c: impl Into<BigInt>) -> Self {
        TripleSystem {
            s: s.into(),
            c: c.into(),
        }
    }

    /// `c - s^3`. Zero exactly for the degenerate family.
    pub fn remainder(&self) -> BigInt {
        &self.c - self.s.pow(3)
    }

    pub fn is_degenerate(&self) -> bool {
        self.remainder().is_zero()
    }
}

/// An ordered integer triple. Ordering is lexicographic on `(x, y, z)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple {
    pub x: BigInt,
    pub y: BigInt,
    pub z: BigInt,
}

impl Triple {
    pub fn new(x: impl Into<BigInt>, y: impl Into<BigInt>, z: impl Into<BigInt>) -> Self {
        Triple {
            x: x.into(),
            y: y.into(),
            z: z.into(),
        }
    }

    /// All six coordinate orderings, repeats included.
    pub fn permutations(&self) -> [Triple; 6] {
        let (x, y, z) = (&self.x, &self.y, &self.z);
        [
            Triple::new(x.clone(), y.clone(), z.clone()),
            Triple::new(x.clone(), z.clone(), y.clone()),
            Triple::new(y.clone(), x.clone(), z.clone()),
            Triple::new(y.clone(), z.clone(), x.clone()),
            Triple::new(z.clone(), x.clone(), y.clone()),
            Triple::new(z.clone(), y.clone(), x.clone()),
        ]
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

/// An admissible pivot value together with the quantities the quadratic in
/// `X` is built from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateZ {
    pub z: BigInt,
    /// `s - z`, which is also `X + Y`.
    pub k: BigInt,
    /// `d0 / (3k)`, exact.
    pub d: BigInt,
    /// `c - s^3`.
    pub d0: BigInt,
}

impl CandidateZ {
    /// Constant term of `X^2 - kX + q = 0`, i.e. `q = -(s*z + d)`.
    pub fn constant_term(&self, system: &TripleSystem) -> BigInt {
        -(&system.s * &self.z + &self.d)
    }

    /// `k^2 + 4(s*z + d)`.
    pub fn discriminant(&self, system: &TripleSystem) -> BigInt {
        &self.k * &self.k - self.constant_term(system) * 4
    }
}

/// Result of [`solve`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolutionSet {
    /// Sorted, duplicate-free and closed under permutation.
    Finite(Vec<Triple>),
    /// Every permutation of `(anchor, t, -t)` for integer `t`.
    InfiniteFamily { anchor: BigInt },
}

impl SolutionSet {
    pub fn is_finite(&self) -> bool {
        matches!(self, SolutionSet::Finite(_))
    }

    pub fn triples(&self) -> Option<&[Triple]> {
        match self {
            SolutionSet::Finite(t) => Some(t),
            SolutionSet::InfiniteFamily { .. } => None,
        }
    }

    /// Membership test; for the family this checks the `(s, t, -t)` shape.
    pub fn contains(&self, triple: &Triple) -> bool {
        match self {
            SolutionSet::Finite(t) => t.binary_search(triple).is_ok(),
            SolutionSet::InfiniteFamily { anchor } => triple
                .permutations()
                .iter()
                .any(|p| p.x == *anchor && (&p.y + &p.z).is_zero()),
        }
    }
}

/// Every pivot `z != s` for which `3(s - z)` divides `c - s^3`, ascending.
pub fn candidate_zs(system: &TripleSystem) -> Result<Vec<CandidateZ>> {
    let d0 = system.remainder();
    if d0.is_zero() {
        return Err(Error::Degenerate);
    }
    let (third, rem) = d0.div_rem(&BigInt::from(3));
    if !rem.is_zero() {
        return Ok(Vec::new());
    }
    // 3k | d0  <=>  k | d0/3
    let mut out: Vec<CandidateZ> = signed_divisors(&third)?
        .into_iter()
        .map(|k| CandidateZ {
            z: &system.s - &k,
            d: &third / &k,
            k,
            d0: d0.clone(),
        })
        .collect();
    out.sort_by(|a, b| a.z.cmp(&b.z));
    Ok(out)
}

/// Integer roots of `X^2 - kX - (s*z + d) = 0`, ascending and deduplicated.
pub fn solve_quadratic_for_x(candidate: &CandidateZ, system: &TripleSystem) -> Vec<BigInt> {
    let Some(root) = perfect_square_root(&candidate.discriminant(system)) else {
        return Vec::new();
    };
    if (&candidate.k + &root).is_odd() {
        return Vec::new();
    }
    let low = (&candidate.k - &root) / 2;
    if root.is_zero() {
        return alloc::vec![low];
    }
    let high = (&candidate.k + &root) / 2;
    alloc::vec![low, high]
}

/// All integer solutions of the system.
///
/// Non-degenerate systems yield a finite set; `c = s^3` yields the symbolic
/// family of permutations of `(s, t, -t)`. The pivot `z = s` never
/// contributes outside that family since it forces `X + Y = 0` and hence
/// `X^3 + Y^3 = 0`.
pub fn solve(system: &TripleSystem) -> Result<SolutionSet> {
    if system.is_degenerate() {
        return Ok(SolutionSet::InfiniteFamily {
            anchor: system.s.clone(),
        });
    }
    let mut found = BTreeSet::new();
    for candidate in candidate_zs(system)? {
        for x in solve_quadratic_for_x(&candidate, system) {
            let y = &candidate.k - &x;
            let triple = Triple::new(x, y, candidate.z.clone());
            debug_assert!(verify(&triple, system));
            found.extend(triple.permutations());
        }
    }
    Ok(SolutionSet::Finite(found.into_iter().collect()))
}

/// `|s| + max(1, floor(|c - s^3| / 3))`. Every coordinate of every solution
/// of a non-degenerate system lies within this bound.
pub fn completeness_bound(system: &TripleSystem) -> Result<BigInt> {
    let d0 = system.remainder();
    if d0.is_zero() {
        return Err(Error::Degenerate);
    }
    let reach: BigInt = (d0.abs() / 3u32).max(BigInt::one());
    Ok(system.s.abs() + reach)
}

/// Both constraints hold exactly.
pub fn verify(triple: &Triple, system: &TripleSystem) -> bool {
    let Triple { x, y, z } = triple;
    x + y + z == system.s && x.pow(3) + y.pow(3) + z.pow(3) == system.c
}
