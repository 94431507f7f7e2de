use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::solver::{verify, Triple, TripleSystem};

/// Every solution with `max(|x|, |y|, |z|) <= bound`, sorted.
///
/// Loops over `x` and `y` and takes `z = s - x - y`, so the cost is
/// `O(bound^2)`. No use is made of the divisibility structure the solver
/// relies on. A negative `bound` gives an empty box.
pub fn brute_force(system: &TripleSystem, bound: &BigInt) -> Vec<Triple> {
    if bound.is_negative() {
        return Vec::new();
    }
    match small_box(system, bound) {
        Some(small) => brute_force_small(&small),
        None => brute_force_big(system, bound),
    }
}

struct SmallBox {
    s: i64,
    c: i64,
    bound: i64,
}

/// Machine-word path. With |coordinates| <= 2^20 every cube is below 2^60
/// and a sum of three cubes stays inside i64.
fn small_box(system: &TripleSystem, bound: &BigInt) -> Option<SmallBox> {
    const LIMIT: i64 = 1 << 20;
    let bound = bound.to_i64().filter(|b| *b <= LIMIT)?;
    let s = system.s.to_i64().filter(|s| s.abs() <= 3 * LIMIT)?;
    let c = system.c.to_i64()?;
    Some(SmallBox { s, c, bound })
}

fn brute_force_small(b: &SmallBox) -> Vec<Triple> {
    let bound = b.bound;
    let cubes: Vec<i64> = (-bound..=bound).map(|v| v * v * v).collect();
    let cube = |v: i64| cubes[(v + bound) as usize];
    let mut out = Vec::new();
    for x in -bound..=bound {
        let Some(rest) = b.c.checked_sub(cube(x)) else {
            continue;
        };
        // y and z = s - x - y must both lie in [-bound, bound]
        let y_low = (-bound).max(b.s - x - bound);
        let y_high = bound.min(b.s - x + bound);
        for y in y_low..=y_high {
            let z = b.s - x - y;
            if cube(y) + cube(z) == rest {
                out.push(Triple::new(x, y, z));
            }
        }
    }
    out
}

fn brute_force_big(system: &TripleSystem, bound: &BigInt) -> Vec<Triple> {
    let mut out = Vec::new();
    let mut x = -bound.clone();
    while x <= *bound {
        let mut y = -bound.clone();
        while y <= *bound {
            let z = &system.s - &x - &y;
            if z.abs() <= *bound {
                let triple = Triple::new(x.clone(), y.clone(), z);
                if verify(&triple, system) {
                    out.push(triple);
                }
            }
            y += 1;
        }
        x += 1;
    }
    out
}
