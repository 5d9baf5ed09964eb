//! Element-wise arithmetic in the bicyclic monoid `<p, q | pq = 1>`.
//!
//! Elements are pairs `(m, n)` of naturals standing for `q^m p^n`; the
//! monoid is infinite, so it is never tabulated.

use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BicyclicElement {
    pub p: BigUint,
    pub q: BigUint,
}

impl BicyclicElement {
    pub fn new(p: impl Into<BigUint>, q: impl Into<BigUint>) -> Self {
        BicyclicElement { p: p.into(), q: q.into() }
    }

    pub fn identity() -> Self {
        BicyclicElement { p: BigUint::zero(), q: BigUint::zero() }
    }

    /// `(p,q)(s,t) = (p - q + max(q,s), t - s + max(q,s))`.
    pub fn mul(&self, other: &Self) -> Self {
        let m = (&self.q).max(&other.p);
        BicyclicElement { p: &self.p + (m - &self.q), q: &other.q + (m - &other.p) }
    }

    fn max_coordinate(&self) -> &BigUint {
        (&self.p).max(&self.q)
    }
}

impl fmt::Display for BicyclicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

/// Every `x` with `x * right = target`, both coordinates of `x` at most
/// `search_bound`, in lexicographic order.
///
/// Any solution satisfies `p <= m` and `q <= n + s` (when `q >= s` the
/// solution is `(m, n - t + s)`; otherwise `(m - s + q, q)` with `q < s`), so
/// it lies inside `max(m,n) + max(s,t)`. The bound must reach that far; the
/// search then scans one extra layer and fails if a solution shows up beyond
/// the proven limit.
pub fn left_divisors(
    target: &BicyclicElement,
    right: &BicyclicElement,
    search_bound: u64,
) -> Result<Vec<BicyclicElement>> {
    let needed = target.max_coordinate() + right.max_coordinate();
    if BigUint::from(search_bound) < needed {
        return Err(Error::BoundTooSmall { bound: search_bound, needed: needed.try_into().unwrap_or(u64::MAX) });
    }
    let mut out = Vec::new();
    for p in 0..=search_bound + 1 {
        for q in 0..=search_bound + 1 {
            let x = BicyclicElement::new(p, q);
            if x.mul(right) != *target {
                continue;
            }
            if *x.max_coordinate() > needed {
                return Err(Error::DivisorOutsideBound { p: x.p.to_string(), q: x.q.to_string() });
            }
            if p <= search_bound && q <= search_bound {
                out.push(x);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(p: u32, q: u32) -> BicyclicElement {
        BicyclicElement::new(p, q)
    }

    #[test]
    fn multiplication_examples() {
        assert_eq!(BicyclicElement::identity().mul(&b(4, 9)), b(4, 9));
        assert_eq!(b(2, 3).mul(&b(1, 5)), b(2, 7));
        assert_eq!(b(1, 0).mul(&b(0, 1)), b(1, 1));
        assert_eq!(b(0, 1).mul(&b(1, 0)), b(0, 0));
    }

    #[test]
    fn divisor_examples() {
        assert_eq!(left_divisors(&b(3, 1), &b(2, 0), 10).unwrap(), vec![b(3, 3)]);
        let st = b(4, 2);
        assert!(left_divisors(&st, &st, 20).unwrap().contains(&b(0, 0)));
        let d = left_divisors(&b(0, 5), &b(3, 3), 10).unwrap();
        assert!(d.len() <= 4);
        assert_eq!(d, vec![b(0, 5)]);
        assert!(matches!(left_divisors(&b(3, 1), &b(2, 0), 2), Err(Error::BoundTooSmall { needed: 5, .. })));
    }

    #[test]
    fn no_overflow_on_large_coordinates() {
        let big = BicyclicElement::new(BigUint::from(u64::MAX) * 3u32, 7u32);
        let r = big.mul(&b(1, 1));
        assert_eq!(r.p, big.p);
        assert_eq!(r.q, BigUint::from(7u32));
    }
}
