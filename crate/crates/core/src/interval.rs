//! Rational-endpoint interval arithmetic and axis-aligned boxes, the search
//! state of the branch-and-bound certifier. Endpoints are exact; there is no
//! rounding anywhere, so soundness holds by construction.

use num_traits::{Signed, Zero};

use crate::rational::{pow_rat, rat_int, Rational};

/// Closed interval [lo, hi] with exact rational endpoints, lo <= hi.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Interval {
    lo: Rational,
    hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        Interval { lo, hi }
    }

    pub fn point(v: Rational) -> Self {
        Interval {
            lo: v.clone(),
            hi: v,
        }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / rat_int(2)
    }

    pub fn contains(&self, v: &Rational) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn add(&self, other: &Interval) -> Interval {
        Interval {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    pub fn sub(&self, other: &Interval) -> Interval {
        Interval {
            lo: &self.lo - &other.hi,
            hi: &self.hi - &other.lo,
        }
    }

    pub fn neg(&self) -> Interval {
        Interval {
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }

    /// Endpoint-product rule.
    pub fn mul(&self, other: &Interval) -> Interval {
        let candidates = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = candidates.iter().min().unwrap().clone();
        let hi = candidates.iter().max().unwrap().clone();
        Interval { lo, hi }
    }

    /// Scale by an exact rational.
    pub fn scale(&self, f: &Rational) -> Interval {
        if f.is_negative() {
            Interval {
                lo: &self.hi * f,
                hi: &self.lo * f,
            }
        } else {
            Interval {
                lo: &self.lo * f,
                hi: &self.hi * f,
            }
        }
    }

    /// Sharp integer power: an even power of an interval straddling zero has
    /// lower endpoint zero, not the value from naive self-multiplication.
    pub fn pow(&self, n: u32) -> Interval {
        if n == 0 {
            return Interval::point(rat_int(1));
        }
        let plo = pow_rat(&self.lo, n);
        let phi = pow_rat(&self.hi, n);
        if n % 2 == 1 || !self.lo.is_negative() {
            Interval { lo: plo, hi: phi }
        } else if !self.hi.is_positive() {
            Interval { lo: phi, hi: plo }
        } else {
            Interval {
                lo: Rational::zero(),
                hi: plo.max(phi),
            }
        }
    }

    /// Intersection of two enclosures of the same quantity. Panics if the
    /// intervals are disjoint, which cannot happen for sound inputs.
    pub fn intersect(&self, other: &Interval) -> Interval {
        let lo = self.lo.clone().max(other.lo.clone());
        let hi = self.hi.clone().min(other.hi.clone());
        assert!(lo <= hi, "intersection of disjoint enclosures");
        Interval { lo, hi }
    }
}

/// Product of intervals: the branch-and-bound search state. `dims.len()` is
/// the dimension of the problem (the objective and constraints may only use
/// coordinate slots below it).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntervalBox {
    dims: Vec<Interval>,
}

impl IntervalBox {
    pub fn new(dims: Vec<Interval>) -> Self {
        assert!(!dims.is_empty(), "box must have at least one dimension");
        IntervalBox { dims }
    }

    /// Cube [-r, r]^n.
    pub fn centered_cube(n: usize, r: Rational) -> Self {
        IntervalBox::new(vec![Interval::new(-&r, r.clone()); n])
    }

    pub fn dims(&self) -> &[Interval] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.dims.len()
    }

    pub fn is_point(&self) -> bool {
        self.dims.iter().all(Interval::is_point)
    }

    /// Dimension to bisect: the widest, ties broken by the lowest index.
    pub fn widest_dim(&self) -> usize {
        let mut best = 0;
        let mut best_w = self.dims[0].width();
        for (i, iv) in self.dims.iter().enumerate().skip(1) {
            let w = iv.width();
            if w > best_w {
                best = i;
                best_w = w;
            }
        }
        best
    }

    /// Bisects the widest dimension at its midpoint; returns (lower half,
    /// upper half).
    pub fn split(&self) -> (IntervalBox, IntervalBox) {
        let d = self.widest_dim();
        let mid = self.dims[d].midpoint();
        let mut lo_half = self.clone();
        let mut hi_half = self.clone();
        lo_half.dims[d] = Interval::new(self.dims[d].lo().clone(), mid.clone());
        hi_half.dims[d] = Interval::new(mid, self.dims[d].hi().clone());
        (lo_half, hi_half)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn iv(lo: i64, hi: i64) -> Interval {
        Interval::new(rat_int(lo), rat_int(hi))
    }

    #[test]
    fn endpoint_product_rule() {
        assert_eq!(iv(-1, 2).mul(&iv(3, 4)), iv(-4, 8));
    }

    #[test]
    fn even_power_is_sharp() {
        assert_eq!(iv(-1, 2).pow(2), iv(0, 4));
        assert_eq!(iv(-3, -1).pow(2), iv(1, 9));
        assert_eq!(iv(-2, 1).pow(3), iv(-8, 1));
        assert_eq!(iv(5, 7).pow(0), Interval::point(rat_int(1)));
    }

    #[test]
    fn addition() {
        assert_eq!(iv(1, 2).add(&iv(-3, -1)), iv(-2, 1));
    }

    #[test]
    fn split_bisects_widest_lowest() {
        let b = IntervalBox::new(vec![iv(0, 2), iv(0, 4)]);
        let (lo, hi) = b.split();
        assert_eq!(lo.dims()[1], iv(0, 2));
        assert_eq!(hi.dims()[1], iv(2, 4));
        assert_eq!(lo.dims()[0], iv(0, 2));
        // Tie-break: lowest dimension index first.
        let b = IntervalBox::new(vec![iv(0, 2), iv(0, 2)]);
        assert_eq!(b.widest_dim(), 0);
    }

    #[test]
    fn interval_invariant_enforced() {
        let result = std::panic::catch_unwind(|| Interval::new(rat_int(2), rat_int(1)));
        assert!(result.is_err());
    }

    #[test]
    fn scale_flips_on_negative() {
        assert_eq!(iv(1, 2).scale(&rat(-1, 2)), Interval::new(rat(-1, 1), rat(-1, 2)));
    }
}
