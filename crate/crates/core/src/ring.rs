//! Exact scalars: arbitrary-precision rationals, p-adic valuations on them,
//! and the field-context trait the linear algebra is generic over.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt::Debug;

pub type Q = BigRational;

/// Rational from an integer.
pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Rational n/d. Panics on d = 0.
pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Parses "num/den" or a bare integer. Whitespace is not tolerated.
pub fn parse_q(s: &str) -> Option<Q> {
    match s.split_once('/') {
        None => s.parse::<BigInt>().ok().map(Q::from_integer),
        Some((n, d)) => {
            let n = n.parse::<BigInt>().ok()?;
            let d = d.parse::<BigInt>().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Q::new(n, d))
            }
        }
    }
}

/// Canonical "num/den" form, denominator always present and positive.
pub fn format_q(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Multiplicity of the prime p in a nonzero integer.
pub fn vp_int(n: &BigInt, p: u64) -> u64 {
    assert!(!n.is_zero(), "valuation of zero integer");
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (quo, rem) = num_integer::Integer::div_rem(&n, &p);
        if rem.is_zero() {
            n = quo;
            v += 1;
        } else {
            return v;
        }
    }
}

/// v_p on Q. None encodes v_p(0) = +infinity.
pub fn vp_rat(x: &Q, p: u64) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    Some(vp_int(x.numer(), p) as i64 - vp_int(x.denom(), p) as i64)
}

/// Deterministic total order on rationals, used for sorting basis data.
pub fn cmp_q(a: &Q, b: &Q) -> std::cmp::Ordering {
    a.cmp(b)
}

/// Trial division; the primes here are desk-scale.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// A field given as a context object. Elements carry no back-reference, so
/// every operation goes through the context. All arithmetic is exact.
pub trait Field: Clone {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse. Panics on zero (callers test first) and on
    /// zero divisors, which can only arise from a reducible defining
    /// polynomial.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// The canonical image of a rational.
    fn from_q(&self, x: &Q) -> Self::Elem;
    fn render(&self, a: &Self::Elem) -> String;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }
    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.inv(b))
    }
    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_q(&qi(n))
    }
    fn eq(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        a == b
    }
}

/// The rational numbers.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = Q;

    fn zero(&self) -> Q {
        Q::zero()
    }
    fn one(&self) -> Q {
        Q::one()
    }
    fn add(&self, a: &Q, b: &Q) -> Q {
        a + b
    }
    fn neg(&self, a: &Q) -> Q {
        -a
    }
    fn mul(&self, a: &Q, b: &Q) -> Q {
        a * b
    }
    fn inv(&self, a: &Q) -> Q {
        assert!(!a.is_zero(), "inverse of zero");
        a.recip()
    }
    fn is_zero(&self, a: &Q) -> bool {
        a.is_zero()
    }
    fn from_q(&self, x: &Q) -> Q {
        x.clone()
    }
    fn render(&self, a: &Q) -> String {
        format_q(a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["3/4", "-1/2", "5/1", "0/1"] {
            let x = parse_q(s).unwrap();
            assert_eq!(format_q(&x), s);
        }
        assert_eq!(parse_q("7"), Some(qi(7)));
        assert_eq!(parse_q("6/4"), Some(q(3, 2)));
        assert!(parse_q("1/0").is_none());
        assert!(parse_q("x").is_none());
    }

    #[test]
    fn valuations() {
        assert_eq!(vp_rat(&q(9, 4), 3), Some(2));
        assert_eq!(vp_rat(&q(9, 4), 2), Some(-2));
        assert_eq!(vp_rat(&q(1, 1), 5), Some(0));
        assert_eq!(vp_rat(&qi(0), 5), None);
        assert_eq!(vp_rat(&q(-50, 3), 5), Some(2));
    }

    #[test]
    fn vp_is_additive_and_ultrametric() {
        let p = 3;
        let samples = [q(9, 4), q(-2, 27), q(5, 7), q(81, 2), q(-1, 3)];
        for a in &samples {
            for b in &samples {
                let va = vp_rat(a, p).unwrap();
                let vb = vp_rat(b, p).unwrap();
                assert_eq!(vp_rat(&(a * b), p), Some(va + vb));
                let s = a + b;
                if let Some(vs) = vp_rat(&s, p) {
                    assert!(vs >= va.min(vb));
                }
            }
        }
    }
}
