//! Dense univariate polynomials over a field context. Degrees stay tiny
//! (defining polynomials and their Sylvester matrices), so everything is
//! straightforward dense arithmetic.

use crate::linalg::{det, Matrix};
use crate::ring::Field;

/// coeffs[i] is the coefficient of x^i; no trailing zeros are stored, and
/// the zero polynomial is the empty vector.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<E> {
    pub coeffs: Vec<E>,
}

impl<E: Clone> Poly<E> {
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&E> {
        self.coeffs.last()
    }
}

pub fn poly<F: Field>(f: &F, coeffs: Vec<F::Elem>) -> Poly<F::Elem> {
    let mut coeffs = coeffs;
    while coeffs.last().is_some_and(|c| f.is_zero(c)) {
        coeffs.pop();
    }
    Poly { coeffs }
}

pub fn poly_zero<E>() -> Poly<E> {
    Poly { coeffs: vec![] }
}

pub fn poly_add<F: Field>(f: &F, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
    let n = a.coeffs.len().max(b.coeffs.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.coeffs.get(i).cloned().unwrap_or_else(|| f.zero());
        let y = b.coeffs.get(i).cloned().unwrap_or_else(|| f.zero());
        out.push(f.add(&x, &y));
    }
    poly(f, out)
}

pub fn poly_neg<F: Field>(f: &F, a: &Poly<F::Elem>) -> Poly<F::Elem> {
    Poly {
        coeffs: a.coeffs.iter().map(|c| f.neg(c)).collect(),
    }
}

pub fn poly_sub<F: Field>(f: &F, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
    poly_add(f, a, &poly_neg(f, b))
}

pub fn poly_mul<F: Field>(f: &F, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
    if a.is_zero() || b.is_zero() {
        return poly_zero();
    }
    let mut out = vec![f.zero(); a.coeffs.len() + b.coeffs.len() - 1];
    for (i, x) in a.coeffs.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        for (j, y) in b.coeffs.iter().enumerate() {
            out[i + j] = f.add(&out[i + j], &f.mul(x, y));
        }
    }
    poly(f, out)
}

pub fn poly_scale<F: Field>(f: &F, s: &F::Elem, a: &Poly<F::Elem>) -> Poly<F::Elem> {
    poly(f, a.coeffs.iter().map(|c| f.mul(s, c)).collect())
}

/// Euclidean division. Panics if b is zero.
pub fn poly_divrem<F: Field>(
    f: &F,
    a: &Poly<F::Elem>,
    b: &Poly<F::Elem>,
) -> (Poly<F::Elem>, Poly<F::Elem>) {
    assert!(!b.is_zero(), "division by the zero polynomial");
    let db = b.degree().unwrap();
    let lead_inv = f.inv(b.leading().unwrap());
    let mut rem = a.clone();
    let mut quo = vec![f.zero(); a.coeffs.len().saturating_sub(db)];
    while let Some(dr) = rem.degree() {
        if dr < db {
            break;
        }
        let c = f.mul(rem.leading().unwrap(), &lead_inv);
        let shift = dr - db;
        quo[shift] = c.clone();
        let mut coeffs = rem.coeffs.clone();
        for (i, bc) in b.coeffs.iter().enumerate() {
            coeffs[shift + i] = f.sub(&coeffs[shift + i], &f.mul(&c, bc));
        }
        rem = poly(f, coeffs);
    }
    (poly(f, quo), rem)
}

/// Monic gcd; the zero polynomial when both inputs are zero.
pub fn poly_gcd<F: Field>(f: &F, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
    let mut a = a.clone();
    let mut b = b.clone();
    while !b.is_zero() {
        let (_, r) = poly_divrem(f, &a, &b);
        a = b;
        b = r;
    }
    match a.leading() {
        None => a,
        Some(l) => {
            let lead_inv = f.inv(l);
            poly_scale(f, &lead_inv, &a)
        }
    }
}

pub fn poly_derivative<F: Field>(f: &F, a: &Poly<F::Elem>) -> Poly<F::Elem> {
    if a.coeffs.len() <= 1 {
        return poly_zero();
    }
    let coeffs = a
        .coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| f.mul(&f.from_i64(i as i64), c))
        .collect();
    poly(f, coeffs)
}

pub fn poly_eval<F: Field>(f: &F, a: &Poly<F::Elem>, x: &F::Elem) -> F::Elem {
    let mut acc = f.zero();
    for c in a.coeffs.iter().rev() {
        acc = f.add(&f.mul(&acc, x), c);
    }
    acc
}

/// Coefficient-wise image of a polynomial under a map of scalars.
pub fn poly_map<F: Field, G: Field>(
    g: &G,
    a: &Poly<F::Elem>,
    mut emb: impl FnMut(&F::Elem) -> G::Elem,
) -> Poly<G::Elem> {
    poly(g, a.coeffs.iter().map(|c| emb(c)).collect())
}

/// Resultant via the Sylvester matrix; fine at the degrees seen here.
pub fn resultant<F: Field>(f: &F, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> F::Elem {
    let (da, db) = match (a.degree(), b.degree()) {
        (Some(da), Some(db)) => (da, db),
        _ => return f.zero(),
    };
    if da == 0 && db == 0 {
        return f.one();
    }
    let n = da + db;
    let mut s = Matrix::filled(n, n, f.zero());
    for r in 0..db {
        for (i, c) in a.coeffs.iter().enumerate() {
            s.set(r, r + da - i, c.clone());
        }
    }
    for r in 0..da {
        for (i, c) in b.coeffs.iter().enumerate() {
            s.set(db + r, r + db - i, c.clone());
        }
    }
    det(f, &s)
}

/// disc(a) = (-1)^(d(d-1)/2) res(a, a') / lc(a) for d = deg a >= 1.
pub fn discriminant<F: Field>(f: &F, a: &Poly<F::Elem>) -> F::Elem {
    let d = a.degree().expect("discriminant of the zero polynomial");
    assert!(d >= 1, "discriminant needs degree >= 1");
    let r = resultant(f, a, &poly_derivative(f, a));
    let r = f.div(&r, a.leading().unwrap());
    if (d * (d - 1) / 2) % 2 == 1 {
        f.neg(&r)
    } else {
        r
    }
}
