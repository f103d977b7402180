//! Number fields L = Q[x]/(f) at desk scale: exact arithmetic in the power
//! basis, Galois automorphisms found by explicit root-finding (degree <= 3;
//! higher degrees take user-supplied matrices), the splitting map
//! L (x) L -> prod_sigma L, its idempotent preimages, and p-adic data.

use crate::linalg::{self, Matrix};
use crate::poly::{self, Poly};
use crate::ring::{format_q, qi, vp_rat, Field, Rationals, Q};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum FieldError {
    #[error("defining polynomial must be monic of degree >= 1")]
    NotMonic,
    #[error("defining polynomial is not squarefree")]
    NonSquarefree,
    #[error("bad automorphism: {0}")]
    BadAutomorphism(String),
    #[error("designated basis is not unimodular: {0}")]
    BasisNotUnimodular(String),
    #[error("field is not Galois over Q: {0}")]
    NotGalois(String),
    #[error(
        "automorphism search is only built in up to degree 3; degree {0} needs supplied matrices"
    )]
    UnsupportedDegree(usize),
    #[error("valuation unavailable: {0}")]
    ValuationUnavailable(String),
    #[error("embedding invalid: {0}")]
    EmbeddingInvalid(String),
}

/// Element of a number field, coordinates in the power basis 1, th, .., th^(n-1).
#[derive(Clone, Debug, PartialEq)]
pub struct NfElem(pub Vec<Q>);

/// Validated input for a number field.
#[derive(Clone, Debug)]
pub struct FieldSpec {
    /// Coefficients c_0 .. c_n of the defining polynomial, constant term first,
    /// leading coefficient included.
    pub poly: Vec<Q>,
    /// Optional designated basis; column i holds v_{i+1} in power coordinates.
    pub basis: Option<Matrix<Q>>,
    /// Optional automorphism matrices (power-basis coordinates).
    pub automorphisms: Option<Vec<Matrix<Q>>>,
    /// Demand a full automorphism group at validation time.
    pub galois: bool,
}

impl FieldSpec {
    pub fn from_int_poly(coeffs: &[i64]) -> Self {
        FieldSpec {
            poly: coeffs.iter().map(|&c| qi(c)).collect(),
            basis: None,
            automorphisms: None,
            galois: false,
        }
    }

    pub fn galois_from_int_poly(coeffs: &[i64]) -> Self {
        let mut s = Self::from_int_poly(coeffs);
        s.galois = true;
        s
    }
}

#[derive(Clone, Debug)]
pub struct NumberField {
    poly: Poly<Q>,
    degree: usize,
    /// th^(n+k) in power coordinates, k = 0 .. n-2.
    high_powers: Vec<Vec<Q>>,
    basis: Matrix<Q>,
    basis_inv: Matrix<Q>,
    automorphisms: Option<Vec<Matrix<Q>>>,
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        self.poly == other.poly && self.basis == other.basis
    }
}

/// Checks the defining data and assembles the field. Squarefreeness is the
/// gcd test against the derivative; irreducibility is not checked, so a
/// reducible squarefree polynomial yields a ring whose zero divisors will
/// panic if arithmetic ever tries to invert them.
pub fn validate_field(spec: &FieldSpec) -> Result<NumberField, FieldError> {
    let qf = Rationals;
    let f = poly::poly(&qf, spec.poly.clone());
    let n = match f.degree() {
        Some(n) if n >= 1 && f.leading() == Some(&Q::one()) => n,
        _ => return Err(FieldError::NotMonic),
    };
    let g = poly::poly_gcd(&qf, &f, &poly::poly_derivative(&qf, &f));
    if g.degree() != Some(0) {
        return Err(FieldError::NonSquarefree);
    }

    let mut high_powers: Vec<Vec<Q>> = Vec::new();
    if n >= 1 {
        // th^n = -(c_0 + c_1 th + ... + c_{n-1} th^{n-1})
        let first: Vec<Q> = (0..n).map(|i| -f.coeffs[i].clone()).collect();
        high_powers.push(first);
        for _ in 1..n.saturating_sub(1) {
            let prev = high_powers.last().unwrap().clone();
            // multiply by th: shift, then fold the overflowing top term back in
            let top = prev[n - 1].clone();
            let mut next = vec![Q::zero(); n];
            for i in 1..n {
                next[i] = prev[i - 1].clone();
            }
            for i in 0..n {
                next[i] += &top * &high_powers[0][i];
            }
            high_powers.push(next);
        }
    }

    let basis = match &spec.basis {
        None => linalg::identity(&qf, n),
        Some(b) => {
            if b.rows() != n || b.cols() != n {
                return Err(FieldError::BasisNotUnimodular(format!(
                    "expected a {n} x {n} matrix"
                )));
            }
            b.clone()
        }
    };
    let mut one = vec![Q::zero(); n];
    one[0] = Q::one();
    if basis.col(0) != one {
        return Err(FieldError::BasisNotUnimodular(
            "first designated vector must be 1".into(),
        ));
    }
    let basis_inv = linalg::inverse(&qf, &basis)
        .ok_or_else(|| FieldError::BasisNotUnimodular("basis matrix is singular".into()))?;

    let mut field = NumberField {
        poly: f,
        degree: n,
        high_powers,
        basis,
        basis_inv,
        automorphisms: None,
    };

    if let Some(mats) = &spec.automorphisms {
        for m in mats {
            field.check_automorphism(m)?;
        }
        let sorted = field.sort_automorphisms(mats.clone())?;
        field.automorphisms = Some(sorted);
    }
    if spec.galois {
        let autos = field.galois_automorphisms()?;
        field.automorphisms = Some(autos);
    }
    Ok(field)
}

impl NumberField {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn defining_poly(&self) -> &Poly<Q> {
        &self.poly
    }

    pub fn designated_basis(&self) -> &Matrix<Q> {
        &self.basis
    }

    pub fn elem(&self, coords: Vec<Q>) -> NfElem {
        assert_eq!(coords.len(), self.degree, "coordinate length mismatch");
        NfElem(coords)
    }

    pub fn theta(&self) -> NfElem {
        let mut v = vec![Q::zero(); self.degree];
        if self.degree == 1 {
            // L = Q: th is the rational root itself
            v[0] = -self.poly.coeffs[0].clone();
        } else {
            v[1] = Q::one();
        }
        NfElem(v)
    }

    /// v_{i+1} of the designated basis as a field element.
    pub fn basis_vector(&self, i: usize) -> NfElem {
        NfElem(self.basis.col(i))
    }

    /// Power coordinates -> designated-basis coordinates.
    pub fn to_designated(&self, x: &NfElem) -> Vec<Q> {
        linalg::apply(&Rationals, &self.basis_inv, &x.0)
    }

    pub fn from_designated(&self, coords: &[Q]) -> NfElem {
        NfElem(linalg::apply(&Rationals, &self.basis, coords))
    }

    fn reduce(&self, long: Vec<Q>) -> Vec<Q> {
        let n = self.degree;
        let mut out = vec![Q::zero(); n];
        for (k, c) in long.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if k < n {
                out[k] += c;
            } else {
                for i in 0..n {
                    out[i] += &c * &self.high_powers[k - n][i];
                }
            }
        }
        out
    }

    fn as_poly(&self, x: &NfElem) -> Poly<Q> {
        poly::poly(&Rationals, x.0.clone())
    }

    fn check_automorphism(&self, m: &Matrix<Q>) -> Result<(), FieldError> {
        let n = self.degree;
        if m.rows() != n || m.cols() != n {
            return Err(FieldError::BadAutomorphism(format!(
                "expected a {n} x {n} matrix"
            )));
        }
        if n == 1 {
            // only the identity, acting on the one-dimensional space
            if *m.at(0, 0) != Q::one() {
                return Err(FieldError::BadAutomorphism("does not fix 1".into()));
            }
            return Ok(());
        }
        let y = NfElem(m.col(1));
        {
            let mut one = vec![Q::zero(); n];
            one[0] = Q::one();
            if m.col(0) != one {
                return Err(FieldError::BadAutomorphism("does not fix 1".into()));
            }
            // column j must be y^j, else the matrix is not multiplicative
            let mut pow = self.one();
            for j in 0..n {
                if m.col(j) != pow.0 {
                    return Err(FieldError::BadAutomorphism(format!(
                        "column {j} is not the {j}-th power of the generator image"
                    )));
                }
                pow = self.mul(&pow, &y);
            }
        }
        let img = poly::poly_eval(
            self,
            &poly::poly_map::<Rationals, _>(self, &self.poly, |c| self.from_q(c)),
            &y,
        );
        if !self.is_zero(&img) {
            return Err(FieldError::BadAutomorphism(
                "generator image is not a root of the defining polynomial".into(),
            ));
        }
        Ok(())
    }

    fn sort_automorphisms(&self, mats: Vec<Matrix<Q>>) -> Result<Vec<Matrix<Q>>, FieldError> {
        let n = self.degree;
        let id = linalg::identity(&Rationals, n);
        let mut rest: Vec<Matrix<Q>> = Vec::new();
        let mut seen_id = false;
        for m in mats {
            if m == id {
                seen_id = true;
            } else {
                if rest.contains(&m) {
                    return Err(FieldError::BadAutomorphism("duplicate matrix".into()));
                }
                rest.push(m);
            }
        }
        if !seen_id {
            return Err(FieldError::BadAutomorphism("identity missing".into()));
        }
        if rest.len() + 1 != n {
            return Err(FieldError::NotGalois(format!(
                "{} automorphisms supplied, {} required",
                rest.len() + 1,
                n
            )));
        }
        rest.sort_by(|a, b| {
            let ka = if n == 1 { a.col(0) } else { a.col(1) };
            let kb = if n == 1 { b.col(0) } else { b.col(1) };
            ka.cmp(&kb)
        });
        let mut all = vec![id];
        all.extend(rest);
        // closure under composition
        for a in &all {
            for b in &all {
                let ab = linalg::mat_mul(&Rationals, a, b);
                if !all.contains(&ab) {
                    return Err(FieldError::BadAutomorphism(
                        "set is not closed under composition".into(),
                    ));
                }
            }
        }
        Ok(all)
    }

    /// All automorphisms, identity first, the rest ordered by the power
    /// coordinates of the generator image. Degree 1 and 2 always succeed;
    /// degree 3 succeeds exactly when the discriminant is a rational square.
    pub fn galois_automorphisms(&self) -> Result<Vec<Matrix<Q>>, FieldError> {
        if let Some(a) = &self.automorphisms {
            return Ok(a.clone());
        }
        let n = self.degree;
        let qf = Rationals;
        let roots: Vec<NfElem> = match n {
            1 => vec![self.theta()],
            2 => {
                // f = x^2 + c1 x + c0: the conjugate root is -c1 - th
                let c1 = self.poly.coeffs[1].clone();
                let other = NfElem(vec![-c1, -Q::one()]);
                vec![self.theta(), other]
            }
            3 => {
                let disc = poly::discriminant(&qf, &self.poly);
                let s = rational_sqrt(&disc).ok_or_else(|| {
                    FieldError::NotGalois("discriminant is not a rational square".into())
                })?;
                // For monic cubics with all roots in L the difference of the
                // two conjugate roots is sqrt(disc) / f'(th).
                let fl = poly::poly_map::<Rationals, _>(self, &self.poly, |c| self.from_q(c));
                let theta = self.theta();
                let deriv = poly::poly_derivative(self, &fl);
                let fp = poly::poly_eval(self, &deriv, &theta);
                if self.is_zero(&fp) {
                    return Err(FieldError::NotGalois(
                        "derivative vanishes at the generator".into(),
                    ));
                }
                let z = self.mul(&self.from_q(&s), &self.inv(&fp));
                // g = f / (x - th) = x^2 + B x + C
                let lin = poly::poly(self, vec![self.neg(&theta), self.one()]);
                let (g, rem) = poly::poly_divrem(self, &fl, &lin);
                debug_assert!(rem.is_zero());
                let b = g.coeffs[1].clone();
                let half = self.from_q(&Q::new(BigInt::one(), BigInt::from(2)));
                let r1 = self.mul(&half, &self.add(&self.neg(&b), &z));
                let r2 = self.mul(&half, &self.sub(&self.neg(&b), &z));
                for r in [&r1, &r2] {
                    if !self.is_zero(&poly::poly_eval(self, &fl, r)) {
                        return Err(FieldError::NotGalois(
                            "conjugate candidate is not a root".into(),
                        ));
                    }
                }
                if r1 == r2 || r1 == theta || r2 == theta {
                    return Err(FieldError::NotGalois("roots are not distinct".into()));
                }
                vec![theta, r1, r2]
            }
            _ => return Err(FieldError::UnsupportedDegree(n)),
        };
        let mats: Vec<Matrix<Q>> = roots.iter().map(|r| self.power_matrix(r)).collect();
        for m in &mats {
            self.check_automorphism(m)?;
        }
        self.sort_automorphisms(mats)
    }

    /// Matrix of the ring endomorphism sending th to y, columns y^0 .. y^(n-1).
    fn power_matrix(&self, y: &NfElem) -> Matrix<Q> {
        let mut cols = Vec::with_capacity(self.degree);
        let mut pow = self.one();
        for _ in 0..self.degree {
            cols.push(pow.0.clone());
            pow = self.mul(&pow, y);
        }
        Matrix::from_cols(self.degree, cols)
    }

    pub fn apply_matrix(&self, m: &Matrix<Q>, x: &NfElem) -> NfElem {
        NfElem(linalg::apply(&Rationals, m, &x.0))
    }
}

fn rational_sqrt(x: &Q) -> Option<Q> {
    if x.is_negative() {
        return None;
    }
    let ns = x.numer().sqrt();
    let ds = x.denom().sqrt();
    if &(&ns * &ns) == x.numer() && &(&ds * &ds) == x.denom() {
        Some(Q::new(ns, ds))
    } else {
        None
    }
}

impl Field for NumberField {
    type Elem = NfElem;

    fn zero(&self) -> NfElem {
        NfElem(vec![Q::zero(); self.degree])
    }
    fn one(&self) -> NfElem {
        let mut v = vec![Q::zero(); self.degree];
        v[0] = Q::one();
        NfElem(v)
    }
    fn add(&self, a: &NfElem, b: &NfElem) -> NfElem {
        NfElem(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect())
    }
    fn neg(&self, a: &NfElem) -> NfElem {
        NfElem(a.0.iter().map(|x| -x).collect())
    }
    fn mul(&self, a: &NfElem, b: &NfElem) -> NfElem {
        let n = self.degree;
        let mut long = vec![Q::zero(); 2 * n - 1];
        for (i, x) in a.0.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.0.iter().enumerate() {
                long[i + j] += x * y;
            }
        }
        NfElem(self.reduce(long))
    }
    fn inv(&self, a: &NfElem) -> NfElem {
        assert!(!self.is_zero(a), "inverse of zero");
        let qf = Rationals;
        let (g, u, _) = poly_xgcd(&qf, &self.as_poly(a), &self.poly);
        assert!(
            g.degree() == Some(0),
            "zero divisor: the defining polynomial is reducible"
        );
        let c = qf.inv(&g.coeffs[0]);
        let scaled = poly::poly_scale(&qf, &c, &u);
        let mut coords = scaled.coeffs;
        coords.resize(self.degree, Q::zero());
        NfElem(self.reduce(coords))
    }
    fn is_zero(&self, a: &NfElem) -> bool {
        a.0.iter().all(|x| x.is_zero())
    }
    fn from_q(&self, x: &Q) -> NfElem {
        let mut v = vec![Q::zero(); self.degree];
        v[0] = x.clone();
        NfElem(v)
    }
    fn render(&self, a: &NfElem) -> String {
        let parts: Vec<String> = a.0.iter().map(format_q).collect();
        format!("[{}]", parts.join(", "))
    }
}

/// Extended gcd for polynomials: returns (g, u, v) with u a + v b = g.
pub fn poly_xgcd<F: Field>(
    f: &F,
    a: &Poly<F::Elem>,
    b: &Poly<F::Elem>,
) -> (Poly<F::Elem>, Poly<F::Elem>, Poly<F::Elem>) {
    let one = poly::poly(f, vec![f.one()]);
    let zero = poly::poly_zero();
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (one.clone(), zero.clone());
    let (mut t0, mut t1) = (zero, one);
    while !r1.is_zero() {
        let (q, r) = poly::poly_divrem(f, &r0, &r1);
        let s = poly::poly_sub(f, &s0, &poly::poly_mul(f, &q, &s1));
        let t = poly::poly_sub(f, &t0, &poly::poly_mul(f, &q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    (r0, s0, t0)
}

/// Embedding of one number field into another, given by the image of the
/// source generator. Verified to kill the source defining polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct NfEmbedding {
    pub theta_image: NfElem,
}

pub fn make_embedding(
    src: &NumberField,
    dst: &NumberField,
    theta_image: NfElem,
) -> Result<NfEmbedding, FieldError> {
    let f = poly::poly_map::<Rationals, _>(dst, src.defining_poly(), |c| dst.from_q(c));
    if !dst.is_zero(&poly::poly_eval(dst, &f, &theta_image)) {
        return Err(FieldError::EmbeddingInvalid(
            "generator image is not a root of the source polynomial".into(),
        ));
    }
    Ok(NfEmbedding { theta_image })
}

pub fn identity_embedding(l: &NumberField) -> NfEmbedding {
    NfEmbedding {
        theta_image: l.theta(),
    }
}

pub fn embed(src: &NumberField, dst: &NumberField, emb: &NfEmbedding, x: &NfElem) -> NfElem {
    assert_eq!(
        x.0.len(),
        src.degree(),
        "element is not from the source field"
    );
    let p = poly::poly(&Rationals, x.0.clone());
    let pd = poly::poly_map::<Rationals, _>(dst, &p, |c| dst.from_q(c));
    poly::poly_eval(dst, &pd, &emb.theta_image)
}

// ---------------------------------------------------------------------------
// The splitting map L (x)_Q L -> prod_sigma L, a (x) b |-> (sigma(a) b)_sigma.
// Tensor coordinates are indexed by (i, k) -> i * n + k over the designated
// basis, and the codomain rows by (sigma, m) -> sigma * n + m.
// ---------------------------------------------------------------------------

pub fn splitting_matrix(l: &NumberField) -> Result<Matrix<Q>, FieldError> {
    let n = l.degree();
    let autos = l.galois_automorphisms()?;
    let mut m = Matrix::filled(n * n, n * n, Q::zero());
    for (s, auto) in autos.iter().enumerate() {
        for i in 0..n {
            let sig_vi = l.apply_matrix(auto, &l.basis_vector(i));
            for k in 0..n {
                let prod = l.mul(&sig_vi, &l.basis_vector(k));
                let coords = l.to_designated(&prod);
                for (w, c) in coords.into_iter().enumerate() {
                    m.set(s * n + w, i * n + k, c);
                }
            }
        }
    }
    Ok(m)
}

/// Coordinates (in the v_i (x) v_k basis) of the tensor mapping to the
/// indicator of component sigma.
pub fn idempotent_preimage(l: &NumberField, sigma: usize) -> Result<Vec<Q>, FieldError> {
    let n = l.degree();
    let s = splitting_matrix(l)?;
    let mut target = vec![Q::zero(); n * n];
    target[sigma * n] = Q::one(); // the element 1 = v_1 in copy sigma
    linalg::solve(&Rationals, &s, &target)
        .ok_or_else(|| FieldError::NotGalois("splitting matrix is singular".into()))
}

/// Product in L (x)_Q L on designated-basis coordinates.
pub fn tensor_mul(l: &NumberField, a: &[Q], b: &[Q]) -> Vec<Q> {
    let n = l.degree();
    assert_eq!(a.len(), n * n);
    assert_eq!(b.len(), n * n);
    let mut out = vec![Q::zero(); n * n];
    for i in 0..n {
        for k in 0..n {
            let x = &a[i * n + k];
            if x.is_zero() {
                continue;
            }
            for j in 0..n {
                for w in 0..n {
                    let y = &b[j * n + w];
                    if y.is_zero() {
                        continue;
                    }
                    let left = l.mul(&l.basis_vector(i), &l.basis_vector(j));
                    let right = l.mul(&l.basis_vector(k), &l.basis_vector(w));
                    let lc = l.to_designated(&left);
                    let rc = l.to_designated(&right);
                    let xy = x * y;
                    for (m, lm) in lc.iter().enumerate() {
                        if lm.is_zero() {
                            continue;
                        }
                        for (u, ru) in rc.iter().enumerate() {
                            out[m * n + u] += &xy * lm * ru;
                        }
                    }
                }
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// p-adic valuations, normalized so v(p) = 1. Beyond Q itself only quadratic
// fields with p inert or ramified are supported; a split p has two
// incompatible extensions and is rejected.
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq)]
pub enum Val {
    Finite(Q),
    Infinite,
}

impl Val {
    pub fn finite(&self) -> Option<&Q> {
        match self {
            Val::Finite(q) => Some(q),
            Val::Infinite => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PAdicValuation {
    pub p: u64,
}

impl PAdicValuation {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if !crate::ring::is_prime(p) {
            return Err(FieldError::ValuationUnavailable(format!(
                "{p} is not prime"
            )));
        }
        Ok(PAdicValuation { p })
    }

    pub fn of_rational(&self, x: &Q) -> Val {
        match vp_rat(x, self.p) {
            None => Val::Infinite,
            Some(v) => Val::Finite(qi(v)),
        }
    }

    /// Valuation on a number field where it is unambiguous: Q itself, or a
    /// quadratic field in which p does not split. There v = v_p(Norm)/2.
    pub fn of_field_elem(&self, l: &NumberField, x: &NfElem) -> Result<Val, FieldError> {
        match l.degree() {
            1 => Ok(self.of_rational(&x.0[0])),
            2 => {
                let c1 = &l.defining_poly().coeffs[1];
                let c0 = &l.defining_poly().coeffs[0];
                let disc = c1 * c1 - qi(4) * c0;
                if self.splits_in_quadratic(&disc)? {
                    return Err(FieldError::ValuationUnavailable(format!(
                        "{} splits in this field",
                        self.p
                    )));
                }
                // N(x0 + x1 th) = x0^2 - c1 x0 x1 + c0 x1^2
                let (x0, x1) = (&x.0[0], &x.0[1]);
                let norm = x0 * x0 - c1 * x0 * x1 + c0 * x1 * x1;
                match vp_rat(&norm, self.p) {
                    None => Ok(Val::Infinite),
                    Some(v) => Ok(Val::Finite(Q::new(BigInt::from(v), BigInt::from(2)))),
                }
            }
            n => Err(FieldError::ValuationUnavailable(format!(
                "no canonical valuation at degree {n}"
            ))),
        }
    }

    /// Does x^2 = disc have a root in Q_p? Zero and square discriminants are
    /// degenerate (the ring is not a field) and reported as split.
    fn splits_in_quadratic(&self, disc: &Q) -> Result<bool, FieldError> {
        if disc.is_zero() {
            return Ok(true);
        }
        let v = vp_rat(disc, self.p).unwrap();
        if v.rem_euclid(2) == 1 {
            return Ok(false); // odd valuation: ramified
        }
        let p = BigInt::from(self.p);
        let pv = p.pow(v.unsigned_abs() as u32);
        let unit = if v >= 0 {
            disc / Q::from_integer(pv)
        } else {
            disc * Q::from_integer(pv)
        };
        if self.p == 2 {
            let m = BigInt::from(8);
            let num = unit.numer().mod_floor(&m);
            let den = unit.denom().mod_floor(&m);
            // an odd b satisfies b^2 = 1 mod 8, so 1/b = b there
            let res = (num * den).mod_floor(&m);
            Ok(res == BigInt::one())
        } else {
            let num = unit.numer().mod_floor(&p);
            let den = unit.denom().mod_floor(&p);
            let den_inv = den.modpow(&(&p - 2), &p);
            let res = (num * den_inv).mod_floor(&p);
            let exp = (&p - 1) / 2;
            Ok(res.modpow(&exp, &p) == BigInt::one())
        }
    }
}

fn vp_or_skip(v: &PAdicValuation, l: &NumberField, x: &NfElem) -> Result<Option<Q>, FieldError> {
    match v.of_field_elem(l, x)? {
        Val::Infinite => Ok(None),
        Val::Finite(q) => Ok(Some(q)),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SigmaBound {
    /// log_p of the bound attached to the sigma-idempotent.
    pub log_s: Q,
    /// Whether the bound is <= 1, i.e. log_s <= 0.
    pub at_most_one: bool,
}

/// Bound from the idempotent preimage sum_{i,k} x_{ik} v_i (x) v_k: the max
/// over summands and coordinates of -v_p(x_{ik} v_i) - v_p(b^(m)), where
/// b^(m) are the designated-basis coordinates of v_k.
pub fn s_sigma(l: &NumberField, sigma: usize, p: u64) -> Result<SigmaBound, FieldError> {
    let val = PAdicValuation::new(p)?;
    let n = l.degree();
    let e = idempotent_preimage(l, sigma)?;
    let mut best: Option<Q> = None;
    for i in 0..n {
        for k in 0..n {
            let x = &e[i * n + k];
            if x.is_zero() {
                continue;
            }
            let a = l.mul(&l.from_q(x), &l.basis_vector(i));
            let Some(va) = vp_or_skip(&val, l, &a)? else {
                continue;
            };
            let b_coords = l.to_designated(&l.basis_vector(k));
            for bm in &b_coords {
                if bm.is_zero() {
                    continue;
                }
                let vb = qi(vp_rat(bm, p).unwrap());
                let term = -&va - vb;
                if best.as_ref().is_none_or(|b| term > *b) {
                    best = Some(term);
                }
            }
        }
    }
    let log_s = best.expect("idempotent preimage cannot be zero");
    let at_most_one = log_s <= Q::zero();
    Ok(SigmaBound { log_s, at_most_one })
}
