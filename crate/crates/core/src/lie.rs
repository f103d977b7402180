//! Lie algebras presented by structure constants over a field context,
//! modules over them, restriction of scalars along a number field, and the
//! kernel ideals of the multiplication map K (x)_Q g_0 -> K (x)_L g.

use crate::field_tower::{embed, NfElem, NfEmbedding, NumberField};
use crate::linalg::{self, Matrix};
use crate::ring::{Field, Rationals, Q};
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum LieError {
    #[error("antisymmetry violated at entry ({0}, {1}, {2})")]
    AntisymmetryViolated(usize, usize, usize),
    #[error("Jacobi identity violated at triple ({0}, {1}, {2})")]
    JacobiViolated(usize, usize, usize),
    #[error("module axiom violated at pair ({0}, {1})")]
    NotAModule(usize, usize),
    #[error("values do not vanish on the derived subalgebra")]
    NotACharacter,
    #[error("unknown catalog name: {0}")]
    UnknownName(String),
    #[error("span is not closed under the bracket")]
    NotClosed,
    #[error("candidate basis is linearly dependent")]
    DependentBasis,
    #[error("structure constant table has the wrong shape")]
    BadShape,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebra<F: Field> {
    field: F,
    dim: usize,
    /// c[i][j][k], flattened as (i * dim + j) * dim + k.
    sc: Vec<F::Elem>,
    labels: Vec<String>,
}

impl<F: Field> LieAlgebra<F> {
    /// Builds and validates. The table is indexed [i][j][k] with
    /// [x_i, x_j] = sum_k c[i][j][k] x_k.
    pub fn from_dense(
        field: F,
        labels: Vec<String>,
        table: Vec<Vec<Vec<F::Elem>>>,
    ) -> Result<Self, LieError> {
        let dim = labels.len();
        if table.len() != dim
            || table
                .iter()
                .any(|p| p.len() != dim || p.iter().any(|r| r.len() != dim))
        {
            return Err(LieError::BadShape);
        }
        let mut sc = Vec::with_capacity(dim * dim * dim);
        for plane in table {
            for row in plane {
                sc.extend(row);
            }
        }
        let alg = LieAlgebra {
            field,
            dim,
            sc,
            labels,
        };
        alg.validate()?;
        Ok(alg)
    }

    /// Sparse constructor: triples (i, j, k, c) with i < j; the (j, i, k)
    /// entries are filled in by antisymmetry.
    pub fn from_sparse(
        field: F,
        labels: Vec<String>,
        triples: &[(usize, usize, usize, F::Elem)],
    ) -> Result<Self, LieError> {
        let dim = labels.len();
        let mut sc = vec![field.zero(); dim * dim * dim];
        for (i, j, k, c) in triples {
            if *i >= *j || *j >= dim || *k >= dim {
                return Err(LieError::BadShape);
            }
            let idx = (i * dim + j) * dim + k;
            sc[idx] = field.add(&sc[idx], c);
            let idx = (j * dim + i) * dim + k;
            sc[idx] = field.sub(&sc[idx], c);
        }
        let alg = LieAlgebra {
            field,
            dim,
            sc,
            labels,
        };
        alg.validate()?;
        Ok(alg)
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn c(&self, i: usize, j: usize, k: usize) -> &F::Elem {
        &self.sc[(i * self.dim + j) * self.dim + k]
    }

    fn set_c(&mut self, i: usize, j: usize, k: usize, v: F::Elem) {
        self.sc[(i * self.dim + j) * self.dim + k] = v;
    }

    /// Bracket of coordinate vectors.
    pub fn bracket(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut out = vec![f.zero(); self.dim];
        for (i, xi) in x.iter().enumerate() {
            if f.is_zero(xi) {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if f.is_zero(yj) {
                    continue;
                }
                let s = f.mul(xi, yj);
                for k in 0..self.dim {
                    let c = self.c(i, j, k);
                    if !f.is_zero(c) {
                        out[k] = f.add(&out[k], &f.mul(&s, c));
                    }
                }
            }
        }
        out
    }

    /// Matrix of ad(x_i) on the algebra itself.
    pub fn ad(&self, i: usize) -> Matrix<F::Elem> {
        let f = &self.field;
        let mut m = linalg::zero_matrix(f, self.dim, self.dim);
        for j in 0..self.dim {
            for k in 0..self.dim {
                m.set(k, j, self.c(i, j, k).clone());
            }
        }
        m
    }

    /// Exhaustive antisymmetry and Jacobi checks; errors carry the indices
    /// of the first offending entry or triple.
    pub fn validate(&self) -> Result<(), LieError> {
        let f = &self.field;
        let d = self.dim;
        for i in 0..d {
            for j in i..d {
                for k in 0..d {
                    let sum = f.add(self.c(i, j, k), self.c(j, i, k));
                    if !f.is_zero(&sum) {
                        return Err(LieError::AntisymmetryViolated(i, j, k));
                    }
                }
            }
        }
        for i in 0..d {
            for j in i + 1..d {
                for l in j + 1..d {
                    for w in 0..d {
                        let mut acc = f.zero();
                        for m in 0..d {
                            acc = f.add(&acc, &f.mul(self.c(i, j, m), self.c(m, l, w)));
                            acc = f.add(&acc, &f.mul(self.c(j, l, m), self.c(m, i, w)));
                            acc = f.add(&acc, &f.mul(self.c(l, i, m), self.c(m, j, w)));
                        }
                        if !f.is_zero(&acc) {
                            return Err(LieError::JacobiViolated(i, j, l));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Copy with one table entry replaced, unvalidated. Test hook for
    /// corruption sweeps.
    pub fn with_entry(&self, i: usize, j: usize, k: usize, v: F::Elem) -> Self {
        let mut out = self.clone();
        out.set_c(i, j, k, v);
        out
    }
}

// ---------------------------------------------------------------------------
// Modules
// ---------------------------------------------------------------------------

/// Left module given by one action matrix per algebra basis vector.
#[derive(Clone, Debug, PartialEq)]
pub struct LieModule<F: Field> {
    dim: usize,
    action: Vec<Matrix<F::Elem>>,
}

impl<F: Field> LieModule<F> {
    pub fn new(alg: &LieAlgebra<F>, action: Vec<Matrix<F::Elem>>) -> Result<Self, LieError> {
        let f = alg.field();
        if action.len() != alg.dim() {
            return Err(LieError::BadShape);
        }
        let m = action.first().map_or(0, Matrix::rows);
        if action.iter().any(|a| a.rows() != m || a.cols() != m) {
            return Err(LieError::BadShape);
        }
        for i in 0..alg.dim() {
            for j in i + 1..alg.dim() {
                let comm = linalg::mat_sub(
                    f,
                    &linalg::mat_mul(f, &action[i], &action[j]),
                    &linalg::mat_mul(f, &action[j], &action[i]),
                );
                let mut lhs = linalg::zero_matrix(f, m, m);
                for k in 0..alg.dim() {
                    let c = alg.c(i, j, k);
                    if !f.is_zero(c) {
                        lhs = linalg::mat_add(f, &lhs, &linalg::mat_scale(f, c, &action[k]));
                    }
                }
                if lhs != comm {
                    return Err(LieError::NotAModule(i, j));
                }
            }
        }
        Ok(LieModule { dim: m, action })
    }

    pub fn trivial(alg: &LieAlgebra<F>, m: usize) -> Self {
        LieModule {
            dim: m,
            action: vec![linalg::zero_matrix(alg.field(), m, m); alg.dim()],
        }
    }

    pub fn adjoint(alg: &LieAlgebra<F>) -> Self {
        // valid by the Jacobi identity, already checked on the algebra
        LieModule {
            dim: alg.dim(),
            action: (0..alg.dim()).map(|i| alg.ad(i)).collect(),
        }
    }

    /// Dual module: x acts by minus the transpose.
    pub fn dual(&self, f: &F) -> Self {
        LieModule {
            dim: self.dim,
            action: self
                .action
                .iter()
                .map(|a| a.transpose().map(|e| f.neg(e)))
                .collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rho(&self, i: usize) -> &Matrix<F::Elem> {
        &self.action[i]
    }
}

/// Values of a differential character on the algebra basis.
#[derive(Clone, Debug, PartialEq)]
pub struct DifferentialCharacter<F: Field> {
    pub values: Vec<F::Elem>,
}

impl<F: Field> DifferentialCharacter<F> {
    pub fn zero(alg: &LieAlgebra<F>) -> Self {
        DifferentialCharacter {
            values: vec![alg.field().zero(); alg.dim()],
        }
    }

    /// Must kill every bracket; equivalent to vanishing on the derived
    /// subalgebra.
    pub fn validate(&self, alg: &LieAlgebra<F>) -> Result<(), LieError> {
        let f = alg.field();
        if self.values.len() != alg.dim() {
            return Err(LieError::BadShape);
        }
        for i in 0..alg.dim() {
            for j in i + 1..alg.dim() {
                let mut acc = f.zero();
                for k in 0..alg.dim() {
                    acc = f.add(&acc, &f.mul(alg.c(i, j, k), &self.values[k]));
                }
                if !f.is_zero(&acc) {
                    return Err(LieError::NotACharacter);
                }
            }
        }
        Ok(())
    }
}

/// One-dimensional module with x_i acting by the given scalar.
pub fn one_dim_module<F: Field>(
    alg: &LieAlgebra<F>,
    chi: &DifferentialCharacter<F>,
) -> Result<LieModule<F>, LieError> {
    chi.validate(alg)?;
    let action = chi
        .values
        .iter()
        .map(|v| Matrix::new(1, 1, vec![v.clone()]))
        .collect();
    Ok(LieModule { dim: 1, action })
}

// ---------------------------------------------------------------------------
// Subalgebras
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct Subalgebra<F: Field> {
    /// Columns are the basis vectors in parent coordinates.
    pub basis: Matrix<F::Elem>,
    /// Structure constants induced on that basis.
    pub induced: LieAlgebra<F>,
    /// Whether [parent, span] lands back in the span.
    pub is_ideal: bool,
}

impl<F: Field> Subalgebra<F> {
    pub fn dim(&self) -> usize {
        self.basis.cols()
    }
}

/// Checks independence and bracket closure, computes induced constants and
/// the ideal flag.
pub fn subalgebra_from_basis<F: Field>(
    parent: &LieAlgebra<F>,
    basis: Matrix<F::Elem>,
    labels: Vec<String>,
) -> Result<Subalgebra<F>, LieError> {
    let f = parent.field();
    let k = basis.cols();
    assert_eq!(basis.rows(), parent.dim(), "ambient dimension mismatch");
    if linalg::rank(f, &basis) != k {
        return Err(LieError::DependentBasis);
    }
    let mut table = vec![vec![vec![f.zero(); k]; k]; k];
    for a in 0..k {
        for b in 0..k {
            if a == b {
                continue;
            }
            let br = parent.bracket(&basis.col(a), &basis.col(b));
            let coords = linalg::solve(f, &basis, &br).ok_or(LieError::NotClosed)?;
            table[a][b] = coords;
        }
    }
    let induced = LieAlgebra::from_dense(f.clone(), labels, table)?;
    let mut is_ideal = true;
    'outer: for i in 0..parent.dim() {
        let mut e = vec![f.zero(); parent.dim()];
        e[i] = f.one();
        for b in 0..k {
            let br = parent.bracket(&e, &basis.col(b));
            if linalg::solve(f, &basis, &br).is_none() {
                is_ideal = false;
                break 'outer;
            }
        }
    }
    Ok(Subalgebra {
        basis,
        induced,
        is_ideal,
    })
}

/// Span of all brackets, as a subalgebra (it is automatically an ideal).
pub fn derived_subalgebra<F: Field>(g: &LieAlgebra<F>) -> Subalgebra<F> {
    let f = g.field();
    let d = g.dim();
    let mut cols = Vec::new();
    for i in 0..d {
        for j in i + 1..d {
            cols.push((0..d).map(|k| g.c(i, j, k).clone()).collect());
        }
    }
    let m = Matrix::from_cols(d, cols);
    let basis = linalg::column_space_basis(f, &m);
    let labels = (0..basis.cols()).map(|i| format!("d{i}")).collect();
    subalgebra_from_basis(g, basis, labels).expect("derived span is always closed")
}

/// Elements commuting with everything.
pub fn center<F: Field>(g: &LieAlgebra<F>) -> Subalgebra<F> {
    let f = g.field();
    let d = g.dim();
    // rows indexed by (j, k): sum_i x_i c[i][j][k] = 0
    let mut m = linalg::zero_matrix(f, d * d, d);
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                m.set(j * d + k, i, g.c(i, j, k).clone());
            }
        }
    }
    let basis = linalg::kernel_basis(f, &m);
    let labels = (0..basis.cols()).map(|i| format!("z{i}")).collect();
    subalgebra_from_basis(g, basis, labels).expect("center is always closed")
}

/// g = g_1, g_{k+1} = [g, g_k], until the dimension stabilizes.
pub fn lower_central_series<F: Field>(g: &LieAlgebra<F>) -> Vec<Subalgebra<F>> {
    let f = g.field();
    let d = g.dim();
    let full = linalg::identity(f, d);
    let mut series = Vec::new();
    let mut current = full.clone();
    loop {
        let mut cols = Vec::new();
        for i in 0..d {
            let mut e = vec![f.zero(); d];
            e[i] = f.one();
            for b in 0..current.cols() {
                cols.push(g.bracket(&e, &current.col(b)));
            }
        }
        let next = if cols.is_empty() {
            linalg::zero_matrix(f, d, 0)
        } else {
            linalg::column_space_basis(f, &Matrix::from_cols(d, cols))
        };
        let stop = next.cols() == current.cols() && !series.is_empty();
        let labels = (0..next.cols()).map(|i| format!("c{i}")).collect();
        let sub =
            subalgebra_from_basis(g, next.clone(), labels).expect("lower central terms are closed");
        let dim = sub.dim();
        series.push(sub);
        if stop || dim == 0 {
            break;
        }
        current = next;
    }
    series
}

pub fn is_nilpotent<F: Field>(g: &LieAlgebra<F>) -> bool {
    lower_central_series(g)
        .last()
        .map_or(true, |s| s.dim() == 0)
}

/// kappa(x_i, x_j) = tr(ad x_i ad x_j).
pub fn killing_form<F: Field>(g: &LieAlgebra<F>) -> Matrix<F::Elem> {
    let f = g.field();
    let d = g.dim();
    let ads: Vec<Matrix<F::Elem>> = (0..d).map(|i| g.ad(i)).collect();
    let mut m = linalg::zero_matrix(f, d, d);
    for i in 0..d {
        for j in 0..d {
            let prod = linalg::mat_mul(f, &ads[i], &ads[j]);
            let mut tr = f.zero();
            for r in 0..d {
                tr = f.add(&tr, prod.at(r, r));
            }
            m.set(i, j, tr);
        }
    }
    m
}

/// Nondegenerate Killing form. The zero algebra counts as semisimple.
pub fn is_semisimple<F: Field>(g: &LieAlgebra<F>) -> bool {
    linalg::rank(g.field(), &killing_form(g)) == g.dim()
}

// ---------------------------------------------------------------------------
// Restriction of scalars and kernel ideals
// ---------------------------------------------------------------------------

/// g over L becomes g_0 over Q on the basis {v_i x_j}, ordered with j (the
/// L-basis index) outermost: index (j, i) -> j n + i.
pub fn restrict_scalars(g: &LieAlgebra<NumberField>) -> LieAlgebra<Rationals> {
    let l = g.field();
    let n = l.degree();
    let d = g.dim();
    let dim = n * d;
    let mut table = vec![vec![vec![Q::zero(); dim]; dim]; dim];
    for j in 0..d {
        for i in 0..n {
            for ll in 0..d {
                for k in 0..n {
                    // [v_i x_j, v_k x_l] = (v_i v_k) [x_j, x_l]
                    let prod = l.mul(&l.basis_vector(i), &l.basis_vector(k));
                    for m in 0..d {
                        let c = g.c(j, ll, m);
                        if l.is_zero(c) {
                            continue;
                        }
                        let coeff = l.mul(&prod, c);
                        let coords = l.to_designated(&coeff);
                        for (w, cw) in coords.into_iter().enumerate() {
                            if !cw.is_zero() {
                                table[j * n + i][ll * n + k][m * n + w] += cw;
                            }
                        }
                    }
                }
            }
        }
    }
    let labels = (0..d)
        .flat_map(|j| (0..n).map(move |i| (j, i)))
        .map(|(j, i)| format!("v{}.{}", i + 1, g.labels()[j]))
        .collect();
    LieAlgebra::from_dense(Rationals, labels, table).expect("restriction preserves the axioms")
}

/// Constants mapped through the canonical embedding Q -> K.
pub fn base_change_q(g: &LieAlgebra<Rationals>, k: &NumberField) -> LieAlgebra<NumberField> {
    let d = g.dim();
    let mut table = vec![vec![vec![k.zero(); d]; d]; d];
    for i in 0..d {
        for j in 0..d {
            for w in 0..d {
                table[i][j][w] = k.from_q(g.c(i, j, w));
            }
        }
    }
    LieAlgebra::from_dense(k.clone(), g.labels().to_vec(), table)
        .expect("base change preserves the axioms")
}

/// Constants mapped through a verified embedding L -> K.
pub fn base_change_nf(
    g: &LieAlgebra<NumberField>,
    dst: &NumberField,
    emb: &NfEmbedding,
) -> LieAlgebra<NumberField> {
    let src = g.field();
    let d = g.dim();
    let mut table = vec![vec![vec![dst.zero(); d]; d]; d];
    for i in 0..d {
        for j in 0..d {
            for w in 0..d {
                table[i][j][w] = embed(src, dst, emb, g.c(i, j, w));
            }
        }
    }
    LieAlgebra::from_dense(dst.clone(), g.labels().to_vec(), table)
        .expect("base change preserves the axioms")
}

/// The kernel ideal of K (x)_Q g_0 -> K (x)_L g together with its ambient
/// algebra. `twist` optionally precomposes the scalar side with an
/// automorphism of L (given in power-basis coordinates).
pub struct KernelIdeal {
    /// K (x)_Q g_0.
    pub ambient: LieAlgebra<NumberField>,
    pub sub: Subalgebra<NumberField>,
}

pub fn kernel_ideal(
    g: &LieAlgebra<NumberField>,
    k: &NumberField,
    emb: &NfEmbedding,
) -> Result<KernelIdeal, LieError> {
    kernel_ideal_twisted(g, k, emb, None)
}

pub fn sigma_kernel_ideal(
    g: &LieAlgebra<NumberField>,
    k: &NumberField,
    emb: &NfEmbedding,
    sigma: &Matrix<Q>,
) -> Result<KernelIdeal, LieError> {
    kernel_ideal_twisted(g, k, emb, Some(sigma))
}

fn kernel_ideal_twisted(
    g: &LieAlgebra<NumberField>,
    k: &NumberField,
    emb: &NfEmbedding,
    twist: Option<&Matrix<Q>>,
) -> Result<KernelIdeal, LieError> {
    let l = g.field();
    let n = l.degree();
    let d = g.dim();
    let g0 = restrict_scalars(g);
    let ambient = base_change_q(&g0, k);

    // multiplication map K^{nd} -> K^d: (j, i) column has iota(sigma(v_i))
    // in row j
    let twisted_v = |i: usize| -> NfElem {
        let v = l.basis_vector(i);
        match twist {
            None => v,
            Some(m) => l.apply_matrix(m, &v),
        }
    };
    let mut mult = linalg::zero_matrix(k, d, n * d);
    for j in 0..d {
        for i in 0..n {
            mult.set(j, j * n + i, embed(l, k, emb, &twisted_v(i)));
        }
    }
    let computed = linalg::kernel_basis(k, &mult);
    assert_eq!(
        computed.cols(),
        (n - 1) * d,
        "kernel has unexpected dimension"
    );

    // normalized generators iota(sigma(v_i)) e_(j,0) - e_(j,i), i >= 1, in
    // (j, i) order; each must already lie in the computed kernel
    let mut cols = Vec::with_capacity((n - 1) * d);
    let mut labels = Vec::with_capacity((n - 1) * d);
    for j in 0..d {
        for i in 1..n {
            let mut v = vec![k.zero(); n * d];
            v[j * n] = embed(l, k, emb, &twisted_v(i));
            v[j * n + i] = k.neg(&k.one());
            debug_assert!(linalg::apply(k, &mult, &v).iter().all(|e| k.is_zero(e)));
            cols.push(v);
            labels.push(format!("{}~{}", g.labels()[j], i + 1));
        }
    }
    let basis = Matrix::from_cols(n * d, cols);
    // same span as the raw kernel
    assert_eq!(
        linalg::span_sum_rank(k, &computed, &basis),
        (n - 1) * d,
        "normalized generators do not span the kernel"
    );
    let sub = subalgebra_from_basis(&ambient, basis, labels)?;
    Ok(KernelIdeal { ambient, sub })
}

// ---------------------------------------------------------------------------
// Catalog
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub algebra: LieAlgebra<Rationals>,
    /// For split solvable entries: the basis is ordered torus first, and
    /// this is the torus dimension.
    pub t_dim: Option<usize>,
}

/// Named algebras: "abelian(n)", "heisenberg(dim)" with odd dim,
/// "heisenberg_scaled(p)", "sl2", "borel_sl2", "borel_sl3".
pub fn catalog(name: &str) -> Result<CatalogEntry, LieError> {
    let (base, arg) = match name.find('(') {
        None => (name, None),
        Some(open) => {
            let close = name
                .rfind(')')
                .filter(|&c| c == name.len() - 1)
                .ok_or_else(|| LieError::UnknownName(name.into()))?;
            let arg: i64 = name[open + 1..close]
                .parse()
                .map_err(|_| LieError::UnknownName(name.into()))?;
            (&name[..open], Some(arg))
        }
    };
    let f = Rationals;
    let one = Q::from_integer(1.into());
    let entry = |alg, t_dim| CatalogEntry {
        name: name.to_string(),
        algebra: alg,
        t_dim,
    };
    match (base, arg) {
        ("abelian", Some(n)) if n >= 0 => {
            let n = n as usize;
            let labels = (0..n).map(|i| format!("x{}", i + 1)).collect();
            let alg = LieAlgebra::from_sparse(f, labels, &[]).unwrap();
            Ok(entry(alg, None))
        }
        ("heisenberg", Some(dim)) if dim >= 3 && dim % 2 == 1 => {
            let m = (dim as usize - 1) / 2;
            let mut labels: Vec<String> = (0..m).map(|i| format!("x{}", i + 1)).collect();
            labels.extend((0..m).map(|i| format!("y{}", i + 1)));
            labels.push("z".into());
            let triples: Vec<_> = (0..m).map(|i| (i, m + i, 2 * m, one.clone())).collect();
            let alg = LieAlgebra::from_sparse(f, labels, &triples).unwrap();
            Ok(entry(alg, None))
        }
        ("heisenberg_scaled", Some(p)) if p >= 2 && crate::ring::is_prime(p as u64) => {
            let kappa = if p == 2 { 2 } else { 1 };
            let scale = Q::from_integer(p.pow(kappa).into());
            let labels = vec!["x1".into(), "y1".into(), "z".into()];
            let alg = LieAlgebra::from_sparse(f, labels, &[(0, 1, 2, scale)]).unwrap();
            Ok(entry(alg, None))
        }
        ("sl2", None) => {
            let labels = vec!["h".into(), "e".into(), "f".into()];
            let two = Q::from_integer(2.into());
            let triples = vec![
                (0, 1, 1, two.clone()), // [h, e] = 2e
                (0, 2, 2, -two),        // [h, f] = -2f
                (1, 2, 0, one.clone()), // [e, f] = h
            ];
            let alg = LieAlgebra::from_sparse(f, labels, &triples).unwrap();
            Ok(entry(alg, None))
        }
        ("borel_sl2", None) => {
            let labels = vec!["t".into(), "u".into()];
            let two = Q::from_integer(2.into());
            let alg = LieAlgebra::from_sparse(f, labels, &[(0, 1, 1, two)]).unwrap();
            Ok(entry(alg, Some(1)))
        }
        ("borel_sl3", None) => {
            // t1 = E11 - E22, t2 = E22 - E33, u12, u13, u23
            let labels = vec![
                "t1".into(),
                "t2".into(),
                "u12".into(),
                "u13".into(),
                "u23".into(),
            ];
            let two = Q::from_integer(2.into());
            let triples = vec![
                (0, 2, 2, two.clone()),  // [t1, u12] = 2 u12
                (0, 3, 3, one.clone()),  // [t1, u13] = u13
                (0, 4, 4, -one.clone()), // [t1, u23] = -u23
                (1, 2, 2, -one.clone()), // [t2, u12] = -u12
                (1, 3, 3, one.clone()),  // [t2, u13] = u13
                (1, 4, 4, two),          // [t2, u23] = 2 u23
                (2, 4, 3, one.clone()),  // [u12, u23] = u13
            ];
            let alg = LieAlgebra::from_sparse(f, labels, &triples).unwrap();
            Ok(entry(alg, Some(2)))
        }
        _ => Err(LieError::UnknownName(name.into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field_tower::{identity_embedding, validate_field, FieldSpec};
    use crate::ring::qi;

    fn sqrt2() -> NumberField {
        validate_field(&FieldSpec::galois_from_int_poly(&[-2, 0, 1])).unwrap()
    }

    fn cyclic3() -> NumberField {
        validate_field(&FieldSpec::galois_from_int_poly(&[1, -2, -1, 1])).unwrap()
    }

    #[test]
    fn catalog_entries_validate() {
        for name in [
            "abelian(0)",
            "abelian(4)",
            "heisenberg(3)",
            "heisenberg(5)",
            "heisenberg_scaled(3)",
            "heisenberg_scaled(2)",
            "sl2",
            "borel_sl2",
            "borel_sl3",
        ] {
            let e = catalog(name).unwrap();
            assert!(e.algebra.validate().is_ok(), "{name}");
        }
        assert!(matches!(catalog("so3"), Err(LieError::UnknownName(_))));
        assert!(matches!(
            catalog("heisenberg(4)"),
            Err(LieError::UnknownName(_))
        ));
    }

    #[test]
    fn corruption_is_detected() {
        let sl2 = catalog("sl2").unwrap().algebra;
        // single-entry edit: breaks antisymmetry
        let bad = sl2.with_entry(0, 1, 1, qi(3));
        assert_eq!(
            bad.validate().unwrap_err(),
            LieError::AntisymmetryViolated(0, 1, 1)
        );
        // paired edit [e, f] = e: antisymmetric but not Jacobi
        let bad = sl2.with_entry(1, 2, 0, qi(0)).with_entry(2, 1, 0, qi(0));
        let bad = bad.with_entry(1, 2, 1, qi(1)).with_entry(2, 1, 1, qi(-1));
        assert_eq!(
            bad.validate().unwrap_err(),
            LieError::JacobiViolated(0, 1, 2)
        );
    }

    #[test]
    fn structure_probes() {
        let f = Rationals;
        let sl2 = catalog("sl2").unwrap().algebra;
        let kf = killing_form(&sl2);
        let expect = Matrix::from_rows(vec![
            vec![qi(8), qi(0), qi(0)],
            vec![qi(0), qi(0), qi(4)],
            vec![qi(0), qi(4), qi(0)],
        ]);
        assert_eq!(kf, expect);
        assert_eq!(linalg::det(&f, &kf), qi(-128));
        assert!(is_semisimple(&sl2));
        assert!(!is_nilpotent(&sl2));
        assert_eq!(derived_subalgebra(&sl2).dim(), 3);
        assert_eq!(center(&sl2).dim(), 0);

        let h = catalog("heisenberg(3)").unwrap().algebra;
        assert!(!is_semisimple(&h));
        assert!(is_nilpotent(&h));
        assert_eq!(derived_subalgebra(&h).dim(), 1);
        assert_eq!(center(&h).dim(), 1);
        let series: Vec<usize> = lower_central_series(&h)
            .iter()
            .map(Subalgebra::dim)
            .collect();
        assert_eq!(series, vec![1, 0]);

        let b = catalog("borel_sl2").unwrap().algebra;
        assert!(!is_semisimple(&b));
        assert!(!is_nilpotent(&b));
        assert_eq!(derived_subalgebra(&b).dim(), 1);

        let b3 = catalog("borel_sl3").unwrap().algebra;
        assert_eq!(derived_subalgebra(&b3).dim(), 3);
        assert!(!is_nilpotent(&b3));
        assert_eq!(center(&b3).dim(), 0);

        let a = catalog("abelian(4)").unwrap().algebra;
        assert_eq!(center(&a).dim(), 4);
        assert!(is_nilpotent(&a));
        assert_eq!(lower_central_series(&a).first().unwrap().dim(), 0);
    }

    #[test]
    fn characters() {
        let b = catalog("borel_sl2").unwrap().algebra;
        let good = DifferentialCharacter {
            values: vec![qi(1), qi(0)],
        };
        assert!(one_dim_module(&b, &good).is_ok());
        let bad = DifferentialCharacter {
            values: vec![qi(0), qi(1)],
        };
        assert_eq!(
            one_dim_module(&b, &bad).unwrap_err(),
            LieError::NotACharacter
        );
        // on sl2 only zero works
        let sl2 = catalog("sl2").unwrap().algebra;
        assert!(one_dim_module(&sl2, &DifferentialCharacter::zero(&sl2)).is_ok());
        let nz = DifferentialCharacter {
            values: vec![qi(1), qi(0), qi(0)],
        };
        assert_eq!(
            one_dim_module(&sl2, &nz).unwrap_err(),
            LieError::NotACharacter
        );
    }

    #[test]
    fn module_axioms_enforced() {
        let sl2 = catalog("sl2").unwrap().algebra;
        assert!(LieModule::new(&sl2, (0..3).map(|i| sl2.ad(i)).collect()).is_ok());
        // swap two action matrices: no longer a module
        let mut bad: Vec<Matrix<Q>> = (0..3).map(|i| sl2.ad(i)).collect();
        bad.swap(1, 2);
        assert!(matches!(
            LieModule::new(&sl2, bad).unwrap_err(),
            LieError::NotAModule(_, _)
        ));
    }

    #[test]
    fn restriction_of_scalars_shapes() {
        let l = sqrt2();
        let h = base_change_q(&catalog("heisenberg(3)").unwrap().algebra, &l);
        let h0 = restrict_scalars(&h);
        assert_eq!(h0.dim(), 6);
        assert!(h0.validate().is_ok());
        // [v1 x, v2 y] = sqrt2 z = v2 z: constant 1 at (z, 2)
        let x = {
            let mut v = vec![Q::zero(); 6];
            v[0] = Q::from_integer(1.into());
            v
        };
        let y = {
            let mut v = vec![Q::zero(); 6];
            v[3] = Q::from_integer(1.into()); // v2 y: j = 1, i = 1
            v
        };
        let br = h0.bracket(&x, &y);
        let mut expect = vec![Q::zero(); 6];
        expect[5] = Q::from_integer(1.into()); // v2 z
        assert_eq!(br, expect);
    }

    #[test]
    fn kernel_ideal_one_dim_abelian() {
        let l = sqrt2();
        let a = base_change_q(&catalog("abelian(1)").unwrap().algebra, &l);
        let emb = identity_embedding(&l);
        let ki = kernel_ideal(&a, &l, &emb).unwrap();
        assert_eq!(ki.sub.dim(), 1);
        // the generator is sqrt2 (x) x - 1 (x) (sqrt2 x)
        let col = ki.sub.basis.col(0);
        assert_eq!(col[0], l.theta());
        assert_eq!(col[1], l.neg(&l.one()));
        assert!(ki.sub.is_ideal);
    }

    #[test]
    fn kernel_ideal_dimensions_and_ideal_property() {
        for (l, n) in [(sqrt2(), 2usize), (cyclic3(), 3usize)] {
            let emb = identity_embedding(&l);
            for name in ["sl2", "borel_sl2", "heisenberg(3)"] {
                let g = base_change_q(&catalog(name).unwrap().algebra, &l);
                let d = g.dim();
                let ki = kernel_ideal(&g, &l, &emb).unwrap();
                assert_eq!(ki.sub.dim(), (n - 1) * d, "{name}");
                assert!(ki.sub.is_ideal, "{name}");
                assert_eq!(ki.ambient.dim(), n * d);
            }
        }
    }

    #[test]
    fn sigma_kernels_intersect_trivially_and_pair_to_everything() {
        for l in [sqrt2(), cyclic3()] {
            let n = l.degree();
            let emb = identity_embedding(&l);
            let g = base_change_q(&catalog("borel_sl2").unwrap().algebra, &l);
            let d = g.dim();
            let autos = l.galois_automorphisms().unwrap();
            let kernels: Vec<_> = autos
                .iter()
                .map(|s| sigma_kernel_ideal(&g, &l, &emb, s).unwrap())
                .collect();
            // sigma = id gives the untwisted kernel
            let plain = kernel_ideal(&g, &l, &emb).unwrap();
            assert_eq!(kernels[0].sub.basis, plain.sub.basis);
            for a in 0..n {
                for b in 0..n {
                    if a == b {
                        continue;
                    }
                    assert_eq!(
                        linalg::span_sum_rank(&l, &kernels[a].sub.basis, &kernels[b].sub.basis),
                        n * d
                    );
                }
            }
            let mut common = kernels[0].sub.basis.clone();
            for kmore in &kernels[1..] {
                common = linalg::span_intersection(&l, &common, &kmore.sub.basis);
            }
            assert_eq!(common.cols(), 0);
        }
    }

    #[test]
    fn base_change_identity_is_noop_on_constants() {
        let l = sqrt2();
        let g = base_change_q(&catalog("sl2").unwrap().algebra, &l);
        let emb = identity_embedding(&l);
        let g2 = base_change_nf(&g, &l, &emb);
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    assert_eq!(g.c(i, j, k), g2.c(i, j, k));
                }
            }
        }
    }

    #[test]
    fn zero_dim_algebra_is_legal() {
        let a = catalog("abelian(0)").unwrap().algebra;
        assert_eq!(a.dim(), 0);
        assert!(a.validate().is_ok());
        assert_eq!(derived_subalgebra(&a).dim(), 0);
        assert_eq!(center(&a).dim(), 0);
        assert!(is_nilpotent(&a));
        assert!(is_semisimple(&a)); // vacuously: zero form on zero space
    }
}
