//! Chevalley-Eilenberg complexes in both directions, cohomology with chosen
//! representatives, outer actions on cochains, and the torus-decomposition
//! pipeline for kernel ideals of split solvable algebras.

use crate::field_tower::{NfElem, NfEmbedding, NumberField};
use crate::lie::{
    kernel_ideal, one_dim_module, sigma_kernel_ideal, subalgebra_from_basis, DifferentialCharacter,
    LieAlgebra, LieError, LieModule, Subalgebra,
};
use crate::linalg::{self, Matrix};
use crate::ring::{Field, Q};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum CohomologyError {
    #[error("torus and nilpotent parts do not have the expected shape: {0}")]
    NotBorelShape(String),
    #[error("Killing form is degenerate")]
    NotSemisimple,
    #[error("lower central series does not reach zero")]
    NotNilpotent,
    #[error("action of generator {0} does not commute with the differential")]
    ActionNotChainMap(usize),
    #[error(transparent)]
    Lie(#[from] LieError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// Homological: boundary maps lower the degree. The module is treated as
    /// a right module via v.x = -rho(x)v.
    Chain,
    /// Cohomological: differentials raise the degree.
    Cochain,
}

/// All k-subsets of {0..n-1} in colex order (grouped by largest element).
fn colex_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for top in k - 1..n {
        for mut s in colex_subsets(top, k - 1) {
            s.push(top);
            out.push(s);
        }
    }
    out
}

/// Wedge of x_w against an ascending word: None when w already occurs, else
/// the sorted word and whether a sign flip is needed.
fn insert_with_sign(rest: &[usize], w: usize) -> Option<(Vec<usize>, bool)> {
    if rest.contains(&w) {
        return None;
    }
    let pos = rest.iter().filter(|&&r| r < w).count();
    let mut out = Vec::with_capacity(rest.len() + 1);
    out.extend_from_slice(&rest[..pos]);
    out.push(w);
    out.extend_from_slice(&rest[pos..]);
    Some((out, pos % 2 == 1))
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut out: usize = 1;
    for i in 0..k {
        out = out * (n - i) / (i + 1);
    }
    out
}

#[derive(Clone, Debug)]
pub struct CEComplex<F: Field> {
    field: F,
    direction: Direction,
    alg_dim: usize,
    module_dim: usize,
    subsets: Vec<Vec<Vec<usize>>>,
    /// diffs[q] maps out of degree q: down to q-1 for chains, up to q+1 for
    /// cochains.
    diffs: Vec<Matrix<F::Elem>>,
}

impl<F: Field> CEComplex<F> {
    /// Builds every differential and asserts that consecutive ones compose
    /// to zero.
    pub fn new(alg: &LieAlgebra<F>, module: &LieModule<F>, direction: Direction) -> Self {
        let f = alg.field().clone();
        let d = alg.dim();
        let m = module.dim();
        let subsets: Vec<_> = (0..=d).map(|q| colex_subsets(d, q)).collect();
        let rank_of = |q: usize, s: &[usize]| -> usize {
            subsets[q]
                .iter()
                .position(|t| t == s)
                .expect("subset enumeration is exhaustive")
        };
        let mut diffs = Vec::with_capacity(d + 1);
        for q in 0..=d {
            let src = subsets[q].len() * m;
            let mat = match direction {
                Direction::Chain => {
                    let dst = if q == 0 { 0 } else { subsets[q - 1].len() * m };
                    let mut mat = linalg::zero_matrix(&f, dst, src);
                    for (r, s) in subsets[q].iter().enumerate() {
                        chain_columns(alg, module, s, r, m, &mut mat, |t| rank_of(q - 1, t));
                    }
                    mat
                }
                Direction::Cochain => {
                    let dst = if q == d { 0 } else { subsets[q + 1].len() * m };
                    let mut mat = linalg::zero_matrix(&f, dst, src);
                    if q < d {
                        for (rt, t) in subsets[q + 1].iter().enumerate() {
                            cochain_rows(alg, module, t, rt, m, &mut mat, |s| rank_of(q, s));
                        }
                    }
                    mat
                }
            };
            diffs.push(mat);
        }
        // composite of consecutive differentials vanishes
        for q in 0..=d {
            let (first, second) = match direction {
                Direction::Chain if q >= 1 => (&diffs[q], &diffs[q - 1]),
                Direction::Cochain if q + 1 <= d => (&diffs[q], &diffs[q + 1]),
                _ => continue,
            };
            let comp = linalg::mat_mul(&f, second, first);
            assert!(
                linalg::is_zero_matrix(&f, &comp),
                "differential does not square to zero at degree {q}"
            );
        }
        CEComplex {
            field: f,
            direction,
            alg_dim: d,
            module_dim: m,
            subsets,
            diffs,
        }
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn algebra_dim(&self) -> usize {
        self.alg_dim
    }

    pub fn module_dim(&self) -> usize {
        self.module_dim
    }

    pub fn space_dim(&self, q: usize) -> usize {
        if q > self.alg_dim {
            0
        } else {
            self.subsets[q].len() * self.module_dim
        }
    }

    /// The map out of degree q.
    pub fn differential(&self, q: usize) -> &Matrix<F::Elem> {
        &self.diffs[q]
    }

    pub fn subsets(&self, q: usize) -> &[Vec<usize>] {
        &self.subsets[q]
    }

    /// Cycles, boundaries, and representatives at degree q. Degrees above
    /// the algebra dimension give the zero space.
    pub fn cohomology(&self, q: usize) -> CohomologySpace<F> {
        let f = &self.field;
        if q > self.alg_dim {
            return CohomologySpace {
                dim: 0,
                cycle_rank: 0,
                boundary_rank: 0,
                representatives: linalg::zero_matrix(f, 0, 0),
            };
        }
        let out_map = &self.diffs[q];
        let cycles = linalg::kernel_basis(f, out_map);
        let n = self.space_dim(q);
        let in_map = match self.direction {
            Direction::Chain if q + 1 <= self.alg_dim => Some(&self.diffs[q + 1]),
            Direction::Cochain if q >= 1 => Some(&self.diffs[q - 1]),
            _ => None,
        };
        let boundaries = match in_map {
            Some(m) => linalg::column_space_basis(f, m),
            None => linalg::zero_matrix(f, n, 0),
        };
        let order: Vec<usize> = (0..cycles.cols()).collect();
        let chosen = linalg::extend_basis(f, &boundaries, &cycles, &order);
        let reps = Matrix::from_cols(n, chosen.iter().map(|&i| cycles.col(i)).collect());
        CohomologySpace {
            dim: cycles.cols() - boundaries.cols(),
            cycle_rank: cycles.cols(),
            boundary_rank: boundaries.cols(),
            representatives: reps,
        }
    }

    /// Dimensions of every (co)homology space, degrees 0..=dim.
    pub fn all_dims(&self) -> Vec<usize> {
        (0..=self.alg_dim).map(|q| self.cohomology(q).dim).collect()
    }
}

/// Boundary terms for one source basis subset, written into the columns of
/// the matrix out of degree q = s.len().
fn chain_columns<F: Field>(
    alg: &LieAlgebra<F>,
    module: &LieModule<F>,
    s: &[usize],
    s_rank: usize,
    m: usize,
    mat: &mut Matrix<F::Elem>,
    rank_below: impl Fn(&[usize]) -> usize,
) {
    let f = alg.field();
    let q = s.len();
    // bracket insertions: positions are 1-based in the sign convention
    for a in 0..q {
        for b in a + 1..q {
            let rest: Vec<usize> = s
                .iter()
                .enumerate()
                .filter(|(p, _)| *p != a && *p != b)
                .map(|(_, &x)| x)
                .collect();
            let base_negate = (a + b) % 2 == 1; // (-1)^{(a+1)+(b+1)}
            for k in 0..alg.dim() {
                let c = alg.c(s[a], s[b], k);
                if f.is_zero(c) {
                    continue;
                }
                if let Some((t, flip)) = insert_with_sign(&rest, k) {
                    let coeff = if base_negate ^ flip {
                        f.neg(c)
                    } else {
                        c.clone()
                    };
                    let row0 = rank_below(&t) * m;
                    for alpha in 0..m {
                        let cur = mat.at(row0 + alpha, s_rank * m + alpha).clone();
                        mat.set(row0 + alpha, s_rank * m + alpha, f.add(&cur, &coeff));
                    }
                }
            }
        }
    }
    // module terms: right action v.x = -rho(x)v, sign (-1)^{s+1} with s
    // 1-based, so position a contributes (-1)^a * (-rho)
    for a in 0..q {
        let rest: Vec<usize> = s
            .iter()
            .enumerate()
            .filter(|(p, _)| *p != a)
            .map(|(_, &x)| x)
            .collect();
        let negate = a % 2 == 0; // (-1)^a * (-1)
        let rho = module.rho(s[a]);
        let row0 = rank_below(&rest) * m;
        for beta in 0..m {
            for alpha in 0..m {
                let e = rho.at(beta, alpha);
                if f.is_zero(e) {
                    continue;
                }
                let add = if negate { f.neg(e) } else { e.clone() };
                let cur = mat.at(row0 + beta, s_rank * m + alpha).clone();
                mat.set(row0 + beta, s_rank * m + alpha, f.add(&cur, &add));
            }
        }
    }
}

/// Coboundary terms for one target basis subset, written into the rows of
/// the matrix into degree t.len().
fn cochain_rows<F: Field>(
    alg: &LieAlgebra<F>,
    module: &LieModule<F>,
    t: &[usize],
    t_rank: usize,
    m: usize,
    mat: &mut Matrix<F::Elem>,
    rank_below: impl Fn(&[usize]) -> usize,
) {
    let f = alg.field();
    let k1 = t.len();
    // action terms: (-1)^s rho(w_s) f(.. w_s dropped ..), 0-based
    for a in 0..k1 {
        let rest: Vec<usize> = t
            .iter()
            .enumerate()
            .filter(|(p, _)| *p != a)
            .map(|(_, &x)| x)
            .collect();
        let negate = a % 2 == 1;
        let rho = module.rho(t[a]);
        let col0 = rank_below(&rest) * m;
        for beta in 0..m {
            for alpha in 0..m {
                let e = rho.at(beta, alpha);
                if f.is_zero(e) {
                    continue;
                }
                let add = if negate { f.neg(e) } else { e.clone() };
                let cur = mat.at(t_rank * m + beta, col0 + alpha).clone();
                mat.set(t_rank * m + beta, col0 + alpha, f.add(&cur, &add));
            }
        }
    }
    // bracket terms: (-1)^{s+t} f([w_s, w_t], .. both dropped ..), 0-based
    for a in 0..k1 {
        for b in a + 1..k1 {
            let rest: Vec<usize> = t
                .iter()
                .enumerate()
                .filter(|(p, _)| *p != a && *p != b)
                .map(|(_, &x)| x)
                .collect();
            let base_negate = (a + b) % 2 == 1;
            for w in 0..alg.dim() {
                let c = alg.c(t[a], t[b], w);
                if f.is_zero(c) {
                    continue;
                }
                if let Some((s, flip)) = insert_with_sign(&rest, w) {
                    let coeff = if base_negate ^ flip {
                        f.neg(c)
                    } else {
                        c.clone()
                    };
                    let col0 = rank_below(&s) * m;
                    for alpha in 0..m {
                        let cur = mat.at(t_rank * m + alpha, col0 + alpha).clone();
                        mat.set(t_rank * m + alpha, col0 + alpha, f.add(&cur, &coeff));
                    }
                }
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct CohomologySpace<F: Field> {
    pub dim: usize,
    pub cycle_rank: usize,
    pub boundary_rank: usize,
    /// Columns are cycles spanning a complement of the boundaries.
    pub representatives: Matrix<F::Elem>,
}

// ---------------------------------------------------------------------------
// Outer actions and invariants
// ---------------------------------------------------------------------------

/// Action of commuting outer generators on a cochain complex: each acts on
/// the algebra by a derivation matrix and on the module compatibly.
#[derive(Clone, Debug)]
pub struct OuterAction<F: Field> {
    pub on_algebra: Vec<Matrix<F::Elem>>,
    pub on_module: Vec<Matrix<F::Elem>>,
}

/// Matrix of (x.f)(w) = rho(x) f(w) - sum_i f(.., [x, w_i], ..) on degree-q
/// cochains.
fn cochain_action<F: Field>(
    cx: &CEComplex<F>,
    q: usize,
    act_alg: &Matrix<F::Elem>,
    act_mod: &Matrix<F::Elem>,
) -> Matrix<F::Elem> {
    let f = &cx.field;
    let m = cx.module_dim;
    let n = cx.space_dim(q);
    let mut out = linalg::zero_matrix(f, n, n);
    let rank_of = |s: &[usize]| -> usize {
        cx.subsets[q]
            .iter()
            .position(|t| t == s)
            .expect("subset enumeration is exhaustive")
    };
    for (r, s) in cx.subsets[q].iter().enumerate() {
        // module part: block diagonal
        for beta in 0..m {
            for alpha in 0..m {
                let e = act_mod.at(beta, alpha);
                if !f.is_zero(e) {
                    let cur = out.at(r * m + beta, r * m + alpha).clone();
                    out.set(r * m + beta, r * m + alpha, f.add(&cur, e));
                }
            }
        }
        // argument part: replace one slot by its image under the derivation
        for (pos, &si) in s.iter().enumerate() {
            let rest: Vec<usize> = s
                .iter()
                .enumerate()
                .filter(|(p, _)| *p != pos)
                .map(|(_, &x)| x)
                .collect();
            for k in 0..cx.alg_dim {
                let a = act_alg.at(k, si);
                if f.is_zero(a) {
                    continue;
                }
                if let Some((t, flip_insert)) = insert_with_sign(&rest, k) {
                    // minus sign from the action formula; resorting moves
                    // the replacement from slot `pos` to its sorted slot
                    let flip = flip_insert ^ (pos % 2 == 1);
                    let coeff = if flip { a.clone() } else { f.neg(a) };
                    let rt = rank_of(&t);
                    for alpha in 0..m {
                        let cur = out.at(r * m + alpha, rt * m + alpha).clone();
                        out.set(r * m + alpha, rt * m + alpha, f.add(&cur, &coeff));
                    }
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct InvariantCohomology<F: Field> {
    pub space: CohomologySpace<F>,
    /// Induced matrix of each generator on the cohomology at this degree.
    pub induced: Vec<Matrix<F::Elem>>,
    pub invariant_dim: usize,
}

/// Cohomology at degree q together with its simultaneous invariants under
/// the given outer action. The action must commute with the differential on
/// the degrees touching q.
pub fn invariants_of_cohomology<F: Field>(
    cx: &CEComplex<F>,
    q: usize,
    action: &OuterAction<F>,
) -> Result<InvariantCohomology<F>, CohomologyError> {
    assert_eq!(cx.direction, Direction::Cochain, "invariants need cochains");
    assert_eq!(action.on_algebra.len(), action.on_module.len());
    let f = &cx.field;
    let space = cx.cohomology(q);
    if q > cx.alg_dim {
        return Ok(InvariantCohomology {
            space,
            induced: vec![linalg::zero_matrix(f, 0, 0); action.on_algebra.len()],
            invariant_dim: 0,
        });
    }
    let mut induced = Vec::new();
    for (gi, (a, v)) in action
        .on_algebra
        .iter()
        .zip(action.on_module.iter())
        .enumerate()
    {
        let here = cochain_action(cx, q, a, v);
        // the square with the outgoing differential
        if q < cx.alg_dim {
            let up = cochain_action(cx, q + 1, a, v);
            let lhs = linalg::mat_mul(f, &up, &cx.diffs[q]);
            let rhs = linalg::mat_mul(f, &cx.diffs[q], &here);
            if lhs != rhs {
                return Err(CohomologyError::ActionNotChainMap(gi));
            }
        }
        // and with the incoming one
        if q > 0 {
            let down = cochain_action(cx, q - 1, a, v);
            let lhs = linalg::mat_mul(f, &here, &cx.diffs[q - 1]);
            let rhs = linalg::mat_mul(f, &cx.diffs[q - 1], &down);
            if lhs != rhs {
                return Err(CohomologyError::ActionNotChainMap(gi));
            }
        }
        // express images of representatives over [reps | boundaries]
        let n = cx.space_dim(q);
        let boundaries = if q >= 1 {
            linalg::column_space_basis(f, &cx.diffs[q - 1])
        } else {
            linalg::zero_matrix(f, n, 0)
        };
        let basis = space.representatives.hstack(&boundaries);
        let h = space.dim;
        let mut im = linalg::zero_matrix(f, h, h);
        for j in 0..h {
            let y = linalg::apply(f, &here, &space.representatives.col(j));
            let coords = linalg::solve(f, &basis, &y)
                .expect("a chain-map action preserves cycles modulo boundaries");
            for i in 0..h {
                im.set(i, j, coords[i].clone());
            }
        }
        induced.push(im);
    }
    let h = space.dim;
    let stacked = induced
        .iter()
        .fold(linalg::zero_matrix(f, 0, h), |acc, m| acc.vstack(m));
    let invariant_dim = linalg::kernel_basis(f, &stacked).cols();
    Ok(InvariantCohomology {
        space,
        induced,
        invariant_dim,
    })
}

// ---------------------------------------------------------------------------
// Structural checks
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct WhiteheadReport {
    pub h1_dims: Vec<usize>,
    pub all_zero: bool,
}

/// First cohomology of a semisimple algebra vanishes for every module.
pub fn whitehead_check<F: Field>(
    g: &LieAlgebra<F>,
    modules: &[LieModule<F>],
) -> Result<WhiteheadReport, CohomologyError> {
    if !crate::lie::is_semisimple(g) {
        return Err(CohomologyError::NotSemisimple);
    }
    let h1_dims: Vec<usize> = modules
        .iter()
        .map(|v| CEComplex::new(g, v, Direction::Cochain).cohomology(1).dim)
        .collect();
    let all_zero = h1_dims.iter().all(|&d| d == 0);
    Ok(WhiteheadReport { h1_dims, all_zero })
}

#[derive(Clone, Debug)]
pub struct DixmierReport {
    pub betti: Vec<usize>,
    pub all_positive: bool,
}

/// Nonvanishing of every Betti number of a nonzero nilpotent algebra.
pub fn dixmier_check<F: Field>(g: &LieAlgebra<F>) -> Result<DixmierReport, CohomologyError> {
    if !crate::lie::is_nilpotent(g) {
        return Err(CohomologyError::NotNilpotent);
    }
    let v = LieModule::trivial(g, 1);
    let betti = CEComplex::new(g, &v, Direction::Cochain).all_dims();
    let all_positive = betti.iter().all(|&d| d >= 1);
    Ok(DixmierReport {
        betti,
        all_positive,
    })
}

#[derive(Clone, Debug)]
pub struct DualityReport {
    pub homology: Vec<usize>,
    pub dual_cohomology: Vec<usize>,
    pub equal: bool,
}

/// dim H_k(g, V) = dim H^k(g, V*): the cochain complex of the dual module
/// is the transpose of the chain complex.
pub fn duality_check<F: Field>(g: &LieAlgebra<F>, module: &LieModule<F>) -> DualityReport {
    let chain = CEComplex::new(g, module, Direction::Chain);
    let dual = module.dual(g.field());
    let cochain = CEComplex::new(g, &dual, Direction::Cochain);
    let homology = chain.all_dims();
    let dual_cohomology = cochain.all_dims();
    let equal = homology == dual_cohomology;
    DualityReport {
        homology,
        dual_cohomology,
        equal,
    }
}

#[derive(Clone, Debug)]
pub struct EulerReport {
    pub from_spaces: i64,
    pub from_dims: i64,
    pub equal: bool,
}

/// Alternating sums over the whole complex and over its (co)homology agree.
pub fn euler_check<F: Field>(cx: &CEComplex<F>) -> EulerReport {
    let dims = cx.all_dims();
    let mut from_spaces = 0i64;
    let mut from_dims = 0i64;
    for q in 0..=cx.alg_dim {
        let sign = if q % 2 == 0 { 1 } else { -1 };
        from_spaces += sign * cx.space_dim(q) as i64;
        from_dims += sign * dims[q] as i64;
    }
    EulerReport {
        from_spaces,
        from_dims,
        equal: from_spaces == from_dims,
    }
}

// ---------------------------------------------------------------------------
// Torus decomposition over kernel ideals
// ---------------------------------------------------------------------------

/// A split solvable algebra over L with torus-first basis, its kernel ideal
/// over K, and a character of that ideal.
#[derive(Clone, Debug)]
pub struct TSetup {
    /// K tensor the restriction of scalars.
    pub ambient: LieAlgebra<NumberField>,
    /// The kernel ideal, basis ordered torus part first.
    pub b0: Subalgebra<NumberField>,
    /// Dimension of the torus part of the kernel ideal basis.
    pub t_dim: usize,
    /// Character values on the kernel ideal basis.
    pub chi: DifferentialCharacter<NumberField>,
}

/// Validates the torus/nilpotent shape of `b`, forms the kernel ideal over
/// K, and restricts the character. `chi_values` are the values on the basis
/// of K tensor the restriction of scalars, in its (algebra basis outer,
/// field basis inner) order.
pub fn t_setup(
    b: &LieAlgebra<NumberField>,
    t_dim: usize,
    k: &NumberField,
    emb: &NfEmbedding,
    chi_values: &[NfElem],
) -> Result<TSetup, CohomologyError> {
    t_setup_twisted(b, t_dim, k, emb, chi_values, None)
}

/// Same pipeline on the kernel of the multiplication map precomposed with
/// an automorphism of the scalar side.
pub fn t_setup_twisted(
    b: &LieAlgebra<NumberField>,
    t_dim: usize,
    k: &NumberField,
    emb: &NfEmbedding,
    chi_values: &[NfElem],
    twist: Option<&Matrix<Q>>,
) -> Result<TSetup, CohomologyError> {
    let d = b.dim();
    if t_dim > d {
        return Err(CohomologyError::NotBorelShape(
            "torus dimension exceeds the algebra dimension".into(),
        ));
    }
    let l = b.field();
    for a in 0..t_dim {
        for bb in a + 1..t_dim {
            for w in 0..d {
                if !l.is_zero(b.c(a, bb, w)) {
                    return Err(CohomologyError::NotBorelShape(
                        "torus part is not abelian".into(),
                    ));
                }
            }
        }
    }
    let derived = crate::lie::derived_subalgebra(b);
    if derived.dim() != d - t_dim {
        return Err(CohomologyError::NotBorelShape(format!(
            "derived subalgebra has dimension {}, expected {}",
            derived.dim(),
            d - t_dim
        )));
    }
    let mut u_cols = linalg::zero_matrix(l, d, d - t_dim);
    for j in 0..d - t_dim {
        u_cols.set(t_dim + j, j, l.one());
    }
    if linalg::span_sum_rank(l, &u_cols, &derived.basis) != d - t_dim {
        return Err(CohomologyError::NotBorelShape(
            "derived subalgebra is not the span of the non-torus basis".into(),
        ));
    }

    let ki = match twist {
        None => kernel_ideal(b, k, emb)?,
        Some(sigma) => sigma_kernel_ideal(b, k, emb, sigma)?,
    };
    let n = l.degree();
    if chi_values.len() != n * d {
        return Err(CohomologyError::Lie(LieError::BadShape));
    }
    // character value on each kernel generator, by linearity
    let values: Vec<NfElem> = (0..ki.sub.dim())
        .map(|j| {
            let col = ki.sub.basis.col(j);
            let mut acc = k.zero();
            for (w, coord) in col.iter().enumerate() {
                if !k.is_zero(coord) {
                    acc = k.add(&acc, &k.mul(coord, &chi_values[w]));
                }
            }
            acc
        })
        .collect();
    let chi = DifferentialCharacter { values };
    chi.validate(&ki.sub.induced)?;
    Ok(TSetup {
        ambient: ki.ambient,
        b0: ki.sub,
        t_dim: (n - 1) * t_dim,
        chi,
    })
}

/// Dimensions of the cohomology of the kernel ideal with coefficients in
/// the character, degrees 0..=dim.
pub fn t_dimensions(setup: &TSetup) -> Result<Vec<usize>, CohomologyError> {
    let alg = &setup.b0.induced;
    let module = one_dim_module(alg, &setup.chi)?;
    let cx = CEComplex::new(alg, &module, Direction::Cochain);
    Ok(cx.all_dims())
}

#[derive(Clone, Debug)]
pub struct HsReport {
    /// Direct cohomology of the kernel ideal.
    pub direct: Vec<usize>,
    /// Torus-invariant cohomology of the nilpotent part, by degree.
    pub invariant_dims: Vec<usize>,
    /// Binomial convolution of `invariant_dims` against the torus exterior
    /// algebra.
    pub assembled: Vec<usize>,
    pub equal: bool,
}

/// Computes the cohomology of the kernel ideal twice: directly, and through
/// the invariants of its nilpotent part under the torus.
pub fn hs_decomposition_check(setup: &TSetup) -> Result<HsReport, CohomologyError> {
    let f = setup.b0.induced.field().clone();
    let b0 = &setup.b0.induced;
    let dim0 = b0.dim();
    let t0 = setup.t_dim;
    let u0 = dim0 - t0;

    let direct = t_dimensions(setup)?;

    // nilpotent part as a subalgebra of the kernel ideal
    let mut u_basis = linalg::zero_matrix(&f, dim0, u0);
    for j in 0..u0 {
        u_basis.set(t0 + j, j, f.one());
    }
    let labels = (t0..dim0).map(|i| b0.labels()[i].clone()).collect();
    let u_sub = subalgebra_from_basis(b0, u_basis, labels)?;

    let chi_u = DifferentialCharacter {
        values: setup.chi.values[t0..].to_vec(),
    };
    let module = one_dim_module(&u_sub.induced, &chi_u)?;
    let cx = CEComplex::new(&u_sub.induced, &module, Direction::Cochain);

    // torus generators act on the nilpotent part by bracket and on the
    // module by the character
    let mut on_algebra = Vec::with_capacity(t0);
    let mut on_module = Vec::with_capacity(t0);
    for a in 0..t0 {
        let mut m = linalg::zero_matrix(&f, u0, u0);
        for j in 0..u0 {
            for w in 0..dim0 {
                let c = b0.c(a, t0 + j, w);
                if f.is_zero(c) {
                    continue;
                }
                if w < t0 {
                    return Err(CohomologyError::NotBorelShape(
                        "bracket of torus and nilpotent parts leaves the nilpotent part".into(),
                    ));
                }
                m.set(w - t0, j, c.clone());
            }
        }
        on_algebra.push(m);
        on_module.push(Matrix::new(1, 1, vec![setup.chi.values[a].clone()]));
    }
    let action = OuterAction {
        on_algebra,
        on_module,
    };

    let invariant_dims: Vec<usize> = (0..=u0)
        .map(|q| invariants_of_cohomology(&cx, q, &action).map(|inv| inv.invariant_dim))
        .collect::<Result<_, _>>()?;

    let assembled: Vec<usize> = (0..=dim0)
        .map(|i| {
            (0..=i.min(t0))
                .map(|j| {
                    let k = i - j;
                    if k <= u0 {
                        binomial(t0, j) * invariant_dims[k]
                    } else {
                        0
                    }
                })
                .sum()
        })
        .collect();

    let equal = direct == assembled;
    Ok(HsReport {
        direct,
        invariant_dims,
        assembled,
        equal,
    })
}
