//! Named check suites over fixed, built-in configurations. Every member
//! is fully deterministic (fixed inputs, fixed seeds) so suite reports can
//! be compared byte-for-byte against golden copies.

use lab_core::cohomology::{
    dixmier_check, duality_check, euler_check, hs_decomposition_check, t_setup_twisted,
    whitehead_check, CEComplex, Direction, TSetup,
};
use lab_core::dist::{
    c_r, graded_polynomial_check, log_one_plus_b, mahler_dirac, mahler_norm,
    multiplicativity_check, nu_norm, pbw_add, pbw_multiply, DistError, LogNorm, RadiusParam,
    TruncatedPBWSeries,
};
use lab_core::field_tower::{
    idempotent_preimage, identity_embedding, s_sigma, splitting_matrix, NfElem, NumberField,
};
use lab_core::lie::{
    base_change_q, catalog, kernel_ideal, sigma_kernel_ideal, subalgebra_from_basis, LieAlgebra,
    LieModule, Subalgebra,
};
use lab_core::linalg::{self, Matrix};
use lab_core::ring::{parse_q, q, qi, Field, Rationals, Q};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use crate::job::{named_field_def, resolve_field, CliError};
use crate::report::{dims, flag, s, strings, Check};

const MEMBERS: &[(&str, fn() -> Vec<Check>)] = &[
    ("validate", member_validate),
    ("fields", member_fields),
    ("cohomology", member_cohomology),
    ("duality", member_duality),
    ("kernels", member_kernels),
    ("splitting", member_splitting),
    ("structure", member_structure),
    ("tvectors", member_tvectors),
    ("norms", member_norms),
    ("graded", member_graded),
];

const CATALOG_NAMES: &[&str] = &[
    "abelian(3)",
    "heisenberg(3)",
    "heisenberg_scaled(3)",
    "sl2",
    "borel_sl2",
    "borel_sl3",
];

pub fn run(name: &str) -> Result<Vec<Check>, CliError> {
    if name == "all" {
        return Ok(MEMBERS.iter().flat_map(|(_, f)| f()).collect());
    }
    match MEMBERS.iter().find(|(n, _)| *n == name) {
        Some((_, f)) => Ok(f()),
        None => {
            let names: Vec<&str> = MEMBERS.iter().map(|(n, _)| *n).collect();
            Err(CliError(format!(
                "unknown suite '{name}' (expected all or one of: {})",
                names.join(", ")
            )))
        }
    }
}

fn field(name: &str) -> NumberField {
    resolve_field(&named_field_def(name).expect("built-in field name")).expect("built-in field")
}

fn alg(name: &str) -> LieAlgebra<Rationals> {
    catalog(name).expect("built-in catalog name").algebra
}

fn rq(text: &str) -> Q {
    parse_q(text).expect("literal rational")
}

// ---------------------------------------------------------------------------
// validate
// ---------------------------------------------------------------------------

fn member_validate() -> Vec<Check> {
    let all_ok = CATALOG_NAMES.iter().all(|n| catalog(n).is_ok());
    let mut checks =
        vec![Check::outcome("validate/catalog", all_ok)
            .with("algebras", strings(CATALOG_NAMES.iter()))];

    // single corrupted entries must trip the validator
    let sl2_bad = alg("sl2").with_entry(0, 1, 1, qi(3));
    let sl2_err = sl2_bad.validate().expect_err("corruption must be caught");
    let h_bad = alg("heisenberg(3)").with_entry(0, 1, 2, qi(2));
    let h_err = h_bad.validate().expect_err("corruption must be caught");
    checks.push(
        Check::pass("validate/corruption_detected")
            .with("sl2", s(sl2_err))
            .with("heisenberg", s(h_err)),
    );
    checks
}

// ---------------------------------------------------------------------------
// fields
// ---------------------------------------------------------------------------

fn member_fields() -> Vec<Check> {
    let expected: &[(&str, usize)] = &[("q", 1), ("qsqrt2", 2), ("qi", 2), ("cyclic3", 3)];
    let mut counts_ok = true;
    let mut data = serde_json::Map::new();
    for (name, want) in expected {
        let f = field(name);
        let got = f
            .galois_automorphisms()
            .expect("built-in fields are Galois")
            .len();
        counts_ok &= got == *want;
        data.insert(name.to_string(), s(got));
    }
    let mut check = Check::outcome("fields/automorphism_counts", counts_ok);
    check.data = data;
    let mut checks = vec![check];

    // the cubic field's group is cyclic of order three
    let f = field("cyclic3");
    let autos = f.galois_automorphisms().expect("galois");
    let id = linalg::identity(&Rationals, 3);
    let cyclic = autos.iter().all(|m| {
        let m2 = linalg::mat_mul(&Rationals, m, m);
        let m3 = linalg::mat_mul(&Rationals, &m2, m);
        m3 == id && autos.contains(&m2)
    });
    checks.push(Check::outcome("fields/cyclic3_order_three", cyclic).with("order", s(3)));
    checks
}

// ---------------------------------------------------------------------------
// cohomology
// ---------------------------------------------------------------------------

fn trivial_dims(g: &LieAlgebra<Rationals>) -> Vec<usize> {
    let m = LieModule::trivial(g, 1);
    CEComplex::new(g, &m, Direction::Cochain).all_dims()
}

fn binomials(n: usize) -> Vec<usize> {
    let mut row = vec![1usize];
    for _ in 0..n {
        let mut next = vec![1];
        for w in row.windows(2) {
            next.push(w[0] + w[1]);
        }
        next.push(1);
        row = next;
    }
    row
}

fn member_cohomology() -> Vec<Check> {
    let mut checks = Vec::new();

    let mut binom_ok = true;
    for n in 1..=6 {
        binom_ok &= trivial_dims(&alg(&format!("abelian({n})"))) == binomials(n);
    }
    checks.push(Check::outcome("cohomology/abelian_binomials", binom_ok).with("max_n", s(6)));

    let h = trivial_dims(&alg("heisenberg(3)"));
    checks.push(
        Check::outcome("cohomology/heisenberg_betti", h == [1, 2, 2, 1]).with("dims", dims(&h)),
    );

    let t = trivial_dims(&alg("sl2"));
    checks.push(Check::outcome("cohomology/sl2_trivial", t == [1, 0, 0, 1]).with("dims", dims(&t)));

    let sl2 = alg("sl2");
    let ad = CEComplex::new(&sl2, &LieModule::adjoint(&sl2), Direction::Cochain).all_dims();
    checks.push(
        Check::outcome(
            "cohomology/sl2_adjoint_vanishes",
            ad.iter().all(|&d| d == 0),
        )
        .with("dims", dims(&ad)),
    );

    let hei = alg("heisenberg(3)");
    let cx = CEComplex::new(&hei, &LieModule::trivial(&hei, 1), Direction::Cochain);
    let above: Vec<usize> = (4..=5).map(|d| cx.cohomology(d).dim).collect();
    checks.push(
        Check::outcome("cohomology/degree_above_dim", above == [0, 0]).with("dims", dims(&above)),
    );

    let ecx = CEComplex::new(&hei, &LieModule::adjoint(&hei), Direction::Cochain);
    let euler = euler_check(&ecx);
    checks.push(
        Check::outcome(
            "cohomology/euler_zero",
            euler.equal && euler.from_spaces == 0,
        )
        .with("from_spaces", s(euler.from_spaces))
        .with("from_dims", s(euler.from_dims)),
    );
    checks
}

// ---------------------------------------------------------------------------
// duality
// ---------------------------------------------------------------------------

fn member_duality() -> Vec<Check> {
    let mut checks = Vec::new();
    for name in CATALOG_NAMES {
        let g = alg(name);
        let rep = duality_check(&g, &LieModule::adjoint(&g));
        checks.push(
            Check::outcome(&format!("duality/{name}"), rep.equal)
                .with("homology", dims(&rep.homology))
                .with("dual_cohomology", dims(&rep.dual_cohomology)),
        );
    }
    let l = field("qsqrt2");
    let g = base_change_q(&alg("sl2"), &l);
    let rep = duality_check(&g, &LieModule::adjoint(&g));
    checks.push(
        Check::outcome("duality/sl2_over_qsqrt2", rep.equal)
            .with("homology", dims(&rep.homology))
            .with("dual_cohomology", dims(&rep.dual_cohomology)),
    );
    checks
}

// ---------------------------------------------------------------------------
// kernels
// ---------------------------------------------------------------------------

fn member_kernels() -> Vec<Check> {
    let mut checks = Vec::new();
    for field_name in ["qsqrt2", "cyclic3"] {
        let l = field(field_name);
        let n = l.degree();
        for alg_name in ["sl2", "borel_sl2", "borel_sl3"] {
            let g = base_change_q(&alg(alg_name), &l);
            let d = g.dim();
            let ki = kernel_ideal(&g, &l, &identity_embedding(&l)).expect("kernel forms");
            let ok = ki.sub.dim() == (n - 1) * d && ki.sub.is_ideal;
            checks.push(
                Check::outcome(&format!("kernels/{alg_name}_{field_name}"), ok)
                    .with("ambient_dim", s(n * d))
                    .with("dim", s(ki.sub.dim()))
                    .with("ideal", flag(ki.sub.is_ideal)),
            );
        }
        checks.push(sigma_cover(field_name, &l));
    }
    checks
}

/// Twisted kernels pairwise span the ambient algebra and intersect in zero.
fn sigma_cover(field_name: &str, l: &NumberField) -> Check {
    let g = base_change_q(&alg("sl2"), l);
    let n = l.degree();
    let d = g.dim();
    let emb = identity_embedding(l);
    let autos = l.galois_automorphisms().expect("galois");
    let kernels: Vec<Matrix<NfElem>> = autos
        .iter()
        .map(|m| {
            sigma_kernel_ideal(&g, l, &emb, m)
                .expect("twisted kernel forms")
                .sub
                .basis
        })
        .collect();
    let full = n * d;
    let mut pairwise = true;
    for i in 0..kernels.len() {
        for j in i + 1..kernels.len() {
            pairwise &= linalg::span_sum_rank(l, &kernels[i], &kernels[j]) == full;
        }
    }
    let mut inter = kernels[0].clone();
    for ker in &kernels[1..] {
        inter = linalg::span_intersection(l, &inter, ker);
    }
    Check::outcome(
        &format!("kernels/sigma_cover_{field_name}"),
        pairwise && inter.cols() == 0,
    )
    .with("ambient_dim", s(full))
    .with("pairwise_full", flag(pairwise))
    .with("intersection_dim", s(inter.cols()))
}

// ---------------------------------------------------------------------------
// splitting
// ---------------------------------------------------------------------------

fn member_splitting() -> Vec<Check> {
    let mut checks = Vec::new();
    for name in ["qsqrt2", "cyclic3"] {
        let l = field(name);
        let n = l.degree();
        let m = splitting_matrix(&l).expect("galois");
        let invertible = linalg::inverse(&Rationals, &m).is_some();

        let count = l.galois_automorphisms().expect("galois").len();
        let es: Vec<Vec<Q>> = (0..count)
            .map(|s| idempotent_preimage(&l, s).expect("splitting is invertible"))
            .collect();
        let mut idem_ok = true;
        for (si, e) in es.iter().enumerate() {
            for (ti, e2) in es.iter().enumerate() {
                let prod = lab_core::field_tower::tensor_mul(&l, e, e2);
                let expected = if si == ti {
                    e.clone()
                } else {
                    vec![qi(0); n * n]
                };
                idem_ok &= prod == expected;
            }
        }
        // sum of the idempotents is 1 (x) 1; the designated basis of the
        // built-in fields starts at v_1 = 1, so those are the (0,0) coords
        let mut sum = vec![qi(0); n * n];
        for e in &es {
            for (i, c) in e.iter().enumerate() {
                sum[i] += c;
            }
        }
        let mut one = vec![qi(0); n * n];
        one[0] = qi(1);
        idem_ok &= sum == one;

        checks.push(
            Check::outcome(&format!("splitting/{name}"), invertible && idem_ok)
                .with("tensor_dim", s(n * n))
                .with("invertible", flag(invertible))
                .with("idempotents", flag(idem_ok)),
        );
    }

    let l = field("qsqrt2");
    let bounds: Vec<_> = (0..2)
        .map(|i| s_sigma(&l, i, 5).expect("unramified at 5"))
        .collect();
    checks.push(
        Check::outcome(
            "splitting/s_sigma_qsqrt2_p5",
            bounds.iter().all(|b| b.at_most_one),
        )
        .with(
            "log_s",
            strings(bounds.iter().map(|b| lab_core::ring::format_q(&b.log_s))),
        ),
    );
    let bounds2: Vec<_> = (0..2)
        .map(|i| s_sigma(&l, i, 2).expect("ramified case is computable"))
        .collect();
    checks.push(
        Check::outcome(
            "splitting/s_sigma_qsqrt2_p2_flagged",
            bounds2.iter().any(|b| !b.at_most_one),
        )
        .with(
            "log_s",
            strings(bounds2.iter().map(|b| lab_core::ring::format_q(&b.log_s))),
        ),
    );
    checks
}

// ---------------------------------------------------------------------------
// structure: Whitehead vanishing and Dixmier nonvanishing
// ---------------------------------------------------------------------------

/// The nilpotent part of the kernel ideal, as a subalgebra of it.
fn nilpotent_part(setup: &TSetup) -> Subalgebra<NumberField> {
    let b0 = &setup.b0.induced;
    let f = b0.field().clone();
    let t0 = setup.t_dim;
    let u0 = b0.dim() - t0;
    let mut basis = linalg::zero_matrix(&f, b0.dim(), u0);
    for j in 0..u0 {
        basis.set(t0 + j, j, f.one());
    }
    let labels = (t0..b0.dim()).map(|i| b0.labels()[i].clone()).collect();
    subalgebra_from_basis(b0, basis, labels).expect("nilpotent part closes")
}

fn borel_setup(alg_name: &str, l: &NumberField) -> TSetup {
    let entry = catalog(alg_name).expect("built-in catalog name");
    let t_dim = entry.t_dim.expect("borel entries carry a torus dimension");
    let b = base_change_q(&entry.algebra, l);
    let chi = vec![l.from_q(&qi(0)); l.degree() * b.dim()];
    t_setup_twisted(&b, t_dim, l, &identity_embedding(l), &chi, None).expect("borel shape")
}

fn member_structure() -> Vec<Check> {
    let mut checks = Vec::new();

    let l = field("qsqrt2");
    let g = base_change_q(&alg("sl2"), &l);
    let ki = kernel_ideal(&g, &l, &identity_embedding(&l)).expect("kernel forms");
    let g0 = &ki.sub.induced;
    let rep = whitehead_check(g0, &[LieModule::trivial(g0, 1), LieModule::adjoint(g0)])
        .expect("the kernel of sl2 is semisimple");
    checks.push(
        Check::outcome("whitehead/sl2_kernel_qsqrt2", rep.all_zero)
            .with("h1_dims", dims(&rep.h1_dims)),
    );

    for name in [
        "abelian(1)",
        "abelian(2)",
        "abelian(3)",
        "abelian(4)",
        "heisenberg(3)",
    ] {
        let u = alg(name);
        let rep = dixmier_check(&u).expect("nilpotent input");
        checks.push(
            Check::outcome(&format!("dixmier/{name}"), rep.all_positive)
                .with("betti", dims(&rep.betti)),
        );
    }
    for alg_name in ["borel_sl2", "borel_sl3"] {
        let setup = borel_setup(alg_name, &l);
        let u0 = nilpotent_part(&setup);
        let rep = dixmier_check(&u0.induced).expect("nilpotent part");
        checks.push(
            Check::outcome(&format!("dixmier/u0_{alg_name}_qsqrt2"), rep.all_positive)
                .with("betti", dims(&rep.betti)),
        );
    }
    checks
}

// ---------------------------------------------------------------------------
// tvectors
// ---------------------------------------------------------------------------

/// One full torus-decomposition configuration: kernel shape, two-path
/// equality, vanishing above the bound, and the smooth lower bound where
/// it applies.
fn tv_config(
    name: &str,
    alg_name: &str,
    field_name: &str,
    dchi_units: &[(usize, i64)],
    sigma: Option<usize>,
) -> Check {
    let l = field(field_name);
    let entry = catalog(alg_name).expect("built-in catalog name");
    let t_dim = entry.t_dim.expect("borel entries carry a torus dimension");
    let b = base_change_q(&entry.algebra, &l);
    let n = l.degree();
    let d = b.dim();

    let mut chi_q = vec![qi(0); n * d];
    for (i, v) in dchi_units {
        chi_q[*i] = qi(*v);
    }
    let smooth = dchi_units.is_empty();
    let chi: Vec<NfElem> = chi_q.iter().map(|c| l.from_q(c)).collect();
    let twist = sigma.map(|i| l.galois_automorphisms().expect("galois")[i].clone());

    let setup = t_setup_twisted(&b, t_dim, &l, &identity_embedding(&l), &chi, twist.as_ref())
        .expect("borel shape");
    let hs = hs_decomposition_check(&setup).expect("decomposition runs");

    let bound = (n - 1) * d;
    let module = lab_core::lie::one_dim_module(&setup.b0.induced, &setup.chi).expect("character");
    let cx = CEComplex::new(&setup.b0.induced, &module, Direction::Cochain);
    let above_zero = (1..=2).all(|j| cx.cohomology(bound + j).dim == 0);
    let emerton_ok =
        !smooth || setup.t_dim == 0 || hs.direct.get(1).copied().unwrap_or(0) >= setup.t_dim;
    let ok = setup.b0.dim() == bound && setup.b0.is_ideal && hs.equal && above_zero && emerton_ok;

    Check::outcome(name, ok)
        .with("dims", dims(&hs.direct))
        .with("assembled", dims(&hs.assembled))
        .with("invariant_dims", dims(&hs.invariant_dims))
        .with("torus_dim", s(setup.t_dim))
        .with("smooth", flag(smooth))
}

fn member_tvectors() -> Vec<Check> {
    vec![
        tv_config(
            "tvectors/borel_sl2_smooth",
            "borel_sl2",
            "qsqrt2",
            &[],
            None,
        ),
        tv_config(
            "tvectors/borel_sl2_nonsmooth",
            "borel_sl2",
            "qsqrt2",
            &[(0, 1)],
            None,
        ),
        tv_config(
            "tvectors/borel_sl3_smooth",
            "borel_sl3",
            "qsqrt2",
            &[],
            None,
        ),
        tv_config(
            "tvectors/borel_sl3_nonsmooth",
            "borel_sl3",
            "qsqrt2",
            &[(0, 1)],
            None,
        ),
        tv_config(
            "tvectors/borel_sl2_cubic_smooth",
            "borel_sl2",
            "cyclic3",
            &[],
            None,
        ),
        tv_config(
            "tvectors/borel_sl2_twisted",
            "borel_sl2",
            "qsqrt2",
            &[],
            Some(1),
        ),
        tv_config("tvectors/trivial_extension", "borel_sl2", "q", &[], None),
    ]
}

// ---------------------------------------------------------------------------
// norms
// ---------------------------------------------------------------------------

fn entry_obj(pairs: &[(&str, Value)]) -> Value {
    let mut obj = serde_json::Map::new();
    for (k, v) in pairs {
        obj.insert(k.to_string(), v.clone());
    }
    Value::Object(obj)
}

fn radius(p: u64, a: &str) -> RadiusParam {
    RadiusParam::new(p, rq(a)).expect("grid parameters are valid")
}

fn member_norms() -> Vec<Check> {
    let mut checks = Vec::new();

    // c_r equals r^kappa exactly at small radius and never drops below it
    let grid: &[(u64, &str)] = &[
        (3, "3/4"),
        (5, "1/2"),
        (2, "7/8"),
        (3, "1/4"),
        (3, "1/2"),
        (2, "1/4"),
        (5, "1/8"),
        (7, "2/3"),
        (2, "3/8"),
    ];
    let mut grid_ok = true;
    let mut entries = Vec::new();
    for (p, a) in grid {
        let rp = radius(*p, a);
        let neg_ka = -(qi(rp.kappa() as i64) * rp.a());
        let log = match c_r(&rp) {
            LogNorm::Finite(v) => v,
            LogNorm::NegInfinity => unreachable!("c_r is finite"),
        };
        if rp.small_radius() {
            grid_ok &= log == neg_ka;
        }
        grid_ok &= log >= neg_ka;
        entries.push(entry_obj(&[
            ("p", s(p)),
            ("a", s(a)),
            ("log_c_r", s(lab_core::ring::format_q(&log))),
            ("small_radius", flag(rp.small_radius())),
        ]));
    }
    checks
        .push(Check::outcome("norms/radius_grid", grid_ok).with("entries", Value::Array(entries)));

    // the log series norm reaches c_r at modest truncation
    let mut log_ok = true;
    let mut entries = Vec::new();
    for (p, a) in [(3u64, "3/4"), (5, "1/2"), (2, "7/8")] {
        let rp = radius(p, a);
        let rep = log_one_plus_b(&rp, 8);
        log_ok &= rep.stable && rep.norm == c_r(&rp);
        entries.push(entry_obj(&[
            ("p", s(p)),
            ("a", s(a)),
            ("norm", s(rep.norm.render())),
            ("stable", flag(rep.stable)),
        ]));
    }
    checks.push(
        Check::outcome("norms/log_series_stabilizes", log_ok)
            .with("entries", Value::Array(entries)),
    );

    // Dirac distributions have norm exactly one
    let rp = radius(3, "3/4");
    let mut dirac_ok = true;
    let mut points = Vec::new();
    for x in [0i64, 1, 2, 5, -1, -3] {
        let series = mahler_dirac(&[x], 8);
        dirac_ok &= mahler_norm(&series, &rp) == LogNorm::Finite(qi(0));
        points.push(s(x));
    }
    let multi = mahler_dirac(&[2, 1, 3], 6);
    dirac_ok &= mahler_norm(&multi, &rp) == LogNorm::Finite(qi(0));
    points.push(s("(2,1,3)"));
    checks.push(
        Check::outcome("norms/dirac_norm_one", dirac_ok).with("points", Value::Array(points)),
    );

    // zero series
    let hs3 = alg("heisenberg_scaled(3)");
    let zero = TruncatedPBWSeries::zero(&hs3, 6);
    checks.push(
        Check::outcome(
            "norms/zero_series",
            nu_norm(&zero, &rp) == LogNorm::NegInfinity,
        )
        .with("norm", s(nu_norm(&zero, &rp).render())),
    );

    // one straightening oracle: YX = XY - 3Z on the scaled Heisenberg
    let x = TruncatedPBWSeries::generator(&hs3, 6, 0);
    let y = TruncatedPBWSeries::generator(&hs3, 6, 1);
    let yx = pbw_multiply(&y, &x).expect("same basis");
    let straight_ok = yx.coeff(&[1, 1, 0]) == qi(1)
        && yx.coeff(&[0, 0, 1]) == qi(-3)
        && yx.terms().count() == 2
        && yx.is_exact();
    checks.push(
        Check::outcome("norms/straightening", straight_ok)
            .with(
                "xy_coeff",
                s(lab_core::ring::format_q(&yx.coeff(&[1, 1, 0]))),
            )
            .with(
                "z_coeff",
                s(lab_core::ring::format_q(&yx.coeff(&[0, 0, 1]))),
            ),
    );

    // seeded exact products stay exactly multiplicative
    let mut rng = ChaCha8Rng::seed_from_u64(0x4c41422d31);
    let mut mult_ok = true;
    let trials = 100;
    for _ in 0..trials {
        let a = random_series(&mut rng, &hs3, 7);
        let b = random_series(&mut rng, &hs3, 7);
        let rep = multiplicativity_check(&a, &b, &rp).expect("products stay exact at this degree");
        mult_ok &= rep.pass;
    }
    checks.push(
        Check::outcome("norms/seeded_products", mult_ok)
            .with("trials", s(trials))
            .with("p", s(3))
            .with("a", s("3/4")),
    );

    // a fixed cross-term product, kept as a readable witness
    let lam = TruncatedPBWSeries::from_terms(
        &hs3,
        6,
        vec![(vec![1, 0, 0], qi(1)), (vec![0, 1, 0], qi(1))],
    );
    let mu = TruncatedPBWSeries::from_terms(
        &hs3,
        6,
        vec![(vec![1, 0, 0], qi(1)), (vec![0, 0, 1], qi(3))],
    );
    let rep = multiplicativity_check(&lam, &mu, &rp).expect("exact product");
    checks.push(
        Check::outcome("norms/cross_term_product", rep.pass)
            .with("product_norm", s(rep.product_norm.render()))
            .with("factor_norm_sum", s(rep.factor_norm_sum.render())),
    );

    // the ultrametric inequality on seeded pairs, with equality whenever
    // the factors have distinct norms
    let mut ultra_ok = true;
    for _ in 0..30 {
        let a = random_series(&mut rng, &hs3, 7);
        let b = random_series(&mut rng, &hs3, 7);
        let na = nu_norm(&a, &rp);
        let nb = nu_norm(&b, &rp);
        let nsum = nu_norm(&pbw_add(&a, &b).expect("same basis"), &rp);
        let bound = std::cmp::max(na.clone(), nb.clone());
        ultra_ok &= nsum <= bound;
        if na != nb {
            ultra_ok &= nsum == bound;
        }
    }
    checks.push(Check::outcome("norms/ultrametric", ultra_ok).with("pairs", s(30)));

    checks
}

/// Nonzero random series of total degree at most 3 in each term.
fn random_series(
    rng: &mut ChaCha8Rng,
    alg: &LieAlgebra<Rationals>,
    trunc: usize,
) -> TruncatedPBWSeries {
    let pool = [
        qi(1),
        qi(-1),
        qi(2),
        qi(-2),
        qi(3),
        q(1, 2),
        q(-1, 3),
        q(3, 4),
    ];
    loop {
        let nterms = rng.gen_range(1..=3);
        let mut terms = Vec::new();
        for _ in 0..nterms {
            let beta: Vec<u32> = (0..alg.dim()).map(|_| rng.gen_range(0..=1u32)).collect();
            let c = pool[rng.gen_range(0..pool.len())].clone();
            terms.push((beta, c));
        }
        let series = TruncatedPBWSeries::from_terms(alg, trunc, terms);
        if !series.is_zero() {
            return series;
        }
    }
}

// ---------------------------------------------------------------------------
// graded
// ---------------------------------------------------------------------------

fn defect_list(defects: &[(usize, usize, LogNorm)]) -> Value {
    Value::Array(
        defects
            .iter()
            .map(|(i, j, norm)| Value::Array(vec![s(i), s(j), s(norm.render())]))
            .collect(),
    )
}

fn member_graded() -> Vec<Check> {
    let mut checks = Vec::new();
    for (p, a) in [(3u64, "3/4"), (5, "1/2"), (2, "7/8")] {
        let rp = radius(p, a);
        let scaled = alg(&format!("heisenberg_scaled({p})"));
        let rep = graded_polynomial_check(&scaled, &rp, 4).expect("preconditions hold");
        checks.push(
            Check::outcome(&format!("graded/heisenberg_p{p}"), rep.pass)
                .with("pairs_checked", s(rep.pairs_checked))
                .with("defects", defect_list(&rep.defects)),
        );
        let ab = alg("abelian(3)");
        let rep = graded_polynomial_check(&ab, &rp, 4).expect("preconditions hold");
        checks.push(
            Check::outcome(&format!("graded/abelian3_p{p}"), rep.pass)
                .with("pairs_checked", s(rep.pairs_checked))
                .with("defects", defect_list(&rep.defects)),
        );
    }
    let unscaled = match graded_polynomial_check(&alg("heisenberg(3)"), &radius(3, "3/4"), 4) {
        Err(DistError::PreconditionUnmet(reason)) => {
            Check::pass("graded/unscaled_rejected").with("reason", s(reason))
        }
        _ => Check::outcome("graded/unscaled_rejected", false)
            .with("reason", s("the unscaled Heisenberg algebra was accepted")),
    };
    checks.push(unscaled);
    checks
}
