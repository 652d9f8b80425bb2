//! The symbolic construction: the radial function h, the potential 1-form
//! psi, the 5-form beta = dh ^ dpsi ^ dpsi and its Hodge dual chi, the
//! appendix polynomials p, q, Q, the y := 0 reduction, and exact rational
//! point samplers on the torus and the spheres.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::forms::{DiffForm, Matrix6, MultiIndex};
use crate::matrix::{restrict_two_form, tangent_basis, MatrixError};
use crate::poly::{Polynomial, NVARS};
use crate::rational::{rat, rat_int, Rational};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("point is not on the sphere h = 3/2 (h evaluates to {0})")]
    NotOnSphere(String),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// Every symbolic object the construction defines, built once and shared.
#[derive(Clone, Debug)]
pub struct ConstructionSet {
    /// h = (x1^2 + x2^2 + x3^2 + y1^2 + y2^2 + y3^2) / 2.
    pub h: Polynomial,
    /// Coefficients (1, -7/6, 1/6) of the radial profile p(u) = 1 - 7u/6 + u^2/6.
    pub p_coeffs: [Rational; 3],
    /// The three planar 1-forms psi_a = p(u_a)/2 * (x_a dy_a - y_a dx_a).
    pub psi_a: [DiffForm; 3],
    /// psi = psi_1 + psi_2 + psi_3.
    pub psi: DiffForm,
    /// dpsi, cached for the pointwise rank checks.
    pub dpsi: DiffForm,
    /// beta = dh ^ dpsi ^ dpsi (degree 5).
    pub beta: DiffForm,
    /// chi = *beta (degree 1).
    pub chi: DiffForm,
    /// q(x, y) = 2 - 14/3 (x+y) + 205/18 xy + x^2 + y^2 - 7/3 (x^2 y - x y^2),
    /// stored in the first two coordinate slots.
    pub q: Polynomial,
    /// Q(x, y, z) = q(x,y)^2 + q(y,z)^2 + q(z,x)^2 in the first three slots.
    pub big_q: Polynomial,
}

/// u_a = x_a^2 + y_a^2 for plane a in 0..3.
fn radius_sq(a: usize) -> Polynomial {
    Polynomial::var(a).pow(2).add(&Polynomial::var(3 + a).pow(2))
}

/// Builds every object symbolically. All invariants are exact: psi is the
/// sum of the psi_a, beta = dh ^ dpsi ^ dpsi, chi = *beta.
pub fn build_all() -> ConstructionSet {
    let p_coeffs = [rat_int(1), rat(-7, 6), rat(1, 6)];

    let h = {
        let mut sum = Polynomial::zero();
        for a in 0..3 {
            sum = sum.add(&radius_sq(a));
        }
        sum.scale(&rat(1, 2))
    };

    let psi_a: [DiffForm; 3] = std::array::from_fn(|a| {
        let u = radius_sq(a);
        // p(u_a) / 2
        let profile = Polynomial::constant(p_coeffs[0].clone())
            .add(&u.scale(&p_coeffs[1]))
            .add(&u.pow(2).scale(&p_coeffs[2]))
            .scale(&rat(1, 2));
        DiffForm::from_terms(
            1,
            [
                (MultiIndex::single(3 + a), profile.mul(&Polynomial::var(a))),
                (
                    MultiIndex::single(a),
                    profile.mul(&Polynomial::var(3 + a)).neg(),
                ),
            ],
        )
    });

    let psi = psi_a[0].add(&psi_a[1]).add(&psi_a[2]);
    let dpsi = psi.ext_d();
    let dh = DiffForm::from_poly(h.clone()).ext_d();
    let beta = dh
        .wedge(&dpsi.wedge(&dpsi).expect("4-form fits in R^6"))
        .expect("5-form fits in R^6");
    let chi = beta.hodge_star();

    let q = build_q(0, 1);
    let big_q = build_big_q();

    ConstructionSet {
        h,
        p_coeffs,
        psi_a,
        psi,
        dpsi,
        beta,
        chi,
        q,
        big_q,
    }
}

/// q with its two formal arguments placed in coordinate slots `i` and `j`.
fn build_q(i: usize, j: usize) -> Polynomial {
    let x = Polynomial::var(i);
    let y = Polynomial::var(j);
    Polynomial::constant(rat_int(2))
        .add(&x.add(&y).scale(&rat(-14, 3)))
        .add(&x.mul(&y).scale(&rat(205, 18)))
        .add(&x.pow(2))
        .add(&y.pow(2))
        .add(&x.pow(2).mul(&y).sub(&x.mul(&y.pow(2))).scale(&rat(-7, 3)))
}

/// Q(x, y, z) = q(x,y)^2 + q(y,z)^2 + q(z,x)^2 in slots 0, 1, 2.
fn build_big_q() -> Polynomial {
    let mut out = Polynomial::zero();
    for (i, j) in [(0, 1), (1, 2), (2, 0)] {
        out = out.add(&build_q(i, j).pow(2));
    }
    out
}

impl ConstructionSet {
    /// p(x) = 1 - 7x/6 + x^2/6, evaluated exactly.
    pub fn p_eval(&self, x: &Rational) -> Rational {
        &self.p_coeffs[0] + &self.p_coeffs[1] * x + &self.p_coeffs[2] * x * x
    }

    /// q evaluated at two exact arguments.
    pub fn q_eval(&self, x: &Rational, y: &Rational) -> Rational {
        let mut point: [Rational; NVARS] = std::array::from_fn(|_| rat_int(0));
        point[0] = x.clone();
        point[1] = y.clone();
        self.q.eval(&point)
    }

    /// Q evaluated at three exact arguments.
    pub fn big_q_eval(&self, x: &Rational, y: &Rational, z: &Rational) -> Rational {
        let mut point: [Rational; NVARS] = std::array::from_fn(|_| rat_int(0));
        point[0] = x.clone();
        point[1] = y.clone();
        point[2] = z.clone();
        self.big_q.eval(&point)
    }
}

/// Artifacts of the appendix reduction: chi with y := 0, the three stated
/// polynomials, the sum of squares of the reduced coefficients, and Q with
/// z := 3 - x - y eliminated.
#[derive(Clone, Debug)]
pub struct ReducedSystem {
    pub chi_y0: DiffForm,
    /// x3 q(x1^2, x2^2), x1 q(x2^2, x3^2), x2 q(x3^2, x1^2).
    pub stated_polys: [Polynomial; 3],
    /// Sum of squares of the chi_y0 coefficients; nonnegative pointwise by
    /// construction.
    pub sum_sq_reduced: Polynomial,
    /// Q(x, y, 3 - x - y) in slots 0, 1.
    pub q_simplex_2d: Polynomial,
}

pub fn reduced_system(c: &ConstructionSet) -> ReducedSystem {
    let chi_y0 = c.chi.subst_coeffs_y0();

    let sq = |i: usize| Polynomial::var(i).pow(2);
    let stated_polys = [
        Polynomial::var(2).mul(&compose_q(&c.q, &sq(0), &sq(1))),
        Polynomial::var(0).mul(&compose_q(&c.q, &sq(1), &sq(2))),
        Polynomial::var(1).mul(&compose_q(&c.q, &sq(2), &sq(0))),
    ];

    let mut sum_sq_reduced = Polynomial::zero();
    for (_, coeff) in chi_y0.terms() {
        sum_sq_reduced = sum_sq_reduced.add(&coeff.pow(2));
    }

    let z_elim = Polynomial::constant(rat_int(3))
        .sub(&Polynomial::var(0))
        .sub(&Polynomial::var(1));
    let q_simplex_2d = c.big_q.subst(2, &z_elim);

    ReducedSystem {
        chi_y0,
        stated_polys,
        sum_sq_reduced,
        q_simplex_2d,
    }
}

/// q with its two formal slots substituted by arbitrary polynomials.
fn compose_q(q: &Polynomial, first: &Polynomial, second: &Polynomial) -> Polynomial {
    let mut assignment: [Polynomial; NVARS] = std::array::from_fn(Polynomial::var);
    assignment[0] = first.clone();
    assignment[1] = second.clone();
    q.compose(&assignment)
}

/// Exact ratio lambda with `a = lambda * b`, if such a single rational
/// constant exists. Returns None when `b` is zero or no constant works.
pub fn proportionality_constant(a: &Polynomial, b: &Polynomial) -> Option<Rational> {
    let lead = b.leading_monomial()?;
    let lambda = a.coeff(lead) / b.coeff(lead);
    if a == &b.scale(&lambda) {
        Some(lambda)
    } else {
        None
    }
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    let num = rng.gen_range(-30i64..=30);
    let den = rng.gen_range(1i64..=30);
    rat(num, den)
}

/// Rational point on the unit circle from the tangent-half parametrization
/// ((1 - t^2) / (1 + t^2), 2t / (1 + t^2)).
pub fn circle_point(t: &Rational) -> (Rational, Rational) {
    let t2 = t * t;
    let denom = &rat_int(1) + &t2;
    let x = (&rat_int(1) - &t2) / &denom;
    let y = (&rat_int(2) * t) / &denom;
    (x, y)
}

/// Exact rational points on the torus {x_a^2 + y_a^2 = 1, a = 1, 2, 3},
/// deterministic for a fixed seed.
pub fn sample_torus_points(n: usize, seed: u64) -> Vec<[Rational; NVARS]> {
    assert!(n >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let mut point: [Rational; NVARS] = std::array::from_fn(|_| rat_int(0));
            for a in 0..3 {
                let t = random_rational(&mut rng);
                let (x, y) = circle_point(&t);
                point[a] = x;
                point[3 + a] = y;
            }
            point
        })
        .collect()
}

/// Base point (1, 1, 1, 0, 0, 0), on both the torus and the sphere.
pub fn anchor_point() -> [Rational; NVARS] {
    std::array::from_fn(|i| if i < 3 { rat_int(1) } else { rat_int(0) })
}

/// Spanning rational basis of the hyperplane orthogonal to the anchor.
const SPHERE6_CHART: [[i64; NVARS]; 5] = [
    [1, -1, 0, 0, 0, 0],
    [1, 1, -2, 0, 0, 0],
    [0, 0, 0, 1, 0, 0],
    [0, 0, 0, 0, 1, 0],
    [0, 0, 0, 0, 0, 1],
];

/// Exact rational points on the sphere h = 3/2, by stereographic projection
/// from the anchor point: a chart point v in the orthogonal hyperplane maps
/// to the second intersection of the line through the anchor and v. Chart
/// parameter zero maps to the antipode. Deterministic for a fixed seed.
pub fn sample_sphere_points(n: usize, seed: u64) -> Vec<[Rational; NVARS]> {
    assert!(n >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let params: [Rational; 5] = std::array::from_fn(|_| random_rational(&mut rng));
            sphere_point_from_chart(&params)
        })
        .collect()
}

/// The stereographic map behind [`sample_sphere_points`], exposed so the
/// chart-zero anchor-antipode identity can be checked directly.
pub fn sphere_point_from_chart(params: &[Rational; 5]) -> [Rational; NVARS] {
    let base = anchor_point();
    let mut v: [Rational; NVARS] = std::array::from_fn(|_| rat_int(0));
    for (k, row) in SPHERE6_CHART.iter().enumerate() {
        for i in 0..NVARS {
            v[i] = &v[i] + &(&params[k] * &rat_int(row[i]));
        }
    }
    // |v - base|^2 = |v|^2 + 3 since v is orthogonal to the base point.
    let mut v_norm_sq = rat_int(0);
    for vi in &v {
        v_norm_sq += vi * vi;
    }
    let s = rat_int(6) / (&v_norm_sq + &rat_int(3));
    std::array::from_fn(|i| &base[i] + &(&s * &(&v[i] - &base[i])))
}

/// Exact rational points of the 2-sphere x1^2 + x2^2 + x3^2 = 3 embedded in
/// the y = 0 slice, via the same stereographic construction from (1, 1, 1).
pub fn sample_sphere3_points(n: usize, seed: u64) -> Vec<[Rational; NVARS]> {
    assert!(n >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let chart: [[i64; 3]; 2] = [[1, -1, 0], [1, 1, -2]];
    (0..n)
        .map(|_| {
            let params: [Rational; 2] = std::array::from_fn(|_| random_rational(&mut rng));
            let mut v = [rat_int(0), rat_int(0), rat_int(0)];
            for (k, row) in chart.iter().enumerate() {
                for i in 0..3 {
                    v[i] = &v[i] + &(&params[k] * &rat_int(row[i]));
                }
            }
            let mut v_norm_sq = rat_int(0);
            for vi in &v {
                v_norm_sq += vi * vi;
            }
            let s = rat_int(6) / (&v_norm_sq + &rat_int(3));
            let mut point: [Rational; NVARS] = std::array::from_fn(|_| rat_int(0));
            for i in 0..3 {
                point[i] = &rat_int(1) + &(&s * &(&v[i] - &rat_int(1)));
            }
            point
        })
        .collect()
}

/// Rotation by the rational circle point of parameter `t` in the
/// (x_a, y_a) plane: x_a -> c x_a - s y_a, y_a -> s x_a + c y_a.
pub fn block_rotation(plane: usize, t: &Rational) -> Matrix6 {
    assert!(plane < 3);
    let (c, s) = circle_point(t);
    let mut m = crate::forms::identity_matrix();
    m[plane][plane] = c.clone();
    m[plane][3 + plane] = -&s;
    m[3 + plane][plane] = s;
    m[3 + plane][3 + plane] = c;
    m
}

/// Random torus-group elements: a rational rotation in each of the three
/// planes, composed. Deterministic for a fixed seed.
pub fn sample_rotations(n: usize, seed: u64) -> Vec<Matrix6> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let mut m = block_rotation(0, &random_rational(&mut rng));
            for plane in 1..3 {
                let r = block_rotation(plane, &random_rational(&mut rng));
                m = crate::forms::matrix_mul(&m, &r);
            }
            m
        })
        .collect()
}

/// Rank of dpsi restricted to the tangent space of the sphere at an exact
/// sphere point. Points off the sphere are rejected.
pub fn rank4_at(
    c: &ConstructionSet,
    point: &[Rational; NVARS],
) -> Result<usize, ConstructionError> {
    let h_val = c.h.eval(point);
    if h_val != rat(3, 2) {
        return Err(ConstructionError::NotOnSphere(
            crate::rational::rational_to_string(&h_val),
        ));
    }
    let m = c
        .dpsi
        .eval_two_form(point)
        .expect("dpsi has degree 2");
    // The gradient of h at the point is the point itself.
    let basis = tangent_basis(point);
    let restricted = restrict_two_form(&m, &basis)?;
    Ok(restricted.rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rational_to_string;

    fn zero6() -> [Rational; NVARS] {
        std::array::from_fn(|_| rat_int(0))
    }

    #[test]
    fn p_anchor_values() {
        let c = build_all();
        assert_eq!(c.p_eval(&rat_int(0)), rat_int(1));
        assert_eq!(c.p_eval(&rat_int(1)), rat_int(0));
        assert_eq!(c.p_eval(&rat_int(3)), rat_int(-1));
    }

    #[test]
    fn h_values() {
        let c = build_all();
        assert_eq!(c.h.eval(&anchor_point()), rat(3, 2));
        assert_eq!(c.h.eval(&zero6()), rat_int(0));
        assert_eq!(c.h.diff(0), Polynomial::var(0));
    }

    #[test]
    fn q_values() {
        let c = build_all();
        assert_eq!(c.q_eval(&rat_int(0), &rat_int(0)), rat_int(2));
        assert_eq!(c.q_eval(&rat_int(3), &rat_int(0)), rat_int(-3));
        assert_eq!(c.q_eval(&rat_int(0), &rat_int(3)), rat_int(-3));
        assert_eq!(c.q_eval(&rat_int(1), &rat_int(1)), rat(109, 18));
    }

    #[test]
    fn big_q_values() {
        let c = build_all();
        assert_eq!(
            c.big_q_eval(&rat_int(3), &rat_int(0), &rat_int(0)),
            rat_int(22)
        );
        assert_eq!(
            c.big_q_eval(&rat_int(1), &rat_int(1), &rat_int(1)),
            rat(11881, 108)
        );
    }

    #[test]
    fn big_q_is_cyclically_symmetric() {
        let c = build_all();
        let mut cycle: [Polynomial; NVARS] = std::array::from_fn(Polynomial::var);
        cycle[0] = Polynomial::var(1);
        cycle[1] = Polynomial::var(2);
        cycle[2] = Polynomial::var(0);
        assert_eq!(c.big_q.compose(&cycle), c.big_q);
    }

    #[test]
    fn construction_shapes() {
        let c = build_all();
        assert_eq!(c.psi.degree(), 1);
        assert_eq!(c.beta.degree(), 5);
        assert_eq!(c.chi.degree(), 1);
        assert_eq!(c.psi, c.psi_a[0].add(&c.psi_a[1]).add(&c.psi_a[2]));
        let dh = DiffForm::from_poly(c.h.clone()).ext_d();
        let recomputed = dh
            .wedge(&c.dpsi.wedge(&c.dpsi).unwrap())
            .unwrap();
        assert_eq!(recomputed, c.beta);
        assert_eq!(c.beta.hodge_star(), c.chi);
    }

    #[test]
    fn psi_dy1_coefficient_after_y0() {
        // Surviving dy1 coefficient of psi_1 at y := 0 is
        // (1 - 7/6 x1^2 + 1/6 x1^4) x1 / 2.
        let c = build_all();
        let coeff = c.psi_a[0]
            .coeff(&MultiIndex::single(3))
            .subst(3, &Polynomial::zero());
        let x = Polynomial::var(0);
        let expected = Polynomial::one()
            .add(&x.pow(2).scale(&rat(-7, 6)))
            .add(&x.pow(4).scale(&rat(1, 6)))
            .mul(&x)
            .scale(&rat(1, 2));
        assert_eq!(coeff, expected);
    }

    #[test]
    fn dpsi_nonzero_where_psi_vanishes() {
        // At (x1, y1) = (3/5, 4/5) the plane radius is 1: psi_1 vanishes but
        // its derivative is the nonzero multiple -5/6 dx1^dy1.
        let c = build_all();
        let mut point = zero6();
        point[0] = rat(3, 5);
        point[3] = rat(4, 5);
        for (_, value) in c.psi_a[0].eval_coeffs(&point) {
            assert_eq!(value, rat_int(0));
        }
        let d = c.psi_a[0].ext_d();
        let m = d.eval_two_form(&point).unwrap();
        assert_eq!(m.rows()[0][3], rat(-5, 6));
    }

    #[test]
    fn torus_points_are_exact_and_kill_psi() {
        let c = build_all();
        let points = sample_torus_points(25, 7);
        assert_eq!(points.len(), 25);
        for p in &points {
            for a in 0..3 {
                let r = &p[a] * &p[a] + &p[3 + a] * &p[3 + a];
                assert_eq!(r, rat_int(1));
            }
            for (_, value) in c.psi.eval_coeffs(p) {
                assert_eq!(value, rat_int(0));
            }
        }
    }

    #[test]
    fn torus_parametrization_anchors() {
        assert_eq!(circle_point(&rat_int(0)), (rat_int(1), rat_int(0)));
        assert_eq!(circle_point(&rat_int(1)), (rat_int(0), rat_int(1)));
        assert_eq!(circle_point(&rat(1, 2)), (rat(3, 5), rat(4, 5)));
    }

    #[test]
    fn sphere_sampler_lands_exactly_on_sphere() {
        let c = build_all();
        for p in sample_sphere_points(50, 11) {
            assert_eq!(c.h.eval(&p), rat(3, 2));
        }
        // Chart parameter zero maps to the antipode.
        let zero_chart: [Rational; 5] = std::array::from_fn(|_| rat_int(0));
        let antipode = sphere_point_from_chart(&zero_chart);
        let expected: [Rational; NVARS] =
            std::array::from_fn(|i| if i < 3 { rat_int(-1) } else { rat_int(0) });
        assert_eq!(antipode, expected);
    }

    #[test]
    fn sphere3_sampler_exact() {
        for p in sample_sphere3_points(40, 3) {
            let norm = &p[0] * &p[0] + &p[1] * &p[1] + &p[2] * &p[2];
            assert_eq!(norm, rat_int(3));
            for i in 3..6 {
                assert_eq!(p[i], rat_int(0));
            }
        }
    }

    #[test]
    fn samplers_are_deterministic() {
        assert_eq!(sample_torus_points(10, 42), sample_torus_points(10, 42));
        assert_eq!(sample_sphere_points(10, 42), sample_sphere_points(10, 42));
        assert_ne!(sample_torus_points(10, 1), sample_torus_points(10, 2));
    }

    #[test]
    fn rank4_at_anchor() {
        let c = build_all();
        assert_eq!(rank4_at(&c, &anchor_point()).unwrap(), 4);
    }

    #[test]
    fn rank4_rejects_off_sphere_points() {
        let c = build_all();
        let err = rank4_at(&c, &zero6()).unwrap_err();
        assert_eq!(
            err,
            ConstructionError::NotOnSphere(rational_to_string(&rat_int(0)))
        );
    }

    #[test]
    fn rank_is_invariant_under_rotations() {
        let c = build_all();
        let p = sample_sphere_points(1, 5).remove(0);
        let base_rank = rank4_at(&c, &p).unwrap();
        for m in sample_rotations(3, 9) {
            // Image of p under the rotation: row i of M dotted with... the
            // map z -> Mz applied to the point.
            let image: [Rational; NVARS] = std::array::from_fn(|i| {
                let mut acc = rat_int(0);
                for j in 0..NVARS {
                    acc += &m[i][j] * &p[j];
                }
                acc
            });
            assert_eq!(rank4_at(&c, &image).unwrap(), base_rank);
        }
    }

    #[test]
    fn reduced_system_matches_expectations() {
        let c = build_all();
        let r = reduced_system(&c);
        // Three coefficients (the dx ones) vanish identically.
        for i in 0..3 {
            assert!(r.chi_y0.coeff(&MultiIndex::single(i)).is_zero());
        }
        for i in 3..6 {
            assert!(!r.chi_y0.coeff(&MultiIndex::single(i)).is_zero());
        }
        // Stated polynomials at (1,1,1): all equal q(1,1) = 109/18.
        let one3: [Rational; NVARS] =
            std::array::from_fn(|i| if i < 3 { rat_int(1) } else { rat_int(0) });
        for p in &r.stated_polys {
            assert_eq!(p.eval(&one3), rat(109, 18));
        }
        // Second stated polynomial has the factor x1.
        let mut x1_zero = one3.clone();
        x1_zero[0] = rat_int(0);
        assert_eq!(r.stated_polys[1].eval(&x1_zero), rat_int(0));
        // Reduced sum of squares at the anchor: each surviving component is
        // -2 * g(1)^2 with g(1) = -5/6, so the sum of squares is 625/108.
        assert_eq!(r.sum_sq_reduced.eval(&one3), rat(625, 108));
        // Q with z := 3 - x - y at (x, y) = (3, 0) equals Q(3, 0, 0) = 22.
        let mut simplex_pt = zero6();
        simplex_pt[0] = rat_int(3);
        assert_eq!(r.q_simplex_2d.eval(&simplex_pt), rat_int(22));
    }

    #[test]
    fn chi_y0_components_match_derived_profile() {
        // The surviving dy_a coefficient is -2 x_a g(x_b^2) g(x_c^2) with
        // g(u) = 1 - 7u/3 + u^2/2 (the derivative of u p(u)).
        let c = build_all();
        let r = reduced_system(&c);
        let g = |i: usize| {
            let x2 = Polynomial::var(i).pow(2);
            Polynomial::one()
                .add(&x2.scale(&rat(-7, 3)))
                .add(&x2.pow(2).scale(&rat(1, 2)))
        };
        let expected = [
            Polynomial::var(0).mul(&g(1)).mul(&g(2)).scale(&rat_int(-2)),
            Polynomial::var(1).mul(&g(0)).mul(&g(2)).scale(&rat_int(-2)),
            Polynomial::var(2).mul(&g(0)).mul(&g(1)).scale(&rat_int(-2)),
        ];
        for a in 0..3 {
            assert_eq!(r.chi_y0.coeff(&MultiIndex::single(3 + a)), expected[a]);
        }
    }

    #[test]
    fn proportionality_constant_detection() {
        let a = Polynomial::var(0).scale(&rat(3, 4));
        let b = Polynomial::var(0).scale(&rat(1, 2));
        assert_eq!(proportionality_constant(&a, &b), Some(rat(3, 2)));
        let c = Polynomial::var(1);
        assert_eq!(proportionality_constant(&a, &c), None);
        assert_eq!(proportionality_constant(&a, &Polynomial::zero()), None);
    }
}
