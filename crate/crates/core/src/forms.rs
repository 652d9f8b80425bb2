//! Differential forms on R^6 with polynomial coefficients.
//!
//! A degree-k form is a finite map from strictly increasing multi-indices of
//! size k to [`Polynomial`] coefficients. Supported operations: wedge
//! product, exterior derivative, Euclidean Hodge star (orientation
//! `dx1^dx2^dx3^dy1^dy2^dy3`), pullback under linear maps, coefficient
//! substitution y := 0, and pointwise evaluation.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::matrix::AntisymMatrix;
use crate::poly::{Polynomial, NVARS, VAR_NAMES};
use crate::rational::Rational;

/// Strictly increasing subset of {0, ..., 5}, stored as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct MultiIndex(u8);

pub const FULL_MASK: u8 = 0b111111;

impl MultiIndex {
    pub fn empty() -> Self {
        MultiIndex(0)
    }

    /// The full multi-index (0,1,2,3,4,5) labelling the volume form.
    pub fn full() -> Self {
        MultiIndex(FULL_MASK)
    }

    /// From a list of distinct indices in 0..6 (any order).
    pub fn from_indices(indices: &[usize]) -> Self {
        let mut mask = 0u8;
        for &i in indices {
            assert!(i < NVARS, "covector index out of range");
            assert!(mask & (1 << i) == 0, "repeated covector index");
            mask |= 1 << i;
        }
        MultiIndex(mask)
    }

    pub fn single(i: usize) -> Self {
        Self::from_indices(&[i])
    }

    pub fn degree(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0 & (1 << i) != 0
    }

    pub fn indices(&self) -> Vec<usize> {
        (0..NVARS).filter(|&i| self.contains(i)).collect()
    }

    pub fn is_disjoint(&self, other: &MultiIndex) -> bool {
        self.0 & other.0 == 0
    }

    pub fn union(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0 | other.0)
    }

    pub fn complement(&self) -> MultiIndex {
        MultiIndex(!self.0 & FULL_MASK)
    }

    /// Sign of sorting the concatenation (self, other) of two disjoint
    /// increasing index lists into one increasing list: parity of the number
    /// of pairs (i in self, j in other) with j < i.
    pub fn merge_sign(&self, other: &MultiIndex) -> i32 {
        debug_assert!(self.is_disjoint(other));
        let mut inversions = 0u32;
        for i in 0..NVARS {
            if self.contains(i) {
                let below = other.0 & ((1u8 << i) - 1);
                inversions += below.count_ones();
            }
        }
        if inversions % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

impl Ord for MultiIndex {
    /// Lexicographic on the increasing index tuple (shorter prefixes first).
    fn cmp(&self, other: &Self) -> Ordering {
        self.indices().cmp(&other.indices())
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() == 0 {
            return write!(f, "1");
        }
        let names: Vec<String> = self
            .indices()
            .iter()
            .map(|&i| format!("d{}", VAR_NAMES[i]))
            .collect();
        write!(f, "{}", names.join("^"))
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormError {
    #[error("wedge degree overflow: {0} + {1} > 6")]
    DegreeOverflow(usize, usize),
    #[error("expected a form of degree {expected}, got degree {got}")]
    DegreeMismatch { expected: usize, got: usize },
}

/// Differential form of a fixed degree with polynomial coefficients.
/// No stored coefficient is the zero polynomial.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DiffForm {
    degree: usize,
    terms: BTreeMap<MultiIndex, Polynomial>,
}

impl DiffForm {
    pub fn zero(degree: usize) -> Self {
        assert!(degree <= NVARS);
        DiffForm {
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// A 0-form wrapping a polynomial.
    pub fn from_poly(p: Polynomial) -> Self {
        let mut out = DiffForm::zero(0);
        out.add_term(MultiIndex::empty(), p);
        out
    }

    pub fn from_terms<I>(degree: usize, iter: I) -> Self
    where
        I: IntoIterator<Item = (MultiIndex, Polynomial)>,
    {
        let mut out = DiffForm::zero(degree);
        for (idx, p) in iter {
            assert_eq!(idx.degree(), degree, "multi-index size must equal degree");
            out.add_term(idx, p);
        }
        out
    }

    fn add_term(&mut self, idx: MultiIndex, p: Polynomial) {
        if p.is_zero() {
            return;
        }
        debug_assert_eq!(idx.degree(), self.degree);
        use std::collections::btree_map::Entry;
        match self.terms.entry(idx) {
            Entry::Vacant(v) => {
                v.insert(p);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get().add(&p);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Polynomial)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient at a multi-index (zero polynomial if absent).
    pub fn coeff(&self, idx: &MultiIndex) -> Polynomial {
        self.terms.get(idx).cloned().unwrap_or_else(Polynomial::zero)
    }

    pub fn add(&self, other: &DiffForm) -> DiffForm {
        assert_eq!(self.degree, other.degree, "cannot add forms of unequal degree");
        let mut out = self.clone();
        for (idx, p) in &other.terms {
            out.add_term(*idx, p.clone());
        }
        out
    }

    pub fn neg(&self) -> DiffForm {
        DiffForm {
            degree: self.degree,
            terms: self.terms.iter().map(|(i, p)| (*i, p.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &DiffForm) -> DiffForm {
        self.add(&other.neg())
    }

    pub fn scale(&self, factor: &Rational) -> DiffForm {
        let mut out = DiffForm::zero(self.degree);
        for (idx, p) in &self.terms {
            out.add_term(*idx, p.scale(factor));
        }
        out
    }

    pub fn scale_poly(&self, factor: &Polynomial) -> DiffForm {
        let mut out = DiffForm::zero(self.degree);
        for (idx, p) in &self.terms {
            out.add_term(*idx, p.mul(factor));
        }
        out
    }

    /// Graded-commutative exterior product. Terms with a repeated covector
    /// vanish; the sign comes from sorting the concatenated indices.
    pub fn wedge(&self, other: &DiffForm) -> Result<DiffForm, FormError> {
        let degree = self.degree + other.degree;
        if degree > NVARS {
            return Err(FormError::DegreeOverflow(self.degree, other.degree));
        }
        let mut out = DiffForm::zero(degree);
        for (ia, pa) in &self.terms {
            for (ib, pb) in &other.terms {
                if !ia.is_disjoint(ib) {
                    continue;
                }
                let sign = ia.merge_sign(ib);
                let mut prod = pa.mul(pb);
                if sign < 0 {
                    prod = prod.neg();
                }
                out.add_term(ia.union(ib), prod);
            }
        }
        Ok(out)
    }

    /// Exterior derivative: d(f dz_I) = sum_v (df/dv) dv ^ dz_I.
    pub fn ext_d(&self) -> DiffForm {
        assert!(self.degree < NVARS, "exterior derivative of a top form");
        let mut out = DiffForm::zero(self.degree + 1);
        for (idx, p) in &self.terms {
            for v in 0..NVARS {
                if idx.contains(v) {
                    continue;
                }
                let dp = p.diff(v);
                if dp.is_zero() {
                    continue;
                }
                let dv = MultiIndex::single(v);
                let sign = dv.merge_sign(idx);
                let coeff = if sign < 0 { dp.neg() } else { dp };
                out.add_term(dv.union(idx), coeff);
            }
        }
        out
    }

    /// Euclidean Hodge star with orientation dx1^dx2^dx3^dy1^dy2^dy3:
    /// on basis elements, *dz_I = eps(I, I^c) dz_{I^c} where eps is the
    /// permutation sign of (I, I^c) against (0,...,5); coefficient-linear.
    pub fn hodge_star(&self) -> DiffForm {
        let mut out = DiffForm::zero(NVARS - self.degree);
        for (idx, p) in &self.terms {
            let comp = idx.complement();
            let sign = idx.merge_sign(&comp);
            let coeff = if sign < 0 { p.neg() } else { p.clone() };
            out.add_term(comp, coeff);
        }
        out
    }

    /// Pullback under the linear map z -> M z: coefficients are composed
    /// with the map and each basis covector dz_i becomes sum_j M[i][j] dz_j,
    /// fully expanded and canonicalized. M need not be invertible.
    pub fn pullback_linear(&self, m: &Matrix6) -> DiffForm {
        let assignment: [Polynomial; NVARS] = std::array::from_fn(|row| {
            let mut p = Polynomial::zero();
            for (col, entry) in m[row].iter().enumerate() {
                p = p.add(&Polynomial::var(col).scale(entry));
            }
            p
        });
        // dz_i pulls back to the constant-coefficient 1-form with row i of M.
        let covector_images: [DiffForm; NVARS] = std::array::from_fn(|row| {
            DiffForm::from_terms(
                1,
                (0..NVARS).map(|col| {
                    (
                        MultiIndex::single(col),
                        Polynomial::constant(m[row][col].clone()),
                    )
                }),
            )
        });
        let mut out = DiffForm::zero(self.degree);
        for (idx, p) in &self.terms {
            let mut wedge_part = DiffForm::from_poly(Polynomial::one());
            for i in idx.indices() {
                wedge_part = wedge_part
                    .wedge(&covector_images[i])
                    .expect("pullback preserves degree");
            }
            let composed = p.compose(&assignment);
            out = out.add(&wedge_part.scale_poly(&composed));
        }
        out
    }

    /// Substitutes y1 = y2 = y3 = 0 into every coefficient polynomial;
    /// basis covectors are untouched.
    pub fn subst_coeffs_y0(&self) -> DiffForm {
        let zero = Polynomial::zero();
        let mut out = DiffForm::zero(self.degree);
        for (idx, p) in &self.terms {
            let substituted = p.subst(3, &zero).subst(4, &zero).subst(5, &zero);
            out.add_term(*idx, substituted);
        }
        out
    }

    /// All coefficients evaluated at a point, in canonical multi-index order.
    pub fn eval_coeffs(&self, point: &[Rational; NVARS]) -> Vec<(MultiIndex, Rational)> {
        self.terms
            .iter()
            .map(|(idx, p)| (*idx, p.eval(point)))
            .collect()
    }

    /// Pointwise matrix of a 2-form: M[i][j] is the coefficient of
    /// dz_i ^ dz_j evaluated at the point for i < j, antisymmetrized.
    pub fn eval_two_form(&self, point: &[Rational; NVARS]) -> Result<AntisymMatrix, FormError> {
        if self.degree != 2 {
            return Err(FormError::DegreeMismatch {
                expected: 2,
                got: self.degree,
            });
        }
        let mut m = vec![vec![Rational::from_integer(0.into()); NVARS]; NVARS];
        for (idx, p) in &self.terms {
            let ij = idx.indices();
            let (i, j) = (ij[0], ij[1]);
            let v = p.eval(point);
            m[i][j] = v.clone();
            m[j][i] = -v;
        }
        Ok(AntisymMatrix::new(m).expect("constructed antisymmetrically"))
    }
}

/// 6x6 rational matrix, used for linear pullbacks and rotations.
pub type Matrix6 = [[Rational; NVARS]; NVARS];

/// The identity map on R^6.
pub fn identity_matrix() -> Matrix6 {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            if i == j {
                Rational::from_integer(1.into())
            } else {
                Rational::from_integer(0.into())
            }
        })
    })
}

/// Matrix product (composition of linear maps).
pub fn matrix_mul(a: &Matrix6, b: &Matrix6) -> Matrix6 {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let mut acc = Rational::from_integer(0.into());
            for (k, b_row) in b.iter().enumerate() {
                acc += &a[i][k] * &b_row[j];
            }
            acc
        })
    })
}

impl fmt::Display for DiffForm {
    /// Sum of `(coefficient) * covector` terms in canonical multi-index
    /// order; the zero form prints as `(0/1)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "(0/1)");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(idx, p)| format!("({}) * {}", p, idx))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Polynomial;
    use crate::rational::{rat, rat_int};

    fn dvar(i: usize) -> DiffForm {
        DiffForm::from_terms(1, [(MultiIndex::single(i), Polynomial::one())])
    }

    fn xp(i: usize) -> Polynomial {
        Polynomial::var(i)
    }

    #[test]
    fn wedge_repeated_index_vanishes() {
        let dx1 = dvar(0);
        assert!(dx1.wedge(&dx1).unwrap().is_zero());
    }

    #[test]
    fn wedge_coefficients_multiply() {
        // (x1 dy1) ^ (x2 dy2) = x1 x2 dy1^dy2
        let a = DiffForm::from_terms(1, [(MultiIndex::single(3), xp(0))]);
        let b = DiffForm::from_terms(1, [(MultiIndex::single(4), xp(1))]);
        let w = a.wedge(&b).unwrap();
        assert_eq!(w.coeff(&MultiIndex::from_indices(&[3, 4])), xp(0).mul(&xp(1)));
    }

    #[test]
    fn wedge_anticommutes_on_one_forms() {
        let a = dvar(0).wedge(&dvar(3)).unwrap();
        let b = dvar(3).wedge(&dvar(0)).unwrap();
        assert_eq!(a, b.neg());
    }

    #[test]
    fn wedge_degree_overflow_rejected() {
        let vol = DiffForm::from_terms(6, [(MultiIndex::full(), Polynomial::one())]);
        assert_eq!(
            vol.wedge(&dvar(0)),
            Err(FormError::DegreeOverflow(6, 1))
        );
    }

    #[test]
    fn ext_d_basic() {
        // d(x1 dy1) = dx1 ^ dy1
        let a = DiffForm::from_terms(1, [(MultiIndex::single(3), xp(0))]);
        let d = a.ext_d();
        assert_eq!(d.coeff(&MultiIndex::from_indices(&[0, 3])), Polynomial::one());
        assert_eq!(d.num_terms(), 1);
    }

    #[test]
    fn ext_d_squares_to_zero() {
        // d(d(x1^3 y2)) = 0
        let f = DiffForm::from_poly(xp(0).pow(3).mul(&xp(4)));
        assert!(f.ext_d().ext_d().is_zero());
    }

    #[test]
    fn hodge_star_of_one_is_volume() {
        let one = DiffForm::from_poly(Polynomial::one());
        let vol = one.hodge_star();
        assert_eq!(vol.coeff(&MultiIndex::full()), Polynomial::one());
        assert_eq!(vol.degree(), 6);
    }

    #[test]
    fn hodge_star_of_dx1() {
        // *dx1 = + dx2^dx3^dy1^dy2^dy3
        let starred = dvar(0).hodge_star();
        assert_eq!(
            starred.coeff(&MultiIndex::from_indices(&[1, 2, 3, 4, 5])),
            Polynomial::one()
        );
        assert_eq!(starred.num_terms(), 1);
    }

    #[test]
    fn hodge_star_twice_has_degree_sign() {
        // With the permutation-sign convention, ** = (-1)^{k(6-k)} identity.
        for k in 0..=NVARS {
            let idx = MultiIndex::from_indices(&(0..k).collect::<Vec<_>>());
            let form = DiffForm::from_terms(k, [(idx, xp(0).add(&Polynomial::one()))]);
            let twice = form.hodge_star().hodge_star();
            let expected = if (k * (NVARS - k)) % 2 == 0 {
                form.clone()
            } else {
                form.neg()
            };
            assert_eq!(twice, expected, "degree {k}");
        }
    }

    #[test]
    fn pullback_under_identity_is_noop() {
        let a = DiffForm::from_terms(
            2,
            [(MultiIndex::from_indices(&[0, 4]), xp(0).mul(&xp(5)))],
        );
        assert_eq!(a.pullback_linear(&identity_matrix()), a);
    }

    #[test]
    fn pullback_composes_contravariantly() {
        // pull(pull(a, M), N) = pull(a, M * N)
        let mut m = identity_matrix();
        m[0][0] = rat(3, 5);
        m[0][3] = rat(-4, 5);
        m[3][0] = rat(4, 5);
        m[3][3] = rat(3, 5);
        let mut n = identity_matrix();
        n[1][1] = rat(5, 13);
        n[1][4] = rat(-12, 13);
        n[4][1] = rat(12, 13);
        n[4][4] = rat(5, 13);
        let a = DiffForm::from_terms(
            2,
            [
                (MultiIndex::from_indices(&[0, 3]), xp(0).pow(2)),
                (MultiIndex::from_indices(&[1, 4]), xp(1).mul(&xp(3))),
            ],
        );
        let seq = a.pullback_linear(&m).pullback_linear(&n);
        let composed = a.pullback_linear(&matrix_mul(&m, &n));
        assert_eq!(seq, composed);
    }

    #[test]
    fn subst_y0_keeps_covectors() {
        // (x1 + y1) dy1 with y := 0 becomes x1 dy1
        let a = DiffForm::from_terms(1, [(MultiIndex::single(3), xp(0).add(&xp(3)))]);
        let s = a.subst_coeffs_y0();
        assert_eq!(s.coeff(&MultiIndex::single(3)), xp(0));
        assert!(DiffForm::zero(2).subst_coeffs_y0().is_zero());
    }

    #[test]
    fn eval_two_form_standard_symplectic() {
        // dx1^dy1 + dx2^dy2 + dx3^dy3 has the standard rank-6 matrix.
        let omega0 = DiffForm::from_terms(
            2,
            (0..3).map(|a| (MultiIndex::from_indices(&[a, a + 3]), Polynomial::one())),
        );
        let pt: [Rational; NVARS] = std::array::from_fn(|_| rat_int(7));
        let m = omega0.eval_two_form(&pt).unwrap();
        assert_eq!(crate::matrix::rank_exact(m.rows()), 6);
        let zero = DiffForm::zero(2);
        let z = zero.eval_two_form(&pt).unwrap();
        assert_eq!(crate::matrix::rank_exact(z.rows()), 0);
        assert!(dvar(0).eval_two_form(&pt).is_err());
    }

    #[test]
    fn multi_index_order_is_lex_on_tuples() {
        let a = MultiIndex::from_indices(&[0, 5]);
        let b = MultiIndex::from_indices(&[1, 2]);
        assert!(a < b);
    }
}
