//! Sparse exact multivariate polynomials in the six coordinates
//! `(x1, x2, x3, y1, y2, y3)` of R^6.
//!
//! Terms are kept in a canonical graded-lexicographic order (total degree
//! first, then the exponent of `x1`, `x2`, ... as tie-break), zero
//! coefficients are never stored, and the text form is deterministic, so
//! equal polynomials serialize identically.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use thiserror::Error;

use crate::rational::{pow_rat, rat_int, Rational};

/// Number of coordinates; positions 0..2 are x1..x3, positions 3..5 are y1..y3.
pub const NVARS: usize = 6;

/// Canonical variable names, indexed by coordinate position.
pub const VAR_NAMES: [&str; NVARS] = ["x1", "x2", "x3", "y1", "y2", "y3"];

/// Exponent vector of a monomial: one nonnegative exponent per coordinate.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct ExponentVector(pub [u32; NVARS]);

impl ExponentVector {
    pub fn zero() -> Self {
        ExponentVector([0; NVARS])
    }

    pub fn var(index: usize) -> Self {
        assert!(index < NVARS, "variable index out of range");
        let mut e = [0; NVARS];
        e[index] = 1;
        ExponentVector(e)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_constant(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Product of monomials: exponents add.
    pub fn mul(&self, other: &Self) -> Self {
        let mut e = [0; NVARS];
        for i in 0..NVARS {
            e[i] = self.0[i] + other.0[i];
        }
        ExponentVector(e)
    }
}

impl Ord for ExponentVector {
    /// Graded lexicographic: higher total degree is greater; ties compare the
    /// exponent of x1 first, then x2, and so on.
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for ExponentVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial: finite map from monomials to nonzero rational
/// coefficients. Immutable in spirit; all operations return new values.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Polynomial {
    terms: BTreeMap<ExponentVector, Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial {
            terms: BTreeMap::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(ExponentVector::zero(), c);
        }
        Polynomial { terms }
    }

    pub fn one() -> Self {
        Self::constant(rat_int(1))
    }

    /// The coordinate polynomial `x1`, `x2`, ..., `y3`.
    pub fn var(index: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(ExponentVector::var(index), rat_int(1));
        Polynomial { terms }
    }

    /// Builds from arbitrary (monomial, coefficient) pairs, merging
    /// duplicates and dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = (ExponentVector, Rational)>>(iter: I) -> Self {
        let mut out = Polynomial::zero();
        for (e, c) in iter {
            out.add_term(e, c);
        }
        out
    }

    fn add_term(&mut self, e: ExponentVector, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    /// Terms in ascending canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of a monomial (zero if absent).
    pub fn coeff(&self, e: &ExponentVector) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    /// Leading (greatest) monomial in graded-lex order, if nonzero.
    pub fn leading_monomial(&self) -> Option<&ExponentVector> {
        self.terms.keys().next_back()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.total_degree())
            .max()
            .unwrap_or(0)
    }

    /// Which coordinates actually appear.
    pub fn vars_used(&self) -> [bool; NVARS] {
        let mut used = [false; NVARS];
        for e in self.terms.keys() {
            for (i, &exp) in e.0.iter().enumerate() {
                if exp > 0 {
                    used[i] = true;
                }
            }
        }
        used
    }

    /// Greatest coordinate index that appears, if any.
    pub fn max_var_used(&self) -> Option<usize> {
        self.vars_used()
            .iter()
            .enumerate()
            .filter(|(_, &u)| u)
            .map(|(i, _)| i)
            .next_back()
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn scale(&self, factor: &Rational) -> Polynomial {
        if factor.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(e, c)| (*e, c * factor)).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea.mul(eb), ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, exp: u32) -> Polynomial {
        let mut out = Polynomial::one();
        for _ in 0..exp {
            out = out.mul(self);
        }
        out
    }

    /// Formal partial derivative with respect to the indexed coordinate.
    pub fn diff(&self, var: usize) -> Polynomial {
        assert!(var < NVARS, "variable index out of range");
        let mut out = Polynomial::zero();
        for (e, c) in &self.terms {
            let n = e.0[var];
            if n == 0 {
                continue;
            }
            let mut e2 = *e;
            e2.0[var] = n - 1;
            out.add_term(e2, c * rat_int(n as i64));
        }
        out
    }

    /// Exact evaluation; no rounding anywhere.
    pub fn eval(&self, point: &[Rational; NVARS]) -> Rational {
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (v, &exp) in e.0.iter().enumerate() {
                if exp > 0 {
                    t *= pow_rat(&point[v], exp);
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitutes a single variable by a polynomial; the replacement may
    /// mention other variables (or the substituted one itself).
    pub fn subst(&self, var: usize, replacement: &Polynomial) -> Polynomial {
        assert!(var < NVARS, "variable index out of range");
        let max_exp = self
            .terms
            .keys()
            .map(|e| e.0[var])
            .max()
            .unwrap_or(0) as usize;
        let mut powers = Vec::with_capacity(max_exp + 1);
        powers.push(Polynomial::one());
        for k in 1..=max_exp {
            let next = powers[k - 1].mul(replacement);
            powers.push(next);
        }
        let mut out = Polynomial::zero();
        for (e, c) in &self.terms {
            let n = e.0[var] as usize;
            let mut rest = *e;
            rest.0[var] = 0;
            let base = Polynomial::from_terms([(rest, c.clone())]);
            out = out.add(&base.mul(&powers[n]));
        }
        out
    }

    /// Simultaneous substitution of every variable: coordinate `v` is
    /// replaced by `assignment[v]` in a single step.
    pub fn compose(&self, assignment: &[Polynomial; NVARS]) -> Polynomial {
        let mut out = Polynomial::zero();
        for (e, c) in &self.terms {
            let mut t = Polynomial::constant(c.clone());
            for (v, &exp) in e.0.iter().enumerate() {
                if exp > 0 {
                    t = t.mul(&assignment[v].pow(exp));
                }
            }
            out = out.add(&t);
        }
        out
    }
}

impl fmt::Display for Polynomial {
    /// Canonical text form: terms in descending graded-lex order, every
    /// coefficient as `num/den`, e.g. `1/2*x1^3*y2 - 7/6*x1`. The zero
    /// polynomial prints as `0/1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use num_traits::Signed;
        if self.terms.is_empty() {
            return write!(f, "0/1");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let abs = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            write!(f, "{}/{}", abs.numer(), abs.denom())?;
            for (v, &exp) in e.0.iter().enumerate() {
                match exp {
                    0 => {}
                    1 => write!(f, "*{}", VAR_NAMES[v])?,
                    _ => write!(f, "*{}^{}", VAR_NAMES[v], exp)?,
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyParseError {
    #[error("empty polynomial text")]
    Empty,
    #[error("invalid coefficient {0:?}")]
    BadCoefficient(String),
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
    #[error("invalid exponent {0:?}")]
    BadExponent(String),
    #[error("unexpected token at {0:?}")]
    Unexpected(String),
}

impl FromStr for Polynomial {
    type Err = PolyParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_polynomial(s)
    }
}

fn parse_polynomial(s: &str) -> Result<Polynomial, PolyParseError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(PolyParseError::Empty);
    }
    let mut out = Polynomial::zero();
    // Split into signed terms at top level.
    let mut rest = s;
    let mut sign = 1i64;
    if let Some(r) = rest.strip_prefix('-') {
        sign = -1;
        rest = r.trim_start();
    } else if let Some(r) = rest.strip_prefix('+') {
        rest = r.trim_start();
    }
    loop {
        let end = find_term_end(rest);
        let term = rest[..end].trim();
        let (e, c) = parse_term(term)?;
        out.add_term(e, c * rat_int(sign));
        rest = rest[end..].trim_start();
        if rest.is_empty() {
            break;
        }
        sign = match rest.chars().next() {
            Some('+') => 1,
            Some('-') => -1,
            _ => return Err(PolyParseError::Unexpected(rest.to_string())),
        };
        rest = rest[1..].trim_start();
    }
    Ok(out)
}

/// Index just past the current term: the next top-level `+` or `-` that is
/// a term separator (preceded by whitespace or a digit/letter, i.e. not part
/// of a coefficient's own sign).
fn find_term_end(s: &str) -> usize {
    for (i, ch) in s.char_indices().skip(1) {
        if ch == '+' || ch == '-' {
            return i;
        }
    }
    s.len()
}

fn parse_term(term: &str) -> Result<(ExponentVector, Rational), PolyParseError> {
    let mut parts = term.split('*').map(str::trim);
    let coeff_text = parts.next().ok_or(PolyParseError::Empty)?;
    let coeff = crate::rational::parse_rational(coeff_text)
        .map_err(|_| PolyParseError::BadCoefficient(coeff_text.to_string()))?;
    let mut e = ExponentVector::zero();
    for p in parts {
        let (name, exp) = match p.split_once('^') {
            None => (p, 1u32),
            Some((name, exp_text)) => {
                let exp = exp_text
                    .trim()
                    .parse::<u32>()
                    .map_err(|_| PolyParseError::BadExponent(exp_text.to_string()))?;
                (name.trim(), exp)
            }
        };
        let idx = VAR_NAMES
            .iter()
            .position(|&v| v == name)
            .ok_or_else(|| PolyParseError::UnknownVariable(name.to_string()))?;
        e.0[idx] += exp;
    }
    Ok((e, coeff))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn x(i: usize) -> Polynomial {
        Polynomial::var(i)
    }

    #[test]
    fn add_cancellation() {
        let p = x(0).add(&x(0).neg());
        assert!(p.is_zero());
        assert_eq!(p.to_string(), "0/1");
    }

    #[test]
    fn add_disjoint_supports() {
        let p = x(0).pow(2).add(&x(3).pow(2));
        assert_eq!(p.num_terms(), 2);
        assert_eq!(p.to_string(), "1/1*x1^2 + 1/1*y1^2");
    }

    #[test]
    fn mul_difference_of_squares() {
        let p = x(0).add(&x(3)).mul(&x(0).sub(&x(3)));
        assert_eq!(p, x(0).pow(2).sub(&x(3).pow(2)));
    }

    #[test]
    fn mul_by_zero_absorbs() {
        let p = Polynomial::zero().mul(&x(0).add(&Polynomial::one()));
        assert!(p.is_zero());
    }

    #[test]
    fn square_of_sum_of_squares() {
        // (x1^2 + y1^2)^2 = x1^4 + 2 x1^2 y1^2 + y1^4
        let u = x(0).pow(2).add(&x(3).pow(2));
        let sq = u.pow(2);
        let expected = Polynomial::from_terms([
            (ExponentVector([4, 0, 0, 0, 0, 0]), rat_int(1)),
            (ExponentVector([2, 0, 0, 2, 0, 0]), rat_int(2)),
            (ExponentVector([0, 0, 0, 4, 0, 0]), rat_int(1)),
        ]);
        assert_eq!(sq, expected);
    }

    #[test]
    fn diff_basic() {
        // d(x1^2 y2)/dx1 = 2 x1 y2
        let p = x(0).pow(2).mul(&x(4));
        assert_eq!(p.diff(0), x(0).mul(&x(4)).scale(&rat_int(2)));
        // d(const)/dvar = 0
        assert!(Polynomial::constant(rat(3, 7)).diff(2).is_zero());
    }

    #[test]
    fn subst_identity_is_noop() {
        let p = x(0).pow(3).add(&x(1).mul(&x(0)).scale(&rat(-7, 6)));
        assert_eq!(p.subst(0, &x(0)), p);
    }

    #[test]
    fn subst_zero_kills_terms() {
        let p = x(0).mul(&x(3)).add(&x(1));
        assert_eq!(p.subst(3, &Polynomial::zero()), x(1));
    }

    #[test]
    fn compose_matches_sequential_subst_on_disjoint_targets() {
        let p = x(1).pow(2).mul(&x(2));
        let mut assignment: [Polynomial; NVARS] =
            std::array::from_fn(Polynomial::var);
        assignment[1] = x(0);
        assignment[2] = x(1);
        let composed = p.compose(&assignment);
        let sequential = p.subst(1, &x(0)).subst(2, &x(1));
        assert_eq!(composed, sequential);
        assert_eq!(composed, x(0).pow(2).mul(&x(1)));
    }

    #[test]
    fn display_matches_canonical_example() {
        let p = x(0)
            .pow(3)
            .mul(&x(4))
            .scale(&rat(1, 2))
            .add(&x(0).scale(&rat(-7, 6)));
        assert_eq!(p.to_string(), "1/2*x1^3*y2 - 7/6*x1");
    }

    #[test]
    fn parse_serialize_roundtrip() {
        let texts = [
            "1/2*x1^3*y2 - 7/6*x1",
            "0/1",
            "-1/1*x1 + 1/1",
            "22/1",
            "1/6*x3^4 - 7/3*x2^2*y3 + 1/1*x1*y1*y2",
        ];
        for t in texts {
            let p: Polynomial = t.parse().unwrap();
            let s = p.to_string();
            let p2: Polynomial = s.parse().unwrap();
            assert_eq!(p, p2);
            assert_eq!(s, p2.to_string());
        }
    }

    #[test]
    fn grlex_order_is_canonical() {
        // degree dominates, then x1 exponent decides
        let lo = ExponentVector([1, 0, 0, 0, 0, 0]);
        let hi = ExponentVector([3, 0, 0, 0, 1, 0]);
        assert!(hi > lo);
        let a = ExponentVector([1, 0, 0, 1, 0, 0]);
        let b = ExponentVector([0, 2, 0, 0, 0, 0]);
        assert!(a > b); // same degree, higher x1 exponent wins
    }
}
