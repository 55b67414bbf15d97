//! Sparse multivariate polynomials over arbitrary-precision integers.
//!
//! A [`Polynomial`] is a canonical map from [`Monomial`] to nonzero `BigInt`
//! coefficient: no zero coefficient and no zero exponent is ever stored, so
//! structural equality is polynomial equality. Coefficients are
//! arbitrary-precision from the start; Cayley-Menger coefficients grow
//! factorially and fixed-width arithmetic would overflow silently.
//!
//! Values are immutable in practice: every operation is a pure function and
//! no interior mutability is exposed, so polynomials can be shared freely
//! across threads.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::io;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::rational::{rational_pow, Rational};

mod monomial;
mod parse;
mod var;

pub use monomial::Monomial;
pub use parse::ParseError;
pub use var::{Degree, VarId};

#[derive(Debug, Error)]
pub enum PolyError {
    /// A variable of the polynomial has no value in the evaluation map.
    #[error("variable {0} has no value in the evaluation map")]
    MissingVariable(VarId),
    /// Exact division failed; carries the first remainder whose leading
    /// term is not divisible by the divisor's.
    #[error("not exactly divisible; remainder {remainder}")]
    NotDivisible { remainder: Polynomial },
    /// The homogenization target lies below the group degree of the input.
    #[error("homogenization target {target} is below the group degree {actual}")]
    TargetTooSmall { target: u32, actual: u32 },
}

/// A sparse multivariate polynomial with `BigInt` coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, BigInt>,
}

impl Polynomial {
    pub fn zero() -> Polynomial {
        Polynomial::default()
    }

    pub fn one() -> Polynomial {
        Polynomial::constant(1)
    }

    pub fn constant<C: Into<BigInt>>(c: C) -> Polynomial {
        Polynomial::monomial(Monomial::unit(), c)
    }

    pub fn variable(v: VarId) -> Polynomial {
        Polynomial::monomial(Monomial::var(v), 1)
    }

    pub fn monomial<C: Into<BigInt>>(m: Monomial, c: C) -> Polynomial {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigInt)>>(iter: I) -> Polynomial {
        let mut p = Polynomial::zero();
        for (m, c) in iter {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Iterates terms in ascending monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&BigInt> {
        self.terms.get(m)
    }

    /// The term with the largest monomial, or `None` for zero.
    pub fn leading_term(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Simultaneous substitution: every variable in `map` is replaced by its
    /// image, and variables on the right-hand sides are never re-substituted.
    /// Unmapped variables are fixed.
    pub fn substitute(&self, map: &BTreeMap<VarId, Polynomial>) -> Polynomial {
        if map.is_empty() || self.is_zero() {
            return self.clone();
        }
        let mut powers: HashMap<(VarId, u32), Polynomial> = HashMap::new();
        let mut result = Polynomial::zero();
        for (mono, coeff) in &self.terms {
            let (fixed, mapped) = mono.partition(|v| map.contains_key(&v));
            let mut acc = Polynomial::monomial(fixed, coeff.clone());
            for (v, e) in mapped {
                let image = powers
                    .entry((v, e))
                    .or_insert_with(|| map[&v].pow(e))
                    .clone();
                acc = &acc * &image;
            }
            result += &acc;
        }
        result
    }

    /// Exact evaluation at a rational point covering every variable.
    pub fn evaluate(&self, map: &BTreeMap<VarId, Rational>) -> Result<Rational, PolyError> {
        let mut total = Rational::zero();
        for (mono, coeff) in &self.terms {
            let mut value = Rational::from_integer(coeff.clone());
            for (v, e) in mono.exponents() {
                let point = map.get(&v).ok_or(PolyError::MissingVariable(v))?;
                value *= rational_pow(point, e);
            }
            total += value;
        }
        Ok(total)
    }

    /// The gcd of the absolute values of all coefficients; zero for the zero
    /// polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn total_degree(&self) -> Degree {
        self.terms
            .keys()
            .map(|m| m.total_degree())
            .max()
            .map_or(Degree::MinusInfinity, Degree::Finite)
    }

    /// Maximum degree over the terms, counting only the variables in `vars`.
    pub fn partial_degree(&self, vars: &BTreeSet<VarId>) -> Degree {
        self.terms
            .keys()
            .map(|m| m.group_degree(vars))
            .max()
            .map_or(Degree::MinusInfinity, Degree::Finite)
    }

    /// Whether all terms share the same total degree. The zero polynomial is
    /// homogeneous of every degree and reports `(true, None)`.
    pub fn is_homogeneous(&self) -> (bool, Option<u32>) {
        self.homogeneity(|m| m.total_degree())
    }

    /// Whether all terms share the same degree in the variables of `vars`.
    pub fn is_group_homogeneous(&self, vars: &BTreeSet<VarId>) -> (bool, Option<u32>) {
        self.homogeneity(|m| m.group_degree(vars))
    }

    fn homogeneity<F: Fn(&Monomial) -> u32>(&self, degree: F) -> (bool, Option<u32>) {
        let mut iter = self.terms.keys();
        let Some(first) = iter.next() else {
            return (true, None);
        };
        let d = degree(first);
        if iter.all(|m| degree(m) == d) {
            (true, Some(d))
        } else {
            (false, None)
        }
    }

    /// Exact division in the integer polynomial ring.
    ///
    /// Returns `r` with `q * r = self`, or [`PolyError::NotDivisible`]
    /// carrying the failing remainder. Panics on a zero divisor.
    pub fn exact_divide(&self, q: &Polynomial) -> Result<Polynomial, PolyError> {
        assert!(!q.is_zero(), "exact_divide by the zero polynomial");
        let (lead_mono, lead_coeff) = q.leading_term().expect("nonzero divisor");
        let mut remainder = self.clone();
        let mut quotient = Polynomial::zero();
        while let Some((rm, rc)) = remainder.leading_term() {
            let Some(qm) = rm.quotient(lead_mono) else {
                return Err(PolyError::NotDivisible { remainder });
            };
            let (qc, rem) = rc.div_rem(lead_coeff);
            if !rem.is_zero() {
                return Err(PolyError::NotDivisible { remainder });
            }
            let t = Polynomial::monomial(qm, qc);
            remainder -= &(&t * q);
            quotient += &t;
        }
        Ok(quotient)
    }

    /// Raises each term to group degree `target` in `vars` by multiplying
    /// with powers of the fresh variable `h`.
    ///
    /// `h` must be outside `vars` and must not occur in `self`.
    pub fn homogenize_group(
        &self,
        vars: &BTreeSet<VarId>,
        target: u32,
        h: VarId,
    ) -> Result<Polynomial, PolyError> {
        assert!(
            !vars.contains(&h),
            "homogenization variable {h} lies in the group"
        );
        assert!(
            !self.mentions(h),
            "homogenization variable {h} occurs in the polynomial"
        );
        if let Degree::Finite(actual) = self.partial_degree(vars) {
            if target < actual {
                return Err(PolyError::TargetTooSmall { target, actual });
            }
        }
        let terms = self.terms.iter().map(|(m, c)| {
            let gap = target - m.group_degree(vars);
            (m.mul(&Monomial::power(h, gap)), c.clone())
        });
        Ok(Polynomial::from_terms(terms))
    }

    pub fn mentions(&self, v: VarId) -> bool {
        self.terms.keys().any(|m| m.exponent_of(v) > 0)
    }

    pub fn variables(&self) -> BTreeSet<VarId> {
        self.terms
            .keys()
            .flat_map(|m| m.exponents().map(|(v, _)| v))
            .collect()
    }

    /// Deterministic text rendering: terms in descending monomial order,
    /// variables printed as `d_i_j` and `t_k`. Round-trips through
    /// [`Polynomial::parse`].
    pub fn canonical_string(&self) -> String {
        self.to_string()
    }

    /// Streams the canonical rendering term by term, bounding memory on
    /// large polynomials.
    pub fn write_canonical<W: io::Write + ?Sized>(&self, w: &mut W) -> io::Result<()> {
        if self.is_zero() {
            return w.write_all(b"0");
        }
        for (idx, (mono, coeff)) in self.terms.iter().rev().enumerate() {
            let rendered = TermFmt {
                mono,
                coeff,
                leading: idx == 0,
            }
            .to_string();
            w.write_all(rendered.as_bytes())?;
        }
        Ok(())
    }

    /// Parses the canonical text grammar back into a polynomial.
    pub fn parse(input: &str) -> Result<Polynomial, ParseError> {
        parse::parse_polynomial(input)
    }
}

struct TermFmt<'a> {
    mono: &'a Monomial,
    coeff: &'a BigInt,
    leading: bool,
}

impl fmt::Display for TermFmt<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.leading {
            if self.coeff.is_negative() {
                write!(f, "-")?;
            }
        } else if self.coeff.is_negative() {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        let magnitude = self.coeff.magnitude();
        if !magnitude.is_one() || self.mono.is_unit() {
            write!(f, "{magnitude}")?;
            if !self.mono.is_unit() {
                write!(f, "*")?;
            }
        }
        let mut first = true;
        for (v, e) in self.mono.exponents() {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{v}")?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (mono, coeff)) in self.terms.iter().rev().enumerate() {
            TermFmt {
                mono,
                coeff,
                leading: idx == 0,
            }
            .fmt(f)?;
        }
        Ok(())
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c))
                .collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                (&self).$method(rhs)
            }
        }
        impl $trait<Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);
