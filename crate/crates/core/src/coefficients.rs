//! Exact coefficient arithmetic in `Q[q, q^-1, k, t]`, optionally truncated
//! modulo `t^(N+1)`.
//!
//! `q` is invertible (Laurent exponents), `k` is the twisting parameter of the
//! hom-deformed algebras and `t` the formal deformation parameter. Values are
//! stored sparsely as a map from exponent triples to nonzero rationals, so
//! equality is structural and printing is deterministic.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms.
pub type Rational = BigRational;

/// Build a rational from machine integers.
pub fn rational(numer: i64, denom: i64) -> Rational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn rational_from_int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Binomial coefficient as an exact rational.
pub(crate) fn binomial(n: u32, r: u32) -> Rational {
    if r > n {
        return Rational::zero();
    }
    let r = r.min(n - r);
    let mut acc = BigInt::one();
    for i in 0..r {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    Rational::from_integer(acc)
}

/// Exponents of a parameter monomial `q^q * k^k * t^t`.
///
/// Field order gives the canonical ordering: lexicographic on `(t, k, q)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ParamExp {
    pub t: u32,
    pub k: u32,
    pub q: i32,
}

impl ParamExp {
    pub const ONE: ParamExp = ParamExp { t: 0, k: 0, q: 0 };

    pub fn new(q: i32, k: u32, t: u32) -> Self {
        ParamExp { t, k, q }
    }

    fn mul(self, other: ParamExp) -> ParamExp {
        ParamExp {
            t: self.t + other.t,
            k: self.k + other.k,
            q: self.q + other.q,
        }
    }

    fn is_one(&self) -> bool {
        *self == Self::ONE
    }
}

impl fmt::Display for ParamExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        let mut push = |name: &str, e: i64| match e {
            0 => {}
            1 => parts.push(name.to_string()),
            _ => parts.push(format!("{name}^{e}")),
        };
        push("q", self.q as i64);
        push("k", self.k as i64);
        push("t", self.t as i64);
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("*"))
        }
    }
}

/// An element of `Q[q, q^-1, k, t]`, possibly truncated at `t^(N+1)`.
///
/// Invariants: no stored coefficient is zero, and when a truncation order `N`
/// is set no stored term has `t`-exponent above `N`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ParamScalar {
    terms: BTreeMap<ParamExp, Rational>,
    order: Option<u32>,
}

fn join_orders(a: Option<u32>, b: Option<u32>) -> Result<Option<u32>> {
    match (a, b) {
        (None, o) | (o, None) => Ok(o),
        (Some(l), Some(r)) if l == r => Ok(Some(l)),
        (Some(left), Some(right)) => Err(Error::TruncationMismatch { left, right }),
    }
}

impl ParamScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, ParamExp::ONE)
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(rational_from_int(n))
    }

    /// `c * q^e_q * k^e_k * t^e_t`.
    pub fn term(c: Rational, exp: ParamExp) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        ParamScalar { terms, order: None }
    }

    pub fn monomial(e_q: i32, e_k: u32, e_t: u32) -> Self {
        Self::term(Rational::one(), ParamExp::new(e_q, e_k, e_t))
    }

    pub fn q() -> Self {
        Self::monomial(1, 0, 0)
    }

    pub fn k() -> Self {
        Self::monomial(0, 1, 0)
    }

    pub fn t() -> Self {
        Self::monomial(0, 0, 1)
    }

    /// Collect terms, dropping zeros and anything beyond the truncation order.
    pub fn from_terms<I>(terms: I, order: Option<u32>) -> Self
    where
        I: IntoIterator<Item = (ParamExp, Rational)>,
    {
        let mut out = ParamScalar {
            terms: BTreeMap::new(),
            order,
        };
        for (exp, c) in terms {
            out.accumulate(exp, c);
        }
        out
    }

    fn accumulate(&mut self, exp: ParamExp, c: Rational) {
        if self.order.is_some_and(|n| exp.t > n) || c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    /// Reinterpret in the quotient by `t^(n+1)`; `None` lifts the truncation.
    pub fn with_order(mut self, order: Option<u32>) -> Self {
        if let Some(n) = order {
            self.terms.retain(|e, _| e.t <= n);
        }
        self.order = order;
        self
    }

    pub fn order(&self) -> Option<u32> {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// Terms in canonical `(t, k, q)` order.
    pub fn terms(&self) -> impl Iterator<Item = (&ParamExp, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The rational value if this scalar carries no parameters.
    pub fn as_constant(&self) -> Option<&Rational> {
        match self.terms.iter().next() {
            None => None,
            Some((e, c)) if self.terms.len() == 1 && e.is_one() => Some(c),
            _ => None,
        }
    }

    pub fn is_k_free(&self) -> bool {
        self.terms.keys().all(|e| e.k == 0)
    }

    pub fn is_t_free(&self) -> bool {
        self.terms.keys().all(|e| e.t == 0)
    }

    pub fn degree_k(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.k).max()
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let order = join_orders(self.order, other.order)?;
        let mut out = self.clone().with_order(order);
        for (e, c) in &other.terms {
            out.accumulate(*e, c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let order = join_orders(self.order, other.order)?;
        let mut out = ParamScalar {
            terms: BTreeMap::new(),
            order,
        };
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.accumulate(ea.mul(*eb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return ParamScalar {
                terms: BTreeMap::new(),
                order: self.order,
            };
        }
        ParamScalar {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
            order: self.order,
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = ParamScalar::one().with_order(self.order);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Replace `k` by `1 + t`, truncating at `t^(order+1)`.
    ///
    /// Fails if the scalar already contains `t`.
    pub fn substitute_k(&self, order: u32) -> Result<Self> {
        if !self.is_t_free() {
            return Err(Error::DoubleSubstitution);
        }
        let mut out = ParamScalar::zero().with_order(Some(order));
        for (e, c) in &self.terms {
            for i in 0..=e.k.min(order) {
                out.accumulate(ParamExp::new(e.q, 0, i), c * binomial(e.k, i));
            }
        }
        Ok(out)
    }

    /// Exact value at the given parameter point.
    pub fn evaluate(&self, q: &Rational, k: &Rational, t: &Rational) -> Result<Rational> {
        if q.is_zero() {
            return Err(Error::NonInvertibleQ);
        }
        Ok(self.terms.iter().fold(Rational::zero(), |acc, (e, c)| {
            acc + c * q.pow(e.q) * k.pow(e.k as i32) * t.pow(e.t as i32)
        }))
    }

    /// Substitute rational values for `q` and/or `k`, leaving the rest symbolic.
    pub fn specialize(&self, q: Option<&Rational>, k: Option<&Rational>) -> Result<Self> {
        if q.is_some_and(|q| q.is_zero()) {
            return Err(Error::NonInvertibleQ);
        }
        let mut out = ParamScalar::zero().with_order(self.order);
        for (e, c) in &self.terms {
            let mut c = c.clone();
            let mut exp = *e;
            if let Some(q) = q {
                c *= q.pow(e.q);
                exp.q = 0;
            }
            if let Some(k) = k {
                c *= k.pow(e.k as i32);
                exp.k = 0;
            }
            out.accumulate(exp, c);
        }
        Ok(out)
    }

    /// Split into coefficients of `t^i`, each returned `t`-free and untruncated.
    pub fn t_layers(&self) -> BTreeMap<u32, ParamScalar> {
        let mut layers: BTreeMap<u32, ParamScalar> = BTreeMap::new();
        for (e, c) in &self.terms {
            layers
                .entry(e.t)
                .or_default()
                .accumulate(ParamExp { t: 0, ..*e }, c.clone());
        }
        layers
    }

    /// Multiply by `t^shift` (dropping terms beyond the truncation order).
    pub fn shift_t(&self, shift: u32) -> Self {
        ParamScalar::from_terms(
            self.terms
                .iter()
                .map(|(e, c)| (ParamExp { t: e.t + shift, ..*e }, c.clone())),
            self.order,
        )
    }
}

fn write_term(f: &mut fmt::Formatter<'_>, exp: &ParamExp, c: &Rational, first: bool) -> fmt::Result {
    let negative = c.is_negative();
    let abs = c.abs();
    match (first, negative) {
        (true, true) => f.write_str("-")?,
        (false, true) => f.write_str(" - ")?,
        (false, false) => f.write_str(" + ")?,
        (true, false) => {}
    }
    if exp.is_one() {
        write!(f, "{abs}")
    } else if abs.is_one() {
        write!(f, "{exp}")
    } else {
        write!(f, "{abs}*{exp}")
    }
}

impl fmt::Display for ParamScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            write_term(f, e, c, i == 0)?;
        }
        Ok(())
    }
}

impl From<Rational> for ParamScalar {
    fn from(c: Rational) -> Self {
        ParamScalar::constant(c)
    }
}

impl From<i64> for ParamScalar {
    fn from(n: i64) -> Self {
        ParamScalar::from_int(n)
    }
}

impl Neg for &ParamScalar {
    type Output = ParamScalar;

    fn neg(self) -> ParamScalar {
        ParamScalar {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
            order: self.order,
        }
    }
}

impl Neg for ParamScalar {
    type Output = ParamScalar;

    fn neg(mut self) -> ParamScalar {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

// Operator forms panic on mismatched truncation orders; use the `checked_*`
// methods where orders come from user input.
macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&ParamScalar> for &ParamScalar {
            type Output = ParamScalar;

            fn $method(self, rhs: &ParamScalar) -> ParamScalar {
                self.$checked(rhs).expect("truncation orders must agree")
            }
        }

        impl $trait<ParamScalar> for ParamScalar {
            type Output = ParamScalar;

            fn $method(self, rhs: ParamScalar) -> ParamScalar {
                (&self).$method(&rhs)
            }
        }

        impl $trait<&ParamScalar> for ParamScalar {
            type Output = ParamScalar;

            fn $method(self, rhs: &ParamScalar) -> ParamScalar {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational {
        rational_from_int(n)
    }

    #[test]
    fn additive_inverse_cancels() {
        let a = ParamScalar::q() + ParamScalar::k();
        assert_eq!(a + -ParamScalar::q(), ParamScalar::k());
    }

    #[test]
    fn zero_is_additive_identity() {
        let x = ParamScalar::q() * ParamScalar::k() + ParamScalar::from_int(3);
        assert_eq!(ParamScalar::zero() + &x, x);
    }

    #[test]
    fn doubling() {
        let a = ParamScalar::one() + ParamScalar::t();
        let expected = ParamScalar::from_int(2) + ParamScalar::t().scale(&r(2));
        assert_eq!(&a + &a, expected);
    }

    #[test]
    fn laurent_inverse() {
        assert_eq!(ParamScalar::q() * ParamScalar::monomial(-1, 0, 0), ParamScalar::one());
    }

    #[test]
    fn truncation_drops_high_t() {
        let a = (ParamScalar::one() + ParamScalar::t()).with_order(Some(1));
        let expected = (ParamScalar::one() + ParamScalar::t().scale(&r(2))).with_order(Some(1));
        assert_eq!(&a * &a, expected);
    }

    #[test]
    fn cube_of_k() {
        let k = ParamScalar::k();
        assert_eq!(&(&k * &k) * &k, ParamScalar::monomial(0, 3, 0));
    }

    #[test]
    fn mismatched_orders_are_rejected() {
        let a = ParamScalar::t().with_order(Some(2));
        let b = ParamScalar::t().with_order(Some(3));
        assert_eq!(a.checked_add(&b), Err(Error::TruncationMismatch { left: 2, right: 3 }));
        // one untruncated side adopts the other's order
        let c = ParamScalar::t() * ParamScalar::t();
        assert_eq!(a.checked_add(&c).unwrap(), (ParamScalar::t() + &c).with_order(Some(2)));
        assert_eq!(a.checked_mul(&c).unwrap(), ParamScalar::zero().with_order(Some(2)));
    }

    #[test]
    fn substitute_k_examples() {
        let expected = (ParamScalar::one() + ParamScalar::t()).with_order(Some(2));
        assert_eq!(ParamScalar::k().substitute_k(2).unwrap(), expected);

        // oracle: repeated multiplication of (1 + t) in the truncated ring
        let one_t = (ParamScalar::one() + ParamScalar::t()).with_order(Some(2));
        let cubed = &(&one_t * &one_t) * &one_t;
        assert_eq!(ParamScalar::monomial(0, 3, 0).substitute_k(2).unwrap(), cubed);
        assert_eq!(cubed.to_string(), "1 + 3*t + 3*t^2");

        assert_eq!(
            ParamScalar::q().substitute_k(2).unwrap(),
            ParamScalar::q().with_order(Some(2))
        );
    }

    #[test]
    fn substitute_k_twice_fails() {
        let a = ParamScalar::k().substitute_k(2).unwrap();
        assert_eq!(a.substitute_k(2), Err(Error::DoubleSubstitution));
    }

    #[test]
    fn evaluate_examples() {
        let k = ParamScalar::k();
        let assoc = (&k - &ParamScalar::one()) * k.pow(3) * ParamScalar::q().pow(2);
        assert_eq!(assoc.evaluate(&r(1), &r(1), &r(0)).unwrap(), r(0));
        assert_eq!(assoc.evaluate(&r(2), &r(2), &r(0)).unwrap(), r(32));
        assert_eq!(
            ParamScalar::monomial(-1, 0, 0).evaluate(&r(2), &r(0), &r(0)).unwrap(),
            rational(1, 2)
        );
        assert_eq!(assoc.evaluate(&r(0), &r(1), &r(0)), Err(Error::NonInvertibleQ));
    }

    #[test]
    fn rendering() {
        assert_eq!(ParamScalar::zero().to_string(), "0");
        assert_eq!(ParamScalar::monomial(-1, 2, 0).to_string(), "q^-1*k^2");
        let k = ParamScalar::k();
        let assoc = (&k - &ParamScalar::one()) * k.pow(3) * ParamScalar::q().pow(2);
        assert_eq!(assoc.to_string(), "-q^2*k^3 + q^2*k^4");
        assert_eq!(ParamScalar::constant(rational(-3, 2)).to_string(), "-3/2");
    }

    #[test]
    fn specialize_substitutes_values() {
        let s = ParamScalar::q() * ParamScalar::k() + ParamScalar::k();
        let v = s.specialize(None, Some(&r(2))).unwrap();
        assert_eq!(v, ParamScalar::q().scale(&r(2)) + ParamScalar::from_int(2));
        assert_eq!(s.specialize(Some(&r(0)), None), Err(Error::NonInvertibleQ));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 2), r(15));
        assert_eq!(binomial(3, 4), r(0));
        assert_eq!(binomial(0, 0), r(1));
    }
}
