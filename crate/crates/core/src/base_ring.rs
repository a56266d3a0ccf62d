//! The commutative base ring `K[y]` and the structured maps on it.
//!
//! Maps are given by their value on `y`. An endomorphism fixes constants and
//! is extended multiplicatively; a sigma-derivation kills constants and is
//! extended through the twisted Leibniz rule `d(fg) = s(f) d(g) + d(f) g`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::coefficients::ParamScalar;
use crate::error::{Error, Result};
use crate::render;

/// Outcome of a bounded exhaustive check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict<W> {
    Holds,
    Fails(W),
}

impl<W> Verdict<W> {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(w) => Some(w),
        }
    }
}

/// A polynomial `sum a_m y^m` with [`ParamScalar`] coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BasePoly {
    terms: BTreeMap<u32, ParamScalar>,
}

impl BasePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(ParamScalar::one())
    }

    pub fn y() -> Self {
        Self::monomial(ParamScalar::one(), 1)
    }

    pub fn constant(c: ParamScalar) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * y^m`.
    pub fn monomial(c: ParamScalar, m: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        BasePoly { terms }
    }

    pub fn y_pow(m: u32) -> Self {
        Self::monomial(ParamScalar::one(), m)
    }

    pub fn from_terms<I: IntoIterator<Item = (u32, ParamScalar)>>(terms: I) -> Self {
        let mut out = BasePoly::zero();
        for (m, c) in terms {
            out.accumulate(m, &c);
        }
        out
    }

    pub(crate) fn accumulate(&mut self, m: u32, c: &ParamScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(slot) => {
                *slot = &*slot + c;
                if slot.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    pub fn coeff(&self, m: u32) -> ParamScalar {
        self.terms.get(&m).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &ParamScalar)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn scale(&self, c: &ParamScalar) -> Self {
        BasePoly::from_terms(self.terms.iter().map(|(m, a)| (*m, c * a)))
    }

    /// Multiply by `c * y^shift`.
    pub fn mul_monomial(&self, c: &ParamScalar, shift: u32) -> Self {
        BasePoly::from_terms(self.terms.iter().map(|(m, a)| (m + shift, c * a)))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = BasePoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn map_coefficients<F>(&self, f: F) -> Result<Self>
    where
        F: Fn(&ParamScalar) -> Result<ParamScalar>,
    {
        let mut out = BasePoly::zero();
        for (m, c) in &self.terms {
            out.accumulate(*m, &f(c)?);
        }
        Ok(out)
    }

    pub fn is_k_free(&self) -> bool {
        self.terms.values().all(ParamScalar::is_k_free)
    }
}

impl Add for &BasePoly {
    type Output = BasePoly;

    fn add(self, rhs: &BasePoly) -> BasePoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.accumulate(*m, c);
        }
        out
    }
}

impl Sub for &BasePoly {
    type Output = BasePoly;

    fn sub(self, rhs: &BasePoly) -> BasePoly {
        self + &-rhs
    }
}

impl Neg for &BasePoly {
    type Output = BasePoly;

    fn neg(self) -> BasePoly {
        BasePoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Mul for &BasePoly {
    type Output = BasePoly;

    fn mul(self, rhs: &BasePoly) -> BasePoly {
        let mut out = BasePoly::zero();
        for (ma, a) in &self.terms {
            for (mb, b) in &rhs.terms {
                out.accumulate(ma + mb, &(a * b));
            }
        }
        out
    }
}

impl fmt::Display for BasePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(c) = self.terms.get(&0).filter(|_| self.terms.len() == 1) {
            return write!(f, "{c}");
        }
        let parts: Vec<_> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| render::coefficient_times(c, &render::generator_monomial(*m, 0)))
            .collect();
        f.write_str(&render::join_signed(&parts))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MapKind {
    Endomorphism,
    SigmaDerivation,
}

impl MapKind {
    pub(crate) fn name(self) -> &'static str {
        match self {
            MapKind::Endomorphism => "endomorphism",
            MapKind::SigmaDerivation => "sigma-derivation",
        }
    }
}

/// An endomorphism or sigma-derivation of `K[y]`, determined by the image of `y`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MapSpec {
    kind: MapKind,
    image_of_y: BasePoly,
    twist: Option<Box<MapSpec>>,
}

impl MapSpec {
    pub fn endomorphism(image_of_y: BasePoly) -> Self {
        MapSpec {
            kind: MapKind::Endomorphism,
            image_of_y,
            twist: None,
        }
    }

    pub fn identity() -> Self {
        Self::endomorphism(BasePoly::y())
    }

    /// The endomorphism `y -> c*y`.
    pub fn scaling(c: ParamScalar) -> Self {
        Self::endomorphism(BasePoly::monomial(c, 1))
    }

    pub fn sigma_derivation(image_of_y: BasePoly, twist: MapSpec) -> Result<Self> {
        if twist.kind != MapKind::Endomorphism {
            return Err(Error::InvalidTwist);
        }
        Ok(MapSpec {
            kind: MapKind::SigmaDerivation,
            image_of_y,
            twist: Some(Box::new(twist)),
        })
    }

    /// The zero map, viewed as a sigma-derivation for the given twist.
    pub fn zero_derivation(twist: MapSpec) -> Result<Self> {
        Self::sigma_derivation(BasePoly::zero(), twist)
    }

    /// The Euler derivation `y d/dy`.
    pub fn euler() -> Self {
        Self::sigma_derivation(BasePoly::y(), Self::identity()).expect("identity is an endomorphism")
    }

    pub fn kind(&self) -> MapKind {
        self.kind
    }

    pub fn image_of_y(&self) -> &BasePoly {
        &self.image_of_y
    }

    pub fn twist(&self) -> Option<&MapSpec> {
        self.twist.as_deref()
    }

    /// Apply the map, whatever its kind.
    pub fn apply(&self, p: &BasePoly) -> BasePoly {
        match self.kind {
            MapKind::Endomorphism => endo_unchecked(self, p),
            MapKind::SigmaDerivation => deriv_unchecked(self, p),
        }
    }

    /// Specialize parameter values inside the image of `y` (and the twist).
    pub fn map_coefficients<F>(&self, f: &F) -> Result<Self>
    where
        F: Fn(&ParamScalar) -> Result<ParamScalar>,
    {
        Ok(MapSpec {
            kind: self.kind,
            image_of_y: self.image_of_y.map_coefficients(f)?,
            twist: match &self.twist {
                Some(t) => Some(Box::new(t.map_coefficients(f)?)),
                None => None,
            },
        })
    }
}

/// Apply an endomorphism: `a y^m -> a * f(y)^m`.
pub fn apply_endo(f: &MapSpec, p: &BasePoly) -> Result<BasePoly> {
    if f.kind != MapKind::Endomorphism {
        return Err(Error::WrongMapKind {
            expected: MapKind::Endomorphism.name(),
            found: f.kind.name(),
        });
    }
    Ok(endo_unchecked(f, p))
}

/// Apply a sigma-derivation, using `d(y^m) = s(y) d(y^(m-1)) + d(y) y^(m-1)`.
pub fn apply_deriv(d: &MapSpec, p: &BasePoly) -> Result<BasePoly> {
    if d.kind != MapKind::SigmaDerivation {
        return Err(Error::WrongMapKind {
            expected: MapKind::SigmaDerivation.name(),
            found: d.kind.name(),
        });
    }
    Ok(deriv_unchecked(d, p))
}

fn endo_unchecked(f: &MapSpec, p: &BasePoly) -> BasePoly {
    let mut out = BasePoly::zero();
    let mut power = BasePoly::one();
    let mut reached = 0;
    for (m, c) in p.terms() {
        while reached < m {
            power = &power * &f.image_of_y;
            reached += 1;
        }
        for (j, b) in power.terms() {
            out.accumulate(j, &(c * b));
        }
    }
    out
}

fn deriv_unchecked(d: &MapSpec, p: &BasePoly) -> BasePoly {
    if d.image_of_y.is_zero() {
        return BasePoly::zero();
    }
    let sigma_y = d
        .twist
        .as_ref()
        .expect("sigma-derivations carry a twist")
        .image_of_y
        .clone();
    let mut out = BasePoly::zero();
    // d(y^0) = 0
    let mut current = BasePoly::zero();
    let mut reached = 0;
    for (m, c) in p.terms() {
        while reached < m {
            let prev_power = BasePoly::y_pow(reached);
            current = &(&sigma_y * &current) + &(&d.image_of_y * &prev_power);
            reached += 1;
        }
        for (j, b) in current.terms() {
            out.accumulate(j, &(c * b));
        }
    }
    out
}

/// Where two maps first disagree on a power of `y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommuteWitness {
    pub degree: u32,
    /// `f(g(y^m))`
    pub f_after_g: BasePoly,
    /// `g(f(y^m))`
    pub g_after_f: BasePoly,
}

/// Compare `f∘g` and `g∘f` on `y^0, ..., y^bound`.
pub fn maps_commute(f: &MapSpec, g: &MapSpec, bound: u32) -> Verdict<CommuteWitness> {
    for m in 0..=bound {
        let ym = BasePoly::y_pow(m);
        let fg = f.apply(&g.apply(&ym));
        let gf = g.apply(&f.apply(&ym));
        if fg != gf {
            return Verdict::Fails(CommuteWitness {
                degree: m,
                f_after_g: fg,
                g_after_f: gf,
            });
        }
    }
    Verdict::Holds
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alpha_k() -> MapSpec {
        MapSpec::scaling(ParamScalar::k())
    }

    fn sigma_q() -> MapSpec {
        MapSpec::scaling(ParamScalar::q())
    }

    #[test]
    fn endo_on_monomials() {
        let got = apply_endo(&alpha_k(), &BasePoly::y_pow(2)).unwrap();
        assert_eq!(got, BasePoly::monomial(ParamScalar::k().pow(2), 2));
        let got = apply_endo(&sigma_q(), &BasePoly::y()).unwrap();
        assert_eq!(got, BasePoly::monomial(ParamScalar::q(), 1));
        let weird = MapSpec::endomorphism(&BasePoly::y_pow(2) + &BasePoly::one());
        assert_eq!(apply_endo(&weird, &BasePoly::one()).unwrap(), BasePoly::one());
    }

    #[test]
    fn euler_derivation() {
        let d = MapSpec::euler();
        let got = apply_deriv(&d, &BasePoly::y_pow(2)).unwrap();
        assert_eq!(got, BasePoly::monomial(ParamScalar::from_int(2), 2));
        assert!(apply_deriv(&d, &BasePoly::one()).unwrap().is_zero());
        let zero = MapSpec::zero_derivation(sigma_q()).unwrap();
        let p = &BasePoly::y_pow(3) + &BasePoly::monomial(ParamScalar::q(), 1);
        assert!(apply_deriv(&zero, &p).unwrap().is_zero());
    }

    #[test]
    fn wrong_kind_is_an_error() {
        assert!(matches!(
            apply_endo(&MapSpec::euler(), &BasePoly::y()),
            Err(Error::WrongMapKind { .. })
        ));
        assert!(matches!(
            apply_deriv(&alpha_k(), &BasePoly::y()),
            Err(Error::WrongMapKind { .. })
        ));
        assert_eq!(
            MapSpec::sigma_derivation(BasePoly::y(), MapSpec::euler()),
            Err(Error::InvalidTwist)
        );
    }

    #[test]
    fn commuting_maps() {
        assert!(maps_commute(&alpha_k(), &sigma_q(), 6).holds());
        assert!(maps_commute(&alpha_k(), &MapSpec::euler(), 6).holds());
    }

    #[test]
    fn non_commuting_witness() {
        let square = MapSpec::endomorphism(BasePoly::y_pow(2));
        let shift = MapSpec::endomorphism(&BasePoly::y() + &BasePoly::one());
        let verdict = maps_commute(&square, &shift, 2);
        let w = verdict.witness().expect("maps do not commute");
        assert_eq!(w.degree, 1);
        // square(shift(y)) = y^2 + 1, shift(square(y)) = (y+1)^2
        let y_plus_one = &BasePoly::y() + &BasePoly::one();
        assert_eq!(w.f_after_g, &BasePoly::y_pow(2) + &BasePoly::one());
        assert_eq!(w.g_after_f, y_plus_one.pow(2));
    }

    #[test]
    fn display() {
        let p = &BasePoly::monomial(ParamScalar::q(), 2) + &BasePoly::monomial(-ParamScalar::one(), 0);
        assert_eq!(p.to_string(), "q*y^2 - 1");
    }
}
