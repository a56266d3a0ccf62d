//! The Ore extension `K[y][x; sigma, delta]` and its hom-associative twist.
//!
//! Elements are kept in the normal form `sum a_{m,n} y^m x^n`. Multiplication
//! of monomials follows
//!
//! ```text
//! a y^m x^n  .  b x^l  =  sum_i  a y^m pi_i^n(b) x^(i+l)
//! ```
//!
//! where `pi_i^n` is the sum of all words in `sigma`, `delta` with `i` copies
//! of `sigma` and `n - i` copies of `delta`. The hom-associative product is
//! `a * b = alpha(a . b)` with `alpha` extended homogeneously in `x`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use serde::Serialize;

use crate::base_ring::{maps_commute, BasePoly, MapKind, MapSpec, Verdict};
use crate::coefficients::ParamScalar;
use crate::error::{Error, Result};
use crate::render;

/// Exponents of the normal-form monomial `y^y * x^x`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bidegree {
    pub y: u32,
    pub x: u32,
}

impl Bidegree {
    pub fn new(y: u32, x: u32) -> Self {
        Bidegree { y, x }
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mono = render::generator_monomial(self.y, self.x);
        if mono.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&mono)
        }
    }
}

/// All monomials `y^m x^n` with `m, n <= bound`, in lexicographic `(m, n)` order.
pub fn monomial_grid(bound: u32) -> Vec<Bidegree> {
    (0..=bound)
        .flat_map(|m| (0..=bound).map(move |n| Bidegree::new(m, n)))
        .collect()
}

/// An element of the Ore extension in normal form.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct OrePoly {
    terms: BTreeMap<Bidegree, ParamScalar>,
}

impl OrePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::scalar(ParamScalar::one())
    }

    pub fn x() -> Self {
        Self::monomial(ParamScalar::one(), 0, 1)
    }

    pub fn y() -> Self {
        Self::monomial(ParamScalar::one(), 1, 0)
    }

    pub fn scalar(c: ParamScalar) -> Self {
        Self::monomial(c, 0, 0)
    }

    /// `c * y^m * x^n`.
    pub fn monomial(c: ParamScalar, m: u32, n: u32) -> Self {
        let mut out = OrePoly::zero();
        out.accumulate(Bidegree::new(m, n), &c);
        out
    }

    pub fn basis(d: Bidegree) -> Self {
        Self::monomial(ParamScalar::one(), d.y, d.x)
    }

    /// Embed `K[y]` as the `x^0` slice.
    pub fn from_base(b: &BasePoly) -> Self {
        Self::from_slices([(0, b.clone())])
    }

    pub fn from_terms<I: IntoIterator<Item = (Bidegree, ParamScalar)>>(terms: I) -> Self {
        let mut out = OrePoly::zero();
        for (d, c) in terms {
            out.accumulate(d, &c);
        }
        out
    }

    /// Assemble from coefficient polynomials of each power of `x`.
    pub fn from_slices<I: IntoIterator<Item = (u32, BasePoly)>>(slices: I) -> Self {
        let mut out = OrePoly::zero();
        for (n, b) in slices {
            for (m, c) in b.terms() {
                out.accumulate(Bidegree::new(m, n), c);
            }
        }
        out
    }

    pub(crate) fn accumulate(&mut self, d: Bidegree, c: &ParamScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&d) {
            Some(slot) => {
                *slot = &*slot + c;
                if slot.is_zero() {
                    self.terms.remove(&d);
                }
            }
            None => {
                self.terms.insert(d, c.clone());
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending `(m, n)` order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Bidegree, &ParamScalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: u32, n: u32) -> ParamScalar {
        self.terms.get(&Bidegree::new(m, n)).cloned().unwrap_or_default()
    }

    /// The constant value if this element lies in the coefficient ring.
    pub fn as_scalar(&self) -> Option<ParamScalar> {
        match self.terms.len() {
            0 => Some(ParamScalar::zero()),
            1 => self.terms.get(&Bidegree::default()).cloned(),
            _ => None,
        }
    }

    /// Coefficient polynomial in `K[y]` of each power of `x`.
    pub fn x_slices(&self) -> BTreeMap<u32, BasePoly> {
        let mut slices: BTreeMap<u32, Vec<(u32, ParamScalar)>> = BTreeMap::new();
        for (d, c) in &self.terms {
            slices.entry(d.x).or_default().push((d.y, c.clone()));
        }
        slices
            .into_iter()
            .map(|(n, terms)| (n, BasePoly::from_terms(terms)))
            .collect()
    }

    pub fn scale(&self, c: &ParamScalar) -> Self {
        OrePoly::from_terms(self.terms.iter().map(|(d, a)| (*d, c * a)))
    }

    pub fn map_coefficients<F>(&self, f: F) -> Result<Self>
    where
        F: Fn(&ParamScalar) -> Result<ParamScalar>,
    {
        let mut out = OrePoly::zero();
        for (d, c) in &self.terms {
            out.accumulate(*d, &f(c)?);
        }
        Ok(out)
    }

    pub fn is_k_free(&self) -> bool {
        self.terms.values().all(ParamScalar::is_k_free)
    }

    pub fn is_t_free(&self) -> bool {
        self.terms.values().all(ParamScalar::is_t_free)
    }

    /// Highest `y`- and `x`-degree appearing (component-wise).
    pub fn degree_bounds(&self) -> Option<Bidegree> {
        if self.is_zero() {
            return None;
        }
        let y = self.terms.keys().map(|d| d.y).max().unwrap_or(0);
        let x = self.terms.keys().map(|d| d.x).max().unwrap_or(0);
        Some(Bidegree::new(y, x))
    }
}

impl Add for &OrePoly {
    type Output = OrePoly;

    fn add(self, rhs: &OrePoly) -> OrePoly {
        let mut out = self.clone();
        for (d, c) in &rhs.terms {
            out.accumulate(*d, c);
        }
        out
    }
}

impl Add for OrePoly {
    type Output = OrePoly;

    fn add(self, rhs: OrePoly) -> OrePoly {
        &self + &rhs
    }
}

impl Sub for &OrePoly {
    type Output = OrePoly;

    fn sub(self, rhs: &OrePoly) -> OrePoly {
        self + &-rhs
    }
}

impl Sub for OrePoly {
    type Output = OrePoly;

    fn sub(self, rhs: OrePoly) -> OrePoly {
        &self - &rhs
    }
}

impl Neg for &OrePoly {
    type Output = OrePoly;

    fn neg(self) -> OrePoly {
        OrePoly {
            terms: self.terms.iter().map(|(d, c)| (*d, -c)).collect(),
        }
    }
}

impl Neg for OrePoly {
    type Output = OrePoly;

    fn neg(self) -> OrePoly {
        -&self
    }
}

impl fmt::Display for OrePoly {
    /// Terms in descending `(m, n)` order, e.g. `y*x + y`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(c) = self.as_scalar() {
            return write!(f, "{c}");
        }
        let parts: Vec<_> = self
            .terms
            .iter()
            .rev()
            .map(|(d, c)| render::coefficient_times(c, &render::generator_monomial(d.y, d.x)))
            .collect();
        f.write_str(&render::join_signed(&parts))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PresetName {
    QuantumPlane,
    Enveloping,
}

impl PresetName {
    pub fn as_str(self) -> &'static str {
        match self {
            PresetName::QuantumPlane => "quantum-plane",
            PresetName::Enveloping => "enveloping",
        }
    }
}

impl fmt::Display for PresetName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PresetName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quantum-plane" => Ok(PresetName::QuantumPlane),
            "enveloping" => Ok(PresetName::Enveloping),
            other => Err(Error::UnknownAlgebra(other.to_string())),
        }
    }
}

/// The data `(sigma, delta, alpha)` of a hom-associative Ore extension of `K[y]`.
///
/// Construction verifies that `alpha` commutes with both `sigma` and `delta`
/// on `y^0, ..., y^COMMUTE_BOUND`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraPreset {
    name: PresetName,
    sigma: MapSpec,
    delta: MapSpec,
    alpha: MapSpec,
}

impl AlgebraPreset {
    pub const COMMUTE_BOUND: u32 = 8;

    pub fn new(name: PresetName, sigma: MapSpec, delta: MapSpec, alpha: MapSpec) -> Result<Self> {
        for (map, expected) in [
            (&sigma, MapKind::Endomorphism),
            (&delta, MapKind::SigmaDerivation),
            (&alpha, MapKind::Endomorphism),
        ] {
            if map.kind() != expected {
                return Err(Error::WrongMapKind {
                    expected: expected.name(),
                    found: map.kind().name(),
                });
            }
        }
        if delta.twist() != Some(&sigma) {
            return Err(Error::InvalidTwist);
        }
        for (map, label) in [(&sigma, "sigma"), (&delta, "delta")] {
            if let Verdict::Fails(w) = maps_commute(&alpha, map, Self::COMMUTE_BOUND) {
                return Err(Error::NonCommuting {
                    map: label,
                    degree: w.degree,
                });
            }
        }
        Ok(AlgebraPreset {
            name,
            sigma,
            delta,
            alpha,
        })
    }

    /// `sigma(y) = q y`, `delta = 0`, `alpha(y) = k y`.
    pub fn quantum_plane(q: ParamScalar, k: ParamScalar) -> Result<Self> {
        if q.is_zero() {
            return Err(Error::NonInvertibleQ);
        }
        let sigma = MapSpec::scaling(q);
        let delta = MapSpec::zero_derivation(sigma.clone())?;
        Self::new(PresetName::QuantumPlane, sigma, delta, MapSpec::scaling(k))
    }

    /// `sigma = id`, `delta = y d/dy`, `alpha(y) = k y`.
    pub fn enveloping(k: ParamScalar) -> Result<Self> {
        Self::new(
            PresetName::Enveloping,
            MapSpec::identity(),
            MapSpec::euler(),
            MapSpec::scaling(k),
        )
    }

    pub fn with_parameters(name: PresetName, q: ParamScalar, k: ParamScalar) -> Result<Self> {
        match name {
            PresetName::QuantumPlane => Self::quantum_plane(q, k),
            PresetName::Enveloping => Self::enveloping(k),
        }
    }

    /// The preset with symbolic `q` and `k`.
    pub fn symbolic(name: PresetName) -> Self {
        Self::with_parameters(name, ParamScalar::q(), ParamScalar::k())
            .expect("built-in presets satisfy the commutation hypothesis")
    }

    pub fn name(&self) -> PresetName {
        self.name
    }

    pub fn sigma(&self) -> &MapSpec {
        &self.sigma
    }

    pub fn delta(&self) -> &MapSpec {
        &self.delta
    }

    pub fn alpha(&self) -> &MapSpec {
        &self.alpha
    }

    /// The same Ore extension with `alpha = id`.
    pub fn untwisted(&self) -> Self {
        AlgebraPreset {
            alpha: MapSpec::identity(),
            ..self.clone()
        }
    }
}

/// `[pi_0^m(b), ..., pi_m^m(b)]` via `pi_i^m = sigma pi_(i-1)^(m-1) + delta pi_i^(m-1)`.
pub fn pi_row(m: u32, preset: &AlgebraPreset, b: &BasePoly) -> Vec<BasePoly> {
    let mut row = vec![b.clone()];
    for len in 1..=m as usize {
        let mut next = Vec::with_capacity(len + 1);
        for i in 0..=len {
            let via_sigma = if i >= 1 {
                preset.sigma.apply(&row[i - 1])
            } else {
                BasePoly::zero()
            };
            let via_delta = if i < len {
                preset.delta.apply(&row[i])
            } else {
                BasePoly::zero()
            };
            next.push(&via_sigma + &via_delta);
        }
        row = next;
    }
    row
}

/// `pi_i^m(b)`; zero whenever `i < 0` or `i > m`.
pub fn pi(i: i64, m: u32, preset: &AlgebraPreset, b: &BasePoly) -> BasePoly {
    if i < 0 || i > m as i64 {
        return BasePoly::zero();
    }
    pi_row(m, preset, b).swap_remove(i as usize)
}

/// The associative Ore product.
pub fn ore_mul(p: &OrePoly, r: &OrePoly, preset: &AlgebraPreset) -> OrePoly {
    let r_slices = r.x_slices();
    let mut rows: HashMap<(u32, u32), Vec<BasePoly>> = HashMap::new();
    let mut out = OrePoly::zero();
    for (d, a) in p.terms() {
        for (n2, b) in &r_slices {
            let row = rows.entry((d.x, *n2)).or_insert_with(|| pi_row(d.x, preset, b));
            for (i, image) in row.iter().enumerate() {
                for (j, c) in image.terms() {
                    out.accumulate(Bidegree::new(d.y + j, i as u32 + n2), &(a * c));
                }
            }
        }
    }
    out
}

/// `alpha(a x^m) = alpha(a) x^m`, extended additively.
pub fn extend_alpha(preset: &AlgebraPreset, p: &OrePoly) -> OrePoly {
    OrePoly::from_slices(p.x_slices().into_iter().map(|(n, b)| (n, preset.alpha.apply(&b))))
}

/// The hom-associative product `a * b = alpha(a . b)`.
pub fn star(p: &OrePoly, r: &OrePoly, preset: &AlgebraPreset) -> OrePoly {
    extend_alpha(preset, &ore_mul(p, r, preset))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// A monomial `b` with `e*b != alpha(b)` (left) or `b*e != alpha(b)` (right).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeakUnitWitness {
    pub element: Bidegree,
    pub side: Side,
    pub product: OrePoly,
    pub expected: OrePoly,
}

/// Check `e*b = b*e = alpha(b)` for all monomials `y^m x^n`, `m, n <= bound`.
pub fn weak_unit_check(e: &OrePoly, preset: &AlgebraPreset, bound: u32) -> Verdict<WeakUnitWitness> {
    for d in monomial_grid(bound) {
        let b = OrePoly::basis(d);
        let expected = extend_alpha(preset, &b);
        for (side, product) in [(Side::Left, star(e, &b, preset)), (Side::Right, star(&b, e, preset))] {
            if product != expected {
                return Verdict::Fails(WeakUnitWitness {
                    element: d,
                    side,
                    product,
                    expected,
                });
            }
        }
    }
    Verdict::Holds
}
