//! One-parameter formal deformations in `t`.
//!
//! The deformed twisting map sends `a y^m x^n` to `a ((1+t) y)^m x^n`, i.e. its
//! `t^i` layer multiplies by `binom(m, i)`. The deformed product and bracket
//! are that map composed with the undeformed ones:
//!
//! ```text
//! a ._t b   = sum_i alpha_i(a ._0 b) t^i
//! [a, b]_t  = sum_i alpha_i([a, b]_0) t^i
//! ```
//!
//! Series are truncated at a fixed order `N`. Setting `k = 1 + t` in the
//! hom-associative family recovers the same structure, which
//! [`series_from_star`] and the `bridge` check cross-validate.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::base_ring::MapSpec;
use crate::coefficients::{binomial, ParamScalar};
use crate::error::{Error, Result};
use crate::hom::{first_failure, CheckReport, Witness};
use crate::ore::{monomial_grid, ore_mul, star, AlgebraPreset, Bidegree, OrePoly};
use crate::render;

pub const DEFAULT_ORDER: u32 = 8;

/// A truncated power series `sum_{i <= N} c_i t^i` with `k`- and `t`-free
/// [`OrePoly`] coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesOrePoly {
    layers: BTreeMap<u32, OrePoly>,
    order: u32,
}

fn ensure_plain(p: &OrePoly) -> Result<()> {
    if !p.is_k_free() {
        return Err(Error::UnsubstitutedParameter("k"));
    }
    if !p.is_t_free() {
        return Err(Error::UnsubstitutedParameter("t"));
    }
    Ok(())
}

fn ensure_same_order(a: u32, b: u32) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::TruncationMismatch { left: a, right: b })
    }
}

impl SeriesOrePoly {
    pub fn zero(order: u32) -> Self {
        SeriesOrePoly {
            layers: BTreeMap::new(),
            order,
        }
    }

    /// `p` as a constant series.
    pub fn from_poly(p: &OrePoly, order: u32) -> Result<Self> {
        Self::from_layers([(0, p.clone())], order)
    }

    /// Layers beyond `order` are dropped.
    pub fn from_layers<I: IntoIterator<Item = (u32, OrePoly)>>(layers: I, order: u32) -> Result<Self> {
        let mut out = SeriesOrePoly::zero(order);
        for (i, p) in layers {
            ensure_plain(&p)?;
            out.add_layer(i, &p);
        }
        Ok(out)
    }

    fn add_layer(&mut self, i: u32, p: &OrePoly) {
        if i > self.order || p.is_zero() {
            return;
        }
        let slot = self.layers.entry(i).or_default();
        *slot = &*slot + p;
        if slot.is_zero() {
            self.layers.remove(&i);
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.layers.is_empty()
    }

    /// Coefficient of `t^i`.
    pub fn layer(&self, i: u32) -> OrePoly {
        self.layers.get(&i).cloned().unwrap_or_default()
    }

    pub fn layers(&self) -> impl Iterator<Item = (u32, &OrePoly)> {
        self.layers.iter().map(|(i, p)| (*i, p))
    }

    /// Reduce modulo `t^(order+1)` for a smaller `order`.
    pub fn truncate(&self, order: u32) -> Self {
        SeriesOrePoly {
            layers: self.layers.range(..=order).map(|(i, p)| (*i, p.clone())).collect(),
            order: order.min(self.order),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        ensure_same_order(self.order, other.order)?;
        let mut out = self.clone();
        for (i, p) in &other.layers {
            out.add_layer(*i, p);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        SeriesOrePoly {
            layers: self.layers.iter().map(|(i, p)| (*i, -p)).collect(),
            order: self.order,
        }
    }

    /// Multiply by a scalar of `K[[t]]` (with `q` allowed, `k` not).
    pub fn scale(&self, c: &ParamScalar) -> Result<Self> {
        if !c.is_k_free() {
            return Err(Error::UnsubstitutedParameter("k"));
        }
        let mut out = SeriesOrePoly::zero(self.order);
        for (shift, part) in c.t_layers() {
            for (i, p) in &self.layers {
                out.add_layer(i + shift, &p.scale(&part));
            }
        }
        Ok(out)
    }
}

impl fmt::Display for SeriesOrePoly {
    /// Layers in ascending powers of `t`, e.g. `y^2 + 2*y^2*t + y^2*t^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, p) in &self.layers {
            for (d, c) in p.terms().rev() {
                let mut mono = render::generator_monomial(d.y, d.x);
                let t = match i {
                    0 => String::new(),
                    1 => "t".to_string(),
                    _ => format!("t^{i}"),
                };
                if !t.is_empty() {
                    if !mono.is_empty() {
                        mono.push('*');
                    }
                    mono.push_str(&t);
                }
                parts.push(render::coefficient_times(c, &mono));
            }
        }
        f.write_str(&render::join_signed(&parts))
    }
}

/// The `t^i` layer of the deformed twisting map: `a y^m x^n -> binom(m, i) a y^m x^n`.
pub fn alpha_layer(i: u32, p: &OrePoly) -> OrePoly {
    OrePoly::from_terms(p.terms().map(|(d, c)| (*d, c.scale(&binomial(d.y, i)))))
}

/// `alpha_t(a y^m x^n) = sum_{i <= min(m, N)} binom(m, i) a y^m x^n t^i`.
pub fn alpha_t(p: &OrePoly, order: u32) -> Result<SeriesOrePoly> {
    ensure_plain(p)?;
    let top = p.degree_bounds().map_or(0, |d| d.y).min(order);
    SeriesOrePoly::from_layers((0..=top).map(|i| (i, alpha_layer(i, p))), order)
}

/// The deformation of a preset whose twisting map is `y -> k y`, with `k`
/// eliminated in favour of `t = k - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeformedStructure {
    base: AlgebraPreset,
    order: u32,
}

impl DeformedStructure {
    pub fn new(preset: &AlgebraPreset, order: u32) -> Result<Self> {
        if preset.alpha() != &MapSpec::scaling(ParamScalar::k()) {
            return Err(Error::UnsupportedTwist);
        }
        let k_free = |m: &MapSpec| m.image_of_y().is_k_free();
        if !k_free(preset.sigma()) || !k_free(preset.delta()) {
            return Err(Error::UnsubstitutedParameter("k"));
        }
        Ok(DeformedStructure {
            base: preset.untwisted(),
            order,
        })
    }

    /// The undeformed algebra (`alpha = id`).
    pub fn base(&self) -> &AlgebraPreset {
        &self.base
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Embed a plain element as a constant series at this structure's order.
    pub fn lift(&self, p: &OrePoly) -> Result<SeriesOrePoly> {
        SeriesOrePoly::from_poly(p, self.order)
    }

    pub fn alpha_t(&self, p: &OrePoly) -> Result<SeriesOrePoly> {
        alpha_t(p, self.order)
    }

    /// `alpha_t` extended to series: the `t^l` layer is `sum_{i+j=l} alpha_i(p_j)`.
    pub fn alpha_series(&self, p: &SeriesOrePoly) -> Result<SeriesOrePoly> {
        ensure_same_order(p.order, self.order)?;
        let mut out = SeriesOrePoly::zero(self.order);
        for (j, pj) in &p.layers {
            let top = pj.degree_bounds().map_or(0, |d| d.y);
            for i in 0..=top.min(self.order.saturating_sub(*j)) {
                out.add_layer(i + j, &alpha_layer(i, pj));
            }
        }
        Ok(out)
    }

    /// `._0` extended `K[[t]]`-bilinearly: the `t^u` layer is `sum_{j+s=u} p_j ._0 r_s`.
    pub fn product_0(&self, p: &SeriesOrePoly, r: &SeriesOrePoly) -> Result<SeriesOrePoly> {
        ensure_same_order(p.order, self.order)?;
        ensure_same_order(r.order, self.order)?;
        let mut out = SeriesOrePoly::zero(self.order);
        for (j, pj) in &p.layers {
            for (s, rs) in r.layers.range(..=self.order - j) {
                out.add_layer(j + s, &ore_mul(pj, rs, &self.base));
            }
        }
        Ok(out)
    }

    /// `p ._t r = sum_i alpha_i(p ._0 r) t^i`.
    pub fn product_t(&self, p: &SeriesOrePoly, r: &SeriesOrePoly) -> Result<SeriesOrePoly> {
        self.alpha_series(&self.product_0(p, r)?)
    }

    /// `[p, r]_t = p ._t r - r ._t p`.
    pub fn bracket_t(&self, p: &SeriesOrePoly, r: &SeriesOrePoly) -> Result<SeriesOrePoly> {
        self.product_t(p, r)?.checked_sub(&self.product_t(r, p)?)
    }
}

/// Compute `p * r` in the `k`-family, substitute `k = 1 + t` and collect the
/// result by powers of `t`.
pub fn series_from_star(p: &OrePoly, r: &OrePoly, preset: &AlgebraPreset, order: u32) -> Result<SeriesOrePoly> {
    let product = star(p, r, preset);
    let mut layers: BTreeMap<u32, Vec<(Bidegree, ParamScalar)>> = BTreeMap::new();
    for (d, c) in product.terms() {
        for (i, part) in c.substitute_k(order)?.t_layers() {
            layers.entry(i).or_default().push((*d, part));
        }
    }
    SeriesOrePoly::from_layers(
        layers.into_iter().map(|(i, terms)| (i, OrePoly::from_terms(terms))),
        order,
    )
}

/// Checks on the deformed structure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DeformationCheck {
    /// `product_t` agrees with `series_from_star` on monomial pairs.
    Bridge,
    /// Hom-associativity of `(._t, alpha_t)` on monomial triples.
    HomAssocDeform,
    /// Bilinearity, alternativity and hom-Jacobi for `([,]_t, alpha_t)`.
    HomLieDeform,
}

impl DeformationCheck {
    pub const ALL: [DeformationCheck; 3] = [
        DeformationCheck::Bridge,
        DeformationCheck::HomAssocDeform,
        DeformationCheck::HomLieDeform,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            DeformationCheck::Bridge => "bridge",
            DeformationCheck::HomAssocDeform => "hom-assoc-deform",
            DeformationCheck::HomLieDeform => "hom-lie-deform",
        }
    }
}

impl fmt::Display for DeformationCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for DeformationCheck {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        DeformationCheck::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::UnknownCheck(s.to_string()))
    }
}

fn series_witness(inputs: Vec<String>, lhs: &SeriesOrePoly, rhs: &SeriesOrePoly) -> Witness {
    let difference = lhs
        .checked_sub(rhs)
        .map(|d| d.to_string())
        .unwrap_or_else(|e| e.to_string());
    Witness {
        inputs,
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
        difference,
    }
}

/// Exhaustively check `which` on monomials with `m, n <= bound`, comparing
/// every layer up to `t^order`.
pub fn check_deformation(
    preset: &AlgebraPreset,
    which: DeformationCheck,
    bound: u32,
    order: u32,
) -> Result<CheckReport> {
    let d = DeformedStructure::new(preset, order)?;
    let grid = monomial_grid(bound);
    let plain: Vec<OrePoly> = grid.iter().copied().map(OrePoly::basis).collect();
    let lifted = plain.iter().map(|p| d.lift(p)).collect::<Result<Vec<_>>>()?;
    let twisted = plain.iter().map(|p| d.alpha_t(p)).collect::<Result<Vec<_>>>()?;
    let names = |ix: &[usize]| ix.iter().map(|&i| grid[i].to_string()).collect::<Vec<_>>();

    let outcome: Option<Result<Witness>> = match which {
        DeformationCheck::Bridge => first_failure(plain.len(), 2, |ix| {
            let run = || -> Result<Option<Witness>> {
                let lhs = d.product_t(&lifted[ix[0]], &lifted[ix[1]])?;
                let rhs = series_from_star(&plain[ix[0]], &plain[ix[1]], preset, order)?;
                Ok((lhs != rhs).then(|| series_witness(names(ix), &lhs, &rhs)))
            };
            run().transpose()
        }),
        DeformationCheck::HomAssocDeform => first_failure(plain.len(), 3, |ix| {
            let (a, b, c) = (&lifted[ix[0]], &lifted[ix[1]], &lifted[ix[2]]);
            let run = || -> Result<Option<Witness>> {
                let lhs = d.product_t(&twisted[ix[0]], &d.product_t(b, c)?)?;
                let rhs = d.product_t(&d.product_t(a, b)?, &twisted[ix[2]])?;
                Ok((lhs != rhs).then(|| series_witness(names(ix), &lhs, &rhs)))
            };
            run().transpose()
        }),
        DeformationCheck::HomLieDeform => first_failure(plain.len(), 3, |ix| {
            hom_lie_probe(&d, &lifted, &twisted, ix)
                .map(|found| found.map(|(lhs, rhs)| series_witness(names(ix), &lhs, &rhs)))
                .transpose()
        }),
    };
    let witness = outcome.transpose()?;
    Ok(CheckReport::new(
        which.as_str(),
        preset,
        "deformation",
        bound,
        Some(order),
        witness,
    ))
}

/// First violated hom-Lie axiom for the triple, as `(lhs, rhs)`.
fn hom_lie_probe(
    d: &DeformedStructure,
    lifted: &[SeriesOrePoly],
    twisted: &[SeriesOrePoly],
    ix: &[usize],
) -> Result<Option<(SeriesOrePoly, SeriesOrePoly)>> {
    let (a, b, c) = (&lifted[ix[0]], &lifted[ix[1]], &lifted[ix[2]]);
    let zero = SeriesOrePoly::zero(d.order());

    // alternativity
    let aa = d.bracket_t(a, a)?;
    if !aa.is_zero() {
        return Ok(Some((aa, zero)));
    }

    // bilinearity in the first slot, with a weight from K[[t]]
    let weight = ParamScalar::constant(crate::coefficients::rational(3, 2)) + ParamScalar::t();
    let combo = a.scale(&weight)?.checked_add(b)?;
    let lhs = d.bracket_t(&combo, c)?;
    let rhs = d.bracket_t(a, c)?.scale(&weight)?.checked_add(&d.bracket_t(b, c)?)?;
    if lhs != rhs {
        return Ok(Some((lhs, rhs)));
    }

    // anti-commutativity (bilinearity in the second slot follows with it)
    let ab = d.bracket_t(a, b)?;
    let ba = d.bracket_t(b, a)?;
    if ab != ba.neg() {
        return Ok(Some((ab, ba.neg())));
    }

    // hom-Jacobi
    let bc = d.bracket_t(b, c)?;
    let ca = d.bracket_t(c, a)?;
    let jacobi = d
        .bracket_t(&twisted[ix[0]], &bc)?
        .checked_add(&d.bracket_t(&twisted[ix[2]], &ab)?)?
        .checked_add(&d.bracket_t(&twisted[ix[1]], &ca)?)?;
    if !jacobi.is_zero() {
        return Ok(Some((jacobi, zero)));
    }
    Ok(None)
}
