//! Associators, commutator brackets and the exhaustive identity checker.
//!
//! Every check enumerates monomials `y^m x^n` with `m, n <= bound` and
//! compares exact normal forms. Tuples are visited in lexicographic order of
//! their bidegrees; the work fans out over threads, but the reported witness
//! is always the smallest failing tuple in that order.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ore::{extend_alpha, monomial_grid, ore_mul, star, AlgebraPreset, Bidegree, OrePoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ProductMode {
    /// The associative Ore product.
    Assoc,
    /// `a * b = alpha(a . b)`.
    Star,
}

impl ProductMode {
    pub fn as_str(self) -> &'static str {
        match self {
            ProductMode::Assoc => "assoc",
            ProductMode::Star => "star",
        }
    }
}

impl fmt::Display for ProductMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ProductMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "assoc" => Ok(ProductMode::Assoc),
            "star" => Ok(ProductMode::Star),
            other => Err(format!("unknown product `{other}` (expected assoc or star)")),
        }
    }
}

/// A preset paired with the product used on it. The twisting map is always
/// the preset's `alpha`, whichever product is selected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductHandle {
    preset: AlgebraPreset,
    mode: ProductMode,
}

impl ProductHandle {
    /// Presets are only constructible once `alpha` is known to commute with
    /// `sigma` and `delta`, so both modes are always available.
    pub fn new(preset: AlgebraPreset, mode: ProductMode) -> Self {
        ProductHandle { preset, mode }
    }

    pub fn preset(&self) -> &AlgebraPreset {
        &self.preset
    }

    pub fn mode(&self) -> ProductMode {
        self.mode
    }

    pub fn mul(&self, a: &OrePoly, b: &OrePoly) -> OrePoly {
        match self.mode {
            ProductMode::Assoc => ore_mul(a, b, &self.preset),
            ProductMode::Star => star(a, b, &self.preset),
        }
    }

    pub fn alpha(&self, a: &OrePoly) -> OrePoly {
        extend_alpha(&self.preset, a)
    }
}

/// `a(bc) - (ab)c`.
pub fn associator(a: &OrePoly, b: &OrePoly, c: &OrePoly, h: &ProductHandle) -> OrePoly {
    &h.mul(a, &h.mul(b, c)) - &h.mul(&h.mul(a, b), c)
}

/// `alpha(a)(bc) - (ab)alpha(c)`.
pub fn hom_associator(a: &OrePoly, b: &OrePoly, c: &OrePoly, h: &ProductHandle) -> OrePoly {
    &h.mul(&h.alpha(a), &h.mul(b, c)) - &h.mul(&h.mul(a, b), &h.alpha(c))
}

/// `ab - ba`.
pub fn bracket(a: &OrePoly, b: &OrePoly, h: &ProductHandle) -> OrePoly {
    &h.mul(a, b) - &h.mul(b, a)
}

/// `[alpha(a),[b,c]] + [alpha(c),[a,b]] + [alpha(b),[c,a]]`.
pub fn hom_jacobiator(a: &OrePoly, b: &OrePoly, c: &OrePoly, h: &ProductHandle) -> OrePoly {
    let term = |u: &OrePoly, v: &OrePoly, w: &OrePoly| bracket(&h.alpha(u), &bracket(v, w, h), h);
    &(&term(a, b, c) + &term(c, a, b)) + &term(b, c, a)
}

/// Identities the checker can certify on a [`ProductHandle`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Identity {
    Assoc,
    HomAssoc,
    HomJacobi,
    AntiComm,
    WeakUnit,
    AlphaMult,
}

impl Identity {
    pub const ALL: [Identity; 6] = [
        Identity::Assoc,
        Identity::HomAssoc,
        Identity::HomJacobi,
        Identity::AntiComm,
        Identity::WeakUnit,
        Identity::AlphaMult,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Identity::Assoc => "assoc",
            Identity::HomAssoc => "hom-assoc",
            Identity::HomJacobi => "hom-jacobi",
            Identity::AntiComm => "anti-comm",
            Identity::WeakUnit => "weak-unit",
            Identity::AlphaMult => "alpha-mult",
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Identity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Identity::ALL
            .into_iter()
            .find(|i| i.as_str() == s)
            .ok_or_else(|| Error::UnknownCheck(s.to_string()))
    }
}

/// The failing inputs of a check and both sides of the identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub inputs: Vec<String>,
    pub lhs: String,
    pub rhs: String,
    pub difference: String,
}

impl Witness {
    pub fn new(inputs: Vec<String>, lhs: &OrePoly, rhs: &OrePoly) -> Self {
        Witness {
            inputs,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            difference: (lhs - rhs).to_string(),
        }
    }
}

/// Result of a bounded exhaustive check; `passed` iff there is no witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub preset: String,
    pub mode: String,
    pub bounds: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<u32>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl CheckReport {
    pub(crate) fn new(
        check: &str,
        preset: &AlgebraPreset,
        mode: &str,
        bounds: u32,
        order: Option<u32>,
        witness: Option<Witness>,
    ) -> Self {
        CheckReport {
            check: check.to_string(),
            preset: preset.name().to_string(),
            mode: mode.to_string(),
            bounds,
            order,
            passed: witness.is_none(),
            witness,
        }
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} [{} {}, degree <= {}",
            self.check, self.preset, self.mode, self.bounds
        )?;
        if let Some(n) = self.order {
            write!(f, ", order {n}")?;
        }
        write!(f, "]: {}", if self.passed { "passed" } else { "FAILED" })?;
        if let Some(w) = &self.witness {
            write!(
                f,
                "\n  inputs: ({})\n  lhs: {}\n  rhs: {}\n  difference: {}",
                w.inputs.join(", "),
                w.lhs,
                w.rhs,
                w.difference
            )?;
        }
        Ok(())
    }
}

/// Visit every `arity`-tuple of grid indices in lexicographic order and
/// return the first witness produced by `probe`.
pub(crate) fn first_failure<W, F>(grid_len: usize, arity: u32, probe: F) -> Option<W>
where
    W: Send,
    F: Fn(&[usize]) -> Option<W> + Sync,
{
    let total = grid_len.pow(arity);
    (0..total).into_par_iter().find_map_first(|mut idx| {
        let mut tuple = vec![0; arity as usize];
        for slot in tuple.iter_mut().rev() {
            *slot = idx % grid_len;
            idx /= grid_len;
        }
        probe(&tuple)
    })
}

/// Pairwise products over the grid, indexed `[i * len + j]`.
fn product_table(h: &ProductHandle, elems: &[OrePoly]) -> Vec<OrePoly> {
    let n = elems.len();
    (0..n * n)
        .into_par_iter()
        .map(|idx| h.mul(&elems[idx / n], &elems[idx % n]))
        .collect()
}

fn label(d: Bidegree) -> String {
    d.to_string()
}

/// Certify `check` on all monomial tuples with `m, n <= bound`.
///
/// `weak-unit` is checked for the candidate `e = 1`; see [`certify_weak_unit`].
pub fn certify(check: Identity, h: &ProductHandle, bound: u32) -> CheckReport {
    if check == Identity::WeakUnit {
        return certify_weak_unit(&OrePoly::one(), h, bound);
    }
    let grid = monomial_grid(bound);
    let elems: Vec<OrePoly> = grid.iter().copied().map(OrePoly::basis).collect();
    let n = elems.len();
    let names = |ix: &[usize]| ix.iter().map(|&i| label(grid[i])).collect::<Vec<_>>();

    let witness = match check {
        Identity::Assoc | Identity::HomAssoc => {
            let table = product_table(h, &elems);
            let twisted = check == Identity::HomAssoc;
            first_failure(n, 3, |ix| {
                let (a, b, c) = (ix[0], ix[1], ix[2]);
                let (left_outer, right_outer) = if twisted {
                    (h.alpha(&elems[a]), h.alpha(&elems[c]))
                } else {
                    (elems[a].clone(), elems[c].clone())
                };
                let lhs = h.mul(&left_outer, &table[b * n + c]);
                let rhs = h.mul(&table[a * n + b], &right_outer);
                (lhs != rhs).then(|| Witness::new(names(ix), &lhs, &rhs))
            })
        }
        Identity::HomJacobi => {
            let table = product_table(h, &elems);
            let br = |i: usize, j: usize| &table[i * n + j] - &table[j * n + i];
            first_failure(n, 3, |ix| {
                let (a, b, c) = (ix[0], ix[1], ix[2]);
                let term = |u: usize, v: usize, w: usize| bracket(&h.alpha(&elems[u]), &br(v, w), h);
                let lhs = &(&term(a, b, c) + &term(c, a, b)) + &term(b, c, a);
                (!lhs.is_zero()).then(|| Witness::new(names(ix), &lhs, &OrePoly::zero()))
            })
        }
        Identity::AntiComm => first_failure(n, 2, |ix| {
            let (a, b) = (&elems[ix[0]], &elems[ix[1]]);
            let lhs = bracket(a, b, h);
            let rhs = -bracket(b, a, h);
            (lhs != rhs).then(|| Witness::new(names(ix), &lhs, &rhs))
        }),
        Identity::AlphaMult => first_failure(n, 2, |ix| {
            let (a, b) = (&elems[ix[0]], &elems[ix[1]]);
            let lhs = h.alpha(&h.mul(a, b));
            let rhs = h.mul(&h.alpha(a), &h.alpha(b));
            (lhs != rhs).then(|| Witness::new(names(ix), &lhs, &rhs))
        }),
        Identity::WeakUnit => unreachable!("handled above"),
    };
    CheckReport::new(check.as_str(), h.preset(), h.mode().as_str(), bound, None, witness)
}

/// Certify `e b = b e = alpha(b)` under the handle's product for all
/// monomials `b` with `m, n <= bound`.
pub fn certify_weak_unit(e: &OrePoly, h: &ProductHandle, bound: u32) -> CheckReport {
    let grid = monomial_grid(bound);
    let witness = first_failure(grid.len(), 1, |ix| {
        let b = OrePoly::basis(grid[ix[0]]);
        let expected = h.alpha(&b);
        let left = h.mul(e, &b);
        if left != expected {
            return Some(Witness::new(vec![e.to_string(), label(grid[ix[0]])], &left, &expected));
        }
        let right = h.mul(&b, e);
        (right != expected).then(|| Witness::new(vec![label(grid[ix[0]]), e.to_string()], &right, &expected))
    });
    CheckReport::new(
        Identity::WeakUnit.as_str(),
        h.preset(),
        h.mode().as_str(),
        bound,
        None,
        witness,
    )
}
