//! Finitely supported `k`-linear combinations of basis symbols indexed by `W~`.

use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;

use crate::gf::{Field, FieldElt};
use crate::propweyl::ProPElt;

/// Marker for the `τ` basis of `H`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Tau;

/// Marker for the `φ` basis of `E^d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Phi;

/// Sparse combination with zero coefficients pruned.
pub struct Comb<B> {
    terms: BTreeMap<ProPElt, FieldElt>,
    _basis: PhantomData<B>,
}

impl<B> Clone for Comb<B> {
    fn clone(&self) -> Self {
        Comb {
            terms: self.terms.clone(),
            _basis: PhantomData,
        }
    }
}

impl<B> PartialEq for Comb<B> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl<B> Eq for Comb<B> {}

impl<B> Default for Comb<B> {
    fn default() -> Self {
        Comb {
            terms: BTreeMap::new(),
            _basis: PhantomData,
        }
    }
}

impl<B> fmt::Debug for Comb<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.terms.iter().map(|(k, v)| (k, v.raw())))
            .finish()
    }
}

impl<B> Comb<B> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(x: ProPElt, one: FieldElt) -> Self {
        let mut c = Self::zero();
        if !one.is_zero() {
            c.terms.insert(x, one);
        }
        c
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, x: &ProPElt) -> FieldElt {
        self.terms.get(x).copied().unwrap_or(FieldElt::ZERO)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ProPElt, &FieldElt)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &ProPElt> {
        self.terms.keys()
    }

    /// Adds `c · x` in place.
    pub fn add_term(&mut self, k: &Field, x: ProPElt, c: FieldElt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(x) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = k.add(*e.get(), c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    /// Adds `c · other` in place.
    pub fn add_scaled(&mut self, k: &Field, c: FieldElt, other: &Self) {
        if c.is_zero() {
            return;
        }
        for (x, &d) in &other.terms {
            self.add_term(k, x.clone(), k.mul(c, d));
        }
    }

    pub fn add(&self, k: &Field, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(k, k.one(), other);
        out
    }

    pub fn sub(&self, k: &Field, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(k, k.neg(k.one()), other);
        out
    }

    pub fn scale(&self, k: &Field, c: FieldElt) -> Self {
        let mut out = Self::zero();
        out.add_scaled(k, c, self);
        out
    }

    pub fn neg(&self, k: &Field) -> Self {
        self.scale(k, k.neg(k.one()))
    }

    /// Relabels every basis symbol; coefficients of colliding labels add up.
    pub fn map_basis(&self, k: &Field, mut f: impl FnMut(&ProPElt) -> ProPElt) -> Self {
        let mut out = Self::zero();
        for (x, &c) in &self.terms {
            out.add_term(k, f(x), c);
        }
        out
    }

    /// Keeps the terms whose basis symbol satisfies `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&ProPElt) -> bool) -> Self {
        Comb {
            terms: self
                .terms
                .iter()
                .filter(|(x, _)| keep(x))
                .map(|(x, c)| (x.clone(), *c))
                .collect(),
            _basis: PhantomData,
        }
    }

    /// Sum of all coefficients.
    pub fn coeff_sum(&self, k: &Field) -> FieldElt {
        k.sum(self.terms.values().copied())
    }

    pub fn from_terms(k: &Field, terms: impl IntoIterator<Item = (ProPElt, FieldElt)>) -> Self {
        let mut out = Self::zero();
        for (x, c) in terms {
            out.add_term(k, x, c);
        }
        out
    }
}
