//! Finitely supported linear combinations with Laurent polynomial coefficients.

use std::collections::btree_map;
use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::laurent::LaurentPoly;

/// A map from basis labels to nonzero coefficients, kept sorted by label.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinComb<K: Ord> {
    terms: BTreeMap<K, LaurentPoly>,
}

impl<K: Ord> Default for LinComb<K> {
    fn default() -> Self {
        Self { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> LinComb<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn basis(k: K) -> Self {
        Self::term(k, LaurentPoly::one())
    }

    pub fn term(k: K, c: LaurentPoly) -> Self {
        let mut out = Self::new();
        out.add_term(k, c);
        out
    }

    pub fn add_term(&mut self, k: K, c: LaurentPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(k) {
            btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, other: &LinComb<K>, c: &LaurentPoly) {
        if c.is_zero() {
            return;
        }
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v * c);
        }
    }

    pub fn scaled(&self, c: &LaurentPoly) -> Self {
        let mut out = Self::new();
        out.add_scaled(self, c);
        out
    }

    pub fn sub(&self, other: &LinComb<K>) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &LaurentPoly::constant(-1));
        out
    }

    pub fn coeff(&self, k: &K) -> LaurentPoly {
        self.terms.get(k).cloned().unwrap_or_default()
    }

    pub fn get(&self, k: &K) -> Option<&LaurentPoly> {
        self.terms.get(k)
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

    pub fn iter(&self) -> btree_map::Iter<'_, K, LaurentPoly> {
        self.terms.iter()
    }

    pub fn keys(&self) -> btree_map::Keys<'_, K, LaurentPoly> {
        self.terms.keys()
    }

    /// Applies a coefficient map, dropping terms that become zero.
    pub fn map_coeffs<F: FnMut(&LaurentPoly) -> LaurentPoly>(&self, mut f: F) -> Self {
        let mut out = Self::new();
        for (k, v) in &self.terms {
            out.add_term(k.clone(), f(v));
        }
        out
    }

    /// Applies a linear map given on basis elements.
    pub fn map_linear<K2: Ord + Clone, F: FnMut(&K) -> LinComb<K2>>(&self, mut f: F) -> LinComb<K2> {
        let mut out = LinComb::new();
        for (k, v) in &self.terms {
            out.add_scaled(&f(k), v);
        }
        out
    }

    /// Same as [`LinComb::map_linear`] with a fallible basis map.
    pub fn try_map_linear<K2: Ord + Clone, E, F: FnMut(&K) -> Result<LinComb<K2>, E>>(
        &self,
        mut f: F,
    ) -> Result<LinComb<K2>, E> {
        let mut out = LinComb::new();
        for (k, v) in &self.terms {
            out.add_scaled(&f(k)?, v);
        }
        Ok(out)
    }

    /// Evaluates every coefficient at `q = 0`, failing on negative powers.
    pub fn eval_at_zero(&self) -> crate::error::Result<BTreeMap<K, BigInt>> {
        let mut out = BTreeMap::new();
        for (k, v) in &self.terms {
            let c = v.eval_at_zero()?;
            if c != BigInt::from(0) {
                out.insert(k.clone(), c);
            }
        }
        Ok(out)
    }
}

impl<K: Ord> IntoIterator for LinComb<K> {
    type Item = (K, LaurentPoly);
    type IntoIter = btree_map::IntoIter<K, LaurentPoly>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.into_iter()
    }
}

impl<'a, K: Ord> IntoIterator for &'a LinComb<K> {
    type Item = (&'a K, &'a LaurentPoly);
    type IntoIter = btree_map::Iter<'a, K, LaurentPoly>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.iter()
    }
}

impl<K: Ord + Clone> FromIterator<(K, LaurentPoly)> for LinComb<K> {
    fn from_iter<I: IntoIterator<Item = (K, LaurentPoly)>>(iter: I) -> Self {
        let mut out = Self::new();
        for (k, v) in iter {
            out.add_term(k, v);
        }
        out
    }
}
