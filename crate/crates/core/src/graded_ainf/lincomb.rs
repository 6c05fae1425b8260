use std::collections::BTreeMap;

use crate::novikov::NovikovScalar;

/// Finite formal sum `Σ c_k · k` with Novikov coefficients; zero terms are dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinComb<K: Ord> {
    terms: BTreeMap<K, NovikovScalar>,
}

impl<K: Ord + Clone> Default for LinComb<K> {
    fn default() -> Self {
        Self::new()
    }
}

impl<K: Ord + Clone> LinComb<K> {
    pub fn new() -> Self {
        LinComb { terms: BTreeMap::new() }
    }

    pub fn single(k: K, c: NovikovScalar) -> Self {
        let mut out = Self::new();
        out.add_term(k, &c);
        out
    }

    pub fn add_term(&mut self, k: K, c: &NovikovScalar) {
        if c.is_zero() && c.is_exact() {
            return;
        }
        match self.terms.get_mut(&k) {
            Some(v) => {
                v.add_assign_ref(c);
                if v.is_zero() && v.is_exact() {
                    self.terms.remove(&k);
                }
            }
            None => {
                self.terms.insert(k, c.clone());
            }
        }
    }

    /// Adds `sign · c · k` where `sign` is ±1.
    pub fn add_signed(&mut self, k: K, c: &NovikovScalar, negative: bool) {
        if negative {
            self.add_term(k, &c.neg_ref());
        } else {
            self.add_term(k, c);
        }
    }

    pub fn add_comb(&mut self, other: &LinComb<K>, factor: &NovikovScalar) {
        for (k, c) in &other.terms {
            self.add_term(k.clone(), &c.mul_ref(factor));
        }
    }

    pub fn add_comb_signed(&mut self, other: &LinComb<K>, negative: bool) {
        for (k, c) in &other.terms {
            self.add_signed(k.clone(), c, negative);
        }
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

    pub fn iter(&self) -> impl Iterator<Item = (&K, &NovikovScalar)> + '_ {
        self.terms.iter()
    }

    pub fn get(&self, k: &K) -> Option<&NovikovScalar> {
        self.terms.get(k)
    }

    pub fn scaled(&self, c: &NovikovScalar) -> Self {
        let mut out = Self::new();
        out.add_comb(self, c);
        out
    }

    pub fn map_keys<J: Ord + Clone>(&self, f: impl Fn(&K) -> J) -> LinComb<J> {
        let mut out = LinComb::new();
        for (k, c) in &self.terms {
            out.add_term(f(k), c);
        }
        out
    }

    pub fn into_iter_terms(self) -> impl Iterator<Item = (K, NovikovScalar)> {
        self.terms.into_iter()
    }
}

impl<K: Ord + Clone> FromIterator<(K, NovikovScalar)> for LinComb<K> {
    fn from_iter<I: IntoIterator<Item = (K, NovikovScalar)>>(iter: I) -> Self {
        let mut out = LinComb::new();
        for (k, c) in iter {
            out.add_term(k, &c);
        }
        out
    }
}
