use std::collections::BTreeMap;

use super::Rational;

/// Finite rational combination of keys with no stored zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Comb<K: Ord>(BTreeMap<K, Rational>);

impl<K: Ord> Default for Comb<K> {
    fn default() -> Self {
        Comb(BTreeMap::new())
    }
}

impl<K: Ord + Clone> Comb<K> {
    pub fn new() -> Self {
        Comb(BTreeMap::new())
    }

    pub fn single(k: K, c: Rational) -> Self {
        let mut out = Comb::new();
        out.add(k, c);
        out
    }

    pub fn add(&mut self, k: K, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.0.get_mut(&k) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.0.remove(&k);
                }
            }
            None => {
                self.0.insert(k, c);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Comb<K>, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (k, v) in &other.0 {
            self.add(k.clone(), v * c);
        }
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        let mut out = Comb::new();
        out.add_scaled(self, c);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeff(&self, k: &K) -> Rational {
        self.0.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Rational)> {
        self.0.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.0.keys()
    }

    pub fn into_map(self) -> BTreeMap<K, Rational> {
        self.0
    }

    pub fn map(&self) -> &BTreeMap<K, Rational> {
        &self.0
    }

    pub fn retain(&mut self, f: impl FnMut(&K, &mut Rational) -> bool) {
        self.0.retain(f)
    }
}

impl<K: Ord + Clone> FromIterator<(K, Rational)> for Comb<K> {
    fn from_iter<I: IntoIterator<Item = (K, Rational)>>(iter: I) -> Self {
        let mut out = Comb::new();
        for (k, c) in iter {
            out.add(k, c);
        }
        out
    }
}

impl<K: Ord + Clone> IntoIterator for Comb<K> {
    type Item = (K, Rational);
    type IntoIter = std::collections::btree_map::IntoIter<K, Rational>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}
