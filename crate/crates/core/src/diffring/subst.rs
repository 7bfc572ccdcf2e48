use std::collections::{BTreeMap, HashMap};

use super::generator::Generator;
use super::poly::DiffPoly;
use super::{Q, RingError};

/// A ring endomorphism given by the images of base generators.
///
/// Only derivative-order-zero generators are stored; the image of `x^{(m)}`
/// is always the `m`-th derivative of the image of `x`, so the map commutes
/// with the derivation by construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Substitution {
    n: u32,
    images: BTreeMap<Generator, DiffPoly>,
}

impl Substitution {
    pub fn identity(n: u32) -> Self {
        Substitution {
            n,
            images: BTreeMap::new(),
        }
    }

    pub fn ambient_n(&self) -> u32 {
        self.n
    }

    pub fn insert(&mut self, g: Generator, image: DiffPoly) -> Result<(), RingError> {
        if g.order != 0 {
            return Err(RingError::NotBaseGenerator(g.plain()));
        }
        if image.ambient_n() != self.n {
            return Err(RingError::AmbientMismatch {
                left: self.n,
                right: image.ambient_n(),
            });
        }
        self.images.insert(g, image);
        Ok(())
    }

    pub fn with(mut self, g: Generator, image: DiffPoly) -> Result<Self, RingError> {
        self.insert(g, image)?;
        Ok(self)
    }

    /// Replaces a constant generator (C_k or a parameter) by a rational.
    pub fn with_value(self, g: Generator, value: Q) -> Result<Self, RingError> {
        let n = self.n;
        self.with(g, DiffPoly::constant(n, value))
    }

    pub fn images(&self) -> impl Iterator<Item = (&Generator, &DiffPoly)> {
        self.images.iter()
    }

    pub fn image_of_base(&self, g: Generator) -> Option<&DiffPoly> {
        self.images.get(&g)
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// Applies the endomorphism.
    pub fn apply(&self, p: &DiffPoly) -> DiffPoly {
        let mut cache: HashMap<Generator, DiffPoly> = HashMap::new();
        self.apply_cached(p, &mut cache)
    }

    pub(crate) fn apply_cached(
        &self,
        p: &DiffPoly,
        cache: &mut HashMap<Generator, DiffPoly>,
    ) -> DiffPoly {
        let n = p.ambient_n();
        let mut out = DiffPoly::zero(n);
        for (m, c) in p.terms() {
            let mut fixed = Vec::new();
            let mut acc = DiffPoly::constant(n, c.clone());
            for &(g, e) in m.factors() {
                match self.image_of(g, cache) {
                    None => fixed.push((g, e)),
                    Some(img) => {
                        for _ in 0..e {
                            acc = &acc * &img;
                        }
                    }
                }
            }
            if !fixed.is_empty() {
                acc = acc.mul_monomial(&super::Monomial::from_factors(fixed));
            }
            out += &acc;
        }
        out
    }

    fn image_of(&self, g: Generator, cache: &mut HashMap<Generator, DiffPoly>) -> Option<DiffPoly> {
        let base = self.images.get(&g.base())?;
        if let Some(hit) = cache.get(&g) {
            return Some(hit.clone());
        }
        let img = if g.order == 0 {
            base.clone()
        } else {
            let prev = self.image_of(g.with_order(g.order - 1), cache)?;
            prev.derive()
        };
        cache.insert(g, img.clone());
        Some(img)
    }

    /// Composition `other ∘ self`: first apply `self`, then `other`.
    pub fn then(&self, other: &Substitution) -> Substitution {
        let mut out = Substitution::identity(self.n);
        for (g, img) in &self.images {
            out.images.insert(*g, other.apply(img));
        }
        for (g, img) in &other.images {
            out.images.entry(*g).or_insert_with(|| img.clone());
        }
        out
    }

    /// Every image is homogeneous of its source generator's weight.
    pub fn is_weight_preserving(&self) -> bool {
        self.images.iter().all(|(g, img)| {
            let Some(w) = g.weight(self.n) else {
                return false;
            };
            img.is_zero() || img.weight_of().map(|x| x == w).unwrap_or(false)
        })
    }
}
