use std::collections::HashMap;

use crate::error::{Error, Result};

use super::pc::{Elem, PcGroup};
use super::subgroup::Subgroup;

/// A homomorphism from a subgroup of the ambient into the ambient, stored as the
/// images of the source's canonical generators.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GroupMorphism {
    source: Subgroup,
    images: Vec<Elem>,
}

impl GroupMorphism {
    pub(crate) fn from_parts(source: Subgroup, images: Vec<Elem>) -> Self {
        debug_assert_eq!(source.gens().len(), images.len());
        GroupMorphism { source, images }
    }

    /// Checks that the assignment on canonical generators extends to a homomorphism.
    pub fn from_images(g: &PcGroup, source: Subgroup, images: Vec<Elem>) -> Result<Self> {
        if images.len() != source.gens().len() {
            return Err(Error::input(format!(
                "morphism needs {} generator images, got {}",
                source.gens().len(),
                images.len()
            )));
        }
        let phi = GroupMorphism { source, images };
        for &x in phi.source.elements() {
            let fx = phi.apply(g, x);
            for (&h, &fh) in phi.source.gens().iter().zip(&phi.images) {
                if phi.apply(g, g.mul(x, h)) != g.mul(fx, fh) {
                    return Err(Error::input("generator images do not define a homomorphism"));
                }
            }
        }
        Ok(phi)
    }

    /// Builds the homomorphism determined by images of an arbitrary generating set
    /// of `source`, rejecting assignments that are not well defined.
    pub fn from_generator_images(g: &PcGroup, source: Subgroup, gens: &[Elem], images: &[Elem]) -> Result<Self> {
        if gens.len() != images.len() {
            return Err(Error::input("generator and image lists differ in length"));
        }
        let mut map: HashMap<Elem, Elem> = HashMap::new();
        map.insert(0, 0);
        let mut queue = vec![0];
        while let Some(x) = queue.pop() {
            let fx = map[&x];
            for (&s, &fs) in gens.iter().zip(images) {
                if !source.contains(s) {
                    return Err(Error::input("generator outside the source subgroup"));
                }
                let y = g.mul(x, s);
                let fy = g.mul(fx, fs);
                match map.get(&y) {
                    Some(&old) if old != fy => {
                        return Err(Error::input("generator images do not define a homomorphism"))
                    }
                    Some(_) => {}
                    None => {
                        map.insert(y, fy);
                        queue.push(y);
                    }
                }
            }
        }
        if map.len() != source.order() {
            return Err(Error::input("listed elements do not generate the source subgroup"));
        }
        let imgs = source.gens().iter().map(|h| map[h]).collect();
        Ok(GroupMorphism { source, images: imgs })
    }

    pub fn identity(source: &Subgroup) -> Self {
        GroupMorphism { source: source.clone(), images: source.gens().to_vec() }
    }

    /// `c_x|_source : y -> x y x^{-1}`
    pub fn conjugation(g: &PcGroup, x: Elem, source: &Subgroup) -> Self {
        GroupMorphism { source: source.clone(), images: source.gens().iter().map(|&y| g.conj(x, y)).collect() }
    }

    pub fn source(&self) -> &Subgroup {
        &self.source
    }

    pub fn images(&self) -> &[Elem] {
        &self.images
    }

    pub fn apply(&self, g: &PcGroup, x: Elem) -> Elem {
        let exps = self.source.sift(g, x).expect("element lies in the morphism's source");
        let mut out = 0;
        for (&img, &e) in self.images.iter().zip(&exps) {
            for _ in 0..e {
                out = g.mul(out, img);
            }
        }
        out
    }

    pub fn image(&self, g: &PcGroup) -> Subgroup {
        g.subgroup(&self.images)
    }

    pub fn image_of(&self, g: &PcGroup, sub: &Subgroup) -> Subgroup {
        let imgs: Vec<Elem> = sub.gens().iter().map(|&x| self.apply(g, x)).collect();
        g.subgroup(&imgs)
    }

    /// `self ∘ inner`
    pub fn compose(&self, g: &PcGroup, inner: &GroupMorphism) -> GroupMorphism {
        GroupMorphism {
            source: inner.source.clone(),
            images: inner.images.iter().map(|&y| self.apply(g, y)).collect(),
        }
    }

    pub fn restrict(&self, g: &PcGroup, sub: &Subgroup) -> GroupMorphism {
        GroupMorphism { source: sub.clone(), images: sub.gens().iter().map(|&y| self.apply(g, y)).collect() }
    }

    pub fn is_injective(&self, g: &PcGroup) -> bool {
        self.image(g).order() == self.source.order()
    }

    /// Inverse of an injective morphism, as a morphism from its image.
    pub fn inverse(&self, g: &PcGroup) -> GroupMorphism {
        let img = self.image(g);
        let back: HashMap<Elem, Elem> = self.source.elements().iter().map(|&x| (self.apply(g, x), x)).collect();
        debug_assert_eq!(back.len(), img.order(), "inverse of a non-injective morphism");
        let images = img.gens().iter().map(|y| back[y]).collect();
        GroupMorphism { source: img, images }
    }

    pub fn is_identity(&self) -> bool {
        self.images == self.source.gens()
    }
}
