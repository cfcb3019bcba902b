use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pgroup::{Elem, GroupMorphism, PcGroup, Subgroup};

/// Automorphisms of listed subgroups generating a fusion system.
#[derive(Clone, Debug)]
pub struct FusionGenerators {
    entries: Vec<(Subgroup, Vec<GroupMorphism>)>,
}

impl FusionGenerators {
    pub fn new(g: &PcGroup, entries: Vec<(Subgroup, Vec<GroupMorphism>)>) -> Result<Self> {
        for (e, autos) in &entries {
            for a in autos {
                if a.source() != e {
                    return Err(Error::input("generator automorphism has the wrong source"));
                }
                if a.image(g) != *e {
                    return Err(Error::input("generator automorphism is not a bijection of its subgroup"));
                }
            }
        }
        Ok(FusionGenerators { entries })
    }

    /// The inner fusion system: `S` with conjugation by its pc generators.
    pub fn inner(g: &PcGroup) -> Self {
        let s = g.whole();
        let autos = g.generators().into_iter().map(|x| GroupMorphism::conjugation(g, x, &s)).collect();
        FusionGenerators { entries: vec![(s, autos)] }
    }

    pub fn entries(&self) -> &[(Subgroup, Vec<GroupMorphism>)] {
        &self.entries
    }
}

/// One generator block in JSON form. Elements are exponent vectors; `autos` lists, for each
/// automorphism, the images of the listed `subgroup` elements.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub subgroup: Vec<Vec<u32>>,
    pub autos: Vec<Vec<Vec<u32>>>,
}

impl GeneratorSpec {
    pub fn from_entry(g: &PcGroup, e: &Subgroup, autos: &[GroupMorphism]) -> Self {
        GeneratorSpec {
            subgroup: e.gens().iter().map(|&x| g.exponents(x)).collect(),
            autos: autos.iter().map(|a| a.images().iter().map(|&x| g.exponents(x)).collect()).collect(),
        }
    }

    pub fn resolve(&self, g: &PcGroup) -> Result<(Subgroup, Vec<GroupMorphism>)> {
        let elems: Vec<Elem> = self.subgroup.iter().map(|v| g.from_exponents(v)).collect::<Result<_>>()?;
        let e = g.subgroup(&elems);
        let autos = self
            .autos
            .iter()
            .map(|imgs| {
                let imgs: Vec<Elem> = imgs.iter().map(|v| g.from_exponents(v)).collect::<Result<_>>()?;
                let phi = GroupMorphism::from_generator_images(g, e.clone(), &elems, &imgs)?;
                if !phi.is_injective(g) || phi.image(g) != e {
                    return Err(Error::input("listed map is not an automorphism of its subgroup"));
                }
                Ok(phi)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((e, autos))
    }
}
