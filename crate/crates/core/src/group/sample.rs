use rand::Rng;

use super::{Element, Group, GroupSpec};

impl Group {
    /// Uniform-ish random element. `scale` bounds coordinates (or word
    /// length) for infinite kinds and is ignored for finite ones.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R, scale: i64) -> Element {
        let s = scale.max(0);
        let coord = |rng: &mut R| rng.gen_range(-s..=s);
        match self.spec() {
            GroupSpec::Integers => Element::Int(coord(rng)),
            GroupSpec::FreeAbelian { d } => Element::Vector((0..*d).map(|_| coord(rng)).collect()),
            GroupSpec::InfiniteDihedral => Element::Dihedral {
                t: coord(rng),
                flip: rng.gen(),
            },
            GroupSpec::FiniteCayley { table, .. } => Element::Index(rng.gen_range(0..table.len() as u32)),
            GroupSpec::Heisenberg => Element::Heisenberg([coord(rng), coord(rng), coord(rng)]),
            GroupSpec::FiniteAbelianExp { m, d } => Element::Residues((0..*d).map(|_| rng.gen_range(0..*m)).collect()),
            GroupSpec::BurnsideB23 => Element::Burnside([rng.gen_range(0..3), rng.gen_range(0..3), rng.gen_range(0..3)]),
            GroupSpec::FreeGroup { d } => {
                let len = rng.gen_range(0..=s as usize);
                let mut w: Vec<i8> = Vec::with_capacity(len);
                while w.len() < len {
                    let l = rng.gen_range(1..=*d as i8) * if rng.gen() { 1 } else { -1 };
                    if w.last() != Some(&-l) {
                        w.push(l);
                    }
                }
                Element::Word(w)
            }
        }
    }
}
