use std::collections::VecDeque;

use serde::Serialize;

use crate::pc::{Elem, GroupElement, PcGroup};

/// Conjugacy classes of a [`PcGroup`], numbered in order of their smallest
/// element, so class 0 is the identity.
#[derive(Clone, Debug)]
pub struct ConjugacyClasses {
    order: usize,
    exponent: u64,
    class_of: Vec<u32>,
    members: Vec<Vec<Elem>>,
    inverse_class: Vec<usize>,
    /// `power_orbits[i][j]` is the class of `g_i^j` for `0 ≤ j < o(g_i)`.
    power_orbits: Vec<Vec<u32>>,
    reps: Vec<GroupElement>,
}

/// Serializable summary of one class.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ClassInfo {
    pub representative: Vec<u32>,
    pub size: usize,
    pub element_order: u64,
}

impl ConjugacyClasses {
    /// Orbits of the conjugation action, found by breadth-first search from
    /// each unassigned element using conjugation by the generators.
    pub fn new(group: &PcGroup) -> Self {
        let order = group.order();
        let gens = group.generators();
        let gen_invs: Vec<Elem> = gens.iter().map(|&g| group.inverse(g)).collect();
        let mut class_of = vec![u32::MAX; order];
        let mut members: Vec<Vec<Elem>> = Vec::new();
        for x in group.elements() {
            if class_of[x.index()] != u32::MAX {
                continue;
            }
            let c = members.len() as u32;
            class_of[x.index()] = c;
            let mut orbit = vec![x];
            let mut queue = VecDeque::from([x]);
            while let Some(y) = queue.pop_front() {
                for (&g, &gi) in gens.iter().zip(&gen_invs) {
                    let z = group.mul(group.mul(gi, y), g);
                    if class_of[z.index()] == u32::MAX {
                        class_of[z.index()] = c;
                        orbit.push(z);
                        queue.push_back(z);
                    }
                }
            }
            orbit.sort_unstable();
            members.push(orbit);
        }
        let inverse_class = members
            .iter()
            .map(|m| class_of[group.inverse(m[0]).index()] as usize)
            .collect();
        let power_orbits: Vec<Vec<u32>> = members
            .iter()
            .map(|m| {
                let g = m[0];
                let mut orbit = vec![0u32];
                let mut y = g;
                while y != Elem::IDENTITY {
                    orbit.push(class_of[y.index()]);
                    y = group.mul(y, g);
                }
                orbit
            })
            .collect();
        let exponent = power_orbits.iter().map(|o| o.len() as u64).max().unwrap_or(1);
        let reps = members.iter().map(|m| group.exponents(m[0])).collect();
        ConjugacyClasses {
            order,
            exponent,
            class_of,
            members,
            inverse_class,
            power_orbits,
            reps,
        }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn group_order(&self) -> usize {
        self.order
    }

    /// `exp(G)`.
    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn class_of(&self, x: Elem) -> usize {
        self.class_of[x.index()] as usize
    }

    pub fn size(&self, i: usize) -> usize {
        self.members[i].len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.members.iter().map(Vec::len).collect()
    }

    /// The smallest element of class `i`.
    pub fn representative(&self, i: usize) -> Elem {
        self.members[i][0]
    }

    pub fn representatives(&self) -> &[GroupElement] {
        &self.reps
    }

    pub fn members(&self, i: usize) -> &[Elem] {
        &self.members[i]
    }

    /// Class of `g⁻¹` for `g` in class `i`.
    pub fn inverse_class(&self, i: usize) -> usize {
        self.inverse_class[i]
    }

    /// Order of the elements of class `i`.
    pub fn element_order(&self, i: usize) -> u64 {
        self.power_orbits[i].len() as u64
    }

    /// Class of `g^j` for `g` in class `i`; `j` is taken modulo the element order.
    pub fn power_class(&self, i: usize, j: u64) -> usize {
        let orbit = &self.power_orbits[i];
        orbit[(j % orbit.len() as u64) as usize] as usize
    }

    /// The `m`-th power map on class indices.
    pub fn power_map(&self, m: u64) -> Vec<usize> {
        (0..self.len()).map(|i| self.power_class(i, m)).collect()
    }

    /// Number of central elements, i.e. singleton classes.
    pub fn center_order(&self) -> usize {
        self.members.iter().filter(|m| m.len() == 1).count()
    }

    pub fn info(&self) -> Vec<ClassInfo> {
        (0..self.len())
            .map(|i| ClassInfo {
                representative: self.reps[i].exps.clone(),
                size: self.size(i),
                element_order: self.element_order(i),
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pc::PcPresentation;

    #[test]
    fn heisenberg_classes() {
        let pres = PcPresentation::new(3, 3)
            .unwrap()
            .with_commutator(1, 0, &[(2, 1)])
            .unwrap();
        let g = PcGroup::with_default_guard(pres).unwrap();
        let cc = ConjugacyClasses::new(&g);
        assert_eq!(cc.len(), 11);
        assert_eq!(cc.size(0), 1);
        assert_eq!(cc.representative(0), Elem::IDENTITY);
        let mut sizes = cc.sizes();
        sizes.sort_unstable();
        assert_eq!(sizes, [vec![1; 3], vec![3; 8]].concat());
        assert_eq!(cc.exponent(), 3);
        for i in 0..cc.len() {
            let j = cc.inverse_class(i);
            assert_eq!(cc.inverse_class(j), i);
            assert_eq!(cc.power_class(i, 2), j);
            assert_eq!(cc.power_map(3)[i], 0);
        }
    }
}
