use std::sync::OnceLock;

use rayon::prelude::*;

use super::classes::ConjugacyClasses;
use super::modp::Field;
use crate::pc::{Elem, PcGroup};

/// Class multiplication coefficients `a_{ijk} = #{(x, y) ∈ C_i × C_j : xy = z_k}`
/// for a fixed `i`, where `z_k` is the representative of `C_k`.
///
/// Stored sparsely by row `j`: `rows[j]` lists the nonzero `(k, a_{ijk})`.
/// With this orientation `Σ_j a_{ijk} = |C_i|` for every column `k`, and the
/// central character vector `(ω_χ(C_k))_k` is a right eigenvector with
/// eigenvalue `ω_χ(C_i)`.
#[derive(Clone, Debug)]
pub struct ClassMatrix {
    index: usize,
    rows: Vec<Vec<(u32, u32)>>,
}

impl ClassMatrix {
    /// Counts, for each column `k` and each `x ∈ C_i`, the class of `x⁻¹ z_k`.
    pub fn new(group: &PcGroup, classes: &ConjugacyClasses, i: usize) -> Self {
        let k = classes.len();
        let inverses: Vec<Elem> = classes
            .members(i)
            .iter()
            .map(|&x| group.inverse(x))
            .collect();
        let columns: Vec<Vec<(u32, u32)>> = (0..k)
            .into_par_iter()
            .map(|col| {
                let z = classes.representative(col);
                let mut hits: Vec<u32> = inverses
                    .iter()
                    .map(|&xi| classes.class_of(group.mul(xi, z)) as u32)
                    .collect();
                hits.sort_unstable();
                let mut out: Vec<(u32, u32)> = Vec::new();
                for j in hits {
                    match out.last_mut() {
                        Some((last, c)) if *last == j => *c += 1,
                        _ => out.push((j, 1)),
                    }
                }
                out
            })
            .collect();
        let mut rows = vec![Vec::new(); k];
        for (col, entries) in columns.into_iter().enumerate() {
            for (j, c) in entries {
                rows[j as usize].push((col as u32, c));
            }
        }
        ClassMatrix { index: i, rows }
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn entry(&self, j: usize, k: usize) -> u32 {
        self.rows[j]
            .iter()
            .find(|&&(c, _)| c as usize == k)
            .map_or(0, |&(_, a)| a)
    }

    pub fn nonzeros(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    /// `M v` over `GF(ℓ)`. Entries are at most `|G|` and vector entries are
    /// below `2^24`, so each row sum fits a `u64` before reduction.
    pub fn apply(&self, field: Field, v: &[u64]) -> Vec<u64> {
        self.rows
            .iter()
            .map(|row| field.reduce(row.iter().map(|&(k, a)| a as u64 * v[k as usize]).sum()))
            .collect()
    }
}

/// Lazily built class matrices of one group.
pub struct ClassMatrices<'a> {
    group: &'a PcGroup,
    classes: &'a ConjugacyClasses,
    cache: Vec<OnceLock<ClassMatrix>>,
}

impl<'a> ClassMatrices<'a> {
    pub fn new(group: &'a PcGroup, classes: &'a ConjugacyClasses) -> Self {
        ClassMatrices {
            group,
            classes,
            cache: (0..classes.len()).map(|_| OnceLock::new()).collect(),
        }
    }

    pub fn get(&self, i: usize) -> &ClassMatrix {
        self.cache[i].get_or_init(|| ClassMatrix::new(self.group, self.classes, i))
    }

    pub fn len(&self) -> usize {
        self.cache.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cache.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pc::PcPresentation;

    fn heisenberg3() -> PcGroup {
        let pres = PcPresentation::new(3, 3)
            .unwrap()
            .with_commutator(1, 0, &[(2, 1)])
            .unwrap();
        PcGroup::with_default_guard(pres).unwrap()
    }

    #[test]
    fn identity_class_matrix_is_identity() {
        let g = heisenberg3();
        let cc = ConjugacyClasses::new(&g);
        let m = ClassMatrix::new(&g, &cc, 0);
        for j in 0..cc.len() {
            for k in 0..cc.len() {
                assert_eq!(m.entry(j, k), u32::from(j == k));
            }
        }
    }

    #[test]
    fn column_sums_and_inverse_class() {
        let g = heisenberg3();
        let cc = ConjugacyClasses::new(&g);
        for i in 0..cc.len() {
            let m = ClassMatrix::new(&g, &cc, i);
            for k in 0..cc.len() {
                let s: u32 = (0..cc.len()).map(|j| m.entry(j, k)).sum();
                assert_eq!(s as usize, cc.size(i));
            }
            // C_i · C_{i*} hits the identity |C_i| times.
            assert_eq!(m.entry(cc.inverse_class(i), 0) as usize, cc.size(i));
        }
    }

    #[test]
    fn abelian_matrices_are_monomial() {
        let pres = PcPresentation::new(3, 2)
            .unwrap()
            .with_power(0, &[(1, 1)])
            .unwrap();
        let g = PcGroup::with_default_guard(pres).unwrap();
        let cc = ConjugacyClasses::new(&g);
        for i in 0..cc.len() {
            let m = ClassMatrix::new(&g, &cc, i);
            for k in 0..cc.len() {
                let nz = (0..cc.len()).filter(|&j| m.entry(j, k) != 0).count();
                assert_eq!(nz, 1);
            }
        }
    }
}
