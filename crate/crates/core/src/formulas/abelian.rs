//! Abelian groups and the linear part of `cod(G)`.
//!
//! A linear character of an abelian group `A` has cyclic image, so its
//! codegree is `|A : ker λ|` for a subgroup with cyclic quotient. Every
//! `p^b ≤ exp(A)` occurs: if `A = ⟨a_1⟩ × ··· × ⟨a_s⟩` with `|a_i| = p^{l_i}`
//! and `l_i ≥ b`, then replacing `a_i` by `a_i^{p^b}` gives such a kernel.

use serde::Serialize;

use super::{log_p, p_powers, CodegreeReport, Method, Provenance};
use crate::error::{Error, Result};
use crate::pc::{validate_partition, Elem, PcGroup, Subgroup};

/// `cod(A) = {1, p, …, exp(A)}` for `A` of type `parts`.
pub fn cod_abelian(p: u32, parts: &[u32]) -> Result<CodegreeReport> {
    crate::pc::check_odd_prime(p)?;
    validate_partition(parts)?;
    let n: u32 = parts.iter().sum();
    let order = (p as u64).pow(n);
    let top = parts.first().copied().unwrap_or(0);
    let cod = p_powers(p, top);
    let provenance = cod
        .iter()
        .map(|&c| Provenance {
            codegree: c,
            degree: Some(1),
            kernel_order: Some(order / c),
            characters: None,
            note: "linear, cyclic quotient".into(),
        })
        .collect();
    Ok(CodegreeReport::new(p, order, Method::Abelian, cod, provenance))
}

/// A subgroup `N = ⟨a_1^{p^{e_1}}, …, a_s^{p^{e_s}}⟩` of the standard
/// abelian group with `A/N` cyclic of order `p^b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyclicQuotientKernel {
    pub b: u32,
    /// Position (0-based) of the generator that was replaced, or `None` when
    /// `b = 0` and `N = A`.
    pub replaced: Option<usize>,
    /// `e_k` for each standard generator; all zero except at `replaced`.
    pub exponents: Vec<u32>,
    pub index: u64,
}

/// Kernel of a linear character of codegree `p^b`. Scans the parts from the
/// smallest up and replaces the first `a_i` with `l_i ≥ b` by `a_i^{p^b}`.
pub fn lemma21_kernel(p: u32, parts: &[u32], b: u32) -> Result<CyclicQuotientKernel> {
    crate::pc::check_odd_prime(p)?;
    validate_partition(parts)?;
    let top = parts.first().copied().unwrap_or(0);
    if b > top {
        return Err(Error::ExponentTooLarge { b, max: top });
    }
    let mut exponents = vec![0; parts.len()];
    let replaced = if b == 0 {
        None
    } else {
        let i = (0..parts.len())
            .rev()
            .find(|&i| parts[i] >= b)
            .expect("b <= l_1");
        exponents[i] = b;
        Some(i)
    };
    Ok(CyclicQuotientKernel {
        b,
        replaced,
        exponents,
        index: (p as u64).pow(b),
    })
}

/// Realizes `kernel` inside `group`, which must be the catalog abelian group
/// of type `parts` (one generator chain per part, heads first in each chain).
pub fn lemma21_subgroup(group: &PcGroup, parts: &[u32], kernel: &CyclicQuotientKernel) -> Subgroup {
    let p = group.p() as i64;
    let mut head = 0;
    let mut gens: Vec<Elem> = Vec::new();
    for (k, &l) in parts.iter().enumerate() {
        let a = group.generator(head);
        gens.push(group.pow(a, p.pow(kernel.exponents[k])));
        head += l as usize;
    }
    gens.retain(|&x| x != Elem::IDENTITY);
    group.closure(&gens)
}

/// `cod_lin(G) = {1, p, …, exp(G/G')}`.
pub fn cod_lin(group: &PcGroup) -> Result<CodegreeReport> {
    let p = group.p();
    let order = group.order() as u64;
    let e = group.quotient_exponent(&group.derived_subgroup())?;
    let m = log_p(p, e).expect("quotient exponent is a p-power");
    let cod = p_powers(p, m);
    let provenance = cod
        .iter()
        .map(|&c| Provenance {
            codegree: c,
            degree: Some(1),
            kernel_order: Some(order / c),
            characters: None,
            note: "linear part".into(),
        })
        .collect();
    Ok(CodegreeReport::new(p, order, Method::Linear, cod, provenance))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build_group, BuildOptions, Family, GroupId};

    fn abelian(p: u32, parts: &[u32]) -> PcGroup {
        let id = GroupId::new(Family::Abelian(parts.to_vec()), p);
        build_group(&id, BuildOptions::default(), 1 << 20).unwrap()
    }

    #[test]
    fn abelian_sets() {
        assert_eq!(cod_abelian(3, &[2, 1]).unwrap().cod, vec![1, 3, 9]);
        assert_eq!(cod_abelian(5, &[1]).unwrap().cod, vec![1, 5]);
        assert_eq!(cod_abelian(5, &[1, 1, 1]).unwrap().cod, vec![1, 5]);
        assert_eq!(cod_abelian(5, &[]).unwrap().cod, vec![1]);
        assert!(cod_abelian(5, &[1, 2]).is_err());
        assert!(cod_abelian(4, &[1]).is_err());
    }

    #[test]
    fn kernel_examples() {
        let k = lemma21_kernel(3, &[2, 1], 0).unwrap();
        assert_eq!(k.replaced, None);
        assert_eq!(k.index, 1);
        let k = lemma21_kernel(3, &[2, 1], 1).unwrap();
        assert_eq!(k.replaced, Some(1));
        assert_eq!(k.exponents, vec![0, 1]);
        let k = lemma21_kernel(3, &[2, 1], 2).unwrap();
        assert_eq!(k.replaced, Some(0));
        assert!(matches!(
            lemma21_kernel(3, &[2, 1], 3),
            Err(Error::ExponentTooLarge { b: 3, max: 2 })
        ));
    }

    #[test]
    fn kernels_have_cyclic_quotients() {
        for parts in [vec![2, 1], vec![3, 1, 1], vec![2, 2], vec![1, 1, 1]] {
            let g = abelian(3, &parts);
            for b in 0..=parts[0] {
                let k = lemma21_kernel(3, &parts, b).unwrap();
                let n = lemma21_subgroup(&g, &parts, &k);
                assert_eq!((g.order() / n.order()) as u64, k.index);
                assert_eq!(g.quotient_exponent(&n).unwrap(), k.index);
            }
        }
        // [2, 1] with b = 1: N = ⟨a_1⟩ since a_2^p = 1.
        let g = abelian(3, &[2, 1]);
        let k = lemma21_kernel(3, &[2, 1], 1).unwrap();
        assert_eq!(lemma21_subgroup(&g, &[2, 1], &k), g.closure(&[g.generator(0)]));
    }

    #[test]
    fn linear_part() {
        let g = abelian(5, &[1, 1, 1]);
        assert_eq!(cod_lin(&g).unwrap().cod, vec![1, 5]);
        let g = abelian(3, &[3, 1]);
        assert_eq!(cod_lin(&g).unwrap().cod, vec![1, 3, 9, 27]);
    }
}
