//! VZ groups: every nonlinear irreducible character vanishes off `Z(G)`.
//!
//! Such a character has degree `f = |G:Z|^{1/2}` and is determined by a
//! character `λ` of `Z(G)` with `G' ⊄ ker λ`; its kernel is `ker λ`, so its
//! codegree is `f·|Z : ker λ|`. The nonlinear codegrees are therefore
//! `f·|Z:N|` over subgroups `N ≤ Z` with `Z/N` cyclic and `G' ⊄ N`.

use std::fmt;

use super::abelian::cod_lin;
use super::{exact_sqrt, CodegreeReport, Method, Provenance};
use crate::chartab::{CharacterTable, ConjugacyClasses};
use crate::error::{Error, Result};
use crate::pc::PcGroup;

/// The closed-form cases for `cod_nl` of a VZ group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VzCase {
    /// `Z(G)` cyclic: `{(|G||Z|)^{1/2}}`.
    CyclicCenter,
    /// `Z(G)` elementary abelian: `{p·f}`.
    ElementaryCenter,
    /// `d(G') = d(Z)`: `{p^{l_j}·f}` over the parts of `Z`.
    EqualRank,
    /// `d(G') < d(Z) = 2`, generic position of `G'`: `{p^j·f : l_2 ≤ j ≤ l_1}`.
    RankTwoSplit,
    /// `d(G') < d(Z) = 2`, `G'` inside every cyclic subgroup of order above
    /// `p^{l_2}`: `{exp(Z)·f}`.
    RankTwoSingle,
}

impl fmt::Display for VzCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VzCase::CyclicCenter => "i",
            VzCase::ElementaryCenter => "ii",
            VzCase::EqualRank => "iii",
            VzCase::RankTwoSplit => "iv, I",
            VzCase::RankTwoSingle => "iv, II",
        })
    }
}

/// `|G:Z|^{1/2}` for a non-abelian group whose central index is a square.
fn vz_degree(group: &PcGroup) -> Option<u64> {
    if group.is_abelian() {
        return None;
    }
    exact_sqrt((group.order() / group.center().order()) as u64)
}

/// Necessary conditions: non-abelian with `|G:Z|` a square.
pub fn vz_prefilter(group: &PcGroup) -> bool {
    vz_degree(group).is_some()
}

/// Nonlinear degrees satisfy `χ(1)² ≤ |G:Z|` and sum (squared) to
/// `|G| - |G:G'|`, so `G` is VZ exactly when there are no more than
/// `(|G| - |G:G'|)/|G:Z|` nonlinear characters.
pub fn is_vz_by_class_count(group: &PcGroup, classes: &ConjugacyClasses) -> bool {
    let Some(f) = vz_degree(group) else {
        return false;
    };
    let order = group.order() as u64;
    let linear = order / group.derived_subgroup().order() as u64;
    let nonlinear = (order - linear) / (f * f);
    classes.len() as u64 == linear + nonlinear
}

/// Whether `cd(G) = {1, |G:Z|^{1/2}}`. Uses the degrees of `table` when
/// given, and the class count otherwise.
pub fn is_vz(group: &PcGroup, table: Option<&CharacterTable>) -> bool {
    let Some(f) = vz_degree(group) else {
        return false;
    };
    match table {
        Some(t) => t.degree_set() == vec![1, f],
        None => is_vz_by_class_count(group, &ConjugacyClasses::new(group)),
    }
}

fn require_vz(group: &PcGroup) -> Result<u64> {
    if !is_vz(group, None) {
        return Err(Error::NotVz);
    }
    Ok(vz_degree(group).expect("VZ groups have square central index"))
}

/// `cod(G)` by enumerating the subgroups `N` of `Z(G)` with `Z/N` cyclic and
/// `G' ⊄ N`.
pub fn cod_vz_general(group: &PcGroup) -> Result<CodegreeReport> {
    let f = require_vz(group)?;
    let z = group.center();
    let d = group.derived_subgroup();
    let mut nl: Vec<Provenance> = Vec::new();
    for n in group.subgroups_of_abelian(&z)? {
        if d.is_subset_of(&n) {
            continue;
        }
        let index = (z.order() / n.order()) as u64;
        if group.section_exponent(&z, &n)? != index {
            continue;
        }
        let codegree = f * index;
        if nl.iter().any(|q| q.codegree == codegree) {
            continue;
        }
        nl.push(Provenance {
            codegree,
            degree: Some(f),
            kernel_order: Some(n.order() as u64),
            characters: None,
            note: format!("nonlinear, |Z:N| = {index}"),
        });
    }
    nl.sort_by_key(|q| q.codegree);
    Ok(CodegreeReport::with_nonlinear(cod_lin(group)?, Method::VzGeneral, nl))
}

/// `cod(G)` by the case formula matching the ranks of `G'` and `Z(G)`.
/// Fails with [`Error::NoCaseApplies`] when `d(G') < d(Z)` and `d(Z) > 2`.
pub fn cod_vz_case(group: &PcGroup) -> Result<CodegreeReport> {
    let f = require_vz(group)?;
    let p = group.p() as u64;
    let z = group.center();
    let d = group.derived_subgroup();
    let parts = group.abelian_type(&z)?;
    let dz = parts.len() as u32;
    let dd = group.rank(&d);
    let zo = z.order() as u64;
    let (case, codegrees): (VzCase, Vec<u64>) = if dz == 1 {
        (VzCase::CyclicCenter, vec![f * zo])
    } else if parts.iter().all(|&l| l == 1) {
        (VzCase::ElementaryCenter, vec![p * f])
    } else if dd == dz {
        (VzCase::EqualRank, parts.iter().map(|&l| p.pow(l) * f).collect())
    } else if dz == 2 {
        let (l1, l2) = (parts[0], parts[1]);
        let bound = p.pow(l2);
        let single = z.elements().iter().all(|&x| {
            group.order_of(x) <= bound || d.is_subset_of(&group.closure(&[x]))
        });
        if single {
            (VzCase::RankTwoSingle, vec![p.pow(l1) * f])
        } else {
            (VzCase::RankTwoSplit, (l2..=l1).map(|j| p.pow(j) * f).collect())
        }
    } else {
        return Err(Error::NoCaseApplies {
            derived_rank: dd,
            center_rank: dz,
        });
    };
    let mut nl: Vec<Provenance> = Vec::new();
    for c in codegrees {
        if nl.iter().all(|q| q.codegree != c) {
            nl.push(nonlinear_note(f, c, case));
        }
    }
    nl.sort_by_key(|q| q.codegree);
    Ok(CodegreeReport::with_nonlinear(cod_lin(group)?, Method::VzCase(case), nl))
}

fn nonlinear_note(f: u64, codegree: u64, case: VzCase) -> Provenance {
    Provenance {
        codegree,
        degree: Some(f),
        kernel_order: None,
        characters: None,
        note: format!("nonlinear, case ({case})"),
    }
}
