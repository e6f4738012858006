use serde::Serialize;

use super::group::PcGroup;
use super::subgroup::Partition;
use crate::chartab::ConjugacyClasses;
use crate::error::Result;
use crate::formulas::{camina, vz};

/// Structural data the closed-form codegree formulas depend on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructuralProfile {
    pub p: u32,
    pub order: u64,
    pub nilpotency_class: u32,
    pub class_count: usize,
    /// Type of `Z(G)`.
    pub center_type: Partition,
    /// Type of `G'`, or `None` when `G'` is not abelian.
    pub derived_type: Option<Partition>,
    pub center_order: u64,
    pub derived_order: u64,
    pub exp_g: u64,
    pub exp_g_over_derived: u64,
    pub d_center: u32,
    pub d_derived: u32,
    pub is_abelian: bool,
    pub is_vz: bool,
    pub is_extraspecial: bool,
    pub is_camina: bool,
}

impl StructuralProfile {
    pub fn of(group: &PcGroup) -> Result<Self> {
        let classes = ConjugacyClasses::new(group);
        Self::with_classes(group, &classes)
    }

    pub fn with_classes(group: &PcGroup, classes: &ConjugacyClasses) -> Result<Self> {
        let p = group.p();
        let z = group.center();
        let d = group.derived_subgroup();
        let is_abelian = group.is_abelian();
        let derived_type = group.abelian_type(&d).ok();
        let is_vz = vz::is_vz_by_class_count(group, classes);
        let is_extraspecial = !is_abelian && z == d && z.order() == p as usize;
        let is_camina = camina::camina_profile_with_classes(group, classes).is_camina;
        Ok(StructuralProfile {
            p,
            order: group.order() as u64,
            nilpotency_class: group.nilpotency_class(),
            class_count: classes.len(),
            center_type: group.abelian_type(&z)?,
            derived_type,
            center_order: z.order() as u64,
            derived_order: d.order() as u64,
            exp_g: classes.exponent(),
            exp_g_over_derived: group.quotient_exponent(&d)?,
            d_center: group.rank(&z),
            d_derived: group.rank(&d),
            is_abelian,
            is_vz,
            is_extraspecial,
            is_camina,
        })
    }
}
