//! Extraspecial groups: `Z(G) = G'` has order `p`.

use super::{log_p, CodegreeReport, Method, Provenance};
use crate::error::{Error, Result};
use crate::pc::PcGroup;

pub fn is_extraspecial(group: &PcGroup) -> bool {
    if group.is_abelian() {
        return false;
    }
    let z = group.center();
    z.order() == group.p() as usize && z == group.derived_subgroup()
}

/// `cod(G) = {1, p, (p|G|)^{1/2}} = {1, p, p^{n+1}}` for `|G| = p^{1+2n}`.
pub fn cod_extraspecial(p: u32, order: u64) -> Result<CodegreeReport> {
    crate::pc::check_odd_prime(p)?;
    let k = log_p(p, order).ok_or(Error::NotExtraspecialOrder { p, order })?;
    if k < 3 || k % 2 == 0 {
        return Err(Error::NotExtraspecialOrder { p, order });
    }
    let pp = p as u64;
    let top = pp.pow((k - 1) / 2 + 1);
    let provenance = vec![
        Provenance::note(1, "trivial character"),
        Provenance::note(pp, "linear"),
        Provenance {
            codegree: top,
            degree: Some(pp.pow((k - 1) / 2)),
            kernel_order: Some(1),
            characters: Some(p as usize - 1),
            note: "nonlinear, faithful".into(),
        },
    ];
    Ok(CodegreeReport::new(p, order, Method::Extraspecial, vec![1, pp, top], provenance))
}
