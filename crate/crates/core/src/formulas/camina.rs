//! Camina groups: every `g ∉ G'` is conjugate to all of `gG'`.
//!
//! A Camina p-group has class 2 or 3, and its codegrees depend only on the
//! orders of `G`, `G'` and `Z(G)`.

use serde::Serialize;

use super::{exact_sqrt, log_p, CodegreeReport, Method, Provenance};
use crate::chartab::ConjugacyClasses;
use crate::error::{Error, Result};
use crate::pc::PcGroup;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CaminaProfile {
    pub is_camina: bool,
    /// Nilpotency class when Camina.
    pub class: Option<u32>,
    /// `n` with `|G/G'| = p^{2n}`, recorded for class 3.
    pub n: Option<u32>,
}

impl CaminaProfile {
    pub const NOT_CAMINA: CaminaProfile = CaminaProfile {
        is_camina: false,
        class: None,
        n: None,
    };
}

pub fn camina_profile(group: &PcGroup) -> CaminaProfile {
    camina_profile_with_classes(group, &ConjugacyClasses::new(group))
}

/// Conjugates of `g` lie in `gG'`, so the classes outside `G'` are cosets
/// exactly when each has `|G'|` elements. Abelian groups are not Camina.
pub fn camina_profile_with_classes(group: &PcGroup, classes: &ConjugacyClasses) -> CaminaProfile {
    if group.is_abelian() {
        return CaminaProfile::NOT_CAMINA;
    }
    let d = group.derived_subgroup();
    let camina = (0..classes.len()).all(|i| {
        d.contains(classes.representative(i)) || classes.size(i) == d.order()
    });
    if !camina {
        return CaminaProfile::NOT_CAMINA;
    }
    let class = group.nilpotency_class();
    let n = (class == 3)
        .then(|| log_p(group.p(), (group.order() / d.order()) as u64).map(|k| k / 2))
        .flatten();
    CaminaProfile {
        is_camina: true,
        class: Some(class),
        n,
    }
}

fn entry(codegree: u64, note: &str) -> Provenance {
    Provenance::note(codegree, note)
}

/// `cod(G)` of a Camina group from `|G|`, `|G'|` and `|Z(G)|`:
/// `{1, p, p·|G/Z|^{1/2}}` in class 2 and
/// `{1, p, p·|G/G'|^{1/2}, p·|G/Z|^{1/2}}` in class 3.
pub fn cod_camina(
    profile: &CaminaProfile,
    p: u32,
    order: u64,
    derived_order: u64,
    center_order: u64,
) -> Result<CodegreeReport> {
    if !profile.is_camina {
        return Err(Error::NotCamina);
    }
    crate::pc::check_odd_prime(p)?;
    let bad = |msg: &str| Error::BadCaminaData(msg.to_owned());
    if derived_order == 0 || center_order == 0 || !order.is_multiple_of(derived_order) || !order.is_multiple_of(center_order) {
        return Err(bad("|G'| and |Z(G)| must divide |G|"));
    }
    let pp = p as u64;
    let sqrt_central = exact_sqrt(order / center_order).ok_or_else(|| bad("|G/Z(G)| is not a square"))?;
    let mut provenance = vec![entry(1, "trivial character"), entry(pp, "linear")];
    match profile.class {
        Some(2) => {
            provenance.push(entry(pp * sqrt_central, "nonlinear, p|G/Z(G)|^(1/2)"));
        }
        Some(3) => {
            let abel = order / derived_order;
            let two_n = log_p(p, abel).ok_or_else(|| bad("|G/G'| is not a power of p"))?;
            let n = two_n / 2;
            if two_n % 2 != 0 || n % 2 != 0 || profile.n.is_some_and(|m| m != n) {
                return Err(bad("class 3 needs |G/G'| = p^(2n) with n even"));
            }
            if log_p(p, order / center_order) != Some(3 * n) {
                return Err(bad("class 3 needs |G/Z(G)| = p^(3n)"));
            }
            let sqrt_abel = pp.pow(n);
            provenance.push(entry(pp * sqrt_abel, "nonlinear, p|G/G'|^(1/2)"));
            provenance.push(entry(pp * sqrt_central, "nonlinear, p|G/Z(G)|^(1/2)"));
        }
        _ => return Err(bad("Camina p-groups have class 2 or 3")),
    }
    let cod = provenance.iter().map(|q| q.codegree).collect();
    let class = profile.class.expect("checked above");
    Ok(CodegreeReport::new(p, order, Method::Camina(class), cod, provenance))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build_group, BuildOptions, GroupId};

    fn group(family: &str, p: u32) -> PcGroup {
        let id = GroupId::parse(family, p).unwrap();
        build_group(&id, BuildOptions::default(), 1 << 20).unwrap()
    }

    fn class3(n: u32) -> CaminaProfile {
        CaminaProfile {
            is_camina: true,
            class: Some(3),
            n: Some(n),
        }
    }

    #[test]
    fn heisenberg_is_camina_of_class_two() {
        for p in [3, 5, 7] {
            let g = group("heisenberg", p);
            let prof = camina_profile(&g);
            assert_eq!(prof.class, Some(2));
            let pp = p as u64;
            let r = cod_camina(&prof, p, pp.pow(3), pp, pp).unwrap();
            assert_eq!(r.cod, vec![1, pp, pp * pp]);
        }
    }

    #[test]
    fn non_camina_groups() {
        assert!(!camina_profile(&group("abelian:2,1", 3)).is_camina);
        assert!(!camina_profile(&group("phi4_221a", 5)).is_camina);
        assert!(!camina_profile(&group("phi2_31", 5)).is_camina);
        assert!(matches!(
            cod_camina(&CaminaProfile::NOT_CAMINA, 3, 27, 3, 3),
            Err(Error::NotCamina)
        ));
    }

    #[test]
    fn class_three_branch() {
        for (p, n) in [(3u32, 2u32), (5, 2), (7, 4)] {
            let pp = p as u64;
            let order = pp.pow(5 * n);
            let derived = order / pp.pow(2 * n);
            let center = order / pp.pow(3 * n);
            let r = cod_camina(&class3(n), p, order, derived, center).unwrap();
            assert_eq!(r.cod, vec![1, pp, pp.pow(n + 1), pp.pow(3 * n / 2 + 1)]);
            assert_eq!(r.method, Method::Camina(3));
        }
        assert_eq!(
            cod_camina(&class3(2), 3, 3u64.pow(10), 3u64.pow(6), 3u64.pow(4)).unwrap().cod,
            vec![1, 3, 27, 81]
        );
        // n odd, or |G/Z| of the wrong size.
        assert!(cod_camina(&class3(1), 3, 3u64.pow(5), 27, 3).is_err());
        assert!(cod_camina(&class3(2), 3, 3u64.pow(10), 3u64.pow(6), 3u64.pow(5)).is_err());
    }
}
