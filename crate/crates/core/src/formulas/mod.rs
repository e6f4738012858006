//! Closed-form codegree sets and the structural tests that select them.

pub mod abelian;
pub mod camina;
pub mod extraspecial;
pub mod predict;
pub mod vz;

use std::fmt;

use serde::{Serialize, Serializer};

use crate::chartab::ConjugacyClasses;
use crate::error::{Error, Result};
use crate::pc::PcGroup;

pub use abelian::{cod_abelian, cod_lin, lemma21_kernel, lemma21_subgroup, CyclicQuotientKernel};
pub use camina::{camina_profile, cod_camina, CaminaProfile};
pub use extraspecial::{cod_extraspecial, is_extraspecial};
pub use predict::{predict_from_paper, summary_envelope, within_envelope, ExpectedRow, Prediction, PrimeRange};
pub use vz::{cod_vz_case, cod_vz_general, is_vz, VzCase};

/// Which computation produced a codegree set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Bruteforce,
    Abelian,
    Linear,
    VzGeneral,
    VzCase(VzCase),
    Extraspecial,
    /// Camina group of the given nilpotency class.
    Camina(u32),
    /// Published expected value.
    Paper,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::Bruteforce => f.write_str("bruteforce"),
            Method::Abelian => f.write_str("cod_abelian"),
            Method::Linear => f.write_str("cod_lin"),
            Method::VzGeneral => f.write_str("cod_vz_general"),
            Method::VzCase(case) => write!(f, "cod_vz_case({case})"),
            Method::Extraspecial => f.write_str("cod_extraspecial"),
            Method::Camina(class) => write!(f, "cod_camina(class {class})"),
            Method::Paper => f.write_str("paper"),
        }
    }
}

impl Serialize for Method {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Where one codegree comes from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Provenance {
    pub codegree: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kernel_order: Option<u64>,
    /// Number of irreducible characters sharing this degree and kernel order.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub characters: Option<usize>,
    pub note: String,
}

impl Provenance {
    pub fn note(codegree: u64, note: impl Into<String>) -> Self {
        Provenance {
            codegree,
            degree: None,
            kernel_order: None,
            characters: None,
            note: note.into(),
        }
    }
}

/// `cod(G)` with the method that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CodegreeReport {
    pub p: u32,
    pub order: u64,
    pub method: Method,
    /// Sorted, without repeats.
    pub cod: Vec<u64>,
    pub provenance: Vec<Provenance>,
}

impl CodegreeReport {
    pub fn new(p: u32, order: u64, method: Method, mut cod: Vec<u64>, provenance: Vec<Provenance>) -> Self {
        cod.sort_unstable();
        cod.dedup();
        CodegreeReport {
            p,
            order,
            method,
            cod,
            provenance,
        }
    }

    /// Joins the linear part with a nonlinear part computed under `method`.
    pub(crate) fn with_nonlinear(linear: CodegreeReport, method: Method, nonlinear: Vec<Provenance>) -> Self {
        let mut cod = linear.cod;
        cod.extend(nonlinear.iter().map(|p| p.codegree));
        let mut provenance = linear.provenance;
        provenance.extend(nonlinear);
        CodegreeReport::new(linear.p, linear.order, method, cod, provenance)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// `[1, p, …, p^m]`.
pub(crate) fn p_powers(p: u32, m: u32) -> Vec<u64> {
    (0..=m).map(|i| (p as u64).pow(i)).collect()
}

/// `log_p(n)` for an exact power of `p`.
pub(crate) fn log_p(p: u32, n: u64) -> Option<u32> {
    let mut k = 0;
    let mut m = n;
    while m > 1 {
        if !m.is_multiple_of(p as u64) {
            return None;
        }
        m /= p as u64;
        k += 1;
    }
    (m == 1).then_some(k)
}

/// Exact integer square root, when there is one.
pub(crate) fn exact_sqrt(n: u64) -> Option<u64> {
    let r = (n as f64).sqrt().round() as u64;
    (r.saturating_sub(1)..=r + 1).find(|&s| s * s == n)
}

/// `cod(G)` from the first closed form that applies: abelian, extraspecial,
/// a VZ case (or the general VZ algorithm when no case fits), Camina.
pub fn codegrees_formula(group: &PcGroup) -> Result<CodegreeReport> {
    let classes = ConjugacyClasses::new(group);
    codegrees_formula_with_classes(group, &classes)
}

pub fn codegrees_formula_with_classes(group: &PcGroup, classes: &ConjugacyClasses) -> Result<CodegreeReport> {
    let p = group.p();
    if group.is_abelian() {
        let parts = group.abelian_type(&group.whole())?;
        return cod_abelian(p, &parts);
    }
    if is_extraspecial(group) {
        return cod_extraspecial(p, group.order() as u64);
    }
    if vz::is_vz_by_class_count(group, classes) {
        return match cod_vz_case(group) {
            Err(Error::NoCaseApplies { .. }) => cod_vz_general(group),
            other => other,
        };
    }
    let profile = camina::camina_profile_with_classes(group, classes);
    if profile.is_camina {
        let z = group.center().order() as u64;
        let d = group.derived_subgroup().order() as u64;
        return cod_camina(&profile, p, group.order() as u64, d, z);
    }
    Err(Error::NoFormula(
        "group is neither abelian, VZ nor Camina".into(),
    ))
}
