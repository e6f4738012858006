//! Built-in groups: abelian and extraspecial families, and the groups of
//! order `p^4` and `p^5` whose presentations are printed explicitly.
//!
//! Every presentation is refined so that each generator has relative order
//! `p`; a cyclic factor of order `p^k` becomes a chain of `k` generators, each
//! the `p`-th power of the one before.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::formulas::predict;
use crate::pc::{check_odd_prime, validate_partition, Partition, PcGroup, PcPresentation};

/// A group family, without the prime.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// `C_{p^{l_1}} × C_{p^{l_2}} × ···` for a partition `[l_1 ≥ l_2 ≥ …]`.
    Abelian(Partition),
    /// The extraspecial group of order `p^3` and exponent `p`.
    Heisenberg,
    /// Extraspecial of order `p^{1+2n}` and exponent `p`.
    ExtraspecialExpP(u32),
    /// Extraspecial of order `p^{1+2n}` and exponent `p^2`.
    ExtraspecialExpP2(u32),
    Phi2_31,
    Phi2_211b,
    Phi3_2111c,
    Phi4_221a,
    Phi4_221c,
    Phi4_221f0,
    /// A presentation read from a JSON file.
    UserJson(PathBuf),
}

impl Family {
    /// Whether this is one of the families whose presentation is only
    /// classified for `p > 3`.
    pub fn is_phi(&self) -> bool {
        matches!(
            self,
            Family::Phi2_31
                | Family::Phi2_211b
                | Family::Phi3_2111c
                | Family::Phi4_221a
                | Family::Phi4_221c
                | Family::Phi4_221f0
        )
    }

    /// Tag before any `:` parameter.
    pub fn tag(&self) -> &'static str {
        match self {
            Family::Abelian(_) => "abelian",
            Family::Heisenberg => "heisenberg",
            Family::ExtraspecialExpP(_) => "extraspecial_exp_p",
            Family::ExtraspecialExpP2(_) => "extraspecial_exp_p2",
            Family::Phi2_31 => "phi2_31",
            Family::Phi2_211b => "phi2_211b",
            Family::Phi3_2111c => "phi3_2111c",
            Family::Phi4_221a => "phi4_221a",
            Family::Phi4_221c => "phi4_221c",
            Family::Phi4_221f0 => "phi4_221f0",
            Family::UserJson(_) => "user_json",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Abelian(parts) => {
                let s: Vec<String> = parts.iter().map(u32::to_string).collect();
                write!(f, "abelian:{}", s.join(","))
            }
            Family::ExtraspecialExpP(n) | Family::ExtraspecialExpP2(n) => {
                write!(f, "{}:{n}", self.tag())
            }
            Family::UserJson(path) => write!(f, "user_json:{}", path.display()),
            other => f.write_str(other.tag()),
        }
    }
}

fn parse_rank(param: Option<&str>, s: &str) -> Result<u32> {
    let n: u32 = param
        .unwrap_or("1")
        .trim()
        .parse()
        .map_err(|_| Error::UnknownFamily(s.to_owned()))?;
    if n == 0 {
        return Err(Error::UnknownFamily(s.to_owned()));
    }
    Ok(n)
}

impl FromStr for Family {
    type Err = Error;

    /// Parses `abelian:2,1`, `heisenberg`, `extraspecial_exp_p:2`,
    /// `phi4_221c`, `user_json:path/to/file.json`, and so on.
    fn from_str(s: &str) -> Result<Self> {
        let (tag, param) = match s.split_once(':') {
            Some((t, rest)) => (t.trim(), Some(rest)),
            None => (s.trim(), None),
        };
        let no_param = |fam: Family| match param {
            None => Ok(fam),
            Some(_) => Err(Error::UnknownFamily(s.to_owned())),
        };
        match tag {
            "abelian" => {
                let text = param.ok_or_else(|| Error::UnknownFamily(s.to_owned()))?;
                let parts = if text.trim().is_empty() {
                    Vec::new()
                } else {
                    text.split(',')
                        .map(|x| x.trim().parse::<u32>())
                        .collect::<std::result::Result<Vec<_>, _>>()
                        .map_err(|_| Error::UnknownFamily(s.to_owned()))?
                };
                validate_partition(&parts)?;
                Ok(Family::Abelian(parts))
            }
            "heisenberg" => no_param(Family::Heisenberg),
            "extraspecial_exp_p" => Ok(Family::ExtraspecialExpP(parse_rank(param, s)?)),
            "extraspecial_exp_p2" => Ok(Family::ExtraspecialExpP2(parse_rank(param, s)?)),
            "phi2_31" => no_param(Family::Phi2_31),
            "phi2_211b" => no_param(Family::Phi2_211b),
            "phi3_2111c" => no_param(Family::Phi3_2111c),
            "phi4_221a" => no_param(Family::Phi4_221a),
            "phi4_221c" => no_param(Family::Phi4_221c),
            "phi4_221f0" => no_param(Family::Phi4_221f0),
            "user_json" => match param {
                Some(path) if !path.is_empty() => Ok(Family::UserJson(PathBuf::from(path))),
                _ => Err(Error::UnknownFamily(s.to_owned())),
            },
            _ => Err(Error::UnknownFamily(s.to_owned())),
        }
    }
}

/// A family instantiated at a prime.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupId {
    pub family: Family,
    pub p: u32,
}

impl GroupId {
    pub fn new(family: Family, p: u32) -> Self {
        GroupId { family, p }
    }

    pub fn parse(family: &str, p: u32) -> Result<Self> {
        Ok(GroupId::new(family.parse()?, p))
    }
}

impl fmt::Display for GroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (p = {})", self.family, self.p)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BuildOptions {
    /// Build the φ families at `p = 3`, where they are not part of the
    /// classification they come from.
    pub allow_p3: bool,
}

/// Smallest `ν ≥ 2` that is not a square modulo `p`.
pub fn quadratic_nonresidue(p: u32) -> Result<u32> {
    check_odd_prime(p)?;
    let squares: Vec<u64> = (1..p as u64).map(|x| x * x % p as u64).collect();
    Ok((2..p)
        .find(|&nu| !squares.contains(&(nu as u64)))
        .expect("an odd prime has a non-residue"))
}

fn abelian(p: u32, parts: &[u32]) -> Result<PcPresentation> {
    validate_partition(parts)?;
    let n: u32 = parts.iter().sum();
    let mut pres = PcPresentation::new(p, n as usize)?;
    let mut at = 0;
    for &l in parts {
        for k in at..at + l as usize - 1 {
            pres = pres.with_power(k, &[(k + 1, 1)])?;
        }
        at += l as usize;
    }
    Ok(pres)
}

/// Generators `a_1, b_1, …, a_n, b_n, c` with `[b_i, a_i] = c` central; with
/// `square_root` also `a_1^p = c`.
fn extraspecial(p: u32, n: u32, square_root: bool) -> Result<PcPresentation> {
    let n = n as usize;
    let c = 2 * n;
    let mut pres = PcPresentation::new(p, 2 * n + 1)?;
    for i in 0..n {
        pres = pres.with_commutator(2 * i + 1, 2 * i, &[(c, 1)])?;
    }
    if square_root {
        pres = pres.with_power(0, &[(c, 1)])?;
    }
    Ok(pres)
}

/// Builds the presentation for `id`.
pub fn build(id: &GroupId, opts: BuildOptions) -> Result<PcPresentation> {
    let p = id.p;
    if let Family::UserJson(path) = &id.family {
        let pres = PcPresentation::from_json_file(path)?;
        if pres.p() != p {
            return Err(Error::PrimeMismatch {
                expected: p,
                found: pres.p(),
            });
        }
        return Ok(pres);
    }
    check_odd_prime(p)?;
    if id.family.is_phi() && p <= 3 && !opts.allow_p3 {
        return Err(Error::PrimeOutOfRange {
            family: id.family.to_string(),
            p,
        });
    }
    match &id.family {
        Family::Abelian(parts) => abelian(p, parts),
        Family::Heisenberg => extraspecial(p, 1, false),
        Family::ExtraspecialExpP(n) => extraspecial(p, *n, false),
        Family::ExtraspecialExpP2(n) => extraspecial(p, *n, true),
        // α, α₁ | [α₁, α] = α^{p²}, α₁^p = 1, α of order p³.
        // g0 = α, g1 = α₁, g2 = α^p, g3 = α^{p²}.
        Family::Phi2_31 => PcPresentation::new(p, 4)?
            .with_power(0, &[(2, 1)])?
            .with_power(2, &[(3, 1)])?
            .with_commutator(1, 0, &[(3, 1)]),
        // α, α₁, γ | [α₁, α] = γ^p, α^p = α₁^p = 1, γ of order p².
        // g0 = α, g1 = α₁, g2 = γ, g3 = γ^p.
        Family::Phi2_211b => PcPresentation::new(p, 4)?
            .with_power(2, &[(3, 1)])?
            .with_commutator(1, 0, &[(3, 1)]),
        // α, α₁, α₂, γ | [α₁, α] = α₂, [α₂, α] = γ^p, γ of order p², others of order p.
        // g0 = α, g1 = α₁, g2 = α₂, g3 = γ, g4 = γ^p.
        Family::Phi3_2111c => PcPresentation::new(p, 5)?
            .with_power(3, &[(4, 1)])?
            .with_commutator(1, 0, &[(2, 1)])?
            .with_commutator(2, 0, &[(4, 1)]),
        // [α₁, α] = β₁ = α₁^p, [α₂, α] = β₂ = α^p, α₂^p = 1.
        // g0 = α, g1 = α₁, g2 = α₂, g3 = β₁, g4 = β₂.
        Family::Phi4_221a => PcPresentation::new(p, 5)?
            .with_power(0, &[(4, 1)])?
            .with_power(1, &[(3, 1)])?
            .with_commutator(1, 0, &[(3, 1)])?
            .with_commutator(2, 0, &[(4, 1)]),
        // [α₁, α] = β₁ = α₁^p, [α₂, α] = β₂ = α₂^p, α^p = 1.
        Family::Phi4_221c => PcPresentation::new(p, 5)?
            .with_power(1, &[(3, 1)])?
            .with_power(2, &[(4, 1)])?
            .with_commutator(1, 0, &[(3, 1)])?
            .with_commutator(2, 0, &[(4, 1)]),
        // [α₁, α] = β₁, [α₂, α] = β₂ = α₁^p, α₂^p = β₁^ν, α^p = 1.
        Family::Phi4_221f0 => {
            let nu = quadratic_nonresidue(p)?;
            PcPresentation::new(p, 5)?
                .with_power(1, &[(4, 1)])?
                .with_power(2, &[(3, nu)])?
                .with_commutator(1, 0, &[(3, 1)])?
                .with_commutator(2, 0, &[(4, 1)])
        }
        Family::UserJson(_) => unreachable!("handled above"),
    }
}

/// Builds and validates the group for `id`, refusing orders above `guard`.
pub fn build_group(id: &GroupId, opts: BuildOptions, guard: u64) -> Result<PcGroup> {
    PcGroup::new(build(id, opts)?, guard)
}

/// One line of the catalog listing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    /// Family string accepted by [`Family::from_str`], or empty for rows
    /// that cannot be built.
    pub template: String,
    pub description: String,
    /// Where the expected set is published.
    pub source: String,
    /// Expected `cod(G)` as a formula in `p`.
    pub expected: String,
    pub primes: String,
    pub constructible: bool,
}

/// The catalog: the abelian template, then one entry per expected-value row,
/// in data-file order.
pub fn list_catalog() -> Vec<CatalogEntry> {
    let mut out = vec![CatalogEntry {
        template: "abelian:<partition>".into(),
        description: "abelian group C_{p^l1} x C_{p^l2} x ...".into(),
        source: "abelian codegree corollary".into(),
        expected: "{p^i : 0 <= i <= l1}".into(),
        primes: "odd".into(),
        constructible: true,
    }];
    out.extend(predict::expected_rows().iter().map(|row| CatalogEntry {
        template: row.template.clone(),
        description: row.label.clone(),
        source: row.source.clone(),
        expected: predict::format_exponents(&row.cod_exponents),
        primes: row.primes.to_string(),
        constructible: !row.template.is_empty(),
    }));
    out
}

pub fn catalog_json() -> String {
    serde_json::to_string_pretty(&list_catalog()).expect("catalog serializes")
}

pub fn catalog_markdown() -> String {
    let mut s = String::from("| template | group | source | cod(G) | primes | constructible |\n");
    s.push_str("|---|---|---|---|---|---|\n");
    for e in list_catalog() {
        let template = if e.template.is_empty() {
            "-".to_owned()
        } else {
            format!("`{}`", e.template)
        };
        s.push_str(&format!(
            "| {} | {} | {} | {} | {} | {} |\n",
            template,
            e.description,
            e.source,
            e.expected,
            e.primes,
            if e.constructible { "yes" } else { "not_constructible" }
        ));
    }
    s
}
