//! Published codegree sets, embedded from `data/expected_codegrees.csv`.
//!
//! Each row names a group (or a block of groups from one table cell), the
//! primes for which the value is stated, and `cod(G)` as exponents of `p`.
//! Rows with an empty template have no presentation in the catalog; they are
//! listed for reference and count as skipped in verification.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::catalog::{Family, GroupId};

const DATA: &str = include_str!("../../data/expected_codegrees.csv");

/// The primes a published value is stated for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PrimeRange {
    Odd,
    AboveThree,
    Three,
}

impl PrimeRange {
    pub fn admits(self, p: u32) -> bool {
        match self {
            PrimeRange::Odd => p >= 3,
            PrimeRange::AboveThree => p > 3,
            PrimeRange::Three => p == 3,
        }
    }
}

impl fmt::Display for PrimeRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PrimeRange::Odd => "odd",
            PrimeRange::AboveThree => "p>3",
            PrimeRange::Three => "3",
        })
    }
}

impl FromStr for PrimeRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "odd" => Ok(PrimeRange::Odd),
            "p>3" => Ok(PrimeRange::AboveThree),
            "3" => Ok(PrimeRange::Three),
            other => Err(format!("unknown prime range {other:?}")),
        }
    }
}

#[derive(Deserialize)]
struct RawRow {
    row_id: String,
    source: String,
    label: String,
    template: String,
    primes: String,
    cod_exponents: String,
    constructible: bool,
}

/// One row of the expected-value data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExpectedRow {
    pub row_id: String,
    pub source: String,
    pub label: String,
    /// Catalog family string, empty when the group is not constructible.
    pub template: String,
    pub primes: PrimeRange,
    /// `cod(G) = {p^e : e ∈ cod_exponents}`.
    pub cod_exponents: Vec<u32>,
}

impl ExpectedRow {
    pub fn constructible(&self) -> bool {
        !self.template.is_empty()
    }

    pub fn family(&self) -> Option<Family> {
        self.template.parse().ok()
    }

    pub fn cod(&self, p: u32) -> Vec<u64> {
        self.cod_exponents.iter().map(|&e| (p as u64).pow(e)).collect()
    }
}

fn parse_rows() -> Vec<ExpectedRow> {
    let mut reader = csv::Reader::from_reader(DATA.as_bytes());
    reader
        .deserialize::<RawRow>()
        .map(|raw| {
            let raw = raw.expect("embedded expected-value data is well formed");
            let cod_exponents = raw
                .cod_exponents
                .split(';')
                .map(|e| e.parse().expect("exponent"))
                .collect();
            let row = ExpectedRow {
                row_id: raw.row_id,
                source: raw.source,
                label: raw.label,
                template: raw.template,
                primes: raw.primes.parse().expect("prime range"),
                cod_exponents,
            };
            assert_eq!(row.constructible(), raw.constructible, "{}", row.row_id);
            row
        })
        .collect()
}

/// All rows, in file order.
pub fn expected_rows() -> &'static [ExpectedRow] {
    static ROWS: OnceLock<Vec<ExpectedRow>> = OnceLock::new();
    ROWS.get_or_init(parse_rows)
}

pub fn expected_row(row_id: &str) -> Option<&'static ExpectedRow> {
    expected_rows().iter().find(|r| r.row_id == row_id)
}

/// `{1, p, p^2}` style rendering of exponent lists.
pub fn format_exponents(exps: &[u32]) -> String {
    let parts: Vec<String> = exps
        .iter()
        .map(|&e| match e {
            0 => "1".to_owned(),
            1 => "p".to_owned(),
            e => format!("p^{e}"),
        })
        .collect();
    format!("{{{}}}", parts.join(", "))
}

/// A published expected value for one group at one prime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Prediction {
    pub row_id: String,
    pub source: String,
    pub cod: Vec<u64>,
}

/// The stated `cod(G)` for `id`, or `None` when no row covers it. Abelian
/// groups are covered by the abelian codegree formula at every prime.
pub fn predict_from_paper(id: &GroupId) -> Option<Prediction> {
    if let Family::Abelian(parts) = &id.family {
        let top = parts.first().copied().unwrap_or(0);
        return Some(Prediction {
            row_id: "abelian".into(),
            source: "abelian codegree corollary".into(),
            cod: (0..=top).map(|e| (id.p as u64).pow(e)).collect(),
        });
    }
    let name = id.family.to_string();
    expected_rows()
        .iter()
        .find(|r| r.template == name && r.primes.admits(id.p))
        .map(|r| Prediction {
            row_id: r.row_id.clone(),
            source: r.source.clone(),
            cod: r.cod(id.p),
        })
}

/// Exponent sets `cod(G)` may take for a non-abelian group of order `p^n`,
/// `n ≤ 5`, at any odd prime. `None` for other orders.
pub fn summary_envelope(n: u32) -> Option<&'static [&'static [u32]]> {
    const P3: &[&[u32]] = &[&[0, 1, 2]];
    const P4: &[&[u32]] = &[&[0, 1, 2], &[0, 1, 3], &[0, 1, 2, 3]];
    const P5: &[&[u32]] = &[
        &[0, 1, 2],
        &[0, 1, 3],
        &[0, 1, 2, 3],
        &[0, 1, 2, 4],
        &[0, 1, 2, 3, 4],
    ];
    match n {
        3 => Some(P3),
        4 => Some(P4),
        5 => Some(P5),
        _ => None,
    }
}

/// Whether `cod` is one of the sets allowed for a non-abelian group of
/// order `p^n`. Orders outside `p^3..=p^5` are unconstrained.
pub fn within_envelope(p: u32, n: u32, cod: &[u64]) -> bool {
    let Some(sets) = summary_envelope(n) else {
        return true;
    };
    sets.iter().any(|s| {
        s.len() == cod.len() && s.iter().zip(cod).all(|(&e, &c)| (p as u64).pow(e) == c)
    })
}
