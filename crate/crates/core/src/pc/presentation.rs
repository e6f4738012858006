use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn check_odd_prime(p: u32) -> Result<()> {
    if p == 2 || !is_prime(p as u64) {
        return Err(Error::InvalidPrime(p as u64));
    }
    Ok(())
}

/// A power-commutator presentation of a group of order `p^n` in which every
/// generator has relative order `p`.
///
/// Generator `g_i` satisfies `g_i^p = w_i` and, for `j > i`,
/// `[g_j, g_i] = g_j⁻¹ g_i⁻¹ g_j g_i = w_{j,i}`, where every right-hand side is
/// a normal-form exponent vector naming only generators after `g_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PcPresentation {
    p: u32,
    n: usize,
    powers: Vec<Vec<u32>>,
    commutators: BTreeMap<(usize, usize), Vec<u32>>,
}

impl PcPresentation {
    /// The presentation with `n` generators and only trivial relations, i.e.
    /// the elementary abelian group of rank `n`.
    pub fn new(p: u32, n: usize) -> Result<Self> {
        check_odd_prime(p)?;
        Ok(Self {
            p,
            n,
            powers: vec![vec![0; n]; n],
            commutators: BTreeMap::new(),
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn generator_count(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> u64 {
        (self.p as u64).pow(self.n as u32)
    }

    fn check_rhs(&self, relation: String, bound: usize, rhs: &[u32]) -> Result<()> {
        if rhs.len() != self.n {
            return Err(Error::VectorLength {
                expected: self.n,
                found: rhs.len(),
            });
        }
        for (position, &value) in rhs.iter().enumerate() {
            if value >= self.p {
                return Err(Error::ExponentOutOfRange {
                    position,
                    value,
                    p: self.p,
                });
            }
            if value != 0 && position <= bound {
                return Err(Error::WeightViolation {
                    relation,
                    generator: position,
                    bound,
                });
            }
        }
        Ok(())
    }

    /// Sets `g_i^p` to the normal form `rhs`.
    pub fn set_power(&mut self, i: usize, rhs: Vec<u32>) -> Result<()> {
        if i >= self.n {
            return Err(Error::GeneratorOutOfRange { index: i, n: self.n });
        }
        self.check_rhs(format!("g{i}^p"), i, &rhs)?;
        self.powers[i] = rhs;
        Ok(())
    }

    /// Sets `[g_j, g_i]` (with `j > i`) to the normal form `rhs`.
    pub fn set_commutator(&mut self, j: usize, i: usize, rhs: Vec<u32>) -> Result<()> {
        for index in [i, j] {
            if index >= self.n {
                return Err(Error::GeneratorOutOfRange { index, n: self.n });
            }
        }
        if j <= i {
            return Err(Error::BadRelationKey(format!("{j},{i}")));
        }
        self.check_rhs(format!("[g{j}, g{i}]"), i, &rhs)?;
        if rhs.iter().all(|&e| e == 0) {
            self.commutators.remove(&(j, i));
        } else {
            self.commutators.insert((j, i), rhs);
        }
        Ok(())
    }

    /// Builder form of [`set_power`](Self::set_power) taking sparse
    /// `(generator, exponent)` pairs.
    pub fn with_power(mut self, i: usize, rhs: &[(usize, u32)]) -> Result<Self> {
        let v = self.sparse(rhs)?;
        self.set_power(i, v)?;
        Ok(self)
    }

    /// Builder form of [`set_commutator`](Self::set_commutator).
    pub fn with_commutator(mut self, j: usize, i: usize, rhs: &[(usize, u32)]) -> Result<Self> {
        let v = self.sparse(rhs)?;
        self.set_commutator(j, i, v)?;
        Ok(self)
    }

    fn sparse(&self, rhs: &[(usize, u32)]) -> Result<Vec<u32>> {
        let mut v = vec![0; self.n];
        for &(g, e) in rhs {
            if g >= self.n {
                return Err(Error::GeneratorOutOfRange { index: g, n: self.n });
            }
            v[g] = e;
        }
        Ok(v)
    }

    pub fn power(&self, i: usize) -> &[u32] {
        &self.powers[i]
    }

    /// Right-hand side of `[g_j, g_i]`, `None` when trivial.
    pub fn commutator(&self, j: usize, i: usize) -> Option<&[u32]> {
        self.commutators.get(&(j, i)).map(Vec::as_slice)
    }

    /// Presentation of `A × B`: the generators of `self`, then those of `other`.
    pub fn direct_product(&self, other: &PcPresentation) -> Result<Self> {
        if self.p != other.p {
            return Err(Error::PrimeMismatch {
                expected: self.p,
                found: other.p,
            });
        }
        let (na, n) = (self.n, self.n + other.n);
        let widen = |v: &[u32], shift: usize| {
            let mut w = vec![0; n];
            w[shift..shift + v.len()].copy_from_slice(v);
            w
        };
        let mut out = PcPresentation::new(self.p, n)?;
        for i in 0..na {
            out.powers[i] = widen(&self.powers[i], 0);
        }
        for i in 0..other.n {
            out.powers[na + i] = widen(&other.powers[i], na);
        }
        for (&(j, i), v) in &self.commutators {
            out.commutators.insert((j, i), widen(v, 0));
        }
        for (&(j, i), v) in &other.commutators {
            out.commutators.insert((na + j, na + i), widen(v, na));
        }
        Ok(out)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let raw: RawPresentation = serde_json::from_str(s)?;
        raw.try_into()
    }

    pub fn from_json_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_owned(),
            source,
        })?;
        Self::from_json_str(&text)
    }

    /// Serializes to the presentation JSON format; trivial relations are omitted.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&RawPresentation::from(self)).expect("presentation serializes")
    }
}

/// On-disk form: `{"p": 5, "n": 4, "powers": {"0": [...]}, "commutators": {"3,0": [...]}}`.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPresentation {
    p: u32,
    n: usize,
    #[serde(default)]
    powers: BTreeMap<String, Vec<u32>>,
    #[serde(default)]
    commutators: BTreeMap<String, Vec<u32>>,
}

fn parse_index(s: &str) -> Result<usize> {
    let t = s.trim();
    if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::BadRelationKey(s.to_owned()));
    }
    t.parse().map_err(|_| Error::BadRelationKey(s.to_owned()))
}

impl TryFrom<RawPresentation> for PcPresentation {
    type Error = Error;

    fn try_from(raw: RawPresentation) -> Result<Self> {
        let mut pres = PcPresentation::new(raw.p, raw.n)?;
        for (key, rhs) in raw.powers {
            let i = parse_index(&key)?;
            pres.set_power(i, rhs)?;
        }
        for (key, rhs) in raw.commutators {
            let (j, i) = key
                .split_once(',')
                .ok_or_else(|| Error::BadRelationKey(key.clone()))?;
            pres.set_commutator(parse_index(j)?, parse_index(i)?, rhs)?;
        }
        Ok(pres)
    }
}

impl From<&PcPresentation> for RawPresentation {
    fn from(pres: &PcPresentation) -> Self {
        let powers = pres
            .powers
            .iter()
            .enumerate()
            .filter(|(_, v)| v.iter().any(|&e| e != 0))
            .map(|(i, v)| (i.to_string(), v.clone()))
            .collect();
        let commutators = pres
            .commutators
            .iter()
            .map(|(&(j, i), v)| (format!("{j},{i}"), v.clone()))
            .collect();
        RawPresentation {
            p: pres.p,
            n: pres.n,
            powers,
            commutators,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_documented_example() {
        let pres = PcPresentation::from_json_str(
            r#"{"p": 5, "n": 4, "powers": {"0": [0,0,1,0]}, "commutators": {"3,0": [0,0,0,0], "1,0": [0,0,0,1]}}"#,
        )
        .unwrap();
        assert_eq!(pres.p(), 5);
        assert_eq!(pres.power(0), &[0, 0, 1, 0]);
        assert_eq!(pres.commutator(1, 0), Some(&[0, 0, 0, 1][..]));
        assert_eq!(pres.commutator(3, 0), None);
        let back = PcPresentation::from_json_str(&pres.to_json()).unwrap();
        assert_eq!(back, pres);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            PcPresentation::new(2, 3),
            Err(Error::InvalidPrime(2))
        ));
        assert!(matches!(
            PcPresentation::new(9, 3),
            Err(Error::InvalidPrime(9))
        ));
        let bad_exp = r#"{"p": 3, "n": 2, "powers": {"0": [0, 3]}}"#;
        assert!(matches!(
            PcPresentation::from_json_str(bad_exp),
            Err(Error::ExponentOutOfRange { value: 3, .. })
        ));
        let negative = r#"{"p": 3, "n": 2, "powers": {"0": [0, -1]}}"#;
        assert!(PcPresentation::from_json_str(negative).is_err());
        let weight = r#"{"p": 3, "n": 2, "powers": {"1": [1, 0]}}"#;
        assert!(matches!(
            PcPresentation::from_json_str(weight),
            Err(Error::WeightViolation { .. })
        ));
        let key = r#"{"p": 3, "n": 3, "commutators": {"0,1": [0, 0, 1]}}"#;
        assert!(matches!(
            PcPresentation::from_json_str(key),
            Err(Error::BadRelationKey(_))
        ));
        let range = r#"{"p": 3, "n": 2, "powers": {"4": [0, 0]}}"#;
        assert!(matches!(
            PcPresentation::from_json_str(range),
            Err(Error::GeneratorOutOfRange { index: 4, .. })
        ));
    }
}
