use std::collections::BTreeMap;

use serde::{Serialize, Serializer};

/// A character value `Σ_k m_k ζ_e^k` with non-negative multiplicities,
/// where `ζ_e` is a primitive `e`-th root of unity and `e = exp(G)`.
///
/// Only nonzero multiplicities are stored, as `(k, m_k)` with `k` increasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclotomicValue {
    e: u64,
    terms: Vec<(u64, u64)>,
}

impl Serialize for CyclotomicValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.terms.serialize(s)
    }
}

impl CyclotomicValue {
    /// Builds a value from `(k, m_k)` pairs; exponents are reduced mod `e`
    /// and repeated exponents are merged.
    pub fn from_terms(e: u64, terms: impl IntoIterator<Item = (u64, u64)>) -> Self {
        let mut map = BTreeMap::new();
        for (k, m) in terms {
            *map.entry(k % e).or_insert(0) += m;
        }
        CyclotomicValue {
            e,
            terms: map.into_iter().filter(|&(_, m)| m != 0).collect(),
        }
    }

    /// The rational integer `n = n·ζ⁰`.
    pub fn integer(e: u64, n: u64) -> Self {
        Self::from_terms(e, [(0, n)])
    }

    pub fn root_order(&self) -> u64 {
        self.e
    }

    pub fn terms(&self) -> &[(u64, u64)] {
        &self.terms
    }

    /// Dense multiplicity vector of length `e`.
    pub fn mults(&self) -> Vec<u64> {
        let mut v = vec![0; self.e as usize];
        for &(k, m) in &self.terms {
            v[k as usize] = m;
        }
        v
    }

    /// `Σ m_k`, the degree of the character this value came from.
    pub fn total(&self) -> u64 {
        self.terms.iter().map(|&(_, m)| m).sum()
    }

    /// Whether the value is the rational integer `d`, i.e. `d·ζ⁰`.
    pub fn is_integer(&self, d: u64) -> bool {
        match self.terms.as_slice() {
            [] => d == 0,
            [(0, m)] => *m == d,
            _ => false,
        }
    }

    /// Complex conjugate: `ζ^k ↦ ζ^{-k}`.
    pub fn conj(&self) -> Self {
        Self::from_terms(self.e, self.terms.iter().map(|&(k, m)| ((self.e - k) % self.e, m)))
    }
}

/// Exact accumulator for sums of products of [`CyclotomicValue`]s, reduced to
/// the integral power basis `1, ζ, …, ζ^{φ(e)-1}` of `ℤ[ζ_e]` for `e = p^a`.
///
/// Coefficients are kept densely with a list of touched slots, so
/// [`clear`](Self::clear) costs only what was written since the last clear.
#[derive(Clone, Debug)]
pub struct CyclotomicSum {
    e: u64,
    p: u64,
    coeffs: Vec<i64>,
    touched: Vec<usize>,
}

impl CyclotomicSum {
    pub fn new(p: u64, e: u64) -> Self {
        CyclotomicSum {
            e,
            p,
            coeffs: vec![0; e as usize],
            touched: Vec::new(),
        }
    }

    pub fn clear(&mut self) {
        for &k in &self.touched {
            self.coeffs[k] = 0;
        }
        self.touched.clear();
    }

    fn bump(&mut self, k: usize, c: i64) {
        if self.coeffs[k] == 0 {
            self.touched.push(k);
        }
        self.coeffs[k] += c;
    }

    /// Adds `weight · a · b`. Coefficients are `i64`, which holds every inner
    /// product of two rows for groups of order below `3·10^9`.
    pub fn add_product(&mut self, weight: i64, a: &CyclotomicValue, b: &CyclotomicValue) {
        for &(i, m) in &a.terms {
            for &(j, n) in &b.terms {
                let k = i + j;
                let k = if k >= self.e { k - self.e } else { k };
                self.bump(k as usize, weight * (m * n) as i64);
            }
        }
    }

    /// Canonical coordinates: every `ζ^{r + (p-1)e/p}` is rewritten as
    /// `-Σ_{t<p-1} ζ^{r + t·e/p}`, using `Φ_e(ζ) = Σ_t ζ^{t·e/p} = 0`.
    /// Zero coordinates are dropped.
    pub fn reduce(&self) -> BTreeMap<u64, i64> {
        let mut out: BTreeMap<u64, i64> = self
            .touched
            .iter()
            .map(|&k| (k as u64, self.coeffs[k]))
            .collect();
        if self.e > 1 {
            let step = self.e / self.p;
            let top = (self.p - 1) * step;
            let high: Vec<(u64, i64)> = out.range(top..).map(|(&k, &c)| (k, c)).collect();
            for (k, c) in high {
                out.remove(&k);
                let r = k - top;
                for t in 0..self.p - 1 {
                    *out.entry(r + t * step).or_insert(0) -= c;
                }
            }
        }
        out.retain(|_, c| *c != 0);
        out
    }

    /// Whether the sum equals the rational integer `n`.
    pub fn equals_integer(&self, n: i64) -> bool {
        let r = self.reduce();
        match r.len() {
            0 => n == 0,
            1 => r.get(&0) == Some(&n),
            _ => false,
        }
    }
}

/// Whether the dense coefficients `Σ c_k ζ^k` (`k < e`, `e` a power of `p`)
/// equal the rational integer `n`. Reduces `c` in place, as
/// [`CyclotomicSum::reduce`] does.
pub(crate) fn dense_equals_integer(p: u64, c: &mut [i64], n: i64) -> bool {
    let e = c.len();
    if e > 1 {
        let step = e / p as usize;
        let top = (p as usize - 1) * step;
        for k in top..e {
            let v = std::mem::take(&mut c[k]);
            if v != 0 {
                for t in 0..p as usize - 1 {
                    c[k - top + t * step] -= v;
                }
            }
        }
    }
    c[0] == n && c[1..].iter().all(|&x| x == 0)
}
