use std::collections::HashMap;

use rand::SeedableRng;
use rayon::prelude::*;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::class_matrix::ClassMatrices;
use super::classes::{ClassInfo, ConjugacyClasses};
use super::cyclotomic::{dense_equals_integer, CyclotomicSum, CyclotomicValue};
use super::dft::dft;
use super::linear::homomorphisms;
use super::modp::{dixon_prime, primitive_root, Field, MAX_MODULUS};
use super::split::central_characters;
use crate::error::{Error, Result};
use crate::formulas::{CodegreeReport, Method, Provenance};
use crate::pc::{Elem, PcGroup, Subgroup};

/// Version of the character table JSON layout.
pub const TABLE_SCHEMA_VERSION: u32 = 1;

/// One irreducible character.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharacterRow {
    pub degree: u64,
    /// `χ(g_i)` for each class `i`, as multiplicities of powers of `ζ_e`.
    pub values: Vec<CyclotomicValue>,
    /// Classes on which `χ` takes the value `χ(1)`.
    pub kernel_classes: Vec<usize>,
    pub kernel_order: u64,
    /// `|G : ker χ| / χ(1)`.
    pub codegree: u64,
}

/// How the finite field and its root of unity were chosen.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableMetadata {
    /// The prime `ℓ`, the smallest with `ℓ ≡ 1 (mod e)` and `ℓ > 2·sqrt|G|`.
    pub modulus: u64,
    /// Smallest primitive root `r` of `ℓ`.
    pub primitive_root: u64,
    /// `θ = r^{(ℓ-1)/e}`, the image of `ζ_e` used to lift values.
    pub theta: u64,
    /// `e = exp(G)`.
    pub root_order: u64,
    pub seed: u64,
}

/// The complex character table of a p-group with exact cyclotomic values.
///
/// Rows are sorted by degree and then by their values, so the trivial
/// character comes first and the table does not depend on the seed.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    p: u32,
    order: u64,
    classes: ConjugacyClasses,
    rows: Vec<CharacterRow>,
    metadata: TableMetadata,
}

#[derive(Serialize)]
struct TableJson<'a> {
    schema_version: u32,
    p: u32,
    order: u64,
    metadata: &'a TableMetadata,
    classes: Vec<ClassInfo>,
    rows: &'a [CharacterRow],
}

/// Discrete logarithms base `θ` of the `e`-th roots of unity.
fn root_logs(field: Field, theta: u64, e: u64) -> HashMap<u64, u64> {
    let mut logs = HashMap::with_capacity(e as usize);
    let mut x = 1;
    for t in 0..e {
        logs.insert(x, t);
        x = field.mul(x, theta);
    }
    logs
}

/// `ω_λ(C_k) = |C_k| λ(g_k)` for every linear character `λ`.
fn linear_central_characters(
    group: &PcGroup,
    classes: &ConjugacyClasses,
    field: Field,
    theta: u64,
    e: u64,
) -> Vec<Vec<u64>> {
    let powers: Vec<u64> = (0..e).map(|t| field.pow(theta, t)).collect();
    let l = field.modulus();
    homomorphisms(group.presentation(), e)
        .into_iter()
        .map(|phi| {
            classes
                .representatives()
                .iter()
                .enumerate()
                .map(|(k, rep)| {
                    let t = rep
                        .exps
                        .iter()
                        .zip(&phi)
                        .fold(0, |acc, (&a, &v)| (acc + a as u64 * v) % e);
                    field.mul(classes.size(k) as u64 % l, powers[t as usize])
                })
                .collect()
        })
        .collect()
}

/// Class indices grouped by the coset of `G'` containing them (conjugates
/// of `g` lie in `gG'`, so each class sits in one coset).
fn classes_by_coset(group: &PcGroup, classes: &ConjugacyClasses) -> Vec<Vec<usize>> {
    let derived = group.derived_subgroup();
    let mut by_coset: HashMap<Elem, Vec<usize>> = HashMap::new();
    for k in 0..classes.len() {
        let g = classes.representative(k);
        let key = derived
            .elements()
            .iter()
            .map(|&d| group.mul(g, d))
            .min()
            .expect("G' contains the identity");
        by_coset.entry(key).or_default().push(k);
    }
    let mut groups: Vec<Vec<usize>> = by_coset.into_values().collect();
    groups.sort_unstable();
    groups
}

/// Builds the character table of `group` by the Dixon-Schneider method.
pub fn character_table(group: &PcGroup, seed: u64) -> Result<CharacterTable> {
    let classes = ConjugacyClasses::new(group);
    character_table_with_classes(group, classes, seed)
}

pub fn character_table_with_classes(
    group: &PcGroup,
    classes: ConjugacyClasses,
    seed: u64,
) -> Result<CharacterTable> {
    let order = group.order() as u64;
    let p = group.p();
    let k = classes.len();
    let e = classes.exponent();
    let l = dixon_prime(e, order);
    if l >= MAX_MODULUS {
        return Err(Error::SplittingFailed(format!(
            "field modulus {l} exceeds the supported bound {MAX_MODULUS}"
        )));
    }
    let field = Field::new(l);
    let root = primitive_root(l);
    let theta = field.pow(root, (l - 1) / e);
    let metadata = TableMetadata {
        modulus: l,
        primitive_root: root,
        theta,
        root_order: e,
        seed,
    };

    // Linear characters come from the presentation; only the span of the
    // nonlinear central characters is split numerically.
    let mut omegas = linear_central_characters(group, &classes, field, theta, e);
    let mats = ClassMatrices::new(group, &classes);
    let mut by_size: Vec<usize> = (1..k).collect();
    by_size.sort_by_key(|&i| (classes.size(i), i));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cosets = classes_by_coset(group, &classes);
    omegas.extend(central_characters(&mats, &by_size, &cosets, field, &mut rng)?);
    if omegas.len() != k {
        return Err(Error::SplittingFailed(format!(
            "found {} central characters for {k} classes",
            omegas.len()
        )));
    }

    let logs = root_logs(field, theta, e);
    let size_inv: Vec<u64> = (0..k).map(|i| field.inv(classes.size(i) as u64 % l)).collect();
    let degrees: Vec<u64> = std::iter::successors(Some(1u64), |&d| Some(d * p as u64))
        .take_while(|&d| d * d <= order)
        .collect();

    let mut rows = Vec::with_capacity(k);
    for w in &omegas {
        // Σ_i ω_i ω_{i*} / |C_i| = |G| / χ(1)²
        let s = (0..k).fold(0, |acc, i| {
            let t = field.mul(w[i], w[classes.inverse_class(i)]);
            field.add(acc, field.mul(t, size_inv[i]))
        });
        if s == 0 {
            return Err(Error::SplittingFailed("degenerate central character".into()));
        }
        let target = field.mul(order % l, field.inv(s));
        let degree = *degrees
            .iter()
            .find(|&&d| field.mul(d % l, d % l) == target)
            .ok_or_else(|| Error::SplittingFailed("no p-power degree fits a central character".into()))?;
        let chi: Vec<u64> = (0..k)
            .map(|i| field.mul(field.mul(w[i], degree % l), size_inv[i]))
            .collect();
        let values = (0..k)
            .map(|i| lift_value(&classes, &chi, i, degree, field, theta, e, p, &logs))
            .collect::<Result<Vec<_>>>()?;
        let kernel_classes: Vec<usize> = (0..k).filter(|&i| values[i].is_integer(degree)).collect();
        let kernel_order: u64 = kernel_classes.iter().map(|&i| classes.size(i) as u64).sum();
        rows.push(CharacterRow {
            degree,
            codegree: order / (kernel_order * degree),
            values,
            kernel_classes,
            kernel_order,
        });
    }
    rows.sort_by(|a, b| a.degree.cmp(&b.degree).then_with(|| a.values.cmp(&b.values)));
    Ok(CharacterTable {
        p,
        order,
        classes,
        rows,
        metadata,
    })
}

/// Recovers `χ(g_i)` exactly from its image in `GF(ℓ)`. If `g_i` has order
/// `o`, the eigenvalue multiplicities of `g_i` are
/// `m_k = (1/o) Σ_j χ(g_i^j) θ_o^{-jk}` with `θ_o = θ^{e/o}`, and
/// `χ(g_i) = Σ_k m_k ζ_o^k` with every `m_k ∈ [0, χ(1)]`.
#[allow(clippy::too_many_arguments)]
fn lift_value(
    classes: &ConjugacyClasses,
    chi: &[u64],
    i: usize,
    degree: u64,
    field: Field,
    theta: u64,
    e: u64,
    p: u32,
    logs: &HashMap<u64, u64>,
) -> Result<CyclotomicValue> {
    let o = classes.element_order(i);
    let stride = e / o;
    if degree == 1 {
        let t = *logs.get(&chi[i]).ok_or(Error::LiftOutOfRange {
            value: chi[i],
            degree,
        })?;
        if t % stride != 0 {
            return Err(Error::LiftOutOfRange { value: chi[i], degree });
        }
        return Ok(CyclotomicValue::from_terms(e, [(t, 1)]));
    }
    let seq: Vec<u64> = (0..o).map(|j| chi[classes.power_class(i, j)]).collect();
    let theta_o = field.pow(theta, stride);
    let sums = dft(field, p as u64, &seq, field.inv(theta_o));
    let o_inv = field.inv(o % field.modulus());
    let mut terms = Vec::new();
    let mut total = 0;
    for (kk, &s) in sums.iter().enumerate() {
        let m = field.mul(s, o_inv);
        if m > degree {
            return Err(Error::LiftOutOfRange { value: m, degree });
        }
        if m != 0 {
            terms.push((kk as u64 * stride, m));
            total += m;
        }
    }
    if total != degree {
        return Err(Error::LiftOutOfRange { value: total, degree });
    }
    Ok(CyclotomicValue::from_terms(e, terms))
}

impl CharacterTable {
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn group_order(&self) -> u64 {
        self.order
    }

    pub fn classes(&self) -> &ConjugacyClasses {
        &self.classes
    }

    pub fn rows(&self) -> &[CharacterRow] {
        &self.rows
    }

    pub fn metadata(&self) -> &TableMetadata {
        &self.metadata
    }

    pub fn degrees(&self) -> Vec<u64> {
        self.rows.iter().map(|r| r.degree).collect()
    }

    /// Sorted distinct degrees, `cd(G)`.
    pub fn degree_set(&self) -> Vec<u64> {
        let mut d = self.degrees();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// Sorted distinct codegrees, `cod(G)`.
    pub fn codegree_set(&self) -> Vec<u64> {
        let mut c: Vec<u64> = self.rows.iter().map(|r| r.codegree).collect();
        c.sort_unstable();
        c.dedup();
        c
    }

    /// `ker χ` as a subgroup of `group`.
    pub fn kernel(&self, group: &PcGroup, row: usize) -> Subgroup {
        let elements: Vec<Elem> = self.rows[row]
            .kernel_classes
            .iter()
            .flat_map(|&i| self.classes.members(i).iter().copied())
            .collect();
        group.closure(&elements)
    }

    /// `Σ_i |C_i| χ(g_i) conj(ψ(g_i))` as an exact cyclotomic integer,
    /// compared with `|G|·δ_{χψ}`.
    pub fn rows_orthogonal(&self, a: usize, b: usize, acc: &mut CyclotomicSum) -> bool {
        let conj: Vec<CyclotomicValue> = self.rows[b].values.iter().map(CyclotomicValue::conj).collect();
        self.pair_orthogonal(a, b, &conj, acc)
    }

    fn pair_orthogonal(&self, a: usize, b: usize, conj_b: &[CyclotomicValue], acc: &mut CyclotomicSum) -> bool {
        acc.clear();
        for (i, (x, y)) in self.rows[a].values.iter().zip(conj_b).enumerate() {
            if x.terms().is_empty() || y.terms().is_empty() {
                continue;
            }
            acc.add_product(self.classes.size(i) as i64, x, y);
        }
        acc.equals_integer(if a == b { self.order as i64 } else { 0 })
    }

    /// Checks every pair of rows; returns the first failing pair.
    pub fn check_orthogonality(&self) -> Option<(usize, usize)> {
        const BLOCK: usize = 16;
        let e = self.metadata.root_order;
        let sizes: Vec<i64> = self.classes.sizes().into_iter().map(|s| s as i64).collect();
        let rows: Vec<PackedRow> = self.rows.par_iter().map(|r| PackedRow::new(&r.values, 0)).collect();
        let conj: Vec<PackedRow> = self.rows.par_iter().map(|r| PackedRow::new(&r.values, e)).collect();
        let n = self.rows.len();
        // Each block of left rows streams the conjugated rows once.
        (0..n.div_ceil(BLOCK)).into_par_iter().find_map_first(|blk| {
            let lo = blk * BLOCK;
            let hi = (lo + BLOCK).min(n);
            let mut dense = vec![0i64; e as usize];
            let mut failures = Vec::new();
            for (b, right) in conj.iter().enumerate().skip(lo) {
                for (a, left) in rows.iter().enumerate().take(hi.min(b + 1)).skip(lo) {
                    dense.iter_mut().for_each(|c| *c = 0);
                    left.multiply_into(right, &sizes, &mut dense);
                    let target = if a == b { self.order as i64 } else { 0 };
                    if !dense_equals_integer(self.p as u64, &mut dense, target) {
                        failures.push((a, b));
                    }
                }
            }
            failures.into_iter().min()
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&TableJson {
            schema_version: TABLE_SCHEMA_VERSION,
            p: self.p,
            order: self.order,
            metadata: &self.metadata,
            classes: self.classes.info(),
            rows: &self.rows,
        })
        .expect("character table serializes")
    }

    /// Codegree report with one provenance entry per distinct
    /// `(degree, kernel order)` pair.
    pub fn codegree_report(&self) -> CodegreeReport {
        let mut groups: Vec<(u64, u64, u64, usize)> = Vec::new();
        for r in &self.rows {
            match groups
                .iter_mut()
                .find(|g| g.0 == r.degree && g.1 == r.kernel_order)
            {
                Some(g) => g.3 += 1,
                None => groups.push((r.degree, r.kernel_order, r.codegree, 1)),
            }
        }
        groups.sort_unstable();
        let provenance = groups
            .into_iter()
            .map(|(degree, kernel_order, codegree, count)| Provenance {
                codegree,
                degree: Some(degree),
                kernel_order: Some(kernel_order),
                characters: Some(count),
                note: if degree == 1 {
                    "linear".into()
                } else {
                    "nonlinear".into()
                },
            })
            .collect();
        CodegreeReport::new(
            self.p,
            self.order,
            Method::Bruteforce,
            self.codegree_set(),
            provenance,
        )
    }
}

/// `cod(G)` read off the character table.
pub fn codegrees_bruteforce(group: &PcGroup, seed: u64) -> Result<CodegreeReport> {
    Ok(character_table(group, seed)?.codegree_report())
}

/// One row's values as flat arrays: class `i` owns the terms
/// `offsets[i]..offsets[i + 1]`. Rows with exactly one term per class, which
/// include every linear character, skip the offsets.
struct PackedRow {
    offsets: Option<Vec<u32>>,
    exps: Vec<u32>,
    mults: Vec<u32>,
}

impl PackedRow {
    /// Packs `values`, conjugated when `conj_mod` is the root order `e`
    /// (pass 0 to keep them as they are).
    fn new(values: &[CyclotomicValue], conj_mod: u64) -> Self {
        let mut offsets = vec![0];
        let mut exps = Vec::new();
        let mut mults = Vec::new();
        for v in values {
            for &(k, m) in v.terms() {
                let k = if conj_mod == 0 { k } else { (conj_mod - k) % conj_mod };
                exps.push(k as u32);
                mults.push(m as u32);
            }
            offsets.push(exps.len() as u32);
        }
        let monomial = exps.len() == values.len();
        PackedRow {
            offsets: (!monomial).then_some(offsets),
            exps,
            mults,
        }
    }

    fn class_terms(&self, i: usize) -> std::ops::Range<usize> {
        match &self.offsets {
            Some(o) => o[i] as usize..o[i + 1] as usize,
            None => i..i + 1,
        }
    }

    /// Adds `Σ_i |C_i| · self_i · other_i` to the dense coefficients `acc`.
    fn multiply_into(&self, other: &PackedRow, sizes: &[i64], acc: &mut [i64]) {
        let e = acc.len() as u32;
        if self.offsets.is_none() && other.offsets.is_none() {
            let pairs = self.exps.iter().zip(&other.exps);
            let weights = self.mults.iter().zip(&other.mults).zip(sizes);
            for ((&i, &j), ((&m, &n), &s)) in pairs.zip(weights) {
                let k = i + j;
                acc[if k >= e { k - e } else { k } as usize] += s * (m * n) as i64;
            }
            return;
        }
        for (c, &s) in sizes.iter().enumerate() {
            let (xs, ys) = (self.class_terms(c), other.class_terms(c));
            for x in xs {
                for y in ys.clone() {
                    let k = self.exps[x] + other.exps[y];
                    let w = s * (self.mults[x] * other.mults[y]) as i64;
                    acc[if k >= e { k - e } else { k } as usize] += w;
                }
            }
        }
    }
}
