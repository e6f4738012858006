//! Simultaneous diagonalization of the class matrices over `GF(ℓ)`.
//!
//! The class matrices commute and are simultaneously diagonalizable over
//! `GF(ℓ)`, and their common eigenspaces are one-dimensional, each spanned by
//! a central character. Starting from the whole space, every current
//! eigenspace of dimension above one is split by the next class matrix.
//!
//! To split `W` by `M`, take random `v ∈ W` and its Krylov sequence
//! `v, Mv, M²v, …` up to the first linear dependence, which yields the
//! minimal polynomial `μ_v` of `v`. Its roots are eigenvalues `λ` of `M` on
//! `W`, and `(μ_v / (x - λ))(M) v` is a nonzero vector in the `λ`-eigenspace.
//! Repeating with fresh vectors fills every eigenspace; the basis vectors of
//! `W` are used last, as they are certain to finish the job.

use std::collections::BTreeMap;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::class_matrix::ClassMatrices;
use super::modp::Field;
use crate::error::{Error, Result};

/// Extra random vectors tried beyond `dim W` before falling back to basis vectors.
const EXTRA_RANDOM: usize = 64;

/// Rounds of random class-matrix combinations tried when a full pass leaves
/// an eigenspace unsplit.
const COMBINATION_ROUNDS: usize = 8;

/// A subspace of `GF(ℓ)^k` held in semi-echelon form: row `r` has a 1 in
/// column `pivots[r]`, and every later row is zero in that column.
#[derive(Clone, Debug)]
struct Space {
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Space {
    fn empty() -> Self {
        Space {
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    fn full(k: usize) -> Self {
        Space {
            rows: (0..k)
                .map(|i| {
                    let mut v = vec![0; k];
                    v[i] = 1;
                    v
                })
                .collect(),
            pivots: (0..k).collect(),
        }
    }

    /// Vectors whose entries sum to zero over each group of coordinates.
    /// Row `e_a - e_b` pairs each member `a` with the last member `b` of its
    /// group, so pivots are distinct and no row touches another's pivot.
    pub(super) fn zero_sum_within(k: usize, groups: &[Vec<usize>], field: Field) -> Self {
        let mut space = Space::empty();
        for members in groups {
            let mut members = members.clone();
            members.sort_unstable();
            let Some((&last, rest)) = members.split_last() else {
                continue;
            };
            for &a in rest {
                let mut v = vec![0; k];
                v[a] = 1;
                v[last] = field.neg(1);
                space.rows.push(v);
                space.pivots.push(a);
            }
        }
        space
    }

    fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis; returns whether it was independent
    /// (and was then added).
    fn insert(&mut self, field: Field, mut v: Vec<u64>) -> bool {
        for (row, &piv) in self.rows.iter().zip(&self.pivots) {
            let c = v[piv];
            if c != 0 {
                field.axpy(&mut v, field.neg(c), row);
            }
        }
        let Some(piv) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = field.inv(v[piv]);
        for x in v.iter_mut() {
            *x = field.mul(*x, inv);
        }
        self.rows.push(v);
        self.pivots.push(piv);
        true
    }

    fn random_vector(&self, field: Field, rng: &mut ChaCha8Rng) -> Vec<u64> {
        let k = self.rows[0].len();
        let mut v = vec![0; k];
        for row in &self.rows {
            let c = rng.gen_range(0..field.modulus());
            field.axpy(&mut v, c, row);
        }
        v
    }
}

/// A linear operator on `GF(ℓ)^k` built from class matrices.
enum Operator<'m> {
    Single(usize),
    Combination(&'m [(usize, u64)]),
}

impl Operator<'_> {
    fn apply(&self, mats: &ClassMatrices<'_>, field: Field, v: &[u64]) -> Vec<u64> {
        match self {
            Operator::Single(i) => mats.get(*i).apply(field, v),
            Operator::Combination(terms) => {
                let mut out = vec![0; v.len()];
                for &(i, c) in terms.iter() {
                    field.axpy(&mut out, c, &mats.get(i).apply(field, v));
                }
                out
            }
        }
    }
}

/// Krylov sequence of `v` and the monic minimal polynomial `μ_v`
/// (coefficients from the constant term up).
fn krylov(
    op: &Operator<'_>,
    mats: &ClassMatrices<'_>,
    field: Field,
    v: Vec<u64>,
) -> (Vec<Vec<u64>>, Vec<u64>) {
    let mut seq: Vec<Vec<u64>> = vec![v];
    // Reduced rows with the combination of seq vectors that produced them.
    let mut reduced: Vec<(Vec<u64>, Vec<u64>, usize)> = Vec::new();
    loop {
        let m = seq.len() - 1;
        let mut r = seq[m].clone();
        let mut coeff = vec![0u64; m + 1];
        coeff[m] = 1;
        for (row, rc, piv) in &reduced {
            let c = r[*piv];
            if c != 0 {
                let nc = field.neg(c);
                field.axpy(&mut r, nc, row);
                field.axpy(&mut coeff, nc, rc);
            }
        }
        match r.iter().position(|&x| x != 0) {
            None => return (seq, coeff),
            Some(piv) => {
                let inv = field.inv(r[piv]);
                for x in r.iter_mut() {
                    *x = field.mul(*x, inv);
                }
                for x in coeff.iter_mut() {
                    *x = field.mul(*x, inv);
                }
                coeff.push(0);
                for (_, rc, _) in reduced.iter_mut() {
                    rc.push(0);
                }
                reduced.push((r, coeff, piv));
                let next = op.apply(mats, field, &seq[m]);
                seq.push(next);
            }
        }
    }
}

fn eval(field: Field, poly: &[u64], x: u64) -> u64 {
    poly.iter().rev().fold(0, |acc, &c| field.add(field.mul(acc, x), c))
}

/// Splits `w` into eigenspaces of `op`. Returns `None` when `op` acts on `w`
/// as a scalar.
fn split_space(
    w: &Space,
    op: &Operator<'_>,
    mats: &ClassMatrices<'_>,
    field: Field,
    rng: &mut ChaCha8Rng,
) -> Result<Option<Vec<Space>>> {
    let dim = w.dim();
    let mut eigen: BTreeMap<u64, Space> = BTreeMap::new();
    let candidates = (0..dim + EXTRA_RANDOM)
        .map(|_| None)
        .chain((0..dim).map(Some));
    for (attempt, basis_index) in candidates.enumerate() {
        let v = match basis_index {
            None => w.random_vector(field, rng),
            Some(r) => w.rows[r].clone(),
        };
        if v.iter().all(|&x| x == 0) {
            continue;
        }
        let (seq, mu) = krylov(op, mats, field, v);
        let deg = mu.len() - 1;
        let roots: Vec<u64> = (0..field.modulus())
            .filter(|&x| eval(field, &mu, x) == 0)
            .collect();
        if roots.len() != deg {
            return Err(Error::SplittingFailed(format!(
                "minimal polynomial of degree {deg} has {} roots in GF({})",
                roots.len(),
                field.modulus()
            )));
        }
        if attempt == 0 && deg == 1 {
            let lambda = roots[0];
            let scalar = w.rows.iter().all(|b| {
                let mb = op.apply(mats, field, b);
                mb.iter().zip(b).all(|(&x, &y)| x == field.mul(lambda, y))
            });
            if scalar {
                return Ok(None);
            }
        }
        for &lambda in &roots {
            // Synthetic division of μ_v by (x - λ).
            let mut q = vec![0u64; deg];
            let mut carry = 0u64;
            for j in (1..=deg).rev() {
                carry = field.add(mu[j], field.mul(carry, lambda));
                q[j - 1] = carry;
            }
            let mut proj = vec![0u64; seq[0].len()];
            for (c, u) in q.iter().zip(&seq) {
                field.axpy(&mut proj, *c, u);
            }
            eigen
                .entry(lambda)
                .or_insert_with(Space::empty)
                .insert(field, proj);
        }
        let total: usize = eigen.values().map(Space::dim).sum();
        if total == dim {
            return Ok(Some(eigen.into_values().collect()));
        }
    }
    Err(Error::SplittingFailed(format!(
        "eigenspaces of an operator on a {dim}-dimensional space did not fill it"
    )))
}

/// Common eigenvectors of all class matrices inside the invariant subspace
/// of vectors summing to zero over each of `groups`, scaled so the
/// identity-class coordinate is 1. With `groups` empty the whole space is
/// used. The order of the returned vectors depends on `rng`.
pub(super) fn central_characters(
    mats: &ClassMatrices<'_>,
    order: &[usize],
    groups: &[Vec<usize>],
    field: Field,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<Vec<u64>>> {
    let k = mats.len();
    let start = if groups.is_empty() {
        Space::full(k)
    } else {
        Space::zero_sum_within(k, groups, field)
    };
    if start.dim() == 0 {
        return Ok(Vec::new());
    }
    let mut spaces = vec![start];
    let done = |spaces: &[Space]| spaces.iter().all(|s| s.dim() == 1);
    for &i in order {
        if done(&spaces) {
            break;
        }
        spaces = split_all(spaces, &Operator::Single(i), mats, field, rng)?;
    }
    let mut round = 0;
    while !done(&spaces) {
        if round == COMBINATION_ROUNDS {
            let open = spaces.iter().filter(|s| s.dim() > 1).count();
            return Err(Error::SplittingFailed(format!(
                "{open} common eigenspaces remain after {COMBINATION_ROUNDS} rounds of random combinations"
            )));
        }
        let terms: Vec<(usize, u64)> = (1..k)
            .map(|i| (i, rng.gen_range(0..field.modulus())))
            .collect();
        spaces = split_all(spaces, &Operator::Combination(&terms), mats, field, rng)?;
        round += 1;
    }
    spaces
        .into_iter()
        .map(|s| {
            let v = &s.rows[0];
            if v[0] == 0 {
                return Err(Error::SplittingFailed(
                    "common eigenvector vanishes on the identity class".into(),
                ));
            }
            let inv = field.inv(v[0]);
            Ok(v.iter().map(|&x| field.mul(x, inv)).collect())
        })
        .collect()
}

fn split_all(
    spaces: Vec<Space>,
    op: &Operator<'_>,
    mats: &ClassMatrices<'_>,
    field: Field,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<Space>> {
    let mut out = Vec::with_capacity(spaces.len());
    for w in spaces {
        if w.dim() == 1 {
            out.push(w);
            continue;
        }
        match split_space(&w, op, mats, field, rng)? {
            Some(parts) => out.extend(parts),
            None => out.push(w),
        }
    }
    Ok(out)
}
