use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::presentation::PcPresentation;
use crate::error::{Error, Result};

/// Default bound on `|G|` for every enumerative computation.
pub const DEFAULT_ORDER_GUARD: u64 = 20_000;

/// Index of an element of a [`PcGroup`]; the identity is `Elem(0)`.
///
/// Indices order elements lexicographically by their exponent vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem(pub(crate) u32);

impl Elem {
    pub const IDENTITY: Elem = Elem(0);

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// An element as its collected normal form `g_1^{e_1} ··· g_n^{e_n}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupElement {
    pub exps: Vec<u32>,
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("·")?;
            }
            first = false;
            if e == 1 {
                write!(f, "g{i}")?;
            } else {
                write!(f, "g{i}^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// A finite p-group given by a consistent [`PcPresentation`], with the
/// right-multiplication action of each generator tabulated over all elements.
#[derive(Clone, Debug)]
pub struct PcGroup {
    pres: PcPresentation,
    order: usize,
    weights: Vec<u32>,
    right: Vec<Vec<u32>>,
    right_inv: Vec<Vec<u32>>,
}

impl PcGroup {
    /// Builds the multiplication tables and checks consistency, refusing
    /// groups larger than `guard`.
    pub fn new(pres: PcPresentation, guard: u64) -> Result<Self> {
        let order = pres.order();
        if order > guard {
            return Err(Error::OrderGuard { order, guard });
        }
        let n = pres.generator_count();
        let p = pres.p();
        let order = order as usize;
        let mut weights = vec![1u32; n];
        for i in (0..n.saturating_sub(1)).rev() {
            weights[i] = weights[i + 1] * p;
        }
        let mut group = PcGroup {
            pres,
            order,
            weights,
            right: vec![Vec::new(); n],
            right_inv: vec![Vec::new(); n],
        };
        group.build_tables();
        group.check_consistency()?;
        Ok(group)
    }

    pub fn with_default_guard(pres: PcPresentation) -> Result<Self> {
        Self::new(pres, DEFAULT_ORDER_GUARD)
    }

    pub fn presentation(&self) -> &PcPresentation {
        &self.pres
    }

    pub fn p(&self) -> u32 {
        self.pres.p()
    }

    pub fn generator_count(&self) -> usize {
        self.pres.generator_count()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Elem {
        Elem::IDENTITY
    }

    pub fn generator(&self, i: usize) -> Elem {
        Elem(self.weights[i])
    }

    pub fn generators(&self) -> Vec<Elem> {
        (0..self.generator_count()).map(|i| self.generator(i)).collect()
    }

    /// All elements, in index order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.order as u32).map(Elem)
    }

    fn digit(&self, x: u32, i: usize) -> u32 {
        (x / self.weights[i]) % self.pres.p()
    }

    fn encode(&self, exps: &[u32]) -> u32 {
        exps.iter().zip(&self.weights).map(|(&e, &w)| e * w).sum()
    }

    pub fn exponents(&self, x: Elem) -> GroupElement {
        GroupElement {
            exps: (0..self.generator_count()).map(|i| self.digit(x.0, i)).collect(),
        }
    }

    /// Converts a normal form back to an element index.
    pub fn elem(&self, g: &GroupElement) -> Result<Elem> {
        let n = self.generator_count();
        if g.exps.len() != n {
            return Err(Error::VectorLength {
                expected: n,
                found: g.exps.len(),
            });
        }
        for (position, &value) in g.exps.iter().enumerate() {
            if value >= self.p() {
                return Err(Error::ExponentOutOfRange {
                    position,
                    value,
                    p: self.p(),
                });
            }
        }
        Ok(Elem(self.encode(&g.exps)))
    }

    /// Right-multiplies the element index `x` by the normal form `word`,
    /// using whichever tables are already built.
    fn apply_word(&self, mut x: u32, word: &[u32]) -> u32 {
        for (k, &e) in word.iter().enumerate() {
            for _ in 0..e {
                x = self.right[k][x as usize];
            }
        }
        x
    }

    /// Collection from the left, one generator at a time, from the last
    /// generator to the first. To right-multiply `x = u·t` by `g_i`, where `u`
    /// involves generators up to `g_i` and `t` only later ones, rewrite
    /// `u·t·g_i = (u·g_i)·t^{g_i}` and use `g_j^{g_i} = g_j [g_j, g_i]`; every
    /// factor on the right then lies in generators whose tables exist already.
    fn build_tables(&mut self) {
        let n = self.generator_count();
        let p = self.p();
        for i in (0..n).rev() {
            let mut table = vec![0u32; self.order];
            let zero = vec![0u32; n];
            for x in 0..self.order as u32 {
                let head: u32 = (0..i).map(|k| self.digit(x, k) * self.weights[k]).sum();
                let ei = self.digit(x, i) + 1;
                let mut y = if ei == p {
                    self.apply_word(head, self.pres.power(i))
                } else {
                    head + ei * self.weights[i]
                };
                for j in i + 1..n {
                    let comm = self.pres.commutator(j, i).unwrap_or(&zero);
                    for _ in 0..self.digit(x, j) {
                        y = self.right[j][y as usize];
                        y = self.apply_word(y, comm);
                    }
                }
                table[x as usize] = y;
            }
            self.right[i] = table;
        }
    }

    /// The relations must hold for the right-regular action the tables define,
    /// and that action must be transitive. Together these force the presented
    /// group to have exactly `p^n` elements with distinct normal forms.
    fn check_consistency(&mut self) -> Result<()> {
        let n = self.generator_count();
        let p = self.p();
        for i in 0..n {
            let mut inv = vec![u32::MAX; self.order];
            for (x, &y) in self.right[i].iter().enumerate() {
                if inv[y as usize] != u32::MAX {
                    return Err(Error::Inconsistent(format!(
                        "right multiplication by g{i} is not a bijection"
                    )));
                }
                inv[y as usize] = x as u32;
            }
            self.right_inv[i] = inv;
        }
        let zero = vec![0u32; n];
        for x in 0..self.order as u32 {
            for i in 0..n {
                let mut y = x;
                for _ in 0..p {
                    y = self.right[i][y as usize];
                }
                if y != self.apply_word(x, self.pres.power(i)) {
                    return Err(Error::Inconsistent(format!(
                        "power relation for g{i} fails on {}",
                        self.exponents(Elem(x))
                    )));
                }
                for j in i + 1..n {
                    let mut y = self.right_inv[j][x as usize];
                    y = self.right_inv[i][y as usize];
                    y = self.right[j][y as usize];
                    y = self.right[i][y as usize];
                    let rhs = self.pres.commutator(j, i).unwrap_or(&zero);
                    if y != self.apply_word(x, rhs) {
                        return Err(Error::Inconsistent(format!(
                            "commutator relation [g{j}, g{i}] fails on {}",
                            self.exponents(Elem(x))
                        )));
                    }
                }
            }
        }
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut queue = VecDeque::from([0u32]);
        let mut count = 1usize;
        while let Some(x) = queue.pop_front() {
            for table in &self.right {
                let y = table[x as usize];
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    count += 1;
                    queue.push_back(y);
                }
            }
        }
        if count != self.order {
            return Err(Error::Inconsistent(format!(
                "only {count} of {} normal forms are distinct elements",
                self.order
            )));
        }
        Ok(())
    }

    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        let mut z = x.0;
        for k in 0..self.generator_count() {
            for _ in 0..self.digit(y.0, k) {
                z = self.right[k][z as usize];
            }
        }
        Elem(z)
    }

    pub fn inverse(&self, x: Elem) -> Elem {
        let mut z = 0u32;
        for k in (0..self.generator_count()).rev() {
            for _ in 0..self.digit(x.0, k) {
                z = self.right_inv[k][z as usize];
            }
        }
        Elem(z)
    }

    /// `x^m` by square-and-multiply; negative `m` uses the inverse.
    pub fn pow(&self, x: Elem, m: i64) -> Elem {
        let mut base = if m < 0 { self.inverse(x) } else { x };
        let mut m = m.unsigned_abs();
        let mut acc = Elem::IDENTITY;
        while m > 0 {
            if m & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            m >>= 1;
        }
        acc
    }

    /// `x⁻¹ y⁻¹ x y`.
    pub fn commutator(&self, x: Elem, y: Elem) -> Elem {
        let xy = self.mul(x, y);
        let yx = self.mul(y, x);
        self.mul(self.inverse(yx), xy)
    }

    /// `g⁻¹ x g`.
    pub fn conjugate(&self, x: Elem, g: Elem) -> Elem {
        self.mul(self.mul(self.inverse(g), x), g)
    }

    /// Least `m ≥ 1` with `x^m = 1`; always a power of `p`.
    pub fn order_of(&self, x: Elem) -> u64 {
        let p = self.p() as i64;
        let mut y = x;
        let mut o = 1u64;
        while y != Elem::IDENTITY {
            y = self.pow(y, p);
            o *= p as u64;
        }
        o
    }

    /// Exponent of the whole group.
    pub fn exponent(&self) -> u64 {
        self.elements().map(|x| self.order_of(x)).max().unwrap_or(1)
    }

    /// Collects a word of `(generator, exponent)` syllables into normal form.
    pub fn collect(&self, word: &[(usize, i64)]) -> Result<Elem> {
        let n = self.generator_count();
        let mut z = 0u32;
        for &(g, e) in word {
            if g >= n {
                return Err(Error::GeneratorOutOfRange { index: g, n });
            }
            let ord = self.order_of(self.generator(g)) as i64;
            let steps = e.rem_euclid(ord);
            for _ in 0..steps {
                z = self.right[g][z as usize];
            }
        }
        Ok(Elem(z))
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generators();
        gens.iter().enumerate().all(|(a, &x)| {
            gens[a + 1..]
                .iter()
                .all(|&y| self.mul(x, y) == self.mul(y, x))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn heisenberg(p: u32) -> PcGroup {
        let pres = PcPresentation::new(p, 3)
            .unwrap()
            .with_commutator(1, 0, &[(2, 1)])
            .unwrap();
        PcGroup::with_default_guard(pres).unwrap()
    }

    fn elt(g: &PcGroup, exps: &[u32]) -> Elem {
        g.elem(&GroupElement {
            exps: exps.to_vec(),
        })
        .unwrap()
    }

    #[test]
    fn heisenberg_collection() {
        let g = heisenberg(3);
        let a = g.generator(0);
        let b = g.generator(1);
        let c = g.generator(2);
        // b·a = a·b·[b,a] = a·b·c
        let ba = g.collect(&[(1, 1), (0, 1)]).unwrap();
        assert_eq!(g.exponents(ba).exps, vec![1, 1, 1]);
        assert_eq!(g.mul(b, a), ba);
        assert_eq!(g.commutator(b, a), c);
        assert_eq!(g.collect(&[(0, 1), (0, -1)]).unwrap(), g.identity());
        assert_eq!(g.collect(&[]).unwrap(), g.identity());
        assert!(matches!(
            g.collect(&[(3, 1)]),
            Err(Error::GeneratorOutOfRange { index: 3, n: 3 })
        ));
        assert_eq!(g.order_of(g.identity()), 1);
        assert_eq!(heisenberg(5).order_of(heisenberg(5).generator(0)), 5);
    }

    #[test]
    fn inverse_and_power() {
        let g = heisenberg(5);
        for x in g.elements() {
            assert_eq!(g.mul(x, g.inverse(x)), g.identity());
            assert_eq!(g.pow(x, -1), g.inverse(x));
            assert_eq!(g.pow(x, 5), g.identity());
            assert_eq!(g.mul(x, g.identity()), x);
        }
        let x = elt(&g, &[2, 3, 1]);
        assert_eq!(g.pow(x, 3), g.mul(g.mul(x, x), x));
    }

    #[test]
    fn inconsistent_presentation_is_rejected() {
        // g0^p = g1 while [g1, g0] = g2 cannot hold: g1 is a power of g0.
        let pres = PcPresentation::new(3, 3)
            .unwrap()
            .with_power(0, &[(1, 1)])
            .unwrap()
            .with_commutator(1, 0, &[(2, 1)])
            .unwrap();
        assert!(matches!(
            PcGroup::with_default_guard(pres),
            Err(Error::Inconsistent(_))
        ));
    }

    #[test]
    fn order_guard() {
        let pres = PcPresentation::new(7, 6).unwrap();
        assert!(matches!(
            PcGroup::with_default_guard(pres),
            Err(Error::OrderGuard {
                order: 117_649,
                guard: DEFAULT_ORDER_GUARD
            })
        ));
    }

    #[test]
    fn trivial_group() {
        let g = PcGroup::with_default_guard(PcPresentation::new(3, 0).unwrap()).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.exponent(), 1);
        assert!(g.is_abelian());
    }
}
