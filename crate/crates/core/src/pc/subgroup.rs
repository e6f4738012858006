use std::collections::VecDeque;
use std::fmt;

use super::group::{Elem, PcGroup};
use crate::error::{Error, Result};

/// A subgroup stored as its full element set.
#[derive(Clone)]
pub struct Subgroup {
    gens: Vec<Elem>,
    members: Vec<bool>,
    elements: Vec<Elem>,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subgroup")
            .field("order", &self.order())
            .field("gens", &self.gens)
            .finish()
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements
    }
}

impl Eq for Subgroup {}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn gens(&self) -> &[Elem] {
        &self.gens
    }

    /// Elements in increasing index order.
    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.members[x.index()]
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    /// Wraps an element set already known to be a subgroup.
    pub(crate) fn from_elements(group_order: usize, gens: Vec<Elem>, mut elements: Vec<Elem>) -> Self {
        elements.sort_unstable();
        elements.dedup();
        let mut members = vec![false; group_order];
        for &x in &elements {
            members[x.index()] = true;
        }
        Subgroup {
            gens,
            members,
            elements,
        }
    }
}

fn log_p(p: u32, mut m: u64) -> u32 {
    let mut k = 0;
    while m > 1 {
        debug_assert_eq!(m % p as u64, 0);
        m /= p as u64;
        k += 1;
    }
    k
}

/// Type of an abelian p-group: `[l₁ ≥ l₂ ≥ …]` for `C_{p^{l₁}} × C_{p^{l₂}} × ···`.
pub type Partition = Vec<u32>;

/// Rejects partitions that are not non-increasing sequences of positive parts.
pub fn validate_partition(parts: &[u32]) -> Result<()> {
    if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::InvalidPartition(parts.to_vec()));
    }
    Ok(())
}

impl PcGroup {
    /// The subgroup generated by `gens`.
    pub fn closure(&self, gens: &[Elem]) -> Subgroup {
        let mut members = vec![false; self.order()];
        members[0] = true;
        let mut elements = vec![Elem::IDENTITY];
        let mut queue = VecDeque::from([Elem::IDENTITY]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !members[y.index()] {
                    members[y.index()] = true;
                    elements.push(y);
                    queue.push_back(y);
                }
            }
        }
        elements.sort_unstable();
        Subgroup {
            gens: gens.to_vec(),
            members,
            elements,
        }
    }

    /// Smallest subgroup containing `gens` and closed under conjugation by
    /// every element of `by`.
    pub fn normal_closure_in(&self, gens: &[Elem], by: &[Elem]) -> Subgroup {
        let mut gens = gens.to_vec();
        loop {
            let h = self.closure(&gens);
            let mut extra = Vec::new();
            for &x in h.gens() {
                for &g in by {
                    let c = self.conjugate(x, g);
                    if !h.contains(c) && !extra.contains(&c) {
                        extra.push(c);
                    }
                }
            }
            if extra.is_empty() {
                return h;
            }
            gens.extend(extra);
        }
    }

    pub fn normal_closure(&self, gens: &[Elem]) -> Subgroup {
        self.normal_closure_in(gens, &self.generators())
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::from_elements(self.order(), self.generators(), self.elements().collect())
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup::from_elements(self.order(), Vec::new(), vec![Elem::IDENTITY])
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        let gens = self.generators();
        h.gens()
            .iter()
            .all(|&x| gens.iter().all(|&g| h.contains(self.conjugate(x, g))))
    }

    /// `Z(G)`: elements commuting with every generator.
    pub fn center(&self) -> Subgroup {
        let gens = self.generators();
        let elements: Vec<Elem> = self
            .elements()
            .filter(|&x| gens.iter().all(|&g| self.mul(x, g) == self.mul(g, x)))
            .collect();
        let reduced = self.reduce_generators(&elements);
        Subgroup::from_elements(self.order(), reduced, elements)
    }

    /// A generating subset of `elements` built greedily in index order.
    fn reduce_generators(&self, elements: &[Elem]) -> Vec<Elem> {
        let mut gens = Vec::new();
        let mut current = self.closure(&[]);
        for &x in elements {
            if !current.contains(x) {
                gens.push(x);
                current = self.closure(&gens);
            }
        }
        gens
    }

    /// `[H, K]` for normal subgroups `H`, `K`: the normal closure of the
    /// commutators of their generators.
    pub fn commutator_subgroup(&self, h: &Subgroup, k: &Subgroup) -> Subgroup {
        let mut comms = Vec::new();
        for &x in h.gens() {
            for &y in k.gens() {
                let c = self.commutator(x, y);
                if c != Elem::IDENTITY && !comms.contains(&c) {
                    comms.push(c);
                }
            }
        }
        self.normal_closure(&comms)
    }

    /// `G'`.
    pub fn derived_subgroup(&self) -> Subgroup {
        let g = self.whole();
        self.commutator_subgroup(&g, &g)
    }

    /// `γ₁ = G ⊵ γ₂ = G' ⊵ … ⊵ 1`, ending at the trivial subgroup.
    pub fn lower_central_series(&self) -> Vec<Subgroup> {
        let g = self.whole();
        let mut series = vec![g.clone()];
        while !series.last().expect("nonempty").is_trivial() {
            let next = self.commutator_subgroup(series.last().expect("nonempty"), &g);
            series.push(next);
        }
        series
    }

    /// Length of the lower central series minus one; 0 for the trivial group.
    pub fn nilpotency_class(&self) -> u32 {
        (self.lower_central_series().len() - 1) as u32
    }

    fn log_p(&self, m: u64) -> u32 {
        log_p(self.p(), m)
    }

    /// Checks `N ⊴ H` and `H/N` abelian.
    fn check_abelian_section(&self, h: &Subgroup, n: &Subgroup) -> Result<()> {
        if !n.is_subset_of(h) {
            return Err(Error::BadSection("N is not contained in H"));
        }
        for &x in n.gens() {
            for &g in h.gens() {
                if !n.contains(self.conjugate(x, g)) {
                    return Err(Error::NotNormal);
                }
            }
        }
        for (a, &x) in h.gens().iter().enumerate() {
            for &y in &h.gens()[a + 1..] {
                if !n.contains(self.commutator(x, y)) {
                    return Err(Error::NotAbelian);
                }
            }
        }
        Ok(())
    }

    /// Least `p^k` with `x^{p^k} ∈ N`.
    fn order_mod(&self, x: Elem, n: &Subgroup) -> u64 {
        let p = self.p() as i64;
        let mut y = x;
        let mut o = 1u64;
        while !n.contains(y) {
            y = self.pow(y, p);
            o *= p as u64;
        }
        o
    }

    /// Type of the abelian section `H/N`, read off the counts
    /// `|{x ∈ H/N : x^{p^k} = 1}| = p^{Σᵢ min(lᵢ, k)}`.
    pub fn section_type(&self, h: &Subgroup, n: &Subgroup) -> Result<Partition> {
        self.check_abelian_section(h, n)?;
        let orders: Vec<u32> = h
            .elements()
            .iter()
            .map(|&x| self.log_p(self.order_mod(x, n)))
            .collect();
        let top = orders.iter().copied().max().unwrap_or(0);
        let nsize = n.order() as u64;
        // at_least[k] = number of parts with l_i >= k
        let mut at_least = vec![0u32; top as usize + 1];
        let mut prev = 0u32;
        for k in 1..=top {
            let count = orders.iter().filter(|&&o| o <= k).count() as u64 / nsize;
            let logc = self.log_p(count);
            at_least[k as usize] = logc - prev;
            prev = logc;
        }
        let rank = if top == 0 { 0 } else { at_least[1] };
        Ok((1..=rank)
            .map(|i| (1..=top).filter(|&k| at_least[k as usize] >= i).count() as u32)
            .collect())
    }

    /// Type of an abelian subgroup.
    pub fn abelian_type(&self, h: &Subgroup) -> Result<Partition> {
        let one = self.trivial_subgroup();
        self.section_type(h, &one)
    }

    /// `max_{x ∈ H} min{p^k : x^{p^k} ∈ N}` for `N ⊴ H`.
    pub fn section_exponent(&self, h: &Subgroup, n: &Subgroup) -> Result<u64> {
        if !n.is_subset_of(h) {
            return Err(Error::BadSection("N is not contained in H"));
        }
        for &x in n.gens() {
            for &g in h.gens() {
                if !n.contains(self.conjugate(x, g)) {
                    return Err(Error::NotNormal);
                }
            }
        }
        Ok(h
            .elements()
            .iter()
            .map(|&x| self.order_mod(x, n))
            .max()
            .unwrap_or(1))
    }

    /// `exp(G/N)`.
    pub fn quotient_exponent(&self, n: &Subgroup) -> Result<u64> {
        if !self.is_normal(n) {
            return Err(Error::NotNormal);
        }
        Ok(self
            .elements()
            .map(|x| self.order_mod(x, n))
            .max()
            .unwrap_or(1))
    }

    /// Frattini subgroup `Φ(H) = H' H^p`.
    pub fn frattini(&self, h: &Subgroup) -> Subgroup {
        let p = self.p() as i64;
        let mut gens = Vec::new();
        for (a, &x) in h.gens().iter().enumerate() {
            gens.push(self.pow(x, p));
            for &y in &h.gens()[a + 1..] {
                gens.push(self.commutator(x, y));
            }
        }
        gens.retain(|&x| x != Elem::IDENTITY);
        gens.sort_unstable();
        gens.dedup();
        self.normal_closure_in(&gens, h.gens())
    }

    /// `d(H)`, the minimal number of generators: `log_p |H : Φ(H)|`.
    pub fn rank(&self, h: &Subgroup) -> u32 {
        let phi = self.frattini(h);
        self.log_p((h.order() / phi.order()) as u64)
    }

    /// All subgroups of the abelian subgroup `a`: every cyclic subgroup, then
    /// joins of pairs until nothing new appears.
    pub fn subgroups_of_abelian(&self, a: &Subgroup) -> Result<Vec<Subgroup>> {
        self.abelian_type(a)?;
        let mut found: Vec<Subgroup> = Vec::new();
        let push = |s: Subgroup, found: &mut Vec<Subgroup>| {
            if !found.iter().any(|t| t.elements == s.elements) {
                found.push(s);
                true
            } else {
                false
            }
        };
        for &x in a.elements() {
            let gens: Vec<Elem> = if x == Elem::IDENTITY { vec![] } else { vec![x] };
            push(self.closure(&gens), &mut found);
        }
        let mut frontier = 0;
        while frontier < found.len() {
            let end = found.len();
            for i in frontier..end {
                for j in 0..i {
                    if found[i].is_subset_of(&found[j]) || found[j].is_subset_of(&found[i]) {
                        continue;
                    }
                    let mut gens = found[i].gens.clone();
                    gens.extend_from_slice(&found[j].gens);
                    let join = self.closure(&gens);
                    push(join, &mut found);
                }
            }
            frontier = end;
        }
        found.sort_by(|s, t| s.order().cmp(&t.order()).then(s.elements.cmp(&t.elements)));
        Ok(found)
    }
}
