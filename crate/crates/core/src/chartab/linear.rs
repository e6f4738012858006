//! Linear characters straight from the presentation.
//!
//! A linear character is a homomorphism `φ: G → Z/e`, read through
//! `ζ_e^φ`. On normal forms `φ(g_0^{a_0} ··· g_{n-1}^{a_{n-1}}) = Σ a_i φ(g_i)`,
//! and such an assignment is a homomorphism exactly when it respects every
//! relation: `p·φ(g_i) = φ(w_i)` and `φ(w_{j,i}) = 0`. Both only involve
//! generators after `g_i`, so the homomorphisms are enumerated by fixing
//! `φ(g_{n-1})`, then `φ(g_{n-2})`, and so on.

use crate::pc::PcPresentation;

fn weight(values: &[u64], word: &[u32], e: u64) -> u64 {
    word.iter()
        .zip(values)
        .fold(0, |acc, (&a, &v)| (acc + a as u64 * v) % e)
}

/// Every homomorphism `G → Z/e` as the vector `(φ(g_0), …, φ(g_{n-1}))`.
/// `e` must be a multiple of `exp(G/G')`.
pub fn homomorphisms(pres: &PcPresentation, e: u64) -> Vec<Vec<u64>> {
    let n = pres.generator_count();
    let p = pres.p() as u64;
    let mut out = Vec::new();
    let mut values = vec![0u64; n];
    extend(pres, e, p, n, &mut values, &mut out);
    out
}

fn extend(pres: &PcPresentation, e: u64, p: u64, i: usize, values: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
    // Generators i.. are assigned; the commutators [g_j, g_i'] with i' = i are
    // now fully determined.
    if i < values.len() {
        for j in i + 1..values.len() {
            if let Some(w) = pres.commutator(j, i) {
                if weight(values, w, e) != 0 {
                    return;
                }
            }
        }
    }
    if i == 0 {
        out.push(values.clone());
        return;
    }
    let g = i - 1;
    let target = weight(values, pres.power(g), e);
    if e == 1 {
        values[g] = 0;
        extend(pres, e, p, g, values, out);
        return;
    }
    // p·x ≡ target (mod e) needs p | target; then x = target/p + t·e/p.
    if !target.is_multiple_of(p) {
        return;
    }
    for t in 0..p {
        values[g] = (target / p + t * (e / p)) % e;
        extend(pres, e, p, g, values, out);
    }
    values[g] = 0;
}
