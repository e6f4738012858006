use super::modp::Field;

/// `A_k = Σ_j a_j ω^{jk}` for `a` of length `p^s`, where `ω` has order
/// `a.len()`. Decimation in time with radix `p`.
pub fn dft(field: Field, p: u64, a: &[u64], omega: u64) -> Vec<u64> {
    let n = a.len();
    if n == 1 {
        return a.to_vec();
    }
    let p = p as usize;
    debug_assert_eq!(n % p, 0);
    let m = n / p;
    let omega_p = field.pow(omega, p as u64);
    let subs: Vec<Vec<u64>> = (0..p)
        .map(|r| {
            let part: Vec<u64> = a.iter().skip(r).step_by(p).copied().collect();
            dft(field, p as u64, &part, omega_p)
        })
        .collect();
    let mut out = vec![0u64; n];
    let mut wk = 1u64;
    for (k, slot) in out.iter_mut().enumerate() {
        let mut acc = 0u64;
        let mut twiddle = 1u64;
        for sub in &subs {
            acc += field.mul(twiddle, sub[k % m]);
            twiddle = field.mul(twiddle, wk);
        }
        *slot = field.reduce(acc);
        wk = field.mul(wk, omega);
    }
    out
}
