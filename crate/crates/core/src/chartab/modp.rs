//! Arithmetic in the prime field `GF(ℓ)` used by the character-table engine.

use crate::pc::is_prime;

/// Largest modulus the engine accepts. Keeping `ℓ < 2^24` lets dot products
/// accumulate many unreduced terms in a `u64`.
pub const MAX_MODULUS: u64 = 1 << 24;

/// Number of products `a·b` with `a, b < ℓ` that can be summed before reducing.
pub(crate) const LAZY_TERMS: usize = 1 << 15;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Field {
    l: u64,
}

impl Field {
    pub fn new(l: u64) -> Self {
        debug_assert!(is_prime(l) && l < MAX_MODULUS);
        Field { l }
    }

    pub fn modulus(self) -> u64 {
        self.l
    }

    #[inline]
    pub fn reduce(self, a: u64) -> u64 {
        a % self.l
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.l {
            s - self.l
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.l - b
        }
    }

    #[inline]
    pub fn neg(self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.l - a
        }
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.l
    }

    pub fn pow(self, mut a: u64, mut m: u64) -> u64 {
        let mut acc = 1 % self.l;
        a %= self.l;
        while m > 0 {
            if m & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            m >>= 1;
        }
        acc
    }

    /// Inverse of a nonzero element.
    pub fn inv(self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.l));
        self.pow(a, self.l - 2)
    }

    /// `Σ a_i b_i` with delayed reduction.
    pub fn dot(self, a: &[u64], b: &[u64]) -> u64 {
        let mut total = 0u64;
        for (ca, cb) in a.chunks(LAZY_TERMS).zip(b.chunks(LAZY_TERMS)) {
            let s: u64 = ca.iter().zip(cb).map(|(&x, &y)| x * y).sum();
            total = (total + s % self.l) % self.l;
        }
        total
    }

    /// `acc += c·v` componentwise, fully reduced.
    pub fn axpy(self, acc: &mut [u64], c: u64, v: &[u64]) {
        if c == 0 {
            return;
        }
        for (a, &x) in acc.iter_mut().zip(v) {
            *a = (*a + c * x) % self.l;
        }
    }
}

/// Smallest prime `ℓ ≡ 1 (mod e)` with `ℓ > 2·sqrt(order)`.
pub fn dixon_prime(e: u64, order: u64) -> u64 {
    let e = e.max(1);
    let mut l = e + 1;
    loop {
        if l * l > 4 * order && is_prime(l) {
            return l;
        }
        l += e;
    }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Smallest generator of the multiplicative group of `GF(ℓ)`.
pub fn primitive_root(l: u64) -> u64 {
    if l == 2 {
        return 1;
    }
    let f = Field::new(l);
    let factors = prime_factors(l - 1);
    (2..l)
        .find(|&g| factors.iter().all(|&q| f.pow(g, (l - 1) / q) != 1))
        .expect("a prime field has a primitive root")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dixon_primes() {
        assert_eq!(dixon_prime(3, 27), 13);
        assert_eq!(dixon_prime(5, 125), 31);
        assert_eq!(dixon_prime(25, 625), 101);
        assert_eq!(dixon_prime(729, 729), 1459);
        assert_eq!(dixon_prime(1, 1), 3);
    }

    #[test]
    fn primitive_roots() {
        assert_eq!(primitive_root(13), 2);
        assert_eq!(primitive_root(31), 3);
        assert_eq!(primitive_root(101), 2);
        assert_eq!(primitive_root(7), 3);
        assert_eq!(primitive_root(41), 6);
    }

    #[test]
    fn field_ops() {
        let f = Field::new(13);
        assert_eq!(f.mul(f.inv(5), 5), 1);
        assert_eq!(f.sub(2, 5), 10);
        assert_eq!(f.neg(0), 0);
        assert_eq!(f.pow(2, 12), 1);
        assert_eq!(f.dot(&[1, 2, 3], &[4, 5, 6]), 32 % 13);
    }
}
