//! Elementary number theory over `u64`: factorization, multiplicative
//! orders for symbolic prime powers, p-adic valuations, and the two order
//! criteria used by the classifier (the starred prime set and the
//! equally-spaced order condition).
//!
//! A ground field `q = p^e` is kept symbolic as a [`FieldDesc`]; powers of
//! `q` are only ever computed modulo some `u64` modulus, so `q` itself may
//! exceed the machine word without overflow.

use crate::error::{Error, Result};
use std::sync::OnceLock;

/// A prime power `q = p^e`, kept symbolic (never materialized unless it
/// fits in a `u64`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldDesc {
    pub p: u64,
    pub e: u64,
}

impl FieldDesc {
    /// Validates `p` prime and `e >= 1`.
    pub fn new(p: u64, e: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        if e == 0 {
            return Err(Error::InvalidInput("field exponent e must be >= 1".into()));
        }
        Ok(FieldDesc { p, e })
    }

    /// `p^e` if it fits in a `u64`, else `None`.
    pub fn value(&self) -> Option<u64> {
        checked_pow(self.p, self.e)
    }

    /// `q mod m` for `m >= 1`.
    pub fn residue(&self, m: u64) -> u64 {
        pow_mod(self.p % m.max(1), self.e, m)
    }

    /// `(q - 1) mod m` for `m >= 1`.
    pub fn qm1_residue(&self, m: u64) -> u64 {
        let r = self.residue(m);
        (r + m - 1) % m
    }

    /// `gcd(x, q - 1)` without materializing `q`.
    pub fn gcd_with_qm1(&self, x: u64) -> u64 {
        if x == 0 {
            // gcd(0, q-1) is q-1 which may not fit; callers never need it.
            panic!("gcd_with_qm1 requires x >= 1");
        }
        gcd(x, self.qm1_residue(x))
    }

    /// Does `d` divide `q - 1`?
    pub fn divides_qm1(&self, d: u64) -> bool {
        d >= 1 && self.qm1_residue(d) == 0
    }

    /// `q^j mod m`.
    pub fn pow_residue(&self, j: u64, m: u64) -> u64 {
        pow_mod(self.residue(m), j, m)
    }

    /// `p^(e*j)` if it fits in a `u64` (i.e. `q^j` materialized).
    pub fn pow_value(&self, j: u64) -> Option<u64> {
        let exp = self.e.checked_mul(j)?;
        checked_pow(self.p, exp)
    }
}

impl std::fmt::Display for FieldDesc {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.e == 1 {
            write!(f, "F_{}", self.p)
        } else {
            write!(f, "F_{}^{}", self.p, self.e)
        }
    }
}

/// `p^k` with overflow check.
pub fn checked_pow(p: u64, k: u64) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..k {
        acc = acc.checked_mul(p)?;
    }
    Some(acc)
}

pub fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// `(a * b) mod m` free of overflow.
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// `(a^k) mod m` (with `m >= 1`; `0^0 = 1`).
pub fn pow_mod(a: u64, k: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut base = a % m;
    let mut exp = k;
    let mut acc: u64 = 1;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

const SIEVE_LIMIT: usize = 1 << 16;

/// Primes below 2^16, computed once.
pub fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut composite = vec![false; SIEVE_LIMIT];
        let mut primes = Vec::with_capacity(6542);
        for i in 2..SIEVE_LIMIT {
            if !composite[i] {
                primes.push(i as u32);
                let mut j = i * i;
                while j < SIEVE_LIMIT {
                    composite[j] = true;
                    j += i;
                }
            }
        }
        primes
    })
}

/// Deterministic Miller–Rabin over the full `u64` range.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let d = (n - 1) >> (n - 1).trailing_zeros();
    let s = (n - 1).trailing_zeros();
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A factored positive integer; `factors` is sorted by prime and the
/// product of `r^a` over all entries equals `value`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub value: u64,
    pub factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(r, _)| r)
    }

    /// All divisors of `value`, sorted ascending.
    pub fn divisors(&self) -> Vec<u64> {
        let mut out = vec![1u64];
        for &(r, a) in &self.factors {
            let len = out.len();
            let mut pw = 1u64;
            for _ in 0..a {
                pw *= r;
                for i in 0..len {
                    out.push(out[i] * pw);
                }
            }
        }
        out.sort_unstable();
        out
    }
}

/// Pollard's rho (Brent variant) for a composite `n` with no factor below
/// the sieve limit. Deterministic: the constants are varied in a fixed
/// sequence until a split is found.
fn rho_split(n: u64) -> u64 {
    debug_assert!(n > 1 && !is_prime(n) && n % 2 == 1);
    for c in 1u64.. {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        let mut saved = 0u64;
        let mut count = 0u64;
        while d == 1 {
            x = f(x);
            y = f(f(y));
            // Batch gcds: accumulate |x - y| products 64 at a time.
            saved = mul_mod(saved.max(1), x.abs_diff(y).max(1), n);
            count += 1;
            if count % 64 == 0 {
                d = gcd(saved, n);
                saved = 0;
            }
            if x == y {
                break;
            }
        }
        if d == 1 && x == y {
            continue; // cycle collapsed; retry with the next constant
        }
        if d == 1 {
            d = gcd(saved.max(1), n);
        }
        if d > 1 && d < n {
            return d;
        }
    }
    unreachable!()
}

fn factor_into(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = rho_split(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

/// Factors `n >= 1` by trial division over the small-prime sieve followed
/// by Miller–Rabin plus Pollard rho for any remaining cofactor.
pub fn factor(n: u64) -> Factorization {
    assert!(n >= 1, "factor requires n >= 1");
    let mut rest = n;
    let mut primes: Vec<u64> = Vec::new();
    for &p in small_primes() {
        let p = p as u64;
        if p * p > rest {
            break;
        }
        while rest % p == 0 {
            primes.push(p);
            rest /= p;
        }
    }
    if rest > 1 {
        // No factor below 2^16 remains; rest is prime if below 2^32.
        if rest < (1u64 << 32) || is_prime(rest) {
            primes.push(rest);
        } else {
            factor_into(rest, &mut primes);
        }
    }
    primes.sort_unstable();
    let mut factors: Vec<(u64, u32)> = Vec::new();
    for r in primes {
        match factors.last_mut() {
            Some((q, a)) if *q == r => *a += 1,
            _ => factors.push((r, 1)),
        }
    }
    Factorization { value: n, factors }
}

/// Sorted divisors of `n`.
pub fn divisors(n: u64) -> Vec<u64> {
    factor(n).divisors()
}

/// The exponent of the prime `r` in `n >= 1`.
pub fn nu(r: u64, n: u64) -> u32 {
    assert!(r >= 2 && n >= 1);
    let mut v = 0;
    let mut n = n;
    while n % r == 0 {
        v += 1;
        n /= r;
    }
    v
}

/// Carmichael function: the exponent of the unit group mod `n`.
fn carmichael(n: u64) -> u64 {
    let mut lam = 1u64;
    for &(r, a) in &factor(n).factors {
        let part = if r == 2 {
            match a {
                1 => 1,
                2 => 2,
                _ => 1u64 << (a - 2),
            }
        } else {
            checked_pow(r, (a - 1) as u64).unwrap() * (r - 1)
        };
        lam = lcm(lam, part);
    }
    lam
}

/// Multiplicative order of `x` mod `n`, for `gcd(x, n) = 1`, computed by
/// exponent descent from the Carmichael bound.
fn ord_mod(x: u64, n: u64) -> u64 {
    debug_assert!(gcd(x % n, n) == 1 || n == 1);
    if n == 1 {
        return 1;
    }
    let lam = carmichael(n);
    debug_assert_eq!(pow_mod(x, lam, n), 1);
    let mut t = lam;
    for r in factor(lam).primes() {
        while t % r == 0 && pow_mod(x, t / r, n) == 1 {
            t /= r;
        }
    }
    t
}

/// Multiplicative order of `q = p^e` modulo `n`.
///
/// Errors with [`Error::NotCoprime`] when `p` divides `n`.
pub fn mult_ord(n: u64, q: FieldDesc) -> Result<u64> {
    if n == 0 {
        return Err(Error::InvalidInput("mult_ord requires n >= 1".into()));
    }
    if n == 1 {
        return Ok(1);
    }
    if gcd(n, q.p) != 1 {
        return Err(Error::NotCoprime { n, p: q.p });
    }
    let d = ord_mod(q.p % n, n);
    Ok(d / gcd(d, q.e))
}

/// Which lifting-the-exponent relation to verify.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LteMode {
    /// Exponent coprime to `r`: the valuation must stay at `f`.
    CoprimeExp(u64),
    /// Exponent equal to `r`: the valuation rises to `f + 1`, except that
    /// `(r, f) = (2, 1)` only guarantees `>= f + 2`.
    PowerR,
}

/// Outcome of [`lte_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LteReport {
    pub r: u64,
    pub base: u64,
    /// `f = nu_r(base - 1)`.
    pub f: u32,
    pub mode: LteMode,
    /// The computed valuation `nu_r(base^exp - 1)`.
    pub value: u32,
    /// Whether the claimed relation holds for this instance.
    pub holds: bool,
}

/// `nu_r(base^exp - 1)` computed by climbing prime-power moduli, so the
/// power itself is never materialized.
pub fn valuation_of_power_minus_one(base: u64, exp: u64, r: u64) -> u32 {
    debug_assert!(r >= 2);
    let mut v = 0u32;
    let mut m = 1u64;
    loop {
        m = match m.checked_mul(r) {
            Some(next) if next <= 1 << 62 => next,
            _ => return v, // modulus exhausted; unreachable for sane inputs
        };
        if pow_mod(base % m, exp, m) == 1 {
            v += 1;
        } else {
            return v;
        }
    }
}

/// Verifies the lifting-the-exponent relation for `nu_r(base^e - 1)` given
/// `f = nu_r(base - 1) >= 1` (and `r` odd or `f >= 1` as appropriate).
pub fn lte_check(r: u64, base: u64, mode: LteMode) -> Result<LteReport> {
    if !is_prime(r) {
        return Err(Error::InvalidInput(format!("{r} is not prime")));
    }
    if base < 2 {
        return Err(Error::InvalidInput("base must be >= 2".into()));
    }
    let f = nu(r, base - 1);
    if f == 0 {
        return Err(Error::InvalidInput(format!(
            "base {base} is not congruent to 1 mod {r}"
        )));
    }
    let (value, holds) = match mode {
        LteMode::CoprimeExp(e) => {
            if e == 0 || e % r == 0 {
                return Err(Error::InvalidInput(format!(
                    "exponent {e} must be positive and coprime to {r}"
                )));
            }
            let v = valuation_of_power_minus_one(base, e, r);
            (v, v == f)
        }
        LteMode::PowerR => {
            let v = valuation_of_power_minus_one(base, r, r);
            let holds = if r == 2 && f == 1 { v >= f + 2 } else { v == f + 1 };
            (v, holds)
        }
    };
    Ok(LteReport { r, base, f, mode, value, holds })
}

/// The starred prime set of `nprime` with respect to `q`: primes `r`
/// dividing `nprime` whose exponent in `nprime` already equals their
/// exponent in `q^m' - 1`, where `m' = ord_{nprime}(q)`. These are exactly
/// the primes whose powers can be absorbed into the length while the order
/// grows proportionally.
pub fn star_prime_set(nprime: u64, q: FieldDesc) -> Result<Vec<u64>> {
    let mprime = mult_ord(nprime, q)?;
    let mut out = Vec::new();
    for &(r, a) in &factor(nprime).factors {
        let m = checked_pow(r, (a + 1) as u64)
            .ok_or_else(|| Error::InvalidInput("prime power overflow".into()))?;
        // nprime divides q^m' - 1, so the valuation is >= a automatically;
        // it equals a exactly when q^m' != 1 mod r^(a+1).
        let y = pow_mod(q.residue(m), mprime, m);
        debug_assert_eq!(y % checked_pow(r, a as u64).unwrap(), 1 % checked_pow(r, a as u64).unwrap());
        if y != 1 {
            out.push(r);
        }
    }
    Ok(out)
}

/// Does `ord_n(q) = k * ord_{n'}(q)` hold for `n = k * n'`?
///
/// Decided by direct order computation, with the starred-prime-set
/// criterion cross-checked in debug builds: the condition holds iff every
/// prime of `k` is starred for `n'`, and additionally `nu_2(k) <= 1`
/// whenever 2 is starred and `n' = 2 mod 4`.
pub fn equally_spaced_ok(n: u64, nprime: u64, q: FieldDesc) -> Result<bool> {
    if nprime == 0 || n % nprime != 0 {
        return Err(Error::InvalidInput(format!(
            "nprime = {nprime} must divide n = {n}"
        )));
    }
    let k = n / nprime;
    let direct = {
        let m = mult_ord(n, q)?;
        let mprime = mult_ord(nprime, q)?;
        (m as u128) == (k as u128) * (mprime as u128)
    };
    #[cfg(debug_assertions)]
    {
        let starred = star_prime_set(nprime, q)?;
        let mut criterion = factor(k).primes().all(|r| starred.contains(&r));
        if criterion && starred.contains(&2) && nprime % 4 == 2 && nu(2, k) > 1 {
            criterion = false;
        }
        debug_assert_eq!(
            direct, criterion,
            "order criterion mismatch for n={n}, nprime={nprime}, q={q}"
        );
    }
    Ok(direct)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_ord(x: u64, n: u64) -> u64 {
        let mut acc = x % n;
        let mut k = 1;
        while acc != 1 {
            acc = mul_mod(acc, x, n);
            k += 1;
            assert!(k <= n, "order exceeded modulus");
        }
        k
    }

    fn naive_factor(mut n: u64) -> Vec<(u64, u32)> {
        let mut out: Vec<(u64, u32)> = Vec::new();
        let mut d = 2;
        while d * d <= n {
            let mut a = 0;
            while n % d == 0 {
                n /= d;
                a += 1;
            }
            if a > 0 {
                out.push((d, a));
            }
            d += 1;
        }
        if n > 1 {
            out.push((n, 1));
        }
        out
    }

    #[test]
    fn factor_matches_trial_division() {
        for n in 1..=3000u64 {
            assert_eq!(factor(n).factors, naive_factor(n), "n = {n}");
        }
    }

    #[test]
    fn factor_large_inputs() {
        // A Mersenne prime: must come back intact.
        let m61 = (1u64 << 61) - 1;
        assert_eq!(factor(m61).factors, vec![(m61, 1)]);
        // A product of four medium primes.
        assert_eq!(
            factor(600851475143).factors,
            vec![(71, 1), (839, 1), (1471, 1), (6857, 1)]
        );
        // A square of a prime above the sieve bound.
        let p = 2147483647u64; // 2^31 - 1
        assert_eq!(factor(p * p).factors, vec![(p, 2)]);
    }

    #[test]
    fn divisors_sorted_and_complete() {
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(64), vec![1, 2, 4, 8, 16, 32, 64]);
        let d = divisors(720);
        assert_eq!(d.len(), 30);
        assert!(d.windows(2).all(|w| w[0] < w[1]));
        assert!(d.iter().all(|x| 720 % x == 0));
    }

    #[test]
    fn primality_spot_checks() {
        assert!(is_prime(2) && is_prime(3) && is_prime(65537));
        assert!(is_prime((1u64 << 61) - 1));
        assert!(!is_prime(1) && !is_prime(0) && !is_prime(561) && !is_prime(65535));
        let below_100: Vec<u64> = (0..100).filter(|&n| is_prime(n)).collect();
        assert_eq!(below_100.len(), 25);
    }

    #[test]
    fn field_desc_validation() {
        assert!(FieldDesc::new(4, 1).is_err());
        assert!(FieldDesc::new(2, 0).is_err());
        let q = FieldDesc::new(3, 2).unwrap();
        assert_eq!(q.value(), Some(9));
        assert_eq!(q.residue(7), 2);
        assert_eq!(q.qm1_residue(7), 1);
        assert!(q.divides_qm1(8));
        assert!(!q.divides_qm1(16));
        // A field too large to materialize still reduces correctly.
        let big = FieldDesc::new(2, 101).unwrap();
        assert_eq!(big.value(), None);
        assert_eq!(big.residue(1000), pow_mod(2, 101, 1000));
    }

    #[test]
    fn mult_ord_pinned_values() {
        let q31 = FieldDesc::new(3, 1).unwrap();
        let q21 = FieldDesc::new(2, 1).unwrap();
        let q32 = FieldDesc::new(3, 2).unwrap();
        assert_eq!(mult_ord(11, q31).unwrap(), 5);
        assert_eq!(mult_ord(23, q21).unwrap(), 11);
        assert_eq!(mult_ord(16, q32).unwrap(), 2);
        assert_eq!(mult_ord(1, q21).unwrap(), 1);
        assert_eq!(
            mult_ord(6, q21),
            Err(Error::NotCoprime { n: 6, p: 2 })
        );
    }

    #[test]
    fn mult_ord_matches_naive_scan() {
        let qs = [
            FieldDesc::new(2, 1).unwrap(),
            FieldDesc::new(2, 2).unwrap(),
            FieldDesc::new(3, 1).unwrap(),
            FieldDesc::new(3, 2).unwrap(),
            FieldDesc::new(5, 1).unwrap(),
            FieldDesc::new(7, 1).unwrap(),
        ];
        for q in qs {
            let qv = q.value().unwrap();
            for n in 2..2000u64 {
                if gcd(n, q.p) != 1 {
                    continue;
                }
                assert_eq!(
                    mult_ord(n, q).unwrap(),
                    naive_ord(qv % n, n),
                    "n = {n}, q = {q}"
                );
            }
        }
    }

    #[test]
    fn valuations() {
        assert_eq!(nu(2, 48), 4);
        assert_eq!(nu(3, 48), 1);
        assert_eq!(nu(5, 48), 0);
        assert_eq!(nu(7, 1), 0);
        assert_eq!(nu(2, 1 << 62), 62);
    }

    #[test]
    fn carmichael_spot_checks() {
        for (n, lam) in [(1u64, 1u64), (2, 1), (4, 2), (8, 2), (16, 4), (15, 4), (35, 12), (561, 80)] {
            assert_eq!(carmichael(n), lam, "n = {n}");
        }
    }

    #[test]
    fn lte_pinned_example() {
        // 3^2 - 1 = 8: valuation 3 >= f + 2 for the exceptional (r, f) = (2, 1).
        let rep = lte_check(2, 3, LteMode::PowerR).unwrap();
        assert_eq!(rep.f, 1);
        assert_eq!(rep.value, 3);
        assert!(rep.holds);
    }

    #[test]
    fn lte_small_sweep() {
        for r in [2u64, 3, 5, 7, 11, 13] {
            for base in 2..300u64 {
                if (base - 1) % r != 0 {
                    continue;
                }
                for e in 1..12u64 {
                    if e % r == 0 {
                        continue;
                    }
                    let rep = lte_check(r, base, LteMode::CoprimeExp(e)).unwrap();
                    assert!(rep.holds, "r={r} base={base} e={e}: got {}", rep.value);
                }
                let rep = lte_check(r, base, LteMode::PowerR).unwrap();
                assert!(rep.holds, "r={r} base={base} e=r: got {}", rep.value);
            }
        }
    }

    #[test]
    fn valuation_of_power_agrees_with_direct() {
        for base in 2..60u64 {
            for exp in 1..6u64 {
                let pow = base.pow(exp as u32) - 1;
                for r in [2u64, 3, 5, 7] {
                    assert_eq!(
                        valuation_of_power_minus_one(base, exp, r),
                        nu(r, pow),
                        "base={base} exp={exp} r={r}"
                    );
                }
            }
        }
    }

    #[test]
    fn star_prime_set_pinned() {
        let q32 = FieldDesc::new(3, 2).unwrap();
        let q22 = FieldDesc::new(2, 2).unwrap();
        assert_eq!(star_prime_set(8, q32).unwrap(), vec![2]);
        assert_eq!(star_prime_set(3, q22).unwrap(), vec![3]);
        // 20 = 2^2 * 5 over F_3: ord_20(3) = 4, 3^4 - 1 = 80 = 2^4 * 5;
        // the 2-part of 20 is strictly smaller, the 5-part matches.
        let q31 = FieldDesc::new(3, 1).unwrap();
        assert_eq!(star_prime_set(20, q31).unwrap(), vec![5]);
    }

    #[test]
    fn equally_spaced_pinned() {
        let q32 = FieldDesc::new(3, 2).unwrap();
        let q22 = FieldDesc::new(2, 2).unwrap();
        let q31 = FieldDesc::new(3, 1).unwrap();
        assert!(equally_spaced_ok(16, 8, q32).unwrap());
        assert!(equally_spaced_ok(9, 3, q22).unwrap());
        assert!(!equally_spaced_ok(8, 4, q31).unwrap());
        // 25 = 5 * 5 over F_2: ord_25(2) = 20 = 5 * ord_5(2).
        let q21 = FieldDesc::new(2, 1).unwrap();
        assert!(equally_spaced_ok(25, 5, q21).unwrap());
        assert!(equally_spaced_ok(9, 3, q21).unwrap());
        assert!(!equally_spaced_ok(21, 7, q21).unwrap());
        assert!(equally_spaced_ok(15, 15, q21).unwrap()); // k = 1 trivially
    }

    /// The debug assertion inside `equally_spaced_ok` cross-checks the
    /// starred-prime criterion against the direct order computation on
    /// every call; this sweep exercises it broadly.
    #[test]
    fn equally_spaced_criterion_sweep() {
        for q in [
            FieldDesc::new(2, 1).unwrap(),
            FieldDesc::new(3, 1).unwrap(),
            FieldDesc::new(2, 2).unwrap(),
            FieldDesc::new(5, 1).unwrap(),
        ] {
            for n in 2..800u64 {
                if gcd(n, q.p) != 1 {
                    continue;
                }
                for d in divisors(n) {
                    equally_spaced_ok(n, d, q).unwrap();
                }
            }
        }
    }
}
