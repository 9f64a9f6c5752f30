//! Explicit finite fields `F_{p^k}` backed by discrete-log tables.
//!
//! Elements are dense codes `0..size`: the base-`p` digits of a code are
//! the coefficients of the residue polynomial, constant term least
//! significant. Code order therefore ranks elements with the constants
//! first, and every canonical choice below ("least element such that ...")
//! refers to this rank. Two fields built for the same `(p, k)` are
//! identical — the modulus is the first irreducible in rank order and the
//! generator is the least-ranked primitive element — so element codes are
//! stable across runs and across processes.

use crate::error::{Error, Result};
use crate::numtheory::{checked_pow, factor, gcd, mul_mod, pow_mod};
use dashmap::DashMap;
use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

pub mod poly;
pub use poly::Poly;

// ---------------------------------------------------------------------------
// Bootstrap arithmetic: polynomials over F_p as raw coefficient vectors
// (low-to-high, entries < p, no trailing zeros). Used only to find the
// modulus and to build the log tables; everything after that goes through
// the tables.

type RawPoly = Vec<u64>;

fn rp_trim(v: &mut RawPoly) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn rp_mul(a: &[u64], b: &[u64], p: u64) -> RawPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + ai * bj) % p;
        }
    }
    rp_trim(&mut out);
    out
}

/// Remainder of `a` by the monic polynomial `m`.
fn rp_rem(a: &[u64], m: &[u64], p: u64) -> RawPoly {
    debug_assert_eq!(*m.last().unwrap(), 1);
    let mut r: RawPoly = a.to_vec();
    rp_trim(&mut r);
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (j, &mj) in m.iter().enumerate() {
                r[shift + j] = (r[shift + j] + lead * (p - mj % p)) % p;
            }
        }
        r.pop();
        rp_trim(&mut r);
    }
    r
}

fn rp_gcd(a: &[u64], b: &[u64], p: u64) -> RawPoly {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    rp_trim(&mut a);
    rp_trim(&mut b);
    while !b.is_empty() {
        let lead = *b.last().unwrap();
        if lead != 1 {
            let inv = pow_mod(lead, p - 2, p);
            for c in &mut b {
                *c = *c * inv % p;
            }
        }
        let r = rp_rem(&a, &b, p);
        a = std::mem::replace(&mut b, r);
    }
    a
}

fn rp_powmod(base: &[u64], e: u64, m: &[u64], p: u64) -> RawPoly {
    let mut acc: RawPoly = vec![1];
    let mut b = rp_rem(base, m, p);
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = rp_rem(&rp_mul(&acc, &b, p), m, p);
        }
        b = rp_rem(&rp_mul(&b, &b, p), m, p);
        e >>= 1;
    }
    acc
}

/// Rabin's irreducibility test for a monic `f` over F_p.
fn rp_is_irreducible(f: &[u64], p: u64) -> bool {
    let k = f.len() - 1;
    debug_assert!(k >= 1 && *f.last().unwrap() == 1);
    if k == 1 {
        return true;
    }
    let x: RawPoly = vec![0, 1];
    // frob[i] = x^(p^i) mod f
    let mut frob: Vec<RawPoly> = vec![rp_rem(&x, f, p)];
    for i in 0..k {
        let next = rp_powmod(&frob[i], p, f, p);
        frob.push(next);
    }
    if frob[k] != rp_rem(&x, f, p) {
        return false;
    }
    for r in factor(k as u64).primes() {
        let mut diff = frob[k / r as usize].clone();
        if diff.len() < 2 {
            diff.resize(2, 0);
        }
        diff[1] = (diff[1] + p - 1) % p;
        rp_trim(&mut diff);
        if rp_gcd(f, &diff, p).len() != 1 {
            return false;
        }
    }
    true
}

/// The canonical modulus: the first monic irreducible of degree `k` over
/// F_p when the lower coefficients are enumerated as ascending packed
/// codes (constant term least significant, zero constant term skipped).
fn find_modulus(p: u64, k: u64) -> RawPoly {
    if k == 1 {
        return vec![1, 1]; // x + 1
    }
    let span = checked_pow(p, k).expect("caller bounded the size");
    for v in 1..span {
        if v % p == 0 {
            continue;
        }
        let mut f: RawPoly = Vec::with_capacity(k as usize + 1);
        let mut t = v;
        for _ in 0..k {
            f.push(t % p);
            t /= p;
        }
        f.push(1);
        if rp_is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("an irreducible polynomial of degree {k} over F_{p} exists")
}

/// Table-free product of two element codes; used to bootstrap the tables
/// and kept available for cross-checks in tests.
pub(crate) fn mul_no_table(p: u64, modulus: &[u64], modmask: u64, a: u64, b: u64) -> u64 {
    let k = modulus.len() - 1;
    if p == 2 {
        let mut prod: u64 = 0;
        for i in 0..k {
            if (a >> i) & 1 == 1 {
                prod ^= b << i;
            }
        }
        for bit in (k..2 * k).rev() {
            if (prod >> bit) & 1 == 1 {
                prod ^= modmask << (bit - k);
            }
        }
        return prod;
    }
    let mut da = vec![0u64; k];
    let mut db = vec![0u64; k];
    let (mut ta, mut tb) = (a, b);
    for i in 0..k {
        da[i] = ta % p;
        db[i] = tb % p;
        ta /= p;
        tb /= p;
    }
    let mut conv = vec![0u64; 2 * k - 1];
    for (i, &ai) in da.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in db.iter().enumerate() {
            conv[i + j] = (conv[i + j] + ai * bj) % p;
        }
    }
    for i in (k..conv.len()).rev() {
        let c = conv[i];
        if c != 0 {
            conv[i] = 0;
            for (j, &mj) in modulus[..k].iter().enumerate() {
                conv[i - k + j] = (conv[i - k + j] + c * (p - mj)) % p;
            }
        }
    }
    let mut code = 0u64;
    for &d in conv[..k].iter().rev() {
        code = code * p + d;
    }
    code
}

// ---------------------------------------------------------------------------

/// Largest field that gets log/exp tables; beyond this (up to the caller's
/// size budget) arithmetic falls back to direct polynomial operations.
pub const TABLE_LIMIT: u64 = 1 << 20;

struct Tables {
    log: Vec<u32>,
    exp: Vec<u64>,
}

/// A concrete `F_{p^k}`; multiplication is O(1) via log/exp tables when
/// the field is small enough, polynomial arithmetic otherwise.
pub struct ExtField {
    pub p: u64,
    pub k: u64,
    pub size: u64,
    /// Monic irreducible over F_p, coefficients low-to-high, length k+1.
    pub modulus: Vec<u64>,
    /// The modulus packed as a bitmask when p = 2 (reduction fast path).
    modmask: u64,
    /// Least-ranked primitive element.
    pub generator: u64,
    tables: Option<Tables>,
}

impl std::fmt::Debug for ExtField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ExtField({self})")
    }
}

impl std::fmt::Display for ExtField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let csv: Vec<String> = self.modulus.iter().map(|c| c.to_string()).collect();
        write!(f, "{}^{}:{}", self.p, self.k, csv.join(","))
    }
}

pub(crate) fn build_field(p: u64, k: u64, with_tables: bool) -> ExtField {
    let size = checked_pow(p, k).expect("size bounded by budget");
    let modulus = find_modulus(p, k);
    let modmask = if p == 2 {
        modulus
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &c)| acc | (c << i))
    } else {
        0
    };
    let mul1 = |a: u64, b: u64| mul_no_table(p, &modulus, modmask, a, b);
    let pow1 = |a: u64, mut e: u64| {
        let mut base = a;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul1(acc, base);
            }
            base = mul1(base, base);
            e >>= 1;
        }
        acc
    };
    let fac = factor(size - 1);
    let mut generator = 1;
    'scan: for cand in 1..size {
        for r in fac.primes() {
            if pow1(cand, (size - 1) / r) == 1 {
                continue 'scan;
            }
        }
        generator = cand;
        break;
    }
    let tables = with_tables.then(|| {
        let mut log = vec![0u32; size as usize];
        let mut exp = vec![0u64; 2 * (size - 1) as usize];
        let mut cur = 1u64;
        for j in 0..size - 1 {
            exp[j as usize] = cur;
            log[cur as usize] = j as u32;
            cur = mul1(cur, generator);
        }
        debug_assert_eq!(cur, 1, "generator cycle must close");
        for j in 0..size - 1 {
            exp[(size - 1 + j) as usize] = exp[j as usize];
        }
        Tables { log, exp }
    });
    ExtField { p, k, size, modulus, modmask, generator, tables }
}

/// Fetches (building and caching on first use) the canonical `F_{p^k}`.
///
/// `max_size` bounds the field size; exceeding it is `Infeasible`, checked
/// before the cache so a tight budget behaves identically whether or not
/// the field happens to be cached already. Fields of size at most
/// [`TABLE_LIMIT`] get log tables; larger ones fall back to polynomial
/// arithmetic.
pub fn field(p: u64, k: u64, max_size: u64) -> Result<Arc<ExtField>> {
    if k == 0 {
        return Err(Error::InvalidInput("extension degree must be >= 1".into()));
    }
    if !crate::numtheory::is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    let size = checked_pow(p, k)
        .filter(|&s| s <= max_size && s <= 1 << 32)
        .ok_or_else(|| {
            Error::Infeasible(format!("field {p}^{k} exceeds size budget {max_size}"))
        })?;
    static CACHE: OnceLock<DashMap<(u64, u64), Arc<ExtField>>> = OnceLock::new();
    let cache = CACHE.get_or_init(DashMap::new);
    if let Some(f) = cache.get(&(p, k)) {
        return Ok(f.clone());
    }
    let built = Arc::new(build_field(p, k, size <= TABLE_LIMIT));
    let entry = cache.entry((p, k)).or_insert(built);
    Ok(entry.clone())
}

impl ExtField {
    pub fn add(&self, a: u64, b: u64) -> u64 {
        if self.p == 2 {
            return a ^ b;
        }
        let p = self.p;
        let (mut a, mut b) = (a, b);
        let mut out = 0u64;
        let mut place = 1u64;
        while a > 0 || b > 0 {
            out += (a % p + b % p) % p * place;
            place *= p;
            a /= p;
            b /= p;
        }
        out
    }

    pub fn neg(&self, a: u64) -> u64 {
        if self.p == 2 {
            return a;
        }
        let p = self.p;
        let mut a = a;
        let mut out = 0u64;
        let mut place = 1u64;
        while a > 0 {
            out += (p - a % p) % p * place;
            place *= p;
            a /= p;
        }
        out
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        match &self.tables {
            Some(t) => t.exp[(t.log[a as usize] + t.log[b as usize]) as usize],
            None => mul_no_table(self.p, &self.modulus, self.modmask, a, b),
        }
    }

    pub fn inv(&self, a: u64) -> u64 {
        assert!(a != 0, "inverse of zero");
        match &self.tables {
            Some(t) => t.exp[(self.size - 1 - t.log[a as usize] as u64) as usize],
            None => self.pow(a, self.size - 2),
        }
    }

    pub fn div(&self, a: u64, b: u64) -> u64 {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: u64, t: u64) -> u64 {
        if a == 0 {
            return if t == 0 { 1 } else { 0 };
        }
        let ord = self.size - 1;
        match &self.tables {
            Some(tab) => {
                let e = mul_mod(tab.log[a as usize] as u64, t % ord, ord);
                tab.exp[e as usize]
            }
            None => {
                let mut base = a;
                let mut e = t % ord;
                let mut acc = 1u64;
                while e > 0 {
                    if e & 1 == 1 {
                        acc = self.mul(acc, base);
                    }
                    base = self.mul(base, base);
                    e >>= 1;
                }
                acc
            }
        }
    }

    /// Discrete log with respect to the canonical generator (`a != 0`;
    /// only available on table-backed fields).
    pub fn log_of(&self, a: u64) -> u64 {
        assert!(a != 0, "log of zero");
        let t = self.tables.as_ref().expect("discrete logs require log tables");
        t.log[a as usize] as u64
    }

    /// Multiplicative order of `a != 0`.
    pub fn elem_order(&self, a: u64) -> u64 {
        assert!(a != 0, "order of zero");
        let ord = self.size - 1;
        match &self.tables {
            Some(t) => ord / gcd(ord, t.log[a as usize] as u64),
            None => {
                let mut t = ord;
                for r in factor(ord).primes() {
                    while t % r == 0 && self.pow(a, t / r) == 1 {
                        t /= r;
                    }
                }
                t
            }
        }
    }

    /// The canonical primitive `n`-th root of unity `g^((size-1)/n)`.
    pub fn element_of_order(&self, n: u64) -> Result<u64> {
        if n == 0 || (self.size - 1) % n != 0 {
            return Err(Error::InvalidInput(format!(
                "no element of order {n} in a group of order {}",
                self.size - 1
            )));
        }
        Ok(self.pow(self.generator, (self.size - 1) / n))
    }

    /// The subgroup `U` of order `n`, listed as the consecutive powers
    /// `[1, xi, xi^2, ..., xi^(n-1)]` of the canonical generator of `U`.
    pub fn subgroup_u(&self, n: u64) -> Result<Vec<u64>> {
        let xi = self.element_of_order(n)?;
        let mut out = Vec::with_capacity(n as usize);
        let mut cur = 1u64;
        for _ in 0..n {
            out.push(cur);
            cur = self.mul(cur, xi);
        }
        debug_assert_eq!(cur, 1);
        Ok(out)
    }

    pub fn frob(&self, a: u64) -> u64 {
        self.pow(a, self.p)
    }

    /// Trace down to the subfield of degree `d | k` (the value is an
    /// element of this field lying in that subfield).
    pub fn rel_trace(&self, a: u64, d: u64) -> u64 {
        debug_assert!(d >= 1 && self.k % d == 0);
        let step = checked_pow(self.p, d).unwrap();
        let mut acc = a;
        let mut t = a;
        for _ in 1..self.k / d {
            t = self.pow(t, step);
            acc = self.add(acc, t);
        }
        acc
    }

    /// Is the given set of distinct elements exactly a subfield? True iff
    /// its size is `p^d` for some `d | k` and every member is fixed by the
    /// `d`-fold Frobenius (the fixed set of x -> x^(p^d) has exactly `p^d`
    /// elements, so cardinality plus fixedness pins the set down).
    pub fn is_subfield_set(&self, elems: &[u64]) -> bool {
        let mut d = 0u64;
        let mut sz = 1u64;
        while sz < elems.len() as u64 {
            sz *= self.p;
            d += 1;
        }
        if sz != elems.len() as u64 || d == 0 || self.k % d != 0 {
            return false;
        }
        let step = checked_pow(self.p, d).unwrap();
        elems.iter().all(|&x| self.pow(x, step) == x)
    }
}

// ---------------------------------------------------------------------------

/// The canonical copy of `F_{p^d}` inside a larger field, with maps in
/// both directions. The image of the subfield generator-of-presentation
/// is the least-ranked root of the subfield's modulus, so the embedding
/// is as canonical as the fields themselves.
pub struct SubfieldEmbedding {
    pub sub: Arc<ExtField>,
    pub big: Arc<ExtField>,
    to_big: Vec<u64>,
    to_sub: HashMap<u64, u64>,
}

impl SubfieldEmbedding {
    pub fn new(big: Arc<ExtField>, d: u64, max_size: u64) -> Result<Self> {
        if d == 0 || big.k % d != 0 {
            return Err(Error::InvalidInput(format!(
                "degree {d} does not divide the extension degree {}",
                big.k
            )));
        }
        let sub = field(big.p, d, max_size)?;
        // Find the least-ranked root of the subfield modulus. Coefficients
        // are < p, i.e. already constants of the big field.
        let mut rho = None;
        'scan: for x in 0..big.size {
            let mut acc = 0u64;
            for &c in sub.modulus.iter().rev() {
                acc = big.add(big.mul(acc, x), c);
            }
            if acc == 0 {
                rho = Some(x);
                break 'scan;
            }
        }
        let rho = rho.expect("the subfield modulus splits in the big field");
        let mut to_big = vec![0u64; sub.size as usize];
        for c in 0..sub.size {
            let mut acc = 0u64;
            let mut digits = Vec::with_capacity(d as usize);
            let mut t = c;
            for _ in 0..d {
                digits.push(t % sub.p);
                t /= sub.p;
            }
            for &dig in digits.iter().rev() {
                acc = big.add(big.mul(acc, rho), dig);
            }
            to_big[c as usize] = acc;
        }
        let mut to_sub = HashMap::with_capacity(sub.size as usize);
        for (c, &img) in to_big.iter().enumerate() {
            let prev = to_sub.insert(img, c as u64);
            assert!(prev.is_none(), "embedding must be injective");
        }
        let embed = SubfieldEmbedding { sub, big, to_big, to_sub };
        #[cfg(debug_assertions)]
        embed.validate();
        Ok(embed)
    }

    #[cfg(debug_assertions)]
    fn validate(&self) {
        let full = self.sub.size <= 64;
        let pairs: Vec<(u64, u64)> = if full {
            (0..self.sub.size)
                .flat_map(|a| (0..self.sub.size).map(move |b| (a, b)))
                .collect()
        } else {
            // Deterministic sample.
            let mut state = 0x9e3779b97f4a7c15u64;
            (0..2000)
                .map(|_| {
                    state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    let a = (state >> 33) % self.sub.size;
                    state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    let b = (state >> 33) % self.sub.size;
                    (a, b)
                })
                .collect()
        };
        for (a, b) in pairs {
            debug_assert_eq!(
                self.push(self.sub.add(a, b)),
                self.big.add(self.push(a), self.push(b))
            );
            debug_assert_eq!(
                self.push(self.sub.mul(a, b)),
                self.big.mul(self.push(a), self.push(b))
            );
        }
    }

    /// Image of a subfield code in the big field.
    pub fn push(&self, c: u64) -> u64 {
        self.to_big[c as usize]
    }

    /// Pull a big-field element back, if it lies in the image.
    pub fn pull(&self, x: u64) -> Option<u64> {
        self.to_sub.get(&x).copied()
    }
}

/// Minimal polynomial of `alpha` over the embedded subfield, returned with
/// coefficients in the canonical subfield's codes (monic, degree = number
/// of distinct conjugates under the subfield Frobenius).
pub fn min_poly(big: &ExtField, alpha: u64, embed: &SubfieldEmbedding) -> Poly {
    debug_assert!(std::ptr::eq(&*embed.big as *const ExtField, big) || embed.big.size == big.size);
    let step = checked_pow(big.p, embed.sub.k).unwrap();
    let mut conj = vec![alpha];
    let mut c = big.pow(alpha, step);
    while c != alpha {
        conj.push(c);
        c = big.pow(c, step);
    }
    // Product of (x - c_i) over the big field.
    let mut coeffs = vec![1u64];
    for &ci in &conj {
        let neg = big.neg(ci);
        let mut next = vec![0u64; coeffs.len() + 1];
        for (j, &cj) in coeffs.iter().enumerate() {
            next[j + 1] = big.add(next[j + 1], cj);
            next[j] = big.add(next[j], big.mul(neg, cj));
        }
        coeffs = next;
    }
    let pulled: Vec<u64> = coeffs
        .iter()
        .map(|&c| {
            embed
                .pull(c)
                .expect("coefficients of the conjugate product lie in the subfield")
        })
        .collect();
    Poly::from_coeffs(pulled)
}
