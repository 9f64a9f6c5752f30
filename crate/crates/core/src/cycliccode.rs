//! Cyclic codes as concrete objects: check polynomials, degeneracy, the
//! trace representation of irreducible codes, and weight distributions.
//!
//! A code is keyed by its *check* polynomial `h` (the generator
//! polynomial `(x^n - 1)/h` is derived on demand): `C` consists of the
//! words whose polynomial form is a multiple of the generator, and
//! `dim C = deg h`. Irreducible codes additionally carry a trace
//! representation: fixing `beta` of order `n'` with `beta^{-1}` a root of
//! `h`, the codeword for `alpha` in `F_{q^{m'}}` is
//! `(Tr(alpha), Tr(alpha*beta), ..., Tr(alpha*beta^{n-1}))`, which makes
//! weight counting a kernel-size computation instead of a word sweep.

use crate::budget::Budgets;
use crate::error::{Error, Result};
use crate::gfield::{field, min_poly, ExtField, Poly, SubfieldEmbedding};
use crate::numtheory::{gcd, mult_ord, FieldDesc};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::sync::Arc;

/// The cyclic code `C_{n,h,q}`: length `n` over `F_q`, check polynomial
/// `h` dividing `x^n - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicCodeSpec {
    pub n: u64,
    pub q: FieldDesc,
    /// Monic check polynomial over `F_q`, coefficients as element codes.
    pub h: Poly,
}

/// Serialized form of a code.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CodeJson {
    pub n: u64,
    pub p: u64,
    pub e: u64,
    pub h: Vec<u64>,
    pub dim: u64,
}

impl CyclicCodeSpec {
    /// Validates length, coprimality, and `h | x^n - 1`.
    pub fn new(n: u64, q: FieldDesc, h: Poly, budgets: &Budgets) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("code length must be >= 1".into()));
        }
        if gcd(n, q.p) != 1 {
            return Err(Error::NotCoprime { n, p: q.p });
        }
        let f = field(q.p, q.e, budgets.field_size)?;
        if h.is_zero() || !h.is_monic() {
            return Err(Error::InvalidInput("check polynomial must be monic".into()));
        }
        if !h.valid_over(&f) {
            return Err(Error::InvalidInput(
                "check polynomial has coefficients outside the field".into(),
            ));
        }
        if !h.divides(&Poly::x_pow_minus_one(n, &f), &f) {
            return Err(Error::InvalidInput(format!(
                "check polynomial does not divide x^{n} - 1"
            )));
        }
        Ok(CyclicCodeSpec { n, q, h })
    }

    pub fn dim(&self) -> u64 {
        self.h.degree().unwrap_or(0) as u64
    }

    pub fn qfield(&self, budgets: &Budgets) -> Result<Arc<ExtField>> {
        field(self.q.p, self.q.e, budgets.field_size)
    }

    /// The generator polynomial `(x^n - 1)/h`.
    pub fn generator_poly(&self, f: &ExtField) -> Poly {
        let (g, r) = Poly::x_pow_minus_one(self.n, f).divrem(&self.h, f);
        debug_assert!(r.is_zero());
        g
    }

    /// Degeneracy data: `(degenerate, n', k)` where `n'` is the order of
    /// `h` and `k = n/n'`. The code is degenerate exactly when `n' < n`,
    /// in which case every word is a length-`n'` word repeated `k` times.
    pub fn is_degenerate(&self, f: &ExtField) -> Result<(bool, u64, u64)> {
        let nprime = poly_order(&self.h, f)?;
        debug_assert_eq!(self.n % nprime, 0);
        Ok((nprime < self.n, nprime, self.n / nprime))
    }

    /// The standard basis `x^i * g(x)` for `i < dim`, as coefficient rows
    /// of length `n`.
    pub fn basis_words(&self, f: &ExtField) -> Vec<Vec<u64>> {
        let g = self.generator_poly(f);
        let dim = self.dim() as usize;
        let mut rows = Vec::with_capacity(dim);
        for i in 0..dim {
            let mut row = vec![0u64; self.n as usize];
            for (j, &c) in g.coeffs.iter().enumerate() {
                row[i + j] = c;
            }
            rows.push(row);
        }
        rows
    }

    /// Every codeword, by direct linear combination of the basis. Costs
    /// `q^dim * dim * n`; guarded by the enumeration budget.
    pub fn enumerate_words(&self, f: &ExtField, budgets: &Budgets) -> Result<Vec<Vec<u64>>> {
        let total = self
            .q
            .pow_value(self.dim())
            .filter(|&t| t <= budgets.enum_size)
            .ok_or_else(|| {
                Error::Infeasible(format!(
                    "enumerating q^{} codewords exceeds the enumeration budget",
                    self.dim()
                ))
            })?;
        let rows = self.basis_words(f);
        let qv = self.q.value().unwrap();
        let mut out = Vec::with_capacity(total as usize);
        for idx in 0..total {
            let mut word = vec![0u64; self.n as usize];
            let mut t = idx;
            for row in &rows {
                let c = t % qv;
                t /= qv;
                if c != 0 {
                    for (w, &r) in word.iter_mut().zip(row) {
                        *w = f.add(*w, f.mul(c, r));
                    }
                }
            }
            out.push(word);
        }
        Ok(out)
    }

    pub fn to_json(&self) -> CodeJson {
        CodeJson {
            n: self.n,
            p: self.q.p,
            e: self.q.e,
            h: self.h.coeffs.clone(),
            dim: self.dim(),
        }
    }

    pub fn from_json(cj: &CodeJson, budgets: &Budgets) -> Result<Self> {
        let q = FieldDesc::new(cj.p, cj.e)?;
        let spec = CyclicCodeSpec::new(cj.n, q, Poly::from_coeffs(cj.h.clone()), budgets)?;
        if spec.dim() != cj.dim {
            return Err(Error::InvalidInput(format!(
                "declared dimension {} does not match deg h = {}",
                cj.dim,
                spec.dim()
            )));
        }
        Ok(spec)
    }
}

/// The order of a polynomial with nonzero constant term: the least `N`
/// with `h | x^N - 1`, found by stepping `x^N mod h`.
pub fn poly_order(h: &Poly, f: &ExtField) -> Result<u64> {
    if h.is_zero() || h.eval(f, 0) == 0 {
        return Err(Error::InvalidInput(
            "polynomial order requires a nonzero constant term".into(),
        ));
    }
    let d = h.degree().unwrap();
    if d == 0 {
        return Ok(1);
    }
    // Normalize to monic so the reduction step is a plain subtraction.
    let h = if h.is_monic() {
        h.clone()
    } else {
        h.mul_scalar(f.inv(h.leading()), f)
    };
    // cur = x^N mod h, maintained incrementally.
    let mut cur = if d == 1 {
        vec![f.neg(h.coeffs[0])]
    } else {
        let mut v = vec![0u64; d];
        v[1] = 1;
        v
    };
    let one = {
        let mut v = vec![0u64; d];
        v[0] = 1;
        v
    };
    let mut n = 1u64;
    loop {
        if cur == one {
            return Ok(n);
        }
        // multiply by x and reduce
        let top = cur[d - 1];
        for i in (1..d).rev() {
            cur[i] = cur[i - 1];
        }
        cur[0] = 0;
        if top != 0 {
            for (i, slot) in cur.iter_mut().enumerate() {
                *slot = f.sub(*slot, f.mul(top, h.coeffs[i]));
            }
        }
        n += 1;
        assert!(
            n < u64::MAX,
            "polynomial order search failed to terminate"
        );
    }
}

/// Exact weight distribution of a code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightDistribution {
    pub n: u64,
    pub dim: u64,
    /// weight -> number of codewords.
    pub counts: BTreeMap<u64, u64>,
}

impl WeightDistribution {
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    /// The set of nonzero weights.
    pub fn nonzero_weights(&self) -> Vec<u64> {
        self.counts.keys().copied().filter(|&w| w > 0).collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("weight,count\n");
        for (w, c) in &self.counts {
            out.push_str(&format!("{w},{c}\n"));
        }
        out
    }
}

/// An irreducible cyclic code together with its trace representation.
pub struct TraceCode {
    pub spec: CyclicCodeSpec,
    pub qfield: Arc<ExtField>,
    /// `F_{q^{m'}}`, the splitting field of `h`.
    pub bigfield: Arc<ExtField>,
    pub embed: SubfieldEmbedding,
    /// `beta^{-1}` is a root of `h`; `beta` has order `n'`.
    pub beta: u64,
    /// Order of `h` (the minimal period of the code).
    pub nprime: u64,
    /// Degree of `h` (the dimension of the code).
    pub mprime: u64,
}

impl TraceCode {
    /// The non-degenerate irreducible cyclic code of the pair `(n, q)`:
    /// `h` is the minimal polynomial of `xi^{-1}` for the canonical `xi`
    /// of order `n`, and the dimension is `ord_n(q)`.
    pub fn for_pair(n: u64, q: FieldDesc, budgets: &Budgets) -> Result<TraceCode> {
        Self::for_pair_with_unit(n, q, 1, budgets)
    }

    /// Same as [`TraceCode::for_pair`] but generated from `xi^t` for a
    /// unit `t` mod `n`; all such codes are permutation-equivalent, which
    /// the tests exercise.
    pub fn for_pair_with_unit(n: u64, q: FieldDesc, t: u64, budgets: &Budgets) -> Result<TraceCode> {
        if n == 0 {
            return Err(Error::InvalidInput("length must be >= 1".into()));
        }
        if gcd(t % n.max(1), n) != 1 && n > 1 {
            return Err(Error::InvalidInput(format!("{t} is not a unit mod {n}")));
        }
        let m = mult_ord(n, q)?;
        let qfield = field(q.p, q.e, budgets.field_size)?;
        let bigfield = field(q.p, q.e * m, budgets.field_size)?;
        let embed = SubfieldEmbedding::new(bigfield.clone(), q.e, budgets.field_size)?;
        let xi = bigfield.element_of_order(n)?;
        let beta = bigfield.pow(xi, t);
        let h = min_poly(&bigfield, bigfield.inv(beta), &embed);
        debug_assert_eq!(h.degree(), Some(m as usize));
        let spec = CyclicCodeSpec { n, q, h };
        Ok(TraceCode { spec, qfield, bigfield, embed, beta, nprime: n, mprime: m })
    }

    /// Realizes a spec whose check polynomial is irreducible (rejecting
    /// reducible ones). `beta^{-1}` is chosen as the least-ranked root of
    /// `h` in its splitting field; when `ord(h) = n' < n` the resulting
    /// code is degenerate and every word is a `k`-fold repetition.
    pub fn from_spec(spec: CyclicCodeSpec, budgets: &Budgets) -> Result<TraceCode> {
        let mprime = spec.dim();
        if mprime == 0 {
            return Err(Error::InvalidInput("check polynomial must be nonconstant".into()));
        }
        let qfield = spec.qfield(budgets)?;
        let bigfield = field(spec.q.p, spec.q.e * mprime, budgets.field_size)?;
        let embed = SubfieldEmbedding::new(bigfield.clone(), spec.q.e, budgets.field_size)?;
        // Least-ranked root of h in the big field.
        let mut root = None;
        'scan: for x in 0..bigfield.size {
            let mut acc = 0u64;
            for &c in spec.h.coeffs.iter().rev() {
                acc = bigfield.add(bigfield.mul(acc, x), embed.push(c));
            }
            if acc == 0 {
                root = Some(x);
                break 'scan;
            }
        }
        let root = root.ok_or_else(|| {
            Error::InvalidInput("check polynomial must be irreducible".into())
        })?;
        if min_poly(&bigfield, root, &embed) != spec.h {
            return Err(Error::InvalidInput("check polynomial must be irreducible".into()));
        }
        if root == 0 {
            return Err(Error::InvalidInput(
                "check polynomial must have a nonzero constant term".into(),
            ));
        }
        let beta = bigfield.inv(root);
        let nprime = bigfield.elem_order(beta);
        if spec.n % nprime != 0 {
            return Err(Error::InvalidInput(format!(
                "order {} of the check polynomial does not divide n = {}",
                nprime, spec.n
            )));
        }
        Ok(TraceCode { spec, qfield, bigfield, embed, beta, nprime, mprime })
    }

    /// Repetition count `k = n / n'` (1 for non-degenerate codes).
    pub fn repetition(&self) -> u64 {
        self.spec.n / self.nprime
    }

    /// The codeword attached to `alpha`.
    pub fn codeword(&self, alpha: u64) -> Vec<u64> {
        let nprime = self.nprime as usize;
        let mut pattern = Vec::with_capacity(nprime);
        let mut cur = alpha;
        for _ in 0..nprime {
            let t = self.bigfield.rel_trace(cur, self.qfield.k);
            pattern.push(self.embed.pull(t).expect("trace lies in the subfield"));
            cur = self.bigfield.mul(cur, self.beta);
        }
        let mut word = Vec::with_capacity(self.spec.n as usize);
        for _ in 0..self.repetition() {
            word.extend_from_slice(&pattern);
        }
        word
    }

    /// All `q^{m'}` codewords, one per `alpha` in ascending element code.
    pub fn codewords(&self, budgets: &Budgets) -> Result<impl Iterator<Item = Vec<u64>> + '_> {
        if self.bigfield.size > budgets.enum_size {
            return Err(Error::Infeasible(format!(
                "codeword enumeration over {} elements exceeds the enumeration budget",
                self.bigfield.size
            )));
        }
        Ok((0..self.bigfield.size).map(|a| self.codeword(a)))
    }

    /// Exact weight distribution by kernel counting: the weight of the
    /// word for `alpha` is `k * (n' - #{i < n' : Tr(alpha beta^i) = 0})`,
    /// and weights are constant on cosets of the order-`n'` subgroup, so
    /// one representative per coset suffices.
    pub fn weight_distribution(&self, budgets: &Budgets) -> Result<WeightDistribution> {
        let big = &self.bigfield;
        if big.size > budgets.enum_size {
            return Err(Error::Infeasible(format!(
                "weight enumeration over {} elements exceeds the enumeration budget",
                big.size
            )));
        }
        let e = self.qfield.k;
        let trace_zero: Vec<bool> = (0..big.size).map(|x| big.rel_trace(x, e) == 0).collect();
        let nprime = self.nprime;
        let k_rep = self.repetition();
        let ucount = (big.size - 1) / nprime;
        let chunk: u64 = 1 << 12;
        let nchunks = ucount.div_ceil(chunk);
        let merge = |mut a: BTreeMap<u64, u64>, b: BTreeMap<u64, u64>| {
            for (w, c) in b {
                *a.entry(w).or_insert(0) += c;
            }
            a
        };
        let mut counts = (0..nchunks)
            .into_par_iter()
            .map(|ci| {
                let start = ci * chunk;
                let stop = (start + chunk).min(ucount);
                let mut local: BTreeMap<u64, u64> = BTreeMap::new();
                let mut rep = big.pow(big.generator, start);
                for _ in start..stop {
                    let mut zeros = 0u64;
                    let mut cur = rep;
                    for _ in 0..nprime {
                        if trace_zero[cur as usize] {
                            zeros += 1;
                        }
                        cur = big.mul(cur, self.beta);
                    }
                    debug_assert_eq!(cur, rep);
                    let w = k_rep * (nprime - zeros);
                    debug_assert!(w > 0, "only the zero word has weight 0");
                    *local.entry(w).or_insert(0) += nprime;
                    rep = big.mul(rep, big.generator);
                }
                local
            })
            .reduce(BTreeMap::new, merge);
        *counts.entry(0).or_insert(0) += 1;
        let dist = WeightDistribution { n: self.spec.n, dim: self.mprime, counts };
        debug_assert_eq!(dist.total(), big.size);
        Ok(dist)
    }
}

/// The non-degenerate irreducible cyclic code of a pair, under the name
/// the rest of the crate uses.
pub fn irreducible_code_of_pair(n: u64, q: FieldDesc, budgets: &Budgets) -> Result<TraceCode> {
    TraceCode::for_pair(n, q, budgets)
}
