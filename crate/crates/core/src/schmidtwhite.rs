//! Weight-theoretic predicates on the trace codes `C(q, m, u)` and the
//! audit tying them to the non-standard classification.
//!
//! `C(q, m, u)` is the irreducible cyclic code of length `n = (q^m - 1)/u`
//! obtained by tracing `alpha * xi^i` from `F_{q^m}` down to `F_q`.  The
//! predicates here — one-weight, two-weight, semiprimitive, subfield —
//! follow the arithmetic criteria built on `u_delta = gcd(u, (q^m-1)/(q-1))`,
//! with enumerative cross-checks.  [`sw_audit`] verifies that every
//! two-weight code of a non-standard pair is either semiprimitive or one of
//! the two known ternary exceptions of lengths 11 and 22.

use std::sync::Arc;

use crate::budget::Budgets;
use crate::classifier::classify;
use crate::error::{Error, Result};
use crate::gfield::{field, ExtField};
use crate::numtheory::{checked_pow, divisors, gcd, lcm, mult_ord, FieldDesc};

/// The irreducible cyclic code `C(q, m, u)` of length `n = (q^m - 1)/u`,
/// realized over its big field.  Construction requires the code to be
/// non-degenerate, i.e. `ord_n(q) = m`.
#[derive(Clone)]
pub struct CqmuCode {
    pub q: FieldDesc,
    pub m: u64,
    pub u: u64,
    pub n: u64,
    big: Arc<ExtField>,
    xi: u64,
}

impl CqmuCode {
    pub fn new(q: FieldDesc, m: u64, u: u64, budgets: &Budgets) -> Result<CqmuCode> {
        if m == 0 || u == 0 {
            return Err(Error::InvalidInput("C(q, m, u) needs m >= 1 and u >= 1".into()));
        }
        let qv = q
            .value()
            .ok_or_else(|| Error::InvalidInput(format!("field size {q} overflows")))?;
        let qm = checked_pow(qv, m)
            .ok_or_else(|| Error::Infeasible(format!("{q}^{m} overflows u64")))?;
        if (qm - 1) % u != 0 {
            return Err(Error::InvalidInput(format!("u = {u} does not divide {qv}^{m} - 1")));
        }
        let n = (qm - 1) / u;
        if mult_ord(n, q)? != m {
            return Err(Error::InvalidInput(format!(
                "C({q}, {m}, {u}) is degenerate: ord_{n}({qv}) != {m}"
            )));
        }
        let big = field(q.p, q.e * m, budgets.field_size)?;
        let xi = big.element_of_order(n)?;
        Ok(CqmuCode { q, m, u, n, big, xi })
    }

    /// Construct from a pair `(n, q)` with `u = (q^m - 1)/n`.
    pub fn for_pair(n: u64, q: FieldDesc, budgets: &Budgets) -> Result<CqmuCode> {
        let qv = q
            .value()
            .ok_or_else(|| Error::InvalidInput(format!("field size {q} overflows")))?;
        let m = mult_ord(n, q)?;
        let qm = checked_pow(qv, m)
            .ok_or_else(|| Error::Infeasible(format!("{q}^{m} overflows u64")))?;
        CqmuCode::new(q, m, (qm - 1) / n, budgets)
    }

    /// The sorted set of distinct nonzero Hamming weights.
    ///
    /// Weights are constant on cosets of `U * F_q^*` in the big
    /// multiplicative group — scaling by `F_q^*` preserves supports and
    /// multiplying by `xi` cyclically shifts — so one codeword per coset
    /// suffices.  Cost is about `(q^m - 1) * n0 / (q - 1)` trace
    /// evaluations instead of `q^m * n`.
    pub fn weight_set(&self) -> Vec<u64> {
        let big = &self.big;
        let e = self.q.e;
        let qv = self.q.value().expect("realized");
        let group = big.size - 1;
        let n0 = gcd(self.n, qv - 1);
        // |U * F_q^*| = n (q - 1) / n0.
        let stab = self.n * (qv - 1) / n0;
        let reps = group / stab;
        let g = big.element_of_order(group).expect("cyclic group generator");
        let mut weights = Vec::new();
        let mut alpha = 1u64;
        for _ in 0..reps {
            let mut zeros = 0u64;
            let mut x = alpha;
            for _ in 0..self.n {
                if big.rel_trace(x, e) == 0 {
                    zeros += 1;
                }
                x = big.mul(x, self.xi);
            }
            let w = self.n - zeros;
            if !weights.contains(&w) {
                weights.push(w);
            }
            alpha = big.mul(alpha, g);
        }
        weights.sort_unstable();
        weights
    }

    /// `S = U * F_q^* ∪ {0}` as the multiplicative side of the subfield
    /// test; iterates with repetition, which is harmless for the checks.
    fn scaled_u_size(&self) -> u64 {
        let qv = self.q.value().expect("realized");
        let n0 = gcd(self.n, qv - 1);
        self.n * (qv - 1) / n0 + 1
    }
}

/// `u_delta = gcd(u, (q^m - 1)/(q - 1))`, the invariant controlling the
/// one-weight and semiprimitive criteria.
pub fn u_delta(q: FieldDesc, m: u64, u: u64) -> Result<u64> {
    let qv = q
        .value()
        .ok_or_else(|| Error::InvalidInput(format!("field size {q} overflows")))?;
    let qm = checked_pow(qv, m)
        .ok_or_else(|| Error::Infeasible(format!("{q}^{m} overflows u64")))?;
    if (qm - 1) % u != 0 {
        return Err(Error::InvalidInput(format!("u = {u} does not divide {qv}^{m} - 1")));
    }
    Ok(gcd(u, (qm - 1) / (qv - 1)))
}

/// A code is one-weight iff `u_delta = 1`, i.e. `U * F_q^* = F_{q^m}^*`.
/// Debug builds re-derive the answer from the enumerated weight set.
pub fn is_one_weight(code: &CqmuCode) -> bool {
    let ud = u_delta(code.q, code.m, code.u).expect("validated at construction");
    let arithmetic = ud == 1;
    debug_assert_eq!(
        arithmetic,
        code.weight_set().len() == 1,
        "one-weight criterion vs enumeration for C({}, {}, {})",
        code.q,
        code.m,
        code.u
    );
    arithmetic
}

/// Exact two-weight test by enumeration; returns the weight set alongside.
pub fn is_two_weight(code: &CqmuCode) -> (bool, Vec<u64>) {
    let w = code.weight_set();
    (w.len() == 2, w)
}

/// Semiprimitivity: some power of the characteristic is `-1 modulo
/// u_delta`.  Returns the witness exponent `j` (0 when `u_delta <= 2`,
/// where the congruence is vacuous).  Scans `j` up to the order of `p`
/// modulo `u_delta`.
pub fn is_semiprimitive(q: FieldDesc, m: u64, u: u64) -> Result<(bool, Option<u64>)> {
    let ud = u_delta(q, m, u)?;
    if ud <= 2 {
        return Ok((true, Some(0)));
    }
    let p = q.p % ud;
    let target = ud - 1;
    let mut pj = 1u64;
    let mut j = 0u64;
    loop {
        if pj == target {
            return Ok((true, Some(j)));
        }
        pj = pj * p % ud;
        j += 1;
        if pj == 1 {
            return Ok((false, None));
        }
    }
}

/// Subfield-code test: `S = U * F_q^* ∪ {0}` is a subfield of `F_{q^m}`.
///
/// `S` is closed under multiplication by construction, so it is a subfield
/// iff `|S| = p^d` and every element is fixed by the `d`-th Frobenius
/// power — then `S` coincides with the unique subfield of that size, which
/// in particular forces `d | em`.
pub fn is_subfield_code(code: &CqmuCode) -> bool {
    let s = code.scaled_u_size();
    // |S| must be a power of the characteristic.
    let mut d = 0u64;
    let mut t = s;
    while t % code.big.p == 0 {
        t /= code.big.p;
        d += 1;
    }
    if t != 1 || d == 0 || code.big.k % d != 0 {
        return false;
    }
    let qv = code.q.value().expect("realized");
    let fq_star = match code.big.subgroup_u(qv - 1) {
        Ok(v) => v,
        Err(_) => return false,
    };
    let mut x = 1u64;
    for _ in 0..code.n {
        for &c in &fq_star {
            let y = code.big.mul(x, c);
            if code.big.pow(y, s) != y {
                return false;
            }
        }
        x = code.big.mul(x, code.xi);
    }
    true
}

// ---------------------------------------------------------------------------
// two-weight transfer criteria

/// Two sides of an if-and-only-if weight criterion, plus the side
/// conditions promised whenever the left side holds.
#[derive(Debug, Clone, Copy)]
pub struct IffCheck {
    /// Enumerated: the derived code is a two-weight code.
    pub left: bool,
    /// The arithmetic criterion.
    pub right: bool,
    /// The "furthermore" clauses (semiprimitivity of the derived code, and
    /// any promised one-weight corollaries), vacuously true when `left` is
    /// false.
    pub furthermore_ok: bool,
}

impl IffCheck {
    pub fn agrees(&self) -> bool {
        self.left == self.right && self.furthermore_ok
    }
}

/// Criterion for scalar extension: with `m = ord_n(q)`, `gcd(m, t) = 1`
/// and `min(m, t) >= 2`, the code `C(q^t, m, u')` with
/// `u' = (q^{mt} - 1)/n` is two-weight iff `min(m, t) = 2` and
/// `n = n0 * (q^m - 1)/(q - 1)` with `gcd((q-1)/n0, (q^m-1)/(q-1)) = 1`.
/// When two-weight it is semiprimitive and `C(q, m, (q-1)/n0)` is
/// one-weight.  Returns `None` when the hypotheses fail.
pub fn check_lift_two_weight(
    q: FieldDesc,
    t: u64,
    n: u64,
    budgets: &Budgets,
) -> Result<Option<IffCheck>> {
    if n == 0 || t < 2 || gcd(n, q.p) != 1 {
        return Ok(None);
    }
    let m = mult_ord(n, q)?;
    if m < 2 || gcd(m, t) != 1 {
        return Ok(None);
    }
    let qv = q.value().ok_or_else(|| Error::InvalidInput(format!("{q} overflows")))?;
    let qmt = checked_pow(qv, m * t)
        .ok_or_else(|| Error::Infeasible(format!("{q}^{} overflows u64", m * t)))?;
    let qt = FieldDesc::new(q.p, q.e * t)?;
    let lifted = CqmuCode::new(qt, m, (qmt - 1) / n, budgets)?;
    let (left, _) = is_two_weight(&lifted);

    let n0 = gcd(n, qv - 1);
    let delta = (checked_pow(qv, m).unwrap() - 1) / (qv - 1);
    let right = m.min(t) == 2 && n == n0 * delta && gcd((qv - 1) / n0, delta) == 1;

    let furthermore_ok = if left {
        let (semi, _) = is_semiprimitive(qt, m, lifted.u)?;
        let base = CqmuCode::new(q, m, (qv - 1) / n0, budgets)?;
        semi && is_one_weight(&base)
    } else {
        true
    };
    Ok(Some(IffCheck { left, right, furthermore_ok }))
}

/// Criterion for equally-spaced triples: with `(n, n0, r)` satisfying
/// `n = n0 * r`, `r >= 2`, `n >= 6` and `ord_n(q) = r * ord_{n0}(q)`, the
/// code `C(q, m, u)` is two-weight iff `C(q, m0, u0)` is one-weight and
/// `r = 2`; when two-weight it is semiprimitive.  Returns `None` when the
/// triple does not satisfy the conditions.
pub fn check_spaced_two_weight(
    q: FieldDesc,
    n0: u64,
    r: u64,
    budgets: &Budgets,
) -> Result<Option<IffCheck>> {
    if n0 == 0 || r < 2 {
        return Ok(None);
    }
    let n = match n0.checked_mul(r) {
        Some(n) if n >= 6 && gcd(n, q.p) == 1 => n,
        _ => return Ok(None),
    };
    let m0 = mult_ord(n0, q)?;
    let m = mult_ord(n, q)?;
    if m != r * m0 {
        return Ok(None);
    }
    let qv = q.value().ok_or_else(|| Error::InvalidInput(format!("{q} overflows")))?;
    let qm = checked_pow(qv, m)
        .ok_or_else(|| Error::Infeasible(format!("{q}^{m} overflows u64")))?;
    let code = CqmuCode::new(q, m, (qm - 1) / n, budgets)?;
    let (left, _) = is_two_weight(&code);

    let short = CqmuCode::new(q, m0, (checked_pow(qv, m0).unwrap() - 1) / n0, budgets)?;
    let right = is_one_weight(&short) && r == 2;

    let furthermore_ok = if left { is_semiprimitive(q, m, code.u)?.0 } else { true };
    Ok(Some(IffCheck { left, right, furthermore_ok }))
}

/// Criterion for products: with `m = ord_n(q) > 1`, `t = ord_s(q) > 1` and
/// `gcd(m, t) = 1`, the code `C(q, mt, u')` on `lcm(n, s)` is two-weight
/// iff either `min(m, t) = 2` and both factor codes are one-weight, or one
/// factor code is a two-weight code of dimension 2 and the other is
/// one-weight; when two-weight it is semiprimitive.  Returns `None` when
/// the hypotheses fail.
pub fn check_product_two_weight(
    q: FieldDesc,
    n: u64,
    s: u64,
    budgets: &Budgets,
) -> Result<Option<IffCheck>> {
    if n == 0 || s == 0 || gcd(n, q.p) != 1 || gcd(s, q.p) != 1 {
        return Ok(None);
    }
    let m = mult_ord(n, q)?;
    let t = mult_ord(s, q)?;
    if m < 2 || t < 2 || gcd(m, t) != 1 {
        return Ok(None);
    }
    let qv = q.value().ok_or_else(|| Error::InvalidInput(format!("{q} overflows")))?;
    let nprod = lcm(n, s);
    let qmt = checked_pow(qv, m * t)
        .ok_or_else(|| Error::Infeasible(format!("{q}^{} overflows u64", m * t)))?;
    let prod = CqmuCode::new(q, m * t, (qmt - 1) / nprod, budgets)?;
    let (left, _) = is_two_weight(&prod);

    let c1 = CqmuCode::new(q, m, (checked_pow(qv, m).unwrap() - 1) / n, budgets)?;
    let c2 = CqmuCode::new(q, t, (checked_pow(qv, t).unwrap() - 1) / s, budgets)?;
    let one1 = is_one_weight(&c1);
    let one2 = is_one_weight(&c2);
    let (two1, _) = is_two_weight(&c1);
    let (two2, _) = is_two_weight(&c2);
    let cond1 = m.min(t) == 2 && one1 && one2;
    let cond2 = (two1 && m == 2 && one2) || (two2 && t == 2 && one1);
    let right = cond1 || cond2;

    let furthermore_ok = if left { is_semiprimitive(q, m * t, prod.u)?.0 } else { true };
    Ok(Some(IffCheck { left, right, furthermore_ok }))
}

// ---------------------------------------------------------------------------
// the audit

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AuditStatus {
    /// Two-weight and semiprimitive, or two-weight and a known exception.
    Pass,
    /// Not a two-weight code; outside the audit's claim.
    Exempt,
    /// Could not be realized within budget; never counted as a pass.
    Skipped,
    /// Two-weight but neither semiprimitive nor excepted.
    Violation,
}

impl AuditStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            AuditStatus::Pass => "pass",
            AuditStatus::Exempt => "exempt",
            AuditStatus::Skipped => "skipped",
            AuditStatus::Violation => "violation",
        }
    }
}

#[derive(Debug, Clone)]
pub struct AuditRow {
    pub n: u64,
    pub q: FieldDesc,
    pub m: u64,
    pub u: u64,
    pub weights: Vec<u64>,
    pub semiprimitive: Option<bool>,
    pub subfield: Option<bool>,
    pub exception: bool,
    pub status: AuditStatus,
}

#[derive(Debug, Clone, Default)]
pub struct AuditReport {
    pub rows: Vec<AuditRow>,
    /// `(n, p, e)` triples that failed the audit; empty on success.
    pub violations: Vec<(u64, u64, u64)>,
    pub skipped: u64,
}

impl AuditReport {
    /// CSV: `n,p,e,m,u,verdict,weights,semiprimitive,subfield,exception,status`.
    pub fn to_csv(&self) -> String {
        let mut out =
            String::from("n,p,e,m,u,verdict,weights,semiprimitive,subfield,exception,status\n");
        for r in &self.rows {
            let weights =
                r.weights.iter().map(u64::to_string).collect::<Vec<_>>().join("|");
            let opt = |o: Option<bool>| o.map(|b| b.to_string()).unwrap_or_default();
            out.push_str(&format!(
                "{},{},{},{},{},nonstandard,{},{},{},{},{}\n",
                r.n,
                r.q.p,
                r.q.e,
                r.m,
                r.u,
                weights,
                opt(r.semiprimitive),
                opt(r.subfield),
                r.exception,
                r.status.as_str()
            ));
        }
        out
    }
}

/// The two ternary codes excepted from semiprimitivity: lengths 11 and 22
/// over `F_3`.
fn is_known_exception(n: u64, q: FieldDesc) -> bool {
    q.value() == Some(3) && (n == 11 || n == 22)
}

/// Audit every non-standard pair `(n, q)` for `q` in `qs` with
/// `q^m <= qm_limit`: a two-weight code must be semiprimitive or a known
/// exception.  Infeasible codes are reported as skipped, never passed.
pub fn sw_audit(qs: &[FieldDesc], qm_limit: u64, budgets: &Budgets) -> Result<AuditReport> {
    let mut report = AuditReport::default();
    for &q in qs {
        let qv = q
            .value()
            .ok_or_else(|| Error::InvalidInput(format!("field size {q} overflows")))?;
        // Candidate lengths: divisors of q^m - 1 with ord exactly m, for
        // every m with q^m within the limit.
        let mut pairs: Vec<(u64, u64)> = Vec::new();
        let mut qm = 1u64;
        let mut m = 0u64;
        loop {
            m += 1;
            qm = match qm.checked_mul(qv) {
                Some(v) if v <= qm_limit => v,
                _ => break,
            };
            for d in divisors(qm - 1) {
                if mult_ord(d, q)? == m {
                    pairs.push((d, m));
                }
            }
        }
        pairs.sort_unstable();
        for (n, m) in pairs {
            if !classify(n, q)?.is_nonstandard() {
                continue;
            }
            let u = (checked_pow(qv, m).unwrap() - 1) / n;
            let code = match CqmuCode::new(q, m, u, budgets) {
                Ok(c) => c,
                Err(Error::Infeasible(_)) => {
                    report.skipped += 1;
                    report.rows.push(AuditRow {
                        n,
                        q,
                        m,
                        u,
                        weights: Vec::new(),
                        semiprimitive: None,
                        subfield: None,
                        exception: is_known_exception(n, q),
                        status: AuditStatus::Skipped,
                    });
                    continue;
                }
                Err(e) => return Err(e),
            };
            let (two, weights) = is_two_weight(&code);
            let exception = is_known_exception(n, q);
            let (semi, subfield, status) = if two {
                let (semi, _) = is_semiprimitive(q, m, u)?;
                let sub = is_subfield_code(&code);
                let status = if semi || exception {
                    AuditStatus::Pass
                } else {
                    AuditStatus::Violation
                };
                (Some(semi), Some(sub), status)
            } else {
                (None, None, AuditStatus::Exempt)
            };
            if status == AuditStatus::Violation {
                report.violations.push((n, q.p, q.e));
            }
            report.rows.push(AuditRow {
                n,
                q,
                m,
                u,
                weights,
                semiprimitive: semi,
                subfield,
                exception,
                status,
            });
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycliccode::TraceCode;

    fn q(p: u64, e: u64) -> FieldDesc {
        FieldDesc::new(p, e).unwrap()
    }

    fn b() -> Budgets {
        Budgets::default()
    }

    fn code(p: u64, e: u64, m: u64, u: u64) -> CqmuCode {
        CqmuCode::new(q(p, e), m, u, &b()).unwrap()
    }

    #[test]
    fn u_delta_examples() {
        assert_eq!(u_delta(q(2, 1), 4, 3).unwrap(), 3);
        assert_eq!(u_delta(q(3, 1), 5, 22).unwrap(), 11);
        assert_eq!(u_delta(q(2, 1), 4, 1).unwrap(), 1);
        assert_eq!(u_delta(q(5, 1), 3, 1).unwrap(), 1);
        assert!(u_delta(q(2, 1), 4, 7).is_err()); // 7 does not divide 15
    }

    #[test]
    fn one_and_two_weight_examples() {
        let simplex = code(2, 1, 4, 1); // n = 15
        assert!(is_one_weight(&simplex));
        assert_eq!(simplex.weight_set(), vec![8]);
        let (two, w) = is_two_weight(&simplex);
        assert!(!two);
        assert_eq!(w, vec![8]);

        let c243 = code(2, 1, 4, 3); // n = 5
        assert!(!is_one_weight(&c243));
        let (two, w) = is_two_weight(&c243);
        assert!(two);
        assert_eq!(w, vec![2, 4]);

        let c3522 = code(3, 1, 5, 22); // n = 11, the ternary length-11 code
        assert!(!is_one_weight(&c3522));
        let (two, w) = is_two_weight(&c3522);
        assert!(two);
        assert_eq!(w, vec![6, 9]);
    }

    #[test]
    fn weight_set_matches_full_enumeration() {
        for (p, e, m, u) in [
            (2u64, 1u64, 4u64, 3u64),
            (2, 1, 4, 1),
            (3, 1, 5, 22),
            (3, 1, 2, 1),
            (3, 2, 2, 5),
            (2, 2, 2, 3),
        ] {
            let c = code(p, e, m, u);
            let tc = TraceCode::for_pair(c.n, q(p, e), &b()).unwrap();
            let full = tc.weight_distribution(&b()).unwrap().nonzero_weights();
            assert_eq!(c.weight_set(), full, "C({p}^{e}, {m}, {u})");
        }
    }

    #[test]
    fn degenerate_cqmu_is_rejected() {
        // u = 5 at (q, m) = (2, 4) gives n = 3 with ord_3(2) = 2 != 4; the
        // weight criteria are only valid for non-degenerate parameters, so
        // construction must fail.  (The enumerated weight set of that
        // degenerate realization would be {2} while u_delta = 5.)
        assert!(CqmuCode::new(q(2, 1), 4, 5, &b()).is_err());
        assert!(CqmuCode::new(q(2, 1), 8, 17, &b()).is_err()); // n = 15, ord = 4
    }

    #[test]
    fn semiprimitive_examples() {
        let (semi, j) = is_semiprimitive(q(2, 1), 4, 3).unwrap();
        assert!(semi);
        assert_eq!(j, Some(1)); // 2^1 = 2 = -1 mod 3

        let (semi, j) = is_semiprimitive(q(3, 1), 5, 22).unwrap();
        assert!(!semi && j.is_none()); // powers of 3 mod 11 miss 10

        let (semi, j) = is_semiprimitive(q(7, 1), 2, 1).unwrap();
        assert!(semi);
        assert_eq!(j, Some(0)); // u_delta = 1

        // u_delta = 2: vacuously semiprimitive.
        let (semi, _) = is_semiprimitive(q(3, 1), 2, 2).unwrap();
        assert!(semi);
    }

    #[test]
    fn subfield_examples() {
        // n = 3 over F_2: U ∪ {0} = F_4, the whole (non-degenerate) field.
        let c = code(2, 1, 2, 1);
        assert_eq!(c.n, 3);
        assert!(is_subfield_code(&c));

        // The whole field: C(2, 4, 1).
        assert!(is_subfield_code(&code(2, 1, 4, 1)));

        // n = 7 over F_2: U ∪ {0} = F_8, again the whole field.  (On
        // non-degenerate parameters a proper subfield cannot occur: U
        // inside F_{q^d} would force ord_n(q) <= d < m.)
        assert!(is_subfield_code(&code(2, 1, 3, 1)));

        // n = 10 over F_3: |S| = 11 is not a power of 3.
        let c = code(3, 1, 4, 8);
        assert_eq!(c.n, 10);
        assert!(!is_subfield_code(&c));

        // n = 5 over F_2: |S| = 6 is not a power of 2.
        assert!(!is_subfield_code(&code(2, 1, 4, 3)));
    }

    #[test]
    fn one_weight_iff_exhaustive_small() {
        // Arithmetic criterion vs enumerated weight count over every
        // realizable C(q, m, u) with q^m <= 2^12.
        let bb = b();
        let mut checked = 0u64;
        for &(p, e) in &[(2u64, 1u64), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (7, 1), (11, 1)] {
            let qd = q(p, e);
            let qv = qd.value().unwrap();
            let mut qm = 1u64;
            for m in 1..=12u64 {
                qm = match qm.checked_mul(qv) {
                    Some(v) if v <= 1 << 12 => v,
                    _ => break,
                };
                for u in divisors(qm - 1) {
                    let n = (qm - 1) / u;
                    if mult_ord(n, qd).unwrap() != m {
                        continue;
                    }
                    let c = CqmuCode::new(qd, m, u, &bb).unwrap();
                    let enumerated_one = c.weight_set().len() == 1;
                    assert_eq!(
                        enumerated_one,
                        u_delta(qd, m, u).unwrap() == 1,
                        "C({p}^{e}, {m}, {u})"
                    );
                    checked += 1;
                }
            }
        }
        assert!(checked > 100, "swept {checked} codes");
    }

    #[test]
    fn lift_criterion_instances() {
        let bb = b();
        // q = 3, n = 8 (m = 2), t = 3: lifted code C(27, 2, 91) is
        // two-weight; the arithmetic side agrees.
        let c = check_lift_two_weight(q(3, 1), 3, 8, &bb).unwrap().unwrap();
        assert!(c.left && c.right && c.agrees());

        // q = 3, n = 5 (m = 4), t = 3: min(m, t) = 3, so not two-weight.
        let c = check_lift_two_weight(q(3, 1), 3, 5, &bb).unwrap().unwrap();
        assert!(!c.left && !c.right && c.agrees());

        // Hypotheses unmet: m = 1.
        assert!(check_lift_two_weight(q(3, 1), 2, 2, &bb).unwrap().is_none());
        // Hypotheses unmet: gcd(m, t) = 2 for n = 5, t = 2 over F_3.
        assert!(check_lift_two_weight(q(3, 1), 2, 5, &bb).unwrap().is_none());
    }

    /// Regression pin: at m = 2 with odd t the stated arithmetic criterion
    /// is strictly narrower than the enumerated truth.  For q = 3, t = 3,
    /// n = 4, the base code C(3, 2, 2) has weights {2, 4} (full-weight
    /// words exist, so its zero-sets include the empty set, which is fixed
    /// by every translation), and the lifted C(27, 2, 182) is again
    /// two-weight with weights {2, 4} even though n != n0 * (q^2-1)/(q-1).
    /// The lifted code is still semiprimitive, so the audit is unaffected.
    #[test]
    fn lift_criterion_m2_odd_t_gap_pinned() {
        let bb = b();
        let base = CqmuCode::new(q(3, 1), 2, 2, &bb).unwrap();
        let (two, weights) = is_two_weight(&base);
        assert!(two && weights == vec![2, 4]);

        let c = check_lift_two_weight(q(3, 1), 3, 4, &bb).unwrap().unwrap();
        assert!(c.left, "lifted code enumerates as two-weight");
        assert!(!c.right, "arithmetic side rejects n = 4 != 8");
        assert!(c.furthermore_ok, "semiprimitivity still holds");
        assert!(!c.agrees());

        // The same lifted code reached from the prime field agrees: over
        // F_2 with t = 9, n = 3 equals n0 * (2^2-1)/(2-1) = 3.
        let c = check_lift_two_weight(q(2, 1), 9, 3, &bb).unwrap().unwrap();
        assert!(c.left && c.right && c.agrees());
    }

    #[test]
    fn spaced_criterion_instances() {
        let bb = b();
        // q = 9, (n, n0, r) = (16, 8, 2): valid triple, two-weight side
        // true.
        let c = check_spaced_two_weight(q(3, 2), 8, 2, &bb).unwrap().unwrap();
        assert!(c.left && c.right && c.agrees());

        // q = 2, (n, n0, r) = (9, 3, 3): valid triple with r = 3, so the
        // two-weight side must be false.
        let c = check_spaced_two_weight(q(2, 1), 3, 3, &bb).unwrap().unwrap();
        assert!(!c.left && !c.right && c.agrees());

        // (8, 4, 2) over F_3 fails ord_8(3) = 2 != 2 * ord_4(3): skipped.
        assert!(check_spaced_two_weight(q(3, 1), 4, 2, &bb).unwrap().is_none());
    }

    #[test]
    fn product_criterion_instances() {
        let bb = b();
        // q = 2, n = 3 (m = 2), s = 7 (t = 3): both factors one-weight and
        // min = 2, so the product on lcm = 21 is two-weight.
        let c = check_product_two_weight(q(2, 1), 3, 7, &bb).unwrap().unwrap();
        assert!(c.left && c.right && c.agrees());

        // q = 2, n = 5 (m = 4), s = 7 (t = 3): the two-weight factor has
        // dimension 4, so the product is not two-weight.
        let c = check_product_two_weight(q(2, 1), 5, 7, &bb).unwrap().unwrap();
        assert!(!c.left && !c.right && c.agrees());

        // gcd(m, t) != 1: skipped.
        assert!(check_product_two_weight(q(2, 1), 3, 5, &bb).unwrap().is_none());
    }

    #[test]
    fn audit_small_sweep() {
        let bb = b();
        let qs = [q(2, 1), q(3, 1), q(2, 2), q(5, 1), q(3, 2), q(2, 3)];
        let report = sw_audit(&qs, 1 << 14, &bb).unwrap();
        assert!(report.violations.is_empty(), "violations: {:?}", report.violations);
        assert_eq!(report.skipped, 0);

        let find = |n: u64, p: u64, e: u64| {
            report
                .rows
                .iter()
                .find(|r| r.n == n && r.q == q(p, e))
                .unwrap_or_else(|| panic!("missing audit row ({n}, {p}^{e})"))
        };
        // (5, F_2): two-weight {2, 4}, semiprimitive.
        let r = find(5, 2, 1);
        assert_eq!(r.weights, vec![2, 4]);
        assert_eq!(r.semiprimitive, Some(true));
        assert_eq!(r.status, AuditStatus::Pass);
        assert!(!r.exception);

        // (11, F_3): two-weight, not semiprimitive, the known exception.
        let r = find(11, 3, 1);
        assert_eq!(r.weights, vec![6, 9]);
        assert_eq!(r.semiprimitive, Some(false));
        assert!(r.exception);
        assert_eq!(r.status, AuditStatus::Pass);

        // (22, F_3): the doubled exception, also two-weight.
        let r = find(22, 3, 1);
        assert!(r.exception);
        assert_eq!(r.status, AuditStatus::Pass);

        // (15, F_2): one-weight, exempt.
        let r = find(15, 2, 1);
        assert_eq!(r.weights, vec![8]);
        assert_eq!(r.status, AuditStatus::Exempt);

        // (23, F_2): more than two weights, exempt.
        let r = find(23, 2, 1);
        assert!(r.weights.len() > 2);
        assert_eq!(r.status, AuditStatus::Exempt);

        let csv = report.to_csv();
        assert!(csv.starts_with("n,p,e,m,u,verdict,"));
        assert!(csv.contains("2|4"));
    }

    #[test]
    fn semiprimitive_witness_recorded_in_sweep() {
        // Every semiprimitive two-weight code found in a small sweep has a
        // recorded witness exponent within the order bound.
        let bb = b();
        let report = sw_audit(&[q(2, 1), q(3, 1)], 1 << 12, &bb).unwrap();
        let mut witnessed = 0u64;
        for r in &report.rows {
            if r.semiprimitive == Some(true) {
                let (ok, j) = is_semiprimitive(r.q, r.m, r.u).unwrap();
                assert!(ok);
                let j = j.unwrap();
                let ud = u_delta(r.q, r.m, r.u).unwrap();
                if ud > 2 {
                    // The recorded exponent actually witnesses p^j = -1.
                    assert_eq!(crate::numtheory::pow_mod(r.q.p % ud, j, ud), ud - 1);
                    witnessed += 1;
                }
            }
        }
        assert!(witnessed > 0, "sweep should hit nontrivial semiprimitive codes");
    }
}
