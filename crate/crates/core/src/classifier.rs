//! Standard / non-standard classification of pairs `(n, F_q)`.
//!
//! A non-degenerate irreducible cyclic code of length `n` over `F_q` is
//! *standard* when its permutation automorphism group is exactly the
//! order-`nm` group generated by the cyclic shift and the Frobenius map,
//! and *non-standard* otherwise.  Non-standardness depends only on the
//! pair `(n, q)`, and the non-standard pairs are precisely the closure of
//! five base families under four pair-level constructions:
//!
//! * base families: [`base_repetition`], [`base_fullgroup`], [`base_ovoid`],
//!   [`base_golay`], [`base_equally_spaced`];
//! * constructions: `Ext` (length extension inside `F_q^*`), `Lift` (scalar
//!   extension to `F_{q^t}`), `Descend` (trace descent from `F_{q^r}`), and
//!   `Product` (lcm combination with a coprime-order factor).
//!
//! [`classify`] decides membership in that closure by a memoized backward
//! search and returns a [`Derivation`] tree as evidence for every
//! non-standard verdict.  [`validate_derivation`] replays such a tree and
//! re-checks every hypothesis, without consulting the search.
//! [`classify_m2`] is an independent closed form for the `ord_n(q) = 2`
//! case, used purely as a cross-check.

use std::sync::OnceLock;

use dashmap::DashMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numtheory::{self, divisors, gcd, is_prime, lcm, mult_ord, FieldDesc};

/// One of the five base families of non-standard pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaseKind {
    /// Dual of a repetition code: `n` prime, `n >= 5`, prime field, and
    /// `ord_n(p) = n - 1`.  The symmetric group `S_n` acts.
    Repetition,
    /// Full multiplicative group: `n = q^m - 1` with `m >= 2` and
    /// `(m, q) != (2, 2)`.  All of `GL_m(q)` stabilizes `U`.
    FullGroup,
    /// Elliptic-quadric (ovoid) family: `n = (q - 1)(q^2 + 1)` with
    /// `ord_n(q) = 4`.
    Ovoid,
    /// The two Golay pairs `(23, F_2)` and `(11, F_3)`, with stabilizers
    /// `M_23` and `2.M_11`.
    Golay,
    /// Equally-spaced family: `n = n'k` with `k >= 2`, `n >= 6`, and
    /// `ord_n(q) = k * ord_{n'}(q)`; a wreath product acts.
    EquallySpaced { nprime: u64, k: u64 },
}

impl BaseKind {
    /// Stable name used in JSON serialization.
    pub fn name(&self) -> &'static str {
        match self {
            BaseKind::Repetition => "Repetition",
            BaseKind::FullGroup => "FullGroup",
            BaseKind::Ovoid => "Ovoid",
            BaseKind::Golay => "Golay",
            BaseKind::EquallySpaced { .. } => "EquallySpaced",
        }
    }
}

/// Evidence that a pair is non-standard: a tree whose leaves are base
/// families and whose internal nodes are construction steps.  Every node
/// records the pair it certifies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Derivation {
    /// `(n, q)` belongs to a base family directly.
    Base { n: u64, q: FieldDesc, kind: BaseKind },
    /// `(n, q)` extends the child `(n/u, q)` by a factor `u` of `n` with
    /// `u * gcd(n/u, q-1)` dividing `q - 1`.
    Ext { n: u64, q: FieldDesc, u: u64, child: Box<Derivation> },
    /// `(n, q)` with `q = q0^t` lifts the child `(n, q0)`, where `t > 1`
    /// divides `e` and `gcd(ord_n(q0), t) = 1`.
    Lift { n: u64, q: FieldDesc, t: u64, child: Box<Derivation> },
    /// `(n, q)` descends by trace from the child `(n, q^r)` for a divisor
    /// `r > 1` of `m = ord_n(q)`.
    Descend { n: u64, q: FieldDesc, r: u64, child: Box<Derivation> },
    /// `(n, q)` combines the child `(n1, q)` with a factor `s` of `n`:
    /// `lcm(n1, s) = n`, `t = ord_s(q) > 1`, and `gcd(ord_{n1}(q), t) = 1`.
    Product { n: u64, q: FieldDesc, n1: u64, s: u64, child: Box<Derivation> },
}

impl Derivation {
    /// The pair `(n, q)` this node certifies as non-standard.
    pub fn pair(&self) -> (u64, FieldDesc) {
        match *self {
            Derivation::Base { n, q, .. }
            | Derivation::Ext { n, q, .. }
            | Derivation::Lift { n, q, .. }
            | Derivation::Descend { n, q, .. }
            | Derivation::Product { n, q, .. } => (n, q),
        }
    }

    /// The child node, if this is a construction step.
    pub fn child(&self) -> Option<&Derivation> {
        match self {
            Derivation::Base { .. } => None,
            Derivation::Ext { child, .. }
            | Derivation::Lift { child, .. }
            | Derivation::Descend { child, .. }
            | Derivation::Product { child, .. } => Some(child),
        }
    }

    /// Number of nodes on the path from this node to its base leaf; a bare
    /// base family has depth 1.
    pub fn depth(&self) -> u64 {
        1 + self.child().map_or(0, Derivation::depth)
    }

    fn to_node(&self) -> DerivNode {
        let (n, q) = self.pair();
        let mut node = DerivNode {
            pair: [n, q.p, q.e],
            kind: String::new(),
            u: None,
            t: None,
            r: None,
            n1: None,
            s: None,
            nprime: None,
            k: None,
            child: None,
        };
        match self {
            Derivation::Base { kind, .. } => {
                node.kind = kind.name().to_owned();
                if let BaseKind::EquallySpaced { nprime, k } = kind {
                    node.nprime = Some(*nprime);
                    node.k = Some(*k);
                }
            }
            Derivation::Ext { u, child, .. } => {
                node.kind = "Ext".to_owned();
                node.u = Some(*u);
                node.child = Some(Box::new(child.to_node()));
            }
            Derivation::Lift { t, child, .. } => {
                node.kind = "Lift".to_owned();
                node.t = Some(*t);
                node.child = Some(Box::new(child.to_node()));
            }
            Derivation::Descend { r, child, .. } => {
                node.kind = "Descend".to_owned();
                node.r = Some(*r);
                node.child = Some(Box::new(child.to_node()));
            }
            Derivation::Product { n1, s, child, .. } => {
                node.kind = "Product".to_owned();
                node.n1 = Some(*n1);
                node.s = Some(*s);
                node.child = Some(Box::new(child.to_node()));
            }
        }
        node
    }

    fn from_node(node: &DerivNode) -> Result<Derivation> {
        let [n, p, e] = node.pair;
        let q = FieldDesc::new(p, e)?;
        let field = |name: &str, v: Option<u64>| -> Result<u64> {
            v.ok_or_else(|| {
                Error::InvalidInput(format!("derivation node '{}' missing '{name}'", node.kind))
            })
        };
        let child = |node: &DerivNode| -> Result<Box<Derivation>> {
            let inner = node.child.as_deref().ok_or_else(|| {
                Error::InvalidInput(format!("derivation node '{}' missing child", node.kind))
            })?;
            Ok(Box::new(Derivation::from_node(inner)?))
        };
        Ok(match node.kind.as_str() {
            "Repetition" => Derivation::Base { n, q, kind: BaseKind::Repetition },
            "FullGroup" => Derivation::Base { n, q, kind: BaseKind::FullGroup },
            "Ovoid" => Derivation::Base { n, q, kind: BaseKind::Ovoid },
            "Golay" => Derivation::Base { n, q, kind: BaseKind::Golay },
            "EquallySpaced" => Derivation::Base {
                n,
                q,
                kind: BaseKind::EquallySpaced {
                    nprime: field("nprime", node.nprime)?,
                    k: field("k", node.k)?,
                },
            },
            "Ext" => Derivation::Ext { n, q, u: field("u", node.u)?, child: child(node)? },
            "Lift" => Derivation::Lift { n, q, t: field("t", node.t)?, child: child(node)? },
            "Descend" => Derivation::Descend { n, q, r: field("r", node.r)?, child: child(node)? },
            "Product" => Derivation::Product {
                n,
                q,
                n1: field("n1", node.n1)?,
                s: field("s", node.s)?,
                child: child(node)?,
            },
            other => {
                return Err(Error::InvalidInput(format!("unknown derivation kind '{other}'")))
            }
        })
    }

    /// Serialize as nested JSON, e.g.
    /// `{"pair":[22,3,1],"kind":"Ext","u":2,"child":{"pair":[11,3,1],"kind":"Golay"}}`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_node()).expect("derivation serialization cannot fail")
    }

    /// Parse the JSON produced by [`Derivation::to_json`].  The result is
    /// syntactically well-formed but not yet checked; run
    /// [`validate_derivation`] to verify the hypotheses.
    pub fn from_json(text: &str) -> Result<Derivation> {
        let node: DerivNode = serde_json::from_str(text)
            .map_err(|err| Error::InvalidInput(format!("bad derivation JSON: {err}")))?;
        Derivation::from_node(&node)
    }
}

/// Flat JSON image of a [`Derivation`] node.
#[derive(Serialize, Deserialize)]
struct DerivNode {
    pair: [u64; 3],
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    u: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    t: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    r: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    n1: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    s: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    nprime: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    k: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    child: Option<Box<DerivNode>>,
}

/// Verdict for a pair: standard, or non-standard with evidence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Standard,
    NonStandard(Derivation),
}

/// Classification result for a pair `(n, q)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairClass {
    pub n: u64,
    pub q: FieldDesc,
    /// `m = ord_n(q)`, the dimension of the code.
    pub m: u64,
    /// `n0 = gcd(n, q - 1)`.
    pub n0: u64,
    /// `n1 = n / n0`, the number of distinct `F_q`-lines through `U`.
    pub n1: u64,
    pub verdict: Verdict,
}

impl PairClass {
    pub fn is_nonstandard(&self) -> bool {
        matches!(self.verdict, Verdict::NonStandard(_))
    }

    pub fn derivation(&self) -> Option<&Derivation> {
        match &self.verdict {
            Verdict::Standard => None,
            Verdict::NonStandard(d) => Some(d),
        }
    }

    /// Derivation depth: 0 for standard pairs, node count otherwise.
    pub fn depth(&self) -> u64 {
        self.derivation().map_or(0, Derivation::depth)
    }

    /// One CSV row: `n,p,e,m,verdict,derivation-depth`.
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.n,
            self.q.p,
            self.q.e,
            self.m,
            if self.is_nonstandard() { "nonstandard" } else { "standard" },
            self.depth()
        )
    }

    /// JSON object with the verdict and (for non-standard pairs) the
    /// derivation tree.
    pub fn to_json(&self) -> serde_json::Value {
        let mut obj = serde_json::json!({
            "n": self.n,
            "p": self.q.p,
            "e": self.q.e,
            "m": self.m,
            "n0": self.n0,
            "n1": self.n1,
            "verdict": if self.is_nonstandard() { "nonstandard" } else { "standard" },
            "depth": self.depth(),
        });
        if let Some(d) = self.derivation() {
            obj["derivation"] =
                serde_json::from_str(&d.to_json()).expect("derivation JSON round-trip");
        }
        obj
    }
}

/// Is `(n, q)` the dual of a repetition code with the full symmetric group
/// acting?  Requires a prime field (`e = 1`), `n` a prime `>= 5`, and `p` a
/// primitive root mod `n`.
pub fn base_repetition(n: u64, q: FieldDesc) -> bool {
    q.e == 1 && n >= 5 && is_prime(n) && mult_ord(n, q).map_or(false, |m| m == n - 1)
}

/// Exact test for `n + 1 == p^k`, overflow-free for every `u64` input.
fn is_pow_minus_one(n: u64, p: u64, k: u64) -> bool {
    let target = n as u128 + 1;
    if k == 0 {
        return target == 1;
    }
    let mut acc: u128 = 1;
    for _ in 0..k {
        acc *= p as u128; // bounded: acc <= p * target < 2^129 never reached, loop exits first
        if acc > target {
            return false;
        }
    }
    acc == target
}

/// Is `U_{n,q}` the full multiplicative group of `F_{q^m}`?  True iff
/// `n = q^m - 1` with `m = ord_n(q) >= 2` and `(m, q) != (2, 2)`.
pub fn base_fullgroup(n: u64, q: FieldDesc) -> bool {
    let Ok(m) = mult_ord(n, q) else { return false };
    if m < 2 {
        return false;
    }
    if m == 2 && q.p == 2 && q.e == 1 {
        return false;
    }
    let Some(em) = q.e.checked_mul(m) else { return false };
    is_pow_minus_one(n, q.p, em)
}

/// Elliptic-quadric family: `n = (q - 1)(q^2 + 1)` with `ord_n(q) = 4`.
pub fn base_ovoid(n: u64, q: FieldDesc) -> bool {
    let Some(qv) = q.value() else { return false };
    if qv > 1 << 22 {
        // (q - 1)(q^2 + 1) > 2^64 > n for q beyond 2^22.
        return false;
    }
    let qw = qv as u128;
    if (qw - 1) * (qw * qw + 1) != n as u128 {
        return false;
    }
    mult_ord(n, q).map_or(false, |m| m == 4)
}

/// The two Golay pairs `(23, F_2)` and `(11, F_3)` — exact match only.
pub fn base_golay(n: u64, q: FieldDesc) -> bool {
    q.e == 1 && ((n, q.p) == (23, 2) || (n, q.p) == (11, 3))
}

/// Smallest `k >= 2` such that `n = n'k` with `ord_n(q) = k * ord_{n'}(q)`,
/// provided `n >= 6`; returns `(n', k)`.  Pairs with `n < 6` satisfying the
/// order equation are standard and excluded here.
pub fn base_equally_spaced(n: u64, q: FieldDesc) -> Option<(u64, u64)> {
    if n < 6 || gcd(n, q.p) != 1 {
        return None;
    }
    for k in divisors(n) {
        if k < 2 {
            continue;
        }
        let nprime = n / k;
        if numtheory::equally_spaced_ok(n, nprime, q).unwrap_or(false) {
            return Some((nprime, k));
        }
    }
    None
}

/// All base families matched by `(n, q)`, in search order.  Base families
/// are not mutually exclusive (e.g. `(5, F_2)` is both a repetition and an
/// ovoid pair); audits record every match.
pub fn matching_bases(n: u64, q: FieldDesc) -> Vec<BaseKind> {
    let mut kinds = Vec::new();
    if base_repetition(n, q) {
        kinds.push(BaseKind::Repetition);
    }
    if base_fullgroup(n, q) {
        kinds.push(BaseKind::FullGroup);
    }
    if base_ovoid(n, q) {
        kinds.push(BaseKind::Ovoid);
    }
    if base_golay(n, q) {
        kinds.push(BaseKind::Golay);
    }
    if let Some((nprime, k)) = base_equally_spaced(n, q) {
        kinds.push(BaseKind::EquallySpaced { nprime, k });
    }
    kinds
}

/// A candidate reverse-construction edge from `(n, q)` to a child pair.
struct Edge {
    kind: EdgeKind,
    child_n: u64,
    child_q: FieldDesc,
    child_m: u64,
}

enum EdgeKind {
    Ext { u: u64 },
    Lift { t: u64 },
    Product { n1: u64, s: u64 },
    Descend { r: u64 },
}

impl Edge {
    fn wrap(&self, n: u64, q: FieldDesc, child: Derivation) -> Derivation {
        let child = Box::new(child);
        match self.kind {
            EdgeKind::Ext { u } => Derivation::Ext { n, q, u, child },
            EdgeKind::Lift { t } => Derivation::Lift { n, q, t, child },
            EdgeKind::Product { n1, s } => Derivation::Product { n, q, n1, s, child },
            EdgeKind::Descend { r } => Derivation::Descend { n, q, r, child },
        }
    }
}

/// Enumerate, in deterministic search order (Ext, Lift, Product, Descend,
/// each ascending), every construction edge whose hypotheses hold at
/// `(n, q)`.  Every edge strictly decreases `(n, m, e)` lexicographically;
/// this is asserted for each edge and guarantees termination.
fn candidate_edges(n: u64, q: FieldDesc, m: u64) -> Vec<Edge> {
    let mut edges = Vec::new();
    let divs = divisors(n);

    // Ext: strip a factor u of n; requires u * gcd(n/u, q-1) to divide q-1.
    for &u in &divs {
        if u < 2 {
            continue;
        }
        let n1 = n / u;
        let g = q.gcd_with_qm1(n1);
        let Some(gu) = g.checked_mul(u) else { continue };
        if !q.divides_qm1(gu) {
            continue;
        }
        let child_m = mult_ord(n1, q).expect("divisor of n is coprime to p");
        edges.push(Edge { kind: EdgeKind::Ext { u }, child_n: n1, child_q: q, child_m });
    }

    // Lift: write q = q0^t with t > 1 dividing e and gcd(ord_n(q0), t) = 1.
    for t in divisors(q.e) {
        if t < 2 {
            continue;
        }
        let q0 = FieldDesc { p: q.p, e: q.e / t };
        let m0 = mult_ord(n, q0).expect("same characteristic");
        if gcd(m0, t) != 1 {
            continue;
        }
        debug_assert_eq!(m0, m, "coprime lift preserves the order");
        edges.push(Edge { kind: EdgeKind::Lift { t }, child_n: n, child_q: q0, child_m: m0 });
    }

    // Product: split n = lcm(n1, s) with t = ord_s(q) > 1 coprime to
    // ord_{n1}(q).
    for &n1 in &divs {
        if n1 == n {
            continue;
        }
        let m1 = mult_ord(n1, q).expect("divisor of n is coprime to p");
        for &s in &divs {
            if s < 2 || lcm(n1, s) != n {
                continue;
            }
            let t = mult_ord(s, q).expect("divisor of n is coprime to p");
            if t < 2 || gcd(m1, t) != 1 {
                continue;
            }
            edges.push(Edge {
                kind: EdgeKind::Product { n1, s },
                child_n: n1,
                child_q: q,
                child_m: m1,
            });
        }
    }

    // Descend: pass to the extension field F_{q^r} for divisors r > 1 of m.
    for r in divisors(m) {
        if r < 2 {
            continue;
        }
        let Some(er) = q.e.checked_mul(r) else { continue };
        let qr = FieldDesc { p: q.p, e: er };
        let mr = mult_ord(n, qr).expect("same characteristic");
        debug_assert_eq!(mr, m / r, "order divides out exactly");
        edges.push(Edge { kind: EdgeKind::Descend { r }, child_n: n, child_q: qr, child_m: mr });
    }

    for edge in &edges {
        assert!(
            (edge.child_n, edge.child_m, edge.child_q.e) < (n, m, q.e),
            "construction edge must shrink (n, m, e): ({n}, {m}, {}) -> ({}, {}, {})",
            q.e,
            edge.child_n,
            edge.child_m,
            edge.child_q.e
        );
    }
    edges
}

type MemoKey = (u64, u64, u64);

fn memo() -> &'static DashMap<MemoKey, Option<Derivation>> {
    static MEMO: OnceLock<DashMap<MemoKey, Option<Derivation>>> = OnceLock::new();
    MEMO.get_or_init(DashMap::new)
}

/// Memoized backward search; `None` means standard.  Safe under concurrent
/// use: all writers for a key compute the identical value.
fn search(n: u64, q: FieldDesc, m: u64) -> Option<Derivation> {
    let key = (n, q.p, q.e);
    if let Some(hit) = memo().get(&key) {
        return hit.clone();
    }
    let result = search_uncached(n, q, m);
    memo().insert(key, result.clone());
    result
}

fn search_uncached(n: u64, q: FieldDesc, m: u64) -> Option<Derivation> {
    debug_assert_eq!(gcd(n, q.p), 1);
    // Short lengths are always standard, and so are one-dimensional codes:
    // for m = 1 the stabilizer of U inside GL_1(q) = F_q^* is U itself, of
    // order n = n * m (tested against the brute-force oracle).
    if n <= 3 || m == 1 {
        return None;
    }

    if base_repetition(n, q) {
        return Some(Derivation::Base { n, q, kind: BaseKind::Repetition });
    }
    if base_fullgroup(n, q) {
        return Some(Derivation::Base { n, q, kind: BaseKind::FullGroup });
    }
    if base_ovoid(n, q) {
        return Some(Derivation::Base { n, q, kind: BaseKind::Ovoid });
    }
    if base_golay(n, q) {
        return Some(Derivation::Base { n, q, kind: BaseKind::Golay });
    }
    if let Some((nprime, k)) = base_equally_spaced(n, q) {
        return Some(Derivation::Base { n, q, kind: BaseKind::EquallySpaced { nprime, k } });
    }

    for edge in candidate_edges(n, q, m) {
        if let Some(child) = search(edge.child_n, edge.child_q, edge.child_m) {
            return Some(edge.wrap(n, q, child));
        }
    }
    None
}

/// Decide whether `(n, q)` is standard or non-standard.  Pure and
/// deterministic; results are memoized process-wide on `(n, p, e)`.
pub fn classify(n: u64, q: FieldDesc) -> Result<PairClass> {
    if n == 0 {
        return Err(Error::InvalidInput("length n must be >= 1".into()));
    }
    if gcd(n, q.p) != 1 {
        return Err(Error::NotCoprime { n, p: q.p });
    }
    let m = mult_ord(n, q)?;
    let n0 = q.gcd_with_qm1(n);
    let n1 = n / n0;
    let verdict = match search(n, q, m) {
        Some(d) => Verdict::NonStandard(d),
        None => Verdict::Standard,
    };
    Ok(PairClass { n, q, m, n0, n1, verdict })
}

/// Every top-level route to non-standardness for `(n, q)`: all matching
/// base families, plus one derivation per construction edge whose child is
/// non-standard (children use the first-found derivation, they are not
/// expanded exhaustively).  Empty iff the pair is standard.
pub fn classify_exhaustive(n: u64, q: FieldDesc) -> Result<Vec<Derivation>> {
    if n == 0 {
        return Err(Error::InvalidInput("length n must be >= 1".into()));
    }
    if gcd(n, q.p) != 1 {
        return Err(Error::NotCoprime { n, p: q.p });
    }
    let m = mult_ord(n, q)?;
    let mut out = Vec::new();
    if n <= 3 || m == 1 {
        return Ok(out);
    }
    for kind in matching_bases(n, q) {
        out.push(Derivation::Base { n, q, kind });
    }
    for edge in candidate_edges(n, q, m) {
        if let Some(child) = search(edge.child_n, edge.child_q, edge.child_m) {
            out.push(edge.wrap(n, q, child));
        }
    }
    Ok(out)
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

/// Replay a [`Derivation`] tree and re-check every hypothesis: base
/// predicates at the leaf, construction side conditions at each step,
/// consistency of each node's pair with its child's, and strict decrease
/// of `(n, m, e)` along every edge.  Trusts nothing from the search.
pub fn validate_derivation(d: &Derivation) -> Result<()> {
    let (n, q) = d.pair();
    if n == 0 {
        return Err(invalid("derivation pair has n = 0"));
    }
    if gcd(n, q.p) != 1 {
        return Err(Error::NotCoprime { n, p: q.p });
    }
    let m = mult_ord(n, q)?;
    if n <= 3 || m == 1 {
        return Err(invalid(format!(
            "({n}, {q}) has n <= 3 or ord_n(q) = 1 and is standard; derivation impossible"
        )));
    }

    let check = |ok: bool, msg: &str| -> Result<()> {
        if ok {
            Ok(())
        } else {
            Err(invalid(format!("({n}, {q}): {msg}")))
        }
    };

    match d {
        Derivation::Base { kind, .. } => match kind {
            BaseKind::Repetition => check(base_repetition(n, q), "repetition predicate fails"),
            BaseKind::FullGroup => check(base_fullgroup(n, q), "full-group predicate fails"),
            BaseKind::Ovoid => check(base_ovoid(n, q), "ovoid predicate fails"),
            BaseKind::Golay => check(base_golay(n, q), "Golay predicate fails"),
            BaseKind::EquallySpaced { nprime, k } => {
                check(n >= 6, "equally-spaced family needs n >= 6")?;
                check(*k >= 2, "equally-spaced family needs k >= 2")?;
                check(
                    nprime.checked_mul(*k) == Some(n),
                    "equally-spaced factorization n = n'k fails",
                )?;
                check(
                    numtheory::equally_spaced_ok(n, *nprime, q)?,
                    "equally-spaced order equation fails",
                )
            }
        },
        Derivation::Ext { u, child, .. } => {
            let (cn, cq) = child.pair();
            check(cq == q, "Ext must not change the field")?;
            check(*u >= 2, "Ext needs u >= 2")?;
            check(cn.checked_mul(*u) == Some(n), "Ext needs n = u * child_n")?;
            let g = q.gcd_with_qm1(cn);
            let gu = g.checked_mul(*u).ok_or_else(|| invalid("Ext u * gcd overflow"))?;
            check(q.divides_qm1(gu), "Ext needs u * gcd(child_n, q-1) | q-1")?;
            check_edge(n, m, q, child)?;
            validate_derivation(child)
        }
        Derivation::Lift { t, child, .. } => {
            let (cn, cq) = child.pair();
            check(cn == n, "Lift must not change the length")?;
            check(cq.p == q.p, "Lift must not change the characteristic")?;
            check(*t >= 2, "Lift needs t >= 2")?;
            check(cq.e.checked_mul(*t) == Some(q.e), "Lift needs e = t * child_e")?;
            let m0 = mult_ord(n, cq)?;
            check(gcd(m0, *t) == 1, "Lift needs gcd(ord_n(q0), t) = 1")?;
            check_edge(n, m, q, child)?;
            validate_derivation(child)
        }
        Derivation::Descend { r, child, .. } => {
            let (cn, cq) = child.pair();
            check(cn == n, "Descend must not change the length")?;
            check(cq.p == q.p, "Descend must not change the characteristic")?;
            check(*r >= 2, "Descend needs r >= 2")?;
            check(q.e.checked_mul(*r) == Some(cq.e), "Descend needs child_e = e * r")?;
            check(m % *r == 0, "Descend needs r | ord_n(q)")?;
            check_edge(n, m, q, child)?;
            validate_derivation(child)
        }
        Derivation::Product { n1, s, child, .. } => {
            let (cn, cq) = child.pair();
            check(cq == q, "Product must not change the field")?;
            check(cn == *n1, "Product child length must equal n1")?;
            check(*n1 < n, "Product needs n1 < n")?;
            check(*n1 >= 1 && n % *n1 == 0, "Product needs n1 | n")?;
            check(*s >= 2 && n % *s == 0, "Product needs s | n with s >= 2")?;
            check(lcm(*n1, *s) == n, "Product needs lcm(n1, s) = n")?;
            let t = mult_ord(*s, q)?;
            check(t >= 2, "Product needs ord_s(q) > 1")?;
            let m1 = mult_ord(*n1, q)?;
            check(gcd(m1, t) == 1, "Product needs gcd(ord_n1(q), ord_s(q)) = 1")?;
            check_edge(n, m, q, child)?;
            validate_derivation(child)
        }
    }
}

/// Strict lexicographic decrease of `(n, m, e)` across a parent->child edge.
fn check_edge(n: u64, m: u64, q: FieldDesc, child: &Derivation) -> Result<()> {
    let (cn, cq) = child.pair();
    let cm = mult_ord(cn, cq)?;
    if (cn, cm, cq.e) < (n, m, q.e) {
        Ok(())
    } else {
        Err(invalid(format!(
            "edge does not shrink (n, m, e): ({n}, {m}, {}) -> ({cn}, {cm}, {})",
            q.e, cq.e
        )))
    }
}

/// Which closed-form case certifies an `ord_n(q) = 2` pair non-standard.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum M2Case {
    /// `n = q^2 - 1 > 3`: the full-group family.
    FullGroup,
    /// `n = 2 n0 > 4` with `(q - 1)/n0` odd: the equally-spaced family
    /// with `k = 2`.
    TwiceN0,
    /// `n = k (q0^2 - 1)` with `q = q0^t`, `t > 1` odd, `q0 > 2`, and
    /// `k | (q - 1)/(q0 - 1)`: a lift of a full-group pair followed by an
    /// extension.  `q0 = p^q0e`.
    LiftedExt { q0e: u64, t: u64, k: u64 },
}

/// Closed-form classification result for an `ord_n(q) = 2` pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct M2Class {
    pub n: u64,
    pub q: FieldDesc,
    pub n0: u64,
    /// `Some(case)` iff the pair is non-standard.
    pub case: Option<M2Case>,
}

impl M2Class {
    pub fn is_nonstandard(&self) -> bool {
        self.case.is_some()
    }
}

/// `1 + b + ... + b^(t-1) mod k`.
fn geom_sum_mod(b: u64, t: u64, k: u64) -> u64 {
    if k == 1 {
        return 0;
    }
    let mut sum = 0u64;
    let mut pw = 1u64 % k;
    for _ in 0..t {
        sum = (sum + pw) % k;
        pw = numtheory::mul_mod(pw, b % k, k);
    }
    sum
}

/// Independent closed-form verdict for pairs with `ord_n(q) = 2`; used only
/// as a cross-check of [`classify`], never consulted by it.  A pair is
/// non-standard iff one of the three [`M2Case`]s matches.
pub fn classify_m2(n: u64, q: FieldDesc) -> Result<M2Class> {
    if n == 0 {
        return Err(invalid("length n must be >= 1"));
    }
    if gcd(n, q.p) != 1 {
        return Err(Error::NotCoprime { n, p: q.p });
    }
    let m = mult_ord(n, q)?;
    if m != 2 {
        return Err(invalid(format!("classify_m2 requires ord_n(q) = 2, got {m}")));
    }
    let n0 = q.gcd_with_qm1(n);
    Ok(M2Class { n, q, n0, case: m2_case(n, q, n0) })
}

fn m2_case(n: u64, q: FieldDesc, n0: u64) -> Option<M2Case> {
    // Case 1: n = q^2 - 1 > 3.
    if n > 3 {
        if let Some(e2) = q.e.checked_mul(2) {
            if is_pow_minus_one(n, q.p, e2) {
                return Some(M2Case::FullGroup);
            }
        }
    }
    // Case 2: n = 2 n0 > 4 with (q - 1)/n0 odd.  The parity of (q - 1)/n0
    // reads off from q - 1 mod 2 n0: it is n0 for an odd cofactor.
    if n > 4 && n0.checked_mul(2) == Some(n) && q.qm1_residue(n) == n0 {
        return Some(M2Case::TwiceN0);
    }
    // Case 3: n = k (q0^2 - 1) with q = q0^t, t > 1 odd, q0 > 2 (so that the
    // source pair (q0^2 - 1, q0) is itself non-standard by case 1), and
    // k | (q - 1)/(q0 - 1) = 1 + q0 + ... + q0^(t-1).
    for t in divisors(q.e) {
        if t < 2 || t % 2 == 0 {
            continue;
        }
        let q0 = FieldDesc { p: q.p, e: q.e / t };
        let Some(q0v) = q0.value() else { continue };
        if q0v <= 2 {
            continue;
        }
        let Some(block) = q0v.checked_mul(q0v).map(|x| x - 1) else { continue };
        if n % block != 0 {
            continue;
        }
        let k = n / block;
        if geom_sum_mod(q0v, t, k) == 0 {
            return Some(M2Case::LiftedExt { q0e: q0.e, t, k });
        }
    }
    None
}
