//! Three-way cross-validation: for every pair the budgets can afford, the
//! closure classifier, the stabilizer-order oracle, and the recurrence
//! -witness scan must agree on standard vs non-standard.
//!
//! The oracle leg decides the boolean `|L(n, q)| > n·m` (early-exit
//! search); the witness leg reports whether a non-cyclic arrangement
//! exists.  Either leg may come back infeasible within budget; such pairs
//! are recorded as skipped for that leg, never guessed.  A pair counts as
//! *feasible* when at least one independent leg produced a verdict.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::budget::Budgets;
use crate::classifier::classify;
use crate::error::{Error, Result};
use crate::numtheory::{divisors, mult_ord, FieldDesc};
use crate::oracle::{lrs_witness, stabilizer_exceeds_standard};

/// One cross-validated pair.  `None` in an oracle column means that leg
/// exceeded its budget and contributes no evidence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AgreeOutcome {
    pub n: u64,
    pub q: FieldDesc,
    pub m: u64,
    /// Closure verdict: `true` = non-standard.
    pub classifier_ns: bool,
    /// `|L(n,q)| > n·m`, when the stabilizer search finished.
    pub oracle_ns: Option<bool>,
    /// Witness present, when the recurrence scan finished.
    pub lrs_ns: Option<bool>,
}

impl AgreeOutcome {
    /// At least one independent leg returned a verdict.
    pub fn feasible(&self) -> bool {
        self.oracle_ns.is_some() || self.lrs_ns.is_some()
    }

    /// Every leg that returned a verdict matches the classifier.
    pub fn agrees(&self) -> bool {
        self.oracle_ns.is_none_or(|o| o == self.classifier_ns)
            && self.lrs_ns.is_none_or(|w| w == self.classifier_ns)
    }

    fn leg_str(v: Option<bool>) -> &'static str {
        match v {
            Some(true) => "nonstandard",
            Some(false) => "standard",
            None => "infeasible",
        }
    }
}

/// Result of [`agree_sweep`]: all attempted pairs in `(p, e, n)` order.
#[derive(Debug, Clone)]
pub struct AgreeReport {
    pub qm_limit: u64,
    pub outcomes: Vec<AgreeOutcome>,
}

impl AgreeReport {
    pub fn feasible_count(&self) -> usize {
        self.outcomes.iter().filter(|o| o.feasible()).count()
    }

    pub fn disagreements(&self) -> Vec<&AgreeOutcome> {
        self.outcomes.iter().filter(|o| !o.agrees()).collect()
    }

    /// CSV: `n,p,e,m,classifier,oracle,lrs,feasible,agree`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,p,e,m,classifier,oracle,lrs,feasible,agree\n");
        for o in &self.outcomes {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{}\n",
                o.n,
                o.q.p,
                o.q.e,
                o.m,
                if o.classifier_ns { "nonstandard" } else { "standard" },
                AgreeOutcome::leg_str(o.oracle_ns),
                AgreeOutcome::leg_str(o.lrs_ns),
                o.feasible(),
                o.agrees(),
            ));
        }
        out
    }

    pub fn summary(&self) -> String {
        format!(
            "{} pairs attempted, {} feasible, {} disagreements",
            self.outcomes.len(),
            self.feasible_count(),
            self.disagreements().len()
        )
    }
}

/// All lengths worth attempting for `q`: divisors of `q^j - 1` over every
/// `j` with `q^j <= qm_limit` (these are exactly the `n` with
/// `q^{ord_n(q)} <= qm_limit`, plus nothing else).
fn lengths_for(q: FieldDesc, qm_limit: u64) -> Vec<u64> {
    let mut ns = BTreeSet::new();
    let mut j = 1u64;
    while let Some(qj) = q.pow_value(j) {
        if qj > qm_limit {
            break;
        }
        for d in divisors(qj - 1) {
            ns.insert(d);
        }
        j += 1;
    }
    ns.insert(1);
    ns.into_iter().collect()
}

/// Run the three legs over every pair `(n, q)` with `q` in `qs` and
/// `q^{ord_n(q)} <= qm_limit`.  Deterministic: outcomes sorted by
/// `(p, e, n)` regardless of worker count.
pub fn agree_sweep(qs: &[FieldDesc], qm_limit: u64, budgets: &Budgets) -> Result<AgreeReport> {
    let mut pairs: Vec<(u64, FieldDesc)> = Vec::new();
    for &q in qs {
        for n in lengths_for(q, qm_limit) {
            pairs.push((n, q));
        }
    }
    pairs.sort_by_key(|&(n, q)| (q.p, q.e, n));
    pairs.dedup();

    let outcomes: Vec<AgreeOutcome> = pairs
        .par_iter()
        .map(|&(n, q)| -> Result<AgreeOutcome> {
            let m = mult_ord(n, q)?;
            let classifier_ns = classify(n, q)?.is_nonstandard();
            let oracle_ns = match stabilizer_exceeds_standard(n, q, budgets) {
                Ok(v) => Some(v),
                Err(Error::Infeasible(_)) => None,
                Err(e) => return Err(e),
            };
            let lrs_ns = match lrs_witness(n, q, budgets) {
                Ok(w) => Some(w.is_some()),
                Err(Error::Infeasible(_)) => None,
                Err(e) => return Err(e),
            };
            Ok(AgreeOutcome { n, q, m, classifier_ns, oracle_ns, lrs_ns })
        })
        .collect::<Result<_>>()?;

    Ok(AgreeReport { qm_limit, outcomes })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: u64, e: u64) -> FieldDesc {
        FieldDesc::new(p, e).unwrap()
    }

    #[test]
    fn small_binary_ternary_sweep_agrees() {
        let budgets = Budgets { oracle_nodes: 20_000_000, lrs_steps: 2_000_000, ..Budgets::default() };
        let report = agree_sweep(&[q(2, 1), q(3, 1), q(2, 2)], 1 << 11, &budgets).unwrap();
        assert!(report.feasible_count() >= 40, "{}", report.summary());
        assert!(report.disagreements().is_empty(), "{}", report.to_csv());
        // Spot checks: the known poles of each verdict are present & feasible.
        let find = |n: u64, p: u64, e: u64| {
            report
                .outcomes
                .iter()
                .find(|o| o.n == n && o.q.p == p && o.q.e == e)
                .unwrap_or_else(|| panic!("({n}, {p}^{e}) missing"))
        };
        let golay = find(23, 2, 1);
        assert!(golay.classifier_ns && golay.oracle_ns == Some(true));
        let rep5 = find(5, 2, 1);
        assert!(rep5.classifier_ns && rep5.oracle_ns == Some(true));
        let std3 = find(3, 2, 1);
        assert!(!std3.classifier_ns && std3.oracle_ns == Some(false));
        let std5f4 = find(5, 2, 2);
        assert!(!std5f4.classifier_ns && std5f4.oracle_ns == Some(false));
        assert_eq!(std5f4.lrs_ns, Some(false));
    }

    #[test]
    fn lengths_cover_exactly_the_affordable_orders() {
        let ns = lengths_for(q(2, 1), 1 << 6);
        // Divisors of 2^j - 1 for j = 1..6: {1, 3, 7, 15, 5, 31, 63, 21, 9}.
        assert_eq!(ns, vec![1, 3, 5, 7, 9, 15, 21, 31, 63]);
        for &n in &ns {
            let m = mult_ord(n, q(2, 1)).unwrap();
            assert!(2u64.pow(m as u32) <= 64);
        }
    }

    #[test]
    fn csv_shape() {
        let budgets = Budgets::default();
        let report = agree_sweep(&[q(2, 1)], 1 << 4, &budgets).unwrap();
        let csv = report.to_csv();
        assert!(csv.starts_with("n,p,e,m,classifier,oracle,lrs,feasible,agree\n"));
        assert_eq!(csv.lines().count(), 1 + report.outcomes.len());
        assert!(csv.contains("15,2,1,4,nonstandard,nonstandard,nonstandard,true,true"));
    }
}
