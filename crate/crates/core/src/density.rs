//! Density of non-standard pairs: for a fixed field size `p^i`, the
//! proportion `R_{p^i}(N)` of lengths `n <= N` coprime to `p` whose pair
//! `(n, p^i)` is non-standard.
//!
//! Counts are exact integers from the classifier (no oracle involvement);
//! ratios are rendered from the exact fraction with half-to-even rounding.
//! The sweep is parallelized over `n`; `classify` is pure and memoized, so
//! results are bit-identical for any worker count.

use rayon::prelude::*;

use crate::classifier::{classify, validate_derivation};
use crate::error::{Error, Result};
use crate::numtheory::{gcd, FieldDesc};

/// One table cell: the exact count of non-standard lengths up to `N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityRow {
    pub p: u64,
    pub i: u64,
    pub n_max: u64,
    /// `#{n <= N : gcd(n, p) = 1, (n, p^i) non-standard}`.
    pub numerator: u64,
    /// `#{n <= N : gcd(n, p) = 1}`, counting from `n = 1`.
    pub denominator: u64,
}

impl DensityRow {
    /// Decimal rendering of `numerator/denominator`, rounded half-to-even
    /// at `precision` digits, trailing zeros trimmed.
    pub fn ratio_decimal(&self, precision: u32) -> String {
        render_ratio(self.numerator, self.denominator, precision)
    }

    /// The display precision used for a bound `N`: the number of digits of
    /// `N` minus one (3 for 10^3, 4 for 10^4, ...).
    pub fn default_precision(&self) -> u32 {
        default_precision(self.n_max)
    }
}

pub fn default_precision(n_max: u64) -> u32 {
    n_max.max(2).ilog10().max(1)
}

fn render_ratio(num: u64, den: u64, precision: u32) -> String {
    assert!(den > 0, "empty denominator");
    let scale = 10u128.pow(precision);
    let scaled = num as u128 * scale;
    let q = scaled / den as u128;
    let r = scaled % den as u128;
    let rounded = match (2 * r).cmp(&(den as u128)) {
        std::cmp::Ordering::Less => q,
        std::cmp::Ordering::Greater => q + 1,
        std::cmp::Ordering::Equal => {
            if q % 2 == 0 {
                q
            } else {
                q + 1
            }
        }
    };
    let int = rounded / scale;
    let mut frac = format!("{:0width$}", rounded % scale, width = precision as usize);
    while frac.ends_with('0') {
        frac.pop();
    }
    if frac.is_empty() {
        format!("{int}")
    } else {
        format!("{int}.{frac}")
    }
}

/// Exact density counts for the pair family `(n, p^i)`, `n <= n_max`.
///
/// Every length counted non-standard has its stored derivation replayed
/// against the construction hypotheses before it is accepted.
pub fn density(p: u64, i: u64, n_max: u64) -> Result<DensityRow> {
    if n_max == 0 {
        return Err(Error::InvalidInput("density needs N >= 1".into()));
    }
    let q = FieldDesc::new(p, i)?;
    let (numerator, denominator) = (1..=n_max)
        .into_par_iter()
        .filter(|&n| gcd(n, p) == 1)
        .map(|n| {
            let cls = classify(n, q).expect("coprime pair classifies");
            if let Some(d) = cls.derivation() {
                validate_derivation(d).expect("stored derivation replays");
                (1u64, 1u64)
            } else {
                (0u64, 1u64)
            }
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    Ok(DensityRow { p, i, n_max, numerator, denominator })
}

/// A grid of densities: all exponents crossed with all bounds.
#[derive(Debug, Clone)]
pub struct DensityTable {
    pub p: u64,
    pub exps: Vec<u64>,
    pub bounds: Vec<u64>,
    /// Row-major: `rows[e][b]` is exponent `exps[e]` at bound `bounds[b]`.
    pub rows: Vec<Vec<DensityRow>>,
}

pub fn density_table(p: u64, exps: &[u64], bounds: &[u64]) -> Result<DensityTable> {
    let mut rows = Vec::with_capacity(exps.len());
    for &i in exps {
        let mut row = Vec::with_capacity(bounds.len());
        for &n_max in bounds {
            row.push(density(p, i, n_max)?);
        }
        rows.push(row);
    }
    Ok(DensityTable { p, exps: exps.to_vec(), bounds: bounds.to_vec(), rows })
}

impl DensityTable {
    /// CSV: `p,i,N,numerator,denominator,ratio_decimal`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("p,i,N,numerator,denominator,ratio_decimal\n");
        for row in &self.rows {
            for cell in row {
                out.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    cell.p,
                    cell.i,
                    cell.n_max,
                    cell.numerator,
                    cell.denominator,
                    cell.ratio_decimal(cell.default_precision())
                ));
            }
        }
        out
    }

    /// Markdown table: one row per exponent, one column per bound.
    pub fn to_markdown(&self) -> String {
        let mut out = String::from("| ratio |");
        for &b in &self.bounds {
            out.push_str(&format!(" N = {b} |"));
        }
        out.push('\n');
        out.push_str("|---|");
        for _ in &self.bounds {
            out.push_str("---|");
        }
        out.push('\n');
        for (row, &i) in self.rows.iter().zip(&self.exps) {
            out.push_str(&format!("| R_{{{}^{}}} |", self.p, i));
            for cell in row {
                out.push_str(&format!(" {} |", cell.ratio_decimal(cell.default_precision())));
            }
            out.push('\n');
        }
        out
    }
}
