//! Dense polynomials over an [`ExtField`], coefficients stored as element
//! codes low-to-high. Operations take the field explicitly; a `Poly` is
//! only meaningful relative to the field it was built over.

use super::ExtField;
use crate::error::{Error, Result};
use crate::numtheory::divisors;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    /// Low-to-high, no trailing zeros; the zero polynomial is empty.
    pub coeffs: Vec<u64>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![1] }
    }

    pub fn x() -> Self {
        Poly { coeffs: vec![0, 1] }
    }

    pub fn from_coeffs(mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// `x^n - 1` over the given field.
    pub fn x_pow_minus_one(n: u64, f: &ExtField) -> Self {
        let mut coeffs = vec![0u64; n as usize + 1];
        coeffs[0] = f.neg(1);
        coeffs[n as usize] = 1;
        Poly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u64 {
        *self.coeffs.last().expect("leading coefficient of zero polynomial")
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    pub fn eval(&self, f: &ExtField, x: u64) -> u64 {
        let mut acc = 0u64;
        for &c in self.coeffs.iter().rev() {
            acc = f.add(f.mul(acc, x), c);
        }
        acc
    }

    pub fn add(&self, o: &Poly, f: &ExtField) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let mut out = vec![0u64; n];
        for (i, slot) in out.iter_mut().enumerate() {
            let a = self.coeffs.get(i).copied().unwrap_or(0);
            let b = o.coeffs.get(i).copied().unwrap_or(0);
            *slot = f.add(a, b);
        }
        Poly::from_coeffs(out)
    }

    pub fn neg(&self, f: &ExtField) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect() }
    }

    pub fn sub(&self, o: &Poly, f: &ExtField) -> Poly {
        self.add(&o.neg(f), f)
    }

    pub fn mul(&self, o: &Poly, f: &ExtField) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![0u64; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::from_coeffs(out)
    }

    pub fn mul_scalar(&self, s: u64, f: &ExtField) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|&c| f.mul(c, s)).collect())
    }

    /// Quotient and remainder by a nonzero divisor.
    pub fn divrem(&self, d: &Poly, f: &ExtField) -> (Poly, Poly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.degree().unwrap();
        if self.coeffs.len() < dd + 1 {
            return (Poly::zero(), self.clone());
        }
        let lead_inv = f.inv(d.leading());
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = f.mul(rem[i], lead_inv);
            if c != 0 {
                quot[i - dd] = c;
                for (j, &dc) in d.coeffs.iter().enumerate() {
                    rem[i - dd + j] = f.sub(rem[i - dd + j], f.mul(c, dc));
                }
            }
        }
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    pub fn divides(&self, other: &Poly, f: &ExtField) -> bool {
        other.divrem(self, f).1.is_zero()
    }

    /// The least divisor `d` of `n` with `self | x^d - 1`, if any. For a
    /// divisor of `x^n - 1` this is the order of the polynomial: the
    /// minimal period of the cyclic codes it cuts out.
    pub fn order_dividing(&self, n: u64, f: &ExtField) -> Option<u64> {
        divisors(n)
            .into_iter()
            .find(|&d| self.divides(&Poly::x_pow_minus_one(d, f), f))
    }

    /// Serialized form: coefficient codes low-to-high, comma-separated
    /// (so `"1,0,0,1,1"` is `1 + x^3 + x^4`).
    pub fn to_csv(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        parts.join(",")
    }

    pub fn from_csv(s: &str) -> Result<Poly> {
        let mut coeffs = Vec::new();
        for part in s.split(',') {
            let v: u64 = part
                .trim()
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad coefficient {part:?}")))?;
            coeffs.push(v);
        }
        Ok(Poly::from_coeffs(coeffs))
    }

    /// Checks every coefficient is a valid element code of `f`.
    pub fn valid_over(&self, f: &ExtField) -> bool {
        self.coeffs.iter().all(|&c| c < f.size)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gfield::field;

    const B: u64 = 1 << 20;

    #[test]
    fn divrem_reconstructs() {
        let f9 = field(3, 2, B).unwrap();
        // Deterministic scan over small polynomials.
        let polys: Vec<Poly> = (0..200u64)
            .map(|v| {
                let coeffs: Vec<u64> = (0..4).map(|i| (v >> (2 * i)) & 3 % 9).map(|c| c % 9).collect();
                Poly::from_coeffs(coeffs)
            })
            .collect();
        for a in &polys {
            for d in &polys {
                if d.is_zero() {
                    continue;
                }
                let (q, r) = a.divrem(d, &f9);
                assert_eq!(&q.mul(d, &f9).add(&r, &f9), a);
                if !r.is_zero() {
                    assert!(r.degree().unwrap() < d.degree().unwrap());
                }
            }
        }
    }

    #[test]
    fn xn_minus_one_roots() {
        let f16 = field(2, 4, B).unwrap();
        let p5 = Poly::x_pow_minus_one(5, &f16);
        let roots = (0..16).filter(|&x| p5.eval(&f16, x) == 0).count();
        assert_eq!(roots, 5);
        let f9 = field(3, 2, B).unwrap();
        let p8 = Poly::x_pow_minus_one(8, &f9);
        let roots = (0..9).filter(|&x| p8.eval(&f9, x) == 0).count();
        assert_eq!(roots, 8);
    }

    #[test]
    fn polynomial_order() {
        let f2 = field(2, 1, B).unwrap();
        let h = Poly::from_coeffs(vec![1, 1, 1]); // x^2 + x + 1
        assert_eq!(h.order_dividing(3, &f2), Some(3));
        assert_eq!(h.order_dividing(6, &f2), Some(3));
        assert_eq!(h.order_dividing(4, &f2), None);
        let lin = Poly::from_coeffs(vec![1, 1]); // x + 1 = x - 1 over F_2
        assert_eq!(lin.order_dividing(6, &f2), Some(1));
        let f3 = field(3, 1, B).unwrap();
        let xp1 = Poly::from_coeffs(vec![1, 1]); // x + 1, root -1 of order 2
        assert_eq!(xp1.order_dividing(4, &f3), Some(2));
    }

    #[test]
    fn csv_round_trip() {
        let p = Poly::from_coeffs(vec![1, 0, 0, 1, 1]);
        assert_eq!(p.to_csv(), "1,0,0,1,1");
        assert_eq!(Poly::from_csv("1,0,0,1,1").unwrap(), p);
        assert_eq!(Poly::from_csv("1, 0, 2").unwrap().coeffs, vec![1, 0, 2]);
        assert_eq!(Poly::from_csv("0").unwrap(), Poly::zero());
        assert!(Poly::from_csv("1,x").is_err());
        // trailing zeros trim
        assert_eq!(Poly::from_csv("2,1,0,0").unwrap().coeffs, vec![2, 1]);
    }

    #[test]
    fn division_in_extension_field() {
        let f16 = field(2, 4, B).unwrap();
        let xi = f16.element_of_order(15).unwrap();
        // (x - xi)(x - xi^2) expanded, then divided back out.
        let a = Poly::from_coeffs(vec![f16.neg(xi), 1]);
        let b = Poly::from_coeffs(vec![f16.neg(f16.pow(xi, 2)), 1]);
        let prod = a.mul(&b, &f16);
        assert_eq!(prod.degree(), Some(2));
        let (q, r) = prod.divrem(&a, &f16);
        assert!(r.is_zero());
        assert_eq!(q, b);
        assert_eq!(prod.eval(&f16, xi), 0);
        assert_eq!(prod.eval(&f16, f16.pow(xi, 2)), 0);
        assert_ne!(prod.eval(&f16, 1), 0);
    }
}
