//! Truncated bivariate power series with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::ExactError;

/// `sum c_{a,b} x^a y^b` over `a + b <= max_total_degree`. Absent entries are 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivariatePoly {
    max_total_degree: u32,
    coeffs: BTreeMap<(u32, u32), BigRational>,
}

impl BivariatePoly {
    pub fn zero(max_total_degree: u32) -> Self {
        Self { max_total_degree, coeffs: BTreeMap::new() }
    }

    pub fn one(max_total_degree: u32) -> Self {
        Self::monomial(max_total_degree, 0, 0, BigRational::from_integer(1.into()))
    }

    /// `c x^a y^b`, or zero when `a + b` exceeds the bound.
    pub fn monomial(max_total_degree: u32, a: u32, b: u32, c: BigRational) -> Self {
        let mut p = Self::zero(max_total_degree);
        p.add_term(a, b, c);
        p
    }

    pub fn max_total_degree(&self) -> u32 {
        self.max_total_degree
    }

    pub fn coeff(&self, a: u32, b: u32) -> BigRational {
        self.coeffs.get(&(a, b)).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Nonzero coefficients in `(a, b)` order.
    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigRational)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    /// Add `c x^a y^b` in place; terms beyond the degree bound are dropped.
    pub fn add_term(&mut self, a: u32, b: u32, c: BigRational) {
        if a + b > self.max_total_degree || c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.coeffs.entry((a, b)) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check(&self, other: &Self) -> Result<(), ExactError> {
        if self.max_total_degree != other.max_total_degree {
            return Err(ExactError::DegreeMismatch { left: self.max_total_degree, right: other.max_total_degree });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, ExactError> {
        self.check(other)?;
        let mut out = self.clone();
        for (&(a, b), c) in &other.coeffs {
            out.add_term(a, b, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, ExactError> {
        self.check(other)?;
        let mut out = self.clone();
        for (&(a, b), c) in &other.coeffs {
            out.add_term(a, b, -c.clone());
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Self) -> Result<Self, ExactError> {
        self.check(other)?;
        let n = self.max_total_degree;
        let mut out = Self::zero(n);
        for (&(a1, b1), c1) in &self.coeffs {
            for (&(a2, b2), c2) in &other.coeffs {
                if a1 + a2 + b1 + b2 <= n {
                    out.add_term(a1 + a2, b1 + b2, c1 * c2);
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = Self::zero(self.max_total_degree);
        for (&(a, b), v) in &self.coeffs {
            out.add_term(a, b, v * c);
        }
        out
    }

    /// Largest `|c_{a,b}|` and the first exponent pair attaining a nonzero value.
    pub fn max_abs_coeff(&self) -> (BigRational, Option<(u32, u32)>) {
        let mut best = BigRational::zero();
        for c in self.coeffs.values() {
            if c.abs() > best {
                best = c.abs();
            }
        }
        (best, self.coeffs.keys().next().copied())
    }

    /// Canonical text form: one `a b num/den` line per nonzero coefficient,
    /// sorted by `(a, b)`.
    pub fn to_canonical(&self) -> String {
        let mut s = String::new();
        for (&(a, b), c) in &self.coeffs {
            let _ = writeln!(s, "{a} {b} {}/{}", c.numer(), c.denom());
        }
        s
    }

    pub fn from_canonical(max_total_degree: u32, text: &str) -> Result<Self, ExactError> {
        let mut p = Self::zero(max_total_degree);
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let bad = || ExactError::Parse(format!("line {}: {line:?}", lineno + 1));
            let mut it = line.split_whitespace();
            let a: u32 = it.next().and_then(|t| t.parse().ok()).ok_or_else(bad)?;
            let b: u32 = it.next().and_then(|t| t.parse().ok()).ok_or_else(bad)?;
            let frac = it.next().ok_or_else(bad)?;
            if it.next().is_some() {
                return Err(bad());
            }
            let (num, den) = frac.split_once('/').ok_or_else(bad)?;
            let num: BigInt = num.parse().map_err(|_| bad())?;
            let den: BigInt = den.parse().map_err(|_| bad())?;
            if den.is_zero() {
                return Err(bad());
            }
            if a + b > max_total_degree {
                return Err(ExactError::Parse(format!("line {}: degree exceeds {max_total_degree}", lineno + 1)));
            }
            p.add_term(a, b, BigRational::new(num, den));
        }
        Ok(p)
    }

    /// Numerical value at `(x, y)`; the only place coefficients become floats.
    pub fn evaluate(&self, x: Complex64, y: Complex64) -> Complex64 {
        let mut s = Complex64::new(0.0, 0.0);
        for (&(a, b), c) in &self.coeffs {
            let c = c.to_f64().unwrap_or(f64::NAN);
            s += x.powu(a) * y.powu(b) * c;
        }
        s
    }
}
