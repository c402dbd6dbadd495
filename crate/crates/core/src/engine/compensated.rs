//! Neumaier-compensated accumulation for complex partial sums.

use num_complex::Complex64;

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

/// Running complex sum carrying a separate compensation term per component.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct CompensatedSum {
    sum: Complex64,
    comp: Complex64,
    abs_total: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: Complex64) {
        let (re, e_re) = two_sum(self.sum.re, x.re);
        let (im, e_im) = two_sum(self.sum.im, x.im);
        self.sum = Complex64::new(re, im);
        self.comp += Complex64::new(e_re, e_im);
        self.abs_total += x.norm();
    }

    #[inline]
    pub fn value(&self) -> Complex64 {
        self.sum + self.comp
    }

    /// Sum of the moduli of everything added so far; scales the rounding estimate.
    pub fn abs_total(&self) -> f64 {
        self.abs_total
    }

    /// Conservative bound on the accumulated rounding error.
    pub fn rounding_bound(&self) -> f64 {
        4.0 * f64::EPSILON * self.abs_total.max(self.value().norm())
    }
}
