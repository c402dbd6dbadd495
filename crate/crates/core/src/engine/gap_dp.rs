//! Nested-sum kernels.
//!
//! [`GapDp`] sums over gap variables `n_1, ..., n_r >= 1` with the cumulative
//! totals `m_j = n_1 + ... + n_j` in the denominators:
//!
//! ```text
//!   sum  prod_j c_j(n_j) / prod_j m_j^{e_j}
//! ```
//!
//! It runs over the outer total `M = m_r` in ascending order and keeps, for
//! every level, an accumulator for the convolution
//! `sum_{M' < M} S_{j-1}(M') c_j(M - M')`. For geometric gap weights this is
//! the one-multiplier recursion `Q(M+1) = w (Q(M) + S(M))`; periodic weights
//! keep one running sum per residue class.
//!
//! [`PositionDp`] is the stuffle-type counterpart where the weights sit on the
//! increasing summation variables `m_1 < ... < m_r` themselves.

use num_complex::Complex64;

use super::compensated::CompensatedSum;

/// Weight attached to one gap variable.
#[derive(Clone, Debug, PartialEq)]
pub enum LevelWeight {
    /// `c(d) = w^d`.
    Geometric(Complex64),
    /// `c(d) = a^d - b^d`.
    Difference(Complex64, Complex64),
    /// `c(d) = table[d mod q]`.
    Periodic(Vec<Complex64>),
}

impl LevelWeight {
    /// Largest geometric ratio, or 1 for periodic weights.
    pub fn radius(&self) -> f64 {
        match self {
            LevelWeight::Geometric(w) => w.norm(),
            LevelWeight::Difference(a, b) => a.norm().max(b.norm()),
            LevelWeight::Periodic(_) => 1.0,
        }
    }

    /// Bound on `|c(d)| / radius^d`.
    pub fn amplitude(&self) -> f64 {
        match self {
            LevelWeight::Geometric(_) => 1.0,
            LevelWeight::Difference(_, _) => 2.0,
            LevelWeight::Periodic(t) => t.iter().map(|c| c.norm()).fold(0.0, f64::max),
        }
    }

    pub fn period(&self) -> Option<usize> {
        match self {
            LevelWeight::Periodic(t) => Some(t.len()),
            _ => None,
        }
    }

    /// Average over one period; `None` for non-periodic weights.
    pub fn mean(&self) -> Option<Complex64> {
        match self {
            LevelWeight::Periodic(t) => Some(t.iter().sum::<Complex64>() / t.len() as f64),
            _ => None,
        }
    }
}

enum LevelState {
    Geometric { w: Complex64, q: Complex64 },
    Difference { a: Complex64, b: Complex64, qa: Complex64, qb: Complex64 },
    Periodic { table: Vec<Complex64>, residues: Vec<CompensatedSum> },
}

enum FirstLevel {
    Geometric { w: Complex64, pow: Complex64 },
    Difference { a: Complex64, b: Complex64, pa: Complex64, pb: Complex64 },
    Periodic { table: Vec<Complex64> },
}

impl FirstLevel {
    fn new(w: &LevelWeight) -> Self {
        match w {
            LevelWeight::Geometric(w) => FirstLevel::Geometric { w: *w, pow: Complex64::new(1.0, 0.0) },
            LevelWeight::Difference(a, b) => {
                FirstLevel::Difference { a: *a, b: *b, pa: Complex64::new(1.0, 0.0), pb: Complex64::new(1.0, 0.0) }
            }
            LevelWeight::Periodic(t) => FirstLevel::Periodic { table: t.clone() },
        }
    }

    #[inline]
    fn next(&mut self, m: u64) -> Complex64 {
        match self {
            FirstLevel::Geometric { w, pow } => {
                *pow *= *w;
                *pow
            }
            FirstLevel::Difference { a, b, pa, pb } => {
                *pa *= *a;
                *pb *= *b;
                *pa - *pb
            }
            FirstLevel::Periodic { table } => table[(m % table.len() as u64) as usize],
        }
    }
}

impl LevelState {
    fn new(w: &LevelWeight) -> Self {
        let zero = Complex64::new(0.0, 0.0);
        match w {
            LevelWeight::Geometric(w) => LevelState::Geometric { w: *w, q: zero },
            LevelWeight::Difference(a, b) => LevelState::Difference { a: *a, b: *b, qa: zero, qb: zero },
            LevelWeight::Periodic(t) => {
                LevelState::Periodic { table: t.clone(), residues: vec![CompensatedSum::new(); t.len()] }
            }
        }
    }

    /// `sum_{M' < M} S_prev(M') c(M - M')` for the current outer total `m`.
    #[inline]
    fn convolution(&self, m: u64) -> Complex64 {
        match self {
            LevelState::Geometric { q, .. } => *q,
            LevelState::Difference { qa, qb, .. } => *qa - *qb,
            LevelState::Periodic { table, residues } => {
                let q = table.len() as u64;
                let mut acc = Complex64::new(0.0, 0.0);
                for (s, r) in residues.iter().enumerate() {
                    let lag = ((m % q) + q - s as u64) % q;
                    acc += r.value() * table[lag as usize];
                }
                acc
            }
        }
    }

    /// Feed `S_prev(m)` so that it is visible from step `m + 1` on.
    #[inline]
    fn absorb(&mut self, m: u64, s_prev: Complex64) {
        match self {
            LevelState::Geometric { w, q } => *q = *w * (*q + s_prev),
            LevelState::Difference { a, b, qa, qb } => {
                *qa = *a * (*qa + s_prev);
                *qb = *b * (*qb + s_prev);
            }
            LevelState::Periodic { table, residues } => {
                let idx = (m % table.len() as u64) as usize;
                residues[idx].add(s_prev);
            }
        }
    }

    fn magnitude(&self) -> f64 {
        match self {
            LevelState::Geometric { q, .. } => q.norm(),
            LevelState::Difference { qa, qb, .. } => qa.norm().max(qb.norm()),
            LevelState::Periodic { residues, .. } => residues.iter().map(|r| r.value().norm()).fold(0.0, f64::max),
        }
    }
}

/// Gap-form nested sum, advanced one outer total at a time.
pub struct GapDp {
    exponents: Vec<u32>,
    first: FirstLevel,
    levels: Vec<LevelState>,
    current: Vec<Complex64>,
    m: u64,
    total: CompensatedSum,
    max_state: f64,
}

impl GapDp {
    /// `exponents` and `weights` are ordered from the innermost gap outwards.
    pub fn new(exponents: &[u32], weights: &[LevelWeight]) -> Self {
        assert_eq!(exponents.len(), weights.len());
        assert!(!exponents.is_empty(), "gap sum needs at least one level");
        Self {
            exponents: exponents.to_vec(),
            first: FirstLevel::new(&weights[0]),
            levels: weights[1..].iter().map(LevelState::new).collect(),
            current: vec![Complex64::new(0.0, 0.0); exponents.len()],
            m: 0,
            total: CompensatedSum::new(),
            max_state: 0.0,
        }
    }

    /// Advance by one outer total and return the new outer term `S_r(M)`.
    #[inline]
    pub fn step(&mut self) -> Complex64 {
        self.m += 1;
        let m = self.m;
        let mf = m as f64;
        self.current[0] = self.first.next(m) / mf.powi(self.exponents[0] as i32);
        for j in 1..self.exponents.len() {
            let conv = self.levels[j - 1].convolution(m);
            self.current[j] = conv / mf.powi(self.exponents[j] as i32);
            let prev = self.current[j - 1];
            self.levels[j - 1].absorb(m, prev);
        }
        let term = self.current[self.exponents.len() - 1];
        self.total.add(term);
        if cfg!(debug_assertions) || self.m.is_multiple_of(1024) {
            self.track_state();
        }
        term
    }

    fn track_state(&mut self) {
        let mut mx = self.current.iter().map(|c| c.norm()).fold(0.0, f64::max);
        for l in &self.levels {
            mx = mx.max(l.magnitude());
        }
        self.max_state = self.max_state.max(mx);
    }

    pub fn advance_to(&mut self, n: u64) -> Complex64 {
        while self.m < n {
            self.step();
        }
        self.total.value()
    }

    pub fn position(&self) -> u64 {
        self.m
    }

    pub fn partial_sum(&self) -> Complex64 {
        self.total.value()
    }

    pub fn rounding_bound(&self) -> f64 {
        self.total.rounding_bound()
    }

    /// Largest modulus any recursion state has reached so far.
    pub fn max_state(&self) -> f64 {
        self.max_state
    }
}

impl Iterator for GapDp {
    type Item = Complex64;
    fn next(&mut self) -> Option<Complex64> {
        Some(self.step())
    }
}

/// Stuffle-type nested sum `sum_{m_1 < ... < m_r} prod_j c_j(m_j) / m_j^{e_j}`
/// with periodic position weights.
pub struct PositionDp {
    exponents: Vec<u32>,
    tables: Vec<Vec<Complex64>>,
    prefix: Vec<CompensatedSum>,
    m: u64,
}

impl PositionDp {
    pub fn new(exponents: &[u32], tables: Vec<Vec<Complex64>>) -> Self {
        assert_eq!(exponents.len(), tables.len());
        assert!(!exponents.is_empty());
        Self { exponents: exponents.to_vec(), tables, prefix: vec![CompensatedSum::new(); exponents.len()], m: 0 }
    }

    #[inline]
    pub fn step(&mut self) -> Complex64 {
        self.m += 1;
        let m = self.m;
        let mf = m as f64;
        let r = self.exponents.len();
        let mut outer = Complex64::new(0.0, 0.0);
        // Descending so that level j reads level j-1 as of m-1.
        for j in (0..r).rev() {
            let t = &self.tables[j];
            let c = t[(m % t.len() as u64) as usize];
            if c == Complex64::new(0.0, 0.0) {
                continue;
            }
            let below = if j == 0 { Complex64::new(1.0, 0.0) } else { self.prefix[j - 1].value() };
            let inc = c * below / mf.powi(self.exponents[j] as i32);
            self.prefix[j].add(inc);
            if j == r - 1 {
                outer = inc;
            }
        }
        outer
    }

    pub fn partial_sum(&self) -> Complex64 {
        self.prefix[self.exponents.len() - 1].value()
    }
}

impl Iterator for PositionDp {
    type Item = Complex64;
    fn next(&mut self) -> Option<Complex64> {
        Some(self.step())
    }
}
