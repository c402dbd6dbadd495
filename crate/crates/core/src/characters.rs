//! Dirichlet characters of modulus at most 4 and the character-twisted
//! double sums `L_sh` (weights on the gaps) and `L_*` (weights on the
//! increasing summation variables).

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::engine::gap_dp::{GapDp, LevelWeight, PositionDp};
use crate::engine::{boundary_accel_sum, li_eval_gaps, periodic_model, EvalConfig, EvalError, EvalResult};
use crate::index::Index;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Character {
    /// Principal character modulo `q` (1 on residues coprime to `q`).
    /// `Principal(2)` is the trivial character mod 2; `Principal(3)` and
    /// `Principal(4)` are the squares of `Chi3` and `Chi4`.
    Principal(u32),
    /// Non-trivial character mod 3: 1, -1, 0 on residues 1, 2, 0.
    Chi3,
    /// Non-trivial character mod 4: 1, 0, -1, 0 on residues 1, 2, 3, 0.
    Chi4,
}

impl Character {
    pub fn modulus(&self) -> u32 {
        match self {
            Character::Principal(q) => *q,
            Character::Chi3 => 3,
            Character::Chi4 => 4,
        }
    }

    pub fn is_principal(&self) -> bool {
        matches!(self, Character::Principal(_))
    }

    /// Values on residues `0, 1, ..., q-1`.
    pub fn table(&self) -> Vec<i8> {
        match self {
            Character::Principal(1) => vec![1],
            Character::Principal(2) => vec![0, 1],
            Character::Principal(3) => vec![0, 1, 1],
            Character::Principal(4) => vec![0, 1, 0, 1],
            Character::Principal(q) => panic!("unsupported modulus {q}"),
            Character::Chi3 => vec![0, 1, -1],
            Character::Chi4 => vec![0, 1, 0, -1],
        }
    }

    pub fn square(&self) -> Character {
        match self {
            Character::Chi3 => Character::Principal(3),
            Character::Chi4 => Character::Principal(4),
            p => *p,
        }
    }

    fn complex_table(&self) -> Vec<Complex64> {
        self.table().into_iter().map(|v| Complex64::new(v as f64, 0.0)).collect()
    }

    fn validate(&self) -> Result<(), EvalError> {
        match self {
            Character::Principal(q) if !(1..=4).contains(q) => {
                Err(EvalError::InadmissibleArgument(format!("principal character modulus {q} is outside 1..=4")))
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Character::Principal(q) => write!(f, "one{q}"),
            Character::Chi3 => write!(f, "chi3"),
            Character::Chi4 => write!(f, "chi4"),
        }
    }
}

impl FromStr for Character {
    type Err = String;

    /// `chi3`, `chi4`, `chi3^2`, `chi4^2`, `one1` .. `one4`.
    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim().to_ascii_lowercase().as_str() {
            "chi3" => Ok(Character::Chi3),
            "chi4" => Ok(Character::Chi4),
            "chi3^2" => Ok(Character::Principal(3)),
            "chi4^2" => Ok(Character::Principal(4)),
            "one1" | "1" => Ok(Character::Principal(1)),
            "one2" | "1_2" => Ok(Character::Principal(2)),
            "one3" => Ok(Character::Principal(3)),
            "one4" => Ok(Character::Principal(4)),
            other => Err(format!("unknown character {other:?}")),
        }
    }
}

/// `chi(m)`, `m >= 1`.
pub fn chi_eval(chi: Character, m: u64) -> Complex64 {
    let t = chi.table();
    Complex64::new(t[(m % t.len() as u64) as usize] as f64, 0.0)
}

fn check_convergent(index: &Index, last: Character) -> Result<(), EvalError> {
    if index.last() == Some(1) && last.is_principal() {
        return Err(EvalError::DivergentIndex(index.clone()));
    }
    Ok(())
}

/// `L_sh(k; chi) = sum_{n_j >= 1} prod chi_j(n_j) / prod (n_1 + ... + n_j)^{k_j}`,
/// summed by the gap recursion with periodic weights and accelerated over
/// multiples of the common period.
pub fn l_sh_eval(index: &Index, chars: &[Character], cfg: &EvalConfig) -> Result<EvalResult, EvalError> {
    cfg.validate()?;
    if chars.len() != index.depth() {
        return Err(EvalError::InadmissibleArgument(format!(
            "{} characters for an index of depth {}",
            chars.len(),
            index.depth()
        )));
    }
    if index.is_empty() {
        return Ok(EvalResult::exact(Complex64::new(1.0, 0.0)));
    }
    for c in chars {
        c.validate()?;
    }
    check_convergent(index, chars[chars.len() - 1])?;
    let weights: Vec<LevelWeight> = chars.iter().map(|c| LevelWeight::Periodic(c.complex_table())).collect();
    let model = periodic_model(index.parts(), &weights);
    let dp = GapDp::new(index.parts(), &weights);
    Ok(boundary_accel_sum(dp, model, cfg))
}

/// Dirichlet L-value `L(k; chi)`.
pub fn dirichlet_l(k: u32, chi: Character, cfg: &EvalConfig) -> Result<EvalResult, EvalError> {
    l_sh_eval(&Index::single(k), &[chi], cfg)
}

/// Stuffle-type sum `sum_{m_1 < ... < m_r} prod chi_j(m_j) / m_j^{k_j}`.
pub fn l_star_multi(index: &Index, chars: &[Character], cfg: &EvalConfig) -> Result<EvalResult, EvalError> {
    cfg.validate()?;
    if chars.len() != index.depth() {
        return Err(EvalError::InadmissibleArgument("character count does not match the depth".into()));
    }
    if index.is_empty() {
        return Ok(EvalResult::exact(Complex64::new(1.0, 0.0)));
    }
    for c in chars {
        c.validate()?;
    }
    check_convergent(index, chars[chars.len() - 1])?;
    let tables: Vec<Vec<Complex64>> = chars.iter().map(|c| c.complex_table()).collect();
    let weights: Vec<LevelWeight> = tables.iter().cloned().map(LevelWeight::Periodic).collect();
    let model = periodic_model(index.parts(), &weights);
    let dp = PositionDp::new(index.parts(), tables);
    Ok(boundary_accel_sum(dp, model, cfg))
}

/// `L_*(k1, k2; chi, chi) = sum_{0 < m < n} chi(m) chi(n) / (m^k1 n^k2)`.
pub fn l_star_eval(k1: u32, k2: u32, chi: Character, cfg: &EvalConfig) -> Result<EvalResult, EvalError> {
    let index = Index::new(vec![k1, k2]).map_err(|e| EvalError::InadmissibleArgument(e.to_string()))?;
    l_star_multi(&index, &[chi, chi], cfg)
}

/// Which non-trivial character [`l_sh_via_li`] expands.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Conductor {
    Chi3,
    Chi4,
}

/// `L_sh(p, q; chi, chi)` from four double polylogarithms at roots of unity:
///
/// ```text
///   4 L_sh(p,q; chi4) = Li(-1, i) + Li(-1, -i) - Li(1, i) - Li(1, -i)
///   3 L_sh(p,q; chi3) = Li(w, w) + Li(w^-1, w^-1) - Li(1, w) - Li(1, w^-1)
/// ```
pub fn l_sh_via_li(p: u32, q: u32, which: Conductor, cfg: &EvalConfig) -> Result<EvalResult, EvalError> {
    let index = Index::new(vec![p, q]).map_err(|e| EvalError::InadmissibleArgument(e.to_string()))?;
    let (u, scale) = match which {
        Conductor::Chi4 => (Complex64::new(0.0, 1.0), 4.0),
        Conductor::Chi3 => (Complex64::new(-0.5, 3f64.sqrt() / 2.0), 3.0),
    };
    let v = u.conj();
    // chi(n1) chi(n2) = -(u^n1 - v^n1)(u^n2 - v^n2) / scale, in gap weights.
    let terms = [(u, u, -1.0), (u, v, 1.0), (v, u, 1.0), (v, v, -1.0)];
    let mut total = EvalResult::exact(Complex64::new(0.0, 0.0));
    for (g1, g2, sign) in terms {
        let part = li_eval_gaps(&index, &[g1, g2], cfg)?;
        total = total.combine(part, sign / scale);
    }
    total.converged = total.err_est <= cfg.target_tol;
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    const CATALAN: f64 = 0.915_965_594_177_219;
    const ZETA3: f64 = 1.2020569031595942;

    fn cfg() -> EvalConfig {
        EvalConfig::default()
    }

    fn idx(p: &[u32]) -> Index {
        Index::new(p.to_vec()).unwrap()
    }

    #[test]
    fn character_values() {
        assert_eq!(chi_eval(Character::Chi4, 3).re, -1.0);
        assert_eq!(chi_eval(Character::Chi3, 2).re, -1.0);
        assert_eq!(chi_eval(Character::Principal(2), 4).re, 0.0);
        assert_eq!(Character::Chi3.square(), Character::Principal(3));
    }

    #[test]
    fn closed_forms_of_the_characters() {
        let i = Complex64::new(0.0, 1.0);
        let w = Complex64::from_polar(1.0, 2.0 * PI / 3.0);
        for m in 1..=10_000u64 {
            let m32 = (m % 12) as u32;
            let c4 = (i.powu(m32) - (-i).powu(m32)) / (2.0 * i);
            let c3 = (w.powu(m32) - w.inv().powu(m32)) / (3f64.sqrt() * i);
            assert!((chi_eval(Character::Chi4, m) - c4).norm() < 1e-14);
            assert!((chi_eval(Character::Chi3, m) - c3).norm() < 1e-14);
        }
    }

    #[test]
    fn catalan_and_principal_values() {
        let c = dirichlet_l(2, Character::Chi4, &cfg()).unwrap();
        assert!((c.value.re - CATALAN).abs() < 1e-12, "{:?}", c);
        let p = dirichlet_l(2, Character::Principal(4), &cfg()).unwrap();
        assert!((p.value.re - PI * PI / 8.0).abs() < 1e-11, "{:?}", p);
        let p3 = dirichlet_l(3, Character::Principal(3), &cfg()).unwrap();
        assert!((p3.value.re - (1.0 - 1.0 / 27.0) * ZETA3).abs() < 1e-11);
    }

    #[test]
    fn t_value_normalization() {
        let one2 = Character::Principal(2);
        let v = l_sh_eval(&idx(&[1, 2]), &[one2, one2], &cfg()).unwrap();
        assert!((4.0 * v.value.re - 1.75 * ZETA3).abs() < 1e-10, "{:?}", v);
    }

    #[test]
    fn two_paths_agree() {
        for (p, q) in [(1, 2), (2, 2), (1, 1), (3, 1)] {
            for (which, chi) in [(Conductor::Chi4, Character::Chi4), (Conductor::Chi3, Character::Chi3)] {
                let a = l_sh_via_li(p, q, which, &cfg()).unwrap();
                let b = l_sh_eval(&idx(&[p, q]), &[chi, chi], &cfg()).unwrap();
                assert!((a.value - b.value).norm() < 1e-9, "({p},{q}) {chi}: {} vs {}", a.value, b.value);
                assert!(a.value.im.abs() < 1e-14);
            }
        }
    }

    #[test]
    fn stuffle_for_star_values() {
        let l1 = dirichlet_l(1, Character::Chi4, &cfg()).unwrap().value;
        let l2 = dirichlet_l(2, Character::Chi4, &cfg()).unwrap().value;
        let s12 = l_star_eval(1, 2, Character::Chi4, &cfg()).unwrap().value;
        let s21 = l_star_eval(2, 1, Character::Chi4, &cfg()).unwrap().value;
        let l3 = dirichlet_l(3, Character::Principal(4), &cfg()).unwrap().value;
        assert!((l1 * l2 - s12 - s21 - l3).norm() < 1e-10);
        assert!((l1.re - PI / 4.0).abs() < 1e-12);
    }

    #[test]
    fn trivial_star_is_mzv() {
        let z = l_star_eval(1, 2, Character::Principal(1), &cfg()).unwrap();
        assert!((z.value.re - ZETA3).abs() < 1e-10, "{:?}", z);
    }

    #[test]
    fn divergent_indices_are_rejected() {
        let e = l_sh_eval(&idx(&[2, 1]), &[Character::Chi4, Character::Principal(2)], &cfg());
        assert!(matches!(e, Err(EvalError::DivergentIndex(_))));
        assert!(l_sh_eval(&idx(&[2, 1]), &[Character::Principal(2), Character::Chi4], &cfg()).is_ok());
    }
}
