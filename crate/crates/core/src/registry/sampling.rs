//! Admissible sample points for each identity's hypotheses.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::RegistryError;

/// Maximum number of rejected draws before sampling gives up.
pub const REJECTION_CAP: usize = 10_000;

/// Where an identity's sample points live.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Domain {
    /// No sample point: a statement about constants.
    Values,
    /// Closed unit bidisc, a quarter of the coordinates on the circle, with
    /// `x`, `y` and `xy` kept away from 1.
    Bidisc,
    /// `x = e^{i theta}`, `theta` in `(delta, 2 pi - delta)`.
    UnitCircle,
    /// `|x| = |y| = 1` with `x`, `y`, `x/y`, `x^2/y`, `y^2/x` kept away from 1.
    Torus,
    /// `|x|, |y| <= 0.8` and `|(1 - x)/(1 - xy)| <= 1 - delta/2`.
    Connection,
    /// Real `x, y` in `(0.05, 0.95)`.
    RealSquare,
    /// `z` with `|z| <= 1`, `|1 - z| <= 1`, both at least `delta`.
    Lens,
    /// A trend check along a fixed path; no random points.
    Path,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SamplePoint {
    pub x: Complex64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y: Option<Complex64>,
    pub seed: u64,
    /// Position in the accepted sequence.
    pub draw: u64,
}

impl SamplePoint {
    pub fn coords(&self) -> Vec<Complex64> {
        match self.y {
            Some(y) => vec![self.x, y],
            None => vec![self.x],
        }
    }

    pub fn y_or_zero(&self) -> Complex64 {
        self.y.unwrap_or_default()
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn far(z: Complex64, from: Complex64, delta: f64) -> bool {
    (z - from).norm() >= delta
}

/// `(1 - x) / (1 - xy)`.
pub fn connection_u(x: Complex64, y: Complex64) -> Complex64 {
    (c(1.0, 0.0) - x) / (c(1.0, 0.0) - x * y)
}

/// Whether a point satisfies the domain's hypotheses with margin `delta`.
pub fn admissible(domain: Domain, x: Complex64, y: Complex64, delta: f64) -> bool {
    let one = c(1.0, 0.0);
    let on_circle = |z: Complex64| (z.norm() - 1.0).abs() < 1e-12;
    match domain {
        Domain::Values | Domain::Path => true,
        Domain::Bidisc => {
            x.norm() <= 1.0 + 1e-12
                && y.norm() <= 1.0 + 1e-12
                && far(x, one, delta)
                && far(y, one, delta)
                && far(x * y, one, delta)
        }
        Domain::UnitCircle => on_circle(x) && far(x, one, delta),
        Domain::Torus => {
            on_circle(x) && on_circle(y) && [x, y, x / y, x * x / y, y * y / x].iter().all(|&m| far(m, one, delta))
        }
        Domain::Connection => {
            x.norm() <= 0.8 + 1e-12
                && y.norm() <= 0.8 + 1e-12
                && far(x * y, one, delta)
                && connection_u(x, y).norm() <= 1.0 - delta / 2.0
        }
        Domain::RealSquare => {
            x.im == 0.0 && y.im == 0.0 && (0.05..=0.95).contains(&x.re) && (0.05..=0.95).contains(&y.re)
        }
        Domain::Lens => x.norm() <= 1.0 && (one - x).norm() <= 1.0 && x.norm() >= delta && (one - x).norm() >= delta,
    }
}

fn disc_point(rng: &mut ChaCha8Rng, radius: f64) -> Complex64 {
    let r = radius * rng.gen::<f64>().sqrt();
    Complex64::from_polar(r, rng.gen_range(0.0..TAU))
}

fn draw(domain: Domain, rng: &mut ChaCha8Rng, delta: f64) -> (Complex64, Option<Complex64>) {
    match domain {
        Domain::Values | Domain::Path => (c(0.0, 0.0), None),
        Domain::Bidisc => {
            let coord = |rng: &mut ChaCha8Rng| {
                if rng.gen_bool(0.25) {
                    Complex64::from_polar(1.0, rng.gen_range(0.0..TAU))
                } else {
                    disc_point(rng, 1.0)
                }
            };
            let x = coord(rng);
            (x, Some(coord(rng)))
        }
        Domain::UnitCircle => (Complex64::from_polar(1.0, rng.gen_range(delta..TAU - delta)), None),
        Domain::Torus => {
            let x = Complex64::from_polar(1.0, rng.gen_range(0.0..TAU));
            (x, Some(Complex64::from_polar(1.0, rng.gen_range(0.0..TAU))))
        }
        Domain::Connection => {
            let x = disc_point(rng, 0.8);
            (x, Some(disc_point(rng, 0.8)))
        }
        Domain::RealSquare => {
            let x = rng.gen_range(0.05..0.95);
            (c(x, 0.0), Some(c(rng.gen_range(0.05..0.95), 0.0)))
        }
        Domain::Lens => (c(rng.gen_range(0.0..1.0), rng.gen_range(-0.9..0.9)), None),
    }
}

/// Stream seed: the user seed mixed with the identity id.
fn stream_seed(id: &str, seed: u64) -> u64 {
    // FNV-1a over the id.
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in id.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h ^ seed.wrapping_mul(0x9e37_79b9_7f4a_7c15)
}

/// `n` deterministic points in `domain`, by rejection sampling.
pub fn sample_domain(
    id: &str,
    domain: Domain,
    n: usize,
    seed: u64,
    delta: f64,
) -> Result<Vec<SamplePoint>, RegistryError> {
    if matches!(domain, Domain::Values | Domain::Path) {
        return Ok(Vec::new());
    }
    if domain == Domain::UnitCircle && delta >= std::f64::consts::PI {
        return Err(RegistryError::SamplingExhausted { id: id.to_string(), rejected: 0 });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(stream_seed(id, seed));
    let mut out = Vec::with_capacity(n);
    let mut rejected = 0usize;
    while out.len() < n {
        let (x, y) = draw(domain, &mut rng, delta);
        if admissible(domain, x, y.unwrap_or_default(), delta) {
            out.push(SamplePoint { x, y, seed, draw: out.len() as u64 });
        } else {
            rejected += 1;
            if rejected > REJECTION_CAP {
                return Err(RegistryError::SamplingExhausted { id: id.to_string(), rejected });
            }
        }
    }
    Ok(out)
}
