use elliptic_fusion::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::HarnessError;

pub const MAX_REDRAWS: usize = 1000;

/// Zero lattices `rℤ + rτℤ` that sampled points must stay away from, shifted
/// by the offsets at which `[·]` appears in the identities.
#[derive(Debug, Clone, PartialEq)]
pub struct Guards {
    pub r: f64,
    pub tau: Complex64,
    pub margin: f64,
    /// `s` with `[u + s]` guarded.
    pub u_offsets: Vec<f64>,
    /// `s` with `[u − v + s]` guarded.
    pub diff_offsets: Vec<f64>,
    pub re_window: (f64, f64),
    pub im_window: (f64, f64),
}

impl Guards {
    pub fn new(r: f64, tau: Complex64) -> Self {
        Self {
            r,
            tau,
            margin: 0.05,
            u_offsets: vec![0.0, 1.0, -1.0],
            diff_offsets: vec![0.0, 1.0, -1.0, -2.0],
            re_window: (0.05, 0.95),
            im_window: (-0.1, 0.1),
        }
    }

    /// Distance from `z` to the nearest point of `rℤ + rτℤ`.
    pub fn lattice_distance(&self, z: Complex64) -> f64 {
        let w2 = self.tau * self.r;
        let n0 = (z.im / w2.im).round();
        let mut best = f64::INFINITY;
        for n in [n0 - 1.0, n0, n0 + 1.0] {
            let shifted = z - w2 * n;
            let m0 = (shifted.re / self.r).round();
            for m in [m0 - 1.0, m0, m0 + 1.0] {
                best = best.min((shifted - m * self.r).norm());
            }
        }
        best
    }

    pub fn admits(&self, u: Complex64, v: Complex64) -> bool {
        let clear = |z: Complex64| self.lattice_distance(z) >= self.margin;
        self.u_offsets.iter().all(|&s| clear(u + s)) && self.diff_offsets.iter().all(|&s| clear(u - v + s))
    }
}

/// Deterministic `(u, v)` pairs inside the window, each redrawn until it
/// clears every guarded lattice.
pub fn sample_points(seed: u64, n: usize, guards: &Guards) -> Result<Vec<(Complex64, Complex64)>, HarnessError> {
    if n < 1 {
        return Err(HarnessError::Config("at least one point must be requested".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (re_lo, re_hi) = guards.re_window;
    let (im_lo, im_hi) = guards.im_window;
    let draw = |rng: &mut ChaCha8Rng| Complex64::new(rng.gen_range(re_lo..re_hi), rng.gen_range(im_lo..im_hi));
    let mut out = Vec::with_capacity(n);
    for index in 0..n {
        let point = (0..MAX_REDRAWS)
            .map(|_| (draw(&mut rng), draw(&mut rng)))
            .find(|&(u, v)| guards.admits(u, v))
            .ok_or(HarnessError::Sampling { index, redraws: MAX_REDRAWS })?;
        out.push(point);
    }
    Ok(out)
}
