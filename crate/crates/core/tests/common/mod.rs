#![allow(dead_code)]

use l2stab::mesh::{check_thm1, TimeMesh};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const ALPHAS: [f64; 9] = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Mesh on `[0, 1]` with `n` steps and ratios drawn uniformly from `[lo, hi]`.
pub fn random_mesh(rng: &mut impl Rng, n: usize, lo: f64, hi: f64) -> TimeMesh {
    let mut steps = vec![1.0f64];
    for _ in 1..n {
        let last = *steps.last().unwrap();
        steps.push(last * rng.gen_range(lo..=hi));
    }
    let total: f64 = steps.iter().sum();
    TimeMesh::from_steps(steps.into_iter().map(|s| s / total).collect()).unwrap()
}

/// As [`random_mesh`] with ratios in `[0.4, 3.6]`, but every new ratio is
/// redrawn until the stability conditions hold for the mesh so far.
pub fn random_thm1_mesh(rng: &mut impl Rng, n: usize) -> TimeMesh {
    assert!(n >= 3);
    'restart: loop {
        let mut steps = vec![1.0f64, rng.gen_range(0.4..=3.6)];
        while steps.len() < n {
            let last = *steps.last().unwrap();
            let mut tries = 0;
            loop {
                tries += 1;
                if tries > 1000 {
                    continue 'restart;
                }
                let mut trial = steps.clone();
                trial.push(last * rng.gen_range(0.4..=3.6));
                if check_thm1(&TimeMesh::from_steps(trial.clone()).unwrap()).unwrap().pass {
                    steps = trial;
                    break;
                }
            }
        }
        let total: f64 = steps.iter().sum();
        return TimeMesh::from_steps(steps.into_iter().map(|s| s / total).collect()).unwrap();
    }
}

/// `|x - y| <= rel * |y|` or `|x - y| <= abs`.
pub fn close(x: f64, y: f64, rel: f64, abs: f64) -> bool {
    (x - y).abs() <= (rel * y.abs()).max(abs)
}
