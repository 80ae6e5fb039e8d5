//! Set systems `(B, H)` over point indices and the incremental algorithm that
//! realises them on a low-dimensional sphere.
//!
//! Condition `H_l` asks that every point outside `H_l` avoids the affine hull
//! of the points inside it. The algorithm starts from points in general
//! position on a circle and processes conditions by nondecreasing size. A
//! condition too large for the current sphere adds one dimension and tilts
//! the `H_l` points and the rest in opposite directions; any other condition
//! resamples all points in general position on the current sphere.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::geom::{affine_rank, Point};

use super::EmbedError;

/// Reseeding budget for [`realize_hsystem`].
pub const HSYSTEM_MAX_RETRIES: usize = 50;

/// Ground set `0..m` and conditions sorted by nondecreasing size. Conditions
/// equal to the whole ground set impose nothing and are only counted in `s`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HSystem {
    m: usize,
    conditions: Vec<Vec<usize>>,
    s: usize,
}

impl HSystem {
    pub fn new(m: usize, conditions: Vec<Vec<usize>>) -> Result<Self, EmbedError> {
        let mut partial = Vec::new();
        let mut s = 0;
        for mut c in conditions {
            c.sort_unstable();
            c.dedup();
            if let Some(&bad) = c.iter().find(|&&i| i >= m) {
                return Err(EmbedError::Precondition {
                    reason: format!("condition element {bad} outside ground set of size {m}"),
                    vertices: vec![bad],
                });
            }
            if c.len() == m {
                s += 1;
            } else {
                partial.push(c);
            }
        }
        // stable: equal sizes keep their input order
        partial.sort_by_key(|c| c.len());
        Ok(HSystem {
            m,
            conditions: partial,
            s,
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// The non-full conditions, nondecreasing in size.
    pub fn conditions(&self) -> &[Vec<usize>] {
        &self.conditions
    }

    /// Number of full conditions.
    pub fn s(&self) -> usize {
        self.s
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.conditions.iter().map(Vec::len).collect()
    }

    /// Sum of all condition sizes, full ones included.
    pub fn edge_sum(&self) -> usize {
        self.sizes().iter().sum::<usize>() + self.s * self.m
    }
}

/// The flatness parameter and the rotation angle schedule `eps * 2^-(g+4)`
/// for the `g`-th dimension increase (`g >= 1`). The angles sum to `eps / 16`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FlatnessBudget {
    pub eps: f64,
}

impl Default for FlatnessBudget {
    fn default() -> Self {
        FlatnessBudget { eps: 0.01 }
    }
}

impl FlatnessBudget {
    pub fn angle(&self, growth_step: usize) -> f64 {
        debug_assert!(growth_step >= 1);
        self.eps * 0.5f64.powi(growth_step as i32 + 4)
    }

    /// Upper bound on the sum of all rotation angles.
    pub fn total_rotation_bound(&self) -> f64 {
        self.eps / 16.0
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct HSystemRealization {
    /// Sphere dimension reached; points live on the unit sphere of `R^{k+1}`.
    pub k: usize,
    pub points: Vec<Point>,
    /// Indices into `HSystem::conditions` that added a dimension.
    pub growth_steps: Vec<usize>,
    pub attempts: usize,
}

/// Points in general position inside a cap of the unit sphere `S^k` around `e_1`,
/// pairwise at most about `spread` apart.
fn cap_sample<R: Rng>(rng: &mut R, m: usize, k: usize, spread: f64) -> Vec<Vec<f64>> {
    let radius = spread / 2.0;
    (0..m)
        .map(|_| {
            let mut t: Vec<f64> = (0..k).map(|_| rng.sample(StandardNormal)).collect();
            let norm = t.iter().map(|x| x * x).sum::<f64>().sqrt().max(1e-300);
            let r = radius * rng.random::<f64>().powf(1.0 / k as f64);
            for x in &mut t {
                *x *= r / norm;
            }
            let mut v = Vec::with_capacity(k + 1);
            v.push(1.0);
            v.extend(t);
            let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            v.into_iter().map(|x| x / n).collect()
        })
        .collect()
}

/// True when every `i` outside `cond` raises the affine rank of the `cond` points by one.
pub fn condition_holds(points: &[Point], cond: &[usize]) -> bool {
    if cond.is_empty() {
        return true;
    }
    let base: Vec<Point> = cond.iter().map(|&j| points[j].clone()).collect();
    let r = affine_rank(&base).expect("same dimension");
    (0..points.len())
        .filter(|i| cond.binary_search(i).is_err())
        .all(|i| {
            let mut with = base.clone();
            with.push(points[i].clone());
            affine_rank(&with).expect("same dimension") == r + 1
        })
}

/// Runs the incremental realisation, reseeding until every condition checks out numerically.
pub fn realize_hsystem(
    h: &HSystem,
    budget: FlatnessBudget,
    seed: u64,
) -> Result<HSystemRealization, EmbedError> {
    let m = h.m();
    for attempt in 0..HSYSTEM_MAX_RETRIES {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(attempt as u64);

        let mut k = 1usize;
        let mut x = cap_sample(&mut rng, m, k, budget.eps / 2.0);
        let mut growth_steps = Vec::new();
        for (l, cond) in h.conditions().iter().enumerate() {
            if cond.len() >= k + 2 {
                growth_steps.push(l);
                let theta = budget.angle(growth_steps.len());
                let (c, s) = (theta.cos(), theta.sin());
                for (i, p) in x.iter_mut().enumerate() {
                    let sign = if cond.binary_search(&i).is_ok() {
                        1.0
                    } else {
                        -1.0
                    };
                    for v in p.iter_mut() {
                        *v *= c;
                    }
                    p.push(sign * s);
                }
                k += 1;
            } else {
                x = cap_sample(&mut rng, m, k, budget.eps / 2.0);
            }
        }

        let points: Vec<Point> = x
            .into_iter()
            .map(|v| Point::new(v).expect("finite"))
            .collect();
        let distinct = (0..m).all(|i| (i + 1..m).all(|j| points[i].distance(&points[j]) > 1e-12));
        if distinct && h.conditions().iter().all(|c| condition_holds(&points, c)) {
            return Ok(HSystemRealization {
                k,
                points,
                growth_steps,
                attempts: attempt + 1,
            });
        }
    }
    Err(EmbedError::ConstructionFailed {
        attempts: HSYSTEM_MAX_RETRIES,
        reason: "l-conditions failed numerically on every attempt".into(),
    })
}

/// Largest pairwise distance of a point set.
pub fn diameter(points: &[Point]) -> f64 {
    let mut d: f64 = 0.0;
    for (i, p) in points.iter().enumerate() {
        for q in &points[i + 1..] {
            d = d.max(p.distance(q));
        }
    }
    d
}
