//! Multistart least-squares search for unit-distance realisations of small graphs.
//!
//! The objective is `sum over edges of (|x_i - x_j|^2 - 1)^2`. Each restart runs
//! gradient descent with a Barzilai-Borwein trial step and Armijo backtracking
//! from a seeded random start. A zero of the objective is only a candidate: it
//! is accepted when the points are distinct and, in faithful mode, every
//! non-edge stays at least `margin_nonedge` away from unit length.
//!
//! `NOT_FOUND` is evidence, never proof.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::embedding::{Embedding, TOL_DISTINCT};
use crate::geom::Point;
use crate::graph::Graph;
use crate::verify::{verify, Mode};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub restarts: usize,
    pub max_iters: usize,
    /// Acceptance threshold on the objective.
    pub tol_residual: f64,
    pub margin_nonedge: f64,
    /// Side length of the cube the starting points are drawn from.
    pub init_scale: f64,
    pub seed: u64,
    /// Worker threads for restarts; 1 runs them in order on the caller's thread.
    pub jobs: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            restarts: 200,
            max_iters: 2000,
            tol_residual: 1e-12,
            margin_nonedge: 1e-3,
            init_scale: 2.0,
            seed: 0,
            jobs: 1,
        }
    }
}

impl SolverConfig {
    /// Tolerance at which a found embedding is guaranteed to verify.
    pub fn verify_tol(&self) -> f64 {
        self.tol_residual.sqrt()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Found,
    NotFound,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolveResult {
    pub status: Status,
    pub embedding: Option<Embedding>,
    /// Objective of the accepted candidate, or the smallest objective seen.
    pub best_residual: f64,
    /// Restarts consumed: index of the winning restart plus one, or all of them.
    pub restarts_used: usize,
    /// Restarts that converged but failed the distinctness or margin test.
    pub rejected: usize,
}

impl SolveResult {
    pub fn found(&self) -> bool {
        self.status == Status::Found
    }

    pub fn to_json(&self) -> String {
        let status = serde_json::to_string(&self.status).expect("status serialises");
        let mut out = format!(
            "{{\"status\":{status},\"best_residual\":{:e},\"restarts_used\":{},\"rejected\":{}",
            self.best_residual, self.restarts_used, self.rejected
        );
        if let Some(e) = &self.embedding {
            out.push_str(",\"embedding\":");
            out.push_str(&e.to_json());
        }
        out.push('}');
        out
    }
}

/// Edge list of `g` plus the objective and its gradient on flattened coordinates.
struct Problem<'a> {
    n: usize,
    d: usize,
    edges: Vec<(usize, usize)>,
    g: &'a Graph,
}

impl<'a> Problem<'a> {
    fn new(g: &'a Graph, d: usize) -> Self {
        Problem {
            n: g.n(),
            d,
            edges: g.edges().collect(),
            g,
        }
    }

    fn sq_dist(&self, x: &[f64], i: usize, j: usize) -> f64 {
        let (a, b) = (
            &x[i * self.d..(i + 1) * self.d],
            &x[j * self.d..(j + 1) * self.d],
        );
        a.iter().zip(b).map(|(p, q)| (p - q) * (p - q)).sum()
    }

    fn value(&self, x: &[f64]) -> f64 {
        self.edges
            .iter()
            .map(|&(i, j)| {
                let p = self.sq_dist(x, i, j) - 1.0;
                p * p
            })
            .sum()
    }

    fn gradient(&self, x: &[f64], grad: &mut [f64]) -> f64 {
        grad.iter_mut().for_each(|v| *v = 0.0);
        let d = self.d;
        let mut f = 0.0;
        for &(i, j) in &self.edges {
            let p = self.sq_dist(x, i, j) - 1.0;
            f += p * p;
            for r in 0..d {
                let c = 4.0 * p * (x[i * d + r] - x[j * d + r]);
                grad[i * d + r] += c;
                grad[j * d + r] -= c;
            }
        }
        f
    }

    fn acceptable(&self, x: &[f64], mode: Mode, margin: f64) -> bool {
        for i in 0..self.n {
            for j in i + 1..self.n {
                let dist = self.sq_dist(x, i, j).sqrt();
                if dist <= TOL_DISTINCT.max(margin) {
                    return false;
                }
                if mode == Mode::Faithful && !self.g.has_edge(i, j) && (dist - 1.0).abs() < margin {
                    return false;
                }
            }
        }
        true
    }

    fn to_embedding(&self, x: &[f64]) -> Option<Embedding> {
        let points = x
            .chunks(self.d)
            .map(|c| Point::new(c.to_vec()).ok())
            .collect::<Option<Vec<_>>>()?;
        Embedding::new(self.d, points).ok()
    }
}

/// Gradient descent from `x`; returns the final objective.
fn descend(p: &Problem, x: &mut [f64], max_iters: usize, target: f64) -> f64 {
    let m = x.len();
    let mut grad = vec![0.0; m];
    let mut f = p.gradient(x, &mut grad);
    let mut step = 1e-2;
    let mut prev_x = x.to_vec();
    let mut prev_g = grad.clone();
    let mut trial = vec![0.0; m];
    for it in 0..max_iters {
        if f <= target {
            break;
        }
        let gg: f64 = grad.iter().map(|v| v * v).sum();
        if gg == 0.0 {
            break;
        }
        if it > 0 {
            // Barzilai-Borwein step from the last move
            let (mut ss, mut sy) = (0.0, 0.0);
            for k in 0..m {
                let s = x[k] - prev_x[k];
                let y = grad[k] - prev_g[k];
                ss += s * s;
                sy += s * y;
            }
            step = if sy > 0.0 {
                (ss / sy).clamp(1e-10, 1e3)
            } else {
                step * 2.0
            };
        }
        let mut accepted = false;
        for _ in 0..60 {
            for k in 0..m {
                trial[k] = x[k] - step * grad[k];
            }
            let ft = p.value(&trial);
            if ft <= f - 1e-4 * step * gg {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if !accepted {
            break;
        }
        prev_x.copy_from_slice(x);
        prev_g.copy_from_slice(&grad);
        x.copy_from_slice(&trial);
        f = p.gradient(x, &mut grad);
    }
    f
}

enum Outcome {
    Accepted(Vec<f64>, f64),
    Rejected(f64),
    Stuck(f64),
}

fn run_restart(p: &Problem, cfg: &SolverConfig, mode: Mode, restart: usize) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(restart as u64);
    let half = cfg.init_scale / 2.0;
    let mut x: Vec<f64> = (0..p.n * p.d)
        .map(|_| rng.random_range(-half..half))
        .collect();
    // keep polishing well past the acceptance threshold while it is cheap
    let f = descend(p, &mut x, cfg.max_iters, cfg.tol_residual * 1e-8);
    if f > cfg.tol_residual {
        Outcome::Stuck(f)
    } else if p.acceptable(&x, mode, cfg.margin_nonedge)
        && p.to_embedding(&x)
            .is_some_and(|e| verify(p.g, &e, mode, cfg.verify_tol()).is_ok_and(|r| r.pass))
    {
        Outcome::Accepted(x, f)
    } else {
        Outcome::Rejected(f)
    }
}

fn solve(g: &Graph, d: usize, cfg: &SolverConfig, mode: Mode) -> SolveResult {
    assert!(d >= 1, "dimension must be positive");
    let p = Problem::new(g, d);
    let mut best = f64::INFINITY;
    let mut rejected = 0;
    let batch = if cfg.jobs == 1 {
        1
    } else {
        4 * cfg.jobs.max(1)
    };
    let pool = (cfg.jobs != 1).then(|| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.jobs)
            .build()
            .expect("thread pool")
    });
    let mut start = 0;
    while start < cfg.restarts {
        let end = (start + batch).min(cfg.restarts);
        let outcomes: Vec<Outcome> = match &pool {
            None => (start..end)
                .map(|r| run_restart(&p, cfg, mode, r))
                .collect(),
            Some(pool) => pool.install(|| {
                (start..end)
                    .into_par_iter()
                    .map(|r| run_restart(&p, cfg, mode, r))
                    .collect()
            }),
        };
        // lowest restart index wins, so the result does not depend on `jobs`
        for (offset, o) in outcomes.into_iter().enumerate() {
            match o {
                Outcome::Accepted(x, f) => {
                    return SolveResult {
                        status: Status::Found,
                        embedding: p.to_embedding(&x),
                        best_residual: f,
                        restarts_used: start + offset + 1,
                        rejected,
                    };
                }
                Outcome::Rejected(f) => {
                    rejected += 1;
                    best = best.min(f);
                }
                Outcome::Stuck(f) => best = best.min(f),
            }
        }
        start = end;
    }
    SolveResult {
        status: Status::NotFound,
        embedding: None,
        best_residual: best,
        restarts_used: cfg.restarts,
        rejected,
    }
}

/// Searches `R^d` for an embedding whose unit-distance graph is exactly `g`.
pub fn solve_faithful(g: &Graph, d: usize, cfg: &SolverConfig) -> SolveResult {
    solve(g, d, cfg, Mode::Faithful)
}

/// Searches `R^d` for an embedding with every edge of `g` at unit length.
pub fn solve_distance(g: &Graph, d: usize, cfg: &SolverConfig) -> SolveResult {
    solve(g, d, cfg, Mode::Distance)
}

/// Largest relative deviation between the analytic gradient and central
/// differences (step `1e-6`) at a random point.
pub fn gradient_check(g: &Graph, d: usize, seed: u64) -> f64 {
    let p = Problem::new(g, d);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let x: Vec<f64> = (0..p.n * d).map(|_| rng.random_range(-1.0..1.0)).collect();
    let mut grad = vec![0.0; x.len()];
    p.gradient(&x, &mut grad);
    let h = 1e-6;
    let mut worst: f64 = 0.0;
    let mut y = x.clone();
    for k in 0..x.len() {
        y[k] = x[k] + h;
        let fp = p.value(&y);
        y[k] = x[k] - h;
        let fm = p.value(&y);
        y[k] = x[k];
        let numeric = (fp - fm) / (2.0 * h);
        let scale = grad[k].abs().max(numeric.abs()).max(1.0);
        worst = worst.max((grad[k] - numeric).abs() / scale);
    }
    worst
}
