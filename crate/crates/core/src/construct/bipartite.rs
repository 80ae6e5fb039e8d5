//! Faithful embeddings of bipartite graphs whose A side has degrees at most `d`.
//!
//! The B side is sampled as a tiny, nearly flat cloud in general position.
//! Each A vertex then sits on the complementary sphere `S'(N)` of its
//! neighbourhood `N`: the points at distance exactly 1 from all of `N`.
//! For `|N| = d` that sphere is a pair of points; otherwise there is room to
//! pick a point that avoids every unwanted unit distance. All genericity
//! conditions are checked numerically and failures trigger a reseed.

use std::collections::BTreeMap;

use itertools::Itertools;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::embedding::{Embedding, TOL_DISTINCT};
use crate::geom::{affine_rank, circumsphere, complementary_sphere, Point, Sphere};
use crate::graph::Graph;
use crate::verify::{max_edge_error, min_nonedge_gap, verify, Mode};

use super::EmbedError;

/// Knobs for [`embed_bipartite_faithful_with`]. `Default` gives the standard constants.
#[derive(Clone, Debug, PartialEq)]
pub struct BipartiteParams {
    pub d: usize,
    pub seed: u64,
    /// Vertices to treat as the A side; `None` uses the graph's own bipartition.
    pub a_side: Option<Vec<usize>>,
    pub max_retries: usize,
    pub tol: f64,
    /// Required gap between any non-edge distance and 1.
    pub margin: f64,
    /// Diameter of the B cloud.
    pub diameter: f64,
    /// Squash factor of the B cloud in its last coordinate.
    pub eps: f64,
    /// Neighbourhood circumradii must avoid `(1/2 - gap, 1/2 + gap)` and stay below `1 - gap`.
    pub radius_gap: f64,
    /// Local samples per A vertex before the attempt is abandoned.
    pub local_tries: usize,
}

impl Default for BipartiteParams {
    fn default() -> Self {
        BipartiteParams {
            d: 3,
            seed: 0,
            a_side: None,
            max_retries: 50,
            tol: 1e-7,
            margin: 1e-4,
            diameter: 0.1,
            eps: 0.01,
            radius_gap: 0.05,
            local_tries: 200,
        }
    }
}

/// Faithful embedding of bipartite `g` in `R^d` with the default constants.
pub fn embed_bipartite_faithful(g: &Graph, d: usize, seed: u64) -> Result<Embedding, EmbedError> {
    embed_bipartite_faithful_with(
        g,
        &BipartiteParams {
            d,
            seed,
            ..BipartiteParams::default()
        },
    )
}

struct Layout {
    b: Vec<usize>,
    /// Neighbourhood of each A vertex as positions into `b`, sorted.
    nbhd: BTreeMap<usize, Vec<usize>>,
}

fn layout(g: &Graph, p: &BipartiteParams) -> Result<Layout, EmbedError> {
    if p.d < 2 {
        return Err(EmbedError::Precondition {
            reason: format!("dimension must be at least 2, got {}", p.d),
            vertices: vec![],
        });
    }
    let (a, b) = match &p.a_side {
        Some(side) => {
            let a: Vec<usize> = side.iter().copied().sorted().dedup().collect();
            if let Some(&v) = a.iter().find(|&&v| v >= g.n()) {
                return Err(EmbedError::Precondition {
                    reason: "A side names a vertex outside the graph".into(),
                    vertices: vec![v],
                });
            }
            let b: Vec<usize> = (0..g.n()).filter(|v| a.binary_search(v).is_err()).collect();
            if let Some((u, v)) = g
                .edges()
                .find(|&(u, v)| a.binary_search(&u).is_ok() == a.binary_search(&v).is_ok())
            {
                return Err(EmbedError::Precondition {
                    reason: "edge inside one side of the given bipartition".into(),
                    vertices: vec![u, v],
                });
            }
            (a, b)
        }
        None => g.bipartition()?,
    };
    let mut nbhd = BTreeMap::new();
    for &v in &a {
        let n: Vec<usize> = g
            .neighbors(v)
            .into_iter()
            .map(|w| b.binary_search(&w).expect("neighbour lies in B"))
            .collect();
        if n.len() > p.d {
            return Err(EmbedError::Precondition {
                reason: format!("A vertex has degree {} > d = {}", n.len(), p.d),
                vertices: vec![v],
            });
        }
        nbhd.insert(v, n);
    }
    let mut full: BTreeMap<&Vec<usize>, Vec<usize>> = BTreeMap::new();
    for (&v, n) in &nbhd {
        if n.len() == p.d {
            full.entry(n).or_default().push(v);
        }
    }
    if let Some(group) = full.values().find(|g| g.len() > 2) {
        return Err(EmbedError::Precondition {
            reason: "three or more A vertices of degree d share one neighbourhood".into(),
            vertices: group.clone(),
        });
    }
    Ok(Layout { b, nbhd })
}

/// Nearly flat cloud: a ball of radius `diameter/2` squashed by `eps` in the last coordinate.
fn sample_b<R: Rng>(rng: &mut R, m: usize, p: &BipartiteParams) -> Vec<Point> {
    let r = p.diameter / 2.0;
    (0..m)
        .map(|_| {
            let mut v: Vec<f64> = (0..p.d).map(|_| rng.sample(StandardNormal)).collect();
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt().max(1e-300);
            let s = r * rng.random::<f64>().powf(1.0 / p.d as f64) / norm;
            for x in &mut v {
                *x *= s;
            }
            v[p.d - 1] *= p.eps;
            Point::new(v).expect("finite")
        })
        .collect()
}

fn pick(points: &[Point], idx: &[usize]) -> Vec<Point> {
    idx.iter().map(|&i| points[i].clone()).collect()
}

/// General position of the B cloud: small subsets are affinely independent
/// and no `d + 1` of its points have circumradius near 1.
fn b_is_generic(bp: &[Point], lay: &Layout, p: &BipartiteParams) -> bool {
    let m = bp.len();
    let top = p.d.min(m);
    let subsets: usize = (2..=top).map(|s| binomial(m, s)).sum();
    let independent =
        |idx: &[usize]| affine_rank(&pick(bp, idx)).expect("dims agree") + 1 == idx.len();
    let ranks_ok = if subsets <= 100_000 {
        (2..=top).all(|s| (0..m).combinations(s).all(|c| independent(&c)))
    } else {
        lay.nbhd.values().all(|n| n.is_empty() || independent(n))
    };
    if !ranks_ok {
        return false;
    }
    if m > p.d && binomial(m, p.d + 1) <= 100_000 {
        let near_unit = (0..m)
            .combinations(p.d + 1)
            .any(|c| circumsphere(&pick(bp, &c)).is_ok_and(|s| (s.radius - 1.0).abs() <= p.margin));
        if near_unit {
            return false;
        }
    }
    true
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Distances from `x` to every placed point that is not an intended neighbour stay away from 1.
fn clear_of(x: &Point, placed: &[(usize, Point)], neighbours: &[usize], margin: f64) -> bool {
    placed.iter().all(|(v, q)| {
        let dist = x.distance(q);
        dist > TOL_DISTINCT.max(margin) && (neighbours.contains(v) || (dist - 1.0).abs() >= margin)
    })
}

fn attempt<R: Rng>(
    rng: &mut R,
    g: &Graph,
    lay: &Layout,
    p: &BipartiteParams,
) -> Result<Vec<Option<Point>>, &'static str> {
    let bp = sample_b(rng, lay.b.len(), p);
    if !b_is_generic(&bp, lay, p) {
        return Err("B cloud not in general position");
    }
    let mut spheres: BTreeMap<usize, Sphere> = BTreeMap::new();
    for (&v, n) in &lay.nbhd {
        if n.is_empty() {
            continue;
        }
        let s = circumsphere(&pick(&bp, n)).map_err(|_| "dependent neighbourhood")?;
        if (s.radius - 0.5).abs() < p.radius_gap || s.radius >= 1.0 - p.radius_gap {
            return Err("neighbourhood circumradius out of range");
        }
        let c = complementary_sphere(&s, p.d).map_err(|_| "no complementary sphere")?;
        spheres.insert(v, c);
    }

    let mut pos: Vec<Option<Point>> = vec![None; g.n()];
    for (i, &v) in lay.b.iter().enumerate() {
        pos[v] = Some(bp[i].clone());
    }
    // degree-d vertices first; twins take the two points in vertex order
    let (full, rest): (Vec<_>, Vec<_>) = lay.nbhd.iter().partition(|(_, n)| n.len() == p.d);
    let order: Vec<(usize, Option<&Sphere>)> = full
        .into_iter()
        .chain(rest)
        .map(|(&v, _)| (v, spheres.get(&v)))
        .collect();
    place_on_complements(rng, g, &order, &mut pos, p.d, p.margin, p.local_tries)?;
    Ok(pos)
}

/// Places each listed vertex on its sphere (or, for `None`, at a random point
/// 1.5 to 3 from the origin) so that it keeps every non-neighbour already in
/// `pos` away from unit distance. A 0-sphere offers its two points in order,
/// a single-point sphere only its centre; larger spheres are sampled.
pub(crate) fn place_on_complements<R: Rng>(
    rng: &mut R,
    g: &Graph,
    order: &[(usize, Option<&Sphere>)],
    pos: &mut [Option<Point>],
    d: usize,
    margin: f64,
    local_tries: usize,
) -> Result<(), &'static str> {
    let mut placed: Vec<(usize, Point)> = pos
        .iter()
        .enumerate()
        .filter_map(|(v, x)| x.clone().map(|x| (v, x)))
        .collect();
    for &(v, sphere) in order {
        let nb = g.neighbors(v);
        let candidates: Vec<Point> = match sphere {
            Some(s) if s.flat.dim() == 0 => vec![s.center.clone()],
            Some(s) if s.flat.dim() == 1 => s.zero_sphere_points().expect("flat of dim 1").to_vec(),
            Some(s) => (0..local_tries).map(|_| s.sample(rng)).collect(),
            None => (0..local_tries).map(|_| far_point(rng, d)).collect(),
        };
        let x = candidates
            .into_iter()
            .find(|x| clear_of(x, &placed, &nb, margin))
            .ok_or(match sphere {
                Some(s) if s.flat.dim() <= 1 => "degree-d vertex lands near a unit distance",
                _ => "no clear point on a complementary sphere",
            })?;
        pos[v] = Some(x.clone());
        placed.push((v, x));
    }
    Ok(())
}

fn far_point<R: Rng>(rng: &mut R, d: usize) -> Point {
    let v: Vec<f64> = (0..d).map(|_| rng.sample(StandardNormal)).collect();
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt().max(1e-300);
    let r = rng.random_range(1.5..3.0);
    Point::new(v.into_iter().map(|x| x * r / norm).collect()).expect("finite")
}

/// As [`embed_bipartite_faithful`], with explicit constants and an optional A side.
pub fn embed_bipartite_faithful_with(
    g: &Graph,
    p: &BipartiteParams,
) -> Result<Embedding, EmbedError> {
    let lay = layout(g, p)?;
    let mut rejects: BTreeMap<&'static str, usize> = BTreeMap::new();
    for k in 0..p.max_retries {
        let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
        rng.set_stream(k as u64);
        let pos = match attempt(&mut rng, g, &lay, p) {
            Ok(pos) => pos,
            Err(why) => {
                *rejects.entry(why).or_default() += 1;
                continue;
            }
        };
        let points: Vec<Point> = pos
            .into_iter()
            .map(|x| x.expect("every vertex placed"))
            .collect();
        let Ok(e) = Embedding::new(p.d, points) else {
            *rejects.entry("coincident points").or_default() += 1;
            continue;
        };
        let ok = verify(g, &e, Mode::Faithful, p.tol).is_ok_and(|r| r.pass)
            && max_edge_error(g, &e) <= p.tol
            && min_nonedge_gap(g, &e) >= p.margin;
        if ok {
            return Ok(e);
        }
        *rejects.entry("final verification").or_default() += 1;
    }
    Err(EmbedError::ConstructionFailed {
        attempts: p.max_retries,
        reason: rejects.iter().map(|(k, v)| format!("{k}: {v}")).join(", "),
    })
}
