//! Certified bounds on the dimension needed for a faithful realisation of a
//! bipartite graph.
//!
//! Each side of the bipartition induces an H-system on the other side: the
//! ground set is the opposite side and every vertex contributes its
//! neighbourhood as a condition. Lower bounds come from two sound rules on
//! that system plus an offset depending on the number `s` of vertices adjacent
//! to the whole ground set. Upper bounds are only claimed with a verified
//! witness embedding; when neither side settles the question the verdict is
//! `UNDECIDED`.

use std::collections::HashSet;

use itertools::Itertools;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::construct::bipartite::place_on_complements;
use crate::construct::{
    embed_bipartite_faithful_with, realize_hsystem, BipartiteParams, EmbedError, FlatnessBudget,
    HSystem,
};
use crate::embedding::Embedding;
use crate::geom::{complementary_sphere, minimal_sphere, AffineFlat, Point, Sphere};
use crate::graph::{Graph, GraphError};
use crate::solver::{solve_faithful, SolverConfig};
use crate::verify::{verify, Mode};

/// Node budget of the independence-chain search.
pub const CHAIN_NODE_CAP: usize = 100_000;
/// Verification tolerance for witnesses built from H-system realisations.
pub const TOL_WITNESS: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum AuditError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Embed(#[from] EmbedError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    A,
    B,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    NotRealizable,
    Realizable,
    Undecided,
}

/// One step of a certificate: a rule name and the data it used.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RuleApplication {
    pub rule: String,
    pub params: Value,
}

impl RuleApplication {
    fn new(rule: &str, params: Value) -> Self {
        RuleApplication {
            rule: rule.to_string(),
            params,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AuditReport {
    pub graph_id: String,
    pub d_queried: usize,
    pub verdict: Verdict,
    /// Lower bound on the dimension of the sphere through the ground points; -1 for a single point.
    pub k_lower: isize,
    pub k_upper: Option<usize>,
    pub s: usize,
    pub side: Side,
    pub rule_chain: Vec<RuleApplication>,
    #[serde(skip)]
    pub embedding: Option<Embedding>,
}

impl AuditReport {
    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string(self).expect("report serialises");
        if let Some(e) = &self.embedding {
            out.pop();
            out.push_str(",\"embedding\":");
            out.push_str(&e.to_json());
            out.push('}');
        }
        out
    }
}

/// Short stable identifier: SHA-256 of the graph's JSON, first 16 hex digits.
pub fn graph_id(g: &Graph) -> String {
    let digest = Sha256::digest(g.to_json().as_bytes());
    hex::encode(digest)[..16].to_string()
}

/// The H-system one side induces on the other, with the vertex behind each
/// ground index and behind each condition.
#[derive(Clone, Debug, PartialEq)]
pub struct SideSystem {
    pub side: Side,
    pub hsystem: HSystem,
    /// Vertex id of each ground index.
    pub ground: Vec<usize>,
    /// `(vertex, neighbourhood as ground indices)` for every vertex of `side`.
    pub members: Vec<(usize, Vec<usize>)>,
}

pub fn side_system(g: &Graph, side: Side) -> Result<SideSystem, AuditError> {
    let (a, b) = g.bipartition()?;
    let (own, ground) = match side {
        Side::A => (a, b),
        Side::B => (b, a),
    };
    let members: Vec<(usize, Vec<usize>)> = own
        .iter()
        .map(|&v| {
            let n = g
                .neighbors(v)
                .into_iter()
                .map(|w| ground.binary_search(&w).expect("neighbours lie across"))
                .collect();
            (v, n)
        })
        .collect();
    let hsystem = HSystem::new(
        ground.len(),
        members.iter().map(|(_, n)| n.clone()).collect(),
    )?;
    Ok(SideSystem {
        side,
        hsystem,
        ground,
        members,
    })
}

/// The H-system whose conditions are the neighbourhoods of the `side` vertices.
pub fn hsystem_of(g: &Graph, side: Side) -> Result<HSystem, AuditError> {
    Ok(side_system(g, side)?.hsystem)
}

/// Minimum total condition size of an H-system that cannot be realised on `S^k`.
pub fn lemedge_bound(k: usize) -> usize {
    assert!(k >= 1, "sphere dimension must be positive");
    (k + 3) * (k + 2) / 2 - 3
}

/// Greedy longest subsequence with `|H_{i_j}| >= j + 2`; the system is
/// realisable on `S^k` for every `k >= s + 1`. Returns `(s, s + 1)`.
pub fn lemedge2_guarantee(sizes: &[usize]) -> (usize, usize) {
    let mut sorted = sizes.to_vec();
    sorted.sort_unstable();
    let mut s = 0;
    for size in sorted {
        if size >= s + 3 {
            s += 1;
        }
    }
    (s, s + 1)
}

/// Total size of all conditions, full ones included.
pub fn edge_sum(h: &HSystem) -> usize {
    h.edge_sum()
}

#[derive(Clone, Debug, PartialEq)]
pub struct LowerBound {
    pub k: isize,
    pub rules: Vec<RuleApplication>,
}

/// Longest independence chain found: the first three elements are free,
/// every later one is excluded by a condition containing all earlier ones.
/// Returns the chain and whether the search finished within the node cap.
pub fn independence_chain(h: &HSystem, cap: usize) -> (Vec<usize>, bool) {
    let m = h.m();
    if m > 128 {
        return ((0..m.min(3)).collect(), false);
    }
    let full: u128 = if m == 128 {
        u128::MAX
    } else {
        (1u128 << m) - 1
    };
    let masks: Vec<u128> = h
        .conditions()
        .iter()
        .map(|c| c.iter().fold(0u128, |acc, &i| acc | 1 << i))
        .collect();

    struct Search<'a> {
        masks: &'a [u128],
        full: u128,
        seen: HashSet<u128>,
        nodes: usize,
        cap: usize,
        best: Vec<usize>,
    }
    impl Search<'_> {
        fn dfs(&mut self, set: u128, chain: &mut Vec<usize>) {
            if self.nodes >= self.cap || !self.seen.insert(set) {
                return;
            }
            self.nodes += 1;
            if chain.len() > self.best.len() {
                self.best = chain.clone();
            }
            let open = self
                .masks
                .iter()
                .filter(|&&h| h & set == set)
                .fold(0u128, |acc, &h| acc | (!h & self.full));
            for j in 0..128 {
                if open >> j & 1 == 1 {
                    chain.push(j);
                    self.dfs(set | 1 << j, chain);
                    chain.pop();
                }
            }
        }
    }

    let mut search = Search {
        masks: &masks,
        full,
        seen: HashSet::new(),
        nodes: 0,
        cap,
        best: (0..m.min(3)).collect(),
    };
    if m >= 3 {
        // only triples inside some condition can be extended
        let starts: Vec<Vec<usize>> = (0..m)
            .combinations(3)
            .filter(|t| {
                let tm = t.iter().fold(0u128, |acc, &i| acc | 1 << i);
                masks.iter().any(|&h| h & tm == tm)
            })
            .collect();
        for t in starts {
            let tm = t.iter().fold(0u128, |acc, &i| acc | 1 << i);
            let mut chain = t.clone();
            search.dfs(tm, &mut chain);
            if search.nodes >= cap || search.best.len() == m {
                break;
            }
        }
    }
    let complete = search.nodes < cap;
    (search.best, complete)
}

/// Certified lower bound on the dimension of a sphere carrying a realisation
/// of `h`, assuming the ground points are cospherical. A single point counts
/// as a sphere of dimension -1, two points as a 0-sphere.
pub fn k_lower_bound(h: &HSystem) -> LowerBound {
    let k0 = h.m().min(3) as isize - 2;
    let mut k = k0;
    let mut rules = vec![RuleApplication::new(
        "distinct_points",
        json!({ "m": h.m(), "k_bound": k0 }),
    )];
    if h.m() >= 3 {
        let (chain, complete) = independence_chain(h, CHAIN_NODE_CAP);
        let bound = chain.len() as isize - 2;
        k = k.max(bound);
        rules.push(RuleApplication::new(
            "independence_chain",
            json!({
                "chain": chain,
                "length": chain.len(),
                "k_bound": bound,
                "search_complete": complete,
            }),
        ));
    }
    LowerBound { k, rules }
}

/// How far the ambient dimension must exceed the sphere dimension, given `s`
/// full vertices; `None` when the ground points need not be cospherical.
pub fn full_vertex_offset(s: usize) -> Option<usize> {
    match s {
        0 => None,
        1 => Some(1),
        2 => Some(2),
        _ => Some(3),
    }
}

/// Sphere radius used for the ground points in the H-system witness.
fn witness_radius(s: usize) -> f64 {
    match s {
        0 | 1 => 1.0,
        2 => 0.4,
        _ => 0.5,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AuditConfig {
    pub seed: u64,
    /// Attempts per witness strategy.
    pub attempts: usize,
    /// Largest vertex count for the numeric fallback.
    pub solver_max_n: usize,
    pub solver: SolverConfig,
}

impl Default for AuditConfig {
    fn default() -> Self {
        AuditConfig {
            seed: 0,
            attempts: 10,
            solver_max_n: 10,
            solver: SolverConfig {
                restarts: 50,
                ..SolverConfig::default()
            },
        }
    }
}

/// Audit with the default configuration.
pub fn faithful_dim_audit(g: &Graph, d: usize) -> Result<AuditReport, AuditError> {
    faithful_dim_audit_with(g, d, &AuditConfig::default())
}

struct SideBound {
    sys: SideSystem,
    lower: LowerBound,
    required: Option<isize>,
}

pub fn faithful_dim_audit_with(
    g: &Graph,
    d: usize,
    cfg: &AuditConfig,
) -> Result<AuditReport, AuditError> {
    let mut bounds = Vec::new();
    for side in [Side::A, Side::B] {
        let sys = side_system(g, side)?;
        let lower = k_lower_bound(&sys.hsystem);
        let required = match sys.hsystem.m() {
            0 => None,
            _ => full_vertex_offset(sys.hsystem.s()).map(|o| lower.k + o as isize),
        };
        bounds.push(SideBound {
            sys,
            lower,
            required,
        });
    }
    // the strongest certificate decides; ties go to side A
    let strongest = bounds
        .iter()
        .enumerate()
        .max_by_key(|(i, b)| (b.required.unwrap_or(isize::MIN), std::cmp::Reverse(*i)))
        .map(|(i, _)| i)
        .expect("two sides");

    let mut report = AuditReport {
        graph_id: graph_id(g),
        d_queried: d,
        verdict: Verdict::Undecided,
        k_lower: bounds[strongest].lower.k,
        k_upper: None,
        s: bounds[strongest].sys.hsystem.s(),
        side: bounds[strongest].sys.side,
        rule_chain: Vec::new(),
        embedding: None,
    };
    let describe = |b: &SideBound| {
        RuleApplication::new(
            "hsystem",
            json!({
                "side": b.sys.side,
                "ground": b.sys.ground,
                "m": b.sys.hsystem.m(),
                "s": b.sys.hsystem.s(),
                "sizes": b.sys.hsystem.sizes(),
            }),
        )
    };

    let b = &bounds[strongest];
    report.rule_chain.push(describe(b));
    report.rule_chain.extend(b.lower.rules.iter().cloned());
    if let (Some(req), Some(offset)) = (b.required, full_vertex_offset(b.sys.hsystem.s())) {
        report.rule_chain.push(RuleApplication::new(
            "full_vertex_offset",
            json!({ "s": b.sys.hsystem.s(), "offset": offset, "required_d": req }),
        ));
        if (d as isize) < req {
            report.verdict = Verdict::NotRealizable;
            let sizes: Vec<usize> = b.sys.members.iter().map(|(_, n)| n.len()).collect();
            report.k_upper = Some(lemedge2_guarantee(&sizes).1);
            return Ok(report);
        }
    }

    // upper side: try to build and verify a witness
    for order in [strongest, 1 - strongest] {
        let b = &bounds[order];
        if let Some((e, k, rule)) = hsystem_witness(g, &b.sys, d, cfg) {
            report.side = b.sys.side;
            report.s = b.sys.hsystem.s();
            report.k_lower = b.lower.k;
            report.k_upper = Some(k);
            if order != strongest {
                report.rule_chain.push(describe(b));
                report.rule_chain.extend(b.lower.rules.iter().cloned());
            }
            report.rule_chain.push(rule);
            report.verdict = Verdict::Realizable;
            report.embedding = Some(e);
            return Ok(report);
        }
    }
    let sizes: Vec<usize> = bounds[strongest]
        .sys
        .members
        .iter()
        .map(|(_, n)| n.len())
        .collect();
    report.k_upper = Some(lemedge2_guarantee(&sizes).1);

    for b in &bounds {
        if d < 2 {
            break;
        }
        let p = BipartiteParams {
            d,
            seed: cfg.seed,
            a_side: Some(b.sys.members.iter().map(|(v, _)| *v).collect()),
            ..BipartiteParams::default()
        };
        if let Ok(e) = embed_bipartite_faithful_with(g, &p) {
            report.rule_chain.push(RuleApplication::new(
                "bipartite_construction",
                json!({ "side": b.sys.side, "seed": cfg.seed, "tol": p.tol, "margin": p.margin }),
            ));
            report.verdict = Verdict::Realizable;
            report.embedding = Some(e);
            return Ok(report);
        }
    }

    if g.n() <= cfg.solver_max_n && d >= 1 {
        let sc = SolverConfig {
            seed: cfg.seed,
            ..cfg.solver.clone()
        };
        let r = solve_faithful(g, d, &sc);
        report.rule_chain.push(RuleApplication::new(
            "numeric_solver",
            json!({
                "found": r.found(),
                "restarts_used": r.restarts_used,
                "best_residual": r.best_residual,
            }),
        ));
        if let Some(e) = r.embedding {
            report.verdict = Verdict::Realizable;
            report.embedding = Some(e);
        }
    }
    Ok(report)
}

/// Realises the side's H-system on a small sphere, then puts the full
/// vertices on its complementary sphere and every other vertex on the
/// complementary sphere of its own neighbourhood.
fn hsystem_witness(
    g: &Graph,
    sys: &SideSystem,
    d: usize,
    cfg: &AuditConfig,
) -> Option<(Embedding, usize, RuleApplication)> {
    let h = &sys.hsystem;
    let s = h.s();
    let m = h.m();
    if m == 0 || d == 0 {
        return None;
    }
    let real = realize_hsystem(h, FlatnessBudget::default(), cfg.seed).ok()?;
    let k = real.k;
    if k + 1 > d {
        return None;
    }
    let r = witness_radius(s);
    let origin = Point::origin(d);
    let ground_pts: Vec<Point> = real
        .points
        .iter()
        .map(|p| {
            Point::new(p.coords().iter().map(|x| x * r).collect())
                .expect("finite")
                .padded(d)
        })
        .collect();
    let ground_sphere = Sphere {
        center: origin.clone(),
        radius: r,
        flat: AffineFlat {
            base: origin.clone(),
            basis: AffineFlat::full(Point::origin(k + 1))
                .basis
                .iter()
                .map(|b| {
                    let mut v = nalgebra::DVector::zeros(d);
                    v.rows_mut(0, k + 1).copy_from(b);
                    v
                })
                .collect(),
        },
    };
    let full_sphere = if r >= 1.0 {
        Sphere {
            center: origin.clone(),
            radius: 0.0,
            flat: AffineFlat::point(origin.clone()),
        }
    } else {
        complementary_sphere(&ground_sphere, d).ok()?
    };

    let mut spheres: Vec<(usize, Option<Sphere>)> = Vec::new();
    let mut full_first: Vec<(usize, Option<Sphere>)> = Vec::new();
    for (v, n) in &sys.members {
        if n.len() == m {
            full_first.push((*v, Some(full_sphere.clone())));
        } else if n.is_empty() {
            spheres.push((*v, None));
        } else {
            let pts: Vec<Point> = n.iter().map(|&i| ground_pts[i].clone()).collect();
            let sn = minimal_sphere(&pts, 1e-9).ok()?;
            spheres.push((*v, Some(complementary_sphere(&sn, d).ok()?)));
        }
    }
    full_first.extend(spheres);

    for attempt in 0..cfg.attempts {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(attempt as u64);
        let mut pos: Vec<Option<Point>> = vec![None; g.n()];
        for (i, &v) in sys.ground.iter().enumerate() {
            pos[v] = Some(ground_pts[i].clone());
        }
        let order: Vec<(usize, Option<&Sphere>)> =
            full_first.iter().map(|(v, s)| (*v, s.as_ref())).collect();
        if place_on_complements(&mut rng, g, &order, &mut pos, d, 10.0 * TOL_WITNESS, 200).is_err()
        {
            continue;
        }
        let points: Vec<Point> = pos.into_iter().map(|p| p.expect("placed")).collect();
        let Ok(e) = Embedding::new(d, points) else {
            continue;
        };
        let ok = verify(g, &e, Mode::Faithful, TOL_WITNESS)
            .is_ok_and(|rep| rep.pass && rep.warnings.is_empty());
        if ok {
            let rule = RuleApplication::new(
                "hsystem_construction",
                json!({
                    "side": sys.side,
                    "k": k,
                    "radius": r,
                    "growth_steps": real.growth_steps,
                    "seed": cfg.seed,
                    "tol": TOL_WITNESS,
                }),
            );
            return Some((e, k, rule));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::hsystem::condition_holds;
    use crate::graph::{
        complete_bipartite, make_kdoubleprime, make_kprime, make_remark_graph, path, star,
    };
    use proptest::prelude::*;
    use rand::Rng;

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn hsystems_of_examples() {
        let h = hsystem_of(&complete_bipartite(3, 3), Side::A).unwrap();
        assert_eq!((h.m(), h.s()), (3, 3));
        assert!(h.conditions().is_empty());
        let h = hsystem_of(&make_kprime(4).unwrap(), Side::A).unwrap();
        assert_eq!((h.m(), h.s()), (4, 3));
        assert_eq!(h.sizes(), vec![3]);
        let h = hsystem_of(&path(2), Side::A).unwrap();
        assert_eq!((h.m(), h.s()), (1, 1));
        assert!(hsystem_of(&crate::graph::complete(3), Side::A).is_err());
    }

    #[test]
    fn edge_bound_values() {
        assert_eq!(
            (1..=4).map(lemedge_bound).collect::<Vec<_>>(),
            vec![3, 7, 12, 18]
        );
        assert_eq!(lemedge2_guarantee(&[3, 4, 5]), (3, 4));
        assert_eq!(lemedge2_guarantee(&[2, 2, 2]), (0, 1));
        assert_eq!(lemedge2_guarantee(&[3, 3, 3, 7]), (2, 3));
    }

    #[test]
    fn edge_sums() {
        assert_eq!(
            edge_sum(&hsystem_of(&make_kdoubleprime(4).unwrap(), Side::A).unwrap()),
            15
        );
        assert_eq!(
            edge_sum(&hsystem_of(&complete_bipartite(3, 3), Side::A).unwrap()),
            9
        );
        assert_eq!(
            edge_sum(&hsystem_of(&make_remark_graph(4).unwrap(), Side::A).unwrap()),
            21
        );
        for d in 4..=10 {
            let h = hsystem_of(&make_kdoubleprime(d).unwrap(), Side::A).unwrap();
            assert_eq!(edge_sum(&h), binom(d + 3, 2) - 6);
        }
    }

    #[test]
    fn lower_bounds() {
        let h = hsystem_of(&complete_bipartite(3, 3), Side::A).unwrap();
        assert_eq!(k_lower_bound(&h).k, 1);
        for d in 4..=8 {
            let h = hsystem_of(&make_kprime(d).unwrap(), Side::A).unwrap();
            let lb = k_lower_bound(&h);
            assert_eq!(lb.k, d as isize - 2, "d = {d}");
        }
        let empty = HSystem::new(2, vec![]).unwrap();
        assert_eq!(k_lower_bound(&empty).k, 0);
        assert_eq!(k_lower_bound(&HSystem::new(1, vec![]).unwrap()).k, -1);
    }

    #[test]
    fn stars_on_lines_and_planes() {
        // a centre has at most two unit neighbours on a line
        assert_eq!(
            faithful_dim_audit(&star(3), 1).unwrap().verdict,
            Verdict::NotRealizable
        );
        assert_ne!(
            faithful_dim_audit(&star(2), 1).unwrap().verdict,
            Verdict::NotRealizable
        );
        assert_eq!(
            faithful_dim_audit(&star(5), 2).unwrap().verdict,
            Verdict::Realizable
        );
    }

    #[test]
    fn audit_k33_and_kprime() {
        let r = faithful_dim_audit(&complete_bipartite(3, 3), 3).unwrap();
        assert_eq!(r.verdict, Verdict::NotRealizable);
        assert_eq!((r.s, r.k_lower), (3, 1));
        for d in 4..=8 {
            let r = faithful_dim_audit(&make_kprime(d).unwrap(), d).unwrap();
            assert_eq!(r.verdict, Verdict::NotRealizable, "d = {d}");
            assert_eq!((r.s, r.k_lower), (3, d as isize - 2));
            assert!(r.k_lower <= r.k_upper.unwrap() as isize);
        }
    }

    #[test]
    fn audit_single_edge() {
        let g = path(2);
        let r = faithful_dim_audit(&g, 2).unwrap();
        assert_eq!(r.verdict, Verdict::Realizable);
        let e = r.embedding.as_ref().unwrap();
        assert!(verify(&g, e, Mode::Faithful, 1e-9).unwrap().pass);
        assert!(r.to_json().contains("\"embedding\":{\"dim\":2"));
    }

    #[test]
    fn realizable_witnesses_verify() {
        let cases = [
            (complete_bipartite(3, 3), 4),
            (make_kprime(4).unwrap(), 5),
            (star(5), 2),
            (complete_bipartite(2, 4), 3),
            (make_kdoubleprime(4).unwrap(), 6),
        ];
        for (g, d) in cases {
            let r = faithful_dim_audit(&g, d).unwrap();
            assert_eq!(r.verdict, Verdict::Realizable, "{} in R^{d}", g.to_json());
            let e = r.embedding.unwrap();
            assert!(verify(&g, &e, Mode::Faithful, 1e-6).unwrap().pass);
        }
    }

    #[test]
    fn not_realizable_agrees_with_solver() {
        let cfg = SolverConfig {
            restarts: 40,
            ..SolverConfig::default()
        };
        for (g, d) in [(complete_bipartite(3, 3), 3), (make_kprime(4).unwrap(), 4)] {
            assert_eq!(
                faithful_dim_audit(&g, d).unwrap().verdict,
                Verdict::NotRealizable
            );
            assert!(!solve_faithful(&g, d, &cfg).found());
        }
    }

    #[test]
    fn report_json_is_deterministic() {
        let g = make_kprime(5).unwrap();
        let a = faithful_dim_audit(&g, 5).unwrap().to_json();
        assert_eq!(a, faithful_dim_audit(&g, 5).unwrap().to_json());
        assert!(a.contains("\"verdict\":\"NOT_REALIZABLE\""));
        assert!(a.contains("{\"rule\":\"independence_chain\""));
    }

    fn random_hsystem(seed: u64) -> HSystem {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = rng.random_range(3..=7);
        let count = rng.random_range(0..=6);
        let conds = (0..count)
            .map(|_| {
                let size = rng.random_range(1..m);
                rand::seq::index::sample(&mut rng, m, size).into_vec()
            })
            .collect();
        HSystem::new(m, conds).unwrap()
    }

    #[test]
    fn edge_sum_pays_for_growth() {
        for seed in 0..500 {
            let h = random_hsystem(seed);
            let Ok(real) = realize_hsystem(&h, FlatnessBudget::default(), seed) else {
                panic!("realisation failed for seed {seed}");
            };
            let total: usize = h.sizes().iter().sum();
            for k in 1..=8 {
                if total < lemedge_bound(k) {
                    assert!(real.k <= k, "seed {seed}: k_alg {} > {k}", real.k);
                }
            }
            assert!(real.k <= lemedge2_guarantee(&h.sizes()).1);
            assert!(real.k as isize >= k_lower_bound(&h).k);
            for c in h.conditions() {
                assert!(condition_holds(&real.points, c));
            }
        }
    }

    proptest! {
        #[test]
        fn lemedge2_monotone(mut sizes in prop::collection::vec(0usize..12, 0..10), extra in 0usize..4) {
            sizes.sort_unstable();
            let (s, k) = lemedge2_guarantee(&sizes);
            prop_assert!(s <= sizes.len());
            prop_assert_eq!(k, s + 1);
            let mut longer = sizes.clone();
            longer.push(sizes.last().copied().unwrap_or(0) + extra);
            prop_assert!(lemedge2_guarantee(&longer).0 >= s);
        }
    }
}
