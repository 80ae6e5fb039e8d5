//! Exhaustive counts of labelled (faithful) distance graphs on a few vertices,
//! the zero-pattern upper bound, and small Ramsey-type calculators.

use std::collections::{BTreeMap, HashMap};

use itertools::Itertools;
use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{pair_count, Graph};
use crate::solver::{solve_distance, solve_faithful, SolverConfig};
use crate::verify::Mode;

/// Largest vertex count for the census loops.
pub const CENSUS_MAX_N: usize = 5;
pub const RAMSEY_MAX_S: usize = 3;
pub const RAMSEY_MAX_M: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CensusError {
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("{what} = {value} exceeds the supported maximum {max}")]
    TooLarge {
        what: &'static str,
        value: usize,
        max: usize,
    },
    #[error("no exact oracle in dimension {0}")]
    NoExactOracle(usize),
}

/// `C(n(n-1), nd)` together with whether the underlying zero-pattern count
/// (which needs at least as many polynomials as variables) covers `(n, d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroPatternBound {
    pub n: usize,
    pub d: usize,
    pub value: BigUint,
    /// `C(n, 2) >= nd`; when false the value is not a proven bound.
    pub proposition_applies: bool,
}

impl ZeroPatternBound {
    pub fn to_json(&self) -> String {
        format!(
            "{{\"n\":{},\"d\":{},\"bound\":\"{}\",\"proposition_applies\":{}}}",
            self.n, self.d, self.value, self.proposition_applies
        )
    }
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::ZERO;
    }
    let k = k.min(n - k);
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Upper bound on the number of labelled faithful distance graphs on `n` vertices in `R^d`.
pub fn zero_pattern_bound(n: usize, d: usize) -> Result<ZeroPatternBound, CensusError> {
    if d == 0 || n < 2 * d {
        return Err(CensusError::Hypothesis(format!(
            "need n >= 2d, got n = {n}, d = {d}"
        )));
    }
    if n * d > n * (n - 1) {
        return Err(CensusError::Hypothesis(format!(
            "need nd <= n(n-1), got n = {n}, d = {d}"
        )));
    }
    Ok(ZeroPatternBound {
        n,
        d,
        value: binomial(n * (n - 1), n * d),
        proposition_applies: pair_count(n) >= n * d,
    })
}

/// Exact test for faithful (equivalently, distance) realisability on a line:
/// every component is a path.
pub fn linear_forest_oracle(g: &Graph) -> bool {
    if g.degrees().iter().any(|&deg| deg > 2) {
        return false;
    }
    // acyclic iff edges = n - components
    let adj = g.adjacency();
    let mut seen = vec![false; g.n()];
    let mut components = 0;
    for s in 0..g.n() {
        if seen[s] {
            continue;
        }
        components += 1;
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(u) = stack.pop() {
            for &w in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    g.edge_count() + components == g.n()
}

/// Smallest mask over all relabellings, and the number of distinct relabelled masks.
pub fn canonical_mask(n: usize, mask: u64) -> (u64, usize) {
    let g = Graph::from_mask(n, mask);
    let mut images: Vec<u64> = (0..n)
        .permutations(n)
        .map(|p| g.relabel(&p).to_mask())
        .collect();
    images.sort_unstable();
    images.dedup();
    (images[0], images.len())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Method {
    ExactOracle,
    SolverFound,
    SolverExhausted,
}

/// Which classifier the census may use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OraclePolicy {
    /// Exact oracle where one exists, solver elsewhere.
    #[default]
    Auto,
    /// Solver everywhere, for cross-checking the oracle.
    SolverOnly,
    /// Exact oracle only; fails where none exists.
    ExactOnly,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CensusEntry {
    pub mask: u64,
    pub edges: Vec<[usize; 2]>,
    pub realizable: bool,
    pub method: Method,
    /// Solver objective; `None` for oracle decisions.
    pub residual: Option<f64>,
    /// Mask of the class representative that was actually classified.
    pub representative: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CensusReport {
    pub n: usize,
    pub d: usize,
    pub mode: Mode,
    pub count_realizable: u64,
    pub count_presumed_not: u64,
    /// True when every entry came from an exact oracle.
    pub exact: bool,
    pub classes: usize,
    pub policy: OraclePolicy,
    pub config: SolverConfig,
    pub entries: Vec<CensusEntry>,
}

impl CensusReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serialises")
    }

    /// One line per graph: `graph_id,edges,status,method,residual`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("graph_id,edges,status,method,residual\n");
        for e in &self.entries {
            let edges = e.edges.iter().map(|[u, v]| format!("{u}-{v}")).join(" ");
            let status = if e.realizable {
                "realizable"
            } else {
                "presumed_not"
            };
            let method = serde_json::to_value(e.method).expect("method serialises");
            let residual = e.residual.map(|r| format!("{r:e}")).unwrap_or_default();
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                e.mask,
                edges,
                status,
                method.as_str().expect("string"),
                residual
            ));
        }
        out
    }

    pub fn entry(&self, mask: u64) -> Option<&CensusEntry> {
        self.entries.iter().find(|e| e.mask == mask)
    }
}

/// True for `K_{3,...,3}` with `floor(d/2) + 1` parts, which is never a distance graph in `R^d`.
pub fn krt_obstruction(g: &Graph, d: usize) -> bool {
    let parts = d / 2 + 1;
    if d < 2 || g.n() != 3 * parts {
        return false;
    }
    // complement must be a disjoint union of triangles
    let c = g.complement();
    c.degrees().iter().all(|&deg| deg == 2)
        && (0..g.n()).all(|v| {
            let nb = c.neighbors(v);
            c.has_edge(nb[0], nb[1])
        })
}

fn classify(
    g: &Graph,
    d: usize,
    mode: Mode,
    cfg: &SolverConfig,
    policy: OraclePolicy,
) -> Result<(bool, Method, Option<f64>), CensusError> {
    let oracle = d == 1 && policy != OraclePolicy::SolverOnly;
    if oracle {
        return Ok((linear_forest_oracle(g), Method::ExactOracle, None));
    }
    if policy == OraclePolicy::ExactOnly {
        return Err(CensusError::NoExactOracle(d));
    }
    if mode == Mode::Distance && krt_obstruction(g, d) {
        return Ok((false, Method::ExactOracle, None));
    }
    let solver_cfg = SolverConfig {
        jobs: 1,
        ..cfg.clone()
    };
    let r = match mode {
        Mode::Faithful => solve_faithful(g, d, &solver_cfg),
        Mode::Distance => solve_distance(g, d, &solver_cfg),
    };
    let method = if r.found() {
        Method::SolverFound
    } else {
        Method::SolverExhausted
    };
    Ok((r.found(), method, Some(r.best_residual)))
}

/// Classifies every labelled graph on `n` vertices. One representative per
/// isomorphism class is classified; the others inherit its result.
pub fn census(
    n: usize,
    d: usize,
    mode: Mode,
    cfg: &SolverConfig,
    policy: OraclePolicy,
) -> Result<CensusReport, CensusError> {
    if n > CENSUS_MAX_N {
        return Err(CensusError::TooLarge {
            what: "n",
            value: n,
            max: CENSUS_MAX_N,
        });
    }
    if d == 0 {
        return Err(CensusError::Hypothesis("dimension must be positive".into()));
    }
    if policy == OraclePolicy::ExactOnly && d != 1 {
        return Err(CensusError::NoExactOracle(d));
    }
    let total = 1u64 << pair_count(n);
    let canon: Vec<u64> = (0..total).map(|m| canonical_mask(n, m).0).collect();
    let reps: Vec<u64> = canon.iter().copied().sorted().dedup().collect();

    let run = || -> Result<Vec<(bool, Method, Option<f64>)>, CensusError> {
        reps.par_iter()
            .map(|&m| classify(&Graph::from_mask(n, m), d, mode, cfg, policy))
            .collect()
    };
    let results = if cfg.jobs == 1 {
        reps.iter()
            .map(|&m| classify(&Graph::from_mask(n, m), d, mode, cfg, policy))
            .collect::<Result<Vec<_>, _>>()?
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.jobs)
            .build()
            .expect("thread pool")
            .install(run)?
    };
    let by_rep: BTreeMap<u64, (bool, Method, Option<f64>)> =
        reps.iter().copied().zip(results).collect();

    let entries: Vec<CensusEntry> = (0..total)
        .map(|m| {
            let rep = canon[m as usize];
            let (realizable, method, residual) = by_rep[&rep];
            CensusEntry {
                mask: m,
                edges: Graph::from_mask(n, m)
                    .edges()
                    .map(|(u, v)| [u, v])
                    .collect(),
                realizable,
                method,
                residual,
                representative: rep,
            }
        })
        .collect();
    let count_realizable = entries.iter().filter(|e| e.realizable).count() as u64;
    Ok(CensusReport {
        n,
        d,
        mode,
        count_realizable,
        count_presumed_not: total - count_realizable,
        exact: entries.iter().all(|e| e.method == Method::ExactOracle),
        classes: reps.len(),
        policy,
        // thread count never affects the entries, so it is not part of the record
        config: SolverConfig {
            jobs: 1,
            ..cfg.clone()
        },
        entries,
    })
}

pub fn count_faithful(n: usize, d: usize, cfg: &SolverConfig) -> Result<CensusReport, CensusError> {
    census(n, d, Mode::Faithful, cfg, OraclePolicy::Auto)
}

pub fn count_distance(n: usize, d: usize, cfg: &SolverConfig) -> Result<CensusReport, CensusError> {
    census(n, d, Mode::Distance, cfg, OraclePolicy::Auto)
}

/// `2 C(m, s) B < 2^{C(s,2)}`, the condition under which some 2-colouring of
/// `K_m` has no monochromatic `s`-set inducing one of at most `B` graphs.
pub fn ramsey_inequality_holds(m: usize, s: usize, b: &BigUint) -> bool {
    BigUint::from(2u32) * binomial(m, s) * b < BigUint::from(1u32) << pair_count(s)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamseyLower {
    pub s: usize,
    pub d: usize,
    /// Largest `m` satisfying the inequality; the Ramsey number exceeds it.
    pub m: usize,
    /// Stand-in for the number of faithful graphs on `s` vertices.
    pub b: BigUint,
    pub zero_pattern_used: bool,
}

impl RamseyLower {
    pub fn to_json(&self) -> String {
        format!(
            "{{\"s\":{},\"d\":{},\"m\":{},\"bound_used\":\"{}\",\"zero_pattern_used\":{}}}",
            self.s, self.d, self.m, self.b, self.zero_pattern_used
        )
    }
}

/// Probabilistic lower bound: the largest `m` with `2 C(m, s) B < 2^{C(s,2)}`
/// where `B = min(2^{C(s,2)}, zero-pattern bound)`.
pub fn ramsey_fd_lower(s: usize, d: usize) -> Result<RamseyLower, CensusError> {
    if s < 2 || d == 0 || s < 2 * d {
        return Err(CensusError::Hypothesis(format!(
            "need s >= 2 and s >= 2d, got s = {s}, d = {d}"
        )));
    }
    let all = BigUint::from(1u32) << pair_count(s);
    let zp = zero_pattern_bound(s, d)?;
    let (b, used) = if zp.proposition_applies && zp.value < all {
        (zp.value, true)
    } else {
        (all, false)
    };
    // C(m, s) = 0 below s, so the inequality holds at s - 1
    let mut m = s - 1;
    while ramsey_inequality_holds(m + 1, s, &b) {
        m += 1;
    }
    Ok(RamseyLower {
        s,
        d,
        m,
        b,
        zero_pattern_used: used,
    })
}

/// Smallest `m <= max_m` such that every graph on `m` vertices has an `s`-set
/// inducing a faithful distance graph in `R^d`, in the graph or in its
/// complement; `None` when no such `m <= max_m` exists.
pub fn ramsey_exact(
    s: usize,
    d: usize,
    max_m: usize,
    cfg: &SolverConfig,
) -> Result<Option<usize>, CensusError> {
    if s > RAMSEY_MAX_S {
        return Err(CensusError::TooLarge {
            what: "s",
            value: s,
            max: RAMSEY_MAX_S,
        });
    }
    if max_m > RAMSEY_MAX_M {
        return Err(CensusError::TooLarge {
            what: "max_m",
            value: max_m,
            max: RAMSEY_MAX_M,
        });
    }
    if s < 1 || d == 0 {
        return Err(CensusError::Hypothesis("need s >= 1 and d >= 1".into()));
    }
    let mut cache: HashMap<u64, bool> = HashMap::new();
    let mut realizable = |mask: u64| -> bool {
        *cache.entry(mask).or_insert_with(|| {
            let g = Graph::from_mask(s, mask);
            if d == 1 {
                linear_forest_oracle(&g)
            } else {
                solve_faithful(
                    &g,
                    d,
                    &SolverConfig {
                        jobs: 1,
                        ..cfg.clone()
                    },
                )
                .found()
            }
        })
    };
    for m in s..=max_m {
        let subsets: Vec<Vec<usize>> = (0..m).combinations(s).collect();
        let mut all_good = true;
        for mask in 0..1u64 << pair_count(m) {
            let g = Graph::from_mask(m, mask);
            let c = g.complement();
            let good = subsets.iter().any(|sub| {
                realizable(g.induced(sub).to_mask()) || realizable(c.induced(sub).to_mask())
            });
            if !good {
                all_good = false;
                break;
            }
        }
        if all_good {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, make_complete_multipartite, path, star};

    fn pascal(n: usize, k: usize) -> BigUint {
        let mut row = vec![BigUint::from(1u32)];
        for _ in 0..n {
            let mut next = vec![BigUint::from(1u32); row.len() + 1];
            for i in 1..row.len() {
                next[i] = &row[i - 1] + &row[i];
            }
            row = next;
        }
        row[k].clone()
    }

    #[test]
    fn zero_pattern_values() {
        let b = zero_pattern_bound(4, 1).unwrap();
        assert_eq!(b.value, BigUint::from(495u32));
        assert!(b.proposition_applies);
        let b = zero_pattern_bound(6, 2).unwrap();
        assert_eq!(b.value, BigUint::from(86493225u64));
        assert_eq!(b.value, pascal(30, 12));
        // at n = 2d the count is outside the proposition's range; for n = 2 it is plainly false
        let b = zero_pattern_bound(2, 1).unwrap();
        assert_eq!(b.value, BigUint::from(1u32));
        assert!(!b.proposition_applies);
        let b = zero_pattern_bound(4, 2).unwrap();
        assert_eq!(b.value, BigUint::from(495u32));
        assert!(!b.proposition_applies);
        assert!(zero_pattern_bound(3, 2).is_err());
        assert_eq!(binomial(60, 30), pascal(60, 30));
    }

    #[test]
    fn linear_forests() {
        assert!(linear_forest_oracle(&path(4)));
        assert!(!linear_forest_oracle(&star(3)));
        assert!(!linear_forest_oracle(&cycle(4).unwrap()));
        assert!(linear_forest_oracle(&Graph::empty(3)));
    }

    /// Labelled linear forests on 4 vertices by edge count: 1 + 6 + 15 + 12.
    fn linear_forest_count_4() -> u64 {
        let empty = 1;
        let one_edge = 6;
        // two edges: a path of length 2 (12) or a matching (3)
        let two_edges = 12 + 3;
        // three edges: Hamiltonian paths, 4!/2
        let three_edges = 12;
        empty + one_edge + two_edges + three_edges
    }

    #[test]
    fn census_line() {
        let r = count_faithful(4, 1, &SolverConfig::default()).unwrap();
        assert_eq!(r.count_realizable, linear_forest_count_4());
        assert_eq!(r.count_realizable, 34);
        assert!(r.exact);
        assert_eq!(r.classes, 11);
        assert_eq!(r.count_realizable + r.count_presumed_not, 64);
        let c = count_distance(4, 1, &SolverConfig::default()).unwrap();
        assert_eq!(c.count_realizable, 34);
    }

    #[test]
    fn census_plane_small() {
        let r = count_faithful(3, 2, &SolverConfig::default()).unwrap();
        assert_eq!(r.count_realizable, 8);
        assert!(!r.exact);
        let d = count_distance(3, 2, &SolverConfig::default()).unwrap();
        assert_eq!(d.count_realizable, 8);
    }

    #[test]
    fn csv_and_json() {
        let r = count_faithful(3, 1, &SolverConfig::default()).unwrap();
        let csv = r.to_csv();
        assert!(csv.starts_with("graph_id,edges,status,method,residual\n"));
        assert_eq!(csv.lines().count(), 9);
        assert!(csv.contains("7,0-1 0-2 1-2,presumed_not,EXACT_ORACLE,"));
        assert!(r.to_json().contains("\"method\":\"EXACT_ORACLE\""));
        assert!(census(
            3,
            2,
            Mode::Faithful,
            &SolverConfig::default(),
            OraclePolicy::ExactOnly
        )
        .is_err());
        assert!(count_faithful(6, 1, &SolverConfig::default()).is_err());
    }

    #[test]
    fn canonical_forms() {
        let p = path(3).to_mask();
        let (c, orbit) = canonical_mask(3, p);
        assert_eq!(orbit, 3);
        assert_eq!(
            c,
            canonical_mask(3, Graph::new(3, [(0, 2), (1, 2)]).unwrap().to_mask()).0
        );
        assert_eq!(canonical_mask(4, complete(4).to_mask()).1, 1);
    }

    #[test]
    fn krt() {
        let g = make_complete_multipartite(&[3, 3]).unwrap();
        assert!(krt_obstruction(&g, 2));
        assert!(krt_obstruction(&g, 3));
        assert!(!krt_obstruction(&g, 4));
        assert!(!krt_obstruction(&complete(6), 2));
    }

    #[test]
    fn ramsey_lower_values() {
        for (s, d, want) in [(3, 1, 2), (6, 1, 5), (8, 2, 7)] {
            let r = ramsey_fd_lower(s, d).unwrap();
            assert_eq!(r.m, want, "s = {s}, d = {d}");
            assert!(ramsey_inequality_holds(r.m, s, &r.b));
            assert!(!ramsey_inequality_holds(r.m + 1, s, &r.b));
        }
        assert_eq!(ramsey_fd_lower(3, 1).unwrap().b, BigUint::from(8u32));
        let big = ramsey_fd_lower(20, 1).unwrap();
        assert!(big.zero_pattern_used);
        assert!(big.m > 32);
        let mut prev = 0;
        for s in [10, 14, 20, 26] {
            let m = ramsey_fd_lower(s, 1).unwrap().m;
            assert!(m > prev);
            prev = m;
        }
        assert!(ramsey_fd_lower(3, 2).is_err());
    }

    #[test]
    fn ramsey_exact_small() {
        let cfg = SolverConfig::default();
        assert_eq!(ramsey_exact(2, 1, 4, &cfg).unwrap(), Some(2));
        assert_eq!(ramsey_exact(2, 2, 4, &cfg).unwrap(), Some(2));
        assert_eq!(ramsey_exact(3, 2, 8, &cfg).unwrap(), Some(3));
        assert_eq!(ramsey_exact(3, 1, 8, &cfg).unwrap(), Some(3));
        assert!(ramsey_exact(4, 1, 8, &cfg).is_err());
        assert!(ramsey_exact(2, 1, 9, &cfg).is_err());
    }

    #[test]
    fn census_plane_four() {
        let r = count_faithful(4, 2, &SolverConfig::default()).unwrap();
        assert_eq!(r.count_realizable, 63);
        let missing: Vec<u64> = r
            .entries
            .iter()
            .filter(|e| !e.realizable)
            .map(|e| e.mask)
            .collect();
        assert_eq!(missing, vec![complete(4).to_mask()]);
        assert_eq!(r.entry(63).unwrap().method, Method::SolverExhausted);
    }

    #[test]
    fn solver_agrees_with_line_oracle() {
        let cfg = SolverConfig::default();
        let exact = census(4, 1, Mode::Faithful, &cfg, OraclePolicy::ExactOnly).unwrap();
        let numeric = census(4, 1, Mode::Faithful, &cfg, OraclePolicy::SolverOnly).unwrap();
        for (a, b) in exact.entries.iter().zip(&numeric.entries) {
            assert_eq!(a.realizable, b.realizable, "mask {}", a.mask);
        }
    }

    #[test]
    fn jobs_do_not_change_report() {
        let one = count_faithful(4, 2, &SolverConfig::default()).unwrap();
        let four = count_faithful(
            4,
            2,
            &SolverConfig {
                jobs: 4,
                ..SolverConfig::default()
            },
        )
        .unwrap();
        assert_eq!(one.to_json(), four.to_json());
    }
}
