//! Points, affine flats and spheres of arbitrary dimension inside `R^d`.
//!
//! Everything is plain `f64`. Rank decisions go through singular values of
//! the centred point matrix so that nearly flat configurations (which the
//! constructions produce on purpose) are classified consistently.

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Relative singular-value cutoff used by [`affine_rank`].
pub const TOL_RANK: f64 = 1e-8;
/// Absolute tolerance for "lies on" / "at distance r" checks.
pub const TOL_GEOM: f64 = 1e-9;
/// Orthonormality tolerance for flat bases.
pub const TOL_ORTHO: f64 = 1e-12;

// Singular values below this are zero regardless of the largest one.
const ABS_RANK_FLOOR: f64 = 1e-13;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeomError {
    #[error("empty point set")]
    Empty,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("non-finite coordinate")]
    NonFinite,
    #[error("points are affinely dependent ({count} points, affine rank {rank})")]
    AffinelyDependent { count: usize, rank: usize },
    #[error("points are not cospherical (residual {residual:e})")]
    NotCospherical { residual: f64 },
    #[error("sphere radius {0} >= 1 has no complementary sphere")]
    RadiusTooLarge(f64),
    #[error("sphere of dimension {sphere_dim} has no complementary sphere in R^{ambient}")]
    DimensionBound { sphere_dim: isize, ambient: usize },
}

/// A point of `R^d` with finite coordinates.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Point(Vec<f64>);

impl TryFrom<Vec<f64>> for Point {
    type Error = GeomError;

    fn try_from(coords: Vec<f64>) -> Result<Self, Self::Error> {
        Point::new(coords)
    }
}

impl From<Point> for Vec<f64> {
    fn from(p: Point) -> Self {
        p.0
    }
}

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self, GeomError> {
        if coords.iter().all(|c| c.is_finite()) {
            Ok(Point(coords))
        } else {
            Err(GeomError::NonFinite)
        }
    }

    pub fn origin(dim: usize) -> Self {
        Point(vec![0.0; dim])
    }

    pub fn from_vector(v: &DVector<f64>) -> Self {
        debug_assert!(v.iter().all(|c| c.is_finite()));
        Point(v.iter().copied().collect())
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn to_vector(&self) -> DVector<f64> {
        DVector::from_column_slice(&self.0)
    }

    pub fn distance_sq(&self, other: &Point) -> f64 {
        debug_assert_eq!(self.dim(), other.dim());
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b) * (a - b))
            .sum()
    }

    pub fn distance(&self, other: &Point) -> f64 {
        self.distance_sq(other).sqrt()
    }

    /// `self - other` as a vector.
    pub fn delta(&self, other: &Point) -> DVector<f64> {
        DVector::from_iterator(self.dim(), self.0.iter().zip(&other.0).map(|(a, b)| a - b))
    }

    pub fn offset(&self, v: &DVector<f64>) -> Point {
        Point(self.0.iter().zip(v.iter()).map(|(a, b)| a + b).collect())
    }

    /// Embeds the point in `R^dim` by appending zero coordinates.
    pub fn padded(&self, dim: usize) -> Point {
        assert!(dim >= self.dim());
        let mut c = self.0.clone();
        c.resize(dim, 0.0);
        Point(c)
    }
}

fn check_dims(points: &[Point]) -> Result<usize, GeomError> {
    let first = points.first().ok_or(GeomError::Empty)?;
    let d = first.dim();
    for p in points {
        if p.dim() != d {
            return Err(GeomError::DimensionMismatch {
                expected: d,
                found: p.dim(),
            });
        }
    }
    Ok(d)
}

/// Dimension of the affine hull of `points` (0 for a single point).
pub fn affine_rank(points: &[Point]) -> Result<usize, GeomError> {
    let d = check_dims(points)?;
    if points.len() == 1 || d == 0 {
        return Ok(0);
    }
    let n = points.len();
    let mut mean = vec![0.0; d];
    for p in points {
        for (m, c) in mean.iter_mut().zip(p.coords()) {
            *m += c / n as f64;
        }
    }
    let m = DMatrix::from_fn(n, d, |i, j| points[i].coords()[j] - mean[j]);
    let sv = m.singular_values();
    let max = sv.iter().cloned().fold(0.0, f64::max);
    let cutoff = (TOL_RANK * max).max(ABS_RANK_FLOOR);
    Ok(sv.iter().filter(|&&s| s > cutoff).count())
}

/// Orthonormalises `vectors` by modified Gram-Schmidt (two passes), dropping
/// directions whose residual falls below `tol` relative to their input norm.
pub fn orthonormalize(vectors: &[DVector<f64>], tol: f64) -> Vec<DVector<f64>> {
    let mut basis: Vec<DVector<f64>> = Vec::new();
    for v in vectors {
        let norm0 = v.norm();
        if norm0 == 0.0 {
            continue;
        }
        let mut w = v.clone();
        for _ in 0..2 {
            for b in &basis {
                let c = b.dot(&w);
                w.axpy(-c, b, 1.0);
            }
        }
        let norm = w.norm();
        if norm > tol * norm0 {
            basis.push(w / norm);
        }
    }
    basis
}

/// An affine flat `base + span(basis)` with an orthonormal basis.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineFlat {
    pub base: Point,
    pub basis: Vec<DVector<f64>>,
}

impl AffineFlat {
    /// The whole space `R^dim` through `base`.
    pub fn full(base: Point) -> Self {
        let d = base.dim();
        let basis = (0..d)
            .map(|i| {
                let mut e = DVector::zeros(d);
                e[i] = 1.0;
                e
            })
            .collect();
        AffineFlat { base, basis }
    }

    pub fn point(base: Point) -> Self {
        AffineFlat {
            base,
            basis: Vec::new(),
        }
    }

    /// Flat dimension.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.base.dim()
    }

    /// Maximum deviation of the basis from orthonormality.
    pub fn orthonormality_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, a) in self.basis.iter().enumerate() {
            worst = worst.max((a.norm() - 1.0).abs());
            for b in &self.basis[i + 1..] {
                worst = worst.max(a.dot(b).abs());
            }
        }
        worst
    }

    /// Splits `p - base` into its component inside the flat and its norm orthogonal to it.
    pub fn decompose(&self, p: &Point) -> (DVector<f64>, f64) {
        let v = p.delta(&self.base);
        let mut par = DVector::zeros(v.len());
        for b in &self.basis {
            par.axpy(b.dot(&v), b, 1.0);
        }
        let perp = (&v - &par).norm();
        (par, perp)
    }

    pub fn distance_to(&self, p: &Point) -> f64 {
        self.decompose(p).1
    }

    /// Orthonormal basis of the orthogonal complement of the direction space.
    pub fn complement_basis(&self) -> Vec<DVector<f64>> {
        let d = self.ambient_dim();
        let mut basis = self.basis.clone();
        let mut out = Vec::with_capacity(d - self.dim());
        while basis.len() < d {
            // pick the coordinate axis with the largest residual
            let mut best: Option<(f64, DVector<f64>)> = None;
            for i in 0..d {
                let mut w = DVector::zeros(d);
                w[i] = 1.0;
                for _ in 0..2 {
                    for b in &basis {
                        let c = b.dot(&w);
                        w.axpy(-c, b, 1.0);
                    }
                }
                let n = w.norm();
                if best.as_ref().is_none_or(|(bn, _)| n > *bn) {
                    best = Some((n, w));
                }
            }
            let (n, w) = best.expect("ambient dimension is positive");
            let u = w / n;
            basis.push(u.clone());
            out.push(u);
        }
        out
    }
}

/// A sphere of dimension `flat.dim() - 1` lying in `flat`, centred on `center`.
///
/// Radius 0 with a 0-dimensional flat is a single point (sphere dimension -1);
/// a 1-dimensional flat gives a 0-sphere, i.e. two points.
#[derive(Clone, Debug, PartialEq)]
pub struct Sphere {
    pub center: Point,
    pub radius: f64,
    pub flat: AffineFlat,
}

impl Sphere {
    pub fn dim(&self) -> isize {
        self.flat.dim() as isize - 1
    }

    pub fn ambient_dim(&self) -> usize {
        self.center.dim()
    }

    /// Euclidean distance from `p` to the nearest point of the sphere.
    pub fn distance_to(&self, p: &Point) -> f64 {
        let (par, perp) = self.flat.decompose(p);
        let radial = par.norm() - self.radius;
        (perp * perp + radial * radial).sqrt()
    }

    pub fn contains_point(&self, p: &Point, tol: f64) -> bool {
        self.distance_to(p) <= tol
    }

    /// Probe points `center ± r u_j` that pin down the sphere within its flat.
    pub fn probe_points(&self) -> Vec<Point> {
        if self.flat.dim() == 0 {
            return vec![self.center.clone()];
        }
        self.flat
            .basis
            .iter()
            .flat_map(|u| {
                [
                    self.center.offset(&(u * self.radius)),
                    self.center.offset(&(u * -self.radius)),
                ]
            })
            .collect()
    }

    /// True when every point of `inner` lies on `self` (within `tol`).
    pub fn contains_sphere(&self, inner: &Sphere, tol: f64) -> bool {
        inner.dim() <= self.dim()
            && inner
                .probe_points()
                .iter()
                .all(|p| self.contains_point(p, tol))
    }

    /// The two points of a 0-sphere, in basis orientation order.
    pub fn zero_sphere_points(&self) -> Option<[Point; 2]> {
        if self.flat.dim() != 1 {
            return None;
        }
        let u = &self.flat.basis[0];
        Some([
            self.center.offset(&(u * self.radius)),
            self.center.offset(&(u * -self.radius)),
        ])
    }

    /// A uniformly distributed point of the sphere.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Point {
        if self.flat.dim() == 0 || self.radius == 0.0 {
            return self.center.clone();
        }
        loop {
            let coeffs: Vec<f64> = (0..self.flat.dim())
                .map(|_| rng.sample(StandardNormal))
                .collect();
            let norm = coeffs.iter().map(|c| c * c).sum::<f64>().sqrt();
            if norm < 1e-12 {
                continue;
            }
            let mut v = DVector::zeros(self.ambient_dim());
            for (c, b) in coeffs.iter().zip(&self.flat.basis) {
                v.axpy(c * self.radius / norm, b, 1.0);
            }
            return self.center.offset(&v);
        }
    }
}

/// The unique sphere through affinely independent `points` inside their affine hull.
pub fn circumsphere(points: &[Point]) -> Result<Sphere, GeomError> {
    check_dims(points)?;
    let rank = affine_rank(points)?;
    if rank + 1 != points.len() {
        return Err(GeomError::AffinelyDependent {
            count: points.len(),
            rank,
        });
    }
    let p0 = &points[0];
    if points.len() == 1 {
        return Ok(Sphere {
            center: p0.clone(),
            radius: 0.0,
            flat: AffineFlat::point(p0.clone()),
        });
    }
    let dirs: Vec<DVector<f64>> = points[1..].iter().map(|p| p.delta(p0)).collect();
    let k = dirs.len();
    // centre = p0 + sum a_j v_j with 2 v_i.(c - p0) = |v_i|^2
    let gram = DMatrix::from_fn(k, k, |i, j| dirs[i].dot(&dirs[j]));
    let rhs = DVector::from_fn(k, |i, _| 0.5 * dirs[i].norm_squared());
    let alpha = gram.lu().solve(&rhs).ok_or(GeomError::AffinelyDependent {
        count: points.len(),
        rank,
    })?;
    let mut offset = DVector::zeros(p0.dim());
    for (a, v) in alpha.iter().zip(&dirs) {
        offset.axpy(*a, v, 1.0);
    }
    let center = p0.offset(&offset);
    let radius = points.iter().map(|p| p.distance(&center)).sum::<f64>() / points.len() as f64;
    let basis = orthonormalize(&dirs, 1e-10);
    debug_assert_eq!(basis.len(), k);
    Ok(Sphere {
        flat: AffineFlat {
            base: center.clone(),
            basis,
        },
        center,
        radius,
    })
}

/// `S(X)`: the minimal-dimension sphere through a cospherical set that may
/// be affinely dependent. Uses a maximal affinely independent subset and
/// checks that the rest lies on the result within `tol`.
pub fn minimal_sphere(points: &[Point], tol: f64) -> Result<Sphere, GeomError> {
    check_dims(points)?;
    let mut chosen: Vec<Point> = Vec::new();
    let mut rank = 0usize;
    for p in points {
        let mut trial = chosen.clone();
        trial.push(p.clone());
        let r = affine_rank(&trial)?;
        if chosen.is_empty() || r > rank {
            chosen = trial;
            rank = r;
        }
    }
    let sphere = circumsphere(&chosen)?;
    let residual = points
        .iter()
        .map(|p| sphere.distance_to(p))
        .fold(0.0, f64::max);
    if residual > tol {
        return Err(GeomError::NotCospherical { residual });
    }
    Ok(sphere)
}

/// The set of points of `R^ambient_dim` at unit distance from every point of `s`.
///
/// Its dimension is `ambient_dim - dim(s) - 2` and its radius `sqrt(1 - r^2)`.
pub fn complementary_sphere(s: &Sphere, ambient_dim: usize) -> Result<Sphere, GeomError> {
    if s.ambient_dim() != ambient_dim {
        return Err(GeomError::DimensionMismatch {
            expected: ambient_dim,
            found: s.ambient_dim(),
        });
    }
    if s.radius >= 1.0 {
        return Err(GeomError::RadiusTooLarge(s.radius));
    }
    if s.dim() > ambient_dim as isize - 2 {
        return Err(GeomError::DimensionBound {
            sphere_dim: s.dim(),
            ambient: ambient_dim,
        });
    }
    let basis = s.flat.complement_basis();
    Ok(Sphere {
        center: s.center.clone(),
        radius: (1.0 - s.radius * s.radius).sqrt(),
        flat: AffineFlat {
            base: s.center.clone(),
            basis,
        },
    })
}
