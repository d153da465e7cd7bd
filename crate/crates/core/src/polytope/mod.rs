//! Exact rational polytope kernel: hulls, facets, volumes, Minkowski sums,
//! polar duals, coordinate-subspace sections and projections.

pub(crate) mod hull;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::exact::{rat_int, IntMatrix, Rational};
use crate::{Error, Result};

pub use hull::Point;
use hull::{affine_basis, affine_dim, full_dim_hull, rational_inverse};

/// Polytope in vertex representation. The vertex list is irredundant
/// (every listed point is a true vertex), sorted, and nonempty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VPolytope {
    ambient: usize,
    vertices: Vec<Point>,
}

/// One facet inequality `normal . x <= offset` with an integer-primitive
/// normal vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    pub normal: Vec<BigInt>,
    pub offset: Rational,
}

impl Facet {
    pub fn value(&self, x: &[Rational]) -> Rational {
        self.normal
            .iter()
            .zip(x)
            .map(|(a, b)| Rational::from_integer(a.clone()) * b)
            .sum()
    }

    pub fn value_int(&self, x: &[BigInt]) -> BigInt {
        self.normal.iter().zip(x).map(|(a, b)| a * b).sum()
    }

    /// Compares `normal . x` (for integer `x`) against the rational offset
    /// without leaving integer arithmetic.
    pub fn side_int(&self, x: &[BigInt]) -> std::cmp::Ordering {
        let lhs = self.value_int(x) * self.offset.denom();
        lhs.cmp(self.offset.numer())
    }
}

/// Polytope in facet representation: an irredundant inequality system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HPolytope {
    ambient: usize,
    facets: Vec<Facet>,
}

/// Position of a point relative to a polytope.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Location {
    Interior,
    Boundary,
    Outside,
}

/// Triangulation of a polytope into simplices with pairwise disjoint
/// interiors; entries index into the owning polytope's vertex list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangulation {
    pub simplices: Vec<Vec<usize>>,
}

impl HPolytope {
    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn classify(&self, x: &[Rational]) -> Location {
        let mut boundary = false;
        for f in &self.facets {
            let v = f.value(x);
            if v > f.offset {
                return Location::Outside;
            }
            if v == f.offset {
                boundary = true;
            }
        }
        if boundary {
            Location::Boundary
        } else {
            Location::Interior
        }
    }

    /// Integer-point classification staying in integer arithmetic.
    pub fn classify_int(&self, x: &[BigInt]) -> Location {
        let mut boundary = false;
        for f in &self.facets {
            match f.side_int(x) {
                std::cmp::Ordering::Greater => return Location::Outside,
                std::cmp::Ordering::Equal => boundary = true,
                std::cmp::Ordering::Less => {}
            }
        }
        if boundary {
            Location::Boundary
        } else {
            Location::Interior
        }
    }
}

impl VPolytope {
    /// Convex hull: the unique irredundant vertex description of the input
    /// point set. Works for any intrinsic dimension.
    pub fn hull(ambient: usize, points: Vec<Point>) -> Result<VPolytope> {
        if points.is_empty() {
            return Err(Error::EmptyInput);
        }
        for p in &points {
            if p.len() != ambient {
                return Err(Error::DimensionMismatch {
                    left: ambient,
                    right: p.len(),
                });
            }
        }
        let mut points = points;
        points.sort();
        points.dedup();
        let d = affine_dim(&points);
        if d == 0 {
            return Ok(VPolytope {
                ambient,
                vertices: points,
            });
        }
        let idxs = if d == ambient {
            full_dim_hull(&points, d).vertex_idxs
        } else {
            let chart = Chart::new(&points);
            let locals: Vec<Point> = points
                .iter()
                .map(|p| chart.to_local(p).expect("hull point outside own affine hull"))
                .collect();
            full_dim_hull(&locals, d).vertex_idxs
        };
        let mut vertices: Vec<Point> = idxs.into_iter().map(|i| points[i].clone()).collect();
        vertices.sort();
        Ok(VPolytope { ambient, vertices })
    }

    pub fn single_point(point: Point) -> VPolytope {
        VPolytope {
            ambient: point.len(),
            vertices: vec![point],
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    /// Dimension of the affine hull.
    pub fn dim(&self) -> usize {
        affine_dim(&self.vertices)
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim() == self.ambient
    }

    /// True when every vertex has integer coordinates.
    pub fn is_lattice(&self) -> bool {
        self.vertices
            .iter()
            .all(|v| v.iter().all(crate::exact::is_integer))
    }

    /// True iff the vertex set equals its negation setwise.
    pub fn is_centrally_symmetric(&self) -> bool {
        let mut negated: Vec<Point> = self
            .vertices
            .iter()
            .map(|v| v.iter().map(|x| -x).collect())
            .collect();
        negated.sort();
        negated == self.vertices
    }

    /// Irredundant facet system; requires a full-dimensional polytope.
    pub fn facets(&self) -> Result<HPolytope> {
        let d = self.dim();
        if d != self.ambient {
            return Err(Error::LowerDimensional {
                dim: d,
                ambient: self.ambient,
            });
        }
        let h = full_dim_hull(&self.vertices, d);
        Ok(HPolytope {
            ambient: self.ambient,
            facets: h
                .merged
                .into_iter()
                .map(|(normal, offset)| Facet { normal, offset })
                .collect(),
        })
    }

    /// Exact volume with respect to Lebesgue measure on the affine hull.
    ///
    /// A point has volume 1 (zero-dimensional measure). Lower-dimensional
    /// polytopes are supported when their affine hull is parallel to a
    /// coordinate subspace, where the induced measure stays rational;
    /// anything else is refused.
    pub fn volume(&self) -> Result<Rational> {
        let d = self.dim();
        if d == 0 {
            return Ok(Rational::one());
        }
        if d == self.ambient {
            return Ok(full_dim_hull(&self.vertices, d).volume());
        }
        let varying: Vec<usize> = (0..self.ambient)
            .filter(|&c| self.vertices.iter().any(|v| v[c] != self.vertices[0][c]))
            .collect();
        if varying.len() != d {
            return Err(Error::IrrationalSubspace);
        }
        let dropped: Vec<Point> = self
            .vertices
            .iter()
            .map(|v| varying.iter().map(|&c| v[c].clone()).collect())
            .collect();
        Ok(full_dim_hull(&dropped, d).volume())
    }

    /// Triangulation of the polytope within its affine hull.
    pub fn triangulation(&self) -> Triangulation {
        let d = self.dim();
        if d == 0 {
            return Triangulation {
                simplices: vec![vec![0]],
            };
        }
        let simplices = if d == self.ambient {
            full_dim_hull(&self.vertices, d).star_triangulation()
        } else {
            let chart = Chart::new(&self.vertices);
            let locals: Vec<Point> = self
                .vertices
                .iter()
                .map(|v| chart.to_local(v).expect("vertex outside own affine hull"))
                .collect();
            full_dim_hull(&locals, d).star_triangulation()
        };
        Triangulation { simplices }
    }

    /// Minkowski sum, as the hull of pairwise vertex sums.
    pub fn minkowski_sum(&self, other: &VPolytope) -> Result<VPolytope> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch {
                left: self.ambient,
                right: other.ambient,
            });
        }
        let mut sums = Vec::with_capacity(self.vertices.len() * other.vertices.len());
        for a in &self.vertices {
            for b in &other.vertices {
                sums.push(a.iter().zip(b).map(|(x, y)| x + y).collect());
            }
        }
        VPolytope::hull(self.ambient, sums)
    }

    /// Polar body `{x : x . y <= 1 for all y in K}`; requires the origin
    /// strictly interior (otherwise the polar is unbounded).
    pub fn polar(&self) -> Result<VPolytope> {
        if !self.is_full_dimensional() {
            return Err(Error::OriginNotInterior);
        }
        let facets = self.facets()?;
        let mut points = Vec::with_capacity(facets.facets.len());
        for f in &facets.facets {
            if !f.offset.is_positive() {
                return Err(Error::OriginNotInterior);
            }
            points.push(
                f.normal
                    .iter()
                    .map(|a| Rational::from_integer(a.clone()) / &f.offset)
                    .collect(),
            );
        }
        VPolytope::hull(self.ambient, points)
    }

    /// Exact section `K ∩ {x_c = 0 for c not in J}`, expressed in the
    /// retained coordinates `J` (ascending).
    pub fn coordinate_section(&self, j: &[usize]) -> Result<VPolytope> {
        let j = validate_index_set(j, self.ambient)?;
        let mut current = self.clone();
        for c in 0..self.ambient {
            if j.contains(&c) {
                continue;
            }
            current = match slice_zero(&current, c) {
                Some(p) => p,
                None => {
                    return Err(Error::HypothesisViolated(format!(
                        "section by x_{c} = 0 is empty"
                    )))
                }
            };
        }
        let points: Vec<Point> = current
            .vertices
            .iter()
            .map(|v| j.iter().map(|&c| v[c].clone()).collect())
            .collect();
        VPolytope::hull(j.len(), points)
    }

    /// Orthogonal projection onto the coordinate subspace spanned by
    /// `{e_c : c in J}`: drop the other coordinates and take the hull.
    pub fn coordinate_projection(&self, j: &[usize]) -> Result<VPolytope> {
        let j = validate_index_set(j, self.ambient)?;
        let points: Vec<Point> = self
            .vertices
            .iter()
            .map(|v| j.iter().map(|&c| v[c].clone()).collect())
            .collect();
        VPolytope::hull(j.len(), points)
    }

    pub fn translate(&self, t: &[Rational]) -> Result<VPolytope> {
        if t.len() != self.ambient {
            return Err(Error::DimensionMismatch {
                left: self.ambient,
                right: t.len(),
            });
        }
        let mut vertices: Vec<Point> = self
            .vertices
            .iter()
            .map(|v| v.iter().zip(t).map(|(x, y)| x + y).collect())
            .collect();
        vertices.sort();
        Ok(VPolytope {
            ambient: self.ambient,
            vertices,
        })
    }

    /// Image under the linear map `v -> M v` (columns convention).
    pub fn apply_linear(&self, m: &IntMatrix) -> Result<VPolytope> {
        if m.cols() != self.ambient {
            return Err(Error::DimensionMismatch {
                left: m.cols(),
                right: self.ambient,
            });
        }
        let points: Vec<Point> = self
            .vertices
            .iter()
            .map(|v| {
                (0..m.rows())
                    .map(|r| {
                        (0..m.cols())
                            .map(|c| Rational::from_integer(m.at(r, c).clone()) * &v[c])
                            .sum()
                    })
                    .collect()
            })
            .collect();
        VPolytope::hull(m.rows(), points)
    }

    pub fn negate(&self) -> VPolytope {
        let mut vertices: Vec<Point> = self
            .vertices
            .iter()
            .map(|v| v.iter().map(|x| -x).collect())
            .collect();
        vertices.sort();
        VPolytope {
            ambient: self.ambient,
            vertices,
        }
    }

    /// Componentwise floor/ceil bounds of the vertex coordinates.
    pub fn bounding_box(&self) -> (Vec<BigInt>, Vec<BigInt>) {
        let lo = (0..self.ambient)
            .map(|c| {
                self.vertices
                    .iter()
                    .map(|v| crate::exact::rational_floor(&v[c]))
                    .min()
                    .unwrap()
            })
            .collect();
        let hi = (0..self.ambient)
            .map(|c| {
                self.vertices
                    .iter()
                    .map(|v| crate::exact::rational_ceil(&v[c]))
                    .max()
                    .unwrap()
            })
            .collect();
        (lo, hi)
    }

    /// Point-membership tester, built once and reused across a sweep.
    pub fn membership(&self) -> Membership {
        let d = self.dim();
        if d == self.ambient {
            return Membership::Full {
                facets: self.facets().expect("full-dimensional"),
            };
        }
        if d == 0 {
            return Membership::Point {
                point: self.vertices[0].clone(),
            };
        }
        let chart = Chart::new(&self.vertices);
        let locals: Vec<Point> = self
            .vertices
            .iter()
            .map(|v| chart.to_local(v).expect("vertex outside own affine hull"))
            .collect();
        let h = full_dim_hull(&locals, d);
        Membership::Lower {
            chart,
            local_facets: h
                .merged
                .into_iter()
                .map(|(normal, offset)| Facet { normal, offset })
                .collect(),
        }
    }
}

/// Exact membership tests for a fixed polytope.
///
/// For lower-dimensional polytopes every contained point is classified as
/// boundary, matching the topological interior in the ambient space.
pub enum Membership {
    Point { point: Point },
    Full { facets: HPolytope },
    Lower { chart: Chart, local_facets: Vec<Facet> },
}

impl Membership {
    pub fn classify(&self, x: &[Rational]) -> Location {
        match self {
            Membership::Point { point } => {
                if point.as_slice() == x {
                    Location::Boundary
                } else {
                    Location::Outside
                }
            }
            Membership::Full { facets } => facets.classify(x),
            Membership::Lower { chart, local_facets } => {
                let Some(local) = chart.to_local(x) else {
                    return Location::Outside;
                };
                for f in local_facets {
                    if f.value(&local) > f.offset {
                        return Location::Outside;
                    }
                }
                Location::Boundary
            }
        }
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.classify(x) != Location::Outside
    }
}

/// Affine chart of a lower-dimensional point set: local coordinates `t`
/// with `x = origin + t . dirs`.
pub struct Chart {
    origin: Point,
    /// `d x n` direction rows.
    dirs: Vec<Vec<Rational>>,
    /// Independent columns of `dirs`.
    pivots: Vec<usize>,
    /// Inverse of the pivot submatrix of `dirs`.
    inv: Vec<Vec<Rational>>,
}

impl Chart {
    fn new(points: &[Point]) -> Chart {
        let (origin_idx, dir_idxs) = affine_basis(points);
        let origin = points[origin_idx].clone();
        let dirs: Vec<Vec<Rational>> = dir_idxs
            .iter()
            .map(|&i| {
                points[i]
                    .iter()
                    .zip(origin.iter())
                    .map(|(a, b)| a - b)
                    .collect()
            })
            .collect();
        let d = dirs.len();
        // Greedy pivot columns of the direction matrix.
        let mut pivots = Vec::with_capacity(d);
        {
            let mut work = dirs.clone();
            for r in 0..d {
                let c = (0..work[r].len())
                    .find(|&c| !pivots.contains(&c) && !work[r][c].is_zero())
                    .expect("direction rows are independent");
                pivots.push(c);
                for rr in r + 1..d {
                    if work[rr][c].is_zero() {
                        continue;
                    }
                    let f = &work[rr][c] / &work[r][c];
                    for cc in 0..work[rr].len() {
                        let delta = &f * &work[r][cc];
                        work[rr][cc] -= delta;
                    }
                }
            }
        }
        let sub: Vec<Vec<Rational>> = dirs
            .iter()
            .map(|row| pivots.iter().map(|&c| row[c].clone()).collect())
            .collect();
        let inv = rational_inverse(&sub).expect("pivot submatrix invertible");
        Chart {
            origin,
            dirs,
            pivots,
            inv,
        }
    }

    /// Local coordinates of `x`, or `None` when `x` is outside the hull's
    /// affine span.
    pub fn to_local(&self, x: &[Rational]) -> Option<Vec<Rational>> {
        let d = self.dirs.len();
        let y: Vec<Rational> = x
            .iter()
            .zip(self.origin.iter())
            .map(|(a, b)| a - b)
            .collect();
        let t: Vec<Rational> = (0..d)
            .map(|j| {
                (0..d)
                    .map(|i| &y[self.pivots[i]] * &self.inv[i][j])
                    .sum()
            })
            .collect();
        // Consistency on all coordinates certifies affine-hull membership.
        for c in 0..y.len() {
            let recon: Rational = (0..d).map(|i| &t[i] * &self.dirs[i][c]).sum();
            if recon != y[c] {
                return None;
            }
        }
        Some(t)
    }
}

fn validate_index_set(j: &[usize], ambient: usize) -> Result<Vec<usize>> {
    if j.is_empty() {
        return Err(Error::BadIndexSet("empty coordinate set".into()));
    }
    let mut j = j.to_vec();
    j.sort_unstable();
    j.dedup();
    if let Some(&c) = j.iter().find(|&&c| c >= ambient) {
        return Err(Error::BadIndexSet(format!(
            "coordinate {c} out of range for ambient dimension {ambient}"
        )));
    }
    Ok(j)
}

/// `K ∩ {x_c = 0}` via triangulation slicing; `None` when empty.
fn slice_zero(p: &VPolytope, c: usize) -> Option<VPolytope> {
    if p.dim() == 0 {
        return p.vertices[0][c]
            .is_zero()
            .then(|| p.clone());
    }
    let tri = p.triangulation();
    let verts = p.vertices();
    let mut points: Vec<Point> = Vec::new();
    for simplex in &tri.simplices {
        for &v in simplex {
            if verts[v][c].is_zero() {
                points.push(verts[v].clone());
            }
        }
        for (i, &a) in simplex.iter().enumerate() {
            for &b in &simplex[i + 1..] {
                let (va, vb) = (&verts[a], &verts[b]);
                if va[c].is_positive() != vb[c].is_positive()
                    && !va[c].is_zero()
                    && !vb[c].is_zero()
                {
                    let t = &va[c] / (&va[c] - &vb[c]);
                    let point: Point = va
                        .iter()
                        .zip(vb.iter())
                        .map(|(x, y)| x + &t * (y - x))
                        .collect();
                    points.push(point);
                }
            }
        }
    }
    if points.is_empty() {
        return None;
    }
    Some(VPolytope::hull(p.ambient, points).expect("nonempty slice"))
}

// Named bodies used throughout the tests, the CLI and the corpora.

/// `[-1, 1]^n`.
pub fn cube(n: usize) -> VPolytope {
    assert!(n >= 1);
    let mut points = Vec::with_capacity(1 << n);
    for mask in 0u32..(1 << n) {
        points.push(
            (0..n)
                .map(|i| rat_int(if mask >> i & 1 == 1 { 1 } else { -1 }))
                .collect(),
        );
    }
    VPolytope::hull(n, points).unwrap()
}

/// Standard crosspolytope `conv{±e_i}`.
pub fn diamond(n: usize) -> VPolytope {
    crosspolytope_stretched(n, 1)
}

/// `conv{±l e_1, ±e_2, ..., ±e_n}`.
pub fn crosspolytope_stretched(n: usize, l: i64) -> VPolytope {
    assert!(n >= 1 && l >= 1);
    let mut points = Vec::with_capacity(2 * n);
    for i in 0..n {
        let scale = if i == 0 { l } else { 1 };
        for s in [scale, -scale] {
            let mut p = vec![rat_int(0); n];
            p[i] = rat_int(s);
            points.push(p);
        }
    }
    VPolytope::hull(n, points).unwrap()
}

/// The hexagon `conv{±e_1, ±e_2, ±(e_1 + e_2)}`.
pub fn hexagon() -> VPolytope {
    let pts = [(1, 0), (0, 1), (1, 1), (-1, 0), (0, -1), (-1, -1)];
    VPolytope::hull(
        2,
        pts.iter()
            .map(|&(x, y)| vec![rat_int(x), rat_int(y)])
            .collect(),
    )
    .unwrap()
}

/// Axis-aligned box `prod [lo_i, hi_i]`.
pub fn lattice_box(lo: &[i64], hi: &[i64]) -> VPolytope {
    assert_eq!(lo.len(), hi.len());
    let n = lo.len();
    assert!(n >= 1);
    assert!(lo.iter().zip(hi).all(|(a, b)| a <= b));
    let mut points = Vec::with_capacity(1 << n);
    for mask in 0u32..(1 << n) {
        points.push(
            (0..n)
                .map(|i| rat_int(if mask >> i & 1 == 1 { hi[i] } else { lo[i] }))
                .collect(),
        );
    }
    VPolytope::hull(n, points).unwrap()
}

/// `conv{0, e_1, ..., e_n}`.
pub fn standard_simplex(n: usize) -> VPolytope {
    assert!(n >= 1);
    let mut points = vec![vec![rat_int(0); n]];
    for i in 0..n {
        let mut p = vec![rat_int(0); n];
        p[i] = rat_int(1);
        points.push(p);
    }
    VPolytope::hull(n, points).unwrap()
}
