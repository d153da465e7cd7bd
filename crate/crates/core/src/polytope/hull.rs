//! Exact incremental (beneath-beyond) convex hull in low dimension.
//!
//! Input points are rational; the engine clears denominators once and runs
//! every predicate in integer arithmetic (Bareiss determinants, integer
//! dot products), mapping offsets and volumes back to the original scale
//! on output. Callers map lower-dimensional inputs into affine
//! coordinates first. Facets are kept as oriented simplices and merged by
//! supporting hyperplane on output.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exact::Rational;

pub type Point = Vec<Rational>;

/// Exact determinant of a square rational matrix by Gaussian elimination;
/// the independent volume oracle used by the test suites.
#[cfg(test)]
pub fn rational_det(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    debug_assert!(m.iter().all(|r| r.len() == n));
    let mut det = Rational::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !m[r][k].is_zero()) else {
            return Rational::zero();
        };
        if p != k {
            m.swap(p, k);
            det = -det;
        }
        det *= &m[k][k];
        let pivot = m[k][k].clone();
        for r in k + 1..n {
            if m[r][k].is_zero() {
                continue;
            }
            let f = &m[r][k] / &pivot;
            for c in k..n {
                let delta = &f * &m[k][c];
                m[r][c] -= delta;
            }
        }
    }
    det
}

/// Exact inverse of a square rational matrix; `None` when singular.
pub fn rational_inverse(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            debug_assert_eq!(row.len(), n);
            let mut r = row.clone();
            r.extend((0..n).map(|j| {
                if i == j {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }));
            r
        })
        .collect();
    for k in 0..n {
        let p = (k..n).find(|&r| !a[r][k].is_zero())?;
        a.swap(p, k);
        let pivot = a[k][k].clone();
        for c in 0..2 * n {
            a[k][c] /= &pivot;
        }
        for r in 0..n {
            if r == k || a[r][k].is_zero() {
                continue;
            }
            let f = a[r][k].clone();
            for c in 0..2 * n {
                let delta = &f * &a[k][c];
                a[r][c] -= delta;
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Row-reduces `v` against the rows of `basis` (each with a known pivot
/// column); returns the reduced vector if independent, `None` otherwise.
fn reduce_against(
    basis: &[(Vec<Rational>, usize)],
    v: &[Rational],
) -> Option<(Vec<Rational>, usize)> {
    let mut v = v.to_vec();
    for (row, pivot) in basis {
        if v[*pivot].is_zero() {
            continue;
        }
        let f = &v[*pivot] / &row[*pivot];
        for c in 0..v.len() {
            let delta = &f * &row[c];
            v[c] -= delta;
        }
    }
    let pivot = v.iter().position(|x| !x.is_zero())?;
    Some((v, pivot))
}

/// Greedily selects points whose differences from the first point span the
/// affine hull. Returns `(origin_index, direction_point_indices)`; the
/// affine dimension is the number of directions.
pub fn affine_basis(points: &[Point]) -> (usize, Vec<usize>) {
    assert!(!points.is_empty());
    let origin = 0usize;
    let mut basis: Vec<(Vec<Rational>, usize)> = Vec::new();
    let mut dirs = Vec::new();
    for (i, p) in points.iter().enumerate().skip(1) {
        let diff: Vec<Rational> = p
            .iter()
            .zip(points[origin].iter())
            .map(|(a, b)| a - b)
            .collect();
        if let Some(reduced) = reduce_against(&basis, &diff) {
            basis.push(reduced);
            dirs.push(i);
        }
    }
    (origin, dirs)
}

/// Affine dimension of a nonempty point set.
pub fn affine_dim(points: &[Point]) -> usize {
    affine_basis(points).1.len()
}

fn int_dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Exact integer determinant by fraction-free (Bareiss) elimination.
fn int_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    debug_assert!(a.iter().all(|r| r.len() == n));
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                a[i][j] = num / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

/// Rank of integer rows by fraction-free elimination.
fn int_rank(mut rows: Vec<Vec<BigInt>>) -> usize {
    let mut rank = 0usize;
    let cols = rows.first().map_or(0, Vec::len);
    let mut col = 0usize;
    while rank < rows.len() && col < cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            col += 1;
            continue;
        };
        rows.swap(rank, p);
        for r in rank + 1..rows.len() {
            if rows[r][col].is_zero() {
                continue;
            }
            let (a, b) = (rows[rank][col].clone(), rows[r][col].clone());
            for c in col..cols {
                let v = &a * &rows[r][c] - &b * &rows[rank][c];
                rows[r][c] = v;
            }
        }
        rank += 1;
        col += 1;
    }
    rank
}

/// Greedy affine basis over integer points.
fn int_affine_basis(points: &[Vec<BigInt>], d: usize) -> Vec<usize> {
    let mut chosen = vec![0usize];
    let mut dirs: Vec<Vec<BigInt>> = Vec::new();
    for (i, p) in points.iter().enumerate().skip(1) {
        if dirs.len() == d {
            break;
        }
        let diff: Vec<BigInt> = p.iter().zip(&points[0]).map(|(a, b)| a - b).collect();
        let mut cand = dirs.clone();
        cand.push(diff.clone());
        if int_rank(cand) > dirs.len() {
            dirs.push(diff);
            chosen.push(i);
        }
    }
    assert_eq!(dirs.len(), d, "input does not span R^{d}");
    chosen
}

/// Hyperplane through `d` integer points in `R^d` as `(normal, offset)`;
/// `None` when affinely dependent. The normal is the cofactor vector of
/// the difference matrix.
fn int_hyperplane(points: &[&Vec<BigInt>], d: usize) -> Option<(Vec<BigInt>, BigInt)> {
    debug_assert_eq!(points.len(), d);
    if d == 1 {
        return Some((vec![BigInt::one()], points[0][0].clone()));
    }
    let rows: Vec<Vec<BigInt>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(points[0].iter()).map(|(a, b)| a - b).collect())
        .collect();
    let mut normal = Vec::with_capacity(d);
    let mut nonzero = false;
    for i in 0..d {
        let minor: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter_map(|(c, x)| (c != i).then(|| x.clone()))
                    .collect()
            })
            .collect();
        let mut cof = int_det(minor);
        if i % 2 == 1 {
            cof = -cof;
        }
        if !cof.is_zero() {
            nonzero = true;
        }
        normal.push(cof);
    }
    if !nonzero {
        return None;
    }
    let offset = int_dot(&normal, points[0]);
    Some((normal, offset))
}

fn primitive_int(v: &[BigInt]) -> (Vec<BigInt>, BigInt) {
    let mut g = BigInt::zero();
    for x in v {
        g = g.gcd(x);
    }
    debug_assert!(!g.is_zero());
    (v.iter().map(|x| x / &g).collect(), g)
}

/// Oriented simplicial facet in the scaled integer coordinates:
/// `normal . x <= offset` holds on the hull.
#[derive(Clone, Debug)]
pub struct FacetSimplex {
    pub verts: Vec<usize>,
    normal: Vec<BigInt>,
    offset: BigInt,
}

#[derive(Debug)]
pub struct FullHull {
    /// Indices (into the input slice) of the true vertices, ascending.
    pub vertex_idxs: Vec<usize>,
    /// Simplicial facets covering the boundary (empty when `d == 1`).
    pub facets: Vec<FacetSimplex>,
    /// Irredundant facet inequalities of the original (unscaled) polytope,
    /// with integer-primitive normals.
    pub merged: Vec<(Vec<BigInt>, Rational)>,
    dim: usize,
    /// Common denominator cleared from the input.
    scale: BigInt,
    /// Scaled integer copies of the input points.
    ipoints: Vec<Vec<BigInt>>,
}

impl FullHull {
    /// Exact volume via a star triangulation from the first vertex.
    pub fn volume(&self) -> Rational {
        let d = self.dim;
        let scale_pow = (0..d).fold(BigInt::one(), |acc, _| acc * &self.scale);
        if d == 1 {
            let min = self.vertex_idxs.iter().map(|&i| &self.ipoints[i][0]).min().unwrap();
            let max = self.vertex_idxs.iter().map(|&i| &self.ipoints[i][0]).max().unwrap();
            return Rational::new(max - min, scale_pow);
        }
        let apex = self.vertex_idxs[0];
        let mut total = BigInt::zero();
        for f in &self.facets {
            if f.verts.contains(&apex) {
                continue;
            }
            let rows: Vec<Vec<BigInt>> = f
                .verts
                .iter()
                .map(|&v| {
                    self.ipoints[v]
                        .iter()
                        .zip(self.ipoints[apex].iter())
                        .map(|(a, b)| a - b)
                        .collect()
                })
                .collect();
            total += int_det(rows).abs();
        }
        Rational::new(total, crate::exact::factorial(d as u32) * scale_pow)
    }

    /// Star triangulation: `(d+1)`-tuples of indices into the input slice.
    pub fn star_triangulation(&self) -> Vec<Vec<usize>> {
        let d = self.dim;
        if d == 1 {
            return vec![self.vertex_idxs.clone()];
        }
        let apex = self.vertex_idxs[0];
        let mut simplices = Vec::new();
        for f in &self.facets {
            if f.verts.contains(&apex) {
                continue;
            }
            let rows: Vec<Vec<BigInt>> = f
                .verts
                .iter()
                .map(|&v| {
                    self.ipoints[v]
                        .iter()
                        .zip(self.ipoints[apex].iter())
                        .map(|(a, b)| a - b)
                        .collect()
                })
                .collect();
            if int_det(rows).is_zero() {
                continue; // coplanar with the apex, degenerate cone
            }
            let mut s = vec![apex];
            s.extend_from_slice(&f.verts);
            s.sort_unstable();
            simplices.push(s);
        }
        simplices.sort();
        simplices
    }
}

/// Beneath-beyond hull of a full-dimensional point set in `R^d`.
///
/// `points` must affinely span `R^d`; duplicates are tolerated.
pub fn full_dim_hull(points: &[Point], d: usize) -> FullHull {
    assert!(d >= 1);
    assert!(points.iter().all(|p| p.len() == d));

    let mut scale = BigInt::one();
    for p in points {
        for x in p {
            scale = scale.lcm(x.denom());
        }
    }
    let ipoints: Vec<Vec<BigInt>> = points
        .iter()
        .map(|p| p.iter().map(|x| x.numer() * (&scale / x.denom())).collect())
        .collect();

    if d == 1 {
        let mut min = 0usize;
        let mut max = 0usize;
        for (i, p) in ipoints.iter().enumerate() {
            if p[0] < ipoints[min][0] {
                min = i;
            }
            if p[0] > ipoints[max][0] {
                max = i;
            }
        }
        assert!(ipoints[min][0] < ipoints[max][0], "input does not span R^1");
        let mut idxs = vec![min, max];
        idxs.sort_unstable();
        let merged = vec![
            (
                vec![BigInt::from(-1)],
                Rational::new(-ipoints[min][0].clone(), scale.clone()),
            ),
            (
                vec![BigInt::one()],
                Rational::new(ipoints[max][0].clone(), scale.clone()),
            ),
        ];
        return FullHull {
            vertex_idxs: idxs,
            facets: Vec::new(),
            merged,
            dim: 1,
            scale,
            ipoints,
        };
    }

    let simplex = int_affine_basis(&ipoints, d);

    // Orientation reference: (d+1) times the initial simplex centroid,
    // which stays strictly interior to every later hull.
    let ref_sum: Vec<BigInt> = (0..d)
        .map(|c| simplex.iter().map(|&i| &ipoints[i][c]).sum())
        .collect();
    let members = BigInt::from(simplex.len());
    let orient = |normal: Vec<BigInt>, offset: BigInt| -> (Vec<BigInt>, BigInt) {
        let side = int_dot(&normal, &ref_sum);
        let bound = &offset * &members;
        assert!(side != bound, "interior reference on a facet plane");
        if side > bound {
            (normal.iter().map(|x| -x).collect(), -offset)
        } else {
            (normal, offset)
        }
    };

    let mut facets: Vec<FacetSimplex> = Vec::new();
    for skip in 0..simplex.len() {
        let verts: Vec<usize> = simplex
            .iter()
            .enumerate()
            .filter_map(|(i, &v)| (i != skip).then_some(v))
            .collect();
        let pts: Vec<&Vec<BigInt>> = verts.iter().map(|&v| &ipoints[v]).collect();
        let (normal, offset) =
            int_hyperplane(&pts, d).expect("initial simplex facet is degenerate");
        let (normal, offset) = orient(normal, offset);
        facets.push(FacetSimplex { verts, normal, offset });
    }

    let in_simplex: std::collections::HashSet<usize> = simplex.iter().copied().collect();
    for p_idx in 0..ipoints.len() {
        if in_simplex.contains(&p_idx) {
            continue;
        }
        let p = &ipoints[p_idx];
        let visible: Vec<usize> = facets
            .iter()
            .enumerate()
            .filter(|(_, f)| int_dot(&f.normal, p) > f.offset)
            .map(|(i, _)| i)
            .collect();
        if visible.is_empty() {
            continue; // inside or on the boundary of the current hull
        }
        // Horizon ridges appear in exactly one visible facet.
        let mut ridge_count: HashMap<Vec<usize>, u32> = HashMap::new();
        for &fi in &visible {
            let vs = &facets[fi].verts;
            for skip in 0..vs.len() {
                let mut ridge: Vec<usize> = vs
                    .iter()
                    .enumerate()
                    .filter_map(|(i, &v)| (i != skip).then_some(v))
                    .collect();
                ridge.sort_unstable();
                *ridge_count.entry(ridge).or_insert(0) += 1;
            }
        }
        let mut horizon: Vec<Vec<usize>> = ridge_count
            .into_iter()
            .filter_map(|(r, c)| (c == 1).then_some(r))
            .collect();
        horizon.sort();

        let visible_set: std::collections::HashSet<usize> = visible.into_iter().collect();
        let mut keep = Vec::with_capacity(facets.len());
        for (i, f) in facets.drain(..).enumerate() {
            if !visible_set.contains(&i) {
                keep.push(f);
            }
        }
        facets = keep;
        for ridge in horizon {
            let mut verts = ridge;
            verts.push(p_idx);
            let pts: Vec<&Vec<BigInt>> = verts.iter().map(|&v| &ipoints[v]).collect();
            let (normal, offset) =
                int_hyperplane(&pts, d).expect("horizon cone facet is degenerate");
            let (normal, offset) = orient(normal, offset);
            facets.push(FacetSimplex { verts, normal, offset });
        }
    }

    // Merge simplicial facets by supporting hyperplane; map offsets back
    // to the original scale.
    let mut merged_map = std::collections::BTreeMap::new();
    for f in &facets {
        let (normal, g) = primitive_int(&f.normal);
        let offset = Rational::new(f.offset.clone(), &g * &scale);
        merged_map.insert((normal, offset), ());
    }
    let merged: Vec<(Vec<BigInt>, Rational)> = merged_map.into_keys().collect();

    // A simplex corner can get swallowed into the relative interior of a
    // merged facet as later points arrive; only points whose active facet
    // normals span R^d are true vertices.
    let mut candidates: Vec<usize> = facets.iter().flat_map(|f| f.verts.iter().copied()).collect();
    candidates.sort_unstable();
    candidates.dedup();
    let vertex_idxs: Vec<usize> = candidates
        .into_iter()
        .filter(|&v| {
            let active: Vec<Vec<BigInt>> = facets
                .iter()
                .filter(|f| int_dot(&f.normal, &ipoints[v]) == f.offset)
                .map(|f| f.normal.clone())
                .collect();
            int_rank(active) == d
        })
        .collect();

    FullHull {
        vertex_idxs,
        facets,
        merged,
        dim: d,
        scale,
        ipoints,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int};

    fn pts(v: &[[i64; 2]]) -> Vec<Point> {
        v.iter()
            .map(|p| p.iter().map(|&x| rat_int(x)).collect())
            .collect()
    }

    #[test]
    fn det_and_inverse() {
        let m = vec![vec![rat_int(1), rat_int(2)], vec![rat_int(3), rat_int(4)]];
        assert_eq!(rational_det(m.clone()), rat_int(-2));
        let inv = rational_inverse(&m).unwrap();
        assert_eq!(inv[0][0], rat_int(-2));
        assert_eq!(inv[0][1], rat_int(1));
        assert_eq!(inv[1][0], rat(3, 2));
        assert_eq!(inv[1][1], rat(-1, 2));
        let sing = vec![vec![rat_int(1), rat_int(2)], vec![rat_int(2), rat_int(4)]];
        assert!(rational_inverse(&sing).is_none());
        assert_eq!(rational_det(sing), rat_int(0));
    }

    #[test]
    fn integer_helpers() {
        let m = vec![
            vec![BigInt::from(2), BigInt::from(0), BigInt::from(1)],
            vec![BigInt::from(1), BigInt::from(3), BigInt::from(0)],
            vec![BigInt::from(0), BigInt::from(1), BigInt::from(1)],
        ];
        assert_eq!(int_det(m.clone()), BigInt::from(7));
        assert_eq!(int_rank(m), 3);
        let dep = vec![
            vec![BigInt::from(1), BigInt::from(2)],
            vec![BigInt::from(2), BigInt::from(4)],
        ];
        assert_eq!(int_rank(dep.clone()), 1);
        assert_eq!(int_det(dep), BigInt::from(0));
    }

    #[test]
    fn square_hull() {
        let points = pts(&[[0, 0], [2, 0], [0, 2], [2, 2], [1, 1], [1, 0]]);
        let hull = full_dim_hull(&points, 2);
        assert_eq!(hull.vertex_idxs, vec![0, 1, 2, 3]);
        assert_eq!(hull.volume(), rat_int(4));
        assert_eq!(hull.merged.len(), 4);
    }

    #[test]
    fn swallowed_vertices_are_dropped() {
        // (1,0) and (1,1) are hull vertices mid-run but end up strictly
        // inside edges of the final rectangle [0,2] x [0,1]
        let points = pts(&[[0, 0], [1, 0], [0, 1], [1, 1], [2, 0], [2, 1]]);
        let hull = full_dim_hull(&points, 2);
        assert_eq!(hull.vertex_idxs, vec![0, 2, 4, 5]);
        assert_eq!(hull.volume(), rat_int(2));
        assert_eq!(hull.merged.len(), 4);
    }

    #[test]
    fn segment_hull() {
        let points: Vec<Point> = vec![vec![rat_int(3)], vec![rat_int(-1)], vec![rat_int(2)]];
        let hull = full_dim_hull(&points, 1);
        assert_eq!(hull.vertex_idxs, vec![0, 1]);
        assert_eq!(hull.volume(), rat_int(4));
    }

    #[test]
    fn cube_hull_3d() {
        let mut points = Vec::new();
        for x in [-1i64, 1] {
            for y in [-1i64, 1] {
                for z in [-1i64, 1] {
                    points.push(vec![rat_int(x), rat_int(y), rat_int(z)]);
                }
            }
        }
        points.push(vec![rat_int(0), rat_int(0), rat_int(0)]);
        let hull = full_dim_hull(&points, 3);
        assert_eq!(hull.vertex_idxs.len(), 8);
        assert_eq!(hull.volume(), rat_int(8));
        assert_eq!(hull.merged.len(), 6);
        let tri = hull.star_triangulation();
        let total: Rational = tri
            .iter()
            .map(|s| {
                let rows: Vec<Vec<Rational>> = s[1..]
                    .iter()
                    .map(|&v| {
                        points[v]
                            .iter()
                            .zip(points[s[0]].iter())
                            .map(|(a, b)| a - b)
                            .collect()
                    })
                    .collect();
                rational_det(rows).abs()
            })
            .sum();
        assert_eq!(total / rat_int(6), rat_int(8));
    }

    #[test]
    fn coplanar_points_on_facets() {
        // many boundary points that are not vertices
        let points = pts(&[
            [0, 0], [4, 0], [0, 4], [4, 4],
            [2, 0], [0, 2], [4, 2], [2, 4], [2, 2], [1, 3],
        ]);
        let hull = full_dim_hull(&points, 2);
        assert_eq!(hull.vertex_idxs, vec![0, 1, 2, 3]);
        assert_eq!(hull.volume(), rat_int(16));
    }

    #[test]
    fn rational_coordinates() {
        let points: Vec<Point> = vec![
            vec![rat(1, 2), rat_int(0)],
            vec![rat(-1, 2), rat_int(0)],
            vec![rat_int(0), rat(1, 3)],
            vec![rat_int(0), rat(-1, 3)],
        ];
        let hull = full_dim_hull(&points, 2);
        assert_eq!(hull.vertex_idxs.len(), 4);
        // diamond with diagonals 1 and 2/3
        assert_eq!(hull.volume(), rat(1, 3));
        // facet offsets are expressed in the original coordinates
        for (normal, offset) in &hull.merged {
            let ok = points.iter().all(|p| {
                let lhs: Rational = normal
                    .iter()
                    .zip(p)
                    .map(|(a, b)| Rational::from_integer(a.clone()) * b)
                    .sum();
                lhs <= *offset
            });
            assert!(ok, "facet {normal:?} <= {offset} violated");
        }
    }
}
