//! Exact lattice point enumeration against `Z^n` and its sublattices,
//! plus Pick's identity for planar lattice polygons.
//!
//! Counting is a bounding-box sweep with exact membership tests; at desk
//! scale this is fast and doubles as the independent oracle for every
//! closed-form count elsewhere in the crate.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::exact::{is_integer, rat_int, IntMatrix, Rational};
use crate::polytope::{hull::affine_dim, Location, Membership, Point, VPolytope};
use crate::{Error, Result};

/// Lattice point counts of a polytope: `total = interior + boundary`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LatticeCount {
    pub total: u64,
    pub interior: u64,
    pub boundary: u64,
}

/// Result of Pick's identity on a lattice polygon; `residual` is
/// `area - (interior + boundary/2 - 1)` and Pick's theorem asserts zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PickIdentity {
    pub area: Rational,
    pub interior: u64,
    pub boundary: u64,
    pub residual: Rational,
}

fn sweep<T, F>(lo: &[BigInt], hi: &[BigInt], visit: F) -> Vec<T>
where
    T: Send,
    F: Fn(&[BigInt]) -> Option<T> + Sync,
{
    let n = lo.len();
    let first: Vec<BigInt> = {
        let mut v = Vec::new();
        let mut x = lo[0].clone();
        while x <= hi[0] {
            v.push(x.clone());
            x += 1;
        }
        v
    };
    first
        .into_par_iter()
        .flat_map_iter(|x0| {
            let mut found = Vec::new();
            let mut point = lo.to_vec();
            point[0] = x0;
            if n == 1 {
                if let Some(t) = visit(&point) {
                    found.push(t);
                }
                return found.into_iter();
            }
            'odometer: loop {
                if let Some(t) = visit(&point) {
                    found.push(t);
                }
                // increment coordinates 1..n
                for c in (1..n).rev() {
                    if point[c] < hi[c] {
                        point[c] += 1;
                        for r in c + 1..n {
                            point[r] = lo[r].clone();
                        }
                        continue 'odometer;
                    }
                }
                break;
            }
            found.into_iter()
        })
        .collect()
}

/// All lattice points of `p`, paired with their boundary/interior location.
pub fn lattice_points(p: &VPolytope) -> Vec<(Vec<BigInt>, Location)> {
    let (lo, hi) = p.bounding_box();
    let membership = p.membership();
    let mut pts = sweep(&lo, &hi, |x| {
        let loc = match &membership {
            Membership::Full { facets } => facets.classify_int(x),
            other => {
                let xr: Point = x.iter().map(|v| Rational::from_integer(v.clone())).collect();
                other.classify(&xr)
            }
        };
        (loc != Location::Outside).then(|| (x.to_vec(), loc))
    });
    pts.sort();
    pts
}

/// Exact counts of `Z^n` points in `p`, in its topological interior, and
/// on its boundary. Lower-dimensional polytopes have empty interior.
pub fn count(p: &VPolytope) -> LatticeCount {
    let mut total = 0u64;
    let mut interior = 0u64;
    for (_, loc) in lattice_points(p) {
        total += 1;
        if loc == Location::Interior {
            interior += 1;
        }
    }
    LatticeCount {
        total,
        interior,
        boundary: total - interior,
    }
}

/// Number of points of the sublattice spanned by the rows of `basis`
/// that lie inside `p`.
pub fn count_sublattice(p: &VPolytope, basis: &IntMatrix) -> Result<u64> {
    if basis.cols() != p.ambient_dim() {
        return Err(Error::DimensionMismatch {
            left: basis.cols(),
            right: p.ambient_dim(),
        });
    }
    if basis.rank() != basis.rows() {
        return Err(Error::RankDeficient);
    }
    let tester = SublatticeTester::new(basis);
    Ok(lattice_points(p)
        .into_iter()
        .filter(|(x, _)| tester.contains(x))
        .count() as u64)
}

/// Exact membership test for the sublattice spanned by integer basis rows.
pub struct SublatticeTester {
    dirs: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
    inv: Vec<Vec<Rational>>,
}

impl SublatticeTester {
    pub fn new(basis: &IntMatrix) -> Self {
        let dirs: Vec<Vec<Rational>> = (0..basis.rows())
            .map(|r| {
                basis
                    .row(r)
                    .iter()
                    .map(|v| Rational::from_integer(v.clone()))
                    .collect()
            })
            .collect();
        let k = dirs.len();
        let mut pivots = Vec::with_capacity(k);
        let mut work = dirs.clone();
        for r in 0..k {
            let c = (0..work[r].len())
                .find(|&c| !pivots.contains(&c) && !work[r][c].is_zero())
                .expect("basis rows are independent");
            pivots.push(c);
            for rr in r + 1..k {
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
        let sub: Vec<Vec<Rational>> = dirs
            .iter()
            .map(|row| pivots.iter().map(|&c| row[c].clone()).collect())
            .collect();
        let inv = crate::polytope::hull::rational_inverse(&sub).expect("pivot submatrix invertible");
        SublatticeTester { dirs, pivots, inv }
    }

    /// True iff `x = z . basis` for some integer vector `z`.
    pub fn contains(&self, x: &[BigInt]) -> bool {
        let k = self.dirs.len();
        let y: Vec<Rational> = x.iter().map(|v| Rational::from_integer(v.clone())).collect();
        let t: Vec<Rational> = (0..k)
            .map(|j| (0..k).map(|i| &y[self.pivots[i]] * &self.inv[i][j]).sum())
            .collect();
        if !t.iter().all(is_integer) {
            return false;
        }
        for c in 0..y.len() {
            let recon: Rational = (0..k).map(|i| &t[i] * &self.dirs[i][c]).sum();
            if recon != y[c] {
                return false;
            }
        }
        true
    }
}

/// Dimension of the affine hull of `p ∩ Z^n`; `-1` when empty.
pub fn lattice_span_dim(p: &VPolytope) -> i64 {
    let pts = lattice_points(p);
    if pts.is_empty() {
        return -1;
    }
    let rational_pts: Vec<Point> = pts
        .iter()
        .map(|(x, _)| x.iter().map(|v| Rational::from_integer(v.clone())).collect())
        .collect();
    affine_dim(&rational_pts) as i64
}

/// Pick's identity data for a planar lattice polygon.
pub fn pick_identity(p: &VPolytope) -> Result<PickIdentity> {
    if p.ambient_dim() != 2 || p.dim() != 2 {
        return Err(Error::HypothesisViolated(
            "Pick's identity needs a full-dimensional polygon in the plane".into(),
        ));
    }
    if !p.is_lattice() {
        return Err(Error::NotLatticePolytope);
    }
    let area = p.volume()?;
    let c = count(p);
    let residual = &area
        - (rat_int(c.interior as i64) + Rational::new(BigInt::from(c.boundary), BigInt::from(2u32))
            - Rational::one());
    Ok(PickIdentity {
        area,
        interior: c.interior,
        boundary: c.boundary,
        residual,
    })
}

/// Convenience: counts `#(p ∩ (r + Λ))` for the sublattice Λ spanned by
/// `basis`, by translating `p` to the lattice's frame.
pub fn count_residue_class(p: &VPolytope, basis: &IntMatrix, rep: &[BigInt]) -> Result<u64> {
    let shift: Vec<Rational> = rep
        .iter()
        .map(|v| Rational::from_integer(-v.clone()))
        .collect();
    let translated = p.translate(&shift)?;
    count_sublattice(&translated, basis)
}
