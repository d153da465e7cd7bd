//! Deterministic random corpora for property suites: symmetric lattice
//! polytopes, lattice polygons, unimodular matrices and generator sets.
//!
//! Callers seed their own `ChaCha8Rng`; identical seeds reproduce
//! identical corpora.

use num_bigint::BigInt;
use rand::Rng;

use crate::exact::{rat_int, IntMatrix};
use crate::polytope::{Point, VPolytope};

/// Random full-dimensional centrally symmetric lattice polytope with
/// vertex coordinates in `[-coord_bound, coord_bound]`, built as the hull
/// of up to `pairs` antipodal point pairs.
pub fn random_symmetric_lattice_polytope(
    rng: &mut impl Rng,
    dim: usize,
    coord_bound: i64,
    pairs: usize,
) -> VPolytope {
    assert!(dim >= 1 && coord_bound >= 1 && pairs >= dim);
    loop {
        let mut points: Vec<Point> = Vec::with_capacity(2 * pairs);
        for _ in 0..pairs {
            let v: Vec<i64> = (0..dim)
                .map(|_| rng.gen_range(-coord_bound..=coord_bound))
                .collect();
            if v.iter().all(|&x| x == 0) {
                continue;
            }
            points.push(v.iter().map(|&x| rat_int(x)).collect());
            points.push(v.iter().map(|&x| rat_int(-x)).collect());
        }
        if points.is_empty() {
            continue;
        }
        let p = VPolytope::hull(dim, points).expect("nonempty");
        if p.is_full_dimensional() {
            debug_assert!(p.is_centrally_symmetric());
            return p;
        }
    }
}

/// Random lattice polygon (not necessarily symmetric) with vertices in
/// `[-bound, bound]^2`.
pub fn random_lattice_polygon(rng: &mut impl Rng, bound: i64, points: usize) -> VPolytope {
    assert!(bound >= 1 && points >= 3);
    loop {
        let pts: Vec<Point> = (0..points)
            .map(|_| {
                (0..2)
                    .map(|_| rat_int(rng.gen_range(-bound..=bound)))
                    .collect()
            })
            .collect();
        let p = VPolytope::hull(2, pts).expect("nonempty");
        if p.dim() == 2 {
            return p;
        }
    }
}

/// Random unimodular matrix, as a product of `ops` elementary shears and
/// signed permutations; entries are re-rolled until all fit in
/// `[-entry_bound, entry_bound]`.
pub fn random_unimodular(rng: &mut impl Rng, dim: usize, entry_bound: i64) -> IntMatrix {
    assert!(dim >= 1);
    loop {
        let mut m = IntMatrix::identity(dim);
        let ops = 2 + dim;
        for _ in 0..ops {
            match rng.gen_range(0..3) {
                0 if dim >= 2 => {
                    // shear: row_a += c * row_b
                    let a = rng.gen_range(0..dim);
                    let mut b = rng.gen_range(0..dim);
                    while b == a {
                        b = rng.gen_range(0..dim);
                    }
                    let choices = [-2i64, -1, 1, 2];
                    let c = BigInt::from(choices[rng.gen_range(0..choices.len())]);
                    for col in 0..dim {
                        let add = &c * m.at(b, col);
                        *m.at_mut(a, col) += add;
                    }
                }
                1 if dim >= 2 => {
                    // swap two rows
                    let a = rng.gen_range(0..dim);
                    let mut b = rng.gen_range(0..dim);
                    while b == a {
                        b = rng.gen_range(0..dim);
                    }
                    for col in 0..dim {
                        let tmp = m.at(a, col).clone();
                        *m.at_mut(a, col) = m.at(b, col).clone();
                        *m.at_mut(b, col) = tmp;
                    }
                }
                _ => {
                    // negate a row
                    let a = rng.gen_range(0..dim);
                    for col in 0..dim {
                        let neg = -m.at(a, col).clone();
                        *m.at_mut(a, col) = neg;
                    }
                }
            }
        }
        let bound = BigInt::from(entry_bound);
        let ok = (0..dim).all(|r| (0..dim).all(|c| m.at(r, c).magnitude() <= bound.magnitude()));
        if ok {
            debug_assert!({
                use num_traits::{One, Signed};
                m.det().unwrap().abs().is_one()
            });
            return m;
        }
    }
}

/// Random set of `dim` linearly independent lattice vectors with entries
/// in `[-bound, bound]`.
pub fn random_generators(rng: &mut impl Rng, dim: usize, bound: i64) -> IntMatrix {
    use num_traits::Zero;
    loop {
        let rows: Vec<Vec<i64>> = (0..dim)
            .map(|_| (0..dim).map(|_| rng.gen_range(-bound..=bound)).collect())
            .collect();
        let m = IntMatrix::from_rows(&rows);
        if !m.det().unwrap().is_zero() {
            return m;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn symmetric_polytopes_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for dim in 2..=4 {
            for _ in 0..10 {
                let p = random_symmetric_lattice_polytope(&mut rng, dim, 4, dim + 2);
                assert!(p.is_centrally_symmetric());
                assert!(p.is_full_dimensional());
                assert!(p.is_lattice());
            }
        }
    }

    #[test]
    fn reproducible_with_seed() {
        let mut a = ChaCha8Rng::seed_from_u64(99);
        let mut b = ChaCha8Rng::seed_from_u64(99);
        let pa = random_symmetric_lattice_polytope(&mut a, 3, 5, 6);
        let pb = random_symmetric_lattice_polytope(&mut b, 3, 5, 6);
        assert_eq!(pa, pb);
    }

    #[test]
    fn unimodular_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for dim in 1..=4 {
            for _ in 0..20 {
                let u = random_unimodular(&mut rng, dim, 4);
                let det = u.det().unwrap();
                assert!((det.clone() - 1i32).is_zero() || (det + 1i32).is_zero());
            }
        }
    }

    #[test]
    fn generators_independent() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for dim in 2..=4 {
            for _ in 0..10 {
                let g = random_generators(&mut rng, dim, 5);
                assert!(!g.det().unwrap().is_zero());
            }
        }
    }
}
