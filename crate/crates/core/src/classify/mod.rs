//! Unimodular classification of centrally symmetric lattice polytopes.
//!
//! Symmetric bodies are centered at the origin, so equivalence is by
//! linear maps in `GL_n(Z)`. The canonical form sorts vertices by an
//! invariant refinement of the vertex-facet pairing matrix, branches on
//! the remaining ties (individualization), and takes the
//! lexicographically-least Hermite normal form of the ordered vertex
//! matrix over all admissible orderings.

pub mod search;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use sha2::{Digest, Sha256};

use crate::exact::{IntMatrix, Rational};
use crate::polytope::VPolytope;
use crate::{Error, Result};

/// Canonical representative of the `GL_n(Z)` orbit of a centrally
/// symmetric lattice polytope; equal forms identify equivalent polytopes.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CanonicalForm {
    pub dim: usize,
    /// Rows of the canonicalized `n x m` matrix (vertices are columns).
    pub matrix: Vec<Vec<BigInt>>,
    /// Hex digest of `matrix`, stable across runs.
    pub hash: String,
}

impl CanonicalForm {
    fn from_matrix(dim: usize, matrix: Vec<Vec<BigInt>>) -> CanonicalForm {
        let mut hasher = Sha256::new();
        hasher.update(format!(
            "{dim};{};{}",
            matrix.len(),
            matrix.first().map_or(0, Vec::len)
        ));
        for row in &matrix {
            for v in row {
                hasher.update(v.to_string());
                hasher.update(",");
            }
            hasher.update(";");
        }
        let hash = format!("{:x}", hasher.finalize());
        CanonicalForm { dim, matrix, hash }
    }
}

/// Vertex-facet pairing data of a full-dimensional lattice polytope:
/// `pairing[i][j] = normal_i . vertex_j`, with integer facet offsets.
struct Pairing {
    pairing: Vec<Vec<BigInt>>,
    offsets: Vec<BigInt>,
    vertex_count: usize,
}

fn integer_vertices(p: &VPolytope) -> Result<Vec<Vec<BigInt>>> {
    if !p.is_lattice() {
        return Err(Error::NotLatticePolytope);
    }
    Ok(p.vertices()
        .iter()
        .map(|v| v.iter().map(|x| x.numer().clone()).collect())
        .collect())
}

fn pairing_of(p: &VPolytope, vertices: &[Vec<BigInt>]) -> Result<Pairing> {
    let facets = p.facets()?;
    let mut pairing = Vec::with_capacity(facets.facets().len());
    let mut offsets = Vec::with_capacity(facets.facets().len());
    for f in facets.facets() {
        debug_assert!(crate::exact::is_integer(&f.offset));
        offsets.push(f.offset.numer().clone());
        pairing.push(vertices.iter().map(|v| f.value_int(v)).collect());
    }
    Ok(Pairing {
        pairing,
        offsets,
        vertex_count: vertices.len(),
    })
}

/// Iterated invariant refinement: colors are renumbered from sorted
/// distinct keys every round, so the numbering itself is invariant.
fn refine(pairing: &Pairing, individualized: &[Option<u32>]) -> Vec<usize> {
    let m = pairing.vertex_count;
    let f = pairing.pairing.len();
    let mut vertex_colors = vec![0usize; m];
    let mut facet_colors = vec![0usize; f];
    loop {
        // facet keys from offsets and the colored column profile
        let mut facet_keys: Vec<(BigInt, Vec<(BigInt, usize)>, usize)> = (0..f)
            .map(|i| {
                let mut profile: Vec<(BigInt, usize)> = (0..m)
                    .map(|j| (pairing.pairing[i][j].clone(), vertex_colors[j]))
                    .collect();
                profile.sort();
                (pairing.offsets[i].clone(), profile, i)
            })
            .collect();
        facet_keys.sort();
        let mut new_facet_colors = vec![0usize; f];
        let mut color = 0usize;
        for w in 0..f {
            if w > 0
                && (facet_keys[w].0 != facet_keys[w - 1].0 || facet_keys[w].1 != facet_keys[w - 1].1)
            {
                color += 1;
            }
            new_facet_colors[facet_keys[w].2] = color;
        }

        // vertex keys: individualized vertices first, in mark order
        let mut vertex_keys: Vec<(u32, Vec<(BigInt, usize)>, usize)> = (0..m)
            .map(|j| {
                let mut profile: Vec<(BigInt, usize)> = (0..f)
                    .map(|i| (pairing.pairing[i][j].clone(), new_facet_colors[i]))
                    .collect();
                profile.sort();
                (individualized[j].map_or(u32::MAX, |s| s), profile, j)
            })
            .collect();
        vertex_keys.sort();
        let mut new_vertex_colors = vec![0usize; m];
        let mut color = 0usize;
        for w in 0..m {
            if w > 0
                && (vertex_keys[w].0 != vertex_keys[w - 1].0
                    || vertex_keys[w].1 != vertex_keys[w - 1].1)
            {
                color += 1;
            }
            new_vertex_colors[vertex_keys[w].2] = color;
        }

        if new_vertex_colors == vertex_colors && new_facet_colors == facet_colors {
            return vertex_colors;
        }
        vertex_colors = new_vertex_colors;
        facet_colors = new_facet_colors;
    }
}

/// Column-style Hermite normal form key of the vertex matrix under a fixed
/// vertex order: the unique representative of `{V U : U unimodular}`.
fn ordered_matrix_key(vertices: &[Vec<BigInt>], order: &[usize]) -> Vec<Vec<BigInt>> {
    let n = vertices[0].len();
    // transpose: columns are vertices in the given order
    let rows: Vec<Vec<BigInt>> = (0..n)
        .map(|c| order.iter().map(|&j| vertices[j][c].clone()).collect())
        .collect();
    let (h, _) = IntMatrix::from_rows(&rows).hnf();
    h.row_vecs()
}

fn search_orderings(
    pairing: &Pairing,
    vertices: &[Vec<BigInt>],
    individualized: &mut Vec<Option<u32>>,
    next_mark: u32,
    best: &mut Option<Vec<Vec<BigInt>>>,
    leaves: &mut usize,
) {
    const LEAF_CAP: usize = 100_000;
    assert!(*leaves < LEAF_CAP, "canonical form search exceeded leaf cap");
    let vertex_colors = refine(pairing, individualized);
    let m = pairing.vertex_count;
    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for j in 0..m {
        classes.entry(vertex_colors[j]).or_default().push(j);
    }
    if let Some((_, class)) = classes.iter().find(|(_, members)| members.len() > 1) {
        for &j in class.clone().iter() {
            individualized[j] = Some(next_mark);
            search_orderings(pairing, vertices, individualized, next_mark + 1, best, leaves);
            individualized[j] = None;
        }
        return;
    }
    *leaves += 1;
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by_key(|&j| vertex_colors[j]);
    let key = ordered_matrix_key(vertices, &order);
    match best {
        Some(b) if *b <= key => {}
        _ => *best = Some(key),
    }
}

/// Canonical form of a centrally symmetric, full-dimensional lattice
/// polytope under linear unimodular equivalence.
pub fn canonical_form(p: &VPolytope) -> Result<CanonicalForm> {
    if !p.is_centrally_symmetric() {
        return Err(Error::NotCentrallySymmetric);
    }
    if !p.is_full_dimensional() {
        return Err(Error::LowerDimensional {
            dim: p.dim(),
            ambient: p.ambient_dim(),
        });
    }
    let vertices = integer_vertices(p)?;
    let pairing = pairing_of(p, &vertices)?;
    let mut individualized = vec![None; vertices.len()];
    let mut best = None;
    let mut leaves = 0usize;
    search_orderings(
        &pairing,
        &vertices,
        &mut individualized,
        0,
        &mut best,
        &mut leaves,
    );
    let matrix = best.expect("at least one ordering");
    Ok(CanonicalForm::from_matrix(p.ambient_dim(), matrix))
}

/// The value `Λ(K) vol(K*)` that the search ranks by.
pub fn gs_product_value(p: &VPolytope) -> Result<Rational> {
    let count = crate::lattice::count(p).total;
    let polar_volume = p.polar()?.volume()?;
    Ok(crate::exact::rat_int(count as i64) * polar_volume)
}
