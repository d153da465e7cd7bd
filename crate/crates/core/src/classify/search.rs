//! Exhaustive enumeration of centrally symmetric lattice polytope classes
//! within a coordinate box, and the `Λ(K) vol(K*)` maximizer search over
//! them, with resumable checkpoints.
//!
//! Enumeration walks an antichain of symmetric vertex-pair sets in layers
//! of growing vertex count; a set stays live only while every chosen pair
//! is vertex-extreme, which prunes whole subtrees without losing any
//! vertex set (extremeness is inherited by subsets). Completeness is
//! relative to the box: every class with a representative inside
//! `[-B, B]^dim` is found.

use std::collections::BTreeSet;

use num_bigint::BigInt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{canonical_form, CanonicalForm};
use crate::exact::{format_rational, parse_rational, rat_int, Rational};
use crate::lattice;
use crate::polytope::{Point, VPolytope};
use crate::{Error, Result};

pub const CHECKPOINT_SCHEMA_VERSION: u32 = 1;

/// One unimodular class discovered by the search.
#[derive(Clone, Debug)]
pub struct ClassRecord {
    pub form: CanonicalForm,
    /// Vertex rows of the first representative encountered.
    pub representative: Vec<Vec<BigInt>>,
    pub count_total: u64,
    pub count_interior: u64,
    pub volume: Rational,
    /// `None` when the polar is undefined (origin not interior).
    pub polar_volume: Option<Rational>,
    /// `Λ(K) vol(K*)`, when defined.
    pub gs_value: Option<Rational>,
}

/// Entry of the final ranking, ordered by value descending then hash.
#[derive(Clone, Debug)]
pub struct RankedClass {
    pub form: CanonicalForm,
    pub representative: Vec<Vec<BigInt>>,
    pub count_total: u64,
    pub polar_volume: Rational,
    pub value: Rational,
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub ranking: Vec<RankedClass>,
    pub classes_seen: usize,
    pub skipped_no_interior_origin: u64,
}

/// Layered antichain search over symmetric vertex-pair sets.
pub struct ClassSearch {
    dim: usize,
    bound: i64,
    pairs: Vec<Vec<i64>>,
    layer: usize,
    frontier: Vec<Vec<u16>>,
    seen: BTreeSet<String>,
    records: Vec<ClassRecord>,
    skipped_no_interior_origin: u64,
    done: bool,
}

fn cost_guard(dim: usize, bound: i64) -> Result<()> {
    if !(dim == 2 || dim == 3) {
        return Err(Error::CostGuard(format!(
            "exhaustive search supports dim 2 and 3, got {dim}"
        )));
    }
    if bound < 1 || bound > 3 {
        return Err(Error::CostGuard(format!(
            "coordinate bound {bound} outside 1..=3"
        )));
    }
    Ok(())
}

/// Lexicographically-positive representatives of the antipodal pairs of
/// nonzero points in `[-bound, bound]^dim`, sorted.
fn pair_representatives(dim: usize, bound: i64) -> Vec<Vec<i64>> {
    let width = (2 * bound + 1) as usize;
    let total = width.pow(dim as u32);
    let mut out = Vec::new();
    for idx in 0..total {
        let mut rem = idx;
        let mut v = vec![0i64; dim];
        for c in 0..dim {
            v[c] = (rem % width) as i64 - bound;
            rem /= width;
        }
        match v.iter().find(|&&x| x != 0) {
            None => continue,
            Some(&first) if first < 0 => continue,
            Some(_) => out.push(v),
        }
    }
    out.sort();
    out
}

impl ClassSearch {
    pub fn new(dim: usize, bound: i64) -> Result<Self> {
        cost_guard(dim, bound)?;
        Ok(ClassSearch {
            dim,
            bound,
            pairs: pair_representatives(dim, bound),
            layer: 0,
            frontier: vec![Vec::new()],
            seen: BTreeSet::new(),
            records: Vec::new(),
            skipped_no_interior_origin: 0,
            done: false,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn bound(&self) -> i64 {
        self.bound
    }

    pub fn is_done(&self) -> bool {
        self.done
    }

    pub fn layer(&self) -> usize {
        self.layer
    }

    pub fn records(&self) -> &[ClassRecord] {
        &self.records
    }

    pub fn skipped_no_interior_origin(&self) -> u64 {
        self.skipped_no_interior_origin
    }

    fn polytope_of(&self, set: &[u16]) -> VPolytope {
        let mut points: Vec<Point> = Vec::with_capacity(2 * set.len());
        for &i in set {
            let v = &self.pairs[i as usize];
            points.push(v.iter().map(|&x| rat_int(x)).collect());
            points.push(v.iter().map(|&x| rat_int(-x)).collect());
        }
        VPolytope::hull(self.dim, points).expect("nonempty")
    }

    /// Expands one layer of the frontier. Returns `false` once finished.
    pub fn step_layer(&mut self) -> Result<bool> {
        if self.done {
            return Ok(false);
        }
        let pair_count = self.pairs.len() as u16;
        let candidates: Vec<Vec<u16>> = self
            .frontier
            .iter()
            .flat_map(|set| {
                let start = set.last().map_or(0, |&i| i + 1);
                (start..pair_count).map(move |j| {
                    let mut child = set.clone();
                    child.push(j);
                    child
                })
            })
            .collect();

        // hulls and canonical forms in parallel, merged in order
        let evaluated: Vec<(Vec<u16>, bool, Option<CanonicalForm>, VPolytope)> = candidates
            .into_par_iter()
            .map(|set| {
                let p = self.polytope_of(&set);
                let live = p.vertices().len() == 2 * set.len();
                let form = (live && p.dim() == self.dim)
                    .then(|| canonical_form(&p).expect("symmetric lattice polytope"));
                (set, live, form, p)
            })
            .collect();

        let mut next_frontier = Vec::new();
        for (set, live, form, p) in evaluated {
            if !live {
                continue;
            }
            next_frontier.push(set);
            let Some(form) = form else { continue };
            if !self.seen.insert(form.hash.clone()) {
                continue;
            }
            let count = lattice::count(&p);
            let volume = p.volume()?;
            let (polar_volume, gs_value) = match p.polar() {
                Ok(polar) => {
                    let pv = polar.volume()?;
                    let value = rat_int(count.total as i64) * &pv;
                    (Some(pv), Some(value))
                }
                Err(Error::OriginNotInterior) => {
                    self.skipped_no_interior_origin += 1;
                    (None, None)
                }
                Err(e) => return Err(e),
            };
            let representative = p
                .vertices()
                .iter()
                .map(|v| v.iter().map(|x| x.numer().clone()).collect())
                .collect();
            self.records.push(ClassRecord {
                form,
                representative,
                count_total: count.total,
                count_interior: count.interior,
                volume,
                polar_volume,
                gs_value,
            });
        }
        self.layer += 1;
        self.frontier = next_frontier;
        if self.frontier.is_empty() {
            self.done = true;
        }
        Ok(!self.done)
    }

    pub fn run_to_completion(&mut self) -> Result<()> {
        while self.step_layer()? {}
        Ok(())
    }

    /// Ranking by exact value, descending, ties broken by canonical hash.
    pub fn outcome(&self) -> SearchOutcome {
        let mut ranking: Vec<RankedClass> = self
            .records
            .iter()
            .filter_map(|r| {
                Some(RankedClass {
                    form: r.form.clone(),
                    representative: r.representative.clone(),
                    count_total: r.count_total,
                    polar_volume: r.polar_volume.clone()?,
                    value: r.gs_value.clone()?,
                })
            })
            .collect();
        ranking.sort_by(|a, b| b.value.cmp(&a.value).then_with(|| a.form.hash.cmp(&b.form.hash)));
        SearchOutcome {
            ranking,
            classes_seen: self.records.len(),
            skipped_no_interior_origin: self.skipped_no_interior_origin,
        }
    }

    pub fn checkpoint(&self) -> SearchCheckpoint {
        let records = self
            .records
            .iter()
            .map(|r| CheckpointRecord {
                hash: r.form.hash.clone(),
                matrix: r.form.matrix.iter().map(|row| row.iter().map(BigInt::to_string).collect()).collect(),
                representative: r
                    .representative
                    .iter()
                    .map(|row| row.iter().map(BigInt::to_string).collect())
                    .collect(),
                count_total: r.count_total,
                count_interior: r.count_interior,
                volume: format_rational(&r.volume),
                polar_volume: r.polar_volume.as_ref().map(format_rational),
                gs_value: r.gs_value.as_ref().map(format_rational),
            })
            .collect();
        let mut cp = SearchCheckpoint {
            schema_version: CHECKPOINT_SCHEMA_VERSION,
            dim: self.dim,
            bound: self.bound,
            layer: self.layer,
            frontier: self.frontier.clone(),
            seen: self.seen.iter().cloned().collect(),
            records,
            skipped_no_interior_origin: self.skipped_no_interior_origin,
            done: self.done,
            digest: String::new(),
        };
        cp.digest = cp.compute_digest();
        cp
    }

    /// Rebuilds the exact search state from a checkpoint.
    pub fn resume(cp: SearchCheckpoint) -> Result<Self> {
        cost_guard(cp.dim, cp.bound)?;
        let mut records = Vec::with_capacity(cp.records.len());
        for r in &cp.records {
            let matrix: Vec<Vec<BigInt>> = r
                .matrix
                .iter()
                .map(|row| row.iter().map(|s| parse_big(s)).collect::<Result<_>>())
                .collect::<Result<_>>()?;
            let form = CanonicalForm::from_matrix(cp.dim, matrix);
            if form.hash != r.hash {
                return Err(Error::CheckpointCorrupt);
            }
            records.push(ClassRecord {
                form,
                representative: r
                    .representative
                    .iter()
                    .map(|row| row.iter().map(|s| parse_big(s)).collect::<Result<_>>())
                    .collect::<Result<_>>()?,
                count_total: r.count_total,
                count_interior: r.count_interior,
                volume: parse_rational(&r.volume)?,
                polar_volume: r.polar_volume.as_deref().map(parse_rational).transpose()?,
                gs_value: r.gs_value.as_deref().map(parse_rational).transpose()?,
            });
        }
        Ok(ClassSearch {
            dim: cp.dim,
            bound: cp.bound,
            pairs: pair_representatives(cp.dim, cp.bound),
            layer: cp.layer,
            frontier: cp.frontier,
            seen: cp.seen.into_iter().collect(),
            records,
            skipped_no_interior_origin: cp.skipped_no_interior_origin,
            done: cp.done,
        })
    }
}

fn parse_big(s: &str) -> Result<BigInt> {
    s.parse::<BigInt>()
        .map_err(|_| Error::BadRational(s.to_string()))
}

/// Serializable snapshot of a search in progress; `digest` certifies the
/// content and `schema_version` gates resumption.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SearchCheckpoint {
    pub schema_version: u32,
    pub dim: usize,
    pub bound: i64,
    pub layer: usize,
    pub frontier: Vec<Vec<u16>>,
    pub seen: Vec<String>,
    pub records: Vec<CheckpointRecord>,
    pub skipped_no_interior_origin: u64,
    pub done: bool,
    pub digest: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CheckpointRecord {
    pub hash: String,
    pub matrix: Vec<Vec<String>>,
    pub representative: Vec<Vec<String>>,
    pub count_total: u64,
    pub count_interior: u64,
    pub volume: String,
    pub polar_volume: Option<String>,
    pub gs_value: Option<String>,
}

impl SearchCheckpoint {
    fn compute_digest(&self) -> String {
        let mut stripped = self.clone();
        stripped.digest = String::new();
        let body = serde_json::to_string(&stripped).expect("checkpoint serializes");
        format!("{:x}", Sha256::digest(body.as_bytes()))
    }

    pub fn save(&self, path: &std::path::Path) -> Result<()> {
        let body = serde_json::to_string_pretty(self)?;
        std::fs::write(path, body)?;
        Ok(())
    }

    pub fn load(path: &std::path::Path) -> Result<SearchCheckpoint> {
        let body = std::fs::read_to_string(path)?;
        let cp: SearchCheckpoint = serde_json::from_str(&body)?;
        if cp.schema_version != CHECKPOINT_SCHEMA_VERSION {
            return Err(Error::CheckpointVersion {
                expected: CHECKPOINT_SCHEMA_VERSION,
                found: cp.schema_version,
            });
        }
        if cp.digest != cp.compute_digest() {
            return Err(Error::CheckpointCorrupt);
        }
        Ok(cp)
    }
}

/// All unimodular classes of full-dimensional centrally symmetric lattice
/// polytopes with vertices in `[-bound, bound]^dim`, optionally filtered
/// by interior lattice point count. Discovery order: vertex count layers.
pub fn enumerate_cs_polytopes(
    dim: usize,
    bound: i64,
    interior_filter: Option<u64>,
) -> Result<Vec<ClassRecord>> {
    let mut search = ClassSearch::new(dim, bound)?;
    search.run_to_completion()?;
    Ok(search
        .records()
        .iter()
        .filter(|r| interior_filter.is_none_or(|want| r.count_interior == want))
        .cloned()
        .collect())
}

/// Ranks every class in the box by exact `Λ(K) vol(K*)`.
pub fn maximize_gs_product(dim: usize, bound: i64) -> Result<SearchOutcome> {
    let mut search = ClassSearch::new(dim, bound)?;
    search.run_to_completion()?;
    Ok(search.outcome())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::{cube, diamond, hexagon};

    #[test]
    fn pair_representative_counts() {
        assert_eq!(pair_representatives(2, 1).len(), 4);
        assert_eq!(pair_representatives(2, 2).len(), 12);
        assert_eq!(pair_representatives(3, 1).len(), 13);
    }

    #[test]
    fn guards() {
        assert!(ClassSearch::new(4, 1).is_err());
        assert!(ClassSearch::new(1, 1).is_err());
        assert!(ClassSearch::new(3, 4).is_err());
        assert!(ClassSearch::new(2, 0).is_err());
    }

    #[test]
    fn planar_interior_one_classes() {
        let classes = enumerate_cs_polytopes(2, 1, Some(1)).unwrap();
        assert_eq!(classes.len(), 3);
        let expected: BTreeSet<String> = [
            canonical_form(&cube(2)).unwrap().hash,
            canonical_form(&diamond(2)).unwrap().hash,
            canonical_form(&hexagon()).unwrap().hash,
        ]
        .into_iter()
        .collect();
        let got: BTreeSet<String> = classes.iter().map(|c| c.form.hash.clone()).collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn planar_enumeration_unfiltered() {
        let classes = enumerate_cs_polytopes(2, 1, None).unwrap();
        // all classes in the B=1 box have exactly one interior point
        assert_eq!(classes.len(), 3);
        for c in &classes {
            assert_eq!(c.count_interior, 1);
        }
    }

    #[test]
    fn planar_maximizer_b1() {
        let outcome = maximize_gs_product(2, 1).unwrap();
        assert_eq!(outcome.skipped_no_interior_origin, 0);
        let top = &outcome.ranking[0];
        assert_eq!(top.value, rat_int(21));
        assert_eq!(top.form, canonical_form(&hexagon()).unwrap());
        let values: Vec<Rational> = outcome.ranking.iter().map(|r| r.value.clone()).collect();
        assert_eq!(values, vec![rat_int(21), rat_int(20), rat_int(18)]);
    }

    #[test]
    fn checkpoint_round_trip() {
        let mut search = ClassSearch::new(2, 1).unwrap();
        search.step_layer().unwrap();
        search.step_layer().unwrap();
        let cp = search.checkpoint();
        let dir = std::env::temp_dir().join("latnum-test-checkpoint");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("cp.json");
        cp.save(&path).unwrap();
        let loaded = SearchCheckpoint::load(&path).unwrap();
        assert_eq!(cp, loaded);
        // byte-equal when saved again
        let body1 = std::fs::read(&path).unwrap();
        loaded.save(&path).unwrap();
        let body2 = std::fs::read(&path).unwrap();
        assert_eq!(body1, body2);

        // tampering is caught
        let mut broken = loaded.clone();
        broken.skipped_no_interior_origin = 17;
        broken.save(&path).unwrap();
        assert!(matches!(
            SearchCheckpoint::load(&path),
            Err(Error::CheckpointCorrupt)
        ));
        let mut old = cp.clone();
        old.schema_version = 999;
        old.digest = old.compute_digest();
        old.save(&path).unwrap();
        assert!(matches!(
            SearchCheckpoint::load(&path),
            Err(Error::CheckpointVersion { .. })
        ));
        std::fs::remove_dir_all(&dir).ok();
    }

    #[test]
    fn fresh_checkpoint_is_at_start() {
        let search = ClassSearch::new(2, 1).unwrap();
        let cp = search.checkpoint();
        assert_eq!(cp.layer, 0);
        assert_eq!(cp.frontier, vec![Vec::<u16>::new()]);
        assert!(cp.records.is_empty() && !cp.done);
    }

    #[test]
    fn interrupted_resume_matches_uninterrupted() {
        let mut full = ClassSearch::new(2, 1).unwrap();
        full.run_to_completion().unwrap();
        let direct = full.outcome();

        let mut partial = ClassSearch::new(2, 1).unwrap();
        partial.step_layer().unwrap();
        partial.step_layer().unwrap();
        let cp = partial.checkpoint();
        drop(partial);
        let mut resumed = ClassSearch::resume(cp).unwrap();
        resumed.run_to_completion().unwrap();
        let after = resumed.outcome();

        assert_eq!(direct.ranking.len(), after.ranking.len());
        for (a, b) in direct.ranking.iter().zip(after.ranking.iter()) {
            assert_eq!(a.form, b.form);
            assert_eq!(a.value, b.value);
            assert_eq!(a.representative, b.representative);
        }
        // and the final checkpoints agree byte-for-byte
        assert_eq!(full.checkpoint(), resumed.checkpoint());
    }
}
