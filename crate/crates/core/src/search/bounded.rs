//! Exhaustive search for affine subspaces of bounded upper-rank.
//!
//! Within each pivot pattern the coset base is chosen first and then the
//! echelon rows one at a time; after row `k` is fixed only the members
//! whose last nonzero coefficient is `k` are new, and the branch is cut as
//! soon as one of them has rank above the bound. Every member is examined
//! exactly once per branch, so the surviving spaces are exactly those an
//! unpruned scan would keep.

use std::collections::HashSet;
use std::fmt::Write as _;

use rayon::prelude::*;

use super::enumerate::{affine_subspace_count, free_positions, non_pivots, pivot_patterns};
use crate::budget::{self, Budget};
use crate::congruence::GroupAction;
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::linalg;
use crate::matrix::Ranker;
use crate::models::{self, ModelName};
use crate::space::{format, AffineMatrixSpace, AmbientKind};

/// Largest coordinate space whose rank table is precomputed.
const TABLE_LIMIT: u64 = 1 << 22;
/// Largest coordinate space (odd `q`) with a precomputed addition table.
const ADD_TABLE_LIMIT: u64 = 1 << 11;

/// Vectors of `K^N` encoded as base-`q` integers, first coordinate most
/// significant, so integer order is lexicographic order.
pub(crate) struct Coords {
    q: u64,
    len: usize,
    size: u64,
    pow: Vec<u64>,
    add_table: Option<Vec<u32>>,
}

impl Coords {
    pub(crate) fn new(field: FieldSpec, len: usize) -> Result<Self> {
        let q = field.order();
        let size = q
            .checked_pow(len as u32)
            .filter(|&s| s < 1 << 62)
            .ok_or_else(|| Error::capacity("coordinate vectors", budget::pow_sat(q, len), 1 << 62))?;
        let pow: Vec<u64> = (0..len).map(|i| q.pow((len - 1 - i) as u32)).collect();
        let mut c = Coords {
            q,
            len,
            size,
            pow,
            add_table: None,
        };
        if q > 2 && size <= ADD_TABLE_LIMIT {
            let mut table = vec![0u32; (size * size) as usize];
            for a in 0..size {
                for b in 0..size {
                    table[(a * size + b) as usize] = c.add_digits(a, b) as u32;
                }
            }
            c.add_table = Some(table);
        }
        Ok(c)
    }

    pub(crate) fn index(&self, v: &[u8]) -> u64 {
        v.iter().fold(0u64, |acc, &x| acc * self.q + x as u64)
    }

    pub(crate) fn decode(&self, mut idx: u64) -> Vec<u8> {
        let mut v = vec![0u8; self.len];
        for k in (0..self.len).rev() {
            v[k] = (idx % self.q) as u8;
            idx /= self.q;
        }
        v
    }

    fn add_digits(&self, a: u64, b: u64) -> u64 {
        let mut out = 0;
        for &p in &self.pow {
            let da = (a / p) % self.q;
            let db = (b / p) % self.q;
            out += ((da + db) % self.q) * p;
        }
        out
    }

    #[inline]
    pub(crate) fn add(&self, a: u64, b: u64) -> u64 {
        if self.q == 2 {
            a ^ b
        } else if let Some(t) = &self.add_table {
            t[(a * self.size + b) as usize] as u64
        } else {
            self.add_digits(a, b)
        }
    }
}

/// Decides `rank <= r` for encoded ambient coordinate vectors.
pub(crate) struct RankBound {
    ambient: AmbientKind,
    field: FieldSpec,
    r: usize,
    pub(crate) coords: Coords,
    table: Option<Vec<bool>>,
}

impl RankBound {
    pub(crate) fn new(ambient: AmbientKind, field: FieldSpec, r: usize) -> Result<Self> {
        let coords = Coords::new(field, ambient.dim())?;
        let mut rb = RankBound {
            ambient,
            field,
            r,
            coords,
            table: None,
        };
        if rb.coords.size <= TABLE_LIMIT {
            let mut checker = rb.checker();
            let table = (0..rb.coords.size).map(|i| checker.compute(i)).collect();
            rb.table = Some(table);
        }
        Ok(rb)
    }

    pub(crate) fn checker(&self) -> Checker<'_> {
        let (rows, cols) = (self.ambient.rows(), self.ambient.cols());
        Checker {
            bound: self,
            ranker: Ranker::new(self.field, rows, cols),
            dense: vec![0; rows * cols],
        }
    }
}

pub(crate) struct Checker<'a> {
    bound: &'a RankBound,
    ranker: Ranker,
    dense: Vec<u8>,
}

impl Checker<'_> {
    fn compute(&mut self, idx: u64) -> bool {
        let v = self.bound.coords.decode(idx);
        self.bound.ambient.densify(self.bound.field, &v, &mut self.dense);
        self.ranker.rank(&self.dense) <= self.bound.r
    }

    #[inline]
    pub(crate) fn ok(&mut self, idx: u64) -> bool {
        match &self.bound.table {
            Some(t) => t[idx as usize],
            None => self.compute(idx),
        }
    }
}

/// A surviving space as encoded base and echelon rows.
type Encoded = (u64, Vec<u64>);

struct PatternSearch<'a> {
    bound: &'a RankBound,
    /// Per level: each candidate row as its multiples `c · row`, `c = 1..q`.
    candidates: Vec<Vec<Vec<u64>>>,
    collect: bool,
    found: Vec<Encoded>,
    count: u128,
}

impl PatternSearch<'_> {
    fn descend(&mut self, checker: &mut Checker<'_>, members: &mut Vec<u64>, rows: &mut Vec<u64>, base: u64) {
        let k = rows.len();
        if k == self.candidates.len() {
            self.count += 1;
            if self.collect {
                self.found.push((base, rows.clone()));
            }
            return;
        }
        let coords = &self.bound.coords;
        for ci in 0..self.candidates[k].len() {
            let before = members.len();
            let mut ok = true;
            'check: for mult in &self.candidates[k][ci] {
                for i in 0..before {
                    let m = coords.add(members[i], *mult);
                    if !checker.ok(m) {
                        ok = false;
                        break 'check;
                    }
                    members.push(m);
                }
            }
            if ok {
                rows.push(self.candidates[k][ci][0]);
                self.descend(checker, members, rows, base);
                rows.pop();
            }
            members.truncate(before);
        }
    }
}

fn search_pattern(bound: &RankBound, pattern: &[usize], collect: bool) -> (u128, Vec<Encoded>) {
    let f = bound.field;
    let n = bound.ambient.dim();
    let coords = &bound.coords;
    let candidates: Vec<Vec<Vec<u64>>> = (0..pattern.len())
        .map(|k| {
            let free = free_positions(pattern, k, n);
            linalg::all_vectors(f, free.len())
                .map(|digits| {
                    let mut row = vec![0u8; n];
                    row[pattern[k]] = 1;
                    for (&j, &d) in free.iter().zip(&digits) {
                        row[j] = d;
                    }
                    (1..f.q())
                        .map(|c| coords.index(&row.iter().map(|&x| f.mul(c, x)).collect::<Vec<_>>()))
                        .collect()
                })
                .collect()
        })
        .collect();
    let mut search = PatternSearch {
        bound,
        candidates,
        collect,
        found: Vec::new(),
        count: 0,
    };
    let mut checker = bound.checker();
    let cosets = non_pivots(pattern, n);
    let mut members = Vec::new();
    let mut rows = Vec::new();
    for digits in linalg::all_vectors(f, cosets.len()) {
        let mut v = vec![0u8; n];
        for (&j, &d) in cosets.iter().zip(&digits) {
            v[j] = d;
        }
        let base = coords.index(&v);
        if !checker.ok(base) {
            continue;
        }
        members.clear();
        members.push(base);
        search.descend(&mut checker, &mut members, &mut rows, base);
    }
    (search.count, search.found)
}

/// Raw count, survivor count and (when `collect`) the survivors in
/// pattern order.
fn run(
    ambient: AmbientKind,
    field: FieldSpec,
    r: usize,
    dim: usize,
    collect: bool,
    budget: &Budget,
) -> Result<(u128, u128, Vec<AffineMatrixSpace>)> {
    let n = ambient.dim();
    let scanned = affine_subspace_count(n, dim, field.order());
    budget::check(&format!("{dim}-dimensional affine subspaces of {ambient}"), scanned, budget.spaces)?;
    let bound = RankBound::new(ambient, field, r)?;
    let patterns = pivot_patterns(n, dim);
    let parts: Vec<(u128, Vec<Encoded>)> =
        patterns.par_iter().map(|p| search_pattern(&bound, p, collect)).collect();
    let mut total = 0u128;
    let mut spaces = Vec::new();
    for (pattern, (count, found)) in patterns.iter().zip(parts) {
        total += count;
        for (base, rows) in found {
            spaces.push(AffineMatrixSpace::from_canonical_parts(
                ambient,
                field,
                bound.coords.decode(base),
                rows.iter().map(|&x| bound.coords.decode(x)).collect(),
                pattern.clone(),
            ));
        }
    }
    Ok((scanned, total, spaces))
}

/// All `dim`-dimensional affine subspaces with upper-rank at most `r`, with
/// the raw number of subspaces covered.
pub fn bounded_rank_survivors(
    ambient: AmbientKind,
    field: FieldSpec,
    r: usize,
    dim: usize,
    budget: &Budget,
) -> Result<(u128, Vec<AffineMatrixSpace>)> {
    let (scanned, _, spaces) = run(ambient, field, r, dim, true, budget)?;
    Ok((scanned, spaces))
}

/// `(spaces covered, spaces with upper-rank <= r)` without storing them.
pub fn count_bounded_rank(
    ambient: AmbientKind,
    field: FieldSpec,
    r: usize,
    dim: usize,
    budget: &Budget,
) -> Result<(u128, u128)> {
    let (scanned, count, _) = run(ambient, field, r, dim, false, budget)?;
    Ok((scanned, count))
}

/// One congruence class of survivors.
#[derive(Debug, Clone)]
pub struct SearchClass {
    pub key: Vec<u8>,
    /// The orbit member whose serialization is the key.
    pub representative: AffineMatrixSpace,
    /// Number of survivors in the class.
    pub orbit_size: usize,
    /// Every candidate model congruent to the class, in matching order.
    pub matched_models: Vec<ModelName>,
}

impl SearchClass {
    pub fn primary_model(&self) -> Option<ModelName> {
        self.matched_models.first().copied()
    }
}

#[derive(Debug, Clone)]
pub struct SearchReport {
    pub ambient: AmbientKind,
    pub field: FieldSpec,
    pub r: usize,
    pub dim: usize,
    pub spaces_scanned: u128,
    pub spaces_satisfying: u128,
    /// `Some(dim)` when some space of the queried dimension survives.
    pub max_dim_found: Option<usize>,
    pub classes: Option<Vec<SearchClass>>,
}

impl SearchReport {
    pub fn class_count(&self) -> Option<usize> {
        self.classes.as_ref().map(Vec::len)
    }

    /// Primary labels of the classes, `None` for unmatched ones.
    pub fn labels(&self) -> Vec<Option<ModelName>> {
        self.classes.iter().flatten().map(SearchClass::primary_model).collect()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "ambient {}", self.ambient);
        let _ = writeln!(out, "q {}", self.field.q());
        let _ = writeln!(out, "r {}", self.r);
        let _ = writeln!(out, "dim {}", self.dim);
        let _ = writeln!(out, "spaces_scanned {}", self.spaces_scanned);
        let _ = writeln!(out, "spaces_satisfying {}", self.spaces_satisfying);
        match self.max_dim_found {
            Some(d) => {
                let _ = writeln!(out, "max_dim_found {d}");
            }
            None => {
                let _ = writeln!(out, "max_dim_found none");
            }
        }
        if let Some(classes) = &self.classes {
            let _ = writeln!(out, "classes {}", classes.len());
            for (i, c) in classes.iter().enumerate() {
                let models: Vec<String> = c.matched_models.iter().map(|m| m.to_string()).collect();
                let label = if models.is_empty() { "unmatched".to_string() } else { models.join(" = ") };
                let _ = writeln!(out, "class {} orbit {} model {}", i + 1, c.orbit_size, label);
                out.push_str(&format::to_text(&c.representative));
            }
        }
        out
    }
}

/// Candidate models for classes of upper-rank `r` in `ambient`, each built
/// in that ambient.
pub fn model_candidates(ambient: AmbientKind, field: FieldSpec, r: usize) -> Vec<(ModelName, AffineMatrixSpace)> {
    let symmetric = match ambient {
        AmbientKind::Symmetric(_) => true,
        AmbientKind::Alternating(_) => false,
        AmbientKind::Full { .. } => return Vec::new(),
    };
    models::candidates(symmetric, ambient.rows(), r, field)
        .into_iter()
        .filter_map(|m| models::build_in(m, ambient, field).ok().map(|s| (m, s)))
        .collect()
}

/// Splits `spaces` into congruence classes, sorted by key, and matches
/// each class against the candidate models.
pub fn classify_spaces(
    spaces: &[AffineMatrixSpace],
    ambient: AmbientKind,
    field: FieldSpec,
    r: usize,
    budget: &Budget,
) -> Result<Vec<SearchClass>> {
    let group = GroupAction::new(ambient, field, budget)?;
    let mut seen: HashSet<Vec<u8>> = HashSet::new();
    let mut classes = Vec::new();
    for s in spaces {
        if seen.contains(&s.canonical_bytes()) {
            continue;
        }
        let mut best: Option<(Vec<u8>, AffineMatrixSpace)> = None;
        let mut orbit = HashSet::new();
        for (_, img) in group.orbit_images(s) {
            let bytes = img.canonical_bytes();
            if best.as_ref().is_none_or(|(b, _)| bytes < *b) {
                best = Some((bytes.clone(), img));
            }
            orbit.insert(bytes);
        }
        let (key, representative) = best.expect("group is nonempty");
        let orbit_size = orbit.len();
        seen.extend(orbit);
        classes.push(SearchClass {
            key,
            representative,
            orbit_size,
            matched_models: Vec::new(),
        });
    }
    classes.sort_by(|a, b| a.key.cmp(&b.key));
    let dim = spaces.first().map(AffineMatrixSpace::dim);
    for (name, model) in model_candidates(ambient, field, r) {
        if Some(model.dim()) != dim {
            continue;
        }
        let (key, _) = group.canonical_key(&model)?;
        for c in classes.iter_mut().filter(|c| c.key == key) {
            c.matched_models.push(name);
        }
    }
    Ok(classes)
}

/// Scans all `dim`-dimensional affine subspaces and keeps those with
/// upper-rank at most `r`; with `classify`, groups them by congruence.
pub fn bounded_rank_search(
    ambient: AmbientKind,
    field: FieldSpec,
    r: usize,
    dim: usize,
    classify: bool,
    budget: &Budget,
) -> Result<SearchReport> {
    if classify && !ambient.is_square() {
        return Err(Error::usage("classification needs a symmetric or alternating ambient"));
    }
    let (scanned, count, survivors) = run(ambient, field, r, dim, classify, budget)?;
    let classes = if classify { Some(classify_spaces(&survivors, ambient, field, r, budget)?) } else { None };
    Ok(SearchReport {
        ambient,
        field,
        r,
        dim,
        spaces_scanned: scanned,
        spaces_satisfying: count,
        max_dim_found: (count > 0).then_some(dim),
        classes,
    })
}
