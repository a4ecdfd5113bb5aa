//! Linear maps `F` from a space of square matrices to `K^p` with `F(M)` in
//! the column space of `M` for every member (range-compatible maps), and
//! their decomposition into local maps `M -> M x` plus, in characteristic
//! 2 on symmetric matrices, the diagonal map `M -> Δ(M)`.

use std::fmt;

use crate::budget::{self, pow_sat, Budget};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::linalg;
use crate::matrix::{Matrix, Ranker};
use crate::space::{AffineMatrixSpace, AmbientKind};

/// A linear map given by the image of each domain basis element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearMapOnSpace {
    domain: AffineMatrixSpace,
    images: Vec<Vec<u8>>,
}

impl LinearMapOnSpace {
    pub fn new(domain: AffineMatrixSpace, images: Vec<Vec<u8>>) -> Result<Self> {
        if !domain.is_linear() || !domain.ambient().is_square() {
            return Err(Error::usage("range-compatible maps need a linear space of square matrices"));
        }
        let p = domain.ambient().rows();
        if images.len() != domain.dim() || images.iter().any(|v| v.len() != p) {
            return Err(Error::usage(format!("need {} images of length {p}", domain.dim())));
        }
        let q = domain.field().q();
        if images.iter().flatten().any(|&x| x >= q) {
            return Err(Error::usage("image entries must be reduced residues"));
        }
        Ok(LinearMapOnSpace { domain, images })
    }

    /// `M -> M x`.
    pub fn local(domain: AffineMatrixSpace, x: &[u8]) -> Result<Self> {
        let images = domain.basis().iter().map(|m| m.apply(x)).collect();
        Self::new(domain, images)
    }

    /// `M -> Δ(M)`.
    pub fn diagonal(domain: AffineMatrixSpace) -> Result<Self> {
        let images = domain.basis().iter().map(|m| (0..m.rows()).map(|i| m.get(i, i)).collect()).collect();
        Self::new(domain, images)
    }

    pub fn domain(&self) -> &AffineMatrixSpace {
        &self.domain
    }

    pub fn images(&self) -> &[Vec<u8>] {
        &self.images
    }

    pub fn eval_coeffs(&self, coeffs: &[u8]) -> Vec<u8> {
        linalg::combine(self.domain.field(), coeffs, &self.images, self.domain.ambient().rows())
    }

    /// `F(M)` for a member `M`.
    pub fn eval(&self, m: &Matrix) -> Result<Vec<u8>> {
        let coeffs = coordinates(&self.domain, m)?;
        Ok(self.eval_coeffs(&coeffs))
    }

    fn sub(&self, other: &LinearMapOnSpace) -> LinearMapOnSpace {
        let f = self.domain.field();
        let images = self
            .images
            .iter()
            .zip(&other.images)
            .map(|(a, b)| a.iter().zip(b).map(|(&x, &y)| f.sub(x, y)).collect())
            .collect();
        LinearMapOnSpace {
            domain: self.domain.clone(),
            images,
        }
    }
}

/// Coefficients of `m` in the echelon basis of a linear space.
fn coordinates(space: &AffineMatrixSpace, m: &Matrix) -> Result<Vec<u8>> {
    if !space.contains(m)? {
        return Err(Error::usage(format!("{m} is not in the domain")));
    }
    let v = space.ambient().vectorize(m)?;
    Ok(space.pivots().iter().map(|&p| v[p]).collect())
}

fn in_column_space(ranker: &mut Ranker, m: &Matrix, y: &[u8], buf: &mut Vec<u8>) -> bool {
    buf.clear();
    for (i, &yi) in y.iter().enumerate() {
        buf.extend_from_slice(m.row(i));
        buf.push(yi);
    }
    ranker.rank(buf) == m.rank()
}

/// Whether `F(M)` lies in the column space of `M` for every member.
pub fn is_range_compatible(map: &LinearMapOnSpace, budget: &Budget) -> Result<bool> {
    let members = map.domain.enumerate_members(budget)?;
    is_range_compatible_on(map, &members)
}

/// The same check restricted to the listed members (for maps required to
/// be compatible only on part of the domain).
pub fn is_range_compatible_on(map: &LinearMapOnSpace, members: &[Matrix]) -> Result<bool> {
    let n = map.domain.ambient().rows();
    let mut ranker = Ranker::new(map.domain.field(), n, n + 1);
    let mut buf = Vec::new();
    for m in members {
        let y = map.eval(m)?;
        if !in_column_space(&mut ranker, m, &y, &mut buf) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RcLabel {
    /// `F(M) = M x`, with the lexicographically smallest `x`.
    Local(Vec<u8>),
    /// `F(M) = M x + Δ(M)`.
    LocalPlusDelta(Vec<u8>),
    Other,
}

impl RcLabel {
    pub fn tag(&self) -> &'static str {
        match self {
            RcLabel::Local(_) => "local",
            RcLabel::LocalPlusDelta(_) => "local_plus_delta",
            RcLabel::Other => "other",
        }
    }
}

impl fmt::Display for RcLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vec = |v: &[u8]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        match self {
            RcLabel::Local(x) => write!(f, "local x=({})", vec(x)),
            RcLabel::LocalPlusDelta(x) => write!(f, "local_plus_delta x=({})", vec(x)),
            RcLabel::Other => write!(f, "other"),
        }
    }
}

/// Smallest `x` with `F(M) = M x` on every basis element, if any.
pub fn local_vector(map: &LinearMapOnSpace) -> Option<Vec<u8>> {
    let f = map.domain.field();
    let p = map.domain.ambient().rows();
    let basis = map.domain.basis();
    let mut a = Vec::with_capacity(basis.len() * p * p);
    let mut rhs = Vec::with_capacity(basis.len() * p);
    for (m, y) in basis.iter().zip(&map.images) {
        a.extend_from_slice(m.entries());
        rhs.extend_from_slice(y);
    }
    if basis.is_empty() {
        return Some(vec![0; p]);
    }
    linalg::solve(f, &a, basis.len() * p, p, &rhs).map(|(x, _)| x)
}

pub fn classify_map(map: &LinearMapOnSpace) -> RcLabel {
    if let Some(x) = local_vector(map) {
        return RcLabel::Local(x);
    }
    let dom = &map.domain;
    if dom.field().is_char2() && matches!(dom.ambient(), AmbientKind::Symmetric(_)) {
        let delta = LinearMapOnSpace::diagonal(dom.clone()).expect("same domain");
        if let Some(x) = local_vector(&map.sub(&delta)) {
            return RcLabel::LocalPlusDelta(x);
        }
    }
    RcLabel::Other
}

#[derive(Debug, Clone)]
pub struct RcEnumeration {
    pub ambient: AmbientKind,
    pub field: FieldSpec,
    /// Number of linear maps covered (`q^(dim · p)`).
    pub maps_tested: u128,
    /// Range-compatible maps in lexicographic image order, with labels.
    pub maps: Vec<(LinearMapOnSpace, RcLabel)>,
}

impl RcEnumeration {
    /// Counts of (local, local_plus_delta, other).
    pub fn counts(&self) -> (usize, usize, usize) {
        let mut c = (0, 0, 0);
        for (_, label) in &self.maps {
            match label {
                RcLabel::Local(_) => c.0 += 1,
                RcLabel::LocalPlusDelta(_) => c.1 += 1,
                RcLabel::Other => c.2 += 1,
            }
        }
        c
    }
}

/// Every range-compatible linear map on the full `Sym_p` or `Alt_p`.
///
/// Images are chosen basis element by basis element in lexicographic
/// order; a partial choice is abandoned as soon as a member spanned by the
/// chosen elements is violated, which leaves the set of maps found
/// unchanged.
pub fn enumerate_rc_maps(ambient: AmbientKind, field: FieldSpec, budget: &Budget) -> Result<RcEnumeration> {
    if !ambient.is_square() {
        return Err(Error::usage("range-compatible maps are enumerated on Sym_p or Alt_p"));
    }
    let p = ambient.rows();
    let domain = AffineMatrixSpace::full(ambient, field);
    let d = domain.dim();
    let total = pow_sat(field.order(), d * p);
    budget::check("linear maps", total, budget.maps)?;
    budget::check("members of the domain", domain.size(), budget.members)?;

    // Members grouped by the index of their last nonzero coefficient.
    let mut by_last: Vec<Vec<(Vec<u8>, Matrix)>> = vec![Vec::new(); d];
    let (rows, cols) = (p, p);
    domain.walk_dense(|c, m| {
        if let Some(last) = c.iter().rposition(|&x| x != 0) {
            let mat = Matrix::from_residues(field, rows, cols, m.to_vec()).expect("reduced");
            by_last[last].push((c.to_vec(), mat));
        }
        true
    });
    let targets: Vec<Vec<u8>> = linalg::all_vectors(field, p).collect();
    let mut ranker = Ranker::new(field, p, p + 1);
    let mut buf = Vec::new();
    let mut chosen: Vec<Vec<u8>> = Vec::with_capacity(d);
    let mut found = Vec::new();
    dfs(
        &mut DfsState {
            field,
            p,
            by_last: &by_last,
            targets: &targets,
            ranker: &mut ranker,
            buf: &mut buf,
            found: &mut found,
        },
        &mut chosen,
    );
    let maps = found
        .into_iter()
        .map(|images| {
            let map = LinearMapOnSpace::new(domain.clone(), images).expect("well-formed");
            let label = classify_map(&map);
            (map, label)
        })
        .collect();
    Ok(RcEnumeration {
        ambient,
        field,
        maps_tested: total,
        maps,
    })
}

struct DfsState<'a> {
    field: FieldSpec,
    p: usize,
    by_last: &'a [Vec<(Vec<u8>, Matrix)>],
    targets: &'a [Vec<u8>],
    ranker: &'a mut Ranker,
    buf: &'a mut Vec<u8>,
    found: &'a mut Vec<Vec<Vec<u8>>>,
}

fn dfs(st: &mut DfsState<'_>, chosen: &mut Vec<Vec<u8>>) {
    let k = chosen.len();
    if k == st.by_last.len() {
        st.found.push(chosen.clone());
        return;
    }
    for t in st.targets {
        chosen.push(t.clone());
        let ok = st.by_last[k].iter().all(|(c, m)| {
            let y = linalg::combine(st.field, &c[..=k], chosen, st.p);
            in_column_space(st.ranker, m, &y, st.buf)
        });
        if ok {
            dfs(st, chosen);
        }
        chosen.pop();
    }
}
