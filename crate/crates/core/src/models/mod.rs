//! The named extremal spaces and the dimension formulas they realize.
//!
//! Indices below are zero-based. With `r = 2s` or `r = 2s + 1`:
//!
//! * `SymFullPad(r)`: `Sym_r` in the top-left corner of `Sym_n`.
//! * `AltFullPad(r)`: `Alt_{r+1}` in the top-left corner of `Alt_n`, `r` even.
//! * `WA(r)`: alternating matrices supported on the first `s` rows and columns.
//! * `WS(r)`: symmetric matrices supported on the first `s` rows and columns,
//!   plus the free diagonal entry `(s, s)` when `r` is odd.
//! * `Z(k)`: `Z_k` padded to size `n`, where `Z_k` holds the blocks
//!   `[[S, Δ(S)], [Δ(S)^T, (k-1)·1]]` for `S` in `Sym_{k-1}` (`q = 2`).
//! * `ZPrime(r)`: the first `s` rows free plus `[[a, a], [a, 1]]` on the
//!   block `{s, s+1}` (`q = 2`, `r` odd).
//! * `Y1`, `Y2`, `Y3` (3x3) and `U` (4x4 alternating): three-parameter
//!   affine families over GF(2) that do not contain 0.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::matrix::Matrix;
use crate::space::{AffineMatrixSpace, AmbientKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModelName {
    SymFullPad(usize),
    AltFullPad(usize),
    WA(usize),
    WS(usize),
    Z(usize),
    ZPrime(usize),
    Y1,
    Y2,
    Y3,
    U,
}

impl ModelName {
    /// Parses a catalog tag; parameterized tags need `r` (for `Z`, the
    /// block size `k`).
    pub fn from_tag(tag: &str, r: Option<usize>) -> Result<ModelName> {
        let need = |r: Option<usize>| r.ok_or_else(|| Error::usage(format!("model {tag} needs a parameter")));
        Ok(match tag.to_ascii_lowercase().as_str() {
            "sym-pad" | "symfullpad" => ModelName::SymFullPad(need(r)?),
            "alt-pad" | "altfullpad" => ModelName::AltFullPad(need(r)?),
            "wa" => ModelName::WA(need(r)?),
            "ws" => ModelName::WS(need(r)?),
            "z" => ModelName::Z(need(r)?),
            "zprime" | "z'" => ModelName::ZPrime(need(r)?),
            "y1" => ModelName::Y1,
            "y2" => ModelName::Y2,
            "y3" => ModelName::Y3,
            "u" => ModelName::U,
            _ => return Err(Error::usage(format!("unknown model tag {tag:?}"))),
        })
    }

    /// Ambient kind of the built space at size `n`.
    pub fn ambient(self, n: usize) -> AmbientKind {
        match self {
            ModelName::AltFullPad(_) | ModelName::WA(_) | ModelName::U => AmbientKind::Alternating(n),
            _ => AmbientKind::Symmetric(n),
        }
    }

    /// Checks the parameter constraints for size `n` over `field`.
    pub fn check(self, n: usize, field: FieldSpec) -> Result<()> {
        let fail = |msg: &str| Err(Error::usage(format!("{self} at n={n}, q={}: {msg}", field.q())));
        let gf2 = field.is_char2();
        match self {
            ModelName::SymFullPad(r) if r > n => fail("requires r <= n"),
            ModelName::AltFullPad(r) if r % 2 != 0 || r + 1 > n => fail("requires r even and r + 1 <= n"),
            ModelName::WA(r) if r % 2 != 0 || r >= n => fail("requires r = 2s even and r < n"),
            ModelName::WS(r) if r % 2 == 0 && r > n => fail("requires r = 2s <= n"),
            ModelName::WS(r) if r % 2 == 1 && r >= n => fail("requires r = 2s + 1 < n"),
            ModelName::Z(k) if k == 0 || k > n => fail("requires 1 <= k <= n"),
            ModelName::Z(_) if !gf2 => fail("requires q = 2"),
            ModelName::ZPrime(r) if !gf2 => fail(&format!("requires q = 2 (r = {r})")),
            ModelName::ZPrime(r) if r % 2 != 1 || r >= n || n < r / 2 + 2 => {
                fail("requires r = 2s + 1 odd, r < n and n >= s + 2")
            }
            ModelName::Y1 | ModelName::Y2 | ModelName::Y3 if n != 3 || !gf2 => fail("requires n = 3 and q = 2"),
            ModelName::U if n != 4 || !gf2 => fail("requires n = 4 and q = 2"),
            _ => Ok(()),
        }
    }

    /// Upper-rank of the built space.
    pub fn stated_upper_rank(self) -> usize {
        match self {
            ModelName::SymFullPad(r)
            | ModelName::AltFullPad(r)
            | ModelName::WA(r)
            | ModelName::WS(r)
            | ModelName::ZPrime(r) => r,
            ModelName::Z(k) => k - 1,
            ModelName::Y1 | ModelName::Y2 | ModelName::Y3 | ModelName::U => 2,
        }
    }

    /// Dimension of the built space, from the closed formulas.
    pub fn stated_dim(self, n: usize) -> usize {
        match self {
            ModelName::SymFullPad(r) | ModelName::AltFullPad(r) => binom2(r + 1),
            ModelName::WA(r) => binom2(r / 2) + (r / 2) * (n - r / 2),
            ModelName::WS(r) | ModelName::ZPrime(r) => {
                let s = r / 2;
                binom2(s + 1) + s * (n - s) + r % 2
            }
            ModelName::Z(k) => binom2(k),
            ModelName::Y1 | ModelName::Y2 | ModelName::Y3 | ModelName::U => 3,
        }
    }

    /// Whether the space contains the zero matrix.
    pub fn is_linear(self) -> bool {
        match self {
            ModelName::Z(k) => k % 2 == 1,
            ModelName::ZPrime(_) | ModelName::Y1 | ModelName::Y2 | ModelName::Y3 | ModelName::U => false,
            _ => true,
        }
    }
}

impl fmt::Display for ModelName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelName::SymFullPad(r) => write!(f, "sym-pad({r})"),
            ModelName::AltFullPad(r) => write!(f, "alt-pad({r})"),
            ModelName::WA(r) => write!(f, "WA({r})"),
            ModelName::WS(r) => write!(f, "WS({r})"),
            ModelName::Z(k) => write!(f, "Z({k})"),
            ModelName::ZPrime(r) => write!(f, "Zprime({r})"),
            ModelName::Y1 => write!(f, "Y1"),
            ModelName::Y2 => write!(f, "Y2"),
            ModelName::Y3 => write!(f, "Y3"),
            ModelName::U => write!(f, "U"),
        }
    }
}

/// One row of the printed catalog.
#[derive(Debug, Clone, Copy)]
pub struct CatalogEntry {
    pub tag: &'static str,
    pub parameter: &'static str,
    pub ambient: &'static str,
    pub constraint: &'static str,
}

pub fn catalog() -> &'static [CatalogEntry] {
    const C: &[CatalogEntry] = &[
        CatalogEntry { tag: "sym-pad", parameter: "r", ambient: "symmetric", constraint: "r <= n" },
        CatalogEntry { tag: "alt-pad", parameter: "r", ambient: "alternating", constraint: "r even, r + 1 <= n" },
        CatalogEntry { tag: "WA", parameter: "r", ambient: "alternating", constraint: "r = 2s even, r < n" },
        CatalogEntry { tag: "WS", parameter: "r", ambient: "symmetric", constraint: "r = 2s <= n, or r = 2s + 1 < n" },
        CatalogEntry { tag: "Z", parameter: "k", ambient: "symmetric", constraint: "1 <= k <= n, q = 2" },
        CatalogEntry { tag: "Zprime", parameter: "r", ambient: "symmetric", constraint: "r = 2s + 1 < n, n >= s + 2, q = 2" },
        CatalogEntry { tag: "Y1", parameter: "-", ambient: "symmetric", constraint: "n = 3, q = 2" },
        CatalogEntry { tag: "Y2", parameter: "-", ambient: "symmetric", constraint: "n = 3, q = 2" },
        CatalogEntry { tag: "Y3", parameter: "-", ambient: "symmetric", constraint: "n = 3, q = 2" },
        CatalogEntry { tag: "U", parameter: "-", ambient: "alternating", constraint: "n = 4, q = 2" },
    ];
    C
}

fn binom2(m: usize) -> usize {
    m * m.saturating_sub(1) / 2
}

/// Unit coordinate vectors of `amb` at the listed positions.
fn units(amb: AmbientKind, cells: impl IntoIterator<Item = (usize, usize)>) -> Vec<Vec<u8>> {
    let coords = amb.coords();
    cells
        .into_iter()
        .map(|cell| {
            let mut v = vec![0; coords.len()];
            v[coords.iter().position(|&c| c == cell).expect("cell in ambient")] = 1;
            v
        })
        .collect()
}

/// Symmetric `n x n` matrix with ones at the listed cells and their mirrors.
fn sym_cells(f: FieldSpec, n: usize, cells: &[(usize, usize)]) -> Matrix {
    let mut m = Matrix::zeros(f, n, n);
    for &(i, j) in cells {
        m.set(i, j, f.add(m.get(i, j), 1));
        if i != j {
            m.set(j, i, f.add(m.get(j, i), 1));
        }
    }
    m
}

fn three_param(f: FieldSpec, n: usize, amb: AmbientKind, base: &[(usize, usize)], dirs: [&[(usize, usize)]; 3]) -> Result<AffineMatrixSpace> {
    let gens: Vec<Matrix> = dirs.iter().map(|d| sym_cells(f, n, d)).collect();
    AffineMatrixSpace::from_generators(amb, &sym_cells(f, n, base), &gens)
}

/// `Z_k` in `Sym_k` over GF(2).
fn z_block(f: FieldSpec, k: usize) -> Result<AffineMatrixSpace> {
    let amb = AmbientKind::Symmetric(k);
    let last = k - 1;
    let mut base = Matrix::zeros(f, k, k);
    base.set(last, last, f.reduce(last as i64));
    let mut gens = Vec::new();
    for i in 0..last {
        for j in i..last {
            let mut g = sym_cells(f, k, &[(i, j)]);
            if i == j {
                // A diagonal entry of S also appears in the last row and column.
                g = g.try_add(&sym_cells(f, k, &[(i, last)]))?;
            }
            gens.push(g);
        }
    }
    AffineMatrixSpace::from_generators(amb, &base, &gens)
}

/// The named space at size `n` over `field`, in canonical form.
pub fn build_model(name: ModelName, n: usize, field: FieldSpec) -> Result<AffineMatrixSpace> {
    name.check(n, field)?;
    let amb = name.ambient(n);
    let f = field;
    let zero = vec![0; amb.dim()];
    let linear = |cells: Vec<(usize, usize)>| AffineMatrixSpace::from_vectors(amb, f, zero.clone(), units(amb, cells));
    Ok(match name {
        ModelName::SymFullPad(r) => linear((0..r).flat_map(|i| (i..r).map(move |j| (i, j))).collect()),
        ModelName::AltFullPad(r) => linear((0..=r).flat_map(|i| (i + 1..=r).map(move |j| (i, j))).collect()),
        ModelName::WA(r) => linear((0..r / 2).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()),
        ModelName::WS(r) => {
            let s = r / 2;
            let mut cells: Vec<(usize, usize)> = (0..s).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
            if r % 2 == 1 {
                cells.push((s, s));
            }
            linear(cells)
        }
        ModelName::Z(k) => z_block(f, k)?.pad(n)?,
        ModelName::ZPrime(r) => {
            let s = r / 2;
            let cells: Vec<(usize, usize)> = (0..s).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
            let mut gens: Vec<Matrix> = cells.iter().map(|&c| sym_cells(f, n, &[c])).collect();
            gens.push(sym_cells(f, n, &[(s, s), (s, s + 1)]));
            AffineMatrixSpace::from_generators(amb, &sym_cells(f, n, &[(s + 1, s + 1)]), &gens)?
        }
        ModelName::Y1 => three_param(f, 3, amb, &[(0, 2)], [&[(0, 0)], &[(0, 1)], &[(0, 2), (1, 1)]])?,
        ModelName::Y2 => three_param(
            f,
            3,
            amb,
            &[(0, 2)],
            [&[(0, 0), (0, 2)], &[(0, 1), (0, 2)], &[(1, 1), (2, 2), (0, 2)]],
        )?,
        ModelName::Y3 => three_param(f, 3, amb, &[(1, 2)], [&[(0, 0), (1, 2)], &[(0, 1)], &[(0, 2)]])?,
        ModelName::U => three_param(f, 4, amb, &[(0, 3)], [&[(0, 1)], &[(0, 2)], &[(1, 2), (0, 3)]])?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormulaKind {
    A1,
    A2,
    S1,
    S2,
}

/// The four critical dimensions for rank bound `r` in size `n`: `A1`/`A2`
/// for alternating spaces (`r` even), `S1`/`S2` for symmetric ones.
pub fn dim_formula(kind: FormulaKind, n: usize, r: usize) -> Result<usize> {
    if r >= n {
        return Err(Error::usage(format!("dimension formulas need r < n (got r={r}, n={n})")));
    }
    let s = r / 2;
    match kind {
        FormulaKind::A1 | FormulaKind::A2 if r % 2 == 1 => {
            Err(Error::usage(format!("alternating formulas need r even (got r={r})")))
        }
        FormulaKind::A1 | FormulaKind::S1 => Ok(binom2(r + 1)),
        FormulaKind::A2 => Ok(binom2(s) + s * (n - s)),
        FormulaKind::S2 => Ok(binom2(s + 1) + s * (n - s) + r % 2),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrossoverKind {
    Alt,
    SymEven,
    SymOdd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Crossover {
    FirstMax,
    SecondMax,
    Tie,
}

/// Which of the two formulas is larger at `r = 2s` (`Alt`, `SymEven`) or
/// `r = 2s + 1` (`SymOdd`), decided by the linear threshold on `5s`.
pub fn crossover(kind: CrossoverKind, n: usize, s: usize) -> Result<Crossover> {
    let r = match kind {
        CrossoverKind::Alt | CrossoverKind::SymEven => 2 * s,
        CrossoverKind::SymOdd => 2 * s + 1,
    };
    if r >= n {
        return Err(Error::usage(format!("crossover needs r < n (got r={r}, n={n})")));
    }
    let offset: i64 = match kind {
        CrossoverKind::Alt => 3,
        CrossoverKind::SymEven => 1,
        CrossoverKind::SymOdd => 5,
    };
    let lhs = 5 * s as i64;
    let threshold = 2 * n as i64 - offset;
    let first = s == 0 || lhs >= threshold;
    let second = s == 0 || lhs <= threshold;
    Ok(match (first, second) {
        (true, true) => Crossover::Tie,
        (true, false) => Crossover::FirstMax,
        _ => Crossover::SecondMax,
    })
}

/// Models expected among the maximal spaces of upper-rank `r` in size
/// `n`, in matching order: pads, then WS/WA, then Z/Z', then Y/U.
/// Symmetric searches in characteristic 2 include the alternating pad.
pub fn candidates(symmetric: bool, n: usize, r: usize, field: FieldSpec) -> Vec<ModelName> {
    let list = if symmetric {
        vec![
            ModelName::SymFullPad(r),
            ModelName::AltFullPad(r),
            ModelName::WS(r),
            ModelName::Z(r + 1),
            ModelName::ZPrime(r),
            ModelName::Y1,
            ModelName::Y2,
            ModelName::Y3,
        ]
    } else {
        vec![ModelName::AltFullPad(r), ModelName::WA(r), ModelName::U]
    };
    list.into_iter()
        .filter(|m| m.check(n, field).is_ok())
        .filter(|m| symmetric || m.stated_upper_rank() == r)
        .filter(|m| !(symmetric && matches!(m, ModelName::AltFullPad(_)) && !field.is_char2()))
        .filter(|m| !matches!(m, ModelName::Y1 | ModelName::Y2 | ModelName::Y3) || r == 2)
        .collect()
}

/// Every model whose constraints hold at size `n` over `field`, in
/// catalog order.
pub fn buildable(n: usize, field: FieldSpec) -> Vec<ModelName> {
    let mut out = Vec::new();
    let params = 0..=n;
    for r in params.clone() {
        out.push(ModelName::SymFullPad(r));
    }
    for r in params.clone() {
        out.push(ModelName::AltFullPad(r));
    }
    for r in params.clone() {
        out.push(ModelName::WA(r));
    }
    for r in params.clone() {
        out.push(ModelName::WS(r));
    }
    for k in params.clone() {
        out.push(ModelName::Z(k));
    }
    for r in params {
        out.push(ModelName::ZPrime(r));
    }
    out.extend([ModelName::Y1, ModelName::Y2, ModelName::Y3, ModelName::U]);
    out.retain(|m| m.check(n, field).is_ok());
    out
}

/// `build_model` viewed in the requested ambient (alternating models become
/// symmetric ones in characteristic 2).
pub fn build_in(name: ModelName, ambient: AmbientKind, field: FieldSpec) -> Result<AffineMatrixSpace> {
    let s = build_model(name, ambient.rows(), field)?;
    if s.ambient() == ambient {
        Ok(s)
    } else {
        s.reinterpret(ambient)
    }
}
