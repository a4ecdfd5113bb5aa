//! Text file format for spaces:
//!
//! ```text
//! {"q": 2, "n": 3, "ambient": "symmetric",
//!  "base": [[0,0,0],[0,0,0],[0,0,0]],
//!  "basis": [[[1,0,0],[0,0,0],[0,0,0]]]}
//! ```
//!
//! A `"full"` ambient also carries `"p"`. Entries must be reduced residues.

use serde::Deserialize;

use super::{AffineMatrixSpace, AmbientKind};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::matrix::Matrix;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SpaceDoc {
    q: u32,
    n: usize,
    #[serde(default)]
    p: Option<usize>,
    ambient: String,
    base: Vec<Vec<i64>>,
    basis: Vec<Vec<Vec<i64>>>,
}

pub fn parse(text: &str) -> Result<AffineMatrixSpace> {
    let doc: SpaceDoc = serde_json::from_str(text).map_err(|e| Error::Parse(format!("space file: {e}")))?;
    let field = FieldSpec::new(doc.q)?;
    let ambient = match (doc.ambient.as_str(), doc.p) {
        ("full", Some(p)) => AmbientKind::Full { n: doc.n, p },
        ("full", None) => return Err(Error::Parse("full ambient needs \"p\"".into())),
        ("symmetric", None) => AmbientKind::Symmetric(doc.n),
        ("alternating", None) => AmbientKind::Alternating(doc.n),
        ("symmetric" | "alternating", Some(_)) => {
            return Err(Error::Parse("\"p\" is only allowed for the full ambient".into()))
        }
        (other, _) => return Err(Error::Parse(format!("unknown ambient {other:?}"))),
    };
    let grid = |rows: &[Vec<i64>], what: &str| -> Result<Matrix> {
        if rows.len() != ambient.rows() || rows.iter().any(|r| r.len() != ambient.cols()) {
            return Err(Error::Parse(format!(
                "{what} must be {}x{}",
                ambient.rows(),
                ambient.cols()
            )));
        }
        Matrix::from_int_rows(field, rows)
    };
    let base = grid(&doc.base, "base")?;
    let gens = doc
        .basis
        .iter()
        .enumerate()
        .map(|(k, m)| grid(m, &format!("basis[{k}]")))
        .collect::<Result<Vec<_>>>()?;
    AffineMatrixSpace::from_generators(ambient, &base, &gens)
}

fn write_grid(out: &mut String, m: &Matrix) {
    out.push_str(&m.to_string());
}

/// Deterministic one-document rendering.
pub fn to_text(space: &AffineMatrixSpace) -> String {
    let ambient = space.ambient();
    let mut out = format!("{{\"q\": {}, \"n\": {}", space.field().q(), ambient.rows());
    if let AmbientKind::Full { p, .. } = ambient {
        out.push_str(&format!(", \"p\": {p}"));
    }
    out.push_str(&format!(", \"ambient\": \"{}\",\n \"base\": ", ambient.tag()));
    write_grid(&mut out, &space.base());
    out.push_str(",\n \"basis\": [");
    for (k, m) in space.basis().iter().enumerate() {
        out.push_str(if k == 0 { "\n   " } else { ",\n   " });
        write_grid(&mut out, m);
    }
    out.push_str(if space.dim() == 0 { "]}\n" } else { "\n ]}\n" });
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let f = FieldSpec::gf(3);
        let base = Matrix::from_rows(f, &[[0, 1], [2, 0]]);
        let gens = [Matrix::from_rows(f, &[[1, 0], [0, 2]])];
        let s = AffineMatrixSpace::from_generators(AmbientKind::Full { n: 2, p: 2 }, &base, &gens).unwrap();
        let text = to_text(&s);
        assert_eq!(parse(&text).unwrap(), s);
        assert!(text.contains("\"p\": 2"));
    }

    #[test]
    fn rejects_unreduced_entries() {
        let text = r#"{"q": 2, "n": 1, "ambient": "symmetric", "base": [[2]], "basis": []}"#;
        assert!(matches!(parse(text), Err(Error::Parse(_))));
    }

    #[test]
    fn rejects_shape_errors() {
        let text = r#"{"q": 2, "n": 2, "ambient": "symmetric", "base": [[0,1],[0,0]], "basis": []}"#;
        assert!(matches!(parse(text), Err(Error::Usage(_))));
        let text = r#"{"q": 2, "n": 2, "ambient": "full", "base": [[0,1],[0,0]], "basis": []}"#;
        assert!(parse(text).is_err());
        let text = r#"{"q": 4, "n": 1, "ambient": "symmetric", "base": [[0]], "basis": []}"#;
        assert!(parse(text).is_err());
    }

    #[test]
    fn example_document() {
        let text = r#"{ "q": 2, "n": 3, "ambient": "symmetric",
            "base": [[0,0,0],[0,0,0],[0,0,0]],
            "basis": [ [[1,0,0],[0,0,0],[0,0,0]] ] }"#;
        let s = parse(text).unwrap();
        assert_eq!(s.dim(), 1);
        assert!(s.is_linear());
    }
}
