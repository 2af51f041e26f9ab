//! Text and structured serializations of complexes.
//!
//! * Facet-list text: one facet per line, whitespace-separated positive
//!   integers; `#` starts a comment running to the end of the line, blank
//!   lines are skipped.
//! * Structured document: a JSON object with fields `dimension`, `vertices`
//!   and `facets` (a list of integer lists).
//!
//! Both writers emit facets in canonical (sorted) order, so that
//! parse → write is the identity on canonical files.

use serde::{Deserialize, Serialize};

use crate::complex::{Simplex, SimplicialComplex, Vertex};
use crate::error::{Error, Result};

/// Parses the facet-list text format.
pub fn parse_facet_list(text: &str) -> Result<SimplicialComplex> {
    let mut facets = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let trimmed = line.split('#').next().unwrap_or("").trim();
        if trimmed.is_empty() {
            continue;
        }
        let mut vs = Vec::new();
        for tok in trimmed.split_whitespace() {
            let v: Vertex = tok.parse().map_err(|_| Error::Parse {
                line: i + 1,
                message: format!("`{tok}` is not a vertex label"),
            })?;
            if v == 0 {
                return Err(Error::Parse {
                    line: i + 1,
                    message: "vertex labels must be positive".into(),
                });
            }
            vs.push(v);
        }
        let s = Simplex::new(vs).map_err(|e| Error::Parse {
            line: i + 1,
            message: e.to_string(),
        })?;
        facets.push(s);
    }
    SimplicialComplex::from_simplices(facets)
}

/// Writes the facet-list text format (canonical order, no comments).
pub fn write_facet_list(k: &SimplicialComplex) -> String {
    let mut out = String::new();
    for f in k.facets() {
        out.push_str(&f.to_string());
        out.push('\n');
    }
    out
}

/// The structured document form of a complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexDocument {
    pub dimension: isize,
    pub vertices: Vec<Vertex>,
    pub facets: Vec<Vec<Vertex>>,
}

impl ComplexDocument {
    pub fn from_complex(k: &SimplicialComplex) -> Self {
        ComplexDocument {
            dimension: k.dim(),
            vertices: k.vertices(),
            facets: k.facets().iter().map(|f| f.vertices().to_vec()).collect(),
        }
    }

    /// Converts back to a complex, checking the redundant fields.
    pub fn to_complex(&self) -> Result<SimplicialComplex> {
        let k = SimplicialComplex::build(&self.facets)?;
        if k.dim() != self.dimension {
            return Err(Error::Consistency(format!(
                "document declares dimension {} but facets have dimension {}",
                self.dimension,
                k.dim()
            )));
        }
        if k.vertices() != self.vertices {
            return Err(Error::Consistency(
                "document vertex list does not match the facets".into(),
            ));
        }
        Ok(k)
    }
}

/// Writes the structured (JSON) document.
pub fn write_structured(k: &SimplicialComplex) -> String {
    let doc = ComplexDocument::from_complex(k);
    let mut s = serde_json::to_string(&doc).expect("document serializes");
    s.push('\n');
    s
}

/// Parses the structured (JSON) document.
pub fn parse_structured(text: &str) -> Result<SimplicialComplex> {
    let doc: ComplexDocument = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        message: e.to_string(),
    })?;
    doc.to_complex()
}

/// Parses either format, choosing by the first non-blank character.
pub fn parse_any(text: &str) -> Result<SimplicialComplex> {
    if text.trim_start().starts_with('{') {
        parse_structured(text)
    } else {
        parse_facet_list(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comments_and_blank_lines_are_skipped() {
        let k = parse_facet_list("# tetrahedron boundary\n1 2 3\n\n1 2 4\n1 3 4\n2 3 4\n").unwrap();
        assert_eq!(k.num_facets(), 4);
        assert_eq!(write_facet_list(&k), "1 2 3\n1 2 4\n1 3 4\n2 3 4\n");
    }

    #[test]
    fn bad_token_reports_line() {
        let err = parse_facet_list("1 2 3\n1 x 4\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn structured_round_trip() {
        let k = parse_facet_list("1 2\n2 3\n1 3\n").unwrap();
        let text = write_structured(&k);
        assert_eq!(parse_structured(&text).unwrap(), k);
        assert_eq!(write_structured(&parse_structured(&text).unwrap()), text);
    }
}
