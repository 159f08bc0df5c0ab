//! JSON reading and canonical writing of [`DiffeoSpec`] files.

use std::collections::HashSet;

use serde::de::{Deserialize, Deserializer, Error as _};
use thiserror::Error;

use crate::model::DiffeoSpec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

pub(crate) fn nonempty<'de, D, T>(d: D) -> Result<Vec<T>, D::Error>
where
    D: Deserializer<'de>,
    T: Deserialize<'de>,
{
    let items = Vec::<T>::deserialize(d)?;
    if items.is_empty() {
        return Err(D::Error::custom("list must be nonempty"));
    }
    Ok(items)
}

/// Parses a spec file. Syntax errors, unknown keys, empty lists and
/// duplicate ids are all rejected with the offending position.
pub fn parse_spec(text: &[u8]) -> Result<DiffeoSpec, ParseError> {
    let spec: DiffeoSpec = serde_json::from_slice(text).map_err(|e| ParseError {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    check_duplicate_ids(&spec, text)?;
    Ok(spec)
}

fn check_duplicate_ids(spec: &DiffeoSpec, text: &[u8]) -> Result<(), ParseError> {
    let ids = spec
        .basic_sets
        .iter()
        .map(|s| ("basic set", &s.id))
        .chain(
            spec.basic_sets
                .iter()
                .flat_map(|s| s.bunches.iter().map(|b| ("bunch", &b.id))),
        )
        .chain(
            spec.complement_components
                .iter()
                .map(|c| ("complement component", &c.id)),
        );

    let mut seen: [HashSet<&str>; 3] = Default::default();
    for (what, id) in ids {
        // bunch ids are global: components reference them by id alone
        let slot = match what {
            "basic set" => 0,
            "bunch" => 1,
            _ => 2,
        };
        if !seen[slot].insert(id.as_str()) {
            let (line, column) = locate_id(text, id, 2);
            return Err(ParseError {
                line,
                column,
                message: format!("duplicate {what} id {id:?}"),
            });
        }
    }
    Ok(())
}

/// Position of the `nth` occurrence of `"id": <value>` in the source text,
/// or (1, 1) when the value was written with escapes we do not reproduce.
fn locate_id(text: &[u8], id: &str, nth: usize) -> (usize, usize) {
    let value = serde_json::to_string(id).expect("string serializes");
    let key = b"\"id\"";
    let mut hits = 0;
    let mut i = 0;
    while i + key.len() <= text.len() {
        if &text[i..i + key.len()] == key {
            let mut j = i + key.len();
            while j < text.len() && (text[j].is_ascii_whitespace() || text[j] == b':') {
                j += 1;
            }
            if text[j..].starts_with(value.as_bytes()) {
                hits += 1;
                if hits == nth {
                    return line_col(text, j);
                }
            }
        }
        i += 1;
    }
    (1, 1)
}

fn line_col(text: &[u8], offset: usize) -> (usize, usize) {
    let before = &text[..offset];
    let line = before.iter().filter(|&&c| c == b'\n').count() + 1;
    let column = offset - before.iter().rposition(|&c| c == b'\n').map_or(0, |p| p + 1) + 1;
    (line, column)
}

/// Canonical form: keys in declaration order, every array sorted by id,
/// two-space indentation, LF line endings and a final newline.
pub fn serialize_spec(spec: &DiffeoSpec) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(&spec.canonicalized()).expect("spec serializes");
    out.push(b'\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const F2: &str = r#"{"basic_sets":[
  {"id":"A1","kind":"attractor","bunches":[{"id":"A1.b1","degree":2},{"id":"A1.b2","degree":2}]},
  {"id":"R1","kind":"repeller","bunches":[{"id":"R1.b1","degree":2},{"id":"R1.b2","degree":2}]}],
 "complement_components":[{"id":"V1","attractor_bunch":"A1.b1","repeller_bunch":"R1.b1"},
  {"id":"V2","attractor_bunch":"A1.b2","repeller_bunch":"R1.b2"}]}"#;

    #[test]
    fn parses_f2() {
        let spec = parse_spec(F2.as_bytes()).unwrap();
        assert_eq!(spec.basic_set_count(), 2);
        assert_eq!(spec.total_bunches(), 4);
    }

    #[test]
    fn empty_basic_sets_is_a_parse_error() {
        let err = parse_spec(br#"{"basic_sets":[],"complement_components":[]}"#).unwrap_err();
        assert!(err.message.contains("nonempty"), "{err}");
    }

    #[test]
    fn unknown_key_is_rejected_with_position() {
        let text = "{\"basic_sets\":[{\"id\":\"A1\",\"kind\":\"attractor\",\"bunches\":[{\"id\":\"x\",\"degree\":2}]}],\n\"extra\":1}";
        let err = parse_spec(text.as_bytes()).unwrap_err();
        assert_eq!(err.line, 2);
        assert!(err.message.contains("unknown field"), "{err}");
    }

    #[test]
    fn syntax_error_reports_line() {
        let err = parse_spec(b"{\n\n  \"basic_sets\": [,\n}").unwrap_err();
        assert_eq!(err.line, 3);
    }

    #[test]
    fn duplicate_id_is_located() {
        let text = F2.replace("\"id\":\"V2\"", "\"id\":\"V1\"");
        let err = parse_spec(text.as_bytes()).unwrap_err();
        assert!(err.message.contains("duplicate complement component id"), "{err}");
        assert_eq!(err.line, 5);
    }

    #[test]
    fn canonical_form_is_a_fixed_point() {
        let spec = parse_spec(F2.as_bytes()).unwrap();
        let once = serialize_spec(&spec);
        let twice = serialize_spec(&parse_spec(&once).unwrap());
        assert_eq!(once, twice);
        let text = String::from_utf8(once).unwrap();
        assert!(text.ends_with("}\n"));
        assert!(!text.contains('\r'));
        assert!(text.lines().all(|l| l == l.trim_end()));
    }

    #[test]
    fn serialization_sorts_by_id() {
        let mut spec = parse_spec(F2.as_bytes()).unwrap();
        spec.basic_sets.reverse();
        spec.complement_components.reverse();
        let text = String::from_utf8(serialize_spec(&spec)).unwrap();
        assert!(text.find("\"A1\"").unwrap() < text.find("\"R1\"").unwrap());
        assert!(text.find("\"V1\"").unwrap() < text.find("\"V2\"").unwrap());
    }
}
