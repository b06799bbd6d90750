//! Problem files: a signature, a template and an instance in one JSON object.
//!
//! ```text
//! {
//!   "instance": {
//!     "relations": {
//!       "R": [
//!         [0, 1]
//!       ]
//!     },
//!     "size": 2
//!   },
//!   "meta": {
//!     "origin": "c6"
//!   },
//!   "signature": [
//!     {"arity": 2, "name": "R"}
//!   ],
//!   "template": { ... }
//! }
//! ```
//!
//! Every signature relation must appear under both `relations` objects
//! (possibly with an empty list). Unknown fields are rejected. [`emit_problem`]
//! writes the canonical form: keys, relation names and tuples sorted.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::structure::{Signature, Structure};
use crate::templates;

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Meta {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub origin: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Problem {
    pub template: Structure,
    pub instance: Structure,
    pub meta: Option<Meta>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRelation {
    name: String,
    arity: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawStructure {
    size: usize,
    relations: BTreeMap<String, Vec<Vec<usize>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawProblem {
    signature: Vec<RawRelation>,
    template: RawStructure,
    instance: RawStructure,
    #[serde(default)]
    meta: Option<Meta>,
}

fn parse_error(path: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Parse {
        path: path.into(),
        message: message.into(),
    }
}

fn build_structure(label: &str, signature: &Signature, raw: RawStructure) -> Result<Structure> {
    let mut raw_relations = raw.relations;
    if let Some(extra) = raw_relations.keys().find(|k| signature.index_of(k).is_none()) {
        return Err(parse_error(
            format!("{label}.relations.{extra}"),
            "relation is not declared in the signature",
        ));
    }
    let mut tuples = Vec::with_capacity(signature.len());
    for rel in signature.relations() {
        let list = raw_relations.remove(&rel.name).ok_or_else(|| {
            parse_error(format!("{label}.relations.{}", rel.name), "missing relation")
        })?;
        let mut seen: HashMap<&[usize], usize> = HashMap::with_capacity(list.len());
        for (t, tuple) in list.iter().enumerate() {
            let path = format!("{label}.relations.{}[{t}]", rel.name);
            if tuple.len() != rel.arity {
                return Err(parse_error(
                    path,
                    format!("has {} entries, expected arity {}", tuple.len(), rel.arity),
                ));
            }
            if let Some(pos) = tuple.iter().position(|&e| e >= raw.size) {
                return Err(parse_error(
                    format!("{path}[{pos}]"),
                    format!("{} out of range (size {})", tuple[pos], raw.size),
                ));
            }
            if let Some(first) = seen.insert(tuple.as_slice(), t) {
                return Err(parse_error(path, format!("duplicates {}[{first}]", rel.name)));
            }
        }
        tuples.push(list);
    }
    Structure::new(signature.clone(), raw.size, tuples)
        .map_err(|e| parse_error(label, e.to_string()))
}

/// Parses and validates a problem file.
pub fn parse_problem(text: &str) -> Result<Problem> {
    let raw: RawProblem = serde_json::from_str(text).map_err(|e| {
        parse_error(
            format!("line {} column {}", e.line(), e.column()),
            e.to_string(),
        )
    })?;
    for (i, rel) in raw.signature.iter().enumerate() {
        if rel.name.is_empty() {
            return Err(parse_error(format!("signature[{i}].name"), "empty name"));
        }
        if rel.arity == 0 {
            return Err(parse_error(format!("signature[{i}].arity"), "arity must be positive"));
        }
        if raw.signature[..i].iter().any(|r| r.name == rel.name) {
            return Err(parse_error(
                format!("signature[{i}].name"),
                format!("duplicate relation `{}`", rel.name),
            ));
        }
    }
    let signature = Signature::new(raw.signature.into_iter().map(|r| (r.name, r.arity)))
        .map_err(|e| parse_error("signature", e.to_string()))?;
    if raw.template.size == 0 {
        return Err(parse_error("template.size", "template domain must be nonempty"));
    }
    let template = build_structure("template", &signature, raw.template)?;
    let instance = build_structure("instance", &signature, raw.instance)?;
    Ok(Problem {
        template,
        instance,
        meta: raw.meta,
    })
}

fn json_string(s: &str) -> String {
    serde_json::to_string(s).expect("strings serialize")
}

fn emit_structure(out: &mut String, structure: &Structure, order: &[usize]) {
    out.push_str("{\n    \"relations\": {");
    for (i, &rel) in order.iter().enumerate() {
        out.push_str(if i == 0 { "\n" } else { ",\n" });
        let name = structure.signature().name(rel);
        let mut tuples = structure.tuples(rel).to_vec();
        tuples.sort();
        let _ = write!(out, "      {}: [", json_string(name));
        for (j, t) in tuples.iter().enumerate() {
            out.push_str(if j == 0 { "\n" } else { ",\n" });
            let entries: Vec<String> = t.iter().map(usize::to_string).collect();
            let _ = write!(out, "        [{}]", entries.join(", "));
        }
        if !tuples.is_empty() {
            out.push_str("\n      ");
        }
        out.push(']');
    }
    let _ = write!(out, "\n    }},\n    \"size\": {}\n  }}", structure.size());
}

/// Canonical text of a problem; `parse_problem` of the result gives back an
/// equal problem up to relation and tuple order.
pub fn emit_problem(problem: &Problem) -> String {
    let sig = problem.template.signature();
    let mut order: Vec<usize> = (0..sig.len()).collect();
    order.sort_by(|&a, &b| sig.name(a).cmp(sig.name(b)));

    let mut out = String::from("{\n  \"instance\": ");
    emit_structure(&mut out, &problem.instance, &order);
    if let Some(meta) = &problem.meta {
        out.push_str(",\n  \"meta\": {");
        let fields: Vec<String> = [("description", &meta.description), ("origin", &meta.origin)]
            .into_iter()
            .filter_map(|(k, v)| v.as_ref().map(|v| format!("\n    \"{k}\": {}", json_string(v))))
            .collect();
        out.push_str(&fields.join(","));
        out.push_str(if fields.is_empty() { "}" } else { "\n  }" });
    }
    out.push_str(",\n  \"signature\": [");
    for (i, &rel) in order.iter().enumerate() {
        out.push_str(if i == 0 { "\n" } else { ",\n" });
        let _ = write!(
            out,
            "    {{\"arity\": {}, \"name\": {}}}",
            sig.arity(rel),
            json_string(sig.name(rel))
        );
    }
    out.push_str("\n  ],\n  \"template\": ");
    emit_structure(&mut out, &problem.template, &order);
    out.push_str("\n}\n");
    out
}

/// The named gallery template together with its demonstration instance.
pub fn gallery_problem(name: &str) -> Result<Problem> {
    let template = templates::by_name(name)?;
    let instance = templates::gallery_instance(name)?;
    let description = match name {
        "c6" => "6-cycle template; instance is the template itself".to_string(),
        "c4ref" => "reflexive 4-cycle; instance is the template itself".to_string(),
        "no-rainbow" => "no-rainbow colouring; instance is a single triple".to_string(),
        "asym-cut" => "asymmetric cut (equality and disjunction); instance is an equality triangle".to_string(),
        "hard-ptas" => "0-valid ternary template with an NP-hard surjective decision problem; instance is the template itself".to_string(),
        _ => format!("{name} template; instance is the template itself"),
    };
    Ok(Problem {
        template,
        instance,
        meta: Some(Meta {
            description: Some(description),
            origin: Some(name.to_string()),
        }),
    })
}

/// Replaces the instance by its padding with `|B|` isolated elements.
pub fn pad_problem(problem: &Problem) -> Result<Problem> {
    let instance = crate::approx::pad_instance(&problem.instance, &problem.template)?;
    Ok(Problem {
        template: problem.template.clone(),
        instance,
        meta: problem.meta.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str = r#"{
  "instance": {
    "relations": {
      "R": [
        [0, 1]
      ]
    },
    "size": 2
  },
  "signature": [
    {"arity": 2, "name": "R"}
  ],
  "template": {
    "relations": {
      "R": [
        [0, 1],
        [1, 0]
      ]
    },
    "size": 2
  }
}
"#;

    #[test]
    fn canonical_text_is_stable() {
        let p = parse_problem(SMALL).unwrap();
        assert_eq!(emit_problem(&p), SMALL);
        assert_eq!(p.meta, None);
    }

    #[test]
    fn gallery_round_trip() {
        for name in templates::GALLERY_NAMES {
            let p = gallery_problem(name).unwrap();
            let text = emit_problem(&p);
            let back = parse_problem(&text).unwrap();
            assert_eq!(back, p, "{name}");
            assert_eq!(emit_problem(&back), text);
        }
    }

    fn expect_error(text: &str, path: &str) {
        match parse_problem(text) {
            Err(Error::Parse { path: p, message }) => assert_eq!(p, path, "{message}"),
            other => panic!("expected parse error at {path}, got {other:?}"),
        }
    }

    #[test]
    fn range_error_names_the_path() {
        let text = SMALL.replace("[0, 1]\n      ]\n    },\n    \"size\": 2\n  },\n  \"signature\"", "[0, 2]\n      ]\n    },\n    \"size\": 2\n  },\n  \"signature\"");
        expect_error(&text, "instance.relations.R[0][1]");
    }

    #[test]
    fn structural_errors() {
        let missing = r#"{"signature": [{"name": "R", "arity": 2}],
            "template": {"size": 2, "relations": {"R": []}},
            "instance": {"size": 2, "relations": {}}}"#;
        expect_error(missing, "instance.relations.R");

        let extra = r#"{"signature": [{"name": "R", "arity": 2}],
            "template": {"size": 2, "relations": {"R": [], "S": []}},
            "instance": {"size": 2, "relations": {"R": []}}}"#;
        expect_error(extra, "template.relations.S");

        let arity = r#"{"signature": [{"name": "R", "arity": 2}],
            "template": {"size": 2, "relations": {"R": [[0]]}},
            "instance": {"size": 2, "relations": {"R": []}}}"#;
        expect_error(arity, "template.relations.R[0]");

        let dup = r#"{"signature": [{"name": "R", "arity": 2}],
            "template": {"size": 2, "relations": {"R": []}},
            "instance": {"size": 2, "relations": {"R": [[0, 1], [1, 1], [0, 1]]}}}"#;
        expect_error(dup, "instance.relations.R[2]");

        let dup_sig = r#"{"signature": [{"name": "R", "arity": 2}, {"name": "R", "arity": 1}],
            "template": {"size": 2, "relations": {"R": []}},
            "instance": {"size": 2, "relations": {"R": []}}}"#;
        expect_error(dup_sig, "signature[1].name");

        let empty_template = r#"{"signature": [{"name": "R", "arity": 2}],
            "template": {"size": 0, "relations": {"R": []}},
            "instance": {"size": 2, "relations": {"R": []}}}"#;
        expect_error(empty_template, "template.size");
    }

    #[test]
    fn unknown_fields_and_syntax() {
        let unknown = r#"{"signature": [{"name": "R", "arity": 2}],
            "template": {"size": 2, "relations": {"R": []}},
            "instance": {"size": 2, "relations": {"R": []}}, "weights": []}"#;
        assert!(matches!(parse_problem(unknown), Err(Error::Parse { .. })));
        assert!(matches!(parse_problem("{"), Err(Error::Parse { .. })));
        let negative = SMALL.replace("[0, 1]\n      ]\n    },\n    \"size\": 2\n  },\n  \"signature\"", "[0, -1]\n      ]\n    },\n    \"size\": 2\n  },\n  \"signature\"");
        assert!(matches!(parse_problem(&negative), Err(Error::Parse { .. })));
    }

    #[test]
    fn meta_round_trips() {
        let mut p = parse_problem(SMALL).unwrap();
        p.meta = Some(Meta::default());
        let text = emit_problem(&p);
        assert!(text.contains("\"meta\": {}"));
        assert_eq!(parse_problem(&text).unwrap(), p);
        p.meta = Some(Meta {
            description: Some("quote \" and newline \n".into()),
            origin: None,
        });
        assert_eq!(parse_problem(&emit_problem(&p)).unwrap(), p);
    }

    #[test]
    fn padding_keeps_tuples() {
        let p = gallery_problem("asym-cut").unwrap();
        let padded = pad_problem(&p).unwrap();
        assert_eq!(padded.instance.size(), 5);
        assert_eq!(padded.instance.tuples(0), p.instance.tuples(0));
    }
}
