//! Canonical JSON form of a quiver document.
//!
//! Keys are written in a fixed order (`vertices`, `arrows`, `alpha`,
//! `lambda`; per-vertex maps in vertex order). Reading is key-order
//! insensitive. Weights are `"p/q"` strings.

use num_rational::BigRational;
use num_traits::Zero;
use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;
use serde_json::Value;

use super::{format_rational, parse_rational, DimVector, ParseError, Quiver, QuiverDocument, QuiverError, Weights};

#[derive(Serialize)]
struct ArrowOut<'a> {
    id: &'a str,
    tail: &'a str,
    head: &'a str,
}

struct VertexMap<'a, T> {
    names: &'a [String],
    values: Vec<T>,
}

impl<T: Serialize> Serialize for VertexMap<'_, T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.names.len()))?;
        for (k, v) in self.names.iter().zip(&self.values) {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

#[derive(Serialize)]
struct DocumentOut<'a> {
    vertices: &'a [String],
    arrows: Vec<ArrowOut<'a>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    alpha: Option<VertexMap<'a, u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    lambda: Option<VertexMap<'a, String>>,
}

/// Canonical JSON text for a quiver with optional dimension vector and weights.
pub fn serialize(q: &Quiver, alpha: Option<&DimVector>, lambda: Option<&Weights>) -> Result<String, QuiverError> {
    Ok(serde_json::to_string_pretty(&document_to_json(q, alpha, lambda)?)
        .expect("JSON encoding of plain data cannot fail"))
}

/// Same as [`serialize`] but returns the JSON value.
pub fn document_to_json(q: &Quiver, alpha: Option<&DimVector>, lambda: Option<&Weights>) -> Result<Value, QuiverError> {
    if let Some(a) = alpha {
        a.check_len(q.vertex_count())?;
    }
    if let Some(l) = lambda {
        l.check_len(q.vertex_count())?;
    }
    let names = q.vertices();
    let doc = DocumentOut {
        vertices: names,
        arrows: q
            .arrows()
            .iter()
            .map(|a| ArrowOut {
                id: &a.id,
                tail: &names[a.tail],
                head: &names[a.head],
            })
            .collect(),
        alpha: alpha.map(|a| VertexMap {
            names,
            values: a.0.clone(),
        }),
        lambda: lambda.map(|l| VertexMap {
            names,
            values: l.0.iter().map(format_rational).collect(),
        }),
    };
    Ok(serde_json::to_value(&doc).expect("JSON encoding of plain data cannot fail"))
}

fn json_err(msg: impl Into<String>) -> ParseError {
    ParseError::Json(msg.into())
}

/// Reads a document from JSON text.
pub fn document_from_json(src: &str) -> Result<QuiverDocument, ParseError> {
    let value: Value = serde_json::from_str(src).map_err(|e| json_err(e.to_string()))?;
    let obj = value
        .as_object()
        .ok_or_else(|| json_err("top level must be an object"))?;
    for key in obj.keys() {
        if !matches!(key.as_str(), "vertices" | "arrows" | "alpha" | "lambda") {
            return Err(json_err(format!("unexpected key {key:?}")));
        }
    }
    let vertices = obj
        .get("vertices")
        .and_then(Value::as_array)
        .ok_or_else(|| json_err("missing \"vertices\" array"))?
        .iter()
        .map(|v| {
            v.as_str()
                .map(str::to_string)
                .ok_or_else(|| json_err("vertex ids must be strings"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if vertices.is_empty() {
        return Err(json_err("a quiver needs at least one vertex"));
    }
    let arrows = match obj.get("arrows") {
        None => Vec::new(),
        Some(v) => v
            .as_array()
            .ok_or_else(|| json_err("\"arrows\" must be an array"))?
            .iter()
            .map(|a| {
                let field = |k: &str| {
                    a.get(k)
                        .and_then(Value::as_str)
                        .map(str::to_string)
                        .ok_or_else(|| json_err(format!("arrow is missing string field {k:?}")))
                };
                Ok((field("id")?, field("tail")?, field("head")?))
            })
            .collect::<Result<Vec<_>, ParseError>>()?,
    };
    let quiver = Quiver::new(vertices, arrows)?;

    let alpha = match obj.get("alpha") {
        None => None,
        Some(v) => {
            let mut out = vec![0u64; quiver.vertex_count()];
            for (i, value) in vertex_entries(&quiver, v, "alpha")? {
                out[i] = value
                    .as_u64()
                    .ok_or_else(|| json_err(format!("alpha entry {value} is not a nonnegative integer")))?;
            }
            Some(DimVector(out))
        }
    };
    let lambda = match obj.get("lambda") {
        None => None,
        Some(v) => {
            let mut out = vec![BigRational::zero(); quiver.vertex_count()];
            for (i, value) in vertex_entries(&quiver, v, "lambda")? {
                let parsed = match value {
                    Value::String(s) => parse_rational(s),
                    Value::Number(n) if n.is_i64() => parse_rational(&n.to_string()),
                    _ => None,
                };
                out[i] = parsed.ok_or_else(|| json_err(format!("lambda entry {value} is not a rational")))?;
            }
            Some(Weights(out))
        }
    };
    Ok(QuiverDocument { quiver, alpha, lambda })
}

fn vertex_entries<'a>(quiver: &Quiver, v: &'a Value, what: &str) -> Result<Vec<(usize, &'a Value)>, ParseError> {
    let map = v
        .as_object()
        .ok_or_else(|| json_err(format!("{what:?} must be an object")))?;
    map.iter()
        .map(|(k, value)| {
            quiver
                .vertex_index(k)
                .map(|i| (i, value))
                .ok_or_else(|| json_err(format!("unknown vertex {k} in {what}")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cm() -> Quiver {
        Quiver::new(["v0", "vinf"], [("x", "v0", "v0"), ("v", "vinf", "v0")]).unwrap()
    }

    #[test]
    fn calogero_moser_round_trip() {
        let q = cm();
        let a = DimVector(vec![2, 1]);
        let l = Weights::from_integers(&[1, -2]);
        let text = serialize(&q, Some(&a), Some(&l)).unwrap();
        let doc = document_from_json(&text).unwrap();
        assert_eq!(doc.quiver, q);
        assert_eq!(doc.alpha, Some(a));
        assert_eq!(doc.lambda, Some(l));
    }

    #[test]
    fn key_order_is_irrelevant() {
        let text = r#"{"lambda":{"vinf":"-2","v0":"1"},"alpha":{"vinf":1,"v0":2},
            "arrows":[{"head":"v0","tail":"v0","id":"x"},{"tail":"vinf","id":"v","head":"v0"}],
            "vertices":["v0","vinf"]}"#;
        let doc = document_from_json(text).unwrap();
        assert_eq!(doc.quiver, cm());
        assert_eq!(doc.alpha, Some(DimVector(vec![2, 1])));
        assert_eq!(doc.lambda, Some(Weights::from_integers(&[1, -2])));
    }

    #[test]
    fn canonical_key_order() {
        let text = serialize(&cm(), Some(&DimVector(vec![2, 1])), None).unwrap();
        let v = text.find("\"vertices\"").unwrap();
        let a = text.find("\"arrows\"").unwrap();
        let al = text.find("\"alpha\"").unwrap();
        assert!(v < a && a < al);
    }

    #[test]
    fn wrong_alpha_length() {
        assert_eq!(
            serialize(&cm(), Some(&DimVector(vec![1])), None),
            Err(QuiverError::DimensionMismatch { expected: 2, found: 1 })
        );
        assert!(serialize(&cm(), None, Some(&Weights::zero(3))).is_err());
    }

    #[test]
    fn rejects_bad_documents() {
        assert!(document_from_json("[]").is_err());
        assert!(document_from_json(r#"{"vertices":["u"],"arrows":[{"id":"a","tail":"u","head":"w"}]}"#).is_err());
        assert!(document_from_json(r#"{"vertices":["u"],"alpha":{"u":-1}}"#).is_err());
        assert!(document_from_json(r#"{"vertices":["u"],"lambda":{"u":"1/0"}}"#).is_err());
        assert!(document_from_json(r#"{"vertices":["u"],"extra":1}"#).is_err());
    }

    fn arb_document() -> impl Strategy<Value = QuiverDocument> {
        (1usize..=5)
            .prop_flat_map(|k| {
                (
                    Just(k),
                    prop::collection::vec((0..k, 0..k), 0..=8),
                    prop::collection::vec(0u64..5, k),
                    prop::collection::vec((-9i64..10, 1i64..5), k),
                    any::<bool>(),
                )
            })
            .prop_map(|(k, arrows, alpha, lambda, with_blocks)| {
                let quiver = Quiver::from_indices(k, &arrows);
                let lambda = Weights(
                    lambda
                        .into_iter()
                        .map(|(p, q)| BigRational::new(p.into(), q.into()))
                        .collect(),
                );
                QuiverDocument {
                    quiver,
                    alpha: with_blocks.then_some(DimVector(alpha)),
                    lambda: with_blocks.then_some(lambda),
                }
            })
    }

    proptest! {
        #[test]
        fn parse_serialize_identity(doc in arb_document()) {
            let text = serialize(&doc.quiver, doc.alpha.as_ref(), doc.lambda.as_ref()).unwrap();
            prop_assert_eq!(document_from_json(&text).unwrap(), doc.clone());
            // serialization is deterministic
            let again = serialize(&doc.quiver, doc.alpha.as_ref(), doc.lambda.as_ref()).unwrap();
            prop_assert_eq!(text, again);
        }
    }
}
