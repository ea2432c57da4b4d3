//! Canonical JSON for library objects. Object keys come out sorted, so equal
//! inputs print byte-identically.

use std::collections::BTreeMap;

use canrel_core::sabot::RelationFamily;
use canrel_core::{
    CanonicalRelation, Field, Matrix, NerveTuple, Poly, RatFunc, Rationals, Subspace, SymplecticSpace, WWSequence,
};
use serde_json::{json, Map, Value};

use crate::document::Document;

pub fn to_text(v: &Value) -> String {
    let mut s = serde_json::to_string(v).expect("values serialize");
    s.push('\n');
    s
}

pub fn scalar<F: Field>(field: &F, x: &F::Elem) -> Value {
    Value::String(field.format_elem(x))
}

pub fn rows<F: Field>(field: &F, rows: &[Vec<F::Elem>]) -> Value {
    Value::Array(
        rows.iter()
            .map(|r| Value::Array(r.iter().map(|x| scalar(field, x)).collect()))
            .collect(),
    )
}

pub fn space_def<F: Field>(s: &SymplecticSpace<F>) -> Value {
    if *s == SymplecticSpace::standard(s.field(), s.half_dim()) {
        json!({ "n": s.half_dim() })
    } else {
        json!({ "dim": s.dim(), "form": rows(s.field(), &s.form().row_vecs()) })
    }
}

/// First name under which the document holds `value`, if any.
fn name_of<'a, T: PartialEq>(map: &'a BTreeMap<String, T>, value: &T) -> Option<&'a str> {
    map.iter().find(|(_, v)| *v == value).map(|(k, _)| k.as_str())
}

pub fn space_ref<F: Field>(doc: &Document<F>, s: &SymplecticSpace<F>) -> Value {
    match name_of(&doc.spaces, s) {
        Some(name) => Value::String(name.to_string()),
        None => space_def(s),
    }
}

pub fn subspace_value<F: Field>(s: &Subspace<F>) -> Value {
    json!({ "dim": s.dim(), "basis": rows(s.field(), s.basis()) })
}

pub fn subspace_def<F: Field>(doc: &Document<F>, space: &SymplecticSpace<F>, s: &Subspace<F>) -> Value {
    json!({ "space": space_ref(doc, space), "basis": rows(s.field(), s.basis()) })
}

pub fn matrix_def<F: Field>(m: &Matrix<F>) -> Value {
    json!({ "rows": m.rows(), "cols": m.cols(), "entries": rows(m.field(), &m.row_vecs()) })
}

pub fn relation_def<F: Field>(doc: &Document<F>, r: &CanonicalRelation<F>) -> Value {
    json!({
        "target": space_ref(doc, r.target()),
        "source": space_ref(doc, r.source()),
        "basis": rows(r.field(), r.graph().basis()),
    })
}

pub fn relation_ref<F: Field>(doc: &Document<F>, r: &CanonicalRelation<F>) -> Value {
    match name_of(&doc.relations, r) {
        Some(name) => Value::String(name.to_string()),
        None => relation_def(doc, r),
    }
}

pub fn sequence_def<F: Field>(doc: &Document<F>, s: &WWSequence<F>) -> Value {
    let entries: Vec<Value> = s.entries().iter().map(|r| relation_ref(doc, r)).collect();
    if entries.is_empty() {
        json!({ "object": space_ref(doc, s.target()), "entries": [] })
    } else {
        Value::Array(entries)
    }
}

pub fn tuple_def<F: Field>(doc: &Document<F>, t: &NerveTuple<F>) -> Value {
    json!({
        "space": space_ref(doc, t.space()),
        "entries": t.entries().iter().map(|r| relation_ref(doc, r)).collect::<Vec<_>>(),
    })
}

fn poly(p: &Poly) -> Value {
    Value::Array(p.coeffs().iter().map(|c| Value::String(c.to_string())).collect())
}

pub fn ratfunc(x: &RatFunc) -> Value {
    if x.denom().degree() == Some(0) && x.numer().degree().unwrap_or(0) == 0 {
        Value::String(x.numer().constant_term().to_string())
    } else {
        json!({ "num": poly(x.numer()), "den": poly(x.denom()) })
    }
}

pub fn family_def(doc: &Document<Rationals>, f: &RelationFamily) -> Value {
    let basis: Vec<Value> = f
        .graph()
        .columns()
        .iter()
        .map(|c| Value::Array(c.iter().map(ratfunc).collect()))
        .collect();
    json!({
        "target": space_ref(doc, f.target()),
        "source": space_ref(doc, f.source()),
        "basis": basis,
    })
}

pub fn field_def<F: Field>(field: &F) -> Value {
    match field.characteristic() {
        0 => json!({ "kind": "rational" }),
        p => json!({ "kind": "prime", "p": p }),
    }
}

/// The normalized document: canonical bases, references by name wherever
/// an equal named object exists, empty sections omitted.
pub fn document<F: Field>(doc: &Document<F>) -> Map<String, Value> {
    let mut top = Map::new();
    top.insert("field".to_string(), field_def(&doc.field));
    let mut put = |key: &str, section: Map<String, Value>| {
        if !section.is_empty() {
            top.insert(key.to_string(), Value::Object(section));
        }
    };
    put("spaces", doc.spaces.iter().map(|(k, s)| (k.clone(), space_def(s))).collect());
    put("matrices", doc.matrices.iter().map(|(k, m)| (k.clone(), matrix_def(m))).collect());
    put(
        "subspaces",
        doc.subspaces
            .iter()
            .map(|(k, (sp, s))| (k.clone(), subspace_def(doc, sp, s)))
            .collect(),
    );
    put(
        "relations",
        doc.relations.iter().map(|(k, r)| (k.clone(), relation_def(doc, r))).collect(),
    );
    put(
        "sequences",
        doc.sequences.iter().map(|(k, s)| (k.clone(), sequence_def(doc, s))).collect(),
    );
    put("tuples", doc.tuples.iter().map(|(k, t)| (k.clone(), tuple_def(doc, t))).collect());
    top
}

pub fn rational_document(doc: &Document<Rationals>, families: &BTreeMap<String, RelationFamily>) -> Map<String, Value> {
    let mut top = document(doc);
    if !families.is_empty() {
        let section = families.iter().map(|(k, f)| (k.clone(), family_def(doc, f))).collect();
        top.insert("families".to_string(), Value::Object(section));
    }
    top
}
