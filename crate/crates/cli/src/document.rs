//! JSON documents: one field, named spaces and named objects over them.

use std::collections::BTreeMap;

use canrel_core::field::parse_rational;
use canrel_core::sabot::RelationFamily;
use canrel_core::{
    CanonicalRelation, Error as CoreError, Field, Matrix, NerveTuple, ParametricSubspace, Poly, PrimeField, RatFunc,
    Rationals, Subspace, SymplecticSpace, WWSequence,
};
use num_rational::BigRational;
use serde_json::{Map, Value};

use crate::error::CliError;

#[derive(Clone, Debug)]
pub struct Document<F: Field> {
    pub field: F,
    pub spaces: BTreeMap<String, SymplecticSpace<F>>,
    pub matrices: BTreeMap<String, Matrix<F>>,
    /// Each subspace remembers the space it lives in.
    pub subspaces: BTreeMap<String, (SymplecticSpace<F>, Subspace<F>)>,
    pub relations: BTreeMap<String, CanonicalRelation<F>>,
    pub sequences: BTreeMap<String, WWSequence<F>>,
    pub tuples: BTreeMap<String, NerveTuple<F>>,
}

#[derive(Clone, Debug)]
pub enum AnyDocument {
    Rational {
        doc: Document<Rationals>,
        families: BTreeMap<String, RelationFamily>,
    },
    Prime {
        doc: Document<PrimeField>,
    },
}

impl<F: Field> Document<F> {
    pub fn new(field: F) -> Self {
        Document {
            field,
            spaces: BTreeMap::new(),
            matrices: BTreeMap::new(),
            subspaces: BTreeMap::new(),
            relations: BTreeMap::new(),
            sequences: BTreeMap::new(),
            tuples: BTreeMap::new(),
        }
    }

    pub fn has_name(&self, name: &str) -> bool {
        self.spaces.contains_key(name)
            || self.matrices.contains_key(name)
            || self.subspaces.contains_key(name)
            || self.relations.contains_key(name)
            || self.sequences.contains_key(name)
            || self.tuples.contains_key(name)
    }

    pub fn space(&self, name: &str) -> Result<&SymplecticSpace<F>, CliError> {
        lookup(&self.spaces, "space", name)
    }

    pub fn matrix(&self, name: &str) -> Result<&Matrix<F>, CliError> {
        lookup(&self.matrices, "matrix", name)
    }

    pub fn subspace(&self, name: &str) -> Result<&(SymplecticSpace<F>, Subspace<F>), CliError> {
        lookup(&self.subspaces, "subspace", name)
    }

    pub fn relation(&self, name: &str) -> Result<&CanonicalRelation<F>, CliError> {
        lookup(&self.relations, "relation", name)
    }

    pub fn sequence(&self, name: &str) -> Result<&WWSequence<F>, CliError> {
        lookup(&self.sequences, "sequence", name)
    }

    pub fn tuple(&self, name: &str) -> Result<&NerveTuple<F>, CliError> {
        lookup(&self.tuples, "tuple", name)
    }
}

fn lookup<'a, T>(map: &'a BTreeMap<String, T>, kind: &str, name: &str) -> Result<&'a T, CliError> {
    map.get(name)
        .ok_or_else(|| CliError::Reference(format!("unknown {kind} '{name}'")))
}

const TOP_LEVEL: [&str; 8] = [
    "field",
    "spaces",
    "matrices",
    "subspaces",
    "relations",
    "sequences",
    "tuples",
    "families",
];

pub fn parse_document(text: &str) -> Result<AnyDocument, CliError> {
    let value: Value = serde_json::from_str(text).map_err(|e| CliError::Syntax(e.to_string()))?;
    let top = as_object(&value, "document")?;
    check_keys(top, &TOP_LEVEL, &["field"], "document")?;
    let field = as_object(&top["field"], "field")?;
    let kind = field.get("kind").and_then(Value::as_str);
    match kind {
        Some("rational") => {
            check_keys(field, &["kind"], &["kind"], "field")?;
            let doc = parse_objects(Rationals, top)?;
            let families = match top.get("families") {
                Some(v) => parse_families(&doc, v)?,
                None => BTreeMap::new(),
            };
            Ok(AnyDocument::Rational { doc, families })
        }
        Some("prime") => {
            check_keys(field, &["kind", "p"], &["kind", "p"], "field")?;
            let p = field["p"]
                .as_u64()
                .ok_or_else(|| CliError::Schema("field.p: expected a positive integer".to_string()))?;
            let f = PrimeField::new(p).map_err(|e| CliError::Schema(format!("field.p: {e}")))?;
            if top.contains_key("families") {
                return Err(CliError::Schema("families: only available over the rationals".to_string()));
            }
            Ok(AnyDocument::Prime {
                doc: parse_objects(f, top)?,
            })
        }
        _ => Err(CliError::Schema(
            "field.kind: expected \"rational\" or \"prime\"".to_string(),
        )),
    }
}

fn parse_objects<F: Field>(field: F, top: &Map<String, Value>) -> Result<Document<F>, CliError> {
    let mut doc = Document::new(field);
    for (name, v) in section(top, "spaces")? {
        let s = parse_space(&doc.field, v, &format!("spaces.{name}"))?;
        doc.spaces.insert(name.clone(), s);
    }
    for (name, v) in section(top, "matrices")? {
        let m = parse_matrix(&doc.field, v, &format!("matrices.{name}"))?;
        doc.matrices.insert(name.clone(), m);
    }
    for (name, v) in section(top, "subspaces")? {
        let s = parse_subspace(&doc, v, &format!("subspaces.{name}"))?;
        doc.subspaces.insert(name.clone(), s);
    }
    for (name, v) in section(top, "relations")? {
        let r = parse_relation(&doc, v, &format!("relations.{name}"))?;
        doc.relations.insert(name.clone(), r);
    }
    for (name, v) in section(top, "sequences")? {
        let s = parse_sequence(&doc, v, &format!("sequences.{name}"))?;
        doc.sequences.insert(name.clone(), s);
    }
    for (name, v) in section(top, "tuples")? {
        let t = parse_tuple(&doc, v, &format!("tuples.{name}"))?;
        doc.tuples.insert(name.clone(), t);
    }
    Ok(doc)
}

fn section<'a>(top: &'a Map<String, Value>, key: &str) -> Result<Vec<(&'a String, &'a Value)>, CliError> {
    match top.get(key) {
        None => Ok(Vec::new()),
        Some(v) => Ok(as_object(v, key)?.iter().collect()),
    }
}

fn as_object<'a>(v: &'a Value, ctx: &str) -> Result<&'a Map<String, Value>, CliError> {
    v.as_object()
        .ok_or_else(|| CliError::Schema(format!("{ctx}: expected an object")))
}

fn as_array<'a>(v: &'a Value, ctx: &str) -> Result<&'a Vec<Value>, CliError> {
    v.as_array()
        .ok_or_else(|| CliError::Schema(format!("{ctx}: expected an array")))
}

fn as_usize(v: &Value, ctx: &str) -> Result<usize, CliError> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| CliError::Schema(format!("{ctx}: expected a nonnegative integer")))
}

fn check_keys(obj: &Map<String, Value>, allowed: &[&str], required: &[&str], ctx: &str) -> Result<(), CliError> {
    if let Some(k) = obj.keys().find(|k| !allowed.contains(&k.as_str())) {
        return Err(CliError::Schema(format!("{ctx}: unknown key '{k}'")));
    }
    if let Some(k) = required.iter().find(|k| !obj.contains_key(**k)) {
        return Err(CliError::Schema(format!("{ctx}: missing key '{k}'")));
    }
    Ok(())
}

/// Decimal integer or `a/b`, given as a JSON string (integers are also
/// accepted as JSON numbers).
pub fn parse_ratio(v: &Value, ctx: &str) -> Result<BigRational, CliError> {
    let text = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string(),
        _ => return Err(CliError::Schema(format!("{ctx}: expected a scalar such as \"3\" or \"-1/2\""))),
    };
    parse_rational(&text).ok_or_else(|| CliError::Schema(format!("{ctx}: '{text}' is not an exact scalar")))
}

fn parse_scalar<F: Field>(field: &F, v: &Value, ctx: &str) -> Result<F::Elem, CliError> {
    let q = parse_ratio(v, ctx)?;
    field
        .from_ratio(&q)
        .ok_or_else(|| CliError::Schema(format!("{ctx}: denominator of {q} vanishes in the field")))
}

fn parse_rows<F: Field>(field: &F, v: &Value, width: usize, ctx: &str) -> Result<Vec<Vec<F::Elem>>, CliError> {
    as_array(v, ctx)?
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let row_ctx = format!("{ctx}[{i}]");
            let entries = as_array(row, &row_ctx)?;
            if entries.len() != width {
                return Err(CliError::Schema(format!(
                    "{row_ctx}: has length {}, expected {width}",
                    entries.len()
                )));
            }
            entries
                .iter()
                .enumerate()
                .map(|(j, x)| parse_scalar(field, x, &format!("{row_ctx}[{j}]")))
                .collect()
        })
        .collect()
}

pub fn parse_space<F: Field>(field: &F, v: &Value, ctx: &str) -> Result<SymplecticSpace<F>, CliError> {
    let obj = as_object(v, ctx)?;
    if obj.contains_key("n") {
        check_keys(obj, &["n"], &["n"], ctx)?;
        return Ok(SymplecticSpace::standard(field, as_usize(&obj["n"], &format!("{ctx}.n"))?));
    }
    check_keys(obj, &["dim", "form"], &["dim", "form"], ctx)?;
    let dim = as_usize(&obj["dim"], &format!("{ctx}.dim"))?;
    let rows = parse_rows(field, &obj["form"], dim, &format!("{ctx}.form"))?;
    if rows.len() != dim {
        return Err(CliError::Schema(format!("{ctx}.form: expected {dim} rows")));
    }
    let form = Matrix::from_rows(field, dim, rows).map_err(|e| CliError::math(ctx, e))?;
    SymplecticSpace::from_form(form).map_err(|e| CliError::math(ctx, e))
}

fn parse_space_ref<F: Field>(doc: &Document<F>, v: &Value, ctx: &str) -> Result<SymplecticSpace<F>, CliError> {
    match v {
        Value::String(name) => doc
            .space(name)
            .cloned()
            .map_err(|e| CliError::Reference(format!("{ctx}: {e}"))),
        _ => parse_space(&doc.field, v, ctx),
    }
}

fn parse_matrix<F: Field>(field: &F, v: &Value, ctx: &str) -> Result<Matrix<F>, CliError> {
    let obj = as_object(v, ctx)?;
    check_keys(obj, &["rows", "cols", "entries"], &["rows", "cols", "entries"], ctx)?;
    let rows = as_usize(&obj["rows"], &format!("{ctx}.rows"))?;
    let cols = as_usize(&obj["cols"], &format!("{ctx}.cols"))?;
    let entries = parse_rows(field, &obj["entries"], cols, &format!("{ctx}.entries"))?;
    if entries.len() != rows {
        return Err(CliError::Schema(format!(
            "{ctx}.entries: has {} rows, expected {rows}",
            entries.len()
        )));
    }
    Matrix::from_rows(field, cols, entries).map_err(|e| CliError::math(ctx, e))
}

fn parse_subspace<F: Field>(
    doc: &Document<F>,
    v: &Value,
    ctx: &str,
) -> Result<(SymplecticSpace<F>, Subspace<F>), CliError> {
    let obj = as_object(v, ctx)?;
    check_keys(obj, &["space", "basis"], &["space", "basis"], ctx)?;
    let space = parse_space_ref(doc, &obj["space"], &format!("{ctx}.space"))?;
    let rows = parse_rows(&doc.field, &obj["basis"], space.dim(), &format!("{ctx}.basis"))?;
    let s = Subspace::span(&doc.field, space.dim(), rows).map_err(|e| CliError::math(ctx, e))?;
    Ok((space, s))
}

fn parse_relation<F: Field>(doc: &Document<F>, v: &Value, ctx: &str) -> Result<CanonicalRelation<F>, CliError> {
    let obj = as_object(v, ctx)?;
    check_keys(obj, &["target", "source", "basis"], &["target", "source", "basis"], ctx)?;
    let target = parse_space_ref(doc, &obj["target"], &format!("{ctx}.target"))?;
    let source = parse_space_ref(doc, &obj["source"], &format!("{ctx}.source"))?;
    let width = target.dim() + source.dim();
    let rows = parse_rows(&doc.field, &obj["basis"], width, &format!("{ctx}.basis"))?;
    CanonicalRelation::from_vectors(target, source, rows).map_err(|e| CliError::math(ctx, e))
}

fn parse_relation_ref<F: Field>(doc: &Document<F>, v: &Value, ctx: &str) -> Result<CanonicalRelation<F>, CliError> {
    match v {
        Value::String(name) => doc
            .relation(name)
            .cloned()
            .map_err(|e| CliError::Reference(format!("{ctx}: {e}"))),
        _ => parse_relation(doc, v, ctx),
    }
}

fn parse_entries<F: Field>(doc: &Document<F>, v: &Value, ctx: &str) -> Result<Vec<CanonicalRelation<F>>, CliError> {
    as_array(v, ctx)?
        .iter()
        .enumerate()
        .map(|(i, e)| parse_relation_ref(doc, e, &format!("{ctx}[{i}]")))
        .collect()
}

/// A nonempty list of relations, or `{"object": space, "entries": [...]}`
/// (needed for the empty sequence).
fn parse_sequence<F: Field>(doc: &Document<F>, v: &Value, ctx: &str) -> Result<WWSequence<F>, CliError> {
    if v.is_array() {
        let entries = parse_entries(doc, v, ctx)?;
        if entries.is_empty() {
            return Err(CliError::Schema(format!(
                "{ctx}: an empty sequence needs the form {{\"object\": ..., \"entries\": []}}"
            )));
        }
        return WWSequence::new(entries).map_err(|e| CliError::math(ctx, e));
    }
    let obj = as_object(v, ctx)?;
    check_keys(obj, &["object", "entries"], &["object", "entries"], ctx)?;
    let object = parse_space_ref(doc, &obj["object"], &format!("{ctx}.object"))?;
    let entries = parse_entries(doc, &obj["entries"], &format!("{ctx}.entries"))?;
    if entries.is_empty() {
        return Ok(WWSequence::empty(&object));
    }
    let s = WWSequence::new(entries).map_err(|e| CliError::math(ctx, e))?;
    if *s.target() != object {
        return Err(CliError::math(
            ctx,
            CoreError::SpaceMismatch("the object must be the target of the first entry".to_string()),
        ));
    }
    Ok(s)
}

fn parse_tuple<F: Field>(doc: &Document<F>, v: &Value, ctx: &str) -> Result<NerveTuple<F>, CliError> {
    let obj = as_object(v, ctx)?;
    check_keys(obj, &["space", "entries"], &["space", "entries"], ctx)?;
    let space = parse_space_ref(doc, &obj["space"], &format!("{ctx}.space"))?;
    let entries = parse_entries(doc, &obj["entries"], &format!("{ctx}.entries"))?;
    NerveTuple::new(&space, entries).map_err(|e| CliError::math(ctx, e))
}

fn parse_families(doc: &Document<Rationals>, v: &Value) -> Result<BTreeMap<String, RelationFamily>, CliError> {
    let mut out = BTreeMap::new();
    for (name, f) in as_object(v, "families")? {
        let ctx = format!("families.{name}");
        let obj = as_object(f, &ctx)?;
        check_keys(obj, &["target", "source", "basis"], &["target", "source", "basis"], &ctx)?;
        let target = parse_space_ref(doc, &obj["target"], &format!("{ctx}.target"))?;
        let source = parse_space_ref(doc, &obj["source"], &format!("{ctx}.source"))?;
        let width = target.dim() + source.dim();
        let columns = as_array(&obj["basis"], &format!("{ctx}.basis"))?
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let row_ctx = format!("{ctx}.basis[{i}]");
                let entries = as_array(row, &row_ctx)?;
                if entries.len() != width {
                    return Err(CliError::Schema(format!(
                        "{row_ctx}: has length {}, expected {width}",
                        entries.len()
                    )));
                }
                entries
                    .iter()
                    .enumerate()
                    .map(|(j, x)| parse_ratfunc(x, &format!("{row_ctx}[{j}]")))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let graph = ParametricSubspace::new(width, columns).map_err(|e| CliError::math(&ctx, e))?;
        let family = RelationFamily::new(target, source, graph).map_err(|e| CliError::math(&ctx, e))?;
        out.insert(name.clone(), family);
    }
    Ok(out)
}

/// A constant scalar, or `{"num": [c0, c1, ...], "den": [...]}` with
/// coefficients in increasing degree.
fn parse_ratfunc(v: &Value, ctx: &str) -> Result<RatFunc, CliError> {
    let Some(obj) = v.as_object() else {
        return Ok(RatFunc::constant(parse_ratio(v, ctx)?));
    };
    check_keys(obj, &["num", "den"], &["num"], ctx)?;
    let poly = |key: &str| -> Result<Poly, CliError> {
        match obj.get(key) {
            None => Ok(Poly::constant(BigRational::from_integer(1.into()))),
            Some(c) => Ok(Poly::new(
                as_array(c, &format!("{ctx}.{key}"))?
                    .iter()
                    .enumerate()
                    .map(|(i, x)| parse_ratio(x, &format!("{ctx}.{key}[{i}]")))
                    .collect::<Result<_, _>>()?,
            )),
        }
    };
    RatFunc::new(poly("num")?, poly("den")?).ok_or_else(|| CliError::Schema(format!("{ctx}: zero denominator")))
}
