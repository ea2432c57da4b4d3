//! One command per library operation.

use std::path::PathBuf;

use canrel_core::nerve::check_simplicial_identities;
use canrel_core::reduction::{compose_via_reduction, factorize, reduce_lagrangian, reduce_space};
use canrel_core::relation::{cotangent_lift, graph_of_symplectomorphism, liftlike_core};
use canrel_core::sabot::{closure_limit_check, in_closure, sabot_compose, RelationFamily};
use canrel_core::symplectic::{enumerate_lagrangians, lagrangian_count};
use canrel_core::wwcat::{equivalent_bounded, greedy_reduce_traced, LinkDirection};
use canrel_core::{
    CanonicalRelation, Equivalence, Error as CoreError, Field, NerveTuple, Rationals, RewriteKind, RewriteStep,
    Subspace, SymplecticSpace, WWSequence,
};
use clap::{Parser, ValueEnum};
use serde_json::{json, Value};
use std::collections::BTreeMap;

use crate::document::Document;
use crate::error::CliError;
use crate::render;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Check,
    Compose,
    Transversal,
    Deficiency,
    Transpose,
    Apply,
    Graph,
    Lift,
    Liftlike,
    ReduceSpace,
    ReduceLagrangian,
    Factorize,
    ComposeViaReduction,
    ClosureMember,
    SabotCompose,
    ClosureLimit,
    LagEnum,
    LagCount,
    WwReduce,
    WwValue,
    WwEquiv,
    NerveFace,
    NerveDegeneracy,
    NerveTransversal,
    NerveIdentities,
}

impl Command {
    pub const ALL: [Command; 25] = [
        Command::Check,
        Command::Compose,
        Command::Transversal,
        Command::Deficiency,
        Command::Transpose,
        Command::Apply,
        Command::Graph,
        Command::Lift,
        Command::Liftlike,
        Command::ReduceSpace,
        Command::ReduceLagrangian,
        Command::Factorize,
        Command::ComposeViaReduction,
        Command::ClosureMember,
        Command::SabotCompose,
        Command::ClosureLimit,
        Command::LagEnum,
        Command::LagCount,
        Command::WwReduce,
        Command::WwValue,
        Command::WwEquiv,
        Command::NerveFace,
        Command::NerveDegeneracy,
        Command::NerveTransversal,
        Command::NerveIdentities,
    ];

    pub fn name(self) -> String {
        self.to_possible_value().expect("no skipped variants").get_name().to_string()
    }

    /// Positional arguments, optional ones in brackets.
    pub fn arguments(self) -> &'static str {
        match self {
            Command::Check => "[OBJECT...]",
            Command::Compose
            | Command::Transversal
            | Command::Deficiency
            | Command::ComposeViaReduction
            | Command::SabotCompose => "F G",
            Command::Transpose | Command::Factorize => "F",
            Command::Apply => "F SUBSPACE",
            Command::Graph => "SPACE MATRIX",
            Command::Lift => "MATRIX",
            Command::Liftlike => "F A B",
            Command::ReduceSpace => "COISOTROPIC",
            Command::ReduceLagrangian => "COISOTROPIC LAGRANGIAN",
            Command::ClosureMember => "F G H",
            Command::ClosureLimit => "FAMILY FAMILY",
            Command::LagEnum | Command::LagCount => "SPACE",
            Command::WwReduce | Command::WwValue => "SEQUENCE",
            Command::WwEquiv => "SEQUENCE SEQUENCE",
            Command::NerveFace | Command::NerveDegeneracy => "TUPLE INDEX",
            Command::NerveTransversal => "TUPLE",
            Command::NerveIdentities => "SPACE K [SAMPLES]",
        }
    }
}

#[derive(Parser, Debug, Clone)]
#[command(name = "canrel", version, about = "Exact linear canonical relations")]
pub struct Invocation {
    pub command: Command,
    /// JSON document holding the field, spaces and named objects.
    #[arg(long)]
    pub doc: PathBuf,
    /// Names of document objects, plus numeric arguments where a command takes them.
    pub names: Vec<String>,
    /// Add the result to the document under this name and print the document.
    #[arg(long)]
    pub name: Option<String>,
    /// Search depth for ww-equiv.
    #[arg(long)]
    pub depth: Option<usize>,
    /// Sampling seed for nerve-identities.
    #[arg(long)]
    pub seed: Option<u64>,
}

/// A result that `--name` can add to the document.
pub enum Stored<F: Field> {
    Space(SymplecticSpace<F>),
    Subspace(SymplecticSpace<F>, Subspace<F>),
    Relation(CanonicalRelation<F>),
    Sequence(WWSequence<F>),
    Tuple(NerveTuple<F>),
}

impl<F: Field> Stored<F> {
    pub fn insert(self, doc: &mut Document<F>, name: &str) {
        let name = name.to_string();
        match self {
            Stored::Space(s) => {
                doc.spaces.insert(name, s);
            }
            Stored::Subspace(sp, s) => {
                doc.subspaces.insert(name, (sp, s));
            }
            Stored::Relation(r) => {
                doc.relations.insert(name, r);
            }
            Stored::Sequence(s) => {
                doc.sequences.insert(name, s);
            }
            Stored::Tuple(t) => {
                doc.tuples.insert(name, t);
            }
        }
    }
}

pub struct Output<F: Field> {
    pub value: Value,
    pub stored: Option<Stored<F>>,
}

impl<F: Field> Output<F> {
    fn plain(value: Value) -> Self {
        Output { value, stored: None }
    }
}

fn arity(inv: &Invocation, min: usize, max: usize) -> Result<&[String], CliError> {
    let n = inv.names.len();
    if n < min || n > max {
        return Err(CliError::Usage(format!(
            "{} {}",
            inv.command.name(),
            inv.command.arguments()
        )));
    }
    Ok(&inv.names)
}

fn number(text: &str, what: &str) -> Result<usize, CliError> {
    text.parse()
        .map_err(|_| CliError::Usage(format!("{what} must be a nonnegative integer, got '{text}'")))
}

/// Options that only some commands read.
pub fn check_options(inv: &Invocation) -> Result<(), CliError> {
    if inv.depth.is_some() && inv.command != Command::WwEquiv {
        return Err(CliError::Usage("--depth only applies to ww-equiv".to_string()));
    }
    if inv.seed.is_some() && inv.command != Command::NerveIdentities {
        return Err(CliError::Usage("--seed only applies to nerve-identities".to_string()));
    }
    Ok(())
}

fn same_space<F: Field>(a: &SymplecticSpace<F>, b: &SymplecticSpace<F>, what: &str) -> Result<(), CliError> {
    if a == b {
        Ok(())
    } else {
        Err(CliError::math(what, CoreError::SpaceMismatch(format!("{what} lives in the wrong space"))))
    }
}

fn step_value(step: &RewriteStep) -> Value {
    let kind = match step.kind {
        RewriteKind::ComposePair => "compose_pair",
        RewriteKind::DropIdentity => "drop_identity",
        RewriteKind::InsertIdentity => "insert_identity",
    };
    json!({ "position": step.position, "kind": kind })
}

/// Objects that live outside the generic document (families over ℚ).
pub struct Extras<'a> {
    pub family_count: usize,
    pub check_family: &'a dyn Fn(&str) -> Option<Result<Value, CliError>>,
}

impl Extras<'static> {
    pub fn none() -> Self {
        Extras {
            family_count: 0,
            check_family: &|_| None,
        }
    }
}

pub fn execute<F: Field>(doc: &Document<F>, inv: &Invocation, extras: &Extras) -> Result<Output<F>, CliError> {
    let cmd = inv.command.name();
    let math = |e: CoreError| CliError::math(cmd.as_str(), e);
    let out = match inv.command {
        Command::Check => Output::plain(check(doc, arity(inv, 0, usize::MAX)?, extras)?),
        Command::Compose => {
            let a = arity(inv, 2, 2)?;
            let r = doc.relation(&a[0])?.compose(doc.relation(&a[1])?).map_err(math)?;
            Output {
                value: render::relation_def(doc, &r),
                stored: Some(Stored::Relation(r)),
            }
        }
        Command::Transversal => {
            let a = arity(inv, 2, 2)?;
            let rep = doc.relation(&a[0])?.transversality(doc.relation(&a[1])?).map_err(math)?;
            Output::plain(json!({
                "transversal": rep.transversal,
                "deficiency": rep.deficiency,
                "fiber_dim": rep.fiber_dim,
            }))
        }
        Command::Deficiency => {
            let a = arity(inv, 2, 2)?;
            let rep = doc.relation(&a[0])?.transversality(doc.relation(&a[1])?).map_err(math)?;
            Output::plain(json!({ "transversal": rep.transversal, "deficiency": rep.deficiency }))
        }
        Command::Transpose => {
            let a = arity(inv, 1, 1)?;
            let r = doc.relation(&a[0])?.transpose();
            Output {
                value: render::relation_def(doc, &r),
                stored: Some(Stored::Relation(r)),
            }
        }
        Command::Apply => {
            let a = arity(inv, 2, 2)?;
            let f = doc.relation(&a[0])?;
            let (space, s) = doc.subspace(&a[1])?;
            same_space(space, f.source(), &a[1])?;
            let image = f.apply(s).map_err(math)?;
            Output {
                value: render::subspace_value(&image),
                stored: Some(Stored::Subspace(f.target().clone(), image)),
            }
        }
        Command::Graph => {
            let a = arity(inv, 2, 2)?;
            let r = graph_of_symplectomorphism(doc.space(&a[0])?, doc.matrix(&a[1])?).map_err(math)?;
            Output {
                value: render::relation_def(doc, &r),
                stored: Some(Stored::Relation(r)),
            }
        }
        Command::Lift => {
            let a = arity(inv, 1, 1)?;
            let r = cotangent_lift(doc.matrix(&a[0])?);
            Output {
                value: render::relation_def(doc, &r),
                stored: Some(Stored::Relation(r)),
            }
        }
        Command::Liftlike => {
            let a = arity(inv, 3, 3)?;
            let f = doc.relation(&a[0])?;
            let (sa, la) = doc.subspace(&a[1])?;
            let (sb, lb) = doc.subspace(&a[2])?;
            same_space(sa, f.target(), &a[1])?;
            same_space(sb, f.source(), &a[2])?;
            let core = liftlike_core(f, la, lb).map_err(math)?;
            Output::plain(json!({
                "liftlike": core.is_some(),
                "core": core.as_ref().map_or(Value::Null, render::matrix_def),
            }))
        }
        Command::ReduceSpace => {
            let a = arity(inv, 1, 1)?;
            let (space, c) = doc.subspace(&a[0])?;
            let data = reduce_space(space, c).map_err(math)?;
            Output {
                value: json!({
                    "reduced": render::space_ref(doc, &data.reduced),
                    "kernel": render::subspace_value(&data.kernel),
                    "projection": render::matrix_def(&data.projection),
                    "relation": render::relation_def(doc, &data.relation),
                }),
                stored: Some(Stored::Space(data.reduced)),
            }
        }
        Command::ReduceLagrangian => {
            let a = arity(inv, 2, 2)?;
            let (space, c) = doc.subspace(&a[0])?;
            let (lspace, l) = doc.subspace(&a[1])?;
            same_space(lspace, space, &a[1])?;
            let data = reduce_space(space, c).map_err(math)?;
            let red = reduce_lagrangian(&data, l).map_err(math)?;
            Output {
                value: json!({
                    "reduced": render::space_ref(doc, &data.reduced),
                    "lagrangian": render::subspace_value(&red.lagrangian),
                    "transversal": red.transversal,
                }),
                stored: Some(Stored::Subspace(data.reduced, red.lagrangian)),
            }
        }
        Command::Factorize => {
            let a = arity(inv, 1, 1)?;
            let f = doc.relation(&a[0])?;
            let fact = factorize(f).map_err(math)?;
            let (first, second) = fact.factor_reports().map_err(math)?;
            Output::plain(json!({
                "range_reduction": render::relation_def(doc, &fact.range_reduction.relation),
                "reduced": render::relation_def(doc, &fact.reduced),
                "domain_reduction": render::relation_def(doc, &fact.domain_reduction.relation),
                "reconstructs": fact.recompose().map_err(math)? == *f,
                "factors_transversal": [first.transversal, second.transversal],
            }))
        }
        Command::ComposeViaReduction => {
            let a = arity(inv, 2, 2)?;
            let via = compose_via_reduction(doc.relation(&a[0])?, doc.relation(&a[1])?).map_err(math)?;
            Output {
                value: json!({
                    "relation": render::relation_def(doc, &via.relation),
                    "transversal": via.transversal,
                }),
                stored: Some(Stored::Relation(via.relation)),
            }
        }
        Command::ClosureMember => {
            let a = arity(inv, 3, 3)?;
            let t = in_closure(doc.relation(&a[0])?, doc.relation(&a[1])?, doc.relation(&a[2])?).map_err(math)?;
            Output::plain(json!({ "member": t.member, "deficiency": t.deficiency, "codim": t.codim }))
        }
        Command::SabotCompose => {
            let a = arity(inv, 2, 2)?;
            let members = sabot_compose(doc.relation(&a[0])?, doc.relation(&a[1])?).map_err(math)?;
            Output::plain(json!({
                "count": members.len(),
                "members": members.iter().map(|r| render::relation_def(doc, r)).collect::<Vec<_>>(),
            }))
        }
        Command::ClosureLimit => {
            return Err(math(CoreError::Unsupported(
                "closure limits are computed for families over the rationals".to_string(),
            )))
        }
        Command::LagEnum => {
            let a = arity(inv, 1, 1)?;
            let lag = enumerate_lagrangians(doc.space(&a[0])?).map_err(math)?;
            Output::plain(json!({
                "count": lag.len(),
                "members": lag.members.iter().map(render::subspace_value).collect::<Vec<_>>(),
            }))
        }
        Command::LagCount => {
            let a = arity(inv, 1, 1)?;
            let x = doc.space(&a[0])?;
            let lag = enumerate_lagrangians(x).map_err(math)?;
            let formula = lagrangian_count(doc.field.characteristic(), x.half_dim() as u32);
            Output::plain(json!({ "count": lag.len(), "formula": formula.to_string() }))
        }
        Command::WwReduce => {
            let a = arity(inv, 1, 1)?;
            let (r, steps) = greedy_reduce_traced(doc.sequence(&a[0])?);
            Output {
                value: json!({
                    "sequence": render::sequence_def(doc, &r),
                    "steps": steps.iter().map(step_value).collect::<Vec<_>>(),
                }),
                stored: Some(Stored::Sequence(r)),
            }
        }
        Command::WwValue => {
            let a = arity(inv, 1, 1)?;
            let r = doc.sequence(&a[0])?.rel_value();
            Output {
                value: render::relation_def(doc, &r),
                stored: Some(Stored::Relation(r)),
            }
        }
        Command::WwEquiv => {
            let a = arity(inv, 2, 2)?;
            let depth = inv.depth.unwrap_or(4);
            let result = equivalent_bounded(doc.sequence(&a[0])?, doc.sequence(&a[1])?, depth).map_err(math)?;
            Output::plain(match result {
                Equivalence::Equivalent(chain) => json!({
                    "result": "equivalent",
                    "depth": depth,
                    "chain": chain.iter().map(|link| json!({
                        "step": step_value(&link.step),
                        "direction": match link.direction {
                            LinkDirection::Forward => "forward",
                            LinkDirection::Backward => "backward",
                        },
                        "sequence": render::sequence_def(doc, &link.sequence),
                    })).collect::<Vec<_>>(),
                }),
                Equivalence::Unknown => json!({ "result": "unknown", "depth": depth }),
            })
        }
        Command::NerveFace | Command::NerveDegeneracy => {
            let a = arity(inv, 2, 2)?;
            let t = doc.tuple(&a[0])?;
            let i = number(&a[1], "INDEX")?;
            let r = if inv.command == Command::NerveFace {
                t.face(i)
            } else {
                t.degeneracy(i)
            }
            .map_err(math)?;
            Output {
                value: render::tuple_def(doc, &r),
                stored: Some(Stored::Tuple(r)),
            }
        }
        Command::NerveTransversal => {
            let a = arity(inv, 1, 1)?;
            let t = doc.tuple(&a[0])?;
            Output::plain(json!({ "k": t.k(), "completely_transversal": t.is_completely_transversal() }))
        }
        Command::NerveIdentities => {
            let a = arity(inv, 2, 3)?;
            let x = doc.space(&a[0])?;
            let k = number(&a[1], "K")?;
            let samples = a.get(2).map(|s| number(s, "SAMPLES")).transpose()?.unwrap_or(100);
            let seed = inv.seed.unwrap_or(0);
            let report = check_simplicial_identities(x, k, samples, seed);
            Output::plain(json!({
                "k": k,
                "samples": samples,
                "seed": seed,
                "tuples_checked": report.tuples_checked,
                "identities_checked": report.identities_checked,
                "holds": report.holds(),
                "violations": report.violations.iter().map(|v| json!({
                    "identity": v.identity,
                    "tuple": render::tuple_def(doc, &v.tuple),
                })).collect::<Vec<_>>(),
            }))
        }
    };
    Ok(out)
}

fn check<F: Field>(doc: &Document<F>, names: &[String], extras: &Extras) -> Result<Value, CliError> {
    if names.is_empty() {
        return Ok(json!({
            "valid": true,
            "field": render::field_def(&doc.field),
            "objects": {
                "spaces": doc.spaces.len(),
                "matrices": doc.matrices.len(),
                "subspaces": doc.subspaces.len(),
                "relations": doc.relations.len(),
                "sequences": doc.sequences.len(),
                "tuples": doc.tuples.len(),
                "families": extras.family_count,
            },
        }));
    }
    let mut objects = serde_json::Map::new();
    for name in names {
        let report = if let Ok(s) = doc.space(name) {
            json!({ "kind": "space", "dim": s.dim(), "standard": *s == SymplecticSpace::standard(&doc.field, s.half_dim()) })
        } else if let Ok(m) = doc.matrix(name) {
            json!({ "kind": "matrix", "rows": m.rows(), "cols": m.cols(), "rank": m.rank() })
        } else if let Ok((space, s)) = doc.subspace(name) {
            let c = space.classify(s).map_err(|e| CliError::math(name.as_str(), e))?;
            json!({
                "kind": "subspace",
                "dim": s.dim(),
                "isotropic": c.isotropic,
                "coisotropic": c.coisotropic,
                "lagrangian": c.lagrangian,
                "symplectic": c.symplectic,
            })
        } else if let Ok(r) = doc.relation(name) {
            json!({
                "kind": "relation",
                "lagrangian": r.is_valid(),
                "identity": r.is_identity(),
                "invertible": r.is_invertible(),
                "range_dim": r.range().dim(),
                "domain_dim": r.domain().dim(),
                "kernel_dim": r.kernel().dim(),
                "cokernel_dim": r.cokernel().dim(),
            })
        } else if let Ok(s) = doc.sequence(name) {
            json!({ "kind": "sequence", "length": s.len(), "value": render::relation_def(doc, &s.rel_value()) })
        } else if let Ok(t) = doc.tuple(name) {
            json!({ "kind": "tuple", "k": t.k(), "completely_transversal": t.is_completely_transversal() })
        } else if let Some(r) = (extras.check_family)(name) {
            r?
        } else {
            return Err(CliError::Reference(format!("unknown object '{name}'")));
        };
        objects.insert(name.clone(), report);
    }
    Ok(json!({ "objects": objects }))
}

/// `check` for a family name, which only rational documents can hold.
pub fn check_family(doc: &Document<Rationals>, name: &str, family: &RelationFamily) -> Result<Value, CliError> {
    let limit = family.limit().map_err(|e| CliError::math(name, e))?;
    Ok(json!({ "kind": "family", "limit": render::relation_def(doc, &limit) }))
}

pub fn closure_limit(
    doc: &Document<Rationals>,
    families: &BTreeMap<String, RelationFamily>,
    inv: &Invocation,
) -> Result<Value, CliError> {
    let a = arity(inv, 2, 2)?;
    let get = |n: &String| {
        families
            .get(n)
            .ok_or_else(|| CliError::Reference(format!("unknown family '{n}'")))
    };
    let report = closure_limit_check(get(&a[0])?, get(&a[1])?).map_err(|e| CliError::math("closure-limit", e))?;
    Ok(json!({
        "f_limit": render::relation_def(doc, &report.f_limit),
        "g_limit": render::relation_def(doc, &report.g_limit),
        "limit_of_compositions": render::relation_def(doc, &report.h_limit),
        "composition_of_limits": render::relation_def(doc, &report.composed_limits),
        "discontinuous": report.discontinuous(),
        "member": report.triple.member,
        "deficiency": report.triple.deficiency,
    }))
}
