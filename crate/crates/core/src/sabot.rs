//! The completed, multiple-valued composition of linear canonical relations.
//!
//! A triple `(f, g, h)` lies in the closure of the graph of transversal
//! composition when `codim(h ∩ f∘g ⊆ f∘g) ≤ d(f, g)`. Over ℝ and ℂ this is
//! a theorem; over other fields it is taken as the definition. `f • g` is
//! the set of all such `h`.

use crate::error::{Error, Result};
use crate::field::{Field, Rationals};
use crate::parametric::{lift_constant, limit_subspace, ParametricSubspace};
use crate::ratfunc::{RatFunc, RationalFunctions};
use crate::relation::CanonicalRelation;
use crate::symplectic::{enumerate_lagrangians_within, EnumerationBound, SymplecticSpace};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureTriple<F: Field> {
    pub f: CanonicalRelation<F>,
    pub g: CanonicalRelation<F>,
    pub h: CanonicalRelation<F>,
    pub member: bool,
    pub deficiency: usize,
    /// Codimension of `h ∩ (f ∘ g)` inside `f ∘ g`.
    pub codim: usize,
}

pub fn in_closure<F: Field>(
    f: &CanonicalRelation<F>,
    g: &CanonicalRelation<F>,
    h: &CanonicalRelation<F>,
) -> Result<ClosureTriple<F>> {
    if h.target() != f.target() || h.source() != g.source() {
        return Err(Error::SpaceMismatch(
            "candidate must go to the target of f from the source of g".to_string(),
        ));
    }
    let composed = f.compose(g)?;
    let deficiency = f.transversality(g)?.deficiency;
    let meet = h.graph().intersect(composed.graph())?;
    let codim = composed.graph().dim() - meet.dim();
    Ok(ClosureTriple {
        f: f.clone(),
        g: g.clone(),
        h: h.clone(),
        member: codim <= deficiency,
        deficiency,
        codim,
    })
}

/// `f • g`, by scanning every lagrangian of `X × Z̄`.
pub fn sabot_compose<F: Field>(f: &CanonicalRelation<F>, g: &CanonicalRelation<F>) -> Result<Vec<CanonicalRelation<F>>> {
    sabot_compose_within(f, g, EnumerationBound::default())
}

pub fn sabot_compose_within<F: Field>(
    f: &CanonicalRelation<F>,
    g: &CanonicalRelation<F>,
    bound: EnumerationBound,
) -> Result<Vec<CanonicalRelation<F>>> {
    if !f.field().is_finite() {
        return Err(Error::Unsupported(
            "multiple-valued composition is enumerated over finite fields only".to_string(),
        ));
    }
    let composed = f.compose(g)?;
    let deficiency = f.transversality(g)?.deficiency;
    let outer = f.target().product(&g.source().bar())?;
    let candidates = enumerate_lagrangians_within(&outer, bound)?;
    let k = composed.graph();
    let mut members = Vec::new();
    for l in candidates.members {
        let codim = k.dim() - l.intersect(k)?.dim();
        if codim <= deficiency {
            members.push(CanonicalRelation::new(f.target().clone(), g.source().clone(), l)?);
        }
    }
    Ok(members)
}

/// A relation depending rationally on a parameter `t`, lagrangian over ℚ(t).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationFamily {
    target: SymplecticSpace<Rationals>,
    source: SymplecticSpace<Rationals>,
    graph: ParametricSubspace,
}

impl RelationFamily {
    /// The lagrangian condition is checked exactly over ℚ(t), which is the
    /// same as holding at all but finitely many values of `t`.
    pub fn new(
        target: SymplecticSpace<Rationals>,
        source: SymplecticSpace<Rationals>,
        graph: ParametricSubspace,
    ) -> Result<Self> {
        let family = RelationFamily { target, source, graph };
        family.generic()?;
        Ok(family)
    }

    pub fn constant(r: &CanonicalRelation<Rationals>) -> Self {
        RelationFamily {
            target: r.target().clone(),
            source: r.source().clone(),
            graph: ParametricSubspace::constant(r.graph()),
        }
    }

    pub fn target(&self) -> &SymplecticSpace<Rationals> {
        &self.target
    }

    pub fn source(&self) -> &SymplecticSpace<Rationals> {
        &self.source
    }

    pub fn graph(&self) -> &ParametricSubspace {
        &self.graph
    }

    /// The family as a single relation over ℚ(t).
    pub fn generic(&self) -> Result<CanonicalRelation<RationalFunctions>> {
        let lift = |s: &SymplecticSpace<Rationals>| s.map_field(&RationalFunctions, |x| RatFunc::constant(x.clone()));
        CanonicalRelation::new(lift(&self.target)?, lift(&self.source)?, self.graph.to_subspace())
    }

    /// Limit as `t → 0`; lagrangian because the condition is closed.
    pub fn limit(&self) -> Result<CanonicalRelation<Rationals>> {
        CanonicalRelation::new(self.target.clone(), self.source.clone(), limit_subspace(&self.graph))
    }

    fn from_generic(
        target: SymplecticSpace<Rationals>,
        source: SymplecticSpace<Rationals>,
        generic: &CanonicalRelation<RationalFunctions>,
    ) -> Self {
        RelationFamily {
            target,
            source,
            graph: ParametricSubspace::from_subspace(generic.graph()),
        }
    }
}

/// Limits of two families, the limit of their compositions, and whether
/// the latter lies over the former in the closure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimitReport {
    pub f_limit: CanonicalRelation<Rationals>,
    pub g_limit: CanonicalRelation<Rationals>,
    /// Limit of `f_t ∘ g_t`.
    pub h_limit: CanonicalRelation<Rationals>,
    /// `f_limit ∘ g_limit`, for comparison.
    pub composed_limits: CanonicalRelation<Rationals>,
    pub triple: ClosureTriple<Rationals>,
}

impl LimitReport {
    /// True when composition fails to commute with the limit.
    pub fn discontinuous(&self) -> bool {
        self.h_limit != self.composed_limits
    }
}

pub fn closure_limit_check(f: &RelationFamily, g: &RelationFamily) -> Result<LimitReport> {
    if f.source != g.target {
        return Err(Error::SpaceMismatch("middle spaces differ".to_string()));
    }
    let composed = f.generic()?.compose(&g.generic()?)?;
    let h = RelationFamily::from_generic(f.target.clone(), g.source.clone(), &composed);
    let f_limit = f.limit()?;
    let g_limit = g.limit()?;
    let h_limit = h.limit()?;
    let composed_limits = f_limit.compose(&g_limit)?;
    let triple = in_closure(&f_limit, &g_limit, &h_limit)?;
    Ok(LimitReport {
        f_limit,
        g_limit,
        h_limit,
        composed_limits,
        triple,
    })
}

/// Embeds a rational relation as a constant relation over ℚ(t).
pub fn lift_relation(r: &CanonicalRelation<Rationals>) -> Result<CanonicalRelation<RationalFunctions>> {
    let lift = |s: &SymplecticSpace<Rationals>| s.map_field(&RationalFunctions, |x| RatFunc::constant(x.clone()));
    CanonicalRelation::new(lift(r.target())?, lift(r.source())?, lift_constant(r.graph()))
}

/// `Γ_a`, the graph of `T_a = diag(1/a, a)` on the standard plane, with
/// `a = t` (or `a = 1/t` when `inverse` is set). Its limit at `t → 0` is
/// `L1 × L2` (respectively `L2 × L1`).
pub fn scaling_family(inverse: bool) -> RelationFamily {
    let x = SymplecticSpace::standard(&Rationals, 1);
    let t = RatFunc::t();
    let inv_t = RationalFunctions.inv(&t).expect("t is nonzero");
    let one = RationalFunctions.one();
    let zero = RatFunc::zero();
    let a = if inverse { inv_t.clone() } else { t.clone() };
    let a_inv = if inverse { t } else { inv_t };
    // graph {(T x, x)} spanned by (T e1, e1) and (T e2, e2)
    let columns = vec![
        vec![a_inv, zero.clone(), one.clone(), zero.clone()],
        vec![zero.clone(), a, zero, one],
    ];
    let graph = ParametricSubspace::new(4, columns).expect("independent columns");
    RelationFamily::new(x.clone(), x, graph).expect("graphs of symplectomorphisms are lagrangian")
}
