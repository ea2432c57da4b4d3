//! Linear canonical relations and their calculus.
//!
//! A relation "to X from Y" is a lagrangian subspace of `X × Ȳ`, stored in
//! coordinates with the target block first and the source block second.

use crate::error::{check_dim, Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::subspace::{unit, Subspace};
use crate::symplectic::SymplecticSpace;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CanonicalRelation<F: Field> {
    target: SymplecticSpace<F>,
    source: SymplecticSpace<F>,
    graph: Subspace<F>,
}

/// How far a composable pair is from being transversal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TransversalityReport {
    pub transversal: bool,
    pub deficiency: usize,
    /// Dimension of the fiber product `f ×_Y g`.
    pub fiber_dim: usize,
}

/// Which way a lagrangian is read as a relation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PointDirection {
    /// Relation to `X` from the point.
    FromPoint,
    /// Relation to the point from `X`.
    ToPoint,
}

impl<F: Field> CanonicalRelation<F> {
    /// Validates that `graph` is lagrangian in `target × bar(source)`.
    pub fn new(target: SymplecticSpace<F>, source: SymplecticSpace<F>, graph: Subspace<F>) -> Result<Self> {
        if target.field() != source.field() {
            return Err(Error::FieldMismatch);
        }
        let ambient = target.product(&source.bar())?;
        ambient.check_lagrangian(&graph)?;
        Ok(CanonicalRelation { target, source, graph })
    }

    /// Canonicalizes the span of `vectors` and validates it.
    pub fn from_vectors(
        target: SymplecticSpace<F>,
        source: SymplecticSpace<F>,
        vectors: Vec<Vec<F::Elem>>,
    ) -> Result<Self> {
        let graph = Subspace::span(target.field(), target.dim() + source.dim(), vectors)?;
        Self::new(target, source, graph)
    }

    fn unchecked(target: SymplecticSpace<F>, source: SymplecticSpace<F>, graph: Subspace<F>) -> Self {
        let r = CanonicalRelation { target, source, graph };
        debug_assert!(r.is_valid(), "construction produced a non-lagrangian graph");
        r
    }

    /// The diagonal `Δ_X`.
    pub fn identity(space: &SymplecticSpace<F>) -> Self {
        let f = space.field();
        let d = space.dim();
        let vectors = (0..d)
            .map(|i| {
                let mut v = vec![f.zero(); 2 * d];
                v[i] = f.one();
                v[d + i] = f.one();
                v
            })
            .collect();
        let graph = Subspace::span(f, 2 * d, vectors).expect("diagonal vectors have length 2d");
        Self::unchecked(space.clone(), space.clone(), graph)
    }

    pub fn target(&self) -> &SymplecticSpace<F> {
        &self.target
    }

    pub fn source(&self) -> &SymplecticSpace<F> {
        &self.source
    }

    pub fn graph(&self) -> &Subspace<F> {
        &self.graph
    }

    pub fn field(&self) -> &F {
        self.target.field()
    }

    /// `target × bar(source)`.
    pub fn ambient(&self) -> SymplecticSpace<F> {
        self.target.product(&self.source.bar()).expect("fields agree")
    }

    pub fn is_valid(&self) -> bool {
        self.ambient().is_lagrangian(&self.graph)
    }

    pub fn is_identity(&self) -> bool {
        self.target == self.source && *self == Self::identity(&self.target)
    }

    fn x_dim(&self) -> usize {
        self.target.dim()
    }

    fn y_dim(&self) -> usize {
        self.source.dim()
    }

    /// The relation read backwards, to `Y` from `X`.
    pub fn transpose(&self) -> Self {
        let (x, y) = (self.x_dim(), self.y_dim());
        let order: Vec<usize> = (x..x + y).chain(0..x).collect();
        Self::unchecked(self.source.clone(), self.target.clone(), self.graph.permute(&order))
    }

    /// Projection of the graph to `X`.
    pub fn range(&self) -> Subspace<F> {
        self.graph.project(0..self.x_dim())
    }

    /// Projection of the graph to `Y`.
    pub fn domain(&self) -> Subspace<F> {
        let x = self.x_dim();
        self.graph.project(x..x + self.y_dim())
    }

    /// `{y : (0, y) ∈ f}`, the ω-orthogonal of the domain.
    pub fn kernel(&self) -> Subspace<F> {
        let x = self.x_dim();
        let zero_x = Subspace::zero(self.field(), x).direct_sum(&self.source.full_subspace()).expect("fields agree");
        self.graph.intersect(&zero_x).expect("same ambient").project(x..x + self.y_dim())
    }

    /// `{x : (x, 0) ∈ f}`, the ω-orthogonal of the range.
    pub fn cokernel(&self) -> Subspace<F> {
        let x = self.x_dim();
        let zero_y = self.target.full_subspace().direct_sum(&Subspace::zero(self.field(), self.y_dim())).expect("fields agree");
        self.graph.intersect(&zero_y).expect("same ambient").project(0..x)
    }

    /// Image of a subspace: `{x : (x, s) ∈ f for some s ∈ S}`.
    pub fn apply(&self, s: &Subspace<F>) -> Result<Subspace<F>> {
        self.source.check_member(s)?;
        let xs = self.target.full_subspace().direct_sum(s)?;
        Ok(self.graph.intersect(&xs)?.project(0..self.x_dim()))
    }

    /// True when the relation is the graph of a symplectomorphism.
    pub fn is_invertible(&self) -> bool {
        self.range().is_full() && self.domain().is_full() && self.kernel().is_zero() && self.cokernel().is_zero()
    }

    fn check_composable(&self, g: &Self) -> Result<()> {
        if self.source != g.target {
            return Err(Error::SpaceMismatch(format!(
                "source of the left relation (dim {}) differs from the target of the right one (dim {})",
                self.source.dim(),
                g.target.dim()
            )));
        }
        Ok(())
    }

    /// `f × g` inside `X × Ȳ × Y × Z̄`.
    pub fn product_graph(&self, g: &Self) -> Result<Subspace<F>> {
        self.graph.direct_sum(&g.graph)
    }

    /// `(f × g) ∩ (X × Δ_Y × Z)`, a copy of the fiber product `f ×_Y g`.
    pub fn fiber_product(&self, g: &Self) -> Result<Subspace<F>> {
        self.check_composable(g)?;
        let c = middle_diagonal(self.field(), self.x_dim(), self.y_dim(), g.y_dim());
        self.product_graph(g)?.intersect(&c)
    }

    /// Set-theoretic composition `f ∘ g`, to `X` from `Z`: form the product,
    /// intersect with `X × Δ_Y × Z`, project to `X × Z`.
    pub fn compose(&self, g: &Self) -> Result<Self> {
        let fiber = self.fiber_product(g)?;
        let (x, y, z) = (self.x_dim(), self.y_dim(), g.y_dim());
        let outer: Vec<usize> = (0..x).chain(x + 2 * y..x + 2 * y + z).collect();
        let graph = fiber.project_coords(&outer);
        Ok(Self::unchecked(self.target.clone(), g.source.clone(), graph))
    }

    pub fn transversality(&self, g: &Self) -> Result<TransversalityReport> {
        let by_intersection = deficiency_by_intersection(self, g)?;
        let by_codimension = deficiency_by_codimension(self, g)?;
        assert_eq!(
            by_intersection, by_codimension,
            "the two deficiency formulas disagree"
        );
        let fiber_dim = self.fiber_product(g)?.dim();
        Ok(TransversalityReport {
            transversal: by_intersection == 0,
            deficiency: by_intersection,
            fiber_dim,
        })
    }

    pub fn map_field<G: Field>(&self, target_field: &G, f: impl Fn(&F::Elem) -> G::Elem) -> Result<CanonicalRelation<G>> {
        let target = self.target.map_field(target_field, &f)?;
        let source = self.source.map_field(target_field, &f)?;
        let graph = self.graph.map_field(target_field, &f)?;
        CanonicalRelation::new(target, source, graph)
    }
}

impl<F: Field> SymplecticSpace<F> {
    pub fn map_field<G: Field>(&self, target: &G, f: impl Fn(&F::Elem) -> G::Elem) -> Result<SymplecticSpace<G>> {
        SymplecticSpace::from_form(self.form().map_field(target, f))
    }
}

/// `X × Δ_Y × Z` inside `k^(x + y + y + z)`.
pub fn middle_diagonal<F: Field>(field: &F, x: usize, y: usize, z: usize) -> Subspace<F> {
    let total = x + 2 * y + z;
    let mut vectors: Vec<Vec<F::Elem>> = (0..x).map(|i| unit(field, total, i)).collect();
    for j in 0..y {
        let mut v = vec![field.zero(); total];
        v[x + j] = field.one();
        v[x + y + j] = field.one();
        vectors.push(v);
    }
    vectors.extend((0..z).map(|k| unit(field, total, x + 2 * y + k)));
    Subspace::span(field, total, vectors).expect("vectors have total length")
}

/// `dim (f × g) ∩ ({0_X} × Δ_Y × {0_Z})`.
pub fn deficiency_by_intersection<F: Field>(f: &CanonicalRelation<F>, g: &CanonicalRelation<F>) -> Result<usize> {
    f.check_composable(g)?;
    let (x, y, z) = (f.x_dim(), f.y_dim(), g.y_dim());
    let inner = middle_diagonal(f.field(), 0, y, 0);
    let zero = |n| Subspace::zero(f.field(), n);
    let slice = zero(x).direct_sum(&inner)?.direct_sum(&zero(z))?;
    Ok(f.product_graph(g)?.intersect(&slice)?.dim())
}

/// Codimension of `domain(f) + range(g)` in `Y`.
pub fn deficiency_by_codimension<F: Field>(f: &CanonicalRelation<F>, g: &CanonicalRelation<F>) -> Result<usize> {
    f.check_composable(g)?;
    Ok(f.domain().sum(&g.range())?.codim())
}

/// Graph `{(Mx, x)}` of a linear symplectomorphism of `X`.
pub fn graph_of_symplectomorphism<F: Field>(space: &SymplecticSpace<F>, m: &Matrix<F>) -> Result<CanonicalRelation<F>> {
    let d = space.dim();
    check_dim(d, m.rows())?;
    check_dim(d, m.cols())?;
    if !space.preserves_form(m) {
        return Err(Error::NotSymplectic);
    }
    let vectors = (0..d)
        .map(|i| {
            let mut v = m.column(i);
            v.extend(unit(space.field(), d, i));
            v
        })
        .collect();
    let graph = Subspace::span(space.field(), 2 * d, vectors)?;
    Ok(CanonicalRelation::unchecked(space.clone(), space.clone(), graph))
}

/// A lagrangian of `X` read as a relation from or to the point.
pub fn lagrangian_as_relation<F: Field>(
    space: &SymplecticSpace<F>,
    lagrangian: &Subspace<F>,
    direction: PointDirection,
) -> Result<CanonicalRelation<F>> {
    space.check_lagrangian(lagrangian)?;
    let point = SymplecticSpace::point(space.field());
    Ok(match direction {
        PointDirection::FromPoint => CanonicalRelation::unchecked(space.clone(), point, lagrangian.clone()),
        PointDirection::ToPoint => CanonicalRelation::unchecked(point, space.clone(), lagrangian.clone()),
    })
}

/// Cotangent lift of `M : k^a → k^b` (a `b × a` matrix), to `T*k^a` from
/// `T*k^b`: `{((a, Mᵀη), (Ma, η))}`. Both cotangent spaces carry the
/// standard form in coordinates (position, momentum).
pub fn cotangent_lift<F: Field>(m: &Matrix<F>) -> CanonicalRelation<F> {
    let f = m.field();
    let (a, b) = (m.cols(), m.rows());
    let total = 2 * a + 2 * b;
    let mut vectors = Vec::with_capacity(a + b);
    for i in 0..a {
        let mut v = vec![f.zero(); total];
        v[i] = f.one();
        for r in 0..b {
            v[2 * a + r] = m.get(r, i).clone();
        }
        vectors.push(v);
    }
    for j in 0..b {
        let mut v = vec![f.zero(); total];
        for c in 0..a {
            v[a + c] = m.get(j, c).clone();
        }
        v[2 * a + b + j] = f.one();
        vectors.push(v);
    }
    let graph = Subspace::span(f, total, vectors).expect("vectors have total length");
    CanonicalRelation::unchecked(SymplecticSpace::standard(f, a), SymplecticSpace::standard(f, b), graph)
}

/// Core map of a relation that is liftlike with respect to lagrangians
/// `A ⊆ X` and `B ⊆ Y`.
///
/// Returns the matrix of `φ : A → B` in the canonical bases of `A` and `B`
/// when `f ∩ (X × B)` is the graph `{(a, φa)}` of a map defined on all of
/// `A`, and `None` otherwise. For linear relations the tangent condition is
/// the same condition.
pub fn liftlike_core<F: Field>(
    f: &CanonicalRelation<F>,
    a: &Subspace<F>,
    b: &Subspace<F>,
) -> Result<Option<Matrix<F>>> {
    f.target.check_lagrangian(a)?;
    f.source.check_lagrangian(b)?;
    let x = f.x_dim();
    let w = f.graph.intersect(&f.target.full_subspace().direct_sum(b)?)?;
    if !w.is_subspace_of(&a.direct_sum(b)?) {
        return Ok(None);
    }
    let shadow = w.project(0..x);
    if shadow.dim() != w.dim() || shadow != *a {
        return Ok(None);
    }
    let field = f.field();
    let a_coords: Vec<Vec<F::Elem>> = w
        .basis()
        .iter()
        .map(|v| a.coordinates(&v[..x]).expect("first block lies in A"))
        .collect();
    let b_coords: Vec<Vec<F::Elem>> = w
        .basis()
        .iter()
        .map(|v| b.coordinates(&v[x..]).expect("second block lies in B"))
        .collect();
    let a_mat = Matrix::from_columns(field, a.dim(), &a_coords)?;
    let b_mat = Matrix::from_columns(field, b.dim(), &b_coords)?;
    let a_inv = a_mat.inverse().expect("projection onto A is an isomorphism");
    Ok(Some(b_mat.mul(&a_inv)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use num_rational::BigRational;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn qv(xs: &[i64]) -> Vec<BigRational> {
        xs.iter().map(|&x| q(x, 1)).collect()
    }

    fn std1() -> SymplecticSpace<Rationals> {
        SymplecticSpace::standard(&Rationals, 1)
    }

    fn rel(vectors: &[&[i64]]) -> CanonicalRelation<Rationals> {
        CanonicalRelation::from_vectors(std1(), std1(), vectors.iter().map(|v| qv(v)).collect()).unwrap()
    }

    fn l1() -> Subspace<Rationals> {
        Subspace::coordinate(&Rationals, 2, &[0])
    }

    fn l2() -> Subspace<Rationals> {
        Subspace::coordinate(&Rationals, 2, &[1])
    }

    // target block (q, p), source block (q, p)
    fn l1_l2() -> CanonicalRelation<Rationals> {
        rel(&[&[1, 0, 0, 0], &[0, 0, 0, 1]])
    }

    fn l2_l1() -> CanonicalRelation<Rationals> {
        rel(&[&[0, 1, 0, 0], &[0, 0, 1, 0]])
    }

    fn l1_l1() -> CanonicalRelation<Rationals> {
        rel(&[&[1, 0, 0, 0], &[0, 0, 1, 0]])
    }

    fn gamma(a: BigRational) -> CanonicalRelation<Rationals> {
        let m = Matrix::from_rows(&Rationals, 2, vec![vec![a.recip(), q(0, 1)], vec![q(0, 1), a]]).unwrap();
        graph_of_symplectomorphism(&std1(), &m).unwrap()
    }

    #[test]
    fn diagonal_and_product_relations_validate() {
        let delta = CanonicalRelation::identity(&std1());
        assert!(delta.is_valid());
        assert_eq!(delta, rel(&[&[1, 0, 1, 0], &[0, 1, 0, 1]]));
        assert!(l1_l2().is_valid());
    }

    #[test]
    fn non_isotropic_graph_is_rejected() {
        let r = CanonicalRelation::from_vectors(std1(), std1(), vec![qv(&[1, 0, 0, 0]), qv(&[0, 1, 0, 0])]);
        assert!(matches!(
            r,
            Err(Error::NotLagrangian(crate::error::LagrangianDefect::NotIsotropic { .. }))
        ));
    }

    #[test]
    fn transpose_swaps_blocks() {
        let delta = CanonicalRelation::identity(&std1());
        assert_eq!(delta.transpose(), delta);
        assert_eq!(l1_l2().transpose(), l2_l1());
        let g = gamma(q(2, 1));
        assert_eq!(g.transpose(), gamma(q(1, 2)));
        assert_eq!(g.transpose().transpose(), g);
    }

    #[test]
    fn range_domain_apply() {
        let delta = CanonicalRelation::identity(&std1());
        assert!(delta.range().is_full() && delta.domain().is_full());
        assert_eq!(l1_l2().range(), l1());
        assert_eq!(l1_l2().domain(), l2());
        assert_eq!(delta.apply(&l1()).unwrap(), l1());
        assert_eq!(l1_l2().apply(&l2()).unwrap(), l1());
        // (x, 0) ∈ L1 × L2 exactly when x ∈ L1
        assert_eq!(l1_l2().apply(&Subspace::zero(&Rationals, 2)).unwrap(), l1());
        let full = std1().full_subspace();
        assert_eq!(l2_l1().apply(&full).unwrap(), l2_l1().range());
    }

    #[test]
    fn worked_example_compositions() {
        assert_eq!(l1_l2().compose(&l2_l1()).unwrap(), l1_l1());
        assert_eq!(gamma(q(2, 1)).compose(&gamma(q(1, 2))).unwrap(), CanonicalRelation::identity(&std1()));
        let delta = CanonicalRelation::identity(&std1());
        assert_eq!(l1_l2().compose(&delta).unwrap(), l1_l2());
        assert_eq!(delta.compose(&l1_l2()).unwrap(), l1_l2());
    }

    #[test]
    fn deficiency_examples() {
        let r = l1_l2().transversality(&l2_l1()).unwrap();
        assert_eq!(r, TransversalityReport { transversal: false, deficiency: 1, fiber_dim: 3 });
        let r = l1_l1().transversality(&l1_l1()).unwrap();
        assert_eq!(r.deficiency, 1);
        let r = gamma(q(3, 1)).transversality(&gamma(q(5, 1))).unwrap();
        assert!(r.transversal);
        assert_eq!(r.fiber_dim, 2);
    }

    #[test]
    fn middle_mismatch_is_rejected() {
        let big = SymplecticSpace::standard(&Rationals, 2);
        let f = CanonicalRelation::identity(&big);
        assert!(matches!(f.compose(&l1_l2()), Err(Error::SpaceMismatch(_))));
        assert!(matches!(f.transversality(&l1_l2()), Err(Error::SpaceMismatch(_))));
    }

    #[test]
    fn gamma_two_has_expected_basis() {
        let expected = rel(&[&[1, 0, 2, 0], &[0, 2, 0, 1]]);
        assert_eq!(gamma(q(2, 1)), expected);
        let id = Matrix::identity(&Rationals, 2);
        assert_eq!(graph_of_symplectomorphism(&std1(), &id).unwrap(), CanonicalRelation::identity(&std1()));
    }

    #[test]
    fn rotation_is_symplectic_but_shear_of_wrong_kind_is_not() {
        let j = Matrix::from_rows(&Rationals, 2, vec![qv(&[0, 1]), qv(&[-1, 0])]).unwrap();
        assert!(graph_of_symplectomorphism(&std1(), &j).is_ok());
        let s = Matrix::from_rows(&Rationals, 2, vec![qv(&[2, 0]), qv(&[0, 1])]).unwrap();
        assert_eq!(graph_of_symplectomorphism(&std1(), &s), Err(Error::NotSymplectic));
    }

    #[test]
    fn lagrangians_from_and_to_the_point() {
        let from = lagrangian_as_relation(&std1(), &l1(), PointDirection::FromPoint).unwrap();
        assert_eq!(from.range(), l1());
        let to = lagrangian_as_relation(&std1(), &l1(), PointDirection::ToPoint).unwrap();
        assert_eq!(from.transpose(), to);
        // pairing two lagrangians through the point: deficiency is dim(L ∩ L')
        let to_l2 = lagrangian_as_relation(&std1(), &l2(), PointDirection::ToPoint).unwrap();
        let scalar = to_l2.compose(&from).unwrap();
        assert_eq!(scalar.graph().ambient_dim(), 0);
        assert_eq!(to_l2.transversality(&from).unwrap().deficiency, 0);
        assert_eq!(to.transversality(&from).unwrap().deficiency, 1);
        let bad = Subspace::full(&Rationals, 2);
        assert!(lagrangian_as_relation(&std1(), &bad, PointDirection::ToPoint).is_err());
    }

    #[test]
    fn cotangent_lift_examples() {
        let one = Matrix::identity(&Rationals, 1);
        assert_eq!(cotangent_lift(&one), CanonicalRelation::identity(&std1()));
        let zero = Matrix::zeros(&Rationals, 1, 1);
        assert_eq!(cotangent_lift(&zero), l1_l2());
        let two = Matrix::from_rows(&Rationals, 1, vec![qv(&[2])]).unwrap();
        assert_eq!(cotangent_lift(&two), rel(&[&[1, 0, 2, 0], &[0, 2, 0, 1]]));
    }

    #[test]
    fn liftlike_examples() {
        let m = Matrix::from_rows(&Rationals, 3, vec![qv(&[1, 2, 0]), qv(&[0, -1, 3])]).unwrap();
        let lift = cotangent_lift(&m);
        let za = Subspace::coordinate(&Rationals, 6, &[0, 1, 2]);
        let zb = Subspace::coordinate(&Rationals, 4, &[0, 1]);
        assert_eq!(liftlike_core(&lift, &za, &zb).unwrap(), Some(m));

        let delta = CanonicalRelation::identity(&std1());
        assert_eq!(liftlike_core(&delta, &l1(), &l1()).unwrap(), Some(Matrix::identity(&Rationals, 1)));

        let j = Matrix::from_rows(&Rationals, 2, vec![qv(&[0, 1]), qv(&[-1, 0])]).unwrap();
        let rot = graph_of_symplectomorphism(&std1(), &j).unwrap();
        assert_eq!(liftlike_core(&rot, &l1(), &l1()).unwrap(), None);

        let bad = Subspace::full(&Rationals, 2);
        assert!(liftlike_core(&delta, &bad, &l1()).is_err());
    }

    #[test]
    fn finite_field_composition() {
        let f = PrimeField::new(3).unwrap();
        let x = SymplecticSpace::standard(&f, 1);
        let a = CanonicalRelation::from_vectors(x.clone(), x.clone(), vec![vec![1, 0, 0, 0], vec![0, 0, 0, 1]]).unwrap();
        let b = CanonicalRelation::from_vectors(x.clone(), x.clone(), vec![vec![0, 1, 0, 0], vec![0, 0, 1, 0]]).unwrap();
        let c = a.compose(&b).unwrap();
        assert_eq!(c.graph().basis(), &[vec![1, 0, 0, 0], vec![0, 0, 1, 0]]);
    }
}
