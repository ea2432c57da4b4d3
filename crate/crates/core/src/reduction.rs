//! Linear coisotropic reduction.
//!
//! For a coisotropic `C ⊆ X` the reduced space is `X_C = C / C^⊥` with the
//! form induced from `X`, and `r_C = {([y], y) : y ∈ C}` is the reduction
//! relation to `X_C` from `X`.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::relation::{lagrangian_as_relation, middle_diagonal, CanonicalRelation, PointDirection, TransversalityReport};
use crate::subspace::{quotient_map, Subspace};
use crate::symplectic::SymplecticSpace;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionData<F: Field> {
    pub ambient: SymplecticSpace<F>,
    pub coisotropic: Subspace<F>,
    /// `C^⊥`, contained in `C`.
    pub kernel: Subspace<F>,
    pub reduced: SymplecticSpace<F>,
    /// Coordinates on `X_C`, as a `dim X_C × dim X` matrix whose restriction
    /// to `C` has kernel `C^⊥`.
    pub projection: Matrix<F>,
    /// Vectors of `C` sent to the standard basis of `X_C`.
    pub lifts: Vec<Vec<F::Elem>>,
    /// `r_C`, to `X_C` from `X`.
    pub relation: CanonicalRelation<F>,
}

pub fn reduce_space<F: Field>(space: &SymplecticSpace<F>, coisotropic: &Subspace<F>) -> Result<ReductionData<F>> {
    let kernel = space.orthogonal(coisotropic)?;
    if !kernel.is_subspace_of(coisotropic) {
        return Err(Error::NotCoisotropic);
    }
    let q = quotient_map(&kernel, coisotropic)?;
    let f = space.field();
    let m = q.lifts.len();
    let form = Matrix::from_fn(f, m, m, |i, j| space.pairing(&q.lifts[i], &q.lifts[j]));
    let reduced = SymplecticSpace::from_form(form).expect("the induced form on C/C^⊥ is nondegenerate");
    let vectors = coisotropic
        .basis()
        .iter()
        .map(|c| {
            let mut v = q.map.mul_vec(c).expect("length dim X");
            v.extend(c.iter().cloned());
            v
        })
        .collect();
    let relation = CanonicalRelation::from_vectors(reduced.clone(), space.clone(), vectors)?;
    Ok(ReductionData {
        ambient: space.clone(),
        coisotropic: coisotropic.clone(),
        kernel,
        reduced,
        projection: q.map,
        lifts: q.lifts,
        relation,
    })
}

/// `L_C` together with whether the reduction of `L` is transversal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedLagrangian<F: Field> {
    pub lagrangian: Subspace<F>,
    pub transversal: bool,
}

/// `L_C = (L ∩ C)/(L ∩ C^⊥)`, computed as the composition of `r_C` with
/// `L` read as a relation from the point.
pub fn reduce_lagrangian<F: Field>(data: &ReductionData<F>, lagrangian: &Subspace<F>) -> Result<ReducedLagrangian<F>> {
    let from_point = lagrangian_as_relation(&data.ambient, lagrangian, PointDirection::FromPoint)?;
    let composed = data.relation.compose(&from_point)?;
    let report = data.relation.transversality(&from_point)?;
    let direct = lagrangian.sum(&data.coisotropic)?.is_full();
    assert_eq!(
        report.transversal, direct,
        "transversality of the composition must match L + C = X"
    );
    Ok(ReducedLagrangian {
        lagrangian: composed.graph().clone(),
        transversal: report.transversal,
    })
}

/// `f = r_range^t ∘ f_red ∘ r_domain`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization<F: Field> {
    /// Reduction of the target at the range of `f`.
    pub range_reduction: ReductionData<F>,
    /// Symplectomorphism between the reduced spaces.
    pub reduced: CanonicalRelation<F>,
    /// Reduction of the source at the domain of `f`.
    pub domain_reduction: ReductionData<F>,
}

impl<F: Field> Factorization<F> {
    pub fn recompose(&self) -> Result<CanonicalRelation<F>> {
        self.range_reduction
            .relation
            .transpose()
            .compose(&self.reduced)?
            .compose(&self.domain_reduction.relation)
    }

    /// Reports for the two compositions in [`Self::recompose`], left first.
    pub fn factor_reports(&self) -> Result<(TransversalityReport, TransversalityReport)> {
        let left = self.range_reduction.relation.transpose();
        let first = left.transversality(&self.reduced)?;
        let second = left.compose(&self.reduced)?.transversality(&self.domain_reduction.relation)?;
        Ok((first, second))
    }
}

pub fn factorize<F: Field>(f: &CanonicalRelation<F>) -> Result<Factorization<F>> {
    let range_reduction = reduce_space(f.target(), &f.range())?;
    let domain_reduction = reduce_space(f.source(), &f.domain())?;
    let reduced = range_reduction
        .relation
        .compose(f)?
        .compose(&domain_reduction.relation.transpose())?;
    debug_assert!(reduced.is_invertible());
    Ok(Factorization {
        range_reduction,
        reduced,
        domain_reduction,
    })
}

/// Composition computed by reducing `f × g ⊆ X × Ȳ × Y × Z̄` at the
/// coisotropic `X × Δ_Y × Z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ViaReduction<F: Field> {
    pub relation: CanonicalRelation<F>,
    /// Whether `f × g` is transversal to `X × Δ_Y × Z`.
    pub transversal: bool,
}

pub fn compose_via_reduction<F: Field>(f: &CanonicalRelation<F>, g: &CanonicalRelation<F>) -> Result<ViaReduction<F>> {
    if f.source() != g.target() {
        return Err(Error::SpaceMismatch("middle spaces differ".to_string()));
    }
    let field = f.field();
    let (x, y, z) = (f.target().dim(), f.source().dim(), g.source().dim());
    let big = f.ambient().product(&g.ambient())?;
    let c = middle_diagonal(field, x, y, z);
    let data = reduce_space(&big, &c)?;
    let reduced = reduce_lagrangian(&data, &f.product_graph(g)?)?;

    // X × Z̄ → X_C through the section (x, z) ↦ (x, 0, 0, z)
    let total = x + 2 * y + z;
    let section = Matrix::from_fn(field, total, x + z, |i, j| {
        let hit = (j < x && i == j) || (j >= x && i == j + 2 * y);
        if hit {
            field.one()
        } else {
            field.zero()
        }
    });
    let to_reduced = data.projection.mul(&section)?;
    let outer = f.target().product(&g.source().bar())?;
    assert!(
        to_reduced.transpose().mul(data.reduced.form())?.mul(&to_reduced)? == *outer.form(),
        "X × Z̄ → X_C must be symplectic"
    );
    let from_reduced = to_reduced.inverse().expect("X × Z̄ ≅ X_C");
    let graph = reduced.lagrangian.image_under(&from_reduced)?;
    let relation = CanonicalRelation::new(f.target().clone(), g.source().clone(), graph)?;
    Ok(ViaReduction {
        relation,
        transversal: reduced.transversal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::relation::cotangent_lift;
    use num_rational::BigRational;

    fn qv(xs: &[i64]) -> Vec<BigRational> {
        xs.iter().map(|&x| BigRational::from_integer(x.into())).collect()
    }

    fn std(n: usize) -> SymplecticSpace<Rationals> {
        SymplecticSpace::standard(&Rationals, n)
    }

    #[test]
    fn reducing_at_everything_is_trivial() {
        let x = std(2);
        let data = reduce_space(&x, &x.full_subspace()).unwrap();
        assert_eq!(data.reduced, x);
        assert_eq!(data.relation, CanonicalRelation::identity(&x));
    }

    #[test]
    fn reducing_at_a_lagrangian_gives_the_point() {
        let x = std(1);
        let l1 = Subspace::coordinate(&Rationals, 2, &[0]);
        let data = reduce_space(&x, &l1).unwrap();
        assert!(data.reduced.is_point());
        let expected = lagrangian_as_relation(&x, &l1, PointDirection::ToPoint).unwrap();
        assert_eq!(data.relation, expected);
    }

    #[test]
    fn hyperplane_reduction() {
        // coordinates (q1, q2, p1, p2); C = {p2 = 0}, C^⊥ = <e_q2>
        let x = std(2);
        let c = Subspace::coordinate(&Rationals, 4, &[0, 1, 2]);
        let data = reduce_space(&x, &c).unwrap();
        assert_eq!(data.kernel, Subspace::coordinate(&Rationals, 4, &[1]));
        assert_eq!(data.lifts, vec![qv(&[1, 0, 0, 0]), qv(&[0, 0, 1, 0])]);
        assert_eq!(data.reduced, std(1));
        let expected = CanonicalRelation::from_vectors(
            std(1),
            x.clone(),
            vec![qv(&[1, 0, 1, 0, 0, 0]), qv(&[0, 0, 0, 1, 0, 0]), qv(&[0, 1, 0, 0, 1, 0])],
        )
        .unwrap();
        assert_eq!(data.relation, expected);

        let zero_section = Subspace::coordinate(&Rationals, 4, &[0, 1]);
        let r = reduce_lagrangian(&data, &zero_section).unwrap();
        assert_eq!(r.lagrangian, Subspace::coordinate(&Rationals, 2, &[0]));
        assert!(!r.transversal);

        let tilted = Subspace::coordinate(&Rationals, 4, &[0, 3]);
        let r = reduce_lagrangian(&data, &tilted).unwrap();
        assert_eq!(r.lagrangian, Subspace::coordinate(&Rationals, 2, &[0]));
        assert!(r.transversal);
    }

    #[test]
    fn non_coisotropic_is_rejected() {
        let x = std(2);
        let line_pair = Subspace::coordinate(&Rationals, 4, &[0, 2]);
        assert_eq!(reduce_space(&x, &line_pair), Err(Error::NotCoisotropic));
    }

    #[test]
    fn reduction_relation_is_a_left_inverse_of_its_transpose() {
        let x = std(2);
        let c = Subspace::coordinate(&Rationals, 4, &[0, 1, 2]);
        let data = reduce_space(&x, &c).unwrap();
        let rr = data.relation.compose(&data.relation.transpose()).unwrap();
        assert_eq!(rr, CanonicalRelation::identity(&data.reduced));
    }

    #[test]
    fn factorization_of_product_relation() {
        let x = std(1);
        let f = CanonicalRelation::from_vectors(x.clone(), x.clone(), vec![qv(&[1, 0, 0, 0]), qv(&[0, 0, 0, 1])])
            .unwrap();
        let fact = factorize(&f).unwrap();
        assert!(fact.range_reduction.reduced.is_point());
        assert!(fact.domain_reduction.reduced.is_point());
        assert!(fact.reduced.is_identity());
        assert_eq!(fact.recompose().unwrap(), f);
        let (a, b) = fact.factor_reports().unwrap();
        assert!(a.transversal && b.transversal);
    }

    #[test]
    fn factorization_of_a_lift() {
        let f3 = PrimeField::new(3).unwrap();
        let m = Matrix::from_rows(&f3, 2, vec![vec![1, 2]]).unwrap();
        let lift = cotangent_lift(&m);
        let fact = factorize(&lift).unwrap();
        assert!(fact.reduced.is_invertible());
        assert_eq!(fact.recompose().unwrap(), lift);
    }

    #[test]
    fn composition_through_reduction_matches_direct() {
        let x = std(1);
        let f = CanonicalRelation::from_vectors(x.clone(), x.clone(), vec![qv(&[1, 0, 0, 0]), qv(&[0, 0, 0, 1])])
            .unwrap();
        let g = f.transpose();
        let via = compose_via_reduction(&f, &g).unwrap();
        assert_eq!(via.relation, f.compose(&g).unwrap());
        assert!(!via.transversal);
        let delta = CanonicalRelation::identity(&x);
        let via = compose_via_reduction(&delta, &delta).unwrap();
        assert_eq!(via.relation, delta);
        assert!(via.transversal);
    }
}
