mod common;

use canrel_core::field::{Field, Rationals};
use canrel_core::random::{random_coisotropic, random_lagrangian, random_relation};
use canrel_core::reduction::{compose_via_reduction, factorize, reduce_lagrangian, reduce_space};
use canrel_core::relation::CanonicalRelation;
use canrel_core::symplectic::SymplecticSpace;
use common::fp;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn via_reduction_agrees<F: Field>(field: &F, samples: usize, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let spaces: Vec<_> = (0..3).map(|_| SymplecticSpace::standard(field, rng.gen_range(1..=2))).collect();
        let f = random_relation(&spaces[0], &spaces[1], &mut rng);
        let g = random_relation(&spaces[1], &spaces[2], &mut rng);
        let via = compose_via_reduction(&f, &g).unwrap();
        assert_eq!(via.relation, f.compose(&g).unwrap());
        assert_eq!(via.transversal, f.transversality(&g).unwrap().transversal);
    }
}

#[test]
fn composition_by_reduction_over_rationals_and_f3() {
    via_reduction_agrees(&Rationals, 60, 5);
    via_reduction_agrees(&fp(3), 100, 6);
}

#[test]
fn factorization_reconstructs_relations() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for field_seed in 0..2 {
        let field = fp(if field_seed == 0 { 3 } else { 5 });
        for _ in 0..60 {
            let x = SymplecticSpace::standard(&field, rng.gen_range(1..=2));
            let y = SymplecticSpace::standard(&field, rng.gen_range(1..=2));
            let f = random_relation(&x, &y, &mut rng);
            let fact = factorize(&f).unwrap();
            assert!(fact.reduced.is_invertible());
            assert_eq!(fact.recompose().unwrap(), f);
            let (a, b) = fact.factor_reports().unwrap();
            assert!(a.transversal && b.transversal);
        }
    }
}

#[test]
fn reduction_relation_is_a_coisometry() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let field = fp(3);
    for _ in 0..60 {
        let x = SymplecticSpace::standard(&field, rng.gen_range(1..=3));
        let c = random_coisotropic(&x, &mut rng);
        let data = reduce_space(&x, &c).unwrap();
        assert_eq!(data.reduced.dim(), 2 * c.dim() - x.dim());
        let r = &data.relation;
        assert_eq!(r.compose(&r.transpose()).unwrap(), CanonicalRelation::identity(&data.reduced));
        let l = random_lagrangian(&x, &mut rng);
        let reduced = reduce_lagrangian(&data, &l).unwrap();
        assert!(data.reduced.is_lagrangian(&reduced.lagrangian));
    }
}

#[test]
fn reduced_lagrangian_is_quotient_of_intersections() {
    // (L ∩ C)/(L ∩ C^⊥) under the projection should give L_C directly.
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..60 {
        let x = SymplecticSpace::standard(&Rationals, rng.gen_range(1..=2));
        let c = random_coisotropic(&x, &mut rng);
        let data = reduce_space(&x, &c).unwrap();
        let l = random_lagrangian(&x, &mut rng);
        let meet = l.intersect(&c).unwrap();
        let projected = meet.image_under(&data.projection).unwrap();
        assert_eq!(reduce_lagrangian(&data, &l).unwrap().lagrangian, projected);
    }
}
