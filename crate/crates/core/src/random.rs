//! Random objects for sampling harnesses and property tests.
//!
//! Vectors are sparse on purpose: a third of the coordinates are zero, so
//! that degenerate (non-transversal) configurations turn up regularly even
//! over ℚ.

use rand::Rng;

use crate::field::Field;
use crate::matrix::Matrix;
use crate::relation::{graph_of_symplectomorphism, CanonicalRelation};
use crate::subspace::Subspace;
use crate::symplectic::SymplecticSpace;

pub fn random_vector<F: Field, R: Rng + ?Sized>(field: &F, n: usize, rng: &mut R) -> Vec<F::Elem> {
    (0..n)
        .map(|_| {
            if rng.gen_ratio(1, 3) {
                field.zero()
            } else {
                field.random_elem(rng)
            }
        })
        .collect()
}

pub fn random_matrix<F: Field, R: Rng + ?Sized>(field: &F, rows: usize, cols: usize, rng: &mut R) -> Matrix<F> {
    let data = (0..rows).map(|_| random_vector(field, cols, rng)).collect();
    Matrix::from_rows(field, cols, data).expect("rows have the requested width")
}

/// A subspace of exactly the requested dimension.
pub fn random_subspace<F: Field, R: Rng + ?Sized>(field: &F, n: usize, dim: usize, rng: &mut R) -> Subspace<F> {
    assert!(dim <= n);
    let mut s = Subspace::zero(field, n);
    while s.dim() < dim {
        let v = random_vector(field, n, rng);
        if !s.contains(&v) {
            s = s.sum(&Subspace::span(field, n, vec![v]).expect("length n")).expect("same ambient");
        }
    }
    s
}

/// Random element of `perp` not in `s`, assuming `s ⊊ perp`.
fn random_extension<F: Field, R: Rng + ?Sized>(s: &Subspace<F>, perp: &Subspace<F>, rng: &mut R) -> Vec<F::Elem> {
    let f = s.field();
    loop {
        let coeffs = random_vector(f, perp.dim(), rng);
        let mut v = vec![f.zero(); perp.ambient_dim()];
        for (c, b) in coeffs.iter().zip(perp.basis()) {
            for (x, y) in v.iter_mut().zip(b) {
                *x = f.add(x, &f.mul(c, y));
            }
        }
        if !s.contains(&v) {
            return v;
        }
    }
}

/// Grows an isotropic subspace one random vector at a time.
pub fn random_lagrangian<F: Field, R: Rng + ?Sized>(space: &SymplecticSpace<F>, rng: &mut R) -> Subspace<F> {
    let f = space.field();
    let mut s = space.zero_subspace();
    while s.dim() < space.half_dim() {
        let perp = space.orthogonal(&s).expect("member of the space");
        let v = random_extension(&s, &perp, rng);
        s = s.sum(&Subspace::span(f, space.dim(), vec![v]).expect("length matches")).expect("same ambient");
    }
    debug_assert!(space.is_lagrangian(&s));
    s
}

/// `S + S^⊥` for a random `S`, which is always coisotropic.
pub fn random_coisotropic<F: Field, R: Rng + ?Sized>(space: &SymplecticSpace<F>, rng: &mut R) -> Subspace<F> {
    let dim = rng.gen_range(0..=space.dim());
    let s = random_subspace(space.field(), space.dim(), dim, rng);
    let perp = space.orthogonal(&s).expect("member of the space");
    s.sum(&perp).expect("same ambient")
}

/// Product of random symplectic transvections `x ↦ x + c·ω(v, x)·v`.
pub fn random_symplectic_matrix<F: Field, R: Rng + ?Sized>(space: &SymplecticSpace<F>, rng: &mut R) -> Matrix<F> {
    let f = space.field();
    let d = space.dim();
    let mut m = Matrix::identity(f, d);
    for _ in 0..d + 1 {
        let v = random_vector(f, d, rng);
        let c = f.random_elem(rng);
        // row vector vᵀΩ
        let vt_omega = space.form().transpose().mul_vec(&v).expect("length d");
        let t = Matrix::from_fn(f, d, d, |i, j| {
            let base = if i == j { f.one() } else { f.zero() };
            f.add(&base, &f.mul(&c, &f.mul(&v[i], &vt_omega[j])))
        });
        m = t.mul(&m).expect("square");
    }
    debug_assert!(space.preserves_form(&m));
    m
}

pub fn random_symplectomorphism_graph<F: Field, R: Rng + ?Sized>(
    space: &SymplecticSpace<F>,
    rng: &mut R,
) -> CanonicalRelation<F> {
    let m = random_symplectic_matrix(space, rng);
    graph_of_symplectomorphism(space, &m).expect("transvections preserve the form")
}

/// A random relation to `target` from `source`, drawn from a mix of generic
/// lagrangians, products `L × L'`, and (for endorelations) graphs.
pub fn random_relation<F: Field, R: Rng + ?Sized>(
    target: &SymplecticSpace<F>,
    source: &SymplecticSpace<F>,
    rng: &mut R,
) -> CanonicalRelation<F> {
    let kind = rng.gen_range(0..4);
    match kind {
        0 => {
            let a = random_lagrangian(target, rng);
            let b = random_lagrangian(source, rng);
            let graph = a.direct_sum(&b).expect("same field");
            CanonicalRelation::new(target.clone(), source.clone(), graph).expect("product of lagrangians")
        }
        1 if target == source => random_symplectomorphism_graph(target, rng),
        _ => {
            let ambient = target.product(&source.bar()).expect("same field");
            let graph = random_lagrangian(&ambient, rng);
            CanonicalRelation::new(target.clone(), source.clone(), graph).expect("lagrangian by construction")
        }
    }
}
