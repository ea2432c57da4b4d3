//! Brute-force helpers shared by the integration tests. Nothing here calls
//! the library's own enumeration or composition code.
#![allow(dead_code)]

use canrel_core::field::{Field, PrimeField};
use canrel_core::subspace::Subspace;
use canrel_core::symplectic::SymplecticSpace;
use std::collections::BTreeSet;

/// Every vector of `F_p^n`.
pub fn all_vectors(p: u64, n: usize) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..p).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

/// Every element of a subspace, by running over all coefficient tuples.
pub fn elements(s: &Subspace<PrimeField>) -> Vec<Vec<u64>> {
    let f = s.field();
    let p = f.modulus();
    all_vectors(p, s.dim())
        .into_iter()
        .map(|c| {
            let mut v = vec![0u64; s.ambient_dim()];
            for (coef, b) in c.iter().zip(s.basis()) {
                for (x, y) in v.iter_mut().zip(b) {
                    *x = f.add(x, &f.mul(coef, y));
                }
            }
            v
        })
        .collect()
}

/// Standard symplectic pairing on `F_p^{2n}` computed by hand.
pub fn omega(p: u64, n: usize, u: &[u64], v: &[u64]) -> u64 {
    let mut s = 0u64;
    for i in 0..n {
        s = (s + u[i] * v[n + i]) % p;
        s = (s + (p - (u[n + i] * v[i]) % p)) % p;
    }
    s
}

/// All lagrangians of the standard `F_p^{2n}`: span every `n`-tuple of
/// vectors, keep the `n`-dimensional spans on which the pairing vanishes
/// identically, deduplicate.
pub fn naive_lagrangians(p: u64, n: usize) -> BTreeSet<Subspace<PrimeField>> {
    let f = PrimeField::new(p).unwrap();
    let vectors = all_vectors(p, 2 * n);
    let mut out = BTreeSet::new();
    let mut idx = vec![0usize; n];
    loop {
        let chosen: Vec<Vec<u64>> = idx.iter().map(|&i| vectors[i].clone()).collect();
        let isotropic = chosen
            .iter()
            .all(|u| chosen.iter().all(|v| omega(p, n, u, v) == 0));
        if isotropic {
            let s = Subspace::span(&f, 2 * n, chosen).unwrap();
            if s.dim() == n {
                out.insert(s);
            }
        }
        let mut k = 0;
        loop {
            if k == n {
                return out;
            }
            idx[k] += 1;
            if idx[k] < vectors.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

pub fn fp(p: u64) -> PrimeField {
    PrimeField::new(p).unwrap()
}

pub fn std_space(p: u64, n: usize) -> SymplecticSpace<PrimeField> {
    SymplecticSpace::standard(&fp(p), n)
}
