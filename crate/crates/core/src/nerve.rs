//! The nerve of the endomorphism monoid of a single symplectic space.
//!
//! A `k`-simplex is a `k`-tuple of relations from `X` to itself. Faces
//! compose adjacent entries or drop an end; degeneracies insert `Δ_X`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::random::random_relation;
use crate::relation::CanonicalRelation;
use crate::subspace::{unit, Subspace};
use crate::symplectic::SymplecticSpace;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NerveTuple<F: Field> {
    space: SymplecticSpace<F>,
    entries: Vec<CanonicalRelation<F>>,
}

impl<F: Field> NerveTuple<F> {
    pub fn new(space: &SymplecticSpace<F>, entries: Vec<CanonicalRelation<F>>) -> Result<Self> {
        for e in &entries {
            if e.target() != space || e.source() != space {
                return Err(Error::SpaceMismatch("nerve entries must be endorelations of one space".to_string()));
            }
        }
        Ok(NerveTuple {
            space: space.clone(),
            entries,
        })
    }

    /// The unique 0-simplex.
    pub fn vertex(space: &SymplecticSpace<F>) -> Self {
        NerveTuple {
            space: space.clone(),
            entries: Vec::new(),
        }
    }

    pub fn space(&self) -> &SymplecticSpace<F> {
        &self.space
    }

    pub fn k(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[CanonicalRelation<F>] {
        &self.entries
    }

    /// `d_i`: drop the first entry (`i = 0`), the last (`i = k`), or compose
    /// entries `i` and `i + 1` (numbered from 1).
    pub fn face(&self, i: usize) -> Result<Self> {
        let k = self.k();
        if k == 0 || i > k {
            return Err(Error::IndexOutOfRange { index: i, max: k });
        }
        let mut entries = self.entries.clone();
        if i == 0 {
            entries.remove(0);
        } else if i == k {
            entries.pop();
        } else {
            let right = entries.remove(i);
            entries[i - 1] = entries[i - 1].compose(&right)?;
        }
        Ok(NerveTuple {
            space: self.space.clone(),
            entries,
        })
    }

    /// `s_i`: insert `Δ_X` so that it becomes entry `i` (numbered from 0).
    pub fn degeneracy(&self, i: usize) -> Result<Self> {
        if i > self.k() {
            return Err(Error::IndexOutOfRange { index: i, max: self.k() });
        }
        let mut entries = self.entries.clone();
        entries.insert(i, CanonicalRelation::identity(&self.space));
        Ok(NerveTuple {
            space: self.space.clone(),
            entries,
        })
    }

    /// Whether `L_1 × … × L_k` is transversal in `(X × X̄)^k` to
    /// `X × Δ^{k−1} × X̄`.
    pub fn is_completely_transversal(&self) -> bool {
        let k = self.k();
        if k <= 1 {
            return true;
        }
        let f = self.space.field();
        let n = self.space.dim();
        let ambient = 2 * n * k;
        let mut product = self.entries[0].graph().clone();
        for e in &self.entries[1..] {
            product = product.direct_sum(e.graph()).expect("same field");
        }
        // coordinates are (x_1, y_1, x_2, y_2, …, x_k, y_k)
        let mut vectors = Vec::with_capacity(n * (k + 1));
        for j in 0..n {
            vectors.push(unit(f, ambient, j));
            vectors.push(unit(f, ambient, ambient - n + j));
        }
        for i in 0..k - 1 {
            let y_i = (2 * i + 1) * n;
            let x_next = (2 * i + 2) * n;
            for j in 0..n {
                let mut v = unit(f, ambient, y_i + j);
                v[x_next + j] = f.one();
                vectors.push(v);
            }
        }
        let multidiagonal = Subspace::span(f, ambient, vectors).expect("vectors have the ambient length");
        product.sum(&multidiagonal).expect("same ambient").is_full()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityViolation<F: Field> {
    /// For instance `d_1 d_3 = d_2 d_1`.
    pub identity: String,
    pub tuple: NerveTuple<F>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialReport<F: Field> {
    pub tuples_checked: usize,
    pub identities_checked: usize,
    pub violations: Vec<IdentityViolation<F>>,
}

impl<F: Field> SimplicialReport<F> {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks every simplicial identity applicable to `tuples`.
pub fn check_identities_on<F: Field>(tuples: &[NerveTuple<F>]) -> SimplicialReport<F> {
    let mut report = SimplicialReport {
        tuples_checked: tuples.len(),
        identities_checked: 0,
        violations: Vec::new(),
    };
    for t in tuples {
        check_tuple(t, &mut report);
    }
    report
}

fn check_tuple<F: Field>(t: &NerveTuple<F>, report: &mut SimplicialReport<F>) {
    let k = t.k();
    let mut record = |name: String, lhs: NerveTuple<F>, rhs: NerveTuple<F>| {
        report.identities_checked += 1;
        if lhs != rhs {
            report.violations.push(IdentityViolation {
                identity: name,
                tuple: t.clone(),
            });
        }
    };
    let d = |s: &NerveTuple<F>, i: usize| s.face(i).expect("face index in range");
    let s = |x: &NerveTuple<F>, i: usize| x.degeneracy(i).expect("degeneracy index in range");
    for j in 2..=k {
        for i in 0..j {
            record(format!("d_{i} d_{j} = d_{} d_{i}", j - 1), d(&d(t, j), i), d(&d(t, i), j - 1));
        }
    }
    for j in 0..=k {
        for i in 0..=j {
            record(format!("s_{i} s_{j} = s_{} s_{i}", j + 1), s(&s(t, j), i), s(&s(t, i), j + 1));
        }
    }
    for j in 0..=k {
        let sj = s(t, j);
        for i in 0..=k + 1 {
            let lhs = d(&sj, i);
            if i < j {
                record(format!("d_{i} s_{j} = s_{} d_{i}", j - 1), lhs, s(&d(t, i), j - 1));
            } else if i == j || i == j + 1 {
                record(format!("d_{i} s_{j} = id"), lhs, t.clone());
            } else {
                record(format!("d_{i} s_{j} = s_{j} d_{}", i - 1), lhs, s(&d(t, i - 1), j));
            }
        }
    }
}

/// Random `k`-tuple of endorelations of `space`.
pub fn random_tuple<F: Field, R: rand::Rng + ?Sized>(space: &SymplecticSpace<F>, k: usize, rng: &mut R) -> NerveTuple<F> {
    let entries = (0..k).map(|_| random_relation(space, space, rng)).collect();
    NerveTuple {
        space: space.clone(),
        entries,
    }
}

/// Checks the identities on `samples` random `k`-tuples drawn from `seed`.
pub fn check_simplicial_identities<F: Field>(
    space: &SymplecticSpace<F>,
    k: usize,
    samples: usize,
    seed: u64,
) -> SimplicialReport<F> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tuples: Vec<_> = (0..samples).map(|_| random_tuple(space, k, &mut rng)).collect();
    check_identities_on(&tuples)
}
