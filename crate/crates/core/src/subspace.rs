//! Linear subspaces of `k^n` in canonical form.
//!
//! A subspace is stored by the unique basis in reduced column echelon
//! form: each basis column has a leading 1 (searching top to bottom), the
//! pivot rows are zero in every other column, and columns are ordered by
//! pivot row. Equality of subspaces is therefore equality of bases.

use std::cmp::Ordering;
use std::ops::Range;

use crate::error::{check_dim, Error, Result};
use crate::field::Field;
use crate::matrix::{row_reduce, Matrix};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace<F: Field> {
    field: F,
    ambient: usize,
    basis: Vec<Vec<F::Elem>>,
}

impl<F: Field> Subspace<F> {
    /// Canonical span of `vectors` inside `k^ambient`.
    pub fn span(field: &F, ambient: usize, vectors: Vec<Vec<F::Elem>>) -> Result<Self> {
        let mut rows = vectors;
        for v in &rows {
            check_dim(ambient, v.len())?;
        }
        row_reduce(field, &mut rows, ambient);
        Ok(Subspace {
            field: field.clone(),
            ambient,
            basis: rows,
        })
    }

    pub fn zero(field: &F, ambient: usize) -> Self {
        Subspace {
            field: field.clone(),
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn full(field: &F, ambient: usize) -> Self {
        let basis = (0..ambient).map(|i| unit(field, ambient, i)).collect();
        Subspace {
            field: field.clone(),
            ambient,
            basis,
        }
    }

    /// Span of the standard basis vectors with the given indices.
    pub fn coordinate(field: &F, ambient: usize, indices: &[usize]) -> Self {
        let vectors = indices.iter().map(|&i| unit(field, ambient, i)).collect();
        Self::span(field, ambient, vectors).expect("unit vectors have ambient length")
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn codim(&self) -> usize {
        self.ambient - self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient
    }

    /// Canonical basis vectors, ordered by pivot.
    pub fn basis(&self) -> &[Vec<F::Elem>] {
        &self.basis
    }

    /// Canonical basis as the columns of an `ambient × dim` matrix.
    pub fn basis_matrix(&self) -> Matrix<F> {
        Matrix::from_columns(&self.field, self.ambient, &self.basis).expect("basis has ambient length")
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.basis
            .iter()
            .map(|v| v.iter().position(|x| !self.field.is_zero(x)).expect("basis vectors are nonzero"))
            .collect()
    }

    /// Coordinates of `v` in the canonical basis, or `None` if `v` is not in
    /// the subspace.
    pub fn coordinates(&self, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
        if v.len() != self.ambient {
            return None;
        }
        let f = &self.field;
        let coords: Vec<F::Elem> = self.pivots().into_iter().map(|p| v[p].clone()).collect();
        let mut residual = v.to_vec();
        for (c, b) in coords.iter().zip(&self.basis) {
            if f.is_zero(c) {
                continue;
            }
            for (r, x) in residual.iter_mut().zip(b) {
                *r = f.sub(r, &f.mul(c, x));
            }
        }
        residual.iter().all(|x| f.is_zero(x)).then_some(coords)
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.basis.iter().all(|v| other.contains(v))
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.ensure_compatible(other)?;
        let vectors = self.basis.iter().chain(&other.basis).cloned().collect();
        Self::span(&self.field, self.ambient, vectors)
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.ensure_compatible(other)?;
        if self.is_full() {
            return Ok(other.clone());
        }
        if other.is_full() {
            return Ok(self.clone());
        }
        let equations: Vec<_> = self
            .annihilator()
            .basis
            .into_iter()
            .chain(other.annihilator().basis)
            .collect();
        let m = Matrix::from_rows(&self.field, self.ambient, equations)?;
        Ok(m.kernel())
    }

    /// `{w : v·w = 0 for all v in self}` under the standard dot product.
    pub fn annihilator(&self) -> Self {
        let m = Matrix::from_rows(&self.field, self.ambient, self.basis.clone()).expect("basis has ambient length");
        m.kernel()
    }

    /// `self × other` inside `k^(a+b)`, `self` in the leading coordinates.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let total = self.ambient + other.ambient;
        let f = &self.field;
        let mut vectors = Vec::with_capacity(self.dim() + other.dim());
        for v in &self.basis {
            let mut w = v.clone();
            w.resize(total, f.zero());
            vectors.push(w);
        }
        for v in &other.basis {
            let mut w = vec![f.zero(); self.ambient];
            w.extend(v.iter().cloned());
            vectors.push(w);
        }
        Self::span(f, total, vectors)
    }

    /// Image under the coordinate projection onto `coords`.
    pub fn project(&self, coords: Range<usize>) -> Self {
        assert!(coords.end <= self.ambient, "projection range outside ambient space");
        let vectors = self.basis.iter().map(|v| v[coords.clone()].to_vec()).collect();
        Self::span(&self.field, coords.len(), vectors).expect("projected vectors share length")
    }

    /// Image under the coordinate projection keeping the listed coordinates
    /// in the listed order.
    pub fn project_coords(&self, coords: &[usize]) -> Self {
        let vectors = self
            .basis
            .iter()
            .map(|v| coords.iter().map(|&i| v[i].clone()).collect())
            .collect();
        Self::span(&self.field, coords.len(), vectors).expect("projected vectors share length")
    }

    /// Image under a permutation/selection of coordinates: output coordinate
    /// `i` is input coordinate `coords[i]`. Same as [`Self::project_coords`]
    /// but named for the permutation use.
    pub fn permute(&self, coords: &[usize]) -> Self {
        self.project_coords(coords)
    }

    /// Image `M(self)`.
    pub fn image_under(&self, m: &Matrix<F>) -> Result<Self> {
        check_dim(self.ambient, m.cols())?;
        let vectors = self
            .basis
            .iter()
            .map(|v| m.mul_vec(v))
            .collect::<Result<Vec<_>>>()?;
        Self::span(&self.field, m.rows(), vectors)
    }

    /// Preimage `{v : Mv ∈ self}`.
    pub fn preimage_under(&self, m: &Matrix<F>) -> Result<Self> {
        check_dim(self.ambient, m.rows())?;
        let ann = self.annihilator();
        if ann.is_zero() {
            return Ok(Self::full(&self.field, m.cols()));
        }
        let a = Matrix::from_rows(&self.field, self.ambient, ann.basis)?;
        Ok(a.mul(m)?.kernel())
    }

    pub fn map_field<G: Field>(&self, target: &G, f: impl Fn(&F::Elem) -> G::Elem) -> Result<Subspace<G>> {
        let vectors = self.basis.iter().map(|v| v.iter().map(&f).collect()).collect();
        Subspace::span(target, self.ambient, vectors)
    }

    fn ensure_compatible(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        check_dim(self.ambient, other.ambient)
    }
}

impl<F: Field> PartialOrd for Subspace<F> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical-basis lexicographic order (ambient dimension first).
impl<F: Field> Ord for Subspace<F> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ambient
            .cmp(&other.ambient)
            .then_with(|| self.basis.cmp(&other.basis))
    }
}

pub(crate) fn unit<F: Field>(field: &F, n: usize, i: usize) -> Vec<F::Elem> {
    let mut v = vec![field.zero(); n];
    v[i] = field.one();
    v
}

/// Coordinates on a quotient `of / sub`, with a section back into `of`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientMap<F: Field> {
    /// `(dim of − dim sub) × ambient`; restricted to `of` it is surjective
    /// with kernel exactly `sub`.
    pub map: Matrix<F>,
    /// Vectors of `of` sent to the standard basis of the quotient.
    pub lifts: Vec<Vec<F::Elem>>,
}

/// Deterministic quotient coordinates. The complement is built from the
/// canonical basis vectors of `of`, taken in order, that are not already in
/// the span of `sub` and earlier choices; it is then extended to all of
/// `k^n` by standard vectors so that the map is defined on the whole space.
pub fn quotient_map<F: Field>(sub: &Subspace<F>, of: &Subspace<F>) -> Result<QuotientMap<F>> {
    sub.ensure_compatible(of)?;
    if !sub.is_subspace_of(of) {
        return Err(Error::NotContained);
    }
    let f = sub.field();
    let n = sub.ambient_dim();
    let mut current = sub.clone();
    let mut frame: Vec<Vec<F::Elem>> = sub.basis().to_vec();
    let mut lifts = Vec::new();
    for b in of.basis() {
        if !current.contains(b) {
            lifts.push(b.clone());
            frame.push(b.clone());
            current = current.sum(&Subspace::span(f, n, vec![b.clone()])?)?;
        }
    }
    for i in 0..n {
        let e = unit(f, n, i);
        if !current.contains(&e) {
            frame.push(e.clone());
            current = current.sum(&Subspace::span(f, n, vec![e])?)?;
        }
    }
    let inverse = Matrix::from_columns(f, n, &frame)?
        .inverse()
        .expect("frame is a basis of the ambient space");
    let start = sub.dim();
    let rows = (start..start + lifts.len()).map(|i| inverse.row(i)).collect();
    let map = Matrix::from_rows(f, n, rows)?;
    Ok(QuotientMap { map, lifts })
}

/// Linear map onto `k^(dim of − dim sub)` whose restriction to `of` has
/// kernel exactly `sub`.
pub fn quotient_coords<F: Field>(sub: &Subspace<F>, of: &Subspace<F>) -> Result<Matrix<F>> {
    quotient_map(sub, of).map(|q| q.map)
}
