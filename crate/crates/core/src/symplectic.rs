//! Symplectic vector spaces and the form calculus.

use crate::error::{check_dim, Error, LagrangianDefect, Result};
use crate::field::Field;
use crate::matrix::{dot, Matrix};
use crate::subspace::Subspace;

/// `k^(2n)` with an explicit nondegenerate alternating form `Ω`, so that
/// `ω(u, v) = uᵀ Ω v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymplecticSpace<F: Field> {
    form: Matrix<F>,
}

/// Isotropy type of a subspace.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Classification {
    pub isotropic: bool,
    pub coisotropic: bool,
    pub lagrangian: bool,
    pub symplectic: bool,
}

impl<F: Field> SymplecticSpace<F> {
    /// `Ω = [[0, I], [−I, 0]]`, i.e. `ω(e_i, e_{n+j}) = δ_ij`.
    pub fn standard(field: &F, n: usize) -> Self {
        let mut form = Matrix::zeros(field, 2 * n, 2 * n);
        for i in 0..n {
            form.set(i, n + i, field.one());
            form.set(n + i, i, field.neg(&field.one()));
        }
        SymplecticSpace { form }
    }

    /// The zero-dimensional space.
    pub fn point(field: &F) -> Self {
        Self::standard(field, 0)
    }

    pub fn from_form(form: Matrix<F>) -> Result<Self> {
        let f = form.field().clone();
        if !form.is_square() {
            return Err(Error::InvalidForm(format!("{}x{} matrix is not square", form.rows(), form.cols())));
        }
        let d = form.rows();
        if !d.is_multiple_of(2) {
            return Err(Error::InvalidForm(format!("odd dimension {d}")));
        }
        for i in 0..d {
            if !f.is_zero(form.get(i, i)) {
                return Err(Error::InvalidForm(format!("nonzero diagonal entry at {i}")));
            }
            for j in 0..i {
                if *form.get(i, j) != f.neg(form.get(j, i)) {
                    return Err(Error::InvalidForm(format!("entries ({i},{j}) and ({j},{i}) are not opposite")));
                }
            }
        }
        if form.rank() != d {
            return Err(Error::InvalidForm("form is degenerate".to_string()));
        }
        Ok(SymplecticSpace { form })
    }

    pub fn field(&self) -> &F {
        self.form.field()
    }

    pub fn dim(&self) -> usize {
        self.form.rows()
    }

    /// Half the dimension; the dimension of its lagrangians.
    pub fn half_dim(&self) -> usize {
        self.form.rows() / 2
    }

    pub fn form(&self) -> &Matrix<F> {
        &self.form
    }

    pub fn is_point(&self) -> bool {
        self.dim() == 0
    }

    /// Same space with form `−Ω`.
    pub fn bar(&self) -> Self {
        SymplecticSpace { form: self.form.neg() }
    }

    /// `self × other` with form `diag(Ω_self, Ω_other)`.
    pub fn product(&self, other: &Self) -> Result<Self> {
        self.form.ensure_same_field(&other.form)?;
        Ok(SymplecticSpace {
            form: self.form.block_diag(&other.form),
        })
    }

    pub fn pairing(&self, u: &[F::Elem], v: &[F::Elem]) -> F::Elem {
        let ov = self.form.mul_vec(v).expect("vector has space dimension");
        dot(self.field(), u, &ov)
    }

    pub fn zero_subspace(&self) -> Subspace<F> {
        Subspace::zero(self.field(), self.dim())
    }

    pub fn full_subspace(&self) -> Subspace<F> {
        Subspace::full(self.field(), self.dim())
    }

    /// `S^⊥ = {v : ω(s, v) = 0 for all s ∈ S}`.
    pub fn orthogonal(&self, s: &Subspace<F>) -> Result<Subspace<F>> {
        self.check_member(s)?;
        let ot = self.form.transpose();
        let rows = s
            .basis()
            .iter()
            .map(|b| ot.mul_vec(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix::from_rows(self.field(), self.dim(), rows)?.kernel())
    }

    pub fn classify(&self, s: &Subspace<F>) -> Result<Classification> {
        let perp = self.orthogonal(s)?;
        let isotropic = s.is_subspace_of(&perp);
        let coisotropic = perp.is_subspace_of(s);
        let symplectic = s.intersect(&perp)?.is_zero();
        let lagrangian = isotropic && coisotropic;
        if lagrangian {
            debug_assert_eq!(s.dim(), self.half_dim());
        }
        Ok(Classification {
            isotropic,
            coisotropic,
            lagrangian,
            symplectic,
        })
    }

    pub fn is_isotropic(&self, s: &Subspace<F>) -> bool {
        let b = s.basis();
        (0..b.len()).all(|i| (i + 1..b.len()).all(|j| self.field().is_zero(&self.pairing(&b[i], &b[j]))))
    }

    /// Checks that `s` is lagrangian; reports which half of the condition
    /// failed otherwise.
    pub fn check_lagrangian(&self, s: &Subspace<F>) -> Result<()> {
        self.check_member(s)?;
        let b = s.basis();
        for i in 0..b.len() {
            for j in i + 1..b.len() {
                if !self.field().is_zero(&self.pairing(&b[i], &b[j])) {
                    return Err(Error::NotLagrangian(LagrangianDefect::NotIsotropic { first: i, second: j }));
                }
            }
        }
        if s.dim() != self.half_dim() {
            return Err(Error::NotLagrangian(LagrangianDefect::WrongDimension {
                expected: self.half_dim(),
                found: s.dim(),
            }));
        }
        Ok(())
    }

    pub fn is_lagrangian(&self, s: &Subspace<F>) -> bool {
        self.check_lagrangian(s).is_ok()
    }

    pub fn is_coisotropic(&self, s: &Subspace<F>) -> Result<bool> {
        Ok(self.orthogonal(s)?.is_subspace_of(s))
    }

    /// `MᵀΩM = Ω`.
    pub fn preserves_form(&self, m: &Matrix<F>) -> bool {
        if m.rows() != self.dim() || m.cols() != self.dim() {
            return false;
        }
        let lhs = m
            .transpose()
            .mul(&self.form)
            .and_then(|x| x.mul(m))
            .expect("square matrices of space dimension");
        lhs == self.form
    }

    pub(crate) fn check_member(&self, s: &Subspace<F>) -> Result<()> {
        if s.field() != self.field() {
            return Err(Error::FieldMismatch);
        }
        check_dim(self.dim(), s.ambient_dim())
    }
}

/// Size limits for exhaustive enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationBound {
    pub max_dim: usize,
    pub max_p: u64,
}

impl Default for EnumerationBound {
    fn default() -> Self {
        EnumerationBound { max_dim: 6, max_p: 7 }
    }
}

/// All lagrangian subspaces of a space over a finite field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LagGrassmannian<F: Field> {
    pub space: SymplecticSpace<F>,
    /// Canonical, duplicate-free, sorted lexicographically by basis.
    pub members: Vec<Subspace<F>>,
}

impl<F: Field> LagGrassmannian<F> {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

pub fn enumerate_lagrangians<F: Field>(space: &SymplecticSpace<F>) -> Result<LagGrassmannian<F>> {
    enumerate_lagrangians_within(space, EnumerationBound::default())
}

/// Exhaustive enumeration by building reduced echelon bases row by row and
/// pruning any row that pairs nontrivially with an earlier one. Every
/// lagrangian has exactly one such basis, so no deduplication is needed.
pub fn enumerate_lagrangians_within<F: Field>(
    space: &SymplecticSpace<F>,
    bound: EnumerationBound,
) -> Result<LagGrassmannian<F>> {
    let f = space.field();
    let elements = f
        .elements()
        .ok_or_else(|| Error::Unsupported("lagrangian enumeration needs a finite field".to_string()))?;
    if space.dim() > bound.max_dim || f.characteristic() > bound.max_p {
        return Err(Error::BoundExceeded(format!(
            "dimension {} over a field of size {} (limit: dimension {}, prime {})",
            space.dim(),
            f.characteristic(),
            bound.max_dim,
            bound.max_p
        )));
    }
    let n = space.half_dim();
    let d = space.dim();
    let mut members = Vec::new();
    for pivots in combinations(d, n) {
        let mut rows = Vec::with_capacity(n);
        extend_isotropic_frame(space, &elements, &pivots, &mut rows, &mut members);
    }
    members.sort();
    debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
    Ok(LagGrassmannian {
        space: space.clone(),
        members,
    })
}

fn extend_isotropic_frame<F: Field>(
    space: &SymplecticSpace<F>,
    elements: &[F::Elem],
    pivots: &[usize],
    rows: &mut Vec<Vec<F::Elem>>,
    out: &mut Vec<Subspace<F>>,
) {
    let f = space.field();
    let d = space.dim();
    let r = rows.len();
    if r == pivots.len() {
        out.push(Subspace::span(f, d, rows.clone()).expect("rows have space dimension"));
        return;
    }
    let free: Vec<usize> = (pivots[r] + 1..d).filter(|c| !pivots.contains(c)).collect();
    let mut row = vec![f.zero(); d];
    row[pivots[r]] = f.one();
    let mut digits = vec![0usize; free.len()];
    loop {
        for (slot, &col) in free.iter().enumerate() {
            row[col] = elements[digits[slot]].clone();
        }
        if rows.iter().all(|prev| f.is_zero(&space.pairing(prev, &row))) {
            rows.push(row.clone());
            extend_isotropic_frame(space, elements, pivots, rows, out);
            rows.pop();
        }
        // odometer over the free entries
        let mut k = 0;
        loop {
            if k == digits.len() {
                return;
            }
            digits[k] += 1;
            if digits[k] < elements.len() {
                break;
            }
            digits[k] = 0;
            k += 1;
        }
    }
}

/// Increasing `k`-subsets of `0..n` in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// `∏_{i=1..n} (q^i + 1)`, the number of lagrangians of a `2n`-dimensional
/// space over `𝔽_q`.
pub fn lagrangian_count(q: u64, n: u32) -> u128 {
    (1..=n).map(|i| (q as u128).pow(i) + 1).product()
}
