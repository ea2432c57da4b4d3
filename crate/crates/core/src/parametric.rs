//! One-parameter families of subspaces over ℚ and their limits at `t = 0`.

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{check_dim, Error, Result};
use crate::field::Rationals;
use crate::matrix::Matrix;
use crate::ratfunc::{Poly, RatFunc, RationalFunctions};
use crate::subspace::Subspace;

/// Subspace of `ℚ(t)^n` given by linearly independent columns.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParametricSubspace {
    ambient: usize,
    columns: Vec<Vec<RatFunc>>,
}

impl ParametricSubspace {
    pub fn new(ambient: usize, columns: Vec<Vec<RatFunc>>) -> Result<Self> {
        for c in &columns {
            check_dim(ambient, c.len())?;
        }
        let m = Matrix::from_columns(&RationalFunctions, ambient, &columns)?;
        if m.rank() != columns.len() {
            return Err(Error::NotIndependent);
        }
        Ok(ParametricSubspace { ambient, columns })
    }

    /// A family that does not depend on `t`.
    pub fn constant(s: &Subspace<Rationals>) -> Self {
        let columns = s
            .basis()
            .iter()
            .map(|v| v.iter().map(|x| RatFunc::constant(x.clone())).collect())
            .collect();
        ParametricSubspace {
            ambient: s.ambient_dim(),
            columns,
        }
    }

    pub fn from_subspace(s: &Subspace<RationalFunctions>) -> Self {
        ParametricSubspace {
            ambient: s.ambient_dim(),
            columns: s.basis().to_vec(),
        }
    }

    /// The span over ℚ(t), canonicalized.
    pub fn to_subspace(&self) -> Subspace<RationalFunctions> {
        Subspace::span(&RationalFunctions, self.ambient, self.columns.clone()).expect("column lengths checked")
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.columns.len()
    }

    pub fn columns(&self) -> &[Vec<RatFunc>] {
        &self.columns
    }

    /// Span of the columns evaluated at `t`; `None` at a pole or where the
    /// evaluated columns become dependent.
    pub fn at(&self, t: &BigRational) -> Option<Subspace<Rationals>> {
        let vectors = self
            .columns
            .iter()
            .map(|c| c.iter().map(|x| x.eval(t)).collect::<Option<Vec<_>>>())
            .collect::<Option<Vec<_>>>()?;
        let s = Subspace::span(&Rationals, self.ambient, vectors).ok()?;
        (s.dim() == self.dim()).then_some(s)
    }
}

/// Limit of the family as `t → 0` in the grassmannian.
///
/// Columns are first scaled into `ℚ[t]^n` with nonzero constant term. While
/// the constant terms are dependent, a dependent combination (which then
/// vanishes at 0) is divided by the appropriate power of `t` and replaces one
/// of the columns involved. Each round strictly enlarges the `ℚ[t]`-lattice
/// spanned by the columns inside its saturation, so the loop terminates.
pub fn limit_subspace(family: &ParametricSubspace) -> Subspace<Rationals> {
    let n = family.ambient;
    let mut cols: Vec<Vec<Poly>> = family.columns.iter().map(|c| normalize_column(&clear_denominators(c))).collect();
    loop {
        let values: Vec<Vec<BigRational>> = cols
            .iter()
            .map(|c| c.iter().map(Poly::constant_term).collect())
            .collect();
        let m = Matrix::from_columns(&Rationals, n, &values).expect("column lengths checked");
        let dependencies = m.kernel();
        let Some(c) = dependencies.basis().first() else {
            return Subspace::span(&Rationals, n, values).expect("column lengths checked");
        };
        let replace = c.iter().position(|x| !x.is_zero()).expect("kernel vectors are nonzero");
        let mut combo = vec![Poly::zero(); n];
        for (coef, col) in c.iter().zip(&cols) {
            if coef.is_zero() {
                continue;
            }
            for (acc, entry) in combo.iter_mut().zip(col) {
                *acc = acc.add(&entry.scale(coef));
            }
        }
        cols[replace] = normalize_column(&combo);
    }
}

/// Multiplies a column by the lcm of its denominators.
fn clear_denominators(col: &[RatFunc]) -> Vec<Poly> {
    let one = Poly::constant(BigRational::from_integer(1.into()));
    let lcm = col.iter().fold(one, |acc, x| {
        let g = acc.gcd(x.denom());
        acc.mul(x.denom()).div_rem(&g).0
    });
    col.iter()
        .map(|x| {
            let (cofactor, rem) = lcm.div_rem(x.denom());
            debug_assert!(rem.is_zero());
            x.numer().mul(&cofactor)
        })
        .collect()
}

/// Divides out the largest power of `t` dividing every entry.
fn normalize_column(col: &[Poly]) -> Vec<Poly> {
    let v = col
        .iter()
        .filter_map(Poly::valuation)
        .min()
        .expect("columns of an independent family are nonzero");
    col.iter().map(|p| p.shift_down(v)).collect()
}

/// Embeds a rational subspace as a constant element of the ℚ(t) world.
pub fn lift_constant(s: &Subspace<Rationals>) -> Subspace<RationalFunctions> {
    s.map_field(&RationalFunctions, |x| RatFunc::constant(x.clone()))
        .expect("lengths preserved")
}
