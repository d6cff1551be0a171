//! Bivariate polynomials as polynomials in Y whose coefficients are
//! polynomials in X. Division-style operations run natively in Y; the same
//! suite in X goes through `swap_vars`.

use super::{poly::UniPoly, Rat, Ring};
use crate::error::Result;

#[derive(Clone, PartialEq)]
pub struct BiPoly<C: Ring> {
    /// outer index: power of Y; inner polynomial: in X
    inner: UniPoly<UniPoly<C>>,
}

impl<C: Ring> std::fmt::Debug for BiPoly<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "BiPoly{:?}", self.inner)
    }
}

impl<C: Ring> BiPoly<C> {
    pub fn from_y_coeffs(rows: Vec<UniPoly<C>>) -> Self {
        BiPoly {
            inner: UniPoly::new(rows),
        }
    }

    pub fn zero() -> Self {
        BiPoly {
            inner: UniPoly::zero(),
        }
    }

    pub fn one() -> Self {
        BiPoly {
            inner: UniPoly::constant(UniPoly::one()),
        }
    }

    pub fn constant(c: C) -> Self {
        BiPoly {
            inner: UniPoly::constant(UniPoly::constant(c)),
        }
    }

    pub fn var_x() -> Self {
        BiPoly {
            inner: UniPoly::constant(UniPoly::var()),
        }
    }

    pub fn var_y() -> Self {
        BiPoly {
            inner: UniPoly::monomial(UniPoly::one(), 1),
        }
    }

    /// A polynomial p(X) viewed as a bivariate constant in Y.
    pub fn from_x_poly(p: UniPoly<C>) -> Self {
        BiPoly {
            inner: UniPoly::constant(p),
        }
    }

    /// Coefficient of X^i Y^j.
    pub fn coeff(&self, i: usize, j: usize) -> C {
        self.y_coeff(j).coeff(i)
    }

    /// Coefficient of Y^j as a polynomial in X.
    pub fn y_coeff(&self, j: usize) -> UniPoly<C> {
        self.inner.coeff(j)
    }

    pub fn y_coeffs(&self) -> &[UniPoly<C>] {
        self.inner.coeffs()
    }

    pub fn degree_y(&self) -> Option<usize> {
        self.inner.degree()
    }

    pub fn degree_x(&self) -> Option<usize> {
        self.inner
            .coeffs()
            .iter()
            .filter_map(|p| p.degree())
            .max()
    }

    pub fn total_degree(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for (j, row) in self.inner.coeffs().iter().enumerate() {
            for i in row.support() {
                best = Some(best.map_or(i + j, |b| b.max(i + j)));
            }
        }
        best
    }

    pub fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        BiPoly {
            inner: self.inner.add(&rhs.inner),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        BiPoly {
            inner: self.inner.sub(&rhs.inner),
        }
    }

    pub fn neg(&self) -> Self {
        BiPoly {
            inner: self.inner.neg(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        BiPoly {
            inner: self.inner.mul(&rhs.inner),
        }
    }

    pub fn mul_scalar(&self, c: &C) -> Self {
        let rows = self
            .inner
            .coeffs()
            .iter()
            .map(|p| p.mul_scalar(c))
            .collect();
        Self::from_y_coeffs(rows)
    }

    /// Division with remainder in the Y variable; requires the divisor's
    /// leading Y-coefficient to divide exactly at each step (always when it
    /// is a nonzero constant of a field).
    pub fn divrem_y(&self, d: &Self) -> Option<(Self, Self)> {
        let (q, r) = self.inner.divrem(&d.inner)?;
        Some((BiPoly { inner: q }, BiPoly { inner: r }))
    }

    pub fn exact_div(&self, d: &Self) -> Result<Self> {
        Ok(BiPoly {
            inner: self.inner.exact_div(&d.inner)?,
        })
    }

    pub fn swap_vars(&self) -> Self {
        let dx = self.degree_x().map_or(0, |d| d + 1);
        let dy = self.degree_y().map_or(0, |d| d + 1);
        let mut grid = vec![vec![C::zero(); dy]; dx];
        for (j, row) in self.inner.coeffs().iter().enumerate() {
            for (i, c) in row.coeffs().iter().enumerate() {
                grid[i][j] = c.clone();
            }
        }
        Self::from_y_coeffs(grid.into_iter().map(UniPoly::new).collect())
    }

    /// Substitute Y := q(X), collapsing to a univariate polynomial in X.
    pub fn eval_y(&self, q: &UniPoly<C>) -> UniPoly<C> {
        let mut acc = UniPoly::zero();
        for row in self.inner.coeffs().iter().rev() {
            acc = acc.mul(q).add(row);
        }
        acc
    }

    /// Evaluate at scalar values (x, y).
    pub fn eval(&self, x: &C, y: &C) -> C {
        let mut acc = C::zero();
        for row in self.inner.coeffs().iter().rev() {
            acc = acc.mul(y).add(&row.eval(x));
        }
        acc
    }

    pub fn map_coeffs<D: Ring>(&self, f: impl Fn(&C) -> D + Copy) -> BiPoly<D> {
        let rows = self
            .inner
            .coeffs()
            .iter()
            .map(|p| p.map_coeffs(f))
            .collect();
        BiPoly::from_y_coeffs(rows)
    }

    /// The top homogeneous part as coefficients of X^i Y^{m-i}, i = 0..m.
    pub fn top_form(&self) -> Vec<C> {
        let m = match self.total_degree() {
            Some(m) => m,
            None => return vec![],
        };
        (0..=m)
            .map(|i| self.coeff(i, m - i))
            .collect()
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.swap_vars()
    }
}

impl std::fmt::Display for BiPoly<Rat> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, row) in self.inner.coeffs().iter().enumerate() {
            for (i, c) in row.coeffs().iter().enumerate() {
                if Ring::is_zero(c) {
                    continue;
                }
                if !first {
                    write!(f, " + ")?;
                }
                first = false;
                let cs = super::rat_to_string(c);
                if i == 0 && j == 0 {
                    write!(f, "{cs}")?;
                    continue;
                }
                if cs != "1" {
                    write!(f, "{cs}*")?;
                }
                match i {
                    0 => {}
                    1 => write!(f, "X")?,
                    _ => write!(f, "X^{i}")?,
                }
                if i > 0 && j > 0 {
                    write!(f, "*")?;
                }
                match j {
                    0 => {}
                    1 => write!(f, "Y")?,
                    _ => write!(f, "Y^{j}")?,
                }
                if i == 0 && j == 0 && cs == "1" {
                    write!(f, "1")?;
                }
            }
        }
        Ok(())
    }
}
