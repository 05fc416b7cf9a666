use std::collections::BTreeMap;

use num_traits::One;

use super::families::FamilyParams;
use super::shift1d::{Shift1D, Tail};
use crate::error::{domain, Result};
use crate::exact_linalg::Rational;

/// Lattice point `(k1, k2)`.
pub type Point = (usize, usize);

/// Source of the `beta` weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BetaField {
    /// Column `k1` is entry `k1`; the last column repeats.
    Columns(Vec<Shift1D>),
    /// Column 0 is given and the rest follows from the commuting relation
    /// `beta(k+e1) = beta(k) alpha(k+e2) / alpha(k)`.
    Derived { column0: Shift1D },
}

/// A 2-variable weighted shift. Row `k2` of `alpha` is `rows[k2]`, with the
/// last row repeating. Patches override single entries and exist to model
/// hand-edited grids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shift2D {
    rows: Vec<Shift1D>,
    beta: BetaField,
    alpha_patch: BTreeMap<Point, Rational>,
    beta_patch: BTreeMap<Point, Rational>,
    params: Option<FamilyParams>,
}

impl Shift2D {
    /// Shift with the given `alpha` rows and `beta` columns chosen so the
    /// pair commutes.
    pub fn commuting(rows: Vec<Shift1D>, column0: Shift1D) -> Result<Self> {
        if rows.is_empty() {
            return domain("at least one alpha row is required");
        }
        Ok(Self {
            rows,
            beta: BetaField::Derived { column0 },
            alpha_patch: BTreeMap::new(),
            beta_patch: BTreeMap::new(),
            params: None,
        })
    }

    /// Shift from explicit rows and columns; commutativity is not checked.
    pub fn from_rows_and_columns(rows: Vec<Shift1D>, columns: Vec<Shift1D>) -> Result<Self> {
        if rows.is_empty() || columns.is_empty() {
            return domain("at least one alpha row and one beta column are required");
        }
        Ok(Self {
            rows,
            beta: BetaField::Columns(columns),
            alpha_patch: BTreeMap::new(),
            beta_patch: BTreeMap::new(),
            params: None,
        })
    }

    /// `(I (x) W_a, W_b (x) I)`: doubly commuting.
    pub fn tensor(a: Shift1D, b: Shift1D) -> Self {
        Self {
            rows: vec![a],
            beta: BetaField::Columns(vec![b]),
            alpha_patch: BTreeMap::new(),
            beta_patch: BTreeMap::new(),
            params: None,
        }
    }

    pub(crate) fn with_params(mut self, params: FamilyParams) -> Self {
        self.params = Some(params);
        self
    }

    pub fn params(&self) -> Option<&FamilyParams> {
        self.params.as_ref()
    }

    pub fn with_alpha(mut self, at: Point, value: Rational) -> Self {
        self.alpha_patch.insert(at, value);
        self.params = None;
        self
    }

    pub fn with_beta(mut self, at: Point, value: Rational) -> Self {
        self.beta_patch.insert(at, value);
        self.params = None;
        self
    }

    fn row(&self, k2: usize) -> &Shift1D {
        &self.rows[k2.min(self.rows.len() - 1)]
    }

    fn raw_alpha(&self, (k1, k2): Point) -> Rational {
        self.row(k2).weight_sq(k1)
    }

    fn raw_beta(&self, (k1, k2): Point) -> Rational {
        match &self.beta {
            BetaField::Columns(cols) => cols[k1.min(cols.len() - 1)].weight_sq(k2),
            BetaField::Derived { column0 } => {
                let mut b = column0.weight_sq(k2);
                if k2 + 1 < self.rows.len() {
                    for i in 0..k1 {
                        b = b * self.raw_alpha((i, k2 + 1)) / self.raw_alpha((i, k2));
                    }
                }
                b
            }
        }
    }

    pub fn alpha_sq(&self, at: Point) -> Rational {
        self.alpha_patch.get(&at).cloned().unwrap_or_else(|| self.raw_alpha(at))
    }

    pub fn beta_sq(&self, at: Point) -> Rational {
        self.beta_patch.get(&at).cloned().unwrap_or_else(|| self.raw_beta(at))
    }

    /// Moment along row 0 to `(k1, 0)`, then up column `k1`.
    pub fn gamma2(&self, k1: usize, k2: usize) -> Rational {
        let along = (0..k1).fold(Rational::one(), |acc, i| acc * self.alpha_sq((i, 0)));
        (0..k2).fold(along, |acc, j| acc * self.beta_sq((k1, j)))
    }

    /// Moment along column 0 to `(0, k2)`, then right along row `k2`.
    pub fn gamma2_up_then_right(&self, k1: usize, k2: usize) -> Rational {
        let up = (0..k2).fold(Rational::one(), |acc, j| acc * self.beta_sq((0, j)));
        (0..k1).fold(up, |acc, i| acc * self.alpha_sq((i, k2)))
    }

    /// `beta(k+e1) alpha(k) == alpha(k+e2) beta(k)` on `[0, window]^2`.
    pub fn check_commuting(&self, window: usize) -> bool {
        (0..=window).all(|k1| {
            (0..=window).all(|k2| {
                self.beta_sq((k1 + 1, k2)) * self.alpha_sq((k1, k2))
                    == self.alpha_sq((k1, k2 + 1)) * self.beta_sq((k1, k2))
            })
        })
    }

    /// Column `k1` of `beta` as a 1-variable shift in `k2`.
    fn beta_column(&self, k1: usize) -> Shift1D {
        match &self.beta {
            BetaField::Columns(cols) => cols[k1.min(cols.len() - 1)].clone(),
            BetaField::Derived { column0 } => {
                let settled = self.rows.len() - 1;
                let prefix = (0..settled).map(|k2| self.raw_beta((k1, k2))).collect();
                Shift1D::new(prefix, Tail::Follow(Box::new(column0.clone())))
                    .expect("derived beta weights are positive")
            }
        }
    }

    /// The shift on the sublattice `{(h i + m, l j + n)}` corresponding to
    /// `(T1^h, T2^l)`.
    pub(crate) fn sublattice(&self, h: usize, l: usize, m: usize, n: usize) -> Shift2D {
        let settled = self.rows.len() - 1;
        let mut rows = Vec::new();
        for j in 0.. {
            let r = l * j + n;
            rows.push(self.row(r).packet(h, m));
            if r >= settled {
                break;
            }
        }
        let beta = match &self.beta {
            BetaField::Derived { .. } => BetaField::Derived { column0: self.beta_column(m).packet(l, n) },
            BetaField::Columns(cols) => {
                let count = cols.len().saturating_sub(1).saturating_sub(m).div_ceil(h) + 1;
                BetaField::Columns((0..count).map(|i| self.beta_column(h * i + m).packet(l, n)).collect())
            }
        };
        let mut out = Shift2D { rows, beta, alpha_patch: BTreeMap::new(), beta_patch: BTreeMap::new(), params: None };
        for &(c, r) in self.alpha_patch.keys() {
            if c >= m && r >= n && (r - n).is_multiple_of(l) {
                let at = ((c - m) / h, (r - n) / l);
                let v = (0..h).fold(Rational::one(), |acc, t| acc * self.alpha_sq((h * at.0 + m + t, r)));
                out.alpha_patch.insert(at, v);
            }
        }
        for &(c, r) in self.beta_patch.keys() {
            if c >= m && r >= n && (c - m).is_multiple_of(h) {
                let at = ((c - m) / h, (r - n) / l);
                let v = (0..l).fold(Rational::one(), |acc, t| acc * self.beta_sq((c, l * at.1 + n + t)));
                out.beta_patch.insert(at, v);
            }
        }
        out
    }

    pub fn row0(&self) -> &Shift1D {
        self.row(0)
    }

    pub fn alpha_row(&self, k2: usize) -> &Shift1D {
        self.row(k2)
    }
}
