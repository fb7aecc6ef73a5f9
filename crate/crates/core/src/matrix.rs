//! Matrices of polynomials: minors, Jacobians, substitution.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{AlgebraError, Error, Result};
use crate::field::{Field, Q};
use crate::parse::parse_poly_in;
use crate::poly::Poly;
use crate::ring::Ring;

#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix<K: Field> {
    ring: Arc<Ring>,
    rows: usize,
    cols: usize,
    entries: Vec<Poly<K>>,
}

impl<K: Field> fmt::Debug for PolyMatrix<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyMatrix{self}")
    }
}

impl<K: Field> fmt::Display for PolyMatrix<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|p| p.to_string()).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl<K: Field> PolyMatrix<K> {
    pub fn new(ring: &Arc<Ring>, rows: Vec<Vec<Poly<K>>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if r == 0 || c == 0 {
            return Err(Error::Shape("matrix must have at least one row and one column".into()));
        }
        if let Some(bad) = rows.iter().position(|row| row.len() != c) {
            return Err(Error::Shape(format!("row {} has {} entries, expected {c}", bad + 1, rows[bad].len())));
        }
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            for p in row {
                if !p.is_zero() && **p.ring() != **ring {
                    return Err(AlgebraError::RingMismatch.into());
                }
                entries.push(if p.is_zero() { Poly::zero(ring) } else { p });
            }
        }
        Ok(PolyMatrix { ring: ring.clone(), rows: r, cols: c, entries })
    }

    /// Parse every entry in `ring`.
    pub fn parse<S: AsRef<str>>(ring: &Arc<Ring>, rows: &[Vec<S>]) -> Result<Self> {
        let mut out = Vec::with_capacity(rows.len());
        for row in rows {
            let mut prow = Vec::with_capacity(row.len());
            for s in row {
                prow.push(parse_poly_in::<K>(ring, s.as_ref())?);
            }
            out.push(prow);
        }
        Self::new(ring, out)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly<K> {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Poly<K>] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[Poly<K>] {
        &self.entries
    }

    pub fn to_rows(&self) -> Vec<Vec<Poly<K>>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|i| self.row(i).iter().map(|p| p.to_string()).collect()).collect()
    }

    /// Append a row at the bottom.
    pub fn with_row(&self, row: Vec<Poly<K>>) -> Result<Self> {
        let mut rows = self.to_rows();
        rows.push(row);
        Self::new(&self.ring, rows)
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        PolyMatrix { ring: self.ring.clone(), rows: self.cols, cols: self.rows, entries }
    }

    /// All nonzero `k x k` minors, rows and columns in lexicographic order.
    /// Empty when `k` exceeds either dimension; `k = 0` gives `[1]`.
    pub fn minors(&self, k: usize) -> Vec<Poly<K>> {
        if k == 0 {
            return vec![Poly::one(&self.ring)];
        }
        if k > self.rows || k > self.cols {
            return Vec::new();
        }
        let row_sets = subsets(self.rows, k);
        let col_sets = subsets(self.cols, k);
        let mut memo: HashMap<(u64, u64), Poly<K>> = HashMap::new();
        let mut out = Vec::new();
        for rs in &row_sets {
            for cs in &col_sets {
                let d = self.det_memo(rs, mask(cs), &mut memo);
                if !d.is_zero() {
                    out.push(d);
                }
            }
        }
        out
    }

    /// Laplace expansion along the first listed row; sub-determinants are
    /// shared through `memo`, keyed by row and column masks.
    fn det_memo(&self, rows: &[usize], cols: u64, memo: &mut HashMap<(u64, u64), Poly<K>>) -> Poly<K> {
        if rows.len() == 1 {
            let j = cols.trailing_zeros() as usize;
            return self.get(rows[0], j).clone();
        }
        let key = (mask(rows), cols);
        if let Some(p) = memo.get(&key) {
            return p.clone();
        }
        let r = rows[0];
        let mut acc = Poly::zero(&self.ring);
        let mut sign_negative = false;
        let mut rest = cols;
        while rest != 0 {
            let j = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let a = self.get(r, j);
            if !a.is_zero() {
                let sub = self.det_memo(&rows[1..], cols & !(1u64 << j), memo);
                if !sub.is_zero() {
                    let term = a.mul(&sub);
                    acc = if sign_negative { acc.sub(&term) } else { acc.add(&term) };
                }
            }
            sign_negative = !sign_negative;
        }
        memo.insert(key, acc.clone());
        acc
    }

    pub fn determinant(&self) -> Result<Poly<K>> {
        if self.rows != self.cols {
            return Err(Error::Shape(format!("determinant of a {}x{} matrix", self.rows, self.cols)));
        }
        let rows: Vec<usize> = (0..self.rows).collect();
        let mut memo = HashMap::new();
        Ok(self.det_memo(&rows, mask(&rows), &mut memo))
    }

    /// Jacobian of `polys` with respect to the variables `vars`: one row per
    /// polynomial, one column per variable.
    pub fn jacobian(ring: &Arc<Ring>, polys: &[Poly<K>], vars: &[usize]) -> Result<Self> {
        let rows: Vec<Vec<Poly<K>>> =
            polys.iter().map(|f| vars.iter().map(|&v| f.derivative(v)).collect()).collect();
        Self::new(ring, rows)
    }

    /// Substitute `images[i]` for variable `i` in every entry.
    pub fn compose(&self, target: &Arc<Ring>, images: &[Poly<K>]) -> Self {
        let entries = self.entries.iter().map(|p| p.compose(target, images)).collect();
        PolyMatrix { ring: target.clone(), rows: self.rows, cols: self.cols, entries }
    }

    pub fn map_entries(&self, ring: &Arc<Ring>, f: impl Fn(&Poly<K>) -> Poly<K>) -> Self {
        PolyMatrix { ring: ring.clone(), rows: self.rows, cols: self.cols, entries: self.entries.iter().map(f).collect() }
    }

    /// `A * self` for a constant matrix `A`.
    pub fn left_mul(&self, a: &[Vec<Q>]) -> Result<Self> {
        if a.iter().any(|row| row.len() != self.rows) {
            return Err(Error::Shape("left factor has the wrong number of columns".into()));
        }
        let mut rows = Vec::with_capacity(a.len());
        for arow in a {
            let mut row = Vec::with_capacity(self.cols);
            for j in 0..self.cols {
                let mut acc = Poly::zero(&self.ring);
                for (k, c) in arow.iter().enumerate() {
                    acc = acc.add(&self.get(k, j).scale(&K::from_rational(&c.0)?));
                }
                row.push(acc);
            }
            rows.push(row);
        }
        Self::new(&self.ring, rows)
    }

    /// `self * B` for a constant matrix `B`.
    pub fn right_mul(&self, b: &[Vec<Q>]) -> Result<Self> {
        let bt: Vec<Vec<Q>> = if b.is_empty() {
            Vec::new()
        } else {
            (0..b[0].len()).map(|j| b.iter().map(|row| row[j].clone()).collect()).collect()
        };
        if b.len() != self.cols || b.iter().any(|row| row.len() != bt.len()) {
            return Err(Error::Shape("right factor has the wrong number of rows".into()));
        }
        Ok(self.transpose().left_mul(&bt)?.transpose())
    }

    pub fn map_coeffs<L: Field>(&self, ring: &Arc<Ring>, f: impl Fn(&K) -> L + Copy) -> PolyMatrix<L> {
        PolyMatrix {
            ring: ring.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|p| p.map_coeffs(ring, f)).collect(),
        }
    }

    pub fn try_map_coeffs<L: Field>(
        &self,
        ring: &Arc<Ring>,
        f: impl Fn(&K) -> std::result::Result<L, AlgebraError> + Copy,
    ) -> std::result::Result<PolyMatrix<L>, AlgebraError> {
        let mut entries = Vec::with_capacity(self.entries.len());
        for p in &self.entries {
            entries.push(p.try_map_coeffs(ring, f)?);
        }
        Ok(PolyMatrix { ring: ring.clone(), rows: self.rows, cols: self.cols, entries })
    }
}

fn mask(idx: &[usize]) -> u64 {
    idx.iter().fold(0u64, |m, &i| m | (1u64 << i))
}

/// `k`-element subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < n - k + i {
                cur[i] += 1;
                for j in i + 1..k {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
    }
}
