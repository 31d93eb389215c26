//! Exact integer and rational linear algebra.
//!
//! Determinants use fraction-free (Bareiss) elimination over `BigInt`. Ranks
//! are computed over the rationals after clearing denominators, with a sparse
//! kernel that splits a matrix into independent row/column components first.

use crate::error::{CycError, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::HashMap;

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(CycError::Dimension("ragged rows".into()));
            }
            entries.extend(row.iter().cloned().map(Into::into));
        }
        Ok(IntMatrix { rows: r, cols: c, entries })
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// The matrix with row `i` and column `j` deleted.
    pub fn minor(&self, i: usize, j: usize) -> IntMatrix {
        let mut entries = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for r in (0..self.rows).filter(|&r| r != i) {
            for c in (0..self.cols).filter(|&c| c != j) {
                entries.push(self.get(r, c).clone());
            }
        }
        IntMatrix { rows: self.rows - 1, cols: self.cols - 1, entries }
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(CycError::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = BigInt::zero();
                for k in 0..self.cols {
                    acc += self.get(i, k) * other.get(k, j);
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn left_mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.rows {
            return Err(CycError::Dimension("vector length".into()));
        }
        Ok((0..self.cols)
            .map(|j| (0..self.rows).map(|i| &v[i] * self.get(i, j)).sum())
            .collect())
    }

    pub fn to_rat(&self) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| BigRational::from_integer(e.clone())).collect(),
        }
    }
}

/// Dense rational matrix, row-major. `BigRational` keeps entries reduced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<BigRational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, entries: vec![BigRational::zero(); rows * cols] }
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.entries[i * self.cols + j] = v;
    }
}

/// Determinant by Bareiss elimination.
pub fn det(m: &IntMatrix) -> Result<BigInt> {
    if !m.is_square() {
        return Err(CycError::Dimension(format!("det of {}x{}", m.rows, m.cols)));
    }
    let n = m.rows;
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut a: Vec<Vec<BigInt>> = (0..n).map(|i| (0..n).map(|j| m.get(i, j).clone()).collect()).collect();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if negate { -d } else { d })
}

/// The diagonal cofactors `det(L_{i,i})` of a square matrix.
///
/// For a CB matrix all rows of the adjugate coincide, so this is the common row.
pub fn adjugate_row(l: &IntMatrix) -> Result<Vec<BigInt>> {
    if !l.is_square() {
        return Err(CycError::Dimension("adjugate_row needs a square matrix".into()));
    }
    (0..l.rows).map(|i| det(&l.minor(i, i))).collect()
}

/// Divides a positive vector by the gcd of its entries.
pub fn grading_vector(mu: &[BigInt]) -> Result<Vec<BigInt>> {
    if let Some(bad) = mu.iter().position(|m| !m.is_positive()) {
        return Err(CycError::NotIrreducible(format!("adjugate entry {} is {}", bad + 1, mu[bad])));
    }
    let g = mu.iter().fold(BigInt::zero(), |acc, m| acc.gcd(m));
    Ok(mu.iter().map(|m| m / &g).collect())
}

/// Rank over the rationals.
pub fn rank(m: &RatMatrix) -> usize {
    let mut sm = SparseIntMatrix::new(m.cols);
    for i in 0..m.rows {
        let row = &m.entries[i * m.cols..(i + 1) * m.cols];
        let den = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let ints: Vec<(usize, BigInt)> = row
            .iter()
            .enumerate()
            .filter(|(_, q)| !q.is_zero())
            .map(|(j, q)| (j, q.numer() * (&den / q.denom())))
            .collect();
        sm.push_row(ints);
    }
    sm.rank()
}

/// Sparse integer matrix used for large, very sparse rank computations.
#[derive(Clone, Debug, Default)]
pub struct SparseIntMatrix {
    pub cols: usize,
    pub rows: Vec<Vec<(usize, BigInt)>>,
}

impl SparseIntMatrix {
    pub fn new(cols: usize) -> Self {
        SparseIntMatrix { cols, rows: Vec::new() }
    }

    /// Appends a row; duplicate columns are summed and zeros dropped.
    pub fn push_row(&mut self, mut entries: Vec<(usize, BigInt)>) {
        entries.sort_by_key(|e| e.0);
        let mut row: Vec<(usize, BigInt)> = Vec::with_capacity(entries.len());
        for (c, v) in entries {
            assert!(c < self.cols, "column {c} out of range");
            match row.last_mut() {
                Some(last) if last.0 == c => last.1 += v,
                _ => row.push((c, v)),
            }
        }
        row.retain(|e| !e.1.is_zero());
        self.rows.push(row);
    }

    /// Exact rank over the rationals.
    pub fn rank(&self) -> usize {
        self.components().iter().map(|rows| component_rank(rows)).sum()
    }

    /// Groups rows that are linked through shared columns.
    fn components(&self) -> Vec<Vec<&Vec<(usize, BigInt)>>> {
        let mut parent: Vec<usize> = (0..self.cols).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for row in &self.rows {
            if let Some(&(c0, _)) = row.first() {
                for &(c, _) in &row[1..] {
                    let a = find(&mut parent, c0);
                    let b = find(&mut parent, c);
                    if a != b {
                        parent[a] = b;
                    }
                }
            }
        }
        let mut groups: HashMap<usize, Vec<&Vec<(usize, BigInt)>>> = HashMap::new();
        for row in &self.rows {
            if let Some(&(c0, _)) = row.first() {
                let root = find(&mut parent, c0);
                groups.entry(root).or_default().push(row);
            }
        }
        let mut out: Vec<_> = groups.into_values().collect();
        out.sort_by_key(|g| g[0][0].0);
        out
    }
}

fn component_rank(rows: &[&Vec<(usize, BigInt)>]) -> usize {
    let small: Option<Vec<Vec<(usize, i64)>>> = rows
        .iter()
        .map(|r| r.iter().map(|(c, v)| v.to_i64().map(|x| (*c, x))).collect())
        .collect();
    if let Some(small) = small {
        if let Some(r) = echelon_rank(small) {
            return r;
        }
    }
    let big: Vec<Vec<(usize, BigInt)>> = rows.iter().map(|r| (*r).clone()).collect();
    echelon_rank(big).expect("bigint elimination cannot overflow")
}

/// Integer scalar usable in fraction-free row elimination.
trait ElimScalar: Clone + PartialEq {
    fn is_zero_val(&self) -> bool;
    /// `a*x - b*y`, or `None` on overflow.
    fn cross(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self>;
    fn gcd_val(&self, other: &Self) -> Self;
    fn div_exact(&self, d: &Self) -> Self;
    fn is_unit(&self) -> bool;
}

impl ElimScalar for i64 {
    fn is_zero_val(&self) -> bool {
        *self == 0
    }
    fn cross(a: &i64, x: &i64, b: &i64, y: &i64) -> Option<i64> {
        a.checked_mul(*x)?.checked_sub(b.checked_mul(*y)?)
    }
    fn gcd_val(&self, other: &i64) -> i64 {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, d: &i64) -> i64 {
        self / d
    }
    fn is_unit(&self) -> bool {
        self.abs() == 1
    }
}

impl ElimScalar for BigInt {
    fn is_zero_val(&self) -> bool {
        self.is_zero()
    }
    fn cross(a: &BigInt, x: &BigInt, b: &BigInt, y: &BigInt) -> Option<BigInt> {
        Some(a * x - b * y)
    }
    fn gcd_val(&self, other: &BigInt) -> BigInt {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, d: &BigInt) -> BigInt {
        self / d
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
}

/// Row echelon by insertion: each row is reduced against stored pivot rows
/// (keyed by leading column) until it vanishes or claims a new pivot.
fn echelon_rank<T: ElimScalar>(rows: Vec<Vec<(usize, T)>>) -> Option<usize> {
    let mut pivots: HashMap<usize, Vec<(usize, T)>> = HashMap::new();
    let mut order: Vec<Vec<(usize, T)>> = rows;
    order.sort_by_key(|r| r.len());
    for mut row in order {
        while let Some((lead, _)) = row.first() {
            let Some(p) = pivots.get(lead) else {
                pivots.insert(*lead, row);
                break;
            };
            row = eliminate(&row, p)?;
        }
    }
    Some(pivots.len())
}

/// `p0*row - r0*pivot`, with the row content divided out.
fn eliminate<T: ElimScalar>(row: &[(usize, T)], pivot: &[(usize, T)]) -> Option<Vec<(usize, T)>> {
    let r0 = &row[0].1;
    let p0 = &pivot[0].1;
    let mut out: Vec<(usize, T)> = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (1, 1);
    let zero = T::cross(r0, p0, p0, r0)?;
    while i < row.len() || j < pivot.len() {
        let ci = row.get(i).map_or(usize::MAX, |e| e.0);
        let cj = pivot.get(j).map_or(usize::MAX, |e| e.0);
        let (c, v) = if ci == cj {
            let v = T::cross(p0, &row[i].1, r0, &pivot[j].1)?;
            i += 1;
            j += 1;
            (ci, v)
        } else if ci < cj {
            let v = T::cross(p0, &row[i].1, r0, &zero)?;
            i += 1;
            (ci, v)
        } else {
            let v = T::cross(p0, &zero, r0, &pivot[j].1)?;
            j += 1;
            (cj, v)
        };
        if !v.is_zero_val() {
            out.push((c, v));
        }
    }
    if let Some(first) = out.first() {
        let mut g = first.1.clone();
        for (_, v) in &out[1..] {
            if g.is_unit() {
                break;
            }
            g = g.gcd_val(v);
        }
        if !g.is_unit() && !g.is_zero_val() {
            for e in out.iter_mut() {
                e.1 = e.1.div_exact(&g);
            }
        }
    }
    Some(out)
}
