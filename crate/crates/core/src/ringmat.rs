//! The circulant ring GF(p)[x]/(x^L - 1), dense matrices over GF(p) and over
//! GF(p^m), the Vandermonde diagonalization of the cyclic permutation matrix,
//! and matrices whose entries are ring polynomials.
//!
//! Conventions, fixed once here and relied on everywhere else:
//!
//! - Data units are row vectors and right-multiply matrices.
//! - `C_L` is the cyclic permutation matrix with ones on the first
//!   superdiagonal and in the bottom-left corner, so a row vector times `C_L`
//!   is its right cyclic shift.
//! - A ring polynomial `a` expands to the circulant `sum_j a_j C_L^j`, i.e.
//!   entry (i, j) of the circulant is `a[(j - i) mod L]`.

use crate::field::{ExtElem, ExtField, FieldError, Gfp, PrimeModulus};
use serde::{Deserialize, Serialize};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatError {
    #[error("dimension mismatch: {0}")]
    Shape(String),
    #[error("ring parameter mismatch: (p, L) = ({p1}, {l1}) vs ({p2}, {l2})")]
    RingMismatch { p1: u64, l1: u64, p2: u64, l2: u64 },
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not circulant")]
    NotCirculant,
    #[error(transparent)]
    Field(#[from] FieldError),
}

// ---------------------------------------------------------------------------
// Dense matrices over GF(p)
// ---------------------------------------------------------------------------

/// Row-major dense matrix over GF(p). Entries live in `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatP {
    pub p: u64,
    pub rows: usize,
    pub cols: usize,
    data: Vec<u64>,
}

impl MatP {
    pub fn zero(p: u64, rows: usize, cols: usize) -> Self {
        MatP {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u64, n: usize) -> Self {
        let mut m = Self::zero(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(p: u64, rows: &[Vec<u64>]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut m = Self::zero(p, r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v % p);
            }
        }
        m
    }

    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v % self.p;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    fn gf(&self) -> Gfp {
        Gfp::new(PrimeModulus::new(self.p).expect("p validated at construction"))
    }

    pub fn add(&self, other: &MatP) -> MatP {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let gf = self.gf();
        MatP {
            p: self.p,
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| gf.add(a, b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &MatP) -> MatP {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let gf = self.gf();
        MatP {
            p: self.p,
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| gf.sub(a, b))
                .collect(),
        }
    }

    pub fn mul(&self, other: &MatP) -> MatP {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let gf = self.gf();
        let mut out = MatP::zero(self.p, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = gf.add(out.get(i, j), gf.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn scale(&self, c: u64) -> MatP {
        let gf = self.gf();
        MatP {
            p: self.p,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| gf.mul(a, c)).collect(),
        }
    }

    pub fn transpose(&self) -> MatP {
        let mut out = MatP::zero(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    /// Row vector (1 x n matrix) times self.
    pub fn apply_row(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.rows);
        let gf = self.gf();
        let mut out = vec![0u64; self.cols];
        for (k, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for j in 0..self.cols {
                out[j] = gf.add(out[j], gf.mul(a, self.get(k, j)));
            }
        }
        out
    }

    /// Horizontal juxtaposition [A_1 A_2 ... ].
    pub fn hstack(parts: &[&MatP]) -> MatP {
        assert!(!parts.is_empty());
        let p = parts[0].p;
        let rows = parts[0].rows;
        let cols: usize = parts.iter().map(|m| m.cols).sum();
        let mut out = MatP::zero(p, rows, cols);
        let mut off = 0;
        for m in parts {
            assert_eq!(m.rows, rows);
            for i in 0..rows {
                for j in 0..m.cols {
                    out.set(i, off + j, m.get(i, j));
                }
            }
            off += m.cols;
        }
        out
    }

    /// Vertical juxtaposition.
    pub fn vstack(parts: &[&MatP]) -> MatP {
        assert!(!parts.is_empty());
        let p = parts[0].p;
        let cols = parts[0].cols;
        let rows: usize = parts.iter().map(|m| m.rows).sum();
        let mut out = MatP::zero(p, rows, cols);
        let mut off = 0;
        for m in parts {
            assert_eq!(m.cols, cols);
            for i in 0..m.rows {
                for j in 0..cols {
                    out.set(off + i, j, m.get(i, j));
                }
            }
            off += m.rows;
        }
        out
    }

    /// Assembles a block matrix from equally shaped blocks.
    pub fn from_blocks(blocks: &[Vec<&MatP>]) -> MatP {
        let rows: Vec<MatP> = blocks
            .iter()
            .map(|row| {
                let refs: Vec<&MatP> = row.to_vec();
                MatP::hstack(&refs)
            })
            .collect();
        let refs: Vec<&MatP> = rows.iter().collect();
        MatP::vstack(&refs)
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> MatP {
        let mut out = MatP::zero(self.p, rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                out.set(i, j, self.get(r, c));
            }
        }
        out
    }

    /// I_l (x) A: block-diagonal with l copies of A.
    pub fn kron_expand(&self, l: usize) -> MatP {
        assert!(l >= 1);
        let mut out = MatP::zero(self.p, self.rows * l, self.cols * l);
        for b in 0..l {
            for i in 0..self.rows {
                for j in 0..self.cols {
                    out.set(b * self.rows + i, b * self.cols + j, self.get(i, j));
                }
            }
        }
        out
    }

    /// Field rank by Gaussian elimination; GF(2) goes through the word-packed
    /// path used by the MDS subset sweep.
    pub fn rank(&self) -> usize {
        if self.p == 2 {
            return bitrank(self.rows, self.cols, |i, j| self.get(i, j) == 1);
        }
        let gf = self.gf();
        let mut m = self.data.clone();
        let (r, c) = (self.rows, self.cols);
        let mut rank = 0;
        for col in 0..c {
            if rank == r {
                break;
            }
            let pivot = (rank..r).find(|&i| m[i * c + col] != 0);
            let Some(pi) = pivot else { continue };
            for j in 0..c {
                m.swap(rank * c + j, pi * c + j);
            }
            let inv = gf.inv(m[rank * c + col]).unwrap();
            for j in col..c {
                m[rank * c + j] = gf.mul(m[rank * c + j], inv);
            }
            for i in 0..r {
                if i != rank && m[i * c + col] != 0 {
                    let f = m[i * c + col];
                    for j in col..c {
                        let t = gf.mul(f, m[rank * c + j]);
                        m[i * c + j] = gf.sub(m[i * c + j], t);
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn det(&self) -> u64 {
        assert_eq!(self.rows, self.cols);
        let gf = self.gf();
        let n = self.rows;
        let mut m = self.data.clone();
        let mut det = 1u64;
        for col in 0..n {
            let pivot = (col..n).find(|&i| m[i * n + col] != 0);
            let Some(pi) = pivot else { return 0 };
            if pi != col {
                for j in 0..n {
                    m.swap(col * n + j, pi * n + j);
                }
                det = gf.neg(det);
            }
            let pv = m[col * n + col];
            det = gf.mul(det, pv);
            let inv = gf.inv(pv).unwrap();
            for i in col + 1..n {
                if m[i * n + col] != 0 {
                    let f = gf.mul(m[i * n + col], inv);
                    for j in col..n {
                        let t = gf.mul(f, m[col * n + j]);
                        m[i * n + j] = gf.sub(m[i * n + j], t);
                    }
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Result<MatP, MatError> {
        assert_eq!(self.rows, self.cols);
        let gf = self.gf();
        let n = self.rows;
        let mut m = self.clone();
        let mut inv = MatP::identity(self.p, n);
        for col in 0..n {
            let pivot = (col..n).find(|&i| m.get(i, col) != 0);
            let Some(pi) = pivot else {
                return Err(MatError::Singular);
            };
            if pi != col {
                for j in 0..n {
                    let (a, b) = (m.get(col, j), m.get(pi, j));
                    m.set(col, j, b);
                    m.set(pi, j, a);
                    let (a, b) = (inv.get(col, j), inv.get(pi, j));
                    inv.set(col, j, b);
                    inv.set(pi, j, a);
                }
            }
            let f = gf.inv(m.get(col, col)).unwrap();
            for j in 0..n {
                m.set(col, j, gf.mul(m.get(col, j), f));
                inv.set(col, j, gf.mul(inv.get(col, j), f));
            }
            for i in 0..n {
                if i != col && m.get(i, col) != 0 {
                    let f = m.get(i, col);
                    for j in 0..n {
                        let t = gf.sub(m.get(i, j), gf.mul(f, m.get(col, j)));
                        m.set(i, j, t);
                        let t = gf.sub(inv.get(i, j), gf.mul(f, inv.get(col, j)));
                        inv.set(i, j, t);
                    }
                }
            }
        }
        Ok(inv)
    }

    /// Adjugate by cofactor expansion; satisfies A adj(A) = det(A) I even for
    /// singular A.
    pub fn adjugate(&self) -> MatP {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let gf = self.gf();
        let mut out = MatP::zero(self.p, n, n);
        if n == 1 {
            out.set(0, 0, 1);
            return out;
        }
        for i in 0..n {
            for j in 0..n {
                let rows: Vec<usize> = (0..n).filter(|&r| r != i).collect();
                let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
                let minor = self.submatrix(&rows, &cols).det();
                let v = if (i + j) % 2 == 0 { minor } else { gf.neg(minor) };
                out.set(j, i, v);
            }
        }
        out
    }
}

/// Word-packed GF(2) row reduction. `one(i, j)` reports whether entry (i, j)
/// is set; callers avoid materializing intermediate matrices in hot loops.
pub fn bitrank(rows: usize, cols: usize, one: impl Fn(usize, usize) -> bool) -> usize {
    let words = cols.div_ceil(64);
    let mut m: Vec<Vec<u64>> = (0..rows)
        .map(|i| {
            let mut w = vec![0u64; words];
            for j in 0..cols {
                if one(i, j) {
                    w[j / 64] |= 1 << (j % 64);
                }
            }
            w
        })
        .collect();
    let mut rank = 0;
    for col in 0..cols {
        let (w, b) = (col / 64, col % 64);
        let Some(pi) = (rank..rows).find(|&i| m[i][w] >> b & 1 == 1) else {
            continue;
        };
        m.swap(rank, pi);
        for i in 0..rows {
            if i != rank && m[i][w] >> b & 1 == 1 {
                let (head, tail) = m.split_at_mut(rank.max(i));
                let (src, dst) = if i < rank {
                    (&tail[0], &mut head[i])
                } else {
                    (&head[rank], &mut tail[0])
                };
                for k in 0..words {
                    dst[k] ^= src[k];
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

// ---------------------------------------------------------------------------
// Dense matrices over GF(p^m)
// ---------------------------------------------------------------------------

/// Row-major dense matrix whose entries share one extension field.
#[derive(Debug, Clone)]
pub struct MatExt {
    pub field: Arc<ExtField>,
    pub rows: usize,
    pub cols: usize,
    data: Vec<ExtElem>,
}

impl PartialEq for MatExt {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.rows == other.rows
            && self.cols == other.cols
            && self.data == other.data
    }
}

impl MatExt {
    pub fn zero(field: Arc<ExtField>, rows: usize, cols: usize) -> Self {
        let z = field.zero();
        MatExt {
            field,
            rows,
            cols,
            data: vec![z; rows * cols],
        }
    }

    pub fn identity(field: Arc<ExtField>, n: usize) -> Self {
        let mut m = Self::zero(field, n, n);
        for i in 0..n {
            let one = m.field.one();
            m.set(i, i, one);
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &ExtElem {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: ExtElem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &MatExt) -> MatExt {
        assert_eq!(self.cols, other.rows);
        let f = &self.field;
        let mut out = MatExt::zero(self.field.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), &f.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &MatExt) -> MatExt {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = &self.field;
        let mut out = self.clone();
        for i in 0..self.rows * self.cols {
            out.data[i] = f.add(&self.data[i], &other.data[i]);
        }
        out
    }

    pub fn scale(&self, c: &ExtElem) -> MatExt {
        let f = &self.field;
        let mut out = self.clone();
        for v in out.data.iter_mut() {
            *v = f.mul(v, c);
        }
        out
    }

    pub fn transpose(&self) -> MatExt {
        let mut out = MatExt::zero(self.field.clone(), self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> MatExt {
        let mut out = MatExt::zero(self.field.clone(), rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                out.set(i, j, self.get(r, c).clone());
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        let f = &self.field;
        let mut m = self.data.clone();
        let (r, c) = (self.rows, self.cols);
        let mut rank = 0;
        for col in 0..c {
            if rank == r {
                break;
            }
            let Some(pi) = (rank..r).find(|&i| !f.is_zero(&m[i * c + col])) else {
                continue;
            };
            for j in 0..c {
                m.swap(rank * c + j, pi * c + j);
            }
            let inv = f.inv(&m[rank * c + col]).unwrap();
            for j in col..c {
                m[rank * c + j] = f.mul(&m[rank * c + j], &inv);
            }
            for i in 0..r {
                if i != rank && !f.is_zero(&m[i * c + col]) {
                    let fac = m[i * c + col].clone();
                    for j in col..c {
                        let t = f.mul(&fac, &m[rank * c + j]);
                        m[i * c + j] = f.sub(&m[i * c + j], &t);
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn det(&self) -> ExtElem {
        assert_eq!(self.rows, self.cols);
        let f = &self.field;
        let n = self.rows;
        let mut m = self.data.clone();
        let mut det = f.one();
        for col in 0..n {
            let Some(pi) = (col..n).find(|&i| !f.is_zero(&m[i * n + col])) else {
                return f.zero();
            };
            if pi != col {
                for j in 0..n {
                    m.swap(col * n + j, pi * n + j);
                }
                det = f.neg(&det);
            }
            det = f.mul(&det, &m[col * n + col]);
            let inv = f.inv(&m[col * n + col]).unwrap();
            for i in col + 1..n {
                if !f.is_zero(&m[i * n + col]) {
                    let fac = f.mul(&m[i * n + col], &inv);
                    for j in col..n {
                        let t = f.mul(&fac, &m[col * n + j]);
                        m[i * n + j] = f.sub(&m[i * n + j], &t);
                    }
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Result<MatExt, MatError> {
        assert_eq!(self.rows, self.cols);
        let f = self.field.clone();
        let n = self.rows;
        let mut m = self.clone();
        let mut inv = MatExt::identity(f.clone(), n);
        for col in 0..n {
            let Some(pi) = (col..n).find(|&i| !f.is_zero(m.get(i, col))) else {
                return Err(MatError::Singular);
            };
            if pi != col {
                for j in 0..n {
                    let (a, b) = (m.get(col, j).clone(), m.get(pi, j).clone());
                    m.set(col, j, b);
                    m.set(pi, j, a);
                    let (a, b) = (inv.get(col, j).clone(), inv.get(pi, j).clone());
                    inv.set(col, j, b);
                    inv.set(pi, j, a);
                }
            }
            let fac = f.inv(m.get(col, col)).unwrap();
            for j in 0..n {
                m.set(col, j, f.mul(m.get(col, j), &fac));
                inv.set(col, j, f.mul(inv.get(col, j), &fac));
            }
            for i in 0..n {
                if i != col && !f.is_zero(m.get(i, col)) {
                    let fac = m.get(i, col).clone();
                    for j in 0..n {
                        let t = f.sub(m.get(i, j), &f.mul(&fac, m.get(col, j)));
                        m.set(i, j, t);
                        let t = f.sub(inv.get(i, j), &f.mul(&fac, inv.get(col, j)));
                        inv.set(i, j, t);
                    }
                }
            }
        }
        Ok(inv)
    }

    pub fn adjugate(&self) -> MatExt {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let f = &self.field;
        let mut out = MatExt::zero(self.field.clone(), n, n);
        if n == 1 {
            let one = f.one();
            out.set(0, 0, one);
            return out;
        }
        for i in 0..n {
            for j in 0..n {
                let rows: Vec<usize> = (0..n).filter(|&r| r != i).collect();
                let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
                let minor = self.submatrix(&rows, &cols).det();
                let v = if (i + j) % 2 == 0 { minor } else { f.neg(&minor) };
                out.set(j, i, v);
            }
        }
        out
    }

    /// Maps a matrix with all entries in the prime subfield down to GF(p).
    pub fn to_gfp(&self) -> Option<MatP> {
        let mut out = MatP::zero(self.field.p(), self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.field.base_value(self.get(i, j))?);
            }
        }
        Some(out)
    }

    pub fn from_gfp(field: Arc<ExtField>, m: &MatP) -> MatExt {
        let mut out = MatExt::zero(field.clone(), m.rows, m.cols);
        for i in 0..m.rows {
            for j in 0..m.cols {
                out.set(i, j, field.from_base(m.get(i, j)));
            }
        }
        out
    }
}

// ---------------------------------------------------------------------------
// The ring GF(p)[x]/(x^L - 1)
// ---------------------------------------------------------------------------

/// Element of GF(p)[x]/(x^L - 1): the canonical form of an L x L circulant.
/// `coeffs[j]` is the coefficient of x^j; length is exactly L.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RingPoly {
    pub p: u64,
    pub l: u64,
    pub coeffs: Vec<u64>,
}

impl RingPoly {
    pub fn zero(p: u64, l: u64) -> Self {
        RingPoly {
            p,
            l,
            coeffs: vec![0; l as usize],
        }
    }

    pub fn one(p: u64, l: u64) -> Self {
        Self::monomial(p, l, 0, 1)
    }

    /// c * x^e (exponent taken mod L).
    pub fn monomial(p: u64, l: u64, e: u64, c: u64) -> Self {
        let mut out = Self::zero(p, l);
        out.coeffs[(e % l) as usize] = c % p;
        out
    }

    pub fn from_coeffs(p: u64, l: u64, coeffs: &[u64]) -> Self {
        let mut out = Self::zero(p, l);
        for (j, &c) in coeffs.iter().enumerate() {
            let idx = j % l as usize;
            out.coeffs[idx] = (out.coeffs[idx] + c) % p;
        }
        out
    }

    fn gf(&self) -> Gfp {
        Gfp::new(PrimeModulus::new(self.p).expect("p validated upstream"))
    }

    fn check_ring(&self, other: &RingPoly) -> Result<(), MatError> {
        if self.p != other.p || self.l != other.l {
            return Err(MatError::RingMismatch {
                p1: self.p,
                l1: self.l,
                p2: other.p,
                l2: other.l,
            });
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Number of nonzero coefficients.
    pub fn weight(&self) -> usize {
        self.coeffs.iter().filter(|&&c| c != 0).count()
    }

    /// Degree of the canonical representative, or None for the zero element.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|&c| c != 0)
    }

    pub fn add(&self, other: &RingPoly) -> RingPoly {
        self.check_ring(other).unwrap();
        let gf = self.gf();
        RingPoly {
            p: self.p,
            l: self.l,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| gf.add(a, b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &RingPoly) -> RingPoly {
        self.check_ring(other).unwrap();
        let gf = self.gf();
        RingPoly {
            p: self.p,
            l: self.l,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| gf.sub(a, b))
                .collect(),
        }
    }

    pub fn neg(&self) -> RingPoly {
        let gf = self.gf();
        RingPoly {
            p: self.p,
            l: self.l,
            coeffs: self.coeffs.iter().map(|&a| gf.neg(a)).collect(),
        }
    }

    /// Cyclic convolution.
    pub fn mul(&self, other: &RingPoly) -> RingPoly {
        self.check_ring(other).unwrap();
        let gf = self.gf();
        let l = self.l as usize;
        let mut out = vec![0u64; l];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let k = (i + j) % l;
                out[k] = gf.add(out[k], gf.mul(a, b));
            }
        }
        RingPoly {
            p: self.p,
            l: self.l,
            coeffs: out,
        }
    }

    pub fn scale(&self, c: u64) -> RingPoly {
        let gf = self.gf();
        RingPoly {
            p: self.p,
            l: self.l,
            coeffs: self.coeffs.iter().map(|&a| gf.mul(a, c)).collect(),
        }
    }

    /// Square-and-multiply in the ring.
    pub fn pow(&self, mut exp: u64) -> RingPoly {
        let mut acc = RingPoly::one(self.p, self.l);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            exp >>= 1;
        }
        acc
    }

    /// Expands to the circulant matrix sum_j a_j C_L^j.
    pub fn as_circulant(&self) -> MatP {
        let l = self.l as usize;
        let mut out = MatP::zero(self.p, l, l);
        for i in 0..l {
            for j in 0..l {
                out.set(i, j, self.coeffs[(j + l - i) % l]);
            }
        }
        out
    }

    /// Inverse of [`RingPoly::as_circulant`]; rejects non-circulant input.
    pub fn from_circulant(m: &MatP) -> Result<RingPoly, MatError> {
        if m.rows != m.cols {
            return Err(MatError::NotCirculant);
        }
        let l = m.rows;
        let coeffs: Vec<u64> = (0..l).map(|j| m.get(0, j)).collect();
        for i in 1..l {
            for j in 0..l {
                if m.get(i, j) != coeffs[(j + l - i) % l] {
                    return Err(MatError::NotCirculant);
                }
            }
        }
        Ok(RingPoly {
            p: m.p,
            l: l as u64,
            coeffs,
        })
    }

    /// Horner evaluation at a point of GF(p^m).
    pub fn eval_at(&self, field: &ExtField, point: &ExtElem) -> ExtElem {
        let mut acc = field.zero();
        for &c in self.coeffs.iter().rev() {
            acc = field.mul(&acc, point);
            acc = field.add(&acc, &field.from_base(c));
        }
        acc
    }

    /// Evaluation at a GF(p) point.
    pub fn eval_base(&self, x: u64) -> u64 {
        let gf = self.gf();
        let mut acc = 0;
        for &c in self.coeffs.iter().rev() {
            acc = gf.add(gf.mul(acc, x), c);
        }
        acc
    }
}

// ---------------------------------------------------------------------------
// Vandermonde pair and diagonalization
// ---------------------------------------------------------------------------

/// V_L, the reversed-exponent twin, and the diagonal of beta powers.
pub struct VandermondePair {
    pub v: MatExt,
    pub v_tilde: MatExt,
    pub lambda: MatExt,
}

/// V[i][j] = beta^(ij), V~[i][j] = beta^(-ij), Lambda = diag(beta^i).
/// Requires beta of exact order L.
pub fn vandermonde_pair(field: Arc<ExtField>, l: u64, beta: &ExtElem) -> VandermondePair {
    let lu = l as usize;
    let mut powers = Vec::with_capacity(lu);
    let mut acc = field.one();
    for _ in 0..lu {
        powers.push(acc.clone());
        acc = field.mul(&acc, beta);
    }
    let mut v = MatExt::zero(field.clone(), lu, lu);
    let mut vt = MatExt::zero(field.clone(), lu, lu);
    let mut lam = MatExt::zero(field.clone(), lu, lu);
    for i in 0..lu {
        for j in 0..lu {
            let e = (i * j) % lu;
            v.set(i, j, powers[e].clone());
            vt.set(i, j, powers[(lu - e) % lu].clone());
        }
        lam.set(i, i, powers[i].clone());
    }
    VandermondePair {
        v,
        v_tilde: vt,
        lambda: lam,
    }
}

// ---------------------------------------------------------------------------
// Matrices of ring polynomials
// ---------------------------------------------------------------------------

/// Matrix whose entries are ring polynomials sharing one (p, L).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    pub p: u64,
    pub l: u64,
    pub rows: usize,
    pub cols: usize,
    data: Vec<RingPoly>,
}

impl PolyMatrix {
    pub fn zero(p: u64, l: u64, rows: usize, cols: usize) -> Self {
        PolyMatrix {
            p,
            l,
            rows,
            cols,
            data: vec![RingPoly::zero(p, l); rows * cols],
        }
    }

    pub fn identity(p: u64, l: u64, n: usize) -> Self {
        let mut m = Self::zero(p, l, n, n);
        for i in 0..n {
            m.set(i, i, RingPoly::one(p, l));
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &RingPoly {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RingPoly) {
        assert_eq!((v.p, v.l), (self.p, self.l), "ring parameter mismatch");
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = PolyMatrix::zero(self.p, self.l, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j).add(&a.mul(other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn scale(&self, f: &RingPoly) -> PolyMatrix {
        let mut out = self.clone();
        for v in out.data.iter_mut() {
            *v = v.mul(f);
        }
        out
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        let mut out = PolyMatrix::zero(self.p, self.l, rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                out.set(i, j, self.get(r, c).clone());
            }
        }
        out
    }

    /// Entrywise evaluation at a point of GF(p^m).
    pub fn eval_at(&self, field: Arc<ExtField>, point: &ExtElem) -> MatExt {
        let mut out = MatExt::zero(field.clone(), self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).eval_at(&field, point));
            }
        }
        out
    }

    /// Expands every entry to its circulant, giving a (rows*L) x (cols*L)
    /// matrix over GF(p).
    pub fn expand(&self) -> MatP {
        let l = self.l as usize;
        let mut out = MatP::zero(self.p, self.rows * l, self.cols * l);
        for bi in 0..self.rows {
            for bj in 0..self.cols {
                let blk = self.get(bi, bj);
                for i in 0..l {
                    for j in 0..l {
                        out.set(bi * l + i, bj * l + j, blk.coeffs[(j + l - i) % l]);
                    }
                }
            }
        }
        out
    }

    /// Determinant in the ring: cofactor expansion for small matrices, the
    /// division-free characteristic-polynomial route above that (the ring has
    /// zero divisors, so fraction-free elimination is not available).
    pub fn poly_det(&self) -> RingPoly {
        assert_eq!(self.rows, self.cols);
        if self.rows <= 6 {
            self.det_cofactor()
        } else {
            self.char_poly_vec().1
        }
    }

    /// Adjugate in the ring; satisfies M * Adj(M) = det(M) * I.
    pub fn poly_adjugate(&self) -> PolyMatrix {
        assert_eq!(self.rows, self.cols);
        if self.rows <= 6 {
            self.adjugate_cofactor()
        } else {
            self.char_poly_vec().2
        }
    }

    fn det_cofactor(&self) -> RingPoly {
        let n = self.rows;
        if n == 0 {
            return RingPoly::one(self.p, self.l);
        }
        if n == 1 {
            return self.get(0, 0).clone();
        }
        let mut det = RingPoly::zero(self.p, self.l);
        let cols: Vec<usize> = (1..n).collect();
        for i in 0..n {
            if self.get(i, 0).is_zero() {
                continue;
            }
            let rows: Vec<usize> = (0..n).filter(|&r| r != i).collect();
            let minor = self.submatrix(&rows, &cols).det_cofactor();
            let term = self.get(i, 0).mul(&minor);
            det = if i % 2 == 0 {
                det.add(&term)
            } else {
                det.sub(&term)
            };
        }
        det
    }

    fn adjugate_cofactor(&self) -> PolyMatrix {
        let n = self.rows;
        let mut out = PolyMatrix::zero(self.p, self.l, n, n);
        if n == 1 {
            out.set(0, 0, RingPoly::one(self.p, self.l));
            return out;
        }
        for i in 0..n {
            for j in 0..n {
                let rows: Vec<usize> = (0..n).filter(|&r| r != i).collect();
                let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
                let minor = self.submatrix(&rows, &cols).det_cofactor();
                let v = if (i + j) % 2 == 0 { minor } else { minor.neg() };
                out.set(j, i, v);
            }
        }
        out
    }

    /// Division-free Berkowitz characteristic polynomial. Returns the monic
    /// coefficient vector c with det(tI - M) = sum_i c[i] t^(n-i), the
    /// determinant, and the adjugate recovered through Cayley-Hamilton.
    fn char_poly_vec(&self) -> (Vec<RingPoly>, RingPoly, PolyMatrix) {
        let n = self.rows;
        let one = RingPoly::one(self.p, self.l);
        let mut c: Vec<RingPoly> = vec![one.clone()];
        for r in 1..=n {
            // principal r x r leading block, split as [[M, col], [row, a]]
            let idx: Vec<usize> = (0..r - 1).collect();
            let m = self.submatrix(&idx, &idx);
            let row = self.submatrix(&[r - 1], &idx);
            let col = self.submatrix(&idx, &[r - 1]);
            let a = self.get(r - 1, r - 1).clone();
            // toeplitz entries: t.get(0) = 1 coefficient handled implicitly
            // diag offset 1: -a; offset d >= 2: -(row * M^(d-2) * col)
            let mut offs: Vec<RingPoly> = Vec::with_capacity(r + 1);
            offs.push(one.clone());
            offs.push(a.neg());
            let mut acc = col.clone();
            for _ in 2..=r {
                let val = row.mul(&acc).get(0, 0).clone();
                offs.push(val.neg());
                acc = m.mul(&acc);
            }
            let mut next = vec![RingPoly::zero(self.p, self.l); r + 1];
            for (i, item) in next.iter_mut().enumerate() {
                for (d, off) in offs.iter().enumerate() {
                    if i >= d && i - d < c.len() {
                        *item = item.add(&off.mul(&c[i - d]));
                    }
                }
            }
            c = next;
        }
        // det(M) = (-1)^n * constant coefficient of det(tI - M)
        let det = if n % 2 == 0 {
            c[n].clone()
        } else {
            c[n].neg()
        };
        // Cayley-Hamilton: M * (M^(n-1) + c1 M^(n-2) + ... + c_{n-1} I) = -c_n I
        let mut b = PolyMatrix::zero(self.p, self.l, n, n);
        let mut pw = PolyMatrix::identity(self.p, self.l, n);
        for i in (0..n).rev() {
            // add c[i] * M^(n-1-i)
            let term = pw.scale(&c[i]);
            for r_ in 0..n {
                for c_ in 0..n {
                    b.set(r_, c_, b.get(r_, c_).add(term.get(r_, c_)));
                }
            }
            if i > 0 {
                pw = pw.mul(self);
            }
        }
        let adj = if n % 2 == 0 {
            b.scale(&one.neg())
        } else {
            b
        };
        (c, det, adj)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{mult_order, primitive_root_of_unity};
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn ctx(p: u64, l: u64) -> (Arc<ExtField>, ExtElem, u64) {
        let pm = PrimeModulus::new(p).unwrap();
        let m = mult_order(pm, l).unwrap();
        let field = Arc::new(ExtField::new(pm, m));
        let beta = primitive_root_of_unity(&field, l).unwrap();
        let (lp, _) = crate::field::scalar_l_in_gfp(pm, l).unwrap();
        (field, beta, lp)
    }

    fn rand_poly(rng: &mut StdRng, p: u64, l: u64) -> RingPoly {
        let coeffs: Vec<u64> = (0..l).map(|_| rng.gen_range(0..p)).collect();
        RingPoly::from_coeffs(p, l, &coeffs)
    }

    #[test]
    fn monomial_wraparound() {
        let x = RingPoly::monomial(2, 5, 1, 1);
        let x4 = RingPoly::monomial(2, 5, 4, 1);
        assert_eq!(x.mul(&x4), RingPoly::one(2, 5));
    }

    #[test]
    fn square_matches_schoolbook() {
        // (x + 1)^2 over GF(2), L = 5 -> x^2 + 1
        let f = RingPoly::from_coeffs(2, 5, &[1, 1]);
        let sq = f.mul(&f);
        assert_eq!(sq, RingPoly::from_coeffs(2, 5, &[1, 0, 1]));
        // schoolbook convolution oracle
        let mut conv = vec![0u64; 9];
        for i in 0..5 {
            for j in 0..5 {
                conv[i + j] = (conv[i + j] + f.coeffs[i] * f.coeffs[j]) % 2;
            }
        }
        let mut wrapped = vec![0u64; 5];
        for (k, &c) in conv.iter().enumerate() {
            wrapped[k % 5] = (wrapped[k % 5] + c) % 2;
        }
        assert_eq!(sq.coeffs, wrapped);
    }

    #[test]
    fn mul_identity() {
        let mut rng = StdRng::seed_from_u64(7);
        for (p, l) in [(2u64, 5u64), (3, 7), (5, 9)] {
            let a = rand_poly(&mut rng, p, l);
            assert_eq!(a.mul(&RingPoly::one(p, l)), a);
        }
    }

    #[test]
    fn cyclic_shift_matrix_shape() {
        // x expands to [[0, I], [1, 0]]
        let c = RingPoly::monomial(2, 5, 1, 1).as_circulant();
        for i in 0..4 {
            for j in 0..5 {
                assert_eq!(c.get(i, j), u64::from(j == i + 1));
            }
        }
        assert_eq!(c.get(4, 0), 1);
        assert_eq!((1..5).map(|j| c.get(4, j)).sum::<u64>(), 0);

        assert_eq!(
            RingPoly::one(2, 5).as_circulant(),
            MatP::identity(2, 5)
        );
    }

    #[test]
    fn row_times_circulant_is_right_shift() {
        // [m11 m12 m13 m14 0] * circ(x^4) = [m12 m13 m14 0 m11]
        let c4 = RingPoly::monomial(2, 5, 4, 1).as_circulant();
        let m = [1u64, 0, 1, 1, 0]; // m11=1 m12=0 m13=1 m14=1
        let out = c4.apply_row(&m);
        assert_eq!(out, vec![0, 1, 1, 0, 1]);
    }

    #[test]
    fn circulant_round_trip_and_rejection() {
        let mut rng = StdRng::seed_from_u64(3);
        for (p, l) in [(2u64, 7u64), (3, 5)] {
            let a = rand_poly(&mut rng, p, l);
            let m = a.as_circulant();
            assert_eq!(RingPoly::from_circulant(&m).unwrap(), a);
        }
        let mut bad = RingPoly::one(2, 4).as_circulant();
        bad.set(2, 2, 0);
        assert_eq!(
            RingPoly::from_circulant(&bad),
            Err(MatError::NotCirculant)
        );
    }

    #[test]
    fn ring_matrix_homomorphism() {
        let mut rng = StdRng::seed_from_u64(11);
        for (p, l) in [(2u64, 5u64), (2, 9), (3, 7), (5, 3)] {
            for _ in 0..250 {
                let a = rand_poly(&mut rng, p, l);
                let b = rand_poly(&mut rng, p, l);
                assert_eq!(
                    a.mul(&b).as_circulant(),
                    a.as_circulant().mul(&b.as_circulant())
                );
                assert_eq!(
                    a.add(&b).as_circulant(),
                    a.as_circulant().add(&b.as_circulant())
                );
            }
        }
    }

    #[test]
    fn eval_constants_and_roots() {
        let (field, beta, _) = ctx(2, 7);
        let one = RingPoly::one(2, 7);
        assert_eq!(one.eval_at(&field, &beta), field.one());
        // x^L - 1 = 0 at every power of beta; over GF(2) that is x^L + 1
        let mut xl1 = RingPoly::zero(2, 7);
        xl1.coeffs[0] = 1; // x^7 = x^0 in the ring: x^7 - 1 = 1 - 1... use raw eval
        for j in 0..7 {
            let pt = field.pow(&beta, j);
            assert_eq!(field.pow(&pt, 7), field.one());
        }
        let _ = xl1;
    }

    #[test]
    fn vandermonde_identities() {
        for (p, l) in [(2u64, 5u64), (2, 9), (3, 5), (5, 7), (2, 15), (3, 13)] {
            let (field, beta, lp) = ctx(p, l);
            let vp = vandermonde_pair(field.clone(), l, &beta);
            let lu = l as usize;
            // V V~ = V~ V = L I
            let li = MatExt::identity(field.clone(), lu).scale(&field.from_base(lp));
            assert_eq!(vp.v.mul(&vp.v_tilde), li);
            assert_eq!(vp.v_tilde.mul(&vp.v), li);
            // V^2 = L (1 (+) reversed identity)
            let mut rev = MatExt::zero(field.clone(), lu, lu);
            rev.set(0, 0, field.from_base(lp));
            for i in 1..lu {
                rev.set(i, lu - i, field.from_base(lp));
            }
            assert_eq!(vp.v.mul(&vp.v), rev);
            assert_eq!(vp.v_tilde.mul(&vp.v_tilde), rev);
        }
    }

    #[test]
    fn cyclic_matrix_diagonalizes() {
        for (p, l) in [(2u64, 5u64), (3, 7), (5, 9)] {
            let (field, beta, lp) = ctx(p, l);
            let pm = PrimeModulus::new(p).unwrap();
            let gf = Gfp::new(pm);
            let l_inv = gf.inv(lp).unwrap();
            let vp = vandermonde_pair(field.clone(), l, &beta);
            for j in 0..l {
                let cj = RingPoly::monomial(p, l, j, 1).as_circulant();
                let mut lam_j = MatExt::zero(field.clone(), l as usize, l as usize);
                for i in 0..l as usize {
                    lam_j.set(i, i, field.pow(vp.lambda.get(i, i), j));
                }
                let rhs = vp
                    .v
                    .mul(&lam_j)
                    .mul(&vp.v_tilde)
                    .scale(&field.from_base(l_inv));
                assert_eq!(rhs.to_gfp().unwrap(), cj);
            }
        }
    }

    #[test]
    fn rank_inverse_adjugate_over_gfp() {
        assert_eq!(MatP::identity(5, 4).rank(), 4);
        let mut rng = StdRng::seed_from_u64(19);
        for p in [2u64, 3, 5] {
            for _ in 0..40 {
                let n = rng.gen_range(1..5);
                let mut m = MatP::zero(p, n, n);
                for i in 0..n {
                    for j in 0..n {
                        m.set(i, j, rng.gen_range(0..p));
                    }
                }
                let adj = m.adjugate();
                let det = m.det();
                let mut want = MatP::identity(p, n);
                want = want.scale(det);
                assert_eq!(m.mul(&adj), want);
                if det != 0 {
                    let inv = m.inverse().unwrap();
                    assert_eq!(m.mul(&inv), MatP::identity(p, n));
                    assert_eq!(m.rank(), n);
                }
            }
        }
    }

    #[test]
    fn adjugate_over_ext_field_matches_cofactor_identity() {
        let (field, beta, _) = ctx(2, 5);
        let mut rng = StdRng::seed_from_u64(23);
        for _ in 0..25 {
            let mut m = MatExt::zero(field.clone(), 3, 3);
            for i in 0..3 {
                for j in 0..3 {
                    let e = field.pow(&beta, rng.gen_range(0..5));
                    let c = field.from_base(rng.gen_range(0..2));
                    m.set(i, j, field.mul(&e, &c));
                }
            }
            let adj = m.adjugate();
            let det = m.det();
            let want = MatExt::identity(field.clone(), 3).scale(&det);
            assert_eq!(m.mul(&adj), want);
        }
    }

    #[test]
    fn bitpacked_rank_matches_generic() {
        let mut rng = StdRng::seed_from_u64(31);
        for _ in 0..60 {
            let r = rng.gen_range(1..9);
            let c = rng.gen_range(1..9);
            let mut m = MatP::zero(2, r, c);
            for i in 0..r {
                for j in 0..c {
                    m.set(i, j, rng.gen_range(0..2));
                }
            }
            // generic path oracle: run the p > 2 code on a fake modulus
            let m3 = MatP {
                p: 3,
                rows: r,
                cols: c,
                data: (0..r * c)
                    .map(|k| m.data[k])
                    .collect(),
            };
            // rank over GF(2) vs rank of the same 0/1 matrix over GF(3) need
            // not agree, so use a direct dense-elimination oracle instead.
            let mut dense: Vec<Vec<u64>> = m.to_rows();
            let mut rank = 0;
            for col in 0..c {
                if let Some(pi) = (rank..r).find(|&i| dense[i][col] == 1) {
                    dense.swap(rank, pi);
                    for i in 0..r {
                        if i != rank && dense[i][col] == 1 {
                            for j in 0..c {
                                dense[i][j] ^= dense[rank][j];
                            }
                        }
                    }
                    rank += 1;
                }
            }
            assert_eq!(m.rank(), rank);
            let _ = m3;
        }
    }

    #[test]
    fn kron_expand_block_structure() {
        let a = MatP::from_rows(2, &[vec![1, 0], vec![1, 1]]);
        assert_eq!(a.kron_expand(1), a);
        assert_eq!(
            MatP::identity(2, 2).kron_expand(3),
            MatP::identity(2, 6)
        );
        let mut rng = StdRng::seed_from_u64(5);
        let mut b = MatP::zero(2, 2, 3);
        let mut c = MatP::zero(2, 3, 2);
        for i in 0..2 {
            for j in 0..3 {
                b.set(i, j, rng.gen_range(0..2));
                c.set(j, i, rng.gen_range(0..2));
            }
        }
        assert_eq!(
            b.kron_expand(2).mul(&c.kron_expand(2)),
            b.mul(&c).kron_expand(2)
        );
    }

    #[test]
    fn poly_det_small_cases() {
        let f = RingPoly::from_coeffs(2, 5, &[1, 1, 0, 1]);
        let g = RingPoly::from_coeffs(2, 5, &[0, 1, 1]);
        let mut m = PolyMatrix::zero(2, 5, 1, 1);
        m.set(0, 0, f.clone());
        assert_eq!(m.poly_det(), f);

        let mut d = PolyMatrix::zero(2, 5, 2, 2);
        d.set(0, 0, f.clone());
        d.set(1, 1, g.clone());
        assert_eq!(d.poly_det(), f.mul(&g));
    }

    #[test]
    fn det_and_adjugate_commute_with_evaluation() {
        let (field, beta, _) = ctx(2, 7);
        let mut rng = StdRng::seed_from_u64(41);
        for _ in 0..30 {
            let mut m = PolyMatrix::zero(2, 7, 3, 3);
            for i in 0..3 {
                for j in 0..3 {
                    m.set(i, j, rand_poly(&mut rng, 2, 7));
                }
            }
            let det_poly = m.poly_det();
            let adj_poly = m.poly_adjugate();
            for j in 0..7 {
                let pt = field.pow(&beta, j);
                let evaluated = m.eval_at(field.clone(), &pt);
                assert_eq!(det_poly.eval_at(&field, &pt), evaluated.det());
                assert_eq!(
                    adj_poly.eval_at(field.clone(), &pt),
                    evaluated.adjugate()
                );
            }
            // M * Adj(M) = det * I in the ring
            let prod = m.mul(&adj_poly);
            let mut want = PolyMatrix::zero(2, 7, 3, 3);
            for i in 0..3 {
                want.set(i, i, det_poly.clone());
            }
            assert_eq!(prod, want);
        }
    }

    #[test]
    fn berkowitz_matches_cofactor() {
        let mut rng = StdRng::seed_from_u64(43);
        for (p, l) in [(2u64, 5u64), (3, 4)] {
            for n in 1..=7usize {
                let mut m = PolyMatrix::zero(p, l, n, n);
                for i in 0..n {
                    for j in 0..n {
                        m.set(i, j, rand_poly(&mut rng, p, l));
                    }
                }
                let (_, det_b, adj_b) = m.char_poly_vec();
                assert_eq!(det_b, m.det_cofactor());
                assert_eq!(adj_b, m.adjugate_cofactor());
            }
        }
    }

    #[test]
    fn rank_equation_over_grid() {
        let mut rng = StdRng::seed_from_u64(47);
        for p in [2u64, 3, 5] {
            for l in [3u64, 5, 7, 9] {
                if crate::field::gcd(p, l) != 1 {
                    continue;
                }
                let (field, beta, _) = ctx(p, l);
                for _ in 0..25 {
                    let k = rng.gen_range(1..=4usize);
                    let mut m = PolyMatrix::zero(p, l, k, k);
                    for i in 0..k {
                        for j in 0..k {
                            m.set(i, j, rand_poly(&mut rng, p, l));
                        }
                    }
                    let lhs = m.expand().rank();
                    let rhs: usize = (0..l)
                        .map(|j| {
                            m.eval_at(field.clone(), &field.pow(&beta, j)).rank()
                        })
                        .sum();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}
