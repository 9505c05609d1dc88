use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::scalar::{common_denominator, Field, Rational};

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    /// Builds a matrix from rows; `cols` is needed so that a matrix with no
    /// rows still knows its width.
    pub fn from_rows(cols: usize, rows: Vec<Vec<F>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix");
            data.extend(r);
        }
        Self { rows: n, cols, data }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(F::zero(), |acc, (a, b)| acc + a.clone() * b.clone()))
            .collect()
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        Self::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).fold(F::zero(), |acc, k| acc + self[(i, k)].clone() * other[(k, j)].clone())
        })
    }
}

impl<F> std::ops::Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        &self.data[i * self.cols + j]
    }
}

impl<F> std::ops::IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        &mut self.data[i * self.cols + j]
    }
}

/// Reduced row echelon form in place; returns the pivot columns.
fn rref_in_place<F: Field>(m: &mut Matrix<F>) -> Vec<usize> {
    let (rows, cols) = (m.rows, m.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[(i, c)].is_zero()) else { continue };
        if p != r {
            for j in 0..cols {
                m.data.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = m[(r, c)].inv();
        for j in c..cols {
            let v = m[(r, j)].clone() * inv.clone();
            m[(r, j)] = v;
        }
        for i in 0..rows {
            if i == r || m[(i, c)].is_zero() {
                continue;
            }
            let factor = m[(i, c)].clone();
            for j in c..cols {
                if m[(r, j)].is_zero() {
                    continue;
                }
                let v = m[(i, j)].clone() - factor.clone() * m[(r, j)].clone();
                m[(i, j)] = v;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rank by Gauss-Jordan elimination over the field.
pub fn rank<F: Field>(m: &Matrix<F>) -> usize {
    let mut work = m.clone();
    rref_in_place(&mut work).len()
}

/// Right kernel over an arbitrary exact field, via reduced row echelon form.
pub fn rref_kernel<F: Field>(m: &Matrix<F>) -> Vec<Vec<F>> {
    let mut work = m.clone();
    let pivots = rref_in_place(&mut work);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![F::zero(); m.cols];
            v[f] = F::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -work[(r, f)].clone();
            }
            v
        })
        .collect()
}

/// Fraction-free Gauss-Jordan elimination over the integers. Every row is
/// updated at every step so that all divisions by the previous pivot are
/// exact; at the end each pivot entry equals the final pivot `d`.
/// Returns `(pivot columns, d)`.
fn bareiss_jordan(a: &mut [Vec<BigInt>], cols: usize) -> (Vec<usize>, BigInt) {
    let rows = a.len();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(p, r);
        let piv = a[r][c].clone();
        let (head, tail) = a.split_at_mut(r);
        let (pivot_row, rest) = tail.split_first_mut().expect("pivot row present");
        for row in head.iter_mut().chain(rest.iter_mut()) {
            let lead = std::mem::take(&mut row[c]);
            for j in 0..cols {
                if j == c {
                    continue;
                }
                let mut v = &piv * &row[j];
                if !lead.is_zero() && !pivot_row[j].is_zero() {
                    v -= &lead * &pivot_row[j];
                }
                row[j] = if prev.is_one() { v } else { v / &prev };
            }
        }
        // Earlier pivot entries scale the same way as everything else.
        prev = piv;
        pivots.push(c);
        r += 1;
    }
    (pivots, prev)
}

/// Rows of a rational matrix scaled to integers, each divided by its content.
fn integer_rows(m: &Matrix<Rational>) -> Vec<Vec<BigInt>> {
    (0..m.rows)
        .map(|i| {
            let row = m.row(i);
            let den = common_denominator(row);
            let ints: Vec<BigInt> =
                row.iter().map(|x| (x * Rational::from_integer(den.clone())).to_integer()).collect();
            let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
            if g.is_zero() || g.is_one() {
                ints
            } else {
                ints.into_iter().map(|x| x / &g).collect()
            }
        })
        .collect()
}

/// Right kernel of a rational matrix by fraction-free elimination. Basis
/// vectors are primitive integer vectors (returned as rationals), one per
/// non-pivot column. An empty matrix yields the standard basis.
pub fn mat_kernel(m: &Matrix<Rational>) -> Vec<Vec<Rational>> {
    let cols = m.cols;
    let mut a = integer_rows(m);
    let (pivots, d) = bareiss_jordan(&mut a, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigInt::zero(); cols];
            v[f] = d.clone();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -a[r][f].clone();
            }
            let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
            let sign = if v[f].is_negative() { -BigInt::one() } else { BigInt::one() };
            v.into_iter().map(|x| Rational::from_integer(&x / &g * &sign)).collect()
        })
        .collect()
}

/// Rank of a rational matrix by fraction-free elimination.
pub fn rank_fraction_free(m: &Matrix<Rational>) -> usize {
    let mut a = integer_rows(m);
    bareiss_jordan(&mut a, m.cols).0.len()
}

/// Determinant of a square matrix over a field.
pub fn determinant<F: Field>(m: &Matrix<F>) -> F {
    assert_eq!(m.rows, m.cols, "determinant of a non-square matrix");
    let n = m.rows;
    let mut a = m.clone();
    let mut det = F::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[(i, c)].is_zero()) else { return F::zero() };
        if p != c {
            for j in 0..n {
                a.data.swap(p * n + j, c * n + j);
            }
            det = -det;
        }
        let piv = a[(c, c)].clone();
        det = det * piv.clone();
        for i in c + 1..n {
            if a[(i, c)].is_zero() {
                continue;
            }
            let factor = a[(i, c)].clone() / piv.clone();
            for j in c..n {
                let v = a[(i, j)].clone() - factor.clone() * a[(c, j)].clone();
                a[(i, j)] = v;
            }
        }
    }
    det
}

/// Primes used by [`has_full_row_rank`].
const CERTIFICATE_PRIMES: [u64; 4] =
    [2_305_843_009_213_693_951, 4_611_686_018_427_387_847, 1_000_000_000_000_000_003, 999_999_999_999_999_989];

fn rank_mod_p(a: &[Vec<BigInt>], cols: usize, p: u64) -> usize {
    let pb = BigInt::from(p);
    let mut m: Vec<Vec<u64>> = a
        .iter()
        .map(|row| row.iter().map(|x| x.mod_floor(&pb).to_u64().expect("reduced residue fits")).collect())
        .collect();
    let mulmod = |x: u64, y: u64| ((x as u128 * y as u128) % p as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        acc
    };
    let rows = m.len();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| m[i][c] != 0) else { continue };
        m.swap(piv, r);
        let inv = powmod(m[r][c], p - 2);
        for i in r + 1..rows {
            if m[i][c] == 0 {
                continue;
            }
            let f = mulmod(m[i][c], inv);
            for j in c..cols {
                let sub = mulmod(f, m[r][j]);
                m[i][j] = (m[i][j] + p - sub) % p;
            }
        }
        r += 1;
    }
    r
}

/// Decides whether a rational matrix has rank equal to its number of rows.
///
/// Reduction modulo a prime can only lower the rank, so full row rank modulo
/// any prime certifies full row rank over the rationals. When every
/// certificate prime is unlucky the exact fraction-free rank is computed.
pub fn has_full_row_rank(m: &Matrix<Rational>) -> bool {
    if m.rows > m.cols {
        return false;
    }
    let a = integer_rows(m);
    if CERTIFICATE_PRIMES.iter().any(|&p| rank_mod_p(&a, m.cols, p) == m.rows) {
        return true;
    }
    rank_fraction_free(m) == m.rows
}
