use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::linalg::Matrix;
use crate::scalar::Field;

/// Sparse multivariate polynomial in a fixed number of variables.
/// Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly<F> {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, F>,
}

impl<F: Field> Poly<F> {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: F) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, F::one())
    }

    /// The monomial `x_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, F::one())
    }

    pub fn monomial(exponents: Vec<u32>, c: F) -> Self {
        let mut p = Self::zero(exponents.len());
        p.add_term(exponents, c);
        p
    }

    /// Univariate polynomial from coefficients in ascending degree.
    pub fn from_univariate(coeffs: &[F]) -> Self {
        let mut p = Self::zero(1);
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(vec![i as u32], c.clone());
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &F)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exponents: &[u32]) -> F {
        self.terms.get(exponents).cloned().unwrap_or_else(F::zero)
    }

    pub fn add_term(&mut self, exponents: Vec<u32>, c: F) {
        assert_eq!(exponents.len(), self.nvars, "exponent arity mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exponents) {
            Some(v) => {
                let s = v.clone() + c;
                if s.is_zero() {
                    self.terms.remove(&exponents);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(exponents, c);
            }
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[var]).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Self { nvars: self.nvars, terms: self.terms.iter().map(|(e, v)| (e.clone(), v.clone() * c.clone())).collect() }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn derivative(&self, var: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[var] -= 1;
            out.add_term(e2, c.clone() * F::from_i64(e[var] as i64));
        }
        out
    }

    pub fn eval(&self, point: &[F]) -> F {
        assert_eq!(point.len(), self.nvars);
        self.terms.iter().fold(F::zero(), |acc, (e, c)| {
            let m = e.iter().zip(point).fold(c.clone(), |m, (&k, x)| m * x.pow_i(k as i64));
            acc + m
        })
    }

    /// Substitutes `images[i]` for variable `i`; the images share a common
    /// variable count which becomes the variable count of the result.
    pub fn compose(&self, images: &[Poly<F>]) -> Poly<F> {
        assert_eq!(images.len(), self.nvars);
        let target = images.first().map_or(0, |p| p.nvars);
        let mut cache: HashMap<(usize, u32), Poly<F>> = HashMap::new();
        let mut out = Poly::zero(target);
        for (e, c) in &self.terms {
            let mut m = Poly::constant(target, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let p = cache.entry((i, k)).or_insert_with(|| images[i].pow(k)).clone();
                m = &m * &p;
            }
            out = &out + &m;
        }
        out
    }

    /// Substitutes a constant for one variable, keeping the variable count.
    pub fn specialize(&self, var: usize, value: &F) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let k = e2[var];
            e2[var] = 0;
            out.add_term(e2, c.clone() * value.pow_i(k as i64));
        }
        out
    }

    /// Coefficients with respect to `var`, ascending; each coefficient is a
    /// polynomial in the same variables with `var` absent.
    pub fn coefficients_in(&self, var: usize) -> Vec<Poly<F>> {
        let deg = self.degree_in(var).unwrap_or(0) as usize;
        let mut out = vec![Poly::zero(self.nvars); deg + 1];
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let k = e2[var] as usize;
            e2[var] = 0;
            out[k].add_term(e2, c.clone());
        }
        out
    }

    /// Dense ascending coefficient list of a polynomial in one variable
    /// (all other exponents must be zero).
    pub fn univariate_coeffs(&self, var: usize) -> Vec<F> {
        let deg = self.degree_in(var).unwrap_or(0) as usize;
        let mut out = vec![F::zero(); deg + 1];
        for (e, c) in &self.terms {
            assert!(e.iter().enumerate().all(|(i, &k)| i == var || k == 0), "polynomial is not univariate in x{var}");
            out[e[var] as usize] = c.clone();
        }
        out
    }

    /// Embeds into a ring with more variables, placing old variable `i` at
    /// position `positions[i]`.
    pub fn embed(&self, nvars: usize, positions: &[usize]) -> Self {
        let mut out = Self::zero(nvars);
        for (e, c) in &self.terms {
            let mut e2 = vec![0; nvars];
            for (i, &k) in e.iter().enumerate() {
                e2[positions[i]] += k;
            }
            out.add_term(e2, c.clone());
        }
        out
    }
}

impl<F: Field> Add for &Poly<F> {
    type Output = Poly<F>;
    fn add(self, rhs: &Poly<F>) -> Poly<F> {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<F: Field> Sub for &Poly<F> {
    type Output = Poly<F>;
    fn sub(self, rhs: &Poly<F>) -> Poly<F> {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl<F: Field> Mul for &Poly<F> {
    type Output = Poly<F>;
    fn mul(self, rhs: &Poly<F>) -> Poly<F> {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = Poly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1.clone() * c2.clone());
            }
        }
        out
    }
}

impl<F: Field> Neg for &Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        self.scale(&-F::one())
    }
}

impl<F: Field> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<F: Field> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => write!(f, "*x{i}")?,
                    _ => write!(f, "*x{i}^{k}")?,
                }
            }
        }
        Ok(())
    }
}

// Dense univariate helpers on ascending coefficient vectors.

fn trim<F: Field>(mut v: Vec<F>) -> Vec<F> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

/// Remainder of `a` modulo nonzero `b`.
fn poly_rem<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    let lead_inv = b.last().expect("division by zero polynomial").inv();
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let factor = r.last().expect("nonempty").clone() * lead_inv.clone();
        for (i, c) in b.iter().enumerate() {
            let v = r[shift + i].clone() - factor.clone() * c.clone();
            r[shift + i] = v;
        }
        r.pop();
        r = trim(r);
    }
    r
}

/// Exact quotient and remainder of dense univariate polynomials.
pub fn poly_divmod<F: Field>(a: &[F], b: &[F]) -> (Vec<F>, Vec<F>) {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    if r.len() < b.len() {
        return (vec![], r);
    }
    let lead_inv = b.last().expect("division by zero polynomial").inv();
    let mut quot = vec![F::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let factor = r.last().expect("nonempty").clone() * lead_inv.clone();
        for (i, c) in b.iter().enumerate() {
            let v = r[shift + i].clone() - factor.clone() * c.clone();
            r[shift + i] = v;
        }
        quot[shift] = factor;
        r.pop();
        r = trim(r);
    }
    (quot, r)
}

/// Monic gcd of dense univariate polynomials (ascending coefficients).
pub fn dense_gcd<F: Field>(a: &[F], b: &[F]) -> Result<Vec<F>> {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    if x.is_empty() && y.is_empty() {
        return Err(Error::GcdUndefined);
    }
    // Monic remainders keep rational coefficient growth in check.
    let monic = |v: Vec<F>| -> Vec<F> {
        let lead_inv = v.last().expect("nonzero").inv();
        v.into_iter().map(|c| c * lead_inv.clone()).collect()
    };
    if x.is_empty() {
        return Ok(monic(y));
    }
    x = monic(x);
    while !y.is_empty() {
        let ym = monic(y);
        y = poly_rem(&x, &ym);
        x = ym;
    }
    Ok(x)
}

pub fn dense_derivative<F: Field>(a: &[F]) -> Vec<F> {
    a.iter().enumerate().skip(1).map(|(i, c)| c.clone() * F::from_i64(i as i64)).collect()
}

fn univariate_var<F: Field>(f: &Poly<F>) -> Option<usize> {
    let mut var = None;
    for e in f.terms.keys() {
        for (i, &k) in e.iter().enumerate() {
            if k > 0 {
                match var {
                    None => var = Some(i),
                    Some(v) if v != i => return None,
                    _ => {}
                }
            }
        }
    }
    Some(var.unwrap_or(0))
}

/// Monic greatest common divisor of two univariate polynomials in the same
/// variable.
pub fn poly_gcd<F: Field>(f: &Poly<F>, g: &Poly<F>) -> Result<Poly<F>> {
    if f.nvars != g.nvars {
        return Err(Error::InvalidInput("gcd of polynomials in different rings".into()));
    }
    let vf = univariate_var(f).ok_or_else(|| Error::InvalidInput("gcd needs univariate input".into()))?;
    let vg = univariate_var(g).ok_or_else(|| Error::InvalidInput("gcd needs univariate input".into()))?;
    let var = match (f.is_zero() || f.total_degree() == Some(0), g.is_zero() || g.total_degree() == Some(0)) {
        (true, _) => vg,
        (_, true) => vf,
        _ if vf == vg => vf,
        _ => return Err(Error::InvalidInput("gcd of polynomials in different variables".into())),
    };
    let d = dense_gcd(&f.univariate_coeffs(var), &g.univariate_coeffs(var))?;
    let mut out = Poly::zero(f.nvars);
    for (i, c) in d.into_iter().enumerate() {
        let mut e = vec![0; f.nvars];
        e[var] = i as u32;
        out.add_term(e, c);
    }
    Ok(out)
}

/// Determinant over a commutative ring by Laplace expansion along rows,
/// memoized over the set of used columns: O(n 2^n) ring operations.
pub(crate) fn ring_determinant<F: Field>(m: &[Vec<Poly<F>>], nvars: usize) -> Poly<F> {
    let n = m.len();
    if n == 0 {
        return Poly::one(nvars);
    }
    let mut dp: HashMap<u32, Poly<F>> = HashMap::new();
    dp.insert(0, Poly::one(nvars));
    for (row, entries) in m.iter().enumerate() {
        let mut next: HashMap<u32, Poly<F>> = HashMap::new();
        for (&mask, val) in &dp {
            debug_assert_eq!(mask.count_ones() as usize, row);
            for (col, entry) in entries.iter().enumerate() {
                if mask & (1 << col) != 0 || entry.is_zero() {
                    continue;
                }
                // Sign from the number of used columns to the right of `col`.
                let inversions = (mask >> col).count_ones();
                let mut term = val * entry;
                if inversions % 2 == 1 {
                    term = -&term;
                }
                let slot = next.entry(mask | (1 << col)).or_insert_with(|| Poly::zero(nvars));
                *slot = &*slot + &term;
            }
        }
        dp = next;
    }
    dp.remove(&((1u32 << n) - 1)).unwrap_or_else(|| Poly::zero(nvars))
}

/// Sylvester matrix of `f` and `g` with respect to `var`, rows of `f` first,
/// leading coefficients on the left.
pub fn sylvester_matrix<F: Field>(f: &Poly<F>, g: &Poly<F>, var: usize) -> Result<Vec<Vec<Poly<F>>>> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ResultantUndefined("zero polynomial".into()));
    }
    let fc = f.coefficients_in(var);
    let gc = g.coefficients_in(var);
    let (m, n) = (fc.len() - 1, gc.len() - 1);
    if m + n == 0 {
        return Err(Error::ResultantUndefined("both polynomials are constant in the variable".into()));
    }
    let size = m + n;
    let zero = Poly::zero(f.nvars);
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut r = vec![zero.clone(); size];
        for (k, c) in fc.iter().rev().enumerate() {
            r[i + k] = c.clone();
        }
        rows.push(r);
    }
    for i in 0..m {
        let mut r = vec![zero.clone(); size];
        for (k, c) in gc.iter().rev().enumerate() {
            r[i + k] = c.clone();
        }
        rows.push(r);
    }
    Ok(rows)
}

/// Resultant with respect to `var`: the determinant of the Sylvester matrix
/// with the rows of `f` first.
pub fn resultant<F: Field>(f: &Poly<F>, g: &Poly<F>, var: usize) -> Result<Poly<F>> {
    if f.nvars != g.nvars {
        return Err(Error::ResultantUndefined("polynomials in different rings".into()));
    }
    let rows = sylvester_matrix(f, g, var)?;
    if rows.len() > 24 {
        return Err(Error::ResultantUndefined("Sylvester matrix too large for cofactor expansion".into()));
    }
    Ok(ring_determinant(&rows, f.nvars))
}

/// Determinant of a numeric matrix through the ring routine; used to
/// cross-check elimination in tests.
#[allow(dead_code)]
pub(crate) fn numeric_determinant_by_expansion<F: Field>(m: &Matrix<F>) -> F {
    let rows: Vec<Vec<Poly<F>>> =
        m.row_vecs().into_iter().map(|r| r.into_iter().map(|c| Poly::constant(0, c)).collect()).collect();
    ring_determinant(&rows, 0).coeff(&[])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::linalg::determinant;
    use crate::scalar::{q, Rational};

    type P = Poly<Rational>;

    fn uni(c: &[i64]) -> P {
        P::from_univariate(&c.iter().map(|&x| q(x)).collect::<Vec<_>>())
    }

    #[test]
    fn gcd_with_zero_is_monic_input() {
        let f = uni(&[2, 4]);
        assert_eq!(poly_gcd(&f, &P::zero(1)).unwrap(), P::from_univariate(&[crate::scalar::q_frac(1, 2), q(1)]));
    }

    #[test]
    fn gcd_shared_linear_factor() {
        assert_eq!(poly_gcd(&uni(&[-1, 0, 1]), &uni(&[-1, 1])).unwrap(), uni(&[-1, 1]));
    }

    #[test]
    fn gcd_double_root() {
        // x^3 - 3x + 2 = (x-1)^2 (x+2); 3x^2 - 3 = 3(x-1)(x+1).
        assert_eq!(poly_gcd(&uni(&[2, -3, 0, 1]), &uni(&[-3, 0, 3])).unwrap(), uni(&[-1, 1]));
    }

    #[test]
    fn gcd_of_zeros_fails() {
        assert_eq!(poly_gcd(&P::zero(1), &P::zero(1)), Err(Error::GcdUndefined));
    }

    #[test]
    fn resultant_of_linear_forms() {
        // Variables: x, a, b.
        let x = P::var(3, 0);
        let a = P::var(3, 1);
        let b = P::var(3, 2);
        let r = resultant(&(&x - &a), &(&x - &b), 0).unwrap();
        assert_eq!(r, &a - &b);
    }

    #[test]
    fn resultant_sign_convention() {
        let x = P::var(2, 0);
        let t = P::var(2, 1);
        let f = &x.pow(2) - &t;
        // Oracle: Sylvester rows [1,0,-t],[1,0,0],[0,1,0] expanded by hand.
        assert_eq!(resultant(&f, &x, 0).unwrap(), -&t);
    }

    #[test]
    fn resultant_vanishes_on_shared_root() {
        // (w - 1)(w - 1 - t)(w + 2) has a double root w = 1 exactly at t = 0.
        let w = P::var(2, 0);
        let t = P::var(2, 1);
        let one = P::one(2);
        let two = P::constant(2, q(2));
        let cubic = &(&(&w - &one) * &(&(&w - &one) - &t)) * &(&w + &two);
        let r = resultant(&cubic, &cubic.derivative(0), 0).unwrap();
        assert!(r.specialize(1, &q(0)).is_zero());
        assert!(!r.is_zero());
    }

    #[test]
    fn resultant_rejects_zero() {
        assert!(resultant(&P::zero(1), &uni(&[1, 1]), 0).is_err());
    }

    #[test]
    fn expansion_matches_elimination() {
        let m = Matrix::from_fn(5, 5, |i, j| q(((i * 7 + j * 3) % 11) as i64 - 5));
        assert_eq!(numeric_determinant_by_expansion(&m), determinant(&m));
    }

    #[test]
    fn compose_and_eval_agree() {
        let f = &uni(&[1, 2, 3]) * &uni(&[0, 1]);
        let x = P::var(2, 0);
        let y = P::var(2, 1);
        let g = f.compose(&[&x + &y]);
        assert_eq!(g.eval(&[q(2), q(3)]), f.eval(&[q(5)]));
    }
}

fn primitive_part(v: Vec<num_bigint::BigInt>) -> Vec<num_bigint::BigInt> {
    use num_integer::Integer;
    let g = v.iter().fold(num_bigint::BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        return v;
    }
    v.into_iter().map(|x| x / &g).collect()
}

/// Monic gcd over the rationals via the primitive pseudo-remainder
/// sequence over the integers; avoids rational coefficient swell.
pub fn rational_gcd(a: &[crate::Rational], b: &[crate::Rational]) -> Result<Vec<crate::Rational>> {
    use crate::scalar::primitive_integer_vector;
    let a = trim(a.to_vec());
    let b = trim(b.to_vec());
    if a.is_empty() && b.is_empty() {
        return Err(Error::GcdUndefined);
    }
    let mut x = primitive_integer_vector(&a);
    let mut y = primitive_integer_vector(&b);
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        // Pseudo-remainder: lc(y)^{deg x - deg y + 1} x mod y.
        let lc = y.last().expect("nonzero").clone();
        let mut r = x;
        while r.len() >= y.len() {
            let shift = r.len() - y.len();
            let lead = r.last().expect("nonzero").clone();
            for c in r.iter_mut() {
                *c *= &lc;
            }
            for (i, c) in y.iter().enumerate() {
                r[shift + i] -= &lead * c;
            }
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        x = y;
        y = primitive_part(r);
    }
    let lead = crate::Rational::from_integer(x.last().expect("nonzero").clone());
    Ok(x.into_iter().map(|c| crate::Rational::from_integer(c) / &lead).collect())
}
