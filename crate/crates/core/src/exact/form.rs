use std::fmt;

use crate::error::{Error, Result};
use crate::exact::poly::Poly;
use crate::scalar::Field;

/// Binary form of degree `d`: `coeffs[i]` is the coefficient of `s^(d-i) t^i`.
#[derive(Clone, PartialEq, Eq)]
pub struct BinForm<F> {
    coeffs: Vec<F>,
}

fn falling<F: Field>(n: usize, k: usize) -> F {
    (0..k).fold(F::one(), |acc, j| acc * F::from_i64((n - j) as i64))
}

fn binomial<F: Field>(n: usize, k: usize) -> F {
    falling::<F>(n, k) / falling::<F>(k, k)
}

impl<F: Field> BinForm<F> {
    /// # Panics
    /// If `coeffs` is empty.
    pub fn new(coeffs: Vec<F>) -> Self {
        assert!(!coeffs.is_empty(), "a binary form needs degree + 1 coefficients");
        Self { coeffs }
    }

    pub fn zero(degree: usize) -> Self {
        Self { coeffs: vec![F::zero(); degree + 1] }
    }

    /// The monomial `s^(d-i) t^i` with coefficient `c`.
    pub fn monomial(degree: usize, i: usize, c: F) -> Self {
        let mut f = Self::zero(degree);
        f.coeffs[i] = c;
        f
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &F {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn scale(&self, c: &F) -> Self {
        Self { coeffs: self.coeffs.iter().map(|x| x.clone() * c.clone()).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.degree(), other.degree(), "adding forms of different degree");
        Self { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.clone() + b.clone()).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = vec![F::zero(); self.degree() + other.degree() + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self { coeffs: out }
    }

    pub fn eval(&self, s: &F, t: &F) -> F {
        let d = self.degree();
        self.coeffs
            .iter()
            .enumerate()
            .fold(F::zero(), |acc, (i, c)| acc + c.clone() * s.pow_i((d - i) as i64) * t.pow_i(i as i64))
    }

    /// `d^(a+b) f / ds^a dt^b`.
    pub fn partial(&self, a: usize, b: usize) -> Self {
        let d = self.degree();
        if a + b > d {
            return Self::zero(0);
        }
        let mut out = vec![F::zero(); d - a - b + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            // s^(d-i) t^i
            if d - i < a || i < b {
                continue;
            }
            out[i - b] = c.clone() * falling::<F>(d - i, a) * falling::<F>(i, b);
        }
        Self { coeffs: out }
    }

    /// `f(a s + b t, c s + d t)` for the matrix `[[a, b], [c, d]]`.
    pub fn substitute(&self, m: [[F; 2]; 2]) -> Self {
        let [[a, b], [c, d]] = m;
        let deg = self.degree();
        let s_img = Self::new(vec![a, b]);
        let t_img = Self::new(vec![c, d]);
        let mut s_pows = vec![Self::new(vec![F::one()])];
        let mut t_pows = vec![Self::new(vec![F::one()])];
        for k in 0..deg {
            s_pows.push(s_pows[k].mul(&s_img));
            t_pows.push(t_pows[k].mul(&t_img));
        }
        let mut out = Self::zero(deg);
        for (i, coef) in self.coeffs.iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            out = out.add(&s_pows[deg - i].mul(&t_pows[i]).scale(coef));
        }
        out
    }

    /// As a polynomial in two variables `(s, t)`.
    pub fn to_poly(&self) -> Poly<F> {
        let d = self.degree() as u32;
        let mut p = Poly::zero(2);
        for (i, c) in self.coeffs.iter().enumerate() {
            p.add_term(vec![d - i as u32, i as u32], c.clone());
        }
        p
    }

    /// Reads a homogeneous polynomial in `(s, t)` of the given degree.
    pub fn from_poly(p: &Poly<F>, degree: usize) -> Result<Self> {
        if p.nvars() != 2 {
            return Err(Error::InvalidInput("binary form needs two variables".into()));
        }
        let mut f = Self::zero(degree);
        for (e, c) in p.terms() {
            if (e[0] + e[1]) as usize != degree {
                return Err(Error::InvalidInput(format!("polynomial is not homogeneous of degree {degree}")));
            }
            f.coeffs[e[1] as usize] = c.clone();
        }
        Ok(f)
    }

    /// Coefficients of the dehomogenization `f(x, 1)`, ascending in `x`.
    pub fn dehomogenize(&self) -> Vec<F> {
        self.coeffs.iter().rev().cloned().collect()
    }

    /// Multiplicity of the root `(s0 : t0)`, i.e. the largest power of
    /// `t0 s - s0 t` dividing the form, with the cofactor.
    pub fn root_multiplicity(&self, s0: &F, t0: &F) -> (usize, Self) {
        let mut f = self.clone();
        let mut k = 0;
        if f.is_zero() {
            return (usize::MAX, f);
        }
        while f.degree() > 0 && f.eval(s0, t0).is_zero() {
            f = f.divide_linear(s0, t0);
            k += 1;
        }
        (k, f)
    }

    /// Exact quotient by `t0 s - s0 t`; the caller guarantees divisibility.
    fn divide_linear(&self, s0: &F, t0: &F) -> Self {
        // Synthetic division on coefficients ordered by powers of t.
        let d = self.degree();
        let mut q = vec![F::zero(); d];
        if !t0.is_zero() {
            // q_i from the top: coeff of s^(d-i) t^i.
            let mut carry = F::zero();
            for i in 0..d {
                // f_i = t0 q_i - s0 q_{i-1}
                let qi = (self.coeffs[i].clone() + s0.clone() * carry) / t0.clone();
                q[i] = qi.clone();
                carry = qi;
            }
        } else {
            // Divide by -s0 t: shift.
            for i in 0..d {
                q[i] = self.coeffs[i + 1].clone() / (-s0.clone());
            }
        }
        Self { coeffs: q }
    }
}

/// The `k`-th transvectant with the factorial normalization
/// `(d1-k)!(d2-k)!/(d1! d2!)`.
pub fn transvectant<F: Field>(f: &BinForm<F>, g: &BinForm<F>, k: usize) -> Result<BinForm<F>> {
    let (d1, d2) = (f.degree(), g.degree());
    if k > d1 || k > d2 {
        return Err(Error::TransvectantIndex { k, d1, d2 });
    }
    let mut acc = BinForm::zero(d1 + d2 - 2 * k);
    for i in 0..=k {
        let term = f.partial(k - i, i).mul(&g.partial(i, k - i)).scale(&binomial::<F>(k, i));
        acc = if i % 2 == 0 { acc.add(&term) } else { acc.add(&term.scale(&-F::one())) };
    }
    let norm = F::one() / (falling::<F>(d1, k) * falling::<F>(d2, k));
    Ok(acc.scale(&norm))
}

impl<F: Field> fmt::Debug for BinForm<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinForm{:?}", self.coeffs)
    }
}
