//! Nodal and cuspidal plane cubics: group parametrisations of the smooth
//! locus, linear equivalence, Riemann–Roch spaces of degree-3 divisors and
//! re-embeddings with a prescribed line class.
//!
//! Reference models: `y²z = x³ + x²z` (nodal) and `y²z = x³` (cuspidal).
//! Nodal points are parametrised by `u ∈ G_m` with the identity `u = 1` at
//! the flex at infinity and the node branches at `u = 0, ∞`; three points
//! are collinear iff `u₁u₂u₃ = 1`. Cuspidal points are `m ↦ (m : 1 : m³)`;
//! collinear iff `m₁ + m₂ + m₃ = 0`.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::linalg::{determinant, mat_kernel, Matrix};
use crate::exact::poly::poly_divmod;
use crate::exact::Poly;
use crate::scalar::{Field, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CubicKind {
    Nodal,
    Cuspidal,
}

impl fmt::Display for CubicKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CubicKind::Nodal => "nodal",
            CubicKind::Cuspidal => "cuspidal",
        })
    }
}

impl CubicKind {
    /// Parameter of the group identity.
    pub fn identity(&self) -> Rational {
        match self {
            CubicKind::Nodal => Rational::one(),
            CubicKind::Cuspidal => Rational::zero(),
        }
    }
}

/// One of the two reference cubics.
#[derive(Clone, Debug, PartialEq)]
pub struct SingularCubic {
    pub kind: CubicKind,
    pub equation: Poly<Rational>,
    pub singular_point: [Rational; 3],
    pub identity_point: [Rational; 3],
}

impl SingularCubic {
    pub fn reference(kind: CubicKind) -> Self {
        let x = Poly::var(3, 0);
        let y = Poly::var(3, 1);
        let z = Poly::var(3, 2);
        let lhs = &(&y * &y) * &z;
        let mut rhs = &(&x * &x) * &x;
        if kind == CubicKind::Nodal {
            rhs = &rhs + &(&(&x * &x) * &z);
        }
        let r = |a: i64, b: i64, c: i64| [Rational::from_i64(a), Rational::from_i64(b), Rational::from_i64(c)];
        Self { kind, equation: &lhs - &rhs, singular_point: r(0, 0, 1), identity_point: r(0, 1, 0) }
    }

    pub fn contains(&self, p: &[Rational; 3]) -> bool {
        self.equation.eval(p).is_zero()
    }
}

/// True when all partial derivatives of the form vanish at `p`.
pub fn is_singular_at(equation: &Poly<Rational>, p: &[Rational; 3]) -> bool {
    (0..3).all(|i| equation.derivative(i).eval(p).is_zero())
}

/// A smooth point of a reference cubic with its group parameter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmoothPoint {
    pub kind: CubicKind,
    pub param: Rational,
    pub coords: [Rational; 3],
}

pub fn param_point(kind: CubicKind, value: &Rational) -> Result<SmoothPoint> {
    let u = value.clone();
    let coords = match kind {
        CubicKind::Nodal => {
            if u.is_zero() {
                return Err(Error::InvalidInput("parameter 0 is a branch of the node".into()));
            }
            let four = Rational::from_i64(4);
            let um = &u - Rational::one();
            let up = &u + Rational::one();
            [&four * &u * &um, &four * &u * &up, &um * &um * &um]
        }
        CubicKind::Cuspidal => [u.clone(), Rational::one(), &u * &u * &u],
    };
    Ok(SmoothPoint { kind, param: u, coords })
}

fn det3(rows: [&[Rational; 3]; 3]) -> Rational {
    let m = Matrix::from_fn(3, 3, |i, j| rows[i][j].clone());
    determinant(&m)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollinearReport {
    /// Vanishing of the coordinate determinant.
    pub collinear: bool,
    /// `u₁u₂u₃ = 1` or `m₁ + m₂ + m₃ = 0`.
    pub parameter_identity: bool,
}

pub fn collinear_test(p: &SmoothPoint, q: &SmoothPoint, r: &SmoothPoint) -> Result<CollinearReport> {
    if p.kind != q.kind || q.kind != r.kind {
        return Err(Error::ModeMismatch);
    }
    let collinear = det3([&p.coords, &q.coords, &r.coords]).is_zero();
    let parameter_identity = match p.kind {
        CubicKind::Nodal => &p.param * &q.param * &r.param == Rational::one(),
        CubicKind::Cuspidal => (&p.param + &q.param + &r.param).is_zero(),
    };
    Ok(CollinearReport { collinear, parameter_identity })
}

/// Degree and class of `Σ k_i P(p_i)` in `Pic(K)`; the class is the
/// product (nodal) or sum (cuspidal) of parameters with multiplicity.
pub fn divisor_class(kind: CubicKind, divisor: &[(Rational, i64)]) -> Result<(i64, Rational)> {
    let degree = divisor.iter().map(|(_, k)| k).sum();
    let class = match kind {
        CubicKind::Nodal => {
            if divisor.iter().any(|(p, _)| p.is_zero()) {
                return Err(Error::InvalidInput("support meets the node".into()));
            }
            divisor.iter().fold(Rational::one(), |acc, (p, k)| acc * p.pow_i(*k))
        }
        CubicKind::Cuspidal => divisor.iter().fold(Rational::zero(), |acc, (p, k)| acc + p * Rational::from_i64(*k)),
    };
    Ok((degree, class))
}

/// A rational function `N(u) / D(u)` on the normalisation, dense
/// ascending coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction {
    pub numerator: Vec<Rational>,
    pub denominator: Vec<Rational>,
}

impl RationalFunction {
    pub fn eval(&self, u: &Rational) -> Option<Rational> {
        let ev = |c: &[Rational]| c.iter().rev().fold(Rational::zero(), |acc, x| acc * u + x);
        let d = ev(&self.denominator);
        if d.is_zero() { None } else { Some(ev(&self.numerator) / d) }
    }
}

fn mul_dense(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Basis of `L(D)` for an effective degree-3 divisor `D = Σ k_i P(p_i)` on
/// the smooth locus, as functions of the normalisation parameter.
pub fn rr_space(kind: CubicKind, divisor: &[(Rational, u32)]) -> Result<Vec<RationalFunction>> {
    let degree: u32 = divisor.iter().map(|(_, k)| k).sum();
    if degree != 3 {
        return Err(Error::InvalidInput(format!("divisor has degree {degree}, expected 3")));
    }
    if kind == CubicKind::Nodal && divisor.iter().any(|(p, _)| p.is_zero()) {
        return Err(Error::InvalidInput("support meets the node".into()));
    }
    let mut den = vec![Rational::one()];
    for (p, k) in divisor {
        for _ in 0..*k {
            den = mul_dense(&den, &[-p.clone(), Rational::one()]);
        }
    }
    // Unknowns: N = n0 + n1 u + n2 u² + n3 u³; one linear condition at the
    // singular point.
    let condition: Vec<Rational> = match kind {
        // f(0) = f(∞): n0 / d0 = n3.
        CubicKind::Nodal => vec![Rational::one(), Rational::zero(), Rational::zero(), -den[0].clone()],
        // f has no 1/m term at ∞: n2 - d2 n3 = 0.
        CubicKind::Cuspidal => vec![Rational::zero(), Rational::zero(), Rational::one(), -den[2].clone()],
    };
    let kernel = mat_kernel(&Matrix::from_rows(4, vec![condition]));
    if kernel.len() != 3 {
        return Err(Error::Internal(format!("Riemann-Roch space has dimension {}", kernel.len())));
    }
    Ok(kernel.into_iter().map(|n| RationalFunction { numerator: n, denominator: den.clone() }).collect())
}

/// `K` embedded in the plane by `L(φ(c) + 2·φ(identity))`, where the line
/// class is `c`: `u ↦ (u : u² : u³ − λ)` or `m ↦ (1 : m : m³ − μm²)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CubicEmbedding {
    pub kind: CubicKind,
    pub line_class: Rational,
    /// Homogeneous cubic defining the image.
    pub equation: Poly<Rational>,
    /// Coordinate functions in the normalisation parameter.
    pub basis: [RationalFunction; 3],
}

pub fn embed_with_line_class(kind: CubicKind, line_class: &Rational) -> Result<CubicEmbedding> {
    if kind == CubicKind::Nodal && line_class.is_zero() {
        return Err(Error::InvalidInput("line class must be nonzero".into()));
    }
    let c = line_class.clone();
    let x = Poly::var(3, 0);
    let y = Poly::var(3, 1);
    let z = Poly::var(3, 2);
    let r = |v: i64| Rational::from_i64(v);
    let (den, numerators, equation) = match kind {
        CubicKind::Nodal => {
            // D = φ(λ) + 2φ(1); denominator (u − λ)(u − 1)².
            let den = mul_dense(&[-c.clone(), r(1)], &mul_dense(&[r(-1), r(1)], &[r(-1), r(1)]));
            let nums = [vec![r(0), r(1)], vec![r(0), r(0), r(1)], vec![-c.clone(), r(0), r(0), r(1)]];
            // XYZ = Y³ − λX³
            let eq = &(&(&x * &y) * &z) - &(&(&(&y * &y) * &y) - &(&(&x * &x) * &x).scale(&c));
            (den, nums, eq)
        }
        CubicKind::Cuspidal => {
            // D = φ(μ) + 2φ(0); denominator (m − μ)m².
            let den = vec![r(0), r(0), -c.clone(), r(1)];
            let nums = [vec![r(1)], vec![r(0), r(1)], vec![r(0), r(0), -c.clone(), r(1)]];
            // X²Z = Y³ − μXY²
            let eq = &(&(&x * &x) * &z) - &(&(&(&y * &y) * &y) - &(&(&x * &y) * &y).scale(&c));
            (den, nums, eq)
        }
    };
    let basis = numerators.map(|n| RationalFunction { numerator: n, denominator: den.clone() });
    Ok(CubicEmbedding { kind, line_class: c, equation, basis })
}

impl CubicEmbedding {
    /// Plane coordinates of the point with parameter `u` (projective; the
    /// common denominator is dropped).
    pub fn point(&self, u: &Rational) -> Result<[Rational; 3]> {
        if self.kind == CubicKind::Nodal && u.is_zero() {
            return Err(Error::InvalidInput("parameter 0 is a branch of the node".into()));
        }
        let ev = |c: &[Rational]| c.iter().rev().fold(Rational::zero(), |acc, x| acc * u + x);
        Ok([ev(&self.basis[0].numerator), ev(&self.basis[1].numerator), ev(&self.basis[2].numerator)])
    }

    /// The singular point of the image.
    pub fn singular_point(&self) -> [Rational; 3] {
        [Rational::zero(), Rational::zero(), Rational::one()]
    }

    /// Restriction of a plane form to the curve, as a dense polynomial in
    /// the parameter.
    pub fn pullback(&self, form: &Poly<Rational>) -> Vec<Rational> {
        let images: Vec<Poly<Rational>> =
            self.basis.iter().map(|b| Poly::from_univariate(&b.numerator)).collect();
        let p = form.compose(&images);
        if p.is_zero() {
            return vec![];
        }
        p.univariate_coeffs(0)
    }

    /// Third intersection parameter of the line through the points with
    /// parameters `a ≠ b`.
    pub fn third_on_line(&self, a: &Rational, b: &Rational) -> Result<Rational> {
        let p = self.point(a)?;
        let q = self.point(b)?;
        let line = [
            &p[1] * &q[2] - &p[2] * &q[1],
            &p[2] * &q[0] - &p[0] * &q[2],
            &p[0] * &q[1] - &p[1] * &q[0],
        ];
        let form = (0..3).fold(Poly::zero(3), |acc, i| &acc + &Poly::var(3, i).scale(&line[i]));
        let restricted = self.pullback(&form);
        let pair = mul_dense(&[-a.clone(), Rational::one()], &[-b.clone(), Rational::one()]);
        let (quot, rem) = poly_divmod(&restricted, &pair);
        if rem.iter().any(|c| !c.is_zero()) || quot.len() != 2 {
            return Err(Error::Degenerate("line meets the singular point".into()));
        }
        Ok(-quot[0].clone() / quot[1].clone())
    }
}
