//! Trigonal genus-4 curves `f₀w³ + f₂(s,t)w² + f₄(s,t)w + f₆(s,t) = 0` in
//! `P(1:1:2)`: ramification form, fiber classification, smoothness,
//! canonical model in `P³` and `SL₂` invariant signatures.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::form::{transvectant, BinForm};
use crate::exact::poly::{dense_derivative, poly_divmod, rational_gcd};
use crate::exact::Poly;
use crate::scalar::{Field, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrigonalCurve {
    pub f0: Rational,
    pub f2: BinForm<Rational>,
    pub f4: BinForm<Rational>,
    pub f6: BinForm<Rational>,
}

impl TrigonalCurve {
    pub fn new(f0: Rational, f2: BinForm<Rational>, f4: BinForm<Rational>, f6: BinForm<Rational>) -> Result<Self> {
        if f0.is_zero() {
            return Err(Error::HyperellipticDegeneration);
        }
        for (f, d) in [(&f2, 2), (&f4, 4), (&f6, 6)] {
            if f.degree() != d {
                return Err(Error::InvalidInput(format!("expected a binary form of degree {d}, got {}", f.degree())));
            }
        }
        Ok(Self { f0, f2, f4, f6 })
    }

    /// The defining form as a polynomial in `(s, t, w)`.
    pub fn defining_poly(&self) -> Poly<Rational> {
        let w = Poly::var(3, 2);
        let lift = |f: &BinForm<Rational>| f.to_poly().embed(3, &[0, 1]);
        let mut p = Poly::constant(3, self.f0.clone());
        for f in [&self.f2, &self.f4, &self.f6] {
            p = &(&p * &w) + &lift(f);
        }
        p
    }

    /// The fiber cubic in `w` over `(s₀ : t₀)`, ascending coefficients.
    pub fn fiber_cubic(&self, s0: &Rational, t0: &Rational) -> [Rational; 4] {
        [self.f6.eval(s0, t0), self.f4.eval(s0, t0), self.f2.eval(s0, t0), self.f0.clone()]
    }

    /// The `w`-discriminant: `b²c² − 4ac³ − 4b³d − 27a²d² + 18abcd` for
    /// `a = f₀, b = f₂, c = f₄, d = f₆`; a binary form of degree 12.
    pub fn ramification_form(&self) -> Result<BinForm<Rational>> {
        let a = BinForm::new(vec![self.f0.clone()]);
        let (b, c, d) = (&self.f2, &self.f4, &self.f6);
        let k = |n: i64| Rational::from_i64(n);
        let terms = [
            b.mul(b).mul(c).mul(c),
            a.mul(c).mul(c).mul(c).scale(&k(-4)),
            b.mul(b).mul(b).mul(d).scale(&k(-4)),
            a.mul(&a).mul(d).mul(d).scale(&k(-27)),
            a.mul(b).mul(c).mul(d).scale(&k(18)),
        ];
        let disc = terms[1..].iter().fold(terms[0].clone(), |acc, t| acc.add(t));
        if disc.is_zero() {
            return Err(Error::Degenerate("non-reduced fibers everywhere".into()));
        }
        Ok(disc)
    }

    /// `(X₀X₂ − X₁², cubic)` in `P³` via `(s², st, t², w)`.
    pub fn canonical_model_p3(&self) -> (Poly<Rational>, Poly<Rational>) {
        let x = |i| Poly::var(4, i);
        let quadric = &(&x(0) * &x(2)) - &(&x(1) * &x(1));
        let mut cubic = Poly::zero(4);
        let forms = [(BinForm::new(vec![self.f0.clone()]), 3u32), (self.f2.clone(), 2), (self.f4.clone(), 1), (self.f6.clone(), 0)];
        for (f, wpow) in forms {
            let d = f.degree() as u32;
            for (i, c) in f.coeffs().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let (a, b) = (d - i as u32, i as u32);
                let e = if a >= b { vec![(a - b) / 2, b, 0, wpow] } else { vec![0, a, (b - a) / 2, wpow] };
                cubic.add_term(e, c.clone());
            }
        }
        (quadric, cubic)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FiberType {
    Unramified,
    /// One double root: a ramification point of index 2.
    Simple,
    /// A triple root: a ramification point of index 3.
    Total,
    Degenerate,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberReport {
    pub fiber_type: FiberType,
    /// The multiple root, when rational.
    pub w0: Option<Rational>,
    /// Multiplicity of the multiple root (1 if unramified).
    pub multiplicity: usize,
}

fn trim(mut v: Vec<Rational>) -> Vec<Rational> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

/// Classifies the fiber over `(s₀ : t₀)` by `gcd(g, g')` of its cubic `g`.
pub fn classify_fiber(cubic: &[Rational]) -> FiberReport {
    let g = trim(cubic.to_vec());
    if g.len() != 4 {
        return FiberReport { fiber_type: FiberType::Degenerate, w0: None, multiplicity: 0 };
    }
    let h = rational_gcd(&g, &dense_derivative(&g)).expect("nonzero cubic");
    match h.len() {
        1 => FiberReport { fiber_type: FiberType::Unramified, w0: None, multiplicity: 1 },
        2 => FiberReport { fiber_type: FiberType::Simple, w0: Some(-h[0].clone()), multiplicity: 2 },
        3 => {
            // (w - w0)² = w² - 2w0 w + w0²
            let w0 = -h[1].clone() / Rational::from_i64(2);
            if &w0 * &w0 == h[0] {
                FiberReport { fiber_type: FiberType::Total, w0: Some(w0), multiplicity: 3 }
            } else {
                FiberReport { fiber_type: FiberType::Degenerate, w0: None, multiplicity: 0 }
            }
        }
        _ => FiberReport { fiber_type: FiberType::Degenerate, w0: None, multiplicity: 0 },
    }
}

pub fn classify_marked_point(curve: &TrigonalCurve, s0: &Rational, t0: &Rational) -> Result<FiberReport> {
    if s0.is_zero() && t0.is_zero() {
        return Err(Error::InvalidInput("(0:0) is not a point of P^1".into()));
    }
    Ok(classify_fiber(&curve.fiber_cubic(s0, t0)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Smoothness {
    Smooth,
    /// A fiber containing a singular point.
    Singular { s0: Rational, t0: Rational },
    Inconclusive(String),
}

/// Yun's square-free decomposition: `(factor, multiplicity)` pairs.
fn squarefree(f: &[Rational]) -> Vec<(Vec<Rational>, usize)> {
    let f = trim(f.to_vec());
    if f.len() <= 1 {
        return vec![];
    }
    let fp = dense_derivative(&f);
    let a0 = rational_gcd(&f, &fp).expect("nonzero");
    let mut b = poly_divmod(&f, &a0).0;
    let mut c = poly_divmod(&fp, &a0).0;
    let mut d = sub(&c, &dense_derivative(&b));
    let mut out = Vec::new();
    let mut i = 1;
    loop {
        let a = rational_gcd(&b, &d).expect("nonzero");
        if a.len() > 1 {
            out.push((a.clone(), i));
        }
        b = poly_divmod(&b, &a).0;
        if trim(b.clone()).len() <= 1 {
            break;
        }
        c = poly_divmod(&d, &a).0;
        d = sub(&c, &dense_derivative(&b));
        i += 1;
    }
    out
}

fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let z = Rational::zero();
    trim((0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect())
}

/// Fiber-by-fiber test: at every multiple root `p` of the ramification form
/// the curve is smooth over `p` iff `ord_p = Σ (root multiplicity − 1)` of
/// the fiber cubic.
pub fn smoothness_check(curve: &TrigonalCurve) -> Smoothness {
    let r = match curve.ramification_form() {
        Ok(r) => r,
        Err(_) => return Smoothness::Inconclusive("ramification form vanishes identically".into()),
    };
    let mut fibers: Vec<((Rational, Rational), usize)> = Vec::new();
    // Root at (1:0) appears as a drop in the degree of r(x, 1).
    let dehom = trim(r.dehomogenize());
    let at_infinity = 12 - (dehom.len() - 1);
    if at_infinity >= 2 {
        fibers.push(((Rational::one(), Rational::zero()), at_infinity));
    }
    let mut unresolved = None;
    // The repeated part gcd(r, r') = ∏ a_k^{k-1} is small for the curves of
    // interest, so decompose it instead of r itself.
    let repeated = if dehom.len() > 1 {
        rational_gcd(&dehom, &dense_derivative(&dehom)).expect("nonzero")
    } else {
        vec![Rational::one()]
    };
    for (factor, k) in squarefree(&repeated).into_iter().map(|(f, k)| (f, k + 1)) {
        let mut rest = factor;
        for x0 in rational_roots(&rest) {
            rest = poly_divmod(&rest, &[-x0.clone(), Rational::one()]).0;
            fibers.push(((x0, Rational::one()), k));
        }
        if rest.len() > 1 {
            unresolved = Some(format!("repeated factor of degree {} without rational roots", rest.len() - 1));
        }
    }
    for ((s0, t0), ord) in fibers {
        let report = classify_fiber(&curve.fiber_cubic(&s0, &t0));
        let expected = match report.fiber_type {
            FiberType::Unramified => 0,
            FiberType::Simple => 1,
            FiberType::Total => 2,
            FiberType::Degenerate => return Smoothness::Singular { s0, t0 },
        };
        if ord != expected {
            return Smoothness::Singular { s0, t0 };
        }
    }
    match unresolved {
        Some(reason) => Smoothness::Inconclusive(reason),
        None => Smoothness::Smooth,
    }
}

/// Bound on the integers whose divisors are enumerated in the rational
/// root search.
const ROOT_SEARCH_BOUND: u64 = 1_000_000_000;

fn divisors(n: &num_bigint::BigInt) -> Option<Vec<u64>> {
    let n: u64 = num_traits::ToPrimitive::to_u64(&num_traits::Signed::abs(n))?;
    if n == 0 || n > ROOT_SEARCH_BOUND {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d * d != n {
                out.push(n / d);
            }
        }
        d += 1;
    }
    Some(out)
}

/// Distinct rational roots of a square-free polynomial, when its integer
/// normalisation has small enough extreme coefficients.
fn rational_roots(f: &[Rational]) -> Vec<Rational> {
    let f = trim(f.to_vec());
    if f.len() == 2 {
        return vec![-f[0].clone() / f[1].clone()];
    }
    let mut roots = Vec::new();
    if f.len() < 2 {
        return roots;
    }
    let mut g = f.clone();
    if g[0].is_zero() {
        roots.push(Rational::zero());
        g = g[1..].to_vec();
    }
    let den = crate::scalar::common_denominator(&g);
    let ints: Vec<num_bigint::BigInt> = g.iter().map(|c| (c * Rational::from_integer(den.clone())).to_integer()).collect();
    let (Some(ps), Some(qs)) = (divisors(&ints[0]), divisors(ints.last().expect("nonempty"))) else {
        return roots;
    };
    let eval = |x: &Rational| g.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c);
    for p in &ps {
        for q in &qs {
            for sign in [1i64, -1] {
                let x = Rational::new((sign * *p as i64).into(), (*q as i64).into());
                if !roots.contains(&x) && eval(&x).is_zero() {
                    roots.push(x);
                }
            }
        }
    }
    roots
}

/// Names of the invariants, in signature order.
pub const INVARIANT_NAMES: [&str; 5] =
    ["(f,f)_12", "((f,f)_6,f)_12", "((f,f)_10,(f,f)_10)_4", "((f,f)_8,(f,f)_8)_8", "((f,f)_6,(f,f)_6)_12"];
/// Degrees of the invariants in the coefficients of the form.
pub const INVARIANT_DEGREES: [u32; 5] = [2, 3, 4, 4, 4];

/// The raw transvectant invariants of a binary 12-ic.
pub fn invariants(form: &BinForm<Rational>) -> Result<[Rational; 5]> {
    if form.degree() != 12 {
        return Err(Error::InvalidInput(format!("expected a form of degree 12, got {}", form.degree())));
    }
    let c = |f: &BinForm<Rational>| f.coeffs()[0].clone();
    let h6 = transvectant(form, form, 6)?;
    let h8 = transvectant(form, form, 8)?;
    let h10 = transvectant(form, form, 10)?;
    Ok([
        c(&transvectant(form, form, 12)?),
        c(&transvectant(&h6, form, 12)?),
        c(&transvectant(&h10, &h10, 4)?),
        c(&transvectant(&h8, &h8, 8)?),
        c(&transvectant(&h6, &h6, 12)?),
    ])
}

/// Weight-normalised invariant ratios: with `I_r` the first nonzero
/// invariant, each entry is `I_d^{r/g} / I_r^{d/g}`, `g = gcd(r, d)`.
/// Invariant under `GL₂` substitutions and scaling of the form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Signature {
    Null,
    Ratios { reference: usize, zero_pattern: Vec<bool>, ratios: Vec<Rational> },
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 { a } else { gcd(b, a % b) }
}

pub fn invariant_signature(form: &BinForm<Rational>) -> Result<Signature> {
    if form.is_zero() {
        return Err(Error::InvalidInput("zero form".into()));
    }
    let inv = invariants(form)?;
    let Some(reference) = inv.iter().position(|x| !x.is_zero()) else {
        return Ok(Signature::Null);
    };
    let r = INVARIANT_DEGREES[reference];
    let zero_pattern = inv.iter().map(Zero::is_zero).collect();
    let ratios = inv
        .iter()
        .zip(INVARIANT_DEGREES)
        .map(|(x, d)| {
            let g = gcd(r, d);
            x.pow_i((r / g) as i64) / inv[reference].pow_i((d / g) as i64)
        })
        .collect();
    Ok(Signature::Ratios { reference, zero_pattern, ratios })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::resultant;
    use crate::scalar::{q, q_frac};

    fn form(c: &[i64]) -> BinForm<Rational> {
        BinForm::new(c.iter().map(|&x| q(x)).collect())
    }

    fn sample() -> TrigonalCurve {
        TrigonalCurve::new(q(1), form(&[1, 0, -2]), form(&[0, 3, 1, 0, 5]), form(&[2, 0, 1, -1, 0, 0, 7])).unwrap()
    }

    #[test]
    fn discriminant_matches_resultant() {
        let c = sample();
        let p = c.defining_poly();
        let res = resultant(&p, &p.derivative(2), 2).unwrap();
        // disc = -Res(F, F_w) / f0 for a cubic
        let scaled = res.scale(&(-c.f0.inv()));
        let mut st = Poly::zero(2);
        for (e, k) in scaled.terms() {
            assert_eq!(e[2], 0);
            st.add_term(vec![e[0], e[1]], k.clone());
        }
        let disc = BinForm::from_poly(&st, 12).unwrap();
        assert_eq!(disc, c.ramification_form().unwrap());
        assert_eq!(disc.degree(), 12);
    }

    #[test]
    fn pure_cubic_discriminant() {
        let f6 = form(&[1, 0, 0, 0, 0, 0, -1]);
        let c = TrigonalCurve::new(q(1), BinForm::zero(2), BinForm::zero(4), f6.clone()).unwrap();
        assert_eq!(c.ramification_form().unwrap(), f6.mul(&f6).scale(&q(-27)));
    }

    #[test]
    fn fiber_classes() {
        // (w-1)²(w-2) = w³ - 4w² + 5w - 2
        let r = classify_fiber(&[q(-2), q(5), q(-4), q(1)]);
        assert_eq!((r.fiber_type, r.w0), (FiberType::Simple, Some(q(1))));
        // (w-5)³
        let r = classify_fiber(&[q(-125), q(75), q(-15), q(1)]);
        assert_eq!((r.fiber_type, r.w0), (FiberType::Total, Some(q(5))));
        let r = classify_fiber(&[q(-6), q(11), q(-6), q(1)]);
        assert_eq!(r.fiber_type, FiberType::Unramified);
    }

    #[test]
    fn smoothness() {
        assert_eq!(smoothness_check(&sample()), Smoothness::Smooth);
        // f6 = s²(s - t)(s + t)(s - 2t)(s + 3t): square factor at (0:1)
        let f6 = form(&[1, 0, 0])
            .mul(&form(&[1, -1]))
            .mul(&form(&[1, 1]))
            .mul(&form(&[1, -2]))
            .mul(&form(&[1, 3]));
        let c = TrigonalCurve::new(q(1), BinForm::zero(2), BinForm::zero(4), f6).unwrap();
        assert_eq!(smoothness_check(&c), Smoothness::Singular { s0: q(0), t0: q(1) });
        let p = c.defining_poly();
        let pt = [q(0), q(1), q(0)];
        assert!((0..3).all(|i| p.derivative(i).eval(&pt).is_zero()));
    }

    #[test]
    fn canonical_model() {
        let c = sample();
        let (quad, cubic) = c.canonical_model_p3();
        for (s, t, w) in [(q(2), q(3), q(-1)), (q_frac(1, 2), q(5), q(7))] {
            let x = [&s * &s, &s * &t, &t * &t, w.clone()];
            assert!(quad.eval(&x).is_zero());
            assert_eq!(cubic.eval(&x), c.defining_poly().eval(&[s, t, w]));
        }
        let grads: Vec<_> = (0..4).map(|i| quad.derivative(i).eval(&[q(0), q(0), q(0), q(1)])).collect();
        assert!(grads.iter().all(Zero::is_zero));
    }

    #[test]
    fn signature_invariance() {
        let f = sample().ramification_form().unwrap();
        let sig = invariant_signature(&f).unwrap();
        assert_ne!(sig, Signature::Null);
        assert_eq!(invariant_signature(&f.scale(&q_frac(-7, 3))).unwrap(), sig);
        for m in [[[1, 2], [3, 7]], [[2, -1], [1, 1]], [[0, 1], [1, 0]]] {
            let m = m.map(|r| r.map(q));
            assert_eq!(invariant_signature(&f.substitute(m)).unwrap(), sig);
        }
    }
}
