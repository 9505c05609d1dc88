//! From a regular semisimple character to a degree-1 del Pezzo surface in
//! `P(1:1:2:3)` and its trigonal branch curve with a marked ramification
//! point.
//!
//! Stages: [`config_from_chi`] places eight points on a singular cubic `K`;
//! [`general_position`] checks the 240 root conditions geometrically;
//! [`anticanonical_model`] computes sections of `-K_S, -2K_S, -3K_S` as
//! plane curves through fat points and extracts the sextic relation;
//! [`extract_marked_point`] locates the fiber of `K`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::cubic::{embed_with_line_class, CubicEmbedding, CubicKind};
use crate::error::{Error, Result};
use crate::exact::form::BinForm;
use crate::exact::linalg::{has_full_row_rank, mat_kernel, rank, rank_fraction_free, Matrix};
use crate::exact::Poly;
use crate::picard::{configuration_value, Character, CharacterMode, LatticeVector};
use crate::scalar::{primitive_integer_vector, Field, Rational};
use crate::trigonal::{classify_fiber, FiberType, TrigonalCurve};

/// Eight points on the re-embedded singular cubic.
#[derive(Clone, Debug, PartialEq)]
pub struct PointConfig {
    pub kind: CubicKind,
    /// `u₁…u₈` (nodal) or `m₁…m₈` (cuspidal).
    pub params: [Rational; 8],
    /// `λ` (nodal) or `μ` (cuspidal).
    pub line_class: Rational,
    /// The free choice `u₁` (resp. `m₁`).
    pub base: Rational,
    pub embedding: CubicEmbedding,
    /// Plane coordinates, primitive integers stored as rationals.
    pub points: [[Rational; 3]; 8],
}

fn kind_for(mode: CharacterMode) -> CubicKind {
    match mode {
        CharacterMode::Multiplicative => CubicKind::Nodal,
        CharacterMode::Additive => CubicKind::Cuspidal,
    }
}

fn mode_for(kind: CubicKind) -> CharacterMode {
    match kind {
        CubicKind::Nodal => CharacterMode::Multiplicative,
        CubicKind::Cuspidal => CharacterMode::Additive,
    }
}

impl PointConfig {
    pub fn new(kind: CubicKind, params: [Rational; 8], line_class: Rational, base: Rational) -> Result<Self> {
        if kind == CubicKind::Nodal && params.iter().any(Zero::is_zero) {
            return Err(Error::InvalidInput("nodal parameters must be nonzero".into()));
        }
        let embedding = embed_with_line_class(kind, &line_class)?;
        let mut points: [[Rational; 3]; 8] = Default::default();
        for (p, u) in points.iter_mut().zip(&params) {
            let raw = embedding.point(u)?;
            let ints = primitive_integer_vector(&raw);
            *p = std::array::from_fn(|i| Rational::from_integer(ints[i].clone()));
        }
        Ok(Self { kind, params, line_class, base, embedding, points })
    }

    /// Value of the configuration character on a vector of `Λ`.
    pub fn character_value(&self, v: &LatticeVector) -> Rational {
        configuration_value(mode_for(self.kind), &self.line_class, &self.params, v)
    }

    /// The character `v ↦ λ^{c_l} ∏ u_i^{c_i}` (or its additive analogue).
    pub fn character(&self) -> Result<Character> {
        let simple = crate::picard::default_simple_system();
        let values = std::array::from_fn(|i| self.character_value(&simple.roots()[i]));
        Character::new(mode_for(self.kind), values)
    }
}

/// `u_i = base·χ(e_i − e₁)`, `λ = χ(l − e₁ − e₂ − e₃)·u₁u₂u₃` (additively
/// for the cuspidal case). Rejects characters on a root hyperplane.
pub fn config_from_chi(chi: &Character, base: &Rational) -> Result<PointConfig> {
    let hyperplanes = chi.root_hyperplanes();
    if let Some(r) = hyperplanes.first() {
        return Err(Error::NotRegularSemisimple(r.to_string()));
    }
    config_from_chi_unchecked(chi, base)
}

/// As [`config_from_chi`] without the regularity check; used to build the
/// degenerate configurations on root hyperplanes.
pub fn config_from_chi_unchecked(chi: &Character, base: &Rational) -> Result<PointConfig> {
    let kind = kind_for(chi.mode());
    if kind == CubicKind::Nodal && base.is_zero() {
        return Err(Error::InvalidInput("nodal base must be nonzero".into()));
    }
    let e = LatticeVector::e;
    let mut params: [Rational; 8] = Default::default();
    for i in 1..=8 {
        let v = chi.eval(&(e(i) - e(1)))?;
        params[i - 1] = match kind {
            CubicKind::Nodal => base * v,
            CubicKind::Cuspidal => base + v,
        };
    }
    let line = chi.eval(&(LatticeVector::l() - e(1) - e(2) - e(3)))?;
    let line_class = match kind {
        CubicKind::Nodal => line * &params[0] * &params[1] * &params[2],
        CubicKind::Cuspidal => line + &params[0] + &params[1] + &params[2],
    };
    if kind == CubicKind::Nodal && line_class.is_zero() {
        return Err(Error::Degenerate("line class vanishes".into()));
    }
    PointConfig::new(kind, params, line_class, base.clone())
}

/// The four families of exceptional root classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RootFamily {
    /// `e_i − e_j`: two points coincide.
    Coincident,
    /// `l − e_i − e_j − e_k`: three points on a line.
    Collinear,
    /// `2l − Σ six e's`: six points on a conic.
    Conic,
    /// `3l − Σ e − e_j`: a cubic through all eight, singular at the `j`-th.
    SingularCubic,
}

impl fmt::Display for RootFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RootFamily::Coincident => "points coincide",
            RootFamily::Collinear => "three points collinear",
            RootFamily::Conic => "six points on a conic",
            RootFamily::SingularCubic => "singular cubic through eight points",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FailureCertificate {
    pub family: RootFamily,
    /// The root `α` with `χ(α) = 1` (resp. `0`).
    pub root: LatticeVector,
    /// Point indices (0-based) involved; for the singular cubic, the
    /// doubled point.
    pub indices: Vec<usize>,
}

impl fmt::Display for FailureCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<String> = self.indices.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "{} (root {}, points {})", self.family, self.root, idx.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeneralPosition {
    Pass,
    Fail(FailureCertificate),
}

/// Tests the 120 conditions `u_i ≠ u_j`, `u_iu_ju_k ≠ λ`, `∏₆ ≠ λ²`,
/// `u_j∏₈ ≠ λ³` (sums for the cuspidal case), one for each pair `±α`.
pub fn general_position(config: &PointConfig) -> GeneralPosition {
    let e = LatticeVector::e;
    let l = LatticeVector::l();
    let all: LatticeVector = (1..=8).fold(LatticeVector::zero(), |acc, i| acc + e(i));
    let identity = config.kind.identity();
    let check = |root: LatticeVector, family, indices: Vec<usize>| -> Option<FailureCertificate> {
        (config.character_value(&root) == identity).then_some(FailureCertificate { family, root, indices })
    };
    for i in 0..8 {
        for j in i + 1..8 {
            if let Some(c) = check(e(i + 1) - e(j + 1), RootFamily::Coincident, vec![i, j]) {
                return GeneralPosition::Fail(c);
            }
        }
    }
    for i in 0..8 {
        for j in i + 1..8 {
            for k in j + 1..8 {
                if let Some(c) = check(l - e(i + 1) - e(j + 1) - e(k + 1), RootFamily::Collinear, vec![i, j, k]) {
                    return GeneralPosition::Fail(c);
                }
            }
        }
    }
    for i in 0..8 {
        for j in i + 1..8 {
            let six: Vec<usize> = (0..8).filter(|&k| k != i && k != j).collect();
            let root = l * 2 - all + e(i + 1) + e(j + 1);
            if let Some(c) = check(root, RootFamily::Conic, six) {
                return GeneralPosition::Fail(c);
            }
        }
    }
    for j in 0..8 {
        if let Some(c) = check(l * 3 - all - e(j + 1), RootFamily::SingularCubic, vec![j]) {
            return GeneralPosition::Fail(c);
        }
    }
    GeneralPosition::Pass
}

/// Exponents `(a, b, c)` of the plane monomials `x^a y^b z^c` of degree `d`.
pub fn plane_monomials(d: u32) -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for a in (0..=d).rev() {
        for b in (0..=d - a).rev() {
            out.push([a, b, d - a - b]);
        }
    }
    out
}

fn falling(n: u32, k: u32) -> i64 {
    (0..k).map(|i| (n - i) as i64).product()
}

/// Rows expressing that a degree-`d` form has multiplicity `≥ m` at `p`:
/// every partial derivative of order `m − 1` vanishes there.
fn multiplicity_rows(p: &[Rational; 3], d: u32, m: u32) -> Vec<Vec<Rational>> {
    let monos = plane_monomials(d);
    let pows: Vec<Vec<Rational>> =
        p.iter().map(|x| (0..=d).map(|k| x.pow_i(k as i64)).collect()).collect();
    plane_monomials(m - 1)
        .into_iter()
        .map(|[i, j, k]| {
            monos
                .iter()
                .map(|&[a, b, c]| {
                    if a < i || b < j || c < k {
                        return Rational::zero();
                    }
                    let coef = falling(a, i) * falling(b, j) * falling(c, k);
                    Rational::from_i64(coef)
                        * &pows[0][(a - i) as usize]
                        * &pows[1][(b - j) as usize]
                        * &pows[2][(c - k) as usize]
                })
                .collect()
        })
        .collect()
}

fn condition_matrix(points: &[[Rational; 3]], d: u32, m: u32) -> Matrix<Rational> {
    let cols = plane_monomials(d).len();
    let rows = points.iter().flat_map(|p| multiplicity_rows(p, d, m)).collect();
    Matrix::from_rows(cols, rows)
}

fn poly_from_coeffs(d: u32, coeffs: &[Rational]) -> Poly<Rational> {
    let mut p = Poly::zero(3);
    for (e, c) in plane_monomials(d).into_iter().zip(coeffs) {
        p.add_term(e.to_vec(), c.clone());
    }
    p
}

fn coeffs_of(p: &Poly<Rational>, d: u32) -> Vec<Rational> {
    plane_monomials(d).iter().map(|e| p.coeff(e)).collect()
}

/// Basis of the degree-`d` forms with multiplicity `≥ m` at every point.
pub fn linear_system(points: &[[Rational; 3]], d: u32, m: u32) -> Vec<Poly<Rational>> {
    if m == 0 {
        return plane_monomials(d).into_iter().map(|e| Poly::monomial(e.to_vec(), Rational::one())).collect();
    }
    mat_kernel(&condition_matrix(points, d, m)).iter().map(|v| poly_from_coeffs(d, v)).collect()
}

/// Dimension of [`linear_system`], using a modular full-rank certificate
/// when the conditions are independent.
pub fn linear_system_dimension(points: &[[Rational; 3]], d: u32, m: u32) -> usize {
    let cols = plane_monomials(d).len();
    if m == 0 {
        return cols;
    }
    let a = condition_matrix(points, d, m);
    if has_full_row_rank(&a) {
        cols - a.rows()
    } else {
        cols - rank_fraction_free(&a)
    }
}

/// Exponents `(a, b, c, d)` of `s^a t^b w^c z^d` of weighted degree 6
/// with weights `(1, 1, 2, 3)`; 23 monomials.
pub fn sextic_monomials() -> Vec<[u32; 4]> {
    let mut out = Vec::new();
    for d in 0..=2u32 {
        for c in 0..=(6 - 3 * d) / 2 {
            let rest = 6 - 3 * d - 2 * c;
            for b in 0..=rest {
                out.push([rest - b, b, c, d]);
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct WeightedSextic {
    pub f0: Rational,
    pub f2: BinForm<Rational>,
    pub f4: BinForm<Rational>,
    pub f6: BinForm<Rational>,
    /// Sections `F, G` of `-K`, `W` of `-2K`, `Z` of `-3K` as plane forms.
    pub basis: [Poly<Rational>; 4],
    /// The relation among [`sextic_monomials`], primitive integral.
    pub relation: Vec<Rational>,
    /// Dimensions of the systems `(3,1), (6,2), (9,3), (18,6)`.
    pub ladder: [usize; 4],
}

fn span_rank(forms: &[Poly<Rational>], d: u32) -> usize {
    let rows = forms.iter().map(|f| coeffs_of(f, d)).collect();
    rank_fraction_free(&Matrix::from_rows(plane_monomials(d).len(), rows))
}

fn complete(existing: &[Poly<Rational>], candidates: &[Poly<Rational>], d: u32) -> Result<Poly<Rational>> {
    let base = span_rank(existing, d);
    for c in candidates {
        let mut all = existing.to_vec();
        all.push(c.clone());
        if span_rank(&all, d) > base {
            return Ok(c.clone());
        }
    }
    Err(Error::Internal(format!("no section of degree {d} completes the products")))
}

/// Scales a form to primitive integer coefficients.
fn primitive(p: &Poly<Rational>, d: u32) -> Poly<Rational> {
    let c = coeffs_of(p, d);
    let ints = primitive_integer_vector(&c);
    poly_from_coeffs(d, &ints.into_iter().map(Rational::from_integer).collect::<Vec<_>>())
}


/// The anticanonical model `z² = f₀w³ + f₂w² + f₄w + f₆` of the blow-up.
pub fn anticanonical_model(config: &PointConfig) -> Result<WeightedSextic> {
    if let GeneralPosition::Fail(c) = general_position(config) {
        return Err(Error::GeneralPosition(c.to_string()));
    }
    let pts = &config.points;
    let sys1 = linear_system(pts, 3, 1);
    let sys2 = linear_system(pts, 6, 2);
    let sys3 = linear_system(pts, 9, 3);
    let dim6 = linear_system_dimension(pts, 18, 6);
    let ladder = [sys1.len(), sys2.len(), sys3.len(), dim6];
    if ladder != [2, 4, 7, 22] {
        return Err(Error::Degenerate(format!("linear system dimensions {ladder:?}, expected [2, 4, 7, 22]")));
    }
    let f = primitive(&sys1[0], 3);
    let g = primitive(&sys1[1], 3);
    let products2 = [&f * &f, &f * &g, &g * &g];
    let w = primitive(&complete(&products2, &sys2, 6)?, 6);
    let products3 = [&products2[0] * &f, &products2[0] * &g, &products2[1] * &g, &products2[2] * &g, &f * &w, &g * &w];
    let z = primitive(&complete(&products3, &sys3, 9)?, 9);
    let basis = [f, g, w, z];

    // Find the relation on a small grid, then certify it on the affine grid
    // {-9..9}², where a nonzero form of degree 18 cannot vanish identically.
    let monos = sextic_monomials();
    let int_basis: Vec<(Vec<[u32; 3]>, Vec<BigInt>)> = basis
        .iter()
        .zip([3, 3, 6, 9])
        .map(|(b, d)| (plane_monomials(d), coeffs_of(b, d).iter().map(|c| c.to_integer()).collect()))
        .collect();
    let row_at = |i: i64, j: i64| -> Vec<BigInt> {
        let pi: Vec<BigInt> = (0..=9u32).map(|k| BigInt::from(i).pow(k)).collect();
        let pj: Vec<BigInt> = (0..=9u32).map(|k| BigInt::from(j).pow(k)).collect();
        let vals: Vec<BigInt> = int_basis
            .iter()
            .map(|(ms, cs)| ms.iter().zip(cs).map(|(e, c)| c * &pi[e[0] as usize] * &pj[e[1] as usize]).sum())
            .collect();
        monos
            .iter()
            .map(|e| (0..4).fold(BigInt::one(), |acc, k| acc * vals[k].pow(e[k])))
            .collect()
    };
    let rows = (-3i64..=3)
        .flat_map(|i| (-3i64..=3).map(move |j| (i, j)))
        .map(|(i, j)| row_at(i, j).into_iter().map(Rational::from_integer).collect())
        .collect();
    let kernel = mat_kernel(&Matrix::from_rows(monos.len(), rows));
    if kernel.len() != 1 {
        return Err(Error::NonGenericRingBasis(kernel.len()));
    }
    let relation = kernel.into_iter().next().expect("one vector");
    let int_relation: Vec<BigInt> = relation.iter().map(|c| c.to_integer()).collect();
    for i in -9i64..=9 {
        for j in -9i64..=9 {
            let value: BigInt = row_at(i, j).iter().zip(&int_relation).map(|(a, b)| a * b).sum();
            if !value.is_zero() {
                return Err(Error::Internal("grid relation is not a polynomial identity".into()));
            }
        }
    }

    // z² + z·L + P = 0  ⇒  (z + L/2)² = L²/4 − P.
    let kz2 = monos.iter().zip(&relation).find(|(e, _)| e[3] == 2).map(|(_, k)| k.clone()).expect("z² monomial");
    if kz2.is_zero() {
        return Err(Error::Degenerate("relation has no z² term".into()));
    }
    let mut lin = Poly::zero(3);
    let mut rest = Poly::zero(3);
    for (e, k) in monos.iter().zip(&relation) {
        let c = k.clone() / kz2.clone();
        match e[3] {
            1 => lin.add_term(vec![e[0], e[1], e[2]], c),
            0 => rest.add_term(vec![e[0], e[1], e[2]], c),
            _ => {}
        }
    }
    let rhs = &(&lin * &lin).scale(&Rational::new(1.into(), 4.into())) - &rest;
    let mut coeffs: [Vec<Rational>; 4] = [vec![Rational::zero(); 1], vec![Rational::zero(); 3], vec![Rational::zero(); 5], vec![Rational::zero(); 7]];
    for (e, c) in rhs.terms() {
        let idx = 3 - e[2] as usize;
        coeffs[idx][e[1] as usize] = c.clone();
    }
    let [c0, c2, c4, c6] = coeffs;
    let f0 = c0[0].clone();
    if f0.is_zero() {
        return Err(Error::HyperellipticDegeneration);
    }
    Ok(WeightedSextic { f0, f2: BinForm::new(c2), f4: BinForm::new(c4), f6: BinForm::new(c6), basis, relation, ladder })
}

/// The curve with a marked ramification point over the fiber of `K`.
#[derive(Clone, Debug, PartialEq)]
pub struct MarkedCurve {
    pub curve: TrigonalCurve,
    pub s0: Rational,
    pub t0: Rational,
    pub w0: Rational,
    pub ram_index: u8,
}

/// Finds `(s₀ : t₀)` with `t₀F − s₀G` proportional to the image of `K` and
/// the multiple root `w₀` of the fiber cubic there.
pub fn extract_marked_point(config: &PointConfig, sextic: &WeightedSextic) -> Result<MarkedCurve> {
    let cols: Vec<Vec<Rational>> = [&sextic.basis[0], &sextic.basis[1], &config.embedding.equation]
        .iter()
        .map(|p| coeffs_of(p, 3))
        .collect();
    let m = Matrix::from_fn(10, 3, |i, j| cols[j][i].clone());
    let kernel = mat_kernel(&m);
    let v = kernel
        .iter()
        .find(|v| !v[2].is_zero())
        .ok_or_else(|| Error::Internal("image of K is not in the pencil".into()))?;
    // a F + b G + c C = 0  ⇒  C ∝ a F + b G = t₀F − s₀G.
    let t0 = v[0].clone();
    let s0 = -v[1].clone();
    let curve = TrigonalCurve::new(sextic.f0.clone(), sextic.f2.clone(), sextic.f4.clone(), sextic.f6.clone())?;
    let report = classify_fiber(&curve.fiber_cubic(&s0, &t0));
    let (expected, index) = match config.kind {
        CubicKind::Nodal => (FiberType::Simple, 2),
        CubicKind::Cuspidal => (FiberType::Total, 3),
    };
    if report.fiber_type != expected {
        return Err(Error::CaseMismatch(format!("{} input gave a {:?} fiber", config.kind, report.fiber_type)));
    }
    let w0 = report.w0.ok_or_else(|| Error::Internal("multiple root not rational".into()))?;
    Ok(MarkedCurve { curve, s0, t0, w0, ram_index: index })
}

/// Everything computed along the way, for reporting.
#[derive(Clone, Debug, PartialEq)]
pub struct PipelineRun {
    pub config: PointConfig,
    pub sextic: WeightedSextic,
    pub marked: MarkedCurve,
}

/// The full pipeline.
pub fn run_pipeline(chi: &Character, base: &Rational) -> Result<PipelineRun> {
    let config = config_from_chi(chi, base)?;
    let sextic = anticanonical_model(&config)?;
    let marked = extract_marked_point(&config, &sextic)?;
    Ok(PipelineRun { config, sextic, marked })
}

/// Independent confirmation of a failure certificate from the plane
/// coordinates: proportional points, a vanishing 3×3 determinant, a
/// singular 6×6 conic matrix, or a rank-deficient singular-cubic system.
pub fn confirm_failure(config: &PointConfig, cert: &FailureCertificate) -> bool {
    let p = &config.points;
    match cert.family {
        RootFamily::Coincident => {
            let (a, b) = (&p[cert.indices[0]], &p[cert.indices[1]]);
            (0..3).all(|i| (0..3).all(|j| &a[i] * &b[j] == &a[j] * &b[i]))
        }
        RootFamily::Collinear => {
            let m = Matrix::from_fn(3, 3, |i, j| p[cert.indices[i]][j].clone());
            crate::exact::determinant(&m).is_zero()
        }
        RootFamily::Conic => {
            let monos = plane_monomials(2);
            let m = Matrix::from_fn(6, 6, |i, j| {
                let [a, b, c] = monos[j];
                let q = &p[cert.indices[i]];
                q[0].pow_i(a as i64) * q[1].pow_i(b as i64) * q[2].pow_i(c as i64)
            });
            crate::exact::determinant(&m).is_zero()
        }
        RootFamily::SingularCubic => {
            let j = cert.indices[0];
            let mut rows: Vec<Vec<Rational>> = p.iter().flat_map(|q| multiplicity_rows(q, 3, 1)).collect();
            rows.extend(multiplicity_rows(&p[j], 3, 2));
            rank(&Matrix::from_rows(10, rows)) < 10
        }
    }
}


#[cfg(test)]
mod pipeline_tests {
    use super::tests::nodal_chi;
    use super::*;
    use crate::trigonal::{invariant_signature, smoothness_check, Smoothness};
    use crate::scalar::q;

    #[test]
    fn nodal_pipeline() {
        let run = run_pipeline(&nodal_chi(), &q(1)).unwrap();
        assert_eq!(run.sextic.ladder, [2, 4, 7, 22]);
        assert_eq!(run.marked.ram_index, 2);
        let cubic = run.marked.curve.fiber_cubic(&run.marked.s0, &run.marked.t0);
        assert_eq!(classify_fiber(&cubic).fiber_type, FiberType::Simple);
        let disc = run.marked.curve.ramification_form().unwrap();
        assert_eq!(disc.root_multiplicity(&run.marked.s0, &run.marked.t0).0, 1);
        assert_eq!(smoothness_check(&run.marked.curve), Smoothness::Smooth);
    }

    #[test]
    fn reflection_and_base_keep_signature() {
        let chi = nodal_chi();
        let sig = |c: &Character, b: i64| {
            let run = run_pipeline(c, &q(b)).unwrap();
            invariant_signature(&run.marked.curve.ramification_form().unwrap()).unwrap()
        };
        let reference = sig(&chi, 1);
        assert_eq!(sig(&chi, 3), reference);
        assert_eq!(sig(&chi.precompose(&[7]).unwrap(), 1), reference);
    }

    #[test]
    fn cuspidal_pipeline() {
        let chi = Character::additive([2, 3, 5, 7, 11, 13, 17, 19].map(q));
        let run = run_pipeline(&chi, &q(0)).unwrap();
        assert_eq!(run.marked.ram_index, 3);
        let disc = run.marked.curve.ramification_form().unwrap();
        assert_eq!(disc.root_multiplicity(&run.marked.s0, &run.marked.t0).0, 2);
        assert_eq!(smoothness_check(&run.marked.curve), Smoothness::Smooth);
    }
}
