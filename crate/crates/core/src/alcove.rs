//! Alcove geometry for simply laced root data: affine Weyl normalisation,
//! the fundamental group `Ω ≅ Y/ZΦ∨`, stabilisers `Ω_x` and Kac
//! coordinates of torsion classes.
//!
//! Points are written in the basis of fundamental coweights, so the simple
//! root `α_i` evaluates to the `i`-th coordinate.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::root_system::{self, DynkinType, SimpleType};
use crate::scalar::{Field, Rational};

/// Root datum of an adjoint simply laced group in coweight coordinates.
#[derive(Clone, Debug)]
pub struct RootDatum {
    pub simple_type: SimpleType,
    pub cartan: Vec<Vec<i64>>,
    /// Coefficients of the highest root in the simple roots.
    pub highest: Vec<i64>,
    /// Positive roots in simple-root coordinates.
    pub positive_roots: Vec<Vec<i64>>,
}

impl RootDatum {
    pub fn new(simple_type: SimpleType) -> Self {
        let cartan = simple_type.cartan_matrix();
        let positive_roots = root_system::positive_roots(simple_type);
        let highest = positive_roots
            .iter()
            .max_by_key(|r| r.iter().sum::<i64>())
            .cloned()
            .expect("nonempty root system");
        Self { simple_type, cartan, highest, positive_roots }
    }

    /// Accepts labels such as `E8`, `A2`, `D4`.
    pub fn from_label(label: &str) -> Result<Self> {
        let t: SimpleType = label.trim().parse().map_err(|_| Error::UnsupportedType(label.to_string()))?;
        Ok(Self::new(t))
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn label(&self) -> String {
        self.simple_type.to_string()
    }

    /// Simple coroot `α̌_i` in coweight coordinates (row `i` of the Cartan matrix).
    pub fn coroot(&self, i: usize) -> Vec<i64> {
        self.cartan[i].clone()
    }

    /// `α̌_0 = Σ a_i α̌_i` in coweight coordinates.
    pub fn highest_coroot(&self) -> Vec<i64> {
        let n = self.rank();
        (0..n).map(|j| (0..n).map(|i| self.highest[i] * self.cartan[i][j]).sum()).collect()
    }

    /// Pairing `⟨α, ω̌_j⟩`, which is the `j`-th simple coordinate of `α`.
    pub fn root_at(&self, root: &[i64], x: &[Rational]) -> Rational {
        root.iter().zip(x).filter(|(c, _)| **c != 0).fold(Rational::zero(), |acc, (c, xi)| acc + xi * Rational::from_i64(*c))
    }

    pub fn alpha0(&self, x: &[Rational]) -> Rational {
        self.root_at(&self.highest, x)
    }

    /// Vertices `v_0 = 0` and `v_i = ω̌_i / a_i`.
    pub fn vertices(&self) -> Vec<AlcovePoint> {
        let n = self.rank();
        let mut out = vec![AlcovePoint::new(vec![Rational::zero(); n])];
        for i in 0..n {
            let mut c = vec![Rational::zero(); n];
            c[i] = Rational::from_i64(self.highest[i]).inv();
            out.push(AlcovePoint::new(c));
        }
        out
    }

    /// `(1/h) Σ v_i` averaged over the `ℓ + 1` vertices.
    pub fn barycentre(&self) -> AlcovePoint {
        let n = self.rank();
        let k = Rational::from_i64(n as i64 + 1).inv();
        let c = (0..n).map(|i| Rational::from_i64(self.highest[i]).inv() * k.clone()).collect();
        AlcovePoint::new(c)
    }

    pub fn in_closed_alcove(&self, x: &[Rational]) -> bool {
        x.iter().all(|c| !c.is_negative()) && self.alpha0(x) <= Rational::one()
    }

    /// Affine map of the wall reflection `s_i` (`i = 0` is the affine wall).
    pub fn reflection(&self, i: usize) -> AffineMap {
        let n = self.rank();
        let mut m = vec![vec![0i64; n]; n];
        for (k, row) in m.iter_mut().enumerate() {
            row[k] = 1;
        }
        let mut c = vec![0i64; n];
        if i == 0 {
            let h = self.highest_coroot();
            for j in 0..n {
                for k in 0..n {
                    m[j][k] -= h[j] * self.highest[k];
                }
                c[j] = h[j];
            }
        } else {
            for j in 0..n {
                m[j][i - 1] -= self.cartan[i - 1][j];
            }
        }
        AffineMap { linear: m, shift: c }
    }

    /// Moves `x` into the closed alcove by wall reflections. The word lists
    /// the reflections in the order they were applied.
    pub fn normalize_to_alcove(&self, x: &[Rational]) -> (AlcovePoint, Vec<usize>) {
        let n = self.rank();
        let mut y = x.to_vec();
        let mut word = Vec::new();
        loop {
            let violated = if self.alpha0(&y) > Rational::one() {
                Some(0)
            } else {
                (0..n).find(|&i| y[i].is_negative()).map(|i| i + 1)
            };
            match violated {
                None => return (AlcovePoint::new(y), word),
                Some(i) => {
                    y = self.reflection(i).apply(&y);
                    word.push(i);
                }
            }
        }
    }

    /// Applies wall reflections in the listed order.
    pub fn apply_affine_word(&self, word: &[usize], x: &[Rational]) -> Vec<Rational> {
        word.iter().fold(x.to_vec(), |y, &i| self.reflection(i).apply(&y))
    }

    /// Invariant factors `> 1` of `Y / ZΦ∨`.
    pub fn fundamental_group(&self) -> FundamentalGroup {
        let d = smith_invariants(&self.cartan);
        FundamentalGroup { invariants: d.into_iter().filter(|&x| x > 1).collect() }
    }

    /// The elements of `Ω`: identity, and for each minuscule node `j` the
    /// normalisation of the translation by `ω̌_j`.
    pub fn omega_elements(&self) -> Vec<OmegaElement> {
        let n = self.rank();
        let mut out = vec![OmegaElement::from_affine(self, AffineMap::identity(n))];
        let b = self.barycentre();
        for j in 0..n {
            if self.highest[j] != 1 {
                continue;
            }
            let mut y = vec![0i64; n];
            y[j] = 1;
            let t = AffineMap::translation(y.clone());
            let (_, word) = self.normalize_to_alcove(&t.apply(&b.coords));
            let g = word.iter().fold(t, |acc, &i| self.reflection(i).compose(&acc));
            out.push(OmegaElement::from_affine(self, g));
        }
        out
    }

    /// `Ω_x = {ω ∈ Ω : ω(x) = x}`.
    pub fn stabilizer(&self, x: &AlcovePoint) -> Result<Vec<OmegaElement>> {
        if x.coords.len() != self.rank() {
            return Err(Error::InvalidInput(format!("expected {} coordinates", self.rank())));
        }
        if !self.in_closed_alcove(&x.coords) {
            return Err(Error::OutsideAlcove);
        }
        Ok(self.omega_elements().into_iter().filter(|g| g.map.apply(&x.coords) == x.coords).collect())
    }

    /// Component group of the centraliser of `exp(x)`, identified with `Ω_x`.
    pub fn component_group_of_element(&self, x: &AlcovePoint) -> Result<Vec<OmegaElement>> {
        self.stabilizer(x)
    }

    /// Roots `α` with `α(x) ∈ Z`, positive and negative, in simple coordinates.
    pub fn integral_roots(&self, x: &[Rational]) -> Vec<Vec<i64>> {
        let pos: Vec<Vec<i64>> =
            self.positive_roots.iter().filter(|r| self.root_at(r, x).is_integer()).cloned().collect();
        let mut all = pos.clone();
        all.extend(pos.into_iter().map(|r| r.into_iter().map(|c| -c).collect::<Vec<_>>()));
        all
    }

    pub fn fixed_subsystem_type(&self, x: &[Rational]) -> Result<DynkinType> {
        root_system::classify(&self.integral_roots(x), root_system::cartan_form(&self.cartan))
    }

    /// Solutions `(s_0, …, s_ℓ) ≥ 0` of `s_0 + Σ a_i s_i = m`, one per
    /// `Ω`-orbit, with their points `x_i = s_i / m`. These are the conjugacy
    /// classes of elements of order dividing `m` in the adjoint group.
    pub fn kac_classes(&self, m: u64) -> Result<Vec<KacClass>> {
        if m == 0 {
            return Err(Error::InvalidInput("order must be positive".into()));
        }
        let n = self.rank();
        let mut all = Vec::new();
        let mut s = vec![0u64; n];
        self.kac_rec(0, m, m, &mut s, &mut all)?;
        let omega = self.omega_elements();
        let mut out: Vec<KacClass> = Vec::new();
        for c in all {
            let seen = out.iter().any(|r| omega.iter().any(|g| g.map.apply(&r.point.coords) == c.point.coords));
            if !seen {
                out.push(c);
            }
        }
        Ok(out)
    }

    fn kac_rec(&self, i: usize, left: u64, m: u64, s: &mut Vec<u64>, out: &mut Vec<KacClass>) -> Result<()> {
        if i == self.rank() {
            let point: Vec<Rational> = s.iter().map(|&si| Rational::new((si as i64).into(), (m as i64).into())).collect();
            let fixed_type = self.fixed_subsystem_type(&point)?;
            let mut labels = vec![left];
            labels.extend_from_slice(s);
            out.push(KacClass { labels, point: AlcovePoint::new(point), fixed_type });
            return Ok(());
        }
        let a = self.highest[i] as u64;
        for si in (0..=left / a).rev() {
            s[i] = si;
            self.kac_rec(i + 1, left - si * a, m, s, out)?;
        }
        s[i] = 0;
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlcovePoint {
    pub coords: Vec<Rational>,
}

impl AlcovePoint {
    pub fn new(coords: Vec<Rational>) -> Self {
        Self { coords }
    }
}

impl fmt::Display for AlcovePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(crate::scalar::format_rational).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// `x ↦ M x + c` with integer data in coweight coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMap {
    pub linear: Vec<Vec<i64>>,
    pub shift: Vec<i64>,
}

impl AffineMap {
    pub fn identity(n: usize) -> Self {
        Self::translation(vec![0; n])
    }

    pub fn translation(y: Vec<i64>) -> Self {
        let n = y.len();
        let linear = (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect();
        Self { linear, shift: y }
    }

    pub fn apply(&self, x: &[Rational]) -> Vec<Rational> {
        self.linear
            .iter()
            .zip(&self.shift)
            .map(|(row, c)| {
                row.iter()
                    .zip(x)
                    .filter(|(m, _)| **m != 0)
                    .fold(Rational::from_i64(*c), |acc, (m, xi)| acc + xi * Rational::from_i64(*m))
            })
            .collect()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        let n = self.shift.len();
        let linear = (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|k| self.linear[i][k] * other.linear[k][j]).sum()).collect())
            .collect();
        let shift = (0..n).map(|i| self.shift[i] + (0..n).map(|k| self.linear[i][k] * other.shift[k]).sum::<i64>()).collect();
        Self { linear, shift }
    }
}

/// An element `g = w · t_y` of the extended affine Weyl group preserving
/// the alcove. `weyl_word` lists simple reflections (1-based) with the
/// rightmost applied first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaElement {
    pub weyl_word: Vec<usize>,
    pub translation: Vec<i64>,
    pub map: AffineMap,
}

impl OmegaElement {
    fn from_affine(datum: &RootDatum, map: AffineMap) -> Self {
        let n = datum.rank();
        // Recover w from its action on the regular coweight ρ∨ = (1,…,1).
        let rho = vec![Rational::one(); n];
        let linear = AffineMap { linear: map.linear.clone(), shift: vec![0; n] };
        let mut v = linear.apply(&rho);
        let mut undo = Vec::new();
        while let Some(i) = (0..n).find(|&i| v[i].is_negative()) {
            v = datum.reflection(i + 1).apply(&v);
            undo.push(i + 1);
        }
        // undo applied in order gives u with u·w = 1, so w = u^{-1}: the
        // same letters, rightmost applied first.
        let weyl_word = undo;
        // y = w^{-1} c
        let inverse = weyl_word.iter().rev().fold(AffineMap::identity(n), |acc, &i| acc.compose(&datum.reflection(i)));
        let translation = (0..n).map(|i| (0..n).map(|k| inverse.linear[i][k] * map.shift[k]).sum()).collect();
        Self { weyl_word, translation, map }
    }

    pub fn is_identity(&self) -> bool {
        self.map == AffineMap::identity(self.translation.len())
    }

    /// Image of the vertex set, as indices into [`RootDatum::vertices`].
    pub fn vertex_permutation(&self, datum: &RootDatum) -> Option<Vec<usize>> {
        let verts = datum.vertices();
        verts
            .iter()
            .map(|v| {
                let image = self.map.apply(&v.coords);
                verts.iter().position(|w| w.coords == image)
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FundamentalGroup {
    /// Orders of the cyclic factors (all `> 1`); empty for the trivial group.
    pub invariants: Vec<u64>,
}

impl FundamentalGroup {
    pub fn order(&self) -> u64 {
        self.invariants.iter().product()
    }
}

impl fmt::Display for FundamentalGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.invariants.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.invariants.iter().map(|d| format!("Z/{d}")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KacClass {
    /// `(s_0, s_1, …, s_ℓ)`.
    pub labels: Vec<u64>,
    pub point: AlcovePoint,
    pub fixed_type: DynkinType,
}

/// Diagonal of the Smith normal form of a square integer matrix.
pub fn smith_invariants(m: &[Vec<i64>]) -> Vec<u64> {
    let mut a: Vec<Vec<i64>> = m.to_vec();
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // Pivot: smallest nonzero absolute value in the remaining block.
        let pivot = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| a[i][j] != 0)
            .min_by_key(|&(i, j)| a[i][j].abs());
        let Some((pi, pj)) = pivot else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        let mut clean = true;
        for i in t + 1..rows {
            let q = a[i][t] / a[t][t];
            if q != 0 {
                for j in t..cols {
                    a[i][j] -= q * a[t][j];
                }
            }
            clean &= a[i][t] == 0;
        }
        for j in t + 1..cols {
            let q = a[t][j] / a[t][t];
            if q != 0 {
                for row in a.iter_mut().skip(t) {
                    row[j] -= q * row[t];
                }
            }
            clean &= a[t][j] == 0;
        }
        if !clean {
            continue;
        }
        // Divisibility: fold any entry not divisible by the pivot into row t.
        if let Some(i) = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| a[i][j] % a[t][t] != 0)) {
            for j in t..cols {
                a[t][j] += a[i][j];
            }
            continue;
        }
        diag.push(a[t][t].unsigned_abs());
        t += 1;
    }
    diag.resize(rows.min(cols), 0);
    diag
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q_frac;

    fn datum(label: &str) -> RootDatum {
        RootDatum::from_label(label).unwrap()
    }

    #[test]
    fn highest_roots() {
        assert_eq!(datum("E8").highest, vec![2, 3, 4, 6, 5, 4, 3, 2]);
        assert_eq!(datum("A2").highest, vec![1, 1]);
        assert_eq!(datum("E7").highest, vec![2, 2, 3, 4, 3, 2, 1]);
        assert!(RootDatum::from_label("B3").is_err());
    }

    #[test]
    fn fundamental_groups() {
        for (label, order) in [("E8", 1), ("E7", 2), ("E6", 3), ("A1", 2), ("A2", 3), ("A5", 6), ("D4", 4), ("D5", 4)] {
            let d = datum(label);
            assert_eq!(d.fundamental_group().order(), order, "{label}");
            assert_eq!(d.omega_elements().len() as u64, order, "{label}");
        }
        assert_eq!(datum("D4").fundamental_group().invariants, vec![2, 2]);
        assert_eq!(datum("D5").fundamental_group().invariants, vec![4]);
    }

    #[test]
    fn omega_preserves_alcove() {
        for label in ["A3", "D4", "D6", "E6", "E7"] {
            let d = datum(label);
            for g in d.omega_elements() {
                let perm = g.vertex_permutation(&d).expect("vertices map to vertices");
                let mut sorted = perm.clone();
                sorted.sort();
                assert_eq!(sorted, (0..=d.rank()).collect::<Vec<_>>());
                // w·t_y reproduces the map
                let n = d.rank();
                let w = g.weyl_word.iter().fold(AffineMap::identity(n), |acc, &i| acc.compose(&d.reflection(i)));
                assert_eq!(w.compose(&AffineMap::translation(g.translation.clone())), g.map, "{label}");
            }
        }
    }

    #[test]
    fn omega_is_closed() {
        let d = datum("A4");
        let om = d.omega_elements();
        for a in &om {
            for b in &om {
                let c = a.map.compose(&b.map);
                assert!(om.iter().any(|g| g.map == c));
            }
        }
    }

    #[test]
    fn normalize_examples() {
        let d = datum("E8");
        let b = d.barycentre();
        let (p, w) = d.normalize_to_alcove(&b.coords);
        assert_eq!(p, b);
        assert!(w.is_empty());
        let mut x = vec![Rational::zero(); 8];
        x[0] = Rational::one();
        let (p, w) = d.normalize_to_alcove(&x);
        assert_eq!(p.coords, vec![Rational::zero(); 8]);
        assert_eq!(d.apply_affine_word(&w, &x), p.coords);
    }

    #[test]
    fn stabilizers() {
        let e7 = datum("E7");
        assert_eq!(e7.stabilizer(&e7.barycentre()).unwrap().len(), 2);
        let v0 = e7.vertices()[0].clone();
        assert_eq!(e7.stabilizer(&v0).unwrap().len(), 1);
        let a1 = datum("A1");
        let mid = AlcovePoint::new(vec![q_frac(1, 2)]);
        assert_eq!(a1.component_group_of_element(&mid).unwrap().len(), 2);
        let out = AlcovePoint::new(vec![q_frac(3, 2)]);
        assert_eq!(a1.stabilizer(&out), Err(Error::OutsideAlcove));
    }

    #[test]
    fn e8_kac_m2() {
        let d = datum("E8");
        let classes = d.kac_classes(2).unwrap();
        assert_eq!(classes.len(), 3);
        let types: Vec<String> = classes.iter().map(|c| c.fixed_type.to_string()).collect();
        assert!(types.contains(&"E8".to_string()));
        assert!(types.contains(&"D8".to_string()));
        assert!(types.contains(&"E7+A1".to_string()));
        for c in &classes {
            assert!(d.in_closed_alcove(&c.point.coords));
            assert_eq!(d.stabilizer(&c.point).unwrap().len(), 1);
        }
        for label in ["A3", "D5", "E6", "E7"] {
            assert_eq!(datum(label).kac_classes(1).unwrap().len(), 1);
        }
        // A1 involutions: only the midpoint survives the Ω quotient.
        assert_eq!(datum("A1").kac_classes(2).unwrap().len(), 2);
    }
}
