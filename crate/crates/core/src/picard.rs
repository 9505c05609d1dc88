//! The Picard lattice `Z l ⊕ Z e1 ⊕ … ⊕ Z e8` of the blow-up of the plane in
//! eight points, with `⟨l,l⟩ = 1`, `⟨e_i,e_i⟩ = -1`, the E8 lattice
//! `Λ = K_S^⊥`, its roots, Weyl reflections and characters.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::linalg::{rref_kernel, Matrix};
use crate::root_system::{self, DynkinType};
use crate::scalar::{Field, Rational};

/// Integer vector in the basis `{l, e1, …, e8}`; index 0 is `l`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVector {
    pub coords: [i64; 9],
}

impl LatticeVector {
    pub const fn new(coords: [i64; 9]) -> Self {
        Self { coords }
    }

    pub fn zero() -> Self {
        Self { coords: [0; 9] }
    }

    /// The class of a line.
    pub fn l() -> Self {
        let mut c = [0; 9];
        c[0] = 1;
        Self { coords: c }
    }

    /// Exceptional class `e_i`, `i` in `1..=8`.
    pub fn e(i: usize) -> Self {
        assert!((1..=8).contains(&i), "exceptional index {i} out of range");
        let mut c = [0; 9];
        c[i] = 1;
        Self { coords: c }
    }

    /// `K_S = -3l + e1 + … + e8`.
    pub fn canonical_class() -> Self {
        Self { coords: [-3, 1, 1, 1, 1, 1, 1, 1, 1] }
    }

    pub fn c_l(&self) -> i64 {
        self.coords[0]
    }

    /// Coefficient of `e_i`.
    pub fn c_e(&self, i: usize) -> i64 {
        self.coords[i]
    }

    pub fn inner(&self, other: &Self) -> i64 {
        inner_product(self, other)
    }

    pub fn in_lambda(&self) -> bool {
        self.inner(&Self::canonical_class()) == 0
    }

    pub fn is_root(&self) -> bool {
        self.in_lambda() && self.inner(self) == -2
    }

    /// `s_α(x) = x + ⟨x,α⟩α` for a root `α`.
    pub fn reflect(&self, root: &Self) -> Self {
        *self + *root * self.inner(root)
    }
}

/// The intersection pairing: signature `(1, 8)`.
pub fn inner_product(x: &LatticeVector, y: &LatticeVector) -> i64 {
    x.coords[0] * y.coords[0] - (1..9).map(|i| x.coords[i] * y.coords[i]).sum::<i64>()
}

impl Add for LatticeVector {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let mut c = self.coords;
        for (a, b) in c.iter_mut().zip(rhs.coords) {
            *a += b;
        }
        Self { coords: c }
    }
}

impl Sub for LatticeVector {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for LatticeVector {
    type Output = Self;
    fn neg(self) -> Self {
        Self { coords: self.coords.map(|x| -x) }
    }
}

impl Mul<i64> for LatticeVector {
    type Output = Self;
    fn mul(self, k: i64) -> Self {
        Self { coords: self.coords.map(|x| x * k) }
    }
}

impl fmt::Debug for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        let term = |c: i64, name: String| match c {
            0 => None,
            1 => Some(format!("+{name}")),
            -1 => Some(format!("-{name}")),
            c if c > 0 => Some(format!("+{c}{name}")),
            c => Some(format!("{c}{name}")),
        };
        parts.extend(term(self.coords[0], "l".into()));
        for i in 1..9 {
            parts.extend(term(self.coords[i], format!("e{i}")));
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        let s = parts.concat();
        write!(f, "{}", s.strip_prefix('+').unwrap_or(&s))
    }
}

struct RootTable {
    roots: Vec<LatticeVector>,
    index: HashMap<LatticeVector, usize>,
    /// Coordinates of each root in the default simple system.
    simple_coords: Vec<[i64; 8]>,
}

fn root_table() -> &'static RootTable {
    static TABLE: OnceLock<RootTable> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut roots = Vec::with_capacity(240);
        let idx: Vec<usize> = (1..=8).collect();
        // e_i - e_j
        for &i in &idx {
            for &j in &idx {
                if i != j {
                    roots.push(LatticeVector::e(i) - LatticeVector::e(j));
                }
            }
        }
        // ±(l - e_i - e_j - e_k) and ±(2l - six e's) (complement of a pair)
        for i in 1..=8 {
            for j in i + 1..=8 {
                for k in j + 1..=8 {
                    let r = LatticeVector::l() - LatticeVector::e(i) - LatticeVector::e(j) - LatticeVector::e(k);
                    roots.push(r);
                    roots.push(-r);
                }
                let mut r = LatticeVector::l() * 2;
                for m in 1..=8 {
                    if m != i && m != j {
                        r = r - LatticeVector::e(m);
                    }
                }
                roots.push(r);
                roots.push(-r);
            }
        }
        // ±(3l - all e's - e_i)
        for i in 1..=8 {
            let mut r = LatticeVector::l() * 3 - LatticeVector::e(i);
            for m in 1..=8 {
                r = r - LatticeVector::e(m);
            }
            roots.push(r);
            roots.push(-r);
        }
        roots.sort();
        let index = roots.iter().enumerate().map(|(i, r)| (*r, i)).collect();
        let simple = default_simple_system();
        let simple_coords = roots.iter().map(|r| simple.coordinates(r).expect("roots lie in Λ")).collect();
        RootTable { roots, index, simple_coords }
    })
}

/// The 240 roots of `Λ`, sorted lexicographically by coordinates.
pub fn enumerate_roots() -> &'static [LatticeVector] {
    &root_table().roots
}

/// Position of a root in [`enumerate_roots`].
pub fn root_index(v: &LatticeVector) -> Option<usize> {
    root_table().index.get(v).copied()
}

/// Applies the Weyl word `s_{w0} s_{w1} … s_{wk}` to `x` (rightmost letter
/// first). Letters index [`enumerate_roots`].
pub fn reflect_word(word: &[usize], x: &LatticeVector) -> Result<LatticeVector> {
    let roots = enumerate_roots();
    let mut v = *x;
    for &i in word.iter().rev() {
        let r = roots.get(i).ok_or(Error::BadRootIndex(i))?;
        v = v.reflect(r);
    }
    Ok(v)
}

/// Dynkin type of a set of roots of `Λ`.
pub fn dynkin_type(roots: &[LatticeVector]) -> Result<DynkinType> {
    let vecs: Vec<Vec<i64>> = roots.iter().map(|r| r.coords.to_vec()).collect();
    let neg_form = |x: &[i64], y: &[i64]| -(x[0] * y[0] - (1..9).map(|i| x[i] * y[i]).sum::<i64>());
    root_system::classify(&vecs, neg_form)
}

/// The default simple system, built once.
pub fn default_simple_system() -> &'static SimpleSystem {
    static S: OnceLock<SimpleSystem> = OnceLock::new();
    S.get_or_init(SimpleSystem::default)
}

/// Bourbaki node label (1-based) of each default simple root.
pub const BOURBAKI_LABELS: [usize; 8] = [1, 3, 4, 5, 6, 7, 8, 2];

/// An ordered simple system of `Λ` with the inverse of its Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleSystem {
    roots: [LatticeVector; 8],
    gram_inv: [[i64; 8]; 8],
}

impl Default for SimpleSystem {
    /// `e_i - e_{i+1}` for `i = 1..7`, then `l - e1 - e2 - e3`.
    fn default() -> Self {
        let mut roots = [LatticeVector::zero(); 8];
        for i in 1..=7 {
            roots[i - 1] = LatticeVector::e(i) - LatticeVector::e(i + 1);
        }
        roots[7] = LatticeVector::l() - LatticeVector::e(1) - LatticeVector::e(2) - LatticeVector::e(3);
        Self::new(roots).expect("default simple system is valid")
    }
}

impl SimpleSystem {
    /// Validates that the vectors are roots whose Cartan matrix is of type E8.
    pub fn new(roots: [LatticeVector; 8]) -> Result<Self> {
        if let Some(r) = roots.iter().find(|r| !r.is_root()) {
            return Err(Error::InvalidInput(format!("{r} is not a root")));
        }
        let cartan: Vec<Vec<i64>> =
            (0..8).map(|i| (0..8).map(|j| -roots[i].inner(&roots[j])).collect()).collect();
        let diagram = diagram_type(&cartan)?;
        if diagram.to_string() != "E8" {
            return Err(Error::InvalidInput(format!("simple system has diagram {diagram}, not E8")));
        }
        let gram = Matrix::from_fn(8, 8, |i, j| Rational::from_i64(roots[i].inner(&roots[j])));
        // Inverse via the kernel of [G | I]: solve G X = I column by column.
        let mut gram_inv = [[0i64; 8]; 8];
        for col in 0..8 {
            let mut sys = Matrix::zeros(8, 9);
            for i in 0..8 {
                for j in 0..8 {
                    sys[(i, j)] = gram[(i, j)].clone();
                }
                sys[(i, 8)] = if i == col { -Rational::one() } else { Rational::zero() };
            }
            let k = rref_kernel(&sys);
            let v = k.iter().find(|v| !v[8].is_zero()).ok_or(Error::Internal("singular Gram matrix".into()))?;
            for i in 0..8 {
                let x = v[i].clone() / v[8].clone();
                if !x.is_integer() {
                    return Err(Error::Internal("Gram matrix is not unimodular".into()));
                }
                gram_inv[i][col] = x.to_integer().try_into().map_err(|_| Error::Internal("overflow".into()))?;
            }
        }
        Ok(Self { roots, gram_inv })
    }

    pub fn roots(&self) -> &[LatticeVector; 8] {
        &self.roots
    }

    /// Cartan matrix `-⟨β_i, β_j⟩` in this system's order.
    pub fn cartan_matrix(&self) -> [[i64; 8]; 8] {
        let mut a = [[0; 8]; 8];
        for i in 0..8 {
            for j in 0..8 {
                a[i][j] = -self.roots[i].inner(&self.roots[j]);
            }
        }
        a
    }

    /// Integer coordinates of `v ∈ Λ` in this simple system.
    pub fn coordinates(&self, v: &LatticeVector) -> Result<[i64; 8]> {
        if !v.in_lambda() {
            return Err(Error::NotInLattice);
        }
        let p: Vec<i64> = self.roots.iter().map(|b| v.inner(b)).collect();
        let mut n = [0i64; 8];
        for (i, ni) in n.iter_mut().enumerate() {
            *ni = (0..8).map(|j| self.gram_inv[i][j] * p[j]).sum();
        }
        Ok(n)
    }

    pub fn vector(&self, coords: &[i64; 8]) -> LatticeVector {
        self.roots.iter().zip(coords).fold(LatticeVector::zero(), |acc, (b, &c)| acc + *b * c)
    }
}

fn diagram_type(cartan: &[Vec<i64>]) -> Result<DynkinType> {
    // Generate the root system of the diagram and classify it.
    let n = cartan.len();
    let pair = |c: &[i64], j: usize| -> i64 { (0..n).map(|i| c[i] * cartan[i][j]).sum() };
    let mut roots: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut e = vec![0; n];
            e[i] = 1;
            e
        })
        .collect();
    let mut k = 0;
    while k < roots.len() && roots.len() < 1000 {
        let r = roots[k].clone();
        for j in 0..n {
            if pair(&r, j) == -1 {
                let mut s = r.clone();
                s[j] += 1;
                if !roots.contains(&s) {
                    roots.push(s);
                }
            }
        }
        k += 1;
    }
    let mut all = roots.clone();
    all.extend(roots.iter().map(|r| r.iter().map(|x| -x).collect::<Vec<_>>()));
    root_system::classify(&all, root_system::cartan_form(cartan))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CharacterMode {
    /// A point of the torus `Hom(Λ, G_m)`.
    Multiplicative,
    /// A point of the Cartan algebra `Hom(Λ, G_a)`.
    Additive,
}

/// A homomorphism `Λ → G_m` or `Λ → G_a`, stored by its values on the
/// default simple system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    mode: CharacterMode,
    values: [Rational; 8],
}

impl Character {
    pub fn new(mode: CharacterMode, values: [Rational; 8]) -> Result<Self> {
        if mode == CharacterMode::Multiplicative && values.iter().any(Zero::is_zero) {
            return Err(Error::InvalidInput("multiplicative character takes nonzero values".into()));
        }
        Ok(Self { mode, values })
    }

    pub fn multiplicative(values: [Rational; 8]) -> Result<Self> {
        Self::new(CharacterMode::Multiplicative, values)
    }

    pub fn additive(values: [Rational; 8]) -> Self {
        Self { mode: CharacterMode::Additive, values }
    }

    pub fn mode(&self) -> CharacterMode {
        self.mode
    }

    pub fn values(&self) -> &[Rational; 8] {
        &self.values
    }

    fn identity(&self) -> Rational {
        match self.mode {
            CharacterMode::Multiplicative => Rational::one(),
            CharacterMode::Additive => Rational::zero(),
        }
    }

    fn eval_coords(&self, n: &[i64; 8]) -> Rational {
        match self.mode {
            CharacterMode::Multiplicative => {
                n.iter().zip(&self.values).fold(Rational::one(), |acc, (&k, x)| acc * x.pow_i(k))
            }
            CharacterMode::Additive => n
                .iter()
                .zip(&self.values)
                .fold(Rational::zero(), |acc, (&k, x)| acc + x * Rational::from_i64(k)),
        }
    }

    /// Value on a lattice vector of `Λ`.
    pub fn eval(&self, v: &LatticeVector) -> Result<Rational> {
        let n = default_simple_system().coordinates(v)?;
        Ok(self.eval_coords(&n))
    }

    /// Values on [`enumerate_roots`], in that order.
    pub fn root_values(&self) -> Vec<Rational> {
        root_table().simple_coords.iter().map(|n| self.eval_coords(n)).collect()
    }

    /// Roots on whose hyperplane the character lies.
    pub fn root_hyperplanes(&self) -> Vec<LatticeVector> {
        let id = self.identity();
        enumerate_roots().iter().zip(self.root_values()).filter(|(_, v)| *v == id).map(|(r, _)| *r).collect()
    }

    pub fn is_regular_semisimple(&self) -> bool {
        let id = self.identity();
        self.root_values().iter().all(|v| *v != id)
    }

    /// `∏(χ(α) - 1)` or `∏ x(α)` over all 240 roots.
    pub fn discriminant(&self) -> Rational {
        let id = self.identity();
        self.root_values().into_iter().fold(Rational::one(), |acc, v| acc * (v - id.clone()))
    }

    /// Sorted multiset `{χ(α) : α ∈ Φ}`.
    pub fn root_value_multiset(&self) -> Vec<Rational> {
        let mut v = self.root_values();
        v.sort();
        v
    }

    /// The character `v ↦ χ(w v)` for the Weyl word `w` (letters index
    /// [`enumerate_roots`], rightmost applied first).
    pub fn precompose(&self, word: &[usize]) -> Result<Self> {
        let simple = default_simple_system();
        let mut values = self.values.clone();
        for (i, b) in simple.roots().iter().enumerate() {
            values[i] = self.eval(&reflect_word(word, b)?)?;
        }
        Ok(Self { mode: self.mode, values })
    }

    /// Multiplies an additive character by a scalar.
    pub fn scaled(&self, c: &Rational) -> Result<Self> {
        if self.mode != CharacterMode::Additive {
            return Err(Error::InvalidInput("only additive characters scale linearly".into()));
        }
        Ok(Self { mode: self.mode, values: self.values.clone().map(|v| v * c.clone()) })
    }

    /// Solves for the value on simple root `k` that puts the character on
    /// the hyperplane of `root`; requires the coefficient of simple root
    /// `k` in `root` to be ±1.
    pub fn place_on_hyperplane(&self, root: &LatticeVector, k: usize) -> Result<Self> {
        let n = default_simple_system().coordinates(root)?;
        if n[k].abs() != 1 {
            return Err(Error::InvalidInput(format!("simple root {k} has coefficient {} in {root}", n[k])));
        }
        let mut rest = n;
        rest[k] = 0;
        let others = self.eval_coords(&rest);
        let mut values = self.values.clone();
        values[k] = match self.mode {
            CharacterMode::Multiplicative => {
                if others.is_zero() {
                    return Err(Error::Internal("zero value in multiplicative character".into()));
                }
                others.inv().pow_i(n[k])
            }
            CharacterMode::Additive => -others * Rational::from_i64(n[k]),
        };
        Self::new(self.mode, values)
    }
}

/// Evaluates an arbitrary vector of the full Picard lattice against point
/// data: `λ^{c_l} ∏ u_i^{c_i}` (multiplicative) or `c_l μ + Σ c_i m_i`
/// (additive). On `Λ` this is the character of a point configuration.
pub fn configuration_value(mode: CharacterMode, line: &Rational, params: &[Rational; 8], v: &LatticeVector) -> Rational {
    match mode {
        CharacterMode::Multiplicative => {
            (1..9).fold(line.pow_i(v.coords[0]), |acc, i| acc * params[i - 1].pow_i(v.coords[i]))
        }
        CharacterMode::Additive => (1..9).fold(line * Rational::from_i64(v.coords[0]), |acc, i| {
            acc + &params[i - 1] * Rational::from_i64(v.coords[i])
        }),
    }
}
