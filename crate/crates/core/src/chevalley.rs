//! The Lie algebra e8 over a field in a Chevalley basis with
//! Frenkel–Kac signs, the involution `dθ` of trace `-8`, and centraliser
//! dimensions.
//!
//! Basis: indices `0..8` are the simple coroots `h_i`, indices `8..248` the
//! root vectors `x_α` for the 240 roots of the standard realisation in `R^8`
//! (sorted by doubled coordinates).

use std::collections::{HashMap, VecDeque};
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::linalg::{rank, Matrix};
use crate::picard::{default_simple_system, enumerate_roots, Character, CharacterMode, LatticeVector, BOURBAKI_LABELS};
use crate::root_system::{self, DynkinType, Family, SimpleType};
use crate::scalar::{Field, Rational};

pub const DIM: usize = 248;
pub const RANK: usize = 8;

/// A root of E8 in `R^8`, stored with doubled coordinates so that
/// half-integral entries stay integral.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BourbakiRoot {
    pub doubled: [i64; 8],
}

impl BourbakiRoot {
    pub fn is_integral(&self) -> bool {
        self.doubled.iter().all(|c| c % 2 == 0)
    }

    /// Standard inner product.
    pub fn dot(&self, other: &Self) -> i64 {
        doubled_dot(&self.doubled, &other.doubled)
    }

    pub fn coordinates(&self) -> [Rational; 8] {
        self.doubled.map(|c| Rational::new(c.into(), 2.into()))
    }
}

fn doubled_dot(a: &[i64; 8], b: &[i64; 8]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum::<i64>() / 4
}

/// Bourbaki simple roots `α_1 … α_8` (doubled coordinates).
pub fn simple_roots() -> [[i64; 8]; 8] {
    let mut s = [[0i64; 8]; 8];
    s[0] = [1, -1, -1, -1, -1, -1, -1, 1];
    s[1] = [2, 2, 0, 0, 0, 0, 0, 0];
    for i in 2..8 {
        // α_i = e_{i-1} - e_{i-2} (1-based e's)
        s[i][i - 1] = 2;
        s[i][i - 2] = -2;
    }
    s
}

/// Structure data of e8: roots, simple coordinates and the bracket table.
pub struct E8 {
    roots: Vec<BourbakiRoot>,
    index: HashMap<[i64; 8], usize>,
    simple_coords: Vec<[i64; 8]>,
    /// `table[a][b]` lists `(basis index, coefficient)` of `[b_a, b_b]`.
    table: Vec<Vec<Vec<(usize, i64)>>>,
    to_bourbaki: [[i64; 8]; 8],
    from_bourbaki: [[i64; 8]; 8],
}

/// The shared instance.
pub fn e8() -> &'static E8 {
    static E: OnceLock<E8> = OnceLock::new();
    E.get_or_init(E8::build)
}

fn cartan() -> Vec<Vec<i64>> {
    SimpleType::new(Family::E, 8).expect("E8").cartan_matrix()
}

fn integer_inverse(a: &[Vec<i64>]) -> [[i64; 8]; 8] {
    let m = Matrix::from_fn(8, 8, |i, j| Rational::from_i64(a[i][j]));
    let mut out = [[0i64; 8]; 8];
    for col in 0..8 {
        let sys = Matrix::from_fn(8, 9, |i, j| {
            if j < 8 {
                m[(i, j)].clone()
            } else if i == col {
                Rational::from_i64(-1)
            } else {
                Rational::from_i64(0)
            }
        });
        let k = crate::exact::linalg::rref_kernel(&sys);
        let v = k.iter().find(|v| v[8] != Rational::from_i64(0)).expect("unimodular");
        for i in 0..8 {
            let x = v[i].clone() / v[8].clone();
            out[i][col] = i64::try_from(x.to_integer()).expect("small entries");
        }
    }
    out
}

impl E8 {
    fn build() -> Self {
        let mut roots = Vec::with_capacity(240);
        for i in 0..8 {
            for j in i + 1..8 {
                for si in [-2, 2] {
                    for sj in [-2, 2] {
                        let mut d = [0i64; 8];
                        d[i] = si;
                        d[j] = sj;
                        roots.push(BourbakiRoot { doubled: d });
                    }
                }
            }
        }
        for mask in 0u32..256 {
            if mask.count_ones() % 2 == 0 {
                let d = std::array::from_fn(|i| if mask >> i & 1 == 1 { -1 } else { 1 });
                roots.push(BourbakiRoot { doubled: d });
            }
        }
        roots.sort();
        let index: HashMap<[i64; 8], usize> = roots.iter().enumerate().map(|(i, r)| (r.doubled, i)).collect();

        let a = cartan();
        let ainv = integer_inverse(&a);
        let simple = simple_roots();
        let simple_coords: Vec<[i64; 8]> = roots
            .iter()
            .map(|r| {
                let p: Vec<i64> = simple.iter().map(|s| doubled_dot(&r.doubled, s)).collect();
                std::array::from_fn(|i| (0..8).map(|j| ainv[i][j] * p[j]).sum())
            })
            .collect();

        let eps_exp = |n: &[i64; 8], m: &[i64; 8]| -> i64 {
            let mut s = 0;
            for i in 0..8 {
                if n[i] == 0 {
                    continue;
                }
                for j in 0..=i {
                    let c = if i == j { 1 } else { a[i][j] };
                    s += n[i] * m[j] * c;
                }
            }
            s
        };
        let eps = |x: usize, y: usize| -> i64 {
            if eps_exp(&simple_coords[x], &simple_coords[y]).rem_euclid(2) == 0 { 1 } else { -1 }
        };

        let mut table = vec![vec![Vec::new(); DIM]; DIM];
        for x in 0..240 {
            let nx = &simple_coords[x];
            for i in 0..RANK {
                // [h_i, x_α] = ⟨α, α_i⟩ x_α
                let c: i64 = (0..8).map(|j| nx[j] * a[j][i]).sum();
                if c != 0 {
                    table[i][RANK + x].push((RANK + x, c));
                    table[RANK + x][i].push((RANK + x, -c));
                }
            }
            for y in 0..240 {
                let mut sum = [0i64; 8];
                for k in 0..8 {
                    sum[k] = roots[x].doubled[k] + roots[y].doubled[k];
                }
                if sum.iter().all(|&c| c == 0) {
                    let e = eps(x, y);
                    for (i, &c) in nx.iter().enumerate() {
                        if c != 0 {
                            table[RANK + x][RANK + y].push((i, e * c));
                        }
                    }
                } else if let Some(&z) = index.get(&sum) {
                    table[RANK + x][RANK + y].push((RANK + z, eps(x, y)));
                }
            }
        }

        let to_bourbaki = picard_to_bourbaki(&a);
        let from_bourbaki = integer_inverse(&to_bourbaki.iter().map(|r| r.to_vec()).collect::<Vec<_>>());
        Self { roots, index, simple_coords, table, to_bourbaki, from_bourbaki }
    }

    pub fn roots(&self) -> &[BourbakiRoot] {
        &self.roots
    }

    pub fn root_index(&self, doubled: &[i64; 8]) -> Option<usize> {
        self.index.get(doubled).copied()
    }

    /// Coefficients of root `i` in the simple roots.
    pub fn simple_coordinates(&self, i: usize) -> [i64; 8] {
        self.simple_coords[i]
    }

    /// Basis index of `x_α` for root number `i`.
    pub fn root_basis_index(i: usize) -> usize {
        RANK + i
    }

    /// `ε(α,β) = ±1` for roots numbered `i`, `j`.
    pub fn epsilon(&self, i: usize, j: usize) -> i64 {
        let a = cartan();
        let (n, m) = (&self.simple_coords[i], &self.simple_coords[j]);
        let mut s = 0;
        for p in 0..8 {
            for q in 0..=p {
                s += n[p] * m[q] * if p == q { 1 } else { a[p][q] };
            }
        }
        if s.rem_euclid(2) == 0 { 1 } else { -1 }
    }

    /// `[b_a, b_b]` for basis vectors as sparse integer coefficients.
    pub fn basis_bracket(&self, a: usize, b: usize) -> &[(usize, i64)] {
        &self.table[a][b]
    }

    pub fn bracket<F: Field>(&self, x: &LieVector<F>, y: &LieVector<F>) -> LieVector<F> {
        let mut out = vec![F::zero(); DIM];
        let xs: Vec<(usize, &F)> = x.support().collect();
        let ys: Vec<(usize, &F)> = y.support().collect();
        for &(a, xa) in &xs {
            for &(b, yb) in &ys {
                let entries = &self.table[a][b];
                if entries.is_empty() {
                    continue;
                }
                let p = xa.clone() * yb.clone();
                for &(k, c) in entries {
                    out[k] = out[k].clone() + p.clone() * F::from_i64(c);
                }
            }
        }
        LieVector { coords: out }
    }

    /// Sparse bracket on integer vectors.
    fn sparse_bracket(&self, x: &[(usize, i64)], y: &[(usize, i64)]) -> Vec<(usize, i64)> {
        let mut acc: Vec<(usize, i64)> = Vec::new();
        for &(a, xa) in x {
            for &(b, yb) in y {
                for &(k, c) in &self.table[a][b] {
                    acc.push((k, xa * yb * c));
                }
            }
        }
        acc.sort_unstable_by_key(|p| p.0);
        let mut out: Vec<(usize, i64)> = Vec::with_capacity(acc.len());
        for (k, c) in acc {
            match out.last_mut() {
                Some(last) if last.0 == k => last.1 += c,
                _ => out.push((k, c)),
            }
        }
        out.retain(|p| p.1 != 0);
        out
    }

    fn jacobiator_vanishes(&self, a: usize, b: usize, c: usize) -> bool {
        let one = |i: usize| vec![(i, 1i64)];
        let t1 = self.sparse_bracket(&one(a), self.basis_bracket(b, c));
        let t2 = self.sparse_bracket(&one(b), self.basis_bracket(c, a));
        let t3 = self.sparse_bracket(&one(c), self.basis_bracket(a, b));
        let mut sum: HashMap<usize, i64> = HashMap::new();
        for (k, v) in t1.into_iter().chain(t2).chain(t3) {
            *sum.entry(k).or_default() += v;
        }
        sum.values().all(|&v| v == 0)
    }

    /// Checks the Jacobi identity on basis triples.
    pub fn jacobi_check(&self, mode: JacobiMode) -> Result<JacobiReport> {
        let failing = match mode {
            JacobiMode::Full => (0..DIM).into_par_iter().find_map_any(|a| {
                for b in a + 1..DIM {
                    for c in b + 1..DIM {
                        if !self.jacobiator_vanishes(a, b, c) {
                            return Some((a, b, c));
                        }
                    }
                }
                None
            }),
            JacobiMode::Sampled { count, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                (0..count)
                    .map(|_| (rng.gen_range(0..DIM), rng.gen_range(0..DIM), rng.gen_range(0..DIM)))
                    .find(|&(a, b, c)| !self.jacobiator_vanishes(a, b, c))
            }
        };
        if let Some((a, b, c)) = failing {
            return Err(Error::JacobiViolation(a, b, c));
        }
        let triples = match mode {
            JacobiMode::Full => (DIM * (DIM - 1) * (DIM - 2) / 6) as u64,
            JacobiMode::Sampled { count, .. } => count as u64,
        };
        Ok(JacobiReport { triples_checked: triples, violations: 0 })
    }

    /// Eigenvalue of `dθ` on basis vector `k`.
    pub fn theta_sign(&self, k: usize) -> i64 {
        if k < RANK || self.roots[k - RANK].is_integral() { 1 } else { -1 }
    }

    pub fn theta_map<F: Field>(&self, x: &LieVector<F>) -> LieVector<F> {
        let coords = x.coords.iter().enumerate().map(|(k, c)| if self.theta_sign(k) == 1 { c.clone() } else { -c.clone() }).collect();
        LieVector { coords }
    }

    pub fn theta_trace(&self) -> i64 {
        (0..DIM).map(|k| self.theta_sign(k)).sum()
    }

    /// Dimensions of the `+1` and `-1` eigenspaces of `dθ`.
    pub fn theta_eigenspace_dims(&self) -> (usize, usize) {
        let plus = (0..DIM).filter(|&k| self.theta_sign(k) == 1).count();
        (plus, DIM - plus)
    }

    /// `θ[b_a, b_b] = [θ b_a, θ b_b]` on every pair of basis vectors.
    pub fn theta_is_automorphism(&self) -> bool {
        (0..DIM).into_par_iter().all(|a| {
            (0..DIM).all(|b| {
                let s = self.theta_sign(a) * self.theta_sign(b);
                self.table[a][b].iter().all(|&(k, _)| self.theta_sign(k) == s)
            })
        })
    }

    /// Dynkin type of the roots fixed by `θ`.
    pub fn fixed_subalgebra_type(&self) -> Result<DynkinType> {
        let fixed: Vec<Vec<i64>> = self.roots.iter().filter(|r| r.is_integral()).map(|r| r.doubled.to_vec()).collect();
        root_system::classify(&fixed, |x, y| x.iter().zip(y).map(|(a, b)| a * b).sum::<i64>() / 4)
    }

    /// Matrix of `ad x` (column `j` is `[x, b_j]`).
    pub fn ad_matrix<F: Field>(&self, x: &LieVector<F>) -> Matrix<F> {
        let mut m: Matrix<F> = Matrix::zeros(DIM, DIM);
        for (a, xa) in x.support() {
            for b in 0..DIM {
                for &(k, c) in &self.table[a][b] {
                    m[(k, b)] = m[(k, b)].clone() + xa.clone() * F::from_i64(c);
                }
            }
        }
        m
    }

    /// `dim ker(ad x)`.
    pub fn centralizer_dim<F: Field>(&self, x: &LieVector<F>) -> usize {
        DIM - rank(&self.ad_matrix(x))
    }

    /// Image of a vector of `Λ` in the doubled coordinates of `R^8`.
    pub fn to_bourbaki(&self, v: &LatticeVector) -> Result<[i64; 8]> {
        let n = default_simple_system().coordinates(v)?;
        let m: [i64; 8] = std::array::from_fn(|i| (0..8).map(|j| self.to_bourbaki[i][j] * n[j]).sum());
        let simple = simple_roots();
        Ok(std::array::from_fn(|k| (0..8).map(|i| m[i] * simple[i][k]).sum()))
    }

    /// Inverse of [`E8::to_bourbaki`] on root number `i`.
    pub fn root_to_picard(&self, i: usize) -> LatticeVector {
        let m = self.simple_coords[i];
        let n: [i64; 8] = std::array::from_fn(|a| (0..8).map(|b| self.from_bourbaki[a][b] * m[b]).sum());
        default_simple_system().vector(&n)
    }

    /// The Cartan element `t` with `α(t) = x(α)` for an additive character
    /// `x` transported along the isometry.
    pub fn cartan_element(&self, chi: &Character) -> Result<LieVector<Rational>> {
        if chi.mode() != CharacterMode::Additive {
            return Err(Error::ModeMismatch);
        }
        let a = cartan();
        let ainv = integer_inverse(&a);
        let simple_vals: Vec<Rational> = (0..8)
            .map(|j| {
                let mut e = [0i64; 8];
                e[j] = 1;
                let n: [i64; 8] = std::array::from_fn(|p| (0..8).map(|b| self.from_bourbaki[p][b] * e[b]).sum());
                chi.eval(&default_simple_system().vector(&n))
            })
            .collect::<Result<_>>()?;
        let mut coords = vec![Rational::from_i64(0); DIM];
        for (i, c) in coords.iter_mut().take(RANK).enumerate() {
            *c = (0..8).fold(Rational::from_i64(0), |acc, j| acc + simple_vals[j].clone() * Rational::from_i64(ainv[i][j]));
        }
        Ok(LieVector { coords })
    }
}

/// Picard simple coordinates to Bourbaki simple coordinates: relabel the
/// diagram, then apply a Weyl element moving the `c_l`-parity functional
/// to the integrality functional.
fn picard_to_bourbaki(a: &[Vec<i64>]) -> [[i64; 8]; 8] {
    let mut relabel = [[0i64; 8]; 8];
    for (i, &lab) in BOURBAKI_LABELS.iter().enumerate() {
        relabel[lab - 1][i] = 1;
    }
    // c_l is the coefficient of the last Picard simple root, i.e. of α_2
    // after relabelling, and integrality is parity of the α_1 coefficient.
    // A root's α_j-coefficient is ⟨α, ω_j⟩; find w with w⁻¹ω_1 ≡ ω_2 mod 2.
    let reflect_weight = |w: [i64; 8], i: usize| -> [i64; 8] {
        // weights in fundamental-weight coordinates: s_i(λ) = λ - λ_i α_i
        let mut out = w;
        for j in 0..8 {
            out[j] = (out[j] - w[i] * a[i][j]).rem_euclid(2);
        }
        out
    };
    let start = { let mut e = [0i64; 8]; e[0] = 1; e };
    let target = { let mut e = [0i64; 8]; e[1] = 1; e };
    let mut prev: HashMap<[i64; 8], ([i64; 8], usize)> = HashMap::new();
    let mut queue = VecDeque::from([start]);
    prev.insert(start, (start, usize::MAX));
    while let Some(w) = queue.pop_front() {
        if w == target {
            break;
        }
        for i in 0..8 {
            let n = reflect_weight(w, i);
            if !prev.contains_key(&n) {
                prev.insert(n, (w, i));
                queue.push_back(n);
            }
        }
    }
    // path: target = s_{ik} … s_{i1} start, so w⁻¹ = s_{ik} … s_{i1} and
    // w = s_{i1} … s_{ik}.
    let mut path = Vec::new();
    let mut cur = target;
    while cur != start {
        let (p, i) = prev[&cur];
        path.push(i);
        cur = p;
    }
    path.reverse();
    // Reflection on simple-root coordinates: s_i(n)_i -= Σ_j n_j A_ji.
    let mut m = relabel;
    for &i in path.iter().rev() {
        for col in 0..8 {
            let pairing: i64 = (0..8).map(|j| m[j][col] * a[j][i]).sum();
            m[i][col] -= pairing;
        }
    }
    m
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JacobiMode {
    Full,
    Sampled { count: usize, seed: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct JacobiReport {
    pub triples_checked: u64,
    pub violations: u64,
}

/// An element of e8 in the Chevalley basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieVector<F> {
    pub coords: Vec<F>,
}

impl<F: Field> LieVector<F> {
    pub fn zero() -> Self {
        Self { coords: vec![F::zero(); DIM] }
    }

    pub fn basis(k: usize) -> Self {
        let mut v = Self::zero();
        v.coords[k] = F::one();
        v
    }

    /// Cartan element with the given coroot coordinates.
    pub fn cartan(h: &[F; 8]) -> Self {
        let mut v = Self::zero();
        v.coords[..RANK].clone_from_slice(h);
        v
    }

    pub fn support(&self) -> impl Iterator<Item = (usize, &F)> {
        self.coords.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        Self { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a.clone() + b.clone()).collect() }
    }

    pub fn scale(&self, c: &F) -> Self {
        Self { coords: self.coords.iter().map(|a| a.clone() * c.clone()).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }
}

/// Roots of `Λ` in the Picard basis whose images are integral.
pub fn picard_fixed_roots() -> Vec<LatticeVector> {
    let e = e8();
    enumerate_roots()
        .iter()
        .filter(|r| e.to_bourbaki(r).map(|d| d.iter().all(|c| c % 2 == 0)).unwrap_or(false))
        .copied()
        .collect()
}
