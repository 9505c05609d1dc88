//! `V = Λ/2Λ` with its quadratic form, symplectic pairing, the map
//! `γ: V → V∨`, and the central extension `Ṽ` of `V` by `{±1}`.

use std::fmt;
use std::ops::Add;
use std::sync::OnceLock;

use crate::error::Result;
use crate::picard::{default_simple_system, LatticeVector};

fn gram() -> &'static [[i64; 8]; 8] {
    static G: OnceLock<[[i64; 8]; 8]> = OnceLock::new();
    G.get_or_init(|| {
        let b = default_simple_system().roots();
        let mut g = [[0; 8]; 8];
        for i in 0..8 {
            for j in 0..8 {
                g[i][j] = b[i].inner(&b[j]);
            }
        }
        g
    })
}

/// An element of `Λ/2Λ`, bit `i` being the coordinate on simple root `i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct TwoTorsionVector(pub u8);

impl TwoTorsionVector {
    pub fn zero() -> Self {
        Self(0)
    }

    pub fn basis(i: usize) -> Self {
        Self(1 << i)
    }

    pub fn bit(&self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    /// Reduction of a lattice vector of `Λ` modulo 2.
    pub fn reduce(v: &LatticeVector) -> Result<Self> {
        let n = default_simple_system().coordinates(v)?;
        Ok(Self(n.iter().enumerate().fold(0u8, |acc, (i, c)| acc | ((c.rem_euclid(2) as u8) << i))))
    }

    /// The lift with coordinates in `{0, 1}`.
    pub fn lift(&self) -> LatticeVector {
        let mut c = [0; 8];
        for (i, ci) in c.iter_mut().enumerate() {
            *ci = self.bit(i) as i64;
        }
        default_simple_system().vector(&c)
    }

    pub fn all() -> impl Iterator<Item = Self> {
        (0..=255u8).map(Self)
    }
}

impl Add for TwoTorsionVector {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self(self.0 ^ rhs.0)
    }
}

impl fmt::Debug for TwoTorsionVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "V[{:08b}]", self.0.reverse_bits())
    }
}

/// Half the norm of any lift, modulo 2.
pub fn qform_lift(v: &LatticeVector) -> u8 {
    (v.inner(v) / 2).rem_euclid(2) as u8
}

/// `q(v) = ⟨v′,v′⟩/2 mod 2`.
pub fn qform(v: TwoTorsionVector) -> u8 {
    qform_lift(&v.lift())
}

/// The alternating pairing `⟨v,w⟩ mod 2`.
pub fn pairing2(v: TwoTorsionVector, w: TwoTorsionVector) -> u8 {
    let g = gram();
    let mut s = 0i64;
    for i in 0..8 {
        for j in 0..8 {
            if v.bit(i) && w.bit(j) {
                s += g[i][j];
            }
        }
    }
    s.rem_euclid(2) as u8
}

/// Rank over `F_2` of the reduced Gram matrix, i.e. of `γ: V → V∨`.
pub fn gamma_rank() -> usize {
    let g = gram();
    let mut rows: Vec<u8> = (0..8)
        .map(|i| (0..8).fold(0u8, |acc, j| acc | ((g[i][j].rem_euclid(2) as u8) << j)))
        .collect();
    let mut rank = 0;
    for bit in 0..8 {
        if let Some(p) = (rank..rows.len()).find(|&r| rows[r] >> bit & 1 == 1) {
            rows.swap(rank, p);
            let pivot = rows[rank];
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && *row >> bit & 1 == 1 {
                    *row ^= pivot;
                }
            }
            rank += 1;
        }
    }
    rank
}

/// Elements `v` with `γ(v) = 0`.
pub fn gamma_kernel() -> Vec<TwoTorsionVector> {
    TwoTorsionVector::all().filter(|&v| TwoTorsionVector::all().all(|w| pairing2(v, w) == 0)).collect()
}

/// Cocycle sign exponent `c(v,w)` with `c(b_i,b_j) = ⟨b_i,b_j⟩` for `i > j`,
/// `0` for `i < j` and `q(b_i)` on the diagonal.
fn cocycle(v: TwoTorsionVector, w: TwoTorsionVector, diagonal: bool) -> u8 {
    let g = gram();
    let mut s = 0i64;
    for i in 0..8 {
        if !v.bit(i) {
            continue;
        }
        for j in 0..=i {
            if w.bit(j) {
                s += if i == j {
                    if diagonal { (g[i][i] / 2).rem_euclid(2) } else { 0 }
                } else {
                    g[i][j]
                };
            }
        }
    }
    s.rem_euclid(2) as u8
}

/// An element `(±1, v)` of the extension `1 → {±1} → Ṽ → V → 0`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct TildeElement {
    pub negative: bool,
    pub v: TwoTorsionVector,
}

impl TildeElement {
    pub fn new(sign: i8, v: TwoTorsionVector) -> Self {
        Self { negative: sign < 0, v }
    }

    pub fn identity() -> Self {
        Self::new(1, TwoTorsionVector::zero())
    }

    pub fn sign(&self) -> i8 {
        if self.negative { -1 } else { 1 }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let flip = cocycle(self.v, other.v, true) == 1;
        Self { negative: self.negative ^ other.negative ^ flip, v: self.v + other.v }
    }

    pub fn inverse(&self) -> Self {
        // (s, v)^{-1} = (s · c(v,v), v)
        let flip = cocycle(self.v, self.v, true) == 1;
        Self { negative: self.negative ^ flip, v: self.v }
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).mul(&self.inverse()).mul(&other.inverse())
    }

    /// `χ_q(ẽ) = ẽ² (−1)^{q(v)}`; `ẽ²` is central, read off as a sign.
    pub fn chi_q(&self) -> i8 {
        let sq = self.square();
        debug_assert_eq!(sq.v, TwoTorsionVector::zero());
        sq.sign() * if qform(self.v) == 1 { -1 } else { 1 }
    }

    pub fn all() -> impl Iterator<Item = Self> {
        TwoTorsionVector::all().flat_map(|v| [Self::new(1, v), Self::new(-1, v)])
    }
}

/// An element `(ζ, v)` of the extension of `V` by `μ4 = {i^k}` built from
/// the cocycle with trivial diagonal. It contains a copy of `Ṽ` as the
/// kernel of `χ_q`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct ExtendedElement {
    /// Exponent `k` of `ζ = i^k`, in `0..4`.
    pub zeta: u8,
    pub v: TwoTorsionVector,
}

impl ExtendedElement {
    pub fn new(zeta: u8, v: TwoTorsionVector) -> Self {
        Self { zeta: zeta % 4, v }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let c = 2 * cocycle(self.v, other.v, false);
        Self::new(self.zeta + other.zeta + c, self.v + other.v)
    }

    /// `ẽ² (−1)^{q(v)}` as a fourth root of unity exponent.
    pub fn chi_q(&self) -> u8 {
        let sq = self.mul(self);
        (sq.zeta + 2 * qform(self.v)) % 4
    }

    pub fn all() -> impl Iterator<Item = Self> {
        TwoTorsionVector::all().flat_map(|v| (0..4).map(move |z| Self::new(z, v)))
    }
}
