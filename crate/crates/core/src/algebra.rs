//! The Cayley–Dickson tower R ⊂ C ⊂ H ⊂ K over exact rationals.
//!
//! Doubling convention: `(a, b)(c, d) = (ac − d̄b, da + bc̄)`. An element of
//! level `2n` is the concatenation of two level-`n` coordinate blocks, first
//! block first, with `e₀` the real unit. Under this convention the
//! quaternion table has `e₁e₂ = e₃`.
//!
//! [`cayley_dickson_mul`] is the literal recursion and works over any ring.
//! [`Element`] multiplies through a basis table generated once from that
//! recursion, which avoids the allocation-heavy recursion on hot paths.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Level {
    Real = 1,
    Complex = 2,
    Quaternion = 4,
    Octonion = 8,
}

impl Level {
    pub const ALL: [Level; 4] = [Level::Real, Level::Complex, Level::Quaternion, Level::Octonion];

    pub fn dim(self) -> usize {
        self as usize
    }

    pub fn from_dim(dim: usize) -> Result<Level> {
        match dim {
            1 => Ok(Level::Real),
            2 => Ok(Level::Complex),
            4 => Ok(Level::Quaternion),
            8 => Ok(Level::Octonion),
            other => Err(Error::InvalidLevel(other)),
        }
    }

    fn table_slot(self) -> usize {
        match self {
            Level::Real => 0,
            Level::Complex => 1,
            Level::Quaternion => 2,
            Level::Octonion => 3,
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Level::Real => "R",
            Level::Complex => "C",
            Level::Quaternion => "H",
            Level::Octonion => "K",
        };
        f.write_str(name)
    }
}

fn conj_slice<T>(x: &[T]) -> Vec<T>
where
    T: Clone + Neg<Output = T>,
{
    x.iter()
        .enumerate()
        .map(|(i, v)| if i == 0 { v.clone() } else { -v.clone() })
        .collect()
}

/// Literal Cayley–Dickson product of two coordinate vectors whose common
/// length is a power of two.
pub fn cayley_dickson_mul<T>(x: &[T], y: &[T]) -> Vec<T>
where
    T: Clone + Neg<Output = T> + Add<Output = T> + Sub<Output = T> + Mul<Output = T>,
{
    assert_eq!(x.len(), y.len(), "operands must have equal length");
    let n = x.len();
    assert!(n.is_power_of_two(), "length must be a power of two");
    if n == 1 {
        return vec![x[0].clone() * y[0].clone()];
    }
    let h = n / 2;
    let (a, b) = x.split_at(h);
    let (c, d) = y.split_at(h);
    let ac = cayley_dickson_mul(a, c);
    let db = cayley_dickson_mul(&conj_slice(d), b);
    let da = cayley_dickson_mul(d, a);
    let bc = cayley_dickson_mul(b, &conj_slice(c));
    ac.into_iter()
        .zip(db)
        .map(|(u, v)| u - v)
        .chain(da.into_iter().zip(bc).map(|(u, v)| u + v))
        .collect()
}

/// `e_i e_j = sign · e_index`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BasisProduct {
    pub sign: i8,
    pub index: usize,
}

/// Basis multiplication table for one level, derived from the recursion.
#[derive(Debug)]
pub struct MulTable {
    dim: usize,
    entries: Vec<BasisProduct>,
}

impl MulTable {
    fn generate(level: Level) -> MulTable {
        let dim = level.dim();
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let mut ei = vec![0i64; dim];
                let mut ej = vec![0i64; dim];
                ei[i] = 1;
                ej[j] = 1;
                let prod = cayley_dickson_mul(&ei, &ej);
                let nonzero: Vec<_> = prod.iter().enumerate().filter(|(_, v)| **v != 0).collect();
                assert_eq!(nonzero.len(), 1, "basis product must be a signed basis element");
                let (index, &v) = nonzero[0];
                assert!(v == 1 || v == -1);
                entries.push(BasisProduct { sign: v as i8, index });
            }
        }
        MulTable { dim, entries }
    }

    pub fn for_level(level: Level) -> &'static MulTable {
        static TABLES: OnceLock<[MulTable; 4]> = OnceLock::new();
        let tables = TABLES.get_or_init(|| Level::ALL.map(MulTable::generate));
        &tables[level.table_slot()]
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> BasisProduct {
        self.entries[i * self.dim + j]
    }
}

/// An element of R, C, H or K with exact rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Element {
    level: Level,
    coords: Vec<Scalar>,
}

impl Element {
    pub fn new(level: Level, coords: Vec<Scalar>) -> Result<Element> {
        if coords.len() != level.dim() {
            return Err(Error::DimensionMismatch {
                expected: level.dim(),
                got: coords.len(),
            });
        }
        Ok(Element { level, coords })
    }

    /// Level inferred from the coordinate count.
    pub fn from_coords(coords: Vec<Scalar>) -> Result<Element> {
        let level = Level::from_dim(coords.len())?;
        Ok(Element { level, coords })
    }

    pub fn from_ints(level: Level, values: &[i64]) -> Result<Element> {
        Element::new(level, scalar::ints(values))
    }

    pub fn zero(level: Level) -> Element {
        Element {
            level,
            coords: scalar::zeros(level.dim()),
        }
    }

    pub fn one(level: Level) -> Element {
        Element::basis(level, 0)
    }

    pub fn basis(level: Level, i: usize) -> Element {
        Element {
            level,
            coords: scalar::unit(level.dim(), i),
        }
    }

    pub fn real(level: Level, value: Scalar) -> Element {
        let mut e = Element::zero(level);
        e.coords[0] = value;
        e
    }

    pub fn level(&self) -> Level {
        self.level
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Scalar> {
        self.coords
    }

    pub fn real_part(&self) -> &Scalar {
        &self.coords[0]
    }

    pub fn is_zero(&self) -> bool {
        scalar::is_zero_vec(&self.coords)
    }

    fn check_level(&self, other: &Element) -> Result<()> {
        if self.level != other.level {
            return Err(Error::LevelMismatch(self.level.dim(), other.level.dim()));
        }
        Ok(())
    }

    pub fn try_mul(&self, other: &Element) -> Result<Element> {
        self.check_level(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Element) -> Element {
        let table = MulTable::for_level(self.level);
        let dim = table.dim();
        let mut out = scalar::zeros(dim);
        for (i, xi) in self.coords.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in other.coords.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let p = table.get(i, j);
                let term = xi * yj;
                if p.sign > 0 {
                    out[p.index] += term;
                } else {
                    out[p.index] -= term;
                }
            }
        }
        Element {
            level: self.level,
            coords: out,
        }
    }

    pub fn try_add(&self, other: &Element) -> Result<Element> {
        self.check_level(other)?;
        Ok(self + other)
    }

    pub fn try_sub(&self, other: &Element) -> Result<Element> {
        self.check_level(other)?;
        Ok(self - other)
    }

    pub fn scale(&self, s: &Scalar) -> Element {
        Element {
            level: self.level,
            coords: self.coords.iter().map(|c| c * s).collect(),
        }
    }

    /// Real coordinate kept, the rest negated.
    pub fn conj(&self) -> Element {
        Element {
            level: self.level,
            coords: conj_slice(&self.coords),
        }
    }

    /// `N(x) = Σ xᵢ²`.
    pub fn norm(&self) -> Scalar {
        self.coords.iter().map(|c| c * c).sum()
    }

    pub fn inner(&self, other: &Element) -> Result<Scalar> {
        self.check_level(other)?;
        Ok(self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a * b)
            .sum())
    }

    /// `xy − yx`.
    pub fn commutator(&self, other: &Element) -> Result<Element> {
        self.check_level(other)?;
        Ok(&self.mul_unchecked(other) - &other.mul_unchecked(self))
    }

    /// `x(yz) − (xy)z`.
    pub fn associator(&self, y: &Element, z: &Element) -> Result<Element> {
        self.check_level(y)?;
        self.check_level(z)?;
        let left = self.mul_unchecked(&y.mul_unchecked(z));
        let right = self.mul_unchecked(y).mul_unchecked(z);
        Ok(&left - &right)
    }

    /// `x + x̄`, which equals `2⟨x, e₀⟩ e₀`.
    pub fn trace(&self) -> Element {
        self + &self.conj()
    }

    /// Zero-pads into a higher level. The padded coordinates sit in the
    /// first doubling block at every step, so this is an algebra embedding.
    pub fn embed(&self, target: Level) -> Result<Element> {
        if target < self.level {
            return Err(Error::InvalidEmbedding {
                from: self.level.dim(),
                to: target.dim(),
            });
        }
        let mut coords = self.coords.clone();
        coords.resize(target.dim(), Scalar::zero());
        Ok(Element {
            level: target,
            coords,
        })
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.level, scalar::format_vector(&self.coords))
    }
}

// The operator impls panic on a level mismatch; use the `try_*` methods when
// levels are not known to agree.

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        assert_eq!(self.level, rhs.level, "level mismatch in addition");
        Element {
            level: self.level,
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        assert_eq!(self.level, rhs.level, "level mismatch in subtraction");
        Element {
            level: self.level,
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &Element {
    type Output = Element;
    fn mul(self, rhs: &Element) -> Element {
        assert_eq!(self.level, rhs.level, "level mismatch in multiplication");
        self.mul_unchecked(rhs)
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element {
            level: self.level,
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

impl Add for Element {
    type Output = Element;
    fn add(self, rhs: Element) -> Element {
        &self + &rhs
    }
}

impl Sub for Element {
    type Output = Element;
    fn sub(self, rhs: Element) -> Element {
        &self - &rhs
    }
}

impl Mul for Element {
    type Output = Element;
    fn mul(self, rhs: Element) -> Element {
        &self * &rhs
    }
}

impl Neg for Element {
    type Output = Element;
    fn neg(self) -> Element {
        -&self
    }
}
