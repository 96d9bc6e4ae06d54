//! Explicit bilinear maps, their structure-constant tensors, and the linear
//! maps obtained by freezing one argument.
//!
//! A domain written `K^m` is laid out as `m` consecutive blocks of eight
//! coordinates, slot 0 first. Codomains keep the shape of the defining
//! formula (the main `K⁴ × K⁴ → K⁷` map has 56 raw output coordinates);
//! compression to the actual image lives in [`crate::restriction`].

use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{Element, Level};
use crate::error::{Error, Result};
use crate::linalg::{Echelon, Matrix};
use crate::scalar::{self, Scalar};

/// Every formula-defined map in the catalog.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Construction {
    RealMul,
    ComplexMul,
    QuaternionMul,
    OctonionMul,
    /// Real polynomial product, coefficient vectors of lengths `r` and `s`.
    PolyMul { r: usize, s: usize },
    /// Complex polynomial product; `r` and `s` count real coordinates.
    ComplexPolyMul { r: usize, s: usize },
    /// Octonion commutator `ab − ba`.
    Commutator,
    /// Degree-one real polynomial product `R² × R² → R³`.
    IntroFDeg1,
    /// Complex multiplication written out on `R² × R² → R²`.
    IntroG,
    /// `K² × K² → K³` octonion polynomial product with a commutator slot.
    Lam,
    /// `K³ × K³ → K⁵`.
    Adem,
    /// `K³ × K³ → K⁵`.
    F1,
    /// `K⁴ × K² → K⁵`.
    F2,
    /// `K² × K⁴ → K⁵`.
    F3,
    /// `K⁴ × K⁴ → K⁷`.
    MainF,
}

impl Construction {
    /// The parameter-free constructions, in catalog order.
    pub const FIXED: [Construction; 13] = [
        Construction::RealMul,
        Construction::ComplexMul,
        Construction::QuaternionMul,
        Construction::OctonionMul,
        Construction::Commutator,
        Construction::IntroFDeg1,
        Construction::IntroG,
        Construction::Lam,
        Construction::Adem,
        Construction::F1,
        Construction::F2,
        Construction::F3,
        Construction::MainF,
    ];

    pub fn id(&self) -> String {
        match self {
            Construction::RealMul => "real_mul".into(),
            Construction::ComplexMul => "complex_mul".into(),
            Construction::QuaternionMul => "quaternion_mul".into(),
            Construction::OctonionMul => "octonion_mul".into(),
            Construction::PolyMul { r, s } => format!("poly_mul({r},{s})"),
            Construction::ComplexPolyMul { r, s } => format!("complex_poly_mul({r},{s})"),
            Construction::Commutator => "commutator_map".into(),
            Construction::IntroFDeg1 => "intro_f_deg1".into(),
            Construction::IntroG => "intro_g".into(),
            Construction::Lam => "lam_map".into(),
            Construction::Adem => "adem_map".into(),
            Construction::F1 => "f1".into(),
            Construction::F2 => "f2".into(),
            Construction::F3 => "f3".into(),
            Construction::MainF => "main_f".into(),
        }
    }

    pub fn description(&self) -> &'static str {
        match self {
            Construction::RealMul => "real multiplication R x R -> R",
            Construction::ComplexMul => "complex multiplication C x C -> C",
            Construction::QuaternionMul => "quaternion multiplication H x H -> H",
            Construction::OctonionMul => "octonion multiplication K x K -> K",
            Construction::PolyMul { .. } => "real polynomial product R^r x R^s -> R^(r+s-1)",
            Construction::ComplexPolyMul { .. } => "complex polynomial product R^r x R^s -> R^(r+s-2)",
            Construction::Commutator => "octonion commutator ab - ba (singular)",
            Construction::IntroFDeg1 => "degree-one polynomial product R^2 x R^2 -> R^3",
            Construction::IntroG => "complex product R^2 x R^2 -> R^2",
            Construction::Lam => "octonion polynomial product K^2 x K^2 -> K^3",
            Construction::Adem => "K^3 x K^3 -> K^5 with commutator slot",
            Construction::F1 => "K^3 x K^3 -> K^5",
            Construction::F2 => "K^4 x K^2 -> K^5",
            Construction::F3 => "K^2 x K^4 -> K^5",
            Construction::MainF => "K^4 x K^4 -> K^7",
        }
    }

    fn validate(&self) -> Result<()> {
        let bad = |reason: &str| {
            Err(Error::InvalidParameters {
                id: self.id(),
                reason: reason.to_string(),
            })
        };
        match *self {
            Construction::PolyMul { r, s } if r == 0 || s == 0 => bad("r and s must be positive"),
            Construction::ComplexPolyMul { r, s } if r == 0 || s == 0 => bad("r and s must be positive"),
            Construction::ComplexPolyMul { r, s } if r % 2 == 1 || s % 2 == 1 => {
                bad("r and s must be even")
            }
            _ => Ok(()),
        }
    }

    pub fn slots(&self) -> SlotStructure {
        use Level::*;
        let rep = |l: Level, n: usize| vec![l; n];
        let (a, b, out) = match *self {
            Construction::RealMul => (rep(Real, 1), rep(Real, 1), rep(Real, 1)),
            Construction::ComplexMul | Construction::IntroG => {
                (rep(Complex, 1), rep(Complex, 1), rep(Complex, 1))
            }
            Construction::QuaternionMul => (rep(Quaternion, 1), rep(Quaternion, 1), rep(Quaternion, 1)),
            Construction::OctonionMul | Construction::Commutator => {
                (rep(Octonion, 1), rep(Octonion, 1), rep(Octonion, 1))
            }
            Construction::PolyMul { r, s } => (rep(Real, r), rep(Real, s), rep(Real, r + s - 1)),
            Construction::ComplexPolyMul { r, s } => {
                (rep(Complex, r / 2), rep(Complex, s / 2), rep(Complex, (r + s) / 2 - 1))
            }
            Construction::IntroFDeg1 => (rep(Real, 2), rep(Real, 2), rep(Real, 3)),
            Construction::Lam => (rep(Octonion, 2), rep(Octonion, 2), rep(Octonion, 3)),
            Construction::Adem | Construction::F1 => (rep(Octonion, 3), rep(Octonion, 3), rep(Octonion, 5)),
            Construction::F2 => (rep(Octonion, 4), rep(Octonion, 2), rep(Octonion, 5)),
            Construction::F3 => (rep(Octonion, 2), rep(Octonion, 4), rep(Octonion, 5)),
            Construction::MainF => (rep(Octonion, 4), rep(Octonion, 4), rep(Octonion, 7)),
        };
        SlotStructure { a, b, out }
    }

    fn evaluate(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        match *self {
            Construction::RealMul | Construction::ComplexMul | Construction::QuaternionMul | Construction::OctonionMul => {
                let (a, b) = (element(x), element(y));
                (&a * &b).into_coords()
            }
            Construction::IntroG => {
                // (a₀b₀ − a₁b₁, a₀b₁ + a₁b₀)
                vec![&x[0] * &y[0] - &x[1] * &y[1], &x[0] * &y[1] + &x[1] * &y[0]]
            }
            Construction::PolyMul { .. } | Construction::IntroFDeg1 => poly_product(x, y),
            Construction::ComplexPolyMul { .. } => complex_poly_product(x, y),
            Construction::Commutator => {
                let (a, b) = (element(x), element(y));
                (&a * &b - &b * &a).into_coords()
            }
            Construction::Lam => {
                let (a, b) = (octonions(x), octonions(y));
                flatten([
                    m(&a[0], &b[0]) - m(&b[1].conj(), &a[1]),
                    m(&b[1], &a[0]) + m(&a[1], &b[0].conj()),
                    m(&a[1], &b[1]) - m(&b[1], &a[1]),
                ])
            }
            Construction::Adem => {
                let (a, b) = (octonions(x), octonions(y));
                let cb: Vec<Element> = b.iter().map(Element::conj).collect();
                flatten([
                    m(&a[0], &b[0]) + m(&a[1], &b[1]),
                    m(&cb[0], &a[2]) - m(&a[0], &cb[2]),
                    m(&cb[0], &a[1]) - m(&a[0], &cb[1]) + m(&a[2], &b[2]),
                    m(&cb[1], &a[2]) - m(&a[1], &cb[2]),
                    m(&a[0], &b[0]) - m(&b[0], &a[0]),
                ])
            }
            Construction::F1 => {
                let (a, b) = (octonions(x), octonions(y));
                let cb: Vec<Element> = b.iter().map(Element::conj).collect();
                flatten([
                    m(&a[0], &b[0]) - m(&b[0], &a[0]),
                    m(&cb[0], &a[1]) + m(&a[0], &cb[1]),
                    m(&cb[0], &a[2]) + m(&a[1], &b[1]) + m(&a[0], &cb[2]),
                    m(&a[2], &cb[1]) - m(&cb[2], &a[1]),
                    m(&a[2], &b[2]) - m(&a[0], &b[0]),
                ])
            }
            Construction::F2 => {
                let (a, b) = (octonions(x), octonions(y));
                let cb: Vec<Element> = b.iter().map(Element::conj).collect();
                flatten([
                    m(&a[0], &b[0]) - m(&b[0], &a[0]),
                    m(&cb[0], &a[1]) + m(&a[0], &cb[1]),
                    m(&cb[0], &a[2]) + m(&a[1], &b[1]),
                    m(&a[2], &cb[1]) + m(&b[0], &a[3]),
                    m(&a[3], &b[1]) - m(&a[0], &b[0]),
                ])
            }
            Construction::F3 => {
                let (a, b) = (octonions(x), octonions(y));
                let cb: Vec<Element> = b.iter().map(Element::conj).collect();
                flatten([
                    m(&a[0], &b[0]) - m(&b[0], &a[0]),
                    m(&cb[0], &a[1]) + m(&a[0], &cb[1]),
                    m(&a[1], &b[1]) + m(&a[0], &cb[2]),
                    m(&a[0].conj(), &b[3]) - m(&cb[2], &a[1]),
                    -m(&b[3], &a[1].conj()) - m(&a[0], &b[0]),
                ])
            }
            Construction::MainF => {
                let (a, b) = (octonions(x), octonions(y));
                let cb: Vec<Element> = b.iter().map(Element::conj).collect();
                flatten([
                    m(&a[0], &b[0]) - m(&b[0], &a[0]),
                    m(&cb[0], &a[1]) + m(&a[0], &cb[1]),
                    m(&cb[0], &a[2]) + m(&a[1], &b[1]) + m(&a[0], &cb[2]),
                    m(&a[0].conj(), &b[3]) - m(&cb[2], &a[1]) + m(&a[2], &cb[1]) + m(&b[0], &a[3]),
                    -m(&b[3], &a[1].conj()) + m(&a[2], &b[2]) + m(&a[3], &b[1]) - m(&a[0], &b[0]),
                    m(&a[3], &b[2]) + m(&a[2], &b[3]),
                    m(&a[3], &b[3]),
                ])
            }
        }
    }
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id())
    }
}

impl FromStr for Construction {
    type Err = Error;

    fn from_str(id: &str) -> Result<Construction> {
        let id = id.trim();
        if let Some(c) = Construction::FIXED.iter().find(|c| c.id() == id) {
            return Ok(*c);
        }
        let parse_pair = |args: &str| -> Option<(usize, usize)> {
            let (r, s) = args.strip_suffix(')')?.split_once(',')?;
            Some((r.trim().parse().ok()?, s.trim().parse().ok()?))
        };
        let c = if let Some(args) = id.strip_prefix("poly_mul(") {
            parse_pair(args).map(|(r, s)| Construction::PolyMul { r, s })
        } else if let Some(args) = id.strip_prefix("complex_poly_mul(") {
            parse_pair(args).map(|(r, s)| Construction::ComplexPolyMul { r, s })
        } else {
            None
        };
        let c = c.ok_or_else(|| Error::UnknownMap(id.to_string()))?;
        c.validate()?;
        Ok(c)
    }
}

fn element(x: &[Scalar]) -> Element {
    Element::from_coords(x.to_vec()).expect("slot length is a valid level")
}

fn octonions(x: &[Scalar]) -> Vec<Element> {
    x.chunks(8)
        .map(|c| Element::new(Level::Octonion, c.to_vec()).expect("eight coordinates"))
        .collect()
}

fn m(a: &Element, b: &Element) -> Element {
    a * b
}

fn flatten<const N: usize>(parts: [Element; N]) -> Vec<Scalar> {
    parts.into_iter().flat_map(Element::into_coords).collect()
}

fn poly_product(x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    let mut out = scalar::zeros(x.len() + y.len() - 1);
    for (i, a) in x.iter().enumerate() {
        for (j, b) in y.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    out
}

fn complex_poly_product(x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    let n = x.len() / 2 + y.len() / 2 - 1;
    let mut out = scalar::zeros(2 * n);
    for (i, a) in x.chunks(2).enumerate() {
        for (j, b) in y.chunks(2).enumerate() {
            let t = i + j;
            out[2 * t] += &a[0] * &b[0] - &a[1] * &b[1];
            out[2 * t + 1] += &a[0] * &b[1] + &a[1] * &b[0];
        }
    }
    out
}

/// How each factor decomposes into algebra slots.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SlotStructure {
    pub a: Vec<Level>,
    pub b: Vec<Level>,
    pub out: Vec<Level>,
}

impl SlotStructure {
    fn scalar_slots(r: usize, s: usize, k: usize) -> SlotStructure {
        SlotStructure {
            a: vec![Level::Real; r],
            b: vec![Level::Real; s],
            out: vec![Level::Real; k],
        }
    }
}

/// One nonzero structure constant: coordinate `t` of `f(eᵢ, eⱼ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorEntry {
    pub t: usize,
    pub i: usize,
    pub j: usize,
    pub value: Scalar,
}

/// Sparse structure constants of a bilinear map `R^r × R^s → R^k`,
/// sorted by `(t, i, j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor {
    r: usize,
    s: usize,
    k: usize,
    entries: Vec<TensorEntry>,
}

#[derive(Serialize, Deserialize)]
struct TensorJson {
    r: usize,
    s: usize,
    k: usize,
    entries: Vec<(usize, usize, usize, String)>,
}

impl Tensor {
    pub fn new(r: usize, s: usize, k: usize, mut entries: Vec<TensorEntry>) -> Result<Tensor> {
        for e in &entries {
            if e.t >= k || e.i >= r || e.j >= s {
                return Err(Error::MalformedTensor(format!(
                    "index ({}, {}, {}) out of range for ({r}, {s}, {k})",
                    e.t, e.i, e.j
                )));
            }
            if e.value.is_zero() {
                return Err(Error::MalformedTensor(format!(
                    "explicit zero at ({}, {}, {})",
                    e.t, e.i, e.j
                )));
            }
        }
        entries.sort_by_key(|e| (e.t, e.i, e.j));
        if let Some(w) = entries.windows(2).find(|w| (w[0].t, w[0].i, w[0].j) == (w[1].t, w[1].i, w[1].j)) {
            return Err(Error::MalformedTensor(format!(
                "duplicate entry ({}, {}, {})",
                w[0].t, w[0].i, w[0].j
            )));
        }
        Ok(Tensor { r, s, k, entries })
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        (self.r, self.s, self.k)
    }

    pub fn entries(&self) -> &[TensorEntry] {
        &self.entries
    }

    pub fn apply(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = scalar::zeros(self.k);
        for e in &self.entries {
            let (a, b) = (&x[e.i], &y[e.j]);
            if a.is_zero() || b.is_zero() {
                continue;
            }
            out[e.t] += &e.value * a * b;
        }
        out
    }

    /// The `k × (r·s)` matrix whose column `i·s + j` is `f(eᵢ, eⱼ)`.
    pub fn unfold(&self) -> Matrix {
        let mut m = Matrix::zeros(self.k, self.r * self.s);
        for e in &self.entries {
            m.set(e.t, e.i * self.s + e.j, e.value.clone());
        }
        m
    }

    /// Values `f(eᵢ, eⱼ)` for every basis pair, as dense vectors.
    pub fn basis_images(&self) -> Vec<Vec<Scalar>> {
        let unfolded = self.unfold();
        (0..self.r * self.s).map(|c| unfolded.column(c)).collect()
    }

    pub fn to_json(&self) -> Result<String> {
        let j = TensorJson {
            r: self.r,
            s: self.s,
            k: self.k,
            entries: self
                .entries
                .iter()
                .map(|e| (e.t, e.i, e.j, scalar::format_scalar(&e.value)))
                .collect(),
        };
        Ok(serde_json::to_string(&j)?)
    }

    pub fn from_json(text: &str) -> Result<Tensor> {
        let j: TensorJson = serde_json::from_str(text)?;
        let entries = j
            .entries
            .into_iter()
            .map(|(t, i, j, v)| {
                Ok(TensorEntry {
                    t,
                    i,
                    j,
                    value: scalar::parse_scalar(&v)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Tensor::new(j.r, j.s, j.k, entries)
    }
}

#[derive(Clone, Debug)]
enum Kind {
    Formula(Construction),
    Tensor,
    Projected {
        parent: Arc<BilinearMap>,
        projection: Matrix,
    },
    Transposed(Arc<BilinearMap>),
    Restricted {
        parent: Arc<BilinearMap>,
        a_coords: Vec<usize>,
        b_coords: Vec<usize>,
        codomain: Echelon,
    },
}

/// A bilinear map `R^r × R^s → R^k` with an exact evaluator and a lazily
/// materialized structure-constant tensor.
#[derive(Clone, Debug)]
pub struct BilinearMap {
    id: String,
    r: usize,
    s: usize,
    k: usize,
    slots: SlotStructure,
    kind: Kind,
    tensor: OnceLock<Tensor>,
}

impl BilinearMap {
    pub fn from_construction(c: Construction) -> Result<BilinearMap> {
        c.validate()?;
        let slots = c.slots();
        let dim = |v: &[Level]| v.iter().map(|l| l.dim()).sum::<usize>();
        Ok(BilinearMap {
            id: c.id(),
            r: dim(&slots.a),
            s: dim(&slots.b),
            k: dim(&slots.out),
            slots,
            kind: Kind::Formula(c),
            tensor: OnceLock::new(),
        })
    }

    pub fn from_tensor(tensor: Tensor) -> BilinearMap {
        let (r, s, k) = tensor.dims();
        BilinearMap {
            id: "tensor".into(),
            r,
            s,
            k,
            slots: SlotStructure::scalar_slots(r, s, k),
            kind: Kind::Tensor,
            tensor: OnceLock::from(tensor),
        }
    }

    pub(crate) fn restricted(
        id: String,
        parent: Arc<BilinearMap>,
        a_coords: Vec<usize>,
        b_coords: Vec<usize>,
        codomain: Echelon,
    ) -> BilinearMap {
        let (r, s, k) = (a_coords.len(), b_coords.len(), codomain.dim());
        BilinearMap {
            id,
            r,
            s,
            k,
            slots: SlotStructure::scalar_slots(r, s, k),
            kind: Kind::Restricted {
                parent,
                a_coords,
                b_coords,
                codomain,
            },
            tensor: OnceLock::new(),
        }
    }

    pub fn with_id(mut self, id: impl Into<String>) -> BilinearMap {
        self.id = id.into();
        self
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        (self.r, self.s, self.k)
    }

    pub fn slots(&self) -> &SlotStructure {
        &self.slots
    }

    pub fn construction(&self) -> Option<Construction> {
        match self.kind {
            Kind::Formula(c) => Some(c),
            _ => None,
        }
    }

    pub fn evaluate(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vec<Scalar>> {
        check_len(self.r, x)?;
        check_len(self.s, y)?;
        Ok(self.eval(x, y))
    }

    fn eval(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        match &self.kind {
            Kind::Formula(c) => c.evaluate(x, y),
            Kind::Tensor => self.as_tensor().apply(x, y),
            Kind::Projected { parent, projection } => projection.mul_vec(&parent.eval(x, y)),
            Kind::Transposed(parent) => parent.eval(y, x),
            Kind::Restricted {
                parent,
                a_coords,
                b_coords,
                codomain,
            } => {
                let raw = parent.eval(&scatter(x, a_coords, parent.r), &scatter(y, b_coords, parent.s));
                codomain.pivots().iter().map(|&p| raw[p].clone()).collect()
            }
        }
    }

    /// Structure constants `c[t][i][j] = evaluate(eᵢ, eⱼ)[t]`, computed once.
    pub fn as_tensor(&self) -> &Tensor {
        self.tensor.get_or_init(|| {
            let mut entries = Vec::new();
            for i in 0..self.r {
                let ei = scalar::unit(self.r, i);
                for j in 0..self.s {
                    let out = self.eval(&ei, &scalar::unit(self.s, j));
                    for (t, v) in out.into_iter().enumerate() {
                        if !v.is_zero() {
                            entries.push(TensorEntry { t, i, j, value: v });
                        }
                    }
                }
            }
            Tensor::new(self.r, self.s, self.k, entries).expect("generated tensor is well formed")
        })
    }

    /// Matrix of `y ↦ f(x, y)`.
    pub fn fixed_left_matrix(&self, x: &[Scalar]) -> Result<Matrix> {
        check_len(self.r, x)?;
        let mut m = Matrix::zeros(self.k, self.s);
        for e in self.as_tensor().entries() {
            if !x[e.i].is_zero() {
                m.add_to(e.t, e.j, &(&e.value * &x[e.i]));
            }
        }
        Ok(m)
    }

    /// Matrix of `x ↦ f(x, y)`.
    pub fn fixed_right_matrix(&self, y: &[Scalar]) -> Result<Matrix> {
        check_len(self.s, y)?;
        let mut m = Matrix::zeros(self.k, self.r);
        for e in self.as_tensor().entries() {
            if !y[e.j].is_zero() {
                m.add_to(e.t, e.i, &(&e.value * &y[e.j]));
            }
        }
        Ok(m)
    }

    /// `g(y, x) = f(x, y)`.
    pub fn transpose(self: &Arc<Self>) -> BilinearMap {
        let slots = SlotStructure {
            a: self.slots.b.clone(),
            b: self.slots.a.clone(),
            out: self.slots.out.clone(),
        };
        BilinearMap {
            id: format!("{}^T", self.id),
            r: self.s,
            s: self.r,
            k: self.k,
            slots,
            kind: Kind::Transposed(Arc::clone(self)),
            tensor: OnceLock::new(),
        }
    }

    /// Composes the map with the projection `R^k → R^(k−1)` along `z`.
    ///
    /// The complement kept is spanned by every coordinate except the pivot of
    /// `z`, its largest-magnitude entry (lowest index on ties).
    pub fn quotient_project(self: &Arc<Self>, z: &[Scalar]) -> Result<BilinearMap> {
        check_len(self.k, z)?;
        if scalar::is_zero_vec(z) {
            return Err(Error::ZeroVector("quotient direction z"));
        }
        let pivot = pivot_index(z);
        let mut projection = Matrix::zeros(self.k - 1, self.k);
        for (row, col) in (0..self.k).filter(|&c| c != pivot).enumerate() {
            projection.set(row, col, scalar::one());
            projection.set(row, pivot, -(&z[col] / &z[pivot]));
        }
        Ok(BilinearMap {
            id: format!("{}/L({})", self.id, scalar::format_vector(z)),
            r: self.r,
            s: self.s,
            k: self.k - 1,
            slots: SlotStructure::scalar_slots(self.r, self.s, self.k - 1),
            kind: Kind::Projected {
                parent: Arc::clone(self),
                projection,
            },
            tensor: OnceLock::new(),
        })
    }
}

/// Index of the largest-magnitude coordinate, lowest index on ties.
pub fn pivot_index(z: &[Scalar]) -> usize {
    let mut best = 0;
    for (i, v) in z.iter().enumerate() {
        if v.abs() > z[best].abs() {
            best = i;
        }
    }
    best
}

fn scatter(x: &[Scalar], coords: &[usize], len: usize) -> Vec<Scalar> {
    let mut out = scalar::zeros(len);
    for (v, &c) in x.iter().zip(coords) {
        out[c] = v.clone();
    }
    out
}

fn check_len(expected: usize, v: &[Scalar]) -> Result<()> {
    if v.len() != expected {
        return Err(Error::DimensionMismatch {
            expected,
            got: v.len(),
        });
    }
    Ok(())
}

/// Looks up a catalog map by id, e.g. `main_f` or `poly_mul(2,3)`.
pub fn builtin(id: &str) -> Result<BilinearMap> {
    BilinearMap::from_construction(id.parse()?)
}

/// An invertible `C` with `C · unfold(from) = unfold(to)`, i.e. a codomain
/// change of basis carrying one map onto the other, if the linear solve finds
/// one. Requires equal `(r, s, k)`.
pub fn codomain_change_of_basis(from: &Tensor, to: &Tensor) -> Option<Matrix> {
    if from.dims() != to.dims() {
        return None;
    }
    let (a, b) = (from.unfold(), to.unfold());
    let ct = a.transpose().solve(&b.transpose())?;
    let c = ct.transpose();
    (c.rank() == c.nrows()).then_some(c)
}
