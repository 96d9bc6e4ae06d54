//! Coordinate-subspace restrictions and image-span compression.
//!
//! A [`SubspacePattern`] picks, slot by slot, which coordinates of a factor
//! stay free. Composite shapes follow the doubling layout of an octonion
//! `(p, q)` with `p, q ∈ H`:
//!
//! | token | shape                 | indices             |
//! |-------|-----------------------|---------------------|
//! | `0`   | zero                  | none                |
//! | `r`   | real                  | 0                   |
//! | `z`   | complex               | 0 1                 |
//! | `q`   | quaternion            | 0 1 2 3             |
//! | `o`   | octonion              | 0 … 7               |
//! | `rq`  | real ⊕ quaternion     | 0 4 5 6 7           |
//! | `rz`  | real ⊕ complex        | 0 4 5               |
//! | `rzq` | real ⊕ complex ⊕ quat | 0 2 3 4 5 6 7       |
//!
//! For `rq` the first doubling block is cut down to its real axis and the
//! second kept whole; `rz` keeps the complex line of the second block; `rzq`
//! keeps the real axis plus the second complex line of the first block,
//! together with the whole second block.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::Echelon;
use crate::maps::{builtin, BilinearMap};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SlotPattern {
    Zero,
    Real,
    Complex,
    Quaternion,
    Octonion,
    RealPlusQuaternion,
    RealPlusComplex,
    RealPlusComplexPlusQuaternion,
}

impl SlotPattern {
    pub const ALL: [SlotPattern; 8] = [
        SlotPattern::Zero,
        SlotPattern::Real,
        SlotPattern::Complex,
        SlotPattern::Quaternion,
        SlotPattern::Octonion,
        SlotPattern::RealPlusQuaternion,
        SlotPattern::RealPlusComplex,
        SlotPattern::RealPlusComplexPlusQuaternion,
    ];

    pub fn indices(self) -> &'static [usize] {
        match self {
            SlotPattern::Zero => &[],
            SlotPattern::Real => &[0],
            SlotPattern::Complex => &[0, 1],
            SlotPattern::Quaternion => &[0, 1, 2, 3],
            SlotPattern::Octonion => &[0, 1, 2, 3, 4, 5, 6, 7],
            SlotPattern::RealPlusQuaternion => &[0, 4, 5, 6, 7],
            SlotPattern::RealPlusComplex => &[0, 4, 5],
            SlotPattern::RealPlusComplexPlusQuaternion => &[0, 2, 3, 4, 5, 6, 7],
        }
    }

    pub fn dim(self) -> usize {
        self.indices().len()
    }

    pub fn token(self) -> &'static str {
        match self {
            SlotPattern::Zero => "0",
            SlotPattern::Real => "r",
            SlotPattern::Complex => "z",
            SlotPattern::Quaternion => "q",
            SlotPattern::Octonion => "o",
            SlotPattern::RealPlusQuaternion => "rq",
            SlotPattern::RealPlusComplex => "rz",
            SlotPattern::RealPlusComplexPlusQuaternion => "rzq",
        }
    }
}

impl FromStr for SlotPattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<SlotPattern> {
        let t = s.trim();
        SlotPattern::ALL
            .into_iter()
            .find(|p| p.token() == t)
            .ok_or_else(|| Error::MalformedPattern {
                pattern: s.to_string(),
                reason: "expected one of 0, r, z, q, o, rq, rz, rzq".into(),
            })
    }
}

/// Per-slot restriction of one domain factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubspacePattern {
    slots: Vec<SlotPattern>,
}

impl SubspacePattern {
    pub fn new(slots: Vec<SlotPattern>) -> SubspacePattern {
        SubspacePattern { slots }
    }

    /// Every slot kept whole at octonion width.
    pub fn full(n: usize) -> SubspacePattern {
        SubspacePattern::new(vec![SlotPattern::Octonion; n])
    }

    pub fn slots(&self) -> &[SlotPattern] {
        &self.slots
    }

    pub fn dim(&self) -> usize {
        self.slots.iter().map(|p| p.dim()).sum()
    }

    pub fn with_slot(&self, i: usize, p: SlotPattern) -> SubspacePattern {
        let mut slots = self.slots.clone();
        slots[i] = p;
        SubspacePattern { slots }
    }

    /// Flat coordinate indices selected inside a factor with the given slot
    /// widths.
    pub fn coordinates(&self, slot_dims: &[usize]) -> Result<Vec<usize>> {
        if self.slots.len() != slot_dims.len() {
            return Err(Error::IncompatiblePattern(format!(
                "pattern `{self}` has {} slots, factor has {}",
                self.slots.len(),
                slot_dims.len()
            )));
        }
        let mut coords = Vec::with_capacity(self.dim());
        let mut offset = 0;
        for (p, &w) in self.slots.iter().zip(slot_dims) {
            if let Some(&bad) = p.indices().iter().find(|&&i| i >= w) {
                return Err(Error::IncompatiblePattern(format!(
                    "slot pattern `{}` needs index {bad} in a {w}-dimensional slot",
                    p.token()
                )));
            }
            coords.extend(p.indices().iter().map(|i| offset + i));
            offset += w;
        }
        Ok(coords)
    }
}

impl FromStr for SubspacePattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<SubspacePattern> {
        if s.trim().is_empty() {
            return Err(Error::MalformedPattern {
                pattern: s.to_string(),
                reason: "empty pattern".into(),
            });
        }
        let slots = s
            .split(',')
            .map(|tok| {
                tok.parse().map_err(|_| Error::MalformedPattern {
                    pattern: s.to_string(),
                    reason: format!("unknown slot token `{}`", tok.trim()),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SubspacePattern { slots })
    }
}

impl fmt::Display for SubspacePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let toks: Vec<_> = self.slots.iter().map(|p| p.token()).collect();
        f.write_str(&toks.join(","))
    }
}

impl Serialize for SubspacePattern {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_string())
    }
}

/// Exact span of `f(eᵢ, eⱼ)` over the given basis coordinates.
pub fn span_of_pairs(map: &BilinearMap, a_coords: &[usize], b_coords: &[usize]) -> Echelon {
    let (r, s, k) = map.dims();
    let mut in_a = vec![false; r];
    let mut in_b = vec![false; s];
    a_coords.iter().for_each(|&i| in_a[i] = true);
    b_coords.iter().for_each(|&j| in_b[j] = true);
    let mut columns = vec![crate::scalar::zeros(k); r * s];
    let mut touched = vec![false; r * s];
    for e in map.as_tensor().entries() {
        if in_a[e.i] && in_b[e.j] {
            columns[e.i * s + e.j][e.t] = e.value.clone();
            touched[e.i * s + e.j] = true;
        }
    }
    let mut span = Echelon::new(k);
    for (col, used) in columns.into_iter().zip(touched) {
        if used {
            span.insert(col);
            if span.dim() == k {
                break;
            }
        }
    }
    span
}

/// Dimension and reduced-echelon basis of the span of all values of a map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ImageSpan {
    pub dimension: usize,
    #[serde(serialize_with = "serialize_basis")]
    pub basis: Vec<Vec<Scalar>>,
    pub pivots: Vec<usize>,
}

fn serialize_basis<S: serde::Serializer>(b: &[Vec<Scalar>], ser: S) -> std::result::Result<S::Ok, S::Error> {
    let rows: Vec<Vec<String>> = b
        .iter()
        .map(|r| r.iter().map(crate::scalar::format_scalar).collect())
        .collect();
    rows.serialize(ser)
}

pub fn image_span(map: &BilinearMap) -> ImageSpan {
    let (r, s, _) = map.dims();
    let a: Vec<usize> = (0..r).collect();
    let b: Vec<usize> = (0..s).collect();
    let span = span_of_pairs(map, &a, &b);
    ImageSpan {
        dimension: span.dim(),
        basis: span.rows().to_vec(),
        pivots: span.pivots().to_vec(),
    }
}

/// A catalog map cut down to coordinate subspaces, with its codomain
/// compressed to the exact span of its values.
#[derive(Clone, Debug)]
pub struct RestrictedMap {
    parent: Arc<BilinearMap>,
    a_pattern: Option<SubspacePattern>,
    b_pattern: Option<SubspacePattern>,
    a_coords: Vec<usize>,
    b_coords: Vec<usize>,
    codomain: Echelon,
    map: Arc<BilinearMap>,
}

impl RestrictedMap {
    /// Restricts to arbitrary coordinate index sets of the parent's domain.
    pub fn from_coordinates(
        parent: &Arc<BilinearMap>,
        a_coords: Vec<usize>,
        b_coords: Vec<usize>,
        id: String,
    ) -> Result<RestrictedMap> {
        let (r, s, _) = parent.dims();
        for (coords, n) in [(&a_coords, r), (&b_coords, s)] {
            if coords.iter().any(|&c| c >= n) || coords.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::IncompatiblePattern(
                    "coordinates must be strictly increasing and in range".into(),
                ));
            }
        }
        let codomain = span_of_pairs(parent, &a_coords, &b_coords);
        let map = BilinearMap::restricted(
            id,
            Arc::clone(parent),
            a_coords.clone(),
            b_coords.clone(),
            codomain.clone(),
        );
        Ok(RestrictedMap {
            parent: Arc::clone(parent),
            a_pattern: None,
            b_pattern: None,
            a_coords,
            b_coords,
            codomain,
            map: Arc::new(map),
        })
    }

    /// First `r` coordinates of the first factor, first `s` of the second.
    pub fn leading(parent: &Arc<BilinearMap>, r: usize, s: usize) -> Result<RestrictedMap> {
        let id = format!("{}[..{r},..{s}]", parent.id());
        RestrictedMap::from_coordinates(parent, (0..r).collect(), (0..s).collect(), id)
    }

    pub fn parent(&self) -> &Arc<BilinearMap> {
        &self.parent
    }

    pub fn a_pattern(&self) -> Option<&SubspacePattern> {
        self.a_pattern.as_ref()
    }

    pub fn b_pattern(&self) -> Option<&SubspacePattern> {
        self.b_pattern.as_ref()
    }

    /// `(r', s', k')` with `k'` the image-span dimension.
    pub fn dims(&self) -> (usize, usize, usize) {
        self.map.dims()
    }

    /// The compressed map `R^r' × R^s' → R^k'`.
    pub fn map(&self) -> &Arc<BilinearMap> {
        &self.map
    }

    pub fn codomain_basis(&self) -> &[Vec<Scalar>] {
        self.codomain.rows()
    }

    pub fn codomain(&self) -> &Echelon {
        &self.codomain
    }

    /// Parent value at the embedded arguments, in the parent's raw codomain.
    pub fn evaluate_raw(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vec<Scalar>> {
        let (r, s, _) = self.parent.dims();
        let embed = |v: &[Scalar], coords: &[usize], n: usize| -> Result<Vec<Scalar>> {
            if v.len() != coords.len() {
                return Err(Error::DimensionMismatch {
                    expected: coords.len(),
                    got: v.len(),
                });
            }
            let mut out = crate::scalar::zeros(n);
            for (val, &c) in v.iter().zip(coords) {
                out[c] = val.clone();
            }
            Ok(out)
        };
        self.parent
            .evaluate(&embed(x, &self.a_coords, r)?, &embed(y, &self.b_coords, s)?)
    }

    /// Coordinates in the codomain basis; `None` if `raw` is outside it.
    pub fn compress(&self, raw: &[Scalar]) -> Option<Vec<Scalar>> {
        self.codomain.coordinates(raw)
    }

    pub fn expand(&self, coords: &[Scalar]) -> Vec<Scalar> {
        self.codomain.expand(coords)
    }
}

/// Restricts `map` to the subspaces described by the two patterns.
pub fn restrict(
    map: &Arc<BilinearMap>,
    a_pattern: &SubspacePattern,
    b_pattern: &SubspacePattern,
) -> Result<RestrictedMap> {
    let widths = |levels: &[crate::algebra::Level]| levels.iter().map(|l| l.dim()).collect::<Vec<_>>();
    let a_coords = a_pattern.coordinates(&widths(&map.slots().a))?;
    let b_coords = b_pattern.coordinates(&widths(&map.slots().b))?;
    let id = format!("{}|a={a_pattern}|b={b_pattern}", map.id());
    let mut rm = RestrictedMap::from_coordinates(map, a_coords, b_coords, id)?;
    rm.a_pattern = Some(a_pattern.clone());
    rm.b_pattern = Some(b_pattern.clone());
    Ok(rm)
}

/// One line of the restriction table of the main map.
#[derive(Clone, Debug, Serialize)]
pub struct NewnblRow {
    pub label: &'static str,
    pub a_pattern: SubspacePattern,
    pub b_pattern: SubspacePattern,
    pub claimed: (usize, usize, usize),
    pub computed: (usize, usize, usize),
    pub matches: bool,
    /// Slot-0 pattern pairs that reproduce `claimed` exactly. Only scanned
    /// for rows that do not match.
    pub alternatives: Vec<Alternative>,
    #[serde(skip)]
    pub restricted: RestrictedMap,
}

#[derive(Clone, Debug, Serialize)]
pub struct Alternative {
    pub a_pattern: SubspacePattern,
    pub b_pattern: SubspacePattern,
    pub dims: (usize, usize, usize),
    #[serde(skip)]
    pub restricted: RestrictedMap,
}

/// Row label, `a` pattern, `b` pattern, tabulated `(r, s, k)`.
pub const NEWNBL_ROWS: [(&str, &str, &str, (usize, usize, usize)); 7] = [
    ("r1", "o,o,o,0", "o,o,o,o", (24, 32, 47)),
    ("r2", "rq,o,o,0", "rq,o,o,o", (21, 29, 43)),
    ("r3", "rz,o,o,0", "rz,o,o,o", (19, 27, 41)),
    ("r4", "rz,o,o,0", "rzq,o,o,o", (19, 31, 45)),
    ("r5", "rzq,o,o,0", "rq,o,o,o", (23, 27, 45)),
    ("r6", "rq,o,o,o", "rq,o,o,o", (29, 29, 51)),
    ("r7", "z,o,o,o", "z,o,o,o", (26, 26, 48)),
];

/// Computes every row of the table on the main map, compares with the
/// tabulated dimensions, and scans slot-0 alternatives for rows that differ.
pub fn newnbl_table() -> Result<Vec<NewnblRow>> {
    let main = Arc::new(builtin("main_f")?);
    // materialize the tensor once before fanning out
    main.as_tensor();
    NEWNBL_ROWS
        .par_iter()
        .map(|&(label, a, b, claimed)| {
            let (a_pattern, b_pattern): (SubspacePattern, SubspacePattern) = (a.parse()?, b.parse()?);
            let restricted = restrict(&main, &a_pattern, &b_pattern)?;
            let computed = restricted.dims();
            let matches = computed == claimed;
            let alternatives = if matches {
                Vec::new()
            } else {
                scan_slot0_alternatives(&main, &a_pattern, &b_pattern, claimed)?
            };
            Ok(NewnblRow {
                label,
                a_pattern,
                b_pattern,
                claimed,
                computed,
                matches,
                alternatives,
                restricted,
            })
        })
        .collect()
}

fn scan_slot0_alternatives(
    main: &Arc<BilinearMap>,
    a_pattern: &SubspacePattern,
    b_pattern: &SubspacePattern,
    target: (usize, usize, usize),
) -> Result<Vec<Alternative>> {
    let mut found = Vec::new();
    for pa in SlotPattern::ALL {
        for pb in SlotPattern::ALL {
            let a = a_pattern.with_slot(0, pa);
            let b = b_pattern.with_slot(0, pb);
            if (a.dim(), b.dim()) != (target.0, target.1) {
                continue;
            }
            let rm = restrict(main, &a, &b)?;
            if rm.dims() == target {
                found.push(Alternative {
                    a_pattern: a,
                    b_pattern: b,
                    dims: rm.dims(),
                    restricted: rm,
                });
            }
        }
    }
    Ok(found)
}

/// Aligned text rendering of the table.
pub fn format_newnbl_table(rows: &[NewnblRow]) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{:<4} {:<10} {:<10} {:<14} {:<14} {}\n",
        "row", "a", "b", "computed", "claimed", "status"
    ));
    let triple = |t: (usize, usize, usize)| format!("({},{},{})", t.0, t.1, t.2);
    for row in rows {
        let status = if row.matches { "match".to_string() } else { "MISMATCH".to_string() };
        out.push_str(&format!(
            "{:<4} {:<10} {:<10} {:<14} {:<14} {}\n",
            row.label,
            row.a_pattern.to_string(),
            row.b_pattern.to_string(),
            triple(row.computed),
            triple(row.claimed),
            status
        ));
        for alt in &row.alternatives {
            out.push_str(&format!(
                "     alternative a={} b={} reproduces {}\n",
                alt.a_pattern,
                alt.b_pattern,
                triple(alt.dims)
            ));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ints};

    fn main_f() -> Arc<BilinearMap> {
        Arc::new(builtin("main_f").unwrap())
    }

    #[test]
    fn pattern_dims_and_parsing() {
        let dims: Vec<usize> = SlotPattern::ALL.iter().map(|p| p.dim()).collect();
        assert_eq!(dims, vec![0, 1, 2, 4, 8, 5, 3, 7]);
        let p: SubspacePattern = "rzq, o,o,0".parse().unwrap();
        assert_eq!(p.dim(), 23);
        assert_eq!(p.to_string(), "rzq,o,o,0");
        assert!("o,x".parse::<SubspacePattern>().is_err());
        assert!("".parse::<SubspacePattern>().is_err());
        for sp in SlotPattern::ALL {
            assert!(sp.indices().windows(2).all(|w| w[0] < w[1]));
            assert!(sp.indices().iter().all(|&i| i < 8));
        }
    }

    #[test]
    fn incompatible_patterns() {
        let f = main_f();
        let three: SubspacePattern = "o,o,o".parse().unwrap();
        assert!(matches!(
            restrict(&f, &three, &SubspacePattern::full(4)),
            Err(Error::IncompatiblePattern(_))
        ));
        let c = Arc::new(builtin("complex_mul").unwrap());
        let q: SubspacePattern = "q".parse().unwrap();
        let z: SubspacePattern = "z".parse().unwrap();
        assert!(restrict(&c, &q, &z).is_err());
        assert_eq!(restrict(&c, &z, &z).unwrap().dims(), (2, 2, 2));
    }

    #[test]
    fn image_spans() {
        assert_eq!(image_span(&builtin("commutator_map").unwrap()).dimension, 7);
        assert_eq!(image_span(&builtin("octonion_mul").unwrap()).dimension, 8);
        assert_eq!(image_span(&builtin("poly_mul(3,4)").unwrap()).dimension, 6);
        let span = image_span(&builtin("commutator_map").unwrap());
        assert!(span.pivots.iter().all(|&p| p != 0));
    }

    #[test]
    fn first_row_dimensions() {
        let f = main_f();
        let rm = restrict(&f, &"o,o,o,0".parse().unwrap(), &SubspacePattern::full(4)).unwrap();
        assert_eq!(rm.dims(), (24, 32, 47));
    }

    #[test]
    fn full_restriction_is_compression_only() {
        let f = Arc::new(builtin("lam_map").unwrap());
        let rm = restrict(&f, &SubspacePattern::full(2), &SubspacePattern::full(2)).unwrap();
        assert_eq!(rm.dims(), (16, 16, image_span(&f).dimension));
    }

    #[test]
    fn compress_then_expand() {
        let f = main_f();
        let rm = restrict(&f, &"rz,o,o,0".parse().unwrap(), &"rz,o,o,o".parse().unwrap()).unwrap();
        let x: Vec<Scalar> = (0..19).map(|i| int(i % 5 - 2)).collect();
        let y: Vec<Scalar> = (0..27).map(|i| int(i % 7 - 3)).collect();
        let raw = rm.evaluate_raw(&x, &y).unwrap();
        let c = rm.compress(&raw).expect("value lies in the span");
        assert_eq!(rm.expand(&c), raw);
        assert_eq!(rm.map().evaluate(&x, &y).unwrap(), c);
    }

    #[test]
    fn leading_restriction_of_octonions() {
        let f = Arc::new(builtin("octonion_mul").unwrap());
        assert_eq!(RestrictedMap::leading(&f, 3, 3).unwrap().dims(), (3, 3, 4));
        assert_eq!(RestrictedMap::leading(&f, 2, 2).unwrap().dims(), (2, 2, 2));
        let bad = RestrictedMap::from_coordinates(&f, vec![1, 0], vec![0], "bad".into());
        assert!(bad.is_err());
        let rm = RestrictedMap::leading(&f, 1, 8).unwrap();
        assert_eq!(rm.map().evaluate(&ints(&[2]), &ints(&[1, 0, 0, 0, 0, 0, 0, 1])).unwrap().len(), 8);
    }
}
