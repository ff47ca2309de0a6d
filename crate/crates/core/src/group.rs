//! The groups `P2 ⊂ U2 ⊂ SL2 ⊂ GL2` over `F_q`, the products `SL2 x SL2` and
//! `GL2 x GL2`, and their action on `F_q[x1, x2, y1, y2]`.
//!
//! A pair `(A, B)` sends the covector coordinates through the contragredient
//! of `A`,
//!
//! ```text
//! x1 -> det(A)^-1 ( d x1 - c x2),   x2 -> det(A)^-1 (-b x1 + a x2),
//! ```
//!
//! and the vector coordinates through `B` itself,
//! `y1 -> a' y1 + b' y2`, `y2 -> c' y1 + d' y2`. The single-matrix groups
//! use the diagonal pair `(A, A)`.
//!
//! Acting is substitution, so it composes contravariantly:
//! `act(g * h, f) = act(h, act(g, f))`.

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use crate::gf::{Fe, FieldSpec};
use crate::poly::{Monomial, Poly, PolyError, Var};

/// Largest group that [`Group::enumerate`] will list.
pub const MAX_ENUMERATION: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("matrix is singular")]
    Singular,
    #[error("matrices or polynomial over different fields")]
    FieldMismatch,
    #[error("group of order {0} exceeds the enumeration bound")]
    TooLarge(u64),
    #[error("cannot parse matrix {0:?}")]
    Parse(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// An invertible matrix `[[a, b], [c, d]]`.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat2 {
    field: FieldSpec,
    entries: [Fe; 4],
    det: Fe,
}

impl fmt::Debug for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = |e: Fe| self.field.format_elem(e);
        let [a, b, c, d] = self.entries;
        write!(f, "[[{},{}],[{},{}]]", s(a), s(b), s(c), s(d))
    }
}

impl Mat2 {
    pub fn new(field: &FieldSpec, a: Fe, b: Fe, c: Fe, d: Fe) -> Result<Self, GroupError> {
        let det = field.sub(field.mul(a, d), field.mul(b, c));
        if det.is_zero() {
            return Err(GroupError::Singular);
        }
        Ok(Mat2 { field: field.clone(), entries: [a, b, c, d], det })
    }

    pub fn identity(field: &FieldSpec) -> Self {
        Self::new(field, Fe::ONE, Fe::ZERO, Fe::ZERO, Fe::ONE).unwrap()
    }

    /// `[[1, t], [0, 1]]`
    pub fn upper(field: &FieldSpec, t: Fe) -> Self {
        Self::new(field, Fe::ONE, t, Fe::ZERO, Fe::ONE).unwrap()
    }

    /// `[[1, 0], [t, 1]]`
    pub fn lower(field: &FieldSpec, t: Fe) -> Self {
        Self::new(field, Fe::ONE, Fe::ZERO, t, Fe::ONE).unwrap()
    }

    pub fn diag(field: &FieldSpec, s: Fe, t: Fe) -> Result<Self, GroupError> {
        Self::new(field, s, Fe::ZERO, Fe::ZERO, t)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    /// `[a, b, c, d]`
    pub fn entries(&self) -> [Fe; 4] {
        self.entries
    }

    pub fn det(&self) -> Fe {
        self.det
    }

    pub fn mul(&self, other: &Mat2) -> Result<Mat2, GroupError> {
        if self.field != other.field {
            return Err(GroupError::FieldMismatch);
        }
        let k = &self.field;
        let [a, b, c, d] = self.entries;
        let [e, f, g, h] = other.entries;
        Mat2::new(
            k,
            k.add(k.mul(a, e), k.mul(b, g)),
            k.add(k.mul(a, f), k.mul(b, h)),
            k.add(k.mul(c, e), k.mul(d, g)),
            k.add(k.mul(c, f), k.mul(d, h)),
        )
    }

    pub fn parse(field: &FieldSpec, s: &str) -> Result<Mat2, GroupError> {
        let err = || GroupError::Parse(s.to_string());
        let inner = s
            .trim()
            .strip_prefix("[[")
            .and_then(|r| r.strip_suffix("]]"))
            .ok_or_else(err)?;
        let (r1, r2) = inner.split_once("],[").ok_or_else(err)?;
        let mut vals = Vec::with_capacity(4);
        for part in r1.split(',').chain(r2.split(',')) {
            vals.push(field.parse_elem(part).map_err(|_| err())?);
        }
        if vals.len() != 4 {
            return Err(err());
        }
        Mat2::new(field, vals[0], vals[1], vals[2], vals[3])
    }
}

/// A group element acting on the x-block through the contragredient of
/// `x_matrix` and on the y-block through `y_matrix`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ActionSpec {
    pub x_matrix: Mat2,
    pub y_matrix: Mat2,
}

impl fmt::Display for ActionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.x_matrix == self.y_matrix {
            write!(f, "{}", self.x_matrix)
        } else {
            write!(f, "({}, {})", self.x_matrix, self.y_matrix)
        }
    }
}

impl ActionSpec {
    /// The diagonal element `A -> diag((A^t)^-1, A)`.
    pub fn diagonal(a: Mat2) -> Self {
        ActionSpec { x_matrix: a.clone(), y_matrix: a }
    }

    pub fn pair(x_matrix: Mat2, y_matrix: Mat2) -> Result<Self, GroupError> {
        if x_matrix.field != y_matrix.field {
            return Err(GroupError::FieldMismatch);
        }
        Ok(ActionSpec { x_matrix, y_matrix })
    }

    pub fn identity(field: &FieldSpec) -> Self {
        Self::diagonal(Mat2::identity(field))
    }

    pub fn field(&self) -> &FieldSpec {
        self.x_matrix.field()
    }

    pub fn compose(&self, other: &ActionSpec) -> Result<ActionSpec, GroupError> {
        Ok(ActionSpec {
            x_matrix: self.x_matrix.mul(&other.x_matrix)?,
            y_matrix: self.y_matrix.mul(&other.y_matrix)?,
        })
    }

    fn key(&self) -> [u32; 8] {
        let [a, b, c, d] = self.x_matrix.entries;
        let [e, f, g, h] = self.y_matrix.entries;
        [a.0, b.0, c.0, d.0, e.0, f.0, g.0, h.0]
    }

    /// Images of `x1, x2, y1, y2` as linear forms.
    pub fn variable_images(&self) -> [Poly; 4] {
        let k = self.field();
        let lin = |pairs: [(Var, Fe); 2]| {
            Poly::from_terms(k, pairs.into_iter().map(|(v, c)| (Monomial::var(v), c)))
        };
        let [a, b, c, d] = self.x_matrix.entries;
        let di = k.inv(self.x_matrix.det).expect("invertible");
        let x1 = lin([(Var::X1, k.mul(di, d)), (Var::X2, k.neg(k.mul(di, c)))]);
        let x2 = lin([(Var::X1, k.neg(k.mul(di, b))), (Var::X2, k.mul(di, a))]);
        let [a, b, c, d] = self.y_matrix.entries;
        let y1 = lin([(Var::Y1, a), (Var::Y2, b)]);
        let y2 = lin([(Var::Y1, c), (Var::Y2, d)]);
        [x1, x2, y1, y2]
    }

    /// The image of `f` under this element.
    pub fn act(&self, f: &Poly) -> Result<Poly, GroupError> {
        if f.field() != self.field() {
            return Err(GroupError::FieldMismatch);
        }
        Ok(f.substitute_linear(&self.variable_images())?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum GroupKind {
    P2,
    U2,
    SL2,
    GL2,
    SL2xSL2,
    GL2xGL2,
}

impl GroupKind {
    pub fn name(self) -> &'static str {
        match self {
            GroupKind::P2 => "P2",
            GroupKind::U2 => "U2",
            GroupKind::SL2 => "SL2",
            GroupKind::GL2 => "GL2",
            GroupKind::SL2xSL2 => "SL2xSL2",
            GroupKind::GL2xGL2 => "GL2xGL2",
        }
    }

    pub const ALL: [GroupKind; 6] = [
        GroupKind::P2,
        GroupKind::U2,
        GroupKind::SL2,
        GroupKind::GL2,
        GroupKind::SL2xSL2,
        GroupKind::GL2xGL2,
    ];

    /// Case-insensitive; accepts the names above.
    pub fn parse(s: &str) -> Result<GroupKind, GroupError> {
        GroupKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| GroupError::Parse(format!("unknown group {s:?}")))
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One of the groups above, over a specific field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Group {
    pub kind: GroupKind,
    pub field: FieldSpec,
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(F_{})", self.kind, self.field.order())
    }
}

impl Group {
    pub fn new(kind: GroupKind, field: &FieldSpec) -> Self {
        Group { kind, field: field.clone() }
    }

    pub fn order(&self) -> u64 {
        let q = self.field.order() as u64;
        let sl2 = q * (q * q - 1);
        let gl2 = (q * q - 1) * (q * q - q);
        match self.kind {
            GroupKind::P2 => q,
            GroupKind::U2 => q * (q - 1),
            GroupKind::SL2 => sl2,
            GroupKind::GL2 => gl2,
            GroupKind::SL2xSL2 => sl2 * sl2,
            GroupKind::GL2xGL2 => gl2 * gl2,
        }
    }

    fn member(&self, m: &Mat2) -> bool {
        let [_, _, c, d] = m.entries;
        match self.kind {
            GroupKind::P2 => m.entries[0] == Fe::ONE && c.is_zero() && d == Fe::ONE,
            GroupKind::U2 => c.is_zero() && m.det == Fe::ONE,
            GroupKind::SL2 | GroupKind::SL2xSL2 => m.det == Fe::ONE,
            GroupKind::GL2 | GroupKind::GL2xGL2 => true,
        }
    }

    fn matrices(&self) -> Vec<Mat2> {
        let k = &self.field;
        let els: Vec<Fe> = k.enumerate().collect();
        let mut out = Vec::new();
        for &a in &els {
            for &b in &els {
                for &c in &els {
                    for &d in &els {
                        if let Ok(m) = Mat2::new(k, a, b, c, d) {
                            if self.member(&m) {
                                out.push(m);
                            }
                        }
                    }
                }
            }
        }
        out
    }

    fn is_product(&self) -> bool {
        matches!(self.kind, GroupKind::SL2xSL2 | GroupKind::GL2xGL2)
    }

    /// Every element, in a deterministic order.
    pub fn enumerate(&self) -> Result<Vec<ActionSpec>, GroupError> {
        let n = self.order();
        if n > MAX_ENUMERATION {
            return Err(GroupError::TooLarge(n));
        }
        let mats = self.matrices();
        if !self.is_product() {
            return Ok(mats.into_iter().map(ActionSpec::diagonal).collect());
        }
        let mut out = Vec::with_capacity(n as usize);
        for a in &mats {
            for b in &mats {
                out.push(ActionSpec { x_matrix: a.clone(), y_matrix: b.clone() });
            }
        }
        Ok(out)
    }

    fn matrix_generators(&self) -> Vec<Mat2> {
        let k = &self.field;
        let basis = k.prime_basis();
        let g = k.primitive_element();
        let mut out: Vec<Mat2> = basis.iter().map(|&t| Mat2::upper(k, t)).collect();
        match self.kind {
            GroupKind::P2 => {}
            GroupKind::U2 => {
                if k.order() > 2 {
                    out.push(Mat2::diag(k, g, k.inv(g).unwrap()).unwrap());
                }
            }
            GroupKind::SL2 | GroupKind::SL2xSL2 => {
                out.extend(basis.iter().map(|&t| Mat2::lower(k, t)));
            }
            GroupKind::GL2 | GroupKind::GL2xGL2 => {
                out.extend(basis.iter().map(|&t| Mat2::lower(k, t)));
                if k.order() > 2 {
                    out.push(Mat2::diag(k, g, Fe::ONE).unwrap());
                }
            }
        }
        out
    }

    /// A generating set: transvections over an `F_p`-basis of `F_q`, plus
    /// `diag(g, g^-1)` for `U2` and `diag(g, 1)` for `GL2`, with `g` the
    /// primitive element. Product groups use `(s, 1)` and `(1, s)`.
    pub fn generators(&self) -> Vec<ActionSpec> {
        let mats = self.matrix_generators();
        if !self.is_product() {
            return mats.into_iter().map(ActionSpec::diagonal).collect();
        }
        let id = Mat2::identity(&self.field);
        let mut out = Vec::with_capacity(2 * mats.len());
        for m in &mats {
            out.push(ActionSpec { x_matrix: m.clone(), y_matrix: id.clone() });
        }
        for m in &mats {
            out.push(ActionSpec { x_matrix: id.clone(), y_matrix: m.clone() });
        }
        out
    }

    /// Whether `f` is fixed by every generator.
    pub fn is_invariant(&self, f: &Poly) -> Result<bool, GroupError> {
        for g in self.generators() {
            if g.act(f)? != *f {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether `f` is fixed by every group element.
    pub fn is_invariant_exhaustive(&self, f: &Poly) -> Result<bool, GroupError> {
        for g in self.enumerate()? {
            if g.act(f)? != *f {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// The subgroup generated by `gens`, by breadth-first closure.
pub fn closure(field: &FieldSpec, gens: &[ActionSpec]) -> Result<Vec<ActionSpec>, GroupError> {
    let id = ActionSpec::identity(field);
    let mut seen: HashSet<[u32; 8]> = HashSet::from([id.key()]);
    let mut out = vec![id];
    let mut frontier = 0;
    while frontier < out.len() {
        let cur = out[frontier].clone();
        frontier += 1;
        for g in gens {
            let next = cur.compose(g)?;
            if seen.insert(next.key()) {
                if seen.len() as u64 > MAX_ENUMERATION {
                    return Err(GroupError::TooLarge(seen.len() as u64));
                }
                out.push(next);
            }
        }
    }
    Ok(out)
}

/// Representatives `diag(z, 1)`, `z ∈ F_q^*`, of the cosets of `SL2` in `GL2`.
pub fn coset_reps_gl2_over_sl2(field: &FieldSpec) -> Vec<ActionSpec> {
    field
        .enumerate_nonzero()
        .map(|z| ActionSpec::diagonal(Mat2::diag(field, z, Fe::ONE).unwrap()))
        .collect()
}
