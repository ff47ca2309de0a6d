//! Named invariants of `F_q[x1, x2, y1, y2]`, the identities among them, and
//! the candidate free-module bases built from them.
//!
//! | name  | polynomial                                           | degree    |
//! |-------|------------------------------------------------------|-----------|
//! | d22   | `det[[x2, x2^q], [x1, x1^q]]`                        | q + 1     |
//! | c21   | `det[[x2, x2^(q^2)], [x1, x1^(q^2)]] / d22`          | q^2 - q   |
//! | phi1  | `x1`                                                 | 1         |
//! | phi2  | `x2^q - x2 x1^(q-1)`                                 | q         |
//! | u0    | `x1 y1 + x2 y2`                                      | 2         |
//! | u1    | `x1^q y1 + x2^q y2`                                  | q + 1     |
//! | h_s   | `(u1^(s+1) d22s^(q-s-1) + u1s^(q-s) d22^s) / u0^q`   | q^2 - q   |
//!
//! A trailing `s` marks the image under the star involution.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf::FieldSpec;
use crate::poly::{Poly, PolyError, Var};

/// Catalogs are built for `q` up to this bound.
pub const MAX_CATALOG_Q: u32 = 64;

/// Identity witnesses are shown with at most this many terms.
const WITNESS_TERMS: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("exact division failed while building {name}: {source}")]
    DivisionFailed { name: String, source: PolyError },
    #[error("unknown identity tag {0:?}")]
    UnknownTag(String),
    #[error("unknown invariant name {0:?}")]
    UnknownName(String),
    #[error("unknown basis {0:?}")]
    UnknownBasis(String),
    #[error("index s = {s} out of range for q = {q}")]
    BadIndex { s: u32, q: u32 },
    #[error("q = {0} is outside the supported range")]
    UnsupportedQ(u32),
}

/// A named invariant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Inv {
    D22,
    C21,
    D22s,
    C21s,
    Phi1,
    Phi2,
    Phi1s,
    Phi2s,
    U0,
    U1,
    U1s,
    H(u32),
}

impl Inv {
    pub fn degree(self, q: u32) -> u32 {
        match self {
            Inv::Phi1 | Inv::Phi1s => 1,
            Inv::Phi2 | Inv::Phi2s => q,
            Inv::U0 => 2,
            Inv::U1 | Inv::U1s | Inv::D22 | Inv::D22s => q + 1,
            Inv::C21 | Inv::C21s | Inv::H(_) => q * q - q,
        }
    }

    /// Star image; `H(s)` maps to `H(q - 1 - s)`.
    pub fn star(self, q: u32) -> Inv {
        match self {
            Inv::D22 => Inv::D22s,
            Inv::D22s => Inv::D22,
            Inv::C21 => Inv::C21s,
            Inv::C21s => Inv::C21,
            Inv::Phi1 => Inv::Phi1s,
            Inv::Phi1s => Inv::Phi1,
            Inv::Phi2 => Inv::Phi2s,
            Inv::Phi2s => Inv::Phi2,
            Inv::U0 => Inv::U0,
            Inv::U1 => Inv::U1s,
            Inv::U1s => Inv::U1,
            Inv::H(s) => Inv::H(q - 1 - s),
        }
    }

    pub fn parse(s: &str) -> Result<Inv, InvariantError> {
        let inv = match s.trim() {
            "d22" => Inv::D22,
            "c21" => Inv::C21,
            "d22s" => Inv::D22s,
            "c21s" => Inv::C21s,
            "phi1" => Inv::Phi1,
            "phi2" => Inv::Phi2,
            "phi1s" => Inv::Phi1s,
            "phi2s" => Inv::Phi2s,
            "u0" => Inv::U0,
            "u1" => Inv::U1,
            "u1s" => Inv::U1s,
            other => {
                let idx = other
                    .strip_prefix("h_")
                    .or_else(|| other.strip_prefix('h'))
                    .and_then(|n| n.parse().ok())
                    .ok_or_else(|| InvariantError::UnknownName(s.to_string()))?;
                Inv::H(idx)
            }
        };
        Ok(inv)
    }
}

impl fmt::Display for Inv {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Inv::D22 => f.write_str("d22"),
            Inv::C21 => f.write_str("c21"),
            Inv::D22s => f.write_str("d22s"),
            Inv::C21s => f.write_str("c21s"),
            Inv::Phi1 => f.write_str("phi1"),
            Inv::Phi2 => f.write_str("phi2"),
            Inv::Phi1s => f.write_str("phi1s"),
            Inv::Phi2s => f.write_str("phi2s"),
            Inv::U0 => f.write_str("u0"),
            Inv::U1 => f.write_str("u1"),
            Inv::U1s => f.write_str("u1s"),
            Inv::H(s) => write!(f, "h_{s}"),
        }
    }
}

/// The four Dickson-type generators of the `SL2 x SL2` invariants.
#[derive(Debug, Clone)]
pub struct Dickson {
    pub d22: Poly,
    pub c21: Poly,
    pub d22s: Poly,
    pub c21s: Poly,
}

fn var(k: &FieldSpec, v: Var) -> Poly {
    Poly::var(k, v)
}

/// `det[[a, a^e], [b, b^e]] = a b^e - a^e b` for variables `a`, `b`.
fn power_det(k: &FieldSpec, a: Var, b: Var, e: u32) -> Poly {
    let (pa, pb) = (var(k, a), var(k, b));
    &pa * &pb.pow(e) - &pa.pow(e) * &pb
}

fn checked_q(k: &FieldSpec) -> Result<u32, InvariantError> {
    let q = k.order();
    if q > MAX_CATALOG_Q {
        return Err(InvariantError::UnsupportedQ(q));
    }
    Ok(q)
}

pub fn build_dickson(k: &FieldSpec) -> Result<Dickson, InvariantError> {
    let q = checked_q(k)?;
    let d22 = power_det(k, Var::X2, Var::X1, q);
    let c21 = power_det(k, Var::X2, Var::X1, q * q)
        .exact_div(&d22)
        .map_err(|source| InvariantError::DivisionFailed { name: "c21".into(), source })?;
    let d22s = power_det(k, Var::Y1, Var::Y2, q);
    let c21s = power_det(k, Var::Y1, Var::Y2, q * q)
        .exact_div(&d22s)
        .map_err(|source| InvariantError::DivisionFailed { name: "c21s".into(), source })?;
    Ok(Dickson { d22, c21, d22s, c21s })
}

#[derive(Debug, Clone)]
pub struct PhisAndUs {
    pub phi1: Poly,
    pub phi2: Poly,
    pub phi1s: Poly,
    pub phi2s: Poly,
    pub u0: Poly,
    pub u1: Poly,
    pub u1s: Poly,
}

pub fn build_phis_and_us(k: &FieldSpec) -> Result<PhisAndUs, InvariantError> {
    let q = checked_q(k)?;
    let [x1, x2, y1, y2] = Var::ALL.map(|v| var(k, v));
    Ok(PhisAndUs {
        phi1: x1.clone(),
        phi2: x2.pow(q) - &x2 * &x1.pow(q - 1),
        phi1s: y2.clone(),
        phi2s: y1.pow(q) - &y1 * &y2.pow(q - 1),
        u0: &x1 * &y1 + &x2 * &y2,
        u1: &x1.pow(q) * &y1 + &x2.pow(q) * &y2,
        u1s: &x1 * &y1.pow(q) + &x2 * &y2.pow(q),
    })
}

/// `h_s` by exact division of its defining numerator by `u0^q`.
pub fn build_h(dk: &Dickson, pu: &PhisAndUs, s: u32) -> Result<Poly, InvariantError> {
    let q = dk.d22.field().order();
    if s >= q {
        return Err(InvariantError::BadIndex { s, q });
    }
    let num = pu.u1.pow(s + 1) * dk.d22s.pow(q - s - 1) + pu.u1s.pow(q - s) * dk.d22.pow(s);
    num.exact_div(&pu.u0.pow(q))
        .map_err(|source| InvariantError::DivisionFailed { name: format!("h_{s}"), source })
}

/// Every named invariant for one field.
#[derive(Debug, Clone)]
pub struct InvariantCatalog {
    field: FieldSpec,
    dickson: Dickson,
    pu: PhisAndUs,
    h: Vec<Poly>,
}

impl InvariantCatalog {
    pub fn new(k: &FieldSpec) -> Result<Self, InvariantError> {
        let dickson = build_dickson(k)?;
        let pu = build_phis_and_us(k)?;
        let h = (0..k.order())
            .map(|s| build_h(&dickson, &pu, s))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(InvariantCatalog { field: k.clone(), dickson, pu, h })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn q(&self) -> u32 {
        self.field.order()
    }

    pub fn get(&self, inv: Inv) -> Option<&Poly> {
        let (d, p) = (&self.dickson, &self.pu);
        Some(match inv {
            Inv::D22 => &d.d22,
            Inv::C21 => &d.c21,
            Inv::D22s => &d.d22s,
            Inv::C21s => &d.c21s,
            Inv::Phi1 => &p.phi1,
            Inv::Phi2 => &p.phi2,
            Inv::Phi1s => &p.phi1s,
            Inv::Phi2s => &p.phi2s,
            Inv::U0 => &p.u0,
            Inv::U1 => &p.u1,
            Inv::U1s => &p.u1s,
            Inv::H(s) => return self.h.get(s as usize),
        })
    }

    fn at(&self, inv: Inv) -> &Poly {
        self.get(inv).expect("index checked by caller")
    }

    pub fn by_name(&self, name: &str) -> Result<&Poly, InvariantError> {
        let inv = Inv::parse(name)?;
        self.get(inv).ok_or_else(|| InvariantError::UnknownName(name.to_string()))
    }

    /// All entries with their declared degrees.
    pub fn entries(&self) -> Vec<(Inv, &Poly, u32)> {
        let q = self.q();
        let mut names = vec![
            Inv::D22,
            Inv::C21,
            Inv::D22s,
            Inv::C21s,
            Inv::Phi1,
            Inv::Phi2,
            Inv::Phi1s,
            Inv::Phi2s,
            Inv::U0,
            Inv::U1,
            Inv::U1s,
        ];
        names.extend((0..q).map(Inv::H));
        names.into_iter().map(|n| (n, self.at(n), n.degree(q))).collect()
    }
}

/// Memoized powers of catalog entries.
pub struct PowerCache<'a> {
    catalog: &'a InvariantCatalog,
    cache: HashMap<(Inv, u32), Poly>,
}

impl<'a> PowerCache<'a> {
    pub fn new(catalog: &'a InvariantCatalog) -> Self {
        PowerCache { catalog, cache: HashMap::new() }
    }

    pub fn pow(&mut self, inv: Inv, e: u32) -> Result<Poly, InvariantError> {
        if e == 0 {
            return Ok(Poly::one(self.catalog.field()));
        }
        if let Some(p) = self.cache.get(&(inv, e)) {
            return Ok(p.clone());
        }
        let base = self
            .catalog
            .get(inv)
            .ok_or_else(|| InvariantError::UnknownName(inv.to_string()))?
            .clone();
        let p = if e == 1 { base } else { &self.pow(inv, e - 1)? * &base };
        self.cache.insert((inv, e), p.clone());
        Ok(p)
    }

    /// Product of `inv^e` over the given factors.
    pub fn product(&mut self, factors: &[(Inv, u32)]) -> Result<Poly, InvariantError> {
        let mut acc = Poly::one(self.catalog.field());
        for &(inv, e) in factors {
            if e > 0 {
                acc = &acc * &self.pow(inv, e)?;
            }
        }
        Ok(acc)
    }
}

// ---------------------------------------------------------------------------
// Identities

/// Tags of the polynomial identities checked by [`verify_identity`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum IdentityTag {
    #[serde(rename = "2.3")]
    HypersurfaceRelation,
    #[serde(rename = "2.4")]
    Phi1Phi2,
    #[serde(rename = "2.5")]
    Phi1Phi2Star,
    #[serde(rename = "2.6")]
    Phi1Power,
    #[serde(rename = "2.7")]
    Phi1PowerStar,
    #[serde(rename = "2.8")]
    Phi2Power,
    #[serde(rename = "2.9")]
    Phi2PowerStar,
    #[serde(rename = "3.2")]
    U0Power,
    #[serde(rename = "3.3")]
    U1Power,
    #[serde(rename = "3.4")]
    U1PowerStar,
    #[serde(rename = "3.5")]
    U1ViaPhis,
    #[serde(rename = "3.6")]
    U1ViaPhisStar,
    #[serde(rename = "3.9a")]
    HRecursionDown,
    #[serde(rename = "3.9b")]
    HRecursionUp,
    #[serde(rename = "3.10")]
    HFirst,
    #[serde(rename = "3.11")]
    HLast,
}

impl IdentityTag {
    pub const ALL: [IdentityTag; 16] = [
        IdentityTag::HypersurfaceRelation,
        IdentityTag::Phi1Phi2,
        IdentityTag::Phi1Phi2Star,
        IdentityTag::Phi1Power,
        IdentityTag::Phi1PowerStar,
        IdentityTag::Phi2Power,
        IdentityTag::Phi2PowerStar,
        IdentityTag::U0Power,
        IdentityTag::U1Power,
        IdentityTag::U1PowerStar,
        IdentityTag::U1ViaPhis,
        IdentityTag::U1ViaPhisStar,
        IdentityTag::HRecursionDown,
        IdentityTag::HRecursionUp,
        IdentityTag::HFirst,
        IdentityTag::HLast,
    ];

    pub fn label(self) -> &'static str {
        match self {
            IdentityTag::HypersurfaceRelation => "2.3",
            IdentityTag::Phi1Phi2 => "2.4",
            IdentityTag::Phi1Phi2Star => "2.5",
            IdentityTag::Phi1Power => "2.6",
            IdentityTag::Phi1PowerStar => "2.7",
            IdentityTag::Phi2Power => "2.8",
            IdentityTag::Phi2PowerStar => "2.9",
            IdentityTag::U0Power => "3.2",
            IdentityTag::U1Power => "3.3",
            IdentityTag::U1PowerStar => "3.4",
            IdentityTag::U1ViaPhis => "3.5",
            IdentityTag::U1ViaPhisStar => "3.6",
            IdentityTag::HRecursionDown => "3.9a",
            IdentityTag::HRecursionUp => "3.9b",
            IdentityTag::HFirst => "3.10",
            IdentityTag::HLast => "3.11",
        }
    }

    /// Human-readable statement, `lhs = rhs`.
    pub fn statement(self) -> &'static str {
        match self {
            IdentityTag::HypersurfaceRelation => {
                "u0^q = (phi1 phi1s)^(q-1) u0 + phi1^q phi2s + phi1s^q phi2"
            }
            IdentityTag::Phi1Phi2 => "phi1 phi2 = -d22",
            IdentityTag::Phi1Phi2Star => "phi1s phi2s = -d22s",
            IdentityTag::Phi1Power => "phi1^(q(q-1)+1) = phi1 c21 + d22 phi2^(q-2)",
            IdentityTag::Phi1PowerStar => "phi1s^(q(q-1)+1) = phi1s c21s + d22s phi2s^(q-2)",
            IdentityTag::Phi2Power => "phi2^(q-1) = -phi1^(q(q-1)) + c21",
            IdentityTag::Phi2PowerStar => "phi2s^(q-1) = -phi1s^(q(q-1)) + c21s",
            IdentityTag::U0Power => "u0^(q+1) = u1 u1s - d22 d22s",
            IdentityTag::U1Power => "u1^q = c21 u0^q - d22^(q-1) u1s",
            IdentityTag::U1PowerStar => "u1s^q = c21s u0^q - d22s^(q-1) u1",
            IdentityTag::U1ViaPhis => "u1 = phi1^(q-1) u0 + phi1s phi2",
            IdentityTag::U1ViaPhisStar => "u1s = phi1s^(q-1) u0 + phi1 phi2s",
            IdentityTag::HRecursionDown => {
                "u1s h_s = u0 u1^s d22s^(q-s-1) + d22 h_(s-1), 1 <= s <= q-1"
            }
            IdentityTag::HRecursionUp => {
                "u1 h_s = u0 u1s^(q-s-1) d22^s + d22s h_(s+1), 0 <= s <= q-2"
            }
            IdentityTag::HFirst => "u0 u1s^(q-1) = u1 h_0 - d22s h_1",
            IdentityTag::HLast => "u0 u1^(q-1) = u1s h_(q-1) - d22 h_(q-2)",
        }
    }

    pub fn parse(s: &str) -> Result<IdentityTag, InvariantError> {
        IdentityTag::ALL
            .into_iter()
            .find(|t| t.label() == s.trim())
            .ok_or_else(|| InvariantError::UnknownTag(s.to_string()))
    }
}

impl fmt::Display for IdentityTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn is_pass(self) -> bool {
        self == Status::Pass
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        })
    }
}

/// Outcome of one identity check; `witness` is the nonzero difference
/// `lhs - rhs`, truncated for display.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub q: u32,
    pub tag: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
}

fn truncated(p: &Poly) -> String {
    let shown = Poly::from_terms(p.field(), p.terms().iter().take(WITNESS_TERMS).copied());
    if p.len() > WITNESS_TERMS {
        format!("{shown} + ... ({} terms)", p.len())
    } else {
        shown.to_string()
    }
}

fn report(q: u32, tag: impl Into<String>, diffs: &[(Option<u32>, Poly)]) -> IdentityReport {
    let bad = diffs.iter().find(|(_, d)| !d.is_zero());
    IdentityReport {
        q,
        tag: tag.into(),
        status: Status::from_bool(bad.is_none()),
        witness: bad.map(|(s, d)| match s {
            Some(s) => format!("s={s}: {}", truncated(d)),
            None => truncated(d),
        }),
    }
}

/// Checks one identity exactly; the report carries the difference when it fails.
pub fn verify_identity(cat: &InvariantCatalog, tag: IdentityTag) -> IdentityReport {
    let q = cat.q();
    let g = |i: Inv| cat.at(i);
    let (phi1, phi2, phi1s, phi2s) = (g(Inv::Phi1), g(Inv::Phi2), g(Inv::Phi1s), g(Inv::Phi2s));
    let (u0, u1, u1s) = (g(Inv::U0), g(Inv::U1), g(Inv::U1s));
    let (d22, c21, d22s, c21s) = (g(Inv::D22), g(Inv::C21), g(Inv::D22s), g(Inv::C21s));
    let h = |s: u32| g(Inv::H(s));
    let single = |lhs: Poly, rhs: Poly| vec![(None, lhs - rhs)];
    let diffs: Vec<(Option<u32>, Poly)> = match tag {
        IdentityTag::HypersurfaceRelation => single(
            u0.pow(q),
            (phi1 * phi1s).pow(q - 1) * u0 + phi1.pow(q) * phi2s + phi1s.pow(q) * phi2,
        ),
        IdentityTag::Phi1Phi2 => single(phi1 * phi2, -d22),
        IdentityTag::Phi1Phi2Star => single(phi1s * phi2s, -d22s),
        IdentityTag::Phi1Power => {
            single(phi1.pow(q * (q - 1) + 1), phi1 * c21 + d22 * &phi2.pow(q - 2))
        }
        IdentityTag::Phi1PowerStar => {
            single(phi1s.pow(q * (q - 1) + 1), phi1s * c21s + d22s * &phi2s.pow(q - 2))
        }
        IdentityTag::Phi2Power => single(phi2.pow(q - 1), c21 - &phi1.pow(q * (q - 1))),
        IdentityTag::Phi2PowerStar => single(phi2s.pow(q - 1), c21s - &phi1s.pow(q * (q - 1))),
        IdentityTag::U0Power => single(u0.pow(q + 1), u1 * u1s - d22 * d22s),
        IdentityTag::U1Power => single(u1.pow(q), c21 * &u0.pow(q) - d22.pow(q - 1) * u1s),
        IdentityTag::U1PowerStar => {
            single(u1s.pow(q), c21s * &u0.pow(q) - d22s.pow(q - 1) * u1)
        }
        IdentityTag::U1ViaPhis => single(u1.clone(), phi1.pow(q - 1) * u0 + phi1s * phi2),
        IdentityTag::U1ViaPhisStar => single(u1s.clone(), phi1s.pow(q - 1) * u0 + phi1 * phi2s),
        IdentityTag::HRecursionDown => (1..q)
            .map(|s| {
                let lhs = u1s * h(s);
                let rhs = u0 * &u1.pow(s) * d22s.pow(q - s - 1) + d22 * h(s - 1);
                (Some(s), lhs - rhs)
            })
            .collect(),
        IdentityTag::HRecursionUp => (0..q - 1)
            .map(|s| {
                let lhs = u1 * h(s);
                let rhs = u0 * &u1s.pow(q - s - 1) * d22.pow(s) + d22s * h(s + 1);
                (Some(s), lhs - rhs)
            })
            .collect(),
        IdentityTag::HFirst => single(u0 * &u1s.pow(q - 1), u1 * h(0) - d22s * h(1)),
        IdentityTag::HLast => single(u0 * &u1.pow(q - 1), u1s * h(q - 1) - d22 * h(q - 2)),
    };
    report(q, tag.label(), &diffs)
}

/// The relations tying `h_s` to the Dickson invariants and the star
/// involution: `h_0 = c21s`, `h_(q-1) = c21`, and `star(h_s) = h_(q-1-s)`.
pub fn verify_h_relations(cat: &InvariantCatalog) -> Vec<IdentityReport> {
    let q = cat.q();
    let h = |s: u32| cat.at(Inv::H(s));
    vec![
        report(q, "h0=c21s", &[(None, h(0) - cat.at(Inv::C21s))]),
        report(q, "h(q-1)=c21", &[(None, h(q - 1) - cat.at(Inv::C21))]),
        report(
            q,
            "h*",
            &(0..q).map(|s| (Some(s), h(s).star() - h(q - 1 - s))).collect::<Vec<_>>(),
        ),
    ]
}

/// The expanded form of `h_s`, multiplied out so no division is needed:
///
/// `h_s d22s^s u0^q = c21s u0^q u1^s
///     + u1s^(q-s) sum_{k<s} (-1)^(s-k) C(s,k) (u1 u1s)^k u0^((q+1)(s-k))`.
pub fn verify_h_expansion(cat: &InvariantCatalog, s: u32) -> IdentityReport {
    let q = cat.q();
    let k = cat.field();
    let g = |i: Inv| cat.at(i);
    let (u0, u1, u1s) = (g(Inv::U0), g(Inv::U1), g(Inv::U1s));
    let u0q = u0.pow(q);
    let lhs = g(Inv::H(s)) * &g(Inv::D22s).pow(s) * &u0q;
    let mut sum = Poly::zero(k);
    let mut binom: i64 = 1;
    for kk in 0..s {
        let sign = if (s - kk).is_multiple_of(2) { 1 } else { -1 };
        let c = k.from_int(sign * (binom % k.characteristic() as i64));
        let term = (u1 * u1s).pow(kk) * u0.pow((q + 1) * (s - kk));
        sum = sum + term.scale(c);
        binom = binom * (s - kk) as i64 / (kk + 1) as i64;
    }
    let rhs = g(Inv::C21s) * &u0q * u1.pow(s) + u1s.pow(q - s) * sum;
    report(q, format!("h-expansion s={s}"), &[(None, lhs - rhs)])
}

// ---------------------------------------------------------------------------
// Bases

/// The four candidate free bases: `P` (for `P2` over `SL2 x SL2`), `S` (`SL2`
/// over `SL2 x SL2`), `G` (`SL2` over `GL2 x GL2`), `D` (`GL2` over `GL2 x GL2`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BasisId {
    P,
    S,
    G,
    D,
}

impl BasisId {
    pub const ALL: [BasisId; 4] = [BasisId::P, BasisId::S, BasisId::G, BasisId::D];

    pub fn parse(s: &str) -> Result<BasisId, InvariantError> {
        match s.trim() {
            "P" | "p" => Ok(BasisId::P),
            "S" | "s" => Ok(BasisId::S),
            "G" | "g" => Ok(BasisId::G),
            "D" | "d" => Ok(BasisId::D),
            other => Err(InvariantError::UnknownBasis(other.to_string())),
        }
    }

    /// Expected basis size.
    pub fn rank(self, q: u32) -> u64 {
        let q = q as u64;
        match self {
            BasisId::P => q * (q * q - 1).pow(2),
            BasisId::S => q * (q * q - 1),
            BasisId::G => q * (q * q - 1) * (q - 1).pow(2),
            BasisId::D => (q * q - 1) * (q * q - q),
        }
    }

    /// The parameter system the basis is free over, as `(invariant, power)`.
    pub fn hsop(self, q: u32) -> [(Inv, u32); 4] {
        match self {
            BasisId::P | BasisId::S => [(Inv::D22, 1), (Inv::C21, 1), (Inv::D22s, 1), (Inv::C21s, 1)],
            BasisId::G | BasisId::D => {
                [(Inv::D22, q - 1), (Inv::C21, 1), (Inv::D22s, q - 1), (Inv::C21s, 1)]
            }
        }
    }

    pub fn hsop_degrees(self, q: u32) -> [u32; 4] {
        self.hsop(q).map(|(inv, e)| inv.degree(q) * e)
    }
}

impl fmt::Display for BasisId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// One basis element, as a product of powers of named invariants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisTerm {
    pub factors: Vec<(Inv, u32)>,
    pub degree: u32,
}

impl BasisTerm {
    pub fn new(q: u32, factors: &[(Inv, u32)]) -> Self {
        let factors: Vec<_> = factors.iter().copied().filter(|&(_, e)| e > 0).collect();
        let degree = factors.iter().map(|&(i, e)| i.degree(q) * e).sum();
        BasisTerm { factors, degree }
    }
}

impl fmt::Display for BasisTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|&(i, e)| if e == 1 { i.to_string() } else { format!("{i}^{e}") })
            .collect();
        f.write_str(&parts.join("*"))
    }
}

fn sl2_terms(q: u32) -> Vec<Vec<(Inv, u32)>> {
    let mut out = Vec::new();
    for i in 0..q {
        for j in 0..q {
            out.push(vec![(Inv::U1s, i), (Inv::U1, j)]);
        }
    }
    for i in 0..q.saturating_sub(1) {
        for j in 0..q - 1 {
            for k in 1..=q {
                out.push(vec![(Inv::U1s, i), (Inv::U1, j), (Inv::U0, k)]);
            }
        }
    }
    for s in 1..q.saturating_sub(1) {
        for k in 0..q {
            out.push(vec![(Inv::H(s), 1), (Inv::U0, k)]);
        }
    }
    out
}

/// Enumerates a basis as factorized terms, without building polynomials.
pub fn basis_terms(q: u32, id: BasisId) -> Vec<BasisTerm> {
    let top = q * (q - 1);
    let mut raw: Vec<Vec<(Inv, u32)>> = Vec::new();
    match id {
        BasisId::P => {
            for k in 0..q {
                for i in 0..=top {
                    for j in 0..=top {
                        raw.push(vec![(Inv::Phi1, i), (Inv::Phi1s, j), (Inv::U0, k)]);
                    }
                }
                for i in 0..=top {
                    for j in 1..q.saturating_sub(1) {
                        raw.push(vec![(Inv::Phi1, i), (Inv::Phi2s, j), (Inv::U0, k)]);
                        raw.push(vec![(Inv::Phi1s, i), (Inv::Phi2, j), (Inv::U0, k)]);
                    }
                }
                for i in 1..q.saturating_sub(1) {
                    for j in 1..q - 1 {
                        raw.push(vec![(Inv::Phi2, i), (Inv::Phi2s, j), (Inv::U0, k)]);
                    }
                }
            }
        }
        BasisId::S => raw = sl2_terms(q),
        BasisId::G => {
            for a in 0..q - 1 {
                for b in 0..q - 1 {
                    for t in sl2_terms(q) {
                        let mut t = t;
                        t.push((Inv::D22s, a));
                        t.push((Inv::D22, b));
                        raw.push(t);
                    }
                }
            }
        }
        BasisId::D => {
            for a in 0..q - 1 {
                for i in 0..q {
                    for j in 0..q {
                        raw.push(vec![(Inv::U1s, i), (Inv::U1, j), (Inv::D22s, a), (Inv::D22, a)]);
                    }
                }
                for i in 0..q - 1 {
                    for j in 0..q - 1 {
                        for k in 1..=q {
                            raw.push(vec![
                                (Inv::U1s, i),
                                (Inv::U1, j),
                                (Inv::U0, k),
                                (Inv::D22s, a),
                                (Inv::D22, a),
                            ]);
                        }
                    }
                }
            }
            for s in 1..q.saturating_sub(1) {
                for k in 0..q {
                    for b in 0..q - 1 {
                        let a = (b + s) % (q - 1);
                        raw.push(vec![(Inv::H(s), 1), (Inv::U0, k), (Inv::D22s, a), (Inv::D22, b)]);
                    }
                }
            }
        }
    }
    raw.iter().map(|f| BasisTerm::new(q, f)).collect()
}

/// Degrees of all basis elements, in enumeration order.
pub fn basis_degrees(q: u32, id: BasisId) -> Vec<u32> {
    basis_terms(q, id).into_iter().map(|t| t.degree).collect()
}

/// A basis with its polynomials.
#[derive(Debug, Clone)]
pub struct BasisCatalog {
    pub id: BasisId,
    pub q: u32,
    pub terms: Vec<BasisTerm>,
    pub polys: Vec<Poly>,
}

impl BasisCatalog {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Builds every element of a basis, optionally only those of degree `<= max_degree`.
pub fn basis_catalog(
    cat: &InvariantCatalog,
    id: BasisId,
    max_degree: Option<u32>,
) -> Result<BasisCatalog, InvariantError> {
    catalog_from_terms(cat, id, basis_terms(cat.q(), id), max_degree)
}

/// Builds the polynomials for an explicit list of terms, labelled with `id`.
pub fn catalog_from_terms(
    cat: &InvariantCatalog,
    id: BasisId,
    terms: Vec<BasisTerm>,
    max_degree: Option<u32>,
) -> Result<BasisCatalog, InvariantError> {
    let q = cat.q();
    let terms: Vec<BasisTerm> = terms
        .into_iter()
        .filter(|t| max_degree.is_none_or(|m| t.degree <= m))
        .collect();
    let mut cache = PowerCache::new(cat);
    let polys = terms
        .iter()
        .map(|t| cache.product(&t.factors))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(BasisCatalog { id, q, terms, polys })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{Group, GroupKind};

    fn cat(q: u64) -> InvariantCatalog {
        InvariantCatalog::new(&FieldSpec::with_order(q).unwrap()).unwrap()
    }

    #[test]
    fn dickson_at_q2() {
        let c = cat(2);
        assert_eq!(c.at(Inv::D22).to_string(), "x1^2*x2 + x1*x2^2");
        assert_eq!(c.at(Inv::C21).degree(), Some(2));
        assert_eq!(c.at(Inv::C21).to_string(), "x1^2 + x1*x2 + x2^2");
        assert_eq!(c.at(Inv::Phi2).to_string(), "x1*x2 + x2^2");
        assert_eq!(c.at(Inv::D22).star(), *c.at(Inv::D22s));
        assert_eq!(c.at(Inv::C21).star(), *c.at(Inv::C21s));
    }

    #[test]
    fn literal_constructions_at_q3() {
        let c = cat(3);
        assert_eq!(c.at(Inv::U1).to_string(), "x1^3*y1 + x2^3*y2");
        assert_eq!(c.at(Inv::U1).star(), *c.at(Inv::U1s));
        assert_eq!(c.at(Inv::Phi1).star(), *c.at(Inv::Phi1s));
        assert_eq!(c.at(Inv::Phi2).star(), *c.at(Inv::Phi2s));
        assert_eq!(c.at(Inv::U1).degree(), Some(4));
    }

    #[test]
    fn declared_degrees_and_homogeneity() {
        for q in [2u64, 3, 4, 5] {
            let c = cat(q);
            for (name, p, d) in c.entries() {
                assert!(p.is_homogeneous(), "{name} q={q}");
                assert_eq!(p.degree(), Some(d), "{name} q={q}");
                assert!(p.bidegree().is_some(), "{name} q={q}");
            }
        }
    }

    #[test]
    fn catalog_names() {
        let c = cat(3);
        assert_eq!(c.by_name("h_1").unwrap(), c.at(Inv::H(1)));
        assert_eq!(c.by_name("u1s").unwrap(), c.at(Inv::U1s));
        assert!(c.by_name("h_3").is_err());
        assert!(c.by_name("zz").is_err());
    }

    #[test]
    fn identity_examples() {
        let c3 = cat(3);
        assert!(verify_identity(&c3, IdentityTag::HypersurfaceRelation).status.is_pass());
        assert!(verify_identity(&c3, IdentityTag::HFirst).status.is_pass());
        let c2 = cat(2);
        assert!(verify_identity(&c2, IdentityTag::U0Power).status.is_pass());
        assert_eq!(IdentityTag::parse("3.9a").unwrap(), IdentityTag::HRecursionDown);
        assert!(IdentityTag::parse("3.7").is_err());
    }

    #[test]
    fn misprinted_variants_do_not_hold() {
        // With phi1 phi2 in place of phi1 phi1s the relation fails even at q = 2,
        // and the minus sign in the phi1-power relation fails once p is odd.
        for q in [2u64, 3, 5] {
            let c = cat(q);
            let q = q as u32;
            let g = |i| c.at(i).clone();
            let wrong = g(Inv::U0).pow(q)
                - ((g(Inv::Phi1) * g(Inv::Phi2)).pow(q - 1) * g(Inv::U0)
                    + g(Inv::Phi1).pow(q) * g(Inv::Phi2s)
                    + g(Inv::Phi1s).pow(q) * g(Inv::Phi2));
            assert!(!wrong.is_zero());
            let minus = g(Inv::Phi1).pow(q * (q - 1) + 1)
                - (g(Inv::Phi1) * g(Inv::C21) - g(Inv::D22) * g(Inv::Phi2).pow(q - 2));
            assert_eq!(minus.is_zero(), q == 2);
        }
    }

    #[test]
    fn failing_identity_carries_witness() {
        let c = cat(3);
        let d = c.at(Inv::D22) - c.at(Inv::D22s);
        let r = report(3, "x", &[(None, d.clone())]);
        assert_eq!(r.status, Status::Fail);
        assert_eq!(r.witness.unwrap(), d.to_string());
        let big = c.at(Inv::C21) * c.at(Inv::C21s);
        assert!(big.len() > WITNESS_TERMS);
        let r = report(3, "y", &[(Some(1), big)]);
        assert!(r.witness.unwrap().contains("terms)"));
    }

    #[test]
    fn h_expansion_small_q() {
        for q in [2u64, 3] {
            let c = cat(q);
            for s in 0..q as u32 {
                assert!(verify_h_expansion(&c, s).status.is_pass(), "q={q} s={s}");
            }
        }
    }

    #[test]
    fn h_star_pairing_q3() {
        let c = cat(3);
        assert_eq!(c.at(Inv::H(1)).star(), *c.at(Inv::H(1)));
        assert!(verify_h_relations(&c).iter().all(|r| r.status.is_pass()));
    }

    #[test]
    fn catalog_entries_are_invariant_for_their_groups() {
        for q in [2u64, 3, 4] {
            let c = cat(q);
            let k = c.field().clone();
            let p2 = Group::new(GroupKind::P2, &k);
            let gl2 = Group::new(GroupKind::GL2, &k);
            let sl2 = Group::new(GroupKind::SL2, &k);
            let sl2sq = Group::new(GroupKind::SL2xSL2, &k);
            for i in [Inv::Phi1, Inv::Phi2, Inv::Phi1s, Inv::Phi2s, Inv::U0] {
                assert!(p2.is_invariant(c.at(i)).unwrap(), "{i} q={q}");
            }
            for i in [Inv::U0, Inv::U1, Inv::U1s] {
                assert!(gl2.is_invariant(c.at(i)).unwrap(), "{i} q={q}");
            }
            for i in [Inv::D22, Inv::C21, Inv::D22s, Inv::C21s] {
                assert!(sl2sq.is_invariant(c.at(i)).unwrap(), "{i} q={q}");
            }
            for s in 0..q as u32 {
                assert!(sl2.is_invariant(c.at(Inv::H(s))).unwrap(), "h_{s} q={q}");
            }
        }
    }

    #[test]
    fn basis_sizes() {
        for q in 2..=5u32 {
            for id in BasisId::ALL {
                assert_eq!(basis_terms(q, id).len() as u64, id.rank(q), "{id} q={q}");
            }
        }
        let mut d = basis_degrees(2, BasisId::S);
        d.sort();
        assert_eq!(d, vec![0, 2, 3, 3, 4, 6]);
        assert_eq!(basis_degrees(3, BasisId::S).len(), 24);
        assert_eq!(basis_degrees(2, BasisId::P).len(), 18);
    }

    #[test]
    fn basis_polys_have_declared_degrees() {
        let c = cat(3);
        let b = basis_catalog(&c, BasisId::D, Some(14)).unwrap();
        assert!(!b.is_empty());
        for (t, p) in b.terms.iter().zip(&b.polys) {
            assert_eq!(p.degree(), Some(t.degree), "{t}");
        }
    }

    #[test]
    fn hsop_degree_lookup() {
        assert_eq!(BasisId::S.hsop_degrees(3), [4, 6, 4, 6]);
        assert_eq!(BasisId::D.hsop_degrees(3), [8, 6, 8, 6]);
        assert_eq!(BasisId::S.hsop_degrees(2), [3, 2, 3, 2]);
    }
}
