//! Graded pieces of invariant rings by exact linear algebra, and the
//! structural checks built on them: free bases, generating sets, subalgebra
//! membership and the relative trace from `SL2` to `GL2` invariants.
//!
//! Every group here acts on the x-block and the y-block separately, so each
//! degree-`d` piece splits into bidegree pieces `(a, d - a)` and all ranks
//! and dimensions are computed per bidegree and summed.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf::{Fe, FieldSpec};
use crate::group::{ActionSpec, Group, GroupError, GroupKind, Mat2};
use crate::invariants::{basis_catalog, BasisCatalog, BasisId, Inv, InvariantCatalog, InvariantError, PowerCache, Status};
use crate::linalg::{fixed_space, MatrixFq};
use crate::poly::{monomials_of_bidegree, monomials_of_degree, Monomial, Poly, PolyError};

/// Largest number of degree-`d` monomials a computation may touch.
pub const MAX_MONOMIALS: u64 = 5000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("degree {d} exceeds the guard: {monomials} monomials > {MAX_MONOMIALS}")]
    DegreeGuard { d: u32, monomials: u64 },
    #[error("input is not SL2-invariant")]
    NotInvariant,
    #[error("group {0} is not supported here")]
    UnsupportedGroup(GroupKind),
    #[error("input must be nonzero and bihomogeneous")]
    NotBihomogeneous,
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Number of monomials of degree `d` in four variables.
pub fn monomial_count(d: u32) -> u64 {
    let d = d as u64;
    (d + 1) * (d + 2) * (d + 3) / 6
}

pub fn check_guard(d: u32) -> Result<(), RingError> {
    let n = monomial_count(d);
    if n > MAX_MONOMIALS {
        return Err(RingError::DegreeGuard { d, monomials: n });
    }
    Ok(())
}

fn index_of(monos: &[Monomial]) -> HashMap<Monomial, usize> {
    monos.iter().enumerate().map(|(i, m)| (*m, i)).collect()
}

/// Rows are the coefficient vectors of `polys` over `monos`; terms outside
/// `monos` are an error in the caller and are ignored here.
fn coefficient_matrix<'a>(
    field: &FieldSpec,
    monos: &[Monomial],
    polys: impl IntoIterator<Item = &'a Poly>,
) -> MatrixFq {
    let idx = index_of(monos);
    let rows = polys.into_iter().map(|p| {
        let mut row = vec![Fe::ZERO; monos.len()];
        for (m, c) in p.terms() {
            if let Some(&i) = idx.get(m) {
                row[i] = *c;
            }
        }
        row
    });
    MatrixFq::from_rows(field, monos.len(), rows).expect("rows have monomial count length")
}

/// Matrix of `g` on the span of `monos` (column `j` holds `g(monos[j])`).
/// `monos` must be closed under the action, as any bidegree piece is.
fn action_matrix(field: &FieldSpec, g: &ActionSpec, monos: &[Monomial]) -> MatrixFq {
    let images = g.variable_images();
    let top = monos.iter().map(|m| m.degree()).max().unwrap_or(0) as usize;
    let powers: Vec<Vec<Poly>> = images
        .iter()
        .map(|l| {
            let mut v = vec![Poly::one(field)];
            for e in 1..=top {
                let next = &v[e - 1] * l;
                v.push(next);
            }
            v
        })
        .collect();
    let cols: Vec<Poly> = monos
        .iter()
        .map(|m| {
            let mut acc = Poly::one(field);
            for (v, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    acc = &acc * &powers[v][e as usize];
                }
            }
            acc
        })
        .collect();
    coefficient_matrix(field, monos, &cols).transpose()
}

fn operators(group: &Group, monos: &[Monomial]) -> Vec<MatrixFq> {
    group.generators().iter().map(|g| action_matrix(&group.field, g, monos)).collect()
}

fn fixed_dimension(group: &Group, monos: &[Monomial]) -> u64 {
    if monos.is_empty() {
        return 0;
    }
    let n = monos.len();
    let id = MatrixFq::identity(&group.field, n);
    let mut stacked = MatrixFq::zeros(&group.field, 0, n);
    for m in operators(group, monos) {
        stacked = stacked.vstack(&m.sub(&id).expect("square")).expect("same width");
    }
    (n - stacked.rank()) as u64
}

/// Dimension of the invariants of bidegree `(a, b)`.
pub fn bigraded_dimension(group: &Group, a: u32, b: u32) -> Result<u64, RingError> {
    check_guard(a + b)?;
    Ok(fixed_dimension(group, &monomials_of_bidegree(a, b)))
}

/// Dimension of the degree-`d` invariants.
pub fn invariant_dimension(group: &Group, d: u32) -> Result<u64, RingError> {
    check_guard(d)?;
    Ok((0..=d).map(|a| fixed_dimension(group, &monomials_of_bidegree(a, d - a))).sum())
}

/// The same dimension computed on the whole degree-`d` monomial space at once.
pub fn invariant_dimension_unsplit(group: &Group, d: u32) -> Result<u64, RingError> {
    check_guard(d)?;
    Ok(fixed_dimension(group, &monomials_of_degree(d)))
}

/// A basis of the degree-`d` invariants, bidegree by bidegree.
pub fn invariant_basis(group: &Group, d: u32) -> Result<Vec<Poly>, RingError> {
    check_guard(d)?;
    let k = &group.field;
    let mut out = Vec::new();
    for a in 0..=d {
        let monos = monomials_of_bidegree(a, d - a);
        let ops = operators(group, &monos);
        let fs = fixed_space(k, monos.len(), &ops).expect("square operators");
        for j in 0..fs.cols() {
            let col = fs.column(j);
            out.push(Poly::from_terms(k, monos.iter().copied().zip(col)));
        }
    }
    Ok(out)
}

/// Dimensions of the graded pieces in degrees `0..=dmax`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionTable {
    pub group: GroupKind,
    pub q: u32,
    pub field: String,
    pub dims: Vec<u64>,
}

impl DimensionTable {
    /// `(degree, dimension)` pairs.
    pub fn rows(&self) -> impl Iterator<Item = (u32, u64)> + '_ {
        self.dims.iter().enumerate().map(|(d, &n)| (d as u32, n))
    }
}

pub fn dimension_table(group: &Group, dmax: u32) -> Result<DimensionTable, RingError> {
    check_guard(dmax)?;
    let dims = (0..=dmax).map(|d| invariant_dimension(group, d)).collect::<Result<_, _>>()?;
    Ok(DimensionTable {
        group: group.kind,
        q: group.field.order(),
        field: group.field.to_string(),
        dims,
    })
}

/// `-sum_{z != 0} g_z(f)` with `g_z = diag(z, 1)`, for `SL2`-invariant `f`.
pub fn relative_trace(f: &Poly) -> Result<Poly, RingError> {
    let k = f.field();
    if !Group::new(GroupKind::SL2, k).is_invariant(f)? {
        return Err(RingError::NotInvariant);
    }
    let mut sum = Poly::zero(k);
    for z in k.enumerate_nonzero() {
        let g = ActionSpec::diagonal(Mat2::diag(k, z, Fe::ONE)?);
        sum = sum + g.act(f)?;
    }
    Ok(-sum)
}

/// Degrees of the parameter system the free bases for `kind` are taken over.
pub fn hsop_degrees(kind: GroupKind, q: u32) -> Result<[u32; 4], RingError> {
    match kind {
        GroupKind::P2 | GroupKind::SL2 => Ok(BasisId::S.hsop_degrees(q)),
        GroupKind::GL2 => Ok(BasisId::D.hsop_degrees(q)),
        other => Err(RingError::UnsupportedGroup(other)),
    }
}

/// The group whose invariant ring a basis spans.
pub fn basis_group(id: BasisId) -> GroupKind {
    match id {
        BasisId::P => GroupKind::P2,
        BasisId::S | BasisId::G => GroupKind::SL2,
        BasisId::D => GroupKind::GL2,
    }
}

/// All exponent vectors `e` with `sum e_i * degs_i <= dmax`.
fn weighted_exponents(degs: &[u32], dmax: u32) -> Vec<Vec<u32>> {
    fn go(degs: &[u32], left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        let Some((&d, rest)) = degs.split_first() else {
            out.push(cur.clone());
            return;
        };
        let mut e = 0;
        loop {
            cur.push(e);
            go(rest, left - e * d, cur, out);
            cur.pop();
            e += 1;
            if d == 0 || e * d > left {
                break;
            }
        }
    }
    let mut out = Vec::new();
    go(degs, dmax, &mut Vec::new(), &mut out);
    out
}

/// Monomials `prod gens_i^e_i` of degree at most `dmax`, keyed by bidegree.
fn generator_monomials(
    cache: &mut PowerCache<'_>,
    gens: &[(Inv, u32)],
    q: u32,
    dmax: u32,
) -> Result<BTreeMap<(u32, u32), Vec<Poly>>, RingError> {
    let degs: Vec<u32> = gens.iter().map(|&(i, e)| i.degree(q) * e).collect();
    let mut out: BTreeMap<(u32, u32), Vec<Poly>> = BTreeMap::new();
    for ex in weighted_exponents(&degs, dmax) {
        let factors: Vec<(Inv, u32)> = gens.iter().zip(&ex).map(|(&(i, p), &e)| (i, p * e)).collect();
        let p = cache.product(&factors)?;
        let bd = p.bidegree().ok_or(RingError::NotBihomogeneous)?;
        out.entry(bd).or_default().push(p);
    }
    Ok(out)
}

fn rank_in_bidegree(field: &FieldSpec, (a, b): (u32, u32), polys: &[Poly]) -> u64 {
    if polys.is_empty() {
        return 0;
    }
    coefficient_matrix(field, &monomials_of_bidegree(a, b), polys).rank() as u64
}

/// Per-degree numbers behind a free-basis certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeCheck {
    pub degree: u32,
    pub count: u64,
    pub rank: u64,
    pub dim: u64,
}

impl DegreeCheck {
    pub fn ok(&self) -> bool {
        self.count == self.rank && self.rank == self.dim
    }
}

/// Certificate that a basis is free and spanning through `max_degree`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreeBasisReport {
    pub basis: BasisId,
    pub q: u32,
    pub group: GroupKind,
    pub hsop_degrees: [u32; 4],
    pub max_degree: u32,
    pub degrees: Vec<DegreeCheck>,
    pub status: Status,
}

/// For each degree `d <= dmax`, counts the products (hsop monomial) x (basis
/// element) of degree `d` and compares that count with their rank and with
/// the invariant dimension.
pub fn verify_free_basis(
    cat: &InvariantCatalog,
    id: BasisId,
    dmax: u32,
) -> Result<FreeBasisReport, RingError> {
    let basis = basis_catalog(cat, id, Some(dmax))?;
    verify_free_basis_catalog(cat, &basis, dmax)
}

/// [`verify_free_basis`] for an explicit candidate list; `basis.id` selects
/// the group and the parameter system.
pub fn verify_free_basis_catalog(
    cat: &InvariantCatalog,
    basis: &BasisCatalog,
    dmax: u32,
) -> Result<FreeBasisReport, RingError> {
    check_guard(dmax)?;
    let q = cat.q();
    let k = cat.field();
    let id = basis.id;
    let group = Group::new(basis_group(id), k);
    let mut cache = PowerCache::new(cat);
    let hsop = generator_monomials(&mut cache, &id.hsop(q), q, dmax)?;

    let mut products: BTreeMap<(u32, u32), Vec<Poly>> = BTreeMap::new();
    for b in basis.polys.iter().filter(|b| b.degree().is_some_and(|d| d <= dmax)) {
        let (ba, bb) = b.bidegree().ok_or(RingError::NotBihomogeneous)?;
        for (&(ha, hb), hs) in &hsop {
            if ba + bb + ha + hb > dmax {
                continue;
            }
            let slot = products.entry((ba + ha, bb + hb)).or_default();
            slot.extend(hs.iter().map(|h| h * b));
        }
    }

    let mut degrees = Vec::new();
    for d in 0..=dmax {
        let mut row = DegreeCheck { degree: d, count: 0, rank: 0, dim: 0 };
        for a in 0..=d {
            let polys = products.get(&(a, d - a)).map(Vec::as_slice).unwrap_or(&[]);
            row.count += polys.len() as u64;
            row.rank += rank_in_bidegree(k, (a, d - a), polys);
            row.dim += bigraded_dimension(&group, a, d - a)?;
        }
        degrees.push(row);
    }
    let status = Status::from_bool(degrees.iter().all(DegreeCheck::ok));
    Ok(FreeBasisReport {
        basis: id,
        q,
        group: group.kind,
        hsop_degrees: id.hsop_degrees(q),
        max_degree: dmax,
        degrees,
        status,
    })
}

/// The generating set of the `GL2` invariants: `d22^(q-1), c21, d22s^(q-1), c21s, u1s, u0, u1`.
pub fn gl2_generators(q: u32) -> Vec<(Inv, u32)> {
    vec![
        (Inv::D22, q - 1),
        (Inv::C21, 1),
        (Inv::D22s, q - 1),
        (Inv::C21s, 1),
        (Inv::U1s, 1),
        (Inv::U0, 1),
        (Inv::U1, 1),
    ]
}

/// `d22, c21, d22s, c21s, u1s, u0, u1`.
pub fn sl2_seven_generators() -> Vec<(Inv, u32)> {
    vec![
        (Inv::D22, 1),
        (Inv::C21, 1),
        (Inv::D22s, 1),
        (Inv::C21s, 1),
        (Inv::U1s, 1),
        (Inv::U0, 1),
        (Inv::U1, 1),
    ]
}

/// The seven above together with `h_1`.
pub fn sl2_generators_with_h1() -> Vec<(Inv, u32)> {
    let mut g = sl2_seven_generators();
    g.push((Inv::H(1), 1));
    g
}

pub fn format_generators(gens: &[(Inv, u32)]) -> Vec<String> {
    gens.iter().map(|&(i, e)| if e == 1 { i.to_string() } else { format!("{i}^{e}") }).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpanCheck {
    pub degree: u32,
    pub monomials: u64,
    pub rank: u64,
    pub dim: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorReport {
    pub group: GroupKind,
    pub q: u32,
    pub generators: Vec<String>,
    pub max_degree: u32,
    pub degrees: Vec<SpanCheck>,
    pub status: Status,
}

/// Checks, degree by degree, that monomials in `gens` span the invariants of `kind`.
pub fn verify_generators(
    cat: &InvariantCatalog,
    gens: &[(Inv, u32)],
    kind: GroupKind,
    dmax: u32,
) -> Result<GeneratorReport, RingError> {
    check_guard(dmax)?;
    let q = cat.q();
    let k = cat.field();
    let group = Group::new(kind, k);
    let mut cache = PowerCache::new(cat);
    let mons = generator_monomials(&mut cache, gens, q, dmax)?;
    let mut degrees = Vec::new();
    for d in 0..=dmax {
        let mut row = SpanCheck { degree: d, monomials: 0, rank: 0, dim: 0 };
        for a in 0..=d {
            let polys = mons.get(&(a, d - a)).map(Vec::as_slice).unwrap_or(&[]);
            row.monomials += polys.len() as u64;
            row.rank += rank_in_bidegree(k, (a, d - a), polys);
            row.dim += bigraded_dimension(&group, a, d - a)?;
        }
        degrees.push(row);
    }
    let status = Status::from_bool(degrees.iter().all(|r| r.rank == r.dim));
    Ok(GeneratorReport {
        group: kind,
        q,
        generators: format_generators(gens),
        max_degree: dmax,
        degrees,
        status,
    })
}

/// Whether `target` lies in the span of the monomials in `gens` of its bidegree.
pub fn in_subalgebra_span(
    cat: &InvariantCatalog,
    gens: &[(Inv, u32)],
    target: &Poly,
) -> Result<bool, RingError> {
    let (a, b) = target.bidegree().ok_or(RingError::NotBihomogeneous)?;
    check_guard(a + b)?;
    let mut cache = PowerCache::new(cat);
    let mons = generator_monomials(&mut cache, gens, cat.q(), a + b)?;
    let mut polys = mons.get(&(a, b)).cloned().unwrap_or_default();
    let without = rank_in_bidegree(cat.field(), (a, b), &polys);
    polys.push(target.clone());
    let with = rank_in_bidegree(cat.field(), (a, b), &polys);
    Ok(with == without)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonmembershipReport {
    pub q: u32,
    pub degree: u32,
    pub h1_in_span: bool,
    pub c21_in_span: bool,
    pub h0_in_span: bool,
    pub status: Status,
}

/// Decides whether `h_1` lies in the subalgebra generated by
/// `d22, c21, d22s, c21s, u1s, u0, u1`, with `c21` and `h_0` as positive controls.
/// Passes when `h_1` is outside and both controls are inside.
pub fn subalgebra_nonmembership_h1(cat: &InvariantCatalog) -> Result<NonmembershipReport, RingError> {
    let gens = sl2_seven_generators();
    let h1 = cat.get(Inv::H(1)).ok_or(InvariantError::BadIndex { s: 1, q: cat.q() })?;
    let h0 = cat.get(Inv::H(0)).expect("h_0 always exists");
    let c21 = cat.get(Inv::C21).expect("catalog entry");
    let h1_in_span = in_subalgebra_span(cat, &gens, h1)?;
    let c21_in_span = in_subalgebra_span(cat, &gens, c21)?;
    let h0_in_span = in_subalgebra_span(cat, &gens, h0)?;
    Ok(NonmembershipReport {
        q: cat.q(),
        degree: Inv::H(1).degree(cat.q()),
        h1_in_span,
        c21_in_span,
        h0_in_span,
        status: Status::from_bool(!h1_in_span && c21_in_span && h0_in_span),
    })
}
