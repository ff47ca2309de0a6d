//! Sparse polynomials in `F_q[x1, x2, y1, y2]`.
//!
//! Terms are kept strictly descending in graded reverse lexicographic order
//! with `x1 > x2 > y1 > y2`, with no zero coefficients, so equal polynomials
//! have identical term vectors.

mod text;

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use crate::gf::{Fe, FieldSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("polynomials over different fields")]
    FieldMismatch,
    #[error("image of variable {0} is not a homogeneous linear form")]
    NonLinearImage(Var),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("not divisible; remainder has leading term {coeff}*{lead}")]
    NotDivisible { lead: Monomial, coeff: String },
    #[error("exponent overflow")]
    DegreeOverflow,
    #[error("parse error: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X1,
    X2,
    Y1,
    Y2,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::X1, Var::X2, Var::Y1, Var::Y2];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        ["x1", "x2", "y1", "y2"][self as usize]
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Exponent vector `(x1, x2, y1, y2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub [u16; 4]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; 4]);

    pub fn new(x1: u16, x2: u16, y1: u16, y2: u16) -> Self {
        Monomial([x1, x2, y1, y2])
    }

    pub fn var(v: Var) -> Self {
        let mut e = [0; 4];
        e[v.index()] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn x_degree(&self) -> u32 {
        self.0[0] as u32 + self.0[1] as u32
    }

    pub fn y_degree(&self) -> u32 {
        self.0[2] as u32 + self.0[3] as u32
    }

    /// Packed grevlex key: comparing keys compares monomials.
    #[inline]
    fn key(&self) -> u64 {
        let e = &self.0;
        ((self.degree() as u64) << 48)
            | ((0xFFFF - e[3] as u64) << 32)
            | ((0xFFFF - e[2] as u64) << 16)
            | (0xFFFF - e[1] as u64)
    }

    pub fn checked_mul(&self, other: &Monomial) -> Option<Monomial> {
        let mut e = [0u16; 4];
        for i in 0..4 {
            e[i] = self.0[i].checked_add(other.0[i])?;
        }
        (e.iter().map(|&v| v as u32).sum::<u32>() < 0xFFFF).then_some(Monomial(e))
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        (0..4).all(|i| self.0[i] <= other.0[i])
    }

    /// `other / self`, assuming `self` divides `other`.
    fn quotient_of(&self, other: &Monomial) -> Monomial {
        let mut e = [0u16; 4];
        for i in 0..4 {
            e[i] = other.0[i] - self.0[i];
        }
        Monomial(e)
    }

    fn star(&self) -> Monomial {
        let [a, b, c, d] = self.0;
        // x1 <-> y2, x2 <-> y1
        Monomial([d, c, b, a])
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in Var::ALL {
            let e = self.0[v.index()];
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// All monomials of total degree `d`, in descending monomial order.
pub fn monomials_of_degree(d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for a in 0..=d {
        out.extend(monomials_of_bidegree(a, d - a));
    }
    out.sort_by(|a, b| b.cmp(a));
    out
}

/// Monomials with x-degree `a` and y-degree `b`, in descending monomial order.
pub fn monomials_of_bidegree(a: u32, b: u32) -> Vec<Monomial> {
    let mut out = Vec::with_capacity(((a + 1) * (b + 1)) as usize);
    for i in 0..=a {
        for j in 0..=b {
            out.push(Monomial([i as u16, (a - i) as u16, j as u16, (b - j) as u16]));
        }
    }
    out.sort_by(|a, b| b.cmp(a));
    out
}

/// A polynomial over one fixed field.
#[derive(Clone)]
pub struct Poly {
    field: FieldSpec,
    terms: Vec<(Monomial, Fe)>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.terms == other.terms
    }
}

impl Eq for Poly {}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl Poly {
    pub fn zero(field: &FieldSpec) -> Self {
        Poly { field: field.clone(), terms: Vec::new() }
    }

    pub fn one(field: &FieldSpec) -> Self {
        Self::constant(field, Fe::ONE)
    }

    pub fn constant(field: &FieldSpec, c: Fe) -> Self {
        Self::monomial(field, Monomial::ONE, c)
    }

    pub fn var(field: &FieldSpec, v: Var) -> Self {
        Self::monomial(field, Monomial::var(v), Fe::ONE)
    }

    pub fn monomial(field: &FieldSpec, m: Monomial, c: Fe) -> Self {
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        Poly { field: field.clone(), terms }
    }

    /// Builds a canonical polynomial from terms in any order; repeated
    /// monomials are summed.
    pub fn from_terms<I>(field: &FieldSpec, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Fe)>,
    {
        let mut acc: HashMap<Monomial, Fe> = HashMap::new();
        for (m, c) in terms {
            let e = acc.entry(m).or_insert(Fe::ZERO);
            *e = field.add(*e, c);
        }
        Self::from_map(field, acc)
    }

    fn from_map(field: &FieldSpec, map: HashMap<Monomial, Fe>) -> Self {
        let mut terms: Vec<_> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Poly { field: field.clone(), terms }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn terms(&self) -> &[(Monomial, Fe)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_term(&self) -> Option<(Monomial, Fe)> {
        self.terms.first().copied()
    }

    pub fn coefficient(&self, m: &Monomial) -> Fe {
        self.terms
            .binary_search_by(|(t, _)| m.cmp(t))
            .map(|i| self.terms[i].1)
            .unwrap_or(Fe::ZERO)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        // Leading term has maximal degree under a graded order.
        self.terms.first().map(|(m, _)| m.degree())
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m, _)) => {
                let d = m.degree();
                self.terms.iter().all(|(t, _)| t.degree() == d)
            }
        }
    }

    /// `(x-degree, y-degree)` when every term shares it; `None` otherwise or
    /// for zero.
    pub fn bidegree(&self) -> Option<(u32, u32)> {
        let (m, _) = self.terms.first()?;
        let bd = (m.x_degree(), m.y_degree());
        self.terms
            .iter()
            .all(|(t, _)| (t.x_degree(), t.y_degree()) == bd)
            .then_some(bd)
    }

    pub fn homogeneous_component(&self, d: u32) -> Poly {
        Poly {
            field: self.field.clone(),
            terms: self.terms.iter().filter(|(m, _)| m.degree() == d).copied().collect(),
        }
    }

    fn check_field(&self, other: &Poly) -> Result<(), PolyError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(PolyError::FieldMismatch)
        }
    }

    fn merge(&self, other: &Poly, negate: bool) -> Poly {
        let f = &self.field;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        let sign = |c: Fe| if negate { f.neg(c) } else { c };
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0, sign(b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = f.add(a[i].1, sign(b[j].1));
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend(b[j..].iter().map(|&(m, c)| (m, sign(c))));
        Poly { field: f.clone(), terms: out }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_field(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_field(other)?;
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_field(other)?;
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(f));
        }
        if other.terms.len() == 1 {
            return self.mul_term(other.terms[0].0, other.terms[0].1);
        }
        if self.terms.len() == 1 {
            return other.mul_term(self.terms[0].0, self.terms[0].1);
        }
        let mut acc: HashMap<Monomial, Fe> =
            HashMap::with_capacity(self.terms.len() * other.terms.len() / 2);
        for &(ma, ca) in &self.terms {
            for &(mb, cb) in &other.terms {
                let m = ma.checked_mul(&mb).ok_or(PolyError::DegreeOverflow)?;
                let e = acc.entry(m).or_insert(Fe::ZERO);
                *e = f.add(*e, f.mul(ca, cb));
            }
        }
        Ok(Self::from_map(f, acc))
    }

    /// `self * c * m`; order is preserved since monomial order is multiplicative.
    pub fn mul_term(&self, m: Monomial, c: Fe) -> Result<Poly, PolyError> {
        let f = &self.field;
        if c.is_zero() {
            return Ok(Poly::zero(f));
        }
        let terms = self
            .terms
            .iter()
            .map(|&(t, a)| Ok((t.checked_mul(&m).ok_or(PolyError::DegreeOverflow)?, f.mul(a, c))))
            .collect::<Result<Vec<_>, PolyError>>()?;
        Ok(Poly { field: f.clone(), terms })
    }

    pub fn scale(&self, c: Fe) -> Poly {
        let f = &self.field;
        if c.is_zero() {
            return Poly::zero(f);
        }
        Poly {
            field: f.clone(),
            terms: self.terms.iter().map(|&(m, a)| (m, f.mul(a, c))).collect(),
        }
    }

    pub fn checked_pow(&self, mut e: u32) -> Result<Poly, PolyError> {
        let mut acc = Poly::one(&self.field);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.checked_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.checked_mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// `self^e`. Panics on exponent overflow.
    pub fn pow(&self, e: u32) -> Poly {
        self.checked_pow(e).expect("polynomial power overflowed the exponent range")
    }

    /// Applies the algebra homomorphism sending each variable to the
    /// corresponding homogeneous linear form in `images`.
    pub fn substitute_linear(&self, images: &[Poly; 4]) -> Result<Poly, PolyError> {
        for (v, img) in Var::ALL.iter().zip(images) {
            self.check_field(img)?;
            if !img.terms.iter().all(|(m, _)| m.degree() == 1) {
                return Err(PolyError::NonLinearImage(*v));
            }
        }
        let f = &self.field;
        let mut max_exp = [0u16; 4];
        for (m, _) in &self.terms {
            for i in 0..4 {
                max_exp[i] = max_exp[i].max(m.0[i]);
            }
        }
        let powers: Vec<Vec<Poly>> = (0..4)
            .map(|i| {
                let mut v = vec![Poly::one(f)];
                for k in 1..=max_exp[i] as usize {
                    let next = v[k - 1].checked_mul(&images[i])?;
                    v.push(next);
                }
                Ok(v)
            })
            .collect::<Result<_, PolyError>>()?;
        let mut acc: HashMap<Monomial, Fe> = HashMap::new();
        for (m, c) in &self.terms {
            let mut img = powers[0][m.0[0] as usize].scale(*c);
            for i in 1..4 {
                let e = m.0[i] as usize;
                if e > 0 {
                    img = img.checked_mul(&powers[i][e])?;
                }
            }
            for (t, a) in img.terms {
                let e = acc.entry(t).or_insert(Fe::ZERO);
                *e = f.add(*e, a);
            }
        }
        Ok(Self::from_map(f, acc))
    }

    /// The involution `x1 -> y2, x2 -> y1, y1 -> x2, y2 -> x1`.
    pub fn star(&self) -> Poly {
        let mut terms: Vec<_> = self.terms.iter().map(|&(m, c)| (m.star(), c)).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Poly { field: self.field.clone(), terms }
    }

    /// Exact quotient `self / g`.
    ///
    /// Runs single-divisor division with remainder; since `{g}` is a Groebner
    /// basis of `(g)`, the remainder vanishes exactly when `g` divides `self`.
    /// The first term moved to the remainder is its leading term, so division
    /// stops there.
    pub fn exact_div(&self, g: &Poly) -> Result<Poly, PolyError> {
        self.check_field(g)?;
        let f = &self.field;
        let (lg, cg) = g.leading_term().ok_or(PolyError::DivisionByZero)?;
        let cg_inv = f.inv(cg).expect("leading coefficient is nonzero");
        let mut rem: BTreeMap<Monomial, Fe> = self.terms.iter().copied().collect();
        let mut quot = Vec::new();
        while let Some((&m, &c)) = rem.last_key_value() {
            if !lg.divides(&m) {
                return Err(PolyError::NotDivisible { lead: m, coeff: f.format_elem(c) });
            }
            let qm = lg.quotient_of(&m);
            let qc = f.mul(c, cg_inv);
            quot.push((qm, qc));
            rem.pop_last();
            for &(t, a) in &g.terms[1..] {
                let tm = t.checked_mul(&qm).ok_or(PolyError::DegreeOverflow)?;
                let delta = f.neg(f.mul(a, qc));
                match rem.entry(tm) {
                    std::collections::btree_map::Entry::Occupied(mut o) => {
                        let v = f.add(*o.get(), delta);
                        if v.is_zero() {
                            o.remove();
                        } else {
                            *o.get_mut() = v;
                        }
                    }
                    std::collections::btree_map::Entry::Vacant(v) => {
                        v.insert(delta);
                    }
                }
            }
        }
        // Quotient terms come out in strictly descending order.
        Ok(Poly { field: f.clone(), terms: quot })
    }

    pub fn parse(field: &FieldSpec, s: &str) -> Result<Poly, PolyError> {
        text::parse(field, s)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        text::format(self, f)
    }
}

// Operator forms panic on field mismatch; use the `checked_*` methods to get
// an error instead.

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.checked_add(rhs).expect("polynomial addition")
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.checked_sub(rhs).expect("polynomial subtraction")
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.checked_mul(rhs).expect("polynomial multiplication")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let f = &self.field;
        Poly {
            field: f.clone(),
            terms: self.terms.iter().map(|&(m, c)| (m, f.neg(c))).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly {
                (&self).$m(rhs)
            }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}
