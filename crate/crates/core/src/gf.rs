//! Arithmetic in finite fields `F_q`, `q = p^r`.
//!
//! Elements are stored as their canonical index `c0 + c1*p + ... + c_{r-1}*p^{r-1}`,
//! where `c0 + c1*T + ... ` is the reduced representative modulo the field's
//! modulus polynomial. The index order is also the enumeration order.
//!
//! A [`FieldSpec`] is a cheap shared handle; arithmetic goes through it, in the
//! same context style as the rest of the crate. [`FieldElem`] pairs a raw
//! element with its field for checked, self-describing use.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Largest field order accepted by [`FieldSpec::new`].
pub const MAX_FIELD_ORDER: u64 = 1 << 16;

/// Fields up to this order get a full addition table.
const ADD_TABLE_LIMIT: u32 = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GfError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {p}^{r} exceeds the supported bound 2^16")]
    TooLarge { p: u64, r: u32 },
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("modulus must be monic of degree {0}")]
    BadModulus(u32),
    #[error("modulus is reducible over F_{0}")]
    Reducible(u32),
    #[error("inverse of zero")]
    ZeroInverse,
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("cannot parse {0:?}")]
    Parse(String),
}

/// Raw field element: the canonical index into the field's enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fe(pub u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct Inner {
    p: u32,
    r: u32,
    q: u32,
    /// Monic modulus, low degree first, length r + 1.
    modulus: Vec<u32>,
    /// `exp[k] = g^k` for the primitive element `g`, k in 0..q-1.
    exp: Vec<u32>,
    /// `log[a]` for nonzero a; `log[0]` is unused.
    log: Vec<u32>,
    add_table: Option<Vec<u16>>,
    primitive: u32,
}

/// A finite field `F_{p^r}` with a fixed modulus.
#[derive(Clone)]
pub struct FieldSpec(Arc<Inner>);

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldSpec({self})")
    }
}

impl fmt::Display for FieldSpec {
    /// `p^r/c0,c1,...,cr`, the modulus coefficients low degree first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}/", self.0.p, self.0.r)?;
        for (i, c) in self.0.modulus.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` into `(p, r)` with `q = p^r`, or fails if `q` is not a prime power.
pub fn prime_power_parts(q: u64) -> Result<(u64, u32), GfError> {
    if q < 2 {
        return Err(GfError::NotPrimePower(q));
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d)).unwrap();
    let (mut m, mut r) = (q, 0);
    while m % p == 0 {
        m /= p;
        r += 1;
    }
    if m != 1 {
        return Err(GfError::NotPrimePower(q));
    }
    Ok((p, r))
}

// Dense polynomial helpers over F_p, coefficient vectors low degree first.

fn trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut a = a.to_vec();
    trim(&mut a);
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p);
    while a.len() > dm {
        let top = a.len() - 1;
        let c = a[top] * lead_inv % p;
        if c != 0 {
            for (i, &mi) in m.iter().enumerate() {
                let idx = top - dm + i;
                a[idx] = (a[idx] + p - c * mi % p) % p;
            }
        }
        trim(&mut a);
    }
    a
}

fn inv_mod(a: u32, p: u32) -> u32 {
    let mut r = 1u64;
    let (mut b, mut e) = (a as u64 % p as u64, p as u64 - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    r as u32
}

fn digits(mut v: u32, p: u32, r: u32) -> Vec<u32> {
    (0..r)
        .map(|_| {
            let d = v % p;
            v /= p;
            d
        })
        .collect()
}

fn undigits(ds: &[u32], p: u32) -> u32 {
    ds.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// Monic polynomial of degree `deg` whose lower coefficients are the base-p digits of `idx`.
fn monic_from_index(idx: u32, p: u32, deg: u32) -> Vec<u32> {
    let mut v = digits(idx, p, deg);
    v.push(1);
    v
}

/// Trial division by every monic polynomial of degree 1..=deg/2.
fn is_irreducible(m: &[u32], p: u32) -> bool {
    let deg = (m.len() - 1) as u32;
    for d in 1..=deg / 2 {
        for idx in 0..p.pow(d) {
            let f = monic_from_index(idx, p, d);
            if poly_rem(m, &f, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// The lexicographically least monic irreducible of degree `r`, coefficients
/// compared low degree first.
fn canonical_modulus(p: u32, r: u32) -> Vec<u32> {
    // Index order with digit 0 least significant is not lexicographic
    // low-first, so walk the tuples in lexicographic order explicitly.
    let count = p.pow(r);
    for lex in 0..count {
        // Most significant digit of `lex` is c0.
        let mut ds = digits(lex, p, r);
        ds.reverse();
        let mut m = ds;
        m.push(1);
        if is_irreducible(&m, p) {
            return m;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl FieldSpec {
    /// `F_{p^r}` with the canonical modulus.
    pub fn new(p: u64, r: u32) -> Result<Self, GfError> {
        Self::check_size(p, r)?;
        let modulus = canonical_modulus(p as u32, r);
        Ok(Self::build(p as u32, r, modulus))
    }

    /// The field of order `q`, which must be a prime power.
    pub fn with_order(q: u64) -> Result<Self, GfError> {
        let (p, r) = prime_power_parts(q)?;
        Self::new(p, r)
    }

    /// `F_p[T]/(modulus)`; the modulus is given low degree first and must be
    /// monic and irreducible.
    pub fn with_modulus(p: u64, modulus: &[u32]) -> Result<Self, GfError> {
        if modulus.len() < 2 {
            return Err(GfError::ZeroDegree);
        }
        let r = (modulus.len() - 1) as u32;
        Self::check_size(p, r)?;
        let p32 = p as u32;
        if modulus.last() != Some(&1) || modulus.iter().any(|&c| c >= p32) {
            return Err(GfError::BadModulus(r));
        }
        if !is_irreducible(modulus, p32) {
            return Err(GfError::Reducible(p32));
        }
        Ok(Self::build(p32, r, modulus.to_vec()))
    }

    fn check_size(p: u64, r: u32) -> Result<(), GfError> {
        if !is_prime(p) {
            return Err(GfError::NotPrime(p));
        }
        if r < 1 {
            return Err(GfError::ZeroDegree);
        }
        let q = (p as u128).checked_pow(r).unwrap_or(u128::MAX);
        if q > MAX_FIELD_ORDER as u128 {
            return Err(GfError::TooLarge { p, r });
        }
        Ok(())
    }

    fn build(p: u32, r: u32, modulus: Vec<u32>) -> Self {
        let q = p.pow(r);
        let mul_slow = |a: u32, b: u32| -> u32 {
            let (da, db) = (digits(a, p, r), digits(b, p, r));
            let mut prod = vec![0u32; (2 * r - 1) as usize];
            for (i, &x) in da.iter().enumerate() {
                for (j, &y) in db.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + x * y) % p;
                }
            }
            let mut red = poly_rem(&prod, &modulus, p);
            red.resize(r as usize, 0);
            undigits(&red, p)
        };
        let pow_slow = |a: u32, mut e: u32| -> u32 {
            let (mut acc, mut base) = (1u32, a);
            while e > 0 {
                if e & 1 == 1 {
                    acc = mul_slow(acc, base);
                }
                base = mul_slow(base, base);
                e >>= 1;
            }
            acc
        };
        let order = q - 1;
        let factors = prime_factors(order);
        let primitive = (1..q)
            .find(|&g| factors.iter().all(|&l| pow_slow(g, order / l) != 1))
            .expect("multiplicative group is cyclic");
        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![0u32; q as usize];
        let mut cur = 1u32;
        for k in 0..order.max(1) {
            exp.push(cur);
            log[cur as usize] = k;
            cur = mul_slow(cur, primitive);
        }
        let add_digits = |a: u32, b: u32| -> u32 {
            if p == 2 {
                return a ^ b;
            }
            if r == 1 {
                return (a + b) % p;
            }
            let s: Vec<u32> = digits(a, p, r)
                .iter()
                .zip(digits(b, p, r))
                .map(|(x, y)| (x + y) % p)
                .collect();
            undigits(&s, p)
        };
        let add_table = (q <= ADD_TABLE_LIMIT && p != 2 && r > 1).then(|| {
            let mut t = vec![0u16; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    t[(a * q + b) as usize] = add_digits(a, b) as u16;
                }
            }
            t
        });
        FieldSpec(Arc::new(Inner { p, r, q, modulus, exp, log, add_table, primitive }))
    }

    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.r
    }

    pub fn order(&self) -> u32 {
        self.0.q
    }

    /// Modulus coefficients, low degree first, including the leading 1.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    /// The least nonzero element of multiplicative order `q - 1`.
    pub fn primitive_element(&self) -> Fe {
        Fe(self.0.primitive)
    }

    /// Coordinates of `a` over `F_p`, low degree first.
    pub fn coords(&self, a: Fe) -> Vec<u32> {
        digits(a.0, self.0.p, self.0.r)
    }

    pub fn from_coords(&self, coords: &[u32]) -> Fe {
        let p = self.0.p;
        let mut ds: Vec<u32> = coords.iter().map(|&c| c % p).collect();
        ds.resize(self.0.r as usize, 0);
        Fe(undigits(&ds, p))
    }

    /// Image of an integer under `Z -> F_p -> F_q`.
    pub fn from_int(&self, n: i64) -> Fe {
        Fe(n.rem_euclid(self.0.p as i64) as u32)
    }

    /// The element `T`, i.e. the class of the indeterminate (equal to 0 when r = 1).
    pub fn generator_t(&self) -> Fe {
        if self.0.r == 1 {
            Fe(0)
        } else {
            Fe(self.0.p)
        }
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        let i = &*self.0;
        if i.p == 2 {
            return Fe(a.0 ^ b.0);
        }
        if i.r == 1 {
            let s = a.0 + b.0;
            return Fe(if s >= i.p { s - i.p } else { s });
        }
        if let Some(t) = &i.add_table {
            return Fe(t[(a.0 * i.q + b.0) as usize] as u32);
        }
        let s: Vec<u32> = digits(a.0, i.p, i.r)
            .iter()
            .zip(digits(b.0, i.p, i.r))
            .map(|(x, y)| (x + y) % i.p)
            .collect();
        Fe(undigits(&s, i.p))
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        let i = &*self.0;
        if i.p == 2 || a.0 == 0 {
            return a;
        }
        if i.r == 1 {
            return Fe(i.p - a.0);
        }
        let s: Vec<u32> = digits(a.0, i.p, i.r).iter().map(|&x| (i.p - x) % i.p).collect();
        Fe(undigits(&s, i.p))
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.0 == 0 || b.0 == 0 {
            return Fe::ZERO;
        }
        let i = &*self.0;
        let n = i.q - 1;
        let k = i.log[a.0 as usize] + i.log[b.0 as usize];
        Fe(i.exp[(if k >= n { k - n } else { k }) as usize])
    }

    pub fn inv(&self, a: Fe) -> Result<Fe, GfError> {
        if a.is_zero() {
            return Err(GfError::ZeroInverse);
        }
        let i = &*self.0;
        let n = i.q - 1;
        let l = i.log[a.0 as usize];
        Ok(Fe(i.exp[((n - l) % n) as usize]))
    }

    /// `a^e` for any integer exponent; negative exponents invert first.
    pub fn pow(&self, a: Fe, e: i64) -> Result<Fe, GfError> {
        if e == 0 {
            return Ok(Fe::ONE);
        }
        if a.is_zero() {
            return if e > 0 { Ok(Fe::ZERO) } else { Err(GfError::ZeroInverse) };
        }
        let n = (self.0.q - 1) as i64;
        let l = self.0.log[a.0 as usize] as i64;
        let k = (l * e.rem_euclid(n)).rem_euclid(n);
        Ok(Fe(self.0.exp[k as usize]))
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: Fe) -> Option<u32> {
        if a.is_zero() {
            return None;
        }
        let n = self.0.q - 1;
        let l = self.0.log[a.0 as usize];
        Some(n / gcd(n, l))
    }

    /// All `q` elements in index order.
    pub fn enumerate(&self) -> impl Iterator<Item = Fe> {
        (0..self.0.q).map(Fe)
    }

    /// The `q - 1` nonzero elements in index order.
    pub fn enumerate_nonzero(&self) -> impl Iterator<Item = Fe> {
        (1..self.0.q).map(Fe)
    }

    /// A basis of `F_q` over `F_p`: `1, T, ..., T^{r-1}`.
    pub fn prime_basis(&self) -> Vec<Fe> {
        (0..self.0.r).map(|k| Fe(self.0.p.pow(k))).collect()
    }

    /// `sum_{z in F_q^*} z^a`, by direct summation.
    ///
    /// For `a = 0` this is `(q - 1) * 1`.
    pub fn power_sum(&self, a: u64) -> Fe {
        let e = (a % (self.0.q as u64 - 1).max(1)) as i64;
        self.enumerate_nonzero().fold(Fe::ZERO, |acc, z| {
            let t = if a == 0 { Fe::ONE } else { self.pow(z, e).unwrap() };
            self.add(acc, t)
        })
    }

    pub fn elem(&self, value: Fe) -> FieldElem {
        debug_assert!(value.0 < self.0.q);
        FieldElem { spec: self.clone(), value }
    }

    /// Text of an element: a plain residue when r = 1, else `c0+c1*T+c2*T^2`
    /// with zero terms dropped and unit coefficients elided.
    pub fn format_elem(&self, a: Fe) -> String {
        if self.0.r == 1 {
            return a.0.to_string();
        }
        if a.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (k, c) in self.coords(a).into_iter().enumerate() {
            if c == 0 {
                continue;
            }
            parts.push(match (k, c) {
                (0, c) => c.to_string(),
                (1, 1) => "T".to_string(),
                (1, c) => format!("{c}*T"),
                (k, 1) => format!("T^{k}"),
                (k, c) => format!("{c}*T^{k}"),
            });
        }
        parts.join("+")
    }

    /// Inverse of [`format_elem`](Self::format_elem). Also accepts any integer
    /// (reduced mod p) and unreduced powers of `T`.
    pub fn parse_elem(&self, s: &str) -> Result<Fe, GfError> {
        let err = || GfError::Parse(s.to_string());
        let s = s.trim();
        if s.is_empty() {
            return Err(err());
        }
        let mut acc = Fe::ZERO;
        for term in s.split('+') {
            let term = term.trim();
            let mut val = Fe::ONE;
            for factor in term.split('*') {
                let factor = factor.trim();
                let f = if let Some(rest) = factor.strip_prefix('T') {
                    let e: i64 = match rest.strip_prefix('^') {
                        Some(e) => e.trim().parse().map_err(|_| err())?,
                        None if rest.is_empty() => 1,
                        None => return Err(err()),
                    };
                    if self.0.r == 1 {
                        return Err(err());
                    }
                    self.pow(self.generator_t(), e).map_err(|_| err())?
                } else {
                    let n: i64 = factor.parse().map_err(|_| err())?;
                    self.from_int(n)
                };
                val = self.mul(val, f);
            }
            acc = self.add(acc, val);
        }
        Ok(acc)
    }

    /// Parses the `p^r/c0,...,cr` form written by `Display`.
    pub fn parse(s: &str) -> Result<Self, GfError> {
        let err = || GfError::Parse(s.to_string());
        let (pr, m) = s.split_once('/').ok_or_else(err)?;
        let (p, r) = pr.split_once('^').ok_or_else(err)?;
        let p: u64 = p.trim().parse().map_err(|_| err())?;
        let r: u32 = r.trim().parse().map_err(|_| err())?;
        let modulus = m
            .split(',')
            .map(|c| c.trim().parse::<u32>().map_err(|_| err()))
            .collect::<Result<Vec<_>, _>>()?;
        if modulus.len() != r as usize + 1 {
            return Err(GfError::BadModulus(r));
        }
        Self::with_modulus(p, &modulus)
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// A field element bundled with its field; operations check that both
/// operands share one field.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElem {
    spec: FieldSpec,
    value: Fe,
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.spec.format_elem(self.value))
    }
}

impl FieldElem {
    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn value(&self) -> Fe {
        self.value
    }

    pub fn coords(&self) -> Vec<u32> {
        self.spec.coords(self.value)
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    fn same(&self, other: &Self) -> Result<(), GfError> {
        if self.spec == other.spec {
            Ok(())
        } else {
            Err(GfError::FieldMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, GfError> {
        self.same(other)?;
        Ok(self.spec.elem(self.spec.add(self.value, other.value)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, GfError> {
        self.same(other)?;
        Ok(self.spec.elem(self.spec.sub(self.value, other.value)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self, GfError> {
        self.same(other)?;
        Ok(self.spec.elem(self.spec.mul(self.value, other.value)))
    }

    pub fn neg(&self) -> Self {
        self.spec.elem(self.spec.neg(self.value))
    }

    pub fn inv(&self) -> Result<Self, GfError> {
        Ok(self.spec.elem(self.spec.inv(self.value)?))
    }

    pub fn pow(&self, e: i64) -> Result<Self, GfError> {
        Ok(self.spec.elem(self.spec.pow(self.value, e)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_fields() -> Vec<FieldSpec> {
        [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16]
            .iter()
            .map(|&q| FieldSpec::with_order(q).unwrap())
            .collect()
    }

    #[test]
    fn construction_errors() {
        assert_eq!(FieldSpec::new(4, 1).unwrap_err(), GfError::NotPrime(4));
        assert_eq!(FieldSpec::new(2, 0).unwrap_err(), GfError::ZeroDegree);
        assert!(matches!(FieldSpec::new(2, 17), Err(GfError::TooLarge { .. })));
        assert!(FieldSpec::new(2, 16).is_ok());
        assert_eq!(FieldSpec::with_order(6).unwrap_err(), GfError::NotPrimePower(6));
        assert_eq!(FieldSpec::with_modulus(2, &[1, 0, 1]).unwrap_err(), GfError::Reducible(2));
    }

    #[test]
    fn canonical_moduli() {
        assert_eq!(FieldSpec::new(2, 1).unwrap().modulus(), &[0, 1]);
        assert_eq!(FieldSpec::new(2, 2).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(FieldSpec::new(2, 3).unwrap().modulus(), &[1, 0, 1, 1]);
    }

    #[test]
    fn f9_modulus_is_least_irreducible_quadratic() {
        // Brute-force: a monic quadratic over F_3 is irreducible iff it has no root.
        let mut irreducible: Vec<(u32, u32)> = Vec::new();
        for c0 in 0..3u32 {
            for c1 in 0..3u32 {
                if (0..3u32).all(|x| (x * x + c1 * x + c0) % 3 != 0) {
                    irreducible.push((c0, c1));
                }
            }
        }
        irreducible.sort();
        let (c0, c1) = irreducible[0];
        assert_eq!(FieldSpec::new(3, 2).unwrap().modulus(), &[c0, c1, 1]);
        assert_eq!((c0, c1), (1, 0));
    }

    #[test]
    fn small_examples() {
        let f3 = FieldSpec::new(3, 1).unwrap();
        assert_eq!(f3.add(Fe(2), Fe(2)), Fe(1));
        assert_eq!(f3.inv(Fe(2)).unwrap(), Fe(2));
        let f4 = FieldSpec::new(2, 2).unwrap();
        let t = f4.generator_t();
        let tt = f4.mul(t, t);
        assert_eq!(f4.coords(tt), vec![1, 1]);
        assert_eq!(f4.format_elem(tt), "1+T");
        assert_eq!(f4.inv(Fe::ZERO), Err(GfError::ZeroInverse));
        assert_eq!(f3.pow(Fe(2), -1).unwrap(), Fe(2));
        assert_eq!(f3.pow(Fe(0), -1), Err(GfError::ZeroInverse));
    }

    #[test]
    fn enumeration() {
        let f2 = FieldSpec::new(2, 1).unwrap();
        assert_eq!(f2.enumerate().collect::<Vec<_>>(), vec![Fe(0), Fe(1)]);
        let f3 = FieldSpec::new(3, 1).unwrap();
        assert_eq!(f3.enumerate_nonzero().collect::<Vec<_>>(), vec![Fe(1), Fe(2)]);
        let f4 = FieldSpec::new(2, 2).unwrap();
        let mut all: Vec<_> = f4.enumerate().collect();
        all.dedup();
        assert_eq!(all.len(), 4);
    }

    #[test]
    fn field_axioms_exhaustive() {
        for f in all_fields() {
            let q = f.order();
            let els: Vec<Fe> = f.enumerate().collect();
            for &a in &els {
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), Fe::ONE);
                    assert_eq!(f.pow(a, (q - 1) as i64).unwrap(), Fe::ONE);
                }
                assert_eq!(f.add(a, f.neg(a)), Fe::ZERO);
                for &b in &els {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    let p = f.characteristic() as i64;
                    let lhs = f.pow(f.add(a, b), p).unwrap();
                    let rhs = f.add(f.pow(a, p).unwrap(), f.pow(b, p).unwrap());
                    assert_eq!(lhs, rhs, "Frobenius in {f}");
                    if q <= 9 {
                        for &c in &els {
                            assert_eq!(
                                f.mul(a, f.add(b, c)),
                                f.add(f.mul(a, b), f.mul(a, c))
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn power_sums() {
        let f3 = FieldSpec::new(3, 1).unwrap();
        assert_eq!(f3.power_sum(1), Fe(0));
        assert_eq!(f3.power_sum(2), Fe(2));
        let f4 = FieldSpec::new(2, 2).unwrap();
        assert_eq!(f4.power_sum(3), Fe(1));
        assert_eq!(f3.power_sum(0), Fe(2));
    }

    #[test]
    fn primitive_element_is_least_generator() {
        for f in all_fields() {
            let g = f.primitive_element();
            assert_eq!(f.multiplicative_order(g), Some(f.order() - 1));
            for z in f.enumerate_nonzero().take_while(|&z| z < g) {
                assert!(f.multiplicative_order(z).unwrap() < f.order() - 1);
            }
        }
    }

    #[test]
    fn text_forms() {
        for f in all_fields() {
            for a in f.enumerate() {
                assert_eq!(f.parse_elem(&f.format_elem(a)).unwrap(), a);
            }
            assert_eq!(FieldSpec::parse(&f.to_string()).unwrap(), f);
        }
        let f9 = FieldSpec::new(3, 2).unwrap();
        assert_eq!(f9.to_string(), "3^2/1,0,1");
        assert_eq!(f9.parse_elem("T^2").unwrap(), f9.from_int(-1));
        assert!(f9.parse_elem("x").is_err());
    }

    #[test]
    fn checked_elements() {
        let f3 = FieldSpec::new(3, 1).unwrap();
        let f5 = FieldSpec::new(5, 1).unwrap();
        let a = f3.elem(Fe(1));
        let b = f5.elem(Fe(1));
        assert_eq!(a.add(&b), Err(GfError::FieldMismatch));
        assert_eq!(a.add(&a).unwrap().value(), Fe(2));
        assert_eq!(f3.elem(Fe(0)).inv(), Err(GfError::ZeroInverse));
    }
}
