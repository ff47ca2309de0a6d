//! Hilbert series `N(t) / prod (1 - t^d_i)` with exact integer numerators.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A rational series kept exactly as constructed; no cancellation is performed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertSeries {
    /// Dense coefficients `c_0, c_1, ...` of the numerator.
    #[serde(with = "coeffs")]
    pub numerator: Vec<BigInt>,
    /// Each `d` stands for a factor `1 - t^d`.
    pub denominator: Vec<u32>,
}

/// Integers serialize as JSON numbers when they fit in `i64`, otherwise as strings.
mod coeffs {
    use num_bigint::BigInt;
    use num_traits::ToPrimitive;
    use serde::{de::Error, Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    #[serde(untagged)]
    enum Coeff {
        Small(i64),
        Big(String),
    }

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        let out: Vec<Coeff> = v
            .iter()
            .map(|c| c.to_i64().map_or_else(|| Coeff::Big(c.to_string()), Coeff::Small))
            .collect();
        out.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<Coeff>::deserialize(d)?
            .into_iter()
            .map(|c| match c {
                Coeff::Small(n) => Ok(BigInt::from(n)),
                Coeff::Big(s) => s.parse().map_err(D::Error::custom),
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HilbertError {
    #[error("numerator is zero")]
    ZeroNumerator,
    #[error("not symmetric: coefficient of t^{low} is {low_coeff}, of t^{high} is {high_coeff}")]
    NotGorensteinSymmetric { low: usize, high: usize, low_coeff: String, high_coeff: String },
}

fn trim(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// `prod (1 - t^d)` as a dense polynomial.
fn denominator_poly(degs: &[u32]) -> Vec<BigInt> {
    let mut acc = vec![BigInt::one()];
    for &d in degs {
        let mut f = vec![BigInt::zero(); d as usize + 1];
        f[0] = BigInt::one();
        f[d as usize] -= 1;
        acc = poly_mul(&acc, &f);
    }
    acc
}

impl HilbertSeries {
    pub fn new(numerator: Vec<BigInt>, denominator: Vec<u32>) -> Self {
        HilbertSeries { numerator: trim(numerator), denominator }
    }

    /// `sum t^e / prod (1 - t^d)` over basis degrees `e` and parameter degrees `d`.
    pub fn from_free_module(basis_degrees: &[u32], hsop_degrees: &[u32]) -> Self {
        let top = basis_degrees.iter().copied().max().map_or(0, |m| m as usize + 1);
        let mut num = vec![BigInt::zero(); top];
        for &e in basis_degrees {
            num[e as usize] += 1;
        }
        HilbertSeries::new(num, hsop_degrees.to_vec())
    }

    /// Power-series coefficients of degrees `0..=dmax`.
    pub fn expand(&self, dmax: usize) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); dmax + 1];
        for (i, c) in self.numerator.iter().enumerate().take(dmax + 1) {
            out[i] = c.clone();
        }
        for &d in &self.denominator {
            let d = d as usize;
            // Multiply by 1 / (1 - t^d): prefix sums with stride d.
            for i in d..=dmax {
                let prev = out[i - d].clone();
                out[i] += prev;
            }
        }
        out
    }

    /// Equality as rational functions, by cross-multiplication.
    pub fn series_equal(&self, other: &HilbertSeries) -> bool {
        let lhs = trim(poly_mul(&self.numerator, &denominator_poly(&other.denominator)));
        let rhs = trim(poly_mul(&other.numerator, &denominator_poly(&self.denominator)));
        lhs == rhs
    }

    /// The exponent `i` with `H(1/t) = t^i H(t)`, if one exists.
    ///
    /// Writing the numerator as `t^v M(t)`, the equation holds exactly when
    /// `M` is palindromic or antipalindromic with sign `(-1)^m`, `m` the
    /// number of denominator factors; then `i = sum d - deg N - v`.
    pub fn gorenstein_check(&self) -> Result<i64, HilbertError> {
        let n = &self.numerator;
        let v = n.iter().position(|c| !c.is_zero()).ok_or(HilbertError::ZeroNumerator)?;
        let top = n.len() - 1;
        let sign: i32 = if self.denominator.len().is_multiple_of(2) { 1 } else { -1 };
        for k in 0..=(top - v) / 2 {
            let (lo, hi) = (v + k, top - k);
            if n[lo] != &n[hi] * sign {
                return Err(HilbertError::NotGorensteinSymmetric {
                    low: lo,
                    high: hi,
                    low_coeff: n[lo].to_string(),
                    high_coeff: n[hi].to_string(),
                });
            }
        }
        let sum: i64 = self.denominator.iter().map(|&d| d as i64).sum();
        Ok(sum - top as i64 - v as i64)
    }

    /// Nonzero numerator coefficients as `(exponent, coefficient)`.
    pub fn numerator_terms(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        self.numerator.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    /// Degree of the numerator.
    pub fn numerator_degree(&self) -> Option<usize> {
        if self.numerator.is_empty() {
            None
        } else {
            Some(self.numerator.len() - 1)
        }
    }
}

fn write_poly(f: &mut fmt::Formatter<'_>, coeffs: &[BigInt]) -> fmt::Result {
    let mut first = true;
    for (e, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if first {
            if c.is_negative() {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if c.is_negative() { " - " } else { " + " })?;
        }
        first = false;
        match (e, mag.is_one()) {
            (0, _) => write!(f, "{mag}")?,
            (_, true) => write_monomial(f, e)?,
            (_, false) => {
                write!(f, "{mag}*")?;
                write_monomial(f, e)?
            }
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

fn write_monomial(f: &mut fmt::Formatter<'_>, e: usize) -> fmt::Result {
    if e == 1 {
        f.write_str("t")
    } else {
        write!(f, "t^{e}")
    }
}

impl fmt::Display for HilbertSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        write_poly(f, &self.numerator)?;
        f.write_str(") / (")?;
        let mut degs = self.denominator.clone();
        degs.sort_unstable();
        let mut i = 0;
        let mut parts = Vec::new();
        while i < degs.len() {
            let d = degs[i];
            let run = degs[i..].iter().take_while(|&&x| x == d).count();
            let base = if d == 1 { "(1 - t)".to_string() } else { format!("(1 - t^{d})") };
            parts.push(if run == 1 { base } else { format!("{base}^{run}") });
            i += run;
        }
        if parts.is_empty() {
            f.write_str("1")?;
        }
        f.write_str(&parts.join("*"))?;
        f.write_str(")")
    }
}

/// The three numerator pieces of the closed-form `SL2` series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sl2Numerator {
    pub h1: Vec<BigInt>,
    /// `H2(1, t) + ... + H2(q, t)`.
    pub h2: Vec<BigInt>,
    pub h3: Vec<BigInt>,
}

fn dense(terms: impl IntoIterator<Item = (usize, i64)>) -> Vec<BigInt> {
    let mut out: Vec<BigInt> = Vec::new();
    for (e, c) in terms {
        if out.len() <= e {
            out.resize(e + 1, BigInt::zero());
        }
        out[e] += c;
    }
    trim(out)
}

/// `H1`: coefficients `1, 2, ..., q, ..., 2, 1` on `t^(m(q+1))`, `m = 0..2q-2`.
pub fn sl2_h1(q: u32) -> Vec<BigInt> {
    let q = q as i64;
    dense((0..=2 * q - 2).map(|m| ((m * (q + 1)) as usize, (m + 1).min(2 * q - 1 - m))))
}

/// `H2(k, t)`: coefficients `1, 2, ..., q-1, ..., 2, 1` on `t^(2k + j(q+1))`, `j = 0..2q-4`.
pub fn sl2_h2(q: u32, k: u32) -> Vec<BigInt> {
    let (q, k) = (q as i64, k as i64);
    dense((0..=2 * q - 4).map(|j| ((2 * k + j * (q + 1)) as usize, (j + 1).min(2 * q - 3 - j))))
}

/// `H3 = (q-2) sum_{k<q} t^(q^2 - q + 2k)`.
pub fn sl2_h3(q: u32) -> Vec<BigInt> {
    let q = q as i64;
    dense((0..q).map(|k| ((q * q - q + 2 * k) as usize, q - 2)))
}

fn poly_add(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] += c;
    }
    trim(out)
}

pub fn sl2_numerator(q: u32) -> Sl2Numerator {
    let h2 = (1..=q).fold(Vec::new(), |acc, k| poly_add(&acc, &sl2_h2(q, k)));
    Sl2Numerator { h1: sl2_h1(q), h2, h3: sl2_h3(q) }
}

/// `(H1 + sum_k H2(k) + H3) / ((1 - t^(q+1))^2 (1 - t^(q^2-q))^2)`.
pub fn closed_form_series_sl2(q: u32) -> HilbertSeries {
    let parts = sl2_numerator(q);
    let num = poly_add(&poly_add(&parts.h1, &parts.h2), &parts.h3);
    HilbertSeries::new(num, vec![q + 1, q * q - q, q + 1, q * q - q])
}
