//! Truncated bivariate power series in `(q, z)` for bigraded Euler
//! characteristics and Pochhammer products.
//!
//! `q` tracks conformal weight and `z` internal weight. A [`BiSeries`] is an
//! exact coefficient rectangle; multiplication discards terms outside it,
//! and division is defined whenever the constant term is a unit. Three
//! independent computations of the Euler characteristic of a presentation
//! are provided: the closed product over generators, the signed monomial
//! census, and the alternating sum of cohomology dimensions.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::gradedalg::{Presentation, Weighting};
use crate::homology::cohomology_dim;
use crate::scalar::Scalar;
use crate::Int;

/// An integer (by default) power series in `(q, z)`, truncated to the
/// rectangle `q^w z^m` with `w <= qmax`, `m <= zmax`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BiSeries<C = Int> {
    qmax: u32,
    zmax: u32,
    a: Vec<C>,
}

impl<C: Scalar> BiSeries<C> {
    pub fn zero(qmax: u32, zmax: u32) -> Self {
        BiSeries {
            qmax,
            zmax,
            a: vec![C::zero(); ((qmax + 1) * (zmax + 1)) as usize],
        }
    }

    pub fn one(qmax: u32, zmax: u32) -> Self {
        let mut s = Self::zero(qmax, zmax);
        s.set_coeff(0, 0, C::one());
        s
    }

    pub fn qmax(&self) -> u32 {
        self.qmax
    }

    pub fn zmax(&self) -> u32 {
        self.zmax
    }

    fn idx(&self, w: u32, m: u32) -> usize {
        (w * (self.zmax + 1) + m) as usize
    }

    pub fn coeff(&self, w: u32, m: u32) -> &C {
        &self.a[self.idx(w, m)]
    }

    /// Sets one coefficient; positions outside the rectangle are dropped.
    pub fn set_coeff(&mut self, w: u32, m: u32, v: C) {
        if w <= self.qmax && m <= self.zmax {
            let i = self.idx(w, m);
            self.a[i] = v;
        }
    }

    fn assert_same_rectangle(&self, other: &Self) {
        assert!(
            self.qmax == other.qmax && self.zmax == other.zmax,
            "series rectangles differ"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_same_rectangle(other);
        BiSeries {
            qmax: self.qmax,
            zmax: self.zmax,
            a: self
                .a
                .iter()
                .zip(&other.a)
                .map(|(x, y)| x.clone() + y.clone())
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.assert_same_rectangle(other);
        BiSeries {
            qmax: self.qmax,
            zmax: self.zmax,
            a: self
                .a
                .iter()
                .zip(&other.a)
                .map(|(x, y)| x.clone() - y.clone())
                .collect(),
        }
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, other: &Self) -> Self {
        self.assert_same_rectangle(other);
        let mut out = Self::zero(self.qmax, self.zmax);
        for w1 in 0..=self.qmax {
            for m1 in 0..=self.zmax {
                let c1 = self.coeff(w1, m1);
                if c1.is_zero() {
                    continue;
                }
                for w2 in 0..=self.qmax - w1 {
                    for m2 in 0..=self.zmax - m1 {
                        let c2 = other.coeff(w2, m2);
                        if c2.is_zero() {
                            continue;
                        }
                        let i = out.idx(w1 + w2, m1 + m2);
                        out.a[i] = out.a[i].clone() + c1.clone() * c2.clone();
                    }
                }
            }
        }
        out
    }

    /// Multiplicative inverse within the rectangle; the constant term must
    /// be a unit of the coefficient ring.
    pub fn invert(&self) -> Result<Self> {
        let u = self.coeff(0, 0).clone();
        if u.is_zero() {
            return Err(Error::NotAUnit);
        }
        let inv = C::one() / u.clone();
        if !(inv.clone() * u).is_one() {
            return Err(Error::NotAUnit);
        }
        let mut out = Self::zero(self.qmax, self.zmax);
        for w in 0..=self.qmax {
            for m in 0..=self.zmax {
                // b[w,m] = inv * (delta - sum_{(i,j) < (w,m)} a[w-i, m-j] b[i,j])
                let mut acc = if w == 0 && m == 0 {
                    C::one()
                } else {
                    C::zero()
                };
                for i in 0..=w {
                    for j in 0..=m {
                        if i == w && j == m {
                            continue;
                        }
                        let a = self.coeff(w - i, m - j);
                        let b = out.coeff(i, j);
                        if a.is_zero() || b.is_zero() {
                            continue;
                        }
                        acc = acc - a.clone() * b.clone();
                    }
                }
                let i = out.idx(w, m);
                out.a[i] = inv.clone() * acc;
            }
        }
        Ok(out)
    }

    /// Stable textual grid: one row per q-power, one column per z-power.
    pub fn grid_string(&self) -> String {
        let rendered: Vec<Vec<String>> = (0..=self.qmax)
            .map(|w| {
                (0..=self.zmax)
                    .map(|m| self.coeff(w, m).to_string())
                    .collect()
            })
            .collect();
        let mut widths: Vec<usize> = (0..=self.zmax as usize)
            .map(|m| format!("z^{m}").len())
            .collect();
        for row in &rendered {
            for (m, cell) in row.iter().enumerate() {
                widths[m] = widths[m].max(cell.len());
            }
        }
        let head_w = format!("q^{}", self.qmax).len();
        let mut out = String::new();
        let _ = write!(out, "{:head_w$}", "");
        for (m, width) in widths.iter().enumerate() {
            let _ = write!(out, "  {:>width$}", format!("z^{m}"));
        }
        out.push('\n');
        for (w, row) in rendered.iter().enumerate() {
            let _ = write!(out, "{:>head_w$}", format!("q^{w}"));
            for (m, cell) in row.iter().enumerate() {
                let _ = write!(out, "  {:>w$}", cell, w = widths[m]);
            }
            out.push('\n');
        }
        out
    }
}

/// `prod_{i=0}^{qmax} (1 + sign q^i z^{z_exp})`, the rectangle truncation of
/// the corresponding infinite Pochhammer product (factors beyond the
/// rectangle are 1 inside it).
pub fn pochhammer<C: Scalar>(sign: i8, z_exp: u32, qmax: u32, zmax: u32) -> BiSeries<C> {
    pochhammer_finite(sign, z_exp, qmax + 1, qmax, zmax)
}

/// `prod_{i=0}^{factors-1} (1 + sign q^i z^{z_exp})`, the finite product with
/// the stated number of factors.
pub fn pochhammer_finite<C: Scalar>(
    sign: i8,
    z_exp: u32,
    factors: u32,
    qmax: u32,
    zmax: u32,
) -> BiSeries<C> {
    assert!(z_exp >= 1, "z exponent must be positive");
    assert!(sign == 1 || sign == -1, "sign must be +1 or -1");
    let mut out = BiSeries::one(qmax, zmax);
    if z_exp > zmax {
        return out;
    }
    for i in 0..factors.min(qmax + 1) {
        let mut factor = BiSeries::one(qmax, zmax);
        let c = if sign == 1 { C::one() } else { -C::one() };
        factor.set_coeff(i, z_exp, c);
        out = out.mul(&factor);
    }
    out
}

/// Which sign the odd generators contribute to the closed product formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EulerConvention {
    /// Odd generators contribute `(1 - q^w z^m)`: the alternating-sum Euler
    /// characteristic.
    Euler,
    /// Odd generators contribute `(1 + q^w z^m)`: the super-dimension
    /// convention of the closed Pochhammer formula.
    Super,
}

impl std::fmt::Display for EulerConvention {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            EulerConvention::Euler => write!(f, "euler"),
            EulerConvention::Super => write!(f, "super"),
        }
    }
}

fn require_positive_weights<C: Scalar>(pres: &Presentation<C>) -> Result<()> {
    for g in pres.generators() {
        match g.internal_weight() {
            Some(iw) if iw >= 1 => {}
            Some(iw) => {
                return Err(Error::InfinitePiece(format!(
                    "generator {} has non-positive internal weight {iw}",
                    g.display_name()
                )))
            }
            None => {
                return Err(Error::InfinitePiece(format!(
                    "generator {} has no internal weight",
                    g.display_name()
                )))
            }
        }
    }
    Ok(())
}

/// Closed product over generators: every even generator of bidegree
/// `(w, m)` contributes `1/(1 - q^w z^m)`, every odd one `(1 -+ q^w z^m)`
/// according to the convention.
pub fn free_euler_series<C: Scalar>(
    pres: &Presentation<C>,
    qmax: u32,
    zmax: u32,
    convention: EulerConvention,
) -> Result<BiSeries<Int>> {
    require_positive_weights(pres)?;
    let mut out = BiSeries::one(qmax, zmax);
    for g in pres.generators() {
        let w = g.conformal_weight();
        let m = g.internal_weight().unwrap() as u64;
        if w > qmax || m > zmax as u64 {
            continue;
        }
        let m = m as u32;
        let mut factor = BiSeries::one(qmax, zmax);
        let sign: Int = match (g.is_odd(), convention) {
            (false, _) => -Int::from(1),
            (true, EulerConvention::Euler) => -Int::from(1),
            (true, EulerConvention::Super) => Int::from(1),
        };
        factor.set_coeff(w, m, sign);
        if g.is_odd() {
            out = out.mul(&factor);
        } else {
            out = out.mul(&factor.invert()?);
        }
    }
    Ok(out)
}

/// Brute-force monomial census: the coefficient of `q^w z^m` is the signed
/// count of monomials of that bidegree, with sign `(-1)^degree`.
pub fn complex_euler_series<C: Scalar>(
    pres: &Presentation<C>,
    qmax: u32,
    zmax: u32,
) -> Result<BiSeries<Int>> {
    let mut out = BiSeries::zero(qmax, zmax);
    for w in 0..=qmax {
        for m in 0..=zmax {
            let buckets = pres.column_bases(w, &Weighting::Internal(m as i64))?;
            let mut acc = Int::from(0);
            for (d, bucket) in &buckets {
                if (-d) % 2 == 0 {
                    acc += bucket.len() as i64;
                } else {
                    acc -= bucket.len() as i64;
                }
            }
            out.set_coeff(w, m, acc);
        }
    }
    Ok(out)
}

/// Alternating sum of cohomology dimensions per column, through the exact
/// rank computations.
pub fn cohomology_euler_series<C: Scalar>(
    pres: &Presentation<C>,
    qmax: u32,
    zmax: u32,
) -> Result<BiSeries<Int>> {
    let mut out = BiSeries::zero(qmax, zmax);
    for w in 0..=qmax {
        for m in 0..=zmax {
            let weighting = Weighting::Internal(m as i64);
            let buckets = pres.column_bases(w, &weighting)?;
            let i_max = buckets
                .keys()
                .filter(|&&d| d < 0)
                .map(|&d| (-d) as u32)
                .max()
                .unwrap_or(0);
            let mut acc = Int::from(0);
            for i in 0..=i_max {
                let dim = cohomology_dim(pres, i, w, &weighting)? as i64;
                if i % 2 == 0 {
                    acc += dim;
                } else {
                    acc -= dim;
                }
            }
            out.set_coeff(w, m, acc);
        }
    }
    Ok(out)
}
