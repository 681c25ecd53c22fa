//! Truncated q-expansions, Eisenstein series, Δ, and the Rankin–Cohen bracket.
//!
//! Derivatives use `D = q d/dq`; the bracket therefore differs from the one
//! written with `d/dz` by the overall factor `(2πi)^a`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::coeff::ParamSpace;
use crate::monomial::Monomial;
use crate::weyl::{Poly, VarCtx};
use crate::{Error, Result};

/// `Σ_{i≤N} c_i q^i` with a declared weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    pub weight: i64,
    coeffs: Vec<BigRational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QSeriesJson {
    pub weight: i64,
    #[serde(rename = "N")]
    pub n: usize,
    pub coeffs: Vec<String>,
}

impl QSeries {
    pub fn new(weight: i64, coeffs: Vec<BigRational>) -> Result<QSeries> {
        if coeffs.is_empty() {
            return Err(Error::Dimension(
                "a q-series needs at least the constant term".into(),
            ));
        }
        Ok(QSeries { weight, coeffs })
    }

    pub fn from_ints(weight: i64, coeffs: &[i64]) -> Result<QSeries> {
        QSeries::new(
            weight,
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn zero(weight: i64, n: usize) -> QSeries {
        QSeries {
            weight,
            coeffs: vec![BigRational::zero(); n + 1],
        }
    }

    /// Truncation order `N`.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn same_order(&self, other: &QSeries) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::Dimension(format!(
                "truncation orders differ: {} vs {}",
                self.order(),
                other.order()
            )));
        }
        Ok(())
    }

    /// Keep terms up to `q^n`; `n` may not exceed the current order.
    pub fn truncate(&self, n: usize) -> Result<QSeries> {
        if n > self.order() {
            return Err(Error::OutOfRange(format!(
                "cannot extend order {} to {n}",
                self.order()
            )));
        }
        Ok(QSeries {
            weight: self.weight,
            coeffs: self.coeffs[..=n].to_vec(),
        })
    }

    /// Sum; the weight of `self` is kept.
    pub fn add(&self, other: &QSeries) -> Result<QSeries> {
        self.same_order(other)?;
        Ok(QSeries {
            weight: self.weight,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn scale(&self, c: &BigRational) -> QSeries {
        QSeries {
            weight: self.weight,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Product truncated at the common order; weights add.
    pub fn mul(&self, other: &QSeries) -> Result<QSeries> {
        self.same_order(other)?;
        let n = self.order();
        let mut c = vec![BigRational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Ok(QSeries {
            weight: self.weight + other.weight,
            coeffs: c,
        })
    }

    pub fn to_json(&self) -> QSeriesJson {
        QSeriesJson {
            weight: self.weight,
            n: self.order(),
            coeffs: self.coeffs.iter().map(|c| c.to_string()).collect(),
        }
    }

    pub fn from_json(j: &QSeriesJson) -> Result<QSeries> {
        if j.coeffs.len() != j.n + 1 {
            return Err(Error::Parse(format!(
                "expected {} coefficients, got {}",
                j.n + 1,
                j.coeffs.len()
            )));
        }
        let coeffs = j
            .coeffs
            .iter()
            .map(|c| crate::coeff::parse_rational(c))
            .collect::<Result<Vec<_>>>()?;
        QSeries::new(j.weight, coeffs)
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(", "))
    }
}

fn binom(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// Bernoulli number `B_m` with `B_1 = -1/2`, from `Σ_{j≤m} C(m+1,j) B_j = 0`.
pub fn bernoulli(m: usize) -> BigRational {
    let mut b: Vec<BigRational> = vec![BigRational::one()];
    for k in 1..=m {
        let mut s = BigRational::zero();
        for (j, bj) in b.iter().enumerate() {
            s += BigRational::from_integer(binom(k as i64 + 1, j as i64)) * bj;
        }
        b.push(-s / BigRational::from_integer(BigInt::from(k + 1)));
    }
    b[m].clone()
}

fn sigma(n: usize, p: u32) -> BigInt {
    let mut s = BigInt::zero();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            s += BigInt::from(d).pow(p);
            let e = n / d;
            if e != d {
                s += BigInt::from(e).pow(p);
            }
        }
        d += 1;
    }
    s
}

/// `E_k = 1 - (2k/B_k) Σ σ_{k-1}(n) q^n` up to `q^N`.
pub fn eisenstein(k: i64, n: usize) -> Result<QSeries> {
    if k < 4 || k.is_odd() {
        return Err(Error::Domain(format!(
            "Eisenstein series need even weight >= 4, got {k}"
        )));
    }
    let c = -BigRational::from_integer((2 * k).into()) / bernoulli(k as usize);
    let mut coeffs = vec![BigRational::one()];
    for i in 1..=n {
        coeffs.push(&c * BigRational::from_integer(sigma(i, (k - 1) as u32)));
    }
    QSeries::new(k, coeffs)
}

/// `Δ = q ∏_{m≥1} (1 - q^m)^24` up to `q^N`.
pub fn delta(n: usize) -> QSeries {
    let mut p = vec![BigRational::zero(); n + 1];
    p[0] = BigRational::one();
    for m in 1..=n {
        for _ in 0..24 {
            for i in (m..=n).rev() {
                let t = p[i - m].clone();
                p[i] -= t;
            }
        }
    }
    let mut c = vec![BigRational::zero(); n + 1];
    c[1..].clone_from_slice(&p[..n]);
    QSeries {
        weight: 12,
        coeffs: c,
    }
}

/// `D = q d/dq`; the declared weight goes up by 2.
pub fn derive(f: &QSeries) -> QSeries {
    QSeries {
        weight: f.weight + 2,
        coeffs: f
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * BigRational::from_integer(i.into()))
            .collect(),
    }
}

/// Rankin–Cohen bracket `Σ_ℓ (-1)^ℓ C(k₁+a-1,ℓ) C(k₂+a-1,a-ℓ) D^{a-ℓ}f₁ D^ℓf₂`, weight `k₁+k₂+2a`.
pub fn rc_bracket(f1: &QSeries, k1: i64, f2: &QSeries, k2: i64, a: u32) -> Result<QSeries> {
    f1.same_order(f2)?;
    let a = a as i64;
    let mut d1 = vec![f1.clone()];
    let mut d2 = vec![f2.clone()];
    for _ in 0..a {
        d1.push(derive(d1.last().unwrap()));
        d2.push(derive(d2.last().unwrap()));
    }
    let mut out = QSeries::zero(k1 + k2 + 2 * a, f1.order());
    for l in 0..=a {
        let c = binom(k1 + a - 1, l) * binom(k2 + a - 1, a - l);
        let c = if l % 2 == 1 { -c } else { c };
        if c.is_zero() {
            continue;
        }
        let term = d1[(a - l) as usize]
            .mul(&d2[l as usize])?
            .scale(&BigRational::from_integer(c));
        out = out.add(&term)?;
    }
    out.weight = k1 + k2 + 2 * a;
    Ok(out)
}

/// Variables `ξ′, ξ″` of [`rc_symbol`].
pub fn rc_ctx() -> VarCtx {
    VarCtx::new(&["xi'", "xi''"])
}

/// `Σ_ℓ (-1)^ℓ C(k₁+a-1,ℓ) C(k₂+a-1,a-ℓ) ξ′^{a-ℓ} ξ″^ℓ` over rational constants.
pub fn rc_symbol(k1: i64, k2: i64, a: u32) -> Poly {
    let ctx = rc_ctx();
    let s = ParamSpace::empty();
    let a = a as i64;
    let mut p = Poly::zero(&ctx, &s);
    for l in 0..=a {
        let c = binom(k1 + a - 1, l) * binom(k2 + a - 1, a - l);
        let c = if l % 2 == 1 { -c } else { c };
        let m = Monomial::from_exponents(vec![(a - l) as u32, l as u32]);
        p.add_term(
            m,
            crate::coeff::RatFunc::from_rational(&s, BigRational::from_integer(c)),
        );
    }
    p
}

/// `c` with `f = c·g` on every stored coefficient.
pub fn is_proportional(f: &QSeries, g: &QSeries) -> Option<BigRational> {
    if f.order() != g.order() {
        return None;
    }
    if f.is_zero() {
        return Some(BigRational::zero());
    }
    let i = g.coeffs.iter().position(|c| !c.is_zero())?;
    let c = &f.coeffs[i] / &g.coeffs[i];
    f.coeffs
        .iter()
        .zip(&g.coeffs)
        .all(|(x, y)| *x == &c * y)
        .then_some(c)
}
