//! Jacobi and Gegenbauer polynomials with symbolic parameters, their
//! two-variable inflations, and residuals of the associated ODEs.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::coeff::{ParamSpace, RatFunc};
use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::weyl::{Poly, VarCtx};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Jacobi,
    Gegenbauer,
}

/// A classical orthogonal polynomial in the variable `t`.
#[derive(Clone, Debug, PartialEq)]
pub struct OrthoPoly {
    pub family: Family,
    pub degree: u32,
    /// `[α, β]` for Jacobi, `[α]` for Gegenbauer.
    pub params: Vec<RatFunc>,
    pub poly: Poly,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct OrthoPolyJson {
    pub family: Family,
    pub degree: u32,
    pub params: Vec<String>,
    /// Coefficient of `t^i` at index `i`.
    pub coeffs: Vec<String>,
}

/// Rising factorial `(x)_k = x (x+1) ... (x+k-1)`.
pub fn pochhammer(x: &RatFunc, k: u32) -> RatFunc {
    let s = x.space();
    (0..k).fold(RatFunc::one(s), |acc, i| acc * (x + &s.int(i as i64)))
}

fn factorial(k: u32) -> i64 {
    (1..=k as i64).product()
}

fn binomial(n: u32, k: u32) -> i64 {
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// Context with the single variable `t`.
pub fn t_ctx() -> VarCtx {
    VarCtx::new(&["t"])
}

/// Context `(x, y)` of the inflations.
pub fn xy_ctx() -> VarCtx {
    VarCtx::new(&["x", "y"])
}

/// `P_ℓ^{α,β}(t) = (1/ℓ!) sum_m C(ℓ,m) (α+β+ℓ+1)_m (α+m+1)_{ℓ-m} ((t-1)/2)^m`.
pub fn jacobi(l: u32, alpha: &RatFunc, beta: &RatFunc) -> OrthoPoly {
    let s = alpha.space();
    let ctx = t_ctx();
    let t = Poly::var(&ctx, s, 0);
    let half_tm1 = t.sub(&Poly::one(&ctx, s)).scale(&s.rat(1, 2));
    let ab = alpha + beta + s.int(l as i64 + 1);
    let mut p = Poly::zero(&ctx, s);
    for m in 0..=l {
        let c = pochhammer(&ab, m)
            * pochhammer(&(alpha + &s.int(m as i64 + 1)), l - m)
            * s.rat(binomial(l, m), factorial(l));
        p = p.add(&half_tm1.pow(m).scale(&c));
    }
    OrthoPoly {
        family: Family::Jacobi,
        degree: l,
        params: vec![alpha.clone(), beta.clone()],
        poly: p,
    }
}

/// `C_ℓ^α(t) = sum_k (-1)^k (α)_{ℓ-k} / (k! (ℓ-2k)!) (2t)^{ℓ-2k}`.
pub fn gegenbauer(l: u32, alpha: &RatFunc) -> OrthoPoly {
    let s = alpha.space();
    let ctx = t_ctx();
    let mut p = Poly::zero(&ctx, s);
    for k in 0..=l / 2 {
        let e = l - 2 * k;
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let c = pochhammer(alpha, l - k) * s.rat(sign * (1i64 << e), factorial(k) * factorial(e));
        p.add_term(Monomial::var(1, 0, e), c);
    }
    OrthoPoly {
        family: Family::Gegenbauer,
        degree: l,
        params: vec![alpha.clone()],
        poly: p,
    }
}

impl OrthoPoly {
    /// Coefficient of `t^i`.
    pub fn coeff(&self, i: u32) -> RatFunc {
        self.poly.coeff(&Monomial::var(1, 0, i))
    }

    /// Two-variable inflation in the context `(x, y)`:
    /// Gegenbauer `x^{ℓ/2} C(y/√x)`, Jacobi `y^ℓ P(2x/y + 1)`.
    pub fn inflate(&self) -> Poly {
        let s = self.poly.space();
        let ctx = xy_ctx();
        let l = self.degree;
        match self.family {
            Family::Gegenbauer => {
                let mut r = Poly::zero(&ctx, s);
                for (m, c) in self.poly.terms() {
                    let e = m.exp(0);
                    assert!((l - e).is_multiple_of(2), "Gegenbauer parity violated");
                    r.add_term(Monomial::from_exponents(vec![(l - e) / 2, e]), c.clone());
                }
                r
            }
            Family::Jacobi => {
                let x = Poly::var(&ctx, s, 0);
                let y = Poly::var(&ctx, s, 1);
                let arg = x.scale(&s.int(2)).add(&y);
                let mut r = Poly::zero(&ctx, s);
                for (m, c) in self.poly.terms() {
                    let e = m.exp(0);
                    r = r.add(&arg.pow(e).mul(&y.pow(l - e)).scale(c));
                }
                r
            }
        }
    }

    pub fn to_latex(&self) -> String {
        self.poly.to_latex()
    }

    pub fn to_json(&self) -> OrthoPolyJson {
        OrthoPolyJson {
            family: self.family,
            degree: self.degree,
            params: self.params.iter().map(|p| p.to_string()).collect(),
            coeffs: (0..=self.degree)
                .map(|i| self.coeff(i).to_string())
                .collect(),
        }
    }
}

/// Which ODE to evaluate in [`ode_residual`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OdeKind {
    /// `((1-t²)ϑ² - (1+2αt²)ϑ + ℓ(ℓ+2α)t²) y`; keys `ell`, `alpha`.
    Gegenbauer,
    /// `(1-t²)y'' + (β-α-(α+β+2)t)y' + ℓ(ℓ+α+β+1)y`; keys `ell`, `alpha`, `beta`.
    Jacobi,
    /// `((1-s²)ϑ² - (1+(2λ-n+1)s²)ϑ + a(a+2λ-n+1)s²) g`; keys `a`, `lambda`, `n`.
    De3,
    /// `((1-t²)ϑ² - (1+2(n-μ)t²)ϑ + a(a+2(n-μ))t²) g` with `μ = -λ+n+1`;
    /// keys `a`, `lambda`, `n`.
    De2,
    /// `(1-s²)g'' + q(s)g' + a(1-a₂-a)g`, `q(s) = s(a₂-2+2a) - 2a₁ - a₂ - 2a + 2`;
    /// keys `a`, `a1`, `a2`.
    De1,
}

/// Coefficients of a second-order operator acting on polynomials of one variable.
#[derive(Clone, Debug, PartialEq)]
pub struct SecondOrder {
    /// `true`: coefficients multiply `ϑ², ϑ, 1`; `false`: `d², d, 1`.
    pub theta_form: bool,
    pub c2: Poly,
    pub c1: Poly,
    pub c0: Poly,
}

impl SecondOrder {
    /// Apply to a polynomial in the same single-variable context.
    pub fn apply(&self, g: &Poly) -> Poly {
        let (d1, d2) = if self.theta_form {
            let th = theta(g);
            let th2 = theta(&th);
            (th, th2)
        } else {
            let d = g.derivative(0);
            let dd = d.derivative(0);
            (d, dd)
        };
        self.c2.mul(&d2).add(&self.c1.mul(&d1)).add(&self.c0.mul(g))
    }
}

fn theta(g: &Poly) -> Poly {
    let t = Poly::var(g.ctx(), g.space(), 0);
    t.mul(&g.derivative(0))
}

fn need(params: &BTreeMap<String, RatFunc>, key: &str) -> Result<RatFunc> {
    params
        .get(key)
        .cloned()
        .ok_or_else(|| Error::MissingParameter(key.to_string()))
}

/// The ODE operator of the given kind, in the context `ctx` (one variable).
pub fn ode_operator(
    kind: OdeKind,
    params: &BTreeMap<String, RatFunc>,
    ctx: &VarCtx,
    space: &ParamSpace,
) -> Result<SecondOrder> {
    let one = Poly::one(ctx, space);
    let t = Poly::var(ctx, space, 0);
    let t2 = t.pow(2);
    let c = |r: &RatFunc| Poly::constant(ctx, r.clone());
    let int = |n: i64| space.int(n);
    Ok(match kind {
        OdeKind::Gegenbauer => {
            let l = need(params, "ell")?;
            let al = need(params, "alpha")?;
            SecondOrder {
                theta_form: true,
                c2: one.sub(&t2),
                c1: one.add(&t2.scale(&al.scale_int(2))).neg(),
                c0: t2.scale(&(&l * &(&l + &al.scale_int(2)))),
            }
        }
        OdeKind::Jacobi => {
            let l = need(params, "ell")?;
            let al = need(params, "alpha")?;
            let be = need(params, "beta")?;
            SecondOrder {
                theta_form: false,
                c2: one.sub(&t2),
                c1: c(&(&be - &al)).sub(&t.scale(&(&al + &be + int(2)))),
                c0: c(&(&l * &(&l + &al + &be + int(1)))),
            }
        }
        OdeKind::De3 => {
            let a = need(params, "a")?;
            let la = need(params, "lambda")?;
            let n = need(params, "n")?;
            let k = la.scale_int(2) - n + int(1);
            SecondOrder {
                theta_form: true,
                c2: one.sub(&t2),
                c1: one.add(&t2.scale(&k)).neg(),
                c0: t2.scale(&(&a * &(&a + &k))),
            }
        }
        OdeKind::De2 => {
            let a = need(params, "a")?;
            let la = need(params, "lambda")?;
            let n = need(params, "n")?;
            let mu = -&la + &n + int(1);
            let k = (&n - &mu).scale_int(2);
            SecondOrder {
                theta_form: true,
                c2: one.sub(&t2),
                c1: one.add(&t2.scale(&k)).neg(),
                c0: t2.scale(&(&a * &(&a + &k))),
            }
        }
        OdeKind::De1 => {
            let a = need(params, "a")?;
            let a1 = need(params, "a1")?;
            let a2 = need(params, "a2")?;
            let slope = &a2 - &int(2) + a.scale_int(2);
            let cst = -a1.scale_int(2) - &a2 - a.scale_int(2) + int(2);
            SecondOrder {
                theta_form: false,
                c2: one.sub(&t2),
                c1: t.scale(&slope).add(&c(&cst)),
                c0: c(&(&a * &(int(1) - &a2 - &a))),
            }
        }
    })
}

/// Left-hand side of the selected ODE applied to `g` (a polynomial in one variable).
pub fn ode_residual(kind: OdeKind, params: &BTreeMap<String, RatFunc>, g: &Poly) -> Result<Poly> {
    if g.ctx().len() != 1 {
        return Err(Error::Dimension(
            "ODE residual needs a one-variable polynomial".into(),
        ));
    }
    let op = ode_operator(kind, params, g.ctx(), g.space())?;
    Ok(op.apply(g))
}

/// Build a parameter map from `(key, value)` pairs.
pub fn params(pairs: &[(&str, RatFunc)]) -> BTreeMap<String, RatFunc> {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp() -> ParamSpace {
        ParamSpace::new(&["alpha", "beta"])
    }

    #[test]
    fn low_degree_jacobi() {
        let s = sp();
        let (a, b) = (s.p("alpha"), s.p("beta"));
        assert_eq!(jacobi(0, &a, &b).poly, Poly::one(&t_ctx(), &s));
        let p1 = jacobi(1, &a, &b);
        assert_eq!(
            p1.coeff(0),
            (&a - &b).scale(&s.rat(1, 2).as_constant().unwrap())
        );
        assert_eq!(p1.coeff(1), (&a + &b + s.int(2)) / s.int(2));
    }

    #[test]
    fn low_degree_gegenbauer() {
        let s = sp();
        let a = s.p("alpha");
        let c1 = gegenbauer(1, &a);
        assert_eq!(c1.coeff(1), a.scale_int(2));
        let c2 = gegenbauer(2, &a);
        assert_eq!(c2.coeff(0), -a.clone());
        assert_eq!(c2.coeff(2), (&a * &(&a + &s.int(1))).scale_int(2));
    }

    #[test]
    fn inflation_examples() {
        let s = sp();
        let a = s.p("alpha");
        let b = s.p("beta");
        let ctx = xy_ctx();
        let x = Poly::var(&ctx, &s, 0);
        let y = Poly::var(&ctx, &s, 1);
        let c2 = gegenbauer(2, &a).inflate();
        let expect = y
            .pow(2)
            .scale(&(&a * &(&a + &s.int(1))).scale_int(2))
            .sub(&x.scale(&a));
        assert_eq!(c2, expect);
        let p1 = jacobi(1, &a, &b).inflate();
        let expect = x
            .scale(&(&a + &b + s.int(2)))
            .add(&y.scale(&(&a + &s.int(1))));
        assert_eq!(p1, expect);
    }

    #[test]
    fn missing_parameter() {
        let s = sp();
        let g = Poly::one(&t_ctx(), &s);
        let r = ode_residual(OdeKind::Jacobi, &params(&[("ell", s.int(1))]), &g);
        assert!(matches!(r, Err(Error::MissingParameter(_))));
    }
}
