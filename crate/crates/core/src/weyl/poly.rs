use std::collections::BTreeMap;
use std::fmt;

use crate::coeff::{ParamSpace, RatFunc};
use crate::error::{Error, Result};
use crate::monomial::Monomial;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::ctx::VarCtx;

/// Polynomial in the variables of `ctx` with `RatFunc` coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    ctx: VarCtx,
    space: ParamSpace,
    terms: BTreeMap<Monomial, RatFunc>,
}

impl Poly {
    pub fn zero(ctx: &VarCtx, space: &ParamSpace) -> Self {
        Poly {
            ctx: ctx.clone(),
            space: space.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ctx: &VarCtx, c: RatFunc) -> Self {
        let space = c.space().clone();
        let mut p = Poly::zero(ctx, &space);
        p.add_term(Monomial::one(ctx.len()), c);
        p
    }

    pub fn one(ctx: &VarCtx, space: &ParamSpace) -> Self {
        Poly::constant(ctx, RatFunc::one(space))
    }

    pub fn var(ctx: &VarCtx, space: &ParamSpace, i: usize) -> Self {
        Poly::monomial(ctx, Monomial::var(ctx.len(), i, 1), RatFunc::one(space))
    }

    pub fn monomial(ctx: &VarCtx, m: Monomial, c: RatFunc) -> Self {
        assert_eq!(m.nvars(), ctx.len(), "monomial arity");
        let space = c.space().clone();
        let mut p = Poly::zero(ctx, &space);
        p.add_term(m, c);
        p
    }

    /// `x^e` with unit coefficient.
    pub fn from_exponents(ctx: &VarCtx, space: &ParamSpace, e: &[u32]) -> Self {
        Poly::monomial(
            ctx,
            Monomial::from_exponents(e.to_vec()),
            RatFunc::one(space),
        )
    }

    pub fn from_terms(
        ctx: &VarCtx,
        space: &ParamSpace,
        terms: impl IntoIterator<Item = (Monomial, RatFunc)>,
    ) -> Self {
        let mut p = Poly::zero(ctx, space);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn ctx(&self) -> &VarCtx {
        &self.ctx
    }

    pub fn space(&self) -> &ParamSpace {
        &self.space
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &RatFunc)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> RatFunc {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| RatFunc::zero(&self.space))
    }

    pub fn add_term(&mut self, m: Monomial, c: RatFunc) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    fn check(&self, other: &Poly) -> Result<()> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch(format!(
                "variables {:?} vs {:?}",
                self.ctx, other.ctx
            )));
        }
        if self.space != other.space {
            return Err(Error::ContextMismatch(format!(
                "parameters {:?} vs {:?}",
                self.space, other.space
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(m.clone(), c.clone());
        }
        Ok(r)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.try_add(other).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        self.map_coeffs(|c| -c)
    }

    pub fn scale(&self, s: &RatFunc) -> Poly {
        if s.is_zero() {
            return Poly::zero(&self.ctx, &self.space);
        }
        self.map_coeffs(|c| c * s)
    }

    pub fn map_coeffs(&self, f: impl Fn(&RatFunc) -> RatFunc) -> Poly {
        let mut r = Poly::zero(&self.ctx, &self.space);
        for (m, c) in &self.terms {
            r.add_term(m.clone(), f(c));
        }
        r
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        let mut r = Poly::zero(&self.ctx, &self.space);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                r.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(r)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        self.try_mul(other).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &RatFunc) -> Poly {
        let mut r = Poly::zero(&self.ctx, &self.space);
        for (k, v) in &self.terms {
            r.add_term(k.mul(m), v * c);
        }
        r
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut r = Poly::one(&self.ctx, &self.space);
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// Partial derivative in variable `i`.
    pub fn derivative(&self, i: usize) -> Poly {
        let mut r = Poly::zero(&self.ctx, &self.space);
        for (m, c) in &self.terms {
            let e = m.exp(i);
            if e > 0 {
                let mut mm = m.clone();
                mm.set_exp(i, e - 1);
                r.add_term(mm, c.scale_int(e as i64));
            }
        }
        r
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// The common degree of all terms, if homogeneous and nonzero.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|m| m.degree());
        let d = it.next()?;
        if it.all(|e| e == d) {
            Some(d)
        } else {
            None
        }
    }

    /// Substitute `images[i]` for variable `i`. All images share one context.
    pub fn compose(&self, images: &[Poly]) -> Result<Poly> {
        if images.len() != self.ctx.len() {
            return Err(Error::Dimension(format!(
                "{} images for {} variables",
                images.len(),
                self.ctx.len()
            )));
        }
        let (tctx, tspace) = match images.first() {
            Some(p) => (p.ctx.clone(), p.space.clone()),
            None => (VarCtx::new::<&str>(&[]), self.space.clone()),
        };
        if tspace != self.space {
            return Err(Error::ContextMismatch("image parameter space".into()));
        }
        let mut powers: Vec<Vec<Poly>> = images
            .iter()
            .map(|p| vec![Poly::one(&tctx, &tspace), p.clone()])
            .collect();
        let mut r = Poly::zero(&tctx, &tspace);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(&tctx, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().try_mul(&images[i])?;
                    powers[i].push(next);
                }
                t = t.try_mul(&powers[i][e as usize])?;
            }
            r = r.try_add(&t)?;
        }
        Ok(r)
    }

    /// Move coefficients into a larger parameter space.
    pub fn lift_params(&self, space: &ParamSpace) -> Result<Poly> {
        let mut r = Poly::zero(&self.ctx, space);
        for (m, c) in &self.terms {
            r.add_term(m.clone(), c.lift(space)?);
        }
        Ok(r)
    }

    /// Re-label the variable context without touching exponents.
    pub fn with_ctx(&self, ctx: &VarCtx) -> Result<Poly> {
        if ctx.len() != self.ctx.len() {
            return Err(Error::Dimension("context length".into()));
        }
        Ok(Poly {
            ctx: ctx.clone(),
            space: self.space.clone(),
            terms: self.terms.clone(),
        })
    }

    /// `Some(c)` with `self = c * other`, or `None`. Zero is `0 * other`.
    pub fn ratio_to(&self, other: &Poly) -> Option<RatFunc> {
        if self.check(other).is_err() {
            return None;
        }
        if self.is_zero() {
            return Some(RatFunc::zero(&self.space));
        }
        if other.is_zero() || self.terms.len() != other.terms.len() {
            return None;
        }
        let (m0, c0) = other.terms.iter().next_back().unwrap();
        let s = self.terms.get(m0)? / c0;
        for (m, c) in &other.terms {
            if self.terms.get(m)? != &(c * &s) {
                return None;
            }
        }
        Some(s)
    }

    /// Projective equality: both zero, or `self = c * other` for some nonzero `c`.
    pub fn proportional(&self, other: &Poly) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero() && self.check(other).is_ok();
        }
        self.ratio_to(other).is_some()
    }

    pub fn to_latex(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let mono = monomial_latex(&self.ctx, m);
            out.push_str(&term_latex(c, &mono, i == 0));
        }
        out
    }
}

pub(crate) fn monomial_latex(ctx: &VarCtx, m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exponents().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(ctx.latex_name(i)),
            _ => parts.push(format!("{}^{{{}}}", ctx.latex_name(i), e)),
        }
    }
    parts.join(" ")
}

/// One signed term `c * mono` for a sum; `first` suppresses a leading `+`.
pub(crate) fn term_latex(c: &RatFunc, mono: &str, first: bool) -> String {
    let s = c.to_latex();
    let compound = c.numer().num_terms() > 1 && c.denom().is_one();
    let (neg, body) = match s.strip_prefix('-') {
        Some(r) if !compound => (true, r.to_string()),
        _ => (false, s),
    };
    let sign = match (first, neg) {
        (true, true) => "-",
        (true, false) => "",
        (false, true) => " - ",
        (false, false) => " + ",
    };
    let coeff = if mono.is_empty() {
        body
    } else if body == "1" {
        String::new()
    } else if compound {
        format!("({body}) ")
    } else {
        format!("{body} ")
    };
    format!("{sign}{coeff}{mono}")
}

/// One signed term `c*mono` in plain text; `first` suppresses a leading `+`.
pub(crate) fn term_plain(c: &RatFunc, mono: &str, first: bool) -> String {
    let (neg, body) = match c.as_constant() {
        Some(v) => {
            let neg = v < BigRational::zero();
            let a = if neg { -v } else { v };
            (
                neg,
                if a.is_one() && !mono.is_empty() {
                    String::new()
                } else {
                    a.to_string()
                },
            )
        }
        None => (false, format!("({c})")),
    };
    let sign = match (first, neg) {
        (true, true) => "-",
        (true, false) => "",
        (false, true) => " - ",
        (false, false) => " + ",
    };
    let join = if body.is_empty() || mono.is_empty() {
        ""
    } else {
        "*"
    };
    format!("{sign}{body}{join}{mono}")
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let mut parts = Vec::new();
            for (j, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => parts.push(self.ctx.name(j).to_string()),
                    _ => parts.push(format!("{}^{}", self.ctx.name(j), e)),
                }
            }
            write!(f, "{}", term_plain(c, &parts.join("*"), i == 0))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
