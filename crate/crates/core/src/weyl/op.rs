use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::coeff::{parse_ratfunc, ParamSpace, RatFunc};
use crate::error::{Error, Result};
use crate::monomial::Monomial;

use super::ctx::VarCtx;
use super::poly::{monomial_latex, term_latex, term_plain, Poly};

/// Normal-ordered operator `sum c[α,β] x^α ∂^β`.
#[derive(Clone, PartialEq, Eq)]
pub struct WeylOp {
    ctx: VarCtx,
    space: ParamSpace,
    terms: BTreeMap<(Monomial, Monomial), RatFunc>,
}

/// JSON term of a [`WeylOp`].
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct WeylTermJson {
    pub alpha: Vec<u32>,
    pub beta: Vec<u32>,
    pub coeff: String,
}

fn falling(g: u32, k: u32) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(g - i))
}

fn binom(n: u32, k: u32) -> BigInt {
    falling(n, k) / falling(k, k)
}

impl WeylOp {
    pub fn zero(ctx: &VarCtx, space: &ParamSpace) -> Self {
        WeylOp {
            ctx: ctx.clone(),
            space: space.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(ctx: &VarCtx, c: RatFunc) -> Self {
        let mut t = WeylOp::zero(ctx, c.space());
        let one = Monomial::one(ctx.len());
        t.add_term(one.clone(), one, c);
        t
    }

    pub fn identity(ctx: &VarCtx, space: &ParamSpace) -> Self {
        WeylOp::scalar(ctx, RatFunc::one(space))
    }

    /// `c x^α ∂^β`.
    pub fn term(ctx: &VarCtx, alpha: Monomial, beta: Monomial, c: RatFunc) -> Self {
        let mut t = WeylOp::zero(ctx, c.space());
        t.add_term(alpha, beta, c);
        t
    }

    /// Multiplication by `x_i`.
    pub fn x(ctx: &VarCtx, space: &ParamSpace, i: usize) -> Self {
        WeylOp::term(
            ctx,
            Monomial::var(ctx.len(), i, 1),
            Monomial::one(ctx.len()),
            RatFunc::one(space),
        )
    }

    /// `∂/∂x_i`.
    pub fn d(ctx: &VarCtx, space: &ParamSpace, i: usize) -> Self {
        WeylOp::term(
            ctx,
            Monomial::one(ctx.len()),
            Monomial::var(ctx.len(), i, 1),
            RatFunc::one(space),
        )
    }

    /// Multiplication by the polynomial `p`.
    pub fn mul_by(p: &Poly) -> Self {
        let mut t = WeylOp::zero(p.ctx(), p.space());
        for (m, c) in p.terms() {
            t.add_term(m.clone(), Monomial::one(p.ctx().len()), c.clone());
        }
        t
    }

    /// Euler operator `sum x_i ∂_i`.
    pub fn euler(ctx: &VarCtx, space: &ParamSpace) -> Self {
        let mut t = WeylOp::zero(ctx, space);
        for i in 0..ctx.len() {
            t.add_term(
                Monomial::var(ctx.len(), i, 1),
                Monomial::var(ctx.len(), i, 1),
                RatFunc::one(space),
            );
        }
        t
    }

    /// Euler operator restricted to the listed variables.
    pub fn euler_on(ctx: &VarCtx, space: &ParamSpace, vars: &[usize]) -> Self {
        let mut t = WeylOp::zero(ctx, space);
        for &i in vars {
            t.add_term(
                Monomial::var(ctx.len(), i, 1),
                Monomial::var(ctx.len(), i, 1),
                RatFunc::one(space),
            );
        }
        t
    }

    /// `sum_{i in vars} ∂_i^2`.
    pub fn laplacian_on(ctx: &VarCtx, space: &ParamSpace, vars: &[usize]) -> Self {
        let mut t = WeylOp::zero(ctx, space);
        for &i in vars {
            t.add_term(
                Monomial::one(ctx.len()),
                Monomial::var(ctx.len(), i, 2),
                RatFunc::one(space),
            );
        }
        t
    }

    pub fn ctx(&self) -> &VarCtx {
        &self.ctx
    }

    pub fn space(&self) -> &ParamSpace {
        &self.space
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&(Monomial, Monomial), &RatFunc)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, alpha: Monomial, beta: Monomial, c: RatFunc) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((alpha, beta)) {
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

    pub fn coeff(&self, alpha: &Monomial, beta: &Monomial) -> RatFunc {
        self.terms
            .get(&(alpha.clone(), beta.clone()))
            .cloned()
            .unwrap_or_else(|| RatFunc::zero(&self.space))
    }

    /// Maximal derivative order `max |β|`; zero for the zero operator.
    pub fn order(&self) -> u32 {
        self.terms
            .keys()
            .map(|(_, b)| b.degree())
            .max()
            .unwrap_or(0)
    }

    /// Common `|α| - |β|` of all terms, if there is one.
    pub fn degree(&self) -> Option<i64> {
        let mut it = self
            .terms
            .keys()
            .map(|(a, b)| a.degree() as i64 - b.degree() as i64);
        let d = it.next()?;
        if it.all(|e| e == d) {
            Some(d)
        } else {
            None
        }
    }

    pub fn is_constant_coeff(&self) -> bool {
        self.terms.keys().all(|(a, _)| a.is_one())
    }

    fn check_ctx(&self, ctx: &VarCtx, space: &ParamSpace) -> Result<()> {
        if &self.ctx != ctx {
            return Err(Error::ContextMismatch(format!(
                "variables {:?} vs {:?}",
                self.ctx, ctx
            )));
        }
        if &self.space != space {
            return Err(Error::ContextMismatch(format!(
                "parameters {:?} vs {:?}",
                self.space, space
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &WeylOp) -> Result<WeylOp> {
        self.check_ctx(&other.ctx, &other.space)?;
        let mut r = self.clone();
        for ((a, b), c) in &other.terms {
            r.add_term(a.clone(), b.clone(), c.clone());
        }
        Ok(r)
    }

    pub fn add(&self, other: &WeylOp) -> WeylOp {
        self.try_add(other).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn sub(&self, other: &WeylOp) -> WeylOp {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> WeylOp {
        self.map_coeffs(|c| -c)
    }

    pub fn scale(&self, s: &RatFunc) -> WeylOp {
        if s.is_zero() {
            return WeylOp::zero(&self.ctx, &self.space);
        }
        self.map_coeffs(|c| c * s)
    }

    pub fn map_coeffs(&self, f: impl Fn(&RatFunc) -> RatFunc) -> WeylOp {
        let mut r = WeylOp::zero(&self.ctx, &self.space);
        for ((a, b), c) in &self.terms {
            r.add_term(a.clone(), b.clone(), f(c));
        }
        r
    }

    /// Adds `self + c` where `c` is a scalar.
    pub fn add_scalar(&self, c: &RatFunc) -> WeylOp {
        self.add(&WeylOp::scalar(&self.ctx, c.clone()))
    }

    /// Normal-ordered product `self ∘ other`.
    pub fn compose(&self, other: &WeylOp) -> Result<WeylOp> {
        self.check_ctx(&other.ctx, &other.space)?;
        let n = self.ctx.len();
        let mut r = WeylOp::zero(&self.ctx, &self.space);
        for ((a1, b1), c1) in &self.terms {
            for ((g, d2), c2) in &other.terms {
                let c = c1 * c2;
                // ∂^β x^γ = sum_κ prod_i C(β_i,κ_i) γ_i!/(γ_i-κ_i)! x^(γ-κ) ∂^(β-κ)
                let bounds: Vec<u32> = (0..n).map(|i| b1.exp(i).min(g.exp(i))).collect();
                for kappa in boxed(&bounds) {
                    let mut w = BigInt::one();
                    let mut xa = a1.clone();
                    let mut db = d2.clone();
                    for i in 0..n {
                        let k = kappa[i];
                        w *= binom(b1.exp(i), k) * falling(g.exp(i), k);
                        xa.set_exp(i, xa.exp(i) + g.exp(i) - k);
                        db.set_exp(i, db.exp(i) + b1.exp(i) - k);
                    }
                    r.add_term(xa, db, c.scale(&BigRational::from_integer(w)));
                }
            }
        }
        Ok(r)
    }

    /// Panicking variant of [`WeylOp::compose`].
    pub fn then(&self, other: &WeylOp) -> WeylOp {
        self.compose(other).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn commutator(&self, other: &WeylOp) -> Result<WeylOp> {
        Ok(self.compose(other)?.sub(&other.compose(self)?))
    }

    /// Action on polynomials.
    pub fn apply(&self, p: &Poly) -> Result<Poly> {
        self.check_ctx(p.ctx(), p.space())?;
        let mut r = Poly::zero(&self.ctx, &self.space);
        let n = self.ctx.len();
        for ((a, b), c) in &self.terms {
            for (m, pc) in p.terms() {
                if !b.divides(m) {
                    continue;
                }
                let mut w = BigInt::one();
                for i in 0..n {
                    w *= falling(m.exp(i), b.exp(i));
                }
                let mm = b.div_of(m).unwrap().mul(a);
                r.add_term(mm, (c * pc).scale(&BigRational::from_integer(w)));
            }
        }
        Ok(r)
    }

    /// Panicking variant of [`WeylOp::apply`].
    pub fn act(&self, p: &Poly) -> Poly {
        self.apply(p).unwrap_or_else(|e| panic!("{e}"))
    }

    /// Algebraic Fourier transform into the dual context:
    /// `∂_j ↦ -ζ_j`, `z_j ↦ ∂/∂ζ_j`.
    pub fn fourier_hat(&self) -> WeylOp {
        let dual = self.ctx.dual();
        let n = self.ctx.len();
        let one = Monomial::one(n);
        let mut r = WeylOp::zero(&dual, &self.space);
        for ((a, b), c) in &self.terms {
            // x^α ∂^β ↦ (-1)^{|β|} ∂^α ∘ ζ^β
            let sgn = if b.degree() % 2 == 0 { c.clone() } else { -c };
            let left = WeylOp::term(&dual, one.clone(), a.clone(), RatFunc::one(&self.space));
            let right = WeylOp::term(&dual, b.clone(), one.clone(), sgn);
            r = r.add(&left.then(&right));
        }
        r
    }

    /// Conjugation by `x ↦ -x`: `x^α ∂^β ↦ (-1)^{|α|+|β|} x^α ∂^β`.
    pub fn antipode(&self) -> WeylOp {
        let mut r = WeylOp::zero(&self.ctx, &self.space);
        for ((a, b), c) in &self.terms {
            let c = if (a.degree() + b.degree()) % 2 == 0 {
                c.clone()
            } else {
                -c
            };
            r.add_term(a.clone(), b.clone(), c);
        }
        r
    }

    /// Re-label the variables.
    pub fn with_ctx(&self, ctx: &VarCtx) -> Result<WeylOp> {
        if ctx.len() != self.ctx.len() {
            return Err(Error::Dimension("context length".into()));
        }
        Ok(WeylOp {
            ctx: ctx.clone(),
            space: self.space.clone(),
            terms: self.terms.clone(),
        })
    }

    pub fn lift_params(&self, space: &ParamSpace) -> Result<WeylOp> {
        let mut r = WeylOp::zero(&self.ctx, space);
        for ((a, b), c) in &self.terms {
            r.add_term(a.clone(), b.clone(), c.lift(space)?);
        }
        Ok(r)
    }

    /// Symbol of a constant-coefficient operator, in the dual context.
    pub fn symbol(&self) -> Result<Poly> {
        if !self.is_constant_coeff() {
            return Err(Error::Domain(
                "symbol requires constant coefficients".into(),
            ));
        }
        let dual = self.ctx.dual();
        Ok(Poly::from_terms(
            &dual,
            &self.space,
            self.terms.iter().map(|((_, b), c)| (b.clone(), c.clone())),
        ))
    }

    /// Constant-coefficient operator with symbol `q`, in the dual context of `q`.
    pub fn symbol_inverse(q: &Poly) -> WeylOp {
        let ctx = q.ctx().dual();
        let n = ctx.len();
        let mut r = WeylOp::zero(&ctx, q.space());
        for (m, c) in q.terms() {
            r.add_term(Monomial::one(n), m.clone(), c.clone());
        }
        r
    }

    /// Terms in display order `(|β|, β, α)`.
    fn sorted_terms(&self) -> Vec<(&Monomial, &Monomial, &RatFunc)> {
        let mut v: Vec<_> = self.terms.iter().map(|((a, b), c)| (a, b, c)).collect();
        v.sort_by(|x, y| {
            (x.1.degree(), x.1.exponents(), x.0.exponents()).cmp(&(
                y.1.degree(),
                y.1.exponents(),
                y.0.exponents(),
            ))
        });
        v
    }

    pub fn to_latex(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (a, b, c)) in self.sorted_terms().into_iter().enumerate() {
            let mut parts = Vec::new();
            let xa = monomial_latex(&self.ctx, a);
            if !xa.is_empty() {
                parts.push(xa);
            }
            for (j, &e) in b.exponents().iter().enumerate() {
                let nm = self.ctx.latex_name(j);
                match e {
                    0 => {}
                    1 => parts.push(format!("\\partial_{{{nm}}}")),
                    _ => parts.push(format!("\\partial_{{{nm}}}^{{{e}}}")),
                }
            }
            out.push_str(&term_latex(c, &parts.join(" "), i == 0));
        }
        out
    }

    pub fn to_json(&self) -> Vec<WeylTermJson> {
        self.sorted_terms()
            .into_iter()
            .map(|(a, b, c)| WeylTermJson {
                alpha: a.exponents().to_vec(),
                beta: b.exponents().to_vec(),
                coeff: c.to_string(),
            })
            .collect()
    }

    pub fn from_json(ctx: &VarCtx, space: &ParamSpace, terms: &[WeylTermJson]) -> Result<WeylOp> {
        let mut r = WeylOp::zero(ctx, space);
        for t in terms {
            if t.alpha.len() != ctx.len() || t.beta.len() != ctx.len() {
                return Err(Error::Dimension("term arity".into()));
            }
            let c = parse_ratfunc(space, &t.coeff)?;
            r.add_term(
                Monomial::from_exponents(t.alpha.clone()),
                Monomial::from_exponents(t.beta.clone()),
                c,
            );
        }
        Ok(r)
    }
}

/// All integer vectors `0 <= κ <= bounds` componentwise.
fn boxed(bounds: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::with_capacity(bounds.len())];
    for &b in bounds {
        let mut next = Vec::with_capacity(out.len() * (b as usize + 1));
        for v in &out {
            for k in 0..=b {
                let mut w = v.clone();
                w.push(k);
                next.push(w);
            }
        }
        out = next;
    }
    out
}

/// `Ψ_σ(A) = -sum A_ij z_j ∂_i` (primal) or `Ψ_σ∨(A) = sum A_ji ζ_j ∂_i` (dual).
pub fn matrix_action(
    ctx: &VarCtx,
    space: &ParamSpace,
    a: &[Vec<RatFunc>],
    side: Side,
) -> Result<WeylOp> {
    let n = ctx.len();
    if a.len() != n || a.iter().any(|r| r.len() != n) {
        return Err(Error::Dimension(format!("matrix must be {n}x{n}")));
    }
    let mut r = WeylOp::zero(ctx, space);
    for i in 0..n {
        for j in 0..n {
            let c = match side {
                Side::Primal => -&a[i][j],
                Side::Dual => a[j][i].clone(),
            };
            r.add_term(Monomial::var(n, j, 1), Monomial::var(n, i, 1), c);
        }
    }
    Ok(r)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Primal,
    Dual,
}

impl fmt::Display for WeylOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (a, b, c)) in self.sorted_terms().into_iter().enumerate() {
            let mut parts = Vec::new();
            for (j, &e) in a.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => parts.push(self.ctx.name(j).to_string()),
                    _ => parts.push(format!("{}^{}", self.ctx.name(j), e)),
                }
            }
            for (j, &e) in b.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => parts.push(format!("d[{}]", self.ctx.name(j))),
                    _ => parts.push(format!("d[{}]^{}", self.ctx.name(j), e)),
                }
            }
            write!(f, "{}", term_plain(c, &parts.join("*"), i == 0))?;
        }
        Ok(())
    }
}

impl fmt::Debug for WeylOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
