//! Radial reduction of ζ-side operators to one-variable operators.
//!
//! The radial map is `T_a g = u^a g(w/u)` with
//! SO: `u = √Q(ζ')`, `w = ζ_n`; SP: `u = √(ζ₁₁ζₙₙ)`, `w = ζ₁ₙ`; UU: `u = ζ″₁`, `w = ζ′₁`.
//! An operator is reduced by applying it to `T_a(t^k) = w^k u^{a-k}` with `a` and
//! `k` symbolic and reading off `Σ_d c_d(k) t^{k+d}`.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;

use crate::coeff::{ParamSpace, RatFunc};
use crate::geometries::{dpi_hat, sym_index, Gen, GeometryFamily, GeometrySpec};
use crate::monomial::Monomial;
use crate::orthopoly::SecondOrder;
use crate::weyl::{Poly, VarCtx, WeylOp};
use crate::{Error, Result};

/// `Σ_d t^d q_d(ϑ)` with `ϑ = t d/dt`; `q_d` is stored low degree first.
#[derive(Clone, Debug, PartialEq)]
pub struct RadialOp {
    space: ParamSpace,
    terms: BTreeMap<i64, Vec<RatFunc>>,
}

impl RadialOp {
    pub fn zero(space: &ParamSpace) -> Self {
        RadialOp {
            space: space.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(space: &ParamSpace) -> Self {
        Self::from_terms(space, [(0, vec![RatFunc::one(space)])])
    }

    /// `t^d q(ϑ)` summed over the given pairs.
    pub fn from_terms(
        space: &ParamSpace,
        terms: impl IntoIterator<Item = (i64, Vec<RatFunc>)>,
    ) -> Self {
        let mut r = RadialOp::zero(space);
        for (d, q) in terms {
            r.add_part(d, &q);
        }
        r
    }

    fn add_part(&mut self, d: i64, q: &[RatFunc]) {
        let e = self.terms.entry(d).or_default();
        if e.len() < q.len() {
            e.resize(q.len(), RatFunc::zero(&self.space));
        }
        for (i, c) in q.iter().enumerate() {
            e[i] = &e[i] + c;
        }
        while e.last().map(|c| c.is_zero()).unwrap_or(false) {
            e.pop();
        }
        if e.is_empty() {
            self.terms.remove(&d);
        }
    }

    pub fn space(&self) -> &ParamSpace {
        &self.space
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &[RatFunc])> {
        self.terms.iter().map(|(d, q)| (*d, q.as_slice()))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &RadialOp) -> RadialOp {
        let mut r = self.clone();
        for (d, q) in &other.terms {
            r.add_part(*d, q);
        }
        r
    }

    pub fn scale(&self, c: &RatFunc) -> RadialOp {
        RadialOp::from_terms(
            &self.space,
            self.terms
                .iter()
                .map(|(d, q)| (*d, q.iter().map(|x| x * c).collect())),
        )
    }

    /// `self ∘ other`, using `ϑ t^e = t^e (ϑ + e)`.
    pub fn compose(&self, other: &RadialOp) -> RadialOp {
        let mut r = RadialOp::zero(&self.space);
        for (d, p) in &self.terms {
            for (e, q) in &other.terms {
                let shifted = shift_poly(&self.space, p, *e);
                r.add_part(d + e, &poly_mul(&self.space, &shifted, q));
            }
        }
        r
    }

    /// Substitute a value for `name` in every coefficient.
    pub fn substitute(&self, name: &str, value: &BigRational) -> Result<RadialOp> {
        let mut r = RadialOp::zero(&self.space);
        for (d, q) in &self.terms {
            let q = q
                .iter()
                .map(|c| c.substitute(name, value))
                .collect::<Result<Vec<_>>>()?;
            r.add_part(*d, &q);
        }
        Ok(r)
    }

    /// Coefficients of `d^j/dt^j` as Laurent polynomials in `t`: `ϑ^i = Σ_j S(i,j) t^j d^j`.
    pub fn to_d_form(&self) -> BTreeMap<u32, BTreeMap<i64, RatFunc>> {
        let mut out: BTreeMap<u32, BTreeMap<i64, RatFunc>> = BTreeMap::new();
        for (d, q) in &self.terms {
            for (i, c) in q.iter().enumerate() {
                for j in 0..=i {
                    let s = stirling2(i as u32, j as u32);
                    if s == 0 || c.is_zero() {
                        continue;
                    }
                    let slot = out.entry(j as u32).or_default();
                    let e = slot
                        .entry(d + j as i64)
                        .or_insert_with(|| RatFunc::zero(&self.space));
                    *e = &*e + &c.scale_int(s);
                }
            }
        }
        for m in out.values_mut() {
            m.retain(|_, c| !c.is_zero());
        }
        out.retain(|_, m| !m.is_empty());
        out
    }
}

/// `q(ϑ + e)`.
fn shift_poly(space: &ParamSpace, q: &[RatFunc], e: i64) -> Vec<RatFunc> {
    let mut r = vec![RatFunc::zero(space); q.len()];
    // (ϑ+e)^i = Σ_j C(i,j) e^{i-j} ϑ^j
    for (i, c) in q.iter().enumerate() {
        let mut binom: i64 = 1;
        for j in (0..=i).rev() {
            // binom = C(i, j)
            let pow = BigRational::from_integer(e.into()).pow((i - j) as i32);
            let w = c.scale(&(pow * BigRational::from_integer(binom.into())));
            r[j] = &r[j] + &w;
            if j > 0 {
                binom = binom * j as i64 / (i - j + 1) as i64;
            }
        }
    }
    r
}

fn poly_mul(space: &ParamSpace, p: &[RatFunc], q: &[RatFunc]) -> Vec<RatFunc> {
    if p.is_empty() || q.is_empty() {
        return Vec::new();
    }
    let mut r = vec![RatFunc::zero(space); p.len() + q.len() - 1];
    for (i, a) in p.iter().enumerate() {
        for (j, b) in q.iter().enumerate() {
            r[i + j] = &r[i + j] + &(a * b);
        }
    }
    r
}

/// Stirling numbers of the second kind.
pub fn stirling2(n: u32, k: u32) -> i64 {
    let mut row = vec![1i64];
    for i in 1..=n as usize {
        let mut next = vec![0i64; i + 1];
        for j in 1..=i {
            let carry = if j < i { j as i64 * row[j] } else { 0 };
            next[j] = row[j - 1] + carry;
        }
        row = next;
    }
    row.get(k as usize).copied().unwrap_or(0)
}

impl fmt::Display for RadialOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(d, q)| {
                let inner: Vec<String> = q
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(i, c)| match i {
                        0 => format!("({c})"),
                        1 => format!("({c})*θ"),
                        _ => format!("({c})*θ^{i}"),
                    })
                    .collect();
                let tp = match d {
                    0 => String::new(),
                    1 => "t*".into(),
                    _ => format!("t^{d}*"),
                };
                format!("{tp}[{}]", inner.join(" + "))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

enum Root {
    Coord(usize),
    /// `u² = q(ζ)`; the relation rewrites `lead` as `(u² - rest)/lead_coeff`.
    Sqrt {
        q: Vec<(Monomial, BigRational)>,
        lead: Monomial,
        lead_coeff: BigRational,
        rest: Vec<(Monomial, BigRational)>,
    },
}

/// Key `(plain, e_w, e_u)` of `ζ^plain · w^{k+e_w} · u^{a-k+e_u}`.
type Key = (Monomial, i64, i64);
type Elem = BTreeMap<Key, RatFunc>;

struct Chart {
    nvars: usize,
    ext: ParamSpace,
    w: usize,
    u: Root,
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

impl Chart {
    fn new(g: &GeometrySpec) -> Chart {
        let nvars = g.zeta_ctx.len();
        let ext = g.space.extended(&["a", "k"]);
        let n = g.n;
        let (w, u) = match g.family {
            GeometryFamily::So => {
                let qv: Vec<(Monomial, BigRational)> = (0..n - 1)
                    .map(|j| (Monomial::var(nvars, j, 2), q(1)))
                    .collect();
                let rest = qv[1..].to_vec();
                (
                    n - 1,
                    Root::Sqrt {
                        lead: Monomial::var(nvars, 0, 2),
                        lead_coeff: q(1),
                        q: qv,
                        rest,
                    },
                )
            }
            GeometryFamily::Sp => {
                let m = Monomial::var(nvars, sym_index(n, 0, 0), 1).mul(&Monomial::var(
                    nvars,
                    sym_index(n, n - 1, n - 1),
                    1,
                ));
                (
                    sym_index(n, 0, n - 1),
                    Root::Sqrt {
                        q: vec![(m.clone(), q(1))],
                        lead: m,
                        lead_coeff: q(1),
                        rest: Vec::new(),
                    },
                )
            }
            GeometryFamily::Uu => (0, Root::Coord(n)),
        };
        Chart { nvars, ext, w, u }
    }

    fn k_plus(&self, e: i64) -> RatFunc {
        self.ext.p("k") + self.ext.int(e)
    }

    fn u_exp(&self, e: i64) -> RatFunc {
        self.ext.p("a") - self.ext.p("k") + self.ext.int(e)
    }

    fn start(&self) -> Elem {
        let mut e = Elem::new();
        e.insert((Monomial::one(self.nvars), 0, 0), RatFunc::one(&self.ext));
        e
    }

    fn push(out: &mut Elem, key: Key, c: RatFunc) {
        if c.is_zero() {
            return;
        }
        match out.get_mut(&key) {
            Some(x) => {
                *x = &*x + &c;
                if x.is_zero() {
                    out.remove(&key);
                }
            }
            None => {
                out.insert(key, c);
            }
        }
    }

    /// Insert after eliminating the leading monomial of `u²`.
    fn push_reduced(&self, out: &mut Elem, key: Key, c: RatFunc) {
        if let Root::Sqrt {
            lead,
            lead_coeff,
            rest,
            ..
        } = &self.u
        {
            if let Some(p) = lead.div_of(&key.0) {
                let inv = lead_coeff.recip();
                self.push_reduced(out, (p.clone(), key.1, key.2 + 2), c.scale(&inv));
                for (m, rc) in rest {
                    self.push_reduced(out, (p.mul(m), key.1, key.2), c.scale(&(-rc * &inv)));
                }
                return;
            }
        }
        Self::push(out, key, c);
    }

    fn mul_var(&self, i: usize, e: &Elem) -> Elem {
        let mut out = Elem::new();
        for ((p, ew, eu), c) in e {
            if i == self.w {
                Self::push(&mut out, (p.clone(), ew + 1, *eu), c.clone());
            } else if matches!(self.u, Root::Coord(ui) if ui == i) {
                Self::push(&mut out, (p.clone(), *ew, eu + 1), c.clone());
            } else {
                self.push_reduced(
                    &mut out,
                    (p.mul(&Monomial::var(self.nvars, i, 1)), *ew, *eu),
                    c.clone(),
                );
            }
        }
        out
    }

    fn deriv(&self, i: usize, e: &Elem) -> Elem {
        let mut out = Elem::new();
        for ((p, ew, eu), c) in e {
            if i == self.w {
                Self::push(&mut out, (p.clone(), ew - 1, *eu), c * &self.k_plus(*ew));
                continue;
            }
            if let Root::Coord(ui) = self.u {
                if ui == i {
                    Self::push(&mut out, (p.clone(), *ew, eu - 1), c * &self.u_exp(*eu));
                    continue;
                }
            }
            let pi = p.exp(i);
            if pi > 0 {
                let mut pp = p.clone();
                pp.set_exp(i, pi - 1);
                Self::push(&mut out, (pp, *ew, *eu), c.scale_int(pi as i64));
            }
            if let Root::Sqrt { q: qv, .. } = &self.u {
                // ∂_i u^U = (U/2) (∂_i q) u^{U-2}
                let half_u = c * &self.u_exp(*eu).scale(&BigRational::new(1.into(), 2.into()));
                for (m, qc) in qv {
                    let e = m.exp(i);
                    if e == 0 {
                        continue;
                    }
                    let mut dm = m.clone();
                    dm.set_exp(i, e - 1);
                    let w = half_u.scale(&(qc * q(e as i64)));
                    self.push_reduced(&mut out, (p.mul(&dm), *ew, eu - 2), w);
                }
            }
        }
        out
    }

    fn apply(&self, t: &WeylOp, e: &Elem) -> Result<Elem> {
        let mut out = Elem::new();
        for ((alpha, beta), c) in t.terms() {
            let c = c.lift(&self.ext)?;
            let mut cur = e.clone();
            for (i, &b) in beta.exponents().iter().enumerate() {
                for _ in 0..b {
                    cur = self.deriv(i, &cur);
                }
            }
            for (i, &a) in alpha.exponents().iter().enumerate() {
                for _ in 0..a {
                    cur = self.mul_var(i, &cur);
                }
            }
            for (k, v) in cur {
                Self::push(&mut out, k, &v * &c);
            }
        }
        Ok(out)
    }

    fn mul_poly(&self, p: &Poly, e: &Elem) -> Result<Elem> {
        let mut out = Elem::new();
        for (m, c) in p.terms() {
            let c = c.lift(&self.ext)?;
            let mut cur = e.clone();
            for (i, &x) in m.exponents().iter().enumerate() {
                for _ in 0..x {
                    cur = self.mul_var(i, &cur);
                }
            }
            for (k, v) in cur {
                Self::push(&mut out, k, &v * &c);
            }
        }
        Ok(out)
    }

    fn div_monomial(&self, den: &Monomial, e: &Elem) -> Result<Elem> {
        let mut out = Elem::new();
        for ((p, ew, eu), c) in e {
            let mut p = p.clone();
            let (mut ew, mut eu) = (*ew, *eu);
            for (i, &x) in den.exponents().iter().enumerate() {
                if x == 0 {
                    continue;
                }
                if i == self.w {
                    ew -= x as i64;
                } else if matches!(self.u, Root::Coord(ui) if ui == i) {
                    eu -= x as i64;
                } else if p.exp(i) >= x {
                    p.set_exp(i, p.exp(i) - x);
                } else {
                    return Err(Error::NotSaturated(format!(
                        "term {} is not divisible by the prefactor denominator",
                        self.describe(&[((p, ew, eu), c.clone())])
                    )));
                }
            }
            Self::push(&mut out, (p, ew, eu), c.clone());
        }
        Ok(out)
    }

    fn describe(&self, e: &[(Key, RatFunc)]) -> String {
        e.iter()
            .map(|((p, ew, eu), c)| {
                format!("({c})*zeta^{:?}*w^(k{ew:+})*u^(a-k{eu:+})", p.exponents())
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    fn extract(&self, e: Elem, out_space: &ParamSpace) -> Result<RadialOp> {
        let bad: Vec<(Key, RatFunc)> = e
            .iter()
            .filter(|((p, ew, eu), _)| !p.is_one() || *eu != -*ew)
            .map(|(k, c)| (k.clone(), c.clone()))
            .collect();
        if !bad.is_empty() {
            return Err(Error::NotSaturated(self.describe(&bad)));
        }
        let mut r = RadialOp::zero(out_space);
        for ((_, ew, _), c) in e {
            let parts = c.coeffs_in("k").ok_or_else(|| {
                Error::NotSaturated(format!("coefficient {c} is not polynomial in k"))
            })?;
            let parts = parts
                .iter()
                .map(|x| x.restrict(out_space))
                .collect::<Result<Vec<_>>>()?;
            r.add_part(ew, &parts);
        }
        Ok(r)
    }
}

/// Parameter space of radial operators: the geometry's parameters and `a`.
pub fn radial_space(g: &GeometrySpec) -> ParamSpace {
    g.space.extended(&["a"])
}

/// `T_a^♯(T)` for an operator `T` in the ζ-context, symbolic in `a`.
pub fn saturate(g: &GeometrySpec, t: &WeylOp) -> Result<RadialOp> {
    saturate_with_prefactor(
        g,
        &Poly::one(&g.zeta_ctx, &g.space),
        &Monomial::one(g.zeta_ctx.len()),
        t,
    )
}

/// `T_a^♯((num/den)·T)` where `den` is a monomial.
pub fn saturate_with_prefactor(
    g: &GeometrySpec,
    num: &Poly,
    den: &Monomial,
    t: &WeylOp,
) -> Result<RadialOp> {
    if t.ctx() != &g.zeta_ctx || num.ctx() != &g.zeta_ctx {
        return Err(Error::ContextMismatch(
            "saturation acts on the ζ-context".into(),
        ));
    }
    let chart = Chart::new(g);
    let e = chart.apply(t, &chart.start())?;
    let e = chart.mul_poly(num, &e)?;
    let e = chart.div_monomial(den, &e)?;
    chart.extract(e, &radial_space(g))
}

/// Composite operator whose saturation is the geometry's ODE:
/// SO `(Q(ζ')/ζ₁)·d̂π(C₁)`, SP `ζ₁₁·d̂π(C₁₁)`, UU `ζ″₁·d̂π(C₁⁺)`.
pub fn radial_ode(g: &GeometrySpec) -> Result<RadialOp> {
    let s = &g.space;
    let ctx = &g.zeta_ctx;
    let nv = ctx.len();
    match g.family {
        GeometryFamily::So => {
            let mut qp = Poly::zero(ctx, s);
            for j in 0..g.n - 1 {
                qp = qp.add(&Poly::var(ctx, s, j).pow(2));
            }
            saturate_with_prefactor(g, &qp, &Monomial::var(nv, 0, 1), &dpi_hat(g, Gen::C(0))?)
        }
        GeometryFamily::Sp => saturate_with_prefactor(
            g,
            &Poly::var(ctx, s, sym_index(g.n, 0, 0)),
            &Monomial::one(nv),
            &dpi_hat(g, Gen::Sym(0, 0))?,
        ),
        GeometryFamily::Uu => saturate_with_prefactor(
            g,
            &Poly::var(ctx, s, g.n),
            &Monomial::one(nv),
            &dpi_hat(g, Gen::Plus(0))?,
        ),
    }
}

/// Which classical equation an [`OdeSpec`] reproduces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OdeTag {
    De3,
    De2,
    De1,
}

/// A second-order ODE in one named variable, over the geometry's parameters and `a`.
#[derive(Clone, Debug, PartialEq)]
pub struct OdeSpec {
    pub var: String,
    pub tag: OdeTag,
    pub op: SecondOrder,
}

#[derive(serde::Serialize)]
pub struct OdeJson {
    pub var: String,
    pub tag: OdeTag,
    pub theta_form: bool,
    pub c2: String,
    pub c1: String,
    pub c0: String,
}

/// Laurent coefficients of `ϑ^i` (or `d^i`), shifted to start at `t^0`, scaled so that
/// the lowest coefficient of the second-order part is 1.
fn normalized(
    var: &str,
    space: &ParamSpace,
    theta_form: bool,
    parts: [BTreeMap<i64, RatFunc>; 3],
) -> Result<SecondOrder> {
    let lo = parts
        .iter()
        .flat_map(|m| m.keys().copied())
        .min()
        .unwrap_or(0);
    let lead = parts[2]
        .values()
        .next()
        .ok_or_else(|| Error::Inconsistent("radial operator has no second-order part".into()))?
        .inv()?;
    let ctx = VarCtx::new(&[var]);
    let mk = |m: &BTreeMap<i64, RatFunc>| {
        let mut p = Poly::zero(&ctx, space);
        for (e, c) in m {
            p.add_term(Monomial::var(1, 0, (e - lo) as u32), c * &lead);
        }
        p
    };
    Ok(SecondOrder {
        theta_form,
        c2: mk(&parts[2]),
        c1: mk(&parts[1]),
        c0: mk(&parts[0]),
    })
}

fn renormalize(op: SecondOrder) -> Result<SecondOrder> {
    let lead = op
        .c2
        .terms()
        .next()
        .map(|(_, c)| c.clone())
        .ok_or_else(|| Error::Inconsistent("zero second-order coefficient".into()))?
        .inv()?;
    Ok(SecondOrder {
        theta_form: op.theta_form,
        c2: op.c2.scale(&lead),
        c1: op.c1.scale(&lead),
        c0: op.c0.scale(&lead),
    })
}

/// The saturated ODE of the geometry at degree `a`, in the radial variable `t`
/// (ϑ-form for SO and SP, `d/dt`-form for UU).
pub fn ode_of_geometry(g: &GeometrySpec, a: u32) -> Result<OdeSpec> {
    let r = radial_ode(g)?.substitute("a", &q(a as i64))?;
    let space = radial_space(g);
    let (tag, theta_form) = match g.family {
        GeometryFamily::So => (OdeTag::De3, true),
        GeometryFamily::Sp => (OdeTag::De2, true),
        GeometryFamily::Uu => (OdeTag::De1, false),
    };
    let mut parts: [BTreeMap<i64, RatFunc>; 3] = Default::default();
    if theta_form {
        for (d, qd) in r.terms() {
            if qd.len() > 3 {
                return Err(Error::Inconsistent(
                    "radial operator has order above 2".into(),
                ));
            }
            for (i, c) in qd.iter().enumerate() {
                if !c.is_zero() {
                    parts[i].insert(d, c.clone());
                }
            }
        }
    } else {
        for (j, m) in r.to_d_form() {
            if j > 2 {
                return Err(Error::Inconsistent(
                    "radial operator has order above 2".into(),
                ));
            }
            parts[j as usize] = m;
        }
    }
    Ok(OdeSpec {
        var: "t".into(),
        tag,
        op: normalized("t", &space, theta_form, parts)?,
    })
}

impl OdeSpec {
    pub fn space(&self) -> &ParamSpace {
        self.op.c2.space()
    }

    /// Rewrite in the variable of the classical equation:
    /// De3 `t² = -s²`, De1 `t = (s-1)/2`, De2 unchanged.
    pub fn in_classical_variable(&self) -> Result<OdeSpec> {
        let space = self.space().clone();
        let sctx = VarCtx::new(&["s"]);
        match self.tag {
            OdeTag::De2 => Ok(self.clone()),
            OdeTag::De3 => {
                let conv = |p: &Poly| -> Result<Poly> {
                    let mut r = Poly::zero(&sctx, &space);
                    for (m, c) in p.terms() {
                        let e = m.exp(0);
                        if e % 2 == 1 {
                            return Err(Error::Inconsistent("odd power of t in a t²-ODE".into()));
                        }
                        let c = if (e / 2) % 2 == 1 { -c } else { c.clone() };
                        r.add_term(m.clone(), c);
                    }
                    Ok(r)
                };
                let op = SecondOrder {
                    theta_form: true,
                    c2: conv(&self.op.c2)?,
                    c1: conv(&self.op.c1)?,
                    c0: conv(&self.op.c0)?,
                };
                Ok(OdeSpec {
                    var: "s".into(),
                    tag: self.tag,
                    op: renormalize(op)?,
                })
            }
            OdeTag::De1 => {
                let half = space.rat(1, 2);
                let img = [Poly::var(&sctx, &space, 0)
                    .scale(&half)
                    .add(&Poly::constant(&sctx, -&half))];
                let op = SecondOrder {
                    theta_form: false,
                    c2: self.op.c2.compose(&img)?.scale(&space.int(4)),
                    c1: self.op.c1.compose(&img)?.scale(&space.int(2)),
                    c0: self.op.c0.compose(&img)?,
                };
                Ok(OdeSpec {
                    var: "s".into(),
                    tag: self.tag,
                    op: renormalize(op)?,
                })
            }
        }
    }

    pub fn to_latex(&self) -> String {
        let v = &self.var;
        let (d2, d1) = if self.op.theta_form {
            (format!("\\vartheta_{v}^2"), format!("\\vartheta_{v}"))
        } else {
            (
                format!("\\frac{{d^2}}{{d{v}^2}}"),
                format!("\\frac{{d}}{{d{v}}}"),
            )
        };
        format!(
            "\\left({}\\right){d2} + \\left({}\\right){d1} + \\left({}\\right)",
            self.op.c2.to_latex(),
            self.op.c1.to_latex(),
            self.op.c0.to_latex()
        )
    }

    pub fn to_json(&self) -> OdeJson {
        OdeJson {
            var: self.var.clone(),
            tag: self.tag,
            theta_form: self.op.theta_form,
            c2: self.op.c2.to_string(),
            c1: self.op.c1.to_string(),
            c0: self.op.c0.to_string(),
        }
    }
}

impl fmt::Display for OdeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (d2, d1) = if self.op.theta_form {
            ("θ^2", "θ")
        } else {
            ("d^2", "d")
        };
        write!(
            f,
            "({})*{d2} + ({})*{d1} + ({})",
            self.op.c2, self.op.c1, self.op.c0
        )
    }
}
