//! Singular vectors of the algebraic Fourier transform of generalized Verma
//! modules, their radial ODEs, and the equivariant operators they encode.
//!
//! A solve restricts to the Levi weight space of degree `a`, imposes
//! `d̂π(C)ψ = 0` for each `n'₊` generator as an exact linear system, and, for
//! vector-valued targets, rebuilds the full symbol by lowering the
//! highest-weight component.

pub mod linalg;
pub mod oracle;
pub mod saturate;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_rational::BigRational;
use serde::Serialize;

use crate::coeff::{ParamSpace, RatFunc};
use crate::geometries::{
    dpi_hat, elementary, levi_action, so_levi_rotation, sym_index, GeometryFamily, GeometrySpec,
};
use crate::monomial::Monomial;
use crate::orthopoly::{gegenbauer, jacobi};
use crate::weyl::{Poly, VarCtx, WeylOp};
use crate::{Error, Result};

pub use linalg::nullspace;
pub use oracle::{intertwining_check, OracleReport};
pub use saturate::{
    ode_of_geometry, radial_ode, radial_space, saturate, saturate_with_prefactor, OdeJson, OdeSpec,
    OdeTag, RadialOp,
};

/// Basis of the weight space of degree `a`, normalization element first.
///
/// SO `ζ_n^{a-2j} Q(ζ')^j`; SP `ζ₁₁^j ζ₁ₙ^{a-2j} ζₙₙ^j`; UU `ζ′₁^i ζ″₁^{a-i}`.
pub fn weight_space_basis(g: &GeometrySpec, a: u32) -> Vec<Poly> {
    let ctx = &g.zeta_ctx;
    let s = &g.space;
    let n = g.n;
    let var = |i: usize| Poly::var(ctx, s, i);
    match g.family {
        GeometryFamily::So => {
            let mut qp = Poly::zero(ctx, s);
            for j in 0..n - 1 {
                qp = qp.add(&var(j).pow(2));
            }
            (0..=a / 2)
                .map(|j| var(n - 1).pow(a - 2 * j).mul(&qp.pow(j)))
                .collect()
        }
        GeometryFamily::Sp => (0..=a / 2)
            .map(|j| {
                var(sym_index(n, 0, 0))
                    .pow(j)
                    .mul(&var(sym_index(n, 0, n - 1)).pow(a - 2 * j))
                    .mul(&var(sym_index(n, n - 1, n - 1)).pow(j))
            })
            .collect(),
        GeometryFamily::Uu => (0..=a)
            .map(|i| var(0).pow(i).mul(&var(n).pow(a - i)))
            .collect(),
    }
}

fn substitute_all(c: &RatFunc, values: &[(String, BigRational)]) -> Result<RatFunc> {
    let mut c = c.clone();
    for (k, v) in values {
        c = c.substitute(k, v)?;
    }
    Ok(c)
}

/// Nullspace basis (coefficient vectors over [`weight_space_basis`]) of the
/// system `d̂π(C)ψ = 0`, `C ∈ n'₊`, optionally at fixed parameter values.
pub fn singular_nullspace_at(
    g: &GeometrySpec,
    a: u32,
    values: &[(String, BigRational)],
) -> Result<Vec<Vec<RatFunc>>> {
    for (k, _) in values {
        g.space.param(k)?;
    }
    let basis = weight_space_basis(g, a);
    let mut rows: BTreeMap<(usize, Monomial), Vec<RatFunc>> = BTreeMap::new();
    for (gi, gen) in g.nplus_tau().into_iter().enumerate() {
        let op = dpi_hat(g, gen)?;
        let op = if values.is_empty() {
            op
        } else {
            try_map(&op, |c| substitute_all(c, values))?
        };
        for (col, b) in basis.iter().enumerate() {
            let img = op.apply(b)?;
            for (m, c) in img.terms() {
                let row = rows
                    .entry((gi, m.clone()))
                    .or_insert_with(|| vec![RatFunc::zero(&g.space); basis.len()]);
                row[col] = c.clone();
            }
        }
    }
    Ok(nullspace(
        &g.space,
        rows.into_values().collect(),
        basis.len(),
    ))
}

fn try_map(op: &WeylOp, f: impl Fn(&RatFunc) -> Result<RatFunc>) -> Result<WeylOp> {
    let mut r = WeylOp::zero(op.ctx(), op.space());
    for ((a, b), c) in op.terms() {
        r.add_term(a.clone(), b.clone(), f(c)?);
    }
    Ok(r)
}

/// Symbolic nullspace basis; its length is the multiplicity.
pub fn singular_nullspace(g: &GeometrySpec, a: u32) -> Result<Vec<Vec<RatFunc>>> {
    singular_nullspace_at(g, a, &[])
}

fn combine(basis: &[Poly], coeffs: &[RatFunc], space: &ParamSpace, ctx: &VarCtx) -> Poly {
    basis
        .iter()
        .zip(coeffs)
        .fold(Poly::zero(ctx, space), |acc, (b, c)| acc.add(&b.scale(c)))
}

fn unique_vector(ns: Vec<Vec<RatFunc>>) -> Result<Vec<RatFunc>> {
    match ns.len() {
        0 => Err(Error::NoSingularVector),
        1 => {
            let v = ns.into_iter().next().unwrap();
            let lead = v
                .iter()
                .find(|c| !c.is_zero())
                .expect("nullspace vector is nonzero")
                .inv()?;
            Ok(v.iter().map(|c| c * &lead).collect())
        }
        d => Err(Error::Degenerate(d)),
    }
}

/// The singular vector of degree `a`, monic on the first basis element with a
/// nonzero coefficient.
pub fn solve_singular(g: &GeometrySpec, a: u32) -> Result<Poly> {
    solve_singular_at(g, a, &[])
}

/// As [`solve_singular`] with some parameters fixed to rational values; the
/// solve is redone at those values so that special parameters show up as a
/// change of multiplicity.
pub fn solve_singular_at(
    g: &GeometrySpec,
    a: u32,
    values: &[(String, BigRational)],
) -> Result<Poly> {
    solve_with_basis(g, a, values).map(|(p, _)| p)
}

/// The solution and the basis element it is normalized on.
fn solve_with_basis(
    g: &GeometrySpec,
    a: u32,
    values: &[(String, BigRational)],
) -> Result<(Poly, Poly)> {
    let one = Poly::one(&g.zeta_ctx, &g.space);
    if a == 0 {
        return Ok((one.clone(), one));
    }
    let v = unique_vector(singular_nullspace_at(g, a, values)?)?;
    let basis = weight_space_basis(g, a);
    let lead = v
        .iter()
        .position(|c| !c.is_zero())
        .map(|i| basis[i].clone())
        .unwrap_or(one);
    Ok((combine(&basis, &v, &g.space, &g.zeta_ctx), lead))
}

/// The classical closed form of the (highest-weight component of the) symbol:
/// SO `C_a^{λ-(n-1)/2}` inflated at `(-Q(ζ'), ζ_n)`, SP `C_a^{λ-1}` at
/// `(ζ₁₁ζₙₙ, ζ₁ₙ)`, UU `P_a^{(-λ'+n, λ'+λ''-2n-2a+1)}` at `(ζ′₁, ζ″₁)`.
pub fn closed_form(g: &GeometrySpec, a: u32) -> Result<Poly> {
    let ctx = &g.zeta_ctx;
    let s = &g.space;
    let n = g.n;
    let var = |i: usize| Poly::var(ctx, s, i);
    let (poly, images) = match g.family {
        GeometryFamily::So => {
            let mut qp = Poly::zero(ctx, s);
            for j in 0..n - 1 {
                qp = qp.add(&var(j).pow(2));
            }
            let alpha = g.lambda() - s.rat(n as i64 - 1, 2);
            (gegenbauer(a, &alpha), vec![qp.neg(), var(n - 1)])
        }
        GeometryFamily::Sp => {
            let x = var(sym_index(n, 0, 0)).mul(&var(sym_index(n, n - 1, n - 1)));
            (
                gegenbauer(a, &(g.lambda() - s.int(1))),
                vec![x, var(sym_index(n, 0, n - 1))],
            )
        }
        GeometryFamily::Uu => {
            let (lp, lpp) = (s.p("lp"), s.p("lpp"));
            let ni = s.int(n as i64);
            let alpha = -&lp + &ni;
            let beta = &lp + &lpp - ni.scale_int(2) - s.int(2 * a as i64) + s.int(1);
            (jacobi(a, &alpha, &beta), vec![var(0), var(n)])
        }
    };
    poly.inflate().compose(&images)
}

/// A symbol `Ψ(v, ζ)` homogeneous of degree `a` in generating variables `v₁…v_m`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyVec {
    pub zeta_ctx: VarCtx,
    pub m: usize,
    pub a: u32,
    /// Coefficient of each `v`-monomial.
    pub components: BTreeMap<Monomial, Poly>,
}

impl PolyVec {
    pub fn component(&self, v: &Monomial) -> Poly {
        self.components.get(v).cloned().unwrap_or_else(|| {
            let space = self
                .components
                .values()
                .next()
                .map(|p| p.space().clone())
                .unwrap_or_else(ParamSpace::empty);
            Poly::zero(&self.zeta_ctx, &space)
        })
    }

    /// Flatten into one polynomial in the context `ζ…, v_1…v_m`.
    pub fn to_poly(&self) -> Result<Poly> {
        let mut names: Vec<String> = self.zeta_ctx.names().to_vec();
        names.extend((1..=self.m).map(|i| format!("v_{i}")));
        let ctx = VarCtx::new(&names);
        let nz = self.zeta_ctx.len();
        let mut out: Option<Poly> = None;
        for (v, c) in &self.components {
            let mut p = Poly::zero(&ctx, c.space());
            for (zm, cc) in c.terms() {
                p.add_term(zm.concat(v), cc.clone());
            }
            out = Some(match out {
                None => p,
                Some(o) => o.try_add(&p)?,
            });
        }
        out.ok_or_else(|| Error::Inconsistent(format!("empty symbol with {nz} variables")))
    }
}

/// Fiber rank `m` of the generating variables: SO 0, SP `n-1`, UU `n`.
pub fn fiber_rank(g: &GeometrySpec) -> usize {
    match g.family {
        GeometryFamily::So => 0,
        GeometryFamily::Sp => g.n - 1,
        GeometryFamily::Uu => g.n,
    }
}

/// `(L_A^ζ - Σ A_ki v_i ∂/∂v_k) Ψ` for `A = E_pq`.
fn levi_defect(g: &GeometrySpec, psi: &PolyVec, p: usize, q: usize) -> Result<PolyVec> {
    let m = psi.m;
    let l = levi_action(g, &elementary(g, m, p, q))?;
    let mut out: BTreeMap<Monomial, Poly> = BTreeMap::new();
    let mut put = |v: Monomial, x: Poly| -> Result<()> {
        let e = match out.remove(&v) {
            Some(o) => o.try_add(&x)?,
            None => x,
        };
        if !e.is_zero() {
            out.insert(v, e);
        }
        Ok(())
    };
    for (v, c) in &psi.components {
        put(v.clone(), l.apply(c)?)?;
        // -v_q ∂/∂v_p
        let e = v.exp(p);
        if e > 0 {
            let mut w = v.clone();
            w.set_exp(p, e - 1);
            w.set_exp(q, w.exp(q) + 1);
            put(w, c.scale(&g.space.int(-(e as i64))))?;
        }
    }
    Ok(PolyVec {
        zeta_ctx: psi.zeta_ctx.clone(),
        m,
        a: psi.a,
        components: out,
    })
}

/// Whether `Ψ` is annihilated by every Levi generator `E_pq` acting jointly
/// on `ζ` and `v` (SP, UU) or by every tangential rotation (SO).
pub fn check_levi_invariance(g: &GeometrySpec, psi: &PolyVec) -> Result<bool> {
    if g.family == GeometryFamily::So {
        let p = psi.component(&Monomial::one(0));
        for i in 0..g.n - 1 {
            for j in i + 1..g.n - 1 {
                if !so_levi_rotation(g, i, j).apply(&p)?.is_zero() {
                    return Ok(false);
                }
            }
        }
        return Ok(true);
    }
    for p in 0..psi.m {
        for q in 0..psi.m {
            if !levi_defect(g, psi, p, q)?.components.is_empty() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Rebuild the full symbol from its highest-weight component `P` (the `v₁^a`
/// coefficient) by lowering `c_{γ-e₁+e_j} = L_{E_j1} c_γ / (γ_j + 1)`, then
/// verify Levi invariance.
pub fn reconstruct_vector_valued(g: &GeometrySpec, a: u32, p: &Poly) -> Result<PolyVec> {
    if p.ctx() != &g.zeta_ctx {
        return Err(Error::ContextMismatch(
            "highest-weight component must live on the ζ-side".into(),
        ));
    }
    let m = fiber_rank(g);
    let mut components: BTreeMap<Monomial, Poly> = BTreeMap::new();
    if m == 0 {
        components.insert(Monomial::one(0), p.clone());
        let psi = PolyVec {
            zeta_ctx: g.zeta_ctx.clone(),
            m,
            a,
            components,
        };
        return if check_levi_invariance(g, &psi)? {
            Ok(psi)
        } else {
            Err(Error::Inconsistent(
                "symbol is not rotation invariant".into(),
            ))
        };
    }
    components.insert(Monomial::var(m, 0, a), p.clone());
    let mut lowering: BTreeMap<usize, WeylOp> = BTreeMap::new();
    for j in 1..m {
        lowering.insert(j, levi_action(g, &elementary(g, m, j, 0))?);
    }
    let mut targets = Monomial::all_of_degree(m, a);
    targets.sort_by_key(|x| std::cmp::Reverse(x.exp(0)));
    for d in targets {
        if d.exp(0) == a {
            continue;
        }
        let j = (1..m)
            .find(|&j| d.exp(j) > 0)
            .expect("some lower index is positive");
        let mut gamma = d.clone();
        gamma.set_exp(j, d.exp(j) - 1);
        gamma.set_exp(0, d.exp(0) + 1);
        let src = components
            .get(&gamma)
            .cloned()
            .unwrap_or_else(|| Poly::zero(&g.zeta_ctx, &g.space));
        let c = lowering[&j]
            .apply(&src)?
            .scale(&g.space.rat(1, d.exp(j) as i64));
        if !c.is_zero() {
            components.insert(d, c);
        }
    }
    components.retain(|_, c| !c.is_zero());
    let psi = PolyVec {
        zeta_ctx: g.zeta_ctx.clone(),
        m,
        a,
        components,
    };
    if check_levi_invariance(g, &psi)? {
        Ok(psi)
    } else {
        Err(Error::Inconsistent(
            "lowered symbol is not Levi invariant".into(),
        ))
    }
}

/// SP pattern `C_a^{λ-1}` inflated at `(Σ_{i,j<n} 2v_iv_jζ_ijζ_nn, Σ_j v_jζ_jn)`.
pub fn sp_pattern(g: &GeometrySpec, a: u32) -> Result<PolyVec> {
    if g.family != GeometryFamily::Sp {
        return Err(Error::Unsupported(
            "the substitution pattern is specific to SP".into(),
        ));
    }
    let n = g.n;
    let m = n - 1;
    let s = &g.space;
    let mut names: Vec<String> = g.zeta_ctx.names().to_vec();
    names.extend((1..=m).map(|i| format!("v_{i}")));
    let ctx = VarCtx::new(&names);
    let nz = g.zeta_ctx.len();
    let var = |i: usize| Poly::var(&ctx, s, i);
    let v = |i: usize| var(nz + i);
    let mut x = Poly::zero(&ctx, s);
    let mut y = Poly::zero(&ctx, s);
    for i in 0..m {
        y = y.add(&v(i).mul(&var(sym_index(n, i, n - 1))));
        for j in 0..m {
            x = x.add(
                &v(i)
                    .mul(&v(j))
                    .mul(&var(sym_index(n, i, j)))
                    .mul(&var(sym_index(n, n - 1, n - 1))),
            );
        }
    }
    let full = gegenbauer(a, &(g.lambda() - s.int(1)))
        .inflate()
        .compose(&[x, y])?;
    let mut components: BTreeMap<Monomial, Poly> = BTreeMap::new();
    for (mono, c) in full.terms() {
        let (zm, vm) = mono.split_at(nz);
        let e = components
            .entry(vm)
            .or_insert_with(|| Poly::zero(&g.zeta_ctx, s));
        e.add_term(zm, c.clone());
    }
    components.retain(|_, c| !c.is_zero());
    Ok(PolyVec {
        zeta_ctx: g.zeta_ctx.clone(),
        m,
        a,
        components,
    })
}

/// Whether two symbols agree up to one global nonzero scalar.
pub fn projectively_equal(x: &PolyVec, y: &PolyVec) -> bool {
    let keys: BTreeSet<&Monomial> = x.components.keys().chain(y.components.keys()).collect();
    let mut ratio: Option<RatFunc> = None;
    for k in keys {
        let (Some(a), Some(b)) = (x.components.get(k), y.components.get(k)) else {
            return false;
        };
        let Some(r) = a.ratio_to(b) else { return false };
        match &ratio {
            None => ratio = Some(r),
            Some(r0) if *r0 == r => {}
            Some(_) => return false,
        }
    }
    true
}

/// `D_{X→Y,a}` as a family of constant-coefficient operators in the z-context,
/// one per `v`-monomial.
#[derive(Clone, Debug, PartialEq)]
pub struct VecOperator {
    pub m: usize,
    pub entries: Vec<(Monomial, WeylOp)>,
}

impl VecOperator {
    /// The operator of a line-bundle target (`m = 0`).
    pub fn scalar(&self) -> Option<&WeylOp> {
        match (self.m, self.entries.as_slice()) {
            (0, [(_, op)]) => Some(op),
            _ => None,
        }
    }

    pub fn to_latex(&self) -> String {
        if let Some(op) = self.scalar() {
            return op.to_latex();
        }
        self.entries
            .iter()
            .map(|(v, op)| {
                let vm: String = v
                    .exponents()
                    .iter()
                    .enumerate()
                    .filter(|(_, e)| **e > 0)
                    .map(|(i, e)| {
                        if *e == 1 {
                            format!("v_{{{}}}", i + 1)
                        } else {
                            format!("v_{{{}}}^{{{e}}}", i + 1)
                        }
                    })
                    .collect();
                format!("{vm}\\left({}\\right)", op.to_latex())
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for VecOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(op) = self.scalar() {
            return write!(f, "{op}");
        }
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|(v, op)| format!("v^{:?}*({op})", v.exponents()))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Invert the symbol map on each `v`-coefficient, up to the global sign `(-1)^a`.
///
/// SP symbols are paired through the trace form, under which an off-diagonal
/// `ζ_ij` corresponds to `½ ∂/∂z_ij`.
pub fn emit_operator(g: &GeometrySpec, psi: &PolyVec) -> VecOperator {
    emit(g.family, g.n, psi)
}

fn emit(family: GeometryFamily, n: usize, psi: &PolyVec) -> VecOperator {
    let entries = psi
        .components
        .iter()
        .map(|(v, c)| {
            let op = WeylOp::symbol_inverse(c);
            let op = if family == GeometryFamily::Sp {
                sp_halve_off_diagonal(n, &op)
            } else {
                op
            };
            (v.clone(), op)
        })
        .collect();
    VecOperator { m: psi.m, entries }
}

fn sp_halve_off_diagonal(n: usize, op: &WeylOp) -> WeylOp {
    let mut r = WeylOp::zero(op.ctx(), op.space());
    for ((a, b), c) in op.terms() {
        let off: u32 = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .map(|(i, j)| b.exp(sym_index(n, i, j)))
            .sum();
        r.add_term(
            a.clone(),
            b.clone(),
            c.scale(&crate::coeff::qr(1, 1i64 << off)),
        );
    }
    r
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SymbolTermJson {
    pub v_exponents: Vec<u32>,
    pub zeta_monomial: Vec<u32>,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SolvedOperatorJson {
    pub geometry: GeometryFamily,
    pub n: usize,
    pub a: u32,
    pub params: Vec<String>,
    pub symbol: Vec<SymbolTermJson>,
    pub normalization: String,
}

/// A solved operator: the full symbol together with the data needed to print it.
#[derive(Clone, Debug)]
pub struct Solved {
    pub family: GeometryFamily,
    pub n: usize,
    pub a: u32,
    pub psi: PolyVec,
    pub normalization: String,
}

/// Solve, reconstruct, and package the operator of degree `a`.
pub fn solve_operator(
    g: &GeometrySpec,
    a: u32,
    values: &[(String, BigRational)],
) -> Result<Solved> {
    let (p, lead) = solve_with_basis(g, a, values)?;
    let psi = reconstruct_vector_valued(g, a, &p)?;
    Ok(Solved {
        family: g.family,
        n: g.n,
        a,
        psi,
        normalization: format!("coefficient of {lead} is 1"),
    })
}

impl Solved {
    pub fn to_json(&self, params: &ParamSpace) -> SolvedOperatorJson {
        let mut symbol = Vec::new();
        for (v, c) in &self.psi.components {
            for (m, cc) in c.terms() {
                symbol.push(SymbolTermJson {
                    v_exponents: v.exponents().to_vec(),
                    zeta_monomial: m.exponents().to_vec(),
                    coeff: cc.to_string(),
                });
            }
        }
        SolvedOperatorJson {
            geometry: self.family,
            n: self.n,
            a: self.a,
            params: params.names().to_vec(),
            symbol,
            normalization: self.normalization.clone(),
        }
    }

    pub fn operator(&self) -> VecOperator {
        emit(self.family, self.n, &self.psi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometries::build_geometry;

    #[test]
    fn basis_examples() {
        let g = build_geometry(GeometryFamily::So, 3).unwrap();
        let b = weight_space_basis(&g, 2);
        assert_eq!(b.len(), 2);
        assert_eq!(b[0].to_string(), "zeta_3^2");
        let g = build_geometry(GeometryFamily::Uu, 1).unwrap();
        assert_eq!(weight_space_basis(&g, 2).len(), 3);
    }

    #[test]
    fn so3_degree_two() {
        let g = build_geometry(GeometryFamily::So, 3).unwrap();
        let p = solve_singular(&g, 2).unwrap();
        let s = &g.space;
        let z = |i| Poly::var(&g.zeta_ctx, s, i);
        let expect = z(2)
            .pow(2)
            .scale(&g.lambda().scale_int(2))
            .add(&z(0).pow(2))
            .add(&z(1).pow(2));
        assert!(p.proportional(&expect));
        assert!(p.proportional(&closed_form(&g, 2).unwrap()));
    }

    #[test]
    fn uu_degree_one() {
        let g = build_geometry(GeometryFamily::Uu, 1).unwrap();
        let p = solve_singular(&g, 1).unwrap();
        let z = |i| Poly::var(&g.zeta_ctx, &g.space, i);
        let expect = z(0).scale(&g.a2()).sub(&z(1).scale(&g.a1()));
        assert!(p.proportional(&expect));
    }

    #[test]
    fn sp3_reconstruction_degree_one() {
        let g = build_geometry(GeometryFamily::Sp, 3).unwrap();
        let p = solve_singular(&g, 1).unwrap();
        let psi = reconstruct_vector_valued(&g, 1, &p).unwrap();
        let z = |i, j| Poly::var(&g.zeta_ctx, &g.space, sym_index(3, i, j));
        assert_eq!(psi.component(&Monomial::var(2, 0, 1)), z(0, 2));
        assert_eq!(psi.component(&Monomial::var(2, 1, 1)), z(1, 2));
    }

    #[test]
    fn degree_zero_is_one() {
        let g = build_geometry(GeometryFamily::Sp, 2).unwrap();
        assert_eq!(
            solve_singular(&g, 0).unwrap(),
            Poly::one(&g.zeta_ctx, &g.space)
        );
    }
}
