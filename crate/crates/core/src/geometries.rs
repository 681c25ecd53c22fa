//! The three split-rank-one settings: `SO(n,2) ⊃ SO(n-1,2)`,
//! `Sp(n,R) ⊃ Sp(n-1,R) × Sp(1,R)` and `U(n,1) × U(n,1) ⊃ ΔU(n,1)`.
//!
//! Provides the Fourier-side operators `dπ̂(C)` for `C ∈ n₊`, the z-side
//! vector fields `dπ(X)` used by the intertwining oracle, and the Levi
//! actions on the ζ-side.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::coeff::{ParamSpace, RatFunc};
use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::weyl::{Poly, VarCtx, WeylOp};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GeometryFamily {
    So,
    Sp,
    Uu,
}

impl fmt::Display for GeometryFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GeometryFamily::So => "so",
            GeometryFamily::Sp => "sp",
            GeometryFamily::Uu => "uu",
        })
    }
}

impl FromStr for GeometryFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "so" => Ok(GeometryFamily::So),
            "sp" => Ok(GeometryFamily::Sp),
            "uu" | "u" => Ok(GeometryFamily::Uu),
            other => Err(Error::Parse(format!("unknown geometry '{other}'"))),
        }
    }
}

/// Generators, 0-based indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gen {
    /// SO: `C_j`.
    C(usize),
    /// SP: the symmetric matrix unit `E_ij + E_ji` (`E_ii` on the diagonal), `i <= j`.
    Sym(usize, usize),
    /// UU: `C'_i + C''_i`.
    Plus(usize),
    /// UU: `C'_i - C''_i`.
    Minus(usize),
    /// z-side translation `-∂_j` (along the subvariety).
    Translation(usize),
    /// z-side grading element.
    Euler,
    /// z-side rotation `z_i ∂_j - z_j ∂_i`.
    Rotation(usize, usize),
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Gen::C(j) => write!(f, "C{}", j + 1),
            Gen::Sym(i, j) => write!(f, "C{}_{}", i + 1, j + 1),
            Gen::Plus(i) => write!(f, "C{}+", i + 1),
            Gen::Minus(i) => write!(f, "C{}-", i + 1),
            Gen::Translation(j) => write!(f, "T{}", j + 1),
            Gen::Euler => write!(f, "H"),
            Gen::Rotation(i, j) => write!(f, "R{}_{}", i + 1, j + 1),
        }
    }
}

impl FromStr for Gen {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::UnknownGenerator(s.to_string());
        let idx = |t: &str| -> Result<usize> {
            let v: usize = t.parse().map_err(|_| bad())?;
            v.checked_sub(1).ok_or_else(bad)
        };
        if s == "H" {
            return Ok(Gen::Euler);
        }
        if let Some(r) = s.strip_prefix('T') {
            return Ok(Gen::Translation(idx(r)?));
        }
        if let Some(r) = s.strip_prefix('R') {
            let (i, j) = r.split_once('_').ok_or_else(bad)?;
            return Ok(Gen::Rotation(idx(i)?, idx(j)?));
        }
        let r = s.strip_prefix('C').ok_or_else(bad)?;
        if let Some(i) = r.strip_suffix('+') {
            return Ok(Gen::Plus(idx(i)?));
        }
        if let Some(i) = r.strip_suffix('-') {
            return Ok(Gen::Minus(idx(i)?));
        }
        if let Some((i, j)) = r.split_once('_') {
            return Ok(Gen::Sym(idx(i)?, idx(j)?));
        }
        Ok(Gen::C(idx(r)?))
    }
}

/// Whether an `n₊` generator lies in `n₊^τ` (fixed by the involution) or `n₊^{-τ}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Tau {
    Plus,
    Minus,
}

/// Which character the z-side action is built with.
#[derive(Clone, Debug, PartialEq)]
pub enum Role {
    /// Source bundle of the intertwining operator; character `λ`
    /// (UU: the weights `a₁, a₂`).
    Source,
    /// Target bundle on the subvariety after an operator of degree `a`.
    Target(u32),
    /// The dual character `μ` whose Fourier transform is `dπ̂`.
    Dual,
}

#[derive(Clone, Debug)]
pub struct GeometrySpec {
    pub family: GeometryFamily,
    pub n: usize,
    pub space: ParamSpace,
    pub zeta_ctx: VarCtx,
    pub z_ctx: VarCtx,
    /// `n₊` generators with their τ-tag, in a fixed order.
    pub nplus: Vec<(Gen, Tau)>,
    /// ρ-shift between `λ` and the dual character `μ` (SO: n, SP: n+1, UU: n+1 per factor).
    pub rho_shift: i64,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct GeneratorJson {
    pub id: String,
    pub tau: Tau,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct GeometryJson {
    pub family: GeometryFamily,
    pub n: usize,
    pub params: Vec<String>,
    pub zeta_vars: Vec<String>,
    pub z_vars: Vec<String>,
    pub generators: Vec<GeneratorJson>,
    pub rho_shift: i64,
}

/// Index of `ζ_ij` (`i <= j` after sorting) in the SP context.
pub fn sym_index(n: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    i * n - i * (i + 1) / 2 + j
}

fn sp_names(prefix: &str, n: usize) -> Vec<String> {
    let mut v = Vec::new();
    for i in 0..n {
        for j in i..n {
            if n < 10 {
                v.push(format!("{prefix}_{}{}", i + 1, j + 1));
            } else {
                v.push(format!("{prefix}_{},{}", i + 1, j + 1));
            }
        }
    }
    v
}

fn uu_names(prefix: &str, n: usize) -> Vec<String> {
    let mut v: Vec<String> = (1..=n).map(|i| format!("{prefix}'_{i}")).collect();
    v.extend((1..=n).map(|i| format!("{prefix}''_{i}")));
    v
}

/// Build a geometry with its default parameter names (`l`; UU: `lp`, `lpp`).
pub fn build_geometry(family: GeometryFamily, n: usize) -> Result<GeometrySpec> {
    let (space, zeta_ctx, z_ctx, nplus, rho_shift) = match family {
        GeometryFamily::So => {
            if n < 2 {
                return Err(Error::OutOfRange(format!("SO needs n >= 2, got {n}")));
            }
            let nplus = (0..n)
                .map(|j| (Gen::C(j), if j + 1 < n { Tau::Plus } else { Tau::Minus }))
                .collect();
            (
                ParamSpace::new(&["l"]),
                VarCtx::indexed("zeta", n),
                VarCtx::indexed("z", n),
                nplus,
                n as i64,
            )
        }
        GeometryFamily::Sp => {
            if n < 2 {
                return Err(Error::OutOfRange(format!("SP needs n >= 2, got {n}")));
            }
            let mut nplus = Vec::new();
            for i in 0..n {
                for j in i..n {
                    let tau = if (j + 1 < n) || (i + 1 == n) {
                        Tau::Plus
                    } else {
                        Tau::Minus
                    };
                    nplus.push((Gen::Sym(i, j), tau));
                }
            }
            (
                ParamSpace::new(&["l"]),
                VarCtx::new(&sp_names("zeta", n)),
                VarCtx::new(&sp_names("z", n)),
                nplus,
                n as i64 + 1,
            )
        }
        GeometryFamily::Uu => {
            if n < 1 {
                return Err(Error::OutOfRange("UU needs n >= 1".into()));
            }
            let mut nplus: Vec<(Gen, Tau)> = (0..n).map(|i| (Gen::Plus(i), Tau::Plus)).collect();
            nplus.extend((0..n).map(|i| (Gen::Minus(i), Tau::Minus)));
            (
                ParamSpace::new(&["lp", "lpp"]),
                VarCtx::new(&uu_names("zeta", n)),
                VarCtx::new(&uu_names("z", n)),
                nplus,
                n as i64 + 1,
            )
        }
    };
    Ok(GeometrySpec {
        family,
        n,
        space,
        zeta_ctx,
        z_ctx,
        nplus,
        rho_shift,
    })
}

impl GeometrySpec {
    pub fn lambda(&self) -> RatFunc {
        match self.family {
            GeometryFamily::Uu => panic!("UU has parameters lp, lpp"),
            _ => self.space.p("l"),
        }
    }

    /// The dual character `μ = -λ + ρ` (SO, SP).
    pub fn mu(&self) -> RatFunc {
        -self.lambda() + self.space.int(self.rho_shift)
    }

    /// UU weight `a₁ = n + 1 - λ'` of the first factor.
    pub fn a1(&self) -> RatFunc {
        self.space.int(self.n as i64 + 1) - self.space.p("lp")
    }

    /// UU weight `a₂ = n - 1 - λ''` of the second factor.
    pub fn a2(&self) -> RatFunc {
        self.space.int(self.n as i64 - 1) - self.space.p("lpp")
    }

    /// Generators of `n'₊ = n₊^τ`.
    pub fn nplus_tau(&self) -> Vec<Gen> {
        self.nplus
            .iter()
            .filter(|(_, t)| *t == Tau::Plus)
            .map(|(g, _)| *g)
            .collect()
    }

    pub fn tau_of(&self, g: Gen) -> Option<Tau> {
        self.nplus.iter().find(|(h, _)| *h == g).map(|(_, t)| *t)
    }

    fn zd(&self, i: usize) -> WeylOp {
        WeylOp::d(&self.zeta_ctx, &self.space, i)
    }

    fn zx(&self, i: usize) -> WeylOp {
        WeylOp::x(&self.zeta_ctx, &self.space, i)
    }

    fn zeta_term(&self, x: &[usize], d: &[usize], c: RatFunc) -> WeylOp {
        let n = self.zeta_ctx.len();
        let mut a = Monomial::one(n);
        for &i in x {
            a.set_exp(i, a.exp(i) + 1);
        }
        let mut b = Monomial::one(n);
        for &i in d {
            b.set_exp(i, b.exp(i) + 1);
        }
        WeylOp::term(&self.zeta_ctx, a, b, c)
    }

    pub fn to_json(&self) -> GeometryJson {
        GeometryJson {
            family: self.family,
            n: self.n,
            params: self.space.names().to_vec(),
            zeta_vars: self.zeta_ctx.names().to_vec(),
            z_vars: self.z_ctx.names().to_vec(),
            generators: self
                .nplus
                .iter()
                .map(|(g, t)| GeneratorJson {
                    id: g.to_string(),
                    tau: *t,
                })
                .collect(),
            rho_shift: self.rho_shift,
        }
    }

    /// Diagonal torus weight (without the `λ`-shift) of the weight-space
    /// basis of degree `a`: SO `(a)` on the normal line, SP `(a,0,…,0;a)`,
    /// UU `(a,0,…,0)`.
    pub fn chi(&self, a: u32) -> Vec<i64> {
        let a = a as i64;
        match self.family {
            GeometryFamily::So => vec![a],
            GeometryFamily::Sp => {
                let mut v = vec![0; self.n];
                v[0] = a;
                v[self.n - 1] += a;
                v
            }
            GeometryFamily::Uu => {
                let mut v = vec![0; self.n];
                v[0] = a;
                v
            }
        }
    }
}

/// `dπ̂(C)` on the ζ-side for an `n₊` generator.
pub fn dpi_hat(g: &GeometrySpec, gen: Gen) -> Result<WeylOp> {
    if g.tau_of(gen).is_none() {
        return Err(Error::UnknownGenerator(format!(
            "{gen} is not an n+ generator of {}",
            g.family
        )));
    }
    let s = &g.space;
    let n = g.n;
    match (g.family, gen) {
        (GeometryFamily::So, Gen::C(j)) => {
            // λ∂_j + E_ζ ∂_j - ½ ζ_j □
            let mut t = g.zd(j).scale(&g.lambda());
            for k in 0..n {
                t = t.add(&g.zeta_term(&[k], &[k, j], s.int(1)));
                t = t.add(&g.zeta_term(&[j], &[k, k], s.rat(-1, 2)));
            }
            Ok(t)
        }
        (GeometryFamily::Sp, Gen::Sym(p, q)) => {
            let cm = sym_unit(n, p, q);
            let mut t = WeylOp::zero(&g.zeta_ctx, s);
            for i in 0..n {
                for j in i..n {
                    if cm[i][j] != 0 {
                        t = t.add(
                            &g.zd(sym_index(n, i, j))
                                .scale(&(-g.lambda()).scale_int(cm[i][j])),
                        );
                    }
                }
            }
            // -¼ Σ_{ijkl} C_kl (1+δ_ik)(1+δ_jl) ζ_ij ∂_ik ∂_jl over all orderings, ∂_ki = ∂_ik
            let quarter = s.rat(-1, 4);
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        for l in 0..n {
                            let c = cm[k][l];
                            if c == 0 {
                                continue;
                            }
                            let w = (1 + (i == k) as i64) * (1 + (j == l) as i64);
                            t = t.add(&g.zeta_term(
                                &[sym_index(n, i, j)],
                                &[sym_index(n, i, k), sym_index(n, j, l)],
                                quarter.scale_int(c * w),
                            ));
                        }
                    }
                }
            }
            Ok(t)
        }
        (GeometryFamily::Uu, Gen::Plus(i)) | (GeometryFamily::Uu, Gen::Minus(i)) => {
            let sign = if matches!(gen, Gen::Plus(_)) { 1 } else { -1 };
            let block = |off: usize, a: &RatFunc| -> WeylOp {
                let mut t = g.zd(off + i).scale(a);
                for j in 0..n {
                    t = t.add(&g.zeta_term(&[off + j], &[off + i, off + j], s.int(1)));
                }
                t.neg()
            };
            Ok(block(0, &g.a1()).add(&block(n, &g.a2()).scale(&s.int(sign))))
        }
        _ => Err(Error::UnknownGenerator(gen.to_string())),
    }
}

/// Integer entries of the symmetric unit matrix for `Gen::Sym(p, q)`.
fn sym_unit(n: usize, p: usize, q: usize) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0; n]; n];
    m[p][q] = 1;
    m[q][p] = 1;
    m
}

/// Variable context of the z-side for `role`.
pub fn z_ctx_for(g: &GeometrySpec, role: &Role) -> VarCtx {
    match (g.family, role) {
        (GeometryFamily::So, Role::Target(_)) => VarCtx::indexed("z", g.n - 1),
        (GeometryFamily::Uu, Role::Target(_)) => VarCtx::new(&["z"]),
        (GeometryFamily::Sp, Role::Target(_)) if g.n == 2 => VarCtx::new(&["z_11", "z_22"]),
        _ => g.z_ctx.clone(),
    }
}

/// `AX + B - XCX - XD` for the block matrix `(A B; C D)` acting at `X` (p×q).
pub fn gl_beta(
    a: &[Vec<Poly>],
    b: &[Vec<Poly>],
    c: &[Vec<Poly>],
    d: &[Vec<Poly>],
    x: &[Vec<Poly>],
) -> Result<Vec<Vec<Poly>>> {
    let p = x.len();
    let q = x.first().map(|r| r.len()).unwrap_or(0);
    let shape =
        |m: &[Vec<Poly>], r: usize, cc: usize| m.len() == r && m.iter().all(|row| row.len() == cc);
    if !(shape(x, p, q) && shape(a, p, p) && shape(b, p, q) && shape(c, q, p) && shape(d, q, q)) {
        return Err(Error::Dimension("gl block shapes".into()));
    }
    let zero = x
        .first()
        .and_then(|r| r.first())
        .map(|e| Poly::zero(e.ctx(), e.space()))
        .ok_or_else(|| Error::Dimension("empty matrix".into()))?;
    let mm = |l: &[Vec<Poly>], r: &[Vec<Poly>]| -> Vec<Vec<Poly>> {
        let rows = l.len();
        let inner = r.len();
        let cols = r.first().map(|x| x.len()).unwrap_or(0);
        (0..rows)
            .map(|i| {
                (0..cols)
                    .map(|j| {
                        (0..inner).fold(zero.clone(), |acc, k| acc.add(&l[i][k].mul(&r[k][j])))
                    })
                    .collect()
            })
            .collect()
    };
    let ax = mm(a, x);
    let xcx = mm(&mm(x, c), x);
    let xd = mm(x, d);
    Ok((0..p)
        .map(|i| {
            (0..q)
                .map(|j| ax[i][j].add(&b[i][j]).sub(&xcx[i][j]).sub(&xd[i][j]))
                .collect()
        })
        .collect())
}

/// z-side infinitesimal action `dπ(X)`.
///
/// SO (all roles), SP (`Dual`, `Source`; `Target` for n = 2), UU (`Dual`; `Source`/`Target` for n = 1).
pub fn dpi_z(g: &GeometrySpec, gen: Gen, role: Role) -> Result<WeylOp> {
    let s = &g.space;
    let ctx = z_ctx_for(g, &role);
    let m = ctx.len();
    let x = |i: usize| WeylOp::x(&ctx, s, i);
    let d = |i: usize| WeylOp::d(&ctx, s, i);
    let not_in_table =
        || Error::UnknownGenerator(format!("{gen} for {} with role {role:?}", g.family));
    match g.family {
        GeometryFamily::So => {
            let nu = match role {
                Role::Source => g.lambda(),
                Role::Target(a) => g.lambda() + s.int(a as i64),
                Role::Dual => g.mu(),
            };
            // tangential generators are those with index < n-1; the normal C_n exists on the source side
            let tangential = |j: usize| j + 1 < g.n;
            let valid = |j: usize| j < m && (tangential(j) || !matches!(role, Role::Target(_)));
            match gen {
                Gen::C(j) if valid(j) => {
                    let e = WeylOp::euler(&ctx, s);
                    let mut q = Poly::zero(&ctx, s);
                    for k in 0..m {
                        q = q.add(&Poly::var(&ctx, s, k).pow(2));
                    }
                    Ok(x(j)
                        .scale(&(-nu))
                        .sub(&x(j).then(&e))
                        .add(&WeylOp::mul_by(&q).then(&d(j)).scale(&s.rat(1, 2))))
                }
                Gen::Translation(j) if j < m && tangential(j) => Ok(d(j).neg()),
                Gen::Euler => Ok(WeylOp::euler(&ctx, s).add_scalar(&nu)),
                Gen::Rotation(i, j) if i < j && tangential(j) => {
                    Ok(x(i).then(&d(j)).sub(&x(j).then(&d(i))))
                }
                _ => Err(not_in_table()),
            }
        }
        GeometryFamily::Sp => {
            let n = g.n;
            let ch = match role {
                Role::Dual => g.mu(),
                Role::Source => g.lambda(),
                Role::Target(a) => {
                    // n = 2: two copies of sl₂ on the diagonal, weight λ + a each
                    if n != 2 {
                        return Err(Error::Unsupported(
                            "SP target actions are implemented for n = 2 only".into(),
                        ));
                    }
                    let nu = g.lambda() + s.int(a as i64);
                    let slot = |i: usize| {
                        [sym_index(n, 0, 0), sym_index(n, 1, 1)]
                            .iter()
                            .position(|&x| x == i)
                    };
                    return match gen {
                        Gen::Sym(p, q) if p == q && p < 2 => {
                            Ok(x(p).scale(&nu).add(&x(p).then(&x(p)).then(&d(p))))
                        }
                        Gen::Translation(i) => slot(i).map(|k| d(k).neg()).ok_or_else(not_in_table),
                        _ => Err(not_in_table()),
                    };
                }
            };
            if let (Gen::Translation(i), Role::Source) = (gen, &role) {
                return if i < m {
                    Ok(d(i).neg())
                } else {
                    Err(not_in_table())
                };
            }
            let Gen::Sym(p, q) = gen else {
                return Err(not_in_table());
            };
            if p >= n || q >= n {
                return Err(not_in_table());
            }
            // ch Tr(CZ) - Σ_{i≤j} β(Y,Z)_ij ∂_ij with Y = (0, 0, C, 0), Z symmetric
            let cm = sym_unit(n, p, q);
            let zmat: Vec<Vec<Poly>> = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| Poly::var(&ctx, s, sym_index(n, i, j)))
                        .collect()
                })
                .collect();
            let cpoly: Vec<Vec<Poly>> = cm
                .iter()
                .map(|r| r.iter().map(|&e| Poly::constant(&ctx, s.int(e))).collect())
                .collect();
            let zero: Vec<Vec<Poly>> = vec![vec![Poly::zero(&ctx, s); n]; n];
            let beta = gl_beta(&zero, &zero, &cpoly, &zero, &zmat)?;
            let mut tr = Poly::zero(&ctx, s);
            for k in 0..n {
                for l in 0..n {
                    if cm[k][l] != 0 {
                        tr = tr.add(&zmat[l][k].scale(&s.int(cm[k][l])));
                    }
                }
            }
            let mut t = WeylOp::mul_by(&tr.scale(&ch));
            for i in 0..n {
                for j in i..n {
                    t = t.sub(&WeylOp::mul_by(&beta[i][j]).then(&d(sym_index(n, i, j))));
                }
            }
            Ok(t)
        }
        GeometryFamily::Uu => {
            let n = g.n;
            match role {
                Role::Dual => {
                    // Σ c'_i z'_i (E' - μ') + Σ c''_i z''_i (E'' - μ'') with μ = a - n - 1
                    let sign = match gen {
                        Gen::Plus(_) => 1,
                        Gen::Minus(_) => -1,
                        _ => return Err(not_in_table()),
                    };
                    let (Gen::Plus(i) | Gen::Minus(i)) = gen else {
                        unreachable!()
                    };
                    if i >= n {
                        return Err(not_in_table());
                    }
                    let shift = s.int(n as i64 + 1);
                    let mu1 = g.a1() - &shift;
                    let mu2 = g.a2() - &shift;
                    let e1 = WeylOp::euler_on(&ctx, s, &(0..n).collect::<Vec<_>>());
                    let e2 = WeylOp::euler_on(&ctx, s, &(n..2 * n).collect::<Vec<_>>());
                    let b1 = x(i).then(&e1.add_scalar(&-mu1));
                    let b2 = x(n + i).then(&e2.add_scalar(&-mu2));
                    Ok(b1.add(&b2.scale(&s.int(sign))))
                }
                _ if n != 1 => Err(Error::Unsupported(
                    "UU source/target actions are implemented for n = 1 only".into(),
                )),
                Role::Source => {
                    let (a1, a2) = (g.a1(), g.a2());
                    match gen {
                        Gen::Plus(0) => Ok(x(0)
                            .then(&x(0).then(&d(0)).add_scalar(&a1))
                            .add(&x(1).then(&x(1).then(&d(1)).add_scalar(&a2)))),
                        Gen::Euler => Ok(x(0)
                            .then(&d(0))
                            .add(&x(1).then(&d(1)))
                            .scale(&s.int(2))
                            .add_scalar(&(&a1 + &a2))),
                        Gen::Translation(0) => Ok(d(0).add(&d(1)).neg()),
                        _ => Err(not_in_table()),
                    }
                }
                Role::Target(a) => {
                    let k = g.a1() + g.a2() + s.int(2 * a as i64);
                    match gen {
                        Gen::Plus(0) => Ok(x(0).then(&x(0).then(&d(0)).add_scalar(&k))),
                        Gen::Euler => Ok(x(0).then(&d(0)).scale(&s.int(2)).add_scalar(&k)),
                        Gen::Translation(0) => Ok(d(0).neg()),
                        _ => Err(not_in_table()),
                    }
                }
            }
        }
    }
}

/// Generators of `g^τ` used by the intertwining oracle.
pub fn g_tau_generators(g: &GeometrySpec) -> Vec<Gen> {
    match g.family {
        GeometryFamily::So => {
            let m = g.n - 1;
            let mut v: Vec<Gen> = (0..m).map(Gen::Translation).collect();
            v.push(Gen::Euler);
            for i in 0..m {
                for j in i + 1..m {
                    v.push(Gen::Rotation(i, j));
                }
            }
            v.extend((0..m).map(Gen::C));
            v
        }
        GeometryFamily::Uu if g.n == 1 => vec![Gen::Translation(0), Gen::Euler, Gen::Plus(0)],
        // translations and n₊^τ generate g^τ = sp(1) ⊕ sp(1)
        GeometryFamily::Sp if g.n == 2 => vec![
            Gen::Translation(sym_index(2, 0, 0)),
            Gen::Translation(sym_index(2, 1, 1)),
            Gen::Sym(0, 0),
            Gen::Sym(1, 1),
        ],
        _ => Vec::new(),
    }
}

/// Restriction to the subvariety, as images of the source variables in the target context.
pub fn restriction_images(g: &GeometrySpec) -> Result<Vec<Poly>> {
    let tctx = z_ctx_for(g, &Role::Target(0));
    let s = &g.space;
    match g.family {
        GeometryFamily::So => {
            let mut v: Vec<Poly> = (0..g.n - 1).map(|i| Poly::var(&tctx, s, i)).collect();
            v.push(Poly::zero(&tctx, s));
            Ok(v)
        }
        GeometryFamily::Uu if g.n == 1 => Ok(vec![Poly::var(&tctx, s, 0), Poly::var(&tctx, s, 0)]),
        GeometryFamily::Sp if g.n == 2 => Ok(vec![
            Poly::var(&tctx, s, 0),
            Poly::zero(&tctx, s),
            Poly::var(&tctx, s, 1),
        ]),
        _ => Err(Error::Unsupported(format!(
            "restriction for {} n={}",
            g.family, g.n
        ))),
    }
}

/// Vector field on the ζ-side of the Levi element `A` of `gl_m` acting on the
/// fiber directions: SP `m = n-1`, UU `m = n`. SO uses [`so_levi_rotation`].
pub fn levi_action(g: &GeometrySpec, a: &[Vec<RatFunc>]) -> Result<WeylOp> {
    let s = &g.space;
    let n = g.n;
    let mut t = WeylOp::zero(&g.zeta_ctx, s);
    match g.family {
        GeometryFamily::Sp => {
            let m = n - 1;
            if a.len() != m || a.iter().any(|r| r.len() != m) {
                return Err(Error::Dimension(format!("Levi element must be {m}x{m}")));
            }
            // δζ_ij = Σ_k A_ki ζ_kj + Σ_k ζ_ik A_kj (i ≤ j < n), δζ_in = Σ_k A_ki ζ_kn
            for i in 0..m {
                for j in i..m {
                    let target = sym_index(n, i, j);
                    for k in 0..m {
                        t = t.add(&g.zx(sym_index(n, k, j)).then(&g.zd(target)).scale(&a[k][i]));
                        t = t.add(&g.zx(sym_index(n, i, k)).then(&g.zd(target)).scale(&a[k][j]));
                    }
                }
                let target = sym_index(n, i, n - 1);
                for k in 0..m {
                    t = t.add(
                        &g.zx(sym_index(n, k, n - 1))
                            .then(&g.zd(target))
                            .scale(&a[k][i]),
                    );
                }
            }
            Ok(t)
        }
        GeometryFamily::Uu => {
            if a.len() != n || a.iter().any(|r| r.len() != n) {
                return Err(Error::Dimension(format!("Levi element must be {n}x{n}")));
            }
            for i in 0..n {
                for k in 0..n {
                    t = t.add(&g.zx(k).then(&g.zd(i)).scale(&a[k][i]));
                    t = t.add(&g.zx(n + k).then(&g.zd(n + i)).scale(&a[k][i]));
                }
            }
            Ok(t)
        }
        GeometryFamily::So => Err(Error::Unsupported("SO Levi acts by rotations".into())),
    }
}

/// SO: infinitesimal rotation `ζ_i ∂_j - ζ_j ∂_i` of the tangential block.
pub fn so_levi_rotation(g: &GeometrySpec, i: usize, j: usize) -> WeylOp {
    g.zx(i).then(&g.zd(j)).sub(&g.zx(j).then(&g.zd(i)))
}

/// Elementary matrix `E_ij` of size `m` over the geometry's parameters.
pub fn elementary(g: &GeometrySpec, m: usize, i: usize, j: usize) -> Vec<Vec<RatFunc>> {
    let mut e = vec![vec![RatFunc::zero(&g.space); m]; m];
    e[i][j] = RatFunc::one(&g.space);
    e
}

/// Diagonal automorphism `x_i ↦ f_i x_i`, `∂_i ↦ f_i^{-1} ∂_i` of the Weyl algebra.
pub fn rescale(t: &WeylOp, f: &[RatFunc]) -> Result<WeylOp> {
    let mut r = WeylOp::zero(t.ctx(), t.space());
    for ((a, b), c) in t.terms() {
        let mut w = c.clone();
        for (i, fi) in f.iter().enumerate() {
            let e = a.exp(i) as i64 - b.exp(i) as i64;
            if e > 0 {
                w = w * fi.pow(e as u32);
            } else if e < 0 {
                w = w / fi.pow((-e) as u32);
            }
        }
        r.add_term(a.clone(), b.clone(), w);
    }
    Ok(r)
}

/// SP Fourier transform normalized by the trace pairing:
/// `z_ij ↦ ½(1+δ_ij) ∂/∂ζ_ij`, `∂/∂z_ij ↦ (δ_ij - 2) ζ_ij`.
pub fn sp_fourier(g: &GeometrySpec, t: &WeylOp) -> Result<WeylOp> {
    let n = g.n;
    let mut f = vec![RatFunc::one(&g.space); g.zeta_ctx.len()];
    for i in 0..n {
        for j in i..n {
            if i != j {
                f[sym_index(n, i, j)] = g.space.int(2);
            }
        }
    }
    let h = t.fourier_hat().with_ctx(&g.zeta_ctx)?;
    rescale(&h, &f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_shapes() {
        let so = build_geometry(GeometryFamily::So, 3).unwrap();
        assert_eq!(so.zeta_ctx.len(), 3);
        assert_eq!(so.nplus_tau(), vec![Gen::C(0), Gen::C(1)]);
        let uu = build_geometry(GeometryFamily::Uu, 1).unwrap();
        assert_eq!(uu.zeta_ctx.len(), 2);
        assert_eq!(uu.nplus_tau(), vec![Gen::Plus(0)]);
        let sp = build_geometry(GeometryFamily::Sp, 2).unwrap();
        assert_eq!(sp.zeta_ctx.names(), &["zeta_11", "zeta_12", "zeta_22"]);
        assert_eq!(sp.nplus.len(), 3);
        assert!(build_geometry(GeometryFamily::So, 1).is_err());
        assert!(build_geometry(GeometryFamily::Sp, 1).is_err());
        assert!(build_geometry(GeometryFamily::Uu, 0).is_err());
    }

    #[test]
    fn generator_ids_roundtrip() {
        for g in [
            Gen::C(2),
            Gen::Sym(0, 1),
            Gen::Plus(0),
            Gen::Minus(3),
            Gen::Translation(1),
            Gen::Euler,
            Gen::Rotation(0, 2),
        ] {
            assert_eq!(g.to_string().parse::<Gen>().unwrap(), g);
        }
        assert!("X1".parse::<Gen>().is_err());
    }

    #[test]
    fn so_dpi_hat_on_constants() {
        let g = build_geometry(GeometryFamily::So, 3).unwrap();
        let t = dpi_hat(&g, Gen::C(0)).unwrap();
        assert!(t.act(&Poly::one(&g.zeta_ctx, &g.space)).is_zero());
        assert!(dpi_hat(&g, Gen::Plus(0)).is_err());
    }

    #[test]
    fn gl_beta_examples() {
        let ctx = VarCtx::new(&["x"]);
        let s = ParamSpace::empty();
        let one = vec![vec![Poly::one(&ctx, &s)]];
        let x = vec![vec![Poly::var(&ctx, &s, 0)]];
        let r = gl_beta(&one, &one, &one, &one, &x).unwrap();
        let expect = Poly::one(&ctx, &s).sub(&Poly::var(&ctx, &s, 0).pow(2));
        assert_eq!(r[0][0], expect);
        let zero = vec![vec![Poly::zero(&ctx, &s)]];
        assert!(gl_beta(&zero, &zero, &zero, &zero, &x).unwrap()[0][0].is_zero());
        assert_eq!(gl_beta(&one, &zero, &zero, &zero, &x).unwrap(), x);
        assert!(gl_beta(&one, &zero, &zero, &zero, &[]).is_err());
    }
}
