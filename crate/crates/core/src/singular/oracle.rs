//! Direct check of equivariance: `Rest∘D∘dπ(X) = dπ'(X)∘Rest∘D` on monomials.

use crate::geometries::{
    dpi_z, g_tau_generators, restriction_images, Gen, GeometryFamily, GeometrySpec, Role,
};
use crate::monomial::Monomial;
use crate::weyl::{Poly, WeylOp};
use crate::{Error, Result};

use super::{emit_operator, reconstruct_vector_valued, solve_singular};

/// Outcome of [`intertwining_check`].
#[derive(Clone, Debug)]
pub struct OracleReport {
    /// Number of (generator, monomial) pairs tested.
    pub checked: usize,
    /// Pairs with a nonzero residual.
    pub failures: Vec<(Gen, Monomial, Poly)>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Test the commuting square for every `g^τ` generator and every source
/// monomial of degree at most `max_degree`, with `D` the solved operator of
/// degree `a` (SO, UU with `n = 1`, SP with `n = 2`).
pub fn intertwining_check(g: &GeometrySpec, a: u32, max_degree: u32) -> Result<OracleReport> {
    let supported = matches!(g.family, GeometryFamily::So)
        || (g.family == GeometryFamily::Uu && g.n == 1)
        || (g.family == GeometryFamily::Sp && g.n == 2);
    if !supported {
        return Err(Error::Unsupported(format!(
            "intertwining check for {} n={}",
            g.family, g.n
        )));
    }
    let p = solve_singular(g, a)?;
    let psi = reconstruct_vector_valued(g, a, &p)?;
    let ops = emit_operator(g, &psi);
    let d: &WeylOp = match (g.family, ops.entries.as_slice()) {
        (GeometryFamily::So, _) => ops.scalar().expect("SO targets are line bundles"),
        (_, [(_, op)]) => op,
        _ => {
            return Err(Error::Inconsistent(
                "expected a single-component operator".into(),
            ))
        }
    };
    let d = d.with_ctx(&g.z_ctx)?;
    let rest = restriction_images(g)?;
    let mut report = OracleReport {
        checked: 0,
        failures: Vec::new(),
    };
    for gen in g_tau_generators(g) {
        let src = dpi_z(g, gen, Role::Source)?;
        let tgt = dpi_z(g, gen, Role::Target(a))?;
        for m in Monomial::all_up_to_degree(g.z_ctx.len(), max_degree) {
            let f = Poly::monomial(&g.z_ctx, m.clone(), g.space.int(1));
            let lhs = d.apply(&src.apply(&f)?)?.compose(&rest)?;
            let rhs = tgt.apply(&d.apply(&f)?.compose(&rest)?)?;
            let r = lhs.sub(&rhs);
            report.checked += 1;
            if !r.is_zero() {
                report.failures.push((gen, m, r));
            }
        }
    }
    Ok(report)
}
