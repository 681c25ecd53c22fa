//! Weyl algebra of polynomial-coefficient differential operators, the
//! algebraic Fourier transform, the symbol map and matrix-induced actions.

mod ctx;
mod op;
mod poly;

pub use ctx::VarCtx;
pub use op::{matrix_action, Side, WeylOp, WeylTermJson};
pub use poly::Poly;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::ParamSpace;
    use crate::monomial::Monomial;

    fn setup(n: usize) -> (VarCtx, ParamSpace) {
        (VarCtx::indexed("z", n), ParamSpace::new(&["l"]))
    }

    #[test]
    fn apply_examples() {
        let (c, s) = setup(2);
        let z1 = Poly::var(&c, &s, 0);
        let z2 = Poly::var(&c, &s, 1);
        let e = WeylOp::x(&c, &s, 0).then(&WeylOp::d(&c, &s, 0));
        for k in 0..5 {
            assert_eq!(e.act(&z1.pow(k)), z1.pow(k).scale(&s.int(k as i64)));
        }
        let d11 = WeylOp::laplacian_on(&c, &s, &[0]);
        assert_eq!(
            d11.act(&z1.pow(2).add(&z2.pow(2))),
            Poly::constant(&c, s.int(2))
        );
        let t = WeylOp::x(&c, &s, 0).then(&WeylOp::d(&c, &s, 1));
        assert_eq!(t.act(&z2.pow(3)), z1.mul(&z2.pow(2)).scale(&s.int(3)));
    }

    #[test]
    fn compose_examples() {
        let (c, s) = setup(2);
        let d1 = WeylOp::d(&c, &s, 0);
        let d2 = WeylOp::d(&c, &s, 1);
        let x1 = WeylOp::x(&c, &s, 0);
        assert_eq!(d1.then(&x1), x1.then(&d1).add(&WeylOp::identity(&c, &s)));
        let e = x1.then(&d1);
        let expect =
            WeylOp::term(&c, Monomial::var(2, 0, 2), Monomial::var(2, 0, 2), s.int(1)).add(&e);
        assert_eq!(e.then(&e), expect);
        assert!(d1.commutator(&d2).unwrap().is_zero());
    }

    #[test]
    fn fourier_examples() {
        let (c, s) = setup(2);
        let dual = c.dual();
        assert_eq!(
            WeylOp::d(&c, &s, 0).fourier_hat(),
            WeylOp::x(&dual, &s, 0).neg()
        );
        assert_eq!(
            WeylOp::identity(&c, &s).fourier_hat(),
            WeylOp::identity(&dual, &s)
        );
        let e = WeylOp::euler(&c, &s).fourier_hat();
        assert_eq!(e, WeylOp::euler(&dual, &s).neg().add_scalar(&s.int(-2)));
    }

    #[test]
    fn symbol_examples() {
        let (c, s) = setup(3);
        let lap = WeylOp::laplacian_on(&c, &s, &[0, 1]);
        let dual = c.dual();
        let q = Poly::var(&dual, &s, 0)
            .pow(2)
            .add(&Poly::var(&dual, &s, 1).pow(2));
        assert_eq!(lap.symbol().unwrap(), q);
        assert_eq!(WeylOp::symbol_inverse(&q), lap);
        assert!(WeylOp::x(&c, &s, 0).symbol().is_err());
    }

    #[test]
    fn matrix_action_examples() {
        let (c, s) = setup(2);
        let id = vec![vec![s.int(1), s.int(0)], vec![s.int(0), s.int(1)]];
        assert_eq!(
            matrix_action(&c, &s, &id, Side::Primal).unwrap(),
            WeylOp::euler(&c, &s).neg()
        );
        let e12 = vec![vec![s.int(0), s.int(1)], vec![s.int(0), s.int(0)]];
        let expect = WeylOp::x(&c, &s, 1).then(&WeylOp::d(&c, &s, 0)).neg();
        assert_eq!(matrix_action(&c, &s, &e12, Side::Primal).unwrap(), expect);
        let d = vec![vec![s.int(1), s.int(0)], vec![s.int(0), s.int(2)]];
        let lhs = matrix_action(&c, &s, &d, Side::Primal)
            .unwrap()
            .fourier_hat();
        let rhs = matrix_action(&c.dual(), &s, &d, Side::Dual)
            .unwrap()
            .add_scalar(&s.int(3));
        assert_eq!(lhs, rhs);
        assert!(matrix_action(&c, &s, &d[..1], Side::Dual).is_err());
    }

    #[test]
    fn context_mismatch_is_an_error() {
        let (c, s) = setup(2);
        let other = VarCtx::indexed("w", 2);
        assert!(WeylOp::d(&c, &s, 0)
            .compose(&WeylOp::d(&other, &s, 0))
            .is_err());
        assert!(WeylOp::d(&c, &s, 0)
            .apply(&Poly::var(&other, &s, 0))
            .is_err());
    }
}
