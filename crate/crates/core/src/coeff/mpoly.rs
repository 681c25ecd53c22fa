//! Sparse multivariate polynomials over Q in the formal parameters.
//!
//! Only what rational-function normalization needs: ring operations, exact
//! division and a recursive primitive-PRS gcd.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::monomial::Monomial;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        let mut p = MPoly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(nvars), c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        MPoly::constant(nvars, BigRational::one())
    }

    pub fn var(nvars: usize, v: usize) -> Self {
        let mut p = MPoly::zero(nvars);
        p.terms
            .insert(Monomial::var(nvars, v, 1), BigRational::one());
        p
    }

    pub fn from_terms(
        nvars: usize,
        terms: impl IntoIterator<Item = (Monomial, BigRational)>,
    ) -> Self {
        let mut p = MPoly::zero(nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .map(|(m, c)| m.is_one() && c.is_one())
                .unwrap_or(false)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty()
            || (self.terms.len() == 1 && self.terms.keys().next().unwrap().is_one())
    }

    pub fn constant_value(&self) -> Option<BigRational> {
        if self.terms.is_empty() {
            return Some(BigRational::zero());
        }
        if self.is_constant() {
            return self.terms.values().next().cloned();
        }
        None
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Leading term in graded-lex order.
    pub fn leading(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> BigRational {
        self.leading()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(BigRational::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.leading().map(|(m, _)| m.degree())
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.keys().map(|m| m.exp(v)).max().unwrap_or(0)
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(m.clone(), -c.clone());
        }
        r
    }

    pub fn neg(&self) -> MPoly {
        MPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, s: &BigRational) -> MPoly {
        if s.is_zero() {
            return MPoly::zero(self.nvars);
        }
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect(),
        }
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        if self.is_zero() || other.is_zero() {
            return MPoly::zero(self.nvars);
        }
        if let Some(c) = self.constant_value() {
            return other.scale(&c);
        }
        if let Some(c) = other.constant_value() {
            return self.scale(&c);
        }
        let mut r = MPoly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                r.add_term(m1.mul(m2), c1 * c2);
            }
        }
        r
    }

    fn mul_term(&self, m: &Monomial, c: &BigRational) -> MPoly {
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut r = MPoly::one(self.nvars);
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &MPoly) -> Option<MPoly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if let Some(c) = d.constant_value() {
            return Some(self.scale(&c.recip()));
        }
        let (dm, dc) = d.leading().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let mut r = self.clone();
        let mut q = MPoly::zero(self.nvars);
        while let Some((rm, rc)) = r.leading().map(|(m, c)| (m.clone(), c.clone())) {
            let qm = dm.div_of(&rm)?;
            let qc = rc / &dc;
            r = r.sub(&d.mul_term(&qm, &qc));
            q.add_term(qm, qc);
        }
        Some(q)
    }

    /// Scale so that the leading coefficient is 1.
    pub fn monic(&self) -> MPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading_coeff().recip())
    }

    /// Coefficients with respect to variable `v`, keyed by the power of `v`.
    fn coeffs_in(&self, v: usize) -> BTreeMap<u32, MPoly> {
        let mut out: BTreeMap<u32, MPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exp(v);
            let mut mm = m.clone();
            mm.set_exp(v, 0);
            out.entry(e)
                .or_insert_with(|| MPoly::zero(self.nvars))
                .add_term(mm, c.clone());
        }
        out
    }

    fn shift_var(&self, v: usize, e: u32) -> MPoly {
        if e == 0 {
            return self.clone();
        }
        MPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut mm = m.clone();
                    mm.set_exp(v, m.exp(v) + e);
                    (mm, c.clone())
                })
                .collect(),
        }
    }

    /// Content with respect to `v`: gcd of the coefficients in the other variables.
    fn content_in(&self, v: usize) -> MPoly {
        let mut g: Option<MPoly> = None;
        for (_, c) in self.coeffs_in(v) {
            g = Some(match g {
                None => c.monic(),
                Some(g) => gcd(&g, &c),
            });
            if g.as_ref().map(|g| g.is_one()).unwrap_or(false) {
                break;
            }
        }
        g.unwrap_or_else(|| MPoly::zero(self.nvars))
    }

    fn primitive_part_in(&self, v: usize) -> MPoly {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.content_in(v);
        self.div_exact(&c).expect("content divides").monic()
    }

    /// Pseudo-remainder of `self` by `b` as polynomials in `v`.
    fn prem_in(&self, b: &MPoly, v: usize) -> MPoly {
        let db = b.degree_in(v);
        let bc = b.coeffs_in(v);
        let lb = bc.get(&db).cloned().unwrap();
        let mut r = self.clone();
        loop {
            if r.is_zero() {
                return r;
            }
            let dr = r.degree_in(v);
            if dr < db {
                return r;
            }
            let lr = r.coeffs_in(v).remove(&dr).unwrap();
            r = r.mul(&lb).sub(&b.mul(&lr).shift_var(v, dr - db));
        }
    }

    /// Evaluate at a rational point.
    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t *= num_traits::pow(point[i].clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitute a rational value for one variable.
    pub fn substitute(&self, v: usize, value: &BigRational) -> MPoly {
        let mut r = MPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exp(v);
            let mut mm = m.clone();
            mm.set_exp(v, 0);
            r.add_term(mm, c * num_traits::pow(value.clone(), e as usize));
        }
        r
    }

    /// Re-index variables: variable `i` of `self` becomes variable `map[i]` in a
    /// space of `nvars` variables.
    pub fn remap(&self, nvars: usize, map: &[usize]) -> MPoly {
        let mut r = MPoly::zero(nvars);
        for (m, c) in &self.terms {
            let mut e = vec![0u32; nvars];
            for (i, &x) in m.exponents().iter().enumerate() {
                if x > 0 {
                    e[map[i]] += x;
                }
            }
            r.add_term(Monomial::from_exponents(e), c.clone());
        }
        r
    }

    /// Least common multiple of all coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        let mut l = BigInt::one();
        for c in self.terms.values() {
            l = num_integer::Integer::lcm(&l, c.denom());
        }
        l
    }

    /// Gcd of all numerators of the (integer) coefficients.
    pub fn numerator_gcd(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = num_integer::Integer::gcd(&g, c.numer());
        }
        g
    }

    pub fn leading_is_negative(&self) -> bool {
        self.leading()
            .map(|(_, c)| c.is_negative())
            .unwrap_or(false)
    }
}

fn first_var(a: &MPoly, b: &MPoly) -> Option<usize> {
    (0..a.nvars).find(|&v| a.degree_in(v) > 0 || b.degree_in(v) > 0)
}

/// Monic greatest common divisor.
pub fn gcd(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return MPoly::one(a.nvars);
    }
    if a == b {
        return a.monic();
    }
    // monomial shortcut
    if a.num_terms() == 1 && b.num_terms() == 1 {
        let m = a.leading().unwrap().0.gcd(b.leading().unwrap().0);
        return MPoly::from_terms(a.nvars, [(m, BigRational::one())]);
    }
    let v = match first_var(a, b) {
        Some(v) => v,
        None => return MPoly::one(a.nvars),
    };
    let (da, db) = (a.degree_in(v), b.degree_in(v));
    if da == 0 {
        return gcd(a, &b.content_in(v));
    }
    if db == 0 {
        return gcd(&a.content_in(v), b);
    }
    let ca = a.content_in(v);
    let cb = b.content_in(v);
    let mut p = a.div_exact(&ca).unwrap().monic();
    let mut q = b.div_exact(&cb).unwrap().monic();
    if p.degree_in(v) < q.degree_in(v) {
        std::mem::swap(&mut p, &mut q);
    }
    let g = loop {
        let r = p.prem_in(&q, v);
        if r.is_zero() {
            break q;
        }
        if r.degree_in(v) == 0 {
            break MPoly::one(a.nvars);
        }
        p = q;
        q = r.primitive_part_in(v);
    };
    let c = gcd(&ca, &cb);
    g.mul(&c).monic()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn x(nv: usize, i: usize) -> MPoly {
        MPoly::var(nv, i)
    }

    #[test]
    fn univariate_gcd() {
        let l = x(1, 0);
        let one = MPoly::one(1);
        let a = l.mul(&l).sub(&one); // l^2 - 1
        let b = l.sub(&one).mul(&l.add(&one.scale(&q(3))));
        let g = gcd(&a, &b);
        assert_eq!(g, l.sub(&one));
    }

    #[test]
    fn bivariate_gcd() {
        let a0 = x(2, 0);
        let b0 = x(2, 1);
        let f = a0.add(&b0).add(&MPoly::one(2)); // a + b + 1
        let g1 = a0.mul(&b0).sub(&MPoly::constant(2, q(2)));
        let h = a0.sub(&b0.scale(&q(3)));
        let p = f.mul(&g1).mul(&a0);
        let r = f.mul(&h).mul(&a0);
        let g = gcd(&p, &r);
        assert_eq!(g, f.mul(&a0).monic());
    }

    #[test]
    fn coprime_gcd_is_one() {
        let a0 = x(3, 0);
        let b0 = x(3, 1);
        let c0 = x(3, 2);
        let p = a0.mul(&b0).add(&c0);
        let r = a0.add(&c0.mul(&c0));
        assert!(gcd(&p, &r).is_one());
    }

    #[test]
    fn exact_division() {
        let a0 = x(2, 0);
        let b0 = x(2, 1);
        let p = a0.add(&b0).pow(3);
        let d = a0.add(&b0);
        assert_eq!(p.div_exact(&d).unwrap(), d.pow(2));
        assert!(p.div_exact(&a0).is_none());
    }
}
