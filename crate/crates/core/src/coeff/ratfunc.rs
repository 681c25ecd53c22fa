//! Rational functions in a declared tuple of parameter symbols.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::mpoly::{gcd, MPoly};
use crate::error::{Error, Result};
use crate::monomial::Monomial;

/// Ordered tuple of parameter names. Two spaces are compatible iff their name
/// lists are identical.
#[derive(Clone)]
pub struct ParamSpace(Arc<Vec<String>>);

impl ParamSpace {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Self {
        ParamSpace(Arc::new(
            names.iter().map(|s| s.as_ref().to_string()).collect(),
        ))
    }

    pub fn empty() -> Self {
        ParamSpace::new::<&str>(&[])
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }

    /// This space with extra names appended (existing names are skipped).
    pub fn extended<S: AsRef<str>>(&self, extra: &[S]) -> ParamSpace {
        let mut v: Vec<String> = self.0.as_ref().clone();
        for e in extra {
            if !v.iter().any(|n| n == e.as_ref()) {
                v.push(e.as_ref().to_string());
            }
        }
        ParamSpace(Arc::new(v))
    }

    /// Parameter symbol `name` as a rational function.
    pub fn param(&self, name: &str) -> Result<RatFunc> {
        let i = self
            .index_of(name)
            .ok_or_else(|| Error::MissingParameter(name.to_string()))?;
        Ok(RatFunc::var(self, i))
    }

    /// Like [`ParamSpace::param`] but panics on unknown names.
    pub fn p(&self, name: &str) -> RatFunc {
        self.param(name).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn int(&self, n: i64) -> RatFunc {
        RatFunc::from_int(self, n)
    }

    pub fn rat(&self, n: i64, d: i64) -> RatFunc {
        RatFunc::from_rational(self, BigRational::new(BigInt::from(n), BigInt::from(d)))
    }
}

impl PartialEq for ParamSpace {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}
impl Eq for ParamSpace {}

impl fmt::Debug for ParamSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// `num / den` in lowest terms; `den` has leading coefficient 1 in grlex order.
#[derive(Clone)]
pub struct RatFunc {
    space: ParamSpace,
    num: MPoly,
    den: MPoly,
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        self.space == other.space && self.num == other.num && self.den == other.den
    }
}
impl Eq for RatFunc {}

impl Hash for RatFunc {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl RatFunc {
    pub fn zero(space: &ParamSpace) -> Self {
        let n = space.len();
        RatFunc {
            space: space.clone(),
            num: MPoly::zero(n),
            den: MPoly::one(n),
        }
    }

    pub fn one(space: &ParamSpace) -> Self {
        RatFunc::from_int(space, 1)
    }

    pub fn from_int(space: &ParamSpace, c: i64) -> Self {
        RatFunc::from_rational(space, BigRational::from_integer(BigInt::from(c)))
    }

    pub fn from_rational(space: &ParamSpace, c: BigRational) -> Self {
        let n = space.len();
        RatFunc {
            space: space.clone(),
            num: MPoly::constant(n, c),
            den: MPoly::one(n),
        }
    }

    pub fn var(space: &ParamSpace, i: usize) -> Self {
        let n = space.len();
        RatFunc {
            space: space.clone(),
            num: MPoly::var(n, i),
            den: MPoly::one(n),
        }
    }

    /// Reduce `num/den`. Errors on a zero denominator.
    pub fn normalize(space: &ParamSpace, num: MPoly, den: MPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Domain("zero denominator".into()));
        }
        let n = space.len();
        if num.nvars() != n || den.nvars() != n {
            return Err(Error::ContextMismatch(
                "polynomial arity differs from parameter space".into(),
            ));
        }
        if num.is_zero() {
            return Ok(RatFunc::zero(space));
        }
        if let Some(c) = den.constant_value() {
            let c = c.recip();
            return Ok(RatFunc {
                space: space.clone(),
                num: num.scale(&c),
                den: MPoly::one(n),
            });
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides"),
                den.div_exact(&g).expect("gcd divides"),
            )
        };
        let lc = den.leading_coeff().recip();
        Ok(RatFunc {
            space: space.clone(),
            num: num.scale(&lc),
            den: den.scale(&lc),
        })
    }

    fn build(space: &ParamSpace, num: MPoly, den: MPoly) -> Self {
        RatFunc::normalize(space, num, den).expect("nonzero denominator")
    }

    pub fn space(&self) -> &ParamSpace {
        &self.space
    }

    pub fn numer(&self) -> &MPoly {
        &self.num
    }

    pub fn denom(&self) -> &MPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The value as a rational number, when it does not depend on any parameter.
    pub fn as_constant(&self) -> Option<BigRational> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    fn check(&self, other: &RatFunc) -> Result<()> {
        if self.space != other.space {
            return Err(Error::ContextMismatch(format!(
                "parameter spaces {:?} and {:?}",
                self.space, other.space
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &RatFunc) -> Result<RatFunc> {
        self.check(other)?;
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.den.is_one() && other.den.is_one() {
            return Ok(RatFunc {
                space: self.space.clone(),
                num: self.num.add(&other.num),
                den: self.den.clone(),
            });
        }
        if self.den == other.den {
            return Ok(RatFunc::build(
                &self.space,
                self.num.add(&other.num),
                self.den.clone(),
            ));
        }
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        Ok(RatFunc::build(&self.space, num, self.den.mul(&other.den)))
    }

    pub fn checked_mul(&self, other: &RatFunc) -> Result<RatFunc> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(RatFunc::zero(&self.space));
        }
        if self.den.is_one() && other.den.is_one() {
            return Ok(RatFunc {
                space: self.space.clone(),
                num: self.num.mul(&other.num),
                den: self.den.clone(),
            });
        }
        Ok(RatFunc::build(
            &self.space,
            self.num.mul(&other.num),
            self.den.mul(&other.den),
        ))
    }

    pub fn checked_sub(&self, other: &RatFunc) -> Result<RatFunc> {
        self.checked_add(&other.neg_ref())
    }

    pub fn checked_div(&self, other: &RatFunc) -> Result<RatFunc> {
        self.checked_mul(&other.inv()?)
    }

    fn neg_ref(&self) -> RatFunc {
        RatFunc {
            space: self.space.clone(),
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn inv(&self) -> Result<RatFunc> {
        if self.is_zero() {
            return Err(Error::Domain("inverse of zero".into()));
        }
        Ok(RatFunc::build(
            &self.space,
            self.den.clone(),
            self.num.clone(),
        ))
    }

    pub fn scale(&self, c: &BigRational) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero(&self.space);
        }
        RatFunc {
            space: self.space.clone(),
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn scale_int(&self, c: i64) -> RatFunc {
        self.scale(&BigRational::from_integer(BigInt::from(c)))
    }

    pub fn pow(&self, e: u32) -> RatFunc {
        RatFunc {
            space: self.space.clone(),
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    /// Evaluate at a point with one rational value per parameter.
    pub fn eval(&self, point: &[BigRational]) -> Result<BigRational> {
        if point.len() != self.space.len() {
            return Err(Error::Dimension(format!(
                "expected {} parameter values, got {}",
                self.space.len(),
                point.len()
            )));
        }
        let d = self.den.eval(point);
        if d.is_zero() {
            return Err(Error::Domain(
                "denominator vanishes at evaluation point".into(),
            ));
        }
        Ok(self.num.eval(point) / d)
    }

    /// Substitute a rational value for parameter `name`; the space is unchanged.
    pub fn substitute(&self, name: &str, value: &BigRational) -> Result<RatFunc> {
        let v = self
            .space
            .index_of(name)
            .ok_or_else(|| Error::MissingParameter(name.to_string()))?;
        let den = self.den.substitute(v, value);
        if den.is_zero() {
            return Err(Error::Domain(format!(
                "denominator vanishes at {name} = {value}"
            )));
        }
        RatFunc::normalize(&self.space, self.num.substitute(v, value), den)
    }

    /// Embed into a larger space that contains every name of this one.
    pub fn lift(&self, target: &ParamSpace) -> Result<RatFunc> {
        if &self.space == target {
            return Ok(self.clone());
        }
        let map = self
            .space
            .names()
            .iter()
            .map(|n| {
                target
                    .index_of(n)
                    .ok_or_else(|| Error::MissingParameter(n.clone()))
            })
            .collect::<Result<Vec<_>>>()?;
        let n = target.len();
        // Re-normalize since leading terms may change under a new variable order.
        RatFunc::normalize(target, self.num.remap(n, &map), self.den.remap(n, &map))
    }

    /// Move into a space that lacks some names; fails if a dropped name occurs.
    pub fn restrict(&self, target: &ParamSpace) -> Result<RatFunc> {
        if &self.space == target {
            return Ok(self.clone());
        }
        let mut map = Vec::with_capacity(self.space.len());
        for name in self.space.names() {
            match target.index_of(name) {
                Some(i) => map.push(i),
                None if self.depends_on(name) => return Err(Error::MissingParameter(name.clone())),
                None => map.push(usize::MAX),
            }
        }
        let n = target.len();
        RatFunc::normalize(target, self.num.remap(n, &map), self.den.remap(n, &map))
    }

    /// Expand as a polynomial in parameter `name`: coefficient `i` multiplies
    /// `name^i`. Returns `None` if the denominator depends on `name`.
    pub fn coeffs_in(&self, name: &str) -> Option<Vec<RatFunc>> {
        let v = self.space.index_of(name)?;
        if self.den.degree_in(v) > 0 {
            return None;
        }
        let n = self.space.len();
        let deg = self.num.degree_in(v) as usize;
        let mut parts = vec![MPoly::zero(n); deg + 1];
        for (m, c) in self.num.terms() {
            let e = m.exp(v) as usize;
            let mut mm = m.clone();
            mm.set_exp(v, 0);
            parts[e] = parts[e].add(&MPoly::from_terms(n, [(mm, c.clone())]));
        }
        Some(
            parts
                .into_iter()
                .map(|p| RatFunc::build(&self.space, p, self.den.clone()))
                .collect(),
        )
    }

    /// Whether the value depends on parameter `name`.
    pub fn depends_on(&self, name: &str) -> bool {
        match self.space.index_of(name) {
            Some(v) => self.num.degree_in(v) > 0 || self.den.degree_in(v) > 0,
            None => false,
        }
    }

    /// Integer-coefficient form `(p, q)` with `self = p/q`, both primitive up to
    /// one shared rational factor moved into `p`; `q` has positive leading coefficient.
    fn integer_form(&self) -> (MPoly, MPoly) {
        let (nc, np) = integer_primitive(&self.num);
        let (dc, dp) = integer_primitive(&self.den);
        let c = nc / dc;
        let p = np.scale(&BigRational::from_integer(c.numer().clone()));
        let q = dp.scale(&BigRational::from_integer(c.denom().clone()));
        (p, q)
    }

    pub fn to_latex(&self) -> String {
        let (p, q) = self.integer_form();
        let names = latex_names(self.space.names());
        let ps = poly_string(&p, &names, "", "^");
        if q.is_one() {
            return ps;
        }
        let qs = poly_string(&q, &names, "", "^");
        format!("\\frac{{{ps}}}{{{qs}}}")
    }
}

fn latex_names(names: &[String]) -> Vec<String> {
    names
        .iter()
        .map(|n| match n.as_str() {
            "l" => "\\lambda".to_string(),
            "lp" => "\\lambda'".to_string(),
            "lpp" => "\\lambda''".to_string(),
            "alpha" => "\\alpha".to_string(),
            "beta" => "\\beta".to_string(),
            "mu" => "\\mu".to_string(),
            other => other.to_string(),
        })
        .collect()
}

/// `p = c * prim` with `prim` integral, primitive and positive-leading.
fn integer_primitive(p: &MPoly) -> (BigRational, MPoly) {
    if p.is_zero() {
        return (BigRational::zero(), p.clone());
    }
    let l = p.denominator_lcm();
    let scaled = p.scale(&BigRational::from_integer(l.clone()));
    let mut g = scaled.numerator_gcd();
    if scaled.leading_is_negative() {
        g = -g;
    }
    let prim = scaled.scale(&BigRational::new(BigInt::one(), g.clone()));
    (BigRational::new(g, l), prim)
}

/// Expanded polynomial text, terms in descending grlex order.
pub(crate) fn poly_string(p: &MPoly, names: &[String], mul: &str, pow: &str) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.terms().rev().enumerate() {
        let neg = c.is_negative();
        let a = c.abs();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = mono_string(m, names, mul, pow);
        if mono.is_empty() {
            out.push_str(&a.to_string());
        } else if a.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&a.to_string());
            out.push_str(if mul.is_empty() { " " } else { mul });
            out.push_str(&mono);
        }
    }
    out
}

fn mono_string(m: &Monomial, names: &[String], mul: &str, pow: &str) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exponents().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(names[i].clone()),
            _ => parts.push(format!("{}{}{}", names[i], pow, e)),
        }
    }
    parts.join(if mul.is_empty() { " " } else { mul })
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (p, q) = self.integer_form();
        let names = self.space.names();
        if let (Some(a), Some(b)) = (p.constant_value(), q.constant_value()) {
            return write!(f, "{}", a / b);
        }
        let ps = poly_string(&p, names, "*", "^");
        if q.is_one() {
            return write!(f, "{ps}");
        }
        let qs = poly_string(&q, names, "*", "^");
        let ps = if p.num_terms() > 1 {
            format!("({ps})")
        } else {
            ps
        };
        let qs = if q.num_terms() > 1 || qs.contains('*') {
            format!("({qs})")
        } else {
            qs
        };
        write!(f, "{ps}/{qs}")
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr<&RatFunc> for &RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: &RatFunc) -> RatFunc {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: &RatFunc) -> RatFunc {
                (&self).$m(rhs)
            }
        }
        impl $tr<RatFunc> for &RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                self.$m(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);
binop!(Div, div, checked_div);

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        self.neg_ref()
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        self.neg_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalize_examples() {
        let s = ParamSpace::new(&["l"]);
        let l = s.p("l");
        let two = s.int(2);
        assert_eq!((&(&two * &l) + &two) / two.clone(), &l + &s.int(1));
        let num = &l * &l - s.int(1);
        assert_eq!(num / (&l - &s.int(1)), &l + &s.int(1));
        let z = s.int(0) / (l.pow(3) + s.int(7));
        assert!(z.is_zero());
        assert_eq!(z, RatFunc::zero(&s));
    }

    #[test]
    fn zero_denominator_is_domain_error() {
        let s = ParamSpace::new(&["l"]);
        let r = RatFunc::normalize(&s, MPoly::one(1), MPoly::zero(1));
        assert!(matches!(r, Err(Error::Domain(_))));
    }

    #[test]
    fn display_form() {
        let s = ParamSpace::new(&["l"]);
        let l = s.p("l");
        let r = (l.pow(2).scale_int(2) - s.int(2)) / (&l + &s.int(3));
        assert_eq!(r.to_string(), "(2*l^2 - 2)/(l + 3)");
        assert_eq!(s.rat(1, 2).to_string(), "1/2");
        assert_eq!((&l / &s.int(2)).to_string(), "l/2");
    }

    #[test]
    fn context_mismatch() {
        let a = ParamSpace::new(&["l"]).p("l");
        let b = ParamSpace::new(&["m"]).p("m");
        assert!(matches!(a.checked_add(&b), Err(Error::ContextMismatch(_))));
    }

    #[test]
    fn eval_catches_vanishing_denominator() {
        let s = ParamSpace::new(&["l"]);
        let r = s.int(1) / (s.p("l") - s.int(2));
        let two = BigRational::from_integer(BigInt::from(2));
        assert!(matches!(r.eval(&[two]), Err(Error::Domain(_))));
    }

    #[test]
    fn coefficients_in_a_parameter() {
        let s = ParamSpace::new(&["l", "k"]);
        let (l, k) = (s.p("l"), s.p("k"));
        let r = &(&k * &k) * &l + &k - s.int(3);
        let c = r.coeffs_in("k").unwrap();
        assert_eq!(c, vec![s.int(-3), s.int(1), l]);
    }
}
