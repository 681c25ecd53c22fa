//! Exponent vectors shared by parameter polynomials and operator polynomials.

use std::cmp::Ordering;
use std::fmt;

/// Exponent vector `x_0^e_0 ... x_{n-1}^e_{n-1}`.
///
/// Ordered graded-lexicographically: total degree first, then the exponent of
/// the first variable, then the second, and so on.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    /// The monomial `x_var^power`.
    pub fn var(nvars: usize, var: usize, power: u32) -> Self {
        let mut e = vec![0; nvars];
        e[var] = power;
        Monomial(e)
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exp(&self, var: usize) -> u32 {
        self.0[var]
    }

    pub fn set_exp(&mut self, var: usize, e: u32) {
        self.0[var] = e;
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.0.len(), other.0.len());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn div_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial(
            other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect(),
        ))
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.min(b))
                .collect(),
        )
    }

    /// Concatenate exponent vectors (used to adjoin variable blocks).
    pub fn concat(&self, other: &Monomial) -> Monomial {
        let mut e = self.0.clone();
        e.extend_from_slice(&other.0);
        Monomial(e)
    }

    /// Split into the first `k` exponents and the rest.
    pub fn split_at(&self, k: usize) -> (Monomial, Monomial) {
        (
            Monomial(self.0[..k].to_vec()),
            Monomial(self.0[k..].to_vec()),
        )
    }

    /// Every monomial in `nvars` variables of total degree exactly `deg`,
    /// in descending lexicographic order.
    pub fn all_of_degree(nvars: usize, deg: u32) -> Vec<Monomial> {
        fn rec(nvars: usize, deg: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if prefix.len() + 1 == nvars {
                prefix.push(deg);
                out.push(Monomial(prefix.clone()));
                prefix.pop();
                return;
            }
            for e in (0..=deg).rev() {
                prefix.push(e);
                rec(nvars, deg - e, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if nvars == 0 {
            if deg == 0 {
                out.push(Monomial(Vec::new()));
            }
            return out;
        }
        rec(nvars, deg, &mut Vec::with_capacity(nvars), &mut out);
        out
    }

    /// Every monomial of total degree at most `deg`.
    pub fn all_up_to_degree(nvars: usize, deg: u32) -> Vec<Monomial> {
        (0..=deg)
            .flat_map(|d| Monomial::all_of_degree(nvars, d))
            .collect()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grlex_order() {
        let a = Monomial::from_exponents(vec![2, 0]);
        let b = Monomial::from_exponents(vec![0, 3]);
        let c = Monomial::from_exponents(vec![1, 1]);
        assert!(b > a);
        assert!(a > c);
    }

    #[test]
    fn enumerate_degree() {
        assert_eq!(Monomial::all_of_degree(3, 2).len(), 6);
        assert_eq!(Monomial::all_up_to_degree(2, 3).len(), 10);
        assert_eq!(Monomial::all_of_degree(0, 0).len(), 1);
    }
}
