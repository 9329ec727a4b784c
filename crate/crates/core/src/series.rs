//! Bivariate formal power series in the generating variables u, v,
//! truncated at a joint total order.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::Scalar;
use crate::var::Var;

/// Σ c_{ij} u^i v^j with every stored (i, j) satisfying i + j ≤ order.
/// Coefficients are polynomials in the remaining variables and never
/// mention u or v themselves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesUV {
    order: usize,
    coeffs: BTreeMap<(usize, usize), Poly>,
}

impl SeriesUV {
    pub fn zero(order: usize) -> Self {
        SeriesUV {
            order,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Poly::one(), order)
    }

    pub fn constant(c: Poly, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.insert(0, 0, c);
        s
    }

    /// `c · u^i v^j`, dropped when beyond the truncation.
    pub fn monomial(c: Poly, i: usize, j: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.insert(i, j, c);
        s
    }

    /// Splits the u, v exponents of `p` off into series positions.
    pub fn from_poly(p: &Poly, order: usize) -> Self {
        let mut s = Self::zero(order);
        for (m, c) in p.terms() {
            let (i, j) = (m.exp(Var::U) as usize, m.exp(Var::V) as usize);
            if i + j > order {
                continue;
            }
            let mut rest = *m;
            rest.set_exp(Var::U, 0);
            rest.set_exp(Var::V, 0);
            s.coeffs
                .entry((i, j))
                .or_default()
                .add_term(rest, c);
        }
        s.prune();
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    fn insert(&mut self, i: usize, j: usize, c: Poly) {
        if i + j <= self.order && !c.is_zero() {
            self.coeffs.insert((i, j), c);
        }
    }

    fn prune(&mut self) {
        self.coeffs.retain(|_, c| !c.is_zero());
    }

    /// Coefficient of u^i v^j.
    pub fn coeff(&self, i: usize, j: usize) -> Result<Poly> {
        if i + j > self.order {
            return Err(Error::OutOfTruncation {
                i,
                j,
                order: self.order,
            });
        }
        Ok(self.coeffs.get(&(i, j)).cloned().unwrap_or_default())
    }

    /// Stored nonzero coefficients in (i, j) order.
    pub fn iter(&self) -> impl Iterator<Item = (&(usize, usize), &Poly)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &SeriesUV) -> SeriesUV {
        let order = self.order.min(other.order);
        let mut out = SeriesUV::zero(order);
        for (&(i, j), c) in self.coeffs.iter().chain(other.coeffs.iter()) {
            if i + j <= order {
                out.coeffs.entry((i, j)).or_default().add_assign_ref(c);
            }
        }
        out.prune();
        out
    }

    pub fn sub(&self, other: &SeriesUV) -> SeriesUV {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> SeriesUV {
        self.map(|p| p.scale(c))
    }

    /// Multiplies every coefficient by a polynomial free of u and v.
    pub fn mul_poly(&self, p: &Poly) -> SeriesUV {
        self.map(|c| c * p)
    }

    fn map(&self, f: impl Fn(&Poly) -> Poly) -> SeriesUV {
        let mut out = SeriesUV::zero(self.order);
        for (&k, c) in &self.coeffs {
            out.coeffs.insert(k, f(c));
        }
        out.prune();
        out
    }

    /// Truncated product; the result carries the smaller of the two orders.
    pub fn mul(&self, other: &SeriesUV) -> SeriesUV {
        let order = self.order.min(other.order);
        let mut out = SeriesUV::zero(order);
        for (&(i1, j1), a) in &self.coeffs {
            if i1 + j1 > order {
                continue;
            }
            for (&(i2, j2), b) in &other.coeffs {
                let (i, j) = (i1 + i2, j1 + j2);
                if i + j > order {
                    continue;
                }
                let prod = a * b;
                out.coeffs.entry((i, j)).or_default().add_assign_ref(&prod);
            }
        }
        out.prune();
        out
    }

    pub fn pow(&self, e: u32) -> SeriesUV {
        let mut acc = SeriesUV::one(self.order);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplies by u^i v^j.
    pub fn shift(&self, i: usize, j: usize) -> SeriesUV {
        let mut out = SeriesUV::zero(self.order);
        for (&(a, b), c) in &self.coeffs {
            out.insert(a + i, b + j, c.clone());
        }
        out
    }

    /// Applies `f(i, j)` as a scalar weight to each coefficient.
    pub fn weight(&self, f: impl Fn(usize, usize) -> Scalar) -> SeriesUV {
        let mut out = SeriesUV::zero(self.order);
        for (&(i, j), c) in &self.coeffs {
            out.insert(i, j, c.scale(&f(i, j)));
        }
        out
    }

    /// Truncated exponential Σ_k arg^k / k!. The argument must have a zero
    /// constant term.
    ///
    /// Coefficients come from the first-order relation u∂_u E = (u∂_u A) E
    /// (and v∂_v on the u⁰ column), so each one costs a pass over the
    /// argument's support instead of a full series product.
    pub fn exp(&self) -> Result<SeriesUV> {
        if self.coeffs.contains_key(&(0, 0)) {
            return Err(Error::NonzeroConstantTerm);
        }
        let n = self.order;
        let mut e: BTreeMap<(usize, usize), Poly> = BTreeMap::new();
        e.insert((0, 0), Poly::one());
        for total in 1..=n {
            for i in 0..=total {
                let j = total - i;
                let mut acc = Poly::zero();
                if i > 0 {
                    for (&(a, b), c) in &self.coeffs {
                        if a == 0 || a > i || b > j {
                            continue;
                        }
                        if let Some(prev) = e.get(&(i - a, j - b)) {
                            acc.add_scaled(&(c * prev), &Scalar::from_int(a as i64));
                        }
                    }
                    acc = acc.scale(&Scalar::new(1, i as i64));
                } else {
                    for (&(a, b), c) in &self.coeffs {
                        if a != 0 || b > j {
                            continue;
                        }
                        if let Some(prev) = e.get(&(0, j - b)) {
                            acc.add_scaled(&(c * prev), &Scalar::from_int(b as i64));
                        }
                    }
                    acc = acc.scale(&Scalar::new(1, j as i64));
                }
                if !acc.is_zero() {
                    e.insert((i, j), acc);
                }
            }
        }
        Ok(SeriesUV { order: n, coeffs: e })
    }

    /// Σ_k arg^k / k! by repeated truncated products; kept as an
    /// independent route for cross-checking [`SeriesUV::exp`].
    pub fn exp_naive(&self) -> Result<SeriesUV> {
        if self.coeffs.contains_key(&(0, 0)) {
            return Err(Error::NonzeroConstantTerm);
        }
        let mut acc = SeriesUV::one(self.order);
        let mut term = SeriesUV::one(self.order);
        for k in 1..=self.order {
            term = term.mul(self).scale(&Scalar::new(1, k as i64));
            if term.is_zero() {
                break;
            }
            acc = acc.add(&term);
        }
        Ok(acc)
    }

    /// (1 − base)^(−exponent) = Σ_k (exponent)_k base^k / k!, where `base`
    /// is a polynomial in u, v (and other variables) with no u⁰v⁰ part.
    pub fn binomial_neg(base: &Poly, exponent: &Scalar, order: usize) -> Result<SeriesUV> {
        let b = SeriesUV::from_poly(base, order);
        if b.coeffs.contains_key(&(0, 0)) {
            return Err(Error::NonzeroConstantTerm);
        }
        let mut acc = SeriesUV::one(order);
        let mut term = SeriesUV::one(order);
        for k in 1..=order {
            // (a)_k / k! = (a)_{k-1}/(k-1)! · (a + k - 1)/k
            let factor = &(exponent + &Scalar::from_int(k as i64 - 1)) * &Scalar::new(1, k as i64);
            term = term.mul(&b).scale(&factor);
            if term.is_zero() {
                break;
            }
            acc = acc.add(&term);
        }
        Ok(acc)
    }

    /// Positions (i, j) with i + j ≤ min order where the two series differ.
    pub fn mismatches(&self, other: &SeriesUV) -> Vec<((usize, usize), Poly)> {
        let d = self.sub(other);
        d.coeffs.into_iter().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;
    use Var::*;

    fn p(v: Var) -> Poly {
        Poly::var(v)
    }

    #[test]
    fn exp_of_zu() {
        let s = SeriesUV::from_poly(&(&p(Z) * &p(U)), 2).exp().unwrap();
        assert_eq!(s.coeff(0, 0).unwrap(), Poly::one());
        assert_eq!(s.coeff(1, 0).unwrap(), p(Z));
        assert_eq!(s.coeff(2, 0).unwrap(), p(Z).pow(2).scale(&Scalar::new(1, 2)));
        assert!(s.coeff(0, 1).unwrap().is_zero());
        assert!(matches!(s.coeff(2, 1), Err(Error::OutOfTruncation { .. })));
    }

    #[test]
    fn fast_exp_matches_power_sum() {
        let arg = &(&(&p(Z) * &p(U)) + &(&p(W) * &p(V)).scale(&Scalar::new(-2, 3)))
            + &(&(&p(Gamma) * &p(U).pow(2)) * &p(V));
        let s = SeriesUV::from_poly(&arg, 7);
        assert_eq!(s.exp().unwrap(), s.exp_naive().unwrap());
        let v_only = SeriesUV::from_poly(&(&p(V).pow(2) + &(&p(W) * &p(V))), 6);
        assert_eq!(v_only.exp().unwrap(), v_only.exp_naive().unwrap());
    }

    #[test]
    fn exp_of_zero_and_constant() {
        assert_eq!(SeriesUV::zero(3).exp().unwrap(), SeriesUV::one(3));
        assert_eq!(
            SeriesUV::one(3).exp().unwrap_err(),
            Error::NonzeroConstantTerm
        );
    }

    #[test]
    fn exp_full_generating_function_order_two() {
        let arg = &(&(&p(Z) * &p(U)) + &(&p(W) * &p(V))) + &(&(&p(Gamma) * &p(U)) * &p(V));
        let s = SeriesUV::from_poly(&arg, 2).exp().unwrap();
        assert_eq!(s.coeff(1, 1).unwrap(), &(&p(Z) * &p(W)) + &p(Gamma));
        assert_eq!(s.coeff(0, 2).unwrap(), p(W).pow(2).scale(&Scalar::new(1, 2)));
        assert_eq!(s.coeff(0, 1).unwrap(), p(W));
    }

    #[test]
    fn binomial_examples() {
        let uz = &p(U) * &p(Z);
        let geo = SeriesUV::binomial_neg(&uz, &Scalar::one(), 2).unwrap();
        assert_eq!(geo.coeff(1, 0).unwrap(), p(Z));
        assert_eq!(geo.coeff(2, 0).unwrap(), p(Z).pow(2));
        let trivial = SeriesUV::binomial_neg(&uz, &Scalar::zero(), 2).unwrap();
        assert_eq!(trivial, SeriesUV::one(2));
        let half = SeriesUV::binomial_neg(&uz, &Scalar::new(1, 2), 2).unwrap();
        assert_eq!(half.coeff(1, 0).unwrap(), p(Z).scale(&Scalar::new(1, 2)));
        assert_eq!(half.coeff(2, 0).unwrap(), p(Z).pow(2).scale(&Scalar::new(3, 8)));
    }

    #[test]
    fn products_stay_truncated() {
        let a = SeriesUV::from_poly(&(&p(U) + &p(V)), 3);
        let c = a.pow(5);
        assert!(c.is_zero());
        assert!(a.pow(3).iter().all(|(&(i, j), _)| i + j <= 3));
    }
}
