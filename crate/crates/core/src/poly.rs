//! Sparse multivariate polynomials with exact rational coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::Scalar;
use crate::var::{Var, NVARS};

/// Exponent vector indexed by [`Var::index`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial([u16; NVARS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; NVARS]);

    pub fn from_pairs(pairs: &[(Var, u32)]) -> Self {
        let mut m = Monomial::ONE;
        for &(v, e) in pairs {
            m.0[v.index()] += to_exp(e);
        }
        m
    }

    #[inline]
    pub fn exp(&self, v: Var) -> u32 {
        self.0[v.index()] as u32
    }

    #[inline]
    pub fn set_exp(&mut self, v: Var, e: u32) {
        self.0[v.index()] = to_exp(e);
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Nonzero exponents in canonical variable order.
    pub fn factors(&self) -> impl Iterator<Item = (Var, u32)> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| (Var::from_index(i), e as u32))
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for (a, b) in out.0.iter_mut().zip(other.0.iter()) {
            *a = a.checked_add(*b).expect("exponent overflow");
        }
        out
    }
}

#[inline]
fn to_exp(e: u32) -> u16 {
    u16::try_from(e).expect("exponent overflow")
}

impl Ord for Monomial {
    /// Graded lexicographic: total degree first, then exponents compared in
    /// canonical variable order.
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
        if self.is_one() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .factors()
            .map(|(v, e)| if e == 1 { v.to_string() } else { format!("{v}^{e}") })
            .collect();
        f.write_str(&parts.join("*"))
    }
}

/// Polynomial as a map from monomials to nonzero coefficients, kept in
/// ascending graded-lex order.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Scalar>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Poly::term(c, Monomial::ONE)
    }

    pub fn int(n: i64) -> Self {
        Poly::constant(Scalar::from_int(n))
    }

    pub fn var(v: Var) -> Self {
        Poly::term(Scalar::one(), Monomial::from_pairs(&[(v, 1)]))
    }

    pub fn term(c: Scalar, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    /// `c * Π v^e`.
    pub fn monomial(c: Scalar, pairs: &[(Var, u32)]) -> Self {
        Poly::term(c, Monomial::from_pairs(pairs))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending canonical order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Constant term.
    pub fn constant_term(&self) -> Scalar {
        self.coeff(&Monomial::ONE)
    }

    /// Returns the scalar if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => self.terms.get(&Monomial::ONE).cloned(),
            _ => None,
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn add_assign_ref(&mut self, other: &Poly) {
        for (m, c) in &other.terms {
            self.add_term(*m, c);
        }
    }

    /// self += c * other
    pub fn add_scaled(&mut self, other: &Poly, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (m, d) in &other.terms {
            self.add_term(*m, &(d * c));
        }
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, d)| (*m, d * c)).collect(),
        }
    }

    /// Multiplies by `c * mono`.
    pub fn mul_term(&self, c: &Scalar, mono: &Monomial) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, d)| (m.mul(mono), d * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn degree_in(&self, v: Var) -> Option<u32> {
        self.terms.keys().map(|m| m.exp(v)).max()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// Variables occurring with a nonzero exponent.
    pub fn vars(&self) -> Vec<Var> {
        Var::ALL
            .into_iter()
            .filter(|&v| self.terms.keys().any(|m| m.exp(v) > 0))
            .collect()
    }

    /// True when every coefficient has denominator one.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(Scalar::is_integer)
    }

    /// Coefficient of `v^e`, as a polynomial in the remaining variables.
    pub fn coeff_of(&self, v: Var, e: u32) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            if m.exp(v) == e {
                let mut rest = *m;
                rest.set_exp(v, 0);
                out.terms.insert(rest, c.clone());
            }
        }
        out
    }

    /// k-fold partial derivative with respect to `v`.
    pub fn diff(&self, v: Var, k: u32) -> Poly {
        if k == 0 {
            return self.clone();
        }
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let e = m.exp(v);
            if e < k {
                continue;
            }
            // falling factorial e (e-1) ... (e-k+1)
            let mut f = Scalar::one();
            for i in 0..k {
                f *= &Scalar::from_int((e - i) as i64);
            }
            let mut nm = *m;
            nm.set_exp(v, e - k);
            out.add_term(nm, &(c * &f));
        }
        out
    }

    /// Mixed partial ∂_z^{i} ∂_w^{j}, the shape used throughout the family.
    pub fn diff_zw(&self, i: u32, j: u32) -> Poly {
        self.diff(Var::Z, i).diff(Var::W, j)
    }

    /// Simultaneous substitution. Unbound variables pass through unchanged.
    pub fn subst(&self, bindings: &[(Var, Poly)]) -> Poly {
        if bindings.is_empty() {
            return self.clone();
        }
        let mut bound: [Option<&Poly>; NVARS] = [None; NVARS];
        for (v, p) in bindings {
            bound[v.index()] = Some(p);
        }
        // power caches per bound variable
        let mut cache: Vec<Vec<Poly>> = vec![Vec::new(); NVARS];
        for (i, b) in bound.iter().enumerate() {
            if let Some(p) = b {
                let max = self.degree_in(Var::from_index(i)).unwrap_or(0);
                let mut pw = vec![Poly::one()];
                for e in 1..=max as usize {
                    let next = &pw[e - 1] * *p;
                    pw.push(next);
                }
                cache[i] = pw;
            }
        }
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut free = *m;
            let mut factor = Poly::one();
            for (i, b) in bound.iter().enumerate() {
                if b.is_some() {
                    let e = m.0[i] as usize;
                    if e > 0 {
                        factor = &factor * &cache[i][e];
                        free.0[i] = 0;
                    }
                }
            }
            for (fm, fc) in &factor.terms {
                out.add_term(fm.mul(&free), &(fc * c));
            }
        }
        out
    }

    /// Substitutes scalar values for variables.
    pub fn eval(&self, values: &[(Var, Scalar)]) -> Poly {
        let bindings: Vec<(Var, Poly)> = values
            .iter()
            .map(|(v, s)| (*v, Poly::constant(s.clone())))
            .collect();
        self.subst(&bindings)
    }

    /// Reduces the exponent of `v` modulo `modulus` using `v^modulus = value`.
    pub fn reduce_power(&self, v: Var, modulus: u32, value: &Scalar) -> Poly {
        assert!(modulus > 0);
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let e = m.exp(v);
            let (q, r) = (e / modulus, e % modulus);
            let mut nm = *m;
            nm.set_exp(v, r);
            let f = value.pow(q as i32).expect("nonzero radical value");
            out.add_term(nm, &(c * &f));
        }
        out
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", crate::format::poly_to_text(self))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::format::poly_to_text(self))
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let (big, small) = if self.len() >= rhs.len() { (self, rhs) } else { (rhs, self) };
        let mut out = big.clone();
        out.add_assign_ref(small);
        out
    }
}

impl Add<Poly> for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, &-c);
        }
        out
    }
}

impl Sub<Poly> for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        out
    }
}

impl Mul<Poly> for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl From<Scalar> for Poly {
    fn from(c: Scalar) -> Self {
        Poly::constant(c)
    }
}

impl From<Var> for Poly {
    fn from(v: Var) -> Self {
        Poly::var(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Var::*;

    fn v(x: Var) -> Poly {
        Poly::var(x)
    }

    fn s(n: i64) -> Poly {
        Poly::int(n)
    }

    #[test]
    fn add_examples() {
        assert_eq!(&(&v(Z) + &s(1)) + &s(-1), v(Z));
        let p = &(&v(Z) * &v(W)) + &v(Gamma);
        assert_eq!(&Poly::zero() + &p, p);
        let q = &(&v(Z) * &v(W)) - &v(Gamma);
        assert_eq!(&p + &q, (&v(Z) * &v(W)).scale(&Scalar::from_int(2)));
    }

    #[test]
    fn mul_examples() {
        let lhs = &(&v(Z) + &v(W)) * &(&v(Z) - &v(W));
        assert_eq!(lhs, &v(Z).pow(2) - &v(W).pow(2));
        let p = &(&v(Z) * &v(W)) + &v(Gamma);
        assert_eq!(&p * &Poly::one(), p);
        let expected = &(&v(Z).pow(2) * &v(W).pow(2))
            + &(&(&v(Gamma) * &v(Z)) * &v(W)).scale(&Scalar::from_int(2));
        assert_eq!(&p * &p, &expected + &v(Gamma).pow(2));
    }

    #[test]
    fn diff_examples() {
        let z2w = &v(Z).pow(2) * &v(W);
        assert_eq!(z2w.diff(Z, 1), (&v(Z) * &v(W)).scale(&Scalar::from_int(2)));
        assert!(z2w.diff(Z, 3).is_zero());
        // H_{2,1}^{(1,1)} = z^2 w + 2 gamma z
        let h = &z2w + &(&v(Gamma) * &v(Z)).scale(&Scalar::from_int(2));
        assert_eq!(h.diff(Gamma, 1), v(Z).scale(&Scalar::from_int(2)));
    }

    #[test]
    fn subst_examples() {
        let z2w = &v(Z).pow(2) * &v(W);
        assert_eq!(
            z2w.subst(&[(Z, v(Z).scale(&Scalar::from_int(2)))]),
            z2w.scale(&Scalar::from_int(4))
        );
        let p = &(&v(Z) * &v(W)) + &v(Gamma);
        let shifted = p.subst(&[
            (Z, &v(Z) + &v(Zp)),
            (W, &v(W) + &v(Wp)),
            (Gamma, &v(Gamma) + &v(Gammap)),
        ]);
        let expected = [
            &v(Z) * &v(W),
            &v(Z) * &v(Wp),
            &v(Zp) * &v(W),
            &v(Zp) * &v(Wp),
            v(Gamma),
            v(Gammap),
        ]
        .iter()
        .fold(Poly::zero(), |acc, t| &acc + t);
        assert_eq!(shifted, expected);
        let q = &v(Z).pow(2) + &v(Gamma);
        assert_eq!(q.eval(&[(Gamma, Scalar::from_int(-1))]), &v(Z).pow(2) - &s(1));
    }

    #[test]
    fn substitution_is_simultaneous() {
        let p = &v(Z) * &v(W).pow(2);
        let swapped = p.subst(&[(Z, v(W)), (W, v(Z))]);
        assert_eq!(swapped, &v(W) * &v(Z).pow(2));
    }

    #[test]
    fn grlex_order() {
        let a = Monomial::from_pairs(&[(Z, 2), (W, 1)]);
        let b = Monomial::from_pairs(&[(Gamma, 1), (Z, 1)]);
        let c = Monomial::from_pairs(&[(W, 3)]);
        assert!(a > b);
        assert!(a > c);
        assert!(Monomial::ONE < b);
    }

    #[test]
    fn coefficient_extraction_and_reduction() {
        let p = &(&v(T).pow(2) * &v(Z)) + &v(W);
        assert_eq!(p.coeff_of(T, 2), v(Z));
        assert_eq!(p.coeff_of(T, 0), v(W));
        let r = v(A).pow(5).reduce_power(A, 2, &Scalar::new(1, 2));
        assert_eq!(r, v(A).scale(&Scalar::new(1, 4)));
    }
}
