//! The two-variable (p,q) Gould–Hopper family H_{n,m}^{(p,q)}(z,w|γ) and
//! its one-variable ancestor H_n^{(p)}(z|γ).
//!
//! [`explicit`] evaluates the defining finite sum and is the ground truth for
//! the rest of the crate. The other constructors reach the same polynomial by
//! unrelated routes (operator exponential, creation operators, raising
//! recurrences, generating-function coefficients, terminating ₚ₊qF₀ sum).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{Monomial, Poly};
use crate::scalar::Scalar;
use crate::series::SeriesUV;
use crate::var::Var;

/// Index data (p, q, n, m) of one family member.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FamilyParams {
    pub p: u32,
    pub q: u32,
    pub n: u32,
    pub m: u32,
}

impl FamilyParams {
    pub fn new(p: u32, q: u32, n: u32, m: u32) -> Result<Self> {
        let fp = FamilyParams { p, q, n, m };
        fp.validate()?;
        Ok(fp)
    }

    /// p = q = 0 gives e^γ z^n w^m, which is not a polynomial.
    pub fn validate(&self) -> Result<()> {
        if self.p == 0 && self.q == 0 {
            return Err(Error::InvalidParams(
                "p = q = 0 yields e^gamma z^n w^m, not a polynomial".to_string(),
            ));
        }
        Ok(())
    }

    /// Upper limit of the γ-power sum, ⌊n/p⌋ ∧ ⌊m/q⌋ with ⌊j/0⌋ = +∞.
    pub fn k_bound(&self) -> u32 {
        k_bound(self.p, self.q, self.n as i64, self.m as i64).unwrap_or(0)
    }

    pub fn swapped(&self) -> FamilyParams {
        FamilyParams {
            p: self.q,
            q: self.p,
            n: self.m,
            m: self.n,
        }
    }
}

impl fmt::Display for FamilyParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(p={}, q={}, n={}, m={})", self.p, self.q, self.n, self.m)
    }
}

/// ⌊n/p⌋ ∧ ⌊m/q⌋, `None` for negative indices (the polynomial is then zero).
pub(crate) fn k_bound(p: u32, q: u32, n: i64, m: i64) -> Option<u32> {
    if n < 0 || m < 0 {
        return None;
    }
    let a = if p == 0 { u32::MAX } else { (n / p as i64) as u32 };
    let b = if q == 0 { u32::MAX } else { (m / q as i64) as u32 };
    Some(a.min(b))
}

/// A family member together with its indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GHPoly {
    pub params: FamilyParams,
    pub poly: Poly,
}

impl GHPoly {
    /// Structural invariants: integral coefficients, degree n in z, degree m
    /// in w, γ-degree equal to the k-bound, and z^n w^m at γ = 0.
    pub fn invariants_hold(&self) -> bool {
        let FamilyParams { n, m, .. } = self.params;
        let mono = Poly::monomial(Scalar::one(), &[(Var::Z, n), (Var::W, m)]);
        self.poly.is_integral()
            && self.poly.degree_in(Var::Z) == Some(n)
            && self.poly.degree_in(Var::W) == Some(m)
            && self.poly.degree_in(Var::Gamma) == Some(self.params.k_bound())
            && self.poly.eval(&[(Var::Gamma, Scalar::zero())]) == mono
    }
}

/// Construction route.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    Explicit,
    Operational,
    Creation,
    Recurrence,
    Genfun,
    Hypergeom,
}

impl Strategy {
    pub const ALL: [Strategy; 6] = [
        Strategy::Explicit,
        Strategy::Operational,
        Strategy::Creation,
        Strategy::Recurrence,
        Strategy::Genfun,
        Strategy::Hypergeom,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::Explicit => "explicit",
            Strategy::Operational => "operational",
            Strategy::Creation => "creation",
            Strategy::Recurrence => "recurrence",
            Strategy::Genfun => "genfun",
            Strategy::Hypergeom => "hypergeom",
        }
    }
}

impl FromStr for Strategy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Strategy::ALL
            .into_iter()
            .find(|st| st.name() == s)
            .ok_or_else(|| Error::InvalidParams(format!("unknown strategy `{s}`")))
    }
}

/// Builds the family member with the chosen strategy. `Genfun` uses
/// truncation order n + m.
pub fn construct(params: FamilyParams, strategy: Strategy) -> Result<GHPoly> {
    match strategy {
        Strategy::Explicit => explicit(params),
        Strategy::Operational => operational(params),
        Strategy::Creation => via_creation(params),
        Strategy::Recurrence => via_recurrence(params),
        Strategy::Genfun => via_genfun(params, (params.n + params.m) as usize),
        Strategy::Hypergeom => hypergeom_form(params),
    }
}

/// n! m! Σ_{k=0}^{⌊n/p⌋∧⌊m/q⌋} γ^k/k! · z^{n−pk}/(n−pk)! · w^{m−qk}/(m−qk)!
pub fn explicit(params: FamilyParams) -> Result<GHPoly> {
    params.validate()?;
    Ok(GHPoly {
        params,
        poly: h(params.p, params.q, params.n as i64, params.m as i64),
    })
}

/// H_{n,m}^{(p,q)}(z,w|γ) by the defining sum; zero for negative n or m.
/// Requires p + q ≥ 1.
pub fn h(p: u32, q: u32, n: i64, m: i64) -> Poly {
    assert!(p + q >= 1, "p = q = 0 is not a polynomial family");
    let Some(kmax) = k_bound(p, q, n, m) else {
        return Poly::zero();
    };
    let nm = &Scalar::factorial(n as u64) * &Scalar::factorial(m as u64);
    let mut out = Poly::zero();
    for k in 0..=kmax as i64 {
        let zn = n - p as i64 * k;
        let wm = m - q as i64 * k;
        let c = &(&(&nm * &Scalar::inv_factorial(k)) * &Scalar::inv_factorial(zn))
            * &Scalar::inv_factorial(wm);
        let mono = Monomial::from_pairs(&[
            (Var::Z, zn as u32),
            (Var::W, wm as u32),
            (Var::Gamma, k as u32),
        ]);
        out.add_term(mono, &c);
    }
    out
}

/// H_n^{(p)}(z|γ) = n! Σ_k γ^k/k! · z^{n−pk}/(n−pk)!
pub fn gould_hopper_1d(n: u32, p: u32) -> Result<Poly> {
    if p == 0 {
        return Err(Error::InvalidParams("Gould-Hopper order p must be >= 1".to_string()));
    }
    Ok(gh1(n as i64, p))
}

/// Unchecked one-variable polynomial; zero for negative n.
pub(crate) fn gh1(n: i64, p: u32) -> Poly {
    if n < 0 {
        return Poly::zero();
    }
    let nf = Scalar::factorial(n as u64);
    let mut out = Poly::zero();
    for k in 0..=(n / p as i64) {
        let zn = n - p as i64 * k;
        let c = &(&nf * &Scalar::inv_factorial(k)) * &Scalar::inv_factorial(zn);
        out.add_term(
            Monomial::from_pairs(&[(Var::Z, zn as u32), (Var::Gamma, k as u32)]),
            &c,
        );
    }
    out
}

/// Σ_k γ^k/k! · ∂_z^{pk} ∂_w^{qk} (z^n w^m), stopping once the derivative
/// annihilates the monomial.
pub fn operational(params: FamilyParams) -> Result<GHPoly> {
    params.validate()?;
    let FamilyParams { p, q, n, m } = params;
    let seed = Poly::monomial(Scalar::one(), &[(Var::Z, n), (Var::W, m)]);
    Ok(GHPoly {
        params,
        poly: exp_gamma_d(&seed, p, q, &Poly::var(Var::Gamma)),
    })
}

/// e^{s ∂_z^p ∂_w^q} f for a polynomial f; `s` is treated as a constant.
pub fn exp_gamma_d(f: &Poly, p: u32, q: u32, s: &Poly) -> Poly {
    assert!(p + q >= 1);
    let mut out = f.clone();
    let mut term = f.clone();
    let mut k = 1i64;
    loop {
        term = (&term.diff_zw(p, q) * s).scale(&Scalar::new(1, k));
        if term.is_zero() {
            return out;
        }
        out.add_assign_ref(&term);
        k += 1;
    }
}

/// Raising operator z + pγ ∂_z^{p−1} ∂_w^q (p ≥ 1).
pub fn raise_z(f: &Poly, p: u32, q: u32) -> Poly {
    let gamma = Poly::var(Var::Gamma);
    let mut out = f * &Poly::var(Var::Z);
    if p >= 1 {
        let d = &f.diff_zw(p - 1, q) * &gamma;
        out.add_scaled(&d, &Scalar::from_int(p as i64));
    }
    out
}

/// Raising operator w + qγ ∂_z^p ∂_w^{q−1} (q ≥ 1).
pub fn raise_w(f: &Poly, p: u32, q: u32) -> Poly {
    let gamma = Poly::var(Var::Gamma);
    let mut out = f * &Poly::var(Var::W);
    if q >= 1 {
        let d = &f.diff_zw(p, q - 1) * &gamma;
        out.add_scaled(&d, &Scalar::from_int(q as i64));
    }
    out
}

/// Iterated creation operators applied to a seed.
///
/// * p, q ≥ 1: (z + pγ∂_z^{p−1}∂_w^q)^n (w + qγ∂_z^p∂_w^{q−1})^m (1)
/// * q = 0:    (z + pγ∂_z^{p−1})^n {w^m}
/// * p = 0:    (w + qγ∂_w^{q−1})^m {z^n}
pub fn via_creation(params: FamilyParams) -> Result<GHPoly> {
    params.validate()?;
    let FamilyParams { p, q, n, m } = params;
    let poly = if p >= 1 && q >= 1 {
        let mut f = Poly::one();
        for _ in 0..m {
            f = raise_w(&f, p, q);
        }
        for _ in 0..n {
            f = raise_z(&f, p, q);
        }
        f
    } else if q == 0 {
        let mut f = Poly::monomial(Scalar::one(), &[(Var::W, m)]);
        for _ in 0..n {
            f = raise_z(&f, p, 0);
        }
        f
    } else {
        let mut f = Poly::monomial(Scalar::one(), &[(Var::Z, n)]);
        for _ in 0..m {
            f = raise_w(&f, 0, q);
        }
        f
    };
    Ok(GHPoly { params, poly })
}

/// Table `t[i][j] = H_{i,j}` for i ≤ n, j ≤ m, filled by the two raising
/// recurrences
///
/// H_{i+1,j} = z H_{i,j} + γ p! q! C(i, p−1) C(j, q) H_{i+1−p, j−q}
/// H_{i,j+1} = w H_{i,j} + γ p! q! C(i, p) C(j, q−1) H_{i−p, j+1−q}
///
/// starting from H_{0,0} = 1.
pub fn recurrence_table(p: u32, q: u32, n: u32, m: u32) -> Result<Vec<Vec<Poly>>> {
    FamilyParams { p, q, n, m }.validate()?;
    let (p_i, q_i) = (p as i64, q as i64);
    let pq = &Scalar::factorial(p as u64) * &Scalar::factorial(q as u64);
    let gamma = Poly::var(Var::Gamma);
    let z = Poly::var(Var::Z);
    let w = Poly::var(Var::W);
    let mut t: Vec<Vec<Poly>> = vec![vec![Poly::zero(); m as usize + 1]; n as usize + 1];
    let get = |t: &Vec<Vec<Poly>>, i: i64, j: i64| -> Poly {
        if i < 0 || j < 0 {
            Poly::zero()
        } else {
            t[i as usize][j as usize].clone()
        }
    };
    t[0][0] = Poly::one();
    for j in 0..m as i64 {
        let c = &(&pq * &Scalar::binomial(0, p_i)) * &Scalar::binomial(j, q_i - 1);
        let mut next = &get(&t, 0, j) * &w;
        next.add_scaled(&(&gamma * &get(&t, -p_i, j + 1 - q_i)), &c);
        t[0][(j + 1) as usize] = next;
    }
    for i in 0..n as i64 {
        for j in 0..=m as i64 {
            let c = &(&pq * &Scalar::binomial(i, p_i - 1)) * &Scalar::binomial(j, q_i);
            let mut next = &get(&t, i, j) * &z;
            next.add_scaled(&(&gamma * &get(&t, i + 1 - p_i, j - q_i)), &c);
            t[(i + 1) as usize][j as usize] = next;
        }
    }
    Ok(t)
}

pub fn via_recurrence(params: FamilyParams) -> Result<GHPoly> {
    let t = recurrence_table(params.p, params.q, params.n, params.m)?;
    Ok(GHPoly {
        params,
        poly: t[params.n as usize][params.m as usize].clone(),
    })
}

/// e^{zu + wv + γ u^p v^q} truncated at total order `order`.
pub fn generating_series(p: u32, q: u32, order: usize) -> Result<SeriesUV> {
    FamilyParams { p, q, n: 0, m: 0 }.validate()?;
    let arg = generating_exponent(p, q);
    SeriesUV::from_poly(&arg, order).exp()
}

/// zu + wv + γ u^p v^q as a polynomial.
pub fn generating_exponent(p: u32, q: u32) -> Poly {
    let mut arg = &(&Poly::var(Var::Z) * &Poly::var(Var::U)) + &(&Poly::var(Var::W) * &Poly::var(Var::V));
    arg.add_term(
        Monomial::from_pairs(&[(Var::Gamma, 1), (Var::U, p), (Var::V, q)]),
        &Scalar::one(),
    );
    arg
}

/// n! m! × [u^n v^m] e^{zu + wv + γ u^p v^q}.
pub fn via_genfun(params: FamilyParams, order: usize) -> Result<GHPoly> {
    params.validate()?;
    let FamilyParams { n, m, .. } = params;
    if (n + m) as usize > order {
        return Err(Error::OutOfTruncation {
            i: n as usize,
            j: m as usize,
            order,
        });
    }
    let s = generating_series(params.p, params.q, order)?;
    Ok(GHPoly {
        params,
        poly: coefficient_to_h(&s, n, m)?,
    })
}

/// Recovers H_{n,m} = n! m! [u^n v^m] from a generating series.
pub fn coefficient_to_h(s: &SeriesUV, n: u32, m: u32) -> Result<Poly> {
    let c = s.coeff(n as usize, m as usize)?;
    Ok(c.scale(&(&Scalar::factorial(n as u64) * &Scalar::factorial(m as u64))))
}

/// z^n w^m · ₚ₊qF₀(−n/p, …, (p−1−n)/p, −m/q, …, (q−1−m)/q; ; (−p)^p(−q)^q γ / (z^p w^q)).
///
/// The k-th term is built directly as a monomial with exponents
/// (n − pk, m − qk, k); the Pochhammer product vanishes before any
/// exponent would turn negative.
pub fn hypergeom_form(params: FamilyParams) -> Result<GHPoly> {
    params.validate()?;
    let FamilyParams { p, q, n, m } = params;
    if p == 0 || q == 0 {
        return Err(Error::Unsupported(
            "the hypergeometric form needs p >= 1 and q >= 1".to_string(),
        ));
    }
    let upper: Vec<Scalar> = (1..=p)
        .map(|j| Scalar::new(j as i64 - 1 - n as i64, p as i64))
        .chain((1..=q).map(|j| Scalar::new(j as i64 - 1 - m as i64, q as i64)))
        .collect();
    let base = &Scalar::from_int(-(p as i64))
        .pow(p as i32)
        .expect("nonzero")
        * &Scalar::from_int(-(q as i64)).pow(q as i32).expect("nonzero");
    let mut out = Poly::zero();
    let mut coeff = Scalar::one();
    let mut k: u32 = 0;
    loop {
        if coeff.is_zero() {
            break;
        }
        let (zn, wm) = (n as i64 - (p * k) as i64, m as i64 - (q * k) as i64);
        if zn < 0 || wm < 0 {
            return Err(Error::Unsupported(format!(
                "non-terminating hypergeometric term at k = {k}"
            )));
        }
        out.add_term(
            Monomial::from_pairs(&[(Var::Z, zn as u32), (Var::W, wm as u32), (Var::Gamma, k)]),
            &coeff,
        );
        // ratio of consecutive terms: Π (a_i + k) · base / (k + 1)
        let mut ratio = &base * &Scalar::new(1, k as i64 + 1);
        for a in &upper {
            ratio *= &(a + &Scalar::from_int(k as i64));
        }
        coeff *= &ratio;
        k += 1;
    }
    Ok(GHPoly { params, poly: out })
}

/// Value at z = w = 0 (a polynomial in γ).
pub fn origin_value(params: FamilyParams) -> Result<Poly> {
    let g = explicit(params)?;
    Ok(g.poly.eval(&[(Var::Z, Scalar::zero()), (Var::W, Scalar::zero())]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_poly_expr;

    fn parse(s: &str) -> Poly {
        parse_poly_expr(s, &[Var::Z, Var::W, Var::Gamma, Var::T]).unwrap()
    }

    fn fp(p: u32, q: u32, n: u32, m: u32) -> FamilyParams {
        FamilyParams::new(p, q, n, m).unwrap()
    }

    #[test]
    fn explicit_examples() {
        assert_eq!(explicit(fp(1, 1, 2, 1)).unwrap().poly, parse("z^2*w + 2*gamma*z"));
        assert_eq!(explicit(fp(2, 2, 2, 2)).unwrap().poly, parse("z^2*w^2 + 4*gamma"));
        // Itô–Hermite H_{1,1}(z, z̄) = z z̄ − 1 at γ = −1, with w standing in for z̄
        let ito = explicit(fp(1, 1, 1, 1))
            .unwrap()
            .poly
            .eval(&[(Var::Gamma, Scalar::from_int(-1))]);
        assert_eq!(ito, parse("z*w - 1"));
        assert!(matches!(FamilyParams::new(0, 0, 1, 1), Err(Error::InvalidParams(_))));
    }

    #[test]
    fn gamma_zero_gives_monomial() {
        for (p, q) in [(1, 1), (2, 3), (0, 2), (3, 0)] {
            for n in 0..5 {
                for m in 0..5 {
                    let g = explicit(fp(p, q, n, m)).unwrap();
                    assert!(g.invariants_hold(), "{:?}", g.params);
                }
            }
        }
    }

    #[test]
    fn gould_hopper_examples() {
        assert_eq!(gould_hopper_1d(3, 2).unwrap(), parse("z^3 + 6*gamma*z"));
        assert_eq!(gould_hopper_1d(1, 2).unwrap(), parse("z"));
        let h2 = gould_hopper_1d(2, 2)
            .unwrap()
            .subst(&[(Var::Z, parse("2*t")), (Var::Gamma, Poly::int(-1))]);
        assert_eq!(h2, parse("4*t^2 - 2"));
        assert!(gould_hopper_1d(2, 0).is_err());
    }

    #[test]
    fn operational_examples() {
        assert_eq!(operational(fp(1, 1, 2, 1)).unwrap().poly, parse("z^2*w + 2*gamma*z"));
        assert_eq!(operational(fp(3, 1, 2, 1)).unwrap().poly, parse("z^2*w"));
        assert_eq!(operational(fp(2, 0, 2, 0)).unwrap().poly, parse("z^2 + 2*gamma"));
    }

    #[test]
    fn creation_examples() {
        assert_eq!(via_creation(fp(1, 1, 1, 1)).unwrap().poly, parse("z*w + gamma"));
        assert_eq!(via_creation(fp(1, 1, 0, 4)).unwrap().poly, parse("w^4"));
        assert_eq!(via_creation(fp(2, 0, 2, 3)).unwrap().poly, parse("(z^2 + 2*gamma)*w^3"));
    }

    #[test]
    fn recurrence_examples() {
        assert_eq!(via_recurrence(fp(1, 1, 1, 1)).unwrap().poly, parse("z*w + gamma"));
        assert_eq!(via_recurrence(fp(3, 2, 0, 0)).unwrap().poly, Poly::one());
        assert_eq!(via_recurrence(fp(1, 1, 2, 1)).unwrap().poly, parse("z^2*w + 2*gamma*z"));
    }

    #[test]
    fn genfun_examples() {
        assert_eq!(via_genfun(fp(1, 1, 1, 1), 2).unwrap().poly, parse("z*w + gamma"));
        assert_eq!(via_genfun(fp(3, 1, 1, 0), 1).unwrap().poly, parse("z"));
        assert_eq!(via_genfun(fp(2, 1, 2, 1), 3).unwrap().poly, parse("z^2*w + 2*gamma"));
        assert!(matches!(
            via_genfun(fp(1, 1, 2, 2), 3),
            Err(Error::OutOfTruncation { .. })
        ));
    }

    #[test]
    fn hypergeom_examples() {
        assert_eq!(hypergeom_form(fp(1, 1, 1, 1)).unwrap().poly, parse("z*w + gamma"));
        assert_eq!(hypergeom_form(fp(1, 1, 5, 0)).unwrap().poly, parse("z^5"));
        assert_eq!(hypergeom_form(fp(2, 2, 2, 2)).unwrap().poly, parse("z^2*w^2 + 4*gamma"));
        assert!(matches!(hypergeom_form(fp(2, 0, 2, 2)), Err(Error::Unsupported(_))));
    }

    #[test]
    fn origin_examples() {
        assert_eq!(origin_value(fp(2, 1, 4, 2)).unwrap(), parse("24*gamma^2"));
        assert!(origin_value(fp(1, 1, 2, 1)).unwrap().is_zero());
        for n in 0..6u32 {
            let v = origin_value(fp(2, 0, 2 * n, 0))
                .unwrap()
                .eval(&[(Var::Gamma, Scalar::from_int(-1))]);
            let sign = if n % 2 == 0 { 1 } else { -1 };
            let expected = &(&Scalar::factorial(2 * n as u64) * &Scalar::inv_factorial(n as i64))
                * &Scalar::from_int(sign);
            assert_eq!(v, Poly::constant(expected));
        }
    }

    #[test]
    fn symmetry_and_reduction() {
        for (p, q) in [(1, 2), (2, 1), (3, 0), (0, 2)] {
            for n in 0..5 {
                for m in 0..5 {
                    let a = explicit(fp(p, q, n, m)).unwrap().poly;
                    let b = explicit(fp(q, p, m, n)).unwrap().poly;
                    let swapped = b.subst(&[(Var::Z, Poly::var(Var::W)), (Var::W, Poly::var(Var::Z))]);
                    assert_eq!(a, swapped);
                }
            }
        }
        for p in 1..4 {
            for n in 0..6 {
                for m in 0..3 {
                    let lhs = explicit(fp(p, 0, n, m)).unwrap().poly;
                    let rhs = &Poly::monomial(Scalar::one(), &[(Var::W, m)]) * &gould_hopper_1d(n, p).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn strategies_agree_on_small_grid() {
        for (p, q) in [(1, 1), (2, 1), (1, 3), (2, 0), (0, 2)] {
            for n in 0..5 {
                for m in 0..5 {
                    let params = fp(p, q, n, m);
                    let want = explicit(params).unwrap().poly;
                    for st in Strategy::ALL {
                        match construct(params, st) {
                            Ok(g) => assert_eq!(g.poly, want, "{st:?} {params}"),
                            Err(Error::Unsupported(_)) => assert!(p == 0 || q == 0),
                            Err(e) => panic!("{e}"),
                        }
                    }
                }
            }
        }
    }
}
