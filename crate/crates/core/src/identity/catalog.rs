//! One check procedure per tag. Each returns both sides expanded in the
//! polynomial ring (or the series ring) and leaves the comparison to
//! [`report`].

use crate::classical::hermite_physicists;
use crate::error::{Error, Result};
use crate::family::{gh1, h, hypergeom_form, FamilyParams};
use crate::poly::{Monomial, Poly};
use crate::scalar::Scalar;
use crate::series::SeriesUV;
use crate::var::Var::{self, *};

use super::{IdentityParams, IdentityReport, Status, Tag, TagKind, Variant};

fn x(v: Var) -> Poly {
    Poly::var(v)
}

fn int(n: i64) -> Scalar {
    Scalar::from_int(n)
}

fn fact(n: u32) -> Scalar {
    Scalar::factorial(n as u64)
}

fn binom(n: u32, k: u32) -> Scalar {
    Scalar::binomial(n as i64, k as i64)
}

fn pow2(e: i64) -> Scalar {
    int(2).pow(e as i32).expect("nonzero")
}

/// f(z, w, γ) with all three arguments replaced simultaneously.
fn at(f: &Poly, z: &Poly, w: &Poly, g: &Poly) -> Poly {
    f.subst(&[(Z, z.clone()), (W, w.clone()), (Gamma, g.clone())])
}

/// H_{n,m}(z', w'|γ').
fn primed(f: &Poly) -> Poly {
    at(f, &x(Zp), &x(Wp), &x(Gammap))
}

fn mono(pairs: &[(Var, u32)]) -> Poly {
    Poly::monomial(Scalar::one(), pairs)
}

/// Upper summation limit ⌊n/p⌋ ∧ ⌊m/q⌋, with ⌊·/0⌋ read as unbounded and
/// capped at n + m (terms beyond it vanish anyway).
fn k_max(p: u32, q: u32, n: u32, m: u32) -> u32 {
    let cap = n + m;
    let a = n.checked_div(p).unwrap_or(cap);
    let b = m.checked_div(q).unwrap_or(cap);
    a.min(b)
}

/// Either both sides of an identity or a precomputed difference.
enum Sides {
    Exact(Poly, Poly),
    Series(SeriesUV, SeriesUV),
    /// Several sub-statements; the first nonzero difference is reported.
    Parts(Vec<(Poly, Poly)>),
}

struct Outcome {
    variant: Variant,
    sides: Sides,
    notes: String,
}

impl Outcome {
    fn printed(sides: Sides) -> Self {
        Outcome {
            variant: Variant::Printed,
            sides,
            notes: String::new(),
        }
    }

    fn corrected(desc: &'static str, sides: Sides) -> Self {
        Outcome {
            variant: Variant::Corrected(desc),
            sides,
            notes: String::new(),
        }
    }

    fn note(mut self, s: &str) -> Self {
        self.notes = s.to_string();
        self
    }
}

fn exact(lhs: Poly, rhs: Poly) -> Sides {
    Sides::Exact(lhs, rhs)
}

/// Σ (lhs − rhs)_{ij} u^i v^j.
fn series_difference(lhs: &SeriesUV, rhs: &SeriesUV) -> Poly {
    let mut out = Poly::zero();
    for ((i, j), c) in lhs.mismatches(rhs) {
        out.add_assign_ref(&c.mul_term(
            &Scalar::one(),
            &Monomial::from_pairs(&[(U, i as u32), (V, j as u32)]),
        ));
    }
    out
}

fn report(tag: Tag, params: &IdentityParams, o: Outcome) -> IdentityReport {
    let (difference, order) = match &o.sides {
        Sides::Exact(l, r) => (l - r, None),
        Sides::Series(l, r) => (series_difference(l, r), Some(l.order().min(r.order()))),
        Sides::Parts(parts) => (
            parts
                .iter()
                .map(|(l, r)| l - r)
                .find(|d| !d.is_zero())
                .unwrap_or_else(Poly::zero),
            None,
        ),
    };
    let status = match (difference.is_zero(), order) {
        (false, _) => Status::Fail,
        (true, None) => Status::ExactPass,
        (true, Some(o)) => Status::SeriesPass(o),
    };
    IdentityReport {
        tag,
        params: params.clone(),
        variant: o.variant,
        status,
        difference,
        notes: o.notes,
    }
}

fn missing(tag: Tag, field: &str) -> Error {
    Error::Arity {
        tag: tag.name().to_string(),
        msg: format!("missing parameter `{field}`"),
    }
}

struct Args<'a> {
    tag: Tag,
    params: &'a IdentityParams,
}

impl Args<'_> {
    fn get(&self, v: Option<u32>, name: &str) -> Result<u32> {
        v.ok_or_else(|| missing(self.tag, name))
    }
    fn p(&self) -> Result<u32> {
        self.get(self.params.p, "p")
    }
    fn q(&self) -> Result<u32> {
        self.get(self.params.q, "q")
    }
    fn n(&self) -> Result<u32> {
        self.get(self.params.n, "n")
    }
    fn m(&self) -> Result<u32> {
        self.get(self.params.m, "m")
    }
    fn n2(&self) -> Result<u32> {
        self.get(self.params.n2, "n2")
    }
    fn m2(&self) -> Result<u32> {
        self.get(self.params.m2, "m2")
    }
    fn j(&self) -> Result<u32> {
        self.get(self.params.j, "j")
    }
    fn k(&self) -> Result<u32> {
        self.get(self.params.k, "k")
    }
    fn value(&self, name: &str) -> Result<Scalar> {
        self.params.value(self.tag, name)
    }
    /// (p, q) with p + q ≥ 1.
    fn pq(&self) -> Result<(u32, u32)> {
        let (p, q) = (self.p()?, self.q()?);
        FamilyParams { p, q, n: 0, m: 0 }.validate()?;
        Ok((p, q))
    }
    fn pqnm(&self) -> Result<(u32, u32, u32, u32)> {
        let (p, q) = self.pq()?;
        Ok((p, q, self.n()?, self.m()?))
    }
    /// (p, q) with both p ≥ 1 and q ≥ 1.
    fn pq_positive(&self) -> Result<(u32, u32)> {
        let (p, q) = self.pq()?;
        if p == 0 || q == 0 {
            return Err(Error::Unsupported(format!(
                "{} needs p >= 1 and q >= 1",
                self.tag.name()
            )));
        }
        Ok((p, q))
    }
}

/// Whether the tag's statement makes sense for this (p, q).
pub(crate) fn applicable(tag: Tag, p: u32, q: u32) -> bool {
    use Tag::*;
    match tag {
        Hypergeom | RungeScaled | PdeProduct | ConnPqFromGh | OriginValue | GenPochhammerS => {
            p >= 1 && q >= 1
        }
        MultGh => p >= 1,
        _ => p + q >= 1,
    }
}

/// Runs the printed (`corrected == false`) or corrected form of `tag`.
/// Returns `None` when a corrected form is requested for a tag that has none.
pub(crate) fn check(
    tag: Tag,
    params: &IdentityParams,
    order: usize,
    corrected: bool,
) -> Result<Option<IdentityReport>> {
    let a = Args { tag, params };
    if matches!(tag.kind(), TagKind::Series) {
        let (p, q) = a.pq()?;
        if order < (p + q) as usize {
            return Err(Error::InvalidParams(format!(
                "truncation order {order} is below p + q = {}; the γ term would be invisible",
                p + q
            )));
        }
    }
    let outcome = dispatch(&a, order, corrected)?;
    Ok(outcome.map(|o| report(tag, params, o)))
}

fn dispatch(a: &Args, order: usize, corrected: bool) -> Result<Option<Outcome>> {
    use Tag::*;
    // Tags whose printed form is right: no corrected variant.
    let only_printed = |f: &dyn Fn() -> Result<Outcome>| -> Result<Option<Outcome>> {
        if corrected {
            Ok(None)
        } else {
            f().map(Some)
        }
    };
    match a.tag {
        Symmetry => only_printed(&|| symmetry(a)),
        Hypergeom => only_printed(&|| hypergeom(a)),
        Hyp2F0To1F1 => hyp_2f0_1f1(a, corrected).map(Some),
        OriginValue => origin_value(a, corrected).map(Some),
        SpecialPq => special_pq(a, corrected).map(Some),
        GenPartialU => only_printed(&|| gen_partial(a, order, false)),
        GenPartialV => only_printed(&|| gen_partial(a, order, true)),
        GenFull => only_printed(&|| gen_full(a, order)),
        Homogeneity => only_printed(&|| homogeneity(a)),
        Limit => only_printed(&|| limit(a)),
        GenPochhammerG => gen_pochhammer_g(a, order, corrected).map(Some),
        GenPochhammerS => gen_pochhammer_s(a, order, corrected).map(Some),
        RungeGeneral => only_printed(&|| runge_general(a)),
        RungeCancel => only_printed(&|| runge_cancel(a)),
        RungeHalf => runge_half(a, corrected).map(Some),
        RungeScaled => only_printed(&|| runge_scaled(a)),
        MultC => only_printed(&|| mult_c(a)),
        MultAbc => only_printed(&|| mult_abc(a)),
        MultGh => only_printed(&|| mult_gh(a)),
        DerivZ => only_printed(&|| deriv_z(a)),
        DerivW => only_printed(&|| deriv_w(a)),
        DerivGamma => only_printed(&|| deriv_gamma(a)),
        DerivJk => only_printed(&|| deriv_jk(a)),
        DerivGammaK => only_printed(&|| deriv_gamma_k(a)),
        InverseSum => only_printed(&|| inverse_sum(a)),
        InverseOp => only_printed(&|| inverse_op(a)),
        RecRaiseN => only_printed(&|| rec_raise_n(a)),
        RecRaiseNOp => only_printed(&|| rec_raise_n_op(a)),
        RecRaiseM => rec_raise_m(a, corrected).map(Some),
        RecRaiseMOp => only_printed(&|| rec_raise_m_op(a)),
        Creation => only_printed(&|| creation(a)),
        CreationBoth => only_printed(&|| creation_both(a)),
        ParamRec => param_rec(a, corrected).map(Some),
        ParamOpP => only_printed(&|| param_op_single(a, false)),
        ParamOpQ => only_printed(&|| param_op_single(a, true)),
        ParamOpPq => param_op_pq(a, corrected).map(Some),
        NielsenN => only_printed(&|| nielsen(a, true, false)),
        NielsenM => only_printed(&|| nielsen(a, false, true)),
        NielsenFull => only_printed(&|| nielsen(a, true, true)),
        AddZw => only_printed(&|| add_zw(a)),
        AddHalf => add_half(a, corrected).map(Some),
        ConnGhFromPq => only_printed(&|| conn_gh_from_pq(a)),
        ConnGhSum => only_printed(&|| conn_gh_sum(a)),
        ConnIto => conn_ito(a, corrected).map(Some),
        ConnPqFromGh => conn_pq_from_gh(a, corrected).map(Some),
        PdeHeat => only_printed(&|| pde_heat(a)),
        PdeEigenN => pde_eigen(a, corrected, false).map(Some),
        PdeEigenM => pde_eigen(a, corrected, true).map(Some),
        PdeProduct => pde_product(a, corrected).map(Some),
    }
}

// ---- representations and special values ----

fn symmetry(a: &Args) -> Result<Outcome> {
    let (p, q, n, m) = a.pqnm()?;
    let lhs = h(p, q, n as i64, m as i64);
    let rhs = h(q, p, m as i64, n as i64).subst(&[(Z, x(W)), (W, x(Z))]);
    Ok(Outcome::printed(exact(lhs, rhs)))
}

fn hypergeom(a: &Args) -> Result<Outcome> {
    let (p, q, n, m) = a.pqnm()?;
    a.pq_positive()?;
    let fp = FamilyParams { p, q, n, m };
    Ok(Outcome::printed(exact(h(p, q, n as i64, m as i64), hypergeom_form(fp)?.poly)))
}

/// Terminating Σ_k Π(a_i)_k / Π(b_i)_k · x^k/k! with the first upper
/// parameter a nonpositive integer.
fn terminating_hyp(upper: &[Scalar], lower: &[Scalar], x: &Scalar, terms: u32) -> Scalar {
    let mut sum = Scalar::zero();
    let mut t = Scalar::one();
    for k in 0..=terms {
        sum += &t;
        let mut ratio = x / &int(k as i64 + 1);
        for u in upper {
            ratio *= &(u + &int(k as i64));
        }
        for l in lower {
            ratio = &ratio / &(l + &int(k as i64));
        }
        t *= &ratio;
    }
    sum
}

fn hyp_2f0_1f1(a: &Args, corrected: bool) -> Result<Outcome> {
    let (n, m) = (a.n()?, a.m()?);
    let z = a.value("z")?;
    if z.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let (lo, hi) = (n.min(m), n.max(m));
    let arg = -&z.recip()?;
    let lhs = terminating_hyp(&[int(-(n as i64)), int(-(m as i64))], &[], &arg, lo);
    let one_f_one = terminating_hyp(&[int(-(lo as i64))], &[int((hi - lo) as i64 + 1)], &z, lo);
    let mut rhs = &(&z.pow(-(lo as i32))? * &fact(hi)) * &Scalar::inv_factorial((hi - lo) as i64);
    rhs *= &one_f_one;
    if corrected {
        if lo % 2 == 1 {
            rhs = -rhs;
        }
        Ok(Outcome::corrected(
            "right side multiplied by (-1)^(n∧m)",
            exact(lhs.into(), rhs.into()),
        ))
    } else {
        Ok(Outcome::printed(exact(lhs.into(), rhs.into())))
    }
}

fn origin_value(a: &Args, corrected: bool) -> Result<Outcome> {
    let (p, q, n, m) = a.pqnm()?;
    a.pq_positive()?;
    let f = h(p, q, n as i64, m as i64);
    let zero = Scalar::zero();
    let mut parts = Vec::new();
    if n % p == 0 && m % q == 0 {
        let at0 = f.eval(&[(Z, zero.clone()), (W, zero.clone())]);
        let (kn, km) = (n / p, m / q);
        let expected = if kn != km {
            Poly::zero()
        } else {
            let mut c = &fact(n) * &Scalar::inv_factorial(kn as i64);
            if corrected {
                c *= &fact(m);
            }
            Poly::monomial(c, &[(Gamma, kn)])
        };
        parts.push((at0, expected));
    }
    if n % p != 0 {
        parts.push((f.eval(&[(Z, zero.clone())]), Poly::zero()));
    }
    if m % q != 0 {
        parts.push((f.eval(&[(W, zero)]), Poly::zero()));
    }
    Ok(if corrected {
        Outcome::corrected("origin value n! m! γ^k / k! (factor m! restored)", Sides::Parts(parts))
    } else {
        Outcome::printed(Sides::Parts(parts))
    })
}

fn special_pq(a: &Args, corrected: bool) -> Result<Outcome> {
    let (p, q) = a.pq()?;
    let f = h(p, q, p as i64, q as i64);
    let rhs = &mono(&[(Z, p), (W, q)]) + &Poly::monomial(&fact(p) * &fact(q), &[(Gamma, 1)]);
    Ok(if corrected {
        Outcome::corrected("argument γ in place of 0 on the left side", exact(f, rhs))
    } else {
        let lhs = f.eval(&[(Gamma, Scalar::zero())]);
        Outcome::printed(exact(lhs, rhs))
    })
}

// ---- generating functions ----

/// Σ_{n+m ≤ order} w(n, m) H_{n,m} u^n v^m / (n! m!), with H given by `hf`.
fn weighted_lhs(
    order: usize,
    hf: impl Fn(u32, u32) -> Poly,
    weight: impl Fn(u32, u32) -> Scalar,
) -> SeriesUV {
    let mut poly = Poly::zero();
    for n in 0..=order as u32 {
        for m in 0..=(order as u32 - n) {
            let w = weight(n, m);
            if w.is_zero() {
                continue;
            }
            let c = &(&w * &Scalar::inv_factorial(n as i64)) * &Scalar::inv_factorial(m as i64);
            let f = hf(n, m);
            poly.add_assign_ref(&f.mul_term(&c, &Monomial::from_pairs(&[(U, n), (V, m)])));
        }
    }
    SeriesUV::from_poly(&poly, order)
}

fn exponent(p: u32, q: u32) -> Poly {
    let mut e = &(&x(Z) * &x(U)) + &(&x(W) * &x(V));
    e.add_assign_ref(&mono(&[(Gamma, 1), (U, p), (V, q)]));
    e
}

fn gen_partial(a: &Args, order: usize, in_v: bool) -> Result<Outcome> {
    let (p, q) = a.pq()?;
    // u-form: Σ_n H_{n,m} u^n/n! = GH_m^{(q)}(w|u^p γ) e^{zu}
    // v-form: Σ_m H_{n,m} v^m/m! = GH_n^{(p)}(z|v^q γ) e^{wv}
    let (fixed, sum_var, free, other, order_other, power) = if in_v {
        (a.n()?, V, W, Z, p, q)
    } else {
        (a.m()?, U, Z, W, q, p)
    };
    let mut lhs = Poly::zero();
    for i in 0..=order as u32 {
        let f = if in_v {
            h(p, q, fixed as i64, i as i64)
        } else {
            h(p, q, i as i64, fixed as i64)
        };
        lhs.add_assign_ref(&f.mul_term(
            &Scalar::inv_factorial(i as i64),
            &Monomial::from_pairs(&[(sum_var, i)]),
        ));
    }
    let shift = &x(free) * &x(sum_var);
    // order 0 on the other side degenerates to other^fixed · e^{γ s^power}
    let rhs = if order_other == 0 {
        let e = &shift + &mono(&[(Gamma, 1), (sum_var, power)]);
        SeriesUV::from_poly(&e, order).exp()?.mul_poly(&mono(&[(other, fixed)]))
    } else {
        let g = gh1(fixed as i64, order_other)
            .subst(&[(Z, x(other)), (Gamma, mono(&[(Gamma, 1), (sum_var, power)]))]);
        SeriesUV::from_poly(&shift, order)
            .exp()?
            .mul(&SeriesUV::from_poly(&g, order))
    };
    Ok(Outcome::printed(Sides::Series(SeriesUV::from_poly(&lhs, order), rhs)))
}

fn gen_full(a: &Args, order: usize) -> Result<Outcome> {
    let (p, q) = a.pq()?;
    let lhs = weighted_lhs(order, |n, m| h(p, q, n as i64, m as i64), |_, _| Scalar::one());
    let rhs = SeriesUV::from_poly(&exponent(p, q), order).exp()?;
    Ok(Outcome::printed(Sides::Series(lhs, rhs)))
}

/// P_k^n(z) = Σ_{j<k} (−1)^{k−j} (−n)_{k−j} C(k,j) z^j with the rising
/// factorial; P_0^n = 0.
pub fn pochhammer_tail(n: i64, k: u32) -> Poly {
    let mut out = Poly::zero();
    for j in 0..k {
        let r = k - j;
        let sign = if r.is_multiple_of(2) { int(1) } else { int(-1) };
        let c = &(&sign * &Scalar::pochhammer(&int(-n), r as u64)) * &binom(k, j);
        out.add_term(Monomial::from_pairs(&[(Z, j)]), &c);
    }
    out
}

/// x^r + x · P_{r−1}^r(x) for r ≥ 1 and 1 for r = 0, as a polynomial in `var`:
/// Σ_n (n)_r x^n/n! = e^x times this.
fn rising_moment(r: u32, var: Var) -> Poly {
    if r == 0 {
        return Poly::one();
    }
    let tail = pochhammer_tail(r as i64, r - 1).subst(&[(Z, x(var))]);
    &mono(&[(var, r)]) + &(&x(var) * &tail)
}

fn gen_pochhammer_g(a: &Args, order: usize, corrected: bool) -> Result<Outcome> {
    let (p, q) = a.pq()?;
    let (j, k) = (a.j()?, a.k()?);
    if j == 0 || k == 0 {
        return Err(Error::Unsupported(
            "GEN_POCHHAMMER_G needs j >= 1 and k >= 1; j = k = 0 is GEN_FULL".to_string(),
        ));
    }
    let lhs = weighted_lhs(
        order,
        |n, m| h(p, q, n as i64, m as i64),
        |n, m| &Scalar::pochhammer(&int(n as i64), j as u64) * &Scalar::pochhammer(&int(m as i64), k as u64),
    );
    let uz = &x(U) * &x(Z);
    let vw = &x(V) * &x(W);
    if !corrected {
        // uvzw e^{zu+wv+γu^p v^q} ((uz)^{j−1} + P_{j−1}^j(uz)) ((vw)^{k−1} + P_{k−1}^k(vw))
        let fz = &uz.pow(j - 1) + &pochhammer_tail(j as i64, j - 1).subst(&[(Z, uz.clone())]);
        let fw = &vw.pow(k - 1) + &pochhammer_tail(k as i64, k - 1).subst(&[(Z, vw.clone())]);
        let pre = &(&(&uz * &vw) * &fz) * &fw;
        let rhs = SeriesUV::from_poly(&exponent(p, q), order)
            .exp()?
            .mul(&SeriesUV::from_poly(&pre, order));
        return Ok(Outcome::printed(Sides::Series(lhs, rhs)));
    }
    // e^{uz+vw} Σ_s (γ u^p v^q)^s/s! · Q_{j,ps}(uz) Q_{k,qs}(vw),
    // Q_{j,σ}(x) = Σ_r C(j,r) (σ)_{j−r} R_r(x), R_r the rising moment.
    let q_poly = |jj: u32, sigma: u32, arg: &Poly| -> Poly {
        let mut out = Poly::zero();
        for r in 0..=jj {
            let c = &binom(jj, r) * &Scalar::pochhammer(&int(sigma as i64), (jj - r) as u64);
            if c.is_zero() {
                continue;
            }
            out.add_scaled(&rising_moment(r, Z).subst(&[(Z, arg.clone())]), &c);
        }
        out
    };
    let mut sum = Poly::zero();
    let mut s = 0u32;
    while ((p + q) * s) as usize <= order {
        let g = Poly::monomial(Scalar::inv_factorial(s as i64), &[(Gamma, s), (U, p * s), (V, q * s)]);
        let term = &(&g * &q_poly(j, p * s, &uz)) * &q_poly(k, q * s, &vw);
        sum.add_assign_ref(&term);
        s += 1;
    }
    let base = SeriesUV::from_poly(&(&uz + &vw), order).exp()?;
    let rhs = base.mul(&SeriesUV::from_poly(&sum, order));
    Ok(Outcome::corrected(
        "γ-weighted sum: e^{uz+vw} Σ_s (γu^p v^q)^s/s! Q_{j,ps}(uz) Q_{k,qs}(vw), Q_{j,σ}(x) = Σ_r C(j,r)(σ)_{j−r}(x^r + x P_{r−1}^r(x))",
        Sides::Series(lhs, rhs),
    ))
}

fn gen_pochhammer_s(a: &Args, order: usize, corrected: bool) -> Result<Outcome> {
    let (p, q) = a.pq_positive()?;
    let (av, bv) = (a.value("a")?, a.value("b")?);
    let (zv, wv, gv) = (a.value("z")?, a.value("w")?, a.value("gamma")?);
    let vals = [(Z, zv.clone()), (W, wv.clone()), (Gamma, gv.clone())];
    let lhs = weighted_lhs(
        order,
        |n, m| h(p, q, n as i64, m as i64).eval(&vals),
        |n, m| &Scalar::pochhammer(&av, n as u64) * &Scalar::pochhammer(&bv, m as u64),
    );
    // Σ_k c_k X^k (1−uz)^{−(a+pk)} (1−vw)^{−(b+qk)}, X = p^p q^q γ · (uv or u^p v^q)
    let pp = int(p as i64).pow(p as i32)?;
    let qq = int(q as i64).pow(q as i32)?;
    let scale = &(&pp * &qq) * &gv;
    let (ue, ve) = if corrected { (p, q) } else { (1, 1) };
    let uz = Poly::monomial(zv.clone(), &[(U, 1)]);
    let vw = Poly::monomial(wv.clone(), &[(V, 1)]);
    let mut rhs = SeriesUV::zero(order);
    let mut ck = Scalar::one();
    let mut k = 0u32;
    while (((ue + ve) * k) as usize) <= order {
        if !ck.is_zero() {
            let xk = Poly::monomial(&ck * &scale.pow(k as i32).unwrap_or_else(|_| Scalar::zero()), &[(U, ue * k), (V, ve * k)]);
            let bu = SeriesUV::binomial_neg(&uz, &(&av + &int((p * k) as i64)), order)?;
            let bw = SeriesUV::binomial_neg(&vw, &(&bv + &int((q * k) as i64)), order)?;
            rhs = rhs.add(&bu.mul(&bw).mul(&SeriesUV::from_poly(&xk, order)));
        }
        // c_{k+1}/c_k = Π_i ((a+i)/p + k) Π_i ((b+i)/q + k) / (k+1)
        let mut ratio = Scalar::new(1, k as i64 + 1);
        for i in 0..p {
            ratio *= &(&(&(&av + &int(i as i64)) / &int(p as i64)) + &int(k as i64));
        }
        for i in 0..q {
            ratio *= &(&(&(&bv + &int(i as i64)) / &int(q as i64)) + &int(k as i64));
        }
        ck *= &ratio;
        k += 1;
    }
    Ok(if corrected {
        Outcome::corrected(
            "hypergeometric argument p^p q^q γ u^p v^q / ((1−uz)^p (1−vw)^q)",
            Sides::Series(lhs, rhs),
        )
    } else {
        Outcome::printed(Sides::Series(lhs, rhs))
    })
}

// ---- homogeneity, limit, Runge ----

fn homogeneity(a: &Args) -> Result<Outcome> {
    let (p, q, n, m) = a.pqnm()?;
    let f = h(p, q, n as i64, m as i64);
    let lhs = &mono(&[(A, n), (B, m)]) * &f;
    let rhs = at(
        &f,
        &(&x(A) * &x(Z)),
        &(&x(B) * &x(W)),
        &mono(&[(Gamma, 1), (A, p), (B, q)]),
    );
    Ok(Outcome::printed(exact(lhs, rhs)))
}

fn limit(a: &Args) -> Result<Outcome> {
    let (p, q, n, m) = a.pqnm()?;
    let f = h(p, q, n as i64, m as i64);
    // t^{n+m} H(z/t, w/t|γ): each z^i w^j picks up t^{n+m−i−j}.
    let mut scaled = Poly::zero();
    for (mono_, c) in f.terms() {
        let shift = n + m - mono_.exp(Z) - mono_.exp(W);
        scaled.add_assign_ref(&Poly::term(c.clone(), *mono_).mul_term(
            &Scalar::one(),
            &Monomial::from_pairs(&[(T, shift)]),
        ));
    }
    let substituted = f.subst(&[(Gamma, mono(&[(Gamma, 1), (T, p + q)]))]);
    let t0 = substituted.coeff_of(T, 0);
    Ok(Outcome::printed(Sides::Parts(vec![
        (scaled, substituted),
        (t0, mono(&[(Z, n), (W, m)])),
    ])))
}

/// Σ_{k,j} C(n,k) C(m,j) left(k,j) right(n−k, m−j).
fn binomial_convolution(
    n: u32,
    m: u32,
    left: impl Fn(u32, u32) -> Poly,
    right: impl Fn(u32, u32) -> Poly,
) -> Poly {
    let mut out = Poly::zero();
    for k in 0..=n {
        for j in 0..=m {
            let c = &binom(n, k) * &binom(m, j);
            out.add_scaled(&(&left(k, j) * &right(n - k, m - j)), &c);
        }
    }
    out
}

fn runge_general(a: &Args) -> Result<Outcome> {
    let (p, q, n, m) = a.pqnm()?;
    let lhs = at(
        &h(p, q, n as i64, m as i64),
        &(&x(Z) + &x(Zp)),
        &(&x(W) + &x(Wp)),
        &(&x(Gamma) + &x(Gammap)),
    );
    let rhs = binomial_convolution(
        n,
        m,
        |k, j| h(p, q, k as i64, j as i64),
        |k, j| primed(&h(p, q, k as i64, j as i64)),
    );
    Ok(Outcome::printed(exact(lhs, rhs)))
}

fn runge_cancel(a: &Args) -> Result<Outcome> {
    let (p, q, n, m) = a.pqnm()?;
    let half = Scalar::new(1, 2);
    let (zh, wh) = (x(Z).scale(&half), x(W).scale(&half));
    let lhs = binomial_convolution(
        n,
        m,
        |k, j| at(&h(p, q, k as i64, j as i64), &zh, &wh, &x(Gamma)),
        |k, j| at(&h(p, q, k as i64, j as i64), &zh, &wh, &-x(Gamma)),
    );
    Ok(Outcome::printed(exact(lhs, mono(&[(Z, n), (W, m)]))))
}

fn runge_half(a: &Args, corrected: bool) -> Result<Outcome> {
    let (p, q, n, m) = a.pqnm()?;
    let g = x(Gamma).scale(&pow2(p as i64 + q as i64 - 1));
    let hs = |k: u32, j: u32| at(&h(p, q, k as i64, j as i64), &x(Z), &x(W), &g);
    let mut rhs = binomial_convolution(n, m, hs, hs);
    let lhs = h(p, q, n as i64, m as i64);
    if corrected {
        rhs = rhs.scale(&pow2(-((n + m) as i64)));
        Ok(Outcome::corrected("overall factor 2^{−(n+m)} on the right side", exact(lhs, rhs)))
    } else {
        Ok(Outcome::printed(exact(lhs, rhs)))
    }
}

fn runge_scaled(a: &Args) -> Result<Outcome> {
    let (p, q, n, m) = a.pqnm()?;
    a.pq_positive()?;
    // r = 2^{−1/L} as the ring variable A with r^L = 1/2; L = lcm(2p, 2q).
    let l = lcm(2 * p, 2 * q);
    let ea = l / (2 * p);
    let eb = l / (2 * q);
    let half = Scalar::new(1, 2);
    let reduce = |f: &Poly| f.reduce_power(A, l, &half);
    let lhs = reduce(&at(
        &h(p, q, n as i64, m as i64),
        &(&(&x(Z) + &x(Zp)) * &mono(&[(A, ea)])),
        &(&(&x(W) + &x(Wp)) * &mono(&[(A, eb)])),
        &x(Gamma),
    ));
    // 2^{−(n/(2p) + m/(2q))} = r^{n·ea + m·eb}
    let conv = binomial_convolution(
        n,
        m,
        |k, j| h(p, q, k as i64, j as i64),
        |k, j| at(&h(p, q, k as i64, j as i64), &x(Zp), &x(Wp), &x(Gamma)),
    );
    let rhs = reduce(&(&conv * &mono(&[(A, n * ea + m * eb)])));
    Ok(Outcome::printed(exact(lhs, rhs)).note(&format!(
        "radical r = 2^(-1/{l}) carried as variable a with a^{l} = 1/2"
    )))
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u32, b: u32) -> u32 {
    a / gcd(a, b) * b
}

// ---- multiplication formulas ----

/// n! m! Σ_k coef(k) · H_{n−pk,m−qk}/((n−pk)! (m−qk)!), with coef a polynomial.
fn descending_sum(p: u32, q: u32, n: u32, m: u32, coef: impl Fn(u32) -> Poly) -> Poly {
    let nm = &fact(n) * &fact(m);
    let mut out = Poly::zero();
    for k in 0..=k_max(p, q, n, m) {
        let (zn, wm) = (n as i64 - (p * k) as i64, m as i64 - (q * k) as i64);
        if zn < 0 || wm < 0 {
            continue;
        }
        let c = &(&nm * &Scalar::inv_factorial(zn)) * &Scalar::inv_factorial(wm);
        out.add_scaled(&(&coef(k) * &h(p, q, zn, wm)), &c);
    }
    out
}

fn mult_c(a: &Args) -> Result<Outcome> {
    let (p, q, n, m) = a.pqnm()?;
    let lhs = h(p, q, n as i64, m as i64).subst(&[(Gamma, &x(C) * &x(Gamma))]);
    let cm1 = &x(C) - &Poly::one();
    let rhs = descending_sum(p, q, n, m, |k| {
        (&cm1.pow(k) * &mono(&[(Gamma, k)])).scale(&Scalar::inv_factorial(k as i64))
    });
    Ok(Outcome::printed(exact(lhs, rhs)))
}

fn mult_abc(a: &Args) -> Result<Outcome> {
    let (p, q, n, m) = a.pqnm()?;
    let lhs = at(
        &h(p, q, n as i64, m as i64),
        &(&x(A) * &x(Z)),
        &(&x(B) * &x(W)),
        &(&x(C) * &x(Gamma)),
    );
    let base = &x(C) - &mono(&[(A, p), (B, q)]);
    let rhs = descending_sum(p, q, n, m, |k| {
        let ab = mono(&[(Gamma, k), (A, n - p * k), (B, m - q * k)]);
        (&base.pow(k) * &ab).scale(&Scalar::inv_factorial(k as i64))
    });
    Ok(Outcome::printed(exact(lhs, rhs)))
}

fn mult_gh(a: &Args) -> Result<Outcome> {
    let (p, n) = (a.p()?, a.n()?);
    if p == 0 {
        return Err(Error::Unsupported("MULT_GH needs p >= 1".to_string()));
    }
    let lhs = gh1(n as i64, p).subst(&[(Z, &x(A) * &x(Z)), (Gamma, &x(C) * &x(Gamma))]);
    let base = &x(C) - &mono(&[(A, p)]);
    let mut rhs = Poly::zero();
    for k in 0..=n / p {
        let rest = n - p * k;
        let c = &(&fact(n) * &Scalar::inv_factorial(k as i64)) * &Scalar::inv_factorial(rest as i64);
        let t = &(&base.pow(k) * &mono(&[(Gamma, k), (A, rest)])) * &gh1(rest as i64, p);
        rhs.add_scaled(&t, &c);
    }
    Ok(Outcome::printed(exact(lhs, rhs)))
}

// ---- derivatives and inversion ----

fn deriv_z(a: &Args) -> Result<Outcome> {
    let (p, q, n, m) = a.pqnm()?;
    let lhs = h(p, q, n as i64, m as i64).diff(Z, 1);
    let rhs = h(p, q, n as i64 - 1, m as i64).scale(&int(n as i64));
    Ok(Outcome::printed(exact(lhs, rhs)))
}

fn deriv_w(a: &Args) -> Result<Outcome> {
    let (p, q, n, m) = a.pqnm()?;
    let lhs = h(p, q, n as i64, m as i64).diff(W, 1);
    let rhs = h(p, q, n as i64, m as i64 - 1).scale(&int(m as i64));
    Ok(Outcome::printed(exact(lhs, rhs)))
}

fn deriv_gamma(a: &Args) -> Result<Outcome> {
    let (p, q, n, m) = a.pqnm()?;
    let f = h(p, q, n as i64, m as i64);
    Ok(Outcome::printed(exact(f.diff(Gamma, 1), f.diff_zw(p, q))))
}

fn deriv_jk(a: &Args) -> Result<Outcome> {
    let (p, q, n, m) = a.pqnm()?;
    let (j, k) = (a.j()?, a.k()?);
    let lhs = h(p, q, n as i64, m as i64).diff_zw(j, k);
    let rhs = if j <= n && k <= m {
        let c = &(&fact(n) * &Scalar::inv_factorial((n - j) as i64))
            * &(&fact(m) * &Scalar::inv_factorial((m - k) as i64));
        h(p, q, (n - j) as i64, (m - k) as i64).scale(&c)
    } else {
        Poly::zero()
    };
    Ok(Outcome::printed(exact(lhs, rhs)))
}

fn deriv_gamma_k(a: &Args) -> Result<Outcome> {
    let (p, q, n, m) = a.pqnm()?;
    let k = a.k()?;
    let lhs = h(p, q, n as i64, m as i64).diff(Gamma, k);
    let rhs = if k <= k_max(p, q, n, m) && p * k <= n && q * k <= m {
        let (zn, wm) = (n - p * k, m - q * k);
        let c = &(&fact(n) * &Scalar::inv_factorial(zn as i64))
            * &(&fact(m) * &Scalar::inv_factorial(wm as i64));
        h(p, q, zn as i64, wm as i64).scale(&c)
    } else {
        Poly::zero()
    };
    Ok(Outcome::printed(exact(lhs, rhs)))
}

fn inverse_sum(a: &Args) -> Result<Outcome> {
    let (p, q, n, m) = a.pqnm()?;
    let rhs = descending_sum(p, q, n, m, |k| {
        let sign = if k % 2 == 0 { int(1) } else { int(-1) };
        Poly::monomial(&sign * &Scalar::inv_factorial(k as i64), &[(Gamma, k)])
    });
    Ok(Outcome::printed(exact(mono(&[(Z, n), (W, m)]), rhs)))
}

/// e^{s·op} f for a nilpotent operator `op` (one that strictly lowers the
/// z, w degree), with `s` a polynomial coefficient commuting with op.
fn op_exp(f: &Poly, s: &Poly, op: impl Fn(&Poly) -> Poly) -> Poly {
    let mut out = f.clone();
    let mut term = f.clone();
    let mut k = 1i64;
    loop {
        term = (&op(&term) * s).scale(&Scalar::new(1, k));
        if term.is_zero() {
            return out;
        }
        out.add_assign_ref(&term);
        k += 1;
    }
}

fn inverse_op(a: &Args) -> Result<Outcome> {
    let (p, q, n, m) = a.pqnm()?;
    let rhs = op_exp(&h(p, q, n as i64, m as i64), &-x(Gamma), |g| g.diff_zw(p, q));
    Ok(Outcome::printed(exact(mono(&[(Z, n), (W, m)]), rhs)))
}

// ---- recursions and creation operators ----

fn rec_raise_n(a: &Args) -> Result<Outcome> {
    let (p, q, n, m) = a.pqnm()?;
    let lhs = h(p, q, n as i64 + 1, m as i64);
    let c = &(&fact(p) * &fact(q))
        * &(&Scalar::binomial(n as i64, p as i64 - 1) * &binom(m, q));
    let mut rhs = &x(Z) * &h(p, q, n as i64, m as i64);
    rhs.add_scaled(
        &(&x(Gamma) * &h(p, q, n as i64 + 1 - p as i64, m as i64 - q as i64)),
        &c,
    );
    Ok(Outcome::printed(exact(lhs, rhs)))
}

/// z f + pγ ∂_z^{p−1} ∂_w^q f (the second term absent for p = 0).
fn op_z(f: &Poly, p: u32, q: u32) -> Poly {
    let mut out = &x(Z) * f;
    if p >= 1 {
        out.add_scaled(&(&x(Gamma) * &f.diff_zw(p - 1, q)), &int(p as i64));
    }
    out
}

/// w f + qγ ∂_z^p ∂_w^{q−1} f (the second term absent for q = 0).
fn op_w(f: &Poly, p: u32, q: u32) -> Poly {
    let mut out = &x(W) * f;
    if q >= 1 {
        out.add_scaled(&(&x(Gamma) * &f.diff_zw(p, q - 1)), &int(q as i64));
    }
    out
}

fn rec_raise_n_op(a: &Args) -> Result<Outcome> {
    let (p, q, n, m) = a.pqnm()?;
    let lhs = h(p, q, n as i64 + 1, m as i64);
    let rhs = op_z(&h(p, q, n as i64, m as i64), p, q);
    Ok(Outcome::printed(exact(lhs, rhs)))
}

fn rec_raise_m(a: &Args, corrected: bool) -> Result<Outcome> {
    let (p, q, n, m) = a.pqnm()?;
    let lhs = h(p, q, n as i64, m as i64 + 1);
    let c = &(&fact(p) * &fact(q))
        * &(&binom(n, p) * &Scalar::binomial(m as i64, q as i64 - 1));
    // printed index m − 1 − q, corrected m + 1 − q
    let w_index = if corrected { m as i64 + 1 - q as i64 } else { m as i64 - 1 - q as i64 };
    let mut rhs = &x(W) * &h(p, q, n as i64, m as i64);
    rhs.add_scaled(&(&x(Gamma) * &h(p, q, n as i64 - p as i64, w_index)), &c);
    Ok(if corrected {
        Outcome::corrected("last term H_{n−p,m+1−q} in place of H_{n−p,m−1−q}", exact(lhs, rhs))
    } else {
        Outcome::printed(exact(lhs, rhs))
    })
}

fn rec_raise_m_op(a: &Args) -> Result<Outcome> {
    let (p, q, n, m) = a.pqnm()?;
    let lhs = h(p, q, n as i64, m as i64 + 1);
    let rhs = op_w(&h(p, q, n as i64, m as i64), p, q);
    Ok(Outcome::printed(exact(lhs, rhs)))
}

fn creation(a: &Args) -> Result<Outcome> {
    let (p, q, n, m) = a.pqnm()?;
    let mut f;
    if p >= 1 {
        f = mono(&[(W, m)]);
        for _ in 0..n {
            f = op_z(&f, p, q);
        }
    } else {
        // p = 0: the mirrored statement (w + qγ∂_w^{q−1})^m {z^n}
        f = mono(&[(Z, n)]);
        for _ in 0..m {
            f = op_w(&f, p, q);
        }
    }
    Ok(Outcome::printed(exact(h(p, q, n as i64, m as i64), f)))
}

fn creation_both(a: &Args) -> Result<Outcome> {
    let (p, q, n, m) = a.pqnm()?;
    let mut f = Poly::one();
    for _ in 0..m {
        f = op_w(&f, p, q);
    }
    for _ in 0..n {
        f = op_z(&f, p, q);
    }
    Ok(Outcome::printed(exact(h(p, q, n as i64, m as i64), f)))
}

// ---- recursions in the parameters ----

/// One candidate reading of the parameter recursion
/// H^{(p+1,q)} = n! m! Σ_k Σ_{j≤k} B(j,k) γ^k (−1)^{k−j} [1/k!] H^{(p,q)}_{n−j−pk, M(k)} / ((n−j−pk)! (m−qk)!).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ParamRecRepair {
    /// B = C(k, j) rather than the printed C(j, k).
    pub binomial_k_j: bool,
    /// M(k) = m − qk rather than the printed m − k.
    pub w_index_qk: bool,
    /// Extra 1/k! weight on the k-th term.
    pub inverse_k_factorial: bool,
}

impl ParamRecRepair {
    pub const PRINTED: ParamRecRepair = ParamRecRepair {
        binomial_k_j: false,
        w_index_qk: false,
        inverse_k_factorial: false,
    };

    pub fn all() -> Vec<ParamRecRepair> {
        let mut out = Vec::new();
        for binomial_k_j in [false, true] {
            for w_index_qk in [false, true] {
                for inverse_k_factorial in [false, true] {
                    out.push(ParamRecRepair {
                        binomial_k_j,
                        w_index_qk,
                        inverse_k_factorial,
                    });
                }
            }
        }
        out
    }

    /// The right side at (p, q, n, m).
    pub fn rhs(self, p: u32, q: u32, n: u32, m: u32) -> Poly {
        let nm = &fact(n) * &fact(m);
        let mut out = Poly::zero();
        for k in 0..=k_max(p, q, n, m) {
            let wf = m as i64 - (q * k) as i64;
            if wf < 0 {
                continue;
            }
            let wi = if self.w_index_qk { wf } else { m as i64 - k as i64 };
            for j in 0..=k {
                let zn = n as i64 - j as i64 - (p * k) as i64;
                if zn < 0 {
                    continue;
                }
                let b = if self.binomial_k_j { binom(k, j) } else { binom(j, k) };
                if b.is_zero() {
                    continue;
                }
                let sign = if (k - j) % 2 == 0 { int(1) } else { int(-1) };
                let mut c = &(&(&nm * &b) * &sign) * &(&Scalar::inv_factorial(zn) * &Scalar::inv_factorial(wf));
                if self.inverse_k_factorial {
                    c *= &Scalar::inv_factorial(k as i64);
                }
                out.add_scaled(&(&mono(&[(Gamma, k)]) * &h(p, q, zn, wi)), &c);
            }
        }
        out
    }

    pub fn describe(self) -> String {
        let mut parts = Vec::new();
        if self.binomial_k_j {
            parts.push("C(k,j) in place of C(j,k)");
        }
        if self.w_index_qk {
            parts.push("w-index m−qk in place of m−k");
        }
        if self.inverse_k_factorial {
            parts.push("extra 1/k! weight");
        }
        if parts.is_empty() {
            "printed".to_string()
        } else {
            parts.join(", ")
        }
    }
}

/// Index repairs of the parameter recursion that reproduce H^{(p+1,q)} on
/// every point of `points` (p, q, n, m).
pub fn param_rec_repairs(points: &[(u32, u32, u32, u32)]) -> Vec<ParamRecRepair> {
    ParamRecRepair::all()
        .into_iter()
        .filter(|r| {
            points
                .iter()
                .all(|&(p, q, n, m)| r.rhs(p, q, n, m) == h(p + 1, q, n as i64, m as i64))
        })
        .collect()
}

const PARAM_REC_FIX: ParamRecRepair = ParamRecRepair {
    binomial_k_j: true,
    w_index_qk: true,
    inverse_k_factorial: true,
};

fn param_rec(a: &Args, corrected: bool) -> Result<Outcome> {
    let (p, q, n, m) = a.pqnm()?;
    let lhs = h(p + 1, q, n as i64, m as i64);
    Ok(if corrected {
        Outcome::corrected(
            "C(k,j) in place of C(j,k), w-index m−qk in place of m−k, extra 1/k! weight",
            exact(lhs, PARAM_REC_FIX.rhs(p, q, n, m)),
        )
    } else {
        Outcome::printed(exact(lhs, ParamRecRepair::PRINTED.rhs(p, q, n, m)))
    })
}

fn param_op_single(a: &Args, in_w: bool) -> Result<Outcome> {
    let (p, q, n, m) = a.pqnm()?;
    let f = h(p, q, n as i64, m as i64);
    let (v, lhs) = if in_w {
        (W, h(p, q + 1, n as i64, m as i64))
    } else {
        (Z, h(p + 1, q, n as i64, m as i64))
    };
    // e^{γ(∂_v − 1)D}
    let rhs = op_exp(&f, &x(Gamma), |g| {
        let d = g.diff_zw(p, q);
        &d.diff(v, 1) - &d
    });
    Ok(Outcome::printed(exact(lhs, rhs)))
}

fn param_op_pq(a: &Args, corrected: bool) -> Result<Outcome> {
    let (p, q, n, m) = a.pqnm()?;
    let f = h(p, q, n as i64, m as i64);
    let lhs = h(p + 1, q + 1, n as i64, m as i64);
    Ok(if corrected {
        // e^{γ(∂_z∂_w − 1)D}
        let rhs = op_exp(&f, &x(Gamma), |g| {
            let d = g.diff_zw(p, q);
            &d.diff_zw(1, 1) - &d
        });
        Outcome::corrected("exponent γ(∂_z∂_w − 1)D in place of γ(∂_z + ∂_w − 2)D", exact(lhs, rhs))
    } else {
        let rhs = op_exp(&f, &x(Gamma), |g| {
            let d = g.diff_zw(p, q);
            &(&d.diff(Z, 1) + &d.diff(W, 1)) - &d.scale(&int(2))
        });
        Outcome::printed(exact(lhs, rhs))
    })
}

// ---- Nielsen and addition formulas ----

fn nielsen(a: &Args, shift_n: bool, shift_m: bool) -> Result<Outcome> {
    let (p, q, n, m) = a.pqnm()?;
    let n2 = if shift_n { a.n2()? } else { 0 };
    let m2 = if shift_m { a.m2()? } else { 0 };
    let (nn, mm) = (n + n2, m + m2);
    let lhs = h(p, q, nn as i64, mm as i64);
    // Group the i+j = r, k+l = s terms: Σ_{i+j=r} C(n,i) C(n',j).
    let weights = |a_: u32, b_: u32| -> Vec<Scalar> {
        let mut w = vec![Scalar::zero(); (a_ + b_ + 1) as usize];
        for i in 0..=a_ {
            for j in 0..=b_ {
                w[(i + j) as usize] += &(&binom(a_, i) * &binom(b_, j));
            }
        }
        w
    };
    let one = vec![Scalar::one()];
    let wr = if shift_n { weights(n, n2) } else { one.clone() };
    let ws = if shift_m { weights(m, m2) } else { one };
    let dz = &x(Z) - &x(Zp);
    let dw = &x(W) - &x(Wp);
    let zarg = if shift_n { x(Zp) } else { x(Z) };
    let warg = if shift_m { x(Wp) } else { x(W) };
    let mut rhs = Poly::zero();
    for (r, cr) in wr.iter().enumerate() {
        for (s, cs) in ws.iter().enumerate() {
            let (r, s) = (r as u32, s as u32);
            let hh = at(&h(p, q, (nn - r) as i64, (mm - s) as i64), &zarg, &warg, &x(Gamma));
            let t = &(&dz.pow(r) * &dw.pow(s)) * &hh;
            rhs.add_scaled(&t, &(cr * cs));
        }
    }
    Ok(Outcome::printed(exact(lhs, rhs)))
}

fn add_zw(a: &Args) -> Result<Outcome> {
    let (p, q, n, m) = a.pqnm()?;
    let lhs = at(
        &h(p, q, n as i64, m as i64),
        &(&x(Z) + &x(Zp)),
        &(&x(W) + &x(Wp)),
        &x(Gamma),
    );
    let rhs = binomial_convolution(
        n,
        m,
        |i, j| mono(&[(Z, i), (W, j)]),
        |i, j| at(&h(p, q, i as i64, j as i64), &x(Zp), &x(Wp), &x(Gamma)),
    );
    Ok(Outcome::printed(exact(lhs, rhs)))
}

fn add_half(a: &Args, corrected: bool) -> Result<Outcome> {
    let (p, q, n, m) = a.pqnm()?;
    let lhs = h(p, q, n as i64, m as i64);
    let (prefactor, gexp) = if corrected {
        (pow2(-((n + m) as i64)), p as i64 + q as i64)
    } else {
        (pow2((n + m) as i64), p as i64 + q as i64 - 1)
    };
    let g = x(Gamma).scale(&pow2(gexp));
    let rhs = binomial_convolution(
        n,
        m,
        |i, j| mono(&[(Z, i), (W, j)]),
        |i, j| at(&h(p, q, i as i64, j as i64), &x(Z), &x(W), &g),
    )
    .scale(&prefactor);
    Ok(if corrected {
        Outcome::corrected("prefactor 2^{−(n+m)} and parameter 2^{p+q}γ", exact(lhs, rhs))
    } else {
        Outcome::printed(exact(lhs, rhs))
    })
}

// ---- connection to the one-variable family ----

fn conn_gh_from_pq(a: &Args) -> Result<Outcome> {
    let (p, q) = a.pq()?;
    let n = a.n()?;
    // Display read with one-variable order P = p + q: GH_n^{(P)}(z) = Σ C(n,k) H^{(P−q,q)}_{n−k,k}(z−w, w).
    let lhs = gh1(n as i64, p + q);
    let mut rhs = Poly::zero();
    for k in 0..=n {
        let t = h(p, q, (n - k) as i64, k as i64).subst(&[(Z, &x(Z) - &x(W))]);
        rhs.add_scaled(&t, &binom(n, k));
    }
    Ok(Outcome::printed(exact(lhs, rhs)).note("one-variable order p + q"))
}

fn conn_gh_sum(a: &Args) -> Result<Outcome> {
    let (p, q) = a.pq()?;
    let n = a.n()?;
    let lhs = gh1(n as i64, p + q).subst(&[(Z, &x(Z) + &x(W))]);
    let mut rhs = Poly::zero();
    for k in 0..=n {
        rhs.add_scaled(&h(p, q, (n - k) as i64, k as i64), &binom(n, k));
    }
    Ok(Outcome::printed(exact(lhs, rhs)))
}

fn conn_ito(a: &Args, corrected: bool) -> Result<Outcome> {
    let n = a.n()?;
    let lhs = hermite_physicists(n);
    let zarg = if corrected {
        &x(Z).scale(&int(2)) - &x(W)
    } else {
        &x(Z) - &x(W)
    };
    let mut rhs = Poly::zero();
    for k in 0..=n {
        let t = at(&h(1, 1, (n - k) as i64, k as i64), &zarg, &x(W), &Poly::int(-1));
        rhs.add_scaled(&t, &binom(n, k));
    }
    Ok(if corrected {
        Outcome::corrected("first argument 2z − w in place of z − w", exact(lhs, rhs))
    } else {
        Outcome::printed(exact(lhs, rhs))
    })
}

fn conn_pq_from_gh(a: &Args, corrected: bool) -> Result<Outcome> {
    let (p, q, n, m) = a.pqnm()?;
    a.pq_positive()?;
    let lhs = h(p, q, n as i64, m as i64);
    let nm = &fact(n) * &fact(m);
    let gw = |k: i64| gh1(k, q).subst(&[(Z, x(W))]);
    let mut rhs = Poly::zero();
    for k in 0..=n / p {
        for j in 0..=m / q {
            for l in 0..=(n - p * k) / p {
                for i in 0..=(m - q * j) / q {
                    let (d1, d2) = if corrected {
                        (k as i64 - i as i64, j as i64 - l as i64)
                    } else {
                        (k as i64 - l as i64, j as i64 - i as i64)
                    };
                    let den = &(&Scalar::inv_factorial(l as i64) * &Scalar::inv_factorial(i as i64))
                        * &(&Scalar::inv_factorial(d1) * &Scalar::inv_factorial(d2));
                    if den.is_zero() {
                        continue;
                    }
                    let zn = n - p * (l + k);
                    let wm = m - q * (i + j);
                    let sign = if (k + j) % 2 == 0 { int(1) } else { int(-1) };
                    let c = &(&(&nm * &den) * &(&sign * &int(-2).pow(-((l + i) as i32))?))
                        * &(&Scalar::inv_factorial(zn as i64) * &Scalar::inv_factorial(wm as i64));
                    let t = &(&mono(&[(Gamma, k + j)]) * &gh1(zn as i64, p)) * &gw(wm as i64);
                    rhs.add_scaled(&t, &c);
                }
            }
        }
    }
    Ok(if corrected {
        Outcome::corrected(
            "crossed factorial pairing 1/(l! i! (k−i)! (j−l)!) in place of 1/(l! i! (k−l)! (j−i)!)",
            exact(lhs, rhs),
        )
    } else {
        Outcome::printed(exact(lhs, rhs))
    })
}

// ---- differential equations ----

fn pde_heat(a: &Args) -> Result<Outcome> {
    let (p, q, n, m) = a.pqnm()?;
    let f = h(p, q, n as i64, m as i64);
    Ok(Outcome::printed(exact(f.diff(Gamma, 1), f.diff_zw(p, q))))
}

fn pde_eigen(a: &Args, corrected: bool, in_w: bool) -> Result<Outcome> {
    let (p, q, n, m) = a.pqnm()?;
    let f = h(p, q, n as i64, m as i64);
    let (v, ev, factor) = if in_w { (W, m, q) } else { (Z, n, p) };
    let gd = &x(Gamma) * &f.diff_zw(p, q);
    let weight = if corrected { int(factor as i64) } else { int(1) };
    let mut lhs = &x(v) * &f.diff(v, 1);
    lhs.add_scaled(&gd, &weight);
    let rhs = f.scale(&int(ev as i64));
    Ok(if corrected {
        let desc = if in_w {
            "operator w∂_w + qγ∂_z^p∂_w^q"
        } else {
            "operator z∂_z + pγ∂_z^p∂_w^q"
        };
        Outcome::corrected(desc, exact(lhs, rhs))
    } else {
        Outcome::printed(exact(lhs, rhs))
    })
}

fn pde_product(a: &Args, corrected: bool) -> Result<Outcome> {
    let (p, q, n, m) = a.pqnm()?;
    a.pq_positive()?;
    let f = h(p, q, n as i64, m as i64);
    let (wp_, wq_) = if corrected { (int(p as i64), int(q as i64)) } else { (int(1), int(1)) };
    let az = |g: &Poly| {
        let mut out = &x(Z) * g;
        out.add_scaled(&(&x(Gamma) * &g.diff_zw(p - 1, q)), &wp_);
        out
    };
    let bw = |g: &Poly| {
        let mut out = &x(W) * g;
        out.add_scaled(&(&x(Gamma) * &g.diff_zw(p, q - 1)), &wq_);
        out
    };
    let lhs = az(&bw(&f.diff_zw(1, 1)));
    let rhs = f.scale(&int((n * m) as i64));
    Ok(if corrected {
        Outcome::corrected(
            "operator (z + pγ∂_z^{p−1}∂_w^q)(w + qγ∂_z^p∂_w^{q−1})∂_z∂_w",
            exact(lhs, rhs),
        )
    } else {
        Outcome::printed(exact(lhs, rhs))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pochhammer_tail_examples() {
        assert!(pochhammer_tail(1, 0).is_zero());
        assert_eq!(pochhammer_tail(2, 1), Poly::int(2));
    }

    #[test]
    fn rising_moment_generates_rising_factorials() {
        // Σ_n (n)_r x^n/n! = e^x R_r(x), checked through order 8.
        let order = 8;
        for r in 0..4u32 {
            let mut lhs = Poly::zero();
            for n in 0..=order as u32 {
                let c = &Scalar::pochhammer(&int(n as i64), r as u64) * &Scalar::inv_factorial(n as i64);
                lhs.add_term(Monomial::from_pairs(&[(U, n)]), &c);
            }
            let rhs = SeriesUV::from_poly(&x(U), order)
                .exp()
                .unwrap()
                .mul(&SeriesUV::from_poly(&rising_moment(r, U), order));
            assert!(SeriesUV::from_poly(&lhs, order).mismatches(&rhs).is_empty(), "r = {r}");
        }
    }

    #[test]
    fn param_rec_search_finds_a_single_repair() {
        // each point admits k = 2, where the 1/k! weight is visible
        let grid = [(1, 1, 4, 3), (2, 1, 5, 2), (1, 2, 3, 5)];
        assert_eq!(param_rec_repairs(&grid), vec![PARAM_REC_FIX]);
        // with k ≤ 1 everywhere the k! weight cannot be detected
        let shallow = [(1, 1, 2, 1), (2, 1, 3, 2), (1, 2, 4, 3)];
        assert!(param_rec_repairs(&shallow).contains(&PARAM_REC_FIX));
        let mut full = Vec::new();
        for (p, q) in [(1, 1), (2, 1), (1, 2), (2, 2)] {
            for n in 0..=6 {
                for m in 0..=6 {
                    full.push((p, q, n, m));
                }
            }
        }
        assert_eq!(param_rec_repairs(&full), vec![PARAM_REC_FIX]);
    }
}
