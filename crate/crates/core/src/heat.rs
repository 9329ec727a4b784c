//! Polynomial solutions of c ∂_z^p ∂_w^q u = ∂_t u.
//!
//! Each monomial z^n w^m of the initial datum evolves into
//! H_{n,m}^{(p,q)}(z, w | c t).

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::{exp_gamma_d, h};
use crate::poly::{Monomial, Poly};
use crate::scalar::Scalar;
use crate::var::Var;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeatProblem {
    pub p: u32,
    pub q: u32,
    pub c: Scalar,
    pub initial: Poly,
}

impl HeatProblem {
    pub fn new(p: u32, q: u32, c: Scalar, initial: Poly) -> Result<Self> {
        let prob = HeatProblem { p, q, c, initial };
        prob.validate()?;
        Ok(prob)
    }

    pub fn validate(&self) -> Result<()> {
        if self.p + self.q == 0 {
            return Err(Error::InvalidParams("heat equation needs p + q >= 1".to_string()));
        }
        if let Some(v) = self.initial.vars().into_iter().find(|v| !matches!(v, Var::Z | Var::W)) {
            return Err(Error::DisallowedVariable(v.name().to_string()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeatSolution {
    /// Polynomial in z, w, t.
    pub u: Poly,
}

/// Maps each c_{nm} z^n w^m to c_{nm} H_{n,m}^{(p,q)}(z,w|γ) and then sets γ = c t.
pub fn solve(problem: &HeatProblem) -> Result<HeatSolution> {
    problem.validate()?;
    let mut acc = Poly::zero();
    for (mono, coeff) in problem.initial.terms() {
        let n = mono.exp(Var::Z) as i64;
        let m = mono.exp(Var::W) as i64;
        acc.add_scaled(&h(problem.p, problem.q, n, m), coeff);
    }
    let ct = Poly::var(Var::T).scale(&problem.c);
    Ok(HeatSolution {
        u: acc.subst(&[(Var::Gamma, ct)]),
    })
}

/// c ∂_z^p ∂_w^q u − ∂_t u.
pub fn residual(problem: &HeatProblem, u: &Poly) -> Poly {
    &u.diff_zw(problem.p, problem.q).scale(&problem.c) - &u.diff(Var::T, 1)
}

/// e^{c·time·∂_z^p∂_w^q} f, with `time` any polynomial free of z and w.
/// An operator-side route to the same solution, used for the semigroup check.
pub fn propagate(f: &Poly, p: u32, q: u32, c: &Scalar, time: &Poly) -> Poly {
    exp_gamma_d(f, p, q, &time.scale(c))
}

/// Outcome of the property checks on one random initial datum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HeatCheck {
    pub p: u32,
    pub q: u32,
    pub c: String,
    pub initial: String,
    pub residual_zero: bool,
    pub initial_recovered: bool,
    pub linear: bool,
    pub semigroup: bool,
}

impl HeatCheck {
    pub fn passed(&self) -> bool {
        self.residual_zero && self.initial_recovered && self.linear && self.semigroup
    }
}

/// Runs every solution invariant on `f`; `g` is a second datum for the
/// linearity check and `lambda` the scaling factor.
pub fn check_invariants(
    p: u32,
    q: u32,
    c: &Scalar,
    f: &Poly,
    g: &Poly,
    lambda: &Scalar,
) -> Result<HeatCheck> {
    let prob = HeatProblem::new(p, q, c.clone(), f.clone())?;
    let u = solve(&prob)?.u;
    let residual_zero = residual(&prob, &u).is_zero();
    let initial_recovered = u.eval(&[(Var::T, Scalar::zero())]) == *f;

    let with = |init: Poly| -> Result<Poly> {
        Ok(solve(&HeatProblem::new(p, q, c.clone(), init)?)?.u)
    };
    let ug = with(g.clone())?;
    let sum_ok = with(f + g)? == &u + &ug;
    let scale_ok = with(f.scale(lambda))? == u.scale(lambda);

    // two steps of lengths t1 = a and t2 = b against one step of a + b
    let (t1, t2) = (Poly::var(Var::A), Poly::var(Var::B));
    let two_step = propagate(&propagate(f, p, q, c, &t1), p, q, c, &t2);
    let one_step = u.subst(&[(Var::T, &t1 + &t2)]);
    let semigroup = two_step == one_step;

    Ok(HeatCheck {
        p,
        q,
        c: c.to_canonical_string(),
        initial: f.to_string(),
        residual_zero,
        initial_recovered,
        linear: sum_ok && scale_ok,
        semigroup,
    })
}

/// Random polynomial in z, w with degree ≤ `max_deg` in each variable and
/// small rational coefficients.
pub fn random_initial<R: Rng>(rng: &mut R, max_deg: u32) -> Poly {
    let nterms = rng.gen_range(1..=6);
    let mut f = Poly::zero();
    for _ in 0..nterms {
        let n = rng.gen_range(0..=max_deg);
        let m = rng.gen_range(0..=max_deg);
        let num = rng.gen_range(-9i64..=9);
        let den = rng.gen_range(1i64..=5);
        f.add_term(
            Monomial::from_pairs(&[(Var::Z, n), (Var::W, m)]),
            &Scalar::new(num, den),
        );
    }
    if f.is_zero() {
        f = Poly::one();
    }
    f
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_poly_expr;

    fn parse(s: &str) -> Poly {
        parse_poly_expr(s, &[Var::Z, Var::W, Var::T]).unwrap()
    }

    fn solve_str(f: &str, p: u32, q: u32, c: Scalar) -> Poly {
        solve(&HeatProblem::new(p, q, c, parse(f)).unwrap()).unwrap().u
    }

    #[test]
    fn solve_examples() {
        assert_eq!(solve_str("z^2*w", 1, 1, Scalar::one()), parse("z^2*w + 2*t*z"));
        for (p, q) in [(1, 1), (2, 0), (0, 3), (2, 2)] {
            assert_eq!(solve_str("1", p, q, Scalar::from_int(5)), Poly::one());
        }
        assert_eq!(solve_str("z^3", 2, 0, Scalar::one()), parse("z^3 + 6*t*z"));
    }

    #[test]
    fn residual_examples() {
        let prob = HeatProblem::new(1, 1, Scalar::one(), parse("z^2*w")).unwrap();
        let u = solve(&prob).unwrap().u;
        assert!(residual(&prob, &u).is_zero());
        // an unevolved datum is not a solution
        assert_eq!(residual(&prob, &prob.initial), parse("2*z"));
        let degenerate = HeatProblem::new(1, 1, Scalar::zero(), parse("z^2*w")).unwrap();
        assert!(residual(&degenerate, &degenerate.initial).is_zero());
    }

    #[test]
    fn rejects_bad_problems() {
        assert!(HeatProblem::new(0, 0, Scalar::one(), parse("z")).is_err());
        assert!(matches!(
            HeatProblem::new(1, 1, Scalar::one(), parse("t*z")),
            Err(Error::DisallowedVariable(_))
        ));
    }

    #[test]
    fn invariants_on_a_fixed_datum() {
        let f = parse("3/2*z^4*w^2 - w^5 + 7");
        let g = parse("z*w - 2/3*z^6");
        for (p, q) in [(1, 1), (2, 1), (0, 2), (3, 3)] {
            let chk = check_invariants(p, q, &Scalar::new(3, 7), &f, &g, &Scalar::new(-5, 2)).unwrap();
            assert!(chk.passed(), "{chk:?}");
        }
    }
}
