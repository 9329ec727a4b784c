//! Classical Hermite-type families, built without going through the
//! (p,q) family so they can serve as independent references.

use crate::poly::{Monomial, Poly};
use crate::scalar::Scalar;
use crate::var::Var;

/// Physicists' Hermite polynomial H_n(z) from
/// H_{n+1} = 2z H_n − 2n H_{n−1}, H_0 = 1, H_1 = 2z.
pub fn hermite_physicists(n: u32) -> Poly {
    let two_z = Poly::var(Var::Z).scale(&Scalar::from_int(2));
    let mut prev = Poly::one();
    if n == 0 {
        return prev;
    }
    let mut cur = two_z.clone();
    for k in 1..n {
        let next = &(&two_z * &cur) - &prev.scale(&Scalar::from_int(2 * k as i64));
        prev = cur;
        cur = next;
    }
    cur
}

/// Itô–Hermite (complex Hermite) polynomial with w in place of z̄:
/// H_{n,m}(z, w) = n! m! Σ_{j ≤ n∧m} (−1)^j / j! · z^{n−j} w^{m−j} / ((n−j)! (m−j)!).
pub fn ito_hermite(n: u32, m: u32) -> Poly {
    let nm = &Scalar::factorial(n as u64) * &Scalar::factorial(m as u64);
    let mut out = Poly::zero();
    for j in 0..=n.min(m) {
        let sign = if j % 2 == 0 { Scalar::one() } else { Scalar::from_int(-1) };
        let c = &(&(&(&nm * &sign) * &Scalar::inv_factorial(j as i64))
            * &Scalar::inv_factorial((n - j) as i64))
            * &Scalar::inv_factorial((m - j) as i64);
        out.add_term(Monomial::from_pairs(&[(Var::Z, n - j), (Var::W, m - j)]), &c);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_poly_expr;

    #[test]
    fn low_order_hermite() {
        let p = |s| parse_poly_expr(s, &[Var::Z]).unwrap();
        assert_eq!(hermite_physicists(0), p("1"));
        assert_eq!(hermite_physicists(2), p("4*z^2 - 2"));
        assert_eq!(hermite_physicists(3), p("8*z^3 - 12*z"));
        assert_eq!(hermite_physicists(4), p("16*z^4 - 48*z^2 + 12"));
    }

    #[test]
    fn low_order_ito() {
        let p = |s| parse_poly_expr(s, &[Var::Z, Var::W]).unwrap();
        assert_eq!(ito_hermite(1, 1), p("z*w - 1"));
        assert_eq!(ito_hermite(2, 1), p("z^2*w - 2*z"));
        assert_eq!(ito_hermite(3, 0), p("z^3"));
    }
}
