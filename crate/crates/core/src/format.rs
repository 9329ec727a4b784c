//! Canonical serializations of polynomials: text, LaTeX, JSON, CSV.
//!
//! Terms are always emitted in descending graded-lex order, so identical
//! polynomials serialize to identical bytes.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{Monomial, Poly};
use crate::scalar::Scalar;
use crate::var::Var;

/// Canonical text, e.g. `z^2*w + 2*z*gamma`. Parses back with
/// [`crate::expr::parse_poly_expr`].
pub fn poly_to_text(p: &Poly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, (m, c)) in p.terms().rev().enumerate() {
        let neg = c.is_negative();
        match (idx, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let a = c.abs();
        if m.is_one() {
            out.push_str(&a.to_canonical_string());
            continue;
        }
        if !a.is_one() {
            out.push_str(&a.to_canonical_string());
            out.push('*');
        }
        out.push_str(&monomial_text(m));
    }
    out
}

fn monomial_text(m: &Monomial) -> String {
    m.factors()
        .map(|(v, e)| {
            if e == 1 {
                v.name().to_string()
            } else {
                format!("{}^{}", v.name(), e)
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

/// Order of factors inside a LaTeX term: scalar parameters lead.
const LATEX_FACTOR_ORDER: [Var; 12] = [
    Var::Gamma,
    Var::Gammap,
    Var::T,
    Var::A,
    Var::B,
    Var::C,
    Var::Z,
    Var::W,
    Var::Zp,
    Var::Wp,
    Var::U,
    Var::V,
];

pub fn poly_to_latex(p: &Poly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, (m, c)) in p.terms().rev().enumerate() {
        let neg = c.is_negative();
        match (idx, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let a = c.abs();
        let coeff = if a.is_integer() {
            a.to_canonical_string()
        } else {
            format!("\\frac{{{}}}{{{}}}", a.numer(), a.denom())
        };
        if m.is_one() {
            out.push_str(&coeff);
            continue;
        }
        if !a.is_one() {
            out.push_str(&coeff);
        }
        let factors: Vec<String> = LATEX_FACTOR_ORDER
            .iter()
            .filter(|v| m.exp(**v) > 0)
            .map(|&v| {
                let e = m.exp(v);
                if e == 1 {
                    v.latex().to_string()
                } else {
                    format!("{}^{{{}}}", v.latex(), e)
                }
            })
            .collect();
        for (i, f) in factors.iter().enumerate() {
            out.push_str(f);
            let bare_command = f.starts_with('\\') && f.ends_with(|ch: char| ch.is_ascii_alphabetic());
            if bare_command && i + 1 < factors.len() {
                out.push(' ');
            }
        }
    }
    out
}

/// One term of the JSON form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JsonTerm {
    pub exps: BTreeMap<String, u32>,
    pub num: String,
    pub den: String,
}

pub fn poly_to_json_terms(p: &Poly) -> Vec<JsonTerm> {
    p.terms()
        .rev()
        .map(|(m, c)| JsonTerm {
            exps: m.factors().map(|(v, e)| (v.name().to_string(), e)).collect(),
            num: c.numer().to_string(),
            den: c.denom().to_string(),
        })
        .collect()
}

pub fn poly_from_json_terms(terms: &[JsonTerm]) -> Result<Poly> {
    let mut p = Poly::zero();
    for t in terms {
        let mut pairs = Vec::new();
        for (name, &e) in &t.exps {
            pairs.push((name.parse::<Var>()?, e));
        }
        let bad = |s: &str| Error::Parse {
            pos: 0,
            msg: format!("invalid integer `{s}`"),
        };
        let num: BigInt = t.num.parse().map_err(|_| bad(&t.num))?;
        let den: BigInt = t.den.parse().map_err(|_| bad(&t.den))?;
        p.add_term(Monomial::from_pairs(&pairs), &Scalar::from_parts(num, den)?);
    }
    Ok(p)
}

/// CSV with one row per term: `num,den,<var exponents...>`; the exponent
/// columns are the variables present, in canonical order.
pub fn poly_to_csv(p: &Poly) -> String {
    let vars = p.vars();
    let mut out = String::from("num,den");
    for v in &vars {
        out.push(',');
        out.push_str(v.name());
    }
    out.push('\n');
    for (m, c) in p.terms().rev() {
        out.push_str(&format!("{},{}", c.numer(), c.denom()));
        for v in &vars {
            out.push_str(&format!(",{}", m.exp(*v)));
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use Var::*;

    fn h211() -> Poly {
        let z = Poly::var(Z);
        let w = Poly::var(W);
        let g = Poly::var(Gamma);
        &(&z.pow(2) * &w) + &(&g * &z).scale(&Scalar::from_int(2))
    }

    #[test]
    fn text_form() {
        assert_eq!(poly_to_text(&h211()), "z^2*w + 2*z*gamma");
        assert_eq!(poly_to_text(&Poly::zero()), "0");
        let p = &Poly::var(Z).scale(&Scalar::new(-3, 2)) + &Poly::int(-1);
        assert_eq!(poly_to_text(&p), "-3/2*z - 1");
    }

    #[test]
    fn latex_form() {
        assert_eq!(poly_to_latex(&h211()), "z^{2}w + 2\\gamma z");
        let p = Poly::monomial(Scalar::new(1, 2), &[(Gamma, 2), (W, 1)]);
        assert_eq!(poly_to_latex(&p), "\\frac{1}{2}\\gamma^{2}w");
    }

    #[test]
    fn json_round_trip() {
        let p = &h211() - &Poly::constant(Scalar::new(5, 7));
        let j = poly_to_json_terms(&p);
        assert_eq!(j[0].exps.get("z"), Some(&2));
        assert_eq!(poly_from_json_terms(&j).unwrap(), p);
    }

    #[test]
    fn csv_form() {
        assert_eq!(poly_to_csv(&h211()), "num,den,z,w,gamma\n1,1,2,1,0\n2,1,1,0,1\n");
    }
}
