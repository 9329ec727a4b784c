//! Ring variables.
//!
//! The declaration order of [`Var`] is the canonical variable order: it fixes
//! the graded-lexicographic monomial order and therefore every serialized form.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;

pub const NVARS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(u8)]
pub enum Var {
    Z = 0,
    W,
    Gamma,
    T,
    /// z′
    Zp,
    /// w′
    Wp,
    /// γ′
    Gammap,
    A,
    B,
    C,
    U,
    V,
}

impl Var {
    pub const ALL: [Var; NVARS] = [
        Var::Z,
        Var::W,
        Var::Gamma,
        Var::T,
        Var::Zp,
        Var::Wp,
        Var::Gammap,
        Var::A,
        Var::B,
        Var::C,
        Var::U,
        Var::V,
    ];

    #[inline]
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Var {
        Var::ALL[i]
    }

    /// ASCII spelling used by every emitted document.
    pub fn name(self) -> &'static str {
        match self {
            Var::Z => "z",
            Var::W => "w",
            Var::Gamma => "gamma",
            Var::T => "t",
            Var::Zp => "zp",
            Var::Wp => "wp",
            Var::Gammap => "gammap",
            Var::A => "a",
            Var::B => "b",
            Var::C => "c",
            Var::U => "u",
            Var::V => "v",
        }
    }

    pub fn latex(self) -> &'static str {
        match self {
            Var::Z => "z",
            Var::W => "w",
            Var::Gamma => "\\gamma",
            Var::T => "t",
            Var::Zp => "z'",
            Var::Wp => "w'",
            Var::Gammap => "\\gamma'",
            Var::A => "a",
            Var::B => "b",
            Var::C => "c",
            Var::U => "u",
            Var::V => "v",
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Var {
    type Err = Error;

    /// Accepts the ASCII names, `g`/`gp` shorthands, and Unicode γ, primes.
    fn from_str(s: &str) -> Result<Var, Error> {
        Ok(match s {
            "z" => Var::Z,
            "w" => Var::W,
            "gamma" | "g" | "γ" => Var::Gamma,
            "t" => Var::T,
            "zp" | "z'" | "z′" => Var::Zp,
            "wp" | "w'" | "w′" => Var::Wp,
            "gammap" | "gp" | "g'" | "γ'" | "γ′" | "gamma'" => Var::Gammap,
            "a" => Var::A,
            "b" => Var::B,
            "c" => Var::C,
            "u" => Var::U,
            "v" => Var::V,
            _ => return Err(Error::DisallowedVariable(s.to_string())),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for v in Var::ALL {
            assert_eq!(v.name().parse::<Var>().unwrap(), v);
            assert_eq!(Var::from_index(v.index()), v);
        }
        assert_eq!("γ".parse::<Var>().unwrap(), Var::Gamma);
        assert!("x".parse::<Var>().is_err());
    }
}
