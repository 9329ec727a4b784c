use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// How a tag is checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TagKind {
    /// Finite polynomial identity, checked as an exact zero difference.
    Algebraic,
    /// Generating-function identity, checked coefficient-wise through an order.
    Series,
    /// Differential equation satisfied by the family.
    Pde,
}

macro_rules! tags {
    ($($variant:ident => $name:literal, $kind:ident, $formula:literal;)*) => {
        /// One identity of the catalog.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub enum Tag {
            $($variant,)*
        }

        impl Tag {
            pub const ALL: &'static [Tag] = &[$(Tag::$variant,)*];

            pub fn name(self) -> &'static str {
                match self {
                    $(Tag::$variant => $name,)*
                }
            }

            pub fn kind(self) -> TagKind {
                match self {
                    $(Tag::$variant => TagKind::$kind,)*
                }
            }

            /// The identity as stated (printed form), in plain notation.
            /// H means H_{n,m}^{(p,q)}, GH_n^{(p)} the one-variable family,
            /// D = ∂_z^p ∂_w^q.
            pub fn formula(self) -> &'static str {
                match self {
                    $(Tag::$variant => $formula,)*
                }
            }
        }

        impl FromStr for Tag {
            type Err = Error;
            fn from_str(s: &str) -> Result<Self> {
                match s.to_ascii_uppercase().as_str() {
                    $($name => Ok(Tag::$variant),)*
                    _ => Err(Error::UnknownTag(s.to_string())),
                }
            }
        }
    };
}

tags! {
    Symmetry => "SYMMETRY", Algebraic,
        "H_{n,m}^{(p,q)}(z,w|γ) = H_{m,n}^{(q,p)}(w,z|γ)";
    Hypergeom => "HYPERGEOM", Algebraic,
        "H = z^n w^m · (p+q)F0(−n/p, …, (p−1−n)/p, −m/q, …, (q−1−m)/q; ; (−p)^p (−q)^q γ / (z^p w^q))";
    Hyp2F0To1F1 => "HYP_2F0_1F1", Algebraic,
        "2F0(−n, −m; ; −1/z) = z^{−(n∧m)} (n∨m)!/|n−m|! · 1F1(−(n∧m); |n−m|+1; z)";
    OriginValue => "ORIGIN_VALUE", Algebraic,
        "H(0,0|γ) = n!/⌊n/p⌋! · γ^{⌊n/p⌋} δ_{⌊n/p⌋,⌊m/q⌋} when p|n and q|m; H(0,w|γ) = 0 if p∤n; H(z,0|γ) = 0 if q∤m";
    SpecialPq => "SPECIAL_PQ", Algebraic,
        "H_{p,q}^{(p,q)}(z,w|0) = z^p w^q + γ p! q!";
    GenPartialU => "GEN_PARTIAL_U", Series,
        "Σ_n H u^n/n! = GH_m^{(q)}(w|u^p γ) e^{zu}";
    GenPartialV => "GEN_PARTIAL_V", Series,
        "Σ_m H v^m/m! = GH_n^{(p)}(z|v^q γ) e^{wv}";
    GenFull => "GEN_FULL", Series,
        "Σ_{n,m} H u^n v^m/(n! m!) = e^{zu + wv + γ u^p v^q}";
    Homogeneity => "HOMOGENEITY", Algebraic,
        "a^n b^m H(z,w|γ) = H(az, bw|γ a^p b^q)";
    Limit => "LIMIT", Algebraic,
        "t^{n+m} H(z/t, w/t|γ) = H(z,w|t^{p+q} γ), whose t⁰ part is z^n w^m";
    GenPochhammerG => "GEN_POCHHAMMER_G", Series,
        "Σ (n)_j (m)_k H u^n v^m/(n! m!) = uvzw e^{zu+wv+γu^p v^q} ((uz)^{j−1} + P_{j−1}^j(uz)) ((vw)^{k−1} + P_{k−1}^k(vw))";
    GenPochhammerS => "GEN_POCHHAMMER_S", Series,
        "Σ (a)_n (b)_m H u^n v^m/(n! m!) = (1−uz)^{−a} (1−vw)^{−b} (p+q)F0(a/p, …, (a+p−1)/p, b/q, …, (b+q−1)/q; ; p^p q^q γ uv / ((1−uz)^p (1−vw)^q))";
    RungeGeneral => "RUNGE_GENERAL", Algebraic,
        "H(z+z', w+w'|γ+γ') = Σ_{k,j} C(n,k) C(m,j) H_{k,j}(z,w|γ) H_{n−k,m−j}(z',w'|γ')";
    RungeCancel => "RUNGE_CANCEL", Algebraic,
        "Σ_{k,j} C(n,k) C(m,j) H_{k,j}(z/2, w/2|γ) H_{n−k,m−j}(z/2, w/2|−γ) = z^n w^m";
    RungeHalf => "RUNGE_HALF", Algebraic,
        "H(z,w|γ) = Σ_{k,j} C(n,k) C(m,j) H_{k,j}(z,w|2^{p+q−1} γ) H_{n−k,m−j}(z,w|2^{p+q−1} γ)";
    RungeScaled => "RUNGE_SCALED", Algebraic,
        "H((z+z')/2^{1/(2p)}, (w+w')/2^{1/(2q)}|γ) = 2^{−(n/(2p) + m/(2q))} Σ_{k,j} C(n,k) C(m,j) H_{k,j}(z,w|γ) H_{n−k,m−j}(z',w'|γ)";
    MultC => "MULT_C", Algebraic,
        "H(z,w|cγ) = n! m! Σ_k (c−1)^k γ^k/k! · H_{n−pk,m−qk}(z,w|γ)/((n−pk)! (m−qk)!)";
    MultAbc => "MULT_ABC", Algebraic,
        "H(az,bw|cγ) = n! m! Σ_k (c − a^p b^q)^k γ^k a^{n−pk} b^{m−qk}/(k! (n−pk)! (m−qk)!) · H_{n−pk,m−qk}(z,w|γ)";
    MultGh => "MULT_GH", Algebraic,
        "GH_n^{(p)}(az|cγ) = n! Σ_k (c − a^p)^k γ^k/k! · a^{n−pk}/(n−pk)! · GH_{n−pk}^{(p)}(z|γ)";
    DerivZ => "DERIV_Z", Algebraic,
        "∂_z H = n H_{n−1,m}";
    DerivW => "DERIV_W", Algebraic,
        "∂_w H = m H_{n,m−1}";
    DerivGamma => "DERIV_GAMMA", Algebraic,
        "∂_γ H = ∂_z^p ∂_w^q H";
    DerivJk => "DERIV_JK", Algebraic,
        "∂_z^j ∂_w^k H = n!/(n−j)! · m!/(m−k)! · H_{n−j,m−k} for j ≤ n, k ≤ m, and 0 otherwise";
    DerivGammaK => "DERIV_GAMMA_K", Algebraic,
        "∂_γ^k H = n!/(n−pk)! · m!/(m−qk)! · H_{n−pk,m−qk} for k ≤ ⌊n/p⌋∧⌊m/q⌋, and 0 otherwise";
    InverseSum => "INVERSE_SUM", Algebraic,
        "z^n w^m = n! m! Σ_k (−γ)^k/k! · H_{n−pk,m−qk}/((n−pk)! (m−qk)!)";
    InverseOp => "INVERSE_OP", Algebraic,
        "z^n w^m = e^{−γD} H";
    RecRaiseN => "REC_RAISE_N", Algebraic,
        "H_{n+1,m} = z H + γ p! q! C(n,p−1) C(m,q) H_{n+1−p,m−q}";
    RecRaiseNOp => "REC_RAISE_N_OP", Algebraic,
        "H_{n+1,m} = (z + pγ ∂_z^{p−1} ∂_w^q) H";
    RecRaiseM => "REC_RAISE_M", Algebraic,
        "H_{n,m+1} = w H + γ p! q! C(n,p) C(m,q−1) H_{n−p,m−1−q}";
    RecRaiseMOp => "REC_RAISE_M_OP", Algebraic,
        "H_{n,m+1} = (w + qγ ∂_z^p ∂_w^{q−1}) H";
    Creation => "CREATION", Algebraic,
        "H = (z + pγ ∂_z^{p−1} ∂_w^q)^n {w^m} (q ≥ 1), (z + pγ ∂_z^{p−1})^n {w^m} (q = 0)";
    CreationBoth => "CREATION_BOTH", Algebraic,
        "H = (z + pγ ∂_z^{p−1} ∂_w^q)^n (w + qγ ∂_z^p ∂_w^{q−1})^m (1)";
    ParamRec => "PARAM_REC", Algebraic,
        "H^{(p+1,q)} = n! m! Σ_k Σ_{j≤k} C(j,k) γ^k (−1)^{k−j} H^{(p,q)}_{n−j−pk,m−k}/((n−j−pk)! (m−qk)!)";
    ParamOpP => "PARAM_OP_P", Algebraic,
        "H^{(p+1,q)} = e^{γ(∂_z − 1)D} H^{(p,q)}";
    ParamOpQ => "PARAM_OP_Q", Algebraic,
        "H^{(p,q+1)} = e^{γ(∂_w − 1)D} H^{(p,q)}";
    ParamOpPq => "PARAM_OP_PQ", Algebraic,
        "H^{(p+1,q+1)} = e^{γ(∂_z + ∂_w − 2)D} H^{(p,q)}";
    NielsenN => "NIELSEN_N", Algebraic,
        "H_{n+n',m}(z,w) = Σ_{i,j} C(n,i) C(n',j) (z−z')^{i+j} H_{n+n'−i−j,m}(z',w)";
    NielsenM => "NIELSEN_M", Algebraic,
        "H_{n,m+m'}(z,w) = Σ_{k,l} C(m,k) C(m',l) (w−w')^{k+l} H_{n,m+m'−k−l}(z,w')";
    NielsenFull => "NIELSEN_FULL", Algebraic,
        "H_{n+n',m+m'}(z,w) = Σ_{i,j,k,l} C(n,i) C(n',j) C(m,k) C(m',l) (z−z')^{i+j} (w−w')^{k+l} H_{n+n'−i−j,m+m'−k−l}(z',w')";
    AddZw => "ADD_ZW", Algebraic,
        "H(z+z', w+w'|γ) = Σ_{i,j} C(n,i) C(m,j) z^i w^j H_{n−i,m−j}(z',w'|γ)";
    AddHalf => "ADD_HALF", Algebraic,
        "H(z,w|γ) = 2^{n+m} Σ_{i,j} C(n,i) C(m,j) z^i w^j H_{n−i,m−j}(z,w|2^{p+q−1} γ)";
    ConnGhFromPq => "CONN_GH_FROM_PQ", Algebraic,
        "GH_n^{(p)}(z|γ) = Σ_k C(n,k) H_{n−k,k}^{(p−q,q)}(z−w, w|γ)";
    ConnGhSum => "CONN_GH_SUM", Algebraic,
        "GH_n^{(p+q)}(z+w|γ) = Σ_k C(n,k) H_{n−k,k}^{(p,q)}(z,w|γ)";
    ConnIto => "CONN_ITO", Algebraic,
        "Hermite H_n(z) = Σ_k C(n,k) H_{n−k,k}^{(1,1)}(z−w, w|−1), w standing for the conjugate of z";
    ConnPqFromGh => "CONN_PQ_FROM_GH", Algebraic,
        "H = n! m! Σ_{k,j,l,i} (−2)^{−l−i} (−γ)^{k+j}/(l! i! (k−l)! (j−i)!) · GH_{n−p(l+k)}^{(p)}(z|γ)/(n−p(l+k))! · GH_{m−q(i+j)}^{(q)}(w|γ)/(m−q(i+j))!";
    PdeHeat => "PDE_HEAT", Pde,
        "(∂_γ − ∂_z^p ∂_w^q) H = 0";
    PdeEigenN => "PDE_EIGEN_N", Pde,
        "(z∂_z + γ ∂_z^p ∂_w^q) H = n H";
    PdeEigenM => "PDE_EIGEN_M", Pde,
        "(w∂_w + γ ∂_z^p ∂_w^q) H = m H";
    PdeProduct => "PDE_PRODUCT", Pde,
        "(z + γ ∂_z^{p−1} ∂_w^q)(w + γ ∂_z^p ∂_w^{q−1}) ∂_z ∂_w H = nm H";
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl serde::Serialize for Tag {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for &t in Tag::ALL {
            assert_eq!(t.name().parse::<Tag>().unwrap(), t);
        }
        assert!("NOPE".parse::<Tag>().is_err());
        assert_eq!("symmetry".parse::<Tag>().unwrap(), Tag::Symmetry);
    }
}
