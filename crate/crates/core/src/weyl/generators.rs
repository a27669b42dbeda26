//! Tilde generators and ladder operators as polynomials in `x1, x2, p1, p2`.

use std::fmt;
use std::str::FromStr;

use super::field::CoeffField;
use super::gauss::GaussRat;
use super::ncpoly::NCPolynomial;
use super::poly::{Poly, Symbol};
use super::ratfunc::RatFunc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GeneratorKind {
    X1,
    X2,
    P1,
    P2,
    TX1,
    TX2,
    TP1,
    TP2,
    A1,
    A2,
    A1DAG,
    A2DAG,
}

impl GeneratorKind {
    pub const ALL: [GeneratorKind; 12] = [
        Self::X1,
        Self::X2,
        Self::P1,
        Self::P2,
        Self::TX1,
        Self::TX2,
        Self::TP1,
        Self::TP2,
        Self::A1,
        Self::A2,
        Self::A1DAG,
        Self::A2DAG,
    ];

    /// Name used by the expression grammar.
    pub fn name(self) -> &'static str {
        match self {
            Self::X1 => "x1",
            Self::X2 => "x2",
            Self::P1 => "p1",
            Self::P2 => "p2",
            Self::TX1 => "tx1",
            Self::TX2 => "tx2",
            Self::TP1 => "tp1",
            Self::TP2 => "tp2",
            Self::A1 => "a1",
            Self::A2 => "a2",
            Self::A1DAG => "a1d",
            Self::A2DAG => "a2d",
        }
    }

    pub fn expand(self) -> NCPolynomial {
        match self {
            Self::X1 => NCPolynomial::x1(),
            Self::X2 => NCPolynomial::x2(),
            Self::P1 => NCPolynomial::p1(),
            Self::P2 => NCPolynomial::p2(),
            Self::TX1 | Self::TX2 | Self::TP1 | Self::TP2 => tilde_generator(self),
            Self::A1 => ladder_operator(1, false),
            Self::A2 => ladder_operator(2, false),
            Self::A1DAG => ladder_operator(1, true),
            Self::A2DAG => ladder_operator(2, true),
        }
    }
}

impl fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GeneratorKind {
    type Err = ();
    fn from_str(s: &str) -> Result<Self, ()> {
        Self::ALL.into_iter().find(|k| k.name() == s).ok_or(())
    }
}

/// `s/(2ħ)` as a rational function.
fn half_over_hbar(s: Symbol) -> RatFunc {
    RatFunc::var(s).mul(&RatFunc::from_poly(Poly::var(Symbol::Hbar).scale(&GaussRat::from_int(2))).inv().unwrap())
}

/// `x̃_i = ξ(x_i − θε_ij p_j/(2ħ))`, `p̃_i = ξ(p_i + ηε_ij x_j/(2ħ))`, `ε₁₂ = 1`.
///
/// # Panics
/// If `kind` is not one of the four tilde generators.
pub fn tilde_generator(kind: GeneratorKind) -> NCPolynomial {
    let th = CoeffField::from_ratfunc(half_over_hbar(Symbol::Theta));
    let et = CoeffField::from_ratfunc(half_over_hbar(Symbol::Eta));
    let inner = match kind {
        GeneratorKind::TX1 => NCPolynomial::x1().sub(&NCPolynomial::p2().scale(&th)),
        GeneratorKind::TX2 => NCPolynomial::x2().add(&NCPolynomial::p1().scale(&th)),
        GeneratorKind::TP1 => NCPolynomial::p1().add(&NCPolynomial::x2().scale(&et)),
        GeneratorKind::TP2 => NCPolynomial::p2().sub(&NCPolynomial::x1().scale(&et)),
        other => panic!("{other} is not a tilde generator"),
    };
    inner.scale(&CoeffField::xi())
}

/// `ã_i† = σ(x̃_i − i p̃_i/(μω))`; without the dagger the sign of `i` flips.
///
/// # Panics
/// If `mode` is not 1 or 2.
pub fn ladder_operator(mode: u8, dagger: bool) -> NCPolynomial {
    let (tx, tp) = match mode {
        1 => (GeneratorKind::TX1, GeneratorKind::TP1),
        2 => (GeneratorKind::TX2, GeneratorKind::TP2),
        _ => panic!("mode must be 1 or 2, got {mode}"),
    };
    let mu_omega = RatFunc::var(Symbol::Mu).mul(&RatFunc::var(Symbol::Omega));
    let i = if dagger { -GaussRat::i() } else { GaussRat::i() };
    let c = CoeffField::from_ratfunc(mu_omega.inv().unwrap().scale(&i));
    let x = tilde_generator(tx);
    let p = tilde_generator(tp).scale(&c);
    x.add(&p).scale(&CoeffField::sigma())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::ncpoly::NCMonomial;

    #[test]
    fn names_round_trip() {
        for k in GeneratorKind::ALL {
            assert_eq!(k.name().parse::<GeneratorKind>(), Ok(k));
        }
    }

    #[test]
    fn tilde_x1_has_xi_coefficients() {
        let tx1 = tilde_generator(GeneratorKind::TX1);
        assert_eq!(tx1.nterms(), 2);
        assert_eq!(tx1.coefficient(&NCMonomial::X1), CoeffField::xi());
        assert_eq!(tx1.coefficient(&NCMonomial::P2).to_string(), "(-theta/(2*hbar), 0)*xi");
    }

    #[test]
    fn ladder_difference_is_momentum() {
        let d = ladder_operator(1, false).sub(&ladder_operator(1, true));
        // 2iσ p̃₁/(μω)
        let mu_omega = RatFunc::var(Symbol::Mu).mul(&RatFunc::var(Symbol::Omega));
        let c = CoeffField::from_ratfunc(mu_omega.inv().unwrap().scale(&(&GaussRat::i() * &GaussRat::from_int(2))))
            .mul(&CoeffField::sigma());
        assert_eq!(d, tilde_generator(GeneratorKind::TP1).scale(&c));
    }
}
