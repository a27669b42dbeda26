//! The coefficient domain of operator polynomials.
//!
//! An element is `f00 + f10·ξ + f01·σ + f11·ξσ` with each `fab` a [`RatFunc`].
//! `ξ = (1 + θη/(4ħ²))^(-1/2)` and `σ = (μω/(2ħ))^(1/2)` are kept formal;
//! products reduce `ξ² → 4ħ²/(4ħ² + θη)` and `σ² → μω/(2ħ)`.

use std::fmt;
use std::sync::LazyLock;

use num_complex::Complex64;

use super::gauss::GaussRat;
use super::poly::{Poly, Symbol, NVARS};
use super::ratfunc::{fmt_re_im, RatFunc};

/// Values the formal roots square to. Generic for unspecialized
/// polynomials; substitution produces specialized copies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rules {
    pub xi_sq: RatFunc,
    pub sigma_sq: RatFunc,
}

pub static GENERIC_RULES: LazyLock<Rules> = LazyLock::new(|| {
    let hbar = RatFunc::var(Symbol::Hbar);
    let four_hbar_sq = RatFunc::from_int(4).mul(&hbar.pow(2));
    let eta_theta = RatFunc::var(Symbol::Eta).mul(&RatFunc::var(Symbol::Theta));
    let xi_sq = four_hbar_sq.mul(&four_hbar_sq.add(&eta_theta).inv().unwrap());
    let mu_omega = RatFunc::var(Symbol::Mu).mul(&RatFunc::var(Symbol::Omega));
    let sigma_sq = mu_omega.mul(&RatFunc::from_int(2).mul(&hbar).inv().unwrap());
    Rules { xi_sq, sigma_sq }
});

impl Rules {
    pub fn generic() -> &'static Rules {
        &GENERIC_RULES
    }
}

/// Parity index: bit 0 is the ξ exponent, bit 1 the σ exponent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Grade(pub u8);

impl Grade {
    pub const ONE: Grade = Grade(0);
    pub const XI: Grade = Grade(1);
    pub const SIGMA: Grade = Grade(2);
    pub const XI_SIGMA: Grade = Grade(3);

    pub fn xi(self) -> u8 {
        self.0 & 1
    }

    pub fn sigma(self) -> u8 {
        self.0 >> 1
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct CoeffField {
    parts: [RatFunc; 4],
}

impl CoeffField {
    pub fn zero() -> Self {
        CoeffField::default()
    }

    pub fn one() -> Self {
        Self::from_ratfunc(RatFunc::one())
    }

    pub fn i() -> Self {
        Self::from_gauss(GaussRat::i())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_ratfunc(RatFunc::from_int(n))
    }

    pub fn from_gauss(c: GaussRat) -> Self {
        Self::from_ratfunc(RatFunc::constant(c))
    }

    pub fn from_poly(p: Poly) -> Self {
        Self::from_ratfunc(RatFunc::from_poly(p))
    }

    pub fn from_ratfunc(r: RatFunc) -> Self {
        Self::graded(Grade::ONE, r)
    }

    pub fn var(s: Symbol) -> Self {
        Self::from_ratfunc(RatFunc::var(s))
    }

    pub fn graded(g: Grade, r: RatFunc) -> Self {
        let mut out = CoeffField::zero();
        out.parts[g.0 as usize] = r;
        out
    }

    pub fn xi() -> Self {
        Self::graded(Grade::XI, RatFunc::one())
    }

    pub fn sigma() -> Self {
        Self::graded(Grade::SIGMA, RatFunc::one())
    }

    pub fn part(&self, g: Grade) -> &RatFunc {
        &self.parts[g.0 as usize]
    }

    pub fn parts(&self) -> impl Iterator<Item = (Grade, &RatFunc)> {
        self.parts.iter().enumerate().map(|(k, r)| (Grade(k as u8), r))
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(RatFunc::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.parts[0].is_one() && self.parts[1..].iter().all(RatFunc::is_zero)
    }

    /// The plain rational function when no ξ or σ component is present.
    pub fn as_ratfunc(&self) -> Option<&RatFunc> {
        self.parts[1..].iter().all(RatFunc::is_zero).then_some(&self.parts[0])
    }

    pub fn add(&self, o: &CoeffField) -> CoeffField {
        CoeffField { parts: std::array::from_fn(|k| self.parts[k].add(&o.parts[k])) }
    }

    pub fn sub(&self, o: &CoeffField) -> CoeffField {
        CoeffField { parts: std::array::from_fn(|k| self.parts[k].sub(&o.parts[k])) }
    }

    pub fn neg(&self) -> CoeffField {
        CoeffField { parts: std::array::from_fn(|k| self.parts[k].neg()) }
    }

    pub fn scale_poly(&self, p: &Poly) -> CoeffField {
        CoeffField { parts: std::array::from_fn(|k| self.parts[k].mul_poly(p)) }
    }

    pub fn scale_ratfunc(&self, r: &RatFunc) -> CoeffField {
        CoeffField { parts: std::array::from_fn(|k| self.parts[k].mul(r)) }
    }

    pub fn mul(&self, o: &CoeffField) -> CoeffField {
        self.mul_with(o, Rules::generic())
    }

    pub fn mul_with(&self, o: &CoeffField, rules: &Rules) -> CoeffField {
        let mut out = CoeffField::zero();
        for (ga, a) in self.parts() {
            if a.is_zero() {
                continue;
            }
            for (gb, b) in o.parts() {
                if b.is_zero() {
                    continue;
                }
                let mut t = a.mul(b);
                if ga.xi() + gb.xi() == 2 {
                    t = t.mul(&rules.xi_sq);
                }
                if ga.sigma() + gb.sigma() == 2 {
                    t = t.mul(&rules.sigma_sq);
                }
                let g = (ga.0 ^ gb.0) as usize;
                out.parts[g] = out.parts[g].add(&t);
            }
        }
        out
    }

    pub fn pow_with(&self, e: u32, rules: &Rules) -> CoeffField {
        let mut acc = CoeffField::one();
        for _ in 0..e {
            acc = acc.mul_with(self, rules);
        }
        acc
    }

    /// Flips the sign of the ξ-odd (or σ-odd) components.
    fn conjugate_root(&self, bit: u8) -> CoeffField {
        CoeffField {
            parts: std::array::from_fn(|k| {
                if (k as u8) & bit != 0 {
                    self.parts[k].neg()
                } else {
                    self.parts[k].clone()
                }
            }),
        }
    }

    /// Multiplicative inverse via the two root conjugations.
    pub fn inv_with(&self, rules: &Rules) -> Option<CoeffField> {
        // c·c̄_ξ has no ξ part; multiplying that by its σ-conjugate leaves a
        // plain rational function N, so c⁻¹ = c̄_ξ·(c·c̄_ξ)̄_σ / N.
        let cx = self.conjugate_root(1);
        let a = self.mul_with(&cx, rules);
        let ax = a.conjugate_root(2);
        let norm = a.mul_with(&ax, rules);
        let n = norm.as_ratfunc()?.inv()?;
        Some(cx.mul_with(&ax, rules).scale_ratfunc(&n))
    }

    pub fn inv(&self) -> Option<CoeffField> {
        self.inv_with(Rules::generic())
    }

    pub fn map_parts<E>(&self, mut f: impl FnMut(&RatFunc) -> Result<RatFunc, E>) -> Result<CoeffField, E> {
        let mut parts: [RatFunc; 4] = Default::default();
        for (k, r) in self.parts.iter().enumerate() {
            parts[k] = if r.is_zero() { RatFunc::zero() } else { f(r)? };
        }
        Ok(CoeffField { parts })
    }

    /// Numeric value at an exact parameter point, with `ξ` and `σ` taken as
    /// principal square roots. `None` if a denominator vanishes there.
    pub fn eval_c64(&self, at: &[GaussRat; NVARS]) -> Option<Complex64> {
        let g = Rules::generic();
        let xi = g.xi_sq.eval(at)?.to_c64().sqrt();
        let sigma = g.sigma_sq.eval(at)?.to_c64().sqrt();
        let mut acc = Complex64::default();
        for (grade, r) in self.parts() {
            if r.is_zero() {
                continue;
            }
            let mut v = r.eval(at)?.to_c64();
            if grade.xi() == 1 {
                v *= xi;
            }
            if grade.sigma() == 1 {
                v *= sigma;
            }
            acc += v;
        }
        Some(acc)
    }

    /// Number of non-zero graded components.
    pub fn ncomponents(&self) -> usize {
        self.parts.iter().filter(|r| !r.is_zero()).count()
    }
}

fn grade_suffix(g: Grade) -> &'static str {
    match g.0 {
        0 => "",
        1 => "*xi",
        2 => "*sigma",
        _ => "*xi*sigma",
    }
}

impl fmt::Display for CoeffField {
    /// Each non-zero graded component as `(re, im)` followed by its root
    /// factor, joined with ` + `.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self
            .parts()
            .filter(|(_, r)| !r.is_zero())
            .map(|(g, r)| format!("{}{}", fmt_re_im(r), grade_suffix(g)))
            .collect();
        if items.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", items.join(" + "))
        }
    }
}

impl fmt::Debug for CoeffField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CoeffField({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_square_to_rules() {
        let xi2 = CoeffField::xi().mul(&CoeffField::xi());
        assert_eq!(xi2, CoeffField::from_ratfunc(Rules::generic().xi_sq.clone()));
        let s2 = CoeffField::sigma().mul(&CoeffField::sigma());
        assert_eq!(s2.to_string(), "(mu*omega/(2*hbar), 0)");
    }

    #[test]
    fn general_inverse() {
        let c = CoeffField::from_int(3)
            .add(&CoeffField::xi().scale_poly(&Poly::var(Symbol::Eta)))
            .add(&CoeffField::xi().mul(&CoeffField::sigma()))
            .add(&CoeffField::i().mul(&CoeffField::sigma()));
        let inv = c.inv().unwrap();
        assert!(c.mul(&inv).is_one());
        assert!(CoeffField::zero().inv().is_none());
    }
}
