//! Normal-ordered polynomials in the Heisenberg-Weyl generators
//! `x1, x2, p1, p2` with `[x_i, p_j] = iħδ_ij`.
//!
//! Normal order is global: every monomial is stored as
//! `x1^a x2^b p1^c p2^d`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::field::{CoeffField, Rules};
use super::gauss::GaussRat;
use super::poly::{Exps, Poly, Symbol};

/// Exponents of `x1^a x2^b p1^c p2^d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct NCMonomial(pub [u32; 4]);

impl NCMonomial {
    pub const ONE: NCMonomial = NCMonomial([0; 4]);
    pub const X1: NCMonomial = NCMonomial([1, 0, 0, 0]);
    pub const X2: NCMonomial = NCMonomial([0, 1, 0, 0]);
    pub const P1: NCMonomial = NCMonomial([0, 0, 1, 0]);
    pub const P2: NCMonomial = NCMonomial([0, 0, 0, 1]);

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

const GEN_NAMES: [&str; 4] = ["x1", "x2", "p1", "p2"];

impl fmt::Display for NCMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .zip(GEN_NAMES)
            .filter(|(&e, _)| e > 0)
            .map(|(&e, n)| if e == 1 { n.to_string() } else { format!("{n}^{e}") })
            .collect();
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

fn binomial(n: u32, k: u32) -> BigInt {
    let mut acc = BigInt::from(1);
    for j in 0..k {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::from(1), |acc, j| acc * BigInt::from(j))
}

/// Expansion of `p^c x^a` (one mode) as `Σ_k w_k x^(a-k) p^(c-k)` with
/// `w_k = C(c,k)·C(a,k)·k!` multiplying `(-iħ)^k`.
fn reorder_weights(c: u32, a: u32) -> Vec<BigInt> {
    (0..=c.min(a)).map(|k| binomial(c, k) * binomial(a, k) * factorial(k)).collect()
}

/// Normal-ordered expansion of the word `m1·m2`.
pub fn normal_order_product(m1: NCMonomial, m2: NCMonomial) -> NCPolynomial {
    let [a1, b1, c1, d1] = m1.0;
    let [a2, b2, c2, d2] = m2.0;
    let w1 = reorder_weights(c1, a2);
    let w2 = reorder_weights(d1, b2);
    let mut out = NCPolynomial::zero();
    for (k, wk) in w1.iter().enumerate() {
        for (l, wl) in w2.iter().enumerate() {
            let (k, l) = (k as u32, l as u32);
            let mono = NCMonomial([a1 + a2 - k, b1 + b2 - l, c1 + c2 - k, d1 + d2 - l]);
            let n = GaussRat::real(BigRational::from_integer(wk * wl));
            let c = &n * &GaussRat::neg_i_pow(k + l);
            let coeff = Poly::monomial(Exps::of(Symbol::Hbar, k + l), c);
            out.add_term(mono, CoeffField::from_poly(coeff));
        }
    }
    out
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct NCPolynomial {
    terms: BTreeMap<NCMonomial, CoeffField>,
}

impl NCPolynomial {
    pub fn zero() -> Self {
        NCPolynomial::default()
    }

    pub fn one() -> Self {
        Self::scalar(CoeffField::one())
    }

    pub fn scalar(c: CoeffField) -> Self {
        Self::term(NCMonomial::ONE, c)
    }

    pub fn term(m: NCMonomial, c: CoeffField) -> Self {
        let mut out = Self::zero();
        out.add_term(m, c);
        out
    }

    pub fn generator(m: NCMonomial) -> Self {
        Self::term(m, CoeffField::one())
    }

    pub fn x1() -> Self {
        Self::generator(NCMonomial::X1)
    }

    pub fn x2() -> Self {
        Self::generator(NCMonomial::X2)
    }

    pub fn p1() -> Self {
        Self::generator(NCMonomial::P1)
    }

    pub fn p2() -> Self {
        Self::generator(NCMonomial::P2)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&NCMonomial, &CoeffField)> {
        self.terms.iter()
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &NCMonomial) -> CoeffField {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The coefficient when the polynomial is a multiple of the identity.
    pub fn as_scalar(&self) -> Option<CoeffField> {
        match self.terms.len() {
            0 => Some(CoeffField::zero()),
            1 => self.terms.get(&NCMonomial::ONE).cloned(),
            _ => None,
        }
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(NCMonomial::degree).max().unwrap_or(0)
    }

    pub(crate) fn add_term(&mut self, m: NCMonomial, c: CoeffField) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get().add(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, o: &NCPolynomial) -> NCPolynomial {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, o: &NCPolynomial) -> NCPolynomial {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, c.neg());
        }
        out
    }

    pub fn neg(&self) -> NCPolynomial {
        NCPolynomial { terms: self.terms.iter().map(|(m, c)| (*m, c.neg())).collect() }
    }

    pub fn scale(&self, c: &CoeffField) -> NCPolynomial {
        self.scale_with(c, Rules::generic())
    }

    pub fn scale_with(&self, c: &CoeffField, rules: &Rules) -> NCPolynomial {
        let mut out = NCPolynomial::zero();
        for (m, x) in &self.terms {
            out.add_term(*m, x.mul_with(c, rules));
        }
        out
    }

    /// Product with normal ordering of the result.
    pub fn mul(&self, o: &NCPolynomial) -> NCPolynomial {
        self.mul_with(o, Rules::generic())
    }

    pub fn mul_with(&self, o: &NCPolynomial, rules: &Rules) -> NCPolynomial {
        let mut out = NCPolynomial::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let c = c1.mul_with(c2, rules);
                for (m, w) in normal_order_product(*m1, *m2).terms {
                    // w is a plain polynomial in hbar
                    let w = w.as_ratfunc().expect("ordering weights are scalar").numer().clone();
                    out.add_term(m, c.scale_poly(&w));
                }
            }
        }
        out
    }

    pub fn pow_with(&self, e: u32, rules: &Rules) -> NCPolynomial {
        let mut acc = NCPolynomial::one();
        for _ in 0..e {
            acc = acc.mul_with(self, rules);
        }
        acc
    }

    pub fn commutator(&self, o: &NCPolynomial) -> NCPolynomial {
        self.commutator_with(o, Rules::generic())
    }

    pub fn commutator_with(&self, o: &NCPolynomial, rules: &Rules) -> NCPolynomial {
        self.mul_with(o, rules).sub(&o.mul_with(self, rules))
    }

    pub fn map_coefficients<E>(
        &self,
        mut f: impl FnMut(&CoeffField) -> Result<CoeffField, E>,
    ) -> Result<NCPolynomial, E> {
        let mut out = NCPolynomial::zero();
        for (m, c) in &self.terms {
            out.add_term(*m, f(c)?);
        }
        Ok(out)
    }
}

/// `a·b − b·a`, normal-ordered.
pub fn commutator(a: &NCPolynomial, b: &NCPolynomial) -> NCPolynomial {
    a.commutator(b)
}

/// Bilinear product, normal-ordered.
pub fn poly_mul(a: &NCPolynomial, b: &NCPolynomial) -> NCPolynomial {
    a.mul(b)
}

impl fmt::Display for NCPolynomial {
    /// Terms in ascending monomial order; each coefficient component is shown
    /// as `(re, im)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let items: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let coeff = if c.ncomponents() > 1 { format!("[{c}]") } else { c.to_string() };
                if *m == NCMonomial::ONE {
                    coeff
                } else {
                    format!("{coeff}*{m}")
                }
            })
            .collect();
        write!(f, "{}", items.join(" + "))
    }
}

impl fmt::Debug for NCPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NCPolynomial({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ihbar() -> CoeffField {
        CoeffField::i().scale_poly(&Poly::var(Symbol::Hbar))
    }

    #[test]
    fn ordered_word_is_unchanged() {
        let p = normal_order_product(NCMonomial::X1, NCMonomial::P1);
        assert_eq!(p, NCPolynomial::generator(NCMonomial([1, 0, 1, 0])));
    }

    #[test]
    fn p_x_reorders_with_minus_i_hbar() {
        let p = normal_order_product(NCMonomial::P1, NCMonomial::X1);
        let expect = NCPolynomial::generator(NCMonomial([1, 0, 1, 0])).sub(&NCPolynomial::scalar(ihbar()));
        assert_eq!(p, expect);
        // different modes commute
        let q = normal_order_product(NCMonomial::P2, NCMonomial::X1);
        assert_eq!(q, NCPolynomial::generator(NCMonomial([1, 0, 0, 1])));
    }

    #[test]
    fn p_squared_x() {
        let p = normal_order_product(NCMonomial([0, 0, 2, 0]), NCMonomial::X1);
        let two_ihbar = ihbar().scale_poly(&Poly::from_int(2));
        let expect = NCPolynomial::generator(NCMonomial([1, 0, 2, 0])).sub(&NCPolynomial::term(NCMonomial::P1, two_ihbar));
        assert_eq!(p, expect);
    }

    #[test]
    fn basic_commutators() {
        assert!(commutator(&NCPolynomial::x1(), &NCPolynomial::x2()).is_zero());
        assert_eq!(commutator(&NCPolynomial::x1(), &NCPolynomial::p1()), NCPolynomial::scalar(ihbar()));
        let x1p1 = NCPolynomial::x1().mul(&NCPolynomial::p1());
        assert_eq!(commutator(&x1p1, &NCPolynomial::p1()), NCPolynomial::term(NCMonomial::P1, ihbar()));
    }

    #[test]
    fn poly_mul_examples() {
        let (x1, p1) = (NCPolynomial::x1(), NCPolynomial::p1());
        let lhs = poly_mul(&x1.add(&p1), &x1.sub(&p1));
        // −x1·p1 + p1·x1 = −[x1, p1]
        let expect = x1.mul(&x1).sub(&p1.mul(&p1)).sub(&NCPolynomial::scalar(ihbar()));
        assert_eq!(lhs, expect);
        assert!(poly_mul(&NCPolynomial::zero(), &x1).is_zero());
        assert_eq!(poly_mul(&NCPolynomial::one(), &lhs), lhs);
    }
}
