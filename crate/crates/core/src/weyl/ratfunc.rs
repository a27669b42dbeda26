use std::fmt;

use super::gauss::GaussRat;
use super::poly::{gcd, integer_scale, Poly, Symbol, NVARS};

/// Reduced fraction of parameter polynomials.
///
/// Canonical form: `gcd(num, den) = 1`, `den` monic in lexicographic order,
/// zero is `0/1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl Default for RatFunc {
    fn default() -> Self {
        RatFunc::zero()
    }
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        RatFunc::from_poly(Poly::one())
    }

    pub fn from_int(n: i64) -> Self {
        RatFunc::from_poly(Poly::from_int(n))
    }

    pub fn constant(c: GaussRat) -> Self {
        RatFunc::from_poly(Poly::constant(c))
    }

    pub fn var(s: Symbol) -> Self {
        RatFunc::from_poly(Poly::var(s))
    }

    pub fn from_poly(num: Poly) -> Self {
        RatFunc { num, den: Poly::one() }
    }

    /// Builds `num / den`; returns `None` when `den` is zero.
    pub fn new(num: Poly, den: Poly) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        Some(Self::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RatFunc::zero();
        }
        if den.is_constant() {
            let inv = den.constant_term().inv().expect("nonzero denominator");
            return RatFunc { num: num.scale(&inv), den: Poly::one() };
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        };
        let lc_inv = den.leading().map(|(_, c)| c.inv().expect("nonzero")).unwrap();
        RatFunc { num: num.scale(&lc_inv), den: den.scale(&lc_inv) }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.den.is_one() && self.num.is_constant()
    }

    pub fn add(&self, o: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            let num = &self.num + &o.num;
            if self.den.is_one() {
                return RatFunc { num, den: Poly::one() };
            }
            return Self::reduce(num, self.den.clone());
        }
        let num = &(&self.num * &o.den) + &(&o.num * &self.den);
        Self::reduce(num, &self.den * &o.den)
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }

    pub fn sub(&self, o: &RatFunc) -> RatFunc {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &RatFunc) -> RatFunc {
        if self.is_zero() || o.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return RatFunc { num: &self.num * &o.num, den: Poly::one() };
        }
        Self::reduce(&self.num * &o.num, &self.den * &o.den)
    }

    pub fn mul_poly(&self, p: &Poly) -> RatFunc {
        if self.den.is_one() {
            return RatFunc { num: &self.num * p, den: Poly::one() };
        }
        Self::reduce(&self.num * p, self.den.clone())
    }

    pub fn scale(&self, c: &GaussRat) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero();
        }
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn inv(&self) -> Option<RatFunc> {
        if self.is_zero() {
            return None;
        }
        Some(Self::reduce(self.den.clone(), self.num.clone()))
    }

    pub fn pow(&self, e: u32) -> RatFunc {
        RatFunc { num: self.num.pow(e), den: self.den.pow(e) }
    }

    pub fn conj(&self) -> RatFunc {
        Self::reduce(self.num.conj(), self.den.conj())
    }

    /// Splits into real and imaginary rational functions (over `Q`).
    pub fn split_re_im(&self) -> (RatFunc, RatFunc) {
        let (num, den) = if self.den.has_real_coefficients() {
            (self.num.clone(), self.den.clone())
        } else {
            let dc = self.den.conj();
            (&self.num * &dc, &self.den * &dc)
        };
        let (re, im) = num.split_re_im();
        (Self::reduce(re, den.clone()), Self::reduce(im, den))
    }

    /// Exact evaluation at a numeric point; `None` if the denominator vanishes.
    pub fn eval(&self, at: &[GaussRat; NVARS]) -> Option<GaussRat> {
        let d = self.den.eval(at).inv()?;
        Some(&self.num.eval(at) * &d)
    }

    /// Replaces symbols by rational functions. `Err` carries the original
    /// denominator when it vanishes after substitution.
    pub fn substitute(&self, values: &[Option<RatFunc>; NVARS]) -> Result<RatFunc, Poly> {
        let num = subst_poly(&self.num, values);
        let den = subst_poly(&self.den, values);
        if den.is_zero() {
            return Err(self.den.clone());
        }
        Ok(num.mul(&den.inv().expect("nonzero")))
    }
}

fn subst_poly(p: &Poly, values: &[Option<RatFunc>; NVARS]) -> RatFunc {
    if values.iter().all(Option::is_none) {
        return RatFunc::from_poly(p.clone());
    }
    let mut acc = RatFunc::zero();
    for (e, c) in p.terms() {
        let mut kept = *e;
        let mut t = RatFunc::constant(c.clone());
        for (v, value) in values.iter().enumerate() {
            if let Some(value) = value {
                let k = e.0[v];
                kept.0[v] = 0;
                if k > 0 {
                    t = t.mul(&value.pow(k));
                }
            }
        }
        t = t.mul_poly(&Poly::monomial(kept, GaussRat::one()));
        acc = acc.add(&t);
    }
    acc
}

/// Renders a real-coefficient fraction with integer coefficients, e.g.
/// `4*hbar^2*eta/(4*hbar^2 + eta*theta)`.
fn fmt_real(r: &RatFunc) -> String {
    if r.den.is_one() {
        return r.num.to_string();
    }
    let k = GaussRat::real(integer_scale(&[&r.num, &r.den]));
    let (mut n, mut d) = (r.num.scale(&k), r.den.scale(&k));
    if d.leading_is_negative() {
        n = -&n;
        d = -&d;
    }
    let wrap = |p: &Poly, product: bool| {
        let text = p.to_string();
        if p.nterms() > 1 || (product && text.contains('*')) {
            format!("({text})")
        } else {
            text
        }
    };
    format!("{}/{}", wrap(&n, false), wrap(&d, true))
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = self.split_re_im();
        match (re.is_zero(), im.is_zero()) {
            (_, true) => write!(f, "{}", fmt_real(&re)),
            (true, false) => write!(f, "i*({})", fmt_real(&im)),
            (false, false) => write!(f, "({}) + i*({})", fmt_real(&re), fmt_real(&im)),
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

/// `(re, im)` rendering used for operator coefficients.
pub fn fmt_re_im(r: &RatFunc) -> String {
    let (re, im) = r.split_re_im();
    format!("({}, {})", fmt_real(&re), fmt_real(&im))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: Symbol) -> RatFunc {
        RatFunc::var(s)
    }

    #[test]
    fn cancellation_is_canonical() {
        // (eta*theta + eta^2) / (eta) == theta + eta
        let a = v(Symbol::Eta).mul(&v(Symbol::Theta)).add(&v(Symbol::Eta).pow(2));
        let q = a.mul(&v(Symbol::Eta).inv().unwrap());
        assert_eq!(q, v(Symbol::Theta).add(&v(Symbol::Eta)));
        assert!(q.is_polynomial());
    }

    #[test]
    fn add_inverse_gives_zero() {
        let x = v(Symbol::Hbar).mul(&v(Symbol::Mu).add(&RatFunc::from_int(3)).inv().unwrap());
        assert!(x.sub(&x).is_zero());
        assert_eq!(x.sub(&x), RatFunc::zero());
    }

    #[test]
    fn zero_denominator_substitution_reports_it() {
        let x = RatFunc::one().mul(&v(Symbol::Theta).inv().unwrap());
        let mut vals: [Option<RatFunc>; NVARS] = Default::default();
        vals[Symbol::Theta.index()] = Some(RatFunc::zero());
        assert_eq!(x.substitute(&vals).unwrap_err(), Poly::var(Symbol::Theta));
    }

    #[test]
    fn renders_with_integer_coefficients() {
        let four_h2 = RatFunc::from_int(4).mul(&v(Symbol::Hbar).pow(2));
        let den = four_h2.add(&v(Symbol::Eta).mul(&v(Symbol::Theta)));
        let x = four_h2.mul(&den.inv().unwrap());
        assert_eq!(x.to_string(), "4*hbar^2/(4*hbar^2 + eta*theta)");
        assert_eq!(RatFunc::from_int(-3).to_string(), "-3");
    }
}
