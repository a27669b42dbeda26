//! Commutative polynomials in the physical parameters with exact
//! Gaussian-rational coefficients.
//!
//! Terms are kept in a `BTreeMap` keyed by exponent vectors, so iteration is
//! in ascending lexicographic order and the leading term is the last entry.
//! The variable order (`hbar, eta, theta, mu, omega`) is fixed.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::gauss::GaussRat;

pub const NVARS: usize = 5;

/// Parameter symbols of the coefficient field, in variable order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    Hbar,
    Eta,
    Theta,
    Mu,
    Omega,
}

impl Symbol {
    pub const ALL: [Symbol; NVARS] = [Symbol::Hbar, Symbol::Eta, Symbol::Theta, Symbol::Mu, Symbol::Omega];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Symbol::Hbar => "hbar",
            Symbol::Eta => "eta",
            Symbol::Theta => "theta",
            Symbol::Mu => "mu",
            Symbol::Omega => "omega",
        }
    }
}

/// Exponent vector over the parameter symbols.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Exps(pub [u32; NVARS]);

impl Exps {
    pub fn of(sym: Symbol, e: u32) -> Self {
        let mut x = [0; NVARS];
        x[sym.index()] = e;
        Exps(x)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn add(&self, o: &Exps) -> Exps {
        let mut x = self.0;
        for (a, b) in x.iter_mut().zip(o.0.iter()) {
            *a += b;
        }
        Exps(x)
    }

    pub fn checked_sub(&self, o: &Exps) -> Option<Exps> {
        let mut x = self.0;
        for (a, b) in x.iter_mut().zip(o.0.iter()) {
            *a = a.checked_sub(*b)?;
        }
        Some(Exps(x))
    }

    pub fn meet(&self, o: &Exps) -> Exps {
        let mut x = self.0;
        for (a, b) in x.iter_mut().zip(o.0.iter()) {
            *a = (*a).min(*b);
        }
        Exps(x)
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Exps, GaussRat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(GaussRat::one())
    }

    pub fn constant(c: GaussRat) -> Self {
        Self::monomial(Exps::default(), c)
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(GaussRat::from_int(n))
    }

    pub fn var(sym: Symbol) -> Self {
        Self::monomial(Exps::of(sym, 1), GaussRat::one())
    }

    pub fn monomial(e: Exps, c: GaussRat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Poly { terms }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exps, &GaussRat)> {
        self.terms.iter()
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Exps::default()).is_some_and(GaussRat::is_one)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Exps::is_zero)
    }

    pub fn constant_term(&self) -> GaussRat {
        self.terms.get(&Exps::default()).cloned().unwrap_or_default()
    }

    pub fn has_real_coefficients(&self) -> bool {
        self.terms.values().all(GaussRat::is_real)
    }

    pub fn leading(&self) -> Option<(&Exps, &GaussRat)> {
        self.terms.iter().next_back()
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.keys().map(|e| e.0[v]).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Exps::total).max().unwrap_or(0)
    }

    fn add_term(&mut self, e: Exps, c: GaussRat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &GaussRat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Exps, c: &GaussRat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(e, x)| (e.add(m), x * c)).collect() }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn conj(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(e, c)| (*e, c.conj())).collect() }
    }

    /// Real and imaginary coefficient parts as separate polynomials.
    pub fn split_re_im(&self) -> (Poly, Poly) {
        let mut re = Poly::zero();
        let mut im = Poly::zero();
        for (e, c) in &self.terms {
            re.add_term(*e, GaussRat::real(c.re.clone()));
            im.add_term(*e, GaussRat::real(c.im.clone()));
        }
        (re, im)
    }

    /// Monic normalization: divides by the leading coefficient.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some((_, lc)) => {
                let inv = lc.inv().expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    /// Greatest monomial dividing every term.
    fn monomial_content(&self) -> Exps {
        let mut it = self.terms.keys();
        let first = *it.next().unwrap_or(&Exps::default());
        it.fold(first, |acc, e| acc.meet(e))
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (dle, dlc) = d.leading()?;
        let (dle, dinv) = (*dle, dlc.inv()?);
        if d.nterms() == 1 {
            let mut q = Poly::zero();
            for (e, c) in &self.terms {
                q.terms.insert(e.checked_sub(&dle)?, c * &dinv);
            }
            return Some(q);
        }
        let mut rem = self.clone();
        let mut q = Poly::zero();
        while let Some((re, rc)) = rem.leading() {
            let e = re.checked_sub(&dle)?;
            let c = rc * &dinv;
            rem = &rem - &d.mul_monomial(&e, &c);
            q.add_term(e, c);
        }
        Some(q)
    }

    /// Coefficients of `self` viewed as a univariate polynomial in variable `v`.
    fn coeffs_in(&self, v: usize) -> Vec<Poly> {
        let mut out = vec![Poly::zero(); self.degree_in(v) as usize + 1];
        for (e, c) in &self.terms {
            let mut rest = *e;
            let k = rest.0[v];
            rest.0[v] = 0;
            out[k as usize].add_term(rest, c.clone());
        }
        out
    }

    fn lead_coeff_in(&self, v: usize) -> Poly {
        self.coeffs_in(v).pop().unwrap_or_default()
    }

    fn content_in(&self, v: usize) -> Poly {
        self.coeffs_in(v)
            .iter()
            .filter(|c| !c.is_zero())
            .fold(Poly::zero(), |g, c| if g.is_one() { g } else { gcd(&g, c) })
    }

    fn primitive_in(&self, v: usize) -> Poly {
        let c = self.content_in(v);
        self.div_exact(&c).expect("content divides")
    }

    /// Pseudo-remainder of `self` by `b` with respect to variable `v`.
    fn prem(&self, b: &Poly, v: usize) -> Poly {
        let db = b.degree_in(v);
        let lcb = b.lead_coeff_in(v);
        let mut r = self.clone();
        while !r.is_zero() && r.degree_in(v) >= db {
            let dr = r.degree_in(v);
            let lcr = r.lead_coeff_in(v);
            let shift = Exps::of(Symbol::ALL[v], dr - db);
            let t = (&lcr * b).mul_monomial(&shift, &GaussRat::one());
            r = &(&r * &lcb) - &t;
        }
        r
    }

    /// Substitutes values for every symbol, evaluating to a number.
    pub fn eval(&self, at: &[GaussRat; NVARS]) -> GaussRat {
        let mut acc = GaussRat::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (v, &k) in e.0.iter().enumerate() {
                if k > 0 {
                    t = &t * &at[v].pow(k);
                }
            }
            acc += &t;
        }
        acc
    }

    pub(crate) fn leading_is_negative(&self) -> bool {
        self.leading().is_some_and(|(_, c)| {
            if c.re.is_zero() {
                c.im.is_negative()
            } else {
                c.re.is_negative()
            }
        })
    }
}

/// Positive rational `k` such that every coefficient of every `k·p` is an
/// integer and their overall content is 1. Used for display.
pub(crate) fn integer_scale(polys: &[&Poly]) -> BigRational {
    let mut lcm = BigInt::one();
    for p in polys {
        for c in p.terms.values() {
            lcm = lcm.lcm(c.re.denom()).lcm(c.im.denom());
        }
    }
    let mut g = BigInt::zero();
    for p in polys {
        for c in p.terms.values() {
            g = g.gcd(&(c.re.numer() * (&lcm / c.re.denom())));
            g = g.gcd(&(c.im.numer() * (&lcm / c.im.denom())));
        }
    }
    if g.is_zero() {
        return BigRational::one();
    }
    BigRational::new(lcm, g)
}

/// Monic greatest common divisor over `Q(i)[hbar, eta, theta, mu, omega]`.
///
/// Recursive primitive polynomial remainder sequence: content and primitive
/// part are split with respect to the highest variable present, contents are
/// handled by recursion in the remaining variables.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    if a.nterms() == 1 || b.nterms() == 1 {
        let m = a.monomial_content().meet(&b.monomial_content());
        return Poly::monomial(m, GaussRat::one());
    }
    let v = (0..NVARS)
        .rev()
        .find(|&v| a.degree_in(v) > 0 || b.degree_in(v) > 0)
        .expect("non-constant polynomial");
    let ca = a.content_in(v);
    let cb = b.content_in(v);
    let content = gcd(&ca, &cb);
    let mut p = a.div_exact(&ca).expect("content divides");
    let mut q = b.div_exact(&cb).expect("content divides");
    if p.degree_in(v) < q.degree_in(v) {
        std::mem::swap(&mut p, &mut q);
    }
    let prim = loop {
        if q.is_zero() {
            break p.primitive_in(v);
        }
        if q.degree_in(v) == 0 {
            break Poly::one();
        }
        let r = p.prem(&q, v);
        p = q;
        q = if r.is_zero() { r } else { r.primitive_in(v) };
    };
    (&content * &prim).monic()
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                out.add_term(e1.add(e2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

fn fmt_monomial(e: &Exps) -> String {
    let mut parts = Vec::new();
    for sym in Symbol::ALL {
        match e.0[sym.index()] {
            0 => {}
            1 => parts.push(sym.name().to_string()),
            k => parts.push(format!("{}^{}", sym.name(), k)),
        }
    }
    parts.join("*")
}

fn fmt_abs_rat(r: &BigRational) -> String {
    let r = r.abs();
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Renders a polynomial whose coefficients are real; descending term order.
fn fmt_real_terms(p: &Poly, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if p.is_zero() {
        return write!(f, "0");
    }
    for (k, (e, c)) in p.terms.iter().rev().enumerate() {
        let neg = c.re.is_negative();
        let sign = match (k, neg) {
            (0, true) => "-",
            (0, false) => "",
            (_, true) => " - ",
            (_, false) => " + ",
        };
        let mag = fmt_abs_rat(&c.re);
        let mono = fmt_monomial(e);
        let body = match (mono.is_empty(), mag == "1") {
            (true, _) => mag,
            (false, true) => mono,
            (false, false) => format!("{mag}*{mono}"),
        };
        write!(f, "{sign}{body}")?;
    }
    Ok(())
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.has_real_coefficients() {
            return fmt_real_terms(self, f);
        }
        let (re, im) = self.split_re_im();
        write!(f, "(")?;
        fmt_real_terms(&re, f)?;
        write!(f, ") + i*(")?;
        fmt_real_terms(&im, f)?;
        write!(f, ")")
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}
