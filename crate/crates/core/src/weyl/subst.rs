//! Binding parameter symbols (and the formal roots ξ, σ) to values.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use super::error::AlgebraError;
use super::field::{CoeffField, Grade, Rules};
use super::ncpoly::NCPolynomial;
use super::poly::{Symbol, NVARS};
use super::ratfunc::RatFunc;

/// A bindable scalar: one of the five parameter symbols or a formal root.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Param {
    Sym(Symbol),
    Xi,
    Sigma,
}

impl Param {
    pub fn name(self) -> &'static str {
        match self {
            Param::Sym(s) => s.name(),
            Param::Xi => "xi",
            Param::Sigma => "sigma",
        }
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Param {
    type Err = ();
    fn from_str(s: &str) -> Result<Self, ()> {
        match s {
            "xi" => Ok(Param::Xi),
            "sigma" => Ok(Param::Sigma),
            _ => Symbol::ALL.into_iter().find(|x| x.name() == s).map(Param::Sym).ok_or(()),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Bindings {
    values: BTreeMap<Param, CoeffField>,
}

impl Bindings {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, p: Param, value: CoeffField) -> Self {
        self.values.insert(p, value);
        self
    }

    pub fn bind(mut self, s: Symbol, value: RatFunc) -> Self {
        self.values.insert(Param::Sym(s), CoeffField::from_ratfunc(value));
        self
    }

    pub fn insert(&mut self, p: Param, value: CoeffField) {
        self.values.insert(p, value);
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Param, &CoeffField)> {
        self.values.iter()
    }

    /// `θ → η/(μω)²`, the condition under which the creation operators commute.
    pub fn be_condition() -> Self {
        let mu_omega = RatFunc::var(Symbol::Mu).mul(&RatFunc::var(Symbol::Omega));
        Self::new().bind(Symbol::Theta, RatFunc::var(Symbol::Eta).mul(&mu_omega.pow(2).inv().unwrap()))
    }

    fn symbol_values(&self) -> Result<[Option<RatFunc>; NVARS], AlgebraError> {
        let mut out: [Option<RatFunc>; NVARS] = Default::default();
        for (p, v) in &self.values {
            let r = v.as_ratfunc().ok_or_else(|| AlgebraError::GradedBinding { symbol: p.to_string() })?;
            if let Param::Sym(s) = p {
                out[s.index()] = Some(r.clone());
            }
        }
        for (p, v) in &self.values {
            let r = v.as_ratfunc().expect("checked above");
            for s in Symbol::ALL {
                let mentioned = r.numer().degree_in(s.index()) > 0 || r.denom().degree_in(s.index()) > 0;
                if mentioned && out[s.index()].is_some() {
                    return Err(AlgebraError::CircularBinding { symbol: p.to_string(), refers_to: s.name().into() });
                }
            }
        }
        Ok(out)
    }

    /// Reduction rules after the symbol bindings are applied.
    pub fn rules(&self) -> Result<Rules, AlgebraError> {
        let vals = self.symbol_values()?;
        let g = Rules::generic();
        Ok(Rules { xi_sq: subst_ratfunc(&g.xi_sq, &vals)?, sigma_sq: subst_ratfunc(&g.sigma_sq, &vals)? })
    }

    fn root_value(&self, p: Param, square: &RatFunc) -> Result<Option<RatFunc>, AlgebraError> {
        let Some(v) = self.values.get(&p) else {
            return Ok(None);
        };
        let v = v.as_ratfunc().expect("checked by symbol_values").clone();
        if v.pow(2) != *square {
            return Err(AlgebraError::InconsistentRoot {
                symbol: p.to_string(),
                value: v.to_string(),
                expected: square.to_string(),
            });
        }
        Ok(Some(v))
    }

    pub fn apply(&self, c: &CoeffField) -> Result<CoeffField, AlgebraError> {
        self.applier()?.apply(c)
    }

    fn applier(&self) -> Result<Applier, AlgebraError> {
        let vals = self.symbol_values()?;
        let rules = self.rules()?;
        let xi = self.root_value(Param::Xi, &rules.xi_sq)?;
        let sigma = self.root_value(Param::Sigma, &rules.sigma_sq)?;
        Ok(Applier { vals, xi, sigma })
    }
}

struct Applier {
    vals: [Option<RatFunc>; NVARS],
    xi: Option<RatFunc>,
    sigma: Option<RatFunc>,
}

impl Applier {
    fn apply(&self, c: &CoeffField) -> Result<CoeffField, AlgebraError> {
        let mut out = CoeffField::zero();
        for (g, r) in c.parts() {
            if r.is_zero() {
                continue;
            }
            let mut r = subst_ratfunc(r, &self.vals)?;
            let mut grade = g.0;
            if g.xi() == 1 {
                if let Some(v) = &self.xi {
                    r = r.mul(v);
                    grade &= !1;
                }
            }
            if g.sigma() == 1 {
                if let Some(v) = &self.sigma {
                    r = r.mul(v);
                    grade &= !2;
                }
            }
            out = out.add(&CoeffField::graded(Grade(grade), r));
        }
        Ok(out)
    }
}

fn subst_ratfunc(r: &RatFunc, vals: &[Option<RatFunc>; NVARS]) -> Result<RatFunc, AlgebraError> {
    r.substitute(vals).map_err(|d| AlgebraError::DivisionByZero { denominator: d.to_string() })
}

/// Replaces bound symbols in every coefficient and re-canonicalizes.
///
/// Products of the result with other specialized polynomials should use
/// [`Bindings::rules`].
pub fn substitute(p: &NCPolynomial, bindings: &Bindings) -> Result<NCPolynomial, AlgebraError> {
    if bindings.is_empty() {
        return Ok(p.clone());
    }
    let a = bindings.applier()?;
    p.map_coefficients(|c| a.apply(c))
}
