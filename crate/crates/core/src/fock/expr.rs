//! Numeric evaluation of operator expressions and symbolic polynomials on
//! the truncated basis, for cross-checking exact identities.

use num_complex::Complex64;

use super::error::FockError;
use super::matrix::{OperatorMatrix, TruncationSpec};
use super::ops::build_phase_ops;
use crate::weyl::{Expr, GaussRat, GeneratorKind, NCPolynomial, Param, Symbol};

/// Matrices of every generator at one exact parameter point.
#[derive(Clone, Debug)]
pub struct NumericModel {
    pub spec: TruncationSpec,
    pub point: [GaussRat; 5],
    /// `x1, x2, p1, p2` with `[x_i, p_j] = iħδ_ij`.
    base: [OperatorMatrix; 4],
    scalars: Scalars,
}

#[derive(Clone, Copy, Debug)]
struct Scalars {
    hbar: f64,
    eta: f64,
    theta: f64,
    mu: f64,
    omega: f64,
    xi: f64,
    sigma: f64,
}

impl NumericModel {
    /// `point` holds `[ħ, η, θ, μ, ω]`; `ħ`, `μ`, `ω` must be positive and
    /// `1 + θη/(4ħ²)` positive.
    pub fn new(spec: &TruncationSpec, point: [GaussRat; 5]) -> Result<Self, FockError> {
        let v = point.clone().map(|g| g.to_c64());
        if v.iter().any(|z| z.im != 0.0) {
            return Err(FockError::Evaluation("parameters must be real".into()));
        }
        let [hbar, eta, theta, mu, omega] = v.map(|z| z.re);
        if hbar <= 0.0 || mu <= 0.0 || omega <= 0.0 {
            return Err(FockError::Evaluation("hbar, mu and omega must be positive".into()));
        }
        let q = 1.0 + theta * eta / (4.0 * hbar * hbar);
        if q <= 0.0 {
            return Err(FockError::Evaluation("1 + theta*eta/(4*hbar^2) must be positive".into()));
        }
        let scalars = Scalars { hbar, eta, theta, mu, omega, xi: q.powf(-0.5), sigma: (mu * omega / (2.0 * hbar)).sqrt() };
        let ops = build_phase_ops(spec);
        let base = [ops.x1, ops.x2, ops.p1.scale_re(hbar), ops.p2.scale_re(hbar)];
        Ok(NumericModel { spec: *spec, point, base, scalars })
    }

    pub fn generator(&self, k: GeneratorKind) -> OperatorMatrix {
        use GeneratorKind::*;
        let s = self.scalars;
        let [x1, x2, p1, p2] = &self.base;
        let comb = |a: &OperatorMatrix, b: &OperatorMatrix, c: f64| a.add(&b.scale_re(c)).scale_re(s.xi);
        let (th, et) = (s.theta / (2.0 * s.hbar), s.eta / (2.0 * s.hbar));
        let ladder = |x: GeneratorKind, p: GeneratorKind, sign: f64| {
            let c = Complex64::new(0.0, sign / (s.mu * s.omega));
            self.generator(x).add(&self.generator(p).scale(c)).scale_re(s.sigma)
        };
        match k {
            X1 => x1.clone(),
            X2 => x2.clone(),
            P1 => p1.clone(),
            P2 => p2.clone(),
            TX1 => comb(x1, p2, -th),
            TX2 => comb(x2, p1, th),
            TP1 => comb(p1, x2, et),
            TP2 => comb(p2, x1, -et),
            A1 => ladder(TX1, TP1, 1.0),
            A2 => ladder(TX2, TP2, 1.0),
            A1DAG => ladder(TX1, TP1, -1.0),
            A2DAG => ladder(TX2, TP2, -1.0),
        }
    }

    fn param(&self, p: Param) -> f64 {
        let s = self.scalars;
        match p {
            Param::Sym(Symbol::Hbar) => s.hbar,
            Param::Sym(Symbol::Eta) => s.eta,
            Param::Sym(Symbol::Theta) => s.theta,
            Param::Sym(Symbol::Mu) => s.mu,
            Param::Sym(Symbol::Omega) => s.omega,
            Param::Xi => s.xi,
            Param::Sigma => s.sigma,
        }
    }

    /// Evaluates a parsed expression with floating-point matrices.
    pub fn eval_expr(&self, e: &Expr) -> Result<OperatorMatrix, FockError> {
        Ok(match self.eval(e)? {
            Value::Scalar(c) => OperatorMatrix::scalar(self.spec.dim(), c),
            Value::Op(m) => m,
        })
    }

    fn eval(&self, e: &Expr) -> Result<Value, FockError> {
        use Value::*;
        Ok(match e {
            Expr::Generator(k) => Op(self.generator(*k)),
            Expr::Param(p) => Scalar(self.param(*p).into()),
            Expr::Imag => Scalar(Complex64::i()),
            Expr::Rational(r) => Scalar(GaussRat::real(r.clone()).to_c64()),
            Expr::Add(a, b) => self.eval(a)?.combine(self.eval(b)?, self.spec.dim(), 1.0),
            Expr::Sub(a, b) => self.eval(a)?.combine(self.eval(b)?, self.spec.dim(), -1.0),
            Expr::Mul(a, b) => match (self.eval(a)?, self.eval(b)?) {
                (Scalar(x), Scalar(y)) => Scalar(x * y),
                (Scalar(x), Op(m)) | (Op(m), Scalar(x)) => Op(m.scale(x)),
                (Op(m), Op(n)) => Op(m.mul(&n)),
            },
            Expr::Div(a, b) => match self.eval(b)? {
                Scalar(d) if d != Complex64::default() => match self.eval(a)? {
                    Scalar(x) => Scalar(x / d),
                    Op(m) => Op(m.scale(1.0 / d)),
                },
                Scalar(_) => return Err(FockError::Evaluation("division by zero".into())),
                Op(_) => return Err(FockError::Evaluation("division by an operator".into())),
            },
            Expr::Pow(a, k) => match self.eval(a)? {
                Scalar(x) => Scalar(x.powu(*k)),
                Op(m) => Op((0..*k).fold(OperatorMatrix::identity(self.spec.dim()), |acc, _| acc.mul(&m))),
            },
            Expr::Comm(a, b) => match (self.eval(a)?, self.eval(b)?) {
                (Op(m), Op(n)) => Op(m.commutator(&n)),
                _ => Scalar(Complex64::default()),
            },
        })
    }

    /// Evaluates a normal-ordered polynomial term by term.
    pub fn eval_polynomial(&self, p: &NCPolynomial) -> Result<OperatorMatrix, FockError> {
        let dim = self.spec.dim();
        let mut acc = OperatorMatrix::zeros(dim);
        for (m, c) in p.terms() {
            let c = c
                .eval_c64(&self.point)
                .ok_or_else(|| FockError::Evaluation(format!("coefficient {c} is singular at this point")))?;
            let mut op = OperatorMatrix::identity(dim);
            for (g, &e) in self.base.iter().zip(&m.0) {
                for _ in 0..e {
                    op = op.mul(g);
                }
            }
            acc = acc.add(&op.scale(c));
        }
        Ok(acc)
    }
}

enum Value {
    Scalar(Complex64),
    Op(OperatorMatrix),
}

impl Value {
    fn combine(self, o: Value, dim: usize, sign: f64) -> Value {
        match (self, o) {
            (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(x + y * sign),
            (a, b) => Value::Op(a.into_op(dim).add(&b.into_op(dim).scale_re(sign))),
        }
    }

    fn into_op(self, dim: usize) -> OperatorMatrix {
        match self {
            Value::Scalar(c) => OperatorMatrix::scalar(dim, c),
            Value::Op(m) => m,
        }
    }
}
