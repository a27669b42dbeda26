//! SI quantities with dimension checking, and the deformation parameters
//! of a charged oscillator in a weak uniform magnetic field.
//!
//! Constants are CODATA 2018 exact or recommended values:
//!
//! | name | value |
//! |---|---|
//! | reduced Planck constant ħ | 1.054571817e-34 J·s |
//! | elementary charge e | 1.602176634e-19 C |
//! | electron mass mₑ | 9.1093837015e-31 kg |

use std::fmt;
use std::ops::{Div, Mul};

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::fock::SimUnits;
use crate::table::json_number;

/// Exponents over `(kg, m, s, A)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Dims(pub [i32; 4]);

const BASE_UNITS: [&str; 4] = ["kg", "m", "s", "A"];

impl Dims {
    pub const NONE: Dims = Dims([0, 0, 0, 0]);
    pub const KG: Dims = Dims([1, 0, 0, 0]);
    pub const M: Dims = Dims([0, 1, 0, 0]);
    pub const S: Dims = Dims([0, 0, 1, 0]);
    pub const A: Dims = Dims([0, 0, 0, 1]);
    /// kg·s⁻²·A⁻¹
    pub const TESLA: Dims = Dims([1, 0, -2, -1]);
    /// A·s
    pub const COULOMB: Dims = Dims([0, 0, 1, 1]);
    pub const PER_SECOND: Dims = Dims([0, 0, -1, 0]);
    /// kg·m²·s⁻¹
    pub const ACTION: Dims = Dims([1, 2, -1, 0]);
    /// kg²·m²·s⁻²
    pub const ETA: Dims = Dims([2, 2, -2, 0]);
    pub const AREA: Dims = Dims([0, 2, 0, 0]);
    pub const VOLUME: Dims = Dims([0, 3, 0, 0]);
    /// kg·m·s⁻¹
    pub const MOMENTUM: Dims = Dims([1, 1, -1, 0]);

    pub fn pow(self, e: i32) -> Dims {
        Dims(self.0.map(|d| d * e))
    }

    /// Halves every exponent; `None` if one is odd.
    pub fn sqrt(self) -> Option<Dims> {
        self.0.iter().all(|d| d % 2 == 0).then(|| Dims(self.0.map(|d| d / 2)))
    }
}

impl Mul for Dims {
    type Output = Dims;
    fn mul(self, o: Dims) -> Dims {
        Dims(std::array::from_fn(|k| self.0[k] + o.0[k]))
    }
}

impl Div for Dims {
    type Output = Dims;
    fn div(self, o: Dims) -> Dims {
        Dims(std::array::from_fn(|k| self.0[k] - o.0[k]))
    }
}

impl fmt::Display for Dims {
    /// `kg^2*m^2*s^-2`; `1` when dimensionless.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = BASE_UNITS
            .iter()
            .zip(self.0)
            .filter(|(_, e)| *e != 0)
            .map(|(u, e)| if e == 1 { u.to_string() } else { format!("{u}^{e}") })
            .collect();
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScenarioError {
    #[error("dimension mismatch for {what}: expected {expected}, found {found}")]
    DimensionMismatch { what: String, expected: Dims, found: Dims },
    #[error("{0} must be positive")]
    NotPositive(String),
    #[error("{0} must be non-negative")]
    Negative(String),
    #[error("{0} must be finite")]
    NotFinite(String),
    #[error("square root of {0} has fractional exponents")]
    OddDimension(Dims),
    #[error("missing input: {0}")]
    Missing(String),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Quantity {
    pub value: f64,
    pub dims: Dims,
}

impl Quantity {
    pub const fn new(value: f64, dims: Dims) -> Self {
        Quantity { value, dims }
    }

    pub fn scalar(value: f64) -> Self {
        Quantity::new(value, Dims::NONE)
    }

    pub fn try_add(self, o: Quantity) -> Result<Quantity, ScenarioError> {
        self.same_dims(&o, "addition")?;
        Ok(Quantity::new(self.value + o.value, self.dims))
    }

    pub fn try_sub(self, o: Quantity) -> Result<Quantity, ScenarioError> {
        self.same_dims(&o, "subtraction")?;
        Ok(Quantity::new(self.value - o.value, self.dims))
    }

    fn same_dims(&self, o: &Quantity, what: &str) -> Result<(), ScenarioError> {
        if self.dims != o.dims {
            return Err(ScenarioError::DimensionMismatch { what: what.into(), expected: self.dims, found: o.dims });
        }
        Ok(())
    }

    pub fn powi(self, e: i32) -> Quantity {
        Quantity::new(self.value.powi(e), self.dims.pow(e))
    }

    pub fn sqrt(self) -> Result<Quantity, ScenarioError> {
        let dims = self.dims.sqrt().ok_or(ScenarioError::OddDimension(self.dims))?;
        Ok(Quantity::new(self.value.sqrt(), dims))
    }

    /// Fails unless `self` has dimensions `dims`.
    pub fn expect_dims(self, what: &str, dims: Dims) -> Result<Quantity, ScenarioError> {
        if self.dims != dims {
            return Err(ScenarioError::DimensionMismatch { what: what.into(), expected: dims, found: self.dims });
        }
        if !self.value.is_finite() {
            return Err(ScenarioError::NotFinite(what.into()));
        }
        Ok(self)
    }
}

impl Mul for Quantity {
    type Output = Quantity;
    fn mul(self, o: Quantity) -> Quantity {
        Quantity::new(self.value * o.value, self.dims * o.dims)
    }
}

impl Div for Quantity {
    type Output = Quantity;
    fn div(self, o: Quantity) -> Quantity {
        Quantity::new(self.value / o.value, self.dims / o.dims)
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.dims == Dims::NONE {
            write!(f, "{:e}", self.value)
        } else {
            write!(f, "{:e} {}", self.value, self.dims)
        }
    }
}

pub const HBAR: Quantity = Quantity::new(1.054571817e-34, Dims::ACTION);
pub const ELEMENTARY_CHARGE: Quantity = Quantity::new(1.602176634e-19, Dims::COULOMB);
pub const ELECTRON_MASS: Quantity = Quantity::new(9.1093837015e-31, Dims::KG);
/// Default field strength, 10⁻¹² T.
pub const DEFAULT_B_FIELD: Quantity = Quantity::new(1e-12, Dims::TESLA);

/// Field, charge, mass, and oscillator frequency of a scenario. There is no
/// default frequency: `θ` depends on the system through it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CosmicInputs {
    pub b_field: Quantity,
    pub charge: Quantity,
    pub mass: Quantity,
    pub omega: Quantity,
}

fn positive(q: Quantity, what: &str, dims: Dims) -> Result<Quantity, ScenarioError> {
    let q = q.expect_dims(what, dims)?;
    if q.value <= 0.0 {
        return Err(ScenarioError::NotPositive(what.into()));
    }
    Ok(q)
}

impl CosmicInputs {
    /// Validates dimensions; charge, mass and frequency must be positive, the
    /// field non-negative.
    pub fn new(b_field: Quantity, charge: Quantity, mass: Quantity, omega: Quantity) -> Result<Self, ScenarioError> {
        let b_field = b_field.expect_dims("B_c", Dims::TESLA)?;
        if b_field.value < 0.0 {
            return Err(ScenarioError::Negative("B_c".into()));
        }
        Ok(CosmicInputs {
            b_field,
            charge: positive(charge, "q", Dims::COULOMB)?,
            mass: positive(mass, "mu", Dims::KG)?,
            omega: positive(omega, "omega", Dims::PER_SECOND)?,
        })
    }

    /// Electron in the default field at frequency `omega` (s⁻¹).
    pub fn electron(omega: f64) -> Result<Self, ScenarioError> {
        Self::new(DEFAULT_B_FIELD, ELEMENTARY_CHARGE, ELECTRON_MASS, Quantity::new(omega, Dims::PER_SECOND))
    }
}

/// `η = ħqB`.
pub fn compute_eta(inputs: &CosmicInputs) -> Result<Quantity, ScenarioError> {
    (HBAR * inputs.charge * inputs.b_field).expect_dims("eta_c", Dims::ETA)
}

/// `θ = η/(μω)²`.
pub fn compute_theta(eta: Quantity, mu: Quantity, omega: Quantity) -> Result<Quantity, ScenarioError> {
    let eta = eta.expect_dims("eta_c", Dims::ETA)?;
    let mu_omega = positive(mu, "mu", Dims::KG)? * positive(omega, "omega", Dims::PER_SECOND)?;
    (eta / mu_omega.powi(2)).expect_dims("theta_c", Dims::AREA)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DerivedScales {
    pub eta_c: Quantity,
    pub theta_c: Quantity,
    /// `√(η/2)`
    pub dp_min: Quantity,
    /// `√(θ/2)`
    pub dx_min: Quantity,
    /// `dx_min²`, an illustrative extrapolation.
    pub min_area: Quantity,
    /// `dx_min³`, an illustrative extrapolation.
    pub min_volume: Quantity,
}

impl DerivedScales {
    /// Fields that are extrapolations rather than derived bounds.
    pub const EXTRAPOLATED: [&'static str; 2] = ["min_area", "min_volume"];

    pub fn fields(&self) -> [(&'static str, Quantity); 6] {
        [
            ("eta_c", self.eta_c),
            ("theta_c", self.theta_c),
            ("dp_min", self.dp_min),
            ("dx_min", self.dx_min),
            ("min_area", self.min_area),
            ("min_volume", self.min_volume),
        ]
    }
}

fn non_negative(q: Quantity, what: &str, dims: Dims) -> Result<Quantity, ScenarioError> {
    let q = q.expect_dims(what, dims)?;
    if q.value < 0.0 {
        return Err(ScenarioError::Negative(what.into()));
    }
    Ok(q)
}

pub fn minimal_scales(eta: Quantity, theta: Quantity) -> Result<DerivedScales, ScenarioError> {
    let eta = non_negative(eta, "eta_c", Dims::ETA)?;
    let theta = non_negative(theta, "theta_c", Dims::AREA)?;
    let half = Quantity::scalar(0.5);
    let dp_min = (eta * half).sqrt()?.expect_dims("dp_min", Dims::MOMENTUM)?;
    let dx_min = (theta * half).sqrt()?.expect_dims("dx_min", Dims::M)?;
    Ok(DerivedScales {
        eta_c: eta,
        theta_c: theta,
        dp_min,
        dx_min,
        min_area: dx_min.powi(2).expect_dims("min_area", Dims::AREA)?,
        min_volume: dx_min.powi(3).expect_dims("min_volume", Dims::VOLUME)?,
    })
}

/// `η̄ = η/(ħμω)`, `θ̄ = θμω/ħ`.
pub fn to_sim_units(eta: Quantity, theta: Quantity, mu: Quantity, omega: Quantity) -> Result<SimUnits, ScenarioError> {
    let eta = non_negative(eta, "eta_c", Dims::ETA)?;
    let theta = non_negative(theta, "theta_c", Dims::AREA)?;
    let mu_omega = positive(mu, "mu", Dims::KG)? * positive(omega, "omega", Dims::PER_SECOND)?;
    let eta_bar = (eta / (HBAR * mu_omega)).expect_dims("eta_bar", Dims::NONE)?;
    let theta_bar = (theta * mu_omega / HBAR).expect_dims("theta_bar", Dims::NONE)?;
    SimUnits::new(eta_bar.value, theta_bar.value).map_err(|_| ScenarioError::Negative("sim units".into()))
}

/// Inverse of [`to_sim_units`]: `(η, θ)` in SI.
pub fn from_sim_units(units: &SimUnits, mu: Quantity, omega: Quantity) -> Result<(Quantity, Quantity), ScenarioError> {
    let mu_omega = positive(mu, "mu", Dims::KG)? * positive(omega, "omega", Dims::PER_SECOND)?;
    let eta = (Quantity::scalar(units.eta_bar) * HBAR * mu_omega).expect_dims("eta_c", Dims::ETA)?;
    let theta = (Quantity::scalar(units.theta_bar) * HBAR / mu_omega).expect_dims("theta_c", Dims::AREA)?;
    Ok((eta, theta))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConstantsReport {
    pub inputs: CosmicInputs,
    pub derived: DerivedScales,
    pub sim_units: SimUnits,
}

pub fn constants_report(inputs: &CosmicInputs) -> Result<ConstantsReport, ScenarioError> {
    let eta = compute_eta(inputs)?;
    let theta = compute_theta(eta, inputs.mass, inputs.omega)?;
    Ok(ConstantsReport {
        inputs: *inputs,
        derived: minimal_scales(eta, theta)?,
        sim_units: to_sim_units(eta, theta, inputs.mass, inputs.omega)?,
    })
}

impl ConstantsReport {
    pub fn to_json(&self) -> Value {
        let inputs = [
            ("B_c", self.inputs.b_field),
            ("q", self.inputs.charge),
            ("mu", self.inputs.mass),
            ("omega", self.inputs.omega),
        ];
        let derived = self.derived.fields();
        let mut units = Map::new();
        let section = |fields: &[(&str, Quantity)], units: &mut Map<String, Value>| {
            let mut m = Map::new();
            for (name, q) in fields {
                m.insert(name.to_string(), json_number(q.value));
                units.insert(name.to_string(), Value::from(q.dims.to_string()));
            }
            Value::Object(m)
        };
        let inputs = section(&inputs, &mut units);
        let derived = section(&derived, &mut units);
        json!({
            "inputs": inputs,
            "derived": derived,
            "units": units,
            "sim_units": {
                "eta_bar": json_number(self.sim_units.eta_bar),
                "theta_bar": json_number(self.sim_units.theta_bar),
            },
            "flags": { "extrapolated": DerivedScales::EXTRAPOLATED },
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dims_render() {
        assert_eq!(Dims::ETA.to_string(), "kg^2*m^2*s^-2");
        assert_eq!(Dims::MOMENTUM.to_string(), "kg*m*s^-1");
        assert_eq!(Dims::NONE.to_string(), "1");
    }

    #[test]
    fn addition_needs_equal_dims() {
        let a = Quantity::new(1.0, Dims::M);
        assert!(a.try_add(Quantity::new(2.0, Dims::S)).is_err());
        assert_eq!(a.try_add(a).unwrap(), Quantity::new(2.0, Dims::M));
    }

    #[test]
    fn trivial_scales() {
        let s = minimal_scales(Quantity::new(2.0, Dims::ETA), Quantity::new(2.0, Dims::AREA)).unwrap();
        assert_eq!(s.dp_min, Quantity::new(1.0, Dims::MOMENTUM));
        assert_eq!(s.dx_min, Quantity::new(1.0, Dims::M));
        let z = minimal_scales(Quantity::new(0.0, Dims::ETA), Quantity::new(0.0, Dims::AREA)).unwrap();
        assert!(z.fields().iter().all(|(_, q)| q.value == 0.0));
        assert!(minimal_scales(Quantity::new(-1.0, Dims::ETA), Quantity::new(0.0, Dims::AREA)).is_err());
    }

    #[test]
    fn eta_bar_one() {
        let (mu, omega) = (ELECTRON_MASS, Quantity::new(1e15, Dims::PER_SECOND));
        let eta = HBAR * mu * omega;
        let u = to_sim_units(eta, Quantity::new(0.0, Dims::AREA), mu, omega).unwrap();
        assert!((u.eta_bar - 1.0).abs() < 1e-15);
    }

    #[test]
    fn zero_frequency_rejected() {
        let eta = Quantity::new(1.0, Dims::ETA);
        let r = compute_theta(eta, ELECTRON_MASS, Quantity::new(0.0, Dims::PER_SECOND));
        assert_eq!(r.unwrap_err(), ScenarioError::NotPositive("omega".into()));
    }
}
