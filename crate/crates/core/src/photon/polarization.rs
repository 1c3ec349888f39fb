use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Unit-norm Jones vector.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Polarization {
    jones: [Complex64; 2],
}

impl Polarization {
    pub fn new(j1: Complex64, j2: Complex64) -> Result<Self> {
        let n = j1.norm_sqr() + j2.norm_sqr();
        if !((n - 1.0).abs() <= 1e-12) {
            return Err(Error::Validation(format!("Jones vector norm² is {n}, expected 1")));
        }
        Ok(Self { jones: [j1, j2] })
    }

    /// Normalizes an arbitrary nonzero Jones vector.
    pub fn normalized(j1: Complex64, j2: Complex64) -> Result<Self> {
        let n = (j1.norm_sqr() + j2.norm_sqr()).sqrt();
        if !(n > 0.0) || !n.is_finite() {
            return Err(Error::Validation("Jones vector must be finite and nonzero".into()));
        }
        Ok(Self {
            jones: [j1 / n, j2 / n],
        })
    }

    /// First basis vector `e₁`.
    pub fn horizontal() -> Self {
        Self {
            jones: [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
        }
    }

    /// Second basis vector `e₂`.
    pub fn vertical() -> Self {
        Self {
            jones: [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
        }
    }

    /// Linear polarization at angle `theta` from `e₁`.
    pub fn linear(theta: f64) -> Self {
        Self {
            jones: [Complex64::new(theta.cos(), 0.0), Complex64::new(theta.sin(), 0.0)],
        }
    }

    pub fn jones(&self) -> [Complex64; 2] {
        self.jones
    }

    /// Hermitian inner product `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        self.jones[0].conj() * other.jones[0] + self.jones[1].conj() * other.jones[1]
    }

    /// Bilinear product `self · other` without conjugation.
    pub fn dot(&self, other: &Self) -> Complex64 {
        self.jones[0] * other.jones[0] + self.jones[1] * other.jones[1]
    }

    pub fn conj(&self) -> Self {
        Self {
            jones: [self.jones[0].conj(), self.jones[1].conj()],
        }
    }
}

/// Detector polarization setting, one of the two fixed basis vectors.
/// Serialized as `1` or `2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub enum PolSetting {
    E1,
    E2,
}

impl PolSetting {
    pub const BOTH: [PolSetting; 2] = [PolSetting::E1, PolSetting::E2];

    pub fn vector(self) -> Polarization {
        match self {
            PolSetting::E1 => Polarization::horizontal(),
            PolSetting::E2 => Polarization::vertical(),
        }
    }

    /// `e_p† · v`.
    pub fn project(self, v: &Polarization) -> Complex64 {
        let j = v.jones();
        match self {
            PolSetting::E1 => j[0],
            PolSetting::E2 => j[1],
        }
    }
}

impl From<PolSetting> for u8 {
    fn from(p: PolSetting) -> u8 {
        match p {
            PolSetting::E1 => 1,
            PolSetting::E2 => 2,
        }
    }
}

impl TryFrom<u8> for PolSetting {
    type Error = String;

    fn try_from(v: u8) -> std::result::Result<Self, String> {
        match v {
            1 => Ok(PolSetting::E1),
            2 => Ok(PolSetting::E2),
            other => Err(format!("polarization setting must be 1 or 2, got {other}")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_unit_vectors() {
        assert!(Polarization::new(Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)).is_err());
        let p = Polarization::normalized(Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)).unwrap();
        assert!((p.inner(&p).re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn basis_completeness() {
        let v = Polarization::normalized(Complex64::new(0.3, 0.2), Complex64::new(-0.5, 0.9)).unwrap();
        let total: f64 = PolSetting::BOTH.iter().map(|p| p.project(&v).norm_sqr()).sum();
        assert!((total - 1.0).abs() < 1e-14);
    }

    #[test]
    fn setting_serializes_as_index() {
        assert_eq!(serde_json::to_string(&PolSetting::E2).unwrap(), "2");
        assert_eq!(serde_json::from_str::<PolSetting>("1").unwrap(), PolSetting::E1);
        assert!(serde_json::from_str::<PolSetting>("3").is_err());
    }
}
