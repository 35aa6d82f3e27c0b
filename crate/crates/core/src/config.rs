//! Scenario configuration: JSON-file format, validation, and the effective
//! (auto-completed) form that runs are stamped with.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dynamics::Scenario;
use crate::error::{Error, Result};
use crate::fock;

/// Which simulation a config drives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScenarioKind {
    /// Atom excited, field in a coherent-state mixture.
    FieldMixture,
    /// Field coherent, atom in an excited/ground mixture.
    AtomMixture,
    /// Two atoms in a Bell pair, coherent field (mimics the atom mixture).
    TwoAtomBell,
    /// Spectator atom entangled with the field (mimics the field mixture).
    TwoAtomFieldEntangled,
}

impl ScenarioKind {
    /// The mixed-state scenario whose branch structure this run produces.
    pub fn mimicked(self) -> Scenario {
        match self {
            ScenarioKind::FieldMixture | ScenarioKind::TwoAtomFieldEntangled => {
                Scenario::FieldMixture
            }
            ScenarioKind::AtomMixture | ScenarioKind::TwoAtomBell => Scenario::AtomMixture,
        }
    }

    pub fn is_two_atom(self) -> bool {
        matches!(
            self,
            ScenarioKind::TwoAtomBell | ScenarioKind::TwoAtomFieldEntangled
        )
    }
}

/// Tolerances a run is audited against. Serialized with the config so CSV
/// artifacts are self-describing; defaults come from [`crate::tolerances`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Tolerances {
    pub norm_conservation: f64,
    pub leak_budget: f64,
    pub gram_vs_oracle: f64,
    pub araki_slack: f64,
    pub fidelity: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            norm_conservation: crate::tolerances::NORM_CONSERVATION,
            leak_budget: crate::tolerances::LEAK_BUDGET,
            gram_vs_oracle: crate::tolerances::GRAM_VS_ORACLE,
            araki_slack: crate::tolerances::ARAKI_SLACK,
            fidelity: crate::tolerances::FIDELITY,
        }
    }
}

/// Flat run configuration. The JSON file uses exactly these field names;
/// CLI flags mirror them and override file values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioConfig {
    pub scenario: ScenarioKind,
    /// Mixture weight in [0, 1].
    #[serde(rename = "C")]
    pub c: f64,
    pub alpha_re: f64,
    pub alpha_im: f64,
    pub beta_re: f64,
    pub beta_im: f64,
    /// Atom-field coupling; times are reported in units of 1/lambda.
    pub lambda: f64,
    /// Sweep end time (inclusive), in units of 1/lambda when lambda = 1.
    pub t_max: f64,
    /// Number of grid points, both endpoints included.
    pub steps: usize,
    /// Fock truncation; 0 selects the dimension automatically.
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(default)]
    pub tolerances: Tolerances,
}

impl Default for ScenarioConfig {
    /// The canonical field-mixture run: C = 0.5, alpha = -beta = 4,
    /// lambda = 1, 201 points on [0, 20].
    fn default() -> Self {
        ScenarioConfig {
            scenario: ScenarioKind::FieldMixture,
            c: 0.5,
            alpha_re: 4.0,
            alpha_im: 0.0,
            beta_re: -4.0,
            beta_im: 0.0,
            lambda: 1.0,
            t_max: 20.0,
            steps: 201,
            n: 0,
            tolerances: Tolerances::default(),
        }
    }
}

impl ScenarioConfig {
    /// The canonical atom-mixture run: C = 0.5, alpha = 4.
    pub fn default_atom_mixture() -> Self {
        ScenarioConfig {
            scenario: ScenarioKind::AtomMixture,
            ..ScenarioConfig::default()
        }
    }

    pub fn alpha(&self) -> Complex64 {
        Complex64::new(self.alpha_re, self.alpha_im)
    }

    pub fn beta(&self) -> Complex64 {
        Complex64::new(self.beta_re, self.beta_im)
    }

    /// The second coherent amplitude actually used by the run: the
    /// two-atom field-entangled construction pins it to -alpha.
    pub fn effective_beta(&self) -> Complex64 {
        if self.scenario == ScenarioKind::TwoAtomFieldEntangled {
            -self.alpha()
        } else {
            self.beta()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.c) {
            return Err(Error::InvalidConfig {
                field: "C",
                reason: format!("{} outside [0, 1]", self.c),
            });
        }
        if self.steps < 2 {
            return Err(Error::InvalidConfig {
                field: "steps",
                reason: format!("{} < 2", self.steps),
            });
        }
        if !(self.t_max > 0.0) {
            return Err(Error::InvalidConfig {
                field: "t_max",
                reason: format!("{} not positive", self.t_max),
            });
        }
        if !(self.lambda > 0.0) {
            return Err(Error::InvalidConfig {
                field: "lambda",
                reason: format!("{} not positive", self.lambda),
            });
        }
        for (field, value) in [
            ("alpha_re", self.alpha_re),
            ("alpha_im", self.alpha_im),
            ("beta_re", self.beta_re),
            ("beta_im", self.beta_im),
        ] {
            if !value.is_finite() {
                return Err(Error::InvalidConfig {
                    field,
                    reason: "not finite".into(),
                });
            }
        }
        Ok(())
    }

    /// The config with the automatic truncation dimension resolved.
    pub fn effective(&self) -> Result<ScenarioConfig> {
        self.validate()?;
        let mut eff = self.clone();
        if eff.n == 0 {
            let mut dim = fock::auto_dim(eff.alpha());
            if eff.uses_beta() {
                dim = dim.max(fock::auto_dim(eff.effective_beta()));
            }
            eff.n = dim;
        }
        Ok(eff)
    }

    fn uses_beta(&self) -> bool {
        matches!(
            self.scenario,
            ScenarioKind::FieldMixture | ScenarioKind::TwoAtomFieldEntangled
        )
    }

    /// Uniform time grid, both endpoints inclusive.
    pub fn times(&self) -> Vec<f64> {
        let dt = self.t_max / (self.steps - 1) as f64;
        (0..self.steps).map(|i| i as f64 * dt).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("config serializes")
    }

    pub fn from_json(text: &str) -> Result<ScenarioConfig> {
        let cfg: ScenarioConfig = serde_json::from_str(text).map_err(|e| Error::InvalidConfig {
            field: "json",
            reason: e.to_string(),
        })?;
        cfg.validate()?;
        Ok(cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_is_the_field_mixture_run() {
        let cfg = ScenarioConfig::default();
        assert_eq!(cfg.scenario, ScenarioKind::FieldMixture);
        assert_eq!(cfg.c, 0.5);
        assert_eq!(cfg.alpha(), Complex64::new(4.0, 0.0));
        assert_eq!(cfg.beta(), Complex64::new(-4.0, 0.0));
        cfg.validate().unwrap();
    }

    #[test]
    fn effective_fills_dimension() {
        let eff = ScenarioConfig::default().effective().unwrap();
        assert_eq!(eff.n, 128);
        // idempotent
        assert_eq!(eff.effective().unwrap(), eff);
    }

    #[test]
    fn json_round_trip_is_exact() {
        let eff = ScenarioConfig::default().effective().unwrap();
        let text = eff.to_json();
        let back = ScenarioConfig::from_json(&text).unwrap();
        assert_eq!(back, eff);
    }

    #[test]
    fn validation_rejects_bad_fields() {
        let mut cfg = ScenarioConfig::default();
        cfg.c = 1.5;
        assert!(matches!(
            cfg.validate(),
            Err(Error::InvalidConfig { field: "C", .. })
        ));
        let mut cfg = ScenarioConfig::default();
        cfg.steps = 1;
        assert!(cfg.validate().is_err());
        let mut cfg = ScenarioConfig::default();
        cfg.t_max = -1.0;
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn times_are_inclusive_and_uniform() {
        let mut cfg = ScenarioConfig::default();
        cfg.steps = 5;
        cfg.t_max = 2.0;
        let times = cfg.times();
        assert_eq!(times.len(), 5);
        assert_eq!(times[0], 0.0);
        assert_eq!(*times.last().unwrap(), 2.0);
        assert!((times[1] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn two_atom_field_entangled_pins_beta() {
        let mut cfg = ScenarioConfig::default();
        cfg.scenario = ScenarioKind::TwoAtomFieldEntangled;
        cfg.beta_re = 7.0;
        assert_eq!(cfg.effective_beta(), Complex64::new(-4.0, 0.0));
    }
}
