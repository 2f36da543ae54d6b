use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{write_atomic, SplitMix64};
use crate::error::{Error, Result};
use crate::secrecy::{ChannelGains, SecrecyScenario};

/// Recipe for a generated scenario.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioSpec {
    pub n_channels: usize,
    pub seed: u64,
    pub p_total_w: f64,
    pub p_s_w: f64,
    pub sigma2_w: f64,
    /// Multiplier applied to the uniform `[0, 1)` gain draws.
    pub gain_scale: f64,
    /// Swap `g_s` and `g_e` within a channel when `g_e > g_s`, so every
    /// channel's secrecy rate is nonnegative at any jamming power.
    pub nonneg_baseline: bool,
}

impl ScenarioSpec {
    /// Jammer budget 0.05 W, user power 0.01 W, unit noise, gains in
    /// `[0, 1e4)`.
    pub fn new(n_channels: usize, seed: u64) -> Self {
        ScenarioSpec {
            n_channels,
            seed,
            p_total_w: 0.05,
            p_s_w: 0.01,
            sigma2_w: 1.0,
            gain_scale: 1e4,
            nonneg_baseline: false,
        }
    }

    pub fn with_nonneg_baseline(mut self, on: bool) -> Self {
        self.nonneg_baseline = on;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_channels == 0 {
            return Err(Error::invalid("n_channels must be at least 1"));
        }
        for (name, v) in [
            ("p_total_w", self.p_total_w),
            ("p_s_w", self.p_s_w),
            ("sigma2_w", self.sigma2_w),
            ("gain_scale", self.gain_scale),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::invalid(format!(
                    "{name} must be positive and finite, got {v}"
                )));
            }
        }
        Ok(())
    }
}

/// Draws `3 N` gains from SplitMix64 seeded with `spec.seed`, per channel in
/// the order `g_s`, `g_e`, `g_j`.
pub fn gen_scenario(spec: &ScenarioSpec) -> Result<SecrecyScenario> {
    spec.validate()?;
    let mut rng = SplitMix64::new(spec.seed);
    let channels = (0..spec.n_channels)
        .map(|_| {
            let mut g_s = rng.next_f64() * spec.gain_scale;
            let mut g_e = rng.next_f64() * spec.gain_scale;
            let g_j = rng.next_f64() * spec.gain_scale;
            if spec.nonneg_baseline && g_e > g_s {
                std::mem::swap(&mut g_s, &mut g_e);
            }
            ChannelGains { g_s, g_e, g_j }
        })
        .collect();
    SecrecyScenario::new(channels, spec.p_total_w, spec.p_s_w, spec.sigma2_w)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub seed: u64,
    pub spec: ScenarioSpec,
}

/// On-disk scenario. Explicit gains are authoritative; `provenance` is
/// informational only.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioFile {
    pub n_channels: usize,
    pub p_total_w: f64,
    pub p_s_w: f64,
    pub sigma2_w: f64,
    pub channels: Vec<ChannelGains>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
}

impl ScenarioFile {
    pub fn from_scenario(scenario: &SecrecyScenario, provenance: Option<Provenance>) -> Self {
        ScenarioFile {
            n_channels: scenario.n_channels(),
            p_total_w: scenario.p_total_w(),
            p_s_w: scenario.p_s_w(),
            sigma2_w: scenario.sigma2_w(),
            channels: scenario.channels().to_vec(),
            provenance,
        }
    }

    pub fn generated(spec: &ScenarioSpec) -> Result<Self> {
        let scenario = gen_scenario(spec)?;
        Ok(ScenarioFile::from_scenario(
            &scenario,
            Some(Provenance {
                seed: spec.seed,
                spec: spec.clone(),
            }),
        ))
    }

    pub fn to_scenario(&self) -> Result<SecrecyScenario> {
        if self.n_channels != self.channels.len() {
            return Err(Error::Data(format!(
                "n_channels is {} but {} channels are listed",
                self.n_channels,
                self.channels.len()
            )));
        }
        SecrecyScenario::new(
            self.channels.clone(),
            self.p_total_w,
            self.p_s_w,
            self.sigma2_w,
        )
        .map_err(|e| Error::Data(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("scenario serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

pub fn write_scenario(path: &Path, file: &ScenarioFile) -> Result<()> {
    write_atomic(path, file.to_json().as_bytes())
}

/// Reads and validates a scenario file. Unreadable files are I/O errors;
/// anything that does not describe a valid scenario is a data error.
pub fn read_scenario(path: &Path) -> Result<SecrecyScenario> {
    let text = std::fs::read_to_string(path)?;
    ScenarioFile::from_json(&text)?.to_scenario()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_gains_seed_42() {
        // first six SplitMix64 outputs for seed 42, as top-53-bit uniforms x 1e4
        let s = gen_scenario(&ScenarioSpec::new(2, 42)).unwrap();
        let g = s.channels();
        assert_eq!(g[0].g_s, 7415.6487877182335);
        assert_eq!(g[0].g_e, 1599.103928769201);
        assert_eq!(g[0].g_j, 2786.0113025513865);
        assert_eq!(g[1].g_s, 3441.9071652363755);
        assert_eq!(g[1].g_e, 380.3016854024621);
        assert_eq!(g[1].g_j, 8682.280765465322);
    }

    #[test]
    fn deterministic() {
        let spec = ScenarioSpec::new(8, 99);
        assert_eq!(gen_scenario(&spec).unwrap(), gen_scenario(&spec).unwrap());
    }

    #[test]
    fn nonneg_baseline_orders_gains() {
        let plain = gen_scenario(&ScenarioSpec::new(50, 5)).unwrap();
        assert!(plain.channels().iter().any(|g| g.g_e > g.g_s));
        let s = gen_scenario(&ScenarioSpec::new(50, 5).with_nonneg_baseline(true)).unwrap();
        assert!(s.channels().iter().all(|g| g.g_s >= g.g_e));
        for (a, b) in plain.channels().iter().zip(s.channels()) {
            assert_eq!(a.g_s.max(a.g_e), b.g_s);
            assert_eq!(a.g_j, b.g_j);
        }
    }

    #[test]
    fn invalid_specs() {
        assert!(gen_scenario(&ScenarioSpec::new(0, 1)).is_err());
        let mut spec = ScenarioSpec::new(2, 1);
        spec.gain_scale = 0.0;
        assert!(gen_scenario(&spec).is_err());
    }

    #[test]
    fn json_round_trip_is_exact() {
        let file = ScenarioFile::generated(&ScenarioSpec::new(4, u64::MAX)).unwrap();
        let back = ScenarioFile::from_json(&file.to_json()).unwrap();
        assert_eq!(back, file);
        assert_eq!(
            back.to_scenario().unwrap(),
            gen_scenario(&ScenarioSpec::new(4, u64::MAX)).unwrap()
        );
    }

    #[test]
    fn explicit_gains_win_over_provenance() {
        let mut file = ScenarioFile::generated(&ScenarioSpec::new(2, 1)).unwrap();
        file.channels[0] = ChannelGains::new(1.0, 2.0, 3.0);
        let s = file.to_scenario().unwrap();
        assert_eq!(s.channels()[0], ChannelGains::new(1.0, 2.0, 3.0));
    }

    #[test]
    fn malformed_files_are_data_errors() {
        assert!(matches!(ScenarioFile::from_json("{"), Err(Error::Data(_))));
        assert!(matches!(
            ScenarioFile::from_json(r#"{"n_channels": 1}"#),
            Err(Error::Data(_))
        ));
        let mismatched = r#"{"n_channels": 2, "p_total_w": 0.05, "p_s_w": 0.01, "sigma2_w": 1.0,
            "channels": [{"g_s": 1.0, "g_e": 0.5, "g_j": 2.0}]}"#;
        let file = ScenarioFile::from_json(mismatched).unwrap();
        assert!(matches!(file.to_scenario(), Err(Error::Data(_))));
        let negative = r#"{"n_channels": 1, "p_total_w": -0.05, "p_s_w": 0.01, "sigma2_w": 1.0,
            "channels": [{"g_s": 1.0, "g_e": 0.5, "g_j": 2.0}]}"#;
        assert!(matches!(
            ScenarioFile::from_json(negative).unwrap().to_scenario(),
            Err(Error::Data(_))
        ));
    }
}
