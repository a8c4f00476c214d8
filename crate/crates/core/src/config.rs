//! Run configuration and the objects built from it.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::gf::{Field, FieldSpec};
use crate::hecke::HeckeAlgebra;
use crate::propweyl::ProPGroup;
use crate::rootdata::{GroupSpec, RootDatum};
use crate::topmod::TopModule;

pub const DEFAULT_SEED: u64 = 0x5eed_2024;
pub const DEFAULT_MAX_LEN: usize = 3;
pub const DEFAULT_SAMPLES: usize = 1000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub group: GroupSpec,
    pub field: FieldSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_len: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
}

impl RunConfig {
    pub fn new(preset: &str, field: FieldSpec) -> Self {
        RunConfig {
            group: GroupSpec::preset(preset),
            field,
            seed: None,
            max_len: None,
            samples: None,
        }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    /// The group and field parts, which decide compatibility of inputs.
    pub fn same_algebra(&self, other: &RunConfig) -> bool {
        self.group == other.group && self.field == other.field
    }
}

/// Everything needed to compute in `H` and `E^d` for one configuration.
#[derive(Clone, Debug)]
pub struct Setup {
    pub config: RunConfig,
    pub group: ProPGroup,
    pub alg: HeckeAlgebra,
    pub top: TopModule,
}

impl Setup {
    pub fn new(config: RunConfig) -> Result<Setup> {
        let field = Field::new(&config.field)?;
        let rd = RootDatum::from_spec(&config.group)?;
        let group = ProPGroup::new(rd, config.field.q()?)?;
        let alg = HeckeAlgebra::new(group.clone(), field)?;
        let top = TopModule::new(alg.clone());
        Ok(Setup {
            config,
            group,
            alg,
            top,
        })
    }

    pub fn preset(name: &str, p: u32, f: u32, m: u32) -> Result<Setup> {
        Setup::new(RunConfig::new(name, FieldSpec::new(p, f, m)))
    }

    pub fn field(&self) -> &Field {
        self.alg.field()
    }

    /// Echo of the configuration plus the derived field metadata.
    pub fn metadata(&self) -> serde_json::Value {
        let (poly, default_poly) = self.field().reduction_poly();
        serde_json::json!({
            "config": self.config,
            "field": {
                "reduction_poly": poly,
                "default_poly": default_poly,
                "zeta": self.alg.zeta().ok().map(|z| self.field().coeffs(z)),
            },
            "q": self.group.q(),
            "torsion_free_hypothesis": self.field().characteristic() >= 5,
            "version": env!("CARGO_PKG_VERSION"),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_config() {
        let c = RunConfig::from_json(
            r#"{"group":{"preset":"SL2"},"field":{"p":3,"f":1,"m":1},"seed":7}"#,
        )
        .unwrap();
        assert_eq!(c.seed, Some(7));
        let s = Setup::new(c).unwrap();
        assert_eq!(s.group.q(), 3);
        assert!(RunConfig::from_json(r#"{"group":{"preset":"SL2"}}"#).is_err());
    }

    #[test]
    fn q_and_characteristic() {
        let s = Setup::preset("SL2", 3, 2, 2).unwrap();
        assert_eq!(s.group.q(), 9);
        assert!(Setup::preset("SL2", 3, 2, 3).is_err());
    }
}
