//! Optional TOML configuration. Flags and environment variables win over
//! file values, which win over built-in defaults.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;
use traductive::dictif::ContainerSchedule;
use traductive::syntax::parse_dictif;
use traductive::Limits;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub max_nodes: Option<usize>,
    pub max_vars: Option<usize>,
    pub max_steps: Option<u64>,
    pub seed: Option<u64>,
    pub format: Option<String>,
    #[serde(default)]
    pub schedules: BTreeMap<String, ScheduleSpec>,
}

/// `containers[i]` is `C_{i+1}` in dictif notation, `next[i]` is `μ(i+1)`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScheduleSpec {
    pub containers: Vec<String>,
    pub next: Vec<usize>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<FileConfig, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        toml::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
    }

    pub fn limits(&self, nodes: Option<usize>, vars: Option<usize>, steps: Option<u64>) -> Limits {
        let d = Limits::default();
        Limits {
            max_nodes: nodes.or(self.max_nodes).unwrap_or(d.max_nodes),
            max_tt_vars: vars.or(self.max_vars).unwrap_or(d.max_tt_vars),
            max_eval_steps: steps.or(self.max_steps).unwrap_or(d.max_eval_steps),
        }
    }

    pub fn schedule(&self, name: &str) -> Result<ContainerSchedule, String> {
        if name == "p-ladder" {
            return Ok(ContainerSchedule::p_ladder());
        }
        let spec = self
            .schedules
            .get(name)
            .ok_or_else(|| format!("unknown schedule `{name}`; define it under [schedules.{name}]"))?;
        let containers = spec
            .containers
            .iter()
            .map(|c| parse_dictif(c).map_err(|e| format!("schedule {name}: container `{c}`: {e}")))
            .collect::<Result<Vec<_>, _>>()?;
        ContainerSchedule::explicit(containers, spec.next.clone()).map_err(|e| format!("schedule {name}: {e}"))
    }
}
