//! The resolved run specification, echoed verbatim into every output so a
//! result file is self-describing. The JSON body (minus `command`) uses the
//! same keys as a config file and can be pasted back into one.

use serde::Serialize;

use crate::cli::{CurveArg, ModeArg, ObservableArg, StartArg};

#[derive(Debug, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Spec {
    Quenched {
        c: f64,
        tau_max: f64,
        tau_steps: usize,
        trajectories: u64,
        seed: u64,
        mode: ModeArg,
        observable: ObservableArg,
        #[serde(skip_serializing_if = "Option::is_none")]
        q: Option<f64>,
    },
    Temporal {
        start: StartArg,
        #[serde(skip_serializing_if = "Option::is_none")]
        phi: Option<f64>,
        d: f64,
        dt: f64,
        t_max: f64,
        t_steps: usize,
        trajectories: u64,
        seed: u64,
        mode: ModeArg,
        observable: ObservableArg,
        #[serde(skip_serializing_if = "Option::is_none")]
        q: Option<f64>,
    },
    HaarBaseline {
        samples: u64,
        seed: u64,
        observable: ObservableArg,
        #[serde(skip_serializing_if = "Option::is_none")]
        q: Option<f64>,
    },
    GeometryCheck {
        points: usize,
        h: f64,
        ratio_points: usize,
        volume_samples: u64,
        seed: u64,
    },
    Analytic {
        curve: CurveArg,
        tau_max: f64,
        tau_steps: usize,
    },
}

impl Spec {
    /// Single-line JSON for the `# spec:` comment.
    pub fn json_line(&self) -> String {
        serde_json::to_string(self).expect("spec serialization cannot fail")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_line_is_single_line_with_command_tag() {
        let spec = Spec::Quenched {
            c: 0.0,
            tau_max: 5.0,
            tau_steps: 101,
            trajectories: 4096,
            seed: 42,
            mode: ModeArg::AverageOfEntanglement,
            observable: ObservableArg::Linear,
            q: None,
        };
        let line = spec.json_line();
        assert!(!line.contains('\n'));
        let v: serde_json::Value = serde_json::from_str(&line).unwrap();
        assert_eq!(v["command"], "quenched");
        assert_eq!(v["mode"], "average-of-entanglement");
        assert_eq!(v["seed"], 42);
        assert!(v.get("q").is_none(), "absent q must be omitted");
    }

    #[test]
    fn spec_body_round_trips_into_a_config() {
        let spec = Spec::Temporal {
            start: StartArg::Phi,
            phi: Some(0.3),
            d: 0.5,
            dt: 1e-3,
            t_max: 0.6,
            t_steps: 61,
            trajectories: 4096,
            seed: 1,
            mode: ModeArg::EntanglementOfAverage,
            observable: ObservableArg::Renyi,
            q: Some(2.0),
        };
        let mut v: serde_json::Value = serde_json::from_str(&spec.json_line()).unwrap();
        v.as_object_mut().unwrap().remove("command");
        let cfg: crate::config::TemporalFileConfig =
            serde_json::from_value(v).expect("spec keys must match config keys");
        assert_eq!(cfg.phi, Some(0.3));
        assert_eq!(cfg.observable, Some(ObservableArg::Renyi));
        assert_eq!(cfg.mode, Some(ModeArg::EntanglementOfAverage));
    }
}
