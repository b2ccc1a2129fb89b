//! Run configuration: defaults, JSON file merge, `--set` overrides and the
//! canonical hash stamped on every output.

use invosc::open_system::BathParams;
use invosc::{ForceProfile, GaussianPacket, SystemParams};
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

use crate::CliError;

const MAX_SAMPLES: usize = 1_000_000;
const MAX_GRID: usize = 1 << 22;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub system: SystemParams,
    pub packet: GaussianPacket,
    pub force: ForceProfile,
    pub bath: BathParams,
    pub times: TimeGrid,
    pub kick: KickConfig,
    pub wavefunction: WavefunctionConfig,
    pub tunnel: TunnelConfig,
    pub boundary: BoundaryConfig,
    pub grid: GridConfig,
    pub verify: VerifyConfig,
}

/// `count` equally spaced samples on `[start, stop]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeGrid {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KickConfig {
    pub p: f64,
    pub t1: f64,
}

/// x-grid for `evolve --wavefunction`, dumped at time `t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WavefunctionConfig {
    pub t: f64,
    pub x_min: f64,
    pub x_max: f64,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TunnelConfig {
    pub epsilon: f64,
    pub beta_min: f64,
    pub beta_max: f64,
    pub beta_count: usize,
    pub barrier: BarrierConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BarrierConfig {
    pub omega: f64,
    pub xi0: f64,
    pub forces: Vec<f64>,
    pub xi_min: f64,
    pub xi_max: f64,
    pub xi_count: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundaryConfig {
    pub a_min: f64,
    pub a_max: f64,
    pub count: usize,
}

/// Split-step oracle grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub x_min: f64,
    pub x_max: f64,
    pub n: usize,
    pub dt: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyConfig {
    /// Times at which the closed form is compared with the grid.
    pub grid_times: Vec<f64>,
    pub grid_tolerance: f64,
    /// Step used by `verify --coarse`.
    pub coarse_dt: f64,
    pub ode_dt: f64,
    pub ode_tolerance: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            system: SystemParams::default(),
            packet: GaussianPacket {
                x0: -3.0,
                p0: 1.0,
                sigma: 1.0,
            },
            force: ForceProfile::Harmonic {
                amplitude: 0.5,
                omega0: 2.0,
            },
            bath: BathParams::default(),
            times: TimeGrid {
                start: 0.0,
                stop: 2.0,
                count: 21,
            },
            kick: KickConfig { p: 1.0, t1: 0.0 },
            wavefunction: WavefunctionConfig {
                t: 1.0,
                x_min: -20.0,
                x_max: 20.0,
                count: 401,
            },
            tunnel: TunnelConfig {
                epsilon: 3.0,
                beta_min: 0.0,
                beta_max: 1.0,
                beta_count: 21,
                barrier: BarrierConfig {
                    omega: 1.0,
                    xi0: -0.5,
                    forces: vec![-0.2, 0.0, 0.2],
                    xi_min: -1.0,
                    xi_max: 1.0,
                    xi_count: 201,
                },
            },
            boundary: BoundaryConfig {
                a_min: 0.5,
                a_max: 20.0,
                count: 100,
            },
            grid: GridConfig {
                x_min: -40.0,
                x_max: 40.0,
                n: 4096,
                dt: 1e-3,
            },
            verify: VerifyConfig {
                grid_times: vec![0.5, 1.0, 1.5],
                grid_tolerance: 1e-3,
                coarse_dt: 0.1,
                ode_dt: 1e-3,
                ode_tolerance: 1e-6,
            },
        }
    }
}

/// `count` points from `lo` to `hi` inclusive; a single point sits at `lo`.
pub fn linspace(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..count)
            .map(|i| {
                if i + 1 == count {
                    hi
                } else {
                    lo + (hi - lo) * i as f64 / (count - 1) as f64
                }
            })
            .collect(),
    }
}

impl RunConfig {
    /// Defaults, overlaid by `file` (a JSON object) and then by `overrides`
    /// of the form `dotted.path=value`.
    pub fn load(file: Option<&str>, overrides: &[String]) -> Result<Self, CliError> {
        let mut value = serde_json::to_value(RunConfig::default()).expect("default config serializes");
        if let Some(text) = file {
            let user: Value = serde_json::from_str(text)
                .map_err(|e| CliError::Config(format!("config is not valid JSON: {e}")))?;
            if !user.is_object() {
                return Err(CliError::Config("config must be a JSON object".into()));
            }
            merge(&mut value, user);
        }
        for entry in overrides {
            apply_override(&mut value, entry)?;
        }
        let config: RunConfig = serde_path_to_error::deserialize(value).map_err(|e| {
            let path = e.path().to_string();
            CliError::Config(format!("invalid config at `{path}`: {}", e.into_inner()))
        })?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let lib = |e: invosc::Error| CliError::Config(e.to_string());
        self.system.validate().map_err(lib)?;
        self.packet.validate().map_err(lib)?;
        self.force.validate().map_err(lib)?;
        self.bath.validate().map_err(lib)?;
        let check = |ok: bool, what: &str| {
            if ok {
                Ok(())
            } else {
                Err(CliError::Config(what.to_string()))
            }
        };
        let t = &self.times;
        check(
            t.start.is_finite() && t.stop.is_finite() && 0.0 <= t.start && t.start <= t.stop,
            "times: need 0 ≤ start ≤ stop",
        )?;
        check(t.count >= 1, "times.count must be at least 1")?;
        check(
            self.kick.p.is_finite() && self.kick.t1.is_finite() && self.kick.t1 >= 0.0,
            "kick: p finite and t1 ≥ 0 required",
        )?;
        let w = &self.wavefunction;
        check(
            w.t.is_finite() && w.t >= 0.0 && w.x_min < w.x_max && w.count >= 2,
            "wavefunction: need t ≥ 0, x_min < x_max, count ≥ 2",
        )?;
        let tu = &self.tunnel;
        check(
            tu.epsilon.is_finite() && tu.epsilon > 0.0,
            "tunnel.epsilon must be positive",
        )?;
        check(
            tu.beta_min.is_finite()
                && tu.beta_max.is_finite()
                && 0.0 <= tu.beta_min
                && tu.beta_min <= tu.beta_max,
            "tunnel: need 0 ≤ beta_min ≤ beta_max",
        )?;
        check(tu.beta_count >= 1, "tunnel.beta_count must be at least 1")?;
        let b = &tu.barrier;
        check(
            b.omega.is_finite() && b.omega > 0.0 && b.xi0.is_finite(),
            "tunnel.barrier: omega must be positive",
        )?;
        check(
            b.forces.iter().all(|f| f.is_finite()),
            "tunnel.barrier.forces must be finite",
        )?;
        check(
            b.xi_min < b.xi_max && b.xi_count >= 2,
            "tunnel.barrier: need xi_min < xi_max and xi_count ≥ 2",
        )?;
        let bd = &self.boundary;
        check(
            bd.a_min > 0.0 && bd.a_min <= bd.a_max && bd.a_max.is_finite() && bd.count >= 1,
            "boundary: need 0 < a_min ≤ a_max and count ≥ 1",
        )?;
        let g = &self.grid;
        check(
            g.x_min < g.x_max && g.n.is_power_of_two() && g.n >= 16 && g.dt > 0.0 && g.dt.is_finite(),
            "grid: need x_min < x_max, n a power of two ≥ 16, dt > 0",
        )?;
        let largest = [
            t.count,
            w.count,
            tu.beta_count,
            b.xi_count,
            b.forces.len(),
            bd.count,
            self.verify.grid_times.len(),
        ];
        check(
            largest.iter().all(|&c| c <= MAX_SAMPLES) && g.n <= MAX_GRID,
            "sample counts are limited to 1e6 and grid.n to 2^22",
        )?;
        let v = &self.verify;
        check(
            !v.grid_times.is_empty() && v.grid_times.iter().all(|&t| t.is_finite() && t > 0.0),
            "verify.grid_times must be positive",
        )?;
        check(
            [v.grid_tolerance, v.coarse_dt, v.ode_dt, v.ode_tolerance]
                .iter()
                .all(|x| x.is_finite() && *x > 0.0),
            "verify: tolerances and steps must be positive",
        )?;
        Ok(())
    }

    pub fn to_pretty_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes") + "\n"
    }

    /// SHA-256 of the compact canonical JSON of the effective config.
    pub fn sha256(&self) -> String {
        let canonical = serde_json::to_string(self).expect("config serializes");
        hex::encode(Sha256::digest(canonical.as_bytes()))
    }
}

/// Recursive object merge. A tagged object whose `kind` changes is replaced
/// wholesale, so stale variant fields do not leak across.
pub fn merge(base: &mut Value, overlay: Value) {
    match (base, overlay) {
        (Value::Object(base), Value::Object(overlay)) => {
            let kind_changed = matches!(
                (base.get("kind"), overlay.get("kind")),
                (Some(a), Some(b)) if a != b
            );
            if kind_changed {
                *base = overlay;
                return;
            }
            for (key, v) in overlay {
                match base.get_mut(&key) {
                    Some(slot) => merge(slot, v),
                    None => {
                        base.insert(key, v);
                    }
                }
            }
        }
        (slot, overlay) => *slot = overlay,
    }
}

/// Applies `a.b.c=value`. The value is read as JSON when it parses, else as
/// a string.
pub fn apply_override(config: &mut Value, entry: &str) -> Result<(), CliError> {
    let (path, raw) = entry
        .split_once('=')
        .ok_or_else(|| CliError::Config(format!("override `{entry}` is not of the form path=value")))?;
    let keys: Vec<&str> = path.split('.').collect();
    if keys.iter().any(|k| k.is_empty()) {
        return Err(CliError::Config(format!(
            "override path `{path}` has an empty segment"
        )));
    }
    let value = serde_json::from_str(raw).unwrap_or_else(|_| Value::String(raw.to_string()));
    let mut overlay = value;
    for key in keys.iter().rev() {
        let mut object = Map::new();
        object.insert((*key).to_string(), overlay);
        overlay = Value::Object(object);
    }
    merge(config, overlay);
    Ok(())
}
