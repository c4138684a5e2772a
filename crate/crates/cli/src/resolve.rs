use std::fs;

use anderson_core::experiments::{ExperimentConfig, ExperimentKind};
use anderson_core::Error;
use serde_json::{json, Map, Value};

use crate::args::{BcArg, ConventionArg, Params};

/// Defaults for `kind`, overlaid by the config file, overlaid by the flags.
pub fn resolve(kind: ExperimentKind, params: &Params) -> Result<ExperimentConfig, Error> {
    let mut merged = serde_json::to_value(ExperimentConfig::defaults(kind)).expect("defaults serialize");
    let obj = merged.as_object_mut().expect("config is an object");
    if let Some(path) = &params.config {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read config {}: {e}", path.display())))?;
        let file: Value = serde_json::from_str(&text)
            .map_err(|e| Error::Config(format!("config {} is not valid JSON: {e}", path.display())))?;
        let Value::Object(file) = file else {
            return Err(Error::Config(format!("config {} must hold a JSON object", path.display())));
        };
        for (k, v) in file {
            if k == "kind" && v != json!(kind) {
                return Err(Error::Config(format!("config is for kind {v}, not {}", kind.name())));
            }
            obj.insert(k, v);
        }
    }
    overlay_flags(obj, params);
    let workers = params.workers.or_else(|| obj.get("workers").and_then(Value::as_u64).map(|w| w as usize));
    let mut cfg: ExperimentConfig =
        serde_json::from_value(merged).map_err(|e| Error::Config(format!("invalid configuration: {e}")))?;
    cfg.workers = workers.unwrap_or(0);
    cfg.validate()?;
    Ok(cfg)
}

fn overlay_flags(obj: &mut Map<String, Value>, p: &Params) {
    let mut set = |k: &str, v: Option<Value>| {
        if let Some(v) = v {
            obj.insert(k.to_string(), v);
        }
    };
    set("d", p.d.map(|v| json!(v)));
    set("L", p.side.map(|v| json!(v)));
    set("p", p.p.map(|v| json!(v)));
    set("h", p.h.map(|v| json!(v)));
    set("base_seed", p.seed.map(|v| json!(v)));
    set("trials", p.trials.map(|v| json!(v)));
    set("c", p.c.map(|v| json!(v)));
    set("c_grid", p.c_grid.as_ref().map(|v| json!(v)));
    set("L_grid", p.side_grid.as_ref().map(|v| json!(v)));
    set("a", p.a.map(|v| json!(v)));
    set("l_block", p.l_block.map(|v| json!(v)));
    set("l_max", p.l_max.map(|v| json!(v)));
    set("p_star", p.p_star.map(|v| json!(v)));
    set("m_grid", p.m_grid.as_ref().map(|v| json!(v)));
    set("s_max", p.s_max.map(|v| json!(v)));
    set("tol", p.tol.map(|v| json!(v)));
    set(
        "convention",
        p.convention.map(|c| {
            json!(match c {
                ConventionArg::Strict => "strict",
                ConventionArg::Weak => "weak",
            })
        }),
    );
    set(
        "bc",
        p.bc.map(|b| {
            json!(match b {
                BcArg::Dirichlet => "dirichlet",
                BcArg::Neumann => "neumann",
            })
        }),
    );
    if p.clamp_w {
        set("clamp_w", Some(json!(true)));
    }
}
