use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use nfold::preset::{preset, presets, Preset};
use nfold::reduction::integral::search_all;
use nfold::reduction::{
    search_integral, verify_product, Bounds, IntegralConstant, ProductReport, SearchPolicy,
};
use nfold::susy::{conditions_for, ConditionSet, ParamAssignment, Stage};

use crate::error::CliError;

/// Largest N accepted for the raw and eliminated stages.
pub const MAX_N: u32 = 8;

/// Shared state for one invocation: bounds and the integrals computed so
/// far, keyed by `(N, preset)`.
pub struct Engine {
    bounds: Bounds,
    products: Mutex<BTreeMap<(u32, &'static str), Arc<ProductReport>>>,
}

pub fn parse_stage(s: &str) -> Result<Stage, CliError> {
    match s {
        "raw" => Ok(Stage::Raw),
        "eliminated" => Ok(Stage::Eliminated),
        "transformed" => Ok(Stage::Transformed),
        _ => Err(CliError::Usage(format!(
            "unknown stage '{s}' (expected raw, eliminated or transformed)"
        ))),
    }
}

pub fn lookup_preset(name: &str) -> Result<&'static dyn Preset, CliError> {
    preset(name).ok_or_else(|| {
        let known: Vec<&str> = presets().iter().map(|p| p.name()).collect();
        CliError::Usage(format!(
            "unknown preset '{name}' (expected one of {})",
            known.join(", ")
        ))
    })
}

impl Engine {
    pub fn new(bounds: Bounds) -> Self {
        Engine {
            bounds,
            products: Mutex::new(BTreeMap::new()),
        }
    }

    pub fn bounds(&self) -> Bounds {
        self.bounds
    }

    /// Parameter values of `preset` at `n`, rejecting unsupported `n`.
    pub fn params(&self, n: u32, preset: &dyn Preset) -> Result<ParamAssignment, CliError> {
        if !preset.supports(n) {
            return Err(CliError::Usage(format!(
                "preset '{}' is not defined for N={n}",
                preset.name()
            )));
        }
        Ok(preset.params(n)?)
    }

    pub fn conditions(
        &self,
        n: u32,
        stage: Stage,
        preset: &dyn Preset,
    ) -> Result<ConditionSet, CliError> {
        match stage {
            Stage::Raw | Stage::Eliminated if !(2..=MAX_N).contains(&n) => Err(CliError::Usage(
                format!("N={n} out of range for the {stage} stage (2..={MAX_N})"),
            )),
            Stage::Raw | Stage::Eliminated => Ok(conditions_for(n, stage, &ParamAssignment::new())?),
            Stage::Transformed => {
                let params = self.params(n, preset)?;
                Ok(conditions_for(n, stage, &params)?)
            }
        }
    }

    /// Integrals `J_1..J_{N−1}` for `preset` with the product check that
    /// fixes the constant part of the last one.
    pub fn integrals(&self, n: u32, preset: &dyn Preset) -> Result<Arc<ProductReport>, CliError> {
        let key = (n, preset.name());
        if let Some(r) = self.products.lock().expect("lock").get(&key) {
            return Ok(r.clone());
        }
        let params = self.params(n, preset)?;
        if params.is_empty() {
            return Err(CliError::Usage(format!(
                "preset '{}' keeps the parameters symbolic; integrals need fixed values",
                preset.name()
            )));
        }
        let cs = conditions_for(n, Stage::Transformed, &params)?;
        let policy = SearchPolicy {
            bounds: self.bounds,
            ..Default::default()
        };
        let ics = search_all(&cs, &policy, &|k| preset.scale(n, k))?;
        let report = Arc::new(verify_product(n, &params, &ics, self.bounds)?);
        self.products
            .lock()
            .expect("lock")
            .insert(key, report.clone());
        Ok(report)
    }
}

impl Engine {
    /// `J_1..J_k` for `preset`, each searched with the earlier ones known.
    pub fn search(
        &self,
        n: u32,
        k: u32,
        preset: &dyn Preset,
    ) -> Result<Vec<IntegralConstant>, CliError> {
        let params = self.params(n, preset)?;
        if params.is_empty() {
            return Err(CliError::Usage(format!(
                "preset '{}' keeps the parameters symbolic; search needs fixed values",
                preset.name()
            )));
        }
        if k == 0 || k >= n {
            return Err(CliError::Usage(format!("k={k} out of range 1..={}", n - 1)));
        }
        let cs = conditions_for(n, Stage::Transformed, &params)?;
        let policy = SearchPolicy {
            bounds: self.bounds,
            ..Default::default()
        };
        let mut known = Vec::new();
        for i in 1..=k {
            let ic = search_integral(&cs, i, &known, &policy, preset.scale(n, i).as_ref())?;
            known.push(ic);
        }
        Ok(known)
    }
}
