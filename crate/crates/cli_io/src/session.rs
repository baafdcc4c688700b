//! Resolving a module over a range, with resumable checkpoints.
//!
//! With a save directory, the resolution is kept in
//! `<dir>/<module>_n<max n>_s<max s>.adsec`, rewritten after every stem; a
//! later run with the same module and range resumes from it. The resolution
//! is a deterministic function of module and range, so resumed and
//! uninterrupted runs produce identical files.

use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use resolution::Resolution;
use secondary_lift::SecondaryResolution;
use steenrod_milnor::ModulePresentation;

use crate::module_file::load_module_file;
use crate::{timing, CliError};

pub const SPHERE: &str = "S_2";
pub const THREADS_ENV: &str = "ADAMS_THREADS";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    /// `S_2` or the path of a module file.
    pub module: String,
    pub save_dir: Option<PathBuf>,
    pub max_n: i32,
    pub max_s: u32,
    /// Where to write the timing log of the secondary computation.
    pub timing: Option<PathBuf>,
    /// Save the checkpoint and stop once this stem is resolved.
    pub stop_after_stem: Option<i32>,
}

impl RunConfig {
    pub fn new(max_n: i32, max_s: u32) -> Self {
        Self { module: SPHERE.into(), save_dir: None, max_n, max_s, timing: None, stop_after_stem: None }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.max_n < 0 {
            return Err(CliError::Usage(format!("max n must be ≥ 0, got {}", self.max_n)));
        }
        Ok(())
    }

    pub fn load_module(&self) -> Result<ModulePresentation, CliError> {
        if self.module == SPHERE {
            return Ok(ModulePresentation::sphere());
        }
        if !Path::new(&self.module).is_file() {
            return Err(CliError::Usage(format!("unknown module {:?}: expected S_2 or a module file", self.module)));
        }
        Ok(load_module_file(&self.module)?)
    }

    pub fn checkpoint_path(&self, module: &ModulePresentation) -> Option<PathBuf> {
        let dir = self.save_dir.as_ref()?;
        Some(dir.join(format!("{}_n{}_s{}.adsec", module.name(), self.max_n, self.max_s)))
    }
}

fn is_sphere(m: &ModulePresentation) -> bool {
    m.gen_degrees() == [0] && m.actions().next().is_none()
}

fn same_module(a: &ModulePresentation, b: &ModulePresentation) -> bool {
    a.gen_degrees() == b.gen_degrees() && a.actions().eq(b.actions())
}

fn save(res: &Resolution, path: &Path) -> Result<(), CliError> {
    let tmp = path.with_extension("adsec.tmp");
    let mut w = BufWriter::new(File::create(&tmp).map_err(CliError::io(&tmp))?);
    res.write_to(&mut w)?;
    w.into_inner().map_err(|e| CliError::Io { path: tmp.clone(), source: e.into_error() })?;
    std::fs::rename(&tmp, path).map_err(CliError::io(path))
}

/// Resolves the configured module through `max_n`, `max_s`, one stem at a
/// time, resuming from and updating the checkpoint if there is one.
pub fn resolve(cfg: &RunConfig) -> Result<Resolution, CliError> {
    cfg.validate()?;
    let module = cfg.load_module()?;
    let path = cfg.checkpoint_path(&module);
    if let Some(dir) = &cfg.save_dir {
        std::fs::create_dir_all(dir).map_err(CliError::io(dir))?;
    }
    let mut res = match &path {
        Some(p) if p.exists() => {
            let r = Resolution::load(p)?;
            if !same_module(r.module(), &module) {
                return Err(CliError::Usage(format!("checkpoint {} is for a different module", p.display())));
            }
            r
        }
        _ => Resolution::new(module),
    };
    for n in 0..=cfg.max_n {
        let done = (0..=cfg.max_s).all(|s| res.is_computed(s, n + s as i32));
        if !done {
            res.extend(n, cfg.max_s)?;
            if let Some(p) = &path {
                save(&res, p)?;
            }
        }
        if cfg.stop_after_stem == Some(n) && n < cfg.max_n {
            return Err(CliError::Interrupted(n));
        }
    }
    Ok(res)
}

/// The secondary resolution of the sphere over the configured range; writes
/// the timing log if one is configured.
pub fn secondary(cfg: &RunConfig) -> Result<Arc<SecondaryResolution>, CliError> {
    let res = resolve(cfg)?;
    if !is_sphere(res.module()) {
        return Err(CliError::Usage(format!(
            "secondary computations are only supported for {SPHERE}, not {}",
            res.module().name()
        )));
    }
    let mut sec = SecondaryResolution::new(Arc::new(res));
    sec.compute()?;
    if let Some(path) = &cfg.timing {
        let mut w = BufWriter::new(File::create(path).map_err(CliError::io(path))?);
        timing::write_log(&mut w, sec.timings()).map_err(CliError::io(path))?;
        w.into_inner().map_err(|e| CliError::Io { path: path.clone(), source: e.into_error() })?;
    }
    Ok(Arc::new(sec))
}
