//! Run configuration: resolving the algebra, the subcategory and the bounds.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{anyhow, bail, Result};
use monocat_core::algebra::{nilpotent_loop, preprojective, semisimple};
use monocat_core::field::is_supported_prime;
use monocat_core::{Algebra, Budget, Module, StructureKind, Subcat};

use crate::formats::{AlgebraSpec, ModuleSpec};

/// Marks errors that come from bad user input; they map to exit code 3.
#[derive(Debug)]
pub struct InputError(pub String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

pub fn input_error(msg: impl Into<String>) -> anyhow::Error {
    anyhow!(InputError(msg.into()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraSource {
    /// `nilpotent:N`, the truncated polynomial ring `k[x]/(x^N)`.
    Nilpotent(usize),
    /// `preprojective:M`, the preprojective algebra of type `A_M`.
    Preprojective(usize),
    /// `semisimple:N`, a product of `N` copies of the field.
    Semisimple(usize),
    File(PathBuf),
}

impl AlgebraSource {
    pub fn parse(s: &str) -> Result<AlgebraSource> {
        let builder = |rest: &str| -> Result<usize> {
            rest.parse::<usize>()
                .ok()
                .filter(|&n| n > 0)
                .ok_or_else(|| input_error(format!("builder parameter in {s:?} must be a positive integer")))
        };
        if let Some(rest) = s.strip_prefix("nilpotent:") {
            Ok(AlgebraSource::Nilpotent(builder(rest)?))
        } else if let Some(rest) = s.strip_prefix("preprojective:") {
            Ok(AlgebraSource::Preprojective(builder(rest)?))
        } else if let Some(rest) = s.strip_prefix("semisimple:") {
            Ok(AlgebraSource::Semisimple(builder(rest)?))
        } else {
            Ok(AlgebraSource::File(PathBuf::from(s)))
        }
    }

    /// Builds the algebra. `p` overrides the builder prime; for files it must match the file.
    pub fn load(&self, p: Option<u32>) -> Result<Algebra> {
        let prime = p.unwrap_or(2);
        if !is_supported_prime(prime) {
            return Err(input_error(format!("{prime} is not a supported prime")));
        }
        let built = match self {
            AlgebraSource::Nilpotent(n) => nilpotent_loop(*n, prime),
            AlgebraSource::Preprojective(m) => preprojective(*m, prime),
            AlgebraSource::Semisimple(n) => semisimple(*n, prime),
            AlgebraSource::File(path) => {
                let spec: AlgebraSpec = read_json(path)?;
                if let Some(p) = p {
                    if p != spec.p {
                        return Err(input_error(format!(
                            "--p {p} does not match the prime {} of {}",
                            spec.p,
                            path.display()
                        )));
                    }
                }
                let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or("algebra").to_string();
                return spec.to_algebra(&name).map_err(|e| input_error(format!("{}: {e:#}", path.display())));
            }
        };
        built.map_err(|e| input_error(e.to_string()))
    }
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubcatSource {
    All,
    Generators(Vec<PathBuf>),
}

impl SubcatSource {
    pub fn parse(s: &str) -> Result<SubcatSource> {
        if s == "all" {
            return Ok(SubcatSource::All);
        }
        let files: Vec<PathBuf> = s.split(',').filter(|f| !f.is_empty()).map(PathBuf::from).collect();
        if files.is_empty() {
            return Err(input_error("--subcat needs `all` or a comma separated list of module files"));
        }
        Ok(SubcatSource::Generators(files))
    }

    pub fn load(&self, alg: &Arc<Algebra>, bound: usize, budget: &Budget) -> Result<Subcat> {
        match self {
            SubcatSource::All => Ok(Subcat::all(alg.clone(), bound, budget)?),
            SubcatSource::Generators(files) => {
                let mut gens = Vec::new();
                for f in files {
                    gens.push(load_module(f, alg)?);
                }
                Subcat::new(alg.clone(), gens).map_err(|e| input_error(e.to_string()))
            }
        }
    }
}

pub fn load_module(path: &Path, alg: &Arc<Algebra>) -> Result<Module> {
    let spec: ModuleSpec = read_json(path)?;
    if spec.algebra != alg.name() {
        return Err(input_error(format!(
            "{} is a module over {:?}, not {:?}",
            path.display(),
            spec.algebra,
            alg.name()
        )));
    }
    spec.to_module(alg).map_err(|e| input_error(format!("{}: {e:#}", path.display())))
}

pub fn parse_kinds(s: &str) -> Result<Vec<StructureKind>> {
    if s == "all" {
        return Ok(StructureKind::ALL.to_vec());
    }
    let mut kinds = Vec::new();
    for part in s.split(',') {
        let k: StructureKind = part.parse().map_err(|_| input_error(format!("unknown kind {part:?}")))?;
        if !kinds.contains(&k) {
            kinds.push(k);
        }
    }
    kinds.sort();
    Ok(kinds)
}

/// Everything a run needs, resolved from the command line.
pub struct RunConfig {
    pub algebra: AlgebraSource,
    pub subcat: SubcatSource,
    pub p: Option<u32>,
    /// Dimension bound for modules of the subcategory; defaults to `dim Λ`.
    pub bound: Option<usize>,
    /// Bound on `dim A + dim B` for objects of the monomorphism category; defaults to three times `bound`.
    pub object_bound: Option<usize>,
    pub kinds: Vec<StructureKind>,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(algebra: &str, subcat: &str, p: Option<u32>, bound: Option<usize>, kinds: &str) -> Result<RunConfig> {
        if bound == Some(0) {
            bail!(InputError("--bound must be positive".into()));
        }
        Ok(RunConfig {
            algebra: AlgebraSource::parse(algebra)?,
            subcat: SubcatSource::parse(subcat)?,
            p,
            bound,
            object_bound: None,
            kinds: parse_kinds(kinds)?,
            out: None,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builder_specs() {
        assert_eq!(AlgebraSource::parse("nilpotent:3").unwrap(), AlgebraSource::Nilpotent(3));
        assert_eq!(AlgebraSource::parse("preprojective:2").unwrap(), AlgebraSource::Preprojective(2));
        assert!(AlgebraSource::parse("nilpotent:0").is_err());
        assert!(AlgebraSource::parse("nilpotent:x").is_err());
        assert_eq!(AlgebraSource::parse("a.json").unwrap(), AlgebraSource::File("a.json".into()));
        let a = AlgebraSource::Nilpotent(2).load(Some(3)).unwrap();
        assert_eq!(a.p(), 3);
        assert!(AlgebraSource::Nilpotent(2).load(Some(4)).unwrap_err().is::<InputError>());
    }

    #[test]
    fn kinds() {
        assert_eq!(parse_kinds("all").unwrap(), StructureKind::ALL.to_vec());
        assert_eq!(parse_kinds("scw,cw").unwrap(), vec![StructureKind::Cw, StructureKind::Scw]);
        assert!(parse_kinds("exact").is_err());
    }
}
