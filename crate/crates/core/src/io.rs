//! File formats: `mf.v1`, `quiver.v1` and `bimod.v1` JSON, and the flat
//! `key = value` configuration file.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Arc;

use num_rational::BigRational;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::algebra::{FinDimAlgebra, Vector};
use crate::dg::DgBimodule;
use crate::error::{Error, Result};
use crate::mf::{Generator, LgSpace, MatrixFactorisation, Parity};
use crate::poly::{Poly, WeightSystem};
use crate::quiver::{Quiver, QuiverFile};

/// Writes through a temporary file in the same directory and renames it.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    std::fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    write_atomic(path, &(serde_json::to_string_pretty(value)? + "\n"))
}

fn check_schema(found: &str, expected: &str) -> Result<()> {
    if found != expected {
        return Err(Error::Parse(format!("expected schema `{expected}`, found `{found}`")));
    }
    Ok(())
}

fn parse_rational(text: &str) -> Result<BigRational> {
    BigRational::from_str(text.trim()).map_err(|_| Error::Parse(format!("bad rational `{text}`")))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceFile {
    pub vars: Vec<String>,
    pub weights: Vec<String>,
    #[serde(rename = "W")]
    pub potential: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorFile {
    pub parity: u8,
    pub qdeg: String,
}

/// `mf.v1`: potentials on both sides, generators and the differential as
/// polynomial text in the joint ring (inner variables first).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MfFile {
    pub schema: String,
    pub inner: SpaceFile,
    pub outer: SpaceFile,
    pub generators: Vec<GeneratorFile>,
    pub d: Vec<Vec<String>>,
}

fn space_to_file(space: &LgSpace) -> SpaceFile {
    SpaceFile {
        vars: space.ring().vars().to_vec(),
        weights: space.ring().weights().iter().map(|w| w.to_string()).collect(),
        potential: space.potential().to_string(),
    }
}

fn space_from_file(file: &SpaceFile) -> Result<Arc<LgSpace>> {
    let weights = file.weights.iter().map(|w| parse_rational(w)).collect::<Result<Vec<_>>>()?;
    let ring = WeightSystem::new(file.vars.clone(), weights)?;
    LgSpace::new(Poly::parse(&file.potential, &ring)?)
}

impl MfFile {
    pub fn from_mf(mf: &MatrixFactorisation) -> Self {
        MfFile {
            schema: "mf.v1".into(),
            inner: space_to_file(mf.inner()),
            outer: space_to_file(mf.outer()),
            generators: mf
                .gens()
                .iter()
                .map(|g| GeneratorFile { parity: g.parity.as_int() as u8, qdeg: g.qdeg.to_string() })
                .collect(),
            d: mf.d().iter().map(|row| row.iter().map(|p| p.to_string()).collect()).collect(),
        }
    }

    /// Parses and re-validates (`d^2`, parity and degrees).
    pub fn to_mf(&self) -> Result<MatrixFactorisation> {
        check_schema(&self.schema, "mf.v1")?;
        let inner = space_from_file(&self.inner)?;
        let outer = space_from_file(&self.outer)?;
        let ring = MatrixFactorisation::joint_ring(&inner, &outer)?;
        let gens = self
            .generators
            .iter()
            .map(|g| Ok(Generator::new(Parity::from_int(i64::from(g.parity)), parse_rational(&g.qdeg)?)))
            .collect::<Result<Vec<_>>>()?;
        if self.d.len() != gens.len() || self.d.iter().any(|r| r.len() != gens.len()) {
            return Err(Error::Parse("differential must be square of the generator count".into()));
        }
        let d = self
            .d
            .iter()
            .map(|row| row.iter().map(|t| Poly::parse(t, &ring)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        MatrixFactorisation::new(inner, outer, gens, d)
    }
}

pub fn read_mf(path: &Path) -> Result<MatrixFactorisation> {
    read_json::<MfFile>(path)?.to_mf()
}

pub fn write_mf(path: &Path, mf: &MatrixFactorisation) -> Result<()> {
    write_json(path, &MfFile::from_mf(mf))
}

pub fn read_quiver(path: &Path) -> Result<Quiver> {
    Quiver::from_file(&read_json::<QuiverFile>(path)?)
}

pub fn write_quiver(path: &Path, quiver: &Quiver) -> Result<()> {
    write_json(path, &quiver.to_file())
}

/// Sparse vector as `[[index, "p/q"], ...]`.
type SparseText = Vec<(usize, String)>;

fn vector_to_text(v: &Vector) -> SparseText {
    v.iter().map(|(i, c)| (*i, c.to_string())).collect()
}

fn vector_from_text(v: &SparseText) -> Result<Vector> {
    v.iter().map(|(i, c)| Ok((*i, parse_rational(c)?))).collect()
}

fn columns_from_text(cols: &[SparseText]) -> Result<Vec<Vector>> {
    cols.iter().map(vector_from_text).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub names: Vec<String>,
    /// `table[i][j] = b_i b_j`
    pub table: Vec<Vec<SparseText>>,
    pub unit: SparseText,
    pub idempotents: Vec<SparseText>,
}

impl AlgebraFile {
    pub fn from_algebra(alg: &FinDimAlgebra) -> Self {
        let n = alg.dim();
        AlgebraFile {
            names: alg.names().to_vec(),
            table: (0..n).map(|i| (0..n).map(|j| vector_to_text(alg.basis_mul(i, j))).collect()).collect(),
            unit: vector_to_text(alg.unit()),
            idempotents: alg.idempotents().iter().map(vector_to_text).collect(),
        }
    }

    pub fn to_algebra(&self) -> Result<FinDimAlgebra> {
        let table = self.table.iter().map(|row| columns_from_text(row)).collect::<Result<Vec<_>>>()?;
        FinDimAlgebra::new(
            self.names.clone(),
            table,
            vector_from_text(&self.unit)?,
            columns_from_text(&self.idempotents)?,
        )
    }
}

/// `bimod.v1`: algebras, graded dimensions, basis degrees, and the
/// differential and actions as sparse columns with rational text entries.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BimoduleFile {
    pub schema: String,
    pub left: AlgebraFile,
    pub right: AlgebraFile,
    /// `[[degree, dim], ...]`, informational and checked on load
    pub graded_dims: Vec<(i64, usize)>,
    pub degrees: Vec<i64>,
    pub labels: Vec<String>,
    pub differential: Vec<SparseText>,
    pub left_action: Vec<Vec<SparseText>>,
    pub right_action: Vec<Vec<SparseText>>,
}

impl BimoduleFile {
    pub fn from_bimodule(m: &DgBimodule) -> Self {
        let cols = |c: &[Vector]| c.iter().map(vector_to_text).collect::<Vec<_>>();
        BimoduleFile {
            schema: "bimod.v1".into(),
            left: AlgebraFile::from_algebra(m.left()),
            right: AlgebraFile::from_algebra(m.right()),
            graded_dims: m.graded_dims().into_iter().collect(),
            degrees: m.degrees().to_vec(),
            labels: m.labels().to_vec(),
            differential: cols(m.differential()),
            left_action: m.left_action().iter().map(|c| cols(c)).collect(),
            right_action: m.right_action().iter().map(|c| cols(c)).collect(),
        }
    }

    /// Rebuilds and validates; equal algebra blocks share one algebra.
    pub fn to_bimodule(&self) -> Result<DgBimodule> {
        check_schema(&self.schema, "bimod.v1")?;
        let left = Arc::new(self.left.to_algebra()?);
        let right = if self.right == self.left { left.clone() } else { Arc::new(self.right.to_algebra()?) };
        let action = |a: &[Vec<SparseText>]| a.iter().map(|c| columns_from_text(c)).collect::<Result<Vec<_>>>();
        let m = DgBimodule::new(
            left,
            right,
            self.degrees.clone(),
            self.labels.clone(),
            columns_from_text(&self.differential)?,
            action(&self.left_action)?,
            action(&self.right_action)?,
        )?;
        if m.graded_dims().into_iter().collect::<Vec<_>>() != self.graded_dims {
            return Err(Error::Parse("graded dimensions disagree with the basis degrees".into()));
        }
        Ok(m)
    }
}

pub fn read_bimodule(path: &Path) -> Result<DgBimodule> {
    read_json::<BimoduleFile>(path)?.to_bimodule()
}

pub fn write_bimodule(path: &Path, m: &DgBimodule) -> Result<()> {
    write_json(path, &BimoduleFile::from_bimodule(m))
}

/// Run configuration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    pub cache_dir: Option<PathBuf>,
    /// multiplier on the degree bound used by `reduce`
    pub reduce_multiplier: u32,
    pub cy_level: usize,
    pub quiver_cap: usize,
    pub seed: u64,
    /// directory holding externally transcribed data files
    pub data_dir: Option<PathBuf>,
}

impl Default for Config {
    fn default() -> Self {
        Config { cache_dir: None, reduce_multiplier: 2, cy_level: 3, quiver_cap: 3, seed: 1, data_dir: None }
    }
}

fn positive<T: FromStr + PartialOrd + Default>(key: &str, value: &str) -> Result<T> {
    let v: T = value.parse().map_err(|_| Error::Config(format!("`{key}` must be an integer, got `{value}`")))?;
    if v <= T::default() {
        return Err(Error::Config(format!("`{key}` must be positive")));
    }
    Ok(v)
}

impl Config {
    /// Parses `key = value` lines; `#` starts a comment. Unknown keys are errors.
    pub fn parse(text: &str) -> Result<Self> {
        let mut config = Config::default();
        let mut seen = BTreeMap::new();
        for (number, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .map(|(k, v)| (k.trim(), v.trim()))
                .ok_or_else(|| Error::Config(format!("line {}: expected `key = value`", number + 1)))?;
            if seen.insert(key.to_string(), ()).is_some() {
                return Err(Error::Config(format!("duplicate key `{key}`")));
            }
            match key {
                "cache_dir" => config.cache_dir = Some(PathBuf::from(value)),
                "data_dir" => config.data_dir = Some(PathBuf::from(value)),
                "reduce_multiplier" => config.reduce_multiplier = positive(key, value)?,
                "cy_level" => config.cy_level = positive(key, value)?,
                "quiver_cap" => config.quiver_cap = positive(key, value)?,
                "seed" => {
                    config.seed = value.parse().map_err(|_| Error::Config(format!("bad seed `{value}`")))?;
                }
                other => return Err(Error::Config(format!("unknown key `{other}`"))),
            }
        }
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Config::parse(&std::fs::read_to_string(path)?)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(dir) = &self.cache_dir {
            out += &format!("cache_dir = {}\n", dir.display());
        }
        if let Some(dir) = &self.data_dir {
            out += &format!("data_dir = {}\n", dir.display());
        }
        out += &format!(
            "reduce_multiplier = {}\ncy_level = {}\nquiver_cap = {}\nseed = {}\n",
            self.reduce_multiplier, self.cy_level, self.quiver_cap, self.seed
        );
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mf::MatrixFactorisation;

    #[test]
    fn config_round_trip_and_rejections() {
        let c = Config { cache_dir: Some("/tmp/lgcy".into()), reduce_multiplier: 3, cy_level: 2, quiver_cap: 4, seed: 9, data_dir: Some("data".into()) };
        assert_eq!(Config::parse(&c.to_text()).unwrap(), c);
        assert_eq!(Config::parse("# nothing\n\n").unwrap(), Config::default());
        assert!(Config::parse("cy_level = 0").is_err());
        assert!(Config::parse("colour = blue").is_err());
        assert!(Config::parse("seed = 1\nseed = 2").is_err());
        assert!(Config::parse("quiver_cap 3").is_err());
    }

    #[test]
    fn mf_file_round_trip() {
        let p = MatrixFactorisation::permutation(4, &[1, 2]).unwrap();
        let file = MfFile::from_mf(&p);
        let text = serde_json::to_string(&file).unwrap();
        let back: MfFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back, file);
        let q = back.to_mf().unwrap();
        assert_eq!(MfFile::from_mf(&q), file);
    }

    #[test]
    fn mf_file_rejects_broken_differential() {
        let p = MatrixFactorisation::permutation(3, &[0]).unwrap();
        let mut file = MfFile::from_mf(&p);
        file.d[0][1] = "u".into();
        assert!(file.to_mf().is_err());
        let mut wrong = MfFile::from_mf(&p);
        wrong.schema = "mf.v0".into();
        assert!(wrong.to_mf().is_err());
    }

    #[test]
    fn bimodule_file_round_trip() {
        let alg = crate::quiver::PathAlgebra::dynkin(crate::ade::AdeType::A(2)).unwrap();
        let m = DgBimodule::regular(alg.algebra()).shift(1);
        let file = BimoduleFile::from_bimodule(&m);
        let back = file.to_bimodule().unwrap();
        assert!(Arc::ptr_eq(back.left(), back.right()));
        assert_eq!(BimoduleFile::from_bimodule(&back), file);
        let mut bad = file.clone();
        bad.graded_dims[0].1 += 1;
        assert!(bad.to_bimodule().is_err());
    }
}
