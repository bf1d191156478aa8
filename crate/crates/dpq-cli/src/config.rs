//! Configuration file loading and three-layer settings resolution.
//!
//! The file format is flat `key=value` lines. Blank lines and lines
//! starting with `#` are ignored. Keys mirror the long flag names; an
//! unknown key is a usage error so typos cannot silently fall back to
//! defaults.

use std::path::{Path, PathBuf};

use dpq::{CostMeasure, PivotParams};

use crate::args::{parse_sizes, parse_triple, Cli, MeasureArg};

/// Values read from a configuration file; every field optional.
#[derive(Debug, Default)]
pub struct FileConfig {
    pub t: Option<[u32; 3]>,
    pub cutoff: Option<u32>,
    pub k: Option<u32>,
    pub measure: Option<Vec<MeasureArg>>,
    pub sizes: Option<Vec<u64>>,
    pub trials: Option<u64>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub svg: Option<PathBuf>,
    pub grid_step: Option<f64>,
    pub parallel: Option<usize>,
}

impl FileConfig {
    pub fn parse(text: &str) -> Result<FileConfig, String> {
        let mut cfg = FileConfig::default();
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("line {}: expected key=value, got {line:?}", idx + 1))?;
            let (key, value) = (key.trim(), value.trim());
            let context = |e: String| format!("line {}: {e}", idx + 1);
            match key {
                "t" => cfg.t = Some(parse_triple(value).map_err(context)?.0),
                "cutoff" => cfg.cutoff = Some(parse_int(value).map_err(context)?),
                "k" => cfg.k = Some(parse_int(value).map_err(context)?),
                "measure" => {
                    let mut measures = Vec::new();
                    for part in value.split(',') {
                        measures.push(parse_measure(part.trim()).map_err(context)?);
                    }
                    cfg.measure = Some(measures);
                }
                "sizes" => cfg.sizes = Some(parse_sizes(value).map_err(context)?.0),
                "trials" => cfg.trials = Some(parse_int(value).map_err(context)?),
                "seed" => cfg.seed = Some(parse_int(value).map_err(context)?),
                "out" => cfg.out = Some(PathBuf::from(value)),
                "svg" => cfg.svg = Some(PathBuf::from(value)),
                "grid-step" => {
                    cfg.grid_step = Some(
                        value
                            .parse::<f64>()
                            .map_err(|e| context(format!("invalid grid-step {value:?}: {e}")))?,
                    )
                }
                "parallel" => cfg.parallel = Some(parse_int(value).map_err(context)?),
                other => return Err(format!("line {}: unknown key {other:?}", idx + 1)),
            }
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<FileConfig, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        FileConfig::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
    }
}

fn parse_int<T: std::str::FromStr>(value: &str) -> Result<T, String>
where
    T::Err: std::fmt::Display,
{
    value
        .parse::<T>()
        .map_err(|e| format!("invalid integer {value:?}: {e}"))
}

fn parse_measure(value: &str) -> Result<MeasureArg, String> {
    match value {
        "comparisons" => Ok(MeasureArg::Comparisons),
        "swaps" => Ok(MeasureArg::Swaps),
        "bytecodes" => Ok(MeasureArg::Bytecodes),
        other => Err(format!("unknown measure {other:?}")),
    }
}

/// Fully resolved settings after defaults, config file, and flags merge.
#[derive(Debug)]
pub struct Settings {
    pub params: PivotParams,
    pub k: u32,
    /// True when the sample size was pinned by `--k` or `--t`; chooses the
    /// discrete branch of `optimize`.
    pub k_explicit: bool,
    pub measures: Vec<CostMeasure>,
    /// Sizes as given; commands choose their own default ranges.
    pub sizes: Option<Vec<u64>>,
    pub trials: u64,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub svg: Option<PathBuf>,
    pub grid_step: f64,
    pub parallel: Option<usize>,
}

impl Settings {
    /// Merges the three layers and validates cross-field consistency.
    pub fn resolve(cli: &Cli) -> Result<Settings, String> {
        let file = match &cli.config {
            Some(path) => FileConfig::load(path)?,
            None => FileConfig::default(),
        };

        let t_given = cli.t.clone().map(|triple| triple.0).or(file.t);
        let t = t_given.unwrap_or([0, 0, 0]);
        let sample_size = t[0] + t[1] + t[2] + 2;
        let k_explicit = t_given.is_some() || cli.k.is_some() || file.k.is_some();

        let k = match cli.k.or(file.k) {
            Some(k) => {
                if k < 2 {
                    return Err(format!("k must be at least 2, got {k}"));
                }
                if t_given.is_some() && k != sample_size {
                    return Err(format!(
                        "k = {k} contradicts t = ({},{},{}) whose sample size is {sample_size}",
                        t[0], t[1], t[2]
                    ));
                }
                k
            }
            None => sample_size,
        };

        let cutoff = cli.cutoff.or(file.cutoff);
        let params = match cutoff {
            Some(m) => PivotParams::new(t, m).map_err(|e| e.to_string())?,
            None => PivotParams::with_min_cutoff(t),
        };

        let measure_args = if cli.measure.is_empty() {
            file.measure.unwrap_or_default()
        } else {
            cli.measure.clone()
        };
        let mut measures: Vec<CostMeasure> = measure_args.iter().map(|m| m.to_measure()).collect();
        if measures.is_empty() {
            measures = vec![
                CostMeasure::Comparisons,
                CostMeasure::Swaps,
                CostMeasure::BytecodeModel,
            ];
        }
        measures.dedup();

        let sizes = cli.sizes.clone().map(|s| s.0).or(file.sizes);

        let trials = cli.trials.or(file.trials).unwrap_or(1_000);
        if trials == 0 {
            return Err("trials must be positive".to_string());
        }

        let grid_step = cli.grid_step.or(file.grid_step).unwrap_or(0.005);
        if !(grid_step > 0.0 && grid_step <= 0.5) {
            return Err(format!("grid-step must lie in (0, 0.5], got {grid_step}"));
        }

        let parallel = cli.parallel.or(file.parallel);
        if parallel == Some(0) {
            return Err("parallel must be positive".to_string());
        }

        Ok(Settings {
            params,
            k,
            k_explicit,
            measures,
            sizes,
            trials,
            seed: cli.seed.or(file.seed).unwrap_or(42),
            out: cli.out.clone().or(file.out),
            svg: cli.svg.clone().or(file.svg),
            grid_step,
            parallel,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::Parser;

    fn cli(args: &[&str]) -> Cli {
        Cli::parse_from(std::iter::once("dpq").chain(args.iter().copied()))
    }

    #[test]
    fn defaults_fill_every_field() {
        let s = Settings::resolve(&cli(&["analyze"])).unwrap();
        assert_eq!(s.params.t(), [0, 0, 0]);
        assert_eq!(s.params.cutoff(), 1);
        assert_eq!(s.k, 2);
        assert!(!s.k_explicit);
        assert_eq!(s.measures.len(), 3);
        assert_eq!(s.sizes, None);
        assert_eq!(s.trials, 1_000);
        assert_eq!(s.seed, 42);
        assert!((s.grid_step - 0.005).abs() < 1e-12);
    }

    #[test]
    fn config_file_keys_parse_and_unknown_keys_fail() {
        let cfg = FileConfig::parse(
            "# comment\n\nt = 1,0,2\ncutoff=9\nmeasure = comparisons, swaps\nseed=7\ngrid-step=0.1\n",
        )
        .unwrap();
        assert_eq!(cfg.t, Some([1, 0, 2]));
        assert_eq!(cfg.cutoff, Some(9));
        assert_eq!(cfg.measure.as_deref().unwrap().len(), 2);
        assert_eq!(cfg.seed, Some(7));

        let err = FileConfig::parse("cutof=9\n").unwrap_err();
        assert!(err.contains("unknown key"), "{err}");
        let err = FileConfig::parse("just words\n").unwrap_err();
        assert!(err.contains("key=value"), "{err}");
    }

    #[test]
    fn flags_override_config_values() {
        let dir = std::env::temp_dir().join("dpq-config-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("override.conf");
        std::fs::write(&path, "t=1,1,1\nseed=5\ntrials=3\n").unwrap();

        let args = [
            "analyze",
            "--config",
            path.to_str().unwrap(),
            "--seed",
            "11",
        ];
        let s = Settings::resolve(&cli(&args)).unwrap();
        assert_eq!(s.params.t(), [1, 1, 1], "config supplies t");
        assert_eq!(s.seed, 11, "flag beats config");
        assert_eq!(s.trials, 3, "config beats default");
    }

    #[test]
    fn inconsistent_k_and_t_are_rejected() {
        let err = Settings::resolve(&cli(&["table", "--t", "1,1,1", "--k", "4"])).unwrap_err();
        assert!(err.contains("contradicts"), "{err}");
        let s = Settings::resolve(&cli(&["table", "--t", "1,1,1", "--k", "5"])).unwrap();
        assert_eq!(s.k, 5);
        let s = Settings::resolve(&cli(&["table", "--k", "8"])).unwrap();
        assert_eq!(s.k, 8, "k alone needs no t");
        assert!(s.k_explicit);
    }

    #[test]
    fn cutoff_below_sample_requirement_is_rejected() {
        let err =
            Settings::resolve(&cli(&["simulate", "--t", "1,1,1", "--cutoff", "2"])).unwrap_err();
        assert!(err.contains("cutoff"), "{err}");
    }
}
