//! Flat key-value experiment configuration, one `[experiment NAME]` section
//! per experiment. Grammar documented in the repository README.

use std::path::Path;
use thiserror::Error;

use super::{ExperimentConfig, GridSpec, Regime};
use crate::matpoly::WeightScheme;
use crate::randgen::CoefficientDistribution;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("config line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid configuration: {0}")]
    Invalid(String),
    #[error("could not read config: {0}")]
    Io(#[from] std::io::Error),
}

fn parse_err(line: usize, message: impl Into<String>) -> ConfigError {
    ConfigError::Parse {
        line,
        message: message.into(),
    }
}

#[derive(Default)]
struct SectionBuilder {
    name: String,
    start_line: usize,
    regime: Option<Regime>,
    scheme_kind: Option<String>,
    c: Option<f64>,
    d: Option<f64>,
    weights: Option<Vec<f64>>,
    distributions: Option<Vec<CoefficientDistribution>>,
    sizes: Option<Vec<(usize, usize)>>,
    trials: Option<usize>,
    master_seed: Option<u64>,
    potential_grid: Option<GridSpec>,
    dump_eigenvalues: Option<bool>,
}

impl SectionBuilder {
    fn finish(self) -> Result<ExperimentConfig, ConfigError> {
        let line = self.start_line;
        let scheme_kind = self
            .scheme_kind
            .ok_or_else(|| parse_err(line, "missing `scheme`"))?;
        let c = self.c.unwrap_or(1.0);
        let scheme = match scheme_kind.as_str() {
            "kac" => WeightScheme::Kac { c },
            "elliptic" => WeightScheme::Elliptic { c },
            "weyl" => WeightScheme::Weyl { c },
            "hyperbolic" => WeightScheme::Hyperbolic {
                c,
                d: self
                    .d
                    .ok_or_else(|| parse_err(line, "hyperbolic scheme needs `d`"))?,
            },
            "custom" => WeightScheme::Custom {
                weights: self
                    .weights
                    .ok_or_else(|| parse_err(line, "custom scheme needs `weights`"))?,
            },
            other => {
                return Err(parse_err(
                    line,
                    format!("unknown scheme {other:?}; expected kac, elliptic, weyl, hyperbolic or custom"),
                ))
            }
        };
        let config = ExperimentConfig {
            name: self.name,
            regime: self
                .regime
                .ok_or_else(|| parse_err(line, "missing `regime`"))?,
            scheme,
            distributions: self
                .distributions
                .ok_or_else(|| parse_err(line, "missing `distributions`"))?,
            sizes: self
                .sizes
                .ok_or_else(|| parse_err(line, "missing `sizes`"))?,
            trials: self
                .trials
                .ok_or_else(|| parse_err(line, "missing `trials`"))?,
            master_seed: self.master_seed.unwrap_or(0),
            potential_grid: self.potential_grid,
            dump_eigenvalues: self.dump_eigenvalues.unwrap_or(false),
        };
        config.validate()?;
        Ok(config)
    }
}

/// Parse a multi-experiment config from text.
pub fn parse_config_str(text: &str) -> Result<Vec<ExperimentConfig>, ConfigError> {
    let mut sections: Vec<ExperimentConfig> = Vec::new();
    let mut current: Option<SectionBuilder> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('[') {
            let inner = rest
                .strip_suffix(']')
                .ok_or_else(|| parse_err(line_no, "unterminated section header"))?
                .trim();
            let name = inner
                .strip_prefix("experiment")
                .ok_or_else(|| parse_err(line_no, "section must be `[experiment NAME]`"))?
                .trim();
            if name.is_empty() {
                return Err(parse_err(line_no, "experiment needs a name"));
            }
            if let Some(prev) = current.take() {
                sections.push(prev.finish()?);
            }
            current = Some(SectionBuilder {
                name: name.to_string(),
                start_line: line_no,
                ..SectionBuilder::default()
            });
            continue;
        }
        let section = current
            .as_mut()
            .ok_or_else(|| parse_err(line_no, "key outside any [experiment ...] section"))?;
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| parse_err(line_no, "expected `key = value`"))?;
        let key = key.trim();
        let value = value.trim();
        match key {
            "regime" => {
                section.regime = Some(match value {
                    "fixed_k_growing_n" => Regime::FixedKGrowingN,
                    "fixed_or_slow_n_growing_k" => Regime::FixedOrSlowNGrowingK,
                    other => {
                        return Err(parse_err(
                            line_no,
                            format!(
                                "unknown regime {other:?}; expected fixed_k_growing_n or \
                                 fixed_or_slow_n_growing_k"
                            ),
                        ))
                    }
                })
            }
            "scheme" => section.scheme_kind = Some(value.to_string()),
            "c" => section.c = Some(parse_f64(value, line_no)?),
            "d" => section.d = Some(parse_f64(value, line_no)?),
            "weights" => {
                section.weights = Some(
                    value
                        .split(',')
                        .map(|w| parse_f64(w.trim(), line_no))
                        .collect::<Result<_, _>>()?,
                )
            }
            "distributions" => {
                section.distributions = Some(
                    value
                        .split(',')
                        .map(|d| {
                            d.trim()
                                .parse::<CoefficientDistribution>()
                                .map_err(|e| parse_err(line_no, e))
                        })
                        .collect::<Result<_, _>>()?,
                )
            }
            "sizes" => {
                section.sizes = Some(
                    value
                        .split(',')
                        .map(|pair| {
                            let pair = pair.trim();
                            let (n, k) = pair.split_once('x').ok_or_else(|| {
                                parse_err(line_no, format!("size {pair:?} is not of the form NxK"))
                            })?;
                            Ok((
                                parse_usize(n.trim(), line_no)?,
                                parse_usize(k.trim(), line_no)?,
                            ))
                        })
                        .collect::<Result<_, ConfigError>>()?,
                )
            }
            "trials" => section.trials = Some(parse_usize(value, line_no)?),
            "master_seed" | "seed" => {
                section.master_seed = Some(value.parse::<u64>().map_err(|_| {
                    parse_err(line_no, format!("{value:?} is not a 64-bit unsigned seed"))
                })?)
            }
            "potential_grid" => {
                let parts: Vec<&str> = value.split(':').collect();
                if parts.len() != 3 {
                    return Err(parse_err(
                        line_no,
                        "potential_grid must be R_MIN:R_MAX:COUNT",
                    ));
                }
                section.potential_grid = Some(GridSpec {
                    r_min: parse_f64(parts[0], line_no)?,
                    r_max: parse_f64(parts[1], line_no)?,
                    count: parse_usize(parts[2], line_no)?,
                });
            }
            "dump_eigenvalues" => {
                section.dump_eigenvalues = Some(match value {
                    "true" | "yes" | "1" => true,
                    "false" | "no" | "0" => false,
                    other => {
                        return Err(parse_err(
                            line_no,
                            format!("{other:?} is not a boolean (true/false)"),
                        ))
                    }
                })
            }
            other => return Err(parse_err(line_no, format!("unknown key {other:?}"))),
        }
    }
    if let Some(prev) = current.take() {
        sections.push(prev.finish()?);
    }
    if sections.is_empty() {
        return Err(ConfigError::Invalid(
            "config contains no [experiment ...] sections".into(),
        ));
    }
    Ok(sections)
}

pub fn parse_config_file(path: &Path) -> Result<Vec<ExperimentConfig>, ConfigError> {
    parse_config_str(&std::fs::read_to_string(path)?)
}

fn parse_f64(s: &str, line: usize) -> Result<f64, ConfigError> {
    s.parse::<f64>()
        .map_err(|_| parse_err(line, format!("{s:?} is not a number")))
}

fn parse_usize(s: &str, line: usize) -> Result<usize, ConfigError> {
    s.parse::<usize>()
        .map_err(|_| parse_err(line, format!("{s:?} is not a nonnegative integer")))
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "
# two experiments
[experiment kac_sweep]
regime = fixed_k_growing_n
scheme = kac
c = 1.0
distributions = complex_gaussian
sizes = 25x2, 50x2, 100x2
trials = 40
master_seed = 42
potential_grid = 1.5:4.0:10

[experiment weyl_degrees]
regime = fixed_or_slow_n_growing_k
scheme = weyl
c = 1
distributions = uniform_disk
sizes = 4x20, 4x80
trials = 30
dump_eigenvalues = true
";

    #[test]
    fn parses_two_sections() {
        let configs = parse_config_str(SAMPLE).unwrap();
        assert_eq!(configs.len(), 2);
        assert_eq!(configs[0].name, "kac_sweep");
        assert_eq!(configs[0].sizes, vec![(25, 2), (50, 2), (100, 2)]);
        assert_eq!(configs[0].master_seed, 42);
        assert!(configs[0].potential_grid.is_some());
        assert_eq!(configs[1].name, "weyl_degrees");
        assert!(configs[1].dump_eigenvalues);
        assert_eq!(configs[1].master_seed, 0);
    }

    #[test]
    fn rejects_discrete_kind_in_growing_degree_regime() {
        let text = "
[experiment bad]
regime = fixed_or_slow_n_growing_k
scheme = kac
distributions = two_point_real
sizes = 4x20
trials = 5
";
        let err = parse_config_str(text).unwrap_err();
        assert!(err.to_string().contains("continuous"), "{err}");
    }

    #[test]
    fn reports_line_numbers() {
        let text = "
[experiment x]
regime = nonsense
";
        let err = parse_config_str(text).unwrap_err();
        assert!(err.to_string().contains("line 3"), "{err}");
    }

    #[test]
    fn rejects_keys_outside_sections() {
        assert!(parse_config_str("trials = 3\n").is_err());
    }

    #[test]
    fn custom_scheme_roundtrip() {
        let text = "
[experiment custom]
regime = fixed_k_growing_n
scheme = custom
weights = 0, 1, 1
distributions = uniform_square
sizes = 10x2
trials = 2
";
        let configs = parse_config_str(text).unwrap();
        assert_eq!(
            configs[0].scheme,
            WeightScheme::Custom {
                weights: vec![0.0, 1.0, 1.0]
            }
        );
    }
}
