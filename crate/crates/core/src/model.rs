//! Model specification: architecture x regularization setup x
//! hyperparameters. A spec plus a seed fully determines a network.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Architecture {
    BiLstm,
    CnnBiLstm,
}

impl fmt::Display for Architecture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Architecture::BiLstm => write!(f, "bilstm"),
            Architecture::CnnBiLstm => write!(f, "cnn-bilstm"),
        }
    }
}

impl FromStr for Architecture {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "bilstm" => Ok(Architecture::BiLstm),
            "cnn-bilstm" | "cnn_bilstm" | "cnnbilstm" => Ok(Architecture::CnnBiLstm),
            other => Err(Error::Config(format!(
                "unknown architecture `{other}` (expected bilstm or cnn-bilstm)"
            ))),
        }
    }
}

/// Regularization block placed immediately before the output layer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Setup {
    /// Dropout followed by Gaussian noise.
    NoiseDropout,
    /// Gaussian noise only.
    Noise,
    /// Dropout only.
    DropoutOnly,
}

impl fmt::Display for Setup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Setup::NoiseDropout => write!(f, "nd"),
            Setup::Noise => write!(f, "n"),
            Setup::DropoutOnly => write!(f, "d"),
        }
    }
}

impl FromStr for Setup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "nd" => Ok(Setup::NoiseDropout),
            "n" => Ok(Setup::Noise),
            "d" => Ok(Setup::DropoutOnly),
            other => Err(Error::Config(format!("unknown setup `{other}` (expected nd, n or d)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModelSpec {
    pub architecture: Architecture,
    pub setup: Setup,
    /// Distinct tokens in the vocabulary; the embedding table has
    /// `vocab_size + 2` rows (padding and OOV).
    pub vocab_size: usize,
    pub embed_dim: usize,
    pub max_len: usize,
    /// LSTM width per direction.
    pub hidden: usize,
    pub filters: usize,
    pub kernel: usize,
    /// Dense stack sizes; the last entry is the output layer and must be 1.
    pub dense_sizes: Vec<usize>,
    pub dropout_rate: f64,
    pub noise_stddev: f64,
    pub batch: usize,
    pub epochs: usize,
    pub learning_rate: f64,
    pub seed: u64,
}

impl ModelSpec {
    pub fn new(
        architecture: Architecture,
        setup: Setup,
        vocab_size: usize,
        max_len: usize,
        seed: u64,
    ) -> Self {
        ModelSpec {
            architecture,
            setup,
            vocab_size,
            embed_dim: 100,
            max_len,
            hidden: 64,
            filters: 64,
            kernel: 3,
            dense_sizes: vec![128, 64, 32, 1],
            dropout_rate: 0.5,
            noise_stddev: 0.75,
            batch: 64,
            epochs: 10,
            learning_rate: 0.001,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.dense_sizes.last() != Some(&1) {
            return Err(Error::Config("dense_sizes must end with a single output unit".into()));
        }
        if self.dense_sizes.is_empty() || self.embed_dim == 0 || self.hidden == 0 || self.max_len == 0
        {
            return Err(Error::Config("zero-sized model dimension".into()));
        }
        if !(0.0..1.0).contains(&self.dropout_rate) {
            return Err(Error::Config(format!("dropout_rate {} not in [0, 1)", self.dropout_rate)));
        }
        if self.noise_stddev < 0.0 {
            return Err(Error::Config("noise_stddev must be nonnegative".into()));
        }
        if self.architecture == Architecture::CnnBiLstm {
            if self.kernel < 1 || self.filters == 0 {
                return Err(Error::Config("convolution needs kernel >= 1 and filters >= 1".into()));
            }
            if self.max_len < self.kernel {
                return Err(Error::Config(format!(
                    "max_len {} shorter than convolution kernel {}",
                    self.max_len, self.kernel
                )));
            }
        }
        if self.batch == 0 {
            return Err(Error::Config("batch size must be positive".into()));
        }
        if !(self.learning_rate.is_finite() && self.learning_rate > 0.0) {
            return Err(Error::Config("learning rate must be positive".into()));
        }
        Ok(())
    }

    /// Stable key-value form used by config files and checkpoints.
    pub fn to_pairs(&self) -> Vec<(String, String)> {
        let dense = self
            .dense_sizes
            .iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()
            .join(",");
        vec![
            ("arch".into(), self.architecture.to_string()),
            ("setup".into(), self.setup.to_string()),
            ("vocab_size".into(), self.vocab_size.to_string()),
            ("embed_dim".into(), self.embed_dim.to_string()),
            ("max_len".into(), self.max_len.to_string()),
            ("hidden".into(), self.hidden.to_string()),
            ("filters".into(), self.filters.to_string()),
            ("kernel".into(), self.kernel.to_string()),
            ("dense_sizes".into(), dense),
            ("dropout_rate".into(), format_f64(self.dropout_rate)),
            ("noise_stddev".into(), format_f64(self.noise_stddev)),
            ("batch".into(), self.batch.to_string()),
            ("epochs".into(), self.epochs.to_string()),
            ("learning_rate".into(), format_f64(self.learning_rate)),
            ("seed".into(), self.seed.to_string()),
        ]
    }

    pub fn from_pairs(pairs: &[(String, String)]) -> Result<ModelSpec> {
        let get = |key: &str| -> Result<&str> {
            pairs
                .iter()
                .find(|(k, _)| k == key)
                .map(|(_, v)| v.as_str())
                .ok_or_else(|| Error::Config(format!("missing model field `{key}`")))
        };
        let parse_usize = |key: &str| -> Result<usize> {
            get(key)?
                .parse()
                .map_err(|_| Error::Config(format!("bad integer for `{key}`")))
        };
        let parse_f64 = |key: &str| -> Result<f64> {
            get(key)?
                .parse()
                .map_err(|_| Error::Config(format!("bad number for `{key}`")))
        };
        let dense_sizes = get("dense_sizes")?
            .split(',')
            .map(|s| s.trim().parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::Config("bad dense_sizes list".into()))?;
        let spec = ModelSpec {
            architecture: get("arch")?.parse()?,
            setup: get("setup")?.parse()?,
            vocab_size: parse_usize("vocab_size")?,
            embed_dim: parse_usize("embed_dim")?,
            max_len: parse_usize("max_len")?,
            hidden: parse_usize("hidden")?,
            filters: parse_usize("filters")?,
            kernel: parse_usize("kernel")?,
            dense_sizes,
            dropout_rate: parse_f64("dropout_rate")?,
            noise_stddev: parse_f64("noise_stddev")?,
            batch: parse_usize("batch")?,
            epochs: parse_usize("epochs")?,
            learning_rate: parse_f64("learning_rate")?,
            seed: get("seed")?
                .parse()
                .map_err(|_| Error::Config("bad integer for `seed`".into()))?,
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// Round-trippable float formatting (Rust's shortest representation).
pub fn format_f64(v: f64) -> String {
    let s = format!("{v}");
    // Ensure a parseable float even for integral values.
    if s.contains(['.', 'e', 'E', 'n', 'i']) {
        s
    } else {
        format!("{s}.0")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairs_round_trip() {
        let spec = ModelSpec::new(Architecture::CnnBiLstm, Setup::NoiseDropout, 137, 48, 9);
        let pairs = spec.to_pairs();
        let back = ModelSpec::from_pairs(&pairs).unwrap();
        assert_eq!(spec, back);
    }

    #[test]
    fn setup_parsing() {
        assert_eq!("nd".parse::<Setup>().unwrap(), Setup::NoiseDropout);
        assert_eq!("N".parse::<Setup>().unwrap(), Setup::Noise);
        assert_eq!("d".parse::<Setup>().unwrap(), Setup::DropoutOnly);
        assert!("x".parse::<Setup>().is_err());
    }

    #[test]
    fn validate_rejects_bad_output_layer() {
        let mut spec = ModelSpec::new(Architecture::BiLstm, Setup::Noise, 10, 8, 1);
        spec.dense_sizes = vec![16, 2];
        assert!(spec.validate().is_err());
    }

    #[test]
    fn validate_rejects_short_max_len_for_conv() {
        let spec = ModelSpec::new(Architecture::CnnBiLstm, Setup::Noise, 10, 2, 1);
        assert!(spec.validate().is_err());
    }

    #[test]
    fn float_formatting_round_trips() {
        for v in [0.5, 0.75, 0.001, 1.0, 3.0, 1e-7, 0.1 + 0.2] {
            let s = format_f64(v);
            assert_eq!(s.parse::<f64>().unwrap(), v, "{s}");
        }
    }
}
