use std::path::PathBuf;

use clap::ValueEnum;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    HermiteWeak,
    HermiteFull,
    Sturm,
    CrossValidate,
    MatrixOnly,
    SamplePoints,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum FastModeArg {
    Auto,
    On,
    #[default]
    Off,
}

impl From<FastModeArg> for rrc_core::classify::FastMode {
    fn from(f: FastModeArg) -> Self {
        match f {
            FastModeArg::Auto => Self::Auto,
            FastModeArg::On => Self::On,
            FastModeArg::Off => Self::Off,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

pub const DEFAULT_SEED: u64 = 0;

/// One run of the tool.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JobConfig {
    pub input: PathBuf,
    pub mode: Mode,
    /// Variable names in the desired order.
    pub x_order: Option<Vec<String>>,
    pub seed: u64,
    /// Where JSON goes; `-` is standard output.
    pub json: Option<PathBuf>,
    pub print_matrix: bool,
    pub lambda: Option<u32>,
    pub prime: Option<u64>,
    pub fast_mode: FastModeArg,
}

impl JobConfig {
    pub fn new(input: impl Into<PathBuf>, mode: Mode) -> Self {
        JobConfig {
            input: input.into(),
            mode,
            x_order: None,
            seed: DEFAULT_SEED,
            json: None,
            print_matrix: false,
            lambda: None,
            prime: None,
            fast_mode: FastModeArg::Off,
        }
    }

    pub fn format(&self) -> OutputFormat {
        if self.json.is_some() {
            OutputFormat::Json
        } else {
            OutputFormat::Text
        }
    }
}
