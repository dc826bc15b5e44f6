//! Benchmark datasets: Mackey-Glass, NARMA10 and column-scanned MNIST.

mod dataset;
mod mackey_glass;
mod mnist;
mod narma;

pub use dataset::{make_one_step_dataset, write_series_csv, Dataset, DatasetKind};
pub use mackey_glass::{
    mackey_glass, normalize_open_interval, MackeyGlassConfig, MackeyGlassSeries, NORM_EPS,
};
pub use mnist::{
    load_mnist, mnist_sequences, parse_idx_images, parse_idx_labels, MnistData, MnistSequence,
    IMAGE_MAGIC, LABEL_MAGIC, SIDE,
};
pub use narma::{
    narma10, narma10_recursion, NarmaConfig, NarmaSeries, DIVERGENCE_BOUND, MAX_REGENERATIONS,
};

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Task {
    MackeyGlass,
    Narma10,
    Mnist,
}

impl Task {
    pub fn as_str(self) -> &'static str {
        match self {
            Task::MackeyGlass => "mackey_glass",
            Task::Narma10 => "narma10",
            Task::Mnist => "mnist",
        }
    }

    /// Stable key mixed into trial seeds.
    pub fn id(self) -> u64 {
        match self {
            Task::MackeyGlass => 1,
            Task::Narma10 => 2,
            Task::Mnist => 3,
        }
    }

    pub fn is_classification(self) -> bool {
        self == Task::Mnist
    }
}

impl fmt::Display for Task {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Task {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "mackey_glass" | "mg" => Ok(Task::MackeyGlass),
            "narma10" | "narma" => Ok(Task::Narma10),
            "mnist" => Ok(Task::Mnist),
            other => Err(format!("unknown task `{other}`")),
        }
    }
}
