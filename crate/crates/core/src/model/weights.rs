// SPDX-License-Identifier: Apache-2.0

use std::io::{Read, Write};
use std::path::Path;

use ndarray::{Array1, Array2, Array3};
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::FeatureScaler;
use crate::error::{Error, Result};
use crate::rng;

pub const CONV1_CHANNELS: usize = 16;
pub const CONV2_CHANNELS: usize = 32;
pub const KERNEL: usize = 3;
pub const HIDDEN: usize = 64;

/// Every learnable parameter of the network.
///
/// Convolution kernels are `[out_channels, in_channels, taps]`; tap 0 reads
/// the position to the left, tap 1 the same position, tap 2 the right.
/// Graph layer matrices are `[out, in]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelWeights {
    pub conv1_kernel: Array3<f64>,
    pub conv1_bias: Array1<f64>,
    pub conv2_kernel: Array3<f64>,
    pub conv2_bias: Array1<f64>,
    pub sage1: Array2<f64>,
    pub sage2: Array2<f64>,
    pub head_w: Array1<f64>,
    pub head_b: f64,
}

/// Gradient of the loss with respect to each field of [`ModelWeights`].
#[derive(Debug, Clone, PartialEq)]
pub struct Gradients(pub ModelWeights);

impl std::ops::Deref for Gradients {
    type Target = ModelWeights;

    fn deref(&self) -> &ModelWeights {
        &self.0
    }
}

const TENSOR_NAMES: [&str; 8] = [
    "conv1_kernel",
    "conv1_bias",
    "conv2_kernel",
    "conv2_bias",
    "sage1",
    "sage2",
    "head_w",
    "head_b",
];

impl ModelWeights {
    pub fn zeros() -> Self {
        ModelWeights {
            conv1_kernel: Array3::zeros((CONV1_CHANNELS, 1, KERNEL)),
            conv1_bias: Array1::zeros(CONV1_CHANNELS),
            conv2_kernel: Array3::zeros((CONV2_CHANNELS, CONV1_CHANNELS, KERNEL)),
            conv2_bias: Array1::zeros(CONV2_CHANNELS),
            sage1: Array2::zeros((HIDDEN, CONV2_CHANNELS)),
            sage2: Array2::zeros((HIDDEN, HIDDEN)),
            head_w: Array1::zeros(HIDDEN),
            head_b: 0.0,
        }
    }

    /// Glorot-uniform weights and zero biases.
    pub fn init(seed: u64) -> Self {
        let mut rng = rng::stream(seed);
        let mut w = Self::zeros();
        let mut fill = |values: &mut [f64], fan_in: usize, fan_out: usize| {
            let bound = (6.0 / (fan_in + fan_out) as f64).sqrt();
            for x in values {
                *x = rng.gen_range(-bound..bound);
            }
        };
        fill(w.conv1_kernel.as_slice_mut().unwrap(), KERNEL, CONV1_CHANNELS * KERNEL);
        fill(w.conv2_kernel.as_slice_mut().unwrap(), CONV1_CHANNELS * KERNEL, CONV2_CHANNELS * KERNEL);
        fill(w.sage1.as_slice_mut().unwrap(), CONV2_CHANNELS, HIDDEN);
        fill(w.sage2.as_slice_mut().unwrap(), HIDDEN, HIDDEN);
        fill(w.head_w.as_slice_mut().unwrap(), HIDDEN, 1);
        w
    }

    fn shapes(&self) -> [Vec<usize>; 8] {
        [
            self.conv1_kernel.shape().to_vec(),
            self.conv1_bias.shape().to_vec(),
            self.conv2_kernel.shape().to_vec(),
            self.conv2_bias.shape().to_vec(),
            self.sage1.shape().to_vec(),
            self.sage2.shape().to_vec(),
            self.head_w.shape().to_vec(),
            Vec::new(),
        ]
    }

    /// Row-major views of every tensor, in a fixed order.
    pub fn tensors(&self) -> [&[f64]; 8] {
        [
            self.conv1_kernel.as_slice().expect("standard layout"),
            self.conv1_bias.as_slice().expect("standard layout"),
            self.conv2_kernel.as_slice().expect("standard layout"),
            self.conv2_bias.as_slice().expect("standard layout"),
            self.sage1.as_slice().expect("standard layout"),
            self.sage2.as_slice().expect("standard layout"),
            self.head_w.as_slice().expect("standard layout"),
            std::slice::from_ref(&self.head_b),
        ]
    }

    pub fn tensors_mut(&mut self) -> [&mut [f64]; 8] {
        [
            self.conv1_kernel.as_slice_mut().expect("standard layout"),
            self.conv1_bias.as_slice_mut().expect("standard layout"),
            self.conv2_kernel.as_slice_mut().expect("standard layout"),
            self.conv2_bias.as_slice_mut().expect("standard layout"),
            self.sage1.as_slice_mut().expect("standard layout"),
            self.sage2.as_slice_mut().expect("standard layout"),
            self.head_w.as_slice_mut().expect("standard layout"),
            std::slice::from_mut(&mut self.head_b),
        ]
    }

    pub fn parameter_count(&self) -> usize {
        self.tensors().iter().map(|t| t.len()).sum()
    }

    pub fn is_finite(&self) -> bool {
        self.tensors().iter().all(|t| t.iter().all(|x| x.is_finite()))
    }
}

pub const WEIGHT_FILE_MAGIC: &str = "cgsrank-weights";
pub const WEIGHT_FILE_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct Header {
    magic: String,
    format_version: u32,
}

#[derive(Serialize, Deserialize)]
struct TensorRecord {
    name: String,
    shape: Vec<usize>,
    data: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct WeightFile {
    magic: String,
    format_version: u32,
    tensors: Vec<TensorRecord>,
    normalization: FeatureScaler,
}

/// Writes weights and feature normalization as a self-describing JSON document.
pub fn write_weights<W: Write>(w: &ModelWeights, scaler: &FeatureScaler, out: W) -> Result<()> {
    let tensors = TENSOR_NAMES
        .iter()
        .zip(w.shapes())
        .zip(w.tensors())
        .map(|((name, shape), data)| TensorRecord { name: name.to_string(), shape, data: data.to_vec() })
        .collect();
    let file = WeightFile {
        magic: WEIGHT_FILE_MAGIC.to_string(),
        format_version: WEIGHT_FILE_VERSION,
        tensors,
        normalization: *scaler,
    };
    serde_json::to_writer_pretty(out, &file)?;
    Ok(())
}

pub fn read_weights<R: Read>(mut input: R) -> Result<(ModelWeights, FeatureScaler)> {
    let mut text = String::new();
    input.read_to_string(&mut text)?;
    let header: Header = serde_json::from_str(&text).map_err(|e| Error::Format(e.to_string()))?;
    if header.magic != WEIGHT_FILE_MAGIC {
        return Err(Error::Format(format!("unexpected magic '{}'", header.magic)));
    }
    if header.format_version != WEIGHT_FILE_VERSION {
        return Err(Error::Version { found: header.format_version, supported: WEIGHT_FILE_VERSION });
    }
    let file: WeightFile = serde_json::from_str(&text).map_err(|e| Error::Format(e.to_string()))?;
    let mut w = ModelWeights::zeros();
    if file.tensors.len() != TENSOR_NAMES.len() {
        return Err(Error::Format(format!("expected {} tensors, found {}", TENSOR_NAMES.len(), file.tensors.len())));
    }
    let shapes = w.shapes();
    for (((record, name), shape), dest) in file.tensors.iter().zip(TENSOR_NAMES).zip(shapes).zip(w.tensors_mut()) {
        if record.name != name || record.shape != shape || record.data.len() != dest.len() {
            return Err(Error::Format(format!(
                "tensor '{}' with shape {:?} does not match expected '{name}' {shape:?}",
                record.name, record.shape
            )));
        }
        dest.copy_from_slice(&record.data);
    }
    Ok((w, file.normalization))
}

pub fn save_weights(w: &ModelWeights, scaler: &FeatureScaler, path: impl AsRef<Path>) -> Result<()> {
    let mut file = std::io::BufWriter::new(std::fs::File::create(path)?);
    write_weights(w, scaler, &mut file)?;
    file.flush()?;
    Ok(())
}

pub fn load_weights(path: impl AsRef<Path>) -> Result<(ModelWeights, FeatureScaler)> {
    read_weights(std::fs::File::open(path)?)
}
