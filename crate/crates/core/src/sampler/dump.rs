//! Line-delimited JSON sample dumps. The first line is a header object
//! (`"schema": "iselab-samples/1"`), every further line one tree.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::TreeFamily;
use crate::partition::ExtendedPartition;
use crate::tree::LabelledTree;

use super::{label_moment, SeedSpec, RNG_NAME};

pub const SAMPLES_SCHEMA: &str = "iselab-samples/1";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DumpHeader {
    pub schema: String,
    pub version: String,
    pub rng: String,
    pub family: TreeFamily,
    pub n: usize,
    pub master_seed: u64,
    /// Order of the entries of each record's `moments` vector.
    pub moment_partitions: Vec<String>,
}

impl DumpHeader {
    pub fn new(family: TreeFamily, n: usize, master_seed: u64, partitions: &[ExtendedPartition]) -> Self {
        DumpHeader {
            schema: SAMPLES_SCHEMA.into(),
            version: env!("CARGO_PKG_VERSION").into(),
            rng: RNG_NAME.into(),
            family,
            n,
            master_seed,
            moment_partitions: partitions.iter().map(|p| p.to_string()).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProfileSummary {
    pub min_label: i64,
    pub max_label: i64,
    pub peak: u64,
    /// `max_v |ℓ(v)| · N^{-1/4}`
    pub scaled_max_label: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleRecord {
    pub family: TreeFamily,
    pub n: usize,
    pub seed: SeedSpec,
    pub moments: Vec<f64>,
    pub profile: ProfileSummary,
}

impl SampleRecord {
    pub fn new(tree: &LabelledTree, n: usize, seed: SeedSpec, partitions: &[ExtendedPartition]) -> Self {
        let p = tree.vertical_profile();
        SampleRecord {
            family: tree.family(),
            n,
            seed,
            moments: partitions.iter().map(|l| label_moment(tree, l)).collect(),
            profile: ProfileSummary {
                min_label: p.min(),
                max_label: p.max(),
                peak: p.counts.iter().copied().max().unwrap_or(0),
                scaled_max_label: tree.max_label() as f64 * (tree.node_count() as f64).powf(-0.25),
            },
        }
    }
}

fn io(e: impl std::fmt::Display) -> Error {
    Error::Io(e.to_string())
}

/// Writes the header line followed by one line per record.
pub fn write_jsonl(mut out: impl Write, header: &DumpHeader, records: &[SampleRecord]) -> Result<()> {
    serde_json::to_writer(&mut out, header).map_err(io)?;
    writeln!(out).map_err(io)?;
    for r in records {
        serde_json::to_writer(&mut out, r).map_err(io)?;
        writeln!(out).map_err(io)?;
    }
    Ok(())
}

/// Parses a dump written by [`write_jsonl`].
pub fn read_jsonl(text: &str) -> Result<(DumpHeader, Vec<SampleRecord>)> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header: DumpHeader = serde_json::from_str(lines.next().ok_or_else(|| io("empty dump"))?).map_err(io)?;
    if header.schema != SAMPLES_SCHEMA {
        return Err(io(format!("unknown schema {}", header.schema)));
    }
    let records = lines.map(|l| serde_json::from_str(l).map_err(io)).collect::<Result<_>>()?;
    Ok((header, records))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampler::sample;

    #[test]
    fn round_trip() {
        let parts: Vec<ExtendedPartition> = vec!["1".parse().unwrap(), "2".parse().unwrap()];
        let header = DumpHeader::new(TreeFamily::PlanePM1, 30, 4, &parts);
        let records: Vec<SampleRecord> = (0..3)
            .map(|s| {
                let seed = SeedSpec::new(4, s);
                SampleRecord::new(&sample(TreeFamily::PlanePM1, 30, seed).unwrap(), 30, seed, &parts)
            })
            .collect();
        let mut buf = Vec::new();
        write_jsonl(&mut buf, &header, &records).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 4);
        let (h, r) = read_jsonl(&text).unwrap();
        assert_eq!(h, header);
        assert_eq!(r, records);
    }
}
