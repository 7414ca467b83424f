//! Binary container for embedding vectors.
//!
//! All integers are little-endian.
//!
//! | offset | size | field   | value                              |
//! |--------|------|---------|------------------------------------|
//! | 0      | 4    | magic   | ASCII `PRDF`                       |
//! | 4      | 4    | version | u32, `1`                           |
//! | 8      | 8    | n       | u64, number of rows                |
//! | 16     | 8    | d       | u64, row dimension                 |
//! | 24     | 4    | dtype   | u32, `1` = float32                 |
//! | 28     | 4    | flags   | u32, bit 0 set = label block follows |
//! | 32     | 4·n·d| payload | f32 values, row-major              |
//! | …      | 4·n  | labels  | i32 per row, iff flag bit 0        |

use std::io::Write;
use std::path::Path;

use prd_core::cluster::FeatureSet;
use thiserror::Error;

pub const MAGIC: [u8; 4] = *b"PRDF";
pub const VERSION: u32 = 1;
pub const DTYPE_F32: u32 = 1;
pub const FLAG_LABELS: u32 = 1;
pub const HEADER_LEN: usize = 32;

#[derive(Debug, Error, PartialEq)]
#[error("field `{field}`: {reason}")]
pub struct FeatureFileError {
    pub field: &'static str,
    pub reason: String,
}

fn bad(field: &'static str, reason: impl Into<String>) -> FeatureFileError {
    FeatureFileError {
        field,
        reason: reason.into(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Header {
    pub n: u64,
    pub d: u64,
    pub has_labels: bool,
}

impl Header {
    pub fn to_bytes(self) -> [u8; HEADER_LEN] {
        let mut out = [0u8; HEADER_LEN];
        out[0..4].copy_from_slice(&MAGIC);
        out[4..8].copy_from_slice(&VERSION.to_le_bytes());
        out[8..16].copy_from_slice(&self.n.to_le_bytes());
        out[16..24].copy_from_slice(&self.d.to_le_bytes());
        out[24..28].copy_from_slice(&DTYPE_F32.to_le_bytes());
        let flags = if self.has_labels { FLAG_LABELS } else { 0 };
        out[28..32].copy_from_slice(&flags.to_le_bytes());
        out
    }

    pub fn parse(bytes: &[u8]) -> Result<Self, FeatureFileError> {
        if bytes.len() < 4 || bytes[0..4] != MAGIC {
            let found = &bytes[..bytes.len().min(4)];
            return Err(bad(
                "magic",
                format!("expected \"PRDF\", found {found:02x?}"),
            ));
        }
        let u32_at = |field, off: usize| -> Result<u32, FeatureFileError> {
            bytes
                .get(off..off + 4)
                .map(|b| u32::from_le_bytes(b.try_into().unwrap()))
                .ok_or_else(|| bad(field, "header truncated"))
        };
        let u64_at = |field, off: usize| -> Result<u64, FeatureFileError> {
            bytes
                .get(off..off + 8)
                .map(|b| u64::from_le_bytes(b.try_into().unwrap()))
                .ok_or_else(|| bad(field, "header truncated"))
        };
        let version = u32_at("version", 4)?;
        if version != VERSION {
            return Err(bad(
                "version",
                format!("expected {VERSION}, found {version}"),
            ));
        }
        let n = u64_at("n", 8)?;
        let d = u64_at("d", 16)?;
        let dtype = u32_at("dtype", 24)?;
        if dtype != DTYPE_F32 {
            return Err(bad(
                "dtype",
                format!("expected {DTYPE_F32} (float32), found {dtype}"),
            ));
        }
        let flags = u32_at("flags", 28)?;
        if flags & !FLAG_LABELS != 0 {
            return Err(bad("flags", format!("unknown bits set in {flags:#x}")));
        }
        if n == 0 {
            return Err(bad("n", "file holds no rows"));
        }
        if d == 0 {
            return Err(bad("d", "row dimension is zero"));
        }
        Ok(Header {
            n,
            d,
            has_labels: flags & FLAG_LABELS != 0,
        })
    }
}

/// Decodes a complete feature file.
pub fn decode(bytes: &[u8]) -> Result<FeatureSet, FeatureFileError> {
    let header = Header::parse(bytes)?;
    let n = usize::try_from(header.n).map_err(|_| bad("n", "too large"))?;
    let d = usize::try_from(header.d).map_err(|_| bad("d", "too large"))?;
    let payload_len = n
        .checked_mul(d)
        .and_then(|c| c.checked_mul(4))
        .ok_or_else(|| bad("d", "n*d overflows"))?;
    let labels_len = if header.has_labels { 4 * n } else { 0 };
    let body = &bytes[HEADER_LEN..];
    if body.len() < payload_len {
        return Err(bad(
            "payload",
            format!("expected {payload_len} bytes, found {}", body.len()),
        ));
    }
    if body.len() < payload_len + labels_len {
        return Err(bad(
            "labels",
            format!(
                "expected {labels_len} bytes, found {}",
                body.len() - payload_len
            ),
        ));
    }
    if body.len() > payload_len + labels_len {
        return Err(bad(
            "payload",
            format!(
                "{} trailing bytes after declared content",
                body.len() - payload_len - labels_len
            ),
        ));
    }
    let values: Vec<f32> = body[..payload_len]
        .chunks_exact(4)
        .map(|b| f32::from_le_bytes(b.try_into().unwrap()))
        .collect();
    let set = FeatureSet::new(values, n, d).map_err(|e| bad("payload", e.to_string()))?;
    if !header.has_labels {
        return Ok(set);
    }
    let labels = body[payload_len..]
        .chunks_exact(4)
        .map(|b| i32::from_le_bytes(b.try_into().unwrap()))
        .collect();
    set.with_labels(labels)
        .map_err(|e| bad("labels", e.to_string()))
}

pub fn encode(set: &FeatureSet) -> Vec<u8> {
    let header = Header {
        n: set.len() as u64,
        d: set.dim() as u64,
        has_labels: set.labels().is_some(),
    };
    let labels = set.labels().unwrap_or(&[]);
    let mut out = Vec::with_capacity(HEADER_LEN + 4 * (set.values().len() + labels.len()));
    out.extend_from_slice(&header.to_bytes());
    for v in set.values() {
        out.extend_from_slice(&v.to_le_bytes());
    }
    for l in labels {
        out.extend_from_slice(&l.to_le_bytes());
    }
    out
}

pub fn write(path: &Path, set: &FeatureSet) -> std::io::Result<()> {
    let mut file = std::fs::File::create(path)?;
    file.write_all(&encode(set))?;
    file.sync_all()
}
