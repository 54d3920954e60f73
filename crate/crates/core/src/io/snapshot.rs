//! `CFLM1` binary snapshots.
//!
//! Layout, all little-endian: the 5 ASCII bytes `CFLM1`, `u32` version,
//! `u32` n_x n_y n_z, `f64` l_x l_y l_z, `f64` a, kappa, t, frame_tilt,
//! then `n_x·n_y·n_z` `f64` samples with x fastest.

use std::path::Path;

use crate::error::{Error, Result};
use crate::spectral::{Field, Grid};

use super::atomic_write;

pub const SNAPSHOT_MAGIC: &[u8; 5] = b"CFLM1";
pub const SNAPSHOT_VERSION: u32 = 1;
pub const SNAPSHOT_HEADER_LEN: usize = 5 + 4 + 3 * 4 + 3 * 8 + 4 * 8;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SnapshotMeta {
    pub a: f64,
    pub kappa: f64,
    pub t: f64,
}

pub fn encode_snapshot(field: &Field, meta: &SnapshotMeta) -> Vec<u8> {
    let g = &field.grid;
    let mut b = Vec::with_capacity(SNAPSHOT_HEADER_LEN + 8 * g.len());
    b.extend_from_slice(SNAPSHOT_MAGIC);
    b.extend_from_slice(&SNAPSHOT_VERSION.to_le_bytes());
    for n in g.n() {
        b.extend_from_slice(&(n as u32).to_le_bytes());
    }
    for v in g.lengths().into_iter().chain([meta.a, meta.kappa, meta.t, field.frame_tilt]) {
        b.extend_from_slice(&v.to_le_bytes());
    }
    for v in &field.values {
        b.extend_from_slice(&v.to_le_bytes());
    }
    b
}

pub fn decode_snapshot(bytes: &[u8]) -> Result<(Field, SnapshotMeta)> {
    if bytes.len() < 5 || &bytes[..5] != SNAPSHOT_MAGIC {
        return Err(Error::Snapshot("bad magic, not a CFLM1 snapshot".into()));
    }
    if bytes.len() < SNAPSHOT_HEADER_LEN {
        return Err(Error::Snapshot(format!(
            "truncated header: {} bytes, need {SNAPSHOT_HEADER_LEN}",
            bytes.len()
        )));
    }
    let u32_at = |o: usize| u32::from_le_bytes(bytes[o..o + 4].try_into().unwrap());
    let f64_at = |o: usize| f64::from_le_bytes(bytes[o..o + 8].try_into().unwrap());
    let version = u32_at(5);
    if version != SNAPSHOT_VERSION {
        return Err(Error::UnsupportedVersion(version));
    }
    let n = [u32_at(9) as usize, u32_at(13) as usize, u32_at(17) as usize];
    let l = [f64_at(21), f64_at(29), f64_at(37)];
    let meta = SnapshotMeta { a: f64_at(45), kappa: f64_at(53), t: f64_at(61) };
    let tilt = f64_at(69);
    let grid = Grid::new(n, l).map_err(|e| Error::Snapshot(e.to_string()))?;
    let payload = &bytes[SNAPSHOT_HEADER_LEN..];
    let want = 8 * grid.len();
    if payload.len() != want {
        return Err(Error::Snapshot(format!(
            "payload is {} bytes, header implies {want}",
            payload.len()
        )));
    }
    let values = payload.chunks_exact(8).map(|c| f64::from_le_bytes(c.try_into().unwrap())).collect();
    Ok((Field { grid, values, frame_tilt: tilt }, meta))
}

pub fn write_snapshot(field: &Field, meta: &SnapshotMeta, path: &Path) -> Result<()> {
    atomic_write(path, &encode_snapshot(field, meta))
}

pub fn read_snapshot(path: &Path) -> Result<(Field, SnapshotMeta)> {
    decode_snapshot(&std::fs::read(path)?)
}
