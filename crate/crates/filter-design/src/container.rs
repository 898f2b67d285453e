//! Versioned binary container for filter banks.
//!
//! Layout: magic `HXFB`, `u32` version, `u32` header length, JSON header
//! (kind, family, grid size, eps, smoothness, parent lattice, per-band lattice
//! and `η`), then each band's modulus grid as row-major little-endian `f64`.

use std::io::{Read, Write};
use std::path::Path;

use lattice_core::IMat2;
use partition::Family;
use serde::{Deserialize, Serialize};

use crate::bank::{BankKind, FilterBankSpec, TransferGrid};
use crate::error::{FilterError, FilterResult};

const MAGIC: &[u8; 4] = b"HXFB";
const VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct BandHeader {
    band: usize,
    lattice: IMat2,
    eta: [i64; 2],
}

#[derive(Serialize, Deserialize)]
struct Header {
    kind: BankKind,
    family: Family,
    grid_n: usize,
    epsilon: f64,
    p_smooth: u32,
    parent: IMat2,
    bands: Vec<BandHeader>,
}

pub fn write_bank(fb: &FilterBankSpec, mut w: impl Write) -> FilterResult<()> {
    let header = Header {
        kind: fb.kind,
        family: fb.family,
        grid_n: fb.grid_n,
        epsilon: fb.epsilon,
        p_smooth: fb.p_smooth,
        parent: fb.parent,
        bands: fb.filters.iter().map(|f| BandHeader { band: f.band, lattice: f.lattice, eta: f.eta }).collect(),
    };
    let json = serde_json::to_vec(&header).map_err(|e| FilterError::FormatError(e.to_string()))?;
    w.write_all(MAGIC)?;
    w.write_all(&VERSION.to_le_bytes())?;
    w.write_all(&(json.len() as u32).to_le_bytes())?;
    w.write_all(&json)?;
    for f in &fb.filters {
        let mut buf = Vec::with_capacity(f.modulus.len() * 8);
        for x in &f.modulus {
            buf.extend_from_slice(&x.to_le_bytes());
        }
        w.write_all(&buf)?;
    }
    Ok(())
}

fn read_u32(r: &mut impl Read) -> FilterResult<u32> {
    let mut b = [0u8; 4];
    r.read_exact(&mut b)?;
    Ok(u32::from_le_bytes(b))
}

pub fn read_bank(mut r: impl Read) -> FilterResult<FilterBankSpec> {
    let mut magic = [0u8; 4];
    r.read_exact(&mut magic)?;
    if &magic != MAGIC {
        return Err(FilterError::FormatError("not a filter bank container".into()));
    }
    let version = read_u32(&mut r)?;
    if version != VERSION {
        return Err(FilterError::FormatError(format!("unsupported container version {version}")));
    }
    let len = read_u32(&mut r)? as usize;
    let mut json = vec![0u8; len];
    r.read_exact(&mut json)?;
    let h: Header = serde_json::from_slice(&json).map_err(|e| FilterError::FormatError(e.to_string()))?;
    let n2 = h.grid_n.checked_mul(h.grid_n).ok_or_else(|| FilterError::FormatError("grid too large".into()))?;
    let mut filters = Vec::with_capacity(h.bands.len());
    let mut buf = vec![0u8; n2 * 8];
    for b in h.bands {
        r.read_exact(&mut buf)?;
        let modulus = buf.chunks_exact(8).map(|c| f64::from_le_bytes(c.try_into().unwrap())).collect();
        filters.push(TransferGrid { band: b.band, lattice: b.lattice, eta: b.eta, modulus });
    }
    let fb = FilterBankSpec {
        kind: h.kind,
        family: h.family,
        grid_n: h.grid_n,
        epsilon: h.epsilon,
        p_smooth: h.p_smooth,
        parent: h.parent,
        filters,
    };
    fb.validate()?;
    Ok(fb)
}

pub fn save_bank(fb: &FilterBankSpec, path: impl AsRef<Path>) -> FilterResult<()> {
    let f = std::fs::File::create(path)?;
    let mut w = std::io::BufWriter::new(f);
    write_bank(fb, &mut w)?;
    w.flush()?;
    Ok(())
}

pub fn load_bank(path: impl AsRef<Path>) -> FilterResult<FilterBankSpec> {
    read_bank(std::io::BufReader::new(std::fs::File::open(path)?))
}

/// FNV-1a digest of the serialized bank.
pub fn bank_hash(fb: &FilterBankSpec) -> u64 {
    let mut bytes = Vec::new();
    write_bank(fb, &mut bytes).expect("writing to memory cannot fail");
    bytes.iter().fold(0xcbf29ce484222325u64, |h, &b| (h ^ b as u64).wrapping_mul(0x100000001b3))
}
