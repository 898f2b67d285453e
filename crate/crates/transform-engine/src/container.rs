//! Binary pyramid container.
//!
//! Layout: magic `HXPY`, `u32` version, `u32` header length, JSON header
//! (image size, levels, bank hash and parameters, cut annotations, per-band
//! id, lattice and dimensions), then each band (wavelet bands in order, the
//! scaling band last) as row-major little-endian `f64` pairs `(re, im)`.

use std::io::{Read, Write};
use std::path::Path;

use filter_design::{bank_hash, build_bank, cutting_filters, BankKind, CutTarget, FilterBankSpec};
use lattice_core::IMat2;
use num_complex::Complex64;
use partition::Family;
use serde::{Deserialize, Serialize};

use crate::error::{TransformError, TransformResult};
use crate::pyramid::{Band, BandId, CutRecord, SubbandPyramid};

const MAGIC: &[u8; 4] = b"HXPY";
const VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct BankHeader {
    hash: String,
    kind: BankKind,
    family: Family,
    grid_n: usize,
    epsilon: f64,
    p_smooth: u32,
}

impl BankHeader {
    fn of(fb: &FilterBankSpec) -> Self {
        Self {
            hash: format!("{:016x}", bank_hash(fb)),
            kind: fb.kind,
            family: fb.family,
            grid_n: fb.grid_n,
            epsilon: fb.epsilon,
            p_smooth: fb.p_smooth,
        }
    }

    fn matches(&self, fb: &FilterBankSpec) -> bool {
        self.hash == format!("{:016x}", bank_hash(fb))
    }
}

#[derive(Serialize, Deserialize)]
struct CutHeader {
    level: u32,
    stage: u32,
    band: usize,
    target: CutTarget,
    bank: BankHeader,
}

#[derive(Serialize, Deserialize)]
struct BandHeader {
    id: BandId,
    lattice: IMat2,
    rows: usize,
    cols: usize,
}

#[derive(Serialize, Deserialize)]
struct Header {
    n: usize,
    levels: u32,
    bank: BankHeader,
    cuts: Vec<CutHeader>,
    bands: Vec<BandHeader>,
}

pub fn write_pyramid(p: &SubbandPyramid, mut w: impl Write) -> TransformResult<()> {
    let all: Vec<&Band> = p.bands.iter().chain(std::iter::once(&p.scaling)).collect();
    let header = Header {
        n: p.n,
        levels: p.levels,
        bank: BankHeader::of(&p.bank),
        cuts: p
            .cuts
            .iter()
            .map(|c| CutHeader { level: c.level, stage: c.stage, band: c.band, target: c.target, bank: BankHeader::of(&c.bank) })
            .collect(),
        bands: all.iter().map(|b| BandHeader { id: b.id, lattice: b.lattice, rows: b.rows, cols: b.cols }).collect(),
    };
    let json = serde_json::to_vec(&header).map_err(|e| TransformError::FormatError(e.to_string()))?;
    w.write_all(MAGIC)?;
    w.write_all(&VERSION.to_le_bytes())?;
    w.write_all(&(json.len() as u32).to_le_bytes())?;
    w.write_all(&json)?;
    for b in all {
        let mut buf = Vec::with_capacity(b.coeffs.len() * 16);
        for z in &b.coeffs {
            buf.extend_from_slice(&z.re.to_le_bytes());
            buf.extend_from_slice(&z.im.to_le_bytes());
        }
        w.write_all(&buf)?;
    }
    Ok(())
}

fn read_u32(r: &mut impl Read) -> TransformResult<u32> {
    let mut b = [0u8; 4];
    r.read_exact(&mut b)?;
    Ok(u32::from_le_bytes(b))
}

/// Read a pyramid. Its bank is `bank` when given (the hash must match),
/// otherwise it is rebuilt from the stored parameters; cut banks are always rebuilt.
pub fn read_pyramid(mut r: impl Read, bank: Option<&FilterBankSpec>) -> TransformResult<SubbandPyramid> {
    let mut magic = [0u8; 4];
    r.read_exact(&mut magic)?;
    if &magic != MAGIC {
        return Err(TransformError::FormatError("not a pyramid container".into()));
    }
    let version = read_u32(&mut r)?;
    if version != VERSION {
        return Err(TransformError::FormatError(format!("unsupported container version {version}")));
    }
    let len = read_u32(&mut r)? as usize;
    let mut json = vec![0u8; len];
    r.read_exact(&mut json)?;
    let h: Header = serde_json::from_slice(&json).map_err(|e| TransformError::FormatError(e.to_string()))?;

    let fb = match bank {
        Some(fb) => fb.clone(),
        None => build_bank(h.bank.kind, h.bank.epsilon, h.bank.p_smooth, h.bank.grid_n)?,
    };
    if fb.family != h.bank.family || !h.bank.matches(&fb) {
        return Err(TransformError::Metadata("filter bank hash does not match the pyramid".into()));
    }
    let mut cuts = Vec::new();
    for c in &h.cuts {
        let cb = cutting_filters(c.target, c.stage, c.band, c.bank.epsilon, c.bank.grid_n)?;
        if !c.bank.matches(&cb) {
            return Err(TransformError::Metadata(format!("cut bank of band {:?} does not match", (c.level, c.stage, c.band))));
        }
        cuts.push(CutRecord { level: c.level, stage: c.stage, band: c.band, target: c.target, epsilon: c.bank.epsilon, bank: cb });
    }

    let mut bands = Vec::with_capacity(h.bands.len());
    for bh in &h.bands {
        let count = bh.rows * bh.cols;
        let mut buf = vec![0u8; count * 16];
        r.read_exact(&mut buf)?;
        let coeffs = buf
            .chunks_exact(16)
            .map(|c| {
                let re = f64::from_le_bytes(c[..8].try_into().expect("8 bytes"));
                let im = f64::from_le_bytes(c[8..].try_into().expect("8 bytes"));
                Complex64::new(re, im)
            })
            .collect();
        bands.push(Band { id: bh.id, lattice: bh.lattice, rows: bh.rows, cols: bh.cols, coeffs });
    }
    let scaling = bands.pop().ok_or_else(|| TransformError::Metadata("no scaling band".into()))?;
    Ok(SubbandPyramid { n: h.n, levels: h.levels, bank: fb, bands, scaling, cuts })
}

pub fn save_pyramid(p: &SubbandPyramid, path: impl AsRef<Path>) -> TransformResult<()> {
    let f = std::fs::File::create(path)?;
    let mut w = std::io::BufWriter::new(f);
    write_pyramid(p, &mut w)?;
    w.flush()?;
    Ok(())
}

pub fn load_pyramid(path: impl AsRef<Path>, bank: Option<&FilterBankSpec>) -> TransformResult<SubbandPyramid> {
    read_pyramid(std::io::BufReader::new(std::fs::File::open(path)?), bank)
}
