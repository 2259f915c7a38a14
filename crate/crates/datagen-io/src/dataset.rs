//! Binary dataset files: magic `MTLKDDS1`, little-endian, header followed by
//! packed per-instance records.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use vrp_core::{Instance, VariantSpec};

use crate::gen::{generate_with_rng, instance_rng};
use crate::DataError;

pub const DATASET_MAGIC: &[u8; 8] = b"MTLKDDS1";
pub const FORMAT_VERSION: u32 = 1;

/// Identity of a dataset; the same header always regenerates the same file.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DatasetHeader {
    pub variant: VariantSpec,
    /// Customers per instance.
    pub n: u32,
    /// Instance count.
    pub count: u32,
    pub seed: u64,
    pub format_version: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub header: DatasetHeader,
    pub instances: Vec<Instance>,
}

/// Generate a dataset from its header: instance `i` uses RNG substream `i`.
pub fn generate_dataset(
    variant: VariantSpec,
    n: usize,
    count: usize,
    seed: u64,
) -> Result<Dataset, DataError> {
    if n == 0 {
        return Err(DataError::EmptyInstance);
    }
    let instances = (0..count)
        .map(|i| {
            let mut rng = instance_rng(seed, i as u64);
            generate_with_rng(variant, n, &mut rng)
        })
        .collect();
    Ok(Dataset {
        header: DatasetHeader {
            variant,
            n: n as u32,
            count: count as u32,
            seed,
            format_version: FORMAT_VERSION,
        },
        instances,
    })
}

pub fn save_dataset(dataset: &Dataset, path: &Path) -> Result<(), DataError> {
    let mut w = BufWriter::new(File::create(path)?);
    w.write_all(DATASET_MAGIC)?;
    write_u32(&mut w, dataset.header.format_version)?;
    w.write_all(&[dataset.header.variant.to_bits()])?;
    write_u32(&mut w, dataset.header.n)?;
    write_u32(&mut w, dataset.header.count)?;
    write_u64(&mut w, dataset.header.seed)?;
    for inst in &dataset.instances {
        write_instance(&mut w, inst)?;
    }
    Ok(())
}

pub fn load_dataset(path: &Path) -> Result<Dataset, DataError> {
    let mut r = BufReader::new(File::open(path)?);
    let mut magic = [0u8; 8];
    r.read_exact(&mut magic).map_err(|_| DataError::Truncated)?;
    if &magic != DATASET_MAGIC {
        return Err(DataError::BadMagic);
    }
    let format_version = read_u32(&mut r)?;
    if format_version != FORMAT_VERSION {
        return Err(DataError::BadVersion(format_version));
    }
    let mut vbits = [0u8; 1];
    r.read_exact(&mut vbits).map_err(|_| DataError::Truncated)?;
    let variant = VariantSpec::from_bits(vbits[0]).ok_or(DataError::Corrupt("variant bits"))?;
    let n = read_u32(&mut r)?;
    let count = read_u32(&mut r)?;
    let seed = read_u64(&mut r)?;
    let mut instances = Vec::with_capacity(count as usize);
    for _ in 0..count {
        instances.push(read_instance(&mut r, variant, n as usize)?);
    }
    Ok(Dataset {
        header: DatasetHeader { variant, n, count, seed, format_version },
        instances,
    })
}

fn write_instance<W: Write>(w: &mut W, inst: &Instance) -> Result<(), DataError> {
    for &(x, y) in &inst.coords {
        write_f64(w, x)?;
        write_f64(w, y)?;
    }
    for &d in &inst.demand {
        write_u32(w, d as u32)?;
    }
    for &s in &inst.service_time {
        write_f64(w, s)?;
    }
    for &(e, l) in &inst.tw {
        write_f64(w, e)?;
        write_f64(w, l)?;
    }
    write_f64(w, inst.capacity)?;
    write_f64(w, inst.duration_limit)?;
    write_f64(w, inst.speed)?;
    Ok(())
}

fn read_instance<R: Read>(r: &mut R, variant: VariantSpec, n: usize) -> Result<Instance, DataError> {
    let nodes = n + 1;
    let mut coords = Vec::with_capacity(nodes);
    for _ in 0..nodes {
        coords.push((read_f64(r)?, read_f64(r)?));
    }
    let mut demand = Vec::with_capacity(nodes);
    for _ in 0..nodes {
        demand.push(read_u32(r)? as i32);
    }
    let mut service_time = Vec::with_capacity(nodes);
    for _ in 0..nodes {
        service_time.push(read_f64(r)?);
    }
    let mut tw = Vec::with_capacity(nodes);
    for _ in 0..nodes {
        tw.push((read_f64(r)?, read_f64(r)?));
    }
    let capacity = read_f64(r)?;
    let duration_limit = read_f64(r)?;
    let speed = read_f64(r)?;
    Ok(Instance {
        coords,
        demand,
        service_time,
        tw,
        capacity,
        duration_limit,
        speed,
        variant,
    })
}

fn write_u32<W: Write>(w: &mut W, v: u32) -> Result<(), DataError> {
    Ok(w.write_all(&v.to_le_bytes())?)
}

fn write_u64<W: Write>(w: &mut W, v: u64) -> Result<(), DataError> {
    Ok(w.write_all(&v.to_le_bytes())?)
}

fn write_f64<W: Write>(w: &mut W, v: f64) -> Result<(), DataError> {
    Ok(w.write_all(&v.to_le_bytes())?)
}

fn read_u32<R: Read>(r: &mut R) -> Result<u32, DataError> {
    let mut b = [0u8; 4];
    r.read_exact(&mut b).map_err(|_| DataError::Truncated)?;
    Ok(u32::from_le_bytes(b))
}

fn read_u64<R: Read>(r: &mut R) -> Result<u64, DataError> {
    let mut b = [0u8; 8];
    r.read_exact(&mut b).map_err(|_| DataError::Truncated)?;
    Ok(u64::from_le_bytes(b))
}

fn read_f64<R: Read>(r: &mut R) -> Result<f64, DataError> {
    let mut b = [0u8; 8];
    r.read_exact(&mut b).map_err(|_| DataError::Truncated)?;
    Ok(f64::from_le_bytes(b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn save_load_roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("ds.bin");
        let ds = generate_dataset(VariantSpec::OVRPTW, 12, 10, 99).unwrap();
        save_dataset(&ds, &path).unwrap();
        let loaded = load_dataset(&path).unwrap();
        assert_eq!(ds, loaded);
    }

    #[test]
    fn corrupted_magic_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("ds.bin");
        let ds = generate_dataset(VariantSpec::CVRP, 5, 2, 1).unwrap();
        save_dataset(&ds, &path).unwrap();
        let mut bytes = std::fs::read(&path).unwrap();
        bytes[0] = b'X';
        std::fs::write(&path, &bytes).unwrap();
        assert!(matches!(load_dataset(&path), Err(DataError::BadMagic)));
    }

    #[test]
    fn truncated_file_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("ds.bin");
        let ds = generate_dataset(VariantSpec::CVRP, 5, 2, 1).unwrap();
        save_dataset(&ds, &path).unwrap();
        let bytes = std::fs::read(&path).unwrap();
        std::fs::write(&path, &bytes[..bytes.len() - 7]).unwrap();
        assert!(matches!(load_dataset(&path), Err(DataError::Truncated)));
    }

    #[test]
    fn file_size_is_stable_across_runs() {
        let dir = tempfile::tempdir().unwrap();
        let a = dir.path().join("a.bin");
        let b = dir.path().join("b.bin");
        let ds1 = generate_dataset(VariantSpec::VRPL, 200, 128, 5).unwrap();
        let ds2 = generate_dataset(VariantSpec::VRPL, 200, 128, 5).unwrap();
        save_dataset(&ds1, &a).unwrap();
        save_dataset(&ds2, &b).unwrap();
        assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    }
}
