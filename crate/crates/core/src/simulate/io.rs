//! Ensemble files.
//!
//! Binary layout, all integers and floats little-endian:
//!
//! | bytes | content |
//! |---|---|
//! | 8 | magic `LVYENS01` |
//! | 4 | scalar width in bytes (4 or 8) |
//! | 4 | reserved, zero |
//! | 8 × 3 | `d`, `N`, number of grid times `n` |
//! | 8 × n | grid times as `f64` |
//! | width × n·N·d | states, time-major (`state[k][p][j]`) |
//!
//! The JSON sidecar carries the scheme, seed, initial law, jump marks and
//! the SHA-256 of the binary file.

use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::report::SCHEMA_VERSION;
use crate::scalar::{lit, to_f64, Real};
use crate::simulate::ensemble::{EnsembleMeta, SolutionEnsemble};

const MAGIC: &[u8; 8] = b"LVYENS01";

/// Paths beyond this count are not written to CSV.
pub const CSV_MAX_PATHS: usize = 1000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnsembleSidecar {
    pub schema_version: u32,
    pub scalar: String,
    pub dim: usize,
    pub n_paths: usize,
    pub n_times: usize,
    pub layout: String,
    pub binary_sha256: String,
    pub meta: EnsembleMeta,
    pub jump_marks: Vec<Vec<usize>>,
}

fn width<T: Real>() -> usize {
    std::mem::size_of::<T>()
}

pub fn write_binary<T: Real, W: Write>(e: &SolutionEnsemble<T>, mut w: W) -> Result<()> {
    let wd = width::<T>();
    w.write_all(MAGIC)?;
    w.write_all(&(wd as u32).to_le_bytes())?;
    w.write_all(&0u32.to_le_bytes())?;
    for v in [e.dim, e.n_paths, e.n_times()] {
        w.write_all(&(v as u64).to_le_bytes())?;
    }
    for t in &e.times {
        w.write_all(&to_f64(*t).to_le_bytes())?;
    }
    let mut buf = Vec::with_capacity(e.states().len() * wd);
    for s in e.states() {
        if wd == 4 {
            buf.extend_from_slice(&(to_f64(*s) as f32).to_le_bytes());
        } else {
            buf.extend_from_slice(&to_f64(*s).to_le_bytes());
        }
    }
    w.write_all(&buf)?;
    Ok(())
}

/// Grid times and states from the binary layout; `(d, N, times, states)`.
pub fn read_binary<T: Real, R: Read>(mut r: R) -> Result<(usize, usize, Vec<T>, Vec<T>)> {
    let mut bytes = Vec::new();
    r.read_to_end(&mut bytes)?;
    let mut at = 0usize;
    let mut take = |n: usize| -> Result<&[u8]> {
        let s = bytes
            .get(at..at + n)
            .ok_or_else(|| Error::Format("ensemble file truncated".into()))?;
        at += n;
        Ok(s)
    };
    if take(8)? != MAGIC {
        return Err(Error::Format("not an ensemble file".into()));
    }
    let wd = u32::from_le_bytes(take(4)?.try_into().unwrap()) as usize;
    take(4)?;
    if wd != width::<T>() {
        return Err(Error::Format(format!(
            "file stores {wd}-byte scalars, reader expects {}",
            width::<T>()
        )));
    }
    let mut dims = [0usize; 3];
    for v in dims.iter_mut() {
        *v = u64::from_le_bytes(take(8)?.try_into().unwrap()) as usize;
    }
    let [d, n, nt] = dims;
    let times = (0..nt)
        .map(|_| Ok(lit::<T>(f64::from_le_bytes(take(8)?.try_into().unwrap()))))
        .collect::<Result<Vec<T>>>()?;
    let count = nt
        .checked_mul(n)
        .and_then(|v| v.checked_mul(d))
        .ok_or_else(|| Error::Format("ensemble dimensions overflow".into()))?;
    let mut states = Vec::with_capacity(count);
    for _ in 0..count {
        let b = take(wd)?;
        let v = if wd == 4 {
            f32::from_le_bytes(b.try_into().unwrap()) as f64
        } else {
            f64::from_le_bytes(b.try_into().unwrap())
        };
        states.push(lit::<T>(v));
    }
    if take(1).is_ok() {
        return Err(Error::Format("trailing bytes after ensemble states".into()));
    }
    Ok((d, n, times, states))
}

/// Writes `<stem>.bin` and `<stem>.json` into `dir`.
pub fn save_ensemble<T: Real>(e: &SolutionEnsemble<T>, dir: &Path, stem: &str) -> Result<(PathBuf, PathBuf)> {
    fs::create_dir_all(dir)?;
    let mut bin = Vec::new();
    write_binary(e, &mut bin)?;
    let bin_path = dir.join(format!("{stem}.bin"));
    let json_path = dir.join(format!("{stem}.json"));
    fs::write(&bin_path, &bin)?;
    let side = EnsembleSidecar {
        schema_version: SCHEMA_VERSION,
        scalar: if width::<T>() == 4 { "f32" } else { "f64" }.into(),
        dim: e.dim,
        n_paths: e.n_paths,
        n_times: e.n_times(),
        layout: "time-major: state[k][p][j]".into(),
        binary_sha256: hex::encode(Sha256::digest(&bin)),
        meta: e.meta.clone(),
        jump_marks: e.jump_marks.clone(),
    };
    fs::write(&json_path, serde_json::to_string_pretty(&side)?)?;
    Ok((bin_path, json_path))
}

/// Reads an ensemble back, checking the binary against the sidecar.
pub fn load_ensemble<T: Real>(bin_path: &Path, json_path: &Path) -> Result<SolutionEnsemble<T>> {
    let bin = fs::read(bin_path)?;
    let side: EnsembleSidecar = serde_json::from_slice(&fs::read(json_path)?)?;
    if side.schema_version != SCHEMA_VERSION {
        return Err(Error::Format(format!("unsupported schema version {}", side.schema_version)));
    }
    if hex::encode(Sha256::digest(&bin)) != side.binary_sha256 {
        return Err(Error::Format("ensemble binary does not match its sidecar checksum".into()));
    }
    let (d, n, times, states) = read_binary::<T, _>(bin.as_slice())?;
    if d != side.dim || n != side.n_paths || times.len() != side.n_times {
        return Err(Error::Format("ensemble header disagrees with the sidecar".into()));
    }
    SolutionEnsemble::from_parts(times, d, n, states, side.jump_marks, side.meta)
}

/// `path,t,x0,…` rows; refuses ensembles larger than [`CSV_MAX_PATHS`].
pub fn write_ensemble_csv<T: Real, W: Write>(e: &SolutionEnsemble<T>, mut w: W) -> Result<()> {
    if e.n_paths > CSV_MAX_PATHS {
        return Err(Error::Parameter(format!(
            "CSV export is limited to {CSV_MAX_PATHS} paths, ensemble has {}",
            e.n_paths
        )));
    }
    let coords: Vec<String> = (0..e.dim).map(|j| format!("x{j}")).collect();
    writeln!(w, "path,t,{}", coords.join(","))?;
    for p in 0..e.n_paths {
        for k in 0..e.n_times() {
            let s: Vec<String> = e.state(p, k).iter().map(|v| format!("{:e}", to_f64(*v))).collect();
            writeln!(w, "{p},{:e},{}", to_f64(e.times[k]), s.join(","))?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::levy::coeff::CoeffFn;
    use crate::levy::exponent::LevyExponent;
    use crate::simulate::ensemble::{simulate_ensemble, InitialLaw, SchemeSpec};

    fn ens<T: Real>() -> SolutionEnsemble<T> {
        let s = SchemeSpec::Sde {
            drift: CoeffFn::constant(0.5),
            sigma: CoeffFn::constant(1.0),
            driver: LevyExponent::Stable { alpha: 1.7 },
            small_jump_cutoff: 1e-3,
            jump_threshold: 0.5,
        };
        simulate_ensemble(&s, &InitialLaw::dirac(vec![1.0]), 20, 1.0, 0.1, 42).unwrap()
    }

    #[test]
    fn roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let e = ens::<f64>();
        let (b, j) = save_ensemble(&e, dir.path(), "ens").unwrap();
        let back = load_ensemble::<f64>(&b, &j).unwrap();
        assert_eq!(back, e);
        assert!(load_ensemble::<f32>(&b, &j).is_err());

        let e32 = ens::<f32>();
        let (b, j) = save_ensemble(&e32, dir.path(), "ens32").unwrap();
        assert_eq!(load_ensemble::<f32>(&b, &j).unwrap(), e32);
    }

    #[test]
    fn corruption_is_detected() {
        let dir = tempfile::tempdir().unwrap();
        let (b, j) = save_ensemble(&ens::<f64>(), dir.path(), "ens").unwrap();
        let mut bytes = fs::read(&b).unwrap();
        let last = bytes.len() - 1;
        bytes[last] ^= 1;
        fs::write(&b, &bytes).unwrap();
        assert!(matches!(load_ensemble::<f64>(&b, &j), Err(Error::Format(_))));
        assert!(read_binary::<f64, _>(&bytes[..40]).is_err());
    }

    #[test]
    fn csv_rows() {
        let e = ens::<f64>();
        let mut buf = Vec::new();
        write_ensemble_csv(&e, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 1 + 20 * e.n_times());
        assert!(text.starts_with("path,t,x0\n0,0e0,1e0\n"));
    }
}
