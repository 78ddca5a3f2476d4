//! On-disk memo of root/Σ tables, enabled by `QSR_CACHE_DIR`.
//!
//! File layout: magic `QSRC`, u32 format version, u64 payload length, the
//! payload, then the SHA-256 of the payload. The payload starts with the key
//! string so that a hash collision in the file name is still caught. Any
//! mismatch is treated as a miss and the file is rebuilt.

use std::fs;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use qsr_core::decomp::{SigmaTable, TableSnapshot};
use qsr_core::{DimVector, ParamSet, Quiver};

const MAGIC: &[u8; 4] = b"QSRC";
const VERSION: u32 = 1;
pub const ENV: &str = "QSR_CACHE_DIR";

pub fn key(q: &Quiver, params: &ParamSet, bound: &DimVector) -> String {
    format!(
        "v{VERSION};quiver={};lambda={:?};theta={};bound={}",
        serde_json::to_string(q).expect("quivers serialize"),
        params.lambdas.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        params.theta,
        bound
    )
}

fn path_for(dir: &Path, key: &str) -> PathBuf {
    dir.join(format!("{}.qsrc", hex::encode(Sha256::digest(key.as_bytes()))))
}

fn put_opt(out: &mut Vec<u8>, v: Option<i64>) {
    out.extend_from_slice(&v.unwrap_or(-1).to_le_bytes());
}

pub fn encode(key: &str, snap: &TableSnapshot) -> Vec<u8> {
    let mut payload = Vec::new();
    payload.extend_from_slice(&(key.len() as u64).to_le_bytes());
    payload.extend_from_slice(key.as_bytes());
    payload.extend_from_slice(&(snap.p.len() as u64).to_le_bytes());
    for i in 0..snap.p.len() {
        put_opt(&mut payload, snap.p[i]);
        put_opt(&mut payload, snap.max_p[i]);
        put_opt(&mut payload, snap.sigma_best[i]);
        payload.push(snap.sigma[i] as u8);
    }
    let mut out = Vec::with_capacity(payload.len() + 48);
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&VERSION.to_le_bytes());
    out.extend_from_slice(&(payload.len() as u64).to_le_bytes());
    out.extend_from_slice(&payload);
    out.extend_from_slice(&Sha256::digest(&payload));
    out
}

struct Reader<'a> {
    buf: &'a [u8],
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Option<&'a [u8]> {
        if self.buf.len() < n {
            return None;
        }
        let (head, tail) = self.buf.split_at(n);
        self.buf = tail;
        Some(head)
    }

    fn u64(&mut self) -> Option<u64> {
        Some(u64::from_le_bytes(self.take(8)?.try_into().ok()?))
    }

    fn opt(&mut self) -> Option<Option<i64>> {
        let v = i64::from_le_bytes(self.take(8)?.try_into().ok()?);
        match v {
            -1 => Some(None),
            v if v >= 0 => Some(Some(v)),
            _ => None,
        }
    }
}

pub fn decode(key: &str, bytes: &[u8]) -> Option<TableSnapshot> {
    let mut r = Reader { buf: bytes };
    if r.take(4)? != MAGIC {
        return None;
    }
    if u32::from_le_bytes(r.take(4)?.try_into().ok()?) != VERSION {
        return None;
    }
    let len = usize::try_from(r.u64()?).ok()?;
    let payload = r.take(len)?;
    if r.take(32)? != Sha256::digest(payload).as_slice() || !r.buf.is_empty() {
        return None;
    }
    let mut p = Reader { buf: payload };
    let klen = usize::try_from(p.u64()?).ok()?;
    if p.take(klen)? != key.as_bytes() {
        return None;
    }
    let vol = usize::try_from(p.u64()?).ok()?;
    if p.buf.len() != vol.checked_mul(25)? {
        return None;
    }
    let mut snap = TableSnapshot {
        p: Vec::with_capacity(vol),
        max_p: Vec::with_capacity(vol),
        sigma: Vec::with_capacity(vol),
        sigma_best: Vec::with_capacity(vol),
    };
    for _ in 0..vol {
        snap.p.push(p.opt()?);
        snap.max_p.push(p.opt()?);
        snap.sigma_best.push(p.opt()?);
        snap.sigma.push(match p.take(1)?[0] {
            0 => false,
            1 => true,
            _ => return None,
        });
    }
    Some(snap)
}

/// Loads the table from the cache directory if present and intact,
/// otherwise builds it and (best effort) writes it back.
pub fn table(q: &Quiver, params: &ParamSet, bound: &DimVector) -> qsr_core::Result<SigmaTable> {
    let Some(dir) = std::env::var_os(ENV).filter(|d| !d.is_empty()).map(PathBuf::from) else {
        return SigmaTable::build(q, params, bound);
    };
    let key = key(q, params, bound);
    let path = path_for(&dir, &key);
    if let Some(snap) = fs::read(&path).ok().and_then(|b| decode(&key, &b)) {
        if let Ok(t) = SigmaTable::from_snapshot(q, params, bound, snap) {
            return Ok(t);
        }
    }
    let t = SigmaTable::build(q, params, bound)?;
    let _ = fs::create_dir_all(&dir).and_then(|_| {
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        fs::write(&tmp, encode(&key, &t.snapshot()))?;
        fs::rename(&tmp, &path)
    });
    Ok(t)
}
