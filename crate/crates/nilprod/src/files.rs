//! On-disk formats: orbit-union bitsets and packed matrix indices.
//!
//! Bitset file layout, all integers little-endian:
//! `b"NILPBITS"`, `u32` version, `u32` spec length, spec bytes (UTF-8), `u64` bit length, then
//! `ceil(bits / 64)` `u64` words.

use std::io::{self, BufRead, Read, Write};

use nilprod_core::BitSet;
use thiserror::Error;

pub const BITSET_MAGIC: &[u8; 8] = b"NILPBITS";
pub const BITSET_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum FileError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("not a bitset file")]
    BadMagic,
    #[error("unsupported bitset file version {0}")]
    BadVersion(u32),
    #[error("ring spec in header is not UTF-8")]
    BadSpec,
    #[error("bitset file truncated or has trailing bytes")]
    BadLength,
    #[error("line {line}: {text:?} is not an unsigned integer")]
    BadLine { line: usize, text: String },
}

fn read_u32(r: &mut impl Read) -> io::Result<u32> {
    let mut b = [0; 4];
    r.read_exact(&mut b)?;
    Ok(u32::from_le_bytes(b))
}

fn read_u64(r: &mut impl Read) -> io::Result<u64> {
    let mut b = [0; 8];
    r.read_exact(&mut b)?;
    Ok(u64::from_le_bytes(b))
}

pub fn write_bitset(w: &mut impl Write, spec: &str, set: &BitSet) -> io::Result<()> {
    w.write_all(BITSET_MAGIC)?;
    w.write_all(&BITSET_VERSION.to_le_bytes())?;
    w.write_all(&(spec.len() as u32).to_le_bytes())?;
    w.write_all(spec.as_bytes())?;
    w.write_all(&set.len().to_le_bytes())?;
    for word in set.words() {
        w.write_all(&word.to_le_bytes())?;
    }
    Ok(())
}

/// Returns the ring spec string from the header and the set.
pub fn read_bitset(r: &mut impl Read) -> Result<(String, BitSet), FileError> {
    let truncated = |e: io::Error| match e.kind() {
        io::ErrorKind::UnexpectedEof => FileError::BadLength,
        _ => FileError::Io(e),
    };
    let mut magic = [0; 8];
    r.read_exact(&mut magic).map_err(truncated)?;
    if &magic != BITSET_MAGIC {
        return Err(FileError::BadMagic);
    }
    let version = read_u32(r).map_err(truncated)?;
    if version != BITSET_VERSION {
        return Err(FileError::BadVersion(version));
    }
    let spec_len = read_u32(r).map_err(truncated)? as usize;
    let mut spec = vec![0; spec_len];
    r.read_exact(&mut spec).map_err(truncated)?;
    let spec = String::from_utf8(spec).map_err(|_| FileError::BadSpec)?;
    let bits = read_u64(r).map_err(truncated)?;
    let words = (0..bits.div_ceil(64))
        .map(|_| read_u64(r))
        .collect::<io::Result<Vec<_>>>()
        .map_err(truncated)?;
    if r.read(&mut [0])? != 0 {
        return Err(FileError::BadLength);
    }
    let set = BitSet::from_words(bits, words).ok_or(FileError::BadLength)?;
    Ok((spec, set))
}

pub fn write_packed_binary(w: &mut impl Write, indices: impl IntoIterator<Item = u64>) -> io::Result<()> {
    for i in indices {
        w.write_all(&i.to_le_bytes())?;
    }
    Ok(())
}

pub fn read_packed_binary(r: &mut impl Read) -> Result<Vec<u64>, FileError> {
    let mut bytes = Vec::new();
    r.read_to_end(&mut bytes)?;
    if bytes.len() % 8 != 0 {
        return Err(FileError::BadLength);
    }
    Ok(bytes
        .chunks_exact(8)
        .map(|c| u64::from_le_bytes(c.try_into().expect("chunk of 8")))
        .collect())
}

pub fn write_packed_text(w: &mut impl Write, indices: impl IntoIterator<Item = u64>) -> io::Result<()> {
    for i in indices {
        writeln!(w, "{i}")?;
    }
    Ok(())
}

/// One decimal index per line; blank lines are skipped.
pub fn read_packed_text(r: impl BufRead) -> Result<Vec<u64>, FileError> {
    let mut out = Vec::new();
    for (k, line) in r.lines().enumerate() {
        let line = line?;
        let t = line.trim();
        if t.is_empty() {
            continue;
        }
        out.push(t.parse().map_err(|_| FileError::BadLine {
            line: k + 1,
            text: t.to_string(),
        })?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bitset_round_trip() {
        let mut set = BitSet::new(6561);
        for i in [0, 5, 64, 897, 6560] {
            set.insert(i);
        }
        let mut buf = Vec::new();
        write_bitset(&mut buf, "zmod:3^2", &set).unwrap();
        assert_eq!(buf.len(), 8 + 4 + 4 + 8 + 8 + 8 * 103);
        let (spec, back) = read_bitset(&mut buf.as_slice()).unwrap();
        assert_eq!(spec, "zmod:3^2");
        assert_eq!(back, set);
    }

    #[test]
    fn bitset_rejects_damage() {
        let set = BitSet::new(100);
        let mut buf = Vec::new();
        write_bitset(&mut buf, "zmod:3^1", &set).unwrap();
        let mut bad = buf.clone();
        bad[0] = b'X';
        assert!(matches!(read_bitset(&mut bad.as_slice()), Err(FileError::BadMagic)));
        let short = &buf[..buf.len() - 1];
        assert!(matches!(read_bitset(&mut &short[..]), Err(FileError::BadLength)));
        let mut long = buf.clone();
        long.push(0);
        assert!(matches!(read_bitset(&mut long.as_slice()), Err(FileError::BadLength)));
        let mut v2 = buf;
        v2[8] = 2;
        assert!(matches!(read_bitset(&mut v2.as_slice()), Err(FileError::BadVersion(2))));
    }

    #[test]
    fn packed_round_trips() {
        let idx = vec![0u64, 7, 6560, u64::MAX];
        let mut bin = Vec::new();
        write_packed_binary(&mut bin, idx.iter().copied()).unwrap();
        assert_eq!(read_packed_binary(&mut bin.as_slice()).unwrap(), idx);
        let mut txt = Vec::new();
        write_packed_text(&mut txt, idx.iter().copied()).unwrap();
        assert_eq!(read_packed_text(txt.as_slice()).unwrap(), idx);
        assert!(matches!(
            read_packed_text("1\nx\n".as_bytes()),
            Err(FileError::BadLine { line: 2, .. })
        ));
        assert!(read_packed_binary(&mut [0u8; 7].as_slice()).is_err());
    }
}
