//! Binary limb files: the magic `MDIV1`, a little-endian `u64` word count,
//! then that many little-endian `u64` words, least significant first.

use std::io::{self, Read, Write};
use std::path::Path;

use crate::biguint::BigUint;

pub const MAGIC: &[u8; 5] = b"MDIV1";

pub fn write_limbs<W: Write>(mut out: W, x: &BigUint) -> io::Result<()> {
    out.write_all(MAGIC)?;
    out.write_all(&(x.words().len() as u64).to_le_bytes())?;
    for w in x.words() {
        out.write_all(&w.to_le_bytes())?;
    }
    out.flush()
}

pub fn read_limbs<R: Read>(mut input: R) -> io::Result<BigUint> {
    let mut magic = [0u8; 5];
    input.read_exact(&mut magic)?;
    if &magic != MAGIC {
        return Err(io::Error::new(
            io::ErrorKind::InvalidData,
            "bad limb file magic",
        ));
    }
    let mut buf = [0u8; 8];
    input.read_exact(&mut buf)?;
    let n = u64::from_le_bytes(buf);
    let n = usize::try_from(n)
        .map_err(|_| io::Error::new(io::ErrorKind::InvalidData, "word count too large"))?;
    let mut words = Vec::new();
    for _ in 0..n {
        input.read_exact(&mut buf)?;
        words.push(u64::from_le_bytes(buf));
    }
    let mut rest = Vec::new();
    input.read_to_end(&mut rest)?;
    if !rest.is_empty() {
        return Err(io::Error::new(
            io::ErrorKind::InvalidData,
            "trailing bytes after limbs",
        ));
    }
    Ok(BigUint::from_words(words))
}

pub fn save(path: &Path, x: &BigUint) -> io::Result<()> {
    write_limbs(io::BufWriter::new(std::fs::File::create(path)?), x)
}

pub fn load(path: &Path) -> io::Result<BigUint> {
    read_limbs(io::BufReader::new(std::fs::File::open(path)?))
}
