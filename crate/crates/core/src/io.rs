//! Graph files: plain edge lists and the binary CSR cache.
//!
//! Binary layout, all integers little-endian `u64`:
//!
//! ```text
//! b"KPE1" | vertex_count | edge_count | offsets[vertex_count + 1] | targets[edge_count]
//! ```

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Read, Write};
use std::path::Path;

use thiserror::Error;

use crate::graph::{
    build_graph_with, parse_edge_list, CsrError, Graph, IngestOptions, ParseError, VertexId,
};

pub const CSR_MAGIC: &[u8; 4] = b"KPE1";

#[derive(Debug, Error)]
pub enum GraphFileError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("not a binary CSR file (bad magic)")]
    BadMagic,
    #[error("binary CSR value {value} does not fit {what}")]
    Overflow { what: &'static str, value: u64 },
    #[error("malformed CSR: {0}")]
    Csr(#[from] CsrError),
}

pub fn write_csr<W: Write>(g: &Graph, mut w: W) -> io::Result<()> {
    w.write_all(CSR_MAGIC)?;
    w.write_all(&(g.vertex_count() as u64).to_le_bytes())?;
    w.write_all(&(g.edge_count() as u64).to_le_bytes())?;
    for &o in g.offsets() {
        w.write_all(&(o as u64).to_le_bytes())?;
    }
    for &t in g.targets() {
        w.write_all(&u64::from(t.0).to_le_bytes())?;
    }
    w.flush()
}

fn read_u64<R: Read>(r: &mut R) -> io::Result<u64> {
    let mut buf = [0u8; 8];
    r.read_exact(&mut buf)?;
    Ok(u64::from_le_bytes(buf))
}

fn to_usize(value: u64, what: &'static str) -> Result<usize, GraphFileError> {
    usize::try_from(value).map_err(|_| GraphFileError::Overflow { what, value })
}

pub fn read_csr<R: Read>(mut r: R) -> Result<Graph, GraphFileError> {
    let mut magic = [0u8; 4];
    r.read_exact(&mut magic)?;
    if &magic != CSR_MAGIC {
        return Err(GraphFileError::BadMagic);
    }
    let n = to_usize(read_u64(&mut r)?, "vertex count")?;
    let m = to_usize(read_u64(&mut r)?, "edge count")?;
    let mut offsets = Vec::with_capacity(n.saturating_add(1).min(1 << 24));
    for _ in 0..=n {
        offsets.push(to_usize(read_u64(&mut r)?, "offset")?);
    }
    let mut targets = Vec::with_capacity(m.min(1 << 24));
    for _ in 0..m {
        let value = read_u64(&mut r)?;
        let id = u32::try_from(value).map_err(|_| GraphFileError::Overflow {
            what: "vertex id",
            value,
        })?;
        targets.push(VertexId(id));
    }
    Ok(Graph::from_csr(n, offsets, targets)?)
}

pub fn save_csr(g: &Graph, path: impl AsRef<Path>) -> io::Result<()> {
    write_csr(g, BufWriter::new(File::create(path)?))
}

/// Writes one `from to` line per edge.
pub fn write_edge_list<W: Write>(g: &Graph, mut w: W) -> io::Result<()> {
    for (a, b) in g.edges() {
        writeln!(w, "{a} {b}")?;
    }
    w.flush()
}

/// Loads either format, telling them apart by the magic bytes.
pub fn load_graph(path: impl AsRef<Path>, opts: IngestOptions) -> Result<Graph, GraphFileError> {
    let mut file = BufReader::new(File::open(path)?);
    let mut head = [0u8; 4];
    let mut got = 0;
    while got < head.len() {
        let n = file.read(&mut head[got..])?;
        if n == 0 {
            break;
        }
        got += n;
    }
    let chained = head[..got].chain(file);
    if got == 4 && &head == CSR_MAGIC {
        read_csr(chained)
    } else {
        let edges = parse_edge_list(BufReader::new(chained))?;
        Ok(build_graph_with(&edges, opts))
    }
}
