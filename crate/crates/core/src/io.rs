//! Edge-list text ingestion and the binary CSR dump format.
//!
//! Text input holds one edge per line as two whitespace-separated
//! nonnegative integer ids. Blank lines and lines starting with `#` are
//! skipped. Ids are compacted to `0..n` in order of first appearance.
//!
//! The binary format is little-endian throughout:
//!
//! ```text
//! magic      8 bytes  "DEGENCSR"
//! version    u32      1
//! flags      u32      bit 0: original-id table present
//! n          u64
//! m          u64      undirected edges
//! offsets    (n+1) x u64
//! neighbors  2m x u32
//! ids        n x u64  (only when flag bit 0 is set)
//! ```

use std::collections::HashMap;
use std::io::{BufRead, Read, Write};

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const CSR_MAGIC: [u8; 8] = *b"DEGENCSR";
pub const CSR_VERSION: u32 = 1;
const FLAG_ORIGINAL_IDS: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LoadOptions {
    /// Insert the reverse of every edge. When off, the input must already
    /// list both directions of every edge.
    pub symmetrize: bool,
    /// Drop `v v` lines. When off, a self-loop is a parse error because the
    /// graph model has none; the node is still registered either way.
    pub drop_self_loops: bool,
    /// Merge parallel edges.
    pub dedup: bool,
    /// Largest accepted raw node id.
    pub max_node_id: u64,
}

impl Default for LoadOptions {
    fn default() -> Self {
        LoadOptions {
            symmetrize: true,
            drop_self_loops: true,
            dedup: true,
            max_node_id: u64::MAX,
        }
    }
}

pub fn load_edge_list<R: BufRead>(source: R, options: &LoadOptions) -> Result<Graph> {
    let mut index: HashMap<u64, u32> = HashMap::new();
    let mut ids: Vec<u64> = Vec::new();
    let mut arcs: Vec<(u32, u32)> = Vec::new();

    for (lineno, line) in source.lines().enumerate() {
        let line = line?;
        let lineno = lineno + 1;
        let body = line.trim();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        let mut tokens = body.split_whitespace();
        let (Some(a), Some(b), None) = (tokens.next(), tokens.next(), tokens.next()) else {
            return Err(Error::Parse {
                line: lineno,
                message: format!("expected two node ids, found {body:?}"),
            });
        };
        let mut endpoint = |token: &str| -> Result<u32> {
            let id: u64 = token.parse().map_err(|_| Error::Parse {
                line: lineno,
                message: format!("invalid node id {token:?}"),
            })?;
            if id > options.max_node_id {
                return Err(Error::Capacity {
                    id,
                    max: options.max_node_id,
                });
            }
            if let Some(&compact) = index.get(&id) {
                return Ok(compact);
            }
            let compact = u32::try_from(ids.len()).map_err(|_| Error::Capacity {
                id,
                max: u32::MAX as u64,
            })?;
            index.insert(id, compact);
            ids.push(id);
            Ok(compact)
        };
        let u = endpoint(a)?;
        let v = endpoint(b)?;

        if u == v {
            if options.drop_self_loops {
                continue;
            }
            return Err(Error::Parse {
                line: lineno,
                message: format!("self-loop on node {a}"),
            });
        }
        arcs.push((u, v));
        if options.symmetrize {
            arcs.push((v, u));
        }
    }

    let graph = Graph::from_arcs(
        ids.len(),
        &arcs,
        options.dedup,
        !options.symmetrize || !options.dedup,
    )?;
    Ok(graph.with_original_ids(ids))
}

/// Writes each undirected edge once, as compacted ids.
pub fn write_edge_list<W: Write>(graph: &Graph, mut out: W) -> Result<()> {
    for v in 0..graph.node_count() {
        for u in graph.neighbors(v) {
            if v < u {
                writeln!(out, "{v} {u}")?;
            }
        }
    }
    out.flush()?;
    Ok(())
}

pub fn write_csr<W: Write>(graph: &Graph, mut out: W) -> Result<()> {
    let flags = if graph.original_ids().is_some() {
        FLAG_ORIGINAL_IDS
    } else {
        0
    };
    out.write_all(&CSR_MAGIC)?;
    out.write_all(&CSR_VERSION.to_le_bytes())?;
    out.write_all(&flags.to_le_bytes())?;
    out.write_all(&(graph.node_count() as u64).to_le_bytes())?;
    out.write_all(&(graph.edge_count() as u64).to_le_bytes())?;
    for &off in graph.offsets() {
        out.write_all(&(off as u64).to_le_bytes())?;
    }
    for &u in graph.neighbor_array() {
        out.write_all(&u.to_le_bytes())?;
    }
    if let Some(ids) = graph.original_ids() {
        for &id in ids {
            out.write_all(&id.to_le_bytes())?;
        }
    }
    out.flush()?;
    Ok(())
}

pub fn read_csr<R: Read>(mut input: R) -> Result<Graph> {
    let mut magic = [0u8; 8];
    input.read_exact(&mut magic)?;
    if magic != CSR_MAGIC {
        return Err(Error::Malformed("bad CSR magic bytes".into()));
    }
    let version = read_u32(&mut input)?;
    if version != CSR_VERSION {
        return Err(Error::Malformed(format!(
            "unsupported CSR version {version}"
        )));
    }
    let flags = read_u32(&mut input)?;
    let n = to_usize(read_u64(&mut input)?)?;
    let m = to_usize(read_u64(&mut input)?)?;

    let mut offsets = Vec::with_capacity(n + 1);
    for _ in 0..=n {
        offsets.push(to_usize(read_u64(&mut input)?)?);
    }
    if offsets.last() != Some(&(2 * m)) {
        return Err(Error::Malformed("final offset does not equal 2m".into()));
    }
    let mut bytes = vec![0u8; 8 * m];
    input.read_exact(&mut bytes)?;
    let neighbors = bytes
        .chunks_exact(4)
        .map(|c| u32::from_le_bytes(c.try_into().unwrap()))
        .collect();

    let graph = Graph::from_csr(offsets, neighbors)?;
    if flags & FLAG_ORIGINAL_IDS != 0 {
        let mut ids = Vec::with_capacity(n);
        for _ in 0..n {
            ids.push(read_u64(&mut input)?);
        }
        Ok(graph.with_original_ids(ids))
    } else {
        Ok(graph)
    }
}

/// Loads either format, detected by the CSR magic bytes.
pub fn load_auto<R: BufRead>(mut source: R, options: &LoadOptions) -> Result<Graph> {
    if source.fill_buf()?.starts_with(&CSR_MAGIC) {
        read_csr(source)
    } else {
        load_edge_list(source, options)
    }
}

fn read_u32<R: Read>(input: &mut R) -> Result<u32> {
    let mut buf = [0u8; 4];
    input.read_exact(&mut buf)?;
    Ok(u32::from_le_bytes(buf))
}

fn read_u64<R: Read>(input: &mut R) -> Result<u64> {
    let mut buf = [0u8; 8];
    input.read_exact(&mut buf)?;
    Ok(u64::from_le_bytes(buf))
}

fn to_usize(x: u64) -> Result<usize> {
    usize::try_from(x).map_err(|_| Error::Capacity {
        id: x,
        max: usize::MAX as u64,
    })
}
