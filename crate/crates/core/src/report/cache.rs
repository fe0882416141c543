//! Line-oriented on-disk cache of slices, ideals, syzygy bases and block
//! tables.
//!
//! ```text
//! GWPSKIT v1 ideal 2,3,3,4 9c1e...
//! 6 0 0 0
//! ...
//! gen 0 12 1 11
//! ```

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};
use tempfile::NamedTempFile;

use crate::error::{Error, Result};
use crate::lattice::{DegreeSlice, LatticePoint, Shift};
use crate::resolution::{SyzygyBasis, SyzygyElement};
use crate::toric::{BinomialGenerator, ToricIdeal};
use crate::wps::WeightedSpace;
use crate::ARTIFACT_VERSION;

pub const KIND_SLICE: &str = "slice";
pub const KIND_IDEAL: &str = "ideal";
pub const KIND_SYZYGIES: &str = "syzygies";
pub const KIND_BLOCKS: &str = "blocks";

fn weights_key(space: &WeightedSpace) -> String {
    space.weights().map(|w| w.to_string()).join(",")
}

/// Key of a cache entry: hash of the weights, artifact version and kind.
pub fn fingerprint(kind: &str, space: &WeightedSpace) -> String {
    let mut h = Sha256::new();
    h.update(format!("{}|{}|{}", weights_key(space), ARTIFACT_VERSION, kind).as_bytes());
    h.finalize().iter().take(8).map(|b| format!("{b:02x}")).collect()
}

pub fn header(kind: &str, space: &WeightedSpace) -> String {
    format!("GWPSKIT {ARTIFACT_VERSION} {kind} {} {}", weights_key(space), fingerprint(kind, space))
}

#[derive(Debug, Clone)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir).map_err(|e| Error::Cache(format!("{}: {e}", dir.display())))?;
        Ok(Self { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path(&self, kind: &str, space: &WeightedSpace) -> PathBuf {
        let [a, b, c, d] = space.weights();
        self.dir.join(format!("{kind}-{a}_{b}_{c}_{d}-{}.txt", fingerprint(kind, space)))
    }

    /// Payload of an entry, `None` if absent.
    pub fn read(&self, kind: &str, space: &WeightedSpace) -> Result<Option<String>> {
        let path = self.path(kind, space);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(Error::Cache(format!("{}: {e}", path.display()))),
        };
        let (head, body) = text.split_once('\n').unwrap_or((&text, ""));
        if head != header(kind, space) {
            return Err(Error::Cache(format!("{}: unexpected header {head:?}", path.display())));
        }
        Ok(Some(body.to_string()))
    }

    /// Writes an entry atomically (temporary file, then rename).
    pub fn write(&self, kind: &str, space: &WeightedSpace, payload: &str) -> Result<PathBuf> {
        let path = self.path(kind, space);
        let io = |e: std::io::Error| Error::Cache(format!("{}: {e}", path.display()));
        let mut tmp = NamedTempFile::new_in(&self.dir).map_err(io)?;
        writeln!(tmp, "{}", header(kind, space)).map_err(io)?;
        tmp.write_all(payload.as_bytes()).map_err(io)?;
        tmp.persist(&path).map_err(|e| io(e.error))?;
        Ok(path)
    }

    pub fn load_ideal(&self, space: &WeightedSpace) -> Result<Option<ToricIdeal>> {
        self.read(KIND_IDEAL, space)?.map(|p| parse_ideal(space, &p)).transpose()
    }

    pub fn store_ideal(&self, ideal: &ToricIdeal) -> Result<PathBuf> {
        self.write(KIND_IDEAL, ideal.space(), &serialize_ideal(ideal))
    }

    pub fn load_syzygies(&self, space: &WeightedSpace) -> Result<Option<SyzygyBasis>> {
        self.read(KIND_SYZYGIES, space)?.map(|p| parse_syzygies(&p)).transpose()
    }

    pub fn store_syzygies(&self, space: &WeightedSpace, syz: &SyzygyBasis) -> Result<PathBuf> {
        self.write(KIND_SYZYGIES, space, &serialize_syzygies(syz))
    }

    pub fn load_blocks(&self, space: &WeightedSpace) -> Result<Option<Vec<(Shift, usize)>>> {
        self.read(KIND_BLOCKS, space)?.map(|p| parse_blocks(&p)).transpose()
    }

    pub fn store_blocks(&self, space: &WeightedSpace, blocks: &[(Shift, usize)]) -> Result<PathBuf> {
        self.write(KIND_BLOCKS, space, &serialize_blocks(blocks))
    }
}

fn malformed(line: &str) -> Error {
    Error::Cache(format!("malformed record {line:?}"))
}

fn numbers<T: std::str::FromStr>(fields: &str, n: usize, line: &str) -> Result<Vec<T>> {
    let v: Vec<T> = fields
        .split_whitespace()
        .map(|x| x.parse().map_err(|_| malformed(line)))
        .collect::<Result<_>>()?;
    if v.len() != n {
        return Err(malformed(line));
    }
    Ok(v)
}

fn point_line(p: &LatticePoint) -> String {
    let [a, b, c, d] = p.0;
    format!("{a} {b} {c} {d}")
}

pub fn serialize_slice(slice: &DegreeSlice) -> String {
    slice.points().iter().map(|p| point_line(p) + "\n").collect()
}

fn parse_points<'a>(lines: impl Iterator<Item = &'a str>) -> Result<Vec<LatticePoint>> {
    lines
        .map(|line| {
            let v: Vec<u32> = numbers(line, 4, line)?;
            Ok(LatticePoint([v[0], v[1], v[2], v[3]]))
        })
        .collect()
}

/// Reads a slice back; the points must be listed in canonical order.
pub fn parse_slice(space: &WeightedSpace, payload: &str) -> Result<DegreeSlice> {
    slice_from(space, parse_points(payload.lines().filter(|l| !l.is_empty()))?)
}

fn slice_from(space: &WeightedSpace, points: Vec<LatticePoint>) -> Result<DegreeSlice> {
    let degree = points.first().map_or(0, |p| space.degree(p)) as u32;
    if points.iter().any(|p| space.degree(p) != degree as u64) {
        return Err(Error::Cache("slice points have different degrees".into()));
    }
    let slice = DegreeSlice::from_points(degree, points.clone());
    if slice.points() != points.as_slice() {
        return Err(Error::Cache("slice points are not in canonical order".into()));
    }
    Ok(slice)
}

pub fn serialize_ideal(ideal: &ToricIdeal) -> String {
    let mut out = serialize_slice(ideal.slice());
    for g in ideal.generators() {
        out += &format!("gen {} {} {} {}\n", g.lhs.0, g.lhs.1, g.rhs.0, g.rhs.1);
    }
    out
}

pub fn parse_ideal(space: &WeightedSpace, payload: &str) -> Result<ToricIdeal> {
    let lines: Vec<&str> = payload.lines().filter(|l| !l.is_empty()).collect();
    let (gen_lines, point_lines): (Vec<&str>, Vec<&str>) = lines.iter().partition(|l| l.starts_with("gen "));
    let slice = slice_from(space, parse_points(point_lines.into_iter())?)?;
    let generators = gen_lines
        .into_iter()
        .map(|line| {
            let v: Vec<usize> = numbers(&line[4..], 4, line)?;
            if v.iter().any(|&i| i >= slice.len()) {
                return Err(malformed(line));
            }
            Ok(BinomialGenerator {
                lhs: (v[0], v[1]),
                rhs: (v[2], v[3]),
                multidegree: slice[v[0]].add(&slice[v[1]]),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    ToricIdeal::from_parts(*space, slice, generators)
}

pub fn serialize_syzygies(syz: &SyzygyBasis) -> String {
    let mut out = String::new();
    for s in syz.elements() {
        out += &format!("syz {} :", point_line(&s.multidegree));
        for (i, k, c) in &s.terms {
            out += &format!(" ({i},{k},{c})");
        }
        out.push('\n');
    }
    out
}

pub fn parse_syzygies(payload: &str) -> Result<SyzygyBasis> {
    let elements = payload
        .lines()
        .filter(|l| !l.is_empty())
        .map(|line| {
            let rest = line.strip_prefix("syz ").ok_or_else(|| malformed(line))?;
            let (deg, terms) = rest.split_once(':').ok_or_else(|| malformed(line))?;
            let d: Vec<u32> = numbers(deg, 4, line)?;
            let terms = terms
                .split_whitespace()
                .map(|t| {
                    let inner = t.strip_prefix('(').and_then(|t| t.strip_suffix(')')).ok_or_else(|| malformed(line))?;
                    let v: Vec<&str> = inner.split(',').collect();
                    if v.len() != 3 {
                        return Err(malformed(line));
                    }
                    let parse = |s: &str| s.parse::<i64>().map_err(|_| malformed(line));
                    Ok((parse(v[0])? as usize, parse(v[1])? as usize, parse(v[2])?))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(SyzygyElement { multidegree: LatticePoint([d[0], d[1], d[2], d[3]]), terms })
        })
        .collect::<Result<Vec<_>>>()?;
    SyzygyBasis::from_elements(elements)
}

pub fn serialize_blocks(blocks: &[(Shift, usize)]) -> String {
    blocks
        .iter()
        .map(|(s, dim)| {
            let [a, b, c, d] = s.0;
            format!("blk {a} {b} {c} {d} {dim}\n")
        })
        .collect()
}

pub fn parse_blocks(payload: &str) -> Result<Vec<(Shift, usize)>> {
    payload
        .lines()
        .filter(|l| !l.is_empty())
        .map(|line| {
            let rest = line.strip_prefix("blk ").ok_or_else(|| malformed(line))?;
            let v: Vec<i64> = numbers(rest, 5, line)?;
            if v[4] < 0 {
                return Err(malformed(line));
            }
            Ok((Shift([v[0], v[1], v[2], v[3]]), v[4] as usize))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Primes;
    use crate::{lattice, resolution, toric};

    #[test]
    fn header_shape() {
        let space = WeightedSpace::new([2, 3, 3, 4]).unwrap();
        let h = header(KIND_IDEAL, &space);
        let fields: Vec<&str> = h.split(' ').collect();
        assert_eq!(&fields[..4], &["GWPSKIT", "v1", "ideal", "2,3,3,4"]);
        assert_eq!(fields[4].len(), 16);
        assert_ne!(fingerprint(KIND_IDEAL, &space), fingerprint(KIND_SYZYGIES, &space));
    }

    #[test]
    fn round_trips() {
        let space = WeightedSpace::new([2, 3, 3, 4]).unwrap();
        let slice = lattice::slice(&space, 12);
        assert_eq!(parse_slice(&space, &serialize_slice(&slice)).unwrap(), slice);
        let ideal = toric::quadric_generators(&space).unwrap();
        assert_eq!(parse_ideal(&space, &serialize_ideal(&ideal)).unwrap(), ideal);
        let syz = resolution::linear_syzygies(&ideal, &Primes::default()).unwrap();
        let text = serialize_syzygies(&syz);
        assert_eq!(parse_syzygies(&text).unwrap(), syz);
        let blocks = vec![(Shift([-1, 2, 0, -3]), 4), (Shift([0, 0, 0, 0]), 0)];
        assert_eq!(parse_blocks(&serialize_blocks(&blocks)).unwrap(), blocks);
    }

    #[test]
    fn files_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path()).unwrap();
        let space = WeightedSpace::new([1, 3, 4, 4]).unwrap();
        assert_eq!(cache.load_ideal(&space).unwrap(), None);
        let ideal = toric::quadric_generators(&space).unwrap();
        let path = cache.store_ideal(&ideal).unwrap();
        assert!(fs::read_to_string(&path).unwrap().starts_with("GWPSKIT v1 ideal 1,3,4,4 "));
        assert_eq!(cache.load_ideal(&space).unwrap(), Some(ideal));
    }

    #[test]
    fn rejects_foreign_header() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path()).unwrap();
        let space = WeightedSpace::new([1, 3, 4, 4]).unwrap();
        fs::write(cache.path(KIND_BLOCKS, &space), "GWPSKIT v0 blocks 1,3,4,4 00\n").unwrap();
        assert!(matches!(cache.load_blocks(&space), Err(Error::Cache(_))));
    }

    #[test]
    fn rejects_garbage_records() {
        assert!(parse_blocks("blk 1 2 3\n").is_err());
        assert!(parse_syzygies("syz 1 2 3 4 : (1,2)\n").is_err());
        let space = WeightedSpace::new([1, 1, 1, 1]).unwrap();
        assert!(parse_slice(&space, "0 0 0 1\n1 0 0 0\n").is_err());
    }
}
