//! Plain-text artifact formats and ingestion of external square lists.
//!
//! Everything is written with LF line endings and Rust's shortest
//! round-trip float formatting, so equal inputs give equal bytes.

use std::collections::BTreeSet;
use std::fs;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::enumerate::{enumerate_with, EnumerateOptions, EnumerationReport};
use crate::error::{Error, Result};
use crate::family::FamilySpec;
use crate::parity::{PatternTally, TallyMode};
use crate::square::Square;
use crate::stats::{ProjectedPoint, ProjectionSet};
use crate::symmetry::frenicle_form;

pub const SQUARE_FORMAT: &str = "v1";

/// Header of a square file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareHeader {
    pub order: usize,
    pub family: String,
    pub count: usize,
}

impl SquareHeader {
    pub fn line(&self) -> String {
        format!("order={},family={},count={},format={SQUARE_FORMAT}", self.order, self.family, self.count)
    }

    fn parse(path: &Path, text: &str) -> Result<Self> {
        let err = |msg: String| Error::Parse { path: path.to_path_buf(), line: 1, msg };
        let (mut order, mut family, mut count, mut format) = (None, None, None, None);
        for field in text.split(',') {
            let (key, value) = field.split_once('=').ok_or_else(|| err(format!("header field {field:?} lacks '='")))?;
            let value = value.trim();
            match key.trim() {
                "order" => order = Some(value.parse::<usize>().map_err(|_| err(format!("bad order {value:?}")))?),
                "family" => family = Some(value.to_string()),
                "count" => count = Some(value.parse::<usize>().map_err(|_| err(format!("bad count {value:?}")))?),
                "format" => format = Some(value.to_string()),
                other => return Err(err(format!("unknown header key {other:?}"))),
            }
        }
        match format.as_deref() {
            Some(SQUARE_FORMAT) => {}
            Some(other) => return Err(err(format!("unsupported format {other:?}"))),
            None => return Err(err("header lacks format".into())),
        }
        Ok(SquareHeader {
            order: order.ok_or_else(|| err("header lacks order".into()))?,
            family: family.ok_or_else(|| err("header lacks family".into()))?,
            count: count.ok_or_else(|| err("header lacks count".into()))?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareFile {
    pub header: SquareHeader,
    pub squares: Vec<Square>,
}

fn create(path: &Path) -> Result<BufWriter<fs::File>> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    fs::File::create(path).map(BufWriter::new).map_err(|e| Error::io(path, e))
}

fn write_all(path: &Path, bytes: &[u8]) -> Result<()> {
    let mut w = create(path)?;
    w.write_all(bytes).and_then(|_| w.flush()).map_err(|e| Error::io(path, e))
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

fn square_line(sq: &Square, out: &mut String) {
    for (i, v) in sq.cells().iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&v.to_string());
    }
    out.push('\n');
}

/// Serializes squares of one order under a v1 header.
pub fn format_squares(family: &str, squares: &[Square]) -> Result<String> {
    let order = squares.first().map_or(0, Square::order);
    if let Some(bad) = squares.iter().find(|s| s.order() != order) {
        return Err(Error::MixedOrder { expected: order, found: bad.order() });
    }
    let header = SquareHeader { order, family: family.to_string(), count: squares.len() };
    let mut out = header.line();
    out.push('\n');
    for sq in squares {
        square_line(sq, &mut out);
    }
    Ok(out)
}

pub fn write_squares(path: impl AsRef<Path>, family: &str, squares: &[Square]) -> Result<()> {
    let path = path.as_ref();
    let order = squares.first().map_or(0, Square::order);
    if let Some(bad) = squares.iter().find(|s| s.order() != order) {
        return Err(Error::MixedOrder { expected: order, found: bad.order() });
    }
    let header = SquareHeader { order, family: family.to_string(), count: squares.len() };
    let mut w = create(path)?;
    let mut line = String::with_capacity(4 * order * order + 1);
    let mut put = |text: &str| w.write_all(text.as_bytes()).map_err(|e| Error::io(path, e));
    put(&header.line())?;
    put("\n")?;
    for sq in squares {
        line.clear();
        square_line(sq, &mut line);
        put(&line)?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

pub fn read_squares(path: impl AsRef<Path>) -> Result<SquareFile> {
    let path = path.as_ref();
    let file = fs::File::open(path).map_err(|e| Error::io(path, e))?;
    let mut lines = BufReader::new(file).lines();
    let first = match lines.next() {
        Some(line) => line.map_err(|e| Error::io(path, e))?,
        None => return Err(Error::Parse { path: path.to_path_buf(), line: 1, msg: "empty file".into() }),
    };
    let header = SquareHeader::parse(path, first.trim_end_matches('\r'))?;
    let nn = header.order * header.order;
    let mut squares = Vec::with_capacity(header.count.min(1 << 20));
    for (i, line) in lines.enumerate() {
        let number = i + 2;
        let line = line.map_err(|e| Error::io(path, e))?;
        let line = line.trim_end_matches('\r');
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| Error::Parse { path: path.to_path_buf(), line: number, msg };
        let cells = line
            .split(',')
            .map(|t| t.trim().parse::<u8>().map_err(|_| err(format!("bad value {t:?}"))))
            .collect::<Result<Vec<u8>>>()?;
        if cells.len() != nn {
            return Err(err(format!("{} values, expected {nn}", cells.len())));
        }
        squares.push(Square::new(header.order, cells).map_err(|e| err(e.to_string()))?);
    }
    if squares.len() != header.count {
        return Err(Error::Integrity {
            path: path.to_path_buf(),
            msg: format!("header declares {} squares, file holds {}", header.count, squares.len()),
        });
    }
    Ok(SquareFile { header, squares })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reject {
    pub line: usize,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IngestReport {
    pub source: PathBuf,
    /// Records seen after the header (a record is one square).
    pub total: usize,
    pub parsed: usize,
    pub rejected: Vec<Reject>,
    /// Distinct Frénicle forms among the parsed squares.
    pub distinct: usize,
}

/// Reads an external square list, keeps the squares that belong to `spec`,
/// and returns their distinct Frénicle forms in ascending order.
///
/// A record is either one line of n² numbers or n consecutive lines of n
/// numbers; numbers may be separated by commas, semicolons or whitespace. A
/// v1 header line is skipped.
pub fn ingest_external(path: impl AsRef<Path>, spec: &FamilySpec) -> Result<(Vec<Square>, IngestReport)> {
    let path = path.as_ref();
    let text = read_text(path)?;
    let n = spec.order;
    let nn = n * n;
    let mut records: Vec<(usize, std::result::Result<Vec<u8>, String>)> = Vec::new();
    let mut pending: Vec<u8> = Vec::new();
    let mut pending_start = 0;
    for (i, raw) in text.lines().enumerate() {
        let number = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') || (number == 1 && line.starts_with("order=")) {
            continue;
        }
        let tokens: Vec<&str> =
            line.split(|c: char| c == ',' || c == ';' || c.is_whitespace()).filter(|t| !t.is_empty()).collect();
        let values: std::result::Result<Vec<u8>, String> =
            tokens.iter().map(|t| t.parse::<u8>().map_err(|_| format!("bad value {t:?}"))).collect();
        let values = match values {
            Ok(v) => v,
            Err(reason) => {
                if !pending.is_empty() {
                    records.push((pending_start, Err("incomplete grid".into())));
                    pending.clear();
                }
                records.push((number, Err(reason)));
                continue;
            }
        };
        if values.len() == nn && pending.is_empty() {
            records.push((number, Ok(values)));
        } else if values.len() == n {
            if pending.is_empty() {
                pending_start = number;
            }
            pending.extend(values);
            if pending.len() == nn {
                records.push((pending_start, Ok(std::mem::take(&mut pending))));
            }
        } else {
            if !pending.is_empty() {
                records.push((pending_start, Err("incomplete grid".into())));
                pending.clear();
            }
            records.push((number, Err(format!("{} values, expected {nn} or {n}", values.len()))));
        }
    }
    if !pending.is_empty() {
        records.push((pending_start, Err("incomplete grid".into())));
    }

    let mut rejected = Vec::new();
    let mut canon = BTreeSet::new();
    let mut parsed = 0;
    for (line, record) in &records {
        let checked = record.clone().and_then(|cells| {
            let sq = Square::new(n, cells).map_err(|e| e.to_string())?;
            if !spec.admits(&sq) {
                return Err(format!("not a {} square", spec.fingerprint()));
            }
            Ok(sq)
        });
        match checked {
            Ok(sq) => {
                parsed += 1;
                canon.insert(frenicle_form(&sq));
            }
            Err(reason) => rejected.push(Reject { line: *line, reason }),
        }
    }
    let total = records.len();
    if rejected.len() * 2 > total {
        return Err(Error::FormatMismatch { path: path.to_path_buf(), rejected: rejected.len(), total });
    }
    let squares: Vec<Square> = canon.into_iter().collect();
    let report = IngestReport { source: path.to_path_buf(), total, parsed, rejected, distinct: squares.len() };
    Ok((squares, report))
}

/// Serialized form of a [`PatternTally`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TallyDocument {
    pub mode: TallyMode,
    pub order: usize,
    pub family: Option<String>,
    pub total: u64,
    pub entries: Vec<TallyEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TallyEntry {
    pub pattern: String,
    pub count: u64,
}

impl From<&PatternTally> for TallyDocument {
    fn from(t: &PatternTally) -> Self {
        TallyDocument {
            mode: t.mode,
            order: t.order,
            family: t.family.clone(),
            total: t.total,
            entries: t.entries.iter().map(|(p, &c)| TallyEntry { pattern: p.clone(), count: c }).collect(),
        }
    }
}

impl TallyDocument {
    pub fn into_tally(self) -> PatternTally {
        PatternTally {
            mode: self.mode,
            order: self.order,
            family: self.family,
            total: self.total,
            entries: self.entries.into_iter().map(|e| (e.pattern, e.count)).collect(),
        }
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn write_json<T: Serialize + ?Sized>(path: impl AsRef<Path>, value: &T) -> Result<()> {
    write_all(path.as_ref(), to_json(value)?.as_bytes())
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: impl AsRef<Path>) -> Result<T> {
    let path = path.as_ref();
    serde_json::from_str(&read_text(path)?).map_err(|e| Error::Parse {
        path: path.to_path_buf(),
        line: e.line(),
        msg: e.to_string(),
    })
}

pub fn write_tally_json(path: impl AsRef<Path>, tally: &PatternTally) -> Result<()> {
    write_json(path, &TallyDocument::from(tally))
}

pub fn read_tally_json(path: impl AsRef<Path>) -> Result<PatternTally> {
    let path = path.as_ref();
    let doc: TallyDocument = read_json(path)?;
    let tally = doc.into_tally();
    let sum: u64 = tally.entries.values().sum();
    if sum != tally.total {
        return Err(Error::Integrity {
            path: path.to_path_buf(),
            msg: format!("entries sum to {sum}, total is {}", tally.total),
        });
    }
    Ok(tally)
}

pub fn format_tally_csv(tally: &PatternTally) -> String {
    let mut out = String::from("pattern,count\n");
    for (p, c) in &tally.entries {
        out.push_str(&format!("{p},{c}\n"));
    }
    out
}

pub fn write_tally_csv(path: impl AsRef<Path>, tally: &PatternTally) -> Result<()> {
    write_all(path.as_ref(), format_tally_csv(tally).as_bytes())
}

/// The CSV carries no metadata, so mode and order come from the caller.
pub fn read_tally_csv(path: impl AsRef<Path>, mode: TallyMode, order: usize) -> Result<PatternTally> {
    let path = path.as_ref();
    let text = read_text(path)?;
    let mut tally = PatternTally::new(mode, order);
    for (i, line) in text.lines().enumerate() {
        let err = |msg: String| Error::Parse { path: path.to_path_buf(), line: i + 1, msg };
        if i == 0 {
            if line != "pattern,count" {
                return Err(err(format!("unexpected header {line:?}")));
            }
            continue;
        }
        let (pattern, count) = line.split_once(',').ok_or_else(|| err("expected pattern,count".into()))?;
        crate::parity::parse_pattern(pattern, order).map_err(|e| err(e.to_string()))?;
        let count: u64 = count.parse().map_err(|_| err(format!("bad count {count:?}")))?;
        *tally.entries.entry(pattern.to_string()).or_insert(0) += count;
        tally.total += count;
    }
    Ok(tally)
}

pub fn format_projection_csv(set: &ProjectionSet) -> String {
    let mut out = String::from("pattern,label,axis1,axis2\n");
    for p in &set.points {
        out.push_str(&format!("{},{},{:?},{:?}\n", p.pattern, p.label, p.axis1, p.axis2));
    }
    out
}

pub fn write_projection_csv(path: impl AsRef<Path>, set: &ProjectionSet) -> Result<()> {
    write_all(path.as_ref(), format_projection_csv(set).as_bytes())
}

pub fn read_projection_csv(path: impl AsRef<Path>) -> Result<ProjectionSet> {
    let path = path.as_ref();
    let text = read_text(path)?;
    let mut points = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let err = |msg: String| Error::Parse { path: path.to_path_buf(), line: i + 1, msg };
        if i == 0 {
            if line != "pattern,label,axis1,axis2" {
                return Err(err(format!("unexpected header {line:?}")));
            }
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 4 {
            return Err(err(format!("{} fields, expected 4", fields.len())));
        }
        let num = |s: &str| s.parse::<f64>().map_err(|_| err(format!("bad number {s:?}")));
        points.push(ProjectedPoint {
            pattern: fields[0].to_string(),
            label: fields[1].to_string(),
            axis1: num(fields[2])?,
            axis2: num(fields[3])?,
        });
    }
    Ok(ProjectionSet { points })
}

/// File stem for a spec, e.g. `franklin-8_blocks-overlapping_bent-wrapped_diagonals-on`.
pub fn cache_stem(spec: &FamilySpec) -> String {
    spec.fingerprint().replace('/', "_").replace('=', "-")
}

/// Cached squares for `spec` under `dir`, enumerating and writing them (with
/// a JSON report next to them) on a miss.
pub fn load_or_enumerate(dir: impl AsRef<Path>, spec: &FamilySpec, opts: &EnumerateOptions) -> Result<Vec<Square>> {
    let dir = dir.as_ref();
    let path = dir.join(format!("{}.sq", cache_stem(spec)));
    if path.exists() {
        let file = read_squares(&path)?;
        if file.header.order != spec.order || file.header.family != spec.family.name() {
            return Err(Error::Integrity {
                path,
                msg: format!("cache holds {} of order {}", file.header.family, file.header.order),
            });
        }
        return Ok(file.squares);
    }
    let run = enumerate_with(spec, opts)?;
    write_squares(&path, spec.family.name(), &run.squares)?;
    write_report(dir.join(format!("{}.json", cache_stem(spec))), &run.report)?;
    Ok(run.squares)
}

pub fn write_report(path: impl AsRef<Path>, report: &EnumerationReport) -> Result<()> {
    write_json(path, report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::Family;
    use crate::square::fixtures::*;

    #[test]
    fn header_round_trip() {
        let h = SquareHeader { order: 4, family: "general".into(), count: 880 };
        assert_eq!(h.line(), "order=4,family=general,count=880,format=v1");
        assert_eq!(SquareHeader::parse(Path::new("x"), &h.line()).unwrap(), h);
        assert!(SquareHeader::parse(Path::new("x"), "order=4,family=general,count=1,format=v2").is_err());
        assert!(SquareHeader::parse(Path::new("x"), "order=4,family=general,count=1").is_err());
    }

    #[test]
    fn squares_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("g3.sq");
        write_squares(&path, "general", &[lo_shu()]).unwrap();
        assert_eq!(fs::read_to_string(&path).unwrap(), "order=3,family=general,count=1,format=v1\n2,7,6,9,5,1,4,3,8\n");
        let back = read_squares(&path).unwrap();
        assert_eq!(back.squares, vec![lo_shu()]);
        assert_eq!(format_squares("general", &[lo_shu()]).unwrap(), fs::read_to_string(&path).unwrap());
    }

    #[test]
    fn wrong_count_and_bad_lines() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.sq");
        fs::write(&path, "order=3,family=general,count=2,format=v1\n2,7,6,9,5,1,4,3,8\n").unwrap();
        let err = read_squares(&path).unwrap_err();
        assert!(matches!(err, Error::Integrity { .. }));
        assert!(err.to_string().contains("declares 2") && err.to_string().contains("holds 1"));
        fs::write(&path, "order=3,family=general,count=1,format=v1\n2,7,6,9,5,1,4,3,x\n").unwrap();
        assert!(matches!(read_squares(&path), Err(Error::Parse { line: 2, .. })));
        fs::write(&path, "order=3,family=general,count=1,format=v1\n2,7,6,9,5,1,4,3,3\n").unwrap();
        assert!(matches!(read_squares(&path), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn ingest_grids_and_rejects() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("ext.txt");
        // Dürer as a grid, its transpose on one line, and a broken line
        let text = "16 3 2 13\n5 10 11 8\n9 6 7 12\n4 15 14 1\n\n16;5;9;4;3;10;6;15;2;11;7;14;13;8;12;1\n1 2 3\n";
        fs::write(&path, text).unwrap();
        let spec = FamilySpec::new(Family::General, 4).unwrap();
        let (squares, report) = ingest_external(&path, &spec).unwrap();
        assert_eq!(report.total, 3);
        assert_eq!(report.parsed, 2);
        assert_eq!(report.rejected.len(), 1);
        assert_eq!(report.rejected[0].line, 7);
        assert_eq!(squares, vec![frenicle_form(&durer())]);
        assert_eq!(report.distinct, 1);
    }

    #[test]
    fn ingest_wrong_family_is_a_mismatch() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("ext.txt");
        fs::write(&path, "2,7,6,9,5,1,4,3,8\n").unwrap();
        let spec = FamilySpec::new(Family::General, 4).unwrap();
        assert!(matches!(ingest_external(&path, &spec), Err(Error::FormatMismatch { rejected: 1, total: 1, .. })));
    }

    #[test]
    fn tally_and_projection_round_trips() {
        let dir = tempfile::tempdir().unwrap();
        let mut t = PatternTally::new(TallyMode::Canonical, 3).with_family("general");
        t.add(&lo_shu()).unwrap();
        let json = dir.path().join("t.json");
        write_tally_json(&json, &t).unwrap();
        assert_eq!(read_tally_json(&json).unwrap(), t);
        let text = fs::read_to_string(&json).unwrap();
        assert!(text.contains("\"mode\": \"d4-canonical\""));
        let csv = dir.path().join("t.csv");
        write_tally_csv(&csv, &t).unwrap();
        assert_eq!(fs::read_to_string(&csv).unwrap(), "pattern,count\n010111010,1\n");
        assert_eq!(read_tally_csv(&csv, TallyMode::Canonical, 3).unwrap().entries, t.entries);

        let set = ProjectionSet {
            points: vec![
                ProjectedPoint { pattern: "01".into(), label: "a".into(), axis1: 0.1 + 0.2, axis2: -0.0 },
                ProjectedPoint { pattern: "10".into(), label: "b".into(), axis1: 1e-300, axis2: 3.0 },
            ],
        };
        let path = dir.path().join("p.csv");
        write_projection_csv(&path, &set).unwrap();
        let back = read_projection_csv(&path).unwrap();
        assert_eq!(format_projection_csv(&back), format_projection_csv(&set));
        assert_eq!(back.points[0].axis1.to_bits(), set.points[0].axis1.to_bits());
    }

    #[test]
    fn cache_names() {
        let spec = FamilySpec::new(Family::Franklin, 8).unwrap();
        assert_eq!(cache_stem(&spec), "franklin-8_blocks-overlapping_bent-wrapped_diagonals-on");
    }
}
