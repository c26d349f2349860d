use std::io::{Read, Write};

use crate::error::{Error, Result};
use crate::ff::FieldChar;

use super::point::{format_digits, parse_digits, DigitPoint};

/// A point dump: header metadata and `(n, point)` rows.
#[derive(Clone, Debug, PartialEq)]
pub struct PointDump {
    pub p: FieldChar,
    pub spec: String,
    pub precision: usize,
    pub rows: Vec<(u64, DigitPoint)>,
}

impl PointDump {
    pub fn points(&self) -> Vec<DigitPoint> {
        self.rows.iter().map(|(_, pt)| pt.clone()).collect()
    }
}

fn csv_err(e: csv::Error) -> Error {
    Error::Parse(format!("csv: {e}"))
}

/// Streams rows `n,digits_1,float_1,digits_2,float_2,...` after the
/// `# p=`, `# spec=`, `# precision=` header lines.
pub struct PointWriter<W: Write> {
    inner: csv::Writer<W>,
    p: FieldChar,
}

impl<W: Write> PointWriter<W> {
    pub fn new(mut w: W, p: FieldChar, spec: &str, precision: usize) -> Result<Self> {
        let io = |e: std::io::Error| Error::Invalid(format!("write failed: {e}"));
        writeln!(w, "# p={p}").map_err(io)?;
        writeln!(w, "# spec={spec}").map_err(io)?;
        writeln!(w, "# precision={precision}").map_err(io)?;
        let inner = csv::WriterBuilder::new().flexible(true).from_writer(w);
        Ok(PointWriter { inner, p })
    }

    pub fn write(&mut self, n: u64, pt: &DigitPoint) -> Result<()> {
        let mut rec = Vec::with_capacity(1 + 2 * pt.dim());
        rec.push(n.to_string());
        for j in 0..pt.dim() {
            rec.push(format_digits(self.p, pt.coord(j)));
            rec.push(pt.to_f64(j).to_string());
        }
        self.inner.write_record(&rec).map_err(csv_err)
    }

    pub fn finish(mut self) -> Result<W> {
        self.inner.flush().map_err(|e| Error::Invalid(format!("write failed: {e}")))?;
        self.inner
            .into_inner()
            .map_err(|e| Error::Invalid(format!("write failed: {e}")))
    }
}

/// Writes a whole dump.
pub fn write_points<W: Write>(w: W, dump: &PointDump) -> Result<W> {
    let mut out = PointWriter::new(w, dump.p, &dump.spec, dump.precision)?;
    for (n, pt) in &dump.rows {
        out.write(*n, pt)?;
    }
    out.finish()
}

/// Reads a dump; the float columns are ignored.
pub fn read_points<R: Read>(mut r: R) -> Result<PointDump> {
    let mut text = String::new();
    r.read_to_string(&mut text)
        .map_err(|e| Error::Parse(format!("read failed: {e}")))?;
    let (mut p, mut spec, mut precision) = (None, None, None);
    for line in text.lines().filter_map(|l| l.trim().strip_prefix('#')) {
        let Some((key, value)) = line.trim().split_once('=') else {
            continue;
        };
        let value = value.trim();
        match key.trim() {
            "p" => {
                let v = value
                    .parse::<u64>()
                    .map_err(|_| Error::Parse(format!("bad p {value:?}")))?;
                p = Some(FieldChar::new(v)?);
            }
            "spec" => spec = Some(value.to_string()),
            "precision" => {
                precision = Some(
                    value
                        .parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad precision {value:?}")))?,
                )
            }
            _ => {}
        }
    }
    let p = p.ok_or_else(|| Error::Parse("missing '# p=' header".into()))?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(text.as_bytes());
    let mut rows = Vec::new();
    let mut dim = None;
    for rec in reader.records() {
        let rec = rec.map_err(csv_err)?;
        if rec.len() < 3 || rec.len() % 2 == 0 {
            return Err(Error::Parse(format!("malformed row with {} fields", rec.len())));
        }
        let d = (rec.len() - 1) / 2;
        if *dim.get_or_insert(d) != d {
            return Err(Error::DimensionMismatch {
                expected: dim.unwrap_or(d),
                got: d,
            });
        }
        let n = rec[0]
            .parse::<u64>()
            .map_err(|_| Error::Parse(format!("bad index {:?}", &rec[0])))?;
        let coords = (0..d)
            .map(|j| parse_digits(p, &rec[1 + 2 * j]))
            .collect::<Result<_>>()?;
        rows.push((n, DigitPoint::new(p, coords)));
    }
    Ok(PointDump {
        p,
        spec: spec.unwrap_or_default(),
        precision: precision.unwrap_or(0),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let p = FieldChar::TWO;
        let dump = PointDump {
            p,
            spec: "halton:X".into(),
            precision: 3,
            rows: vec![
                (0, DigitPoint::single(p, vec![0, 0, 0])),
                (1, DigitPoint::single(p, vec![1, 0, 0])),
            ],
        };
        let bytes = write_points(Vec::new(), &dump).unwrap();
        let text = String::from_utf8(bytes.clone()).unwrap();
        assert_eq!(
            text,
            "# p=2\n# spec=halton:X\n# precision=3\n0,000,0\n1,100,0.5\n"
        );
        assert_eq!(read_points(bytes.as_slice()).unwrap(), dump);
    }

    #[test]
    fn rejects_missing_header() {
        assert!(matches!(read_points("".as_bytes()), Err(Error::Parse(_))));
        assert!(read_points("# p=2\n0,12,0.5\n".as_bytes()).is_err());
    }
}
