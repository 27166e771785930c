//! Contour files: an optional `x,y` header, then one `x,y` pair per line.

use std::io::{Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::geometry::Contour;
use crate::point::Point;

pub fn read_contour_csv(path: &Path) -> Result<Contour> {
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    parse_contour_csv(file, path)
}

/// Parses contour CSV from `reader`; `path` is only used in error messages.
pub fn parse_contour_csv(reader: impl Read, path: &Path) -> Result<Contour> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut pts = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let line = i + 1;
        let rec = rec.map_err(|e| Error::parse(path, line, e.to_string()))?;
        if rec.len() != 2 {
            return Err(Error::parse(path, line, format!("expected 2 fields, got {}", rec.len())));
        }
        if line == 1 && &rec[0] == "x" && &rec[1] == "y" {
            continue;
        }
        let num = |s: &str| -> Result<f64> {
            let v: f64 = s
                .parse()
                .map_err(|_| Error::parse(path, line, format!("not a number: {s:?}")))?;
            if !v.is_finite() {
                return Err(Error::parse(path, line, format!("non-finite value {s:?}")));
            }
            Ok(v)
        };
        pts.push(Point::new(num(&rec[0])?, num(&rec[1])?));
    }
    Contour::new(pts)
}

pub fn write_contour_csv(c: &Contour, path: &Path) -> Result<()> {
    let mut buf = Vec::new();
    format_contour_csv(c, &mut buf).expect("writing to memory");
    std::fs::write(path, buf).map_err(|e| Error::io(path, e))
}

/// Writes the header and every vertex with 17 significant digits.
pub fn format_contour_csv(c: &Contour, mut w: impl Write) -> std::io::Result<()> {
    writeln!(w, "x,y")?;
    for p in c.points() {
        writeln!(w, "{:.16e},{:.16e}", p.x, p.y)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synth;

    fn parse(s: &str) -> Result<Contour> {
        parse_contour_csv(s.as_bytes(), Path::new("mem.csv"))
    }

    #[test]
    fn round_trip_is_exact() {
        let c = synth::ellipse(1.0 / 3.0, std::f64::consts::PI, 37).translated(Point::new(1e-7, -123.456));
        let mut buf = Vec::new();
        format_contour_csv(&c, &mut buf).unwrap();
        let back = parse_contour_csv(buf.as_slice(), Path::new("mem.csv")).unwrap();
        assert_eq!(back, c);

        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.csv");
        write_contour_csv(&c, &path).unwrap();
        assert_eq!(read_contour_csv(&path).unwrap(), c);
    }

    #[test]
    fn header_is_optional() {
        let a = parse("x,y\n0,0\n1,0\n0,1\n").unwrap();
        let b = parse("0,0\n1,0\n0,1\n").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 3);
    }

    #[test]
    fn malformed_input() {
        assert!(matches!(parse("0,0\n1,0\n"), Err(Error::TooFewPoints(2))));
        assert!(matches!(parse("0,0\n1,zz\n0,1\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse("0,0\n1,inf\n0,1\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse("0,0,0\n1,0\n0,1\n"), Err(Error::Parse { .. })));
        assert!(read_contour_csv(Path::new("/nonexistent/c.csv")).is_err());
    }
}
