//! Deterministic CSV emission.

use sha2::{Digest, Sha256};

/// Magnitudes below this are written as `0`; they are rounding noise.
pub const ZERO_SNAP: f64 = 1e-14;

/// Twelve significant digits, shortest form that round-trips those digits.
pub fn format_number(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x.abs() < ZERO_SNAP {
        return "0".into();
    }
    let rounded: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    let a = rounded.abs();
    if (1e-4..1e15).contains(&a) {
        format!("{rounded}")
    } else {
        format!("{rounded:e}")
    }
}

/// SHA-256 of the config bytes with CRLF folded to LF.
pub fn config_hash(bytes: &[u8]) -> String {
    let mut normalized = Vec::with_capacity(bytes.len());
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i] == b'\r' && bytes.get(i + 1) == Some(&b'\n') {
            i += 1;
            continue;
        }
        normalized.push(bytes[i]);
        i += 1;
    }
    Sha256::digest(&normalized).iter().map(|b| format!("{b:02x}")).collect()
}

/// A rectangular table of reals with a provenance header.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultTable {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<f64>>,
}

impl ResultTable {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Self { columns, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        assert_eq!(row.len(), self.columns.len(), "ragged table row");
        self.rows.push(row);
    }

    /// Stable sort on the first column.
    pub fn sort(&mut self) {
        self.rows.sort_by(|a, b| a[0].total_cmp(&b[0]));
    }

    pub fn to_csv(&self, command: &str, hash: &str) -> String {
        let mut out = String::new();
        out.push_str(&format!("# workdist {}\n", env!("CARGO_PKG_VERSION")));
        out.push_str(&format!("# command: {command}\n"));
        out.push_str(&format!("# config-sha256: {hash}\n"));
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|&x| format_number(x)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

/// Parses the data rows of a CSV written by [`ResultTable::to_csv`].
pub fn read_csv_rows(text: &str) -> Vec<Vec<f64>> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(|c| c.parse().expect("numeric cell")).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_formatting() {
        assert_eq!(format_number(0.25), "0.25");
        assert_eq!(format_number(-0.5), "-0.5");
        assert_eq!(format_number(1.0), "1");
        assert_eq!(format_number(-0.0), "0");
        assert_eq!(format_number(1e-17), "0");
        assert_eq!(format_number(0.1 + 0.2), "0.3");
        assert_eq!(format_number(std::f64::consts::PI), "3.14159265359");
        assert_eq!(format_number(1.5e-7), "1.5e-7");
        assert_eq!(format_number(123456789.0), "123456789");
    }

    #[test]
    fn hash_ignores_crlf() {
        assert_eq!(config_hash(b"{\r\n}\r\n"), config_hash(b"{\n}\n"));
        assert_eq!(config_hash(b""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    }

    #[test]
    fn csv_layout() {
        let mut t = ResultTable::new(vec!["x", "y"]);
        t.push(vec![2.0, 0.5]);
        t.push(vec![1.0, 0.25]);
        t.sort();
        let csv = t.to_csv("demo", "abc");
        assert!(csv.starts_with("# workdist "));
        assert!(csv.ends_with("x,y\n1,0.25\n2,0.5\n"));
        assert_eq!(read_csv_rows(&csv), vec![vec![1.0, 0.25], vec![2.0, 0.5]]);
    }
}
