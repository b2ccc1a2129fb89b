//! Fixed-format CSV and JSON writers. Numbers are printed with 17
//! significant digits in scientific notation so identical runs give
//! identical bytes.

use num_complex::Complex64;
use serde::Serialize;

pub fn number(x: f64) -> String {
    format!("{x:.16e}")
}

/// CSV document: a `# config-sha256:` comment line, the header, then rows.
#[derive(Debug, Clone)]
pub struct Csv {
    text: String,
    columns: usize,
}

impl Csv {
    pub fn new(config_hash: &str, header: &[&str]) -> Self {
        let mut text = format!("# config-sha256: {config_hash}\n");
        text.push_str(&header.join(","));
        text.push('\n');
        Csv {
            text,
            columns: header.len(),
        }
    }

    pub fn row(&mut self, cells: &[f64]) {
        self.row_opt(&cells.iter().map(|&x| Some(x)).collect::<Vec<_>>());
    }

    /// `None` cells are left empty.
    pub fn row_opt(&mut self, cells: &[Option<f64>]) {
        assert_eq!(cells.len(), self.columns, "row width must match the header");
        let line: Vec<String> = cells.iter().map(|c| c.map(number).unwrap_or_default()).collect();
        self.text.push_str(&line.join(","));
        self.text.push('\n');
    }

    pub fn finish(self) -> String {
        self.text
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComplexJson {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for ComplexJson {
    fn from(z: Complex64) -> Self {
        ComplexJson { re: z.re, im: z.im }
    }
}

pub fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("output serializes") + "\n"
}
