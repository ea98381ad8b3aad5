//! Number and table formatting shared by the emitters.

use std::fmt::Write;

/// Shortest decimal form of `x` after rounding to 9 significant digits.
pub fn sig9(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let rounded: f64 = format!("{x:.8e}")
        .parse()
        .expect("round-trip of formatted float");
    format!("{rounded}")
}

pub fn percent(x: f64) -> String {
    format!("{:.2}%", x * 100.0)
}

/// Minimal CSV builder. Fields are numeric or simple identifiers, so no
/// quoting is needed beyond rejecting separators in labels.
pub struct Csv {
    buf: String,
    columns: usize,
}

impl Csv {
    pub fn new(header: &[&str]) -> Self {
        let mut buf = header.join(",");
        buf.push('\n');
        Csv {
            buf,
            columns: header.len(),
        }
    }

    pub fn row(&mut self, fields: &[Field<'_>]) {
        debug_assert_eq!(fields.len(), self.columns);
        for (i, f) in fields.iter().enumerate() {
            if i > 0 {
                self.buf.push(',');
            }
            match f {
                Field::Num(x) => self.buf.push_str(&sig9(*x)),
                Field::Int(n) => write!(self.buf, "{n}").unwrap(),
                Field::Text(s) => self.buf.push_str(&s.replace([',', '\n'], "_")),
                Field::Bool(b) => self.buf.push_str(if *b { "true" } else { "false" }),
                Field::Empty => {}
            }
        }
        self.buf.push('\n');
    }

    pub fn finish(self) -> String {
        self.buf
    }
}

pub enum Field<'a> {
    Num(f64),
    Int(usize),
    Text(&'a str),
    Bool(bool),
    Empty,
}

impl From<f64> for Field<'_> {
    fn from(x: f64) -> Self {
        Field::Num(x)
    }
}

impl From<Option<f64>> for Field<'_> {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Field::Empty, Field::Num)
    }
}
