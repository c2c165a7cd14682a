//! JSON and CSV emission. Every float is printed in scientific notation with
//! 17 significant digits so output is byte-identical across runs and parses
//! back to the exact same bits.

use std::io;

use serde::Serialize;
use serde_json::ser::{Formatter, Serializer};

pub struct SciFormatter;

impl Formatter for SciFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        write!(writer, "{value:.16e}")
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = Serializer::with_formatter(&mut buf, SciFormatter);
    value
        .serialize(&mut ser)
        .expect("in-memory JSON serialization");
    String::from_utf8(buf).expect("JSON output is UTF-8")
}

/// One float formatted the same way the JSON emitter formats it, for CSV cells.
pub fn fmt_f64(value: f64) -> String {
    format!("{value:.16e}")
}
