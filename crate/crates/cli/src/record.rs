use std::fmt::{self, Display, Write as _};
use std::path::Path;
use std::time::Duration;

use sha2::{Digest, Sha256};
use shiftptas::{Graph, Vertex};

/// Line-delimited `key=value` output. Fields keep insertion order; timings
/// come last as `time_<phase>_ms` so they can be stripped when diffing.
#[derive(Debug, Default)]
pub struct Record {
    fields: Vec<(String, String)>,
    timings: Vec<(String, u128)>,
}

impl Record {
    pub fn new(command: &str) -> Self {
        let mut r = Record::default();
        r.push("command", command);
        r
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl Display) -> &mut Self {
        self.fields.push((key.into(), value.to_string()));
        self
    }

    pub fn time(&mut self, phase: &str, d: Duration) {
        self.timings.push((phase.to_string(), d.as_millis()));
    }

    pub fn input(&mut self, path: &Path, bytes: &[u8], g: &Graph) {
        self.push("input", path.display());
        self.push("n", g.n());
        self.push("m", g.m());
        self.push("sha256", hex::encode(Sha256::digest(bytes)));
    }
}

impl Display for Record {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in &self.fields {
            writeln!(f, "{k}={v}")?;
        }
        for (k, ms) in &self.timings {
            writeln!(f, "time_{k}_ms={ms}")?;
        }
        Ok(())
    }
}

/// 1-based, space separated.
pub fn vertices(vs: &[Vertex]) -> String {
    let mut s = String::new();
    for (i, v) in vs.iter().enumerate() {
        if i > 0 {
            s.push(' ');
        }
        write!(s, "{}", v + 1).unwrap();
    }
    s
}

pub fn opt<T: Display>(v: Option<T>) -> String {
    v.map_or_else(|| "-".to_string(), |x| x.to_string())
}
