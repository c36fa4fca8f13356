//! Plain-text reports: one `key: value` line per field, lists as indented
//! `- item` lines, and the wall-clock time on the final line.

use std::fmt::Write;
use std::time::Duration;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Entry {
    Field(String, String),
    List(String, Vec<String>),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    entries: Vec<Entry>,
    elapsed: Option<Duration>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn field(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.entries.push(Entry::Field(key.to_string(), value.to_string()));
        self
    }

    pub fn list<I, T>(&mut self, key: &str, items: I) -> &mut Self
    where
        I: IntoIterator<Item = T>,
        T: ToString,
    {
        let items = items.into_iter().map(|i| i.to_string()).collect();
        self.entries.push(Entry::List(key.to_string(), items));
        self
    }

    pub fn set_elapsed(&mut self, elapsed: Duration) {
        self.elapsed = Some(elapsed);
    }

    /// Value of the first field named `key`.
    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.iter().find_map(|e| match e {
            Entry::Field(k, v) if k == key => Some(v.as_str()),
            _ => None,
        })
    }

    pub fn get_list(&self, key: &str) -> Option<&[String]> {
        self.entries.iter().find_map(|e| match e {
            Entry::List(k, v) if k == key => Some(v.as_slice()),
            _ => None,
        })
    }

    /// Everything except the timing line. Identical inputs give identical
    /// payloads.
    pub fn payload(&self) -> String {
        let mut out = String::new();
        for entry in &self.entries {
            match entry {
                Entry::Field(k, v) => writeln!(out, "{k}: {v}").unwrap(),
                Entry::List(k, items) if items.is_empty() => writeln!(out, "{k}: []").unwrap(),
                Entry::List(k, items) => {
                    writeln!(out, "{k}:").unwrap();
                    for item in items {
                        writeln!(out, "  - {item}").unwrap();
                    }
                }
            }
        }
        out
    }

    pub fn render(&self) -> String {
        let mut out = self.payload();
        if let Some(t) = self.elapsed {
            writeln!(out, "elapsed_ms: {:.3}", t.as_secs_f64() * 1e3).unwrap();
        }
        out
    }
}
