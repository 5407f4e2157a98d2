use std::fmt;

/// Key holding the wall-clock time; the only field that varies between
/// otherwise identical runs.
pub const TIMING_KEY: &str = "wall_ms";

/// `key=value` lines in insertion order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RunReport {
    entries: Vec<(String, String)>,
}

impl RunReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, key: &str, value: impl fmt::Display) {
        self.entries.push((key.to_string(), value.to_string()));
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn entries(&self) -> &[(String, String)] {
        &self.entries
    }

    /// The report without its timing field, for determinism checks.
    pub fn without_timing(&self) -> RunReport {
        RunReport { entries: self.entries.iter().filter(|(k, _)| k != TIMING_KEY).cloned().collect() }
    }
}

impl fmt::Display for RunReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in &self.entries {
            writeln!(f, "{k}={v}")?;
        }
        Ok(())
    }
}
