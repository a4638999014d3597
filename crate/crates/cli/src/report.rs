use std::fmt::Write as _;

use sha2::{Digest, Sha256};

/// Plain-text run report: command, input digests, body lines, verdict.
#[derive(Debug, Default)]
pub struct RunReport {
    command: String,
    inputs: Vec<(String, String)>,
    seed: Option<u64>,
    body: Vec<String>,
    verdict: Option<String>,
}

impl RunReport {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            ..Self::default()
        }
    }

    pub fn input(&mut self, name: &str, bytes: &[u8]) {
        self.inputs.push((name.to_string(), digest(bytes)));
    }

    pub fn seed(&mut self, seed: Option<u64>) {
        self.seed = seed;
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.body.push(s.into());
    }

    /// Adds each line of a multi-line block.
    pub fn block(&mut self, s: &str) {
        self.body.extend(s.lines().map(str::to_string));
    }

    pub fn verdict(&mut self, s: impl Into<String>) {
        self.verdict = Some(s.into());
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        writeln!(out, "command: {}", self.command).unwrap();
        for (name, d) in &self.inputs {
            writeln!(out, "input: {name} sha256:{d}").unwrap();
        }
        if let Some(s) = self.seed {
            writeln!(out, "seed: {s}").unwrap();
        }
        for l in &self.body {
            writeln!(out, "{l}").unwrap();
        }
        if let Some(v) = &self.verdict {
            writeln!(out, "verdict: {v}").unwrap();
        }
        out
    }
}

pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}
