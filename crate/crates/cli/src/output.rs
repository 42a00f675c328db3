//! JSON report schema and small printing helpers.

use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub config: Config,
    pub result: serde_json::Value,
    pub certificate_summary: serde_json::Value,
    pub timing: Timing,
}

#[derive(Serialize, Clone)]
pub struct Config {
    pub m: usize,
    pub variables: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ranking: Option<String>,
    pub seed: u64,
}

#[derive(Serialize)]
pub struct Timing {
    pub total_ms: u128,
}

impl Report {
    pub fn print(&self, json: bool, human: &[String]) {
        if json {
            println!("{}", serde_json::to_string_pretty(self).unwrap());
        } else {
            for line in human {
                println!("{line}");
            }
        }
    }
}
