//! Regression fixtures stored as JSON next to the tests.
//!
//! A missing fixture is written from the current run; `CNSLAB_BLESS=1`
//! rewrites existing ones. Otherwise the stored value must match exactly.

use std::path::PathBuf;

use serde_json::Value;

#[derive(Debug, PartialEq)]
pub enum Fixture {
    Matched,
    Written,
    Mismatch { stored: Value },
}

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("fixtures")
        .join(name)
}

pub fn check_fixture(name: &str, actual: &Value) -> Fixture {
    let path = fixture_path(name);
    let bless = std::env::var("CNSLAB_BLESS").is_ok_and(|v| v == "1");
    if !bless {
        if let Ok(text) = std::fs::read_to_string(&path) {
            let stored: Value = serde_json::from_str(&text).expect("fixture is valid JSON");
            return if &stored == actual {
                Fixture::Matched
            } else {
                Fixture::Mismatch { stored }
            };
        }
    }
    std::fs::create_dir_all(path.parent().expect("fixture dir")).expect("create fixture dir");
    let text = serde_json::to_string_pretty(actual).expect("fixture serializes") + "\n";
    std::fs::write(&path, text).expect("write fixture");
    Fixture::Written
}
