use serde::Serialize;
use serde_json::Value;

/// One individually evaluated statement with the data that decided it.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub witness: Value,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, witness: Value) -> Self {
        Check { name: name.into(), passed, witness }
    }

    pub fn eq<T: PartialEq + Serialize>(name: impl Into<String>, got: T, want: T) -> Self {
        let passed = got == want;
        Check::new(name, passed, serde_json::json!({ "got": got, "expected": want }))
    }
}

pub fn all_pass(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.passed)
}
