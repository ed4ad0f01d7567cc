use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

pub const SCHEMA: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckLine {
    pub name: String,
    pub passed: bool,
    #[serde(default)]
    pub informational: bool,
    #[serde(default)]
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub elapsed_ms: f64,
}

/// Machine-readable result of one command.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub inputs: Map<String, Value>,
    pub results: Value,
    pub checks: Vec<CheckLine>,
    pub ok: bool,
    pub timing: Timing,
}

impl Report {
    pub fn new(command: &str) -> Report {
        Report {
            schema: SCHEMA,
            command: command.into(),
            inputs: Map::new(),
            results: Value::Null,
            checks: Vec::new(),
            ok: true,
            timing: Timing { elapsed_ms: 0.0 },
        }
    }

    pub fn input(&mut self, key: &str, value: impl Into<Value>) {
        self.inputs.insert(key.into(), value.into());
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool, informational: bool, detail: impl Into<String>) {
        self.ok &= passed || informational;
        self.checks.push(CheckLine { name: name.into(), passed, informational, detail: detail.into() });
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Report> {
        serde_json::from_str(s)
    }
}

/// `PASS`, `FAIL` or `INFO` prefix for a check line in table output.
pub fn status(c: &CheckLine) -> &'static str {
    match (c.informational, c.passed) {
        (true, _) => "INFO",
        (false, true) => "PASS",
        (false, false) => "FAIL",
    }
}

/// Left-aligned key/value rows with the keys padded to one width.
pub fn kv_table(rows: &[(String, String)]) -> String {
    let w = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    rows.iter().map(|(k, v)| format!("{k:<w$}  {v}\n")).collect()
}

/// Fixed six-decimal rendering; negative zero prints as zero.
pub fn fmt_real(x: f64) -> String {
    let s = format!("{x:.6}");
    if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
        s.trim_start_matches('-').to_string()
    } else {
        s
    }
}

pub fn fmt_complex(z: num_complex::Complex64) -> String {
    let im = fmt_real(z.im);
    if im == "0.000000" {
        fmt_real(z.re)
    } else if im.starts_with('-') {
        format!("{}{}i", fmt_real(z.re), im)
    } else {
        format!("{}+{}i", fmt_real(z.re), im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn number_formatting() {
        assert_eq!(fmt_real(-1e-12), "0.000000");
        assert_eq!(fmt_real(-0.5), "-0.500000");
        assert_eq!(fmt_complex(Complex64::new(0.25, -0.0)), "0.250000");
        assert_eq!(fmt_complex(Complex64::new(0.0, -1.0)), "0.000000-1.000000i");
        assert_eq!(fmt_complex(Complex64::new(1.0, 0.5)), "1.000000+0.500000i");
    }

    #[test]
    fn json_round_trip() {
        let mut r = Report::new("demo");
        r.input("spec", "Z2+Z2");
        r.results = serde_json::json!({"x": [1, 2], "y": 0.1 + 0.2});
        r.check("a", true, false, "");
        r.check("b", false, true, "measured");
        r.timing.elapsed_ms = 1.0 / 3.0;
        let back = Report::from_json(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert!(r.ok);
    }
}
