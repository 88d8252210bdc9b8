use serde::Serialize;
use serde_json::Value;

/// The result of one subcommand: TAP lines for people, JSON for machines.
pub struct Outcome {
    checks: Vec<(String, bool, Option<String>)>,
    notes: Vec<String>,
    pub json: Value,
    /// Replaces the JSON report on standard output (exports).
    pub raw: Option<String>,
}

impl Outcome {
    pub fn new(json: impl Serialize) -> Self {
        Self { checks: Vec::new(), notes: Vec::new(), json: serde_json::to_value(json).expect("serializable"), raw: None }
    }

    pub fn raw(text: String) -> Self {
        Self { checks: Vec::new(), notes: Vec::new(), json: Value::Null, raw: Some(text) }
    }

    pub fn check(&mut self, name: impl Into<String>, pass: bool) -> &mut Self {
        self.checks.push((name.into(), pass, None));
        self
    }

    pub fn check_with(&mut self, name: impl Into<String>, pass: bool, witness: Option<String>) -> &mut Self {
        self.checks.push((name.into(), pass, if pass { None } else { witness }));
        self
    }

    pub fn note(&mut self, line: impl Into<String>) -> &mut Self {
        self.notes.push(line.into());
        self
    }

    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.1)
    }

    pub fn tap(&self) -> Vec<String> {
        let mut out = vec![format!("1..{}", self.checks.len())];
        for (i, (name, pass, witness)) in self.checks.iter().enumerate() {
            let mut line = format!("{} {} - {name}", if *pass { "ok" } else { "not ok" }, i + 1);
            if let Some(w) = witness {
                line.push_str(" # ");
                line.push_str(w);
            }
            out.push(line);
        }
        out.extend(self.notes.iter().map(|n| format!("# {n}")));
        out
    }

    /// The JSON report with the overall verdict and the individual checks.
    pub fn report(&self) -> Value {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|(name, pass, witness)| serde_json::json!({ "name": name, "pass": pass, "witness": witness }))
            .collect();
        serde_json::json!({ "pass": self.pass(), "checks": checks, "result": self.json })
    }
}

pub fn tuple(v: &[usize]) -> String {
    format!("({})", v.iter().map(usize::to_string).collect::<Vec<_>>().join(", "))
}
