use std::time::Instant;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckEntry {
    pub name: String,
    /// Which statement this check reproduces.
    pub anchor: String,
    pub status: Status,
    pub seconds: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<serde_json::Value>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub command: String,
    pub checks: Vec<CheckEntry>,
    /// Command output that is not a pass/fail check.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub data: Option<serde_json::Value>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Self {
            command: command.into(),
            ..Default::default()
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    /// Time `f` and record its verdict.
    pub fn run<T: Serialize>(
        &mut self,
        name: &str,
        anchor: &str,
        f: impl FnOnce() -> anyhow::Result<(bool, T)>,
    ) -> anyhow::Result<()> {
        let t = Instant::now();
        let (ok, detail) = f()?;
        self.checks.push(CheckEntry {
            name: name.to_string(),
            anchor: anchor.to_string(),
            status: if ok { Status::Pass } else { Status::Fail },
            seconds: t.elapsed().as_secs_f64(),
            detail: Some(serde_json::to_value(detail)?),
        });
        Ok(())
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
            };
            out.push_str(&format!("{tag} {} ({:.3}s): {}\n", c.name, c.seconds, c.anchor));
            if c.status == Status::Fail {
                if let Some(d) = &c.detail {
                    out.push_str(&format!("  {d}\n"));
                }
            }
        }
        out
    }
}
