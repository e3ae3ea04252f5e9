//! Violation reports shared by the validators.

use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Finding {
    pub code: &'static str,
    pub node: Option<String>,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    findings: Vec<Finding>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, code: &'static str, node: Option<&str>, detail: impl Into<String>) {
        self.findings.push(Finding { code, node: node.map(str::to_owned), detail: detail.into() });
    }

    pub fn at(&mut self, code: &'static str, node: &str, detail: impl Into<String>) {
        self.push(code, Some(node), detail);
    }

    pub fn global(&mut self, code: &'static str, detail: impl Into<String>) {
        self.push(code, None, detail);
    }

    pub fn extend(&mut self, other: Report) {
        self.findings.extend(other.findings);
    }

    pub fn is_ok(&self) -> bool {
        self.findings.is_empty()
    }

    pub fn findings(&self) -> &[Finding] {
        &self.findings
    }

    pub fn has_code(&self, code: &str) -> bool {
        self.findings.iter().any(|f| f.code == code)
    }

    pub fn codes(&self) -> Vec<&'static str> {
        let mut c: Vec<_> = self.findings.iter().map(|f| f.code).collect();
        c.sort_unstable();
        c.dedup();
        c
    }

    /// `OK`, or one line per finding sorted by node id, then code.
    pub fn render(&self) -> String {
        if self.findings.is_empty() {
            return "OK".to_owned();
        }
        let mut f = self.findings.clone();
        f.sort_by(|a, b| {
            (a.node.as_deref().unwrap_or(""), a.code, &a.detail)
                .cmp(&(b.node.as_deref().unwrap_or(""), b.code, &b.detail))
        });
        f.dedup();
        f.iter()
            .map(|x| match &x.node {
                Some(n) => format!("{} node={} {}", x.code, n, x.detail),
                None => format!("{} {}", x.code, x.detail),
            })
            .map(|s| s.trim_end().to_owned())
            .collect::<Vec<_>>()
            .join("\n")
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_is_ok() {
        assert_eq!(Report::new().render(), "OK");
    }

    #[test]
    fn sorted_by_node_then_code() {
        let mut r = Report::new();
        r.at("G3", "b", "x");
        r.at("G2", "a", "y");
        r.at("G1", "b", "z");
        assert_eq!(r.render(), "G2 node=a y\nG1 node=b z\nG3 node=b x");
    }
}
