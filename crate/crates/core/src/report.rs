//! Witness-bearing verification reports.
//!
//! Every checker in the crate returns a [`Report`]. An empty report means
//! every law held. A failing law is listed once, with the number of failing
//! instances and up to [`WITNESS_LIMIT`] concrete witnesses.

use std::fmt;

/// Maximum number of witnesses kept per law.
pub const WITNESS_LIMIT: usize = 16;

/// One failing instance of a law: the variable assignment, and optionally
/// the two sides that should have agreed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub bindings: Vec<(String, usize)>,
    pub sides: Option<(usize, usize)>,
    pub note: Option<String>,
}

impl Witness {
    pub fn at(bindings: &[(&str, usize)]) -> Self {
        Witness {
            bindings: bindings.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            sides: None,
            note: None,
        }
    }

    pub fn with_sides(mut self, lhs: usize, rhs: usize) -> Self {
        self.sides = Some((lhs, rhs));
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn binding(&self, name: &str) -> Option<usize> {
        self.bindings.iter().find(|(k, _)| k == name).map(|(_, v)| *v)
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, v) in &self.bindings {
            if !first {
                write!(f, ", ")?;
            }
            first = false;
            write!(f, "{k}={v}")?;
        }
        if let Some((l, r)) = self.sides {
            if !first {
                write!(f, ": ")?;
            }
            first = false;
            write!(f, "{l} != {r}")?;
        }
        if let Some(note) = &self.note {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "({note})")?;
        }
        Ok(())
    }
}

/// A law that failed at least once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    /// Slash-separated path of the sub-check that produced it, empty at top level.
    pub section: String,
    pub law: String,
    /// Total number of failing instances, including those not kept.
    pub count: usize,
    pub witnesses: Vec<Witness>,
}

impl Violation {
    /// `section/law`, or just `law` at top level.
    pub fn path(&self) -> String {
        if self.section.is_empty() {
            self.law.clone()
        } else {
            format!("{}/{}", self.section, self.law)
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    violations: Vec<Violation>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violations(&self) -> &[Violation] {
        &self.violations
    }

    /// First violation whose law name (ignoring section) equals `law`.
    pub fn find(&self, law: &str) -> Option<&Violation> {
        self.violations.iter().find(|v| v.law == law)
    }

    /// First violation whose `section/law` path starts with `prefix`.
    pub fn find_path(&self, prefix: &str) -> Option<&Violation> {
        self.violations.iter().find(|v| v.path().starts_with(prefix))
    }

    pub fn total_failures(&self) -> usize {
        self.violations.iter().map(|v| v.count).sum()
    }

    pub fn record(&mut self, law: impl Into<String>, witness: Witness) {
        self.push("", &law.into(), witness);
    }

    fn push(&mut self, section: &str, law: &str, witness: Witness) {
        let idx = match self
            .violations
            .iter()
            .position(|v| v.law == law && v.section == section)
        {
            Some(i) => i,
            None => {
                self.violations.push(Violation {
                    section: section.to_string(),
                    law: law.to_string(),
                    count: 0,
                    witnesses: Vec::new(),
                });
                self.violations.len() - 1
            }
        };
        let v = &mut self.violations[idx];
        v.count += 1;
        if v.witnesses.len() < WITNESS_LIMIT {
            v.witnesses.push(witness);
        }
    }

    /// Records a failure unless `lhs == rhs`. Returns whether the instance held.
    pub fn expect_eq(
        &mut self,
        law: &str,
        bindings: &[(&str, usize)],
        lhs: usize,
        rhs: usize,
    ) -> bool {
        if lhs == rhs {
            return true;
        }
        self.record(law, Witness::at(bindings).with_sides(lhs, rhs));
        false
    }

    /// Folds `other` into this report under `section`.
    pub fn absorb(&mut self, section: &str, other: Report) {
        for v in other.violations {
            let path = match (section.is_empty(), v.section.is_empty()) {
                (true, _) => v.section,
                (false, true) => section.to_string(),
                (false, false) => format!("{section}/{}", v.section),
            };
            self.violations.push(Violation { section: path, ..v });
        }
    }

    pub fn merged(mut self, section: &str, other: Report) -> Self {
        self.absorb(section, other);
        self
    }

    /// Human-readable rendering showing at most `max_witnesses` per law.
    pub fn render_human(&self, max_witnesses: usize) -> String {
        let mut out = String::new();
        if self.is_ok() {
            out.push_str("all checks passed\n");
            return out;
        }
        for v in &self.violations {
            out.push_str(&format!("FAIL {} ({} instance", v.path(), v.count));
            out.push_str(if v.count == 1 { ")\n" } else { "s)\n" });
            for w in v.witnesses.iter().take(max_witnesses) {
                out.push_str(&format!("  witness: {w}\n"));
            }
        }
        out
    }

    /// Line-oriented `key=value` rendering with a fixed field order.
    pub fn render_machine(&self, max_witnesses: usize) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "status={}\n",
            if self.is_ok() { "pass" } else { "fail" }
        ));
        for v in &self.violations {
            out.push_str(&format!("violation path={} count={}\n", v.path(), v.count));
            for w in v.witnesses.iter().take(max_witnesses) {
                out.push_str(&format!("witness path={}", v.path()));
                for (k, val) in &w.bindings {
                    out.push_str(&format!(" w.{k}={val}"));
                }
                if let Some((l, r)) = w.sides {
                    out.push_str(&format!(" lhs={l} rhs={r}"));
                }
                if let Some(note) = &w.note {
                    out.push_str(&format!(" note={}", note.replace(' ', "_")));
                }
                out.push('\n');
            }
        }
        out
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_human(WITNESS_LIMIT))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keeps_bounded_witnesses_but_counts_all() {
        let mut r = Report::new();
        for i in 0..40 {
            r.expect_eq("law", &[("a", i)], i, i + 1);
        }
        let v = r.find("law").unwrap();
        assert_eq!(v.count, 40);
        assert_eq!(v.witnesses.len(), WITNESS_LIMIT);
        assert_eq!(v.witnesses[0].binding("a"), Some(0));
    }

    #[test]
    fn absorb_prefixes_sections() {
        let mut inner = Report::new();
        inner.record("assoc", Witness::at(&[("a", 1)]));
        let mut mid = Report::new();
        mid.absorb("add", inner);
        let mut outer = Report::new();
        outer.absorb("group", mid);
        assert_eq!(outer.violations()[0].path(), "group/add/assoc");
        assert!(outer.find_path("group/add").is_some());
    }

    #[test]
    fn machine_rendering_is_stable() {
        let mut r = Report::new();
        r.record("x", Witness::at(&[("a", 1), ("b", 2)]).with_sides(3, 4));
        assert_eq!(
            r.render_machine(16),
            "status=fail\nviolation path=x count=1\nwitness path=x w.a=1 w.b=2 lhs=3 rhs=4\n"
        );
        assert_eq!(Report::new().render_machine(16), "status=pass\n");
    }
}
