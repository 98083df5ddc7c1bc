use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

const RESERVED: [&str; 3] = ["+", "-", "0"];

/// Names of the extra operations of a category of groups with operations.
///
/// Only the named binary operations are stored; each one's dual
/// (`a op° b = b op a`) is implied. Names are kept sorted so that two
/// signatures with the same operations compare equal regardless of the order
/// in which they were declared.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Signature {
    label: String,
    binary: Vec<String>,
    unary: Vec<String>,
}

impl Signature {
    pub fn new<B, U>(label: impl Into<String>, binary: B, unary: U) -> Result<Self>
    where
        B: IntoIterator,
        B::Item: Into<String>,
        U: IntoIterator,
        U::Item: Into<String>,
    {
        let mut binary: Vec<String> = binary.into_iter().map(Into::into).collect();
        let mut unary: Vec<String> = unary.into_iter().map(Into::into).collect();
        let mut seen = BTreeSet::new();
        for name in binary.iter().chain(unary.iter()) {
            validate_name(name)?;
            if !seen.insert(name.as_str()) {
                return Err(Error::DuplicateName(name.clone()));
            }
        }
        binary.sort();
        unary.sort();
        Ok(Signature {
            label: label.into(),
            binary,
            unary,
        })
    }

    /// Plain groups: no extra operations.
    pub fn groups() -> Self {
        Signature {
            label: "groups".into(),
            binary: vec![],
            unary: vec![],
        }
    }

    /// Rings without unit: one multiplication `mul`.
    pub fn rings() -> Self {
        Signature {
            label: "rings".into(),
            binary: vec!["mul".into()],
            unary: vec![],
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn binary_ops(&self) -> &[String] {
        &self.binary
    }

    pub fn unary_ops(&self) -> &[String] {
        &self.unary
    }

    pub fn binary_index(&self, name: &str) -> Option<usize> {
        self.binary.iter().position(|n| n == name)
    }

    pub fn unary_index(&self, name: &str) -> Option<usize> {
        self.unary.iter().position(|n| n == name)
    }

    /// Same operation names; the label is free-form and ignored.
    pub fn same_operations(&self, other: &Signature) -> bool {
        self.binary == other.binary && self.unary == other.unary
    }

    pub fn ensure_compatible(&self, other: &Signature, context: &str) -> Result<()> {
        if self.same_operations(other) {
            Ok(())
        } else {
            Err(Error::SignatureMismatch(format!(
                "{context}: {self} vs {other}"
            )))
        }
    }

    pub fn with_label(&self, label: impl Into<String>) -> Self {
        Signature {
            label: label.into(),
            ..self.clone()
        }
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}[binary: {}; unary: {}]",
            self.label,
            self.binary.join(","),
            self.unary.join(",")
        )
    }
}

pub(crate) fn validate_name(name: &str) -> Result<()> {
    if RESERVED.contains(&name) {
        return Err(Error::ReservedName(name.to_string()));
    }
    let mut chars = name.chars();
    let ok = match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {
            chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        }
        _ => false,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::malformed(format!("invalid operation name `{name}`")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_reserved_and_duplicate_names() {
        assert!(matches!(
            Signature::new("x", ["+"], Vec::<String>::new()),
            Err(Error::ReservedName(_))
        ));
        assert!(matches!(
            Signature::new("x", ["0"], Vec::<String>::new()),
            Err(Error::ReservedName(_))
        ));
        assert!(matches!(
            Signature::new("x", ["f"], ["f"]),
            Err(Error::DuplicateName(_))
        ));
        assert!(Signature::new("x", ["a b"], Vec::<String>::new()).is_err());
    }

    #[test]
    fn names_are_sorted() {
        let s = Signature::new("x", ["zeta", "alpha"], ["w"]).unwrap();
        assert_eq!(s.binary_ops(), &["alpha".to_string(), "zeta".to_string()]);
        let t = Signature::new("y", ["alpha", "zeta"], ["w"]).unwrap();
        assert!(s.same_operations(&t));
        assert_ne!(s, t);
    }
}
