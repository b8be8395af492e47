use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::subset::Subset;

/// Hard cap imposed by dense `2^|E|` tables. Front ends apply the smaller
/// configured limit from [`Limits`](crate::Limits).
pub const MAX_GROUND: usize = 16;

/// Ordered, duplicate-free element labels. Position `i` is bit `i` of every
/// [`Subset`] over this ground set.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<String>", into = "Vec<String>")]
pub struct GroundSet {
    labels: Vec<String>,
}

impl GroundSet {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.len() > MAX_GROUND {
            return Err(Error::TooManyElements {
                got: labels.len(),
                limit: MAX_GROUND,
            });
        }
        let mut seen = HashSet::new();
        for l in &labels {
            if l.is_empty() || l.contains(',') {
                return Err(Error::InvalidLabel(l.clone()));
            }
            if !seen.insert(l.as_str()) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        Ok(GroundSet { labels })
    }

    /// `n` conventional labels: `e, f, g, h, i, j`, then `x6, x7, ...`.
    pub fn standard(n: usize) -> Self {
        const NAMES: [&str; 6] = ["e", "f", "g", "h", "i", "j"];
        let labels = (0..n)
            .map(|i| match NAMES.get(i) {
                Some(s) => s.to_string(),
                None => format!("x{i}"),
            })
            .collect::<Vec<_>>();
        GroundSet::new(labels).expect("standard labels are valid")
    }

    pub fn empty() -> Self {
        GroundSet { labels: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn full(&self) -> Subset {
        Subset::full(self.len())
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.position(label)
            .ok_or_else(|| Error::UnknownElement(label.to_string()))
    }

    /// Resolves labels to a subset, rejecting unknown ones.
    pub fn subset_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<Subset> {
        labels
            .iter()
            .try_fold(Subset::EMPTY, |acc, l| Ok(acc.with(self.index_of(l.as_ref())?)))
    }

    /// The labels of `s` in ground order.
    pub fn subset_labels(&self, s: Subset) -> Vec<&str> {
        s.elements().map(|i| self.label(i)).collect()
    }

    /// Comma-joined labels of `s` in ground order; the empty set is `""`.
    pub fn subset_key(&self, s: Subset) -> String {
        self.subset_labels(s).join(",")
    }

    /// `{e,f}` style rendering used in messages.
    pub fn describe(&self, s: Subset) -> String {
        format!("{{{}}}", self.subset_key(s))
    }

    /// The ground set restricted to the elements of `kept`, order preserved.
    pub fn restrict(&self, kept: Subset) -> GroundSet {
        GroundSet {
            labels: kept.elements().map(|i| self.labels[i].clone()).collect(),
        }
    }

    /// Relabels with `labels[perm[i]]` at position `i`.
    pub fn permuted(&self, perm: &[usize]) -> GroundSet {
        GroundSet {
            labels: perm.iter().map(|&p| self.labels[p].clone()).collect(),
        }
    }
}

impl TryFrom<Vec<String>> for GroundSet {
    type Error = Error;
    fn try_from(v: Vec<String>) -> Result<Self> {
        GroundSet::new(v)
    }
}

impl From<GroundSet> for Vec<String> {
    fn from(g: GroundSet) -> Self {
        g.labels
    }
}

impl fmt::Debug for GroundSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.labels).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicates_and_commas() {
        assert_eq!(
            GroundSet::new(["e", "e"]).unwrap_err(),
            Error::DuplicateLabel("e".into())
        );
        assert!(matches!(
            GroundSet::new(["a,b"]).unwrap_err(),
            Error::InvalidLabel(_)
        ));
        assert!(matches!(
            GroundSet::new([""]).unwrap_err(),
            Error::InvalidLabel(_)
        ));
    }

    #[test]
    fn keys_follow_ground_order() {
        let g = GroundSet::new(["e", "f", "g"]).unwrap();
        assert_eq!(g.subset_key(Subset(0b101)), "e,g");
        assert_eq!(g.subset_key(Subset::EMPTY), "");
        assert_eq!(g.subset_of(&["g", "e"]).unwrap(), Subset(0b101));
        assert!(g.subset_of(&["q"]).is_err());
    }
}
