use std::fmt::Write as _;
use std::path::Path;

use super::{Feature, FeatureKind};
use crate::error::{Error, Result};

/// Feature layout and label column of a dataset.
///
/// Text form, one entry per line (`#` starts a comment):
///
/// ```text
/// duration numeric
/// purpose categorical A40 A41 A42
/// label class positive=good
/// ```
///
/// `positive=` is optional; without it the more frequent label is positive.
#[derive(Debug, Clone, PartialEq)]
pub struct Schema {
    features: Vec<Feature>,
    label: String,
    positive: Option<String>,
}

impl Schema {
    pub fn new(
        features: Vec<Feature>,
        label: impl Into<String>,
        positive: Option<String>,
    ) -> Result<Self> {
        let label = label.into();
        for (i, f) in features.iter().enumerate() {
            if f.name.is_empty() || f.name.chars().any(char::is_whitespace) {
                return Err(Error::Schema {
                    line: i + 1,
                    msg: format!("invalid feature name `{}`", f.name),
                });
            }
            if features[..i].iter().any(|g| g.name == f.name) || f.name == label {
                return Err(Error::Schema {
                    line: i + 1,
                    msg: format!("duplicate column name `{}`", f.name),
                });
            }
        }
        Ok(Schema {
            features,
            label,
            positive,
        })
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut features = Vec::new();
        let mut label: Option<(String, Option<String>)> = None;
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| Error::Schema { line: line_no, msg };
            let mut tokens = line.split_whitespace();
            let head = tokens.next().unwrap_or_default();
            if head == "label" {
                if label.is_some() {
                    return Err(err("more than one label line".into()));
                }
                let name = tokens
                    .next()
                    .ok_or_else(|| err("label line needs a column name".into()))?;
                let positive = match tokens.next() {
                    None => None,
                    Some(tok) => Some(
                        tok.strip_prefix("positive=")
                            .filter(|v| !v.is_empty())
                            .ok_or_else(|| err(format!("expected positive=<value>, got `{tok}`")))?
                            .to_string(),
                    ),
                };
                if tokens.next().is_some() {
                    return Err(err("trailing tokens after label declaration".into()));
                }
                label = Some((name.to_string(), positive));
                continue;
            }
            let kind = match tokens.next() {
                Some("numeric") => {
                    if tokens.next().is_some() {
                        return Err(err("numeric feature takes no values".into()));
                    }
                    FeatureKind::Numeric
                }
                Some("categorical") => FeatureKind::categorical(tokens.by_ref())
                    .map_err(|e| err(format!("feature `{head}`: {e}")))?,
                Some(other) => return Err(err(format!("unknown feature kind `{other}`"))),
                None => return Err(err(format!("feature `{head}` has no kind"))),
            };
            features.push(Feature {
                name: head.to_string(),
                kind,
            });
        }
        let (label, positive) = label.ok_or(Error::Schema {
            line: 0,
            msg: "missing `label <name>` line".into(),
        })?;
        if features.is_empty() {
            return Err(Error::Schema {
                line: 0,
                msg: "no features declared".into(),
            });
        }
        Schema::new(features, label, positive)
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Schema::parse(&text)
    }

    pub fn features(&self) -> &[Feature] {
        &self.features
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn positive(&self) -> Option<&str> {
        self.positive.as_deref()
    }

    pub fn feature_index(&self, name: &str) -> Option<usize> {
        self.features.iter().position(|f| f.name == name)
    }

    /// Canonical text form; `Schema::parse` of it yields an equal schema.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for line in self.feature_lines() {
            out.push_str(&line);
            out.push('\n');
        }
        match &self.positive {
            Some(p) => writeln!(out, "label {} positive={p}", self.label).unwrap(),
            None => writeln!(out, "label {}", self.label).unwrap(),
        }
        out
    }

    fn feature_lines(&self) -> impl Iterator<Item = String> + '_ {
        self.features.iter().map(|f| match &f.kind {
            FeatureKind::Numeric => format!("{} numeric", f.name),
            FeatureKind::Categorical(values) => {
                format!("{} categorical {}", f.name, values.join(" "))
            }
        })
    }

    /// FNV-1a 64 fingerprint of feature names, kinds, value sets and the label column.
    pub fn fingerprint(&self) -> u64 {
        const OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
        const PRIME: u64 = 0x0000_0100_0000_01b3;
        let mut h = OFFSET;
        let mut eat = |s: &str| {
            for b in s.bytes().chain(std::iter::once(b'\n')) {
                h ^= u64::from(b);
                h = h.wrapping_mul(PRIME);
            }
        };
        for line in self.feature_lines() {
            eat(&line);
        }
        eat(&format!("label {}", self.label));
        h
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TEXT: &str = "\
# toy schema
age numeric
color categorical red green blue
label outcome positive=yes
";

    #[test]
    fn parses_features_and_label() {
        let s = Schema::parse(TEXT).unwrap();
        assert_eq!(s.features().len(), 2);
        assert_eq!(s.features()[0], Feature::numeric("age"));
        assert_eq!(
            s.features()[1].kind,
            FeatureKind::Categorical(vec!["red".into(), "green".into(), "blue".into()])
        );
        assert_eq!(s.label(), "outcome");
        assert_eq!(s.positive(), Some("yes"));
    }

    #[test]
    fn canonical_text_round_trips() {
        let s = Schema::parse(TEXT).unwrap();
        assert_eq!(Schema::parse(&s.to_text()).unwrap(), s);
        assert_eq!(Schema::parse(&s.to_text()).unwrap().fingerprint(), s.fingerprint());
    }

    #[test]
    fn fingerprint_tracks_value_sets() {
        let a = Schema::parse(TEXT).unwrap();
        let b = Schema::parse(&TEXT.replace("blue", "teal")).unwrap();
        assert_ne!(a.fingerprint(), b.fingerprint());
        // the declared positive class is not part of the layout
        let c = Schema::parse(&TEXT.replace(" positive=yes", "")).unwrap();
        assert_eq!(a.fingerprint(), c.fingerprint());
    }

    #[test]
    fn rejects_malformed_lines() {
        assert!(Schema::parse("a numeric\n").is_err()); // no label
        assert!(Schema::parse("a weird\nlabel y\n").is_err());
        assert!(Schema::parse("a categorical\nlabel y\n").is_err());
        assert!(Schema::parse("a categorical x x\nlabel y\n").is_err());
        assert!(Schema::parse("a numeric\na numeric\nlabel y\n").is_err());
        assert!(Schema::parse("a numeric\nlabel y pos=1\n").is_err());
        assert!(Schema::parse("label y\n").is_err());
    }
}
