//! SECL1 model files.
//!
//! Line-oriented text: a `SECL1 <schema-hash>` header, `[TREE]`,
//! `[FEATURES]`, `[ENCODER]` and `[RBFN]` sections, then a `crc32 <hex>`
//! line covering every preceding byte. Floats carry 17 significant digits.

use std::fmt::Write as _;
use std::path::Path;

use super::SuperensembleModel;
use crate::data::{ClassNames, ColumnEncoding, EncoderState, Matrix, Schema};
use crate::error::{Error, Result};
use crate::rbfn::RbfNetwork;
use crate::tree::serial::{fmt_f64, parse_nodes, write_nodes};
use crate::tree::{SplitCriterion, TreeModel};

pub const FORMAT_VERSION: &str = "SECL1";

pub fn write_model(model: &SuperensembleModel) -> String {
    let mut out = String::new();
    writeln!(out, "{FORMAT_VERSION} {:016x}", model.schema.fingerprint()).unwrap();

    out.push_str("[TREE]\n");
    let tree = &model.tree;
    writeln!(out, "criterion {}", tree.criterion()).unwrap();
    writeln!(out, "minsplit {}", tree.minsplit()).unwrap();
    writeln!(out, "importances {}", join_f64(tree.importances())).unwrap();
    write_nodes(tree.root(), &mut out);

    out.push_str("[FEATURES]\n");
    for line in model.schema.to_text().lines() {
        writeln!(out, "schema {line}").unwrap();
    }
    write!(out, "classes positive={}", model.classes.positive).unwrap();
    if let Some(neg) = &model.classes.negative {
        write!(out, " negative={neg}").unwrap();
    }
    out.push('\n');
    let selected: Vec<String> = model.selected.iter().map(usize::to_string).collect();
    writeln!(out, "selected {}", selected.join(" ")).unwrap();

    out.push_str("[ENCODER]\n");
    for c in model.encoder.columns() {
        match *c {
            ColumnEncoding::Standardize { feature, mean, sd } => {
                writeln!(out, "standardize {feature} {} {}", fmt_f64(mean), fmt_f64(sd)).unwrap()
            }
            ColumnEncoding::OneHot { feature, width } => writeln!(out, "onehot {feature} {width}").unwrap(),
        }
    }

    out.push_str("[RBFN]\n");
    let net = &model.net;
    writeln!(out, "k {} dm {}", net.k(), net.input_dim()).unwrap();
    writeln!(out, "bias {}", fmt_f64(net.bias())).unwrap();
    for j in 0..net.k() {
        writeln!(
            out,
            "unit {} {} {}",
            fmt_f64(net.widths()[j]),
            fmt_f64(net.weights()[j]),
            join_f64(net.center(j))
        )
        .unwrap();
    }

    let crc = crc32fast::hash(out.as_bytes());
    writeln!(out, "crc32 {crc:08x}").unwrap();
    out
}

fn join_f64(values: &[f64]) -> String {
    values.iter().map(|&v| fmt_f64(v)).collect::<Vec<_>>().join(" ")
}

pub fn save_model(model: &SuperensembleModel, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, write_model(model)).map_err(|e| Error::io(path, e))
}

pub fn load_model(path: impl AsRef<Path>) -> Result<SuperensembleModel> {
    let path = path.as_ref();
    let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    let text = String::from_utf8(bytes).map_err(|_| Error::Format {
        line: 0,
        msg: "model file is not UTF-8".into(),
    })?;
    read_model(&text)
}

pub fn read_model(text: &str) -> Result<SuperensembleModel> {
    let version = text.split_whitespace().next().unwrap_or("");
    if version != FORMAT_VERSION {
        return Err(Error::Version(version.chars().take(32).collect()));
    }
    let body = verify_checksum(text)?;
    Parser::new(body).model()
}

/// Checks the trailing crc32 line and returns the text it covers.
fn verify_checksum(text: &str) -> Result<&str> {
    let trimmed = text.strip_suffix('\n').ok_or_else(|| Error::Truncated("missing final newline".into()))?;
    let start = trimmed.rfind('\n').map_or(0, |i| i + 1);
    let last = &trimmed[start..];
    let hex = last
        .strip_prefix("crc32 ")
        .ok_or_else(|| Error::Truncated("missing crc32 line".into()))?;
    let stored = u32::from_str_radix(hex, 16).map_err(|_| Error::Truncated(format!("bad checksum line `{last}`")))?;
    let body = &text[..start];
    let computed = crc32fast::hash(body.as_bytes());
    if stored != computed {
        return Err(Error::Checksum { stored, computed });
    }
    Ok(body)
}

struct Parser<'a> {
    /// `(1-based line number, text)`
    lines: std::iter::Peekable<std::vec::IntoIter<(usize, &'a str)>>,
}

impl<'a> Parser<'a> {
    fn new(body: &'a str) -> Self {
        let numbered: Vec<(usize, &str)> = body.lines().enumerate().map(|(i, l)| (i + 1, l)).collect();
        Parser {
            lines: numbered.into_iter().peekable(),
        }
    }

    fn next(&mut self, what: &str) -> Result<(usize, &'a str)> {
        self.lines
            .next()
            .ok_or_else(|| Error::Truncated(format!("expected {what}")))
    }

    /// Next line, which must start with `key`; returns its remaining tokens.
    fn keyed(&mut self, key: &str) -> Result<(usize, Vec<&'a str>)> {
        let (line, text) = self.next(key)?;
        let mut tokens = text.split_whitespace();
        if tokens.next() != Some(key) {
            return Err(Error::Format {
                line,
                msg: format!("expected `{key}`, got `{text}`"),
            });
        }
        Ok((line, tokens.collect()))
    }

    fn section(&mut self, name: &str) -> Result<()> {
        let (line, text) = self.next(name)?;
        if text.trim() != name {
            return Err(Error::Format {
                line,
                msg: format!("expected section {name}, got `{text}`"),
            });
        }
        Ok(())
    }

    fn peek_is(&mut self, key: &str) -> bool {
        self.lines
            .peek()
            .is_some_and(|(_, t)| t.split_whitespace().next() == Some(key))
    }

    fn model(mut self) -> Result<SuperensembleModel> {
        let (line, header) = self.keyed(FORMAT_VERSION)?;
        let hash = header
            .first()
            .and_then(|h| u64::from_str_radix(h, 16).ok())
            .ok_or_else(|| Error::Format {
                line,
                msg: "header lacks the schema hash".into(),
            })?;

        self.section("[TREE]")?;
        let (line, c) = self.keyed("criterion")?;
        let criterion: SplitCriterion = single(&c, line)?.parse()?;
        let (line, m) = self.keyed("minsplit")?;
        let minsplit: usize = parse(single(&m, line)?, line)?;
        let (line, imp) = self.keyed("importances")?;
        let importances = imp.iter().map(|t| parse::<f64>(t, line)).collect::<Result<Vec<_>>>()?;
        let root = parse_nodes(&mut self.lines)?;
        let tree = TreeModel::from_parts(root, criterion, minsplit, importances);

        self.section("[FEATURES]")?;
        let mut schema_text = String::new();
        while self.peek_is("schema") {
            let (_, text) = self.next("schema line")?;
            schema_text.push_str(text.trim_start().trim_start_matches("schema").trim_start());
            schema_text.push('\n');
        }
        let schema = Schema::parse(&schema_text)?;
        if schema.fingerprint() != hash {
            return Err(Error::SchemaMismatch(format!(
                "header hash {hash:016x} does not match the stored schema {:016x}",
                schema.fingerprint()
            )));
        }
        let (line, cls) = self.keyed("classes")?;
        let classes = parse_classes(&cls, line)?;
        let (line, sel) = self.keyed("selected")?;
        let selected = sel.iter().map(|t| parse::<usize>(t, line)).collect::<Result<Vec<_>>>()?;

        self.section("[ENCODER]")?;
        let mut columns = Vec::new();
        while !self.peek_is("[RBFN]") {
            let (line, text) = self.next("encoder column")?;
            let t: Vec<&str> = text.split_whitespace().collect();
            columns.push(match t.as_slice() {
                ["standardize", f, mean, sd] => ColumnEncoding::Standardize {
                    feature: parse(f, line)?,
                    mean: parse(mean, line)?,
                    sd: parse(sd, line)?,
                },
                ["onehot", f, w] => ColumnEncoding::OneHot {
                    feature: parse(f, line)?,
                    width: parse(w, line)?,
                },
                _ => {
                    return Err(Error::Format {
                        line,
                        msg: format!("bad encoder column `{text}`"),
                    })
                }
            });
        }
        let encoder = EncoderState::from_columns(columns)?;

        self.section("[RBFN]")?;
        let (line, kd) = self.keyed("k")?;
        let (k, dm) = match kd.as_slice() {
            [k, "dm", dm] => (parse::<usize>(k, line)?, parse::<usize>(dm, line)?),
            _ => {
                return Err(Error::Format {
                    line,
                    msg: "expected `k <k> dm <dm>`".into(),
                })
            }
        };
        let (line, b) = self.keyed("bias")?;
        let bias: f64 = parse(single(&b, line)?, line)?;
        let mut widths = Vec::with_capacity(k);
        let mut weights = Vec::with_capacity(k);
        let mut centers = Vec::with_capacity(k * dm);
        for _ in 0..k {
            let (line, u) = self.keyed("unit")?;
            if u.len() != dm + 2 {
                return Err(Error::Format {
                    line,
                    msg: format!("unit has {} values, expected {}", u.len(), dm + 2),
                });
            }
            widths.push(parse(u[0], line)?);
            weights.push(parse(u[1], line)?);
            for t in &u[2..] {
                centers.push(parse(t, line)?);
            }
        }
        if let Some((line, text)) = self.lines.next() {
            return Err(Error::Format {
                line,
                msg: format!("unexpected trailing line `{text}`"),
            });
        }
        let net = RbfNetwork::new(Matrix::new(k, dm, centers)?, widths, weights, bias)?;
        SuperensembleModel::new(schema, classes, tree, selected, encoder, net)
    }
}

fn single<'t>(tokens: &[&'t str], line: usize) -> Result<&'t str> {
    match tokens {
        [t] => Ok(t),
        _ => Err(Error::Format {
            line,
            msg: format!("expected one value, got {}", tokens.len()),
        }),
    }
}

fn parse<T: std::str::FromStr>(token: &str, line: usize) -> Result<T> {
    token.parse().map_err(|_| Error::Format {
        line,
        msg: format!("cannot parse `{token}`"),
    })
}

fn parse_classes(tokens: &[&str], line: usize) -> Result<ClassNames> {
    let mut positive = None;
    let mut negative = None;
    for t in tokens {
        if let Some(p) = t.strip_prefix("positive=") {
            positive = Some(p.to_string());
        } else if let Some(n) = t.strip_prefix("negative=") {
            negative = Some(n.to_string());
        } else {
            return Err(Error::Format {
                line,
                msg: format!("bad class token `{t}`"),
            });
        }
    }
    Ok(ClassNames {
        positive: positive.ok_or(Error::Format {
            line,
            msg: "missing positive class".into(),
        })?,
        negative,
    })
}
