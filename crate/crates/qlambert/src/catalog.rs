//! The machine-readable identity inventory.
//!
//! Records live in a plain-text file, one block per identity:
//!
//! ```text
//! id: xxyy
//! cite: reduction of A(x,x,y,y) to single Lambert sums
//! lhs: A($x, $x, $y, $y)
//! rhs: (1/2)*L($x, $y)^2 + (1/2)*L($x^2, $y, $y)
//! mode: equal
//! param: x
//! param: y
//! degree: 50
//! ```
//!
//! `param:` lines declare sampled monomial parameters with optional
//! constraints (`nonzero`, `ne1`, `zero`, `ne(<other>)`); `intparam:` lines
//! declare inclusive integer ranges for indexed families. Comparison modes:
//! `equal`, `oddfunction`, `evencoeff`, and
//! `subseq stride=<expr> target=sigma1|wds(<param>)`.

use std::collections::BTreeSet;
use std::path::Path;

use crate::dsl::eval::free_params;
use crate::dsl::{parse, Expr};
use crate::error::{Error, Result};

/// Decidable predicate on a sampled rational coefficient.
#[derive(Clone, Debug, PartialEq)]
pub enum Constraint {
    /// c ≠ 0
    NonZero,
    /// c ≠ 1 (automatic under |c| < 1 sampling; kept for documentation)
    NotOne,
    /// c = 0 (pins a degenerate slot)
    Zero,
    /// c differs from another declared parameter's coefficient
    NotEqual(String),
}

#[derive(Clone, Debug)]
pub struct ParamSpec {
    pub name: String,
    pub constraints: Vec<Constraint>,
}

#[derive(Clone, Debug)]
pub struct IntParamSpec {
    pub name: String,
    pub lo: i64,
    pub hi: i64,
}

/// Exact scalar target of a coefficient-subsequence comparison.
#[derive(Clone, Debug, PartialEq)]
pub enum SubseqTarget {
    /// σ₁(n), the sum of divisors
    Sigma1,
    /// ∑_{d|n} d·c^d with c the named parameter's coefficient
    WeightedDivisorSum { param: String },
}

/// How the two sides of a record are compared.
#[derive(Clone, Debug)]
pub enum ComparisonMode {
    /// coefficientwise equality
    Equal,
    /// every even-indexed coefficient of the lhs vanishes
    OddFunction,
    /// even-indexed coefficients of lhs and rhs agree
    EvenCoeffEqual,
    /// [q^{n·s}] of both sides equals the target value at n, for n·s ≤ D
    SubseqEquals { stride: Expr, target: SubseqTarget },
}

/// One catalog identity.
#[derive(Clone, Debug)]
pub struct IdentityRecord {
    pub id: String,
    pub citation: String,
    pub lhs: Expr,
    pub rhs: Expr,
    pub lhs_src: String,
    pub rhs_src: String,
    pub mode: ComparisonMode,
    pub params: Vec<ParamSpec>,
    pub int_params: Vec<IntParamSpec>,
    pub default_degree: usize,
}

const BUILTIN: &str = include_str!("../catalog/identities.cat");

/// The shipped catalog.
pub fn builtin_catalog() -> Vec<IdentityRecord> {
    parse_catalog(BUILTIN).expect("the shipped catalog parses")
}

/// Load a catalog from a file, falling back to the shipped one.
pub fn load_catalog(path: Option<&Path>) -> Result<Vec<IdentityRecord>> {
    match path {
        None => Ok(builtin_catalog()),
        Some(p) => {
            let text = std::fs::read_to_string(p)?;
            parse_catalog(&text)
        }
    }
}

struct RecordBuilder {
    id: String,
    line: usize,
    citation: Option<String>,
    lhs: Option<(String, usize)>,
    rhs: Option<(String, usize)>,
    mode: Option<(String, usize)>,
    params: Vec<ParamSpec>,
    int_params: Vec<IntParamSpec>,
    degree: Option<usize>,
}

fn cat_err(id: &str, line: usize, message: impl Into<String>) -> Error {
    Error::Catalog {
        id: id.to_string(),
        line,
        message: message.into(),
    }
}

impl RecordBuilder {
    fn finish(self) -> Result<IdentityRecord> {
        let id = self.id;
        let need = |field: &str, line: usize| cat_err(&id, line, format!("missing `{field}:`"));
        let (lhs_src, lhs_line) = self.lhs.ok_or_else(|| need("lhs", self.line))?;
        let (rhs_src, rhs_line) = self.rhs.ok_or_else(|| need("rhs", self.line))?;
        let (mode_src, mode_line) = self.mode.ok_or_else(|| need("mode", self.line))?;
        let degree = self.degree.ok_or_else(|| need("degree", self.line))?;

        let lhs =
            parse(&lhs_src).map_err(|e| cat_err(&id, lhs_line, format!("lhs: {e}")))?;
        let rhs =
            parse(&rhs_src).map_err(|e| cat_err(&id, rhs_line, format!("rhs: {e}")))?;
        let mode = parse_mode(&mode_src).map_err(|m| cat_err(&id, mode_line, m))?;

        // every free $name must be a declared parameter
        let declared: BTreeSet<&str> = self
            .params
            .iter()
            .map(|p| p.name.as_str())
            .chain(self.int_params.iter().map(|p| p.name.as_str()))
            .collect();
        let mut free = free_params(&lhs);
        free.extend(free_params(&rhs));
        if let ComparisonMode::SubseqEquals { stride, target } = &mode {
            free.extend(free_params(stride));
            if let SubseqTarget::WeightedDivisorSum { param } = target {
                if !self.params.iter().any(|p| &p.name == param) {
                    return Err(cat_err(
                        &id,
                        mode_line,
                        format!("target parameter `{param}` is not declared"),
                    ));
                }
            }
        }
        for name in free {
            if !declared.contains(name.as_str()) {
                return Err(cat_err(
                    &id,
                    self.line,
                    format!("undeclared parameter `${name}`"),
                ));
            }
        }
        // ne() must reference an earlier param: the sampler draws in
        // declaration order and checks distinctness against drawn values
        for (i, p) in self.params.iter().enumerate() {
            for c in &p.constraints {
                if let Constraint::NotEqual(other) = c {
                    if !self.params[..i].iter().any(|q| &q.name == other) {
                        return Err(cat_err(
                            &id,
                            self.line,
                            format!(
                                "ne({other}) on `{}` must refer to an earlier parameter",
                                p.name
                            ),
                        ));
                    }
                }
            }
        }

        Ok(IdentityRecord {
            id,
            citation: self.citation.unwrap_or_default(),
            lhs,
            rhs,
            lhs_src,
            rhs_src,
            mode,
            params: self.params,
            int_params: self.int_params,
            default_degree: degree,
        })
    }
}

fn parse_mode(src: &str) -> std::result::Result<ComparisonMode, String> {
    let mut words = src.split_whitespace();
    match words.next() {
        Some("equal") => Ok(ComparisonMode::Equal),
        Some("oddfunction") => Ok(ComparisonMode::OddFunction),
        Some("evencoeff") => Ok(ComparisonMode::EvenCoeffEqual),
        Some("subseq") => {
            let mut stride = None;
            let mut target = None;
            for w in words {
                if let Some(s) = w.strip_prefix("stride=") {
                    stride = Some(parse(s).map_err(|e| format!("stride: {e}"))?);
                } else if let Some(t) = w.strip_prefix("target=") {
                    target = Some(if t == "sigma1" {
                        SubseqTarget::Sigma1
                    } else if let Some(p) = t.strip_prefix("wds(").and_then(|r| r.strip_suffix(')'))
                    {
                        SubseqTarget::WeightedDivisorSum {
                            param: p.trim_start_matches('$').to_string(),
                        }
                    } else {
                        return Err(format!("unknown subseq target `{t}`"));
                    });
                } else {
                    return Err(format!("unexpected token `{w}` in subseq mode"));
                }
            }
            match (stride, target) {
                (Some(stride), Some(target)) => {
                    Ok(ComparisonMode::SubseqEquals { stride, target })
                }
                _ => Err("subseq mode needs stride=<expr> and target=...".into()),
            }
        }
        Some(other) => Err(format!("unknown comparison mode `{other}`")),
        None => Err("empty mode".into()),
    }
}

fn parse_param_line(rest: &str) -> std::result::Result<ParamSpec, String> {
    let mut words = rest.split_whitespace();
    let name = words.next().ok_or("param line needs a name")?.to_string();
    let mut constraints = Vec::new();
    for w in words {
        let c = match w {
            "nonzero" => Constraint::NonZero,
            "ne1" => Constraint::NotOne,
            "zero" => Constraint::Zero,
            other => match other.strip_prefix("ne(").and_then(|r| r.strip_suffix(')')) {
                Some(p) => Constraint::NotEqual(p.trim_start_matches('$').to_string()),
                None => return Err(format!("unknown constraint `{other}`")),
            },
        };
        constraints.push(c);
    }
    Ok(ParamSpec { name, constraints })
}

/// Parse a catalog file. Problems are reported with the entry id and line.
pub fn parse_catalog(text: &str) -> Result<Vec<IdentityRecord>> {
    let mut records: Vec<IdentityRecord> = Vec::new();
    let mut current: Option<RecordBuilder> = None;
    let mut seen = BTreeSet::new();

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, rest) = line.split_once(':').ok_or_else(|| {
            cat_err(
                current.as_ref().map(|c| c.id.as_str()).unwrap_or("?"),
                lineno,
                "expected `key: value`",
            )
        })?;
        let key = key.trim();
        let rest = rest.trim().to_string();
        if key == "id" {
            if let Some(done) = current.take() {
                records.push(done.finish()?);
            }
            if !seen.insert(rest.clone()) {
                return Err(cat_err(&rest, lineno, "duplicate id"));
            }
            current = Some(RecordBuilder {
                id: rest,
                line: lineno,
                citation: None,
                lhs: None,
                rhs: None,
                mode: None,
                params: Vec::new(),
                int_params: Vec::new(),
                degree: None,
            });
            continue;
        }
        let cur = current
            .as_mut()
            .ok_or_else(|| cat_err("?", lineno, "content before the first `id:`"))?;
        match key {
            "cite" => cur.citation = Some(rest),
            "lhs" => cur.lhs = Some((rest, lineno)),
            "rhs" => cur.rhs = Some((rest, lineno)),
            "mode" => cur.mode = Some((rest, lineno)),
            "degree" => {
                cur.degree = Some(
                    rest.parse()
                        .map_err(|_| cat_err(&cur.id, lineno, "degree must be a natural number"))?,
                )
            }
            "param" => {
                let spec =
                    parse_param_line(&rest).map_err(|m| cat_err(&cur.id, lineno, m))?;
                cur.params.push(spec);
            }
            "intparam" => {
                let mut words = rest.split_whitespace();
                let bad = || cat_err(&cur.id, lineno, "intparam needs `name lo hi`");
                let name = words.next().ok_or_else(bad)?.to_string();
                let lo = words.next().and_then(|w| w.parse().ok()).ok_or_else(bad)?;
                let hi = words.next().and_then(|w| w.parse().ok()).ok_or_else(bad)?;
                if hi < lo {
                    return Err(cat_err(&cur.id, lineno, "intparam range is empty"));
                }
                cur.int_params.push(IntParamSpec { name, lo, hi });
            }
            other => {
                return Err(cat_err(
                    &cur.id,
                    lineno,
                    format!("unknown key `{other}:`"),
                ))
            }
        }
    }
    if let Some(done) = current.take() {
        records.push(done.finish()?);
    }
    Ok(records)
}
