//! Input data model for a locally symmetric space: the graded integral
//! cohomology together with dimension, real rank, compactness,
//! orientability and Euler characteristic, plus validation of the standing
//! hypotheses and the line-oriented space-file format.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::abelian::{FgAbGroup, GroupParseError};

/// A degree-indexed list of finitely generated abelian groups. Degrees
/// outside the stored range are implicitly trivial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedGroup {
    groups: Vec<FgAbGroup>,
}

impl GradedGroup {
    pub fn new(groups: Vec<FgAbGroup>) -> Self {
        GradedGroup { groups }
    }

    pub fn from_strs(tokens: &[&str]) -> Result<Self, GroupParseError> {
        let groups = tokens
            .iter()
            .map(|t| t.parse())
            .collect::<Result<Vec<_>, _>>()?;
        Ok(GradedGroup::new(groups))
    }

    /// Group in the given degree; trivial outside the stored range.
    pub fn get(&self, degree: usize) -> FgAbGroup {
        self.groups
            .get(degree)
            .cloned()
            .unwrap_or_else(FgAbGroup::trivial)
    }

    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &FgAbGroup> {
        self.groups.iter()
    }

    /// Degrees whose group has torsion.
    pub fn torsion_degrees(&self) -> Vec<usize> {
        self.groups
            .iter()
            .enumerate()
            .filter(|(_, g)| !g.is_free())
            .map(|(d, _)| d)
            .collect()
    }

    pub fn total_rank(&self) -> usize {
        self.groups.iter().map(|g| g.rank()).sum()
    }

    /// Alternating sum of the ranks, `sum (-1)^i rank(H^i)`.
    pub fn alternating_rank_sum(&self) -> i64 {
        self.groups
            .iter()
            .enumerate()
            .map(|(i, g)| {
                let r = g.rank() as i64;
                if i % 2 == 0 {
                    r
                } else {
                    -r
                }
            })
            .sum()
    }
}

/// User-facing description of a locally symmetric space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpaceInput {
    pub name: String,
    /// Dimension n of the space, at least 2.
    pub dim_n: usize,
    /// Real rank, at least 1. Routes the K-theory interpretation.
    pub rank: u32,
    pub compact: bool,
    pub orientable: bool,
    /// Declared Euler characteristic; required when compact, absent
    /// otherwise.
    pub euler_char: Option<i64>,
    /// Integral cohomology in degrees `0..=dim_n`.
    pub cohomology: GradedGroup,
    /// Attestation that the lattice satisfies the assembly-map hypothesis
    /// needed for the higher-rank formulas. Never verified here.
    pub assume_baum_connes: bool,
}

impl SpaceInput {
    /// Declared Euler characteristic for compact spaces, alternating rank
    /// sum (informational) otherwise.
    pub fn euler_characteristic(&self) -> i64 {
        match (self.compact, self.euler_char) {
            (true, Some(chi)) => chi,
            _ => self.cohomology.alternating_rank_sum(),
        }
    }

    /// Renders the space-file form of this input.
    pub fn to_space_file(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("name = {}\n", self.name));
        out.push_str(&format!("dim = {}\n", self.dim_n));
        out.push_str(&format!("rank = {}\n", self.rank));
        out.push_str(&format!("compact = {}\n", self.compact));
        out.push_str(&format!("orientable = {}\n", self.orientable));
        if let Some(chi) = self.euler_char {
            out.push_str(&format!("euler = {chi}\n"));
        }
        if self.assume_baum_connes {
            out.push_str("assume_baum_connes = true\n");
        }
        for d in 0..self.cohomology.len() {
            out.push_str(&format!("H{} = {}\n", d, self.cohomology.get(d)));
        }
        out
    }
}

/// A failed validation rule, naming the rule and the offending
/// degree/value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub rule: &'static str,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.rule, self.message)
    }
}

/// Outcome of `validate`: hard violations plus non-fatal warnings.
/// Warnings flag torsion in the cohomology, which keeps the bundle
/// cohomology computable but makes the exact K-theory step refuse.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub warnings: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

fn violation(rule: &'static str, message: String) -> Violation {
    Violation { rule, message }
}

/// Checks the standing hypotheses. Deterministic and order-stable: rules
/// are checked in a fixed order and degrees ascend within each rule.
pub fn validate(s: &SpaceInput) -> ValidationReport {
    let mut report = ValidationReport::default();
    let n = s.dim_n;

    if n < 2 {
        report.violations.push(violation(
            "dimension",
            format!("dim must be at least 2, got {n}"),
        ));
    }
    if s.rank < 1 {
        report
            .violations
            .push(violation("rank", "rank must be at least 1".to_string()));
    }
    if s.cohomology.len() != n + 1 {
        report.violations.push(violation(
            "cohomology-length",
            format!(
                "expected cohomology in degrees 0..={n} ({} groups), got {}",
                n + 1,
                s.cohomology.len()
            ),
        ));
    }
    if !s.orientable {
        report.violations.push(violation(
            "orientability",
            "the space must be orientable".to_string(),
        ));
    }
    if s.cohomology.get(0) != FgAbGroup::free(1) {
        report.violations.push(violation(
            "connectedness",
            format!("H0 must be Z (connected space), got {}", s.cohomology.get(0)),
        ));
    }
    if !s.cohomology.get(1).is_free() {
        report.violations.push(violation(
            "h1-torsion-free",
            format!("H1 is always torsion free, got {}", s.cohomology.get(1)),
        ));
    }
    match (s.compact, s.euler_char) {
        (true, None) => report.violations.push(violation(
            "euler-declaration",
            "compact spaces must declare euler".to_string(),
        )),
        (false, Some(chi)) => report.violations.push(violation(
            "euler-declaration",
            format!("noncompact spaces must not declare euler (got {chi})"),
        )),
        _ => {}
    }
    if !s.compact && !s.cohomology.get(n).is_trivial() {
        report.violations.push(violation(
            "noncompact-top-degree",
            format!("H{n} must vanish for noncompact spaces, got {}", s.cohomology.get(n)),
        ));
    }
    if let (true, Some(chi)) = (s.compact, s.euler_char) {
        let sum = s.cohomology.alternating_rank_sum();
        if chi != sum {
            report.violations.push(violation(
                "euler-mismatch",
                format!("declared euler {chi} but alternating rank sum is {sum}"),
            ));
        }
        if n % 2 == 1 && chi != 0 {
            report.violations.push(violation(
                "odd-dimensional-euler",
                format!("compact odd-dimensional spaces have euler 0, got {chi}"),
            ));
        }
    }
    let torsion_degrees = s.cohomology.torsion_degrees();
    if s.compact && s.orientable && torsion_degrees.is_empty() && s.cohomology.len() == n + 1 {
        for i in 0..=n {
            let low = s.cohomology.get(i).rank();
            let high = s.cohomology.get(n - i).rank();
            if low != high {
                report.violations.push(violation(
                    "poincare-duality",
                    format!("rank H{i} = {low} but rank H{} = {high}", n - i),
                ));
            }
        }
    }
    if !torsion_degrees.is_empty() {
        let degrees: Vec<String> = torsion_degrees.iter().map(|d| format!("H{d}")).collect();
        report.warnings.push(format!(
            "torsion in {}: bundle cohomology is still computed, but the exact K-theory formulas require torsion-free cohomology and will refuse",
            degrees.join(", ")
        ));
    }
    report
}

/// Errors from `parse_space_file`. Syntax-level problems carry the
/// offending line number.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpaceFileError {
    #[error("line {line}: expected `key = value`, got `{text}`")]
    Syntax { line: usize, text: String },
    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: duplicate key `{key}`")]
    DuplicateKey { line: usize, key: String },
    #[error("missing key: {key}")]
    MissingKey { key: String },
    #[error("line {line}: bad value for `{key}`: {message}")]
    BadValue {
        line: usize,
        key: String,
        message: String,
    },
    #[error("line {line}: H1 must be torsion free, got `{value}`")]
    H1Torsion { line: usize, value: String },
}

/// Parses the line-oriented space-file format:
///
/// ```text
/// name = genus2-surface
/// dim = 2
/// rank = 1
/// compact = true
/// orientable = true
/// euler = -2
/// H0 = Z
/// H1 = Z^4
/// H2 = Z
/// ```
///
/// `#` starts a comment. Group values use the grammar
/// `0 | Z | Z^r | Z/d | sums with +`. Every degree `0..=dim` must appear,
/// `euler` exactly when `compact = true`. Unknown keys are rejected.
/// Torsion in `H1` is rejected here already since no space has any.
pub fn parse_space_file(text: &str) -> Result<SpaceInput, SpaceFileError> {
    let mut seen: BTreeMap<String, (usize, String)> = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(SpaceFileError::Syntax {
                line: line_no,
                text: line.to_string(),
            });
        };
        let key = key.trim().to_string();
        let value = value.trim().to_string();
        if key.is_empty() || value.is_empty() {
            return Err(SpaceFileError::Syntax {
                line: line_no,
                text: line.to_string(),
            });
        }
        if seen.contains_key(&key) {
            return Err(SpaceFileError::DuplicateKey { line: line_no, key });
        }
        seen.insert(key, (line_no, value));
    }

    let mut take = |key: &str| seen.remove(key);

    let (_, name) = take("name").ok_or(SpaceFileError::MissingKey {
        key: "name".to_string(),
    })?;

    let dim_n = parse_scalar::<usize>(&mut take, "dim")?.ok_or(SpaceFileError::MissingKey {
        key: "dim".to_string(),
    })?;
    let rank = parse_scalar::<u32>(&mut take, "rank")?.ok_or(SpaceFileError::MissingKey {
        key: "rank".to_string(),
    })?;
    let compact = parse_scalar::<bool>(&mut take, "compact")?.ok_or(SpaceFileError::MissingKey {
        key: "compact".to_string(),
    })?;
    let orientable =
        parse_scalar::<bool>(&mut take, "orientable")?.ok_or(SpaceFileError::MissingKey {
            key: "orientable".to_string(),
        })?;
    let euler_char = parse_scalar::<i64>(&mut take, "euler")?;
    let assume_baum_connes = parse_scalar::<bool>(&mut take, "assume_baum_connes")?.unwrap_or(false);

    if compact && euler_char.is_none() {
        return Err(SpaceFileError::MissingKey {
            key: "euler (required for compact spaces)".to_string(),
        });
    }

    // no pre-allocation: a bogus huge `dim` should fail on the first
    // missing degree key instead of exhausting memory
    let mut groups = Vec::new();
    for d in 0..=dim_n {
        let key = format!("H{d}");
        let (line, value) = seen.remove(&key).ok_or(SpaceFileError::MissingKey {
            key: key.clone(),
        })?;
        let group: FgAbGroup = value.parse().map_err(|e: GroupParseError| {
            SpaceFileError::BadValue {
                line,
                key: key.clone(),
                message: e.to_string(),
            }
        })?;
        if d == 1 && !group.is_free() {
            return Err(SpaceFileError::H1Torsion { line, value });
        }
        groups.push(group);
    }

    if let Some((line, key)) = seen
        .into_iter()
        .map(|(key, (line, _))| (line, key))
        .min()
    {
        return Err(SpaceFileError::UnknownKey { line, key });
    }

    Ok(SpaceInput {
        name,
        dim_n,
        rank,
        compact,
        orientable,
        euler_char,
        cohomology: GradedGroup::new(groups),
        assume_baum_connes,
    })
}

fn parse_scalar<T: std::str::FromStr>(
    take: &mut impl FnMut(&str) -> Option<(usize, String)>,
    key: &str,
) -> Result<Option<T>, SpaceFileError> {
    match take(key) {
        None => Ok(None),
        Some((line, value)) => value.parse::<T>().map(Some).map_err(|_| {
            SpaceFileError::BadValue {
                line,
                key: key.to_string(),
                message: format!("cannot parse `{value}`"),
            }
        }),
    }
}
