//! Pipeline driver and report rendering for the CLI: runs
//! parse -> validate -> bundle cohomology -> K-theory -> consistency
//! check, and renders the result as a human report or a JSON object.

use serde_json::{json, Value};

use boundaryk_core::abelian::{OracleRefused, DEFAULT_EXTENSION_CAP};
use boundaryk_core::ahss::{check_result, consistent_k_groups, torsion_bounds, BoundCheck, Parity};
use boundaryk_core::gysin::{closed_form_cohomology, gysin_solver, BundleCohomology, CaseTag};
use boundaryk_core::ktheory::{boundary_k_theory, Determinacy, KTheoryError, KTheoryResult};
use boundaryk_core::spaces::{parse_space_file, validate, SpaceFileError, SpaceInput, Violation};

#[derive(Clone, Copy, Debug)]
pub struct ComputeOptions {
    pub explain: bool,
    pub ahss_check: bool,
}

impl Default for ComputeOptions {
    fn default() -> Self {
        ComputeOptions {
            explain: false,
            ahss_check: true,
        }
    }
}

/// Pipeline failures, ordered by exit code: parse errors exit 1,
/// validation failures exit 2, hypothesis refusals exit 3.
#[derive(Debug)]
pub enum PipelineError {
    Parse(SpaceFileError),
    Validation(Vec<Violation>),
    Hypothesis(KTheoryError),
}

impl PipelineError {
    pub fn exit_code(&self) -> i32 {
        match self {
            PipelineError::Parse(_) => 1,
            PipelineError::Validation(_) => 2,
            PipelineError::Hypothesis(_) => 3,
        }
    }
}

impl std::fmt::Display for PipelineError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PipelineError::Parse(e) => write!(f, "{e}"),
            PipelineError::Validation(violations) => {
                writeln!(f, "validation failed:")?;
                for v in violations {
                    writeln!(f, "  {v}")?;
                }
                Ok(())
            }
            PipelineError::Hypothesis(e) => write!(f, "hypothesis refused: {e}"),
        }
    }
}

/// Outcome of the consistency layer for reporting.
pub enum AhssOutcome {
    Skipped,
    /// Bound check plus (when the oracle answered) filtration membership.
    Checked { ok: bool, detail: String },
}

pub struct PipelineOutput {
    pub space: SpaceInput,
    pub warnings: Vec<String>,
    pub bundle: BundleCohomology,
    pub result: KTheoryResult,
    pub ahss: AhssOutcome,
}

pub fn run_pipeline(text: &str, opts: ComputeOptions) -> Result<PipelineOutput, PipelineError> {
    let space = parse_space_file(text).map_err(PipelineError::Parse)?;
    let report = validate(&space);
    if !report.is_valid() {
        return Err(PipelineError::Validation(report.violations));
    }

    let bundle = closed_form_cohomology(&space);
    debug_assert_eq!(bundle, gysin_solver(&space), "cohomology routes disagree");

    let result = boundary_k_theory(&space).map_err(PipelineError::Hypothesis)?;

    let ahss = if opts.ahss_check {
        evaluate_ahss(&space, &bundle, &result)
    } else {
        AhssOutcome::Skipped
    };

    Ok(PipelineOutput {
        space,
        warnings: report.warnings,
        bundle,
        result,
        ahss,
    })
}

fn evaluate_ahss(
    space: &SpaceInput,
    bundle: &BundleCohomology,
    result: &KTheoryResult,
) -> AhssOutcome {
    let bounds = torsion_bounds(&bundle.groups);
    let bound_check = check_result(result, &bounds, space.dim_n);
    let mut ok = bound_check.passes();
    let mut notes: Vec<String> = Vec::new();
    match &bound_check {
        BoundCheck::Pass => notes.push("torsion within bounds".to_string()),
        BoundCheck::Fail { reason } => notes.push(format!("bound violated: {reason}")),
        BoundCheck::VacuouslyPasses => {
            notes.push("vacuous for a torsion-bounded result".to_string())
        }
    }
    if result.is_exact() {
        match membership(space, bundle, result) {
            Ok(true) => notes.push("filtration extensions consistent".to_string()),
            Ok(false) => {
                ok = false;
                notes.push("not a solution of the filtration extensions".to_string());
            }
            Err(refused) => notes.push(format!("oracle skipped: {refused}")),
        }
    }
    AhssOutcome::Checked {
        ok,
        detail: notes.join("; "),
    }
}

fn membership(
    space: &SpaceInput,
    bundle: &BundleCohomology,
    result: &KTheoryResult,
) -> Result<bool, OracleRefused> {
    let set0 = consistent_k_groups(
        &bundle.groups,
        Parity::of(space.dim_n),
        DEFAULT_EXTENSION_CAP,
    )?;
    let set1 = consistent_k_groups(
        &bundle.groups,
        Parity::of(space.dim_n + 1),
        DEFAULT_EXTENSION_CAP,
    )?;
    Ok(set0.contains(&result.k0) && set1.contains(&result.k1))
}

pub fn render_human(out: &PipelineOutput, opts: ComputeOptions) -> String {
    let s = &out.space;
    let mut lines: Vec<String> = Vec::new();
    lines.push(format!(
        "space: {} (n = {}, rank {}, {}, {})",
        s.name,
        s.dim_n,
        s.rank,
        if s.compact { "compact" } else { "noncompact" },
        if s.orientable {
            "orientable"
        } else {
            "non-orientable"
        }
    ));
    match s.euler_char {
        Some(chi) => lines.push(format!("chi: {chi}")),
        None => lines.push(format!(
            "chi: n/a (alternating rank sum {})",
            s.cohomology.alternating_rank_sum()
        )),
    }
    if out.warnings.is_empty() {
        lines.push("validation: ok".to_string());
    } else {
        lines.push(format!("validation: ok ({} warning(s))", out.warnings.len()));
        for w in &out.warnings {
            lines.push(format!("  warning: {w}"));
        }
    }
    lines.push(format!("case: {}", out.bundle.case_tag.describe()));
    if s.rank >= 2 {
        lines.push(
            "note: rank >= 2, the fiber is not a sphere; the sphere-bundle degree formulas are applied formally"
                .to_string(),
        );
    }
    let top = 2 * s.dim_n - 1;
    lines.push(format!("H*(unit sphere bundle), degrees 0..{top}:"));
    for d in 0..=top {
        lines.push(format!("  H^{d} = {}", out.bundle.groups.get(d)));
    }
    if opts.explain {
        lines.extend(explain_lines(out));
    }
    match &out.ahss {
        AhssOutcome::Skipped => lines.push("AHSS check: skipped".to_string()),
        AhssOutcome::Checked { ok, detail } => {
            lines.push(format!(
                "AHSS check: {} ({detail})",
                if *ok { "ok" } else { "FAILED" }
            ));
        }
    }
    lines.push(format!(
        "K0 = {}, K1 = {}, unit: {}",
        out.result.k0_string(),
        out.result.k1_string(),
        out.result.unit_string()
    ));
    lines.join("\n")
}

fn explain_lines(out: &PipelineOutput) -> Vec<String> {
    let n = out.space.dim_n;
    let chi = out.space.euler_characteristic();
    let mut lines = vec!["explain:".to_string()];
    if n >= 2 {
        lines.push(format!(
            "  degrees 0..{}: H^i(E) = H^i(base)",
            n.saturating_sub(2)
        ));
    }
    let (deg_nm1, deg_n) = match out.bundle.case_tag {
        CaseTag::CompactChiZero => (
            format!("H^{}(base) + Z", n - 1),
            "H^1(base) + Z".to_string(),
        ),
        CaseTag::CompactChiOne => (format!("H^{}(base)", n - 1), "H^1(base)".to_string()),
        CaseTag::CompactChiOther => (
            format!("H^{}(base) + Z", n - 1),
            format!("H^1(base) + Z/{}", chi.unsigned_abs()),
        ),
        CaseTag::Noncompact => (
            format!("H^{}(base) + Z", n - 1),
            "H^1(base)".to_string(),
        ),
    };
    lines.push(format!("  degree {} (= n-1): {}", n - 1, deg_nm1));
    lines.push(format!("  degree {n} (= n): {}", deg_n));
    lines.push(format!(
        "  degrees {}..{}: H^i(E) = H^(i-n+1)(base)",
        n + 1,
        2 * n - 1
    ));
    let k0_degrees: Vec<String> = (0..2 * n).filter(|d| d % 2 == n % 2).map(|d| format!("H^{d}")).collect();
    let k1_degrees: Vec<String> = (0..2 * n).filter(|d| d % 2 != n % 2).map(|d| format!("H^{d}")).collect();
    lines.push(format!(
        "  index shift by n = {n}: K0 = {}, K1 = {}",
        k0_degrees.join(" + "),
        k1_degrees.join(" + ")
    ));
    lines
}

pub fn render_json(out: &PipelineOutput) -> Value {
    let s = &out.space;
    let bundle: Vec<Value> = (0..2 * s.dim_n)
        .map(|d| Value::String(out.bundle.groups.get(d).to_string()))
        .collect();
    json!({
        "name": s.name,
        "n": s.dim_n,
        "rank": s.rank,
        "compact": s.compact,
        "chi": match s.euler_char {
            Some(chi) => json!(chi),
            None => Value::Null,
        },
        "case": out.bundle.case_tag.token(),
        "bundle_cohomology": bundle,
        "k0": out.result.k0_string(),
        "k1": out.result.k1_string(),
        "unit_class": out.result.unit_string(),
        "determinacy": match out.result.determinacy {
            Determinacy::Exact => "exact",
            Determinacy::TorsionBounded { .. } => "torsion_bounded",
        },
        "ahss_ok": match &out.ahss {
            AhssOutcome::Skipped => Value::Null,
            AhssOutcome::Checked { ok, .. } => json!(ok),
        },
    })
}
