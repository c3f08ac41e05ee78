//! The report emitted by a spec run: a versioned, deterministic data
//! model serialized to JSON (schema below) or rendered as text.
//!
//! Every arbitrary-precision integer is serialized as a decimal string so
//! no consumer ever rounds one through a float. Serialization is
//! deterministic: field order is declaration order and every collection is
//! ordered, so two runs of the same spec produce byte-identical JSON
//! except for the `generated_at` timestamp and the `cache` section (hit
//! counts depend on store history); [`stable_json`] strips exactly those
//! two fields for comparisons.

use crate::groups::AbelianGroup;
use crate::invariants::{EntryValue, InvariantReport};
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub tool: ToolInfo,
    /// RFC 3339 timestamp; excluded from determinism comparisons.
    pub generated_at: String,
    pub algebra: AlgebraEcho,
    pub tasks: Vec<TaskReport>,
    pub findings: Vec<Finding>,
    /// Store activity for this run; excluded from determinism comparisons.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cache: Option<CacheEcho>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ToolInfo {
    pub name: String,
    pub version: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgebraEcho {
    pub name: String,
    pub field: String,
    pub generators: Vec<GeneratorEcho>,
    pub relations: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorEcho {
    pub name: String,
    pub degree: u32,
}

/// A hypothesis-violation observation. Findings do not stop the run; a
/// report with findings and no errors exits with status 2.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Finding {
    pub kind: String,
    /// 1-based position in the declared task list.
    pub task_number: usize,
    pub task_name: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CacheEcho {
    pub enabled: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub directory: Option<String>,
    pub hits: u64,
    pub misses: u64,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "task", rename_all = "kebab-case")]
pub enum TaskReport {
    Hilbert(HilbertReport),
    KoszulDual(KoszulDualReport),
    KoszulCheck(KoszulCheckReport),
    Invariants(InvariantsTaskReport),
    TheoremLab(TheoremLabReport),
    GorensteinHint(GorensteinHintReport),
    Orlov(OrlovTaskReport),
    /// A task that failed; always the last entry, since execution stops
    /// at the first error.
    Error(ErrorReport),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HilbertReport {
    pub n: u32,
    pub guard: u32,
    /// Graded dimensions in degrees `0..=n`, as decimal strings.
    pub dimensions: Vec<String>,
    /// Coefficients of the inverse series through degree `n`.
    pub inverse: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detection: Option<DetectionEcho>,
    /// Why detection came up empty, when it did.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detection_note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DetectionEcho {
    /// Degree of the detected inverse polynomial.
    pub d: usize,
    /// Unsigned coefficients `1, b1, ..., bd`.
    pub betti: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KoszulDualReport {
    pub generators: Vec<GeneratorEcho>,
    pub relations: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KoszulCheckReport {
    pub n: u32,
    pub dimensions: Vec<String>,
    pub dual_dimensions: Vec<String>,
    /// Whether `h_dual(t) * h(-t) = 1` through degree `n`.
    pub holds: bool,
}

/// Where the Betti data a task consumed came from: a declared `hilbert`
/// task, or an implicit computation at the default parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BettiEcho {
    pub n: u32,
    pub guard: u32,
    pub implicit: bool,
    /// Unsigned coefficients `1, b1, ..., bd`.
    pub values: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupEcho {
    pub free_rank: usize,
    /// Invariant factors in divisibility order, as decimal strings.
    pub torsion: Vec<String>,
    pub display: String,
}

impl From<&AbelianGroup> for GroupEcho {
    fn from(g: &AbelianGroup) -> GroupEcho {
        GroupEcho {
            free_rank: g.free_rank(),
            torsion: g.torsion().iter().map(|t| t.to_string()).collect(),
            display: g.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ValueEcho {
    /// A finitely generated abelian group, exactly.
    Group(GroupEcho),
    /// A vector-space dimension over the base field.
    Dimension { dimension: u64 },
    /// Free of the given rank only after inverting `beta`; torsion exact.
    Localized { rank: usize, beta: String, torsion: GroupEcho },
}

impl From<&EntryValue> for ValueEcho {
    fn from(v: &EntryValue) -> ValueEcho {
        match v {
            EntryValue::Group(g) => ValueEcho::Group(g.into()),
            EntryValue::Dimension(d) => ValueEcho::Dimension { dimension: *d },
            EntryValue::Localized { rank, beta, torsion } => ValueEcho::Localized {
                rank: *rank,
                beta: beta.to_string(),
                torsion: torsion.into(),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntryEcho {
    pub m: i64,
    pub value: ValueEcho,
    pub display: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ApplicabilityEcho {
    pub formula_used: bool,
    pub splits_as_copies: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub splits_after_inverting: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exceptional_collection_len: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReductionEcho {
    pub dprime: usize,
    pub betti: Vec<String>,
    pub betaprime: String,
}

/// Shared body of the `invariants` and `orlov` task reports: the table
/// identity and the evaluated entries.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvaluationEcho {
    pub invariant: String,
    pub base_field: String,
    pub ring: String,
    pub generator_note: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reduction: Option<ReductionEcho>,
    pub applicability: ApplicabilityEcho,
    pub entries: Vec<EntryEcho>,
}

impl From<&InvariantReport> for EvaluationEcho {
    fn from(r: &InvariantReport) -> EvaluationEcho {
        EvaluationEcho {
            invariant: r.invariant.clone(),
            base_field: r.base_label.clone(),
            ring: r.ring.label(),
            generator_note: r.generator_note.clone(),
            reduction: r.reduction.as_ref().map(|red| ReductionEcho {
                dprime: red.dprime,
                betti: red.betti.iter().map(|b| b.to_string()).collect(),
                betaprime: red.betaprime.to_string(),
            }),
            applicability: ApplicabilityEcho {
                formula_used: r.applicability.formula_used,
                splits_as_copies: r.applicability.splits_as_copies,
                splits_after_inverting: r
                    .applicability
                    .splits_after_inverting
                    .as_ref()
                    .map(|b| b.to_string()),
                exceptional_collection_len: r.applicability.exceptional_collection_len,
            },
            entries: r
                .entries
                .iter()
                .map(|(m, v)| EntryEcho { m: *m, value: v.into(), display: v.to_string() })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InvariantsTaskReport {
    pub name: String,
    pub base: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table_file: Option<String>,
    pub from: i64,
    pub to: i64,
    pub betti: BettiEcho,
    pub evaluation: EvaluationEcho,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrlovTaskReport {
    pub l: u32,
    pub name: String,
    pub base: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table_file: Option<String>,
    pub from: i64,
    pub to: i64,
    pub evaluation: EvaluationEcho,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoremLabReport {
    pub w: i64,
    pub trials: u32,
    pub seed: u64,
    pub moduli: Vec<u64>,
    pub betti: BettiEcho,
    pub runs: Vec<ModulusRun>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModulusRun {
    pub modulus: u64,
    pub dprime: usize,
    pub betaprime: String,
    pub reduced_betti: Vec<String>,
    pub injective_over_rationals: bool,
    pub injective_over_modulus: bool,
    pub quotient_killed: bool,
    /// Coefficients of the inverse of `t`, absent when `d' = 0`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_inverse: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_inverse_verified: Option<bool>,
    pub cokernel: GroupEcho,
    pub cokernel_matches_dprime: bool,
    /// Same cokernel at window `w` and `w + 5`.
    pub stable_under_window_growth: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GorensteinHintReport {
    pub betti: BettiEcho,
    pub d: usize,
    pub monic: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub candidate_l: Option<usize>,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorReport {
    pub failed_task: String,
    pub message: String,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Report, serde_json::Error> {
        serde_json::from_str(text)
    }
}

/// The determinism view of a report: JSON with the volatile fields
/// (`generated_at`, `cache`) removed. Two runs of the same spec agree on
/// this string byte for byte, whatever the store did.
pub fn stable_json(report_json: &str) -> Result<String, serde_json::Error> {
    let mut value: serde_json::Value = serde_json::from_str(report_json)?;
    if let Some(map) = value.as_object_mut() {
        map.remove("generated_at");
        map.remove("cache");
    }
    let mut s = serde_json::to_string_pretty(&value).expect("value reserializes");
    s.push('\n');
    Ok(s)
}

fn join(values: &[String]) -> String {
    values.join(", ")
}

/// Renders the human-readable form of a report.
pub fn render_text(report: &Report) -> String {
    let mut out = String::new();
    let w = &mut out;
    let _ = writeln!(
        w,
        "{} {} report (schema {}), generated {}",
        report.tool.name, report.tool.version, report.schema_version, report.generated_at
    );
    let a = &report.algebra;
    let _ = writeln!(w, "\nalgebra {} over {}", a.name, a.field);
    let gens: Vec<String> =
        a.generators.iter().map(|g| format!("{} (degree {})", g.name, g.degree)).collect();
    let _ = writeln!(w, "  generators: {}", gens.join(", "));
    if a.relations.is_empty() {
        let _ = writeln!(w, "  relations: none (free algebra)");
    } else {
        let _ = writeln!(w, "  relations:");
        for r in &a.relations {
            let _ = writeln!(w, "    {r}");
        }
    }
    for (i, task) in report.tasks.iter().enumerate() {
        let _ = writeln!(w);
        render_task_text(w, i + 1, task);
    }
    let _ = writeln!(w);
    if report.findings.is_empty() {
        let _ = writeln!(w, "findings: none");
    } else {
        let _ = writeln!(w, "findings:");
        for f in &report.findings {
            let _ = writeln!(w, "  [{}] task {} ({}): {}", f.kind, f.task_number, f.task_name, f.message);
        }
    }
    if let Some(c) = &report.cache {
        if c.enabled {
            let dir = c.directory.as_deref().unwrap_or("?");
            let _ =
                writeln!(w, "cache: {} ({} hits, {} misses)", dir, c.hits, c.misses);
            for warning in &c.warnings {
                let _ = writeln!(w, "  warning: {warning}");
            }
        } else {
            let _ = writeln!(w, "cache: disabled");
        }
    }
    out
}

fn render_evaluation_text(w: &mut String, e: &EvaluationEcho) {
    let _ = writeln!(
        w,
        "  table {} of {}, linear over {}, generator: {}",
        e.invariant, e.base_field, e.ring, e.generator_note
    );
    if let Some(r) = &e.reduction {
        let _ = writeln!(
            w,
            "  reduction in {}: d' = {}, coefficients {}, leading {}",
            e.ring,
            r.dprime,
            join(&r.betti),
            r.betaprime
        );
    }
    let ap = &e.applicability;
    if let Some(l) = ap.exceptional_collection_len {
        let _ = writeln!(w, "  via exceptional collection of length {l}");
    } else if ap.splits_as_copies {
        let _ = writeln!(w, "  tensor identity applies; splits as plain copies of the base value");
    } else if let Some(beta) = &ap.splits_after_inverting {
        let _ = writeln!(w, "  tensor identity applies; splits after inverting {beta}");
    }
    for entry in &e.entries {
        let _ = writeln!(w, "  m = {}: {}", entry.m, entry.display);
    }
}

fn render_task_text(w: &mut String, number: usize, task: &TaskReport) {
    match task {
        TaskReport::Hilbert(h) => {
            let _ = writeln!(w, "[{number}] hilbert n={} guard={}", h.n, h.guard);
            let _ = writeln!(w, "  dimensions: {}", join(&h.dimensions));
            let _ = writeln!(w, "  inverse:    {}", join(&h.inverse));
            match (&h.detection, &h.detection_note) {
                (Some(d), _) => {
                    let _ = writeln!(
                        w,
                        "  inverse is a polynomial of degree {}: coefficients {}",
                        d.d,
                        join(&d.betti)
                    );
                }
                (None, Some(note)) => {
                    let _ = writeln!(w, "  no polynomial inverse detected: {note}");
                }
                (None, None) => {
                    let _ = writeln!(w, "  no polynomial inverse detected");
                }
            }
        }
        TaskReport::KoszulDual(d) => {
            let _ = writeln!(w, "[{number}] koszul-dual");
            let gens: Vec<String> = d.generators.iter().map(|g| g.name.clone()).collect();
            let _ = writeln!(w, "  dual generators: {}", gens.join(", "));
            let _ = writeln!(w, "  dual relations:");
            for r in &d.relations {
                let _ = writeln!(w, "    {r}");
            }
        }
        TaskReport::KoszulCheck(k) => {
            let _ = writeln!(w, "[{number}] koszul-check n={}", k.n);
            let _ = writeln!(w, "  dimensions:      {}", join(&k.dimensions));
            let _ = writeln!(w, "  dual dimensions: {}", join(&k.dual_dimensions));
            let verdict = if k.holds { "holds" } else { "FAILS" };
            let _ = writeln!(w, "  dual series times alternating series = 1: {verdict}");
        }
        TaskReport::Invariants(i) => {
            let _ = writeln!(
                w,
                "[{number}] invariants name={} base={} from={} to={}",
                i.name, i.base, i.from, i.to
            );
            render_betti_text(w, &i.betti);
            render_evaluation_text(w, &i.evaluation);
        }
        TaskReport::TheoremLab(t) => {
            let moduli: Vec<String> = t.moduli.iter().map(|m| m.to_string()).collect();
            let _ = writeln!(
                w,
                "[{number}] theorem-lab w={} trials={} seed={} ell={}",
                t.w,
                t.trials,
                t.seed,
                moduli.join(",")
            );
            render_betti_text(w, &t.betti);
            for run in &t.runs {
                let _ = writeln!(
                    w,
                    "  modulus {}: d' = {}, leading {}, coefficients {}",
                    run.modulus,
                    run.dprime,
                    run.betaprime,
                    join(&run.reduced_betti)
                );
                let _ = writeln!(
                    w,
                    "    injective over Q: {}; injective over F{}: {}; quotient killed: {}",
                    run.injective_over_rationals,
                    run.modulus,
                    run.injective_over_modulus,
                    run.quotient_killed
                );
                if let Some(u) = &run.t_inverse {
                    let verified = run.t_inverse_verified.unwrap_or(false);
                    let _ = writeln!(
                        w,
                        "    t inverse: {} (verified: {verified})",
                        join(u)
                    );
                }
                let _ = writeln!(
                    w,
                    "    cokernel: {} (matches d': {}, stable in window: {})",
                    run.cokernel.display, run.cokernel_matches_dprime, run.stable_under_window_growth
                );
            }
        }
        TaskReport::GorensteinHint(g) => {
            let _ = writeln!(w, "[{number}] gorenstein-hint");
            render_betti_text(w, &g.betti);
            let _ = writeln!(w, "  monic: {}", g.monic);
            if let Some(l) = g.candidate_l {
                let _ = writeln!(w, "  candidate twist parameter: l = {l}");
            }
            let _ = writeln!(w, "  note: {}", g.note);
        }
        TaskReport::Orlov(o) => {
            let _ = writeln!(
                w,
                "[{number}] orlov l={} name={} base={} from={} to={}",
                o.l, o.name, o.base, o.from, o.to
            );
            render_evaluation_text(w, &o.evaluation);
        }
        TaskReport::Error(e) => {
            let _ = writeln!(w, "[{number}] {} FAILED", e.failed_task);
            let _ = writeln!(w, "  error: {}", e.message);
        }
    }
}

fn render_betti_text(w: &mut String, b: &BettiEcho) {
    let source = if b.implicit { " (computed implicitly)" } else { "" };
    let _ = writeln!(
        w,
        "  inverse coefficients from n={} guard={}{}: {}",
        b.n,
        b.guard,
        source,
        join(&b.values)
    );
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::AbelianGroup;
    use num::BigUint;

    fn sample_report() -> Report {
        let group = AbelianGroup::from_parts(2, vec![BigUint::from(4u32), BigUint::from(12u32)]);
        Report {
            schema_version: SCHEMA_VERSION,
            tool: ToolInfo { name: "qgr".into(), version: "0.1.0".into() },
            generated_at: "2026-01-01T00:00:00Z".into(),
            algebra: AlgebraEcho {
                name: "sample".into(),
                field: "Q".into(),
                generators: vec![
                    GeneratorEcho { name: "x".into(), degree: 1 },
                    GeneratorEcho { name: "y".into(), degree: 1 },
                ],
                relations: vec!["y*x - 2*x*y".into()],
            },
            tasks: vec![
                TaskReport::Hilbert(HilbertReport {
                    n: 4,
                    guard: 2,
                    dimensions: vec!["1".into(), "2".into(), "3".into(), "4".into(), "5".into()],
                    inverse: vec!["1".into(), "-2".into(), "1".into(), "0".into(), "0".into()],
                    detection: Some(DetectionEcho {
                        d: 2,
                        betti: vec!["1".into(), "2".into(), "1".into()],
                    }),
                    detection_note: None,
                }),
                TaskReport::Invariants(InvariantsTaskReport {
                    name: "K".into(),
                    base: "F5".into(),
                    table_file: None,
                    from: 0,
                    to: 1,
                    betti: BettiEcho {
                        n: 4,
                        guard: 2,
                        implicit: false,
                        values: vec!["1".into(), "2".into(), "1".into()],
                    },
                    evaluation: EvaluationEcho {
                        invariant: "K".into(),
                        base_field: "F5".into(),
                        ring: "Z".into(),
                        generator_note: "tensor unit / sphere".into(),
                        reduction: Some(ReductionEcho {
                            dprime: 2,
                            betti: vec!["1".into(), "2".into(), "1".into()],
                            betaprime: "1".into(),
                        }),
                        applicability: ApplicabilityEcho {
                            formula_used: true,
                            splits_as_copies: true,
                            splits_after_inverting: None,
                            exceptional_collection_len: None,
                        },
                        entries: vec![EntryEcho {
                            m: 0,
                            value: ValueEcho::Group((&group).into()),
                            display: group.to_string(),
                        }],
                    },
                }),
                TaskReport::Error(ErrorReport {
                    failed_task: "koszul-dual".into(),
                    message: "relations are not all quadratic".into(),
                }),
            ],
            findings: vec![Finding {
                kind: "koszul-check-failed".into(),
                task_number: 2,
                task_name: "koszul-check".into(),
                message: "product differs from 1 at degree 3".into(),
            }],
            cache: Some(CacheEcho {
                enabled: true,
                directory: Some(".qgr-cache".into()),
                hits: 1,
                misses: 1,
                warnings: vec![],
            }),
        }
    }

    #[test]
    fn json_round_trip_is_a_fixpoint() {
        let report = sample_report();
        let first = report.to_json();
        let parsed = Report::from_json(&first).unwrap();
        assert_eq!(parsed, report);
        let second = parsed.to_json();
        assert_eq!(first, second);
    }

    #[test]
    fn stable_json_strips_only_volatile_fields() {
        let report = sample_report();
        let mut other = report.clone();
        other.generated_at = "2027-12-31T23:59:59Z".into();
        other.cache = Some(CacheEcho {
            enabled: true,
            directory: Some("/elsewhere".into()),
            hits: 99,
            misses: 0,
            warnings: vec!["cache entry x is corrupt".into()],
        });
        assert_ne!(report.to_json(), other.to_json());
        assert_eq!(
            stable_json(&report.to_json()).unwrap(),
            stable_json(&other.to_json()).unwrap()
        );
        let stable = stable_json(&report.to_json()).unwrap();
        assert!(!stable.contains("generated_at"));
        assert!(!stable.contains("cache"));
        assert!(stable.contains("schema_version"));
        // but a genuine content difference survives
        let mut changed = report.clone();
        changed.findings.clear();
        assert_ne!(
            stable_json(&report.to_json()).unwrap(),
            stable_json(&changed.to_json()).unwrap()
        );
    }

    #[test]
    fn group_echo_mirrors_group_structure() {
        let g = AbelianGroup::from_parts(1, vec![BigUint::from(6u32)]);
        let echo: GroupEcho = (&g).into();
        assert_eq!(echo.free_rank, 1);
        assert_eq!(echo.torsion, vec!["6".to_string()]);
        assert_eq!(echo.display, "Z + Z/6");
    }

    #[test]
    fn text_rendering_covers_all_sections() {
        let text = render_text(&sample_report());
        for needle in [
            "algebra sample over Q",
            "generators: x (degree 1), y (degree 1)",
            "[1] hilbert n=4 guard=2",
            "polynomial of degree 2",
            "[2] invariants name=K base=F5 from=0 to=1",
            "m = 0: Z^2 + Z/4 + Z/12",
            "[3] koszul-dual FAILED",
            "findings:",
            "koszul-check-failed",
            "cache: .qgr-cache (1 hits, 1 misses)",
        ] {
            assert!(text.contains(needle), "missing `{needle}` in:\n{text}");
        }
    }
}
