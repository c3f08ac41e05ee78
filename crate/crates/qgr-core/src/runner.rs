//! Executes the task list of a spec file against its algebra and builds
//! the report.
//!
//! Tasks run in declared order. The first task error stops the run (its
//! message becomes the final task entry); hypothesis-violation findings
//! are recorded without stopping. Exit status: 1 if any task errored,
//! else 2 if any finding was recorded, else 0.
//!
//! Tasks that consume Betti data (`invariants`, `theorem-lab`,
//! `gorenstein-hint`) reuse the detection of the most recent `hilbert`
//! task; without one they compute it implicitly at the default window
//! (n = 12, guard = 4) and say so in their `betti` echo.

use crate::cache::GbCache;
use crate::free_algebra::Presentation;
use crate::groebner;
use crate::groups::AbelianGroup;
use crate::hilbert::{
    detect_polynomial, koszul_numeric_check, reduce_mod, BettiData, CoefficientRing,
    HilbertError, TruncatedSeries,
};
use crate::invariants::{
    evaluate_exceptional_collection, evaluate_invariants, BaseInvariantTable, CyclicVariant,
};
use crate::report::*;
use crate::scalar::FieldSpec;
use crate::specfile::{BaseField, SpecFile, Task};
use crate::theorem_lab::{
    build_phi_matrix, check_injectivity, cokernel_truncation, invert_t, phi_kills_quotient,
    t_inverse_verified,
};
use crate::{duality, specfile::SpecError};
use chrono::{SecondsFormat, Utc};
use num::{BigInt, Integer};

const IMPLICIT_HILBERT_N: u32 = 12;
const IMPLICIT_HILBERT_GUARD: u32 = 4;
/// How much wider the verification window grows for the stability check.
const WINDOW_GROWTH: i64 = 5;

/// Exit status of a run, per the reporting contract.
pub fn exit_code(report: &Report) -> i32 {
    if report.tasks.iter().any(|t| matches!(t, TaskReport::Error(_))) {
        1
    } else if !report.findings.is_empty() {
        2
    } else {
        0
    }
}

/// Runs a parsed spec. `Err` only for a spec whose algebra cannot be
/// elaborated at all; every later failure lands inside the report.
pub fn run_spec(spec: &SpecFile, cache: &mut GbCache) -> Result<Report, SpecError> {
    let presentation = spec.to_presentation()?;
    let algebra_name = spec.name.clone().unwrap_or_else(|| "algebra".to_string());

    let mut state = RunState {
        presentation: &presentation,
        algebra_name: &algebra_name,
        cache,
        betti: None,
        betti_failed: None,
        findings: Vec::new(),
        task_number: 0,
        task_name: "",
    };

    let mut tasks = Vec::new();
    for (i, task) in spec.tasks.iter().enumerate() {
        state.task_number = i + 1;
        state.task_name = task_name(task);
        match state.run_task(task) {
            Ok(entry) => tasks.push(entry),
            Err(message) => {
                tasks.push(TaskReport::Error(ErrorReport {
                    failed_task: state.task_name.to_string(),
                    message,
                }));
                break;
            }
        }
    }

    Ok(Report {
        schema_version: SCHEMA_VERSION,
        tool: ToolInfo {
            name: "qgr".to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
        },
        generated_at: Utc::now().to_rfc3339_opts(SecondsFormat::Secs, true),
        algebra: AlgebraEcho {
            name: algebra_name.clone(),
            field: presentation.field().label(),
            generators: presentation
                .generators()
                .iter()
                .map(|g| GeneratorEcho { name: g.name.clone(), degree: g.degree })
                .collect(),
            relations: presentation
                .relations()
                .iter()
                .map(|r| presentation.poly_to_string(r))
                .collect(),
        },
        tasks,
        findings: state.findings,
        cache: Some(CacheEcho {
            enabled: state.cache.enabled(),
            directory: state.cache.directory().map(|p| p.display().to_string()),
            hits: state.cache.hits(),
            misses: state.cache.misses(),
            warnings: state.cache.warnings().to_vec(),
        }),
    })
}

fn task_name(task: &Task) -> &'static str {
    match task {
        Task::Hilbert { .. } => "hilbert",
        Task::KoszulDual => "koszul-dual",
        Task::KoszulCheck { .. } => "koszul-check",
        Task::Invariants { .. } => "invariants",
        Task::TheoremLab { .. } => "theorem-lab",
        Task::GorensteinHint => "gorenstein-hint",
        Task::Orlov { .. } => "orlov",
    }
}

fn strings<T: ToString>(values: &[T]) -> Vec<String> {
    values.iter().map(|v| v.to_string()).collect()
}

struct RunState<'a> {
    presentation: &'a Presentation,
    algebra_name: &'a str,
    cache: &'a mut GbCache,
    /// Detection of the most recent `hilbert` task (explicit or implicit).
    betti: Option<(BettiEcho, BettiData)>,
    /// Why the most recent `hilbert` task detected nothing, so dependent
    /// tasks can fail fast instead of recomputing a known failure.
    betti_failed: Option<String>,
    findings: Vec<Finding>,
    task_number: usize,
    task_name: &'static str,
}

impl RunState<'_> {
    fn finding(&mut self, kind: &str, message: String) {
        self.findings.push(Finding {
            kind: kind.to_string(),
            task_number: self.task_number,
            task_name: self.task_name.to_string(),
            message,
        });
    }

    fn dimensions_of(&mut self, p: &Presentation, n: u32) -> Result<Vec<BigInt>, String> {
        let (gb, _) = self.cache.get_or_compute(p, n).map_err(|e| e.to_string())?;
        Ok(groebner::graded_dimensions(&gb))
    }

    /// The shared hilbert computation: dimensions, inverse series, and
    /// polynomial detection. A sign-pattern break is reported as a
    /// finding, not an error, and leaves the detection empty.
    fn hilbert_data(&mut self, n: u32, guard: u32, implicit: bool) -> Result<HilbertReport, String> {
        if guard == 0 {
            return Err(format!("guard must be positive (got guard={guard})"));
        }
        let algebra = self.presentation;
        let dims = self.dimensions_of(algebra, n)?;
        let series = TruncatedSeries::new(dims.clone());
        let inverse = series.invert().map_err(|e| e.to_string())?;
        let mut detection = None;
        let mut detection_note = None;
        match detect_polynomial(&inverse, guard as usize) {
            Ok(Some(b)) => {
                let echo = BettiEcho {
                    n,
                    guard,
                    implicit,
                    values: strings(b.betti()),
                };
                detection = Some(DetectionEcho { d: b.d(), betti: strings(b.betti()) });
                self.betti = Some((echo, b));
                self.betti_failed = None;
            }
            Ok(None) => {
                self.betti = None;
                let message = format!(
                    "inverse coefficients do not vanish through the last {guard} degrees; \
                     the inverse may not be polynomial, or n={n} may be too small"
                );
                self.betti_failed = Some(message.clone());
                detection_note = Some(message);
            }
            Err(HilbertError::SignPatternViolation { index, value }) => {
                self.betti = None;
                let message = format!(
                    "inverse coefficient at degree {index} is {value}, breaking the \
                     required alternating sign pattern"
                );
                self.finding("sign-pattern-violation", message.clone());
                self.betti_failed = Some(message.clone());
                detection_note = Some(message);
            }
            Err(e) => return Err(e.to_string()),
        }
        Ok(HilbertReport {
            n,
            guard,
            dimensions: strings(&dims),
            inverse: strings(inverse.coeffs()),
            detection,
            detection_note,
        })
    }

    /// Betti data for a dependent task, computing it implicitly when no
    /// `hilbert` task ran before.
    fn betti_for_task(&mut self) -> Result<(BettiEcho, BettiData), String> {
        if self.betti.is_none() {
            if let Some(why) = &self.betti_failed {
                return Err(format!(
                    "no Betti data available ({why}); declare a `hilbert` task with a \
                     larger window"
                ));
            }
            let h = self.hilbert_data(IMPLICIT_HILBERT_N, IMPLICIT_HILBERT_GUARD, true)?;
            if self.betti.is_none() {
                let why = h
                    .detection_note
                    .unwrap_or_else(|| "no polynomial inverse detected".to_string());
                return Err(format!(
                    "no Betti data available ({why}); declare a `hilbert` task with a \
                     larger window"
                ));
            }
        }
        Ok(self.betti.clone().expect("just ensured"))
    }

    fn dual_presentation(&self) -> Result<Presentation, String> {
        let q = duality::to_quadratic(self.presentation).map_err(|e| e.to_string())?;
        let dual = duality::quadratic_dual(&q);
        duality::dual_presentation(&dual, None).map_err(|e| e.to_string())
    }

    fn build_table(
        &self,
        name: &str,
        base: BaseField,
        table_path: Option<&str>,
    ) -> Result<BaseInvariantTable, String> {
        if let Some(path) = table_path {
            let text = std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read table file `{path}`: {e}"))?;
            return BaseInvariantTable::from_json(&text)
                .map_err(|e| format!("table file `{path}`: {e}"));
        }
        match name {
            "K" | "KH" | "Ket" => {
                let BaseField::Finite(q) = base else {
                    return Err(format!(
                        "table `{name}` needs a finite base field (base=F<q>)"
                    ));
                };
                if name == "K" {
                    BaseInvariantTable::k_theory(q).map_err(|e| e.to_string())
                } else {
                    BaseInvariantTable::k_variant(name, q).map_err(|e| e.to_string())
                }
            }
            "THH" => {
                let BaseField::Finite(p) = base else {
                    return Err("table `THH` needs a prime base field (base=F<p>)".to_string());
                };
                BaseInvariantTable::thh(p).map_err(|e| e.to_string())
            }
            "HH" | "HC" | "HP" | "HN" => {
                let variant = CyclicVariant::from_name(name).expect("matched above");
                let field = match base {
                    BaseField::Rationals => FieldSpec::Rational,
                    BaseField::Finite(q) => FieldSpec::Prime(q),
                };
                BaseInvariantTable::cyclic_variant(variant, field).map_err(|e| e.to_string())
            }
            other => Err(format!(
                "unknown invariant table `{other}`; built-ins are K, KH, Ket, THH, HH, HC, \
                 HP, HN (use table=<file> for a custom one)"
            )),
        }
    }

    fn run_task(&mut self, task: &Task) -> Result<TaskReport, String> {
        match task {
            Task::Hilbert { n, guard } => {
                Ok(TaskReport::Hilbert(self.hilbert_data(*n, *guard, false)?))
            }
            Task::KoszulDual => {
                let dual = self.dual_presentation()?;
                Ok(TaskReport::KoszulDual(KoszulDualReport {
                    generators: dual
                        .generators()
                        .iter()
                        .map(|g| GeneratorEcho { name: g.name.clone(), degree: g.degree })
                        .collect(),
                    relations: dual.relations().iter().map(|r| dual.poly_to_string(r)).collect(),
                }))
            }
            Task::KoszulCheck { n } => {
                let dual = self.dual_presentation()?;
                let algebra = self.presentation;
                let dims = self.dimensions_of(algebra, *n)?;
                let dual_dims = self.dimensions_of(&dual, *n)?;
                let holds = koszul_numeric_check(&dims, &dual_dims).map_err(|e| e.to_string())?;
                if !holds {
                    self.finding(
                        "koszul-check-failed",
                        format!(
                            "the dual series times the alternating series differs from 1 \
                             within degree {n}"
                        ),
                    );
                }
                Ok(TaskReport::KoszulCheck(KoszulCheckReport {
                    n: *n,
                    dimensions: strings(&dims),
                    dual_dimensions: strings(&dual_dims),
                    holds,
                }))
            }
            Task::Invariants { name, base, from, to, table } => {
                let (betti_echo, betti) = self.betti_for_task()?;
                let tbl = self.build_table(name, *base, table.as_deref())?;
                let result = evaluate_invariants(self.algebra_name, &betti, &tbl, *from, *to)
                    .map_err(|e| e.to_string())?;
                Ok(TaskReport::Invariants(InvariantsTaskReport {
                    name: name.clone(),
                    base: base.label(),
                    table_file: table.clone(),
                    from: *from,
                    to: *to,
                    betti: betti_echo,
                    evaluation: (&result).into(),
                }))
            }
            Task::TheoremLab { w, trials, seed, moduli } => {
                let (betti_echo, betti) = self.betti_for_task()?;
                if *w < 1 {
                    return Err(format!("window w must be positive (got {w})"));
                }
                let mut runs = Vec::new();
                for &modulus in moduli {
                    runs.push(self.modulus_run(&betti, modulus, *w, *trials, *seed)?);
                }
                Ok(TaskReport::TheoremLab(TheoremLabReport {
                    w: *w,
                    trials: *trials,
                    seed: *seed,
                    moduli: moduli.clone(),
                    betti: betti_echo,
                    runs,
                }))
            }
            Task::GorensteinHint => {
                let (betti_echo, betti) = self.betti_for_task()?;
                let hint = crate::invariants::gorenstein_hint(&betti);
                Ok(TaskReport::GorensteinHint(GorensteinHintReport {
                    betti: betti_echo,
                    d: betti.d(),
                    monic: hint.monic,
                    candidate_l: hint.candidate_l,
                    note: hint.note,
                }))
            }
            Task::Orlov { l, name, base, from, to, table } => {
                let tbl = self.build_table(name, *base, table.as_deref())?;
                let result =
                    evaluate_exceptional_collection(self.algebra_name, *l, &tbl, *from, *to)
                        .map_err(|e| e.to_string())?;
                Ok(TaskReport::Orlov(OrlovTaskReport {
                    l: *l,
                    name: name.clone(),
                    base: base.label(),
                    table_file: table.clone(),
                    from: *from,
                    to: *to,
                    evaluation: (&result).into(),
                }))
            }
        }
    }

    /// One theorem-lab pass at a single modulus: reduce, build the band
    /// matrix, and run every truncation check, recording findings for
    /// failures.
    fn modulus_run(
        &mut self,
        betti: &BettiData,
        modulus: u64,
        w: i64,
        trials: u32,
        seed: u64,
    ) -> Result<ModulusRun, String> {
        FieldSpec::Prime(modulus).validate().map_err(|e| e.to_string())?;
        let rb = reduce_mod(betti, CoefficientRing::Prime(modulus)).map_err(|e| e.to_string())?;
        let mt = build_phi_matrix(&rb, w);

        let injective_over_rationals = check_injectivity(&mt, FieldSpec::Rational);
        let injective_over_modulus = check_injectivity(&mt, FieldSpec::Prime(modulus));
        if !injective_over_rationals || !injective_over_modulus {
            self.finding(
                "injectivity-failure",
                format!("the truncated multiplication map has a kernel at modulus {modulus}, w={w}"),
            );
        }

        let quotient_killed = phi_kills_quotient(&rb, trials, seed);
        if !quotient_killed {
            self.finding(
                "quotient-not-killed",
                format!(
                    "a sampled element survived reduction modulo the image at modulus {modulus}"
                ),
            );
        }

        let (t_inverse, t_inverse_verified_flag) = match invert_t(&rb) {
            Ok(u) => {
                // Report coefficients as residues in [0, modulus).
                let m = BigInt::from(modulus);
                let u: Vec<BigInt> = u.iter().map(|c| c.mod_floor(&m)).collect();
                let ok = t_inverse_verified(&rb, &u);
                if !ok {
                    self.finding(
                        "t-inverse-mismatch",
                        format!("t times its computed inverse is not 1 at modulus {modulus}"),
                    );
                }
                (Some(strings(&u)), Some(ok))
            }
            Err(_) => (None, None),
        };

        let cokernel = cokernel_truncation(&mt);
        let cokernel_matches_dprime = cokernel == AbelianGroup::free(rb.dprime());
        if !cokernel_matches_dprime {
            self.finding(
                "cokernel-mismatch",
                format!(
                    "truncation cokernel at modulus {modulus} is {cokernel}, expected free of \
                     rank {}",
                    rb.dprime()
                ),
            );
        }

        let grown = cokernel_truncation(&build_phi_matrix(&rb, w + WINDOW_GROWTH));
        let stable_under_window_growth = grown == cokernel;
        if !stable_under_window_growth {
            self.finding(
                "window-instability",
                format!(
                    "truncation cokernel at modulus {modulus} changed between w={w} and w={}",
                    w + WINDOW_GROWTH
                ),
            );
        }

        Ok(ModulusRun {
            modulus,
            dprime: rb.dprime(),
            betaprime: rb.betaprime().to_string(),
            reduced_betti: strings(rb.betti()),
            injective_over_rationals,
            injective_over_modulus,
            quotient_killed,
            t_inverse,
            t_inverse_verified: t_inverse_verified_flag,
            cokernel: (&cokernel).into(),
            cokernel_matches_dprime,
            stable_under_window_growth,
        })
    }
}
