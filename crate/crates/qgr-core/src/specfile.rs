//! Algebra spec files: the input format of the command-line tool.
//!
//! A spec file declares a coefficient field, graded generators,
//! homogeneous relations (as expression strings), a task list, and an
//! optional output format. Two encodings are accepted:
//!
//! * a line-oriented text format with named blocks (primary, documented
//!   in the repository README), and
//! * a JSON object with the same content, detected by a leading `{`.
//!
//! ```text
//! field rationals            # or: field prime 5
//!
//! generators
//!   x 1                      # name, degree (degree defaults to 1)
//!   y 1
//! end
//!
//! relations
//!   y*x - 2*x*y
//! end
//!
//! tasks
//!   hilbert n=10 guard=4
//!   invariants name=K base=F5 from=0 to=3
//! end
//!
//! output json
//! ```
//!
//! `#` starts a comment anywhere on a line; blank lines are ignored.

use crate::free_algebra::{Generator, NCPoly, Presentation, PresentationError};
use crate::relparse::{self, ParseError};
use crate::scalar::FieldSpec;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpecError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing `{0}` declaration")]
    MissingBlock(&'static str),
    #[error("{location}: {source}")]
    Relation { location: String, source: ParseError },
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error("invalid JSON spec: {0}")]
    Json(String),
}

/// Output encodings for reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Text,
    Json,
}

impl OutputFormat {
    pub fn from_name(s: &str) -> Option<OutputFormat> {
        match s {
            "text" => Some(OutputFormat::Text),
            "json" => Some(OutputFormat::Json),
            _ => None,
        }
    }
}

/// The base field of an invariant table requested by a task: the
/// rationals, or a finite field named by its cardinality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum BaseField {
    #[serde(serialize_with = "serialize_rational_base")]
    Rationals,
    Finite(u64),
}

fn serialize_rational_base<S: serde::Serializer>(s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str("Q")
}

impl BaseField {
    /// Accepts `Q` / `rationals`, `F<q>`, or a bare cardinality.
    pub fn from_text(s: &str) -> Option<BaseField> {
        match s {
            "Q" | "q" | "rationals" => return Some(BaseField::Rationals),
            _ => {}
        }
        let digits = s.strip_prefix(['F', 'f']).unwrap_or(s);
        digits.parse::<u64>().ok().map(BaseField::Finite)
    }

    pub fn label(&self) -> String {
        match self {
            BaseField::Rationals => "Q".to_string(),
            BaseField::Finite(q) => format!("F{q}"),
        }
    }
}

impl<'de> Deserialize<'de> for BaseField {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<BaseField, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(q) => Ok(BaseField::Finite(q)),
            Raw::Str(s) => BaseField::from_text(&s).ok_or_else(|| {
                serde::de::Error::custom(format!("unrecognized base field `{s}`"))
            }),
        }
    }
}

impl fmt::Display for BaseField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

fn default_hilbert_n() -> u32 {
    12
}
fn default_guard() -> u32 {
    4
}
fn default_koszul_n() -> u32 {
    8
}
fn default_m_from() -> i64 {
    0
}
fn default_m_to() -> i64 {
    3
}
fn default_w() -> i64 {
    20
}
fn default_trials() -> u32 {
    100
}
fn default_moduli() -> Vec<u64> {
    vec![2, 3, 5]
}
fn default_base() -> BaseField {
    BaseField::Rationals
}
fn default_invariant_name() -> String {
    "K".to_string()
}

/// One unit of work requested by a spec file, executed in declared order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "task", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Task {
    /// Graded dimensions to degree `n`, series inversion, and polynomial
    /// detection with `guard` trailing zero coefficients required.
    Hilbert {
        #[serde(default = "default_hilbert_n")]
        n: u32,
        #[serde(default = "default_guard")]
        guard: u32,
    },
    /// Quadratic-dual presentation (requires a quadratic algebra).
    KoszulDual,
    /// Numerical Koszulness: `h_dual(t) * h(-t) = 1` through degree `n`.
    KoszulCheck {
        #[serde(default = "default_koszul_n")]
        n: u32,
    },
    /// Invariant groups of the graded quotient category over `from..=to`,
    /// for a named built-in table (`K`, `KH`, `Ket`, `THH`, `HH`, `HC`,
    /// `HP`, `HN`) over `base`, or a custom table loaded from `table`.
    Invariants {
        #[serde(default = "default_invariant_name")]
        name: String,
        #[serde(default = "default_base")]
        base: BaseField,
        #[serde(default = "default_m_from")]
        from: i64,
        #[serde(default = "default_m_to")]
        to: i64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        table: Option<String>,
    },
    /// Finite-truncation checks of the localization map underlying the
    /// invariant formula, for each modulus in `moduli`.
    TheoremLab {
        #[serde(default = "default_w")]
        w: i64,
        #[serde(default = "default_trials")]
        trials: u32,
        #[serde(default)]
        seed: u64,
        #[serde(default = "default_moduli")]
        moduli: Vec<u64>,
    },
    /// Necessary-condition screen for the Gorenstein property.
    GorensteinHint,
    /// Invariants evaluated through an exceptional collection of length
    /// `l` (the Gorenstein twist parameter) instead of the tensor formula.
    Orlov {
        l: u32,
        #[serde(default = "default_invariant_name")]
        name: String,
        #[serde(default = "default_base")]
        base: BaseField,
        #[serde(default = "default_m_from")]
        from: i64,
        #[serde(default = "default_m_to")]
        to: i64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        table: Option<String>,
    },
}

/// A parsed spec file; relations are kept as strings until
/// [`SpecFile::to_presentation`] elaborates them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecFile {
    /// Optional label echoed in reports.
    pub name: Option<String>,
    pub field: FieldSpec,
    pub generators: Vec<Generator>,
    pub relations: Vec<String>,
    pub tasks: Vec<Task>,
    pub output: Option<OutputFormat>,
}

impl SpecFile {
    /// Parses either encoding, dispatching on a leading `{`.
    pub fn parse(text: &str) -> Result<SpecFile, SpecError> {
        if text.trim_start().starts_with('{') {
            SpecFile::parse_json(text)
        } else {
            SpecFile::parse_text(text)
        }
    }

    /// Elaborates the relation strings into a validated presentation.
    pub fn to_presentation(&self) -> Result<Presentation, SpecError> {
        let context = Presentation::new(self.field, self.generators.clone(), Vec::new())?;
        let mut relations: Vec<NCPoly> = Vec::with_capacity(self.relations.len());
        for (i, text) in self.relations.iter().enumerate() {
            let poly = relparse::parse_relation(text, &context).map_err(|source| {
                SpecError::Relation { location: format!("relation {} (`{text}`)", i + 1), source }
            })?;
            relations.push(poly);
        }
        Ok(Presentation::new(self.field, self.generators.clone(), relations)?)
    }

    fn parse_json(text: &str) -> Result<SpecFile, SpecError> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct RawSpec {
            #[serde(default)]
            name: Option<String>,
            field: RawField,
            generators: Vec<RawGenerator>,
            #[serde(default)]
            relations: Vec<String>,
            #[serde(default)]
            tasks: Vec<Task>,
            #[serde(default)]
            output: Option<OutputFormat>,
        }
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum RawField {
            Named(String),
            Prime { prime: u64 },
        }
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct RawGenerator {
            name: String,
            #[serde(default = "default_degree")]
            degree: u32,
        }
        fn default_degree() -> u32 {
            1
        }

        let raw: RawSpec =
            serde_json::from_str(text).map_err(|e| SpecError::Json(e.to_string()))?;
        let field = match raw.field {
            RawField::Named(name) if name == "rationals" || name == "Q" => FieldSpec::Rational,
            RawField::Named(name) => {
                return Err(SpecError::Json(format!("unrecognized field `{name}`")))
            }
            RawField::Prime { prime } => FieldSpec::Prime(prime),
        };
        let generators = raw
            .generators
            .into_iter()
            .map(|g| Generator { name: g.name, degree: g.degree })
            .collect();
        Ok(SpecFile {
            name: raw.name,
            field,
            generators,
            relations: raw.relations,
            tasks: raw.tasks,
            output: raw.output,
        })
    }

    fn parse_text(text: &str) -> Result<SpecFile, SpecError> {
        let mut name: Option<String> = None;
        let mut field: Option<FieldSpec> = None;
        let mut generators: Option<Vec<Generator>> = None;
        let mut relations: Option<Vec<String>> = None;
        let mut tasks: Option<Vec<Task>> = None;
        let mut output: Option<OutputFormat> = None;

        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, raw)| {
                let stripped = match raw.find('#') {
                    Some(pos) => &raw[..pos],
                    None => raw,
                };
                (i + 1, stripped.trim())
            })
            .filter(|(_, l)| !l.is_empty());

        while let Some((line, content)) = lines.next() {
            let mut words = content.split_whitespace();
            let head = words.next().expect("blank lines filtered out");
            match head {
                "name" => {
                    if name.is_some() {
                        return err(line, "duplicate `name` declaration");
                    }
                    let value = words
                        .next()
                        .ok_or_else(|| syntax(line, "expected a label after `name`"))?;
                    reject_trailing(line, words)?;
                    name = Some(value.to_string());
                }
                "field" => {
                    if field.is_some() {
                        return err(line, "duplicate `field` declaration");
                    }
                    field = Some(parse_field_line(line, &mut words)?);
                    reject_trailing(line, words)?;
                }
                "generators" => {
                    if generators.is_some() {
                        return err(line, "duplicate `generators` block");
                    }
                    reject_trailing(line, words)?;
                    generators = Some(parse_generator_block(line, &mut lines)?);
                }
                "relations" => {
                    if relations.is_some() {
                        return err(line, "duplicate `relations` block");
                    }
                    reject_trailing(line, words)?;
                    let mut block = Vec::new();
                    let mut closed = false;
                    for (_, l) in lines.by_ref() {
                        if l == "end" {
                            closed = true;
                            break;
                        }
                        block.push(l.to_string());
                    }
                    if !closed {
                        return err(line, "`relations` block not closed with `end`");
                    }
                    relations = Some(block);
                }
                "tasks" => {
                    if tasks.is_some() {
                        return err(line, "duplicate `tasks` block");
                    }
                    reject_trailing(line, words)?;
                    tasks = Some(parse_task_block(line, &mut lines)?);
                }
                "output" => {
                    if output.is_some() {
                        return err(line, "duplicate `output` declaration");
                    }
                    let name = words
                        .next()
                        .ok_or_else(|| syntax(line, "expected `output text` or `output json`"))?;
                    output = Some(OutputFormat::from_name(name).ok_or_else(|| {
                        syntax(line, format!("unrecognized output format `{name}`"))
                    })?);
                    reject_trailing(line, words)?;
                }
                other => {
                    return err(
                        line,
                        format!(
                            "unrecognized declaration `{other}` (expected `name`, `field`, \
                             `generators`, `relations`, `tasks`, or `output`)"
                        ),
                    );
                }
            }
        }

        Ok(SpecFile {
            name,
            field: field.ok_or(SpecError::MissingBlock("field"))?,
            generators: generators.ok_or(SpecError::MissingBlock("generators"))?,
            relations: relations.unwrap_or_default(),
            tasks: tasks.unwrap_or_default(),
            output,
        })
    }

    /// Renders a presentation plus a task list back into the text format;
    /// the result parses to an equal spec.
    pub fn render(
        name: Option<&str>,
        p: &Presentation,
        tasks: &[Task],
        output: Option<OutputFormat>,
    ) -> String {
        let mut out = String::new();
        if let Some(label) = name {
            out.push_str(&format!("name {label}\n"));
        }
        match p.field() {
            FieldSpec::Rational => out.push_str("field rationals\n"),
            FieldSpec::Prime(q) => out.push_str(&format!("field prime {q}\n")),
        }
        out.push_str("\ngenerators\n");
        for g in p.generators() {
            out.push_str(&format!("  {} {}\n", g.name, g.degree));
        }
        out.push_str("end\n");
        if !p.relations().is_empty() {
            out.push_str("\nrelations\n");
            for r in p.relations() {
                out.push_str(&format!("  {}\n", p.poly_to_string(r)));
            }
            out.push_str("end\n");
        }
        if !tasks.is_empty() {
            out.push_str("\ntasks\n");
            for t in tasks {
                out.push_str(&format!("  {}\n", render_task(t)));
            }
            out.push_str("end\n");
        }
        if let Some(fmt) = output {
            let name = match fmt {
                OutputFormat::Text => "text",
                OutputFormat::Json => "json",
            };
            out.push_str(&format!("\noutput {name}\n"));
        }
        out
    }
}

fn syntax(line: usize, message: impl Into<String>) -> SpecError {
    SpecError::Syntax { line, message: message.into() }
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, SpecError> {
    Err(syntax(line, message))
}

fn reject_trailing<'a>(
    line: usize,
    mut words: impl Iterator<Item = &'a str>,
) -> Result<(), SpecError> {
    match words.next() {
        None => Ok(()),
        Some(w) => err(line, format!("unexpected trailing `{w}`")),
    }
}

fn parse_field_line<'a>(
    line: usize,
    words: &mut impl Iterator<Item = &'a str>,
) -> Result<FieldSpec, SpecError> {
    match words.next() {
        Some("rationals") => Ok(FieldSpec::Rational),
        Some("prime") => {
            let p = words
                .next()
                .ok_or_else(|| syntax(line, "expected a prime after `field prime`"))?;
            let p: u64 = p
                .parse()
                .map_err(|_| syntax(line, format!("`{p}` is not a valid modulus")))?;
            Ok(FieldSpec::Prime(p))
        }
        Some(other) => err(line, format!("unrecognized field `{other}`")),
        None => err(line, "expected `field rationals` or `field prime <p>`"),
    }
}

fn valid_generator_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn parse_generator_block<'a>(
    start: usize,
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
) -> Result<Vec<Generator>, SpecError> {
    let mut gens = Vec::new();
    for (line, content) in lines.by_ref() {
        if content == "end" {
            return Ok(gens);
        }
        let mut words = content.split_whitespace();
        let name = words.next().expect("blank lines filtered out");
        if !valid_generator_name(name) {
            return err(line, format!("invalid generator name `{name}`"));
        }
        let degree = match words.next() {
            None => 1,
            Some(d) => d
                .parse::<u32>()
                .map_err(|_| syntax(line, format!("`{d}` is not a valid degree")))?,
        };
        if degree == 0 {
            return err(line, "generator degree must be at least 1");
        }
        reject_trailing(line, words)?;
        gens.push(Generator { name: name.to_string(), degree });
    }
    err(start, "`generators` block not closed with `end`")
}

/// `key=value` pairs of a task line, with duplicate and leftover checks.
struct TaskArgs<'a> {
    line: usize,
    pairs: Vec<(&'a str, &'a str)>,
}

impl<'a> TaskArgs<'a> {
    fn parse(
        line: usize,
        words: impl Iterator<Item = &'a str>,
    ) -> Result<TaskArgs<'a>, SpecError> {
        let mut pairs: Vec<(&str, &str)> = Vec::new();
        for w in words {
            let (k, v) = w
                .split_once('=')
                .ok_or_else(|| syntax(line, format!("expected key=value, found `{w}`")))?;
            if pairs.iter().any(|&(seen, _)| seen == k) {
                return err(line, format!("duplicate parameter `{k}`"));
            }
            pairs.push((k, v));
        }
        Ok(TaskArgs { line, pairs })
    }

    fn take(&mut self, key: &str) -> Option<&'a str> {
        let at = self.pairs.iter().position(|&(k, _)| k == key)?;
        Some(self.pairs.remove(at).1)
    }

    fn num<T: std::str::FromStr>(&mut self, key: &str) -> Result<Option<T>, SpecError> {
        match self.take(key) {
            None => Ok(None),
            Some(v) => v
                .parse::<T>()
                .map(Some)
                .map_err(|_| syntax(self.line, format!("`{v}` is not a valid value for `{key}`"))),
        }
    }

    fn base(&mut self) -> Result<Option<BaseField>, SpecError> {
        match self.take("base") {
            None => Ok(None),
            Some(v) => BaseField::from_text(v)
                .map(Some)
                .ok_or_else(|| syntax(self.line, format!("unrecognized base field `{v}`"))),
        }
    }

    fn moduli(&mut self) -> Result<Option<Vec<u64>>, SpecError> {
        match self.take("ell") {
            None => Ok(None),
            Some(v) => v
                .split(',')
                .map(|part| {
                    part.parse::<u64>().map_err(|_| {
                        syntax(self.line, format!("`{part}` is not a valid modulus in `ell`"))
                    })
                })
                .collect::<Result<Vec<u64>, SpecError>>()
                .map(Some),
        }
    }

    fn finish(self) -> Result<(), SpecError> {
        match self.pairs.first() {
            None => Ok(()),
            Some((k, _)) => err(self.line, format!("unrecognized parameter `{k}`")),
        }
    }
}

fn parse_task_block<'a>(
    start: usize,
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
) -> Result<Vec<Task>, SpecError> {
    let mut tasks = Vec::new();
    for (line, content) in lines.by_ref() {
        if content == "end" {
            return Ok(tasks);
        }
        let mut words = content.split_whitespace();
        let head = words.next().expect("blank lines filtered out");
        let mut args = TaskArgs::parse(line, words)?;
        let task = match head {
            "hilbert" => Task::Hilbert {
                n: args.num("n")?.unwrap_or_else(default_hilbert_n),
                guard: args.num("guard")?.unwrap_or_else(default_guard),
            },
            "koszul-dual" => Task::KoszulDual,
            "koszul-check" => {
                Task::KoszulCheck { n: args.num("n")?.unwrap_or_else(default_koszul_n) }
            }
            "invariants" => Task::Invariants {
                name: args.take("name").map(str::to_string).unwrap_or_else(default_invariant_name),
                base: args.base()?.unwrap_or_else(default_base),
                from: args.num("from")?.unwrap_or_else(default_m_from),
                to: args.num("to")?.unwrap_or_else(default_m_to),
                table: args.take("table").map(str::to_string),
            },
            "theorem-lab" => Task::TheoremLab {
                w: args.num("w")?.unwrap_or_else(default_w),
                trials: args.num("trials")?.unwrap_or_else(default_trials),
                seed: args.num("seed")?.unwrap_or(0),
                moduli: args.moduli()?.unwrap_or_else(default_moduli),
            },
            "gorenstein-hint" => Task::GorensteinHint,
            "orlov" => Task::Orlov {
                l: args
                    .num("l")?
                    .ok_or_else(|| syntax(line, "task `orlov` requires `l=<length>`"))?,
                name: args.take("name").map(str::to_string).unwrap_or_else(default_invariant_name),
                base: args.base()?.unwrap_or_else(default_base),
                from: args.num("from")?.unwrap_or_else(default_m_from),
                to: args.num("to")?.unwrap_or_else(default_m_to),
                table: args.take("table").map(str::to_string),
            },
            other => return err(line, format!("unrecognized task `{other}`")),
        };
        args.finish()?;
        tasks.push(task);
    }
    err(start, "`tasks` block not closed with `end`")
}

fn render_task(t: &Task) -> String {
    match t {
        Task::Hilbert { n, guard } => format!("hilbert n={n} guard={guard}"),
        Task::KoszulDual => "koszul-dual".to_string(),
        Task::KoszulCheck { n } => format!("koszul-check n={n}"),
        Task::Invariants { name, base, from, to, table } => {
            let mut s = format!("invariants name={name} base={base} from={from} to={to}");
            if let Some(path) = table {
                s.push_str(&format!(" table={path}"));
            }
            s
        }
        Task::TheoremLab { w, trials, seed, moduli } => {
            let list: Vec<String> = moduli.iter().map(|m| m.to_string()).collect();
            format!("theorem-lab w={w} trials={trials} seed={seed} ell={}", list.join(","))
        }
        Task::GorensteinHint => "gorenstein-hint".to_string(),
        Task::Orlov { l, name, base, from, to, table } => {
            let mut s = format!("orlov l={l} name={name} base={base} from={from} to={to}");
            if let Some(path) = table {
                s.push_str(&format!(" table={path}"));
            }
            s
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::scalar::Scalar;

    const QUANTUM_PLANE: &str = "\
# the quantum plane at q = 2
name quantum-plane
field rationals

generators
  x 1
  y 1
end

relations
  y*x - 2*x*y
end

tasks
  hilbert n=10 guard=4
  koszul-dual
  koszul-check
  invariants name=K base=F5 from=0 to=3
  theorem-lab
  gorenstein-hint
  orlov l=2 name=THH base=F2 from=-2 to=4
end

output json
";

    #[test]
    fn parses_text_spec_with_all_blocks() {
        let spec = SpecFile::parse(QUANTUM_PLANE).unwrap();
        assert_eq!(spec.name.as_deref(), Some("quantum-plane"));
        assert_eq!(spec.field, FieldSpec::Rational);
        assert_eq!(spec.generators.len(), 2);
        assert_eq!(spec.generators[0], Generator { name: "x".into(), degree: 1 });
        assert_eq!(spec.relations, vec!["y*x - 2*x*y".to_string()]);
        assert_eq!(spec.output, Some(OutputFormat::Json));
        assert_eq!(
            spec.tasks,
            vec![
                Task::Hilbert { n: 10, guard: 4 },
                Task::KoszulDual,
                Task::KoszulCheck { n: 8 },
                Task::Invariants {
                    name: "K".into(),
                    base: BaseField::Finite(5),
                    from: 0,
                    to: 3,
                    table: None,
                },
                Task::TheoremLab { w: 20, trials: 100, seed: 0, moduli: vec![2, 3, 5] },
                Task::GorensteinHint,
                Task::Orlov {
                    l: 2,
                    name: "THH".into(),
                    base: BaseField::Finite(2),
                    from: -2,
                    to: 4,
                    table: None,
                },
            ]
        );
    }

    #[test]
    fn elaborates_presentation() {
        let spec = SpecFile::parse(QUANTUM_PLANE).unwrap();
        let p = spec.to_presentation().unwrap();
        assert_eq!(p.relations().len(), 1);
        assert_eq!(p.poly_to_string(&p.relations()[0]), "y*x - 2*x*y");
    }

    #[test]
    fn json_spec_matches_text_spec() {
        let json = r#"{
            "name": "quantum-plane",
            "field": "rationals",
            "generators": [{"name": "x"}, {"name": "y", "degree": 1}],
            "relations": ["y*x - 2*x*y"],
            "tasks": [
                {"task": "hilbert", "n": 10, "guard": 4},
                {"task": "koszul-dual"},
                {"task": "koszul-check"},
                {"task": "invariants", "name": "K", "base": "F5", "from": 0, "to": 3},
                {"task": "theorem-lab"},
                {"task": "gorenstein-hint"},
                {"task": "orlov", "l": 2, "name": "THH", "base": 2, "from": -2, "to": 4}
            ],
            "output": "json"
        }"#;
        assert_eq!(SpecFile::parse(json).unwrap(), SpecFile::parse(QUANTUM_PLANE).unwrap());
    }

    #[test]
    fn prime_field_spec() {
        let spec = SpecFile::parse("field prime 5\ngenerators\n x\nend\n").unwrap();
        assert_eq!(spec.name, None);
        assert_eq!(spec.field, FieldSpec::Prime(5));
        assert_eq!(spec.generators, vec![Generator { name: "x".into(), degree: 1 }]);
        assert!(spec.relations.is_empty());
        assert!(spec.tasks.is_empty());
        assert_eq!(spec.output, None);
    }

    #[test]
    fn defaults_fill_missing_task_parameters() {
        let spec = SpecFile::parse(
            "field rationals\ngenerators\n x\nend\ntasks\n hilbert\n invariants\nend\n",
        )
        .unwrap();
        assert_eq!(
            spec.tasks,
            vec![
                Task::Hilbert { n: 12, guard: 4 },
                Task::Invariants {
                    name: "K".into(),
                    base: BaseField::Rationals,
                    from: 0,
                    to: 3,
                    table: None,
                },
            ]
        );
    }

    fn expect_syntax_error(text: &str, want_line: usize, want_fragment: &str) {
        match SpecFile::parse(text) {
            Err(SpecError::Syntax { line, message }) => {
                assert_eq!(line, want_line, "error line for {text:?} ({message})");
                assert!(
                    message.contains(want_fragment),
                    "message `{message}` should contain `{want_fragment}`"
                );
            }
            other => panic!("expected syntax error for {text:?}, got {other:?}"),
        }
    }

    #[test]
    fn structural_errors_carry_line_numbers() {
        expect_syntax_error("field rationals\nfield prime 5\n", 2, "duplicate");
        expect_syntax_error("field rationals\ngenerators\n x 0\nend\n", 3, "at least 1");
        expect_syntax_error("field rationals\ngenerators\n 3x\nend\n", 3, "invalid generator");
        expect_syntax_error("field rationals\ngenerators\n x\n", 2, "not closed");
        expect_syntax_error(
            "field rationals\ngenerators\n x\nend\ntasks\n frobenius\nend\n",
            6,
            "unrecognized task",
        );
        expect_syntax_error(
            "field rationals\ngenerators\n x\nend\ntasks\n hilbert n=ten\nend\n",
            6,
            "not a valid value",
        );
        expect_syntax_error(
            "field rationals\ngenerators\n x\nend\ntasks\n hilbert depth=3\nend\n",
            6,
            "unrecognized parameter",
        );
        expect_syntax_error(
            "field rationals\ngenerators\n x\nend\ntasks\n orlov\nend\n",
            6,
            "requires `l=",
        );
        expect_syntax_error("banner\n", 1, "unrecognized declaration");
    }

    #[test]
    fn missing_blocks_are_reported() {
        assert_eq!(
            SpecFile::parse("generators\n x\nend\n"),
            Err(SpecError::MissingBlock("field"))
        );
        assert_eq!(SpecFile::parse("field rationals\n"), Err(SpecError::MissingBlock("generators")));
    }

    #[test]
    fn relation_errors_name_the_relation() {
        let spec =
            SpecFile::parse("field rationals\ngenerators\n x\nend\nrelations\n x*q\nend\n")
                .unwrap();
        match spec.to_presentation() {
            Err(SpecError::Relation { location, .. }) => {
                assert!(location.contains("relation 1"), "location was `{location}`");
                assert!(location.contains("x*q"), "location was `{location}`");
            }
            other => panic!("expected relation error, got {other:?}"),
        }
    }

    #[test]
    fn inhomogeneous_relation_rejected_at_elaboration() {
        let spec =
            SpecFile::parse("field rationals\ngenerators\n x\nend\nrelations\n x*x - x\nend\n")
                .unwrap();
        assert!(matches!(spec.to_presentation(), Err(SpecError::Presentation(_))));
    }

    #[test]
    fn render_round_trips_catalog_entries() {
        for entry in catalog::catalog() {
            let p = catalog::build_default(entry.name, FieldSpec::Rational, false).unwrap();
            let tasks =
                vec![Task::Hilbert { n: 10, guard: 4 }, Task::KoszulCheck { n: 8 }];
            let rendered = SpecFile::render(Some(entry.name), &p, &tasks, Some(OutputFormat::Text));
            let reparsed = SpecFile::parse(&rendered)
                .unwrap_or_else(|e| panic!("{}: {e}\n{rendered}", entry.name));
            assert_eq!(reparsed.name.as_deref(), Some(entry.name));
            assert_eq!(reparsed.tasks, tasks, "{}", entry.name);
            assert_eq!(reparsed.output, Some(OutputFormat::Text));
            let rebuilt = reparsed
                .to_presentation()
                .unwrap_or_else(|e| panic!("{}: {e}\n{rendered}", entry.name));
            assert_eq!(rebuilt, p, "{}", entry.name);
        }
    }

    #[test]
    fn render_round_trips_prime_field_and_weighted_generators() {
        let field = FieldSpec::Prime(7);
        let gens = vec![
            Generator { name: "x".into(), degree: 1 },
            Generator { name: "y".into(), degree: 2 },
        ];
        let x = |p: &Presentation| p.gen_poly(0);
        let context = Presentation::new(field, gens.clone(), Vec::new()).unwrap();
        let rel = x(&context)
            .mul(&x(&context))
            .unwrap()
            .scale(&Scalar::from_integer(field, 3))
            .sub(&context.gen_poly(1))
            .unwrap();
        let p = Presentation::new(field, gens, vec![rel]).unwrap();
        let rendered = SpecFile::render(None, &p, &[], None);
        let rebuilt = SpecFile::parse(&rendered).unwrap().to_presentation().unwrap();
        assert_eq!(rebuilt, p);
    }

    #[test]
    fn task_json_round_trip() {
        let tasks = vec![
            Task::Hilbert { n: 10, guard: 4 },
            Task::TheoremLab { w: 20, trials: 100, seed: 7, moduli: vec![2, 3] },
            Task::Orlov {
                l: 3,
                name: "K".into(),
                base: BaseField::Finite(9),
                from: 0,
                to: 2,
                table: None,
            },
        ];
        let text = serde_json::to_string(&tasks).unwrap();
        let back: Vec<Task> = serde_json::from_str(&text).unwrap();
        assert_eq!(back, tasks);
    }
}
