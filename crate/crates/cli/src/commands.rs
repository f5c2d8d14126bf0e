use std::fmt::Write as _;
use std::io::Write as _;

use traductive::dictif::{p_level, ContainerSchedule, HfSet};
use traductive::gen::{FormulaGen, Shape};
use traductive::syntax::{binding_report, is_strictly_closed, parse_dictif, Binding};
use traductive::theory::{
    asymptotic_probe, check_equality_schema, check_foundation, check_inference_closure, check_schemas,
    coherence_scan, PredicateTemplate, ScanOptions, TheoryError,
};
use traductive::translation::{maxi_denect, step, translate_d_to_b, universal_closure, PipelineTrace, TraceEntry};
use traductive::{is_theorem, parse, Enonce, Language, Limits, TheoryConfig, TheoryKind, Verdict};

use crate::config::FileConfig;
use crate::exit::{worst, NEGATIVE, OK, UNKNOWN, USAGE};
use crate::{CheckCmd, Cli, Command, DictifOp, Format, Input, RankArgs, Stage, TheoryArg};

struct Ctx {
    format: Format,
    seed: u64,
    limits: Limits,
    file: FileConfig,
}

/// Buffered output of one command, or of one batch line.
#[derive(Default)]
struct Report {
    out: Vec<String>,
    err: Vec<String>,
    code: u8,
}

impl Report {
    fn line(&mut self, s: impl Into<String>) {
        self.out.push(s.into());
    }

    fn fail(mut self, code: u8, msg: impl Into<String>) -> Report {
        self.err.push(format!("error: {}", msg.into()));
        self.code = worst(self.code, code);
        self
    }

    fn failed(code: u8, msg: impl Into<String>) -> Report {
        Report::default().fail(code, msg)
    }

    fn raise(&mut self, code: u8) {
        self.code = worst(self.code, code);
    }
}

pub fn run(cli: Cli) -> u8 {
    let g = cli.global;
    let file = match g.config.as_deref().map(FileConfig::load).transpose() {
        Ok(f) => f.unwrap_or_default(),
        Err(msg) => return emit(Report::failed(USAGE, msg)),
    };
    let format = match (g.format, file.format.as_deref()) {
        (Some(f), _) => f,
        (None, None | Some("human")) => Format::Human,
        (None, Some("record")) => Format::Record,
        (None, Some(other)) => return emit(Report::failed(USAGE, format!("config: unknown format `{other}`"))),
    };
    let ctx = Ctx {
        format,
        seed: g.seed.or(file.seed).unwrap_or(0),
        limits: file.limits(g.max_nodes, g.max_vars, g.max_steps),
        file,
    };
    match &cli.command {
        Command::Parse(input) => per_formula(input, |text| cmd_parse(&ctx, text)),
        Command::Decide { theory, rank, input } => per_formula(input, |text| cmd_decide(&ctx, *theory, rank, text)),
        Command::Translate {
            rank,
            stop_after,
            trace,
            input,
        } => per_formula(input, |text| cmd_translate(&ctx, rank, *stop_after, *trace, text)),
        Command::Dictif { op } => emit(cmd_dictif(op)),
        Command::Check { check } => emit(cmd_check(&ctx, check)),
    }
}

fn emit(r: Report) -> u8 {
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    for l in &r.out {
        let _ = writeln!(lock, "{l}");
    }
    let _ = lock.flush();
    for l in &r.err {
        eprintln!("{l}");
    }
    r.code
}

/// Runs `f` on the inline formula, or on every line of the batch file with
/// each output line prefixed by its 1-based line number.
fn per_formula(input: &Input, f: impl Fn(&str) -> Report) -> u8 {
    let Some(path) = &input.file else {
        let text = input.formula.as_deref().unwrap_or_default();
        let mut r = f(text);
        for e in &mut r.err {
            *e = e.replacen("error: ", "error: line 1: ", 1);
        }
        return emit(r);
    };
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return emit(Report::failed(USAGE, format!("{}: {e}", path.display()))),
    };
    let mut all = Report::default();
    for (i, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let r = f(trimmed);
        let n = i + 1;
        all.out.extend(r.out.into_iter().map(|l| format!("{n}: {l}")));
        all.err.extend(r.err.into_iter().map(|l| l.replacen("error: ", &format!("error: line {n}: "), 1)));
        all.raise(r.code);
    }
    emit(all)
}

fn language_name(e: &Enonce) -> String {
    e.language().map(|l| l.to_string()).unwrap_or_else(|| "mixed".into())
}

fn read(text: &str) -> Result<Enonce, Report> {
    parse(text).map_err(|e| Report::failed(USAGE, e.to_string()))
}

fn cmd_parse(ctx: &Ctx, text: &str) -> Report {
    let e = match read(text) {
        Ok(e) => e,
        Err(r) => return r,
    };
    let report = binding_report(&e);
    let mut r = Report::default();
    let lang = language_name(&e);
    match ctx.format {
        Format::Human => r.line(format!("{e} | language={lang}")),
        Format::Record => r.line(format!(
            "language={lang} size={} free={} bound={} canonical={e}",
            e.size(),
            report.free().count(),
            report.bound().count()
        )),
    }
    let indent = if ctx.format == Format::Human { "  " } else { "" };
    for o in &report.occurrences {
        let binding = match o.binding {
            Binding::Free { level } => format!("free level={level}"),
            Binding::Bound { binder } => format!("bound binder={binder}"),
        };
        r.line(format!(
            "{indent}occurrence sign={} height={} depth={} level={} {binding}",
            o.sign, o.height, o.depth, o.level
        ));
    }
    for b in &report.binders {
        r.line(format!("{indent}binder sign={} depth={} occurrences={}", b.sign, b.depth, b.occurrences));
    }
    r
}

fn schedule(ctx: &Ctx, name: &str) -> Result<ContainerSchedule, Report> {
    ctx.file.schedule(name).map_err(|m| Report::failed(USAGE, m))
}

fn theory_config(ctx: &Ctx, theory: TheoryArg, rank: &RankArgs) -> Result<TheoryConfig, Report> {
    let kind = match theory {
        TheoryArg::A => TheoryKind::A,
        TheoryArg::B => TheoryKind::B,
        TheoryArg::C => TheoryKind::C,
        TheoryArg::D => TheoryKind::D,
        TheoryArg::M => TheoryKind::M,
        TheoryArg::F | TheoryArg::Asymptotic => {
            if rank.rank == 0 {
                return Err(Report::failed(USAGE, "rank must be at least 1"));
            }
            let schedule = schedule(ctx, &rank.schedule)?;
            if theory == TheoryArg::F {
                TheoryKind::F {
                    rank: rank.rank,
                    schedule,
                }
            } else {
                TheoryKind::Asymptotic { schedule }
            }
        }
    };
    Ok(TheoryConfig::new(kind).with_limits(ctx.limits))
}

fn verdict_code(v: Verdict) -> u8 {
    match v {
        Verdict::Theorem => OK,
        Verdict::NonTheorem => NEGATIVE,
        Verdict::Unknown(_) => UNKNOWN,
    }
}

fn theory_error(e: TheoryError) -> Report {
    Report::failed(USAGE, e.to_string())
}

fn cmd_decide(ctx: &Ctx, theory: TheoryArg, rank: &RankArgs, text: &str) -> Report {
    let cfg = match theory_config(ctx, theory, rank) {
        Ok(c) => c,
        Err(r) => return r,
    };
    let e = match read(text) {
        Ok(e) => e,
        Err(r) => return r,
    };
    let v = match is_theorem(&cfg, &e) {
        Ok(v) => v,
        Err(err) => return theory_error(err),
    };
    let mut r = Report::default();
    match (ctx.format, v) {
        (Format::Human, Verdict::Unknown(limit)) => r.line(format!("verdict=Unknown reason={limit}")),
        (Format::Human, _) => r.line(format!("verdict={v}")),
        (Format::Record, _) => r.line(format!("theory={} verdict={v} reason={}", cfg.label(), v.reason())),
    }
    r.code = verdict_code(v);
    r
}

fn cmd_translate(ctx: &Ctx, rank: &RankArgs, stop: Option<Stage>, trace: bool, text: &str) -> Report {
    if rank.rank == 0 {
        return Report::failed(USAGE, "rank must be at least 1");
    }
    let sched = match schedule(ctx, &rank.schedule) {
        Ok(s) => s,
        Err(r) => return r,
    };
    let e = match read(text) {
        Ok(e) => e,
        Err(r) => return r,
    };
    if matches!(e.language(), None | Some(Language::C)) {
        return Report::failed(USAGE, format!("expected an énoncé of language F, found {}", language_name(&e)));
    }
    let mut r = Report::default();
    let mut stages = PipelineTrace::default();
    let mut record = |stage: String, e: &Enonce| {
        stages.entries.push(TraceEntry {
            stage,
            size: e.size(),
            qdepth: e.block_depth(),
        })
    };
    let closed = universal_closure(&e);
    record("u".into(), &closed);
    let mut cur = closed;
    if stop != Some(Stage::U) {
        cur = maxi_denect(&cur);
        record("d".into(), &cur);
    }
    if !matches!(stop, Some(Stage::U | Stage::D)) {
        if !is_strictly_closed(&cur) {
            return r.fail(USAGE, "closure left a free littème");
        }
        let indices = match sched.indices(rank.rank, cur.block_depth()) {
            Ok(i) => i,
            Err(err) => return r.fail(UNKNOWN, format!("stage=[{}: {err}", rank.rank)),
        };
        for h in indices {
            cur = match step(&cur, h, &sched, &ctx.limits) {
                Ok(next) => next,
                Err(err) => {
                    let code = if err.limit().is_some() { UNKNOWN } else { USAGE };
                    return r.fail(code, format!("stage=step:{h}: {err}"));
                }
            };
            record(format!("step:{h}"), &cur);
        }
        if stop == Some(Stage::B) {
            cur = match translate_d_to_b(&cur) {
                Ok(b) => b,
                Err(err) => return r.fail(USAGE, format!("stage=b: {err}")),
            };
            record("b".into(), &cur);
        } else {
            record("result".into(), &cur);
        }
    }
    match ctx.format {
        Format::Human => r.line(cur.to_string()),
        Format::Record => r.line(format!("language={} size={} enonce={cur}", language_name(&cur), cur.size())),
    }
    if trace {
        let mut s = String::new();
        let _ = write!(s, "{stages}");
        r.out.extend(s.lines().map(str::to_owned));
    }
    r
}

fn read_dictif(text: &str) -> Result<HfSet, Report> {
    parse_dictif(text).map_err(|e| Report::failed(USAGE, e.to_string()))
}

fn describe(s: &HfSet) -> String {
    let index = s.to_index().map(|i| i.to_string()).unwrap_or_else(|_| "overflow".into());
    let elements: Vec<String> = s.elements().iter().map(|e| e.to_string()).collect();
    format!(
        "index={index} size={} rank={} transitive={} subtransitive={} elements={{{}}}",
        s.len(),
        s.rank(),
        s.is_transitive(),
        s.is_subtransitive(),
        elements.join(",")
    )
}

fn cmd_dictif(op: &DictifOp) -> Report {
    let run = || -> Result<Report, Report> {
        let mut r = Report::default();
        match op {
            DictifOp::Show { dictif } => r.line(describe(&read_dictif(dictif)?)),
            DictifOp::PLevel { n } => {
                let p = p_level(*n).map_err(|e| Report::failed(USAGE, e.to_string()))?;
                let index = p.to_index().map(|i| i.to_string()).unwrap_or_else(|_| "overflow".into());
                r.line(format!(
                    "level={n} size={} rank={} transitive={} subtransitive={} index={index}",
                    p.len(),
                    p.rank(),
                    p.is_transitive(),
                    p.is_subtransitive()
                ));
            }
            DictifOp::Member { x, z } => {
                let m = read_dictif(z)?.contains(&read_dictif(x)?);
                r.line(format!("member={m}"));
                r.code = if m { OK } else { NEGATIVE };
            }
            DictifOp::Union { a, b } => r.line(describe(&read_dictif(a)?.union(&read_dictif(b)?))),
            DictifOp::Inter { a, b } => r.line(describe(&read_dictif(a)?.intersection(&read_dictif(b)?))),
        }
        Ok(r)
    };
    run().unwrap_or_else(|r| r)
}

fn cmd_check(ctx: &Ctx, check: &CheckCmd) -> Report {
    let res = match check {
        CheckCmd::Schemas {
            theory,
            rank,
            samples,
            size,
        } => check_schemas_cmd(ctx, *theory, rank, *samples, *size),
        CheckCmd::Equality { rank, schedule } => check_equality_cmd(ctx, *rank, schedule),
        CheckCmd::Foundation { rank } => check_foundation_cmd(ctx, rank),
        CheckCmd::Coherence {
            theory,
            rank,
            samples,
            size_bound,
            dictif_bound,
            sample_size,
        } => {
            let opts = ScanOptions {
                size_bound: *size_bound,
                dictif_bound: *dictif_bound,
                samples: *samples,
                seed: ctx.seed,
                sample_size: *sample_size,
                ..ScanOptions::default()
            };
            check_coherence_cmd(ctx, *theory, rank, &opts)
        }
        CheckCmd::Asymptotic {
            formula,
            start,
            window,
            schedule,
        } => check_asymptotic_cmd(ctx, formula, *start, *window, schedule),
    };
    res.unwrap_or_else(|r| r)
}

fn component_shape(theory: TheoryArg) -> Result<Shape, Report> {
    match theory {
        TheoryArg::B => Ok(Shape::B),
        TheoryArg::D => Ok(Shape::D { dictifs: 8 }),
        TheoryArg::F => Ok(Shape::ClosedF {
            dictifs: 4,
            max_qdepth: 2,
        }),
        _ => Err(Report::failed(USAGE, "schema checks run on theories B, D and F")),
    }
}

fn check_schemas_cmd(ctx: &Ctx, theory: TheoryArg, rank: &RankArgs, samples: usize, size: usize) -> Result<Report, Report> {
    let shape = component_shape(theory)?;
    let cfg = theory_config(ctx, theory, rank)?;
    let mut gen = FormulaGen::new(ctx.seed);
    let comps: Vec<Enonce> = (0..samples.max(1)).map(|_| gen.enonce(shape, size)).collect();
    let schemas = check_schemas(&cfg, &comps).map_err(theory_error)?;
    let n = comps.len();
    let pairs: Vec<(Enonce, Enonce)> = (0..n)
        .flat_map(|i| {
            let (e, f) = (comps[i].clone(), comps[(i + 1) % n].clone());
            [
                (e.clone(), f.clone()),
                (e.clone(), e.clone()),
                (e.clone(), Enonce::implies(f, e)),
            ]
        })
        .collect();
    let closure = check_inference_closure(&cfg, &pairs).map_err(theory_error)?;
    let mut r = Report::default();
    r.line(format!(
        "theory={} seed={} components={n} instances={} failures={} unknown={}",
        cfg.label(),
        ctx.seed,
        schemas.instances,
        schemas.failures.len(),
        schemas.unknown
    ));
    for (id, inst) in &schemas.failures {
        r.line(format!("failure schema={id} instance={inst}"));
    }
    r.line(format!(
        "inference pairs={} applicable={} counterexamples={} unknown={}",
        closure.pairs,
        closure.applicable,
        closure.counterexamples.len(),
        closure.unknown
    ));
    for (e, f) in &closure.counterexamples {
        r.line(format!("counterexample premise={e} ; conclusion={f}"));
    }
    let violations = schemas.failures.len() + closure.counterexamples.len();
    let unknown = schemas.unknown + closure.unknown;
    summary(&mut r, violations, unknown);
    Ok(r)
}

fn summary(r: &mut Report, violations: usize, unknown: usize) {
    r.line(format!("summary violations={violations} unknown={unknown}"));
    if violations > 0 {
        r.raise(NEGATIVE);
    }
    if unknown > 0 {
        r.raise(UNKNOWN);
    }
}

fn check_equality_cmd(ctx: &Ctx, rank: usize, schedule_name: &str) -> Result<Report, Report> {
    if rank == 0 {
        return Err(Report::failed(USAGE, "rank must be at least 1"));
    }
    let sched = schedule(ctx, schedule_name)?;
    let container = sched.container(rank).map_err(|e| Report::failed(USAGE, e.to_string()))?;
    let mut r = Report::default();
    let (mut violations, mut unknown) = (0, 0);
    for t in PredicateTemplate::library() {
        let mut counts = [0usize; 3];
        for a in container.elements() {
            for b in container.elements() {
                let v = check_equality_schema(rank, &sched, &t, a, b, &ctx.limits).map_err(theory_error)?;
                match v {
                    Verdict::Theorem => counts[0] += 1,
                    Verdict::NonTheorem => {
                        counts[1] += 1;
                        r.line(format!("failure template={} a={a} b={b}", t.name));
                    }
                    Verdict::Unknown(l) => {
                        counts[2] += 1;
                        r.line(format!("unknown template={} a={a} b={b} reason={l}", t.name));
                    }
                }
            }
        }
        r.line(format!(
            "rank={rank} template={} pairs={} theorems={} non_theorems={} unknown={}",
            t.name,
            counts.iter().sum::<usize>(),
            counts[0],
            counts[1],
            counts[2]
        ));
        violations += counts[1];
        unknown += counts[2];
    }
    summary(&mut r, violations, unknown);
    Ok(r)
}

fn check_foundation_cmd(ctx: &Ctx, rank: &RankArgs) -> Result<Report, Report> {
    let sched = schedule(ctx, &rank.schedule)?;
    let v = check_foundation(rank.rank, &sched, &ctx.limits).map_err(theory_error)?;
    let mut r = Report::default();
    r.line(format!("rank={} verdict={} reason={}", rank.rank, v.letter(), v.reason()));
    summary(&mut r, usize::from(v == Verdict::NonTheorem), usize::from(!v.is_known()));
    Ok(r)
}

fn check_coherence_cmd(ctx: &Ctx, theory: TheoryArg, rank: &RankArgs, opts: &ScanOptions) -> Result<Report, Report> {
    let cfg = theory_config(ctx, theory, rank)?;
    let rep = coherence_scan(&cfg, opts).map_err(theory_error)?;
    let mut r = Report::default();
    r.line(format!(
        "theory={} seed={} size_bound={} dictif_bound={} samples={} checked={}",
        cfg.label(),
        opts.seed,
        opts.size_bound,
        opts.dictif_bound,
        opts.samples,
        rep.checked
    ));
    for (e, v, w) in &rep.violations {
        r.line(format!("violation verdict={} negation={} enonce={e}", v.letter(), w.letter()));
    }
    summary(&mut r, rep.violations.len(), rep.unknown);
    Ok(r)
}

fn check_asymptotic_cmd(ctx: &Ctx, formula: &str, start: usize, window: usize, sched: &str) -> Result<Report, Report> {
    let sched = schedule(ctx, sched)?;
    let e = read(formula)?;
    let family = |rank| {
        TheoryConfig::new(TheoryKind::F {
            rank,
            schedule: sched.clone(),
        })
        .with_limits(ctx.limits)
    };
    let rep = asymptotic_probe(&family, &e, start, window).map_err(theory_error)?;
    let mut r = Report::default();
    let mut s = String::new();
    let _ = write!(s, "{rep}");
    r.out.extend(s.lines().map(str::to_owned));
    if !rep.stabilized {
        let any_unknown = rep.verdicts.iter().any(|(_, v)| !v.is_known());
        r.raise(if any_unknown { UNKNOWN } else { NEGATIVE });
    }
    Ok(r)
}
