//! One theoremhood interface over theories A, B, C, D and the translative
//! F-theories, plus the scans and schema checks built on it.

use std::fmt;

use crate::dictif::{ContainerSchedule, DictifError, HfSet};
use crate::gen::{Enumerator, FormulaGen, Shape};
use crate::propositional::{eval_bool, is_theorem_c, schema_arity, schema_instance, LanguageError};
use crate::syntax::{parse, Enonce, Language, Term};
use crate::translation::{evaluate_pipeline_udk, translate_d_to_b, TranslateError};
use crate::verdict::{Limits, Verdict};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TheoryKind {
    A,
    B,
    C,
    D,
    /// The translative theory defined on F by `ud[K` at this rank.
    F { rank: usize, schedule: ContainerSchedule },
    /// The family of F-theories over all ranks; probed, never decided.
    Asymptotic { schedule: ContainerSchedule },
    /// Placeholder for the deductive theory M; not decidable here.
    M,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoryConfig {
    pub kind: TheoryKind,
    pub limits: Limits,
}

impl TheoryConfig {
    pub fn new(kind: TheoryKind) -> Self {
        TheoryConfig {
            kind,
            limits: Limits::default(),
        }
    }

    pub fn f(rank: usize) -> Self {
        TheoryConfig::new(TheoryKind::F {
            rank,
            schedule: ContainerSchedule::p_ladder(),
        })
    }

    pub fn with_limits(mut self, limits: Limits) -> Self {
        self.limits = limits;
        self
    }

    /// For an asymptotic configuration, its member at `rank`.
    pub fn at_rank(&self, rank: usize) -> Option<TheoryConfig> {
        match &self.kind {
            TheoryKind::Asymptotic { schedule } => Some(TheoryConfig {
                kind: TheoryKind::F {
                    rank,
                    schedule: schedule.clone(),
                },
                limits: self.limits,
            }),
            _ => None,
        }
    }

    pub fn label(&self) -> String {
        match &self.kind {
            TheoryKind::A => "A".into(),
            TheoryKind::B => "B".into(),
            TheoryKind::C => "C".into(),
            TheoryKind::D => "D".into(),
            TheoryKind::F { rank, .. } => format!("F[{rank}"),
            TheoryKind::Asymptotic { .. } => "F*".into(),
            TheoryKind::M => "M".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TheoryError {
    #[error(transparent)]
    Language(#[from] LanguageError),
    #[error("theory {0} is not decidable by this registry")]
    NotDecidable(String),
    #[error("rank must be at least 1")]
    InvalidRank,
    #[error(transparent)]
    Translate(TranslateError),
    #[error(transparent)]
    Schedule(#[from] DictifError),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

fn language_within(e: &Enonce, lang: Language) -> Result<(), TheoryError> {
    match e.language() {
        Some(l) if lang.includes(l) => Ok(()),
        _ => Err(LanguageError::mismatch(lang, e).into()),
    }
}

pub fn is_theorem(cfg: &TheoryConfig, e: &Enonce) -> Result<Verdict, TheoryError> {
    match &cfg.kind {
        TheoryKind::A => {
            if *e == Enonce::theta() {
                Ok(Verdict::Theorem)
            } else if *e == Enonce::Psi {
                Ok(Verdict::NonTheorem)
            } else {
                Err(LanguageError::mismatch(Language::A, e).into())
            }
        }
        TheoryKind::B => Ok(Verdict::from_bool(eval_bool(e)?)),
        TheoryKind::C => Ok(is_theorem_c(e, cfg.limits.max_tt_vars)?),
        TheoryKind::D => {
            language_within(e, Language::D)?;
            Ok(Verdict::from_bool(eval_bool(&translate_d_to_b(e)?)?))
        }
        TheoryKind::F { rank, schedule } => {
            if *rank == 0 {
                return Err(TheoryError::InvalidRank);
            }
            language_within(e, Language::F)?;
            match evaluate_pipeline_udk(e, *rank, schedule, &cfg.limits) {
                Ok(b) => Ok(Verdict::from_bool(b)),
                Err(err) => match err.limit() {
                    Some(limit) => Ok(Verdict::Unknown(limit)),
                    None => Err(TheoryError::Translate(err)),
                },
            }
        }
        TheoryKind::Asymptotic { .. } => Err(TheoryError::NotDecidable(
            "F* (use an asymptotic probe)".into(),
        )),
        TheoryKind::M => Err(TheoryError::NotDecidable("M".into())),
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InferenceReport {
    pub pairs: usize,
    /// Pairs where both `e` and `e ⟹ f` are theorems.
    pub applicable: usize,
    pub unknown: usize,
    pub counterexamples: Vec<(Enonce, Enonce)>,
}

/// Modus ponens closure: `e` and `e ⟹ f` theorems imply `f` theorem.
pub fn check_inference_closure(cfg: &TheoryConfig, samples: &[(Enonce, Enonce)]) -> Result<InferenceReport, TheoryError> {
    let mut report = InferenceReport::default();
    for (e, f) in samples {
        report.pairs += 1;
        let premise = is_theorem(cfg, e)?;
        let implication = is_theorem(cfg, &Enonce::implies(e.clone(), f.clone()))?;
        if !premise.is_known() || !implication.is_known() {
            report.unknown += 1;
            continue;
        }
        if !(premise.is_theorem() && implication.is_theorem()) {
            continue;
        }
        report.applicable += 1;
        match is_theorem(cfg, f)? {
            Verdict::Theorem => {}
            Verdict::NonTheorem => report.counterexamples.push((e.clone(), f.clone())),
            Verdict::Unknown(_) => report.unknown += 1,
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SchemaReport {
    pub instances: usize,
    pub unknown: usize,
    /// Schema id and the failing instance.
    pub failures: Vec<(u8, Enonce)>,
}

/// Instantiates each of the three schemas with consecutive parts drawn from
/// `components` and decides every instance in `cfg`.
pub fn check_schemas(cfg: &TheoryConfig, components: &[Enonce]) -> Result<SchemaReport, TheoryError> {
    let mut report = SchemaReport::default();
    for id in 1..=3u8 {
        let arity = schema_arity(id).expect("valid id");
        for start in 0..components.len() {
            let parts: Vec<Enonce> = (0..arity).map(|i| components[(start + i) % components.len()].clone()).collect();
            let inst = schema_instance(id, &parts).expect("arity matches");
            report.instances += 1;
            match is_theorem(cfg, &inst)? {
                Verdict::Theorem => {}
                Verdict::NonTheorem => report.failures.push((id, inst)),
                Verdict::Unknown(_) => report.unknown += 1,
            }
        }
    }
    Ok(report)
}

/// A one-hole predicate: the hole is the free literal of level 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PredicateTemplate {
    pub name: &'static str,
    pub body: Enonce,
}

impl PredicateTemplate {
    pub fn new(name: &'static str, body: Enonce) -> Self {
        PredicateTemplate { name, body }
    }

    pub fn instantiate(&self, value: &HfSet) -> Enonce {
        self.body.instantiate_block(std::slice::from_ref(value))
    }

    /// The five fixed templates: `h∈h`, `∅∈h`, `h∈{∅}`,
    /// `∀y(y∈h ⟹ y∈h)` and `∀y(y∈h ⟹ ∀z(z∈y ⟹ z∈h))`.
    pub fn library() -> Vec<PredicateTemplate> {
        [
            ("self-member", "in x@1 x@1"),
            ("empty-member", "in D#0 x@1"),
            ("member-of-element", "in x@1 D#1"),
            ("self-subset", "all imp in x@1 x@2 in x@1 x@2"),
            ("transitive", "all imp in x@1 x@2 all imp in x@1 x@2 in x@1 x@3"),
        ]
        .into_iter()
        .map(|(name, src)| PredicateTemplate::new(name, parse(src).expect("template source parses")))
        .collect()
    }
}

/// `(∀x (x∈a ⟺ x∈b)) ⟹ (P(a) ⟺ P(b))` for dictifs `a`, `b`.
pub fn equality_instance(template: &PredicateTemplate, a: &HfSet, b: &HfSet) -> Enonce {
    let x = || Term::Litteme(1);
    let ext = Enonce::forall(Enonce::iff(
        Enonce::member(x(), Term::Dictif(a.clone())),
        Enonce::member(x(), Term::Dictif(b.clone())),
    ));
    Enonce::implies(ext, Enonce::iff(template.instantiate(a), template.instantiate(b)))
}

/// Decides an equality-schema instance at rank `k`, after checking that `a`
/// and `b` lie in `C_k` and that every container the translation uses is
/// sub-transitive.
pub fn check_equality_schema(
    k: usize,
    sched: &ContainerSchedule,
    template: &PredicateTemplate,
    a: &HfSet,
    b: &HfSet,
    limits: &Limits,
) -> Result<Verdict, TheoryError> {
    if k == 0 {
        return Err(TheoryError::InvalidRank);
    }
    let c = sched.container(k)?;
    for (name, v) in [("a", a), ("b", b)] {
        if !c.contains(v) {
            return Err(TheoryError::Precondition(format!("{name} = {v} is not an element of C_{k}")));
        }
    }
    let inst = equality_instance(template, a, b);
    for h in sched.indices(k, inst.block_depth())? {
        if !sched.container(h)?.is_subtransitive() {
            return Err(TheoryError::Precondition(format!("C_{h} is not sub-transitive")));
        }
    }
    let cfg = TheoryConfig::new(TheoryKind::F {
        rank: k,
        schedule: sched.clone(),
    })
    .with_limits(*limits);
    is_theorem(&cfg, &inst)
}

/// `∀a (¬(a = ∅) ⟹ ∃x (x∈a ∧ ¬∃y (y∈x ∧ y∈a)))`, with `a = ∅` written as
/// `∀z (z∈a ⟺ z∈ς)`.
pub fn foundation_axiom() -> Enonce {
    parse("all imp ~ all <=> in x@1 x@2 in x@1 D#0 E! & in x@1 x@2 ~ E! & in x@1 x@2 in x@1 x@3")
        .expect("foundation source parses")
}

pub fn check_foundation(k: usize, sched: &ContainerSchedule, limits: &Limits) -> Result<Verdict, TheoryError> {
    if k == 0 {
        return Err(TheoryError::InvalidRank);
    }
    let af = foundation_axiom();
    sched.indices(k, crate::translation::maxi_denect(&af).block_depth())?;
    let cfg = TheoryConfig::new(TheoryKind::F {
        rank: k,
        schedule: sched.clone(),
    })
    .with_limits(*limits);
    is_theorem(&cfg, &af)
}

/// Per-rank verdicts over a window of ranks.
///
/// A stabilized report is evidence of theoremhood (or non-theoremhood) in
/// the asymptotic theory, not a proof of it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizationReport {
    pub verdicts: Vec<(usize, Verdict)>,
    pub stabilized: bool,
    pub first_stable_rank: Option<usize>,
}

impl fmt::Display for StabilizationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (rank, v) in &self.verdicts {
            writeln!(f, "rank={rank} verdict={} reason={}", v.letter(), v.reason())?;
        }
        let first = self.first_stable_rank.map(|r| r.to_string()).unwrap_or_else(|| "-".into());
        writeln!(f, "summary ranks={} stabilized={} first_stable_rank={first}", self.verdicts.len(), self.stabilized)
    }
}

pub fn asymptotic_probe(
    family: &dyn Fn(usize) -> TheoryConfig,
    e: &Enonce,
    start: usize,
    window: usize,
) -> Result<StabilizationReport, TheoryError> {
    if window == 0 {
        return Err(TheoryError::Precondition("window must be at least 1".into()));
    }
    if start == 0 {
        return Err(TheoryError::InvalidRank);
    }
    let verdicts = (start..start + window)
        .map(|r| Ok((r, is_theorem(&family(r), e)?)))
        .collect::<Result<Vec<_>, TheoryError>>()?;
    let last = verdicts.last().expect("window ≥ 1").1;
    let suffix = verdicts.iter().rev().take_while(|(_, v)| *v == last).count();
    let stabilized = last.is_known() && (suffix >= 2 || window == 1);
    let first_stable_rank = stabilized.then(|| verdicts[verdicts.len() - suffix].0);
    Ok(StabilizationReport {
        verdicts,
        stabilized,
        first_stable_rank,
    })
}

#[derive(Clone, Debug)]
pub struct ScanOptions {
    /// Exhaustive enumeration covers sizes up to this bound.
    pub size_bound: usize,
    /// Dictif indices range below this bound.
    pub dictif_bound: u64,
    /// Random énoncés drawn in addition to the exhaustive part.
    pub samples: usize,
    pub seed: u64,
    /// Largest size of a random sample.
    pub sample_size: usize,
    /// `∀`-nesting of F énoncés.
    pub max_qdepth: u32,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            size_bound: 9,
            dictif_bound: 8,
            samples: 0,
            seed: 0,
            sample_size: 20,
            max_qdepth: 2,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CoherenceReport {
    pub checked: usize,
    pub unknown: usize,
    /// Énoncés where `e` and `¬e` are both theorems or both not.
    pub violations: Vec<(Enonce, Verdict, Verdict)>,
}

/// Exactly one of `e`, `¬e` is a theorem, for closed `e`: exhaustively up to
/// the size bound, then on random samples.
pub fn coherence_scan(cfg: &TheoryConfig, opts: &ScanOptions) -> Result<CoherenceReport, TheoryError> {
    let shape = match &cfg.kind {
        TheoryKind::A => None,
        TheoryKind::B => Some(Shape::B),
        TheoryKind::D => Some(Shape::D {
            dictifs: opts.dictif_bound,
        }),
        TheoryKind::F { .. } => Some(Shape::ClosedF {
            dictifs: opts.dictif_bound,
            max_qdepth: opts.max_qdepth,
        }),
        _ => return Err(TheoryError::NotDecidable(format!("{} has no closed-énoncé scan", cfg.label()))),
    };
    let mut report = CoherenceReport::default();
    let mut check = |e: Enonce| -> Result<(), TheoryError> {
        report.checked += 1;
        let v = is_theorem(cfg, &e)?;
        let w = is_theorem(cfg, &Enonce::not(e.clone()))?;
        if !v.is_known() || !w.is_known() {
            report.unknown += 1;
        } else if v.is_theorem() == w.is_theorem() {
            report.violations.push((e, v, w));
        }
        Ok(())
    };
    let Some(shape) = shape else {
        // Theory A has exactly two énoncés; Θ is ¬Ψ.
        check(Enonce::Psi)?;
        return Ok(report);
    };
    for e in Enumerator::new(shape).up_to(opts.size_bound) {
        check(e)?;
    }
    let mut gen = FormulaGen::new(opts.seed);
    for _ in 0..opts.samples {
        check(gen.enonce(shape, opts.sample_size))?;
    }
    Ok(report)
}
