//! Translations between the languages: the binary translation from D to B,
//! container expansion, maxi-dénexion, universal closure, the steps `•H`, the
//! composed translation `[K` and the full pipeline `ud[K`.

use std::fmt;

use crate::dictif::{ContainerSchedule, DictifError, HfSet};
use crate::propositional::{big_et, LanguageError};
use crate::syntax::{is_strictly_closed, Enonce, Language, Term};
use crate::verdict::{Limit, Limits};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TranslateError {
    #[error(transparent)]
    Language(#[from] LanguageError),
    #[error("énoncé is not universalized")]
    NotUniversalized,
    #[error("énoncé has free littèmes; close it first")]
    NotClosed,
    #[error("schedule: {0}")]
    Schedule(#[from] DictifError),
    #[error("expansion would exceed {limit} signs")]
    ExpansionLimit { limit: usize },
    #[error("evaluation exceeded {limit} instances")]
    EvalBudget { limit: u64 },
}

impl TranslateError {
    /// The resource limit behind this error, if it is one.
    pub fn limit(&self) -> Option<Limit> {
        match self {
            TranslateError::Schedule(_) => Some(Limit::ScheduleCap),
            TranslateError::ExpansionLimit { .. } => Some(Limit::ExpansionSize),
            TranslateError::EvalBudget { .. } => Some(Limit::EvaluationSteps),
            _ => None,
        }
    }
}

/// `∈ D_K D_N` becomes `Θ` when bit `K` of `N` is set and `Ψ` otherwise;
/// `Ψ` and `⟹` are kept.
pub fn translate_d_to_b(e: &Enonce) -> Result<Enonce, LanguageError> {
    match e {
        Enonce::Psi => Ok(Enonce::Psi),
        Enonce::Implies(a, b) => Ok(Enonce::implies(translate_d_to_b(a)?, translate_d_to_b(b)?)),
        Enonce::In(Term::Dictif(x), Term::Dictif(z)) => Ok(if z.contains(x) {
            Enonce::theta()
        } else {
            Enonce::Psi
        }),
        _ => Err(LanguageError::mismatch(Language::D, e)),
    }
}

/// Expansion of the leading block `∀t_1…t_N R` over `z`: the `ET` of the
/// `|z|^N` instances `R(T_1,…,T_N)`, tuples in lexicographic order.
pub fn expand_over(e: &Enonce, z: &HfSet) -> Result<Enonce, TranslateError> {
    let mut budget = usize::MAX;
    expand_limited(e, z, &mut budget)
}

fn expand_limited(e: &Enonce, z: &HfSet, budget: &mut usize) -> Result<Enonce, TranslateError> {
    let (n, body) = e.split_block();
    if n == 0 {
        return Err(TranslateError::NotUniversalized);
    }
    let elems = z.elements();
    let count = (elems.len() as u128).saturating_pow(n as u32);
    let estimate = count.saturating_mul(body.size() as u128 + 3);
    if estimate > *budget as u128 {
        let limit = *budget;
        return Err(TranslateError::ExpansionLimit { limit });
    }
    *budget -= estimate as usize;
    if elems.is_empty() {
        return Ok(big_et(Vec::new()));
    }
    let mut instances = Vec::with_capacity(count as usize);
    let mut digits = vec![0usize; n];
    loop {
        let tuple: Vec<HfSet> = digits.iter().map(|&i| elems[i].clone()).collect();
        instances.push(body.instantiate_block(&tuple));
        // Odometer with the first variable most significant.
        let mut pos = n;
        loop {
            if pos == 0 {
                return Ok(big_et(instances));
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < elems.len() {
                break;
            }
            digits[pos] = 0;
        }
    }
}

/// Maxi-dénexion: pushes every `∀` as far right as the rules allow.
///
/// Rules, applied bottom-up until nothing changes:
/// - `∀B ↦ B` when the binder is unused;
/// - `∀(B ⟹ C) ↦ B ⟹ ∀C` when the binder does not occur in `B`;
/// - `∀(B ⟹ C) ↦ ¬∀¬B ⟹ C` when it does not occur in `C` and `C ≠ Ψ`.
pub fn maxi_denect(e: &Enonce) -> Enonce {
    match e {
        Enonce::Psi | Enonce::Var(_) | Enonce::In(..) => e.clone(),
        Enonce::Implies(a, b) => Enonce::implies(maxi_denect(a), maxi_denect(b)),
        Enonce::ForAll(b) => push_forall(maxi_denect(b)),
    }
}

// `body` is already normalized.
fn push_forall(body: Enonce) -> Enonce {
    if !body.uses_outer_binder() {
        return body.drop_outer_binder();
    }
    if let Enonce::Implies(b, c) = &body {
        if !b.uses_outer_binder() {
            return Enonce::implies(b.drop_outer_binder(), push_forall((**c).clone()));
        }
        if !c.uses_outer_binder() && **c != Enonce::Psi {
            let witness = Enonce::not(push_forall(Enonce::not((**b).clone())));
            return Enonce::implies(witness, c.drop_outer_binder());
        }
    }
    Enonce::forall(body)
}

/// The translation `u`: one new `∀` per distinct free level, the highest
/// level bound outermost. Identity on strictly closed énoncés.
pub fn universal_closure(e: &Enonce) -> Enonce {
    let levels: Vec<u32> = e.free_levels().into_iter().rev().collect();
    if levels.is_empty() {
        return e.clone();
    }
    let m = levels.len() as u32;
    let body = e.map_littemes(0, &|h, d| {
        if h <= d {
            return Term::Litteme(h);
        }
        let t = levels.iter().position(|&l| l == h - d).expect("collected level") as u32;
        Term::Litteme(d + m - t)
    });
    Enonce::forall_n(levels.len(), body)
}

/// The step `•H`: every outermost universalized block is expanded over `C_H`.
/// Énoncés without `∀` come back unchanged.
pub fn step(e: &Enonce, h: usize, sched: &ContainerSchedule, limits: &Limits) -> Result<Enonce, TranslateError> {
    let container = sched.container(h)?;
    let mut budget = limits.max_nodes;
    step_with(e, &container, &mut budget)
}

fn step_with(e: &Enonce, container: &HfSet, budget: &mut usize) -> Result<Enonce, TranslateError> {
    match e {
        Enonce::Psi | Enonce::Var(_) | Enonce::In(..) => Ok(e.clone()),
        Enonce::Implies(a, b) => {
            if !e.contains_forall() {
                return Ok(e.clone());
            }
            Ok(Enonce::implies(step_with(a, container, budget)?, step_with(b, container, budget)?))
        }
        Enonce::ForAll(_) => expand_limited(e, container, budget),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceEntry {
    pub stage: String,
    pub size: usize,
    /// Nesting depth of universalized blocks.
    pub qdepth: usize,
}

/// Snapshots of one translation run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PipelineTrace {
    pub entries: Vec<TraceEntry>,
}

impl PipelineTrace {
    fn record(&mut self, stage: impl Into<String>, e: &Enonce) {
        self.entries.push(TraceEntry {
            stage: stage.into(),
            size: e.size(),
            qdepth: e.block_depth(),
        });
    }
}

impl fmt::Display for PipelineTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in &self.entries {
            writeln!(f, "stage={} size={} qdepth={}", t.stage, t.size, t.qdepth)?;
        }
        Ok(())
    }
}

/// The translation `[K`: steps with indices `K, μK, μμK, …` until no `∀` is left.
pub fn translate_bracket_k(
    e: &Enonce,
    k: usize,
    sched: &ContainerSchedule,
    limits: &Limits,
) -> Result<Enonce, TranslateError> {
    bracket_k_traced(e, k, sched, limits, &mut PipelineTrace::default())
}

fn bracket_k_traced(
    e: &Enonce,
    k: usize,
    sched: &ContainerSchedule,
    limits: &Limits,
    trace: &mut PipelineTrace,
) -> Result<Enonce, TranslateError> {
    if !is_strictly_closed(e) {
        return Err(TranslateError::NotClosed);
    }
    let indices = sched.indices(k, e.block_depth())?;
    let mut cur = e.clone();
    for h in indices {
        cur = step(&cur, h, sched, limits)?;
        trace.record(format!("step:{h}"), &cur);
    }
    debug_assert!(!cur.contains_forall());
    Ok(cur)
}

/// The translation `ud[K` of an F-énoncé into D, with its trace.
pub fn pipeline_udk(
    e: &Enonce,
    k: usize,
    sched: &ContainerSchedule,
    limits: &Limits,
) -> Result<(Enonce, PipelineTrace), TranslateError> {
    let mut trace = PipelineTrace::default();
    let closed = universal_closure(e);
    trace.record("u", &closed);
    let denected = maxi_denect(&closed);
    trace.record("d", &denected);
    let out = bracket_k_traced(&denected, k, sched, limits, &mut trace)?;
    trace.record("result", &out);
    Ok((out, trace))
}

/// Truth value of the B-translation of `e^[K`, computed without building
/// the expansion: each block at nesting layer `i` ranges over the container
/// of the `i`-th index in `K, μK, …`, as the steps would expand it.
pub fn evaluate_bracket_k(
    e: &Enonce,
    k: usize,
    sched: &ContainerSchedule,
    limits: &Limits,
) -> Result<bool, TranslateError> {
    if e.language().is_none() || matches!(e.language(), Some(Language::C)) {
        return Err(LanguageError::mismatch(Language::F, e).into());
    }
    if !is_strictly_closed(e) {
        return Err(TranslateError::NotClosed);
    }
    let containers = sched
        .indices(k, e.block_depth())?
        .into_iter()
        .map(|h| sched.container(h))
        .collect::<Result<Vec<_>, _>>()?;
    let mut ev = Evaluator {
        containers,
        steps: 0,
        max_steps: limits.max_eval_steps,
    };
    ev.eval(e, 0, &mut Vec::new())
}

/// `evaluate_bracket_k` after closure and maxi-dénexion.
pub fn evaluate_pipeline_udk(
    e: &Enonce,
    k: usize,
    sched: &ContainerSchedule,
    limits: &Limits,
) -> Result<bool, TranslateError> {
    evaluate_bracket_k(&maxi_denect(&universal_closure(e)), k, sched, limits)
}

struct Evaluator {
    containers: Vec<HfSet>,
    steps: u64,
    max_steps: u64,
}

impl Evaluator {
    fn term<'a>(t: &'a Term, env: &'a [HfSet]) -> &'a HfSet {
        match t {
            Term::Dictif(s) => s,
            Term::Litteme(h) => &env[env.len() - *h as usize],
        }
    }

    fn eval(&mut self, e: &Enonce, layer: usize, env: &mut Vec<HfSet>) -> Result<bool, TranslateError> {
        match e {
            Enonce::Psi => Ok(false),
            Enonce::Var(_) => Err(LanguageError::mismatch(Language::F, e).into()),
            Enonce::Implies(a, b) => {
                if !self.eval(a, layer, env)? {
                    return Ok(true);
                }
                self.eval(b, layer, env)
            }
            Enonce::In(l, r) => Ok(Self::term(r, env).contains(Self::term(l, env))),
            Enonce::ForAll(_) => {
                let (n, body) = e.split_block();
                let elems = self.containers[layer].clone();
                let elems = elems.elements();
                if elems.is_empty() {
                    return Ok(true);
                }
                let base = env.len();
                let mut digits = vec![0usize; n];
                env.extend(std::iter::repeat_n(elems[0].clone(), n));
                loop {
                    self.steps += 1;
                    if self.steps > self.max_steps {
                        return Err(TranslateError::EvalBudget { limit: self.max_steps });
                    }
                    for (i, &d) in digits.iter().enumerate() {
                        env[base + i] = elems[d].clone();
                    }
                    if !self.eval(body, layer + 1, env)? {
                        env.truncate(base);
                        return Ok(false);
                    }
                    let mut pos = n;
                    loop {
                        if pos == 0 {
                            env.truncate(base);
                            return Ok(true);
                        }
                        pos -= 1;
                        digits[pos] += 1;
                        if digits[pos] < elems.len() {
                            break;
                        }
                        digits[pos] = 0;
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dictif::p_level;
    use crate::propositional::eval_bool;
    use crate::syntax::{binding_report, parse};

    fn p(s: &str) -> Enonce {
        parse(s).unwrap()
    }

    fn ladder() -> ContainerSchedule {
        ContainerSchedule::p_ladder()
    }

    #[test]
    fn binary_translation() {
        assert_eq!(translate_d_to_b(&p("in D#1 D#6")).unwrap(), Enonce::theta());
        assert_eq!(translate_d_to_b(&p("in D#0 D#6")).unwrap(), Enonce::Psi);
        let e = translate_d_to_b(&p("imp in D#0 D#6 psi")).unwrap();
        assert_eq!(e, Enonce::theta());
        assert!(eval_bool(&e).unwrap());
        assert!(translate_d_to_b(&p("all in x@1 D#0")).is_err());
    }

    #[test]
    fn expansion_examples() {
        let xx = p("all in x@1 x@1");
        assert_eq!(expand_over(&xx, &HfSet::from_u64(1)).unwrap(), p("in D#0 D#0"));
        assert_eq!(
            expand_over(&xx, &p_level(2).unwrap()).unwrap(),
            big_et(vec![p("in D#0 D#0"), p("in D#1 D#1")])
        );
        assert_eq!(expand_over(&p("all all in x@2 x@1"), &p_level(1).unwrap()).unwrap(), p("in D#0 D#0"));
        assert_eq!(expand_over(&xx, &HfSet::empty()).unwrap(), Enonce::theta());
        assert_eq!(expand_over(&p("psi"), &HfSet::empty()), Err(TranslateError::NotUniversalized));
    }

    #[test]
    fn expansion_tuple_order_is_lexicographic() {
        // ∀x∀y (x ∈ y) over {∅, {∅}}: (0,0) (0,1) (1,0) (1,1).
        let out = expand_over(&p("all all in x@2 x@1"), &p_level(2).unwrap()).unwrap();
        let expected = big_et(
            [(0, 0), (0, 1), (1, 0), (1, 1)]
                .iter()
                .map(|&(a, b)| Enonce::member(Term::dictif_index(a), Term::dictif_index(b)))
                .collect(),
        );
        assert_eq!(out, expected);
    }

    #[test]
    fn expansion_limit() {
        let mut budget = 10;
        let r = expand_limited(&p("all all in x@2 x@1"), &p_level(3).unwrap(), &mut budget);
        assert_eq!(r, Err(TranslateError::ExpansionLimit { limit: 10 }));
    }

    #[test]
    fn maxi_denect_examples() {
        assert_eq!(maxi_denect(&p("all imp psi psi")), p("imp psi psi"));
        assert_eq!(maxi_denect(&p("all imp psi in x@1 x@1")), p("imp psi all in x@1 x@1"));
        let done = p("imp psi all in x@1 x@1");
        assert_eq!(maxi_denect(&done), done);
        // Binder only in the antecedent: becomes an existential.
        assert_eq!(
            maxi_denect(&p("all imp in x@1 x@1 in D#0 D#1")),
            p("imp ~ all ~ in x@1 x@1 in D#0 D#1")
        );
        // Negations stay put.
        let neg = p("all ~ in x@1 x@1");
        assert_eq!(maxi_denect(&neg), neg);
        // ∀x∀y (B(x) ⟹ C(y)) splits completely.
        assert_eq!(
            maxi_denect(&p("all all imp in x@2 x@2 in x@1 x@1")),
            p("imp ~ all ~ in x@1 x@1 all in x@1 x@1")
        );
    }

    #[test]
    fn closure_examples() {
        assert_eq!(universal_closure(&p("in x@1 x@1")), p("all in x@1 x@1"));
        assert_eq!(universal_closure(&Enonce::Psi), Enonce::Psi);
        // Levels 3 and 1: level 3 outermost, both re-bound.
        let c = universal_closure(&p("in x@3 x@1"));
        assert_eq!(c, p("all all in x@2 x@1"));
        assert!(binding_report(&c).free().next().is_none());
        // Not fidèle.
        let lhs = universal_closure(&p("imp in x@1 x@1 psi"));
        let rhs = Enonce::implies(universal_closure(&p("in x@1 x@1")), Enonce::Psi);
        assert_ne!(lhs, rhs);
    }

    #[test]
    fn step_examples() {
        let limits = Limits::default();
        let d = p("imp in D#1 D#6 psi");
        assert_eq!(step(&d, 1, &ladder(), &limits).unwrap(), d);
        assert_eq!(step(&p("all in x@1 x@1"), 1, &ladder(), &limits).unwrap(), p("in D#0 D#0"));
        let e = p("all all imp in x@1 x@2 all in x@1 x@2");
        assert_eq!(e.block_depth(), 2);
        let once = step(&e, 1, &ladder(), &limits).unwrap();
        assert_eq!(once, p("imp in D#0 D#0 all in x@1 D#0"));
        assert_eq!(once.block_depth(), 1);
        assert!(step(&e, 6, &ladder(), &limits).is_err());
    }

    #[test]
    fn bracket_k_examples() {
        let limits = Limits::default();
        assert_eq!(translate_bracket_k(&Enonce::Psi, 1, &ladder(), &limits).unwrap(), Enonce::Psi);
        let out = translate_bracket_k(&p("all in x@1 x@1"), 1, &ladder(), &limits).unwrap();
        assert_eq!(out, p("in D#0 D#0"));
        assert!(!eval_bool(&translate_d_to_b(&out).unwrap()).unwrap());
        let (a, b) = (p("all in x@1 x@1"), p("all all imp in x@1 x@2 all in x@1 x@2"));
        let whole = translate_bracket_k(&Enonce::implies(a.clone(), b.clone()), 2, &ladder(), &limits).unwrap();
        let parts = Enonce::implies(
            translate_bracket_k(&a, 2, &ladder(), &limits).unwrap(),
            translate_bracket_k(&b, 2, &ladder(), &limits).unwrap(),
        );
        assert_eq!(whole, parts);
        assert_eq!(
            translate_bracket_k(&p("in x@1 D#0"), 1, &ladder(), &limits),
            Err(TranslateError::NotClosed)
        );
        let deep = p("all all all all all all in x@1 x@1");
        assert_eq!(deep.block_depth(), 1);
        let nested = p("all imp psi all imp psi all in x@1 x@2");
        let r = translate_bracket_k(&nested, 4, &ladder(), &limits);
        assert!(matches!(r, Err(TranslateError::Schedule(_))));
    }

    #[test]
    fn pipeline_examples() {
        let limits = Limits::default();
        let (out, trace) = pipeline_udk(&Enonce::Psi, 1, &ladder(), &limits).unwrap();
        assert_eq!(out, Enonce::Psi);
        assert_eq!(trace.entries.len(), 3);
        let (open, _) = pipeline_udk(&p("in x@1 x@1"), 1, &ladder(), &limits).unwrap();
        let (closed, _) = pipeline_udk(&p("all in x@1 x@1"), 1, &ladder(), &limits).unwrap();
        assert_eq!(open, closed);
        let e = p("all all imp in x@1 x@2 all in x@1 x@2");
        let (_, trace) = pipeline_udk(&e, 1, &ladder(), &limits).unwrap();
        let depths: Vec<_> = trace.entries.iter().map(|t| t.qdepth).collect();
        assert_eq!(depths, vec![2, 2, 1, 0, 0]);
        assert_eq!(
            trace.to_string().lines().next().unwrap(),
            format!("stage=u size={} qdepth=2", e.size())
        );
    }

    #[test]
    fn fused_evaluation_matches_materialized() {
        let limits = Limits::default();
        for src in [
            "all in x@1 x@1",
            "all ~ in x@1 x@1",
            "all all imp in x@1 x@2 all in x@1 x@2",
            "imp all in x@1 D#1 E! in D#0 x@1",
            "all all imp in x@1 D#0 in x@1 x@2",
        ] {
            let e = maxi_denect(&p(src));
            for k in 1..=3 {
                let materialized = translate_bracket_k(&e, k, &ladder(), &limits).unwrap();
                let expected = eval_bool(&translate_d_to_b(&materialized).unwrap()).unwrap();
                assert_eq!(evaluate_bracket_k(&e, k, &ladder(), &limits).unwrap(), expected, "{src} at {k}");
            }
        }
    }

    #[test]
    fn fused_evaluation_budget() {
        let limits = Limits {
            max_eval_steps: 3,
            ..Limits::default()
        };
        let r = evaluate_bracket_k(&p("all all imp in x@1 D#0 in x@1 x@2"), 3, &ladder(), &limits);
        assert_eq!(r, Err(TranslateError::EvalBudget { limit: 3 }));
    }
}
