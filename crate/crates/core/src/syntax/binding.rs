//! Profondeur, hauteur and niveau of littème occurrences.
//!
//! Signs are numbered in prefix order: every node is a sign, and each term of
//! an appartenance is one more sign. Binders are identified by the sign
//! number of their `∀`.

use std::collections::BTreeMap;

use super::ast::{Enonce, Term};
use crate::dictif::HfSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Binding {
    /// Occurrence of the positive literal of this level.
    Free { level: u32 },
    /// Occurrence of the literal introduced by the `∀` at this sign.
    Bound { binder: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Occurrence {
    pub sign: usize,
    pub height: u32,
    pub depth: u32,
    pub level: i64,
    pub binding: Binding,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinderInfo {
    pub sign: usize,
    pub depth: u32,
    pub occurrences: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BindingReport {
    pub occurrences: Vec<Occurrence>,
    pub binders: Vec<BinderInfo>,
}

impl BindingReport {
    pub fn free(&self) -> impl Iterator<Item = &Occurrence> {
        self.occurrences.iter().filter(|o| matches!(o.binding, Binding::Free { .. }))
    }

    pub fn bound(&self) -> impl Iterator<Item = &Occurrence> {
        self.occurrences.iter().filter(|o| matches!(o.binding, Binding::Bound { .. }))
    }

    /// Binders with no occurrence ("inoccupé").
    pub fn vacuous_binders(&self) -> impl Iterator<Item = &BinderInfo> {
        self.binders.iter().filter(|b| b.occurrences == 0)
    }

    pub fn binder(&self, sign: usize) -> Option<&BinderInfo> {
        self.binders.iter().find(|b| b.sign == sign)
    }
}

pub fn binding_report(e: &Enonce) -> BindingReport {
    fn walk(e: &Enonce, sign: &mut usize, binders: &mut Vec<usize>, report: &mut BindingReport) {
        let me = *sign;
        *sign += 1;
        match e {
            Enonce::Psi | Enonce::Var(_) => {}
            Enonce::Implies(a, b) => {
                walk(a, sign, binders, report);
                walk(b, sign, binders, report);
            }
            Enonce::ForAll(b) => {
                report.binders.push(BinderInfo {
                    sign: me,
                    depth: binders.len() as u32,
                    occurrences: 0,
                });
                binders.push(me);
                walk(b, sign, binders, report);
                binders.pop();
            }
            Enonce::In(l, r) => {
                for t in [l, r] {
                    let at = *sign;
                    *sign += 1;
                    if let Term::Litteme(h) = t {
                        let depth = binders.len() as u32;
                        let level = *h as i64 - depth as i64;
                        let binding = if level >= 1 {
                            Binding::Free { level: level as u32 }
                        } else {
                            let binder = binders[(-level) as usize];
                            if let Some(info) = report.binders.iter_mut().find(|b| b.sign == binder) {
                                info.occurrences += 1;
                            }
                            Binding::Bound { binder }
                        };
                        report.occurrences.push(Occurrence {
                            sign: at,
                            height: *h,
                            depth,
                            level,
                            binding,
                        });
                    }
                }
            }
        }
    }
    let mut report = BindingReport::default();
    walk(e, &mut 0, &mut Vec::new(), &mut report);
    report
}

/// No occurrence of a positive literal.
pub fn is_strictly_closed(e: &Enonce) -> bool {
    let mut closed = true;
    e.visit_littemes(0, &mut |h, d| closed &= h <= d);
    closed
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum SignKind {
    ForAll,
    Binary,
    Saturator,
}

fn signs(e: &Enonce) -> Vec<SignKind> {
    fn walk(e: &Enonce, out: &mut Vec<SignKind>) {
        match e {
            Enonce::Psi | Enonce::Var(_) => out.push(SignKind::Saturator),
            Enonce::Implies(a, b) => {
                out.push(SignKind::Binary);
                walk(a, out);
                walk(b, out);
            }
            Enonce::ForAll(b) => {
                out.push(SignKind::ForAll);
                walk(b, out);
            }
            Enonce::In(..) => out.extend([SignKind::Binary, SignKind::Saturator, SignKind::Saturator]),
        }
    }
    let mut out = Vec::new();
    walk(e, &mut out);
    out
}

/// Depth of every sign by the left-to-right rule: the first sign has depth 0,
/// each `∀` adds one, and each saturator subtracts the number of universalized
/// sub-énoncés it completes.
pub fn scan_depths(e: &Enonce) -> Vec<u32> {
    let mut out = Vec::new();
    // (is ∀, operands still missing)
    let mut pending: Vec<(bool, u8)> = Vec::new();
    let mut depth = 0u32;
    for kind in signs(e) {
        out.push(depth);
        match kind {
            SignKind::ForAll => {
                pending.push((true, 1));
                depth += 1;
            }
            SignKind::Binary => pending.push((false, 2)),
            SignKind::Saturator => {
                while let Some(top) = pending.last_mut() {
                    top.1 -= 1;
                    if top.1 > 0 {
                        break;
                    }
                    let (is_forall, _) = pending.pop().expect("non-empty");
                    if is_forall {
                        depth -= 1;
                    }
                }
            }
        }
    }
    out
}

/// Depth of every sign as its number of `∀` ancestors.
pub fn ancestor_depths(e: &Enonce) -> Vec<u32> {
    fn walk(e: &Enonce, depth: u32, out: &mut Vec<u32>) {
        out.push(depth);
        match e {
            Enonce::Psi | Enonce::Var(_) => {}
            Enonce::Implies(a, b) => {
                walk(a, depth, out);
                walk(b, depth, out);
            }
            Enonce::ForAll(b) => walk(b, depth + 1, out),
            Enonce::In(..) => out.extend([depth, depth]),
        }
    }
    let mut out = Vec::new();
    walk(e, 0, &mut out);
    out
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SubstituteError {
    #[error("sign {0} is not a universalized sub-énoncé")]
    MalformedTarget(usize),
}

/// Removes the `∀` at sign `target` and puts `value` in place of the
/// littèmes it binds. Occurrences inside its scope that point further out
/// lose one height, keeping their binder or level.
pub fn substitute(e: &Enonce, target: usize, value: &HfSet) -> Result<Enonce, SubstituteError> {
    fn go(e: &Enonce, sign: &mut usize, target: usize, value: &HfSet) -> Result<Option<Enonce>, SubstituteError> {
        let me = *sign;
        *sign += 1;
        if me == target {
            return match e {
                Enonce::ForAll(b) => Ok(Some(b.instantiate_block(std::slice::from_ref(value)))),
                _ => Err(SubstituteError::MalformedTarget(target)),
            };
        }
        match e {
            Enonce::Psi | Enonce::Var(_) => Ok(None),
            Enonce::In(..) => {
                *sign += 2;
                if target < *sign {
                    return Err(SubstituteError::MalformedTarget(target));
                }
                Ok(None)
            }
            Enonce::ForAll(b) => Ok(go(b, sign, target, value)?.map(Enonce::forall)),
            Enonce::Implies(a, b) => {
                if let Some(na) = go(a, sign, target, value)? {
                    return Ok(Some(Enonce::Implies(na.into(), b.clone())));
                }
                Ok(go(b, sign, target, value)?.map(|nb| Enonce::Implies(a.clone(), nb.into())))
            }
        }
    }
    go(e, &mut 0, target, value)?.ok_or(SubstituteError::MalformedTarget(target))
}

/// Names attached to free literal levels, standing in for the constants of
/// definitional axioms.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Constants {
    by_level: BTreeMap<u32, String>,
}

impl Constants {
    pub fn new() -> Self {
        Constants::default()
    }

    pub fn insert(&mut self, level: u32, name: impl Into<String>) -> Option<String> {
        self.by_level.insert(level, name.into())
    }

    pub fn name(&self, level: u32) -> Option<&str> {
        self.by_level.get(&level).map(String::as_str)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &str)> {
        self.by_level.iter().map(|(k, v)| (*k, v.as_str()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse;

    #[test]
    fn bound_at_level_zero() {
        let r = binding_report(&parse("all in x@1 x@1").unwrap());
        assert_eq!(r.occurrences.len(), 2);
        for o in &r.occurrences {
            assert_eq!((o.depth, o.height, o.level), (1, 1, 0));
            assert_eq!(o.binding, Binding::Bound { binder: 0 });
        }
        assert_eq!(r.vacuous_binders().count(), 0);
    }

    #[test]
    fn top_level_littemes_are_free() {
        let r = binding_report(&parse("in x@2 x@1").unwrap());
        let levels: Vec<_> = r.occurrences.iter().map(|o| o.binding).collect();
        assert_eq!(levels, vec![Binding::Free { level: 2 }, Binding::Free { level: 1 }]);
    }

    #[test]
    fn nested_binders() {
        // signs: 0 ∀, 1 ∀, 2 ∈, 3 x@3, 4 x@1
        let r = binding_report(&parse("all all in x@3 x@1").unwrap());
        assert_eq!(r.occurrences[0].level, 1);
        assert_eq!(r.occurrences[0].binding, Binding::Free { level: 1 });
        assert_eq!(r.occurrences[1].level, -1);
        assert_eq!(r.occurrences[1].binding, Binding::Bound { binder: 1 });
        assert_eq!(r.binder(1).unwrap().depth, 1);
        assert_eq!(r.vacuous_binders().map(|b| b.sign).collect::<Vec<_>>(), vec![0]);
        let e = parse("all all in x@3 x@1").unwrap();
        assert_eq!(scan_depths(&e), vec![0, 1, 2, 2, 2]);
        assert_eq!(scan_depths(&e), ancestor_depths(&e));
    }

    #[test]
    fn scanning_rule_drops_after_completion() {
        // imp (all psi) (all in x@1 x@1): Ψ completes the first ∀.
        let e = parse("imp all psi all in x@1 x@1").unwrap();
        assert_eq!(scan_depths(&e), vec![0, 0, 1, 0, 1, 1, 1]);
        assert_eq!(scan_depths(&e), ancestor_depths(&e));
    }

    #[test]
    fn closedness() {
        assert!(is_strictly_closed(&Enonce::Psi));
        assert!(!is_strictly_closed(&parse("in x@1 x@1").unwrap()));
        assert!(is_strictly_closed(&parse("all in x@1 D#0").unwrap()));
    }

    #[test]
    fn substitute_examples() {
        let e = parse("all in x@1 x@1").unwrap();
        assert_eq!(substitute(&e, 0, &HfSet::empty()).unwrap(), parse("in D#0 D#0").unwrap());

        let e = parse("all all in x@1 x@2").unwrap();
        let out = substitute(&e, 0, &HfSet::from_u64(1)).unwrap();
        assert_eq!(out, parse("all in x@1 D#1").unwrap());

        // Vacuous binder: only the free occurrence shifts.
        let e = parse("imp psi all in x@3 D#0").unwrap();
        assert_eq!(substitute(&e, 2, &HfSet::empty()).unwrap(), parse("imp psi in x@2 D#0").unwrap());

        assert_eq!(substitute(&e, 1, &HfSet::empty()), Err(SubstituteError::MalformedTarget(1)));
        assert_eq!(substitute(&e, 5, &HfSet::empty()), Err(SubstituteError::MalformedTarget(5)));
        assert_eq!(substitute(&e, 99, &HfSet::empty()), Err(SubstituteError::MalformedTarget(99)));
    }

    #[test]
    fn substitution_preserves_other_binders() {
        // ∀a ∀b (b ∈ a ⟹ ∀c (c ∈ b)) at the inner binder b.
        let e = parse("all all imp in x@1 x@2 all in x@1 x@2").unwrap();
        let before = binding_report(&e);
        let out = substitute(&e, 1, &HfSet::from_u64(3)).unwrap();
        assert_eq!(out, parse("all imp in D#3 x@1 all in x@1 D#3").unwrap());
        let after = binding_report(&out);
        assert_eq!(before.binders.len() - 1, after.binders.len());
        assert!(after.bound().all(|o| matches!(o.binding, Binding::Bound { .. })));
    }

    #[test]
    fn constants_table() {
        let mut c = Constants::new();
        c.insert(1, "a");
        assert_eq!(c.name(1), Some("a"));
        assert_eq!(c.name(2), None);
    }
}
