//! Boolean evaluation and tautology decision for theories B and C, the three
//! axiom schemas, and the big conjunction `ET`.

use std::collections::BTreeMap;

use crate::syntax::{Enonce, Language};
use crate::verdict::{Limit, Verdict};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LanguageError {
    #[error("expected an énoncé of language {expected}, found {}", found.map(|l| l.to_string()).unwrap_or_else(|| "a mixed énoncé".into()))]
    Mismatch {
        expected: Language,
        found: Option<Language>,
    },
}

impl LanguageError {
    pub fn mismatch(expected: Language, e: &Enonce) -> LanguageError {
        LanguageError::Mismatch {
            expected,
            found: e.language(),
        }
    }
}

/// Truth values for the variables `λ^n Ψ`. `Ψ` is always false; variables
/// missing from the map read as false.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TruthAssignment {
    values: BTreeMap<u32, bool>,
}

impl TruthAssignment {
    pub fn new() -> Self {
        TruthAssignment::default()
    }

    pub fn set(&mut self, var: u32, value: bool) {
        self.values.insert(var, value);
    }

    pub fn get(&self, var: u32) -> bool {
        self.values.get(&var).copied().unwrap_or(false)
    }

    pub fn covers(&self, e: &Enonce) -> bool {
        e.variables().iter().all(|v| self.values.contains_key(v))
    }
}

fn eval_in(e: &Enonce, expected: Language, assignment: &TruthAssignment) -> Result<bool, LanguageError> {
    // Loops along the consequent spine, recursing only into antecedents.
    let mut cur = e;
    loop {
        match cur {
            Enonce::Psi => return Ok(false),
            Enonce::Var(n) if expected == Language::C => return Ok(assignment.get(*n)),
            Enonce::Implies(a, b) => {
                if !eval_in(a, expected, assignment)? {
                    // Still reject foreign constructs in the consequent.
                    check_language(b, expected)?;
                    return Ok(true);
                }
                cur = b;
            }
            _ => return Err(LanguageError::mismatch(expected, e)),
        }
    }
}

fn check_language(e: &Enonce, expected: Language) -> Result<(), LanguageError> {
    match e.language() {
        Some(l) if expected.includes(l) => Ok(()),
        _ => Err(LanguageError::mismatch(expected, e)),
    }
}

/// `Ψ ↦ false`, `a ⟹ b ↦ ¬a ∨ b`, on énoncés of B.
pub fn eval_bool(e: &Enonce) -> Result<bool, LanguageError> {
    eval_in(e, Language::B, &TruthAssignment::default())
}

/// Evaluation of a C-énoncé under an assignment.
pub fn eval_with(e: &Enonce, assignment: &TruthAssignment) -> Result<bool, LanguageError> {
    eval_in(e, Language::C, assignment)
}

pub fn is_theorem_b(e: &Enonce) -> Result<bool, LanguageError> {
    eval_bool(e)
}

/// Truth-table decision; `Unknown` beyond `max_vars` distinct variables.
pub fn is_theorem_c(e: &Enonce, max_vars: usize) -> Result<Verdict, LanguageError> {
    check_language(e, Language::C)?;
    let vars: Vec<u32> = e.variables().into_iter().collect();
    if vars.len() > max_vars || vars.len() >= 64 {
        return Ok(Verdict::Unknown(Limit::TruthTableVariables));
    }
    let mut assignment = TruthAssignment::new();
    for row in 0u64..1 << vars.len() {
        for (i, v) in vars.iter().enumerate() {
            assignment.set(*v, row >> i & 1 == 1);
        }
        if !eval_with(e, &assignment)? {
            return Ok(Verdict::NonTheorem);
        }
    }
    Ok(Verdict::Theorem)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SchemaError {
    #[error("unknown schema {0}; schemas are numbered 1 to 3")]
    UnknownSchema(u8),
    #[error("schema {id} takes {expected} parts, got {got}")]
    Arity { id: u8, expected: usize, got: usize },
}

pub fn schema_arity(id: u8) -> Result<usize, SchemaError> {
    match id {
        1 => Ok(1),
        2 => Ok(2),
        3 => Ok(3),
        _ => Err(SchemaError::UnknownSchema(id)),
    }
}

/// Instances of the three schemas:
/// 1. `¬¬F ⟹ F`
/// 2. `D ⟹ (E ⟹ D)`
/// 3. `(A ⟹ (B ⟹ C)) ⟹ ((A ⟹ B) ⟹ (A ⟹ C))`
pub fn schema_instance(id: u8, parts: &[Enonce]) -> Result<Enonce, SchemaError> {
    let expected = schema_arity(id)?;
    if parts.len() != expected {
        return Err(SchemaError::Arity {
            id,
            expected,
            got: parts.len(),
        });
    }
    let imp = Enonce::implies;
    Ok(match parts {
        [f] => imp(Enonce::not(Enonce::not(f.clone())), f.clone()),
        [d, e] => imp(d.clone(), imp(e.clone(), d.clone())),
        [a, b, c] => imp(
            imp(a.clone(), imp(b.clone(), c.clone())),
            imp(imp(a.clone(), b.clone()), imp(a.clone(), c.clone())),
        ),
        _ => unreachable!("arity checked"),
    })
}

/// Right fold of `∧` over the conjuncts in the given order; `Θ` for none.
pub fn big_et(conjuncts: Vec<Enonce>) -> Enonce {
    let mut iter = conjuncts.into_iter().rev();
    match iter.next() {
        None => Enonce::theta(),
        Some(last) => iter.fold(last, |acc, e| Enonce::and(e, acc)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse;

    fn p(s: &str) -> Enonce {
        parse(s).unwrap()
    }

    #[test]
    fn eval_examples() {
        assert!(!eval_bool(&Enonce::Psi).unwrap());
        assert!(eval_bool(&Enonce::theta()).unwrap());
        assert!(eval_bool(&p("imp ~ ~ psi psi")).unwrap());
        assert!(!eval_bool(&p("imp theta psi")).unwrap());
        assert!(!eval_bool(&p("& psi psi")).unwrap());
        assert!(eval_bool(&p("in D#0 D#1")).is_err());
        assert!(eval_bool(&p("v@1")).is_err());
        // Short-circuit must not hide a foreign consequent.
        assert!(eval_bool(&p("imp psi in D#0 D#1")).is_err());
    }

    #[test]
    fn schemas_with_psi_are_theorems() {
        let psi = Enonce::Psi;
        for id in 1..=3u8 {
            let parts = vec![psi.clone(); schema_arity(id).unwrap()];
            assert!(is_theorem_b(&schema_instance(id, &parts).unwrap()).unwrap(), "schema {id}");
        }
        assert_eq!(
            schema_instance(2, &[Enonce::Psi, Enonce::theta()]).unwrap(),
            p("imp psi imp theta psi")
        );
        assert_eq!(
            schema_instance(2, &[Enonce::Psi]),
            Err(SchemaError::Arity {
                id: 2,
                expected: 2,
                got: 1
            })
        );
        assert_eq!(schema_instance(4, &[]), Err(SchemaError::UnknownSchema(4)));
    }

    #[test]
    fn schema_over_d_formulas_is_accepted() {
        let a = p("in D#0 D#1");
        let e = schema_instance(3, &[a.clone(), Enonce::Psi, a]).unwrap();
        assert_eq!(e.language(), Some(Language::D));
    }

    #[test]
    fn theory_c_examples() {
        let s3 = schema_instance(3, &[Enonce::Var(1), Enonce::Var(2), Enonce::Var(3)]).unwrap();
        assert_eq!(is_theorem_c(&s3, 20).unwrap(), Verdict::Theorem);
        assert_eq!(is_theorem_c(&Enonce::Var(1), 20).unwrap(), Verdict::NonTheorem);
        assert_eq!(is_theorem_c(&p("| v@1 ~ v@1"), 20).unwrap(), Verdict::Theorem);
        assert_eq!(
            is_theorem_c(&p("| v@1 ~ v@2"), 1).unwrap(),
            Verdict::Unknown(Limit::TruthTableVariables)
        );
        assert!(is_theorem_c(&p("in D#0 D#0"), 20).is_err());
    }

    #[test]
    fn truth_assignment() {
        let mut a = TruthAssignment::new();
        a.set(1, true);
        assert!(a.covers(&p("imp v@1 psi")));
        assert!(!a.covers(&p("imp v@1 v@2")));
        assert!(!eval_with(&p("imp v@1 psi"), &a).unwrap());
    }

    #[test]
    fn big_et_examples() {
        assert_eq!(big_et(vec![]), Enonce::theta());
        assert_eq!(big_et(vec![Enonce::Psi]), Enonce::Psi);
        assert!(!eval_bool(&big_et(vec![Enonce::Psi, Enonce::theta()])).unwrap());
        assert_eq!(
            big_et(vec![Enonce::Psi, Enonce::theta(), Enonce::Psi]),
            Enonce::and(Enonce::Psi, Enonce::and(Enonce::theta(), Enonce::Psi))
        );
    }
}
