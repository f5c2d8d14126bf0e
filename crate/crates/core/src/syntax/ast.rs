use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::dictif::HfSet;

/// A substantif: a nameless littème of height `H ≥ 1` or a dictif.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Term {
    Litteme(u32),
    Dictif(HfSet),
}

impl Term {
    pub fn dictif_index(n: u64) -> Term {
        Term::Dictif(HfSet::from_u64(n))
    }
}

/// An énoncé over `Ψ`, `⟹`, `∀`, `∈`.
///
/// `Var(n)` is the theory-C variable `λ…λΨ` with `n` lambdas. Littèmes carry
/// their height only: a littème of height `H` at `∀`-depth `P` is bound to the
/// enclosing `∀` of depth `P − H` when `H ≤ P`, and free of level `H − P` otherwise.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Enonce {
    Psi,
    Var(u32),
    Implies(Arc<Enonce>, Arc<Enonce>),
    ForAll(Arc<Enonce>),
    In(Term, Term),
}

/// The chain of formal languages. `A ⊂ B ⊂ C`, `B ⊂ D ⊂ F`, `B ⊂ E ⊂ F`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Language {
    A,
    B,
    C,
    D,
    E,
    F,
}

impl Language {
    /// Whether every énoncé of `other` is an énoncé of `self`.
    pub fn includes(self, other: Language) -> bool {
        use Language::*;
        match (self, other) {
            (x, y) if x == y => true,
            (_, A) => true,
            (C | D | E | F, B) => true,
            (F, D | E) => true,
            _ => false,
        }
    }

    pub fn parse(s: &str) -> Option<Language> {
        Some(match s {
            "A" | "a" => Language::A,
            "B" | "b" => Language::B,
            "C" | "c" => Language::C,
            "D" | "d" => Language::D,
            "E" | "e" => Language::E,
            "F" | "f" => Language::F,
            _ => return None,
        })
    }
}

impl fmt::Display for Language {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Language::A => "A",
            Language::B => "B",
            Language::C => "C",
            Language::D => "D",
            Language::E => "E",
            Language::F => "F",
        };
        f.write_str(s)
    }
}

impl Enonce {
    pub fn implies(a: Enonce, b: Enonce) -> Enonce {
        Enonce::Implies(Arc::new(a), Arc::new(b))
    }

    pub fn forall(body: Enonce) -> Enonce {
        Enonce::ForAll(Arc::new(body))
    }

    /// `∀…∀ body` with `n` binders.
    pub fn forall_n(n: usize, body: Enonce) -> Enonce {
        (0..n).fold(body, |acc, _| Enonce::forall(acc))
    }

    pub fn member(left: Term, right: Term) -> Enonce {
        Enonce::In(left, right)
    }

    /// `Θ`, encoded as `Ψ ⟹ Ψ`.
    pub fn theta() -> Enonce {
        Enonce::implies(Enonce::Psi, Enonce::Psi)
    }

    /// `¬e` is `e ⟹ Ψ`.
    pub fn not(e: Enonce) -> Enonce {
        Enonce::implies(e, Enonce::Psi)
    }

    /// `¬(a ⟹ ¬b)`.
    pub fn and(a: Enonce, b: Enonce) -> Enonce {
        Enonce::not(Enonce::implies(a, Enonce::not(b)))
    }

    /// `¬a ⟹ b`.
    pub fn or(a: Enonce, b: Enonce) -> Enonce {
        Enonce::implies(Enonce::not(a), b)
    }

    /// `(a ⟹ b) ∧ (b ⟹ a)`.
    pub fn iff(a: Enonce, b: Enonce) -> Enonce {
        Enonce::and(Enonce::implies(a.clone(), b.clone()), Enonce::implies(b, a))
    }

    /// `¬∀¬ body`.
    pub fn exists(body: Enonce) -> Enonce {
        Enonce::not(Enonce::forall(Enonce::not(body)))
    }

    /// Number of signs: every node counts one, and each term of an
    /// appartenance counts one more.
    pub fn size(&self) -> usize {
        match self {
            Enonce::Psi | Enonce::Var(_) => 1,
            Enonce::In(..) => 3,
            Enonce::ForAll(b) => 1 + b.size(),
            Enonce::Implies(a, b) => 1 + a.size() + b.size(),
        }
    }

    /// Maximal `∀`-nesting.
    pub fn quantifier_depth(&self) -> usize {
        match self {
            Enonce::Psi | Enonce::Var(_) | Enonce::In(..) => 0,
            Enonce::ForAll(b) => 1 + b.quantifier_depth(),
            Enonce::Implies(a, b) => a.quantifier_depth().max(b.quantifier_depth()),
        }
    }

    /// Maximal nesting of universalized blocks, a block being a maximal run
    /// `∀∀…∀` of directly nested quantifiers.
    pub fn block_depth(&self) -> usize {
        match self {
            Enonce::Psi | Enonce::Var(_) | Enonce::In(..) => 0,
            Enonce::ForAll(_) => {
                let (_, body) = self.split_block();
                1 + body.block_depth()
            }
            Enonce::Implies(a, b) => a.block_depth().max(b.block_depth()),
        }
    }

    /// Peels the maximal leading run of `∀`: returns its length and the body.
    pub fn split_block(&self) -> (usize, &Enonce) {
        let mut n = 0;
        let mut cur = self;
        while let Enonce::ForAll(b) = cur {
            n += 1;
            cur = b;
        }
        (n, cur)
    }

    pub fn contains_forall(&self) -> bool {
        self.quantifier_depth() > 0
    }

    /// The smallest language of the chain admitting this énoncé, or `None`
    /// when C-variables are mixed with `∀` or `∈`.
    pub fn language(&self) -> Option<Language> {
        #[derive(Default)]
        struct Seen {
            imp: bool,
            var: bool,
            forall: bool,
            litteme: bool,
            dictif: bool,
        }
        fn walk(e: &Enonce, s: &mut Seen) {
            match e {
                Enonce::Psi => {}
                Enonce::Var(_) => s.var = true,
                Enonce::Implies(a, b) => {
                    s.imp = true;
                    walk(a, s);
                    walk(b, s);
                }
                Enonce::ForAll(b) => {
                    s.forall = true;
                    walk(b, s);
                }
                Enonce::In(l, r) => {
                    for t in [l, r] {
                        match t {
                            Term::Litteme(_) => s.litteme = true,
                            Term::Dictif(_) => s.dictif = true,
                        }
                    }
                }
            }
        }
        let mut s = Seen::default();
        walk(self, &mut s);
        let set_theoretic = s.forall || s.litteme || s.dictif;
        Some(match () {
            _ if s.var && set_theoretic => return None,
            _ if s.var => Language::C,
            _ if s.forall || s.litteme => {
                if s.dictif {
                    Language::F
                } else {
                    Language::E
                }
            }
            _ if s.dictif => Language::D,
            _ if s.imp => Language::B,
            _ => Language::A,
        })
    }

    /// Distinct C-variables, ascending.
    pub fn variables(&self) -> BTreeSet<u32> {
        fn walk(e: &Enonce, out: &mut BTreeSet<u32>) {
            match e {
                Enonce::Var(n) => {
                    out.insert(*n);
                }
                Enonce::Implies(a, b) => {
                    walk(a, out);
                    walk(b, out);
                }
                Enonce::ForAll(b) => walk(b, out),
                Enonce::Psi | Enonce::In(..) => {}
            }
        }
        let mut out = BTreeSet::new();
        walk(self, &mut out);
        out
    }

    /// Levels (height minus depth) of free littème occurrences.
    pub fn free_levels(&self) -> BTreeSet<u32> {
        let mut out = BTreeSet::new();
        self.visit_littemes(0, &mut |h, d| {
            if h > d {
                out.insert(h - d);
            }
        });
        out
    }

    /// Calls `f(height, depth)` for every littème occurrence.
    pub(crate) fn visit_littemes(&self, depth: u32, f: &mut impl FnMut(u32, u32)) {
        match self {
            Enonce::Psi | Enonce::Var(_) => {}
            Enonce::Implies(a, b) => {
                a.visit_littemes(depth, f);
                b.visit_littemes(depth, f);
            }
            Enonce::ForAll(b) => b.visit_littemes(depth + 1, f),
            Enonce::In(l, r) => {
                for t in [l, r] {
                    if let Term::Litteme(h) = t {
                        f(*h, depth);
                    }
                }
            }
        }
    }

    /// Rebuilds the énoncé, replacing every littème via `f(height, depth)`.
    pub(crate) fn map_littemes(&self, depth: u32, f: &impl Fn(u32, u32) -> Term) -> Enonce {
        match self {
            Enonce::Psi | Enonce::Var(_) => self.clone(),
            Enonce::Implies(a, b) => Enonce::implies(a.map_littemes(depth, f), b.map_littemes(depth, f)),
            Enonce::ForAll(b) => Enonce::forall(b.map_littemes(depth + 1, f)),
            Enonce::In(l, r) => {
                let m = |t: &Term| match t {
                    Term::Litteme(h) => f(*h, depth),
                    Term::Dictif(_) => t.clone(),
                };
                Enonce::In(m(l), m(r))
            }
        }
    }

    /// Whether some occurrence refers to the binder sitting immediately
    /// above this énoncé.
    pub(crate) fn uses_outer_binder(&self) -> bool {
        let mut used = false;
        self.visit_littemes(0, &mut |h, d| used |= h == d + 1);
        used
    }

    /// Removes one binder directly above this énoncé, which must not be used.
    pub(crate) fn drop_outer_binder(&self) -> Enonce {
        self.map_littemes(0, &|h, d| Term::Litteme(if h > d + 1 { h - 1 } else { h }))
    }

    /// Treats `self` as the body of a block of `values.len()` binders
    /// (`values[0]` for the outermost) and replaces those binders by dictifs.
    /// Occurrences reaching past the block lose one height per removed binder.
    pub fn instantiate_block(&self, values: &[HfSet]) -> Enonce {
        let n = values.len() as u32;
        self.map_littemes(0, &|h, d| {
            if h <= d {
                Term::Litteme(h)
            } else if h - d <= n {
                Term::Dictif(values[(n - (h - d)) as usize].clone())
            } else {
                Term::Litteme(h - n)
            }
        })
    }
}
