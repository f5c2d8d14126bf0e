//! Seeded generators and exhaustive enumerators of énoncés, used by the
//! scans and by tests.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::syntax::{Enonce, Term};

/// Which constructs a generated énoncé may use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Shape {
    /// `Ψ` and `⟹`.
    B,
    /// B plus variables `v@1 … v@vars`.
    C { vars: u32 },
    /// B plus appartenances between dictifs of index `< dictifs`.
    D { dictifs: u64 },
    /// D plus `∀` and bound littèmes, at most `max_qdepth` nested `∀`.
    ClosedF { dictifs: u64, max_qdepth: u32 },
    /// Like `ClosedF`, with free littèmes of level up to `free_levels` allowed.
    OpenF { dictifs: u64, max_qdepth: u32, free_levels: u32 },
}

pub struct FormulaGen {
    rng: ChaCha8Rng,
}

impl FormulaGen {
    pub fn new(seed: u64) -> Self {
        FormulaGen {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// A random énoncé of at most `max_size` signs.
    pub fn enonce(&mut self, shape: Shape, max_size: usize) -> Enonce {
        self.go(shape, max_size.max(1), 0)
    }

    fn atom(&mut self, shape: Shape, budget: usize, depth: u32) -> Enonce {
        let psi = Enonce::Psi;
        match shape {
            Shape::B => psi,
            Shape::C { vars } => {
                if self.rng.gen_bool(0.2) {
                    psi
                } else {
                    Enonce::Var(self.rng.gen_range(1..=vars.max(1)))
                }
            }
            _ if budget < 3 || self.rng.gen_bool(0.15) => psi,
            _ => Enonce::In(self.term(shape, depth), self.term(shape, depth)),
        }
    }

    fn term(&mut self, shape: Shape, depth: u32) -> Term {
        let (dictifs, free) = match shape {
            Shape::D { dictifs } | Shape::ClosedF { dictifs, .. } => (dictifs, 0),
            Shape::OpenF { dictifs, free_levels, .. } => (dictifs, free_levels),
            Shape::B | Shape::C { .. } => unreachable!("no terms"),
        };
        let heights = depth + free;
        if heights > 0 && self.rng.gen_bool(0.6) {
            Term::Litteme(self.rng.gen_range(1..=heights))
        } else {
            Term::dictif_index(self.rng.gen_range(0..dictifs.max(1)))
        }
    }

    fn go(&mut self, shape: Shape, budget: usize, depth: u32) -> Enonce {
        let max_qdepth = match shape {
            Shape::ClosedF { max_qdepth, .. } | Shape::OpenF { max_qdepth, .. } => max_qdepth,
            _ => 0,
        };
        let can_quantify = depth < max_qdepth && budget >= 4;
        if budget < 3 || self.rng.gen_bool(0.3) {
            return self.atom(shape, budget, depth);
        }
        if can_quantify && self.rng.gen_bool(0.35) {
            return Enonce::forall(self.go(shape, budget - 1, depth + 1));
        }
        let left = self.rng.gen_range(1..budget - 1);
        let a = self.go(shape, left, depth);
        let b = self.go(shape, budget - 1 - a.size(), depth);
        Enonce::implies(a, b)
    }
}

/// Every énoncé of exactly `size` signs for shapes `B`, `D` and `ClosedF`,
/// in a fixed order.
pub struct Enumerator {
    shape: Shape,
    memo: HashMap<(usize, u32), Vec<Enonce>>,
}

impl Enumerator {
    pub fn new(shape: Shape) -> Self {
        assert!(
            matches!(shape, Shape::B | Shape::D { .. } | Shape::ClosedF { .. }),
            "enumeration covers closed shapes only"
        );
        Enumerator {
            shape,
            memo: HashMap::new(),
        }
    }

    pub fn of_size(&mut self, size: usize) -> Vec<Enonce> {
        self.at(size, 0)
    }

    /// All énoncés of size `1..=max_size`.
    pub fn up_to(&mut self, max_size: usize) -> Vec<Enonce> {
        (1..=max_size).flat_map(|s| self.of_size(s)).collect()
    }

    fn terms(&self, depth: u32) -> Vec<Term> {
        let dictifs = match self.shape {
            Shape::D { dictifs } | Shape::ClosedF { dictifs, .. } => dictifs,
            _ => 0,
        };
        (1..=depth)
            .map(Term::Litteme)
            .chain((0..dictifs).map(Term::dictif_index))
            .collect()
    }

    fn at(&mut self, size: usize, depth: u32) -> Vec<Enonce> {
        if let Some(v) = self.memo.get(&(size, depth)) {
            return v.clone();
        }
        let mut out = Vec::new();
        if size == 1 {
            out.push(Enonce::Psi);
        }
        if size == 3 && !matches!(self.shape, Shape::B) {
            let terms = self.terms(depth);
            for l in &terms {
                for r in &terms {
                    out.push(Enonce::In(l.clone(), r.clone()));
                }
            }
        }
        if size >= 3 {
            for left in 1..size - 1 {
                let a = self.at(left, depth);
                if a.is_empty() {
                    continue;
                }
                let b = self.at(size - 1 - left, depth);
                for x in &a {
                    for y in &b {
                        out.push(Enonce::implies(x.clone(), y.clone()));
                    }
                }
            }
        }
        if let Shape::ClosedF { max_qdepth, .. } = self.shape {
            if size >= 2 && depth < max_qdepth {
                out.extend(self.at(size - 1, depth + 1).into_iter().map(Enonce::forall));
            }
        }
        self.memo.insert((size, depth), out.clone());
        out
    }
}
