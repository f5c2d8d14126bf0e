use std::fmt::{self, Write};

use super::ast::{Enonce, Term};

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Litteme(h) => write!(f, "x@{h}"),
            Term::Dictif(s) => write!(f, "{s}"),
        }
    }
}

/// Canonical prefix form, single-spaced ASCII.
impl fmt::Display for Enonce {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut sep = |f: &mut fmt::Formatter<'_>| {
            if !std::mem::take(&mut first) {
                f.write_char(' ')?;
            }
            Ok::<_, fmt::Error>(())
        };
        // Explicit stack: expansion outputs are long right-nested chains.
        let mut stack = vec![self];
        while let Some(e) = stack.pop() {
            sep(f)?;
            match e {
                Enonce::Psi => f.write_str("psi")?,
                Enonce::Var(n) => write!(f, "v@{n}")?,
                Enonce::Implies(a, b) => {
                    f.write_str("imp")?;
                    stack.push(b);
                    stack.push(a);
                }
                Enonce::ForAll(b) => {
                    f.write_str("all")?;
                    stack.push(b);
                }
                Enonce::In(l, r) => write!(f, "in {l} {r}")?,
            }
        }
        Ok(())
    }
}

pub fn print_canonical(e: &Enonce) -> String {
    e.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse;

    #[test]
    fn examples() {
        assert_eq!(print_canonical(&Enonce::Psi), "psi");
        assert_eq!(
            print_canonical(&Enonce::member(Term::dictif_index(1), Term::dictif_index(6))),
            "in D#1 D#6"
        );
        assert_eq!(
            print_canonical(&Enonce::implies(Enonce::Psi, Enonce::forall(Enonce::Psi))),
            "imp psi all psi"
        );
        assert_eq!(print_canonical(&parse("λλΨ").unwrap()), "v@2");
        assert_eq!(print_canonical(&parse("  all   in  lam sig  λλς ").unwrap()), "all in x@1 x@2");
    }
}
