//! Languages A to F over `Ψ`, `⟹`, `∀`, `∈` and dictifs, with decision
//! procedures for the propositional theories, the dictif calculus, and the
//! container-bounded translations `ud[K` that define the F-theories.
//!
//! ```
//! use traductive::{parse, theory::{is_theorem, TheoryConfig}, Verdict};
//!
//! let e = parse("all ~ in x@1 x@1").unwrap();
//! assert_eq!(is_theorem(&TheoryConfig::f(2), &e).unwrap(), Verdict::Theorem);
//! ```

pub mod dictif;
pub mod gen;
pub mod propositional;
pub mod syntax;
pub mod theory;
pub mod translation;
pub mod verdict;

pub use dictif::{ContainerSchedule, DictifError, HfSet};
pub use syntax::{parse, Enonce, Language, ParseError, Term};
pub use theory::{is_theorem, TheoryConfig, TheoryError, TheoryKind};
pub use verdict::{Limit, Limits, Verdict};
