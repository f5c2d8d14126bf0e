//! Énoncés of languages A–F: abstract syntax, reader, canonical printer and
//! binding analysis.

mod ast;
mod binding;
mod parse;
mod print;

pub use ast::{Enonce, Language, Term};
pub use binding::{
    ancestor_depths, binding_report, is_strictly_closed, scan_depths, substitute, BinderInfo, Binding,
    BindingReport, Constants, Occurrence, SubstituteError,
};
pub use parse::{desugar, parse, parse_dictif, parse_ext, parse_ext_with, parse_with, Ext, ParseError, ParseOptions};
pub use print::print_canonical;

pub fn language_of(e: &Enonce) -> Option<Language> {
    e.language()
}
