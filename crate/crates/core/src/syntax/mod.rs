//! First-order syntax: terms, formulas, rules and programs, with a parser
//! and printer for the textual program format.

mod formula;
mod parser;
mod printer;
mod program;

pub use formula::{Atom, Formula, Sentence, Term};
pub use parser::{parse_formula, parse_program, parse_sentences, ParseError};
pub use printer::pretty_print;
pub use program::{Program, Rule, RuleKind, Signature, SignatureError};

/// Fresh variable names `X1, X2, ...` avoiding every name in `avoid`.
pub(crate) fn fresh_variables(
    count: usize,
    avoid: &std::collections::BTreeSet<String>,
) -> Vec<String> {
    let mut out = Vec::with_capacity(count);
    let mut i = 1;
    while out.len() < count {
        let name = format!("X{i}");
        if !avoid.contains(&name) {
            out.push(name);
        }
        i += 1;
    }
    out
}
