//! Tightness relative to a set of assumptions `Γ`, decided three ways:
//! syntactic refutation, bounded countermodel search, or unknown.

use std::fmt;

use thiserror::Error;

use super::chains::{chains, Chain};
use super::refute::Refuter;
use crate::completion::{completion, CompletionError};
use crate::semantics::{enumerate_interpretations, Interpretation, Limits, SemanticsError};
use crate::syntax::{Program, Sentence, Signature, SignatureError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TightnessError {
    #[error("chain length must be at least 1")]
    ZeroLength,
    #[error("universe bound must be at least 1")]
    ZeroBound,
    #[error(transparent)]
    Completion(#[from] CompletionError),
    #[error(transparent)]
    Semantics(#[from] SemanticsError),
    #[error(transparent)]
    Signature(#[from] SignatureError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TightnessStatus {
    /// Every chain of the given length was refuted syntactically.
    Entailed,
    /// `I ⊨ Γ ∧ Comp[Π] ∧ ∃̃F_C` for the reported chain.
    Countermodel {
        interpretation: Interpretation,
        chain: Chain,
    },
    /// Some chain was neither refuted nor satisfied within the bound.
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TightnessVerdict {
    pub status: TightnessStatus,
    pub n_used: usize,
    pub bound: usize,
    pub chains: usize,
    pub refuted: usize,
}

impl fmt::Display for TightnessVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.status {
            TightnessStatus::Entailed => writeln!(f, "entailed (syntactic)")?,
            TightnessStatus::Countermodel {
                interpretation,
                chain,
            } => {
                writeln!(f, "countermodel {interpretation}")?;
                writeln!(f, "chain formula {}", chain.formula())?;
            }
            TightnessStatus::Unknown => writeln!(f, "unknown (bound {} exhausted)", self.bound)?,
        }
        write!(
            f,
            "n={} bound={} chains={} refuted={}",
            self.n_used, self.bound, self.chains, self.refuted
        )
    }
}

/// Signature of the program extended with the symbols of `gamma`.
pub fn joint_signature(prog: &Program, gamma: &[Sentence]) -> Result<Signature, SignatureError> {
    let mut sig = prog.signature.clone();
    for s in gamma {
        sig.add_formula(s.formula())?;
    }
    Ok(sig)
}

/// Checks `Γ, Comp[Π] ⊨ ∀̃¬F_C` for every chain `C` of length `n`.
///
/// Chains the refuter cannot close are searched for countermodels over all
/// interpretations with at most `universe_bound` elements.
pub fn check_gamma_tight(
    prog: &Program,
    gamma: &[Sentence],
    n: usize,
    universe_bound: usize,
    limits: &Limits,
) -> Result<TightnessVerdict, TightnessError> {
    if n == 0 {
        return Err(TightnessError::ZeroLength);
    }
    if universe_bound == 0 {
        return Err(TightnessError::ZeroBound);
    }
    let refuter = Refuter::new(prog, gamma)?;
    let mut total = 0;
    let mut open: Vec<Chain> = Vec::new();
    for chain in chains(prog, n) {
        total += 1;
        if !refuter.refutes(&chain.formula()) {
            open.push(chain);
        }
    }
    let verdict = |status| TightnessVerdict {
        status,
        n_used: n,
        bound: universe_bound,
        chains: total,
        refuted: total - open.len(),
    };
    if open.is_empty() {
        return Ok(verdict(TightnessStatus::Entailed));
    }
    let sig = joint_signature(prog, gamma)?;
    let comp = completion(prog)?;
    let premises: Vec<&Sentence> = gamma.iter().chain(comp.definitions.values()).collect();
    let goals: Vec<Sentence> = open
        .iter()
        .map(|c| Sentence::new(c.formula().existential_closure()).expect("closed"))
        .collect();
    for m in 1..=universe_bound {
        for interp in enumerate_interpretations(&sig, m, limits)? {
            if !interp.satisfies_all(premises.iter().copied())? {
                continue;
            }
            for (chain, goal) in open.iter().zip(&goals) {
                if interp.satisfies(goal)? {
                    return Ok(verdict(TightnessStatus::Countermodel {
                        interpretation: interp,
                        chain: chain.clone(),
                    }));
                }
            }
        }
    }
    Ok(verdict(TightnessStatus::Unknown))
}
