//! Comparison of stable models with models of the completion over finite
//! interpretations.

use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::completion::{completion, CompletionError};
use crate::semantics::{
    enumerate_interpretations, is_sm_model, sample_interpretations, Interpretation, Limits,
    SemanticsError,
};
use crate::syntax::{Program, Sentence, SignatureError};
use crate::tightness::joint_signature;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EquivError {
    #[error("largest universe size must be at least 1")]
    ZeroUniverse,
    #[error(transparent)]
    Completion(#[from] CompletionError),
    #[error(transparent)]
    Semantics(#[from] SemanticsError),
    #[error(transparent)]
    Signature(#[from] SignatureError),
    #[error("cannot start worker threads: {0}")]
    Threads(String),
}

/// How interpretations are produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Every interpretation of every size `1..=m_max`.
    Exhaustive,
    /// `count` seeded samples, sizes uniform over `1..=m_max`.
    Sampled { count: usize, seed: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum DisagreementKind {
    /// Stable, yet the characterization fails.
    SmOnly,
    /// The characterization holds, yet not stable.
    CompOnly,
}

impl fmt::Display for DisagreementKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DisagreementKind::SmOnly => "sm_only",
            DisagreementKind::CompOnly => "comp_only",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Disagreement {
    pub kind: DisagreementKind,
    pub interpretation: Interpretation,
}

/// Line-oriented outcome of a comparison run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivReport {
    pub program: String,
    pub gamma: Vec<String>,
    pub mode: String,
    pub universes: Vec<usize>,
    /// Interpretations compared.
    pub checked: u64,
    /// Interpretations discarded because they falsify `Γ`.
    pub skipped: u64,
    /// Compared interpretations on which both sides hold.
    pub models: u64,
    pub disagreements: Vec<Disagreement>,
}

impl EquivReport {
    pub fn agrees(&self) -> bool {
        self.disagreements.is_empty()
    }

    pub fn count(&self, kind: DisagreementKind) -> usize {
        self.disagreements.iter().filter(|d| d.kind == kind).count()
    }
}

impl fmt::Display for EquivReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "program={}", self.program)?;
        if self.gamma.is_empty() {
            writeln!(f, "gamma=none")?;
        } else {
            writeln!(f, "gamma={}", self.gamma.join("; "))?;
        }
        writeln!(f, "mode={}", self.mode)?;
        let sizes: Vec<String> = self.universes.iter().map(usize::to_string).collect();
        writeln!(f, "universes={}", sizes.join(","))?;
        writeln!(f, "checked={}", self.checked)?;
        writeln!(f, "skipped={}", self.skipped)?;
        writeln!(f, "models={}", self.models)?;
        for d in &self.disagreements {
            writeln!(f, "DISAGREE {} {}", d.kind, d.interpretation)?;
        }
        let verdict = if self.agrees() { "agree" } else { "disagree" };
        writeln!(f, "VERDICT {verdict} count={}", self.disagreements.len())
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub(crate) enum Outcome {
    Skipped,
    Agree { models: bool },
    Disagree(DisagreementKind),
}

/// Compares `is_sm_model(prog, I)` with `I ⊨ characterization`, after
/// discarding interpretations that falsify `gamma`.
pub(crate) fn compare(
    prog: &Program,
    gamma: &[Sentence],
    characterization: &[Sentence],
    interp: &Interpretation,
    limits: &Limits,
) -> Result<Outcome, SemanticsError> {
    if !interp.satisfies_all(gamma)? {
        return Ok(Outcome::Skipped);
    }
    let sm = is_sm_model(prog, interp, limits)?;
    let comp = interp.satisfies_all(characterization)?;
    Ok(match (sm, comp) {
        (true, false) => Outcome::Disagree(DisagreementKind::SmOnly),
        (false, true) => Outcome::Disagree(DisagreementKind::CompOnly),
        (both, _) => Outcome::Agree { models: both },
    })
}

/// Accumulates outcomes in input order, evaluating each batch on `jobs`
/// threads.
pub(crate) struct Runner<'a> {
    pub prog: &'a Program,
    pub gamma: &'a [Sentence],
    pub characterization: &'a [Sentence],
    pub limits: Limits,
    pool: Option<rayon::ThreadPool>,
    pub checked: u64,
    pub skipped: u64,
    pub models: u64,
    pub disagreements: Vec<Disagreement>,
}

const BATCH: usize = 2048;

impl<'a> Runner<'a> {
    pub fn new(
        prog: &'a Program,
        gamma: &'a [Sentence],
        characterization: &'a [Sentence],
        jobs: usize,
        limits: Limits,
    ) -> Result<Self, EquivError> {
        let pool = if jobs > 1 {
            Some(
                rayon::ThreadPoolBuilder::new()
                    .num_threads(jobs)
                    .build()
                    .map_err(|e| EquivError::Threads(e.to_string()))?,
            )
        } else {
            None
        };
        Ok(Runner {
            prog,
            gamma,
            characterization,
            limits,
            pool,
            checked: 0,
            skipped: 0,
            models: 0,
            disagreements: Vec::new(),
        })
    }

    fn batch(&mut self, batch: Vec<Interpretation>) -> Result<(), SemanticsError> {
        let eval = |i: &Interpretation| compare(self.prog, self.gamma, self.characterization, i, &self.limits);
        let outcomes: Vec<Result<Outcome, SemanticsError>> = match &self.pool {
            Some(pool) => pool.install(|| batch.par_iter().map(eval).collect()),
            None => batch.iter().map(eval).collect(),
        };
        for (interp, outcome) in batch.into_iter().zip(outcomes) {
            match outcome? {
                Outcome::Skipped => self.skipped += 1,
                Outcome::Agree { models } => {
                    self.checked += 1;
                    self.models += u64::from(models);
                }
                Outcome::Disagree(kind) => {
                    self.checked += 1;
                    self.disagreements.push(Disagreement {
                        kind,
                        interpretation: interp,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn run(&mut self, interps: impl IntoIterator<Item = Interpretation>) -> Result<(), SemanticsError> {
        let mut pending = Vec::with_capacity(BATCH);
        for interp in interps {
            pending.push(interp);
            if pending.len() == BATCH {
                self.batch(std::mem::take(&mut pending))?;
            }
        }
        if !pending.is_empty() {
            self.batch(pending)?;
        }
        Ok(())
    }
}

/// Compares the stable models of `prog` with the models of its completion
/// and constraints, among interpretations satisfying `gamma`.
pub fn check_equivalence(
    prog: &Program,
    program_id: &str,
    gamma: &[Sentence],
    m_max: usize,
    mode: &Mode,
    jobs: usize,
    limits: &Limits,
) -> Result<EquivReport, EquivError> {
    if m_max == 0 {
        return Err(EquivError::ZeroUniverse);
    }
    let sig = joint_signature(prog, gamma)?;
    let characterization: Vec<Sentence> = completion(prog)?.sentences().cloned().collect();
    let universes: Vec<usize> = (1..=m_max).collect();
    let mut runner = Runner::new(prog, gamma, &characterization, jobs, *limits)?;
    let mode_text = match mode {
        Mode::Exhaustive => {
            // fail before doing any work if a size is out of reach
            for &m in &universes {
                enumerate_interpretations(&sig, m, limits)?;
            }
            for &m in &universes {
                runner.run(enumerate_interpretations(&sig, m, limits)?)?;
            }
            "exhaustive".to_string()
        }
        Mode::Sampled { count, seed } => {
            runner.run(sample_interpretations(&sig, &universes, *count, *seed)?)?;
            format!("sampled seed={seed} count={count}")
        }
    };
    Ok(EquivReport {
        program: program_id.to_string(),
        gamma: gamma.iter().map(Sentence::to_string).collect(),
        mode: mode_text,
        universes,
        checked: runner.checked,
        skipped: runner.skipped,
        models: runner.models,
        disagreements: runner.disagreements,
    })
}
