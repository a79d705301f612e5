//! Σ⁰₁ witness extraction: run a realizer against `M_kind (\x\y. y (stop x))`.

use thiserror::Error;

use super::{
    decode, parse_term, storage_operator, DecodeError, Kind, Machine, Outcome, Process, Program,
    ProgramError, StdInstructions, Term, Value,
};

/// The wrapper's continuation: hands the stored value to `stop` once the
/// proof of the property accepts it.
pub const WITNESS_CONTINUATION: &str = "\\x\\y. y (stop x)";

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error(transparent)]
    Link(#[from] ProgramError),
    #[error("fuel exhausted after {0} steps")]
    Fuel(u64),
    #[error("machine stuck: {reason} at {process}")]
    Stuck { process: String, reason: String },
    #[error(transparent)]
    Decode(#[from] DecodeError),
}

/// Runs `realizer T ⋆ nil` with `T = M_kind (\x\y. y (stop x))` and decodes
/// the value passed to `stop`.
pub fn extract_witness(
    prog: &Program,
    realizer: &str,
    kind: Kind,
    fuel: u64,
) -> Result<Value, WitnessError> {
    let cont = parse_term(WITNESS_CONTINUATION).expect("wrapper parses");
    let wrapper = Term::app(storage_operator(kind), cont);
    let entry = Term::app(Term::var(realizer), wrapper);
    if !prog.contains(realizer) {
        return Err(ProgramError::Unresolved {
            name: realizer.to_string(),
            context: "the realizer argument".to_string(),
        }
        .into());
    }
    let std = StdInstructions::new();
    let (head, env) = prog.link_term(&entry, &|n| n == "stop")?;
    let r = Machine::new(&env, std).run(Process::on_nil(head), fuel);
    match r.outcome {
        Outcome::Halted(v) => Ok(decode(kind, &v)?),
        Outcome::FuelExhausted(_) => Err(WitnessError::Fuel(r.steps)),
        Outcome::Stuck { process, reason } => Err(WitnessError::Stuck {
            process: process.to_string(),
            reason,
        }),
        Outcome::Fault { process, message } => Err(WitnessError::Stuck {
            process: process.to_string(),
            reason: message,
        }),
    }
}
