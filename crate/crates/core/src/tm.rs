//! Binary Turing machines with a head fixed at cell 0.
//!
//! The tape moves under the head: a shift of `+1` means the tape moves one
//! cell to the left, so after writing the new tape satisfies `t'[i] = t[i + 1]`.
//! Tapes are stored as the finite set of cells holding a `1`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Index of a state in its machine. The initial state always has index 0.
pub type StateId = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TmError {
    #[error("the configuration is already halted")]
    HaltedConfiguration,
    #[error("initial and halting state coincide")]
    InitIsHalt,
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("duplicate state `{0}`")]
    DuplicateState(String),
    #[error("missing transition for ({state}, {read})")]
    MissingTransition { state: String, read: u8 },
    #[error("duplicate transition for ({state}, {read})")]
    DuplicateTransition { state: String, read: u8 },
    #[error("transition defined on the halting state `{0}`")]
    TransitionFromHalt(String),
    #[error("invalid symbol {0}")]
    BadSymbol(u8),
    #[error("invalid shift {0}")]
    BadShift(i8),
    #[error("state {state} out of range for a machine with {states} states")]
    StateOutOfRange { state: usize, states: usize },
    #[error("supports collide in juxtaposition at cell {0}")]
    OverlapError(i64),
    #[error("malformed machine encoding: {0}")]
    BadEncoding(&'static str),
}

/// Tape displacement applied after writing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Shift {
    /// `-1`: the tape moves right, `t'[i] = t[i - 1]`.
    Right,
    Stay,
    /// `+1`: the tape moves left, `t'[i] = t[i + 1]`.
    Left,
}

impl Shift {
    pub fn from_i8(v: i8) -> Result<Self, TmError> {
        match v {
            -1 => Ok(Shift::Right),
            0 => Ok(Shift::Stay),
            1 => Ok(Shift::Left),
            other => Err(TmError::BadShift(other)),
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Shift::Right => -1,
            Shift::Stay => 0,
            Shift::Left => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Transition {
    pub next: StateId,
    pub write: u8,
    pub shift: Shift,
}

/// Bi-infinite binary tape with finitely many ones.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tape {
    ones: BTreeSet<i64>,
}

impl Tape {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_ones<I: IntoIterator<Item = i64>>(cells: I) -> Self {
        Tape { ones: cells.into_iter().collect() }
    }

    pub fn get(&self, cell: i64) -> u8 {
        u8::from(self.ones.contains(&cell))
    }

    pub fn set(&mut self, cell: i64, symbol: u8) {
        if symbol == 1 {
            self.ones.insert(cell);
        } else {
            self.ones.remove(&cell);
        }
    }

    pub fn ones(&self) -> impl Iterator<Item = i64> + '_ {
        self.ones.iter().copied()
    }

    pub fn is_blank(&self) -> bool {
        self.ones.is_empty()
    }

    /// Smallest and largest cells holding a one.
    pub fn support_bounds(&self) -> Option<(i64, i64)> {
        Some((*self.ones.first()?, *self.ones.last()?))
    }

    /// Largest `|i|` over the support, 0 for the blank tape.
    pub fn radius(&self) -> u32 {
        self.support_bounds()
            .map(|(lo, hi)| lo.unsigned_abs().max(hi.unsigned_abs()) as u32)
            .unwrap_or(0)
    }

    /// Returns the tape `t'` with `t'[i] = t[i + offset]`.
    pub fn shifted(&self, offset: i64) -> Tape {
        Tape { ones: self.ones.iter().map(|c| c - offset).collect() }
    }

    /// All tapes whose support lies in `lo..=hi`, in lexicographic bit order.
    pub fn enumerate(lo: i64, hi: i64) -> impl Iterator<Item = Tape> {
        let width = (hi - lo + 1).max(0) as u32;
        (0u64..(1u64 << width)).map(move |bits| {
            Tape::from_ones((0..width).filter(|b| bits >> b & 1 == 1).map(|b| lo + b as i64))
        })
    }
}

impl fmt::Display for Tape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.ones.iter().map(|c| c.to_string()).collect();
        write!(f, "{{{}}}", cells.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Configuration {
    pub state: StateId,
    pub tape: Tape,
}

impl Configuration {
    pub fn new(state: StateId, tape: Tape) -> Self {
        Configuration { state, tape }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RunOutcome {
    Halted { output: Tape, steps: u64 },
    StillRunning { config: Configuration, steps: u64 },
}

impl RunOutcome {
    pub fn steps(&self) -> u64 {
        match self {
            RunOutcome::Halted { steps, .. } | RunOutcome::StillRunning { steps, .. } => *steps,
        }
    }

    pub fn halted(&self) -> bool {
        matches!(self, RunOutcome::Halted { .. })
    }
}

/// One entry of a machine description, keyed by state names.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitionSpec {
    pub from: String,
    pub read: u8,
    pub to: String,
    pub write: u8,
    pub shift: i8,
}

/// The on-disk machine description.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MachineSpec {
    pub states: Vec<String>,
    pub q_init: String,
    pub q_halt: String,
    pub delta: Vec<TransitionSpec>,
}

/// On-disk tape, the list of cells holding a one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TapeSpec {
    pub ones: Vec<i64>,
}

impl From<&Tape> for TapeSpec {
    fn from(t: &Tape) -> Self {
        TapeSpec { ones: t.ones().collect() }
    }
}

impl From<TapeSpec> for Tape {
    fn from(t: TapeSpec) -> Self {
        Tape::from_ones(t.ones)
    }
}

/// A binary Turing machine `(Q, q_init, q_halt, delta)`.
///
/// Equality compares structure only (state count, halting index and
/// transition table); state names are labels.
#[derive(Debug, Clone)]
pub struct TuringMachine {
    names: Vec<String>,
    halt: StateId,
    // delta[s][symbol], None only for the halting state.
    delta: Vec<Option<[Transition; 2]>>,
}

impl PartialEq for TuringMachine {
    fn eq(&self, other: &Self) -> bool {
        self.halt == other.halt && self.delta == other.delta
    }
}

impl Eq for TuringMachine {}

impl TuringMachine {
    /// Builds a machine from a transition table indexed by state. State 0 is
    /// the initial state; `table[halt]` is ignored.
    pub fn from_table(
        names: Vec<String>,
        halt: StateId,
        table: Vec<[Transition; 2]>,
    ) -> Result<Self, TmError> {
        let n = names.len();
        if halt == 0 {
            return Err(TmError::InitIsHalt);
        }
        if halt >= n {
            return Err(TmError::StateOutOfRange { state: halt, states: n });
        }
        if table.len() != n {
            return Err(TmError::BadEncoding("table length differs from state count"));
        }
        let mut delta = Vec::with_capacity(n);
        for (s, row) in table.into_iter().enumerate() {
            if s == halt {
                delta.push(None);
                continue;
            }
            for tr in &row {
                if tr.next >= n {
                    return Err(TmError::StateOutOfRange { state: tr.next, states: n });
                }
                if tr.write > 1 {
                    return Err(TmError::BadSymbol(tr.write));
                }
            }
            delta.push(Some(row));
        }
        Ok(TuringMachine { names, halt, delta })
    }

    /// Compact constructor used by tests and the bundled sample machines:
    /// `rows[s] = [(next, write, shift) for read 0, for read 1]`, halting
    /// state `halt`, states named `q0, q1, ...`.
    pub fn from_rows(halt: StateId, rows: &[[(StateId, u8, i8); 2]]) -> Result<Self, TmError> {
        let n = rows.len().max(halt + 1);
        let mut table = Vec::with_capacity(n);
        for s in 0..n {
            let row = rows.get(s).copied().unwrap_or([(halt, 0, 0); 2]);
            let mut out = [Transition { next: 0, write: 0, shift: Shift::Stay }; 2];
            for (slot, (next, write, shift)) in out.iter_mut().zip(row) {
                *slot = Transition { next, write, shift: Shift::from_i8(shift)? };
            }
            table.push(out);
        }
        let names = (0..n).map(|i| format!("q{i}")).collect();
        Self::from_table(names, halt, table)
    }

    /// Validates a named description; the initial state is moved to index 0
    /// and the remaining states keep their listed order.
    pub fn from_spec(spec: &MachineSpec) -> Result<Self, TmError> {
        let mut names: Vec<String> = Vec::with_capacity(spec.states.len());
        if !spec.states.contains(&spec.q_init) {
            return Err(TmError::UnknownState(spec.q_init.clone()));
        }
        names.push(spec.q_init.clone());
        for s in &spec.states {
            if s == &spec.q_init {
                continue;
            }
            if names.contains(s) {
                return Err(TmError::DuplicateState(s.clone()));
            }
            names.push(s.clone());
        }
        if spec.states.iter().filter(|s| *s == &spec.q_init).count() > 1 {
            return Err(TmError::DuplicateState(spec.q_init.clone()));
        }
        let index = |name: &str| {
            names
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| TmError::UnknownState(name.to_string()))
        };
        let halt = index(&spec.q_halt)?;
        if halt == 0 {
            return Err(TmError::InitIsHalt);
        }
        let mut table: Vec<[Option<Transition>; 2]> = vec![[None, None]; names.len()];
        for entry in &spec.delta {
            let from = index(&entry.from)?;
            if from == halt {
                return Err(TmError::TransitionFromHalt(entry.from.clone()));
            }
            if entry.read > 1 {
                return Err(TmError::BadSymbol(entry.read));
            }
            if entry.write > 1 {
                return Err(TmError::BadSymbol(entry.write));
            }
            let slot = &mut table[from][entry.read as usize];
            if slot.is_some() {
                return Err(TmError::DuplicateTransition { state: entry.from.clone(), read: entry.read });
            }
            *slot = Some(Transition {
                next: index(&entry.to)?,
                write: entry.write,
                shift: Shift::from_i8(entry.shift)?,
            });
        }
        let mut full = Vec::with_capacity(names.len());
        for (s, row) in table.into_iter().enumerate() {
            if s == halt {
                full.push([Transition { next: halt, write: 0, shift: Shift::Stay }; 2]);
                continue;
            }
            let mut out = [Transition { next: 0, write: 0, shift: Shift::Stay }; 2];
            for (read, tr) in row.into_iter().enumerate() {
                out[read] = tr.ok_or_else(|| TmError::MissingTransition {
                    state: names[s].clone(),
                    read: read as u8,
                })?;
            }
            full.push(out);
        }
        Self::from_table(names, halt, full)
    }

    pub fn to_spec(&self) -> MachineSpec {
        let mut delta = Vec::new();
        for (s, row) in self.delta.iter().enumerate() {
            let Some(row) = row else { continue };
            for (read, tr) in row.iter().enumerate() {
                delta.push(TransitionSpec {
                    from: self.names[s].clone(),
                    read: read as u8,
                    to: self.names[tr.next].clone(),
                    write: tr.write,
                    shift: tr.shift.as_i8(),
                });
            }
        }
        MachineSpec {
            states: self.names.clone(),
            q_init: self.names[0].clone(),
            q_halt: self.names[self.halt].clone(),
            delta,
        }
    }

    pub fn num_states(&self) -> usize {
        self.names.len()
    }

    pub fn init(&self) -> StateId {
        0
    }

    pub fn halt(&self) -> StateId {
        self.halt
    }

    pub fn state_name(&self, s: StateId) -> &str {
        &self.names[s]
    }

    /// `delta(state, read)`, or `None` at the halting state.
    pub fn transition(&self, state: StateId, read: u8) -> Option<Transition> {
        self.delta.get(state)?.map(|row| row[read as usize])
    }

    pub fn initial_config(&self, input: Tape) -> Configuration {
        Configuration::new(0, input)
    }

    /// One application of the global transition function.
    pub fn step(&self, config: &Configuration) -> Result<Configuration, TmError> {
        if config.state >= self.num_states() {
            return Err(TmError::StateOutOfRange { state: config.state, states: self.num_states() });
        }
        let tr = self
            .transition(config.state, config.tape.get(0))
            .ok_or(TmError::HaltedConfiguration)?;
        let mut tape = config.tape.clone();
        tape.set(0, tr.write);
        let tape = match tr.shift {
            Shift::Stay => tape,
            Shift::Left => tape.shifted(1),
            Shift::Right => tape.shifted(-1),
        };
        Ok(Configuration::new(tr.next, tape))
    }

    /// Runs from `(q_init, input)` for at most `horizon` steps.
    pub fn run(&self, input: &Tape, horizon: u64) -> RunOutcome {
        self.run_from(self.initial_config(input.clone()), horizon)
    }

    pub fn run_from(&self, mut config: Configuration, horizon: u64) -> RunOutcome {
        let mut steps = 0;
        loop {
            if config.state == self.halt {
                return RunOutcome::Halted { output: config.tape, steps };
            }
            if steps == horizon {
                return RunOutcome::StillRunning { config, steps };
            }
            config = self.step(&config).expect("non-halting state has a transition");
            steps += 1;
        }
    }
}

fn state_width(states: usize) -> u32 {
    (usize::BITS - (states.max(2) - 1).leading_zeros()).max(1)
}

fn push_bits(bits: &mut Vec<u8>, value: usize, width: u32) {
    for b in (0..width).rev() {
        bits.push((value >> b & 1) as u8);
    }
}

fn shift_code(shift: Shift) -> usize {
    match shift {
        Shift::Stay => 0,
        Shift::Left => 1,
        Shift::Right => 2,
    }
}

/// Bit string of [`encode_machine`], cell 0 first.
pub fn encode_machine_bits(machine: &TuringMachine) -> Vec<u8> {
    let n = machine.num_states();
    let width = state_width(n);
    let mut bits = vec![1u8; n];
    bits.push(0);
    push_bits(&mut bits, machine.halt, width);
    for s in 0..n {
        if s == machine.halt {
            continue;
        }
        for read in 0..2u8 {
            let tr = machine.transition(s, read).expect("non-halting state");
            push_bits(&mut bits, tr.next, width);
            bits.push(tr.write);
            push_bits(&mut bits, shift_code(tr.shift), 2);
        }
    }
    bits
}

/// Self-delimiting binary description `t_T`, laid out on cells `0..len`.
///
/// Layout: `|Q|` in unary followed by a `0`; the halting index in `w` bits
/// (`w = ceil(log2 |Q|)`, at least 1); then for every non-halting state in
/// index order and each read symbol `0, 1`: next state (`w` bits), written
/// symbol (1 bit) and shift code (2 bits: `00` stay, `01` left, `10` right).
pub fn encode_machine(machine: &TuringMachine) -> Tape {
    bits_to_tape(&encode_machine_bits(machine))
}

/// Number of cells the encoding of `machine` occupies.
pub fn encoded_len(machine: &TuringMachine) -> i64 {
    encode_machine_bits(machine).len() as i64
}

fn bits_to_tape(bits: &[u8]) -> Tape {
    Tape::from_ones(bits.iter().enumerate().filter(|(_, b)| **b == 1).map(|(i, _)| i as i64))
}

/// Inverse of [`encode_machine`]; states come back named `q0, q1, ...`.
pub fn decode_machine(tape: &Tape) -> Result<TuringMachine, TmError> {
    let mut cursor = 0i64;
    let read_bit = |cursor: &mut i64| {
        let b = tape.get(*cursor);
        *cursor += 1;
        b
    };
    let mut n = 0usize;
    while read_bit(&mut cursor) == 1 {
        n += 1;
        if n > 1 << 20 {
            return Err(TmError::BadEncoding("unterminated state count"));
        }
    }
    if n < 2 {
        return Err(TmError::BadEncoding("fewer than two states"));
    }
    let width = state_width(n);
    let read_field = |cursor: &mut i64, w: u32| {
        let mut v = 0usize;
        for _ in 0..w {
            v = v << 1 | read_bit(cursor) as usize;
        }
        v
    };
    let halt = read_field(&mut cursor, width);
    let mut table = Vec::with_capacity(n);
    for s in 0..n {
        if s == halt {
            table.push([Transition { next: halt, write: 0, shift: Shift::Stay }; 2]);
            continue;
        }
        let mut row = [Transition { next: 0, write: 0, shift: Shift::Stay }; 2];
        for slot in row.iter_mut() {
            let next = read_field(&mut cursor, width);
            let write = read_field(&mut cursor, 1) as u8;
            let shift = match read_field(&mut cursor, 2) {
                0 => Shift::Stay,
                1 => Shift::Left,
                2 => Shift::Right,
                _ => return Err(TmError::BadEncoding("shift code 11")),
            };
            *slot = Transition { next, write, shift };
        }
        table.push(row);
    }
    if tape.ones().any(|c| c < 0 || c >= cursor) {
        return Err(TmError::BadEncoding("stray bits outside the description"));
    }
    let names = (0..n).map(|i| format!("q{i}")).collect();
    TuringMachine::from_table(names, halt, table)
}

/// `t * t'`: cells left of `split` come from `t`, cell `split + i` holds `t'[i]`.
pub fn juxtapose(t: &Tape, t_prime: &Tape, split: i64) -> Result<Tape, TmError> {
    if let Some(c) = t.ones().find(|&c| c >= split) {
        return Err(TmError::OverlapError(c));
    }
    if let Some(c) = t_prime.ones().find(|&c| c < 0) {
        return Err(TmError::OverlapError(c + split));
    }
    Ok(Tape::from_ones(t.ones().chain(t_prime.ones().map(|c| c + split))))
}

/// Inverse of [`juxtapose`] for the same `split`.
pub fn split_tape(tape: &Tape, split: i64) -> (Tape, Tape) {
    let left = Tape::from_ones(tape.ones().filter(|&c| c < split));
    let right = Tape::from_ones(tape.ones().filter(|&c| c >= split).map(|c| c - split));
    (left, right)
}

/// `t_T * t_in`, split at the encoded length of `machine`.
pub fn program_tape(machine: &TuringMachine, input: &Tape) -> Result<Tape, TmError> {
    juxtapose(&encode_machine(machine), input, encoded_len(machine))
}

/// Small machines used throughout the tests, the CLI data files and the benches.
pub mod samples {
    use rand::Rng;

    use super::{Configuration, Tape, TuringMachine};

    /// `delta(q0, b) = (qh, 1 - b, 0)`.
    pub fn flip() -> TuringMachine {
        TuringMachine::from_rows(1, &[[(1, 1, 0), (1, 0, 0)]]).unwrap()
    }

    /// Moves the tape left over a run of ones and halts on the first zero.
    pub fn zero_seek() -> TuringMachine {
        TuringMachine::from_rows(1, &[[(1, 0, 0), (0, 1, 1)]]).unwrap()
    }

    /// Self-loop on reading 0; never halts on a blank tape.
    pub fn stuck() -> TuringMachine {
        TuringMachine::from_rows(1, &[[(0, 0, 0), (1, 1, 0)]]).unwrap()
    }

    /// Three states, halts after exactly two steps on every input:
    /// step right, then flip the cell and step back.
    pub fn halt3() -> TuringMachine {
        TuringMachine::from_rows(2, &[[(1, 0, 1), (1, 1, 1)], [(2, 1, -1), (2, 0, -1)]]).unwrap()
    }

    /// Three states: alternates between q0 and q1 while reading ones (erasing
    /// them in q0), halts when q0 reads 0 and spins forever when q1 reads 0.
    pub fn loop3() -> TuringMachine {
        TuringMachine::from_rows(2, &[[(2, 0, 0), (1, 0, 1)], [(1, 0, 0), (0, 1, 1)]]).unwrap()
    }

    /// Uniformly random table on `states >= 2` states, the last one halting.
    pub fn random<R: Rng>(rng: &mut R, states: usize) -> TuringMachine {
        assert!(states >= 2, "a machine needs an initial and a halting state");
        let halt = states - 1;
        let mut cell = || (rng.random_range(0..states), rng.random_range(0..2u8), rng.random_range(-1..=1i8));
        let rows: Vec<_> = (0..halt).map(|_| [cell(), cell()]).collect();
        TuringMachine::from_rows(halt, &rows).unwrap()
    }

    /// Random non-halting configuration with ones drawn in `[-radius, radius]`.
    pub fn random_config<R: Rng>(rng: &mut R, machine: &TuringMachine, radius: i64) -> Configuration {
        let state = rng.random_range(0..machine.halt());
        let ones: Vec<i64> = (-radius..=radius).filter(|_| rng.random_bool(0.5)).collect();
        Configuration::new(state, Tape::from_ones(ones))
    }
}

#[cfg(test)]
mod tests {
    use super::samples::*;
    use super::*;

    #[test]
    fn flip_step() {
        let m = flip();
        let c = m.step(&m.initial_config(Tape::empty())).unwrap();
        assert_eq!(c, Configuration::new(1, Tape::from_ones([0])));
    }

    #[test]
    fn zero_seek_step_shifts_left() {
        let m = zero_seek();
        let c = m.step(&m.initial_config(Tape::from_ones([0, 1]))).unwrap();
        assert_eq!(c, Configuration::new(0, Tape::from_ones([-1, 0])));
    }

    #[test]
    fn step_on_halt_is_an_error() {
        let m = flip();
        let err = m.step(&Configuration::new(1, Tape::from_ones([3]))).unwrap_err();
        assert_eq!(err, TmError::HaltedConfiguration);
    }

    #[test]
    fn run_examples() {
        assert_eq!(
            flip().run(&Tape::empty(), 10),
            RunOutcome::Halted { output: Tape::from_ones([0]), steps: 1 }
        );
        // {0,1} -> {-1,0} -> {-2,-1} reads 0 -> halt.
        assert_eq!(
            zero_seek().run(&Tape::from_ones([0, 1]), 10),
            RunOutcome::Halted { output: Tape::from_ones([-2, -1]), steps: 3 }
        );
        let out = zero_seek().run(&Tape::from_ones([0, 1]), 2);
        assert_eq!(
            out,
            RunOutcome::StillRunning {
                config: Configuration::new(0, Tape::from_ones([-2, -1])),
                steps: 2
            }
        );
    }

    #[test]
    fn right_shift_moves_cells_up() {
        let m = TuringMachine::from_rows(1, &[[(1, 1, -1), (1, 1, -1)]]).unwrap();
        let c = m.step(&m.initial_config(Tape::from_ones([-1, 3]))).unwrap();
        assert_eq!(c.tape, Tape::from_ones([0, 1, 4]));
    }

    #[test]
    fn encodings_round_trip_and_differ() {
        for m in [flip(), zero_seek(), halt3(), loop3()] {
            assert_eq!(decode_machine(&encode_machine(&m)).unwrap(), m);
        }
        assert_ne!(encode_machine(&flip()), encode_machine(&stuck()));
    }

    #[test]
    fn spec_round_trip() {
        let m = loop3();
        let back = TuringMachine::from_spec(&m.to_spec()).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn spec_validation() {
        let mut spec = flip().to_spec();
        spec.delta.pop();
        assert!(matches!(TuringMachine::from_spec(&spec), Err(TmError::MissingTransition { .. })));
        let mut spec = flip().to_spec();
        spec.q_halt = spec.q_init.clone();
        assert_eq!(TuringMachine::from_spec(&spec), Err(TmError::InitIsHalt));
        let mut spec = flip().to_spec();
        spec.delta.push(TransitionSpec {
            from: "q1".into(),
            read: 0,
            to: "q0".into(),
            write: 0,
            shift: 0,
        });
        assert!(matches!(TuringMachine::from_spec(&spec), Err(TmError::TransitionFromHalt(_))));
    }

    #[test]
    fn init_is_reordered_to_index_zero() {
        let spec = MachineSpec {
            states: vec!["done".into(), "start".into()],
            q_init: "start".into(),
            q_halt: "done".into(),
            delta: vec![
                TransitionSpec { from: "start".into(), read: 0, to: "done".into(), write: 1, shift: 0 },
                TransitionSpec { from: "start".into(), read: 1, to: "done".into(), write: 0, shift: 0 },
            ],
        };
        let m = TuringMachine::from_spec(&spec).unwrap();
        assert_eq!(m.state_name(0), "start");
        assert_eq!(m, flip());
    }

    #[test]
    fn juxtaposition() {
        assert_eq!(juxtapose(&Tape::empty(), &Tape::empty(), 0).unwrap(), Tape::empty());
        let input = Tape::from_ones([0]);
        let joined = program_tape(&flip(), &input).unwrap();
        let (prog, rest) = split_tape(&joined, encoded_len(&flip()));
        assert_eq!(prog, encode_machine(&flip()));
        assert_eq!(rest, input);
        assert!(matches!(
            juxtapose(&Tape::from_ones([5]), &Tape::empty(), 3),
            Err(TmError::OverlapError(5))
        ));
        assert!(matches!(
            juxtapose(&Tape::empty(), &Tape::from_ones([-1]), 3),
            Err(TmError::OverlapError(2))
        ));
    }
}
