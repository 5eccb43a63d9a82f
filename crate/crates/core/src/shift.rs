//! Exact encoding of configurations as points of the unit square and the
//! piecewise-affine, area-preserving generalized shift that conjugates a
//! machine's global transition function.
//!
//! Encoding with `n = |Q|`:
//!
//! ```text
//! x(q, t) = (s(q) + sum_{i >= 0} t[i] 3^-(i+1)) / n
//! y(q, t) =         sum_{i >= 1} t[-i] 3^-i
//! ```
//!
//! Digits are restricted to `{0, 1}` in base 3, so distinct configurations are
//! separated by gaps and digit windows can be isolated by open boxes.
//! Everything here is exact rational arithmetic.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::tm::{Configuration, RunOutcome, Shift, StateId, Tape, TuringMachine};

pub type Rational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ShiftError {
    #[error("point lies in no cylinder (halting or invalid encoding)")]
    NoCylinder,
    #[error("output support radius {radius} exceeds the window m = {window}")]
    SupportTooWide { radius: u32, window: u32 },
    #[error("point is not a valid configuration encoding")]
    InvalidEncoding,
}

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn pow3(k: u32) -> Rational {
    Rational::from_integer(BigInt::from(3u8).pow(k))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SquarePoint {
    pub x: Rational,
    pub y: Rational,
}

impl SquarePoint {
    pub fn new(x: Rational, y: Rational) -> Self {
        SquarePoint { x, y }
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.x.to_f64().unwrap_or(f64::NAN), self.y.to_f64().unwrap_or(f64::NAN))
    }
}

impl fmt::Display for SquarePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Base-3 value `sum_k digits[k] 3^-(k+1)`.
fn digit_series<I: IntoIterator<Item = u32>>(positions: I) -> Rational {
    positions.into_iter().fold(Rational::zero(), |acc, k| acc + pow3(k).recip())
}

/// Encodes `config` as an exact point of the unit square.
pub fn encode_config(machine: &TuringMachine, config: &Configuration) -> SquarePoint {
    let n = machine.num_states() as i64;
    let right = digit_series(config.tape.ones().filter(|&c| c >= 0).map(|c| c as u32 + 1));
    let left = digit_series(config.tape.ones().filter(|&c| c < 0).map(|c| (-c) as u32));
    SquarePoint {
        x: (int(config.state as i64) + right) / int(n),
        y: left,
    }
}

/// Expands `v in [0, 1)` in base 3, requiring digits in `{0, 1}` and a
/// terminating expansion. Returns the positions (1-based) of the ones.
fn ternary_ones(v: &Rational) -> Option<Vec<u32>> {
    if v.is_negative() || *v >= Rational::one() {
        return None;
    }
    let mut rest = v.clone();
    let mut ones = Vec::new();
    let three = int(3);
    let mut k = 0u32;
    while !rest.is_zero() {
        // A terminating ternary expansion has a power-of-3 denominator.
        k += 1;
        if k > 4096 {
            return None;
        }
        rest = &rest * &three;
        let digit = rest.floor();
        if digit > Rational::one() {
            return None;
        }
        if digit.is_one() {
            ones.push(k);
        }
        rest -= digit;
    }
    Some(ones)
}

/// Inverse of [`encode_config`] on valid encodings.
pub fn decode_point(machine: &TuringMachine, p: &SquarePoint) -> Result<Configuration, ShiftError> {
    let n = int(machine.num_states() as i64);
    let scaled = &p.x * &n;
    let state = scaled.floor();
    if state.is_negative() || state >= n {
        return Err(ShiftError::InvalidEncoding);
    }
    let right = ternary_ones(&(&scaled - &state)).ok_or(ShiftError::InvalidEncoding)?;
    let left = ternary_ones(&p.y).ok_or(ShiftError::InvalidEncoding)?;
    let tape = Tape::from_ones(
        right.into_iter().map(|k| k as i64 - 1).chain(left.into_iter().map(|k| -(k as i64))),
    );
    Ok(Configuration::new(state.to_integer().to_usize().unwrap(), tape))
}

/// Digit constraints defining one domain of the generalized shift.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Cylinder {
    pub state: StateId,
    /// `t[0]`, the leading ternary digit of the fractional part of `x n`.
    pub read: u8,
    /// `t[-1]`, the leading ternary digit of `y`; only constrained for
    /// right shifts, which pull that cell under the head.
    pub left: Option<u8>,
}

/// Affine map `p -> A p + b` of the square with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineMap {
    pub linear: [[Rational; 2]; 2],
    pub offset: [Rational; 2],
}

impl AffineMap {
    pub fn apply(&self, p: &SquarePoint) -> SquarePoint {
        let [[a, b], [c, d]] = &self.linear;
        SquarePoint {
            x: a * &p.x + b * &p.y + &self.offset[0],
            y: c * &p.x + d * &p.y + &self.offset[1],
        }
    }

    pub fn determinant(&self) -> Rational {
        let [[a, b], [c, d]] = &self.linear;
        a * d - b * c
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Piece {
    pub cylinder: Cylinder,
    pub map: AffineMap,
}

/// Area-preserving piecewise-affine map of the unit square conjugate to a
/// machine's global transition function on valid encodings.
#[derive(Debug, Clone)]
pub struct GeneralizedShift {
    states: usize,
    halt: StateId,
    pieces: Vec<Piece>,
}

/// Builds the piece for the cylinder `(s, t0[, t-1])` and transition to
/// `(s', t0', shift)`.
fn piece_map(n: i64, s: i64, read: i64, left: i64, next: i64, write: i64, shift: Shift) -> AffineMap {
    let nq = int(n);
    let zero = Rational::zero;
    match shift {
        // x' = x + (s' - s)/n + (t0' - t0)/(3n), y' = y
        Shift::Stay => AffineMap {
            linear: [[Rational::one(), zero()], [zero(), Rational::one()]],
            offset: [int(next - s) / &nq + rat(write - read, 3 * n), zero()],
        },
        // x' = (s' + 3(x n - s - t0/3)) / n = 3x + (s' - 3s - t0)/n
        // y' = y/3 + t0'/3
        Shift::Left => AffineMap {
            linear: [[int(3), zero()], [zero(), rat(1, 3)]],
            offset: [int(next - 3 * s - read) / &nq, rat(write, 3)],
        },
        // x' = (s' + t-1/3 + (x n - s - t0/3)/3 + t0'/9) / n
        //    = x/3 + (s' + t-1/3 - s/3 - t0/9 + t0'/9) / n
        // y' = 3y - t-1
        Shift::Right => AffineMap {
            linear: [[rat(1, 3), zero()], [zero(), int(3)]],
            offset: [
                (int(next) + rat(left, 3) - rat(s, 3) - rat(read, 9) + rat(write, 9)) / &nq,
                int(-left),
            ],
        },
    }
}

/// Compiles `machine` into its generalized shift.
pub fn compile_shift(machine: &TuringMachine) -> GeneralizedShift {
    let n = machine.num_states() as i64;
    let mut pieces = Vec::new();
    for s in 0..machine.num_states() {
        for read in 0..2u8 {
            let Some(tr) = machine.transition(s, read) else { continue };
            let lefts: &[Option<u8>] = match tr.shift {
                Shift::Right => &[Some(0), Some(1)],
                _ => &[None],
            };
            for &left in lefts {
                let map = piece_map(
                    n,
                    s as i64,
                    read as i64,
                    left.unwrap_or(0) as i64,
                    tr.next as i64,
                    tr.write as i64,
                    tr.shift,
                );
                pieces.push(Piece { cylinder: Cylinder { state: s, read, left }, map });
            }
        }
    }
    GeneralizedShift { states: machine.num_states(), halt: machine.halt(), pieces }
}

impl GeneralizedShift {
    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn num_states(&self) -> usize {
        self.states
    }

    pub fn halt(&self) -> StateId {
        self.halt
    }

    /// The digits `(s, t0, t-1)` the cylinders are defined by, or `None` when
    /// `p` is outside the square or a read digit is 2.
    fn leading_digits(&self, p: &SquarePoint) -> Option<(StateId, u8, u8)> {
        let one = Rational::one();
        if p.x.is_negative() || p.x >= one || p.y.is_negative() || p.y >= one {
            return None;
        }
        let scaled = &p.x * int(self.states as i64);
        let state = scaled.floor();
        let t0 = ((&scaled - &state) * int(3)).floor();
        let left = (&p.y * int(3)).floor();
        let digit = |r: &Rational| r.to_integer().to_u8().filter(|d| *d <= 1);
        Some((state.to_integer().to_usize()?, digit(&t0)?, digit(&left)?))
    }

    /// The unique piece whose cylinder contains `p`.
    pub fn piece_for(&self, p: &SquarePoint) -> Result<&Piece, ShiftError> {
        let (state, read, left) = self.leading_digits(p).ok_or(ShiftError::NoCylinder)?;
        self.pieces
            .iter()
            .find(|piece| {
                piece.cylinder.state == state
                    && piece.cylinder.read == read
                    && piece.cylinder.left.is_none_or(|l| l == left)
            })
            .ok_or(ShiftError::NoCylinder)
    }

    pub fn step(&self, p: &SquarePoint) -> Result<SquarePoint, ShiftError> {
        Ok(self.piece_for(p)?.map.apply(p))
    }

    /// Whether `p` has the halting state's `x` strip, the union of every
    /// halting region.
    pub fn in_halting_strip(&self, p: &SquarePoint) -> bool {
        let scaled = &p.x * int(self.states as i64);
        scaled.floor() == int(self.halt as i64)
    }
}

/// Applies the piece whose cylinder contains `p`.
pub fn shift_step(shift: &GeneralizedShift, p: &SquarePoint) -> Result<SquarePoint, ShiftError> {
    shift.step(p)
}

/// Forward orbit of `start`, at most `horizon` iterates beyond the start,
/// stopping early where no cylinder applies.
pub fn orbit(shift: &GeneralizedShift, start: SquarePoint, horizon: u64) -> Vec<SquarePoint> {
    let mut points = vec![start];
    for _ in 0..horizon {
        match shift.step(points.last().unwrap()) {
            Ok(next) => points.push(next),
            Err(_) => break,
        }
    }
    points
}

/// Open box around `encode(q_halt, t_out)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HaltingRegion {
    pub center: SquarePoint,
    /// Half widths in `x` and `y`.
    pub half_width: [Rational; 2],
    pub matched_digits: u32,
}

impl HaltingRegion {
    pub fn contains(&self, p: &SquarePoint) -> bool {
        (&p.x - &self.center.x).abs() < self.half_width[0]
            && (&p.y - &self.center.y).abs() < self.half_width[1]
    }
}

/// Box of half-width `3^-(m+2)/n` in `x` and `3^-(m+2)` in `y`. It contains
/// every valid encoding in the halting state that agrees with `t_out` on
/// cells `-(m+2)..=m+1` and excludes every valid encoding that differs in
/// state or on cells `-m..=m`.
pub fn halting_region(machine: &TuringMachine, t_out: &Tape, m: u32) -> Result<HaltingRegion, ShiftError> {
    let radius = t_out.radius();
    if radius > m {
        return Err(ShiftError::SupportTooWide { radius, window: m });
    }
    Ok(halting_region_unchecked(machine, t_out, m))
}

fn halting_region_unchecked(machine: &TuringMachine, t_out: &Tape, m: u32) -> HaltingRegion {
    let center = encode_config(machine, &Configuration::new(machine.halt(), t_out.clone()));
    let h = pow3(m + 2).recip();
    HaltingRegion {
        center,
        half_width: [&h / int(machine.num_states() as i64), h],
        matched_digits: m,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquivalenceReport {
    pub input: Vec<i64>,
    pub horizon: u64,
    /// Window actually used for the halting region (`max(m, radius(output))`).
    pub window: u32,
    pub machine_halts: bool,
    pub output: Option<Vec<i64>>,
    pub steps: Option<u64>,
    pub orbit_hits: bool,
    pub hit_index: Option<u64>,
    pub agreement: bool,
}

/// Runs the machine and the shift orbit side by side.
///
/// Machine side: `run(input, horizon)`. Dynamics side: iterate the shift
/// from `encode(q_init, input)` for `horizon` steps. When the machine halts
/// with output `t`, the orbit must first enter the halting strip at the
/// halting step and land in the region of `t`. When it does not halt, the
/// orbit must stay out of the halting strip (and hence out of every halting
/// region). Outputs wider than `m` widen the window to the output radius.
pub fn check_turing_equivalence(
    machine: &TuringMachine,
    shift: &GeneralizedShift,
    input: &Tape,
    horizon: u64,
    m: u32,
) -> EquivalenceReport {
    let outcome = machine.run(input, horizon);

    let mut point = encode_config(machine, &machine.initial_config(input.clone()));
    let mut first_halting = None;
    for k in 1..=horizon {
        match shift.step(&point) {
            Ok(next) => point = next,
            Err(_) => break,
        }
        if shift.in_halting_strip(&point) {
            first_halting = Some(k);
            break;
        }
    }

    match outcome {
        RunOutcome::Halted { output, steps } => {
            let window = m.max(output.radius());
            let region = halting_region_unchecked(machine, &output, window);
            let hits = first_halting.is_some() && region.contains(&point);
            EquivalenceReport {
                input: input.ones().collect(),
                horizon,
                window,
                machine_halts: true,
                output: Some(output.ones().collect()),
                steps: Some(steps),
                orbit_hits: hits,
                hit_index: first_halting.filter(|_| hits),
                agreement: hits && first_halting == Some(steps),
            }
        }
        RunOutcome::StillRunning { .. } => EquivalenceReport {
            input: input.ones().collect(),
            horizon,
            window: m,
            machine_halts: false,
            output: None,
            steps: None,
            orbit_hits: first_halting.is_some(),
            hit_index: first_halting,
            agreement: first_halting.is_none(),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tm::samples::*;

    fn pt(x: (i64, i64), y: (i64, i64)) -> SquarePoint {
        SquarePoint::new(rat(x.0, x.1), rat(y.0, y.1))
    }

    #[test]
    fn encode_examples() {
        let m = flip();
        assert_eq!(encode_config(&m, &Configuration::new(0, Tape::empty())), pt((0, 1), (0, 1)));
        assert_eq!(encode_config(&m, &Configuration::new(0, Tape::from_ones([0]))), pt((1, 6), (0, 1)));
        assert_eq!(encode_config(&m, &Configuration::new(1, Tape::from_ones([-1]))), pt((1, 2), (1, 3)));
    }

    #[test]
    fn flip_piece_maps_origin() {
        let m = flip();
        let g = compile_shift(&m);
        let image = shift_step(&g, &pt((0, 1), (0, 1))).unwrap();
        let oracle = encode_config(&m, &m.step(&m.initial_config(Tape::empty())).unwrap());
        assert_eq!(oracle, pt((2, 3), (0, 1)));
        assert_eq!(image, oracle);
    }

    #[test]
    fn zero_seek_orbit_reaches_halting_cylinder() {
        let m = zero_seek();
        let g = compile_shift(&m);
        let c0 = m.initial_config(Tape::from_ones([0, 1]));
        let p0 = encode_config(&m, &c0);
        assert_eq!(p0, pt((2, 9), (0, 1)));
        let mut p = p0;
        let mut c = c0;
        for _ in 0..3 {
            p = shift_step(&g, &p).unwrap();
            c = m.step(&c).unwrap();
            assert_eq!(p, encode_config(&m, &c));
        }
        assert!(g.in_halting_strip(&p));
        assert_eq!(shift_step(&g, &p), Err(ShiftError::NoCylinder));
    }

    #[test]
    fn determinants_are_one() {
        for m in [flip(), zero_seek(), halt3(), loop3()] {
            for piece in compile_shift(&m).pieces() {
                assert!(piece.map.determinant().is_one());
            }
        }
    }

    #[test]
    fn invalid_digit_has_no_cylinder() {
        let g = compile_shift(&flip());
        // frac(x n) = 2/3 has leading digit 2.
        assert_eq!(g.step(&pt((1, 3), (0, 1))), Err(ShiftError::NoCylinder));
        assert_eq!(g.step(&pt((1, 1), (0, 1))), Err(ShiftError::NoCylinder));
    }

    #[test]
    fn region_examples() {
        let m = flip();
        let t_out = Tape::from_ones([0]);
        let r = halting_region(&m, &t_out, 1).unwrap();
        assert_eq!(r.center, pt((2, 3), (0, 1)));
        assert_eq!(r.half_width[0], rat(1, 54));
        assert!(r.contains(&r.center));
        let blank = encode_config(&m, &Configuration::new(1, Tape::empty()));
        // |2/3 - 1/2| = 1/6 >= 1/54
        assert!(!r.contains(&blank));
        assert_eq!(
            halting_region(&m, &Tape::from_ones([3]), 1),
            Err(ShiftError::SupportTooWide { radius: 3, window: 1 })
        );
    }

    #[test]
    fn decode_inverts_encode() {
        let m = halt3();
        for tape in Tape::enumerate(-3, 3) {
            for s in 0..3 {
                let c = Configuration::new(s, tape.clone());
                assert_eq!(decode_point(&m, &encode_config(&m, &c)).unwrap(), c);
            }
        }
        assert_eq!(decode_point(&m, &pt((2, 9), (0, 1))), Err(ShiftError::InvalidEncoding));
    }

    #[test]
    fn equivalence_examples() {
        let m = flip();
        let r = check_turing_equivalence(&m, &compile_shift(&m), &Tape::empty(), 10, 2);
        assert!(r.machine_halts && r.orbit_hits && r.agreement);
        assert_eq!((r.steps, r.hit_index), (Some(1), Some(1)));

        let m = zero_seek();
        let r = check_turing_equivalence(&m, &compile_shift(&m), &Tape::empty(), 10, 2);
        assert!(r.machine_halts && r.orbit_hits && r.agreement);
        assert_eq!(r.steps, Some(1));

        let m = stuck();
        let r = check_turing_equivalence(&m, &compile_shift(&m), &Tape::empty(), 100, 2);
        assert!(!r.machine_halts && !r.orbit_hits && r.agreement);
    }
}
