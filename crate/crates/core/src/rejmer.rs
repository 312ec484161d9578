//! Rejmer's greedy construction: a completely multiplicative `±1` sequence
//! whose every prefix sum stays in `{-1, 0, 1}`.
//!
//! Step `j` sets `s_j` (primes get `-1`, composites are forced by
//! multiplicativity). If the sum reaches `±2`, the largest prime
//! `p in (j/2, j]` carrying the surplus sign is switched. Such a prime has no
//! other multiple up to `j`, so the switch only touches `s_p` and values at
//! indices up to `j/2` never change again.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::sieve::SpfStream;

const INITIAL_SIEVE: u64 = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Switch {
    pub step: u64,
    pub prime: u64,
    pub old_sign: i8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StepReport {
    pub step: u64,
    /// `s_j` as first assigned.
    pub value: i8,
    /// Sum over `1..=j` before any repair.
    pub raw_sum: i64,
    pub sum: i64,
    pub switch: Option<Switch>,
}

/// No prime in `(j/2, j]` carried the surplus sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Halt {
    pub step: u64,
    pub sum: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepOutcome {
    Advanced(StepReport),
    Halted(Halt),
}

#[derive(Debug)]
pub struct RejmerState {
    /// `values[i] = s_i`; index 0 unused.
    values: Vec<i8>,
    primes: Vec<u64>,
    sum: i64,
    switches: Vec<Switch>,
    spf: SpfStream,
    halted: Option<Halt>,
}

impl Default for RejmerState {
    fn default() -> Self {
        Self::new()
    }
}

impl RejmerState {
    /// State after step 1 (`s_1 = +1`).
    pub fn new() -> Self {
        Self::with_capacity(INITIAL_SIEVE)
    }

    pub fn with_capacity(steps: u64) -> Self {
        let steps = steps.max(2);
        let mut values = Vec::with_capacity(steps as usize + 1);
        values.extend([0, 1]);
        RejmerState {
            values,
            primes: Vec::new(),
            sum: 1,
            switches: Vec::new(),
            spf: SpfStream::new(steps),
            halted: None,
        }
    }

    /// Number of completed steps.
    pub fn len(&self) -> u64 {
        (self.values.len() - 1) as u64
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn sum(&self) -> i64 {
        self.sum
    }

    /// `s_1..s_j` for the completed steps.
    pub fn signs(&self) -> &[i8] {
        &self.values[1..]
    }

    /// `s_n` for `1 <= n <= len()`.
    pub fn value(&self, n: u64) -> i8 {
        self.values[n as usize]
    }

    pub fn switches(&self) -> &[Switch] {
        &self.switches
    }

    pub fn halted(&self) -> Option<Halt> {
        self.halted
    }

    /// The value step `len() + 1` would assign, before any repair.
    pub fn peek(&mut self) -> i8 {
        self.raw_value(self.len() + 1).0
    }

    fn raw_value(&mut self, j: u64) -> (i8, bool) {
        if j == 2 {
            return (-1, true);
        }
        if j > self.spf.limit() {
            self.spf
                .extend_limit(self.spf.limit().saturating_mul(2).max(j));
        }
        let p = self.spf.spf(j);
        if p == j {
            (-1, true)
        } else {
            (
                self.values[p as usize] * self.values[(j / p) as usize],
                false,
            )
        }
    }

    pub fn step(&mut self) -> StepOutcome {
        if let Some(h) = self.halted {
            return StepOutcome::Halted(h);
        }
        let j = self.len() + 1;
        let (value, prime) = self.raw_value(j);
        if prime {
            self.primes.push(j);
        }
        self.values.push(value);
        self.sum += value as i64;
        let raw_sum = self.sum;
        let mut switch = None;
        if self.sum.abs() == 2 {
            let surplus = self.sum.signum() as i8;
            let start = self.primes.partition_point(|&p| p <= j);
            let found = self.primes[..start]
                .iter()
                .rev()
                .take_while(|&&p| 2 * p > j)
                .copied()
                .find(|&p| self.values[p as usize] == surplus);
            match found {
                Some(p) => {
                    self.values[p as usize] = -surplus;
                    self.sum -= 2 * surplus as i64;
                    let s = Switch {
                        step: j,
                        prime: p,
                        old_sign: surplus,
                    };
                    self.switches.push(s);
                    switch = Some(s);
                }
                None => {
                    let h = Halt {
                        step: j,
                        sum: self.sum,
                    };
                    self.halted = Some(h);
                    return StepOutcome::Halted(h);
                }
            }
        }
        StepOutcome::Advanced(StepReport {
            step: j,
            value,
            raw_sum,
            sum: self.sum,
            switch,
        })
    }

    /// Steps until `steps` entries exist or the algorithm halts.
    pub fn run_to(&mut self, steps: u64) -> Option<Halt> {
        while self.len() < steps {
            if let StepOutcome::Halted(h) = self.step() {
                return Some(h);
            }
        }
        None
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RejmerRun {
    /// `R(1..=J)` as of the final step.
    pub signs: Vec<i8>,
    pub switches: Vec<Switch>,
    pub halt: Option<Halt>,
}

impl RejmerRun {
    pub fn value(&self, n: u64) -> i8 {
        self.signs[n as usize - 1]
    }
}

pub fn rejmer_run(steps: u64) -> Result<RejmerRun> {
    if steps < 2 {
        return Err(Error::InvalidArgument(
            "Rejmer runs need at least 2 steps".into(),
        ));
    }
    let mut state = RejmerState::with_capacity(steps);
    let halt = state.run_to(steps);
    Ok(RejmerRun {
        signs: state.signs().to_vec(),
        switches: state.switches,
        halt,
    })
}

/// The string at step `steps` before its repair (if any) is applied.
pub fn pre_repair_signs(steps: u64) -> Result<Vec<i8>> {
    if steps < 2 {
        return Err(Error::InvalidArgument(
            "Rejmer runs need at least 2 steps".into(),
        ));
    }
    let mut state = RejmerState::with_capacity(steps);
    if let Some(h) = state.run_to(steps - 1) {
        return Err(Error::Inconsistent(format!("halted at step {}", h.step)));
    }
    let mut out = state.signs().to_vec();
    out.push(state.peek());
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StabilityViolation {
    /// The index whose value changed.
    pub index: u64,
    pub step: u64,
}

/// First switch made at a step `j >= 2p`, i.e. one that rewrote a value
/// already past its stabilization point.
pub fn stability_check(switches: &[Switch]) -> Option<StabilityViolation> {
    switches
        .iter()
        .find(|s| 2 * s.prime <= s.step || s.prime > s.step)
        .map(|s| StabilityViolation {
            index: s.prime,
            step: s.step,
        })
}

/// First `n` with `R(n) != reference(n)` and the number of mismatches.
pub fn diff_signs(signs: &[i8], reference: &[i8]) -> (Option<u64>, u64) {
    let mut first = None;
    let mut count = 0;
    for (i, (a, b)) in signs.iter().zip(reference).enumerate() {
        if a != b {
            first.get_or_insert(i as u64 + 1);
            count += 1;
        }
    }
    (first, count)
}

/// Renders signs as a `+`/`-` string.
pub struct SignString<'a>(pub &'a [i8]);

impl fmt::Display for SignString<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in self.0 {
            f.write_str(if s > 0 { "+" } else { "-" })?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_steps() {
        let run = rejmer_run(2).unwrap();
        assert_eq!(run.signs, [1, -1]);
        assert!(run.switches.is_empty());
        assert!(stability_check(&run.switches).is_none());
        assert!(rejmer_run(1).is_err());
    }

    #[test]
    fn step_sixteen() {
        let pre = pre_repair_signs(16).unwrap();
        assert_eq!(SignString(&pre).to_string(), "+--+-+--+++--+++");
        assert_eq!(pre.iter().filter(|&&s| s > 0).count(), 9);

        let mut state = RejmerState::new();
        state.run_to(15);
        let StepOutcome::Advanced(report) = state.step() else {
            panic!("halted");
        };
        assert_eq!(report.raw_sum, 2);
        assert_eq!(report.sum, 0);
        let s = report.switch.unwrap();
        assert_eq!((s.step, s.prime, s.old_sign), (16, 11, 1));
        assert_eq!(state.value(13), -1);
    }

    #[test]
    fn prefix_sums_stay_small() {
        let mut state = RejmerState::with_capacity(10);
        for _ in 0..5000 {
            match state.step() {
                StepOutcome::Advanced(r) => assert!(r.sum.abs() <= 1),
                StepOutcome::Halted(h) => panic!("halted at {}", h.step),
            }
        }
        assert!(stability_check(state.switches()).is_none());
    }

    #[test]
    fn diff_counts() {
        assert_eq!(diff_signs(&[1, -1, 1], &[1, 1, -1]), (Some(2), 2));
        assert_eq!(diff_signs(&[1], &[1]), (None, 0));
    }

    #[test]
    fn bad_switch_is_flagged() {
        let log = [Switch {
            step: 10,
            prime: 5,
            old_sign: 1,
        }];
        assert_eq!(
            stability_check(&log),
            Some(StabilityViolation { index: 5, step: 10 })
        );
    }
}
