//! Iteration of `S_[c,b]` until the orbit closes up.

use std::collections::HashMap;

use crate::error::{HappyError, Result};
use crate::happy::{s_eval, FunctionParams};

/// Orbit of a starting value: a pre-periodic `tail` followed by a `cycle`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitResult {
    /// Values visited before entering the cycle, starting with the seed.
    pub tail: Vec<u64>,
    /// The eventual cycle, rotated to begin at its minimum element.
    pub cycle: Vec<u64>,
    /// First cycle element reached from the tail (the seed if `tail` is empty).
    pub entry: u64,
    pub steps_to_cycle: usize,
}

impl OrbitResult {
    pub fn is_fixed(&self) -> bool {
        self.cycle.len() == 1
    }
}

/// Iterates `S_[c,b]` from `a` until a value repeats, giving up after
/// `max_steps` applications.
pub fn orbit(p: FunctionParams, a: u64, max_steps: usize) -> Result<OrbitResult> {
    let mut seen: HashMap<u64, usize> = HashMap::new();
    let mut path = vec![a];
    seen.insert(a, 0);
    let mut current = a;
    for _ in 0..max_steps {
        current = s_eval(p, current)?;
        if let Some(&start) = seen.get(&current) {
            let mut cycle = path.split_off(start);
            let min_at = cycle
                .iter()
                .enumerate()
                .min_by_key(|&(_, v)| *v)
                .map(|(i, _)| i)
                .unwrap_or(0);
            cycle.rotate_left(min_at);
            return Ok(OrbitResult {
                steps_to_cycle: path.len(),
                tail: path,
                cycle,
                entry: current,
            });
        }
        seen.insert(current, path.len());
        path.push(current);
    }
    Err(HappyError::BudgetExhausted(max_steps))
}
