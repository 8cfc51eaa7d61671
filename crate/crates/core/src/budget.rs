//! Work limits for the enumeration and search routines.

use alloc::boxed::Box;
use alloc::string::String;
use core::cell::Cell;
use core::fmt;

use crate::error::{Error, Result};

/// A step counter with an optional external stop signal (for example a wall-clock deadline
/// supplied by a host with a clock).
pub struct Budget {
    limit: Option<u64>,
    used: Cell<u64>,
    stop: Option<Box<dyn Fn() -> bool>>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget { limit: None, used: Cell::new(0), stop: None }
    }

    pub fn with_steps(limit: u64) -> Self {
        Budget { limit: Some(limit), used: Cell::new(0), stop: None }
    }

    /// Adds a stop predicate polled on every step.
    pub fn with_stop(mut self, stop: impl Fn() -> bool + 'static) -> Self {
        self.stop = Some(Box::new(stop));
        self
    }

    pub fn used(&self) -> u64 {
        self.used.get()
    }

    /// Consumes one step. `next` describes the work about to start and is only
    /// evaluated when the budget has run out.
    pub fn tick(&self, next: impl FnOnce() -> String) -> Result<()> {
        let used = self.used.get() + 1;
        self.used.set(used);
        let over = self.limit.is_some_and(|l| used > l) || self.stop.as_ref().is_some_and(|s| s());
        if over {
            Err(Error::BudgetExceeded { next: next() })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::unlimited()
    }
}

impl fmt::Debug for Budget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Budget")
            .field("limit", &self.limit)
            .field("used", &self.used.get())
            .field("stop", &self.stop.is_some())
            .finish()
    }
}
