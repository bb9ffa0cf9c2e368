//! The property catalog.
//!
//! Each property pairs a generator, which draws a universe and the objects a
//! statement quantifies over, with a check. Checks re-verify their premises,
//! so a shrunk or replayed input that no longer meets them is reported as
//! vacuous rather than as a failure.

use scf_core::universe::Universe;

use crate::gen::Rng8;
use crate::inputs::Inputs;

mod models;
mod product;
mod single;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// The premises do not hold for these inputs.
    Vacuous(String),
    Pass,
    Fail(String),
}

/// A generated instance: the universe and the objects drawn in it.
#[derive(Clone, Debug)]
pub struct Case {
    pub universe: Universe,
    pub inputs: Inputs,
}

pub type GenFn = fn(&mut Rng8) -> Option<Case>;
pub type CheckFn = fn(&Universe, &Inputs) -> Verdict;

#[derive(Clone, Copy)]
pub struct Property {
    pub id: &'static str,
    /// Lemma number and a formula-level statement of the property.
    pub anchor: &'static str,
    /// Minimum fraction of trials whose premises must hold.
    pub floor: f64,
    pub gen: GenFn,
    pub check: CheckFn,
}

impl std::fmt::Debug for Property {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Property").field("id", &self.id).field("floor", &self.floor).finish()
    }
}

macro_rules! premise {
    ($c:expr, $($m:tt)+) => {
        if !$c {
            return $crate::catalog::Verdict::Vacuous(format!($($m)+));
        }
    };
}

macro_rules! claim {
    ($c:expr, $($m:tt)+) => {
        if !$c {
            return $crate::catalog::Verdict::Fail(format!($($m)+));
        }
    };
}

/// Unwraps an operation whose preconditions were already verified; an error is a failure.
macro_rules! must {
    ($e:expr, $what:expr) => {
        match $e {
            Ok(v) => v,
            Err(e) => return $crate::catalog::Verdict::Fail(format!("{}: {}", $what, e)),
        }
    };
}

/// Unwraps a premise-level lookup; an error makes the instance vacuous.
macro_rules! given {
    ($e:expr, $what:expr) => {
        match $e {
            Ok(v) => v,
            Err(_) => return $crate::catalog::Verdict::Vacuous(format!("{} undefined", $what)),
        }
    };
}

pub(crate) use {claim, given, must, premise};

fn case(universe: Universe, inputs: Inputs) -> Option<Case> {
    Some(Case { universe, inputs })
}

pub fn all() -> Vec<Property> {
    let mut v = Vec::new();
    v.extend(models::properties());
    v.extend(single::properties());
    v.extend(product::properties());
    v
}

pub fn find(id: &str) -> Option<Property> {
    all().into_iter().find(|p| p.id == id)
}
