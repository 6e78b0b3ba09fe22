use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::time::{format_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IntervalError {
    #[error("interval bounds must be non-negative")]
    Negative,
    #[error("lower bound exceeds upper bound")]
    Inverted,
    #[error("interval is empty")]
    Empty,
    #[error("an unbounded interval must be open on the right")]
    ClosedAtInfinity,
}

/// A non-empty interval over non-negative rationals, possibly unbounded above.
///
/// `upper == None` stands for `+inf`, which is always an open end.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    lower: Rational,
    upper: Option<Rational>,
    lower_closed: bool,
    upper_closed: bool,
}

impl Interval {
    pub fn new(
        lower: Rational,
        upper: Option<Rational>,
        lower_closed: bool,
        upper_closed: bool,
    ) -> Result<Self, IntervalError> {
        if lower < Rational::zero() || upper.as_ref().is_some_and(|u| *u < Rational::zero()) {
            return Err(IntervalError::Negative);
        }
        match &upper {
            None if upper_closed => return Err(IntervalError::ClosedAtInfinity),
            Some(u) if lower > *u => return Err(IntervalError::Inverted),
            Some(u) if lower == *u && !(lower_closed && upper_closed) => {
                return Err(IntervalError::Empty)
            }
            _ => {}
        }
        Ok(Self { lower, upper, lower_closed, upper_closed })
    }

    /// `[lower, upper]`
    pub fn closed(lower: Rational, upper: Rational) -> Result<Self, IntervalError> {
        Self::new(lower, Some(upper), true, true)
    }

    /// `[lower, inf)`
    pub fn from(lower: Rational) -> Self {
        Self::new(lower, None, true, false).expect("a closed lower bound with +inf is never empty")
    }

    pub fn lower(&self) -> &Rational {
        &self.lower
    }

    pub fn upper(&self) -> Option<&Rational> {
        self.upper.as_ref()
    }

    pub fn lower_closed(&self) -> bool {
        self.lower_closed
    }

    pub fn upper_closed(&self) -> bool {
        self.upper_closed
    }

    pub fn is_bounded(&self) -> bool {
        self.upper.is_some()
    }

    pub fn contains(&self, t: &Rational) -> bool {
        let above = if self.lower_closed { *t >= self.lower } else { *t > self.lower };
        let below = match &self.upper {
            None => true,
            Some(u) if self.upper_closed => t <= u,
            Some(u) => t < u,
        };
        above && below
    }

    /// True when some member of the interval is strictly greater than `t`.
    pub fn reaches_beyond(&self, t: &Rational) -> bool {
        match &self.upper {
            None => true,
            Some(u) => u > t,
        }
    }

    /// True when every member of the interval is strictly greater than `t`.
    pub fn lies_after(&self, t: &Rational) -> bool {
        if self.lower_closed {
            *t < self.lower
        } else {
            *t <= self.lower
        }
    }

    /// True when every member of the interval is strictly less than `t`.
    pub fn lies_before(&self, t: &Rational) -> bool {
        match &self.upper {
            None => false,
            Some(u) if self.upper_closed => u < t,
            Some(u) => u <= t,
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let open = if self.lower_closed { '[' } else { '(' };
        let lower = format_rational(&self.lower);
        match &self.upper {
            None => write!(f, "{open}{lower},inf)"),
            Some(u) => {
                let close = if self.upper_closed { ']' } else { ')' };
                write!(f, "{open}{lower},{}{close}", format_rational(u))
            }
        }
    }
}
