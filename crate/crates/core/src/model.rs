//! Flights, schedules and the pairwise time/probability arithmetic.
//!
//! All times are minutes since midnight within a single day. A flight holds
//! its gate over the locked interval `[arrival - buffer, departure + buffer]`;
//! two flights on the same gate collide when their locked intervals overlap
//! with positive length. Touching endpoints are allowed.

use std::cmp::Ordering;
use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct Flight<T = f64> {
    id: String,
    arrival: T,
    departure: T,
}

impl<T: Scalar> Flight<T> {
    /// Builds a flight, rejecting negative arrivals and empty stays.
    pub fn new(id: impl Into<String>, arrival: T, departure: T) -> Result<Self> {
        let id = id.into();
        if id.is_empty() {
            return Err(Error::InvalidFlight {
                id,
                reason: "empty id",
            });
        }
        if arrival < T::zero() {
            return Err(Error::InvalidFlight {
                id,
                reason: "arrival before midnight",
            });
        }
        if arrival.partial_cmp(&departure) != Some(Ordering::Less) {
            return Err(Error::InvalidFlight {
                id,
                reason: "arrival must precede departure",
            });
        }
        Ok(Self {
            id,
            arrival,
            departure,
        })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn arrival(&self) -> T {
        self.arrival
    }

    pub fn departure(&self) -> T {
        self.departure
    }
}

/// A non-empty-id, duplicate-free list of flights in input order.
#[derive(Debug, Clone, PartialEq)]
pub struct Schedule<T = f64> {
    flights: Vec<Flight<T>>,
}

impl<T: Scalar> Schedule<T> {
    pub fn new(flights: Vec<Flight<T>>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(flights.len());
        for flight in &flights {
            if !seen.insert(flight.id()) {
                return Err(Error::DuplicateId(flight.id().to_owned()));
            }
        }
        Ok(Self { flights })
    }

    pub fn flights(&self) -> &[Flight<T>] {
        &self.flights
    }

    pub fn len(&self) -> usize {
        self.flights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flights.is_empty()
    }

    pub fn position(&self, id: &str) -> Option<usize> {
        self.flights.iter().position(|f| f.id() == id)
    }

    /// Indices ordered by arrival, then input position.
    pub fn arrival_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.flights.len()).collect();
        order.sort_by(|&a, &b| {
            self.flights[a]
                .arrival
                .partial_cmp(&self.flights[b].arrival)
                .expect("flight times are comparable")
                .then(a.cmp(&b))
        });
        order
    }

    pub(crate) fn require_non_empty(&self) -> Result<()> {
        if self.is_empty() {
            Err(Error::EmptySchedule)
        } else {
            Ok(())
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum ObjectiveVariant {
    /// `1 / (gap + 2b)`.
    #[default]
    Buffered,
    /// `1 / gap`, the denominator used by the original OPL program.
    OplCompat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum OverlapPolicy {
    /// Same-gate collisions are forbidden.
    #[default]
    Hard,
    /// Collisions are allowed and cost 1 each.
    Soft,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelConfig<T = f64> {
    buffer: T,
    pub objective_variant: ObjectiveVariant,
    pub overlap_policy: OverlapPolicy,
}

impl<T: Scalar> ModelConfig<T> {
    pub fn new(
        buffer: T,
        objective_variant: ObjectiveVariant,
        overlap_policy: OverlapPolicy,
    ) -> Result<Self> {
        if buffer < T::zero() {
            return Err(Error::NegativeBuffer);
        }
        Ok(Self {
            buffer,
            objective_variant,
            overlap_policy,
        })
    }

    /// Buffered objective, hard overlap policy.
    pub fn with_buffer(buffer: T) -> Result<Self> {
        Self::new(buffer, ObjectiveVariant::Buffered, OverlapPolicy::Hard)
    }

    pub fn buffer(&self) -> T {
        self.buffer
    }

    pub fn with_policy(mut self, policy: OverlapPolicy) -> Self {
        self.overlap_policy = policy;
        self
    }

    pub fn with_variant(mut self, variant: ObjectiveVariant) -> Self {
        self.objective_variant = variant;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LockedInterval<T = f64> {
    pub start: T,
    pub end: T,
}

impl<T: Scalar> LockedInterval<T> {
    /// True when the two intervals share more than a single point.
    pub fn overlaps(&self, other: &Self) -> bool {
        self.start.max_of(other.start) < self.end.min_of(other.end)
    }
}

pub fn locked_interval<T: Scalar>(flight: &Flight<T>, buffer: T) -> LockedInterval<T> {
    debug_assert!(buffer >= T::zero());
    LockedInterval {
        start: flight.arrival - buffer,
        end: flight.departure + buffer,
    }
}

/// `later.arrival - earlier.departure`; negative when the stays overlap.
pub fn gap<T: Scalar>(earlier: &Flight<T>, later: &Flight<T>) -> T {
    later.arrival - earlier.departure
}

/// Whether the two flights' locked intervals overlap with positive length.
pub fn conflicts_hard<T: Scalar>(a: &Flight<T>, b: &Flight<T>, buffer: T) -> bool {
    locked_interval(a, buffer).overlaps(&locked_interval(b, buffer))
}

/// The positive gap between two flights, taken in whichever orientation has
/// one. `None` if neither does (the stays overlap or touch).
pub fn positive_gap<T: Scalar>(a: &Flight<T>, b: &Flight<T>) -> Option<T> {
    let forward = gap(a, b);
    if forward > T::zero() {
        return Some(forward);
    }
    let backward = gap(b, a);
    (backward > T::zero()).then_some(backward)
}

/// `2b / (gap + 2b)` for the positive-gap orientation, clamped to 1 when the
/// pair is in hard conflict.
pub fn conflict_probability<T: Scalar>(a: &Flight<T>, b: &Flight<T>, buffer: T) -> Result<T> {
    if buffer < T::zero() {
        return Err(Error::NegativeBuffer);
    }
    if buffer == T::zero() {
        return Err(Error::ZeroBuffer);
    }
    if conflicts_hard(a, b, buffer) {
        return Ok(T::one());
    }
    // Not in conflict with b > 0 means the gap is at least 2b.
    let gap = positive_gap(a, b).ok_or(Error::UndefinedTerm)?;
    let twice = buffer + buffer;
    Ok(twice / (gap + twice))
}

/// Expected-conflict term for the ordered pair `(earlier, later)`.
pub fn expected_term<T: Scalar>(
    earlier: &Flight<T>,
    later: &Flight<T>,
    cfg: &ModelConfig<T>,
) -> Result<T> {
    let gap = gap(earlier, later);
    let denominator = match cfg.objective_variant {
        ObjectiveVariant::Buffered => gap + cfg.buffer + cfg.buffer,
        ObjectiveVariant::OplCompat => gap,
    };
    if denominator > T::zero() {
        Ok(T::one() / denominator)
    } else {
        Err(Error::UndefinedTerm)
    }
}

/// The term an unordered same-gate pair contributes to the objective: the
/// expected term in its positive-gap orientation (if any), plus 1 for a hard
/// conflict under the soft policy.
pub fn pair_cost<T: Scalar>(a: &Flight<T>, b: &Flight<T>, cfg: &ModelConfig<T>) -> T {
    let mut cost = T::zero();
    for (earlier, later) in [(a, b), (b, a)] {
        if gap(earlier, later) > T::zero() {
            cost = cost + expected_term(earlier, later, cfg).expect("positive gap has a term");
        }
    }
    if cfg.overlap_policy == OverlapPolicy::Soft && conflicts_hard(a, b, cfg.buffer) {
        cost = cost + T::one();
    }
    cost
}
