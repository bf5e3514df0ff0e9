use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::{Flight, Schedule};
use crate::scalar::Scalar;

/// Parameters for a synthetic single-day schedule. Departures are drawn
/// uniformly over whole minutes in `[window_start, window_end]`; every flight
/// stays `stay_duration` minutes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub flight_count: usize,
    pub window_start: u32,
    pub window_end: u32,
    pub stay_duration: u32,
    pub rng_seed: u64,
}

impl GeneratorSpec {
    pub fn new(flight_count: usize, rng_seed: u64) -> Self {
        Self {
            flight_count,
            rng_seed,
            ..Self::default()
        }
    }
}

impl Default for GeneratorSpec {
    /// 06:00 to 23:59, one-hour stays.
    fn default() -> Self {
        Self {
            flight_count: 1,
            window_start: 360,
            window_end: 1439,
            stay_duration: 60,
            rng_seed: 0,
        }
    }
}

/// Draws a schedule from `spec`. Flights are listed by departure time and
/// named `F0001`, `F0002`, ... in that order. Pure function of `spec`.
pub fn generate_instance<T: Scalar>(spec: &GeneratorSpec) -> Result<Schedule<T>> {
    if spec.flight_count == 0 {
        return Err(Error::EmptySchedule);
    }
    if spec.window_start > spec.window_end {
        return Err(Error::InvalidFlight {
            id: "generator".into(),
            reason: "window start after window end",
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.rng_seed);
    let mut departures: Vec<u32> = (0..spec.flight_count)
        .map(|_| rng.gen_range(spec.window_start..=spec.window_end))
        .collect();
    departures.sort_unstable();
    let flights = departures
        .into_iter()
        .enumerate()
        .map(|(i, departure)| {
            let departure = i64::from(departure);
            Flight::new(
                format!("F{:04}", i + 1),
                T::from_minutes(departure - i64::from(spec.stay_duration)),
                T::from_minutes(departure),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    Schedule::new(flights)
}
