use std::collections::HashSet;
use std::io::{Read, Write};

use crate::error::{Error, Result};
use crate::evaluator::Assignment;
use crate::model::{Flight, Schedule};
use crate::scalar::Scalar;

const SCHEDULE_HEADER: [&str; 3] = ["flight_id", "arrival", "departure"];
const ASSIGNMENT_HEADER: [&str; 2] = ["flight_id", "gate"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ScheduleFormat {
    #[default]
    Csv,
}

/// `HH:MM`, or plain (possibly fractional) minutes since midnight.
pub fn parse_time<T: Scalar>(text: &str) -> Option<T> {
    let text = text.trim();
    if let Some((hours, minutes)) = text.split_once(':') {
        let hours: i64 = hours.parse().ok()?;
        let minutes: i64 = minutes.parse().ok()?;
        if !(0..=23).contains(&hours) || !(0..60).contains(&minutes) || text.contains('-') {
            return None;
        }
        return T::from_i64(hours * 60 + minutes);
    }
    if let Ok(whole) = text.parse::<i64>() {
        return T::from_i64(whole);
    }
    let value: f64 = text.parse().ok()?;
    value.is_finite().then(|| T::from_f64(value)).flatten()
}

/// Integer minutes when whole, shortest round-trip decimal otherwise.
pub fn format_minutes<T: Scalar>(value: T) -> String {
    let v = value.to_f64_lossy();
    if v.fract() == 0.0 && v.abs() < 1e15 {
        format!("{}", v as i64)
    } else {
        format!("{v}")
    }
}

fn reader(source: impl Read) -> csv::Reader<impl Read> {
    csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(source)
}

fn check_header<R: Read>(rdr: &mut csv::Reader<R>, expected: &[&str]) -> Result<()> {
    let header = rdr.headers()?;
    if header.iter().ne(expected.iter().copied()) {
        return Err(Error::Parse {
            line: 1,
            message: format!("expected header `{}`", expected.join(",")),
        });
    }
    Ok(())
}

fn line_of(record: &csv::StringRecord) -> u64 {
    record.position().map_or(0, |p| p.line())
}

/// Reads a `flight_id,arrival,departure` table.
pub fn parse_schedule<T: Scalar>(source: impl Read, format: ScheduleFormat) -> Result<Schedule<T>> {
    let ScheduleFormat::Csv = format;
    let mut rdr = reader(source);
    check_header(&mut rdr, &SCHEDULE_HEADER)?;
    let mut flights = Vec::new();
    for record in rdr.records() {
        let record = record?;
        let line = line_of(&record);
        let time = |col: usize, name: &str| {
            parse_time::<T>(&record[col]).ok_or_else(|| Error::Parse {
                line,
                message: format!("bad {name} time `{}`", &record[col]),
            })
        };
        let arrival = time(1, "arrival")?;
        let departure = time(2, "departure")?;
        flights.push(Flight::new(&record[0], arrival, departure)?);
    }
    Schedule::new(flights)
}

/// Inverse of [`parse_schedule`] for minute-valued times.
pub fn write_schedule<T: Scalar>(schedule: &Schedule<T>, sink: impl Write) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(sink);
    wtr.write_record(SCHEDULE_HEADER)?;
    for f in schedule.flights() {
        wtr.write_record([
            f.id(),
            &format_minutes(f.arrival()),
            &format_minutes(f.departure()),
        ])?;
    }
    wtr.flush()?;
    Ok(())
}

/// Reads a `flight_id,gate` table. Without an explicit `gate_count` the
/// highest gate mentioned is used.
pub fn parse_assignment(source: impl Read, gate_count: Option<usize>) -> Result<Assignment> {
    let mut rdr = reader(source);
    check_header(&mut rdr, &ASSIGNMENT_HEADER)?;
    let mut rows = Vec::new();
    let mut seen = HashSet::new();
    for record in rdr.records() {
        let record = record?;
        let line = line_of(&record);
        let gate: usize = record[1].parse().map_err(|_| Error::Parse {
            line,
            message: format!("bad gate `{}`", &record[1]),
        })?;
        if !seen.insert(record[0].to_owned()) {
            return Err(Error::DuplicateId(record[0].to_owned()));
        }
        rows.push((record[0].to_owned(), gate));
    }
    let gate_count = gate_count.unwrap_or_else(|| rows.iter().map(|r| r.1).max().unwrap_or(1));
    let mut assignment = Assignment::new(gate_count)?;
    for (id, gate) in rows {
        assignment.assign(id, gate)?;
    }
    Ok(assignment)
}

/// Writes the assignment in schedule order.
pub fn write_assignment<T: Scalar>(
    schedule: &Schedule<T>,
    assignment: &Assignment,
    sink: impl Write,
) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(sink);
    wtr.write_record(ASSIGNMENT_HEADER)?;
    for f in schedule.flights() {
        let gate = assignment
            .gate_of(f.id())
            .ok_or_else(|| Error::UnassignedFlight(f.id().to_owned()))?;
        wtr.write_record([f.id(), &gate.to_string()])?;
    }
    wtr.flush()?;
    Ok(())
}
