//! Schedule/assignment CSV, synthetic instances and SVG output.

mod csv_io;
mod generator;
mod svg;

pub use csv_io::{
    format_minutes, parse_assignment, parse_schedule, parse_time, write_assignment, write_schedule,
    ScheduleFormat,
};
pub use generator::{generate_instance, GeneratorSpec};
pub use svg::{emit_gantt, emit_scatter_plot};
