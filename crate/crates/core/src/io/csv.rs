//! Comma-separated tables with one header line and numeric cells.

use std::io::Write;

use super::{format_number, IoError};
use crate::field::{GridSample, Streamline};
use crate::trajectory::TrajectorySample;

pub const TRAJECTORY_HEADER: [&str; 8] = ["t_s", "r_m", "theta_rad", "phi_rad", "x_m", "y_m", "z_m", "speed_mps"];
pub const GRID_HEADER: [&str; 4] = ["x", "y", "vx", "vy"];
pub const STREAMLINE_HEADER: [&str; 4] = ["streamline_id", "step", "x", "y"];
pub const DENSITY_HEADER: [&str; 3] = ["r_m", "log_density", "density_normalized"];

/// A parsed table.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Self {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn has_header(&self, header: &[&str]) -> bool {
        self.header.iter().map(String::as_str).eq(header.iter().copied())
    }

    pub fn column(&self, name: &str) -> Result<Vec<f64>, IoError> {
        let idx = self
            .header
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| IoError::Invalid(format!("no column `{name}`")))?;
        Ok(self.rows.iter().map(|r| r[idx]).collect())
    }

    pub fn write_to<W: Write>(&self, w: &mut W) -> Result<(), IoError> {
        writeln!(w, "{}", self.header.join(","))?;
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|&v| format_number(v)).collect();
            writeln!(w, "{}", cells.join(","))?;
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut buf = Vec::new();
        self.write_to(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("ascii output")
    }

    pub fn parse(text: &str, origin: &str) -> Result<Self, IoError> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, head) = lines.next().ok_or_else(|| IoError::Parse {
            origin: origin.into(),
            line: 1,
            msg: "empty file".into(),
        })?;
        let header: Vec<String> = head.split(',').map(|s| s.trim().to_string()).collect();
        let mut rows = Vec::new();
        for (idx, line) in lines {
            let row = line
                .split(',')
                .map(|cell| cell.trim().parse::<f64>())
                .collect::<Result<Vec<f64>, _>>()
                .map_err(|e| IoError::Parse {
                    origin: origin.into(),
                    line: idx + 1,
                    msg: e.to_string(),
                })?;
            if row.len() != header.len() {
                return Err(IoError::Parse {
                    origin: origin.into(),
                    line: idx + 1,
                    msg: format!("expected {} cells, found {}", header.len(), row.len()),
                });
            }
            rows.push(row);
        }
        Ok(Self { header, rows })
    }
}

pub fn trajectory_table(samples: &[TrajectorySample]) -> Table {
    let mut t = Table::new(&TRAJECTORY_HEADER);
    t.rows = samples
        .iter()
        .map(|s| vec![s.t, s.r, s.theta, s.phi, s.x, s.y, s.z, s.speed])
        .collect();
    t
}

pub fn grid_table(samples: &[GridSample]) -> Table {
    let mut t = Table::new(&GRID_HEADER);
    t.rows = samples.iter().map(|s| vec![s.x, s.y, s.vx, s.vy]).collect();
    t
}

pub fn streamline_table(lines: &[Streamline]) -> Table {
    let mut t = Table::new(&STREAMLINE_HEADER);
    for (id, line) in lines.iter().enumerate() {
        for (step, &(x, y)) in line.points.iter().enumerate() {
            t.rows.push(vec![id as f64, step as f64, x, y]);
        }
    }
    t
}

/// Rows of `(r, ln density, density)`.
pub fn density_table(rows: &[(f64, f64, f64)]) -> Table {
    let mut t = Table::new(&DENSITY_HEADER);
    t.rows = rows.iter().map(|&(r, l, d)| vec![r, l, d]).collect();
    t
}
