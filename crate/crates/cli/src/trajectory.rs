//! Trajectory CSV input.
//!
//! One header row, then rows `t, q₁…qₙ, q̇₁…q̇ₙ, q̈₁…q̈ₙ` with strictly
//! increasing `t`. Blank lines are ignored.

use std::io::Read;

use csv::{ReaderBuilder, StringRecord, Trim};

use crate::CliError;

#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryRow {
    pub t: f64,
    pub q: Vec<f64>,
    pub qdot: Vec<f64>,
    pub qddot: Vec<f64>,
    /// 1-based line in the source file.
    pub line: u64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Trajectory {
    pub rows: Vec<TrajectoryRow>,
}

fn at(line: u64, msg: impl std::fmt::Display) -> CliError {
    CliError::Input(format!("line {line}: {msg}"))
}

fn line_of(record: &StringRecord) -> u64 {
    record.position().map_or(0, |p| p.line())
}

impl Trajectory {
    /// Parses a trajectory for an `n`-joint chain.
    pub fn parse<R: Read>(source: R, n: usize) -> Result<Self, CliError> {
        let width = 1 + 3 * n;
        let mut reader = ReaderBuilder::new()
            .has_headers(false)
            .flexible(true)
            .trim(Trim::All)
            .from_reader(source);
        let mut records = reader.records();
        let header = match records.next() {
            None => return Ok(Self::default()),
            Some(r) => r.map_err(|e| CliError::Input(format!("trajectory: {e}")))?,
        };
        if header.len() != width {
            return Err(at(
                line_of(&header),
                format!(
                    "header has {} columns, expected {width} (t plus 3 x {n})",
                    header.len()
                ),
            ));
        }
        let mut rows: Vec<TrajectoryRow> = Vec::new();
        for record in records {
            let record = record.map_err(|e| CliError::Input(format!("trajectory: {e}")))?;
            let line = line_of(&record);
            if record.len() != width {
                return Err(at(line, format!("{} columns, expected {width}", record.len())));
            }
            let values = record
                .iter()
                .enumerate()
                .map(|(col, field)| match field.parse::<f64>() {
                    Ok(v) if v.is_finite() => Ok(v),
                    _ => Err(at(
                        line,
                        format!("column {}: {field:?} is not a finite number", col + 1),
                    )),
                })
                .collect::<Result<Vec<f64>, _>>()?;
            let t = values[0];
            if let Some(prev) = rows.last() {
                if t <= prev.t {
                    return Err(at(
                        line,
                        format!("time {t} does not increase (previous {})", prev.t),
                    ));
                }
            }
            rows.push(TrajectoryRow {
                t,
                q: values[1..1 + n].to_vec(),
                qdot: values[1 + n..1 + 2 * n].to_vec(),
                qddot: values[1 + 2 * n..].to_vec(),
                line,
            });
        }
        Ok(Self { rows })
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const HEADER: &str = "t,q1,q2,qd1,qd2,qdd1,qdd2\n";

    #[test]
    fn splits_columns() {
        let text = format!("{HEADER}0.0, 1,2, 3,4, 5,6\n0.5,0,0,0,0,0,0\n");
        let t = Trajectory::parse(text.as_bytes(), 2).unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t.rows[0].q, vec![1.0, 2.0]);
        assert_eq!(t.rows[0].qdot, vec![3.0, 4.0]);
        assert_eq!(t.rows[0].qddot, vec![5.0, 6.0]);
        assert_eq!(t.rows[1].line, 3);
    }

    #[test]
    fn empty_input_is_an_empty_trajectory() {
        assert!(Trajectory::parse(&b""[..], 2).unwrap().is_empty());
        assert!(Trajectory::parse(HEADER.as_bytes(), 2).unwrap().is_empty());
    }

    #[test]
    fn reports_line_numbers() {
        let text = format!("{HEADER}0,0,0,0,0,0,0\n1,0,0,0,0,0\n");
        let msg = Trajectory::parse(text.as_bytes(), 2).unwrap_err().to_string();
        assert!(msg.contains("line 3") && msg.contains("6 columns"), "{msg}");

        let text = format!("{HEADER}0,0,0,0,0,0,0\n1,0,0,x,0,0,0\n");
        let msg = Trajectory::parse(text.as_bytes(), 2).unwrap_err().to_string();
        assert!(msg.contains("line 3") && msg.contains("column 4"), "{msg}");

        let text = format!("{HEADER}1,0,0,0,0,0,0\n1,0,0,0,0,0,0\n");
        let msg = Trajectory::parse(text.as_bytes(), 2).unwrap_err().to_string();
        assert!(
            msg.contains("line 3") && msg.contains("does not increase"),
            "{msg}"
        );

        let msg = Trajectory::parse("t,q1\n".as_bytes(), 2).unwrap_err().to_string();
        assert!(msg.contains("line 1"), "{msg}");
    }

    #[test]
    fn rejects_non_finite_values() {
        let text = format!("{HEADER}0,0,0,0,0,0,inf\n");
        assert!(Trajectory::parse(text.as_bytes(), 2).is_err());
    }
}
