//! Reader for Solomon VRPTW benchmark files.

use vrp_core::{Instance, VariantSpec};

use crate::{DataError, ParsedBenchmark};

/// Parse a Solomon instance.
///
/// Coordinates and all time quantities share one unit (speed 1), so a single
/// scale factor — the larger coordinate span — maps both into the unit
/// model. Per-node service times come from the file as written.
pub fn parse_solomon(text: &str) -> Result<ParsedBenchmark, DataError> {
    let mut lines = text.lines();
    let name = lines
        .find(|l| !l.trim().is_empty())
        .map(|l| l.trim().to_string())
        .ok_or(DataError::Parse("empty file".into()))?;

    let mut capacity: Option<f64> = None;
    let mut rows: Vec<[f64; 7]> = Vec::new();
    let mut in_vehicle = false;
    let mut in_customers = false;

    for raw in lines {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if line.starts_with("VEHICLE") {
            in_vehicle = true;
            in_customers = false;
            continue;
        }
        if line.starts_with("CUSTOMER") {
            in_customers = true;
            in_vehicle = false;
            continue;
        }
        if line.starts_with("NUMBER") || line.starts_with("CUST") {
            continue;
        }
        if in_vehicle {
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() == 2 {
                capacity = Some(
                    fields[1]
                        .parse()
                        .map_err(|_| DataError::Parse("bad vehicle capacity".into()))?,
                );
            }
            continue;
        }
        if in_customers {
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 7 {
                return Err(DataError::Parse(format!(
                    "customer row has {} columns, expected 7: {line:?}",
                    fields.len()
                )));
            }
            let mut row = [0.0f64; 7];
            for (i, f) in fields.iter().enumerate() {
                row[i] = f
                    .parse()
                    .map_err(|_| DataError::Parse(format!("bad number {f:?}")))?;
            }
            rows.push(row);
        }
    }

    let capacity = capacity.ok_or(DataError::MissingSection("VEHICLE"))?;
    if rows.is_empty() {
        return Err(DataError::MissingSection("CUSTOMER"));
    }
    rows.sort_by(|a, b| a[0].total_cmp(&b[0]));
    if rows[0][0] != 0.0 {
        return Err(DataError::Parse("customer 0 (depot) missing".into()));
    }

    let min_x = rows.iter().map(|r| r[1]).fold(f64::INFINITY, f64::min);
    let min_y = rows.iter().map(|r| r[2]).fold(f64::INFINITY, f64::min);
    let max_x = rows.iter().map(|r| r[1]).fold(f64::NEG_INFINITY, f64::max);
    let max_y = rows.iter().map(|r| r[2]).fold(f64::NEG_INFINITY, f64::max);
    let scale = (max_x - min_x).max(max_y - min_y).max(1.0);

    let instance = Instance {
        coords: rows
            .iter()
            .map(|r| ((r[1] - min_x) / scale, (r[2] - min_y) / scale))
            .collect(),
        demand: rows.iter().map(|r| r[3] as i32).collect(),
        service_time: rows.iter().map(|r| r[6] / scale).collect(),
        tw: rows.iter().map(|r| (r[4] / scale, r[5] / scale)).collect(),
        capacity,
        duration_limit: f64::INFINITY,
        speed: 1.0,
        variant: VariantSpec::VRPTW,
    };

    Ok(ParsedBenchmark { name, instance, scale })
}
