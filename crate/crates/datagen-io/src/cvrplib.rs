//! Reader for TSPLIB-style CVRP files (NAME/DIMENSION/CAPACITY keys with
//! NODE_COORD_SECTION, DEMAND_SECTION and DEPOT_SECTION).

use std::collections::HashMap;

use vrp_core::{Instance, VariantSpec};

use crate::{DataError, ParsedBenchmark};

/// Parse a CVRPLIB instance.
///
/// Coordinates are shifted to the origin and divided by the larger span so
/// geometry fits the unit square; the divisor is returned as `scale` so
/// objectives can be reported in native units (`native = unit * scale`).
pub fn parse_cvrplib(text: &str) -> Result<ParsedBenchmark, DataError> {
    let mut keys: HashMap<String, String> = HashMap::new();
    let mut coords: Vec<(usize, f64, f64)> = Vec::new();
    let mut demands: HashMap<usize, i64> = HashMap::new();
    let mut depots: Vec<usize> = Vec::new();

    #[derive(PartialEq)]
    enum Section {
        Keys,
        Coords,
        Demands,
        Depot,
    }
    let mut section = Section::Keys;

    for raw in text.lines() {
        let line = raw.trim();
        if line.is_empty() || line == "EOF" {
            continue;
        }
        match line {
            "NODE_COORD_SECTION" => {
                section = Section::Coords;
                continue;
            }
            "DEMAND_SECTION" => {
                section = Section::Demands;
                continue;
            }
            "DEPOT_SECTION" => {
                section = Section::Depot;
                continue;
            }
            _ => {}
        }
        match section {
            Section::Keys => {
                if let Some((k, v)) = line.split_once(':') {
                    keys.insert(k.trim().to_string(), v.trim().to_string());
                }
            }
            Section::Coords => {
                let mut it = line.split_whitespace();
                let id = parse_field::<usize>(it.next(), "coord id")?;
                let x = parse_field::<f64>(it.next(), "x coordinate")?;
                let y = parse_field::<f64>(it.next(), "y coordinate")?;
                coords.push((id, x, y));
            }
            Section::Demands => {
                let mut it = line.split_whitespace();
                let id = parse_field::<usize>(it.next(), "demand id")?;
                let d = it
                    .next()
                    .ok_or(DataError::Parse("missing demand value".into()))?;
                let d: i64 = d
                    .parse()
                    .map_err(|_| DataError::Parse(format!("non-integer demand {d:?}")))?;
                demands.insert(id, d);
            }
            Section::Depot => {
                let id = parse_field::<i64>(Some(line), "depot id")?;
                if id > 0 {
                    depots.push(id as usize);
                }
            }
        }
    }

    let name = keys.get("NAME").cloned().unwrap_or_default();
    let dimension: usize = keys
        .get("DIMENSION")
        .ok_or(DataError::MissingSection("DIMENSION"))?
        .parse()
        .map_err(|_| DataError::Parse("bad DIMENSION".into()))?;
    let capacity: f64 = keys
        .get("CAPACITY")
        .ok_or(DataError::MissingSection("CAPACITY"))?
        .parse()
        .map_err(|_| DataError::Parse("bad CAPACITY".into()))?;
    if coords.is_empty() {
        return Err(DataError::MissingSection("NODE_COORD_SECTION"));
    }
    if demands.is_empty() {
        return Err(DataError::MissingSection("DEMAND_SECTION"));
    }
    if coords.len() != dimension {
        return Err(DataError::Parse(format!(
            "DIMENSION {dimension} but {} coordinates",
            coords.len()
        )));
    }
    let depot_id = *depots.first().ok_or(DataError::MissingSection("DEPOT_SECTION"))?;

    // Reorder so the depot is node 0, customers follow in file order.
    coords.sort_by_key(|&(id, _, _)| id);
    let mut ordered: Vec<(usize, f64, f64)> = Vec::with_capacity(dimension);
    ordered.extend(coords.iter().copied().filter(|&(id, _, _)| id == depot_id));
    ordered.extend(coords.iter().copied().filter(|&(id, _, _)| id != depot_id));

    let depot_demand = *demands
        .get(&depot_id)
        .ok_or(DataError::Parse("depot demand missing".into()))?;
    if depot_demand != 0 {
        return Err(DataError::Parse(format!("depot demand must be 0, got {depot_demand}")));
    }

    let min_x = ordered.iter().map(|c| c.1).fold(f64::INFINITY, f64::min);
    let min_y = ordered.iter().map(|c| c.2).fold(f64::INFINITY, f64::min);
    let max_x = ordered.iter().map(|c| c.1).fold(f64::NEG_INFINITY, f64::max);
    let max_y = ordered.iter().map(|c| c.2).fold(f64::NEG_INFINITY, f64::max);
    let scale = (max_x - min_x).max(max_y - min_y).max(1.0);

    let n = dimension - 1;
    let mut inst = Instance {
        coords: ordered
            .iter()
            .map(|&(_, x, y)| ((x - min_x) / scale, (y - min_y) / scale))
            .collect(),
        demand: Vec::with_capacity(dimension),
        service_time: vec![0.0; dimension],
        tw: vec![(0.0, f64::INFINITY); dimension],
        capacity,
        duration_limit: f64::INFINITY,
        speed: 1.0,
        variant: VariantSpec::CVRP,
    };
    for &(id, _, _) in &ordered {
        let d = *demands
            .get(&id)
            .ok_or_else(|| DataError::Parse(format!("demand missing for node {id}")))?;
        inst.demand.push(d as i32);
    }
    let _ = n;

    Ok(ParsedBenchmark { name, instance: inst, scale })
}

fn parse_field<T: std::str::FromStr>(tok: Option<&str>, what: &str) -> Result<T, DataError> {
    tok.ok_or_else(|| DataError::Parse(format!("missing {what}")))?
        .parse::<T>()
        .map_err(|_| DataError::Parse(format!("bad {what}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "NAME : toy-n4-k2\n\
COMMENT : handmade\n\
TYPE : CVRP\n\
DIMENSION : 4\n\
EDGE_WEIGHT_TYPE : EUC_2D\n\
CAPACITY : 206\n\
NODE_COORD_SECTION\n\
1 100 100\n\
2 140 130\n\
3 180 100\n\
4 100 180\n\
DEMAND_SECTION\n\
1 0\n\
2 50\n\
3 60\n\
4 70\n\
DEPOT_SECTION\n\
1\n\
-1\n\
EOF\n";

    #[test]
    fn reads_header_fields() {
        let parsed = parse_cvrplib(SAMPLE).unwrap();
        assert_eq!(parsed.name, "toy-n4-k2");
        assert_eq!(parsed.instance.capacity, 206.0);
        assert_eq!(parsed.instance.num_customers(), 3);
        assert_eq!(parsed.instance.demand, vec![0, 50, 60, 70]);
    }

    #[test]
    fn rescaling_preserves_native_distances() {
        let parsed = parse_cvrplib(SAMPLE).unwrap();
        // Native depot->node2 distance is 50 (3-4-5 triangle).
        let unit = parsed.instance.distance(0, 1);
        assert!((unit * parsed.scale - 50.0).abs() < 1e-9);
        for &(x, y) in &parsed.instance.coords {
            assert!((0.0..=1.0).contains(&x) && (0.0..=1.0).contains(&y));
        }
    }

    #[test]
    fn depot_demand_must_be_zero() {
        let bad = SAMPLE.replace("1 0\n", "1 3\n");
        assert!(parse_cvrplib(&bad).is_err());
    }

    #[test]
    fn missing_sections_are_reported() {
        let no_cap = SAMPLE.replace("CAPACITY : 206\n", "");
        assert!(matches!(
            parse_cvrplib(&no_cap),
            Err(DataError::MissingSection("CAPACITY"))
        ));
        let no_demand = SAMPLE
            .replace("DEMAND_SECTION\n", "")
            .replace("1 0\n", "")
            .replace("2 50\n", "")
            .replace("3 60\n", "")
            .replace("4 70\n", "");
        assert!(parse_cvrplib(&no_demand).is_err());
    }

    #[test]
    fn non_integer_demand_is_rejected() {
        let bad = SAMPLE.replace("2 50\n", "2 5.5\n");
        assert!(parse_cvrplib(&bad).is_err());
    }
}
