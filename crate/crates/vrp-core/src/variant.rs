//! The 16 problem variants as combinations of four optional constraints.
//!
//! Capacity is always active; open routes, backhauls, a per-route duration
//! limit and time windows can each be toggled independently.

use std::fmt;

/// Which optional constraints are active. Capacity is always implied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct VariantSpec {
    /// Routes do not return to the depot.
    pub open: bool,
    /// Some customers have negative demand (goods collected, not delivered).
    pub backhaul: bool,
    /// Per-route travel distance is capped.
    pub duration_limit: bool,
    /// Customers must be reached inside their time window.
    pub time_window: bool,
}

impl VariantSpec {
    pub const CVRP: VariantSpec = VariantSpec::new(false, false, false, false);
    pub const OVRP: VariantSpec = VariantSpec::new(true, false, false, false);
    pub const VRPB: VariantSpec = VariantSpec::new(false, true, false, false);
    pub const VRPL: VariantSpec = VariantSpec::new(false, false, true, false);
    pub const VRPTW: VariantSpec = VariantSpec::new(false, false, false, true);
    pub const OVRPTW: VariantSpec = VariantSpec::new(true, false, false, true);

    pub const fn new(open: bool, backhaul: bool, duration_limit: bool, time_window: bool) -> Self {
        VariantSpec { open, backhaul, duration_limit, time_window }
    }

    /// Canonical name, e.g. `CVRP`, `OVRP`, `VRPBLTW`.
    ///
    /// `O` prefixes, `B`/`L`/`TW` suffix in that order; the plain capacitated
    /// problem is spelled `CVRP`.
    pub fn name(&self) -> String {
        let mut s = String::new();
        if self.open {
            s.push_str("OVRP");
        } else if !self.backhaul && !self.duration_limit && !self.time_window {
            return "CVRP".to_string();
        } else {
            s.push_str("VRP");
        }
        if self.backhaul {
            s.push('B');
        }
        if self.duration_limit {
            s.push('L');
        }
        if self.time_window {
            s.push_str("TW");
        }
        s
    }

    /// Parse a canonical name produced by [`VariantSpec::name`].
    pub fn parse(name: &str) -> Option<VariantSpec> {
        Self::all().into_iter().find(|v| v.name() == name)
    }

    /// All 16 variants in a fixed enumeration order.
    pub fn all() -> Vec<VariantSpec> {
        let mut out = Vec::with_capacity(16);
        for bits in 0u8..16 {
            out.push(VariantSpec::new(
                bits & 1 != 0,
                bits & 2 != 0,
                bits & 4 != 0,
                bits & 8 != 0,
            ));
        }
        out
    }

    /// Compact 4-bit encoding used by the on-disk formats.
    pub fn to_bits(&self) -> u8 {
        (self.open as u8)
            | (self.backhaul as u8) << 1
            | (self.duration_limit as u8) << 2
            | (self.time_window as u8) << 3
    }

    pub fn from_bits(bits: u8) -> Option<VariantSpec> {
        if bits < 16 {
            Some(VariantSpec::new(bits & 1 != 0, bits & 2 != 0, bits & 4 != 0, bits & 8 != 0))
        } else {
            None
        }
    }
}

impl fmt::Display for VariantSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn sixteen_distinct_names() {
        let names: HashSet<String> = VariantSpec::all().iter().map(|v| v.name()).collect();
        assert_eq!(names.len(), 16);
        for expected in [
            "CVRP", "OVRP", "VRPB", "VRPL", "VRPTW", "OVRPTW", "OVRPB", "OVRPL", "VRPBL",
            "VRPBTW", "VRPLTW", "OVRPBL", "OVRPBTW", "OVRPLTW", "VRPBLTW", "OVRPBLTW",
        ] {
            assert!(names.contains(expected), "missing {expected}");
        }
    }

    #[test]
    fn name_roundtrip() {
        for v in VariantSpec::all() {
            assert_eq!(VariantSpec::parse(&v.name()), Some(v));
            assert_eq!(VariantSpec::from_bits(v.to_bits()), Some(v));
        }
        assert_eq!(VariantSpec::parse("VRPX"), None);
        assert_eq!(VariantSpec::from_bits(16), None);
    }
}
