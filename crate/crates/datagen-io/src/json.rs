//! Debug-oriented JSON export of instances.

use serde_json::json;
use vrp_core::Instance;

/// Render an instance as pretty JSON. Infinite time-window bounds (inactive
/// constraints) are written as nulls.
pub fn instance_to_json(instance: &Instance) -> String {
    let bound = |v: f64| if v.is_finite() { json!(v) } else { json!(null) };
    let value = json!({
        "variant": instance.variant.name(),
        "capacity": instance.capacity,
        "duration_limit": bound(instance.duration_limit),
        "speed": instance.speed,
        "nodes": instance
            .coords
            .iter()
            .enumerate()
            .map(|(i, &(x, y))| json!({
                "id": i,
                "x": x,
                "y": y,
                "demand": instance.demand[i],
                "service_time": instance.service_time[i],
                "tw": [bound(instance.tw[i].0), bound(instance.tw[i].1)],
            }))
            .collect::<Vec<_>>(),
    });
    serde_json::to_string_pretty(&value).expect("json encoding cannot fail")
}

#[cfg(test)]
mod tests {
    use super::*;
    use vrp_core::VariantSpec;

    #[test]
    fn export_contains_fields() {
        let inst = crate::gen::generate_instance(VariantSpec::VRPTW, 3, 1).unwrap();
        let text = instance_to_json(&inst);
        let parsed: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed["variant"], "VRPTW");
        assert_eq!(parsed["nodes"].as_array().unwrap().len(), 4);
        assert_eq!(parsed["nodes"][0]["demand"], 0);
    }
}
